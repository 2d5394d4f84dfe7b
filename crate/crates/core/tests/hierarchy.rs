//! Public-API properties of the shape-invariance hierarchy at random parameters.

use proptest::prelude::*;
use susy_pt::ladder::{build_from_ground, raising_chain, LadderContext};
use susy_pt::model::delta_eigenvalue;
use susy_pt::verify::{self, Status, Suite, VerifyConfig};
use susy_pt::wavefun::{build_eigenfunction, inner_product};
use susy_pt::{ModelParams, Probe};

fn params() -> impl Strategy<Value = ModelParams> {
    (0.3f64..3.0, 0.3f64..3.0, 1.3f64..12.0).prop_map(|(w, e, k)| ModelParams::new(w, e, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lowering_then_raising_multiplies_by_the_eigenvalue(p in params(), n in 0usize..12) {
        let probe = Probe::interior(&p, 400);
        let ctx = LadderContext::new(p);
        let u = build_eigenfunction(&p, n).unwrap();
        let back = ctx.raise(&ctx.lower(&u).unwrap()).unwrap();
        let lam = delta_eigenvalue(p.k(), n);
        prop_assert!(probe.sup_distance(&back, &u.scaled(lam)).unwrap() <= 1e-8 * (1.0 + lam));
    }

    #[test]
    fn lowered_state_is_the_normalized_partner(p in params(), n in 1usize..12) {
        let u = build_eigenfunction(&p, n).unwrap();
        let lowered = LadderContext::new(p).lower(&u).unwrap();
        let partner = build_eigenfunction(&p.with_k(p.k() + 1.0).unwrap(), n - 1).unwrap();
        let lam = delta_eigenvalue(p.k(), n);
        let overlap = inner_product(&lowered, &partner).unwrap();
        prop_assert!((overlap - lam.sqrt()).abs() <= 1e-9 * lam.sqrt());
    }

    #[test]
    fn chain_factors_invert_the_build_up_prefactor(k in 1.1f64..50.0, n in 0usize..20) {
        let product: f64 = raising_chain(k, n).iter().map(|s| s.factor).product();
        let prefactor = susy_pt::ladder::build_up_prefactor(k, n).unwrap();
        prop_assert!((product * prefactor - 1.0).abs() <= 1e-11);
    }

    #[test]
    fn built_up_states_are_normalized(p in params(), n in 0usize..10) {
        prop_assert!((build_from_ground(&p, n).unwrap().norm() - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn corrupted_k_is_caught_by_the_report() {
    let config = VerifyConfig {
        params_set: vec![ModelParams::new(1.0, 1.0, 2.0).unwrap()],
        k_offset: 1e-3,
        ..VerifyConfig::default()
    };
    let report = verify::run(&config, &[Suite::Ladder, Suite::ShapeInvariance]);
    assert_eq!(report.suite(Suite::Ladder).unwrap().status, Status::Fail);
    assert_eq!(report.suite(Suite::ShapeInvariance).unwrap().status, Status::Pass);
    assert!(!report.all_passed());
    assert!(report.to_string().contains("overall: fail (1/2 suites)"));
}

#[test]
fn equidistance_reports_zero_gap_error_at_unit_epsilon() {
    let config = VerifyConfig {
        params_set: vec![ModelParams::new(1.0, 1.0, 2.0).unwrap()],
        ..VerifyConfig::default()
    };
    let suite = verify::run_suite(Suite::Equidistance, &config);
    let gap = suite.checks.iter().find(|c| c.label.ends_with("equidistance")).unwrap();
    assert_eq!(gap.residual, 0.0);
}

#[test]
fn single_precision_ladder() {
    let p = susy_pt::model::ModelParams::<f32>::new(1.0, 1.0, 2.5).unwrap();
    let ctx = LadderContext::new(p);
    let u = build_eigenfunction(&p, 3).unwrap();
    let v = build_eigenfunction(&p.with_k(3.5).unwrap(), 2).unwrap();
    let coeff = delta_eigenvalue(2.5f32, 3).sqrt();
    let xs: Vec<f32> = (1..100).map(|i| -1.5 + 0.03 * i as f32).collect();
    let d = ctx.lower(&u).unwrap().sup_distance(&v.scaled(coeff), &xs).unwrap();
    assert!(d < 1e-4, "{d}");
}
