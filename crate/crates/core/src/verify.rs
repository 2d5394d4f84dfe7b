//! Property suites that check every analytic relation of the model against
//! the independent quadrature and finite-difference oracles, and the
//! machine-readable report they produce.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::ladder::{
    build_from_ground, commutator_residual, delta_image, factorization_residual, LadderContext,
};
use crate::model::{delta_eigenvalue, ModelParams, Potential};
use crate::numeric::{discretize_delta, richardson};
use crate::wavefun::{build_eigenfunction, inner_product, Probe, Wavefunction};

pub const DEFAULT_N_MAX: usize = 16;
pub const DEFAULT_GRID_N: usize = 4096;
pub const DEFAULT_SAMPLE_POINTS: usize = 10_000;
pub const DEFAULT_RANDOM_TESTS: usize = 20;
pub const DEFAULT_RANDOM_DEGREE: usize = 8;
pub const DEFAULT_SEED: u64 = 0x5eed_0001;
pub const DEFAULT_NONREL_K: [f64; 4] = [1e2, 1e3, 1e4, 1e6];

const GRAM_SIZE: usize = 8;
const SPECTRUM_LEVELS: usize = 5;
const PARTNER_LEVELS: usize = 4;

pub const TOL_GRAM: f64 = 1e-8;
pub const TOL_EIGEN: f64 = 1e-8;
pub const TOL_LADDER: f64 = 1e-8;
pub const TOL_SHAPE: f64 = 1e-10;
pub const TOL_FACTORIZATION: f64 = 1e-8;
pub const TOL_COMMUTATOR: f64 = 1e-8;
pub const TOL_BUILD_UP: f64 = 1e-8;
pub const TOL_SPECTRUM: f64 = 1e-3;
pub const TOL_SPECTRUM_RICHARDSON: f64 = 1e-6;
pub const TOL_EQUIDISTANCE: f64 = 1e-12;
pub const TOL_NONREL: f64 = 1e-5;
pub const FD_ORDER_RANGE: (f64, f64) = (3.6, 4.4);

/// The property suites, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Orthonormality,
    EigenResidual,
    PartnerResidual,
    Ladder,
    ShapeInvariance,
    Factorization,
    Commutator,
    BuildUp,
    Numeric,
    Equidistance,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Orthonormality,
        Suite::EigenResidual,
        Suite::PartnerResidual,
        Suite::Ladder,
        Suite::ShapeInvariance,
        Suite::Factorization,
        Suite::Commutator,
        Suite::BuildUp,
        Suite::Numeric,
        Suite::Equidistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthonormality => "orthonormality",
            Suite::EigenResidual => "eigen-residual",
            Suite::PartnerResidual => "partner-residual",
            Suite::Ladder => "ladder",
            Suite::ShapeInvariance => "shape-invariance",
            Suite::Factorization => "factorization",
            Suite::Commutator => "commutator",
            Suite::BuildUp => "build-up",
            Suite::Numeric => "numeric",
            Suite::Equidistance => "equidistance",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite '{s}' (expected one of: {})", names.join(", "))
            })
    }
}

/// Inputs of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub params_set: Vec<ModelParams<f64>>,
    pub n_max: usize,
    /// Interior points of the finite-difference oracle (the Richardson partner
    /// uses twice as many).
    pub grid_n: usize,
    /// Points used for pointwise sup-norm residuals.
    pub sample_points: usize,
    pub random_tests: usize,
    pub random_degree: usize,
    pub seed: u64,
    pub nonrel_k: Vec<f64>,
    /// Added to `k` in the analytic eigenvalue and ladder-coefficient formulas.
    /// Zero in normal runs; a nonzero value must make the suites fail.
    pub k_offset: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            params_set: default_battery(),
            n_max: DEFAULT_N_MAX,
            grid_n: DEFAULT_GRID_N,
            sample_points: DEFAULT_SAMPLE_POINTS,
            random_tests: DEFAULT_RANDOM_TESTS,
            random_degree: DEFAULT_RANDOM_DEGREE,
            seed: DEFAULT_SEED,
            nonrel_k: DEFAULT_NONREL_K.to_vec(),
            k_offset: 0.0,
        }
    }
}

/// `ω = 1`, `ε ∈ {0.5, 1, 2}`, `k ∈ {1.5, 2, 3.7, 10}`.
pub fn default_battery() -> Vec<ModelParams<f64>> {
    let mut out = Vec::new();
    for epsilon in [0.5, 1.0, 2.0] {
        for k in [1.5, 2.0, 3.7, 10.0] {
            out.push(ModelParams::new(1.0, epsilon, k).expect("fixture parameters are valid"));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamsRecord {
    pub omega: f64,
    pub epsilon: f64,
    pub k: f64,
}

impl From<&ModelParams<f64>> for ParamsRecord {
    fn from(p: &ModelParams<f64>) -> Self {
        Self {
            omega: p.omega(),
            epsilon: p.epsilon(),
            k: p.k(),
        }
    }
}

/// One quantified comparison inside a suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(label: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }

    fn failed(label: impl Into<String>, err: crate::Error) -> Self {
        Self {
            label: format!("{}: {err}", label.into()),
            residual: f64::NAN,
            tolerance: 0.0,
            passed: false,
        }
    }

    /// How far the residual sits into its tolerance; above 1 means failure.
    fn severity(&self) -> f64 {
        if !self.passed {
            if self.residual.is_nan() || self.tolerance <= 0.0 {
                return f64::INFINITY;
            }
            return (self.residual / self.tolerance).max(1.0 + f64::EPSILON);
        }
        if self.tolerance > 0.0 {
            self.residual / self.tolerance
        } else {
            0.0
        }
    }
}

/// Outcome of one suite. `worst_residual` and `tolerance` are those of the
/// check closest to (or furthest beyond) its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub params: Vec<ParamsRecord>,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    fn from_checks(suite: Suite, params: &[ModelParams<f64>], checks: Vec<Check>) -> Self {
        let worst = checks
            .iter()
            .max_by(|a, b| a.severity().total_cmp(&b.severity()));
        let (worst_residual, tolerance) = worst.map_or((0.0, 0.0), |c| (c.residual, c.tolerance));
        let status = if checks.iter().all(|c| c.passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: suite.name().to_string(),
            status,
            worst_residual,
            tolerance,
            params: params.iter().map(ParamsRecord::from).collect(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMeta {
    pub params: Vec<ParamsRecord>,
    pub n_max: usize,
    pub grid_n: usize,
    pub sample_points: usize,
    pub random_tests: usize,
    pub seed: u64,
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suites: Vec<SuiteResult>,
    pub meta: ReportMeta,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == suite.name())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<18} {:<6} {:>14} {:>10}", "suite", "status", "worst", "tolerance")?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<18} {:<6} {:>14.3e} {:>10.1e}",
                s.name, s.status, s.worst_residual, s.tolerance
            )?;
        }
        let passed = self.suites.iter().filter(|s| s.passed()).count();
        let overall = if self.all_passed() { "pass" } else { "fail" };
        write!(f, "overall: {overall} ({passed}/{} suites)", self.suites.len())
    }
}

/// All suites on `params_set` with default sampling.
pub fn run_all(params_set: &[ModelParams<f64>], n_max: usize, grid_n: usize) -> VerificationReport {
    let config = VerifyConfig {
        params_set: params_set.to_vec(),
        n_max,
        grid_n,
        ..VerifyConfig::default()
    };
    run(&config, &Suite::ALL)
}

/// The requested suites (each at most once, in canonical order).
pub fn run(config: &VerifyConfig, suites: &[Suite]) -> VerificationReport {
    let selected: BTreeSet<Suite> = suites.iter().copied().collect();
    let selected: Vec<Suite> = selected.into_iter().collect();
    let results = selected.par_iter().map(|&s| run_suite(s, config)).collect();
    VerificationReport {
        suites: results,
        meta: ReportMeta {
            params: config.params_set.iter().map(ParamsRecord::from).collect(),
            n_max: config.n_max,
            grid_n: config.grid_n,
            sample_points: config.sample_points,
            random_tests: config.random_tests,
            seed: config.seed,
            timestamp: None,
        },
    }
}

fn label(p: &ModelParams<f64>) -> String {
    format!("omega={} epsilon={} k={}", p.omega(), p.epsilon(), p.k())
}

fn per_params<F>(config: &VerifyConfig, f: F) -> Vec<Check>
where
    F: Fn(usize, &ModelParams<f64>) -> Result<Vec<Check>> + Sync,
{
    config
        .params_set
        .par_iter()
        .enumerate()
        .map(|(i, p)| f(i, p).unwrap_or_else(|e| vec![Check::failed(label(p), e)]))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteResult {
    let checks = match suite {
        Suite::Orthonormality => per_params(config, |_, p| orthonormality(p)),
        Suite::EigenResidual => per_params(config, |_, p| eigen_residual(config, p)),
        Suite::PartnerResidual => per_params(config, |_, p| partner_residual(config, p)),
        Suite::Ladder => per_params(config, |_, p| ladder(config, p)),
        Suite::ShapeInvariance => per_params(config, |_, p| shape_invariance(config, p)),
        Suite::Factorization => per_params(config, |i, p| factorization(config, i, p)),
        Suite::Commutator => per_params(config, |i, p| commutator(config, i, p)),
        Suite::BuildUp => per_params(config, |_, p| build_up(config, p)),
        Suite::Numeric => per_params(config, |_, p| numeric(config, p)),
        Suite::Equidistance => equidistance_and_limit(config),
    };
    SuiteResult::from_checks(suite, &config.params_set, checks)
}

fn orthonormality(p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let basis = (0..GRAM_SIZE)
        .map(|n| build_eigenfunction(p, n))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for i in 0..GRAM_SIZE {
        for j in i..GRAM_SIZE {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner_product(&basis[i], &basis[j])? - want).abs());
        }
    }
    Ok(vec![Check::new(format!("{} gram {GRAM_SIZE}x{GRAM_SIZE}", label(p)), worst, TOL_GRAM)])
}

fn formula_k(config: &VerifyConfig, p: &ModelParams<f64>) -> f64 {
    p.k() + config.k_offset
}

fn eigen_residual(config: &VerifyConfig, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let probe = Probe::interior(p, config.sample_points);
    let k = p.k();
    let mut worst = 0.0f64;
    for n in 0..=config.n_max {
        let u = build_eigenfunction(p, n)?;
        let lam = delta_eigenvalue(formula_k(config, p), n);
        let res = image_residual(&probe, Potential::Minus(k), &u, lam)?;
        worst = worst.max(res / (1.0 + lam));
    }
    Ok(vec![Check::new(format!("{} n<={}", label(p), config.n_max), worst, TOL_EIGEN)])
}

fn partner_residual(config: &VerifyConfig, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let probe = Probe::interior(p, config.sample_points);
    let k = p.k();
    let up = p.with_k(k + 1.0)?;
    let mut worst = 0.0f64;
    for n in 1..=config.n_max.max(1) {
        let v = build_eigenfunction(&up, n - 1)?;
        let lam = delta_eigenvalue(formula_k(config, p), n);
        let res = image_residual(&probe, Potential::Plus(k), &v, lam)?;
        worst = worst.max(res / (1.0 + lam));
    }
    Ok(vec![Check::new(format!("{} n<={}", label(p), config.n_max), worst, TOL_EIGEN)])
}

/// `sup |Δ[V]U − λU|` over the probe.
fn image_residual(probe: &Probe<f64>, potential: Potential<f64>, u: &Wavefunction<f64>, lam: f64) -> Result<f64> {
    let image = delta_image(potential, u);
    match image.as_wavefunction() {
        Some(wf) => probe.sup_distance(wf, &u.scaled(lam)),
        None => {
            let mut worst = 0.0f64;
            for &x in probe.points() {
                let d = image.evaluate(x)? - lam * u.evaluate(x)?;
                worst = if d.is_nan() { f64::NAN } else { worst.max(d.abs()) };
            }
            Ok(worst)
        }
    }
}

fn ladder(config: &VerifyConfig, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let probe = Probe::interior(p, config.sample_points);
    let up = p.with_k(p.k() + 1.0)?;
    let ctx = LadderContext::new(*p);
    let mut lower_worst = 0.0f64;
    let mut raise_worst = 0.0f64;
    let mut annihilation = 0.0f64;
    for n in 0..=config.n_max {
        let u = build_eigenfunction(p, n)?;
        let lowered = ctx.lower(&u)?;
        if n == 0 {
            annihilation = probe.sup_norm(&lowered)?;
            continue;
        }
        let v = build_eigenfunction(&up, n - 1)?;
        let coeff = delta_eigenvalue(formula_k(config, p), n).sqrt();
        lower_worst = lower_worst.max(probe.sup_distance(&lowered, &v.scaled(coeff))?);
        let raised = ctx.raise(&v)?;
        raise_worst = raise_worst.max(probe.sup_distance(&raised, &u.scaled(coeff))?);
    }
    Ok(vec![
        Check::new(format!("{} lower", label(p)), lower_worst, TOL_LADDER),
        Check::new(format!("{} raise", label(p)), raise_worst, TOL_LADDER),
        Check::new(format!("{} lower annihilates ground", label(p)), annihilation, TOL_LADDER),
    ])
}

fn shape_invariance(config: &VerifyConfig, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let k = p.k();
    let next = p.with_k(k + 1.0)?;
    let probe = Probe::interior(p, config.sample_points);
    let mut worst = 0.0f64;
    for &x in probe.points() {
        let vm = next.v_minus(x)?;
        let res = (p.v_plus(x)? - vm - (2.0 * k + 1.0)).abs() / (1.0 + vm.abs());
        worst = if res.is_nan() { f64::NAN } else { worst.max(res) };
    }
    Ok(vec![Check::new(label(p), worst, TOL_SHAPE)])
}

fn random_tests(config: &VerifyConfig, index: usize, p: &ModelParams<f64>, kappa: f64) -> Vec<Wavefunction<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(index as u64));
    (0..config.random_tests)
        .map(|_| {
            let degree = rng.gen_range(0..=config.random_degree);
            let coeffs = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
            Wavefunction::new(*p, kappa, coeffs).expect("finite coefficients")
        })
        .collect()
}

fn factorization(config: &VerifyConfig, index: usize, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let probe = Probe::interior(p, config.sample_points);
    let k = p.k();
    let mut minus = 0.0f64;
    let mut plus = 0.0f64;
    for wf in random_tests(config, index, p, k) {
        let scale = 1.0 + probe.sup_norm(&wf)?;
        minus = minus.max(factorization_residual(k, &wf, probe.points())? / scale);
        let partner = Wavefunction::new(*p, k + 1.0, wf.coeffs().to_vec())?;
        let scale = 1.0 + probe.sup_norm(&partner)?;
        plus = plus.max(factorization_residual(k, &partner, probe.points())? / scale);
    }
    Ok(vec![
        Check::new(format!("{} A+A = Delta[V-]", label(p)), minus, TOL_FACTORIZATION),
        Check::new(format!("{} AA+ = Delta[V+]", label(p)), plus, TOL_FACTORIZATION),
    ])
}

fn commutator(config: &VerifyConfig, index: usize, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let probe = Probe::interior(p, config.sample_points);
    let k = p.k();
    let mut worst = 0.0f64;
    for wf in random_tests(config, index, p, k) {
        let scale = 1.0 + probe.sup_norm(&wf)?;
        worst = worst.max(commutator_residual(k, &wf, probe.points())? / scale);
    }
    Ok(vec![Check::new(label(p), worst, TOL_COMMUTATOR)])
}

fn build_up(config: &VerifyConfig, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let probe = Probe::interior(p, config.sample_points);
    let mut worst = 0.0f64;
    for n in 0..=config.n_max {
        let chained = build_from_ground(p, n)?;
        let direct = build_eigenfunction(p, n)?;
        worst = worst.max(probe.sup_distance(&chained, &direct)?);
    }
    Ok(vec![Check::new(format!("{} n<={}", label(p), config.n_max), worst, TOL_BUILD_UP)])
}

fn relative_to_level(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

fn numeric(config: &VerifyConfig, p: &ModelParams<f64>) -> Result<Vec<Check>> {
    let k = p.k();
    let coarse_n = config.grid_n;
    let fine_n = 2 * config.grid_n;
    let coarse = discretize_delta(p, Potential::Minus(k), coarse_n)?.eigenvalues_lowest(SPECTRUM_LEVELS + 1)?;
    let fine = discretize_delta(p, Potential::Minus(k), fine_n)?.eigenvalues_lowest(SPECTRUM_LEVELS)?;
    let partner = discretize_delta(p, Potential::Plus(k), coarse_n)?.eigenvalues_lowest(PARTNER_LEVELS)?;
    let half = discretize_delta(p, Potential::Minus(k), coarse_n / 2)?.eigenvalue(1)?;
    // ŵh = π/(N+1)
    let h = |n: usize| std::f64::consts::PI / (n + 1) as f64;

    let mut plain = 0.0f64;
    let mut extrapolated = 0.0f64;
    for n in 0..SPECTRUM_LEVELS {
        let want = delta_eigenvalue(formula_k(config, p), n);
        plain = plain.max(relative_to_level(coarse[n], want));
        let r = richardson(coarse[n], fine[n], h(coarse_n), h(fine_n), 2);
        extrapolated = extrapolated.max(relative_to_level(r, want));
    }
    let mut degeneracy = 0.0f64;
    for (j, lam) in partner.iter().enumerate() {
        degeneracy = degeneracy.max(relative_to_level(*lam, coarse[j + 1]));
    }
    let exact = delta_eigenvalue(k, 1);
    let ratio = (half - exact) / (coarse[1] - exact);
    let (lo, hi) = FD_ORDER_RANGE;
    let centre = (lo + hi) / 2.0;
    Ok(vec![
        Check::new(format!("{} lowest {SPECTRUM_LEVELS} at N={coarse_n}", label(p)), plain, TOL_SPECTRUM),
        Check::new(
            format!("{} lowest {SPECTRUM_LEVELS} Richardson N={coarse_n},{fine_n}", label(p)),
            extrapolated,
            TOL_SPECTRUM_RICHARDSON,
        ),
        Check::new(format!("{} partner degeneracy", label(p)), degeneracy, TOL_SPECTRUM),
        Check::new(
            format!("{} |error ratio N={}/{coarse_n} - 4| (ratio {ratio:.4})", label(p), coarse_n / 2),
            (ratio - centre).abs(),
            (hi - lo) / 2.0,
        ),
    ])
}

/// `r_n(k) = |E_n − m − ω(n+½)|/ω` along a sequence of `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonrelRow {
    pub k: f64,
    pub mass: f64,
    /// `r_0..r_5`.
    pub residuals: Vec<f64>,
    /// `max_n |E_n² − m² − ŵ²(n²+2nk+k)| / E_n²`.
    pub identity_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonrelTable {
    pub omega: f64,
    pub epsilon: f64,
    pub rows: Vec<NonrelRow>,
}

impl NonrelTable {
    /// Largest increase of any `r_n` between consecutive `k` (0 when monotone).
    pub fn max_increase(&self) -> f64 {
        self.rows
            .windows(2)
            .flat_map(|w| {
                w[0].residuals
                    .iter()
                    .zip(&w[1].residuals)
                    .map(|(a, b)| (b - a).max(0.0))
            })
            .fold(0.0, f64::max)
    }

    pub fn is_monotone(&self) -> bool {
        self.max_increase() == 0.0
    }
}

pub const NONREL_LEVELS: usize = 6;

pub fn run_nonrel_limit(omega: f64, epsilon: f64, k_sequence: &[f64]) -> Result<NonrelTable> {
    let mut rows = Vec::with_capacity(k_sequence.len());
    for &k in k_sequence {
        let p = ModelParams::new(omega, epsilon, k)?;
        let m = p.mass();
        let w = p.hat_omega();
        let mut residuals = Vec::with_capacity(NONREL_LEVELS);
        let mut identity = 0.0f64;
        for n in 0..NONREL_LEVELS {
            let nf = n as f64;
            let e = p.energy(n);
            let gap2 = w * w * (nf * nf + 2.0 * nf * k + k);
            let e2 = p.energy_squared(n);
            identity = identity.max((e2 - m * m - gap2).abs() / e2);
            // E − m without cancellation
            let binding = gap2 / (e + m);
            residuals.push((binding - omega * (nf + 0.5)).abs() / omega);
        }
        rows.push(NonrelRow {
            k,
            mass: m,
            residuals,
            identity_residual: identity,
        });
    }
    Ok(NonrelTable { omega, epsilon, rows })
}

fn equidistance_and_limit(config: &VerifyConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut seen = BTreeSet::new();
    for p in &config.params_set {
        if !seen.insert((p.omega().to_bits(), p.k().to_bits())) {
            continue;
        }
        let ads = match ModelParams::new(p.omega(), 1.0, p.k()) {
            Ok(ads) => ads,
            Err(e) => {
                checks.push(Check::failed(label(p), e));
                continue;
            }
        };
        let worst = (0..config.n_max.max(1))
            .map(|n| (ads.energy(n + 1) - ads.energy(n) - ads.omega()).abs())
            .fold(0.0, f64::max);
        checks.push(Check::new(format!("{} equidistance", label(&ads)), worst, TOL_EQUIDISTANCE));
    }
    let mut seen = BTreeSet::new();
    for p in &config.params_set {
        if !seen.insert((p.omega().to_bits(), p.epsilon().to_bits())) {
            continue;
        }
        let tag = format!("omega={} epsilon={}", p.omega(), p.epsilon());
        match run_nonrel_limit(p.omega(), p.epsilon(), &config.nonrel_k) {
            Ok(table) => {
                checks.push(Check::new(format!("{tag} nonrel monotone"), table.max_increase(), 0.0));
                if let Some(last) = table.rows.last() {
                    checks.push(Check::new(
                        format!("{tag} nonrel r0 at k={}", last.k),
                        last.residuals[0],
                        TOL_NONREL,
                    ));
                    let identity = table.rows.iter().map(|r| r.identity_residual).fold(0.0, f64::max);
                    checks.push(Check::new(format!("{tag} E^2 - m^2 identity"), identity, 1e-12));
                }
            }
            Err(e) => checks.push(Check::failed(tag, e)),
        }
    }
    checks
}
