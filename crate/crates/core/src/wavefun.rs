//! Exact wavefunctions `U(x) = cos^κ(ŵx)·P(sin ŵx)`.
//!
//! Eigenfunctions of the rescaled operator on `V_-(k)` have `κ = k` and a
//! polynomial `P` of degree `n` with parity `(−1)^n`, obtained from the
//! terminating series `s^σ·F(−n_s, k+σ+n_s; σ+½; s²)` with `n = 2n_s + σ`.
//! The normalization constant is fixed by quadrature.
//!
//! Sign convention: the leading (highest-degree) coefficient of `P` is
//! positive. This is the convention under which the ladder relations
//! `A_k U_{k,n} = √(n(n+2k)) U_{k+1,n−1}` hold with a plus sign, and it
//! agrees with the raising-operator construction from positive ground states.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::numeric::{integrate_over_domain, log_gamma, DEFAULT_PANELS};
use crate::poly;
use crate::scalar::Real;

/// Highest level `n` that [`build_eigenfunction`] accepts.
pub const MAX_LEVEL: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// `cos^κ(ŵx)·P(sin ŵx)` on the domain of `params`.
///
/// `κ` is an arbitrary real here so that intermediate results of operator
/// algebra (which can lower the envelope) stay representable. Eigenfunctions
/// always carry `κ > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction<T> {
    params: ModelParams<T>,
    kappa: T,
    coeffs: Vec<T>,
}

impl<T: Real> Wavefunction<T> {
    /// Trailing zero coefficients are dropped; an empty list is the zero function.
    pub fn new(params: ModelParams<T>, kappa: T, coeffs: Vec<T>) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(Error::NonFinite("envelope exponent"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("polynomial coefficient"));
        }
        Ok(Self::from_parts(params, kappa, coeffs))
    }

    pub(crate) fn from_parts(params: ModelParams<T>, kappa: T, coeffs: Vec<T>) -> Self {
        Self {
            params,
            kappa,
            coeffs: poly::trim(coeffs),
        }
    }

    pub fn zero(params: ModelParams<T>, kappa: T) -> Self {
        Self {
            params,
            kappa,
            coeffs: Vec::new(),
        }
    }

    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    /// `c_0..c_d` of `P(s)`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Definite parity, if the nonzero coefficients sit on one index parity.
    pub fn parity(&self) -> Option<Parity> {
        let mut even = false;
        let mut odd = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c != T::zero() {
                if j % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self::from_parts(self.params, self.kappa, poly::scale(&self.coeffs, factor))
    }

    pub(crate) fn with_params(mut self, params: ModelParams<T>) -> Self {
        self.params = params;
        self
    }

    /// Value at `x`, `|x| ≤ D`. Exactly zero on the boundary when `κ > 0`.
    pub fn evaluate(&self, x: T) -> Result<T> {
        let d = self.params.half_width();
        if !(x.abs() <= d) {
            return Err(Error::OutsideDomain {
                x: x.as_f64(),
                half_width: d.as_f64(),
            });
        }
        if self.is_zero() {
            return Ok(T::zero());
        }
        let theta = self.params.hat_omega() * x;
        let c = theta.cos();
        if x.abs() == d || c <= T::zero() {
            return if self.kappa > T::zero() {
                Ok(T::zero())
            } else if self.kappa == T::zero() {
                Ok(poly::horner(&self.coeffs, x.signum()))
            } else {
                Err(Error::NonFinite("envelope is singular on the boundary"))
            };
        }
        Ok(c.powf(self.kappa) * poly::horner(&self.coeffs, theta.sin()))
    }

    /// Evaluation without the domain check, for interior sample points.
    pub(crate) fn eval_interior(&self, x: T) -> T {
        if self.is_zero() {
            return T::zero();
        }
        let theta = self.params.hat_omega() * x;
        theta.cos().powf(self.kappa) * poly::horner(&self.coeffs, theta.sin())
    }

    pub fn sample(&self, xs: &[T]) -> Result<Vec<T>> {
        xs.iter().map(|&x| self.evaluate(x)).collect()
    }

    /// `max |f(x)|` over the given points.
    pub fn sup_norm(&self, xs: &[T]) -> Result<T> {
        xs.iter()
            .try_fold(T::zero(), |m, &x| Ok(m.max(self.evaluate(x)?.abs())))
    }

    /// `max |f(x) − g(x)|` over the given points.
    pub fn sup_distance(&self, other: &Self, xs: &[T]) -> Result<T> {
        check_same_domain(self, other)?;
        xs.iter().try_fold(T::zero(), |m, &x| {
            let diff = self.evaluate(x)? - other.evaluate(x)?;
            Ok(if diff.is_nan() { T::nan() } else { m.max(diff.abs()) })
        })
    }

    /// L² norm over the domain.
    pub fn norm(&self) -> T {
        inner_product(self, self).map(|v| v.max(T::zero()).sqrt()).unwrap_or_else(|_| T::nan())
    }

    /// Number of sign changes over the given points, skipping exact zeros.
    pub fn sign_changes(&self, xs: &[T]) -> Result<usize> {
        let mut last = T::zero();
        let mut count = 0;
        for &x in xs {
            let v = self.evaluate(x)?;
            if v != T::zero() {
                if last != T::zero() && (v > T::zero()) != (last > T::zero()) {
                    count += 1;
                }
                last = v;
            }
        }
        Ok(count)
    }
}

/// Fixed interior sample points with `sin ŵx` and `ln cos ŵx` cached, for
/// repeated sup-norm comparisons.
#[derive(Debug, Clone)]
pub struct Probe<T> {
    hat_omega: T,
    xs: Vec<T>,
    sin: Vec<T>,
    ln_cos: Vec<T>,
}

impl<T: Real> Probe<T> {
    /// `count` equispaced points strictly inside the domain.
    pub fn interior(params: &ModelParams<T>, count: usize) -> Self {
        let d = params.half_width();
        let w = params.hat_omega();
        let step = (d + d) / T::of(count + 1);
        let xs: Vec<T> = (1..=count).map(|i| -d + T::of(i) * step).collect();
        let sin = xs.iter().map(|&x| (w * x).sin()).collect();
        let ln_cos = xs.iter().map(|&x| (w * x).cos().ln()).collect();
        Self {
            hat_omega: w,
            xs,
            sin,
            ln_cos,
        }
    }

    pub fn points(&self) -> &[T] {
        &self.xs
    }

    fn check(&self, wf: &Wavefunction<T>) -> Result<()> {
        let w = wf.params.hat_omega();
        if w != self.hat_omega {
            return Err(Error::DomainMismatch(w.as_f64(), self.hat_omega.as_f64()));
        }
        Ok(())
    }

    fn values_of(&self, kappa: T, coeffs: &[T]) -> impl Iterator<Item = T> + '_ {
        let coeffs = coeffs.to_vec();
        self.sin
            .iter()
            .zip(&self.ln_cos)
            .map(move |(&s, &lc)| (kappa * lc).exp() * poly::horner(&coeffs, s))
    }

    pub fn values(&self, wf: &Wavefunction<T>) -> Result<Vec<T>> {
        self.check(wf)?;
        Ok(self.values_of(wf.kappa, &wf.coeffs).collect())
    }

    pub fn sup_norm(&self, wf: &Wavefunction<T>) -> Result<T> {
        self.check(wf)?;
        Ok(sup(self.values_of(wf.kappa, &wf.coeffs)))
    }

    /// `max |f − g|`; when both share the envelope the polynomials are
    /// subtracted first.
    pub fn sup_distance(&self, f: &Wavefunction<T>, g: &Wavefunction<T>) -> Result<T> {
        self.check(f)?;
        self.check(g)?;
        if f.kappa == g.kappa {
            let diff = poly::combine(&[(T::one(), &f.coeffs[..]), (-T::one(), &g.coeffs[..])]);
            return Ok(sup(self.values_of(f.kappa, &diff)));
        }
        let a = self.values_of(f.kappa, &f.coeffs);
        let b = self.values_of(g.kappa, &g.coeffs);
        Ok(sup(a.zip(b).map(|(x, y)| x - y)))
    }
}

fn sup<T: Real>(values: impl Iterator<Item = T>) -> T {
    let mut worst = T::zero();
    for v in values {
        if v.is_nan() {
            return T::nan();
        }
        worst = worst.max(v.abs());
    }
    worst
}

fn check_same_domain<T: Real>(f: &Wavefunction<T>, g: &Wavefunction<T>) -> Result<()> {
    let (a, b) = (f.params.hat_omega(), g.params.hat_omega());
    if a != b {
        return Err(Error::DomainMismatch(a.as_f64(), b.as_f64()));
    }
    Ok(())
}

/// `∫_D f(x)g(x) dx` by composite Gauss-Legendre quadrature.
pub fn inner_product<T: Real>(f: &Wavefunction<T>, g: &Wavefunction<T>) -> Result<T> {
    check_same_domain(f, g)?;
    if f.is_zero() || g.is_zero() {
        return Ok(T::zero());
    }
    let w = f.params.hat_omega();
    let kappa = f.kappa + g.kappa;
    Ok(integrate_over_domain(
        &f.params,
        |x| {
            let theta = w * x;
            let s = theta.sin();
            theta.cos().powf(kappa) * poly::horner(&f.coeffs, s) * poly::horner(&g.coeffs, s)
        },
        DEFAULT_PANELS,
    ))
}

fn pole_check<T: Real>(c: T) -> Result<()> {
    if c <= T::zero() && c == c.round() {
        return Err(Error::PochhammerPole(c.as_f64()));
    }
    Ok(())
}

/// Coefficients `t_j` of `F(−n_s, b; c; z) = Σ_j t_j z^j`, by the term ratio
/// `t_{j+1}/t_j = (j−n_s)(b+j)/((c+j)(j+1))`.
pub fn hypergeometric_coefficients<T: Real>(n_s: usize, b: T, c: T) -> Result<Vec<T>> {
    pole_check(c)?;
    let mut out = Vec::with_capacity(n_s + 1);
    let mut t = T::one();
    out.push(t);
    for j in 0..n_s {
        let jf = T::of(j);
        t = t * (jf - T::of(n_s)) * (b + jf) / ((c + jf) * (jf + T::one()));
        out.push(t);
    }
    Ok(out)
}

/// `F(−n_s, b; c; z)`; a polynomial of degree `n_s` in `z`.
pub fn hypergeometric_terminating<T: Real>(n_s: usize, b: T, c: T, z: T) -> Result<T> {
    let coeffs = hypergeometric_coefficients(n_s, b, c)?;
    Ok(poly::horner(&coeffs, z))
}

/// Normalized eigenfunction `U_{k,n}` of the rescaled operator on `V_-(k)`.
pub fn build_eigenfunction<T: Real>(params: &ModelParams<T>, n: usize) -> Result<Wavefunction<T>> {
    if n > MAX_LEVEL {
        return Err(Error::LevelTooHigh(n));
    }
    let sigma = n % 2;
    let n_s = n / 2;
    let k = params.k();
    let half = T::lit(0.5);
    let series = hypergeometric_coefficients(n_s, k + T::of(sigma + n_s), T::of(sigma) + half)?;
    let mut coeffs = vec![T::zero(); n + 1];
    for (j, t) in series.into_iter().enumerate() {
        coeffs[sigma + 2 * j] = t;
    }
    let raw = Wavefunction::from_parts(*params, k, coeffs);
    let norm = raw.norm();
    let sign = if n_s % 2 == 0 { T::one() } else { -T::one() };
    Ok(raw.scaled(sign / norm))
}

/// Closed-form normalized ground state
/// `(ŵ²/π)^{1/4}·[Γ(k+1)/Γ(k+½)]^{1/2}·cos^k(ŵx)`.
pub fn ground_state<T: Real>(params: &ModelParams<T>) -> Result<Wavefunction<T>> {
    let k = params.k();
    let w = params.hat_omega();
    let log_ratio = log_gamma(k + T::one())? - log_gamma(k + T::lit(0.5))?;
    let amplitude = (w * w / T::PI()).powf(T::lit(0.25)) * (log_ratio / T::lit(2.0)).exp();
    Ok(Wavefunction::from_parts(*params, k, vec![amplitude]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(k: f64) -> ModelParams<f64> {
        ModelParams::new(1.0, 1.0, k).unwrap()
    }

    fn interior(p: &ModelParams<f64>, count: usize) -> Vec<f64> {
        let d = p.half_width();
        (1..=count).map(|i| -d + 2.0 * d * i as f64 / (count + 1) as f64).collect()
    }

    fn pochhammer(a: f64, j: usize) -> f64 {
        (0..j).map(|i| a + i as f64).product()
    }

    fn factorial(j: usize) -> f64 {
        (1..=j).map(|i| i as f64).product()
    }

    fn brute_force_series(n_s: usize, b: f64, c: f64, z: f64) -> f64 {
        (0..=n_s)
            .map(|j| pochhammer(-(n_s as f64), j) * pochhammer(b, j) / pochhammer(c, j) / factorial(j) * z.powi(j as i32))
            .sum()
    }

    #[test]
    fn hypergeometric_examples() {
        for (b, c, z) in [(3.0, 0.5, 0.3), (7.5, 1.5, -0.9), (1.2, 2.5, 1.0)] {
            assert_eq!(hypergeometric_terminating(0, b, c, z).unwrap(), 1.0);
        }
        let (k, s, z) = (2.0f64, 1.0f64, 0.4f64);
        let got = hypergeometric_terminating(1, k + s + 1.0, s + 0.5, z).unwrap();
        assert!((got - (1.0 - (k + s + 1.0) / (s + 0.5) * z)).abs() < 1e-15);
        // 1 − 4 + 5/3
        let got = hypergeometric_terminating(2, 4.0, 0.5, 0.25).unwrap();
        assert!((got - brute_force_series(2, 4.0, 0.5, 0.25)).abs() < 1e-15);
        assert!((got + 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn hypergeometric_rejects_poles() {
        for c in [0.0, -1.0, -3.0] {
            assert_eq!(hypergeometric_terminating(2, 1.0, c, 0.5), Err(Error::PochhammerPole(c)));
        }
        assert!(hypergeometric_terminating(2, 1.0, -0.5, 0.5).is_ok());
    }

    #[test]
    fn ground_state_value_at_origin() {
        let p = params(2.0);
        // (1/π)^{1/4}·√(Γ(3)/Γ(5/2)) with Γ(5/2) = ¾√π
        let want = (1.0 / std::f64::consts::PI).powf(0.25) * (2.0 / (0.75 * std::f64::consts::PI.sqrt())).sqrt();
        let closed = ground_state(&p).unwrap();
        assert!((closed.evaluate(0.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 0.921_317).abs() < 1e-6);
        let built = build_eigenfunction(&p, 0).unwrap();
        assert_eq!(built.coeffs().len(), 1);
        assert!((built.coeffs()[0] - want).abs() < 1e-13);
    }

    #[test]
    fn ground_state_normalized_for_any_domain() {
        for (omega, eps, k) in [(1.0f64, 0.5f64, 1.5f64), (2.0, 2.0, 3.7), (0.3, 1.0, 10.0)] {
            let p = ModelParams::new(omega, eps, k).unwrap();
            let g = ground_state(&p).unwrap();
            assert!((inner_product(&g, &g).unwrap() - 1.0).abs() < 1e-12);
            let b = build_eigenfunction(&p, 0).unwrap();
            assert!((b.coeffs()[0] - g.coeffs()[0]).abs() < 1e-12 * g.coeffs()[0]);
        }
    }

    #[test]
    fn first_excited_is_odd() {
        let p = params(2.0);
        let u = build_eigenfunction(&p, 1).unwrap();
        assert_eq!(u.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(u.parity(), Some(Parity::Odd));
    }

    #[test]
    fn second_excited_shape() {
        let p = params(2.0);
        let u = build_eigenfunction(&p, 2).unwrap();
        assert_eq!(u.degree(), Some(2));
        assert_eq!(u.parity(), Some(Parity::Even));
        assert_eq!(u.sign_changes(&interior(&p, 10_000)).unwrap(), 2);
    }

    #[test]
    fn evaluation_contract() {
        let p = params(2.5);
        let u = build_eigenfunction(&p, 4).unwrap();
        let d = p.half_width();
        assert_eq!(u.evaluate(d).unwrap(), 0.0);
        assert_eq!(u.evaluate(-d).unwrap(), 0.0);
        assert_eq!(u.evaluate(0.0).unwrap(), u.coeffs()[0]);
        assert!(matches!(u.evaluate(1.0001 * d), Err(Error::OutsideDomain { .. })));
        for x in [0.1, 0.7, 1.3] {
            assert_eq!(u.evaluate(x).unwrap(), u.evaluate(-x).unwrap());
        }
    }

    #[test]
    fn inner_product_examples() {
        let p = params(2.0);
        let u: Vec<_> = (0..4).map(|n| build_eigenfunction(&p, n).unwrap()).collect();
        assert!((inner_product(&u[0], &u[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(inner_product(&u[0], &u[1]).unwrap().abs() < 1e-14);
        assert!(inner_product(&u[0], &u[2]).unwrap().abs() < 1e-11);
        assert!(inner_product(&u[1], &u[3]).unwrap().abs() < 1e-11);
        let other = build_eigenfunction(&ModelParams::new(1.0, 2.0, 2.0).unwrap(), 0).unwrap();
        assert!(matches!(inner_product(&u[0], &other), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn orthogonality_is_resolved_by_panel_refinement() {
        // Independent high-panel-count run of ⟨U_{2,1}, U_{2,3}⟩.
        let p = params(2.0);
        let (a, b) = (build_eigenfunction(&p, 1).unwrap(), build_eigenfunction(&p, 3).unwrap());
        let fine = crate::numeric::integrate(
            |x: f64| a.evaluate(x).unwrap() * b.evaluate(x).unwrap(),
            -p.half_width(),
            p.half_width(),
            1024,
        );
        assert!(fine.abs() < 1e-11);
    }

    #[test]
    fn gram_matrix_is_identity() {
        for k in [1.5, 2.0, 3.7, 10.0] {
            let p = params(k);
            let u: Vec<_> = (0..8).map(|n| build_eigenfunction(&p, n).unwrap()).collect();
            for i in 0..8 {
                for j in 0..8 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    let got = inner_product(&u[i], &u[j]).unwrap();
                    assert!((got - want).abs() < 1e-8, "k = {k}, ({i},{j}): {got}");
                }
            }
        }
    }

    #[test]
    fn nodes_and_parity_follow_level() {
        for k in [1.5, 3.7] {
            let p = params(k);
            let xs = interior(&p, 10_000);
            for n in 0..=12 {
                let u = build_eigenfunction(&p, n).unwrap();
                assert_eq!(u.sign_changes(&xs).unwrap(), n, "k = {k}, n = {n}");
                let want = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
                assert_eq!(u.parity(), Some(want));
                assert!(*u.coeffs().last().unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn coefficient_form_matches_series_form() {
        for k in [1.5, 2.0, 3.7, 10.0] {
            let p = params(k);
            let xs = interior(&p, 1000);
            for n in 0..=16 {
                let u = build_eigenfunction(&p, n).unwrap();
                let (sigma, n_s) = (n % 2, n / 2);
                // Recover the normalization from one coefficient.
                let norm_factor = u.coeffs()[sigma];
                for &x in &xs {
                    let (s, c) = (x.sin(), x.cos());
                    let direct = norm_factor
                        * c.powf(k)
                        * s.powi(sigma as i32)
                        * hypergeometric_terminating(n_s, k + (sigma + n_s) as f64, sigma as f64 + 0.5, s * s).unwrap();
                    let coeff = u.evaluate(x).unwrap();
                    let scale = u.coeffs().iter().map(|c| c.abs()).sum::<f64>() * c.powf(k);
                    assert!((direct - coeff).abs() <= 1e-12 * scale.max(coeff.abs()), "k = {k} n = {n} x = {x}");
                }
            }
        }
    }

    #[test]
    fn probe_agrees_with_pointwise_evaluation() {
        let p = ModelParams::<f64>::new(1.0, 2.0, 3.7).unwrap();
        let probe = Probe::interior(&p, 500);
        let u = build_eigenfunction(&p, 5).unwrap();
        let v = build_eigenfunction(&p, 6).unwrap();
        let direct = u.sup_distance(&v, probe.points()).unwrap();
        assert!((probe.sup_distance(&u, &v).unwrap() - direct).abs() < 1e-13);
        assert!((probe.sup_norm(&u).unwrap() - u.sup_norm(probe.points()).unwrap()).abs() < 1e-13);
        let vals = probe.values(&u).unwrap();
        for (x, got) in probe.points().iter().zip(vals) {
            assert!((u.evaluate(*x).unwrap() - got).abs() < 1e-13);
        }
        let other = Probe::interior(&params(2.0), 10);
        assert!(other.sup_norm(&u).is_err());
    }

    #[test]
    fn rejects_levels_beyond_limit() {
        assert_eq!(build_eigenfunction(&params(2.0), 65), Err(Error::LevelTooHigh(65)));
        assert!(build_eigenfunction(&params(2.0), 64).is_ok());
    }

    #[test]
    fn constructor_validation() {
        let p = params(2.0);
        let w = Wavefunction::new(p, 2.0, vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(w.degree(), Some(0));
        assert!(Wavefunction::new(p, f64::NAN, vec![1.0]).is_err());
        assert!(Wavefunction::new(p, 2.0, vec![f64::INFINITY]).is_err());
        let z = Wavefunction::zero(p, 3.0);
        assert!(z.is_zero() && z.norm() == 0.0 && z.parity().is_none());
        let neg = Wavefunction::new(p, -0.5, vec![1.0]).unwrap();
        assert!(neg.evaluate(p.half_width()).is_err());
    }

    #[test]
    fn single_precision_ground_state() {
        let p = ModelParams::<f32>::new(1.0, 1.0, 2.0).unwrap();
        let g = build_eigenfunction(&p, 0).unwrap();
        assert!((g.evaluate(0.0).unwrap() - 0.921_317).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn vanishes_on_boundary(k in 1.01f64..30.0, n in 0usize..12, eps in 0.2f64..5.0) {
            let p = ModelParams::new(1.0, eps, k).unwrap();
            let u = build_eigenfunction(&p, n).unwrap();
            prop_assert_eq!(u.evaluate(p.half_width()).unwrap(), 0.0);
            prop_assert_eq!(u.evaluate(-p.half_width()).unwrap(), 0.0);
        }
    }
}
