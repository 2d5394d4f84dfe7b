//! Lowering and raising operators, the rescaled Klein-Gordon operator and
//! the identities that tie them together.
//!
//! With `U = cos^κ·P(s)`, `s = sin ŵx`, the operators act on the polynomial
//! part by
//!
//! ```text
//! A_k  U = cos^{κ−1}·[(k−κ)·s·P + (1−s²)·P']      → cos^{k+1}·P'             when κ = k
//! A_k⁺ U = cos^{κ−1}·[(k+κ)·s·P − (1−s²)·P']      → cos^k·[(2k+1)sP − (1−s²)P'] when κ = k+1
//! ```
//!
//! and `−(1/ŵ²)U'' + (a·tan² + b)U` is
//! `cos^κ·[(κ+b)P + (2κ+1)sP' − (1−s²)P''] + (a − κ(κ−1))·tan²·U`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelParams, Potential};
use crate::numeric::log_gamma;
use crate::poly;
use crate::scalar::Real;
use crate::wavefun::{ground_state, Wavefunction, MAX_LEVEL};

fn envelopes_match<T: Real>(kappa: T, target: T) -> bool {
    (kappa - target).abs() <= T::lit(64.0) * T::epsilon() * (T::one() + target.abs())
}

/// `A_k` applied to any representable function.
pub fn apply_lowering<T: Real>(k: T, wf: &Wavefunction<T>) -> Wavefunction<T> {
    let p = wf.coeffs();
    let dp = poly::derivative(p);
    if envelopes_match(wf.kappa(), k) {
        return Wavefunction::from_parts(*wf.params(), k + T::one(), dp);
    }
    let kappa = wf.kappa();
    let sp = poly::mul_s(p);
    let wd = poly::mul_one_minus_s2(&dp);
    let out = poly::combine(&[(k - kappa, &sp[..]), (T::one(), &wd[..])]);
    Wavefunction::from_parts(*wf.params(), kappa - T::one(), out)
}

/// `A_k⁺` applied to any representable function.
pub fn apply_raising<T: Real>(k: T, wf: &Wavefunction<T>) -> Wavefunction<T> {
    let p = wf.coeffs();
    let kappa = wf.kappa();
    let sp = poly::mul_s(p);
    let wd = poly::mul_one_minus_s2(&poly::derivative(p));
    let out = poly::combine(&[(k + kappa, &sp[..]), (-T::one(), &wd[..])]);
    Wavefunction::from_parts(*wf.params(), kappa - T::one(), out)
}

/// Operator pair `A_k`, `A_k⁺` at one level of the `k` hierarchy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderContext<T> {
    params: ModelParams<T>,
    k_level: T,
}

impl<T: Real> LadderContext<T> {
    /// Operators at `k = params.k()`.
    pub fn new(params: ModelParams<T>) -> Self {
        Self {
            params,
            k_level: params.k(),
        }
    }

    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    pub fn k_level(&self) -> T {
        self.k_level
    }

    /// `A_k` on a function with envelope `cos^k`; the result carries `cos^{k+1}`.
    pub fn lower(&self, wf: &Wavefunction<T>) -> Result<Wavefunction<T>> {
        self.expect_kappa(wf, self.k_level)?;
        let out = apply_lowering(self.k_level, wf);
        Ok(out.with_params(self.params.with_k(self.k_level + T::one())?))
    }

    /// `A_k⁺` on a function with envelope `cos^{k+1}`; the result carries `cos^k`.
    pub fn raise(&self, wf: &Wavefunction<T>) -> Result<Wavefunction<T>> {
        self.expect_kappa(wf, self.k_level + T::one())?;
        let out = apply_raising(self.k_level, wf);
        let out = Wavefunction::from_parts(self.params, self.k_level, out.coeffs().to_vec());
        Ok(out)
    }

    fn expect_kappa(&self, wf: &Wavefunction<T>, target: T) -> Result<()> {
        if wf.params().hat_omega() != self.params.hat_omega() {
            return Err(Error::DomainMismatch(
                wf.params().hat_omega().as_f64(),
                self.params.hat_omega().as_f64(),
            ));
        }
        if !envelopes_match(wf.kappa(), target) {
            return Err(Error::EnvelopeMismatch {
                expected: target.as_f64(),
                found: wf.kappa().as_f64(),
            });
        }
        Ok(())
    }
}

/// `Δ[V]U` split into a `cos^κ`-polynomial part and a residual `tan²` term.
///
/// The `tan²` weight vanishes when the potential's `tan²` coefficient equals
/// `κ(κ−1)`, in which case the image is again an exact [`Wavefunction`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaImage<T> {
    regular: Wavefunction<T>,
    tan2_weight: T,
    source: Wavefunction<T>,
}

impl<T: Real> DeltaImage<T> {
    pub fn regular(&self) -> &Wavefunction<T> {
        &self.regular
    }

    pub fn tan2_weight(&self) -> T {
        self.tan2_weight
    }

    /// The image as a wavefunction, when it has no `tan²` remainder.
    pub fn as_wavefunction(&self) -> Option<&Wavefunction<T>> {
        (self.tan2_weight == T::zero()).then_some(&self.regular)
    }

    pub fn evaluate(&self, x: T) -> Result<T> {
        let r = self.regular.evaluate(x)?;
        if self.tan2_weight == T::zero() {
            return Ok(r);
        }
        let params = self.source.params();
        if !params.contains(x) {
            return Err(Error::OutsideDomain {
                x: x.as_f64(),
                half_width: params.half_width().as_f64(),
            });
        }
        let t = (params.hat_omega() * x).tan();
        Ok(r + self.tan2_weight * t * t * self.source.evaluate(x)?)
    }
}

/// Exact image of `wf` under `−(1/ŵ²)d²/dx² + V`.
pub fn delta_image<T: Real>(potential: Potential<T>, wf: &Wavefunction<T>) -> DeltaImage<T> {
    let kappa = wf.kappa();
    let a = potential.tan2_coeff();
    let b = potential.offset();
    let p = wf.coeffs();
    let dp = poly::derivative(p);
    let ddp = poly::derivative(&dp);
    let sdp = poly::mul_s(&dp);
    let wddp = poly::mul_one_minus_s2(&ddp);
    let two = T::lit(2.0);
    let regular = poly::combine(&[
        (kappa + b, p),
        (two * kappa + T::one(), &sdp[..]),
        (-T::one(), &wddp[..]),
    ]);
    let own = kappa * (kappa - T::one());
    let mut weight = a - own;
    if weight.abs() <= T::lit(8.0) * T::epsilon() * a.abs().max(own.abs()) {
        weight = T::zero();
    }
    DeltaImage {
        regular: Wavefunction::from_parts(*wf.params(), kappa, regular),
        tan2_weight: weight,
        source: wf.clone(),
    }
}

/// Samples of `Δ[V]U` at the given points.
pub fn apply_delta<T: Real>(potential: Potential<T>, wf: &Wavefunction<T>, xs: &[T]) -> Result<Vec<T>> {
    let image = delta_image(potential, wf);
    xs.iter().map(|&x| image.evaluate(x)).collect()
}

fn sup_abs<T: Real, F: FnMut(T) -> Result<T>>(xs: &[T], mut f: F) -> Result<T> {
    let mut worst = T::zero();
    for &x in xs {
        let v = f(x)?;
        if v.is_nan() {
            return Ok(T::nan());
        }
        worst = worst.max(v.abs());
    }
    Ok(worst)
}

/// `sup |(A_k⁺A_k − Δ[V_-(k)])wf|` for `κ = k`, or
/// `sup |(A_kA_k⁺ − Δ[V_+(k)])wf|` for `κ = k+1`, over the given points.
pub fn factorization_residual<T: Real>(k: T, wf: &Wavefunction<T>, xs: &[T]) -> Result<T> {
    let (product, potential) = if envelopes_match(wf.kappa(), k) {
        (apply_raising(k, &apply_lowering(k, wf)), Potential::Minus(k))
    } else if envelopes_match(wf.kappa(), k + T::one()) {
        (apply_lowering(k, &apply_raising(k, wf)), Potential::Plus(k))
    } else {
        return Err(Error::EnvelopeMismatch {
            expected: k.as_f64(),
            found: wf.kappa().as_f64(),
        });
    };
    let image = delta_image(potential, wf);
    sup_abs(xs, |x| Ok(product.evaluate(x)? - image.evaluate(x)?))
}

/// `sup |([A_k, A_k⁺] − 2k(1 + tan²ŵx))wf|` over the given (interior) points.
///
/// The right side is `2k + (1/2k)(A_k + A_k⁺)²` with `A_k + A_k⁺ = 2W`.
pub fn commutator_residual<T: Real>(k: T, wf: &Wavefunction<T>, xs: &[T]) -> Result<T> {
    let forward = apply_lowering(k, &apply_raising(k, wf));
    let backward = apply_raising(k, &apply_lowering(k, wf));
    let params = *wf.params();
    let two_k = k + k;
    sup_abs(xs, |x| {
        if !params.contains(x) {
            return Err(Error::OutsideDomain {
                x: x.as_f64(),
                half_width: params.half_width().as_f64(),
            });
        }
        let t = (params.hat_omega() * x).tan();
        let rhs = two_k * (T::one() + t * t) * wf.eval_interior(x);
        Ok(forward.eval_interior(x) - backward.eval_interior(x) - rhs)
    })
}

/// `(1/√n!)·[Γ(n+2k)/Γ(2n+2k)]^{1/2}`, evaluated in log space.
pub fn build_up_prefactor<T: Real>(k: T, n: usize) -> Result<T> {
    if n == 0 {
        return Ok(T::one());
    }
    let nf = T::of(n);
    let two_k = k + k;
    let log = (log_gamma(nf + two_k)? - log_gamma(nf + nf + two_k)? - log_gamma(nf + T::one())?) / T::lit(2.0);
    Ok(log.exp())
}

/// `U_{k,n}` built as `prefactor · A_k⁺A_{k+1}⁺…A_{k+n−1}⁺ U_{k+n,0}`.
pub fn build_from_ground<T: Real>(params: &ModelParams<T>, n: usize) -> Result<Wavefunction<T>> {
    if n > MAX_LEVEL {
        return Err(Error::LevelTooHigh(n));
    }
    let k = params.k();
    let mut wf = ground_state(&params.with_k(k + T::of(n))?)?;
    for j in (0..n).rev() {
        let ctx = LadderContext::new(params.with_k(k + T::of(j))?);
        wf = ctx.raise(&wf)?;
    }
    Ok(wf.scaled(build_up_prefactor(k, n)?).with_params(*params))
}

/// One raising step of the build-up chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainStep<T> {
    /// Position in the chain, innermost operator first.
    pub step: usize,
    /// `k` of the operator `A_k⁺` applied in this step.
    pub k_level: T,
    pub n_from: usize,
    pub n_to: usize,
    /// `‖A⁺U‖` for the normalized input, `√((j+1)(j+1+2(k+n−j−1)))`.
    pub factor: T,
}

/// The `n` raising steps that take `U_{k+n,0}` to `U_{k,n}`.
pub fn raising_chain<T: Real>(k: T, n: usize) -> Vec<ChainStep<T>> {
    (0..n)
        .map(|j| {
            let k_level = k + T::of(n - j - 1);
            let m = T::of(j + 1);
            ChainStep {
                step: j,
                k_level,
                n_from: j,
                n_to: j + 1,
                factor: (m * (m + k_level + k_level)).sqrt(),
            }
        })
        .collect()
}
