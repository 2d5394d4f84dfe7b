//! Model parameters, spectra and the potentials of the relativistic
//! Pöschl-Teller family.
//!
//! A model is fixed by the oscillator frequency `omega`, the deformation
//! `epsilon` and the envelope exponent `k > 1`. The mass is a derived
//! quantity, `m² = k(k−1)ε²ŵ²` with `ŵ = εω`. Positions live on the open
//! interval `(−π/2ŵ, π/2ŵ)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest admitted envelope exponent.
pub const K_MAX: f64 = 1e8;

/// Parameters `(ω, ε, k)` plus the derived `ŵ` and domain half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams<T> {
    omega: T,
    epsilon: T,
    k: T,
    hat_omega: T,
    half_width: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(omega: T, epsilon: T, k: T) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::NonPositiveOmega(omega.as_f64()));
        }
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(Error::NonPositiveEpsilon(epsilon.as_f64()));
        }
        if !(k > T::one()) {
            return Err(Error::KTooSmall(k.as_f64()));
        }
        if !(k <= T::lit(K_MAX)) {
            return Err(Error::KTooLarge(k.as_f64()));
        }
        let hat_omega = epsilon * omega;
        let half_width = T::FRAC_PI_2() / hat_omega;
        Ok(Self {
            omega,
            epsilon,
            k,
            hat_omega,
            half_width,
        })
    }

    /// Parametrizes the model by its mass instead of `k`.
    pub fn from_mass(mass: T, omega: T, epsilon: T) -> Result<Self> {
        let k = k_from_mass(mass, omega, epsilon)?;
        Self::new(omega, epsilon, k)
    }

    /// Same `ω, ε` at another point of the `k` hierarchy.
    pub fn with_k(&self, k: T) -> Result<Self> {
        Self::new(self.omega, self.epsilon, k)
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// `ŵ = εω`.
    pub fn hat_omega(&self) -> T {
        self.hat_omega
    }

    /// `π/(2ŵ)`.
    pub fn half_width(&self) -> T {
        self.half_width
    }

    /// True for `|x| < half_width`.
    pub fn contains(&self, x: T) -> bool {
        x.abs() < self.half_width
    }

    /// `m = √(k(k−1))·ε·ŵ`.
    pub fn mass(&self) -> T {
        (self.k * (self.k - T::one())).sqrt() * self.epsilon * self.hat_omega
    }

    /// `E_n² = ŵ²[(n+k)² + (ε²−1)k(k−1)]`.
    pub fn energy_squared(&self, n: usize) -> T {
        let a = T::of(n) + self.k;
        let shift = (self.epsilon * self.epsilon - T::one()) * self.k * (self.k - T::one());
        self.hat_omega * self.hat_omega * (a * a + shift)
    }

    /// Positive root `E_n`.
    ///
    /// Evaluated as `ŵ·hypot(n+k, d)` when the shift `d²` is non-negative and
    /// as `ŵ·√((a−d)(a+d))` otherwise, so the ε = 1 spectrum is exactly
    /// `ŵ(n+k)`.
    pub fn energy(&self, n: usize) -> T {
        let a = T::of(n) + self.k;
        let shift = (self.epsilon * self.epsilon - T::one()) * self.k * (self.k - T::one());
        let root = if shift >= T::zero() {
            a.hypot(shift.sqrt())
        } else {
            let d = (-shift).sqrt();
            ((a - d) * (a + d)).sqrt()
        };
        self.hat_omega * root
    }

    /// Eigenvalue of the rescaled operator on `V_-(k)`: `n(n+2k)`.
    pub fn delta_eigenvalue(&self, n: usize) -> T {
        delta_eigenvalue(self.k, n)
    }

    pub fn spectrum(&self, n_max: usize) -> Spectrum<T> {
        let levels = (0..=n_max)
            .map(|n| Level {
                n,
                e_squared: self.energy_squared(n),
                energy: self.energy(n),
                delta_eig: self.delta_eigenvalue(n),
            })
            .collect();
        Spectrum {
            params: *self,
            levels,
        }
    }

    fn check_interior(&self, x: T) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                x: x.as_f64(),
                half_width: self.half_width.as_f64(),
            })
        }
    }

    fn tan_at(&self, x: T) -> Result<T> {
        self.check_interior(x)?;
        Ok((self.hat_omega * x).tan())
    }

    /// `V_PT = k(k−1)ŵ²tan²(ŵx)`.
    pub fn v_pt(&self, x: T) -> Result<T> {
        let t = self.tan_at(x)?;
        Ok(self.k * (self.k - T::one()) * self.hat_omega * self.hat_omega * t * t)
    }

    /// `V_-(k,x) = k(k−1)tan²(ŵx) − k`.
    pub fn v_minus(&self, x: T) -> Result<T> {
        Potential::Minus(self.k).value(self, x)
    }

    /// `V_+(k,x) = k(k+1)tan²(ŵx) + k`.
    pub fn v_plus(&self, x: T) -> Result<T> {
        Potential::Plus(self.k).value(self, x)
    }

    /// `W(k,x) = k·tan(ŵx)`.
    pub fn superpotential(&self, x: T) -> Result<T> {
        Ok(self.k * self.tan_at(x)?)
    }
}

/// `n(n+2k)`.
pub fn delta_eigenvalue<T: Real>(k: T, n: usize) -> T {
    let n = T::of(n);
    n * (n + k + k)
}

/// Positive root of `k(k−1) = m²/(ε²ŵ²)`.
///
/// `k − 1` is formed as `2q/(1+√(1+4q))` so that small masses keep full
/// relative precision.
pub fn k_from_mass<T: Real>(mass: T, omega: T, epsilon: T) -> Result<T> {
    if !(omega > T::zero()) {
        return Err(Error::NonPositiveOmega(omega.as_f64()));
    }
    if !(epsilon > T::zero()) {
        return Err(Error::NonPositiveEpsilon(epsilon.as_f64()));
    }
    if !(mass > T::zero()) || !mass.is_finite() {
        return Err(Error::NonPositiveMass(mass.as_f64()));
    }
    let scale = epsilon * epsilon * omega;
    let ratio = mass / scale;
    let q = ratio * ratio;
    let root = (T::one() + T::lit(4.0) * q).sqrt();
    let k = T::one() + (q + q) / (T::one() + root);
    if !(k > T::one()) {
        return Err(Error::KTooSmall(k.as_f64()));
    }
    Ok(k)
}

/// `m = √(k(k−1))·ε·ŵ`.
pub fn mass_from_k<T: Real>(params: &ModelParams<T>) -> T {
    params.mass()
}

/// One row of a [`Spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level<T> {
    pub n: usize,
    pub e_squared: T,
    pub energy: T,
    pub delta_eig: T,
}

/// Energy levels `0..=n_max` of one model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum<T> {
    pub params: ModelParams<T>,
    pub levels: Vec<Level<T>>,
}

/// Potentials of the form `a·tan²(ŵx) + b` used by the rescaled operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential<T> {
    /// `V ≡ 0`.
    Free,
    /// `V_-(k)`.
    Minus(T),
    /// `V_+(k)`.
    Plus(T),
}

impl<T: Real> Potential<T> {
    /// Coefficient `a` of `tan²`.
    pub fn tan2_coeff(&self) -> T {
        match *self {
            Potential::Free => T::zero(),
            Potential::Minus(k) => k * (k - T::one()),
            Potential::Plus(k) => k * (k + T::one()),
        }
    }

    /// Constant offset `b`.
    pub fn offset(&self) -> T {
        match *self {
            Potential::Free => T::zero(),
            Potential::Minus(k) => -k,
            Potential::Plus(k) => k,
        }
    }

    /// Value at an interior point.
    pub fn value(&self, params: &ModelParams<T>, x: T) -> Result<T> {
        let t = params.tan_at(x)?;
        Ok(self.tan2_coeff() * t * t + self.offset())
    }

    pub(crate) fn value_unchecked(&self, hat_omega: T, x: T) -> T {
        let t = (hat_omega * x).tan();
        self.tan2_coeff() * t * t + self.offset()
    }

    /// Envelope exponent of the bound states of this potential, when it has one.
    pub fn ground_kappa(&self) -> Option<T> {
        match *self {
            Potential::Free => None,
            Potential::Minus(k) => Some(k),
            Potential::Plus(k) => Some(k + T::one()),
        }
    }
}
