use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ModelParams, Potential};
use crate::scalar::Real;

/// Uniform grid of `n_points` strictly interior points of the model domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    n_points: usize,
    half_width: T,
    spacing: T,
}

impl<T: Real> Grid<T> {
    pub fn new(params: &ModelParams<T>, n_points: usize) -> Self {
        let half_width = params.half_width();
        let spacing = (half_width + half_width) / T::of(n_points + 1);
        Self {
            n_points,
            half_width,
            spacing,
        }
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    /// `x_i = −D + i·h`, `i = 1..=N`.
    pub fn point(&self, i: usize) -> T {
        -self.half_width + T::of(i) * self.spacing
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (1..=self.n_points).map(move |i| self.point(i))
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

/// Second-order central-difference image of `−(1/ŵ²)d²/dx² + V` with
/// Dirichlet conditions at `±D`.
pub fn discretize_delta<T: Real>(
    params: &ModelParams<T>,
    potential: Potential<T>,
    n_points: usize,
) -> Result<TridiagonalOperator<T>> {
    if n_points < 16 {
        return Err(Error::GridTooSmall(n_points));
    }
    let grid = Grid::new(params, n_points);
    let wh = params.hat_omega() * grid.spacing();
    let inv = T::one() / (wh * wh);
    let diag = grid
        .points()
        .map(|x| inv + inv + potential.value_unchecked(params.hat_omega(), x))
        .collect();
    let offdiag = vec![-inv; n_points - 1];
    Ok(TridiagonalOperator { diag, offdiag })
}

impl<T: Real> TridiagonalOperator<T> {
    /// `offdiag.len()` must be `diag.len() − 1`.
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len().max(1), "off-diagonal length");
        Self { diag, offdiag }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    /// Number of eigenvalues strictly below `lambda` (negative pivots of the
    /// LDLᵀ factorization of `T − λI`).
    pub fn sturm_count(&self, lambda: T) -> usize {
        let pivmin = self.pivot_floor();
        let mut count = 0;
        let mut q = T::one();
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 {
                d - lambda
            } else {
                let e = self.offdiag[i - 1];
                d - lambda - e * e / q
            };
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    fn pivot_floor(&self) -> T {
        let emax = self
            .offdiag
            .iter()
            .fold(T::one(), |m, &e| m.max(e * e));
        T::min_positive_value() * emax
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r = r + self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r = r + self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection on the
    /// Sturm count, run until the bracket cannot be halved further.
    pub fn eigenvalue(&self, index: usize) -> Result<T> {
        if index >= self.len() {
            return Err(Error::TooManyEigenvalues {
                requested: index + 1,
                size: self.len(),
            });
        }
        let (mut lo, mut hi) = self.gershgorin();
        let slack = T::epsilon() * (lo.abs() + hi.abs()) + self.pivot_floor();
        lo = lo - slack;
        hi = hi + slack;
        let two = T::lit(2.0);
        for _ in 0..256 {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= T::lit(2.0) * T::epsilon() * lo.abs().max(hi.abs()) {
                break;
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok((lo + hi) / two)
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn eigenvalues_lowest(&self, count: usize) -> Result<Vec<T>> {
        if count > self.len() {
            return Err(Error::TooManyEigenvalues {
                requested: count,
                size: self.len(),
            });
        }
        (0..count).into_par_iter().map(|i| self.eigenvalue(i)).collect()
    }
}

/// Extrapolates two estimates with error `~ C·h^order` to `h → 0`.
pub fn richardson<T: Real>(coarse: T, fine: T, h_coarse: T, h_fine: T, order: i32) -> T {
    let a = h_coarse.powi(order);
    let b = h_fine.powi(order);
    (a * fine - b * coarse) / (a - b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let t = TridiagonalOperator::new(vec![2.0f64, 2.0], vec![-1.0]);
        let ev = t.eigenvalues_lowest(2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14);
        assert!((ev[1] - 3.0).abs() < 1e-14);
        assert_eq!(t.sturm_count(0.5), 0);
        assert_eq!(t.sturm_count(2.0), 1);
        assert_eq!(t.sturm_count(3.5), 2);
        assert!(t.eigenvalues_lowest(3).is_err());
    }

    #[test]
    fn discrete_laplacian_closed_form() {
        // 2 − 2cos(jπ/(n+1)) for the unit second-difference matrix.
        let n = 50;
        let t = TridiagonalOperator::new(vec![2.0; n], vec![-1.0; n - 1]);
        let ev = t.eigenvalues_lowest(n).unwrap();
        for (j, lam) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((lam - want).abs() < 1e-13, "j = {j}");
        }
    }

    #[test]
    fn sturm_count_matches_returned_eigenvalues() {
        let p = ModelParams::new(1.0, 1.0, 2.0).unwrap();
        let t = discretize_delta(&p, Potential::Minus(2.0), 200).unwrap();
        let ev = t.eigenvalues_lowest(8).unwrap();
        for probe in [-3.0, 0.5, 6.0, 13.0, 40.0, 70.0] {
            assert!(probe < ev[7]);
            let below = ev.iter().filter(|&&l| l < probe).count();
            assert_eq!(t.sturm_count(probe), below);
        }
    }

    #[test]
    fn free_particle_in_a_box() {
        let p = ModelParams::new(1.0, 1.0, 2.0).unwrap();
        let t = discretize_delta(&p, Potential::Free, 2000).unwrap();
        let ev = t.eigenvalues_lowest(4).unwrap();
        for (j, lam) in ev.iter().enumerate() {
            let want = ((j + 1) * (j + 1)) as f64;
            assert!((lam - want).abs() / want < 1e-5, "j = {j}: {lam}");
        }
    }

    #[test]
    fn even_potential_gives_mirror_diagonal() {
        let p = ModelParams::<f64>::new(2.0, 0.5, 3.7).unwrap();
        let t = discretize_delta(&p, Potential::Plus(3.7), 101).unwrap();
        let n = t.len();
        for i in 0..n {
            let (a, b) = (t.diag()[i], t.diag()[n - 1 - i]);
            assert!((a - b).abs() <= 1e-12 * a.abs());
        }
        assert!(t.offdiag().iter().all(|&e| e == t.offdiag()[0]));
    }

    #[test]
    fn rejects_small_grids() {
        let p = ModelParams::new(1.0, 1.0, 2.0).unwrap();
        assert_eq!(discretize_delta(&p, Potential::Minus(2.0), 15), Err(Error::GridTooSmall(15)));
    }

    #[test]
    fn grid_is_interior_and_uniform() {
        let p = ModelParams::new(1.0, 2.0, 2.0).unwrap();
        let g = Grid::new(&p, 100);
        let pts: Vec<f64> = g.points().collect();
        assert_eq!(pts.len(), 100);
        assert!(pts[0] > -p.half_width() && pts[99] < p.half_width());
        for w in pts.windows(2) {
            assert!((w[1] - w[0] - g.spacing()).abs() < 1e-14);
        }
    }

    #[test]
    fn richardson_removes_quadratic_term() {
        let f = |h: f64| 3.0 + 2.0 * h * h;
        assert!((richardson(f(0.1), f(0.05), 0.1, 0.05, 2) - 3.0).abs() < 1e-14);
    }
}
