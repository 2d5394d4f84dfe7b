use crate::model::ModelParams;
use crate::scalar::Real;

/// Nodes per panel.
pub const GAUSS_ORDER: usize = 16;

/// Panel count used for scalar products over the model domain.
pub const DEFAULT_PANELS: usize = 64;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Builds the `order`-point rule by Newton iteration on `P_order`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::of(n);
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess for the i-th largest root.
            let theta = T::PI() * (T::of(i) + T::lit(0.75)) / (nf + T::lit(0.5));
            let mut x = theta.cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * T::lit(4.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Composite rule over `[a, b]` split into `panels` equal panels.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T, panels: usize) -> T {
        let panels = panels.max(1);
        let width = (b - a) / T::of(panels);
        let half = width / T::lit(2.0);
        let mut total = T::zero();
        for p in 0..panels {
            let mid = a + width * (T::of(p) + T::lit(0.5));
            let mut panel = T::zero();
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                panel = panel + w * f(mid + half * x);
            }
            total = total + panel * half;
        }
        total
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for j in 2..=n {
        let jf = T::of(j);
        let p2 = ((T::lit(2.0) * jf - T::one()) * x * p1 - (jf - T::one()) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let d = T::of(n) * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Composite 16-point Gauss-Legendre integral of `f` over `[a, b]`.
pub fn integrate<T: Real, F: FnMut(T) -> T>(f: F, a: T, b: T, panels: usize) -> T {
    GaussLegendre::new(GAUSS_ORDER).integrate(f, a, b, panels)
}

/// `∫_D f(x) dx` over the open model domain; `f` is only sampled at interior nodes.
pub fn integrate_over_domain<T: Real, F: FnMut(T) -> T>(params: &ModelParams<T>, f: F, panels: usize) -> T {
    let d = params.half_width();
    integrate(f, -d, d, panels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_low_degree() {
        let rule = GaussLegendre::<f64>::new(GAUSS_ORDER);
        let wsum: f64 = rule.weights().iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // Exact through degree 31.
        for deg in 0..32 {
            let got = rule.integrate(|x| x.powi(deg), -1.0, 1.0, 1);
            let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((got - want).abs() < 1e-14, "degree {deg}");
        }
        assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn odd_order_has_center_node() {
        let rule = GaussLegendre::<f64>::new(5);
        assert_eq!(rule.nodes()[2], 0.0);
        assert!((rule.weights()[2] - 128.0 / 225.0).abs() < 1e-15);
    }

    #[test]
    fn simple_integrals() {
        assert!((integrate(|x: f64| x * x, 0.0, 1.0, 1) - 1.0 / 3.0).abs() < 1e-15);
        let got = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 8);
        assert!((got - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_integrand_over_domain_vanishes() {
        let p = ModelParams::new(1.0, 1.0, 2.0).unwrap();
        let got = integrate_over_domain(&p, |x: f64| x * (p.hat_omega() * x).cos().powi(3), DEFAULT_PANELS);
        assert!(got.abs() <= 1e-14);
        let got = integrate_over_domain(&p, |x: f64| (p.hat_omega() * x).sin().powi(5), DEFAULT_PANELS);
        assert!(got.abs() <= 1e-14);
    }

    #[test]
    fn single_precision_rule() {
        let got = integrate(|x: f32| x * x, 0.0, 1.0, 4);
        assert!((got - 1.0 / 3.0).abs() < 1e-6);
    }
}
