//! Gauss-Legendre quadrature with composite and graded-panel helpers.

use crate::error::{Error, Result};
use crate::real::Real;

/// Gauss-Legendre rule of given order on [-1, 1].
///
/// Nodes are found by Newton iteration on the Legendre recurrence; at f64
/// this reproduces tabulated nodes to machine precision for any order used
/// here, without shipping tables.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("Gauss-Legendre order must be >= 1"));
        }
        let n = order;
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        for i in 0..n {
            // Chebyshev-based initial guess
            let mut x = T::of((std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos());
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= T::epsilon() * T::of(4.0) {
                    break;
                }
            }
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        }
        Ok(Self { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// k-th (node, weight) pair on the reference interval [-1, 1].
    pub fn node_weight(&self, k: usize) -> (T, T) {
        (self.nodes[k], self.weights[k])
    }

    /// Integral of `f` over [a, b].
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = T::of(0.5);
        let mid = (a + b) * half;
        let rad = (b - a) * half;
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += *w * f(mid + rad * *x);
        }
        acc * rad
    }

    /// Integral over consecutive panels given by `breaks` (ascending).
    pub fn integrate_panels<F: FnMut(T) -> T>(&self, breaks: &[T], mut f: F) -> T {
        let mut acc = T::zero();
        for w in breaks.windows(2) {
            acc += self.integrate(w[0], w[1], &mut f);
        }
        acc
    }
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_and_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kk = T::of_usize(k);
        let p2 = ((T::of(2.0) * kk - T::one()) * x * p1 - (kk - T::one()) * p0) / kk;
        p0 = p1;
        p1 = p2;
    }
    let d = T::of_usize(n) * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Panel breakpoints on [0, b] geometrically refined toward 0:
/// 0, b r^{levels}, ..., b r, b.
pub fn graded_breaks<T: Real>(b: T, ratio: T, levels: usize) -> Vec<T> {
    let mut breaks = Vec::with_capacity(levels + 2);
    breaks.push(T::zero());
    for k in (0..=levels).rev() {
        breaks.push(b * ratio.powi(k as i32));
    }
    breaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn nodes_match_known_values() {
        // 5-point rule nodes and weights (Abramowitz & Stegun 25.4.30)
        let rule = GaussLegendre::<f64>::new(5).unwrap();
        let want_nodes = [
            -0.906179845938664,
            -0.5384693101056831,
            0.0,
            0.5384693101056831,
            0.906179845938664,
        ];
        let want_weights = [
            0.23692688505618908,
            0.47862867049936647,
            0.5688888888888889,
            0.47862867049936647,
            0.23692688505618908,
        ];
        for i in 0..5 {
            assert_relative_eq!(rule.nodes[i], want_nodes[i], epsilon = 1e-14);
            assert_relative_eq!(rule.weights[i], want_weights[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let rule = GaussLegendre::<f64>::new(8).unwrap();
        // degree 15 polynomial integrated exactly by an 8-point rule
        let val = rule.integrate(-1.0, 2.0, |x| x.powi(15) - 3.0 * x.powi(7) + x);
        let exact =
            (2f64.powi(16) - 1.0) / 16.0 - 3.0 * (2f64.powi(8) - 1.0) / 8.0 + (4.0 - 1.0) / 2.0;
        assert_relative_eq!(val, exact, max_relative = 1e-13);
    }

    #[test]
    fn composite_integrates_transcendental() {
        let rule = GaussLegendre::<f64>::new(16).unwrap();
        let breaks: Vec<f64> = (0..=8).map(|k| k as f64 / 8.0).collect();
        let val = rule.integrate_panels(&breaks, |x| (3.0 * x).exp());
        assert_relative_eq!(val, (3f64.exp() - 1.0) / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn graded_breaks_shape() {
        let b = graded_breaks(1.0f64, 0.25, 3);
        assert_eq!(b.len(), 5);
        assert_eq!(b[0], 0.0);
        assert_relative_eq!(b[1], 0.015625);
        assert_eq!(*b.last().unwrap(), 1.0);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }
}
