//! Product-integration weights for Volterra convolutions on graded meshes.
//!
//! A convolution (k * u)(t_n) is discretized by interpolating u piecewise
//! linearly and integrating the kernel exactly (weakly singular kernels)
//! or by panel-wise Gauss quadrature (bounded kernels) against the local
//! hat basis. The weights form a lower-triangular operator that is built
//! once per (kernel, grid) pair and reused across modes and iterations;
//! pointwise quadrature of the singular kernel would fail on the panel
//! touching the singularity.

use crate::error::Result;
use crate::grid::TimeGrid;
use crate::quad::{graded_breaks, GaussLegendre};
use crate::real::Real;
use crate::special::gamma;

/// Lower-triangular product-integration weights.
///
/// Entry (n, j) holds the pair of coefficients multiplying u_{j-1} and u_j
/// in the approximation of (k * u)(t_n); rows are packed contiguously.
#[derive(Clone, Debug)]
pub struct ConvolutionWeights<T> {
    count: usize,
    w: Vec<(T, T)>,
}

fn row_offset(n: usize) -> usize {
    n * (n - 1) / 2
}

impl<T: Real> ConvolutionWeights<T> {
    /// All-zero operator on the given grid.
    pub fn zeros(grid: &TimeGrid<T>) -> Self {
        let count = grid.count();
        Self {
            count,
            w: vec![(T::zero(), T::zero()); row_offset(count + 1)],
        }
    }

    /// Exact weights for the weakly singular kernel
    /// beta_mu(t) = t^{mu-1}/Gamma(mu) against the piecewise-linear basis.
    pub fn beta_weights(mu: T, grid: &TimeGrid<T>) -> Result<Self> {
        let g_mu = gamma(mu)?;
        let count = grid.count();
        let nodes = grid.nodes();
        let mut w = Vec::with_capacity(row_offset(count + 1));
        for n in 1..=count {
            let tn = nodes[n];
            for j in 1..=n {
                let a_end = tn - nodes[j]; // lower tau bound
                let b_end = tn - nodes[j - 1]; // upper tau bound
                let h = nodes[j] - nodes[j - 1];
                // I0 = int_A^B tau^{mu-1}/Gamma(mu), I1 = int_A^B tau^mu/Gamma(mu)
                let i0 = pow_diff(b_end, a_end, mu) / (g_mu * mu);
                let i1 = pow_diff(b_end, a_end, mu + T::one()) / (g_mu * (mu + T::one()));
                let ca = (i1 - a_end * i0) / h;
                let cb = (b_end * i0 - i1) / h;
                w.push((ca, cb));
            }
        }
        Ok(Self { count, w })
    }

    /// Quadrature weights for a bounded kernel `kern(tau)`; `kern` must be
    /// finite on (0, T]. With `refine_origin` the panel touching tau = 0 is
    /// subdivided geometrically, which pays off for kernels whose first
    /// derivative is singular at the origin.
    pub fn smooth<F: Fn(T) -> T>(
        kern: F,
        grid: &TimeGrid<T>,
        order: usize,
        refine_origin: bool,
    ) -> Result<Self> {
        let rule = GaussLegendre::new(order)?;
        let count = grid.count();
        let nodes = grid.nodes();
        let mut w = Vec::with_capacity(row_offset(count + 1));
        for n in 1..=count {
            let tn = nodes[n];
            for j in 1..=n {
                let a_end = tn - nodes[j];
                let b_end = tn - nodes[j - 1];
                let h = nodes[j] - nodes[j - 1];
                let mut ca = T::zero();
                let mut cb = T::zero();
                let mut accumulate = |lo: T, hi: T| {
                    ca += rule.integrate(lo, hi, |tau| kern(tau) * (tau - a_end)) / h;
                    cb += rule.integrate(lo, hi, |tau| kern(tau) * (b_end - tau)) / h;
                };
                if j == n && refine_origin {
                    let breaks = graded_breaks(b_end, T::of(0.25), 6);
                    for pair in breaks.windows(2) {
                        accumulate(pair[0], pair[1]);
                    }
                } else {
                    accumulate(a_end, b_end);
                }
                w.push((ca, cb));
            }
        }
        Ok(Self { count, w })
    }

    /// Pairwise sum with another operator on the same grid.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.count, other.count);
        let w = self
            .w
            .iter()
            .zip(&other.w)
            .map(|(a, b)| (a.0 + b.0, a.1 + b.1))
            .collect();
        Self {
            count: self.count,
            w,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Coefficient of the unknown u_n in (k * u)(t_n); needed by the
    /// implicit time stepper.
    pub fn diagonal(&self, n: usize) -> T {
        self.w[row_offset(n) + n - 1].1
    }

    /// (k * u)(t_n) using u_0..u_n, with u_n's own contribution included;
    /// the integral over an empty interval (n = 0) is zero.
    pub fn apply_at(&self, u: &[T], n: usize) -> T {
        if n == 0 {
            return T::zero();
        }
        let base = row_offset(n);
        let mut acc = T::zero();
        for j in 1..=n {
            let (ca, cb) = self.w[base + j - 1];
            acc = acc + ca * u[j - 1] + cb * u[j];
        }
        acc
    }

    /// Convolution contribution at t_n that excludes the unknown u_n.
    pub fn apply_at_known(&self, u: &[T], n: usize) -> T {
        if n == 0 {
            return T::zero();
        }
        let base = row_offset(n);
        let mut acc = T::zero();
        for j in 1..n {
            let (ca, cb) = self.w[base + j - 1];
            acc = acc + ca * u[j - 1] + cb * u[j];
        }
        acc + self.w[base + n - 1].0 * u[n - 1]
    }

    /// Full discrete convolution; entry 0 is zero.
    pub fn apply(&self, u: &[T]) -> Vec<T> {
        debug_assert_eq!(u.len(), self.count + 1);
        let mut out = Vec::with_capacity(self.count + 1);
        out.push(T::zero());
        for n in 1..=self.count {
            out.push(self.apply_at(u, n));
        }
        out
    }
}

/// b^p - a^p for 0 <= a <= b without cancellation when a ~ b.
fn pow_diff<T: Real>(b: T, a: T, p: T) -> T {
    if a == T::zero() {
        b.powf(p)
    } else {
        a.powf(p) * (p * ((b - a) / a).ln_1p()).exp_m1()
    }
}
