//! Graded time meshes t_n = T (n/N)^gamma.

use crate::error::{Error, Result};
use crate::real::Real;

/// Discrete mesh on [0, T] with power-law grading toward t = 0.
///
/// grading = 1 gives a uniform mesh; larger grading clusters nodes near the
/// initial time where the solution's second derivative blows up like
/// t^{-alpha0}.
#[derive(Clone, Debug)]
pub struct TimeGrid<T> {
    horizon: T,
    count: usize,
    grading: T,
    nodes: Vec<T>,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(horizon: T, count: usize, grading: T) -> Result<Self> {
        if !(horizon > T::zero()) || !horizon.is_finite() {
            return Err(Error::invalid(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if count < 2 {
            return Err(Error::invalid(format!(
                "grid needs count >= 2, got {count}"
            )));
        }
        if !(grading >= T::one()) || !grading.is_finite() {
            return Err(Error::invalid(format!(
                "grading must be >= 1, got {grading}"
            )));
        }
        let nn = T::of_usize(count);
        let mut nodes = Vec::with_capacity(count + 1);
        nodes.push(T::zero());
        for n in 1..count {
            nodes.push(horizon * (T::of_usize(n) / nn).powf(grading));
        }
        nodes.push(horizon);
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("grid nodes must be strictly increasing"));
        }
        Ok(Self {
            horizon,
            count,
            grading,
            nodes,
        })
    }

    pub fn uniform(horizon: T, count: usize) -> Result<Self> {
        Self::new(horizon, count, T::one())
    }

    /// Default grading 2/(1 - alpha0), capped at 4.
    pub fn graded_for(horizon: T, count: usize, alpha0: T) -> Result<Self> {
        let g = (T::of(2.0) / (T::one() - alpha0)).min(T::of(4.0));
        Self::new(horizon, count, g.max(T::one()))
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn grading(&self) -> T {
        self.grading
    }

    /// Node values t_0 = 0 .. t_N = T; length count + 1.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn node(&self, n: usize) -> T {
        self.nodes[n]
    }

    /// Panel width t_n - t_{n-1} for n in 1..=count.
    pub fn step(&self, n: usize) -> T {
        self.nodes[n] - self.nodes[n - 1]
    }

    /// Trapezoid integral of nodal values over [0, T].
    pub fn trapezoid(&self, values: &[T]) -> T {
        debug_assert_eq!(values.len(), self.nodes.len());
        let half = T::of(0.5);
        let mut acc = T::zero();
        for n in 1..self.nodes.len() {
            acc += (values[n] + values[n - 1]) * half * self.step(n);
        }
        acc
    }

    /// L2(0,T) norm of a nodal function by the trapezoid rule.
    pub fn l2_norm(&self, values: &[T]) -> T {
        let sq: Vec<T> = values.iter().map(|v| *v * *v).collect();
        self.trapezoid(&sq).max(T::zero()).sqrt()
    }
}
