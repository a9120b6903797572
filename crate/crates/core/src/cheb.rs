//! Chebyshev interpolation tables for expensive smooth scalar functions.
//!
//! The per-mode convolution weights need millions of Mittag-Leffler kernel
//! values; a piecewise Chebyshev fit brings each evaluation down to a
//! Clenshaw recurrence while keeping near machine accuracy.

use crate::error::{Error, Result};
use crate::real::Real;

/// Single Chebyshev series on [a, b].
#[derive(Clone, Debug)]
pub struct ChebSeries<T> {
    a: T,
    b: T,
    coef: Vec<T>,
}

impl<T: Real> ChebSeries<T> {
    /// Fit `f` at the Chebyshev points of the first kind.
    pub fn fit<F: FnMut(T) -> Result<T>>(a: T, b: T, degree: usize, mut f: F) -> Result<Self> {
        if !(b > a) {
            return Err(Error::invalid("ChebSeries requires b > a"));
        }
        let n = degree + 1;
        let half = T::of(0.5);
        let mid = (a + b) * half;
        let rad = (b - a) * half;
        let mut vals = Vec::with_capacity(n);
        for k in 0..n {
            let theta = std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
            let x = mid + rad * T::of(theta.cos());
            vals.push(f(x)?);
        }
        let mut coef = vec![T::zero(); n];
        for (j, c) in coef.iter_mut().enumerate() {
            let mut s = T::zero();
            for (k, v) in vals.iter().enumerate() {
                let theta = std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
                s += *v * T::of((j as f64 * theta).cos());
            }
            *c = s * T::of(2.0) / T::of_usize(n);
        }
        coef[0] *= half;
        Ok(Self { a, b, coef })
    }

    /// Clenshaw evaluation; `x` must lie in [a, b].
    pub fn eval(&self, x: T) -> T {
        let half = T::of(0.5);
        let u = (x - (self.a + self.b) * half) / ((self.b - self.a) * half);
        let two_u = u + u;
        let mut b1 = T::zero();
        let mut b2 = T::zero();
        for c in self.coef.iter().skip(1).rev() {
            let t = two_u * b1 - b2 + *c;
            b2 = b1;
            b1 = t;
        }
        u * b1 - b2 + self.coef[0]
    }
}

/// Piecewise Chebyshev table on [0, xmax]: a leading interval [0, x1] and
/// geometrically growing intervals up to xmax.
#[derive(Clone, Debug)]
pub struct ChebTable<T> {
    pieces: Vec<ChebSeries<T>>,
    uppers: Vec<T>,
    xmax: T,
}

impl<T: Real> ChebTable<T> {
    pub fn fit<F: FnMut(T) -> Result<T>>(
        xmax: T,
        first: T,
        factor: T,
        degree: usize,
        mut f: F,
    ) -> Result<Self> {
        if !(xmax > T::zero()) || !(first > T::zero()) || !(factor > T::one()) {
            return Err(Error::invalid(
                "ChebTable requires xmax, first > 0 and factor > 1",
            ));
        }
        let mut pieces = Vec::new();
        let mut uppers = Vec::new();
        let mut lo = T::zero();
        let mut hi = first.min(xmax);
        loop {
            pieces.push(ChebSeries::fit(lo, hi, degree, &mut f)?);
            uppers.push(hi);
            if hi >= xmax {
                break;
            }
            lo = hi;
            hi = (hi * factor).min(xmax);
        }
        Ok(Self {
            pieces,
            uppers,
            xmax,
        })
    }

    pub fn xmax(&self) -> T {
        self.xmax
    }

    /// Evaluate the table; `x` is clamped to [0, xmax].
    pub fn eval(&self, x: T) -> T {
        let x = x.max(T::zero()).min(self.xmax);
        let idx = match self.uppers.iter().position(|u| x <= *u) {
            Some(i) => i,
            None => self.pieces.len() - 1,
        };
        self.pieces[idx].eval(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_smooth_function() {
        let table =
            ChebTable::fit(100.0f64, 1.0, 4.0, 32, |x| Ok((-x).exp() + 1.0 / (1.0 + x))).unwrap();
        let mut x = 0.0f64;
        while x <= 100.0 {
            let want = (-x).exp() + 1.0 / (1.0 + x);
            assert!((table.eval(x) - want).abs() < 1e-12, "x={x}");
            x += 0.037 + x * 0.03;
        }
    }

    #[test]
    fn single_series_endpoint_accuracy() {
        let s = ChebSeries::fit(0.0f64, 2.0, 20, |x| Ok(x.sin())).unwrap();
        assert!((s.eval(0.0) - 0.0f64.sin()).abs() < 1e-14);
        assert!((s.eval(2.0) - 2.0f64.sin()).abs() < 1e-14);
        assert!((s.eval(1.3) - 1.3f64.sin()).abs() < 1e-14);
    }
}
