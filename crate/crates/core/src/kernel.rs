//! The variable-exponent memory kernel k(t) = t^{-alpha(t)} / Gamma(1 - alpha(t))
//! and its split into the constant-exponent part beta_{1-alpha0} plus a
//! milder remainder.

use crate::error::{Error, Result};
use crate::quad::{graded_breaks, GaussLegendre};
use crate::real::Real;
use crate::special::{digamma, gamma_unchecked};

/// Closed forms admitted for the exponent alpha(t). Restricting to these
/// keeps the second derivative bounded by construction.
#[derive(Clone, Debug, PartialEq)]
pub enum ExponentForm<T> {
    Constant(T),
    Affine {
        intercept: T,
        slope: T,
    },
    Poly(Vec<T>),
    Bump {
        base: T,
        amplitude: T,
        center: T,
        width: T,
    },
}

impl<T: Real> ExponentForm<T> {
    /// Parse the config syntax: `constant:0.5`, `affine:0.3,0.1`,
    /// `poly:c0,c1,...`, `bump:base,amplitude,center,width`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("exponent spec '{spec}' missing ':'")))?;
        let nums: Vec<T> = rest
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map(T::of)
                    .map_err(|_| Error::invalid(format!("bad number '{s}' in exponent spec")))
            })
            .collect::<Result<_>>()?;
        match (name.trim(), nums.len()) {
            ("constant", 1) => Ok(ExponentForm::Constant(nums[0])),
            ("affine", 2) => Ok(ExponentForm::Affine {
                intercept: nums[0],
                slope: nums[1],
            }),
            ("poly", n) if n >= 1 => Ok(ExponentForm::Poly(nums)),
            ("bump", 4) => Ok(ExponentForm::Bump {
                base: nums[0],
                amplitude: nums[1],
                center: nums[2],
                width: nums[3],
            }),
            _ => Err(Error::invalid(format!(
                "unrecognized exponent spec '{spec}'"
            ))),
        }
    }

    fn eval(&self, t: T) -> T {
        match self {
            ExponentForm::Constant(c) => *c,
            ExponentForm::Affine { intercept, slope } => *intercept + *slope * t,
            ExponentForm::Poly(c) => {
                let mut acc = T::zero();
                for ck in c.iter().rev() {
                    acc = acc * t + *ck;
                }
                acc
            }
            ExponentForm::Bump {
                base,
                amplitude,
                center,
                width,
            } => {
                let u = (t - *center) / *width;
                *base + *amplitude * (-u * u).exp()
            }
        }
    }

    fn deriv(&self, t: T) -> T {
        match self {
            ExponentForm::Constant(_) => T::zero(),
            ExponentForm::Affine { slope, .. } => *slope,
            ExponentForm::Poly(c) => {
                let mut acc = T::zero();
                for (k, ck) in c.iter().enumerate().skip(1).rev() {
                    acc = acc * t + T::of_usize(k) * *ck;
                }
                acc
            }
            ExponentForm::Bump {
                amplitude,
                center,
                width,
                ..
            } => {
                let u = (t - *center) / *width;
                *amplitude * (-u * u).exp() * (-(u + u) / *width)
            }
        }
    }
}

/// The exponent alpha(t) on [0, T], with derivative access.
#[derive(Clone, Debug)]
pub struct ExponentFunction<T> {
    form: ExponentForm<T>,
    horizon: T,
    alpha0: T,
}

impl<T: Real> ExponentFunction<T> {
    /// Validates 0 < alpha(t) < 1 by dense sampling on [0, horizon].
    pub fn new(form: ExponentForm<T>, horizon: T) -> Result<Self> {
        if !(horizon > T::zero()) || !horizon.is_finite() {
            return Err(Error::invalid(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        const SAMPLES: usize = 4096;
        for k in 0..=SAMPLES {
            let t = horizon * T::of_usize(k) / T::of_usize(SAMPLES);
            let a = form.eval(t);
            if !(a > T::zero() && a < T::one()) || !a.is_finite() {
                return Err(Error::domain(format!(
                    "exponent leaves (0,1) at t={t}: alpha={a}"
                )));
            }
        }
        let alpha0 = form.eval(T::zero());
        Ok(Self {
            form,
            horizon,
            alpha0,
        })
    }

    pub fn eval(&self, t: T) -> T {
        self.form.eval(t)
    }

    pub fn deriv(&self, t: T) -> T {
        self.form.deriv(t)
    }

    pub fn alpha0(&self) -> T {
        self.alpha0
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.form, ExponentForm::Constant(_))
    }

    pub fn form(&self) -> &ExponentForm<T> {
        &self.form
    }
}

/// The Riemann-Liouville kernel beta_mu(t) = t^{mu-1} / Gamma(mu).
pub fn beta_mu<T: Real>(mu: T, t: T) -> Result<T> {
    if !(mu > T::zero()) || !(t > T::zero()) {
        return Err(Error::domain(format!(
            "beta_mu requires mu > 0 and t > 0, got mu={mu}, t={t}"
        )));
    }
    Ok(t.powf(mu - T::one()) / gamma_unchecked(mu))
}

/// k(t) together with the split k = beta_{1-alpha0} + gtilde.
#[derive(Clone, Debug)]
pub struct SplitKernel<T> {
    exponent: ExponentFunction<T>,
    quad_nodes: usize,
    quad_tolerance: T,
    rule: GaussLegendre<T>,
}

impl<T: Real> SplitKernel<T> {
    pub fn new(
        exponent: ExponentFunction<T>,
        quad_nodes: usize,
        quad_tolerance: T,
    ) -> Result<Self> {
        if quad_nodes < 2 {
            return Err(Error::invalid("quad_nodes must be >= 2"));
        }
        if !(quad_tolerance > T::zero()) {
            return Err(Error::invalid("quad_tolerance must be > 0"));
        }
        let rule = GaussLegendre::new(quad_nodes)?;
        Ok(Self {
            exponent,
            quad_nodes,
            quad_tolerance,
            rule,
        })
    }

    /// 32 Gauss nodes per panel, 1e-10 target.
    pub fn with_defaults(exponent: ExponentFunction<T>) -> Result<Self> {
        Self::new(exponent, 32, T::of(1e-10))
    }

    pub fn exponent(&self) -> &ExponentFunction<T> {
        &self.exponent
    }

    pub fn horizon(&self) -> T {
        self.exponent.horizon()
    }

    pub fn alpha0(&self) -> T {
        self.exponent.alpha0()
    }

    pub fn quad_tolerance(&self) -> T {
        self.quad_tolerance
    }

    pub fn quad_nodes(&self) -> usize {
        self.quad_nodes
    }

    fn check_t(&self, t: T, what: &str) -> Result<()> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::domain(format!("{what} requires t > 0, got {t}")));
        }
        Ok(())
    }

    /// k(t) = t^{-alpha(t)} / Gamma(1 - alpha(t)).
    pub fn kernel_eval(&self, t: T) -> Result<T> {
        self.check_t(t, "kernel_eval")?;
        let a = self.exponent.eval(t);
        Ok(t.powf(-a) / gamma_unchecked(T::one() - a))
    }

    /// The constant-exponent singular part beta_{1-alpha0}(t).
    pub fn beta_part(&self, t: T) -> Result<T> {
        self.check_t(t, "beta_part")?;
        beta_mu(T::one() - self.alpha0(), t)
    }

    /// Integrand of the remainder in the split,
    ///   d/dz [ t^{-alpha(z)} / Gamma(1-alpha(z)) ]
    ///     = alpha'(z) t^{-alpha(z)} (psi(1-alpha(z)) - ln t) / Gamma(1-alpha(z)),
    /// written out via the chain rule since only the integral form is given.
    fn gtilde_integrand(&self, z: T, ln_t: T, t: T) -> T {
        let a = self.exponent.eval(z);
        let da = self.exponent.deriv(z);
        if da == T::zero() {
            return T::zero();
        }
        let one_minus = T::one() - a;
        let psi = digamma(one_minus).unwrap_or_else(|_| T::nan());
        da * t.powf(-a) * (psi - ln_t) / gamma_unchecked(one_minus)
    }

    /// Remainder gtilde(t) = k(t) - beta_{1-alpha0}(t), evaluated as the
    /// z-integral of `gtilde_integrand` by composite Gauss quadrature on
    /// panels geometrically refined toward z = 0, with a doubled-panel
    /// error estimate.
    pub fn gtilde(&self, t: T) -> Result<T> {
        self.check_t(t, "gtilde")?;
        if self.exponent.is_constant() {
            return Ok(T::zero());
        }
        let ln_t = t.ln();
        let coarse = self.gtilde_quad(t, ln_t, 10)?;
        let fine = self.gtilde_quad(t, ln_t, 20)?;
        let est = (fine - coarse).abs();
        if est > self.quad_tolerance {
            return Err(Error::Accuracy {
                context: "gtilde quadrature",
                achieved: est.as_f64(),
                requested: self.quad_tolerance.as_f64(),
            });
        }
        Ok(fine)
    }

    fn gtilde_quad(&self, t: T, ln_t: T, levels: usize) -> Result<T> {
        let breaks = graded_breaks(t, T::of(0.5), levels);
        let val = self
            .rule
            .integrate_panels(&breaks, |z| self.gtilde_integrand(z, ln_t, t));
        if !val.is_finite() {
            return Err(Error::Accuracy {
                context: "gtilde quadrature",
                achieved: f64::INFINITY,
                requested: self.quad_tolerance.as_f64(),
            });
        }
        Ok(val)
    }

    /// Fast difference form of the remainder, k(t) - beta_{1-alpha0}(t).
    /// Identical to `gtilde` up to quadrature error; used in the inner
    /// loops of the solvers where millions of evaluations occur.
    pub fn gtilde_direct(&self, t: T) -> Result<T> {
        if self.exponent.is_constant() {
            self.check_t(t, "gtilde_direct")?;
            return Ok(T::zero());
        }
        Ok(self.kernel_eval(t)? - self.beta_part(t)?)
    }

    /// d gtilde / dt from the analytic derivatives
    ///   k'(t) = k(t) (-alpha'(t) ln t - alpha(t)/t + alpha'(t) psi(1-alpha(t))),
    ///   beta'_{1-alpha0}(t) = -alpha0 t^{-alpha0-1} / Gamma(1-alpha0).
    pub fn gtilde_prime(&self, t: T) -> Result<T> {
        self.check_t(t, "gtilde_prime")?;
        if self.exponent.is_constant() {
            return Ok(T::zero());
        }
        let a = self.exponent.eval(t);
        let da = self.exponent.deriv(t);
        let k = self.kernel_eval(t)?;
        let kp = k * (-da * t.ln() - a / t + da * digamma(T::one() - a)?);
        let a0 = self.alpha0();
        let bp = -a0 * t.powf(-a0 - T::one()) / gamma_unchecked(T::one() - a0);
        Ok(kp - bp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use approx::assert_relative_eq;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    fn constant_kernel(alpha: f64) -> SplitKernel<f64> {
        let e = ExponentFunction::new(ExponentForm::Constant(alpha), 4.0).unwrap();
        SplitKernel::with_defaults(e).unwrap()
    }

    fn affine_kernel(a: f64, b: f64, horizon: f64) -> SplitKernel<f64> {
        let e = ExponentFunction::new(
            ExponentForm::Affine {
                intercept: a,
                slope: b,
            },
            horizon,
        )
        .unwrap();
        SplitKernel::with_defaults(e).unwrap()
    }

    #[test]
    fn kernel_closed_forms() {
        let k = constant_kernel(0.5);
        assert_relative_eq!(
            k.kernel_eval(1.0).unwrap(),
            1.0 / SQRT_PI,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            k.kernel_eval(4.0).unwrap(),
            4.0f64.powf(-0.5) / SQRT_PI,
            max_relative = 1e-13
        );
        // alpha(t) = 0.3 + 0.1 t at t = 1: t^{-alpha} = 1, so k = 1/Gamma(0.6)
        let ka = affine_kernel(0.3, 0.1, 2.0);
        assert_relative_eq!(
            ka.kernel_eval(1.0).unwrap(),
            1.0 / gamma(0.6f64).unwrap(),
            max_relative = 1e-13
        );
        assert!(k.kernel_eval(0.0).is_err());
        assert!(k.kernel_eval(-1.0).is_err());
    }

    #[test]
    fn beta_mu_closed_forms() {
        assert_relative_eq!(beta_mu(1.0f64, 0.37).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(
            beta_mu(0.5f64, 1.0).unwrap(),
            1.0 / SQRT_PI,
            max_relative = 1e-13
        );
        assert_relative_eq!(beta_mu(2.0f64, 3.0).unwrap(), 3.0, max_relative = 1e-13);
        assert!(beta_mu(0.0f64, 1.0).is_err());
        assert!(beta_mu(1.0f64, 0.0).is_err());
    }

    #[test]
    fn gtilde_vanishes_for_constant_exponent() {
        let k = constant_kernel(0.5);
        for &t in &[1e-6, 0.1, 1.0, 3.7] {
            assert_eq!(k.gtilde(t).unwrap(), 0.0);
            assert_eq!(k.gtilde_prime(t).unwrap(), 0.0);
            // exact degeneration k = beta_{1-alpha}
            assert!(
                (k.kernel_eval(t).unwrap() - k.beta_part(t).unwrap()).abs()
                    <= 1e-14 * k.kernel_eval(t).unwrap().abs()
            );
        }
    }

    #[test]
    fn gtilde_matches_difference_identity() {
        // the quadrature and the closed difference k - beta agree
        let k = affine_kernel(0.5, 0.2, 1.0);
        for &t in &[1e-5, 1e-3, 0.1, 0.5, 1.0] {
            let quad = k.gtilde(t).unwrap();
            let diff = k.kernel_eval(t).unwrap() - k.beta_part(t).unwrap();
            assert!(
                (quad - diff).abs() <= 1e-10 + 1e-8 * diff.abs(),
                "t={t}: quad={quad} diff={diff}"
            );
        }
    }

    #[test]
    fn gtilde_refinement_oracle() {
        // adaptive-refinement oracle: double panel counts until two
        // successive composite values agree to 1e-10
        let k = affine_kernel(0.5, 0.2, 1.0);
        let t = 0.5f64;
        let ln_t = t.ln();
        let mut prev = k.gtilde_quad(t, ln_t, 4).unwrap();
        let mut converged = None;
        for levels in [8, 16, 32, 64] {
            let cur = k.gtilde_quad(t, ln_t, levels).unwrap();
            if (cur - prev).abs() <= 1e-10 {
                converged = Some(cur);
                break;
            }
            prev = cur;
        }
        let oracle = converged.expect("quadrature oracle converged");
        assert!((k.gtilde(t).unwrap() - oracle).abs() <= 1e-10);
    }

    #[test]
    fn gtilde_prime_against_finite_differences() {
        // central differences of gtilde with one Richardson sweep
        let cases = [(0.5, 0.2, 0.5f64), (0.3, 0.1, 1.0f64)];
        for (a, b, t) in cases {
            let k = affine_kernel(a, b, 2.0);
            let fd = |h: f64| (k.gtilde(t + h).unwrap() - k.gtilde(t - h).unwrap()) / (2.0 * h);
            let h = 1e-3;
            let d1 = fd(h);
            let d2 = fd(h / 2.0);
            let richardson = (4.0 * d2 - d1) / 3.0;
            let exact = k.gtilde_prime(t).unwrap();
            assert!(
                (exact - richardson).abs() <= 1e-7,
                "alpha={a}+{b}t, t={t}: analytic={exact}, fd={richardson}"
            );
        }
    }

    #[test]
    fn split_consistency_on_graded_grid() {
        for spec in ["affine:0.5,0.2", "poly:0.3,0.1,0.05"] {
            let form = ExponentForm::parse(spec).unwrap();
            let e = ExponentFunction::new(form, 1.0).unwrap();
            let k = SplitKernel::with_defaults(e).unwrap();
            for j in 1..=200 {
                let t = (j as f64 / 200.0).powi(2);
                let lhs = k.beta_part(t).unwrap() + k.gtilde(t).unwrap();
                let rhs = k.kernel_eval(t).unwrap();
                assert!((lhs - rhs).abs() <= 1e-8, "{spec} at t={t}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn growth_bound_ratios_are_tame() {
        // |gtilde| / (t^{1-a0}(1+|ln t|)) and |gtilde'| / (t^{-a0}(1+|ln t|))
        let k = affine_kernel(0.5, 0.2, 1.0);
        let a0 = k.alpha0();
        let mut r0 = Vec::new();
        let mut r1 = Vec::new();
        for j in 0..=120 {
            let t = 1e-6f64.powf(1.0 - j as f64 / 120.0); // log-spaced [1e-6, 1]
            let env = 1.0 + t.ln().abs();
            r0.push(k.gtilde(t).unwrap().abs() / (t.powf(1.0 - a0) * env));
            r1.push(k.gtilde_prime(t).unwrap().abs() / (t.powf(-a0) * env));
        }
        for r in [r0, r1] {
            let mut sorted = r.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let median = sorted[sorted.len() / 2];
            let max = *sorted.last().unwrap();
            assert!(max <= 10.0 * median, "max={max}, median={median}");
        }
    }

    #[test]
    fn exponent_validation_and_parsing() {
        assert!(ExponentFunction::new(
            ExponentForm::Affine {
                intercept: 0.5,
                slope: 0.5
            },
            2.0
        )
        .is_err()); // reaches 1.5 > 1 at t=2
        assert!(ExponentFunction::new(ExponentForm::Constant(0.0), 1.0).is_err());
        assert!(ExponentFunction::new(ExponentForm::Constant(1.0), 1.0).is_err());

        let p = ExponentForm::<f64>::parse("affine:0.3,0.1").unwrap();
        assert_eq!(
            p,
            ExponentForm::Affine {
                intercept: 0.3,
                slope: 0.1
            }
        );
        let p2 = ExponentForm::<f64>::parse("poly: 0.3, 0.1, 0.05").unwrap();
        assert_eq!(p2, ExponentForm::Poly(vec![0.3, 0.1, 0.05]));
        assert!(ExponentForm::<f64>::parse("affine:0.3").is_err());
        assert!(ExponentForm::<f64>::parse("wavelet:1,2").is_err());
        assert!(ExponentForm::<f64>::parse("poly:a,b").is_err());

        // bump form evaluates and differentiates consistently
        let bump = ExponentForm::Bump {
            base: 0.3,
            amplitude: 0.2,
            center: 0.5,
            width: 0.2,
        };
        let e = ExponentFunction::new(bump, 1.0).unwrap();
        let h = 1e-6;
        let fd = (e.eval(0.4 + h) - e.eval(0.4 - h)) / (2.0 * h);
        assert_relative_eq!(e.deriv(0.4), fd, max_relative = 1e-8);
    }

    #[test]
    fn alpha0_is_exact_value_at_zero() {
        let e = ExponentFunction::new(ExponentForm::Poly(vec![0.37, 0.05, -0.01]), 1.0).unwrap();
        assert_eq!(e.alpha0(), 0.37);
        assert_eq!(e.alpha0(), e.eval(0.0));
    }
}
