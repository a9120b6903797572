//! Property tests for the structural invariants: parameterized identities
//! that must hold across the whole admissible input range, not just at
//! hand-picked points.

use std::sync::Arc;

use proptest::prelude::*;

use vexmem::kernel::{ExponentForm, ExponentFunction};
use vexmem::special::{gamma, mittag_leffler, MLParams};
use vexmem::{weighted_norm, SplitKernel, TimeGrid};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// E_{alpha,beta}(0) = 1/Gamma(beta) across the admissible corner of
    /// parameter space.
    #[test]
    fn ml_at_zero_is_recip_gamma(alpha in 0.05f64..2.0, beta in 0.05f64..4.0) {
        let p = MLParams::new(alpha, beta, 1e-12).unwrap();
        let got = mittag_leffler(&p, 0.0).unwrap();
        let want = 1.0 / gamma(beta).unwrap();
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    /// Gamma recurrence on arbitrary positive arguments.
    #[test]
    fn gamma_recurrence(x in 0.05f64..80.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
    }

    /// Graded grids are strictly increasing, anchored, and nested under
    /// doubling of the node count.
    #[test]
    fn graded_grid_nested(count in 2usize..64, grading in 1.0f64..4.0, horizon in 0.1f64..10.0) {
        let g = TimeGrid::new(horizon, count, grading).unwrap();
        prop_assert_eq!(g.node(0), 0.0);
        prop_assert!((g.node(count) - horizon).abs() <= 1e-14 * horizon);
        prop_assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
        let fine = TimeGrid::new(horizon, 2 * count, grading).unwrap();
        for n in 0..=count {
            prop_assert!((fine.node(2 * n) - g.node(n)).abs() <= 1e-12 * horizon.max(1.0));
        }
    }

    /// The sigma-weighted norm of v(t) = c t has the closed form
    /// |c| sqrt((1 - e^{-2 sigma T})/(2 sigma)).
    #[test]
    fn weighted_norm_of_linear(sigma in 0.0f64..20.0, horizon in 0.2f64..3.0, c in -5.0f64..5.0) {
        let grid = TimeGrid::uniform(horizon, 4096).unwrap();
        let v: Vec<f64> = grid.nodes().iter().map(|t| c * t).collect();
        let got = weighted_norm(&v, &grid, sigma);
        let want = if sigma == 0.0 {
            c.abs() * horizon.sqrt()
        } else {
            c.abs() * ((1.0 - (-2.0 * sigma * horizon).exp()) / (2.0 * sigma)).sqrt()
        };
        prop_assert!(
            (got - want).abs() <= 1e-4 * want.max(1e-6) + 1e-12,
            "sigma={} T={} c={}: {} vs {}", sigma, horizon, c, got, want
        );
    }

    /// Split consistency at arbitrary times for an arbitrary in-range
    /// affine exponent: beta part plus remainder reproduces the kernel.
    #[test]
    fn kernel_split_holds(
        intercept in 0.15f64..0.7,
        slope in -0.1f64..0.25,
        t in 1e-6f64..1.0,
    ) {
        let form = ExponentForm::Affine { intercept, slope };
        let e = ExponentFunction::new(form, 1.0).unwrap();
        let k = SplitKernel::with_defaults(e).unwrap();
        let lhs = k.beta_part(t).unwrap() + k.gtilde(t).unwrap();
        let rhs = k.kernel_eval(t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 + 1e-8 * rhs.abs());
    }

    /// Oracle solution of u' = f (lambda = 0) integrates the forcing:
    /// with f = c, u(t) = u0 + c t at every node.
    #[test]
    fn oracle_pure_integration(c in -3.0f64..3.0, u0 in -2.0f64..2.0, grading in 1.0f64..4.0) {
        let e = ExponentFunction::new(ExponentForm::Constant(0.5), 1.0).unwrap();
        let kernel = Arc::new(SplitKernel::with_defaults(e).unwrap());
        let grid = TimeGrid::new(1.0, 48, grading).unwrap();
        let p = vexmem::ModeProblem::new(0.0, u0, vexmem::ModeForcing::constant(c), kernel)
            .unwrap();
        let sol = vexmem::volterra_oracle_solve(&p, &grid).unwrap();
        for (n, &t) in grid.nodes().iter().enumerate() {
            prop_assert!((sol.values[n] - (u0 + c * t)).abs() <= 1e-10);
        }
    }
}

/// The generic scalar layer really is generic: the pure-integration case
/// runs in f32 at f32-level accuracy.
#[test]
fn f32_instantiation_end_to_end() {
    let e = ExponentFunction::new(ExponentForm::Constant(0.5f32), 1.0).unwrap();
    let kernel = Arc::new(SplitKernel::new(e, 16, 1e-3f32).unwrap());
    let grid = TimeGrid::<f32>::new(1.0, 32, 2.0).unwrap();
    let p =
        vexmem::ModeProblem::new(0.0f32, 1.0, vexmem::ModeForcing::constant(2.0), kernel).unwrap();
    let sol = vexmem::volterra_oracle_solve(&p, &grid).unwrap();
    for (n, &t) in grid.nodes().iter().enumerate() {
        assert!((sol.values[n] - (1.0 + 2.0 * t)).abs() <= 1e-4);
    }
}
