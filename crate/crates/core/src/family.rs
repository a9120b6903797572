//! Seeded random problem families for the stability/regularity ratio
//! diagnostics. Data decay rates are chosen so the initial value lies in
//! the H-check-4 class and the forcing in H^1(H-check-2), mode-wise:
//! u_{0,i} = lambda_i^{-2.5} xi_i and forcing amplitudes lambda_i^{-1.75},
//! with all draws uniform in [-1, 1] from a ChaCha stream.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::SplitKernel;
use crate::mode::{ModeForcing, ModeProblem};
use crate::real::Real;
use crate::spectral::{eigenpairs, FieldForcing, FieldProblem, InitialData, SpectralDomain};

fn random_forcing<T: Real>(rng: &mut ChaCha8Rng, amplitude: f64, horizon: f64) -> ModeForcing<T> {
    let b: f64 = rng.gen_range(-1.0..1.0);
    let omega: f64 = rng.gen_range(0.5..3.0) / horizon;
    let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (a, b, w, ph) = (T::of(amplitude), T::of(b), T::of(omega), T::of(phase));
    ModeForcing::from_parts(
        move |t| a * (T::one() + b * t + (w * t + ph).sin()),
        move |t| a * (b + w * (w * t + ph).cos()),
    )
}

/// Field problems with H-check-4 initial data and H^1(H-check-2) forcing.
pub fn random_field_problems<T: Real>(
    domain: &SpectralDomain<T>,
    kernel: &Arc<SplitKernel<T>>,
    count: usize,
    seed: u64,
) -> crate::error::Result<Vec<FieldProblem<T>>> {
    let modes = eigenpairs(domain)?;
    let horizon = kernel.horizon().as_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut u0 = Vec::with_capacity(modes.len());
        let mut forcings = Vec::with_capacity(modes.len());
        for m in &modes {
            let xi: f64 = rng.gen_range(-1.0..1.0);
            u0.push(m.lambda.powf(T::of(-2.5)) * T::of(xi));
            let eta: f64 = rng.gen_range(-1.0..1.0);
            let amp = m.lambda.as_f64().powf(-1.75) * eta;
            forcings.push(random_forcing(&mut rng, amp, horizon));
        }
        out.push(FieldProblem::new(
            domain.clone(),
            kernel.clone(),
            InitialData::Coefficients(u0),
            FieldForcing::Modal(forcings),
        )?);
    }
    Ok(out)
}

/// Single-mode problems with log-uniform stiffness, for mode-level
/// stability sweeps.
pub fn random_mode_problems<T: Real>(
    kernel: &Arc<SplitKernel<T>>,
    count: usize,
    seed: u64,
) -> Vec<ModeProblem<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let horizon = kernel.horizon().as_f64();
    (0..count)
        .map(|_| {
            let lambda = 10f64.powf(rng.gen_range(-0.3..2.3));
            let u0: f64 = rng.gen_range(-1.0..1.0);
            let amp: f64 = rng.gen_range(0.2..1.0);
            let forcing = random_forcing(&mut rng, amp, horizon);
            ModeProblem::new(T::of(lambda), T::of(u0), forcing, kernel.clone())
                .expect("finite draws")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{ExponentForm, ExponentFunction};

    #[test]
    fn families_are_deterministic_per_seed() {
        let e = ExponentFunction::new(ExponentForm::parse("affine:0.4,0.1").unwrap(), 1.0).unwrap();
        let k = Arc::new(SplitKernel::with_defaults(e).unwrap());
        let d = SpectralDomain::interval(1.0f64, 4).unwrap();
        let a = random_field_problems(&d, &k, 3, 42).unwrap();
        let b = random_field_problems(&d, &k, 3, 42).unwrap();
        for (pa, pb) in a.iter().zip(&b) {
            let (InitialData::Coefficients(ca), InitialData::Coefficients(cb)) =
                (&pa.initial, &pb.initial)
            else {
                panic!("coefficients expected")
            };
            assert_eq!(ca, cb);
            if let (FieldForcing::Modal(fa), FieldForcing::Modal(fb)) = (&pa.forcing, &pb.forcing) {
                for (f1, f2) in fa.iter().zip(fb) {
                    assert_eq!(f1.value(0.37), f2.value(0.37));
                }
            }
        }
        let c = random_field_problems(&d, &k, 1, 43).unwrap();
        if let (InitialData::Coefficients(ca), InitialData::Coefficients(cc)) =
            (&a[0].initial, &c[0].initial)
        {
            assert_ne!(ca, cc);
        }
    }

    #[test]
    fn initial_data_decays_like_h4_class() {
        let e = ExponentFunction::new(ExponentForm::parse("constant:0.5").unwrap(), 1.0).unwrap();
        let k = Arc::new(SplitKernel::with_defaults(e).unwrap());
        let d = SpectralDomain::interval(1.0f64, 16).unwrap();
        let p = &random_field_problems(&d, &k, 1, 7).unwrap()[0];
        let InitialData::Coefficients(c) = &p.initial else {
            panic!()
        };
        let modes = eigenpairs(&d).unwrap();
        // sum lambda^4 c^2 converges: tail terms decay like lambda^{-1}
        let weighted: Vec<f64> = c
            .iter()
            .zip(&modes)
            .map(|(ci, m)| m.lambda.powi(4) * ci * ci)
            .collect();
        assert!(weighted.iter().all(|w| w.is_finite()));
        assert!(weighted[8..].iter().sum::<f64>() < weighted.iter().sum::<f64>());
    }
}
