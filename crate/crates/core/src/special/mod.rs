//! Special functions: Gamma family and the two-parameter Mittag-Leffler
//! function on the closed negative real axis.
//!
//! Everything here is a pure function of its arguments and safe to call
//! concurrently.

mod gamma;
mod mittag_leffler;

pub(crate) use gamma::gamma_unchecked;
pub use gamma::{digamma, gamma};
pub use mittag_leffler::{mittag_leffler, ml_kernel_weighted, MLParams};
