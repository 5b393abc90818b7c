//! Special functions and quadrature shared by every packet construction.

mod erf;
mod quad;

pub use erf::{erf_complex, erfi, faddeeva};
pub use quad::{integrate_adaptive, integrate_real, QuadratureSpec};

/// Complex amplitude used throughout the crate.
pub type ComplexValue = num_complex::Complex64;
