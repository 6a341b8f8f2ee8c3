//! Extended-precision arithmetic, linear algebra, quadrature and special
//! functions.

pub mod complex;
pub mod context;
pub mod eigen;
pub mod matrix;
pub mod primes;
pub mod quad;
pub mod real;
pub mod special;

pub use complex::Complex;
pub use context::NumContext;
pub use eigen::{sym_eigen, sym_eigenvalues, SymEigen};
pub use matrix::SymMatrix;
pub use primes::von_mangoldt_range;
pub use quad::{integrate, integrate_vec, integrate_with, Endpoint, GaussLegendre, QuadOptions};
pub use real::{set_working_digits, BigReal, PrecisionGuard, Real};
pub use special::{digamma, ln_gamma, theta_siegel, theta_siegel_deriv, zeta_critical};

/// Complex scalar at extended precision.
pub type BigComplex = Complex<BigReal>;
