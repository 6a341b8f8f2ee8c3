//! Numerical laboratory for prolate-conditioned spectral triples, the
//! semi-local Weil quadratic form and zeta cycles.

pub mod basis;
pub mod criteria;
pub mod error;
pub mod numkernel;
pub mod dirac;
pub mod prolate;
pub mod prolateproj;
pub mod weilform;
pub mod zetacycle;

pub use error::{Error, Result};
pub use numkernel::{BigComplex, BigReal, Complex, NumContext, Real, SymMatrix};
