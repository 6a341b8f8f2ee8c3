//! Shared settings for the benchmarks in `benches/`.

use zetalab::NumContext;

/// Precision used by the multi-precision benchmarks.
pub fn mp_context(digits: u32) -> NumContext {
    NumContext::with_digits(digits)
}

/// The reduced quadrature used by the f64 sweeps.
pub fn f64_context() -> NumContext {
    let mut ctx = NumContext::with_digits(30);
    ctx.quad_order = 24;
    ctx
}
