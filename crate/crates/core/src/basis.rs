//! The orthonormal real Fourier basis ξ_n of L²([−L/2, L/2]).
//!
//! ξ_0 = L^{−1/2}, ξ_n = (−1)^n (2/L)^{1/2} cos(2πnx/L) for n > 0 and
//! ξ_n = (−1)^n (2/L)^{1/2} sin(2πnx/L) for n < 0.

use serde::{Deserialize, Serialize};

use crate::numkernel::Real;

/// Block of the basis: indices n ≥ 0 (even functions) or n < 0 (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n >= 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of the prolate combination φ_n: (−1)^n.
    pub fn of_order(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Basis index of the `i`-th coordinate in this block
    /// (0, 1, 2, … for even; −1, −2, … for odd).
    pub fn index(self, i: usize) -> i64 {
        match self {
            Parity::Even => i as i64,
            Parity::Odd => -(i as i64) - 1,
        }
    }

    /// Inverse of [`Parity::index`].
    pub fn position(n: i64) -> usize {
        if n >= 0 {
            n as usize
        } else {
            (-n - 1) as usize
        }
    }

    /// Number of indices with |n| ≤ `n_max` in this block.
    pub fn block_dim(self, n_max: usize) -> usize {
        match self {
            Parity::Even => n_max + 1,
            Parity::Odd => n_max,
        }
    }

    /// +1 for even, −1 for odd.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// ξ_n(x) for x in [−L/2, L/2] (zero outside).
pub fn xi<T: Real>(n: i64, l: &T, x: &T) -> T {
    let half = l.clone() / T::from_i64(2);
    if x.abs() > half {
        return T::zero();
    }
    if n == 0 {
        return T::one() / l.sqrt();
    }
    let amp = (T::from_i64(2) / l).sqrt();
    let arg = T::pi() * T::from_i64(2 * n) * x / l;
    let v = if n > 0 { arg.cos() } else { arg.sin() };
    if n % 2 == 0 {
        amp * v
    } else {
        -(amp * v)
    }
}
