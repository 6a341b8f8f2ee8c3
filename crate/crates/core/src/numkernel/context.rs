use serde::{Deserialize, Serialize};

use super::real::{set_working_digits, PrecisionGuard, Real};
use crate::error::{Error, Result};

/// Environment variables that override the precision defaults.
pub const ENV_DIGITS: &str = "ZETALAB_DIGITS";
pub const ENV_QUAD_ORDER: &str = "ZETALAB_QUAD_ORDER";
pub const ENV_TRUNC_N: &str = "ZETALAB_TRUNC_N";

/// Precision and discretisation settings threaded through every computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct NumContext {
    /// Working decimal precision.
    pub digits: u32,
    /// Gauss–Legendre nodes per panel.
    pub quad_order: usize,
    /// Eigensolver tolerance is `10^(-eig_tol_exp)`.
    pub eig_tol_exp: u32,
    /// Fourier-basis truncation N (indices |n| ≤ N).
    pub trunc_n: usize,
}

impl Default for NumContext {
    fn default() -> Self {
        Self::with_digits(120)
    }
}

impl NumContext {
    pub fn with_digits(digits: u32) -> Self {
        NumContext {
            digits,
            quad_order: 80,
            eig_tol_exp: digits.saturating_sub(10),
            trunc_n: 128,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < 30 {
            return Err(Error::invalid(format!("digits must be >= 30, got {}", self.digits)));
        }
        if self.quad_order < 16 {
            return Err(Error::invalid(format!(
                "quad_order must be >= 16, got {}",
                self.quad_order
            )));
        }
        if self.trunc_n < 8 {
            return Err(Error::invalid(format!("trunc_n must be >= 8, got {}", self.trunc_n)));
        }
        if self.eig_tol_exp >= self.digits {
            return Err(Error::invalid("eigensolver tolerance finer than working precision"));
        }
        Ok(())
    }

    /// Applies `ZETALAB_*` environment overrides.
    pub fn apply_env(&mut self) -> Result<()> {
        let read = |key: &str| -> Result<Option<u64>> {
            match std::env::var(key) {
                Ok(v) => v
                    .trim()
                    .parse::<u64>()
                    .map(Some)
                    .map_err(|_| Error::invalid(format!("{key}={v:?} is not an integer"))),
                Err(_) => Ok(None),
            }
        };
        if let Some(d) = read(ENV_DIGITS)? {
            let d = d as u32;
            self.eig_tol_exp = d.saturating_sub(10);
            self.digits = d;
        }
        if let Some(q) = read(ENV_QUAD_ORDER)? {
            self.quad_order = q as usize;
        }
        if let Some(n) = read(ENV_TRUNC_N)? {
            self.trunc_n = n as usize;
        }
        Ok(())
    }

    /// Sets the thread's multi-precision working precision for the guard's lifetime.
    pub fn install(&self) -> PrecisionGuard {
        set_working_digits(self.digits)
    }

    /// Digits actually available for scalar type `T`.
    pub fn effective_digits<T: Real>(&self) -> u32 {
        self.digits.min(T::precision_digits())
    }

    /// Tolerance `10^(-(d - slack))` where `d` is the effective precision.
    ///
    /// For hardware doubles the slack is capped so the tolerance stays
    /// meaningful.
    pub fn tol<T: Real>(&self, slack: u32) -> T {
        let d = self.effective_digits::<T>();
        let s = if d <= 16 { slack.min(3) } else { slack.min(d.saturating_sub(5)) };
        T::ten_pow_neg((d - s) as i32)
    }

    /// Relative eigensolver tolerance for type `T`.
    pub fn eig_tol<T: Real>(&self) -> T {
        let d = self.effective_digits::<T>();
        let e = self.eig_tol_exp.min(d.saturating_sub(1)).max(1);
        T::ten_pow_neg(e as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::BigReal;

    #[test]
    fn defaults_validate() {
        let c = NumContext::default();
        assert_eq!(c.digits, 120);
        assert_eq!(c.eig_tol_exp, 110);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_low_precision() {
        let mut c = NumContext::default();
        c.digits = 20;
        assert!(c.validate().unwrap_err().is_validation());
    }

    #[test]
    fn tolerance_respects_scalar_type() {
        let c = NumContext::with_digits(60);
        let _g = c.install();
        assert!(c.tol::<f64>(15) >= 1e-13);
        let t: BigReal = c.tol(15);
        assert!(t < BigReal::ten_pow_neg(44));
        assert!(t > BigReal::ten_pow_neg(46));
    }
}
