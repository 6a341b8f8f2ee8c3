//! Scalar abstraction shared by the hardware-double and multi-precision paths.

use std::cell::Cell;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::{Constant, Round};
use rug::Float;

use crate::error::{Error, Result};

/// Real scalar used throughout the crate.
///
/// Implemented for `f64` and [`BigReal`]. Generic algorithms are written
/// once and instantiated at whichever precision a computation needs.
pub trait Real:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Parses a decimal literal (`"-1.25e-3"`) at the current precision.
    fn parse(s: &str) -> Result<Self>;
    fn to_f64(&self) -> f64;
    /// Decimal digits carried by values created right now.
    fn precision_digits() -> u32;
    /// Unit roundoff at the current precision.
    fn epsilon() -> Self;

    fn pi() -> Self;
    fn euler_gamma() -> Self;
    fn ln2() -> Self;

    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn exp_m1(&self) -> Self;
    fn ln(&self) -> Self;
    fn ln_1p(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn abs(&self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn floor(&self) -> Self;
    fn is_finite(&self) -> bool;

    /// Full-precision decimal rendering that parses back to the same value.
    fn to_decimal(&self) -> String;
    /// Decimal rendering with `sig` significant digits.
    fn to_decimal_sig(&self, sig: usize) -> String;

    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }
    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc *= &base;
            }
            base = base.clone() * &base;
            k >>= 1;
        }
        acc
    }
    fn sqr(&self) -> Self {
        self.clone() * self
    }
    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    /// `10^(-d)` at the current precision.
    fn ten_pow_neg(d: i32) -> Self {
        Self::from_i64(10).powi(-d)
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn parse(s: &str) -> Result<Self> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("not a decimal number: {s:?}")))
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn precision_digits() -> u32 {
        15
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }
    fn ln2() -> Self {
        std::f64::consts::LN_2
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn exp_m1(&self) -> Self {
        f64::exp_m1(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn ln_1p(&self) -> Self {
        f64::ln_1p(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn to_decimal(&self) -> String {
        format!("{self:e}")
    }
    fn to_decimal_sig(&self, sig: usize) -> String {
        format!("{:.*e}", sig.saturating_sub(1), self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
}

thread_local! {
    static PREC_BITS: Cell<u32> = const { Cell::new(DEFAULT_PREC_BITS) };
}

const DEFAULT_PREC_BITS: u32 = 416;

/// Bits needed to carry `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Precision (bits) used for newly created [`BigReal`] values on this thread.
pub fn working_precision_bits() -> u32 {
    PREC_BITS.with(Cell::get)
}

/// Restores the previous working precision when dropped.
#[must_use = "precision reverts when the guard is dropped"]
pub struct PrecisionGuard {
    previous: u32,
}

impl Drop for PrecisionGuard {
    fn drop(&mut self) {
        PREC_BITS.with(|p| p.set(self.previous));
    }
}

/// Sets the working precision of this thread to `digits` decimal digits.
pub fn set_working_digits(digits: u32) -> PrecisionGuard {
    let previous = PREC_BITS.with(|p| p.replace(bits_for_digits(digits)));
    PrecisionGuard { previous }
}

/// Multi-precision real backed by MPFR.
///
/// New values take the precision of the current thread (see
/// [`set_working_digits`]); arithmetic keeps the precision of the left
/// operand.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(pub Float);

impl BigReal {
    fn new_with<T>(val: T) -> Self
    where
        Float: rug::Assign<T>,
    {
        BigReal(Float::with_val(working_precision_bits(), val))
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }
}

impl Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_sig(30))
    }
}

impl Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{}", self.to_decimal_sig(p.max(1))),
            None => write!(f, "{}", self.to_decimal()),
        }
    }
}

macro_rules! big_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(mut self, rhs: BigReal) -> BigReal {
                $atr::$am(&mut self.0, rhs.0);
                self
            }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $m(mut self, rhs: &'a BigReal) -> BigReal {
                $atr::$am(&mut self.0, &rhs.0);
                self
            }
        }
        impl $atr for BigReal {
            fn $am(&mut self, rhs: BigReal) {
                $atr::$am(&mut self.0, rhs.0);
            }
        }
        impl<'a> $atr<&'a BigReal> for BigReal {
            fn $am(&mut self, rhs: &'a BigReal) {
                $atr::$am(&mut self.0, &rhs.0);
            }
        }
    };
}

big_binop!(Add, add, AddAssign, add_assign);
big_binop!(Sub, sub, SubAssign, sub_assign);
big_binop!(Mul, mul, MulAssign, mul_assign);
big_binop!(Div, div, DivAssign, div_assign);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Real for BigReal {
    fn from_f64(x: f64) -> Self {
        Self::new_with(x)
    }
    fn from_i64(n: i64) -> Self {
        Self::new_with(n)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        let mut x = Self::new_with(p);
        x.0 /= q;
        x
    }
    fn parse(s: &str) -> Result<Self> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| Error::Parse(format!("not a decimal number: {s:?} ({e})")))?;
        Ok(Self::new_with(parsed))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn precision_digits() -> u32 {
        ((working_precision_bits().saturating_sub(16)) as f64 / std::f64::consts::LOG2_10).floor()
            as u32
    }
    fn epsilon() -> Self {
        let mut x = Self::new_with(1);
        x.0 >>= working_precision_bits() - 1;
        x
    }
    fn pi() -> Self {
        Self::new_with(Constant::Pi)
    }
    fn euler_gamma() -> Self {
        Self::new_with(Constant::Euler)
    }
    fn ln2() -> Self {
        Self::new_with(Constant::Log2)
    }
    fn sqrt(&self) -> Self {
        BigReal(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        BigReal(self.0.clone().exp())
    }
    fn exp_m1(&self) -> Self {
        BigReal(self.0.clone().exp_m1())
    }
    fn ln(&self) -> Self {
        BigReal(self.0.clone().ln())
    }
    fn ln_1p(&self) -> Self {
        BigReal(self.0.clone().ln_1p())
    }
    fn sin(&self) -> Self {
        BigReal(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        BigReal(self.0.clone().cos())
    }
    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.0.prec()));
        (BigReal(s), BigReal(c))
    }
    fn sinh(&self) -> Self {
        BigReal(self.0.clone().sinh())
    }
    fn cosh(&self) -> Self {
        BigReal(self.0.clone().cosh())
    }
    fn atan2(&self, x: &Self) -> Self {
        BigReal(self.0.clone().atan2(&x.0))
    }
    fn abs(&self) -> Self {
        BigReal(self.0.clone().abs())
    }
    fn powf(&self, e: &Self) -> Self {
        BigReal(rug::ops::Pow::pow(self.0.clone(), &e.0))
    }
    fn floor(&self) -> Self {
        BigReal(self.0.clone().floor())
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn to_decimal(&self) -> String {
        self.0.to_string_radix_round(10, None, Round::Nearest)
    }
    fn to_decimal_sig(&self, sig: usize) -> String {
        self.0.to_string_radix_round(10, Some(sig), Round::Nearest)
    }
    fn powi(&self, n: i32) -> Self {
        BigReal(rug::ops::Pow::pow(self.0.clone(), n))
    }
}
