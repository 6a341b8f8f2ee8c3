use std::ops::{Add, Div, Mul, Neg, Sub};

use super::real::Real;

/// Complex number over any [`Real`] scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Complex { re, im }
    }

    pub fn real(re: T) -> Self {
        Complex { re, im: T::zero() }
    }

    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn i() -> Self {
        Complex::new(T::zero(), T::one())
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> T {
        let (a, b) = (self.re.abs(), self.im.abs());
        if a.is_zero() && b.is_zero() {
            return T::zero();
        }
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        let r = small / &big;
        big * (T::one() + r.sqr()).sqrt()
    }

    pub fn arg(&self) -> T {
        self.im.atan2(&self.re)
    }

    pub fn scale(&self, k: &T) -> Self {
        Complex::new(self.re.clone() * k, self.im.clone() * k)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(self.re.clone() / &d, -self.im.clone() / &d)
    }

    /// `e^{iθ}`.
    pub fn cis(theta: &T) -> Self {
        let (s, c) = theta.sin_cos();
        Complex::new(c, s)
    }

    pub fn exp(&self) -> Self {
        Complex::cis(&self.im).scale(&self.re.exp())
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Complex::new(self.abs().ln(), self.arg())
    }

    pub fn sqr(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Real base raised to a complex power, `b^z` with `b > 0`.
    pub fn real_pow(base: &T, z: &Self) -> Self {
        let lb = base.ln();
        Complex::new(z.re.clone() * &lb, z.im.clone() * &lb).exp()
    }
}

impl<T: Real> Add for Complex<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Complex::new(self.re + o.re, self.im + o.im)
    }
}

impl<T: Real> Sub for Complex<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Complex::new(self.re - o.re, self.im - o.im)
    }
}

impl<T: Real> Mul for Complex<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * &o.re - self.im.clone() * &o.im;
        let im = self.re * &o.im + self.im * &o.re;
        Complex::new(re, im)
    }
}

impl<T: Real> Div for Complex<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        let re = (self.re.clone() * &o.re + self.im.clone() * &o.im) / &d;
        let im = (self.im * &o.re - self.re * &o.im) / &d;
        Complex::new(re, im)
    }
}

impl<T: Real> Neg for Complex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex::new(-self.re, -self.im)
    }
}
