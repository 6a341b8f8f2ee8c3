//! Bernoulli numbers, complex log-gamma and digamma, the Riemann–Siegel
//! theta function and ζ on the critical line.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use super::complex::Complex;
use super::context::NumContext;
use super::real::Real;

static BERNOULLI_EXACT: Lazy<Mutex<Vec<BigRational>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// Exact B_2, B_4, …, B_{2n} (index 0 holds B_2).
///
/// Uses the integer tangent-number recurrence, so no rational arithmetic
/// is needed until the final division.
pub fn bernoulli_even_exact(n: usize) -> Vec<BigRational> {
    let mut cache = BERNOULLI_EXACT.lock().expect("bernoulli cache");
    if cache.len() < n {
        let m = n.max(2 * cache.len()).max(16);
        let mut t: Vec<BigInt> = vec![BigInt::zero(); m + 1];
        t[1] = BigInt::one();
        for k in 2..=m {
            t[k] = &t[k - 1] * BigInt::from(k - 1);
        }
        for k in 2..=m {
            for j in k..=m {
                t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
            }
        }
        cache.clear();
        for k in 1..=m {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - BigInt::one());
            let mut num = &t[k] * BigInt::from(2 * k);
            if k % 2 == 0 {
                num = -num;
            }
            cache.push(BigRational::new(num, den));
        }
    }
    cache[..n].to_vec()
}

fn rational_to_real<T: Real>(q: &BigRational) -> T {
    let num = T::parse(&q.numer().abs().to_string()).expect("integer literal");
    let den = T::parse(&q.denom().to_string()).expect("integer literal");
    let v = num / den;
    if q.is_negative() {
        -v
    } else {
        v
    }
}

/// B_2, …, B_{2n} converted to `T` at the current precision (cached).
pub fn bernoulli_even<T: Real>(n: usize) -> Arc<Vec<T>> {
    static CACHE: Lazy<Mutex<HashMap<(TypeId, u32), Arc<dyn Any + Send + Sync>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (TypeId::of::<T>(), T::precision_digits());
    if let Some(hit) = CACHE.lock().expect("bernoulli cache").get(&key) {
        if let Ok(v) = hit.clone().downcast::<Vec<T>>() {
            if v.len() >= n {
                return v;
            }
        }
    }
    let exact = bernoulli_even_exact(n);
    let v: Arc<Vec<T>> = Arc::new(exact.iter().map(rational_to_real).collect());
    CACHE
        .lock()
        .expect("bernoulli cache")
        .insert(key, v.clone() as Arc<dyn Any + Send + Sync>);
    v
}

/// Radius beyond which the Stirling-type series reach full precision.
fn asymptotic_radius<T: Real>() -> f64 {
    f64::from(T::precision_digits()) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI) + 6.0
}

fn shift_count<T: Real>(z: &Complex<T>) -> usize {
    let r = asymptotic_radius::<T>();
    let (x, y) = (z.re.to_f64(), z.im.to_f64());
    // The series also needs |arg w| ≤ π/2, so move into the right half-plane.
    let to_right = if x < 0.0 { (-x).ceil() } else { 0.0 };
    let xs = x + to_right;
    if xs * xs + y * y >= r * r {
        return to_right as usize;
    }
    let need = (r * r - y * y).max(0.0).sqrt() - x;
    need.ceil().max(to_right) as usize
}

/// Principal-branch log Γ(z) for Re z > 0, continuous from the real axis.
pub fn ln_gamma<T: Real>(z: &Complex<T>) -> Complex<T> {
    let k = shift_count(z);
    let mut w = z.clone();
    let mut correction = Complex::<T>::zero();
    for _ in 0..k {
        correction = correction + w.ln();
        w = w + Complex::one();
    }
    let eps = T::epsilon();
    let half = T::from_ratio(1, 2);
    let two_pi = T::pi() * T::from_i64(2);
    let mut s = (w.clone() - Complex::real(half.clone())) * w.ln() - w.clone()
        + Complex::real(two_pi.ln() * half);
    let winv = w.recip();
    let winv2 = winv.sqr();
    let nterms = (2.0 * asymptotic_radius::<T>()) as usize + 8;
    let b = bernoulli_even::<T>(nterms);
    let mut pow = winv;
    for (i, bk) in b.iter().enumerate() {
        let k = (i + 1) as i64;
        let term = pow.scale(&(bk.clone() / T::from_i64(2 * k * (2 * k - 1))));
        let small = term.abs() <= eps.clone() * s.abs();
        s = s + term;
        if small {
            break;
        }
        pow = pow * winv2.clone();
    }
    s - correction
}

/// Digamma ψ(z) = Γ'(z)/Γ(z), away from the poles at non-positive integers.
pub fn digamma<T: Real>(z: &Complex<T>) -> Complex<T> {
    let k = shift_count(z);
    let mut w = z.clone();
    let mut correction = Complex::<T>::zero();
    for _ in 0..k {
        correction = correction + w.recip();
        w = w + Complex::one();
    }
    let eps = T::epsilon();
    let winv = w.recip();
    let mut s = w.ln() - winv.scale(&T::from_ratio(1, 2));
    let winv2 = winv.sqr();
    let nterms = (2.0 * asymptotic_radius::<T>()) as usize + 8;
    let b = bernoulli_even::<T>(nterms);
    let mut pow = winv2.clone();
    for (i, bk) in b.iter().enumerate() {
        let k = (i + 1) as i64;
        let term = pow.scale(&(bk.clone() / T::from_i64(2 * k)));
        let small = term.abs() <= eps.clone() * s.abs();
        s = s - term;
        if small {
            break;
        }
        pow = pow * winv2.clone();
    }
    s - correction
}

/// Riemann–Siegel theta θ(t) = Im log Γ(¼ + it/2) − (t/2) log π.
pub fn theta_siegel<T: Real>(t: &T) -> T {
    let z = Complex::new(T::from_ratio(1, 4), t.clone() / T::from_i64(2));
    ln_gamma(&z).im - t.clone() / T::from_i64(2) * T::pi().ln()
}

/// θ'(t) = ½ Re ψ(¼ + it/2) − ½ log π.
pub fn theta_siegel_deriv<T: Real>(t: &T, _ctx: &NumContext) -> T {
    let z = Complex::new(T::from_ratio(1, 4), t.clone() / T::from_i64(2));
    let half = T::from_ratio(1, 2);
    (digamma(&z).re - T::pi().ln()) * half
}

/// ζ(½ + is) by Euler–Maclaurin summation.
pub fn zeta_critical<T: Real>(s: &T, ctx: &NumContext) -> Complex<T> {
    zeta_em(&Complex::new(T::from_ratio(1, 2), s.clone()), ctx)
}

/// ζ(σ + it) by Euler–Maclaurin summation, intended for 0 < σ < 2.
pub fn zeta_em<T: Real>(sarg: &Complex<T>, ctx: &NumContext) -> Complex<T> {
    let d = f64::from(ctx.effective_digits::<T>()) + 5.0;
    let t = sarg.im.to_f64().abs();
    let two_pi = 2.0 * std::f64::consts::PI;
    let n = ((t + d * std::f64::consts::LN_10 + 10.0) / two_pi).ceil() as usize + 5;

    let minus_s = -sarg.clone();
    let pow_neg_s = |k: usize| Complex::real_pow(&T::from_i64(k as i64), &minus_s);

    let mut sum = Complex::<T>::zero();
    for k in 1..n {
        sum = sum + pow_neg_s(k);
    }
    let nn = T::from_i64(n as i64);
    let n_neg_s = pow_neg_s(n);
    let one = Complex::<T>::one();
    // N^{1-s}/(s-1) + N^{-s}/2
    sum = sum + n_neg_s.scale(&nn) / (sarg.clone() - one.clone());
    sum = sum + n_neg_s.scale(&T::from_ratio(1, 2));

    let eps = T::epsilon();
    let mmax = ((two_pi * n as f64 - t) / 2.0).max(4.0) as usize + 4;
    let b = bernoulli_even::<T>(mmax);
    // term_k = B_2k/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let nn2 = nn.sqr();
    let mut poch = sarg.clone();
    let mut npow = n_neg_s.scale(&(T::one() / &nn));
    let mut fact = T::from_i64(2);
    for (i, bk) in b.iter().enumerate() {
        let k = (i + 1) as i64;
        if k > 1 {
            let a = sarg.clone() + Complex::real(T::from_i64(2 * k - 3));
            let c = sarg.clone() + Complex::real(T::from_i64(2 * k - 2));
            poch = poch * a * c;
            npow = npow.scale(&(T::one() / &nn2));
            fact *= T::from_i64((2 * k - 1) * (2 * k));
        }
        let term = (poch.clone() * npow.clone()).scale(&(bk.clone() / &fact));
        let small = term.abs() <= eps.clone() * sum.abs().max_of_one();
        sum = sum + term;
        if small {
            break;
        }
    }
    sum
}

trait MaxOne {
    fn max_of_one(self) -> Self;
}

impl<T: Real> MaxOne for T {
    fn max_of_one(self) -> Self {
        T::max_of(self, T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{set_working_digits, BigReal};
    use rug::Float;

    #[test]
    fn bernoulli_small_values() {
        let b = bernoulli_even_exact(7);
        let expect = [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6)];
        for (q, (p, r)) in b.iter().zip(expect) {
            assert_eq!(*q, BigRational::new(BigInt::from(p), BigInt::from(r)));
        }
    }

    #[test]
    fn bernoulli_matches_zeta_even_values() {
        // B_2k = (−1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}, with ζ(2k) from MPFR.
        let _g = set_working_digits(60);
        let b = bernoulli_even::<BigReal>(30);
        let prec = crate::numkernel::real::working_precision_bits();
        for k in [5usize, 17, 30] {
            let z = BigReal(Float::with_val(prec, (2 * k) as u32).zeta());
            let mut fact = BigReal::one();
            for j in 1..=(2 * k) {
                fact *= BigReal::from_i64(j as i64);
            }
            let two_pi = BigReal::pi() * BigReal::from_i64(2);
            let mut v = BigReal::from_i64(2) * fact * z / Real::powi(&two_pi, (2 * k) as i32);
            if k % 2 == 0 {
                v = -v;
            }
            let rel = ((v - &b[k - 1]) / &b[k - 1]).abs();
            assert!(rel < BigReal::ten_pow_neg(55), "k = {k}");
        }
    }

    #[test]
    fn ln_gamma_real_axis_matches_mpfr() {
        let _g = set_working_digits(80);
        for x in ["0.25", "1.5", "7.125", "33.0"] {
            let xr = BigReal::parse(x).unwrap();
            let ours = ln_gamma(&Complex::real(xr.clone()));
            let want = BigReal(xr.0.clone().ln_gamma());
            assert!((ours.re - want).abs() < BigReal::ten_pow_neg(75), "x = {x}");
            assert!(ours.im.abs() < BigReal::ten_pow_neg(75));
        }
    }

    #[test]
    fn digamma_real_axis_matches_mpfr() {
        let _g = set_working_digits(80);
        let prec = crate::numkernel::real::working_precision_bits();
        for x in ["0.25", "2.0", "19.75"] {
            let xr = BigReal::parse(x).unwrap();
            let ours = digamma(&Complex::real(xr.clone()));
            let want = BigReal(Float::with_val(prec, xr.0.clone().digamma()));
            assert!((ours.re - want).abs() < BigReal::ten_pow_neg(75), "x = {x}");
        }
    }

    #[test]
    fn digamma_left_half_plane_reflection() {
        // ψ(1 − z) − ψ(z) = π cot(πz)
        let _g = set_working_digits(50);
        let z = Complex::new(BigReal::parse("-37.6").unwrap(), BigReal::parse("8.5").unwrap());
        let lhs = digamma(&(Complex::one() - z.clone())) - digamma(&z);
        let pz = z.scale(&BigReal::pi());
        let e = (pz.clone() * Complex::i()).scale(&BigReal::from_i64(2)).exp();
        // cot w = i (e^{2iw} + 1) / (e^{2iw} − 1)
        let cot = Complex::i() * (e.clone() + Complex::one()) / (e - Complex::one());
        let rhs = cot.scale(&BigReal::pi());
        assert!((lhs - rhs).abs() < BigReal::ten_pow_neg(40));
    }

    #[test]
    fn ln_gamma_satisfies_recurrence_off_axis() {
        let _g = set_working_digits(60);
        let z = Complex::new(BigReal::from_ratio(1, 4), BigReal::from_i64(9));
        let lhs = ln_gamma(&(z.clone() + Complex::one()));
        let rhs = ln_gamma(&z) + z.ln();
        assert!((lhs - rhs).abs() < BigReal::ten_pow_neg(55));
    }

    #[test]
    fn theta_derivative_matches_finite_difference() {
        let ctx = NumContext::with_digits(60);
        let _g = ctx.install();
        let t = BigReal::from_i64(20);
        let h = BigReal::ten_pow_neg(12);
        let fd = (theta_siegel(&(t.clone() + &h)) - theta_siegel(&(t.clone() - &h)))
            / (h.clone() + &h);
        let d = theta_siegel_deriv(&t, &ctx);
        assert!((fd - d).abs() < BigReal::ten_pow_neg(20));
    }

    #[test]
    fn theta_derivative_is_even() {
        let ctx = NumContext::with_digits(40);
        for t in [0.5f64, 3.0, 47.25] {
            let a = theta_siegel_deriv(&t, &ctx);
            let b = theta_siegel_deriv(&-t, &ctx);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zeta_at_half_matches_mpfr() {
        let ctx = NumContext::with_digits(60);
        let _g = ctx.install();
        let prec = crate::numkernel::real::working_precision_bits();
        let want = BigReal(Float::with_val(prec, Float::with_val(prec, 0.5).zeta()));
        let z = zeta_critical(&BigReal::zero(), &ctx);
        assert!((z.re - want).abs() < BigReal::ten_pow_neg(50));
        assert!(z.im.abs() < BigReal::ten_pow_neg(50));
    }

    #[test]
    fn zeta_vanishes_near_first_zero() {
        let ctx = NumContext::with_digits(40);
        let _g = ctx.install();
        let s = BigReal::parse("14.134725141734693790457251983562470270784257115699").unwrap();
        assert!(zeta_critical(&s, &ctx).abs() < BigReal::ten_pow_neg(35));
        let z64 = zeta_critical(&14.134725141734694f64, &ctx);
        assert!(z64.abs() < 1e-6);
    }

    #[test]
    fn zeta_conjugate_symmetry() {
        let ctx = NumContext::with_digits(40);
        let _g = ctx.install();
        let s = BigReal::parse("37.3").unwrap();
        let a = zeta_critical(&s, &ctx);
        let b = zeta_critical(&-s, &ctx);
        assert!((a - b.conj()).abs() < BigReal::ten_pow_neg(30));
    }
}
