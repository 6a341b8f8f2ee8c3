//! Zeta cycles: the maps ℰ and Σ_μ on Gaussian–polynomial test functions,
//! the Mellin factorisation of ℰ through ζ, and the vanishing of character
//! coefficients of Σ_μ ℰ(f) on circles of length 2πn/s.
//!
//! Test functions are f(x) = Σ_m c_m (πx²)^m e^{−πx²} with rational c_m,
//! c_0 = 0 (so f(0) = 0) and ∫f = 0 (so f̂(0) = 0). Fourier and Mellin
//! transforms are available in closed form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::quad::QuadOptions;
use crate::numkernel::special::{ln_gamma, zeta_critical};
use crate::numkernel::{integrate_vec, Complex, NumContext, Real};

fn rational_to<T: Real>(q: &BigRational) -> T {
    let num = T::parse(&q.numer().to_string()).expect("integer literal");
    let den = T::parse(&q.denom().to_string()).expect("integer literal");
    num / den
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Γ(m + ½)/√π = (2m − 1)!!/2^m.
fn half_gamma_ratio(m: usize) -> BigRational {
    let mut r = BigRational::one();
    for i in 0..m {
        r *= ratio(2 * i as i64 + 1, 2);
    }
    r
}

/// An even test function Σ_m c_m (πx²)^m e^{−πx²} with f(0) = f̂(0) = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFn {
    pub name: String,
    /// c_m for m = 0, 1, …; c_0 is zero.
    pub coeffs: Vec<BigRational>,
}

impl TestFn {
    /// Checks both vanishing conditions exactly.
    pub fn new(name: impl Into<String>, coeffs: Vec<BigRational>) -> Result<Self> {
        let name = name.into();
        if coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::invalid(format!("{name}: f(0) must vanish")));
        }
        let integral: BigRational = coeffs.iter().enumerate().map(|(m, c)| c * half_gamma_ratio(m)).sum();
        if !integral.is_zero() {
            return Err(Error::invalid(format!("{name}: the integral of f must vanish")));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::invalid(format!("{name}: f is identically zero")));
        }
        Ok(TestFn { name, coeffs })
    }

    /// f_j = (y^j − (2j−1)!!/2^{j−1}·y) e^{−y}, y = πx², for j ≥ 2.
    pub fn family_member(j: usize) -> Result<Self> {
        if j < 2 {
            return Err(Error::invalid("family members start at j = 2"));
        }
        let mut coeffs = vec![BigRational::zero(); j + 1];
        coeffs[j] = BigRational::one();
        coeffs[1] = -half_gamma_ratio(j) * ratio(2, 1);
        Self::new(format!("f{j}"), coeffs)
    }

    /// f_2, …, f_{count+1}.
    pub fn family(count: usize) -> Vec<Self> {
        (2..count + 2)
            .map(|j| Self::family_member(j).expect("valid family index"))
            .collect()
    }

    /// e^{−πx²} πx² (3 − 2πx²).
    pub fn special() -> Self {
        Self::new("special", vec![BigRational::zero(), ratio(3, 1), ratio(-2, 1)]).expect("valid test function")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval<T: Real>(&self, x: &T) -> T {
        let y = T::pi() * x.sqr();
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &y + rational_to::<T>(c);
        }
        acc * (-y).exp()
    }

    /// f̂(ξ) = ∫ f(x) e^{−2πixξ} dx, again of the same form.
    ///
    /// (πx²)^m e^{−πx²} transforms to (−1)^m ∂_a^m [a^{−1/2} e^{−πξ²/a}] at
    /// a = 1; the derivatives are tracked as terms a^{−(½+p)} Y^q e^{−Y/a}.
    pub fn fourier(&self) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len()];
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (p, q) ↦ coefficient
            let mut terms: Vec<((usize, usize), BigRational)> = vec![((0, 0), BigRational::one())];
            for _ in 0..m {
                let mut next: Vec<((usize, usize), BigRational)> = Vec::new();
                let mut add = |key: (usize, usize), v: BigRational| {
                    if let Some(e) = next.iter_mut().find(|(k, _)| *k == key) {
                        e.1 += v;
                    } else {
                        next.push((key, v));
                    }
                };
                for ((p, q), v) in &terms {
                    add((p + 1, *q), -(v * (ratio(1, 2) + ratio(*p as i64, 1))));
                    add((p + 2, q + 1), v.clone());
                }
                terms = next;
            }
            let sign = if m % 2 == 0 { c.clone() } else { -c.clone() };
            for ((_, q), v) in terms {
                out[q] += &sign * v;
            }
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        TestFn {
            name: format!("{}^", self.name),
            coeffs: out,
        }
    }

    /// ψ(z) = ∫_0^∞ f(v) v^{½−iz} d*v = ½ π^{−s/2} Σ_m c_m Γ(m + s/2), s = ½ − iz.
    pub fn mellin<T: Real>(&self, z: &T) -> Complex<T> {
        let half = T::from_ratio(1, 2);
        let w = Complex::new(T::from_ratio(1, 4), -(z.clone() * &half));
        // Γ(m + w) = Γ(w)·(w)_m
        let gamma_w = ln_gamma(&w).exp();
        let mut poch = Complex::<T>::one();
        let mut sum = Complex::<T>::zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if m > 0 {
                poch = poch * (w.clone() + Complex::real(T::from_i64(m as i64 - 1)));
            }
            if !c.is_zero() {
                sum = sum + poch.scale(&rational_to::<T>(c));
            }
        }
        let pi_pow = Complex::real_pow(&T::pi(), &(-w));
        (pi_pow * gamma_w * sum).scale(&half)
    }

    /// X with |f(x)| < 10^{−digits} for every x ≥ X.
    pub fn decay_radius(&self, digits: u32) -> f64 {
        let mags: Vec<f64> = self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::MAX)).collect();
        let target = -(f64::from(digits) * std::f64::consts::LN_10);
        // log of the bound Σ|c_m| y^m e^{−y}, decreasing once y > degree
        let log_bound = |y: f64| {
            let s: f64 = mags.iter().enumerate().map(|(m, c)| c * y.powi(m as i32)).sum();
            s.ln() - y
        };
        let mut y = (self.degree() as f64).max(1.0) + 1.0;
        while log_bound(y) > target {
            y *= 1.25;
        }
        (y / std::f64::consts::PI).sqrt()
    }
}

impl fmt::Display for TestFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: (", self.name)?;
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}·y^{m}")?;
        }
        f.write_str(")·e^-y, y = πx²")
    }
}

/// Terms and digits used when summing ℰ and Σ_μ.
fn working_digits<T: Real>(ctx: &NumContext) -> u32 {
    ctx.effective_digits::<T>() + 5
}

/// (ℰf)(u) = u^{1/2} Σ_{n≥1} f(nu), summed until nu passes the decay radius.
pub fn map_e<T: Real>(f: &TestFn, u: &T, ctx: &NumContext) -> Result<T> {
    if !(u.clone() > T::zero()) {
        return Err(Error::invalid("ℰf(u) needs u > 0"));
    }
    let radius = T::from_f64(f.decay_radius(working_digits::<T>(ctx)));
    let mut sum = T::zero();
    let mut n = 1i64;
    loop {
        let x = u.clone() * T::from_i64(n);
        if x > radius {
            break;
        }
        sum += f.eval(&x);
        n += 1;
    }
    Ok(sum * u.sqrt())
}

/// log u range outside which ℰf is below working precision: above by the
/// decay of f, below (through Poisson, ℰf(u) = ℰf̂(1/u)) by the decay of f̂.
pub fn log_support<T: Real>(f: &TestFn, ctx: &NumContext) -> (f64, f64) {
    let d = working_digits::<T>(ctx);
    let hi = f.decay_radius(d).ln() + 0.5;
    let lo = -(f.fourier().decay_radius(d).ln() + 0.5);
    (lo, hi)
}

/// Samples of a function on the circle ℝ₊*/μ^ℤ at u_i = μ^{i/M}.
#[derive(Clone, Debug)]
pub struct CircleFn<T> {
    /// L = log μ.
    pub l: T,
    pub samples: Vec<T>,
}

impl<T: Real> CircleFn<T> {
    /// ⟨χ_n, g⟩ = (1/L) ∫_0^L g(e^t) e^{−2πint/L} dt by the trapezoidal
    /// rule, spectrally accurate for smooth periodic g.
    pub fn coefficient(&self, n: i64) -> Complex<T> {
        let m = self.samples.len() as i64;
        let mut acc = Complex::<T>::zero();
        for (i, g) in self.samples.iter().enumerate() {
            // reduce the phase index exactly before converting
            let r = (n * i as i64).rem_euclid(m);
            let theta = -(T::pi() * T::from_i64(2 * r)) / T::from_i64(m);
            acc = acc + Complex::cis(&theta).scale(g);
        }
        acc.scale(&(T::one() / T::from_i64(m)))
    }

    /// Values reconstructed at the sample points from the M coefficients
    /// -⌊(M-1)/2⌋..=⌊M/2⌋.
    pub fn resynthesize(&self) -> Vec<T> {
        let m = self.samples.len() as i64;
        let half = (m - 1) / 2;
        let coeffs: Vec<(i64, Complex<T>)> = (-half..=m - 1 - half).map(|n| (n, self.coefficient(n))).collect();
        (0..m)
            .map(|i| {
                coeffs
                    .iter()
                    .fold(T::zero(), |acc, (n, c)| {
                        let r = (n * i).rem_euclid(m);
                        let theta = T::pi() * T::from_i64(2 * r) / T::from_i64(m);
                        acc + (c.clone() * Complex::cis(&theta)).re
                    })
            })
            .collect()
    }
}

/// Σ_μ ℰf sampled at M points, with the k-range [k_lo, k_hi] given.
pub fn sigma_mu_e_window<T: Real>(
    f: &TestFn,
    mu: &T,
    grid_size: usize,
    k_lo: i64,
    k_hi: i64,
    ctx: &NumContext,
) -> Result<CircleFn<T>> {
    if !(mu.clone() > T::one()) {
        return Err(Error::invalid("Σ_μ needs μ > 1"));
    }
    if grid_size == 0 {
        return Err(Error::invalid("grid size must be positive"));
    }
    let l = mu.ln();
    let samples = (0..grid_size)
        .map(|i| {
            let t = l.clone() * T::from_i64(i as i64) / T::from_i64(grid_size as i64);
            let mut s = T::zero();
            for k in k_lo..=k_hi {
                let u = (t.clone() + l.clone() * T::from_i64(k)).exp();
                s += map_e(f, &u, ctx)?;
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(CircleFn { l, samples })
}

/// The k-window covering the support of ℰf for circles of length L.
pub fn sigma_window<T: Real>(f: &TestFn, l: &T, ctx: &NumContext) -> (i64, i64) {
    let (lo, hi) = log_support::<T>(f, ctx);
    let lf = l.to_f64();
    ((lo / lf).floor() as i64 - 1, (hi / lf).ceil() as i64)
}

/// (Σ_μ ℰf)(u) = Σ_k ℰf(μ^k u) on a log-uniform grid of M points.
pub fn sigma_mu_e<T: Real>(f: &TestFn, mu: &T, grid_size: usize, ctx: &NumContext) -> Result<CircleFn<T>> {
    let (k_lo, k_hi) = sigma_window(f, &mu.ln(), ctx);
    sigma_mu_e_window(f, mu, grid_size, k_lo, k_hi, ctx)
}

/// Both sides of ∫ ℰf(u) u^{−iz} d*u = ζ(½ − iz) ψ(z).
#[derive(Clone, Debug)]
pub struct MellinCheck<T> {
    pub lhs: Complex<T>,
    pub rhs: Complex<T>,
}

impl<T: Real> MellinCheck<T> {
    pub fn relative_error(&self) -> T {
        let scale = T::max_of(self.rhs.abs(), T::epsilon());
        (self.lhs.clone() - self.rhs.clone()).abs() / scale
    }
}

/// Left side by quadrature in t = log u, right side in closed form.
pub fn mellin_factorization<T: Real>(f: &TestFn, z: &T, ctx: &NumContext) -> Result<MellinCheck<T>> {
    let (lo, hi) = log_support::<T>(f, ctx);
    let mut err = None;
    let integrand = |t: &T| {
        let v = match map_e(f, &t.exp(), ctx) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                T::zero()
            }
        };
        let (s, c) = (z.clone() * t).sin_cos();
        vec![v.clone() * c, -(v * s)]
    };
    let panels = 4 + (z.to_f64().abs() * (hi - lo) / 6.0) as usize;
    let opts = QuadOptions {
        panels,
        ..Default::default()
    };
    let parts = integrate_vec(integrand, 2, &T::from_f64(lo), &T::from_f64(hi), ctx, &opts)?;
    if let Some(e) = err {
        return Err(e);
    }
    let lhs = Complex::new(parts[0].clone(), parts[1].clone());
    let rhs = zeta_critical(&-z.clone(), ctx) * f.mellin(z);
    Ok(MellinCheck { lhs, rhs })
}

/// Character coefficient of Σ_μ ℰf for one test function.
#[derive(Clone, Debug, Serialize)]
pub struct Coefficient<T> {
    pub name: String,
    pub modulus: T,
}

/// Outcome of a zeta-cycle test at (s, L).
#[derive(Clone, Debug, Serialize)]
pub struct ZetaCycleReport<T> {
    pub s: T,
    pub l: T,
    /// sL/2π, the character index on the circle.
    pub n_cover: i64,
    pub coefficients: Vec<Coefficient<T>>,
    pub max_modulus: T,
    /// All coefficients below the vanishing threshold.
    pub vanishes: bool,
}

/// Default vanishing threshold for character coefficients.
pub const VANISHING_THRESHOLD: f64 = 1e-8;

/// Samples per circle used for the character coefficients.
pub const CIRCLE_GRID: usize = 48;

/// ⟨u^{is}, Σ_μ ℰf⟩ on the circle of length `l`; requires μ^{is} = 1.
pub fn zeta_cycle_check_at<T: Real>(
    s: &T,
    l: &T,
    family: &[TestFn],
    ctx: &NumContext,
) -> Result<ZetaCycleReport<T>> {
    if !(s.clone() > T::zero()) || !(l.clone() > T::zero()) {
        return Err(Error::invalid("s and L must be positive"));
    }
    if family.is_empty() {
        return Err(Error::invalid("empty test family"));
    }
    let turns = s.clone() * l / (T::pi() * T::from_i64(2));
    let n = turns.to_f64().round() as i64;
    if n < 1 || (turns - T::from_i64(n)).abs() > ctx.tol::<T>(5) {
        return Err(Error::invalid(format!(
            "μ^(is) ≠ 1: sL/2π = {:.12} is not an integer",
            (s.clone() * l / (T::pi() * T::from_i64(2))).to_f64()
        )));
    }
    let mu = l.exp();
    let coefficients = family
        .iter()
        .map(|f| {
            let c = sigma_mu_e(f, &mu, CIRCLE_GRID, ctx)?.coefficient(n);
            Ok(Coefficient {
                name: f.name.clone(),
                modulus: c.abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_modulus = coefficients.iter().fold(T::zero(), |m, c| T::max_of(m, c.modulus.clone()));
    Ok(ZetaCycleReport {
        s: s.clone(),
        l: l.clone(),
        n_cover: n,
        vanishes: max_modulus.to_f64() < VANISHING_THRESHOLD,
        max_modulus,
        coefficients,
    })
}

/// The check on the n-fold circle L = 2πn/s.
pub fn zeta_cycle_check<T: Real>(
    s: &T,
    n_cover: usize,
    family: &[TestFn],
    ctx: &NumContext,
) -> Result<ZetaCycleReport<T>> {
    if n_cover == 0 {
        return Err(Error::invalid("n_cover must be positive"));
    }
    let l = T::pi() * T::from_i64(2 * n_cover as i64) / s;
    zeta_cycle_check_at(s, &l, family, ctx)
}

/// A circle length predicted by a zero, L = 2πn/ζ_j.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeLength<T> {
    pub zero_index: usize,
    pub n: usize,
    pub report: ZetaCycleReport<T>,
}

/// Off-lattice control length: all characters with s ≤ s_max.
#[derive(Clone, Debug, Serialize)]
pub struct ControlLength<T> {
    pub l: T,
    pub reports: Vec<ZetaCycleReport<T>>,
    /// Some character coefficient vanished.
    pub any_vanishing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HlScan<T> {
    pub lattice: Vec<LatticeLength<T>>,
    pub controls: Vec<ControlLength<T>>,
}

/// Lengths L ∈ [l_min, l_max] of the form 2πn/ζ_j with ζ_j ≤ s_max, each
/// confirmed by [`zeta_cycle_check`], plus the control lengths.
pub fn hl_nonzero_scan<T: Real>(
    l_min: &T,
    l_max: &T,
    s_max: &T,
    zeros: &[T],
    controls: &[T],
    family: &[TestFn],
    ctx: &NumContext,
) -> Result<HlScan<T>> {
    let two_pi = T::pi() * T::from_i64(2);
    let mut lattice = Vec::new();
    for (j, z) in zeros.iter().enumerate().take_while(|(_, z)| *z <= s_max) {
        let base = two_pi.clone() / z;
        let first = (l_min.clone() / &base).to_f64().ceil().max(1.0) as usize;
        let mut n = first;
        while base.clone() * T::from_i64(n as i64) <= *l_max {
            lattice.push(LatticeLength {
                zero_index: j + 1,
                n,
                report: zeta_cycle_check(z, n, family, ctx)?,
            });
            n += 1;
        }
    }
    let controls = controls
        .iter()
        .map(|l| {
            let top = (s_max.clone() * l / &two_pi).to_f64().floor() as i64;
            let reports = (1..=top.max(1))
                .map(|n| zeta_cycle_check_at(&(two_pi.clone() * T::from_i64(n) / l), l, family, ctx))
                .collect::<Result<Vec<_>>>()?;
            Ok(ControlLength {
                l: l.clone(),
                any_vanishing: reports.iter().any(|r| r.vanishes),
                reports,
            })
        })
        .collect::<Result<_>>()?;
    Ok(HlScan { lattice, controls })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_satisfies_constraints() {
        for f in TestFn::family(8) {
            assert!(TestFn::new(f.name.clone(), f.coeffs.clone()).is_ok());
            assert_eq!(f.eval(&0.0f64), 0.0);
        }
        assert!(TestFn::family_member(1).is_err());
        assert!(TestFn::new("bad", vec![ratio(0, 1), ratio(1, 1)]).is_err());
    }

    #[test]
    fn special_function_is_a_family_multiple() {
        let f2 = TestFn::family_member(2).unwrap();
        let s = TestFn::special();
        for x in [0.2f64, 0.7, 1.3] {
            assert!((s.eval(&x) + 2.0 * f2.eval(&x)).abs() < 1e-14);
        }
    }

    #[test]
    fn fourier_of_simple_terms() {
        // πx² e^{−πx²} ↦ (½ − πξ²) e^{−πξ²}
        let f = TestFn {
            name: "t".into(),
            coeffs: vec![ratio(0, 1), ratio(1, 1)],
        };
        assert_eq!(f.fourier().coeffs, vec![ratio(1, 2), ratio(-1, 1)]);
        // transforming twice gives back f for even f
        let g = TestFn::family_member(4).unwrap();
        assert_eq!(g.fourier().fourier().coeffs, g.coeffs);
        assert!(g.fourier().coeffs[0].is_zero());
    }

    #[test]
    fn decay_radius_bounds_values() {
        let f = TestFn::family_member(5).unwrap();
        let x = f.decay_radius(30);
        assert!(f.eval(&x).abs() < 1e-30);
        assert!(f.eval(&(x * 1.3)).abs() < 1e-30);
    }

    #[test]
    fn circle_coefficients_of_a_pure_character() {
        let l = 0.8f64;
        let m = 16;
        let samples = (0..m)
            .map(|i| (2.0 * std::f64::consts::PI * 3.0 * i as f64 / m as f64).cos())
            .collect();
        let c = CircleFn { l, samples };
        assert!((c.coefficient(3).re - 0.5).abs() < 1e-14);
        assert!(c.coefficient(2).abs() < 1e-14);
        let back = c.resynthesize();
        assert!(back.iter().zip(&c.samples).all(|(a, b)| (a - b).abs() < 1e-13));
    }
}
