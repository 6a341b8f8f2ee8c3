//! The semi-local Weil quadratic form σ = σ⁺ ⊕ σ⁻ in the basis ξ_n and
//! the positivity scans built on it.
//!
//! For same-parity indices, σ(n, m) = W₀₂(h) − W_ℝ(h) − Σ_p W_p(h) where
//! h = ξ_n∗ξ_m^* + ξ_m∗ξ_n^* is evaluated from its closed form on [0, L].
//! Cross-parity entries vanish identically and are never stored.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::Parity;
use crate::error::{Error, Result};
use crate::numkernel::quad::QuadOptions;
use crate::numkernel::{
    digamma, integrate_vec, sym_eigenvalues, theta_siegel_deriv, von_mangoldt_range, Complex,
    NumContext, Real, SymMatrix,
};

fn pair_parity(n: i64, m: i64) -> Result<Parity> {
    let p = Parity::of(n);
    if p != Parity::of(m) {
        return Err(Error::invalid(format!(
            "({n}, {m}) is an identically zero pair: the form does not couple even and odd indices"
        )));
    }
    Ok(p)
}

/// ½(ξ_n∗ξ_m^* + ξ_m∗ξ_n^*)(y) for a same-parity pair and 0 ≤ y ≤ L.
fn half_sum<T: Real>(n: i64, m: i64, l: &T, y: &T) -> T {
    let pi = T::pi();
    let w = pi.clone() * T::from_i64(2) * y / l;
    let s = |k: i64| (w.clone() * T::from_i64(k)).sin();
    let ramp = (l.clone() - y) / l;
    let (n, m) = if n.abs() <= m.abs() { (n, m) } else { (m, n) };
    if n == m {
        if n == 0 {
            return ramp;
        }
        let c = (w.clone() * T::from_i64(n)).cos() * ramp;
        let sn = s(n) / (pi * T::from_i64(2 * n));
        return if n > 0 { c - sn } else { c + sn };
    }
    if n == 0 {
        return -(s(m) / (T::from_i64(2).sqrt() * pi * T::from_i64(m)));
    }
    let den = pi * T::from_i64(m * m - n * n);
    if n > 0 {
        (T::from_i64(n) * s(n) - T::from_i64(m) * s(m)) / den
    } else {
        (T::from_i64(m) * s(n) - T::from_i64(n) * s(m)) / den
    }
}

/// ½(ξ_n∗ξ_m^* + ξ_m∗ξ_n^*)(y), the closed form of the symmetrised
/// convolution. Even in y and supported in [−L, L].
pub fn theta_sym<T: Real>(n: i64, m: i64, l: &T, y: &T) -> Result<T> {
    pair_parity(n, m)?;
    let y = y.abs();
    if y >= *l {
        return Ok(T::zero());
    }
    Ok(half_sum(n, m, l, &y))
}

/// Coefficient v_n with W₀₂(n, m) = ±v_n v_m (+ on the even block).
fn w02_factor<T: Real>(n: i64, l: &T) -> T {
    let pi = T::pi();
    let sh = (l.clone() / T::from_i64(4)).sinh();
    let den = l.sqr() + pi.sqr() * T::from_i64(16 * n * n);
    let two = T::from_i64(2);
    if n == 0 {
        // √2 · 4 sinh(L/4)/√L
        return two.sqrt() * T::from_i64(4) * sh / l.sqrt();
    }
    let root = (two.clone() / l).sqrt() * two.sqrt();
    if n > 0 {
        root * T::from_i64(4) * l.sqr() * sh / den
    } else {
        root * T::from_i64(16) * pi * T::from_i64(n) * l * sh / den
    }
}

/// Pole contribution F̂(i/2) + F̂(−i/2) of the pair (n, m).
///
/// Even block: 16L³ e^{−L/2}(e^{L/2}−1)² / ((L²+16π²n²)(L²+16π²m²)) for
/// n, m > 0 (with the ξ_0 normalisation when an index is 0). Odd block:
/// −256π²L e^{−L/2}(e^{L/2}−1)² nm / ((L²+16π²n²)(L²+16π²m²)).
pub fn w02_term<T: Real>(n: i64, m: i64, l: &T) -> Result<T> {
    let p = pair_parity(n, m)?;
    let v = w02_factor(n, l) * w02_factor(m, l);
    Ok(match p {
        Parity::Even => v,
        Parity::Odd => -v,
    })
}

/// Constant multiplying θ_sym(0)/2 in W_ℝ: γ + log(4π(e^L − 1)/(e^L + 1)).
pub fn archimedean_constant<T: Real>(l: &T) -> T {
    let em1 = l.exp_m1();
    let tanh_half = em1.clone() / (em1 + T::from_i64(2));
    T::euler_gamma() + (T::pi() * T::from_i64(4)).ln() + tanh_half.ln()
}

/// The integrals entering W_ℝ for every index up to `j_max`:
///
/// S_j = ∫_0^L e^{x/2} sin(2πjx/L) / (2 sinh x) dx,
/// C_j = ∫_0^L (e^{x/2}(1 − x/L) cos(2πjx/L) − 1) / (2 sinh x) dx.
#[derive(Clone, Debug)]
pub struct ArchimedeanTable<T> {
    pub l: T,
    pub kappa: T,
    pub sin_moments: Vec<T>,
    pub cos_moments: Vec<T>,
}

impl<T: Real> ArchimedeanTable<T> {
    pub fn new(l: &T, j_max: usize, ctx: &NumContext) -> Result<Self> {
        if *l <= T::zero() {
            return Err(Error::invalid("circle length L must be positive"));
        }
        let count = j_max + 1;
        let pi_over_l = T::pi() / l;
        let f = |x: &T| {
            let half = x.clone() / T::from_i64(2);
            let e = half.exp();
            let em1 = half.exp_m1();
            let d = x.sinh() * T::from_i64(2);
            let ramp = T::one() - x.clone() / l;
            let x_over_l = x.clone() / l;
            let (s1, c1) = (pi_over_l.clone() * x).sin_cos();
            let (mut u, mut v) = (T::zero(), T::one());
            let mut out = vec![T::zero(); 2 * count];
            for j in 0..count {
                // u = sin(jπx/L), v = cos(jπx/L)
                let sin_full = u.clone() * &v * T::from_i64(2);
                let two_u2 = u.sqr() * T::from_i64(2);
                let cos_full = T::one() - &two_u2;
                out[j] = e.clone() * sin_full / &d;
                // e^{x/2}(1−x/L)cos − 1 without cancellation near x = 0
                out[count + j] =
                    (em1.clone() * &ramp * cos_full - two_u2 * &ramp - &x_over_l) / &d;
                let nu = u.clone() * &c1 + v.clone() * &s1;
                v = v * &c1 - u * &s1;
                u = nu;
            }
            out
        };
        let opts = QuadOptions {
            panels: j_max / 2 + 2,
            ..Default::default()
        };
        let mut all = integrate_vec(f, 2 * count, &T::zero(), l, ctx, &opts)?;
        let cos_moments = all.split_off(count);
        Ok(ArchimedeanTable {
            l: l.clone(),
            kappa: archimedean_constant(l),
            sin_moments: all,
            cos_moments,
        })
    }

    pub fn j_max(&self) -> usize {
        self.sin_moments.len() - 1
    }

    /// W_ℝ for the pair (n, m).
    pub fn entry(&self, n: i64, m: i64) -> Result<T> {
        pair_parity(n, m)?;
        let k = n.unsigned_abs().max(m.unsigned_abs()) as usize;
        if k > self.j_max() {
            return Err(Error::invalid(format!(
                "index {k} beyond the tabulated range {}",
                self.j_max()
            )));
        }
        Ok(self.entry_unchecked(n, m))
    }

    fn entry_unchecked(&self, n: i64, m: i64) -> T {
        let pi = T::pi();
        let two = T::from_i64(2);
        let s = |k: i64| self.sin_moments[k.unsigned_abs() as usize].clone();
        let c = |k: i64| self.cos_moments[k.unsigned_abs() as usize].clone();
        let (n, m) = if n.abs() <= m.abs() { (n, m) } else { (m, n) };
        if n == m {
            // θ_sym(0) = 2 on the diagonal
            let corr = if n == 0 {
                T::zero()
            } else {
                s(n) / (pi * T::from_i64(2 * n.abs()))
            };
            let integral = if n >= 0 { c(n) - corr } else { c(n) + corr };
            return self.kappa.clone() + two * integral;
        }
        if n == 0 {
            return -(two.clone() * s(m) / (two.sqrt() * pi * T::from_i64(m)));
        }
        let den = pi * T::from_i64(m * m - n * n);
        if n > 0 {
            two * (T::from_i64(n) * s(n) - T::from_i64(m) * s(m)) / den
        } else {
            // sin(2πny/L) = −sin(2π|n|y/L) for n < 0
            two * (T::from_i64(n) * s(m) - T::from_i64(m) * s(n)) / den
        }
    }
}

/// Archimedean term W_ℝ(n, m) = (θ_sym(0)/2)·κ + ∫_0^L (e^{x/2}θ_sym(x) − θ_sym(0)) / (2 sinh x) dx.
pub fn w_archimedean<T: Real>(n: i64, m: i64, l: &T, ctx: &NumContext) -> Result<T> {
    pair_parity(n, m)?;
    let k = n.unsigned_abs().max(m.unsigned_abs()) as usize;
    ArchimedeanTable::new(l, k, ctx)?.entry(n, m)
}

/// Which terms of the explicit formula enter σ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhichTerms {
    pub w02: bool,
    pub archimedean: bool,
    pub primes: bool,
    /// Replace the prime sum by the single term of a real "prime" p.
    pub p_real: Option<f64>,
    /// Primes whose powers are dropped from the prime sum.
    pub exclude_primes: Vec<u64>,
    /// Drop the single term of the largest prime power ≤ μ.
    pub exclude_newest: bool,
}

impl WhichTerms {
    /// W₀₂ − W_ℝ − Σ_p W_p.
    pub fn full() -> Self {
        WhichTerms {
            w02: true,
            archimedean: true,
            primes: true,
            p_real: None,
            exclude_primes: Vec::new(),
            exclude_newest: false,
        }
    }

    /// W₀₂ − W_ℝ: the contribution of the archimedean place alone.
    pub fn archimedean_only() -> Self {
        WhichTerms {
            primes: false,
            ..Self::full()
        }
    }

    /// Full form with the sum over primes replaced by one real value p.
    pub fn with_real_prime(p: f64) -> Self {
        WhichTerms {
            p_real: Some(p),
            ..Self::full()
        }
    }
}

impl Default for WhichTerms {
    fn default() -> Self {
        Self::full()
    }
}

impl fmt::Display for WhichTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.w02 {
            parts.push("w02".into());
        }
        if self.archimedean {
            parts.push("arch".into());
        }
        if self.primes {
            parts.push("primes".into());
        }
        if let Some(p) = self.p_real {
            parts.push(format!("p={p}"));
        }
        for p in &self.exclude_primes {
            parts.push(format!("exclude={p}"));
        }
        if self.exclude_newest {
            parts.push("exclude=newest".into());
        }
        if parts.is_empty() {
            parts.push("none".into());
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for WhichTerms {
    type Err = Error;

    /// Accepts `full`, `arch-only`, or `+`/`,`-separated tokens among
    /// `w02`, `arch`, `primes`, `p=<real>`, `exclude=<prime>`,
    /// `exclude=newest`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "full" => return Ok(Self::full()),
            "arch-only" | "archimedean" => return Ok(Self::archimedean_only()),
            _ => {}
        }
        let mut t = WhichTerms {
            w02: false,
            archimedean: false,
            primes: false,
            p_real: None,
            exclude_primes: Vec::new(),
            exclude_newest: false,
        };
        for tok in s.split(['+', ',']).map(str::trim).filter(|x| !x.is_empty()) {
            match tok {
                "w02" => t.w02 = true,
                "arch" => t.archimedean = true,
                "primes" => t.primes = true,
                "full" => {
                    t.w02 = true;
                    t.archimedean = true;
                    t.primes = true;
                }
                "none" => {}
                _ => {
                    if let Some(v) = tok.strip_prefix("p=") {
                        let p: f64 =
                            v.parse().map_err(|_| Error::Parse(format!("bad real prime '{v}'")))?;
                        if !(p > 1.0) {
                            return Err(Error::invalid(format!("real prime must exceed 1, got {p}")));
                        }
                        t.p_real = Some(p);
                        t.primes = true;
                    } else if let Some(v) = tok.strip_prefix("exclude=") {
                        if v == "newest" {
                            t.exclude_newest = true;
                        } else {
                            let p: u64 = v
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad prime to exclude '{v}'")))?;
                            t.exclude_primes.push(p);
                        }
                    } else {
                        return Err(Error::Parse(format!("unknown term '{tok}'")));
                    }
                }
            }
        }
        Ok(t)
    }
}

fn smallest_prime_factor(k: u64) -> u64 {
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            return d;
        }
        d += 1;
    }
    k
}

/// Points y = log k and weights 2Λ(k)k^{−1/2} of the prime sum for μ = e^L.
fn prime_nodes<T: Real>(mu: &T, l: &T, mode: &WhichTerms) -> Result<Vec<(T, T)>> {
    if !mode.primes {
        return Ok(Vec::new());
    }
    let two = T::from_i64(2);
    if let Some(p) = mode.p_real {
        let p = T::parse(&p.to_string())?;
        let y = p.ln();
        if y >= *l {
            return Ok(Vec::new());
        }
        let w = two * &y / p.sqrt();
        return Ok(vec![(y, w)]);
    }
    let terms = von_mangoldt_range(mu);
    let newest = if mode.exclude_newest {
        terms.last().map(|(k, _)| *k)
    } else {
        None
    };
    Ok(terms
        .into_iter()
        .filter(|(k, _)| {
            let p = smallest_prime_factor(*k);
            !mode.exclude_primes.contains(&p) && Some(*k) != newest
        })
        .map(|(k, lam)| {
            let kk = T::from_i64(k as i64);
            (kk.ln(), two.clone() * lam / kk.sqrt())
        })
        .collect())
}

fn prime_entry<T: Real>(n: i64, m: i64, l: &T, nodes: &[(T, T)]) -> T {
    let mut acc = T::zero();
    for (y, w) in nodes {
        if *y < *l {
            acc += w.clone() * half_sum(n, m, l, y);
        }
    }
    acc
}

/// Prime term Σ_{1<k≤e^L} Λ(k) k^{−1/2} θ_sym-pair(log k), or with `p_real`
/// the single term p^{−1/2} log p · (θ(log p) + θ(−log p)).
pub fn w_primes<T: Real>(n: i64, m: i64, l: &T, p_real: Option<f64>) -> Result<T> {
    pair_parity(n, m)?;
    let mode = WhichTerms {
        p_real,
        ..WhichTerms::full()
    };
    let nodes = prime_nodes(&l.exp(), l, &mode)?;
    Ok(prime_entry(n, m, l, &nodes))
}

/// The two blocks of σ at μ = e^L, truncated to |n| ≤ N.
#[derive(Clone, Debug)]
pub struct WeilMatrix<T> {
    pub mu: T,
    pub l: T,
    pub n: usize,
    pub mode: WhichTerms,
    /// Indices 0..=N.
    pub sigma_plus: SymMatrix<T>,
    /// Indices −1..=−N.
    pub sigma_minus: SymMatrix<T>,
}

impl<T: Real> WeilMatrix<T> {
    pub fn block(&self, p: Parity) -> &SymMatrix<T> {
        match p {
            Parity::Even => &self.sigma_plus,
            Parity::Odd => &self.sigma_minus,
        }
    }

    /// σ(n, m), zero across parities.
    pub fn entry(&self, n: i64, m: i64) -> T {
        if Parity::of(n) != Parity::of(m) {
            return T::zero();
        }
        self.block(Parity::of(n))
            .get(Parity::position(n), Parity::position(m))
            .clone()
    }

    /// The same form restricted to |n| ≤ k.
    pub fn truncated(&self, k: usize) -> Self {
        let k = k.min(self.n);
        WeilMatrix {
            mu: self.mu.clone(),
            l: self.l.clone(),
            n: k,
            mode: self.mode.clone(),
            sigma_plus: self.sigma_plus.leading(k + 1),
            sigma_minus: self.sigma_minus.leading(k),
        }
    }

    /// Smallest eigenvalues of σ⁺ and σ⁻.
    pub fn smallest_eigenvalues(&self, ctx: &NumContext) -> Result<(T, T)> {
        let even = sym_eigenvalues(&self.sigma_plus, ctx)?;
        let odd = sym_eigenvalues(&self.sigma_minus, ctx)?;
        Ok((even[0].clone(), odd[0].clone()))
    }

    /// Writes both blocks as decimal text, preceded by a header.
    pub fn write_decimal<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# mu {}", self.mu.to_decimal())?;
        writeln!(w, "# N {}", self.n)?;
        writeln!(w, "# mode {}", self.mode)?;
        writeln!(w, "# block even")?;
        self.sigma_plus.write_decimal(&mut w)?;
        writeln!(w, "# block odd")?;
        self.sigma_minus.write_decimal(&mut w)?;
        Ok(())
    }
}

/// Assembles σ⁺ and σ⁻ at μ for |n| ≤ N with the selected terms.
pub fn assemble_sigma<T: Real>(
    mu: &T,
    n: usize,
    mode: &WhichTerms,
    ctx: &NumContext,
) -> Result<WeilMatrix<T>> {
    if *mu <= T::one() {
        return Err(Error::invalid(format!("mu must exceed 1, got {mu}")));
    }
    if n == 0 || n > ctx.trunc_n {
        return Err(Error::invalid(format!(
            "truncation N = {n} outside 1..={}",
            ctx.trunc_n
        )));
    }
    let l = mu.ln();
    let arch = if mode.archimedean {
        Some(ArchimedeanTable::new(&l, n, ctx)?)
    } else {
        None
    };
    let nodes = prime_nodes(mu, &l, mode)?;
    let entry = |a: i64, b: i64| {
        let mut v = T::zero();
        if mode.w02 {
            v += w02_factor(a, &l) * w02_factor(b, &l) * T::from_i64(Parity::of(a).sign() as i64);
        }
        if let Some(t) = &arch {
            v -= t.entry_unchecked(a, b);
        }
        v - prime_entry(a, b, &l, &nodes)
    };
    let block = |p: Parity| {
        SymMatrix::from_fn(p.block_dim(n), |i, j| entry(p.index(i), p.index(j)))
    };
    Ok(WeilMatrix {
        mu: mu.clone(),
        l: l.clone(),
        n,
        mode: mode.clone(),
        sigma_plus: block(Parity::Even),
        sigma_minus: block(Parity::Odd),
    })
}

/// One point of a positivity scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanPoint<T> {
    pub mu: T,
    pub min_even: T,
    pub min_odd: T,
}

/// Smallest eigenvalue of σ⁺ and σ⁻ at every μ in `mus`.
///
/// Points are evaluated in parallel; the output order follows `mus`.
pub fn positivity_scan<T: Real>(
    mus: &[T],
    n: usize,
    mode: &WhichTerms,
    ctx: &NumContext,
) -> Result<Vec<ScanPoint<T>>> {
    mus.par_iter()
        .map(|mu| {
            let _g = ctx.install();
            let w = assemble_sigma(mu, n, mode, ctx)?;
            let (min_even, min_odd) = w.smallest_eigenvalues(ctx)?;
            Ok(ScanPoint {
                mu: mu.clone(),
                min_even,
                min_odd,
            })
        })
        .collect()
}

/// sin(a)·g_n(a), where ξ̂_n(2a/L) = ∓√(L/2)·sin(a)·g_n(a); written
/// through sinc so the removable poles at a = π|n| cost no accuracy.
fn sin_times_g<T: Real>(n: i64, a: &T) -> T {
    let sinc = |x: T| if x.is_zero() { T::one() } else { x.sin() / x };
    let pi = T::pi();
    if n == 0 {
        return -(T::from_i64(2).sqrt() * sinc(a.clone()));
    }
    let k = n.abs();
    let pk = pi.clone() * T::from_i64(k);
    let num = if n > 0 { a.clone() * T::from_i64(2) } else { pk.clone() * T::from_i64(2) };
    let v = num * sinc(pk.clone() - a) / (pk + a);
    if k % 2 == 0 {
        -v
    } else {
        v
    }
}

/// g_n at a complex point (used only away from its real poles).
fn g_complex<T: Real>(n: i64, a: &Complex<T>) -> Complex<T> {
    let pi = T::pi();
    if n == 0 {
        return a.recip().scale(&-T::from_i64(2).sqrt());
    }
    let k = n.abs();
    let pk2 = (pi.clone() * T::from_i64(k)).sqr();
    let den = Complex::real(pk2) - a.sqr();
    let num = if n > 0 {
        a.scale(&T::from_i64(2))
    } else {
        Complex::real(pi * T::from_i64(2 * k))
    };
    num / den
}

/// θ'(t) continued analytically to complex t.
fn theta_deriv_complex<T: Real>(t: &Complex<T>) -> Complex<T> {
    let quarter = Complex::real(T::from_ratio(1, 4));
    let it_half = (Complex::i() * t.clone()).scale(&T::from_ratio(1, 2));
    let sum = digamma(&(quarter.clone() + it_half.clone())) + digamma(&(quarter - it_half));
    sum.scale(&T::from_ratio(1, 4)) - Complex::real(T::pi().ln() / T::from_i64(2))
}

/// W_ℝ on the pairs of `indices` through the spectral formula
/// −W_ℝ(F) = ∫ F̂(t) θ'(t)/π dt, which for the basis reads
///
/// W_ℝ(n, m) = −(2/π) ∫_0^∞ sin²(a) g_n(a) g_m(a) θ'(2a/L) da.
///
/// The range [0, A] with A a multiple of π is integrated directly. Past A
/// the integrand is split as sin² = (1 − cos 2a)/2: the smooth half is
/// integrated after a = A·e^s, the oscillating half along the vertical ray
/// a = A + iy where it decays like e^{−2y}.
pub fn w_archimedean_spectral<T: Real>(
    indices: &[i64],
    l: &T,
    ctx: &NumContext,
) -> Result<SymMatrix<T>> {
    let Some(&first) = indices.first() else {
        return Err(Error::invalid("no indices"));
    };
    for &n in indices {
        pair_parity(first, n)?;
    }
    let d = indices.len();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let k_max = indices.iter().map(|n| n.abs()).max().unwrap_or(0);
    let pi = T::pi();
    let a_cut = pi.clone() * T::from_i64(k_max + 2);
    let two_over_l = T::from_i64(2) / l;
    let digits = f64::from(ctx.effective_digits::<T>());
    let span = digits * std::f64::consts::LN_10 + 10.0;

    let near = |a: &T| {
        let h: Vec<T> = indices.iter().map(|&n| sin_times_g(n, a)).collect();
        let th = theta_siegel_deriv(&(two_over_l.clone() * a), ctx);
        pairs.iter().map(|&(i, j)| h[i].clone() * &h[j] * &th).collect::<Vec<T>>()
    };
    let opts = QuadOptions {
        panels: (k_max + 2) as usize,
        ..Default::default()
    };
    let head = integrate_vec(near, pairs.len(), &T::zero(), &a_cut, ctx, &opts)?;

    let smooth = |s: &T| {
        let a = a_cut.clone() * s.exp();
        let g: Vec<T> = indices.iter().map(|&n| g_complex(n, &Complex::real(a.clone())).re).collect();
        let th = theta_siegel_deriv(&(two_over_l.clone() * &a), ctx) * &a;
        pairs.iter().map(|&(i, j)| g[i].clone() * &g[j] * &th).collect::<Vec<T>>()
    };
    let opts = QuadOptions {
        panels: (span / 4.0).ceil() as usize,
        ..Default::default()
    };
    let tail_smooth = integrate_vec(smooth, pairs.len(), &T::zero(), &T::from_f64(span.ceil()), ctx, &opts)?;

    let ray = |y: &T| {
        let a = Complex::new(a_cut.clone(), y.clone());
        let g: Vec<Complex<T>> = indices.iter().map(|&n| g_complex(n, &a)).collect();
        let th = theta_deriv_complex(&a.scale(&two_over_l));
        let damp = (-(y.clone() * T::from_i64(2))).exp();
        pairs
            .iter()
            .map(|&(i, j)| (g[i].clone() * g[j].clone() * th.clone()).im * &damp)
            .collect::<Vec<T>>()
    };
    let y_max = T::from_f64((span / 2.0).ceil());
    let tail_osc = integrate_vec(ray, pairs.len(), &T::zero(), &y_max, ctx, &opts)?;

    // ∫_A^∞ cos(2a) G = Re(i e^{2iA} ∫_0^∞ e^{−2y} G(A+iy) dy) = −Im(…) since e^{2iA} = 1.
    let half = T::from_ratio(1, 2);
    let scale = -(T::from_i64(2) / pi);
    let mut out = SymMatrix::zeros(d);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let total = head[p].clone()
            + half.clone() * &tail_smooth[p]
            + half.clone() * &tail_osc[p];
        out.set(i, j, total * &scale);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_at_origin_is_one() {
        for n in [1i64, 4, -1, -3] {
            let v: f64 = theta_sym(n, n, &1.3, &0.0).unwrap();
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_zero_entry_is_a_ramp() {
        let v: f64 = theta_sym(0, 0, &2.0, &0.5).unwrap();
        assert!((v - 0.75).abs() < 1e-15);
    }

    #[test]
    fn cross_parity_is_rejected() {
        assert!(theta_sym(2i64, -1, &1.0f64, &0.1).is_err());
        assert!(w02_term(0i64, -2, &1.0f64).is_err());
    }

    #[test]
    fn vanishes_at_support_edge() {
        for (n, m) in [(0i64, 0i64), (1, 3), (2, 2), (-1, -2), (-2, -2)] {
            let v: f64 = half_sum(n, m, &1.7, &1.7);
            assert!(v.abs() < 1e-14, "({n}, {m}): {v}");
        }
    }

    #[test]
    fn odd_w02_diagonal_negative() {
        // For odd real f, ∫f e^{−x/2} = −∫f e^{x/2}, so the pole term is −2(∫f e^{x/2})².
        for l in [0.3f64, 1.0, 2.4] {
            let v = w02_term(-1, -1, &l).unwrap();
            let moment = crate::numkernel::integrate(
                |x: &f64| crate::basis::xi(-1, &l, x) * (x / 2.0).exp(),
                &(-l / 2.0),
                &(l / 2.0),
                &crate::NumContext::with_digits(30),
            )
            .unwrap();
            assert!(v < 0.0);
            assert!((v + 2.0 * moment * moment).abs() < 1e-12);
        }
    }

    #[test]
    fn mode_strings_round_trip() {
        for s in ["w02+arch", "w02+arch+primes", "w02+arch+primes+p=1.9999", "arch+primes+exclude=3"] {
            let m: WhichTerms = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert_eq!("full".parse::<WhichTerms>().unwrap(), WhichTerms::full());
        assert!("bogus".parse::<WhichTerms>().is_err());
    }

    #[test]
    fn no_primes_below_two() {
        let v: f64 = w_primes(1, 2, &1.5f64.ln(), None).unwrap();
        assert_eq!(v, 0.0);
    }
}
