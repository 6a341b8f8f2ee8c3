//! Even prolate spheroidal wave functions on [−λ, λ], their Fourier
//! characteristic values and the combinations that vanish at the origin.

use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numkernel::quad::{integrate_with, QuadOptions};
use crate::numkernel::{NumContext, Real};

/// Default χ threshold used for the cutoff ν(μ).
pub const NU_THRESHOLD: f64 = 0.9;

/// One even prolate function ψ_{m,λ}(x) = PS_{2m,0}(2πλ², x/λ), normalised
/// to unit L² norm on [−λ, λ].
///
/// `coeffs[k]` multiplies the orthonormal Legendre polynomial
/// √((4k+1)/2)·P_{2k}(x/λ)/√λ.
#[derive(Clone, Debug)]
pub struct ProlateFn<T> {
    pub m: usize,
    pub lambda: T,
    /// Bandwidth c = 2πλ².
    pub c: T,
    pub coeffs: Vec<T>,
    /// Eigenvalue of −((1−x²)ψ')' + c²x²ψ on [−1, 1].
    pub sturm_eigenvalue: T,
    /// Fourier characteristic value χ(λ², m).
    pub chi: T,
    basis: Arc<EvenLegendre<T>>,
}

impl<T: Real> PartialEq for ProlateFn<T> {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m
            && self.lambda == o.lambda
            && self.c == o.c
            && self.coeffs == o.coeffs
            && self.sturm_eigenvalue == o.sturm_eigenvalue
            && self.chi == o.chi
    }
}

/// Diagonal and off-diagonal of the operator in the orthonormal even
/// Legendre basis, `k = 0..size`.
fn tridiagonal<T: Real>(c: &T, size: usize) -> (Vec<T>, Vec<T>) {
    let c2 = c.sqr();
    let mut diag = Vec::with_capacity(size);
    let mut off = Vec::with_capacity(size.saturating_sub(1));
    for k in 0..size {
        let n = (2 * k) as i64;
        let d = T::from_i64(n * (n + 1))
            + c2.clone() * T::from_i64(2 * n * n + 2 * n - 1)
                / T::from_i64((2 * n - 1) * (2 * n + 3));
        diag.push(d);
        if k + 1 < size {
            let num = c2.clone() * T::from_i64((n + 1) * (n + 2));
            let den = T::from_i64(2 * n + 3) * T::from_i64((2 * n + 1) * (2 * n + 5)).sqrt();
            off.push(num / den);
        }
    }
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count<T: Real>(diag: &[T], off: &[T], x: &T) -> usize {
    let tiny = T::epsilon() * T::epsilon();
    let mut count = 0;
    let mut q = diag[0].clone() - x;
    for i in 0.. {
        if q.is_zero() {
            q = tiny.clone();
        }
        if q < T::zero() {
            count += 1;
        }
        if i + 1 == diag.len() {
            break;
        }
        q = diag[i + 1].clone() - x - off[i].sqr() / &q;
    }
    count
}

/// The `index`-th smallest eigenvalue by bisection.
fn tridiagonal_eigenvalue<T: Real>(diag: &[T], off: &[T], index: usize) -> T {
    let mut lo = T::zero();
    let mut hi = T::zero();
    for i in 0..diag.len() {
        let mut r = T::zero();
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i < off.len() {
            r += off[i].abs();
        }
        lo = T::min_of(lo, diag[i].clone() - &r);
        hi = T::max_of(hi, diag[i].clone() + r);
    }
    let eps = T::epsilon() * T::from_i64(4);
    for _ in 0..4000 {
        let mid = (lo.clone() + &hi) / T::from_i64(2);
        if sturm_count(diag, off, &mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi.clone() - &lo <= eps.clone() * T::max_of(hi.abs(), T::one()) {
            break;
        }
    }
    (lo + hi) / T::from_i64(2)
}

/// Eigenvector for a converged eigenvalue by inverse iteration.
fn tridiagonal_eigenvector<T: Real>(diag: &[T], off: &[T], ev: &T) -> Vec<T> {
    let n = diag.len();
    // Perturb the shift slightly so the factorisation stays finite.
    let shift = ev.clone() + T::epsilon() * T::max_of(ev.abs(), T::one()) * T::from_i64(16);
    let mut x = vec![T::one(); n];
    for _ in 0..3 {
        // Solve (T − shift) y = x with partial pivoting (tridiagonal LU).
        let y = solve_tridiagonal_pivoted(diag, off, &shift, &x);
        let nrm = y.iter().fold(T::zero(), |a, v| a + v.sqr()).sqrt();
        x = y.into_iter().map(|v| v / &nrm).collect();
    }
    x
}

fn solve_tridiagonal_pivoted<T: Real>(diag: &[T], off: &[T], shift: &T, rhs: &[T]) -> Vec<T> {
    // Gaussian elimination with partial pivoting; after a row swap `dl[i]`
    // holds the fill-in on the second superdiagonal.
    let n = diag.len();
    let mut d: Vec<T> = diag.iter().map(|x| x.clone() - shift).collect();
    let mut du: Vec<T> = off.to_vec();
    let mut dl: Vec<T> = off.to_vec();
    let mut b = rhs.to_vec();
    let tiny = T::epsilon() * T::epsilon();
    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i].is_zero() {
                d[i] = tiny.clone();
            }
            let fact = dl[i].clone() / &d[i];
            let t = fact.clone() * &du[i];
            d[i + 1] -= t;
            let t = fact * &b[i];
            b[i + 1] -= t;
            dl[i] = T::zero();
        } else {
            let fact = d[i].clone() / &dl[i];
            d[i] = dl[i].clone();
            let temp = d[i + 1].clone();
            d[i + 1] = du[i].clone() - fact.clone() * &temp;
            if i + 2 < n {
                dl[i] = du[i + 1].clone();
                du[i + 1] = -(fact.clone() * &dl[i]);
            } else {
                dl[i] = T::zero();
            }
            du[i] = temp;
            let temp = b[i].clone();
            b[i] = b[i + 1].clone();
            b[i + 1] = temp - fact * &b[i + 1];
        }
    }
    if d[n - 1].is_zero() {
        d[n - 1] = tiny;
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i].clone();
        if i + 1 < n {
            s -= du[i].clone() * &x[i + 1];
        }
        if i + 2 < n {
            s -= dl[i].clone() * &x[i + 2];
        }
        x[i] = s / &d[i];
    }
    x
}

/// Precomputed three-term recurrence and normalisation for even Legendre sums.
#[derive(Debug)]
pub struct EvenLegendre<T> {
    /// P_{n+1} = a_n·t·P_n − b_n·P_{n−1}
    a: Vec<T>,
    b: Vec<T>,
    /// √((4k+1)/2)
    norm: Vec<T>,
}

impl<T: Real> EvenLegendre<T> {
    pub fn new(terms: usize) -> Self {
        let deg = 2 * terms.max(1);
        let a = (0..deg)
            .map(|n| T::from_ratio(2 * n as i64 + 1, n as i64 + 1))
            .collect();
        let b = (0..deg).map(|n| T::from_ratio(n as i64, n as i64 + 1)).collect();
        let norm = (0..terms)
            .map(|k| T::from_ratio(4 * k as i64 + 1, 2).sqrt())
            .collect();
        EvenLegendre { a, b, norm }
    }

    pub fn terms(&self) -> usize {
        self.norm.len()
    }

    /// Σ_k coeffs[k]·√((4k+1)/2)·P_{2k}(t) for each coefficient set.
    pub fn sums(&self, coeff_sets: &[&[T]], t: &T) -> Vec<T> {
        let kmax = coeff_sets.iter().map(|c| c.len()).max().unwrap_or(0);
        assert!(kmax <= self.terms(), "coefficient vector longer than the table");
        let mut out = vec![T::zero(); coeff_sets.len()];
        if kmax == 0 {
            return out;
        }
        let mut p_prev = T::zero();
        let mut p = T::one();
        for n in 0..=2 * (kmax - 1) {
            if n % 2 == 0 {
                let k = n / 2;
                let v = p.clone() * &self.norm[k];
                for (o, c) in out.iter_mut().zip(coeff_sets) {
                    if k < c.len() {
                        *o += c[k].clone() * &v;
                    }
                }
            }
            let mut next = self.a[n].clone() * t;
            next *= &p;
            next -= self.b[n].clone() * &p_prev;
            p_prev = std::mem::replace(&mut p, next);
        }
        out
    }
}

/// Normalised Legendre sums Σ_k coeffs[k]·√((4k+1)/2)·P_{2k}(t) for several
/// coefficient vectors at once.
pub fn legendre_even_sums<T: Real>(coeff_sets: &[&[T]], t: &T) -> Vec<T> {
    let kmax = coeff_sets.iter().map(|c| c.len()).max().unwrap_or(0);
    EvenLegendre::new(kmax).sums(coeff_sets, t)
}

impl<T: Real> ProlateFn<T> {
    /// ψ(x) for |x| ≤ λ.
    pub fn eval(&self, x: &T) -> T {
        let t = x.clone() / &self.lambda;
        self.basis.sums(&[&self.coeffs], &t).pop().unwrap() / self.lambda.sqrt()
    }

    pub fn value_at_zero(&self) -> T {
        self.eval(&T::zero())
    }

    /// Writes a header (m, c, eigenvalue, chi) followed by one coefficient per line.
    pub fn write_decimal<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# m {}", self.m)?;
        writeln!(w, "# lambda {}", self.lambda.to_decimal())?;
        writeln!(w, "# c {}", self.c.to_decimal())?;
        writeln!(w, "# eigenvalue {}", self.sturm_eigenvalue.to_decimal())?;
        writeln!(w, "# chi {}", self.chi.to_decimal())?;
        for c in &self.coeffs {
            writeln!(w, "{}", c.to_decimal())?;
        }
        Ok(())
    }

    pub fn read_decimal<R: BufRead>(r: R) -> Result<Self> {
        let mut header = std::collections::HashMap::new();
        let mut coeffs = Vec::new();
        for line in r.lines() {
            let line = line?;
            let t = line.trim();
            if let Some(h) = t.strip_prefix('#') {
                let mut it = h.split_whitespace();
                if let (Some(k), Some(v)) = (it.next(), it.next()) {
                    header.insert(k.to_string(), v.to_string());
                }
            } else if !t.is_empty() {
                coeffs.push(T::parse(t)?);
            }
        }
        let get = |k: &str| {
            header
                .get(k)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("missing header field {k}")))
        };
        let basis = Arc::new(EvenLegendre::new(coeffs.len()));
        Ok(ProlateFn {
            basis,
            m: get("m")?.parse().map_err(|_| Error::Parse("bad m".into()))?,
            lambda: T::parse(&get("lambda")?)?,
            c: T::parse(&get("c")?)?,
            sturm_eigenvalue: T::parse(&get("eigenvalue")?)?,
            chi: T::parse(&get("chi")?)?,
            coeffs,
        })
    }
}

/// Number of even Legendre terms used for order `m` at bandwidth `c`.
pub fn default_truncation(m: usize, c: f64, digits: u32) -> usize {
    m + (2.0 * c / std::f64::consts::PI).ceil() as usize + 15 + digits as usize / 4
}

/// Eigen-data of the prolate operator for orders `0..count`, without χ.
fn prolate_raw<T: Real>(
    count: usize,
    lambda: &T,
    size: usize,
    ctx: &NumContext,
) -> Result<Vec<(T, Vec<T>)>> {
    let c = T::pi() * T::from_i64(2) * lambda.sqr();
    let (diag, off) = tridiagonal(&c, size);
    let tail_tol: T = ctx.tol(10);
    let mut out = Vec::with_capacity(count);
    for m in 0..count {
        let ev = tridiagonal_eigenvalue(&diag, &off, m);
        let mut v = tridiagonal_eigenvector(&diag, &off, &ev);
        let lead = v.iter().fold(T::zero(), |a, x| T::max_of(a, x.abs()));
        let tail = T::max_of(v[size - 1].abs(), v[size - 2].abs());
        if tail > tail_tol.clone() * &lead {
            return Err(Error::Truncation(format!(
                "prolate m={m}: Legendre tail {:.3e} with {size} terms; increase the truncation",
                tail.to_f64()
            )));
        }
        if v[0] < T::zero() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
        out.push((ev, v));
    }
    Ok(out)
}

/// Builds ψ_{0,λ}, …, ψ_{count−1,λ} sharing one operator matrix.
pub fn prolate_family<T: Real>(count: usize, lambda: &T, ctx: &NumContext) -> Result<Vec<ProlateFn<T>>> {
    if *lambda <= T::one() {
        return Err(Error::invalid("prolate functions need lambda > 1"));
    }
    let c = T::pi() * T::from_i64(2) * lambda.sqr();
    let mut size = default_truncation(count, c.to_f64(), ctx.effective_digits::<T>());
    let raw = loop {
        match prolate_raw(count, lambda, size, ctx) {
            Ok(r) => break r,
            Err(Error::Truncation(msg)) => {
                if size > 4000 {
                    return Err(Error::Truncation(msg));
                }
                size *= 2;
            }
            Err(e) => return Err(e),
        }
    };
    let basis = Arc::new(EvenLegendre::new(size));
    raw.into_iter()
        .enumerate()
        .map(|(m, (ev, coeffs))| {
            let mut f = ProlateFn {
                basis: basis.clone(),
                m,
                lambda: lambda.clone(),
                c: c.clone(),
                coeffs,
                sturm_eigenvalue: ev,
                chi: T::zero(),
            };
            f.chi = fourier_ratio(&f, ctx)?;
            Ok(f)
        })
        .collect()
}

/// ψ_0(x), …, ψ_{count−1}(x) for members of one family, sharing a single
/// Legendre recurrence. All members must have the same λ.
pub fn family_values<T: Real>(family: &[ProlateFn<T>], x: &T) -> Vec<T> {
    let Some(widest) = family.iter().max_by_key(|f| f.basis.terms()) else {
        return Vec::new();
    };
    let t = x.clone() / &widest.lambda;
    let sets: Vec<&[T]> = family.iter().map(|f| f.coeffs.as_slice()).collect();
    let s = widest.lambda.sqrt();
    widest.basis.sums(&sets, &t).into_iter().map(|v| v / &s).collect()
}

/// Builds ψ_{m,λ} with an explicit number of even Legendre terms.
pub fn prolate_build_with_truncation<T: Real>(
    m: usize,
    lambda: &T,
    size: usize,
    ctx: &NumContext,
) -> Result<ProlateFn<T>> {
    if *lambda <= T::one() {
        return Err(Error::invalid("prolate functions need lambda > 1"));
    }
    if size < m + 4 {
        return Err(Error::Truncation(format!("{size} terms cannot resolve order {m}")));
    }
    let c = T::pi() * T::from_i64(2) * lambda.sqr();
    let (ev, coeffs) = prolate_raw(m + 1, lambda, size, ctx)?.pop().unwrap();
    let mut f = ProlateFn {
        basis: Arc::new(EvenLegendre::new(size)),
        m,
        lambda: lambda.clone(),
        c,
        coeffs,
        sturm_eigenvalue: ev,
        chi: T::zero(),
    };
    f.chi = fourier_ratio(&f, ctx)?;
    Ok(f)
}

/// Builds ψ_{m,λ} with an automatically chosen truncation.
pub fn prolate_build<T: Real>(m: usize, lambda: &T, ctx: &NumContext) -> Result<ProlateFn<T>> {
    prolate_family(m + 1, lambda, ctx).map(|mut v| v.pop().unwrap())
}

/// ∫_{−λ}^{λ} ψ(ξ) cos(2πξy) dξ.
pub fn truncated_fourier<T: Real>(f: &ProlateFn<T>, y: &T, ctx: &NumContext) -> Result<T> {
    let w = T::pi() * T::from_i64(2) * y;
    let opts = QuadOptions {
        panels: 1 + (w.abs().to_f64() * f.lambda.to_f64() / 40.0) as usize,
        ..Default::default()
    };
    let half = integrate_with(
        |xi: &T| f.eval(xi) * (w.clone() * xi).cos(),
        &T::zero(),
        &f.lambda,
        ctx,
        &opts,
    )?;
    Ok(half * T::from_i64(2))
}

fn fourier_ratio<T: Real>(f: &ProlateFn<T>, ctx: &NumContext) -> Result<T> {
    // Probe where |ψ| is largest on a coarse grid of [0, λ].
    let grid = 48;
    let mut best = (T::zero(), T::zero());
    for j in 0..=grid {
        let y = f.lambda.clone() * T::from_ratio(j, grid);
        let v = f.eval(&y).abs();
        if v > best.1 {
            best = (y, v);
        }
    }
    let y0 = best.0;
    let num = truncated_fourier(f, &y0, ctx)?;
    let ratio = num / f.eval(&y0);
    Ok(if f.m % 2 == 1 { -ratio } else { ratio })
}

/// χ(μ, m): the factor by which the truncated Fourier transform scales ψ_{m,√μ}.
pub fn chi_characteristic<T: Real>(mu: &T, m: usize, ctx: &NumContext) -> Result<T> {
    Ok(prolate_build(m, &mu.sqrt(), ctx)?.chi)
}

/// Largest m with χ(μ, m) ≥ `threshold`.
pub fn nu_cutoff_with<T: Real>(mu: &T, threshold: f64, ctx: &NumContext) -> Result<usize> {
    if *mu <= T::from_i64(2) {
        return Err(Error::invalid("nu cutoff needs mu > 2"));
    }
    let guess = (2.0 * mu.to_f64()).ceil() as usize + 4;
    let fam = prolate_family(guess, &mu.sqrt(), ctx)?;
    let thr = T::from_f64(threshold);
    match fam.iter().position(|f| f.chi < thr) {
        Some(0) => Err(Error::invalid("chi(mu, 0) below threshold")),
        Some(p) => Ok(p - 1),
        None => Err(Error::Truncation("no chi value fell below the threshold".into())),
    }
}

/// ν(μ) with the default threshold.
pub fn nu_cutoff<T: Real>(mu: &T, ctx: &NumContext) -> Result<usize> {
    nu_cutoff_with(mu, NU_THRESHOLD, ctx)
}

/// φ_n = ψ_n·ψ_b(0) − ψ_b·ψ_n(0) with b = n mod 2, vanishing at the origin.
#[derive(Clone, Debug)]
pub struct PhiFn<T> {
    pub n: usize,
    pub top: ProlateFn<T>,
    pub base: ProlateFn<T>,
    /// ψ_b(0), multiplier of `top`.
    pub top_weight: T,
    /// ψ_n(0), multiplier of `base`.
    pub base_weight: T,
}

impl<T: Real> PhiFn<T> {
    pub fn from_family(n: usize, family: &[ProlateFn<T>]) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("phi_n needs n >= 2"));
        }
        if n >= family.len() {
            return Err(Error::invalid(format!("phi_{n} needs {} prolate functions", n + 1)));
        }
        let top = family[n].clone();
        let base = family[n % 2].clone();
        let top_weight = base.value_at_zero();
        let base_weight = top.value_at_zero();
        let scale = T::max_of(top_weight.abs(), base_weight.abs());
        if scale <= T::epsilon() * T::from_i64(1000) {
            return Err(Error::Degenerate(format!("psi_{n} and psi_{} both vanish at 0", n % 2)));
        }
        Ok(PhiFn {
            n,
            top,
            base,
            top_weight,
            base_weight,
        })
    }

    pub fn lambda(&self) -> &T {
        &self.top.lambda
    }

    /// φ(x) for |x| ≤ λ; exactly zero at x = 0.
    pub fn eval(&self, x: &T) -> T {
        let t = x.clone() / self.lambda();
        let v = self.top.basis.sums(&[&self.top.coeffs, &self.base.coeffs], &t);
        let s = self.lambda().sqrt();
        (v[0].clone() / &s) * &self.top_weight - (v[1].clone() / &s) * &self.base_weight
    }
}

/// Builds φ_n at bandwidth λ.
pub fn phi_build<T: Real>(n: usize, lambda: &T, ctx: &NumContext) -> Result<PhiFn<T>> {
    let fam = prolate_family(n + 1, lambda, ctx)?;
    PhiFn::from_family(n, &fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::BigReal;

    fn ctx() -> NumContext {
        NumContext::with_digits(40)
    }

    #[test]
    fn even_symmetry() {
        let f = prolate_build(3, &2.0f64.sqrt(), &ctx()).unwrap();
        for x in [0.1, 0.7, 1.3] {
            assert_eq!(f.eval(&x), f.eval(&-x));
        }
    }

    #[test]
    fn orthonormal_family() {
        let c = ctx();
        let lambda = 2.5f64.sqrt();
        let fam = prolate_family(5, &lambda, &c).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let v = crate::numkernel::integrate(
                    |x: &f64| fam[i].eval(x) * fam[j].eval(x),
                    &-lambda,
                    &lambda,
                    &c,
                )
                .unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12, "({i},{j}) -> {v}");
            }
        }
    }

    #[test]
    fn differential_equation_residual() {
        // Derivatives through P'_{n+1} = P'_{n-1} + (2n+1)P_n and the analogous
        // second-derivative recurrence, independent of the Legendre ODE.
        let c = NumContext::with_digits(60);
        let _g = c.install();
        let lambda = BigReal::from_ratio(3, 2);
        let f = prolate_build(2, &lambda, &c).unwrap();
        let deg = 2 * f.coeffs.len();
        for j in 1..=10 {
            let t = BigReal::from_ratio(j, 11);
            let mut p = vec![BigReal::one(), t.clone()];
            for n in 1..deg {
                let v = (BigReal::from_i64(2 * n as i64 + 1) * &t * &p[n]
                    - BigReal::from_i64(n as i64) * &p[n - 1])
                    / BigReal::from_i64(n as i64 + 1);
                p.push(v);
            }
            let mut dp = vec![BigReal::zero(), BigReal::one()];
            let mut ddp = vec![BigReal::zero(), BigReal::zero()];
            for n in 1..deg {
                let v = dp[n - 1].clone() + BigReal::from_i64(2 * n as i64 + 1) * &p[n];
                dp.push(v);
                let w = ddp[n - 1].clone() + BigReal::from_i64(2 * n as i64 + 1) * &dp[n];
                ddp.push(w);
            }
            let (mut s0, mut s1, mut s2) = (BigReal::zero(), BigReal::zero(), BigReal::zero());
            for (k, d) in f.coeffs.iter().enumerate() {
                let nrm = (BigReal::from_i64(4 * k as i64 + 1) / BigReal::from_i64(2)).sqrt();
                s0 += d.clone() * &nrm * &p[2 * k];
                s1 += d.clone() * &nrm * &dp[2 * k];
                s2 += d.clone() * &nrm * &ddp[2 * k];
            }
            let residual = -(BigReal::one() - t.sqr()) * &s2 + BigReal::from_i64(2) * &t * &s1
                + f.c.sqr() * t.sqr() * &s0
                - f.sturm_eigenvalue.clone() * &s0;
            assert!(residual.abs() < BigReal::ten_pow_neg(40) * f.sturm_eigenvalue.abs());
        }
    }

    #[test]
    fn decimal_round_trip() {
        let c = NumContext::with_digits(40);
        let _g = c.install();
        let f = prolate_build(1, &BigReal::from_i64(2), &c).unwrap();
        let mut buf = Vec::new();
        f.write_decimal(&mut buf).unwrap();
        let g = ProlateFn::<BigReal>::read_decimal(&buf[..]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn phi_vanishes_at_origin() {
        let fam = prolate_family(6, &2.2f64, &ctx()).unwrap();
        for n in 2..6 {
            let p = PhiFn::from_family(n, &fam).unwrap();
            assert_eq!(p.eval(&0.0), 0.0);
            assert_eq!(p.eval(&0.4), p.eval(&-0.4));
        }
    }

    #[test]
    fn truncation_too_small_is_reported() {
        let err = prolate_build_with_truncation(0, &3.0f64, 6, &ctx()).unwrap_err();
        assert!(matches!(err, Error::Truncation(_)));
    }
}
