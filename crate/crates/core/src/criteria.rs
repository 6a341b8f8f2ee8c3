//! Zero-detection criteria for the conditioned Dirac spectra and the
//! discrepancy statistics against the reference zeros.
//!
//! A sweep evaluates, at every μ of a grid, the low positive eigenvalues
//! λ_n(D(λ, k)) together with three scores per n:
//!
//! * the k-coincidence gap λ_n(D(λ, k)) − λ_n(D(λ, k+1)) ≥ 0,
//! * the quantization residual |μ^{iλ_n} − 1|,
//! * the distance of the eigenvector from the nearest D₀ eigenvector.
//!
//! Special values of μ are local minima of one score, refined by
//! golden-section search at fixed k and kept only when all three scores sit
//! below their thresholds.

use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dirac::{d0_overlap, default_k, dirac_from_projection, dirac_spectrum, DiracSpectrum};
use crate::error::{Error, Result};
use crate::numkernel::{NumContext, Real};
use crate::prolateproj::build_projection;

const BUILTIN_ZEROS: &str = include_str!("../data/zeta_zeros.txt");

/// Ordinates 0 < ζ_1 < ζ_2 < … of the nontrivial zeros on the critical line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaZerosTable {
    decimals: Vec<String>,
}

impl ZetaZerosTable {
    /// The first 50 ordinates at 20 significant digits, shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_ZEROS).expect("bundled zeros table is well formed")
    }

    /// Plain text, one decimal per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes())
    }

    pub fn from_reader<R: BufRead>(r: R) -> Result<Self> {
        let mut decimals = Vec::new();
        let mut prev = f64::NEG_INFINITY;
        for (no, line) in r.lines().enumerate() {
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let v: f64 = body
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: not a number: {body}", no + 1)))?;
            if !(v > 0.0) || v <= prev {
                return Err(Error::Parse(format!("line {}: ordinates must be positive and increasing", no + 1)));
            }
            prev = v;
            decimals.push(body.to_string());
        }
        if decimals.is_empty() {
            return Err(Error::Parse("zeros table is empty".into()));
        }
        Ok(ZetaZerosTable { decimals })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::from_reader(std::io::BufReader::new(f))
    }

    pub fn len(&self) -> usize {
        self.decimals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decimals.is_empty()
    }

    /// ζ_n for n ≥ 1.
    pub fn get<T: Real>(&self, n: usize) -> Option<T> {
        let s = self.decimals.get(n.checked_sub(1)?)?;
        T::parse(s).ok()
    }

    pub fn values<T: Real>(&self) -> Vec<T> {
        (1..=self.len()).filter_map(|n| self.get(n)).collect()
    }

    pub fn decimal(&self, n: usize) -> Option<&str> {
        self.decimals.get(n.checked_sub(1)?).map(String::as_str)
    }
}

/// How k is chosen at each μ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KPolicy {
    /// Largest even k ≤ ν(μ) − 1.
    Default,
    Fixed(usize),
}

impl KPolicy {
    pub fn k_at<T: Real>(&self, mu: &T, ctx: &NumContext) -> Result<usize> {
        match self {
            KPolicy::Default => default_k(mu, ctx),
            KPolicy::Fixed(k) => Ok(*k),
        }
    }
}

impl fmt::Display for KPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPolicy::Default => f.write_str("auto"),
            KPolicy::Fixed(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for KPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "auto" | "default" => Ok(KPolicy::Default),
            t => t
                .parse()
                .map(KPolicy::Fixed)
                .map_err(|_| Error::invalid(format!("k must be 'auto' or an integer, got '{s}'"))),
        }
    }
}

/// Settings shared by the criteria.
#[derive(Clone, Debug, Serialize)]
pub struct CriteriaConfig {
    pub n_trunc: usize,
    pub k: KPolicy,
    pub gap_threshold: f64,
    pub residual_threshold: f64,
    pub distance_threshold: f64,
    /// Target width of the golden-section bracket in μ.
    pub mu_resolution: f64,
    /// D₀ rotation numbers j with |j − λ_n L/2π| ≤ window are tried.
    pub rotation_window: usize,
}

impl CriteriaConfig {
    pub fn threshold(&self, c: Criterion) -> f64 {
        match c {
            Criterion::KCoincidence => self.gap_threshold,
            Criterion::Quantization => self.residual_threshold,
            Criterion::EigvecDistance => self.distance_threshold,
        }
    }
}

impl Default for CriteriaConfig {
    fn default() -> Self {
        CriteriaConfig {
            n_trunc: 48,
            k: KPolicy::Default,
            gap_threshold: 1e-2,
            residual_threshold: 1e-2,
            distance_threshold: 5e-2,
            mu_resolution: 1e-4,
            rotation_window: 2,
        }
    }
}

/// Which score defines special values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Criterion {
    KCoincidence,
    Quantization,
    EigvecDistance,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::KCoincidence => "k-coincidence",
            Criterion::Quantization => "quantization",
            Criterion::EigvecDistance => "eigvec-distance",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "k-coincidence" | "coincidence" | "gap" => Ok(Criterion::KCoincidence),
            "quantization" | "residual" => Ok(Criterion::Quantization),
            "eigvec-distance" | "distance" | "eigenvector" => Ok(Criterion::EigvecDistance),
            _ => Err(Error::invalid(format!("unknown criterion '{s}'"))),
        }
    }
}

/// |μ^{iλ} − 1| = 2|sin(λ log μ / 2)|.
pub fn quantization_residual_value<T: Real>(eigenvalue: &T, mu: &T) -> T {
    (eigenvalue.clone() * mu.ln() / T::from_i64(2)).sin().abs() * T::from_i64(2)
}

/// Distance of a unit vector to the closest D₀ eigenvector up to phase.
#[derive(Clone, Debug, Serialize)]
pub struct EigvecDistance<T> {
    pub distance: T,
    /// Rotation number j of the closest D₀ eigenvector.
    pub rotation: usize,
}

/// min over j in the window and unit ω of ‖v − ω e_j‖ = √(2 − 2|⟨e_j, v⟩|),
/// for an eigenvector of eigenvalue `eigenvalue` on a circle of length `l`.
pub fn eigvec_distance_of<T: Real>(
    v: &[T],
    eigenvalue: &T,
    l: &T,
    n_trunc: usize,
    window: usize,
) -> EigvecDistance<T> {
    let centre = (eigenvalue.clone() * l / (T::pi() * T::from_i64(2))).to_f64().round() as i64;
    let lo = (centre - window as i64).max(1);
    let hi = (centre + window as i64).min(n_trunc as i64);
    let mut best = EigvecDistance {
        distance: T::from_i64(2).sqrt(),
        rotation: lo.max(1) as usize,
    };
    for j in lo..=hi {
        let ov = d0_overlap(v, n_trunc, j as usize).abs();
        let d = (T::from_i64(2) - ov * T::from_i64(2)).abs().sqrt();
        if d < best.distance {
            best = EigvecDistance {
                distance: d,
                rotation: j as usize,
            };
        }
    }
    best
}

/// Eigenvalue and scores of λ_n at one μ.
#[derive(Clone, Debug, Serialize)]
pub struct Scores<T> {
    pub n: usize,
    pub eigenvalue: T,
    pub gap: T,
    pub residual: T,
    pub distance: T,
    pub rotation: usize,
}

impl<T: Real> Scores<T> {
    pub fn score(&self, c: Criterion) -> &T {
        match c {
            Criterion::KCoincidence => &self.gap,
            Criterion::Quantization => &self.residual,
            Criterion::EigvecDistance => &self.distance,
        }
    }

    /// All three scores below their thresholds.
    pub fn passes(&self, cfg: &CriteriaConfig) -> bool {
        self.gap.to_f64().abs() < cfg.gap_threshold
            && self.residual.to_f64() < cfg.residual_threshold
            && self.distance.to_f64() < cfg.distance_threshold
    }
}

/// All scores at one μ.
#[derive(Clone, Debug, Serialize)]
pub struct GridPoint<T> {
    pub mu: T,
    pub k: usize,
    pub scores: Vec<Scores<T>>,
}

fn nth(spec: &DiracSpectrum<impl Real>, n: usize) -> Result<usize> {
    if n == 0 || n > spec.positive.len() {
        return Err(Error::Truncation(format!(
            "λ_{n} requested but only {} positive eigenvalues",
            spec.positive.len()
        )));
    }
    Ok(n - 1)
}

/// Scores of λ_1 … λ_{n_max} of D(√μ, k) at one μ.
pub fn evaluate_point<T: Real>(
    mu: &T,
    k: usize,
    n_max: usize,
    cfg: &CriteriaConfig,
    ctx: &NumContext,
) -> Result<GridPoint<T>> {
    let lambda = mu.sqrt();
    let wide = build_projection(&lambda, k + 1, cfg.n_trunc, ctx)?;
    let narrow = wide.truncate(k)?;
    let l = narrow.l.clone();
    let spec_k = dirac_spectrum(&dirac_from_projection(narrow), ctx)?;
    let spec_k1 = dirac_spectrum(&dirac_from_projection(wide), ctx)?;
    let scores = (1..=n_max)
        .map(|n| {
            let i = nth(&spec_k, n)?;
            let i1 = nth(&spec_k1, n)?;
            let e = spec_k.positive[i].clone();
            let d = eigvec_distance_of(&spec_k.vectors[i], &e, &l, cfg.n_trunc, cfg.rotation_window);
            Ok(Scores {
                n,
                gap: e.clone() - &spec_k1.positive[i1],
                residual: quantization_residual_value(&e, mu),
                distance: d.distance,
                rotation: d.rotation,
                eigenvalue: e,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GridPoint {
        mu: mu.clone(),
        k,
        scores,
    })
}

/// Scores at every μ of a grid, in grid order.
pub fn sweep<T: Real>(mus: &[T], n_max: usize, cfg: &CriteriaConfig, ctx: &NumContext) -> Result<Vec<GridPoint<T>>> {
    mus.par_iter()
        .map(|mu| {
            let _g = ctx.install();
            let k = cfg.k.k_at(mu, ctx)?;
            evaluate_point(mu, k, n_max, cfg, ctx)
        })
        .collect()
}

/// μ grid a, a+step, … ≤ b (endpoints included up to rounding).
pub fn mu_grid<T: Real>(a: &T, b: &T, step: &T) -> Result<Vec<T>> {
    if !(step.clone() > T::zero()) || b < a {
        return Err(Error::invalid("mu grid needs a <= b and a positive step"));
    }
    let count = ((b.clone() - a) / step).to_f64();
    let count = (count + 1e-9).floor() as i64;
    Ok((0..=count).map(|i| a.clone() + step.clone() * T::from_i64(i)).collect())
}

/// Golden-section minimisation of `f` on [a, b] down to width `tol`.
/// Failed evaluations count as +∞.
fn golden_section<T: Real>(mut f: impl FnMut(&T) -> Option<T>, a: &T, b: &T, tol: f64) -> (T, Option<T>) {
    let ratio = (T::from_i64(5).sqrt() - T::one()) / T::from_i64(2);
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut c = b.clone() - (b.clone() - &a) * &ratio;
    let mut d = a.clone() + (b.clone() - &a) * &ratio;
    let better = |x: &Option<T>, y: &Option<T>| match (x, y) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    };
    let mut fc = f(&c);
    let mut fd = f(&d);
    while (b.clone() - &a).to_f64() > tol {
        if better(&fc, &fd) {
            b = d;
            d = c;
            fd = fc;
            c = b.clone() - (b.clone() - &a) * &ratio;
            fc = f(&c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a.clone() + (b.clone() - &a) * &ratio;
            fd = f(&d);
        }
    }
    if better(&fc, &fd) {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// A refined special value of μ for λ_n.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialPoint<T> {
    pub mu: T,
    pub k: usize,
    pub scores: Scores<T>,
}

/// Refines every local grid minimum of the chosen score for λ_n and keeps
/// those whose refined minimiser is interior and passes all thresholds.
pub fn special_points<T: Real>(
    criterion: Criterion,
    n: usize,
    grid: &[GridPoint<T>],
    cfg: &CriteriaConfig,
    ctx: &NumContext,
) -> Result<Vec<SpecialPoint<T>>> {
    let val = |p: &GridPoint<T>| p.scores.get(n - 1).map(|s| s.score(criterion).abs().to_f64());
    let mut brackets = Vec::new();
    for i in 1..grid.len().saturating_sub(1) {
        let (Some(a), Some(m), Some(b)) = (val(&grid[i - 1]), val(&grid[i]), val(&grid[i + 1])) else {
            continue;
        };
        // a V-shaped minimum inside the bracket cannot fall below
        // m − (max − m)/2; skip minima that cannot reach the threshold
        let reach = m - (a.max(b) - m) / 2.0;
        if m <= a && m < b && reach < cfg.threshold(criterion) {
            brackets.push((grid[i - 1].mu.clone(), grid[i + 1].mu.clone(), grid[i].k));
        }
    }
    let refined: Vec<Option<SpecialPoint<T>>> = brackets
        .into_par_iter()
        .map(|(lo, hi, k)| {
            let _g = ctx.install();
            let eval = |mu: &T| evaluate_point(mu, k, n, cfg, ctx).ok();
            let (mu, _) = golden_section(
                |mu: &T| eval(mu).map(|p| p.scores[n - 1].score(criterion).abs()),
                &lo,
                &hi,
                cfg.mu_resolution,
            );
            // a minimiser pinned to the bracket edge is a k-switch or
            // monotone artefact, not a minimum
            let edge = T::from_f64(2.0 * cfg.mu_resolution);
            if (mu.clone() - &lo).abs() < edge || (hi.clone() - &mu).abs() < edge {
                return Ok(None);
            }
            let p = evaluate_point(&mu, k, n, cfg, ctx)?;
            let scores = p.scores[n - 1].clone();
            Ok(scores.passes(cfg).then_some(SpecialPoint { mu, k, scores }))
        })
        .collect::<Result<_>>()?;
    Ok(refined.into_iter().flatten().collect())
}

/// Special μ for λ_n by the k-coincidence criterion on a grid.
pub fn k_coincidence<T: Real>(
    n: usize,
    mus: &[T],
    cfg: &CriteriaConfig,
    ctx: &NumContext,
) -> Result<Vec<SpecialPoint<T>>> {
    let grid = sweep(mus, n, cfg, ctx)?;
    special_points(Criterion::KCoincidence, n, &grid, cfg, ctx)
}

/// Result of the zero extraction for one index n.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport<T> {
    pub n: usize,
    pub criterion: Criterion,
    pub special: Vec<SpecialPoint<T>>,
    /// Index into `special` of the selected point, if any.
    pub best: Option<usize>,
    pub reference: Option<T>,
    /// |λ_n at the selected point − ζ_n|.
    pub error: Option<T>,
}

impl<T: Real> CriterionReport<T> {
    pub fn selected(&self) -> Option<&SpecialPoint<T>> {
        self.best.map(|i| &self.special[i])
    }
}

/// Sum of the three scores, each relative to its threshold.
fn combined<T: Real>(s: &Scores<T>, cfg: &CriteriaConfig) -> f64 {
    s.gap.to_f64().abs() / cfg.gap_threshold
        + s.residual.to_f64() / cfg.residual_threshold
        + s.distance.to_f64() / cfg.distance_threshold
}

/// For each n ≤ n_max, the special values over the grid and the one with
/// the smallest combined score; n without any special value is reported
/// with `best = None`.
pub fn extract_zeros<T: Real>(
    n_max: usize,
    mus: &[T],
    criterion: Criterion,
    zeros: &ZetaZerosTable,
    cfg: &CriteriaConfig,
    ctx: &NumContext,
) -> Result<Vec<CriterionReport<T>>> {
    let grid = sweep(mus, n_max, cfg, ctx)?;
    extract_from_grid(n_max, &grid, criterion, zeros, cfg, ctx)
}

/// [`extract_zeros`] on a precomputed sweep.
pub fn extract_from_grid<T: Real>(
    n_max: usize,
    grid: &[GridPoint<T>],
    criterion: Criterion,
    zeros: &ZetaZerosTable,
    cfg: &CriteriaConfig,
    ctx: &NumContext,
) -> Result<Vec<CriterionReport<T>>> {
    (1..=n_max)
        .map(|n| {
            let special = special_points(criterion, n, grid, cfg, ctx)?;
            let best = special
                .iter()
                .enumerate()
                .min_by(|a, b| combined(&a.1.scores, cfg).total_cmp(&combined(&b.1.scores, cfg)))
                .map(|(i, _)| i);
            let reference: Option<T> = zeros.get(n);
            let error = match (best, &reference) {
                (Some(i), Some(z)) => Some((special[i].scores.eigenvalue.clone() - z).abs()),
                _ => None,
            };
            Ok(CriterionReport {
                n,
                criterion,
                special,
                best,
                reference,
                error,
            })
        })
        .collect()
}

/// Agreement statistics between the spectrum below 2πμ and the zeros.
#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy<T> {
    pub mu: T,
    pub k: usize,
    /// Number of positive eigenvalues ≤ 2πμ.
    pub count: usize,
    /// Mean absolute error.
    pub a: T,
    /// Root-mean-square deviation.
    pub r: T,
    /// R divided by the diameter λ_max − λ_1 of the compared eigenvalues
    /// (roughly 2πμ − 14).
    pub nr: T,
}

/// Statistics for eigenvalues sorted ascending, paired with zeros by index.
pub fn discrepancy_of<T: Real>(mu: &T, k: usize, eigenvalues: &[T], zeros: &ZetaZerosTable) -> Result<Discrepancy<T>> {
    let top = T::pi() * T::from_i64(2) * mu;
    let below: Vec<&T> = eigenvalues.iter().take_while(|e| **e <= top).collect();
    if below.len() < 2 {
        return Err(Error::invalid("discrepancy needs at least two eigenvalues below 2πμ"));
    }
    if below.len() > zeros.len() {
        return Err(Error::invalid(format!(
            "{} eigenvalues below 2πμ but only {} reference zeros",
            below.len(),
            zeros.len()
        )));
    }
    let mut abs_sum = T::zero();
    let mut sq_sum = T::zero();
    for (j, e) in below.iter().enumerate() {
        let z: T = zeros.get(j + 1).expect("length checked");
        let d = (*e).clone() - z;
        abs_sum += d.abs();
        sq_sum += d.sqr();
    }
    let count = T::from_i64(below.len() as i64);
    let r = (sq_sum / &count).sqrt();
    let diameter = below[below.len() - 1].clone() - below[0];
    Ok(Discrepancy {
        mu: mu.clone(),
        k,
        count: below.len(),
        a: abs_sum / count,
        nr: r.clone() / diameter,
        r,
    })
}

/// Discrepancy of D(√μ, k) with k from the policy.
pub fn discrepancy<T: Real>(
    mu: &T,
    cfg: &CriteriaConfig,
    zeros: &ZetaZerosTable,
    ctx: &NumContext,
) -> Result<Discrepancy<T>> {
    let k = cfg.k.k_at(mu, ctx)?;
    let proj = build_projection(&mu.sqrt(), k, cfg.n_trunc, ctx)?;
    let spec = dirac_spectrum(&dirac_from_projection(proj), ctx)?;
    discrepancy_of(mu, k, &spec.positive, zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_vanishes_on_quantized_values() {
        let mu = 7.3f64;
        let l = mu.ln();
        for j in 1..6 {
            let e = 2.0 * std::f64::consts::PI * j as f64 / l;
            assert!(quantization_residual_value(&e, &mu) < 1e-13);
        }
        let anti = std::f64::consts::PI / l;
        assert!((quantization_residual_value(&anti, &mu) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn builtin_table_is_increasing() {
        let t = ZetaZerosTable::builtin();
        assert_eq!(t.len(), 50);
        let v: Vec<f64> = t.values();
        assert!((v[0] - 14.134725141734693790).abs() < 1e-15);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn table_rejects_disorder() {
        assert!(ZetaZerosTable::parse("# c\n14.1\n\n21.0 # x\n").is_ok());
        assert!(ZetaZerosTable::parse("21.0\n14.1\n").is_err());
        assert!(ZetaZerosTable::parse("abc\n").is_err());
        assert!(ZetaZerosTable::parse("# only comments\n").is_err());
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, fx) = golden_section(|x: &f64| Some((x - 0.3).powi(2)), &0.0, &1.0, 1e-8);
        assert!((x - 0.3).abs() < 1e-7);
        assert!(fx.unwrap() < 1e-13);
    }

    #[test]
    fn grid_includes_both_ends() {
        let g = mu_grid(&5.0f64, &16.5, &0.1).unwrap();
        assert_eq!(g.len(), 116);
        assert!((g.last().unwrap() - 16.5).abs() < 1e-9);
        assert!(mu_grid(&5.0f64, &4.0, &0.1).is_err());
    }

    #[test]
    fn parsers_round_trip() {
        for c in [Criterion::KCoincidence, Criterion::Quantization, Criterion::EigvecDistance] {
            assert_eq!(c.to_string().parse::<Criterion>().unwrap(), c);
        }
        assert_eq!("auto".parse::<KPolicy>().unwrap(), KPolicy::Default);
        assert_eq!("12".parse::<KPolicy>().unwrap(), KPolicy::Fixed(12));
        assert!("x".parse::<KPolicy>().is_err());
    }
}
