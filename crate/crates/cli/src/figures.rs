//! Named figure and table pipelines for `reproduce-figure`.
//!
//! Each entry fixes the computation and its default precision; the usual
//! flags (--mu, --mu-range, --digits, --trunc-n, ...) still override.

use rayon::prelude::*;
use serde_json::{json, Value};
use zetalab::basis::Parity;
use zetalab::criteria::{extract_from_grid, sweep, Criterion};
use zetalab::dirac::{dirac_from_projection, dirac_spectrum};
use zetalab::numkernel::sym_eigenvalues;
use zetalab::prolateproj::build_projection;
use zetalab::weilform::{archimedean_constant, positivity_scan, WhichTerms};
use zetalab::zetacycle::zeta_cycle_check;
use zetalab::zetacycle::TestFn;
use zetalab::{Error, NumContext, Real, Result};

use crate::commands::{self, dispatch, DEFAULT_SWEEP};
use crate::config::{Defaults, Range, RunConfig};
use crate::output::{dec, Artifact};

#[derive(Clone, Copy, Debug)]
enum CurveValue {
    /// λ_n(D(λ, k)) and λ_n(D(λ, k+1)).
    Eigenvalues,
    Residual,
    Distance,
}

#[derive(Clone, Copy, Debug)]
enum Pipeline {
    DiracTable(&'static str),
    ChiTable(&'static str),
    FirstEigenvalueCurves,
    ArchimedeanConstant,
    /// Archimedean-only scan on L ∈ [lo, log 2 + hi] (lo absolute, hi an offset).
    ArchimedeanScan { lo: Option<f64>, below: f64, above: f64 },
    SignChange { mu0: i64, parity: Parity, width: f64 },
    RealPrime,
    Decay { parity: Parity, count: usize },
    Curves { n: usize, value: CurveValue },
    Extraction(Criterion),
    ZetaCycle,
}

pub struct Figure {
    pub id: &'static str,
    pub title: &'static str,
    pub defaults: Defaults,
    pipeline: Pipeline,
}

const fn fig(id: &'static str, title: &'static str, defaults: Defaults, pipeline: Pipeline) -> Figure {
    Figure {
        id,
        title,
        defaults,
        pipeline,
    }
}

const SPEC: Defaults = Defaults::SPECTRAL;
const SWEEP: Defaults = Defaults::SPECTRAL.with_trunc(48);
const WEIL: Defaults = Defaults::WEIL;
const CHI: Defaults = Defaults::PROLATE;
const DEEP: Defaults = Defaults::PROLATE.with_digits(120);

use Pipeline::*;

static FIGURES: &[Figure] = &[
    fig("fig1", "low-lying spectrum of D(λ,k) at μ = 10.5 against the zeta zeros", SPEC, DiracTable("10.5")),
    fig("fig2", "first positive eigenvalue of D(λ,2ℓ) as a function of μ", SPEC, FirstEigenvalueCurves),
    fig("fig3", "zeros selected by coincidence of λ_n(D(λ,k)) and λ_n(D(λ,k+1))", SWEEP, Extraction(Criterion::KCoincidence)),
    fig("fig4", "archimedean constant as a function of L", WEIL, ArchimedeanConstant),
    fig(
        "fig5",
        "archimedean-only σ⁺ on L ∈ [0.05, log 2]",
        WEIL,
        ArchimedeanScan { lo: Some(0.05), below: 0.0, above: 0.0 },
    ),
    fig(
        "fig6",
        "archimedean-only σ⁺ on L ∈ [log 2 − 0.2, log 2 + 0.2]",
        WEIL,
        ArchimedeanScan { lo: None, below: 0.2, above: 0.2 },
    ),
    fig("fig7", "σ⁺ beyond μ = 2 without and with the prime 2", WEIL, SignChange { mu0: 2, parity: Parity::Even, width: 0.2 }),
    fig("fig8", "σ⁺ at L = log 3 with the prime sum replaced by a real p near 2", WEIL, RealPrime),
    fig("fig9", "σ⁺ beyond μ = 3 without and with the prime 3", WEIL, SignChange { mu0: 3, parity: Parity::Even, width: 0.2 }),
    fig("fig10", "σ⁺ beyond μ = 4 without and with the prime power 4", WEIL, SignChange { mu0: 4, parity: Parity::Even, width: 0.2 }),
    fig("fig11", "σ⁺ beyond μ = 5 without and with the prime 5", WEIL, SignChange { mu0: 5, parity: Parity::Even, width: 0.2 }),
    fig("fig12", "σ⁺ beyond μ = 7 without and with the prime 7", WEIL, SignChange { mu0: 7, parity: Parity::Even, width: 0.13 }),
    fig("fig13", "σ⁻ beyond μ = 2 without and with the prime 2", WEIL, SignChange { mu0: 2, parity: Parity::Odd, width: 0.2 }),
    fig("fig14", "σ⁻ beyond μ = 3 without and with the prime 3", WEIL, SignChange { mu0: 3, parity: Parity::Odd, width: 0.2 }),
    fig("fig15", "σ⁻ beyond μ = 4 without and with the prime power 4", WEIL, SignChange { mu0: 4, parity: Parity::Odd, width: 0.2 }),
    fig("fig16", "σ⁻ beyond μ = 5 without and with the prime 5", WEIL, SignChange { mu0: 5, parity: Parity::Odd, width: 0.2 }),
    fig("fig17", "σ⁻ beyond μ = 7 without and with the prime 7", WEIL, SignChange { mu0: 7, parity: Parity::Odd, width: 0.13 }),
    fig("fig18", "smallest eigenvalue of σ⁺ as a function of μ", DEEP, Decay { parity: Parity::Even, count: 1 }),
    fig("fig19", "smallest eigenvalue of σ⁻ as a function of μ", DEEP, Decay { parity: Parity::Odd, count: 1 }),
    fig("fig20", "several smallest eigenvalues of σ⁺ as functions of μ", DEEP, Decay { parity: Parity::Even, count: 6 }),
    fig("fig21", "λ_1(D(λ,k)) and λ_1(D(λ,k+1)) as functions of μ", SWEEP, Curves { n: 1, value: CurveValue::Eigenvalues }),
    fig("fig22", "λ_2(D(λ,k)) and λ_2(D(λ,k+1)) as functions of μ", SWEEP, Curves { n: 2, value: CurveValue::Eigenvalues }),
    fig("fig36", "quantization residual for n = 1", SWEEP, Curves { n: 1, value: CurveValue::Residual }),
    fig("fig37", "quantization residual for n = 2", SWEEP, Curves { n: 2, value: CurveValue::Residual }),
    fig("fig38", "eigenvector distance to D₀ for n = 1", SWEEP, Curves { n: 1, value: CurveValue::Distance }),
    fig("fig39", "eigenvector distance to D₀ for n = 2", SWEEP, Curves { n: 2, value: CurveValue::Distance }),
    fig("fig40", "zeros selected by the eigenvector-distance criterion", SWEEP, Extraction(Criterion::EigvecDistance)),
    fig("tab5p5", "Dirac spectrum against zeta zeros at μ = 5.5", SPEC, DiracTable("5.5")),
    fig("tab6p5", "Dirac spectrum against zeta zeros at μ = 6.5", SPEC, DiracTable("6.5")),
    fig("tab7p5", "Dirac spectrum against zeta zeros at μ = 7.5", SPEC, DiracTable("7.5")),
    fig("tab8p5", "Dirac spectrum against zeta zeros at μ = 8.5", SPEC, DiracTable("8.5")),
    fig("tab9p5", "Dirac spectrum against zeta zeros at μ = 9.5", SPEC, DiracTable("9.5")),
    fig("tab10p5", "Dirac spectrum against zeta zeros at μ = 10.5", SPEC, DiracTable("10.5")),
    fig("chi5p5", "prolate characteristic values at μ = 5.5", CHI, ChiTable("5.5")),
    fig("chi6p5", "prolate characteristic values at μ = 6.5", CHI, ChiTable("6.5")),
    fig("chi7p5", "prolate characteristic values at μ = 7.5", CHI, ChiTable("7.5")),
    fig("chi8p5", "prolate characteristic values at μ = 8.5", CHI, ChiTable("8.5")),
    fig("chi9p5", "prolate characteristic values at μ = 9.5", CHI, ChiTable("9.5")),
    fig("chi10p5", "prolate characteristic values at μ = 10.5", CHI, ChiTable("10.5")),
    fig("zeta-cycle", "character coefficients of Σ_μℰf at the first zeros", Defaults::CYCLE, ZetaCycle),
];

pub fn find(id: &str) -> Result<&'static Figure> {
    FIGURES
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::invalid(format!("unknown figure id '{id}' (see reproduce-figure --list)")))
}

pub fn listing() -> Artifact {
    let mut a = Artifact::csv("figures.csv", &["id", "title"]);
    for f in FIGURES {
        a.row(vec![f.id.to_string(), format!("\"{}\"", f.title)]);
    }
    a
}

impl Figure {
    pub fn run(&self, cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
        let mut artifacts = dispatch!(cfg, run_pipeline(self.pipeline, cfg, ctx))?;
        let single = artifacts.len() == 1;
        for a in &mut artifacts {
            let ext = a.name.rsplit('.').next().unwrap_or("csv").to_string();
            let stem = a.name.trim_end_matches(&format!(".{ext}")).to_string();
            a.name = if single {
                format!("{}.{ext}", self.id)
            } else {
                format!("{}-{stem}.{ext}", self.id)
            };
        }
        Ok(artifacts)
    }
}

fn run_pipeline<T: Real>(p: Pipeline, cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
    match p {
        DiracTable(mu) => commands::dirac::<T>(cfg, ctx, Some(mu), false),
        ChiTable(mu) => commands::prolate_table::<T>(cfg, ctx, Some(mu), 8, None),
        FirstEigenvalueCurves => first_eigenvalue_curves::<T>(cfg, ctx),
        ArchimedeanConstant => archimedean_curve::<T>(cfg),
        ArchimedeanScan { lo, below, above } => {
            let log2 = T::ln2();
            let a = lo.map(T::from_f64).unwrap_or(log2.clone() - T::from_f64(below));
            let b = log2 + T::from_f64(above);
            let ls = override_or(cfg, linspace(&a, &b, 40))?;
            scan_table::<T>("scan.csv", &ls, cfg, &WhichTerms::archimedean_only(), ctx)
        }
        SignChange { mu0, parity, width } => sign_change::<T>(cfg, ctx, mu0, parity, width),
        RealPrime => real_prime::<T>(cfg, ctx),
        Decay { parity, count } => decay::<T>(cfg, ctx, parity, count),
        Curves { n, value } => curves::<T>(cfg, ctx, n, value),
        Extraction(c) => {
            let mus: Vec<T> = cfg.mu_points(Some(&default_sweep()?))?;
            let ccfg = commands::criteria_config(cfg);
            let zeros = cfg.zeros()?;
            let n_max = 31;
            let grid = sweep(&mus, n_max, &ccfg, ctx)?;
            let reports = extract_from_grid(n_max, &grid, c, &zeros, &ccfg, ctx)?;
            Ok(vec![
                commands::zeros_artifact("zeros.csv", &reports, &zeros).note("criterion", c),
                Artifact::json("report.json", commands::report_json(&reports)),
            ])
        }
        ZetaCycle => zeta_cycle::<T>(cfg, ctx),
    }
}

fn default_sweep() -> Result<Range> {
    Range::new(DEFAULT_SWEEP.0, DEFAULT_SWEEP.1, DEFAULT_SWEEP.2)
}

/// `m + 1` equally spaced points from `a` to `b`.
fn linspace<T: Real>(a: &T, b: &T, m: usize) -> Vec<T> {
    (0..=m)
        .map(|j| a.clone() + (b.clone() - a) * T::from_ratio(j as i64, m as i64))
        .collect()
}

/// L values: the figure's own grid unless --mu-range was given.
fn override_or<T: Real>(cfg: &RunConfig, ls: Vec<T>) -> Result<Vec<T>> {
    match &cfg.mu_range {
        Some(r) => Ok(r.points::<T>()?.iter().map(Real::ln).collect()),
        None => Ok(ls),
    }
}

fn scan_table<T: Real>(
    name: &str,
    ls: &[T],
    cfg: &RunConfig,
    mode: &WhichTerms,
    ctx: &NumContext,
) -> Result<Vec<Artifact>> {
    let mus: Vec<T> = ls.iter().map(Real::exp).collect();
    let scan = positivity_scan(&mus, cfg.trunc_n, mode, ctx)?;
    let mut a = Artifact::csv(name, &["L", "mu", "min_even", "min_odd"]).note("terms", mode);
    for (l, p) in ls.iter().zip(&scan) {
        a.row(vec![dec(l), dec(&p.mu), dec(&p.min_even), dec(&p.min_odd)]);
    }
    Ok(vec![a])
}

fn first_eigenvalue_curves<T: Real>(cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
    let mus: Vec<T> = cfg.mu_points(Some(&Range::new("5", "12", "0.1")?))?;
    let rows = mus
        .par_iter()
        .map(|mu| {
            let _g = ctx.install();
            let k_max = cfg.k.k_at(mu, ctx)?;
            let full = build_projection(&mu.sqrt(), k_max, cfg.trunc_n, ctx)?;
            (1..=k_max / 2)
                .map(|l| {
                    let d = dirac_from_projection(full.truncate(2 * l)?);
                    let spec = dirac_spectrum(&d, ctx)?;
                    let first = spec.positive.first().map(dec).unwrap_or_default();
                    Ok(vec![dec(mu), (2 * l).to_string(), first])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut curves = Artifact::csv("curves.csv", &["mu", "k", "lambda_1"]);
    rows.into_iter().flatten().for_each(|r| curves.row(r));

    // special points predicted by the zeros: μ = exp(2πm/ζ_n) at height ζ_n
    let (lo, hi) = (mus.first().cloned(), mus.last().cloned());
    let mut points = Artifact::csv("points.csv", &["n", "m", "mu", "zeta"]);
    if let (Some(lo), Some(hi)) = (lo, hi) {
        let zeros = cfg.zeros()?;
        let two_pi = T::pi() * T::from_i64(2);
        for n in 1..=zeros.len() {
            let z: T = zeros.get(n).expect("index within table");
            if z > two_pi.clone() * &hi {
                break;
            }
            for m in 1.. {
                let mu = (two_pi.clone() * T::from_i64(m) / &z).exp();
                if mu > hi {
                    break;
                }
                if mu >= lo {
                    points.row(vec![n.to_string(), m.to_string(), dec(&mu), dec(&z)]);
                }
            }
        }
    }
    Ok(vec![curves, points])
}

fn archimedean_curve<T: Real>(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let ls = override_or(cfg, linspace(&T::from_f64(0.05), &T::from_f64(1.5), 145))?;
    let mut a = Artifact::csv("constant.csv", &["L", "value"]).note("value-at-log-2", dec(&archimedean_constant(&T::ln2())));
    for l in &ls {
        a.row(vec![dec(l), dec(&archimedean_constant(l))]);
    }
    Ok(vec![a])
}

fn sign_change<T: Real>(cfg: &RunConfig, ctx: &NumContext, mu0: i64, parity: Parity, width: f64) -> Result<Vec<Artifact>> {
    // μ0·e^t keeps the first point exactly at μ0; exp(log μ0) may round below
    // it, and then the "newest" prime power would be the previous one
    let base = T::from_i64(mu0);
    let mus: Vec<T> = match &cfg.mu_range {
        Some(r) => r.points()?,
        None => linspace(&T::zero(), &T::from_f64(width), 40)
            .iter()
            .map(|t| base.clone() * t.exp())
            .collect(),
    };
    let ls: Vec<T> = mus.iter().map(Real::ln).collect();
    let with = WhichTerms::full();
    let without = WhichTerms {
        exclude_newest: true,
        ..WhichTerms::full()
    };
    let pick = |p: &zetalab::weilform::ScanPoint<T>| match parity {
        Parity::Even => p.min_even.clone(),
        Parity::Odd => p.min_odd.clone(),
    };
    let a = positivity_scan(&mus, cfg.trunc_n, &without, ctx)?;
    let b = positivity_scan(&mus, cfg.trunc_n, &with, ctx)?;
    let mut out = Artifact::csv("scan.csv", &["mu", "L", "without", "with"])
        .note("block", parity.name())
        .note("newest", mu0);
    for ((l, pa), pb) in ls.iter().zip(&a).zip(&b) {
        out.row(vec![dec(&pa.mu), dec(l), dec(&pick(pa)), dec(&pick(pb))]);
    }
    let crosses = a.iter().any(|p| pick(p) < T::zero());
    let stays = b.iter().all(|p| pick(p) > T::zero());
    Ok(vec![out
        .note("without-changes-sign", crosses)
        .note("with-stays-positive", stays)])
}

fn real_prime<T: Real>(cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
    let mu: T = cfg.mu_or(Some("3"))?;
    let ps: Vec<f64> = (0..=20).map(|j| 1.999 + 1e-4 * j as f64).collect();
    let values = ps
        .par_iter()
        .map(|&p| {
            let _g = ctx.install();
            let w = zetalab::weilform::assemble_sigma(&mu, cfg.trunc_n, &WhichTerms::with_real_prime(p), ctx)?;
            Ok(w.smallest_eigenvalues(ctx)?.0)
        })
        .collect::<Result<Vec<T>>>()?;
    let mut a = Artifact::csv("real-prime.csv", &["p", "min_even"]).note("mu", dec(&mu));
    for (p, v) in ps.iter().zip(&values) {
        a.row(vec![format!("{p:.4}"), dec(v)]);
    }
    Ok(vec![a])
}

fn decay<T: Real>(cfg: &RunConfig, ctx: &NumContext, parity: Parity, count: usize) -> Result<Vec<Artifact>> {
    let mus: Vec<T> = cfg.mu_points(Some(&Range::new("2", "11", "1")?))?;
    let rows = mus
        .par_iter()
        .map(|mu| {
            let _g = ctx.install();
            let w = zetalab::weilform::assemble_sigma(mu, cfg.trunc_n, &cfg.mode, ctx)?;
            let ev = sym_eigenvalues(w.block(parity), ctx)?;
            Ok(ev
                .into_iter()
                .take(count)
                .enumerate()
                .map(|(j, v)| {
                    let lg = if v.is_zero() { String::new() } else { format!("{:.6}", v.abs().to_f64().log10()) };
                    vec![dec(mu), (j + 1).to_string(), dec(&v), lg]
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut a = Artifact::csv("decay.csv", &["mu", "j", "eigenvalue", "log10_abs"]).note("block", parity.name());
    rows.into_iter().flatten().for_each(|r| a.row(r));
    Ok(vec![a])
}

fn curves<T: Real>(cfg: &RunConfig, ctx: &NumContext, n: usize, value: CurveValue) -> Result<Vec<Artifact>> {
    let mus: Vec<T> = cfg.mu_points(Some(&default_sweep()?))?;
    let ccfg = commands::criteria_config(cfg);
    let grid = sweep(&mus, n, &ccfg, ctx)?;
    let columns: &[&str] = match value {
        CurveValue::Eigenvalues => &["mu", "k", "lambda_k", "lambda_k1"],
        CurveValue::Residual => &["mu", "k", "lambda_k", "residual"],
        CurveValue::Distance => &["mu", "k", "lambda_k", "distance", "rotation"],
    };
    let mut a = Artifact::csv("curves.csv", columns).note("n", n);
    for p in &grid {
        let s = &p.scores[n - 1];
        let mut row = vec![dec(&p.mu), p.k.to_string(), dec(&s.eigenvalue)];
        match value {
            CurveValue::Eigenvalues => row.push(dec(&(s.eigenvalue.clone() - &s.gap))),
            CurveValue::Residual => row.push(dec(&s.residual)),
            CurveValue::Distance => row.extend([dec(&s.distance), s.rotation.to_string()]),
        }
        a.row(row);
    }
    Ok(vec![a])
}

fn zeta_cycle<T: Real>(cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
    let zeros = cfg.zeros()?;
    let family = TestFn::family(10);
    let mut reports: Vec<Value> = Vec::new();
    for j in 1..=3 {
        let s: T = zeros.get(j).ok_or_else(|| Error::invalid("zeros table too short"))?;
        for n_cover in 1..=2 {
            let r = zeta_cycle_check(&s, n_cover, &family, ctx)?;
            reports.push(json!({"zero_index": j, "report": commands::cycle_json(&r)}));
        }
    }
    let control = zeta_cycle_check(&T::from_i64(15), 1, &family, ctx)?;
    reports.push(json!({"control": commands::cycle_json(&control)}));
    Ok(vec![Artifact::json("reports.json", Value::Array(reports))])
}
