//! Subcommands and their computations.

use clap::Subcommand;
use rayon::prelude::*;
use serde_json::{json, Value};
use zetalab::basis::Parity;
use zetalab::criteria::{
    discrepancy, extract_from_grid, sweep, CriteriaConfig, Criterion, CriterionReport, GridPoint, ZetaZerosTable,
};
use zetalab::dirac::{dirac_build, dirac_spectrum, DiracSpectrum};
use zetalab::prolate::{nu_cutoff, prolate_family};
use zetalab::prolateproj::build_projection;
use zetalab::weilform::{assemble_sigma, positivity_scan};
use zetalab::zetacycle::{zeta_cycle_check, zeta_cycle_check_at, TestFn, ZetaCycleReport, VANISHING_THRESHOLD};
use zetalab::{Error, NumContext, Real, Result};

use crate::config::{Defaults, Range, RunConfig};
use crate::figures;
use crate::output::{dec, Artifact};

/// Runs `$f::<T>(args…)` with `T` chosen by the configured float type.
macro_rules! dispatch {
    ($cfg:expr, $f:ident ( $($arg:expr),* $(,)? )) => {
        match $cfg.float {
            $crate::config::Float::F64 => $f::<f64>($($arg),*),
            $crate::config::Float::Mp => $f::<zetalab::BigReal>($($arg),*),
        }
    };
}
pub(crate) use dispatch;

pub const DEFAULT_SWEEP: (&str, &str, &str) = ("5", "16.5", "0.1");

#[derive(Debug, Subcommand)]
pub enum Command {
    /// χ(μ, n) for the prolate family around the cutoff ν(μ).
    ProlateTable {
        /// Number of orders listed.
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// First order listed [default: ν(μ) − 5].
        #[arg(long)]
        from: Option<usize>,
    },
    /// Matrix of the Weil quadratic form σ in the basis ξ_n, |n| ≤ N.
    WeilMatrix,
    /// Smallest eigenvalues of σ⁺ and σ⁻ across a μ (or L) grid.
    PositivityScan {
        /// Grid in L = log μ instead of --mu-range.
        #[arg(long = "l-range")]
        l_range: Option<String>,
    },
    /// Orthonormal vectors spanning the prolate projection.
    Projection,
    /// Positive spectrum of D(√μ, k) next to the zeta zeros.
    DiracSpectrum {
        /// List every positive eigenvalue, not only those ≤ 2πμ.
        #[arg(long)]
        all: bool,
    },
    /// Criteria curves over a μ grid and the zeros they select.
    CriteriaSweep {
        #[arg(long, default_value = "eigvec-distance")]
        criterion: String,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
        #[arg(long = "mu-min")]
        mu_min: Option<String>,
        #[arg(long = "mu-max")]
        mu_max: Option<String>,
        #[arg(long)]
        step: Option<String>,
    },
    /// Discrepancy statistics A, R, NR between spectrum and zeros.
    Discrepancy,
    /// Character coefficients of Σ_μℰf for the test family.
    ZetaCycleCheck {
        /// Imaginary part s of the character u^{is} [default: ζ_j of --zero-index].
        #[arg(long)]
        s: Option<String>,
        #[arg(long = "zero-index", default_value_t = 1)]
        zero_index: usize,
        /// Circle length L = 2π·n/s.
        #[arg(long = "n-cover", default_value_t = 1)]
        n_cover: usize,
        /// Explicit circle length (overrides --n-cover).
        #[arg(long)]
        l: Option<String>,
        #[arg(long = "family-size", default_value_t = 10)]
        family_size: usize,
    },
    /// Recompute the data behind a named figure or table.
    ReproduceFigure {
        /// Figure id; see --list.
        id: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ProlateTable { .. } => "prolate-table",
            Command::WeilMatrix => "weil-matrix",
            Command::PositivityScan { .. } => "positivity-scan",
            Command::Projection => "projection",
            Command::DiracSpectrum { .. } => "dirac-spectrum",
            Command::CriteriaSweep { .. } => "criteria-sweep",
            Command::Discrepancy => "discrepancy",
            Command::ZetaCycleCheck { .. } => "zeta-cycle-check",
            Command::ReproduceFigure { .. } => "reproduce-figure",
        }
    }

    pub fn defaults(&self) -> Result<Defaults> {
        Ok(match self {
            Command::ProlateTable { .. } => Defaults::PROLATE,
            Command::WeilMatrix | Command::PositivityScan { .. } => Defaults::WEIL,
            Command::CriteriaSweep { .. } | Command::Discrepancy => Defaults::SPECTRAL.with_trunc(48),
            Command::Projection | Command::DiracSpectrum { .. } => Defaults::SPECTRAL,
            Command::ZetaCycleCheck { .. } => Defaults::CYCLE,
            Command::ReproduceFigure { id: Some(id), .. } => figures::find(id)?.defaults,
            Command::ReproduceFigure { id: None, .. } => Defaults::SPECTRAL,
        })
    }

    /// Command-specific settings echoed into output headers.
    pub fn settings(&self) -> Vec<(String, String)> {
        let kv = |k: &str, v: String| (k.to_string(), v);
        match self {
            Command::ProlateTable { count, from } => {
                let mut v = vec![kv("count", count.to_string())];
                if let Some(f) = from {
                    v.push(kv("from", f.to_string()));
                }
                v
            }
            Command::PositivityScan { l_range: Some(r) } => vec![kv("l-range", r.clone())],
            Command::DiracSpectrum { all } => vec![kv("all", all.to_string())],
            Command::CriteriaSweep {
                criterion, n_max, ..
            } => vec![kv("criterion", criterion.clone()), kv("n-max", n_max.to_string())],
            Command::ZetaCycleCheck {
                s,
                zero_index,
                n_cover,
                l,
                family_size,
            } => {
                let mut v = match s {
                    Some(s) => vec![kv("s", s.clone())],
                    None => vec![kv("zero-index", zero_index.to_string())],
                };
                match l {
                    Some(l) => v.push(kv("l", l.clone())),
                    None => v.push(kv("n-cover", n_cover.to_string())),
                }
                v.push(kv("family-size", family_size.to_string()));
                v
            }
            Command::ReproduceFigure { id: Some(id), .. } => vec![kv("figure", id.clone())],
            _ => Vec::new(),
        }
    }

    /// Folds command-specific range flags into the run configuration.
    pub fn adjust(&self, cfg: &mut RunConfig) -> Result<()> {
        if let Command::CriteriaSweep {
            mu_min, mu_max, step, ..
        } = self
        {
            if mu_min.is_some() || mu_max.is_some() || step.is_some() {
                let base = cfg.mu_range.clone().unwrap_or(Range::new(
                    DEFAULT_SWEEP.0,
                    DEFAULT_SWEEP.1,
                    DEFAULT_SWEEP.2,
                )?);
                cfg.mu_range = Some(Range::new(
                    mu_min.as_deref().unwrap_or(&base.a),
                    mu_max.as_deref().unwrap_or(&base.b),
                    step.as_deref().unwrap_or(&base.step),
                )?);
            }
        }
        Ok(())
    }

    pub fn execute(&self, cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
        match self {
            Command::ProlateTable { count, from } => dispatch!(cfg, prolate_table(cfg, ctx, None, *count, *from)),
            Command::WeilMatrix => dispatch!(cfg, weil_matrix(cfg, ctx)),
            Command::PositivityScan { l_range } => dispatch!(cfg, positivity(cfg, ctx, l_range.as_deref())),
            Command::Projection => dispatch!(cfg, projection(cfg, ctx)),
            Command::DiracSpectrum { all } => dispatch!(cfg, dirac(cfg, ctx, None, *all)),
            Command::CriteriaSweep {
                criterion, n_max, ..
            } => {
                let c: Criterion = criterion.parse()?;
                dispatch!(cfg, criteria_sweep(cfg, ctx, c, *n_max))
            }
            Command::Discrepancy => dispatch!(cfg, discrepancy_table(cfg, ctx)),
            Command::ZetaCycleCheck {
                s,
                zero_index,
                n_cover,
                l,
                family_size,
            } => {
                let req = CycleRequest {
                    s: s.as_deref(),
                    zero_index: *zero_index,
                    n_cover: *n_cover,
                    l: l.as_deref(),
                    family_size: *family_size,
                };
                dispatch!(cfg, zeta_cycle(cfg, ctx, &req))
            }
            Command::ReproduceFigure { id: None, list: true } => Ok(vec![figures::listing()]),
            Command::ReproduceFigure { id: None, list: false } => {
                Err(Error::invalid("reproduce-figure needs a figure id (see --list)"))
            }
            Command::ReproduceFigure { id: Some(id), .. } => figures::find(id)?.run(cfg, ctx),
        }
    }
}

pub fn prolate_table<T: Real>(
    cfg: &RunConfig,
    ctx: &NumContext,
    mu_default: Option<&str>,
    count: usize,
    from: Option<usize>,
) -> Result<Vec<Artifact>> {
    let mu: T = cfg.mu_or(mu_default)?;
    let nu = nu_cutoff(&mu, ctx)?;
    let first = from.unwrap_or(nu.saturating_sub(5));
    let family = prolate_family(first + count, &mu.sqrt(), ctx)?;
    let mut a = Artifact::csv("prolate-table.csv", &["n", "chi"]).note("nu", nu);
    for f in &family[first..] {
        a.row(vec![f.m.to_string(), dec(&f.chi)]);
    }
    Ok(vec![a])
}

pub fn weil_matrix<T: Real>(cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
    let mu: T = cfg.mu_or(None)?;
    let w = assemble_sigma(&mu, cfg.trunc_n, &cfg.mode, ctx)?;
    let (even, odd) = w.smallest_eigenvalues(ctx)?;
    let mut a = Artifact::csv("weil-matrix.csv", &["block", "n", "m", "value"])
        .note("min-eigenvalue-even", dec(&even))
        .note("min-eigenvalue-odd", dec(&odd));
    for p in [Parity::Even, Parity::Odd] {
        let block = w.block(p);
        for i in 0..p.block_dim(w.n) {
            for j in i..p.block_dim(w.n) {
                a.row(vec![
                    p.name().to_string(),
                    p.index(i).to_string(),
                    p.index(j).to_string(),
                    dec(block.get(i, j)),
                ]);
            }
        }
    }
    Ok(vec![a])
}

pub fn positivity<T: Real>(cfg: &RunConfig, ctx: &NumContext, l_range: Option<&str>) -> Result<Vec<Artifact>> {
    let mus: Vec<T> = match l_range {
        Some(r) => r.parse::<Range>()?.points::<T>()?.iter().map(Real::exp).collect(),
        None => cfg.mu_points(None)?,
    };
    let scan = positivity_scan(&mus, cfg.trunc_n, &cfg.mode, ctx)?;
    let mut a = Artifact::csv("positivity-scan.csv", &["mu", "L", "min_even", "min_odd"]);
    for p in &scan {
        a.row(vec![dec(&p.mu), dec(&p.mu.ln()), dec(&p.min_even), dec(&p.min_odd)]);
    }
    Ok(vec![a])
}

pub fn projection<T: Real>(cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
    let mu: T = cfg.mu_or(None)?;
    let k = cfg.k.k_at(&mu, ctx)?;
    let p = build_projection(&mu.sqrt(), k, cfg.trunc_n, ctx)?;
    let mut a = Artifact::csv("projection.csv", &["vector", "parity", "index", "value"])
        .note("k", k)
        .note("L", dec(&p.l));
    for v in &p.vectors {
        for (i, x) in v.coords.iter().enumerate() {
            a.row(vec![
                v.n.to_string(),
                v.parity.name().to_string(),
                v.parity.index(i).to_string(),
                dec(x),
            ]);
        }
    }
    Ok(vec![a])
}

/// Spectrum of D(√μ, k) at the configured μ (or `mu_default`).
pub fn dirac_at<T: Real>(cfg: &RunConfig, ctx: &NumContext, mu: &T) -> Result<(usize, DiracSpectrum<T>)> {
    let k = cfg.k.k_at(mu, ctx)?;
    let d = dirac_build(&mu.sqrt(), k, cfg.trunc_n, ctx)?;
    Ok((k, dirac_spectrum(&d, ctx)?))
}

pub fn dirac<T: Real>(cfg: &RunConfig, ctx: &NumContext, mu_default: Option<&str>, all: bool) -> Result<Vec<Artifact>> {
    let mu: T = cfg.mu_or(mu_default)?;
    let zeros = cfg.zeros()?;
    let (k, spec) = dirac_at(cfg, ctx, &mu)?;
    let top = T::pi() * T::from_i64(2) * &mu;
    let count = spec.count_upto(&top);
    let shown = if all { spec.positive.len() } else { count };
    let mut a = Artifact::csv("dirac-spectrum.csv", &["j", "lambda", "zeta"])
        .note("k", k)
        .note("kernel-dim", spec.kernel_dim)
        .note("kernel-index", spec.kernel_index)
        .note("count-below-2pi-mu", count);
    for (j, e) in spec.positive.iter().take(shown).enumerate() {
        let z = zeros.decimal(j + 1).unwrap_or("").to_string();
        a.row(vec![(j + 1).to_string(), dec(e), z]);
    }
    Ok(vec![a])
}

pub fn criteria_config(cfg: &RunConfig) -> CriteriaConfig {
    CriteriaConfig {
        n_trunc: cfg.trunc_n,
        k: cfg.k,
        ..CriteriaConfig::default()
    }
}

pub fn curves_artifact<T: Real>(name: &str, grid: &[GridPoint<T>]) -> Artifact {
    let mut a = Artifact::csv(
        name,
        &["mu", "k", "n", "lambda_k", "lambda_k1", "gap", "residual", "distance", "rotation"],
    );
    for p in grid {
        for s in &p.scores {
            a.row(vec![
                dec(&p.mu),
                p.k.to_string(),
                s.n.to_string(),
                dec(&s.eigenvalue),
                dec(&(s.eigenvalue.clone() - &s.gap)),
                dec(&s.gap),
                dec(&s.residual),
                dec(&s.distance),
                s.rotation.to_string(),
            ]);
        }
    }
    a
}

pub fn report_json<T: Real>(reports: &[CriterionReport<T>]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                let special: Vec<Value> = r
                    .special
                    .iter()
                    .map(|p| {
                        json!({
                            "mu": dec(&p.mu),
                            "k": p.k,
                            "eigenvalue": dec(&p.scores.eigenvalue),
                            "gap": dec(&p.scores.gap),
                            "residual": dec(&p.scores.residual),
                            "distance": dec(&p.scores.distance),
                            "rotation": p.scores.rotation,
                        })
                    })
                    .collect();
                json!({
                    "n": r.n,
                    "criterion": r.criterion.name(),
                    "reference": r.reference.as_ref().map(dec),
                    "selected": r.best,
                    "error": r.error.as_ref().map(dec),
                    "special": special,
                })
            })
            .collect(),
    )
}

/// The two-row comparison: selected eigenvalue against ζ_n.
pub fn zeros_artifact<T: Real>(name: &str, reports: &[CriterionReport<T>], zeros: &ZetaZerosTable) -> Artifact {
    let mut a = Artifact::csv(name, &["n", "lambda", "zeta", "error", "mu", "k"]);
    for r in reports {
        let z = zeros.decimal(r.n).unwrap_or("").to_string();
        match r.selected() {
            Some(p) => a.row(vec![
                r.n.to_string(),
                dec(&p.scores.eigenvalue),
                z,
                r.error.as_ref().map(dec).unwrap_or_default(),
                dec(&p.mu),
                p.k.to_string(),
            ]),
            None => a.row(vec![r.n.to_string(), String::new(), z, String::new(), String::new(), String::new()]),
        }
    }
    let found = reports.iter().filter(|r| r.best.is_some()).count();
    a.note("found", format!("{found}/{}", reports.len()))
}

pub fn criteria_sweep<T: Real>(
    cfg: &RunConfig,
    ctx: &NumContext,
    criterion: Criterion,
    n_max: usize,
) -> Result<Vec<Artifact>> {
    if n_max == 0 {
        return Err(Error::invalid("n-max must be positive"));
    }
    let default = Range::new(DEFAULT_SWEEP.0, DEFAULT_SWEEP.1, DEFAULT_SWEEP.2)?;
    let mus: Vec<T> = cfg.mu_points(Some(&default))?;
    let ccfg = criteria_config(cfg);
    let zeros = cfg.zeros()?;
    let grid = sweep(&mus, n_max, &ccfg, ctx)?;
    let reports = extract_from_grid(n_max, &grid, criterion, &zeros, &ccfg, ctx)?;
    Ok(vec![
        curves_artifact("criteria-curves.csv", &grid),
        zeros_artifact("criteria-zeros.csv", &reports, &zeros),
        Artifact::json("criteria-report.json", report_json(&reports)),
    ])
}

pub fn discrepancy_table<T: Real>(cfg: &RunConfig, ctx: &NumContext) -> Result<Vec<Artifact>> {
    let mus: Vec<T> = match (&cfg.mu, &cfg.mu_range) {
        (_, Some(_)) => cfg.mu_points(None)?,
        (Some(_), None) => vec![cfg.mu_or(None)?],
        (None, None) => return Err(Error::invalid("discrepancy needs --mu or --mu-range")),
    };
    let ccfg = criteria_config(cfg);
    let zeros = cfg.zeros()?;
    let rows = mus
        .par_iter()
        .map(|mu| {
            let _g = ctx.install();
            discrepancy(mu, &ccfg, &zeros, ctx)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut a = Artifact::csv("discrepancy.csv", &["mu", "k", "count", "A", "R", "NR"]);
    for d in rows {
        a.row(vec![
            dec(&d.mu),
            d.k.to_string(),
            d.count.to_string(),
            dec(&d.a),
            dec(&d.r),
            dec(&d.nr),
        ]);
    }
    Ok(vec![a])
}

pub struct CycleRequest<'a> {
    pub s: Option<&'a str>,
    pub zero_index: usize,
    pub n_cover: usize,
    pub l: Option<&'a str>,
    pub family_size: usize,
}

pub fn cycle_json<T: Real>(r: &ZetaCycleReport<T>) -> Value {
    json!({
        "s": dec(&r.s),
        "L": dec(&r.l),
        "n_cover": r.n_cover,
        "coefficients": r.coefficients.iter().map(|c| json!({"name": c.name, "modulus": dec(&c.modulus)})).collect::<Vec<_>>(),
        "max_modulus": dec(&r.max_modulus),
        "vanishes": r.vanishes,
    })
}

pub fn zeta_cycle<T: Real>(cfg: &RunConfig, ctx: &NumContext, req: &CycleRequest) -> Result<Vec<Artifact>> {
    if req.family_size == 0 {
        return Err(Error::invalid("family-size must be positive"));
    }
    let s: T = match req.s {
        Some(s) => T::parse(s)?,
        None => cfg
            .zeros()?
            .get(req.zero_index)
            .ok_or_else(|| Error::invalid(format!("no zero with index {} in the table", req.zero_index)))?,
    };
    let family = TestFn::family(req.family_size);
    let report = match req.l {
        Some(l) => zeta_cycle_check_at(&s, &T::parse(l)?, &family, ctx)?,
        None => zeta_cycle_check(&s, req.n_cover, &family, ctx)?,
    };
    Ok(vec![Artifact::json("zeta-cycle.json", cycle_json(&report))
        .note("threshold", VANISHING_THRESHOLD)
        .note("vanishes", report.vanishes)])
}
