//! Run configuration assembled from defaults, a TOML file, `ZETALAB_*`
//! environment variables and command-line flags, in increasing priority.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use zetalab::criteria::{mu_grid, KPolicy, ZetaZerosTable};
use zetalab::weilform::WhichTerms;
use zetalab::{Error, NumContext, Real, Result};

pub const ENV_CONFIG: &str = "ZETALAB_CONFIG";

/// Scalar type used by a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Float {
    /// Hardware doubles.
    F64,
    /// Multi-precision floats at `digits` decimal digits.
    Mp,
}

impl FromStr for Float {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "f64" | "double" => Ok(Float::F64),
            "mp" | "big" => Ok(Float::Mp),
            other => Err(Error::invalid(format!("float must be 'f64' or 'mp', got '{other}'"))),
        }
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Float::F64 => "f64",
            Float::Mp => "mp",
        })
    }
}

/// One configuration source. Unset fields defer to lower layers.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Layer {
    pub digits: Option<u32>,
    pub trunc_n: Option<usize>,
    pub quad_order: Option<usize>,
    pub float: Option<String>,
    pub mu: Option<String>,
    pub mu_range: Option<String>,
    pub k: Option<String>,
    pub mode: Option<String>,
    pub zeros_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
}

fn parse_env<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::invalid(format!("{key}={v:?} is not a valid value")))
}

impl Layer {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read config file {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Reads `ZETALAB_<FIELD>` variables through `var`.
    pub fn from_env(var: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let get = |field: &str| {
            let key = format!("ZETALAB_{field}");
            var(&key).map(|v| (key, v))
        };
        let num = |field: &str| -> Result<Option<u64>> {
            get(field).map(|(k, v)| parse_env::<u64>(&k, &v)).transpose()
        };
        Ok(Layer {
            digits: num("DIGITS")?.map(|v| v as u32),
            trunc_n: num("TRUNC_N")?.map(|v| v as usize),
            quad_order: num("QUAD_ORDER")?.map(|v| v as usize),
            float: get("FLOAT").map(|(_, v)| v),
            mu: get("MU").map(|(_, v)| v),
            mu_range: get("MU_RANGE").map(|(_, v)| v),
            k: get("K").map(|(_, v)| v),
            mode: get("MODE").map(|(_, v)| v),
            zeros_file: get("ZEROS_FILE").map(|(_, v)| PathBuf::from(v)),
            out: get("OUT").map(|(_, v)| PathBuf::from(v)),
            workers: num("WORKERS")?.map(|v| v as usize),
        })
    }

    /// Fields set in `top` replace those of `self`.
    pub fn overlay(self, top: Layer) -> Layer {
        Layer {
            digits: top.digits.or(self.digits),
            trunc_n: top.trunc_n.or(self.trunc_n),
            quad_order: top.quad_order.or(self.quad_order),
            float: top.float.or(self.float),
            mu: top.mu.or(self.mu),
            mu_range: top.mu_range.or(self.mu_range),
            k: top.k.or(self.k),
            mode: top.mode.or(self.mode),
            zeros_file: top.zeros_file.or(self.zeros_file),
            out: top.out.or(self.out),
            workers: top.workers.or(self.workers),
        }
    }
}

/// Settings a command uses when no layer sets them.
#[derive(Clone, Copy, Debug)]
pub struct Defaults {
    pub digits: u32,
    pub float: Float,
    pub trunc_n: usize,
    pub quad_order: usize,
}

impl Defaults {
    /// Double-precision sweeps over Dirac spectra.
    pub const SPECTRAL: Defaults = Defaults {
        digits: 30,
        float: Float::F64,
        trunc_n: 60,
        quad_order: 24,
    };
    /// Multi-precision work on the Weil form.
    pub const WEIL: Defaults = Defaults {
        digits: 60,
        float: Float::Mp,
        trunc_n: 30,
        quad_order: 80,
    };
    pub const PROLATE: Defaults = Defaults {
        digits: 120,
        float: Float::Mp,
        trunc_n: 60,
        quad_order: 80,
    };
    pub const CYCLE: Defaults = Defaults {
        digits: 30,
        float: Float::Mp,
        trunc_n: 60,
        quad_order: 80,
    };

    pub const fn with_trunc(self, trunc_n: usize) -> Self {
        Defaults { trunc_n, ..self }
    }

    pub const fn with_digits(self, digits: u32) -> Self {
        Defaults { digits, ..self }
    }
}

/// `a:b:step` with a < b and step > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Range {
    pub a: String,
    pub b: String,
    pub step: String,
}

impl FromStr for Range {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [a, b, step] = parts[..] else {
            return Err(Error::invalid(format!("range must be a:b:step, got '{s}'")));
        };
        let num = |x: &str| {
            x.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::invalid(format!("'{x}' in range '{s}' is not a number")))
        };
        let (fa, fb, fs) = (num(a)?, num(b)?, num(step)?);
        if fa > fb || fs <= 0.0 {
            return Err(Error::invalid(format!("range '{s}' needs a ≤ b and step > 0")));
        }
        Ok(Range {
            a: a.into(),
            b: b.into(),
            step: step.into(),
        })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.a, self.b, self.step)
    }
}

impl Range {
    pub fn new(a: &str, b: &str, step: &str) -> Result<Self> {
        format!("{a}:{b}:{step}").parse()
    }

    pub fn points<T: Real>(&self) -> Result<Vec<T>> {
        mu_grid(&T::parse(&self.a)?, &T::parse(&self.b)?, &T::parse(&self.step)?)
    }
}

/// Fully resolved and validated settings of one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub digits: u32,
    pub float: Float,
    pub trunc_n: usize,
    pub quad_order: usize,
    pub mu: Option<String>,
    pub mu_range: Option<Range>,
    pub k: KPolicy,
    pub mode: WhichTerms,
    pub zeros_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    /// Command-specific settings, echoed after the shared ones.
    pub extra: Vec<(String, String)>,
}

impl RunConfig {
    pub fn resolve(command: &str, layer: Layer, defaults: Defaults) -> Result<Self> {
        let mu = layer.mu;
        if let Some(m) = &mu {
            if !m.trim().parse::<f64>().is_ok_and(f64::is_finite) {
                return Err(Error::invalid(format!("--mu '{m}' is not a number")));
            }
        }
        let cfg = RunConfig {
            command: command.to_string(),
            digits: layer.digits.unwrap_or(defaults.digits),
            float: layer.float.as_deref().map(str::parse).transpose()?.unwrap_or(defaults.float),
            trunc_n: layer.trunc_n.unwrap_or(defaults.trunc_n),
            quad_order: layer.quad_order.unwrap_or(defaults.quad_order),
            mu: mu.map(|m| m.trim().to_string()),
            mu_range: layer.mu_range.as_deref().map(str::parse).transpose()?,
            k: layer.k.as_deref().map(str::parse).transpose()?.unwrap_or(KPolicy::Default),
            mode: layer.mode.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            zeros_file: layer.zeros_file,
            out: layer.out,
            workers: layer.workers,
            extra: Vec::new(),
        };
        if cfg.workers == Some(0) {
            return Err(Error::invalid("workers must be at least 1"));
        }
        cfg.context().validate()?;
        Ok(cfg)
    }

    pub fn context(&self) -> NumContext {
        let mut ctx = NumContext::with_digits(self.digits);
        ctx.quad_order = self.quad_order;
        ctx.trunc_n = self.trunc_n;
        ctx
    }

    /// The settings that determine the output, in a fixed order. The output
    /// location and worker count are left out: they never change results.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("digits".into(), self.digits.to_string()),
            ("float".into(), self.float.to_string()),
            ("trunc-n".into(), self.trunc_n.to_string()),
            ("quad-order".into(), self.quad_order.to_string()),
            ("k".into(), self.k.to_string()),
            ("mode".into(), self.mode.to_string()),
            (
                "zeros-file".into(),
                self.zeros_file
                    .as_ref()
                    .map_or_else(|| "builtin".to_string(), |p| p.display().to_string()),
            ),
        ];
        if let Some(m) = &self.mu {
            v.push(("mu".into(), m.clone()));
        }
        if let Some(r) = &self.mu_range {
            v.push(("mu-range".into(), r.to_string()));
        }
        v.extend(self.extra.iter().cloned());
        v
    }

    pub fn zeros(&self) -> Result<ZetaZerosTable> {
        match &self.zeros_file {
            Some(p) => ZetaZerosTable::load(p),
            None => Ok(ZetaZerosTable::builtin()),
        }
    }

    /// The single μ of the run, from `--mu` or the given default.
    pub fn mu_or<T: Real>(&self, default: Option<&str>) -> Result<T> {
        match (self.mu.as_deref(), default) {
            (Some(m), _) | (None, Some(m)) => T::parse(m),
            (None, None) => Err(Error::invalid(format!("{} needs --mu", self.command))),
        }
    }

    /// Grid from `--mu-range`, or the given default range.
    pub fn mu_points<T: Real>(&self, default: Option<&Range>) -> Result<Vec<T>> {
        match (self.mu_range.as_ref(), default) {
            (Some(r), _) | (None, Some(r)) => r.points(),
            (None, None) => Err(Error::invalid(format!("{} needs --mu-range a:b:step", self.command))),
        }
    }
}
