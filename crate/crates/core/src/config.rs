//! Flat `key = value` experiment configuration.
//!
//! One assignment per line, `#` starts a comment, keys may be dotted
//! (`grid.N`, `output.format`). `op`/`op.name` and `symbol`/`symbol.id` are
//! aliases. Extra numeric parameters go under `param.<name>`.
//!
//! ```text
//! op = verify.restriction
//! symbol = tent-periodized
//! triple = 2, 2, 1
//! grid.L = 32
//! grid.N = 512
//! seed = 42
//! trials = 50
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{parse_exponent, ExponentTriple, Grid1D};
use crate::symbols;

/// Operation names accepted in `op`, with whether each needs a symbol.
pub const OPERATIONS: &[(&str, bool, &str)] = &[
    ("apply.C", true, "line operator on the configured inputs; CSV of x, |output|"),
    ("apply.D", true, "integer operator on random sequences"),
    ("apply.kernel", true, "kernel coefficients of a periodic symbol"),
    ("apply.bht-time", false, "principal-value quadrature of the bilinear Hilbert transform"),
    ("estimate", true, "empirical norm lower bound of the line operator"),
    ("jodeit", true, "translate-sum extension of a random sequence with the symbol as profile"),
    ("tent", false, "tent extension of a random sequence"),
    ("box", false, "piecewise-constant extension of a random sequence"),
    ("dilate", false, "dilation of a random torus multiplier"),
    ("convolve", false, "convolution of two random torus multipliers"),
    ("periodize", true, "1-periodic extension of a symbol supported in the unit cell"),
    ("verify.restriction", true, "line operator on the plateaus equals the integer operator"),
    ("verify.chain", true, "quasi-norm step sum |D|^p3 <= 2 int |C|^p3"),
    ("verify.bound", true, "restriction norm bound against an empirical line-operator norm"),
    ("verify.kernel-series", true, "kernel series against the line operator"),
    ("verify.dilation", false, "dilation equality and folded coefficients"),
    ("verify.fold", false, "folding contracts L^p norms"),
    ("verify.convolution", false, "convolution bound with per-trial ratios"),
    ("verify.tent", false, "tent interpolation at integer pairs"),
    ("verify.assembly", false, "piecewise-constant half-scale assembly"),
    ("verify.skl-decay", false, "decay of the windowed Fejer pieces"),
    ("verify.support", true, "output spectrum inside [-2, 2]"),
    ("verify.sampling", false, "sampling inequality for band-limited functions"),
    ("verify.bht", false, "frequency side against time side for the bilinear Hilbert transform"),
    ("verify.remark", false, "growth of the p1 = 1 ratio for an alternating sequence"),
    ("verify.performance", false, "fast against direct line-operator path (symbol defaults to bht)"),
];

pub fn operation_needs_symbol(op: &str) -> Option<bool> {
    OPERATIONS.iter().find(|(name, _, _)| *name == op).map(|(_, s, _)| *s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Input family for line operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFamily {
    Gaussian,
    Bump,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub len: usize,
}

impl GridSpec {
    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.half_width, self.len)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub op: String,
    pub symbol: Option<String>,
    pub triple: ExponentTriple,
    pub grid: GridSpec,
    pub seed: u64,
    pub trials: usize,
    pub ascent_steps: usize,
    pub inputs: InputFamily,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub params: BTreeMap<String, f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            op: String::new(),
            symbol: None,
            triple: ExponentTriple::new(2.0, 2.0, 1.0).expect("valid"),
            grid: GridSpec { half_width: 32.0, len: 512 },
            seed: 0,
            trials: 10,
            ascent_steps: 0,
            inputs: InputFamily::Gaussian,
            output_path: None,
            format: OutputFormat::Json,
            params: BTreeMap::new(),
        }
    }
}

fn field_error(field: &str, message: impl std::fmt::Display) -> Error {
    Error::Config(format!("{field}: {message}"))
}

fn parse_number<T: std::str::FromStr>(field: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| field_error(field, format!("cannot parse {value:?}: {e}")))
}

fn unquote(v: &str) -> &str {
    let v = v.trim();
    for q in ['"', '\''] {
        if v.len() >= 2 && v.starts_with(q) && v.ends_with(q) {
            return &v[1..v.len() - 1];
        }
    }
    v
}

/// Splits the text into `(line, key, value)` assignments.
pub fn parse_assignments(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(':'))
            .ok_or_else(|| Error::Config(format!("line {line_no}: expected key = value")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::Config(format!("line {line_no}: empty key")));
        }
        out.push((line_no, key.to_string(), unquote(value).to_string()));
    }
    Ok(out)
}

fn canonical_key(key: &str) -> &str {
    match key {
        "op.name" => "op",
        "symbol.id" => "symbol",
        "grid.l" => "grid.L",
        "grid.n" => "grid.N",
        "format" => "output.format",
        "output" => "output.path",
        other => other,
    }
}

impl ExperimentConfig {
    /// Parses and validates a configuration text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let mut triple_parts: [Option<f64>; 3] = [None; 3];
        let mut whole_triple = None;

        for (line, key, value) in parse_assignments(text)? {
            let key = canonical_key(&key).to_string();
            if let Some(first) = seen.insert(key.clone(), line) {
                return Err(field_error(&key, format!("set twice (lines {first} and {line})")));
            }
            match key.as_str() {
                "op" => cfg.op = value,
                "symbol" => cfg.symbol = Some(value),
                "triple" => whole_triple = Some(ExponentTriple::parse(&value).map_err(|e| field_error("triple", e))?),
                "triple.p1" | "triple.p2" | "triple.p3" => {
                    let idx = (key.as_bytes()[key.len() - 1] - b'1') as usize;
                    triple_parts[idx] = Some(parse_exponent(&value).map_err(|e| field_error(&key, e))?);
                }
                "grid.L" => cfg.grid.half_width = parse_number("grid.L", &value)?,
                "grid.N" => cfg.grid.len = parse_number("grid.N", &value)?,
                "seed" => cfg.seed = parse_number("seed", &value)?,
                "trials" => cfg.trials = parse_number("trials", &value)?,
                "ascent_steps" => cfg.ascent_steps = parse_number("ascent_steps", &value)?,
                "inputs" => {
                    cfg.inputs = match value.to_ascii_lowercase().as_str() {
                        "gaussian" => InputFamily::Gaussian,
                        "bump" => InputFamily::Bump,
                        "random" => InputFamily::Random,
                        other => return Err(field_error("inputs", format!("unknown family {other:?} (gaussian, bump, random)"))),
                    }
                }
                "output.path" => cfg.output_path = Some(PathBuf::from(value)),
                "output.format" => {
                    cfg.format = match value.to_ascii_lowercase().as_str() {
                        "json" => OutputFormat::Json,
                        "csv" => OutputFormat::Csv,
                        other => return Err(field_error("output.format", format!("unknown format {other:?} (json, csv)"))),
                    }
                }
                k if k.starts_with("param.") && k.len() > "param.".len() => {
                    let v: f64 = parse_number(k, &value)?;
                    if !v.is_finite() {
                        return Err(field_error(k, "must be finite"));
                    }
                    cfg.params.insert(k["param.".len()..].to_string(), v);
                }
                other => return Err(field_error(other, "unknown key")),
            }
        }

        let parts_given = triple_parts.iter().filter(|p| p.is_some()).count();
        match (whole_triple, parts_given) {
            (Some(_), n) if n > 0 => return Err(field_error("triple", "give either triple or triple.p1..p3, not both")),
            (Some(t), _) => cfg.triple = t,
            (None, 3) => {
                cfg.triple = ExponentTriple::new(
                    triple_parts[0].expect("set"),
                    triple_parts[1].expect("set"),
                    triple_parts[2].expect("set"),
                )
                .map_err(|e| field_error("triple", e))?
            }
            (None, 0) => {}
            (None, _) => return Err(field_error("triple", "all of triple.p1, triple.p2, triple.p3 are required")),
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.op.is_empty() {
            return Err(field_error("op", "missing"));
        }
        let needs_symbol = operation_needs_symbol(&self.op)
            .ok_or_else(|| field_error("op", format!("unknown operation {:?}", self.op)))?;
        match &self.symbol {
            Some(id) if symbols::by_id(id).is_none() => {
                return Err(field_error("symbol", format!("unknown symbol id {id:?}")));
            }
            None if needs_symbol => {
                return Err(field_error("symbol", format!("required by op {}", self.op)));
            }
            _ => {}
        }
        let l = self.grid.half_width;
        if !(l.is_finite() && l > 0.0 && l.fract() == 0.0) {
            return Err(field_error("grid.L", format!("must be a positive integer, got {l}")));
        }
        let n = self.grid.len;
        let two_l = 2 * l as usize;
        if !n.is_power_of_two() || !n.is_multiple_of(two_l) {
            return Err(field_error("grid.N", format!("must be a power of two and a multiple of 2L = {two_l}, got {n}")));
        }
        if self.trials == 0 {
            return Err(field_error("trials", "must be at least 1"));
        }
        Ok(())
    }

    pub fn param(&self, name: &str, default: f64) -> f64 {
        self.params.get(name).copied().unwrap_or(default)
    }

    pub fn param_usize(&self, name: &str, default: usize) -> Result<usize> {
        match self.params.get(name) {
            None => Ok(default),
            Some(&v) if v >= 0.0 && v.fract() == 0.0 && v <= 1e9 => Ok(v as usize),
            Some(&v) => Err(field_error(&format!("param.{name}"), format!("must be a nonnegative integer, got {v}"))),
        }
    }

    pub fn symbol(&self) -> Option<symbols::Symbol2D> {
        self.symbol.as_deref().and_then(symbols::by_id)
    }
}
