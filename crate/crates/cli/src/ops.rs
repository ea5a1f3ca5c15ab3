//! Dispatch from an operation name to library calls.

use std::f64::consts::PI;

use bimult::config::{ExperimentConfig, InputFamily};
use bimult::numerics::{FiniteSequence2D, Grid1D, SampledFunction};
use bimult::operators::{apply_on_integers, apply_on_line, bht_time_domain, kernel_coefficients};
use bimult::symbols::{bht, Symbol2D};
use bimult::transference::{convolve_symbol, dilate_phi, jodeit_extend, periodize_symbol, piecewise_constant_extend, tent_extend};
use bimult::verification::{self as v, complex_gaussian, estimate_norm, random_pair, trial_rng, BandLimited, LineHandle, RemarkSequence};
use bimult::{Error, Result};
use num_complex::Complex64;
use serde_json::json;

use crate::report::{Report, Table};

/// Widths of the narrowing schedule for the `p1 = 1` check.
const REMARK_WIDTHS: [f64; 6] = [2.0, 1.0, 0.5, 0.25, 0.125, 0.0625];

fn symbol(cfg: &ExperimentConfig) -> Result<Symbol2D> {
    cfg.symbol().ok_or_else(|| Error::Config("symbol: required by this op".into()))
}

fn random_phi(seed: u64, stream: usize, radius: usize) -> FiniteSequence2D {
    let mut rng = trial_rng(seed, stream);
    FiniteSequence2D::from_fn(radius, |_, _| complex_gaussian(&mut rng))
}

fn gaussian(grid: Grid1D, center: f64, width: f64) -> Result<SampledFunction> {
    SampledFunction::from_real_fn(grid, |x| (-PI * ((x - center) / width).powi(2)).exp())
}

/// The pair `(f, g)` of line inputs named by `inputs`.
fn line_inputs(cfg: &ExperimentConfig, grid: Grid1D) -> Result<(SampledFunction, SampledFunction)> {
    Ok(match cfg.inputs {
        InputFamily::Gaussian => (gaussian(grid, 0.0, 1.0)?, gaussian(grid, 0.3, 0.8)?),
        InputFamily::Bump => (v::compact_bump(grid, 0.0, 0.25, 0.0)?, v::compact_bump(grid, 0.0, 0.25, 0.3)?),
        InputFamily::Random => {
            let mut rng = trial_rng(cfg.seed, 0);
            let envelope = |x: f64| (-PI * (x / 4.0).powi(2)).exp();
            let f = SampledFunction::from_fn(grid, |x| complex_gaussian(&mut rng) * envelope(x))?;
            let g = SampledFunction::from_fn(grid, |x| complex_gaussian(&mut rng) * envelope(x))?;
            (f, g)
        }
    })
}

fn complex_row(lead: &[f64], z: Complex64) -> Vec<f64> {
    let mut row = lead.to_vec();
    row.extend([z.norm(), z.re, z.im]);
    row
}

fn function_table(f: &SampledFunction) -> Table {
    let mut t = Table::new(&["x", "abs", "re", "im"]);
    for (x, z) in f.grid().points().zip(f.values()) {
        t.push(complex_row(&[x], *z));
    }
    t
}

fn sequence2d_table(s: &FiniteSequence2D) -> Table {
    let mut t = Table::new(&["n", "m", "abs", "re", "im"]);
    for (n, m, z) in s.entries() {
        t.push(complex_row(&[n as f64, m as f64], z));
    }
    t
}

/// Samples `eval` on the square `[-span, span]²` with spacing `param.step`.
fn surface_table(cfg: &ExperimentConfig, span: f64, eval: impl Fn(f64, f64) -> Complex64) -> Result<Table> {
    let step = cfg.param("step", 0.25);
    if !(step > 0.0) || span / step > 2000.0 {
        return Err(Error::Config(format!("param.step: {step} gives too many or no samples")));
    }
    let count = (2.0 * span / step).round() as i64;
    let mut t = Table::new(&["xi", "eta", "abs", "re", "im"]);
    for i in 0..=count {
        for j in 0..=count {
            let (xi, eta) = (-span + i as f64 * step, -span + j as f64 * step);
            t.push(complex_row(&[xi, eta], eval(xi, eta)));
        }
    }
    Ok(t)
}

/// Largest output window the restriction checks can afford on this grid.
fn restriction_window(cfg: &ExperimentConfig, radius: usize) -> Result<usize> {
    let budget = (cfg.grid.half_width as usize / 2).checked_sub(2 * radius).filter(|&w| w > 0);
    let default = budget.ok_or_else(|| {
        Error::Config(format!("grid.L: {} is too small for sequences of radius {radius}; need L > 4 * radius", cfg.grid.half_width))
    })?;
    cfg.param_usize("window", default.min(16))
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    let grid = cfg.grid.grid()?;
    let mut report = Report::new(cfg);
    let (seed, trials, triple) = (cfg.seed, cfg.trials, cfg.triple);
    match cfg.op.as_str() {
        "apply.C" => {
            let (f, g) = line_inputs(cfg, grid)?;
            report.table = Some(function_table(&apply_on_line(&symbol(cfg)?, &f, &g)?));
        }
        "apply.bht-time" => {
            let (f, g) = line_inputs(cfg, grid)?;
            let cutoff = cfg.param("cutoff", grid.spacing());
            report.table = Some(function_table(&bht_time_domain(&f, &g, cutoff)?));
        }
        "apply.D" => {
            let radius = cfg.param_usize("radius", 4)?;
            let window = cfg.param_usize("window", 2 * radius)?;
            let (a, b) = random_pair(seed, 0, radius);
            let nodes = cfg.param_usize("nodes", 4 * (2 * radius + window).max(1))?;
            let out = apply_on_integers(&symbol(cfg)?, &a, &b, nodes, window)?;
            let mut t = Table::new(&["j", "abs", "re", "im"]);
            for (j, z) in out.indices().zip(out.values()) {
                t.push(complex_row(&[j as f64], *z));
            }
            report.table = Some(t);
        }
        "apply.kernel" => {
            let radius = cfg.param_usize("radius", 8)?;
            let nodes = cfg.param_usize("nodes", 2 * cfg.grid.half_width as usize)?;
            let k = kernel_coefficients(&symbol(cfg)?, radius, nodes)?;
            report.details = Some(json!({ "edge_magnitude": k.edge_magnitude, "nodes": k.nodes }));
            report.table = Some(sequence2d_table(&k.coeffs));
        }
        "estimate" => {
            let est = estimate_norm(&LineHandle::new(&symbol(cfg)?, grid)?, triple, trials, seed, cfg.ascent_steps)?;
            let mut t = Table::new(&["trial", "ratio"]);
            for (i, r) in est.trial_values.iter().enumerate() {
                t.push(vec![i as f64, *r]);
            }
            report.details = Some(json!({ "value": est.value, "witness_trial": est.witness.trial, "witness_digest": est.witness_digest() }));
            report.table = Some(t);
        }
        "jodeit" => {
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 2)?);
            let ext = jodeit_extend(&phi, &symbol(cfg)?, cfg.param("p", 1.0))?;
            let span = phi.radius() as f64 + 1.0;
            report.details = Some(serde_json::to_value(&ext.diagnostic).expect("plain data"));
            report.table = Some(surface_table(cfg, span, |x, y| ext.symbol.eval(x, y))?);
        }
        "tent" => {
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 2)?);
            let psi = tent_extend(&phi);
            report.table = Some(surface_table(cfg, phi.radius() as f64 + 1.0, |x, y| psi.eval(x, y))?);
        }
        "box" => {
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 2)?);
            let ext = piecewise_constant_extend(&phi);
            report.table = Some(surface_table(cfg, phi.radius() as f64 + 1.0, |x, y| ext.eval(x, y))?);
        }
        "dilate" => {
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 2)?);
            report.table = Some(sequence2d_table(&dilate_phi(&phi, cfg.param_usize("k", 2)?)?));
        }
        "convolve" => {
            let a = random_phi(seed, 1, cfg.param_usize("a_radius", 1)?);
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 2)?);
            report.table = Some(sequence2d_table(&convolve_symbol(&a, &phi)));
        }
        "periodize" => {
            let psi = periodize_symbol(&symbol(cfg)?)?;
            report.table = Some(surface_table(cfg, 1.5, |x, y| psi.eval(x, y))?);
        }
        "verify.restriction" => {
            let radius = cfg.param_usize("radius", 4)?;
            let window = restriction_window(cfg, radius)?;
            let tol = cfg.param("tolerance", 1e-6);
            report.checks.push(v::check_restriction_identity(&symbol(cfg)?, radius, window, grid, trials, seed, tol)?);
        }
        "verify.chain" => {
            let radius = cfg.param_usize("radius", 4)?;
            report.checks.push(v::check_quasi_norm_chain(&symbol(cfg)?, triple, radius, grid, trials, seed)?);
        }
        "verify.bound" => {
            let psi = symbol(cfg)?;
            let radius = cfg.param_usize("radius", 4)?;
            let est = estimate_norm(&LineHandle::new(&psi, grid)?, triple, trials, seed, cfg.ascent_steps)?;
            report.details = Some(json!({ "estimate": est.value, "witness_digest": est.witness_digest() }));
            report.checks.push(v::check_restriction_bound(&psi, &est, radius, grid, trials, seed)?);
        }
        "verify.kernel-series" => {
            let (f, g) = (v::compact_bump(grid, 0.0, 0.25, 0.0)?, v::compact_bump(grid, 0.0, 0.25, 0.3)?);
            let radius = cfg.param_usize("radius", 16)?;
            report.checks.push(v::check_kernel_series(&symbol(cfg)?, &f, &g, radius, cfg.param("tolerance", 1e-6))?);
        }
        "verify.dilation" => {
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 3)?);
            let (k, degree) = (cfg.param_usize("k", 2)?, cfg.param_usize("degree", 12)?);
            let tol = cfg.param("tolerance", 1e-10);
            report.checks.push(v::check_dilation(&phi, k, triple.p3, degree, trials, seed, tol)?);
        }
        "verify.fold" => {
            let (k, degree) = (cfg.param_usize("k", 2)?, cfg.param_usize("degree", 12)?);
            report.checks.push(v::check_fold_contraction(k, degree, trials, seed)?);
        }
        "verify.convolution" => {
            let a = random_phi(seed, 1, cfg.param_usize("a_radius", 2)?);
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 3)?);
            let degree = cfg.param_usize("degree", 6)?;
            report.checks.push(v::check_convolution(&a, &phi, triple, degree, trials, seed, cfg.param("slack", 1e-8))?);
        }
        "verify.tent" => {
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 6)?);
            report.checks.push(v::check_tent_interpolation(&phi));
        }
        "verify.assembly" => {
            let phi = random_phi(seed, 0, cfg.param_usize("radius", 6)?);
            report.checks.push(v::check_piecewise_assembly(&phi, cfg.param_usize("points", 1000)?, seed));
        }
        "verify.skl-decay" => {
            let (radius, nodes) = (cfg.param_usize("radius", 8)?, cfg.param_usize("nodes", 2048)?);
            report.checks.push(v::check_skl_decay(radius, nodes));
        }
        "verify.support" => {
            let (f, g) = line_inputs(cfg, grid)?;
            report.checks.push(v::check_support_lemma(&symbol(cfg)?, &f, &g, cfg.param("tolerance", 1e-8))?);
        }
        "verify.sampling" => {
            let shape = BandLimited::Smooth { band: cfg.param("band", 1.0) };
            let g = shape.build(grid);
            let p = cfg.param("p", 1.0);
            report.checks.push(v::check_sampling_lemma(&g, shape.band(), p, cfg.param("ceiling", 4.0))?);
        }
        "verify.bht" => {
            let f = gaussian(grid, 0.0, 1.0)?;
            let g = gaussian(grid, 0.3, 0.8)?;
            report.checks.push(v::check_bht_agreement(&f, &g, cfg.param("cutoff", grid.spacing()), cfg.param("tolerance", 1e-2))?);
            let n = cfg.grid.len;
            let sizes = [n / 4, n / 2, n];
            let fp = |x: f64| Complex64::new((-PI * x * x).exp(), 0.0);
            let gp = |x: f64| Complex64::new((-PI * ((x - 0.3) / 0.8).powi(2)).exp(), 0.0);
            report.checks.push(v::check_bht_stability(triple, cfg.grid.half_width, &sizes, fp, gp, cfg.param("stability", 0.05))?);
        }
        "verify.remark" => {
            let alt = RemarkSequence::alternating(cfg.param_usize("radius", 8)?);
            let flat = RemarkSequence::Constant(Complex64::new(1.0, 0.0));
            let growth = cfg.param("growth", 2.0);
            report.checks.push(v::check_remark(&alt, &REMARK_WIDTHS, grid, growth, 1e-2)?);
            report.checks.push(v::check_remark(&flat, &REMARK_WIDTHS, grid, growth, 1e-2)?);
        }
        "verify.performance" => {
            let psi = cfg.symbol().unwrap_or_else(bht);
            let n = cfg.grid.len;
            let speedup = cfg.param("speedup", 4.0);
            report.checks.push(v::check_performance(&psi, cfg.grid.half_width, &[n / 2, n], speedup, 1e-10)?);
        }
        other => return Err(Error::Config(format!("op: unknown operation {other:?}"))),
    }
    Ok(report)
}

/// Timing sweep of the two `C_ψ` paths over `N ∈ {256, 512, 1024}`.
pub fn bench(cfg: &ExperimentConfig) -> Result<Report> {
    let symbols: Vec<Symbol2D> = match cfg.symbol() {
        Some(s) => vec![s],
        None => ["bht", "tent-periodized", "one"].iter().filter_map(|id| bimult::symbols::by_id(id)).collect(),
    };
    let sizes = [256usize, 512, 1024];
    let speedup = cfg.param("speedup", 4.0);
    let mut report = Report::new(cfg);
    let mut table = Table::new(&["symbol", "n", "fast_seconds", "direct_seconds", "speedup", "relative_gap"]);
    for (i, psi) in symbols.iter().enumerate() {
        let out = v::check_performance(psi, cfg.grid.half_width, &sizes, speedup, 1e-10)?;
        let (fast, direct) = (&out.series["fast_seconds"], &out.series["direct_seconds"]);
        for (j, &n) in sizes.iter().enumerate() {
            let gap = out.records[j].lhs;
            table.push(vec![i as f64, n as f64, fast[j], direct[j], direct[j] / fast[j], gap]);
        }
        report.checks.push(out);
    }
    report.details = Some(json!({ "symbols": symbols.iter().map(|s| s.name().to_string()).collect::<Vec<_>>() }));
    report.table = Some(table);
    Ok(report)
}
