use super::lift::{lift_sequences, LiftedPair};
use crate::error::{Error, Result};
use crate::numerics::{FiniteSequence, Grid1D, SampledFunction};
use crate::operators::{apply_on_integers, apply_on_line};
use crate::symbols::{BumpFlavor, SupportBox, Symbol2D};

/// Representative of `t` modulo 1 in `[-1/2, 1/2)`.
#[inline]
pub fn wrap_to_cell(t: f64) -> f64 {
    t - (t + 0.5).floor()
}

/// `ψ^♯(ξ, η) = Σ_n Σ_m ψ(ξ - n, η - m)` for `ψ` supported in `[-1/2, 1/2]^2`.
///
/// Evaluation wraps both arguments into `[-1/2, 1/2)` and evaluates `ψ`
/// once, so on the closed cell boundary only the `-1/2` edge is seen; this
/// matches the half-open cell convention.
pub fn periodize_symbol(psi: &Symbol2D) -> Result<Symbol2D> {
    let cell = SupportBox::square(-0.5, 0.5);
    match psi.support() {
        Some(b) if b.is_inside(&cell) => {}
        Some(b) => {
            return Err(Error::Domain(format!(
                "support {b:?} of {} exceeds the unit cell",
                psi.name()
            )))
        }
        None => {
            return Err(Error::Domain(format!(
                "{} has no declared compact support",
                psi.name()
            )))
        }
    }
    let inner = psi.clone();
    let mut out = Symbol2D::new(format!("{}#", psi.name()), psi.sup_bound(), move |xi, eta| {
        inner.eval(wrap_to_cell(xi), wrap_to_cell(eta))
    })
    .periodic();
    for &line in psi.singular_lines() {
        out = out.with_singular_line(line);
    }
    Ok(out)
}

/// Grid indices of `[j + 1/4 + h, j + 3/4 - h]`, the open middle of `I_j`.
pub fn plateau_sample_indices(grid: &Grid1D, j: i64) -> Vec<usize> {
    let h = grid.spacing();
    let lo = j as f64 + 0.25 + h;
    let hi = j as f64 + 0.75 - h;
    (0..grid.len())
        .filter(|&i| {
            let x = grid.point(i);
            x >= lo - 1e-12 && x <= hi + 1e-12
        })
        .collect()
}

/// Integer-side values computed two ways, with the discrepancy between them.
#[derive(Debug, Clone)]
pub struct RestrictionReport {
    /// `D_ψ(a, b)(j)` for `|j| <= window`, from the torus quadrature.
    pub values: FiniteSequence,
    /// `C_ψ(f_a, g_b)` on the full grid.
    pub line_output: SampledFunction,
    pub pair: LiftedPair,
    /// Maximum of `|C_ψ(f_a, g_b)(x) - D_ψ(a, b)(j)|` over the compared points.
    pub deviation: f64,
    pub nodes: usize,
}

fn dual_lattice_nodes(grid: &Grid1D) -> Result<usize> {
    let q = 2.0 * grid.half_width();
    if q.fract() != 0.0 || !grid.contains_integers() {
        return Err(Error::Config(
            "restriction needs an integer window width 2L and a grid containing the integers"
                .into(),
        ));
    }
    Ok(q as usize)
}

/// Restriction of a periodic line multiplier to the integers.
///
/// Lifts `a`, `b` with the support-side bump, applies `C_ψ` on `grid`, and
/// compares it on each plateau `I_j = [j + 1/4, j + 3/4]` with `D_ψ(a, b)(j)`.
/// The torus quadrature uses the `2L` nodes of the grid's dual lattice.
pub fn restrict_periodic_to_integers(
    psi: &Symbol2D,
    a: &FiniteSequence,
    b: &FiniteSequence,
    grid: Grid1D,
    window: usize,
) -> Result<RestrictionReport> {
    if !psi.is_periodic() {
        return Err(Error::Domain(format!("{} is not 1-periodic", psi.name())));
    }
    let nodes = dual_lattice_nodes(&grid)?;
    if window as f64 + 1.0 > grid.half_width() {
        return Err(Error::Config(format!(
            "window {window} does not fit in half-width {}",
            grid.half_width()
        )));
    }
    let pair = lift_sequences(a, b, BumpFlavor::SupportSide, grid)?;
    let line_output = apply_on_line(psi, &pair.f_a, &pair.g_b)?;
    let values = apply_on_integers(psi, a, b, nodes, window)?;

    let mut deviation = 0.0f64;
    for j in values.indices() {
        let target = values.get(j);
        for i in plateau_sample_indices(&grid, j) {
            deviation = deviation.max((line_output.values()[i] - target).norm());
        }
    }
    Ok(RestrictionReport {
        values,
        line_output,
        pair,
        deviation,
        nodes,
    })
}

/// Sampling form for a symbol supported in the unit cell: with the
/// frequency-side bump, `C_ψ(f_a, g_b)(n) = D_{ψ^♯}(a, b)(n)` at every integer.
pub fn restrict_compact_to_integers(
    psi: &Symbol2D,
    a: &FiniteSequence,
    b: &FiniteSequence,
    grid: Grid1D,
    window: usize,
) -> Result<RestrictionReport> {
    let periodized = periodize_symbol(psi)?;
    let nodes = dual_lattice_nodes(&grid)?;
    let pair = lift_sequences(a, b, BumpFlavor::FrequencySide, grid)?;
    let line_output = apply_on_line(psi, &pair.f_a, &pair.g_b)?;
    let values = apply_on_integers(&periodized, a, b, nodes, window)?;
    let mut deviation = 0.0f64;
    for n in values.indices() {
        let i = grid
            .integer_index(n)
            .ok_or_else(|| Error::Config(format!("integer {n} outside the grid")))?;
        deviation = deviation.max((line_output.values()[i] - values.get(n)).norm());
    }
    Ok(RestrictionReport {
        values,
        line_output,
        pair,
        deviation,
        nodes,
    })
}
