use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::norms::{power, quadrature_norm, sequence_norm};
use crate::numerics::{ExponentTriple, FiniteSequence, FiniteSequence2D, Grid1D, PeriodicFunction, SampledFunction};
use crate::operators::{apply_on_integers, apply_on_torus, LineOperator, NYQUIST_GUARD};
use crate::symbols::Symbol2D;

use super::report::digest;

/// Relative size of the multiplicative coordinate perturbation.
pub const ASCENT_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

/// A bilinear operator acting on coordinate vectors, with the (quasi-)norms
/// of its input and output spaces.
pub trait BilinearOperator: Sync {
    fn name(&self) -> String;

    /// Number of coordinates of the first and second input.
    fn dims(&self) -> (usize, usize);

    /// A deterministic input pair tried before the random ones.
    fn canonical_input(&self) -> (Vec<Complex64>, Vec<Complex64>);

    fn output_norm(&self, f: &[Complex64], g: &[Complex64], p: f64) -> Result<f64>;

    fn input_norm(&self, slot: Slot, x: &[Complex64], p: f64) -> Result<f64>;

    /// `||T(f, g)||_{p3} / (||f||_{p1} ||g||_{p2})`, zero for a zero input.
    fn ratio(&self, f: &[Complex64], g: &[Complex64], triple: &ExponentTriple) -> Result<f64> {
        let nf = self.input_norm(Slot::First, f, triple.p1)?;
        let ng = self.input_norm(Slot::Second, g, triple.p2)?;
        if nf == 0.0 || ng == 0.0 {
            return Ok(0.0);
        }
        Ok(self.output_norm(f, g, triple.p3)? / (nf * ng))
    }
}

/// `P_φ` on trigonometric polynomials of a fixed degree; coordinates are
/// Fourier coefficients `-degree..=degree`.
#[derive(Debug, Clone)]
pub struct TorusOperator {
    pub phi: FiniteSequence2D,
    pub degree: usize,
    pub nodes: usize,
}

impl TorusOperator {
    pub fn new(phi: FiniteSequence2D, degree: usize) -> Self {
        let nodes = 8 * (4 * degree + 2) + 1;
        Self { phi, degree, nodes }
    }

    fn poly(&self, x: &[Complex64]) -> Result<PeriodicFunction> {
        PeriodicFunction::from_coeffs(x.to_vec())
    }
}

impl BilinearOperator for TorusOperator {
    fn name(&self) -> String {
        format!("torus(degree {})", self.degree)
    }

    fn dims(&self) -> (usize, usize) {
        (2 * self.degree + 1, 2 * self.degree + 1)
    }

    fn canonical_input(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let one = PeriodicFunction::from_coeff_fn(self.degree, |n| {
            if n == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        (one.coeffs().to_vec(), one.coeffs().to_vec())
    }

    fn output_norm(&self, f: &[Complex64], g: &[Complex64], p: f64) -> Result<f64> {
        apply_on_torus(&self.phi, &self.poly(f)?, &self.poly(g)?).lp_norm_with_nodes(p, self.nodes)
    }

    fn input_norm(&self, _: Slot, x: &[Complex64], p: f64) -> Result<f64> {
        self.poly(x)?.lp_norm_with_nodes(p, self.nodes)
    }
}

/// `C_ψ` on a grid; coordinates are samples.
#[derive(Debug, Clone)]
pub struct LineHandle {
    pub op: LineOperator,
}

impl LineHandle {
    pub fn new(psi: &Symbol2D, grid: Grid1D) -> Result<Self> {
        Ok(Self { op: LineOperator::new(psi, grid)? })
    }

    fn sampled(&self, x: &[Complex64]) -> Result<SampledFunction> {
        SampledFunction::new(*self.op.grid(), x.to_vec())
    }
}

impl BilinearOperator for LineHandle {
    fn name(&self) -> String {
        format!("line(N = {})", self.op.grid().len())
    }

    fn dims(&self) -> (usize, usize) {
        (self.op.grid().len(), self.op.grid().len())
    }

    fn canonical_input(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let f = SampledFunction::from_real_fn(*self.op.grid(), |x| (-std::f64::consts::PI * x * x).exp())
            .expect("finite samples");
        (f.values().to_vec(), f.into_values())
    }

    fn output_norm(&self, f: &[Complex64], g: &[Complex64], p: f64) -> Result<f64> {
        self.op.apply(&self.sampled(f)?, &self.sampled(g)?)?.lp_norm(p)
    }

    fn input_norm(&self, _: Slot, x: &[Complex64], p: f64) -> Result<f64> {
        quadrature_norm(x, self.op.grid().spacing(), p)
    }
}

/// `D_ψ` on sequences of a fixed radius, reported on `|l| <= window`.
#[derive(Debug, Clone)]
pub struct IntegerHandle {
    pub psi: Symbol2D,
    pub radius: usize,
    pub window: usize,
}

impl IntegerHandle {
    fn nodes(&self) -> usize {
        NYQUIST_GUARD * (2 * self.radius + self.window)
    }
}

impl BilinearOperator for IntegerHandle {
    fn name(&self) -> String {
        format!("integers({}, radius {})", self.psi.name(), self.radius)
    }

    fn dims(&self) -> (usize, usize) {
        (2 * self.radius + 1, 2 * self.radius + 1)
    }

    fn canonical_input(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let d = FiniteSequence::delta(self.radius, 0);
        (d.values().to_vec(), d.values().to_vec())
    }

    fn output_norm(&self, f: &[Complex64], g: &[Complex64], p: f64) -> Result<f64> {
        let a = FiniteSequence::from_values(f.to_vec());
        let b = FiniteSequence::from_values(g.to_vec());
        apply_on_integers(&self.psi, &a, &b, self.nodes(), self.window)?.lp_norm(p)
    }

    fn input_norm(&self, _: Slot, x: &[Complex64], p: f64) -> Result<f64> {
        sequence_norm(x, p)
    }
}

/// The maximizing input pair of an estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub f: Vec<Complex64>,
    pub g: Vec<Complex64>,
}

/// Empirical lower bound for an operator (quasi-)norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub triple: ExponentTriple,
    pub trials: usize,
    pub seed: u64,
    pub ascent_steps: usize,
    /// Best ratio reached in each trial.
    pub trial_values: Vec<f64>,
    pub witness: Witness,
}

impl NormEstimate {
    pub fn witness_digest(&self) -> String {
        digest(&self.witness)
    }
}

/// Independent stream `trial` of the root `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Standard complex Gaussian: independent real and imaginary parts of variance 1/2.
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

fn normalized(op: &dyn BilinearOperator, slot: Slot, mut x: Vec<Complex64>, p: f64) -> Result<Vec<Complex64>> {
    let n = op.input_norm(slot, &x, p)?;
    if n > 0.0 && n.is_finite() {
        for v in &mut x {
            *v /= n;
        }
    }
    Ok(x)
}

fn score(op: &dyn BilinearOperator, f: &[Complex64], g: &[Complex64], triple: &ExponentTriple) -> Result<f64> {
    Ok(power(op.ratio(f, g, triple)?, triple.p3))
}

fn run_trial(
    op: &dyn BilinearOperator,
    triple: &ExponentTriple,
    seed: u64,
    trial: usize,
    ascent_steps: usize,
) -> Result<(f64, Vec<Complex64>, Vec<Complex64>)> {
    let (mut f, mut g) = if trial == 0 {
        op.canonical_input()
    } else {
        let (df, dg) = op.dims();
        let mut rng = trial_rng(seed, trial);
        let f = gaussian_vector(&mut rng, df);
        let g = gaussian_vector(&mut rng, dg);
        (f, g)
    };
    f = normalized(op, Slot::First, f, triple.p1)?;
    g = normalized(op, Slot::Second, g, triple.p2)?;
    let mut best = score(op, &f, &g, triple)?;

    let (df, dg) = op.dims();
    let total = df + dg;
    if total > 0 {
        for step in 0..ascent_steps {
            let i = step % total;
            for factor in [1.0 + ASCENT_STEP, 1.0 - ASCENT_STEP] {
                let (mut cf, mut cg) = (f.clone(), g.clone());
                if i < df {
                    cf[i] *= factor;
                } else {
                    cg[i - df] *= factor;
                }
                let s = score(op, &cf, &cg, triple)?;
                if s > best {
                    best = s;
                    f = cf;
                    g = cg;
                    break;
                }
            }
        }
    }
    let ratio = if triple.p3.is_infinite() { best } else { best.powf(1.0 / triple.p3) };
    Ok((ratio, f, g))
}

/// Best ratio of one trial with its maximizing pair.
type TrialResult = (f64, Vec<Complex64>, Vec<Complex64>);

/// Multi-start lower bound for the norm of `op` at `triple`.
///
/// Trial 0 uses the operator's canonical input pair; trial `t > 0` draws
/// standard complex Gaussian coordinates from stream `t` of `seed`. Each
/// start is normalized and then improved by `ascent_steps` cyclic
/// coordinate moves `x_i -> (1 ± 1e-3) x_i`, compared on the `p3`-th power
/// scale. Trials run in parallel and are reduced in index order.
pub fn estimate_norm(
    op: &dyn BilinearOperator,
    triple: ExponentTriple,
    trials: usize,
    seed: u64,
    ascent_steps: usize,
) -> Result<NormEstimate> {
    if trials == 0 {
        return Err(Error::Config("estimate_norm needs at least one trial".into()));
    }
    let results: Vec<Result<TrialResult>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            run_trial(op, &triple, seed, t, ascent_steps)
                .map_err(|e| Error::Trial { trial: t, source: Box::new(e) })
        })
        .collect();

    let mut trial_values = Vec::with_capacity(trials);
    let mut best: Option<(f64, Witness)> = None;
    for (t, r) in results.into_iter().enumerate() {
        let (value, f, g) = r?;
        trial_values.push(value);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, Witness { trial: t, f, g }));
        }
    }
    let (value, witness) = best.expect("at least one trial");
    Ok(NormEstimate { value, triple, trials, seed, ascent_steps, trial_values, witness })
}
