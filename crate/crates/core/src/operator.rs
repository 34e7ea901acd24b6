//! The Bernstein approximation operator
//! `B_n(f | x) = sum_{|v| <= n} f(v / n) B_{v,n}(x)`
//! and a sup-error harness for watching it converge.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::for_each_value;
use crate::error::{Error, Result};
use crate::multiindex::{enumerate, SimplexPoint};
use crate::scalar::Rational;

type Evaluator = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A real-valued function on `Δ_k`, finite everywhere including the boundary.
///
/// Evaluators must be reentrant: grids are evaluated in parallel.
#[derive(Clone)]
pub struct SampledFunction {
    label: String,
    arity: usize,
    evaluator: Arc<Evaluator>,
}

impl SampledFunction {
    pub fn new(
        label: impl Into<String>,
        arity: usize,
        evaluator: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            arity,
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.evaluator)(x)
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.arity {
            return Err(Error::ArityMismatch {
                label: self.label.clone(),
                arity: self.arity,
                found,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction")
            .field("label", &self.label)
            .field("arity", &self.arity)
            .finish_non_exhaustive()
    }
}

/// Labels accepted by [`bundled`].
pub const BUNDLED_LABELS: [&str; 5] = ["const", "coord", "prod", "exp", "cone"];

/// The fixed registry of test functions on `Δ_k`.
///
/// * `const`: 1
/// * `coord`: x_1
/// * `prod`: x_1 x_2 (needs k >= 2)
/// * `exp`: exp(x_1 + ... + x_k)
/// * `cone`: max-norm distance to the barycenter (1/(k+1), ..., 1/(k+1))
pub fn bundled(label: &str, k: usize) -> Result<SampledFunction> {
    if k == 0 {
        return Err(Error::InvalidDimension);
    }
    let f = match label {
        "const" => SampledFunction::new(label, k, |_| 1.0),
        "coord" => SampledFunction::new(label, k, |x| x[0]),
        "prod" => {
            if k < 2 {
                return Err(Error::ArityMismatch {
                    label: label.to_string(),
                    arity: 2,
                    found: k,
                });
            }
            SampledFunction::new(label, k, |x| x[0] * x[1])
        }
        "exp" => SampledFunction::new(label, k, |x| x.iter().sum::<f64>().exp()),
        "cone" => {
            let center = 1.0 / (k as f64 + 1.0);
            SampledFunction::new(label, k, move |x| {
                x.iter().map(|c| (c - center).abs()).fold(0.0, f64::max)
            })
        }
        _ => {
            return Err(Error::UnknownFunction {
                label: label.to_string(),
                available: BUNDLED_LABELS.join(", "),
            })
        }
    };
    Ok(f)
}

/// `B_n(f | x)`. The nodes `v / n` are correctly rounded images of exact
/// rationals and always lie in `Δ_k`.
pub fn apply(f: &SampledFunction, n: u32, x: &SimplexPoint<f64>) -> Result<f64> {
    f.check_arity(x.dim())?;
    if n == 0 {
        return Err(Error::InvalidDegrees("degree must be positive".into()));
    }
    let scale = f64::from(n);
    let mut node = vec![0.0; x.dim()];
    let mut sum = 0.0;
    for_each_value(n, x, |v, weight| {
        for (slot, &e) in node.iter_mut().zip(v) {
            *slot = f64::from(e) / scale;
        }
        sum += f.eval(&node) * weight;
    });
    Ok(sum)
}

/// `max_{x in grid} |B_n(f | x) - f(x)|`.
pub fn sup_error(f: &SampledFunction, n: u32, grid: &[SimplexPoint<f64>]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.par_iter()
        .map(|x| Ok((apply(f, n, x)? - f.eval(x.coords())).abs()))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Spacing `1/M` of the uniform barycentric lattice `{v / M : |v| <= M}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridStep {
    divisions: u32,
}

impl GridStep {
    pub fn new(divisions: u32) -> Result<Self> {
        if divisions == 0 {
            return Err(Error::InvalidGridStep(
                "lattice needs at least one division".into(),
            ));
        }
        Ok(Self { divisions })
    }

    /// Accepts a step of the form `1/M` with `M` a positive integer.
    pub fn from_rational(step: &Rational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::InvalidGridStep(format!("{step} is not positive")));
        }
        let inverse = step.recip();
        if !inverse.is_integer() {
            return Err(Error::InvalidGridStep(format!(
                "{step} is not of the form 1/M"
            )));
        }
        let divisions = u32::try_from(inverse.to_integer())
            .map_err(|_| Error::InvalidGridStep(format!("{step} is too fine")))?;
        Self::new(divisions)
    }

    pub fn divisions(&self) -> u32 {
        self.divisions
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.divisions))
    }

    /// The lattice points of `Δ_k`, lexicographic in `v`.
    pub fn lattice(&self, k: usize) -> Result<Vec<SimplexPoint<f64>>> {
        let m = f64::from(self.divisions);
        enumerate(k, self.divisions)?
            .into_iter()
            .map(|v| SimplexPoint::new(v.entries().iter().map(|&e| f64::from(e) / m).collect()))
            .collect()
    }
}

impl fmt::Display for GridStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.divisions)
    }
}

/// One line of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub function: String,
    pub k: usize,
    pub n: u32,
    pub grid_step: String,
    pub grid_size: usize,
    pub sup_error: f64,
}

/// Sup-errors of `B_n(f | .)` over the lattice with the given step, one row
/// per degree. Degrees must be positive and strictly ascending.
pub fn convergence_table(
    f: &SampledFunction,
    degrees: &[u32],
    step: &GridStep,
) -> Result<Vec<ConvergenceRow>> {
    if degrees.is_empty() {
        return Err(Error::EmptyDegrees);
    }
    if degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidDegrees(format!(
            "{degrees:?} must be positive and strictly ascending"
        )));
    }
    let grid = step.lattice(f.arity())?;
    degrees
        .iter()
        .map(|&n| {
            Ok(ConvergenceRow {
                function: f.label().to_string(),
                k: f.arity(),
                n,
                grid_step: step.to_string(),
                grid_size: grid.len(),
                sup_error: sup_error(f, n, &grid)?,
            })
        })
        .collect()
}
