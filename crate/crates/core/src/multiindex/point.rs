use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A point of the simplex `{x in [0,1]^k : x_1 + ... + x_k <= 1}`.
///
/// Exact points are validated exactly. Float points accept coordinates down
/// to `-1e-12` (clamped to zero) and coordinate sums up to `1 + 1e-12`, in
/// which case the complement `1 - |x|` is clamped to zero. Coordinates are
/// never renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint<S> {
    coords: Vec<S>,
    complement: S,
}

impl<S: Scalar> SimplexPoint<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDimension);
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let shown = format!("{c:?}");
                c.admit_coordinate().ok_or_else(|| {
                    Error::OutOfSimplex(format!("coordinate x_{} = {shown} is negative", i + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sum = coords.iter().fold(S::zero(), |acc, c| acc + c);
        let complement = S::admit_complement(S::one() - sum.clone())
            .ok_or_else(|| Error::OutOfSimplex(format!("coordinate sum {sum:?} exceeds 1")))?;
        Ok(Self { coords, complement })
    }

    /// The origin of `Δ_k`.
    pub fn origin(k: usize) -> Result<Self> {
        Self::new(vec![S::zero(); k])
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `1 - |x|`, clamped to be nonnegative.
    pub fn complement(&self) -> &S {
        &self.complement
    }

    /// `|x|`.
    pub fn sum(&self) -> S {
        self.coords.iter().fold(S::zero(), |acc, c| acc + c)
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }
}

impl SimplexPoint<Rational> {
    pub fn to_f64(&self) -> SimplexPoint<f64> {
        SimplexPoint {
            coords: self.coords.iter().map(Scalar::to_f64).collect(),
            complement: self.complement.to_f64(),
        }
    }
}
