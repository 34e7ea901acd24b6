//! Multi-indices, basis identifiers, multinomial coefficients and simplex points.

mod point;

pub use point::SimplexPoint;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector of `k >= 1` nonnegative integers.
///
/// The derived ordering is lexicographic, which is the enumeration order used
/// throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimension);
        }
        Ok(Self(entries))
    }

    /// The all-zero index in dimension `k`.
    pub fn zeros(k: usize) -> Result<Self> {
        Self::new(vec![0; k])
    }

    /// The unit index `e_axis` (zero based) in dimension `k`.
    pub fn unit(k: usize, axis: usize) -> Result<Self> {
        let mut entries = vec![0; k];
        *entries.get_mut(axis).ok_or(Error::InvalidAxis {
            axis: axis + 1,
            dim: k,
        })? = 1;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|v|`, the sum of entries.
    pub fn total(&self) -> u32 {
        total(&self.0)
    }

    /// Componentwise order: `self <= other` iff every entry is `<=`.
    pub fn le(&self, other: &MultiIndex) -> Result<bool> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// `self - other`, or `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `v! = v_1! ... v_k!`.
    pub fn factorial(&self) -> BigUint {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// All `u <= self` with `|u| <= max_total`, in lexicographic order.
    pub fn lower_set(&self, max_total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.dim()];
        lower_set_rec(&self.0, max_total, 0, &mut current, &mut out);
        out
    }
}

fn lower_set_rec(
    bound: &[u32],
    budget: u32,
    axis: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<MultiIndex>,
) {
    if axis == bound.len() {
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in 0..=bound[axis].min(budget) {
        current[axis] = e;
        lower_set_rec(bound, budget - e, axis + 1, current, out);
    }
    current[axis] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<u32>> for MultiIndex {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Self::new(entries)
    }
}

pub(crate) fn total(entries: &[u32]) -> u32 {
    entries.iter().sum()
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Identifies the basis member `B_{v,n}`; valid iff `|v| <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisId {
    index: MultiIndex,
    degree: u32,
}

impl BasisId {
    pub fn new(index: MultiIndex, degree: u32) -> Result<Self> {
        let total = index.total();
        if total > degree {
            return Err(Error::DegreeMismatch { total, degree });
        }
        Ok(Self { index, degree })
    }

    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.index.dim()
    }

    /// `binom(n, v)`.
    pub fn coefficient(&self) -> BigUint {
        multinomial_unchecked(self.degree, &self.index.0)
    }
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `n! / (v_1! ... v_k! (n - |v|)!)`, exact.
pub fn multinomial(n: u32, v: &MultiIndex) -> Result<BigUint> {
    let total = v.total();
    if total > n {
        return Err(Error::DegreeMismatch { total, degree: n });
    }
    Ok(multinomial_unchecked(n, &v.0))
}

/// Product of binomials `C(r_1, v_1) C(r_2, v_2) ...` with `r_1 = n` and
/// `r_{i+1} = r_i - v_i`. Requires `|v| <= n`.
pub(crate) fn multinomial_unchecked(n: u32, v: &[u32]) -> BigUint {
    let mut remaining = n;
    let mut acc = BigUint::one();
    for &e in v {
        acc *= binomial(remaining, e);
        remaining -= e;
    }
    acc
}

fn binomial(n: u32, k: u32) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i+1) after the division
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All `v` in `N_0^k` with `|v| <= n`, ascending lexicographically.
///
/// The length is `C(n + k, k)`.
pub fn enumerate(k: usize, n: u32) -> Result<Vec<MultiIndex>> {
    if k == 0 {
        return Err(Error::InvalidDimension);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; k];
    enumerate_rec(n, 0, &mut current, &mut out);
    Ok(out)
}

fn enumerate_rec(budget: u32, axis: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if axis == current.len() {
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in 0..=budget {
        current[axis] = e;
        enumerate_rec(budget - e, axis + 1, current, out);
    }
    current[axis] = 0;
}
