//! Exact checks of the convolution (decomposition) identity, its `m = 1`
//! recurrence, and the axis and permutation symmetries of the basis.
//!
//! A basis member at a point `x` is a weighted monomial in the factors
//! `(x_1, ..., x_k, 1 - |x|)`. The checks are written against a
//! [`BasisFamily`], which supplies those factors, so the q-deformed basis
//! reuses the same case grids with bracketed factors.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::weighted_monomial;
use crate::error::{Error, Result};
use crate::multiindex::{
    check_dims, enumerate, factorial, multinomial, BasisId, MultiIndex, SimplexPoint,
};
use crate::scalar::{Rational, Scalar};

/// Default seed for random test points.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Largest denominator of a random test point.
pub const MAX_DENOMINATOR: i64 = 64;

// ---------------------------------------------------------------------------
// factors and families

/// The factors `(c_1, ..., c_k; c_0)` that a basis member is a monomial in.
#[derive(Debug, Clone, PartialEq)]
pub struct Factors<S> {
    pub coords: Vec<S>,
    pub complement: S,
}

impl<S: Scalar> Factors<S> {
    /// `B_{v,n}` in these factors; zero when `|v| > n`.
    pub fn basis(&self, v: &MultiIndex, n: u32) -> S {
        match BasisId::new(v.clone(), n) {
            Ok(id) => weighted_monomial(&id, &self.coords, &self.complement),
            Err(_) => S::zero(),
        }
    }
}

/// A basis family: how a point maps to monomial factors, and how two values
/// of the family are compared.
pub trait BasisFamily: Sync {
    type Value: ReportScalar;

    fn factors(&self, x: &SimplexPoint<Rational>) -> Result<Factors<Self::Value>>;

    fn agree(&self, lhs: &Self::Value, rhs: &Self::Value) -> bool;

    /// The deformation parameter in effect at `x`, for reports.
    fn q_at(&self, _x: &SimplexPoint<Rational>) -> Option<f64> {
        None
    }
}

/// The classical basis in exact arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct Classical;

impl BasisFamily for Classical {
    type Value = Rational;

    fn factors(&self, x: &SimplexPoint<Rational>) -> Result<Factors<Rational>> {
        Ok(Factors {
            coords: x.coords().to_vec(),
            complement: x.complement().clone(),
        })
    }

    fn agree(&self, lhs: &Rational, rhs: &Rational) -> bool {
        lhs == rhs
    }
}

// ---------------------------------------------------------------------------
// reports

/// A number in a counterexample record: exact rationals as `{num, den}`,
/// floats as plain JSON numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Exact { num: ReportInt, den: ReportInt },
    Float(f64),
}

/// Integers that fit `i64` serialize as numbers, larger ones as strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for ReportInt {
    fn from(n: &BigInt) -> Self {
        n.to_i64()
            .map(ReportInt::Small)
            .unwrap_or_else(|| ReportInt::Big(n.to_string()))
    }
}

impl From<&Rational> for ReportValue {
    fn from(r: &Rational) -> Self {
        ReportValue::Exact {
            num: r.numer().into(),
            den: r.denom().into(),
        }
    }
}

pub trait ReportScalar: Scalar {
    fn report(&self) -> ReportValue;
}

impl ReportScalar for Rational {
    fn report(&self) -> ReportValue {
        self.into()
    }
}

impl ReportScalar for f64 {
    fn report(&self) -> ReportValue {
        ReportValue::Float(*self)
    }
}

/// One failed identity instance with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub k: usize,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    pub v: Vec<u32>,
    pub x: Vec<ReportValue>,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
}

/// `(n, m, j, sigma, v, x)` of a counterexample.
pub type CaseKey = (
    u32,
    Option<u32>,
    Option<usize>,
    Option<Vec<usize>>,
    Vec<u32>,
    Vec<ReportValue>,
);

impl Counterexample {
    /// The case coordinates without the values, for comparing reports across
    /// arithmetic flavors.
    pub fn case_key(&self) -> CaseKey {
        (
            self.n,
            self.m,
            self.j,
            self.sigma.clone(),
            self.v.clone(),
            self.x.clone(),
        )
    }
}

/// Outcome of one identity suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    /// Number of (case, point) instances evaluated.
    pub instances: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.instances += other.instances;
        self.counterexamples.extend(other.counterexamples);
        self
    }

    fn from_results(results: Vec<(usize, Vec<Counterexample>)>) -> Self {
        let instances = results.iter().map(|(n, _)| n).sum();
        let counterexamples = results.into_iter().flat_map(|(_, c)| c).collect();
        Self {
            instances,
            counterexamples,
        }
    }
}

// ---------------------------------------------------------------------------
// test points

/// Parameters shared by the identity suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub k: usize,
    pub n_max: u32,
    /// Random points per case, on top of the fixed boundary points.
    pub random_points: usize,
    pub seed: u64,
}

impl CheckConfig {
    pub fn new(k: usize, n_max: u32) -> Self {
        Self {
            k,
            n_max,
            random_points: 5,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_random_points(mut self, count: usize) -> Self {
        self.random_points = count;
        self
    }

    pub fn points(&self) -> Result<Vec<SimplexPoint<Rational>>> {
        test_points(self.k, self.random_points, self.seed)
    }
}

/// Fixed boundary points (origin, a vertex, a point on the face `|x| = 1`,
/// a point with `x_1 = 0`) followed by `random` seeded points with
/// denominators at most [`MAX_DENOMINATOR`].
pub fn test_points(k: usize, random: usize, seed: u64) -> Result<Vec<SimplexPoint<Rational>>> {
    if k == 0 {
        return Err(Error::InvalidDimension);
    }
    let r = |num: i64, den: i64| Rational::new(BigInt::from(num), BigInt::from(den));
    let kk = k as i64;
    let mut points = vec![
        SimplexPoint::origin(k)?,
        SimplexPoint::new((0..k).map(|i| r(i64::from(i == 0), 1)).collect())?,
        SimplexPoint::new(vec![r(1, kk); k])?,
        SimplexPoint::new(
            (0..k)
                .map(|i| if i == 0 { r(0, 1) } else { r(1, kk + 1) })
                .collect(),
        )?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let den = rng.random_range(2..=MAX_DENOMINATOR);
        let mut cuts: Vec<i64> = (0..k).map(|_| rng.random_range(0..=den)).collect();
        cuts.sort_unstable();
        let mut prev = 0;
        let coords = cuts
            .iter()
            .map(|&c| {
                let part = c - prev;
                prev = c;
                r(part, den)
            })
            .collect();
        points.push(SimplexPoint::new(coords)?);
    }
    Ok(points)
}

fn report_point(x: &SimplexPoint<Rational>) -> Vec<ReportValue> {
    x.coords().iter().map(ReportValue::from).collect()
}

// ---------------------------------------------------------------------------
// decomposition

/// Weight attached to `B_{u,m} B_{v-u,n-m}` in the convolution sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecompositionWeight {
    /// `u! (m - |u|)! / m!`, the weight of the identity as usually stated.
    #[default]
    Stated,
    /// `u! (m - |u|)! / (m + 1)!`, a deliberately wrong weight for mutation
    /// testing.
    Mutated,
    /// Weight one: the multinomial Vandermonde convolution.
    Unit,
}

impl DecompositionWeight {
    pub fn value(self, u: &MultiIndex, m: u32) -> Rational {
        let stated = |denom: BigUint| {
            Rational::new(
                BigInt::from(u.factorial() * factorial(m - u.total())),
                BigInt::from(denom),
            )
        };
        match self {
            DecompositionWeight::Stated => stated(factorial(m)),
            DecompositionWeight::Mutated => stated(factorial(m + 1)),
            DecompositionWeight::Unit => Rational::from_u64(1),
        }
    }
}

/// One instance of the decomposition identity.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionCase {
    n: u32,
    m: u32,
    v: MultiIndex,
    x: SimplexPoint<Rational>,
}

impl DecompositionCase {
    /// Requires `|v| <= n` and `m <= min(|v|, n)`.
    pub fn new(n: u32, m: u32, v: MultiIndex, x: SimplexPoint<Rational>) -> Result<Self> {
        check_dims(v.dim(), x.dim())?;
        let total = v.total();
        if total > n {
            return Err(Error::DegreeMismatch { total, degree: n });
        }
        if m > total.min(n) {
            return Err(Error::HypothesisViolated {
                m,
                total,
                degree: n,
            });
        }
        Ok(Self { n, m, v, x })
    }

    pub fn k(&self) -> usize {
        self.v.dim()
    }

    /// `sum_{u <= v, |u| <= m} w(u) B_{u,m}(x) B_{v-u,n-m}(x)` with the
    /// stated weight.
    pub fn lhs(&self) -> Rational {
        self.lhs_with(DecompositionWeight::Stated)
    }

    pub fn lhs_with(&self, weight: DecompositionWeight) -> Rational {
        let factors = Classical.factors(&self.x).expect("classical factors");
        convolution(&factors, &self.v, self.n, self.m, weight)
    }

    /// `B_{v,n}(x)`.
    pub fn rhs(&self) -> Rational {
        let factors = Classical.factors(&self.x).expect("classical factors");
        factors.basis(&self.v, self.n)
    }
}

/// `decomposition_lhs` with the stated weight.
pub fn decomposition_lhs(case: &DecompositionCase) -> Rational {
    case.lhs()
}

/// Terms with `|v - u| > n - m` are zero.
pub(crate) fn convolution<S: Scalar>(
    factors: &Factors<S>,
    v: &MultiIndex,
    n: u32,
    m: u32,
    weight: DecompositionWeight,
) -> S {
    let mut sum = S::zero();
    for u in v.lower_set(m) {
        let rest = v.checked_sub(&u).expect("u <= v");
        if rest.total() > n - m {
            continue;
        }
        let w = S::from_rational(&weight.value(&u, m));
        sum = sum + w * factors.basis(&u, m) * factors.basis(&rest, n - m);
    }
    sum
}

/// Checks the decomposition identity for every `1 <= n <= n_max`, every
/// `|v| <= n` and every `m <= min(|v|, n)` at each test point.
pub fn check_decomposition(
    config: &CheckConfig,
    weight: DecompositionWeight,
) -> Result<CheckReport> {
    check_decomposition_in(&Classical, config, weight)
}

/// [`check_decomposition`] for an arbitrary basis family.
pub fn check_decomposition_in<F: BasisFamily>(
    family: &F,
    config: &CheckConfig,
    weight: DecompositionWeight,
) -> Result<CheckReport> {
    let points = prepare(family, config)?;
    let mut cases = Vec::new();
    for n in 1..=config.n_max {
        for v in enumerate(config.k, n)? {
            for m in 0..=v.total().min(n) {
                cases.push((n, v.clone(), m));
            }
        }
    }
    let results = cases
        .par_iter()
        .map(|(n, v, m)| {
            let found = points
                .iter()
                .filter_map(|(x, factors)| {
                    let lhs = convolution(factors, v, *n, *m, weight);
                    let rhs = factors.basis(v, *n);
                    (!family.agree(&lhs, &rhs)).then(|| Counterexample {
                        k: config.k,
                        n: *n,
                        m: Some(*m),
                        j: None,
                        sigma: None,
                        q: family.q_at(x),
                        v: v.entries().to_vec(),
                        x: report_point(x),
                        lhs: lhs.report(),
                        rhs: rhs.report(),
                    })
                })
                .collect();
            (points.len(), found)
        })
        .collect();
    Ok(CheckReport::from_results(results))
}

type Prepared<V> = Vec<(SimplexPoint<Rational>, Factors<V>)>;

fn prepare<F: BasisFamily>(family: &F, config: &CheckConfig) -> Result<Prepared<F::Value>> {
    config
        .points()?
        .into_iter()
        .map(|x| {
            let factors = family.factors(&x)?;
            Ok((x, factors))
        })
        .collect()
}

/// `(1 - |x|) B_{v,n-1}(x) + sum_{|u| = 1, u <= v} x^u B_{v-u,n-1}(x)`,
/// which should equal `B_{v,n}(x)`.
pub fn recurrence_step<S: Scalar>(v: &MultiIndex, n: u32, x: &SimplexPoint<S>) -> Result<S> {
    check_dims(v.dim(), x.dim())?;
    let total = v.total();
    if n == 0 || total > n {
        return Err(Error::DegreeMismatch { total, degree: n });
    }
    let lower = |w: &MultiIndex| match BasisId::new(w.clone(), n - 1) {
        Ok(id) => weighted_monomial(&id, x.coords(), x.complement()),
        Err(_) => S::zero(),
    };
    let mut sum = x.complement().clone() * lower(v);
    for (axis, &e) in v.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut w = v.entries().to_vec();
        w[axis] -= 1;
        let w = MultiIndex::new(w)?;
        sum = sum + x.coords()[axis].clone() * lower(&w);
    }
    Ok(sum)
}

/// Compares [`recurrence_step`] against the `m = 1` convolution and against
/// `B_{v,n}` itself over the decomposition case grid.
pub fn check_recurrence(config: &CheckConfig) -> Result<CheckReport> {
    let points = config.points()?;
    let mut results = Vec::new();
    for n in 1..=config.n_max {
        for v in enumerate(config.k, n)? {
            let mut found = Vec::new();
            for x in &points {
                let step = recurrence_step(&v, n, x)?;
                let factors = Classical.factors(x)?;
                let conv = convolution(
                    &factors,
                    &v,
                    n,
                    1.min(v.total()),
                    DecompositionWeight::Stated,
                );
                let direct = factors.basis(&v, n);
                for other in [conv, direct] {
                    if step != other {
                        found.push(Counterexample {
                            k: config.k,
                            n,
                            m: Some(1),
                            j: None,
                            sigma: None,
                            q: None,
                            v: v.entries().to_vec(),
                            x: report_point(x),
                            lhs: step.report(),
                            rhs: other.report(),
                        });
                    }
                }
            }
            results.push((points.len(), found));
        }
    }
    Ok(CheckReport::from_results(results))
}

/// `sum_{u <= v, |u| <= m, |v-u| <= n-m} C(m; u) C(n-m; v-u)`, which equals
/// `C(n; v)` (multinomial Vandermonde).
pub fn vandermonde_convolution(n: u32, m: u32, v: &MultiIndex) -> Result<BigUint> {
    coefficient_sum(n, m, v, |u| multinomial(m, u))
}

/// The coefficient of `x^v (1 - |x|)^(n - |v|)` produced by the stated
/// weight: `sum_{u} C(n-m; v-u)` over the same range. It matches `C(n; v)`
/// for `m <= 1` only.
pub fn stated_weight_coefficient(n: u32, m: u32, v: &MultiIndex) -> Result<BigUint> {
    coefficient_sum(n, m, v, |_| Ok(BigUint::from(1u32)))
}

fn coefficient_sum(
    n: u32,
    m: u32,
    v: &MultiIndex,
    outer: impl Fn(&MultiIndex) -> Result<BigUint>,
) -> Result<BigUint> {
    let total = v.total();
    if total > n {
        return Err(Error::DegreeMismatch { total, degree: n });
    }
    if m > n {
        return Err(Error::HypothesisViolated {
            m,
            total,
            degree: n,
        });
    }
    let mut sum = BigUint::zero();
    for u in v.lower_set(m) {
        let rest = v.checked_sub(&u).expect("u <= v");
        if rest.total() > n - m {
            continue;
        }
        sum += outer(&u)? * multinomial(n - m, &rest)?;
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// affine transformations

/// The substitution `T_{j,m}`: replace the `j`-th entry (1-based) with
/// `m` minus the entry sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransformSpec {
    axis: usize,
    m: u32,
}

impl TransformSpec {
    pub fn new(axis: usize, m: u32, k: usize) -> Result<Self> {
        if axis == 0 || axis > k {
            return Err(Error::InvalidAxis { axis, dim: k });
        }
        Ok(Self { axis, m })
    }

    /// `T_{j,1}`, the form applied to points.
    pub fn point(axis: usize, k: usize) -> Result<Self> {
        Self::new(axis, 1, k)
    }

    /// `T_{j,n}`, the form applied to multi-indices of degree `n`.
    pub fn index(axis: usize, n: u32, k: usize) -> Result<Self> {
        Self::new(axis, n, k)
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn check_dim(&self, k: usize) -> Result<()> {
        if self.axis > k {
            return Err(Error::InvalidAxis {
                axis: self.axis,
                dim: k,
            });
        }
        Ok(())
    }
}

/// `T_{j,1}(x)`: the `j`-th coordinate becomes `1 - |x|`. Maps the simplex to
/// itself and is an involution.
pub fn transform_point<S: Scalar>(
    spec: &TransformSpec,
    x: &SimplexPoint<S>,
) -> Result<SimplexPoint<S>> {
    spec.check_dim(x.dim())?;
    if spec.m != 1 {
        return Err(Error::InvalidTransform(format!(
            "points are transformed by T_(j,1), got m = {}",
            spec.m
        )));
    }
    let mut coords = x.coords().to_vec();
    coords[spec.axis - 1] = x.complement().clone();
    SimplexPoint::new(coords)
}

/// `T_{j,n}(v)`: `v_j` becomes `n - |v|`. Requires `|v| <= n`.
pub fn transform_index(spec: &TransformSpec, v: &MultiIndex) -> Result<MultiIndex> {
    spec.check_dim(v.dim())?;
    let total = v.total();
    if total > spec.m {
        return Err(Error::DegreeMismatch {
            total,
            degree: spec.m,
        });
    }
    let mut entries = v.entries().to_vec();
    entries[spec.axis - 1] = spec.m - total;
    MultiIndex::new(entries)
}

/// Index-side transformation used by [`check_axis_symmetry_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexTransform {
    /// `T_{j,n}`.
    #[default]
    Matching,
    /// `T_{j,n-1}`, a deliberately wrong index map for mutation testing.
    /// Indices it cannot map are given the value zero.
    OffByOne,
}

/// Checks `B_{v,n}(T_{j,1}(x)) = B_{T_{j,n}(v),n}(x)` for all axes `j`.
pub fn check_axis_symmetry(config: &CheckConfig) -> Result<CheckReport> {
    check_axis_symmetry_in(&Classical, config, IndexTransform::Matching)
}

pub fn check_axis_symmetry_with(
    config: &CheckConfig,
    index_map: IndexTransform,
) -> Result<CheckReport> {
    check_axis_symmetry_in(&Classical, config, index_map)
}

pub fn check_axis_symmetry_in<F: BasisFamily>(
    family: &F,
    config: &CheckConfig,
    index_map: IndexTransform,
) -> Result<CheckReport> {
    let points = prepare(family, config)?;
    let mut results = Vec::new();
    for axis in 1..=config.k {
        let point_map = TransformSpec::point(axis, config.k)?;
        let moved = points
            .iter()
            .map(|(x, _)| family.factors(&transform_point(&point_map, x)?))
            .collect::<Result<Vec<_>>>()?;
        for n in 1..=config.n_max {
            let degree = match index_map {
                IndexTransform::Matching => n,
                IndexTransform::OffByOne => n - 1,
            };
            let spec = TransformSpec::index(axis, degree, config.k)?;
            for v in enumerate(config.k, n)? {
                let image = transform_index(&spec, &v).ok();
                let mut found = Vec::new();
                for ((x, factors), moved) in points.iter().zip(&moved) {
                    let lhs = moved.basis(&v, n);
                    let rhs = image
                        .as_ref()
                        .map(|w| factors.basis(w, n))
                        .unwrap_or_else(<F::Value as Zero>::zero);
                    if !family.agree(&lhs, &rhs) {
                        found.push(Counterexample {
                            k: config.k,
                            n,
                            m: None,
                            j: Some(axis),
                            sigma: None,
                            q: family.q_at(x),
                            v: v.entries().to_vec(),
                            x: report_point(x),
                            lhs: lhs.report(),
                            rhs: rhs.report(),
                        });
                    }
                }
                results.push((points.len(), found));
            }
        }
    }
    Ok(CheckReport::from_results(results))
}

// ---------------------------------------------------------------------------
// permutations

/// A permutation `σ` of `{1, ..., k}`, stored as its images
/// `(σ(1), ..., σ(k))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let k = image.len();
        if k == 0 {
            return Err(Error::InvalidDimension);
        }
        let mut seen = vec![false; k];
        for &i in &image {
            if i == 0 || i > k || std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{image:?} is not a bijection of 1..={k}"
                )));
            }
        }
        Ok(Self(image))
    }

    pub fn identity(k: usize) -> Result<Self> {
        Self::new((1..=k).collect())
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s - 1] = i + 1;
        }
        Self(inv)
    }

    /// `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self(other.0.iter().map(|&i| self.0[i - 1]).collect()))
    }

    /// All `k!` permutations in lexicographic order of their images.
    pub fn all(k: usize) -> Result<Vec<Self>> {
        if k == 0 {
            return Err(Error::InvalidDimension);
        }
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=k).collect();
        loop {
            out.push(Self(current.clone()));
            // next lexicographic permutation
            let Some(i) = (0..k - 1).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..k)
                .rev()
                .find(|&j| current[j] > current[i])
                .expect("pivot");
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        Ok(out)
    }

    fn act<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| items[i - 1].clone()).collect()
    }
}

/// `σ(x) = (x_σ(1), ..., x_σ(k))`.
pub fn permute_point<S: Scalar>(p: &Permutation, x: &SimplexPoint<S>) -> Result<SimplexPoint<S>> {
    check_dims(p.dim(), x.dim())?;
    SimplexPoint::new(p.act(x.coords()))
}

/// `σ(v) = (v_σ(1), ..., v_σ(k))`.
pub fn permute_index(p: &Permutation, v: &MultiIndex) -> Result<MultiIndex> {
    check_dims(p.dim(), v.dim())?;
    MultiIndex::new(p.act(v.entries()))
}

/// The permutations a symmetry check runs over: all of them for `k <= 3`,
/// otherwise the identity, a transposition and `samples` seeded random ones.
pub fn permutations_for(k: usize, samples: usize, seed: u64) -> Result<Vec<Permutation>> {
    if k <= 3 {
        return Permutation::all(k);
    }
    let mut out = vec![Permutation::identity(k)?];
    let mut swap: Vec<usize> = (1..=k).collect();
    swap.swap(0, 1);
    out.push(Permutation::new(swap)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5157_4D41);
    for _ in 0..samples {
        let mut image: Vec<usize> = (1..=k).collect();
        image.shuffle(&mut rng);
        out.push(Permutation::new(image)?);
    }
    Ok(out)
}

/// Checks `B_{v,n}(σ(x)) = B_{σ^{-1}(v),n}(x)`.
pub fn check_permutation_symmetry(config: &CheckConfig) -> Result<CheckReport> {
    check_permutation_symmetry_in(&Classical, config)
}

pub fn check_permutation_symmetry_in<F: BasisFamily>(
    family: &F,
    config: &CheckConfig,
) -> Result<CheckReport> {
    let points = prepare(family, config)?;
    let mut results = Vec::new();
    for sigma in permutations_for(config.k, 8, config.seed)? {
        let inverse = sigma.inverse();
        let moved = points
            .iter()
            .map(|(x, _)| family.factors(&permute_point(&sigma, x)?))
            .collect::<Result<Vec<_>>>()?;
        for n in 1..=config.n_max {
            for v in enumerate(config.k, n)? {
                let image = permute_index(&inverse, &v)?;
                let mut found = Vec::new();
                for ((x, factors), moved) in points.iter().zip(&moved) {
                    let lhs = moved.basis(&v, n);
                    let rhs = factors.basis(&image, n);
                    if !family.agree(&lhs, &rhs) {
                        found.push(Counterexample {
                            k: config.k,
                            n,
                            m: None,
                            j: None,
                            sigma: Some(sigma.image().to_vec()),
                            q: family.q_at(x),
                            v: v.entries().to_vec(),
                            x: report_point(x),
                            lhs: lhs.report(),
                            rhs: rhs.report(),
                        });
                    }
                }
                results.push((points.len(), found));
            }
        }
    }
    Ok(CheckReport::from_results(results))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::eval;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn qpt(coords: &[(i64, i64)]) -> SimplexPoint<Rational> {
        SimplexPoint::new(coords.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    fn b(v: &[u32], n: u32, x: &SimplexPoint<Rational>) -> Rational {
        eval(&BasisId::new(mi(v), n).unwrap(), x).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let x = qpt(&[(1, 4), (1, 4)]);
        let case = DecompositionCase::new(2, 1, mi(&[1, 1]), x.clone()).unwrap();
        assert_eq!(decomposition_lhs(&case), ratio(1, 8));
        assert_eq!(case.rhs(), ratio(1, 8));

        // m = 0 collapses to B_{v,n}
        let case = DecompositionCase::new(4, 0, mi(&[2, 1]), x.clone()).unwrap();
        assert_eq!(case.lhs(), b(&[2, 1], 4, &x));

        // k = 1: (1-x) B_{2,2} + x B_{1,2} at x = 1/2 is B_{2,3}(1/2) = 3/8
        let x = qpt(&[(1, 2)]);
        let case = DecompositionCase::new(3, 1, mi(&[2]), x.clone()).unwrap();
        assert_eq!(case.lhs(), ratio(3, 8));
        assert_eq!(case.rhs(), ratio(3, 8));
    }

    #[test]
    fn decomposition_case_validates_hypothesis() {
        let x = qpt(&[(1, 4), (1, 4)]);
        assert_eq!(
            DecompositionCase::new(3, 3, mi(&[1, 1]), x.clone()),
            Err(Error::HypothesisViolated {
                m: 3,
                total: 2,
                degree: 3
            })
        );
        assert!(matches!(
            DecompositionCase::new(1, 0, mi(&[1, 1]), x),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn stated_weight_breaks_at_m_two() {
        // k = 1, n = 3, m = 2, v = 2: the stated weight gives 2 x^2 (1 - x),
        // while B_{2,3} = 3 x^2 (1 - x)
        let x = qpt(&[(1, 3)]);
        let case = DecompositionCase::new(3, 2, mi(&[2]), x).unwrap();
        assert_eq!(case.lhs(), ratio(4, 27));
        assert_eq!(case.rhs(), ratio(2, 9));
        assert_eq!(case.lhs_with(DecompositionWeight::Unit), ratio(2, 9));
    }

    #[test]
    fn stated_weight_holds_for_m_at_most_one() {
        for k in 1..=3 {
            let config = CheckConfig::new(k, 6);
            let report = check_decomposition(&config, DecompositionWeight::Stated).unwrap();
            assert!(report.instances > 0);
            assert!(
                report.counterexamples.iter().all(|c| c.m.unwrap() >= 2),
                "k={k}: failure at m <= 1"
            );
        }
    }

    #[test]
    fn stated_weight_reports_counterexamples_at_m_two() {
        let report =
            check_decomposition(&CheckConfig::new(2, 5), DecompositionWeight::Stated).unwrap();
        assert!(!report.passed());
        assert!(report.counterexamples.iter().any(|c| c.m == Some(2)));
    }

    #[test]
    fn unit_weight_holds_for_every_m() {
        for k in 1..=3 {
            let report =
                check_decomposition(&CheckConfig::new(k, 6), DecompositionWeight::Unit).unwrap();
            assert!(
                report.passed(),
                "k={k}: {:?}",
                report.counterexamples.first()
            );
        }
    }

    #[test]
    fn mutated_weight_is_detected() {
        let report =
            check_decomposition(&CheckConfig::new(2, 3), DecompositionWeight::Mutated).unwrap();
        assert!(!report.passed());
        assert!(report.counterexamples.iter().any(|c| c.m == Some(1)));
    }

    #[test]
    fn stated_lhs_matches_coefficient_route() {
        // lhs = B_{v,n}(x) * stated_coefficient / C(n; v)
        let x = qpt(&[(1, 5), (2, 7)]);
        for n in 1..=5 {
            for v in enumerate(2, n).unwrap() {
                for m in 0..=v.total().min(n) {
                    let case = DecompositionCase::new(n, m, v.clone(), x.clone()).unwrap();
                    let scale = Rational::new(
                        BigInt::from(stated_weight_coefficient(n, m, &v).unwrap()),
                        BigInt::from(multinomial(n, &v).unwrap()),
                    );
                    assert_eq!(case.lhs(), case.rhs() * scale);
                }
            }
        }
    }

    #[test]
    fn vandermonde_restatement() {
        for k in 1..=3 {
            for n in 0..=7 {
                for v in enumerate(k, n).unwrap() {
                    for m in 0..=n {
                        assert_eq!(
                            vandermonde_convolution(n, m, &v).unwrap(),
                            multinomial(n, &v).unwrap()
                        );
                    }
                    for m in 0..=v.total().min(n).min(1) {
                        assert_eq!(
                            stated_weight_coefficient(n, m, &v).unwrap(),
                            multinomial(n, &v).unwrap()
                        );
                    }
                }
            }
        }
        assert_eq!(
            stated_weight_coefficient(3, 2, &mi(&[2])).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn recurrence_examples() {
        let x = qpt(&[(1, 3), (1, 3)]);
        for n in 1..=4 {
            let s = ratio(1, 3);
            assert_eq!(recurrence_step(&mi(&[0, 0]), n, &x).unwrap(), s.pow_u32(n));
        }
        assert_eq!(recurrence_step(&mi(&[1, 0]), 1, &x).unwrap(), ratio(1, 3));
        let x = qpt(&[(1, 4), (1, 2)]);
        assert_eq!(recurrence_step(&mi(&[1, 1]), 2, &x).unwrap(), ratio(1, 4));
        assert!(matches!(
            recurrence_step(&mi(&[1, 1]), 0, &x),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn recurrence_agrees_with_m_one() {
        for k in 1..=3 {
            assert!(check_recurrence(&CheckConfig::new(k, 6)).unwrap().passed());
        }
    }

    #[test]
    fn transform_point_examples() {
        let x = SimplexPoint::new(vec![0.2, 0.3]).unwrap();
        let t = transform_point(&TransformSpec::point(1, 2).unwrap(), &x).unwrap();
        assert!((t.coords()[0] - 0.5).abs() < 1e-15);
        assert_eq!(t.coords()[1], 0.3);

        let x = SimplexPoint::new(vec![0.0, 0.0]).unwrap();
        let t = transform_point(&TransformSpec::point(2, 2).unwrap(), &x).unwrap();
        assert_eq!(t.coords(), &[0.0, 1.0]);

        assert!(matches!(
            transform_point(&TransformSpec::new(1, 2, 2).unwrap(), &x),
            Err(Error::InvalidTransform(_))
        ));
        assert!(matches!(
            TransformSpec::point(3, 2),
            Err(Error::InvalidAxis { .. })
        ));
    }

    #[test]
    fn transform_index_examples() {
        let spec = TransformSpec::index(1, 3, 2).unwrap();
        assert_eq!(transform_index(&spec, &mi(&[1, 1])).unwrap(), mi(&[1, 1]));
        assert_eq!(transform_index(&spec, &mi(&[0, 2])).unwrap(), mi(&[1, 2]));
        assert!(matches!(
            transform_index(&spec, &mi(&[2, 2])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn transforms_are_involutions() {
        for k in 1..=3 {
            for x in test_points(k, 10, 3).unwrap() {
                for axis in 1..=k {
                    let spec = TransformSpec::point(axis, k).unwrap();
                    let back =
                        transform_point(&spec, &transform_point(&spec, &x).unwrap()).unwrap();
                    assert_eq!(back, x);
                }
            }
            for n in 0..=5 {
                for v in enumerate(k, n).unwrap() {
                    for axis in 1..=k {
                        let spec = TransformSpec::index(axis, n, k).unwrap();
                        let once = transform_index(&spec, &v).unwrap();
                        assert_eq!(once.total(), n - v.entries()[axis - 1]);
                        assert_eq!(transform_index(&spec, &once).unwrap(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn axis_symmetry_holds() {
        for k in 1..=3 {
            let report = check_axis_symmetry(&CheckConfig::new(k, 5)).unwrap();
            assert!(
                report.passed(),
                "k={k}: {:?}",
                report.counterexamples.first()
            );
        }
    }

    #[test]
    fn axis_symmetry_k_one_is_reflection() {
        // B_{v,n}(1 - x) = B_{n-v,n}(x)
        let x = qpt(&[(2, 9)]);
        let reflected = qpt(&[(7, 9)]);
        for n in 0..=6 {
            for v in 0..=n {
                assert_eq!(b(&[v], n, &reflected), b(&[n - v], n, &x));
            }
        }
    }

    #[test]
    fn off_by_one_index_map_is_detected() {
        let report =
            check_axis_symmetry_with(&CheckConfig::new(2, 5), IndexTransform::OffByOne).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn permutation_examples() {
        let x = SimplexPoint::new(vec![0.1, 0.2, 0.3]).unwrap();
        let swap = Permutation::new(vec![2, 1, 3]).unwrap();
        assert_eq!(permute_point(&swap, &x).unwrap().coords(), &[0.2, 0.1, 0.3]);
        let id = Permutation::identity(3).unwrap();
        assert_eq!(permute_point(&id, &x).unwrap(), x);
        let cycle = Permutation::new(vec![2, 3, 1]).unwrap();
        let there = permute_point(&cycle, &x).unwrap();
        assert_eq!(permute_point(&cycle.inverse(), &there).unwrap(), x);
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(matches!(
            permute_index(&swap, &mi(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn swap_example_two_dims() {
        let x = qpt(&[(1, 5), (3, 10)]);
        let swapped = qpt(&[(3, 10), (1, 5)]);
        assert_eq!(b(&[1, 2], 4, &swapped), b(&[2, 1], 4, &x));
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(Permutation::all(3).unwrap().len(), 6);
        assert_eq!(Permutation::all(4).unwrap().len(), 24);
        let mut all = Permutation::all(4).unwrap();
        all.dedup();
        assert_eq!(all.len(), 24);
        let sampled = permutations_for(4, 8, 7).unwrap();
        assert_eq!(sampled.len(), 10);
    }

    #[test]
    fn permutation_symmetry_holds() {
        for k in 1..=3 {
            let report = check_permutation_symmetry(&CheckConfig::new(k, 4)).unwrap();
            assert!(report.passed(), "k={k}");
        }
        assert!(check_permutation_symmetry(&CheckConfig::new(4, 3))
            .unwrap()
            .passed());
    }

    #[test]
    fn composed_actions_respect_inverse_order() {
        let x = qpt(&[(1, 7), (2, 7), (3, 14)]);
        let v = mi(&[1, 2, 0]);
        for sigma in Permutation::all(3).unwrap() {
            for tau in Permutation::all(3).unwrap() {
                // τ(σ(x)) = (σ∘τ)(x)
                let st = sigma.compose(&tau).unwrap();
                let lhs = permute_point(&tau, &permute_point(&sigma, &x).unwrap()).unwrap();
                assert_eq!(lhs, permute_point(&st, &x).unwrap());
                // (σ∘τ)^{-1} = τ^{-1}∘σ^{-1}
                assert_eq!(
                    st.inverse(),
                    tau.inverse().compose(&sigma.inverse()).unwrap()
                );
                // applying the symmetry twice
                let twice = b(v.entries(), 4, &lhs);
                let image = permute_index(&st.inverse(), &v).unwrap();
                assert_eq!(twice, b(image.entries(), 4, &x));
            }
        }
    }

    #[test]
    fn test_points_are_deterministic_and_bounded() {
        let a = test_points(3, 20, 11).unwrap();
        assert_eq!(a, test_points(3, 20, 11).unwrap());
        assert_ne!(a, test_points(3, 20, 12).unwrap());
        assert_eq!(a.len(), 24);
        for x in &a {
            for c in x.coords() {
                assert!(c.denom() <= &BigInt::from(MAX_DENOMINATOR));
            }
        }
        // boundary: |x| = 1 and x_1 = 0 both present
        assert!(a.iter().any(|x| x.complement().is_zero()));
        assert!(a.iter().any(|x| x.coords()[0].is_zero()));
    }

    #[test]
    fn counterexample_serializes_to_schema_shape() {
        let report =
            check_decomposition(&CheckConfig::new(1, 3), DecompositionWeight::Stated).unwrap();
        let first = &report.counterexamples[0];
        let json = serde_json::to_value(first).unwrap();
        assert!(json["m"].is_u64());
        assert!(json.get("j").is_none());
        assert!(json["x"][0]["num"].is_i64());
        assert!(json["lhs"]["den"].is_i64());
    }

    proptest! {
        #[test]
        fn transform_point_preserves_sum_relation(a in 0i64..=64, b2 in 0i64..=64, axis in 1usize..=2) {
            prop_assume!(a + b2 <= 64);
            let x = qpt(&[(a, 64), (b2, 64)]);
            let t = transform_point(&TransformSpec::point(axis, 2).unwrap(), &x).unwrap();
            prop_assert_eq!(t.sum(), Rational::from_u64(1) - &x.coords()[axis - 1]);
        }
    }
}
