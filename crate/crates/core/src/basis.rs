//! Evaluation of the simplex Bernstein basis
//! `B_{v,n}(x) = binom(n, v) x^v (1 - |x|)^(n - |v|)`
//! in exact and floating arithmetic, plus the exponential generating function
//! in the degree `n`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiindex::{check_dims, factorial, BasisId, MultiIndex, SimplexPoint};
use crate::scalar::{Rational, Scalar};

/// Default truncation for generating-series checks.
pub const DEFAULT_TRUNCATION: u32 = 40;

/// `binom(n, v) * prod_i c_i^{v_i} * c0^{n - |v|}`.
///
/// Both the classical basis (`c = x`, `c0 = 1 - |x|`) and the q-deformed basis
/// (`c = [x]_q`, `c0 = [1 - |x|]_q`) are evaluated through this one function.
pub(crate) fn weighted_monomial<S: Scalar>(id: &BasisId, coords: &[S], complement: &S) -> S {
    let v = id.index().entries();
    let mut acc = S::from_biguint(&id.coefficient());
    for (c, &e) in coords.iter().zip(v) {
        acc = acc * c.pow_u32(e);
    }
    acc * complement.pow_u32(id.degree() - id.index().total())
}

/// `B_{v,n}(x)` with the convention `0^0 = 1`.
pub fn eval<S: Scalar>(id: &BasisId, x: &SimplexPoint<S>) -> Result<S> {
    check_dims(id.dim(), x.dim())?;
    Ok(weighted_monomial(id, x.coords(), x.complement()))
}

/// Calls `visit(v, B_{v,n}(x))` for every `|v| <= n` in lexicographic order.
///
/// Values are produced by ratio recurrences along the walk, so each entry
/// costs O(1) multiplications after the `(1 - |x|)` power table is built.
pub fn for_each_value<S: Scalar>(n: u32, x: &SimplexPoint<S>, mut visit: impl FnMut(&[u32], &S)) {
    let mut complement_powers = Vec::with_capacity(n as usize + 1);
    let mut p = S::one();
    for _ in 0..=n {
        complement_powers.push(p.clone());
        p = p * x.complement();
    }
    let mut current = vec![0u32; x.dim()];
    walk(
        x.coords(),
        &complement_powers,
        0,
        n,
        S::one(),
        &mut current,
        &mut visit,
    );
}

fn walk<S: Scalar>(
    coords: &[S],
    complement_powers: &[S],
    axis: usize,
    remaining: u32,
    prefix: S,
    current: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32], &S),
) {
    if axis == coords.len() {
        let value = prefix * &complement_powers[remaining as usize];
        visit(current, &value);
        return;
    }
    // term(e) = C(remaining, e) x_axis^e * prefix
    let mut term = prefix;
    for e in 0..=remaining {
        current[axis] = e;
        walk(
            coords,
            complement_powers,
            axis + 1,
            remaining - e,
            term.clone(),
            current,
            visit,
        );
        if e < remaining {
            term = (term * &coords[axis] * S::from_u64(u64::from(remaining - e)))
                .div_u64(u64::from(e) + 1);
        }
    }
    current[axis] = 0;
}

/// Every basis value of degree `n`, keyed by multi-index in lexicographic order.
pub fn eval_all<S: Scalar>(k: usize, n: u32, x: &SimplexPoint<S>) -> Result<Vec<(MultiIndex, S)>> {
    check_dims(k, x.dim())?;
    let mut out = Vec::new();
    for_each_value(n, x, |v, value| {
        out.push((MultiIndex::new(v.to_vec()).expect("k >= 1"), value.clone()))
    });
    Ok(out)
}

/// `sum_{|v| <= n} B_{v,n}(x)` in exact arithmetic; equals one on the simplex.
pub fn partition_check(k: usize, n: u32, x: &SimplexPoint<Rational>) -> Result<Rational> {
    check_dims(k, x.dim())?;
    let mut sum = Rational::zero();
    for_each_value(n, x, |_, value| sum += value);
    Ok(sum)
}

/// Floating-point partition sum, for roundoff checks.
pub fn partition_sum(k: usize, n: u32, x: &SimplexPoint<f64>) -> Result<f64> {
    check_dims(k, x.dim())?;
    let mut sum = 0.0;
    for_each_value(n, x, |_, value| sum += value);
    Ok(sum)
}

/// Partial sum `sum_{n=|v|}^{N} B_{v,n}(x) t^n / n!` of the exponential
/// generating series in the degree.
///
/// Consecutive terms differ by the factor `t (1 - |x|) / (n + 1 - |v|)`.
pub fn generating_partial(
    v: &MultiIndex,
    x: &SimplexPoint<f64>,
    t: f64,
    truncation: u32,
) -> Result<f64> {
    check_dims(v.dim(), x.dim())?;
    let total = v.total();
    if truncation < total {
        return Err(Error::TruncationTooSmall { truncation, total });
    }
    let step = t * x.complement();
    let mut term = leading_factor(v, x, t);
    let mut sum = term;
    for m in 1..=(truncation - total) {
        term = term * step / f64::from(m);
        sum += term;
    }
    Ok(sum)
}

/// Closed form `(t x)^v / v! * exp(t (1 - |x|))`.
pub fn generating_closed(v: &MultiIndex, x: &SimplexPoint<f64>, t: f64) -> Result<f64> {
    check_dims(v.dim(), x.dim())?;
    Ok(leading_factor(v, x, t) * (t * x.complement()).exp())
}

/// `(t x)^v / v!`
fn leading_factor(v: &MultiIndex, x: &SimplexPoint<f64>, t: f64) -> f64 {
    v.entries()
        .iter()
        .zip(x.coords())
        .map(|(&e, &c)| (t * c).pow_u32(e) / f64::from_biguint(&factorial(e)))
        .product()
}

/// Generating series partial sum next to its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratingComparison {
    pub partial: f64,
    pub closed: f64,
    pub abs_diff: f64,
}

pub fn compare_generating(
    v: &MultiIndex,
    x: &SimplexPoint<f64>,
    t: f64,
    truncation: u32,
) -> Result<GeneratingComparison> {
    let partial = generating_partial(v, x, t, truncation)?;
    let closed = generating_closed(v, x, t)?;
    Ok(GeneratingComparison {
        partial,
        closed,
        abs_diff: (partial - closed).abs(),
    })
}
