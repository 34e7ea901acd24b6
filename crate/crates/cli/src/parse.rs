use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use simplex_bernstein::{MultiIndex, Rational, Scalar, SimplexPoint};

/// A number given on the command line. Integers and fractions are exact,
/// anything with a decimal point or exponent is floating.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64(),
            Number::Float(x) => *x,
        }
    }
}

pub fn number(token: &str) -> Result<Number> {
    let token = token.trim();
    if let Some((num, den)) = token.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .with_context(|| format!("bad numerator in `{token}`"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .with_context(|| format!("bad denominator in `{token}`"))?;
        if den == BigInt::from(0) {
            bail!("zero denominator in `{token}`");
        }
        return Ok(Number::Exact(Rational::new(num, den)));
    }
    if let Ok(n) = token.parse::<BigInt>() {
        return Ok(Number::Exact(Rational::from_integer(n)));
    }
    let x: f64 = token
        .parse()
        .map_err(|_| anyhow!("`{token}` is not a number"))?;
    if !x.is_finite() {
        bail!("`{token}` is not finite");
    }
    Ok(Number::Float(x))
}

pub fn numbers(list: &str) -> Result<Vec<Number>> {
    list.split(',').map(number).collect()
}

pub fn multi_index(list: &str) -> Result<MultiIndex> {
    let entries = list
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| anyhow!("`{t}` is not a nonnegative integer"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiIndex::new(entries)?)
}

pub fn degrees(list: &str) -> Result<Vec<u32>> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| anyhow!("`{t}` is not a degree"))
        })
        .collect()
}

/// A point in exact arithmetic when every coordinate is exact, otherwise in
/// floating arithmetic.
pub enum Point {
    Exact(SimplexPoint<Rational>),
    Float(SimplexPoint<f64>),
}

pub fn point(list: &str) -> Result<Point> {
    let coords = numbers(list)?;
    if coords.iter().all(|c| matches!(c, Number::Exact(_))) {
        let exact = coords
            .into_iter()
            .map(|c| match c {
                Number::Exact(r) => r,
                Number::Float(_) => unreachable!(),
            })
            .collect();
        Ok(Point::Exact(SimplexPoint::new(exact)?))
    } else {
        Ok(Point::Float(SimplexPoint::new(
            coords.iter().map(Number::to_f64).collect(),
        )?))
    }
}

pub fn float_point(list: &str) -> Result<SimplexPoint<f64>> {
    Ok(SimplexPoint::new(
        numbers(list)?.iter().map(Number::to_f64).collect(),
    )?)
}
