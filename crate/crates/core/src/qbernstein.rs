//! q-brackets `[x]_q = (1 - q^x) / (1 - q)` and the q-deformed simplex basis
//! `B_{v,n}(x | q) = binom(n, v) prod_i [x_i]_q^{v_i} [1 - |x|]_q^{n - |v|}`.
//!
//! `q` is real in `(0, 1]`; `q = 1` is the classical basis and goes through
//! the same evaluation path, so it reproduces it bit for bit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::basis::{eval, weighted_monomial};
use crate::error::{Error, Result};
use crate::identities::{
    check_axis_symmetry_in, check_decomposition_in, check_permutation_symmetry_in, BasisFamily,
    CheckConfig, CheckReport, DecompositionWeight, Factors, IndexTransform,
};
use crate::multiindex::{BasisId, SimplexPoint};
use crate::scalar::{Rational, Scalar};

/// Relative tolerance for floating q-identity comparisons.
pub const Q_RELATIVE_TOL: f64 = 1e-11;

/// The deformation parameter `q` in `(0, 1]`, optionally carrying an exact
/// rational value for the exact verification pass.
#[derive(Debug, Clone, PartialEq)]
pub struct QParam {
    value: f64,
    exact: Option<Rational>,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidQ(q));
        }
        Ok(Self {
            value: q,
            exact: None,
        })
    }

    pub fn from_rational(q: Rational) -> Result<Self> {
        let value = q.to_f64();
        if !q.is_positive() || q > Rational::one() {
            return Err(Error::InvalidQ(value));
        }
        Ok(Self {
            value,
            exact: Some(q),
        })
    }

    pub fn classical() -> Self {
        Self {
            value: 1.0,
            exact: Some(Rational::one()),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn is_classical(&self) -> bool {
        self.value == 1.0
    }

    /// `[x]_q`. `q^x` is evaluated as `exp(x ln q)` (through `expm1`/`ln_1p`
    /// to keep relative accuracy as `q -> 1`).
    pub fn bracket(&self, x: f64) -> f64 {
        if self.is_classical() {
            return x;
        }
        if x == 0.0 || x == 1.0 {
            return x;
        }
        let log_q = (self.value - 1.0).ln_1p();
        -(x * log_q).exp_m1() / (1.0 - self.value)
    }
}

/// `[x]_q = (1 - q^x) / (1 - q)`, with `[x]_1 = x`.
pub fn q_bracket(x: f64, q: f64) -> Result<f64> {
    Ok(QParam::new(q)?.bracket(x))
}

/// Identifies `B_{v,n}(. | q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QBasisId {
    pub id: BasisId,
    pub q: QParam,
}

impl QBasisId {
    pub fn new(id: BasisId, q: QParam) -> Self {
        Self { id, q }
    }
}

fn bracket_factors(q: &QParam, x: &SimplexPoint<f64>) -> Factors<f64> {
    Factors {
        coords: x.coords().iter().map(|&c| q.bracket(c)).collect(),
        complement: q.bracket(*x.complement()),
    }
}

/// `B_{v,n}(x | q)`: each coordinate is bracketed, then raised to its power.
pub fn q_basis_eval(id: &QBasisId, x: &SimplexPoint<f64>) -> Result<f64> {
    crate::multiindex::check_dims(id.id.dim(), x.dim())?;
    let factors = bracket_factors(&id.q, x);
    Ok(weighted_monomial(
        &id.id,
        &factors.coords,
        &factors.complement,
    ))
}

/// `|B_{v,n}(x | q) - B_{v,n}(x)|` for each `q` of a strictly increasing
/// sequence in `(0, 1]`.
pub fn q_limit_check(id: &BasisId, x: &SimplexPoint<f64>, qs: &[f64]) -> Result<Vec<f64>> {
    let params = qs
        .iter()
        .map(|&q| QParam::new(q))
        .collect::<Result<Vec<_>>>()?;
    if qs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidQ(
            qs.windows(2)
                .find(|w| w[0] >= w[1])
                .map(|w| w[1])
                .unwrap_or(f64::NAN),
        ));
    }
    let classical = eval(id, x)?;
    params
        .into_iter()
        .map(|q| Ok((q_basis_eval(&QBasisId::new(id.clone(), q), x)? - classical).abs()))
        .collect()
}

/// The default sequence `0.9, 0.99, ..., 1 - 1e-8`.
pub fn default_limit_sequence() -> Vec<f64> {
    (1..=8).map(|e| 1.0 - 10f64.powi(-e)).collect()
}

// ---------------------------------------------------------------------------
// families for the identity checks

/// The q-deformed basis in floating arithmetic, compared with relative
/// tolerance [`Q_RELATIVE_TOL`].
#[derive(Debug, Clone)]
pub struct QFloat {
    q: QParam,
}

impl QFloat {
    pub fn new(q: QParam) -> Self {
        Self { q }
    }
}

impl BasisFamily for QFloat {
    type Value = f64;

    fn factors(&self, x: &SimplexPoint<Rational>) -> Result<Factors<f64>> {
        Ok(bracket_factors(&self.q, &x.to_f64()))
    }

    fn agree(&self, lhs: &f64, rhs: &f64) -> bool {
        (lhs - rhs).abs() <= Q_RELATIVE_TOL * lhs.abs().max(rhs.abs())
    }

    fn q_at(&self, _x: &SimplexPoint<Rational>) -> Option<f64> {
        Some(self.q.value)
    }
}

/// The q-deformed basis in exact arithmetic.
///
/// For a point whose coordinates and complement share the denominator `D`,
/// the deformation is `q = r^D` for a rational base `r`, so every
/// `q^{x_i} = r^{D x_i}` is rational. `D` is unchanged by the axis
/// substitutions and permutations, so both sides of a symmetry use the
/// same `q`.
#[derive(Debug, Clone)]
pub struct QExact {
    base: Rational,
}

impl QExact {
    pub fn new(base: Rational) -> Result<Self> {
        QParam::from_rational(base.clone())?;
        Ok(Self { base })
    }

    fn common_denominator(x: &SimplexPoint<Rational>) -> BigInt {
        x.coords()
            .iter()
            .chain(std::iter::once(x.complement()))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn power(&self, e: &BigInt) -> Result<Rational> {
        let e = u32::try_from(e)
            .map_err(|_| Error::OutOfSimplex(format!("exponent {e} too large for exact q")))?;
        Ok(self.base.pow_u32(e))
    }

    /// `q = r^D` in effect at `x`.
    pub fn q(&self, x: &SimplexPoint<Rational>) -> Result<Rational> {
        self.power(&Self::common_denominator(x))
    }
}

impl BasisFamily for QExact {
    type Value = Rational;

    fn factors(&self, x: &SimplexPoint<Rational>) -> Result<Factors<Rational>> {
        if self.base.is_one() {
            return Ok(Factors {
                coords: x.coords().to_vec(),
                complement: x.complement().clone(),
            });
        }
        let d = Self::common_denominator(x);
        let one = Rational::one();
        let denom = &one - self.power(&d)?;
        let bracket = |c: &Rational| -> Result<Rational> {
            let a = (c * Rational::from_integer(d.clone())).to_integer();
            Ok((&one - self.power(&a)?) / &denom)
        };
        Ok(Factors {
            coords: x.coords().iter().map(bracket).collect::<Result<_>>()?,
            complement: bracket(x.complement())?,
        })
    }

    fn agree(&self, lhs: &Rational, rhs: &Rational) -> bool {
        lhs == rhs
    }

    fn q_at(&self, x: &SimplexPoint<Rational>) -> Option<f64> {
        self.q(x).ok().map(|q| q.to_f64())
    }
}

/// Decomposition identity for the q-basis: a floating pass for every `q`
/// and an exact pass for every `q` with a rational value.
pub fn check_q_decomposition(
    config: &CheckConfig,
    qs: &[QParam],
    weight: DecompositionWeight,
) -> Result<CheckReport> {
    run_passes(qs, |q| {
        let mut report = check_decomposition_in(&QFloat::new(q.clone()), config, weight)?;
        if let Some(base) = q.exact() {
            report = report.merge(check_decomposition_in(
                &QExact::new(base.clone())?,
                config,
                weight,
            )?);
        }
        Ok(report)
    })
}

/// Axis and permutation symmetries for the q-basis, floating and exact
/// passes as in [`check_q_decomposition`].
pub fn check_q_symmetry(config: &CheckConfig, qs: &[QParam]) -> Result<CheckReport> {
    run_passes(qs, |q| {
        let float = QFloat::new(q.clone());
        let mut report = check_axis_symmetry_in(&float, config, IndexTransform::Matching)?
            .merge(check_permutation_symmetry_in(&float, config)?);
        if let Some(base) = q.exact() {
            let exact = QExact::new(base.clone())?;
            report = report
                .merge(check_axis_symmetry_in(
                    &exact,
                    config,
                    IndexTransform::Matching,
                )?)
                .merge(check_permutation_symmetry_in(&exact, config)?);
        }
        Ok(report)
    })
}

fn run_passes(qs: &[QParam], pass: impl Fn(&QParam) -> Result<CheckReport>) -> Result<CheckReport> {
    qs.iter().try_fold(
        CheckReport {
            instances: 0,
            counterexamples: Vec::new(),
        },
        |acc, q| Ok(acc.merge(pass(q)?)),
    )
}

/// The default q-list `1/4, 1/2, 3/4`.
pub fn default_q_list() -> Vec<QParam> {
    [(1, 4), (1, 2), (3, 4)]
        .iter()
        .map(|&(a, b)| QParam::from_rational(crate::scalar::ratio(a, b)).expect("valid q"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::check_decomposition;
    use crate::multiindex::{enumerate, MultiIndex};
    use crate::scalar::ratio;
    use proptest::prelude::*;

    fn id(v: &[u32], n: u32) -> BasisId {
        BasisId::new(MultiIndex::new(v.to_vec()).unwrap(), n).unwrap()
    }

    #[test]
    fn bracket_examples() {
        for q in [0.1, 0.5, 0.9, 1.0] {
            assert_eq!(q_bracket(1.0, q).unwrap(), 1.0);
            assert_eq!(q_bracket(0.0, q).unwrap(), 0.0);
        }
        // (1 - 1/4) / (1/2)
        assert!((q_bracket(2.0, 0.5).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(q_bracket(0.37, 1.0).unwrap(), 0.37);
    }

    #[test]
    fn bracket_rejects_bad_q() {
        for q in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(q_bracket(0.5, q), Err(Error::InvalidQ(_))));
        }
        assert!(QParam::from_rational(ratio(3, 2)).is_err());
        assert!(QParam::from_rational(ratio(0, 1)).is_err());
    }

    #[test]
    fn bracket_matches_direct_formula() {
        for &q in &[0.25f64, 0.5, 0.75] {
            for i in 0..=20 {
                let x = f64::from(i) / 20.0;
                let direct = (1.0 - q.powf(x)) / (1.0 - q);
                assert!((q_bracket(x, q).unwrap() - direct).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn q_eval_examples() {
        let x = SimplexPoint::new(vec![0.5]).unwrap();
        let q = QParam::new(0.5).unwrap();
        let got = q_basis_eval(&QBasisId::new(id(&[1], 1), q.clone()), &x).unwrap();
        // (1 - 2^{-1/2}) / (1/2)
        let expected = (1.0 - 1.0 / 2f64.sqrt()) / 0.5;
        assert!((got - expected).abs() < 1e-15);
        assert!((got - 0.585786).abs() < 1e-6);

        let x = SimplexPoint::new(vec![0.2, 0.3]).unwrap();
        assert_eq!(
            q_basis_eval(&QBasisId::new(id(&[0, 0], 0), q), &x).unwrap(),
            1.0
        );
    }

    #[test]
    fn classical_q_is_bit_identical() {
        let x = SimplexPoint::new(vec![0.13, 0.29, 0.21]).unwrap();
        for n in 0..=8 {
            for v in enumerate(3, n).unwrap() {
                let id = BasisId::new(v, n).unwrap();
                let classical = eval(&id, &x).unwrap();
                let q = q_basis_eval(&QBasisId::new(id, QParam::classical()), &x).unwrap();
                assert_eq!(classical.to_bits(), q.to_bits());
            }
        }
    }

    #[test]
    fn exponent_law_within_four_ulps() {
        let q = QParam::new(0.3).unwrap();
        for i in 1..20 {
            let b = q.bracket(f64::from(i) / 20.0);
            for a in 0..5u32 {
                for c in 0..5u32 {
                    let lhs = b.pow_u32(a) * b.pow_u32(c);
                    let rhs = b.pow_u32(a + c);
                    assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * rhs.abs());
                }
            }
        }
    }

    #[test]
    fn limit_examples() {
        let origin = SimplexPoint::new(vec![0.0, 0.0]).unwrap();
        let gaps = q_limit_check(&id(&[0, 0], 3), &origin, &default_limit_sequence()).unwrap();
        assert!(gaps.iter().all(|&g| g == 0.0));

        let x = SimplexPoint::new(vec![0.25, 0.25]).unwrap();
        let gaps = q_limit_check(&id(&[1, 1], 3), &x, &[0.9, 0.99, 1.0 - 1e-8]).unwrap();
        assert!(gaps[1] < gaps[0]);
        assert!(gaps[2] <= 1e-6);

        assert!(q_limit_check(&id(&[1, 1], 3), &x, &[0.9, 0.5]).is_err());
        assert!(q_limit_check(&id(&[1, 1], 3), &x, &[0.9, 1.1]).is_err());
    }

    #[test]
    fn exact_family_brackets() {
        // x = (1/4, 1/2), D = 4, base 1/2 => q = 1/16
        let x = SimplexPoint::new(vec![ratio(1, 4), ratio(1, 2)]).unwrap();
        let fam = QExact::new(ratio(1, 2)).unwrap();
        assert_eq!(fam.q(&x).unwrap(), ratio(1, 16));
        let f = fam.factors(&x).unwrap();
        // [1/4]_{1/16} = (1 - 1/2) / (1 - 1/16) = 8/15
        assert_eq!(f.coords[0], ratio(8, 15));
        assert_eq!(f.coords[1], ratio(12, 15));
        assert_eq!(f.complement, ratio(8, 15));
        // agrees with the floating bracket at q = 1/16
        let q = QParam::new(1.0 / 16.0).unwrap();
        assert!((q.bracket(0.25) - 8.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn q_symmetry_holds() {
        let qs = default_q_list();
        for k in 1..=3 {
            let report = check_q_symmetry(&CheckConfig::new(k, 4), &qs).unwrap();
            assert!(
                report.passed(),
                "k={k}: {:?}",
                report.counterexamples.first()
            );
        }
    }

    #[test]
    fn q_decomposition_holds_for_small_m() {
        let report = check_q_decomposition(
            &CheckConfig::new(2, 5),
            &default_q_list(),
            DecompositionWeight::Stated,
        )
        .unwrap();
        assert!(report.counterexamples.iter().all(|c| c.m.unwrap() >= 2));
        assert!(!report.passed());

        let unit = check_q_decomposition(
            &CheckConfig::new(2, 5),
            &default_q_list(),
            DecompositionWeight::Unit,
        )
        .unwrap();
        assert!(unit.passed());
    }

    #[test]
    fn q_decomposition_mutation_detected() {
        let report = check_q_decomposition(
            &CheckConfig::new(2, 3),
            &default_q_list(),
            DecompositionWeight::Mutated,
        )
        .unwrap();
        assert!(report.counterexamples.iter().any(|c| c.m == Some(1)));
    }

    #[test]
    fn classical_q_flags_the_same_cases() {
        let config = CheckConfig::new(2, 5);
        let classical = check_decomposition(&config, DecompositionWeight::Stated).unwrap();
        let float = check_decomposition_in(
            &QFloat::new(QParam::new(1.0).unwrap()),
            &config,
            DecompositionWeight::Stated,
        )
        .unwrap();
        let keys = |r: &CheckReport| {
            r.counterexamples
                .iter()
                .map(|c| c.case_key())
                .collect::<Vec<_>>()
        };
        assert_eq!(keys(&classical), keys(&float));
        assert_eq!(classical.instances, float.instances);
    }

    proptest! {
        #[test]
        fn bracket_increasing_in_x(q in 0.01f64..0.99, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            prop_assume!((a - b).abs() > 1e-9);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let q = QParam::new(q).unwrap();
            prop_assert!(q.bracket(lo) < q.bracket(hi));
            prop_assert!(q.bracket(lo) >= 0.0 && q.bracket(hi) <= 1.0 + 1e-15);
        }
    }
}
