//! Objective functions, their basis-linear relaxations, and the
//! individual-subadditivity checks the core characterizations rest on.

pub mod classes;

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::exact::{
    dot, format_rational, format_vector, left_pseudo_inverse, unit, zeros, RatMatrix, RatVector,
    Rational,
};
use crate::game::Coalition;

pub use classes::{class_checks, quadratic_is_characterization, ClassReport, QuadraticDomainKind};

/// An objective function `f` over domain points (grounded: `f(0) = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveSpec {
    /// `cᵀx`.
    Linear { c: RatVector },
    /// `bᵀx + xᵀQx` with symmetric `Q`.
    Quadratic { b: RatVector, q: RatMatrix },
    /// `cᵀx / (d0 + dᵀx)` with `c, d ≥ 0`, `d0 > 0`.
    Ratio { c: RatVector, d: RatVector, d0: Rational },
    /// Explicit point table; the escape hatch for arbitrary set functions.
    Table { values: BTreeMap<RatVector, Rational> },
    /// `α·f` with `α ≥ 0`.
    Scaled { factor: Rational, inner: Box<ObjectiveSpec> },
    /// Sum of inner objectives.
    Sum { terms: Vec<ObjectiveSpec> },
    /// Pointwise maximum of two objectives.
    Max { left: Box<ObjectiveSpec>, right: Box<ObjectiveSpec> },
    /// `f(Mx)` for an inner objective `f`.
    Precomposed { matrix: RatMatrix, inner: Box<ObjectiveSpec> },
    /// Player-dependent table `f(x, w)`.
    CoalitionDependent { values: BTreeMap<(RatVector, Coalition), Rational> },
}

impl ObjectiveSpec {
    pub fn linear(c: RatVector) -> Self {
        ObjectiveSpec::Linear { c }
    }

    pub fn quadratic(b: RatVector, q: RatMatrix) -> Self {
        ObjectiveSpec::Quadratic { b, q }
    }

    pub fn ratio(c: RatVector, d: RatVector, d0: Rational) -> Self {
        ObjectiveSpec::Ratio { c, d, d0 }
    }

    pub fn table(values: BTreeMap<RatVector, Rational>) -> Self {
        ObjectiveSpec::Table { values }
    }

    /// Build a table objective by sampling a function over given points.
    pub fn table_from_fn(points: &[RatVector], f: impl Fn(&[Rational]) -> Rational) -> Self {
        let values = points.iter().map(|p| (p.clone(), f(p))).collect();
        ObjectiveSpec::Table { values }
    }

    pub fn needs_coalition(&self) -> bool {
        match self {
            ObjectiveSpec::CoalitionDependent { .. } => true,
            ObjectiveSpec::Scaled { inner, .. } => inner.needs_coalition(),
            ObjectiveSpec::Sum { terms } => terms.iter().any(|t| t.needs_coalition()),
            ObjectiveSpec::Max { left, right } => left.needs_coalition() || right.needs_coalition(),
            ObjectiveSpec::Precomposed { inner, .. } => inner.needs_coalition(),
            _ => false,
        }
    }

    /// Exact value of `f` at `x` (with the coalition argument for
    /// player-dependent objectives).
    pub fn eval(&self, x: &[Rational], w: Option<&Coalition>) -> Result<Rational> {
        match self {
            ObjectiveSpec::Linear { c } => {
                check_len(c.len(), x.len())?;
                Ok(dot(c, x))
            }
            ObjectiveSpec::Quadratic { b, q } => {
                check_len(b.len(), x.len())?;
                let qx = q.mul_vec(x);
                Ok(dot(b, x) + dot(x, &qx))
            }
            ObjectiveSpec::Ratio { c, d, d0 } => {
                check_len(c.len(), x.len())?;
                Ok(dot(c, x) / (d0 + dot(d, x)))
            }
            ObjectiveSpec::Table { values } => {
                values.get(x).cloned().ok_or(Error::UndefinedPoint)
            }
            ObjectiveSpec::Scaled { factor, inner } => Ok(factor * inner.eval(x, w)?),
            ObjectiveSpec::Sum { terms } => {
                let mut acc = Rational::zero();
                for t in terms {
                    acc += t.eval(x, w)?;
                }
                Ok(acc)
            }
            ObjectiveSpec::Max { left, right } => {
                Ok(left.eval(x, w)?.max(right.eval(x, w)?))
            }
            ObjectiveSpec::Precomposed { matrix, inner } => {
                check_len(matrix.cols(), x.len())?;
                inner.eval(&matrix.mul_vec(x), w)
            }
            ObjectiveSpec::CoalitionDependent { values } => {
                let w = w.ok_or(Error::MissingCoalitionArgument)?;
                values
                    .get(&(x.to_vec(), w.clone()))
                    .cloned()
                    .ok_or(Error::UndefinedPoint)
            }
        }
    }

    /// Structural validation plus the groundedness check. Returns warnings
    /// for accepted-but-unusual data (e.g. a zero entry in a ratio
    /// numerator).
    pub fn validate(&self, m: usize) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        self.validate_inner(m, &mut warnings)?;
        if !self.needs_coalition() {
            let v = self.eval(&zeros(m), None)?;
            if !v.is_zero() {
                return Err(Error::NotGrounded(format_rational(&v)));
            }
        }
        Ok(warnings)
    }

    fn validate_inner(&self, m: usize, warnings: &mut Vec<String>) -> Result<()> {
        match self {
            ObjectiveSpec::Linear { c } => check_len(c.len(), m),
            ObjectiveSpec::Quadratic { b, q } => {
                check_len(b.len(), m)?;
                if q.rows() != m || q.cols() != m {
                    return Err(Error::DimensionMismatch("quadratic matrix shape".into()));
                }
                if !q.is_symmetric() {
                    return Err(Error::InvalidObjective("quadratic matrix must be symmetric".into()));
                }
                Ok(())
            }
            ObjectiveSpec::Ratio { c, d, d0 } => {
                check_len(c.len(), m)?;
                check_len(d.len(), m)?;
                if c.iter().any(|v| v.is_negative()) || d.iter().any(|v| v.is_negative()) {
                    return Err(Error::InvalidObjective("ratio weights must be nonnegative".into()));
                }
                if !d0.is_positive() {
                    return Err(Error::InvalidObjective("ratio offset must be positive".into()));
                }
                if c.iter().any(|v| v.is_zero()) {
                    warnings.push(
                        "ratio numerator has zero entries; closed-form ratio-game tests \
                         require strictly positive numerators"
                            .to_string(),
                    );
                }
                Ok(())
            }
            ObjectiveSpec::Table { values } => {
                if values.keys().any(|k| k.len() != m) {
                    return Err(Error::DimensionMismatch("table key length".into()));
                }
                match values.get(&zeros(m)) {
                    Some(v) if v.is_zero() => Ok(()),
                    Some(v) => Err(Error::NotGrounded(format_rational(v))),
                    None => Err(Error::NotGrounded("undefined at the origin".into())),
                }
            }
            ObjectiveSpec::Scaled { factor, inner } => {
                if factor.is_negative() {
                    return Err(Error::InvalidObjective("scale factor must be nonnegative".into()));
                }
                inner.validate_inner(m, warnings)
            }
            ObjectiveSpec::Sum { terms } => {
                for t in terms {
                    t.validate_inner(m, warnings)?;
                }
                Ok(())
            }
            ObjectiveSpec::Max { left, right } => {
                left.validate_inner(m, warnings)?;
                right.validate_inner(m, warnings)
            }
            ObjectiveSpec::Precomposed { matrix, inner } => {
                check_len(matrix.cols(), m)?;
                inner.validate_inner(matrix.rows(), warnings)
            }
            ObjectiveSpec::CoalitionDependent { values } => {
                if values.keys().any(|(x, _)| x.len() != m) {
                    return Err(Error::DimensionMismatch("table key length".into()));
                }
                let grounded = values.iter().any(|((x, w), v)| {
                    x.iter().all(|t| t.is_zero()) && w.is_zero() && v.is_zero()
                });
                if !grounded {
                    return Err(Error::NotGrounded("f(0, 0) must be 0".into()));
                }
                Ok(())
            }
        }
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("expected length {expected}, got {got}")))
    }
}

/// Which family of basis points defines the linear relaxation.
#[derive(Debug, Clone)]
pub enum BasisVariant {
    /// Coefficients `f(e_j)`.
    Standard,
    /// Coefficients `b⁻¹ f(b·e_j)` for a positive scale `b`.
    Scaled(Rational),
    /// Coefficients `f(q_j)` over independent generator columns.
    Generator(RatMatrix),
    /// Coefficients `f(e_j, A·e_j)` for player-dependent objectives.
    ConstraintDependent(RatMatrix),
}

impl BasisVariant {
    pub fn tag(&self) -> &'static str {
        match self {
            BasisVariant::Standard => "standard",
            BasisVariant::Scaled(_) => "b-scaled",
            BasisVariant::Generator(_) => "generator",
            BasisVariant::ConstraintDependent(_) => "constraint-dependent",
        }
    }
}

/// Coefficients of the basis-linear relaxation `F`, with the companion
/// pseudo-inverse for the generator variant.
#[derive(Debug, Clone)]
pub struct BasisCoefficients {
    pub coeffs: RatVector,
    pub variant: &'static str,
    pub pseudo_inverse: Option<RatMatrix>,
}

impl BasisCoefficients {
    /// `F(x)` for a point of the ambient space.
    pub fn relaxation_value(&self, x: &[Rational]) -> Rational {
        match &self.pseudo_inverse {
            Some(pinv) => dot(&self.coeffs, &pinv.mul_vec(x)),
            None => dot(&self.coeffs, x),
        }
    }
}

/// Evaluate the relaxation coefficients of `f` for the given variant.
pub fn basis_coefficients(
    f: &ObjectiveSpec,
    variant: &BasisVariant,
    m: usize,
) -> Result<BasisCoefficients> {
    match variant {
        BasisVariant::Standard => {
            let coeffs = (0..m)
                .map(|j| f.eval(&unit(m, j), None))
                .collect::<Result<RatVector>>()?;
            Ok(BasisCoefficients { coeffs, variant: variant.tag(), pseudo_inverse: None })
        }
        BasisVariant::Scaled(b) => {
            if !b.is_positive() {
                return Err(Error::InvalidInstance("rhs scale must be positive".into()));
            }
            let coeffs = (0..m)
                .map(|j| {
                    let mut p = zeros(m);
                    p[j] = b.clone();
                    Ok(f.eval(&p, None)? / b)
                })
                .collect::<Result<RatVector>>()?;
            Ok(BasisCoefficients { coeffs, variant: variant.tag(), pseudo_inverse: None })
        }
        BasisVariant::Generator(q) => {
            if q.rows() != m {
                return Err(Error::DimensionMismatch("generator rows".into()));
            }
            let pinv = left_pseudo_inverse(q)?;
            let coeffs = (0..q.cols())
                .map(|j| f.eval(&q.col(j), None))
                .collect::<Result<RatVector>>()?;
            Ok(BasisCoefficients { coeffs, variant: variant.tag(), pseudo_inverse: Some(pinv) })
        }
        BasisVariant::ConstraintDependent(a) => {
            if a.cols() != m {
                return Err(Error::DimensionMismatch("constraint columns".into()));
            }
            let coeffs = (0..m)
                .map(|j| {
                    let w = Coalition::from_rationals(&a.col(j))?;
                    f.eval(&unit(m, j), Some(&w))
                })
                .collect::<Result<RatVector>>()?;
            Ok(BasisCoefficients { coeffs, variant: variant.tag(), pseudo_inverse: None })
        }
    }
}

/// A witness point where the relaxation comparison fails.
#[derive(Debug, Clone)]
pub struct IsWitness {
    pub point: RatVector,
    pub coalition: Option<Coalition>,
    pub objective_value: Rational,
    pub relaxation_value: Rational,
}

impl IsWitness {
    pub fn describe(&self) -> String {
        format!(
            "x = {}, f = {}, F = {}",
            format_vector(&self.point),
            format_rational(&self.objective_value),
            format_rational(&self.relaxation_value)
        )
    }
}

/// Verdict of an individual-subadditivity (or -superadditivity) check.
#[derive(Debug, Clone)]
pub struct IsReport {
    pub holds: bool,
    pub witness: Option<IsWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IsDirection {
    Subadditive,
    Superadditive,
}

/// `f(x) ≤ F(x)` on every enumerated domain point (all coalitions for the
/// player-dependent variant). On failure the witness carries the point and
/// both values.
pub fn is_individually_subadditive(
    f: &ObjectiveSpec,
    domain: &DomainSpec,
    variant: &BasisVariant,
    cap: u64,
) -> Result<IsReport> {
    is_check(f, domain, variant, cap, IsDirection::Subadditive)
}

/// Dual check: `f(x) ≥ F(x)` everywhere.
pub fn is_individually_superadditive(
    f: &ObjectiveSpec,
    domain: &DomainSpec,
    variant: &BasisVariant,
    cap: u64,
) -> Result<IsReport> {
    is_check(f, domain, variant, cap, IsDirection::Superadditive)
}

fn is_check(
    f: &ObjectiveSpec,
    domain: &DomainSpec,
    variant: &BasisVariant,
    cap: u64,
    direction: IsDirection,
) -> Result<IsReport> {
    let m = domain.dim();
    let coeffs = basis_coefficients(f, variant, m)?;
    let points = domain.enumerate_union(cap)?;

    let coalitions: Vec<Option<Coalition>> = match variant {
        BasisVariant::ConstraintDependent(a) => {
            let n = a.rows();
            if n >= 63 || (1u64 << n) > cap {
                return Err(Error::TooLarge { needed: 1u64 << n.min(62), cap });
            }
            Coalition::all(n).map(Some).collect()
        }
        _ => vec![None],
    };

    for x in &points {
        let relax = coeffs.relaxation_value(x);
        for w in &coalitions {
            let value = f.eval(x, w.as_ref())?;
            let violated = match direction {
                IsDirection::Subadditive => value > relax,
                IsDirection::Superadditive => value < relax,
            };
            if violated {
                return Ok(IsReport {
                    holds: false,
                    witness: Some(IsWitness {
                        point: x.clone(),
                        coalition: w.clone(),
                        objective_value: value,
                        relaxation_value: relax,
                    }),
                });
            }
        }
    }
    Ok(IsReport { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DEFAULT_ENUM_CAP;
    use crate::exact::{rat, rat_int};

    /// Quadratic data for `Σx_i - (x1x2 + x1x3 + x2x4 + x3x4)` (1-indexed).
    pub(crate) fn crossing_pairs_objective() -> ObjectiveSpec {
        let mut q = RatMatrix::zero(4, 4);
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            *q.get_mut(i, j) = rat(-1, 2);
            *q.get_mut(j, i) = rat(-1, 2);
        }
        ObjectiveSpec::quadratic(vec![rat_int(1); 4], q)
    }

    #[test]
    fn quadratic_eval_matches_hand_computation() {
        let f = crossing_pairs_objective();
        let x = vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)];
        assert_eq!(f.eval(&x, None).unwrap(), rat_int(1));
        let x = vec![rat_int(1), rat_int(0), rat_int(0), rat_int(1)];
        assert_eq!(f.eval(&x, None).unwrap(), rat_int(2));
    }

    #[test]
    fn grounded_at_origin() {
        let f = crossing_pairs_objective();
        assert_eq!(f.eval(&zeros(4), None).unwrap(), rat_int(0));
        assert!(f.validate(4).is_ok());
    }

    #[test]
    fn ratio_eval() {
        let f = ObjectiveSpec::ratio(
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(2)],
            rat_int(1),
        );
        let x = vec![rat_int(1), rat_int(1)];
        assert_eq!(f.eval(&x, None).unwrap(), rat(1, 2));
    }

    #[test]
    fn basis_coefficients_two_var_quadratic() {
        // x1 + x2 - 2x1x2: off-diagonal -1 in the symmetric matrix.
        let mut q = RatMatrix::zero(2, 2);
        *q.get_mut(0, 1) = rat_int(-1);
        *q.get_mut(1, 0) = rat_int(-1);
        let f = ObjectiveSpec::quadratic(vec![rat_int(1), rat_int(1)], q);
        let coeffs = basis_coefficients(&f, &BasisVariant::Standard, 2).unwrap();
        assert_eq!(coeffs.coeffs, vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn basis_coefficients_ratio() {
        let c = vec![rat_int(2), rat_int(3)];
        let d = vec![rat_int(1), rat_int(0)];
        let f = ObjectiveSpec::ratio(c, d, rat_int(1));
        let coeffs = basis_coefficients(&f, &BasisVariant::Standard, 2).unwrap();
        assert_eq!(coeffs.coeffs, vec![rat_int(1), rat_int(3)]);
    }

    #[test]
    fn basis_coefficients_linear_is_identity() {
        let c = vec![rat(3, 7), rat_int(-2)];
        let f = ObjectiveSpec::linear(c.clone());
        let coeffs = basis_coefficients(&f, &BasisVariant::Standard, 2).unwrap();
        assert_eq!(coeffs.coeffs, c);
    }

    #[test]
    fn scaled_basis_coefficients() {
        // f(x) = x1² (table over {0,1,2}): scaled coefficients b⁻¹f(b e_1).
        let points: Vec<RatVector> = (0..=2).map(|v| vec![rat_int(v)]).collect();
        let f = ObjectiveSpec::table_from_fn(&points, |x| &x[0] * &x[0]);
        let coeffs = basis_coefficients(&f, &BasisVariant::Scaled(rat_int(2)), 1).unwrap();
        assert_eq!(coeffs.coeffs, vec![rat_int(2)]);
    }

    #[test]
    fn relaxation_extends_objective_on_basis_points() {
        let f = crossing_pairs_objective();
        let coeffs = basis_coefficients(&f, &BasisVariant::Standard, 4).unwrap();
        for j in 0..4 {
            let e = unit(4, j);
            assert_eq!(coeffs.relaxation_value(&e), f.eval(&e, None).unwrap());
        }
    }

    #[test]
    fn positive_cross_term_breaks_subadditivity() {
        let mut q = RatMatrix::zero(2, 2);
        *q.get_mut(0, 1) = rat(1, 2);
        *q.get_mut(1, 0) = rat(1, 2);
        let f = ObjectiveSpec::quadratic(vec![rat_int(1), rat_int(1)], q);
        let report = is_individually_subadditive(
            &f,
            &DomainSpec::Boolean { m: 2 },
            &BasisVariant::Standard,
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert_eq!(w.point, vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn ratio_is_individually_subadditive_on_lattice() {
        let f = ObjectiveSpec::ratio(
            vec![rat_int(3), rat_int(1), rat_int(2)],
            vec![rat_int(1), rat_int(4), rat_int(0)],
            rat(1, 2),
        );
        let report = is_individually_subadditive(
            &f,
            &DomainSpec::Boolean { m: 3 },
            &BasisVariant::Standard,
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert!(report.holds);
    }

    #[test]
    fn polynomial_grid_sample_is_subadditive() {
        // 3(x1+x2) - x1x2(3 - 2x1x2), sampled on a grid inside the unit
        // box that includes the origin and both units.
        let mut grid = Vec::new();
        for a in 0..=4 {
            for b in 0..=4 {
                grid.push(vec![rat(a, 4), rat(b, 4)]);
            }
        }
        let f = ObjectiveSpec::table_from_fn(&grid, |x| {
            let (x1, x2) = (&x[0], &x[1]);
            let prod = x1 * x2;
            rat_int(3) * (x1 + x2) - &prod * (rat_int(3) - rat_int(2) * &prod)
        });
        let report = is_individually_subadditive(
            &f,
            &DomainSpec::explicit(grid),
            &BasisVariant::Standard,
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert!(report.holds);
    }

    #[test]
    fn table_missing_point_is_undefined() {
        let f = ObjectiveSpec::table_from_fn(&[zeros(2)], |_| rat_int(0));
        assert_eq!(f.eval(&unit(2, 0), None), Err(Error::UndefinedPoint));
    }

    #[test]
    fn ungrounded_table_is_rejected() {
        let f = ObjectiveSpec::table_from_fn(&[zeros(2)], |_| rat_int(1));
        assert!(matches!(f.validate(2), Err(Error::NotGrounded(_))));
    }

    #[test]
    fn max_combinator_takes_larger_branch() {
        let f = ObjectiveSpec::Max {
            left: Box::new(ObjectiveSpec::linear(vec![rat_int(1), rat_int(0)])),
            right: Box::new(ObjectiveSpec::linear(vec![rat_int(0), rat_int(2)])),
        };
        assert_eq!(f.eval(&vec![rat_int(1), rat_int(1)], None).unwrap(), rat_int(2));
    }

    #[test]
    fn conic_combinations_evaluate_and_stay_subadditive() {
        let ratio = ObjectiveSpec::ratio(
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(1), rat_int(0)],
            rat_int(1),
        );
        let linear = ObjectiveSpec::linear(vec![rat_int(1), rat_int(1)]);
        let f = ObjectiveSpec::Sum {
            terms: vec![
                ObjectiveSpec::Scaled { factor: rat(3, 2), inner: Box::new(ratio) },
                linear,
            ],
        };
        let x = vec![rat_int(1), rat_int(1)];
        // 3/2 * 3/2 + 2 = 17/4.
        assert_eq!(f.eval(&x, None).unwrap(), rat(17, 4));
        let report = is_individually_subadditive(
            &f,
            &DomainSpec::Boolean { m: 2 },
            &BasisVariant::Standard,
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert!(report.holds);
        // Negative scale factors are rejected.
        let bad = ObjectiveSpec::Scaled {
            factor: rat_int(-1),
            inner: Box::new(ObjectiveSpec::linear(vec![rat_int(1), rat_int(1)])),
        };
        assert!(bad.validate(2).is_err());
    }

    #[test]
    fn generator_variant_coefficients() {
        // Generators (1,0) and (1,1); f linear c = (1,2) gives f(q1)=1,
        // f(q2)=3, and F must reproduce f on the generators.
        let q = RatMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let f = ObjectiveSpec::linear(vec![rat_int(1), rat_int(2)]);
        let coeffs = basis_coefficients(&f, &BasisVariant::Generator(q.clone()), 2).unwrap();
        assert_eq!(coeffs.coeffs, vec![rat_int(1), rat_int(3)]);
        for j in 0..2 {
            let col = q.col(j);
            assert_eq!(coeffs.relaxation_value(&col), f.eval(&col, None).unwrap());
        }
    }
}
