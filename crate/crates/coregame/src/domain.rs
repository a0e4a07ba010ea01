//! Feasible-solution domains and their structural assumptions.
//!
//! A domain is a finite subset of the nonnegative orthant. The standard
//! variants are Boolean lattices and their filtered forms; the generator
//! variant wraps a base domain with an explicit set of independent cone
//! generators; the coalition-indexed variant assigns a finite domain to
//! each coalition extensionally.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    format_vector, left_pseudo_inverse, rat_int, unit, zeros, RatMatrix, RatVector, Rational,
};
use crate::game::Coalition;

/// Default cap on the number of enumerated points.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainSpec {
    /// Full Boolean lattice of the given dimension.
    Boolean { m: usize },
    /// Boolean points with at most `k` ones.
    BooleanCardinality { m: usize, k: usize },
    /// Boolean points satisfying `constraint · x ≤ limits` (entrywise
    /// nonnegative data; every unit point must stay feasible).
    BooleanKnapsack {
        m: usize,
        constraint: RatMatrix,
        limits: RatVector,
    },
    /// An explicit finite list of nonnegative points.
    ExplicitFinite { points: Vec<RatVector> },
    /// A base domain together with independent generator columns spanning
    /// its conic hull.
    GeneratorCone {
        base: Box<DomainSpec>,
        generators: RatMatrix,
    },
    /// One finite domain per coalition, given extensionally.
    CoalitionIndexed {
        m: usize,
        family: BTreeMap<Coalition, DomainSpec>,
    },
}

impl DomainSpec {
    pub fn explicit(points: Vec<RatVector>) -> DomainSpec {
        DomainSpec::ExplicitFinite { points }
    }

    /// Ambient dimension of the domain's points.
    pub fn dim(&self) -> usize {
        match self {
            DomainSpec::Boolean { m }
            | DomainSpec::BooleanCardinality { m, .. }
            | DomainSpec::BooleanKnapsack { m, .. }
            | DomainSpec::CoalitionIndexed { m, .. } => *m,
            DomainSpec::ExplicitFinite { points } => points.first().map_or(0, |p| p.len()),
            DomainSpec::GeneratorCone { base, .. } => base.dim(),
        }
    }

    /// Generator columns: explicit ones for the cone variant, units
    /// otherwise.
    pub fn generator_matrix(&self) -> RatMatrix {
        match self {
            DomainSpec::GeneratorCone { generators, .. } => generators.clone(),
            other => RatMatrix::identity(other.dim()),
        }
    }

    pub fn is_coalition_indexed(&self) -> bool {
        matches!(self, DomainSpec::CoalitionIndexed { .. })
    }

    /// Exhaustive duplicate-free list of the domain's points.
    ///
    /// Coalition-indexed domains have no single point set; use
    /// [`DomainSpec::enumerate_for`] or [`DomainSpec::enumerate_union`].
    pub fn enumerate(&self, cap: u64) -> Result<Vec<RatVector>> {
        match self {
            DomainSpec::Boolean { m } => {
                check_lattice_size(*m, cap)?;
                Ok(boolean_lattice(*m))
            }
            DomainSpec::BooleanCardinality { m, k } => {
                check_lattice_size(*m, cap)?;
                Ok(boolean_lattice(*m)
                    .into_iter()
                    .filter(|x| count_ones(x) <= *k)
                    .collect())
            }
            DomainSpec::BooleanKnapsack { m, constraint, limits } => {
                check_lattice_size(*m, cap)?;
                Ok(boolean_lattice(*m)
                    .into_iter()
                    .filter(|x| {
                        constraint
                            .mul_vec(x)
                            .iter()
                            .zip(limits)
                            .all(|(lhs, cap)| lhs <= cap)
                    })
                    .collect())
            }
            DomainSpec::ExplicitFinite { points } => {
                if points.len() as u64 > cap {
                    return Err(Error::TooLarge { needed: points.len() as u64, cap });
                }
                let mut seen = std::collections::BTreeSet::new();
                Ok(points
                    .iter()
                    .filter(|p| seen.insert((*p).clone()))
                    .cloned()
                    .collect())
            }
            DomainSpec::GeneratorCone { base, .. } => base.enumerate(cap),
            DomainSpec::CoalitionIndexed { .. } => Err(Error::NeedsCoalition),
        }
    }

    /// Points available to the given coalition. Identical to `enumerate`
    /// except for coalition-indexed domains, which look up their family.
    pub fn enumerate_for(&self, w: &Coalition, cap: u64) -> Result<Vec<RatVector>> {
        match self {
            DomainSpec::CoalitionIndexed { family, .. } => family
                .get(w)
                .ok_or_else(|| Error::MissingCoalition(w.to_string()))?
                .enumerate(cap),
            other => other.enumerate(cap),
        }
    }

    /// Union of all points across the family (the whole point set for
    /// non-indexed domains). Used by objective-side precondition checks.
    pub fn enumerate_union(&self, cap: u64) -> Result<Vec<RatVector>> {
        match self {
            DomainSpec::CoalitionIndexed { family, .. } => {
                let mut seen = std::collections::BTreeSet::new();
                let mut out = Vec::new();
                for spec in family.values() {
                    for p in spec.enumerate(cap)? {
                        if seen.insert(p.clone()) {
                            out.push(p);
                        }
                    }
                    if out.len() as u64 > cap {
                        return Err(Error::TooLarge { needed: out.len() as u64, cap });
                    }
                }
                Ok(out)
            }
            other => other.enumerate(cap),
        }
    }

    /// Membership predicate, consistent with enumeration.
    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            DomainSpec::Boolean { .. } => is_binary_point(x),
            DomainSpec::BooleanCardinality { k, .. } => is_binary_point(x) && count_ones(x) <= *k,
            DomainSpec::BooleanKnapsack { constraint, limits, .. } => {
                is_binary_point(x)
                    && constraint
                        .mul_vec(x)
                        .iter()
                        .zip(limits)
                        .all(|(lhs, cap)| lhs <= cap)
            }
            DomainSpec::ExplicitFinite { points } => points.iter().any(|p| p == x),
            DomainSpec::GeneratorCone { base, .. } => base.contains(x),
            DomainSpec::CoalitionIndexed { family, .. } => {
                family.values().any(|spec| spec.contains(x))
            }
        }
    }
}

fn check_lattice_size(m: usize, cap: u64) -> Result<()> {
    if m >= 63 || (1u64 << m) > cap {
        return Err(Error::TooLarge { needed: 1u64.checked_shl(m as u32).unwrap_or(u64::MAX), cap });
    }
    Ok(())
}

fn boolean_lattice(m: usize) -> Vec<RatVector> {
    (0..(1u64 << m))
        .map(|mask| {
            (0..m)
                .map(|j| if mask >> j & 1 == 1 { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

fn is_binary_point(x: &[Rational]) -> bool {
    x.iter().all(|v| v.is_zero() || v.is_one())
}

fn count_ones(x: &[Rational]) -> usize {
    x.iter().filter(|v| !v.is_zero()).count()
}

/// A single structural violation found by [`check_assumptions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Constraint matrix has a non-binary entry.
    NonBinaryConstraint { row: usize, col: usize },
    /// Constraint column `col` is all zeros.
    ZeroColumn { col: usize },
    /// Constraint image of generator `j` is not a nonzero binary vector.
    GeneratorImageInvalid { j: usize },
    /// The origin is missing from the domain.
    MissingOrigin,
    /// Scaled basis point `b·e_j` is missing from the domain.
    MissingBasisPoint { j: usize },
    /// A domain point has a negative component.
    NegativePoint { point: String },
    /// A knapsack unit point violates its own constraint.
    KnapsackUnitInfeasible { i: usize },
    /// Knapsack data must be entrywise nonnegative.
    KnapsackNegativeData,
    /// Generator columns are linearly dependent.
    GeneratorsDependent,
    /// Generator column `j` is not a point of the base domain.
    GeneratorNotInBase { j: usize },
    /// Base point is not a nonnegative combination of the generators.
    GeneratorReconstructionFailed { point: String },
    /// Coalition-indexed family misses the origin for some coalition.
    FamilyMissingOrigin { coalition: String },
    /// Coalition-indexed family misses `e_i` in the domain of `e_i`.
    FamilyMissingUnit { i: usize },
    /// Dimension disagreement between the matrix and the domain.
    DimensionMismatch { expected: usize, got: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonBinaryConstraint { row, col } => {
                write!(f, "constraint entry ({row},{col}) is not 0/1")
            }
            Violation::ZeroColumn { col } => write!(f, "constraint column {col} is zero"),
            Violation::GeneratorImageInvalid { j } => {
                write!(f, "A·q_{j} is not a nonzero binary vector")
            }
            Violation::MissingOrigin => write!(f, "domain does not contain the origin"),
            Violation::MissingBasisPoint { j } => {
                write!(f, "domain does not contain the basis point for coordinate {j}")
            }
            Violation::NegativePoint { point } => {
                write!(f, "domain point {point} has a negative component")
            }
            Violation::KnapsackUnitInfeasible { i } => {
                write!(f, "unit point e_{i} violates the knapsack constraint")
            }
            Violation::KnapsackNegativeData => write!(f, "knapsack data must be nonnegative"),
            Violation::GeneratorsDependent => write!(f, "generator columns are dependent"),
            Violation::GeneratorNotInBase { j } => {
                write!(f, "generator column {j} is not a point of the base domain")
            }
            Violation::GeneratorReconstructionFailed { point } => {
                write!(f, "point {point} is not a nonnegative generator combination")
            }
            Violation::FamilyMissingOrigin { coalition } => {
                write!(f, "family domain for coalition {coalition} misses the origin")
            }
            Violation::FamilyMissingUnit { i } => {
                write!(f, "family domain for unit coalition {i} misses e_{i}")
            }
            Violation::DimensionMismatch { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
        }
    }
}

/// Outcome of the structural assumption check.
#[derive(Debug, Clone, Default)]
pub struct AssumptionReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl AssumptionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Verify the structural assumptions tying a domain to a binary constraint
/// matrix: binary entries, no zero column, basis membership scaled by
/// `rhs_scale` (or generator validity for the cone variant), nonnegative
/// points, and the pointwise conditions of coalition-indexed families.
pub fn check_assumptions(
    domain: &DomainSpec,
    constraint: &RatMatrix,
    rhs_scale: &Rational,
) -> AssumptionReport {
    let mut report = AssumptionReport::default();
    let m = domain.dim();

    if constraint.cols() != m {
        report.violations.push(Violation::DimensionMismatch {
            expected: m,
            got: constraint.cols(),
        });
        return report;
    }

    for i in 0..constraint.rows() {
        for j in 0..constraint.cols() {
            let v = constraint.get(i, j);
            if !v.is_zero() && !v.is_one() {
                report.violations.push(Violation::NonBinaryConstraint { row: i, col: j });
            }
        }
    }

    match domain {
        DomainSpec::GeneratorCone { base, generators } => {
            check_generators(base, generators, constraint, &mut report);
        }
        _ => {
            for j in 0..constraint.cols() {
                if constraint.col(j).iter().all(|v| v.is_zero()) {
                    report.violations.push(Violation::ZeroColumn { col: j });
                }
            }
            check_basis_membership(domain, rhs_scale, &mut report);
        }
    }

    check_variant_shape(domain, &mut report);
    report
}

fn check_basis_membership(domain: &DomainSpec, rhs_scale: &Rational, report: &mut AssumptionReport) {
    let m = domain.dim();
    match domain {
        // Boolean families contain the origin and every unit by
        // construction; knapsack unit feasibility is checked separately.
        DomainSpec::Boolean { .. } | DomainSpec::BooleanCardinality { .. } => {}
        DomainSpec::BooleanKnapsack { constraint, limits, .. } => {
            for i in 0..m {
                let lhs = constraint.mul_vec(&unit(m, i));
                if lhs.iter().zip(limits).any(|(v, cap)| v > cap) {
                    report.violations.push(Violation::KnapsackUnitInfeasible { i });
                }
            }
        }
        DomainSpec::ExplicitFinite { points } => {
            if !points.iter().any(|p| p.iter().all(|v| v.is_zero())) {
                report.violations.push(Violation::MissingOrigin);
            }
            for j in 0..m {
                let mut basis = zeros(m);
                basis[j] = rhs_scale.clone();
                if !points.contains(&basis) {
                    report.violations.push(Violation::MissingBasisPoint { j });
                }
            }
        }
        DomainSpec::CoalitionIndexed { family, .. } => {
            // Validated against the stronger pointwise reading: the origin
            // belongs to every listed coalition domain and e_i to the
            // domain of the unit coalition i.
            report.notes.push(
                "coalition-indexed domains are validated with the origin required in \
                 every coalition's domain, the stronger of the two published conditions"
                    .to_string(),
            );
            let origin = zeros(m);
            for (w, spec) in family {
                if !spec.contains(&origin) {
                    report
                        .violations
                        .push(Violation::FamilyMissingOrigin { coalition: w.to_string() });
                }
            }
            if let Some((w0, _)) = family.iter().next() {
                let n = w0.len();
                for i in 0..n.min(m) {
                    let wi = Coalition::unit(n, i);
                    match family.get(&wi) {
                        Some(spec) if spec.contains(&unit(m, i)) => {}
                        _ => report.violations.push(Violation::FamilyMissingUnit { i }),
                    }
                }
            }
        }
        DomainSpec::GeneratorCone { .. } => unreachable!("handled by caller"),
    }
}

fn check_generators(
    base: &DomainSpec,
    generators: &RatMatrix,
    constraint: &RatMatrix,
    report: &mut AssumptionReport,
) {
    let pinv = match left_pseudo_inverse(generators) {
        Ok(p) => p,
        Err(_) => {
            report.violations.push(Violation::GeneratorsDependent);
            return;
        }
    };

    for j in 0..generators.cols() {
        let q_j = generators.col(j);
        if !base.contains(&q_j) {
            report.violations.push(Violation::GeneratorNotInBase { j });
        }
        let image = constraint.mul_vec(&q_j);
        let binary = image.iter().all(|v| v.is_zero() || v.is_one());
        if !binary || image.iter().all(|v| v.is_zero()) {
            report.violations.push(Violation::GeneratorImageInvalid { j });
        }
    }

    if let Ok(points) = base.enumerate(DEFAULT_ENUM_CAP) {
        for x in &points {
            let coeffs = pinv.mul_vec(x);
            let rebuilt = generators.mul_vec(&coeffs);
            if rebuilt != *x || coeffs.iter().any(|c| c.is_negative()) {
                report.violations.push(Violation::GeneratorReconstructionFailed {
                    point: format_vector(x),
                });
            }
        }
    }
}

fn check_variant_shape(domain: &DomainSpec, report: &mut AssumptionReport) {
    match domain {
        DomainSpec::BooleanKnapsack { constraint, limits, .. } => {
            let nonneg = (0..constraint.rows())
                .all(|i| constraint.row(i).iter().all(|v| !v.is_negative()))
                && limits.iter().all(|v| !v.is_negative());
            if !nonneg {
                report.violations.push(Violation::KnapsackNegativeData);
            }
        }
        DomainSpec::ExplicitFinite { points } => {
            for p in points {
                if p.iter().any(|v| v.is_negative()) {
                    report
                        .violations
                        .push(Violation::NegativePoint { point: format_vector(p) });
                }
            }
        }
        DomainSpec::GeneratorCone { base, .. } => check_variant_shape(base, report),
        DomainSpec::CoalitionIndexed { family, .. } => {
            for spec in family.values() {
                check_variant_shape(spec, report);
            }
        }
        _ => {}
    }
}

/// Convenience constructor for `{0, e_1, ..., e_m}`-style explicit domains
/// plus arbitrary extra points; used a lot in tests.
pub fn explicit_with_basis(m: usize, extra: Vec<RatVector>) -> DomainSpec {
    let mut points = vec![zeros(m)];
    for j in 0..m {
        points.push(unit(m, j));
    }
    points.extend(extra);
    DomainSpec::explicit(points)
}

/// The scaled lattice `{0, 1, ..., top}^m` as an explicit domain.
pub fn integer_box(m: usize, top: i64) -> DomainSpec {
    let mut points: Vec<RatVector> = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for p in &points {
            for v in 0..=top {
                let mut q = p.clone();
                q.push(rat_int(v));
                next.push(q);
            }
        }
        points = next;
    }
    DomainSpec::explicit(points)
}
