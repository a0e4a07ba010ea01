//! Game instances and their characteristic functions.
//!
//! A game is induced by a parametric program: each coalition `w` restricts
//! the constraint right-hand side to `b·w`, and the characteristic value is
//! the exact optimum of the objective over the feasible domain points. The
//! anchor value is the LP optimum of the basis-linear relaxation over the
//! cone of the domain.

use num::{One, Signed, Zero};

use crate::domain::{check_assumptions, DomainSpec, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::exact::{vec_scale, RatMatrix, RatVector, Rational};
use crate::lp::{self, LpProblem, LpSolution, LpStatus, RowSense, Sense};
use crate::objective::{
    basis_coefficients, is_individually_subadditive, is_individually_superadditive,
    BasisCoefficients, BasisVariant, IsReport, ObjectiveSpec,
};

/// A sub-coalition of the `n` players, as a binary vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition {
    bits: Vec<bool>,
}

impl Coalition {
    pub fn new(bits: Vec<bool>) -> Self {
        Coalition { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Coalition { bits: vec![false; n] }
    }

    pub fn ones(n: usize) -> Self {
        Coalition { bits: vec![true; n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut bits = vec![false; n];
        bits[i] = true;
        Coalition { bits }
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        Coalition { bits: (0..n).map(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn from_indices(n: usize, idx: &[usize]) -> Self {
        let mut bits = vec![false; n];
        for &i in idx {
            bits[i] = true;
        }
        Coalition { bits }
    }

    /// Interpret a 0/1 rational vector as a coalition.
    pub fn from_rationals(v: &[Rational]) -> Result<Self> {
        let mut bits = Vec::with_capacity(v.len());
        for x in v {
            if x.is_zero() {
                bits.push(false);
            } else if x.is_one() {
                bits.push(true);
            } else {
                return Err(Error::Parse("coalition vector entries must be 0 or 1".into()));
            }
        }
        Ok(Coalition { bits })
    }

    /// Parse a bit string such as `"1010"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse(format!("bad coalition bit {ch:?}"))),
            }
        }
        Ok(Coalition { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn union(&self, other: &Coalition) -> Coalition {
        Coalition {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Coalition) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !(*a && *b))
    }

    /// Componentwise ≤.
    pub fn is_subset_of(&self, other: &Coalition) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }

    pub fn as_rationals(&self) -> RatVector {
        self.bits
            .iter()
            .map(|&b| if b { Rational::one() } else { Rational::zero() })
            .collect()
    }

    /// All `2^n` coalitions, zero first.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        assert!(n < 63, "coalition space too large to iterate");
        (0u64..(1 << n)).map(move |mask| Coalition::from_mask(n, mask))
    }

    /// All nonzero coalitions.
    pub fn all_nonzero(n: usize) -> impl Iterator<Item = Coalition> {
        Coalition::all(n).skip(1)
    }
}

impl std::fmt::Display for Coalition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Constraint sense of the parametric program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameSense {
    /// `Ax ≤ b·w`, maximize (revenue game).
    Packing,
    /// `Ax ≥ b·w`, minimize (cost game).
    Covering,
    /// `Ax = b·w`, maximize (revenue game).
    Partition,
}

impl GameSense {
    pub fn row_sense(self) -> RowSense {
        match self {
            GameSense::Packing => RowSense::Le,
            GameSense::Covering => RowSense::Ge,
            GameSense::Partition => RowSense::Eq,
        }
    }

    pub fn direction(self) -> Sense {
        match self {
            GameSense::Packing | GameSense::Partition => Sense::Max,
            GameSense::Covering => Sense::Min,
        }
    }

    pub fn is_revenue(self) -> bool {
        self.direction() == Sense::Max
    }

    pub fn name(self) -> &'static str {
        match self {
            GameSense::Packing => "packing",
            GameSense::Covering => "covering",
            GameSense::Partition => "partition",
        }
    }
}

/// A validated game instance.
#[derive(Debug, Clone)]
pub struct GameInstance {
    pub constraint: RatMatrix,
    pub sense: GameSense,
    pub domain: DomainSpec,
    pub objective: ObjectiveSpec,
    pub rhs_scale: Rational,
    pub enum_cap: u64,
}

impl GameInstance {
    pub fn new(
        constraint: RatMatrix,
        sense: GameSense,
        domain: DomainSpec,
        objective: ObjectiveSpec,
    ) -> Result<Self> {
        GameInstance::with_scale(constraint, sense, domain, objective, Rational::one())
    }

    pub fn with_scale(
        constraint: RatMatrix,
        sense: GameSense,
        domain: DomainSpec,
        objective: ObjectiveSpec,
        rhs_scale: Rational,
    ) -> Result<Self> {
        let g = GameInstance {
            constraint,
            sense,
            domain,
            objective,
            rhs_scale,
            enum_cap: DEFAULT_ENUM_CAP,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn players(&self) -> usize {
        self.constraint.rows()
    }

    pub fn items(&self) -> usize {
        self.constraint.cols()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rhs_scale.is_positive() {
            return Err(Error::InvalidInstance("rhs scale must be positive".into()));
        }
        let report = check_assumptions(&self.domain, &self.constraint, &self.rhs_scale);
        if !report.ok() {
            return Err(Error::AssumptionViolated(report.summary()));
        }
        self.objective.validate(self.items())?;
        // Variant compatibility.
        let generator = matches!(self.domain, DomainSpec::GeneratorCone { .. });
        let scaled = !self.rhs_scale.is_one();
        let player_dependent = self.objective.needs_coalition();
        if (generator && scaled) || (generator && player_dependent) || (scaled && player_dependent)
        {
            return Err(Error::UnsupportedVariant(
                "generator, scaled and player-dependent features cannot be combined".into(),
            ));
        }
        Ok(())
    }

    /// The relaxation variant this instance requires.
    pub fn basis_variant(&self) -> BasisVariant {
        if let DomainSpec::GeneratorCone { generators, .. } = &self.domain {
            BasisVariant::Generator(generators.clone())
        } else if self.objective.needs_coalition() {
            BasisVariant::ConstraintDependent(self.constraint.clone())
        } else if !self.rhs_scale.is_one() {
            BasisVariant::Scaled(self.rhs_scale.clone())
        } else {
            BasisVariant::Standard
        }
    }

    pub fn basis_coefficients(&self) -> Result<BasisCoefficients> {
        basis_coefficients(&self.objective, &self.basis_variant(), self.items())
    }

    /// The objective-side precondition matching the constraint sense:
    /// individual subadditivity for revenue games, superadditivity for
    /// cost games.
    pub fn precondition_check(&self) -> Result<IsReport> {
        let variant = self.basis_variant();
        if self.sense.is_revenue() {
            is_individually_subadditive(&self.objective, &self.domain, &variant, self.enum_cap)
        } else {
            is_individually_superadditive(&self.objective, &self.domain, &variant, self.enum_cap)
        }
    }

    fn scaled_rhs(&self, w: &Coalition) -> RatVector {
        vec_scale(&w.as_rationals(), &self.rhs_scale)
    }

    fn feasible_points(&self, w: &Coalition) -> Result<Vec<RatVector>> {
        let rhs = self.scaled_rhs(w);
        let points = self.domain.enumerate_for(w, self.enum_cap)?;
        Ok(points
            .into_iter()
            .filter(|x| {
                let ax = self.constraint.mul_vec(x);
                ax.iter().zip(&rhs).all(|(lhs, r)| match self.sense {
                    GameSense::Packing => lhs <= r,
                    GameSense::Covering => lhs >= r,
                    GameSense::Partition => lhs == r,
                })
            })
            .collect())
    }
}

/// Characteristic value `ν(w)`: the exact optimum of the objective over
/// the coalition's feasible domain points.
pub fn nu(g: &GameInstance, w: &Coalition) -> Result<Rational> {
    if w.len() != g.players() {
        return Err(Error::DimensionMismatch("coalition length".into()));
    }
    let feasible = g.feasible_points(w)?;
    let mut best: Option<Rational> = None;
    for x in &feasible {
        let v = g.objective.eval(x, Some(w))?;
        best = Some(match best {
            None => v,
            Some(b) => {
                if g.sense.is_revenue() {
                    b.max(v)
                } else {
                    b.min(v)
                }
            }
        });
    }
    best.ok_or_else(|| Error::InfeasibleSubprogram(w.to_string()))
}

/// The relaxation LP for coalition `w`: objective coefficients from the
/// basis variant, constraint rows from the instance, right-hand side
/// `b·w`. For generator domains the reduced program over cone weights is
/// built, with constraint matrix `A·Q`.
pub fn anchor_lp(g: &GameInstance, w: &Coalition) -> Result<LpProblem> {
    let coeffs = g.basis_coefficients()?;
    let rhs = g.scaled_rhs(w);
    let row_sense = vec![g.sense.row_sense(); g.players()];
    let matrix = match &g.domain {
        DomainSpec::GeneratorCone { generators, .. } => g.constraint.matmul(generators),
        _ => g.constraint.clone(),
    };
    LpProblem::nonneg(g.sense.direction(), coeffs.coeffs, matrix, row_sense, rhs)
}

/// Solve the relaxation; any non-optimal status is surfaced as an error.
pub fn anchor_solve(g: &GameInstance, w: &Coalition) -> Result<LpSolution> {
    let problem = anchor_lp(g, w)?;
    let sol = lp::solve(&problem)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol),
        LpStatus::Infeasible => Err(Error::RelaxationNotOptimal(format!(
            "relaxation infeasible at w = {w}"
        ))),
        LpStatus::Unbounded => Err(Error::RelaxationNotOptimal(format!(
            "relaxation unbounded at w = {w}"
        ))),
    }
}

pub fn anchor_value(g: &GameInstance, w: &Coalition) -> Result<Rational> {
    Ok(anchor_solve(g, w)?.value)
}

/// Allocation candidate from a solved relaxation. For the scaled variant
/// the solver's dual is in pre-substitution units and is rescaled by `b`.
pub fn core_candidate(g: &GameInstance, sol: &LpSolution) -> RatVector {
    if g.rhs_scale.is_one() {
        sol.dual.clone()
    } else {
        vec_scale(&sol.dual, &g.rhs_scale)
    }
}

/// Dual feasibility plus exact optimality of an allocation for the grand
/// relaxation.
pub fn is_anchor_dual_optimal(g: &GameInstance, y: &[Rational]) -> Result<bool> {
    let problem = anchor_lp(g, &Coalition::ones(g.players()))?;
    let z = if g.rhs_scale.is_one() {
        y.to_vec()
    } else {
        y.iter().map(|v| v / &g.rhs_scale).collect()
    };
    lp::is_dual_optimal(&problem, &z)
}

/// Domain points where the objective meets its relaxation exactly.
pub fn extension_points(g: &GameInstance) -> Result<Vec<RatVector>> {
    if g.objective.needs_coalition() {
        return Err(Error::UnsupportedVariant(
            "extension points are undefined for player-dependent objectives".into(),
        ));
    }
    let coeffs = g.basis_coefficients()?;
    let points = g.domain.enumerate_union(g.enum_cap)?;
    let mut out = Vec::new();
    for x in points {
        if g.objective.eval(&x, None)? == coeffs.relaxation_value(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// The four bracketing values at one coalition, ordered
/// `anchor ≥ upper ≥ original ≥ lower`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueChain {
    pub anchor: Rational,
    pub upper: Rational,
    pub original: Rational,
    pub lower: Rational,
}

/// Compute the anchor, upper, original and lower game values at `w` and
/// assert their ordering. Supported for packing instances.
pub fn value_chain(g: &GameInstance, w: &Coalition) -> Result<ValueChain> {
    if g.sense != GameSense::Packing {
        return Err(Error::UnsupportedVariant(
            "the value chain is defined for packing games".into(),
        ));
    }
    if g.domain.is_coalition_indexed() {
        return Err(Error::UnsupportedVariant(
            "the value chain needs a coalition-independent domain".into(),
        ));
    }
    let coeffs = g.basis_coefficients()?;
    let anchor = anchor_value(g, w)?;
    let feasible = g.feasible_points(w)?;

    let mut upper = Rational::zero();
    let mut original = Rational::zero();
    let mut lower = Rational::zero();
    let mut first = true;
    for x in &feasible {
        let relax = coeffs.relaxation_value(x);
        let value = g.objective.eval(x, None)?;
        if first {
            upper = relax.clone();
            original = value.clone();
            lower = if value == relax { relax.clone() } else { lower };
            first = false;
        } else {
            if relax > upper {
                upper = relax.clone();
            }
            if value > original {
                original = value.clone();
            }
        }
        if value == relax && relax > lower {
            lower = relax;
        }
    }
    if first {
        return Err(Error::InfeasibleSubprogram(w.to_string()));
    }

    let chain = ValueChain { anchor, upper, original, lower };
    if !(chain.anchor >= chain.upper && chain.upper >= chain.original && chain.original >= chain.lower)
    {
        return Err(Error::Certificate(format!(
            "value chain out of order: {:?} (is the objective individually subadditive?)",
            chain
        )));
    }
    Ok(chain)
}
