//! Application families: instance generators and closed-form core tests.
//!
//! Every closed form here is cross-checkable against the general
//! relaxation path and the brute-force oracle; the integration tests pin
//! that three-way agreement.

pub mod graph;
pub mod sat;

use num::{One, Signed, Zero};

use crate::analysis::CoreReport;
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::exact::{
    format_rational, positive_part, rat_int, vec_sum, zeros, RatMatrix, RatVector, Rational,
};
use crate::game::{anchor_solve, core_candidate, nu, Coalition, GameInstance, GameSense};
use crate::objective::ObjectiveSpec;

pub use graph::{fold_matchings, max_weight_matching, maximal_cliques, WeightedGraph};
pub use sat::{
    format_sat_text, max_conflict_matching, parse_sat_text, sat_reduction, verify_reduction,
    ConflictStructure, ReductionReport, SatInstance,
};

/// Asset-selection game: pick assets to maximize return minus scaled
/// covariance risk. Entrywise nonnegative covariance keeps the objective
/// individually subadditive.
pub fn portfolio_game(
    mean: &[Rational],
    covariance: &RatMatrix,
    risk_aversion: &Rational,
) -> Result<GameInstance> {
    let n = mean.len();
    if covariance.rows() != n || covariance.cols() != n {
        return Err(Error::DimensionMismatch("covariance shape".into()));
    }
    if !covariance.is_symmetric() {
        return Err(Error::InvalidInstance("covariance must be symmetric".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if covariance.get(i, j).is_negative() {
                return Err(Error::InvalidInstance(
                    "negatively correlated assets are outside this family".into(),
                ));
            }
        }
    }
    if !risk_aversion.is_positive() {
        return Err(Error::InvalidInstance("risk aversion must be positive".into()));
    }
    let half_risk = risk_aversion / rat_int(2);
    let mut q = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *q.get_mut(i, j) = -(&half_risk * covariance.get(i, j));
        }
    }
    GameInstance::new(
        RatMatrix::identity(n),
        GameSense::Packing,
        DomainSpec::Boolean { m: n },
        ObjectiveSpec::quadratic(mean.to_vec(), q),
    )
}

/// Closed-form core test for the portfolio family: positive risk-adjusted
/// returns must be pairwise uncorrelated; the unique member is the
/// positive part of the adjusted return vector.
pub fn portfolio_core_closed_form(
    mean: &[Rational],
    covariance: &RatMatrix,
    risk_aversion: &Rational,
) -> Result<CoreReport> {
    let g = portfolio_game(mean, covariance, risk_aversion)?;
    let n = mean.len();
    let half_risk = risk_aversion / rat_int(2);
    let adjusted: RatVector = (0..n)
        .map(|i| &mean[i] - &half_risk * covariance.get(i, i))
        .collect();
    let positive: Vec<usize> = (0..n).filter(|&i| adjusted[i].is_positive()).collect();
    let mut nonempty = true;
    'outer: for (a, &i) in positive.iter().enumerate() {
        for &j in positive.iter().skip(a + 1) {
            if !covariance.get(i, j).is_zero() {
                nonempty = false;
                break 'outer;
            }
        }
    }
    let member = positive_part(&adjusted);
    let anchor_grand = vec_sum(&member);
    let nu_grand = nu(&g, &Coalition::ones(n))?;
    let gamma_min = nu_grand
        .is_positive()
        .then(|| &anchor_grand / &nu_grand);
    Ok(CoreReport {
        nonempty,
        nu_grand,
        anchor_grand,
        member: nonempty.then_some(member),
        gamma_min,
        theorem_used: "portfolio-closed-form".to_string(),
        notes: vec![],
    })
}

/// Cut-capacity game on a weighted graph: `f(x) = (W1)ᵀx - xᵀWx` counts
/// the weight of edges separated by the vertex split `x`.
pub fn maxcut_game(weights: &RatMatrix) -> Result<GameInstance> {
    let n = weights.rows();
    validate_cut_weights(weights)?;
    let ones = vec![Rational::one(); n];
    let b = weights.mul_vec(&ones);
    let mut q = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *q.get_mut(i, j) = -weights.get(i, j).clone();
        }
    }
    GameInstance::new(
        RatMatrix::identity(n),
        GameSense::Packing,
        DomainSpec::Boolean { m: n },
        ObjectiveSpec::quadratic(b, q),
    )
}

fn validate_cut_weights(weights: &RatMatrix) -> Result<()> {
    let n = weights.rows();
    if weights.cols() != n || !weights.is_symmetric() {
        return Err(Error::InvalidInstance("cut weights must be square symmetric".into()));
    }
    for i in 0..n {
        if !weights.get(i, i).is_zero() {
            return Err(Error::InvalidInstance("cut weights need a zero diagonal".into()));
        }
        for j in 0..n {
            if weights.get(i, j).is_negative() {
                return Err(Error::InvalidInstance("cut weights must be nonnegative".into()));
            }
        }
    }
    Ok(())
}

/// Exact maximum cut by enumerating all vertex splits.
pub fn maxcut_value(weights: &RatMatrix) -> Result<Rational> {
    let n = weights.rows();
    validate_cut_weights(weights)?;
    if n >= 26 {
        return Err(Error::TooLarge { needed: 1u64 << n.min(62), cap: 1 << 25 });
    }
    let mut best = Rational::zero();
    for mask in 0u64..(1 << n) {
        let mut cut = Rational::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                if (mask >> i & 1) != (mask >> j & 1) {
                    cut += weights.get(i, j);
                }
            }
        }
        if cut > best {
            best = cut;
        }
    }
    Ok(best)
}

/// Outcome of the cut-game analysis.
#[derive(Debug, Clone)]
pub struct MaxcutReport {
    pub core_nonempty: bool,
    /// Row sums `W·1`; the unique member of the smallest nonempty
    /// approximate core (the zero vector on edgeless graphs).
    pub member: RatVector,
    /// Smallest approximation factor with a nonempty approximate core;
    /// absent for edgeless graphs whose exact core is already nonempty.
    pub gamma: Option<Rational>,
    pub total_weight: Rational,
    pub max_cut: Rational,
}

pub fn maxcut_analysis(weights: &RatMatrix) -> Result<MaxcutReport> {
    let n = weights.rows();
    let max_cut = maxcut_value(weights)?;
    let ones = vec![Rational::one(); n];
    let member = weights.mul_vec(&ones);
    let total_weight = vec_sum(&member);
    if max_cut.is_zero() {
        return Ok(MaxcutReport {
            core_nonempty: true,
            member,
            gamma: None,
            total_weight,
            max_cut,
        });
    }
    Ok(MaxcutReport {
        core_nonempty: false,
        gamma: Some(&total_weight / &max_cut),
        member,
        total_weight,
        max_cut,
    })
}

/// Smallest factor with a nonempty approximate core for the cut game.
pub fn maxcut_gamma(weights: &RatMatrix) -> Result<Rational> {
    maxcut_analysis(weights)?
        .gamma
        .ok_or(Error::ZeroGrandValue)
}

/// Uniform complete-graph cut weights.
pub fn complete_graph_weights(n: usize, weight: &Rational) -> RatMatrix {
    let mut w = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                *w.get_mut(i, j) = weight.clone();
            }
        }
    }
    w
}

/// Product-selection game under the standard choice model: ratio objective
/// with numerator `p ⊙ v`, denominator offset 1 and costs `v`.
pub fn assortment_game(prices: &[Rational], values: &[Rational]) -> Result<GameInstance> {
    let n = prices.len();
    if values.len() != n {
        return Err(Error::DimensionMismatch("prices vs values".into()));
    }
    if n < 2 {
        return Err(Error::InvalidInstance("assortment analysis needs at least two products".into()));
    }
    if prices.iter().any(|p| !p.is_positive()) || values.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidInstance("prices and values must be positive".into()));
    }
    let c: RatVector = prices.iter().zip(values).map(|(p, v)| p * v).collect();
    GameInstance::new(
        RatMatrix::identity(n),
        GameSense::Packing,
        DomainSpec::Boolean { m: n },
        ObjectiveSpec::ratio(c, values.to_vec(), Rational::one()),
    )
}

#[derive(Debug, Clone)]
pub struct AssortmentReport {
    /// Always false for positive values: the exact core needs a linear
    /// objective.
    pub core_nonempty: bool,
    /// `p_i v_i / (1 + v_i)`; the member of every sufficiently large
    /// approximate core.
    pub member: RatVector,
    pub gamma_min: Rational,
    pub grand_value: Rational,
    pub relaxed_value: Rational,
}

/// Closed-form assortment analysis. The grand value is the best
/// price-ordered prefix of products; the relaxed value is the sum of the
/// per-product ratios.
pub fn assortment_analysis(prices: &[Rational], values: &[Rational]) -> Result<AssortmentReport> {
    // Validation (and the instance shape) shared with the generator.
    let _ = assortment_game(prices, values)?;
    let n = prices.len();
    let member: RatVector = (0..n)
        .map(|i| &prices[i] * &values[i] / (Rational::one() + &values[i]))
        .collect();
    let relaxed_value = vec_sum(&member);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| prices[b].cmp(&prices[a]));
    let mut revenue = Rational::zero();
    let mut weight = Rational::one();
    let mut grand_value = Rational::zero();
    for &i in &order {
        revenue += &prices[i] * &values[i];
        weight += &values[i];
        let candidate = &revenue / &weight;
        if candidate > grand_value {
            grand_value = candidate;
        }
    }

    Ok(AssortmentReport {
        core_nonempty: false,
        gamma_min: &relaxed_value / &grand_value,
        member,
        grand_value,
        relaxed_value,
    })
}

/// Closed-form core test for a combinatorial ratio game: the relaxation
/// value must be matched by either a single item's ratio or a zero-cost
/// packing.
pub fn ratio_game_core_check(g: &GameInstance) -> Result<CoreReport> {
    let ObjectiveSpec::Ratio { c, d, d0 } = &g.objective else {
        return Err(Error::InvalidInstance("ratio closed form needs a ratio objective".into()));
    };
    let m = g.items();
    if m < 2 {
        return Err(Error::InvalidInstance("ratio closed form needs at least two items".into()));
    }
    if c.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidInstance("ratio closed form needs strictly positive numerators".into()));
    }
    if !matches!(g.domain, DomainSpec::Boolean { .. }) || g.sense != GameSense::Packing {
        return Err(Error::UnsupportedVariant("ratio closed form covers Boolean packing games".into()));
    }

    let best_single = (0..m)
        .map(|i| &c[i] / (d0 + &d[i]))
        .max()
        .expect("m >= 2");

    // Zero-cost branch: best packing supported on items with zero cost.
    let zero_cost: Vec<usize> = (0..m).filter(|&i| d[i].is_zero()).collect();
    let n = g.players();
    let ones = vec![Rational::one(); n];
    let mut best_zero_cost = Rational::zero();
    for mask in 0u64..(1 << zero_cost.len()) {
        let mut x = zeros(m);
        for (t, &i) in zero_cost.iter().enumerate() {
            if mask >> t & 1 == 1 {
                x[i] = Rational::one();
            }
        }
        let ax = g.constraint.mul_vec(&x);
        if !ax.iter().zip(&ones).all(|(lhs, r)| lhs <= r) {
            continue;
        }
        let value: Rational = zero_cost
            .iter()
            .filter(|&&i| x[i].is_one())
            .map(|&i| &c[i] / d0)
            .sum();
        if value > best_zero_cost {
            best_zero_cost = value;
        }
    }

    let restricted_best = best_single.clone().max(best_zero_cost);
    let grand = Coalition::ones(n);
    let sol = anchor_solve(g, &grand)?;
    let nonempty = sol.value == restricted_best;
    let nu_grand = nu(g, &grand)?;
    let gamma_min = nu_grand.is_positive().then(|| &sol.value / &nu_grand);
    Ok(CoreReport {
        nonempty,
        nu_grand,
        anchor_grand: sol.value.clone(),
        member: nonempty.then(|| core_candidate(g, &sol)),
        gamma_min,
        theorem_used: "ratio-closed-form".to_string(),
        notes: vec![format!(
            "restricted optimum {} (best single ratio vs zero-cost packing)",
            format_rational(&restricted_best)
        )],
    })
}

/// Matching game on edge variables with pairwise penalties: symmetric
/// zero-diagonal `Q` with nonpositive off-diagonal entries.
pub fn quadratic_matching_game(
    graph: &WeightedGraph,
    edge_weights: &[Rational],
    penalties: &RatMatrix,
) -> Result<GameInstance> {
    let m = graph.n_edges();
    if edge_weights.len() != m || penalties.rows() != m || penalties.cols() != m {
        return Err(Error::DimensionMismatch("edge data shape".into()));
    }
    if !penalties.is_symmetric() {
        return Err(Error::InvalidInstance("penalty matrix must be symmetric".into()));
    }
    for i in 0..m {
        if !penalties.get(i, i).is_zero() {
            return Err(Error::InvalidInstance("penalty diagonal must be zero".into()));
        }
        for j in 0..m {
            if penalties.get(i, j).is_positive() {
                return Err(Error::InvalidInstance("penalties must be nonpositive".into()));
            }
        }
    }
    GameInstance::new(
        graph.incidence(),
        GameSense::Packing,
        DomainSpec::Boolean { m },
        ObjectiveSpec::quadratic(edge_weights.to_vec(), penalties.clone()),
    )
}

/// Exact grand value of a quadratic matching game by visiting every
/// matching.
fn quadratic_matching_value(
    graph: &WeightedGraph,
    edge_weights: &[Rational],
    penalties: &RatMatrix,
) -> Rational {
    fold_matchings(graph, Rational::zero(), |best, chosen| {
        let mut value = Rational::zero();
        for (a, &i) in chosen.iter().enumerate() {
            value += &edge_weights[i];
            for &j in chosen.iter().skip(a + 1) {
                value += rat_int(2) * penalties.get(i, j);
            }
        }
        best.max(value)
    })
}

/// Clique-based core test for the quadratic matching game: the relaxation
/// value must be attained by a maximum matching inside one penalty-free
/// clique of edges.
pub fn qmatching_core_check(
    graph: &WeightedGraph,
    edge_weights: &[Rational],
    penalties: &RatMatrix,
) -> Result<CoreReport> {
    let g = quadratic_matching_game(graph, edge_weights, penalties)?;
    let m = graph.n_edges();

    // Compatibility graph on edges: adjacent when the penalty vanishes.
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            adj[i][j] = i != j && penalties.get(i, j).is_zero();
        }
    }
    let cliques = maximal_cliques(&adj);
    let mut restricted_best = Rational::zero();
    for clique in &cliques {
        let mut allowed = vec![false; m];
        for &e in clique {
            allowed[e] = true;
        }
        let value = max_weight_matching(graph, edge_weights, &allowed);
        if value > restricted_best {
            restricted_best = value;
        }
    }

    let grand = Coalition::ones(g.players());
    let sol = anchor_solve(&g, &grand)?;
    let nonempty = sol.value == restricted_best;
    let nu_grand = quadratic_matching_value(graph, edge_weights, penalties);
    let gamma_min = nu_grand.is_positive().then(|| &sol.value / &nu_grand);
    Ok(CoreReport {
        nonempty,
        nu_grand,
        anchor_grand: sol.value.clone(),
        member: nonempty.then(|| core_candidate(&g, &sol)),
        gamma_min,
        theorem_used: "quadratic-matching-cliques".to_string(),
        notes: vec![format!(
            "best penalty-free clique matching {} over {} cliques",
            format_rational(&restricted_best),
            cliques.len()
        )],
    })
}

/// Matching game with a ratio objective over edge profits and costs.
pub fn ratio_matching_game(
    graph: &WeightedGraph,
    profits: &[Rational],
    costs: &[Rational],
    offset: &Rational,
) -> Result<GameInstance> {
    let m = graph.n_edges();
    if profits.len() != m || costs.len() != m {
        return Err(Error::DimensionMismatch("edge data shape".into()));
    }
    if profits.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidInstance("edge profits must be positive".into()));
    }
    GameInstance::new(
        graph.incidence(),
        GameSense::Packing,
        DomainSpec::Boolean { m },
        ObjectiveSpec::ratio(profits.to_vec(), costs.to_vec(), offset.clone()),
    )
}

/// Core test for the ratio matching game: the relaxation value must be the
/// larger of the best single-edge ratio and the best zero-cost matching at
/// profits scaled by the offset.
pub fn rmatching_core_check(
    graph: &WeightedGraph,
    profits: &[Rational],
    costs: &[Rational],
    offset: &Rational,
) -> Result<CoreReport> {
    let g = ratio_matching_game(graph, profits, costs, offset)?;
    let m = graph.n_edges();

    let best_single = (0..m)
        .map(|i| &profits[i] / (offset + &costs[i]))
        .max()
        .unwrap_or_else(Rational::zero);
    let scaled: RatVector = profits.iter().map(|p| p / offset).collect();
    let allowed: Vec<bool> = costs.iter().map(|d| d.is_zero()).collect();
    let matching_best = max_weight_matching(graph, &scaled, &allowed);
    let restricted_best = best_single.max(matching_best);

    let grand = Coalition::ones(g.players());
    let sol = anchor_solve(&g, &grand)?;
    let nonempty = sol.value == restricted_best;

    // Exact grand value over all matchings.
    let nu_grand = fold_matchings(graph, Rational::zero(), |best, chosen| {
        let mut num = Rational::zero();
        let mut den = offset.clone();
        for &i in chosen {
            num += &profits[i];
            den += &costs[i];
        }
        best.max(num / den)
    });
    let gamma_min = nu_grand.is_positive().then(|| &sol.value / &nu_grand);
    Ok(CoreReport {
        nonempty,
        nu_grand,
        anchor_grand: sol.value.clone(),
        member: nonempty.then(|| core_candidate(&g, &sol)),
        gamma_min,
        theorem_used: "ratio-matching-closed-form".to_string(),
        notes: vec![format!(
            "restricted optimum {}",
            format_rational(&restricted_best)
        )],
    })
}

/// The quadratic matching game induced by a formula's gadget graph: unit
/// edge weights, penalty -1 on every conflict pair.
pub fn conflict_matching_game(sat: &SatInstance) -> Result<(ConflictStructure, GameInstance)> {
    let structure = sat_reduction(sat)?;
    let m = structure.graph.n_edges();
    let weights = vec![Rational::one(); m];
    let mut penalties = RatMatrix::zero(m, m);
    for &(a, b) in &structure.conflicts {
        *penalties.get_mut(a, b) = rat_int(-1);
        *penalties.get_mut(b, a) = rat_int(-1);
    }
    let game = quadratic_matching_game(&structure.graph, &weights, &penalties)?;
    Ok((structure, game))
}

/// Conflict data alongside the closed-form verdict, for the reduction
/// cross-check.
pub fn conflict_matching_core_check(sat: &SatInstance) -> Result<(ConflictStructure, CoreReport)> {
    let structure = sat_reduction(sat)?;
    let m = structure.graph.n_edges();
    let weights = vec![Rational::one(); m];
    let mut penalties = RatMatrix::zero(m, m);
    for &(a, b) in &structure.conflicts {
        *penalties.get_mut(a, b) = rat_int(-1);
        *penalties.get_mut(b, a) = rat_int(-1);
    }
    let report = qmatching_core_check(&structure.graph, &weights, &penalties)?;
    Ok((structure, report))
}
