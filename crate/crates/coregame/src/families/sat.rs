//! (3,B2)-SAT instances and their conflict-matching gadget graphs.
//!
//! Each variable yields a four-cycle whose opposite edge pairs encode the
//! two truth values; each clause yields a claw whose edges are named after
//! literal occurrences. Conflicts tie a matched truth-value edge to the
//! claw edges of the opposite literal, so a conflict-respecting matching
//! of size `2n + k` exists exactly when the formula is satisfiable.

use crate::error::{Error, Result};
use crate::families::graph::WeightedGraph;

/// A 3-CNF formula where every variable occurs exactly twice positively
/// and twice negatively. Literals are nonzero integers, `-v` negating `v`,
/// variables numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    pub n_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl SatInstance {
    pub fn new(n_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        let inst = SatInstance { n_vars, clauses };
        inst.validate()?;
        Ok(inst)
    }

    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    fn validate(&self) -> Result<()> {
        let mut pos = vec![0usize; self.n_vars];
        let mut neg = vec![0usize; self.n_vars];
        for clause in &self.clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.n_vars {
                    return Err(Error::Not3B2(format!("literal {lit} out of range")));
                }
                let v = lit.unsigned_abs() as usize - 1;
                if lit > 0 {
                    pos[v] += 1;
                } else {
                    neg[v] += 1;
                }
            }
        }
        for v in 0..self.n_vars {
            if pos[v] != 2 || neg[v] != 2 {
                return Err(Error::Not3B2(format!(
                    "variable {} occurs {}+ / {}- (needs exactly 2/2)",
                    v + 1,
                    pos[v],
                    neg[v]
                )));
            }
        }
        Ok(())
    }

    /// Exhaustive satisfiability test.
    pub fn satisfiable(&self) -> Result<bool> {
        if self.n_vars > 20 {
            return Err(Error::TooLarge { needed: self.n_vars as u64, cap: 20 });
        }
        'outer: for mask in 0u64..(1 << self.n_vars) {
            for clause in &self.clauses {
                let sat = clause.iter().any(|&lit| {
                    let v = lit.unsigned_abs() as usize - 1;
                    (mask >> v & 1 == 1) == (lit > 0)
                });
                if !sat {
                    continue 'outer;
                }
            }
            return Ok(true);
        }
        Ok(false)
    }
}

/// Per-variable cycle edge ids, in the order
/// `[x_i1, x̄_i1, x_i2, x̄_i2]` around the cycle (so the two positive
/// edges sit opposite each other).
pub type CycleEdges = [usize; 4];

/// The gadget graph plus its conflict pairs.
#[derive(Debug, Clone)]
pub struct ConflictStructure {
    pub graph: WeightedGraph,
    /// Unordered pairs of edge indices that may not both be matched.
    pub conflicts: Vec<(usize, usize)>,
    pub cycle_edges: Vec<CycleEdges>,
    /// One entry per clause: the three claw edge ids.
    pub claw_edges: Vec<[usize; 3]>,
}

/// Index into a cycle's edge quadruple for a literal occurrence.
fn cycle_slot(positive: bool, occurrence: usize) -> usize {
    match (positive, occurrence) {
        (true, 0) => 0,  // x_i1
        (false, 0) => 1, // x̄_i1
        (true, 1) => 2,  // x_i2
        (false, 1) => 3, // x̄_i2
        _ => unreachable!("occurrence counts validated to two per sign"),
    }
}

/// Build the gadget graph: one four-cycle per variable, one claw per
/// clause, and four conflicts per variable tying each cycle edge to the
/// claw edge of its opposite literal occurrence.
pub fn sat_reduction(sat: &SatInstance) -> Result<ConflictStructure> {
    sat.validate()?;
    let n = sat.n_vars;
    let k = sat.n_clauses();

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(4 * n + 3 * k);
    let mut cycle_edges: Vec<CycleEdges> = Vec::with_capacity(n);

    // Cycle vertices 4i..4i+3; edges in truth-value-alternating order.
    for i in 0..n {
        let v = 4 * i;
        let ids = [
            edges.len(),
            edges.len() + 1,
            edges.len() + 2,
            edges.len() + 3,
        ];
        edges.push((v, v + 1)); // x_i1
        edges.push((v + 1, v + 2)); // x̄_i1
        edges.push((v + 2, v + 3)); // x_i2
        edges.push((v + 3, v)); // x̄_i2
        cycle_edges.push(ids);
    }

    // Claw for clause j: root then three leaves.
    let claw_base = 4 * n;
    let mut claw_edges: Vec<[usize; 3]> = Vec::with_capacity(k);
    // Claw edge id for the occurrence'th positive/negative literal of each
    // variable.
    let mut occurrence_edge = vec![[usize::MAX; 4]; n];
    let mut pos_seen = vec![0usize; n];
    let mut neg_seen = vec![0usize; n];
    for (j, clause) in sat.clauses.iter().enumerate() {
        let root = claw_base + 4 * j;
        let mut ids = [0usize; 3];
        for (t, &lit) in clause.iter().enumerate() {
            let leaf = root + 1 + t;
            let id = edges.len();
            edges.push((root, leaf));
            ids[t] = id;
            let var = lit.unsigned_abs() as usize - 1;
            let occurrence = if lit > 0 {
                let o = pos_seen[var];
                pos_seen[var] += 1;
                o
            } else {
                let o = neg_seen[var];
                neg_seen[var] += 1;
                o
            };
            occurrence_edge[var][cycle_slot(lit > 0, occurrence)] = id;
        }
        claw_edges.push(ids);
    }

    let n_vertices = 4 * n + 4 * k;
    let graph = WeightedGraph::new(n_vertices, edges)?;

    // Conflicts: cycle edge of one literal vs claw edge of the opposite
    // literal's matching occurrence.
    let mut conflicts = Vec::with_capacity(4 * n);
    for i in 0..n {
        let [x1, nx1, x2, nx2] = cycle_edges[i];
        let e = &occurrence_edge[i];
        conflicts.push((x1, e[cycle_slot(false, 0)]));
        conflicts.push((x2, e[cycle_slot(false, 1)]));
        conflicts.push((nx1, e[cycle_slot(true, 0)]));
        conflicts.push((nx2, e[cycle_slot(true, 1)]));
    }

    Ok(ConflictStructure { graph, conflicts, cycle_edges, claw_edges })
}

/// Both sides of the matching lemma by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub max_conflict_matching: usize,
    /// The saturation size `2n + k`.
    pub target: usize,
    pub satisfiable: bool,
    /// Whether the matching reaches the target exactly when satisfiable.
    pub lemma_consistent: bool,
}

/// Maximum conflict-respecting matching size of the gadget graph.
///
/// Components are the variable cycles and the clause claws, and conflicts
/// only couple a cycle edge with a claw edge, so a matching decomposes
/// into one of the seven cycle matchings per variable plus at most one
/// edge per claw. A claw contributes exactly when one of its edges keeps
/// an unselected blocker, which only depends on the owning variable's
/// cycle state; that makes "set of claws still unsaved" a sufficient
/// dynamic-programming state.
pub fn max_conflict_matching(structure: &ConflictStructure) -> Result<usize> {
    let n = structure.cycle_edges.len();
    let k = structure.claw_edges.len();
    if k > 20 {
        return Err(Error::TooLarge { needed: k as u64, cap: 20 });
    }
    let m = structure.graph.n_edges();
    // blocking_cycle_edge[claw edge] = the cycle edge conflicting with it.
    let mut blocking_cycle_edge = vec![usize::MAX; m];
    for &(a, b) in &structure.conflicts {
        let (cycle, claw) = if a < b { (a, b) } else { (b, a) };
        blocking_cycle_edge[claw] = cycle;
    }
    // claw_of_edge[claw edge] = claw index.
    let mut claw_of_edge = vec![usize::MAX; m];
    for (j, claw) in structure.claw_edges.iter().enumerate() {
        for &e in claw {
            claw_of_edge[e] = j;
        }
    }
    // For each variable and cycle slot: claws saved when that slot's cycle
    // edge stays unselected.
    let mut slot_saves = vec![[0u32; 4]; n];
    for claw in &structure.claw_edges {
        for &e in claw {
            let blocker = blocking_cycle_edge[e];
            if blocker == usize::MAX {
                continue;
            }
            for (var, cycle) in structure.cycle_edges.iter().enumerate() {
                if let Some(slot) = cycle.iter().position(|&c| c == blocker) {
                    slot_saves[var][slot] |= 1 << claw_of_edge[e];
                }
            }
        }
    }

    // The seven matchings of a four-cycle, as slot subsets: empty,
    // singletons, opposite pairs.
    const CYCLE_STATES: [&[usize]; 7] = [&[], &[0], &[1], &[2], &[3], &[0, 2], &[1, 3]];

    let full_mask: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
    // dp[mask] = best cycle-edge count with `mask` the claws not yet saved.
    let mut dp = vec![usize::MAX; (full_mask as usize) + 1];
    dp[full_mask as usize] = 0;
    for var in 0..n {
        let mut next = vec![usize::MAX; dp.len()];
        for (mask, &count) in dp.iter().enumerate() {
            if count == usize::MAX {
                continue;
            }
            for state in CYCLE_STATES {
                let mut saved = 0u32;
                for slot in 0..4 {
                    if !state.contains(&slot) {
                        saved |= slot_saves[var][slot];
                    }
                }
                let new_mask = mask & !(saved as usize);
                let new_count = count + state.len();
                if next[new_mask] == usize::MAX || next[new_mask] < new_count {
                    next[new_mask] = new_count;
                }
            }
        }
        dp = next;
    }

    let mut best = 0usize;
    for (mask, &count) in dp.iter().enumerate() {
        if count == usize::MAX {
            continue;
        }
        let saved_claws = k - (mask as u32).count_ones() as usize;
        best = best.max(count + saved_claws);
    }
    Ok(best)
}

/// Run both directions of the reduction check.
pub fn verify_reduction(sat: &SatInstance) -> Result<ReductionReport> {
    let structure = sat_reduction(sat)?;
    let max_matching = max_conflict_matching(&structure)?;
    let satisfiable = sat.satisfiable()?;
    let target = 2 * sat.n_vars + sat.n_clauses();
    Ok(ReductionReport {
        max_conflict_matching: max_matching,
        target,
        satisfiable,
        lemma_consistent: (max_matching == target) == satisfiable,
    })
}

/// Parse the plain text format: header `p 3b2sat <n> <k>`, then one line
/// of three integers per clause; `c` lines are comments.
pub fn parse_sat_text(text: &str) -> Result<SatInstance> {
    let mut n_vars = None;
    let mut n_clauses = 0usize;
    let mut clauses = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "3b2sat" {
                return Err(Error::Parse(format!("bad header line {line:?}")));
            }
            n_vars = Some(
                parts[1]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse("bad variable count".into()))?,
            );
            n_clauses = parts[2]
                .parse::<usize>()
                .map_err(|_| Error::Parse("bad clause count".into()))?;
            continue;
        }
        let lits: Vec<i32> = line
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad literal {t:?}"))))
            .collect::<Result<_>>()?;
        if lits.len() != 3 {
            return Err(Error::Parse(format!("clause {line:?} does not have 3 literals")));
        }
        clauses.push([lits[0], lits[1], lits[2]]);
    }
    let n_vars = n_vars.ok_or_else(|| Error::Parse("missing header".into()))?;
    if clauses.len() != n_clauses {
        return Err(Error::Parse(format!(
            "header promised {n_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    SatInstance::new(n_vars, clauses)
}

/// Render an instance in the text format accepted by [`parse_sat_text`].
pub fn format_sat_text(sat: &SatInstance) -> String {
    let mut out = format!("p 3b2sat {} {}\n", sat.n_vars, sat.n_clauses());
    for clause in &sat.clauses {
        out.push_str(&format!("{} {} {}\n", clause[0], clause[1], clause[2]));
    }
    out
}

/// The three-variable, four-clause satisfiable example instance.
pub fn example_satisfiable() -> SatInstance {
    SatInstance::new(
        3,
        vec![[1, 2, 3], [1, 2, 3], [-1, -2, -3], [-1, -2, -3]],
    )
    .expect("valid example")
}

/// A minimal unsatisfiable instance. Clauses are literal multisets: the
/// doubled second literal turns each clause into an implication, so
/// x1 = 0 forces x2 both ways and x1 = 1 forces x3 both ways. Formulas
/// with three distinct variables per clause cannot be unsatisfiable at
/// this size: twelve occurrence slots admit only four clauses, which
/// exclude at most half of the assignment space.
pub fn example_unsatisfiable() -> SatInstance {
    SatInstance::new(
        3,
        vec![[1, 2, 2], [1, -2, -2], [-1, 3, 3], [-1, -3, -3]],
    )
    .expect("valid example")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occurrence_counts_are_enforced() {
        assert!(SatInstance::new(1, vec![[1, 1, -1]]).is_err());
        assert!(SatInstance::new(2, vec![[1, 2, -1], [1, -2, -1], [2, -2, 1], [-1, 2, -2]]).is_err());
        assert!(example_satisfiable().validate().is_ok());
    }

    #[test]
    fn example_shape_counts() {
        let s = example_satisfiable();
        let structure = sat_reduction(&s).unwrap();
        // 3 four-cycles + 4 claws: 12 + 12 edges, 4n = 12 conflicts.
        assert_eq!(structure.graph.n_edges(), 24);
        assert_eq!(structure.conflicts.len(), 12);
        assert_eq!(structure.graph.n_vertices(), 12 + 16);
        // Opposite cycle edges share no vertex.
        for ids in &structure.cycle_edges {
            let e = structure.graph.edges();
            let (a, b) = (e[ids[0]], e[ids[2]]);
            assert!(a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1);
        }
    }

    #[test]
    fn every_claw_edge_has_exactly_one_conflict() {
        let structure = sat_reduction(&example_satisfiable()).unwrap();
        let mut seen = std::collections::BTreeMap::new();
        for &(a, b) in &structure.conflicts {
            *seen.entry(a.max(b)).or_insert(0usize) += 1;
        }
        for claw in &structure.claw_edges {
            for &e in claw {
                assert_eq!(seen.get(&e), Some(&1), "claw edge {e}");
            }
        }
    }

    #[test]
    fn satisfiable_example_reaches_target() {
        let report = verify_reduction(&example_satisfiable()).unwrap();
        assert!(report.satisfiable);
        assert_eq!(report.target, 10);
        assert_eq!(report.max_conflict_matching, 10);
        assert!(report.lemma_consistent);
    }

    #[test]
    fn unsatisfiable_example_falls_short() {
        let inst = example_unsatisfiable();
        assert!(!inst.satisfiable().unwrap());
        let report = verify_reduction(&inst).unwrap();
        assert!(!report.satisfiable);
        assert_eq!(report.target, 10);
        assert!(report.max_conflict_matching < report.target);
        assert!(report.lemma_consistent);
    }

    #[test]
    fn repeated_literals_still_balance_and_reduce() {
        let inst = example_unsatisfiable();
        let structure = sat_reduction(&inst).unwrap();
        assert_eq!(structure.graph.n_edges(), 24);
        assert_eq!(structure.conflicts.len(), 12);
    }

    #[test]
    fn text_roundtrip() {
        let s = example_satisfiable();
        let text = format_sat_text(&s);
        assert_eq!(parse_sat_text(&text).unwrap(), s);
    }

    #[test]
    fn parse_rejects_bad_headers() {
        assert!(parse_sat_text("p cnf 3 4\n1 2 3\n").is_err());
        assert!(parse_sat_text("1 2 3\n").is_err());
    }
}
