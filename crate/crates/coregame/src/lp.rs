//! Exact two-phase rational simplex.
//!
//! Produces certified primal and dual optima: on every optimal solve the
//! primal point, the dual point and the equality of their objective values
//! are re-verified by substitution before the solution is returned. Bland's
//! rule is always on, so degenerate polytopes terminate.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, format_rational, zeros, RatMatrix, RatVector, Rational};

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Row comparison sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Ge,
    Eq,
}

/// Per-variable sign restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarSign {
    NonNeg,
    Free,
}

/// A linear program in inequality form.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: RatVector,
    pub rows: RatMatrix,
    pub row_sense: Vec<RowSense>,
    pub rhs: RatVector,
    pub var_sign: Vec<VarSign>,
}

impl LpProblem {
    pub fn new(
        sense: Sense,
        objective: RatVector,
        rows: RatMatrix,
        row_sense: Vec<RowSense>,
        rhs: RatVector,
        var_sign: Vec<VarSign>,
    ) -> Result<Self> {
        let n_vars = objective.len();
        let n_rows = rows.rows();
        if rows.cols() != n_vars || row_sense.len() != n_rows || rhs.len() != n_rows {
            return Err(Error::DimensionMismatch(format!(
                "lp shape: {} vars, rows {}x{}, {} senses, {} rhs",
                n_vars,
                n_rows,
                rows.cols(),
                row_sense.len(),
                rhs.len()
            )));
        }
        if var_sign.len() != n_vars {
            return Err(Error::DimensionMismatch("var_sign length".into()));
        }
        Ok(LpProblem { sense, objective, rows, row_sense, rhs, var_sign })
    }

    /// All-nonnegative shorthand.
    pub fn nonneg(
        sense: Sense,
        objective: RatVector,
        rows: RatMatrix,
        row_sense: Vec<RowSense>,
        rhs: RatVector,
    ) -> Result<Self> {
        let signs = vec![VarSign::NonNeg; objective.len()];
        LpProblem::new(sense, objective, rows, row_sense, rhs, signs)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    /// Exact primal feasibility by substitution.
    pub fn is_primal_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        for (j, sign) in self.var_sign.iter().enumerate() {
            if *sign == VarSign::NonNeg && x[j].is_negative() {
                return false;
            }
        }
        let ax = self.rows.mul_vec(x);
        self.row_sense.iter().enumerate().all(|(i, s)| match s {
            RowSense::Le => ax[i] <= self.rhs[i],
            RowSense::Ge => ax[i] >= self.rhs[i],
            RowSense::Eq => ax[i] == self.rhs[i],
        })
    }

    /// Exact feasibility of `y` for the formal dual of this problem.
    ///
    /// Conventions: for a Max primal the dual is `min bᵀy` with `y_i ≥ 0`
    /// on ≤ rows, `y_i ≤ 0` on ≥ rows, free on = rows, and `(Aᵀy)_j ≥ c_j`
    /// for nonnegative variables (equality for free variables). For a Min
    /// primal the dual is `max bᵀy` with the row signs flipped and
    /// `(Aᵀy)_j ≤ c_j` (equality for free variables).
    pub fn is_dual_feasible(&self, y: &[Rational]) -> bool {
        if y.len() != self.num_rows() {
            return false;
        }
        for (i, s) in self.row_sense.iter().enumerate() {
            let ok = match (self.sense, s) {
                (_, RowSense::Eq) => true,
                (Sense::Max, RowSense::Le) | (Sense::Min, RowSense::Ge) => !y[i].is_negative(),
                (Sense::Max, RowSense::Ge) | (Sense::Min, RowSense::Le) => !y[i].is_positive(),
            };
            if !ok {
                return false;
            }
        }
        let aty = self.rows.transpose().mul_vec(y);
        self.var_sign.iter().enumerate().all(|(j, sign)| match (self.sense, sign) {
            (_, VarSign::Free) => aty[j] == self.objective[j],
            (Sense::Max, VarSign::NonNeg) => aty[j] >= self.objective[j],
            (Sense::Min, VarSign::NonNeg) => aty[j] <= self.objective[j],
        })
    }

    pub fn dual_objective(&self, y: &[Rational]) -> Rational {
        dot(&self.rhs, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Certified solve result. `value`, `primal` and `dual` are meaningful only
/// when `status == Optimal`; the constructor has already re-verified the
/// strong-duality certificate in that case.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rational,
    pub primal: RatVector,
    pub dual: RatVector,
    pub basis: Vec<usize>,
}

impl LpSolution {
    fn non_optimal(status: LpStatus) -> Self {
        LpSolution {
            status,
            value: Rational::zero(),
            primal: vec![],
            dual: vec![],
            basis: vec![],
        }
    }
}

/// `true` iff `y` is feasible for the formal dual of `p` and attains the
/// optimal value exactly.
pub fn is_dual_optimal(p: &LpProblem, y: &[Rational]) -> Result<bool> {
    let sol = solve(p)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::StatusNotOptimal);
    }
    Ok(p.is_dual_feasible(y) && p.dual_objective(y) == sol.value)
}

/// Optimal dual vertices reachable from one optimal basis by
/// zero-reduced-cost pivots. Deduplicated; `truncated` is set when the
/// basis cap was hit before the search closed.
#[derive(Debug, Clone)]
pub struct DualVertices {
    pub vertices: Vec<RatVector>,
    pub truncated: bool,
}

pub const DEFAULT_BASIS_CAP: usize = 10_000;

pub fn enumerate_optimal_dual_vertices(p: &LpProblem, cap: usize) -> Result<DualVertices> {
    let sol = solve(p)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::StatusNotOptimal);
    }

    // The dual optimal face as an explicit feasibility system over y.
    // Sign-restricted duals (nonpositive ones) are flipped to nonnegative
    // variables so the face fits the standard form.
    let n = p.num_rows();
    let mut flip = vec![false; n];
    let mut signs = Vec::with_capacity(n);
    for (i, rs) in p.row_sense.iter().enumerate() {
        match (p.sense, rs) {
            (_, RowSense::Eq) => signs.push(VarSign::Free),
            (Sense::Max, RowSense::Le) | (Sense::Min, RowSense::Ge) => signs.push(VarSign::NonNeg),
            (Sense::Max, RowSense::Ge) | (Sense::Min, RowSense::Le) => {
                signs.push(VarSign::NonNeg);
                flip[i] = true;
            }
        }
    }

    let transposed = p.rows.transpose();
    let mut body = Vec::with_capacity((p.num_vars() + 1) * n);
    let mut row_sense = Vec::with_capacity(p.num_vars() + 1);
    let mut rhs = Vec::with_capacity(p.num_vars() + 1);
    for j in 0..p.num_vars() {
        for i in 0..n {
            let mut v = transposed.get(j, i).clone();
            if flip[i] {
                v = -v;
            }
            body.push(v);
        }
        row_sense.push(match (p.sense, p.var_sign[j]) {
            (_, VarSign::Free) => RowSense::Eq,
            (Sense::Max, VarSign::NonNeg) => RowSense::Ge,
            (Sense::Min, VarSign::NonNeg) => RowSense::Le,
        });
        rhs.push(p.objective[j].clone());
    }
    for i in 0..n {
        let mut v = p.rhs[i].clone();
        if flip[i] {
            v = -v;
        }
        body.push(v);
    }
    row_sense.push(RowSense::Eq);
    rhs.push(sol.value.clone());

    let face = LpProblem::new(
        Sense::Max,
        zeros(n),
        RatMatrix::new(p.num_vars() + 1, n, body),
        row_sense,
        rhs,
        signs,
    )?;

    let mut tab = Tableau::build(&face);
    match tab.run_two_phase()? {
        LpStatus::Optimal => {}
        _ => return Err(Error::Certificate("dual optimal face must be feasible".into())),
    }

    // With a zero objective every feasible pivot is optimality-preserving,
    // so the BFS below walks the whole (connected) basis graph of the
    // face and visits every vertex.
    let mut seen_bases = std::collections::BTreeSet::new();
    let mut vertices = std::collections::BTreeSet::new();
    let mut queue = std::collections::VecDeque::new();
    let mut truncated = false;

    let unflip = |y: RatVector| -> RatVector {
        y.into_iter()
            .enumerate()
            .map(|(i, v)| if flip[i] { -v } else { v })
            .collect()
    };

    seen_bases.insert(tab.basis_key());
    vertices.insert(unflip(tab.primal(&face)));
    queue.push_back(tab);

    while let Some(t) = queue.pop_front() {
        for (enter, leave) in t.optimal_pivots() {
            let mut next = t.clone();
            next.pivot(leave, enter);
            let key = next.basis_key();
            if seen_bases.contains(&key) {
                continue;
            }
            if seen_bases.len() >= cap {
                truncated = true;
                continue;
            }
            seen_bases.insert(key);
            vertices.insert(unflip(next.primal(&face)));
            queue.push_back(next);
        }
    }

    Ok(DualVertices { vertices: vertices.into_iter().collect(), truncated })
}

/// Solve the program. On `Optimal` the returned solution carries an exact
/// strong-duality certificate (verified internally).
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    let mut tab = Tableau::build(p);
    let status = tab.run_two_phase()?;
    match status {
        LpStatus::Infeasible | LpStatus::Unbounded => Ok(LpSolution::non_optimal(status)),
        LpStatus::Optimal => {
            let primal = tab.primal(p);
            let dual = tab.dual(p);
            let value = dot(&p.objective, &primal);

            if !p.is_primal_feasible(&primal) {
                return Err(Error::Certificate("primal point infeasible".into()));
            }
            if !p.is_dual_feasible(&dual) {
                return Err(Error::Certificate("dual point infeasible".into()));
            }
            let dual_value = p.dual_objective(&dual);
            if dual_value != value {
                return Err(Error::Certificate(format!(
                    "duality gap: primal {} vs dual {}",
                    format_rational(&value),
                    format_rational(&dual_value)
                )));
            }
            Ok(LpSolution { status, value, primal, dual, basis: tab.basis.clone() })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    /// Structural column: original variable index and sign (+x or -x part).
    Structural(usize, bool),
    /// Slack (+1) on internal row.
    Slack(usize),
    /// Surplus (-1) on internal row.
    Surplus(usize),
    /// Artificial (+1) on internal row; barred from entering.
    Artificial(usize),
}

/// Dense simplex tableau over exact rationals.
#[derive(Debug, Clone)]
struct Tableau {
    /// body[i][j], plus rhs per row.
    body: Vec<RatVector>,
    rhs: RatVector,
    /// Objective row: reduced costs z_j - c_j for the current basis.
    zrow: RatVector,
    cols: Vec<ColKind>,
    /// Objective coefficients of the internal max problem.
    costs: RatVector,
    /// Basic column per row.
    basis: Vec<usize>,
    /// Row flip signs relative to the input problem (+1 kept, -1 negated).
    row_flip: Vec<bool>,
    /// Columns barred from entering (artificials).
    barred: Vec<bool>,
    phase_one: bool,
}

impl Tableau {
    fn build(p: &LpProblem) -> Tableau {
        let n_rows = p.num_rows();

        // Internal objective: always maximize.
        let internal_obj: RatVector = match p.sense {
            Sense::Max => p.objective.clone(),
            Sense::Min => p.objective.iter().map(|c| -c).collect(),
        };

        // Structural columns, splitting free variables into x⁺ - x⁻.
        let mut cols: Vec<ColKind> = Vec::new();
        let mut costs: RatVector = Vec::new();
        for (j, sign) in p.var_sign.iter().enumerate() {
            cols.push(ColKind::Structural(j, true));
            costs.push(internal_obj[j].clone());
            if *sign == VarSign::Free {
                cols.push(ColKind::Structural(j, false));
                costs.push(-&internal_obj[j]);
            }
        }
        let n_struct = cols.len();

        // Normalize rhs ≥ 0, flipping row sense where needed.
        let mut row_flip = vec![false; n_rows];
        let mut senses = p.row_sense.clone();
        let mut rhs = p.rhs.clone();
        for i in 0..n_rows {
            if rhs[i].is_negative() {
                row_flip[i] = true;
                rhs[i] = -&rhs[i];
                senses[i] = match senses[i] {
                    RowSense::Le => RowSense::Ge,
                    RowSense::Ge => RowSense::Le,
                    RowSense::Eq => RowSense::Eq,
                };
            }
        }

        // Body: structural part with flips applied.
        let mut body: Vec<RatVector> = Vec::with_capacity(n_rows);
        for i in 0..n_rows {
            let mut row = Vec::with_capacity(n_struct);
            for ck in &cols {
                let ColKind::Structural(j, positive) = ck else { unreachable!() };
                let mut v = p.rows.get(i, *j).clone();
                if !positive {
                    v = -v;
                }
                if row_flip[i] {
                    v = -v;
                }
                row.push(v);
            }
            body.push(row);
        }

        // Slack / surplus / artificial columns; initial basis.
        let mut basis = vec![usize::MAX; n_rows];
        for (i, s) in senses.iter().enumerate() {
            match s {
                RowSense::Le => {
                    let id = cols.len();
                    cols.push(ColKind::Slack(i));
                    costs.push(Rational::zero());
                    for (r, row) in body.iter_mut().enumerate() {
                        row.push(if r == i { num::one() } else { Rational::zero() });
                    }
                    basis[i] = id;
                }
                RowSense::Ge => {
                    cols.push(ColKind::Surplus(i));
                    costs.push(Rational::zero());
                    for (r, row) in body.iter_mut().enumerate() {
                        row.push(if r == i {
                            -Rational::from(num::BigInt::from(1))
                        } else {
                            Rational::zero()
                        });
                    }
                }
                RowSense::Eq => {}
            }
        }
        for (i, s) in senses.iter().enumerate() {
            if matches!(s, RowSense::Ge | RowSense::Eq) {
                let id = cols.len();
                cols.push(ColKind::Artificial(i));
                costs.push(Rational::zero());
                for (r, row) in body.iter_mut().enumerate() {
                    row.push(if r == i { num::one() } else { Rational::zero() });
                }
                basis[i] = id;
            }
        }

        let n_cols = cols.len();
        let barred = cols.iter().map(|c| matches!(c, ColKind::Artificial(_))).collect();
        Tableau {
            body,
            rhs,
            zrow: zeros(n_cols),
            cols,
            costs,
            basis,
            row_flip,
            barred,
            phase_one: true,
        }
    }

    fn n_cols(&self) -> usize {
        self.cols.len()
    }

    /// Recompute the reduced-cost row for the given cost vector.
    fn rebuild_zrow(&mut self, costs: &[Rational]) {
        let n = self.n_cols();
        let mut z = zeros(n);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..n {
                let add = cb * &self.body[i][j];
                z[j] += add;
            }
        }
        for j in 0..n {
            z[j] -= &costs[j];
        }
        self.zrow = z;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.body[row][col].clone();
        debug_assert!(!pivot.is_zero());
        let n = self.n_cols();
        for j in 0..n {
            self.body[row][j] /= &pivot;
        }
        self.rhs[row] /= &pivot;
        for r in 0..self.body.len() {
            if r == row || self.body[r][col].is_zero() {
                continue;
            }
            let factor = self.body[r][col].clone();
            for j in 0..n {
                let delta = &factor * &self.body[row][j];
                self.body[r][j] -= delta;
            }
            let delta = &factor * &self.rhs[row];
            self.rhs[r] -= delta;
        }
        if !self.zrow[col].is_zero() {
            let factor = self.zrow[col].clone();
            for j in 0..n {
                let delta = &factor * &self.body[row][j];
                self.zrow[j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Bland: entering column = lowest index with negative reduced cost.
    fn entering(&self) -> Option<usize> {
        (0..self.n_cols()).find(|&j| !self.barred[j] && self.zrow[j].is_negative())
    }

    /// Bland ratio test: min rhs/entry over positive entries, ties broken
    /// by the lowest basic column index.
    fn leaving(&self, enter: usize) -> Option<usize> {
        let mut best: Option<(Rational, usize, usize)> = None;
        for i in 0..self.body.len() {
            let entry = &self.body[i][enter];
            if !entry.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / entry;
            match &best {
                None => best = Some((ratio, self.basis[i], i)),
                Some((r, b, _)) => {
                    if ratio < *r || (ratio == *r && self.basis[i] < *b) {
                        best = Some((ratio, self.basis[i], i));
                    }
                }
            }
        }
        best.map(|(_, _, i)| i)
    }

    fn iterate(&mut self) -> LpStatus {
        loop {
            let Some(enter) = self.entering() else { return LpStatus::Optimal };
            let Some(leave) = self.leaving(enter) else { return LpStatus::Unbounded };
            self.pivot(leave, enter);
        }
    }

    fn run_two_phase(&mut self) -> Result<LpStatus> {
        // Phase 1: minimize the sum of artificials, i.e. maximize -Σ art.
        let needs_phase_one = self
            .basis
            .iter()
            .any(|&b| matches!(self.cols[b], ColKind::Artificial(_)));
        if needs_phase_one {
            let phase1_costs: RatVector = self
                .cols
                .iter()
                .map(|c| match c {
                    ColKind::Artificial(_) => -Rational::from(num::BigInt::from(1)),
                    _ => Rational::zero(),
                })
                .collect();
            self.rebuild_zrow(&phase1_costs);
            if self.iterate() == LpStatus::Unbounded {
                return Err(Error::Certificate("phase one cannot be unbounded".into()));
            }
            let art_sum: Rational = self
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| matches!(self.cols[b], ColKind::Artificial(_)))
                .map(|(i, _)| self.rhs[i].clone())
                .sum();
            if art_sum.is_positive() {
                return Ok(LpStatus::Infeasible);
            }
            // Drive basic artificials (at zero) out where possible.
            for i in 0..self.basis.len() {
                if !matches!(self.cols[self.basis[i]], ColKind::Artificial(_)) {
                    continue;
                }
                let col = (0..self.n_cols())
                    .find(|&j| !self.barred[j] && !self.body[i][j].is_zero());
                if let Some(j) = col {
                    self.pivot(i, j);
                }
                // A row with no eligible pivot is redundant; its artificial
                // stays basic at zero and never re-enters elsewhere.
            }
        }

        self.phase_one = false;
        let costs = self.costs.clone();
        self.rebuild_zrow(&costs);
        Ok(self.iterate())
    }

    fn primal(&self, p: &LpProblem) -> RatVector {
        let mut x = zeros(p.num_vars());
        for (i, &b) in self.basis.iter().enumerate() {
            if let ColKind::Structural(j, positive) = self.cols[b] {
                if positive {
                    x[j] += &self.rhs[i];
                } else {
                    x[j] -= &self.rhs[i];
                }
            }
        }
        x
    }

    /// Dual vector in the conventions of [`LpProblem::is_dual_feasible`].
    fn dual(&self, p: &LpProblem) -> RatVector {
        // y_int_i is read from the reduced cost of the unit column born on
        // internal row i: slack gives +y_i, surplus -y_i, artificial +y_i.
        let n_rows = p.num_rows();
        let mut y = zeros(n_rows);
        let mut have = vec![false; n_rows];
        for (j, kind) in self.cols.iter().enumerate() {
            match kind {
                ColKind::Slack(i) => {
                    y[*i] = self.zrow[j].clone();
                    have[*i] = true;
                }
                ColKind::Artificial(i) => {
                    y[*i] = self.zrow[j].clone();
                    have[*i] = true;
                }
                ColKind::Surplus(i) if !have[*i] => {
                    y[*i] = -&self.zrow[j];
                }
                _ => {}
            }
        }
        for i in 0..n_rows {
            if self.row_flip[i] {
                y[i] = -&y[i];
            }
        }
        if p.sense == Sense::Min {
            for v in y.iter_mut() {
                *v = -v.clone();
            }
        }
        y
    }

    fn basis_key(&self) -> Vec<usize> {
        let mut b = self.basis.clone();
        b.sort_unstable();
        b
    }

    /// Pivots (entering, leaving row) that keep the tableau optimal.
    /// Every row tied at the minimum ratio is a candidate; alternate ties
    /// reach different bases of the optimal face.
    fn optimal_pivots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.n_cols() {
            if self.barred[j] || self.basis.contains(&j) || !self.zrow[j].is_zero() {
                continue;
            }
            let mut min_ratio: Option<Rational> = None;
            for i in 0..self.body.len() {
                let entry = &self.body[i][j];
                if !entry.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / entry;
                if min_ratio.as_ref().is_none_or(|r| ratio < *r) {
                    min_ratio = Some(ratio);
                }
            }
            let Some(min_ratio) = min_ratio else { continue };
            for i in 0..self.body.len() {
                let entry = &self.body[i][j];
                if entry.is_positive() && &self.rhs[i] / entry == min_ratio {
                    out.push((j, i));
                }
            }
        }
        out
    }
}
