//! Membership tests for the classical set-function classes over `B^m`.
//!
//! Subadditivity, submodularity and monotonicity are decided by exhaustive
//! pair checks; the two fractional classes are decided by exact LPs over
//! coalition weights.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{unit, RatMatrix, RatVector, Rational};
use crate::lp::{self, LpProblem, LpStatus, RowSense, Sense};
use crate::objective::ObjectiveSpec;

/// Default dimension cap; each fractional check solves LPs with `2^m`
/// columns.
pub const DEFAULT_CLASS_DIM_CAP: usize = 12;

/// Exact verdicts for one function over the full Boolean lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub individually_subadditive: bool,
    pub subadditive: bool,
    pub submodular: bool,
    pub grand_fractionally_subadditive: bool,
    pub fractionally_subadditive: bool,
    pub monotone: bool,
}

/// Decide all class memberships of `f` over `B^m`.
pub fn class_checks(f: &ObjectiveSpec, m: usize) -> Result<ClassReport> {
    class_checks_capped(f, m, DEFAULT_CLASS_DIM_CAP)
}

pub fn class_checks_capped(f: &ObjectiveSpec, m: usize, dim_cap: usize) -> Result<ClassReport> {
    if m > dim_cap {
        return Err(Error::TooLarge { needed: m as u64, cap: dim_cap as u64 });
    }
    let size = 1usize << m;
    let mut values = Vec::with_capacity(size);
    for mask in 0..size {
        values.push(f.eval(&point_of_mask(m, mask), None)?);
    }

    let individually_subadditive = (0..size).all(|mask| {
        let mut bound = Rational::zero();
        for j in 0..m {
            if mask >> j & 1 == 1 {
                bound += &values[1 << j];
            }
        }
        values[mask] <= bound
    });

    // f(x + y) ≤ f(x) + f(y) over disjoint pairs.
    let mut subadditive = true;
    'sub: for x in 1..size {
        // Nonzero submasks of the complement of x.
        let comp = !x & (size - 1);
        let mut y = comp;
        while y > 0 {
            if values[x | y] > &values[x] + &values[y] {
                subadditive = false;
                break 'sub;
            }
            y = (y - 1) & comp;
        }
    }

    // Local characterization: f(x∨e_i∨e_j) + f(x) ≤ f(x∨e_i) + f(x∨e_j).
    let mut submodular = true;
    'subm: for x in 0..size {
        for i in 0..m {
            if x >> i & 1 == 1 {
                continue;
            }
            for j in (i + 1)..m {
                if x >> j & 1 == 1 {
                    continue;
                }
                let xi = x | 1 << i;
                let xj = x | 1 << j;
                if &values[xi | 1 << j] + &values[x] > &values[xi] + &values[xj] {
                    submodular = false;
                    break 'subm;
                }
            }
        }
    }

    let mut monotone = true;
    'mono: for x in 0..size {
        for i in 0..m {
            if x >> i & 1 == 0 && values[x] > values[x | 1 << i] {
                monotone = false;
                break 'mono;
            }
        }
    }

    let grand_fractionally_subadditive = fractional_check(m, &values, size - 1)?;
    let mut fractionally_subadditive = true;
    for v in 1..size {
        if !fractional_check_dominated(m, &values, v)? {
            fractionally_subadditive = false;
            break;
        }
    }

    Ok(ClassReport {
        individually_subadditive,
        subadditive,
        submodular,
        grand_fractionally_subadditive,
        fractionally_subadditive,
        monotone,
    })
}

fn point_of_mask(m: usize, mask: usize) -> RatVector {
    (0..m)
        .map(|j| if mask >> j & 1 == 1 { Rational::one() } else { Rational::zero() })
        .collect()
}

/// Balancedness at the grand coalition: the cheapest exact fractional
/// cover of `1_m` by coalitions costs no less than `f(1_m)`.
fn fractional_check(m: usize, values: &[Rational], grand: usize) -> Result<bool> {
    let columns: Vec<usize> = (1..values.len()).collect();
    match cover_lp(m, values, grand, &columns, RowSense::Eq)? {
        Some(optimum) => Ok(optimum >= values[grand]),
        // An unbounded cover drives the bound to minus infinity.
        None => Ok(false),
    }
}

/// Fractional subadditivity at `v`: covers restricted to submasks of `v`,
/// with componentwise ≥ in place of equality. Negative coalition values
/// make the cover unbounded below, which simply fails the bound.
fn fractional_check_dominated(m: usize, values: &[Rational], v: usize) -> Result<bool> {
    let mut columns = Vec::new();
    let mut w = v;
    loop {
        if w != 0 {
            columns.push(w);
        }
        if w == 0 {
            break;
        }
        w = (w - 1) & v;
    }
    match cover_lp(m, values, v, &columns, RowSense::Ge)? {
        Some(optimum) => Ok(optimum >= values[v]),
        None => Ok(false),
    }
}

/// `None` encodes an unbounded (minus-infinity) cover value.
fn cover_lp(
    m: usize,
    values: &[Rational],
    target: usize,
    columns: &[usize],
    row_sense: RowSense,
) -> Result<Option<Rational>> {
    let rows: Vec<usize> = (0..m).filter(|j| target >> j & 1 == 1).collect();
    let mut body = RatMatrix::zero(rows.len(), columns.len());
    for (ci, &mask) in columns.iter().enumerate() {
        for (ri, &j) in rows.iter().enumerate() {
            if mask >> j & 1 == 1 {
                *body.get_mut(ri, ci) = Rational::one();
            }
        }
    }
    let objective: RatVector = columns.iter().map(|&mask| values[mask].clone()).collect();
    let rhs: RatVector = rows.iter().map(|_| Rational::one()).collect();
    let problem = LpProblem::nonneg(
        Sense::Min,
        objective,
        body,
        vec![row_sense; rows.len()],
        rhs,
    )?;
    let sol = lp::solve(&problem)?;
    match sol.status {
        LpStatus::Optimal => Ok(Some(sol.value)),
        LpStatus::Unbounded => Ok(None),
        LpStatus::Infeasible => Err(Error::RelaxationNotOptimal("cover LP infeasible".into())),
    }
}

/// Ambient domain for the closed-form quadratic subadditivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticDomainKind {
    BooleanLattice,
    UnitBox,
    NonnegativeOrthant,
    FullSpace,
}

/// Closed-form individual-subadditivity verdict for `bᵀx + xᵀQx` by
/// inspecting the entries of `Q`. The linear part never matters; it is
/// accepted to mirror the call shape of the quadratic objective.
pub fn quadratic_is_characterization(
    kind: QuadraticDomainKind,
    _b: &[Rational],
    q: &RatMatrix,
) -> bool {
    let n = q.rows();
    let offdiag_nonpositive = (0..n)
        .all(|i| (0..n).all(|j| i == j || !q.get(i, j).is_positive()));
    match kind {
        QuadraticDomainKind::BooleanLattice => offdiag_nonpositive,
        QuadraticDomainKind::UnitBox => {
            offdiag_nonpositive && (0..n).all(|i| !q.get(i, i).is_negative())
        }
        QuadraticDomainKind::NonnegativeOrthant => {
            offdiag_nonpositive && (0..n).all(|i| q.get(i, i).is_zero())
        }
        QuadraticDomainKind::FullSpace => {
            (0..n).all(|i| (0..n).all(|j| q.get(i, j).is_zero()))
        }
    }
}

/// Finite witness grid that decides individual subadditivity of a
/// quadratic over the given continuous domain: grid-IS holds exactly when
/// domain-IS holds.
pub fn quadratic_witness_grid(kind: QuadraticDomainKind, m: usize) -> Vec<RatVector> {
    use crate::exact::rat;
    let levels: Vec<Rational> = match kind {
        QuadraticDomainKind::BooleanLattice => vec![Rational::zero(), Rational::one()],
        QuadraticDomainKind::UnitBox => vec![Rational::zero(), rat(1, 2), Rational::one()],
        QuadraticDomainKind::NonnegativeOrthant => {
            vec![Rational::zero(), rat(1, 2), Rational::one(), rat(2, 1)]
        }
        QuadraticDomainKind::FullSpace => vec![
            -Rational::one(),
            Rational::zero(),
            rat(1, 2),
            Rational::one(),
            rat(2, 1),
        ],
    };
    let mut grid: Vec<RatVector> = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::with_capacity(grid.len() * levels.len());
        for p in &grid {
            for l in &levels {
                let mut q = p.clone();
                q.push(l.clone());
                next.push(q);
            }
        }
        grid = next;
    }
    // Make sure the basis points are present whatever the level set.
    for j in 0..m {
        let e = unit(m, j);
        if !grid.contains(&e) {
            grid.push(e);
        }
    }
    grid
}
