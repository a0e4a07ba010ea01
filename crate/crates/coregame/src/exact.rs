//! Exact rational scalars, vectors and matrices.
//!
//! Every quantity in this crate is an arbitrary-precision rational; the core
//! characterizations are equalities of optimal values, so there is no room
//! for rounding. Values are always stored reduced with a positive
//! denominator.

use num::{BigInt, BigRational, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. Always reduced, denominator > 0.
pub type Rational = BigRational;

/// Dense vector of rationals.
pub type RatVector = Vec<Rational>;

/// Build a rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    BigRational::from_integer(BigInt::from(num))
}

/// Parse `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Render a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a vector as `(a, b, ...)` with rationals in `p/q` form.
pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn zeros(len: usize) -> RatVector {
    vec![Rational::zero(); len]
}

/// Unit vector `e_j` of the given length.
pub fn unit(len: usize, j: usize) -> RatVector {
    let mut v = zeros(len);
    v[j] = rat_int(1);
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot length mismatch");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn vec_sum(v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for x in v {
        acc += x;
    }
    acc
}

pub fn vec_scale(v: &[Rational], s: &Rational) -> RatVector {
    v.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Componentwise positive part `x ∨ 0`.
pub fn positive_part(v: &[Rational]) -> RatVector {
    v.iter()
        .map(|x| if x.is_positive() { x.clone() } else { Rational::zero() })
        .collect()
}

/// Dense row-major matrix of rationals with fixed dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = rat_int(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<RatVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer convenience constructor used widely in tests and generators.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    *out.get_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn is_binary(&self) -> bool {
        self.data
            .iter()
            .all(|x| x.is_zero() || *x == rat_int(1))
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn diagonal(&self) -> RatVector {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }
}

/// Solve `M x = rhs` exactly by Gaussian elimination.
pub fn gauss_solve(m: &RatMatrix, rhs: &[Rational]) -> Result<RatVector> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "gauss_solve needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() != rhs.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{} but rhs has length {}",
            m.rows(),
            m.cols(),
            rhs.len()
        )));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut b = rhs.to_vec();

    let mut pivot_of_col = vec![usize::MAX; n];
    let mut used_row = vec![false; n];
    for col in 0..n {
        let pivot_row = (0..n).find(|&r| !used_row[r] && !a.get(r, col).is_zero());
        let Some(pr) = pivot_row else {
            return Err(Error::SingularMatrix);
        };
        used_row[pr] = true;
        pivot_of_col[col] = pr;
        let pivot = a.get(pr, col).clone();
        for r in 0..n {
            if r == pr || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col) / &pivot;
            for c in 0..n {
                let delta = &factor * a.get(pr, c);
                *a.get_mut(r, c) -= delta;
            }
            let delta = &factor * &b[pr];
            b[r] -= delta;
        }
    }

    let mut x = zeros(n);
    for col in 0..n {
        let pr = pivot_of_col[col];
        x[col] = &b[pr] / a.get(pr, col);
    }
    Ok(x)
}

/// Invert a square matrix exactly. Fails on singular input.
pub fn invert(m: &RatMatrix) -> Result<RatMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::DimensionMismatch("invert needs a square matrix".into()));
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        cols.push(gauss_solve(m, &unit(n, j))?);
    }
    let mut out = RatMatrix::zero(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            *out.get_mut(i, j) = col[i].clone();
        }
    }
    Ok(out)
}

/// Left Moore-Penrose inverse `(QᵀQ)⁻¹Qᵀ` of a full-column-rank matrix.
///
/// Satisfies `Q† Q = I_k` exactly; fails with `RankDeficient` when the
/// columns are dependent.
pub fn left_pseudo_inverse(q: &RatMatrix) -> Result<RatMatrix> {
    let qt = q.transpose();
    let gram = qt.matmul(q);
    let gram_inv = invert(&gram).map_err(|e| match e {
        Error::SingularMatrix => Error::RankDeficient,
        other => other,
    })?;
    Ok(gram_inv.matmul(&qt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_format_roundtrip() {
        for s in ["3/2", "-7", "0", "22/7", "-5/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // Unreduced and oddly signed inputs normalize.
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn rationals_stay_reduced_with_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom().is_positive());
        let z = rat(0, 5);
        assert_eq!(format_rational(&z), "0");
    }

    #[test]
    fn gauss_identity() {
        let m = RatMatrix::identity(2);
        let x = gauss_solve(&m, &[rat(3, 2), rat_int(-1)]).unwrap();
        assert_eq!(x, vec![rat(3, 2), rat_int(-1)]);
    }

    #[test]
    fn gauss_diagonal() {
        let m = RatMatrix::from_i64_rows(&[&[2, 0], &[0, 4]]);
        let x = gauss_solve(&m, &[rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 4)]);
    }

    #[test]
    fn gauss_rank_deficient() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            gauss_solve(&m, &[rat_int(1), rat_int(0)]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn gauss_general_solution_is_exact() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 3), rat_int(2), rat_int(-1)],
            vec![rat_int(4), rat(5, 7), rat_int(0)],
            vec![rat_int(1), rat_int(1), rat_int(1)],
        ]);
        let rhs = vec![rat(9, 2), rat_int(-3), rat(1, 5)];
        let x = gauss_solve(&m, &rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs);
    }

    #[test]
    fn pseudo_inverse_identity() {
        let q = RatMatrix::identity(3);
        assert_eq!(left_pseudo_inverse(&q).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn pseudo_inverse_single_column() {
        let q = RatMatrix::from_i64_rows(&[&[1], &[1]]);
        let pinv = left_pseudo_inverse(&q).unwrap();
        assert_eq!(pinv, RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 2)]]));
    }

    #[test]
    fn pseudo_inverse_left_identity() {
        let q = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat_int(2), rat_int(-1)],
            vec![rat(1, 3), rat_int(4)],
        ]);
        let pinv = left_pseudo_inverse(&q).unwrap();
        assert_eq!(pinv.matmul(&q), RatMatrix::identity(2));
    }

    #[test]
    fn pseudo_inverse_rank_deficient() {
        let q = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[3, 6]]);
        assert_eq!(left_pseudo_inverse(&q), Err(Error::RankDeficient));
    }
}
