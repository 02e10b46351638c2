//! Exact rational dense linear algebra.
//!
//! Everything here works over arbitrary-precision rationals, so every verdict
//! (determinant value, rank, positive semidefiniteness, projection length) is a
//! certificate rather than a numerical estimate. Matrices are small (at most a
//! few dozen rows) and stored densely.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// `num/den` as a [`Rat`]. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// An integer as a [`Rat`].
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix rows are not all of length {0}")]
    NotSquare(usize),
    #[error("right-hand side is not in the column space of the Gram matrix")]
    InconsistentSystem,
}

/// Dense square matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            entries: vec![Rat::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn diag(values: &[Rat]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RatMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinError::NotSquare(n));
        }
        Ok(RatMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer matrices; panics if not square.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// First asymmetric position, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.n);
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rat], y: &[Rat]) -> Rat {
        dot(x, &self.mul_vec(y))
    }

    /// Principal submatrix on the given index list.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    /// `Pᵀ M P` for a square transform `P`.
    pub fn congruence(&self, p: &RatMatrix) -> Self {
        assert_eq!(p.n, self.n);
        let n = self.n;
        let mp = Self::from_fn(n, |i, j| {
            (0..n).fold(Rat::zero(), |acc, k| acc + &self[(i, k)] * &p[(k, j)])
        });
        Self::from_fn(n, |i, j| {
            (0..n).fold(Rat::zero(), |acc, k| acc + &p[(k, i)] * &mp[(k, j)])
        })
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.n + j]
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Tridiagonal `(-1, 2, -1)` matrix of size `r`: the Gram matrix of a path of
/// hatted vectors, i.e. the Cartan matrix of type A_r.
pub fn gram_path(r: usize) -> RatMatrix {
    assert!(r >= 1, "gram_path needs r >= 1");
    RatMatrix::from_fn(r, |i, j| match i.abs_diff(j) {
        0 => int(2),
        1 => int(-1),
        _ => Rat::zero(),
    })
}

/// Circulant Gram matrix of the hatted vectors around a cycle of length `t`.
pub fn gram_cycle(t: usize) -> RatMatrix {
    assert!(t >= 3, "gram_cycle needs t >= 3");
    RatMatrix::from_fn(t, |i, j| {
        let d = i.abs_diff(j);
        if d == 0 {
            int(2)
        } else if d == 1 || d == t - 1 {
            int(-1)
        } else {
            Rat::zero()
        }
    })
}

/// Exact determinant by Bareiss fraction-free elimination on the integer
/// matrix obtained by clearing denominators.
pub fn det(m: &RatMatrix) -> Rat {
    let n = m.dim();
    if n == 0 {
        return Rat::one();
    }
    let scale = m
        .entries
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&scale / x.denom()))
                .collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Rat::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let mut d = a[n - 1][n - 1].clone();
    if negate {
        d = -d;
    }
    Rat::new(d, num_traits::pow(scale, n))
}

/// Rank of an arbitrary (not necessarily square) list of rows, by elimination
/// with full pivoting.
pub fn rank_rows(mut rows: Vec<Vec<Rat>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut cols: Vec<usize> = (0..ncols).collect();
    let mut rank = 0;
    while rank < nrows.min(ncols) {
        let pivot = (rank..nrows)
            .flat_map(|i| (rank..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !rows[i][cols[j]].is_zero());
        let Some((pi, pj)) = pivot else { break };
        rows.swap(rank, pi);
        cols.swap(rank, pj);
        let pc = cols[rank];
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[pc].is_zero() {
                continue;
            }
            let f = &row[pc] / &pivot_row[pc];
            for &c in &cols[rank..] {
                let delta = &f * &pivot_row[c];
                row[c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(m: &RatMatrix) -> usize {
    rank_rows(m.to_rows())
}

/// Exact positive-semidefiniteness test with rank.
///
/// Symmetric elimination with positive diagonal pivots. A negative diagonal
/// entry in any Schur complement, or a zero diagonal entry sitting in a
/// nonzero row, refutes semidefiniteness. For PSD input the rank is the
/// number of positive pivots; otherwise the plain rank is reported.
pub fn psd_rank(m: &RatMatrix) -> Result<(bool, usize), LinError> {
    if let Some((row, col)) = m.asymmetry() {
        return Err(LinError::NotSymmetric { row, col });
    }
    let mut s = m.to_rows();
    let mut active: Vec<usize> = (0..m.dim()).collect();
    let mut pivots = 0;
    loop {
        if active.iter().any(|&i| s[i][i].is_negative()) {
            return Ok((false, rank(m)));
        }
        let Some(pos) = active.iter().position(|&i| s[i][i].is_positive()) else {
            // all remaining diagonal entries vanish; PSD iff the block is zero
            let nonzero = active
                .iter()
                .any(|&i| active.iter().any(|&j| !s[i][j].is_zero()));
            if nonzero {
                return Ok((false, rank(m)));
            }
            return Ok((true, pivots));
        };
        let p = active.remove(pos);
        let pivot_row = s[p].clone();
        for &i in &active {
            if pivot_row[i].is_zero() {
                continue;
            }
            let f = &pivot_row[i] / &pivot_row[p];
            for &j in &active {
                let delta = &f * &pivot_row[j];
                s[i][j] -= delta;
            }
        }
        pivots += 1;
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
fn rref(rows: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// One exact solution of `m x = b` (free variables set to zero).
pub fn solve(m: &RatMatrix, b: &[Rat]) -> Result<Vec<Rat>, LinError> {
    let n = m.dim();
    if b.len() != n {
        return Err(LinError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Err(LinError::InconsistentSystem);
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Ok(x)
}

/// Basis of the right kernel of `m`.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let n = m.dim();
    let mut rows = m.to_rows();
    let pivots = rref(&mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Squared length of the orthogonal projection of a target vector onto the
/// span of generators `g_i`, given only `gram = (g_i, g_j)` and
/// `b_i = (target, g_i)`.
///
/// If `gram · x = b` then `p = Σ x_i g_i` and `(p, p) = bᵀx`, which does not
/// depend on which solution is chosen. Singular Gram matrices are fine as long
/// as `b` is in the column space.
pub fn projection_sq_norm(gram: &RatMatrix, b: &[Rat]) -> Result<Rat, LinError> {
    let x = solve(gram, b)?;
    Ok(dot(b, &x))
}

/// `serde` helpers writing rationals as `{"num": "...", "den": "..."}`.
pub mod serde_rat {
    use serde::ser::{SerializeSeq, Serializer};
    use serde::Serialize;

    use super::Rat;

    #[derive(Serialize)]
    struct Repr {
        num: String,
        den: String,
    }

    impl From<&Rat> for Repr {
        fn from(r: &Rat) -> Self {
            Repr {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            }
        }
    }

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        Repr::from(r).serialize(s)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&Repr::from(r))?;
            }
            seq.end()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref().map(Repr::from).serialize(s)
        }
    }
}
