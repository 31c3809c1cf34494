//! Dense exact linear algebra over the rationals.
//!
//! Everything here is deterministic: pivots are chosen by first-nonzero scan
//! in row order, and nullspace vectors are emitted in ascending free-column
//! order. Two runs on the same matrix produce identical output, which the
//! report layer relies on.

use crate::rat::{rat, Rat};
use num::{One, Zero};
use std::fmt;

/// Row-major dense matrix over `ℚ`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| crate::rat::fmt_rat(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl MatrixQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatrixQ { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                *m.at_mut(r, c) = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() && !self.at(r, c).is_zero() {
                        acc += self.at(r, c) * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul_mat");
        let mut out = MatrixQ::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MatrixQ {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= c;
        }
        out
    }

    /// Matrix power; `pow(0)` is the identity (matrix must be square).
    pub fn pow(&self, n: usize) -> MatrixQ {
        assert_eq!(self.rows, self.cols, "pow of non-square matrix");
        let mut acc = MatrixQ::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul_mat(self);
        }
        acc
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<MatrixQ> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = MatrixQ::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Rat::one();
        }
        let (red, pivots) = rref(&aug);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(MatrixQ::from_fn(n, n, |r, c| red.at(r, n + c).clone()))
    }

    pub fn flatten(&self) -> Vec<Rat> {
        self.entries.clone()
    }
}

/// A list of vectors spanning a subspace of `ℚ^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Rat>>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Matrix whose columns are the basis vectors.
    pub fn as_columns(&self) -> MatrixQ {
        MatrixQ::from_fn(self.ambient_dim, self.vectors.len(), |r, c| self.vectors[c][r].clone())
    }

    /// Whether `v` lies in the span (exact membership test).
    pub fn contains(&self, v: &[Rat]) -> bool {
        solve(&self.as_columns(), v).is_some()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        solve(&self.as_columns(), v)
    }
}

/// Reduced row echelon form together with the pivot column list.
///
/// Pivot selection: first row from the top with a nonzero entry in the
/// current column. Pivots are normalized to 1 and their columns cleared.
pub fn rref(m: &MatrixQ) -> (MatrixQ, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols() {
                let tmp = a.at(p, c).clone();
                *a.at_mut(p, c) = a.at(row, c).clone();
                *a.at_mut(row, c) = tmp;
            }
        }
        let inv = rat(1) / a.at(row, col).clone();
        for c in 0..a.cols() {
            let v = a.at(row, c).clone() * &inv;
            *a.at_mut(row, c) = v;
        }
        for r in 0..a.rows() {
            if r != row && !a.at(r, col).is_zero() {
                let factor = a.at(r, col).clone();
                for c in 0..a.cols() {
                    let v = a.at(r, c).clone() - &factor * a.at(row, c);
                    *a.at_mut(r, c) = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &MatrixQ) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m·x = 0}`, one vector per free column in ascending order.
pub fn nullspace_basis(m: &MatrixQ) -> SubspaceBasis {
    let (red, pivots) = rref(m);
    let n = m.cols();
    let mut vectors = Vec::new();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = Some(i);
        }
        v
    };
    for free in 0..n {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vec = vec![Rat::zero(); n];
        vec[free] = Rat::one();
        for (col, slot) in pivot_set.iter().enumerate() {
            if let Some(prow) = slot {
                vec[col] = -red.at(*prow, free).clone();
            }
        }
        vectors.push(vec);
    }
    SubspaceBasis { ambient_dim: n, vectors }
}

/// One exact solution of `m·x = b` (free variables set to 0), or `None`
/// when the system is inconsistent.
pub fn solve(m: &MatrixQ, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows(), "dimension mismatch in solve");
    let mut aug = MatrixQ::zero(m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            *aug.at_mut(r, c) = m.at(r, c).clone();
        }
        *aug.at_mut(r, m.cols()) = b[r].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.contains(&m.cols()) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = red.at(row, m.cols()).clone();
    }
    Some(x)
}

/// Rank of the subspace the vectors span.
pub fn span_rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&MatrixQ::from_rows(vectors.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> MatrixQ {
        MatrixQ::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn rank_of_rank_one_matrix() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let ns = nullspace_basis(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(ns.vectors, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn nullspace_of_invertible_is_trivial() {
        let ns = nullspace_basis(&m(&[&[1, 1], &[0, 1]]));
        assert_eq!(ns.dim(), 0);
        assert_eq!(ns.ambient_dim, 2);
    }

    #[test]
    fn underdetermined_solve_zeroes_free_variables() {
        let x = solve(&m(&[&[1, 1]]), &[rat(2)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(0)]);
    }

    #[test]
    fn inconsistent_solve_is_none() {
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul_mat(&inv), MatrixQ::identity(2));
        assert_eq!(inv.mul_mat(&a), MatrixQ::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn exactness_survives_awkward_denominators() {
        let a = MatrixQ::from_rows(vec![
            vec![ratq(1, 3), ratq(1, 7)],
            vec![ratq(2, 3), ratq(2, 7)],
        ]);
        assert_eq!(rank(&a), 1);
        let ns = nullspace_basis(&a);
        assert_eq!(ns.dim(), 1);
        assert!(a.mul_vec(&ns.vectors[0]).iter().all(|x| x.is_zero()));
    }

    proptest! {
        #[test]
        fn rank_nullity_holds_exactly(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-4i64..5, 25)
        ) {
            let a = MatrixQ::from_fn(rows, cols, |r, c| rat(seed[(r * cols + c) % seed.len()]));
            prop_assert_eq!(rank(&a) + nullspace_basis(&a).dim(), cols);
        }

        #[test]
        fn nullspace_vectors_are_annihilated(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-4i64..5, 25)
        ) {
            let a = MatrixQ::from_fn(rows, cols, |r, c| rat(seed[(r * 2 + c * 3) % seed.len()]));
            for v in nullspace_basis(&a).vectors {
                prop_assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn solve_result_satisfies_system(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-3i64..4, 30)
        ) {
            let a = MatrixQ::from_fn(rows, cols, |r, c| rat(seed[(r * cols + c) % seed.len()]));
            let x0: Vec<Rat> = (0..cols).map(|c| rat(seed[(7 * c + 1) % seed.len()])).collect();
            let b = a.mul_vec(&x0);
            let x = solve(&a, &b).expect("constructed system must be consistent");
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }
}
