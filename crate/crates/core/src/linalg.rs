//! Dense exact matrices, reduced row-echelon form, kernels, images and
//! quotient coordinates.

use std::fmt;

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vector is not in the span of the subspace and its complement")]
    NotInSpan,
}

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = T::one();
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::Dimension(format!(
                    "column {c} has length {} instead of {rows}",
                    col.len()
                )));
            }
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        Ok(m)
    }

    /// Builds a `rows × columns.len()` matrix from `(row, value)` lists.
    ///
    /// Panics if a row index is out of range.
    pub fn from_sparse_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.into_iter().enumerate() {
            for (r, x) in col {
                m[(r, c)] = x;
            }
        }
        m
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, LinalgError> {
        Self::from_row_major(rows, cols, entries.iter().map(|&n| T::from_int(n)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = &self[(r, k)];
                if x.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let y = &rhs[(k, c)];
                    if !y.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + x.clone() * y.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![T::zero(); self.rows];
        for (k, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (r, acc) in out.iter_mut().enumerate() {
                let y = &self.entries[r * self.cols + k];
                if !y.is_zero() {
                    *acc = acc.clone() + y.clone() * x.clone();
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref<T> {
        let (rows, pivots) = sparse_rref(self.sparse_rows(), self.cols);
        let mut reduced = Self::zeros(self.rows, self.cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, x) in row {
                reduced[(r, c)] = x;
            }
        }
        Rref { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        sparse_rref(self.sparse_rows(), self.cols).1.len()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace<T> {
        let (rows, pivots) = sparse_rref(self.sparse_rows(), self.cols);
        let mut slot = vec![None; self.cols];
        let mut free = 0;
        for (c, s) in slot.iter_mut().enumerate() {
            if pivots.binary_search(&c).is_err() {
                *s = Some(free);
                free += 1;
            }
        }
        let mut vectors: Vec<Vec<T>> = (0..self.cols)
            .filter_map(|c| slot[c].map(|_| c))
            .map(|c| {
                let mut v = vec![T::zero(); self.cols];
                v[c] = T::one();
                v
            })
            .collect();
        for (row, &p) in rows.iter().zip(&pivots) {
            for (c, x) in row {
                if let Some(k) = slot[*c] {
                    vectors[k][p] = -x.clone();
                }
            }
        }
        Subspace::span(self.cols, vectors)
    }

    pub fn column_space(&self) -> Subspace<T> {
        let mut rows: Vec<SparseRow<T>> = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, x) in self.row(r).iter().enumerate() {
                if !x.is_zero() {
                    rows[c].push((r, x.clone()));
                }
            }
        }
        Subspace::from_sparse(self.rows, rows)
    }

    /// Indices of the columns chosen greedily, left to right, to form a basis
    /// of the column space.
    pub fn independent_columns(&self) -> Vec<usize> {
        sparse_rref(self.sparse_rows(), self.cols).1
    }

    /// Some solution of `self * x = rhs`, free variables set to zero.
    pub fn solve(&self, rhs: &[T]) -> Result<Option<Vec<T>>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "right-hand side of length {} against {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut augmented = self.sparse_rows();
        for (row, b) in augmented.iter_mut().zip(rhs) {
            if !b.is_zero() {
                row.push((self.cols, b.clone()));
            }
        }
        let (rows, pivots) = sparse_rref(augmented, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            if let Some((c, b)) = row.last() {
                if *c == self.cols {
                    x[p] = b.clone();
                }
            }
        }
        Ok(Some(x))
    }

    fn sparse_rows(&self) -> Vec<SparseRow<T>> {
        (0..self.rows).map(|r| to_sparse(self.row(r))).collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in 0..self.rows {
            list.entry(&&self.entries[r * self.cols..(r + 1) * self.cols]);
        }
        list.finish()
    }
}

/// Result of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq)]
pub struct Rref<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// A subspace of `T^n` stored as the nonzero rows of a reduced echelon form.
///
/// Pivot columns are strictly increasing, each pivot is 1, and every other
/// vector vanishes in that column.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    ambient_dim: usize,
    vectors: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    /// Span of arbitrary vectors of length `ambient_dim`, canonicalized.
    ///
    /// Panics if a vector has the wrong length.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<T>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "spanning vectors must have length {ambient_dim}"
        );
        Self::from_sparse(ambient_dim, vectors.iter().map(|v| to_sparse(v)).collect())
    }

    fn from_sparse(ambient_dim: usize, rows: Vec<SparseRow<T>>) -> Self {
        let (rows, pivots) = sparse_rref(rows, ambient_dim);
        let vectors = rows.into_iter().map(|r| to_dense(r, ambient_dim)).collect();
        Subspace { ambient_dim, vectors, pivots }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|k| {
                let mut v = vec![T::zero(); ambient_dim];
                v[k] = T::one();
                v
            })
            .collect();
        Subspace { ambient_dim, vectors, pivots: (0..ambient_dim).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.residue(v).iter().all(T::is_zero)
    }

    /// `v` minus its component along the echelon basis; zero iff `v` lies in
    /// the subspace.
    pub fn residue(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ambient_dim);
        // each basis vector is 1 at its pivot and 0 at every other pivot
        let mut residue = v.to_vec();
        for (basis, &p) in self.vectors.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, y) in residue.iter_mut().zip(basis) {
                if !y.is_zero() {
                    *x = x.clone() - factor.clone() * y.clone();
                }
            }
        }
        residue
    }

    /// Indices of the candidates chosen greedily, in order, to extend this
    /// subspace; their classes form a basis of `(self + span(candidates)) / self`.
    pub fn extend_greedily(&self, candidates: &[Vec<T>]) -> Vec<usize> {
        let mut rows: Vec<SparseRow<T>> = vec![Vec::new(); self.ambient_dim];
        let columns = self.vectors.iter().chain(candidates);
        for (c, v) in columns.enumerate() {
            assert_eq!(v.len(), self.ambient_dim);
            for (r, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    rows[r].push((c, x.clone()));
                }
            }
        }
        let (_, pivots) = sparse_rref(rows, self.dim() + candidates.len());
        pivots.into_iter().filter(|&c| c >= self.dim()).map(|c| c - self.dim()).collect()
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace<T>) -> Subspace<T> {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let vectors = self.vectors.iter().chain(&other.vectors).cloned().collect();
        Subspace::span(self.ambient_dim, vectors)
    }
}

/// Coordinates of the class of `v` modulo `sub` in the basis `complement`.
///
/// `complement` is an explicit list so callers control the basis order; it
/// must be independent modulo `sub`. The result `c` satisfies
/// `v - sum(c[k] * complement[k])` lies in `sub`.
pub fn quotient_coordinates<T: Field>(
    v: &[T],
    sub: &Subspace<T>,
    complement: &[Vec<T>],
) -> Result<Vec<T>, LinalgError> {
    let n = sub.ambient_dim();
    if v.len() != n || complement.iter().any(|c| c.len() != n) {
        return Err(LinalgError::Dimension(format!("vectors must have length {n}")));
    }
    // Reducing against the echelon basis of `sub` is a projection killing
    // exactly `sub`, so only a system in the complement remains.
    let residues: Vec<Vec<T>> = complement.iter().map(|c| sub.residue(c)).collect();
    let system = Matrix::from_columns(n, &residues)?;
    system.solve(&sub.residue(v))?.ok_or(LinalgError::NotInSpan)
}

type SparseRow<T> = Vec<(usize, T)>;

fn to_sparse<T: Field>(v: &[T]) -> SparseRow<T> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect()
}

fn to_dense<T: Field>(row: SparseRow<T>, len: usize) -> Vec<T> {
    let mut v = vec![T::zero(); len];
    for (c, x) in row {
        v[c] = x;
    }
    v
}

/// `u - factor * v` on sorted sparse rows.
fn sub_scaled<T: Field>(u: &[(usize, T)], factor: &T, v: &[(usize, T)]) -> SparseRow<T> {
    let mut out = Vec::with_capacity(u.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < v.len() {
        let take_u = j == v.len() || (i < u.len() && u[i].0 < v[j].0);
        let take_v = i == u.len() || (j < v.len() && v[j].0 < u[i].0);
        if take_u {
            out.push(u[i].clone());
            i += 1;
        } else if take_v {
            out.push((v[j].0, -(factor.clone() * v[j].1.clone())));
            j += 1;
        } else {
            let x = u[i].1.clone() - factor.clone() * v[j].1.clone();
            if !x.is_zero() {
                out.push((u[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Gauss-Jordan on sorted sparse rows. Returns the nonzero reduced rows and
/// their pivot columns. Rows at or below the current one never have entries
/// left of the current column, so a row qualifies as pivot exactly when it
/// starts there.
fn sparse_rref<T: Field>(mut rows: Vec<SparseRow<T>>, ncols: usize) -> (Vec<SparseRow<T>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| rows[r].first().map(|e| e.0) == Some(col)) else {
            continue;
        };
        rows.swap(top, p);
        let mut pivot = std::mem::take(&mut rows[top]);
        let inv = T::one() / pivot[0].1.clone();
        if !inv.is_one() {
            for e in pivot.iter_mut() {
                e.1 = e.1.clone() * inv.clone();
            }
        }
        for other in rows.iter_mut() {
            if let Ok(k) = other.binary_search_by_key(&col, |e| e.0) {
                let factor = other[k].1.clone();
                *other = sub_scaled(other, &factor, &pivot);
            }
        }
        rows[top] = pivot;
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

pub fn dot<T: Field>(u: &[T], v: &[T]) -> T {
    u.iter()
        .zip(v)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn m(rows: usize, cols: usize, e: &[i64]) -> Matrix<Q> {
        Matrix::from_ints(rows, cols, e).unwrap()
    }

    #[test]
    fn rref_identity() {
        let r = Matrix::<Q>::identity(2).rref();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced, Matrix::identity(2));
    }

    #[test]
    fn rref_zero() {
        let r = Matrix::<Q>::zeros(3, 3).rref();
        assert_eq!(r.rank(), 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let r = m(2, 2, &[1, 2, 2, 4]).rref();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.reduced, m(2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn rref_with_fractions() {
        let r = m(2, 3, &[2, 1, 0, 4, 0, 1]).rref();
        assert_eq!(r.pivots, vec![0, 1]);
        let half = q(1) / q(2);
        assert_eq!(r.reduced.row(0), &[q(1), q(0), q(1) / q(4)]);
        assert_eq!(r.reduced.row(1), &[q(0), q(1), -half]);
    }

    #[test]
    fn nullspace_cases() {
        assert_eq!(Matrix::<Q>::identity(3).nullspace().dim(), 0);
        let z = Matrix::<Q>::zeros(2, 3).nullspace();
        assert_eq!(z.dim(), 3);
        let k = m(1, 2, &[1, 1]).nullspace();
        assert_eq!(k.vectors(), &[vec![q(1), q(-1)]]);
    }

    #[test]
    fn column_space_cases() {
        let s = Matrix::<Q>::identity(2).column_space();
        assert_eq!(s.vectors(), &[vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert_eq!(Matrix::<Q>::zeros(2, 2).column_space().dim(), 0);
        let c = m(2, 1, &[1, 2]).column_space();
        assert_eq!(c.vectors(), &[vec![q(1), q(2)]]);
    }

    #[test]
    fn quotient_coordinate_cases() {
        let sub = Subspace::span(2, vec![vec![q(1), q(0)]]);
        let coords = quotient_coordinates(&[q(3), q(5)], &sub, &[vec![q(0), q(1)]]).unwrap();
        assert_eq!(coords, vec![q(5)]);

        let in_sub = quotient_coordinates(&[q(7), q(0)], &sub, &[vec![q(0), q(1)]]).unwrap();
        assert_eq!(in_sub, vec![q(0)]);

        let std: Vec<Vec<Q>> = Matrix::<Q>::identity(3).column_space().vectors().to_vec();
        let v = vec![q(4), q(-1), q(2)];
        assert_eq!(quotient_coordinates(&v, &Subspace::zero(3), &std).unwrap(), v);
    }

    #[test]
    fn quotient_coordinates_outside_span_fails() {
        let sub = Subspace::span(3, vec![vec![q(1), q(0), q(0)]]);
        let err = quotient_coordinates(&[q(0), q(0), q(1)], &sub, &[vec![q(0), q(1), q(0)]]);
        assert_eq!(err, Err(LinalgError::NotInSpan));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(2, 1, &[1, 1]);
        assert_eq!(a.solve(&[q(1), q(2)]).unwrap(), None);
        assert_eq!(a.solve(&[q(3), q(3)]).unwrap(), Some(vec![q(3)]));
    }

    #[test]
    fn fixed_width_scalars_agree() {
        let a = Matrix::<num_rational::Ratio<i64>>::from_ints(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(m(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]).rank(), 2);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Q>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |e| m(r, c, &e))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in small_matrix()) {
            prop_assert_eq!(a.rank() + a.nullspace().dim(), a.cols());
        }

        #[test]
        fn rref_idempotent(a in small_matrix()) {
            let once = a.rref();
            let twice = once.reduced.rref();
            prop_assert_eq!(&twice.reduced, &once.reduced);
            prop_assert_eq!(twice.pivots, once.pivots);
        }

        #[test]
        fn nullspace_vectors_are_exact_kernel(a in small_matrix()) {
            for v in a.nullspace().vectors() {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| x == &q(0)));
            }
        }

        #[test]
        fn column_space_matches_rank(a in small_matrix()) {
            let im = a.column_space();
            prop_assert_eq!(im.dim(), a.rank());
            for c in 0..a.cols() {
                prop_assert!(im.contains(&a.column(c)));
            }
            for w in im.pivots().windows(2) {
                prop_assert!(w[0] < w[1]);
            }
        }
    }
}
