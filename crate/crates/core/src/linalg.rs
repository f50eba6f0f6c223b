//! Exact sparse matrices and rank/kernel computations.
//!
//! Storage is row-major sparse (zero entries are never stored); semantics
//! are dense. Ranks are computed by fraction-free elimination over the
//! integers after clearing denominators row by row, with every working row
//! kept primitive (content divided out) so coefficient growth stays bounded
//! by the size of the true minors rather than the product of pivots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ExactInteger, Ring};

/// Sparse row: `(column, value)` pairs sorted by column, no explicit zeros.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Default entry cap (rows x cols) for a single exact elimination.
pub const DEFAULT_MAX_ENTRIES: usize = 2_000_000;

/// Size limits applied before any elimination starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_entries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }
}

impl Limits {
    pub fn check(&self, rows: usize, cols: usize) -> Result<()> {
        match rows.checked_mul(cols) {
            Some(n) if n <= self.max_entries => Ok(()),
            _ => Err(Error::InstanceTooLarge {
                rows,
                cols,
                cap: self.max_entries,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow<T>>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, T::one()));
        }
        m
    }

    /// Builds a matrix from dense rows; every row must have `cols` entries.
    pub fn from_dense(cols: usize, dense: Vec<Vec<T>>) -> Self {
        let rows = dense.len();
        let data = dense
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from sparse rows; entries are sorted and zeros dropped.
    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseRow<T>>) -> Self {
        let mut m = Self::zeros(0, cols);
        for row in rows {
            m.push_row(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[(usize, T)]> {
        self.data.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Adds `value` to entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, value: T) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if value.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                let sum = row[i].1.clone() + value;
                if sum.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = sum;
                }
            }
            Err(i) => row.insert(i, (c, value)),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        let current = self.get(r, c);
        self.add_to(r, c, value - current);
    }

    pub fn push_row(&mut self, mut row: SparseRow<T>) {
        row.sort_by_key(|e| e.0);
        let mut merged: SparseRow<T> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.cols, "column {c} out of bounds");
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = last.1.clone() + v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        self.data.push(merged);
        self.rows += 1;
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        self.data
            .iter()
            .map(|row| {
                let mut dense = vec![T::zero(); self.cols];
                for (c, v) in row {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(c, v)| (*c, f(v)))
                        .filter(|e| !e.1.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c].push((r, v.clone()));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(T::zero(), |acc, (c, x)| acc + x.clone() * v[*c].clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let e = acc.entry(*c).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            out.data[r] = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
        }
        out
    }

    /// Multiplies row `r` by `factor`.
    pub fn scale_row(&mut self, r: usize, factor: &T) {
        for e in self.data[r].iter_mut() {
            e.1 = e.1.clone() * factor.clone();
        }
        self.data[r].retain(|e| !e.1.is_zero());
    }

    /// Returns the matrix with rows reordered: output row `i` is input row `order[i]`.
    pub fn select_rows(&self, order: &[usize]) -> Self {
        Matrix {
            rows: order.len(),
            cols: self.cols,
            data: order.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    /// Returns the matrix with columns relabeled: input column `c` becomes `perm[c]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| {
                    let mut out: SparseRow<T> = row.iter().map(|(c, v)| (perm[*c], v.clone())).collect();
                    out.sort_by_key(|e| e.0);
                    out
                })
                .collect(),
        }
    }
}

/// Scalars that elimination can reduce to primitive integer rows.
pub trait ExactScalar: Ring {
    type Integer: ExactInteger;

    /// Scales a sparse row by a nonzero constant so that all entries become integers.
    fn integer_row(row: &[(usize, Self)]) -> SparseRow<Self::Integer>;

    fn to_ratio(&self) -> Ratio<Self::Integer>;
}

impl<I: ExactInteger> ExactScalar for Ratio<I> {
    type Integer = I;

    fn integer_row(row: &[(usize, Self)]) -> SparseRow<I> {
        let denom = row.iter().fold(I::one(), |acc, (_, v)| acc.lcm(v.denom()));
        row.iter()
            .map(|(c, v)| (*c, v.numer().clone() * (denom.clone() / v.denom().clone())))
            .collect()
    }

    fn to_ratio(&self) -> Ratio<I> {
        self.clone()
    }
}

macro_rules! integer_scalar {
    ($($t:ty),*) => {$(
        impl ExactScalar for $t {
            type Integer = $t;

            fn integer_row(row: &[(usize, Self)]) -> SparseRow<$t> {
                row.to_vec()
            }

            fn to_ratio(&self) -> Ratio<$t> {
                Ratio::from_integer(self.clone())
            }
        }
    )*};
}

integer_scalar!(BigInt, i64, i128);

/// Row echelon form built incrementally by leading-column reduction.
///
/// Every stored row is primitive with a positive leading entry, and no two
/// stored rows share a leading column. Pivot choice is deterministic: a row
/// becomes the pivot of its first nonzero column when that column has no
/// pivot yet.
#[derive(Debug, Clone)]
pub struct Echelon<I> {
    cols: usize,
    pivot_of_column: Vec<Option<usize>>,
    rows: Vec<SparseRow<I>>,
}

impl<I: ExactInteger> Echelon<I> {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivot_of_column: vec![None; cols],
            rows: Vec::new(),
        }
    }

    pub fn from_matrix<T: ExactScalar<Integer = I>>(m: &Matrix<T>) -> Self {
        let mut e = Echelon::new(m.cols());
        for row in m.row_iter() {
            e.insert(T::integer_row(row));
        }
        e
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_rows(&self) -> &[SparseRow<I>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_column[col].is_some()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Reduces `row` against the stored pivots; returns true if it was independent.
    pub fn insert(&mut self, row: SparseRow<I>) -> bool {
        let mut row = row;
        row.retain(|e| !e.1.is_zero());
        make_primitive(&mut row);
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.pivot_of_column[lead] {
                None => {
                    self.pivot_of_column[lead] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
                Some(p) => {
                    row = eliminate_lead(&row, &self.rows[p]);
                    make_primitive(&mut row);
                }
            }
        }
    }

    /// Projects a rational vector along the row space onto the non-pivot
    /// coordinates: the result has no entry in any pivot column and differs
    /// from `v` by an element of the row space.
    pub fn reduce(&self, v: &[(usize, Ratio<I>)]) -> SparseRow<Ratio<I>> {
        let mut acc: BTreeMap<usize, Ratio<I>> =
            v.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        let mut cursor = 0;
        while let Some((&c, coef)) = acc.range(cursor..).find(|(c, _)| self.is_pivot(**c)) {
            let prow = &self.rows[self.pivot_of_column[c].expect("pivot")];
            let factor = coef.clone() / Ratio::from_integer(prow[0].1.clone());
            for (pc, pv) in prow {
                let e = acc.entry(*pc).or_insert_with(Ratio::zero);
                *e = e.clone() - factor.clone() * Ratio::from_integer(pv.clone());
                if e.is_zero() {
                    acc.remove(pc);
                }
            }
            cursor = c + 1;
        }
        acc.into_iter().collect()
    }
}

fn make_primitive<I: ExactInteger>(row: &mut SparseRow<I>) {
    let Some(first) = row.first() else { return };
    let mut g = row.iter().fold(I::zero(), |acc, e| acc.gcd(&e.1));
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            e.1 = e.1.clone() / g.clone();
        }
    }
}

/// `b_lead * row - a_lead * pivot` scaled by their gcd, cancelling the leading entry.
fn eliminate_lead<I: ExactInteger>(row: &[(usize, I)], pivot: &[(usize, I)]) -> SparseRow<I> {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let g = a.gcd(b);
    let row_factor = b.clone() / g.clone();
    let pivot_factor = a.clone() / g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, row[i].1.clone() * row_factor.clone()));
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(pivot[j].1.clone() * pivot_factor.clone())));
            j += 1;
        } else {
            let v = row[i].1.clone() * row_factor.clone() - pivot[j].1.clone() * pivot_factor.clone();
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact rank over the rationals.
pub fn rank<T: ExactScalar>(m: &Matrix<T>, limits: &Limits) -> Result<usize> {
    limits.check(m.rows(), m.cols())?;
    Ok(Echelon::from_matrix(m).rank())
}

/// `cols - rank`.
pub fn kernel_dimension<T: ExactScalar>(m: &Matrix<T>, limits: &Limits) -> Result<usize> {
    Ok(m.cols() - rank(m, limits)?)
}

/// A basis of the right kernel, one vector per non-pivot column of the
/// reduced row echelon form, in increasing column order.
pub fn kernel_basis<T: ExactScalar>(
    m: &Matrix<T>,
    limits: &Limits,
) -> Result<Vec<Vec<Ratio<T::Integer>>>> {
    limits.check(m.rows(), m.cols())?;
    let (rref, pivots) = reduced_row_echelon(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis = (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Ratio::zero(); m.cols()];
            v[free] = Ratio::one();
            for (row, &p) in rref.iter().zip(&pivots) {
                if let Some(x) = row.get(&free) {
                    v[p] = -x.clone();
                }
            }
            v
        })
        .collect();
    Ok(basis)
}

/// Determinant of a small dense square matrix by rational Gaussian elimination.
pub fn determinant<I: ExactInteger>(rows: &[Vec<Ratio<I>>]) -> Ratio<I> {
    let n = rows.len();
    let mut a: Vec<Vec<Ratio<I>>> = rows.to_vec();
    assert!(a.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut det = Ratio::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ratio::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / pivot.clone();
            let (top, bottom) = a.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = dst.clone() - src.clone() * f.clone();
            }
        }
    }
    det
}

/// Reduced row echelon form over the rationals; pivot = first nonzero column.
type RationalRow<I> = BTreeMap<usize, Ratio<I>>;

fn reduced_row_echelon<T: ExactScalar>(m: &Matrix<T>) -> (Vec<RationalRow<T::Integer>>, Vec<usize>) {
    let echelon = Echelon::from_matrix(m);
    let pivots: Vec<usize> = echelon.pivot_rows().iter().map(|r| r[0].0).collect();
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let mut rows: Vec<RationalRow<T::Integer>> = order
        .iter()
        .map(|&i| {
            let row = &echelon.pivot_rows()[i];
            let lead = Ratio::from_integer(row[0].1.clone());
            row.iter()
                .map(|(c, v)| (*c, Ratio::from_integer(v.clone()) / lead.clone()))
                .collect()
        })
        .collect();
    let pivots: Vec<usize> = order.iter().map(|&i| pivots[i]).collect();
    // back substitution, bottom-up
    for i in (0..rows.len()).rev() {
        let p = pivots[i];
        let pivot_row = rows[i].clone();
        for row in rows.iter_mut().take(i) {
            if let Some(f) = row.get(&p).cloned() {
                for (c, v) in &pivot_row {
                    let e = row.entry(*c).or_insert_with(Ratio::zero);
                    *e = e.clone() - f.clone() * v.clone();
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
    }
    (rows, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ExactMatrix, Int, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_integer(Int::from(v))
    }

    fn mat(cols: usize, rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_dense(cols, rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(rank(&ExactMatrix::identity(3), &lim()).unwrap(), 3);
        assert_eq!(rank(&mat(2, &[&[1, 2], &[2, 4]]), &lim()).unwrap(), 1);
        assert_eq!(rank(&ExactMatrix::zeros(0, 5), &lim()).unwrap(), 0);
    }

    #[test]
    fn kernel_dimension_cases() {
        assert_eq!(kernel_dimension(&ExactMatrix::identity(3), &lim()).unwrap(), 0);
        assert_eq!(kernel_dimension(&ExactMatrix::zeros(2, 2), &lim()).unwrap(), 2);
        assert_eq!(kernel_dimension(&mat(3, &[&[1, -1, 0], &[0, 1, -1]]), &lim()).unwrap(), 1);
    }

    #[test]
    fn kernel_basis_cases() {
        let row = mat(3, &[&[1, 1, 1]]);
        let basis = kernel_basis(&row, &lim()).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(row.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert!(kernel_basis(&ExactMatrix::identity(4), &lim()).unwrap().is_empty());

        let path = mat(3, &[&[1, -1, 0], &[0, 1, -1]]);
        let basis = kernel_basis(&path, &lim()).unwrap();
        assert_eq!(basis, vec![vec![q(1), q(1), q(1)]]);
    }

    #[test]
    fn rational_entries_clear_denominators() {
        let half = Rational::new(Int::from(1), Int::from(2));
        let m = Matrix::from_dense(2, vec![vec![half.clone(), q(1)], vec![q(1), q(2)]]);
        assert_eq!(rank(&m, &lim()).unwrap(), 1);
        let m = Matrix::from_dense(2, vec![vec![half, q(1)], vec![q(1), q(3)]]);
        assert_eq!(rank(&m, &lim()).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let small = Limits { max_entries: 10 };
        let err = rank(&ExactMatrix::zeros(4, 4), &small).unwrap_err();
        assert_eq!(err, Error::InstanceTooLarge { rows: 4, cols: 4, cap: 10 });
        assert!(kernel_basis(&ExactMatrix::zeros(4, 4), &small).is_err());
    }

    #[test]
    fn fixed_width_integers_work_for_small_inputs() {
        let m: Matrix<i64> = Matrix::from_dense(3, vec![vec![2, 4, 6], vec![1, 2, 3], vec![0, 1, 1]]);
        assert_eq!(rank(&m, &lim()).unwrap(), 2);
    }

    #[test]
    fn echelon_reduce_projects_onto_non_pivots() {
        // row space spanned by (1,1,0); reducing e_0 gives -e_1
        let m = mat(3, &[&[1, 1, 0]]);
        let e = Echelon::from_matrix(&m);
        assert_eq!(e.pivot_columns(), vec![0]);
        let r = e.reduce(&[(0, q(1))]);
        assert_eq!(r, vec![(1, q(-1))]);
    }

    #[test]
    fn sparse_helpers() {
        let mut m = ExactMatrix::zeros(2, 3);
        m.add_to(0, 2, q(5));
        m.add_to(0, 2, q(-5));
        assert!(m.is_zero());
        m.set(1, 1, q(3));
        assert_eq!(m.get(1, 1), q(3));
        let t = m.transpose();
        assert_eq!(t.get(1, 1), q(3));
        assert_eq!(t.rows(), 3);
        let p = m.permute_columns(&[2, 0, 1]);
        assert_eq!(p.get(1, 0), q(3));
        let prod = m.mul(&t);
        assert_eq!(prod.get(1, 1), q(9));
    }
}
