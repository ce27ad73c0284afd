//! Row-sparse exact rational matrices with echelon-form kernels.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `a - c * b` on sparse rows.
fn axpy_sub(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_row(r: &mut SparseRow, c: &Scalar) {
    for (_, v) in r.iter_mut() {
        *v = &*v * c;
    }
}

/// Row echelon data: pivot rows keyed by leading column, each normalized to a leading 1.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pub pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the pivots; returns the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        while start < row.len() {
            let (col, val) = row[start].clone();
            match self.pivots.get(&col) {
                Some(p) => {
                    row = axpy_sub(&row, &val, p);
                    // entries before `start` are untouched, the pivot column is now gone
                }
                None => start += 1,
            }
        }
        row
    }

    /// Inserts a row if it is independent; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].0;
        let inv = Scalar::one() / &r[0].1;
        scale_row(&mut r, &inv);
        self.pivots.insert(lead, r);
        true
    }

    /// Back-substitutes so every pivot column is zero in the other pivot rows.
    pub fn into_reduced(mut self) -> Echelon {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let prow = self.pivots[&c].clone();
            let others: Vec<usize> = self.pivots.range(..c).map(|(k, _)| *k).collect();
            for o in others {
                let row = &self.pivots[&o];
                if let Some(v) = row.iter().find(|(cc, _)| *cc == c).map(|(_, v)| v.clone()) {
                    let nr = axpy_sub(row, &v, &prow);
                    self.pivots.insert(o, nr);
                }
            }
        }
        self
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Scalar::one()));
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<Scalar>]) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("expected {rows}x{cols} dense data")));
        }
        let data = entries
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
            .collect();
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseRow>) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (c, v) in r {
                m.add_to(i, c, &v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.data[r].push((c, v.clone()));
                }
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

    pub fn row(&self, r: usize) -> &SparseRow {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(cc, _)| *cc) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(cc, _)| *cc) {
            Ok(i) => {
                if v.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = v;
                }
            }
            Err(i) => {
                if !v.is_zero() {
                    row.insert(i, (c, v));
                }
            }
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(cc, _)| *cc) {
            Ok(i) => {
                let nv = &row[i].1 + v;
                if nv.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = nv;
                }
            }
            Err(i) => row.insert(i, (c, v.clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|r| {
                let mut v = vec![Scalar::zero(); self.cols];
                for (c, x) in &self.data[r] {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c].push((r, v.clone()));
            }
        }
        t
    }

    pub fn scaled(&self, s: &Scalar) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for r in m.data.iter_mut() {
            scale_row(r, s);
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy_sub(a, &-Scalar::one(), b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scaled(&-Scalar::one()))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let e = acc.entry(*c).or_insert_with(Scalar::zero);
                    *e += a * b;
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| row.iter().fold(Scalar::zero(), |acc, (c, x)| acc + x * &v[*c]))
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (j, c) in cols.iter().enumerate() {
            pos[*c] = j;
        }
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            let mut row: SparseRow = self.data[*r]
                .iter()
                .filter(|(c, _)| pos[*c] != usize::MAX)
                .map(|(c, v)| (pos[*c], v.clone()))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            m.data[i] = row;
        }
        m
    }

    /// Stacks `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat row mismatch".into()));
        }
        let mut m = self.clone();
        m.cols += other.cols;
        for (r, row) in other.data.iter().enumerate() {
            m.data[r].extend(row.iter().map(|(c, v)| (c + self.cols, v.clone())));
        }
        Ok(m)
    }

    /// Row echelon form computed by incremental sparse elimination, shortest rows first.
    pub fn echelon(&self) -> Echelon {
        let mut order: Vec<usize> = (0..self.rows).filter(|r| !self.data[*r].is_empty()).collect();
        order.sort_by_key(|r| (self.data[*r].len(), *r));
        let mut ech = Echelon::default();
        for r in order {
            ech.insert(self.data[r].clone());
        }
        ech
    }

    pub fn rank(&self) -> usize {
        // eliminating along the shorter side keeps the pivot set small
        if self.cols < self.rows {
            self.transpose().echelon().rank()
        } else {
            self.echelon().rank()
        }
    }

    /// Basis of the right null space, one dense vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let red = self.echelon().into_reduced();
        let pivot_cols: Vec<usize> = red.pivots.keys().copied().collect();
        let mut is_pivot = vec![false; self.cols];
        for c in &pivot_cols {
            is_pivot[*c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (pc, row) in &red.pivots {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                    v[*pc] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Indices of a maximal independent subset of columns, chosen greedily left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        let t = self.transpose();
        let mut ech = Echelon::default();
        let mut chosen = Vec::new();
        for c in 0..self.cols {
            if ech.insert(t.data[c].clone()) {
                chosen.push(c);
            }
        }
        chosen
    }

    /// Solves `self * x = b`, returning one solution if it exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug_rows: Vec<SparseRow> = (0..self.rows)
            .map(|r| {
                let mut row = self.data[r].clone();
                if !b[r].is_zero() {
                    row.push((self.cols, b[r].clone()));
                }
                row
            })
            .collect();
        let aug = Matrix::from_rows(self.cols + 1, aug_rows);
        let red = aug.echelon().into_reduced();
        if red.pivots.contains_key(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (pc, row) in &red.pivots {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == self.cols) {
                x[*pc] = v.clone();
            }
        }
        Some(x)
    }
}

/// Reusable left inverse for a full-column-rank matrix, used to read coordinates in a subspace.
#[derive(Debug, Clone)]
pub struct CoordinateSolver {
    inclusion: Matrix,
    reduced: Echelon,
}

impl CoordinateSolver {
    pub fn new(inclusion: Matrix) -> Result<Self> {
        let t = inclusion.transpose();
        // Row-reduce [J | I] transposed: we reduce the rows of J^T and track combinations
        // through a dense identity block appended on the right.
        let n = inclusion.cols();
        let m = inclusion.rows();
        let rows: Vec<SparseRow> = (0..n)
            .map(|i| {
                let mut r = t.row(i).clone();
                r.push((m + i, Scalar::one()));
                r
            })
            .collect();
        let aug = Matrix::from_rows(m + n, rows);
        let mut ech = Echelon::default();
        for i in 0..n {
            ech.insert(aug.row(i).clone());
        }
        if ech.pivots.keys().any(|c| *c >= m) {
            return Err(Error::Inconsistent("subspace inclusion is not injective".into()));
        }
        Ok(CoordinateSolver { inclusion, reduced: ech.into_reduced() })
    }

    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    /// Coordinates of `v` in the column basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let m = self.inclusion.rows();
        let n = self.inclusion.cols();
        // v^T = x^T J^T; reduce v against the pivot rows of [J^T | I].
        let mut x = vec![Scalar::zero(); n];
        let mut row: SparseRow = v.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, a)| (i, a.clone())).collect();
        while let Some((col, val)) = row.first().filter(|(c, _)| *c < m).cloned() {
            let p = self.reduced.pivots.get(&col)?;
            for (c, pv) in p {
                if *c >= m {
                    x[c - m] += &val * pv;
                }
            }
            let p_head: SparseRow = p.iter().filter(|(c, _)| *c < m).cloned().collect();
            row = axpy_sub(&row, &val, &p_head);
        }
        Some(x)
    }
}

pub fn dense_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn m(rows: &[&[i64]]) -> Matrix {
        let d: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect();
        Matrix::from_dense(d.len(), d[0].len(), &d).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(dense_is_zero(&a.mul_vec(&ns[0])));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn coordinate_solver_reads_coordinates() {
        let j = Matrix::from_columns(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(2), q(1)]]);
        let s = CoordinateSolver::new(j).unwrap();
        let v = vec![q(3), qf(7, 1), q(2)];
        assert_eq!(s.coordinates(&v).unwrap(), vec![q(3), q(2)]);
        assert!(s.coordinates(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn mul_and_transpose() {
        let a = m(&[&[1, 2], &[0, 1]]);
        let b = a.mul(&a.transpose()).unwrap();
        assert_eq!(b.to_dense(), vec![vec![q(5), q(2)], vec![q(2), q(1)]]);
    }
}
