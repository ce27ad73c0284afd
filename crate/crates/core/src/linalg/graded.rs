//! Graded vector spaces with labelled bases and degree-homogeneous maps between them.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::scalar::{format_rational, parse_rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

/// Finite graded vector space with an ordered basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self> {
        let mut seen = HashSet::new();
        for b in &basis {
            if !seen.insert(b.label.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate basis label {:?}", b.label)));
            }
        }
        Ok(GradedSpace { basis })
    }

    /// Builds a space from `(label, degree)` pairs; panics on duplicate labels.
    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i32)>) -> Self {
        let basis = pairs.into_iter().map(|(l, d)| BasisElement { label: l.into(), degree: d }).collect();
        GradedSpace::new(basis).expect("duplicate basis label")
    }

    /// Skips the uniqueness check; for internally generated labels known to be distinct.
    pub(crate) fn from_basis_unchecked(basis: Vec<BasisElement>) -> Self {
        GradedSpace { basis }
    }

    pub fn zero() -> Self {
        GradedSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Basis indices of the given degree, in basis order.
    pub fn indices_in_degree(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|i| self.basis[*i].degree == k).collect()
    }

    /// Sorted list of degrees that occur.
    pub fn support(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.degrees();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for b in &self.basis {
            *m.entry(b.degree).or_insert(0) += 1;
        }
        m
    }

    /// `V[n]`, whose degree-k part is the degree-(k+n) part of `V`.
    pub fn shift(&self, n: i32) -> GradedSpace {
        GradedSpace {
            basis: self.basis.iter().map(|b| BasisElement { label: b.label.clone(), degree: b.degree - n }).collect(),
        }
    }

    /// Degreewise dual: basis element `x` of degree k becomes `x*` of degree −k.
    pub fn dual(&self) -> GradedSpace {
        GradedSpace {
            basis: self.basis.iter().map(|b| BasisElement { label: format!("{}*", b.label), degree: -b.degree }).collect(),
        }
    }

    /// Direct sum with labels prefixed to stay unique.
    pub fn direct_sum(&self, other: &GradedSpace, left: &str, right: &str) -> GradedSpace {
        let mut basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|b| BasisElement { label: format!("{left}{}", b.label), degree: b.degree })
            .collect();
        basis.extend(other.basis.iter().map(|b| BasisElement { label: format!("{right}{}", b.label), degree: b.degree }));
        GradedSpace { basis }
    }

    /// Tensor product with basis `(i, j)` at position `i * other.dim() + j`.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.basis {
            for b in &other.basis {
                basis.push(BasisElement { label: format!("{}⊗{}", a.label, b.label), degree: a.degree + b.degree });
            }
        }
        GradedSpace { basis }
    }

    /// Degree of a vector if it is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, v: &[Scalar]) -> Option<i32> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                match deg {
                    None => deg = Some(self.degree(i)),
                    Some(d) if d != self.degree(i) => return None,
                    _ => {}
                }
            }
        }
        deg
    }
}

/// Degree-homogeneous linear map stored as one sparse matrix over the full bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub degree: i32,
    matrix: Matrix,
}

impl GradedMap {
    pub fn new(source: GradedSpace, target: GradedSpace, degree: i32, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, spaces need {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for r in 0..matrix.rows() {
            for (c, _) in matrix.row(r) {
                if target.degree(r) != source.degree(*c) + degree {
                    return Err(Error::InvalidInput(format!(
                        "entry ({}, {}) maps degree {} to degree {} in a degree-{} map",
                        target.label(r),
                        source.label(*c),
                        source.degree(*c),
                        target.degree(r),
                        degree
                    )));
                }
            }
        }
        Ok(GradedMap { source, target, degree, matrix })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, degree: i32) -> Self {
        let m = Matrix::zeros(target.dim(), source.dim());
        GradedMap { source, target, degree, matrix: m }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        GradedMap { source: space.clone(), target: space.clone(), degree: 0, matrix: Matrix::identity(space.dim()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// Block from source degree `k` to target degree `k + degree`.
    pub fn block(&self, k: i32) -> Matrix {
        let rows = self.target.indices_in_degree(k + self.degree);
        let cols = self.source.indices_in_degree(k);
        self.matrix.select(&rows, &cols)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composition through mismatched spaces".into()));
        }
        let m = self.matrix.mul(&other.matrix)?;
        Ok(GradedMap { source: other.source.clone(), target: self.target.clone(), degree: self.degree + other.degree, matrix: m })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.degree != other.degree || self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("sum of incompatible maps".into()));
        }
        Ok(GradedMap { matrix: self.matrix.add(&other.matrix)?, ..self.clone() })
    }

    pub fn scaled(&self, s: &Scalar) -> GradedMap {
        GradedMap { matrix: self.matrix.scaled(s), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn to_json(&self) -> GradedMapJson {
        let mut blocks = Vec::new();
        for k in self.source.support() {
            let b = self.block(k);
            if b.rows() == 0 || b.cols() == 0 {
                continue;
            }
            let matrix = b.to_dense().iter().map(|r| r.iter().map(format_rational).collect()).collect();
            blocks.push(BlockJson { from_degree: k, matrix });
        }
        GradedMapJson {
            source: self.source.basis.clone(),
            target: self.target.basis.clone(),
            degree: self.degree,
            blocks,
        }
    }

    pub fn from_json(j: &GradedMapJson) -> Result<GradedMap> {
        let source = GradedSpace::new(j.source.clone())?;
        let target = GradedSpace::new(j.target.clone())?;
        let mut m = Matrix::zeros(target.dim(), source.dim());
        for b in &j.blocks {
            let rows = target.indices_in_degree(b.from_degree + j.degree);
            let cols = source.indices_in_degree(b.from_degree);
            if b.matrix.len() != rows.len() || b.matrix.iter().any(|r| r.len() != cols.len()) {
                return Err(Error::DimensionMismatch(format!("block from degree {} has the wrong shape", b.from_degree)));
            }
            for (ri, r) in b.matrix.iter().enumerate() {
                for (ci, s) in r.iter().enumerate() {
                    m.set(rows[ri], cols[ci], parse_rational(s)?);
                }
            }
        }
        GradedMap::new(source, target, j.degree, m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub from_degree: i32,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedMapJson {
    pub source: Vec<BasisElement>,
    pub target: Vec<BasisElement>,
    pub degree: i32,
    pub blocks: Vec<BlockJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn shift_moves_degrees_down() {
        let v = GradedSpace::from_pairs([("a", 0), ("b", 1)]);
        assert_eq!(v.shift(1).degrees(), vec![-1, 0]);
        assert_eq!(v.dual().degrees(), vec![0, -1]);
    }

    #[test]
    fn map_rejects_inhomogeneous_entries() {
        let v = GradedSpace::from_pairs([("a", 0), ("b", 1)]);
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 1, q(1));
        assert!(GradedMap::new(v.clone(), v.clone(), 1, m.clone()).is_err());
        let mut ok = Matrix::zeros(2, 2);
        ok.set(1, 0, q(1));
        assert!(GradedMap::new(v.clone(), v, 1, ok).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let v = GradedSpace::from_pairs([("a", 0), ("b", 1), ("c", 1)]);
        let mut m = Matrix::zeros(3, 3);
        m.set(1, 0, q(2));
        m.set(2, 0, crate::scalar::qf(-1, 3));
        let f = GradedMap::new(v.clone(), v, 1, m).unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back = GradedMap::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
