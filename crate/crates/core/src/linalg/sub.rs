//! Subcomplexes cut out by homogeneous spanning vectors or by linear constraints.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::complex::CochainComplex;
use crate::linalg::graded::{BasisElement, GradedMap, GradedSpace};
use crate::linalg::matrix::{CoordinateSolver, Matrix};
use crate::scalar::Scalar;

/// A subcomplex given by an injective inclusion of homogeneous columns.
#[derive(Debug, Clone)]
pub struct Subcomplex {
    pub complex: CochainComplex,
    pub inclusion: Matrix,
    solver: CoordinateSolver,
}

impl Subcomplex {
    /// The subcomplex spanned by linearly independent homogeneous vectors; fails if the span is
    /// not closed under the differential.
    pub fn new(ambient: &CochainComplex, columns: Vec<Vec<Scalar>>, labels: Vec<String>) -> Result<Self> {
        let n = ambient.dim();
        let mut basis = Vec::with_capacity(columns.len());
        for (v, label) in columns.iter().zip(labels) {
            let degree = ambient
                .space()
                .homogeneous_degree(v)
                .ok_or_else(|| Error::InvalidInput(format!("spanning vector {label} is zero or not homogeneous")))?;
            basis.push(BasisElement { label, degree });
        }
        let inclusion = Matrix::from_columns(n, &columns);
        let solver = CoordinateSolver::new(inclusion.clone())?;
        let image = ambient.differential().matrix().mul(&inclusion)?;
        let mut d = Matrix::zeros(columns.len(), columns.len());
        for c in 0..columns.len() {
            let x = solver
                .coordinates(&image.column(c))
                .ok_or_else(|| Error::Inconsistent("span is not closed under the differential".into()))?;
            for (r, v) in x.into_iter().enumerate() {
                d.set(r, c, v);
            }
        }
        let space = GradedSpace::new(basis)?;
        let complex = CochainComplex::new(GradedMap::new(space.clone(), space, 1, d)?)?;
        Ok(Subcomplex { complex, inclusion, solver })
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solver.coordinates(v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Homogeneous basis of `{v : m v = 0}`, degree by degree in increasing order.
pub fn graded_kernel(space: &GradedSpace, m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for k in space.support() {
        let idx = space.indices_in_degree(k);
        let rows: Vec<usize> = (0..m.rows()).collect();
        for local in m.select(&rows, &idx).nullspace() {
            let mut v = vec![Scalar::zero(); space.dim()];
            for (j, i) in idx.iter().enumerate() {
                v[*i] = local[j].clone();
            }
            out.push(v);
        }
    }
    out
}

/// A basis of the span of homogeneous vectors, chosen among them, grouped by degree.
pub fn graded_span(space: &GradedSpace, vectors: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let mut by_degree: BTreeMap<i32, Vec<&Vec<Scalar>>> = BTreeMap::new();
    for v in vectors {
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let k = space
            .homogeneous_degree(v)
            .ok_or_else(|| Error::InvalidInput("vector is not homogeneous".into()))?;
        by_degree.entry(k).or_default().push(v);
    }
    let mut out = Vec::new();
    for vs in by_degree.values() {
        let cols: Vec<Vec<Scalar>> = vs.iter().map(|v| (*v).clone()).collect();
        let m = Matrix::from_columns(space.dim(), &cols);
        out.extend(m.independent_columns().into_iter().map(|c| cols[c].clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn kernel_of_the_differential_is_a_subcomplex() {
        let space = GradedSpace::from_pairs([("a", 0), ("b", 1), ("c", 1)]);
        let mut d = Matrix::zeros(3, 3);
        d.set(1, 0, q(1));
        d.set(2, 0, q(1));
        let c = CochainComplex::from_matrix(space.clone(), d.clone()).unwrap();
        let ker = graded_kernel(&space, &d);
        assert_eq!(ker.len(), 2);
        let labels = (0..ker.len()).map(|i| format!("z{i}")).collect();
        let s = Subcomplex::new(&c, ker, labels).unwrap();
        assert_eq!(s.complex.cohomology_dims().values().sum::<usize>(), 2);
        // {a} alone is not closed
        assert!(Subcomplex::new(&c, vec![vec![q(1), q(0), q(0)]], vec!["a".into()]).is_err());
    }
}
