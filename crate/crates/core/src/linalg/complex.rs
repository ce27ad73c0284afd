//! Cochain complexes and the standard constructions on them.
//!
//! Sign conventions used throughout the crate:
//! - shift: `(V[n])^k = V^{k+n}` and `d_{V[n]} = (−1)^n d_V`;
//! - cone of a degree-0 chain map `f: V → W`: `V[1] ⊕ W` with `d(v, w) = (−d v, f v + d w)`;
//! - tensor: `d(a ⊗ b) = da ⊗ b + (−1)^{|a|} a ⊗ db`;
//! - dual: `(V^∨)^k = (V^{−k})^∨` with `d^∨ φ = −(−1)^{|φ|} φ ∘ d`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::graded::{BasisElement, BlockJson, GradedMap, GradedMapJson, GradedSpace};
use crate::linalg::matrix::{Echelon, Matrix, SparseRow};
use crate::scalar::{sign, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    space: GradedSpace,
    d: GradedMap,
}

/// Cohomology in one degree: dimension plus cocycle representatives in global coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub dim: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cohomology {
    pub groups: BTreeMap<i32, CohomologyGroup>,
}

impl Cohomology {
    pub fn dim(&self, k: i32) -> usize {
        self.groups.get(&k).map_or(0, |g| g.dim)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.groups.iter().filter(|(_, g)| g.dim > 0).map(|(k, g)| (*k, g.dim)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.groups.values().map(|g| g.dim).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.total_dim() == 0
    }
}

/// Result of a quasi-isomorphism test; `witness_degree` is the first degree of nonzero cone cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiIsoResult {
    pub holds: bool,
    pub witness_degree: Option<i32>,
}

fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl CochainComplex {
    pub fn new(d: GradedMap) -> Result<Self> {
        if d.degree != 1 || d.source != d.target {
            return Err(Error::InvalidInput("a differential is a degree-1 endomorphism".into()));
        }
        let c = CochainComplex { space: d.source.clone(), d };
        c.check_square_zero()?;
        Ok(c)
    }

    /// For internally assembled differentials whose square-zero property is tested separately.
    pub(crate) fn new_unchecked(d: GradedMap) -> Self {
        CochainComplex { space: d.source.clone(), d }
    }

    pub fn zero_differential(space: GradedSpace) -> Self {
        CochainComplex { d: GradedMap::zero(space.clone(), space.clone(), 1), space }
    }

    pub fn from_matrix(space: GradedSpace, m: Matrix) -> Result<Self> {
        CochainComplex::new(GradedMap::new(space.clone(), space, 1, m)?)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn check_square_zero(&self) -> Result<()> {
        let sq = self.d.matrix().mul(self.d.matrix())?;
        for c in 0..sq.rows() {
            if !sq.row(c).is_empty() {
                let col = sq.row(c)[0].0;
                return Err(Error::NotSquareZero { degree: self.space.degree(col) });
            }
        }
        Ok(())
    }

    /// Dimensions of cohomology, via ranks only.
    pub fn cohomology_dims(&self) -> BTreeMap<i32, usize> {
        let support = self.space.support();
        let ranks: BTreeMap<i32, usize> = support.par_iter().map(|k| (*k, self.d.block(*k).rank())).collect();
        let mut out = BTreeMap::new();
        for k in support {
            let n = self.space.indices_in_degree(k).len();
            let h = n - ranks[&k] - ranks.get(&(k - 1)).copied().unwrap_or(0);
            if h > 0 {
                out.insert(k, h);
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_dims().is_empty()
    }

    /// First degree with nonzero cohomology.
    pub fn first_nonacyclic_degree(&self) -> Option<i32> {
        self.cohomology_dims().keys().next().copied()
    }

    /// Echelon form of the coboundaries landing in degree `k`, in local degree-`k` coordinates.
    fn image_echelon(&self, k: i32) -> Echelon {
        let prev = self.d.block(k - 1).transpose();
        let mut e = Echelon::default();
        for r in 0..prev.rows() {
            e.insert(prev.row(r).clone());
        }
        e
    }

    fn local(&self, k: i32, v: &[Scalar]) -> Vec<Scalar> {
        self.space.indices_in_degree(k).iter().map(|i| v[*i].clone()).collect()
    }

    /// Full cohomology with representatives.
    pub fn cohomology(&self) -> Cohomology {
        let support = self.space.support();
        let groups = support
            .par_iter()
            .map(|&k| {
                let idx = self.space.indices_in_degree(k);
                let kernel = self.d.block(k).nullspace();
                let mut ech = self.image_echelon(k);
                let mut reps = Vec::new();
                for v in kernel {
                    if ech.insert(to_sparse(&v)) {
                        let mut g = vec![Scalar::zero(); self.dim()];
                        for (li, x) in v.into_iter().enumerate() {
                            g[idx[li]] = x;
                        }
                        reps.push(g);
                    }
                }
                (k, CohomologyGroup { dim: reps.len(), representatives: reps })
            })
            .collect();
        Cohomology { groups }
    }

    pub fn is_cocycle(&self, v: &[Scalar]) -> bool {
        self.d.apply(v).iter().all(Zero::is_zero)
    }

    /// Dimension of the span of the classes of the given degree-`k` cocycles.
    pub fn class_rank(&self, k: i32, cocycles: &[Vec<Scalar>]) -> usize {
        let mut ech = self.image_echelon(k);
        let base = ech.rank();
        for v in cocycles {
            ech.insert(to_sparse(&self.local(k, v)));
        }
        ech.rank() - base
    }

    pub fn is_coboundary(&self, k: i32, v: &[Scalar]) -> bool {
        self.class_rank(k, &[v.to_vec()]) == 0
    }

    pub fn shift(&self, n: i32) -> CochainComplex {
        let space = self.space.shift(n);
        let m = self.d.matrix().scaled(&sign(n as i64));
        CochainComplex::new_unchecked(GradedMap::new(space.clone(), space, 1, m).expect("shift preserves homogeneity"))
    }

    pub fn direct_sum(&self, other: &CochainComplex) -> CochainComplex {
        let space = self.space.direct_sum(&other.space, "L:", "R:");
        let n = self.dim();
        let mut m = Matrix::zeros(space.dim(), space.dim());
        for r in 0..n {
            for (c, v) in self.d.matrix().row(r) {
                m.set(r, *c, v.clone());
            }
        }
        for r in 0..other.dim() {
            for (c, v) in other.d.matrix().row(r) {
                m.set(n + r, n + c, v.clone());
            }
        }
        CochainComplex::new_unchecked(GradedMap::new(space.clone(), space, 1, m).expect("block diagonal"))
    }

    pub fn tensor(&self, other: &CochainComplex) -> CochainComplex {
        let space = self.space.tensor(&other.space);
        let nb = other.dim();
        let mut m = Matrix::zeros(space.dim(), space.dim());
        let da = self.d.matrix().transpose();
        let db = other.d.matrix().transpose();
        for i in 0..self.dim() {
            for j in 0..nb {
                let col = i * nb + j;
                for (ti, v) in da.row(i) {
                    m.add_to(ti * nb + j, col, v);
                }
                let s = sign(self.space.degree(i) as i64);
                for (tj, v) in db.row(j) {
                    m.add_to(i * nb + tj, col, &(&s * v));
                }
            }
        }
        CochainComplex::new_unchecked(GradedMap::new(space.clone(), space, 1, m).expect("tensor differential"))
    }

    pub fn dual(&self) -> CochainComplex {
        let space = self.space.dual();
        let mut m = self.d.matrix().transpose();
        // column i of d^T is the source x_i*, of degree −|x_i|
        let scales: Vec<Scalar> = (0..self.dim()).map(|i| -sign(self.space.degree(i) as i64)).collect();
        let mut rows = Vec::with_capacity(m.rows());
        for r in 0..m.rows() {
            rows.push(m.row(r).iter().map(|(c, v)| (*c, v * &scales[*c])).collect::<SparseRow>());
        }
        m = Matrix::from_rows(self.dim(), rows);
        CochainComplex::new_unchecked(GradedMap::new(space.clone(), space, 1, m).expect("dual differential"))
    }

    pub fn to_json(&self) -> ComplexJson {
        let j = self.d.to_json();
        ComplexJson { basis: j.source, blocks: j.blocks }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let mj = GradedMapJson { source: j.basis.clone(), target: j.basis.clone(), degree: 1, blocks: j.blocks.clone() };
        CochainComplex::new(GradedMap::from_json(&mj)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub basis: Vec<BasisElement>,
    pub blocks: Vec<BlockJson>,
}

/// Checks `d_W f = (−1)^{|f|} f d_V`; returns the first source degree where it fails.
pub fn chain_map_defect(f: &GradedMap, src: &CochainComplex, tgt: &CochainComplex) -> Result<Option<i32>> {
    if f.source != *src.space() || f.target != *tgt.space() {
        return Err(Error::DimensionMismatch("map spaces do not match the complexes".into()));
    }
    let lhs = tgt.differential().matrix().mul(f.matrix())?;
    let rhs = f.matrix().mul(src.differential().matrix())?.scaled(&sign(f.degree as i64));
    let diff = lhs.sub(&rhs)?;
    let t = diff.transpose();
    for c in 0..t.rows() {
        if !t.row(c).is_empty() {
            return Ok(Some(src.space().degree(c)));
        }
    }
    Ok(None)
}

pub fn ensure_chain_map(f: &GradedMap, src: &CochainComplex, tgt: &CochainComplex) -> Result<()> {
    match chain_map_defect(f, src, tgt)? {
        Some(k) => Err(Error::NotChainMap { degree: k }),
        None => Ok(()),
    }
}

/// Mapping cone of a degree-0 chain map.
pub fn cone(f: &GradedMap, src: &CochainComplex, tgt: &CochainComplex) -> Result<CochainComplex> {
    if f.degree != 0 {
        return Err(Error::InvalidInput("cone needs a degree-0 map".into()));
    }
    ensure_chain_map(f, src, tgt)?;
    let space = src.space().shift(1).direct_sum(tgt.space(), "s:", "t:");
    let n = src.dim();
    let mut m = Matrix::zeros(space.dim(), space.dim());
    for r in 0..n {
        for (c, v) in src.differential().matrix().row(r) {
            m.set(r, *c, -v.clone());
        }
    }
    for r in 0..tgt.dim() {
        for (c, v) in f.matrix().row(r) {
            m.set(n + r, *c, v.clone());
        }
        for (c, v) in tgt.differential().matrix().row(r) {
            m.set(n + r, n + c, v.clone());
        }
    }
    CochainComplex::new(GradedMap::new(space.clone(), space, 1, m)?)
}

pub fn is_quasi_iso(f: &GradedMap, src: &CochainComplex, tgt: &CochainComplex) -> Result<QuasiIsoResult> {
    let c = cone(f, src, tgt)?;
    let w = c.first_nonacyclic_degree();
    Ok(QuasiIsoResult { holds: w.is_none(), witness_degree: w })
}

/// Identity matrix restricted to a sub-collection of basis indices, as columns.
pub fn inclusion_matrix(total: usize, indices: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(total, indices.len());
    for (c, i) in indices.iter().enumerate() {
        m.set(*i, c, Scalar::one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn two_term(acyclic: bool) -> CochainComplex {
        let v = GradedSpace::from_pairs([("a", 0), ("b", 1)]);
        let mut m = Matrix::zeros(2, 2);
        if acyclic {
            m.set(1, 0, q(1));
        }
        CochainComplex::from_matrix(v, m).unwrap()
    }

    #[test]
    fn rejects_non_square_zero() {
        let v = GradedSpace::from_pairs([("a", 0), ("b", 1), ("c", 2)]);
        let mut m = Matrix::zeros(3, 3);
        m.set(1, 0, q(1));
        m.set(2, 1, q(1));
        assert!(matches!(CochainComplex::from_matrix(v, m), Err(Error::NotSquareZero { degree: 0 })));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = two_term(false);
        let id = GradedMap::identity(c.space());
        assert!(cone(&id, &c, &c).unwrap().is_acyclic());
        assert!(is_quasi_iso(&id, &c, &c).unwrap().holds);
    }

    #[test]
    fn zero_map_cone_is_direct_sum() {
        let c = two_term(false);
        let z = GradedMap::zero(c.space().clone(), c.space().clone(), 0);
        let k = cone(&z, &c, &c).unwrap();
        let dims = k.cohomology_dims();
        assert_eq!(dims, BTreeMap::from([(-1, 1), (0, 2), (1, 1)]));
        let r = is_quasi_iso(&z, &c, &c).unwrap();
        assert_eq!(r, QuasiIsoResult { holds: false, witness_degree: Some(-1) });
    }

    #[test]
    fn tensor_of_acyclic_is_acyclic() {
        let a = two_term(true);
        let t = a.tensor(&a);
        t.check_square_zero().unwrap();
        assert!(t.is_acyclic());
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        let c = two_term(false).direct_sum(&two_term(true));
        let h = c.cohomology();
        assert_eq!(h.dims(), BTreeMap::from([(0, 1), (1, 1)]));
        for g in h.groups.values() {
            for r in &g.representatives {
                assert!(c.is_cocycle(r));
            }
        }
    }

    #[test]
    fn dual_is_a_complex_with_mirrored_cohomology() {
        let v = GradedSpace::from_pairs([("a", 0), ("b", 1), ("c", 1), ("d", 2)]);
        let mut m = Matrix::zeros(4, 4);
        m.set(1, 0, q(1));
        m.set(2, 0, q(2));
        m.set(3, 1, q(2));
        m.set(3, 2, q(-1));
        let c = CochainComplex::from_matrix(v, m).unwrap();
        let d = c.dual();
        d.check_square_zero().unwrap();
        let hc = c.cohomology_dims();
        let hd: BTreeMap<i32, usize> = d.cohomology_dims().into_iter().map(|(k, n)| (-k, n)).collect();
        assert_eq!(hc, hd);
    }
}
