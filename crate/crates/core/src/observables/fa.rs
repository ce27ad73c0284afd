//! Classical observables `Sym^{≤T}(E_L(U)^∨)` on the opens of a mesh, their structure maps, and
//! the Čech test for Weiss covers.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{CellMesh, OpenSet, Point};
use crate::linalg::{is_quasi_iso, BasisElement, CochainComplex, GradedMap, GradedSpace, Matrix};
use crate::linf::{ce_differential, CeComplex};
use crate::scalar::Scalar;
use crate::sym::SymElement;
use crate::tnbft::{BoundaryCondition, BulkBoundarySystem, ConditionedFields};

use super::p0::KernelPresentation;

/// Observables on one open: the conditioned fields and their Chevalley–Eilenberg complex.
#[derive(Debug, Clone)]
pub struct ObservableSpace {
    pub open: OpenSet,
    pub fields: ConditionedFields,
    pub ce: CeComplex,
}

/// An observable on `U`, in the monomial basis of `Sym^{≤T}(E_L(U)^∨)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    pub open: OpenSet,
    pub truncation: usize,
    pub coefficients: Vec<Scalar>,
    pub kernel: Option<KernelPresentation>,
}

/// `Obs(U)` for a single open.
pub fn obs_complex(sys: &BulkBoundarySystem, cond: &BoundaryCondition, u: &OpenSet, truncation: usize) -> Result<ObservableSpace> {
    if truncation < 1 {
        return Err(Error::InvalidInput("symmetric truncation must be at least 1".into()));
    }
    let arity = sys.boundary().algebra().max_arity();
    if truncation < arity {
        return Err(Error::Precondition(format!(
            "truncation {truncation} is below the bracket arity {arity}; the CE differential would be cut off"
        )));
    }
    let fields = sys.impose(cond, u)?;
    let ce = ce_differential(&fields.alg, truncation)?;
    Ok(ObservableSpace { open: u.clone(), fields, ce })
}

impl ObservableSpace {
    pub fn complex(&self) -> &CochainComplex {
        &self.ce.complex
    }

    pub fn dim(&self) -> usize {
        self.ce.dim()
    }

    /// Cohomology split by symmetric weight, when the differential preserves weight.
    pub fn cohomology_by_weight(&self) -> Option<BTreeMap<usize, BTreeMap<i32, usize>>> {
        let basis = &self.ce.basis;
        let d = self.complex().differential().matrix();
        for c in 0..d.rows() {
            if d.row(c).iter().any(|(j, _)| basis.weight(*j) != basis.weight(c)) {
                return None;
            }
        }
        let mut out = BTreeMap::new();
        for w in basis.dims_by_weight().into_keys() {
            let idx: Vec<usize> = (0..basis.dim()).filter(|i| basis.weight(*i) == w).collect();
            let space = sub_space(&basis.space, &idx);
            let c = CochainComplex::from_matrix(space, d.select(&idx, &idx)).ok()?;
            out.insert(w, c.cohomology_dims());
        }
        Some(out)
    }

    pub fn observable(&self, truncation: usize, value: &SymElement) -> Observable {
        Observable { open: self.open.clone(), truncation, coefficients: self.ce.basis.to_vector(value), kernel: None }
    }
}

fn sub_space(space: &GradedSpace, idx: &[usize]) -> GradedSpace {
    let basis: Vec<BasisElement> = idx.iter().map(|i| space.basis()[*i].clone()).collect();
    GradedSpace::new(basis).expect("labels of a subspace stay distinct")
}

/// The prefactorization algebra of observables on a mesh, built lazily open by open.
#[derive(Debug)]
pub struct ClassicalObservables {
    sys: BulkBoundarySystem,
    cond: BoundaryCondition,
    truncation: usize,
    spaces: BTreeMap<OpenSet, OnceLock<ObservableSpace>>,
}

impl ClassicalObservables {
    pub fn new(sys: &BulkBoundarySystem, cond: &BoundaryCondition, truncation: usize) -> Result<Self> {
        let spaces = sys.mesh().opens().into_iter().map(|u| (u, OnceLock::new())).collect();
        let out = ClassicalObservables { sys: sys.clone(), cond: cond.clone(), truncation, spaces };
        // validates the truncation once
        out.space(&OpenSet::empty())?;
        Ok(out)
    }

    pub fn system(&self) -> &BulkBoundarySystem {
        &self.sys
    }

    pub fn condition(&self) -> &BoundaryCondition {
        &self.cond
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn mesh(&self) -> &CellMesh {
        self.sys.mesh()
    }

    pub fn space(&self, u: &OpenSet) -> Result<&ObservableSpace> {
        let cell = self
            .spaces
            .get(u)
            .ok_or_else(|| Error::InvalidInput(format!("{u} is not an open of the mesh")))?;
        if let Some(s) = cell.get() {
            return Ok(s);
        }
        let s = obs_complex(&self.sys, &self.cond, u, self.truncation)?;
        Ok(cell.get_or_init(|| s))
    }

    /// Builds every open's complex up front, in parallel.
    pub fn build_all(&self) -> Result<()> {
        let opens: Vec<&OpenSet> = self.spaces.keys().collect();
        opens.par_iter().try_for_each(|u| self.space(u).map(|_| ()))
    }

    pub fn obs_complex(&self, u: &OpenSet) -> Result<&CochainComplex> {
        Ok(self.space(u)?.complex())
    }

    /// The extension map `Obs(U) → Obs(V)` for `U ⊆ V`, dual to restriction of fields.
    pub fn pushforward(&self, u: &OpenSet, v: &OpenSet) -> Result<Matrix> {
        if !u.is_subset(v) {
            return Err(Error::Precondition(format!("{u} is not contained in {v}")));
        }
        let su = self.space(u)?;
        let sv = self.space(v)?;
        let r = self.sys.conditioned_restriction(&sv.fields, &su.fields)?;
        let images: Vec<SymElement> = (0..su.fields.dim())
            .map(|a| r.row(a).iter().map(|(b, x)| (vec![*b], x.clone())).collect())
            .collect();
        Ok(su.ce.basis.algebra_map_matrix(&sv.ce.basis, &images))
    }

    pub fn pushforward_map(&self, u: &OpenSet, v: &OpenSet) -> Result<GradedMap> {
        let m = self.pushforward(u, v)?;
        GradedMap::new(self.space(u)?.ce.basis.space.clone(), self.space(v)?.ce.basis.space.clone(), 0, m)
    }

    /// `Obs(U₁) ⊗ ⋯ ⊗ Obs(U_k) → Obs(V)`: extend each input to `V`, then multiply in order.
    pub fn structure_map(&self, inputs: &[Observable], v: &OpenSet) -> Result<Observable> {
        for (i, a) in inputs.iter().enumerate() {
            if !a.open.is_subset(v) {
                return Err(Error::Precondition(format!("{} is not contained in {v}", a.open)));
            }
            for b in &inputs[i + 1..] {
                if !a.open.is_disjoint(&b.open) {
                    return Err(Error::Precondition(format!("{} and {} are not disjoint", a.open, b.open)));
                }
            }
        }
        let sv = self.space(v)?;
        let alg = &sv.ce.basis.algebra;
        let mut acc = alg.unit();
        for a in inputs {
            let pushed = self.pushforward(&a.open, v)?.mul_vec(&a.coefficients);
            acc = alg.mul(&acc, &sv.ce.basis.from_vector(&pushed));
        }
        Ok(sv.observable(self.truncation, &acc))
    }

    /// Checks that `cover` is Weiss at level `T` and that its augmented Čech complex is exact.
    pub fn cech_check(&self, v: &OpenSet, cover: &[OpenSet]) -> Result<CechReport> {
        check_weiss(v, cover, self.truncation)?;
        let m = cover.len();
        // simplices grouped by Čech degree p = |I| − 1
        let mut simplices: Vec<Vec<(Vec<usize>, OpenSet)>> = vec![Vec::new(); m];
        for size in 1..=m {
            for idx in (0..m).combinations(size) {
                let u = idx.iter().skip(1).fold(cover[idx[0]].clone(), |acc, i| acc.intersection(&cover[*i]));
                simplices[size - 1].push((idx, u));
            }
        }
        let opens: BTreeSet<&OpenSet> = simplices.iter().flatten().map(|(_, u)| u).collect();
        opens.par_iter().try_for_each(|u| self.space(u).map(|_| ()))?;
        let sv = self.space(v)?;

        let mut offsets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut basis = Vec::new();
        let mut level_dims = Vec::new();
        for (p, level) in simplices.iter().enumerate() {
            let before = basis.len();
            for (idx, u) in level {
                offsets.insert(idx.clone(), basis.len());
                let tag = idx.iter().map(|i| i.to_string()).join(",");
                for b in self.space(u)?.ce.basis.space.basis() {
                    basis.push(BasisElement { label: format!("[{tag}]{}", b.label), degree: b.degree - p as i32 });
                }
            }
            level_dims.push(basis.len() - before);
        }
        let n = basis.len();

        // faces: I ↦ I with its j-th vertex removed, sign (−1)^j
        let faces: Vec<(usize, Vec<usize>, Vec<usize>, Scalar)> = simplices
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(p, level)| {
                level.iter().flat_map(move |(idx, _)| {
                    (0..idx.len()).map(move |j| {
                        let mut face = idx.clone();
                        face.remove(j);
                        let s = if j % 2 == 0 { Scalar::from_integer(1.into()) } else { Scalar::from_integer((-1).into()) };
                        (p, idx.clone(), face, s)
                    })
                })
            })
            .collect();
        let face_maps: Vec<Matrix> = faces
            .par_iter()
            .map(|(p, idx, face, _)| {
                let u = &simplices[*p].iter().find(|(i, _)| i == idx).expect("listed").1;
                let w = &simplices[p - 1].iter().find(|(i, _)| i == face).expect("listed").1;
                self.pushforward(u, w)
            })
            .collect::<Result<_>>()?;
        let aug: Vec<Matrix> = simplices[0].par_iter().map(|(_, u)| self.pushforward(u, v)).collect::<Result<_>>()?;

        let mut total = Matrix::zeros(n, n);
        let mut cech = Matrix::zeros(n, n);
        for (p, level) in simplices.iter().enumerate() {
            for (idx, u) in level {
                let off = offsets[idx];
                let d = self.space(u)?.complex().differential().matrix();
                let neg = p % 2 == 1;
                for r in 0..d.rows() {
                    for (c, x) in d.row(r) {
                        total.add_to(off + r, off + c, &if neg { -x.clone() } else { x.clone() });
                    }
                }
            }
        }
        for ((_, idx, face, s), fm) in faces.iter().zip(&face_maps) {
            let (src, tgt) = (offsets[idx], offsets[face]);
            for r in 0..fm.rows() {
                for (c, x) in fm.row(r) {
                    total.add_to(tgt + r, src + c, &(s * x));
                    cech.add_to(tgt + r, src + c, &(s * x));
                }
            }
        }
        let mut eps = Matrix::zeros(sv.dim(), n);
        for ((idx, _), am) in simplices[0].iter().zip(&aug) {
            let off = offsets[idx];
            for r in 0..am.rows() {
                for (c, x) in am.row(r) {
                    eps.set(r, off + c, x.clone());
                }
            }
        }

        // homology of the augmented Čech complex, ignoring the CE differential
        let mut starts = vec![0usize];
        for d in &level_dims {
            starts.push(starts.last().unwrap() + d);
        }
        let mut ranks = vec![eps.rank()];
        for p in 1..m {
            let rows: Vec<usize> = (starts[p - 1]..starts[p]).collect();
            let cols: Vec<usize> = (starts[p]..starts[p + 1]).collect();
            ranks.push(cech.select(&rows, &cols).rank());
        }
        let mut cech_homology = BTreeMap::new();
        cech_homology.insert(-1, sv.dim() - ranks[0]);
        for p in 0..m {
            let out_rank = ranks[p];
            let in_rank = ranks.get(p + 1).copied().unwrap_or(0);
            cech_homology.insert(p as i32, level_dims[p] - out_rank - in_rank);
        }
        let exact = cech_homology.values().all(Zero::is_zero);

        let space = GradedSpace::new(basis)?;
        let tot = CochainComplex::from_matrix(space.clone(), total)?;
        let eps = GradedMap::new(space, sv.ce.basis.space.clone(), 0, eps)?;
        let q = is_quasi_iso(&eps, &tot, sv.complex())?;
        Ok(CechReport {
            open: v.to_string(),
            cover: cover.iter().map(ToString::to_string).collect(),
            simplices: simplices.iter().map(Vec::len).sum(),
            cech_homology,
            exact,
            quasi_iso: q.holds,
            witness_degree: q.witness_degree,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CechReport {
    pub open: String,
    pub cover: Vec<String>,
    pub simplices: usize,
    /// Homology of the augmented Čech complex by Čech degree; degree −1 is `Obs(V)`.
    pub cech_homology: BTreeMap<i32, usize>,
    pub exact: bool,
    pub quasi_iso: bool,
    pub witness_degree: Option<i32>,
}

impl CechReport {
    pub fn holds(&self) -> bool {
        self.exact && self.quasi_iso
    }
}

/// Every set of at most `level` points of `v` lies in one member of the cover.
pub fn is_weiss_cover(v: &OpenSet, cover: &[OpenSet], level: usize) -> bool {
    first_uncovered(v, cover, level).is_none() && cover.iter().all(|u| u.is_subset(v))
}

fn first_uncovered(v: &OpenSet, cover: &[OpenSet], level: usize) -> Option<Vec<Point>> {
    let pts = v.points();
    (1..=level.min(pts.len())).find_map(|k| {
        pts.iter()
            .copied()
            .combinations(k)
            .find(|s| !cover.iter().any(|u| s.iter().all(|p| u.contains_point(*p))))
    })
}

fn check_weiss(v: &OpenSet, cover: &[OpenSet], level: usize) -> Result<()> {
    if let Some(u) = cover.iter().find(|u| !u.is_subset(v)) {
        return Err(Error::Precondition(format!("cover member {u} is not contained in {v}")));
    }
    if let Some(s) = first_uncovered(v, cover, level) {
        let names = s.iter().map(|p| OpenSet::from_points(&[*p]).to_string()).join(" ");
        return Err(Error::Precondition(format!("not Weiss at level {level}: no member contains {names}")));
    }
    Ok(())
}

/// The trivial cover `{V}` and every minimal Weiss cover of `V` by proper sub-opens.
pub fn minimal_weiss_covers(mesh: &CellMesh, v: &OpenSet, level: usize) -> Vec<Vec<OpenSet>> {
    let candidates: Vec<OpenSet> = mesh.nonempty_opens().into_iter().filter(|u| u.is_subset(v) && u != v).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(chosen) = stack.pop() {
        let mut key = chosen.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            continue;
        }
        let cover: Vec<OpenSet> = chosen.iter().map(|i| candidates[*i].clone()).collect();
        match first_uncovered(v, &cover, level) {
            None => {
                let mut key = chosen.clone();
                key.sort_unstable();
                found.insert(key);
            }
            Some(s) => {
                for (i, u) in candidates.iter().enumerate() {
                    if !chosen.contains(&i) && s.iter().all(|p| u.contains_point(*p)) {
                        let mut next = chosen.clone();
                        next.push(i);
                        stack.push(next);
                    }
                }
            }
        }
    }
    let mut out = vec![vec![v.clone()]];
    for key in found {
        let cover: Vec<OpenSet> = key.iter().map(|i| candidates[*i].clone()).collect();
        let minimal = (0..cover.len()).all(|j| {
            let mut rest = cover.clone();
            rest.remove(j);
            first_uncovered(v, &rest, level).is_some()
        });
        if minimal {
            out.push(cover);
        }
    }
    out
}
