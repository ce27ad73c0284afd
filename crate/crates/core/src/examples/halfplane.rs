//! Reduced local functionals of two-dimensional BF theory on the half-plane with the `B`
//! condition, after contracting the de Rham factors: the total complex of
//! `C•_red(g, Sym(g))[2] → Sym^{≥1}(g)[1]` with the projection onto cochain degree zero.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{BasisElement, CochainComplex, GradedMap, GradedSpace, Matrix};
use crate::linf::{ce_generator_images, LieAlgebra};
use crate::scalar::Scalar;
use crate::sym::{Monomial, SymAlgebra, SymBasis};

use super::lie::{lie_cohomology, restrict_complex, LieModule};

/// Dimensions by B-weight, then by total degree.
pub type WeightTable = BTreeMap<usize, BTreeMap<i32, usize>>;

/// The two-term total complex, with each basis element tagged by its B-weight.
#[derive(Debug, Clone)]
pub struct LocalFunctionalComplex {
    pub complex: CochainComplex,
    pub weights: Vec<usize>,
    /// Index of the boundary-part copy of each pure `Sym^{≥1}(g)` monomial.
    pub boundary_part: BTreeMap<Monomial, usize>,
    pub lie_dim: usize,
    pub weight_cap: usize,
}

fn monomials(n: usize, weight_cap: usize) -> Vec<Monomial> {
    // odd generators 0..n (dual to g[1]), even generators n..2n (the Sym(g) factor)
    let mut even: Vec<Monomial> = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..weight_cap {
        let mut next = Vec::new();
        for m in &layer {
            let start: usize = m.last().copied().unwrap_or(n);
            for gi in start..2 * n {
                let mut mm: Monomial = m.clone();
                mm.push(gi);
                next.push(mm);
            }
        }
        even.extend(next.iter().cloned());
        layer = next;
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let odd: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        for e in &even {
            if odd.is_empty() && e.is_empty() {
                continue;
            }
            let mut m = odd.clone();
            m.extend(e);
            out.push(m);
        }
    }
    out.sort_by_key(|m| (m.len(), m.clone()));
    out
}

impl LocalFunctionalComplex {
    /// Builds the bulk part from the Chevalley–Eilenberg complex of `g ⋉ g^∨` and adjoins the
    /// boundary part.
    pub fn new(g: &LieAlgebra, weight_cap: usize) -> Result<Self> {
        let n = g.dim();
        if n > 16 {
            return Err(Error::InvalidInput("Lie algebras of dimension above 16 are not supported".into()));
        }
        let alg = g.coadjoint_extension(0)?;
        let labels = alg.space().basis().iter().map(|b| format!("{}*", b.label)).collect();
        let degrees = (0..alg.dim()).map(|a| -alg.fdeg(a)).collect();
        let sym = SymAlgebra::new(labels, degrees, None);
        let images = ce_generator_images(&alg, &sym);
        let mons = monomials(n, weight_cap);
        let bulk = SymBasis::from_monomials(sym, mons);
        let dx = bulk.derivation_matrix(&images, 1);
        let b_weight = |m: &Monomial| m.iter().filter(|x| **x >= n).count();

        let nx = bulk.dim();
        let mut basis: Vec<BasisElement> = (0..nx)
            .map(|i| BasisElement { label: format!("bulk:{}", bulk.space.label(i)), degree: bulk.space.degree(i) - 2 })
            .collect();
        let mut weights: Vec<usize> = bulk.monomials.iter().map(b_weight).collect();
        let mut boundary_part = BTreeMap::new();
        for m in bulk.monomials.iter().filter(|m| m.iter().all(|x| *x >= n)) {
            boundary_part.insert(m.clone(), nx + boundary_part.len());
            basis.push(BasisElement { label: format!("bdry:{}", bulk.algebra.monomial_label(m)), degree: -1 });
            weights.push(m.len());
        }
        let total = basis.len();
        let mut d = Matrix::zeros(total, total);
        for r in 0..nx {
            for (c, v) in dx.row(r) {
                d.set(r, *c, v.clone());
            }
        }
        for (m, yi) in &boundary_part {
            let xi = bulk.index_of(m).expect("pure monomial is in the bulk basis");
            d.set(*yi, xi, Scalar::one());
        }
        let space = GradedSpace::new(basis)?;
        let complex = CochainComplex::new(GradedMap::new(space.clone(), space, 1, d)?)?;
        Ok(LocalFunctionalComplex { complex, weights, boundary_part, lie_dim: n, weight_cap })
    }

    /// True when no differential entry connects different B-weights.
    pub fn preserves_weight(&self) -> bool {
        let d = self.complex.differential().matrix();
        (0..d.rows()).all(|r| d.row(r).iter().all(|(c, _)| self.weights[*c] == self.weights[r]))
    }

    pub fn weight_block(&self, w: usize) -> Result<CochainComplex> {
        let idx: Vec<usize> = (0..self.weights.len()).filter(|i| self.weights[*i] == w).collect();
        restrict_complex(&self.complex, &idx)
    }

    /// Cohomology by weight computed from ranks of the total differential.
    pub fn cohomology(&self) -> Result<WeightTable> {
        let mut out = BTreeMap::new();
        for w in 0..=self.weight_cap {
            let mut dims = self.weight_block(w)?.cohomology_dims();
            dims.retain(|_, v| *v > 0);
            out.insert(w, dims);
        }
        Ok(out)
    }

    /// `J_x(β) = (∫ ι*β)(x)`: the weight-one boundary element `x ∈ Sym¹(g)`.
    pub fn jx(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.lie_dim {
            return Err(Error::DimensionMismatch(format!("element has {} coordinates, expected {}", x.len(), self.lie_dim)));
        }
        let mut v = vec![Scalar::zero(); self.complex.dim()];
        for (j, c) in x.iter().enumerate() {
            v[self.boundary_part[&vec![self.lie_dim + j]]] = c.clone();
        }
        Ok(v)
    }

    /// Rank of the span of the classes of `J_x` for the given elements.
    pub fn jx_class_rank(&self, xs: &[Vec<Scalar>]) -> Result<usize> {
        let vs = xs.iter().map(|x| self.jx(x)).collect::<Result<Vec<_>>>()?;
        if let Some(v) = vs.iter().find(|v| !self.complex.is_cocycle(v)) {
            return Err(Error::Inconsistent(format!("J is not closed: {v:?}")));
        }
        Ok(self.complex.class_rank(-1, &vs))
    }
}

/// `H^{≥1}(g, Sym^w(g))` in degree `p − 2` plus `Sym^w(g)/Sym^w(g)^g` in degree `−1`, computed
/// from the Lie cohomology and the invariants separately.
pub fn closed_form(g: &LieAlgebra, weight_cap: usize) -> Result<WeightTable> {
    let module = LieModule::sym_powers(g, 0, weight_cap)?;
    let h = lie_cohomology(g, &module)?;
    let mut out = BTreeMap::new();
    for w in 0..=weight_cap {
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for (p, d) in &h.by_weight[&w] {
            if *p >= 1 && *d > 0 {
                *dims.entry(p - 2).or_insert(0) += d;
            }
        }
        if w >= 1 {
            let coinv = module.weight_dim(w) - module.invariant_dim(w);
            if coinv > 0 {
                *dims.entry(-1).or_insert(0) += coinv;
            }
        }
        out.insert(w, dims);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfplaneReport {
    pub lie_dim: usize,
    pub weight_cap: usize,
    pub direct: WeightTable,
    pub closed_form: WeightTable,
    pub agrees: bool,
    pub weight_preserved: bool,
}

impl HalfplaneReport {
    pub fn total(&self, w: usize) -> usize {
        self.direct.get(&w).map_or(0, |m| m.values().sum())
    }
}

pub fn o_gb_halfplane(g: &LieAlgebra, weight_cap: usize) -> Result<(LocalFunctionalComplex, HalfplaneReport)> {
    let c = LocalFunctionalComplex::new(g, weight_cap)?;
    let direct = c.cohomology()?;
    let closed = closed_form(g, weight_cap)?;
    let report = HalfplaneReport {
        lie_dim: g.dim(),
        weight_cap,
        agrees: direct == closed,
        direct,
        closed_form: closed,
        weight_preserved: c.preserves_weight(),
    };
    Ok((c, report))
}

/// Closedness of each `J_{x_i}` on basis elements and whether their classes span the
/// weight-one cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JxReport {
    pub closed: Vec<bool>,
    pub class_rank: usize,
    pub weight_one_dim: usize,
    pub spans: bool,
}

pub fn jx_functional(c: &LocalFunctionalComplex) -> Result<JxReport> {
    let n = c.lie_dim;
    let xs: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    let closed = xs
        .iter()
        .map(|x| c.jx(x).map(|v| c.complex.is_cocycle(&v)))
        .collect::<Result<Vec<_>>>()?;
    let class_rank = c.jx_class_rank(&xs)?;
    let weight_one_dim = c.weight_block(1)?.cohomology_dims().values().sum();
    Ok(JxReport { closed, class_rank, weight_one_dim, spans: class_rank == weight_one_dim })
}
