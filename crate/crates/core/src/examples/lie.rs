//! Lie algebra cohomology with coefficients in a graded module, built directly on
//! `Λ•g^∨ ⊗ V` with the classical Chevalley–Eilenberg formula.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{BasisElement, CochainComplex, GradedMap, GradedSpace, Matrix};
use crate::linf::LieAlgebra;
use crate::sym::{SymAlgebra, SymBasis, SymElement};

/// A finite graded `g`-module, split into weight pieces preserved by the action.
#[derive(Debug, Clone)]
pub struct LieModule {
    pub space: GradedSpace,
    pub weights: Vec<usize>,
    /// `action[i]` is the matrix of `x_i`.
    pub action: Vec<Matrix>,
}

impl LieModule {
    pub fn trivial(g: &LieAlgebra) -> Self {
        LieModule {
            space: GradedSpace::from_pairs([("1", 0)]),
            weights: vec![0],
            action: vec![Matrix::zeros(1, 1); g.dim()],
        }
    }

    /// `Sym^{≤W}(g[shift])` with the adjoint action extended as a derivation; the weight is the
    /// symmetric degree.
    pub fn sym_powers(g: &LieAlgebra, shift: i32, max_weight: usize) -> Result<Self> {
        let n = g.dim();
        let sym = SymAlgebra::new(g.labels().to_vec(), vec![-shift; n], Some(max_weight));
        let basis = SymBasis::new(sym)?;
        let action = (0..n)
            .map(|i| {
                let images: Vec<SymElement> = (0..n)
                    .map(|j| g.bracket_basis(i, j).iter().map(|(k, c)| (vec![*k], c.clone())).collect())
                    .collect();
                basis.derivation_matrix(&images, 0)
            })
            .collect();
        let weights = (0..basis.dim()).map(|i| basis.weight(i)).collect();
        Ok(LieModule { space: basis.space, weights, action })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn max_weight(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// First pair `(i, j)` with `[ρ(x_i), ρ(x_j)] ≠ ρ([x_i, x_j])`.
    pub fn representation_defect(&self, g: &LieAlgebra) -> Option<(usize, usize)> {
        let n = g.dim();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.action[i], &self.action[j]);
                let comm = a.mul(b).ok()?.sub(&b.mul(a).ok()?).ok()?;
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                for (k, c) in g.bracket_basis(i, j) {
                    rhs = rhs.add(&self.action[*k].scaled(c)).ok()?;
                }
                if !comm.sub(&rhs).ok()?.is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Dimension of the invariants of the weight-`w` piece: the common kernel of all `ρ(x_i)`.
    pub fn invariant_dim(&self, w: usize) -> usize {
        let idx: Vec<usize> = (0..self.dim()).filter(|i| self.weights[*i] == w).collect();
        if idx.is_empty() {
            return 0;
        }
        let rows: Vec<usize> = (0..self.dim()).collect();
        let mut stacked = Vec::new();
        for a in &self.action {
            stacked.extend(a.select(&rows, &idx).to_dense());
        }
        if stacked.is_empty() {
            return idx.len();
        }
        let m = Matrix::from_dense(stacked.len(), idx.len(), &stacked).expect("rectangular");
        idx.len() - m.rank()
    }

    pub fn weight_dim(&self, w: usize) -> usize {
        self.weights.iter().filter(|x| **x == w).count()
    }
}

/// `ξ^i ∧ ξ^S` as a sign and a bitmask, or `None` when `i ∈ S`.
fn wedge_left(i: usize, mask: u32) -> Option<(bool, u32)> {
    if mask & (1 << i) != 0 {
        return None;
    }
    let below = (mask & ((1u32 << i) - 1)).count_ones();
    Some((below % 2 == 1, mask | (1 << i)))
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// `C•(g, V)` with basis `ξ^S ⊗ v`, `S` running over subsets in order of size.
#[derive(Debug, Clone)]
pub struct LieCochains {
    pub complex: CochainComplex,
    /// `(S, v)` for each basis element.
    pub cells: Vec<(u32, usize)>,
    pub weights: Vec<usize>,
}

impl LieCochains {
    pub fn index_of(&self, mask: u32, v: usize) -> Option<usize> {
        self.cells.iter().position(|c| *c == (mask, v))
    }

    /// The weight-`w` summand as a complex of its own.
    pub fn weight_block(&self, w: usize) -> Result<CochainComplex> {
        let idx: Vec<usize> = (0..self.cells.len()).filter(|i| self.weights[*i] == w).collect();
        restrict_complex(&self.complex, &idx)
    }
}

/// The summand on the given indices of a complex whose differential preserves it.
pub fn restrict_complex(c: &CochainComplex, idx: &[usize]) -> Result<CochainComplex> {
    let space = GradedSpace::new(idx.iter().map(|i| c.space().basis()[*i].clone()).collect())?;
    let m = c.differential().matrix().select(idx, idx);
    CochainComplex::new(GradedMap::new(space.clone(), space, 1, m)?)
}

/// Chevalley–Eilenberg cochains `Λ•g^∨ ⊗ V` with
/// `d(ξ^S ⊗ v) = d_Λ ξ^S ⊗ v + Σ_i ξ^i ∧ ξ^S ⊗ x_i v` and `dξ^k = −Σ_{i<j} c^k_{ij} ξ^i ξ^j`.
pub fn lie_cochains(g: &LieAlgebra, module: &LieModule) -> Result<LieCochains> {
    let n = g.dim();
    if n > 16 {
        return Err(Error::InvalidInput("Lie algebras of dimension above 16 are not supported".into()));
    }
    if let Some((i, j)) = g.check_jacobi().map(|(t, _)| (t.0, t.1)) {
        return Err(Error::Inconsistent(format!("Jacobi fails on ({}, {})", g.labels()[i], g.labels()[j])));
    }
    if module.action.len() != n {
        return Err(Error::DimensionMismatch("module action needs one matrix per generator".into()));
    }
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let dv = module.dim();
    let mut cells = Vec::with_capacity(masks.len() * dv);
    let mut basis = Vec::with_capacity(masks.len() * dv);
    for m in &masks {
        for v in 0..dv {
            let label = if *m == 0 {
                module.space.label(v).to_string()
            } else {
                let s: Vec<String> = members(*m).iter().map(|i| format!("{}*", g.labels()[*i])).collect();
                format!("{}⊗{}", s.join("∧"), module.space.label(v))
            };
            basis.push(BasisElement { label, degree: m.count_ones() as i32 + module.space.degree(v) });
            cells.push((*m, v));
        }
    }
    let pos: BTreeMap<(u32, usize), usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let total = cells.len();
    let mut d = Matrix::zeros(total, total);
    for (col, (mask, v)) in cells.iter().enumerate() {
        let s = members(*mask);
        // d_Λ as a derivation: the m-th factor is replaced by its image with sign (−1)^m
        for (m, k) in s.iter().enumerate() {
            let rest = mask & !(1 << k);
            for i in 0..n {
                for j in i + 1..n {
                    let Some(c) = g.bracket_basis(i, j).get(k) else { continue };
                    // ξ^{s_0}…ξ^{s_{m−1}} (ξ^i ξ^j) ξ^{s_{m+1}}…, sorted
                    let mut word: Vec<usize> = s[..m].to_vec();
                    word.extend([i, j]);
                    word.extend(&s[m + 1..]);
                    let Some((neg, out)) = sort_wedge(&word) else { continue };
                    debug_assert_eq!(out & rest, rest);
                    let mut coef = -c.clone();
                    if (m % 2 == 1) ^ neg {
                        coef = -coef;
                    }
                    d.add_to(pos[&(out, *v)], col, &coef);
                }
            }
        }
        for i in 0..n {
            let Some((neg, out)) = wedge_left(i, *mask) else { continue };
            for r in 0..dv {
                let a = module.action[i].get(r, *v);
                if a.is_zero() {
                    continue;
                }
                d.add_to(pos[&(out, r)], col, &if neg { -a } else { a });
            }
        }
    }
    let space = GradedSpace::new(basis)?;
    let complex = CochainComplex::new(GradedMap::new(space.clone(), space, 1, d)?)?;
    let weights = cells.iter().map(|(_, v)| module.weights[*v]).collect();
    Ok(LieCochains { complex, cells, weights })
}

fn sort_wedge(word: &[usize]) -> Option<(bool, u32)> {
    let mut mask = 0u32;
    let mut inversions = 0usize;
    for (a, x) in word.iter().enumerate() {
        if mask & (1 << x) != 0 {
            return None;
        }
        mask |= 1 << x;
        inversions += word[..a].iter().filter(|y| *y > x).count();
    }
    Some((inversions % 2 == 1, mask))
}

/// Cohomology dimensions of `C•(g, V)` by weight and degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieCohomology {
    pub by_weight: BTreeMap<usize, BTreeMap<i32, usize>>,
}

impl LieCohomology {
    pub fn dim(&self, weight: usize, degree: i32) -> usize {
        self.by_weight.get(&weight).and_then(|m| m.get(&degree)).copied().unwrap_or(0)
    }
}

pub fn lie_cohomology(g: &LieAlgebra, module: &LieModule) -> Result<LieCohomology> {
    if let Some((i, j)) = module.representation_defect(g) {
        return Err(Error::Inconsistent(format!(
            "module action is not a representation on ({}, {})",
            g.labels()[i],
            g.labels()[j]
        )));
    }
    let cochains = lie_cochains(g, module)?;
    let mut by_weight = BTreeMap::new();
    for w in 0..=module.max_weight() {
        let block = cochains.weight_block(w)?;
        let mut dims = block.cohomology_dims();
        dims.retain(|_, v| *v > 0);
        for k in 0..=g.dim() as i32 {
            let k = k + degree_offset(module, w);
            dims.entry(k).or_insert(0);
        }
        by_weight.insert(w, dims);
    }
    Ok(LieCohomology { by_weight })
}

/// Degree of the weight-`w` piece of the module (it is concentrated in one degree for the
/// modules used here).
fn degree_offset(module: &LieModule, w: usize) -> i32 {
    (0..module.dim()).find(|i| module.weights[*i] == w).map_or(0, |i| module.space.degree(i))
}
