//! Chevalley–Eilenberg complexes: the truncated symmetric algebra on the dual of `F`.
//!
//! Generators `ξ^a` are dual to the basis of `F` and sit in degree `−|x_a|_F`. The differential is
//! the derivation for which `φ = Σ_a x_a ⊗ ξ^a` is a Maurer–Cartan element:
//! `(−1)^{|x_c|_L} dξ^c = −Σ_k (1/k!) Σ_a ε(a) [ℓ_k(x_{a_1},…,x_{a_k})]^c ξ^{a_1}⋯ξ^{a_k}`
//! with `ε(a) = (−1)^{Σ_{i<j} |ξ^{a_i}| |x_{a_j}|_L}`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::algebra::{antisym_sort, CyclicLInfinity};
use crate::error::{Error, Result};
use crate::linalg::{CochainComplex, GradedMap};
use crate::scalar::Scalar;
use crate::sym::{add_term, SymAlgebra, SymBasis, SymElement};

#[derive(Debug, Clone)]
pub struct CeComplex {
    pub basis: SymBasis,
    pub generator_images: Vec<SymElement>,
    pub complex: CochainComplex,
}

impl CeComplex {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

fn factorial(n: usize) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, i| acc * Scalar::from_integer((i as i64).into()))
}

/// Images `dξ^c` of the generators, as elements of the (untruncated) symmetric algebra.
pub fn ce_generator_images(alg: &CyclicLInfinity, sym: &SymAlgebra) -> Vec<SymElement> {
    let n = alg.dim();
    let ld = alg.ldegrees();
    let xi_deg: Vec<i32> = (0..n).map(|a| -alg.fdeg(a)).collect();
    let mut images = vec![SymElement::new(); n];
    let d = alg.differential();
    for c in 0..n {
        for (a, v) in d.row(c) {
            add_term(&mut images[c], vec![*a], v.clone());
        }
    }
    for (k, table) in alg.brackets() {
        let kf = factorial(*k);
        for (sorted, value) in &table.entries {
            let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
            for a in sorted {
                *mult.entry(*a).or_insert(0) += 1;
            }
            let weight = mult.values().fold(Scalar::one(), |acc, m| acc * factorial(*m)) / &kf;
            for perm in sorted.iter().copied().permutations(*k).unique() {
                let Some((neg_perm, _)) = antisym_sort(&perm, &ld) else { continue };
                let Some((neg_word, mono)) = sym.word_to_monomial(&perm) else { continue };
                let mut eps = 0i32;
                for i in 0..*k {
                    for j in i + 1..*k {
                        eps += xi_deg[perm[i]] * ld[perm[j]];
                    }
                }
                let negative = neg_perm ^ neg_word ^ (eps.rem_euclid(2) == 1);
                for (c, coeff) in value {
                    let t = &weight * coeff;
                    add_term(&mut images[*c], mono.clone(), if negative { -t } else { t });
                }
            }
        }
    }
    for (c, img) in images.iter_mut().enumerate() {
        // overall factor −(−1)^{|x_c|_L}
        if ld[c].rem_euclid(2) == 0 {
            for v in img.values_mut() {
                *v = -v.clone();
            }
        }
    }
    images
}

/// The Chevalley–Eilenberg complex truncated at weight `truncation`.
pub fn ce_differential(alg: &CyclicLInfinity, truncation: usize) -> Result<CeComplex> {
    if truncation < 1 {
        return Err(Error::InvalidInput("symmetric truncation must be at least 1".into()));
    }
    let labels = alg.space().basis().iter().map(|b| format!("{}*", b.label)).collect();
    let degrees = (0..alg.dim()).map(|a| -alg.fdeg(a)).collect();
    let sym = SymAlgebra::new(labels, degrees, Some(truncation));
    let images = ce_generator_images(alg, &sym);
    let basis = SymBasis::new(sym)?;
    let m = basis.derivation_matrix(&images, 1);
    let d = GradedMap::new(basis.space.clone(), basis.space.clone(), 1, m)?;
    let complex = CochainComplex::new(d)?;
    Ok(CeComplex { basis, generator_images: images, complex })
}

/// True when every generator image has no constant term, so truncation is a dg quotient.
pub fn images_have_no_constant(images: &[SymElement]) -> bool {
    images.iter().all(|e| e.get(&Vec::new()).is_none_or(Zero::is_zero))
}
