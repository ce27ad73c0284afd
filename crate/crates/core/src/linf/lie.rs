//! Finite-dimensional Lie algebras by structure constants, with the standard examples.

use num_traits::{One, Zero};

use super::algebra::{sv_add, CyclicLInfinity, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{GradedSpace, Matrix};
use crate::scalar::{q, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `structure[i][j] = [x_i, x_j]`
    structure: Vec<Vec<SparseVec>>,
    form: Option<Matrix>,
}

impl LieAlgebra {
    /// Builds from brackets `[x_i, x_j] = Σ c x_k`, filling in `[x_j, x_i]` by antisymmetry.
    pub fn new(labels: Vec<String>, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let n = labels.len();
        let mut structure = vec![vec![SparseVec::new(); n]; n];
        let mut given = vec![vec![false; n]; n];
        let mut grouped: std::collections::BTreeMap<(usize, usize), SparseVec> = Default::default();
        for (i, j, k, c) in entries {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidInput("structure constant index out of range".into()));
            }
            sv_add(grouped.entry((*i, *j)).or_default(), *k, c);
        }
        for ((i, j), v) in grouped {
            if i == j && !v.is_empty() {
                return Err(Error::Inconsistent(format!("[{0}, {0}] must vanish", labels[i])));
            }
            let neg: SparseVec = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
            if given[j][i] && structure[j][i] != neg {
                return Err(Error::Inconsistent(format!("[{}, {}] conflicts with antisymmetry", labels[i], labels[j])));
            }
            structure[i][j] = v;
            structure[j][i] = neg;
            given[i][j] = true;
        }
        Ok(LieAlgebra { labels, structure, form: None })
    }

    /// Builds from raw structure constants without imposing antisymmetry, so that
    /// malformed inputs can be inspected by the checks.
    pub fn from_raw(labels: Vec<String>, structure: Vec<Vec<SparseVec>>) -> Self {
        LieAlgebra { labels, structure, form: None }
    }

    pub fn sl2() -> Self {
        let labels = vec!["e".to_string(), "f".to_string(), "h".to_string()];
        LieAlgebra::new(labels, &[(2, 0, 0, q(2)), (2, 1, 1, q(-2)), (0, 1, 2, q(1))]).expect("sl2")
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        LieAlgebra::new(labels, &[]).expect("abelian")
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim();
        let labels: Vec<String> =
            self.labels.iter().map(|l| format!("{l}1")).chain(other.labels.iter().map(|l| format!("{l}2"))).collect();
        let m = labels.len();
        let mut structure = vec![vec![SparseVec::new(); m]; m];
        for i in 0..n {
            for j in 0..n {
                structure[i][j] = self.structure[i][j].clone();
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                structure[n + i][n + j] = other.structure[i][j].iter().map(|(k, c)| (n + k, c.clone())).collect();
            }
        }
        LieAlgebra { labels, structure, form: None }
    }

    pub fn with_form(mut self, form: Matrix) -> Self {
        self.form = Some(form);
        self
    }

    pub fn form(&self) -> Option<&Matrix> {
        self.form.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.structure[i][j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in &self.structure[i][j] {
                    out[*k] += a * b * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad_{x_i}`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in &self.structure[i][j] {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(i)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let p = ads[i].mul(&ads[j]).expect("square");
                let tr = (0..n).fold(Scalar::zero(), |acc, r| acc + p.get(r, r));
                k.set(i, j, tr);
            }
        }
        k
    }

    pub fn check_antisymmetry(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let neg: SparseVec = self.structure[j][i].iter().map(|(k, c)| (*k, -c.clone())).collect();
                if self.structure[i][j] != neg {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple violating `[[a,b],c] + [[b,c],a] + [[c,a],b] = 0`, with the residual.
    pub fn check_jacobi(&self) -> Option<((usize, usize, usize), Vec<Scalar>)> {
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let (x, y, z) = (e(a), e(b), e(c));
                    let t1 = self.bracket(&self.bracket(&x, &y), &z);
                    let t2 = self.bracket(&self.bracket(&y, &z), &x);
                    let t3 = self.bracket(&self.bracket(&z, &x), &y);
                    let r: Vec<Scalar> = (0..n).map(|k| &t1[k] + &t2[k] + &t3[k]).collect();
                    if r.iter().any(|v| !v.is_zero()) {
                        return Some(((a, b, c), r));
                    }
                }
            }
        }
        None
    }

    pub fn is_invariant_form(&self, form: &Matrix) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // B([a,b],c) = B(a,[b,c])
                    let ab = &self.structure[a][b];
                    let bc = &self.structure[b][c];
                    let l = ab.iter().fold(Scalar::zero(), |acc, (k, v)| acc + v * form.get(*k, c));
                    let r = bc.iter().fold(Scalar::zero(), |acc, (k, v)| acc + v * form.get(a, *k));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `g[1]` as an L∞ algebra (fields in degree −1), with an optional invariant form of degree 2.
    pub fn to_linf(&self, pairing: Option<&Matrix>) -> Result<CyclicLInfinity> {
        let space = GradedSpace::from_pairs(self.labels.iter().map(|l| (l.clone(), -1)));
        let mut alg = CyclicLInfinity::new(space);
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if !self.structure[i][j].is_empty() {
                    alg.set_bracket(&[i, j], self.structure[i][j].clone())?;
                }
            }
        }
        if let Some(p) = pairing {
            alg.set_pairing_matrix(2, p.clone(), p.rank() == n)?;
        }
        Ok(alg)
    }

    /// `g[1] ⊕ g^∨` with the adjoint and coadjoint brackets, the dual summand in field degree
    /// `dual_degree`. Its Chevalley–Eilenberg complex is `C•(g, Sym(g[−dual_degree]))`.
    pub fn coadjoint_extension(&self, dual_degree: i32) -> Result<CyclicLInfinity> {
        let n = self.dim();
        let mut pairs: Vec<(String, i32)> = self.labels.iter().map(|l| (l.clone(), -1)).collect();
        pairs.extend(self.labels.iter().map(|l| (format!("{l}^"), dual_degree)));
        let mut alg = CyclicLInfinity::new(GradedSpace::from_pairs(pairs));
        for i in 0..n {
            for j in 0..n {
                if !self.structure[i][j].is_empty() {
                    alg.set_bracket(&[i, j], self.structure[i][j].clone())?;
                }
                // ℓ_2(x_i, ξ^j) = ad*_{x_i} ξ^j = −ξ^j ∘ ad_{x_i}, whose k-th coefficient is −c^j_{ik}
                let mut v = SparseVec::new();
                for k in 0..n {
                    if let Some(c) = self.structure[i][k].get(&j) {
                        sv_add(&mut v, n + k, &-c.clone());
                    }
                }
                if !v.is_empty() {
                    alg.set_bracket(&[i, n + j], v)?;
                }
            }
        }
        Ok(alg)
    }

    /// The boundary data of BF theory on a line: `g[1] ⊕ g^∨[−1]` with the adjoint and
    /// coadjoint brackets and the evaluation pairing of degree 0.
    pub fn bf_boundary(&self) -> Result<CyclicLInfinity> {
        let n = self.dim();
        let mut alg = self.coadjoint_extension(1)?;
        let entries: Vec<(usize, usize, Scalar)> = (0..n).map(|i| (i, n + i, Scalar::one())).collect();
        alg.set_pairing(0, &entries, true)?;
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_is_a_lie_algebra_with_invariant_killing_form() {
        let g = LieAlgebra::sl2();
        assert!(g.check_antisymmetry().is_none());
        assert!(g.check_jacobi().is_none());
        let k = g.killing_form();
        assert_eq!(k.get(0, 1), q(4));
        assert_eq!(k.get(2, 2), q(8));
        assert!(g.is_invariant_form(&k));
        assert!(!g.is_invariant_form(&Matrix::identity(3)));
    }

    #[test]
    fn perturbed_sl2_fails_jacobi_on_efh() {
        let labels = vec!["e".into(), "f".into(), "h".into()];
        let g = LieAlgebra::new(labels, &[(2, 0, 0, q(2)), (2, 1, 1, q(-2)), (0, 1, 2, q(1)), (0, 1, 0, q(1))]).unwrap();
        let ((a, b, c), _) = g.check_jacobi().unwrap();
        assert_eq!((a, b, c), (0, 1, 2));
    }
}
