//! Graded-commutative polynomial algebras on finitely many generators, optionally truncated by weight.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{BasisElement, GradedMap, GradedSpace, Matrix};
use crate::scalar::Scalar;

/// Sorted generator indices; odd generators appear at most once.
pub type Monomial = Vec<usize>;

/// Linear combination of monomials.
pub type SymElement = BTreeMap<Monomial, Scalar>;

pub fn add_term(e: &mut SymElement, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match e.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                e.remove(&m);
            }
        }
        None => {
            e.insert(m, c);
        }
    }
}

pub fn add_into(acc: &mut SymElement, other: &SymElement, scale: &Scalar) {
    for (m, c) in other {
        add_term(acc, m.clone(), c * scale);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymAlgebra {
    labels: Vec<String>,
    degrees: Vec<i32>,
    truncation: Option<usize>,
}

impl SymAlgebra {
    pub fn new(labels: Vec<String>, degrees: Vec<i32>, truncation: Option<usize>) -> Self {
        assert_eq!(labels.len(), degrees.len());
        SymAlgebra { labels, degrees, truncation }
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn generator_degree(&self, g: usize) -> i32 {
        self.degrees[g]
    }

    pub fn generator_degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn degree(&self, m: &[usize]) -> i32 {
        m.iter().map(|g| self.degrees[*g]).sum()
    }

    fn odd(&self, g: usize) -> bool {
        self.degrees[g].rem_euclid(2) == 1
    }

    pub fn generator(&self, g: usize) -> SymElement {
        SymElement::from([(vec![g], Scalar::one())])
    }

    pub fn unit(&self) -> SymElement {
        SymElement::from([(Vec::new(), Scalar::one())])
    }

    /// Sorts the concatenation `a · b`, returning the Koszul sign, or `None` if it vanishes.
    pub fn mul_monomials(&self, a: &[usize], b: &[usize]) -> Option<(bool, Monomial)> {
        let mut negative = false;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        // number of odd elements of `a` not yet emitted
        let mut odd_remaining = a.iter().filter(|g| self.odd(**g)).count();
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
                if self.odd(a[i]) {
                    odd_remaining -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else {
                if self.odd(b[j]) && odd_remaining % 2 == 1 {
                    negative = !negative;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        if out.windows(2).any(|w| w[0] == w[1] && self.odd(w[0])) {
            return None;
        }
        Some((negative, out))
    }

    /// Product of arbitrary words (unsorted sequences of generators) as a signed monomial.
    pub fn word_to_monomial(&self, word: &[usize]) -> Option<(bool, Monomial)> {
        let mut acc: (bool, Monomial) = (false, Vec::new());
        for g in word {
            let (s, m) = self.mul_monomials(&acc.1, &[*g])?;
            acc = (acc.0 ^ s, m);
        }
        Some(acc)
    }

    pub fn mul(&self, x: &SymElement, y: &SymElement) -> SymElement {
        let mut out = SymElement::new();
        for (ma, ca) in x {
            for (mb, cb) in y {
                if let Some(t) = self.truncation {
                    if ma.len() + mb.len() > t {
                        continue;
                    }
                }
                if let Some((neg, m)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    add_term(&mut out, m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Extends generator images to a derivation of the given degree, applied to one monomial.
    pub fn derivation_on_monomial(&self, images: &[SymElement], degree: i32, m: &[usize]) -> SymElement {
        let mut out = SymElement::new();
        let mut prefix_deg = 0;
        for i in 0..m.len() {
            let img = &images[m[i]];
            if !img.is_empty() {
                let pre = SymElement::from([(m[..i].to_vec(), Scalar::one())]);
                let post = SymElement::from([(m[i + 1..].to_vec(), Scalar::one())]);
                let term = self.mul(&self.mul(&pre, img), &post);
                let s = if (degree * prefix_deg).rem_euclid(2) == 1 { -Scalar::one() } else { Scalar::one() };
                add_into(&mut out, &term, &s);
            }
            prefix_deg += self.degrees[m[i]];
        }
        out
    }

    pub fn apply_derivation(&self, images: &[SymElement], degree: i32, x: &SymElement) -> SymElement {
        let mut out = SymElement::new();
        for (m, c) in x {
            add_into(&mut out, &self.derivation_on_monomial(images, degree, m), c);
        }
        out
    }

    /// All monomials of weight at most `max_weight`, ordered by weight then lexicographically.
    pub fn monomials_up_to(&self, max_weight: usize) -> Vec<Monomial> {
        let n = self.num_generators();
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Monomial> = vec![Vec::new()];
        for _ in 0..max_weight {
            let mut next = Vec::new();
            for m in &layer {
                let start = m.last().copied().unwrap_or(0);
                for g in start..n {
                    if m.last() == Some(&g) && self.odd(g) {
                        continue;
                    }
                    let mut mm = m.clone();
                    mm.push(g);
                    next.push(mm);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn monomial_label(&self, m: &[usize]) -> String {
        if m.is_empty() {
            return "1".to_string();
        }
        m.iter().map(|g| self.labels[*g].as_str()).collect::<Vec<_>>().join("·")
    }
}

/// A truncated symmetric algebra with an enumerated monomial basis.
#[derive(Debug, Clone)]
pub struct SymBasis {
    pub algebra: SymAlgebra,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    pub space: GradedSpace,
}

impl SymBasis {
    pub fn new(algebra: SymAlgebra) -> Result<Self> {
        let t = algebra
            .truncation()
            .ok_or_else(|| Error::InvalidInput("an enumerated basis needs a weight truncation".into()))?;
        let monomials = algebra.monomials_up_to(t);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let basis = monomials
            .iter()
            .map(|m| BasisElement { label: algebra.monomial_label(m), degree: algebra.degree(m) })
            .collect();
        let space = GradedSpace::from_basis_unchecked(basis);
        Ok(SymBasis { algebra, monomials, index, space })
    }

    /// The span of chosen monomials, which must be sorted words. Maps built on it drop terms
    /// outside the span, so it is meant for sub-bases preserved by the maps in use.
    pub fn from_monomials(algebra: SymAlgebra, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let basis = monomials
            .iter()
            .map(|m| BasisElement { label: algebra.monomial_label(m), degree: algebra.degree(m) })
            .collect();
        let space = GradedSpace::from_basis_unchecked(basis);
        SymBasis { algebra, monomials, index, space }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.monomials[i].len()
    }

    pub fn to_vector(&self, x: &SymElement) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (m, c) in x {
            if let Some(i) = self.index_of(m) {
                v[i] += c;
            }
        }
        v
    }

    pub fn from_vector(&self, v: &[Scalar]) -> SymElement {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.monomials[i].clone(), c.clone()))
            .collect()
    }

    /// Matrix of a derivation given by generator images.
    pub fn derivation_matrix(&self, images: &[SymElement], degree: i32) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (col, mono) in self.monomials.iter().enumerate() {
            for (tm, c) in self.algebra.derivation_on_monomial(images, degree, mono) {
                if let Some(r) = self.index_of(&tm) {
                    m.add_to(r, col, &c);
                }
            }
        }
        m
    }

    pub fn derivation_map(&self, images: &[SymElement], degree: i32) -> Result<GradedMap> {
        GradedMap::new(self.space.clone(), self.space.clone(), degree, self.derivation_matrix(images, degree))
    }

    /// Algebra map to another truncated symmetric algebra determined by images of generators.
    pub fn algebra_map_matrix(&self, target: &SymBasis, images: &[SymElement]) -> Matrix {
        let mut m = Matrix::zeros(target.dim(), self.dim());
        for (col, mono) in self.monomials.iter().enumerate() {
            let mut acc = target.algebra.unit();
            for g in mono {
                acc = target.algebra.mul(&acc, &images[*g]);
            }
            for (tm, c) in acc {
                if let Some(r) = target.index_of(&tm) {
                    m.add_to(r, col, &c);
                }
            }
        }
        m
    }

    /// Dimensions of each weight-graded piece.
    pub fn dims_by_weight(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for m in &self.monomials {
            *out.entry(m.len()).or_insert(0) += 1;
        }
        out
    }
}
