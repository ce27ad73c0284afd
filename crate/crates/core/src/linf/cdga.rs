//! Finite commutative dg algebras and tensoring L∞ algebras with them.

use num_traits::{One, Zero};

use super::algebra::{sv_add, sv_axpy, CyclicLInfinity, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{BasisElement, GradedSpace, Matrix};
use crate::scalar::{sign, Scalar};

/// How products that leave the finite basis are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    /// Products past the cap are reported as overflow errors.
    Capped { cap: usize },
    /// Products are taken in a finite quotient algebra, so they are always defined.
    Quotient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCdga {
    pub space: GradedSpace,
    pub d: Matrix,
    /// `products[i][j] = ω_i ω_j`, or `None` past the cap.
    products: Vec<Vec<Option<SparseVec>>>,
    pub unit: usize,
    pub mode: ProductMode,
    /// Degree of the forms that integrate to numbers.
    pub top_degree: i32,
    /// `integral[i][j] = ∫ ω_i ω_j` computed in the underlying genuine forms.
    pub integral: Option<Matrix>,
    /// Value of each basis element at the boundary point (0 for non-functions).
    pub eval0: Option<Vec<Scalar>>,
}

impl FiniteCdga {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        space: GradedSpace,
        d: Matrix,
        products: Vec<Vec<Option<SparseVec>>>,
        unit: usize,
        mode: ProductMode,
        top_degree: i32,
        integral: Option<Matrix>,
        eval0: Option<Vec<Scalar>>,
    ) -> Self {
        FiniteCdga { space, d, products, unit, mode, top_degree, integral, eval0 }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.space.degree(i)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Result<&SparseVec> {
        self.products[i][j].as_ref().ok_or_else(|| Error::DegreeCapOverflow {
            what: format!("product {} · {}", self.space.label(i), self.space.label(j)),
            cap: match self.mode {
                ProductMode::Capped { cap } => cap,
                ProductMode::Quotient => 0,
            },
        })
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let p = self.mul_basis(*i, *j)?;
                sv_axpy(&mut out, &(a * b), p);
            }
        }
        Ok(out)
    }

    /// Product of a sequence of basis elements.
    pub fn mul_many(&self, idx: &[usize]) -> Result<SparseVec> {
        let mut acc = SparseVec::from([(self.unit, Scalar::one())]);
        for i in idx {
            acc = self.mul(&acc, &SparseVec::from([(*i, Scalar::one())]))?;
        }
        Ok(acc)
    }

    pub fn d_basis(&self, i: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for r in 0..self.dim() {
            let v = self.d.get(r, i);
            if !v.is_zero() {
                out.insert(r, v);
            }
        }
        out
    }

    pub fn d_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            sv_axpy(&mut out, a, &self.d_basis(*i));
        }
        out
    }

    pub fn integral_pair(&self, i: usize, j: usize) -> Scalar {
        self.integral.as_ref().map_or_else(Scalar::zero, |m| m.get(i, j))
    }

    /// Checks `d² = 0`, the unit, graded commutativity, associativity and the Leibniz rule on
    /// every basis tuple where all products involved are defined. Returns a description of the
    /// first failure.
    pub fn check_axioms(&self) -> Option<String> {
        let n = self.dim();
        let sq = self.d.mul(&self.d).expect("square");
        if !sq.is_zero() {
            return Some("d² ≠ 0".into());
        }
        for i in 0..n {
            let e = SparseVec::from([(i, Scalar::one())]);
            if self.mul_basis(self.unit, i).ok() != Some(&e) || self.mul_basis(i, self.unit).ok() != Some(&e) {
                return Some(format!("unit fails on {}", self.space.label(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (Ok(a), Ok(b)) = (self.mul_basis(i, j), self.mul_basis(j, i)) else { continue };
                let mut b = b.clone();
                for v in b.values_mut() {
                    *v = &*v * sign((self.degree(i) * self.degree(j)) as i64);
                }
                if *a != b {
                    return Some(format!("graded commutativity fails on ({}, {})", self.space.label(i), self.space.label(j)));
                }
                // Leibniz: d(ab) = da b + (−1)^{|a|} a db
                let lhs = self.d_vec(a);
                let r1 = self.mul(&self.d_basis(i), &SparseVec::from([(j, Scalar::one())]));
                let r2 = self.mul(&SparseVec::from([(i, Scalar::one())]), &self.d_basis(j));
                if let (Ok(r1), Ok(r2)) = (r1, r2) {
                    let mut rhs = r1;
                    sv_axpy(&mut rhs, &sign(self.degree(i) as i64), &r2);
                    if lhs != rhs {
                        return Some(format!("Leibniz fails on ({}, {})", self.space.label(i), self.space.label(j)));
                    }
                }
                for k in 0..n {
                    let l = self.mul(a, &SparseVec::from([(k, Scalar::one())]));
                    let r = self.mul_basis(j, k).and_then(|jk| self.mul(&SparseVec::from([(i, Scalar::one())]), jk));
                    if let (Ok(l), Ok(r)) = (l, r) {
                        if l != r {
                            return Some(format!(
                                "associativity fails on ({}, {}, {})",
                                self.space.label(i),
                                self.space.label(j),
                                self.space.label(k)
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// Graded tensor product `A ⊗ B` with `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd`.
    pub fn tensor(&self, other: &FiniteCdga) -> FiniteCdga {
        let (na, nb) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i * nb + j;
        let basis: Vec<BasisElement> = (0..na)
            .flat_map(|i| {
                (0..nb).map(move |j| (i, j))
            })
            .map(|(i, j)| BasisElement {
                label: format!("{}⊗{}", self.space.label(i), other.space.label(j)),
                degree: self.degree(i) + other.degree(j),
            })
            .collect();
        let space = GradedSpace::from_basis_unchecked(basis);
        let n = na * nb;
        let mut d = Matrix::zeros(n, n);
        for i in 0..na {
            for j in 0..nb {
                for (r, v) in self.d_basis(i) {
                    d.add_to(idx(r, j), idx(i, j), &v);
                }
                let s = sign(self.degree(i) as i64);
                for (r, v) in other.d_basis(j) {
                    d.add_to(idx(i, r), idx(i, j), &(&s * &v));
                }
            }
        }
        let mut products = vec![vec![None; n]; n];
        for (a, b) in (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))) {
            for (c, e) in (0..na).flat_map(|c| (0..nb).map(move |e| (c, e))) {
                let (Some(ac), Some(be)) = (&self.products[a][c], &other.products[b][e]) else { continue };
                let s = sign((other.degree(b) * self.degree(c)) as i64);
                let mut out = SparseVec::new();
                for (x, u) in ac {
                    for (y, w) in be {
                        sv_add(&mut out, idx(*x, *y), &(&s * u * w));
                    }
                }
                products[idx(a, b)][idx(c, e)] = Some(out);
            }
        }
        let integral = match (&self.integral, &other.integral) {
            (Some(ia), Some(ib)) => {
                let mut m = Matrix::zeros(n, n);
                for (a, b) in (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))) {
                    for (c, e) in (0..na).flat_map(|c| (0..nb).map(move |e| (c, e))) {
                        let v = ia.get(a, c) * ib.get(b, e);
                        if !v.is_zero() {
                            let s = sign((other.degree(b) * self.degree(c)) as i64);
                            m.set(idx(a, b), idx(c, e), s * v);
                        }
                    }
                }
                Some(m)
            }
            _ => None,
        };
        let mode = match (self.mode, other.mode) {
            (ProductMode::Quotient, ProductMode::Quotient) => ProductMode::Quotient,
            (ProductMode::Capped { cap }, _) | (_, ProductMode::Capped { cap }) => ProductMode::Capped { cap },
        };
        FiniteCdga {
            space,
            d,
            products,
            unit: idx(self.unit, other.unit),
            mode,
            top_degree: self.top_degree + other.top_degree,
            integral,
            eval0: None,
        }
    }
}

/// Bulk theory `E_∂ ⊗ Ω`: basis `x_i ⊗ ω_α` at index `i · dim Ω + α`.
///
/// `ℓ_1(x⊗α) = ℓ_1 x ⊗ α + (−1)^{|x|_F} x ⊗ dα`, higher brackets carry the Koszul sign
/// `Σ_{i<j} |α_i| |x_j|_L` times the product of forms, and the pairing is
/// `⟨x⊗α, y⊗β⟩ = (−1)^{|α||y|_F} ⟨x, y⟩ ∫ αβ` of degree `p − top_degree`.
pub fn tensor_with_cdga(boundary: &CyclicLInfinity, omega: &FiniteCdga) -> Result<CyclicLInfinity> {
    tensor_with_cdga_on(boundary, omega, None)
}

/// As [`tensor_with_cdga`], defining brackets only on inputs whose form index lies in
/// `bracket_forms`. Used with capped products whose inputs are restricted to a sub-basis.
pub fn tensor_with_cdga_on(
    boundary: &CyclicLInfinity,
    omega: &FiniteCdga,
    bracket_forms: Option<&[usize]>,
) -> Result<CyclicLInfinity> {
    let nb = boundary.dim();
    let no = omega.dim();
    let idx = |i: usize, a: usize| i * no + a;
    let mut basis = Vec::with_capacity(nb * no);
    for i in 0..nb {
        for a in 0..no {
            basis.push(BasisElement {
                label: format!("{}⊗{}", boundary.space().label(i), omega.space.label(a)),
                degree: boundary.fdeg(i) + omega.degree(a),
            });
        }
    }
    let space = GradedSpace::from_basis_unchecked(basis);
    let n = space.dim();
    let mut bulk = CyclicLInfinity::new(space);

    let mut d = Matrix::zeros(n, n);
    let bd = boundary.differential();
    for r in 0..nb {
        for (c, v) in bd.row(r) {
            for a in 0..no {
                d.add_to(idx(r, a), idx(*c, a), v);
            }
        }
    }
    for i in 0..nb {
        let s = sign(boundary.fdeg(i) as i64);
        for a in 0..no {
            for (r, v) in omega.d_basis(a) {
                d.add_to(idx(i, r), idx(i, a), &(&s * &v));
            }
        }
    }
    bulk.set_differential(d)?;

    let forms: Vec<usize> = match bracket_forms {
        Some(f) => f.to_vec(),
        None => (0..no).collect(),
    };
    let ld = boundary.ldegrees();
    for (k, table) in boundary.brackets() {
        for (xs, value) in &table.entries {
            let mut alpha = vec![0usize; *k];
            'tuples: loop {
                let form_idx: Vec<usize> = alpha.iter().map(|a| forms[*a]).collect();
                let prod = omega.mul_many(&form_idx)?;
                if !prod.is_empty() {
                    let mut e = 0i32;
                    for i in 0..*k {
                        for j in i + 1..*k {
                            e += omega.degree(form_idx[i]) * ld[xs[j]];
                        }
                    }
                    let s = sign(e as i64);
                    let mut out = SparseVec::new();
                    for (y, c) in value {
                        for (b, w) in &prod {
                            sv_add(&mut out, idx(*y, *b), &(&s * c * w));
                        }
                    }
                    let inputs: Vec<usize> = (0..*k).map(|i| idx(xs[i], form_idx[i])).collect();
                    bulk.set_bracket(&inputs, out)?;
                }
                let mut p = 0;
                loop {
                    if p == *k {
                        break 'tuples;
                    }
                    alpha[p] += 1;
                    if alpha[p] < forms.len() {
                        break;
                    }
                    alpha[p] = 0;
                    p += 1;
                }
            }
        }
    }

    if let (Some(p), Some(int)) = (boundary.pairing(), omega.integral.as_ref()) {
        let mut entries = Vec::new();
        for i in 0..nb {
            for (j, w) in p.matrix.row(i) {
                for a in 0..no {
                    for (b, v) in int.row(a) {
                        let s = sign((omega.degree(a) * boundary.fdeg(*j)) as i64);
                        entries.push((idx(i, a), idx(*j, *b), s * w * v));
                    }
                }
            }
        }
        bulk.set_pairing(p.degree - omega.top_degree, &entries, false)?;
    }
    Ok(bulk)
}
