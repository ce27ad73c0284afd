//! Polynomial de Rham forms `p(t) + q(t) dt` on `[0, δ]`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{CochainComplex, GradedSpace, Matrix};
use crate::scalar::Scalar;

/// Dense coefficient list, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<Scalar>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly(vec![c]).trimmed()
    }

    pub fn monomial(i: usize, c: Scalar) -> Self {
        let mut v = vec![Scalar::zero(); i + 1];
        v[i] = c;
        Poly(v).trimmed()
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly(c.iter().map(|x| Scalar::from_integer((*x).into())).collect()).trimmed()
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.0.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| acc * t + c)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()).trimmed()
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly(v).trimmed()
    }

    pub fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Scalar::from_integer((i as i64).into())).collect())
            .trimmed()
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Poly {
        let mut v = vec![Scalar::zero()];
        v.extend(self.0.iter().enumerate().map(|(i, c)| c / Scalar::from_integer((i as i64 + 1).into())));
        Poly(v).trimmed()
    }

    pub fn integrate(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let f = self.antiderivative();
        f.eval(b) - f.eval(a)
    }

    /// `p(s + c)` as a polynomial in `s`.
    pub fn shift(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero();
        let lin = Poly(vec![c.clone(), Scalar::one()]);
        for coef in self.0.iter().rev() {
            out = out.mul(&lin).add(&Poly::constant(coef.clone()));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportFlag {
    Free,
    VanishingAtDelta,
    VanishingAtZero,
}

/// A form `p(t) + q(t) dt` on `[0, δ]` with `deg p ≤ N` and `deg q ≤ N − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyForm {
    pub p: Poly,
    pub q: Poly,
    pub delta: Scalar,
    pub cap: usize,
}

impl PolyForm {
    pub fn new(p: Poly, q: Poly, delta: Scalar, cap: usize) -> Result<Self> {
        if delta <= Scalar::zero() {
            return Err(Error::InvalidInput("interval length must be positive".into()));
        }
        if cap == 0 {
            return Err(Error::InvalidInput("polynomial degree cap must be positive".into()));
        }
        let f = PolyForm { p: p.trimmed(), q: q.trimmed(), delta, cap };
        f.check_cap()?;
        Ok(f)
    }

    fn check_cap(&self) -> Result<()> {
        if self.p.degree().is_some_and(|d| d > self.cap) {
            return Err(Error::DegreeCapOverflow { what: format!("function part of degree {}", self.p.degree().unwrap()), cap: self.cap });
        }
        if self.q.degree().is_some_and(|d| d + 1 > self.cap) {
            return Err(Error::DegreeCapOverflow { what: format!("dt part of degree {}", self.q.degree().unwrap()), cap: self.cap });
        }
        Ok(())
    }

    pub fn zero(delta: Scalar, cap: usize) -> Self {
        PolyForm { p: Poly::zero(), q: Poly::zero(), delta, cap }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn d(&self) -> PolyForm {
        PolyForm { p: Poly::zero(), q: self.p.derivative(), delta: self.delta.clone(), cap: self.cap }
    }

    pub fn add(&self, o: &PolyForm) -> PolyForm {
        PolyForm { p: self.p.add(&o.p), q: self.q.add(&o.q), delta: self.delta.clone(), cap: self.cap }
    }

    pub fn scale(&self, c: &Scalar) -> PolyForm {
        PolyForm { p: self.p.scale(c), q: self.q.scale(c), delta: self.delta.clone(), cap: self.cap }
    }

    /// `(p₁ + q₁dt)(p₂ + q₂dt) = p₁p₂ + (p₁q₂ + q₁p₂)dt`; overflow past the cap is an error.
    pub fn wedge(&self, o: &PolyForm) -> Result<PolyForm> {
        let f = PolyForm {
            p: self.p.mul(&o.p),
            q: self.p.mul(&o.q).add(&self.q.mul(&o.p)),
            delta: self.delta.clone(),
            cap: self.cap,
        };
        f.check_cap()?;
        Ok(f)
    }

    /// `∫_0^δ q(t) dt` for a pure 1-form.
    pub fn integrate(&self) -> Result<Scalar> {
        if !self.p.is_zero() {
            return Err(Error::InvalidInput("only 1-forms can be integrated".into()));
        }
        Ok(self.q.integrate(&Scalar::zero(), &self.delta))
    }

    pub fn eval0(&self) -> Scalar {
        self.p.coeff(0)
    }

    pub fn vanishes_at_delta(&self) -> bool {
        self.p.eval(&self.delta).is_zero() && self.q.eval(&self.delta).is_zero()
    }

    pub fn vanishes_at_zero(&self) -> bool {
        self.p.coeff(0).is_zero() && self.q.coeff(0).is_zero()
    }

    pub fn satisfies(&self, flag: SupportFlag) -> bool {
        match flag {
            SupportFlag::Free => true,
            SupportFlag::VanishingAtDelta => self.vanishes_at_delta(),
            SupportFlag::VanishingAtZero => self.vanishes_at_zero(),
        }
    }

    /// `K(p, q dt) = (−∫_t^δ q(s) ds, 0)`, so that `dK + Kd = id` whenever `p(δ) = 0`.
    pub fn homotopy_k(&self) -> Result<PolyForm> {
        if !self.p.eval(&self.delta).is_zero() {
            return Err(Error::Precondition("the homotopy K needs a function part vanishing at δ".into()));
        }
        let f = self.q.antiderivative();
        // −∫_t^δ q = F(t) − F(δ)
        let p = f.sub(&Poly::constant(f.eval(&self.delta)));
        Ok(PolyForm { p, q: Poly::zero(), delta: self.delta.clone(), cap: self.cap })
    }

    /// `K₀(p, q dt) = (∫_0^t q(s) ds, 0)`, the homotopy for forms whose function part vanishes at 0.
    pub fn homotopy_k_at_zero(&self) -> Result<PolyForm> {
        if !self.p.coeff(0).is_zero() {
            return Err(Error::Precondition("the homotopy K₀ needs a function part vanishing at 0".into()));
        }
        Ok(PolyForm { p: self.q.antiderivative(), q: Poly::zero(), delta: self.delta.clone(), cap: self.cap })
    }
}

/// Basis of forms of cap `N`: `t^0..t^N` in degree 0 then `t^0 dt..t^{N−1} dt` in degree 1.
pub fn form_basis_space(cap: usize) -> GradedSpace {
    let mut pairs: Vec<(String, i32)> = (0..=cap).map(|i| (format!("t^{i}"), 0)).collect();
    pairs.extend((0..cap).map(|i| (format!("t^{i}dt"), 1)));
    GradedSpace::from_pairs(pairs)
}

pub fn form_to_vector(f: &PolyForm) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = (0..=f.cap).map(|i| f.p.coeff(i)).collect();
    v.extend((0..f.cap).map(|i| f.q.coeff(i)));
    v
}

pub fn vector_to_form(v: &[Scalar], delta: &Scalar, cap: usize) -> PolyForm {
    PolyForm {
        p: Poly(v[..=cap].to_vec()).trimmed(),
        q: Poly(v[cap + 1..].to_vec()).trimmed(),
        delta: delta.clone(),
        cap,
    }
}

/// The de Rham complex of forms of cap `N`.
pub fn de_rham_matrix(cap: usize) -> Matrix {
    let n = 2 * cap + 1;
    let mut m = Matrix::zeros(n, n);
    for i in 1..=cap {
        m.set(cap + 1 + (i - 1), i, Scalar::from_integer((i as i64).into()));
    }
    m
}

/// The de Rham complex on `[0, δ]` restricted to the subcomplex selected by `flag`
/// (the function part vanishes at the flagged endpoint; 1-forms are unconstrained).
pub fn interval_complex(delta: &Scalar, cap: usize, flag: SupportFlag) -> Result<CochainComplex> {
    let space = form_basis_space(cap);
    let d = de_rham_matrix(cap);
    let point = match flag {
        SupportFlag::Free => return CochainComplex::from_matrix(space, d),
        SupportFlag::VanishingAtDelta => delta.clone(),
        SupportFlag::VanishingAtZero => Scalar::zero(),
    };
    // sub-basis: t^i − point^i for i ≥ 1, then all 1-forms
    let n = space.dim();
    let mut cols = Vec::new();
    let mut pairs = Vec::new();
    for i in 1..=cap {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        let mut pw = Scalar::one();
        for _ in 0..i {
            pw *= &point;
        }
        v[0] = -pw;
        cols.push(v);
        pairs.push((format!("t^{i}-c"), 0));
    }
    for i in 0..cap {
        let mut v = vec![Scalar::zero(); n];
        v[cap + 1 + i] = Scalar::one();
        cols.push(v);
        pairs.push((format!("t^{i}dt"), 1));
    }
    let incl = Matrix::from_columns(n, &cols);
    let solver = crate::linalg::CoordinateSolver::new(incl.clone())?;
    let image = d.mul(&incl)?;
    let mut restricted = Matrix::zeros(cols.len(), cols.len());
    for c in 0..cols.len() {
        let col = image.column(c);
        let x = solver.coordinates(&col).ok_or_else(|| Error::Inconsistent("flagged forms are not a subcomplex".into()))?;
        for (r, v) in x.into_iter().enumerate() {
            restricted.set(r, c, v);
        }
    }
    CochainComplex::from_matrix(GradedSpace::from_pairs(pairs), restricted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn form(p: &[i64], qq: &[i64], cap: usize) -> PolyForm {
        PolyForm::new(Poly::from_ints(p), Poly::from_ints(qq), q(1), cap).unwrap()
    }

    #[test]
    fn differential_examples() {
        assert!(form(&[1], &[], 2).d().is_zero());
        assert_eq!(form(&[0, 0, 1], &[], 2).d().q, Poly::from_ints(&[0, 2]));
        let f = form(&[-1, 1], &[], 2);
        assert!(f.p.eval(&f.delta).is_zero());
        assert!(!f.d().vanishes_at_delta());
    }

    #[test]
    fn wedge_examples() {
        let one = form(&[1], &[], 2);
        let w = form(&[3, 1], &[2], 2);
        assert_eq!(one.wedge(&w).unwrap(), w);
        let t = form(&[0, 1], &[], 2);
        let dt = form(&[], &[1], 2);
        assert_eq!(t.wedge(&dt).unwrap().q, Poly::from_ints(&[0, 1]));
        assert!(dt.wedge(&dt).unwrap().is_zero());
        let t2 = form(&[0, 0, 1], &[], 2);
        assert!(matches!(t2.wedge(&t2), Err(Error::DegreeCapOverflow { .. })));
    }

    #[test]
    fn integration_examples() {
        assert_eq!(form(&[], &[1], 3).integrate().unwrap(), q(1));
        assert_eq!(form(&[], &[0, 2], 3).integrate().unwrap(), q(1));
        assert_eq!(form(&[], &[1, -2, 1], 3).integrate().unwrap(), qf(1, 3));
        assert!(form(&[1], &[], 3).integrate().is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(form(&[1], &[], 1).eval0(), q(1));
        assert_eq!(form(&[0, 1], &[5], 1).eval0(), q(0));
        let chi = PolyForm::new(Poly(vec![q(1), qf(-1, 2)]), Poly::zero(), q(2), 1).unwrap();
        assert_eq!(chi.eval0(), q(1));
    }

    #[test]
    fn homotopy_examples() {
        let k = form(&[], &[1], 2).homotopy_k().unwrap();
        assert_eq!(k.p, Poly::from_ints(&[-1, 1]));
        let p = form(&[-1, 1], &[], 2);
        assert!(p.homotopy_k().unwrap().is_zero());
        assert_eq!(p.d().homotopy_k().unwrap(), p);
        assert!(form(&[], &[], 2).homotopy_k().unwrap().is_zero());
        assert!(form(&[1], &[], 2).homotopy_k().is_err());
    }

    #[test]
    fn interval_cohomology() {
        let free = interval_complex(&q(1), 3, SupportFlag::Free).unwrap();
        assert_eq!(free.cohomology_dims(), std::collections::BTreeMap::from([(0, 1)]));
        assert!(interval_complex(&qf(3, 2), 3, SupportFlag::VanishingAtDelta).unwrap().is_acyclic());
        assert!(interval_complex(&qf(3, 2), 3, SupportFlag::VanishingAtZero).unwrap().is_acyclic());
    }

    #[test]
    fn shift_rebases() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let c = qf(1, 3);
        let s = p.shift(&c);
        for x in [q(0), q(1), qf(-2, 5)] {
            assert_eq!(s.eval(&x), p.eval(&(&x + &c)));
        }
    }
}
