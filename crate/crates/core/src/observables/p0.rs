//! The degree `+1` Poisson bracket on kernel-presented observables.
//!
//! A kernel `φ` is a compactly supported conditioned field; `O_φ(e) = ⟨φ, e⟩` has degree `|φ| − 1`.
//! On generators `{O_φ, O_ψ} = ⟨φ, ψ⟩`, extended as a biderivation:
//! `{x, yz} = {x, y}z + (−1)^{(|x|+1)|y|} y{x, z}` and `{xy, z} = x{y, z} + (−1)^{|y|(|z|+1)}{x, z}y`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{graded_kernel, Subcomplex};
use crate::linf::{sv_from_dense, ce_generator_images};
use crate::scalar::Scalar;
use crate::sym::{add_into, SymAlgebra, SymElement};

use super::fa::{ClassicalObservables, Observable, ObservableSpace};

/// A formal linear combination of words in generators `O_φ`; kernels are field vectors on `U`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KernelPresentation {
    pub terms: Vec<(Scalar, Vec<Vec<Scalar>>)>,
}

impl KernelPresentation {
    pub fn constant(c: Scalar) -> Self {
        KernelPresentation { terms: vec![(c, Vec::new())] }
    }

    pub fn generator(phi: Vec<Scalar>) -> Self {
        KernelPresentation { terms: vec![(Scalar::one(), vec![phi])] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        KernelPresentation { terms }
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        KernelPresentation { terms: self.terms.iter().map(|(c, w)| (c * s, w.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                terms.push((a * b, w));
            }
        }
        KernelPresentation { terms }
    }
}

/// The bracket and differential on kernel-presented observables on one open.
#[derive(Debug)]
pub struct P0Structure<'a> {
    space: &'a ObservableSpace,
    compact: Subcomplex,
    condition: crate::linalg::Matrix,
    sym: SymAlgebra,
    ce_images: Vec<SymElement>,
    eta: SymAlgebra,
    change: BasisChange,
}

fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

impl<'a> P0Structure<'a> {
    pub fn new(obs: &'a ClassicalObservables, u: &crate::interval::OpenSet) -> Result<Self> {
        let space = obs.space(u)?;
        let fm = &space.fields.fields;
        let compact = fm.compact()?;
        let n_bdry = obs.system().boundary().dim();
        let condition = obs.condition().complement_projection(n_bdry).mul(&fm.rho)?;
        let base = &space.ce.basis.algebra;
        let sym = SymAlgebra::new(base.generator_labels().to_vec(), base.generator_degrees().to_vec(), None);
        let ce_images = ce_generator_images(&space.fields.alg, &sym);
        let mut out = P0Structure {
            space,
            compact,
            condition,
            sym,
            ce_images,
            eta: SymAlgebra::new(Vec::new(), Vec::new(), None),
            change: BasisChange { kernels: Vec::new(), xi_in_eta: Vec::new() },
        };
        let n = out.space.fields.dim();
        let expand = |k: &[Scalar]| {
            let e = out.expand_generator(k);
            let mut v = vec![Scalar::zero(); n];
            for (m, c) in e {
                v[m[0]] = c;
            }
            v
        };
        let (change, eta_deg) = basis_change(&out.kernel_basis(), expand, base.generator_degrees())?;
        let labels = (0..eta_deg.len()).map(|j| format!("η{j}")).collect();
        out.eta = SymAlgebra::new(labels, eta_deg, None);
        out.change = change;
        Ok(out)
    }

    pub fn space(&self) -> &ObservableSpace {
        self.space
    }

    /// Compactly supported fields satisfying the boundary condition.
    pub fn is_kernel(&self, phi: &[Scalar]) -> bool {
        self.compact.contains(phi) && self.condition.mul_vec(phi).iter().all(Zero::is_zero)
    }

    /// A homogeneous basis of admissible kernels, as field vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let m = self.condition.mul(&self.compact.inclusion).expect("shapes agree");
        graded_kernel(self.compact.complex.space(), &m)
            .into_iter()
            .map(|x| self.compact.inclusion.mul_vec(&x))
            .collect()
    }

    fn field_degree(&self, phi: &[Scalar]) -> Result<i32> {
        self.space
            .fields
            .fields
            .alg
            .space()
            .homogeneous_degree(phi)
            .ok_or_else(|| Error::InvalidInput("a kernel must be a nonzero homogeneous field".into()))
    }

    /// Degree of the observable `O_φ`.
    pub fn generator_degree(&self, phi: &[Scalar]) -> Result<i32> {
        Ok(self.field_degree(phi)? - 1)
    }

    pub fn generator(&self, phi: Vec<Scalar>) -> Result<KernelPresentation> {
        self.field_degree(&phi)?;
        if !self.is_kernel(&phi) {
            return Err(Error::Precondition("kernel is not a compactly supported conditioned field".into()));
        }
        Ok(KernelPresentation::generator(phi))
    }

    fn word_degree(&self, w: &[Vec<Scalar>]) -> Result<i32> {
        w.iter().map(|k| self.generator_degree(k)).sum()
    }

    /// Degree of a presentation, `None` when it is zero or inhomogeneous.
    pub fn degree(&self, f: &KernelPresentation) -> Result<Option<i32>> {
        let mut deg = None;
        for (c, w) in &f.terms {
            if c.is_zero() {
                continue;
            }
            let d = self.word_degree(w)?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Ok(None),
                _ => {}
            }
        }
        Ok(deg)
    }

    fn pair(&self, phi: &[Scalar], psi: &[Scalar]) -> Scalar {
        self.space.fields.fields.alg.pair(&sv_from_dense(phi), &sv_from_dense(psi))
    }

    /// `O_φ` in the dual basis of `E_L(U)`.
    pub fn expand_generator(&self, phi: &[Scalar]) -> SymElement {
        let mut out = SymElement::new();
        for (a, b) in self.space.fields.basis.iter().enumerate() {
            let c = self.pair(phi, b);
            if !c.is_zero() {
                out.insert(vec![a], c);
            }
        }
        out
    }

    /// The untruncated dual-basis expansion.
    pub fn expand(&self, f: &KernelPresentation) -> SymElement {
        let mut out = SymElement::new();
        for (c, w) in &f.terms {
            let mut acc = self.sym.unit();
            for k in w {
                acc = self.sym.mul(&acc, &self.expand_generator(k));
            }
            add_into(&mut out, &acc, c);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The observable on `U`, truncated at the observables' weight bound.
    pub fn to_observable(&self, f: &KernelPresentation, truncation: usize) -> Observable {
        let mut o = self.space.observable(truncation, &self.expand(f));
        o.kernel = Some(f.clone());
        o
    }

    fn bracket_words(&self, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<KernelPresentation> {
        if a.is_empty() || b.is_empty() {
            return Ok(KernelPresentation::default());
        }
        if a.len() == 1 && b.len() == 1 {
            return Ok(KernelPresentation::constant(self.pair(&a[0], &b[0])));
        }
        if a.len() == 1 {
            let x = self.generator_degree(&a[0])?;
            let y = self.generator_degree(&b[0])?;
            let rest = KernelPresentation { terms: vec![(Scalar::one(), b[1..].to_vec())] };
            let first = self.bracket_words(a, &b[..1])?.mul(&rest);
            let head = KernelPresentation::generator(b[0].clone());
            let second = head.mul(&self.bracket_words(a, &b[1..])?);
            return Ok(first.add(&second.scaled(&sign(((x + 1) * y).rem_euclid(2) == 1))));
        }
        let (init, last) = a.split_at(a.len() - 1);
        let x = self.generator_degree(&last[0])?;
        let zb = self.word_degree(b)?;
        let init_p = KernelPresentation { terms: vec![(Scalar::one(), init.to_vec())] };
        let last_p = KernelPresentation::generator(last[0].clone());
        let first = init_p.mul(&self.bracket_words(last, b)?);
        let second = self.bracket_words(init, b)?.mul(&last_p);
        Ok(first.add(&second.scaled(&sign((x * (zb + 1)).rem_euclid(2) == 1))))
    }

    /// `{F, G}`.
    pub fn bracket(&self, f: &KernelPresentation, g: &KernelPresentation) -> Result<KernelPresentation> {
        let mut out = KernelPresentation::default();
        for (a, wa) in &f.terms {
            for (b, wb) in &g.terms {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                out = out.add(&self.bracket_words(wa, wb)?.scaled(&(a * b)));
            }
        }
        Ok(prune(out))
    }

    /// The bracket on observables; both must carry a kernel presentation.
    pub fn bracket_observables(&self, f: &Observable, g: &Observable) -> Result<Observable> {
        let (Some(kf), Some(kg)) = (&f.kernel, &g.kernel) else {
            return Err(Error::Precondition("the bracket is defined on kernel-presented observables only".into()));
        };
        Ok(self.to_observable(&self.bracket(kf, kg)?, f.truncation))
    }

    /// Writes an element of `Sym(E_L(U)^∨)` as a polynomial in kernel generators, if it lies in
    /// the subalgebra they generate.
    pub fn present(&self, x: &SymElement) -> Option<KernelPresentation> {
        let ch = &self.change;
        let mut total = SymElement::new();
        for (m, c) in x {
            let mut acc = self.eta.unit();
            for g in m {
                acc = self.eta.mul(&acc, &ch.xi_in_eta[*g]);
            }
            add_into(&mut total, &acc, c);
        }
        let mut out = KernelPresentation::default();
        for (m, c) in total.into_iter().filter(|(_, c)| !c.is_zero()) {
            let word: Option<Vec<Vec<Scalar>>> = m.iter().map(|j| ch.kernels.get(*j).cloned()).collect();
            out.terms.push((c, word?));
        }
        Some(out)
    }

    /// `d_CE F`, presented through kernels; fails when it leaves the kernel-generated subalgebra.
    pub fn differential(&self, f: &KernelPresentation) -> Result<KernelPresentation> {
        self.present(&self.ce_differential(f))
            .ok_or_else(|| Error::Precondition("d of the observable is not kernel-presented".into()))
    }

    /// `d_CE` applied to the expansion of `F`.
    pub fn ce_differential(&self, f: &KernelPresentation) -> SymElement {
        let mut out = self.sym.apply_derivation(&self.ce_images, 1, &self.expand(f));
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Whether `d_CE F` is again kernel-presented.
    pub fn closure_holds(&self, f: &KernelPresentation) -> bool {
        self.present(&self.ce_differential(f)).is_some()
    }

    /// The number of independent kernel functionals.
    pub fn kernel_rank(&self) -> usize {
        self.change.kernels.len()
    }

    /// Up to `size` kernel generators, alternating even and odd degrees while both remain.
    pub fn generator_pool(&self, size: usize) -> Result<Vec<KernelPresentation>> {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for k in self.kernel_basis() {
            if self.generator_degree(&k)?.rem_euclid(2) == 0 {
                even.push(k);
            } else {
                odd.push(k);
            }
        }
        let (mut e, mut o) = (even.into_iter(), odd.into_iter());
        let mut out = Vec::new();
        while out.len() < size {
            let next = if out.len() % 2 == 0 { e.next().or_else(|| o.next()) } else { o.next().or_else(|| e.next()) };
            match next {
                Some(k) => out.push(self.generator(k)?),
                None => break,
            }
        }
        Ok(out)
    }
}

/// A basis `η` of `E_L(U)^∨` whose first members are kernel functionals.
#[derive(Debug, Clone)]
struct BasisChange {
    kernels: Vec<Vec<Scalar>>,
    xi_in_eta: Vec<SymElement>,
}

fn basis_change(p0_basis: &[Vec<Scalar>], functional: impl Fn(&[Scalar]) -> Vec<Scalar>, degrees: &[i32]) -> Result<(BasisChange, Vec<i32>)> {
    let n = degrees.len();
    let mut ech = crate::linalg::Echelon::default();
    let mut kernels = Vec::new();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut eta_deg = Vec::new();
    for k in p0_basis {
        let f = functional(k);
        let Some(a) = f.iter().position(|x| !x.is_zero()) else { continue };
        if ech.insert(crate::linf::sv_from_dense(&f).into_iter().collect()) {
            kernels.push(k.clone());
            eta_deg.push(degrees[a]);
            columns.push(f);
        }
    }
    for a in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[a] = Scalar::one();
        if ech.insert(vec![(a, Scalar::one())]) {
            eta_deg.push(degrees[a]);
            columns.push(e);
        }
    }
    // η_j = Σ_a B[a][j] ξ^a, so ξ^a = Σ_j B⁻¹[j][a] η_j
    let b = crate::linalg::Matrix::from_columns(n, &columns);
    let solver = crate::linalg::CoordinateSolver::new(b)?;
    let xi_in_eta = (0..n)
        .map(|a| {
            let mut e = vec![Scalar::zero(); n];
            e[a] = Scalar::one();
            let c = solver.coordinates(&e).expect("a basis spans");
            c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (vec![j], x)).collect()
        })
        .collect();
    Ok((BasisChange { kernels, xi_in_eta }, eta_deg))
}

fn prune(mut f: KernelPresentation) -> KernelPresentation {
    f.terms.retain(|(c, w)| !c.is_zero() && w.iter().all(|k| k.iter().any(|x| !x.is_zero())));
    f
}

/// Outcome of the Poisson-axiom suite on a pool of kernel-presented observables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct P0Report {
    pub pool_size: usize,
    pub triples: usize,
    pub antisymmetry: bool,
    pub jacobi: bool,
    pub leibniz: bool,
    pub d_compatible: bool,
    pub degree: bool,
    pub closure: bool,
    pub first_failure: Option<String>,
}

impl P0Report {
    pub fn holds(&self) -> bool {
        self.antisymmetry && self.jacobi && self.leibniz && self.d_compatible && self.degree && self.closure
    }
}

/// Checks the shifted Poisson axioms exactly on all pairs and triples drawn from `pool`.
pub fn p0_suite(p0: &P0Structure<'_>, pool: &[KernelPresentation]) -> Result<P0Report> {
    let mut r = P0Report {
        pool_size: pool.len(),
        antisymmetry: true,
        jacobi: true,
        leibniz: true,
        d_compatible: true,
        degree: true,
        closure: true,
        ..Default::default()
    };
    let fail = |flag: &mut bool, msg: String, first: &mut Option<String>| {
        *flag = false;
        first.get_or_insert(msg);
    };
    let degs: Vec<i32> = pool
        .iter()
        .map(|f| p0.degree(f)?.ok_or_else(|| Error::InvalidInput("pool elements must be homogeneous and nonzero".into())))
        .collect::<Result<_>>()?;
    let eq = |a: &KernelPresentation, b: &KernelPresentation| p0.expand(a) == p0.expand(b);
    let s = |e: i32| sign(e.rem_euclid(2) == 1);

    for (i, f) in pool.iter().enumerate() {
        if !p0.closure_holds(f) {
            fail(&mut r.closure, format!("d of pool element {i} is not kernel-presented"), &mut r.first_failure);
        }
        for (j, g) in pool.iter().enumerate() {
            let fg = p0.bracket(f, g)?;
            let gf = p0.bracket(g, f)?;
            let (a, b) = (degs[i], degs[j]);
            if !eq(&fg, &gf.scaled(&-s((a + 1) * (b + 1)))) {
                fail(&mut r.antisymmetry, format!("antisymmetry fails on ({i}, {j})"), &mut r.first_failure);
            }
            if let Some(d) = p0.degree(&fg)? {
                if d != a + b + 1 {
                    fail(&mut r.degree, format!("bracket of ({i}, {j}) has degree {d}"), &mut r.first_failure);
                }
            } else if !p0.expand(&fg).is_empty() {
                fail(&mut r.degree, format!("bracket of ({i}, {j}) is inhomogeneous"), &mut r.first_failure);
            }
            // d{F,G} = {dF,G} + (−1)^{|F|+1}{F,dG}, where d is defined on the presentations
            if let (Ok(lhs), Ok(df), Ok(dg)) = (p0.differential(&fg), p0.differential(f), p0.differential(g)) {
                let rhs = p0.bracket(&df, g)?.add(&p0.bracket(f, &dg)?.scaled(&s(a + 1)));
                if !eq(&lhs, &rhs) {
                    fail(&mut r.d_compatible, format!("d is not a derivation of the bracket on ({i}, {j})"), &mut r.first_failure);
                }
            }
            for (k, h) in pool.iter().enumerate() {
                r.triples += 1;
                let c = degs[k];
                // {F,{G,H}} = {{F,G},H} + (−1)^{(|F|+1)(|G|+1)}{G,{F,H}}
                let lhs = p0.bracket(f, &p0.bracket(g, h)?)?;
                let rhs = p0.bracket(&fg, h)?.add(&p0.bracket(g, &p0.bracket(f, h)?)?.scaled(&s((a + 1) * (b + 1))));
                if !eq(&lhs, &rhs) {
                    fail(&mut r.jacobi, format!("Jacobi fails on ({i}, {j}, {k})"), &mut r.first_failure);
                }
                // {F, GH} = {F,G}H + (−1)^{(|F|+1)|G|} G{F,H}
                let lhs = p0.bracket(f, &g.mul(h))?;
                let rhs = fg.mul(h).add(&g.mul(&p0.bracket(f, h)?).scaled(&s((a + 1) * b)));
                if !eq(&lhs, &rhs) {
                    fail(&mut r.leibniz, format!("left Leibniz fails on ({i}, {j}, {k})"), &mut r.first_failure);
                }
                // {GH, F} = G{H,F} + (−1)^{|H|(|F|+1)}{G,F}H
                let lhs = p0.bracket(&g.mul(h), f)?;
                let rhs = g.mul(&p0.bracket(h, f)?).add(&gf.mul(h).scaled(&s(c * (a + 1))));
                if !eq(&lhs, &rhs) {
                    fail(&mut r.leibniz, format!("right Leibniz fails on ({i}, {j}, {k})"), &mut r.first_failure);
                }
            }
        }
    }
    Ok(r)
}
