use std::collections::BTreeMap;
use std::sync::OnceLock;

use bbk_core::interval::{run_cdga, run_cdga_on, Poly, PolyForm};
use bbk_core::linalg::{chain_map_defect, cone, is_quasi_iso, CochainComplex, GradedMap, GradedSpace, Matrix};
use bbk_core::linf::{ce_differential, check_jacobi, tensor_with_cdga, LieAlgebra, ProductMode};
use bbk_core::models::{bf_a_condition, bf_b_condition, bf_theory, q_line_condition, topological_mechanics};
use bbk_core::scalar::{q, qf};
use bbk_core::tnbft::{default_cutoff, BoundaryCondition, BulkBoundarySystem, FieldModel, Splitting};
use bbk_core::Scalar;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..7, 1i64..5).prop_map(|(n, d)| qf(n, d))
}

fn positive_rational() -> impl Strategy<Value = Scalar> {
    (1i64..9, 1i64..5).prop_map(|(n, d)| qf(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(rational(), 0..=max_len).prop_map(|c| Poly(c).trimmed())
}

/// Cycles through a pool of random integers.
struct Entries(Vec<i64>, usize);

impl Entries {
    fn next(&mut self) -> Scalar {
        let v = self.0[self.1 % self.0.len()];
        self.1 += 1;
        q(v)
    }
}

/// `V^k → V^{k+1}` with an arbitrary matrix.
fn two_term(k: i32, a: usize, b: usize, e: &mut Entries, tag: &str) -> CochainComplex {
    let space = GradedSpace::from_pairs((0..a).map(|i| (format!("{tag}x{i}"), k)).chain((0..b).map(|i| (format!("{tag}y{i}"), k + 1))));
    let mut m = Matrix::zeros(a + b, a + b);
    for r in 0..b {
        for c in 0..a {
            m.set(a + r, c, e.next());
        }
    }
    CochainComplex::from_matrix(space, m).unwrap()
}

fn convolve(x: &BTreeMap<i32, usize>, y: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (i, a) in x {
        for (j, b) in y {
            *out.entry(i + j).or_insert(0) += a * b;
        }
    }
    out
}

/// A random degree −1 endomorphism.
fn homotopy(space: &GradedSpace, e: &mut Entries) -> GradedMap {
    let n = space.dim();
    let mut m = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            if space.degree(r) + 1 == space.degree(c) {
                m.set(r, c, e.next());
            }
        }
    }
    GradedMap::new(space.clone(), space.clone(), -1, m).unwrap()
}

fn complex_params() -> impl Strategy<Value = ((i32, usize, usize), (i32, usize, usize), Vec<i64>)> {
    (
        (-2i32..3, 0usize..3, 0usize..3),
        (-2i32..3, 0usize..3, 0usize..3),
        proptest::collection::vec(-2i64..3, 16),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_products_are_complexes_satisfying_kunneth(((k1, a1, b1), (k2, a2, b2), pool) in complex_params()) {
        let mut e = Entries(pool, 0);
        let x = two_term(k1, a1, b1, &mut e, "l");
        let y = two_term(k2, a2, b2, &mut e, "r");
        let t = x.tensor(&y);
        prop_assert!(t.check_square_zero().is_ok());
        prop_assert_eq!(t.cohomology_dims(), convolve(&x.cohomology_dims(), &y.cohomology_dims()));
        let s = x.direct_sum(&y).cohomology_dims();
        let mut expected = x.cohomology_dims();
        for (k, d) in y.cohomology_dims() {
            *expected.entry(k).or_insert(0) += d;
        }
        prop_assert_eq!(s, expected);
    }

    #[test]
    fn shifting_moves_cohomology(((k1, a1, b1), (k2, a2, b2), pool) in complex_params(), n in -3i32..4) {
        let mut e = Entries(pool, 0);
        let c = two_term(k1, a1, b1, &mut e, "l").tensor(&two_term(k2, a2, b2, &mut e, "r"));
        let shifted = c.shift(n);
        prop_assert!(shifted.check_square_zero().is_ok());
        let expected: BTreeMap<i32, usize> = c.cohomology_dims().into_iter().map(|(k, d)| (k - n, d)).collect();
        prop_assert_eq!(shifted.cohomology_dims(), expected);
        // dual complex: H^k(V^∨) ≅ H^{−k}(V)
        let dual: BTreeMap<i32, usize> = c.cohomology_dims().into_iter().map(|(k, d)| (-k, d)).collect();
        prop_assert_eq!(c.dual().cohomology_dims(), dual);
    }

    #[test]
    fn homotopic_to_a_multiple_of_the_identity(((k1, a1, b1), (k2, a2, b2), pool) in complex_params(), s in -2i64..3) {
        let mut e = Entries(pool, 0);
        let c = two_term(k1, a1, b1, &mut e, "l").tensor(&two_term(k2, a2, b2, &mut e, "r"));
        let d = c.differential();
        let h = homotopy(c.space(), &mut e);
        // f = s·id + dh + hd is a chain map, and a quasi-isomorphism iff s ≠ 0 or C is acyclic
        let f = GradedMap::identity(c.space())
            .scaled(&q(s))
            .add(&d.compose(&h).unwrap())
            .unwrap()
            .add(&h.compose(d).unwrap())
            .unwrap();
        prop_assert_eq!(chain_map_defect(&f, &c, &c).unwrap(), None);
        let cn = cone(&f, &c, &c).unwrap();
        prop_assert!(cn.check_square_zero().is_ok());
        let qi = is_quasi_iso(&f, &c, &c).unwrap();
        prop_assert_eq!(qi.holds, s != 0 || c.is_acyclic());
        prop_assert_eq!(qi.witness_degree.is_none(), qi.holds);
    }
}

fn vanishing_at(p: Poly, t: &Scalar) -> Poly {
    p.sub(&Poly::constant(p.eval(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn contracting_homotopy_at_delta(cap in 1usize..9, delta in positive_rational(), p in poly(9), qq in poly(8)) {
        let p = vanishing_at(Poly(p.0.into_iter().take(cap + 1).collect()).trimmed(), &delta);
        let qq = Poly(qq.0.into_iter().take(cap).collect()).trimmed();
        let f = PolyForm::new(p, qq, delta, cap).unwrap();
        let dk = f.homotopy_k().unwrap().d();
        let kd = f.d().homotopy_k().unwrap();
        prop_assert_eq!(dk.add(&kd), f);
    }

    #[test]
    fn contracting_homotopy_at_zero(cap in 1usize..9, delta in positive_rational(), p in poly(9), qq in poly(8)) {
        let p = vanishing_at(Poly(p.0.into_iter().take(cap + 1).collect()).trimmed(), &Scalar::zero());
        let qq = Poly(qq.0.into_iter().take(cap).collect()).trimmed();
        let f = PolyForm::new(p, qq, delta, cap).unwrap();
        let sum = f.homotopy_k_at_zero().unwrap().d().add(&f.d().homotopy_k_at_zero().unwrap());
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn stokes(cap in 1usize..9, delta in positive_rational(), p in poly(9)) {
        let p = Poly(p.0.into_iter().take(cap + 1).collect()).trimmed();
        let f = PolyForm::new(p.clone(), Poly::zero(), delta.clone(), cap).unwrap();
        prop_assert_eq!(f.d().integrate().unwrap(), p.eval(&delta) - p.eval(&Scalar::zero()));
        prop_assert!(f.d().d().is_zero());
    }

    #[test]
    fn wedge_satisfies_leibniz(half in 1usize..5, delta in positive_rational(), a in (poly(5), poly(4)), b in (poly(5), poly(4))) {
        let cap = 2 * half;
        let cut = |p: Poly, n: usize| Poly(p.0.into_iter().take(n).collect()).trimmed();
        let x = PolyForm::new(cut(a.0, half + 1), cut(a.1, half), delta.clone(), cap).unwrap();
        let y = PolyForm::new(cut(b.0, half + 1), cut(b.1, half), delta, cap).unwrap();
        let lhs = x.wedge(&y).unwrap().d();
        // the odd part of x contributes nothing to either side
        let rhs = x.d().wedge(&y).unwrap().add(&x.wedge(&y.d()).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap());
    }

    #[test]
    fn run_algebras_are_cdgas(start in 0i64..4, len in positive_rational(), cap in 1usize..4) {
        let s = q(start);
        let e = &s + &len;
        prop_assert_eq!(run_cdga_on(&s, &e, cap, ProductMode::Quotient).check_axioms(), None);
        prop_assert_eq!(run_cdga_on(&s, &e, 2 * cap, ProductMode::Capped { cap: 2 * cap }).check_axioms(), None);
    }
}

/// sl₂ in the basis `y_i = Σ_a P_{ai} x_a` for a unitriangular `P`.
fn sl2_in_basis(upper: &[i64; 3]) -> LieAlgebra {
    let g = LieAlgebra::sl2();
    let mut p = Matrix::identity(3);
    p.set(0, 1, q(upper[0]));
    p.set(0, 2, q(upper[1]));
    p.set(1, 2, q(upper[2]));
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let b = g.bracket(&p.column(i), &p.column(j));
            let z = p.solve(&b).unwrap();
            for (k, c) in z.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    LieAlgebra::new(vec!["y0".into(), "y1".into(), "y2".into()], &entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn ce_differentials_square_to_zero_in_any_basis(upper in proptest::array::uniform3(-2i64..3)) {
        let g = sl2_in_basis(&upper);
        prop_assert_eq!(g.check_jacobi(), None);
        let ce = ce_differential(&g.to_linf(None).unwrap(), 3).unwrap();
        prop_assert!(ce.complex.check_square_zero().is_ok());
        let reference = ce_differential(&LieAlgebra::sl2().to_linf(None).unwrap(), 3).unwrap();
        prop_assert_eq!(ce.complex.cohomology_dims(), reference.complex.cohomology_dims());

        let sum = g.direct_sum(&LieAlgebra::abelian(1));
        let ce = ce_differential(&sum.to_linf(None).unwrap(), 2).unwrap();
        prop_assert!(ce.complex.check_square_zero().is_ok());
    }

    #[test]
    fn tensoring_with_forms_preserves_the_identities(upper in proptest::array::uniform3(-2i64..3), len in positive_rational()) {
        let b = sl2_in_basis(&upper).bf_boundary().unwrap();
        let bulk = tensor_with_cdga(&b, &run_cdga(&len, 1, ProductMode::Quotient)).unwrap();
        prop_assert_eq!(check_jacobi(&bulk, 3).unwrap(), None);
    }
}

struct Fixture {
    sys: BulkBoundarySystem,
    fm: FieldModel,
    /// Compactly supported basis fields, grouped by degree.
    compact: BTreeMap<i32, Vec<Vec<Scalar>>>,
    conditions: Vec<(BoundaryCondition, Splitting)>,
}

fn fixture(sys: BulkBoundarySystem, conds: Vec<BoundaryCondition>) -> Fixture {
    let fm = sys.fields(&sys.mesh().full()).unwrap();
    let sub = fm.compact().unwrap();
    let mut compact: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    for c in 0..sub.dim() {
        compact.entry(sub.complex.space().degree(c)).or_default().push(sub.inclusion.column(c));
    }
    let chi = default_cutoff(sys.mesh().delta());
    let conditions = conds.into_iter().map(|c| {
        let s = sys.splitting(&c, &chi).unwrap();
        (c, s)
    }).collect();
    Fixture { sys, fm, compact, conditions }
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        let tm = topological_mechanics(2, &q(2), 2).unwrap();
        let tm_conds = vec![q_line_condition(&tm).unwrap()];
        let bf = bf_theory(&LieAlgebra::sl2(), 2, &q(1), 1).unwrap();
        let bf_conds = vec![bf_a_condition(&bf).unwrap(), bf_b_condition(&bf).unwrap()];
        vec![fixture(tm, tm_conds), fixture(bf, bf_conds)]
    })
}

fn combination(fx: &Fixture, degree_pick: usize, coeffs: &[i64]) -> Vec<Scalar> {
    let degrees: Vec<&i32> = fx.compact.keys().collect();
    let cols = &fx.compact[degrees[degree_pick % degrees.len()]];
    let mut v = vec![Scalar::zero(); fx.fm.dim()];
    for (col, c) in cols.iter().zip(coeffs.iter().cycle()) {
        for (x, y) in v.iter_mut().zip(col) {
            *x += q(*c) * y;
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn defect_identity_on_compact_fields(
        which in 0usize..2,
        (d1, d2) in (0usize..4, 0usize..4),
        c1 in proptest::collection::vec(-3i64..4, 1..7),
        c2 in proptest::collection::vec(-3i64..4, 1..7),
    ) {
        let fx = &fixtures()[which];
        let e1 = combination(fx, d1, &c1);
        let e2 = combination(fx, d2, &c2);
        prop_assume!(e1.iter().any(|x| !x.is_zero()));
        let (lhs, rhs) = fx.sys.boundary_defect(&fx.fm, &e1, &e2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn splittings_project_onto_conditioned_fields(
        which in 0usize..2,
        pick in 0usize..2,
        (d1, d2) in (0usize..4, 0usize..4),
        c1 in proptest::collection::vec(-3i64..4, 1..7),
        c2 in proptest::collection::vec(-3i64..4, 1..7),
    ) {
        let fx = &fixtures()[which];
        let (cond, s) = &fx.conditions[pick % fx.conditions.len()];
        let n = s.i.rows();
        let proj = Matrix::identity(n).sub(&s.i.mul(&s.p).unwrap()).unwrap();
        prop_assert_eq!(s.p.mul(&s.i).unwrap(), Matrix::identity(s.i.cols()));
        prop_assert_eq!(proj.mul(&proj).unwrap(), proj.clone());
        // compact fields projected into E_L: boundary values lie in L, so both sides vanish
        let e1 = proj.mul_vec(&combination(fx, d1, &c1));
        let e2 = proj.mul_vec(&combination(fx, d2, &c2));
        prop_assume!(e1.iter().any(|x| !x.is_zero()));
        let boundary = fx.fm.rho.mul_vec(&e1);
        prop_assert!(cond.project_complement(&boundary).iter().all(Zero::is_zero));
        let (lhs, rhs) = fx.sys.boundary_defect(&fx.fm, &e1, &e2).unwrap();
        prop_assert!(lhs.is_zero());
        prop_assert!(rhs.is_zero());
    }
}
