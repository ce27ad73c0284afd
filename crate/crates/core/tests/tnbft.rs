use bbk_core::interval::{OpenSet, Point, Poly};
use bbk_core::linalg::{CochainComplex, Matrix, Subcomplex};
use bbk_core::linf::{CyclicLInfinity, LieAlgebra, DEFAULT_ARITY_BUDGET};
use bbk_core::models::*;
use bbk_core::scalar::{q, qf};
use bbk_core::tnbft::*;
use bbk_core::Scalar;
use num_traits::{One, Zero};

fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|x| q(*x)).collect()
}

fn field(fm: &FieldModel, terms: &[(usize, usize, Scalar)]) -> Vec<Scalar> {
    let mut e = vec![Scalar::zero(); fm.dim()];
    for (x, a, c) in terms {
        e[fm.index(0, *x, *a)] += c;
    }
    e
}

#[test]
fn topological_mechanics_bulk_has_constant_cohomology() {
    let sys = topological_mechanics(1, &q(1), 2).unwrap();
    let fm = sys.fields(&sys.mesh().full()).unwrap();
    let dims = fm.complex().unwrap().cohomology_dims();
    assert_eq!(dims.get(&0), Some(&2));
    assert_eq!(dims.values().sum::<usize>(), 2);
}

#[test]
fn zero_boundary_gives_zero_bulk() {
    let mut alg = CyclicLInfinity::new(bbk_core::linalg::GradedSpace::zero());
    alg.set_pairing(0, &[], true).unwrap();
    let b = BoundaryTheory::new(alg, 3).unwrap();
    let sys = BulkBoundarySystem::new(b, bbk_core::interval::CellMesh::uniform(2, &q(1)).unwrap(), 2).unwrap();
    assert_eq!(sys.fields(&sys.mesh().full()).unwrap().dim(), 0);
}

#[test]
fn defect_of_linear_cutoffs_is_minus_one() {
    let sys = topological_mechanics(1, &q(1), 2).unwrap();
    let fm = sys.fields(&sys.mesh().full()).unwrap();
    // (1 − t) ⊗ q and (1 − t) ⊗ p
    let e1 = field(&fm, &[(0, 0, q(1)), (0, 1, q(-1))]);
    let e2 = field(&fm, &[(1, 0, q(1)), (1, 1, q(-1))]);
    assert_eq!(sys.boundary_defect(&fm, &e1, &e2).unwrap(), (q(-1), q(-1)));
    let zero = vec![Scalar::zero(); fm.dim()];
    assert_eq!(sys.boundary_defect(&fm, &zero, &zero).unwrap(), (q(0), q(0)));
    // both boundary values in L = span{q}
    let e3 = field(&fm, &[(0, 0, q(2)), (0, 1, q(-1)), (0, 2, q(-1))]);
    assert_eq!(sys.boundary_defect(&fm, &e1, &e3).unwrap(), (q(0), q(0)));
    // not compactly supported
    let bad = field(&fm, &[(0, 0, q(1))]);
    assert!(sys.boundary_defect(&fm, &bad, &e2).is_err());
}

#[test]
fn isotropic_structures() {
    let tm = topological_mechanics(1, &q(1), 2).unwrap();
    assert_eq!(tm.check_isotropic(DEFAULT_ARITY_BUDGET).unwrap(), None);
    let bf = bf_theory(&LieAlgebra::sl2(), 1, &q(1), 1).unwrap();
    assert_eq!(bf.check_isotropic(DEFAULT_ARITY_BUDGET).unwrap(), None);

    let mut fm = tm.fields(&tm.mesh().full()).unwrap();
    let p = fm.alg.pairing().unwrap().clone();
    fm.alg.set_pairing_matrix(p.degree, p.matrix.scaled(&q(-1)), false).unwrap();
    assert!(tm.check_differential_isotropy(&fm).unwrap().is_some());
}

#[test]
fn lagrangian_on_every_open() {
    for sys in [topological_mechanics(3, &q(3), 2).unwrap(), bf_theory(&LieAlgebra::sl2(), 3, &q(1), 1).unwrap()] {
        for u in sys.mesh().opens() {
            let r = sys.check_lagrangian(&u).unwrap();
            assert!(r.holds(), "{r:?}");
            if u.boundary && sys.mesh().components(&u).len() == 1 {
                assert!(r.cone_acyclic && r.compact_dual_acyclic, "{r:?}");
            }
        }
    }
}

#[test]
fn degenerate_bulk_pairing_is_not_lagrangian() {
    let sys = topological_mechanics(3, &q(3), 2).unwrap();
    let u = OpenSet::from_points(&[Point::Boundary, Point::Cell(0)]);
    let mut fm = sys.fields(&u).unwrap();
    let p = fm.alg.pairing().unwrap().clone();
    let n = fm.dim();
    // forget the pairing on the p-component
    let mut m = Matrix::zeros(n, n);
    for r in 0..n {
        for (c, x) in p.matrix.row(r) {
            if r < n / 2 && *c < n / 2 {
                m.set(r, *c, x.clone());
            }
        }
    }
    fm.alg.set_pairing_matrix(p.degree, m, false).unwrap();
    let r = sys.lagrangian_on(&fm).unwrap();
    assert!(!r.holds());
    assert!(r.witness_degree.is_some());
}

#[test]
fn boundary_condition_gate() {
    let tm = topological_mechanics(1, &q(1), 1).unwrap();
    for (a, b) in [(1, 0), (0, 1), (1, 1), (2, -3), (-5, 7)] {
        let complement = if a == 0 { [q(1), q(0)] } else { [q(0), q(1)] };
        assert!(plane_condition(&tm, [q(a), q(b)], complement).is_ok(), "line ({a}, {b})");
    }
    for g in [LieAlgebra::abelian(1), LieAlgebra::sl2()] {
        let bf = bf_theory(&g, 1, &q(1), 1).unwrap();
        assert!(bf_a_condition(&bf).is_ok());
        assert!(bf_b_condition(&bf).is_ok());
    }

    let plane = tm.boundary().algebra();
    let tags = |l: Vec<Vec<Scalar>>, lp: Vec<Vec<Scalar>>, alg: &CyclicLInfinity| {
        validate_boundary_condition(alg, &l, &lp).unwrap().iter().map(|x| x.tag()).collect::<Vec<_>>()
    };
    assert_eq!(tags(vec![v(&[1, 0]), v(&[0, 1])], vec![], plane), ["NonIsotropic"]);
    assert_eq!(tags(vec![v(&[1, 0])], vec![], plane), ["MissingComplement"]);
    assert_eq!(tags(vec![v(&[1, 0])], vec![v(&[2, 0])], plane), ["MissingComplement"]);
    let sl2 = LieAlgebra::sl2().bf_boundary().unwrap();
    let u = |i: usize| {
        let mut x = vec![Scalar::zero(); 6];
        x[i] = Scalar::one();
        x
    };
    // span{e, f, h^} is isotropic with isotropic complement span{e^, f^, h}, but [e, f] = h
    assert_eq!(tags(vec![u(0), u(1), u(5)], vec![u(3), u(4), u(2)], &sl2), ["NotBracketClosed"]);
}

#[test]
fn imposing_the_condition() {
    let sys = topological_mechanics(3, &q(3), 2).unwrap();
    let cond = q_line_condition(&sys).unwrap();
    let b = OpenSet::from_points(&[Point::Boundary, Point::Cell(0)]);
    let el = sys.impose(&cond, &b).unwrap();
    let h = el.alg.complex().unwrap().cohomology_dims();
    assert_eq!((h.get(&0), h.values().sum::<usize>()), (Some(&1), 1));
    let i = OpenSet::from_points(&[Point::Cell(1)]);
    let el = sys.impose(&cond, &i).unwrap();
    assert_eq!(el.dim(), el.fields.dim());
    assert_eq!(el.alg.complex().unwrap().cohomology_dims().get(&0), Some(&2));

    let bf = bf_theory(&LieAlgebra::sl2(), 2, &q(1), 1).unwrap();
    for cond in [bf_a_condition(&bf).unwrap(), bf_b_condition(&bf).unwrap()] {
        let el = bf.impose(&cond, &bf.mesh().full()).unwrap();
        assert_eq!(el.alg.complex().unwrap().cohomology_dims().values().sum::<usize>(), 3);
        assert_eq!(bf.check_conditioned_cyclicity(&cond, 3).unwrap(), None);
    }
    assert_eq!(sys.check_conditioned_cyclicity(&cond, 3).unwrap(), None);
}

#[test]
fn splitting_identities() {
    let sys = topological_mechanics(1, &qf(3, 2), 2).unwrap();
    let cond = q_line_condition(&sys).unwrap();
    let chi = default_cutoff(&qf(3, 2));
    let s = sys.splitting(&cond, &chi).unwrap();
    let pi = s.p.mul(&s.i).unwrap();
    assert_eq!(pi, Matrix::identity(1));
    let n = s.i.rows();
    let proj = Matrix::identity(n).sub(&s.i.mul(&s.p).unwrap()).unwrap();
    assert_eq!(proj.mul(&proj).unwrap(), proj);
    assert!(s.p.mul(&proj).unwrap().is_zero());
    assert!(s.i.mul_vec(&[q(0)]).iter().all(Zero::is_zero));
    let fm = sys.fields(&sys.mesh().full()).unwrap();
    let compact = fm.compact().unwrap();
    assert!(compact.contains(&s.i.column(0)));

    assert!(sys.splitting(&cond, &Poly::from_ints(&[2, -1])).is_err());
    assert!(sys.splitting(&cond, &Poly::from_ints(&[1])).is_err());
}

#[test]
fn strict_pullback_on_every_open() {
    let tm = topological_mechanics(3, &q(3), 2).unwrap();
    let bf = bf_theory(&LieAlgebra::sl2(), 3, &q(1), 1).unwrap();
    let tm_cond = q_line_condition(&tm).unwrap();
    let bf_cond = bf_b_condition(&bf).unwrap();
    for (sys, cond) in [(&tm, &tm_cond), (&bf, &bf_cond)] {
        for u in sys.mesh().opens() {
            let r = sys.strict_pullback_model_check(cond, &u).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.conditioned_dims, r.homotopy_pullback_dims);
        }
    }
}

#[test]
fn restricted_bulk_breaks_the_pullback() {
    let sys = topological_mechanics(1, &q(1), 2).unwrap();
    let cond = q_line_condition(&sys).unwrap();
    let fm = sys.fields(&sys.mesh().full()).unwrap();
    let n = fm.dim();
    let drop = fm.index(0, 1, 0); // p ⊗ 1
    let cols: Vec<Vec<Scalar>> = (0..n)
        .filter(|i| *i != drop)
        .map(|i| {
            let mut x = vec![Scalar::zero(); n];
            x[i] = Scalar::one();
            x
        })
        .collect();
    let labels = (0..cols.len()).map(|i| format!("b{i}")).collect();
    let full: CochainComplex = fm.complex().unwrap();
    let sub = Subcomplex::new(&full, cols, labels).unwrap();
    let rho = fm.rho.mul(&sub.inclusion).unwrap();
    let r = strict_pullback_on("restricted", &sub.complex, &rho, Some(&sys.boundary_complex().unwrap()), &cond).unwrap();
    assert!(!r.surjective);
    assert_eq!(r.surjectivity_failure_degree, Some(0));
    assert!(!r.holds());
}
