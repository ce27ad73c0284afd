use std::collections::BTreeMap;

use bbk_core::examples::*;
use bbk_core::interval::CellMesh;
use bbk_core::linalg::{GradedSpace, Matrix};
use bbk_core::linf::{ce_differential, CyclicLInfinity, LieAlgebra};
use bbk_core::models::*;
use bbk_core::scalar::q;
use bbk_core::Scalar;
use num_traits::Zero;
use proptest::prelude::*;

fn table(pairs: &[(i32, usize)]) -> BTreeMap<i32, usize> {
    pairs.iter().copied().collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn lie_cohomology_with_trivial_coefficients() {
    let ab = LieAlgebra::abelian(1);
    let h = lie_cohomology(&ab, &LieModule::trivial(&ab)).unwrap();
    assert_eq!(h.by_weight[&0], table(&[(0, 1), (1, 1)]));

    let g = LieAlgebra::sl2();
    let cochains = lie_cochains(&g, &LieModule::trivial(&g)).unwrap();
    cochains.complex.check_square_zero().unwrap();
    let chain_dims: Vec<usize> = (0..=3).map(|k| cochains.complex.space().indices_in_degree(k).len()).collect();
    assert_eq!(chain_dims, (0..=3).map(|k| binomial(3, k)).collect::<Vec<_>>());
    let h = lie_cohomology(&g, &LieModule::trivial(&g)).unwrap();
    assert_eq!(h.by_weight[&0], table(&[(0, 1), (1, 0), (2, 0), (3, 1)]));

    // second route: the symmetric algebra on the shifted dual of g[1]
    let oracle = ce_differential(&g.to_linf(None).unwrap(), 3).unwrap();
    assert_eq!(oracle.complex.cohomology_dims(), table(&[(0, 1), (3, 1)]));
}

#[test]
fn lie_cohomology_with_symmetric_coefficients() {
    let g = LieAlgebra::sl2();
    let module = LieModule::sym_powers(&g, 0, 2).unwrap();
    assert!(module.representation_defect(&g).is_none());
    let h = lie_cohomology(&g, &module).unwrap();
    // adjoint coefficients: no cohomology at all
    assert!(h.by_weight[&1].values().all(|d| *d == 0));
    assert_eq!(h.dim(1, 0), 0);
    assert_eq!(h.dim(1, 1), 0);
    // Sym² = trivial ⊕ five-dimensional: the Casimir gives H⁰ and H³
    assert_eq!(h.dim(2, 0), 1);
    assert_eq!(h.dim(2, 3), 1);
    assert_eq!(module.invariant_dim(2), 1);
    assert_eq!(module.invariant_dim(1), 0);

    // odd shift: the exterior algebra on g[1]
    let odd = LieModule::sym_powers(&g, 1, 3).unwrap();
    assert_eq!(odd.weight_dim(3), 1);
    assert!(odd.representation_defect(&g).is_none());
}

#[test]
fn malformed_inputs_are_rejected() {
    let g = LieAlgebra::sl2();
    let mut bad = LieModule::trivial(&g);
    bad.action[0] = Matrix::identity(1);
    assert!(lie_cohomology(&g, &bad).is_err());
    bad.action.pop();
    assert!(lie_cochains(&g, &bad).is_err());
}

#[test]
fn halfplane_weight_one_for_sl2() {
    let (c, r) = o_gb_halfplane(&LieAlgebra::sl2(), 2).unwrap();
    c.complex.check_square_zero().unwrap();
    assert!(r.weight_preserved);
    assert!(r.agrees, "{r:?}");
    assert_eq!(r.total(1), 3);
    assert_eq!(r.direct[&1], table(&[(-1, 3)]));
    // weight 0 is H^{≥1}(g, ℚ) in degree p − 2; the constants are gone
    assert_eq!(r.direct[&0], table(&[(1, 1)]));
}

#[test]
fn halfplane_abelian_and_weight_zero() {
    let (_, r) = o_gb_halfplane(&LieAlgebra::abelian(1), 2).unwrap();
    assert!(r.agrees);
    // Λ¹g*⊗g survives; every element of Sym is invariant
    assert_eq!(r.direct[&1], table(&[(-1, 1)]));
    assert_eq!(r.total(1), 1);
    assert_eq!(r.direct[&0], table(&[(-1, 1)]));
    let (c, _) = o_gb_halfplane(&LieAlgebra::abelian(1), 0).unwrap();
    // weight 0 has no degree −2 piece: the constant is removed
    assert!(c.complex.space().indices_in_degree(-2).is_empty());
}

#[test]
fn halfplane_routes_agree_on_a_product() {
    let g = LieAlgebra::sl2().direct_sum(&LieAlgebra::sl2());
    let (_, r) = o_gb_halfplane(&g, 1).unwrap();
    assert!(r.weight_preserved);
    assert!(r.agrees, "{r:?}");
    assert_eq!(r.total(1), 6);
}

#[test]
fn jx_classes() {
    let g = LieAlgebra::sl2();
    let (c, _) = o_gb_halfplane(&g, 1).unwrap();
    let zero = c.jx(&[Scalar::zero(), Scalar::zero(), Scalar::zero()]).unwrap();
    assert!(zero.iter().all(Zero::is_zero));
    let jh = c.jx(&[q(0), q(0), q(1)]).unwrap();
    assert!(c.complex.is_cocycle(&jh));
    assert!(!c.complex.is_coboundary(-1, &jh));
    let r = jx_functional(&c).unwrap();
    assert!(r.closed.iter().all(|b| *b));
    assert_eq!((r.class_rank, r.weight_one_dim), (3, 3));
    assert!(r.spans);
    assert!(c.jx(&[q(1)]).is_err());

    // abelian: every J_x is exact, since Sym¹ is all invariant
    let (ca, _) = o_gb_halfplane(&LieAlgebra::abelian(1), 1).unwrap();
    assert_eq!(ca.jx_class_rank(&[vec![q(1)]]).unwrap(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn jx_classes_are_independent(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 3), 1..4)) {
        let g = LieAlgebra::sl2();
        let (c, _) = o_gb_halfplane(&g, 1).unwrap();
        let xs: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|v| q(*v)).collect()).collect();
        let rank = Matrix::from_dense(xs.len(), 3, &xs).unwrap().rank();
        prop_assert_eq!(c.jx_class_rank(&xs).unwrap(), rank);
    }
}

#[test]
fn pushforward_abelian() {
    let setup = PushforwardSetup::new(2, 2).unwrap();
    let r = bf_pushforward_compare(&LieAlgebra::abelian(1), &setup).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.opens.len(), 5);
    assert_eq!(r.opens[0].boundary_side, table(&[(0, 1)]));
    assert_eq!(r.opens[0].bulk_side, table(&[(0, 1)]));
    // a single cell: Sym^{≤2} of one degree-0 class on both sides
    assert_eq!(r.opens[1].boundary_side, table(&[(0, 3)]));
    assert_eq!(r.opens[1].bulk_side, table(&[(0, 3)]));
    // two disjoint cells: Sym^{≤2} of two classes
    let disjoint = r.opens.iter().find(|o| o.open == "{c0,c1}").unwrap();
    assert_eq!(disjoint.bulk_side, table(&[(0, 6)]));
}

#[test]
fn pushforward_sl2() {
    let setup = PushforwardSetup::new(2, 2).unwrap();
    let r = bf_pushforward_compare(&LieAlgebra::sl2(), &setup).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.opens[1].bulk_side, table(&[(0, 10)]));
}

#[test]
fn fam_terminal_assignment() {
    let zero = CyclicLInfinity::new(GradedSpace::zero());
    let mesh = CellMesh::uniform(2, &q(1)).unwrap();
    let (_, r) = fam_builder(&zero, &zero, Matrix::zeros(0, 0), 2, &mesh).unwrap();
    assert!(r.associative);
    assert!(r.dims.values().all(|d| *d == 1));
}

#[test]
fn fam_from_boundary_conditions() {
    let mesh = CellMesh::uniform(3, &q(1)).unwrap();
    let tm = topological_mechanics(1, &q(1), 1).unwrap();
    let cond = q_line_condition(&tm).unwrap();
    let (fam, _) = bbk_core::observables::AMFactorization::from_condition(&tm, &cond, 2).unwrap();
    let (_, r) = fam_builder(&fam.a, &fam.m, fam.inclusion.clone(), 2, &mesh).unwrap();
    assert!(r.associative, "{r:?}");
    assert!(r.triples_checked > 20);

    let bf = bf_theory(&LieAlgebra::sl2(), 1, &q(1), 1).unwrap();
    let cond = bf_a_condition(&bf).unwrap();
    let (fam, _) = bbk_core::observables::AMFactorization::from_condition(&bf, &cond, 2).unwrap();
    let (_, r) = fam_builder(&fam.a, &fam.m, fam.inclusion.clone(), 2, &mesh).unwrap();
    assert!(r.associative, "{r:?}");
}

#[test]
fn fam_rejects_a_non_module() {
    // g[1] sent onto the dual summand is not a map of L∞ algebras
    let g = LieAlgebra::sl2();
    let a = g.bf_boundary().unwrap();
    let m = g.to_linf(None).unwrap();
    let wrong = Matrix::from_columns(6, &(0..3).map(|i| {
        let mut v = vec![Scalar::zero(); 6];
        v[3 + i] = q(1);
        v
    }).collect::<Vec<_>>());
    let mesh = CellMesh::uniform(1, &q(1)).unwrap();
    assert!(fam_builder(&a, &m, wrong, 2, &mesh).is_err());
}
