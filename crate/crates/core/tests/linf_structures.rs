use std::collections::BTreeMap;

use bbk_core::linalg::Matrix;
use bbk_core::linf::*;
use bbk_core::scalar::q;

#[test]
fn sl2_passes_jacobi_and_killing_cyclicity() {
    let g = LieAlgebra::sl2();
    let alg = g.to_linf(Some(&g.killing_form())).unwrap();
    assert_eq!(check_jacobi(&alg, DEFAULT_ARITY_BUDGET).unwrap(), None);
    assert_eq!(check_cyclic(&alg, true, None, DEFAULT_ARITY_BUDGET).unwrap(), None);
}

#[test]
fn perturbed_sl2_fails_on_efh() {
    let g = LieAlgebra::sl2();
    let mut alg = g.to_linf(None).unwrap();
    alg.set_bracket(&[0, 1], SparseVec::from([(2, q(1)), (0, q(1))])).unwrap_err();
    let mut alg2 = bbk_core::linf::CyclicLInfinity::new(alg.space().clone());
    alg2.set_bracket(&[2, 0], SparseVec::from([(0, q(2))])).unwrap();
    alg2.set_bracket(&[2, 1], SparseVec::from([(1, q(-2))])).unwrap();
    alg2.set_bracket(&[0, 1], SparseVec::from([(2, q(1)), (0, q(1))])).unwrap();
    let ce = check_jacobi(&alg2, 3).unwrap().expect("counterexample");
    assert_eq!(ce.labels, vec!["e", "f", "h"]);
    alg = alg2;
    let _ = alg;
}

#[test]
fn identity_form_is_not_invariant() {
    let g = LieAlgebra::sl2();
    let alg = g.to_linf(Some(&Matrix::identity(3))).unwrap();
    assert!(check_cyclic(&alg, false, None, 3).unwrap().is_some());
}

#[test]
fn sl2_ce_complex() {
    let g = LieAlgebra::sl2();
    let alg = g.to_linf(None).unwrap();
    let ce = ce_differential(&alg, 3).unwrap();
    let dims = ce.complex.space().dims_by_degree();
    assert_eq!(dims, BTreeMap::from([(0, 1), (1, 3), (2, 3), (3, 1)]));
    assert_eq!(ce.complex.cohomology_dims(), BTreeMap::from([(0, 1), (3, 1)]));
}

#[test]
fn bf_boundary_is_cyclic_and_jacobi() {
    for g in [LieAlgebra::sl2(), LieAlgebra::abelian(2), LieAlgebra::sl2().direct_sum(&LieAlgebra::sl2())] {
        let b = g.bf_boundary().unwrap();
        assert_eq!(check_jacobi(&b, 3).unwrap(), None);
        assert_eq!(check_cyclic(&b, true, None, 3).unwrap(), None);
        let ce = ce_differential(&b, 3).unwrap();
        ce.complex.check_square_zero().unwrap();
    }
}
