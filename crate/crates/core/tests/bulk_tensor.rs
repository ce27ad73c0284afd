use bbk_core::interval::{run_cdga, sub_basis_indices};
use bbk_core::linalg::GradedSpace;
use bbk_core::linf::*;
use bbk_core::scalar::{q, Scalar};

fn symplectic_plane() -> CyclicLInfinity {
    let mut v = CyclicLInfinity::new(GradedSpace::from_pairs([("v", 0), ("w", 0)]));
    v.set_pairing(0, &[(0, 1, q(1))], true).unwrap();
    v
}

#[test]
fn topological_mechanics_action() {
    let bulk = tensor_with_cdga(&symplectic_plane(), &run_cdga(&q(1), 2, ProductMode::Quotient)).unwrap();
    // φ = t·v + 1·w; basis index i*5 + form, forms: 1, t, t², dt, t dt
    let mut phi = vec![Scalar::from_integer(0.into()); bulk.dim()];
    phi[1] = q(1);
    phi[5] = q(1);
    assert_eq!(action(&bulk, &phi), bbk_core::scalar::qf(-1, 2));
    assert_eq!(interaction(&bulk, &phi), q(0));
}

#[test]
fn bf_bulk_is_an_linf_algebra_and_cyclic() {
    for g in [LieAlgebra::sl2(), LieAlgebra::abelian(1)] {
        let b = g.bf_boundary().unwrap();
        for n in [1usize, 2] {
            let bulk = tensor_with_cdga(&b, &run_cdga(&q(1), n, ProductMode::Quotient)).unwrap();
            assert_eq!(check_jacobi(&bulk, 3).unwrap(), None);
            ce_differential(&bulk, 2).unwrap();
            let big = run_cdga(&q(1), 2 * n, ProductMode::Capped { cap: 2 * n });
            let forms = sub_basis_indices(n, 2 * n);
            let capped = tensor_with_cdga_on(&b, &big, Some(&forms)).unwrap();
            let nb = big.dim();
            let inputs: Vec<usize> = (0..b.dim()).flat_map(|i| forms.iter().map(move |f| i * nb + f)).collect();
            assert_eq!(check_cyclic(&capped, false, Some(&inputs), 3).unwrap(), None);
        }
    }
}
