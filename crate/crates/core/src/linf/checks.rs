//! Generalized Jacobi identities, cyclicity, and the action functional.

use num_traits::{One, Zero};
use serde::Serialize;

use super::algebra::{sv_axpy, sv_from_dense, CyclicLInfinity, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Scalar};

/// Default bound on the number of inputs of a Jacobi identity.
pub const DEFAULT_ARITY_BUDGET: usize = 3;

/// A failing basis tuple with the nonzero residual of the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub tuple: Vec<usize>,
    pub labels: Vec<String>,
    #[serde(serialize_with = "ser_residual")]
    pub residual: SparseVec,
}

fn ser_residual<S: serde::Serializer>(v: &SparseVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(v.len()))?;
    for (k, x) in v {
        m.serialize_entry(&k.to_string(), &format_rational(x))?;
    }
    m.end()
}

impl Counterexample {
    fn new(alg: &CyclicLInfinity, tuple: Vec<usize>, residual: SparseVec) -> Self {
        let labels = tuple.iter().map(|i| alg.space().label(*i).to_string()).collect();
        Counterexample { tuple, labels, residual }
    }
}

/// Nondecreasing tuples of length `n` over `0..dim`.
pub(crate) fn multisets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(dim: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, n, i, cur, out);
            cur.pop();
        }
    }
    rec(dim, n, 0, &mut cur, &mut out);
    out
}

/// Sign `χ(σ)` of taking positions `order` of the inputs, with antisymmetric Koszul rule.
fn chi(order: &[usize], ldeg: &[i32]) -> bool {
    let mut negative = false;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                let odd = (ldeg[order[a]] * ldeg[order[b]]).rem_euclid(2) == 1;
                if !odd {
                    negative = !negative;
                }
            }
        }
    }
    negative
}

/// Unshuffles of `n` positions into a first block of size `i`.
fn unshuffles(n: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for first in multisets_strict(n, i) {
        let mut order = first.clone();
        order.extend((0..n).filter(|p| !first.contains(p)));
        out.push(order);
    }
    out
}

fn multisets_strict(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Left side of the `n`-input generalized Jacobi identity
/// `Σ_{i+j=n+1} (−1)^{i(j−1)} Σ_σ χ(σ) ℓ_j(ℓ_i(x_σ(1..i)), x_σ(i+1..n))` on vectors.
pub fn jacobiator(alg: &CyclicLInfinity, xs: &[SparseVec], ldeg_of_inputs: &[i32]) -> SparseVec {
    let n = xs.len();
    let mut out = SparseVec::new();
    for i in 1..=n {
        let j = n + 1 - i;
        if (i > 1 && !alg.brackets().contains_key(&i)) || (j > 1 && !alg.brackets().contains_key(&j)) {
            continue;
        }
        let outer_sign = if (i * (j - 1)) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        for order in unshuffles(n, i) {
            let neg = chi(&order, ldeg_of_inputs);
            let inner_inputs: Vec<SparseVec> = order[..i].iter().map(|p| xs[*p].clone()).collect();
            let inner = alg.bracket(&inner_inputs);
            if inner.is_empty() {
                continue;
            }
            let mut outer_inputs = vec![inner];
            outer_inputs.extend(order[i..].iter().map(|p| xs[*p].clone()));
            let v = alg.bracket(&outer_inputs);
            let s = if neg { -outer_sign.clone() } else { outer_sign.clone() };
            sv_axpy(&mut out, &s, &v);
        }
    }
    out
}

/// Verifies every generalized Jacobi identity on basis tuples. Refuses when the identities
/// needed for the present brackets exceed `budget` inputs.
pub fn check_jacobi(alg: &CyclicLInfinity, budget: usize) -> Result<Option<Counterexample>> {
    let m = alg.max_arity();
    let required = if m <= 1 { 1 } else { 2 * m - 1 };
    if required > budget {
        return Err(Error::ArityBudgetExceeded { required, budget });
    }
    let ld = alg.ldegrees();
    for n in 1..=required {
        for tuple in multisets(alg.dim(), n) {
            let xs: Vec<SparseVec> = tuple.iter().map(|i| SparseVec::from([(*i, Scalar::one())])).collect();
            let ldeg: Vec<i32> = tuple.iter().map(|i| ld[*i]).collect();
            let r = jacobiator(alg, &xs, &ldeg);
            if !r.is_empty() {
                return Ok(Some(Counterexample::new(alg, tuple, r)));
            }
        }
    }
    Ok(None)
}

/// Sign `c` in `⟨ℓ_k(x_1..x_k), x_{k+1}⟩ = c ⟨x_1, ℓ_k(x_2..x_{k+1})⟩`, from `L`-degrees.
///
/// Writing `⟨X, Y⟩ = (−1)^{|X|_L} B(X, Y)`, the form `B` obeys the usual invariance
/// `B(ℓ_k(x_1..x_k), x_{k+1}) = (−1)^{k + k|x_1|} B(x_1, ℓ_k(x_2..x_{k+1}))`, which gives
/// `c = (−1)^{k|x_1| + |x_2| + … + |x_k|}`.
pub fn cyclic_sign(k: usize, ldegs: &[i32]) -> Scalar {
    let e: i32 = k as i32 * ldegs[0] + ldegs[1..k].iter().sum::<i32>();
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Residual of the arity-`k` cyclic identity on one basis tuple of length `k + 1`.
pub fn cyclic_residual(alg: &CyclicLInfinity, tuple: &[usize]) -> Scalar {
    let k = tuple.len() - 1;
    let ld: Vec<i32> = tuple.iter().map(|i| alg.ldeg(*i)).collect();
    let lhs = alg.pair(&alg.bracket_basis(&tuple[..k]), &SparseVec::from([(tuple[k], Scalar::one())]));
    let rhs = alg.pair(&SparseVec::from([(tuple[0], Scalar::one())]), &alg.bracket_basis(&tuple[1..]));
    lhs - cyclic_sign(k, &ld) * rhs
}

/// Verifies the cyclic identities for every arity ≥ 2 present (and for `ℓ_1` when
/// `include_differential`), on all basis tuples drawn from `inputs` (all of `F` if `None`).
pub fn check_cyclic(
    alg: &CyclicLInfinity,
    include_differential: bool,
    inputs: Option<&[usize]>,
    budget: usize,
) -> Result<Option<Counterexample>> {
    let Some(p) = alg.pairing() else { return Ok(None) };
    if p.matrix.is_zero() {
        return Ok(None);
    }
    let m = alg.max_arity();
    if m > budget {
        return Err(Error::ArityBudgetExceeded { required: m, budget });
    }
    let all: Vec<usize> = (0..alg.dim()).collect();
    let pool = inputs.unwrap_or(&all);
    let mut arities: Vec<usize> = alg.brackets().iter().filter(|(_, t)| !t.entries.is_empty()).map(|(k, _)| *k).collect();
    if include_differential {
        arities.insert(0, 1);
    }
    for k in arities {
        let mut idx = vec![0usize; k + 1];
        if pool.is_empty() {
            break;
        }
        loop {
            let tuple: Vec<usize> = idx.iter().map(|i| pool[*i]).collect();
            let total: i32 = tuple.iter().map(|i| alg.fdeg(*i)).sum::<i32>() + 1 + p.degree;
            if total == 0 {
                let r = cyclic_residual(alg, &tuple);
                if !r.is_zero() {
                    return Ok(Some(Counterexample::new(alg, tuple, SparseVec::from([(0, r)]))));
                }
            }
            let mut q = 0;
            loop {
                if q == k + 1 {
                    break;
                }
                idx[q] += 1;
                if idx[q] < pool.len() {
                    break;
                }
                idx[q] = 0;
                q += 1;
            }
            if q == k + 1 {
                break;
            }
        }
    }
    Ok(None)
}

/// Cyclic identities on tuples of homogeneous vectors from `pool`; a failure reports pool
/// positions and the residual.
pub fn check_cyclic_vectors(
    alg: &CyclicLInfinity,
    pool: &[SparseVec],
    include_differential: bool,
    budget: usize,
) -> Result<Option<(Vec<usize>, Scalar)>> {
    let Some(p) = alg.pairing() else { return Ok(None) };
    let m = alg.max_arity();
    if m > budget {
        return Err(Error::ArityBudgetExceeded { required: m, budget });
    }
    let mut fdeg = Vec::with_capacity(pool.len());
    for v in pool {
        let d = v.keys().next().map(|i| alg.fdeg(*i));
        if v.keys().any(|i| Some(alg.fdeg(*i)) != d) {
            return Err(Error::InvalidInput("cyclicity inputs must be homogeneous".into()));
        }
        fdeg.push(d.unwrap_or(0));
    }
    let mut arities: Vec<usize> = alg.brackets().iter().filter(|(_, t)| !t.entries.is_empty()).map(|(k, _)| *k).collect();
    if include_differential {
        arities.insert(0, 1);
    }
    for k in arities {
        for tuple in itertools::Itertools::multi_cartesian_product((0..=k).map(|_| 0..pool.len())) {
            if tuple.iter().map(|i| fdeg[*i]).sum::<i32>() + 1 + p.degree != 0 {
                continue;
            }
            let xs: Vec<SparseVec> = tuple.iter().map(|i| pool[*i].clone()).collect();
            let ld: Vec<i32> = tuple.iter().map(|i| fdeg[*i] + 1).collect();
            let lhs = alg.pair(&alg.bracket(&xs[..k]), &xs[k]);
            let rhs = alg.pair(&xs[0], &alg.bracket(&xs[1..]));
            let r = lhs - cyclic_sign(k, &ld) * rhs;
            if !r.is_zero() {
                return Ok(Some((tuple, r)));
            }
        }
    }
    Ok(None)
}

fn factorial(n: usize) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, i| acc * Scalar::from_integer((i as i64).into()))
}

/// `S(φ) = Σ_{k≥1} ⟨φ, ℓ_k(φ,…,φ)⟩ / (k+1)!`.
pub fn action(alg: &CyclicLInfinity, phi: &[Scalar]) -> Scalar {
    action_from(alg, phi, 1)
}

/// The action with the quadratic term dropped.
pub fn interaction(alg: &CyclicLInfinity, phi: &[Scalar]) -> Scalar {
    action_from(alg, phi, 2)
}

fn action_from(alg: &CyclicLInfinity, phi: &[Scalar], start: usize) -> Scalar {
    let v = sv_from_dense(phi);
    if v.is_empty() {
        return Scalar::zero();
    }
    let mut s = Scalar::zero();
    for k in start..=alg.max_arity().max(1) {
        let inputs = vec![v.clone(); k];
        let b = alg.bracket(&inputs);
        s += alg.pair(&v, &b) / factorial(k + 1);
    }
    s
}

/// Evaluates one term `⟨x_0, ℓ_k(x_1..x_k)⟩` as a multilinear form; used to test symmetry of the action.
pub fn pairing_form(alg: &CyclicLInfinity, xs: &[SparseVec]) -> Scalar {
    alg.pair(&xs[0], &alg.bracket(&xs[1..]))
}
