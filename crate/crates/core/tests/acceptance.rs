//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use bbk_core::examples::{bf_pushforward_compare, jx_functional, lie_cohomology, o_gb_halfplane, LieModule, PushforwardSetup};
use bbk_core::interval::{OpenSet, Point, Poly, PolyForm};
use bbk_core::linalg::Matrix;
use bbk_core::linf::{ce_differential, CyclicLInfinity, LieAlgebra};
use bbk_core::models::*;
use bbk_core::observables::*;
use bbk_core::scalar::{q, qf};
use bbk_core::tnbft::*;
use bbk_core::Scalar;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(pairs: &[(i32, usize)]) -> BTreeMap<i32, usize> {
    pairs.iter().copied().collect()
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    qf(rng.gen_range(-9..10), rng.gen_range(1..7))
}

fn random_poly(rng: &mut ChaCha8Rng, len: usize) -> Poly {
    Poly((0..len).map(|_| random_rational(rng)).collect()).trimmed()
}

fn homotopy_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..200 {
        let cap = rng.gen_range(1..=8);
        let delta = qf(rng.gen_range(1..20), rng.gen_range(1..7));
        let p = random_poly(&mut rng, cap + 1);
        let p = p.sub(&Poly::constant(p.eval(&delta)));
        let qq = random_poly(&mut rng, cap);
        let f = PolyForm::new(p, qq, delta, cap).map_err(|e| e.to_string())?;
        let dk = f.homotopy_k().map_err(|e| e.to_string())?.d();
        let kd = f.d().homotopy_k().map_err(|e| e.to_string())?;
        ensure(dk.add(&kd) == f, || format!("form {i}: dK + Kd ≠ id on {f:?}"))?;
    }
    Ok("200 forms".into())
}

/// Random homogeneous compactly supported field on `fm`.
fn random_compact(rng: &mut ChaCha8Rng, fm: &FieldModel, by_degree: &BTreeMap<i32, Vec<Vec<Scalar>>>) -> Vec<Scalar> {
    let degrees: Vec<&i32> = by_degree.keys().collect();
    loop {
        let cols = &by_degree[degrees[rng.gen_range(0..degrees.len())]];
        let mut v = vec![Scalar::zero(); fm.dim()];
        for col in cols {
            let c = q(rng.gen_range(-3..4));
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(col) {
                    *x += &c * y;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn boundary_defect() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let tm = topological_mechanics(2, &q(2), 2).map_err(|e| e.to_string())?;
    let bf = bf_theory(&LieAlgebra::sl2(), 2, &q(1), 1).map_err(|e| e.to_string())?;
    let tm_conds = vec![q_line_condition(&tm).unwrap()];
    let bf_conds = vec![bf_a_condition(&bf).unwrap(), bf_b_condition(&bf).unwrap()];
    let mut nonzero = 0;
    let mut boundary_pairs = 0;
    for (name, sys, conds) in [("topological mechanics", &tm, tm_conds), ("sl2 BF", &bf, bf_conds)] {
        let opens = sys.mesh().nonempty_opens();
        let models: Vec<(FieldModel, BTreeMap<i32, Vec<Vec<Scalar>>>)> = opens
            .iter()
            .map(|u| {
                let fm = sys.fields(u).unwrap();
                let sub = fm.compact().unwrap();
                let mut by: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
                for c in 0..sub.dim() {
                    by.entry(sub.complex.space().degree(c)).or_default().push(sub.inclusion.column(c));
                }
                (fm, by)
            })
            .collect();
        for i in 0..100 {
            let (fm, by) = &models[rng.gen_range(0..models.len())];
            let e1 = random_compact(&mut rng, fm, by);
            let e2 = random_compact(&mut rng, fm, by);
            let (lhs, rhs) = sys.boundary_defect(fm, &e1, &e2).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("{name} pair {i} on {}: {lhs} ≠ {rhs}", fm.open))?;
            nonzero += usize::from(!lhs.is_zero());
            boundary_pairs += usize::from(fm.has_boundary());
        }
        // both fields in E_L: boundary values lie in L, so the defect vanishes
        let full = &models[opens.iter().position(|u| *u == sys.mesh().full()).unwrap()];
        let chi = default_cutoff(sys.mesh().delta());
        for cond in &conds {
            let s = sys.splitting(cond, &chi).map_err(|e| e.to_string())?;
            let proj = Matrix::identity(s.i.rows()).sub(&s.i.mul(&s.p).unwrap()).unwrap();
            for i in 0..50 {
                let e1 = proj.mul_vec(&random_compact(&mut rng, &full.0, &full.1));
                let e2 = proj.mul_vec(&random_compact(&mut rng, &full.0, &full.1));
                if e1.iter().all(Zero::is_zero) {
                    continue;
                }
                let (lhs, rhs) = sys.boundary_defect(&full.0, &e1, &e2).map_err(|e| e.to_string())?;
                ensure(lhs.is_zero() && rhs.is_zero(), || format!("{name} E_L pair {i}: {lhs}, {rhs}"))?;
            }
        }
    }
    ensure(nonzero > 0, || "no pair exercised a nonzero boundary term".into())?;
    Ok(format!("200 pairs ({boundary_pairs} on boundary opens, {nonzero} with nonzero defect), E_L pairs vanish"))
}

fn lagrangian() -> Outcome {
    let mut opens = 0;
    for sys in [topological_mechanics(3, &q(3), 2).unwrap(), bf_theory(&LieAlgebra::sl2(), 3, &q(1), 1).unwrap()] {
        for u in sys.mesh().nonempty_opens() {
            let r = sys.check_lagrangian(&u).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{r:?}"))?;
            if u.boundary && sys.mesh().components(&u).len() == 1 {
                ensure(r.cone_acyclic && r.compact_dual_acyclic, || format!("boundary open not acyclic: {r:?}"))?;
            }
            opens += 1;
        }
    }
    Ok(format!("{opens} opens"))
}

fn gate() -> Outcome {
    let mut passed = 0;
    for g in [LieAlgebra::abelian(1), LieAlgebra::sl2()] {
        let bf = bf_theory(&g, 1, &q(1), 1).unwrap();
        for c in [bf_a_condition(&bf), bf_b_condition(&bf)] {
            c.map_err(|e| e.to_string())?;
            passed += 1;
        }
    }
    let plane = symplectic_plane();
    // every line of ℚ² through a primitive integer vector with entries in [−6, 6]
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            if num_integer::gcd(a, b) != 1 || a < 0 || (a == 0 && b < 0) {
                continue;
            }
            let l = vec![vec![q(a), q(b)]];
            let lp = vec![if a == 0 { unit(2, 0) } else { unit(2, 1) }];
            let v = validate_boundary_condition(&plane, &l, &lp).map_err(|e| e.to_string())?;
            ensure(v.is_empty(), || format!("line ({a}, {b}): {v:?}"))?;
            passed += 1;
        }
    }
    let tags = |alg: &CyclicLInfinity, l: Vec<Vec<Scalar>>, lp: Vec<Vec<Scalar>>| -> Result<Vec<&'static str>, String> {
        Ok(validate_boundary_condition(alg, &l, &lp).map_err(|e| e.to_string())?.iter().map(|x| x.tag()).collect())
    };
    let sl2 = LieAlgebra::sl2().bf_boundary().unwrap();
    let controls = [
        (tags(&plane, vec![unit(2, 0), unit(2, 1)], vec![])?, "NonIsotropic"),
        (tags(&sl2, vec![unit(6, 0), unit(6, 1), unit(6, 5)], vec![unit(6, 3), unit(6, 4), unit(6, 2)])?, "NotBracketClosed"),
        (tags(&plane, vec![unit(2, 0)], vec![vec![q(2), q(0)]])?, "MissingComplement"),
    ];
    for (got, want) in &controls {
        ensure(got.as_slice() == [*want], || format!("expected [{want}], got {got:?}"))?;
    }
    Ok(format!("{passed} conditions pass, 3 controls rejected with the right tag"))
}

fn cech() -> Outcome {
    let mut covers = 0;
    for cells in 1..=3 {
        let tm = topological_mechanics(cells, &q(1), 1).unwrap();
        let bf = bf_theory(&LieAlgebra::sl2(), cells, &q(1), 1).unwrap();
        let systems = [
            (&tm, q_line_condition(&tm).unwrap()),
            (&bf, bf_a_condition(&bf).unwrap()),
            (&bf, bf_b_condition(&bf).unwrap()),
        ];
        for (sys, cond) in &systems {
            let obs = ClassicalObservables::new(sys, cond, 2).map_err(|e| e.to_string())?;
            for v in sys.mesh().nonempty_opens() {
                for cover in minimal_weiss_covers(sys.mesh(), &v, 2) {
                    ensure(is_weiss_cover(&v, &cover, 2), || format!("not a Weiss cover of {v}"))?;
                    let r = obs.cech_check(&v, &cover).map_err(|e| e.to_string())?;
                    ensure(r.holds(), || format!("{r:?}"))?;
                    covers += 1;
                }
            }
        }
    }
    Ok(format!("{covers} covers"))
}

fn p0() -> Outcome {
    let sys = topological_mechanics(1, &q(1), 2).unwrap();
    let cond = q_line_condition(&sys).unwrap();
    let obs = ClassicalObservables::new(&sys, &cond, 2).map_err(|e| e.to_string())?;
    let p0 = P0Structure::new(&obs, &sys.mesh().full()).map_err(|e| e.to_string())?;
    let pool = p0.generator_pool(6).map_err(|e| e.to_string())?;
    ensure(pool.len() == 6, || format!("pool has {} generators", pool.len()))?;
    let r = p0_suite(&p0, &pool).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("{r:?}"))?;
    Ok(format!("{} triples", r.triples))
}

/// Monomials of each weight in `n` even generators.
fn polynomial_dims(n: usize, t: usize) -> BTreeMap<usize, BTreeMap<i32, usize>> {
    let binom = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
    (0..=t).map(|w| (w, table(&[(0, binom(n + w - 1, w))]))).collect()
}

fn am_topological_mechanics() -> Outcome {
    let interior_oracle = polynomial_dims(2, 2);
    let boundary_oracle = polynomial_dims(1, 2);
    let flat = |m: &BTreeMap<usize, BTreeMap<i32, usize>>| m.values().map(|d| d[&0]).collect::<Vec<_>>();
    ensure(flat(&interior_oracle) == [1, 2, 3] && flat(&boundary_oracle) == [1, 1, 1], || "polynomial oracle".into())?;
    let sys = topological_mechanics(3, &q(3), 2).unwrap();
    let cond = q_line_condition(&sys).unwrap();
    let obs = ClassicalObservables::new(&sys, &cond, 2).map_err(|e| e.to_string())?;
    for (u, oracle) in [
        (OpenSet::from_points(&[Point::Cell(1)]), &interior_oracle),
        (OpenSet::from_points(&[Point::Boundary, Point::Cell(0)]), &boundary_oracle),
    ] {
        let got = obs.space(&u).map_err(|e| e.to_string())?.cohomology_by_weight();
        ensure(got.as_ref() == Some(oracle), || format!("{u}: {got:?} ≠ {oracle:?}"))?;
    }
    let (cand, constants) = AMFactorization::from_condition(&sys, &cond, 2).map_err(|e| e.to_string())?;
    let r = am_compare(&obs, &cand, &constants).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("{:?}", r.first_failure))?;
    Ok(format!("{} opens, {} squares", r.opens.len(), r.squares_checked))
}

/// Sym^{≤t} on generators of the given degrees, odd ones squaring to zero.
fn graded_monomials(degrees: &[i32], t: usize) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    fn walk(degrees: &[i32], start: usize, left: usize, deg: i32, out: &mut BTreeMap<i32, usize>, last: Option<usize>) {
        *out.entry(deg).or_insert(0) += 1;
        if left == 0 {
            return;
        }
        for i in start..degrees.len() {
            if last == Some(i) && degrees[i] % 2 != 0 {
                continue;
            }
            walk(degrees, i, left - 1, deg + degrees[i], out, Some(i));
        }
    }
    walk(degrees, 0, t, 0, &mut out, None);
    out
}

fn am_bf() -> Outcome {
    let g = LieAlgebra::abelian(1);
    let boundary = g.bf_boundary().unwrap();
    // abelian: no brackets and no differential, so C•(E_∂) has zero differential
    ensure(boundary.brackets().values().all(|t| t.entries.values().all(|v| v.is_empty())), || "abelian brackets".into())?;
    ensure(boundary.differential().is_zero(), || "abelian differential".into())?;
    let gen_degrees: Vec<i32> = (0..boundary.dim()).map(|i| -boundary.fdeg(i)).collect();
    let oracle = graded_monomials(&gen_degrees, 2);
    ensure(oracle == table(&[(-1, 1), (0, 2), (1, 1)]), || format!("monomial oracle {oracle:?}"))?;
    let mut opens = 0;
    for g in [LieAlgebra::abelian(1), LieAlgebra::sl2()] {
        let abelian = g.dim() == 1;
        let sys = bf_theory(&g, 3, &q(1), 1).unwrap();
        for cond in [bf_a_condition(&sys).unwrap(), bf_b_condition(&sys).unwrap()] {
            let obs = ClassicalObservables::new(&sys, &cond, 2).map_err(|e| e.to_string())?;
            let (cand, constants) = AMFactorization::from_condition(&sys, &cond, 2).map_err(|e| e.to_string())?;
            if abelian {
                let dims = cand.algebra.complex.cohomology_dims();
                ensure(dims == oracle, || format!("A has {dims:?}"))?;
            }
            let r = am_compare(&obs, &cand, &constants).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{:?}", r.first_failure))?;
            opens += r.opens.len();
        }
    }
    Ok(format!("abelian and sl2, A and B conditions, {opens} open comparisons"))
}

fn halfplane() -> Outcome {
    let g = LieAlgebra::sl2();
    let (c, r) = o_gb_halfplane(&g, 1).map_err(|e| e.to_string())?;
    ensure(r.total(1) == 3, || format!("weight-1 dimension {}", r.total(1)))?;
    ensure(r.agrees, || format!("routes disagree: {r:?}"))?;
    ensure(r.weight_preserved, || "weight not preserved".into())?;
    let j = jx_functional(&c).map_err(|e| e.to_string())?;
    ensure(j.closed.iter().all(|b| *b) && j.spans, || format!("{j:?}"))?;
    Ok(format!("weight 1: {:?}", r.direct[&1]))
}

fn whitehead() -> Outcome {
    let g = LieAlgebra::sl2();
    let h = lie_cohomology(&g, &LieModule::trivial(&g)).map_err(|e| e.to_string())?;
    let got: Vec<usize> = (0..=3).map(|k| h.dim(0, k)).collect();
    ensure(got == [1, 0, 0, 1], || format!("H^0..H^3 = {got:?}"))?;
    let second = ce_differential(&g.to_linf(None).unwrap(), 3).map_err(|e| e.to_string())?.complex.cohomology_dims();
    ensure(second == table(&[(0, 1), (3, 1)]), || format!("symmetric-algebra route: {second:?}"))?;
    Ok("H = (1, 0, 0, 1) by both routes".into())
}

fn pushforward() -> Outcome {
    let setup = PushforwardSetup::new(2, 2).map_err(|e| e.to_string())?;
    let mut opens = 0;
    for g in [LieAlgebra::abelian(1), LieAlgebra::sl2()] {
        let r = bf_pushforward_compare(&g, &setup).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{r:?}"))?;
        opens += r.opens.len();
    }
    Ok(format!("{opens} boundary opens"))
}

fn strict_pullback() -> Outcome {
    let tm = topological_mechanics(3, &q(3), 2).unwrap();
    let bf = bf_theory(&LieAlgebra::sl2(), 3, &q(1), 1).unwrap();
    let cases = [
        (&tm, q_line_condition(&tm).unwrap()),
        (&bf, bf_a_condition(&bf).unwrap()),
        (&bf, bf_b_condition(&bf).unwrap()),
    ];
    let mut n = 0;
    for (sys, cond) in &cases {
        for u in sys.mesh().nonempty_opens() {
            let r = sys.strict_pullback_model_check(cond, &u).map_err(|e| e.to_string())?;
            ensure(r.surjective && r.quasi_iso, || format!("{r:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} opens"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("homotopy identity dK + Kd = id on random forms", homotopy_identity),
        ("boundary-defect identity on random compact pairs", boundary_defect),
        ("Lagrangian structure on every open", lagrangian),
        ("boundary-condition gate and negative controls", gate),
        ("Cech descent on Weiss covers", cech),
        ("P0 axioms on a 6-generator kernel pool", p0),
        ("topological mechanics against F_{O(V),O(L)}", am_topological_mechanics),
        ("1d BF against F_{A,M}", am_bf),
        ("half-plane BF weight-1 cohomology", halfplane),
        ("Lie algebra cohomology of sl2", whitehead),
        ("boundary pushforward of 2d BF", pushforward),
        ("strict pullback of conditioned fields", strict_pullback),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
