//! The verification suites run on a system descriptor.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::examples::{bf_pushforward_compare, fam_builder, jx_functional, lie_cohomology, o_gb_halfplane, LieModule, PushforwardSetup};
use crate::linf::{ce_differential, check_cyclic, check_jacobi, LieAlgebra};
use crate::observables::{am_compare, minimal_weiss_covers, p0_suite, AMFactorization, ClassicalObservables, P0Structure};
use crate::tnbft::{validate_boundary_condition, BoundaryCondition, BoundaryTheory, BulkBoundarySystem};

use super::descriptor::{ConditionData, ParsedSystem, SystemDescriptor};
use super::report::{timed, CheckRecord, Report};
use super::{RunConfig, Suite};

/// Size of the kernel-presented generator pool for the Poisson checks.
pub const P0_POOL_SIZE: usize = 6;

/// Number of cells of the boundary-line mesh in the pushforward comparison.
pub const PUSHFORWARD_CELLS: usize = 2;

type Task<'a> = Box<dyn FnOnce() -> CheckRecord + Send + 'a>;

fn witness<T: Serialize>(x: &T) -> Option<Value> {
    serde_json::to_value(x).ok()
}

fn run_tasks(tasks: Vec<Task<'_>>) -> Vec<CheckRecord> {
    tasks.into_par_iter().map(|t| t()).collect()
}

/// Parses the descriptor and runs the selected suites. Errors are reserved for invalid input.
pub fn run_descriptor(desc: &SystemDescriptor, config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let parsed = desc.parse()?;
    let checks = run_parsed(&parsed, config);
    Ok(Report::new(parsed.name.clone(), config.suite.as_str(), config.to_json(), checks))
}

pub fn run_parsed(p: &ParsedSystem, config: &RunConfig) -> Vec<CheckRecord> {
    let budget = config.arity_budget;
    let cap = config.poly_cap.unwrap_or(p.poly_cap);
    let mut out = Vec::new();
    let mut system = None;
    out.push(timed("system/bulk", "bulk fields are boundary fields tensored with interval forms", || {
        let theory = BoundaryTheory::new(p.boundary.clone(), budget)?;
        let sys = BulkBoundarySystem::new(theory, p.mesh.clone(), cap)?;
        let w = json!({ "boundary_dim": p.boundary.dim(), "cells": p.mesh.num_cells(), "poly_cap": cap, "bulk_dim": sys.fields(&sys.mesh().full())?.dim() });
        system = Some(sys);
        Ok((true, Some(w)))
    }));
    if config.suite.includes(Suite::Bv) {
        out.extend(boundary_checks(p, budget));
    }
    let Some(sys) = system else {
        for s in [Suite::Bv, Suite::Lagrangian, Suite::Factorization, Suite::P0, Suite::Examples] {
            if config.suite.includes(s) {
                out.push(CheckRecord::skipped(format!("{s}/system"), "suite prerequisites", "the bulk system could not be built"));
            }
        }
        return out;
    };
    if config.suite.includes(Suite::Bv) {
        out.extend(bv_suite(&sys, p, budget));
    }
    if config.suite.includes(Suite::Lagrangian) {
        out.extend(lagrangian_suite(&sys, p));
    }
    if config.suite.includes(Suite::Factorization) {
        out.extend(factorization_suite(&sys, p, config.sym_trunc));
    }
    if config.suite.includes(Suite::P0) {
        out.extend(p0_checks(&sys, p, config.sym_trunc));
    }
    if config.suite.includes(Suite::Examples) {
        out.extend(examples_suite(&sys, p, config));
    }
    out
}

fn condition(sys: &BulkBoundarySystem, c: &ConditionData) -> Result<BoundaryCondition> {
    BoundaryCondition::new(sys.boundary(), c.l.clone(), c.l_prime.clone())
}

/// Axioms of the boundary theory itself, run even when it is malformed.
fn boundary_checks(p: &ParsedSystem, budget: usize) -> Vec<CheckRecord> {
    let alg = &p.boundary;
    vec![
        timed("bv/boundary/jacobi", "higher Jacobi identities of the boundary brackets", || {
            let c = check_jacobi(alg, budget)?;
            Ok((c.is_none(), c.as_ref().and_then(witness)))
        }),
        timed("bv/boundary/cyclic", "cyclicity of the boundary pairing, differential included", || {
            let c = check_cyclic(alg, true, None, budget)?;
            Ok((c.is_none(), c.as_ref().and_then(witness)))
        }),
        timed("bv/boundary/pairing", "boundary pairing of degree 0, nondegenerate", || {
            let degree = alg.pairing().map(|q| q.degree);
            Ok((degree == Some(0) && alg.is_symplectic(), Some(json!({ "degree": degree, "nondegenerate": alg.is_symplectic() }))))
        }),
    ]
}

fn bv_suite(sys: &BulkBoundarySystem, p: &ParsedSystem, budget: usize) -> Vec<CheckRecord> {
    let mut tasks: Vec<Task<'_>> = Vec::new();
    tasks.push(Box::new(move || {
        timed("bv/isotropic", "isotropic structure: boundary defect identity and cyclic higher brackets", || {
            let f = sys.check_isotropic(budget)?;
            Ok((f.is_none(), f.as_ref().and_then(witness)))
        })
    }));
    for u in sys.mesh().nonempty_opens() {
        tasks.push(Box::new(move || {
            timed(format!("bv/defect/{u}"), "failure of cyclicity for the differential equals the boundary pairing", || {
                let fm = sys.fields(&u)?;
                let f = sys.check_differential_isotropy(&fm)?;
                Ok((f.is_none(), f.as_ref().and_then(witness)))
            })
        }));
    }
    for c in &p.conditions {
        tasks.push(Box::new(move || {
            timed(format!("bv/condition/{}/gate", c.name), "boundary condition: isotropic, bracket-closed, with isotropic complement", || {
                let v = validate_boundary_condition(sys.boundary().algebra(), &c.l, &c.l_prime)?;
                Ok((v.is_empty(), Some(json!({ "violations": v }))))
            })
        }));
        tasks.push(Box::new(move || {
            timed(format!("bv/condition/{}/cyclicity", c.name), "cyclicity restored on conditioned fields, arity 1 included", || {
                let cond = condition(sys, c)?;
                let f = sys.check_conditioned_cyclicity(&cond, budget)?;
                Ok((f.is_none(), f.map(|s| json!({ "failure": s }))))
            })
        }));
    }
    run_tasks(tasks)
}

fn lagrangian_suite(sys: &BulkBoundarySystem, p: &ParsedSystem) -> Vec<CheckRecord> {
    let mut tasks: Vec<Task<'_>> = Vec::new();
    for u in sys.mesh().nonempty_opens() {
        let v = u.clone();
        tasks.push(Box::new(move || {
            timed(format!("lagrangian/open/{v}"), "the map from the cone of the boundary map to dual compact fields is a quasi-isomorphism", || {
                let r = sys.check_lagrangian(&v)?;
                Ok((r.holds(), witness(&r)))
            })
        }));
        for c in &p.conditions {
            let v = u.clone();
            tasks.push(Box::new(move || {
                timed(
                    format!("lagrangian/pullback/{}/{v}", c.name),
                    "boundary map surjective per degree; conditioned fields model the homotopy pullback",
                    || {
                        let cond = condition(sys, c)?;
                        let r = sys.strict_pullback_model_check(&cond, &v)?;
                        Ok((r.holds(), witness(&r)))
                    },
                )
            }));
        }
    }
    run_tasks(tasks)
}

fn factorization_suite(sys: &BulkBoundarySystem, p: &ParsedSystem, truncation: usize) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for c in &p.conditions {
        let obs = match condition(sys, c).and_then(|cond| ClassicalObservables::new(sys, &cond, truncation)) {
            Ok(o) => o,
            Err(e) => {
                out.push(timed(format!("factorization/{}/observables", c.name), "observables are defined on every open", || Err(e)));
                continue;
            }
        };
        let obs = &obs;
        let mut tasks: Vec<Task<'_>> = Vec::new();
        for v in sys.mesh().nonempty_opens() {
            tasks.push(Box::new(move || {
                timed(format!("factorization/{}/cech/{v}", c.name), "Čech descent for Weiss covers", || {
                    let covers = minimal_weiss_covers(sys.mesh(), &v, truncation);
                    let mut failing = Vec::new();
                    for cover in &covers {
                        let r = obs.cech_check(&v, cover)?;
                        if !r.holds() {
                            failing.push(r);
                        }
                    }
                    Ok((failing.is_empty(), Some(json!({ "covers": covers.len(), "level": truncation, "failing": failing }))))
                })
            }));
        }
        out.extend(run_tasks(tasks));
        out.push(timed(format!("factorization/{}/am-compare", c.name), "observables agree with the algebra/module factorization algebra", || {
            let cond = obs.condition();
            let (cand, constants) = AMFactorization::from_condition(sys, cond, truncation)?;
            let r = am_compare(obs, &cand, &constants)?;
            Ok((r.holds(), witness(&r)))
        }));
    }
    out
}

fn p0_checks(sys: &BulkBoundarySystem, p: &ParsedSystem, truncation: usize) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let full = sys.mesh().full();
    for c in &p.conditions {
        let axioms_id = format!("p0/{}/axioms", c.name);
        let closure_id = format!("p0/{}/closure", c.name);
        let run = || -> Result<crate::observables::P0Report> {
            let cond = condition(sys, c)?;
            let obs = ClassicalObservables::new(sys, &cond, truncation)?;
            let p0 = P0Structure::new(&obs, &full)?;
            let pool = p0.generator_pool(P0_POOL_SIZE)?;
            p0_suite(&p0, &pool)
        };
        let start = std::time::Instant::now();
        let result = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let mut axioms = timed(axioms_id, "shifted Poisson bracket: antisymmetry, Jacobi, Leibniz, d a derivation, degree +1", || {
            let r = result.clone()?;
            Ok((r.antisymmetry && r.jacobi && r.leibniz && r.d_compatible && r.degree, witness(&r)))
        });
        let mut closure = timed(closure_id, "the differential preserves kernel-presented observables", || {
            let r = result.clone()?;
            Ok((r.closure, Some(json!({ "pool_size": r.pool_size, "closure": r.closure }))))
        });
        axioms.wall_time_ms += ms;
        closure.wall_time_ms += ms;
        out.push(axioms);
        out.push(closure);
    }
    out
}

fn examples_suite(sys: &BulkBoundarySystem, p: &ParsedSystem, config: &RunConfig) -> Vec<CheckRecord> {
    let t = config.sym_trunc;
    let mut tasks: Vec<Task<'_>> = Vec::new();
    for c in &p.conditions {
        tasks.push(Box::new(move || {
            timed(format!("examples/{}/fam", c.name), "the algebra/module factorization algebra has composable structure maps", || {
                let cond = condition(sys, c)?;
                let (fam, _) = AMFactorization::from_condition(sys, &cond, t)?;
                let (_, r) = fam_builder(&fam.a, &fam.m, fam.inclusion.clone(), t, sys.mesh())?;
                Ok((r.associative, witness(&r)))
            })
        }));
    }
    if let Some(g) = &p.lie {
        let w = config.weight_cap;
        tasks.push(Box::new(move || lie_cohomology_check(g, "examples/lie/cohomology")));
        tasks.push(Box::new(move || {
            timed("examples/halfplane", "half-plane local functionals: direct ranks agree with the Lie-cohomology decomposition", || {
                let (_, r) = o_gb_halfplane(g, w)?;
                Ok((r.agrees && r.weight_preserved, witness(&r)))
            })
        }));
        tasks.push(Box::new(move || {
            timed("examples/halfplane/jx-closed", "boundary functionals J_x are closed", || {
                let (c, _) = o_gb_halfplane(g, w.max(1))?;
                let r = jx_functional(&c)?;
                Ok((r.closed.iter().all(|b| *b), witness(&r)))
            })
        }));
        tasks.push(Box::new(move || {
            timed("examples/pushforward", "boundary observables are quasi-isomorphic to pushed-forward bulk observables", || {
                let setup = PushforwardSetup::new(PUSHFORWARD_CELLS, t)?;
                let r = bf_pushforward_compare(g, &setup)?;
                Ok((r.holds(), witness(&r)))
            })
        }));
    }
    run_tasks(tasks)
}

/// Cohomology with trivial coefficients computed twice: on `Λ•g^∨` directly and from the
/// Chevalley–Eilenberg complex of `g[1]`.
pub fn lie_cohomology_check(g: &LieAlgebra, id: &str) -> CheckRecord {
    timed(id, "Lie algebra cohomology with trivial coefficients by two routes", || {
        let direct = lie_cohomology(g, &LieModule::trivial(g))?;
        let mut direct_dims = direct.by_weight[&0].clone();
        direct_dims.retain(|_, d| *d > 0);
        let oracle = ce_differential(&g.to_linf(None)?, g.dim().max(1))?.complex.cohomology_dims();
        let mut oracle_dims = oracle.clone();
        oracle_dims.retain(|_, d| *d > 0);
        Ok((direct_dims == oracle_dims, Some(json!({ "direct": direct.by_weight[&0], "ce_route": oracle }))))
    })
}

