//! Built-in examples, keyed by name. Descriptor-backed examples ship their descriptor in the
//! binary; the two-dimensional examples run dedicated checks.

use num_traits::One;
use serde_json::json;

use crate::error::{Error, Result};
use crate::examples::{bf_pushforward_compare, jx_functional, o_gb_halfplane, PushforwardSetup};
use crate::interval::CellMesh;
use crate::linf::{CyclicLInfinity, LieAlgebra};
use crate::models::symplectic_plane;
use crate::scalar::{q, Scalar};

use super::descriptor::SystemDescriptor;
use super::report::{timed, Report};
use super::suites::{lie_cohomology_check, run_descriptor, PUSHFORWARD_CELLS};
use super::RunConfig;

#[derive(Debug, Clone, Copy)]
pub struct ExampleInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Whether the example is a system descriptor run through the suites.
    pub descriptor: bool,
}

pub const EXAMPLES: [ExampleInfo; 5] = [
    ExampleInfo { name: "toplmech", summary: "topological mechanics on a 3-cell mesh, Lagrangian lines q and p", descriptor: true },
    ExampleInfo { name: "bf1d-abelian", summary: "1d BF theory for the 1-dimensional abelian Lie algebra, A and B conditions", descriptor: true },
    ExampleInfo { name: "bf1d-sl2", summary: "1d BF theory for sl2, A and B conditions", descriptor: true },
    ExampleInfo { name: "bf2d-sl2-weight1", summary: "2d BF theory for sl2 on the half-plane: local functionals by B-weight", descriptor: false },
    ExampleInfo { name: "bf-pushforward-abelian", summary: "2d abelian BF theory pushed forward to its boundary line", descriptor: false },
];

pub fn example_names() -> Vec<&'static str> {
    EXAMPLES.iter().map(|e| e.name).collect()
}

pub fn embedded_descriptor(name: &str) -> Option<&'static str> {
    match name {
        "toplmech" => Some(include_str!("../../descriptors/toplmech.json")),
        "bf1d-abelian" => Some(include_str!("../../descriptors/bf1d-abelian.json")),
        "bf1d-sl2" => Some(include_str!("../../descriptors/bf1d-sl2.json")),
        _ => None,
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![q(0); n];
    v[i] = Scalar::one();
    v
}

fn bf_descriptor(name: &str, g: &LieAlgebra) -> Result<SystemDescriptor> {
    let boundary: CyclicLInfinity = g.bf_boundary()?;
    let n = g.dim();
    let a: Vec<Vec<Scalar>> = (0..n).map(|i| unit(2 * n, i)).collect();
    let b: Vec<Vec<Scalar>> = (n..2 * n).map(|i| unit(2 * n, i)).collect();
    let mesh = CellMesh::uniform(3, &q(1))?;
    Ok(SystemDescriptor::new(name, &boundary, &[("A", &a, &b), ("B", &b, &a)], &mesh, 1, Some(g)))
}

/// The descriptor of a descriptor-backed example, built from the model constructors.
pub fn reference_descriptor(name: &str) -> Option<SystemDescriptor> {
    match name {
        "toplmech" => {
            let (qv, pv) = (vec![unit(2, 0)], vec![unit(2, 1)]);
            let mesh = CellMesh::uniform(3, &q(3)).ok()?;
            Some(SystemDescriptor::new(name, &symplectic_plane(), &[("q-line", &qv, &pv), ("p-line", &pv, &qv)], &mesh, 1, None))
        }
        "bf1d-abelian" => bf_descriptor(name, &LieAlgebra::abelian(1)).ok(),
        "bf1d-sl2" => bf_descriptor(name, &LieAlgebra::sl2()).ok(),
        _ => None,
    }
}

pub fn run_example(name: &str, config: &RunConfig) -> Result<Report> {
    config.validate()?;
    if let Some(text) = embedded_descriptor(name) {
        return run_descriptor(&SystemDescriptor::from_json_str(text)?, config);
    }
    let checks = match name {
        "bf2d-sl2-weight1" => {
            let g = LieAlgebra::sl2();
            let w = config.weight_cap;
            let start = std::time::Instant::now();
            let halfplane = o_gb_halfplane(&g, w);
            let shared_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut checks = vec![
                lie_cohomology_check(&g, "halfplane/lie-cohomology"),
                timed("halfplane/weights", "B-weight decomposition: direct ranks agree with the Lie-cohomology route", || {
                    let (_, r) = halfplane.clone()?;
                    Ok((r.agrees && r.weight_preserved, serde_json::to_value(&r).ok()))
                }),
                timed("halfplane/weight-1", "cohomology of local functionals in B-weight 1", || {
                    let (_, r) = halfplane.clone()?;
                    let direct = r.direct.get(&1).cloned().unwrap_or_default();
                    let closed = r.closed_form.get(&1).cloned().unwrap_or_default();
                    Ok((direct == closed, Some(json!({ "dimension": r.total(1), "by_degree": direct }))))
                }),
                timed("halfplane/jx", "J_x is closed for each basis element and the classes span weight 1", || {
                    let (c, _) = halfplane.clone()?;
                    let r = jx_functional(&c)?;
                    Ok((r.closed.iter().all(|b| *b) && r.spans, serde_json::to_value(&r).ok()))
                }),
            ];
            checks[1].wall_time_ms += shared_ms;
            checks
        }
        "bf-pushforward-abelian" => {
            let g = LieAlgebra::abelian(1);
            let setup = PushforwardSetup::new(PUSHFORWARD_CELLS, config.sym_trunc)?;
            let start = std::time::Instant::now();
            let report = bf_pushforward_compare(&g, &setup);
            let shared_ms = start.elapsed().as_secs_f64() * 1e3 / setup.opens().len().max(1) as f64;
            let opens = setup.opens();
            opens
                .iter()
                .enumerate()
                .map(|(i, u)| {
                    let mut c = timed(format!("pushforward/{u}"), "boundary observables are quasi-isomorphic to pushed-forward bulk observables", || {
                        let r = report.clone()?;
                        let o = &r.opens[i];
                        Ok((o.chain_map && o.quasi_iso, serde_json::to_value(o).ok()))
                    });
                    c.wall_time_ms += shared_ms;
                    c
                })
                .collect()
        }
        other => {
            return Err(Error::InvalidInput(format!("unknown example {other:?}; expected one of {}", example_names().join(", "))))
        }
    };
    Ok(Report::new(name, "example", config.to_json(), checks))
}
