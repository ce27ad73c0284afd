//! Building `F_{A,M}` on a mesh of the half-line and checking that its structure maps compose.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::interval::CellMesh;
use crate::linalg::Matrix;
use crate::linf::CyclicLInfinity;
use crate::observables::{AMFactorization, AMValue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamReport {
    pub opens: usize,
    pub dims: BTreeMap<String, usize>,
    pub triples_checked: usize,
    pub associative: bool,
    pub first_failure: Option<String>,
}

/// `F_{A,M}` with `A = C•(a)` and `M = C•(m)`; the module axiom is checked on construction, and
/// `m_{V⊆W} ∘ m_{U⊆V} = m_{U⊆W}` is checked for every chain of opens of the mesh.
pub fn fam_builder(
    a: &CyclicLInfinity,
    m: &CyclicLInfinity,
    inclusion: Matrix,
    truncation: usize,
    mesh: &CellMesh,
) -> Result<(AMFactorization, FamReport)> {
    let fam = AMFactorization::new(a, m, inclusion, truncation)?;
    let opens = mesh.opens();
    let values: Vec<AMValue> = opens.iter().map(|u| fam.value(&mesh.components(u))).collect::<Result<_>>()?;
    let mut report = FamReport {
        opens: opens.len(),
        dims: opens.iter().zip(&values).map(|(u, v)| (u.to_string(), v.ce.dim())).collect(),
        triples_checked: 0,
        associative: true,
        first_failure: None,
    };
    let mut maps: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
    for (i, u) in opens.iter().enumerate() {
        for (j, v) in opens.iter().enumerate() {
            if u.is_subset(v) {
                maps.insert((i, j), fam.structure_matrix(&values[i], &values[j])?);
            }
        }
    }
    for (&(i, j), first) in &maps {
        for (&(_, k), second) in maps.range((j, 0)..(j + 1, 0)) {
            report.triples_checked += 1;
            let composed = second.mul(first)?;
            if !composed.sub(&maps[&(i, k)])?.is_zero() {
                report.associative = false;
                if report.first_failure.is_none() {
                    report.first_failure = Some(format!("{} ⊆ {} ⊆ {}", opens[i], opens[j], opens[k]));
                }
            }
        }
    }
    Ok((fam, report))
}
