//! JSON system descriptors: boundary data, boundary conditions and the interval model.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interval::CellMesh;
use crate::linf::{CyclicLInfinity, LieAlgebra, LinfJson};
use crate::scalar::{format_rational, parse_rational, Scalar};

pub const DESCRIPTOR_SCHEMA_VERSION: u32 = 1;

/// Largest bracket arity the schema accepts.
pub const MAX_SCHEMA_ARITY: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionJson {
    pub name: String,
    pub l: Vec<Vec<String>>,
    pub l_prime: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalJson {
    pub breakpoints: Vec<String>,
    pub poly_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieBracketJson {
    pub left: usize,
    pub right: usize,
    pub output: usize,
    pub coeff: String,
}

/// A Lie algebra by its brackets `[x_left, x_right]` for `left < right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieJson {
    pub labels: Vec<String>,
    pub brackets: Vec<LieBracketJson>,
}

impl LieJson {
    pub fn from_lie(g: &LieAlgebra) -> Self {
        let mut brackets = Vec::new();
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                for (k, c) in g.bracket_basis(i, j) {
                    brackets.push(LieBracketJson { left: i, right: j, output: *k, coeff: format_rational(c) });
                }
            }
        }
        LieJson { labels: g.labels().to_vec(), brackets }
    }

    pub fn build(&self) -> Result<LieAlgebra> {
        let entries = self
            .brackets
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let c = parse_rational(&b.coeff).map_err(|e| Error::Parse(format!("lie_algebra.brackets[{i}].coeff: {e}")))?;
                Ok((b.left, b.right, b.output, c))
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::new(self.labels.clone(), &entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDescriptor {
    pub schema_version: u32,
    pub name: String,
    pub boundary: LinfJson,
    pub conditions: Vec<ConditionJson>,
    pub interval: IntervalJson,
    /// Gauge algebra for the Lie-theoretic examples, when the boundary comes from one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<LieJson>,
}

/// A boundary condition with parsed coefficients, not yet validated.
#[derive(Debug, Clone)]
pub struct ConditionData {
    pub name: String,
    pub l: Vec<Vec<Scalar>>,
    pub l_prime: Vec<Vec<Scalar>>,
}

/// A descriptor with every number parsed. Structural checks are left to the suites.
#[derive(Debug, Clone)]
pub struct ParsedSystem {
    pub name: String,
    pub boundary: CyclicLInfinity,
    pub conditions: Vec<ConditionData>,
    pub mesh: CellMesh,
    pub poly_cap: usize,
    pub lie: Option<LieAlgebra>,
}

fn parse_vectors(vs: &[Vec<String>], at: &str, dim: usize) -> Result<Vec<Vec<Scalar>>> {
    vs.iter()
        .enumerate()
        .map(|(i, v)| {
            if v.len() != dim {
                return Err(Error::InvalidInput(format!("{at}[{i}]: {} coordinates, expected {dim}", v.len())));
            }
            v.iter()
                .enumerate()
                .map(|(j, s)| parse_rational(s).map_err(|e| Error::Parse(format!("{at}[{i}][{j}]: {e}"))))
                .collect()
        })
        .collect()
}

impl SystemDescriptor {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptors serialize")
    }

    pub fn new(
        name: &str,
        boundary: &CyclicLInfinity,
        conditions: &[(&str, &[Vec<Scalar>], &[Vec<Scalar>])],
        mesh: &CellMesh,
        poly_cap: usize,
        lie: Option<&LieAlgebra>,
    ) -> Self {
        let fmt = |vs: &[Vec<Scalar>]| vs.iter().map(|v| v.iter().map(format_rational).collect()).collect();
        SystemDescriptor {
            schema_version: DESCRIPTOR_SCHEMA_VERSION,
            name: name.into(),
            boundary: boundary.to_json(),
            conditions: conditions
                .iter()
                .map(|(n, l, lp)| ConditionJson { name: (*n).into(), l: fmt(l), l_prime: fmt(lp) })
                .collect(),
            interval: IntervalJson { breakpoints: mesh.breakpoints().iter().map(format_rational).collect(), poly_cap },
            lie_algebra: lie.map(LieJson::from_lie),
        }
    }

    pub fn parse(&self) -> Result<ParsedSystem> {
        if self.schema_version != DESCRIPTOR_SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!("schema_version {} is not supported", self.schema_version)));
        }
        let boundary = CyclicLInfinity::from_json(&self.boundary).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("boundary.{m}")),
            other => Error::InvalidInput(format!("boundary: {other}")),
        })?;
        let n = boundary.dim();
        let mut conditions = Vec::new();
        for (i, c) in self.conditions.iter().enumerate() {
            conditions.push(ConditionData {
                name: c.name.clone(),
                l: parse_vectors(&c.l, &format!("conditions[{i}].l"), n)?,
                l_prime: parse_vectors(&c.l_prime, &format!("conditions[{i}].l_prime"), n)?,
            });
        }
        let mut names: Vec<&str> = self.conditions.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("conditions: names must be distinct".into()));
        }
        let breakpoints = self
            .interval
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, s)| parse_rational(s).map_err(|e| Error::Parse(format!("interval.breakpoints[{i}]: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let mesh = CellMesh::new(breakpoints).map_err(|e| Error::InvalidInput(format!("interval.breakpoints: {e}")))?;
        if self.interval.poly_cap == 0 {
            return Err(Error::InvalidInput("interval.poly_cap: must be positive".into()));
        }
        let lie = self
            .lie_algebra
            .as_ref()
            .map(|l| l.build().map_err(|e| Error::InvalidInput(format!("lie_algebra: {e}"))))
            .transpose()?;
        Ok(ParsedSystem { name: self.name.clone(), boundary, conditions, mesh, poly_cap: self.interval.poly_cap, lie })
    }
}

/// Pattern for a rational coefficient `p` or `p/q` with `q ≠ 0`.
pub const RATIONAL_PATTERN: &str = r"^-?[0-9]+(/0*[1-9][0-9]*)?$";

/// JSON schema (draft 2020-12) for [`SystemDescriptor`].
pub fn descriptor_schema() -> Value {
    let rational = json!({ "type": "string", "pattern": RATIONAL_PATTERN });
    let index = json!({ "type": "integer", "minimum": 0 });
    let vectors = json!({ "type": "array", "items": { "type": "array", "items": { "$ref": "#/$defs/rational" } } });
    let arity_cases: Vec<Value> = (1..=MAX_SCHEMA_ARITY)
        .map(|k| {
            json!({
                "properties": {
                    "arity": { "const": k },
                    "entries": { "items": { "properties": { "inputs": { "minItems": k, "maxItems": k } } } }
                }
            })
        })
        .collect();
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": "https://bbk.invalid/schema/system-descriptor-1.json",
        "title": "bulk-boundary system descriptor",
        "type": "object",
        "additionalProperties": false,
        "required": ["schema_version", "name", "boundary", "conditions", "interval"],
        "properties": {
            "schema_version": { "const": DESCRIPTOR_SCHEMA_VERSION },
            "name": { "type": "string", "minLength": 1 },
            "boundary": { "$ref": "#/$defs/linf" },
            "conditions": { "type": "array", "items": { "$ref": "#/$defs/condition" } },
            "interval": {
                "type": "object",
                "additionalProperties": false,
                "required": ["breakpoints", "poly_cap"],
                "properties": {
                    "breakpoints": { "type": "array", "minItems": 2, "items": { "$ref": "#/$defs/rational" } },
                    "poly_cap": { "type": "integer", "minimum": 1 }
                }
            },
            "lie_algebra": {
                "type": "object",
                "additionalProperties": false,
                "required": ["labels", "brackets"],
                "properties": {
                    "labels": { "type": "array", "items": { "type": "string" } },
                    "brackets": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": false,
                            "required": ["left", "right", "output", "coeff"],
                            "properties": { "left": index, "right": index, "output": index, "coeff": { "$ref": "#/$defs/rational" } }
                        }
                    }
                }
            }
        },
        "$defs": {
            "rational": rational,
            "condition": {
                "type": "object",
                "additionalProperties": false,
                "required": ["name", "l", "l_prime"],
                "properties": { "name": { "type": "string", "minLength": 1 }, "l": vectors, "l_prime": vectors }
            },
            "bracket": {
                "type": "object",
                "additionalProperties": false,
                "required": ["arity", "entries"],
                "properties": {
                    "arity": { "type": "integer", "minimum": 1, "maximum": MAX_SCHEMA_ARITY },
                    "entries": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": false,
                            "required": ["inputs", "output", "coeff"],
                            "properties": {
                                "inputs": { "type": "array", "items": index },
                                "output": index,
                                "coeff": { "$ref": "#/$defs/rational" }
                            }
                        }
                    }
                },
                "oneOf": arity_cases
            },
            "linf": {
                "type": "object",
                "additionalProperties": false,
                "required": ["dim", "degrees"],
                "properties": {
                    "dim": { "type": "integer", "minimum": 0 },
                    "degrees": { "type": "array", "items": { "type": "integer" } },
                    "labels": { "type": "array", "items": { "type": "string" } },
                    "brackets": { "type": "array", "items": { "$ref": "#/$defs/bracket" } },
                    "pairing": {
                        "type": "object",
                        "additionalProperties": false,
                        "required": ["degree", "entries"],
                        "properties": {
                            "degree": { "type": "integer" },
                            "symplectic": { "type": "boolean" },
                            "entries": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "additionalProperties": false,
                                    "required": ["left", "right", "coeff"],
                                    "properties": { "left": index, "right": index, "coeff": { "$ref": "#/$defs/rational" } }
                                }
                            }
                        }
                    }
                }
            }
        }
    })
}
