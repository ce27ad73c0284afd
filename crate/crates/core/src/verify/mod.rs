//! Verification suites over system descriptors, the example registry, and their reports.

pub mod descriptor;
pub mod registry;
pub mod report;
pub mod suites;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linf::DEFAULT_ARITY_BUDGET;

pub use descriptor::{descriptor_schema, ConditionData, ConditionJson, IntervalJson, LieJson, ParsedSystem, SystemDescriptor};
pub use registry::{embedded_descriptor, example_names, reference_descriptor, run_example, ExampleInfo, EXAMPLES};
pub use report::{timed, CheckRecord, Report, Status, Summary, REPORT_SCHEMA_VERSION};
pub use suites::run_descriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bv,
    Lagrangian,
    Factorization,
    P0,
    Examples,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["bv", "lagrangian", "factorization", "p0", "examples", "all"];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Bv => "bv",
            Suite::Lagrangian => "lagrangian",
            Suite::Factorization => "factorization",
            Suite::P0 => "p0",
            Suite::Examples => "examples",
            Suite::All => "all",
        }
    }

    /// Whether running `self` runs `part`.
    pub fn includes(self, part: Suite) -> bool {
        self == Suite::All || self == part
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bv" => Ok(Suite::Bv),
            "lagrangian" => Ok(Suite::Lagrangian),
            "factorization" => Ok(Suite::Factorization),
            "p0" => Ok(Suite::P0),
            "examples" => Ok(Suite::Examples),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidInput(format!("unknown suite {other:?}; expected one of {}", Suite::NAMES.join(", ")))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub suite: Suite,
    pub sym_trunc: usize,
    pub arity_budget: usize,
    /// Overrides the descriptor's polynomial-degree cap when set.
    pub poly_cap: Option<usize>,
    pub weight_cap: usize,
    pub report: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            suite: Suite::All,
            sym_trunc: 2,
            arity_budget: DEFAULT_ARITY_BUDGET,
            poly_cap: None,
            weight_cap: 1,
            report: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let caps = [("sym-trunc", Some(self.sym_trunc)), ("arity-budget", Some(self.arity_budget)), ("poly-cap", self.poly_cap), ("weight-cap", Some(self.weight_cap))];
        for (name, v) in caps {
            if v == Some(0) {
                return Err(Error::InvalidInput(format!("--{name} must be positive")));
            }
        }
        Ok(())
    }

    /// The parameters that determine a report's contents.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite.as_str(),
            "sym_trunc": self.sym_trunc,
            "arity_budget": self.arity_budget,
            "poly_cap": self.poly_cap,
            "weight_cap": self.weight_cap,
        })
    }
}
