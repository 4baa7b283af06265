//! JSON report envelope and the small serializers shared by the commands.

use serde::Serialize;
use serde_json::{json, Value};

use hypersurf_core::{BettiTable, GradedModule, Matrix, Ring, Verdict};

pub const TOOL: &str = "hypersurf";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// No timings: two runs on the same input must serialize identically.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config_digest: String,
    pub seed: u64,
    pub results: Vec<Value>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(command: String, config_digest: String, seed: u64, results: Vec<Value>, verdict: Verdict) -> Self {
        Self { tool: TOOL, version: VERSION, command, config_digest, seed, results, verdict }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are plain data");
        s.push('\n');
        s
    }
}

pub fn matrix_json(ring: &Ring, m: &Matrix) -> Value {
    json!({
        "rows": m.to_rows(ring.base()),
        "row_degrees": m.row_degrees(),
        "col_degrees": m.col_degrees(),
    })
}

pub fn module_json(m: &GradedModule) -> Value {
    let mm = m.minimal_presentation();
    json!({
        "generator_degrees": mm.generator_degrees(),
        "presentation": matrix_json(m.ring(), mm.presentation()),
    })
}

pub fn betti_json(b: &BettiTable) -> Value {
    let entries: Vec<Value> = b
        .entries()
        .iter()
        .map(|(&(i, j), &rank)| json!({ "i": i, "degree": j, "rank": rank }))
        .collect();
    json!({ "totals": b.totals(), "entries": entries })
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values are plain data")
}
