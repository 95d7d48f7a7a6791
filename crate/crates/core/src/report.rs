//! Versioned JSON reports; the human-readable text is rendered from them.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::laws::Backend;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub status: String,
    pub passed: usize,
    pub vacuous: usize,
    pub violated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl LawReport {
    pub fn new(law: &str) -> LawReport {
        LawReport {
            law: law.to_string(),
            status: "ok".into(),
            passed: 0,
            vacuous: 0,
            violated: 0,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub backend: Backend,
    pub iterations: usize,
    pub max_size: usize,
    pub seed: u64,
    pub violations: usize,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn new(
        backend: Backend,
        iterations: usize,
        max_size: usize,
        seed: u64,
        mut laws: Vec<LawReport>,
    ) -> Self {
        for l in &mut laws {
            l.status = if l.violated == 0 { "ok" } else { "violated" }.into();
        }
        let violations = laws.iter().map(|l| l.violated).sum();
        SuiteReport {
            schema: SCHEMA,
            backend,
            iterations,
            max_size,
            seed,
            violations,
            laws,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per law, then a summary line.
    pub fn human(&self) -> String {
        let v: Value = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        for l in v["laws"].as_array().into_iter().flatten() {
            out.push_str(&format!(
                "{:<8} {:<28} passed {:>5}  vacuous {:>5}  violated {:>5}\n",
                l["status"].as_str().unwrap_or("?"),
                l["law"].as_str().unwrap_or("?"),
                l["passed"],
                l["vacuous"],
                l["violated"],
            ));
            if let Some(w) = l.get("witness") {
                out.push_str(&format!("         witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "backend {} seed {} iterations {} max-size {}: {} violation(s)\n",
            v["backend"].as_str().unwrap_or("?"),
            v["seed"],
            v["iterations"],
            v["max_size"],
            v["violations"]
        ));
        out
    }
}

/// A replay or classifier outcome: `{"schema": 1, "id": .., "status": .., "details": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema: u32,
    pub id: String,
    pub status: String,
    pub details: Value,
}

impl Verdict {
    pub fn new(id: &str, ok: bool, details: Value) -> Verdict {
        Verdict {
            schema: SCHEMA,
            id: id.into(),
            status: if ok { "pass" } else { "fail" }.into(),
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialize")
    }

    pub fn human(&self) -> String {
        let v: Value = serde_json::to_value(self).expect("verdicts serialize");
        format!(
            "{}: {}\n{}\n",
            v["id"].as_str().unwrap_or("?"),
            v["status"].as_str().unwrap_or("?"),
            serde_json::to_string_pretty(&v["details"]).unwrap_or_default()
        )
    }
}
