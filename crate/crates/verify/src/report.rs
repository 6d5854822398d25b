//! JSON encodings shared by session runs and suite reports.

use mfk_core::kclass::{KClass, Verdict};
use mfk_core::module::{LaurentPolynomial, Length, PresentedModule};
use mfk_core::Q;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "mfk-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn integer(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// `{"low": k, "coeffs": [...]}`, lowest degree first.
pub fn laurent(p: &LaurentPolynomial) -> Value {
    json!({ "low": p.low(), "coeffs": p.coeffs().iter().map(integer).collect::<Vec<_>>() })
}

pub fn class(c: &KClass<Q>) -> Value {
    json!({
        "numerator": c.numerator().map(laurent),
        "weights": c.series().map(|s| s.weights().to_vec()),
        "polynomial": c.polynomial().as_ref().map(laurent),
        "length": c.length(),
    })
}

pub fn verdict(v: &Verdict<Q>) -> Value {
    json!({ "lhs": class(&v.lhs), "rhs": class(&v.rhs), "holds": v.holds() })
}

pub fn module(m: &PresentedModule<Q>) -> Value {
    let series = m.hilbert_series().ok();
    json!({
        "presentation": crate::session::echo_module(m),
        "numerator": series.as_ref().map(|s| laurent(s.numerator())),
        "length": match m.length() {
            Length::Finite(n) => json!(n),
            Length::Infinite => Value::Null,
        },
    })
}

/// One checked instance of a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub index: usize,
    pub input: String,
    pub outputs: Value,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub order: String,
    pub passed: usize,
    pub failed: usize,
    pub instances: Vec<Record>,
}

impl Report {
    pub fn new(suite: &str, seed: u64, order: &str, instances: Vec<Record>) -> Self {
        let passed = instances.iter().filter(|r| r.verdict).count();
        Report {
            schema: SCHEMA,
            tool: "mfk",
            version: VERSION,
            suite: suite.to_string(),
            seed,
            count: instances.len(),
            order: order.to_string(),
            failed: instances.len() - passed,
            passed,
            instances,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} seed {} order {}: {}/{} passed\n", self.suite, self.seed, self.order, self.passed, self.count);
        for r in &self.instances {
            let status = if r.verdict { "ok" } else { "FAIL" };
            out.push_str(&format!("  [{status}] #{}", r.index));
            if let Some(e) = &r.error {
                out.push_str(&format!(" error: {e}"));
            }
            if let Some(ms) = r.elapsed_ms {
                out.push_str(&format!(" ({ms:.1} ms)"));
            }
            out.push('\n');
        }
        out
    }
}
