//! Report emission: text or machine-readable JSON with a stable schema.

use serde_json::{json, Value};

use crate::suites::SuiteReport;

pub fn report_json(r: &SuiteReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(
            |(inputs, expected, got)| json!({ "inputs": inputs, "expected": expected, "got": got }),
        )
        .collect();
    let mut obj = json!({
        "suite": r.suite,
        "seed": r.seed,
        "cases": r.cases,
        "passed": r.passed,
        "failed": r.failed,
        "failures": failures,
        "millis": r.millis as u64,
    });
    if r.diagnostic {
        obj["diagnostic"] = json!(true);
        obj["lines"] = json!(r.lines);
    }
    obj
}

pub fn report_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    if r.diagnostic {
        out.push_str(&format!(
            "suite {} (diagnostic, {} ms)\n",
            r.suite, r.millis
        ));
        for line in &r.lines {
            out.push_str(&format!("  {}\n", line));
        }
    } else {
        out.push_str(&format!(
            "suite {}: {}/{} passed (seed {}, {} ms)\n",
            r.suite, r.passed, r.cases, r.seed, r.millis
        ));
        for (inputs, expected, got) in &r.failures {
            out.push_str(&format!(
                "  FAIL inputs: {}\n       expected: {}\n       got: {}\n",
                inputs, expected, got
            ));
        }
    }
    out
}
