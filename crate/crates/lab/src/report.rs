//! The JSON record written for every run.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::stats::{ComplexWelford, Tally};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean_re: f64,
    pub mean_im: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { mean_re: value, mean_im: 0.0, stderr: 0.0 }
    }
}

impl From<&ComplexWelford> for Estimate {
    fn from(w: &ComplexWelford) -> Self {
        Self { mean_re: w.mean().re, mean_im: w.mean().im, stderr: w.stderr() }
    }
}

impl From<&Tally> for Estimate {
    fn from(t: &Tally) -> Self {
        Self { mean_re: t.rate(), mean_im: 0.0, stderr: t.stderr() }
    }
}

/// `pass` is `None` for informational runs. Experiment-specific diagnostics
/// live under `params.derived`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub params: Map<String, Value>,
    pub estimate: Estimate,
    pub pass: Option<bool>,
    pub bound: Option<f64>,
    pub n_samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub elapsed_ms: u64,
}

/// Exit code for a verdict: 2 on FAIL, 0 otherwise.
pub fn exit_code(pass: Option<bool>) -> i32 {
    if pass == Some(false) {
        2
    } else {
        0
    }
}

impl Report {
    pub fn new(experiment: &str, estimate: Estimate, n_samples: u64, seed: u64, workers: usize) -> Self {
        Self {
            experiment: experiment.to_string(),
            params: Map::new(),
            estimate,
            pass: None,
            bound: None,
            n_samples,
            seed,
            workers,
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn derived(mut self, key: &str, value: impl Into<Value>) -> Self {
        let entry = self.params.entry("derived").or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(map) = entry {
            map.insert(key.to_string(), value.into());
        }
        self
    }

    pub fn get_derived(&self, key: &str) -> Option<&Value> {
        self.params.get("derived")?.get(key)
    }

    /// Non-finite bounds are written as `null`.
    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = bound.is_finite().then_some(bound);
        self
    }

    pub fn with_pass(mut self, pass: Option<bool>) -> Self {
        self.pass = pass;
        self
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Combines optional checks: `None` if none applied, otherwise their conjunction.
pub fn all_checks(checks: &[Option<bool>]) -> Option<bool> {
    checks.iter().flatten().copied().reduce(|a, b| a && b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_keys_in_order() {
        let r = Report::new("demo", Estimate::exact(1.0), 10, 3, 2).param("n", 4).derived("x", 0.5).with_bound(f64::INFINITY);
        let json = r.to_json();
        let keys = ["experiment", "params", "estimate", "pass", "bound", "n_samples", "seed", "workers", "elapsed_ms"];
        let mut last = 0;
        for k in keys {
            let at = json.find(&format!("\"{k}\"")).unwrap();
            assert!(at >= last, "{k} out of order in {json}");
            last = at;
        }
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["bound"], Value::Null);
        assert_eq!(v["pass"], Value::Null);
        assert_eq!(v["params"]["derived"]["x"], 0.5);
        assert_eq!(v["estimate"]["mean_re"], 1.0);
    }

    #[test]
    fn nan_estimates_serialize_as_null() {
        let r = Report::new("demo", Estimate { mean_re: f64::NAN, mean_im: 0.0, stderr: f64::NAN }, 0, 0, 1);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["estimate"]["mean_re"], Value::Null);
    }

    #[test]
    fn verdicts() {
        assert_eq!(all_checks(&[]), None);
        assert_eq!(all_checks(&[None, Some(true)]), Some(true));
        assert_eq!(all_checks(&[Some(true), None, Some(false)]), Some(false));
        assert_eq!(exit_code(Some(false)), 2);
        assert_eq!(exit_code(None), 0);
        assert_eq!(exit_code(Some(true)), 0);
    }
}
