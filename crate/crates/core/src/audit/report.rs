use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
    /// A computed value with no pass/fail criterion attached.
    Reported,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub paper_anchor: String,
    pub status: Status,
    pub payload: Value,
}

impl ClaimResult {
    /// `verified` or `failed` by `ok`; a failure must name its witness.
    pub fn check(id: impl Into<String>, anchor: &str, ok: bool, payload: Value, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::verified(id, anchor, payload)
        } else {
            Self::failed(id, anchor, payload, witness())
        }
    }

    pub fn verified(id: impl Into<String>, anchor: &str, payload: Value) -> Self {
        ClaimResult {
            claim_id: id.into(),
            paper_anchor: anchor.to_string(),
            status: Status::Verified,
            payload,
        }
    }

    /// The witness (a canonical polynomial or exact rational) is stored under `payload.witness`.
    pub fn failed(id: impl Into<String>, anchor: &str, payload: Value, witness: String) -> Self {
        let payload = match payload {
            Value::Object(mut map) => {
                map.insert("witness".into(), Value::String(witness));
                Value::Object(map)
            }
            other => json!({ "value": other, "witness": witness }),
        };
        ClaimResult {
            claim_id: id.into(),
            paper_anchor: anchor.to_string(),
            status: Status::Failed,
            payload,
        }
    }

    pub fn reported(id: impl Into<String>, anchor: &str, payload: Value) -> Self {
        ClaimResult {
            claim_id: id.into(),
            paper_anchor: anchor.to_string(),
            status: Status::Reported,
            payload,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub tool_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<ClaimResult>,
    pub elapsed_ms: u64,
}

impl AuditReport {
    pub fn new(command: impl Into<String>, parameters: BTreeMap<String, String>) -> Self {
        AuditReport {
            tool_version: TOOL_VERSION.to_string(),
            command: command.into(),
            parameters,
            results: Vec::new(),
            elapsed_ms: 0,
        }
    }

    /// Adds results and keeps them sorted by claim id.
    pub fn extend(&mut self, results: impl IntoIterator<Item = ClaimResult>) {
        self.results.extend(results);
        self.results.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Failed) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without its timing, for byte-level determinism checks.
    pub fn to_json_untimed(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("elapsed_ms");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} verified, {} failed, {} reported ({} ms)",
            self.command,
            self.count(Status::Verified),
            self.count(Status::Failed),
            self.count(Status::Reported),
            self.elapsed_ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_carry_witnesses_and_results_sort() {
        let mut r = AuditReport::new("x", BTreeMap::new());
        r.extend([
            ClaimResult::verified("b", "anchor", json!({})),
            ClaimResult::failed("a", "anchor", json!({"k": 1}), "z1^2".into()),
            ClaimResult::failed("c", "anchor", json!(3), "1/2".into()),
        ]);
        let ids: Vec<_> = r.results.iter().map(|c| c.claim_id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert_eq!(r.results[0].payload["witness"], "z1^2");
        assert_eq!(r.results[2].payload["value"], 3);
        assert_eq!(r.exit_code(), 1);
        assert!(!r.to_json_untimed().contains("elapsed_ms"));
    }
}
