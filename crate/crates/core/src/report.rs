//! The document every command emits.

use serde::{Deserialize, Serialize};

use crate::sweep::Verdict;

/// Command output. Timing is left out so that equal inputs give
/// byte-identical documents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: Vec<String>,
    pub config: serde_json::Value,
    pub items: Vec<serde_json::Value>,
    pub summary: serde_json::Value,
    pub verdict: Verdict,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, config: impl Serialize) -> Self {
        ReportDocument {
            command,
            config: serde_json::to_value(config).expect("config serializes"),
            items: Vec::new(),
            summary: serde_json::Value::Null,
            verdict: Verdict::Pass,
        }
    }

    pub fn push(&mut self, item: impl Serialize) {
        self.items.push(serde_json::to_value(item).expect("item serializes"));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
