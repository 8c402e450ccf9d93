//! The report schema shared by `witness`, `check`, `search`, `classify`,
//! `verify` and `selftest`: `{query, status, witness?, counts, elapsed_ms}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gallai::{ColoredComplete, TargetGraph};
use serde::{Deserialize, Serialize};

pub type Tally = BTreeMap<String, u64>;

/// The arguments a report answers.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Query {
    pub command: String,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none", default)]
    pub target: Option<TargetGraph>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl Query {
    pub fn new(command: &str) -> Self {
        Query {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn target(mut self, h: &TargetGraph) -> Self {
        self.target = Some(h.clone());
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn n_max(mut self, n_max: usize) -> Self {
        self.n_max = Some(n_max);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub query: Query,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<ColoredComplete>,
    pub counts: Tally,
    /// Command-specific payload: certificates, search windows, case sets.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<serde_json::Value>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Two-column `key value` rendering.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.query.command.clone())];
        let q = &self.query;
        if let Some(h) = &q.target {
            rows.push(("H".into(), h.to_string()));
        }
        for (key, v) in [("k", q.k), ("n", q.n), ("n_max", q.n_max)] {
            if let Some(v) = v {
                rows.push((key.into(), v.to_string()));
            }
        }
        if let Some(seed) = q.seed {
            rows.push(("seed".into(), seed.to_string()));
        }
        rows.push(("status".into(), self.status.clone()));
        rows.extend(
            self.counts
                .iter()
                .map(|(key, v)| (key.clone(), v.to_string())),
        );
        if let Some(w) = &self.witness {
            rows.push(("witness".into(), gallai::to_witness_json(w)));
        }
        if let Some(serde_json::Value::Object(map)) = &self.detail {
            for (key, v) in map {
                let text = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                rows.push((key.clone(), text));
            }
        } else if let Some(v) = &self.detail {
            rows.push(("detail".into(), v.to_string()));
        }
        rows.push(("elapsed_ms".into(), self.elapsed_ms.to_string()));
        let width = rows.iter().map(|(key, _)| key.len()).max().unwrap_or(0);
        let mut s = String::new();
        for (key, v) in rows {
            writeln!(s, "{key:<width$}  {v}").expect("writing to a string");
        }
        s
    }
}
