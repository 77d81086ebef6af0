//! Deterministic structured reports: line-oriented `key = value` text with
//! nested sections, or JSON. The report digest covers everything except the
//! timing section, so identical (document, seed) pairs produce identical
//! digests across runs.

use serde_json::json;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryClass {
    /// Matches the expected outcome.
    Ok,
    /// A verdict or check failed.
    Failed,
    /// Informational, no expectation attached.
    Info,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub input_digest: String,
    entries: Vec<(String, String, EntryClass)>,
    certificates: Vec<String>,
    timings_ms: Vec<(String, u128)>,
}

impl Report {
    pub fn new(input_text: &str) -> Report {
        Report {
            input_digest: digest_hex(input_text.as_bytes()),
            entries: vec![],
            certificates: vec![],
            timings_ms: vec![],
        }
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl ToString, class: EntryClass) {
        self.entries.push((key.into(), value.to_string(), class));
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl ToString) {
        self.put(key, value, EntryClass::Info);
    }

    pub fn check(&mut self, key: impl Into<String>, ok: bool) {
        self.put(key, ok, if ok { EntryClass::Ok } else { EntryClass::Failed });
    }

    pub fn certificate(&mut self, text: impl Into<String>) {
        self.certificates.push(text.into());
    }

    pub fn timing(&mut self, label: impl Into<String>, ms: u128) {
        self.timings_ms.push((label.into(), ms));
    }

    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|(_, _, c)| *c != EntryClass::Failed)
    }

    fn sorted_entries(&self) -> Vec<&(String, String, EntryClass)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Digest over the canonical verdicts and certificates (timings and the
    /// tool version are excluded).
    pub fn report_digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.input_digest.as_bytes());
        for (k, v, c) in self.sorted_entries() {
            h.update(k.as_bytes());
            h.update(b"=");
            h.update(v.as_bytes());
            h.update(match c {
                EntryClass::Ok => b"+",
                EntryClass::Failed => b"-",
                EntryClass::Info => b".",
            });
        }
        for c in &self.certificates {
            h.update(c.as_bytes());
        }
        let out = h.finalize();
        format!("sha256:{}", hex(&out))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("tool_version = {TOOL_VERSION}\n"));
        out.push_str(&format!("input_digest = {}\n", self.input_digest));
        out.push_str(&format!("report_digest = {}\n", self.report_digest()));
        out.push_str("\n[verdicts]\n");
        for (k, v, c) in self.sorted_entries() {
            let mark = match c {
                EntryClass::Ok => "ok",
                EntryClass::Failed => "FAILED",
                EntryClass::Info => "info",
            };
            out.push_str(&format!("{k} = {v}  ({mark})\n"));
        }
        if !self.certificates.is_empty() {
            out.push_str("\n[certificates]\n");
            for c in &self.certificates {
                out.push_str(&format!("- {c}\n"));
            }
        }
        if !self.timings_ms.is_empty() {
            out.push_str("\n[timings]\n");
            for (k, ms) in &self.timings_ms {
                out.push_str(&format!("{k} = {ms} ms\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let verdicts: Vec<_> = self
            .sorted_entries()
            .iter()
            .map(|(k, v, c)| {
                json!({
                    "key": k,
                    "value": v,
                    "class": match c {
                        EntryClass::Ok => "ok",
                        EntryClass::Failed => "failed",
                        EntryClass::Info => "info",
                    },
                })
            })
            .collect();
        let doc = json!({
            "tool_version": TOOL_VERSION,
            "input_digest": self.input_digest,
            "report_digest": self.report_digest(),
            "verdicts": verdicts,
            "certificates": self.certificates,
            "timings_ms": self.timings_ms.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&doc).expect("report serialization")
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn digest_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("sha256:{}", hex(&h.finalize()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_timings_and_order_is_stable() {
        let mut a = Report::new("doc");
        a.check("z", true);
        a.info("a", "1");
        a.timing("x", 100);
        let mut b = Report::new("doc");
        b.info("a", "1");
        b.check("z", true);
        b.timing("x", 999);
        assert_eq!(a.report_digest(), b.report_digest());
        assert!(a.to_text().contains("report_digest"));
    }
}
