//! Line-oriented specification documents for the CLI: `key = value` pairs
//! with `#` comments. Canonicalized documents round-trip byte-identically
//! through parse-then-print.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SpecDocument {
    pub field: String,
    pub construction: Option<String>,
    /// Form and base point for Clifford commands.
    pub form: Option<String>,
    pub base_point: Option<String>,
    pub seed: u64,
    pub budget_enumeration: u64,
    pub budget_samples: usize,
    pub commands: Vec<String>,
}

impl Default for SpecDocument {
    fn default() -> Self {
        SpecDocument {
            field: "Q".into(),
            construction: None,
            form: None,
            base_point: None,
            seed: 0,
            budget_enumeration: crate::quadforms::DEFAULT_BUDGET,
            budget_samples: 100,
            commands: vec![],
        }
    }
}

pub const KNOWN_COMMANDS: [&str; 7] =
    ["build", "verify", "invariants", "homogeneity", "clifford", "valuation", "cascade"];

pub fn parse_spec(text: &str) -> Result<SpecDocument> {
    let mut doc = SpecDocument::default();
    let mut saw_field = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(Error::ParseError {
                line: lineno + 1,
                col: 1,
                msg: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = line[..eq].trim();
        let value = line[eq + 1..].trim().to_string();
        let bad_int = |msg: &str| Error::ParseError {
            line: lineno + 1,
            col: eq + 2,
            msg: msg.to_string(),
        };
        match key {
            "field" => {
                // validate eagerly so bad descriptors carry a position
                crate::fields::Field::parse(&value).map_err(|e| Error::ParseError {
                    line: lineno + 1,
                    col: eq + 2,
                    msg: e.to_string(),
                })?;
                doc.field = value;
                saw_field = true;
            }
            "construction" => doc.construction = Some(value),
            "q" => doc.form = Some(value),
            "e" => doc.base_point = Some(value),
            "seed" => doc.seed = value.parse().map_err(|_| bad_int("bad seed"))?,
            "budget.enumeration" => {
                doc.budget_enumeration = value.parse().map_err(|_| bad_int("bad budget"))?
            }
            "budget.samples" => {
                doc.budget_samples = value.parse().map_err(|_| bad_int("bad sample count"))?
            }
            "command" => {
                if !KNOWN_COMMANDS.contains(&value.as_str()) {
                    return Err(Error::ParseError {
                        line: lineno + 1,
                        col: eq + 2,
                        msg: format!(
                            "unknown command `{value}` (expected one of {})",
                            KNOWN_COMMANDS.join(", ")
                        ),
                    });
                }
                doc.commands.push(value);
            }
            "commands" => {
                for c in value.split(',').map(str::trim) {
                    if !KNOWN_COMMANDS.contains(&c) {
                        return Err(Error::ParseError {
                            line: lineno + 1,
                            col: eq + 2,
                            msg: format!("unknown command `{c}`"),
                        });
                    }
                    doc.commands.push(c.to_string());
                }
            }
            other => {
                return Err(Error::ParseError {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    if !saw_field {
        return Err(Error::parse("document is missing a `field =` line"));
    }
    Ok(doc)
}

/// Canonical printed form; `parse_spec(canonical_text(d)) == d`.
pub fn canonical_text(doc: &SpecDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("field = {}\n", doc.field));
    if let Some(c) = &doc.construction {
        out.push_str(&format!("construction = {c}\n"));
    }
    if let Some(q) = &doc.form {
        out.push_str(&format!("q = {q}\n"));
    }
    if let Some(e) = &doc.base_point {
        out.push_str(&format!("e = {e}\n"));
    }
    out.push_str(&format!("seed = {}\n", doc.seed));
    out.push_str(&format!("budget.enumeration = {}\n", doc.budget_enumeration));
    out.push_str(&format!("budget.samples = {}\n", doc.budget_samples));
    for c in &doc.commands {
        out.push_str(&format!("command = {c}\n"));
    }
    out
}
