//! Machine-readable verification reports.
//!
//! A report is a list of named checks plus the metadata needed to reproduce
//! the run. Serialization is deterministic: checks are sorted by name and no
//! timing information is included, so the same seed yields byte-identical
//! output.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Stable identifier of the property being checked.
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(id: &str, name: &str, pass: bool) -> Self {
        Check {
            name: name.to_string(),
            id: id.to_string(),
            pass,
            detail: None,
        }
    }

    pub fn with_detail(id: &str, name: &str, pass: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            id: id.to_string(),
            pass,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(
        command: &str,
        case: Option<String>,
        seed: Option<u64>,
        mut checks: Vec<Check>,
    ) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().all(|c| c.pass);
        Report {
            command: command.to_string(),
            case,
            seed,
            trials: None,
            samples: None,
            checks,
            pass,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, for terminal output.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "ok" } else { "FAIL" };
            out.push_str(&format!("{status:4}  {}", c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {}\n",
            self.command,
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_sort_checks_and_aggregate() {
        let r = Report::new(
            "verify",
            Some("E8:a8".into()),
            Some(42),
            vec![
                Check::new("b", "beta", true),
                Check::new("a", "alpha", false),
            ],
        );
        assert!(!r.pass);
        assert_eq!(r.checks[0].name, "alpha");
        let s = r.to_json_string();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back.checks.len(), 2);
        assert_eq!(back.seed, Some(42));
        // Serialization is reproducible.
        assert_eq!(s, r.to_json_string());
    }
}
