//! Pass/fail tables for the verification suites.
//!
//! One line per sub-check: `<id> PASS|FAIL <seconds>s`, then a tab and a
//! counterexample polynomial when one is attached. Lines starting with `# `
//! carry notes that are not checks.

use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub id: String,
    pub passed: bool,
    pub elapsed: Duration,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportTable {
    pub rows: Vec<ReportRow>,
    pub notes: Vec<String>,
}

impl ReportTable {
    pub fn new() -> ReportTable {
        ReportTable::default()
    }

    /// Runs `check` and records its verdict. `Err` carries a counterexample.
    pub fn run(&mut self, id: impl Into<String>, check: impl FnOnce() -> Result<(), String>) -> bool {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let passed = outcome.is_ok();
        self.rows.push(ReportRow {
            id: id.into(),
            passed,
            elapsed,
            counterexample: outcome.err(),
        });
        passed
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn row(&self, id: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn extend(&mut self, other: ReportTable) {
        self.rows.extend(other.rows);
        for note in other.notes {
            if !self.notes.contains(&note) {
                self.notes.push(note);
            }
        }
    }

    /// Prefixes every id, e.g. with the field the checks ran over.
    pub fn prefixed(mut self, prefix: &str) -> ReportTable {
        for r in &mut self.rows {
            r.id = format!("{prefix}{}", r.id);
        }
        self
    }

    pub fn parse(text: &str) -> Result<ReportTable, String> {
        let mut table = ReportTable::new();
        for (n, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            if let Some(note) = line.strip_prefix("# ") {
                table.notes.push(note.to_string());
                continue;
            }
            let (head, counterexample) = match line.split_once('\t') {
                Some((h, c)) => (h, Some(c.to_string())),
                None => (line, None),
            };
            let fields: Vec<&str> = head.split(' ').collect();
            let [id, verdict, secs] = fields[..] else {
                return Err(format!("line {}: expected `<id> PASS|FAIL <seconds>s`", n + 1));
            };
            let passed = match verdict {
                "PASS" => true,
                "FAIL" => false,
                other => return Err(format!("line {}: unknown verdict {other:?}", n + 1)),
            };
            let elapsed = secs
                .strip_suffix('s')
                .and_then(|s| s.parse::<f64>().ok())
                .filter(|s| *s >= 0.0)
                .map(Duration::from_secs_f64)
                .ok_or_else(|| format!("line {}: malformed elapsed time {secs:?}", n + 1))?;
            table.rows.push(ReportRow {
                id: id.to_string(),
                passed,
                elapsed,
                counterexample,
            });
        }
        Ok(table)
    }
}

impl fmt::Display for ReportTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for note in &self.notes {
            writeln!(f, "# {note}")?;
        }
        for r in &self.rows {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            write!(f, "{} {verdict} {:.6}s", r.id, r.elapsed.as_secs_f64())?;
            if let Some(c) = &r.counterexample {
                write!(f, "\t{}", c.replace(['\n', '\t'], " "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialization_round_trip() {
        let mut t = ReportTable::new();
        t.run("ok", || Ok(()));
        t.run("bad", || Err("x1 - 1".into()));
        t.note("informational");
        let text = t.to_string();
        assert!(text.contains("\nok PASS "));
        assert!(text.contains("bad FAIL "));
        assert!(text.ends_with("s\tx1 - 1\n"));
        let back = ReportTable::parse(&text).unwrap();
        assert_eq!(back.to_string(), text);
        assert!(!back.all_passed());
        assert_eq!(back.row("bad").unwrap().counterexample.as_deref(), Some("x1 - 1"));
    }
}
