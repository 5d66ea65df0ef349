//! Command reports: human-readable lines followed by a JSON section that
//! reads back with [`Report::parse`].

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graded::GradedDims;
use crate::resolution::ValidRange;

pub const MACHINE_MARKER: &str = "--- machine-readable ---";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verdict: Option<bool>,
    #[serde(skip)]
    pub human: Vec<String>,
    pub data: Value,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("no machine-readable section")]
    MissingSection,
    #[error("machine-readable section: {0}")]
    Json(#[from] serde_json::Error),
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            verdict: None,
            human: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.human.push(text.into());
        self
    }

    pub fn verdict(&mut self, v: bool) -> &mut Self {
        self.verdict = Some(v);
        self
    }

    pub fn data(&mut self, data: impl Serialize) -> &mut Self {
        self.data = serde_json::to_value(data).expect("report data serializes");
        self
    }

    /// Human lines, the marker, then pretty JSON. Same bytes for equal
    /// reports.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "$ {}", self.command.join(" "));
        for l in &self.human {
            let _ = writeln!(s, "{l}");
        }
        let _ = writeln!(s, "{MACHINE_MARKER}");
        let json = serde_json::to_string_pretty(self).expect("report serializes");
        let _ = writeln!(s, "{json}");
        s
    }

    /// Reads the machine section of rendered text. Human lines are not
    /// recovered.
    pub fn parse(text: &str) -> Result<Report, ReportError> {
        let (_, json) = text
            .split_once(MACHINE_MARKER)
            .ok_or(ReportError::MissingSection)?;
        Ok(serde_json::from_str(json)?)
    }
}

/// Two-row table of nonzero graded dimensions.
pub fn dims_table(dims: &GradedDims) -> String {
    if dims.values().all(|&n| n == 0) {
        return "  (zero)".to_string();
    }
    let cells: Vec<(String, String)> = dims
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(d, n)| (d.to_string(), n.to_string()))
        .collect();
    let width = |(a, b): &(String, String)| a.chars().count().max(b.chars().count());
    let mut top = String::from("  degree");
    let mut bottom = String::from("  dim   ");
    for c in &cells {
        let w = width(c);
        let _ = write!(top, " {:>w$}", c.0);
        let _ = write!(bottom, " {:>w$}", c.1);
    }
    format!("{top}\n{bottom}")
}

pub fn range_text(r: &ValidRange) -> String {
    let lo = r.lo.map_or("-∞".to_string(), |l| l.to_string());
    let hi = r.hi.map_or("∞".to_string(), |h| h.to_string());
    format!("[{lo}, {hi}]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_section_round_trips() {
        let mut r = Report::new(vec!["rhom".into(), "--window".into(), "4".into()]);
        let dims: GradedDims = [(-3, 1), (0, 2)].into_iter().collect();
        r.line("cohomology")
            .line(dims_table(&dims))
            .verdict(true)
            .data(&dims);
        let text = r.render();
        let back = Report::parse(&text).unwrap();
        assert_eq!(back.command, r.command);
        assert_eq!(back.verdict, Some(true));
        assert_eq!(back.data, r.data);
        let again: GradedDims = serde_json::from_value(back.data.clone()).unwrap();
        assert_eq!(again, dims);
        assert_eq!(
            Report {
                human: r.human.clone(),
                ..back
            }
            .render(),
            text
        );
        assert!(Report::parse("no section").is_err());
    }

    #[test]
    fn tables() {
        let dims: GradedDims = [(-10, 1), (2, 12)].into_iter().collect();
        assert_eq!(dims_table(&dims), "  degree -10  2\n  dim      1 12");
        assert_eq!(dims_table(&GradedDims::new()), "  (zero)");
        assert_eq!(
            range_text(&ValidRange {
                lo: Some(-2),
                hi: None
            }),
            "[-2, ∞]"
        );
    }
}
