use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

pub const REPORT_SCHEMA: &str = "cpl.verification";
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_owned(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Row {
    pub label: String,
    /// Row-specific data (decomposition, computed values, residuals).
    pub data: Json,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl Row {
    pub fn new(label: String, data: Json, checks: Vec<Check>, notes: Vec<String>) -> Row {
        let pass = checks.iter().all(|c| c.pass);
        Row {
            label,
            data,
            checks,
            notes,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub schema: String,
    pub schema_version: u32,
    pub command: String,
    pub config: Json,
    pub grid: Json,
    pub rows: Vec<Row>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(command: &str, config: Json, grid: Json, rows: Vec<Row>) -> VerificationReport {
        let pass = rows.iter().all(|r| r.pass);
        VerificationReport {
            schema: REPORT_SCHEMA.to_owned(),
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_owned(),
            config,
            grid,
            rows,
            pass,
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let width = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
        for row in &self.rows {
            let checks: Vec<String> = row
                .checks
                .iter()
                .map(|c| format!("{}:{}", c.name, if c.pass { "ok" } else { "FAIL" }))
                .collect();
            out.push_str(&format!(
                "{:width$}  {}  {}\n",
                row.label,
                if row.pass { "PASS" } else { "FAIL" },
                checks.join(" ")
            ));
            for c in row.checks.iter().filter(|c| !c.pass) {
                out.push_str(&format!("{:width$}    {}: {}\n", "", c.name, c.detail));
            }
            for n in &row.notes {
                out.push_str(&format!("{:width$}    note: {n}\n", ""));
            }
        }
        out.push_str(&format!(
            "{}: {} of {} rows pass\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.rows.iter().filter(|r| r.pass).count(),
            self.rows.len()
        ));
        out
    }
}
