use serde_json::{json, Value};

use crate::{CliError, Format};

/// One titled block of a table report.
#[derive(Clone, Debug, Default)]
pub struct Section {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Section {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub args: Value,
    pub result: Value,
    pub sections: Vec<Section>,
    pub dot: Option<String>,
    pub violations: usize,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({ "command": self.command, "args": self.args, "result": self.result })
    }
}

fn table(sections: &[Section]) -> String {
    let mut out = String::new();
    for (k, s) in sections.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&s.title);
        out.push('\n');
        if s.headers.is_empty() {
            continue;
        }
        let mut width: Vec<usize> = s.headers.iter().map(|h| h.chars().count()).collect();
        for row in &s.rows {
            for (i, c) in row.iter().enumerate() {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:<w$}", w = width[i]))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(&s.headers));
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
        for row in &s.rows {
            out.push_str(&line(row));
        }
    }
    out
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&report.to_json()).map_err(|e| CliError {
                code: crate::EXIT_INTERNAL,
                message: e.to_string(),
            })?;
            Ok(text + "\n")
        }
        Format::Table => Ok(table(&report.sections)),
        Format::Dot => report.dot.clone().ok_or_else(|| {
            CliError::schema(format!(
                "dot output is only available for the poset and fan commands, not {}",
                report.command
            ))
        }),
    }
}
