use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Echo of the query flags, enough to re-run the command.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryEcho {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<i64>,
    pub dim: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub codims: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l0: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub list1: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub list2: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k0: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub label: String,
    pub diagrams: Option<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Maximality {
    pub invariant: String,
    pub distinct_solutions: String,
    pub real_lower_bound: String,
    pub maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEntry {
    pub solutions: String,
    pub diagram: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub command: String,
    pub query: QueryEcho,
    pub status: String,
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub breakdown: Option<Vec<Contribution>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub maximality: Option<Maximality>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_diagrams: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagrams: Option<Vec<DiagramEntry>>,
}

impl OutputRecord {
    pub fn new(
        command: &str,
        query: QueryEcho,
        status: impl ToString,
        result: impl ToString,
    ) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            query,
            status: status.to_string(),
            result: result.to_string(),
            breakdown: None,
            maximality: None,
            checks: Vec::new(),
            total_diagrams: None,
            diagrams: None,
        }
    }

    pub fn all_checks_agree(&self) -> bool {
        self.checks.iter().all(|c| c.agrees) && self.maximality.as_ref().is_none_or(|m| m.maximal)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string(self).expect("record serializes") + "\n",
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(diagrams) = &self.diagrams {
            for d in diagrams {
                let _ = writeln!(out, "{}\t{}", d.solutions, d.diagram);
            }
        }
        if let Some(breakdown) = &self.breakdown {
            for c in breakdown {
                match c.diagrams {
                    Some(n) => {
                        let _ = writeln!(out, "{n} x {}\t{}", c.value, c.label);
                    }
                    None => {
                        let _ = writeln!(out, "{}: {}", c.label, c.value);
                    }
                }
            }
        }
        if let Some(total) = self.total_diagrams {
            let _ = writeln!(out, "diagrams: {total}");
        }
        if let Some(m) = &self.maximality {
            let _ = writeln!(out, "invariant: {}", m.invariant);
            let _ = writeln!(out, "distinct_solutions: {}", m.distinct_solutions);
            let _ = writeln!(out, "real_lower_bound: {}", m.real_lower_bound);
            let _ = writeln!(out, "maximal: {}", m.maximal);
        }
        for c in &self.checks {
            let verdict = if c.agrees { "agrees" } else { "DISAGREES" };
            let _ = writeln!(out, "{}: {} ({verdict})", c.name, c.value);
        }
        let _ = writeln!(out, "status: {}", self.status);
        let _ = writeln!(out, "result: {}", self.result);
        out
    }

    fn render_csv(&self) -> String {
        let join = |v: &Option<Vec<i64>>| {
            v.as_ref()
                .map(|v| {
                    v.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default()
        };
        let opt = |v: Option<i64>| v.map(|v| v.to_string()).unwrap_or_default();
        let q = &self.query;
        format!(
            "command,degree,dim,codims,l0,list1,list2,status,result\n{},{},{},{},{},{},{},{},{}\n",
            self.command,
            opt(q.degree),
            q.dim,
            join(&q.codims),
            opt(q.l0),
            join(&q.list1),
            join(&q.list2),
            self.status,
            self.result
        )
    }
}

/// A table: header plus rows of cells.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.header.join(",") + "\n";
                for row in &self.rows {
                    out += &(row.join(",") + "\n");
                }
                out
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|i| {
                        self.rows
                            .iter()
                            .map(|r| r[i].len())
                            .chain([self.header[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}", w = *w))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.header);
                for row in &self.rows {
                    out += &line(row);
                }
                out
            }
            Format::Json => {
                let record = serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "header": self.header,
                    "rows": self.rows,
                });
                serde_json::to_string(&record).expect("table serializes") + "\n"
            }
        }
    }
}
