//! Output plumbing: every subcommand builds both a human rendering and a
//! JSON value, and the context decides which one reaches stdout.

use serde_json::Value;

pub struct Ctx {
    pub json: bool,
    pub seed: u64,
}

impl Ctx {
    pub fn emit(&self, lines: Vec<String>, json: Value) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("reports serialize")
            );
        } else {
            for line in lines {
                println!("{line}");
            }
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns, two spaces apart, no trailing padding.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let render = |cells: Vec<&str>| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![render(headers.to_vec())];
    for row in rows {
        out.push(render(row.iter().map(String::as_str).collect()));
    }
    out
}
