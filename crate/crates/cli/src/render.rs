//! Output rendering shared by every subcommand: aligned text for humans,
//! csv with documented headers, and json whose field names match the csv
//! columns (one object per record; arrays for multi-record output).

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned, human-readable text; probabilities show fraction and percent.
    Table,
    /// Comma-separated values with a header row.
    Csv,
    /// One json object per record (an array for multi-record output).
    Json,
}

/// One typed cell of an output record.
#[derive(Debug, Clone)]
pub enum Cell {
    U64(u64),
    /// `None` renders as `inf` (human), an empty field (csv), `null` (json).
    OptU64(Option<u64>),
    F64(f64),
    /// `None` renders as `-` (human), an empty field (csv), `null` (json).
    OptF64(Option<f64>),
    /// Probability: human output appends the percent equivalent.
    Prob(f64),
    OptProb(Option<f64>),
    /// Probability flagged non-operational when the bool is false; the
    /// flag only marks human output, csv/json carry the plain value.
    FlaggedProb(f64, bool),
    Bool(bool),
    Text(String),
    /// Arbitrary-precision integer carried as decimal digits.
    Big(String),
}

/// Footnote attached to human output when a non-operational probability
/// (marked `*`) appears anywhere in the table.
const FLAG_FOOTNOTE: &str =
    "* producer's risk at a quality level of less than one whole defective in the lot";

fn percent(p: f64) -> String {
    let pct = p * 100.0;
    if pct != 0.0 && pct.abs() < 1.0 {
        format!("{pct:.3} %")
    } else {
        format!("{pct:.2} %")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

impl Cell {
    fn human(&self) -> String {
        match self {
            Cell::U64(v) => v.to_string(),
            Cell::OptU64(Some(v)) => v.to_string(),
            Cell::OptU64(None) => "inf".into(),
            Cell::F64(v) => format!("{v}"),
            Cell::OptF64(Some(v)) => format!("{v}"),
            Cell::OptF64(None) => "-".into(),
            Cell::Prob(p) => format!("{p:.6} ({})", percent(*p)),
            Cell::OptProb(Some(p)) => format!("{p:.6} ({})", percent(*p)),
            Cell::OptProb(None) => "-".into(),
            Cell::FlaggedProb(p, operational) => {
                let base = format!("{p:.6} ({})", percent(*p));
                if *operational {
                    base
                } else {
                    format!("{base} *")
                }
            }
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Big(digits) => digits.clone(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::U64(v) => v.to_string(),
            Cell::OptU64(Some(v)) => v.to_string(),
            Cell::OptU64(None) => String::new(),
            Cell::F64(v) | Cell::Prob(v) | Cell::FlaggedProb(v, _) => format!("{v}"),
            Cell::OptF64(Some(v)) | Cell::OptProb(Some(v)) => format!("{v}"),
            Cell::OptF64(None) | Cell::OptProb(None) => String::new(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => csv_field(s),
            Cell::Big(digits) => digits.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::U64(v) => Value::from(*v),
            Cell::OptU64(Some(v)) => Value::from(*v),
            Cell::OptU64(None) => Value::Null,
            Cell::F64(v) | Cell::Prob(v) | Cell::FlaggedProb(v, _) => Value::from(*v),
            Cell::OptF64(Some(v)) | Cell::OptProb(Some(v)) => Value::from(*v),
            Cell::OptF64(None) | Cell::OptProb(None) => Value::Null,
            Cell::Bool(b) => Value::from(*b),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Big(digits) => Value::from(digits.as_str()),
        }
    }

    fn flagged(&self) -> bool {
        matches!(self, Cell::FlaggedProb(_, false))
    }
}

/// A rectangular result: column headers plus typed rows. `single` marks
/// one-record results, which json renders as a bare object.
pub struct Records {
    pub headers: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    pub single: bool,
}

impl Records {
    pub fn multi(headers: &'static [&'static str], rows: Vec<Vec<Cell>>) -> Self {
        Records {
            headers,
            rows,
            single: false,
        }
    }

    pub fn one(headers: &'static [&'static str], row: Vec<Cell>) -> Self {
        Records {
            headers,
            rows: vec![row],
            single: true,
        }
    }
}

/// Renders the records in the requested format, with a trailing newline.
pub fn render(format: OutputFormat, records: &Records) -> String {
    match format {
        OutputFormat::Table => render_table(records),
        OutputFormat::Csv => render_csv(records),
        OutputFormat::Json => render_json(records),
    }
}

fn render_table(records: &Records) -> String {
    let header_cells: Vec<String> = records.headers.iter().map(|h| h.to_string()).collect();
    let rows: Vec<Vec<String>> = records
        .rows
        .iter()
        .map(|row| row.iter().map(Cell::human).collect())
        .collect();
    let cols = records.headers.len();
    let mut widths: Vec<usize> = header_cells.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let emit_row = |out: &mut String, cells: &[String]| {
        let mut line = String::new();
        for i in 0..cols {
            if i > 0 {
                line.push_str("  ");
            }
            let cell = &cells[i];
            let pad = widths[i] - cell.chars().count();
            // Right-align numbers; the last column may run ragged.
            line.push_str(&" ".repeat(pad));
            line.push_str(cell);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    emit_row(&mut out, &header_cells);
    for row in &rows {
        emit_row(&mut out, row);
    }
    if records
        .rows
        .iter()
        .any(|row| row.iter().any(Cell::flagged))
    {
        out.push_str(FLAG_FOOTNOTE);
        out.push('\n');
    }
    out
}

fn render_csv(records: &Records) -> String {
    let mut out = records.headers.join(",");
    out.push('\n');
    for row in &records.rows {
        let line: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn render_json(records: &Records) -> String {
    let object = |row: &Vec<Cell>| -> Value {
        let mut map = Map::new();
        for (key, cell) in records.headers.iter().zip(row) {
            map.insert((*key).to_owned(), cell.json());
        }
        Value::Object(map)
    };
    let value = if records.single {
        object(&records.rows[0])
    } else {
        Value::Array(records.rows.iter().map(object).collect())
    };
    let mut out = serde_json::to_string_pretty(&value).expect("json rendering cannot fail");
    out.push('\n');
    out
}
