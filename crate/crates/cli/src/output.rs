//! Table emission in csv, json and text.

use serde::Serialize;

use crate::args::Format;
use crate::Failure;

/// A cell of an output table.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    /// 17 significant digits in scientific notation, independent of locale.
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Num(x) => x.to_string(),
            Cell::Empty => "-".into(),
            other => other.csv(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as u64)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn csv(&self) -> Result<Vec<u8>, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.into_inner().map_err(|e| Failure::Io(e.to_string()))
    }

    pub fn text(&self) -> Vec<u8> {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = self
            .header
            .iter()
            .enumerate()
            .map(|(i, h)| cells.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
            .collect();
        let line = |vals: Vec<&str>| {
            let padded: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.header.clone());
        for r in &cells {
            out += &line(r.iter().map(String::as_str).collect());
        }
        out.into_bytes()
    }
}

/// Key/value listing for single-record results.
pub fn record_text(header: &[&str], row: &[Cell]) -> Vec<u8> {
    let width = header.iter().map(|h| h.len()).max().unwrap_or(0);
    header.iter().zip(row).map(|(h, c)| format!("{h:<width$}  {}\n", c.text())).collect::<String>().into_bytes()
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn render_single<T: Serialize>(
    format: Format,
    header: &[&'static str],
    row: Vec<Cell>,
    value: &T,
) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => json(value),
        Format::Csv => Table { header: header.to_vec(), rows: vec![row] }.csv(),
        Format::Text => Ok(record_text(header, &row)),
    }
}
