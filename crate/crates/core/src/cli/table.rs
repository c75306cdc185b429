//! Tabular datasets and their CSV/JSON encodings.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Text(_) => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_nan() => "NaN".to_string(),
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Value::from(*x),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Run metadata written alongside every dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub version: &'static str,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub tail_cutoff: f64,
    pub gamma_mode: &'static str,
    pub registry_hash: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Named scalars recorded in the header (CSV `#` lines, JSON `header`).
    pub header: Vec<(String, Cell)>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Dataset {
    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let m = &self.metadata;
        writeln!(out, "# lateral-cp {}", m.version)?;
        writeln!(
            out,
            "# rel_tol={:e} abs_tol={:e} tail_cutoff={} gamma_mode={}",
            m.rel_tol, m.abs_tol, m.tail_cutoff, m.gamma_mode
        )?;
        writeln!(out, "# registry_sha256={}", m.registry_hash)?;
        for (k, v) in &self.header {
            writeln!(out, "# {k}={}", v.csv())?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let m = &self.metadata;
        let header: Map<String, Value> = self.header.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        json!({
            "metadata": {
                "version": m.version,
                "rel_tol": m.rel_tol,
                "abs_tol": m.abs_tol,
                "tail_cutoff": m.tail_cutoff,
                "gamma_mode": m.gamma_mode,
                "registry_sha256": m.registry_hash,
            },
            "header": header,
            "columns": self.columns,
            "rows": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Dataset {
        Dataset {
            columns: vec!["x", "y", "tag"],
            rows: vec![
                vec![Cell::Num(0.1), Cell::Num(f64::NAN), "a".into()],
                vec![Cell::Num(-2.5e-21), Cell::Num(1.0), "".into()],
            ],
            header: vec![("B".into(), Cell::Num(3.0))],
            metadata: Metadata {
                version: "0.0.0",
                rel_tol: 1e-9,
                abs_tol: 0.0,
                tail_cutoff: 40.0,
                gamma_mode: "total",
                registry_hash: "abc".into(),
            },
        }
    }

    #[test]
    fn csv_round_trips_full_precision() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[3], "# B=3.0000000000000000e0");
        assert_eq!(lines[4], "x,y,tag");
        assert_eq!(lines[5], "1.0000000000000001e-1,NaN,a");
        let back: f64 = lines[6].split(',').next().unwrap().parse().unwrap();
        assert_eq!(back, -2.5e-21);
    }

    #[test]
    fn json_maps_nan_to_null() {
        let v = sample().to_json();
        assert!(v["rows"][0][1].is_null());
        assert_eq!(v["header"]["B"], 3.0);
        assert_eq!(v["metadata"]["registry_sha256"], "abc");
        assert_eq!(v["columns"][2], "tag");
    }
}
