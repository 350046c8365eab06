// Copyright 2026 The lifshitz authors
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! CSV readers for input datasets and the fixed-format writer used for all output.
//!
//! Inputs may carry `#` comment lines. Floats are written in scientific
//! notation with 12 significant digits so that output is byte-reproducible.

use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use lifshitz_core::{ExperimentDataset, ExperimentPoint, InterbandTable, ThetaTable};

use crate::error::{Result, ToolError};

pub const INTERBAND_HEADER: [&str; 2] = ["omega_ev", "im_eps"];
pub const EXPERIMENT_HEADER: [&str; 3] = ["a_nm", "grad_uN_per_m", "err_uN_per_m"];
pub const THETA_HEADER: [&str; 2] = ["a_nm", "theta"];

const NM_PER_M: f64 = 1e9;
const MICRO_N_PER_N: f64 = 1e6;

/// Scientific notation, 12 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

/// Header and records of a CSV file, each record tagged with its line number.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<(u64, Vec<String>)>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }
}

fn data_error(path: &Path, line: u64, message: impl Into<String>) -> ToolError {
    ToolError::Data {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Reads any comma-separated table with a header row; `path` is used for messages only.
pub fn read_table<R: Read>(reader: R, path: &Path) -> Result<Table> {
    let mut csv = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv
        .headers()
        .map_err(|e| data_error(path, csv_line(&e), e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for record in csv.records() {
        let record = record.map_err(|e| data_error(path, csv_line(&e), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        rows.push((line, record.iter().map(str::to_owned).collect()));
    }
    Ok(Table { headers, rows })
}

fn csv_line(e: &csv::Error) -> u64 {
    e.position().map_or(0, |p| p.line())
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| ToolError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses the table and returns its rows as floats, requiring exactly `expected` as header.
fn numeric_rows<R: Read>(
    reader: R,
    path: &Path,
    expected: &[&str],
) -> Result<Vec<(u64, Vec<f64>)>> {
    let table = read_table(reader, path)?;
    if table.headers != expected {
        return Err(data_error(
            path,
            1,
            format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                table.headers.join(",")
            ),
        ));
    }
    let mut rows = Vec::with_capacity(table.rows.len());
    for (line, fields) in table.rows {
        let values = fields
            .iter()
            .zip(expected)
            .map(|(field, name)| {
                field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        data_error(
                            path,
                            line,
                            format!("`{name}` is not a finite number: `{field}`"),
                        )
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push((line, values));
    }
    if rows.is_empty() {
        return Err(data_error(path, 1, "no data rows"));
    }
    Ok(rows)
}

fn require_increasing(path: &Path, rows: &[(u64, Vec<f64>)], name: &str) -> Result<()> {
    for pair in rows.windows(2) {
        if pair[1].1[0] <= pair[0].1[0] {
            return Err(data_error(
                path,
                pair[1].0,
                format!("`{name}` must be strictly increasing"),
            ));
        }
    }
    Ok(())
}

/// `omega_ev,im_eps` rows of tabulated interband absorption.
pub fn parse_interband<R: Read>(reader: R, path: &Path) -> Result<InterbandTable> {
    let rows = numeric_rows(reader, path, &INTERBAND_HEADER)?;
    require_increasing(path, &rows, "omega_ev")?;
    for (line, v) in &rows {
        if v[0] <= 0.0 || v[1] < 0.0 {
            return Err(data_error(path, *line, "need omega_ev > 0 and im_eps >= 0"));
        }
    }
    let first = rows[0].0;
    InterbandTable::from_ev(rows.into_iter().map(|(_, v)| (v[0], v[1])))
        .map_err(|e| data_error(path, first, e.to_string()))
}

pub fn read_interband(path: &Path) -> Result<InterbandTable> {
    parse_interband(open(path)?, path)
}

/// `a_nm,grad_uN_per_m,err_uN_per_m` rows, converted to SI.
pub fn parse_experiment<R: Read>(reader: R, path: &Path) -> Result<ExperimentDataset> {
    let rows = numeric_rows(reader, path, &EXPERIMENT_HEADER)?;
    require_increasing(path, &rows, "a_nm")?;
    for (line, v) in &rows {
        if v[0] <= 0.0 || v[2] <= 0.0 {
            return Err(data_error(
                path,
                *line,
                "need a_nm > 0 and err_uN_per_m > 0",
            ));
        }
    }
    let first = rows[0].0;
    let points = rows
        .into_iter()
        .map(|(_, v)| ExperimentPoint {
            a: v[0] / NM_PER_M,
            grad: v[1] / MICRO_N_PER_N,
            err: v[2] / MICRO_N_PER_N,
        })
        .collect();
    ExperimentDataset::new(points).map_err(|e| data_error(path, first, e.to_string()))
}

pub fn read_experiment(path: &Path) -> Result<ExperimentDataset> {
    parse_experiment(open(path)?, path)
}

/// `a_nm,theta` rows of the beyond-PFA coefficient.
pub fn parse_theta<R: Read>(reader: R, path: &Path) -> Result<ThetaTable> {
    let rows = numeric_rows(reader, path, &THETA_HEADER)?;
    require_increasing(path, &rows, "a_nm")?;
    for (line, v) in &rows {
        if v[0] <= 0.0 || v[1].abs() > 1.0 {
            return Err(data_error(path, *line, "need a_nm > 0 and |theta| <= 1"));
        }
    }
    let first = rows[0].0;
    ThetaTable::new(
        rows.into_iter()
            .map(|(_, v)| (v[0] / NM_PER_M, v[1]))
            .collect(),
    )
    .map_err(|e| data_error(path, first, e.to_string()))
}

pub fn read_theta(path: &Path) -> Result<ThetaTable> {
    parse_theta(open(path)?, path)
}

/// In-memory CSV document with optional trailing `#` comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvDocument {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub comments: Vec<String>,
}

impl CsvDocument {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(&self.headers)
            .expect("writing to memory cannot fail");
        for row in &self.rows {
            writer
                .write_record(row)
                .expect("writing to memory cannot fail");
        }
        let bytes = writer.into_inner().expect("flushing to memory cannot fail");
        let mut text = String::from_utf8(bytes).expect("fields are UTF-8");
        for comment in &self.comments {
            text.push_str("# ");
            text.push_str(comment);
            text.push('\n');
        }
        text
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).map_err(|source| ToolError::Io {
            path: PathBuf::from(path),
            source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.csv")
    }

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(fmt_f64(1.0), "1.00000000000e0");
        assert_eq!(fmt_f64(-0.0013001257724477534), "-1.30012577245e-3");
        assert_eq!(fmt_f64(6.02214076e23), "6.02214076000e23");
    }

    #[test]
    fn interband_with_comments() {
        let text = "# source: test\nomega_ev,im_eps\n1.0,2.0\n# mid\n2.0, 3.0\n";
        let table = parse_interband(text.as_bytes(), p()).unwrap();
        assert_eq!(table.len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "omega_ev,im_eps\n1.0,2.0\n2.0,abc\n";
        match parse_interband(text.as_bytes(), p()).unwrap_err() {
            ToolError::Data { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("im_eps"));
            }
            other => panic!("{other:?}"),
        }
        let text = "omega_ev,im_eps\n1.0,2.0\n3.0,1.0\n2.0,1.0\n";
        assert!(matches!(
            parse_interband(text.as_bytes(), p()),
            Err(ToolError::Data { line: 4, .. })
        ));
        let text = "omega,im_eps\n1.0,2.0\n";
        assert!(matches!(
            parse_interband(text.as_bytes(), p()),
            Err(ToolError::Data { line: 1, .. })
        ));
        let text = "a_nm,grad_uN_per_m,err_uN_per_m\n200,1.0\n";
        assert!(matches!(
            parse_experiment(text.as_bytes(), p()),
            Err(ToolError::Data { line: 2, .. })
        ));
    }

    #[test]
    fn experiment_units() {
        let text = "a_nm,grad_uN_per_m,err_uN_per_m\n223,1500,2.5\n250,1100,2.0\n";
        let data = parse_experiment(text.as_bytes(), p()).unwrap();
        let first = data.points()[0];
        assert!((first.a - 223e-9).abs() < 1e-20);
        assert!((first.grad - 1.5e-3).abs() < 1e-15);
        assert!((first.err - 2.5e-6).abs() < 1e-18);
    }

    #[test]
    fn theta_rejects_out_of_range() {
        let text = "a_nm,theta\n200,-1.5\n";
        assert!(parse_theta(text.as_bytes(), p()).is_err());
        let text = "a_nm,theta\n200,-1\n400,0.5\n";
        assert_eq!(parse_theta(text.as_bytes(), p()).unwrap().rows().len(), 2);
    }

    #[test]
    fn rendered_documents_read_back() {
        let mut doc = CsvDocument::new(vec!["a_m", "model", "value"]);
        doc.push(vec![fmt_f64(1e-7), "drude".into(), fmt_f64(-3.25)]);
        doc.comments
            .push("summary model=drude inside=1 outside=0".into());
        let text = doc.render();
        let table = read_table(text.as_bytes(), p()).unwrap();
        assert_eq!(table.headers, ["a_m", "model", "value"]);
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].1[2].parse::<f64>().unwrap(), -3.25);
    }
}
