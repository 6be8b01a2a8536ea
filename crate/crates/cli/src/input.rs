use std::fs::File;
use std::io::Read;
use std::path::Path;

use fastpts::{Dataset, Matrix};

/// Malformed input, carrying the 1-based line of the offending record when known.
#[derive(Debug, Clone, PartialEq)]
pub struct DataError {
    pub line: Option<u64>,
    pub message: String,
}

impl std::fmt::Display for DataError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for DataError {}

fn err(line: Option<u64>, message: impl Into<String>) -> DataError {
    DataError {
        line,
        message: message.into(),
    }
}

/// A parsed input file.
#[derive(Debug, Clone)]
pub struct Table {
    pub dataset: Dataset,
    /// Names of the design columns, `(intercept)` first when one was added.
    pub columns: Vec<String>,
    pub response: String,
}

/// Reads a comma-separated file with a header row; the last column is the response.
pub fn read_csv(path: &Path, intercept: bool) -> Result<Table, DataError> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| err(None, format!("{}: {e}", path.display())))?;
    parse_csv(&text, intercept)
}

pub fn parse_csv(text: &str, intercept: bool) -> Result<Table, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| err(Some(1), e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.len() < 2 {
        return Err(err(Some(1), "need at least one predictor column and a response column"));
    }
    let width = header.len();
    let mut values = Vec::new();
    let mut y = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line());
            err(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line());
        if record.len() != width {
            return Err(err(line, format!("expected {width} fields, found {}", record.len())));
        }
        for (j, field) in record.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| err(line, format!("column `{}`: cannot parse `{field}`", header[j])))?;
            if !v.is_finite() {
                return Err(err(line, format!("column `{}`: non-finite value", header[j])));
            }
            if j + 1 == width {
                y.push(v);
            } else {
                values.push(v);
            }
        }
    }
    if y.is_empty() {
        return Err(err(None, "no data rows"));
    }
    let predictors = Matrix::new(y.len(), width - 1, values).map_err(|e| err(None, e.to_string()))?;
    let mut columns: Vec<String> = header[..width - 1].to_vec();
    if intercept {
        columns.insert(0, "(intercept)".to_string());
    }
    let dataset =
        Dataset::from_predictors(&predictors, y, intercept).map_err(|e| err(None, e.to_string()))?;
    Ok(Table {
        dataset,
        columns,
        response: header[width - 1].clone(),
    })
}
