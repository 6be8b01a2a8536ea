use crate::error::{PtsError, Result};
use crate::linalg::Matrix;

/// Design matrix, response and optional row labels.
///
/// Row `i` of `x` always pairs with `y[i]`; nothing in the crate reorders rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Matrix,
    y: Vec<f64>,
    names: Option<Vec<String>>,
    has_intercept: bool,
}

impl Dataset {
    /// Wraps a full design matrix. The intercept flag is set when column 0 is
    /// identically one.
    pub fn new(x: Matrix, y: Vec<f64>) -> Result<Self> {
        let n = x.nrows();
        let p = x.ncols();
        if y.len() != n {
            return Err(PtsError::InvalidDimensions(format!(
                "design has {n} rows but response has {} values",
                y.len()
            )));
        }
        if p == 0 || n < p {
            return Err(PtsError::InvalidDimensions(format!(
                "need n >= p >= 1, got n = {n}, p = {p}"
            )));
        }
        if x.as_slice().iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(PtsError::InvalidDimensions(
                "data contains non-finite values".into(),
            ));
        }
        let has_intercept = (0..n).all(|i| x.get(i, 0) == 1.0);
        Ok(Self {
            x,
            y,
            names: None,
            has_intercept,
        })
    }

    /// Builds the design from predictor columns, optionally prepending a
    /// constant column.
    pub fn from_predictors(predictors: &Matrix, y: Vec<f64>, intercept: bool) -> Result<Self> {
        let x = if intercept {
            predictors.with_intercept()
        } else {
            predictors.clone()
        };
        Self::new(x, y)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(PtsError::InvalidDimensions(format!(
                "{} names for {} rows",
                names.len(),
                self.n()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        self.x.row(i)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn has_intercept(&self) -> bool {
        self.has_intercept
    }

    /// Same design, new response.
    pub fn with_response(&self, y: Vec<f64>) -> Result<Self> {
        let mut d = Self::new(self.x.clone(), y)?;
        d.names.clone_from(&self.names);
        d.has_intercept = self.has_intercept;
        Ok(d)
    }
}
