//! The five small benchmark sets, embedded. Each carries an intercept.

use std::fmt::Write as _;

use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::{Matrix, SubsetIndex};

pub const BENCHMARK_NAMES: [&str; 5] = ["telephone", "stars", "wood", "hawkins", "hadi"];

#[derive(Debug, Clone)]
pub struct BenchmarkCase {
    pub name: &'static str,
    /// Intercept column first, then the predictors.
    pub dataset: Dataset,
    /// 0-based; see [`BenchmarkCase::true_outlier_labels`] for the published labels.
    pub true_outliers: SubsetIndex,
    pub has_intercept: bool,
    /// Column names of the predictors followed by the response.
    pub columns: &'static [&'static str],
}

impl BenchmarkCase {
    /// 1-based case numbers.
    pub fn true_outlier_labels(&self) -> Vec<usize> {
        self.true_outliers.one_based()
    }

    /// Comma-separated export: a header row, then predictors and response
    /// without the intercept column.
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        let d = &self.dataset;
        let skip = usize::from(self.has_intercept);
        for i in 0..d.n() {
            for v in &d.row(i)[skip..] {
                write!(s, "{v},").unwrap();
            }
            writeln!(s, "{}", d.y()[i]).unwrap();
        }
        s
    }
}

fn build<const W: usize>(
    name: &'static str,
    rows: &[[f64; W]],
    columns: &'static [&'static str],
    outliers_1based: &[usize],
) -> BenchmarkCase {
    let n = rows.len();
    let predictors = Matrix::from_fn(n, W - 1, |i, j| rows[i][j]);
    let y = rows.iter().map(|r| r[W - 1]).collect();
    let dataset = Dataset::from_predictors(&predictors, y, true)
        .expect("embedded benchmark data is valid");
    let true_outliers =
        SubsetIndex::new(outliers_1based.iter().map(|i| i - 1).collect(), n).expect("labels in range");
    BenchmarkCase {
        name,
        dataset,
        true_outliers,
        has_intercept: true,
        columns,
    }
}

pub fn load_benchmark(name: &str) -> Result<BenchmarkCase> {
    Ok(match name {
        "telephone" => build("telephone", &TELEPHONE, &["year", "calls"], &[15, 16, 17, 18, 19, 20]),
        "stars" => build("stars", &STARS, &["log_te", "log_light"], &[11, 20, 30, 34]),
        "wood" => build("wood", &WOOD, &["x1", "x2", "x3", "x4", "x5", "y"], &[4, 6, 8, 19]),
        "hawkins" => build(
            "hawkins",
            &HAWKINS,
            &["x1", "x2", "x3", "y"],
            &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        ),
        "hadi" => build("hadi", &HADI, &["x1", "x2", "y"], &[1, 2, 3]),
        _ => return Err(PtsError::UnknownName(name.to_string())),
    })
}

pub fn all_benchmarks() -> Vec<BenchmarkCase> {
    BENCHMARK_NAMES
        .iter()
        .map(|n| load_benchmark(n).expect("known name"))
        .collect()
}

// Belgian international calls (tens of millions) by year, 1950-1973.
const TELEPHONE: [[f64; 2]; 24] = [
    [50.0, 0.44],
    [51.0, 0.47],
    [52.0, 0.47],
    [53.0, 0.59],
    [54.0, 0.66],
    [55.0, 0.73],
    [56.0, 0.81],
    [57.0, 0.88],
    [58.0, 1.06],
    [59.0, 1.2],
    [60.0, 1.35],
    [61.0, 1.49],
    [62.0, 1.61],
    [63.0, 2.12],
    [64.0, 11.9],
    [65.0, 12.4],
    [66.0, 14.2],
    [67.0, 15.9],
    [68.0, 18.2],
    [69.0, 21.2],
    [70.0, 4.3],
    [71.0, 2.4],
    [72.0, 2.7],
    [73.0, 2.9],
];

// Log surface temperature and log light intensity, 47 stars in Cygnus.
const STARS: [[f64; 2]; 47] = [
    [4.37, 5.23],
    [4.56, 5.74],
    [4.26, 4.93],
    [4.56, 5.74],
    [4.3, 5.19],
    [4.46, 5.46],
    [3.84, 4.65],
    [4.57, 5.27],
    [4.26, 5.57],
    [4.37, 5.12],
    [3.49, 5.73],
    [4.43, 5.45],
    [4.48, 5.42],
    [4.01, 4.05],
    [4.29, 4.26],
    [4.42, 4.58],
    [4.23, 3.94],
    [4.42, 4.18],
    [4.23, 4.18],
    [3.49, 5.89],
    [4.29, 4.38],
    [4.29, 4.22],
    [4.42, 4.42],
    [4.49, 4.85],
    [4.38, 5.02],
    [4.42, 4.66],
    [4.29, 4.66],
    [4.38, 4.9],
    [4.22, 4.39],
    [3.48, 6.05],
    [4.38, 4.42],
    [4.56, 5.1],
    [4.45, 5.22],
    [3.49, 6.29],
    [4.23, 4.34],
    [4.62, 5.62],
    [4.53, 5.1],
    [4.45, 5.22],
    [4.53, 5.18],
    [4.43, 5.57],
    [4.38, 4.62],
    [4.45, 5.06],
    [4.5, 5.34],
    [4.45, 5.34],
    [4.55, 5.54],
    [4.45, 4.98],
    [4.42, 4.5],
];

// Wood specific gravity with cases 4, 6, 8 and 19 replaced.
const WOOD: [[f64; 6]; 20] = [
    [0.573, 0.1059, 0.465, 0.538, 0.841, 0.534],
    [0.651, 0.1356, 0.527, 0.545, 0.887, 0.535],
    [0.606, 0.1273, 0.494, 0.521, 0.92, 0.57],
    [0.437, 0.1591, 0.446, 0.423, 0.992, 0.45],
    [0.547, 0.1135, 0.531, 0.519, 0.915, 0.548],
    [0.444, 0.1628, 0.429, 0.411, 0.984, 0.431],
    [0.489, 0.1231, 0.562, 0.455, 0.824, 0.481],
    [0.413, 0.1673, 0.418, 0.43, 0.978, 0.423],
    [0.536, 0.1182, 0.592, 0.464, 0.854, 0.475],
    [0.685, 0.1564, 0.631, 0.564, 0.914, 0.486],
    [0.664, 0.1588, 0.506, 0.481, 0.867, 0.554],
    [0.703, 0.1335, 0.519, 0.484, 0.812, 0.519],
    [0.653, 0.1395, 0.625, 0.519, 0.892, 0.492],
    [0.586, 0.1114, 0.505, 0.565, 0.889, 0.517],
    [0.534, 0.1143, 0.521, 0.57, 0.889, 0.502],
    [0.523, 0.132, 0.505, 0.612, 0.919, 0.508],
    [0.58, 0.1249, 0.546, 0.608, 0.954, 0.52],
    [0.448, 0.1028, 0.522, 0.534, 0.918, 0.506],
    [0.417, 0.1687, 0.405, 0.415, 0.981, 0.401],
    [0.528, 0.1057, 0.424, 0.566, 0.909, 0.568],
];

// Hawkins, Bradu and Kass: 10 bad leverage points, then 4 good ones.
const HAWKINS: [[f64; 4]; 75] = [
    [10.1, 19.6, 28.3, 9.7],
    [9.5, 20.5, 28.9, 10.1],
    [10.7, 20.2, 31.0, 10.3],
    [9.9, 21.5, 31.7, 9.5],
    [10.3, 21.1, 31.1, 10.0],
    [10.8, 20.4, 29.2, 10.0],
    [10.5, 20.9, 29.1, 10.8],
    [9.9, 19.6, 28.8, 10.3],
    [9.7, 20.7, 31.0, 9.6],
    [9.3, 19.7, 30.3, 9.9],
    [11.0, 24.0, 35.0, -0.2],
    [12.0, 23.0, 37.0, -0.4],
    [12.0, 26.0, 34.0, 0.7],
    [11.0, 34.0, 34.0, 0.1],
    [3.4, 2.9, 2.1, -0.4],
    [3.1, 2.2, 0.3, 0.6],
    [0.0, 1.6, 0.2, -0.2],
    [2.3, 1.6, 2.0, 0.0],
    [0.8, 2.9, 1.6, 0.1],
    [3.1, 3.4, 2.2, 0.4],
    [2.6, 2.2, 1.9, 0.9],
    [0.4, 3.2, 1.9, 0.3],
    [2.0, 2.3, 0.8, -0.8],
    [1.3, 2.3, 0.5, 0.7],
    [1.0, 0.0, 0.4, -0.3],
    [0.9, 3.3, 2.5, -0.8],
    [3.3, 2.5, 2.9, -0.7],
    [1.8, 0.8, 2.0, 0.3],
    [1.2, 0.9, 0.8, 0.3],
    [1.2, 0.7, 3.4, -0.3],
    [3.1, 1.4, 1.0, 0.0],
    [0.5, 2.4, 0.3, -0.4],
    [1.5, 3.1, 1.5, -0.6],
    [0.4, 0.0, 0.7, -0.7],
    [3.1, 2.4, 3.0, 0.3],
    [1.1, 2.2, 2.7, -1.0],
    [0.1, 3.0, 2.6, -0.6],
    [1.5, 1.2, 0.2, 0.9],
    [2.1, 0.0, 1.2, -0.7],
    [0.5, 2.0, 1.2, -0.5],
    [3.4, 1.6, 2.9, -0.1],
    [0.3, 1.0, 2.7, -0.7],
    [0.1, 3.3, 0.9, 0.6],
    [1.8, 0.5, 3.2, -0.7],
    [1.9, 0.1, 0.6, -0.5],
    [1.8, 0.5, 3.0, -0.4],
    [3.0, 0.1, 0.8, -0.9],
    [3.1, 1.6, 3.0, 0.1],
    [3.1, 2.5, 1.9, 0.9],
    [2.1, 2.8, 2.9, -0.4],
    [2.3, 1.5, 0.4, 0.7],
    [3.3, 0.6, 1.2, -0.5],
    [0.3, 0.4, 3.3, 0.7],
    [1.1, 3.0, 0.3, 0.7],
    [0.5, 2.4, 0.9, 0.0],
    [1.8, 3.2, 0.9, 0.1],
    [1.8, 0.7, 0.7, 0.7],
    [2.4, 3.4, 1.5, -0.1],
    [1.6, 2.1, 3.0, -0.3],
    [0.3, 1.5, 3.3, -0.9],
    [0.4, 3.4, 3.0, -0.3],
    [0.9, 0.1, 0.3, 0.6],
    [1.1, 2.7, 0.2, -0.3],
    [2.8, 3.0, 2.9, -0.5],
    [2.0, 0.7, 2.7, 0.6],
    [0.2, 1.8, 0.8, -0.9],
    [1.6, 2.0, 1.2, -0.7],
    [0.1, 0.0, 1.1, 0.6],
    [2.0, 0.6, 0.3, 0.2],
    [1.0, 2.2, 2.9, 0.7],
    [2.2, 2.5, 2.3, 0.2],
    [0.6, 2.0, 1.5, -0.2],
    [0.3, 1.7, 2.2, 0.4],
    [0.0, 2.2, 1.6, -0.9],
    [0.3, 0.4, 2.6, 0.2],
];

// Two correlated uniform(0, 15) predictors and y = x1 + x2 + N(0, 1); cases 1-3
// sit near (15, 15) with y = x1 + x2 + 4. The original table is not
// reproduced here; these values follow the same construction with a fixed seed.
const HADI: [[f64; 3]; 25] = [
    [14.99, 15.35, 34.35],
    [14.72, 14.82, 33.53],
    [14.76, 15.48, 34.24],
    [0.43, 8.41, 9.24],
    [2.22, 2.04, 5.21],
    [13.92, 9.54, 22.13],
    [1.06, 3.02, 4.69],
    [1.95, 1.5, 4.05],
    [14.22, 13.73, 26.18],
    [9.33, 7.5, 17.18],
    [5.53, 3.43, 8.71],
    [7.67, 9.21, 17.66],
    [9.94, 5.56, 15.07],
    [4.13, 10.08, 14.2],
    [2.07, 2.82, 5.23],
    [11.82, 4.64, 15.59],
    [10.06, 5.59, 16.24],
    [7.69, 6.1, 13.68],
    [12.25, 8.94, 21.69],
    [8.24, 11.63, 19.35],
    [14.71, 12.02, 27.82],
    [3.07, 4.35, 8.02],
    [8.31, 3.2, 11.33],
    [7.25, 4.18, 12.06],
    [5.3, 11.42, 17.97],
];
