//! JSON state files: `{"dims": [2, 2, 2], "matrix": [[[re, im], ...], ...]}`, row-major.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entropy::DensityOperator;
use crate::error::{EurError, Result};
use crate::linalg::CMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| EurError::Parse(format!("state file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files always serialize")
    }

    pub fn from_density(rho: &DensityOperator) -> Self {
        let m = rho.matrix();
        let n = m.dim();
        StateFile {
            dims: rho.dims().to_vec(),
            matrix: (0..n)
                .map(|i| (0..n).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
                .collect(),
        }
    }

    /// Converts to a validated density operator; errors name the violated invariant.
    pub fn to_density(&self) -> Result<DensityOperator> {
        let rows: Vec<Vec<Complex64>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let matrix = CMatrix::from_rows(&rows).map_err(|e| EurError::InvalidState(e.to_string()))?;
        DensityOperator::new(matrix, self.dims.clone())
    }
}
