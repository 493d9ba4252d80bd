use crate::error::ModelError;
use crate::grid::RadialGrid;

/// A radial scalar function sampled at grid nodes.
///
/// Construction validates that every entry is finite; operations that
/// return a `Field` preserve that invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    values: Vec<f64>,
}

impl Field {
    pub fn new(values: Vec<f64>) -> Result<Self, ModelError> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(ModelError::NonFiniteValue { index });
        }
        Ok(Self { values })
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    /// Sample f(r) at every node of the grid.
    pub fn from_fn(grid: &RadialGrid, f: impl Fn(f64) -> f64) -> Result<Self, ModelError> {
        Self::new(grid.radii().map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Errors unless the field is sampled on exactly this grid's nodes.
    pub fn check_grid(&self, grid: &RadialGrid) -> Result<(), ModelError> {
        if self.values.len() != grid.n_points() {
            return Err(ModelError::LengthMismatch {
                expected: grid.n_points(),
                got: self.values.len(),
            });
        }
        Ok(())
    }

    /// Pointwise combination c1*self + c2*other.
    pub fn linear_combination(&self, c1: f64, other: &Field, c2: f64) -> Result<Field, ModelError> {
        if self.len() != other.len() {
            return Err(ModelError::LengthMismatch { expected: self.len(), got: other.len() });
        }
        Field::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| c1 * a + c2 * b)
                .collect(),
        )
    }
}

impl std::ops::Index<usize> for Field {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}
