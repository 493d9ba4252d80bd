use crate::error::ModelError;

/// Uniform radial mesh: node i sits at r_i = i * dr, i = 0 .. n_points-1.
///
/// The ambient dimension rides along so quadrature and the Laplacian know
/// the r^(n-1) volume factor and the (n-1)/r curvature term.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    n_points: usize,
    dr: f64,
    n_dim: usize,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 16;

    pub fn new(n_points: usize, dr: f64, n_dim: usize) -> Result<Self, ModelError> {
        if n_points < Self::MIN_POINTS {
            return Err(ModelError::TooFewNodes { min: Self::MIN_POINTS, got: n_points });
        }
        if !dr.is_finite() || dr <= 0.0 {
            return Err(ModelError::InvalidSpacing(dr));
        }
        if n_dim < 1 {
            return Err(ModelError::InvalidDimension(n_dim));
        }
        Ok(Self { n_points, dr, n_dim })
    }

    /// Grid covering [0, r_max] with spacing dr; the outer radius is rounded
    /// up to a whole number of cells.
    pub fn covering(r_max: f64, dr: f64, n_dim: usize) -> Result<Self, ModelError> {
        if !dr.is_finite() || dr <= 0.0 {
            return Err(ModelError::InvalidSpacing(dr));
        }
        if !r_max.is_finite() || r_max <= 0.0 {
            return Err(ModelError::InvalidSupportRadius(r_max));
        }
        let cells = (r_max / dr).ceil() as usize;
        Self::new((cells + 1).max(Self::MIN_POINTS), dr, n_dim)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn r_max(&self) -> f64 {
        (self.n_points - 1) as f64 * self.dr
    }

    pub fn r(&self, i: usize) -> f64 {
        i as f64 * self.dr
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.r(i))
    }
}
