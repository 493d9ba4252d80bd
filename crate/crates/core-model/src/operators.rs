use crate::error::ModelError;
use crate::field::Field;
use crate::grid::RadialGrid;

/// Treatment of the outer grid edge at r_max.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OuterBoundary {
    /// Homogeneous Dirichlet: the ghost value past r_max is zero. The grids
    /// are sized so that solutions never reach the edge, which makes this
    /// choice immaterial in practice.
    #[default]
    Dirichlet,
    /// Reflecting edge (ghost mirrors the second-to-last node). Used by
    /// constant-state tests, where Dirichlet would force decay.
    Neumann,
}

/// Discrete radial Laplacian Δ_h f = f_rr + (n-1)/r f_r.
///
/// Interior nodes use centered second and first differences. The removable
/// singularity at r = 0 is handled with a symmetric ghost node together
/// with the limit Δf(0) = n f_rr(0), which collapses to
///
/// ```text
///     Δ_h f(0) = 2n (f(dr) - f(0)) / dr².
/// ```
///
/// The scheme is second order for smooth radial functions and annihilates
/// constants at every node (with a Neumann edge, also at the last one).
pub fn radial_laplacian(
    f: &Field,
    grid: &RadialGrid,
    boundary: OuterBoundary,
) -> Result<Field, ModelError> {
    f.check_grid(grid)?;
    let n = grid.n_points();
    let dr = grid.dr();
    let dr2 = dr * dr;
    let dim = grid.n_dim() as f64;
    let v = f.values();
    let mut out = vec![0.0; n];

    out[0] = 2.0 * dim * (v[1] - v[0]) / dr2;
    for i in 1..n - 1 {
        let r = grid.r(i);
        let second = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / dr2;
        let first = (v[i + 1] - v[i - 1]) / (2.0 * dr);
        out[i] = second + (dim - 1.0) / r * first;
    }
    out[n - 1] = match boundary {
        // The edge value is pinned by the solvers; its Laplacian row is unused.
        OuterBoundary::Dirichlet => 0.0,
        // Mirror ghost: first derivative vanishes, second difference folds.
        OuterBoundary::Neumann => 2.0 * (v[n - 2] - v[n - 1]) / dr2,
    };
    Field::new(out)
}

/// Discrete radial derivative f_r, centered in the interior.
///
/// Radial symmetry forces f_r(0) = 0 exactly; the outer node takes a
/// one-sided difference. For a radial function |∇f| = |f_r|, so this is
/// what gradient-square integrals consume.
pub fn radial_derivative(f: &Field, grid: &RadialGrid) -> Result<Field, ModelError> {
    f.check_grid(grid)?;
    let n = grid.n_points();
    let dr = grid.dr();
    let v = f.values();
    let mut out = vec![0.0; n];

    out[0] = 0.0;
    for i in 1..n - 1 {
        out[i] = (v[i + 1] - v[i - 1]) / (2.0 * dr);
    }
    out[n - 1] = (v[n - 1] - v[n - 2]) / dr;
    Field::new(out)
}
