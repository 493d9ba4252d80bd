use crate::error::HeatError;

/// Thomas algorithm for a tridiagonal system.
///
/// Layout: row i reads `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`,
/// with `sub[0]` and `sup[n-1]` ignored. The systems assembled by the heat
/// step are strictly diagonally dominant for theta >= 1/2 and dt > 0, so the
/// pivot guard is defensive only.
pub(crate) fn solve(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>, HeatError> {
    let n = diag.len();
    debug_assert!(sub.len() == n && sup.len() == n && rhs.len() == n);
    let mut c_star = vec![0.0; n];
    let mut d_star = vec![0.0; n];

    if diag[0].abs() < f64::MIN_POSITIVE {
        return Err(HeatError::SingularSystem { row: 0 });
    }
    c_star[0] = sup[0] / diag[0];
    d_star[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c_star[i - 1];
        if denom.abs() < f64::MIN_POSITIVE {
            return Err(HeatError::SingularSystem { row: i });
        }
        c_star[i] = sup[i] / denom;
        d_star[i] = (rhs[i] - sub[i] * d_star[i - 1]) / denom;
    }

    let mut x = d_star;
    for i in (0..n - 1).rev() {
        x[i] -= c_star[i] * x[i + 1];
    }
    Ok(x)
}
