use crate::error::ModelError;
use crate::params::ProblemParams;

/// Theoretical decay exponents for derivative order k.
///
/// All entries are exponents of (1+t): a quantity "decays at rate q" when
/// it is bounded by C (1+t)^(-q), up to an arbitrarily small loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTable {
    pub k: usize,
    /// Rate of the L² norm itself: (n - 2α) / (2(2-α)).
    pub l2_rate: f64,
    /// Rate of the weighted square integral of the k-th time derivative,
    /// ∫ e^(2ψ) a |∂_t^k u|² dx: (n-α)/(2-α) + 2k.
    pub weighted_sq_rate: f64,
    /// Rate of the weighted gradient square integral,
    /// ∫ e^(2ψ) |∇ ∂_t^k u|² dx: (n-α)/(2-α) + 2k + 1.
    pub weighted_grad_sq_rate: f64,
}

/// Decay exponents predicted for the problem, at derivative order k.
///
/// This is the single source of truth for every "predicted" column in the
/// verification reports.
pub fn theoretical_rates(p: &ProblemParams, k: usize) -> Result<RateTable, ModelError> {
    // Re-validate, the struct may have been built literally.
    let p = ProblemParams::new(p.n_dim, p.alpha, p.support_radius)?;
    let n = p.n_dim as f64;
    let alpha = p.alpha;
    let base = (n - alpha) / (2.0 - alpha);
    Ok(RateTable {
        k,
        l2_rate: (n - 2.0 * alpha) / (2.0 * (2.0 - alpha)),
        weighted_sq_rate: base + 2.0 * k as f64,
        weighted_grad_sq_rate: base + 2.0 * k as f64 + 1.0,
    })
}
