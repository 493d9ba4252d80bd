use crate::error::DiagnosticsError;

/// A sampled decay curve: strictly increasing times, strictly positive
/// values. Zero values (a quantity that underflowed or vanished exactly)
/// are dropped at construction and counted, so callers can tell a clean
/// series from a truncated one.
#[derive(Debug, Clone)]
pub struct DecaySeries {
    label: String,
    samples: Vec<(f64, f64)>,
    dropped_zeros: usize,
}

impl DecaySeries {
    pub fn new(
        label: impl Into<String>,
        raw: impl IntoIterator<Item = (f64, f64)>,
    ) -> Result<Self, DiagnosticsError> {
        let mut samples: Vec<(f64, f64)> = Vec::new();
        let mut dropped_zeros = 0;
        for (t, value) in raw {
            if !t.is_finite() || !value.is_finite() {
                return Err(DiagnosticsError::NonFiniteSample { t, value });
            }
            if value < 0.0 {
                return Err(DiagnosticsError::NegativeValue { t, value });
            }
            if value == 0.0 {
                dropped_zeros += 1;
                continue;
            }
            if let Some(&(prev, _)) = samples.last() {
                if t <= prev {
                    return Err(DiagnosticsError::UnorderedTimes { t });
                }
            }
            samples.push((t, value));
        }
        Ok(Self { label: label.into(), samples, dropped_zeros })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Number of zero-valued samples removed at construction.
    pub fn dropped_zeros(&self) -> usize {
        self.dropped_zeros
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Least-squares power law fitted to a window of a series.
///
/// `slope` is the fitted exponent q in value ≈ C t^q; a quantity decaying
/// like t^(-3/4) fits with slope -0.75.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub n_samples: usize,
}

/// Minimum number of samples a fit window must contain.
pub const MIN_FIT_SAMPLES: usize = 8;

/// Fit a power law to the samples with t in `[window.0, window.1]` by
/// ordinary least squares through (log t, log value).
///
/// The slope is invariant under positive scaling of the values (the scale
/// moves entirely into the intercept). r_squared is 1 for an exact power
/// law and for a constant series (the flat line is a perfect fit).
pub fn fit_decay_rate(
    series: &DecaySeries,
    window: (f64, f64),
) -> Result<FitResult, DiagnosticsError> {
    let (lo, hi) = window;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(DiagnosticsError::InvalidWindow { lo, hi });
    }

    let mut points: Vec<(f64, f64)> = Vec::new();
    for &(t, value) in series.samples() {
        if t < lo || t > hi {
            continue;
        }
        if t <= 0.0 {
            return Err(DiagnosticsError::NonpositiveTime(t));
        }
        points.push((t.ln(), value.ln()));
    }
    if points.len() < MIN_FIT_SAMPLES {
        return Err(DiagnosticsError::InsufficientSamples {
            found: points.len(),
            need: MIN_FIT_SAMPLES,
        });
    }

    let n = points.len() as f64;
    let mean_x = points.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in &points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    // Times are strictly increasing and positive, so the log-abscissas are
    // distinct and sxx > 0.
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for &(x, y) in &points {
        let predicted = intercept + slope * x;
        ss_res += (y - predicted) * (y - predicted);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    // A numerically constant series leaves ss_tot at rounding level rather
    // than exactly zero; the flat line is still a perfect fit, so separate
    // that jitter from genuine variation by comparing against the squared
    // magnitude of the log-ordinates.
    let scale: f64 = points.iter().map(|&(_, y)| y * y).sum();
    let r_squared = if ss_tot <= scale * 1e-28 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    Ok(FitResult { slope, intercept, r_squared, window, n_samples: points.len() })
}
