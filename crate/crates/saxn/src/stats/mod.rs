//! Statistical machinery: autocorrelation, Jarque-Bera normality,
//! chi-squared goodness of fit against uniformity, OLS regression and
//! Pearson correlation.
//!
//! Conventions: the ACF denominator is the full-sample (biased) variance,
//! matching the usual correlogram and its 1.96/sqrt(n) bands; kurtosis in
//! the JB statistic is the raw (non-excess) moment ratio with the (K-3)^2
//! term; the uniformity report carries the absolute deviation from the
//! uniform target as a percentage of symbols misallocated,
//! 100 * sum|O_i - E_i| / sum O_i, which is 0 exactly at uniformity and
//! bounded by 200 * (1 - 1/k).

pub mod special;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{TimeSeries, DEGENERACY_EPSILON};

pub use special::{chi2_upper_tail, norm_cdf, norm_inv_cdf};

/// Number of lags summed by [`acf_sum`].
pub const ACF_SUM_LAGS: usize = 30;

/// Autocorrelation coefficients r_0..r_L with the white-noise significance
/// band for the source length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcfResult {
    /// r_0 (always exactly 1) through r_L.
    pub coefficients: Vec<f64>,
    /// Source series length.
    pub n: usize,
    /// 1.96 / sqrt(n); |r_k| beyond this is significant at 5%.
    pub significance_band: f64,
}

/// Chi-squared goodness-of-fit outcome against the uniform target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// 100 * sum|O_i - E_i| / sum O_i, the share of misallocated symbols.
    pub abs_dev_pct: f64,
    pub reject_at_5pct: bool,
}

/// Jarque-Bera normality test outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub jb_statistic: f64,
    pub p_value: f64,
    pub skewness: f64,
    /// Raw (non-excess) kurtosis; 3 under normality.
    pub kurtosis: f64,
}

/// Simple linear regression fit y = intercept + slope * x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub residual_sigma: f64,
}

/// Sample autocorrelation function up to `max_lag`.
///
/// r_k = sum_{t=1}^{n-k} (x_t - xbar)(x_{t+k} - xbar) / sum (x_t - xbar)^2.
pub fn acf(series: &TimeSeries, max_lag: usize) -> Result<AcfResult> {
    let n = series.len();
    if n < 2 {
        return Err(Error::TooShort { len: n, min: 2 });
    }
    if max_lag >= n {
        return Err(Error::LagTooLarge {
            lag: max_lag,
            len: n,
        });
    }
    let x = series.values();
    let mean = x.iter().sum::<f64>() / n as f64;
    let denom: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
    if denom / n as f64 <= DEGENERACY_EPSILON * DEGENERACY_EPSILON {
        return Err(Error::DegenerateSeries {
            sigma: (denom / n as f64).sqrt(),
            epsilon: DEGENERACY_EPSILON,
        });
    }
    let mut coefficients = Vec::with_capacity(max_lag + 1);
    coefficients.push(1.0);
    for k in 1..=max_lag {
        let num: f64 = (0..n - k).map(|t| (x[t] - mean) * (x[t + k] - mean)).sum();
        coefficients.push(num / denom);
    }
    Ok(AcfResult {
        coefficients,
        n,
        significance_band: 1.96 / (n as f64).sqrt(),
    })
}

/// Sum of the autocorrelation coefficients over lags 1..=30 (lag 0,
/// identically 1, is excluded).
pub fn acf_sum(series: &TimeSeries) -> Result<f64> {
    if series.len() <= ACF_SUM_LAGS + 1 {
        return Err(Error::TooShort {
            len: series.len(),
            min: ACF_SUM_LAGS + 2,
        });
    }
    let result = acf(series, ACF_SUM_LAGS)?;
    Ok(result.coefficients[1..].iter().sum())
}

/// Jarque-Bera moment test for normality; the statistic is chi-squared with
/// 2 dof under the null.
pub fn jarque_bera(series: &TimeSeries) -> Result<NormalityReport> {
    let n = series.len();
    if n < 8 {
        return Err(Error::TooShort { len: n, min: 8 });
    }
    let x = series.values();
    let mean = x.iter().sum::<f64>() / n as f64;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n as f64;
    m3 /= n as f64;
    m4 /= n as f64;
    if m2.sqrt() <= DEGENERACY_EPSILON {
        return Err(Error::DegenerateSeries {
            sigma: m2.sqrt(),
            epsilon: DEGENERACY_EPSILON,
        });
    }
    let skewness = m3 / m2.powf(1.5);
    let kurtosis = m4 / (m2 * m2);
    let jb_statistic =
        n as f64 / 6.0 * (skewness * skewness + (kurtosis - 3.0) * (kurtosis - 3.0) / 4.0);
    let p_value = chi2_upper_tail(jb_statistic, 2)?;
    Ok(NormalityReport {
        jb_statistic,
        p_value,
        skewness,
        kurtosis,
    })
}

/// Pearson chi-squared test of `observed_counts` against the uniform
/// distribution over `cardinality` cells.
///
/// Requires at least 5 expected observations per cell; fewer is an error
/// rather than a silently unreliable p-value.
pub fn chi_squared_gof(observed_counts: &[u64], cardinality: usize) -> Result<GofReport> {
    if cardinality < 2 {
        return Err(Error::DomainError {
            context: format!("chi_squared_gof: cardinality {cardinality} < 2"),
        });
    }
    if observed_counts.len() != cardinality {
        return Err(Error::ShapeMismatch {
            context: format!(
                "{} observed counts for cardinality {}",
                observed_counts.len(),
                cardinality
            ),
        });
    }
    let total: u64 = observed_counts.iter().sum();
    let min = 5 * cardinality as u64;
    if total < min {
        return Err(Error::TooFewSamples {
            total,
            cardinality,
            min,
        });
    }
    let expected = total as f64 / cardinality as f64;
    let mut statistic = 0.0;
    let mut abs_dev = 0.0;
    for &o in observed_counts {
        let d = o as f64 - expected;
        statistic += d * d / expected;
        abs_dev += d.abs();
    }
    let dof = cardinality - 1;
    let p_value = chi2_upper_tail(statistic, dof)?;
    Ok(GofReport {
        statistic,
        dof,
        p_value,
        abs_dev_pct: 100.0 * abs_dev / total as f64,
        reject_at_5pct: p_value < 0.05,
    })
}

/// Ordinary least squares fit of y on x with intercept.
pub fn ols_fit(x: &[f64], y: &[f64]) -> Result<RegressionFit> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch {
            context: format!("x has {} points, y has {}", x.len(), y.len()),
        });
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::TooShort { len: n, min: 3 });
    }
    let nf = n as f64;
    let x_mean = x.iter().sum::<f64>() / nf;
    let y_mean = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - x_mean) * (v - x_mean)).sum();
    if sxx / nf <= DEGENERACY_EPSILON * DEGENERACY_EPSILON {
        return Err(Error::DegeneratePredictor);
    }
    let sxy: f64 = x
        .iter()
        .zip(y)
        .map(|(xv, yv)| (xv - x_mean) * (yv - y_mean))
        .sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(xv, yv)| {
            let r = yv - (intercept + slope * xv);
            r * r
        })
        .sum();
    let ss_tot: f64 = y.iter().map(|v| (v - y_mean) * (v - y_mean)).sum();
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else if ss_res <= f64::EPSILON {
        1.0
    } else {
        0.0
    };
    let adj_r_squared = 1.0 - (1.0 - r_squared) * (nf - 1.0) / (nf - 2.0);
    Ok(RegressionFit {
        intercept,
        slope,
        r_squared,
        adj_r_squared,
        residual_sigma: (ss_res / (nf - 2.0)).sqrt(),
    })
}

/// Sample Pearson correlation coefficient.
pub fn pearson_corr(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch {
            context: format!("x has {} points, y has {}", x.len(), y.len()),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::TooShort { len: n, min: 2 });
    }
    let nf = n as f64;
    let x_mean = x.iter().sum::<f64>() / nf;
    let y_mean = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - x_mean) * (v - x_mean)).sum();
    let syy: f64 = y.iter().map(|v| (v - y_mean) * (v - y_mean)).sum();
    let eps2 = DEGENERACY_EPSILON * DEGENERACY_EPSILON;
    if sxx / nf <= eps2 || syy / nf <= eps2 {
        return Err(Error::DegenerateSeries {
            sigma: (sxx.min(syy) / nf).sqrt(),
            epsilon: DEGENERACY_EPSILON,
        });
    }
    let sxy: f64 = x
        .iter()
        .zip(y)
        .map(|(xv, yv)| (xv - x_mean) * (yv - y_mean))
        .sum();
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}
