//! Time-series representation, z-normalization and Piecewise Aggregate
//! Approximation.
//!
//! Everything here is a pure function of immutable inputs. The standard
//! deviation convention throughout the crate is the population one
//! (divide by n), which is what the symbol-equiprobability argument and
//! the 1/sqrt(w) white-noise law are stated in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variance below this is treated as a constant series.
pub const DEGENERACY_EPSILON: f64 = 1e-12;

/// An ordered, finite, real-valued sample sequence with provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    name: String,
    /// Where the data came from: a file path or a generator spec in JSON.
    source: String,
}

impl TimeSeries {
    /// Builds a series, rejecting empty input and non-finite samples.
    pub fn new(
        values: Vec<f64>,
        name: impl Into<String>,
        source: impl Into<String>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            values,
            name: name.into(),
            source: source.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Same values under a different label.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Drops trailing samples so the length becomes the largest multiple of
    /// `width`. Used before PAA when the length is not divisible.
    pub fn truncated_to_multiple(&self, width: usize) -> Result<TimeSeries> {
        if width == 0 || width > self.len() {
            return Err(Error::InvalidWordLength {
                len: self.len(),
                word_length: width,
            });
        }
        let keep = (self.len() / width) * width;
        TimeSeries::new(
            self.values[..keep].to_vec(),
            self.name.clone(),
            self.source.clone(),
        )
    }
}

/// Mean and population standard deviation removed by (or describing) a
/// normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationStats {
    pub mu: f64,
    pub sigma: f64,
}

/// Segment means produced by PAA, with enough context to invert the shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaaVector {
    means: Vec<f64>,
    segment_width: usize,
    origin_length: usize,
    post_stats: NormalizationStats,
}

impl PaaVector {
    /// Assembles a PAA vector from parts, recomputing the stats of the means.
    ///
    /// `origin_length` must equal `segment_width * means.len()`.
    pub fn from_means(means: Vec<f64>, segment_width: usize, origin_length: usize) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        if let Some(index) = means.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if segment_width * means.len() != origin_length {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "origin length {} != segment width {} x {} means",
                    origin_length,
                    segment_width,
                    means.len()
                ),
            });
        }
        let post_stats = slice_stats(&means);
        Ok(Self {
            means,
            segment_width,
            origin_length,
            post_stats,
        })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Word length m.
    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    /// Samples per segment, w = n / m.
    pub fn segment_width(&self) -> usize {
        self.segment_width
    }

    /// Length n of the series the vector was derived from.
    pub fn origin_length(&self) -> usize {
        self.origin_length
    }

    /// Mean and population sigma of the segment means.
    pub fn post_stats(&self) -> NormalizationStats {
        self.post_stats
    }
}

/// Kahan compensated sum; keeps block sums exact enough that the
/// mean-preservation invariant holds at 1e-9 up to 1e7 samples.
fn kahan_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn slice_stats(values: &[f64]) -> NormalizationStats {
    let n = values.len() as f64;
    let mu = kahan_sum(values) / n;
    let sq: Vec<f64> = values.iter().map(|v| (v - mu) * (v - mu)).collect();
    let sigma = (kahan_sum(&sq) / n).sqrt();
    NormalizationStats { mu, sigma }
}

/// Mean and population standard deviation of a series.
pub fn series_stats(series: &TimeSeries) -> NormalizationStats {
    slice_stats(series.values())
}

/// Rescales a series to mean 0 and population sigma 1, returning the stats
/// removed so the transform is invertible.
///
/// Errors with [`Error::DegenerateSeries`] on (near-)constant input and
/// [`Error::TooShort`] below two samples.
pub fn z_normalize(series: &TimeSeries) -> Result<(TimeSeries, NormalizationStats)> {
    if series.len() < 2 {
        return Err(Error::TooShort {
            len: series.len(),
            min: 2,
        });
    }
    let stats = series_stats(series);
    if stats.sigma <= DEGENERACY_EPSILON {
        return Err(Error::DegenerateSeries {
            sigma: stats.sigma,
            epsilon: DEGENERACY_EPSILON,
        });
    }
    let values = series
        .values()
        .iter()
        .map(|v| (v - stats.mu) / stats.sigma)
        .collect();
    let normalized = TimeSeries::new(values, series.name(), series.source())?;
    Ok((normalized, stats))
}

/// Piecewise Aggregate Approximation: replaces the series with the means of
/// `word_length` equal-size consecutive segments.
///
/// The word length must divide the series length exactly; callers that want
/// lossy behaviour truncate first via [`TimeSeries::truncated_to_multiple`].
pub fn paa(series: &TimeSeries, word_length: usize) -> Result<PaaVector> {
    let n = series.len();
    if word_length < 1 || word_length > n {
        return Err(Error::InvalidWordLength {
            len: n,
            word_length,
        });
    }
    if !n.is_multiple_of(word_length) {
        return Err(Error::IndivisibleLength {
            len: n,
            word_length,
        });
    }
    let width = n / word_length;
    let scale = word_length as f64 / n as f64;
    let means: Vec<f64> = series
        .values()
        .chunks_exact(width)
        .map(|block| scale * kahan_sum(block))
        .collect();
    PaaVector::from_means(means, width, n)
}

/// PAA parameterized by segment width w instead of word length m.
pub fn paa_with_width(series: &TimeSeries, segment_width: usize) -> Result<PaaVector> {
    let n = series.len();
    if segment_width < 1 || segment_width > n {
        return Err(Error::InvalidWordLength {
            len: n,
            word_length: segment_width,
        });
    }
    if !n.is_multiple_of(segment_width) {
        return Err(Error::IndivisibleLength {
            len: n,
            word_length: segment_width,
        });
    }
    paa(series, n / segment_width)
}
