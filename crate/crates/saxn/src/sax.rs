//! Gaussian breakpoints, symbolization, MINDIST, and threshold-triggered
//! re-normalization of the PAA vector.
//!
//! Canonical SAX assumes the values entering symbolization are standard
//! normal. PAA of a weakly autocorrelated series shrinks the standard
//! deviation below 1 (by 1/sqrt(w) for white noise), which piles symbols
//! onto the middle of the alphabet. [`renormalize_paa`] rescales the PAA
//! means back to sigma 1 before symbolization, restoring equiprobability;
//! [`RenormPolicy`] decides when that fix is applied.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{paa, z_normalize, PaaVector, TimeSeries, DEGENERACY_EPSILON};
use crate::stats::special::norm_inv_cdf;

/// Largest supported alphabet; symbols render as 'a'..'z'.
pub const MAX_CARDINALITY: usize = 26;

/// Sorted standard-normal quantiles beta_1..beta_{k-1} cutting the real
/// line into k equiprobable regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakpointTable {
    cardinality: usize,
    betas: Vec<f64>,
}

impl BreakpointTable {
    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }
}

/// Computes the breakpoint table for alphabet cardinality k in [2, 26].
///
/// beta_i = inverse normal CDF at i/k; the lower half mirrors the upper
/// half so the table is antisymmetric to the last bit.
pub fn breakpoints(cardinality: usize) -> Result<BreakpointTable> {
    if !(2..=MAX_CARDINALITY).contains(&cardinality) {
        return Err(Error::InvalidCardinality { cardinality });
    }
    let k = cardinality;
    let mut betas = Vec::with_capacity(k - 1);
    for i in 1..k {
        let beta = if 2 * i == k {
            0.0
        } else if 2 * i > k {
            norm_inv_cdf(i as f64 / k as f64)?
        } else {
            -norm_inv_cdf((k - i) as f64 / k as f64)?
        };
        betas.push(beta);
    }
    debug_assert!(betas.windows(2).all(|w| w[0] < w[1]));
    Ok(BreakpointTable {
        cardinality: k,
        betas,
    })
}

/// Symbol-pair distance lookup: zero on and next to the diagonal, breakpoint
/// differences further out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistTable {
    cardinality: usize,
    cells: Vec<f64>,
}

impl DistTable {
    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    /// Distance between symbol indices `r` and `c`.
    pub fn cell(&self, r: usize, c: usize) -> f64 {
        self.cells[r * self.cardinality + c]
    }
}

/// Builds the MINDIST lookup table from a breakpoint table.
pub fn dist_table(breakpoints: &BreakpointTable) -> DistTable {
    let k = breakpoints.cardinality();
    let betas = breakpoints.betas();
    let mut cells = vec![0.0; k * k];
    for r in 0..k {
        for c in 0..k {
            if r.abs_diff(c) > 1 {
                cells[r * k + c] = betas[r.max(c) - 1] - betas[r.min(c)];
            }
        }
    }
    DistTable {
        cardinality: k,
        cells,
    }
}

/// A symbolized series: symbol indices, the alphabet they come from, and
/// the shape of the series they encode.
///
/// The wire form is the plain lowercase rendering ("ccbaaacbbaabcca");
/// [`SaxWord::parse`] reverses it given the cardinality and origin length
/// the string does not carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaxWord {
    symbols: Vec<u8>,
    cardinality: usize,
    origin_length: usize,
    segment_width: usize,
}

impl Serialize for SaxWord {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl SaxWord {
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Word length m.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn origin_length(&self) -> usize {
        self.origin_length
    }

    pub fn segment_width(&self) -> usize {
        self.segment_width
    }

    /// Occurrences of each symbol, indexed by symbol.
    pub fn symbol_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.cardinality];
        for &s in &self.symbols {
            counts[s as usize] += 1;
        }
        counts
    }

    /// Parses the lowercase rendering back into a word.
    ///
    /// `origin_length` is the length n of the series the word stands for;
    /// it must be a multiple of the word length.
    pub fn parse(text: &str, cardinality: usize, origin_length: usize) -> Result<SaxWord> {
        if !(2..=MAX_CARDINALITY).contains(&cardinality) {
            return Err(Error::InvalidCardinality { cardinality });
        }
        if text.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let index = (ch as u32).wrapping_sub('a' as u32);
            if index >= cardinality as u32 {
                return Err(Error::InvalidSymbol {
                    symbol: ch,
                    cardinality,
                });
            }
            symbols.push(index as u8);
        }
        let m = symbols.len();
        if origin_length == 0 || !origin_length.is_multiple_of(m) {
            return Err(Error::IndivisibleLength {
                len: origin_length,
                word_length: m,
            });
        }
        Ok(SaxWord {
            symbols,
            cardinality,
            origin_length,
            segment_width: origin_length / m,
        })
    }
}

impl fmt::Display for SaxWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", (b'a' + s) as char)?;
        }
        Ok(())
    }
}

/// Maps each PAA mean to the alphabet region it falls in.
///
/// A mean equal to a breakpoint takes the upper region, so symbolization
/// is monotone and deterministic at boundaries.
pub fn symbolize(paa: &PaaVector, breakpoints: &BreakpointTable) -> SaxWord {
    let betas = breakpoints.betas();
    let symbols = paa
        .means()
        .iter()
        .map(|&v| betas.partition_point(|&b| b <= v) as u8)
        .collect();
    SaxWord {
        symbols,
        cardinality: breakpoints.cardinality(),
        origin_length: paa.origin_length(),
        segment_width: paa.segment_width(),
    }
}

/// When to re-normalize the PAA vector before symbolization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum RenormPolicy {
    /// Canonical SAX.
    Never,
    /// Unconditional re-normalization.
    Always,
    /// Re-normalize only when the post-PAA sigma drops below tau.
    Threshold { tau: f64 },
}

impl RenormPolicy {
    pub const DEFAULT_TAU: f64 = 0.95;

    /// Threshold policy at the default tau.
    pub fn threshold_default() -> Self {
        RenormPolicy::Threshold {
            tau: Self::DEFAULT_TAU,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let RenormPolicy::Threshold { tau } = self {
            if !(*tau > 0.0 && *tau <= 1.0) {
                return Err(Error::InvalidConfig {
                    context: format!("renorm threshold tau {tau} outside (0, 1]"),
                });
            }
        }
        Ok(())
    }
}

impl Default for RenormPolicy {
    fn default() -> Self {
        RenormPolicy::threshold_default()
    }
}

/// Decides whether `policy` re-normalizes this PAA vector.
///
/// Threshold mode compares the population sigma of the means strictly
/// against tau; sigma exactly at tau does not fire.
pub fn should_renormalize(paa: &PaaVector, policy: RenormPolicy) -> bool {
    match policy {
        RenormPolicy::Never => false,
        RenormPolicy::Always => true,
        RenormPolicy::Threshold { tau } => paa.post_stats().sigma < tau,
    }
}

/// Rescales the PAA means to mean 0 and population sigma 1.
///
/// A positive affine map, so symbol order of any two means is preserved.
pub fn renormalize_paa(paa: &PaaVector) -> Result<PaaVector> {
    let stats = paa.post_stats();
    if stats.sigma <= DEGENERACY_EPSILON {
        return Err(Error::DegeneratePaa {
            sigma: stats.sigma,
            epsilon: DEGENERACY_EPSILON,
        });
    }
    let means = paa
        .means()
        .iter()
        .map(|v| (v - stats.mu) / stats.sigma)
        .collect();
    PaaVector::from_means(means, paa.segment_width(), paa.origin_length())
}

/// What a transform did: the sigma it saw, the sigma it symbolized, and
/// whether the re-normalization step fired.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    /// Population sigma of the PAA means straight after PAA.
    pub pre_sigma: f64,
    /// Population sigma of the means actually symbolized.
    pub post_sigma: f64,
    pub renormalized: bool,
    /// Word length.
    pub m: usize,
    /// Alphabet cardinality.
    pub k: usize,
    /// Segment width n / m.
    pub w: usize,
    /// Source series length.
    pub n: usize,
}

/// Full pipeline: z-normalize, PAA, optional re-normalization, symbolize.
pub fn sax_transform(
    series: &TimeSeries,
    word_length: usize,
    cardinality: usize,
    policy: RenormPolicy,
) -> Result<(SaxWord, TransformReport)> {
    policy.validate()?;
    let table = breakpoints(cardinality)?;
    let (normalized, _) = z_normalize(series)?;
    let vector = paa(&normalized, word_length)?;
    let pre_sigma = vector.post_stats().sigma;
    let renormalized = should_renormalize(&vector, policy);
    let vector = if renormalized {
        renormalize_paa(&vector)?
    } else {
        vector
    };
    let post_sigma = vector.post_stats().sigma;
    let word = symbolize(&vector, &table);
    let report = TransformReport {
        pre_sigma,
        post_sigma,
        renormalized,
        m: word_length,
        k: cardinality,
        w: vector.segment_width(),
        n: series.len(),
    };
    Ok((word, report))
}

/// MINDIST between two words over the same alphabet and origin shape:
/// sqrt(n/m) * sqrt(sum of squared cell distances).
pub fn mindist(a: &SaxWord, b: &SaxWord, table: &DistTable) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            context: format!("word lengths {} and {}", a.len(), b.len()),
        });
    }
    if a.cardinality() != b.cardinality() || a.cardinality() != table.cardinality() {
        return Err(Error::ShapeMismatch {
            context: format!(
                "cardinalities {} / {} / table {}",
                a.cardinality(),
                b.cardinality(),
                table.cardinality()
            ),
        });
    }
    if a.origin_length() != b.origin_length() {
        return Err(Error::ShapeMismatch {
            context: format!(
                "origin lengths {} and {}",
                a.origin_length(),
                b.origin_length()
            ),
        });
    }
    let sum_sq: f64 = a
        .symbols()
        .iter()
        .zip(b.symbols())
        .map(|(&sa, &sb)| {
            let d = table.cell(sa as usize, sb as usize);
            d * d
        })
        .sum();
    Ok((a.origin_length() as f64 / a.len() as f64).sqrt() * sum_sq.sqrt())
}

/// Euclidean distance between equal-length series.
pub fn euclidean(a: &TimeSeries, b: &TimeSeries) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            context: format!("series lengths {} and {}", a.len(), b.len()),
        });
    }
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}
