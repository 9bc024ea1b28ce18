//! SAX time-series discretization with PAA shrinkage diagnostics and
//! re-normalization.
//!
//! The pipeline is the classic one: z-normalize, reduce with Piecewise
//! Aggregate Approximation, then map segment means to alphabet symbols at
//! standard-normal breakpoints, with MINDIST as the lower-bounding word
//! distance. The twist this crate adds is diagnostic: PAA shrinks the
//! standard deviation of weakly autocorrelated data (1/sqrt(w) for white
//! noise), which concentrates symbols in the middle of the alphabet. The
//! [`sax::RenormPolicy`] threshold re-normalizes the PAA vector before
//! symbolization when shrinkage crosses tau, restoring symbol
//! equiprobability; [`stats`] and [`study`] quantify the effect and its
//! relationship to the autocorrelation function.
//!
//! Modules:
//! - [`series`]: validated series, z-normalization, PAA
//! - [`sax`]: breakpoints, symbolization, MINDIST, re-normalization
//! - [`stats`]: ACF, Jarque-Bera, chi-squared uniformity, OLS, special functions
//! - [`synth`]: seeded white noise and sinusoid generators
//! - [`io`]: .dat / .csv ingestion, diff-stable reports and plot data
//! - [`study`]: table-producing pipelines and the declarative run driver

pub mod error;
pub mod io;
pub mod sax;
pub mod series;
pub mod stats;
pub mod study;
pub mod synth;

pub use error::{Error, Result};
pub use sax::{
    breakpoints, dist_table, euclidean, mindist, renormalize_paa, sax_transform,
    should_renormalize, symbolize, BreakpointTable, DistTable, RenormPolicy, SaxWord,
    TransformReport,
};
pub use series::{
    paa, paa_with_width, series_stats, z_normalize, NormalizationStats, PaaVector, TimeSeries,
};
pub use stats::{
    acf, acf_sum, chi2_upper_tail, chi_squared_gof, jarque_bera, norm_cdf, norm_inv_cdf, ols_fit,
    pearson_corr, AcfResult, GofReport, NormalityReport, RegressionFit,
};
pub use synth::{sinusoid, sinusoid_with_noise, white_noise, NoiseParams, SinusoidParams};
