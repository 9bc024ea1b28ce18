//! Ingestion of `.dat` / `.csv` series files and emission of reports and
//! plot data.

pub mod emit;
pub mod parse;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub use emit::{
    acf_plot_csv, acf_sigma_plot_csv, csv_from_value, escape_csv, format_sig, histogram_plot_csv,
    report_json, round_sig, series_plot_csv, write_report, write_text_file, Report, ReportFormat,
};
pub use parse::{parse_csv, parse_dat, ColumnSelector};

/// Where a series lives and how to pull it out of the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub column: ColumnSelector,
    /// Series label; defaults to the file stem when empty.
    #[serde(default)]
    pub name: String,
    /// Physical lines to drop from the top of the file.
    #[serde(default)]
    pub skip_rows: usize,
}

impl DatasetSpec {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            column: ColumnSelector::default(),
            name: String::new(),
            skip_rows: 0,
        }
    }

    pub fn with_column(mut self, column: ColumnSelector) -> Self {
        self.column = column;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Label used for the loaded series.
    pub fn series_name(&self) -> String {
        if !self.name.is_empty() {
            return self.name.clone();
        }
        self.path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.path.display().to_string())
    }
}

/// Reads one numeric column from a `.dat` or `.csv` file, in file order.
///
/// The format is picked by extension: `.csv` (any case) parses as CSV,
/// everything else as whitespace-delimited `.dat`.
pub fn read_series(spec: &DatasetSpec) -> Result<TimeSeries> {
    let path_label = spec.path.display().to_string();
    let text = std::fs::read_to_string(&spec.path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::FileNotFound {
                path: path_label.clone(),
            }
        } else {
            Error::Io {
                path: path_label.clone(),
                source,
            }
        }
    })?;
    let values = if is_csv(&spec.path) {
        parse_csv(&text, &spec.column, spec.skip_rows, &path_label)?
    } else {
        parse_dat(&text, &spec.column, spec.skip_rows, &path_label)?
    };
    TimeSeries::new(values, spec.series_name(), path_label)
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .map(|e| e.eq_ignore_ascii_case("csv"))
        .unwrap_or(false)
}
