//! Diff-stable report and plot-data emission.
//!
//! Every float lands in an artifact rounded to 7 significant digits, JSON
//! objects carry sorted keys, and nothing emits wall-clock state, so two
//! runs over identical inputs produce byte-identical files.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::stats::AcfResult;

/// Significant digits used for all emitted floats.
pub const EMIT_SIG_DIGITS: usize = 7;

/// Output format for [`write_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// A serializable report that can also render itself as CSV.
///
/// The default CSV rendering flattens the JSON form: an object becomes a
/// header row plus one value row, an array of objects becomes a header
/// plus one row per element. Types with a conventional tabular layout
/// override it.
pub trait Report: Serialize {
    fn to_csv(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        csv_from_value(&value)
    }
}

impl<T: Report> Report for Vec<T> {}
impl<T: Report> Report for &T {}

impl Report for crate::stats::GofReport {}
impl Report for crate::stats::NormalityReport {}
impl Report for crate::stats::RegressionFit {}
impl Report for crate::stats::AcfResult {}
impl Report for crate::sax::TransformReport {}

/// Writes a report to `path` in the requested format.
///
/// JSON output has sorted keys and floats rounded to 7 significant
/// digits; identical inputs produce identical bytes.
pub fn write_report<T: Report>(report: &T, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Json => report_json(report)?,
        ReportFormat::Csv => report.to_csv(),
    };
    write_text_file(path, &text)
}

/// The JSON rendering used by [`write_report`], exposed for stdout use.
pub fn report_json<T: Serialize>(report: &T) -> Result<String> {
    let mut value = serde_json::to_value(report).map_err(|e| Error::InvalidConfig {
        context: format!("report not serializable: {e}"),
    })?;
    round_floats(&mut value);
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::InvalidConfig {
        context: format!("report not serializable: {e}"),
    })?;
    text.push('\n');
    Ok(text)
}

pub fn write_text_file(path: &Path, text: &str) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(text.as_bytes()).map_err(io_err)
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// Fixed 7-significant-digit rendering: plain notation in a sane magnitude
/// range, exponent notation outside it. Stable across platforms.
pub fn format_sig(x: f64) -> String {
    let digits = EMIT_SIG_DIGITS;
    let rounded = round_sig(x, digits);
    if rounded == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let exp = rounded.abs().log10().floor() as i32;
    if exp < -4 || exp >= digits as i32 {
        format!("{:.*e}", digits - 1, rounded)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, rounded)
    }
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(f) = n.as_f64() {
                    if let Some(rounded) =
                        serde_json::Number::from_f64(round_sig(f, EMIT_SIG_DIGITS))
                    {
                        *n = rounded;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Quotes a CSV field when it contains separators or quotes.
pub fn escape_csv(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => {
            if n.is_f64() {
                format_sig(n.as_f64().unwrap_or(0.0))
            } else {
                n.to_string()
            }
        }
        Value::String(s) => escape_csv(s),
        other => escape_csv(&other.to_string()),
    }
}

/// Generic JSON-to-CSV flattening used by the default [`Report::to_csv`].
pub fn csv_from_value(value: &Value) -> String {
    match value {
        Value::Array(items) => {
            if items.is_empty() {
                return String::new();
            }
            if items.iter().all(|i| i.is_object()) {
                let mut keys: Vec<&String> = Vec::new();
                for item in items {
                    for key in item.as_object().expect("checked").keys() {
                        if !keys.contains(&key) {
                            keys.push(key);
                        }
                    }
                }
                keys.sort();
                let mut out = keys
                    .iter()
                    .map(|k| escape_csv(k))
                    .collect::<Vec<_>>()
                    .join(",");
                out.push('\n');
                for item in items {
                    let obj = item.as_object().expect("checked");
                    let row: Vec<String> = keys
                        .iter()
                        .map(|k| obj.get(*k).map(csv_cell).unwrap_or_default())
                        .collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            } else {
                let mut out = String::from("value\n");
                for item in items {
                    out.push_str(&csv_cell(item));
                    out.push('\n');
                }
                out
            }
        }
        Value::Object(map) => {
            let keys: Vec<&String> = map.keys().collect();
            let header = keys
                .iter()
                .map(|k| escape_csv(k))
                .collect::<Vec<_>>()
                .join(",");
            let row = keys
                .iter()
                .map(|k| csv_cell(&map[k.as_str()]))
                .collect::<Vec<_>>()
                .join(",");
            format!("{header}\n{row}\n")
        }
        other => format!("{}\n", csv_cell(other)),
    }
}

/// Long-format plot rows for a raw series: `t,value,label`.
pub fn series_plot_csv(series: &TimeSeries) -> String {
    let label = escape_csv(series.name());
    let mut out = String::from("t,value,label\n");
    for (t, v) in series.values().iter().enumerate() {
        out.push_str(&format!("{t},{},{label}\n", format_sig(*v)));
    }
    out
}

/// Correlogram rows `lag,coefficient,label,band`; `band` is the positive
/// half of the 1.96/sqrt(n) white-noise band.
pub fn acf_plot_csv(acf: &AcfResult, label: &str) -> String {
    let label = escape_csv(label);
    let band = format_sig(acf.significance_band);
    let mut out = String::from("lag,coefficient,label,band\n");
    for (lag, r) in acf.coefficients.iter().enumerate() {
        out.push_str(&format!("{lag},{},{label},{band}\n", format_sig(*r)));
    }
    out
}

/// Symbol histogram rows `symbol,frequency,label`.
pub fn histogram_plot_csv(counts: &[u64], label: &str) -> String {
    let label = escape_csv(label);
    let mut out = String::from("symbol,frequency,label\n");
    for (index, count) in counts.iter().enumerate() {
        let symbol = (b'a' + index as u8) as char;
        out.push_str(&format!("{symbol},{count},{label}\n"));
    }
    out
}

/// Per-series rows `series_name,acf_sum,post_paa_sigma` relating ACF mass
/// to PAA shrinkage.
pub fn acf_sigma_plot_csv(rows: &[(String, f64, f64)]) -> String {
    let mut out = String::from("series_name,acf_sum,post_paa_sigma\n");
    for (name, acf_sum, sigma) in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            escape_csv(name),
            format_sig(*acf_sum),
            format_sig(*sigma)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::GofReport;

    #[test]
    fn format_sig_stable_examples() {
        assert_eq!(format_sig(0.0), "0.000000");
        assert_eq!(format_sig(1.348_979_500_392_163_4), "1.348980");
        assert_eq!(format_sig(158.89), "158.8900");
        assert_eq!(format_sig(0.316_666_6), "0.3166666");
        assert_eq!(format_sig(-0.618_034), "-0.6180340");
        assert_eq!(format_sig(10_000.0), "10000.00");
        assert_eq!(format_sig(0.999_999_96), "1.000000");
        assert_eq!(format_sig(1e-9), "1.000000e-9");
        assert_eq!(format_sig(123_456_789.0), "1.234568e8");
    }

    #[test]
    fn round_sig_seven_digits() {
        assert_eq!(round_sig(0.123_456_789, 7), 0.123_456_8);
        assert_eq!(round_sig(0.0, 7), 0.0);
    }

    #[test]
    fn json_report_sorted_keys_and_rounded_floats() {
        let report = GofReport {
            statistic: 10.123_456_789,
            dof: 2,
            p_value: 0.006_737_946_999_085_467,
            abs_dev_pct: 100.0 / 3.0,
            reject_at_5pct: true,
        };
        let json = report_json(&report).unwrap();
        let keys: Vec<usize> = [
            "abs_dev_pct",
            "dof",
            "p_value",
            "reject_at_5pct",
            "statistic",
        ]
        .iter()
        .map(|k| json.find(&format!("\"{k}\"")).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "keys not sorted");
        assert!(json.contains("0.006737947"));
        assert!(json.contains("10.12346"));
    }

    #[test]
    fn json_report_is_bit_stable() {
        let report = GofReport {
            statistic: 1.0,
            dof: 4,
            p_value: 0.5,
            abs_dev_pct: 8.33,
            reject_at_5pct: false,
        };
        assert_eq!(report_json(&report).unwrap(), report_json(&report).unwrap());
    }

    #[test]
    fn csv_flatten_object_and_list() {
        let report = GofReport {
            statistic: 2.0,
            dof: 1,
            p_value: 0.157_299_2,
            abs_dev_pct: 10.0,
            reject_at_5pct: false,
        };
        let csv = report.to_csv();
        assert!(csv.starts_with("abs_dev_pct,dof,p_value,reject_at_5pct,statistic\n"));
        assert!(csv.lines().nth(1).unwrap().contains("0.1572992"));

        let empty: Vec<GofReport> = vec![];
        assert_eq!(empty.to_csv(), "");
    }

    #[test]
    fn escape_csv_quotes() {
        assert_eq!(escape_csv("plain"), "plain");
        assert_eq!(escape_csv("a,b"), "\"a,b\"");
        assert_eq!(escape_csv("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn histogram_rows_use_letters() {
        let csv = histogram_plot_csv(&[3, 1, 2], "demo");
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "symbol,frequency,label");
        assert_eq!(lines[1], "a,3,demo");
        assert_eq!(lines[3], "c,2,demo");
    }

    #[test]
    fn acf_plot_has_band_column() {
        let acf = AcfResult {
            coefficients: vec![1.0, 0.5],
            n: 100,
            significance_band: 0.196,
        };
        let csv = acf_plot_csv(&acf, "s");
        assert_eq!(csv.lines().next().unwrap(), "lag,coefficient,label,band");
        assert!(csv.contains("0,1.000000,s,0.1960000"));
        assert!(csv.contains("1,0.5000000,s,0.1960000"));
    }
}
