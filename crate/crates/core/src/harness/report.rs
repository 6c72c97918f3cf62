//! Report structure and CSV/JSON emission.
//!
//! CSV layout (RFC 4180): `algorithm,fraction,seed,error_rate,mean_regret,
//! mean_evals,min_evals,max_evals`, one row per (algorithm, fraction, seed)
//! followed by one aggregate row per (algorithm, fraction) with seed `all`.
//! JSON mirrors the full [`Report`] structure, including the per-seed
//! min/max bands the CSV aggregates cannot carry.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::harness::HarnessError;

/// Metrics for one (algorithm, fraction, seed) cell, averaged over instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub algorithm: String,
    pub fraction: f64,
    pub seed: u64,
    /// Fraction of instances whose pick differs from exact MBR.
    pub error_rate: f64,
    /// Mean gap in exact full-pool mean utility to the exact winner.
    pub mean_regret: f64,
    pub mean_evals: f64,
    pub min_evals: usize,
    pub max_evals: usize,
}

/// Per-(algorithm, fraction) aggregate over seeds: means plus min/max bands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportAggregate {
    pub algorithm: String,
    pub fraction: f64,
    pub error_rate: f64,
    pub error_rate_min: f64,
    pub error_rate_max: f64,
    pub mean_regret: f64,
    pub mean_regret_min: f64,
    pub mean_regret_max: f64,
    pub mean_evals: f64,
    pub min_evals: usize,
    pub max_evals: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub aggregates: Vec<ReportAggregate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportFormat {
    /// Picks a format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> ReportFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => ReportFormat::Json,
            _ => ReportFormat::Csv,
        }
    }
}

const CSV_HEADER: [&str; 8] = [
    "algorithm",
    "fraction",
    "seed",
    "error_rate",
    "mean_regret",
    "mean_evals",
    "min_evals",
    "max_evals",
];

impl Report {
    /// Builds a report from per-seed rows, computing one aggregate per
    /// (algorithm, fraction) in first-appearance order.
    pub fn from_rows(rows: Vec<ReportRow>) -> Report {
        let mut keys: Vec<(String, f64)> = Vec::new();
        for row in &rows {
            if !keys
                .iter()
                .any(|(a, f)| a == &row.algorithm && *f == row.fraction)
            {
                keys.push((row.algorithm.clone(), row.fraction));
            }
        }
        let aggregates = keys
            .into_iter()
            .map(|(algorithm, fraction)| {
                let group: Vec<&ReportRow> = rows
                    .iter()
                    .filter(|r| r.algorithm == algorithm && r.fraction == fraction)
                    .collect();
                let k = group.len() as f64;
                let mean = |f: fn(&ReportRow) -> f64| group.iter().map(|r| f(r)).sum::<f64>() / k;
                let fmin = |f: fn(&ReportRow) -> f64| {
                    group.iter().map(|r| f(r)).fold(f64::INFINITY, f64::min)
                };
                let fmax = |f: fn(&ReportRow) -> f64| {
                    group.iter().map(|r| f(r)).fold(f64::NEG_INFINITY, f64::max)
                };
                ReportAggregate {
                    algorithm,
                    fraction,
                    error_rate: mean(|r| r.error_rate),
                    error_rate_min: fmin(|r| r.error_rate),
                    error_rate_max: fmax(|r| r.error_rate),
                    mean_regret: mean(|r| r.mean_regret),
                    mean_regret_min: fmin(|r| r.mean_regret),
                    mean_regret_max: fmax(|r| r.mean_regret),
                    mean_evals: mean(|r| r.mean_evals),
                    min_evals: group.iter().map(|r| r.min_evals).min().unwrap_or(0),
                    max_evals: group.iter().map(|r| r.max_evals).max().unwrap_or(0),
                }
            })
            .collect();
        Report { rows, aggregates }
    }

    pub fn to_csv_string(&self) -> Result<String, HarnessError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(CSV_HEADER)?;
        for row in &self.rows {
            writer.write_record([
                row.algorithm.as_str(),
                &row.fraction.to_string(),
                &row.seed.to_string(),
                &row.error_rate.to_string(),
                &row.mean_regret.to_string(),
                &row.mean_evals.to_string(),
                &row.min_evals.to_string(),
                &row.max_evals.to_string(),
            ])?;
        }
        for agg in &self.aggregates {
            writer.write_record([
                agg.algorithm.as_str(),
                &agg.fraction.to_string(),
                "all",
                &agg.error_rate.to_string(),
                &agg.mean_regret.to_string(),
                &agg.mean_evals.to_string(),
                &agg.min_evals.to_string(),
                &agg.max_evals.to_string(),
            ])?;
        }
        let bytes = writer.into_inner().expect("vec writer cannot fail");
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json_string(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses per-seed rows from CSV and recomputes the aggregates; aggregate
    /// rows (seed `all`) in the input are checked for shape and skipped.
    pub fn from_csv_reader<R: std::io::Read>(reader: R) -> Result<Report, HarnessError> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        {
            let headers = csv_reader.headers()?;
            if headers.len() != CSV_HEADER.len() {
                return Err(HarnessError::Parse {
                    line: 1,
                    message: format!(
                        "expected {} columns, found {}",
                        CSV_HEADER.len(),
                        headers.len()
                    ),
                });
            }
        }
        let mut rows = Vec::new();
        for (index, record) in csv_reader.records().enumerate() {
            let record = record?;
            let line = index + 2;
            let parse_f64 = |pos: usize| -> Result<f64, HarnessError> {
                record[pos].parse().map_err(|_| HarnessError::Parse {
                    line,
                    message: format!("column `{}`: not a number: {}", CSV_HEADER[pos], &record[pos]),
                })
            };
            let parse_usize = |pos: usize| -> Result<usize, HarnessError> {
                record[pos].parse().map_err(|_| HarnessError::Parse {
                    line,
                    message: format!("column `{}`: not a count: {}", CSV_HEADER[pos], &record[pos]),
                })
            };
            if &record[2] == "all" {
                // Aggregates are derived data; validate the numerics and move on.
                for pos in [1, 3, 4, 5] {
                    parse_f64(pos)?;
                }
                continue;
            }
            rows.push(ReportRow {
                algorithm: record[0].to_string(),
                fraction: parse_f64(1)?,
                seed: record[2].parse().map_err(|_| HarnessError::Parse {
                    line,
                    message: format!("column `seed`: not an integer: {}", &record[2]),
                })?,
                error_rate: parse_f64(3)?,
                mean_regret: parse_f64(4)?,
                mean_evals: parse_f64(5)?,
                min_evals: parse_usize(6)?,
                max_evals: parse_usize(7)?,
            });
        }
        Ok(Report::from_rows(rows))
    }

    pub fn from_json_str(json: &str) -> Result<Report, HarnessError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn write(&self, path: &Path, format: ReportFormat) -> Result<(), HarnessError> {
        let text = match format {
            ReportFormat::Csv => self.to_csv_string()?,
            ReportFormat::Json => self.to_json_string()?,
        };
        let mut file = File::create(path)?;
        file.write_all(text.as_bytes())?;
        Ok(())
    }
}

/// Writes the report to `path` in the given format.
pub fn emit_report(report: &Report, path: &Path, format: ReportFormat) -> Result<(), HarnessError> {
    report.write(path, format)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<ReportRow> {
        vec![
            ReportRow {
                algorithm: "ambr".into(),
                fraction: 0.03125,
                seed: 0,
                error_rate: 0.25,
                mean_regret: 0.01,
                mean_evals: 120.0,
                min_evals: 100,
                max_evals: 126,
            },
            ReportRow {
                algorithm: "ambr".into(),
                fraction: 0.03125,
                seed: 1,
                error_rate: 0.15,
                mean_regret: 0.02,
                mean_evals: 121.0,
                min_evals: 99,
                max_evals: 125,
            },
        ]
    }

    #[test]
    fn empty_report_is_header_only() {
        let report = Report::from_rows(Vec::new());
        let csv = report.to_csv_string().unwrap();
        assert_eq!(
            csv.trim(),
            "algorithm,fraction,seed,error_rate,mean_regret,mean_evals,min_evals,max_evals"
        );
    }

    #[test]
    fn one_row_emits_all_eight_columns_plus_aggregate() {
        let report = Report::from_rows(sample_rows()[..1].to_vec());
        let csv = report.to_csv_string().unwrap();
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1].split(',').count(), 8);
        assert!(lines[2].contains(",all,"));
    }

    #[test]
    fn aggregates_bound_their_rows() {
        let report = Report::from_rows(sample_rows());
        let agg = &report.aggregates[0];
        assert_eq!(agg.error_rate, 0.2);
        assert_eq!(agg.error_rate_min, 0.15);
        assert_eq!(agg.error_rate_max, 0.25);
        assert_eq!(agg.min_evals, 99);
        assert_eq!(agg.max_evals, 126);
        for row in &report.rows {
            assert!(agg.error_rate_min <= row.error_rate);
            assert!(row.error_rate <= agg.error_rate_max);
        }
    }

    #[test]
    fn json_csv_json_round_trip_preserves_rows() {
        let report = Report::from_rows(sample_rows());
        let json = report.to_json_string().unwrap();
        let from_json = Report::from_json_str(&json).unwrap();
        assert_eq!(from_json, report);
        let csv = report.to_csv_string().unwrap();
        let reparsed = Report::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(reparsed.rows, report.rows);
        assert_eq!(reparsed.aggregates, report.aggregates);
    }

    #[test]
    fn conversion_chain_is_bit_exact_on_hard_floats() {
        // Values whose shortest decimal form stresses float parsing; the
        // csv -> json -> csv chain must reproduce every byte.
        let mut rows = sample_rows();
        rows[0].mean_regret = 0.10171891237886137;
        rows[1].error_rate = 2.0 / 3.0;
        let report = Report::from_rows(rows);
        let csv = report.to_csv_string().unwrap();
        let via_json = Report::from_json_str(
            &Report::from_csv_reader(csv.as_bytes())
                .unwrap()
                .to_json_string()
                .unwrap(),
        )
        .unwrap();
        assert_eq!(via_json.to_csv_string().unwrap(), csv);
    }

    #[test]
    fn csv_quoting_survives_commas_in_names() {
        let mut rows = sample_rows();
        rows[0].algorithm = "weird,name".into();
        rows.truncate(1);
        let report = Report::from_rows(rows);
        let csv = report.to_csv_string().unwrap();
        assert!(csv.contains("\"weird,name\""));
        let reparsed = Report::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(reparsed.rows[0].algorithm, "weird,name");
    }

    #[test]
    fn malformed_numeric_cells_are_rejected_with_line() {
        let csv = "algorithm,fraction,seed,error_rate,mean_regret,mean_evals,min_evals,max_evals\nambr,0.5,0,oops,0,0,0,0\n";
        match Report::from_csv_reader(csv.as_bytes()) {
            Err(HarnessError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
