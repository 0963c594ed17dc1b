//! Daily-series ingestion and wet-period segmentation.
//!
//! Input files are two-column CSV: ISO-8601 date, precipitation in
//! millimeters, with an optional header line. Comment lines starting with
//! `#` are skipped, so the tool's own CSV output (which begins with a
//! version tag) re-parses cleanly.

use std::fmt::Write as _;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::CSV_VERSION_HEADER;

/// How a missing-value token in the input is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MissingPolicy {
    /// Any missing value is a parse error.
    #[default]
    Reject,
    /// The day is dropped, leaving a date gap (which terminates any open
    /// wet period during segmentation).
    Gap,
}

/// Parsing options for [`parse_daily_csv`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct CsvConfig {
    pub delimiter: char,
    /// Token marking a missing observation (e.g. "NA" or "-999").
    pub missing_token: Option<String>,
    pub missing_policy: MissingPolicy,
}

impl Default for CsvConfig {
    fn default() -> Self {
        Self {
            delimiter: ',',
            missing_token: None,
            missing_policy: MissingPolicy::Reject,
        }
    }
}

/// One station's daily precipitation record.
#[derive(Debug, Clone, PartialEq)]
pub struct DailySeries {
    pub dates: Vec<NaiveDate>,
    pub precip_mm: Vec<f64>,
    pub station_id: String,
}

impl DailySeries {
    pub fn new(dates: Vec<NaiveDate>, precip_mm: Vec<f64>, station_id: String) -> Result<Self> {
        if dates.len() != precip_mm.len() {
            return Err(Error::Validation(format!(
                "{} dates but {} precipitation values",
                dates.len(),
                precip_mm.len()
            )));
        }
        if dates.is_empty() {
            return Err(Error::InsufficientData("empty series".into()));
        }
        for w in dates.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::Validation(format!(
                    "dates must be strictly increasing; {} follows {}",
                    w[1], w[0]
                )));
            }
        }
        for (i, &v) in precip_mm.iter().enumerate() {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Validation(format!(
                    "negative or non-finite precipitation {v} on {}",
                    dates[i]
                )));
            }
        }
        Ok(Self {
            dates,
            precip_mm,
            station_id,
        })
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }
}

/// One maximal run of consecutive wet days.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WetPeriod {
    /// Index of the first wet day in the series.
    pub start_index: usize,
    pub duration_days: u32,
    pub total_volume_mm: f64,
    pub max_daily_mm: f64,
}

/// Parse a daily CSV file.
pub fn parse_daily_csv(path: &Path, config: &CsvConfig) -> Result<DailySeries> {
    let text = std::fs::read_to_string(path)?;
    let station = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "station".to_string());
    parse_daily_str(&text, config, station)
}

/// Parse daily CSV content. Exposed for round-trip testing.
pub fn parse_daily_str(text: &str, config: &CsvConfig, station_id: String) -> Result<DailySeries> {
    let mut dates = Vec::new();
    let mut values = Vec::new();
    let mut saw_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(config.delimiter);
        let date_field = fields.next().unwrap_or("").trim();
        let value_field = fields.next().map(str::trim).ok_or(Error::Parse {
            line: line_no,
            msg: format!("expected two fields separated by {:?}", config.delimiter),
        })?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "more than two fields".into(),
            });
        }

        let date = match NaiveDate::parse_from_str(date_field, "%Y-%m-%d") {
            Ok(d) => d,
            Err(e) => {
                // A single unparsable first row is an optional header.
                if !saw_data {
                    saw_data = true;
                    continue;
                }
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("bad date {date_field:?}: {e}"),
                });
            }
        };
        saw_data = true;

        if let Some(tok) = &config.missing_token {
            if value_field == tok {
                match config.missing_policy {
                    MissingPolicy::Reject => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("missing value on {date}"),
                        })
                    }
                    MissingPolicy::Gap => continue,
                }
            }
        }
        let value: f64 = value_field.parse().map_err(|e| Error::Parse {
            line: line_no,
            msg: format!("bad precipitation value {value_field:?}: {e}"),
        })?;
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("negative or non-finite precipitation {value} on {date}"),
            });
        }
        if let Some(&prev) = dates.last() {
            if date <= prev {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("dates must be strictly increasing; {date} follows {prev}"),
                });
            }
        }
        dates.push(date);
        values.push(value);
    }
    DailySeries::new(dates, values, station_id)
}

/// Serialize a series in the same two-column format the parser reads.
pub fn write_daily_csv(series: &DailySeries) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_VERSION_HEADER}");
    let _ = writeln!(out, "date,precip_mm");
    for (d, v) in series.dates.iter().zip(&series.precip_mm) {
        let _ = writeln!(out, "{d},{v:?}");
    }
    out
}

/// Split a series into maximal runs of days with precipitation strictly
/// above `wet_threshold_mm`. A gap in the calendar dates terminates any open
/// wet period.
pub fn segment_wet_periods(series: &DailySeries, wet_threshold_mm: f64) -> Result<Vec<WetPeriod>> {
    if !(wet_threshold_mm >= 0.0) || !wet_threshold_mm.is_finite() {
        return Err(Error::domain(format!(
            "wet threshold must be nonnegative, got {wet_threshold_mm}"
        )));
    }
    let mut periods = Vec::new();
    let mut open: Option<WetPeriod> = None;
    for i in 0..series.len() {
        let contiguous = i > 0
            && series.dates[i - 1]
                .succ_opt()
                .is_some_and(|next| next == series.dates[i]);
        if !contiguous {
            if let Some(p) = open.take() {
                periods.push(p);
            }
        }
        let v = series.precip_mm[i];
        if v > wet_threshold_mm {
            match open.as_mut() {
                Some(p) => {
                    p.duration_days += 1;
                    p.total_volume_mm += v;
                    p.max_daily_mm = p.max_daily_mm.max(v);
                }
                None => {
                    open = Some(WetPeriod {
                        start_index: i,
                        duration_days: 1,
                        total_volume_mm: v,
                        max_daily_mm: v,
                    });
                }
            }
        } else if let Some(p) = open.take() {
            periods.push(p);
        }
    }
    if let Some(p) = open {
        periods.push(p);
    }
    Ok(periods)
}
