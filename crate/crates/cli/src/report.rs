//! Report records and their JSON / CSV encodings.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tausum_core::{BoundBreakdown, CertifiedValue, QuadraticPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
}

impl Verdict {
    pub fn from_holds(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub b: i64,
    pub c: i64,
    pub delta: i64,
}

impl From<&QuadraticPoly> for PolyRecord {
    fn from(p: &QuadraticPoly) -> Self {
        Self {
            b: p.b(),
            c: p.c(),
            delta: p.delta(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRecord {
    pub value: f64,
    pub error_radius: f64,
}

impl From<CertifiedValue> for CertifiedRecord {
    fn from(v: CertifiedValue) -> Self {
        Self {
            value: v.value,
            error_radius: v.error_radius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakdownRecord {
    pub main_term: f64,
    pub linear_term: f64,
    pub x_term: f64,
    pub n_over_sqrtx_term: f64,
    pub sqrtx_term: f64,
    pub total: f64,
    pub x: f64,
}

impl From<&BoundBreakdown> for BreakdownRecord {
    fn from(b: &BoundBreakdown) -> Self {
        Self {
            main_term: b.main_term,
            linear_term: b.linear_term,
            x_term: b.x_term,
            n_over_sqrtx_term: b.n_over_sqrtx_term,
            sqrtx_term: b.sqrtx_term,
            total: b.total,
            x: b.x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: u64,
    pub exact_sum: u64,
    pub square_count: u64,
    /// Whether the factorization engine confirmed `exact_sum`.
    pub cross_checked: bool,
    pub bound: BreakdownRecord,
    pub margin: f64,
    /// `exact_sum / main_term`.
    pub ratio_to_main_term: f64,
}

/// Outcome of checking the explicit bound for one polynomial over a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub poly: PolyRecord,
    pub grid: Vec<u64>,
    pub points: Vec<GridPoint>,
    pub l_value: CertifiedRecord,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquarePlusOnePoint {
    pub n: u64,
    pub exact_sum: u64,
    pub bound: f64,
    pub main_term: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquarePlusOneReport {
    pub n_max: u64,
    /// Every `N <= exhaustive_limit` was checked.
    pub exhaustive_limit: u64,
    pub exhaustive_min_margin: f64,
    pub exhaustive_min_margin_at: u64,
    /// Sampled points beyond the exhaustive range (and the range's endpoint).
    pub points: Vec<SquarePlusOnePoint>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LValueRow {
    pub poly: PolyRecord,
    pub modulus: u64,
    pub l_value: CertifiedRecord,
    pub reference: f64,
    pub deviation: f64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub lemma: String,
    pub scope: String,
    pub checked: u64,
    pub detail: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub poly: PolyRecord,
    pub n: u64,
    pub exact_sum: u64,
    pub asymptotic_constant: CertifiedRecord,
    pub ratio: f64,
    pub envelope: f64,
    pub within_envelope: bool,
}

/// Writes `value` as pretty-printed JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(&mut file, value)?;
    file.write_all(b"\n")?;
    file.flush()
}

/// One CSV row of a verify command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub poly_b: i64,
    pub poly_c: i64,
    pub delta: i64,
    #[serde(rename = "N")]
    pub n: u64,
    pub exact_sum: u64,
    pub bound_total: f64,
    pub main_term: f64,
    pub margin: f64,
    pub ratio: f64,
}

pub fn bound_csv_rows(reports: &[VerificationReport]) -> Vec<CsvRow> {
    reports
        .iter()
        .flat_map(|r| {
            r.points.iter().map(move |p| CsvRow {
                poly_b: r.poly.b,
                poly_c: r.poly.c,
                delta: r.poly.delta,
                n: p.n,
                exact_sum: p.exact_sum,
                bound_total: p.bound.total,
                main_term: p.bound.main_term,
                margin: p.margin,
                ratio: p.ratio_to_main_term,
            })
        })
        .collect()
}

pub fn square_plus_one_csv_rows(report: &SquarePlusOneReport) -> Vec<CsvRow> {
    report
        .points
        .iter()
        .map(|p| CsvRow {
            poly_b: 0,
            poly_c: 1,
            delta: -1,
            n: p.n,
            exact_sum: p.exact_sum,
            bound_total: p.bound,
            main_term: p.main_term,
            margin: p.margin,
            ratio: p.exact_sum as f64 / p.main_term,
        })
        .collect()
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        VerificationReport {
            poly: PolyRecord {
                b: 5,
                c: -10,
                delta: 35,
            },
            grid: vec![100, 1000],
            points: vec![GridPoint {
                n: 100,
                exact_sum: 570,
                square_count: 2,
                cross_checked: true,
                bound: BreakdownRecord {
                    main_term: 0.1 + 0.2,
                    linear_term: 1.0 / 3.0,
                    x_term: 2f64.sqrt(),
                    n_over_sqrtx_term: 1e-300,
                    sqrtx_term: 123456.789,
                    total: 9.87654321e10,
                    x: 104.83,
                },
                margin: 9.87654321e10 - 570.0,
                ratio_to_main_term: 570.0 / 0.3,
            }],
            l_value: CertifiedRecord {
                value: 0.837_679_281_258_858_5,
                error_radius: 1.000_000_03e-6,
            },
            verdict: Verdict::Holds,
        }
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let r = sample();
        let text = serde_json::to_string_pretty(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"verdict\": \"holds\""));
    }

    #[test]
    fn csv_header_matches_column_contract() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_csv(&path, &bound_csv_rows(&[sample()])).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "poly_b,poly_c,delta,N,exact_sum,bound_total,main_term,margin,ratio"
        );
        let mut rd = csv::Reader::from_path(&path).unwrap();
        let rows: Vec<CsvRow> = rd.deserialize().collect::<Result<_, _>>().unwrap();
        assert_eq!(rows, bound_csv_rows(&[sample()]));
    }
}
