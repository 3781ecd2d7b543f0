use std::fmt::Write as _;

use qseries::verify::VerifyReport;
use serde::Serialize;

use crate::args::Format;
use crate::checks::Expansion;

fn join_params<'a>(pairs: impl IntoIterator<Item = (&'a String, String)>, sep: &str) -> String {
    let parts: Vec<String> = pairs.into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(sep)
}

fn report_params(r: &VerifyReport, sep: &str) -> String {
    join_params(r.params.iter().map(|(k, v)| (k, v.to_string())), sep)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

pub fn report_line(r: &VerifyReport) -> String {
    let params = report_params(r, ",");
    let mut line = format!(
        "{} {} order={} {:?}",
        r.check_id,
        if params.is_empty() { "-" } else { &params },
        r.order,
        r.status
    );
    if let Some(e) = r.witness_exponent {
        write!(line, " witness={e}").unwrap();
    }
    if let Some(v) = &r.lhs_value {
        write!(line, " lhs={v}").unwrap();
    }
    if let Some(v) = &r.rhs_value {
        write!(line, " rhs={v}").unwrap();
    }
    line
}

pub fn reports(reports: &[VerifyReport], format: Format) -> String {
    match format {
        Format::Plain => reports.iter().map(|r| report_line(r) + "\n").collect(),
        Format::Json => reports
            .iter()
            .map(|r| serde_json::to_string(r).expect("report serializes") + "\n")
            .collect(),
        Format::Csv => csv_text(
            &[
                "check_id",
                "params",
                "order",
                "status",
                "witness_exponent",
                "lhs_value",
                "rhs_value",
            ],
            reports.iter().map(|r| {
                vec![
                    r.check_id.clone(),
                    report_params(r, ";"),
                    r.order.to_string(),
                    format!("{:?}", r.status),
                    r.witness_exponent
                        .map(|e| e.to_string())
                        .unwrap_or_default(),
                    r.lhs_value.clone().unwrap_or_default(),
                    r.rhs_value.clone().unwrap_or_default(),
                ]
            }),
        ),
    }
}

fn expansion_params(x: &Expansion, sep: &str) -> String {
    join_params(x.params.iter().map(|(k, v)| (k, v.clone())), sep)
}

pub fn expansions(xs: &[Expansion], format: Format) -> String {
    match format {
        Format::Plain => {
            let mut out = String::new();
            for x in xs {
                writeln!(
                    out,
                    "# series={} params={} order={}",
                    x.series,
                    expansion_params(x, ","),
                    x.order
                )
                .unwrap();
                for (e, c) in x.coefficients.iter().enumerate() {
                    writeln!(out, "{e} {c}").unwrap();
                }
            }
            out
        }
        Format::Json => xs
            .iter()
            .map(|x| {
                let coeffs: Vec<String> = x.coefficients.iter().map(ToString::to_string).collect();
                serde_json::to_string(&coeffs).expect("strings serialize") + "\n"
            })
            .collect(),
        Format::Csv => csv_text(
            &["series", "params", "exponent", "coefficient"],
            xs.iter().flat_map(|x| {
                let params = expansion_params(x, ";");
                x.coefficients.iter().enumerate().map(move |(e, c)| {
                    vec![
                        x.series.to_string(),
                        params.clone(),
                        e.to_string(),
                        c.to_string(),
                    ]
                })
            }),
        ),
    }
}

/// Outcome of one suite check. `wall_time_secs` is the only
/// non-deterministic field.
#[derive(Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub profile: String,
    pub reports: usize,
    pub failed: usize,
    pub error: Option<String>,
    pub failures: Vec<VerifyReport>,
    pub wall_time_secs: f64,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.error.is_none()
    }
}

pub fn suite(checks: &[CheckSummary], format: Format) -> String {
    match format {
        Format::Plain => {
            let mut out = String::new();
            for c in checks {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                let ok = c.reports - c.failed;
                writeln!(
                    out,
                    "{verdict} {} {ok}/{} [{:.2}s]",
                    c.check, c.reports, c.wall_time_secs
                )
                .unwrap();
                if let Some(e) = &c.error {
                    writeln!(out, "  error: {e}").unwrap();
                }
                for r in &c.failures {
                    writeln!(out, "  {}", report_line(r)).unwrap();
                }
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            let profile = checks.first().map_or("", |c| c.profile.as_str());
            writeln!(
                out,
                "suite {profile}: {} checks, {} passed, {failed} failed",
                checks.len(),
                checks.len() - failed
            )
            .unwrap();
            out
        }
        Format::Json => checks
            .iter()
            .map(|c| serde_json::to_string(c).expect("summary serializes") + "\n")
            .collect(),
        Format::Csv => csv_text(
            &[
                "check",
                "profile",
                "reports",
                "failed",
                "error",
                "wall_time_secs",
            ],
            checks.iter().map(|c| {
                vec![
                    c.check.clone(),
                    c.profile.clone(),
                    c.reports.to_string(),
                    c.failed.to_string(),
                    c.error.clone().unwrap_or_default(),
                    format!("{:.3}", c.wall_time_secs),
                ]
            }),
        ),
    }
}
