//! JSON, CSV and plain-text rendering.

use std::io::{self, Write};

use qeuler::report::{Fields, IdentityId, VerificationReport};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Serialize)]
pub struct SweepSummary<'a> {
    pub identity: &'static str,
    pub grid: &'a Fields,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub reports: &'a [VerificationReport],
}

pub fn json<T: Serialize>(value: &T) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

/// A table with a fixed header.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> io::Result<()> {
    let mut w = ::csv::Writer::from_writer(io::stdout().lock());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

pub const REPORT_HEADER: [&str; 7] =
    ["identity", "params", "mode", "passed", "deviation", "witness", "details"];

pub fn report_row(r: &VerificationReport) -> Vec<String> {
    vec![
        r.identity.as_str().to_string(),
        r.params.compact(),
        r.mode.as_str().to_string(),
        r.passed.to_string(),
        r.deviation_string(),
        r.witness.as_ref().map(Fields::compact).unwrap_or_default(),
        r.details.compact(),
    ]
}

pub fn report_line(r: &VerificationReport) -> String {
    let mut line = format!(
        "{} [{}] {} {}",
        r.identity,
        r.params.compact(),
        if r.passed { "PASS" } else { "FAIL" },
        r.deviation_string()
    );
    if let Some(w) = &r.witness {
        line.push_str(&format!(" witness[{}]", w.compact()));
    }
    line
}

pub fn reports(format: Format, reports: &[VerificationReport]) -> io::Result<()> {
    match format {
        Format::Json => json(&reports[0]),
        Format::Csv => csv(&REPORT_HEADER, reports.iter().map(report_row)),
        Format::Text => {
            let mut out = io::stdout().lock();
            for r in reports {
                writeln!(out, "{}", report_line(r))?;
                for (k, v) in &r.details.0 {
                    writeln!(out, "  {k} = {v}")?;
                }
            }
            Ok(())
        }
    }
}

pub fn sweep(
    format: Format,
    id: IdentityId,
    grid: &Fields,
    reports: &[VerificationReport],
) -> io::Result<()> {
    let failures = reports.iter().filter(|r| !r.passed).count();
    match format {
        Format::Json => json(&SweepSummary {
            identity: id.as_str(),
            grid,
            passed: failures == 0,
            cases: reports.len(),
            failures,
            reports,
        }),
        Format::Csv => csv(&REPORT_HEADER, reports.iter().map(report_row)),
        Format::Text => {
            let mut out = io::stdout().lock();
            for r in reports {
                writeln!(out, "{}", report_line(r))?;
            }
            writeln!(
                out,
                "{id} sweep [{}]: {}/{} passed",
                grid.compact(),
                reports.len() - failures,
                reports.len()
            )
        }
    }
}
