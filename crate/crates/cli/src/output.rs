use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use splitgeom::calibration::CALIBRATED;
use splitgeom::liealg::Check;

/// 17 significant digits; round-trips every `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sink(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn csv_writer(out: Option<&Path>) -> anyhow::Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(sink(out)?))
}

pub fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Fields shared by every JSON report.
#[derive(Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub sign_table: String,
}

impl Header {
    pub fn new(command: &'static str) -> Self {
        Self { tool: "splitgeom", version: splitgeom::VERSION, command, sign_table: CALIBRATED.to_string() }
    }
}

pub fn print_checks(checks: &[Check]) {
    for c in checks {
        eprintln!(
            "{:<4} {:<28} {:>12.3e}  (tol {:.0e})",
            if c.pass { "ok" } else { "FAIL" },
            c.name,
            c.residual,
            c.tolerance
        );
    }
}
