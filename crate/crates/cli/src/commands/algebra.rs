use serde::Serialize;
use splitgeom::liealg::Check;
use splitgeom::verify::{self, Fault, SuiteSize};

use super::Status;
use crate::config::{at_least, config_error, AlgebraOpts};
use crate::output::{print_checks, write_json, Header};

#[derive(Serialize)]
struct Report {
    #[serde(flatten)]
    header: Header,
    seed: u64,
    samples: usize,
    fault: Option<String>,
    pass: bool,
    checks: Vec<Check>,
}

pub fn run(opts: AlgebraOpts, inject_fault: Option<String>) -> anyhow::Result<Status> {
    let seed = opts.seed.unwrap_or(0);
    let samples = at_least("samples", opts.samples.unwrap_or(10_000), 1)?;
    let fault = match &inject_fault {
        Some(name) => Some(Fault::parse(name).ok_or_else(|| config_error(format!("unknown fault '{name}'")))?),
        None => None,
    };
    let size = SuiteSize { pairs: samples, triples: samples, units: samples };
    let report = verify::run(seed, size, fault);
    let pass = report.all_pass();
    print_checks(&report.checks);
    write_json(
        opts.out.as_deref(),
        &Report {
            header: Header::new("verify-algebra"),
            seed,
            samples,
            fault: inject_fault,
            pass,
            checks: report.checks,
        },
    )?;
    Ok(Status::from_pass(pass))
}
