use rayon::prelude::*;
use splitgeom::calibration::{self, CALIBRATED};
use splitgeom::permuting::{chi_parts, rho};
use splitgeom::sampling::{point_rng, random_spacelike};

use super::Status;
use crate::config::{at_least, positive, FlatOpts};
use crate::output::{csv_writer, num};

struct Row {
    rho0: f64,
    half_norm_sq: f64,
    rho2: f64,
    chi2: f64,
}

fn evaluate(n: usize, seed: u64, index: u64) -> Row {
    let h = random_spacelike::<f64>(n + 1, &mut point_rng(seed, index));
    let r = rho(&h, CALIBRATED);
    Row {
        rho0: r.rho0,
        half_norm_sq: 0.5 * h.norm_sq(),
        rho2: r.rho2_norm(),
        chi2: chi_parts(h.h(), CALIBRATED).chi2_norm(),
    }
}

pub fn run(opts: FlatOpts) -> anyhow::Result<Status> {
    let n = opts.n.unwrap_or(1);
    let points = at_least("points", opts.points.unwrap_or(1000), 1)?;
    let seed = opts.seed.unwrap_or(0);
    let rho2_tol = positive("rho2-tol", opts.rho2_tol.unwrap_or(1e-10))?;
    let rho0_tol = positive("rho0-tol", opts.rho0_tol.unwrap_or(1e-12))?;

    let rows: Vec<Row> = (0..points as u64).into_par_iter().map(|i| evaluate(n, seed, i)).collect();

    let mut w = csv_writer(opts.out.as_deref())?;
    w.write_record(["index", "rho0", "half_norm_sq", "rho0_error", "rho2_norm", "chi2_norm"])?;
    let (mut max_rho2, mut max_err) = (0.0f64, 0.0f64);
    for (i, r) in rows.iter().enumerate() {
        let err = (r.rho0 - r.half_norm_sq).abs();
        max_rho2 = max_rho2.max(r.rho2).max(r.chi2);
        max_err = max_err.max(err);
        w.write_record([i.to_string(), num(r.rho0), num(r.half_norm_sq), num(err), num(r.rho2), num(r.chi2)])?;
    }
    w.flush()?;

    let cal = calibration::run(seed, points.min(100), n);
    let selected = cal.selected().ok();
    eprintln!("max |rho2|, |chi2|        {max_rho2:.3e}  (tol {rho2_tol:.0e})");
    eprintln!("max |rho0 - |h|^2/2|      {max_err:.3e}  (tol {rho0_tol:.0e})");
    match selected {
        Some(t) => eprintln!("calibration selects      {t}"),
        None => eprintln!("calibration selects      {} tables", cal.passing().len()),
    }
    let pass = max_rho2 <= rho2_tol && max_err <= rho0_tol && selected == Some(CALIBRATED);
    Ok(Status::from_pass(pass))
}
