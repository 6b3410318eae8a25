use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use splitgeom::liealg::{su2, LieAlgebra, LieVector};
use splitgeom::nahm::degeneracy::{param_grid, refine_roots, scan_point};
use splitgeom::nahm::{integrate, Family, NahmState};

use super::Status;
use crate::config::{at_least, config_error, existing, positive, RunOpts, ScanOpts};
use crate::output::{csv_writer, num};

/// Initial data file. `t0` defaults to zero.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InitFile {
    #[serde(default)]
    t0: Option<Vec<f64>>,
    t1: Vec<f64>,
    t2: Vec<f64>,
    t3: Vec<f64>,
}

fn load_algebra(name: &str) -> anyhow::Result<LieAlgebra<f64>> {
    if name == "su2" {
        return Ok(su2());
    }
    let path = existing("algebra", name.into())?;
    LieAlgebra::from_json_file(&path).map_err(|e| config_error(e.to_string()))
}

fn load_init(path: &Path, dim: usize) -> anyhow::Result<NahmState<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    let f: InitFile =
        serde_json::from_str(&text).map_err(|e| config_error(format!("malformed init {}: {e}", path.display())))?;
    let t0 = f.t0.unwrap_or_else(|| vec![0.0; dim]);
    for (name, v) in [("t0", &t0), ("t1", &f.t1), ("t2", &f.t2), ("t3", &f.t3)] {
        if v.len() != dim {
            return Err(config_error(format!("init {name} has {} components, algebra has dimension {dim}", v.len())));
        }
    }
    Ok(NahmState::new(LieVector::new(t0), LieVector::new(f.t1), LieVector::new(f.t2), LieVector::new(f.t3)))
}

pub fn run(opts: RunOpts) -> anyhow::Result<Status> {
    let algebra = load_algebra(opts.algebra.as_deref().unwrap_or("su2"))?;
    let init_path = existing("init", opts.init.ok_or_else(|| config_error("nahm run needs --init"))?)?;
    let init = load_init(&init_path, algebra.dim())?;
    let steps = at_least("steps", opts.steps.unwrap_or(1000), 2)?;
    let length = positive("length", opts.length.unwrap_or(1.0))?;
    let reduced = opts.reduced.unwrap_or(false);
    let drift_tol = opts.drift_tol.map(|t| positive("drift-tol", t)).transpose()?;

    let tr = integrate(&algebra, &init, length, steps, reduced)?;
    let conserved = tr.conserved();
    let d = algebra.dim();

    let mut w = csv_writer(opts.out.as_deref())?;
    let mut header = vec!["t".to_string()];
    for k in 0..4 {
        header.extend((1..=d).map(|a| format!("T{k}_{a}")));
    }
    header.push("conserved".into());
    w.write_record(&header)?;
    for (j, s) in tr.states.iter().enumerate() {
        let mut rec = vec![num(tr.time(j))];
        rec.extend(s.to_flat().into_iter().map(num));
        rec.push(num(conserved[j]));
        w.write_record(&rec)?;
    }
    w.flush()?;

    let drift = tr.conserved_drift();
    eprintln!("conserved drift {drift:.3e}");
    Ok(Status::from_pass(drift_tol.is_none_or(|t| drift <= t)))
}

pub fn degeneracy_scan(opts: ScanOpts) -> anyhow::Result<Status> {
    let family =
        Family::parse(opts.family.as_deref().unwrap_or("const-t2")).map_err(|e| config_error(e.to_string()))?;
    let from = opts.from.unwrap_or(0.5);
    let to = opts.to.unwrap_or(4.0);
    let samples = at_least("samples", opts.samples.unwrap_or(100), 2)?;
    let steps = at_least("steps", opts.steps.unwrap_or(1000), 3)?;
    let scale = positive("scale", opts.scale.unwrap_or(1.0))?;
    let grid = param_grid(from, to, samples).map_err(|e| config_error(e.to_string()))?;

    let make = |c: f64| family.trajectory(c, steps, scale);
    let rows = grid.par_iter().map(|&c| scan_point(&make, c)).collect::<splitgeom::Result<Vec<_>>>()?;
    let roots = refine_roots(&make, &rows)?;

    let mut w = csv_writer(opts.out.as_deref())?;
    w.write_record(["param", "det", "min_sv", "signed_indicator", "degenerate"])?;
    for r in &rows {
        w.write_record([num(r.param), num(r.det), num(r.min_sv), num(r.signed_indicator), r.degenerate.to_string()])?;
    }
    w.flush()?;

    if let Some(path) = opts.roots.as_deref() {
        let mut w = csv_writer(Some(path))?;
        w.write_record(["param", "min_sv", "det", "iterations"])?;
        for r in &roots {
            w.write_record([num(r.param), num(r.min_sv), num(r.det), r.iterations.to_string()])?;
        }
        w.flush()?;
    }
    eprintln!("{} on [{from}, {to}] (scale {scale}): {} root(s)", family.name(), roots.len());
    for r in &roots {
        eprintln!("  root {:.12}  min_sv {:.3e}", r.param, r.min_sv);
    }
    Ok(Status::Pass)
}
