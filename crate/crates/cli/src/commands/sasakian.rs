use rayon::prelude::*;
use serde::Serialize;
use splitgeom::calibration::{BRACKET_SIGN, CONTACT_EPS, REEB_TAU};
use splitgeom::liealg::Check;
use splitgeom::sampling::{point_rng, random_sphere_point};
use splitgeom::sasakian::{check_point, PointChecks};

use super::Status;
use crate::config::{at_least, positive, SasakianOpts};
use crate::output::{print_checks, write_json, Header};

#[derive(Serialize)]
struct Conventions {
    reeb_tau: [f64; 3],
    contact_eps: [f64; 3],
    bracket_sign: f64,
}

#[derive(Serialize)]
struct Report {
    #[serde(flatten)]
    header: Header,
    conventions: Conventions,
    n: usize,
    points: usize,
    seed: u64,
    samples: usize,
    pass: bool,
    checks: Vec<Check>,
}

fn point_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(index)
}

pub fn run(opts: SasakianOpts) -> anyhow::Result<Status> {
    let n = at_least("n", opts.n.unwrap_or(1), 1)?;
    let points = at_least("points", opts.points.unwrap_or(100), 1)?;
    let seed = opts.seed.unwrap_or(0);
    let samples = at_least("samples", opts.samples.unwrap_or(4), 1)?;
    let exact = positive("exact-tol", opts.exact_tol.unwrap_or(1e-10))?;
    let fd = positive("fd-tol", opts.fd_tol.unwrap_or(1e-6))?;
    let form = positive("form-tol", opts.form_tol.unwrap_or(1e-9))?;

    let results: Vec<PointChecks> = (0..points as u64)
        .into_par_iter()
        .map(|i| {
            let p = random_sphere_point(n + 1, &mut point_rng(seed, i));
            check_point(&p, samples, point_seed(seed, i))
        })
        .collect::<splitgeom::Result<_>>()?;

    let mut worst = PointChecks { horizontal_dim: 4 * n, ..Default::default() };
    let mut dim_err = 0usize;
    for r in &results {
        worst.contact.merge(&r.contact);
        dim_err = dim_err.max(r.horizontal_dim.abs_diff(4 * n));
        worst.horizontal_invariance = worst.horizontal_invariance.max(r.horizontal_invariance);
        worst.omega_hat_agreement = worst.omega_hat_agreement.max(r.omega_hat_agreement);
        worst.su11_invariance = worst.su11_invariance.max(r.su11_invariance);
        worst.homothety = worst.homothety.max(r.homothety);
    }
    let c = &worst.contact;
    let checks = vec![
        Check::new("reeb_lengths", c.lengths, exact),
        Check::new("eta_of_reeb", c.eta_of_reeb, exact),
        Check::new("eta_of_phi", c.eta_of_phi, exact),
        Check::new("phi_square", c.phi_square, exact),
        Check::new("metric_compat", c.metric_compat, exact),
        Check::new("reeb_bracket", c.bracket, exact),
        Check::new("d_eta", c.d_eta, fd),
        Check::new("normality", c.normality, fd),
        Check::new("horizontal_dim", dim_err as f64, 0.0),
        Check::new("horizontal_invariance", worst.horizontal_invariance, exact),
        Check::new("omega_hat_agreement", worst.omega_hat_agreement, form),
        Check::new("su11_invariance", worst.su11_invariance, form),
        Check::new("homothety", worst.homothety, exact),
    ];
    let pass = checks.iter().all(|c| c.pass);
    print_checks(&checks);
    let report = Report {
        header: Header::new("verify-sasakian"),
        conventions: Conventions { reeb_tau: REEB_TAU, contact_eps: CONTACT_EPS, bracket_sign: BRACKET_SIGN },
        n,
        points,
        seed,
        samples,
        pass,
        checks,
    };
    write_json(opts.out.as_deref(), &report)?;
    Ok(Status::from_pass(pass))
}
