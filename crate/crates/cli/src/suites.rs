use rand::Rng;
use rand_distr::StandardNormal;
use wallspace_core::cnk::{
    check_left_invariance, hilbert_identity_check, set_cnk_suite, unboundedness_sweep, SWEEP_REL_TOL,
};
use wallspace_core::crofton::{
    check_additivity, check_invariance, crofton_constant, estimate_c, CroftonReport, Deviation, SuiteVerdict,
    HARD_SIGMAS, MIN_ROW_PASS_FRACTION, ROW_SIGMAS,
};
use wallspace_core::lorentz::random_point;
use wallspace_core::rng::{derive_seed, stream, tag};
use wallspace_core::{
    hyperbolic_distance, random_lorentz, Error, Executor, HyperbolicPoint, MeasureEstimate, Method,
    RandomLorentzConfig, Result,
};

use crate::config::{Command, RunConfig, DEFAULT_HILBERT_POINTS};
use crate::report::{Findings, Report, Row};

/// Relative miss allowed for `c_hat` against the closed-form `c(n)`.
pub const C_REL_TOL: f64 = 0.01;

/// Left-invariance deviations above this fail.
pub const LEFT_INVARIANCE_TOL: f64 = 1e-8;

/// Random probes may exceed the eigen defect by at most this much.
pub const PROBE_MARGIN: f64 = 1e-10;

/// Number of `t` values in the unboundedness sweep.
pub const SWEEP_STEPS: usize = 60;

/// Boost range for points and transforms in the invariance and embedding
/// suites. Keeps every point within a few units of `o`, where the Monte Carlo
/// domain stays small.
pub const MODERATE: RandomLorentzConfig = RandomLorentzConfig { t_min: -1.0, t_max: 1.0 };

pub fn run_suite<E: Executor>(cfg: &RunConfig, exec: &E) -> Result<Report> {
    let (rows, findings) = match cfg.command {
        Command::EstimateC => cmd_estimate_c(cfg, exec)?,
        Command::VerifyCrofton => cmd_verify_crofton(cfg, exec)?,
        Command::Cnk => cmd_cnk(cfg, exec)?,
        Command::SweepUnbounded => {
            let (rows, pass) = sweep_rows(cfg)?;
            (rows, Findings { pass, ..Default::default() })
        }
    };
    Ok(Report::new(cfg.clone(), rows, findings))
}

fn estimate_row(suite: &str, case: impl Into<String>, est: &MeasureEstimate) -> Row {
    Row::new(suite, case).estimate(est.value).stderr(est.stderr).samples(est.samples).method(est.method)
}

fn verdict_rows(suite: &str, v: &SuiteVerdict) -> Vec<Row> {
    vec![
        Row::new(suite, "pass_fraction")
            .estimate(v.pass_fraction())
            .tolerance(MIN_ROW_PASS_FRACTION)
            .samples(v.rows as u64)
            .pass(v.pass_fraction() >= MIN_ROW_PASS_FRACTION),
        Row::new(suite, "max_z")
            .estimate(v.max_z)
            .tolerance(HARD_SIGMAS)
            .samples(v.rows as u64)
            .pass(v.beyond_hard_sigmas == 0),
    ]
}

fn linearity(cfg: &RunConfig, exec: &impl Executor) -> Result<(Vec<Row>, CroftonReport, bool)> {
    let icfg = cfg.integration(cfg.fit_method()).with_seed(derive_seed(cfg.seed, tag::LINEARITY, 0));
    let fit = estimate_c(cfg.n, &cfg.t_grid, &icfg, exec)?;
    let mut rows = Vec::new();
    for p in &fit.points {
        rows.push(
            estimate_row("linearity", "F(o,a_t o)", &p.estimate).param(p.t).reference(fit.c_hat * p.t).stderr(p.sigma),
        );
    }
    for r in &fit.ratios {
        rows.push(
            Row::new("linearity", "F(2t)/F(t)")
                .param(r.t)
                .estimate(r.ratio)
                .reference(2.0)
                .stderr(r.stderr)
                .tolerance(ROW_SIGMAS * r.stderr)
                .pass(r.within(ROW_SIGMAS)),
        );
    }
    for c in fit.checks.iter().filter(|c| !c.name.starts_with("scale_ratio")) {
        rows.push(Row::new("linearity", c.name.clone()).estimate(c.observed).tolerance(c.threshold).pass(c.pass));
    }
    rows.push(
        Row::new("linearity", "affine_intercept")
            .estimate(fit.intercept)
            .reference(0.0)
            .stderr(fit.intercept_stderr)
            .tolerance(ROW_SIGMAS * fit.intercept_stderr)
            .pass(fit.intercept.abs() <= ROW_SIGMAS * fit.intercept_stderr),
    );
    let c_ref = crofton_constant(cfg.n)?;
    let c_tol = (C_REL_TOL * c_ref).max(ROW_SIGMAS * fit.c_stderr);
    let c_pass = (fit.c_hat - c_ref).abs() <= c_tol;
    rows.push(
        Row::new("linearity", "c_hat")
            .estimate(fit.c_hat)
            .reference(c_ref)
            .stderr(fit.c_stderr)
            .tolerance(c_tol)
            .method(fit.method)
            .pass(c_pass),
    );
    let pass = fit.pass() && c_pass;
    Ok((rows, fit, pass))
}

fn cmd_estimate_c<E: Executor>(cfg: &RunConfig, exec: &E) -> Result<(Vec<Row>, Findings)> {
    let (rows, fit, pass) = linearity(cfg, exec)?;
    Ok((rows, Findings { pass, c_hat: Some(fit.c_hat), c_halfwidth: Some(fit.c_halfwidth), defect_max: None }))
}

fn random_points(n: usize, count: usize, seed: u64, range: &RandomLorentzConfig) -> Result<Vec<HyperbolicPoint>> {
    let mut rng = stream(seed, 0);
    (0..count).map(|_| random_point(n, &mut rng, range)).collect()
}

fn cmd_verify_crofton<E: Executor>(cfg: &RunConfig, exec: &E) -> Result<(Vec<Row>, Findings)> {
    let n = cfg.n;
    let mc = cfg.integration(Method::MonteCarlo);
    let (mut rows, fit, linear_pass) = linearity(cfg, exec)?;

    let pts = random_points(n, 2 * cfg.pairs, derive_seed(cfg.seed, tag::PAIRS, 0), &MODERATE)?;
    let pairs: Vec<_> = pts.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    let mut trng = stream(derive_seed(cfg.seed, tag::TRANSFORMS, 0), 0);
    let transforms =
        (0..cfg.transforms).map(|_| random_lorentz(n, &mut trng, &MODERATE)).collect::<Result<Vec<_>>>()?;
    let inv = check_invariance(&pairs, &transforms, &mc.with_seed(derive_seed(cfg.seed, tag::INVARIANCE, 0)), exec)?;
    for r in &inv {
        let stderr = r.combined_stderr();
        rows.push(
            estimate_row("invariance", format!("pair_{}/transform_{}", r.pair, r.transform), &r.transformed)
                .reference(r.original.value)
                .stderr(stderr)
                .tolerance(ROW_SIGMAS * stderr)
                .pass(r.within(ROW_SIGMAS)),
        );
    }
    let inv_verdict = SuiteVerdict::evaluate(&inv);
    rows.extend(verdict_rows("invariance", &inv_verdict));

    let additivity = exec.map(cfg.instances, |i| {
        let seed = derive_seed(cfg.seed, tag::ADDITIVITY, i as u64);
        let mut rng = stream(seed, 0);
        let x = random_point(n, &mut rng, &RandomLorentzConfig::default())?;
        let y = random_point(n, &mut rng, &RandomLorentzConfig::default())?;
        let s = rng.random_range(0.1..0.9);
        let mut found = check_additivity(&x, &y, &[s], &mc.with_seed(seed), exec)?;
        Ok(found.remove(0))
    });
    let additivity = additivity.into_iter().collect::<Result<Vec<_>>>()?;
    for (i, r) in additivity.iter().enumerate() {
        let stderr = r.combined_stderr();
        rows.push(
            Row::new("additivity", format!("instance_{i}"))
                .param(r.s)
                .estimate(r.first.value + r.second.value)
                .reference(r.whole.value)
                .stderr(stderr)
                .tolerance(ROW_SIGMAS * stderr)
                .samples(r.whole.samples)
                .method(r.whole.method)
                .pass(r.within(ROW_SIGMAS)),
        );
    }
    let add_verdict = SuiteVerdict::evaluate(&additivity);
    rows.extend(verdict_rows("additivity", &add_verdict));

    let pass = linear_pass && inv_verdict.pass && add_verdict.pass;
    Ok((rows, Findings { pass, c_hat: Some(fit.c_hat), c_halfwidth: Some(fit.c_halfwidth), defect_max: None }))
}

fn sweep_rows(cfg: &RunConfig) -> Result<(Vec<Row>, bool)> {
    let t_values: Vec<f64> = (1..=SWEEP_STEPS).map(|k| cfg.t_max * k as f64 / SWEEP_STEPS as f64).collect();
    let sweep = unboundedness_sweep(cfg.n, &t_values)?;
    let mut rows: Vec<Row> = sweep
        .rows
        .iter()
        .map(|r| {
            let row = Row::new("unboundedness", "K(a_t,e)").param(r.t).estimate(r.kernel).reference(r.t.abs());
            let row = if r.checked { row.tolerance(SWEEP_REL_TOL * r.t.abs()) } else { row };
            row.pass(r.pass())
        })
        .collect();
    rows.push(Row::new("unboundedness", "monotone").pass(sweep.monotone));
    Ok((rows, sweep.pass()))
}

fn cmd_cnk<E: Executor>(cfg: &RunConfig, exec: &E) -> Result<(Vec<Row>, Findings)> {
    let n = cfg.n;
    let mut rows = Vec::new();

    let sets = exec.map(cfg.configs, |i| {
        let mut rng = stream(derive_seed(cfg.seed, tag::CNK, i as u64), 0);
        let m = match cfg.points {
            Some(m) => m,
            None => rng.random_range(2..=wallspace_core::cnk::MAX_SET_POINTS),
        };
        let pts =
            (0..m).map(|_| random_point(n, &mut rng, &RandomLorentzConfig::default())).collect::<Result<Vec<_>>>()?;
        let row = set_cnk_suite(&pts, cfg.probes, &mut rng)?;
        let two_point = (m == 2).then(|| -hyperbolic_distance(&pts[0], &pts[1]));
        Ok((row, two_point))
    });
    let sets = sets.into_iter().collect::<Result<Vec<_>>>()?;
    let mut defect_max = f64::NEG_INFINITY;
    let mut probe_excess = f64::NEG_INFINITY;
    let mut sets_pass = true;
    for (i, (r, two_point)) in sets.iter().enumerate() {
        defect_max = defect_max.max(r.defect);
        if let Some(p) = r.probe_max {
            probe_excess = probe_excess.max(p - r.defect);
        }
        sets_pass &= r.pass;
        let row = Row::new("set_cnk", format!("config_{i}")).param(r.points as f64).estimate(r.defect);
        let row = match two_point {
            Some(d) => row.reference(*d),
            None => row,
        };
        rows.push(row.tolerance(r.tolerance).samples(cfg.probes as u64).pass(r.pass));
    }
    if cfg.probes > 0 {
        rows.push(
            Row::new("set_cnk", "probe_excess")
                .estimate(probe_excess)
                .tolerance(PROBE_MARGIN)
                .samples(cfg.configs as u64)
                .pass(probe_excess <= PROBE_MARGIN),
        );
    }

    let deviations = exec.map(cfg.triples, |k| {
        let mut rng = stream(derive_seed(cfg.seed, tag::TRIPLES, 0), k as u64);
        let range = RandomLorentzConfig::default();
        let g = random_lorentz(n, &mut rng, &range)?;
        let h = random_lorentz(n, &mut rng, &range)?;
        let l = random_lorentz(n, &mut rng, &range)?;
        check_left_invariance(&g, &h, &l)
    });
    let worst = deviations.into_iter().collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
    let left_pass = worst <= LEFT_INVARIANCE_TOL;
    rows.push(
        Row::new("left_invariance", "max_deviation")
            .estimate(worst)
            .tolerance(LEFT_INVARIANCE_TOL)
            .samples(cfg.triples as u64)
            .pass(left_pass),
    );

    let (sweep, sweep_pass) = sweep_rows(cfg)?;
    rows.extend(sweep);

    let (embed_rows, fit, embed_pass) = embedding(cfg, exec)?;
    rows.extend(embed_rows);

    let pass = sets_pass && (cfg.probes == 0 || probe_excess <= PROBE_MARGIN) && left_pass && sweep_pass && embed_pass;
    Ok((
        rows,
        Findings { pass, c_hat: Some(fit.c_hat), c_halfwidth: Some(fit.c_halfwidth), defect_max: Some(defect_max) },
    ))
}

fn embedding<E: Executor>(cfg: &RunConfig, exec: &E) -> Result<(Vec<Row>, CroftonReport, bool)> {
    let n = cfg.n;
    let fit_cfg = cfg.integration(cfg.fit_method()).with_seed(derive_seed(cfg.seed, tag::LINEARITY, 0));
    let fit = estimate_c(n, &cfg.t_grid, &fit_cfg, exec)?;
    if fit.c_hat.is_nan() || fit.c_hat <= 0.0 {
        return Err(Error::Degenerate("non-positive Crofton constant estimate"));
    }
    let m = cfg.points.unwrap_or(DEFAULT_HILBERT_POINTS);
    let mc = cfg.integration(Method::MonteCarlo);
    let checks = (0..cfg.instances)
        .map(|i| {
            let mut rng = stream(derive_seed(cfg.seed, tag::HILBERT, i as u64), 0);
            let pts = (0..m).map(|_| random_point(n, &mut rng, &MODERATE)).collect::<Result<Vec<_>>>()?;
            let mut lambda: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
            let mean = lambda.iter().sum::<f64>() / m as f64;
            lambda.iter_mut().for_each(|l| *l -= mean);
            let row_cfg = mc.with_seed(derive_seed(cfg.seed, tag::ROW, i as u64));
            hilbert_identity_check(&pts, &lambda, fit.c_hat, fit.c_stderr, &row_cfg, exec)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = vec![Row::new("embedding", "c_hat")
        .estimate(fit.c_hat)
        .stderr(fit.c_stderr)
        .method(fit.method)
        .pass(fit.c_hat > 0.0)];
    let mut gram = Vec::new();
    for (i, h) in checks.iter().enumerate() {
        let stderr = h.combined_stderr();
        rows.push(
            Row::new("embedding", format!("identity_{i}"))
                .estimate(h.rhs)
                .reference(h.lhs)
                .stderr(stderr)
                .tolerance(ROW_SIGMAS * stderr + h.floor())
                .samples(h.samples)
                .method(Method::MonteCarlo)
                .pass(h.pass()),
        );
        for g in &h.gram {
            let stderr = g.combined_stderr();
            rows.push(
                estimate_row("gram", format!("instance_{i}/{}_{}", g.i, g.j), &g.estimate)
                    .reference(g.expected)
                    .stderr(stderr)
                    .tolerance(ROW_SIGMAS * stderr + g.floor())
                    .pass(g.pass()),
            );
            gram.push(*g);
        }
    }
    let identity_verdict = SuiteVerdict::evaluate(&checks);
    let gram_verdict = SuiteVerdict::evaluate(&gram);
    rows.extend(verdict_rows("embedding", &identity_verdict));
    rows.extend(verdict_rows("gram", &gram_verdict));
    Ok((rows, fit, identity_verdict.pass && gram_verdict.pass))
}
