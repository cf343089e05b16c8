use std::fs;
use std::io::Write;
use std::path::Path;

use eur_core::bounds::{
    case_quantities, liu_constant, mu_constant, zhang_bound, CaseId, PairConstant, ALICE,
    MAX_ZHANG_MEASUREMENTS,
};
use eur_core::entropy::DensityOperator;
use eur_core::sweep::{rows_to_csv, rows_to_json, run_sweep, SweepConfig, SweepFamily};
use eur_core::verify::{run_verify, VerifyConfig};
use serde::Serialize;

use crate::args::{BoundArgs, ConstantsArgs, Format, SweepArgs, VerifyArgs};
use crate::parse::{case_partition, load_state, parse_dims, parse_measurements, parse_partition};
use crate::{CliError, EXIT_OK, EXIT_VIOLATION};

/// Writes `text` to `path`, or to `out` when no path is given.
fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| CliError::io(format!("cannot write to standard output: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(format!("--tol must be a non-negative number, got {tol}")))
    }
}

pub fn sweep(
    a: &SweepArgs,
    threads: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    check_tol(a.tol)?;
    let family = SweepFamily::parse(&a.family, a.phi)?;
    if a.phi.is_some() && family == SweepFamily::Werner {
        return Err(CliError::usage("--phi applies only to the wstate family"));
    }
    let mut config = SweepConfig::new(family, CaseId::from_number(a.case)?);
    if let Some(start) = a.param_start {
        config.start = start;
    }
    if let Some(end) = a.param_end {
        config.end = end;
    }
    config.steps = a.steps;
    config.tol = a.tol;
    config.threads = threads;

    let result = run_sweep(&config)?;
    let text = match a.format {
        Format::Csv => rows_to_csv(&result.rows),
        Format::Json => rows_to_json(&result.rows),
    };
    emit(a.output.as_deref(), &text, out)?;

    let s = &result.summary;
    let _ = writeln!(
        err,
        "rows={} min_slack={:e} max_slack={:e} saturated_L1={}/{} saturated_L2={}/{} violations={}",
        s.rows, s.min_slack, s.max_slack, s.saturated_l1, s.rows, s.saturated_l2, s.rows, s.violations
    );
    if s.violations > 0 {
        for r in result.rows.iter().filter(|r| !r.satisfies(config.tol)) {
            let _ = writeln!(
                err,
                "violation at param={} slack_L1={:e} slack_L2={:e}",
                r.param, r.slack_L1, r.slack_L2
            );
        }
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

pub fn bound(a: &BoundArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    check_tol(a.tol)?;
    let rho = load_state(&a.state)?;
    let bases = parse_measurements(&a.measurements)?;
    let partition = match (&a.partition, a.case) {
        (Some(p), _) => p.as_str(),
        (None, case) => case_partition(case.unwrap_or(1))?,
    };
    let scenario = parse_partition(partition, &bases)?;
    let report = case_quantities(&rho, &scenario)?;
    emit(a.output.as_deref(), &to_json(&report), out)?;

    let violated: Vec<String> = report
        .all_bounds()
        .into_iter()
        .filter(|(_, v)| report.uncertainty_u - v < -a.tol)
        .map(|(name, v)| format!("{name} ({v})"))
        .collect();
    if violated.is_empty() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(
            err,
            "U = {} is below: {}",
            report.uncertainty_u,
            violated.join(", ")
        );
        Ok(EXIT_VIOLATION)
    }
}

pub fn verify(
    a: &VerifyArgs,
    threads: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    check_tol(a.tol)?;
    let mut config = VerifyConfig::new(a.count, a.seed).with_tol(a.tol);
    config.dims = parse_dims(&a.dims)?;
    config.threads = threads;
    let outcome = run_verify(&config)?;
    emit(None, &to_json(&outcome.report), out)?;

    for (name, count) in &outcome.per_check {
        let failed = outcome.failures.iter().filter(|f| &f.check == name).count();
        let _ = writeln!(err, "{name}: {} passed, {failed} failed", count - failed);
    }
    for f in &outcome.failures {
        let _ = writeln!(
            err,
            "FAIL seed={} index={} check={} margin={:e}",
            a.seed, f.index, f.check, f.margin
        );
    }
    Ok(if outcome.failures.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct OrderingReport {
    ordering: Vec<String>,
    ell: f64,
}

#[derive(Serialize)]
struct ZhangReport {
    orderings: Vec<OrderingReport>,
    max: f64,
}

#[derive(Serialize)]
struct ConstantsReport {
    measurements: Vec<String>,
    rho_a: String,
    pairs: Vec<PairConstant>,
    b: f64,
    neg_log_b: f64,
    zhang: Option<ZhangReport>,
    unsupported: Vec<&'static str>,
}

pub fn constants(a: &ConstantsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let bases = parse_measurements(&a.measurements)?;
    let dim = bases[0].dim();
    let (rho_a, rho_name) = match &a.state {
        None => (DensityOperator::maximally_mixed(vec![dim])?, "maximally_mixed".to_string()),
        Some(spec) => {
            let rho = load_state(spec)?;
            let rho = if rho.num_subsystems() > 1 { rho.reduce(&[ALICE])? } else { rho };
            (rho, spec.clone())
        }
    };

    let liu = liu_constant(&bases)?;
    let mut pairs = Vec::new();
    for (i, x) in bases.iter().enumerate() {
        for z in &bases[i + 1..] {
            let mu = mu_constant(x, z)?;
            pairs.push(PairConstant {
                first: x.label().to_string(),
                second: z.label().to_string(),
                c: mu.c,
                q_mu: mu.q_mu,
            });
        }
    }
    let zhang = if bases.len() <= MAX_ZHANG_MEASUREMENTS {
        let z = zhang_bound(&bases, &rho_a)?;
        Some(ZhangReport {
            orderings: z
                .orderings
                .into_iter()
                .map(|o| OrderingReport {
                    ordering: o.ordering.iter().map(|&i| bases[i].label().to_string()).collect(),
                    ell: o.ell,
                })
                .collect(),
            max: z.max,
        })
    } else {
        let _ = writeln!(
            err,
            "note: ordering search skipped for more than {MAX_ZHANG_MEASUREMENTS} measurements"
        );
        None
    };

    let report = ConstantsReport {
        measurements: bases.iter().map(|b| b.label().to_string()).collect(),
        rho_a: rho_name,
        pairs,
        b: liu.b,
        neg_log_b: liu.neg_log_b,
        zhang,
        unsupported: vec!["universal majorization bound"],
    };
    emit(None, &to_json(&report), out)?;
    let _ = writeln!(err, "note: the universal majorization bound is not supported");
    Ok(EXIT_OK)
}
