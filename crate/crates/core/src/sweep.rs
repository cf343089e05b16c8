//! Parameter sweeps over the Werner and generalized-W families.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{CaseId, MeasurementScenario, ScenarioTerms, INEQUALITY_TOL};
use crate::error::{EurError, Result};
use crate::states::{make_generalized_w, make_werner};

/// Default number of grid points.
pub const DEFAULT_STEPS: usize = 101;

pub const CSV_HEADER: &str =
    "param,U,L1,L2,delta,delta_prime,S_AB,S_AC,I_AB,I_AC,holevo_sum,slack_L1,slack_L2";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepFamily {
    /// Parameter `p`, default range `[0, 1]`.
    Werner,
    /// Parameter `θ`, default range `[0, π]`, at fixed `φ`.
    GeneralizedW { phi: f64 },
}

impl SweepFamily {
    pub fn parse(name: &str, phi: Option<f64>) -> Result<Self> {
        match name {
            "werner" => Ok(SweepFamily::Werner),
            "wstate" | "generalized_w" | "w" => Ok(SweepFamily::GeneralizedW {
                phi: phi.unwrap_or(FRAC_PI_4),
            }),
            other => Err(EurError::Contract(format!(
                "unknown family {other:?} (expected werner or wstate)"
            ))),
        }
    }

    pub fn default_range(&self) -> (f64, f64) {
        match self {
            SweepFamily::Werner => (0.0, 1.0),
            SweepFamily::GeneralizedW { .. } => (0.0, PI),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
    pub case: CaseId,
    pub tol: f64,
    /// Worker threads; `None` evaluates on the calling thread.
    pub threads: Option<usize>,
}

impl SweepConfig {
    pub fn new(family: SweepFamily, case: CaseId) -> Self {
        let (start, end) = family.default_range();
        SweepConfig {
            family,
            start,
            end,
            steps: DEFAULT_STEPS,
            case,
            tol: INEQUALITY_TOL,
            threads: None,
        }
    }

    /// Uniform grid including both endpoints; a single step evaluates `start`.
    pub fn grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    self.end
                } else {
                    self.start + (self.end - self.start) * k as f64 / last as f64
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(EurError::Contract("steps must be at least 1".into()));
        }
        if !self.start.is_finite() || !self.end.is_finite() {
            return Err(EurError::Contract("parameter range must be finite".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(EurError::Contract(format!("tolerance {} must be non-negative", self.tol)));
        }
        Ok(())
    }
}

/// One row of sweep output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct SweepRow {
    pub param: f64,
    pub U: f64,
    pub L1: f64,
    pub L2: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub S_AB: f64,
    pub S_AC: f64,
    pub I_AB: f64,
    pub I_AC: f64,
    pub holevo_sum: f64,
    pub slack_L1: f64,
    pub slack_L2: f64,
}

impl SweepRow {
    pub fn satisfies(&self, tol: f64) -> bool {
        self.slack_L1 >= -tol && self.slack_L2 >= -tol
    }

    fn csv_line(&self, out: &mut String) {
        let fields = [
            self.param,
            self.U,
            self.L1,
            self.L2,
            self.delta,
            self.delta_prime,
            self.S_AB,
            self.S_AC,
            self.I_AB,
            self.I_AC,
            self.holevo_sum,
            self.slack_L1,
            self.slack_L2,
        ];
        for (i, x) in fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            // Display prints the shortest representation that round-trips.
            write!(out, "{x}").expect("writing to a String");
        }
        out.push('\n');
    }
}

/// Evaluates one grid point.
pub fn evaluate_point(family: SweepFamily, case: CaseId, param: f64) -> Result<SweepRow> {
    let rho = match family {
        SweepFamily::Werner => make_werner(param)?,
        SweepFamily::GeneralizedW { phi } => make_generalized_w(param, phi)?,
    };
    let scenario = MeasurementScenario::pauli_case(case);
    let terms = ScenarioTerms::compute(&rho, &scenario)?;
    // Pauli triple: −log₂ b = 1.
    let l1 = terms.assemble(1.0);
    let l2 = terms.assemble_coles();
    let u = terms.uncertainty();
    Ok(SweepRow {
        param,
        U: u,
        L1: l1.bound,
        L2: l2.bound,
        delta: l1.delta,
        delta_prime: l2.delta_prime,
        S_AB: terms.entropy.cond_ab,
        S_AC: terms.entropy.cond_ac,
        I_AB: terms.entropy.mi_ab,
        I_AC: terms.entropy.mi_ac,
        holevo_sum: terms.holevo_sum(),
        slack_L1: u - l1.bound,
        slack_L2: u - l2.bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub min_slack: f64,
    pub max_slack: f64,
    /// Rows with `|slack_L1| ≤ tol`.
    pub saturated_l1: usize,
    /// Rows with `|slack_L2| ≤ tol`.
    pub saturated_l2: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

pub(crate) fn with_threads<T: Send>(
    threads: Option<usize>,
    job: impl FnOnce() -> T + Send,
) -> Result<T> {
    match threads {
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(job))
            .map_err(|e| EurError::Contract(format!("cannot start worker pool: {e}"))),
        _ => Ok(job()),
    }
}

/// Evaluates every grid point; rows come back in parameter order regardless of threading.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let grid = config.grid();
    let (family, case) = (config.family, config.case);
    let rows = match config.threads {
        Some(n) if n > 1 => with_threads(config.threads, || {
            grid.par_iter()
                .map(|&x| evaluate_point(family, case, x))
                .collect::<Result<Vec<_>>>()
        })??,
        _ => grid
            .iter()
            .map(|&x| evaluate_point(family, case, x))
            .collect::<Result<Vec<_>>>()?,
    };
    let tol = config.tol;
    let slacks = rows.iter().flat_map(|r| [r.slack_L1, r.slack_L2]);
    let summary = SweepSummary {
        rows: rows.len(),
        min_slack: slacks.clone().fold(f64::INFINITY, f64::min),
        max_slack: slacks.fold(f64::NEG_INFINITY, f64::max),
        saturated_l1: rows.iter().filter(|r| r.slack_L1.abs() <= tol).count(),
        saturated_l2: rows.iter().filter(|r| r.slack_L2.abs() <= tol).count(),
        violations: rows.iter().filter(|r| !r.satisfies(tol)).count(),
    };
    Ok(SweepResult { rows, summary })
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        r.csv_line(&mut out);
    }
    out
}

pub fn rows_to_json(rows: &[SweepRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows always serialize");
    s.push('\n');
    s
}
