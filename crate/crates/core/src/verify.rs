//! Randomized check of every inequality and identity on seeded random states.
//!
//! State `i` is drawn from its own stream `stream_seed(seed, i)`, so results do not depend on
//! how indices are distributed across workers. Every fourth state is pure, the rest are
//! Hilbert–Schmidt mixed. Qubit systems get both Pauli partitions plus the two-measurement
//! `(σ_x | σ_z)` split; every fifth state also gets a Haar-random basis triple under both
//! splits.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    check_qubit_mub_triple, liu_constant, mu_constant, zhang_bound, CaseId, MeasurementScenario,
    ScenarioTerms, ALICE, BOB, INEQUALITY_TOL,
};
use crate::entropy::{measured_conditional_entropy, DensityOperator, ProjectiveBasis};
use crate::error::{EurError, Result};
use crate::states::{pauli_bases, random_basis, random_density, random_pure, stream_seed};
use crate::sweep::with_threads;

/// Identities are checked at this tolerance unless the inequality tolerance is tighter.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Every `RANDOM_BASIS_EVERY`-th state also gets a random basis triple.
pub const RANDOM_BASIS_EVERY: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub count: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub inequality_tol: f64,
    pub identity_tol: f64,
    pub threads: Option<usize>,
}

impl VerifyConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        VerifyConfig {
            count,
            seed,
            dims: vec![2, 2, 2],
            inequality_tol: INEQUALITY_TOL,
            identity_tol: IDENTITY_TOL,
            threads: None,
        }
    }

    /// Sets the inequality tolerance; identities use `min(tol, IDENTITY_TOL)`.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.inequality_tol = tol;
        self.identity_tol = tol.min(IDENTITY_TOL);
        self
    }
}

/// One failed check, with what is needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub index: usize,
    pub check: String,
    pub margin: f64,
}

/// Summary written by the `verify` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub violations: usize,
    /// Smallest `lhs − rhs` over all inequality checks.
    pub worst_margin: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub report: VerifyReport,
    pub failures: Vec<Failure>,
    /// Number of checks per check name, in first-seen order.
    pub per_check: Vec<(String, usize)>,
}

#[derive(Default)]
struct Tally {
    checked: Vec<(String, usize)>,
    worst_margin: f64,
    failures: Vec<Failure>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            worst_margin: f64::INFINITY,
            ..Default::default()
        }
    }

    fn count(&mut self, name: &str) {
        match self.checked.iter_mut().find(|(n, _)| n == name) {
            Some((_, c)) => *c += 1,
            None => self.checked.push((name.to_string(), 1)),
        }
    }

    fn inequality(&mut self, index: usize, name: &str, margin: f64, tol: f64) {
        self.count(name);
        self.worst_margin = self.worst_margin.min(margin);
        if margin.is_nan() || margin < -tol {
            self.failures.push(Failure {
                index,
                check: name.to_string(),
                margin,
            });
        }
    }

    fn identity(&mut self, index: usize, name: &str, residual: f64, tol: f64) {
        self.count(name);
        if residual.is_nan() || residual.abs() > tol {
            self.failures.push(Failure {
                index,
                check: name.to_string(),
                margin: -residual.abs(),
            });
        }
    }

    fn merge(&mut self, other: Tally) {
        for (name, c) in other.checked {
            match self.checked.iter_mut().find(|(n, _)| *n == name) {
                Some((_, mine)) => *mine += c,
                None => self.checked.push((name, c)),
            }
        }
        self.worst_margin = self.worst_margin.min(other.worst_margin);
        self.failures.extend(other.failures);
    }
}

fn draw_state(config: &VerifyConfig, index: usize, stream: u64) -> Result<DensityOperator> {
    if index % 4 == 3 {
        random_pure(&config.dims, stream)
    } else {
        random_density(&config.dims, stream)
    }
}

fn check_scenario(
    tally: &mut Tally,
    config: &VerifyConfig,
    index: usize,
    rho: &DensityOperator,
    rho_a: &DensityOperator,
    scenario: &MeasurementScenario,
    tag: &str,
) -> Result<()> {
    let terms = ScenarioTerms::compute(rho, scenario)?;
    let u = terms.uncertainty();
    let tol = config.inequality_tol;

    let liu = liu_constant(scenario.bases())?;
    let t1 = terms.assemble(liu.neg_log_b);
    tally.inequality(index, &format!("theorem1/{tag}"), u - t1.bound, tol);
    let zhang = zhang_bound(scenario.bases(), rho_a)?;
    let c1 = terms.assemble(zhang.max);
    tally.inequality(index, &format!("corollary1/{tag}"), u - c1.bound, tol);
    tally.inequality(index, &format!("corollary1_vs_theorem1/{tag}"), c1.bound - t1.bound, tol);
    if check_qubit_mub_triple(scenario).is_ok() {
        let coles = terms.assemble_coles();
        tally.inequality(index, &format!("coles/{tag}"), u - coles.bound, tol);
    }
    // Σ H(M) = Σ [H(M|mem) + I(M:mem)]
    let split_sum: f64 = terms
        .measured
        .iter()
        .map(|m| m.conditional_entropy + m.holevo)
        .sum();
    tally.identity(
        index,
        &format!("decomposition_identity/{tag}"),
        terms.outcome_entropy_sum() - split_sum,
        config.identity_tol,
    );
    Ok(())
}

fn check_pair(
    tally: &mut Tally,
    config: &VerifyConfig,
    index: usize,
    rho: &DensityOperator,
    x: &ProjectiveBasis,
    z: &ProjectiveBasis,
    tag: &str,
) -> Result<()> {
    let tol = config.inequality_tol;
    let scenario = MeasurementScenario::new(vec![x.clone(), z.clone()], 1)?;
    let terms = ScenarioTerms::compute(rho, &scenario)?;
    let u = terms.uncertainty();
    let q = mu_constant(x, z)?.q_mu;
    tally.inequality(index, &format!("tripartite_mu/{tag}"), u - q, tol);
    tally.inequality(index, &format!("dolat_two_measurement/{tag}"), u - terms.assemble(q).bound, tol);
    // Both guessed by Bob: H(X|B) + H(Z|B) ≥ q + S(A|B).
    let both_b = measured_conditional_entropy(rho, x, ALICE, &[BOB])?
        + measured_conditional_entropy(rho, z, ALICE, &[BOB])?;
    tally.inequality(index, &format!("berta/{tag}"), both_b - q - terms.entropy.cond_ab, tol);
    Ok(())
}

fn check_index(config: &VerifyConfig, index: usize) -> Tally {
    let mut tally = Tally::new();
    if let Err(e) = check_index_inner(&mut tally, config, index) {
        tally.count("evaluation");
        tally.failures.push(Failure {
            index,
            check: format!("evaluation error: {e}"),
            margin: f64::NEG_INFINITY,
        });
    }
    tally
}

fn check_index_inner(tally: &mut Tally, config: &VerifyConfig, index: usize) -> Result<()> {
    let stream = stream_seed(config.seed, index as u64);
    let rho = draw_state(config, index, stream)?;
    let rho_a = rho.reduce(&[ALICE])?;
    let terms = crate::bounds::EntropyTerms::compute(&rho)?;

    tally.identity(
        index,
        "entropy_split_identity",
        terms.s_a - terms.half_conditional_sum() - terms.half_mutual_sum(),
        config.identity_tol,
    );
    tally.inequality(
        index,
        "strong_subadditivity",
        terms.cond_ab + terms.cond_ac,
        config.identity_tol,
    );

    let d = config.dims[ALICE];
    if d == 2 {
        for case in [CaseId::One, CaseId::Two] {
            let scenario = MeasurementScenario::pauli_case(case);
            check_scenario(tally, config, index, &rho, &rho_a, &scenario, &format!("pauli_case{}", case.number()))?;
        }
        let [x, _, z] = pauli_bases();
        check_pair(tally, config, index, &rho, &x, &z, "pauli")?;
    }
    if d != 2 || index.is_multiple_of(RANDOM_BASIS_EVERY) {
        let bases = (1..=3)
            .map(|k| random_basis(d, stream_seed(stream, k), format!("r{k}")))
            .collect::<Result<Vec<_>>>()?;
        for split in [1, 2] {
            let scenario = MeasurementScenario::new(bases.clone(), split)?;
            check_scenario(tally, config, index, &rho, &rho_a, &scenario, &format!("random_split{split}"))?;
        }
        check_pair(tally, config, index, &rho, &bases[0], &bases[1], "random")?;
    }
    Ok(())
}

/// Runs the suite. The report is identical for any worker count.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyOutcome> {
    if config.count == 0 {
        return Err(EurError::Contract("count must be at least 1".into()));
    }
    if config.dims.len() != 3 {
        return Err(EurError::Contract(format!(
            "tripartite dims required, got {:?}",
            config.dims
        )));
    }
    let tallies: Vec<Tally> = match config.threads {
        Some(n) if n > 1 => with_threads(config.threads, || {
            (0..config.count)
                .into_par_iter()
                .map(|i| check_index(config, i))
                .collect()
        })?,
        _ => (0..config.count).map(|i| check_index(config, i)).collect(),
    };
    let mut total = Tally::new();
    for t in tallies {
        total.merge(t);
    }
    let checked = total.checked.iter().map(|(_, c)| c).sum();
    Ok(VerifyOutcome {
        report: VerifyReport {
            checked,
            violations: total.failures.len(),
            worst_margin: total.worst_margin,
            seed: config.seed,
        },
        failures: total.failures,
        per_check: total.checked,
    })
}
