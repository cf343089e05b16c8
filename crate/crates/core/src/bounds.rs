//! Complementarity constants and tripartite lower bounds on measurement uncertainty with
//! quantum memories.
//!
//! Alice holds subsystem 0 and measures one of `N` bases. The first `split` bases are guessed
//! by Bob (subsystem 1), the rest by Charlie (subsystem 2). Every bound below has the shape
//!
//! ```text
//! constant + (N − 1)·½[S(A|B) + S(A|C)] + max{0, δ}
//! δ = (N − 1)·½[I(A:B) + I(A:C)] − Σ_m I(M_m : memory(m))
//! ```
//!
//! where the constant is `−log₂ b` (Liu), `max_u ℓ_u` (Zhang) or `q_MU` (two measurements).
//! The three-MUB qubit bound replaces the constant and δ by their Coles-specific forms.

use itertools::Itertools;
use serde::Serialize;

use crate::entropy::{
    conditional_entropy, holevo, measured_conditional_entropy, mutual_information,
    outcome_entropy, subsystem_entropy, DensityOperator, ProjectiveBasis,
};
use crate::error::{EurError, Result};
use crate::states::pauli_bases;

pub const ALICE: usize = 0;
pub const BOB: usize = 1;
pub const CHARLIE: usize = 2;

/// Largest number of measurements accepted by the ordering search in [`zhang_bound`].
pub const MAX_ZHANG_MEASUREMENTS: usize = 5;

/// Tolerance on `|⟨u|v⟩|² = 1/2` when validating a qubit MUB triple.
pub const MUB_TOL: f64 = 1e-9;

/// Tolerance below which `U − bound` counts as a violated inequality in reports.
pub const INEQUALITY_TOL: f64 = 1e-8;

/// The two Pauli partitions of the three-observable examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseId {
    /// σ_x, σ_y guessed by Bob; σ_z by Charlie.
    One,
    /// σ_x guessed by Bob; σ_y, σ_z by Charlie.
    Two,
}

impl CaseId {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(CaseId::One),
            2 => Ok(CaseId::Two),
            other => Err(EurError::Contract(format!("case must be 1 or 2, got {other}"))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            CaseId::One => 1,
            CaseId::Two => 2,
        }
    }
}

/// Ordered measurement bases on Alice's system and the index splitting them between memories.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementScenario {
    bases: Vec<ProjectiveBasis>,
    split: usize,
}

impl MeasurementScenario {
    pub fn new(bases: Vec<ProjectiveBasis>, split: usize) -> Result<Self> {
        let Some(first) = bases.first() else {
            return Err(EurError::Contract("a scenario needs at least one basis".into()));
        };
        if split > bases.len() {
            return Err(EurError::Contract(format!(
                "split {split} exceeds the number of bases {}",
                bases.len()
            )));
        }
        if let Some(b) = bases.iter().find(|b| b.dim() != first.dim()) {
            return Err(EurError::Dimension(format!(
                "basis {:?} has dimension {}, expected {}",
                b.label(),
                b.dim(),
                first.dim()
            )));
        }
        Ok(MeasurementScenario { bases, split })
    }

    /// Pauli triple in the partition of the given case.
    pub fn pauli_case(case: CaseId) -> Self {
        let split = match case {
            CaseId::One => 2,
            CaseId::Two => 1,
        };
        MeasurementScenario {
            bases: pauli_bases().to_vec(),
            split,
        }
    }

    pub fn bases(&self) -> &[ProjectiveBasis] {
        &self.bases
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }

    /// Memory subsystem guessing measurement `m` (0-based).
    pub fn memory_of(&self, m: usize) -> usize {
        if m < self.split {
            BOB
        } else {
            CHARLIE
        }
    }
}

fn check_same_dim(bases: &[&ProjectiveBasis]) -> Result<usize> {
    let d = bases[0].dim();
    if let Some(b) = bases.iter().find(|b| b.dim() != d) {
        return Err(EurError::Dimension(format!(
            "basis {:?} has dimension {}, expected {d}",
            b.label(),
            b.dim()
        )));
    }
    Ok(d)
}

/// Maassen–Uffink overlap `c = max |⟨x_i|z_j⟩|²` and `q_MU = −log₂ c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuConstant {
    pub c: f64,
    pub q_mu: f64,
}

pub fn mu_constant(x: &ProjectiveBasis, z: &ProjectiveBasis) -> Result<MuConstant> {
    check_same_dim(&[x, z])?;
    let c = x
        .vectors()
        .iter()
        .flat_map(|u| z.vectors().iter().map(move |v| u.overlap(v)))
        .fold(0.0, f64::max);
    Ok(MuConstant { c, q_mu: -c.log2() })
}

/// For every terminal index `i_N`:
/// `Σ_{i₂…i_{N−1}} max_{i₁} Π_{m=1}^{N−1} |⟨u^m_{i_m}|u^{m+1}_{i_{m+1}}⟩|²`.
///
/// Computed as a forward pass: the first factor is maximized over `i₁`, later indices are
/// summed out one basis at a time.
fn terminal_path_weights(bases: &[&ProjectiveBasis]) -> Vec<f64> {
    let (first, second) = (bases[0], bases[1]);
    let mut weights: Vec<f64> = second
        .vectors()
        .iter()
        .map(|v| first.vectors().iter().map(|u| u.overlap(v)).fold(0.0, f64::max))
        .collect();
    for pair in bases[1..].windows(2) {
        let (from, to) = (pair[0], pair[1]);
        weights = to
            .vectors()
            .iter()
            .map(|v| {
                from.vectors()
                    .iter()
                    .zip(&weights)
                    .map(|(u, w)| w * u.overlap(v))
                    .sum()
            })
            .collect();
    }
    weights
}

fn require_multiple(bases: &[&ProjectiveBasis]) -> Result<()> {
    if bases.len() < 2 {
        return Err(EurError::Contract(format!(
            "at least two measurements are required, got {}",
            bases.len()
        )));
    }
    check_same_dim(bases).map(|_| ())
}

/// Liu et al. constant `b` for the given measurement order and `−log₂ b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiuConstant {
    pub b: f64,
    pub neg_log_b: f64,
}

pub fn liu_constant(bases: &[ProjectiveBasis]) -> Result<LiuConstant> {
    let refs: Vec<&ProjectiveBasis> = bases.iter().collect();
    require_multiple(&refs)?;
    let b = terminal_path_weights(&refs).into_iter().fold(0.0, f64::max);
    Ok(LiuConstant {
        b,
        neg_log_b: -b.log2(),
    })
}

fn check_single_qudit(rho_a: &DensityOperator, dim: usize) -> Result<()> {
    if rho_a.dims() != [dim] {
        return Err(EurError::Contract(format!(
            "expected a single-subsystem state of dimension {dim}, got dims {:?}",
            rho_a.dims()
        )));
    }
    Ok(())
}

/// `ℓ_u = −Σ_{i_N} p_{i_N} log₂ (path weight of i_N)` for one measurement order.
pub fn zhang_ell(bases: &[&ProjectiveBasis], rho_a: &DensityOperator) -> Result<f64> {
    require_multiple(bases)?;
    check_single_qudit(rho_a, bases[0].dim())?;
    let last = bases[bases.len() - 1];
    let weights = terminal_path_weights(bases);
    Ok(last
        .vectors()
        .iter()
        .zip(&weights)
        .map(|(u, w)| {
            let p = rho_a
                .matrix()
                .apply(u)
                .map(|rho_u| u.inner(&rho_u).re)
                .unwrap_or(0.0);
            if p <= 0.0 {
                0.0
            } else {
                -p * w.log2()
            }
        })
        .sum())
}

/// `ℓ_u` for one ordering of the measurements, given as indices into the original list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderingValue {
    pub ordering: Vec<usize>,
    pub ell: f64,
}

/// All `ℓ_u` values over the `N!` orderings and their maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZhangBound {
    pub orderings: Vec<OrderingValue>,
    pub max: f64,
}

pub fn zhang_bound(bases: &[ProjectiveBasis], rho_a: &DensityOperator) -> Result<ZhangBound> {
    if bases.len() > MAX_ZHANG_MEASUREMENTS {
        return Err(EurError::Contract(format!(
            "ordering search supports at most {MAX_ZHANG_MEASUREMENTS} measurements, got {}",
            bases.len()
        )));
    }
    let refs: Vec<&ProjectiveBasis> = bases.iter().collect();
    require_multiple(&refs)?;
    let mut orderings = Vec::new();
    for perm in (0..bases.len()).permutations(bases.len()) {
        let ordered: Vec<&ProjectiveBasis> = perm.iter().map(|&i| &bases[i]).collect();
        let ell = zhang_ell(&ordered, rho_a)?;
        orderings.push(OrderingValue {
            ordering: perm,
            ell,
        });
    }
    let max = orderings.iter().map(|o| o.ell).fold(f64::NEG_INFINITY, f64::max);
    Ok(ZhangBound { orderings, max })
}

/// Entropies of the unmeasured state entering every tripartite bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyTerms {
    #[serde(rename = "S_A")]
    pub s_a: f64,
    #[serde(rename = "S_A_given_B")]
    pub cond_ab: f64,
    #[serde(rename = "S_A_given_C")]
    pub cond_ac: f64,
    #[serde(rename = "I_AB")]
    pub mi_ab: f64,
    #[serde(rename = "I_AC")]
    pub mi_ac: f64,
}

impl EntropyTerms {
    pub fn compute(rho: &DensityOperator) -> Result<Self> {
        check_tripartite(rho)?;
        Ok(EntropyTerms {
            s_a: subsystem_entropy(rho, &[ALICE])?,
            cond_ab: conditional_entropy(rho, &[ALICE], &[BOB])?,
            cond_ac: conditional_entropy(rho, &[ALICE], &[CHARLIE])?,
            mi_ab: mutual_information(rho, &[ALICE], &[BOB])?,
            mi_ac: mutual_information(rho, &[ALICE], &[CHARLIE])?,
        })
    }

    pub fn half_conditional_sum(&self) -> f64 {
        0.5 * (self.cond_ab + self.cond_ac)
    }

    pub fn half_mutual_sum(&self) -> f64 {
        0.5 * (self.mi_ab + self.mi_ac)
    }
}

/// Per-measurement quantities: `H(M)`, `H(M|memory)` and `I(M:memory)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasuredTerm {
    pub label: String,
    pub memory: &'static str,
    pub outcome_entropy: f64,
    pub conditional_entropy: f64,
    pub holevo: f64,
}

/// Everything a bound needs from one state and one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioTerms {
    pub n: usize,
    pub split: usize,
    pub entropy: EntropyTerms,
    pub measured: Vec<MeasuredTerm>,
}

impl ScenarioTerms {
    pub fn compute(rho: &DensityOperator, scenario: &MeasurementScenario) -> Result<Self> {
        check_scenario(rho, scenario)?;
        let entropy = EntropyTerms::compute(rho)?;
        let measured = scenario
            .bases()
            .iter()
            .enumerate()
            .map(|(m, basis)| {
                let memory = scenario.memory_of(m);
                Ok(MeasuredTerm {
                    label: basis.label().to_string(),
                    memory: if memory == BOB { "B" } else { "C" },
                    outcome_entropy: outcome_entropy(rho, basis, ALICE)?,
                    conditional_entropy: measured_conditional_entropy(rho, basis, ALICE, &[memory])?,
                    holevo: holevo(rho, basis, ALICE, &[memory])?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScenarioTerms {
            n: scenario.len(),
            split: scenario.split(),
            entropy,
            measured,
        })
    }

    /// `Σ_{m≤N′} H(M_m|B) + Σ_{m>N′} H(M_m|C)`.
    pub fn uncertainty(&self) -> f64 {
        self.measured.iter().map(|t| t.conditional_entropy).sum()
    }

    /// `Σ_{m≤N′} I(M_m:B) + Σ_{m>N′} I(M_m:C)`.
    pub fn holevo_sum(&self) -> f64 {
        self.measured.iter().map(|t| t.holevo).sum()
    }

    pub fn outcome_entropy_sum(&self) -> f64 {
        self.measured.iter().map(|t| t.outcome_entropy).sum()
    }

    /// Pre-clamp `δ = (N − 1)·½[I(A:B) + I(A:C)] − Holevo sum`.
    pub fn delta(&self) -> f64 {
        (self.n as f64 - 1.0) * self.entropy.half_mutual_sum() - self.holevo_sum()
    }

    /// Assembles `constant + (N − 1)·½[S(A|B) + S(A|C)] + max{0, δ}`.
    pub fn assemble(&self, constant: f64) -> TripartiteBound {
        let delta = self.delta();
        TripartiteBound {
            bound: constant
                + (self.n as f64 - 1.0) * self.entropy.half_conditional_sum()
                + delta.max(0.0),
            delta,
            constant,
        }
    }

    /// Coles three-MUB form: `1 + ½[S(A|B) + S(A|C)] + max{0, δ′}` with
    /// `δ′ = 1 + ½[I(A:B) + I(A:C)] − Holevo sum`.
    pub fn assemble_coles(&self) -> ColesBound {
        let delta_prime = 1.0 + self.entropy.half_mutual_sum() - self.holevo_sum();
        ColesBound {
            bound: 1.0 + self.entropy.half_conditional_sum() + delta_prime.max(0.0),
            delta_prime,
        }
    }
}

fn check_tripartite(rho: &DensityOperator) -> Result<()> {
    if rho.num_subsystems() != 3 {
        return Err(EurError::Contract(format!(
            "a tripartite state is required, got {} subsystems",
            rho.num_subsystems()
        )));
    }
    Ok(())
}

fn check_scenario(rho: &DensityOperator, scenario: &MeasurementScenario) -> Result<()> {
    check_tripartite(rho)?;
    if rho.dims()[ALICE] != scenario.dim() {
        return Err(EurError::Dimension(format!(
            "bases have dimension {} but subsystem A has dimension {}",
            scenario.dim(),
            rho.dims()[ALICE]
        )));
    }
    Ok(())
}

/// A clamped bound with its pre-clamp correction term and the complementarity constant used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripartiteBound {
    pub bound: f64,
    pub delta: f64,
    pub constant: f64,
}

/// Liu-constant tripartite bound for `N` measurements.
pub fn theorem1_bound(rho: &DensityOperator, scenario: &MeasurementScenario) -> Result<TripartiteBound> {
    let liu = liu_constant(scenario.bases())?;
    Ok(ScenarioTerms::compute(rho, scenario)?.assemble(liu.neg_log_b))
}

/// Zhang-constant tripartite bound, `max_u ℓ_u` evaluated on `ρ_A`.
pub fn corollary1_bound(rho: &DensityOperator, scenario: &MeasurementScenario) -> Result<TripartiteBound> {
    let zhang = zhang_bound(scenario.bases(), &rho.reduce(&[ALICE])?)?;
    Ok(ScenarioTerms::compute(rho, scenario)?.assemble(zhang.max))
}

/// Converts any memory-free lower bound `lb` on `Σ_m H(M_m)` into
/// `lb − Σ_{m≤N′} I(M_m:B) − Σ_{m>N′} I(M_m:C)`.
pub fn generic_tripartite_bound(
    lb: f64,
    rho: &DensityOperator,
    scenario: &MeasurementScenario,
) -> Result<f64> {
    if !lb.is_finite() {
        return Err(EurError::Contract(format!("lower bound {lb} is not finite")));
    }
    Ok(lb - ScenarioTerms::compute(rho, scenario)?.holevo_sum())
}

/// Three-MUB qubit bound and its pre-clamp `δ′`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColesBound {
    pub bound: f64,
    pub delta_prime: f64,
}

/// Checks that the scenario is three pairwise mutually unbiased qubit bases.
pub fn check_qubit_mub_triple(scenario: &MeasurementScenario) -> Result<()> {
    if scenario.len() != 3 || scenario.dim() != 2 {
        return Err(EurError::Contract(format!(
            "three qubit bases are required, got {} bases of dimension {}",
            scenario.len(),
            scenario.dim()
        )));
    }
    for (a, b) in (0..3).tuple_combinations() {
        let (x, y) = (&scenario.bases()[a], &scenario.bases()[b]);
        for u in x.vectors() {
            for v in y.vectors() {
                let o = u.overlap(v);
                if (o - 0.5).abs() > MUB_TOL {
                    return Err(EurError::Contract(format!(
                        "bases {:?} and {:?} are not mutually unbiased (overlap {o})",
                        x.label(),
                        y.label()
                    )));
                }
            }
        }
    }
    Ok(())
}

pub fn coles_tripartite_bound(rho: &DensityOperator, scenario: &MeasurementScenario) -> Result<ColesBound> {
    check_qubit_mub_triple(scenario)?;
    if rho.dims() != [2, 2, 2] {
        return Err(EurError::Contract(format!(
            "three-qubit state required, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(ScenarioTerms::compute(rho, scenario)?.assemble_coles())
}

/// Bipartite bound `q_MU + S(A|memory)` for `H(X|memory) + H(Z|memory)`.
pub fn berta_bound(
    rho: &DensityOperator,
    x: &ProjectiveBasis,
    z: &ProjectiveBasis,
    memory: &[usize],
) -> Result<f64> {
    Ok(mu_constant(x, z)?.q_mu + conditional_entropy(rho, &[ALICE], memory)?)
}

/// Memory-split bound `H(X|B) + H(Z|C) ≥ q_MU`.
pub fn tripartite_mu_bound(x: &ProjectiveBasis, z: &ProjectiveBasis) -> Result<f64> {
    Ok(mu_constant(x, z)?.q_mu)
}

fn require_two_measurement(scenario: &MeasurementScenario) -> Result<()> {
    if scenario.len() != 2 || scenario.split() != 1 {
        return Err(EurError::Contract(format!(
            "two measurements split one-to-one are required, got N = {}, split = {}",
            scenario.len(),
            scenario.split()
        )));
    }
    Ok(())
}

/// `q_MU + ½[S(A|B) + S(A|C)] + max{0, δ}` for one basis per memory.
pub fn dolat_two_measurement_bound(
    rho: &DensityOperator,
    scenario: &MeasurementScenario,
) -> Result<TripartiteBound> {
    require_two_measurement(scenario)?;
    let mu = mu_constant(&scenario.bases()[0], &scenario.bases()[1])?;
    Ok(ScenarioTerms::compute(rho, scenario)?.assemble(mu.q_mu))
}

/// Sum of measured conditional entropies for the scenario.
pub fn uncertainty(rho: &DensityOperator, scenario: &MeasurementScenario) -> Result<f64> {
    Ok(ScenarioTerms::compute(rho, scenario)?.uncertainty())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairConstant {
    pub first: String,
    pub second: String,
    pub c: f64,
    pub q_mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Complementarity {
    pub b: Option<f64>,
    pub neg_log_b: Option<f64>,
    pub zhang_max: Option<f64>,
    pub q_mu: Vec<PairConstant>,
}

/// Every uncertainty and bound value at one state and scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "uncertainty_U")]
    pub uncertainty_u: f64,
    /// `None` for a single measurement, where the Liu constant is undefined.
    pub theorem1_bound: Option<f64>,
    pub corollary1_bound: Option<f64>,
    /// Present only for three mutually unbiased qubit bases on three qubits.
    pub coles_bound: Option<f64>,
    pub generic_bounds: Vec<NamedValue>,
    pub delta: f64,
    pub delta_prime: Option<f64>,
    pub complementarity: Complementarity,
    pub entropy_terms: EntropyTerms,
    pub measurements: Vec<MeasuredTerm>,
    pub holevo_sum: f64,
    /// `U − max(applicable bounds)`.
    pub slack: f64,
    pub slack_theorem1: Option<f64>,
    pub slack_coles: Option<f64>,
    pub satisfies_theorem1: Option<bool>,
    pub satisfies_coles: Option<bool>,
    /// `L₂ − L₁`; equals `1 − S(ρ_A)` whenever `delta > 0`.
    pub l2_minus_l1: Option<f64>,
    /// `delta > INEQUALITY_TOL`, so roundoff around zero is not reported as the positive regime.
    pub delta_positive: bool,
}

impl BoundReport {
    /// Every bound value in the report, named.
    pub fn all_bounds(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        if let Some(v) = self.theorem1_bound {
            out.push(("theorem1".to_string(), v));
        }
        if let Some(v) = self.corollary1_bound {
            out.push(("corollary1".to_string(), v));
        }
        if let Some(v) = self.coles_bound {
            out.push(("coles".to_string(), v));
        }
        out.extend(self.generic_bounds.iter().map(|g| (g.name.clone(), g.value)));
        out
    }
}

/// Assembles the full report: `U`, `L₁` (Liu), Zhang, `L₂` (three-MUB qubit case), legacy
/// two-measurement bounds when `N = 2`, split 1, and the derived slacks.
pub fn case_quantities(rho: &DensityOperator, scenario: &MeasurementScenario) -> Result<BoundReport> {
    let terms = ScenarioTerms::compute(rho, scenario)?;
    case_quantities_from_terms(rho, scenario, &terms)
}

pub fn case_quantities_from_terms(
    rho: &DensityOperator,
    scenario: &MeasurementScenario,
    terms: &ScenarioTerms,
) -> Result<BoundReport> {
    let u = terms.uncertainty();
    let bases = scenario.bases();
    let multi = bases.len() >= 2;

    let liu = if multi { Some(liu_constant(bases)?) } else { None };
    let zhang = if multi && bases.len() <= MAX_ZHANG_MEASUREMENTS {
        Some(zhang_bound(bases, &rho.reduce(&[ALICE])?)?)
    } else {
        None
    };
    let theorem1 = liu.map(|l| terms.assemble(l.neg_log_b));
    let corollary1 = zhang.as_ref().map(|z| terms.assemble(z.max));
    let coles = if check_qubit_mub_triple(scenario).is_ok() && rho.dims() == [2, 2, 2] {
        Some(terms.assemble_coles())
    } else {
        None
    };

    let q_mu = bases
        .iter()
        .tuple_combinations()
        .map(|(a, b)| {
            mu_constant(a, b).map(|mu| PairConstant {
                first: a.label().to_string(),
                second: b.label().to_string(),
                c: mu.c,
                q_mu: mu.q_mu,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut generic_bounds = Vec::new();
    if let Some(l) = liu {
        let lb = l.neg_log_b + (terms.n as f64 - 1.0) * terms.entropy.s_a;
        generic_bounds.push(NamedValue {
            name: "converted_liu".into(),
            value: lb - terms.holevo_sum(),
        });
    }
    if scenario.len() == 2 && scenario.split() == 1 {
        let mu = mu_constant(&bases[0], &bases[1])?;
        generic_bounds.push(NamedValue {
            name: "tripartite_mu".into(),
            value: mu.q_mu,
        });
        generic_bounds.push(NamedValue {
            name: "dolat_two_measurement".into(),
            value: terms.assemble(mu.q_mu).bound,
        });
    }

    let mut report = BoundReport {
        uncertainty_u: u,
        theorem1_bound: theorem1.map(|t| t.bound),
        corollary1_bound: corollary1.map(|t| t.bound),
        coles_bound: coles.map(|c| c.bound),
        generic_bounds,
        delta: terms.delta(),
        delta_prime: coles.map(|c| c.delta_prime),
        complementarity: Complementarity {
            b: liu.map(|l| l.b),
            neg_log_b: liu.map(|l| l.neg_log_b),
            zhang_max: zhang.map(|z| z.max),
            q_mu,
        },
        entropy_terms: terms.entropy,
        measurements: terms.measured.clone(),
        holevo_sum: terms.holevo_sum(),
        slack: f64::INFINITY,
        slack_theorem1: theorem1.map(|t| u - t.bound),
        slack_coles: coles.map(|c| u - c.bound),
        satisfies_theorem1: theorem1.map(|t| u - t.bound >= -INEQUALITY_TOL),
        satisfies_coles: coles.map(|c| u - c.bound >= -INEQUALITY_TOL),
        l2_minus_l1: theorem1.zip(coles).map(|(t, c)| c.bound - t.bound),
        delta_positive: terms.delta() > INEQUALITY_TOL,
    };
    report.slack = report
        .all_bounds()
        .iter()
        .map(|(_, v)| u - v)
        .fold(f64::INFINITY, f64::min);
    Ok(report)
}
