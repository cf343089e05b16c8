//! Entropic quantities on multipartite density operators.
//!
//! All logarithms are base 2. Index sets name subsystems by position (0 = leftmost factor).

use num_complex::Complex64;

use crate::error::{EurError, Result};
use crate::linalg::{
    check_dims, hermitian_eig, normalize_subset, partial_trace, subset_offsets, CMatrix, CVector,
    Spectrum,
};

/// Tolerance used when validating density operators (Hermiticity, trace, positivity).
pub const STATE_TOL: f64 = 1e-9;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero when computing entropies.
pub const EIGEN_CLAMP: f64 = 1e-10;

/// Outcomes with probability below this are dropped from Holevo averages.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Tolerance on the Gram matrix of a [`ProjectiveBasis`].
pub const BASIS_TOL: f64 = 1e-10;

/// A multipartite mixed state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
    dims: Vec<usize>,
}

impl DensityOperator {
    /// Validates every density-operator invariant, naming the first one violated.
    pub fn new(matrix: CMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(matrix.dim(), &dims).map_err(|e| EurError::InvalidState(e.to_string()))?;
        let herm = matrix.hermiticity_error();
        if herm > STATE_TOL {
            return Err(EurError::InvalidState(format!(
                "not Hermitian: max |rho - rho†| = {herm:e}"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(EurError::InvalidState(format!(
                "trace is {}{:+}i, expected 1",
                tr.re, tr.im
            )));
        }
        let spectrum = hermitian_eig(&matrix)?;
        let min = spectrum.eigenvalues[0];
        if min < -STATE_TOL {
            return Err(EurError::InvalidState(format!(
                "not positive semidefinite: minimum eigenvalue {min:e}"
            )));
        }
        Ok(DensityOperator { matrix, dims })
    }

    /// Wraps a matrix already known to be a valid state (reductions, dephasings).
    pub(crate) fn from_trusted(matrix: CMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(matrix.dim(), dims.iter().product::<usize>());
        DensityOperator { matrix, dims }
    }

    /// `|ψ⟩⟨ψ|` for a state vector, renormalized.
    pub fn from_pure(psi: &CVector, dims: Vec<usize>) -> Result<Self> {
        check_dims(psi.dim(), &dims)?;
        let psi = psi.normalized()?;
        Ok(DensityOperator {
            matrix: CMatrix::projector(&psi),
            dims,
        })
    }

    /// `I/d` on the given subsystems.
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        check_dims(d, &dims)?;
        Ok(DensityOperator {
            matrix: CMatrix::identity(d).scale_real(1.0 / d as f64),
            dims,
        })
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &DensityOperator) -> Result<Self> {
        let matrix = crate::linalg::kron(&self.matrix, &other.matrix)?;
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Ok(DensityOperator { matrix, dims })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_eig(&self.matrix)
    }

    /// Reduced state on `keep`, subsystems in their original order.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityOperator> {
        let keep = normalize_subset(keep, self.dims.len())?;
        let matrix = partial_trace(&self.matrix, &self.dims, &keep)?;
        let dims = keep.iter().map(|&k| self.dims[k]).collect();
        Ok(DensityOperator { matrix, dims })
    }
}

/// An orthonormal measurement basis on a single subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveBasis {
    label: String,
    vectors: Vec<CVector>,
}

impl ProjectiveBasis {
    pub fn new(label: impl Into<String>, vectors: Vec<CVector>) -> Result<Self> {
        let label = label.into();
        let d = vectors.len();
        if d == 0 {
            return Err(EurError::Contract(format!("basis {label:?} has no vectors")));
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != d) {
            return Err(EurError::Dimension(format!(
                "basis {label:?} has {d} vectors of dimension {}; a complete basis needs {d}",
                v.dim()
            )));
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                let err = (u.inner(v) - target).norm();
                if err > BASIS_TOL {
                    return Err(EurError::Contract(format!(
                        "basis {label:?} is not orthonormal: |<v{i}|v{j}> - {target}| = {err:e}"
                    )));
                }
            }
        }
        Ok(ProjectiveBasis { label, vectors })
    }

    /// The computational basis `{|0⟩, …, |d−1⟩}`.
    pub fn computational(label: impl Into<String>, dim: usize) -> Self {
        ProjectiveBasis {
            label: label.into(),
            vectors: (0..dim).map(|i| CVector::basis(dim, i)).collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Outcome probabilities of a measurement together with the normalized states left on the
/// unmeasured subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcomeEnsemble {
    pub probabilities: Vec<f64>,
    /// `None` for outcomes whose probability is below [`ZERO_PROBABILITY`].
    pub conditional_states: Vec<Option<DensityOperator>>,
    /// Original indices of the subsystems the conditional states live on.
    pub remaining: Vec<usize>,
}

/// Shannon entropy in bits, with `0·log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if let Some(&bad) = p.iter().find(|&&x| x < -1e-12 || !x.is_finite()) {
        return Err(EurError::Domain(format!("invalid probability {bad:e}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > STATE_TOL {
        return Err(EurError::Domain(format!("probabilities sum to {total}, expected 1")));
    }
    Ok(p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        .max(0.0))
}

/// Entropy of a Hermitian, unit-trace matrix through its spectrum, applying the clamping rule.
pub(crate) fn matrix_entropy(m: &CMatrix) -> Result<f64> {
    let spectrum = hermitian_eig(m)?;
    let mut eigenvalues = spectrum.eigenvalues;
    for x in eigenvalues.iter_mut() {
        if *x < -EIGEN_CLAMP {
            return Err(EurError::Positivity(*x));
        }
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    shannon_entropy(&eigenvalues)
}

/// `S(ρ) = −tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

/// Entropy of the reduction onto `subset`; the empty subsystem has entropy 0.
pub fn subsystem_entropy(rho: &DensityOperator, subset: &[usize]) -> Result<f64> {
    if subset.is_empty() {
        normalize_subset(subset, rho.num_subsystems())?;
        return Ok(0.0);
    }
    if normalize_subset(subset, rho.num_subsystems())?.len() == rho.num_subsystems() {
        return von_neumann_entropy(rho);
    }
    von_neumann_entropy(&rho.reduce(subset)?)
}

fn disjoint_union(rho: &DensityOperator, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    let n = rho.num_subsystems();
    let a = normalize_subset(a, n)?;
    let b = normalize_subset(b, n)?;
    if let Some(k) = a.iter().find(|k| b.contains(k)) {
        return Err(EurError::Contract(format!(
            "index sets {a:?} and {b:?} overlap at subsystem {k}"
        )));
    }
    let mut u: Vec<usize> = a.into_iter().chain(b).collect();
    u.sort_unstable();
    Ok(u)
}

/// `S(A|B) = S(ρ_AB) − S(ρ_B)` after tracing out everything outside `sub_a ∪ sub_b`.
pub fn conditional_entropy(rho: &DensityOperator, sub_a: &[usize], sub_b: &[usize]) -> Result<f64> {
    let ab = disjoint_union(rho, sub_a, sub_b)?;
    Ok(subsystem_entropy(rho, &ab)? - subsystem_entropy(rho, sub_b)?)
}

/// `I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB)`.
pub fn mutual_information(rho: &DensityOperator, sub_a: &[usize], sub_b: &[usize]) -> Result<f64> {
    let ab = disjoint_union(rho, sub_a, sub_b)?;
    Ok(subsystem_entropy(rho, sub_a)? + subsystem_entropy(rho, sub_b)?
        - subsystem_entropy(rho, &ab)?)
}

fn check_measurement(rho: &DensityOperator, basis: &ProjectiveBasis, target: usize) -> Result<()> {
    let dims = rho.dims();
    if target >= dims.len() {
        return Err(EurError::Contract(format!(
            "target subsystem {target} out of range for {} subsystems",
            dims.len()
        )));
    }
    if basis.dim() != dims[target] {
        return Err(EurError::Contract(format!(
            "basis {:?} has dimension {} but subsystem {target} has dimension {}",
            basis.label(),
            basis.dim(),
            dims[target]
        )));
    }
    Ok(())
}

/// Unnormalized conditional operators `⟨u_i| ρ |u_i⟩` on the non-target subsystems.
fn conditional_blocks(
    rho: &DensityOperator,
    basis: &ProjectiveBasis,
    target: usize,
) -> (Vec<usize>, Vec<CMatrix>) {
    let dims = rho.dims();
    let rest: Vec<usize> = (0..dims.len()).filter(|&k| k != target).collect();
    let target_off = subset_offsets(dims, &[target]);
    let rest_off = subset_offsets(dims, &rest);
    let m = rho.matrix();
    let blocks = basis
        .vectors()
        .iter()
        .map(|u| {
            let mut block = CMatrix::zeros(rest_off.len());
            for (r, &ro) in rest_off.iter().enumerate() {
                for (c, &co) in rest_off.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (a, &ta) in target_off.iter().enumerate() {
                        let ua = u.entries()[a].conj();
                        for (b, &tb) in target_off.iter().enumerate() {
                            acc += ua * m.get(ta + ro, tb + co) * u.entries()[b];
                        }
                    }
                    block.set(r, c, acc);
                }
            }
            block
        })
        .collect();
    (rest, blocks)
}

/// Dephasing channel `Σ_i (Π_i ⊗ I) ρ (Π_i ⊗ I)` on `target`.
pub fn dephase(
    rho: &DensityOperator,
    basis: &ProjectiveBasis,
    target: usize,
) -> Result<DensityOperator> {
    check_measurement(rho, basis, target)?;
    let (rest, blocks) = conditional_blocks(rho, basis, target);
    let dims = rho.dims();
    let target_off = subset_offsets(dims, &[target]);
    let rest_off = subset_offsets(dims, &rest);
    let mut post = CMatrix::zeros(rho.dim());
    for (u, block) in basis.vectors().iter().zip(&blocks) {
        for (a, &ta) in target_off.iter().enumerate() {
            for (b, &tb) in target_off.iter().enumerate() {
                let w = u.entries()[a] * u.entries()[b].conj();
                if w.norm_sqr() == 0.0 {
                    continue;
                }
                for (r, &ro) in rest_off.iter().enumerate() {
                    for (c, &co) in rest_off.iter().enumerate() {
                        let cur = post.get(ta + ro, tb + co);
                        post.set(ta + ro, tb + co, cur + w * block.get(r, c));
                    }
                }
            }
        }
    }
    Ok(DensityOperator::from_trusted(post, dims.to_vec()))
}

/// Measures `target` in `basis`: returns the post-measurement state and the outcome ensemble.
pub fn measure_subsystem(
    rho: &DensityOperator,
    basis: &ProjectiveBasis,
    target: usize,
) -> Result<(DensityOperator, MeasurementOutcomeEnsemble)> {
    let post = dephase(rho, basis, target)?;
    let ensemble = outcome_ensemble(rho, basis, target)?;
    Ok((post, ensemble))
}

/// Outcome probabilities and normalized conditional states on the remaining subsystems.
pub fn outcome_ensemble(
    rho: &DensityOperator,
    basis: &ProjectiveBasis,
    target: usize,
) -> Result<MeasurementOutcomeEnsemble> {
    check_measurement(rho, basis, target)?;
    let (rest, blocks) = conditional_blocks(rho, basis, target);
    let rest_dims: Vec<usize> = rest.iter().map(|&k| rho.dims()[k]).collect();
    let mut probabilities = Vec::with_capacity(blocks.len());
    let mut conditional_states = Vec::with_capacity(blocks.len());
    for block in blocks {
        let p = block.trace().re;
        if p < ZERO_PROBABILITY {
            probabilities.push(p.max(0.0));
            conditional_states.push(None);
        } else {
            probabilities.push(p);
            let state = if rest_dims.is_empty() {
                DensityOperator::from_trusted(CMatrix::identity(1), vec![1])
            } else {
                DensityOperator::from_trusted(block.scale_real(1.0 / p), rest_dims.clone())
            };
            conditional_states.push(Some(state));
        }
    }
    Ok(MeasurementOutcomeEnsemble {
        probabilities,
        conditional_states,
        remaining: rest,
    })
}

/// `H(M)`: Shannon entropy of the outcome distribution of `basis` on `target`.
pub fn outcome_entropy(rho: &DensityOperator, basis: &ProjectiveBasis, target: usize) -> Result<f64> {
    let ensemble = outcome_ensemble(rho, basis, target)?;
    shannon_entropy(&ensemble.probabilities)
}

fn check_memory(rho: &DensityOperator, target: usize, memory: &[usize]) -> Result<Vec<usize>> {
    let memory = normalize_subset(memory, rho.num_subsystems())?;
    if memory.contains(&target) {
        return Err(EurError::Contract(format!(
            "measured subsystem {target} cannot also be memory {memory:?}"
        )));
    }
    Ok(memory)
}

/// `H(M|B) = S(ρ_{MB}) − S(ρ_B)` on the post-measurement state.
pub fn measured_conditional_entropy(
    rho: &DensityOperator,
    basis: &ProjectiveBasis,
    target: usize,
    memory: &[usize],
) -> Result<f64> {
    check_measurement(rho, basis, target)?;
    let memory = check_memory(rho, target, memory)?;
    let post = dephase(rho, basis, target)?;
    let mut joint = memory.clone();
    joint.push(target);
    Ok(subsystem_entropy(&post, &joint)? - subsystem_entropy(rho, &memory)?)
}

/// Holevo quantity `I(M:B) = S(ρ_B) − Σ_i p_i S(ρ_{B|i})`.
pub fn holevo(
    rho: &DensityOperator,
    basis: &ProjectiveBasis,
    target: usize,
    memory: &[usize],
) -> Result<f64> {
    check_measurement(rho, basis, target)?;
    let memory = check_memory(rho, target, memory)?;
    if memory.is_empty() {
        return Ok(0.0);
    }
    let ensemble = outcome_ensemble(rho, basis, target)?;
    // Positions of the memory subsystems inside the conditional states.
    let local: Vec<usize> = memory
        .iter()
        .map(|m| ensemble.remaining.iter().position(|r| r == m).expect("memory is remaining"))
        .collect();
    let mut average = 0.0;
    for (p, state) in ensemble.probabilities.iter().zip(&ensemble.conditional_states) {
        if let Some(state) = state {
            average += p * subsystem_entropy(state, &local)?;
        }
    }
    Ok(subsystem_entropy(rho, &memory)? - average)
}
