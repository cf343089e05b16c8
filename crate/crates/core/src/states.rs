//! Named three-qubit state families, Pauli bases, closed-form reference curves and seeded
//! random ensembles.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::bounds::CaseId;
use crate::entropy::{DensityOperator, ProjectiveBasis};
use crate::error::{EurError, Result};
use crate::linalg::{CMatrix, CVector};

/// Largest total dimension accepted by the random-state generators.
pub const RANDOM_DIM_CAP: usize = 64;

/// A parametrized state family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    Werner { p: f64 },
    GeneralizedW { theta: f64, phi: f64 },
    Ghz,
}

impl StateFamily {
    pub fn name(&self) -> &'static str {
        match self {
            StateFamily::Werner { .. } => "werner",
            StateFamily::GeneralizedW { .. } => "generalized_w",
            StateFamily::Ghz => "ghz",
        }
    }

    pub fn build(&self) -> Result<DensityOperator> {
        match *self {
            StateFamily::Werner { p } => make_werner(p),
            StateFamily::GeneralizedW { theta, phi } => make_generalized_w(theta, phi),
            StateFamily::Ghz => Ok(ghz()),
        }
    }
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz_vector() -> CVector {
    let mut amps = [0.0; 8];
    amps[0] = FRAC_1_SQRT_2;
    amps[7] = FRAC_1_SQRT_2;
    CVector::from_real(&amps).expect("finite amplitudes")
}

pub fn ghz() -> DensityOperator {
    DensityOperator::from_pure(&ghz_vector(), vec![2, 2, 2]).expect("GHZ is a valid state")
}

/// Werner-type mixture `(1 − p)|GHZ⟩⟨GHZ| + (p/8) I`.
pub fn make_werner(p: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&p) {
        return Err(EurError::Domain(format!("Werner weight p = {p} outside [0, 1]")));
    }
    let mut m = CMatrix::identity(8).scale_real(p / 8.0);
    let coherent = (1.0 - p) / 2.0;
    for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
        let cur = m.get(i, j);
        m.set(i, j, cur + Complex64::new(coherent, 0.0));
    }
    DensityOperator::new(m, vec![2, 2, 2])
}

/// `sinθ cosφ |100⟩ + sinθ sinφ |010⟩ + cosθ |001⟩`.
pub fn make_generalized_w(theta: f64, phi: f64) -> Result<DensityOperator> {
    if !(0.0..=PI).contains(&theta) {
        return Err(EurError::Domain(format!("theta = {theta} outside [0, pi]")));
    }
    if !(0.0..2.0 * PI).contains(&phi) {
        return Err(EurError::Domain(format!("phi = {phi} outside [0, 2pi)")));
    }
    let mut amps = [0.0; 8];
    amps[0b100] = theta.sin() * phi.cos();
    amps[0b010] = theta.sin() * phi.sin();
    amps[0b001] = theta.cos();
    DensityOperator::from_pure(&CVector::from_real(&amps)?, vec![2, 2, 2])
}

/// Eigenbases of σ_x, σ_y and σ_z, labelled `sigma_x`, `sigma_y`, `sigma_z`.
pub fn pauli_bases() -> [ProjectiveBasis; 3] {
    let h = FRAC_1_SQRT_2;
    let v = |a: Complex64, b: Complex64| CVector::new(vec![a, b]).expect("finite");
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    let x = ProjectiveBasis::new("sigma_x", vec![v(re(h), re(h)), v(re(h), re(-h))]);
    let y = ProjectiveBasis::new("sigma_y", vec![v(re(h), im(h)), v(re(h), im(-h))]);
    let z = Ok(ProjectiveBasis::computational("sigma_z", 2));
    [x, y, z].map(|b| b.expect("Pauli eigenbases are orthonormal"))
}

/// `x·log₂(arg)` with the `0·log 0 = 0` convention.
fn xlog2(x: f64, arg: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * arg.log2()
    }
}

/// The common value of the uncertainty and both bounds for the Werner family, either case:
/// `−(p/2)log₂(p/8) − ((2−p)/2)log₂((2−p)/8)`.
pub fn closed_form_werner(p: f64) -> f64 {
    -xlog2(p / 2.0, p / 8.0) - xlog2((2.0 - p) / 2.0, (2.0 - p) / 8.0)
}

/// Term evaluators of the generalized-W closed forms at `φ = π/4`.
pub mod wstate_terms {
    use super::xlog2;

    pub fn alpha(theta: f64) -> f64 {
        let s2 = theta.sin().powi(2);
        xlog2(s2 / 2.0, 2.0 * s2)
    }

    pub fn beta(theta: f64) -> f64 {
        let w = (2.0 * theta.cos().powi(2) + theta.sin().powi(2)) / 2.0;
        xlog2(w, w)
    }

    fn root(theta: f64) -> f64 {
        (3.0 + (4.0 * theta).cos()).sqrt()
    }

    pub fn gamma_plus(theta: f64) -> f64 {
        let w = 2.0 + root(theta);
        -xlog2(w / 2.0, w / 8.0)
    }

    pub fn gamma_minus(theta: f64) -> f64 {
        let w = (2.0 - root(theta)).max(0.0);
        -xlog2(w / 2.0, w / 8.0)
    }

    pub fn alpha_prime(theta: f64) -> f64 {
        let s2 = theta.sin().powi(2);
        xlog2(s2, s2)
    }

    pub fn zeta(theta: f64) -> f64 {
        let c2 = theta.cos().powi(2);
        xlog2(c2, c2 / 2.0)
    }

    pub fn alpha_double_prime(theta: f64) -> f64 {
        let s2 = theta.sin().powi(2);
        xlog2(s2 / 2.0, 2.0 * s2.powi(3))
    }

    pub fn zeta_prime(theta: f64) -> f64 {
        let c2 = theta.cos().powi(2);
        xlog2(c2, c2)
    }
}

/// Uncertainty and the two bounds at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveValues {
    pub u: f64,
    pub l1: f64,
    pub l2: f64,
}

/// Closed-form curves of the generalized W state at `φ = π/4`.
pub fn closed_form_wstate(theta: f64, case: CaseId) -> CurveValues {
    use wstate_terms::*;
    let gammas = gamma_plus(theta) + gamma_minus(theta);
    match case {
        CaseId::One => {
            let u = alpha_prime(theta) + 2.0 * beta(theta) + gammas;
            CurveValues {
                u,
                l1: -1.0 + alpha(theta) + beta(theta) + gammas,
                l2: u,
            }
        }
        CaseId::Two => {
            let u = alpha_double_prime(theta) + zeta_prime(theta) + beta(theta) + gammas;
            CurveValues {
                u,
                l1: alpha_prime(theta) + zeta(theta) + gammas,
                l2: u,
            }
        }
    }
}

/// Which closed-form family a curve follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFamily {
    Werner,
    GeneralizedW,
}

/// A closed-form reference curve for one family and measurement case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormCurve {
    pub family: CurveFamily,
    pub case: CaseId,
}

impl ClosedFormCurve {
    pub fn evaluate(&self, param: f64) -> CurveValues {
        match self.family {
            CurveFamily::Werner => {
                let v = closed_form_werner(param);
                CurveValues { u: v, l1: v, l2: v }
            }
            CurveFamily::GeneralizedW => closed_form_wstate(param, self.case),
        }
    }
}

/// Standard normal draws on top of SplitMix64.
///
/// Each draw consumes two 64-bit outputs `a`, `b`, maps them to `u1 = 1 − (a >> 11)·2⁻⁵³`
/// and `u2 = (b >> 11)·2⁻⁵³`, and returns `√(−2 ln u1)·cos(2π u2)` (Box–Muller, cosine branch
/// only). SplitMix64 adds `0x9E3779B97F4A7C15` to its state per output and mixes with
/// `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`; the state is initialized to the seed.
#[derive(Debug, Clone)]
pub struct GaussianSource {
    rng: SplitMix64,
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        GaussianSource {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }

    /// Real and imaginary parts independent standard normals.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im)
    }
}

/// Seed for the `index`-th independent stream derived from a master seed.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    SplitMix64::seed_from_u64(seed ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03)).next_u64()
}

fn check_random_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(EurError::Dimension(format!("invalid subsystem dimensions {dims:?}")));
    }
    let d = dims.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x));
    match d {
        Some(d) if d <= RANDOM_DIM_CAP => Ok(d),
        _ => Err(EurError::Dimension(format!(
            "dimensions {dims:?} exceed the random-state cap of {RANDOM_DIM_CAP}"
        ))),
    }
}

/// Hilbert–Schmidt random mixed state `GG†/tr(GG†)` with `G` complex Gaussian.
pub fn random_density(dims: &[usize], seed: u64) -> Result<DensityOperator> {
    let d = check_random_dims(dims)?;
    let mut src = GaussianSource::new(seed);
    let g: Vec<Complex64> = (0..d * d).map(|_| src.complex_normal()).collect();
    let mut m = CMatrix::zeros(d);
    for i in 0..d {
        for j in i..d {
            let z: Complex64 = (0..d).map(|k| g[i * d + k] * g[j * d + k].conj()).sum();
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    let tr = m.trace().re;
    Ok(DensityOperator::from_trusted(m.scale_real(1.0 / tr), dims.to_vec()))
}

/// Haar-random pure state from a normalized complex Gaussian vector.
pub fn random_pure(dims: &[usize], seed: u64) -> Result<DensityOperator> {
    let d = check_random_dims(dims)?;
    let mut src = GaussianSource::new(seed);
    let psi = CVector::new((0..d).map(|_| src.complex_normal()).collect())?;
    DensityOperator::from_pure(&psi, dims.to_vec())
}

/// Haar-random orthonormal basis: Gram–Schmidt on complex Gaussian vectors.
pub fn random_basis(dim: usize, seed: u64, label: impl Into<String>) -> Result<ProjectiveBasis> {
    if dim == 0 || dim > RANDOM_DIM_CAP {
        return Err(EurError::Dimension(format!("random basis dimension {dim} out of range")));
    }
    let mut src = GaussianSource::new(seed);
    let mut vectors: Vec<CVector> = Vec::with_capacity(dim);
    while vectors.len() < dim {
        let mut w: Vec<Complex64> = (0..dim).map(|_| src.complex_normal()).collect();
        // Two passes of modified Gram-Schmidt.
        for _ in 0..2 {
            for v in &vectors {
                let proj: Complex64 = v
                    .entries()
                    .iter()
                    .zip(&w)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for (wi, vi) in w.iter_mut().zip(v.entries()) {
                    *wi -= proj * vi;
                }
            }
        }
        let candidate = CVector::new(w)?;
        if candidate.norm() > 1e-6 {
            vectors.push(candidate.normalized()?);
        }
    }
    ProjectiveBasis::new(label, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eig;
    use approx::assert_abs_diff_eq;

    #[test]
    fn werner_limits() {
        assert!(make_werner(0.0).unwrap().matrix().max_abs_diff(ghz().matrix()) < 1e-15);
        let mixed = DensityOperator::maximally_mixed(vec![2, 2, 2]).unwrap();
        assert!(make_werner(1.0).unwrap().matrix().max_abs_diff(mixed.matrix()) < 1e-15);
        assert!(make_werner(1.2).is_err());
        assert!(make_werner(-0.1).is_err());
    }

    #[test]
    fn werner_half_spectrum() {
        let s = hermitian_eig(make_werner(0.5).unwrap().matrix()).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 1.0 / 16.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[7], 9.0 / 16.0, epsilon = 1e-14);
    }

    #[test]
    fn werner_reduced_a_is_maximally_mixed() {
        for p in [0.0, 0.3, 1.0] {
            let ra = make_werner(p).unwrap().reduce(&[0]).unwrap();
            assert!(ra.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-15);
        }
    }

    #[test]
    fn generalized_w_special_points() {
        let at = |theta, phi| make_generalized_w(theta, phi).unwrap();
        let proj = |i| CMatrix::projector(&CVector::basis(8, i));
        assert!(at(0.0, 0.0).matrix().max_abs_diff(&proj(0b001)) < 1e-15);
        assert!(at(PI / 2.0, 0.0).matrix().max_abs_diff(&proj(0b100)) < 1e-15);
        let mut amps = [0.0; 8];
        amps[0b100] = FRAC_1_SQRT_2;
        amps[0b010] = FRAC_1_SQRT_2;
        let bell_ab = CMatrix::projector(&CVector::from_real(&amps).unwrap());
        assert!(at(PI / 2.0, PI / 4.0).matrix().max_abs_diff(&bell_ab) < 1e-15);
        assert!(make_generalized_w(-0.1, 0.0).is_err());
        assert!(make_generalized_w(0.1, 2.0 * PI).is_err());
    }

    #[test]
    fn pauli_bases_are_mutually_unbiased() {
        let bases = pauli_bases();
        assert_eq!(bases[2].vectors()[0], CVector::basis(2, 0));
        assert_eq!(bases[2].vectors()[1], CVector::basis(2, 1));
        for (i, a) in bases.iter().enumerate() {
            for b in bases.iter().skip(i + 1) {
                for u in a.vectors() {
                    for v in b.vectors() {
                        assert_abs_diff_eq!(u.overlap(v), 0.5, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn werner_closed_form_values() {
        assert_abs_diff_eq!(closed_form_werner(0.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(closed_form_werner(1.0), 3.0, epsilon = 1e-15);
        let direct = -0.2 * 0.05f64.log2() - 0.8 * 0.2f64.log2();
        assert_abs_diff_eq!(closed_form_werner(0.4), direct, epsilon = 1e-14);
    }

    #[test]
    fn gamma_terms_at_zero() {
        assert_abs_diff_eq!(wstate_terms::gamma_plus(0.0), 2.0, epsilon = 1e-15);
        assert_eq!(wstate_terms::gamma_minus(0.0), 0.0);
    }

    #[test]
    fn closed_form_terms_finite_on_grid() {
        for k in 0..=100 {
            let theta = k as f64 * PI / 100.0;
            for case in [CaseId::One, CaseId::Two] {
                let v = closed_form_wstate(theta, case);
                assert!(v.u.is_finite() && v.l1.is_finite() && v.l2.is_finite(), "theta {theta}");
            }
        }
    }

    #[test]
    fn random_states_are_valid_and_deterministic() {
        for seed in 0..20 {
            let r = random_density(&[2, 2, 2], seed).unwrap();
            let checked = DensityOperator::new(r.matrix().clone(), vec![2, 2, 2]).unwrap();
            assert_eq!(checked, r);
            assert_eq!(random_density(&[2, 2, 2], seed).unwrap(), r);
            let p = random_pure(&[2, 2, 2], seed).unwrap();
            assert!(DensityOperator::new(p.matrix().clone(), vec![2, 2, 2]).is_ok());
        }
        assert_ne!(random_density(&[2, 2], 1).unwrap(), random_density(&[2, 2], 2).unwrap());
        assert!(random_density(&[4, 4, 8], 0).is_err());
    }

    #[test]
    fn hilbert_schmidt_mean_is_maximally_mixed() {
        let d = 8;
        let mut mean = CMatrix::zeros(d);
        let n = 1000;
        for seed in 0..n {
            mean = &mean + random_density(&[2, 2, 2], stream_seed(7, seed)).unwrap().matrix();
        }
        let mean = mean.scale_real(1.0 / n as f64);
        let target = CMatrix::identity(d).scale_real(1.0 / d as f64);
        assert!(mean.max_abs_diff(&target) < 0.05);
    }

    #[test]
    fn random_basis_orthonormal() {
        for seed in 0..10 {
            let b = random_basis(2, seed, "r").unwrap();
            assert_eq!(b.dim(), 2);
            let b3 = random_basis(3, seed, "r3").unwrap();
            assert_eq!(b3.dim(), 3);
        }
    }

    #[test]
    fn gaussian_source_moments() {
        let mut src = GaussianSource::new(123);
        let n = 20000;
        let xs: Vec<f64> = (0..n).map(|_| src.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03, "{mean}");
        assert!((var - 1.0).abs() < 0.05, "{var}");
    }
}
