use eur_core::bounds::{
    case_quantities, corollary1_bound, generic_tripartite_bound, liu_constant, mu_constant,
    theorem1_bound, CaseId, MeasurementScenario, ScenarioTerms,
};
use eur_core::entropy::{
    conditional_entropy, dephase, holevo, mutual_information, subsystem_entropy,
    von_neumann_entropy,
};
use eur_core::linalg::{hermitian_eig, kron, partial_trace, CMatrix};
use eur_core::states::{random_basis, random_density, random_pure, GaussianSource};
use num_complex::Complex64;
use proptest::prelude::*;

fn random_hermitian(dim: usize, seed: u64) -> CMatrix {
    let mut src = GaussianSource::new(seed);
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        m.set(i, i, Complex64::new(src.normal(), 0.0));
        for j in (i + 1)..dim {
            let z = src.complex_normal();
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    m
}

fn random_matrix(dim: usize, seed: u64) -> CMatrix {
    let mut src = GaussianSource::new(seed);
    CMatrix::from_entries(dim, (0..dim * dim).map(|_| src.complex_normal()).collect()).unwrap()
}

fn tripartite(seed: u64) -> eur_core::entropy::DensityOperator {
    if seed.is_multiple_of(3) {
        random_pure(&[2, 2, 2], seed).unwrap()
    } else {
        random_density(&[2, 2, 2], seed).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eig_residual_and_orthonormality(dim in 1usize..=8, seed in any::<u64>()) {
        let a = random_hermitian(dim, seed);
        let s = hermitian_eig(&a).unwrap();
        prop_assert!(s.reconstruction_residual(&a) < 1e-10);
        prop_assert!(s.orthonormality_error() < 1e-10);
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn kron_is_associative(da in 1usize..=3, db in 1usize..=3, dc in 1usize..=3, seed in any::<u64>()) {
        let a = random_matrix(da, seed);
        let b = random_matrix(db, seed.wrapping_add(1));
        let c = random_matrix(dc, seed.wrapping_add(2));
        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12 * (1.0 + left.frobenius_norm()));
    }

    #[test]
    fn partial_trace_preserves_trace_and_positivity(seed in any::<u64>(), keep in 0usize..7) {
        let rho = tripartite(seed);
        let subsets = [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]];
        let reduced = partial_trace(rho.matrix(), &[2, 2, 2], &subsets[keep]).unwrap();
        prop_assert!((reduced.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(reduced.hermiticity_error() < 1e-12);
        prop_assert!(hermitian_eig(&reduced).unwrap().eigenvalues[0] >= -1e-9);
    }

    #[test]
    fn partial_trace_composes(seed in any::<u64>()) {
        let rho = random_density(&[2, 3, 2], seed).unwrap();
        let drop_c = partial_trace(rho.matrix(), &[2, 3, 2], &[0, 1]).unwrap();
        let then_b = partial_trace(&drop_c, &[2, 3], &[0]).unwrap();
        let direct = partial_trace(rho.matrix(), &[2, 3, 2], &[0]).unwrap();
        prop_assert!(then_b.max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn entropy_identities(seed in any::<u64>()) {
        let rho = tripartite(seed);
        let s_a = subsystem_entropy(&rho, &[0]).unwrap();
        let c_ab = conditional_entropy(&rho, &[0], &[1]).unwrap();
        let c_ac = conditional_entropy(&rho, &[0], &[2]).unwrap();
        let i_ab = mutual_information(&rho, &[0], &[1]).unwrap();
        let i_ac = mutual_information(&rho, &[0], &[2]).unwrap();
        prop_assert!((s_a - 0.5 * (c_ab + c_ac) - 0.5 * (i_ab + i_ac)).abs() < 1e-9);
        prop_assert!(c_ab + c_ac >= -1e-9);
        prop_assert!(i_ab >= -1e-9 && i_ac >= -1e-9);
    }

    #[test]
    fn dephasing_and_holevo_ranges(seed in any::<u64>(), memory in 1usize..=2) {
        let rho = tripartite(seed);
        let basis = random_basis(2, seed ^ 0xABCD, "r").unwrap();
        let post = dephase(&rho, &basis, 0).unwrap();
        prop_assert!(von_neumann_entropy(&post).unwrap() >= von_neumann_entropy(&rho).unwrap() - 1e-9);
        let chi = holevo(&rho, &basis, 0, &[memory]).unwrap();
        let s_mem = subsystem_entropy(&rho, &[memory]).unwrap();
        prop_assert!(chi >= -1e-9 && chi <= s_mem + 1e-9);
    }

    #[test]
    fn unclamped_bounds_hold_for_random_bases(seed in any::<u64>(), split in 0usize..=3, n in 2usize..=4) {
        let rho = tripartite(seed);
        let bases: Vec<_> = (0..n)
            .map(|k| random_basis(2, seed.wrapping_add(k as u64 + 1), format!("b{k}")).unwrap())
            .collect();
        let scenario = MeasurementScenario::new(bases.clone(), split.min(n)).unwrap();
        let terms = ScenarioTerms::compute(&rho, &scenario).unwrap();
        let u = terms.uncertainty();
        let t1 = theorem1_bound(&rho, &scenario).unwrap();
        let c1 = corollary1_bound(&rho, &scenario).unwrap();
        // Memory-free bound −log₂ b + (N − 1) S(A), converted by subtracting Holevo terms.
        let s_a = subsystem_entropy(&rho, &[0]).unwrap();
        let lb = liu_constant(&bases).unwrap().neg_log_b + (n as f64 - 1.0) * s_a;
        let converted = generic_tripartite_bound(lb, &rho, &scenario).unwrap();
        prop_assert!(u >= converted - 1e-8, "U {} < converted {}", u, converted);
        // Equal to the clamped bounds with δ taken unclamped.
        prop_assert!((converted - (t1.bound - t1.delta.max(0.0) + t1.delta)).abs() < 1e-9);
        prop_assert!(c1.bound >= t1.bound - 1e-9);
        if n == 2 && split == 1 {
            prop_assert!(u >= mu_constant(&bases[0], &bases[1]).unwrap().q_mu - 1e-8);
        }
        let split_sum: f64 = terms.measured.iter().map(|m| m.conditional_entropy + m.holevo).sum();
        prop_assert!((terms.outcome_entropy_sum() - split_sum).abs() < 1e-9);
    }

    #[test]
    fn pauli_reports_and_tightness(seed in any::<u64>(), case_two in any::<bool>()) {
        let rho = tripartite(seed);
        let case = if case_two { CaseId::Two } else { CaseId::One };
        let r = case_quantities(&rho, &MeasurementScenario::pauli_case(case)).unwrap();
        prop_assert!(r.slack >= -1e-8);
        let l1 = r.theorem1_bound.unwrap();
        let l2 = r.coles_bound.unwrap();
        if r.delta > 0.0 {
            prop_assert!(r.delta_prime.unwrap() > 0.0);
            prop_assert!(((l2 - l1) - (1.0 - r.entropy_terms.s_a)).abs() < 1e-9);
        }
        // Clamp: the reported bound is at least the δ = 0 value.
        let floor = 1.0 + r.entropy_terms.cond_ab + r.entropy_terms.cond_ac;
        prop_assert!(l1 >= floor - 1e-12);
    }
}
