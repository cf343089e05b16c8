//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero if any fail.
//!
//! Tolerances are pinned here and never read from the library.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use eur_core::bounds::{case_quantities, liu_constant, mu_constant, zhang_bound, CaseId, MeasurementScenario};
use eur_core::entropy::{subsystem_entropy, DensityOperator, ProjectiveBasis};
use eur_core::linalg::{kron, CMatrix};
use eur_core::states::{closed_form_wstate, closed_form_werner, ghz, make_generalized_w, pauli_bases};
use eur_core::sweep::{evaluate_point, rows_to_csv, run_sweep, SweepConfig, SweepFamily};
use eur_core::verify::{run_verify, VerifyConfig};

const CURVE_TOL: f64 = 1e-8;
const ENDPOINT_TOL: f64 = 1e-9;
const KAPPA_FLOOR: f64 = 1e-6;
const GHZ_TOL: f64 = 1e-9;
const CONSTANT_TOL: f64 = 1e-12;
const WERNER_BUDGET: Duration = Duration::from_secs(1);
const WSTATE_BUDGET: Duration = Duration::from_secs(2);
const FUZZ_BUDGET: Duration = Duration::from_secs(60);
const FUZZ_STATES: usize = 1000;
const FUZZ_SEED: u64 = 42;
const FUZZ_RANDOM_TRIPLES: usize = 200;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn grid(end: f64) -> Vec<f64> {
    (0..=100).map(|k| if k == 100 { end } else { end * k as f64 / 100.0 }).collect()
}

fn criterion_werner() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for case in [CaseId::One, CaseId::Two] {
        for p in grid(1.0) {
            let row = evaluate_point(SweepFamily::Werner, case, p).unwrap();
            let expect = closed_form_werner(p);
            for v in [row.U, row.L1, row.L2] {
                worst = worst.max((v - expect).abs());
            }
        }
    }
    let u0 = evaluate_point(SweepFamily::Werner, CaseId::One, 0.0).unwrap().U;
    let u1 = evaluate_point(SweepFamily::Werner, CaseId::One, 1.0).unwrap().U;
    let elapsed = start.elapsed();
    let endpoints = (u0 - 2.0).abs() <= ENDPOINT_TOL && (u1 - 3.0).abs() <= ENDPOINT_TOL;
    Outcome::new(
        worst <= CURVE_TOL && endpoints && elapsed < WERNER_BUDGET,
        format!("max |curve − closed form| = {worst:.2e}, U(0) = {u0}, U(1) = {u1}, {elapsed:.2?}"),
    )
}

fn criterion_wstate() -> Outcome {
    let start = Instant::now();
    let family = SweepFamily::GeneralizedW { phi: FRAC_PI_4 };
    let mut worst: f64 = 0.0;
    let mut worst_l2: f64 = 0.0;
    for case in [CaseId::One, CaseId::Two] {
        for theta in grid(PI) {
            let row = evaluate_point(family, case, theta).unwrap();
            let expect = closed_form_wstate(theta, case);
            worst = worst.max((row.U - expect.u).abs()).max((row.L1 - expect.l1).abs());
            worst_l2 = worst_l2.max((row.U - row.L2).abs());
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst <= CURVE_TOL && worst_l2 <= CURVE_TOL && elapsed < WSTATE_BUDGET,
        format!("max |U, L1 − closed form| = {worst:.2e}, max |U − L2| = {worst_l2:.2e}, {elapsed:.2?}"),
    )
}

fn criterion_tightness() -> Outcome {
    let family = SweepFamily::GeneralizedW { phi: FRAC_PI_4 };
    let mut active = 0;
    let mut worst: f64 = 0.0;
    for case in [CaseId::One, CaseId::Two] {
        for theta in grid(PI) {
            let row = evaluate_point(family, case, theta).unwrap();
            if row.delta > KAPPA_FLOOR {
                let rho = make_generalized_w(theta, FRAC_PI_4).unwrap();
                let s_a = subsystem_entropy(&rho, &[0]).unwrap();
                worst = worst.max(((row.L2 - row.L1) - (1.0 - s_a)).abs());
                active += 1;
            }
        }
    }
    Outcome::new(
        active > 0 && worst <= CURVE_TOL,
        format!("{active} grid points with κ or η > {KAPPA_FLOOR:e}, max |L2 − L1 − (1 − S_A)| = {worst:.2e}"),
    )
}

fn criterion_fuzz() -> Outcome {
    let start = Instant::now();
    let outcome = run_verify(&VerifyConfig::new(FUZZ_STATES, FUZZ_SEED)).unwrap();
    let elapsed = start.elapsed();
    let triples = outcome
        .per_check
        .iter()
        .find(|(name, _)| name == "theorem1/random_split1")
        .map_or(0, |(_, c)| *c);
    let mut failing: Vec<String> = Vec::new();
    for (name, _) in &outcome.per_check {
        let n = outcome.failures.iter().filter(|f| &f.check == name).count();
        if n > 0 {
            failing.push(format!("{name}: {n}"));
        }
    }
    let r = &outcome.report;
    let detail = format!(
        "{} checks, {} violations, worst margin {:.2e}, {triples} random triples, {elapsed:.2?}{}",
        r.checked,
        r.violations,
        r.worst_margin,
        if failing.is_empty() { String::new() } else { format!(" [failing: {}]", failing.join(", ")) }
    );
    Outcome::new(
        r.violations == 0 && triples == FUZZ_RANDOM_TRIPLES && elapsed < FUZZ_BUDGET,
        detail,
    )
}

/// Every full index tuple, with the first overlap maximized over `i₁`; returns the weight
/// collected by each terminal index.
fn enumerate_path_weights(bases: &[&ProjectiveBasis]) -> Vec<f64> {
    let d = bases[0].dim();
    let n = bases.len();
    let ov = |m: usize, i: usize, j: usize| {
        let (u, v) = (&bases[m].vectors()[i], &bases[m + 1].vectors()[j]);
        let z = u.inner(v);
        z.norm_sqr()
    };
    let mut w = vec![0.0; d];
    for code in 0..d.pow((n - 1) as u32) {
        let tail: Vec<usize> = (0..n - 1).rev().map(|k| (code / d.pow(k as u32)) % d).collect();
        let first = (0..d).map(|i1| ov(0, i1, tail[0])).fold(0.0, f64::max);
        let rest: f64 = (1..n - 1).map(|m| ov(m, tail[m - 1], tail[m])).product();
        w[tail[n - 2]] += first * rest;
    }
    w
}

fn criterion_constants() -> Outcome {
    let bases = pauli_bases();
    let refs: Vec<&ProjectiveBasis> = bases.iter().collect();
    let brute_b = enumerate_path_weights(&refs).into_iter().fold(0.0, f64::max);

    // ℓ over all six orderings with ρ_A = I/2, so every outcome has probability ½.
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let brute_ell = orders
        .iter()
        .map(|o| {
            let ordered: Vec<&ProjectiveBasis> = o.iter().map(|&i| &bases[i]).collect();
            enumerate_path_weights(&ordered).iter().map(|w| -0.5 * w.log2()).sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max);

    let mut brute_q_ok = true;
    let mut lib_q_ok = true;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let c = bases[i]
                .vectors()
                .iter()
                .flat_map(|u| bases[j].vectors().iter().map(move |v| u.inner(v).norm_sqr()))
                .fold(0.0, f64::max);
            brute_q_ok &= (-c.log2() - 1.0).abs() <= CONSTANT_TOL;
            lib_q_ok &= (mu_constant(&bases[i], &bases[j]).unwrap().q_mu - 1.0).abs() <= CONSTANT_TOL;
        }
    }

    let lib_b = liu_constant(&bases).unwrap().b;
    let mixed = DensityOperator::maximally_mixed(vec![2]).unwrap();
    let lib_ell = zhang_bound(&bases, &mixed).unwrap().max;
    let pass = (brute_b - 0.5).abs() <= CONSTANT_TOL
        && (lib_b - brute_b).abs() <= CONSTANT_TOL
        && (brute_ell - 1.0).abs() <= CONSTANT_TOL
        && (lib_ell - brute_ell).abs() <= CONSTANT_TOL
        && brute_q_ok
        && lib_q_ok;
    Outcome::new(
        pass,
        format!("b = {lib_b} (enumerated {brute_b}), max ℓ = {lib_ell} (enumerated {brute_ell}), q_MU = 1 for all pairs: {}", brute_q_ok && lib_q_ok),
    )
}

/// Entropy of a matrix that must be diagonal in the computational basis.
fn diagonal_entropy(m: &CMatrix) -> f64 {
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            assert!(i == j || m.get(i, j).norm() < 1e-14, "reduced GHZ matrix is not diagonal");
        }
    }
    (0..m.dim())
        .map(|i| m.get(i, i).re)
        .filter(|&p| p > 1e-15)
        .map(|p| -p * p.log2())
        .sum()
}

/// `tr` over the qubits not in `keep`, by explicit index sums on three qubits.
fn reduce_qubits(rho: &CMatrix, keep: &[usize]) -> CMatrix {
    let mut out = CMatrix::zeros(1 << keep.len());
    let bit = |x: usize, k: usize| (x >> (2 - k)) & 1;
    for r in 0..8 {
        for c in 0..8 {
            if (0..3).filter(|k| !keep.contains(k)).any(|k| bit(r, k) != bit(c, k)) {
                continue;
            }
            let sub = |x: usize| keep.iter().fold(0, |acc, &k| acc * 2 + bit(x, k));
            out.set(sub(r), sub(c), out.get(sub(r), sub(c)) + rho.get(r, c));
        }
    }
    out
}

/// `I(M:mem)` and `S(A|mem)` from explicit projectors `|u⟩⟨u| ⊗ I₄`. Every GHZ marginal
/// involved, before or after measurement, is diagonal in the computational basis.
fn ghz_oracle(basis: &ProjectiveBasis, memory: usize) -> (f64, f64) {
    let rho = ghz().matrix().clone();
    let mut post = CMatrix::zeros(8);
    for u in basis.vectors() {
        let p = kron(&CMatrix::projector(u), &CMatrix::identity(4)).unwrap();
        post = &post + &(&(&p * &rho) * &p);
    }
    let s_mem = diagonal_entropy(&reduce_qubits(&rho, &[memory]));
    let holevo = diagonal_entropy(&reduce_qubits(&post, &[0])) + s_mem
        - diagonal_entropy(&reduce_qubits(&post, &[0, memory]));
    let cond = diagonal_entropy(&reduce_qubits(&rho, &[0, memory])) - s_mem;
    (holevo, cond)
}

fn criterion_ghz() -> Outcome {
    let r = case_quantities(&ghz(), &MeasurementScenario::pauli_case(CaseId::One)).unwrap();
    let [x, y, z] = pauli_bases();
    let (hx, cond_b) = ghz_oracle(&x, 1);
    let (hy, _) = ghz_oracle(&y, 1);
    let (hz, cond_c) = ghz_oracle(&z, 2);
    let close = |a: f64, b: f64| (a - b).abs() <= GHZ_TOL;
    let m = &r.measurements;
    let t = &r.entropy_terms;
    let pass = close(r.uncertainty_u, 2.0)
        && close(r.theorem1_bound.unwrap(), 2.0)
        && close(r.coles_bound.unwrap(), 2.0)
        && close(hx, 0.0)
        && close(hy, 0.0)
        && close(hz, 1.0)
        && close(cond_b, 0.0)
        && close(cond_c, 0.0)
        && close(m[0].holevo, hx)
        && close(m[1].holevo, hy)
        && close(m[2].holevo, hz)
        && close(t.cond_ab, cond_b)
        && close(t.cond_ac, cond_c);
    Outcome::new(
        pass,
        format!(
            "U = {}, L1 = {}, L2 = {}, I(x:B) = {}, I(y:B) = {}, I(z:C) = {}, S(A|B) = {}, S(A|C) = {}",
            r.uncertainty_u,
            r.theorem1_bound.unwrap(),
            r.coles_bound.unwrap(),
            m[0].holevo,
            m[1].holevo,
            m[2].holevo,
            t.cond_ab,
            t.cond_ac
        ),
    )
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    Command::new(env!("CARGO_BIN_EXE_eur"))
        .args(args)
        .env_remove("EUR_THREADS")
        .output()
        .expect("run eur")
        .stdout
}

fn criterion_determinism() -> Outcome {
    let mut config = SweepConfig::new(SweepFamily::GeneralizedW { phi: FRAC_PI_4 }, CaseId::Two);
    let csv_a = rows_to_csv(&run_sweep(&config).unwrap().rows);
    config.threads = Some(4);
    let csv_b = rows_to_csv(&run_sweep(&config).unwrap().rows);
    let report = || serde_json::to_string(&run_verify(&VerifyConfig::new(50, 7)).unwrap().report).unwrap();
    let library = csv_a == csv_b && report() == report();

    let sweep = ["sweep", "--family", "werner", "--steps", "101", "--case", "1"];
    let verify = ["verify", "--count", "25", "--seed", "9"];
    let single = ["verify", "--count", "1", "--seed", "123"];
    let binary = run_binary(&sweep) == run_binary(&sweep)
        && run_binary(&verify) == run_binary(&verify)
        && run_binary(&single) == run_binary(&single)
        && !run_binary(&sweep).is_empty();
    Outcome::new(
        library && binary,
        format!("library CSV/report identical: {library}, binary CSV/report identical: {binary}"),
    )
}

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("1 Werner saturation", criterion_werner),
        ("2 W-state curves", criterion_wstate),
        ("3 tightness relation", criterion_tightness),
        ("4 inequality fuzz suite", criterion_fuzz),
        ("5 constant calculators", criterion_constants),
        ("6 GHZ spot check", criterion_ghz),
        ("7 determinism", criterion_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = check();
        println!("[{}] {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
