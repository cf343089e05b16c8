//! Parsers for the textual inputs: measurement specs, partitions, state specs and dimension
//! lists. Every error names the offending token.

use std::fs;
use std::path::Path;

use eur_core::bounds::MeasurementScenario;
use eur_core::entropy::{DensityOperator, ProjectiveBasis};
use eur_core::linalg::CVector;
use eur_core::statefile::StateFile;
use eur_core::states::{ghz, make_generalized_w, make_werner, pauli_bases};
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

/// Canonical form of a measurement label: lowercase with any `sigma_` prefix removed.
pub fn canonical_label(label: &str) -> String {
    let lower = label.trim().to_ascii_lowercase();
    lower
        .strip_prefix("sigma_")
        .or_else(|| lower.strip_prefix("sigma"))
        .unwrap_or(&lower)
        .to_string()
}

fn pauli_by_label(label: &str) -> Option<ProjectiveBasis> {
    let [x, y, z] = pauli_bases();
    match canonical_label(label).as_str() {
        "x" => Some(x),
        "y" => Some(y),
        "z" => Some(z),
        _ => None,
    }
}

#[derive(Deserialize)]
struct BasisEntry {
    label: String,
    /// Each vector is a list of `[re, im]` amplitudes.
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
struct BasisFile {
    bases: Vec<BasisEntry>,
}

/// Parses a basis file: `{"bases": [{"label": "x", "vectors": [[[re, im], ...], ...]}, ...]}`.
pub fn parse_basis_file(text: &str) -> Result<Vec<ProjectiveBasis>, CliError> {
    let file: BasisFile = serde_json::from_str(text)
        .map_err(|e| CliError::usage(format!("basis file: {e}")))?;
    if file.bases.is_empty() {
        return Err(CliError::usage("basis file lists no bases"));
    }
    file.bases
        .into_iter()
        .map(|entry| {
            let vectors = entry
                .vectors
                .iter()
                .map(|v| CVector::new(v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()))
                .collect::<eur_core::Result<Vec<_>>>()?;
            Ok(ProjectiveBasis::new(entry.label, vectors)?)
        })
        .collect()
}

/// `pauli-xyz`, a comma-separated list of Pauli labels, or a path to a basis file.
pub fn parse_measurements(spec: &str) -> Result<Vec<ProjectiveBasis>, CliError> {
    let spec = spec.trim();
    if spec == "pauli-xyz" || spec == "pauli" {
        return Ok(pauli_bases().to_vec());
    }
    let tokens: Vec<&str> = spec.split(',').map(str::trim).collect();
    if let Some(paulis) = tokens.iter().map(|t| pauli_by_label(t)).collect::<Option<Vec<_>>>() {
        return Ok(paulis);
    }
    let path = Path::new(spec);
    if !path.exists() && !spec.ends_with(".json") {
        let bad = tokens.iter().find(|t| pauli_by_label(t).is_none()).unwrap_or(&spec);
        return Err(CliError::usage(format!(
            "unknown measurement {bad:?} (expected pauli-xyz, labels from x, y, z, or a basis file)"
        )));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read basis file {}: {e}", path.display())))?;
    parse_basis_file(&text)
}

/// Resolves a partition such as `"B:x,y;C:z"` against the measurement list.
///
/// Bob's labels come first in the resulting scenario, in the order written, then Charlie's.
/// Every measurement must be assigned exactly once.
pub fn parse_partition(spec: &str, bases: &[ProjectiveBasis]) -> Result<MeasurementScenario, CliError> {
    let mut bob: Option<Vec<usize>> = None;
    let mut charlie: Option<Vec<usize>> = None;
    let mut used = vec![false; bases.len()];

    for clause in spec.split(';') {
        let clause = clause.trim();
        let Some((memory, labels)) = clause.split_once(':') else {
            return Err(CliError::usage(format!(
                "malformed partition token {clause:?}: expected MEMORY:LABELS such as B:x,y"
            )));
        };
        let slot = match memory.trim() {
            "B" | "b" => &mut bob,
            "C" | "c" => &mut charlie,
            other => {
                return Err(CliError::usage(format!(
                    "unknown memory {other:?} in partition token {clause:?} (expected B or C)"
                )))
            }
        };
        if slot.is_some() {
            return Err(CliError::usage(format!(
                "memory {:?} appears twice in partition (token {clause:?})",
                memory.trim()
            )));
        }
        let mut indices = Vec::new();
        for label in labels.split(',') {
            let key = canonical_label(label);
            if key.is_empty() {
                return Err(CliError::usage(format!("empty label in partition token {clause:?}")));
            }
            let matches: Vec<usize> = bases
                .iter()
                .enumerate()
                .filter(|(_, b)| canonical_label(b.label()) == key)
                .map(|(i, _)| i)
                .collect();
            let index = match matches.as_slice() {
                [i] => *i,
                [] => {
                    return Err(CliError::usage(format!(
                        "unknown measurement label {:?} in partition token {clause:?}",
                        label.trim()
                    )))
                }
                _ => {
                    return Err(CliError::usage(format!(
                        "ambiguous measurement label {:?} in partition token {clause:?}",
                        label.trim()
                    )))
                }
            };
            if used[index] {
                return Err(CliError::usage(format!(
                    "measurement {:?} assigned twice (token {clause:?})",
                    label.trim()
                )));
            }
            used[index] = true;
            indices.push(index);
        }
        *slot = Some(indices);
    }

    if let Some(i) = used.iter().position(|u| !u) {
        return Err(CliError::usage(format!(
            "measurement {:?} is not assigned to any memory in partition {spec:?}",
            bases[i].label()
        )));
    }
    let bob = bob.unwrap_or_default();
    let split = bob.len();
    let ordered = bob
        .into_iter()
        .chain(charlie.unwrap_or_default())
        .map(|i| bases[i].clone())
        .collect();
    Ok(MeasurementScenario::new(ordered, split)?)
}

/// Partition string of a numbered Pauli case.
pub fn case_partition(case: u32) -> Result<&'static str, CliError> {
    match case {
        1 => Ok("B:x,y;C:z"),
        2 => Ok("B:x;C:y,z"),
        other => Err(CliError::usage(format!("unknown case {other} (expected 1 or 2)"))),
    }
}

fn parse_number(token: &str, what: &str) -> Result<f64, CliError> {
    token
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("cannot parse {what} {token:?} as a number")))
}

/// Built-in state names, or `None` when the argument names a file.
fn builtin_state(spec: &str) -> Result<Option<DensityOperator>, CliError> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let rho = match (name, args.as_slice()) {
        ("ghz", []) => ghz(),
        ("mixed", []) => DensityOperator::maximally_mixed(vec![2, 2, 2])?,
        ("werner", [p]) => make_werner(parse_number(p, "werner parameter")?)?,
        ("wstate", [theta]) => {
            make_generalized_w(parse_number(theta, "theta")?, std::f64::consts::FRAC_PI_4)?
        }
        ("wstate", [theta, phi]) => {
            make_generalized_w(parse_number(theta, "theta")?, parse_number(phi, "phi")?)?
        }
        ("ghz" | "mixed" | "werner" | "wstate", _) => {
            return Err(CliError::usage(format!("malformed built-in state {spec:?}")))
        }
        _ => return Ok(None),
    };
    Ok(Some(rho))
}

/// A built-in state (`ghz`, `mixed`, `werner:P`, `wstate:THETA[:PHI]`) or a state file.
/// Prefix a path with `./` to force reading a file with a built-in name.
pub fn load_state(spec: &str) -> Result<DensityOperator, CliError> {
    if let Some(rho) = builtin_state(spec.trim())? {
        return Ok(rho);
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| CliError::io(format!("cannot read state file {spec}: {e}")))?;
    Ok(StateFile::from_json(&text)?.to_density()?)
}

/// Comma-separated subsystem dimensions, e.g. `2,2,2`.
pub fn parse_dims(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(d) if d >= 1 => Ok(d),
            _ => Err(CliError::usage(format!("invalid dimension {:?} in {spec:?}", t.trim()))),
        })
        .collect()
}

/// Worker count from `EUR_THREADS`; unset means single-threaded.
pub fn parse_threads(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(CliError::usage(format!(
                "EUR_THREADS must be a positive integer, got {v:?}"
            ))),
            Ok(n) => Ok(Some(n)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EXIT_USAGE;

    fn labels(s: &MeasurementScenario) -> Vec<&str> {
        s.bases().iter().map(|b| b.label()).collect()
    }

    #[test]
    fn partitions_resolve_against_labels() {
        let bases = parse_measurements("pauli-xyz").unwrap();
        let s = parse_partition("B:x,y;C:z", &bases).unwrap();
        assert_eq!(s.split(), 2);
        assert_eq!(labels(&s), ["sigma_x", "sigma_y", "sigma_z"]);
        let s = parse_partition("C:sigma_z,y ; B:x", &bases).unwrap();
        assert_eq!(s.split(), 1);
        assert_eq!(labels(&s), ["sigma_x", "sigma_z", "sigma_y"]);
        let s = parse_partition("C:x,y,z", &bases).unwrap();
        assert_eq!(s.split(), 0);
    }

    #[test]
    fn malformed_partitions_name_the_token() {
        let bases = parse_measurements("x,y,z").unwrap();
        for (spec, token) in [
            ("B=x,y;C:z", "B=x,y"),
            ("B:x,y;D:z", "D"),
            ("B:x,w;C:z", "w"),
            ("B:x,y;C:z,x", "x"),
            ("B:x;C:y;B:z", "B"),
            ("B:x,,y;C:z", "B:x,,y"),
            ("B:x,y", "sigma_z"),
        ] {
            let e = parse_partition(spec, &bases).unwrap_err();
            assert_eq!(e.code, EXIT_USAGE);
            assert!(e.message.contains(token), "{spec}: {}", e.message);
        }
    }

    #[test]
    fn measurement_specs() {
        assert_eq!(parse_measurements("x,z").unwrap().len(), 2);
        assert_eq!(parse_measurements("sigma_x, X").unwrap().len(), 2);
        let e = parse_measurements("x,q").unwrap_err();
        assert_eq!(e.code, EXIT_USAGE);
        assert!(e.message.contains("\"q\""));
        assert_eq!(parse_measurements("missing.json").unwrap_err().code, crate::EXIT_IO);
    }

    #[test]
    fn basis_file_parsing() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let good = format!(
            r#"{{"bases": [{{"label": "z", "vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]}},
                          {{"label": "x", "vectors": [[[{h},0],[{h},0]], [[{h},0],[-{h},0]]]}}]}}"#
        );
        let bases = parse_basis_file(&good).unwrap();
        assert_eq!(bases[1].label(), "x");
        let bad = r#"{"bases": [{"label": "z", "vectors": [[[1,0],[0,0]], [[1,0],[0,0]]]}]}"#;
        let e = parse_basis_file(bad).unwrap_err();
        assert_eq!(e.code, EXIT_USAGE);
        assert!(e.message.contains("orthonormal"));
    }

    #[test]
    fn builtin_states_and_dims() {
        assert_eq!(load_state("ghz").unwrap(), ghz());
        assert_eq!(load_state("werner:0.3").unwrap(), make_werner(0.3).unwrap());
        assert_eq!(load_state("werner:2").unwrap_err().code, EXIT_USAGE);
        assert_eq!(load_state("werner").unwrap_err().code, EXIT_USAGE);
        assert_eq!(load_state("/nonexistent/state.json").unwrap_err().code, crate::EXIT_IO);
        assert_eq!(parse_dims("2, 3,2").unwrap(), vec![2, 3, 2]);
        assert!(parse_dims("2,0,2").unwrap_err().message.contains("\"0\""));
        assert_eq!(parse_threads(None).unwrap(), None);
        assert_eq!(parse_threads(Some("4")).unwrap(), Some(4));
        assert!(parse_threads(Some("many")).is_err());
    }
}
