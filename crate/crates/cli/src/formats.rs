//! File formats: ensemble binary dumps, state records, time-series CSV.

use std::io::{Read, Write};
use std::path::Path;

use fourstate::ensemble::{ClassicalEnsemble, NUM_SPIN_CONFIGS};
use fourstate::evolution::InterferencePoint;
use fourstate::state::StateCoords;

const ENSEMBLE_MAGIC: &[u8; 4] = b"QCE1";

/// Writes an ensemble: magic "QCE1", environment count as little-endian
/// u32, then 32768 * Z probabilities as little-endian f64, environment-major.
pub fn write_ensemble(path: &Path, ens: &ClassicalEnsemble) -> Result<(), String> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut buf = Vec::with_capacity(8 + ens.len() * 8);
    buf.extend_from_slice(ENSEMBLE_MAGIC);
    buf.extend_from_slice(&(ens.num_env() as u32).to_le_bytes());
    for &p in ens.probs() {
        buf.extend_from_slice(&p.to_le_bytes());
    }
    file.write_all(&buf).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Reads a dump produced by [`write_ensemble`].
pub fn read_ensemble(path: &Path) -> Result<ClassicalEnsemble, String> {
    let mut file = std::fs::File::open(path)
        .map_err(|e| format!("cannot open {}: {e}", path.display()))?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if bytes.len() < 8 || &bytes[0..4] != ENSEMBLE_MAGIC {
        return Err(format!("{} is not an ensemble dump", path.display()));
    }
    let num_env = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let expected = 8 + num_env * NUM_SPIN_CONFIGS * 8;
    if bytes.len() != expected {
        return Err(format!(
            "{}: expected {expected} bytes for {num_env} environment states, found {}",
            path.display(),
            bytes.len()
        ));
    }
    let probs = bytes[8..]
        .chunks_exact(8)
        .map(|chunk| f64::from_le_bytes(chunk.try_into().unwrap()))
        .collect();
    ClassicalEnsemble::from_parts(num_env, probs).map_err(|e| e.to_string())
}

/// One line of 15 space-separated coordinates at 17 significant digits.
pub fn state_record(s: &StateCoords) -> String {
    let mut line = String::new();
    for k in 0..15 {
        if k > 0 {
            line.push(' ');
        }
        line.push_str(&format!("{:.16e}", s.component(k)));
    }
    line.push('\n');
    line
}

/// Parses a state record written by [`state_record`].
pub fn parse_state_record(
    text: &str,
    gens: &fourstate::GeneratorSet,
) -> Result<StateCoords, String> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 15 {
        return Err(format!("state record has {} fields, expected 15", fields.len()));
    }
    let mut c = [0.0; 15];
    for (slot, field) in c.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|e| format!("bad coordinate `{field}`: {e}"))?;
    }
    let coords = fourstate::Coords15::new(c).map_err(|e| e.to_string())?;
    StateCoords::new(coords, gens).map_err(|e| e.to_string())
}

/// Interference time series as CSV: `t,rho_1,...,rho_15,expect_T2`.
pub fn interference_csv(points: &[InterferencePoint]) -> String {
    let mut csv = String::from("t");
    for k in 1..=15 {
        csv.push_str(&format!(",rho_{k}"));
    }
    csv.push_str(",expect_T2\n");
    for p in points {
        csv.push_str(&format!("{:.16e}", p.t));
        for k in 0..15 {
            csv.push_str(&format!(",{:.16e}", p.state.component(k)));
        }
        csv.push_str(&format!(",{:.16e}\n", p.expect_t2));
    }
    csv
}

#[cfg(test)]
mod tests {
    use super::*;
    use fourstate::algebra::GeneratorSet;
    use fourstate::evolution::{interference_scenario, InterferenceConfig};
    use fourstate::sampling::{random_state, rng_from_seed};

    #[test]
    fn ensemble_dump_round_trips() {
        let g = GeneratorSet::new();
        let mut rng = rng_from_seed(11);
        let s = random_state(&mut rng, &g);
        let ens = ClassicalEnsemble::from_state(&s, &[0.25, 0.75]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ensemble.qce1");
        write_ensemble(&path, &ens).unwrap();
        let back = read_ensemble(&path).unwrap();
        assert_eq!(back.num_env(), 2);
        assert_eq!(back.probs(), ens.probs());
    }

    #[test]
    fn truncated_dump_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.qce1");
        std::fs::write(&path, b"QCE1\x01\x00\x00\x00123").unwrap();
        assert!(read_ensemble(&path).is_err());
    }

    #[test]
    fn state_record_round_trips() {
        let g = GeneratorSet::new();
        let mut rng = rng_from_seed(12);
        let s = random_state(&mut rng, &g);
        let text = state_record(&s);
        let back = parse_state_record(&text, &g).unwrap();
        assert!(back.max_diff(&s) == 0.0);
        assert!(parse_state_record("1 2 3", &g).is_err());
    }

    #[test]
    fn csv_has_the_expected_header_and_t0_row() {
        let g = GeneratorSet::new();
        let cfg = InterferenceConfig::uniform_grid(1.0, 0.0, 5, 2.0).unwrap();
        let csv = interference_csv(&interference_scenario(&cfg, &g));
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,rho_1,rho_2,rho_3,rho_4,rho_5,rho_6,rho_7,rho_8,rho_9,rho_10,rho_11,rho_12,rho_13,rho_14,rho_15,expect_T2"
        );
        // t = 0 row: coordinates (1, 1, 1, 0, ..., 0) and <T_2> = 1.
        let first: Vec<f64> =
            lines.next().unwrap().split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(first.len(), 17);
        assert_eq!(first[0], 0.0);
        for (k, &value) in first.iter().enumerate().skip(1) {
            let want = if matches!(k, 1 | 2 | 3 | 16) { 1.0 } else { 0.0 };
            assert!((value - want).abs() < 1e-12, "column {k}: {value}");
        }
        assert_eq!(csv.lines().count(), 6);
    }
}
