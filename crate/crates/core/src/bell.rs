//! Correlation-inequality tests: measurement correlations of rotated spins
//! against the classical bound.
//!
//! The two spin directions live in orthogonal planes that anticommute
//! pairwise, so every setting yields genuine two-level observables. On the
//! entangled pair state the measurement correlation is E(a, b) =
//! -cos(a + b), giving S = 2 sqrt(2) at the recorded optimum, while every
//! deterministic +-1 assignment on the classical ensemble obeys S <= 2
//! pointwise: A(a)(B(b) - B(b')) + A(a')(B(b) + B(b')) is +-2 configuration
//! by configuration.

use alloc::vec::Vec;

use crate::algebra::{Coords15, GeneratorSet};
use crate::ensemble::{pairwise, ClassicalEnsemble, SpinConfig, NUM_SPIN_CONFIGS};
use crate::error::{Error, Result};
use crate::observables::{measurement_correlation, Observable};
use crate::state::StateCoords;

/// Largest |S| any deterministic classical assignment can reach.
pub const CLASSICAL_BOUND: f64 = 2.0;
/// Largest |S| quantum mechanics allows.
pub const QUANTUM_BOUND: f64 = 2.0 * core::f64::consts::SQRT_2;

/// Spin of the first bit rotated by theta in its z-x plane.
pub fn spin1_observable(theta: f64, gens: &GeneratorSet) -> Observable {
    let mut c = [0.0; 15];
    c[0] = libm::cos(theta);
    c[7] = libm::sin(theta);
    Observable::from_direction(Coords15::from_array(c), gens)
}

/// Spin of the second bit rotated by theta in its z-x plane.
pub fn spin2_observable(theta: f64, gens: &GeneratorSet) -> Observable {
    let mut c = [0.0; 15];
    c[1] = libm::cos(theta);
    c[3] = libm::sin(theta);
    Observable::from_direction(Coords15::from_array(c), gens)
}

/// Four analyzer angles (radians): a, a' on the first bit, b, b' on the second.
#[derive(Debug, Clone, Copy)]
pub struct ChshSetting {
    pub angle_a: f64,
    pub angle_a_prime: f64,
    pub angle_b: f64,
    pub angle_b_prime: f64,
}

impl ChshSetting {
    /// The planar setting that maximizes S on the entangled pair state:
    /// (0, pi/2, 3 pi/4, pi/4). Verified by the grid scan.
    pub fn max_violation() -> Self {
        ChshSetting {
            angle_a: 0.0,
            angle_a_prime: core::f64::consts::FRAC_PI_2,
            angle_b: 3.0 * core::f64::consts::FRAC_PI_4,
            angle_b_prime: core::f64::consts::FRAC_PI_4,
        }
    }
}

/// The four correlations and S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|.
#[derive(Debug, Clone, Copy)]
pub struct ChshResult {
    pub e_ab: f64,
    pub e_ab_prime: f64,
    pub e_a_prime_b: f64,
    pub e_a_prime_b_prime: f64,
    pub s: f64,
}

fn combine(e_ab: f64, e_ab_prime: f64, e_a_prime_b: f64, e_a_prime_b_prime: f64) -> ChshResult {
    let s = (e_ab - e_ab_prime + e_a_prime_b + e_a_prime_b_prime).abs();
    ChshResult { e_ab, e_ab_prime, e_a_prime_b, e_a_prime_b_prime, s }
}

/// Quantum S from measurement correlations. Each of the four observables is
/// re-verified to be two-level before use.
pub fn chsh_quantum(s: &StateCoords, setting: &ChshSetting, gens: &GeneratorSet) -> Result<ChshResult> {
    let a = spin1_observable(setting.angle_a, gens);
    let a_prime = spin1_observable(setting.angle_a_prime, gens);
    let b = spin2_observable(setting.angle_b, gens);
    let b_prime = spin2_observable(setting.angle_b_prime, gens);
    for obs in [&a, &a_prime, &b, &b_prime] {
        if !obs.is_two_level() {
            return Err(Error::NotTwoLevel { defect: obs.two_level_defect() });
        }
    }
    Ok(combine(
        measurement_correlation(&a, &b, s, gens),
        measurement_correlation(&a, &b_prime, s, gens),
        measurement_correlation(&a_prime, &b, s, gens),
        measurement_correlation(&a_prime, &b_prime, s, gens),
    ))
}

/// Classical S for deterministic +-1 assignments evaluated on the ensemble.
/// `a`, `a_prime` are the first party's observables, `b`, `b_prime` the
/// second party's; each maps a configuration to its fixed value.
pub fn chsh_classical(
    ens: &ClassicalEnsemble,
    a: &dyn Fn(SpinConfig) -> f64,
    a_prime: &dyn Fn(SpinConfig) -> f64,
    b: &dyn Fn(SpinConfig) -> f64,
    b_prime: &dyn Fn(SpinConfig) -> f64,
) -> ChshResult {
    let e = |x: &dyn Fn(SpinConfig) -> f64, y: &dyn Fn(SpinConfig) -> f64| -> f64 {
        pairwise(0, ens.len(), |i| {
            let config = SpinConfig::new(i % NUM_SPIN_CONFIGS);
            x(config) * y(config) * ens.probs()[i]
        })
    };
    combine(e(a, b), e(a, b_prime), e(a_prime, b), e(a_prime, b_prime))
}

/// Result of maximizing S over a uniform angle grid.
#[derive(Debug, Clone, Copy)]
pub struct ChshScan {
    pub setting: ChshSetting,
    pub s: f64,
}

/// Exact maximum of S over the n^4 grid of angles 2 pi j / n.
///
/// Uses the split S = |X(b) + Y(b')| with X = E(a,b) + E(a',b) and
/// Y = E(a',b') - E(a,b'): for fixed (a, a') the maximum over (b, b') is
/// max(max X + max Y, -(min X + min Y)), which reduces the scan to O(n^3)
/// without changing the result.
pub fn chsh_grid_scan(s: &StateCoords, gens: &GeneratorSet, n: usize) -> Result<ChshScan> {
    if n < 2 {
        return Err(Error::EmptyInput);
    }
    let step = 2.0 * core::f64::consts::PI / n as f64;
    let spin1: Vec<Observable> = (0..n).map(|i| spin1_observable(step * i as f64, gens)).collect();
    let spin2: Vec<Observable> = (0..n).map(|j| spin2_observable(step * j as f64, gens)).collect();
    for obs in spin1.iter().chain(spin2.iter()) {
        if !obs.is_two_level() {
            return Err(Error::NotTwoLevel { defect: obs.two_level_defect() });
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for oa in &spin1 {
        for ob in &spin2 {
            table.push(measurement_correlation(oa, ob, s, gens));
        }
    }

    let mut best_s = -1.0f64;
    let mut best = [0usize; 4];
    for ia in 0..n {
        for ia2 in 0..n {
            let mut x_max = (f64::NEG_INFINITY, 0usize);
            let mut x_min = (f64::INFINITY, 0usize);
            let mut y_max = (f64::NEG_INFINITY, 0usize);
            let mut y_min = (f64::INFINITY, 0usize);
            for j in 0..n {
                let x = table[ia * n + j] + table[ia2 * n + j];
                let y = table[ia2 * n + j] - table[ia * n + j];
                if x > x_max.0 {
                    x_max = (x, j);
                }
                if x < x_min.0 {
                    x_min = (x, j);
                }
                if y > y_max.0 {
                    y_max = (y, j);
                }
                if y < y_min.0 {
                    y_min = (y, j);
                }
            }
            let positive = x_max.0 + y_max.0;
            let negative = -(x_min.0 + y_min.0);
            if positive > best_s {
                best_s = positive;
                best = [ia, ia2, x_max.1, y_max.1];
            }
            if negative > best_s {
                best_s = negative;
                best = [ia, ia2, x_min.1, y_min.1];
            }
        }
    }
    Ok(ChshScan {
        setting: ChshSetting {
            angle_a: step * best[0] as f64,
            angle_a_prime: step * best[1] as f64,
            angle_b: step * best[2] as f64,
            angle_b_prime: step * best[3] as f64,
        },
        s: best_s,
    })
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Polishes a grid optimum: golden-section maximization of S along each
/// angle in turn (two sweeps), each within +-halfwidth of its current value,
/// to the given angular tolerance.
pub fn refine_setting(
    s: &StateCoords,
    start: &ChshSetting,
    gens: &GeneratorSet,
    halfwidth: f64,
    tol: f64,
) -> Result<ChshScan> {
    let mut angles = [start.angle_a, start.angle_a_prime, start.angle_b, start.angle_b_prime];
    let eval = |angles: &[f64; 4]| -> Result<f64> {
        let setting = ChshSetting {
            angle_a: angles[0],
            angle_a_prime: angles[1],
            angle_b: angles[2],
            angle_b_prime: angles[3],
        };
        chsh_quantum(s, &setting, gens).map(|r| r.s)
    };
    eval(&angles)?;
    for _ in 0..2 {
        for slot in 0..4 {
            let current = angles;
            let objective = |x: f64| -> f64 {
                let mut trial = current;
                trial[slot] = x;
                eval(&trial).expect("rotated spins stay two-level")
            };
            angles[slot] = golden_max(
                &objective,
                current[slot] - halfwidth,
                current[slot] + halfwidth,
                tol,
            );
        }
    }
    let setting = ChshSetting {
        angle_a: angles[0],
        angle_a_prime: angles[1],
        angle_b: angles[2],
        angle_b_prime: angles[3],
    };
    let result = chsh_quantum(s, &setting, gens)?;
    Ok(ChshScan { setting, s: result.s })
}

/// Classical pair correlation vs measured quantum correlation for the same
/// index pair, on the same state.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationGap {
    /// Zero-based generator indices.
    pub k: usize,
    pub l: usize,
    pub classical: f64,
    pub quantum: f64,
}

/// Builds the product-form ensemble of `s` (single environment state) and
/// compares its enumerated <sigma_k sigma_l> with the measurement
/// correlation <T_k T_l>_m for each requested pair.
pub fn correlation_gap_report(
    s: &StateCoords,
    pairs: &[(usize, usize)],
    gens: &GeneratorSet,
) -> Result<Vec<CorrelationGap>> {
    let ens = ClassicalEnsemble::from_state(s, &[1.0])?;
    pairs
        .iter()
        .map(|&(k, l)| {
            let classical = ens.correlation(k, l);
            let quantum = measurement_correlation(
                &Observable::basis(k, gens),
                &Observable::basis(l, gens),
                s,
                gens,
            );
            Ok(CorrelationGap { k, l, classical, quantum })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{coords_from_wavefunction, WaveFunction};
    use num_complex::Complex64;

    fn gens() -> GeneratorSet {
        GeneratorSet::new()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn entangled_plus(g: &GeneratorSet) -> StateCoords {
        let psi = WaveFunction::superposition(&[
            (re(1.0), &WaveFunction::basis(1)),
            (re(1.0), &WaveFunction::basis(2)),
        ])
        .unwrap();
        coords_from_wavefunction(&psi, g)
    }

    #[test]
    fn rotated_spins_are_two_level_at_any_angle() {
        let g = gens();
        for i in 0..24 {
            let theta = 0.261799 * i as f64;
            assert!(spin1_observable(theta, &g).is_two_level());
            assert!(spin2_observable(theta, &g).is_two_level());
        }
    }

    #[test]
    fn recorded_optimum_reaches_the_quantum_bound() {
        let g = gens();
        let s = entangled_plus(&g);
        let result = chsh_quantum(&s, &ChshSetting::max_violation(), &g).unwrap();
        assert!((result.s - QUANTUM_BOUND).abs() < 1e-12, "S = {}", result.s);
        // E(alpha, beta) = -cos(alpha + beta) on this state.
        let inv = core::f64::consts::FRAC_1_SQRT_2;
        assert!((result.e_ab - inv).abs() < 1e-12);
        assert!((result.e_ab_prime + inv).abs() < 1e-12);
        assert!((result.e_a_prime_b - inv).abs() < 1e-12);
        assert!((result.e_a_prime_b_prime - inv).abs() < 1e-12);
    }

    #[test]
    fn grid_scan_finds_the_bound_and_never_exceeds_it() {
        let g = gens();
        let scan = chsh_grid_scan(&entangled_plus(&g), &g, 64).unwrap();
        assert!(scan.s <= QUANTUM_BOUND + 1e-9);
        assert!(scan.s >= QUANTUM_BOUND - 1e-9, "grid contains the optimum");
    }

    #[test]
    fn product_and_mixed_states_stay_classical() {
        let g = gens();
        let product = coords_from_wavefunction(&WaveFunction::basis(0), &g);
        let scan = chsh_grid_scan(&product, &g, 64).unwrap();
        assert!(scan.s <= CLASSICAL_BOUND + 1e-12);
        let mixed = chsh_quantum(
            &StateCoords::maximally_mixed(),
            &ChshSetting::max_violation(),
            &g,
        )
        .unwrap();
        assert!(mixed.s.abs() < 1e-15);
    }

    #[test]
    fn refinement_recovers_the_bound_from_a_shifted_start() {
        let g = gens();
        let start = ChshSetting {
            angle_a: 0.05,
            angle_a_prime: core::f64::consts::FRAC_PI_2 - 0.03,
            angle_b: 3.0 * core::f64::consts::FRAC_PI_4 + 0.04,
            angle_b_prime: core::f64::consts::FRAC_PI_4 - 0.02,
        };
        let polished = refine_setting(&entangled_plus(&g), &start, &g, 0.1, 1e-6).unwrap();
        assert!((polished.s - QUANTUM_BOUND).abs() < 1e-8, "S = {}", polished.s);
    }

    #[test]
    fn classical_assignments_respect_the_bound_on_the_entangled_ensemble() {
        let g = gens();
        let ens = ClassicalEnsemble::from_state(&entangled_plus(&g), &[1.0]).unwrap();
        let result = chsh_classical(
            &ens,
            &|c| c.sigma(0),
            &|c| c.sigma(7),
            &|c| c.sigma(1),
            &|c| c.sigma(3),
        );
        assert!(result.s <= CLASSICAL_BOUND + 1e-12);
        // Arbitrary deterministic tables cannot beat the bound either.
        let mut rng = crate::sampling::rng_from_seed(5);
        for _ in 0..8 {
            let tables: Vec<Vec<f64>> = (0..4)
                .map(|_| {
                    (0..NUM_SPIN_CONFIGS)
                        .map(|_| if crate::sampling::uniform_pm1(&mut rng) >= 0.0 { 1.0 } else { -1.0 })
                        .collect()
                })
                .collect();
            let result = chsh_classical(
                &ens,
                &|c| tables[0][c.index()],
                &|c| tables[1][c.index()],
                &|c| tables[2][c.index()],
                &|c| tables[3][c.index()],
            );
            assert!(result.s <= CLASSICAL_BOUND + 1e-12);
        }
    }

    #[test]
    fn gap_report_shows_zero_classical_full_quantum_correlation() {
        let g = gens();
        let report = correlation_gap_report(&entangled_plus(&g), &[(0, 1)], &g).unwrap();
        assert_eq!(report.len(), 1);
        assert!(report[0].classical.abs() < 1e-12);
        assert!((report[0].quantum + 1.0).abs() < 1e-12);
    }
}
