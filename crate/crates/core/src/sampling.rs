//! Seeded random generation of states, operators, and draws.
//!
//! Everything routes through a counter-based stream cipher RNG, so a seed
//! fully determines every sampled object across platforms.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GeneratorSet;
use crate::error::Result;
use crate::evolution::Hamiltonian;
use crate::matrix::{Matrix4, C_ZERO};
use crate::state::{coords_from_density, StateCoords, WaveFunction};
use crate::symmetry::exchange_permutation;

/// Deterministic RNG for the given seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from [0, 1) with 53 random bits.
pub fn uniform_01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Uniform draw from [-1, 1).
pub fn uniform_pm1(rng: &mut ChaCha8Rng) -> f64 {
    2.0 * uniform_01(rng) - 1.0
}

/// Standard normal draw (Box-Muller; the log argument is kept in (0, 1]).
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1 = 1.0 - uniform_01(rng);
    let u2 = uniform_01(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// Complex draw with independent standard normal parts.
pub fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Haar-like random unitary: complex Gaussian matrix orthonormalized by
/// modified Gram-Schmidt with one re-orthogonalization pass.
pub fn random_unitary(rng: &mut ChaCha8Rng) -> Matrix4 {
    loop {
        let mut cols = [[C_ZERO; 4]; 4];
        for col in cols.iter_mut() {
            for entry in col.iter_mut() {
                *entry = complex_gaussian(rng);
            }
        }
        let mut ok = true;
        for j in 0..4 {
            for _ in 0..2 {
                for i in 0..j {
                    let mut overlap = C_ZERO;
                    for r in 0..4 {
                        overlap += cols[i][r].conj() * cols[j][r];
                    }
                    for r in 0..4 {
                        cols[j][r] -= overlap * cols[i][r];
                    }
                }
            }
            let norm = libm::sqrt(cols[j].iter().map(|z| z.norm_sqr()).sum());
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for r in 0..4 {
                cols[j][r] /= norm;
            }
        }
        if !ok {
            continue;
        }
        let mut u = Matrix4::zero();
        for (j, col) in cols.iter().enumerate() {
            for (i, &entry) in col.iter().enumerate() {
                u.set(i, j, entry);
            }
        }
        return u;
    }
}

/// Uniform draw from the probability simplex: the gaps of three sorted
/// uniforms, a valid eigenvalue list for a density matrix.
pub fn random_density_eigenvalues(rng: &mut ChaCha8Rng) -> [f64; 4] {
    let mut cuts = [uniform_01(rng), uniform_01(rng), uniform_01(rng)];
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("uniform draws are finite"));
    [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], 1.0 - cuts[2]]
}

/// Random mixed state: random spectrum conjugated by a random unitary.
pub fn random_state(rng: &mut ChaCha8Rng, gens: &GeneratorSet) -> StateCoords {
    let w = random_density_eigenvalues(rng);
    let u = random_unitary(rng);
    let rho = u * Matrix4::diagonal(w) * u.adjoint();
    coords_from_density(&rho, gens).expect("spectrum and conjugation keep the matrix a valid density")
}

/// Random normalized four-component wave function.
pub fn random_wavefunction(rng: &mut ChaCha8Rng) -> WaveFunction {
    loop {
        let amps = [
            complex_gaussian(rng),
            complex_gaussian(rng),
            complex_gaussian(rng),
            complex_gaussian(rng),
        ];
        let norm = libm::sqrt(amps.iter().map(|z| z.norm_sqr()).sum());
        if norm >= 1e-6 {
            return WaveFunction::from_unnormalized(amps).expect("norm checked above");
        }
    }
}

/// Random pure state as coordinates.
pub fn random_pure_state(rng: &mut ChaCha8Rng, gens: &GeneratorSet) -> StateCoords {
    crate::state::coords_from_wavefunction(&random_wavefunction(rng), gens)
}

/// Random Hermitian matrix (G + G^dagger)/2 scaled by `scale`; exactly
/// Hermitian entry by entry.
pub fn random_hermitian(rng: &mut ChaCha8Rng, scale: f64) -> Matrix4 {
    let mut g = Matrix4::zero();
    for i in 0..4 {
        for j in 0..4 {
            g.set(i, j, complex_gaussian(rng));
        }
    }
    (g + g.adjoint()) * 0.5 * scale
}

/// Random Hamiltonian commuting exactly with the two-particle exchange:
/// H = (S + P S P)/2 for random Hermitian S. The symmetrization involves
/// only entry permutations and commutative additions, so P H P == H holds
/// bitwise and the commutator with P vanishes identically.
pub fn random_exchange_symmetric_hamiltonian(rng: &mut ChaCha8Rng, scale: f64) -> Result<Hamiltonian> {
    let s = random_hermitian(rng, scale);
    let p = exchange_permutation();
    let conjugated = p * s * p;
    Hamiltonian::new((s + conjugated) * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_reproduces_the_stream() {
        let mut a = rng_from_seed(42);
        let mut b = rng_from_seed(42);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = rng_from_seed(43);
        let first: Vec<u64> = (0..4).map(|_| rng_from_seed(42).next_u64()).collect();
        assert_ne!(first[0], c.next_u64());
    }

    #[test]
    fn uniform_draws_stay_in_range() {
        let mut rng = rng_from_seed(1);
        for _ in 0..2000 {
            let u = uniform_01(&mut rng);
            assert!((0.0..1.0).contains(&u));
            let v = uniform_pm1(&mut rng);
            assert!((-1.0..1.0).contains(&v));
        }
    }

    #[test]
    fn normal_draws_have_sane_moments() {
        let mut rng = rng_from_seed(2);
        let n = 4000;
        let draws: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.1, "mean {mean}");
        assert!((var - 1.0).abs() < 0.15, "variance {var}");
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let u = random_unitary(&mut rng);
            assert!(u.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn simplex_draws_are_valid_spectra() {
        let mut rng = rng_from_seed(4);
        for _ in 0..200 {
            let w = random_density_eigenvalues(&mut rng);
            assert!(w.iter().all(|&x| x >= 0.0));
            let total: f64 = w.iter().sum();
            assert!((total - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_states_are_valid_and_pure_states_are_pure() {
        let g = GeneratorSet::new();
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let s = random_state(&mut rng, &g);
            assert!(s.purity() <= 3.0 + 1e-12);
            let p = random_pure_state(&mut rng, &g);
            assert!((p.purity() - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_hermitian_is_exactly_hermitian() {
        let mut rng = rng_from_seed(6);
        for _ in 0..10 {
            let h = random_hermitian(&mut rng, 1.5);
            assert_eq!(h.hermiticity_defect(), 0.0);
        }
    }

    #[test]
    fn symmetrized_hamiltonian_commutes_with_the_exchange() {
        let mut rng = rng_from_seed(7);
        let p = exchange_permutation();
        for _ in 0..10 {
            let h = random_exchange_symmetric_hamiltonian(&mut rng, 1.0).unwrap();
            let commutator = *h.matrix() * p - p * *h.matrix();
            assert_eq!(commutator.max_norm(), 0.0);
        }
    }
}
