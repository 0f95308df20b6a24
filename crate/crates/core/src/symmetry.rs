//! Exchange of the two subsystem bits: the induced coordinate permutation,
//! symmetric and antisymmetric sectors, and the superselection rule.
//!
//! Exchanging the bits conjugates operators by the permutation swapping
//! basis states 2 and 3 (one-based). On coordinates this acts as an index
//! permutation: 1<->2, 4<->8, 5<->9, 6<->10, 7<->11, 13<->15, with 3, 12, 14
//! fixed. The antisymmetric sector is spanned by the single state
//! psi_- = (psi_2 - psi_3)/sqrt(2); the symmetric sector by psi_+, psi_1,
//! psi_4.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{Coords15, GeneratorSet};
use crate::error::{Error, Result};
use crate::evolution::{apply_propagator, propagator_from_hamiltonian, Hamiltonian};
use crate::matrix::Matrix4;
use crate::state::{coords_from_wavefunction, StateCoords, WaveFunction};

/// Max coordinate change under exchange for a state to count as symmetric.
pub const EXCHANGE_SYMMETRY_TOL: f64 = 1e-10;
/// Amplitudes below this are treated as absent in the superselection check.
pub const AMPLITUDE_ZERO_TOL: f64 = 1e-10;
/// Max |(HP - PH)_ij| for a Hamiltonian to count as exchange symmetric.
pub const SYMMETRIC_HAMILTONIAN_TOL: f64 = 1e-12;

/// Zero-based coordinate permutation induced by the exchange.
pub const EXCHANGE_INDEX_MAP: [usize; 15] = [1, 0, 2, 7, 8, 9, 10, 3, 4, 5, 6, 11, 14, 13, 12];

/// The matrix form: permutation of basis states 2 and 3 (one-based).
pub fn exchange_permutation() -> Matrix4 {
    Matrix4::transposition(1, 2)
}

/// Coordinate action of the exchange; an involution.
pub fn permute_exchange(c: &Coords15) -> Coords15 {
    let mut out = [0.0; 15];
    for (k, &target) in EXCHANGE_INDEX_MAP.iter().enumerate() {
        out[target] = c[k];
    }
    Coords15::from_array(out)
}

/// Exchanged state. Permutations preserve validity, so no re-check is run.
pub fn exchange_coords(s: &StateCoords) -> StateCoords {
    StateCoords::trusted(permute_exchange(s.coords()))
}

#[derive(Debug, Clone, Copy)]
pub struct ExchangeSymmetry {
    pub symmetric: bool,
    /// max_k |rho_k - rho_exchanged(k)|.
    pub defect: f64,
}

pub fn is_exchange_symmetric(s: &StateCoords) -> ExchangeSymmetry {
    let permuted = permute_exchange(s.coords());
    let defect = s.coords().max_diff(&permuted);
    ExchangeSymmetry { symmetric: defect < EXCHANGE_SYMMETRY_TOL, defect }
}

/// The antisymmetric state psi_- = (psi_2 - psi_3)/sqrt(2).
pub fn antisymmetric_state() -> WaveFunction {
    let inv = core::f64::consts::FRAC_1_SQRT_2;
    WaveFunction::new([
        Complex64::new(0.0, 0.0),
        Complex64::new(inv, 0.0),
        Complex64::new(-inv, 0.0),
        Complex64::new(0.0, 0.0),
    ])
    .expect("normalized")
}

/// The symmetric partner psi_+ = (psi_2 + psi_3)/sqrt(2).
pub fn symmetric_pair_state() -> WaveFunction {
    let inv = core::f64::consts::FRAC_1_SQRT_2;
    WaveFunction::new([
        Complex64::new(0.0, 0.0),
        Complex64::new(inv, 0.0),
        Complex64::new(inv, 0.0),
        Complex64::new(0.0, 0.0),
    ])
    .expect("normalized")
}

/// Sector classification of a wave function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeClass {
    /// Entirely in the antisymmetric (fermion-like) sector.
    Antisymmetric,
    /// Entirely in the symmetric (boson-like) sector.
    Symmetric,
    /// Mixes the sectors; not an admissible exchange eigenstate.
    NotEligible,
}

/// Result of decomposing psi over {psi_-, psi_+, psi_1, psi_4}.
#[derive(Debug, Clone, Copy)]
pub struct SuperselectionReport {
    pub class: ExchangeClass,
    /// |amplitude| on psi_-, psi_+, psi_1, psi_4 in that order.
    pub amplitudes: [f64; 4],
    /// Distance to the nearest admissible sector: min of the antisymmetric
    /// weight and the total symmetric weight.
    pub defect: f64,
}

/// Superposing the antisymmetric state with any symmetric one is not
/// admissible: a valid exchange eigenstate has either no psi_- amplitude or
/// nothing else.
pub fn superselection_check(psi: &WaveFunction) -> SuperselectionReport {
    let basis = [
        antisymmetric_state(),
        symmetric_pair_state(),
        WaveFunction::basis(0),
        WaveFunction::basis(3),
    ];
    let mut amplitudes = [0.0; 4];
    for (slot, b) in basis.iter().enumerate() {
        amplitudes[slot] = crate::matrix::modulus(b.inner(psi));
    }
    let anti = amplitudes[0];
    let sym = libm::sqrt(
        amplitudes[1] * amplitudes[1] + amplitudes[2] * amplitudes[2] + amplitudes[3] * amplitudes[3],
    );
    let class = if anti < AMPLITUDE_ZERO_TOL {
        ExchangeClass::Symmetric
    } else if sym < AMPLITUDE_ZERO_TOL {
        ExchangeClass::Antisymmetric
    } else {
        ExchangeClass::NotEligible
    };
    SuperselectionReport { class, amplitudes, defect: anti.min(sym) }
}

/// Invariance diagnostics for an exchange-symmetric Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct FermionInvariance {
    /// max |(HP - PH)_ij| of the accepted Hamiltonian.
    pub hamiltonian_defect: f64,
    /// max over the time grid of the coordinate drift of the psi_- density.
    pub max_state_drift: f64,
    /// max |<psi_-|U(t)|b>| and |<b|U(t)|psi_->| over symmetric basis states b.
    pub max_cross_element: f64,
}

/// Checks that evolution under an exchange-symmetric Hamiltonian never moves
/// the antisymmetric density and never couples the sectors.
///
/// Rejects Hamiltonians whose commutator with the exchange permutation
/// exceeds `SYMMETRIC_HAMILTONIAN_TOL`.
pub fn fermion_invariance_check(
    h: &Hamiltonian,
    times: &[f64],
    gens: &GeneratorSet,
) -> Result<FermionInvariance> {
    let p = exchange_permutation();
    let hamiltonian_defect = (*h.matrix() * p - p * *h.matrix()).max_norm();
    if hamiltonian_defect > SYMMETRIC_HAMILTONIAN_TOL {
        return Err(Error::NotExchangeSymmetric { defect: hamiltonian_defect });
    }

    let fermion = antisymmetric_state();
    let fermion_state = coords_from_wavefunction(&fermion, gens);
    let symmetric_basis: Vec<WaveFunction> =
        [symmetric_pair_state(), WaveFunction::basis(0), WaveFunction::basis(3)].to_vec();

    let mut max_state_drift = 0.0f64;
    let mut max_cross_element = 0.0f64;
    for &t in times {
        let u = propagator_from_hamiltonian(h, t);
        let evolved = apply_propagator(&u, &fermion_state, gens);
        max_state_drift = max_state_drift.max(evolved.max_diff(&fermion_state));
        let image = u.matrix().mul_vec(fermion.amplitudes());
        let image = WaveFunction::from_unnormalized(image).expect("unitary image");
        for b in &symmetric_basis {
            let forward = crate::matrix::modulus(b.inner(&image));
            let backward = {
                let b_image = u.matrix().mul_vec(b.amplitudes());
                let b_image = WaveFunction::from_unnormalized(b_image).expect("unitary image");
                crate::matrix::modulus(fermion.inner(&b_image))
            };
            max_cross_element = max_cross_element.max(forward).max(backward);
        }
    }
    Ok(FermionInvariance { hamiltonian_defect, max_state_drift, max_cross_element })
}
