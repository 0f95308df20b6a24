//! Four-state quantum mechanics realized inside a classical statistical
//! ensemble.
//!
//! A quantum system with four orthogonal states is mapped onto classical
//! probability distributions over 2^15 configurations of 15 two-valued
//! spins, one per generator of the traceless Hermitian operator basis.
//! Quantum expectation values of the generators equal classical spin
//! expectation values; pair correlations of simultaneous spins remain
//! unfixed by the map, and the correlations accessible to consecutive
//! measurements are the quantum ones. On this footing the crate builds:
//!
//! - the generator algebra and its spectral decomposition ([`algebra`]),
//! - density-matrix coordinates, purity, and wave functions ([`state`]),
//! - two-level observables, outcome tables, conditional probabilities,
//!   and measurement correlations ([`observables`]),
//! - explicit classical ensembles with admissible perturbations that move
//!   pair correlations while freezing every single-spin moment
//!   ([`ensemble`]),
//! - unitary evolution, a CNOT gate, and two-beam interference
//!   ([`evolution`]),
//! - two-particle exchange symmetry and the fermionic sector
//!   ([`symmetry`]),
//! - correlation-inequality tests against the classical bound ([`bell`]),
//! - seeded random states and operators ([`sampling`]).
//!
//! The crate is `no_std` (with `alloc`); all floating-point math routes
//! through `libm`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod bell;
pub mod ensemble;
pub mod error;
pub mod evolution;
pub mod matrix;
pub mod observables;
pub mod sampling;
pub mod state;
pub mod symmetry;

pub use num_complex::Complex64;

pub use algebra::{eigh, Coords15, Eigh, GeneratorSet};
pub use bell::{
    chsh_classical, chsh_grid_scan, chsh_quantum, ChshResult, ChshScan, ChshSetting,
    CLASSICAL_BOUND, QUANTUM_BOUND,
};
pub use ensemble::{ClassicalEnsemble, EnvPerturbation, SpinConfig, NUM_SPIN_CONFIGS};
pub use error::{Error, Result};
pub use evolution::{
    apply_propagator, cnot_gate, interference_hamiltonian, interference_scenario,
    propagator_from_hamiltonian, Hamiltonian, InterferenceConfig, InterferencePoint, Propagator,
};
pub use matrix::{trace_product, Matrix4};
pub use observables::{
    conditional_probabilities, joint_outcomes, measurement_correlation, ConditionalTable,
    Observable, OutcomeTable,
};
pub use state::{
    coords_from_density, coords_from_wavefunction, density_from_coords, mix, purity_report,
    rescaled_purity, PurityReport, StateCoords, WaveFunction,
};
pub use symmetry::{
    antisymmetric_state, exchange_coords, fermion_invariance_check, is_exchange_symmetric,
    superselection_check, symmetric_pair_state, ExchangeClass, ExchangeSymmetry,
    FermionInvariance, SuperselectionReport, EXCHANGE_INDEX_MAP,
};
