//! Unitary time evolution: propagators from Hamiltonians, the CNOT gate and
//! the two-path interference scenario.
//!
//! Propagators are built by exact exponentiation through the eigensystem,
//! U = V exp(-i lambda t) V^dag, so no step-size error enters anywhere.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{coords_from_operator, eigh, GeneratorSet, HERMITICITY_TOL};
use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::state::{density_from_coords, StateCoords, WaveFunction};

/// Max tolerated |(U^dag U - 1)_ij| on propagators.
pub const UNITARITY_TOL: f64 = 1e-12;

/// A validated Hermitian generator of time evolution.
#[derive(Debug, Clone, Copy)]
pub struct Hamiltonian {
    h: Matrix4,
}

impl Hamiltonian {
    pub fn new(h: Matrix4) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = h.hermiticity_defect();
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Hamiltonian { h })
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.h
    }
}

/// A validated unitary.
#[derive(Debug, Clone, Copy)]
pub struct Propagator {
    u: Matrix4,
}

impl Propagator {
    pub fn new(u: Matrix4) -> Result<Self> {
        if !u.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = u.unitarity_defect();
        if defect > UNITARITY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Propagator { u })
    }

    pub fn identity() -> Self {
        Propagator { u: Matrix4::identity() }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.u
    }

    /// U * V as a propagator; unitarity survives products up to rounding.
    pub fn compose(&self, rhs: &Propagator) -> Propagator {
        Propagator { u: self.u * rhs.u }
    }

    /// psi -> U psi. The image of a normalized wave function stays
    /// normalized within the validation slack.
    pub fn apply_to_wavefunction(&self, psi: &WaveFunction) -> WaveFunction {
        WaveFunction::new(self.u.mul_vec(psi.amplitudes()))
            .expect("unitary image of a normalized wave function")
    }
}

/// U(t) = V exp(-i lambda t) V^dag from the eigensystem of H.
pub fn propagator_from_hamiltonian(h: &Hamiltonian, t: f64) -> Propagator {
    let dec = eigh(h.matrix()).expect("validated Hamiltonian");
    let v = dec.eigenvectors;
    // Scale columns of V by the phases, then close with V^dag.
    let mut scaled = v;
    for col in 0..4 {
        let phase = Complex64::new(
            libm::cos(dec.eigenvalues[col] * t),
            -libm::sin(dec.eigenvalues[col] * t),
        );
        for row in 0..4 {
            scaled.set(row, col, v.get(row, col) * phase);
        }
    }
    Propagator { u: scaled * v.adjoint() }
}

/// rho -> U rho U^dag in coordinates. Conjugation by a unitary preserves the
/// spectrum, so the evolved coordinates are read off without re-running the
/// positivity check.
pub fn apply_propagator(u: &Propagator, s: &StateCoords, gens: &GeneratorSet) -> StateCoords {
    let rho = density_from_coords(s, gens);
    let evolved = u.u * rho * u.u.adjoint();
    // Density normalization: the L_k coefficient is rho_k / 4.
    let (_, coords) = coords_from_operator(&evolved.hermitian_part(), gens);
    StateCoords::trusted(coords.scaled(4.0))
}

/// The two-bit controlled flip: swaps the basis states where the first bit
/// is down, leaving the other two alone. Exact permutation matrix.
pub fn cnot_gate() -> Propagator {
    Propagator { u: Matrix4::transposition(2, 3) }
}

/// Two-path interference: H = omega_a P_a + omega_b P_b with projectors onto
/// (psi_1 +- psi_2)/sqrt(2). The evolution of psi_1 oscillates between the
/// paths at the frequency difference Delta = omega_a - omega_b.
pub fn interference_hamiltonian(omega_a: f64, omega_b: f64) -> Hamiltonian {
    let inv = core::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| Complex64::new(x, 0.0);
    let psi_a = WaveFunction::new([re(inv), re(inv), re(0.0), re(0.0)]).expect("normalized");
    let psi_b = WaveFunction::new([re(inv), re(-inv), re(0.0), re(0.0)]).expect("normalized");
    let h = psi_a.projector() * omega_a + psi_b.projector() * omega_b;
    Hamiltonian::new(h.hermitian_part()).expect("sum of scaled projectors")
}

/// Time grid and frequencies for an interference run.
#[derive(Debug, Clone)]
pub struct InterferenceConfig {
    pub omega_a: f64,
    pub omega_b: f64,
    pub times: Vec<f64>,
}

impl InterferenceConfig {
    /// `n` evenly spaced times covering [0, periods * 2 pi / |Delta|].
    pub fn uniform_grid(omega_a: f64, omega_b: f64, n: usize, periods: f64) -> Result<Self> {
        let delta = omega_a - omega_b;
        if n < 2 || delta == 0.0 || !delta.is_finite() {
            return Err(Error::BadMagnitude { value: delta });
        }
        let t_max = periods * 2.0 * core::f64::consts::PI / delta.abs();
        let step = t_max / ((n - 1) as f64);
        let times = (0..n).map(|j| step * j as f64).collect();
        Ok(InterferenceConfig { omega_a, omega_b, times })
    }

    pub fn delta(&self) -> f64 {
        self.omega_a - self.omega_b
    }
}

/// One time sample of the interference run.
#[derive(Debug, Clone, Copy)]
pub struct InterferencePoint {
    pub t: f64,
    pub state: StateCoords,
    pub expect_t2: f64,
}

/// Evolves psi(0) = psi_1 under the two-path Hamiltonian and records the
/// coordinates and <T_2> at every grid time.
pub fn interference_scenario(cfg: &InterferenceConfig, gens: &GeneratorSet) -> Vec<InterferencePoint> {
    let h = interference_hamiltonian(cfg.omega_a, cfg.omega_b);
    let psi0 = WaveFunction::basis(0);
    let t2 = crate::observables::Observable::basis(1, gens);
    cfg.times
        .iter()
        .map(|&t| {
            let u = propagator_from_hamiltonian(&h, t);
            let psi = u.apply_to_wavefunction(&psi0);
            let state = crate::state::coords_from_wavefunction(&psi, gens);
            let expect_t2 = crate::observables::expectation(&t2, &state);
            InterferencePoint { t, state, expect_t2 }
        })
        .collect()
}

/// Closed-form coordinates of the interference evolution:
/// f_1 = 1, f_2 = f_3 = cos(Delta t), f_5 = f_7 = -sin(Delta t), rest 0.
pub fn interference_expected_coords(delta: f64, t: f64) -> [f64; 15] {
    let mut c = [0.0; 15];
    c[0] = 1.0;
    c[1] = libm::cos(delta * t);
    c[2] = c[1];
    c[4] = -libm::sin(delta * t);
    c[6] = c[4];
    c
}

/// <A>(t) computed in both pictures: evolving the state
/// (tr(A U rho U^dag)) and evolving the operator (tr(U^dag A U rho)).
/// Algebraically identical; numerically two independent routes.
pub fn schrodinger_heisenberg(
    a: &crate::observables::Observable,
    h: &Hamiltonian,
    s: &StateCoords,
    t: f64,
    gens: &GeneratorSet,
) -> (f64, f64) {
    let u = propagator_from_hamiltonian(h, t);
    let rho = density_from_coords(s, gens);
    let schrodinger =
        crate::matrix::trace_product(a.matrix(), &(u.u * rho * u.u.adjoint())).re;
    let heisenberg =
        crate::matrix::trace_product(&(u.u.adjoint() * *a.matrix() * u.u), &rho).re;
    (schrodinger, heisenberg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{expectation, Observable};
    use crate::state::coords_from_wavefunction;

    fn gens() -> GeneratorSet {
        GeneratorSet::new()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn diagonal_hamiltonian_gives_pure_phases() {
        let omega = 1.7;
        let h = Hamiltonian::new(Matrix4::diagonal([omega, 0.0, 0.0, 0.0])).unwrap();
        let t = core::f64::consts::PI / omega;
        let u = propagator_from_hamiltonian(&h, t);
        let expect = Matrix4::diagonal([-1.0, 1.0, 1.0, 1.0]);
        assert!(u.matrix().max_diff(&expect) < 1e-14);
    }

    #[test]
    fn propagators_compose_as_a_group() {
        let g = gens();
        let h = interference_hamiltonian(1.3, 0.4);
        let u1 = propagator_from_hamiltonian(&h, 0.6);
        let u2 = propagator_from_hamiltonian(&h, 1.1);
        let u12 = propagator_from_hamiltonian(&h, 1.7);
        let udiff = u1.compose(&u2).matrix().max_diff(u12.matrix());
        assert!(udiff < 1e-13, "udiff {udiff:e}");
        let s = coords_from_wavefunction(&WaveFunction::basis(0), &g);
        let via_two = apply_propagator(&u2, &apply_propagator(&u1, &s, &g), &g);
        let via_one = apply_propagator(&u12, &s, &g);
        let sdiff = via_two.max_diff(&via_one);
        assert!(sdiff < 1e-13, "sdiff {sdiff:e}");
    }

    #[test]
    fn zero_time_is_the_identity() {
        let h = interference_hamiltonian(0.9, 0.1);
        let u = propagator_from_hamiltonian(&h, 0.0);
        assert!(u.matrix().max_diff(&Matrix4::identity()) < 1e-14);
    }

    #[test]
    fn evolution_preserves_purity_and_positivity() {
        let g = gens();
        let s = crate::state::mix(
            &[
                (0.7, coords_from_wavefunction(&WaveFunction::basis(1), &g)),
                (0.3, StateCoords::maximally_mixed()),
            ],
            &g,
        )
        .unwrap();
        let h = interference_hamiltonian(1.1, 0.2);
        let u = propagator_from_hamiltonian(&h, 2.3);
        let evolved = apply_propagator(&u, &s, &g);
        let drift = (evolved.purity() - s.purity()).abs();
        assert!(drift < 1e-13, "purity drift {drift:e}");
        let report = crate::state::purity_report(&evolved, &g);
        for lambda in report.eigenvalues {
            assert!((-1e-10..=1.0 + 1e-10).contains(&lambda));
        }
    }

    #[test]
    fn cnot_truth_table_is_exact() {
        let u = cnot_gate();
        let expect = [0usize, 1, 3, 2];
        for (input, &output) in expect.iter().enumerate() {
            let image = u.apply_to_wavefunction(&WaveFunction::basis(input));
            assert_eq!(image.max_diff(&WaveFunction::basis(output)), 0.0);
        }
        // Involution.
        assert!(u.compose(&u).matrix().max_diff(&Matrix4::identity()) == 0.0);
    }

    #[test]
    fn cnot_entangles_a_superposed_control() {
        let g = gens();
        let input = WaveFunction::superposition(&[
            (re(1.0), &WaveFunction::basis(0)),
            (re(1.0), &WaveFunction::basis(2)),
        ])
        .unwrap();
        let before = coords_from_wavefunction(&input, &g);
        // Product state: rho_3 = rho_1 rho_2 = 0.
        assert!(before.component(2).abs() < 1e-15);
        let output = cnot_gate().apply_to_wavefunction(&input);
        let after = coords_from_wavefunction(&output, &g);
        assert!((after.component(2) - 1.0).abs() < 1e-15);
        assert!(after.component(0).abs() < 1e-15);
        assert!(after.component(1).abs() < 1e-15);
    }

    #[test]
    fn interference_signal_is_the_frequency_difference_cosine() {
        let g = gens();
        let cfg = InterferenceConfig::uniform_grid(1.4, 0.4, 101, 2.0).unwrap();
        let delta = cfg.delta();
        let series = interference_scenario(&cfg, &g);
        for point in &series {
            assert!((point.expect_t2 - libm::cos(delta * point.t)).abs() < 1e-12);
            let expect = interference_expected_coords(delta, point.t);
            for k in 0..15 {
                assert!((point.state.component(k) - expect[k]).abs() < 1e-12);
            }
            assert!((point.state.purity() - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn interference_pattern_ignores_the_unused_subspace() {
        // Completing the Hamiltonian on basis states 3,4 must not change the
        // signal: psi_1 never leaves the first two components.
        let g = gens();
        let base = interference_hamiltonian(1.4, 0.4);
        let mut completed = *base.matrix();
        completed.set(2, 2, Complex64::new(0.8, 0.0));
        completed.set(3, 3, Complex64::new(-0.5, 0.0));
        let h2 = Hamiltonian::new(completed).unwrap();
        let t2 = Observable::basis(1, &g);
        for &t in &[0.3, 1.9, 4.4] {
            let ua = propagator_from_hamiltonian(&base, t);
            let ub = propagator_from_hamiltonian(&h2, t);
            let sa = coords_from_wavefunction(&ua.apply_to_wavefunction(&WaveFunction::basis(0)), &g);
            let sb = coords_from_wavefunction(&ub.apply_to_wavefunction(&WaveFunction::basis(0)), &g);
            assert!((expectation(&t2, &sa) - expectation(&t2, &sb)).abs() < 1e-12);
        }
    }

    #[test]
    fn both_pictures_agree_and_vanish_at_the_quarter_period() {
        let g = gens();
        let h = interference_hamiltonian(1.0, 0.0);
        let s = coords_from_wavefunction(&WaveFunction::basis(0), &g);
        let t2 = Observable::basis(1, &g);
        let quarter = core::f64::consts::FRAC_PI_2;
        let (schrodinger, heisenberg) = schrodinger_heisenberg(&t2, &h, &s, quarter, &g);
        assert!((schrodinger - heisenberg).abs() < 1e-14);
        assert!(schrodinger.abs() < 1e-13);
    }

    #[test]
    fn non_unitary_matrices_are_rejected() {
        let m = Matrix4::identity() * 0.9;
        assert!(matches!(Propagator::new(m), Err(Error::NotUnitary { .. })));
        let mut h = Matrix4::zero();
        h.set(0, 1, Complex64::new(0.0, 1.0));
        h.set(1, 0, Complex64::new(0.0, 1.0));
        assert!(matches!(Hamiltonian::new(h), Err(Error::NotHermitian { .. })));
    }
}
