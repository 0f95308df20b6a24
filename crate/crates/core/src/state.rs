//! States as fifteen real coordinates, and their matrix and wave-function
//! forms.
//!
//! A state is rho = (1 + rho_k L_k)/4 with purity P = sum rho_k^2 in [0, 3].
//! P = 3 exactly on pure states, where the coordinates coincide with the
//! quadratic forms f_k = psi^dag L_k psi of a normalized wave function.
//! Validity means positivity of the matrix form; every constructor here
//! either checks it or is only reachable from inputs where it holds by
//! construction.

use num_complex::Complex64;

use crate::algebra::{coords_from_operator, eigh, Coords15, GeneratorSet, HERMITICITY_TOL};
use crate::error::{Error, Result};
use crate::matrix::{modulus, Matrix4};

/// Slack on the purity bound P <= 3.
pub const PURITY_BOUND_TOL: f64 = 1e-12;
/// Density-matrix eigenvalues must lie in [-POSITIVITY_TOL, 1 + POSITIVITY_TOL].
pub const POSITIVITY_TOL: f64 = 1e-10;
/// A state is reported pure when max |(rho^2 - rho)_ij| stays below this.
pub const PURE_DEFECT_TOL: f64 = 1e-10;
/// |psi^dag psi - 1| allowed on wave functions.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Trace of a density matrix must be 1 within this.
pub const TRACE_TOL: f64 = 1e-12;
/// Mixing and environment weights must sum to 1 within this.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// A validated state: coordinates within the positivity region, purity cached.
#[derive(Debug, Clone, Copy)]
pub struct StateCoords {
    rho: Coords15,
    purity: f64,
}

impl StateCoords {
    /// Validates the coordinates: purity bound first (cheap), then the
    /// eigenvalue range of the reconstructed matrix. The offending
    /// eigenvalue is reported on rejection.
    pub fn new(rho: Coords15, gens: &GeneratorSet) -> Result<Self> {
        let purity = rho.norm_sq();
        if purity > 3.0 + PURITY_BOUND_TOL {
            return Err(Error::PurityBound { purity });
        }
        let dec = eigh(&density_matrix(&rho, gens)).expect("construction is Hermitian");
        for &lambda in &dec.eigenvalues {
            if lambda < -POSITIVITY_TOL || lambda > 1.0 + POSITIVITY_TOL {
                return Err(Error::NotPositive { eigenvalue: lambda });
            }
        }
        Ok(StateCoords { rho, purity })
    }

    /// For coordinates valid by construction (unitary images of valid
    /// states, quadratic forms of normalized wave functions). Skips the
    /// eigenvalue check; callers must guarantee positivity.
    pub(crate) fn trusted(rho: Coords15) -> Self {
        let purity = rho.norm_sq();
        StateCoords { rho, purity }
    }

    pub fn maximally_mixed() -> Self {
        StateCoords { rho: Coords15::zero(), purity: 0.0 }
    }

    pub fn coords(&self) -> &Coords15 {
        &self.rho
    }

    /// Coordinate rho_k, zero-based k.
    pub fn component(&self, k: usize) -> f64 {
        self.rho[k]
    }

    /// P = sum_k rho_k^2, equal to 4 tr(rho^2) - 1.
    pub fn purity(&self) -> f64 {
        self.purity
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.rho.max_diff(&other.rho)
    }
}

pub(crate) fn density_matrix(rho: &Coords15, gens: &GeneratorSet) -> Matrix4 {
    let mut acc = Matrix4::identity();
    for k in 0..15 {
        let w = rho[k];
        if w != 0.0 {
            acc = acc + gens[k] * w;
        }
    }
    acc * 0.25
}

/// rho = (1 + rho_k L_k)/4.
pub fn density_from_coords(s: &StateCoords, gens: &GeneratorSet) -> Matrix4 {
    density_matrix(s.coords(), gens)
}

/// Reads coordinates off a density matrix, validating hermiticity,
/// unit trace and positivity.
pub fn coords_from_density(m: &Matrix4, gens: &GeneratorSet) -> Result<StateCoords> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    let dec = eigh(m)?;
    for &lambda in &dec.eigenvalues {
        if lambda < -POSITIVITY_TOL || lambda > 1.0 + POSITIVITY_TOL {
            return Err(Error::NotPositive { eigenvalue: lambda });
        }
    }
    // The L_k coefficient of a density matrix is rho_k / 4; the factor of
    // four is a power of two, so the rescale is exact.
    let (_, rho) = coords_from_operator(m, gens);
    Ok(StateCoords::trusted(rho.scaled(4.0)))
}

/// A normalized four-component wave function.
#[derive(Debug, Clone, Copy)]
pub struct WaveFunction {
    amps: [Complex64; 4],
}

impl WaveFunction {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = libm::sqrt(amps.iter().map(|z| z.norm_sqr()).sum());
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(WaveFunction { amps })
    }

    /// Normalizes arbitrary amplitudes; rejects the near-zero vector.
    pub fn from_unnormalized(amps: [Complex64; 4]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = libm::sqrt(amps.iter().map(|z| z.norm_sqr()).sum());
        if norm < 1e-14 {
            return Err(Error::NotNormalized { norm });
        }
        let mut out = amps;
        for z in out.iter_mut() {
            *z /= norm;
        }
        Ok(WaveFunction { amps: out })
    }

    /// Basis state psi_{i+1} (zero-based i).
    pub fn basis(i: usize) -> Self {
        assert!(i < 4, "basis index out of range");
        let mut amps = [Complex64::new(0.0, 0.0); 4];
        amps[i] = Complex64::new(1.0, 0.0);
        WaveFunction { amps }
    }

    /// Normalized linear combination of wave functions.
    pub fn superposition(terms: &[(Complex64, &WaveFunction)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut amps = [Complex64::new(0.0, 0.0); 4];
        for (w, psi) in terms {
            for i in 0..4 {
                amps[i] += *w * psi.amps[i];
            }
        }
        Self::from_unnormalized(amps)
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amps
    }

    /// <self|other>.
    pub fn inner(&self, other: &WaveFunction) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            acc += self.amps[i].conj() * other.amps[i];
        }
        acc
    }

    /// |psi><psi|.
    pub fn projector(&self) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        out
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amps.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest |amplitude| difference, useful for exact-map tests.
    pub fn max_diff(&self, other: &WaveFunction) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            let d = modulus(self.amps[i] - other.amps[i]);
            if d > worst {
                worst = d;
            }
        }
        worst
    }
}

/// f_k = psi^dag L_k psi. Pure by construction (P = 3 up to rounding), so no
/// eigenvalue check is run.
pub fn coords_from_wavefunction(psi: &WaveFunction, gens: &GeneratorSet) -> StateCoords {
    let mut c = [0.0; 15];
    for k in 0..15 {
        let image = gens[k].mul_vec(psi.amplitudes());
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            acc += psi.amplitudes()[i].conj() * image[i];
        }
        c[k] = acc.re;
    }
    StateCoords::trusted(Coords15::from_array(c))
}

/// Eigenvalue-level diagnosis of a state.
///
/// `eigenvalues` are ascending with negatives inside the positivity slack
/// clamped to 0 for reporting; `defect` is max |(rho^2 - rho)_ij|.
#[derive(Debug, Clone, Copy)]
pub struct PurityReport {
    pub purity: f64,
    pub eigenvalues: [f64; 4],
    pub defect: f64,
    pub is_pure: bool,
}

pub fn purity_report(s: &StateCoords, gens: &GeneratorSet) -> PurityReport {
    let m = density_from_coords(s, gens);
    let dec = eigh(&m).expect("density matrix is Hermitian");
    let mut eigenvalues = dec.eigenvalues;
    for lambda in eigenvalues.iter_mut() {
        if *lambda < 0.0 {
            *lambda = 0.0;
        }
    }
    let defect = (m * m - m).max_norm();
    PurityReport {
        purity: s.purity(),
        eigenvalues,
        defect,
        is_pure: defect < PURE_DEFECT_TOL,
    }
}

/// Convex combination sum_i w_i rho_i. Weights must be nonnegative and sum
/// to 1 within `WEIGHT_SUM_TOL`.
pub fn mix(parts: &[(f64, StateCoords)], gens: &GeneratorSet) -> Result<StateCoords> {
    if parts.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sum = 0.0;
    for &(w, _) in parts {
        if !(w >= 0.0) {
            return Err(Error::NegativeWeight { value: w });
        }
        sum += w;
    }
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::BadWeights { sum });
    }
    let mut c = Coords15::zero();
    for (w, s) in parts {
        c = c.add(&s.coords().scaled(*w));
    }
    StateCoords::new(c, gens)
}

/// Radially rescales a state to target purity: rho_k -> sqrt(P/P_cur) rho_k.
///
/// Scaling toward the maximally mixed state always stays valid; scaling
/// outward is validated and may be rejected.
pub fn rescaled_purity(s: &StateCoords, target: f64, gens: &GeneratorSet) -> Result<StateCoords> {
    if !(target >= 0.0) || !target.is_finite() {
        return Err(Error::BadMagnitude { value: target });
    }
    if s.purity() == 0.0 {
        return if target == 0.0 {
            Ok(StateCoords::maximally_mixed())
        } else {
            Err(Error::BadMagnitude { value: target })
        };
    }
    let factor = libm::sqrt(target / s.purity());
    StateCoords::new(s.coords().scaled(factor), gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INV_SQRT2: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn gens() -> GeneratorSet {
        GeneratorSet::new()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn basis_state_coordinates_are_unit_diagonal_signs() {
        let g = gens();
        let s = coords_from_wavefunction(&WaveFunction::basis(0), &g);
        for k in 0..15 {
            let expect = if k < 3 { 1.0 } else { 0.0 };
            assert!((s.component(k) - expect).abs() < 1e-15, "k={k}");
        }
        assert!((s.purity() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn entangled_pair_state_coordinates() {
        let g = gens();
        let psi_plus = WaveFunction::superposition(&[
            (re(1.0), &WaveFunction::basis(1)),
            (re(1.0), &WaveFunction::basis(2)),
        ])
        .unwrap();
        let s = coords_from_wavefunction(&psi_plus, &g);
        // rho_3 = -1, rho_12 = +1, rho_14 = -1 (one-based), all others 0.
        for k in 0..15 {
            let expect = match k {
                2 => -1.0,
                11 => 1.0,
                13 => -1.0,
                _ => 0.0,
            };
            assert!((s.component(k) - expect).abs() < 1e-15, "k={}", k + 1);
        }
    }

    #[test]
    fn density_round_trip_preserves_coordinates() {
        let g = gens();
        let psi = WaveFunction::from_unnormalized([re(0.3), re(-0.8), Complex64::new(0.1, 0.4), re(0.2)])
            .unwrap();
        let s = coords_from_wavefunction(&psi, &g);
        let m = density_from_coords(&s, &g);
        assert!(m.max_diff(&psi.projector()) < 1e-14);
        let back = coords_from_density(&m, &g).unwrap();
        assert!(back.max_diff(&s) < 1e-13);
    }

    #[test]
    fn purity_matches_trace_formula() {
        let g = gens();
        let s = mix(
            &[(0.5, coords_from_wavefunction(&WaveFunction::basis(0), &g)), (0.5, StateCoords::maximally_mixed())],
            &g,
        )
        .unwrap();
        assert!((s.purity() - 0.75).abs() < 1e-14);
        let m = density_from_coords(&s, &g);
        let tr_sq = (m * m).trace().re;
        assert!((s.purity() - (4.0 * tr_sq - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn equal_mixture_of_entangled_pair_has_unit_purity() {
        let g = gens();
        let plus = WaveFunction::superposition(&[
            (re(1.0), &WaveFunction::basis(1)),
            (re(1.0), &WaveFunction::basis(2)),
        ])
        .unwrap();
        let minus = WaveFunction::superposition(&[
            (re(1.0), &WaveFunction::basis(1)),
            (re(-1.0), &WaveFunction::basis(2)),
        ])
        .unwrap();
        let s = mix(
            &[
                (0.5, coords_from_wavefunction(&plus, &g)),
                (0.5, coords_from_wavefunction(&minus, &g)),
            ],
            &g,
        )
        .unwrap();
        // Only rho_3 = -1 survives the average.
        assert!((s.component(2) + 1.0).abs() < 1e-15);
        assert!((s.purity() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn purity_bound_rejects_oversized_coordinates() {
        let g = gens();
        let mut c = [0.0; 15];
        c[0] = 2.0;
        match StateCoords::new(Coords15::new(c).unwrap(), &g) {
            Err(Error::PurityBound { purity }) => assert!((purity - 4.0).abs() < 1e-15),
            other => panic!("expected PurityBound, got {other:?}"),
        }
    }

    #[test]
    fn positivity_rejects_pure_direction_scaled_past_one() {
        // rho_1 = rho_2 = 1, rho_3 = -1 keeps P < 3 but drives an eigenvalue
        // negative; the validator must catch it.
        let g = gens();
        let mut c = [0.0; 15];
        c[0] = 1.0;
        c[1] = 1.0;
        c[2] = -1.0;
        match StateCoords::new(Coords15::new(c).unwrap(), &g) {
            Err(Error::NotPositive { eigenvalue }) => assert!(eigenvalue < -0.4),
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn pure_state_report_flags_purity_three() {
        let g = gens();
        let s = coords_from_wavefunction(&WaveFunction::basis(2), &g);
        let report = purity_report(&s, &g);
        assert!(report.is_pure);
        assert!(report.defect < 1e-14);
        assert!((report.eigenvalues[3] - 1.0).abs() < 1e-12);
        assert!(report.eigenvalues[0].abs() < 1e-12);

        let mixed = purity_report(&StateCoords::maximally_mixed(), &g);
        assert!(!mixed.is_pure);
        for lambda in mixed.eigenvalues {
            assert!((lambda - 0.25).abs() < 1e-13);
        }
    }

    #[test]
    fn rescaled_purity_interpolates_toward_mixed() {
        let g = gens();
        let pure = coords_from_wavefunction(&WaveFunction::basis(0), &g);
        let half = rescaled_purity(&pure, 1.5, &g).unwrap();
        assert!((half.purity() - 1.5).abs() < 1e-13);
        let ratio = half.component(0) / pure.component(0);
        assert!((ratio - libm::sqrt(0.5)).abs() < 1e-13);
    }

    #[test]
    fn wavefunction_normalization_is_enforced() {
        assert!(WaveFunction::new([re(1.0), re(1.0), re(0.0), re(0.0)]).is_err());
        let ok = WaveFunction::new([re(INV_SQRT2), re(INV_SQRT2), re(0.0), re(0.0)]).unwrap();
        assert!((ok.norm() - 1.0).abs() < 1e-15);
        assert!(WaveFunction::from_unnormalized([re(0.0); 4]).is_err());
    }

    #[test]
    fn density_validation_rejects_bad_trace() {
        let g = gens();
        let m = Matrix4::identity() * 0.5;
        assert!(matches!(coords_from_density(&m, &g), Err(Error::TraceNotOne { .. })));
    }
}
