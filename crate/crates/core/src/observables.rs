//! System observables, two-level outcome statistics and measurement
//! correlations.
//!
//! An observable is A = e_k L_k. When A^2 = 1 it behaves as a spin: outcomes
//! +-1 with probabilities w_+- = (1 +- e.rho)/2. Product measurements on the
//! two two-level subsystems use the joint table w_{gamma eps} built from
//! (rho_1, rho_2, rho_3), and the correlation actually measured by
//! consecutive ideal measurements is <AB>_m = tr((AB + BA) rho) / 2.

use alloc::vec::Vec;

use crate::algebra::{anticommutator, coords_from_operator, eigh, operator_from_coords, Coords15, GeneratorSet};
use crate::error::{Error, Result};
use crate::matrix::{trace_product, Matrix4};
use crate::state::{density_from_coords, StateCoords};

/// An observable is treated as two-level when max |(A^2 - 1)_ij| stays below this.
pub const TWO_LEVEL_TOL: f64 = 1e-12;
/// Conditional probabilities are reported only when the conditioning
/// probability exceeds this.
pub const CONDITION_ZERO_TOL: f64 = 1e-12;
/// Spectral groups merge eigenvalues closer than this.
pub const EIGENVALUE_MERGE_TOL: f64 = 1e-9;

/// A traceless Hermitian observable with its direction and matrix form.
#[derive(Debug, Clone, Copy)]
pub struct Observable {
    e: Coords15,
    op: Matrix4,
    two_level_defect: f64,
}

impl Observable {
    /// Builds A = e_k L_k and records how far A^2 is from the identity.
    ///
    /// A unit direction is necessary but not sufficient for a two-level
    /// observable; the defect is measured on the matrix itself.
    pub fn from_direction(e: Coords15, gens: &GeneratorSet) -> Self {
        let op = operator_from_coords(&e, gens);
        let two_level_defect = (op * op - Matrix4::identity()).max_norm();
        Observable { e, op, two_level_defect }
    }

    /// The basis observable T_{k+1} = L_{k+1} (zero-based k).
    pub fn basis(k: usize, gens: &GeneratorSet) -> Self {
        Self::from_direction(Coords15::unit(k), gens)
    }

    pub fn direction(&self) -> &Coords15 {
        &self.e
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.op
    }

    pub fn two_level_defect(&self) -> f64 {
        self.two_level_defect
    }

    pub fn is_two_level(&self) -> bool {
        self.two_level_defect < TWO_LEVEL_TOL
    }
}

/// <A> = sum_k e_k rho_k.
pub fn expectation(obs: &Observable, s: &StateCoords) -> f64 {
    obs.e.dot(s.coords())
}

/// <A> = tr(A rho), the independent matrix route.
pub fn expectation_trace(obs: &Observable, s: &StateCoords, gens: &GeneratorSet) -> f64 {
    trace_product(&obs.op, &density_from_coords(s, gens)).re
}

/// Outcome probabilities (w_+, w_-) of a two-level observable.
pub fn outcome_probabilities(obs: &Observable, s: &StateCoords) -> Result<(f64, f64)> {
    if !obs.is_two_level() {
        return Err(Error::NotTwoLevel { defect: obs.two_level_defect });
    }
    let mean = expectation(obs, s);
    Ok((0.5 * (1.0 + mean), 0.5 * (1.0 - mean)))
}

/// Joint two-bit outcome probabilities for the diagonal pair (T_1, T_2).
///
/// Fields are w_{gamma eps} with gamma the first bit and eps the second;
/// they coincide with the diagonal of the density matrix, so each lies in
/// [0, 1] and the four sum to 1.
#[derive(Debug, Clone, Copy)]
pub struct OutcomeTable {
    pub w_pp: f64,
    pub w_pm: f64,
    pub w_mp: f64,
    pub w_mm: f64,
}

impl OutcomeTable {
    pub fn sum(&self) -> f64 {
        self.w_pp + self.w_pm + self.w_mp + self.w_mm
    }

    /// Marginal <T_1>.
    pub fn first_bit_mean(&self) -> f64 {
        self.w_pp + self.w_pm - self.w_mp - self.w_mm
    }

    /// Marginal <T_2>.
    pub fn second_bit_mean(&self) -> f64 {
        self.w_pp - self.w_pm + self.w_mp - self.w_mm
    }

    /// <T_1 T_2> read off the table.
    pub fn product_mean(&self) -> f64 {
        self.w_pp - self.w_pm - self.w_mp + self.w_mm
    }
}

pub fn joint_outcomes(s: &StateCoords) -> OutcomeTable {
    let r1 = s.component(0);
    let r2 = s.component(1);
    let r3 = s.component(2);
    OutcomeTable {
        w_pp: 0.25 * (1.0 + r1 + r2 + r3),
        w_pm: 0.25 * (1.0 + r1 - r2 - r3),
        w_mp: 0.25 * (1.0 - r1 + r2 - r3),
        w_mm: 0.25 * (1.0 - r1 - r2 + r3),
    }
}

/// Conditional probabilities p(eps; gamma) for the second bit given the
/// first. A column is `None` when the conditioning outcome has probability
/// below `CONDITION_ZERO_TOL`.
#[derive(Debug, Clone, Copy)]
pub struct ConditionalTable {
    pub p_plus_given_plus: Option<f64>,
    pub p_minus_given_plus: Option<f64>,
    pub p_plus_given_minus: Option<f64>,
    pub p_minus_given_minus: Option<f64>,
}

pub fn conditional_probabilities(s: &StateCoords) -> ConditionalTable {
    let w = joint_outcomes(s);
    let w_first_plus = w.w_pp + w.w_pm;
    let w_first_minus = w.w_mp + w.w_mm;
    let (p_plus_given_plus, p_minus_given_plus) = if w_first_plus > CONDITION_ZERO_TOL {
        (Some(w.w_pp / w_first_plus), Some(w.w_pm / w_first_plus))
    } else {
        (None, None)
    };
    let (p_plus_given_minus, p_minus_given_minus) = if w_first_minus > CONDITION_ZERO_TOL {
        (Some(w.w_mp / w_first_minus), Some(w.w_mm / w_first_minus))
    } else {
        (None, None)
    };
    ConditionalTable {
        p_plus_given_plus,
        p_minus_given_plus,
        p_plus_given_minus,
        p_minus_given_minus,
    }
}

/// <A^2> - <A>^2 via the matrix route.
pub fn dispersion(obs: &Observable, s: &StateCoords, gens: &GeneratorSet) -> f64 {
    let rho = density_from_coords(s, gens);
    let mean = trace_product(&obs.op, &rho).re;
    let mean_sq = trace_product(&(obs.op * obs.op), &rho).re;
    mean_sq - mean * mean
}

/// The correlation produced by consecutive ideal measurements:
/// <AB>_m = tr((AB + BA) rho) / 2. Symmetric in its operator arguments.
pub fn measurement_correlation(
    a: &Observable,
    b: &Observable,
    s: &StateCoords,
    gens: &GeneratorSet,
) -> f64 {
    let sym = anticommutator(&a.op, &b.op);
    0.5 * trace_product(&sym, &density_from_coords(s, gens)).re
}

/// Probabilities of the (possibly degenerate) eigenvalues of an arbitrary
/// Hermitian observable: eigenvalues within `EIGENVALUE_MERGE_TOL` are
/// grouped, and each group gets the summed projector weight tr(P rho).
///
/// Returns ascending (eigenvalue, probability) pairs.
pub fn spectral_probabilities(
    a: &Matrix4,
    s: &StateCoords,
    gens: &GeneratorSet,
) -> Result<Vec<(f64, f64)>> {
    let dec = eigh(a)?;
    let rho = density_from_coords(s, gens);
    let mut groups: Vec<(f64, f64, usize)> = Vec::new();
    for col in 0..4 {
        let mut v = [crate::matrix::C_ZERO; 4];
        for row in 0..4 {
            v[row] = dec.eigenvectors.get(row, col);
        }
        let image = rho.mul_vec(&v);
        let mut weight = 0.0;
        for row in 0..4 {
            weight += (v[row].conj() * image[row]).re;
        }
        let lambda = dec.eigenvalues[col];
        match groups.last_mut() {
            Some((lead, prob, count)) if (lambda - *lead).abs() <= EIGENVALUE_MERGE_TOL => {
                // Running mean keeps the reported eigenvalue representative
                // of the whole group.
                *lead = (*lead * (*count as f64) + lambda) / (*count as f64 + 1.0);
                *prob += weight;
                *count += 1;
            }
            _ => groups.push((lambda, weight, 1)),
        }
    }
    Ok(groups.into_iter().map(|(lambda, prob, _)| (lambda, prob)).collect())
}

/// Coordinates of a generic two-level observable: e_k picked up from a
/// +-1-signature matrix conjugated by a unitary. Kept here so callers can
/// state "this direction satisfies A^2 = 1 by construction".
pub fn direction_from_signature(u: &Matrix4, gens: &GeneratorSet) -> Coords15 {
    let signature = Matrix4::diagonal([1.0, 1.0, -1.0, -1.0]);
    let a = *u * signature * u.adjoint();
    let (_, e) = coords_from_operator(&a.hermitian_part(), gens);
    e
}
