//! The explicit classical ensemble carrying a four-state quantum system.
//!
//! A classical configuration is a sign vector {sigma_k} in {-1,+1}^15
//! together with an environment label zeta in {1..Z}. The subsystem
//! distribution
//!
//!   p({sigma}, zeta) = 2^-15 prod_k (1 + sigma_k rho_k) * wbar(zeta)
//!
//! reproduces every state coordinate as a plain first moment,
//! rho_k = <sigma_k>. Admissible environment perturbations delta_p keep the
//! total probability and all fifteen first moments fixed while moving the
//! classical pair correlations <sigma_k sigma_l>: the statistics relevant to
//! the subsystem are incomplete, and that incompleteness is what the crate
//! demonstrates quantitatively.
//!
//! All enumeration sums use one fixed pairwise tree reduction so results are
//! bit-stable and independent of any execution order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::state::{StateCoords, WEIGHT_SUM_TOL};

/// 2^15 sign configurations of the fifteen two-level observables.
pub const NUM_SPIN_CONFIGS: usize = 1 << 15;

/// State coordinates may sit on the boundary |rho_k| = 1; beyond this slack
/// they would produce negative probability factors.
pub const COORD_RANGE_TOL: f64 = 1e-12;

/// Ensemble totals and first moments must hold within this.
pub const MOMENT_TOL: f64 = 1e-12;

/// A pair-correlation shift larger than this counts as a detectable
/// environment effect.
pub const DETECTABLE_SHIFT: f64 = 1e-6;

/// Pairwise tree reduction, base case 64. The one summation order used for
/// every enumeration in this module.
pub(crate) fn pairwise<F: Fn(usize) -> f64 + Copy>(lo: usize, hi: usize, f: F) -> f64 {
    if hi - lo <= 64 {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        pairwise(lo, mid, f) + pairwise(mid, hi, f)
    }
}

pub(crate) fn pairwise_slice(xs: &[f64]) -> f64 {
    pairwise(0, xs.len(), |i| xs[i])
}

/// One sign configuration, packed as 15 bits: bit k set means sigma_{k+1} = -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinConfig(u16);

impl SpinConfig {
    pub fn new(index: usize) -> Self {
        assert!(index < NUM_SPIN_CONFIGS, "spin configuration index out of range");
        SpinConfig(index as u16)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The fixed classical value sigma_k of this configuration (zero-based k).
    /// This is the whole point of the construction: every T_k has a definite
    /// +-1 value in each classical state.
    pub fn sigma(self, k: usize) -> f64 {
        assert!(k < 15, "generator index out of range");
        if (self.0 >> k) & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    pub fn all() -> impl Iterator<Item = SpinConfig> {
        (0..NUM_SPIN_CONFIGS).map(SpinConfig::new)
    }
}

/// Dense probability table over (zeta, {sigma}), laid out zeta-major:
/// entry zeta * 2^15 + config.
#[derive(Debug, Clone)]
pub struct ClassicalEnsemble {
    num_env: usize,
    probs: Vec<f64>,
}

impl ClassicalEnsemble {
    /// Builds the product-form subsystem distribution for a state, split
    /// over environment states with weights `env_weights` (nonnegative,
    /// summing to 1).
    pub fn from_state(s: &StateCoords, env_weights: &[f64]) -> Result<Self> {
        if env_weights.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut weight_sum = 0.0;
        for &w in env_weights {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::NegativeWeight { value: w });
            }
            weight_sum += w;
        }
        if (weight_sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::BadWeights { sum: weight_sum });
        }
        let rho = s.coords();
        for k in 0..15 {
            if rho[k].abs() > 1.0 + COORD_RANGE_TOL {
                return Err(Error::CoordOutOfRange { index: k, value: rho[k] });
            }
        }

        let scale = 1.0 / NUM_SPIN_CONFIGS as f64;
        let mut base = vec![0.0f64; NUM_SPIN_CONFIGS];
        for (index, slot) in base.iter_mut().enumerate() {
            let config = SpinConfig::new(index);
            let mut prod = scale;
            for k in 0..15 {
                // Coordinates on the boundary give exact zero factors;
                // rounding within the slack is clamped here and only here.
                let factor = (1.0 + config.sigma(k) * rho[k]).max(0.0);
                prod *= factor;
            }
            *slot = prod;
        }

        let mut probs = Vec::with_capacity(env_weights.len() * NUM_SPIN_CONFIGS);
        for &w in env_weights {
            probs.extend(base.iter().map(|p| p * w));
        }
        Ok(ClassicalEnsemble { num_env: env_weights.len(), probs })
    }

    /// Wraps a raw probability table (e.g. read back from disk), validating
    /// shape, nonnegativity and normalization.
    pub fn from_parts(num_env: usize, probs: Vec<f64>) -> Result<Self> {
        let expected = num_env * NUM_SPIN_CONFIGS;
        if num_env == 0 || probs.len() != expected {
            return Err(Error::LengthMismatch { expected, actual: probs.len() });
        }
        for &p in &probs {
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if p < 0.0 {
                return Err(Error::NegativeProbability { value: p });
            }
        }
        let ensemble = ClassicalEnsemble { num_env, probs };
        let total = ensemble.total();
        if (total - 1.0).abs() > MOMENT_TOL {
            return Err(Error::BadWeights { sum: total });
        }
        Ok(ensemble)
    }

    pub fn num_env(&self) -> usize {
        self.num_env
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, zeta: usize, config: SpinConfig) -> f64 {
        self.probs[zeta * NUM_SPIN_CONFIGS + config.index()]
    }

    pub fn total(&self) -> f64 {
        pairwise_slice(&self.probs)
    }

    /// <sigma_k> by full enumeration over all (zeta, {sigma}).
    pub fn expectation_sigma(&self, k: usize) -> f64 {
        assert!(k < 15, "generator index out of range");
        pairwise(0, self.probs.len(), |i| {
            SpinConfig::new(i % NUM_SPIN_CONFIGS).sigma(k) * self.probs[i]
        })
    }

    pub fn first_moments(&self) -> [f64; 15] {
        let mut out = [0.0; 15];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.expectation_sigma(k);
        }
        out
    }

    /// The classical pair correlation <sigma_k sigma_l>, k != l. This is the
    /// quantity quantum mechanics does not fix: it depends on the
    /// environment data.
    pub fn correlation(&self, k: usize, l: usize) -> f64 {
        assert!(k < 15 && l < 15 && k != l, "need two distinct generator indices");
        pairwise(0, self.probs.len(), |i| {
            let config = SpinConfig::new(i % NUM_SPIN_CONFIGS);
            config.sigma(k) * config.sigma(l) * self.probs[i]
        })
    }

    /// Applies an admissible perturbation. Entrywise negatives beyond
    /// rounding are rejected; negatives within -1e-15 are clamped to zero.
    pub fn perturbed(&self, delta: &EnvPerturbation) -> Result<Self> {
        if delta.len() != self.probs.len() {
            return Err(Error::LengthMismatch { expected: self.probs.len(), actual: delta.len() });
        }
        let mut probs = self.probs.clone();
        for (slot, &d) in probs.iter_mut().zip(delta.values()) {
            let next = *slot + d;
            if next < -1e-15 {
                return Err(Error::NegativeProbability { value: next });
            }
            *slot = next.max(0.0);
        }
        let out = ClassicalEnsemble { num_env: self.num_env, probs };
        let total = out.total();
        if (total - 1.0).abs() > MOMENT_TOL {
            return Err(Error::BadWeights { sum: total });
        }
        Ok(out)
    }
}

/// Largest |<sigma_k sigma_l>_perturbed - <sigma_k sigma_l>_base| over all
/// 105 pairs, with the (zero-based) pair that attains it.
pub fn max_correlation_shift(
    base: &ClassicalEnsemble,
    perturbed: &ClassicalEnsemble,
) -> (usize, usize, f64) {
    let mut best = (0usize, 1usize, 0.0f64);
    for k in 0..15 {
        for l in (k + 1)..15 {
            let shift = (perturbed.correlation(k, l) - base.correlation(k, l)).abs();
            if shift > best.2 {
                best = (k, l, shift);
            }
        }
    }
    best
}

/// A table of probability shifts with zero total and zero overlap with every
/// sigma_k character: invisible to the subsystem state, visible to pair
/// correlations.
#[derive(Debug, Clone)]
pub struct EnvPerturbation {
    delta: Vec<f64>,
}

impl EnvPerturbation {
    pub fn zero(len: usize) -> Self {
        EnvPerturbation { delta: vec![0.0; len] }
    }

    pub fn values(&self) -> &[f64] {
        &self.delta
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.delta.iter().fold(0.0f64, |acc, &d| acc.max(d.abs()))
    }

    /// Residual of the total-probability constraint.
    pub fn total(&self) -> f64 {
        pairwise_slice(&self.delta)
    }

    /// Residual of the first-moment constraint for sigma_k.
    pub fn first_moment_residual(&self, k: usize) -> f64 {
        assert!(k < 15, "generator index out of range");
        pairwise(0, self.delta.len(), |i| {
            SpinConfig::new(i % NUM_SPIN_CONFIGS).sigma(k) * self.delta[i]
        })
    }

    /// delta = epsilon * sigma_k sigma_l * p: a degree-two character weighted
    /// by the base probabilities. Feasible for |epsilon| <= 1 by
    /// construction; admissibility (zero first moments) is verified and
    /// holds whenever the base first moments in the touched directions
    /// vanish, as on the entangled pair states.
    pub fn from_weighted_character(
        base: &ClassicalEnsemble,
        k: usize,
        l: usize,
        epsilon: f64,
    ) -> Result<Self> {
        assert!(k < 15 && l < 15 && k != l, "need two distinct generator indices");
        if !epsilon.is_finite() || epsilon.abs() > 1.0 {
            return Err(Error::BadMagnitude { value: epsilon });
        }
        let delta: Vec<f64> = base
            .probs()
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let config = SpinConfig::new(i % NUM_SPIN_CONFIGS);
                epsilon * config.sigma(k) * config.sigma(l) * p
            })
            .collect();
        let out = EnvPerturbation { delta };
        let mut residual = out.total().abs();
        for m in 0..15 {
            residual = residual.max(out.first_moment_residual(m).abs());
        }
        if residual > MOMENT_TOL {
            return Err(Error::ConstraintViolated { residual });
        }
        Ok(out)
    }
}

/// Projects an arbitrary shift table onto the admissible subspace:
/// subtracts its overlap with the constant direction and with each of the
/// fifteen sigma_k characters. Tables already orthogonal to all sixteen
/// directions (e.g. pure higher-degree characters) pass through unchanged.
pub fn project_admissible(delta: &mut [f64]) -> Result<()> {
    if delta.is_empty() || delta.len() % NUM_SPIN_CONFIGS != 0 {
        return Err(Error::LengthMismatch { expected: NUM_SPIN_CONFIGS, actual: delta.len() });
    }
    let n = delta.len() as f64;
    let mean = pairwise(0, delta.len(), |i| delta[i]) / n;
    for d in delta.iter_mut() {
        *d -= mean;
    }
    for k in 0..15 {
        // The sixteen directions are mutually orthogonal with squared norm
        // n, so sequential subtraction is the joint projection.
        let coefficient =
            pairwise(0, delta.len(), |i| SpinConfig::new(i % NUM_SPIN_CONFIGS).sigma(k) * delta[i])
                / n;
        for (i, d) in delta.iter_mut().enumerate() {
            *d -= coefficient * SpinConfig::new(i % NUM_SPIN_CONFIGS).sigma(k);
        }
    }
    Ok(())
}

/// Draws a random admissible perturbation of the given max-norm magnitude,
/// shrunk further if feasibility (p + delta >= 0) requires it.
///
/// The draw is uniform noise in [-1, 1] per entry, projected onto the
/// admissible subspace, renormalized to unit max-norm and scaled. One
/// admissible choice among many; bases containing zero-probability entries
/// can force the scale all the way to zero.
pub fn sample_env_perturbation(
    base: &ClassicalEnsemble,
    seed: u64,
    magnitude: f64,
) -> Result<EnvPerturbation> {
    if !magnitude.is_finite() || magnitude < 0.0 {
        return Err(Error::BadMagnitude { value: magnitude });
    }
    let mut rng = crate::sampling::rng_from_seed(seed);
    let mut delta: Vec<f64> =
        (0..base.len()).map(|_| crate::sampling::uniform_pm1(&mut rng)).collect();
    project_admissible(&mut delta)?;

    let max = delta.iter().fold(0.0f64, |acc, &d| acc.max(d.abs()));
    if max == 0.0 {
        return Ok(EnvPerturbation::zero(base.len()));
    }
    for d in delta.iter_mut() {
        *d /= max;
    }

    let mut feasible = f64::INFINITY;
    for (i, &d) in delta.iter().enumerate() {
        if d < 0.0 {
            feasible = feasible.min(base.probs()[i] / -d);
        }
    }
    let scale = if feasible.is_finite() {
        magnitude.min(feasible * (1.0 - 1e-12))
    } else {
        magnitude
    };
    for d in delta.iter_mut() {
        *d *= scale;
    }
    Ok(EnvPerturbation { delta })
}
