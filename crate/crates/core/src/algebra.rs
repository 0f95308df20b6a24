//! The fifteen generator matrices and the operator <-> coordinate maps.
//!
//! A four-state system is described by fifteen Hermitian 4x4 matrices L_k
//! with L_k^2 = 1, tr L_k = 0 and tr(L_k L_l) = 4 delta_kl. Every Hermitian
//! operator decomposes as A = a_0 + e_k L_k with real coefficients
//! e_k = tr(A L_k)/4, and density matrices are parametrized by the fifteen
//! real numbers rho_k = tr(rho L_k).
//!
//! Indexing: code is zero-based (`gens[0]` is the matrix written L_1 in
//! notation), printed reports are one-based.

use core::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{modulus, trace_product, Matrix4, C_ONE, C_ZERO};

/// Max tolerated |a_ij - conj(a_ji)| when a Hermitian input is required.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Fifteen real coefficients indexed like the generators.
///
/// Used both for state coordinates rho_k and observable directions e_k.
/// Entries are always finite; the public constructor rejects NaN/Inf.
#[derive(Debug, Clone, Copy)]
pub struct Coords15 {
    c: [f64; 15],
}

impl Coords15 {
    pub fn new(c: [f64; 15]) -> Result<Self> {
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Coords15 { c })
    }

    /// Crate-internal constructor for coefficients that are finite by
    /// construction (traces of finite matrices, permutations, ...).
    pub(crate) fn from_array(c: [f64; 15]) -> Self {
        Coords15 { c }
    }

    pub fn zero() -> Self {
        Coords15 { c: [0.0; 15] }
    }

    /// Unit vector along generator `k` (zero-based).
    pub fn unit(k: usize) -> Self {
        assert!(k < 15, "generator index out of range");
        let mut c = [0.0; 15];
        c[k] = 1.0;
        Coords15 { c }
    }

    pub fn as_array(&self) -> &[f64; 15] {
        &self.c
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        for k in 0..15 {
            acc += self.c[k] * other.c[k];
        }
        acc
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x *= factor;
        }
        Coords15 { c }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.c;
        for k in 0..15 {
            c[k] += other.c[k];
        }
        Coords15 { c }
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..15 {
            let d = (self.c[k] - other.c[k]).abs();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.c.iter().copied()
    }
}

impl Index<usize> for Coords15 {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.c[k]
    }
}

/// The fifteen generators, built once and shared by reference.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    l: [Matrix4; 15],
}

/// Embeds a 2x2 block b as diag(b, sign * b).
fn block_pair(b: [[Complex64; 2]; 2], sign: f64) -> Matrix4 {
    let mut out = Matrix4::zero();
    for i in 0..2 {
        for j in 0..2 {
            out.set(i, j, b[i][j]);
            out.set(2 + i, 2 + j, b[i][j] * sign);
        }
    }
    out
}

impl GeneratorSet {
    /// Builds L_1..L_15.
    ///
    /// The first seven are explicit: three diagonal sign patterns and the
    /// Pauli x/y blocks repeated with signs (+,+) and (+,-). The remaining
    /// eight are conjugations of L_4..L_7 by the permutations swapping basis
    /// states 2<->3 and 2<->4 (one-based). All entries are exactly
    /// 0, +-1 or +-i, so the algebraic identities below hold without
    /// rounding.
    pub fn new() -> Self {
        let i = Complex64::new(0.0, 1.0);
        let tau_x = [[C_ZERO, C_ONE], [C_ONE, C_ZERO]];
        let tau_y = [[C_ZERO, -i], [i, C_ZERO]];

        let mut l = [Matrix4::zero(); 15];
        l[0] = Matrix4::diagonal([1.0, 1.0, -1.0, -1.0]);
        l[1] = Matrix4::diagonal([1.0, -1.0, 1.0, -1.0]);
        l[2] = Matrix4::diagonal([1.0, -1.0, -1.0, 1.0]);
        l[3] = block_pair(tau_x, 1.0);
        l[4] = block_pair(tau_y, 1.0);
        l[5] = block_pair(tau_x, -1.0);
        l[6] = block_pair(tau_y, -1.0);
        for k in 0..4 {
            l[7 + k] = l[3 + k].swap_rows_cols(1, 2);
            l[11 + k] = l[3 + k].swap_rows_cols(1, 3);
        }
        GeneratorSet { l }
    }

    pub fn get(&self, k: usize) -> &Matrix4 {
        &self.l[k]
    }

    pub fn all(&self) -> &[Matrix4; 15] {
        &self.l
    }
}

impl Default for GeneratorSet {
    fn default() -> Self {
        Self::new()
    }
}

impl Index<usize> for GeneratorSet {
    type Output = Matrix4;
    fn index(&self, k: usize) -> &Matrix4 {
        &self.l[k]
    }
}

/// A = sum_k e_k L_k (traceless Hermitian by construction).
pub fn operator_from_coords(e: &Coords15, gens: &GeneratorSet) -> Matrix4 {
    let mut out = Matrix4::zero();
    for k in 0..15 {
        let w = e[k];
        if w != 0.0 {
            out = out + gens[k] * w;
        }
    }
    out
}

/// Inverse expansion: returns (tr A / 4, e_k = tr(A L_k) / 4).
///
/// The caller is expected to pass a Hermitian matrix; only the real parts of
/// the traces are kept.
pub fn coords_from_operator(a: &Matrix4, gens: &GeneratorSet) -> (f64, Coords15) {
    debug_assert!(a.hermiticity_defect() <= HERMITICITY_TOL);
    let unit_part = a.trace().re * 0.25;
    let mut c = [0.0; 15];
    for k in 0..15 {
        c[k] = trace_product(a, &gens[k]).re * 0.25;
    }
    (unit_part, Coords15::from_array(c))
}

pub fn anticommutator(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    *a * *b + *b * *a
}

/// Eigendecomposition of a Hermitian matrix: A = V diag(lambda) V^dag with
/// eigenvalues ascending and V unitary (columns are eigenvectors).
#[derive(Debug, Clone, Copy)]
pub struct Eigh {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: Matrix4,
}

const JACOBI_TARGET: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 40;

/// Cyclic complex Jacobi iteration.
///
/// Validates hermiticity (tolerance `HERMITICITY_TOL`), symmetrizes rounding
/// noise via `hermitian_part`, then applies unitary plane rotations until the
/// off-diagonal Frobenius norm drops below 1e-14 relative to the matrix
/// scale.
pub fn eigh(a: &Matrix4) -> Result<Eigh> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = a.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let mut b = a.hermitian_part();
    let mut v = Matrix4::identity();
    let tol = JACOBI_TARGET * b.frobenius_norm().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if b.off_diagonal_frobenius() <= tol {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let g = b.get(p, q);
                let gabs = modulus(g);
                if gabs <= tol / 16.0 {
                    continue;
                }
                // Rotation angle solving tan^2 + 2 theta tan - 1 = 0; the
                // smaller root keeps the rotation well-conditioned.
                let alpha = b.get(p, p).re;
                let beta = b.get(q, q).re;
                let theta = (beta - alpha) / (2.0 * gabs);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                let phase = g / gabs;

                let mut r = Matrix4::identity();
                r.set(p, p, Complex64::new(c, 0.0));
                r.set(q, q, Complex64::new(c, 0.0));
                r.set(p, q, phase * s);
                r.set(q, p, -phase.conj() * s);

                b = r.adjoint() * b * r;
                v = v * r;
            }
        }
    }

    let off = b.off_diagonal_frobenius();
    if off > tol {
        return Err(Error::EighNoConvergence { off_diagonal: off });
    }

    let raw = [b.get(0, 0).re, b.get(1, 1).re, b.get(2, 2).re, b.get(3, 3).re];
    let mut order = [0usize, 1, 2, 3];
    order.sort_unstable_by(|&i, &j| raw[i].partial_cmp(&raw[j]).expect("finite eigenvalues"));

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = Matrix4::zero();
    for (col, &src) in order.iter().enumerate() {
        eigenvalues[col] = raw[src];
        for row in 0..4 {
            eigenvectors.set(row, col, v.get(row, src));
        }
    }
    Ok(Eigh { eigenvalues, eigenvectors })
}
