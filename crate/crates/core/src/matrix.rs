//! Dense complex 4x4 matrices.
//!
//! Everything in this crate lives in a fixed four-dimensional Hilbert space,
//! so the matrix type is a plain `[[Complex64; 4]; 4]` with by-value
//! semantics and no dynamic allocation. Norms used for validation are the
//! max entry norm (`max_norm`) and the Frobenius norm.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// |z|, via libm so the crate stays no_std-friendly.
pub(crate) fn modulus(z: Complex64) -> f64 {
    libm::sqrt(z.norm_sqr())
}

#[derive(Debug, Clone, Copy)]
pub struct Matrix4 {
    m: [[Complex64; 4]; 4],
}

impl Matrix4 {
    pub fn zero() -> Self {
        Matrix4 { m: [[C_ZERO; 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.m[i][i] = C_ONE;
        }
        out
    }

    pub fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        Matrix4 { m: rows }
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = Complex64::new(rows[i][j], 0.0);
            }
        }
        out
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.m[i][i] = Complex64::new(d[i], 0.0);
        }
        out
    }

    /// Permutation matrix exchanging basis vectors `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut out = Self::identity();
        out.m[a][a] = C_ZERO;
        out.m[b][b] = C_ZERO;
        out.m[a][b] = C_ONE;
        out.m[b][a] = C_ONE;
        out
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.m[i][j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2] + self.m[3][3]
    }

    pub fn mul_vec(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [C_ZERO; 4];
        for i in 0..4 {
            let mut acc = C_ZERO;
            for j in 0..4 {
                acc += self.m[i][j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Conjugation by the transposition (a b): swaps rows a,b and columns a,b.
    /// Exact for exact entries, so permuted generators stay integer-valued.
    pub fn swap_rows_cols(&self, a: usize, b: usize) -> Self {
        let mut out = *self;
        out.m.swap(a, b);
        for row in out.m.iter_mut() {
            row.swap(a, b);
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// max |a_ij - conj(a_ji)| over all entries; 0 for exactly Hermitian input.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let d = modulus(self.m[i][j] - self.m[j][i].conj());
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// (A + A^dag)/2. The one sanctioned way to absorb Hermitian rounding
    /// noise; exactly Hermitian input passes through bit-identically.
    pub fn hermitian_part(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = (self.m[i][j] + self.m[j][i].conj()) * 0.5;
            }
        }
        out
    }

    /// max |(A^dag A - 1)_ij|.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.adjoint() * *self;
        prod.max_diff(&Self::identity())
    }

    pub fn max_norm(&self) -> f64 {
        let mut worst = 0.0f64;
        for row in &self.m {
            for z in row {
                let d = modulus(*z);
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0f64;
        for row in &self.m {
            for z in row {
                acc += z.norm_sqr();
            }
        }
        libm::sqrt(acc)
    }

    pub fn off_diagonal_frobenius(&self) -> f64 {
        let mut acc = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    acc += self.m[i][j].norm_sqr();
                }
            }
        }
        libm::sqrt(acc)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let d = modulus(self.m[i][j] - other.m[i][j]);
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

/// tr(AB) without forming the product.
pub fn trace_product(a: &Matrix4, b: &Matrix4) -> Complex64 {
    let mut acc = C_ZERO;
    for i in 0..4 {
        for j in 0..4 {
            acc += a.m[i][j] * b.m[j][i];
        }
    }
    acc
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] -= rhs.m[i][j];
            }
        }
        out
    }
}

impl Neg for Matrix4 {
    type Output = Matrix4;
    fn neg(self) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = -out.m[i][j];
            }
        }
        out
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.m[i][k];
                if a == C_ZERO {
                    continue;
                }
                for j in 0..4 {
                    out.m[i][j] += a * rhs.m[k][j];
                }
            }
        }
        out
    }
}

impl Mul<f64> for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: f64) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] *= rhs;
            }
        }
        out
    }
}

impl Mul<Complex64> for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Complex64) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] *= rhs;
            }
        }
        out
    }
}
