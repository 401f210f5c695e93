//! Orthonormal 8×8 DCT-II computed as `C · P · Cᵀ`.
//!
//! Row `u` of the coefficient matrix holds the `u`-th cosine basis vector:
//!
//! ```text
//! C[0][v] = sqrt(1/8)
//! C[u][v] = sqrt(2/8) · cos((2v + 1) · u · π / 16)      u > 0
//! ```
//!
//! With the `sqrt(1/8)` first row the matrix is orthonormal, so the inverse
//! transform is simply `Cᵀ · D · C`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::block::{ShiftedBlock, BLOCK_LEN, BLOCK_SIZE};
use crate::error::{Error, Result};

const N: usize = BLOCK_SIZE;

/// 8×8 block of DCT coefficients, row-major by `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffBlock(pub [f64; BLOCK_LEN]);

impl CoeffBlock {
    pub fn zero() -> Self {
        CoeffBlock([0.0; BLOCK_LEN])
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.0[u * N + v]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

/// The cosine basis matrix `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct DctMatrix {
    entries: [[f64; N]; N],
}

impl DctMatrix {
    /// Shared instance, built on first use.
    pub fn standard() -> &'static DctMatrix {
        static MATRIX: OnceLock<DctMatrix> = OnceLock::new();
        MATRIX.get_or_init(|| build_dct_matrix(N).expect("block size is 8"))
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.entries[u][v]
    }

    pub fn rows(&self) -> &[[f64; N]; N] {
        &self.entries
    }

    /// Largest absolute deviation of `C · Cᵀ` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..N {
            for j in 0..N {
                let dot: f64 = (0..N)
                    .map(|k| self.entries[i][k] * self.entries[j][k])
                    .sum();
                let ident = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - ident).abs());
            }
        }
        worst
    }
}

/// Build the DCT basis matrix for an `n`×`n` block. Only `n = 8` is supported.
pub fn build_dct_matrix(n: usize) -> Result<DctMatrix> {
    if n != N {
        return Err(Error::UnsupportedSize(n));
    }
    let nf = n as f64;
    let mut entries = [[0.0; N]; N];
    for (u, row) in entries.iter_mut().enumerate() {
        for (v, e) in row.iter_mut().enumerate() {
            *e = if u == 0 {
                (1.0 / nf).sqrt()
            } else {
                (2.0 / nf).sqrt() * (((2 * v + 1) * u) as f64 * PI / (2.0 * nf)).cos()
            };
        }
    }
    Ok(DctMatrix { entries })
}

// out = a · b  (when `b_transposed` is false) or a · bᵀ
#[inline]
fn matmul(a: &[f64; BLOCK_LEN], b: &[f64; BLOCK_LEN], b_transposed: bool) -> [f64; BLOCK_LEN] {
    let mut out = [0.0; BLOCK_LEN];
    for i in 0..N {
        for j in 0..N {
            let mut acc = 0.0;
            for k in 0..N {
                let bkj = if b_transposed {
                    b[j * N + k]
                } else {
                    b[k * N + j]
                };
                acc += a[i * N + k] * bkj;
            }
            out[i * N + j] = acc;
        }
    }
    out
}

fn flat(m: &DctMatrix) -> [f64; BLOCK_LEN] {
    let mut out = [0.0; BLOCK_LEN];
    for (u, row) in m.entries.iter().enumerate() {
        out[u * N..(u + 1) * N].copy_from_slice(row);
    }
    out
}

fn transposed(m: &[f64; BLOCK_LEN]) -> [f64; BLOCK_LEN] {
    let mut out = [0.0; BLOCK_LEN];
    for i in 0..N {
        for j in 0..N {
            out[j * N + i] = m[i * N + j];
        }
    }
    out
}

/// Forward 2-D DCT: `C · P · Cᵀ`.
pub fn dct_forward(block: &ShiftedBlock) -> CoeffBlock {
    let c = flat(DctMatrix::standard());
    let cp = matmul(&c, &block.0, false);
    CoeffBlock(matmul(&cp, &c, true))
}

/// Inverse 2-D DCT: `Cᵀ · D · C`. No rounding or level shift is applied.
pub fn dct_inverse(coeffs: &CoeffBlock) -> ShiftedBlock {
    let c = flat(DctMatrix::standard());
    let ct = transposed(&c);
    let ctd = matmul(&ct, &coeffs.0, false);
    ShiftedBlock(matmul(&ctd, &c, false))
}

/// Reference DCT evaluated straight from the double cosine sum, O(N⁴).
///
/// ```text
/// D(u,v) = ¼ · a(u) · a(v) · Σx Σy P(x,y) · cos((2x+1)uπ/16) · cos((2y+1)vπ/16)
/// a(0) = 1/√2, a(k) = 1 otherwise
/// ```
///
/// Shares no code with [`dct_forward`]; used to cross-check it.
pub fn dct_oracle(block: &ShiftedBlock) -> CoeffBlock {
    let weight = |k: usize| {
        if k == 0 {
            std::f64::consts::FRAC_1_SQRT_2
        } else {
            1.0
        }
    };
    let mut out = [0.0; BLOCK_LEN];
    for u in 0..N {
        for v in 0..N {
            let mut sum = 0.0;
            for x in 0..N {
                for y in 0..N {
                    sum += block.0[x * N + y]
                        * (((2 * x + 1) * u) as f64 * PI / 16.0).cos()
                        * (((2 * y + 1) * v) as f64 * PI / 16.0).cos();
                }
            }
            out[u * N + v] = 0.25 * weight(u) * weight(v) * sum;
        }
    }
    CoeffBlock(out)
}
