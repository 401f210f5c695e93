//! Quality-scaled quantization tables, quantization and dequantization.

use std::fmt;

use crate::block::BLOCK_LEN;
use crate::error::{Error, Result};
use crate::transform::CoeffBlock;

/// Reference luminance table at quality 50, row-major.
#[rustfmt::skip]
pub const Q50: [u16; BLOCK_LEN] = [
    16,  11,  10,  16,  24,  40,  51,  61,
    12,  12,  14,  19,  26,  58,  60,  55,
    14,  13,  16,  24,  40,  57,  69,  56,
    14,  17,  22,  29,  51,  87,  80,  62,
    18,  22,  37,  56,  68, 109, 103,  77,
    24,  35,  55,  64,  81, 104, 113,  92,
    49,  64,  78,  87, 103, 121, 120, 101,
    72,  92,  95,  98, 112, 100, 103,  99,
];

/// Quantization level in `1..=100`; higher keeps more detail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quality(u8);

impl Quality {
    pub const DEFAULT: Quality = Quality(50);

    pub fn new(n: u32) -> Result<Self> {
        if (1..=100).contains(&n) {
            Ok(Quality(n as u8))
        } else {
            Err(Error::InvalidQuality(n))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl Default for Quality {
    fn default() -> Self {
        Quality::DEFAULT
    }
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// 8×8 table of positive integer divisors, tagged with the quality it was
/// derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantMatrix {
    divisors: [u16; BLOCK_LEN],
    quality: Quality,
}

impl QuantMatrix {
    /// Scale [`Q50`] to `quality`:
    ///
    /// * `n >= 50`: `round((100 - n) / 50 · Q50)`
    /// * `n < 50`: `round(50 / n · Q50)`
    ///
    /// Each divisor is clamped to at least 1, so quality 100 yields the
    /// all-ones table.
    pub fn for_quality(quality: Quality) -> Self {
        let n = u32::from(quality.get());
        let mut divisors = [0u16; BLOCK_LEN];
        for (d, &q) in divisors.iter_mut().zip(Q50.iter()) {
            let q = u32::from(q);
            // round-half-up on exact rationals; every term is non-negative
            let scaled = if n >= 50 {
                (2 * (100 - n) * q + 50) / 100
            } else {
                (2 * 50 * q + n) / (2 * n)
            };
            *d = scaled.max(1) as u16;
        }
        QuantMatrix { divisors, quality }
    }

    pub fn quality(&self) -> Quality {
        self.quality
    }

    pub fn divisors(&self) -> &[u16; BLOCK_LEN] {
        &self.divisors
    }

    /// Divisor at zero-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.divisors[row * 8 + col]
    }
}

/// The quality-50 reference table.
pub fn base_q50() -> QuantMatrix {
    QuantMatrix {
        divisors: Q50,
        quality: Quality::DEFAULT,
    }
}

/// Table for quantization level `n`, which must lie in `1..=100`.
pub fn scale_quality(n: u32) -> Result<QuantMatrix> {
    Ok(QuantMatrix::for_quality(Quality::new(n)?))
}

/// 8×8 block of quantized levels, row-major by `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantBlock(pub [i16; BLOCK_LEN]);

impl QuantBlock {
    pub fn zero() -> Self {
        QuantBlock([0; BLOCK_LEN])
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&l| l != 0).count()
    }
}

/// Divide each coefficient by its divisor and round half away from zero.
pub fn quantize(coeffs: &CoeffBlock, q: &QuantMatrix) -> Result<QuantBlock> {
    let mut levels = [0i16; BLOCK_LEN];
    for (i, ((l, &c), &d)) in levels
        .iter_mut()
        .zip(coeffs.0.iter())
        .zip(q.divisors.iter())
        .enumerate()
    {
        if !c.is_finite() {
            return Err(Error::InvalidInput(format!(
                "coefficient {i} is not finite"
            )));
        }
        let level = (c / f64::from(d)).round();
        if level.abs() > f64::from(i16::MAX) {
            return Err(Error::EncodeRange {
                index: i,
                value: level as i64,
            });
        }
        *l = level as i16;
    }
    Ok(QuantBlock(levels))
}

/// Multiply each level by its divisor.
pub fn dequantize(levels: &QuantBlock, q: &QuantMatrix) -> CoeffBlock {
    let mut out = [0.0; BLOCK_LEN];
    for ((o, &l), &d) in out.iter_mut().zip(levels.0.iter()).zip(q.divisors.iter()) {
        *o = f64::from(l) * f64::from(d);
    }
    CoeffBlock(out)
}
