//! Zigzag scan and zero run-length coding.
//!
//! The run-length scheme passes nonzero values through unchanged and
//! replaces every maximal run of `k` zeros with the pair `0, k`:
//!
//! ```text
//! 4 0 0 0 9 0 0 0 0 1 1 0 0 7  ->  4 0 3 9 0 4 1 1 0 2 7
//! ```
//!
//! A literal zero can only appear as the first half of such a pair.

use crate::block::BLOCK_LEN;
use crate::error::{Error, Result};
use crate::quantization::QuantBlock;

/// Row-major block index of the `k`-th coefficient in scan order.
#[rustfmt::skip]
pub const ZIGZAG: [u8; BLOCK_LEN] = [
     0,  1,  8, 16,  9,  2,  3, 10,
    17, 24, 32, 25, 18, 11,  4,  5,
    12, 19, 26, 33, 40, 48, 41, 34,
    27, 20, 13,  6,  7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36,
    29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46,
    53, 60, 61, 54, 47, 55, 62, 63,
];

/// Quantized levels of one block in zigzag order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZigzagVector(pub [i16; BLOCK_LEN]);

impl ZigzagVector {
    pub fn as_slice(&self) -> &[i16] {
        &self.0
    }

    pub fn to_symbols(&self) -> Vec<i32> {
        self.0.iter().map(|&v| i32::from(v)).collect()
    }
}

impl TryFrom<&[i32]> for ZigzagVector {
    type Error = Error;

    /// Fails unless `values` holds exactly 64 entries that fit in 16 bits.
    fn try_from(values: &[i32]) -> Result<Self> {
        if values.len() != BLOCK_LEN {
            return Err(Error::corrupt(
                None,
                format!(
                    "zigzag vector needs {BLOCK_LEN} values, got {}",
                    values.len()
                ),
            ));
        }
        let mut out = [0i16; BLOCK_LEN];
        for (o, &v) in out.iter_mut().zip(values) {
            *o = i16::try_from(v)
                .map_err(|_| Error::corrupt(None, format!("level {v} does not fit in 16 bits")))?;
        }
        Ok(ZigzagVector(out))
    }
}

pub fn zigzag(block: &QuantBlock) -> ZigzagVector {
    let mut out = [0i16; BLOCK_LEN];
    for (o, &idx) in out.iter_mut().zip(ZIGZAG.iter()) {
        *o = block.0[usize::from(idx)];
    }
    ZigzagVector(out)
}

pub fn inverse_zigzag(vec: &ZigzagVector) -> QuantBlock {
    let mut out = [0i16; BLOCK_LEN];
    for (&v, &idx) in vec.0.iter().zip(ZIGZAG.iter()) {
        out[usize::from(idx)] = v;
    }
    QuantBlock(out)
}

/// Run-length coded symbols. Well-formedness is checked when decoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RleStream(pub Vec<i32>);

impl RleStream {
    pub fn symbols(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of the decoded sequence, validating the zero-run pairs
    /// without materializing them.
    pub fn decoded_len(&self) -> Result<usize> {
        let mut total = 0usize;
        let mut i = 0;
        while i < self.0.len() {
            total += run_at(&self.0, i)?;
            i += if self.0[i] == 0 { 2 } else { 1 };
        }
        Ok(total)
    }
}

// Number of values the symbol at `i` expands to.
fn run_at(symbols: &[i32], i: usize) -> Result<usize> {
    if symbols[i] != 0 {
        return Ok(1);
    }
    match symbols.get(i + 1) {
        None => Err(Error::corrupt(
            None,
            format!("zero at symbol {i} has no run count"),
        )),
        Some(&k) if k <= 0 => Err(Error::corrupt(
            None,
            format!("run count {k} at symbol {} is not positive", i + 1),
        )),
        Some(&k) => Ok(k as usize),
    }
}

pub fn rle_encode(values: &[i32]) -> RleStream {
    let mut out = Vec::with_capacity(values.len() + 1);
    let mut run = 0i32;
    for &v in values {
        if v == 0 {
            run += 1;
            continue;
        }
        if run > 0 {
            out.extend([0, run]);
            run = 0;
        }
        out.push(v);
    }
    if run > 0 {
        out.extend([0, run]);
    }
    RleStream(out)
}

pub fn rle_decode(stream: &RleStream) -> Result<Vec<i32>> {
    let symbols = &stream.0;
    let mut out = Vec::with_capacity(stream.decoded_len()?);
    let mut i = 0;
    while i < symbols.len() {
        if symbols[i] == 0 {
            let k = run_at(symbols, i)?;
            out.resize(out.len() + k, 0);
            i += 2;
        } else {
            out.push(symbols[i]);
            i += 1;
        }
    }
    Ok(out)
}

/// Decode one block stream, which must expand to exactly 64 values.
pub fn rle_decode_block(stream: &RleStream) -> Result<ZigzagVector> {
    let len = stream.decoded_len()?;
    if len != BLOCK_LEN {
        return Err(Error::corrupt(
            None,
            format!("block stream decodes to {len} values, expected 64"),
        ));
    }
    ZigzagVector::try_from(rle_decode(stream)?.as_slice())
}
