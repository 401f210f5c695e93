//! Compression ratio, relative redundancy, MSE and PSNR.

use crate::codec::Image;
use crate::error::{Error, Result};

/// Peak sample value for 8-bit data.
pub const PEAK: f64 = 255.0;

/// Sizes and quality figures for one encode/decode cycle.
///
/// `psnr` is `f64::INFINITY` when the reconstruction is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionReport {
    /// Original size in bytes (raw samples).
    pub n1: u64,
    /// Compressed size in bytes (`BDC1` file).
    pub n2: u64,
    pub cr: f64,
    pub rd: f64,
    pub mse: f64,
    pub psnr: f64,
}

impl CompressionReport {
    pub fn new(n1: u64, n2: u64, mse: f64, psnr: f64) -> Result<Self> {
        let cr = compression_ratio(n1, n2)?;
        Ok(CompressionReport {
            n1,
            n2,
            cr,
            rd: redundancy(cr),
            mse,
            psnr,
        })
    }

    /// Size reduction in percent, `100 · (1 - n2/n1)`.
    pub fn reduction_percent(&self) -> f64 {
        100.0 * self.rd
    }
}

/// `n1 / n2`.
pub fn compression_ratio(n1: u64, n2: u64) -> Result<f64> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidInput(format!(
            "compression ratio of {n1} over {n2} bytes"
        )));
    }
    Ok(n1 as f64 / n2 as f64)
}

/// Relative data redundancy, `1 - 1/cr`.
pub fn redundancy(cr: f64) -> f64 {
    1.0 - 1.0 / cr
}

/// PSNR in dB for a given MSE; infinite when `mse` is zero.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

/// Mean squared error over every sample of every channel, and the matching
/// PSNR.
pub fn mse_psnr(original: &Image, reconstructed: &Image) -> Result<(f64, f64)> {
    if (original.width(), original.height(), original.channels())
        != (
            reconstructed.width(),
            reconstructed.height(),
            reconstructed.channels(),
        )
    {
        return Err(Error::DimensionMismatch(format!(
            "{}x{}x{} vs {}x{}x{}",
            original.width(),
            original.height(),
            original.channels(),
            reconstructed.width(),
            reconstructed.height(),
            reconstructed.channels()
        )));
    }
    let mut sum = 0u64;
    for (a, b) in original.planes().iter().zip(reconstructed.planes()) {
        for (&x, &y) in a.samples().iter().zip(b.samples()) {
            let d = i64::from(x) - i64::from(y);
            sum += (d * d) as u64;
        }
    }
    let mse = sum as f64 / original.raw_len() as f64;
    Ok((mse, psnr_from_mse(mse)))
}
