//! Shared inputs for the pipeline benchmarks.

use bdc_core::Image;

/// Deterministic smooth-plus-texture test image, `width`×`height` gray.
pub fn synthetic_photo(width: usize, height: usize) -> Image {
    let mut samples = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let (fx, fy) = (x as f64 / width as f64, y as f64 / height as f64);
            let smooth = 128.0 + 60.0 * (fx * 6.0).sin() * (fy * 4.0).cos();
            // cheap hash noise
            let h = (x.wrapping_mul(73856093) ^ y.wrapping_mul(19349663)) % 17;
            samples.push((smooth + h as f64 - 8.0).clamp(0.0, 255.0) as u8);
        }
    }
    Image::gray(width, height, samples).expect("dimensions match sample count")
}
