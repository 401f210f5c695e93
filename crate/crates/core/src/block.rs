//! Pixel tiles, plane tiling and the ±128 level shift.

use crate::error::{Error, Result};

/// Edge length of a transform block.
pub const BLOCK_SIZE: usize = 8;
/// Samples per block.
pub const BLOCK_LEN: usize = BLOCK_SIZE * BLOCK_SIZE;

/// An 8×8 tile of 8-bit samples, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PixelBlock(pub [u8; BLOCK_LEN]);

impl PixelBlock {
    pub fn splat(value: u8) -> Self {
        PixelBlock([value; BLOCK_LEN])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.0[row * BLOCK_SIZE + col]
    }
}

/// An 8×8 tile of signed real samples centered on zero.
///
/// Produced by [`level_shift_forward`] (values in `[-128, 127]`) and by the
/// inverse DCT, where values may fall outside that range before clamping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedBlock(pub [f64; BLOCK_LEN]);

impl ShiftedBlock {
    pub fn zero() -> Self {
        ShiftedBlock([0.0; BLOCK_LEN])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row * BLOCK_SIZE + col]
    }
}

/// Single channel of 8-bit samples, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    samples: Vec<u8>,
}

impl ImagePlane {
    pub fn new(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        let expected = width.checked_mul(height).ok_or_else(|| {
            Error::InvalidInput(format!("plane dimensions {width}x{height} overflow"))
        })?;
        if samples.len() != expected {
            return Err(Error::InvalidInput(format!(
                "plane {width}x{height} needs {expected} samples, got {}",
                samples.len()
            )));
        }
        Ok(ImagePlane {
            width,
            height,
            samples,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        ImagePlane {
            width,
            height,
            samples: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.samples[y * self.width + x]
    }
}

/// Original plane dimensions, kept alongside a tile sequence so the padded
/// border can be cropped away again.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilingDescriptor {
    pub width: usize,
    pub height: usize,
}

impl TilingDescriptor {
    pub fn blocks_across(&self) -> usize {
        self.width.div_ceil(BLOCK_SIZE)
    }

    pub fn blocks_down(&self) -> usize {
        self.height.div_ceil(BLOCK_SIZE)
    }

    pub fn block_count(&self) -> usize {
        self.blocks_across() * self.blocks_down()
    }
}

/// Split a plane into 8×8 blocks in row-major block order.
///
/// Partial blocks on the right and bottom edges are filled by repeating the
/// last column and row of the plane.
pub fn tile_plane(plane: &ImagePlane) -> Result<(Vec<PixelBlock>, TilingDescriptor)> {
    if plane.width == 0 || plane.height == 0 {
        return Err(Error::InvalidInput(format!(
            "cannot tile a {}x{} plane",
            plane.width, plane.height
        )));
    }
    let desc = TilingDescriptor {
        width: plane.width,
        height: plane.height,
    };
    let mut blocks = Vec::with_capacity(desc.block_count());
    for by in 0..desc.blocks_down() {
        for bx in 0..desc.blocks_across() {
            let mut block = [0u8; BLOCK_LEN];
            for r in 0..BLOCK_SIZE {
                let y = (by * BLOCK_SIZE + r).min(plane.height - 1);
                let row = &plane.samples[y * plane.width..(y + 1) * plane.width];
                for c in 0..BLOCK_SIZE {
                    let x = (bx * BLOCK_SIZE + c).min(plane.width - 1);
                    block[r * BLOCK_SIZE + c] = row[x];
                }
            }
            blocks.push(PixelBlock(block));
        }
    }
    Ok((blocks, desc))
}

/// Reassemble blocks produced by [`tile_plane`] and crop the padding.
pub fn untile_plane(blocks: &[PixelBlock], desc: TilingDescriptor) -> Result<ImagePlane> {
    if desc.width == 0 || desc.height == 0 {
        return Err(Error::InvalidInput(format!(
            "cannot untile into a {}x{} plane",
            desc.width, desc.height
        )));
    }
    if blocks.len() != desc.block_count() {
        return Err(Error::corrupt(
            None,
            format!(
                "{}x{} plane needs {} blocks, got {}",
                desc.width,
                desc.height,
                desc.block_count(),
                blocks.len()
            ),
        ));
    }
    let across = desc.blocks_across();
    let mut samples = vec![0u8; desc.width * desc.height];
    for (y, row) in samples.chunks_exact_mut(desc.width).enumerate() {
        let (by, r) = (y / BLOCK_SIZE, y % BLOCK_SIZE);
        for (x, px) in row.iter_mut().enumerate() {
            let (bx, c) = (x / BLOCK_SIZE, x % BLOCK_SIZE);
            *px = blocks[by * across + bx].get(r, c);
        }
    }
    ImagePlane::new(desc.width, desc.height, samples)
}

/// Center samples on zero by subtracting 128.
pub fn level_shift_forward(block: &PixelBlock) -> ShiftedBlock {
    let mut out = [0.0; BLOCK_LEN];
    for (o, &p) in out.iter_mut().zip(block.0.iter()) {
        *o = f64::from(p) - 128.0;
    }
    ShiftedBlock(out)
}

/// Round to the nearest integer (ties away from zero), add 128 and clamp to
/// `[0, 255]`.
pub fn level_shift_inverse(block: &ShiftedBlock) -> PixelBlock {
    let mut out = [0u8; BLOCK_LEN];
    for (o, &s) in out.iter_mut().zip(block.0.iter()) {
        *o = (s.round() + 128.0).clamp(0.0, 255.0) as u8;
    }
    PixelBlock(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tiles_1024x768_into_12288_blocks() {
        let plane = ImagePlane::filled(1024, 768, 3);
        let (blocks, desc) = tile_plane(&plane).unwrap();
        assert_eq!(blocks.len(), 128 * 96);
        assert_eq!(desc.block_count(), 12288);
        let back = untile_plane(&blocks, desc).unwrap();
        assert_eq!(back, plane);
    }

    #[test]
    fn single_block_plane_is_identity() {
        let samples: Vec<u8> = (0..64).collect();
        let plane = ImagePlane::new(8, 8, samples.clone()).unwrap();
        let (blocks, desc) = tile_plane(&plane).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(&blocks[0].0[..], &samples[..]);
        assert_eq!(untile_plane(&blocks, desc).unwrap(), plane);
    }

    #[test]
    fn edge_replication_pads_right_border() {
        let plane = ImagePlane::filled(9, 8, 77);
        let (blocks, _) = tile_plane(&plane).unwrap();
        assert_eq!(blocks.len(), 2);
        for r in 0..8 {
            for c in 1..8 {
                assert_eq!(blocks[1].get(r, c), 77);
            }
        }
    }

    #[test]
    fn edge_replication_repeats_last_column_and_row() {
        // 10x9 gradient: value depends on position so replication is observable
        let samples: Vec<u8> = (0..90).map(|i| i as u8).collect();
        let plane = ImagePlane::new(10, 9, samples).unwrap();
        let (blocks, desc) = tile_plane(&plane).unwrap();
        assert_eq!(desc.block_count(), 4);
        // block (1, 0): columns 8, 9 then replicated column 9
        for r in 0..8 {
            assert_eq!(blocks[1].get(r, 0), plane.get(8, r));
            for c in 1..8 {
                assert_eq!(blocks[1].get(r, c), plane.get(9, r));
            }
        }
        // block (0, 1): row 8 then replicated row 8
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(blocks[2].get(r, c), plane.get(c, 8));
            }
        }
    }

    #[test]
    fn zero_dimension_plane_is_rejected() {
        let plane = ImagePlane::new(0, 5, vec![]).unwrap();
        assert!(matches!(tile_plane(&plane), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn untile_rejects_wrong_block_count() {
        let desc = TilingDescriptor {
            width: 16,
            height: 8,
        };
        let err = untile_plane(&[PixelBlock::splat(0)], desc).unwrap_err();
        assert!(matches!(err, Error::CorruptStream { .. }));
    }

    #[test]
    fn sample_count_must_match_dimensions() {
        assert!(ImagePlane::new(3, 3, vec![0; 8]).is_err());
    }

    #[test]
    fn level_shift_examples() {
        assert_eq!(
            level_shift_forward(&PixelBlock::splat(128)),
            ShiftedBlock::zero()
        );
        assert!(level_shift_forward(&PixelBlock::splat(140))
            .0
            .iter()
            .all(|&v| v == 12.0));
        let mut b = PixelBlock::splat(0);
        b.0[1] = 255;
        let s = level_shift_forward(&b);
        assert_eq!(s.0[0], -128.0);
        assert_eq!(s.0[1], 127.0);
    }

    #[test]
    fn inverse_shift_rounds_and_clamps() {
        assert_eq!(
            level_shift_inverse(&ShiftedBlock::zero()),
            PixelBlock::splat(128)
        );
        let mut s = ShiftedBlock::zero();
        s.0[0] = 130.2;
        s.0[1] = -130.0;
        s.0[2] = 2.5;
        s.0[3] = -2.5;
        s.0[4] = 0.49;
        let p = level_shift_inverse(&s);
        assert_eq!(p.0[0], 255);
        assert_eq!(p.0[1], 0);
        assert_eq!(p.0[2], 131);
        assert_eq!(p.0[3], 125);
        assert_eq!(p.0[4], 128);
    }

    fn arb_plane() -> impl Strategy<Value = ImagePlane> {
        (1usize..40, 1usize..40).prop_flat_map(|(w, h)| {
            proptest::collection::vec(any::<u8>(), w * h)
                .prop_map(move |s| ImagePlane::new(w, h, s).unwrap())
        })
    }

    proptest! {
        #[test]
        fn shift_is_exactly_invertible(samples in proptest::array::uniform32(any::<u8>())) {
            let mut block = [0u8; BLOCK_LEN];
            block[..32].copy_from_slice(&samples);
            block[32..].copy_from_slice(&samples);
            let b = PixelBlock(block);
            prop_assert_eq!(level_shift_inverse(&level_shift_forward(&b)), b);
        }

        #[test]
        fn tile_untile_round_trip(plane in arb_plane()) {
            let (blocks, desc) = tile_plane(&plane).unwrap();
            prop_assert_eq!(blocks.len(), plane.width().div_ceil(8) * plane.height().div_ceil(8));
            prop_assert_eq!(untile_plane(&blocks, desc).unwrap(), plane);
        }

        #[test]
        fn padding_preserves_original_region(plane in arb_plane()) {
            let (blocks, desc) = tile_plane(&plane).unwrap();
            for y in 0..plane.height() {
                for x in 0..plane.width() {
                    let b = &blocks[(y / 8) * desc.blocks_across() + x / 8];
                    prop_assert_eq!(b.get(y % 8, x % 8), plane.get(x, y));
                }
            }
        }
    }
}
