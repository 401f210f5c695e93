//! Whole-image encode and decode.
//!
//! Each channel is tiled independently and every block goes through
//! level shift → DCT → quantize → zigzag → RLE. Blocks are independent, so
//! both directions can run block-parallel; results are always collected in
//! row-major block order, so the output does not depend on the schedule.

use rayon::prelude::*;

use crate::block::{
    level_shift_forward, level_shift_inverse, tile_plane, untile_plane, ImagePlane, PixelBlock,
    TilingDescriptor,
};
use crate::container;
use crate::error::{Error, Result};
use crate::metrics::{self, CompressionReport};
use crate::quantization::{dequantize, quantize, Quality, QuantMatrix};
use crate::reorder::{inverse_zigzag, rle_decode_block, rle_encode, zigzag, RleStream};
use crate::transform::{dct_forward, dct_inverse};

/// Grayscale or RGB image stored as independent planes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    planes: Vec<ImagePlane>,
}

impl Image {
    /// Build an image from one (gray) or three (RGB) planes of equal size.
    pub fn from_planes(planes: Vec<ImagePlane>) -> Result<Self> {
        if planes.len() != 1 && planes.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "images have 1 or 3 channels, got {}",
                planes.len()
            )));
        }
        let (width, height) = (planes[0].width(), planes[0].height());
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "image dimensions {width}x{height}"
            )));
        }
        if planes
            .iter()
            .any(|p| p.width() != width || p.height() != height)
        {
            return Err(Error::DimensionMismatch(
                "channel planes differ in size".into(),
            ));
        }
        Ok(Image {
            width,
            height,
            planes,
        })
    }

    pub fn gray(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        Image::from_planes(vec![ImagePlane::new(width, height, samples)?])
    }

    /// Build a three-channel image from interleaved RGB samples.
    pub fn from_interleaved_rgb(width: usize, height: usize, rgb: &[u8]) -> Result<Self> {
        if rgb.len() != width * height * 3 {
            return Err(Error::InvalidInput(format!(
                "{width}x{height} RGB image needs {} bytes, got {}",
                width * height * 3,
                rgb.len()
            )));
        }
        let planes = (0..3)
            .map(|c| {
                ImagePlane::new(
                    width,
                    height,
                    rgb.iter().skip(c).step_by(3).copied().collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Image::from_planes(planes)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.planes.len()
    }

    pub fn planes(&self) -> &[ImagePlane] {
        &self.planes
    }

    /// Samples of all channels, interleaved per pixel.
    pub fn interleaved(&self) -> Vec<u8> {
        if self.planes.len() == 1 {
            return self.planes[0].samples().to_vec();
        }
        let mut out = Vec::with_capacity(self.width * self.height * self.planes.len());
        for i in 0..self.width * self.height {
            out.extend(self.planes.iter().map(|p| p.samples()[i]));
        }
        out
    }

    /// Uncompressed payload size in bytes.
    pub fn raw_len(&self) -> usize {
        self.width * self.height * self.planes.len()
    }
}

/// Encoded image: header fields plus one RLE stream per block, per channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedImage {
    width: u32,
    height: u32,
    quality: Quality,
    channels: Vec<Vec<RleStream>>,
}

impl CompressedImage {
    /// Checks the channel count and the per-channel block count. Stream
    /// contents are validated when decoding.
    pub fn new(
        width: u32,
        height: u32,
        quality: Quality,
        channels: Vec<Vec<RleStream>>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "image dimensions {width}x{height}"
            )));
        }
        if channels.len() != 1 && channels.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "images have 1 or 3 channels, got {}",
                channels.len()
            )));
        }
        let expected = block_count(width, height);
        if let Some(bad) = channels.iter().find(|c| c.len() as u64 != expected) {
            return Err(Error::DimensionMismatch(format!(
                "{width}x{height} needs {expected} block streams per channel, got {}",
                bad.len()
            )));
        }
        Ok(CompressedImage {
            width,
            height,
            quality,
            channels,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn quality(&self) -> Quality {
        self.quality
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn channels(&self) -> &[Vec<RleStream>] {
        &self.channels
    }

    pub fn blocks_per_channel(&self) -> usize {
        block_count(self.width, self.height) as usize
    }
}

/// Number of 8×8 blocks covering a `width`×`height` plane.
pub fn block_count(width: u32, height: u32) -> u64 {
    u64::from(width).div_ceil(8) * u64::from(height).div_ceil(8)
}

/// How blocks are scheduled. Output is identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    Serial,
    #[default]
    Parallel,
}

pub fn encode_block(block: &PixelBlock, q: &QuantMatrix) -> Result<RleStream> {
    let levels = quantize(&dct_forward(&level_shift_forward(block)), q)?;
    Ok(rle_encode(&zigzag(&levels).to_symbols()))
}

pub fn decode_block(stream: &RleStream, q: &QuantMatrix) -> Result<PixelBlock> {
    let levels = inverse_zigzag(&rle_decode_block(stream)?);
    Ok(level_shift_inverse(&dct_inverse(&dequantize(&levels, q))))
}

fn map_blocks<T, U, F>(items: &[T], schedule: Schedule, f: F) -> Vec<Result<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    match schedule {
        Schedule::Serial => items.iter().map(f).collect(),
        Schedule::Parallel => items.par_iter().map(f).collect(),
    }
}

pub fn encode(image: &Image, quality: Quality) -> Result<CompressedImage> {
    encode_with(image, quality, Schedule::default())
}

pub fn encode_with(image: &Image, quality: Quality, schedule: Schedule) -> Result<CompressedImage> {
    let q = QuantMatrix::for_quality(quality);
    let width = u32::try_from(image.width)
        .map_err(|_| Error::InvalidInput(format!("width {} exceeds 32 bits", image.width)))?;
    let height = u32::try_from(image.height)
        .map_err(|_| Error::InvalidInput(format!("height {} exceeds 32 bits", image.height)))?;
    let mut channels = Vec::with_capacity(image.planes.len());
    for plane in &image.planes {
        let (blocks, _) = tile_plane(plane)?;
        let streams = map_blocks(&blocks, schedule, |b| encode_block(b, &q))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        channels.push(streams);
    }
    CompressedImage::new(width, height, quality, channels)
}

pub fn decode(compressed: &CompressedImage) -> Result<Image> {
    decode_with(compressed, Schedule::default())
}

/// Fails on the first malformed block stream in channel-then-block order,
/// reporting its global block index.
pub fn decode_with(compressed: &CompressedImage, schedule: Schedule) -> Result<Image> {
    let q = QuantMatrix::for_quality(compressed.quality);
    let desc = TilingDescriptor {
        width: compressed.width as usize,
        height: compressed.height as usize,
    };
    let per_channel = desc.block_count();
    let mut planes = Vec::with_capacity(compressed.channels.len());
    for (c, streams) in compressed.channels.iter().enumerate() {
        let blocks = map_blocks(streams, schedule, |s| decode_block(s, &q))
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.map_err(|e| tag_block(e, c * per_channel + i)))
            .collect::<Result<Vec<_>>>()?;
        planes.push(untile_plane(&blocks, desc)?);
    }
    Image::from_planes(planes)
}

fn tag_block(err: Error, index: usize) -> Error {
    match err {
        Error::CorruptStream {
            block: None,
            reason,
        } => Error::CorruptStream {
            block: Some(index),
            reason,
        },
        other => other,
    }
}

/// Encode, serialize, decode and measure one image at one quality.
pub fn roundtrip_report(image: &Image, quality: Quality) -> Result<CompressionReport> {
    let compressed = encode(image, quality)?;
    let bytes = container::serialize(&compressed)?;
    let restored = decode(&compressed)?;
    let (mse, psnr) = metrics::mse_psnr(image, &restored)?;
    CompressionReport::new(image.raw_len() as u64, bytes.len() as u64, mse, psnr)
}
