//! The `BDC1` file format.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "BDC1"
//! 4       1     version (1)
//! 5       4     width, u32 LE
//! 9       4     height, u32 LE
//! 13      1     channels (1 or 3)
//! 14      1     quality (1..=100)
//! 15      ...   per channel, per block in row-major order:
//!                 u16 LE symbol count, then that many i16 LE symbols
//! ```
//!
//! A file is exactly `15 + Σ (2 + 2 · symbols)` bytes long.

use crate::block::BLOCK_LEN;
use crate::codec::{block_count, CompressedImage};
use crate::error::{Error, Result};
use crate::quantization::Quality;
use crate::reorder::RleStream;

pub const MAGIC: [u8; 4] = *b"BDC1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 15;

/// Fixed-size file header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContainerHeader {
    pub width: u32,
    pub height: u32,
    pub channels: u8,
    pub quality: Quality,
}

impl ContainerHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5..9].copy_from_slice(&self.width.to_le_bytes());
        out[9..13].copy_from_slice(&self.height.to_le_bytes());
        out[13] = self.channels;
        out[14] = self.quality.get();
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        let magic: [u8; 4] = r.take(4)?.try_into().unwrap();
        if magic != MAGIC {
            return Err(Error::BadMagic { found: magic });
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(Error::UnsupportedVersion { version, offset: 4 });
        }
        let width = r.u32()?;
        if width == 0 {
            return Err(Error::InvalidHeader {
                field: "width",
                value: 0,
                offset: 5,
            });
        }
        let height = r.u32()?;
        if height == 0 {
            return Err(Error::InvalidHeader {
                field: "height",
                value: 0,
                offset: 9,
            });
        }
        let channels = r.u8()?;
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidHeader {
                field: "channels",
                value: channels.into(),
                offset: 13,
            });
        }
        let q = r.u8()?;
        let quality = Quality::new(q.into()).map_err(|_| Error::InvalidHeader {
            field: "quality",
            value: q.into(),
            offset: 14,
        })?;
        Ok(ContainerHeader {
            width,
            height,
            channels,
            quality,
        })
    }

    pub fn blocks_per_channel(&self) -> u64 {
        block_count(self.width, self.height)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let rest = self.bytes.len() - self.pos;
        if rest < n {
            return Err(Error::Truncated {
                offset: self.pos,
                needed: n - rest,
            });
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

/// Exact size of the serialized form.
pub fn serialized_len(compressed: &CompressedImage) -> usize {
    HEADER_LEN
        + compressed
            .channels()
            .iter()
            .flatten()
            .map(|s| 2 + 2 * s.len())
            .sum::<usize>()
}

pub fn serialize(compressed: &CompressedImage) -> Result<Vec<u8>> {
    let header = ContainerHeader {
        width: compressed.width(),
        height: compressed.height(),
        channels: compressed.channel_count() as u8,
        quality: compressed.quality(),
    };
    let mut out = Vec::with_capacity(serialized_len(compressed));
    out.extend_from_slice(&header.to_bytes());
    for (block, stream) in compressed.channels().iter().flatten().enumerate() {
        let count = u16::try_from(stream.len()).map_err(|_| Error::SymbolOutOfRange {
            block,
            value: stream.len().try_into().unwrap_or(i32::MAX),
        })?;
        out.extend_from_slice(&count.to_le_bytes());
        for &sym in stream.symbols() {
            let sym =
                i16::try_from(sym).map_err(|_| Error::SymbolOutOfRange { block, value: sym })?;
            out.extend_from_slice(&sym.to_le_bytes());
        }
    }
    Ok(out)
}

/// Parse and validate a `BDC1` file, including that every block stream
/// expands to exactly 64 values.
pub fn deserialize(bytes: &[u8]) -> Result<CompressedImage> {
    let header = ContainerHeader::parse(bytes)?;
    let mut r = Reader {
        bytes,
        pos: HEADER_LEN,
    };
    let per_channel = header.blocks_per_channel();
    // Every block needs at least 2 bytes, so a short file is rejected before
    // anything proportional to the claimed dimensions is allocated.
    let total_blocks = per_channel * u64::from(header.channels);
    let remaining = (bytes.len() - HEADER_LEN) as u64;
    if remaining < total_blocks * 2 {
        return Err(Error::Truncated {
            offset: bytes.len(),
            needed: usize::try_from(total_blocks * 2 - remaining).unwrap_or(usize::MAX),
        });
    }
    let per_channel = per_channel as usize;
    let mut channels = Vec::with_capacity(header.channels.into());
    for c in 0..usize::from(header.channels) {
        let mut streams = Vec::with_capacity(per_channel);
        for i in 0..per_channel {
            let block = c * per_channel + i;
            let start = r.pos;
            let count = usize::from(r.u16()?);
            let raw = r.take(2 * count)?;
            let symbols: Vec<i32> = raw
                .chunks_exact(2)
                .map(|p| i32::from(i16::from_le_bytes([p[0], p[1]])))
                .collect();
            let stream = RleStream(symbols);
            match stream.decoded_len() {
                Ok(BLOCK_LEN) => {}
                Ok(n) => {
                    return Err(Error::MalformedBlock {
                        block,
                        offset: start,
                        reason: format!("stream decodes to {n} values, expected 64"),
                    })
                }
                Err(e) => {
                    let reason = match e {
                        Error::CorruptStream { reason, .. } => reason,
                        other => other.to_string(),
                    };
                    return Err(Error::MalformedBlock {
                        block,
                        offset: start,
                        reason,
                    });
                }
            }
            streams.push(stream);
        }
        channels.push(streams);
    }
    if r.pos != bytes.len() {
        return Err(Error::TrailingBytes {
            offset: r.pos,
            count: bytes.len() - r.pos,
        });
    }
    CompressedImage::new(header.width, header.height, header.quality, channels)
}
