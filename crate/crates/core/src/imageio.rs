//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.

use crate::codec::Image;
use crate::error::{Error, Result};

/// Netpbm variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnmFormat {
    /// `P5`, one channel.
    Graymap,
    /// `P6`, three interleaved channels.
    Pixmap,
}

impl PnmFormat {
    pub fn magic(self) -> &'static [u8; 2] {
        match self {
            PnmFormat::Graymap => b"P5",
            PnmFormat::Pixmap => b"P6",
        }
    }

    pub fn channels(self) -> usize {
        match self {
            PnmFormat::Graymap => 1,
            PnmFormat::Pixmap => 3,
        }
    }
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn bad(&self, reason: impl Into<String>) -> Error {
        Error::BadImageHeader {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    // Whitespace and `#` comments running to end of line.
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|&c| c != b'\n' && c != b'\r')
                {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.bad(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::BadImageHeader {
                offset: start,
                reason: format!("{what} out of range"),
            })
    }
}

/// Parse a binary PGM or PPM file.
pub fn read_image(bytes: &[u8]) -> Result<Image> {
    let format = match bytes.get(..2) {
        Some(b"P5") => PnmFormat::Graymap,
        Some(b"P6") => PnmFormat::Pixmap,
        _ => {
            return Err(Error::BadImageHeader {
                offset: 0,
                reason: "expected P5 or P6 magic".into(),
            })
        }
    };
    let mut r = HeaderReader { bytes, pos: 2 };
    if !r
        .bytes
        .get(r.pos)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(r.bad("expected whitespace after magic"));
    }
    let width = r.number("width")?;
    let height = r.number("height")?;
    let maxval = r.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(r.bad(format!("image dimensions {width}x{height}")));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(r.bad(format!("maxval {maxval} outside 1..=65535")));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    if !r.bytes.get(r.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(r.bad("expected whitespace after maxval"));
    }
    let data = &bytes[r.pos + 1..];
    let expected = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(format.channels()))
        .ok_or_else(|| r.bad("image too large"))?;
    if data.len() < expected {
        return Err(Error::TruncatedPixels {
            expected,
            found: data.len(),
        });
    }
    let data = &data[..expected];
    let (w, h) = (width as usize, height as usize);
    match format {
        PnmFormat::Graymap => Image::gray(w, h, data.to_vec()),
        PnmFormat::Pixmap => Image::from_interleaved_rgb(w, h, data),
    }
}

/// Canonical encoding: `P5\n<w> <h>\n255\n` (or `P6`) followed by the
/// raster, RGB interleaved for three-channel images.
pub fn write_image(image: &Image) -> Vec<u8> {
    let format = if image.channels() == 1 {
        PnmFormat::Graymap
    } else {
        PnmFormat::Pixmap
    };
    let header = format!(
        "{}\n{} {}\n255\n",
        std::str::from_utf8(format.magic()).unwrap(),
        image.width(),
        image.height()
    );
    let mut out = Vec::with_capacity(header.len() + image.raw_len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&image.interleaved());
    out
}
