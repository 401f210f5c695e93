use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the codec can report.
///
/// Container and netpbm parse errors carry the byte offset at which the
/// problem was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quality {0} outside 1..=100")]
    InvalidQuality(u32),

    #[error("unsupported block size {0}, only 8 is supported")]
    UnsupportedSize(usize),

    #[error("quantized level {value} at position {index} does not fit in 16 bits")]
    EncodeRange { index: usize, value: i64 },

    #[error("corrupt stream{}: {reason}", .block.map(|b| format!(" in block {b}")).unwrap_or_default())]
    CorruptStream {
        block: Option<usize>,
        reason: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("symbol {value} in block {block} does not fit in a 16-bit slot")]
    SymbolOutOfRange { block: usize, value: i32 },

    #[error("bad magic at offset 0: expected \"BDC1\", found {found:?}")]
    BadMagic { found: [u8; 4] },

    #[error("unsupported container version {version} at offset {offset}")]
    UnsupportedVersion { version: u8, offset: usize },

    #[error("invalid header field {field} = {value} at offset {offset}")]
    InvalidHeader {
        field: &'static str,
        value: u64,
        offset: usize,
    },

    #[error("truncated file: needed {needed} more bytes at offset {offset}")]
    Truncated { offset: usize, needed: usize },

    #[error("malformed block {block} at offset {offset}: {reason}")]
    MalformedBlock {
        block: usize,
        offset: usize,
        reason: String,
    },

    #[error("{count} trailing bytes after last block at offset {offset}")]
    TrailingBytes { offset: usize, count: usize },

    #[error("bad netpbm header at offset {offset}: {reason}")]
    BadImageHeader { offset: usize, reason: String },

    #[error("unsupported maxval {0}, only 255 is supported")]
    UnsupportedMaxval(u32),

    #[error("truncated pixel data: expected {expected} bytes, found {found}")]
    TruncatedPixels { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn corrupt(block: Option<usize>, reason: impl Into<String>) -> Self {
        Error::CorruptStream {
            block,
            reason: reason.into(),
        }
    }

    /// True for errors caused by malformed encoded or image data, as opposed
    /// to bad arguments.
    pub fn is_corrupt_data(&self) -> bool {
        matches!(
            self,
            Error::CorruptStream { .. }
                | Error::BadMagic { .. }
                | Error::UnsupportedVersion { .. }
                | Error::InvalidHeader { .. }
                | Error::Truncated { .. }
                | Error::MalformedBlock { .. }
                | Error::TrailingBytes { .. }
                | Error::BadImageHeader { .. }
                | Error::UnsupportedMaxval(_)
                | Error::TruncatedPixels { .. }
        )
    }
}
