//! Block DCT image codec.
//!
//! The forward pipeline splits each channel into 8×8 tiles and runs every
//! tile through level shift, an orthonormal 2-D DCT, quality-scaled
//! quantization, zigzag reordering and zero run-length coding. The inverse
//! pipeline undoes each stage and clamps the result back to 8-bit samples.
//! [`container`] defines the `BDC1` file format and [`imageio`] reads and
//! writes binary PGM/PPM.
//!
//! ```
//! use bdc_core::{codec, container, Image, Quality};
//!
//! let image = Image::gray(16, 16, vec![128; 256]).unwrap();
//! let compressed = codec::encode(&image, Quality::new(50).unwrap()).unwrap();
//! let bytes = container::serialize(&compressed).unwrap();
//! let restored = codec::decode(&container::deserialize(&bytes).unwrap()).unwrap();
//! assert_eq!(restored, image);
//! ```

pub mod block;
pub mod codec;
pub mod container;
mod error;
pub mod imageio;
pub mod metrics;
pub mod quantization;
pub mod reorder;
pub mod transform;

pub use block::{ImagePlane, PixelBlock, ShiftedBlock, TilingDescriptor, BLOCK_LEN, BLOCK_SIZE};
pub use codec::{CompressedImage, Image, Schedule};
pub use error::{Error, Result};
pub use metrics::CompressionReport;
pub use quantization::{Quality, QuantBlock, QuantMatrix};
pub use reorder::{RleStream, ZigzagVector};
pub use transform::{CoeffBlock, DctMatrix};
