//! Command implementations behind the `bdc` binary.
//!
//! Each command returns its textual output so it can be driven from tests
//! without spawning a process. Exit codes: 0 success, 1 usage, 2 I/O,
//! 3 corrupt data.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use bdc_core::reorder::rle_decode_block;
use bdc_core::{codec, container, imageio, CompressionReport, Image, Quality};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Data {
        context: String,
        source: bdc_core::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Data { source, .. } if source.is_corrupt_data() => 3,
            CliError::Data { .. } => 1,
        }
    }

    fn data(path: &Path, source: bdc_core::Error) -> Self {
        CliError::Data {
            context: path.display().to_string(),
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ReportFormat {
    /// Aligned text table
    #[default]
    Table,
    /// One `key=value` line per row
    Kv,
}

/// Inclusive quality range stepped by 10, written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sweep {
    pub start: u32,
    pub end: u32,
}

impl Sweep {
    pub const STEP: u32 = 10;

    pub fn qualities(&self) -> Vec<Quality> {
        (self.start..=self.end)
            .step_by(Self::STEP as usize)
            .map(|n| Quality::new(n).expect("validated on parse"))
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected <a>..<b>, got {s:?}"))?;
        let parse = |t: &str| -> Result<u32, String> {
            let n: u32 = t
                .trim()
                .parse()
                .map_err(|_| format!("invalid quality {t:?}"))?;
            Quality::new(n).map(|_| n).map_err(|e| e.to_string())
        };
        let (start, end) = (parse(a)?, parse(b)?);
        if start > end {
            return Err(format!("sweep start {start} exceeds end {end}"));
        }
        Ok(Sweep { start, end })
    }
}

#[derive(Debug, Parser)]
#[command(name = "bdc", version, about = "Block DCT image codec")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a PGM/PPM image into a BDC1 file
    Encode {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=100))]
        quality: u32,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Reconstruct a PGM/PPM image from a BDC1 file
    Decode { input: PathBuf, output: PathBuf },
    /// Encode and decode in memory and report size and quality
    Roundtrip {
        input: PathBuf,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=100))]
        quality: u32,
        /// Quality range `<a>..<b>`, stepped by 10
        #[arg(long)]
        sweep: Option<Sweep>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Print header fields and per-block statistics of a BDC1 file
    Inspect { input: PathBuf },
}

/// One line of a round-trip report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub image: String,
    pub width: usize,
    pub height: usize,
    pub quality: Quality,
    pub report: CompressionReport,
}

pub const TABLE_COLUMNS: [&str; 8] = [
    "Image",
    "Dimension",
    "Quality",
    "Original Size (KB)",
    "Compressed Size (KB)",
    "Reduction (Percent)",
    "MSE",
    "PSNR (dB)",
];

fn kib(bytes: u64) -> String {
    format!("{:.1}", bytes as f64 / 1024.0)
}

fn psnr_text(psnr: f64) -> String {
    if psnr.is_infinite() {
        "inf".to_string()
    } else {
        format!("{psnr:.2}")
    }
}

pub fn render_table(rows: &[ReportRow]) -> String {
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.image.clone(),
                format!("{}*{}", r.width, r.height),
                r.quality.to_string(),
                kib(r.report.n1),
                kib(r.report.n2),
                format!("{:.2}%", r.report.reduction_percent()),
                format!("{:.3}", r.report.mse),
                psnr_text(r.report.psnr),
            ]
        })
        .collect();
    let mut widths = TABLE_COLUMNS.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, items: &[&str]| {
        let padded: Vec<String> = items
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (s, w))| {
                if i == 0 {
                    format!("{s:<w$}")
                } else {
                    format!("{s:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", padded.join(" | ").trim_end());
    };
    line(&mut out, &TABLE_COLUMNS);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    let _ = writeln!(out, "{}", rule.join("-+-"));
    for row in &cells {
        let refs: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&mut out, &refs);
    }
    out
}

pub fn render_kv(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(
            out,
            "image={} width={} height={} quality={} original_bytes={} compressed_bytes={} cr={:.4} rd={:.4} reduction_percent={:.2} mse={:.4} psnr_db={}",
            r.image,
            r.width,
            r.height,
            r.quality,
            r.report.n1,
            r.report.n2,
            r.report.cr,
            r.report.rd,
            r.report.reduction_percent(),
            r.report.mse,
            psnr_text(r.report.psnr),
        );
    }
    out
}

pub fn render(rows: &[ReportRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Table => render_table(rows),
        ReportFormat::Kv => render_kv(rows),
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Write through a temporary file in the destination directory, so a failed
/// command never leaves a partial output behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn image_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

pub fn load_image(path: &Path) -> Result<Image, CliError> {
    imageio::read_image(&read_file(path)?).map_err(|e| CliError::data(path, e))
}

pub fn cmd_encode(input: &Path, output: &Path, quality: Quality) -> Result<ReportRow, CliError> {
    let image = load_image(input)?;
    let compressed = codec::encode(&image, quality).map_err(|e| CliError::data(input, e))?;
    let bytes = container::serialize(&compressed).map_err(|e| CliError::data(input, e))?;
    let restored = codec::decode(&compressed).map_err(|e| CliError::data(input, e))?;
    let (mse, psnr) =
        bdc_core::metrics::mse_psnr(&image, &restored).map_err(|e| CliError::data(input, e))?;
    let report = CompressionReport::new(image.raw_len() as u64, bytes.len() as u64, mse, psnr)
        .map_err(|e| CliError::data(input, e))?;
    write_atomic(output, &bytes)?;
    Ok(ReportRow {
        image: image_name(input),
        width: image.width(),
        height: image.height(),
        quality,
        report,
    })
}

pub fn cmd_decode(input: &Path, output: &Path) -> Result<Image, CliError> {
    let bytes = read_file(input)?;
    let compressed = container::deserialize(&bytes).map_err(|e| CliError::data(input, e))?;
    let image = codec::decode(&compressed).map_err(|e| CliError::data(input, e))?;
    write_atomic(output, &imageio::write_image(&image))?;
    Ok(image)
}

/// Round-trip an in-memory image at each quality.
pub fn roundtrip_rows(
    name: &str,
    image: &Image,
    qualities: &[Quality],
) -> Result<Vec<ReportRow>, CliError> {
    qualities
        .iter()
        .map(|&quality| {
            let report =
                codec::roundtrip_report(image, quality).map_err(|source| CliError::Data {
                    context: name.to_string(),
                    source,
                })?;
            Ok(ReportRow {
                image: name.to_string(),
                width: image.width(),
                height: image.height(),
                quality,
                report,
            })
        })
        .collect()
}

pub fn cmd_roundtrip(
    input: &Path,
    quality: Quality,
    sweep: Option<Sweep>,
) -> Result<Vec<ReportRow>, CliError> {
    let image = load_image(input)?;
    let qualities = sweep
        .map(|s| s.qualities())
        .unwrap_or_else(|| vec![quality]);
    roundtrip_rows(&image_name(input), &image, &qualities)
}

/// Summary of a parsed BDC1 file.
#[derive(Debug, Clone, PartialEq)]
pub struct Inspection {
    pub file_len: usize,
    pub width: u32,
    pub height: u32,
    pub channels: usize,
    pub quality: Quality,
    pub blocks: usize,
    /// Symbol count per block stream → number of blocks with that count.
    pub symbol_histogram: BTreeMap<usize, usize>,
    pub nonzero_total: usize,
    pub nonzero_max: usize,
    pub all_zero_blocks: usize,
}

pub fn inspect_bytes(bytes: &[u8]) -> Result<Inspection, bdc_core::Error> {
    let c = container::deserialize(bytes)?;
    let mut symbol_histogram = BTreeMap::new();
    let (mut nonzero_total, mut nonzero_max, mut all_zero_blocks) = (0, 0, 0);
    for stream in c.channels().iter().flatten() {
        *symbol_histogram.entry(stream.len()).or_insert(0) += 1;
        let nz = rle_decode_block(stream)?
            .as_slice()
            .iter()
            .filter(|&&v| v != 0)
            .count();
        nonzero_total += nz;
        nonzero_max = nonzero_max.max(nz);
        if nz == 0 {
            all_zero_blocks += 1;
        }
    }
    Ok(Inspection {
        file_len: bytes.len(),
        width: c.width(),
        height: c.height(),
        channels: c.channel_count(),
        quality: c.quality(),
        blocks: c.blocks_per_channel() * c.channel_count(),
        symbol_histogram,
        nonzero_total,
        nonzero_max,
        all_zero_blocks,
    })
}

pub fn cmd_inspect(input: &Path) -> Result<Inspection, CliError> {
    inspect_bytes(&read_file(input)?).map_err(|e| CliError::data(input, e))
}

impl std::fmt::Display for Inspection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "format:    BDC1 v{}", container::VERSION)?;
        writeln!(f, "file size: {} bytes", self.file_len)?;
        writeln!(f, "width:     {}", self.width)?;
        writeln!(f, "height:    {}", self.height)?;
        writeln!(f, "channels:  {}", self.channels)?;
        writeln!(f, "quality:   {}", self.quality)?;
        writeln!(f, "blocks:    {}", self.blocks)?;
        writeln!(
            f,
            "nonzero coefficients: total {} mean {:.2} max {} all-zero blocks {}",
            self.nonzero_total,
            self.nonzero_total as f64 / self.blocks as f64,
            self.nonzero_max,
            self.all_zero_blocks
        )?;
        writeln!(f, "symbols per block:")?;
        for (symbols, count) in &self.symbol_histogram {
            writeln!(f, "  {symbols:>3}: {count}")?;
        }
        Ok(())
    }
}

/// Execute a parsed command, returning what should be printed to stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let quality = |n: u32| Quality::new(n).map_err(|e| CliError::Usage(e.to_string()));
    match cli.command {
        Command::Encode {
            input,
            output,
            quality: n,
            format,
        } => {
            let row = cmd_encode(&input, &output, quality(n)?)?;
            Ok(render(&[row], format))
        }
        Command::Decode { input, output } => {
            let image = cmd_decode(&input, &output)?;
            Ok(format!(
                "wrote {} ({}x{}, {} channel{})\n",
                output.display(),
                image.width(),
                image.height(),
                image.channels(),
                if image.channels() == 1 { "" } else { "s" }
            ))
        }
        Command::Roundtrip {
            input,
            quality: n,
            sweep,
            format,
        } => {
            let rows = cmd_roundtrip(&input, quality(n)?, sweep)?;
            Ok(render(&rows, format))
        }
        Command::Inspect { input } => Ok(cmd_inspect(&input)?.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let s: Sweep = "10..90".parse().unwrap();
        assert_eq!(s.qualities().len(), 9);
        assert_eq!(s.qualities()[8], Quality::new(90).unwrap());
        let s: Sweep = "45..60".parse().unwrap();
        assert_eq!(
            s.qualities(),
            vec![Quality::new(45).unwrap(), Quality::new(55).unwrap()]
        );
        assert!("0..50".parse::<Sweep>().is_err());
        assert!("60..50".parse::<Sweep>().is_err());
        assert!("50".parse::<Sweep>().is_err());
        assert!("10..101".parse::<Sweep>().is_err());
    }

    #[test]
    fn table_has_reduction_column() {
        let image = Image::gray(16, 16, vec![128; 256]).unwrap();
        let rows = roundtrip_rows("flat", &image, &[Quality::DEFAULT]).unwrap();
        let table = render_table(&rows);
        let header = table.lines().next().unwrap();
        for col in TABLE_COLUMNS {
            assert!(header.contains(col), "{col}");
        }
        assert!(table.contains("inf"));
        let kv = render_kv(&rows);
        assert!(kv.starts_with(
            "image=flat width=16 height=16 quality=50 original_bytes=256 compressed_bytes=39 "
        ));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        let io = CliError::Io {
            path: "a".into(),
            source: std::io::ErrorKind::NotFound.into(),
        };
        assert_eq!(io.exit_code(), 2);
        let data = CliError::Data {
            context: "a".into(),
            source: bdc_core::Error::BadMagic { found: *b"XXXX" },
        };
        assert_eq!(data.exit_code(), 3);
    }
}
