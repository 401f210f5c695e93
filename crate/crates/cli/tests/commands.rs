//! End-to-end runs of the `bdc` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bdc_core::{imageio, Image};

fn bdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdc"))
        .args(args)
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gradient(w: usize, h: usize) -> Image {
    Image::gray(
        w,
        h,
        (0..w * h)
            .map(|i| ((i % w) * 3 + (i / w) * 2) as u8)
            .collect(),
    )
    .unwrap()
}

fn setup(image: &Image) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("input.pgm");
    std::fs::write(&path, imageio::write_image(image)).unwrap();
    (dir, path)
}

#[test]
fn encode_decode_cycle() {
    let img = gradient(37, 21);
    let (dir, input) = setup(&img);
    let bdc_path = dir.path().join("out.bdc");
    let out = bdc(&["encode", s(&input), s(&bdc_path)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("Reduction (Percent)"));
    assert!(report.contains("37*21"));

    let first = std::fs::read(&bdc_path).unwrap();
    assert_eq!(&first[..4], b"BDC1");
    assert_eq!(first[14], 50);
    assert!(bdc(&["encode", s(&input), s(&bdc_path)]).status.success());
    assert_eq!(std::fs::read(&bdc_path).unwrap(), first);

    let pgm = dir.path().join("back.pgm");
    let out = bdc(&["decode", s(&bdc_path), s(&pgm)]);
    assert!(out.status.success());
    let decoded = std::fs::read(&pgm).unwrap();
    let back = imageio::read_image(&decoded).unwrap();
    assert_eq!((back.width(), back.height()), (37, 21));
    assert!(bdc(&["decode", s(&bdc_path), s(&pgm)]).status.success());
    assert_eq!(std::fs::read(&pgm).unwrap(), decoded);
}

#[test]
fn quality_out_of_range_is_usage_error() {
    let (dir, input) = setup(&gradient(8, 8));
    let target = dir.path().join("x.bdc");
    for q in ["0", "101", "abc"] {
        let out = bdc(&["encode", s(&input), s(&target), "--quality", q]);
        assert_eq!(out.status.code(), Some(1), "quality {q}");
    }
    assert!(!target.exists());
}

#[test]
fn missing_input_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bdc(&[
        "encode",
        s(&dir.path().join("nope.pgm")),
        s(&dir.path().join("x.bdc")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("x.bdc").exists());
}

#[test]
fn truncated_container_is_data_error_without_output() {
    let (dir, input) = setup(&gradient(16, 16));
    let bdc_path = dir.path().join("out.bdc");
    assert!(bdc(&["encode", s(&input), s(&bdc_path)]).status.success());
    let bytes = std::fs::read(&bdc_path).unwrap();
    std::fs::write(&bdc_path, &bytes[..bytes.len() - 3]).unwrap();
    let pgm = dir.path().join("back.pgm");
    let out = bdc(&["decode", s(&bdc_path), s(&pgm)]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("offset"), "{err}");
    assert!(!pgm.exists());
    assert_eq!(bdc(&["inspect", s(&bdc_path)]).status.code(), Some(3));
}

#[test]
fn bad_netpbm_is_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.pgm");
    std::fs::write(&input, b"P5 2 2 65535\n").unwrap();
    let out = bdc(&["encode", s(&input), s(&dir.path().join("x.bdc"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn roundtrip_sweep_rows() {
    let (_dir, input) = setup(&gradient(64, 48));
    let out = bdc(&[
        "roundtrip",
        s(&input),
        "--sweep",
        "10..90",
        "--format",
        "kv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().all(|l| l.starts_with("image=input ")));

    let out = bdc(&["roundtrip", s(&input), "--quality", "70"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().next().unwrap().contains("Reduction (Percent)"));

    assert_eq!(
        bdc(&["roundtrip", s(&input), "--sweep", "90..10"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn roundtrip_of_mid_gray() {
    let (_dir, input) = setup(&Image::gray(256, 256, vec![128; 65536]).unwrap());
    let out = bdc(&["roundtrip", s(&input), "--format", "kv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("psnr_db=inf"), "{text}");
    let reduction: f64 = text
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("reduction_percent="))
        .unwrap()
        .parse()
        .unwrap();
    // 15-byte header plus 1024 blocks of count + [0, 64], six bytes each
    let expected = 100.0 * (1.0 - 6159.0 / 65536.0);
    assert!((reduction - expected).abs() < 0.01, "{reduction}");
}

#[test]
fn inspect_reports_header_and_blocks() {
    let (dir, input) = setup(&Image::gray(20, 10, vec![128; 200]).unwrap());
    let bdc_path = dir.path().join("out.bdc");
    assert!(bdc(&["encode", s(&input), s(&bdc_path), "--quality", "37"])
        .status
        .success());
    let out = bdc(&["inspect", s(&bdc_path)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("quality:   37"), "{text}");
    assert!(text.contains("blocks:    6"), "{text}");
    assert!(text.contains("    2: 6"), "{text}");
    assert!(text.contains("all-zero blocks 6"), "{text}");
}

#[test]
fn color_input_decodes_to_ppm() {
    let rgb: Vec<u8> = (0..12 * 9 * 3).map(|i| (i * 7 % 256) as u8).collect();
    let img = Image::from_interleaved_rgb(12, 9, &rgb).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.ppm");
    std::fs::write(&input, imageio::write_image(&img)).unwrap();
    let bdc_path = dir.path().join("c.bdc");
    assert!(bdc(&["encode", s(&input), s(&bdc_path), "--quality", "95"])
        .status
        .success());
    let out_path = dir.path().join("d.ppm");
    assert!(bdc(&["decode", s(&bdc_path), s(&out_path)])
        .status
        .success());
    let bytes = std::fs::read(&out_path).unwrap();
    assert_eq!(&bytes[..2], b"P6");
    let inspect = String::from_utf8(bdc(&["inspect", s(&bdc_path)]).stdout).unwrap();
    assert!(inspect.contains("blocks:    12"), "{inspect}");
}
