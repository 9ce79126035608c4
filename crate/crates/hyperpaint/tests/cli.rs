use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hyperpaint::pnm::{encode_pnm, load_pnm, mask_from_pgm, save_mask_pgm, save_pnm};
use hyperpaint_core::{Image, Mask};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperpaint"))
        .args(args)
        .output()
        .expect("spawn hyperpaint")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn camera_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/camera.pgm")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ramp(w: usize, h: usize) -> Image {
    Image::from_fn(w, h, |r, c| ((r * 3 + c * 2) % 256) as f64).unwrap()
}

#[test]
fn inpaint_restores_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (input, mask, output) = (
        dir.path().join("in.pgm"),
        dir.path().join("m.pgm"),
        dir.path().join("out.pgm"),
    );
    save_pnm(&ramp(40, 30), &input).unwrap();
    let m = Mask::from_fn(40, 30, |_, c| c == 17).unwrap();
    save_mask_pgm(&m, &mask).unwrap();

    let out = bin(&[
        "inpaint",
        "--input",
        s(&input),
        "--mask",
        s(&mask),
        "--output",
        s(&output),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("passes=") && text.contains("degraded=30"), "{text}");
    let restored = load_pnm(&output).unwrap();
    assert_eq!(encode_pnm(&restored), fs::read(&output).unwrap());
    for r in 0..30 {
        assert!((restored.get(r, 17, 0) - ramp(40, 30).get(r, 17, 0)).abs() <= 1.0);
    }
}

#[test]
fn inpaint_empty_mask_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (input, mask, output) = (
        dir.path().join("in.pgm"),
        dir.path().join("m.pgm"),
        dir.path().join("out.pgm"),
    );
    save_pnm(&ramp(20, 20), &input).unwrap();
    save_mask_pgm(&Mask::intact(20, 20).unwrap(), &mask).unwrap();
    let out = bin(&[
        "inpaint",
        "--input",
        s(&input),
        "--mask",
        s(&mask),
        "--output",
        s(&output),
        "--max-passes",
        "3",
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(&input).unwrap(), fs::read(&output).unwrap());
}

#[test]
fn inpaint_dimension_mismatch_names_both_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let (input, mask, output) = (
        dir.path().join("in.pgm"),
        dir.path().join("m.pgm"),
        dir.path().join("out.pgm"),
    );
    save_pnm(&ramp(20, 10), &input).unwrap();
    save_mask_pgm(&Mask::intact(12, 10).unwrap(), &mask).unwrap();
    let out = bin(&[
        "inpaint",
        "--input",
        s(&input),
        "--mask",
        s(&mask),
        "--output",
        s(&output),
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("20x10") && err.contains("12x10"), "{err}");
    assert_eq!(err.lines().count(), 1);
    assert!(!output.exists());
}

#[test]
fn missing_input_fails_with_diagnostic() {
    let out = bin(&[
        "eval",
        "--reference",
        "/nonexistent/a.pgm",
        "--test",
        "/nonexistent/b.pgm",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("/nonexistent/a.pgm"));
}

#[test]
fn degrade_zero_lines_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    save_pnm(&ramp(64, 48), &p("in.pgm")).unwrap();

    let out = bin(&[
        "degrade",
        "--input",
        s(&p("in.pgm")),
        "--lines",
        "0",
        "--width",
        "1",
        "--seed",
        "4",
        "--mask",
        s(&p("m0.pgm")),
        "--output",
        s(&p("d0.pgm")),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("degraded=0"));
    assert_eq!(mask_from_pgm(p("m0.pgm")).unwrap().degraded_count(), 0);
    assert_eq!(fs::read(p("in.pgm")).unwrap(), fs::read(p("d0.pgm")).unwrap());

    for run in ["a", "b"] {
        let out = bin(&[
            "degrade",
            "--input",
            s(&p("in.pgm")),
            "--lines",
            "3",
            "--width",
            "2",
            "--seed",
            "77",
            "--mask",
            s(&p(&format!("m{run}.pgm"))),
            "--output",
            s(&p(&format!("d{run}.pgm"))),
        ]);
        assert!(out.status.success());
        assert!(stdout(&out).contains("seed=77"));
    }
    assert_eq!(fs::read(p("ma.pgm")).unwrap(), fs::read(p("mb.pgm")).unwrap());
    assert_eq!(fs::read(p("da.pgm")).unwrap(), fs::read(p("db.pgm")).unwrap());
}

#[test]
fn degrade_two_unit_lines_on_512() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        let (mask, output) = (dir.path().join("m.pgm"), dir.path().join("d.pgm"));
        let seed = seed.to_string();
        let out = bin(&[
            "degrade",
            "--input",
            s(&camera_path()),
            "--lines",
            "2",
            "--width",
            "1",
            "--seed",
            &seed,
            "--mask",
            s(&mask),
            "--output",
            s(&output),
        ]);
        assert!(out.status.success());
        let count = mask_from_pgm(&mask).unwrap().degraded_count();
        assert!((512..=2 * 513).contains(&count), "seed {seed}: {count}");
        assert!(stdout(&out).contains(&format!("degraded={count}")));
    }
}

#[test]
fn eval_output_format() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a.pgm"),
        dir.path().join("b.pgm"),
        dir.path().join("c.pgm"),
    );
    let img = ramp(24, 24);
    save_pnm(&img, &a).unwrap();
    let shifted = Image::new(24, 24, 1, img.samples().iter().map(|v| (v + 1.0).min(255.0)).collect()).unwrap();
    // ramp values stay below 255, so every sample differs by exactly one
    assert!(img.samples().iter().all(|&v| v < 255.0));
    save_pnm(&shifted, &b).unwrap();
    save_pnm(&ramp(25, 24), &c).unwrap();

    let out = bin(&["eval", "--reference", s(&a), "--test", s(&a)]);
    assert_eq!(stdout(&out), "psnr_db=inf\nssim=1.0000\n");
    let out = bin(&["eval", "--reference", s(&a), "--test", s(&b)]);
    assert!(stdout(&out).starts_with("psnr_db=48.1308\nssim="), "{}", stdout(&out));
    let out = bin(&["eval", "--reference", s(&a), "--test", s(&c)]);
    assert!(!out.status.success());
}

#[test]
fn sweep_rows_and_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    save_pnm(&ramp(64, 64), &input).unwrap();
    let mut csvs = Vec::new();
    for run in 0..2 {
        let csv = dir.path().join(format!("{run}.csv"));
        let out = bin(&[
            "sweep",
            "--input",
            s(&input),
            "--mode",
            "width",
            "--from",
            "1",
            "--to",
            "2",
            "--seeds",
            "1",
            "--csv",
            s(&csv),
        ]);
        assert!(out.status.success(), "{out:?}");
        assert_eq!(stdout(&out).lines().count(), 2);
        csvs.push(fs::read_to_string(&csv).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    let lines: Vec<&str> = csvs[0].lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "param_name,param_value,seed,psnr_db,ssim");
    assert!(lines[1].starts_with("width,1,0,"));
    assert!(lines[2].starts_with("width,2,0,"));
    assert!(!csvs[0].contains('\r'));
}
