//! Subcommands behind the `hyperpaint` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hyperpaint_core::{apply_mask, generate_line_mask, inpaint_with_report, EngineConfig, LineSpec, QualityReport};

use crate::error::{Error, Result};
use crate::pnm::{load_pnm, mask_from_pgm, save_mask_pgm, save_pnm};
use crate::sweep::{format_psnr, run_sweep, seed_averaged_psnr, to_csv, SweepConfig, SweepMode};

#[derive(Debug, Parser)]
#[command(name = "hyperpaint", version, about = "Bicubic inpainting of line defects")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Restore the pixels marked in a mask.
    Inpaint(InpaintArgs),
    /// Draw random line defects into an image.
    Degrade(DegradeArgs),
    /// Print PSNR and SSIM between two images.
    Eval(EvalArgs),
    /// Degrade, restore and score over a range of line counts or widths.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct InpaintArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// P5 mask, nonzero = degraded.
    #[arg(long)]
    pub mask: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long)]
    pub max_passes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DegradeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub lines: usize,
    #[arg(long, default_value_t = 1)]
    pub width: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the generated mask.
    #[arg(long)]
    pub mask: PathBuf,
    /// Where to write the degraded image.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub reference: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mode: SweepMode,
    /// First parameter value (default: 1).
    #[arg(long)]
    pub from: Option<usize>,
    /// Last parameter value (default: 10 for lines, 15 for width).
    #[arg(long)]
    pub to: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long)]
    pub max_passes: Option<usize>,
}

fn engine_config(max_passes: Option<usize>) -> EngineConfig {
    let mut config = EngineConfig::default();
    if let Some(n) = max_passes {
        config.max_passes = n;
    }
    config
}

fn stdout_err(source: std::io::Error) -> Error {
    Error::io(Path::new("<stdout>"), source)
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Inpaint(args) => cmd_inpaint(&args, out),
        Command::Degrade(args) => cmd_degrade(&args, out),
        Command::Eval(args) => cmd_eval(&args, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
    }
}

pub fn cmd_inpaint(args: &InpaintArgs, out: &mut impl Write) -> Result<()> {
    let image = load_pnm(&args.input)?;
    let mask = mask_from_pgm(&args.mask)?;
    let report = inpaint_with_report(&image, &mask, &engine_config(args.max_passes))?;
    save_pnm(&report.image, &args.output)?;
    writeln!(out, "passes={}", report.passes).map_err(stdout_err)?;
    writeln!(out, "degraded={}", mask.degraded_count()).map_err(stdout_err)?;
    writeln!(out, "predicted={}", report.predicted).map_err(stdout_err)?;
    writeln!(out, "fallback={}", report.fallback).map_err(stdout_err)?;
    Ok(())
}

pub fn cmd_degrade(args: &DegradeArgs, out: &mut impl Write) -> Result<()> {
    let image = load_pnm(&args.input)?;
    let spec = LineSpec {
        count: args.lines,
        width: args.width,
        seed: args.seed,
    };
    let mask = generate_line_mask(image.width(), image.height(), &spec)?;
    let degraded = apply_mask(&image, &mask, 0.0)?;
    save_mask_pgm(&mask, &args.mask)?;
    save_pnm(&degraded, &args.output)?;
    writeln!(out, "seed={}", args.seed).map_err(stdout_err)?;
    writeln!(out, "degraded={}", mask.degraded_count()).map_err(stdout_err)?;
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs, out: &mut impl Write) -> Result<()> {
    let reference = load_pnm(&args.reference)?;
    let test = load_pnm(&args.test)?;
    let q = QualityReport::compute(&reference, &test)?;
    writeln!(out, "psnr_db={}", format_psnr(q.psnr_db)).map_err(stdout_err)?;
    writeln!(out, "ssim={:.4}", q.ssim).map_err(stdout_err)?;
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut impl Write) -> Result<()> {
    let reference = load_pnm(&args.input)?;
    let defaults = args.mode.default_range();
    let config = SweepConfig {
        mode: args.mode,
        range: args.from.unwrap_or(*defaults.start())..=args.to.unwrap_or(*defaults.end()),
        seeds: args.seeds,
        engine: engine_config(args.max_passes),
    };
    let records = run_sweep(&reference, &config)?;
    fs::write(&args.csv, to_csv(&records)).map_err(|e| Error::io(&args.csv, e))?;
    for (param, psnr) in seed_averaged_psnr(&records) {
        writeln!(out, "{}={} mean_psnr_db={}", args.mode.name(), param, format_psnr(psnr)).map_err(stdout_err)?;
    }
    Ok(())
}
