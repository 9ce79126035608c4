//! Degrade, restore and score over a parameter range.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use hyperpaint_core::{apply_mask, generate_line_mask, inpaint, EngineConfig, Image, LineSpec, QualityReport};
use rayon::prelude::*;

use crate::error::Result;

pub const CSV_HEADER: &str = "param_name,param_value,seed,psnr_db,ssim";

/// Which line property is varied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepMode {
    /// Number of lines at width 1.
    Lines,
    /// Width of two lines.
    Width,
}

impl SweepMode {
    pub fn name(self) -> &'static str {
        match self {
            SweepMode::Lines => "lines",
            SweepMode::Width => "width",
        }
    }

    pub fn default_range(self) -> RangeInclusive<usize> {
        match self {
            SweepMode::Lines => 1..=10,
            SweepMode::Width => 1..=15,
        }
    }

    pub fn line_spec(self, param: usize, seed: u64) -> LineSpec {
        match self {
            SweepMode::Lines => LineSpec {
                count: param,
                width: 1,
                seed,
            },
            SweepMode::Width => LineSpec {
                count: 2,
                width: param,
                seed,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub range: RangeInclusive<usize>,
    /// Seeds `0..seeds` are run for every parameter value.
    pub seeds: u64,
    pub engine: EngineConfig,
}

impl SweepConfig {
    pub fn new(mode: SweepMode) -> Self {
        Self {
            mode,
            range: mode.default_range(),
            seeds: 10,
            engine: EngineConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub param_name: &'static str,
    pub param_value: usize,
    pub seed: u64,
    pub psnr_db: f64,
    pub ssim: f64,
}

/// Restores one synthetic degradation of `reference` and scores it.
pub fn evaluate_once(reference: &Image, spec: &LineSpec, engine: &EngineConfig) -> Result<QualityReport> {
    let mask = generate_line_mask(reference.width(), reference.height(), spec)?;
    let degraded = apply_mask(reference, &mask, 0.0)?;
    let restored = inpaint(&degraded, &mask, engine)?;
    Ok(QualityReport::compute(reference, &restored)?)
}

/// Runs every `(param, seed)` pair; records come back ordered by
/// `(param_value, seed)` whatever the scheduling.
pub fn run_sweep(reference: &Image, config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let jobs: Vec<(usize, u64)> = config
        .range
        .clone()
        .flat_map(|p| (0..config.seeds).map(move |s| (p, s)))
        .collect();
    let mut records = jobs
        .par_iter()
        .map(|&(param, seed)| {
            let spec = config.mode.line_spec(param, seed);
            let q = evaluate_once(reference, &spec, &config.engine)?;
            Ok(SweepRecord {
                param_name: config.mode.name(),
                param_value: param,
                seed,
                psnr_db: q.psnr_db,
                ssim: q.ssim,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.param_value, r.seed));
    Ok(records)
}

pub fn format_psnr(db: f64) -> String {
    if db.is_infinite() {
        "inf".to_string()
    } else {
        format!("{db:.4}")
    }
}

pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{:.4}",
            r.param_name,
            r.param_value,
            r.seed,
            format_psnr(r.psnr_db),
            r.ssim
        )
        .expect("writing to a String");
    }
    out
}

/// Mean PSNR per parameter value, in ascending parameter order.
pub fn seed_averaged_psnr(records: &[SweepRecord]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64, usize)> = Vec::new();
    for r in records {
        match out.last_mut() {
            Some((p, sum, n)) if *p == r.param_value => {
                *sum += r.psnr_db;
                *n += 1;
            }
            _ => out.push((r.param_value, r.psnr_db, 1)),
        }
    }
    out.into_iter().map(|(p, s, n)| (p, s / n as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(p: usize, seed: u64, psnr_db: f64) -> SweepRecord {
        SweepRecord {
            param_name: "width",
            param_value: p,
            seed,
            psnr_db,
            ssim: 0.5,
        }
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&[record(1, 0, 41.23456), record(2, 0, f64::INFINITY)]);
        assert_eq!(
            csv,
            "param_name,param_value,seed,psnr_db,ssim\nwidth,1,0,41.2346,0.5000\nwidth,2,0,inf,0.5000\n"
        );
    }

    #[test]
    fn averages_group_by_param() {
        let recs = [record(1, 0, 40.0), record(1, 1, 42.0), record(3, 0, 30.0)];
        assert_eq!(seed_averaged_psnr(&recs), vec![(1, 41.0), (3, 30.0)]);
    }

    #[test]
    fn small_sweep_row_count() {
        let img = Image::from_fn(48, 48, |r, c| ((r * 3 + c * 5) % 200) as f64).unwrap();
        let config = SweepConfig {
            range: 1..=2,
            seeds: 1,
            ..SweepConfig::new(SweepMode::Width)
        };
        let recs = run_sweep(&img, &config).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(to_csv(&recs).lines().count(), 3);
        assert_eq!(recs[0].param_value, 1);
        assert_eq!(recs[1].param_value, 2);
    }
}
