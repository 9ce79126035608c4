//! Per-pixel prediction and multi-pass scheduling.
//!
//! A pass predicts every still-missing pixel from the state at the start of
//! the pass and commits all successful predictions together, so the result
//! does not depend on visiting order or thread count. Pixels filled in one
//! pass count as known in the next. When a pass makes no progress the
//! remaining pixels are filled with a growing-window mean.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernels::{
    horizontal_center, horizontal_matrix, predict_line_center, vertical_center, vertical_matrix, LineSamples,
    LINE_OFFSETS,
};
use crate::raster::{Image, Mask};

/// Value used when no known pixel exists anywhere in the fallback window.
pub const FALLBACK_CONSTANT: f64 = 128.0;

const MAX_CHANNELS: usize = 3;

/// The four lines through a target, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
    MainDiagonal,
    AntiDiagonal,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::MainDiagonal,
        Direction::AntiDiagonal,
    ];

    /// `(row, col)` offset of the point at signed position `t` along the line.
    #[inline]
    pub fn offset(self, t: isize) -> (isize, isize) {
        match self {
            Direction::Horizontal => (0, t),
            Direction::Vertical => (t, 0),
            Direction::MainDiagonal => (t, t),
            Direction::AntiDiagonal => (t, -t),
        }
    }
}

/// The 16 line pixels around a target with their availability.
///
/// Slot `4 * d + k` holds direction `d` at position `LINE_OFFSETS[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighborhood {
    values: [f64; 16],
    available: [bool; 16],
}

fn slot_of(row: isize, col: isize) -> Option<usize> {
    let k = |t: isize| LINE_OFFSETS.iter().position(|&o| o == t);
    let (d, t) = match (row, col) {
        (0, c) => (0, c),
        (r, 0) => (1, r),
        (r, c) if r == c => (2, r),
        (r, c) if r == -c => (3, r),
        _ => return None,
    };
    Some(4 * d + k(t)?)
}

impl Neighborhood {
    /// Builds a neighborhood from a lookup; `None` marks an unavailable pixel.
    pub fn from_lookup(lookup: impl Fn(isize, isize) -> Option<f64>) -> Self {
        let mut values = [0.0; 16];
        let mut available = [false; 16];
        for (d, dir) in Direction::ALL.into_iter().enumerate() {
            for (k, &t) in LINE_OFFSETS.iter().enumerate() {
                let (r, c) = dir.offset(t);
                if let Some(v) = lookup(r, c) {
                    values[4 * d + k] = v;
                    available[4 * d + k] = true;
                }
            }
        }
        Self { values, available }
    }

    /// Value at a line offset if that pixel is available.
    pub fn get(&self, row: isize, col: isize) -> Option<f64> {
        let slot = slot_of(row, col)?;
        self.available[slot].then_some(self.values[slot])
    }

    pub fn available_count(&self) -> usize {
        self.available.iter().filter(|&&a| a).count()
    }

    /// Line samples for a direction, or `None` unless all four are available.
    pub fn line(&self, dir: Direction) -> Option<LineSamples> {
        let d = dir as usize;
        let slots = 4 * d..4 * d + 4;
        if !self.available[slots.clone()].iter().all(|&a| a) {
            return None;
        }
        let mut v = [0.0; 4];
        v.copy_from_slice(&self.values[slots]);
        Some(LineSamples(v))
    }

    fn line_available(&self, d: usize) -> bool {
        self.available[4 * d..4 * d + 4].iter().all(|&a| a)
    }

    /// Whether at least one predictor slot can be evaluated.
    pub fn has_predictor(&self) -> bool {
        // Each hyperbola needs both diagonals, so surfaces never add coverage
        // beyond the lines.
        (0..4).any(|d| self.line_available(d))
    }
}

/// Reads the neighborhood of `center` from the current state.
///
/// A pixel is available when it lies inside the image and is not missing.
pub fn gather_neighborhood(image: &Image, missing: &Mask, center: (usize, usize), channel: usize) -> Neighborhood {
    let (h, w) = (image.height() as isize, image.width() as isize);
    let (cr, cc) = (center.0 as isize, center.1 as isize);
    Neighborhood::from_lookup(|dr, dc| {
        let (r, c) = (cr + dr, cc + dc);
        if r < 0 || c < 0 || r >= h || c >= w {
            return None;
        }
        let (r, c) = (r as usize, c as usize);
        (!missing.is_degraded(r, c)).then(|| image.get(r, c, channel))
    })
}

/// Up to six candidate intensities for one target pixel.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PredictionBundle {
    /// Indexed by [`Direction`].
    pub lines: [Option<f64>; 4],
    /// Vertical-hyperbola center, then horizontal-hyperbola center.
    pub surfaces: [Option<f64>; 2],
}

impl PredictionBundle {
    pub fn from_neighborhood(nb: &Neighborhood) -> Self {
        let mut lines = [None; 4];
        for (d, dir) in Direction::ALL.into_iter().enumerate() {
            lines[d] = nb.line(dir).map(predict_line_center);
        }
        let lookup = |r, c| nb.get(r, c);
        let surfaces = [
            vertical_matrix(lookup).map(|m| vertical_center(&m)),
            horizontal_matrix(lookup).map(|m| horizontal_center(&m)),
        ];
        Self { lines, surfaces }
    }

    /// Averages the available slots after outlier replacement on the lines.
    pub fn aggregate(&self) -> Option<f64> {
        let mut lines = self.lines;
        if let [Some(a), Some(b), Some(c), Some(d)] = lines {
            lines = replace_most_deviant([a, b, c, d]).map(Some);
        }
        let (sum, n) = lines
            .iter()
            .chain(&self.surfaces)
            .flatten()
            .fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
        (n > 0).then(|| sum / n as f64)
    }
}

/// Replaces the value farthest from the mean of all four with the mean of
/// the other three. Ties go to the lowest index.
pub fn replace_most_deviant(values: [f64; 4]) -> [f64; 4] {
    let mean = values.iter().sum::<f64>() / 4.0;
    let mut worst = 0;
    let mut worst_dev = (values[0] - mean).abs();
    for (i, v) in values.iter().enumerate().skip(1) {
        let dev = (v - mean).abs();
        if dev > worst_dev {
            worst = i;
            worst_dev = dev;
        }
    }
    let rest: f64 = values
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != worst)
        .map(|(_, v)| v)
        .sum();
    let mut out = values;
    out[worst] = rest / 3.0;
    out
}

/// Final unclamped prediction for a neighborhood, or `None` if no slot is
/// available.
pub fn predict_pixel(nb: &Neighborhood) -> Option<f64> {
    PredictionBundle::from_neighborhood(nb).aggregate()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub max_passes: usize,
    pub clamp_range: (f64, f64),
    pub fallback_window_limit: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            max_passes: 64,
            clamp_range: (0.0, 255.0),
            fallback_window_limit: 21,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_passes == 0 {
            return Err(Error::InvalidConfig("max_passes must be at least 1"));
        }
        if self.fallback_window_limit < 3 || self.fallback_window_limit.is_multiple_of(2) {
            return Err(Error::InvalidConfig("fallback_window_limit must be odd and at least 3"));
        }
        let (lo, hi) = self.clamp_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidConfig("clamp_range must be a finite, ordered pair"));
        }
        Ok(())
    }

    fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.clamp_range.0, self.clamp_range.1)
    }
}

/// Outcome of one fill pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PassOutcome {
    pub image: Image,
    /// Pixels committed in this pass, row-major.
    pub filled: Vec<(usize, usize)>,
}

fn predict_all_channels(image: &Image, missing: &Mask, px: (usize, usize)) -> Option<[f64; MAX_CHANNELS]> {
    let mut out = [0.0; MAX_CHANNELS];
    for (ch, slot) in out.iter_mut().enumerate().take(image.channels()) {
        let nb = gather_neighborhood(image, missing, px, ch);
        // Availability is shared across channels, so the first channel decides.
        if ch == 0 && !nb.has_predictor() {
            return None;
        }
        *slot = predict_pixel(&nb)?;
    }
    Some(out)
}

#[cfg(feature = "parallel")]
fn predict_targets(image: &Image, missing: &Mask, targets: &[(usize, usize)]) -> Vec<Option<[f64; MAX_CHANNELS]>> {
    use rayon::prelude::*;
    targets
        .par_iter()
        .map(|&px| predict_all_channels(image, missing, px))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn predict_targets(image: &Image, missing: &Mask, targets: &[(usize, usize)]) -> Vec<Option<[f64; MAX_CHANNELS]>> {
    targets
        .iter()
        .map(|&px| predict_all_channels(image, missing, px))
        .collect()
}

/// One synchronized fill pass over every pixel in `missing`.
pub fn run_pass(image: &Image, missing: &Mask, config: &EngineConfig) -> Result<PassOutcome> {
    image.check_mask(missing)?;
    let targets: Vec<_> = missing.degraded_pixels().collect();
    let predictions = predict_targets(image, missing, &targets);

    let mut next = image.clone();
    let mut filled = Vec::new();
    for (&(r, c), pred) in targets.iter().zip(predictions) {
        if let Some(values) = pred {
            for (ch, v) in values.iter().enumerate().take(image.channels()) {
                next.set(r, c, ch, config.clamp(*v));
            }
            filled.push((r, c));
        }
    }
    Ok(PassOutcome { image: next, filled })
}

/// Summary of an [`inpaint_with_report`] run.
#[derive(Debug, Clone, PartialEq)]
pub struct InpaintReport {
    pub image: Image,
    /// Number of fill passes executed, including a final pass that made no
    /// progress.
    pub passes: usize,
    /// Pixels filled by the bicubic predictors.
    pub predicted: usize,
    /// Pixels filled by the window-mean fallback.
    pub fallback: usize,
}

/// Restores every degraded pixel of `image`.
pub fn inpaint(image: &Image, mask: &Mask, config: &EngineConfig) -> Result<Image> {
    inpaint_with_report(image, mask, config).map(|r| r.image)
}

pub fn inpaint_with_report(image: &Image, mask: &Mask, config: &EngineConfig) -> Result<InpaintReport> {
    config.validate()?;
    image.check_mask(mask)?;

    let mut state = image.clone();
    let mut missing = mask.clone();
    let mut remaining = missing.degraded_count();
    let mut passes = 0;
    let mut predicted = 0;

    while remaining > 0 && passes < config.max_passes {
        let outcome = run_pass(&state, &missing, config)?;
        passes += 1;
        if outcome.filled.is_empty() {
            break;
        }
        for &(r, c) in &outcome.filled {
            missing.set(r, c, false);
        }
        predicted += outcome.filled.len();
        remaining -= outcome.filled.len();
        state = outcome.image;
    }

    let fallback = remaining;
    if remaining > 0 {
        fill_window_mean(&mut state, &missing, config);
    }
    Ok(InpaintReport {
        image: state,
        passes,
        predicted,
        fallback,
    })
}

/// Summed-area tables of known-pixel count and per-channel sums, with a zero
/// guard row and column.
struct KnownTotals {
    stride: usize,
    channels: usize,
    count: Vec<u32>,
    sums: Vec<f64>,
}

impl KnownTotals {
    fn new(image: &Image, missing: &Mask) -> Self {
        let (w, h, ch) = (image.width(), image.height(), image.channels());
        let stride = w + 1;
        let mut count = alloc::vec![0u32; stride * (h + 1)];
        let mut sums = alloc::vec![0.0; stride * (h + 1) * ch];
        for r in 0..h {
            for c in 0..w {
                let known = !missing.is_degraded(r, c);
                let i = (r + 1) * stride + c + 1;
                let (up, left, diag) = (i - stride, i - 1, i - stride - 1);
                count[i] = count[up] + count[left] - count[diag] + u32::from(known);
                for k in 0..ch {
                    let v = if known { image.get(r, c, k) } else { 0.0 };
                    sums[i * ch + k] = sums[up * ch + k] + sums[left * ch + k] - sums[diag * ch + k] + v;
                }
            }
        }
        Self {
            stride,
            channels: ch,
            count,
            sums,
        }
    }

    /// Known count and sums over rows `r0..r1`, cols `c0..c1`.
    fn window(&self, r0: usize, r1: usize, c0: usize, c1: usize, sums: &mut [f64; MAX_CHANNELS]) -> u32 {
        let s = self.stride;
        let (a, b, c, d) = (r0 * s + c0, r0 * s + c1, r1 * s + c0, r1 * s + c1);
        for (k, out) in sums.iter_mut().enumerate().take(self.channels) {
            let ch = self.channels;
            *out = self.sums[d * ch + k] - self.sums[b * ch + k] - self.sums[c * ch + k] + self.sums[a * ch + k];
        }
        self.count[d] + self.count[a] - self.count[b] - self.count[c]
    }
}

fn fill_window_mean(state: &mut Image, missing: &Mask, config: &EngineConfig) {
    let totals = KnownTotals::new(state, missing);
    let (w, h) = (state.width(), state.height());
    let targets: Vec<_> = missing.degraded_pixels().collect();
    let mut sums = [0.0; MAX_CHANNELS];
    for (r, c) in targets {
        let mut value = None;
        for size in (3..=config.fallback_window_limit).step_by(2) {
            let half = size / 2;
            let n = totals.window(
                r.saturating_sub(half),
                (r + half + 1).min(h),
                c.saturating_sub(half),
                (c + half + 1).min(w),
                &mut sums,
            );
            if n > 0 {
                value = Some(sums.map(|s| s / f64::from(n)));
                break;
            }
        }
        let value = value.unwrap_or([FALLBACK_CONSTANT; MAX_CHANNELS]);
        for (ch, v) in value.iter().enumerate().take(state.channels()) {
            state.set(r, c, ch, config.clamp(*v));
        }
    }
}
