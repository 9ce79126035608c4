//! Seeded synthetic line defects.
//!
//! Each line is a straight segment between a point on one image border and a
//! point on the opposite border, rasterized with the integer midpoint
//! algorithm and thickened by stacking parallel copies along the line's minor
//! axis. Endpoints come from a ChaCha8 stream seeded from `LineSpec::seed`, so
//! a mask is reproducible on any platform.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::raster::{Image, Mask};

/// Smallest accepted mask dimension.
pub const MIN_DIMENSION: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineSpec {
    pub count: usize,
    pub width: usize,
    pub seed: u64,
}

impl LineSpec {
    pub fn validate(&self, width: usize, height: usize) -> Result<()> {
        if width < MIN_DIMENSION || height < MIN_DIMENSION {
            return Err(Error::TooSmall {
                width,
                height,
                window: MIN_DIMENSION,
            });
        }
        if self.width == 0 {
            return Err(Error::InvalidLineSpec("line width must be at least 1"));
        }
        if self.width > width.min(height) / 4 {
            return Err(Error::InvalidLineSpec(
                "line width must not exceed a quarter of the smaller image dimension",
            ));
        }
        Ok(())
    }
}

/// Segment endpoints as `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: (usize, usize),
    pub end: (usize, usize),
}

impl Segment {
    /// `true` if the line advances faster along columns than rows.
    pub fn is_col_major(&self) -> bool {
        let dr = self.end.0.abs_diff(self.start.0);
        let dc = self.end.1.abs_diff(self.start.1);
        dc >= dr
    }
}

/// Endpoints of every line described by `spec`, in draw order.
///
/// The draw sequence does not depend on `spec.width`, and the first `k`
/// segments of a spec with `count >= k` are the segments of the spec with
/// `count = k`.
pub fn line_segments(width: usize, height: usize, spec: &LineSpec) -> Vec<Segment> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| {
            if rng.gen_bool(0.5) {
                // top to bottom
                let a = rng.gen_range(0..width);
                let b = rng.gen_range(0..width);
                Segment {
                    start: (0, a),
                    end: (height - 1, b),
                }
            } else {
                // left to right
                let a = rng.gen_range(0..height);
                let b = rng.gen_range(0..height);
                Segment {
                    start: (a, 0),
                    end: (b, width - 1),
                }
            }
        })
        .collect()
}

/// Integer midpoint (Bresenham) rasterization, endpoints included.
pub fn rasterize_segment(start: (isize, isize), end: (isize, isize), mut plot: impl FnMut(isize, isize)) {
    let (mut r, mut c) = start;
    let dr = (end.0 - r).abs();
    let dc = (end.1 - c).abs();
    let sr = if end.0 >= r { 1 } else { -1 };
    let sc = if end.1 >= c { 1 } else { -1 };
    let mut err = dc - dr;
    loop {
        plot(r, c);
        if (r, c) == end {
            break;
        }
        let e2 = 2 * err;
        if e2 > -dr {
            err -= dr;
            c += sc;
        }
        if e2 < dc {
            err += dc;
            r += sr;
        }
    }
}

/// Offsets `-floor((w-1)/2) ..= ceil((w-1)/2)` for a line of width `w`.
pub fn thickening_offsets(width: usize) -> core::ops::RangeInclusive<isize> {
    let span = width as isize - 1;
    -(span / 2)..=(span - span / 2)
}

pub fn generate_line_mask(width: usize, height: usize, spec: &LineSpec) -> Result<Mask> {
    spec.validate(width, height)?;
    let mut mask = Mask::intact(width, height)?;
    let (w, h) = (width as isize, height as isize);
    for seg in line_segments(width, height, spec) {
        let col_major = seg.is_col_major();
        for off in thickening_offsets(spec.width) {
            let (dr, dc) = if col_major { (off, 0) } else { (0, off) };
            let start = (seg.start.0 as isize + dr, seg.start.1 as isize + dc);
            let end = (seg.end.0 as isize + dr, seg.end.1 as isize + dc);
            rasterize_segment(start, end, |r, c| {
                if (0..h).contains(&r) && (0..w).contains(&c) {
                    mask.set(r as usize, c as usize, true);
                }
            });
        }
    }
    Ok(mask)
}

/// Overwrites every degraded pixel with `fill` in all channels.
pub fn apply_mask(image: &Image, mask: &Mask, fill: f64) -> Result<Image> {
    image.check_mask(mask)?;
    let ch = image.channels();
    let samples: Vec<f64> = image
        .samples()
        .chunks_exact(ch)
        .zip(mask.as_slice())
        .flat_map(|(px, &degraded)| px.iter().map(move |&v| if degraded { fill } else { v }))
        .collect();
    Image::new(image.width(), image.height(), ch, samples)
}
