//! Cubic predictors.
//!
//! Two distinct cubic models are used. Along a single line the four known
//! samples sit at offsets `-2, -1, +1, +2` from the missing center, and the
//! center is read off the exact cubic through them. On the 2-D path the
//! twelve-pixel matrices are refined on their own index grid with the
//! `a = -0.5` cubic convolution kernel, and the center of the refined grid is
//! the prediction.
//!
//! Nothing in this module clamps. Overshoot from the negative lobes is kept
//! until the engine commits a value.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const CONV_A: f64 = -0.5;

/// Offsets of the four known samples along a line through the target.
pub const LINE_OFFSETS: [isize; 4] = [-2, -1, 1, 2];

/// Weights of the cubic through `(-2, v0), (-1, v1), (1, v2), (2, v3)` at 0.
pub const LINE_WEIGHTS: [f64; 4] = [-1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0, -1.0 / 6.0];

/// Cubic convolution kernel with `a = -0.5` (Keys).
#[inline]
pub fn cubic_conv_weight(distance: f64) -> f64 {
    let d = distance.abs();
    let a = CONV_A;
    if d <= 1.0 {
        (a + 2.0) * d * d * d - (a + 3.0) * d * d + 1.0
    } else if d < 2.0 {
        a * d * d * d - 5.0 * a * d * d + 8.0 * a * d - 4.0 * a
    } else {
        0.0
    }
}

/// Four samples along a line, ordered by offset `-2, -1, +1, +2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSamples(pub [f64; 4]);

/// Value at offset 0 of the cubic interpolating the line samples.
#[inline]
pub fn predict_line_center(line: LineSamples) -> f64 {
    line.0.iter().zip(LINE_WEIGHTS).map(|(v, w)| v * w).sum()
}

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }
}

/// The pair of twelve-element matrices drawn from the 16-pixel neighborhood.
///
/// `vertical` is 4x3 with the vertical-line pixels in its middle column;
/// `horizontal` is 3x4 with the horizontal-line pixels in its middle row. The
/// remaining eight entries of each are the diagonal-line pixels, which flare
/// outwards with distance from the target.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicPair {
    pub vertical: Matrix,
    pub horizontal: Matrix,
}

/// Vertical hyperbola: row `i` holds the pixels at row offset `r` and column
/// offsets `-|r|, 0, +|r|`, for `r` in [`LINE_OFFSETS`].
pub fn vertical_matrix(lookup: impl Fn(isize, isize) -> Option<f64>) -> Option<Matrix> {
    let mut m = Matrix::new(4, 3, vec![0.0; 12]);
    for (i, &r) in LINE_OFFSETS.iter().enumerate() {
        let spread = r.abs();
        for (j, c) in [-spread, 0, spread].into_iter().enumerate() {
            m.set(i, j, lookup(r, c)?);
        }
    }
    Some(m)
}

/// Horizontal hyperbola: column `j` holds the pixels at column offset `c` and
/// row offsets `-|c|, 0, +|c|`.
pub fn horizontal_matrix(lookup: impl Fn(isize, isize) -> Option<f64>) -> Option<Matrix> {
    let mut m = Matrix::new(3, 4, vec![0.0; 12]);
    for (j, &c) in LINE_OFFSETS.iter().enumerate() {
        let spread = c.abs();
        for (i, r) in [-spread, 0, spread].into_iter().enumerate() {
            m.set(i, j, lookup(r, c)?);
        }
    }
    Some(m)
}

/// Builds both matrices, or `None` if any of the 16 pixels is unavailable.
pub fn build_hyperbolic_matrices(lookup: impl Fn(isize, isize) -> Option<f64>) -> Option<HyperbolicPair> {
    Some(HyperbolicPair {
        vertical: vertical_matrix(&lookup)?,
        horizontal: horizontal_matrix(&lookup)?,
    })
}

/// Inserts one interpolated sample between every adjacent pair along `len`
/// values spaced by `stride`, reading with edge replication.
fn upsample_axis(
    src: &[f64],
    len: usize,
    stride: usize,
    at: impl Fn(usize) -> usize,
    out: &mut [f64],
    out_stride: usize,
) {
    let tap = |k: isize| -> f64 {
        let k = k.clamp(0, len as isize - 1) as usize;
        src[at(k * stride)]
    };
    // Midpoint at k + 0.5 sees taps k-1..=k+2 at distances 1.5, 0.5, 0.5, 1.5.
    let w_far = cubic_conv_weight(1.5);
    let w_near = cubic_conv_weight(0.5);
    for k in 0..len {
        out[2 * k * out_stride] = tap(k as isize);
        if k + 1 < len {
            let k = k as isize;
            let mid = w_far * tap(k - 1) + w_near * tap(k) + w_near * tap(k + 1) + w_far * tap(k + 2);
            out[(2 * k as usize + 1) * out_stride] = mid;
        }
    }
}

/// Refines an `m x n` grid to `(2m-1) x (2n-1)`.
///
/// Original entries land on even (0-based) indices unchanged; the inserted
/// midpoints come from separable cubic convolution, rows first and then
/// columns.
pub fn midpoint_upsample(matrix: &Matrix) -> Result<Matrix> {
    let (m, n) = (matrix.rows, matrix.cols);
    if m < 2 || n < 2 {
        return Err(Error::MatrixShape { rows: m, cols: n });
    }
    let (out_m, out_n) = (2 * m - 1, 2 * n - 1);

    let mut widened = vec![0.0; m * out_n];
    for r in 0..m {
        let row = &matrix.data[r * n..(r + 1) * n];
        upsample_axis(row, n, 1, |i| i, &mut widened[r * out_n..(r + 1) * out_n], 1);
    }

    let mut out = vec![0.0; out_m * out_n];
    for c in 0..out_n {
        upsample_axis(&widened, m, out_n, |i| i + c, &mut out[c..], out_n);
    }
    Ok(Matrix::new(out_m, out_n, out))
}

/// Center of the upsampled 4x3 matrix (row 3, column 2 of the 7x5 result).
pub fn vertical_center(vertical: &Matrix) -> f64 {
    debug_assert_eq!((vertical.rows, vertical.cols), (4, 3));
    let up = midpoint_upsample(vertical).expect("4x3 is a valid shape");
    up.get(3, 2)
}

/// Center of the upsampled 3x4 matrix (row 2, column 3 of the 5x7 result).
pub fn horizontal_center(horizontal: &Matrix) -> f64 {
    debug_assert_eq!((horizontal.rows, horizontal.cols), (3, 4));
    let up = midpoint_upsample(horizontal).expect("3x4 is a valid shape");
    up.get(2, 3)
}

/// The two 2-D predictions `(vertical, horizontal)` for the target pixel.
pub fn predict_2d_center(pair: &HyperbolicPair) -> (f64, f64) {
    (vertical_center(&pair.vertical), horizontal_center(&pair.horizontal))
}
