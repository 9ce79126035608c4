//! Image and mask data model.
//!
//! Samples are stored as `f64` in row-major, channel-interleaved order with a
//! top-left origin. Quantization to bytes happens only when an image is
//! written out.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A rectangular grid of real intensities with 1 or 3 channels.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    channels: usize,
    samples: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize, samples: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        if channels != 1 && channels != 3 {
            return Err(Error::UnsupportedChannels(channels));
        }
        let expected = width * height * channels;
        if samples.len() != expected {
            return Err(Error::SampleCount {
                expected,
                actual: samples.len(),
            });
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self {
            width,
            height,
            channels,
            samples,
        })
    }

    /// An image with every sample set to `value`.
    pub fn filled(width: usize, height: usize, channels: usize, value: f64) -> Result<Self> {
        Self::new(width, height, channels, vec![value; width * height * channels])
    }

    /// Builds a single-channel image from a function of `(row, col)`.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut samples = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                samples.push(f(row, col));
            }
        }
        Self::new(width, height, 1, samples)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize, channel: usize) -> f64 {
        self.samples[(row * self.width + col) * self.channels + channel]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, channel: usize, value: f64) {
        let idx = (row * self.width + col) * self.channels + channel;
        self.samples[idx] = value;
    }

    /// Extracts one channel as a single-channel image.
    pub fn channel(&self, channel: usize) -> Image {
        assert!(channel < self.channels, "channel {channel} out of range");
        let samples = self
            .samples
            .iter()
            .skip(channel)
            .step_by(self.channels)
            .copied()
            .collect();
        Image {
            width: self.width,
            height: self.height,
            channels: 1,
            samples,
        }
    }

    /// Returns `Err` unless `mask` has the same width and height.
    pub fn check_mask(&self, mask: &Mask) -> Result<()> {
        if self.width != mask.width() || self.height != mask.height() {
            return Err(Error::DimensionMismatch {
                left_name: "image",
                left_width: self.width,
                left_height: self.height,
                right_name: "mask",
                right_width: mask.width(),
                right_height: mask.height(),
            });
        }
        Ok(())
    }

    /// Returns `Err` unless `other` has identical width, height and channels.
    pub fn check_same_shape(&self, other: &Image) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch {
                left_name: "reference",
                left_width: self.width,
                left_height: self.height,
                right_name: "test",
                right_width: other.width,
                right_height: other.height,
            });
        }
        if self.channels != other.channels {
            return Err(Error::ChannelMismatch {
                left: self.channels,
                right: other.channels,
            });
        }
        Ok(())
    }
}

/// Boolean map of degraded pixels; `true` means the pixel is missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: usize,
    height: usize,
    degraded: Vec<bool>,
}

impl Mask {
    pub fn new(width: usize, height: usize, degraded: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        if degraded.len() != width * height {
            return Err(Error::SampleCount {
                expected: width * height,
                actual: degraded.len(),
            });
        }
        Ok(Self {
            width,
            height,
            degraded,
        })
    }

    /// A mask with no degraded pixels.
    pub fn intact(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut degraded = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                degraded.push(f(row, col));
            }
        }
        Self::new(width, height, degraded)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.degraded
    }

    #[inline]
    pub fn is_degraded(&self, row: usize, col: usize) -> bool {
        self.degraded[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, degraded: bool) {
        self.degraded[row * self.width + col] = degraded;
    }

    pub fn degraded_count(&self) -> usize {
        self.degraded.iter().filter(|&&d| d).count()
    }

    /// Iterates `(row, col)` of degraded pixels in row-major order.
    pub fn degraded_pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let width = self.width;
        self.degraded
            .iter()
            .enumerate()
            .filter(|(_, &d)| d)
            .map(move |(i, _)| (i / width, i % width))
    }

    /// Union of two equally sized masks.
    pub fn union(&self, other: &Mask) -> Result<Mask> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch {
                left_name: "mask",
                left_width: self.width,
                left_height: self.height,
                right_name: "mask",
                right_width: other.width,
                right_height: other.height,
            });
        }
        let degraded = self
            .degraded
            .iter()
            .zip(&other.degraded)
            .map(|(a, b)| *a || *b)
            .collect();
        Ok(Mask {
            width: self.width,
            height: self.height,
            degraded,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_construction() {
        assert_eq!(
            Image::new(0, 3, 1, vec![]),
            Err(Error::EmptyImage { width: 0, height: 3 })
        );
        assert_eq!(Image::new(1, 1, 2, vec![0.0; 2]), Err(Error::UnsupportedChannels(2)));
        assert_eq!(
            Image::new(2, 2, 1, vec![0.0; 3]),
            Err(Error::SampleCount { expected: 4, actual: 3 })
        );
        assert_eq!(
            Image::new(2, 1, 1, vec![0.0, f64::NAN]),
            Err(Error::NonFiniteSample { index: 1 })
        );
        assert!(Mask::new(2, 2, vec![false; 5]).is_err());
    }

    #[test]
    fn indexing_is_row_major_interleaved() {
        let img = Image::new(2, 2, 3, (0..12).map(f64::from).collect()).unwrap();
        assert_eq!(img.get(0, 1, 0), 3.0);
        assert_eq!(img.get(1, 0, 2), 8.0);
        assert_eq!(img.channel(1).samples(), &[1.0, 4.0, 7.0, 10.0]);
    }

    #[test]
    fn mask_pairing_is_checked() {
        let img = Image::filled(4, 4, 1, 0.0).unwrap();
        let mask = Mask::intact(5, 4).unwrap();
        let err = img.check_mask(&mask).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { right_width: 5, .. }));
    }

    #[test]
    fn degraded_pixels_enumerates_in_order() {
        let mask = Mask::from_fn(3, 2, |r, c| (r + c) % 2 == 1).unwrap();
        let px: Vec<_> = mask.degraded_pixels().collect();
        assert_eq!(px, vec![(0, 1), (1, 0), (1, 2)]);
        assert_eq!(mask.degraded_count(), 3);
    }
}
