//! Full-image PSNR and single-scale SSIM.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::raster::Image;

pub const PEAK: f64 = 255.0;

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    /// `f64::INFINITY` when the images are identical.
    pub psnr_db: f64,
    pub ssim: f64,
}

impl QualityReport {
    pub fn compute(reference: &Image, test: &Image) -> Result<Self> {
        Ok(Self {
            psnr_db: psnr(reference, test)?,
            ssim: ssim(reference, test)?,
        })
    }
}

/// Mean squared error over every sample of every channel.
pub fn mse(reference: &Image, test: &Image) -> Result<f64> {
    reference.check_same_shape(test)?;
    let sum: f64 = reference
        .samples()
        .iter()
        .zip(test.samples())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(sum / reference.samples().len() as f64)
}

/// Peak signal-to-noise ratio in dB; `f64::INFINITY` if the images match.
pub fn psnr(reference: &Image, test: &Image) -> Result<f64> {
    let mse = mse(reference, test)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * libm::log10(PEAK * PEAK / mse))
}

fn luminance(image: &Image) -> Vec<f64> {
    match image.channels() {
        1 => image.samples().to_vec(),
        _ => image
            .samples()
            .chunks_exact(3)
            .map(|p| 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2])
            .collect(),
    }
}

fn gaussian_window() -> [f64; SSIM_WINDOW] {
    let mut w = [0.0; SSIM_WINDOW];
    let center = (SSIM_WINDOW / 2) as f64;
    for (i, v) in w.iter_mut().enumerate() {
        let d = i as f64 - center;
        *v = libm::exp(-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA));
    }
    let total: f64 = w.iter().sum();
    w.map(|v| v / total)
}

/// "Valid" separable filtering: output is `(w - k + 1) x (h - k + 1)`.
fn filter_valid(src: &[f64], width: usize, height: usize, kernel: &[f64]) -> Vec<f64> {
    let k = kernel.len();
    let (ow, oh) = (width - k + 1, height - k + 1);
    let mut rows = vec![0.0; ow * height];
    for r in 0..height {
        let line = &src[r * width..(r + 1) * width];
        for c in 0..ow {
            rows[r * ow + c] = line[c..c + k].iter().zip(kernel).map(|(a, b)| a * b).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for r in 0..oh {
        for c in 0..ow {
            out[r * ow + c] = kernel.iter().enumerate().map(|(i, w)| rows[(r + i) * ow + c] * w).sum();
        }
    }
    out
}

/// Structural similarity with an 11x11 Gaussian window (sigma 1.5), averaged
/// over every window position that fits inside the image. Color images are
/// compared on BT.601 luminance.
pub fn ssim(reference: &Image, test: &Image) -> Result<f64> {
    reference.check_same_shape(test)?;
    let (w, h) = (reference.width(), reference.height());
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::TooSmall {
            width: w,
            height: h,
            window: SSIM_WINDOW,
        });
    }
    let x = luminance(reference);
    let y = luminance(test);
    let kernel = gaussian_window();

    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a * b).collect();

    let mu_x = filter_valid(&x, w, h, &kernel);
    let mu_y = filter_valid(&y, w, h, &kernel);
    let e_xx = filter_valid(&xx, w, h, &kernel);
    let e_yy = filter_valid(&yy, w, h, &kernel);
    let e_xy = filter_valid(&xy, w, h, &kernel);

    let c1 = (SSIM_K1 * PEAK) * (SSIM_K1 * PEAK);
    let c2 = (SSIM_K2 * PEAK) * (SSIM_K2 * PEAK);

    let mut total = 0.0;
    for i in 0..mu_x.len() {
        let (mx, my) = (mu_x[i], mu_y[i]);
        let (mxx, myy) = (mx * mx, my * my);
        let mxy = mx * my;
        let var_x = e_xx[i] - mxx;
        let var_y = e_yy[i] - myy;
        let cov = e_xy[i] - mxy;
        let num = (2.0 * mxy + c1) * (2.0 * cov + c2);
        let den = (mxx + myy + c1) * (var_x + var_y + c2);
        total += num / den;
    }
    Ok(total / mu_x.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn noisy(base: &Image, amplitude: f64, seed: u64) -> Image {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = base
            .samples()
            .iter()
            .map(|v| (v + rng.gen_range(-amplitude..=amplitude)).clamp(0.0, 255.0))
            .collect();
        Image::new(base.width(), base.height(), base.channels(), samples).unwrap()
    }

    fn gradient(w: usize, h: usize) -> Image {
        Image::from_fn(w, h, |r, c| ((r * 5 + c * 3) % 200) as f64 + 20.0).unwrap()
    }

    #[test]
    fn psnr_fixtures() {
        let a = gradient(16, 16);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);

        let b = Image::new(16, 16, 1, a.samples().iter().map(|v| v + 1.0).collect()).unwrap();
        let expected = 20.0 * libm::log10(255.0);
        assert!((psnr(&a, &b).unwrap() - 48.1308).abs() < 1e-3);
        assert!((psnr(&a, &b).unwrap() - expected).abs() < 1e-12);

        let black = Image::filled(4, 4, 3, 0.0).unwrap();
        let white = Image::filled(4, 4, 3, 255.0).unwrap();
        assert_eq!(psnr(&black, &white).unwrap(), 0.0);
    }

    #[test]
    fn psnr_matches_direct_mse_oracle() {
        let a = gradient(23, 17);
        for seed in 0..20 {
            let b = noisy(&a, 30.0, seed);
            let mut acc = 0.0;
            for i in 0..a.samples().len() {
                let d = a.samples()[i] - b.samples()[i];
                acc += d * d;
            }
            let oracle = 10.0 * libm::log10(255.0 * 255.0 / (acc / a.samples().len() as f64));
            assert!((psnr(&a, &b).unwrap() - oracle).abs() <= 1e-9);
            assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
        }
    }

    #[test]
    fn psnr_decreases_with_noise() {
        let a = gradient(64, 64);
        let values: Vec<f64> = [1.0, 2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&amp| psnr(&a, &noisy(&a, amp, 7)).unwrap())
            .collect();
        assert!(values.windows(2).all(|p| p[0] > p[1]), "{values:?}");
    }

    #[test]
    fn ssim_fixtures() {
        let a = gradient(32, 24);
        assert_eq!(ssim(&a, &a).unwrap(), 1.0);

        let c100 = Image::filled(16, 16, 1, 100.0).unwrap();
        let c110 = Image::filled(16, 16, 1, 110.0).unwrap();
        let c1 = (0.01f64 * 255.0).powi(2);
        let closed = (2.0 * 100.0 * 110.0 + c1) / (100.0f64.powi(2) + 110.0f64.powi(2) + c1);
        let got = ssim(&c100, &c110).unwrap();
        assert!((got - 0.995477).abs() < 1e-6, "{got}");
        assert!((got - closed).abs() < 1e-9);

        let n = noisy(&a, 80.0, 3);
        let s = ssim(&a, &n).unwrap();
        assert!(s < 0.99);
        assert_eq!(s, ssim(&n, &a).unwrap());
    }

    #[test]
    fn ssim_color_uses_luminance() {
        let rgb = Image::new(12, 12, 3, (0..12 * 12 * 3).map(|i| (i % 251) as f64).collect()).unwrap();
        assert_eq!(ssim(&rgb, &rgb).unwrap(), 1.0);
    }

    #[test]
    fn ssim_rejects_small_and_mismatched() {
        let small = Image::filled(10, 12, 1, 0.0).unwrap();
        assert!(matches!(ssim(&small, &small), Err(Error::TooSmall { .. })));
        let a = Image::filled(12, 12, 1, 0.0).unwrap();
        let b = Image::filled(13, 12, 1, 0.0).unwrap();
        assert!(matches!(ssim(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(psnr(&a, &b), Err(Error::DimensionMismatch { .. })));
        let c = Image::filled(12, 12, 3, 0.0).unwrap();
        assert!(matches!(psnr(&a, &c), Err(Error::ChannelMismatch { .. })));
    }
}
