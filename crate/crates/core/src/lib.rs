#![cfg_attr(not(feature = "std"), no_std)]

//! Inpainting of line-shaped image defects.
//!
//! Every missing pixel is predicted from the sixteen pixels lying on the
//! horizontal, vertical and two diagonal lines through it (two pixels on each
//! side). Four predictions come from fitting a cubic along each line, two more
//! come from bicubic midpoint upsampling of a pair of twelve-pixel
//! "hyperbolic" matrices, and the six are averaged after the most deviant
//! line prediction has been replaced.
//!
//! The crate depends only on [`core`] and [`alloc`]. File formats, the CLI and
//! the experiment harness live in the `hyperpaint` crate. With the `parallel`
//! feature (on by default) fill passes are evaluated with rayon; results are
//! identical for any thread count.

extern crate alloc;

pub mod degrade;
pub mod engine;
mod error;
pub mod kernels;
pub mod metrics;
pub mod raster;

pub use degrade::{apply_mask, generate_line_mask, LineSpec};
pub use engine::{inpaint, inpaint_with_report, EngineConfig, InpaintReport};
pub use error::{Error, Result};
pub use metrics::{psnr, ssim, QualityReport};
pub use raster::{Image, Mask};
