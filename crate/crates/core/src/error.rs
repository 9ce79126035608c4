use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("unsupported channel count {0} (expected 1 or 3)")]
    UnsupportedChannels(usize),

    #[error("sample buffer holds {actual} values, expected {expected}")]
    SampleCount { expected: usize, actual: usize },

    #[error("sample {index} is not finite")]
    NonFiniteSample { index: usize },

    #[error(
        "dimension mismatch: {left_name} is {left_width}x{left_height}, {right_name} is {right_width}x{right_height}"
    )]
    DimensionMismatch {
        left_name: &'static str,
        left_width: usize,
        left_height: usize,
        right_name: &'static str,
        right_width: usize,
        right_height: usize,
    },

    #[error("channel mismatch: {left} vs {right}")]
    ChannelMismatch { left: usize, right: usize },

    #[error("matrix must be at least 2x2, got {rows}x{cols}")]
    MatrixShape { rows: usize, cols: usize },

    #[error("image is {width}x{height}, smaller than the {window}x{window} window")]
    TooSmall { width: usize, height: usize, window: usize },

    #[error("invalid line spec: {0}")]
    InvalidLineSpec(&'static str),

    #[error("invalid engine config: {0}")]
    InvalidConfig(&'static str),
}
