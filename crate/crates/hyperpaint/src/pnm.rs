//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.

use std::fs;
use std::path::Path;

use hyperpaint_core::{Image, Mask};

use crate::error::{Error, Result};

/// Header field a parse error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeaderField {
    Magic,
    Width,
    Height,
    Maxval,
}

impl std::fmt::Display for HeaderField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HeaderField::Magic => "magic",
            HeaderField::Width => "width",
            HeaderField::Height => "height",
            HeaderField::Maxval => "maxval",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Header {
    channels: usize,
    width: usize,
    height: usize,
    data_offset: usize,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&b) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, field: HeaderField) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Header {
            field,
            reason: if digits.is_empty() {
                "expected a decimal number".into()
            } else {
                format!("{digits} is out of range")
            },
        })
    }
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => {
            return Err(Error::Header {
                field: HeaderField::Magic,
                reason: "expected P5 or P6".into(),
            })
        }
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.number(HeaderField::Width)?;
    let height = cur.number(HeaderField::Height)?;
    let maxval = cur.number(HeaderField::Maxval)?;
    for (field, v) in [(HeaderField::Width, width), (HeaderField::Height, height)] {
        if v == 0 {
            return Err(Error::Header {
                field,
                reason: "must be at least 1".into(),
            });
        }
    }
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => {}
        _ => {
            return Err(Error::Header {
                field: HeaderField::Maxval,
                reason: "missing whitespace after maxval".into(),
            })
        }
    }
    Ok(Header {
        channels,
        width,
        height,
        data_offset: cur.pos + 1,
    })
}

/// Decodes a binary PGM or PPM held in memory.
pub fn decode_pnm(bytes: &[u8]) -> Result<Image> {
    let header = parse_header(bytes)?;
    let expected = header
        .width
        .checked_mul(header.height)
        .and_then(|n| n.checked_mul(header.channels))
        .ok_or(Error::Header {
            field: HeaderField::Width,
            reason: "image too large".into(),
        })?;
    let payload = &bytes[header.data_offset..];
    if payload.len() < expected {
        return Err(Error::Truncated {
            expected,
            actual: payload.len(),
        });
    }
    let samples = payload[..expected].iter().map(|&b| f64::from(b)).collect();
    Ok(Image::new(header.width, header.height, header.channels, samples)?)
}

/// Rounds half up and clamps to a byte.
pub fn quantize(sample: f64) -> u8 {
    (sample + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Encodes as P5 or P6 depending on the channel count.
pub fn encode_pnm(image: &Image) -> Vec<u8> {
    let magic = if image.channels() == 1 { "P5" } else { "P6" };
    let mut out = format!("{magic}\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend(image.samples().iter().map(|&s| quantize(s)));
    out
}

pub fn load_pnm(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::io(path, source))?;
    decode_pnm(&bytes)
}

pub fn save_pnm(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_pnm(image)).map_err(|source| Error::io(path, source))
}

/// Reads a P5 mask: zero is intact, any other value is degraded.
pub fn mask_from_pgm(path: impl AsRef<Path>) -> Result<Mask> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::io(path, source))?;
    decode_mask(&bytes)
}

pub fn decode_mask(bytes: &[u8]) -> Result<Mask> {
    if bytes.get(..2) != Some(b"P5") {
        return Err(Error::Header {
            field: HeaderField::Magic,
            reason: "mask must be P5".into(),
        });
    }
    let img = decode_pnm(bytes)?;
    let degraded = img.samples().iter().map(|&v| v != 0.0).collect();
    Ok(Mask::new(img.width(), img.height(), degraded)?)
}

/// Writes a mask as P5 with 255 for degraded pixels.
pub fn save_mask_pgm(mask: &Mask, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend(mask.as_slice().iter().map(|&d| if d { 255u8 } else { 0 }));
    fs::write(path, out).map_err(|source| Error::io(path, source))
}
