//! Binary Netpbm I/O: `P6` (RGB) and `P5` (grayscale), maxval 255 only.
//!
//! Files are row-major interleaved; [`RgbImage`] is channel-major, so both
//! directions transpose.

use std::io;

use thiserror::Error;

use crate::image::RgbImage;

#[derive(Debug, Error)]
pub enum PnmError {
    #[error("BadPnmHeader: {0}")]
    BadHeader(String),
    #[error("UnsupportedMaxval: only maxval 255 is supported, got {0}")]
    UnsupportedMaxval(u32),
    #[error("TruncatedPixels: expected {expected} bytes of pixel data, got {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("UnsupportedChannels: PNM holds 1 or 3 channels, image has {0}")]
    UnsupportedChannels(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Encodes as `P6` for 3 channels or `P5` for 1 channel.
pub fn encode(img: &RgbImage) -> Result<Vec<u8>, PnmError> {
    let magic = match img.channels() {
        3 => "P6",
        1 => "P5",
        c => return Err(PnmError::UnsupportedChannels(c)),
    };
    let (c_n, plane) = (img.channels(), img.height() * img.width());
    let header = format!("{magic}\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.data().len());
    out.extend_from_slice(header.as_bytes());
    let data = img.data();
    for p in 0..plane {
        for c in 0..c_n {
            out.push(data[c * plane + p]);
        }
    }
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<RgbImage, PnmError> {
    let mut pos = 0;
    let magic = next_token(bytes, &mut pos)?;
    let c_n = match magic {
        b"P6" => 3,
        b"P5" => 1,
        other => {
            return Err(PnmError::BadHeader(format!(
                "unknown magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let width = parse_num(next_token(bytes, &mut pos)?, "width")?;
    let height = parse_num(next_token(bytes, &mut pos)?, "height")?;
    let maxval = parse_num(next_token(bytes, &mut pos)?, "maxval")?;
    if maxval != 255 {
        return Err(PnmError::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(PnmError::BadHeader(
            "missing whitespace after maxval".into(),
        ));
    }
    pos += 1;

    let plane = width as usize * height as usize;
    let expected = plane * c_n;
    let raster = &bytes[pos..];
    if raster.len() < expected {
        return Err(PnmError::Truncated {
            expected,
            actual: raster.len(),
        });
    }
    let mut data = vec![0u8; expected];
    for (p, px) in raster[..expected].chunks_exact(c_n).enumerate() {
        for (c, &v) in px.iter().enumerate() {
            data[c * plane + p] = v;
        }
    }
    Ok(RgbImage::new(c_n, height as usize, width as usize, data).expect("length checked"))
}

pub fn read(path: impl AsRef<std::path::Path>) -> Result<RgbImage, PnmError> {
    decode(&std::fs::read(path)?)
}

fn next_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8], PnmError> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(PnmError::BadHeader("unexpected end of header".into()));
    }
    Ok(&bytes[start..*pos])
}

fn parse_num(tok: &[u8], field: &str) -> Result<u32, PnmError> {
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| PnmError::BadHeader(format!("bad {field}")))
}
