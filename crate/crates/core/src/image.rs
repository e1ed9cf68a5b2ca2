//! Block-wise image transformation.
//!
//! An image is cut into non-overlapping `M`×`M` blocks. Each block is
//! flattened channel-major (`k = c·M² + i·M + j`), the same order the patch
//! embedding uses for rows of its weight matrix. The pixel permutation and
//! the negative-positive flip are then applied to every block with the same
//! key, and the blocks are put back in place.
//!
//! Everything here operates on bytes. Both transformations are bijections on
//! `u8`, so encrypted images are stored losslessly and decrypt exactly.

use thiserror::Error;

use crate::keys::{FlipKey, KeyPair, PermutationKey};
use crate::tensor::Tensor3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("NotDivisible: block size {block} does not divide {height}x{width}")]
    NotDivisible {
        block: usize,
        height: usize,
        width: usize,
    },
    #[error("BadShape: {p_b} pixels per block is not block²·channels for block size {block}")]
    BadShape { p_b: usize, block: usize },
    #[error("KeyMismatch: key covers {key} pixels per block, image blocks have {p_b}")]
    KeyMismatch { key: usize, p_b: usize },
    #[error("DataLength: expected {expected} bytes, got {actual}")]
    DataLength { expected: usize, actual: usize },
}

/// 8-bit image, channel-major (`c·H·W + h·W + w`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    channels: usize,
    height: usize,
    width: usize,
    data: Vec<u8>,
}

impl RgbImage {
    pub fn new(
        channels: usize,
        height: usize,
        width: usize,
        data: Vec<u8>,
    ) -> Result<Self, CodecError> {
        let expected = channels * height * width;
        if data.len() != expected {
            return Err(CodecError::DataLength {
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            channels,
            height,
            width,
            data,
        })
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }
}

/// `blocks_h × blocks_w` grid of flattened blocks, `p_b` bytes each,
/// blocks stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockImage {
    blocks_w: usize,
    blocks_h: usize,
    p_b: usize,
    data: Vec<u8>,
}

impl BlockImage {
    pub fn new(
        blocks_h: usize,
        blocks_w: usize,
        p_b: usize,
        data: Vec<u8>,
    ) -> Result<Self, CodecError> {
        let expected = blocks_h * blocks_w * p_b;
        if data.len() != expected {
            return Err(CodecError::DataLength {
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            blocks_w,
            blocks_h,
            p_b,
            data,
        })
    }

    pub fn blocks_w(&self) -> usize {
        self.blocks_w
    }

    pub fn blocks_h(&self) -> usize {
        self.blocks_h
    }

    pub fn p_b(&self) -> usize {
        self.p_b
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn block(&self, b_h: usize, b_w: usize) -> &[u8] {
        let start = (b_h * self.blocks_w + b_w) * self.p_b;
        &self.data[start..start + self.p_b]
    }

    fn map_blocks(&self, mut f: impl FnMut(&[u8], &mut [u8])) -> Self {
        let mut data = vec![0u8; self.data.len()];
        for (src, dst) in self
            .data
            .chunks_exact(self.p_b)
            .zip(data.chunks_exact_mut(self.p_b))
        {
            f(src, dst);
        }
        Self {
            blocks_w: self.blocks_w,
            blocks_h: self.blocks_h,
            p_b: self.p_b,
            data,
        }
    }
}

/// Image scaled to `[-1, 1]` by `(u/255 - 1/2) / (1/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedTensor(Tensor3);

impl NormalizedTensor {
    pub fn as_tensor(&self) -> &Tensor3 {
        &self.0
    }

    pub fn into_tensor(self) -> Tensor3 {
        self.0
    }
}

pub fn segment_blocks(img: &RgbImage, block: usize) -> Result<BlockImage, CodecError> {
    let (c_n, h_n, w_n) = (img.channels, img.height, img.width);
    if block == 0 || h_n % block != 0 || w_n % block != 0 {
        return Err(CodecError::NotDivisible {
            block,
            height: h_n,
            width: w_n,
        });
    }
    let (blocks_h, blocks_w) = (h_n / block, w_n / block);
    let p_b = block * block * c_n;
    let mut data = Vec::with_capacity(img.data.len());
    for b_h in 0..blocks_h {
        for b_w in 0..blocks_w {
            for c in 0..c_n {
                for i in 0..block {
                    let row = (c * h_n + b_h * block + i) * w_n + b_w * block;
                    data.extend_from_slice(&img.data[row..row + block]);
                }
            }
        }
    }
    Ok(BlockImage {
        blocks_w,
        blocks_h,
        p_b,
        data,
    })
}

pub fn integrate_blocks(blocks: &BlockImage, block: usize) -> Result<RgbImage, CodecError> {
    let area = block * block;
    if area == 0 || blocks.p_b == 0 || !blocks.p_b.is_multiple_of(area) {
        return Err(CodecError::BadShape {
            p_b: blocks.p_b,
            block,
        });
    }
    let c_n = blocks.p_b / area;
    let (h_n, w_n) = (blocks.blocks_h * block, blocks.blocks_w * block);
    let mut data = vec![0u8; c_n * h_n * w_n];
    let mut src = blocks.data.chunks_exact(block);
    for b_h in 0..blocks.blocks_h {
        for b_w in 0..blocks.blocks_w {
            for c in 0..c_n {
                for i in 0..block {
                    let row = (c * h_n + b_h * block + i) * w_n + b_w * block;
                    data[row..row + block].copy_from_slice(src.next().unwrap());
                }
            }
        }
    }
    Ok(RgbImage {
        channels: c_n,
        height: h_n,
        width: w_n,
        data,
    })
}

/// `out(w, h, k) = in(w, h, v_k)` in every block.
pub fn shuffle_pixels(blocks: &BlockImage, key: &PermutationKey) -> Result<BlockImage, CodecError> {
    check_key(key.len(), blocks.p_b)?;
    let v = key.as_slice();
    Ok(blocks.map_blocks(|src, dst| {
        for (out, &from) in dst.iter_mut().zip(v) {
            *out = src[from];
        }
    }))
}

/// Replaces `p` with `255 - p` (equivalently `p ^ 0xFF`) where `r_k = 1`.
pub fn flip_pixels(blocks: &BlockImage, key: &FlipKey) -> Result<BlockImage, CodecError> {
    check_key(key.len(), blocks.p_b)?;
    let r = key.as_slice();
    Ok(blocks.map_blocks(|src, dst| {
        for ((out, &p), &bit) in dst.iter_mut().zip(src).zip(r) {
            *out = p ^ (0u8.wrapping_sub(bit));
        }
    }))
}

/// Segment, shuffle, flip, integrate.
pub fn encrypt_image(img: &RgbImage, keys: &KeyPair, block: usize) -> Result<RgbImage, CodecError> {
    let blocks = segment_blocks(img, block)?;
    check_key(keys.p_b(), blocks.p_b)?;
    let shuffled = shuffle_pixels(&blocks, &keys.perm)?;
    let flipped = flip_pixels(&shuffled, &keys.flip)?;
    integrate_blocks(&flipped, block)
}

/// Segment, flip, inverse-shuffle, integrate.
pub fn decrypt_image(img: &RgbImage, keys: &KeyPair, block: usize) -> Result<RgbImage, CodecError> {
    let blocks = segment_blocks(img, block)?;
    check_key(keys.p_b(), blocks.p_b)?;
    let unflipped = flip_pixels(&blocks, &keys.flip)?;
    let unshuffled = shuffle_pixels(&unflipped, &keys.perm.inverse())?;
    integrate_blocks(&unshuffled, block)
}

fn check_key(key: usize, p_b: usize) -> Result<(), CodecError> {
    if key != p_b {
        return Err(CodecError::KeyMismatch { key, p_b });
    }
    Ok(())
}

/// `(2u - 255) / 255` in `f32`. Algebraically `2·(u/255) - 1`; the numerator
/// form is a single correctly rounded division of an exact integer, so
/// `table[255 - u] == -table[u]` holds bit for bit.
fn normalize_table() -> [f32; 256] {
    std::array::from_fn(|u| normalize_byte(u as u8))
}

pub fn normalize_byte(u: u8) -> f32 {
    (2.0 * u as f32 - 255.0) / 255.0
}

pub fn normalize(img: &RgbImage) -> NormalizedTensor {
    let table = normalize_table();
    let data = img.data.iter().map(|&u| table[u as usize]).collect();
    NormalizedTensor(Tensor3 {
        channels: img.channels,
        height: img.height,
        width: img.width,
        data,
    })
}
