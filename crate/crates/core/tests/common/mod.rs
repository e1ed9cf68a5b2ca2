//! Helpers shared by the integration test targets: fixture access and an
//! independent all-`f64` reference forward pass written as plain nested loops.

#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use patchlock::model::{BatchNormParams, ConvMixerParams};
use patchlock::pnm;
use patchlock::RgbImage;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn tiny_model() -> ConvMixerParams {
    patchlock::load_model(&std::fs::read(fixture("tiny.cmx1")).unwrap()).unwrap()
}

pub fn tiny_image() -> RgbImage {
    pnm::read(fixture("tiny.pgm")).unwrap()
}

/// One `u32` bit pattern per line, hexadecimal.
pub fn read_hex_lines(name: &str) -> Vec<u64> {
    std::fs::read_to_string(fixture(name))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| u64::from_str_radix(l.trim(), 16).unwrap())
        .collect()
}

pub fn gelu64(t: f64) -> f64 {
    let c = (2.0 / std::f64::consts::PI).sqrt();
    0.5 * t * (1.0 + (c * (t + 0.044715 * t.powi(3))).tanh())
}

pub fn bn64(z: f64, bn: &BatchNormParams, c: usize) -> f64 {
    (z - bn.running_mean[c] as f64) / (bn.running_var[c] as f64 + 1e-5).sqrt() * bn.gamma[c] as f64
        + bn.beta[c] as f64
}

/// `z[c][y][x]` over `d` channels.
pub type Grid = Vec<Vec<Vec<f64>>>;

/// Direct depthwise convolution with zero padding, then bias, GELU, BN and
/// the residual; then the pointwise convolution, bias, GELU and BN.
pub fn mixer_layer64(z: &Grid, layer: &patchlock::model::MixerLayer, kernel: usize) -> Grid {
    let d = z.len();
    let (h, w) = (z[0].len(), z[0][0].len());
    let pad = kernel as isize / 2;
    let mut mixed = z.clone();
    for c in 0..d {
        for y in 0..h {
            for x in 0..w {
                let mut acc = 0.0;
                for a in 0..kernel {
                    for b in 0..kernel {
                        let sy = y as isize + a as isize - pad;
                        let sx = x as isize + b as isize - pad;
                        if sy >= 0 && sx >= 0 && (sy as usize) < h && (sx as usize) < w {
                            let wv = layer.dw_weight[c * kernel * kernel + a * kernel + b] as f64;
                            acc += wv * z[c][sy as usize][sx as usize];
                        }
                    }
                }
                let pre = acc + layer.dw_bias[c] as f64;
                mixed[c][y][x] = bn64(gelu64(pre), &layer.dw_bn, c) + z[c][y][x];
            }
        }
    }
    let mut out = mixed.clone();
    for o in 0..d {
        for y in 0..h {
            for x in 0..w {
                let mut acc = 0.0;
                for i in 0..d {
                    acc += layer.pw_weight[o * d + i] as f64 * mixed[i][y][x];
                }
                out[o][y][x] = bn64(gelu64(acc + layer.pw_bias[o] as f64), &layer.pw_bn, o);
            }
        }
    }
    out
}

/// Full forward pass with no intermediate rounding.
pub fn forward64(img: &RgbImage, params: &ConvMixerParams) -> Vec<f64> {
    let cfg = params.config;
    let (p, d) = (cfg.patch, cfg.dim);
    let (gh, gw) = (cfg.height / p, cfg.width / p);
    let pixel = |c: usize, y: usize, x: usize| {
        let u = img.data()[(c * cfg.height + y) * cfg.width + x] as f64;
        u / 255.0 * 2.0 - 1.0
    };
    let mut z: Grid = vec![vec![vec![0.0; gw]; gh]; d];
    for ph in 0..gh {
        for pw in 0..gw {
            for o in 0..d {
                let mut acc = 0.0;
                for c in 0..cfg.channels {
                    for i in 0..p {
                        for j in 0..p {
                            let row = c * p * p + i * p + j;
                            acc +=
                                params.embed.row(row)[o] as f64 * pixel(c, ph * p + i, pw * p + j);
                        }
                    }
                }
                let pre = acc + params.embed_bias[o] as f64;
                z[o][ph][pw] = bn64(gelu64(pre), &params.embed_bn, o);
            }
        }
    }
    for layer in &params.layers {
        z = mixer_layer64(&z, layer, cfg.kernel);
    }
    let pooled: Vec<f64> = z
        .iter()
        .map(|plane| plane.iter().flatten().sum::<f64>() / (gh * gw) as f64)
        .collect();
    (0..cfg.classes)
        .map(|k| {
            (0..d)
                .map(|c| params.head_weight[k * d + c] as f64 * pooled[c])
                .sum::<f64>()
                + params.head_bias[k] as f64
        })
        .collect()
}
