//! Forward-only ConvMixer.
//!
//! ```text
//! z0 = BN(gelu(x_p · E + b))                      patch embedding, matrix form
//! z' = BN(gelu(DepthwiseConv(z))) + z             per layer
//! z  = BN(gelu(PointwiseConv(z')))
//! logits = W · GAP(z) + b
//! ```
//!
//! Storage is `f32`. Every reduction (dot product, convolution window,
//! pooling sum) accumulates in `f64` in ascending input order and is rounded
//! to `f32` once. The inner loops run over independent outputs, never over a
//! single reduction, so results do not depend on vector width or threads.

use rayon::prelude::*;
use thiserror::Error;

use crate::image::{normalize, NormalizedTensor, RgbImage};
use crate::model::{BatchNormParams, ConvMixerParams, MixerLayer, ModelError};
use crate::tensor::Tensor3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InferError {
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("EvenKernel: depthwise kernel size {0} has no symmetric same-padding")]
    EvenKernel(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Pre-softmax class scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Logits(pub Vec<f32>);

impl Logits {
    /// Index of the largest logit; ties go to the lowest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.0.iter().enumerate() {
            if v > self.0[best] {
                best = i;
            }
        }
        best
    }

    /// Difference between the largest and second-largest logit
    /// (infinite for a single class).
    pub fn top2_gap(&self) -> f32 {
        let mut top = f32::NEG_INFINITY;
        let mut second = f32::NEG_INFINITY;
        for &v in &self.0 {
            if v > top {
                second = top;
                top = v;
            } else if v > second {
                second = v;
            }
        }
        top - second
    }

    pub fn max_abs_diff(&self, other: &Logits) -> f32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f32::max)
    }
}

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

/// Tanh-approximated GELU, evaluated in `f64`.
pub fn gelu(t: f32) -> f32 {
    let t = t as f64;
    (0.5 * t * (1.0 + (SQRT_2_OVER_PI * (t + 0.044715 * t * t * t)).tanh())) as f32
}

pub fn softmax(logits: &Logits) -> Vec<f32> {
    let max = logits.0.iter().copied().fold(f32::NEG_INFINITY, f32::max);
    let exps: Vec<f64> = logits.0.iter().map(|&v| ((v - max) as f64).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.iter().map(|e| (e / total) as f32).collect()
}

/// Per-channel `(z - mean) / √(var + ε) · γ + β`, computed in `f64`.
#[derive(Debug, Clone)]
struct BnChannel {
    mean: f64,
    denom: f64,
    gamma: f64,
    beta: f64,
}

impl BnChannel {
    fn table(bn: &BatchNormParams) -> Vec<BnChannel> {
        (0..bn.dim())
            .map(|c| BnChannel {
                mean: bn.running_mean[c] as f64,
                denom: (bn.running_var[c] as f64 + bn.epsilon).sqrt(),
                gamma: bn.gamma[c] as f64,
                beta: bn.beta[c] as f64,
            })
            .collect()
    }

    #[inline]
    fn apply(&self, z: f32) -> f32 {
        ((z as f64 - self.mean) / self.denom * self.gamma + self.beta) as f32
    }
}

pub fn batchnorm_infer(z: &Tensor3, bn: &BatchNormParams) -> Result<Tensor3, InferError> {
    if bn.dim() != z.channels {
        return Err(InferError::ShapeMismatch(format!(
            "batch norm has {} channels, tensor has {}",
            bn.dim(),
            z.channels
        )));
    }
    let table = BnChannel::table(bn);
    let n = z.plane_len();
    let mut out = z.clone();
    for (c, plane) in out
        .data
        .chunks_exact_mut(n.max(1))
        .enumerate()
        .take(z.channels)
    {
        plane.iter_mut().for_each(|v| *v = table[c].apply(*v));
    }
    Ok(out)
}

/// Accumulator plus bias, rounded once, then GELU.
#[inline]
fn activate(acc: f64, bias: f32) -> f32 {
    gelu((acc + bias as f64) as f32)
}

struct PreparedLayer {
    dw: Vec<f64>,
    dw_bias: Vec<f32>,
    dw_bn: Vec<BnChannel>,
    /// Transposed pointwise weight: `pw_t[i·dim + o]`.
    pw_t: Vec<f64>,
    pw_bias: Vec<f32>,
    pw_bn: Vec<BnChannel>,
}

impl PreparedLayer {
    fn new(layer: &MixerLayer, dim: usize) -> Self {
        let mut pw_t = vec![0.0; dim * dim];
        for o in 0..dim {
            for i in 0..dim {
                pw_t[i * dim + o] = layer.pw_weight[o * dim + i] as f64;
            }
        }
        Self {
            dw: layer.dw_weight.iter().map(|&w| w as f64).collect(),
            dw_bias: layer.dw_bias.clone(),
            dw_bn: BnChannel::table(&layer.dw_bn),
            pw_t,
            pw_bias: layer.pw_bias.clone(),
            pw_bn: BnChannel::table(&layer.pw_bn),
        }
    }

    fn check(layer: &MixerLayer, z: &Tensor3, kernel: usize) -> Result<(), InferError> {
        if kernel.is_multiple_of(2) {
            return Err(InferError::EvenKernel(kernel));
        }
        let d = z.channels;
        let ok = layer.dw_weight.len() == d * kernel * kernel
            && layer.dw_bias.len() == d
            && layer.dw_bn.dim() == d
            && layer.pw_weight.len() == d * d
            && layer.pw_bias.len() == d
            && layer.pw_bn.dim() == d;
        if !ok {
            return Err(InferError::ShapeMismatch(format!(
                "mixer layer weights do not fit a {d}-channel input with kernel {kernel}"
            )));
        }
        Ok(())
    }

    fn run(&self, z: &Tensor3, kernel: usize) -> Tensor3 {
        let mut mixed = self.depthwise_act(z, kernel);
        apply_bn(&mut mixed, &self.dw_bn);
        add_residual(&mut mixed, z);
        let mut out = self.pointwise_act(&mixed);
        apply_bn(&mut out, &self.pw_bn);
        out
    }

    /// `gelu(DepthwiseConv(z))`, before BN and the residual.
    fn depthwise_act(&self, z: &Tensor3, kernel: usize) -> Tensor3 {
        let (d, h, w) = z.shape();
        let hw = h * w;
        let pad = kernel / 2;
        let k2 = kernel * kernel;

        let mut act = vec![0f32; d * hw];
        let mut acc = vec![0f64; hw];
        for c in 0..d {
            let src = z.plane(c);
            let taps = &self.dw[c * k2..(c + 1) * k2];
            acc.iter_mut().for_each(|a| *a = 0.0);
            for a in 0..kernel {
                for b in 0..kernel {
                    let wv = taps[a * kernel + b];
                    // output rows y with 0 <= y + a - pad < h, same for columns
                    let y0 = pad.saturating_sub(a);
                    let y1 = (h + pad).saturating_sub(a).min(h);
                    let x0 = pad.saturating_sub(b);
                    let x1 = (w + pad).saturating_sub(b).min(w);
                    if x0 >= x1 {
                        continue;
                    }
                    for y in y0..y1 {
                        let sy = y + a - pad;
                        let dst = &mut acc[y * w + x0..y * w + x1];
                        let s = &src[sy * w + x0 + b - pad..sy * w + x1 + b - pad];
                        for (o, &v) in dst.iter_mut().zip(s) {
                            *o += wv * v as f64;
                        }
                    }
                }
            }
            for (o, &a) in act[c * hw..(c + 1) * hw].iter_mut().zip(&acc) {
                *o = activate(a, self.dw_bias[c]);
            }
        }
        Tensor3 {
            channels: d,
            height: h,
            width: w,
            data: act,
        }
    }

    /// `gelu(PointwiseConv(z))` over tiles of spatial positions, before BN.
    fn pointwise_act(&self, z: &Tensor3) -> Tensor3 {
        let (d, h, w) = z.shape();
        let hw = h * w;
        let mixed = &z.data;
        const TILE: usize = 8;
        let mut out = vec![0f32; d * hw];
        let mut acc = vec![0f64; TILE * d];
        for p0 in (0..hw).step_by(TILE) {
            let tile = TILE.min(hw - p0);
            acc.iter_mut().for_each(|a| *a = 0.0);
            for i in 0..d {
                let row = &self.pw_t[i * d..(i + 1) * d];
                let xs = &mixed[i * hw + p0..i * hw + p0 + tile];
                for (t, &x) in xs.iter().enumerate() {
                    let x = x as f64;
                    for (a, &wv) in acc[t * d..(t + 1) * d].iter_mut().zip(row) {
                        *a += wv * x;
                    }
                }
            }
            for t in 0..tile {
                for o in 0..d {
                    out[o * hw + p0 + t] = activate(acc[t * d + o], self.pw_bias[o]);
                }
            }
        }
        Tensor3 {
            channels: d,
            height: h,
            width: w,
            data: out,
        }
    }
}

fn apply_bn(z: &mut Tensor3, table: &[BnChannel]) {
    let n = z.plane_len();
    if n == 0 {
        return;
    }
    for (plane, bn) in z.data.chunks_exact_mut(n).zip(table) {
        plane.iter_mut().for_each(|v| *v = bn.apply(*v));
    }
}

fn add_residual(z: &mut Tensor3, residual: &Tensor3) {
    for (o, &r) in z.data.iter_mut().zip(&residual.data) {
        *o += r;
    }
}

/// Model weights converted once for repeated inference.
pub struct Engine<'a> {
    params: &'a ConvMixerParams,
    embed: Vec<f64>,
    embed_bn: Vec<BnChannel>,
    layers: Vec<PreparedLayer>,
}

impl<'a> Engine<'a> {
    pub fn new(params: &'a ConvMixerParams) -> Result<Self, InferError> {
        params.validate()?;
        let d = params.config.dim;
        Ok(Self {
            params,
            embed: params.embed.data().iter().map(|&v| v as f64).collect(),
            embed_bn: BnChannel::table(&params.embed_bn),
            layers: params
                .layers
                .iter()
                .map(|l| PreparedLayer::new(l, d))
                .collect(),
        })
    }

    pub fn params(&self) -> &ConvMixerParams {
        self.params
    }

    fn check_input(&self, x: &Tensor3) -> Result<(), InferError> {
        let c = &self.params.config;
        if x.shape() != (c.channels, c.height, c.width) {
            return Err(InferError::ShapeMismatch(format!(
                "input is {:?}, model expects {:?}",
                x.shape(),
                (c.channels, c.height, c.width)
            )));
        }
        Ok(())
    }

    /// `x_p · E + b` for every patch, before activation and BN.
    pub fn embed_linear(&self, x: &NormalizedTensor) -> Result<Tensor3, InferError> {
        self.embed_impl(x.as_tensor(), false)
    }

    pub fn patch_embed(&self, x: &NormalizedTensor) -> Result<Tensor3, InferError> {
        let mut z = self.embed_impl(x.as_tensor(), true)?;
        apply_bn(&mut z, &self.embed_bn);
        Ok(z)
    }

    fn embed_impl(&self, x: &Tensor3, with_gelu: bool) -> Result<Tensor3, InferError> {
        self.check_input(x)?;
        let cfg = &self.params.config;
        let (p, d) = (cfg.patch, cfg.dim);
        let (gh, gw) = cfg.grid();
        let n = gh * gw;
        let p_b = cfg.patch_len();
        let bias = &self.params.embed_bias;
        let mut out = vec![0f32; d * n];
        let mut patch = vec![0f64; p_b];
        let mut acc = vec![0f64; d];
        for ph in 0..gh {
            for pw in 0..gw {
                // canonical flattening: k = c·P² + i·P + j
                let mut k = 0;
                for c in 0..cfg.channels {
                    for i in 0..p {
                        for j in 0..p {
                            patch[k] = x.at(c, ph * p + i, pw * p + j) as f64;
                            k += 1;
                        }
                    }
                }
                acc.iter_mut().for_each(|a| *a = 0.0);
                for (k, &xk) in patch.iter().enumerate() {
                    let row = &self.embed[k * d..(k + 1) * d];
                    for (a, &e) in acc.iter_mut().zip(row) {
                        *a += e * xk;
                    }
                }
                let pos = ph * gw + pw;
                for o in 0..d {
                    out[o * n + pos] = if with_gelu {
                        activate(acc[o], bias[o])
                    } else {
                        (acc[o] + bias[o] as f64) as f32
                    };
                }
            }
        }
        Ok(Tensor3 {
            channels: d,
            height: gh,
            width: gw,
            data: out,
        })
    }

    pub fn forward_normalized(&self, x: &NormalizedTensor) -> Result<Logits, InferError> {
        let mut z = self.patch_embed(x)?;
        for layer in &self.layers {
            z = layer.run(&z, self.params.config.kernel);
        }
        Ok(self.head(&z))
    }

    pub fn forward(&self, img: &RgbImage) -> Result<Logits, InferError> {
        self.forward_normalized(&normalize(img))
    }

    fn head(&self, z: &Tensor3) -> Logits {
        let cfg = &self.params.config;
        let d = cfg.dim;
        let n = z.plane_len() as f64;
        let pooled: Vec<f64> = (0..d)
            .map(|c| (z.plane(c).iter().map(|&v| v as f64).sum::<f64>() / n) as f32 as f64)
            .collect();
        let logits = (0..cfg.classes)
            .map(|k| {
                let row = &self.params.head_weight[k * d..(k + 1) * d];
                let dot: f64 = row.iter().zip(&pooled).map(|(&w, &v)| w as f64 * v).sum();
                (dot + self.params.head_bias[k] as f64) as f32
            })
            .collect();
        Logits(logits)
    }
}

pub fn patch_embed(x: &NormalizedTensor, params: &ConvMixerParams) -> Result<Tensor3, InferError> {
    Engine::new(params)?.patch_embed(x)
}

/// One mixer layer on a `dim × h × w` tensor with a `kernel × kernel`
/// depthwise window and zero "same" padding.
pub fn mixer_layer(z: &Tensor3, layer: &MixerLayer, kernel: usize) -> Result<Tensor3, InferError> {
    PreparedLayer::check(layer, z, kernel)?;
    Ok(PreparedLayer::new(layer, z.channels).run(z, kernel))
}

/// `normalize → patch_embed → mixer layers → global average pool → head`.
/// Softmax is not applied.
pub fn forward(img: &RgbImage, params: &ConvMixerParams) -> Result<Logits, InferError> {
    Engine::new(params)?.forward(img)
}

/// Replaces every BN's running mean and variance with the population
/// statistics of its input over `images`, stage by stage, as an evaluation
/// mode network carries them after training. Scales and shifts are kept.
/// With no images the parameters are left unchanged.
pub fn calibrate_batchnorm(
    params: &mut ConvMixerParams,
    images: &[RgbImage],
) -> Result<(), InferError> {
    if images.is_empty() {
        return Ok(());
    }
    let mut zs = {
        let engine = Engine::new(params)?;
        images
            .par_iter()
            .map(|img| engine.embed_impl(normalize(img).as_tensor(), true))
            .collect::<Result<Vec<_>, _>>()?
    };
    set_population_stats(&mut params.embed_bn, &zs);
    let table = BnChannel::table(&params.embed_bn);
    zs.iter_mut().for_each(|z| apply_bn(z, &table));

    let (d, kernel) = (params.config.dim, params.config.kernel);
    for layer in &mut params.layers {
        let prepared = PreparedLayer::new(layer, d);
        let mut mixed: Vec<Tensor3> = zs
            .par_iter()
            .map(|z| prepared.depthwise_act(z, kernel))
            .collect();
        set_population_stats(&mut layer.dw_bn, &mixed);
        let table = BnChannel::table(&layer.dw_bn);
        for (m, z) in mixed.iter_mut().zip(&zs) {
            apply_bn(m, &table);
            add_residual(m, z);
        }
        let mut out: Vec<Tensor3> = mixed
            .par_iter()
            .map(|m| prepared.pointwise_act(m))
            .collect();
        set_population_stats(&mut layer.pw_bn, &out);
        let table = BnChannel::table(&layer.pw_bn);
        out.iter_mut().for_each(|o| apply_bn(o, &table));
        zs = out;
    }
    Ok(())
}

fn set_population_stats(bn: &mut BatchNormParams, zs: &[Tensor3]) {
    for c in 0..bn.dim() {
        let values = || zs.iter().flat_map(|z| z.plane(c)).map(|&v| v as f64);
        let n = zs.iter().map(|z| z.plane_len()).sum::<usize>() as f64;
        let mean = values().sum::<f64>() / n;
        let var = values().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        bn.running_mean[c] = mean as f32;
        bn.running_var[c] = var as f32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ModelConfig, BN_EPSILON};

    #[test]
    fn gelu_values() {
        assert_eq!(gelu(0.0), 0.0);
        assert!((gelu(10.0) - 10.0).abs() < 1e-4);
        assert!(gelu(-10.0).abs() < 1e-4);
        // 0.5·(1 + tanh(√(2/π)·1.044715)), evaluated separately in f64
        let reference = 0.5 * (1.0 + (0.797_884_560_802_865_4f64 * 1.044715).tanh());
        assert_eq!(gelu(1.0), reference as f32);
        assert!((gelu(1.0) - 0.841_192).abs() < 1e-6);
    }

    #[test]
    fn softmax_cases() {
        assert_eq!(softmax(&Logits(vec![0.0, 0.0])), vec![0.5, 0.5]);
        assert_eq!(softmax(&Logits(vec![3.0])), vec![1.0]);
        let big = softmax(&Logits(vec![1000.0, 0.0]));
        assert!((big[0] - 1.0).abs() < 1e-7 && big[1] < 1e-30 && big[1] >= 0.0);
        let a = softmax(&Logits(vec![0.25, -1.25, 2.5, 0.0]));
        let b = softmax(&Logits(vec![64.25, 62.75, 66.5, 64.0]));
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-7);
        }
        assert!((a.iter().sum::<f32>() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn argmax_and_gap() {
        let l = Logits(vec![1.0, 3.0, 3.0, 2.5]);
        assert_eq!(l.argmax(), 1);
        assert_eq!(l.top2_gap(), 0.0);
        assert_eq!(Logits(vec![1.0, 2.0, 0.5]).top2_gap(), 1.0);
        assert_eq!(Logits(vec![1.0]).top2_gap(), f32::INFINITY);
    }

    #[test]
    fn batchnorm_unit_stats() {
        let z = Tensor3::from_vec(2, 1, 2, vec![1.0, -2.0, 0.5, 4.0]).unwrap();
        let out = batchnorm_infer(&z, &BatchNormParams::identity(2)).unwrap();
        let scale = 1.0 / (1.0 + BN_EPSILON).sqrt();
        for (o, i) in out.data.iter().zip(&z.data) {
            assert_eq!(*o, (*i as f64 * scale) as f32);
        }
        assert!(batchnorm_infer(&z, &BatchNormParams::identity(3)).is_err());
    }

    #[test]
    fn batchnorm_constant_channel_gives_beta() {
        let mut bn = BatchNormParams::identity(2);
        bn.running_mean = vec![0.25, -3.0];
        bn.beta = vec![0.7, -0.2];
        bn.gamma = vec![2.0, 0.5];
        let z = Tensor3::from_vec(2, 2, 1, vec![0.25, 0.25, -3.0, -3.0]).unwrap();
        let out = batchnorm_infer(&z, &bn).unwrap();
        assert_eq!(out.data, vec![0.7, 0.7, -0.2, -0.2]);
    }

    fn zero_layer(d: usize, k: usize) -> MixerLayer {
        MixerLayer {
            dw_weight: vec![0.0; d * k * k],
            dw_bias: vec![0.0; d],
            dw_bn: BatchNormParams::identity(d),
            pw_weight: vec![0.0; d * d],
            pw_bias: vec![0.0; d],
            pw_bn: BatchNormParams::identity(d),
        }
    }

    #[test]
    fn zero_depthwise_is_residual() {
        let d = 3;
        let z =
            Tensor3::from_vec(d, 2, 2, (0..12).map(|i| i as f32 * 0.1 - 0.4).collect()).unwrap();
        let layer = PreparedLayer::new(&zero_layer(d, 3), d);
        let mut first = layer.depthwise_act(&z, 3);
        apply_bn(&mut first, &layer.dw_bn);
        add_residual(&mut first, &z);
        for (o, i) in first.data.iter().zip(&z.data) {
            assert!((o - i).abs() < 1e-6);
        }

        // identity pointwise: output is BN(gelu(z))
        let mut full = zero_layer(d, 3);
        for o in 0..d {
            full.pw_weight[o * d + o] = 1.0;
        }
        let out = mixer_layer(&z, &full, 3).unwrap();
        let scale = 1.0 / (1.0 + BN_EPSILON).sqrt();
        for (o, &i) in out.data.iter().zip(&z.data) {
            let expect = (gelu(i) as f64 * scale) as f32;
            assert!((o - expect).abs() < 1e-6, "{o} vs {expect}");
        }
    }

    #[test]
    fn kernel9_on_8x8_preserves_shape() {
        let d = 2;
        let mut layer = zero_layer(d, 9);
        layer.dw_weight.iter_mut().for_each(|w| *w = 0.01);
        let z = Tensor3::from_vec(d, 8, 8, vec![1.0; d * 64]).unwrap();
        let out = mixer_layer(&z, &layer, 9).unwrap();
        assert_eq!(out.shape(), (2, 8, 8));
    }

    #[test]
    fn layer_errors() {
        let z = Tensor3::zeros(2, 4, 4);
        assert_eq!(
            mixer_layer(&z, &zero_layer(2, 4), 4),
            Err(InferError::EvenKernel(4))
        );
        assert!(matches!(
            mixer_layer(&z, &zero_layer(3, 3), 3),
            Err(InferError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn identity_embedding_reproduces_patch() {
        let cfg = ModelConfig {
            channels: 2,
            height: 4,
            width: 4,
            patch: 2,
            dim: 8,
            depth: 0,
            kernel: 3,
            classes: 1,
        };
        let mut params = ConvMixerParams::random(cfg, 1).unwrap();
        let mut eye = vec![0.0; 64];
        for k in 0..8 {
            eye[k * 8 + k] = 1.0;
        }
        params.embed = crate::model::EmbeddingMatrix::new(8, 8, eye).unwrap();
        params.embed_bias = vec![0.0; 8];
        let img = RgbImage::new(2, 4, 4, (0..32).map(|i| (i * 8) as u8).collect()).unwrap();
        let x = normalize(&img);
        let z = Engine::new(&params).unwrap().embed_linear(&x).unwrap();
        assert_eq!(z.shape(), (8, 2, 2));
        let blocks = crate::image::segment_blocks(&img, 2).unwrap();
        for (ph, pw) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for k in 0..8 {
                assert_eq!(
                    z.at(k, ph, pw),
                    crate::image::normalize_byte(blocks.block(ph, pw)[k])
                );
            }
        }
    }

    #[test]
    fn single_class_softmax_is_one() {
        let cfg = ModelConfig {
            channels: 3,
            height: 4,
            width: 4,
            patch: 2,
            dim: 4,
            depth: 1,
            kernel: 3,
            classes: 1,
        };
        let params = ConvMixerParams::random(cfg, 2).unwrap();
        let img = RgbImage::new(3, 4, 4, vec![128; 48]).unwrap();
        let logits = forward(&img, &params).unwrap();
        assert_eq!(logits.0.len(), 1);
        assert_eq!(softmax(&logits), vec![1.0]);
    }

    #[test]
    fn input_shape_checked() {
        let params = ConvMixerParams::random(
            ModelConfig {
                depth: 1,
                dim: 8,
                ..ModelConfig::CIFAR
            },
            0,
        )
        .unwrap();
        let img = RgbImage::new(3, 16, 16, vec![0; 768]).unwrap();
        assert!(matches!(
            forward(&img, &params),
            Err(InferError::ShapeMismatch(_))
        ));
    }
}
