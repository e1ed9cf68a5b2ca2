//! ConvMixer parameters and the keyed transformation of the patch-embedding
//! matrix.
//!
//! The embedding matrix `E` has one row per position of a flattened patch,
//! in the same channel-major order [`crate::image::segment_blocks`] uses for
//! blocks. With that shared convention, gathering rows by the pixel
//! permutation and negating rows under the flip mask makes the encrypted
//! model see an encrypted patch exactly as the plain model sees the plain one.

mod cmx;

pub use cmx::{load_model, save_model, CMX1_MAGIC};

use thiserror::Error;

use crate::keys::{FlipKey, KeyPair, PermutationKey};
use crate::rng::SplitMix64;

pub const BN_EPSILON: f64 = 1e-5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("KeyMismatch: key covers {key} pixels per patch, embedding has {rows} rows")]
    KeyMismatch { key: usize, rows: usize },
    #[error("BadMagic: not a CMX1 model file")]
    BadMagic,
    #[error("TruncatedFile: model file ends inside {0}")]
    TruncatedFile(String),
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("TrailingBytes: {0} unexpected bytes after model data")]
    TrailingBytes(usize),
}

/// Architecture hyper-parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelConfig {
    pub channels: usize,
    pub height: usize,
    pub width: usize,
    pub patch: usize,
    pub dim: usize,
    pub depth: usize,
    pub kernel: usize,
    pub classes: usize,
}

impl ModelConfig {
    /// CIFAR-10 sized: 3×32×32 input, patch 4, width 256, 8 layers, kernel 9.
    pub const CIFAR: ModelConfig = ModelConfig {
        channels: 3,
        height: 32,
        width: 32,
        patch: 4,
        dim: 256,
        depth: 8,
        kernel: 9,
        classes: 10,
    };

    pub fn validate(&self) -> Result<(), ModelError> {
        let fields = [
            ("channels", self.channels),
            ("height", self.height),
            ("width", self.width),
            ("patch", self.patch),
            ("dim", self.dim),
            ("kernel", self.kernel),
            ("classes", self.classes),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| *v == 0) {
            return Err(ModelError::ShapeMismatch(format!(
                "{name} must be positive"
            )));
        }
        if self
            .patch
            .checked_mul(self.patch)
            .and_then(|a| a.checked_mul(self.channels))
            .and_then(|a| a.checked_mul(self.dim))
            .is_none()
        {
            return Err(ModelError::ShapeMismatch(
                "patch embedding size overflows".into(),
            ));
        }
        if !self.height.is_multiple_of(self.patch) || !self.width.is_multiple_of(self.patch) {
            return Err(ModelError::ShapeMismatch(format!(
                "patch {} does not divide {}x{}",
                self.patch, self.height, self.width
            )));
        }
        if self.kernel.is_multiple_of(2) {
            return Err(ModelError::ShapeMismatch(format!(
                "depthwise kernel must be odd, got {}",
                self.kernel
            )));
        }
        Ok(())
    }

    /// Pixels per patch, `P²·C`.
    pub fn patch_len(&self) -> usize {
        self.patch * self.patch * self.channels
    }

    pub fn grid(&self) -> (usize, usize) {
        (self.height / self.patch, self.width / self.patch)
    }
}

/// `rows × cols` row-major `f32` matrix; row `k` is flattened patch position `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f32>,
}

impl EmbeddingMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f32>) -> Result<Self, ModelError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(ModelError::ShapeMismatch(format!(
                "embedding {rows}x{cols} with {} values",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn row(&self, k: usize) -> &[f32] {
        &self.data[k * self.cols..(k + 1) * self.cols]
    }
}

/// Inference-mode batch normalization statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchNormParams {
    pub gamma: Vec<f32>,
    pub beta: Vec<f32>,
    pub running_mean: Vec<f32>,
    pub running_var: Vec<f32>,
    pub epsilon: f64,
}

impl BatchNormParams {
    /// `gamma = 1, beta = 0, mean = 0, var = 1`.
    pub fn identity(dim: usize) -> Self {
        Self {
            gamma: vec![1.0; dim],
            beta: vec![0.0; dim],
            running_mean: vec![0.0; dim],
            running_var: vec![1.0; dim],
            epsilon: BN_EPSILON,
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    fn random(rng: &mut SplitMix64, dim: usize) -> Self {
        let mut draw = |lo, hi| {
            (0..dim)
                .map(|_| rng.uniform_f32(lo, hi))
                .collect::<Vec<_>>()
        };
        let gamma = draw(0.5, 1.5);
        let beta = draw(-0.1, 0.1);
        let running_mean = draw(-0.1, 0.1);
        let running_var = draw(0.5, 1.5);
        Self {
            gamma,
            beta,
            running_mean,
            running_var,
            epsilon: BN_EPSILON,
        }
    }

    fn check(&self, dim: usize, name: &str) -> Result<(), ModelError> {
        let lens = [
            self.gamma.len(),
            self.beta.len(),
            self.running_mean.len(),
            self.running_var.len(),
        ];
        if lens.iter().any(|&n| n != dim) {
            return Err(ModelError::ShapeMismatch(format!(
                "{name}: expected {dim} channels"
            )));
        }
        if self.running_var.iter().any(|&v| v.is_nan() || v < 0.0) {
            return Err(ModelError::ShapeMismatch(format!(
                "{name}.running_var must be non-negative"
            )));
        }
        Ok(())
    }
}

/// One depthwise + pointwise mixing layer.
#[derive(Debug, Clone, PartialEq)]
pub struct MixerLayer {
    /// `dim × kernel × kernel`, one kernel per channel.
    pub dw_weight: Vec<f32>,
    pub dw_bias: Vec<f32>,
    pub dw_bn: BatchNormParams,
    /// `dim × dim`, output-major (`w[o·dim + i]`).
    pub pw_weight: Vec<f32>,
    pub pw_bias: Vec<f32>,
    pub pw_bn: BatchNormParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvMixerParams {
    pub config: ModelConfig,
    pub embed: EmbeddingMatrix,
    pub embed_bias: Vec<f32>,
    pub embed_bn: BatchNormParams,
    pub layers: Vec<MixerLayer>,
    /// `classes × dim`.
    pub head_weight: Vec<f32>,
    pub head_bias: Vec<f32>,
}

impl ConvMixerParams {
    /// Random weights drawn from one SplitMix64 stream in serialization order.
    /// Weights are uniform in `±√(6/fan_in)` so activations keep unit scale
    /// through depth; biases are uniform in `±1/√fan_in`. BN scales and
    /// variances lie in `[0.5, 1.5)`, shifts and means in `[-0.1, 0.1)`.
    pub fn random(config: ModelConfig, seed: u64) -> Result<Self, ModelError> {
        config.validate()?;
        let mut rng = SplitMix64::new(seed);
        let d = config.dim;
        let p_b = config.patch_len();
        let k2 = config.kernel * config.kernel;
        let draw = |rng: &mut SplitMix64, n: usize, bound: f32| {
            (0..n)
                .map(|_| rng.uniform_f32(-bound, bound))
                .collect::<Vec<_>>()
        };
        let weights = |rng: &mut SplitMix64, n: usize, fan_in: usize| {
            draw(rng, n, (6.0 / fan_in as f32).sqrt())
        };
        let biases = |rng: &mut SplitMix64, n: usize, fan_in: usize| {
            draw(rng, n, 1.0 / (fan_in as f32).sqrt())
        };

        let embed = EmbeddingMatrix::new(p_b, d, weights(&mut rng, p_b * d, p_b))?;
        let embed_bias = biases(&mut rng, d, p_b);
        let embed_bn = BatchNormParams::random(&mut rng, d);
        let layers = (0..config.depth)
            .map(|_| MixerLayer {
                dw_weight: weights(&mut rng, d * k2, k2),
                dw_bias: biases(&mut rng, d, k2),
                dw_bn: BatchNormParams::random(&mut rng, d),
                pw_weight: weights(&mut rng, d * d, d),
                pw_bias: biases(&mut rng, d, d),
                pw_bn: BatchNormParams::random(&mut rng, d),
            })
            .collect();
        let head_weight = weights(&mut rng, config.classes * d, d);
        let head_bias = biases(&mut rng, config.classes, d);
        Ok(Self {
            config,
            embed,
            embed_bias,
            embed_bn,
            layers,
            head_weight,
            head_bias,
        })
    }

    /// Checks every array against `config`.
    pub fn validate(&self) -> Result<(), ModelError> {
        let c = &self.config;
        c.validate()?;
        let d = c.dim;
        let k2 = c.kernel * c.kernel;
        if self.embed.rows != c.patch_len() || self.embed.cols != d {
            return Err(ModelError::ShapeMismatch(format!(
                "embed is {}x{}, expected {}x{d}",
                self.embed.rows,
                self.embed.cols,
                c.patch_len()
            )));
        }
        let len = |name: &str, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(ModelError::ShapeMismatch(format!(
                    "{name}: {got} values, expected {want}"
                )))
            }
        };
        len("embed_bias", self.embed_bias.len(), d)?;
        self.embed_bn.check(d, "embed_bn")?;
        len("layers", self.layers.len(), c.depth)?;
        for (i, l) in self.layers.iter().enumerate() {
            len(&format!("layer{i}.dw_weight"), l.dw_weight.len(), d * k2)?;
            len(&format!("layer{i}.dw_bias"), l.dw_bias.len(), d)?;
            l.dw_bn.check(d, &format!("layer{i}.dw_bn"))?;
            len(&format!("layer{i}.pw_weight"), l.pw_weight.len(), d * d)?;
            len(&format!("layer{i}.pw_bias"), l.pw_bias.len(), d)?;
            l.pw_bn.check(d, &format!("layer{i}.pw_bn"))?;
        }
        len("head_weight", self.head_weight.len(), c.classes * d)?;
        len("head_bias", self.head_bias.len(), c.classes)
    }
}

/// `E'(k, :) = E(v_k, :)`, so that `Σ_k x(v_k)·E'(k,:) = Σ_j x(j)·E(j,:)`.
pub fn permute_rows(
    e: &EmbeddingMatrix,
    key: &PermutationKey,
) -> Result<EmbeddingMatrix, ModelError> {
    check_key(key.len(), e.rows)?;
    let mut data = Vec::with_capacity(e.data.len());
    for &src in key.as_slice() {
        data.extend_from_slice(e.row(src));
    }
    Ok(EmbeddingMatrix {
        rows: e.rows,
        cols: e.cols,
        data,
    })
}

/// Negates row `k` where `r_k = 1`.
pub fn signflip_rows(e: &EmbeddingMatrix, key: &FlipKey) -> Result<EmbeddingMatrix, ModelError> {
    check_key(key.len(), e.rows)?;
    let mut out = e.clone();
    for (k, row) in out.data.chunks_exact_mut(e.cols).enumerate() {
        if key.is_flipped(k) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(out)
}

/// Replaces the embedding matrix with `signflip(permute(E, v), r)`. Nothing
/// else in the model changes.
pub fn encrypt_model(
    params: &ConvMixerParams,
    keys: &KeyPair,
) -> Result<ConvMixerParams, ModelError> {
    let permuted = permute_rows(&params.embed, &keys.perm)?;
    let embed = signflip_rows(&permuted, &keys.flip)?;
    Ok(ConvMixerParams {
        embed,
        ..params.clone()
    })
}

fn check_key(key: usize, rows: usize) -> Result<(), ModelError> {
    if key != rows {
        return Err(ModelError::KeyMismatch { key, rows });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keys::Seed;
    use proptest::prelude::*;

    fn small_config() -> ModelConfig {
        ModelConfig {
            channels: 3,
            height: 8,
            width: 8,
            patch: 2,
            dim: 6,
            depth: 2,
            kernel: 3,
            classes: 4,
        }
    }

    fn two_by_two() -> EmbeddingMatrix {
        EmbeddingMatrix::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap()
    }

    #[test]
    fn permute_rows_gathers() {
        let key = PermutationKey::new(vec![1, 0], Seed(0)).unwrap();
        assert_eq!(
            permute_rows(&two_by_two(), &key).unwrap().data(),
            &[3.0, 4.0, 1.0, 2.0]
        );
        assert_eq!(
            permute_rows(&two_by_two(), &PermutationKey::identity(2)).unwrap(),
            two_by_two()
        );
        // gather, not scatter: with a 3-cycle the two differ
        let e = EmbeddingMatrix::new(3, 1, vec![10.0, 20.0, 30.0]).unwrap();
        let key = PermutationKey::new(vec![2, 0, 1], Seed(0)).unwrap();
        assert_eq!(permute_rows(&e, &key).unwrap().data(), &[30.0, 10.0, 20.0]);
    }

    #[test]
    fn signflip_rows_negates() {
        let key = FlipKey::new(vec![1, 0], Seed(0)).unwrap();
        let flipped = signflip_rows(&two_by_two(), &key).unwrap();
        assert_eq!(flipped.data(), &[-1.0, -2.0, 3.0, 4.0]);
        assert_eq!(
            signflip_rows(&two_by_two(), &FlipKey::identity(2)).unwrap(),
            two_by_two()
        );
        let twice = signflip_rows(&flipped, &key).unwrap();
        let bits = |e: &EmbeddingMatrix| e.data().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&twice), bits(&two_by_two()));
    }

    #[test]
    fn key_size_must_match_patch() {
        let params = ConvMixerParams::random(small_config(), 1).unwrap();
        let keys = KeyPair::new(Seed(1), Seed(2), 4, 3).unwrap();
        assert_eq!(
            encrypt_model(&params, &keys),
            Err(ModelError::KeyMismatch { key: 48, rows: 12 })
        );
    }

    #[test]
    fn identity_keys_leave_model_unchanged() {
        let params = ConvMixerParams::random(small_config(), 3).unwrap();
        let enc = encrypt_model(&params, &KeyPair::identity(12)).unwrap();
        assert_eq!(save_model(&enc), save_model(&params));
    }

    #[test]
    fn only_embedding_bytes_change() {
        let params = ConvMixerParams::random(small_config(), 4).unwrap();
        let keys = KeyPair::new(Seed(5), Seed(6), 2, 3).unwrap();
        let (a, b) = (
            save_model(&params),
            save_model(&encrypt_model(&params, &keys).unwrap()),
        );
        assert_eq!(a.len(), b.len());
        let embed = 4 + 32..4 + 32 + 12 * 6 * 4;
        assert_ne!(a[embed.clone()], b[embed.clone()]);
        assert_eq!(a[..embed.start], b[..embed.start]);
        assert_eq!(a[embed.end..], b[embed.end..]);
    }

    #[test]
    fn encrypting_twice_is_not_identity() {
        let params = ConvMixerParams::random(small_config(), 8).unwrap();
        let keys = KeyPair::new(Seed(11), Seed(12), 2, 3).unwrap();
        assert!(!keys.perm.is_identity());
        let twice = encrypt_model(&encrypt_model(&params, &keys).unwrap(), &keys).unwrap();
        assert_ne!(twice.embed, params.embed);
    }

    #[test]
    fn cmx1_header_layout() {
        let params = ConvMixerParams::random(small_config(), 1).unwrap();
        let bytes = save_model(&params);
        assert_eq!(&bytes[..4], b"CMX1");
        let fields: Vec<u32> = bytes[4..36]
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        assert_eq!(fields, vec![3, 8, 8, 2, 6, 2, 3, 4]);
        let d = 6;
        let floats = 12 * d + d + 4 * d + 2 * (d * 9 + d + 4 * d + d * d + d + 4 * d) + 4 * d + 4;
        assert_eq!(bytes.len(), 36 + 4 * floats);
        assert_eq!(&bytes[36..40], &params.embed.data()[0].to_le_bytes());
    }

    #[test]
    fn cmx1_errors() {
        let bytes = save_model(&ConvMixerParams::random(small_config(), 1).unwrap());
        let mut bad = bytes.clone();
        bad[3] = b'2';
        assert_eq!(load_model(&bad), Err(ModelError::BadMagic));
        assert_eq!(load_model(b"CM"), Err(ModelError::BadMagic));
        assert_eq!(
            load_model(&bytes[..bytes.len() - 2]),
            Err(ModelError::TruncatedFile("head_bias".into()))
        );
        assert_eq!(
            load_model(&bytes[..20]),
            Err(ModelError::TruncatedFile("d".into()))
        );
        assert_eq!(
            load_model(&bytes[..100]),
            Err(ModelError::TruncatedFile("embed_weight".into()))
        );
        let mut long = bytes.clone();
        long.extend_from_slice(&[0; 4]);
        assert_eq!(load_model(&long), Err(ModelError::TrailingBytes(4)));
        // patch 3 does not divide 8
        let mut bad = bytes.clone();
        bad[16..20].copy_from_slice(&3u32.to_le_bytes());
        assert!(matches!(
            load_model(&bad),
            Err(ModelError::ShapeMismatch(_))
        ));
        // huge dimensions report truncation or overflow, never panic
        let mut bad = bytes;
        bad[20..24].copy_from_slice(&u32::MAX.to_le_bytes());
        assert!(load_model(&bad).is_err());
    }

    #[test]
    fn negative_variance_rejected() {
        let mut params = ConvMixerParams::random(small_config(), 1).unwrap();
        params.layers[1].pw_bn.running_var[2] = -1.0;
        assert!(matches!(
            load_model(&save_model(&params)),
            Err(ModelError::ShapeMismatch(msg)) if msg.contains("layer1.pw_bn")
        ));
    }

    #[test]
    fn random_is_deterministic() {
        let a = ConvMixerParams::random(small_config(), 9).unwrap();
        let b = ConvMixerParams::random(small_config(), 9).unwrap();
        assert_eq!(save_model(&a), save_model(&b));
        assert_ne!(
            save_model(&a),
            save_model(&ConvMixerParams::random(small_config(), 10).unwrap())
        );
        assert!(ConvMixerParams::random(
            ModelConfig {
                kernel: 4,
                ..small_config()
            },
            1
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn cmx1_roundtrip(seed: u64, dim in 1usize..5, depth in 0usize..3) {
            let cfg = ModelConfig { dim, depth, ..small_config() };
            let params = ConvMixerParams::random(cfg, seed).unwrap();
            let bytes = save_model(&params);
            let back = load_model(&bytes).unwrap();
            prop_assert_eq!(save_model(&back), bytes);
            prop_assert_eq!(back, params);
        }

        #[test]
        fn permute_inverse_is_exact(seed: u64, rows in 1usize..40) {
            let data: Vec<f32> = (0..rows * 3).map(|i| i as f32 * 0.37 - 5.0).collect();
            let e = EmbeddingMatrix::new(rows, 3, data).unwrap();
            let key = PermutationKey::derive(Seed(seed), rows);
            let back = permute_rows(&permute_rows(&e, &key).unwrap(), &key.inverse()).unwrap();
            prop_assert_eq!(back, e);
        }

        /// Shuffled-and-flipped patch times the transformed matrix equals the
        /// plain product; oracle is a plain 64-bit dot product.
        #[test]
        fn transformed_product_matches(s1: u64, s2: u64, xs in proptest::collection::vec(-1.0f32..=1.0, 48), seed: u64) {
            let d = 5;
            let mut rng = SplitMix64::new(seed);
            let e = EmbeddingMatrix::new(48, d, (0..48 * d).map(|_| rng.uniform_f32(-1.0, 1.0)).collect()).unwrap();
            let keys = KeyPair::new(Seed(s1), Seed(s2), 4, 3).unwrap();
            let enc_e = signflip_rows(&permute_rows(&e, &keys.perm).unwrap(), &keys.flip).unwrap();
            let enc_x: Vec<f32> = (0..48)
                .map(|k| {
                    let x = xs[keys.perm.as_slice()[k]];
                    if keys.flip.is_flipped(k) { -x } else { x }
                })
                .collect();
            for o in 0..d {
                let plain: f64 = (0..48).map(|k| xs[k] as f64 * e.row(k)[o] as f64).sum();
                let enc: f64 = (0..48).map(|k| enc_x[k] as f64 * enc_e.row(k)[o] as f64).sum();
                prop_assert!((plain - enc).abs() <= 1e-6, "{} vs {}", plain, enc);
            }
        }
    }
}
