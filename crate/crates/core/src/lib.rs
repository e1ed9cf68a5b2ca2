//! Keyed block-wise image encryption paired with a matching transformation of
//! a ConvMixer's patch-embedding weights.
//!
//! An image is split into `M`×`M` blocks; inside every block the pixels are
//! permuted and half of them are inverted (`p → 255 − p`) under a secret key.
//! Because the patch embedding is a linear map over exactly those blocks,
//! permuting and negating the rows of its weight matrix with the same key
//! yields a model that, given encrypted images, computes the same function as
//! the original model on plain images. A wrong key gives unrelated outputs.
//!
//! ```
//! use patchlock::{image, infer, keys, model};
//!
//! let config = model::ModelConfig { dim: 16, depth: 2, ..model::ModelConfig::CIFAR };
//! let plain = model::ConvMixerParams::random(config, 7).unwrap();
//! let key = keys::KeyPair::new(keys::Seed(1), keys::Seed(2), 4, 3).unwrap();
//! let locked = model::encrypt_model(&plain, &key).unwrap();
//!
//! let img = image::RgbImage::new(3, 32, 32, vec![128; 3 * 32 * 32]).unwrap();
//! let enc = image::encrypt_image(&img, &key, 4).unwrap();
//!
//! let a = infer::forward(&img, &plain).unwrap();
//! let b = infer::forward(&enc, &locked).unwrap();
//! assert!(a.max_abs_diff(&b) < 1e-4);
//! ```

pub mod cli;
pub mod image;
pub mod infer;
pub mod keys;
pub mod model;
pub mod pnm;
pub mod rng;
pub mod tensor;
pub mod verify;

pub use image::{decrypt_image, encrypt_image, normalize, RgbImage};
pub use infer::{forward, softmax, Engine, Logits};
pub use keys::{KeyPair, Seed};
pub use model::{encrypt_model, load_model, save_model, ConvMixerParams, ModelConfig};
