//! Generates a random CIFAR-sized model, encrypts its patch embedding with a
//! key and saves both as CMX1. Only the embedding weight bytes differ.
//!
//! Usage: `cargo run --release --example encrypt_model [out_dir]`

use std::path::PathBuf;

use patchlock::keys::{KeyPair, Seed};
use patchlock::model::{encrypt_model, load_model, save_model, ModelConfig};
use patchlock::verify::calibrated_model;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let params = calibrated_model(ModelConfig::CIFAR, 0).expect("valid config");
    let keys = KeyPair::new(
        Seed(1),
        Seed(2),
        params.config.patch,
        params.config.channels,
    )
    .expect("even block");
    let locked = encrypt_model(&params, &keys).expect("key matches patch");

    let (plain_bytes, locked_bytes) = (save_model(&params), save_model(&locked));
    assert_eq!(load_model(&locked_bytes).expect("valid file"), locked);
    std::fs::write(dir.join("plain.cmx1"), &plain_bytes).expect("write model");
    std::fs::write(dir.join("encrypted.cmx1"), &locked_bytes).expect("write model");

    let first = plain_bytes
        .iter()
        .zip(&locked_bytes)
        .position(|(a, b)| a != b)
        .unwrap();
    let last = plain_bytes
        .iter()
        .zip(&locked_bytes)
        .rposition(|(a, b)| a != b)
        .unwrap();
    let embed_bytes = 4 * params.embed.rows() * params.embed.cols();
    println!("model file: {} bytes", plain_bytes.len());
    println!("differing byte range: {first}..={last}");
    println!("embedding weight range: 36..{}", 36 + embed_bytes);
}
