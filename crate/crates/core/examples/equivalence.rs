//! Checks that an encrypted model on encrypted images reproduces the plain
//! model on plain images, at full CIFAR scale with random weights.
//!
//! Usage: `cargo run --release --example equivalence [n_images] [n_keys]`

use std::time::Instant;

use patchlock::keys::{KeyPair, Seed};
use patchlock::model::ModelConfig;
use patchlock::verify::{calibrated_model, random_images, verify_equivalence_on};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("count"));
    let n_images = args.next().unwrap_or(16);
    let n_keys = args.next().unwrap_or(2);

    let params = calibrated_model(ModelConfig::CIFAR, 0).expect("valid config");
    let keys: Vec<KeyPair> = (0..n_keys as u64)
        .map(|i| KeyPair::new(Seed(2 * i + 1), Seed(2 * i + 2), 4, 3).expect("even block"))
        .collect();
    let images = random_images(&params, n_images, 42);

    let start = Instant::now();
    let report = verify_equivalence_on(&params, &keys, &images, 1e-4).expect("shapes match");
    println!(
        "{} images x {} keys: max deviation {:.3e}, argmax agreement {:.4} ({} excused) in {:.1?}",
        n_images,
        n_keys,
        report.max_deviation,
        report.argmax_agreement(),
        report.argmax_excused,
        start.elapsed()
    );
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
}
