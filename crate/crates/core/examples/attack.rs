//! Random-key attack: images encrypted with guessed keys are fed to a model
//! encrypted with the real key. Writes the per-key CSV to stdout.
//!
//! Usage: `cargo run --release --example attack [n_keys] [n_images] > report.csv`

use std::io::Write;

use patchlock::keys::{KeyPair, Seed};
use patchlock::model::ModelConfig;
use patchlock::verify::{calibrated_model, emit_report, random_key_attack};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("count"));
    let n_keys = args.next().unwrap_or(10);
    let n_images = args.next().unwrap_or(16);

    let params = calibrated_model(ModelConfig::CIFAR, 0).expect("valid config");
    let correct = KeyPair::new(Seed(1), Seed(2), 4, 3).expect("even block");
    let report = random_key_attack(&params, &correct, n_keys, n_images, 99).expect("shapes match");

    std::io::stdout()
        .write_all(&emit_report(&report))
        .expect("stdout");
    eprintln!(
        "pooled agreement {:.4}, min mean deviation {:.3e}",
        report.pooled_agreement(),
        report.min_mean_deviation()
    );
    if let Some(plain) = &report.plain_image {
        eprintln!(
            "plain images into encrypted model: agreement {:.4}, mean deviation {:.3e}",
            plain.top1_agreement, plain.mean_logit_dev
        );
    }
    eprintln!("{}", if report.passed() { "PASS" } else { "FAIL" });
}
