//! Classifies an image with a CMX1 model and prints the softmax
//! probabilities. Without arguments, builds a small random model and a
//! random image in memory.
//!
//! Usage: `cargo run --release --example classify [model.cmx1 image.ppm]`

use patchlock::image::RgbImage;
use patchlock::infer::{softmax, Engine};
use patchlock::model::{load_model, ConvMixerParams, ModelConfig};
use patchlock::pnm;
use patchlock::rng::SplitMix64;
use patchlock::verify::{calibrated_model, random_image};

fn inputs() -> (ConvMixerParams, RgbImage) {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [model, image] = args.as_slice() {
        let params = load_model(&std::fs::read(model).expect("read model")).expect("CMX1 model");
        return (params, pnm::read(image).expect("PPM image"));
    }
    let config = ModelConfig {
        dim: 64,
        depth: 4,
        ..ModelConfig::CIFAR
    };
    let params = calibrated_model(config, 3).expect("valid config");
    let img = random_image(&mut SplitMix64::new(8), 3, 32, 32);
    (params, img)
}

fn main() {
    let (params, img) = inputs();
    let logits = Engine::new(&params)
        .expect("valid model")
        .forward(&img)
        .expect("image fits model");
    println!("logits {:?}", logits.0);
    println!("class {}", logits.argmax());
    for (k, p) in softmax(&logits).iter().enumerate() {
        println!("  {k}: {p:.4}");
    }
}
