//! Encrypts a synthetic gradient image block-wise and writes the plain,
//! encrypted and decrypted images as PPM files.
//!
//! Usage: `cargo run --example encrypt_image [block] [out_dir]`

use std::path::PathBuf;

use patchlock::image::{decrypt_image, encrypt_image, RgbImage};
use patchlock::keys::{KeyPair, Seed};
use patchlock::pnm;

fn gradient(size: usize) -> RgbImage {
    let mut data = Vec::with_capacity(3 * size * size);
    for c in 0..3 {
        for y in 0..size {
            for x in 0..size {
                let v = match c {
                    0 => x * 255 / (size - 1),
                    1 => y * 255 / (size - 1),
                    _ => (x + y) * 255 / (2 * (size - 1)),
                };
                data.push(v as u8);
            }
        }
    }
    RgbImage::new(3, size, size, data).expect("sized above")
}

fn main() {
    let mut args = std::env::args().skip(1);
    let block: usize = args.next().map_or(4, |a| a.parse().expect("block size"));
    let dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));

    let img = gradient(64);
    let keys = KeyPair::new(Seed(10), Seed(20), block, 3).expect("even block");
    let enc = encrypt_image(&img, &keys, block).expect("64 divisible by block");
    let dec = decrypt_image(&enc, &keys, block).expect("same shape");
    assert_eq!(dec, img);

    for (name, image) in [
        ("plain.ppm", &img),
        ("encrypted.ppm", &enc),
        ("decrypted.ppm", &dec),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, pnm::encode(image).expect("3 channels")).expect("write image");
        println!("wrote {}", path.display());
    }
    let changed = img
        .data()
        .iter()
        .zip(enc.data())
        .filter(|(a, b)| a != b)
        .count();
    println!(
        "{changed} of {} bytes changed by encryption",
        img.data().len()
    );
}
