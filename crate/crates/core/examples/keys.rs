//! Derives a key pair from two seeds, writes it as a PLK1 file, reads it back
//! and prints the key-space size for the block.
//!
//! Usage: `cargo run --example keys [seed1] [seed2] [block] [out.plk1]`

use patchlock::keys::{KeyPair, Seed};
use patchlock::verify::keyspace_bits;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, default: u64| args.get(i).map_or(default, |a| a.parse().expect("integer"));
    let (seed1, seed2, block) = (num(0, 1), num(1, 2), num(2, 4) as usize);
    let path = args.get(3).cloned().unwrap_or_else(|| "key.plk1".into());

    let keys = KeyPair::new(Seed(seed1), Seed(seed2), block, 3).expect("even block");
    std::fs::write(&path, keys.to_bytes()).expect("write key");
    let reread = KeyPair::from_bytes(&std::fs::read(&path).expect("read key")).expect("valid key");
    assert_eq!(reread, keys);

    println!("wrote {path}");
    println!("v = {:?}", keys.perm.as_slice());
    println!("r = {:?}", keys.flip.as_slice());
    println!("{}", keyspace_bits(keys.p_b()).expect("even p_b"));
}
