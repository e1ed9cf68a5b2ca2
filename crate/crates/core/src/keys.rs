//! Secret key material: the pixel permutation `v` and the balanced flip mask `r`.
//!
//! Both vectors are derived from 64-bit seeds through [`SplitMix64`] so that
//! a key can be regenerated bit-identically anywhere. The `PLK1` file format
//! stores the vectors explicitly alongside the seeds.

use std::fmt;

use thiserror::Error;

use crate::rng::SplitMix64;

pub const PLK1_MAGIC: [u8; 4] = *b"PLK1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KeyError {
    #[error("OddBlockSize: pixels per block must be even, got {0}")]
    OddBlockSize(usize),
    #[error("ZeroBlockSize: block size and channel count must be positive")]
    ZeroBlockSize,
    #[error("NotPermutation: permutation vector is not a bijection on 0..{0}")]
    NotPermutation(usize),
    #[error("UnbalancedMask: flip mask has {ones} ones, expected {expected}")]
    UnbalancedMask { ones: usize, expected: usize },
    #[error("InvalidMaskValue: flip mask entry {index} is {value}, expected 0 or 1")]
    InvalidMaskValue { index: usize, value: u8 },
    #[error("LengthMismatch: permutation has {perm} entries, flip mask has {flip}")]
    LengthMismatch { perm: usize, flip: usize },
    #[error("BadMagic: not a PLK1 key file")]
    BadMagic,
    #[error("TruncatedFile: key file ends inside {0}")]
    TruncatedFile(&'static str),
    #[error("TrailingBytes: {0} unexpected bytes after key data")]
    TrailingBytes(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Pixel shuffling key: `out[k] = in[v[k]]` inside every block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationKey {
    v: Vec<usize>,
    source_seed: Seed,
}

impl PermutationKey {
    /// Validates that `v` is a bijection on `0..v.len()`.
    pub fn new(v: Vec<usize>, source_seed: Seed) -> Result<Self, KeyError> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(KeyError::NotPermutation(n));
            }
        }
        Ok(Self { v, source_seed })
    }

    pub fn identity(p_b: usize) -> Self {
        Self {
            v: (0..p_b).collect(),
            source_seed: Seed(0),
        }
    }

    /// Fisher–Yates (descending) over `0..p_b` with a stream seeded by `seed`.
    pub fn derive(seed: Seed, p_b: usize) -> Self {
        let mut v: Vec<usize> = (0..p_b).collect();
        SplitMix64::new(seed.0).shuffle(&mut v);
        Self {
            v,
            source_seed: seed,
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn source_seed(&self) -> Seed {
        self.source_seed
    }

    pub fn is_identity(&self) -> bool {
        self.v.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// `inv[v[k]] = k`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.v.len()];
        for (k, &x) in self.v.iter().enumerate() {
            inv[x] = k;
        }
        Self {
            v: inv,
            source_seed: self.source_seed,
        }
    }
}

/// Negative-positive transformation mask; entry `k` is 1 where pixel `k` is inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipKey {
    r: Vec<u8>,
    source_seed: Seed,
}

impl FlipKey {
    /// Validates that every entry is 0 or 1 and exactly half are 1.
    pub fn new(r: Vec<u8>, source_seed: Seed) -> Result<Self, KeyError> {
        if !r.len().is_multiple_of(2) {
            return Err(KeyError::OddBlockSize(r.len()));
        }
        if let Some((index, &value)) = r.iter().enumerate().find(|(_, &x)| x > 1) {
            return Err(KeyError::InvalidMaskValue { index, value });
        }
        let ones = r.iter().filter(|&&x| x == 1).count();
        if ones != r.len() / 2 {
            return Err(KeyError::UnbalancedMask {
                ones,
                expected: r.len() / 2,
            });
        }
        Ok(Self { r, source_seed })
    }

    /// All-zero mask. Not balanced, so it cannot be stored in a key file; it
    /// exists for pass-through testing only.
    pub fn identity(p_b: usize) -> Self {
        Self {
            r: vec![0; p_b],
            source_seed: Seed(0),
        }
    }

    /// `p_b/2` ones followed by `p_b/2` zeros, then Fisher–Yates with a stream
    /// seeded by `seed`.
    pub fn derive(seed: Seed, p_b: usize) -> Result<Self, KeyError> {
        if !p_b.is_multiple_of(2) {
            return Err(KeyError::OddBlockSize(p_b));
        }
        let mut r = vec![1u8; p_b / 2];
        r.resize(p_b, 0);
        SplitMix64::new(seed.0).shuffle(&mut r);
        Ok(Self {
            r,
            source_seed: seed,
        })
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn source_seed(&self) -> Seed {
        self.source_seed
    }

    #[inline]
    pub fn is_flipped(&self, k: usize) -> bool {
        self.r[k] == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub perm: PermutationKey,
    pub flip: FlipKey,
}

impl KeyPair {
    /// Derives both halves for blocks of `block`×`block` pixels with
    /// `channels` channels (`p_b = block² · channels`).
    pub fn new(seed1: Seed, seed2: Seed, block: usize, channels: usize) -> Result<Self, KeyError> {
        if block == 0 || channels == 0 {
            return Err(KeyError::ZeroBlockSize);
        }
        let p_b = block * block * channels;
        if !p_b.is_multiple_of(2) {
            return Err(KeyError::OddBlockSize(p_b));
        }
        Ok(Self {
            perm: PermutationKey::derive(seed1, p_b),
            flip: FlipKey::derive(seed2, p_b)?,
        })
    }

    pub fn from_parts(perm: PermutationKey, flip: FlipKey) -> Result<Self, KeyError> {
        if perm.len() != flip.len() {
            return Err(KeyError::LengthMismatch {
                perm: perm.len(),
                flip: flip.len(),
            });
        }
        Ok(Self { perm, flip })
    }

    /// Identity permutation and all-zero flip mask.
    pub fn identity(p_b: usize) -> Self {
        Self {
            perm: PermutationKey::identity(p_b),
            flip: FlipKey::identity(p_b),
        }
    }

    pub fn p_b(&self) -> usize {
        self.perm.len()
    }

    /// Serializes to the `PLK1` layout (little-endian).
    pub fn to_bytes(&self) -> Vec<u8> {
        let p_b = self.p_b();
        let mut out = Vec::with_capacity(4 + 4 + 16 + 5 * p_b);
        out.extend_from_slice(&PLK1_MAGIC);
        out.extend_from_slice(&(p_b as u32).to_le_bytes());
        out.extend_from_slice(&self.perm.source_seed.0.to_le_bytes());
        out.extend_from_slice(&self.flip.source_seed.0.to_le_bytes());
        for &x in &self.perm.v {
            out.extend_from_slice(&(x as u32).to_le_bytes());
        }
        out.extend_from_slice(&self.flip.r);
        out
    }

    /// Parses a `PLK1` file, rejecting a bad magic, a non-bijective `v` or
    /// an unbalanced `r`.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, KeyError> {
        let mut cur = bytes;
        let magic = take(&mut cur, 4, "magic").map_err(|_| KeyError::BadMagic)?;
        if magic != PLK1_MAGIC {
            return Err(KeyError::BadMagic);
        }
        let p_b = u32::from_le_bytes(take(&mut cur, 4, "p_b")?.try_into().unwrap()) as usize;
        let seed1 = u64::from_le_bytes(take(&mut cur, 8, "seed1")?.try_into().unwrap());
        let seed2 = u64::from_le_bytes(take(&mut cur, 8, "seed2")?.try_into().unwrap());
        let v_bytes = take(
            &mut cur,
            p_b.checked_mul(4).ok_or(KeyError::TruncatedFile("v"))?,
            "v",
        )?;
        let v = v_bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()) as usize)
            .collect();
        let r = take(&mut cur, p_b, "r")?.to_vec();
        if !cur.is_empty() {
            return Err(KeyError::TrailingBytes(cur.len()));
        }
        let perm = PermutationKey::new(v, Seed(seed1))?;
        let flip = FlipKey::new(r, Seed(seed2))?;
        Self::from_parts(perm, flip)
    }
}

fn take<'a>(cur: &mut &'a [u8], n: usize, field: &'static str) -> Result<&'a [u8], KeyError> {
    if cur.len() < n {
        return Err(KeyError::TruncatedFile(field));
    }
    let (head, tail) = cur.split_at(n);
    *cur = tail;
    Ok(head)
}
