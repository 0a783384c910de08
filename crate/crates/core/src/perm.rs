//! Permutation tables and the keyed streams that generate them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A bijection on `0..len` stored together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationTable {
    image: Vec<u32>,
    inverse: Vec<u32>,
}

/// Why a candidate table is not a permutation. Indices refer to the image array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermViolation {
    OutOfRange { index: usize, value: u32 },
    Duplicate { index: usize, value: u32 },
    InverseMismatch { index: usize },
}

impl fmt::Display for PermViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PermViolation::OutOfRange { index, value } => {
                write!(f, "out-of-range value {value} at index {index}")
            }
            PermViolation::Duplicate { index, value } => {
                write!(f, "duplicate value {value} at index {index}")
            }
            PermViolation::InverseMismatch { index } => {
                write!(f, "inverse disagrees with image at index {index}")
            }
        }
    }
}

/// Checks that `image` is a bijection on `0..image.len()`.
///
/// Reports the first offending index: a value that is out of range, or the
/// second occurrence of a repeated value.
pub fn validate_perm(image: &[u32]) -> core::result::Result<(), PermViolation> {
    let mut seen = vec![false; image.len()];
    for (index, &value) in image.iter().enumerate() {
        let Some(slot) = seen.get_mut(value as usize) else {
            return Err(PermViolation::OutOfRange { index, value });
        };
        if *slot {
            return Err(PermViolation::Duplicate { index, value });
        }
        *slot = true;
    }
    Ok(())
}

impl PermutationTable {
    /// Wraps `image` after validating it and computes the inverse.
    pub fn from_image(image: Vec<u32>) -> Result<Self> {
        validate_perm(&image).map_err(Error::Permutation)?;
        Ok(Self::from_image_unchecked(image))
    }

    fn from_image_unchecked(image: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; image.len()];
        for (p, &q) in image.iter().enumerate() {
            inverse[q as usize] = p as u32;
        }
        PermutationTable { image, inverse }
    }

    /// Identity on `0..len`.
    pub fn identity(len: usize) -> Self {
        let image: Vec<u32> = (0..len as u32).collect();
        PermutationTable { inverse: image.clone(), image }
    }

    /// Uniformly random permutation of `0..len` drawn from the stream of `key`.
    pub fn uniform(key: StreamKey, len: usize) -> Self {
        let mut image: Vec<u32> = (0..len as u32).collect();
        let mut stream = key.stream();
        // Fisher-Yates, high index down.
        for i in (1..len).rev() {
            let j = stream.below(i as u64 + 1) as usize;
            image.swap(i, j);
        }
        Self::from_image_unchecked(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.image[p as usize]
    }

    #[inline]
    pub fn apply_inverse(&self, q: u32) -> u32 {
        self.inverse[q as usize]
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn inverse(&self) -> &[u32] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(p, &q)| p as u32 == q)
    }

    /// Full consistency check of image and inverse.
    pub fn validate(&self) -> core::result::Result<(), PermViolation> {
        validate_perm(&self.image)?;
        if self.inverse.len() != self.image.len() {
            return Err(PermViolation::InverseMismatch { index: self.image.len().min(self.inverse.len()) });
        }
        for (p, &q) in self.image.iter().enumerate() {
            if self.inverse[q as usize] as usize != p {
                return Err(PermViolation::InverseMismatch { index: p });
            }
        }
        Ok(())
    }
}

/// Identity permutation on `{0,1}^k`.
pub fn identity_perm(k: u32) -> PermutationTable {
    PermutationTable::identity(1usize << k)
}

/// Uniform permutation on `{0,1}^k` drawn from the keyed stream.
pub fn uniform_perm(key: StreamKey, k: u32) -> PermutationTable {
    PermutationTable::uniform(key, 1usize << k)
}

/// Identifies one independent random stream.
///
/// `generation` is the index `k` of the permutation `σ_k` and `suffix` the
/// integer value of the copy suffix it belongs to (always 0 for the
/// duplicube). Non-permutation consumers use the same key space with their
/// own tags, e.g. a trial index in `suffix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub master_seed: u64,
    pub generation: u32,
    pub suffix: u64,
}

impl StreamKey {
    pub const fn new(master_seed: u64, generation: u32, suffix: u64) -> Self {
        StreamKey { master_seed, generation, suffix }
    }

    pub fn stream(self) -> KeyedStream {
        let mut h = mix64(self.master_seed ^ 0x6a09_e667_f3bc_c908);
        h = mix64(h ^ (self.generation as u64).wrapping_mul(0xbb67_ae85_84ca_a73b));
        h = mix64(h.wrapping_add(self.suffix.wrapping_mul(0x3c6e_f372_fe94_f82b)) ^ 0xa54f_f53a_5f1d_36f1);
        KeyedStream { base: h, counter: 0 }
    }
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Stafford's variant 13 finalizer (the SplitMix64 output function).
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based generator: output `i` is `mix64(base + (i+1)·γ)`.
///
/// Any position of the stream can be computed without the preceding ones.
#[derive(Debug, Clone)]
pub struct KeyedStream {
    base: u64,
    counter: u64,
}

impl KeyedStream {
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.base.wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform integer in `0..bound` (Lemire's multiply-shift with rejection).
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = (self.next_u64() as u128) * (bound as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Uniform float in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
