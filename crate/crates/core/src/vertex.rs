//! Vertices of `{0,1}^n` and the coordinate arithmetic on them.
//!
//! Coordinate `i ∈ [1, n]` lives at bit `i - 1`, so coordinate 1 is the least
//! significant bit. The prefix `(x_1, …, x_{k-1})` is then the low `k - 1`
//! bits and the suffix `(x_{k+1}, …, x_n)` is `x >> k`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vertex(pub u32);

impl Vertex {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Coordinate `i` (1-based).
    #[inline]
    pub fn coord(self, i: u32) -> u8 {
        debug_assert!(i >= 1);
        ((self.0 >> (i - 1)) & 1) as u8
    }

    /// Builds a vertex from the tuple `(x_1, …, x_n)`.
    pub fn from_coords(coords: &[u8]) -> Self {
        Vertex(coords.iter().enumerate().fold(0u32, |w, (i, &c)| w | (((c & 1) as u32) << i)))
    }

    /// The tuple `(x_1, …, x_n)`.
    pub fn coords(self, n: u32) -> Vec<u8> {
        (1..=n).map(|i| self.coord(i)).collect()
    }

    pub fn flip(self, i: u32) -> Self {
        Vertex(self.0 ^ (1 << (i - 1)))
    }

    pub fn hamming(self, other: Vertex) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    /// Renders `(x_1, …, x_n)` as a bit string, coordinate 1 first.
    pub fn display(self, n: u32) -> impl fmt::Display {
        struct D(u32, u32);
        impl fmt::Display for D {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for i in 0..self.1 {
                    f.write_str(if self.0 >> i & 1 == 1 { "1" } else { "0" })?;
                }
                Ok(())
            }
        }
        D(self.0, n)
    }
}

impl From<u32> for Vertex {
    fn from(w: u32) -> Self {
        Vertex(w)
    }
}

/// Largest coordinate index at which `x` and `y` differ.
///
/// If `x` and `y` are adjacent in a twisted hypercube, the edge between them
/// was created by `σ_{γ-1}`, i.e. `y = N_γ(x)`.
pub fn generation_number(x: Vertex, y: Vertex, n: u32) -> Result<u32> {
    check_word(x, n)?;
    check_word(y, n)?;
    let diff = x.0 ^ y.0;
    if diff == 0 {
        return Err(Error::Domain("generation number of a vertex with itself"));
    }
    Ok(32 - diff.leading_zeros())
}

/// The instance set `I_s(x)`: all vertices sharing coordinates `s+1..=n` with `x`.
///
/// The range has `2^s` elements and these ranges partition `{0,1}^n` as the
/// suffix varies.
pub fn instance_set(x: Vertex, s: u32, n: u32) -> Result<Range<u32>> {
    check_word(x, n)?;
    if s > n {
        return Err(Error::Domain("instance set level s exceeds n"));
    }
    let size = 1u64 << s;
    let start = (x.0 as u64) & !(size - 1);
    Ok(start as u32..(start + size) as u32)
}

fn check_word(x: Vertex, n: u32) -> Result<()> {
    if n > 31 || (x.0 as u64) >= (1u64 << n) {
        return Err(Error::VertexRange { vertex: x.0 as u64, count: 1u64 << n.min(63) });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generation_examples() {
        let v = |c: &[u8]| Vertex::from_coords(c);
        assert_eq!(generation_number(v(&[0, 1, 1]), v(&[1, 1, 1]), 3), Ok(1));
        assert_eq!(generation_number(v(&[0, 0, 0]), v(&[0, 0, 1]), 3), Ok(3));
        assert!(generation_number(v(&[0, 0, 0]), v(&[0, 0, 0]), 3).is_err());
        assert!(generation_number(Vertex(8), Vertex(0), 3).is_err());
    }

    #[test]
    fn instance_set_extremes() {
        let x = Vertex(0b1011_0110);
        assert_eq!(instance_set(x, 0, 8).unwrap(), x.0..x.0 + 1);
        assert_eq!(instance_set(x, 8, 8).unwrap(), 0..256);
        assert!(instance_set(x, 9, 8).is_err());
    }

    #[test]
    fn instance_sets_partition() {
        let n = 8;
        for s in 0..=n {
            let mut seen = [0u8; 256];
            for x in 0..256u32 {
                let r = instance_set(Vertex(x), s, n).unwrap();
                assert_eq!(r.len(), 1 << s);
                assert!(r.contains(&x));
                if r.start == x & !((1 << s) - 1) && x == r.start {
                    for y in r {
                        seen[y as usize] += 1;
                    }
                }
            }
            assert!(seen.iter().all(|&c| c == 1));
        }
    }

    proptest! {
        #[test]
        fn coords_round_trip(w in 0u32..(1 << 20)) {
            let v = Vertex(w);
            prop_assert_eq!(Vertex::from_coords(&v.coords(20)), v);
        }
    }
}
