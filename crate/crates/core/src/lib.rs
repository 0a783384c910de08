//! Twisted hypercubes: construction, routing, expansion, spectra and symmetry.
//!
//! A twisted hypercube `G_n` is built from a single vertex by `n` iterated
//! σ-twists: two copies of `G_{k-1}` are joined by the perfect matching that a
//! permutation `σ_{k-1}` prescribes. With identity permutations the result is
//! the Boolean hypercube `Q_n`; with uniformly random permutations it behaves
//! much like a random `n`-regular graph while still admitting a local routing
//! scheme.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and the batch runner live in the `twistcube` crate.
//!
//! ```
//! use twistcube_core::{build_cube, TwistSpec, Vertex};
//!
//! let cube = build_cube(&TwistSpec::duplicube(8, 42)).unwrap();
//! assert_eq!(cube.vertex_count(), 256);
//! let x = Vertex(0b1010_0001);
//! assert_eq!(cube.neighbor_k(cube.neighbor_k(x, 5).unwrap(), 5).unwrap(), x);
//! ```
#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

mod bitset;
pub mod cube;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod perm;
pub mod spectral;
pub mod symmetry;
pub mod vertex;

pub use bitset::BitSet;
pub use cube::{build_cube, sigma_twist, Model, TwistSpec, TwistedCube, MAX_DIMENSION};
pub use error::{Error, Result};
pub use graph::{Graph, SimpleGraph};
pub use perm::{PermutationTable, StreamKey};
pub use vertex::{generation_number, instance_set, Vertex};

/// Whether a size guard on an expensive analysis is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Guard {
    #[default]
    Enforce,
    Override,
}

impl Guard {
    pub(crate) fn check(self, what: &'static str, size: u64, limit: u64) -> Result<()> {
        if self == Guard::Enforce && size > limit {
            return Err(Error::GuardExceeded { what, size, limit });
        }
        Ok(())
    }
}
