//! Brute-force ground truth: exact character tables and faithful-sum search.

mod dixon;
mod search;

pub use dixon::{character_table, character_table_with, charpoly, first_prime, CharacterTable};
pub use search::{min_faithful_exhaustive, restricted_dual_vectors, KernelLattice, MinFaithful};

/// Default order cap for table computations.
pub const DEFAULT_CAP: usize = 4096;
