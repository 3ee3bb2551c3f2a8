//! Exact character values and explicit monomial representations.

pub mod cyclotomic;
pub mod induced;

pub use cyclotomic::Cyclotomic;
pub use induced::{
    direct_sum, induce_character, inner_product, kernel_of, DirectSum, LinearChar, MonomialMatrix, MonomialRep,
};
