//! Minimal faithful representation dimensions of Heisenberg, unitriangular,
//! affine and two-step nilpotent groups over finite chain rings, computed
//! exactly and checked against brute-force character tables.

pub mod arith;
pub mod chain_ring;
pub mod char_duality;
pub mod error;
pub mod exactrep;
pub mod groups;
pub mod linalg;
pub mod mackey;
pub mod oracle;
pub mod solver;
pub mod suite;

pub use chain_ring::{ChainRing, Ramification, RingElem, RingParams};
pub use char_duality::{AddChar, DualVector};
pub use error::{Error, Result};
pub use exactrep::{Cyclotomic, DirectSum, MonomialRep};
pub use groups::{FiniteGroup, GroupSpec, Structure};
pub use mackey::IrrepDescriptor;
pub use oracle::{CharacterTable, MinFaithful};
pub use solver::{Certificate, FaithfulSolution};
pub use suite::{InstanceReport, SuiteReport, SuiteSpec};
