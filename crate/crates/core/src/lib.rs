//! G-stable pieces of the wonderful compactification: Weyl group
//! combinatorics, closure orders, cellular decompositions, and brute-force
//! oracles for cross-checking.

pub mod bruhat;
pub mod closure;
pub mod cartan;
pub mod cells;
pub mod coset;
pub mod error;
pub mod format;
pub mod oracle;
pub mod order;
pub mod piece;
pub mod session;
pub mod subset;
pub mod twist;
pub mod verify;
pub mod weyl;

pub use cartan::{CartanDatum, Root, RootSystem};
pub use error::{Error, Result};
pub use subset::Subset;
pub use weyl::{Element, Side, WeylGroup};
pub use order::{geq_twisted, leq_pieces, Method, PiecePoset};
pub use piece::{enumerate_pieces, piece_dimension, PieceIndex};
pub use twist::Automorphism;
