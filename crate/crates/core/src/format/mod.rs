//! Serialized representations of a [`Game`](crate::Game).

pub mod dot;
pub mod efg;

pub use dot::write_dot;
pub use efg::{parse_efg, write_efg, ParseError};
