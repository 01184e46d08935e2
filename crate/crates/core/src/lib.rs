//! Exact vanishing-element proportions of finite groups.
//!
//! An element `g` of a finite group `G` is *vanishing* when `χ(g) = 0` for
//! some irreducible character `χ`. This crate computes the set `V(G)` of
//! vanishing elements and the proportion `P(G) = |V(G)|/|G|` exactly, and
//! decides structurally whether a group lies below the threshold
//! `P(A_7) = 1067/1260`.

pub mod abelian;
pub mod campaign;
pub mod arith;
pub mod character;
pub mod classifier;
pub mod cli;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod groupfile;

pub use error::{Error, Result};
