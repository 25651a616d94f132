//! Exact lattice-point enumeration for arbor polytopes.
//!
//! An arbor is a rooted tree whose vertices are the blocks of a set
//! partition of `[n]`. Each block `v` contributes the inequality
//! `sum_{i in D(v)} x_i <= |D(v)|`, where `D(v)` is the union of the blocks
//! weakly below `v`. This crate counts the lattice points of the resulting
//! polytopes and their dilates, derives Ehrhart and h*-polynomials,
//! evaluates the closed forms known for the octopus family `Q_{n,k}` and
//! its generalisation `Q_{n,d,k}`, simulates the largest-available parking
//! protocol, and checks the open positivity and real-rootedness statements
//! over exhaustively enumerated arbors.

pub mod checker;
pub mod closedform;
pub mod combin;
pub mod error;
pub mod lattice;
pub mod parking;
pub mod poly;
pub mod arbor;
pub mod polyalg;

pub use arbor::Arbor;
pub use error::{Error, Result};
pub use poly::{IntPolynomial, Polynomial, RatPolynomial};
