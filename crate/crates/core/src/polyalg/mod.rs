//! Basis changes, sequence predicates, real-root counting, the M-sequence
//! test and exact interpolation.

mod basis;
mod interp;
mod macaulay;
mod sturm;

pub use basis::{
    from_gamma_basis, from_magic_basis, is_palindromic, is_unimodal, to_gamma_basis, to_magic_basis,
    GammaVector, HVector, MagicVector,
};
pub use interp::{hstar_checked, hstar_from_ehrhart, interpolate_from_zero, lagrange_interpolate};
pub use macaulay::{binomial_representation, m_sequence_check, macaulay_bound};
pub use sturm::{all_roots_real_in, locate_roots, sturm_real_root_count, Bound, RootReport, SturmChain};
