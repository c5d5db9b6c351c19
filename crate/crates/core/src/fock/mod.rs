//! Charged free-fermion Fock space on degree windows.

pub mod bilinear;
pub mod operator;
pub mod state;
pub mod vector;
pub mod vertex;

pub use bilinear::{k_prime_value, l0_value, w_value, Bilinear};
pub use operator::{expectation, FockOperator, Profile};
pub use state::{basis_inner, BasisState, Fermion};
pub use vector::{Coeff, FockVector};
pub use vertex::{basis_up_to, diag_exp_h, exp_lowering, exp_raising, g_minus_transfer, g_minus_vacuum, gamma_interlacing, Vertex};
