//! Tangential derivations and automorphisms, divergence cocycles and their integrals.

mod cocycles;
mod taut;
mod tder;

pub use cocycles::{
    big_c_q, big_j, bold_r, c_q, div, div_general, gdiv, gdiv_correction, integrate, j_q, pullback, r_series, small_j,
    tdiv, Module,
};
pub use taut::{adjoint, adjoint_with_inverse, exp, exp_operator, TAut};
pub use tder::{combine, tder_basis, TDer};
