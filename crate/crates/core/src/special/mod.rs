//! Numerical kernels: log-gamma, the regularized incomplete beta function,
//! exact binomial coefficients and adaptive Gauss–Kronrod quadrature.
//!
//! All functions are pure and dependency-free.

mod beta;
mod binomial;
mod gamma;
mod quadrature;

pub use beta::{ln_beta, reg_inc_beta};
pub use binomial::{binomial_coefficient, MAX_EXACT_N as BINOMIAL_MAX_N};
pub use gamma::log_gamma;
pub use quadrature::{integrate, try_integrate, Integral, QuadratureSpec};
