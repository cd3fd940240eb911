//! Polar polynomials and their zeros.
//!
//! For a monic `P` of degree `n` and a monic `R` of degree `k`, the polar
//! polynomial `Q` is the unique monic solution of
//! `d^k/dz^k (R Q) = (n+1)_k P`. This crate constructs `Q`, computes the
//! zeros of `P`, `Q` and the companion S-polynomial, and checks the
//! Grace-type localization `Z(Q) ⊂ xi - K * Z(S)` numerically.

pub mod cli;
pub mod error;
pub mod par;
pub mod polar;
pub mod poly;
pub mod regions;
pub mod roots;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use par::Execution;
pub use polar::{
    apply_tr, grace_convolve, grace_factorize, s_poly, solve_polar, solve_polar_shifted,
    GraceFactorization, PolarProblem,
};
pub use poly::{
    binomial_coeffs, derivative_k, from_binomial, poly_mul, rising_factorial, taylor_shift,
    BinomialForm, Polynomial,
};
pub use regions::{
    enclosing_disk, localization_check, polar_zero_bound, region_contains, LocalizationReport,
    Region, RegionKind,
};
pub use roots::{find_roots, max_modulus, roots_of, RootSet};
