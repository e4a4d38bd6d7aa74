//! Exact computation of local factors, metaplectic local coefficient
//! matrices, and Plancherel measures for genuine principal series of
//! n-fold covers of SL2 over a tame p-adic field.
//!
//! Scalars live in cyclotomic fields Q(zeta_N) with N growing on demand;
//! s-dependent quantities are rational functions in X = q^{-s}.  Every
//! closed formula exposed here has an independent exact evaluation (shell
//! sums of p-adic integrals) and the test suites compare the two routes
//! as identities of rational functions, never numerically.

pub mod chars;
pub mod cover;
pub mod cyclo;
pub mod dmatrix;
pub mod error;
pub mod factors;
pub mod field;
pub mod hilbert;
pub mod nt;
pub mod plancherel;
pub mod ratfun;
pub mod schwartz;
pub mod serialize;
pub mod weil;
pub mod zeta;

pub use chars::{AddChar, MultChar};
pub use cyclo::{sqrt_q, CycNum};
pub use dmatrix::{dmatrix, CoeffMatrix, DMethod};
pub use error::{Error, Result};
pub use field::{FieldCtx, PadicNum};
pub use ratfun::{RatFun, Subst};
pub use schwartz::{fourier, SchwartzFn};
pub use zeta::{mellin, tilde_mellin, zeta_nk, zeta_nk_tilde, Measure};
