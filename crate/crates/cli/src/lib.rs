//! Batch verification harness and table emitters over the exact
//! local-factor engine.

pub mod charenum;
pub mod config;
pub mod emit;
pub mod randphi;
pub mod report;
pub mod suites;

pub use config::{JobConfig, PiValuePolicy, ALL_SUITES};
pub use report::{IdentityRecord, VerifyReport};
pub use suites::run_suite;
