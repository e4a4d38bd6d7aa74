//! Job configuration for the verification harness.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Which uniformizer values chi(pi) to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PiValuePolicy {
    /// 1, zeta_8, and the non-root sample 2
    Small,
    /// all roots of unity of order dividing 2n
    Roots2n,
    /// Roots2n plus the non-root sample 2
    Roots2nPlusSample,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobConfig {
    pub schema: u32,
    pub p: u64,
    pub n: u32,
    /// conductor bound for enumerated characters
    pub conductor_bound: u32,
    /// test-function radius; 0 means the per-character default max(2, e+1)
    pub r: u32,
    /// twisted-integral truncation; 0 means the per-character default
    pub big_m: i64,
    /// extra shells checked beyond the analytic vanishing bound
    pub shell_depth: u32,
    pub pi_values: PiValuePolicy,
    /// random test functions per configuration
    pub phi_count: u32,
    pub suites: Vec<String>,
    pub seed: u64,
    /// record wall-clock timings (off by default: reports stay
    /// byte-deterministic)
    pub timings: bool,
}

impl JobConfig {
    pub fn new(p: u64, n: u32, suites: Vec<String>, seed: u64) -> JobConfig {
        JobConfig {
            schema: SCHEMA_VERSION,
            p,
            n,
            conductor_bound: 2,
            r: 0,
            big_m: 0,
            shell_depth: 3,
            pi_values: PiValuePolicy::Roots2nPlusSample,
            phi_count: 10,
            suites,
            seed,
            timings: false,
        }
    }
}

pub const ALL_SUITES: &[&str] = &[
    "structural",
    "epsilon-identities",
    "tate-fe",
    "theta-fe",
    "theta-tilde-fe",
    "sweet-theorem",
    "quad-integral",
    "dmatrix-dual",
    "plancherel",
    "reducibility",
];
