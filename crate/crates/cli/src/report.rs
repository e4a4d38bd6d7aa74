//! Machine-readable verification reports.

use padic_lf_core::ratfun::RatFun;
use padic_lf_core::serialize::{ratfun_to_json, RatFunJson};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::JobConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: String,
    pub label: String,
    pub params: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<RatFunJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<RatFunJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub config: JobConfig,
    pub records: Vec<IdentityRecord>,
    pub total: usize,
    pub failures: usize,
}

impl VerifyReport {
    pub fn new(config: JobConfig) -> VerifyReport {
        VerifyReport {
            schema: config.schema,
            config,
            records: Vec::new(),
            total: 0,
            failures: 0,
        }
    }

    /// Record a checked identity; the sides are stored on failure (always)
    /// or when explicitly requested for showcase rows.
    pub fn push(
        &mut self,
        id: String,
        label: &str,
        params: Value,
        pass: bool,
        sides: Option<(&RatFun, &RatFun)>,
        keep_sides: bool,
        wall_ms: Option<u64>,
    ) {
        let (lhs, rhs) = match sides {
            Some((l, r)) if !pass || keep_sides => {
                (Some(ratfun_to_json(l)), Some(ratfun_to_json(r)))
            }
            _ => (None, None),
        };
        self.records.push(IdentityRecord {
            id,
            label: label.to_string(),
            params,
            pass,
            lhs,
            rhs,
            wall_ms,
        });
        self.total += 1;
        if !pass {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
