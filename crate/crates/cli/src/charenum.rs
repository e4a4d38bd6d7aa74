//! Deterministic enumeration of character classes.
//!
//! For each conductor e up to the bound, one unit-part class per divisor
//! of phi(p^e) (order classes), crossed with a configurable set of values
//! at the uniformizer.

use padic_lf_core::cyclo::CycNum;
use padic_lf_core::nt;
use padic_lf_core::{MultChar, Result};

use crate::config::PiValuePolicy;

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            out.push(d);
        }
    }
    out
}

/// Unit-part classes (e, exponent) with conductor exactly e <= bound.
pub fn unit_part_classes(p: u64, bound: u32) -> Vec<(u32, u64)> {
    let mut out = vec![(0u32, 0u64)];
    for e in 1..=bound {
        let phi = nt::euler_phi_prime_power(p, e);
        for t in divisors(phi) {
            if t == 1 {
                continue; // conductor would drop
            }
            let a = phi / t; // order-t character
            // conductor is exactly e iff p does not divide a (for e >= 2)
            if e >= 2 && a % p == 0 {
                continue;
            }
            out.push((e, a));
        }
    }
    out
}

pub fn pi_values(n: u32, policy: PiValuePolicy) -> Vec<CycNum> {
    match policy {
        PiValuePolicy::Small => vec![
            CycNum::one(),
            CycNum::root_of_unity(8, 1),
            CycNum::from_int(2),
        ],
        PiValuePolicy::Roots2n => (0..2 * n as i64)
            .map(|j| CycNum::root_of_unity(2 * n as u64, j))
            .collect(),
        PiValuePolicy::Roots2nPlusSample => {
            let mut v: Vec<CycNum> = (0..2 * n as i64)
                .map(|j| CycNum::root_of_unity(2 * n as u64, j))
                .collect();
            v.push(CycNum::from_int(2));
            v
        }
    }
}

/// The full deduplicated character list for a policy.
pub fn enumerate_chars(
    p: u64,
    n: u32,
    conductor_bound: u32,
    policy: PiValuePolicy,
) -> Result<Vec<MultChar>> {
    let mut out: Vec<MultChar> = Vec::new();
    for (e, a) in unit_part_classes(p, conductor_bound) {
        for v in pi_values(n, policy) {
            let chi = MultChar::new(p, e, a, v)?;
            if chi.conductor() != e {
                continue;
            }
            if !out.contains(&chi) {
                out.push(chi);
            }
        }
    }
    Ok(out)
}

/// A short deterministic descriptor for report keys.
pub fn chi_id(chi: &MultChar) -> String {
    let pi = chi
        .at_pi()
        .terms_single_exponent()
        .iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect::<Vec<_>>()
        .join("+");
    format!(
        "e{}a{}pi[{}@{}]",
        chi.conductor(),
        chi.unit_exp(),
        pi,
        chi.at_pi().order()
    )
}
