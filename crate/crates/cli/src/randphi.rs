//! Seeded random test functions.

use padic_lf_core::cyclo::{rat, CycNum};
use padic_lf_core::schwartz::{SchwartzFn, SchwartzTerm};
use padic_lf_core::{FieldCtx, PadicNum};
use rand::Rng;

fn random_coeff<R: Rng>(rng: &mut R) -> CycNum {
    match rng.gen_range(0..6) {
        0 => CycNum::one(),
        1 => CycNum::from_int(-1),
        2 => CycNum::from_int(2),
        3 => CycNum::from_rat(rat(1, 2)),
        4 => CycNum::root_of_unity(4, 1),
        _ => CycNum::root_of_unity(3, 1),
    }
}

fn random_center<R: Rng>(rng: &mut R, ctx: &FieldCtx) -> PadicNum {
    let u = rng.gen_range(1..ctx.p);
    let v = rng.gen_range(-2i64..=2);
    ctx.unit_times_pi_pow(u, v)
}

/// A random sum of coset terms (the class accepted by every transform).
pub fn random_coset_fn<R: Rng>(rng: &mut R, ctx: &FieldCtx, terms: usize) -> SchwartzFn {
    let list = (0..terms)
        .map(|_| {
            let center = random_center(rng, ctx);
            let v = center.valuation().expect("nonzero center");
            let radius = rng.gen_range(1i64..=3);
            SchwartzTerm {
                coeff: random_coeff(rng),
                center: Some(center),
                level: v + radius,
                modulation: None,
            }
        })
        .collect();
    SchwartzFn::new(ctx.p, list)
}

/// A random test function mixing coset and ball terms.
pub fn random_schwartz<R: Rng>(rng: &mut R, ctx: &FieldCtx, terms: usize) -> SchwartzFn {
    let list = (0..terms)
        .map(|_| {
            if rng.gen_bool(0.5) {
                let center = random_center(rng, ctx);
                let v = center.valuation().expect("nonzero center");
                let radius = rng.gen_range(1i64..=3);
                SchwartzTerm {
                    coeff: random_coeff(rng),
                    center: Some(center),
                    level: v + radius,
                    modulation: None,
                }
            } else {
                SchwartzTerm {
                    coeff: random_coeff(rng),
                    center: None,
                    level: rng.gen_range(-2i64..=2),
                    modulation: None,
                }
            }
        })
        .collect();
    SchwartzFn::new(ctx.p, list)
}
