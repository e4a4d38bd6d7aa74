//! Closed-form local factors (L, epsilon, gamma, their metaplectic
//! counterpart) and the two families of functional-equation coefficients.
//!
//! gamma is computed from the defining functional equation with an explicit
//! test function, epsilon is solved out of gamma and the L-ratio, and the
//! metaplectic gamma has both a closed form and an independent evaluation
//! as a twisted Tate-type integral; the two are compared exactly.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::chars::{AddChar, MultChar};
use crate::cyclo::{q_pow_half, rat, CycNum};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, PadicNum};
use crate::ratfun::{RatFun, Subst};
use crate::schwartz::{fourier, SchwartzFn};
use crate::weil;
use crate::zeta::{mellin, shell_sum, zeta_nk, zeta_nk_tilde, Measure, ShellParams, WeilArg, WeilPart};

/// L(s, chi): 1/(1 - chi(pi) X) for unramified chi, else 1.
pub fn lfactor(q: u64, chi: &MultChar) -> RatFun {
    lfactor_at(q, chi, 1, 0)
}

/// L(a s + b/2, chi) as a rational function of X = q^{-s}.
pub fn lfactor_at(q: u64, chi: &MultChar, a: i64, b_halves: i64) -> RatFun {
    if chi.conductor() > 0 {
        return RatFun::one(q);
    }
    let c = chi
        .at_pi()
        .mul(&q_pow_half(q, -b_halves).expect("odd prime"));
    RatFun::from_laurent_terms(
        q,
        &[(0, CycNum::one())],
        &[(0, CycNum::one()), (a, c.neg())],
    )
}

fn factor_cache_key(ctx: &FieldCtx, chi: &MultChar, psi: &AddChar, tag: &str) -> String {
    let tw = psi.twist();
    format!(
        "{tag}/{}/{}/{}/{}@{}/{}:{}",
        ctx.p,
        chi.conductor(),
        chi.unit_exp(),
        chi.at_pi(),
        chi.at_pi().order(),
        tw.valuation().expect("twist nonzero"),
        tw.unit_mod(tw.precision().unwrap_or(1)).expect("unit"),
    )
}

fn factor_cache() -> &'static Mutex<HashMap<String, RatFun>> {
    static CACHE: OnceLock<Mutex<HashMap<String, RatFun>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Tate gamma factor via the functional equation with the canonical test
/// function q^r 1_{1+P^r}, r > max(1, e(chi)); independent of r.
pub fn tate_gamma(ctx: &FieldCtx, chi: &MultChar, psi: &AddChar) -> Result<RatFun> {
    let key = factor_cache_key(ctx, chi, psi, "gamma");
    if let Some(f) = factor_cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let f = tate_gamma_with_r(ctx, chi, psi, (chi.conductor() + 1).max(2))?;
    factor_cache().lock().unwrap().insert(key, f.clone());
    Ok(f)
}

pub fn tate_gamma_with_r(
    ctx: &FieldCtx,
    chi: &MultChar,
    psi: &AddChar,
    r: u32,
) -> Result<RatFun> {
    if r as i64 <= (chi.conductor() as i64).max(1) {
        return Err(Error::BoundTooSmall {
            got: r as i64,
            min: (chi.conductor() as i64).max(1) + 1,
        });
    }
    let phi = SchwartzFn::canonical_test_fn(ctx.p, r, ctx.prec);
    let denom = mellin(ctx, &phi, chi, Measure::DStar, None)?;
    let phi_hat = fourier(&phi, psi)?;
    let numer = mellin(ctx, &phi_hat, &chi.inv()?, Measure::DStar, None)?
        .substitute(Subst::OneMinus)?;
    numer.div(&denom)
}

/// epsilon(s, chi, psi) = gamma(s, chi, psi) L(s, chi)/L(1-s, chi^{-1}).
pub fn epsilon_factor(ctx: &FieldCtx, chi: &MultChar, psi: &AddChar) -> Result<RatFun> {
    let key = factor_cache_key(ctx, chi, psi, "epsilon");
    if let Some(f) = factor_cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let g = tate_gamma(ctx, chi, psi)?;
    let l_num = lfactor(ctx.p, chi);
    let l_den = lfactor_at(ctx.p, &chi.inv()?, -1, 2);
    // epsilon is a monomial; storing it reduced keeps every later product
    // with it as small as possible
    let eps = g.mul(&l_num).div(&l_den)?;
    let eps = match eps.as_monomial()? {
        Some((c, k)) => RatFun::monomial(ctx.p, c, k),
        None => eps,
    };
    factor_cache().lock().unwrap().insert(key, eps.clone());
    Ok(eps)
}

/// The monomial data (constant, exponent) of epsilon; exponent is
/// e(chi) - e(psi).
pub fn epsilon_constant(ctx: &FieldCtx, chi: &MultChar, psi: &AddChar) -> Result<(CycNum, i64)> {
    epsilon_factor(ctx, chi, psi)?
        .as_monomial()?
        .ok_or_else(|| Error::RouteDisagreement("epsilon factor is not a monomial".into()))
}

/// gamma_F^{-1}(psi_{-1}) chi(-1) gamma^{-1}(2s, chi^2, psi_2)
/// gamma(s + 1/2, chi, psi): the closed form the twisted integral equals.
pub fn meta_gamma_dual(ctx: &FieldCtx, chi: &MultChar, psi: &AddChar) -> Result<RatFun> {
    let q = ctx.p;
    let gf_inv = weil::gamma_f(&psi.inverse())?.inv()?;
    let psi2 = psi.double_arg();
    let g2_inv = tate_gamma(ctx, &chi.pow(2)?, &psi2)?
        .substitute(Subst::Double)?
        .inv()?;
    let g1 = tate_gamma(ctx, chi, psi)?.substitute(Subst::PlusHalf)?;
    Ok(g2_inv
        .mul(&g1)
        .scale(&gf_inv.mul(&chi.at_minus_one()))
        .mul(&RatFun::one(q)))
}

/// The metaplectic gamma-tilde(s, chi, psi), defined by
/// gamma-tilde(1-s, chi^{-1}, psi) = meta_gamma_dual(chi, psi).
pub fn meta_gamma(ctx: &FieldCtx, chi: &MultChar, psi: &AddChar) -> Result<RatFun> {
    meta_gamma_dual(ctx, &chi.inv()?, psi)?.substitute(Subst::OneMinus)
}

/// The twisted Tate-type integral
///   int_{P^{-M}} chi(x) |x|^s gamma_psi^{-1}(x) psi(x) d*_psi x
/// as an exact rational function; requires M at or above the vanishing
/// threshold so the value is M-independent.
pub fn sweet_integral(
    ctx: &FieldCtx,
    chi: &MultChar,
    psi: &AddChar,
    big_m: i64,
) -> Result<RatFun> {
    let quad = MultChar::quadratic_unit_char(ctx.p);
    let e_max = chi
        .conductor()
        .max(chi.unit_part().mul(&quad)?.conductor()) as i64;
    let e_psi = psi.conductor();
    if big_m < e_max - e_psi {
        return Err(Error::BoundTooSmall {
            got: big_m,
            min: e_max - e_psi,
        });
    }
    let one = PadicNum::one(ctx.p, ctx.prec);
    shell_sum(&ShellParams {
        ctx,
        chi,
        additive: Some(psi.twist()),
        weil: Some(WeilPart {
            psi,
            arg: WeilArg::Direct(one),
        }),
        step: 1,
        residue: 0,
        v_min: Some(-big_m),
        measure_halves: e_psi,
    })
}

/// Coefficients of the shell-restricted Tate functional equation:
/// zeta_{n,k}(s, chi, phi-hat) = sum_m theta_m zeta_{n,m+e(psi,chi)-k}(1-s, chi^{-1}, phi).
pub fn theta_family(
    ctx: &FieldCtx,
    chi: &MultChar,
    psi: &AddChar,
    n: u32,
) -> Result<Vec<RatFun>> {
    let q = ctx.p;
    let eps_inv = epsilon_factor(ctx, chi, psi)?.inv()?;
    let mut out = Vec::with_capacity(n as usize);
    if chi.conductor() > 0 {
        for m in 0..n {
            out.push(if m == 0 {
                eps_inv.scale(&chi.at_minus_one())
            } else {
                RatFun::zero(q)
            });
        }
        return Ok(out);
    }
    let l_ns = lfactor_at(q, &chi.pow(n as i64)?, n as i64, 0);
    let l_dual_inv = lfactor_at(q, &chi.pow(-(n as i64))?, -(n as i64), 2).inv()?;
    let vol = CycNum::from_rat(rat((q - 1) as i64, q as i64));
    for m in 0..n as i64 {
        let mono = RatFun::monomial(q, chi.at_pi().pow(m)?, m);
        let body = if m == n as i64 - 1 {
            l_dual_inv.clone()
        } else {
            RatFun::from_cyc(q, vol.clone())
        };
        out.push(eps_inv.mul(&l_ns).mul(&mono).mul(&body));
    }
    Ok(out)
}

pub fn theta(ctx: &FieldCtx, m: u32, chi: &MultChar, psi: &AddChar, n: u32) -> Result<RatFun> {
    if m >= n {
        return Err(Error::OutOfRange("theta index", m as i64));
    }
    Ok(theta_family(ctx, chi, psi, n)?.swap_remove(m as usize))
}

/// Coefficients of the metaplectic analog (n even):
/// zeta_{n,k}(s, chi, phi~) = sum_m theta~_m zeta_{n,m+e(psi,chi^2)-k}(1-s, chi^{-1}, phi).
pub fn theta_tilde_family(
    ctx: &FieldCtx,
    chi: &MultChar,
    psi: &AddChar,
    n: u32,
) -> Result<Vec<RatFun>> {
    if n % 2 != 0 {
        return Err(Error::InvalidParams("theta-tilde needs even n".into()));
    }
    let q = ctx.p;
    let psi2 = psi.double_arg();
    let chi2 = chi.pow(2)?;
    let prefactor = {
        let gf_inv = weil::gamma_f(&psi.inverse())?.inv()?;
        let e2_inv = epsilon_factor(ctx, &chi2, &psi2)?
            .substitute(Subst::Double)?
            .inv()?;
        let e1 = epsilon_factor(ctx, chi, psi)?.substitute(Subst::PlusHalf)?;
        e2_inv.mul(&e1).scale(&gf_inv.mul(&chi.at_minus_one()))
    };
    let vol = CycNum::from_rat(rat((q - 1) as i64, q as i64));
    let mut out = Vec::with_capacity(n as usize);
    if chi2.conductor() > 0 {
        for m in 0..n {
            out.push(if m == 0 {
                prefactor.clone()
            } else {
                RatFun::zero(q)
            });
        }
        return Ok(out);
    }
    let l_ns = lfactor_at(q, &chi.pow(n as i64)?, n as i64, 0);
    if chi.conductor() == 0 {
        for m in 0..n as i64 {
            let val = if m == n as i64 - 1 {
                // q^{-1/2} q^s chi^{-1}(pi)
                let c = q_pow_half(q, -1)?.mul(&chi.at_pi().inv()?);
                prefactor.mul(&RatFun::monomial(q, c, -1))
            } else if m % 2 == 0 {
                let mono = RatFun::monomial(q, chi.at_pi().pow(m)?, m);
                prefactor.mul(&l_ns).mul(&mono).scale(&vol)
            } else {
                RatFun::zero(q)
            };
            out.push(val);
        }
        return Ok(out);
    }
    // chi ramified, chi^2 unramified
    let l_dual_inv = lfactor_at(q, &chi.pow(-(n as i64))?, -(n as i64), 2).inv()?;
    for m in 0..n as i64 {
        let val = if m % 2 == 1 {
            let mono = RatFun::monomial(q, chi.at_pi().pow(m - 1)?, m - 1);
            let body = if m == n as i64 - 1 {
                l_dual_inv.clone()
            } else {
                RatFun::from_cyc(q, vol.clone())
            };
            prefactor.mul(&l_ns).mul(&mono).mul(&body)
        } else {
            RatFun::zero(q)
        };
        out.push(val);
    }
    Ok(out)
}

pub fn theta_tilde(
    ctx: &FieldCtx,
    m: u32,
    chi: &MultChar,
    psi: &AddChar,
    n: u32,
) -> Result<RatFun> {
    if m >= n {
        return Err(Error::OutOfRange("theta-tilde index", m as i64));
    }
    Ok(theta_tilde_family(ctx, chi, psi, n)?.swap_remove(m as usize))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeVariant {
    TateFamily,
    MetaplecticFamily,
}

#[derive(Debug, Clone)]
pub struct FeRecord {
    pub k: u32,
    pub lhs: RatFun,
    pub rhs: RatFun,
    pub pass: bool,
}

/// Check the shell functional equation for every k at once.
pub fn verify_functional_equation(
    ctx: &FieldCtx,
    n: u32,
    chi: &MultChar,
    psi: &AddChar,
    phi: &SchwartzFn,
    variant: FeVariant,
) -> Result<Vec<FeRecord>> {
    let chi_inv = chi.inv()?;
    let dual: Vec<RatFun> = (0..n)
        .map(|j| {
            zeta_nk(ctx, phi, &chi_inv, n, j as i64, Measure::DStar)?
                .substitute(Subst::OneMinus)
        })
        .collect::<Result<Vec<_>>>()?;
    let (coeffs, shift) = match variant {
        FeVariant::TateFamily => (
            theta_family(ctx, chi, psi, n)?,
            psi.conductor() - chi.conductor() as i64,
        ),
        FeVariant::MetaplecticFamily => (
            theta_tilde_family(ctx, chi, psi, n)?,
            psi.conductor() - chi.pow(2)?.conductor() as i64,
        ),
    };
    let phi_hat = match variant {
        FeVariant::TateFamily => Some(fourier(phi, psi)?),
        FeVariant::MetaplecticFamily => None,
    };
    let mut out = Vec::with_capacity(n as usize);
    for k in 0..n {
        let lhs = match variant {
            FeVariant::TateFamily => zeta_nk(
                ctx,
                phi_hat.as_ref().expect("computed above"),
                chi,
                n,
                k as i64,
                Measure::DStar,
            )?,
            FeVariant::MetaplecticFamily => {
                zeta_nk_tilde(ctx, phi, chi, psi, n, k as i64, Measure::DStar)?
            }
        };
        let mut rhs = RatFun::zero(ctx.p);
        for (m, th) in coeffs.iter().enumerate() {
            if th.is_zero() {
                continue;
            }
            let idx = (m as i64 + shift - k as i64).rem_euclid(n as i64) as usize;
            rhs = rhs.add(&th.mul(&dual[idx]));
        }
        let pass = lhs == rhs;
        out.push(FeRecord { k, lhs, rhs, pass });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_int;

    fn unram_chi(p: u64, c: CycNum) -> MultChar {
        MultChar::unramified(p, c).unwrap()
    }

    #[test]
    fn lfactor_shapes() {
        let chi = MultChar::trivial(5);
        // L(s,1) = 1/(1-X)
        assert_eq!(
            lfactor(5, &chi),
            RatFun::geometric_tail(5, CycNum::one(), 0, CycNum::one(), 1)
        );
        let ram = MultChar::new(5, 1, 1, CycNum::one()).unwrap();
        assert_eq!(lfactor(5, &ram), RatFun::one(5));
        // L(ns, chi^n) for unramified chi via substitution oracle
        let chi3 = unram_chi(7, CycNum::root_of_unity(3, 1));
        let direct = lfactor_at(7, &chi3.pow(3).unwrap(), 3, 0);
        let subbed = lfactor(7, &chi3.pow(3).unwrap())
            .substitute_affine(3, 0)
            .unwrap();
        assert_eq!(direct, subbed);
    }

    #[test]
    fn trivial_gamma_is_l_ratio() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::trivial(5);
        let g = tate_gamma(&ctx, &chi, &psi).unwrap();
        // (1 - X) / (1 - q^{-1} X^{-1})
        let expect = lfactor_at(5, &chi, -1, 2).div(&lfactor(5, &chi)).unwrap();
        assert_eq!(g, expect);
        // r-independence
        let g3 = tate_gamma_with_r(&ctx, &chi, &psi, 3).unwrap();
        let g4 = tate_gamma_with_r(&ctx, &chi, &psi, 4).unwrap();
        assert_eq!(g, g3);
        assert_eq!(g, g4);
    }

    #[test]
    fn gamma_reflection_product() {
        // gamma(s,chi,psi) gamma(1-s,chi^{-1},psi) = chi(-1)
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        for chi in [
            MultChar::trivial(5),
            unram_chi(5, CycNum::root_of_unity(8, 1)),
            MultChar::new(5, 1, 1, CycNum::root_of_unity(4, 1)).unwrap(),
            MultChar::new(5, 2, 3, CycNum::from_int(2)).unwrap(),
        ] {
            let g = tate_gamma(&ctx, &chi, &psi).unwrap();
            let g_dual = tate_gamma(&ctx, &chi.inv().unwrap(), &psi)
                .unwrap()
                .substitute(Subst::OneMinus)
                .unwrap();
            let prod = g.mul(&g_dual);
            assert_eq!(
                prod,
                RatFun::from_cyc(5, chi.at_minus_one()),
                "e(chi) = {}",
                chi.conductor()
            );
        }
    }

    #[test]
    fn epsilon_is_monomial_with_conductor_exponent() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        let psi_ram = psi
            .twisted(&ctx.from_ratio(1, 5).unwrap())
            .unwrap();
        for (chi, psi, expect_exp) in [
            (MultChar::trivial(5), &psi, 0i64),
            (unram_chi(5, CycNum::root_of_unity(3, 1)), &psi, 0),
            (MultChar::new(5, 1, 2, CycNum::one()).unwrap(), &psi, 1),
            (MultChar::new(5, 2, 3, CycNum::root_of_unity(8, 1)).unwrap(), &psi, 2),
            (MultChar::trivial(5), &psi_ram, -1),
            (MultChar::new(5, 1, 1, CycNum::one()).unwrap(), &psi_ram, 0),
        ] {
            let (c, k) = epsilon_constant(&ctx, &chi, psi).unwrap();
            assert_eq!(
                k,
                expect_exp,
                "exponent e(chi)-e(psi) for e(chi)={} e(psi)={}",
                chi.conductor(),
                psi.conductor()
            );
            assert!(!c.is_zero());
            // unramified pair: epsilon = 1
            if chi.conductor() == 0 && psi.conductor() == 0 {
                assert!(c.is_one());
            }
        }
    }

    #[test]
    fn epsilon_gauss_modulus() {
        // e(chi) = 1 at p = 5: |epsilon-constant|^2 = q
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::new(5, 1, 1, CycNum::root_of_unity(8, 3)).unwrap();
        let (c, k) = epsilon_constant(&ctx, &chi, &psi).unwrap();
        assert_eq!(k, 1);
        assert_eq!(c.mul(&c.conj()), CycNum::from_int(5));
    }

    #[test]
    fn epsilon_product_identity() {
        // eps(s,chi,psi) eps(-s,chi^{-1},psi) = chi(-1) q^{-e(psi,chi)}
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        for chi in [
            MultChar::trivial(5),
            MultChar::new(5, 1, 1, CycNum::root_of_unity(4, 1)).unwrap(),
            MultChar::new(5, 2, 7, CycNum::from_int(3)).unwrap(),
        ] {
            let e1 = epsilon_factor(&ctx, &chi, &psi).unwrap();
            let e2 = epsilon_factor(&ctx, &chi.inv().unwrap(), &psi)
                .unwrap()
                .substitute(Subst::Negate)
                .unwrap();
            // chi(-1) q^{-e(psi,chi)} = chi(-1) q^{e(chi)} for spherical psi
            let expect = RatFun::from_cyc(
                5,
                chi.at_minus_one().scale(&rat_pow_int(5, chi.conductor() as i64)),
            );
            assert_eq!(e1.mul(&e2), expect, "e(chi) = {}", chi.conductor());
        }
    }

    fn rat_pow_int(p: u64, k: i64) -> crate::cyclo::Rat {
        crate::cyclo::Rat::from_integer(num::BigInt::from(p)).pow(k as i32)
    }

    #[test]
    fn epsilon_change_of_psi() {
        // eps(s, chi, psi_a) = chi(a) |a|^{s - 1/2} eps(s, chi, psi)
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::new(5, 1, 2, CycNum::root_of_unity(3, 1)).unwrap();
        for a_val in [
            ctx.from_int(2),
            ctx.uniformizer(),
            ctx.unit_times_pi_pow(3, 2),
        ] {
            let psi_a = psi.twisted(&a_val).unwrap();
            let lhs = epsilon_factor(&ctx, &chi, &psi_a).unwrap();
            let va = a_val.valuation().unwrap();
            // |a|^{s-1/2} = q^{va/2} X^{va}
            let scale = RatFun::monomial(
                5,
                chi.eval(&ctx, &a_val).unwrap().mul(&q_pow_half(5, va).unwrap()),
                va,
            );
            let rhs = scale.mul(&epsilon_factor(&ctx, &chi, &psi).unwrap());
            assert_eq!(lhs, rhs, "v(a) = {va}");
        }
    }

    #[test]
    fn theta_n1_degenerates_to_tate() {
        // n = 1: theta_0 = gamma(1-s, chi^{-1}, psi)
        let ctx = FieldCtx::new(7, 1).unwrap();
        let psi = AddChar::unramified(&ctx);
        for chi in [
            MultChar::trivial(7),
            unram_chi(7, CycNum::root_of_unity(4, 1)),
            MultChar::new(7, 1, 3, CycNum::one()).unwrap(),
        ] {
            let th = theta(&ctx, 0, &chi, &psi, 1).unwrap();
            let g = tate_gamma(&ctx, &chi.inv().unwrap(), &psi)
                .unwrap()
                .substitute(Subst::OneMinus)
                .unwrap();
            assert_eq!(th, g, "e(chi) = {}", chi.conductor());
        }
    }

    #[test]
    fn theta_ramified_support() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::new(7, 1, 1, CycNum::root_of_unity(4, 1)).unwrap();
        let fam = theta_family(&ctx, &chi, &psi, 3).unwrap();
        let expect0 = epsilon_factor(&ctx, &chi, &psi)
            .unwrap()
            .inv()
            .unwrap()
            .scale(&chi.at_minus_one());
        assert_eq!(fam[0], expect0);
        assert!(fam[1].is_zero());
        assert!(fam[2].is_zero());
    }

    #[test]
    fn sweet_integral_equals_closed_form_small() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        for chi in [
            MultChar::trivial(5),
            unram_chi(5, CycNum::root_of_unity(4, 1)),
            MultChar::new(5, 1, 1, CycNum::one()).unwrap(),
            MultChar::new(5, 1, 2, CycNum::root_of_unity(8, 1)).unwrap(),
        ] {
            let m0 = (chi.conductor() as i64).max(1);
            let lhs = sweet_integral(&ctx, &chi, &psi, m0).unwrap();
            let rhs = meta_gamma_dual(&ctx, &chi, &psi).unwrap();
            assert_eq!(lhs, rhs, "e(chi) = {}, order data {:?}", chi.conductor(), chi.unit_exp());
            // M-stability
            let lhs2 = sweet_integral(&ctx, &chi, &psi, m0 + 1).unwrap();
            assert_eq!(lhs2, rhs);
        }
    }

    #[test]
    fn tilde_gamma_functional_equation() {
        // zeta(1-s, chi^{-1}, phi~) = zeta(s, chi, phi) gamma~(s, chi, psi)
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = unram_chi(5, CycNum::root_of_unity(4, 1));
        let phi = SchwartzFn::canonical_test_fn(5, 2, 12)
            .add(&SchwartzFn::coset(5, CycNum::from_int(2), ctx.from_int(2), 3));
        let lhs = crate::zeta::tilde_mellin(&ctx, &phi, &chi.inv().unwrap(), &psi, Measure::DStar, None)
            .unwrap()
            .substitute(Subst::OneMinus)
            .unwrap();
        let rhs = mellin(&ctx, &phi, &chi, Measure::DStar, None)
            .unwrap()
            .mul(&meta_gamma(&ctx, &chi, &psi).unwrap());
        assert_eq!(lhs, rhs);
        let _ = rat_int(0);
    }

    #[test]
    fn tate_family_fe_small_grid() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let psi = AddChar::unramified(&ctx);
        let phi = SchwartzFn::ball(7, 0)
            .add(&SchwartzFn::coset(7, CycNum::root_of_unity(3, 1), ctx.from_int(2), 2));
        for chi in [
            MultChar::trivial(7),
            unram_chi(7, CycNum::root_of_unity(6, 1)),
            MultChar::new(7, 1, 2, CycNum::one()).unwrap(),
        ] {
            let recs =
                verify_functional_equation(&ctx, 3, &chi, &psi, &phi, FeVariant::TateFamily)
                    .unwrap();
            for r in &recs {
                assert!(
                    r.pass,
                    "k = {}, e(chi) = {}: {} vs {}",
                    r.k,
                    chi.conductor(),
                    r.lhs,
                    r.rhs
                );
            }
        }
    }

    #[test]
    fn metaplectic_family_fe_small_grid() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        let phi = SchwartzFn::canonical_test_fn(5, 2, 12)
            .add(&SchwartzFn::coset(5, CycNum::from_int(-1), ctx.from_ratio(2, 5).unwrap(), 1));
        for chi in [
            MultChar::trivial(5),
            unram_chi(5, CycNum::root_of_unity(4, 1)),
            MultChar::new(5, 1, 2, CycNum::root_of_unity(4, 1)).unwrap(), // quadratic: chi^2 unram
            MultChar::new(5, 1, 1, CycNum::one()).unwrap(),               // chi^2 ramified
        ] {
            let recs = verify_functional_equation(
                &ctx,
                2,
                &chi,
                &psi,
                &phi,
                FeVariant::MetaplecticFamily,
            )
            .unwrap();
            for r in &recs {
                assert!(
                    r.pass,
                    "k = {}, e(chi) = {}, e(chi^2) = {}",
                    r.k,
                    chi.conductor(),
                    chi.pow(2).unwrap().conductor()
                );
            }
        }
    }
}
