//! Weil indices of quadratic characters x -> psi(a x^2), computed through
//! exact finite Riemann sums c_psi(a) = int_{P^{-M}} psi(a x^2) dx.
//!
//! All integrals here use the additive Haar measure with vol(Z_p) = 1.
//! gamma_F(psi_a) = |2a|^{1/2} c_psi0(a) and the normalized index is
//! gamma_psi(a) = gamma_F(psi_a)/gamma_F(psi); it depends on a only
//! through its square class, which keeps every sum tiny.

use crate::chars::AddChar;
use crate::cyclo::{q_pow_half, CycNum};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, PadicNum};

const SUM_LIMIT: u64 = 4_000_000;

/// c_psi(a) = int_{P^{-M}} psi(a x^2) dx as an exact finite sum.
///
/// Valid (independent of M) once |a| >= q^{-M}; smaller a is rejected.
pub fn c_psi(a: &PadicNum, psi: &AddChar, big_m: i64) -> Result<CycNum> {
    let p = a.p();
    let va = a.valuation()?;
    if va > big_m {
        return Err(Error::BoundTooSmall {
            got: big_m,
            min: va,
        });
    }
    let e = psi.conductor();
    // subdivision level: increments of psi(a x^2) vanish on cosets of P^K
    let k = (e - va + big_m)
        .max((e - va + 1).div_euclid(2))
        .max(-big_m);
    let digits = big_m + k;
    debug_assert!(digits >= 0);
    let count = (p as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
    if count > SUM_LIMIT as u128 {
        return Err(Error::InvalidParams(format!(
            "c_psi Riemann sum would need p^{digits} terms"
        )));
    }
    let prec = ((digits + e.abs() + va.abs()) as u32 + 4).min(crate::field::max_precision(p));
    let mut acc = CycNum::zero(1);
    for idx in 0..count as u64 {
        // x0 = idx * p^{-M}
        let x0 = PadicNum::from_int(p, idx as i64, prec)
            .mul(&PadicNum::from_unit_and_val(p, 1, -big_m, prec));
        let arg = a.mul(&x0).mul(&x0);
        acc = acc.add(&psi.eval(&arg)?);
    }
    // each coset has volume q^{-K}
    Ok(acc.scale(&rat_pow(p, -k)))
}

fn rat_pow(p: u64, k: i64) -> crate::cyclo::Rat {
    use num::BigInt;
    let base = num::BigRational::from_integer(BigInt::from(p));
    base.pow(k as i32)
}

/// gamma_F(psi) for psi = (psi0)_a: |2a|^{1/2} c_psi0(a).
pub fn gamma_f(psi: &AddChar) -> Result<CycNum> {
    let p = psi.p();
    let a = psi.twist();
    let va = a.valuation()?;
    let m = va.max(1);
    let base = AddChar::base(p, a.precision().unwrap_or(8).max(8));
    let c = c_psi(a, &base, m)?;
    // |2a| = q^{-v(a)} for odd p
    Ok(q_pow_half(p, -va)?.mul(&c))
}

/// Normalized Weil index gamma_psi(a) = gamma_F(psi_a)/gamma_F(psi),
/// computed on the square-class representative of a.
pub fn weil_index(ctx: &FieldCtx, a: &PadicNum, psi: &AddChar) -> Result<CycNum> {
    let rep = a.square_class_rep(ctx)?;
    let num = gamma_f(&psi.twisted(&rep)?)?;
    let den = gamma_f(psi)?;
    Ok(num.mul(&den.inv()?))
}

pub fn weil_index_inv(ctx: &FieldCtx, a: &PadicNum, psi: &AddChar) -> Result<CycNum> {
    weil_index(ctx, a, psi)?.inv()
}

/// Per-character table of gamma_psi^{-1} on square classes, used by the
/// shell engine: gamma_psi(U p^tau) = legendre(U)^{tau + e(psi)} gamma_psi(p^tau)
/// for any unit U.
#[derive(Debug, Clone)]
pub struct WeilTable {
    pub p: u64,
    /// gamma_psi^{-1}(p^tau) for tau = 0, 1
    pub inv_ppow: [CycNum; 2],
    /// parity of e(psi)
    pub e_parity: u32,
}

impl WeilTable {
    pub fn new(ctx: &FieldCtx, psi: &AddChar) -> Result<WeilTable> {
        let one = PadicNum::one(ctx.p, ctx.prec);
        let pp = PadicNum::from_unit_and_val(ctx.p, 1, 1, ctx.prec);
        Ok(WeilTable {
            p: ctx.p,
            inv_ppow: [
                weil_index_inv(ctx, &one, psi)?,
                weil_index_inv(ctx, &pp, psi)?,
            ],
            e_parity: (psi.conductor().rem_euclid(2)) as u32,
        })
    }

    /// Exponent of the quadratic unit twist at shell parity tau.
    pub fn unit_twist_parity(&self, tau: u32) -> u32 {
        (tau + self.e_parity) % 2
    }

    /// gamma_psi^{-1}(U p^tau) for a unit with given Legendre symbol.
    pub fn inv_value(&self, legendre_u: i32, tau: u32) -> CycNum {
        let base = &self.inv_ppow[(tau % 2) as usize];
        if legendre_u == -1 && self.unit_twist_parity(tau % 2) == 1 {
            base.neg()
        } else {
            base.clone()
        }
    }
}

/// Replace the uniformizer by u*pi for the unit class making
/// gamma_psi(pi) = 1; only meaningful when 4 | n.  Returns the context
/// (possibly unchanged) and whether a change was applied.
pub fn normalize_uniformizer(ctx: &FieldCtx, psi: &AddChar) -> Result<(FieldCtx, bool)> {
    if ctx.n % 4 != 0 {
        return Ok((ctx.clone(), false));
    }
    for u in [1u64, ctx.nonresidue()] {
        let cand = ctx.with_pi_unit((ctx.pi_unit * u) % ctx.p.pow(ctx.prec));
        let g = weil_index(&cand, &cand.uniformizer(), psi)?;
        if g.is_one() {
            let changed = cand.pi_unit != ctx.pi_unit;
            return Ok((cand, changed));
        }
    }
    Err(Error::InvalidParams(
        "no unit class makes gamma_psi(pi) = 1".into(),
    ))
}

/// Both sides of the completed-square integral identity
///
///   int_{P^{-M}} psi^{-1}(z c^2 - 2c) dc
///     = psi(z^{-1}) |z|^{-1/2} gamma_psi^{-1}(z) c_psi(-1) 1_{P^{-M}}(z^{-1}),
///
/// returned as (lhs, rhs) for exact comparison.
pub fn quad_exp_integral_sides(
    ctx: &FieldCtx,
    psi: &AddChar,
    z: &PadicNum,
    big_m: i64,
) -> Result<(CycNum, CycNum)> {
    let p = ctx.p;
    let vz = z.valuation()?;
    let e = psi.conductor();
    let psi_inv = psi.inverse();
    // subdivision: increments of z c^2 and -2c over c0 + P^K must die in psi
    let k = (e - vz + big_m)
        .max((e - vz + 1).div_euclid(2))
        .max(e + big_m)
        .max(e)
        .max(-big_m);
    let digits = big_m + k;
    let count = (p as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
    if count > SUM_LIMIT as u128 {
        return Err(Error::InvalidParams(format!(
            "quadratic integral sum would need p^{digits} terms"
        )));
    }
    let prec = ((digits + e.abs() + vz.abs()) as u32 + 4).min(crate::field::max_precision(p));
    let two = PadicNum::from_int(p, 2, prec);
    let mut lhs = CycNum::zero(1);
    for idx in 0..count as u64 {
        let c = PadicNum::from_int(p, idx as i64, prec)
            .mul(&PadicNum::from_unit_and_val(p, 1, -big_m, prec));
        let arg = z.mul(&c).mul(&c).sub(&two.mul(&c));
        lhs = lhs.add(&psi_inv.eval(&arg)?);
    }
    lhs = lhs.scale(&rat_pow(p, -k));

    let rhs = if vz > big_m {
        // v(z^{-1}) < -M: the indicator kills the closed form
        CycNum::zero(1)
    } else {
        let zinv = z.inv()?;
        let m_needed = vz.abs().max(1);
        let minus_one = PadicNum::from_int(p, -1, prec);
        let c_minus_one = c_psi(&minus_one, psi, m_needed.max(e.abs() + 1))?;
        psi.eval(&zinv)?
            .mul(&q_pow_half(p, vz)?)
            .mul(&weil_index_inv(ctx, z, psi)?)
            .mul(&c_minus_one)
    };
    Ok((lhs, rhs))
}
