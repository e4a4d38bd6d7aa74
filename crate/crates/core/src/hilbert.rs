//! The tame n-th power Hilbert symbol and its derived structures: the
//! characters eta_x, the valuation-shell indicators beta_{n,k}, the
//! isomorphism beta_pi on F*_d, and the splitting xi of the symbol.

use crate::chars::{AddChar, MultChar};
use crate::cyclo::{rat, CycNum};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, PadicNum};
use crate::nt;
use crate::weil;

/// Exponent k with (x, y) = zeta_n^k, via the tame symbol
/// (-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)} mod p raised to (p-1)/n.
pub fn hilbert_exp(ctx: &FieldCtx, x: &PadicNum, y: &PadicNum) -> Result<u64> {
    let vx = x.valuation()?;
    let vy = y.valuation()?;
    let ux = x.unit_mod(1)?;
    let uy = y.unit_mod(1)?;
    let p = ctx.p;
    let sign = if (vx * vy) % 2 != 0 { p - 1 } else { 0 }; // (-1) = g^{(p-1)/2}... handled via residue below
    let mut t: u64 = if sign == 0 { 1 } else { p - 1 };
    let phi = p - 1;
    let red = |e: i64, m: u64| -> u64 { nt::mod_pow(m, e.rem_euclid(phi as i64) as u64, p) };
    t = t * red(vy, ux) % p;
    t = t * red(-vx, uy) % p;
    let k = ctx.dlog(t, 1)?;
    Ok(k % ctx.n as u64)
}

pub fn hilbert_symbol(ctx: &FieldCtx, x: &PadicNum, y: &PadicNum) -> Result<CycNum> {
    let k = hilbert_exp(ctx, x, y)?;
    Ok(CycNum::root_of_unity(ctx.n as u64, k as i64))
}

/// The quadratic Hilbert symbol (x, y)_2 as +-1, independent of ctx.n.
pub fn hilbert2(p: u64, x: &PadicNum, y: &PadicNum) -> Result<i32> {
    let vx = x.valuation()?;
    let vy = y.valuation()?;
    let ux = x.unit_mod(1)?;
    let uy = y.unit_mod(1)?;
    let mut t: i64 = if (vx * vy) % 2 != 0 { -1 } else { 1 };
    let phi = (p - 1) as i64;
    t *= nt::mod_pow(ux, vy.rem_euclid(phi) as u64, p) as i64;
    t *= nt::mod_pow(uy, (-vx).rem_euclid(phi) as u64, p) as i64;
    Ok(nt::legendre(t, p))
}

/// eta_x(y) = (x, y) as a multiplicative character.
pub fn eta_char(ctx: &FieldCtx, x: &PadicNum) -> Result<MultChar> {
    let vx = x.valuation()?;
    let p = ctx.p;
    let step = (p - 1) / ctx.n as u64;
    // eta_x(g) = (x, g): tame symbol g^{-v(x)}
    let unit_exp = ((-vx).rem_euclid((p - 1) as i64) as u64 * step) % (p - 1);
    let at_pi = hilbert_symbol(ctx, x, &ctx.uniformizer())?;
    MultChar::new(p, 1, unit_exp, at_pi)
}

/// eta_pi^k, the k-th power of the character y -> (pi, y).
pub fn eta_pi_pow(ctx: &FieldCtx, k: i64) -> Result<MultChar> {
    eta_char(ctx, &ctx.uniformizer())?.pow(k)
}

/// beta_pi(u pi^{md}) = u pi^m on F*_d.
pub fn beta_pi(ctx: &FieldCtx, x: &PadicNum) -> Result<PadicNum> {
    let v = x.valuation()?;
    let d = ctx.d as i64;
    if v.rem_euclid(d) != 0 {
        return Err(Error::NotInSubgroup { v, d: ctx.d });
    }
    let m = v / d;
    // x = unit * p^v; with respect to pi: x = (unit * pi_unit^{-v}) pi^v
    // beta(x) = (unit * pi_unit^{-v}) pi^m = unit * pi_unit^{m-v} * p^m
    let prec = x.precision().unwrap_or(ctx.prec);
    let modl = ctx.p.pow(prec);
    let adj = nt::mod_pow(
        if (m - v) >= 0 {
            ctx.pi_unit % modl
        } else {
            nt::mod_inv(ctx.pi_unit % modl, modl).expect("unit")
        },
        (m - v).unsigned_abs(),
        modl,
    );
    let unit = (x.unit_mod(prec)? as u128 * adj as u128 % modl as u128) as u64;
    Ok(PadicNum::from_unit_and_val(ctx.p, unit, m, prec))
}

/// The splitting xi_{psi,pi} of the Hilbert symbol on F*_d: trivial for
/// odd n, gamma_psi^{-1}(beta_pi(a)) for even n.
pub fn xi_splitting(ctx: &FieldCtx, psi: &AddChar, a: &PadicNum) -> Result<CycNum> {
    if ctx.n % 2 == 1 {
        let v = a.valuation()?;
        if v.rem_euclid(ctx.d as i64) != 0 {
            return Err(Error::NotInSubgroup { v, d: ctx.d });
        }
        return Ok(CycNum::one());
    }
    let b = beta_pi(ctx, a)?;
    weil::weil_index(ctx, &b, psi)?.inv()
}

/// Characteristic function of F*_{n,k} by the valuation test.
pub fn beta_nk(ctx: &FieldCtx, x: &PadicNum, k: i64) -> Result<bool> {
    let v = x.valuation()?;
    Ok(v.rem_euclid(ctx.n as i64) == k.rem_euclid(ctx.n as i64))
}

/// The same indicator through the root-of-unity sum
/// (1/n) sum_l (u0, x pi^{-k})^l.
pub fn beta_nk_sum(ctx: &FieldCtx, x: &PadicNum, k: i64) -> Result<CycNum> {
    let u0 = PadicNum::from_unit_and_val(ctx.p, ctx.u0, 0, ctx.prec);
    let shifted = x.mul(&ctx.uniformizer().pow(-k)?);
    let e = hilbert_exp(ctx, &u0, &shifted)?;
    let n = ctx.n as u64;
    let mut acc = CycNum::zero(1);
    for l in 0..n {
        acc = acc.add(&CycNum::root_of_unity(n, (e * l) as i64));
    }
    Ok(acc.scale(&rat(1, n as i64)))
}
