//! Multiplicative and additive characters of the local field.
//!
//! A multiplicative character is stored by its conductor e, the image of
//! the fixed generator g of (Z/p^e)^* as a power of zeta_{phi(p^e)}, and
//! its value at the chosen uniformizer.  The additive characters are the
//! twists psi_a of the fixed base character psi0 with psi0(x) =
//! zeta_{p^k}^m for x of p-denominator p^k; psi_a is trivial exactly on
//! P^{e} with e = -v(a).

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, PadicNum};
use crate::nt;

/// Character of F^*: unit-part data plus the value at the uniformizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultChar {
    p: u64,
    e: u32,
    /// chi(g) = zeta_{phi(p^e)}^{unit_exp}; 0 when e = 0
    unit_exp: u64,
    at_pi: CycNum,
}

impl MultChar {
    /// Canonicalizes the conductor: exponents divisible by p drop a level.
    pub fn new(p: u64, e: u32, unit_exp: u64, at_pi: CycNum) -> Result<MultChar> {
        if at_pi.is_zero() {
            return Err(Error::ZeroInput("character value at uniformizer"));
        }
        let mut e = e;
        let mut a = if e == 0 {
            0
        } else {
            unit_exp % nt::euler_phi_prime_power(p, e)
        };
        while e >= 2 && a % p == 0 {
            a /= p;
            e -= 1;
        }
        if e == 1 && a == 0 {
            e = 0;
        }
        if e == 0 {
            a = 0;
        }
        Ok(MultChar { p, e, unit_exp: a, at_pi })
    }

    pub fn trivial(p: u64) -> MultChar {
        MultChar {
            p,
            e: 0,
            unit_exp: 0,
            at_pi: CycNum::one(),
        }
    }

    pub fn unramified(p: u64, at_pi: CycNum) -> Result<MultChar> {
        MultChar::new(p, 0, 0, at_pi)
    }

    /// The quadratic character of the units (Legendre symbol), trivial at pi.
    pub fn quadratic_unit_char(p: u64) -> MultChar {
        MultChar {
            p,
            e: 1,
            unit_exp: (p - 1) / 2,
            at_pi: CycNum::one(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u32 {
        self.e
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.e == 0 && self.at_pi.is_one()
    }

    pub fn unit_exp(&self) -> u64 {
        self.unit_exp
    }

    pub fn at_pi(&self) -> &CycNum {
        &self.at_pi
    }

    /// The same character with the uniformizer value replaced.
    pub fn with_at_pi(&self, at_pi: CycNum) -> Result<MultChar> {
        MultChar::new(self.p, self.e, self.unit_exp, at_pi)
    }

    /// Restriction to the units, as a character trivial at pi.
    pub fn unit_part(&self) -> MultChar {
        MultChar {
            p: self.p,
            e: self.e,
            unit_exp: self.unit_exp,
            at_pi: CycNum::one(),
        }
    }

    /// Value on a unit residue class u mod p^max(e,1).
    pub fn eval_unit(&self, ctx: &FieldCtx, u: u64) -> Result<CycNum> {
        if self.e == 0 {
            return Ok(CycNum::one());
        }
        let phi = nt::euler_phi_prime_power(self.p, self.e);
        let k = ctx.dlog(u % self.p.pow(self.e), self.e)?;
        let exp = (self.unit_exp as u128 * k as u128 % phi as u128) as i64;
        Ok(CycNum::root_of_unity(phi, exp))
    }

    /// chi(x) for nonzero x, decomposed against the context uniformizer.
    pub fn eval(&self, ctx: &FieldCtx, x: &PadicNum) -> Result<CycNum> {
        let v = x.valuation()?;
        let pi_val = self.at_pi.pow(v)?;
        if self.e == 0 {
            return Ok(pi_val);
        }
        let level = self.e;
        let m = self.p.pow(level);
        let u = x.unit_mod(level)?;
        // unit of x with respect to pi = pi_unit * p
        let adj = nt::mod_pow(
            nt::mod_inv(ctx.pi_unit % m, m).expect("unit"),
            v.rem_euclid(nt::euler_phi_prime_power(self.p, level) as i64) as u64,
            m,
        );
        let u_pi = (u as u128 * adj as u128 % m as u128) as u64;
        Ok(self.eval_unit(ctx, u_pi)?.mul(&pi_val))
    }

    /// chi(-1) = (-1)^{unit_exp} for ramified chi, 1 otherwise.
    pub fn at_minus_one(&self) -> CycNum {
        if self.e >= 1 && self.unit_exp % 2 == 1 {
            CycNum::from_int(-1)
        } else {
            CycNum::one()
        }
    }

    pub fn mul(&self, other: &MultChar) -> Result<MultChar> {
        assert_eq!(self.p, other.p);
        let e = self.e.max(other.e).max(1);
        let phi = nt::euler_phi_prime_power(self.p, e);
        let lift = |ue: u64, eo: u32| -> u64 {
            if eo == 0 {
                0
            } else {
                (ue as u128 * self.p.pow(e - eo) as u128 % phi as u128) as u64
            }
        };
        let a = (lift(self.unit_exp, self.e) + lift(other.unit_exp, other.e)) % phi;
        MultChar::new(self.p, e, a, self.at_pi.mul(&other.at_pi))
    }

    pub fn pow(&self, k: i64) -> Result<MultChar> {
        if self.e == 0 {
            return MultChar::new(self.p, 0, 0, self.at_pi.pow(k)?);
        }
        let phi = nt::euler_phi_prime_power(self.p, self.e) as i128;
        let a = (self.unit_exp as i128 * k as i128).rem_euclid(phi) as u64;
        MultChar::new(self.p, self.e, a, self.at_pi.pow(k)?)
    }

    pub fn inv(&self) -> Result<MultChar> {
        self.pow(-1)
    }

    /// True when all values lie on the unit circle.
    pub fn is_unitary(&self) -> bool {
        self.at_pi.mul(&self.at_pi.conj()).is_one()
    }

    /// Same restriction to the unit group.
    pub fn same_unit_part(&self, other: &MultChar) -> bool {
        self.e == other.e && self.unit_exp == other.unit_exp
    }
}

/// Additive character psi = (psi0)_a, i.e. x -> psi0(a x).
#[derive(Debug, Clone)]
pub struct AddChar {
    p: u64,
    twist: PadicNum,
}

/// Base character value psi0(x); depends only on x mod Z_p.
pub fn psi0_eval(p: u64, x: &PadicNum) -> Result<CycNum> {
    if x.is_exact_zero() {
        return Ok(CycNum::one());
    }
    let v = match x.valuation() {
        Ok(v) => v,
        Err(Error::ApproximateZero { below }) => {
            // zero to precision below; trivial iff that precision reaches 0
            if below >= 0 {
                return Ok(CycNum::one());
            }
            return Err(Error::Precision {
                needed: 0,
                have: below,
            });
        }
        Err(e) => return Err(e),
    };
    if v >= 0 {
        return Ok(CycNum::one());
    }
    let k = (-v) as u32;
    let u = x.unit_mod(k)?;
    Ok(CycNum::root_of_unity(p.pow(k), u as i64))
}

impl AddChar {
    /// The unramified base character psi0.
    pub fn base(p: u64, prec: u32) -> AddChar {
        AddChar {
            p,
            twist: PadicNum::one(p, prec),
        }
    }

    pub fn unramified(ctx: &FieldCtx) -> AddChar {
        AddChar::base(ctx.p, ctx.prec)
    }

    /// psi_a for nonzero a.
    pub fn twisted(&self, a: &PadicNum) -> Result<AddChar> {
        if a.is_exact_zero() {
            return Err(Error::ZeroInput("additive character twist"));
        }
        let _ = a.valuation()?;
        Ok(AddChar {
            p: self.p,
            twist: self.twist.mul(a),
        })
    }

    pub fn twisted_int(&self, a: i64, prec: u32) -> Result<AddChar> {
        self.twisted(&PadicNum::from_int(self.p, a, prec))
    }

    /// psi_2: x -> psi(2x).
    pub fn double_arg(&self) -> AddChar {
        let two = PadicNum::from_int(self.p, 2, self.twist.precision().unwrap_or(8));
        AddChar {
            p: self.p,
            twist: self.twist.mul(&two),
        }
    }

    /// psi^{-1} = psi_{-1}.
    pub fn inverse(&self) -> AddChar {
        AddChar {
            p: self.p,
            twist: self.twist.neg(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn twist(&self) -> &PadicNum {
        &self.twist
    }

    /// e(psi) = -v(a); psi is trivial exactly on P^{e(psi)}.
    pub fn conductor(&self) -> i64 {
        -self.twist.valuation().expect("twist is a unit times p-power")
    }

    pub fn is_unramified(&self) -> bool {
        self.conductor() == 0
    }

    pub fn eval(&self, x: &PadicNum) -> Result<CycNum> {
        psi0_eval(self.p, &self.twist.mul(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_int;

    #[test]
    fn conductor_canonicalization() {
        // exponent divisible by p at level 2 drops to level 1
        let chi = MultChar::new(5, 2, 5, CycNum::one()).unwrap();
        assert_eq!(chi.conductor(), 1);
        assert_eq!(chi.unit_exp(), 1);
        // trivial unit part drops to unramified
        let chi = MultChar::new(5, 1, 0, CycNum::from_int(2)).unwrap();
        assert_eq!(chi.conductor(), 0);
    }

    #[test]
    fn unit_values_multiplicative() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let chi = MultChar::new(7, 1, 2, CycNum::one()).unwrap();
        for a in 1..7u64 {
            for b in 1..7u64 {
                let lhs = chi.eval_unit(&ctx, a * b % 7).unwrap();
                let rhs = chi.eval_unit(&ctx, a).unwrap().mul(&chi.eval_unit(&ctx, b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn eval_unramified_ignores_units() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let z3 = CycNum::root_of_unity(3, 1);
        let chi = MultChar::unramified(7, z3.clone()).unwrap();
        // chi(u * pi^2) = chi(pi)^2 for any unit u
        let x = ctx.unit_times_pi_pow(3, 2);
        assert_eq!(chi.eval(&ctx, &x).unwrap(), z3.mul(&z3));
    }

    #[test]
    fn at_minus_one() {
        let chi = MultChar::quadratic_unit_char(7);
        // (-1|7) = -1
        assert_eq!(chi.at_minus_one(), CycNum::from_int(-1));
        let chi5 = MultChar::quadratic_unit_char(5);
        assert_eq!(chi5.at_minus_one(), CycNum::from_int(-1).scale(&rat_int(-1)));
        // cross-check against eval at the residue p-1
        let ctx = FieldCtx::new(7, 1).unwrap();
        let v = chi.eval(&ctx, &ctx.from_int(-1)).unwrap();
        assert_eq!(v, chi.at_minus_one());
    }

    #[test]
    fn psi0_values() {
        let p = 5;
        let psi = AddChar::base(p, 10);
        assert_eq!(psi.conductor(), 0);
        // trivial on Z_p
        for t in [0i64, 1, 4, 25, -7] {
            assert!(psi.eval(&PadicNum::from_int(p, t, 10)).unwrap().is_one());
        }
        // psi0(1/5) = zeta_5
        let x = PadicNum::from_ratio(p, 1, 5, 10).unwrap();
        assert_eq!(psi.eval(&x).unwrap(), CycNum::root_of_unity(5, 1));
        // psi0(2/25) = zeta_25^2
        let y = PadicNum::from_ratio(p, 2, 25, 10).unwrap();
        assert_eq!(psi.eval(&y).unwrap(), CycNum::root_of_unity(25, 2));
    }

    #[test]
    fn twisted_conductor() {
        let p = 5;
        let psi = AddChar::base(p, 10);
        let a = PadicNum::from_ratio(p, 1, 5, 10).unwrap();
        let psi_a = psi.twisted(&a).unwrap();
        assert_eq!(psi_a.conductor(), 1);
        // trivial exactly on P^{1}
        assert!(psi_a.eval(&PadicNum::from_int(p, 5, 10)).unwrap().is_one());
        assert!(!psi_a.eval(&PadicNum::from_int(p, 1, 10)).unwrap().is_one());
        let psi_b = psi.twisted_int(25, 10).unwrap();
        assert_eq!(psi_b.conductor(), -2);
    }

    #[test]
    fn char_group_ops() {
        let p = 13;
        let chi = MultChar::new(p, 2, 7, CycNum::root_of_unity(8, 1)).unwrap();
        let chi2 = chi.pow(2).unwrap();
        let chi_inv = chi.inv().unwrap();
        let prod = chi2.mul(&chi_inv).unwrap();
        assert_eq!(prod, chi);
        assert!(chi.mul(&chi_inv).unwrap().is_trivial());
        assert!(chi.is_unitary());
        let bad = MultChar::unramified(p, CycNum::from_int(2)).unwrap();
        assert!(!bad.is_unitary());
    }
}
