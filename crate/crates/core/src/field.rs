//! The tame local field Q_p and its elements at tracked finite precision.
//!
//! A nonzero element is u * p^v with the unit u known modulo p^prec.
//! Additions can cancel digits; when every known digit cancels the result
//! degrades to an "approximate zero" and any later query that needs a
//! valuation or a unit reports a precision error instead of guessing.

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::nt;

/// Working context: F = Q_p with mu_n in F, a chosen uniformizer, and the
/// embedding of the prime-to-p roots of unity into C fixed by g -> zeta_{p-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    pub p: u64,
    pub n: u32,
    /// n / gcd(n, 2)
    pub d: u32,
    /// generator of (Z/p^k)^* for every k
    pub g: u64,
    /// unit u_0 with (u_0, pi) primitive in mu_n
    pub u0: u64,
    /// uniformizer = pi_unit * p
    pub pi_unit: u64,
    /// default relative precision for constructed elements
    pub prec: u32,
}

impl FieldCtx {
    pub fn new(p: u64, n: u32) -> Result<FieldCtx> {
        if p < 3 || !nt::is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} must be an odd prime")));
        }
        if n == 0 || (p - 1) % n as u64 != 0 {
            return Err(Error::InvalidParams(format!(
                "n = {n} must divide p - 1 = {}",
                p - 1
            )));
        }
        let g = nt::primitive_root(p);
        let prec = max_precision(p).min(12);
        Ok(FieldCtx {
            p,
            n,
            d: n / nt::gcd(n as u64, 2) as u32,
            g,
            u0: g,
            pi_unit: 1,
            prec,
        })
    }

    pub fn with_pi_unit(&self, u: u64) -> FieldCtx {
        let mut c = self.clone();
        c.pi_unit = u;
        c
    }

    pub fn q(&self) -> u64 {
        self.p
    }

    pub fn uniformizer(&self) -> PadicNum {
        PadicNum::from_unit_and_val(self.p, self.pi_unit, 1, self.prec)
    }

    pub fn from_int(&self, t: i64) -> PadicNum {
        PadicNum::from_int(self.p, t, self.prec)
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<PadicNum> {
        PadicNum::from_ratio(self.p, num, den, self.prec)
    }

    /// u * pi^k for a unit residue u.
    pub fn unit_times_pi_pow(&self, u: u64, k: i64) -> PadicNum {
        let pi = self.uniformizer();
        let unit = PadicNum::from_unit_and_val(self.p, u, 0, self.prec);
        unit.mul(&pi.pow(k).expect("uniformizer is invertible"))
    }

    /// Discrete log of a unit residue against g, at level p^e.
    pub fn dlog(&self, u: u64, e: u32) -> Result<u64> {
        nt::dlog(self.g, u, self.p, e).ok_or(Error::ZeroInput("dlog of non-unit"))
    }

    /// Embedding of the Teichmueller lift: residue u -> zeta_{p-1}^{dlog u}.
    pub fn embed_residue(&self, u: u64) -> Result<CycNum> {
        let k = self.dlog(u, 1)?;
        Ok(CycNum::root_of_unity(self.p - 1, k as i64))
    }

    /// Smallest quadratic non-residue mod p.
    pub fn nonresidue(&self) -> u64 {
        (2..self.p)
            .find(|&u| nt::legendre(u as i64, self.p) == -1)
            .expect("odd prime has a non-residue")
    }
}

/// Largest K with p^K < 2^62.
pub fn max_precision(p: u64) -> u32 {
    let mut k = 0u32;
    let mut acc: u128 = 1;
    while acc * (p as u128) < (1u128 << 62) {
        acc *= p as u128;
        k += 1;
    }
    k
}

#[derive(Debug, Clone)]
enum Val {
    Zero,
    /// congruent to 0 mod p^below, exact value unknown
    ApproxZero { below: i64 },
    Unit { v: i64, unit: u64, prec: u32 },
}

/// An element of Q_p at finite tracked precision.
#[derive(Debug, Clone)]
pub struct PadicNum {
    p: u64,
    val: Val,
}

impl PadicNum {
    pub fn zero(p: u64) -> PadicNum {
        PadicNum { p, val: Val::Zero }
    }

    pub fn one(p: u64, prec: u32) -> PadicNum {
        PadicNum::from_unit_and_val(p, 1, 0, prec)
    }

    pub fn from_unit_and_val(p: u64, unit: u64, v: i64, prec: u32) -> PadicNum {
        let prec = prec.min(max_precision(p));
        assert!(prec >= 1, "precision must be positive");
        let m = p.pow(prec);
        let u = unit % m;
        assert!(u % p != 0, "unit part must be prime to p");
        PadicNum {
            p,
            val: Val::Unit { v, unit: u, prec },
        }
    }

    pub fn from_int(p: u64, t: i64, prec: u32) -> PadicNum {
        if t == 0 {
            return PadicNum::zero(p);
        }
        let neg = t < 0;
        let mut a = t.unsigned_abs();
        let mut v = 0i64;
        while a % p == 0 {
            a /= p;
            v += 1;
        }
        let prec = prec.min(max_precision(p));
        let m = p.pow(prec);
        let mut u = a % m;
        if neg {
            u = (m - u) % m;
        }
        PadicNum::from_unit_and_val(p, u, v, prec)
    }

    pub fn from_ratio(p: u64, num: i64, den: i64, prec: u32) -> Result<PadicNum> {
        if den == 0 {
            return Err(Error::DivisionByZero("PadicNum::from_ratio"));
        }
        let n = PadicNum::from_int(p, num, prec);
        let d = PadicNum::from_int(p, den, prec);
        n.div(&d)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.val, Val::Zero)
    }

    /// Ok(true) only for exact zero; approximate zeros are an error.
    pub fn is_zero(&self) -> Result<bool> {
        match &self.val {
            Val::Zero => Ok(true),
            Val::ApproxZero { below } => Err(Error::ApproximateZero { below: *below }),
            Val::Unit { .. } => Ok(false),
        }
    }

    pub fn valuation(&self) -> Result<i64> {
        match &self.val {
            Val::Zero => Err(Error::ZeroInput("valuation of 0")),
            Val::ApproxZero { below } => Err(Error::ApproximateZero { below: *below }),
            Val::Unit { v, .. } => Ok(*v),
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match &self.val {
            Val::Unit { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    /// Unit part modulo p^k.
    pub fn unit_mod(&self, k: u32) -> Result<u64> {
        match &self.val {
            Val::Zero => Err(Error::ZeroInput("unit part of 0")),
            Val::ApproxZero { below } => Err(Error::ApproximateZero { below: *below }),
            Val::Unit { unit, prec, .. } => {
                if *prec < k {
                    return Err(Error::Precision {
                        needed: k as i64,
                        have: *prec as i64,
                    });
                }
                Ok(unit % self.p.pow(k))
            }
        }
    }

    pub fn neg(&self) -> PadicNum {
        match &self.val {
            Val::Zero | Val::ApproxZero { .. } => self.clone(),
            Val::Unit { v, unit, prec } => {
                let m = self.p.pow(*prec);
                PadicNum {
                    p: self.p,
                    val: Val::Unit {
                        v: *v,
                        unit: (m - unit % m) % m,
                        prec: *prec,
                    },
                }
            }
        }
    }

    pub fn mul(&self, other: &PadicNum) -> PadicNum {
        assert_eq!(self.p, other.p);
        match (&self.val, &other.val) {
            (Val::Zero, _) | (_, Val::Zero) => PadicNum::zero(self.p),
            (Val::ApproxZero { below }, Val::Unit { v, .. })
            | (Val::Unit { v, .. }, Val::ApproxZero { below }) => PadicNum {
                p: self.p,
                val: Val::ApproxZero { below: below + v },
            },
            (Val::ApproxZero { below: b1 }, Val::ApproxZero { below: b2 }) => PadicNum {
                p: self.p,
                val: Val::ApproxZero { below: b1 + b2 },
            },
            (
                Val::Unit {
                    v: v1,
                    unit: u1,
                    prec: k1,
                },
                Val::Unit {
                    v: v2,
                    unit: u2,
                    prec: k2,
                },
            ) => {
                let prec = (*k1).min(*k2);
                let m = self.p.pow(prec) as u128;
                let u = (*u1 as u128 % m) * (*u2 as u128 % m) % m;
                PadicNum {
                    p: self.p,
                    val: Val::Unit {
                        v: v1 + v2,
                        unit: u as u64,
                        prec,
                    },
                }
            }
        }
    }

    pub fn inv(&self) -> Result<PadicNum> {
        match &self.val {
            Val::Zero => Err(Error::DivisionByZero("PadicNum::inv")),
            Val::ApproxZero { below } => Err(Error::ApproximateZero { below: *below }),
            Val::Unit { v, unit, prec } => {
                let m = self.p.pow(*prec);
                let u = nt::mod_inv(*unit, m).expect("unit is invertible");
                Ok(PadicNum {
                    p: self.p,
                    val: Val::Unit {
                        v: -v,
                        unit: u,
                        prec: *prec,
                    },
                })
            }
        }
    }

    pub fn div(&self, other: &PadicNum) -> Result<PadicNum> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<PadicNum> {
        if k == 0 {
            let prec = self.precision().unwrap_or(1).max(1);
            return Ok(PadicNum::one(self.p, prec));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc: Option<PadicNum> = None;
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul(&b),
                });
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc.unwrap())
    }

    pub fn add(&self, other: &PadicNum) -> PadicNum {
        assert_eq!(self.p, other.p);
        // absolute precision of each operand
        let abs_prec = |v: &Val| -> Option<i64> {
            match v {
                Val::Zero => None, // infinite
                Val::ApproxZero { below } => Some(*below),
                Val::Unit { v, prec, .. } => Some(v + *prec as i64),
            }
        };
        match (&self.val, &other.val) {
            (Val::Zero, _) => other.clone(),
            (_, Val::Zero) => self.clone(),
            (Val::ApproxZero { below }, Val::Unit { v, unit, prec }) |
            (Val::Unit { v, unit, prec }, Val::ApproxZero { below }) => {
                // known-nonzero side survives if its valuation is visible
                if *v < *below {
                    let new_prec = ((*below - v).min(*prec as i64)) as u32;
                    PadicNum::from_unit_and_val(self.p, *unit, *v, new_prec)
                } else {
                    PadicNum {
                        p: self.p,
                        val: Val::ApproxZero {
                            below: (*below).min(v + *prec as i64),
                        },
                    }
                }
            }
            (Val::ApproxZero { below: b1 }, Val::ApproxZero { below: b2 }) => PadicNum {
                p: self.p,
                val: Val::ApproxZero {
                    below: (*b1).min(*b2),
                },
            },
            (Val::Unit { v: v1, unit: u1, .. }, Val::Unit { v: v2, unit: u2, .. }) => {
                let a_abs = abs_prec(&self.val).unwrap();
                let b_abs = abs_prec(&other.val).unwrap();
                let abs = a_abs.min(b_abs);
                let v = (*v1).min(*v2);
                let digits = abs - v;
                if digits <= 0 {
                    return PadicNum {
                        p: self.p,
                        val: Val::ApproxZero { below: abs },
                    };
                }
                let digits = (digits as u32).min(max_precision(self.p));
                let m = self.p.pow(digits) as u128;
                let lift = |u: &u64, dv: i64| -> u128 {
                    let shift = dv as u32;
                    if shift >= digits {
                        0
                    } else {
                        (*u as u128 % m) * (self.p as u128).pow(shift) % m
                    }
                };
                let s = (lift(u1, v1 - v) + lift(u2, v2 - v)) % m;
                if s == 0 {
                    return PadicNum {
                        p: self.p,
                        val: Val::ApproxZero { below: v + digits as i64 },
                    };
                }
                let mut s64 = s as u64;
                let mut extra = 0i64;
                while s64 % self.p == 0 {
                    s64 /= self.p;
                    extra += 1;
                }
                let new_prec = digits as i64 - extra;
                debug_assert!(new_prec > 0);
                PadicNum::from_unit_and_val(self.p, s64, v + extra, new_prec as u32)
            }
        }
    }

    pub fn sub(&self, other: &PadicNum) -> PadicNum {
        self.add(&other.neg())
    }

    /// Representative of the square class: p^(v mod 2) times 1 or the
    /// fixed non-residue.
    pub fn square_class_rep(&self, ctx: &FieldCtx) -> Result<PadicNum> {
        let v = self.valuation()?;
        let u = self.unit_mod(1)?;
        let rep_u = if nt::legendre(u as i64, self.p) == 1 {
            1
        } else {
            ctx.nonresidue()
        };
        Ok(PadicNum::from_unit_and_val(
            self.p,
            rep_u,
            v.rem_euclid(2),
            ctx.prec,
        ))
    }

    /// Equality at the shared precision: true when the difference carries
    /// no visible nonzero digit.
    pub fn eq_checked(&self, other: &PadicNum) -> Result<bool> {
        let d = self.sub(other);
        match d.val {
            Val::Zero | Val::ApproxZero { .. } => Ok(true),
            Val::Unit { .. } => Ok(false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_construction() {
        let x = PadicNum::from_int(7, 98, 8); // 2 * 7^2
        assert_eq!(x.valuation().unwrap(), 2);
        assert_eq!(x.unit_mod(1).unwrap(), 2);
        let y = PadicNum::from_int(7, -3, 8);
        assert_eq!(y.valuation().unwrap(), 0);
        assert_eq!(y.unit_mod(1).unwrap(), 4);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = 5;
        let a = PadicNum::from_int(p, 7, 6);
        let b = PadicNum::from_int(p, 18, 6);
        assert_eq!(a.add(&b).valuation().unwrap(), 2); // 25
        assert_eq!(a.add(&b).unit_mod(1).unwrap(), 1);
        // full cancellation produces an approximate zero
        let c = a.sub(&PadicNum::from_int(p, 7, 6));
        assert!(c.is_zero().is_err() || c.is_exact_zero());
        // division round trip
        let d = a.div(&b).unwrap().mul(&b);
        assert!(d.eq_checked(&a).unwrap());
    }

    #[test]
    fn ratio_valuations() {
        let x = PadicNum::from_ratio(5, 1, 5, 10).unwrap();
        assert_eq!(x.valuation().unwrap(), -1);
        assert_eq!(x.unit_mod(2).unwrap(), 1);
        let y = PadicNum::from_ratio(5, 3, 50, 10).unwrap();
        assert_eq!(y.valuation().unwrap(), -2);
    }

    #[test]
    fn square_class() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let x = ctx.from_int(3 * 49); // nonresidue 3 times square
        let r = x.square_class_rep(&ctx).unwrap();
        assert_eq!(r.valuation().unwrap(), 0);
        assert_eq!(r.unit_mod(1).unwrap(), 3);
    }

    #[test]
    fn ctx_validation() {
        assert!(FieldCtx::new(7, 3).is_ok());
        assert!(FieldCtx::new(7, 4).is_err());
        assert!(FieldCtx::new(2, 1).is_err());
        assert!(FieldCtx::new(9, 1).is_err());
        let ctx = FieldCtx::new(13, 12).unwrap();
        assert_eq!(ctx.d, 6);
        assert_eq!(ctx.g, 2);
    }
}
