//! Locally constant compactly supported test functions and their exact
//! Fourier transforms.
//!
//! A function is a finite sum of terms c * psi0(mu x) * 1_{a + P^m}(x).
//! This class is closed under the psi-Fourier transform with self-dual
//! measure, so double transforms and all Mellin work stay exact.

use crate::chars::{psi0_eval, AddChar};
use crate::cyclo::{q_pow_half, CycNum};
use crate::error::Result;
use crate::field::PadicNum;

#[derive(Debug, Clone)]
pub struct SchwartzTerm {
    pub coeff: CycNum,
    /// None encodes center 0 (the term is supported on the ball P^level)
    pub center: Option<PadicNum>,
    pub level: i64,
    /// extra oscillation x -> psi0(mu x)
    pub modulation: Option<PadicNum>,
}

impl SchwartzTerm {
    fn normalized(mut self) -> Option<SchwartzTerm> {
        if self.coeff.is_zero() {
            return None;
        }
        if let Some(c) = &self.center {
            let absorb = match c.valuation() {
                Ok(v) => v >= self.level,
                Err(_) => c.is_exact_zero(),
            };
            if absorb {
                self.center = None;
            }
        }
        if let Some(m) = &self.modulation {
            if m.is_exact_zero() {
                self.modulation = None;
            }
        }
        Some(self)
    }
}

/// Finite linear combination of modulated ball indicators.
#[derive(Debug, Clone)]
pub struct SchwartzFn {
    pub p: u64,
    pub terms: Vec<SchwartzTerm>,
}

impl SchwartzFn {
    pub fn new(p: u64, terms: Vec<SchwartzTerm>) -> SchwartzFn {
        SchwartzFn {
            p,
            terms: terms.into_iter().filter_map(|t| t.normalized()).collect(),
        }
    }

    /// Indicator of the ball P^m.
    pub fn ball(p: u64, m: i64) -> SchwartzFn {
        SchwartzFn::new(
            p,
            vec![SchwartzTerm {
                coeff: CycNum::one(),
                center: None,
                level: m,
                modulation: None,
            }],
        )
    }

    /// Indicator of a + P^m scaled by coeff.
    pub fn coset(p: u64, coeff: CycNum, center: PadicNum, m: i64) -> SchwartzFn {
        SchwartzFn::new(
            p,
            vec![SchwartzTerm {
                coeff,
                center: Some(center),
                level: m,
                modulation: None,
            }],
        )
    }

    /// q^r * 1_{1 + P^r}: the canonical test function, normalized so its
    /// multiplicative integral is 1.
    pub fn canonical_test_fn(p: u64, r: u32, prec: u32) -> SchwartzFn {
        let coeff = CycNum::from_rat(num::BigRational::from_integer(num::BigInt::from(
            p.pow(r),
        )));
        SchwartzFn::coset(p, coeff, PadicNum::one(p, prec), r as i64)
    }

    /// psi(2x) 1_{P^{-M}}(x) relative to the given additive character.
    pub fn exp_ball(psi: &AddChar, big_m: i64, prec: u32) -> SchwartzFn {
        let p = psi.p();
        let two = PadicNum::from_int(p, 2, prec);
        SchwartzFn::new(
            p,
            vec![SchwartzTerm {
                coeff: CycNum::one(),
                center: None,
                level: -big_m,
                modulation: Some(psi.twist().mul(&two)),
            }],
        )
    }

    pub fn scale(&self, c: &CycNum) -> SchwartzFn {
        SchwartzFn::new(
            self.p,
            self.terms
                .iter()
                .map(|t| SchwartzTerm {
                    coeff: t.coeff.mul(c),
                    ..t.clone()
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &SchwartzFn) -> SchwartzFn {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SchwartzFn::new(self.p, terms)
    }

    /// phi(a x) for nonzero a.
    pub fn dilate(&self, a: &PadicNum) -> Result<SchwartzFn> {
        let va = a.valuation()?;
        let ainv = a.inv()?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(SchwartzTerm {
                    coeff: t.coeff.clone(),
                    center: match &t.center {
                        None => None,
                        Some(c) => Some(c.mul(&ainv)),
                    },
                    level: t.level - va,
                    modulation: t.modulation.as_ref().map(|m| m.mul(a)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SchwartzFn::new(self.p, terms))
    }

    /// phi(-x).
    pub fn negate_arg(&self) -> SchwartzFn {
        SchwartzFn::new(
            self.p,
            self.terms
                .iter()
                .map(|t| SchwartzTerm {
                    coeff: t.coeff.clone(),
                    center: t.center.as_ref().map(|c| c.neg()),
                    level: t.level,
                    modulation: t.modulation.as_ref().map(|m| m.neg()),
                })
                .collect(),
        )
    }

    /// Pointwise exact evaluation.
    pub fn eval(&self, x: &PadicNum) -> Result<CycNum> {
        let mut acc = CycNum::zero(1);
        for t in &self.terms {
            let member = match &t.center {
                None => ball_member(x, t.level)?,
                Some(a) => ball_member(&x.sub(a), t.level)?,
            };
            if !member {
                continue;
            }
            let mut v = t.coeff.clone();
            if let Some(mu) = &t.modulation {
                v = v.mul(&psi0_eval(self.p, &mu.mul(x))?);
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// True when every term is an unmodulated coset indicator, the shape
    /// accepted by the twisted transform.
    pub fn is_coset_family(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.center.is_some() && t.modulation.is_none())
    }
}

fn ball_member(x: &PadicNum, level: i64) -> Result<bool> {
    if x.is_exact_zero() {
        return Ok(true);
    }
    match x.valuation() {
        Ok(v) => Ok(v >= level),
        Err(crate::error::Error::ApproximateZero { below }) => {
            if below >= level {
                Ok(true)
            } else {
                Err(crate::error::Error::Precision {
                    needed: level,
                    have: below,
                })
            }
        }
        Err(e) => Err(e),
    }
}

/// psi-Fourier transform with the self-dual measure
/// (vol(Z_p, d_psi) = q^{e(psi)/2}).
pub fn fourier(phi: &SchwartzFn, psi: &AddChar) -> Result<SchwartzFn> {
    let p = phi.p;
    let w = psi.twist();
    let e = psi.conductor();
    let mut terms = Vec::with_capacity(phi.terms.len());
    for t in &phi.terms {
        // int c psi0(mu y) 1_{a+P^m}(y) psi0(w x y) dy
        //   = c psi0(mu a) psi0(w a x) vol(P^m) 1[ v(w x + mu) >= -m ]
        let vol = q_pow_half(p, e)?.scale(&rat_pow(p, -t.level));
        let mut coeff = t.coeff.mul(&vol);
        match (&t.center, &t.modulation) {
            (None, mu) => {
                // support shifts to -mu/w + P^{e-m}, no oscillation remains
                let center = match mu {
                    None => None,
                    Some(mu) => Some(mu.neg().div(w)?),
                };
                terms.push(SchwartzTerm {
                    coeff,
                    center,
                    level: e - t.level,
                    modulation: None,
                });
            }
            (Some(a), mu) => {
                if let Some(mu) = mu {
                    coeff = coeff.mul(&psi0_eval(p, &mu.mul(a))?);
                }
                let center = match mu {
                    None => None,
                    Some(mu) => Some(mu.neg().div(w)?),
                };
                terms.push(SchwartzTerm {
                    coeff,
                    center,
                    level: e - t.level,
                    modulation: Some(w.mul(a)),
                });
            }
        }
    }
    Ok(SchwartzFn::new(p, terms))
}

fn rat_pow(p: u64, k: i64) -> crate::cyclo::Rat {
    num::BigRational::from_integer(num::BigInt::from(p)).pow(k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn sample_points(p: u64, prec: u32) -> Vec<PadicNum> {
        let mut pts = vec![PadicNum::zero(p)];
        for t in [1i64, 2, 3, -1, 7] {
            pts.push(PadicNum::from_int(p, t, prec));
        }
        for (a, b) in [(1i64, p as i64), (2, p as i64), (1, (p * p) as i64), (-3, p as i64)] {
            pts.push(PadicNum::from_ratio(p, a, b, prec).unwrap());
        }
        for t in [p as i64, 2 * p as i64, (p * p) as i64] {
            pts.push(PadicNum::from_int(p, t, prec));
        }
        pts
    }

    #[test]
    fn unit_ball_is_self_dual() {
        let p = 7;
        let psi = AddChar::base(p, 12);
        let phi = SchwartzFn::ball(p, 0);
        let hat = fourier(&phi, &psi).unwrap();
        for x in sample_points(p, 12) {
            assert_eq!(phi.eval(&x).unwrap(), hat.eval(&x).unwrap());
        }
    }

    #[test]
    fn canonical_test_fn_transform() {
        // phi = q^r 1_{1+P^r}: phi-hat(x) = q^r * q^{-r} psi(x) on P^{-r}
        let p = 5;
        let r = 2u32;
        let psi = AddChar::base(p, 12);
        let phi = SchwartzFn::canonical_test_fn(p, r, 12);
        let hat = fourier(&phi, &psi).unwrap();
        for x in sample_points(p, 12) {
            let expect = match x.valuation() {
                Err(_) => CycNum::one(), // x = 0
                Ok(v) if v >= -(r as i64) => psi.eval(&x).unwrap(),
                _ => CycNum::zero(1),
            };
            assert_eq!(hat.eval(&x).unwrap(), expect);
        }
    }

    #[test]
    fn exp_ball_transform_is_shifted_coset() {
        // f^M = psi(2x) 1_{P^{-M}} under psi_2 maps to q^M 1_{-1 + P^M}
        let p = 5;
        let big_m = 2i64;
        let psi = AddChar::base(p, 12);
        let psi2 = psi.double_arg();
        let f = SchwartzFn::exp_ball(&psi, big_m, 12);
        let hat = fourier(&f, &psi2).unwrap();
        for x in sample_points(p, 12) {
            let member = ball_member(&x.sub(&PadicNum::from_int(p, -1, 12)), big_m).unwrap();
            let expect = if member {
                CycNum::from_rat(rat_pow(p, big_m))
            } else {
                CycNum::zero(1)
            };
            assert_eq!(hat.eval(&x).unwrap(), expect, "x = {x:?}");
        }
    }

    #[test]
    fn double_transform_reflects() {
        let p = 5;
        let ctx = FieldCtx::new(p, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        for psi in [psi.clone(), psi.twisted(&ctx.from_ratio(1, 5).unwrap()).unwrap()] {
            let phi = SchwartzFn::coset(
                p,
                CycNum::root_of_unity(4, 1),
                ctx.from_int(3),
                2,
            )
            .add(&SchwartzFn::ball(p, -1).scale(&CycNum::from_int(2)));
            let hh = fourier(&fourier(&phi, &psi).unwrap(), &psi).unwrap();
            let refl = phi.negate_arg();
            for x in sample_points(p, 12) {
                assert_eq!(
                    hh.eval(&x).unwrap(),
                    refl.eval(&x).unwrap(),
                    "x = {x:?}, e(psi) = {}",
                    psi.conductor()
                );
            }
        }
    }

    #[test]
    fn dilation_pointwise() {
        let p = 7;
        let ctx = FieldCtx::new(p, 3).unwrap();
        let phi = SchwartzFn::coset(p, CycNum::one(), ctx.from_int(2), 1);
        let a = ctx.from_ratio(3, 7).unwrap();
        let phi_a = phi.dilate(&a).unwrap();
        for x in sample_points(p, 12) {
            assert_eq!(
                phi_a.eval(&x).unwrap(),
                phi.eval(&a.mul(&x)).unwrap(),
                "x = {x:?}"
            );
        }
    }
}
