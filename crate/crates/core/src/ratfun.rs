//! Rational functions in the formal variable X = q^{-s} with cyclotomic
//! coefficients.
//!
//! A value is stored as X^mono * num(X)/den(X) where num has a nonzero
//! constant term (unless the value is zero) and den is normalized to
//! constant term 1.  Negative powers of X (q^{ns} terms) live in the
//! monomial exponent, so Laurent behaviour costs nothing.  Equality is
//! decided by cross-multiplication, which needs no polynomial gcd; gcd
//! reduction exists separately for pole analysis at X = 1.

use std::fmt;

use num::Zero;

use crate::cyclo::{q_pow_half, rat_int, CycNum, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RatFun {
    q: u64,
    mono: i64,
    num: Vec<CycNum>,
    den: Vec<CycNum>,
}

/// Substitution rules on the complex parameter s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subst {
    /// s -> 2s, X -> X^2
    Double,
    /// s -> s + 1/2, X -> q^{-1/2} X
    PlusHalf,
    /// s -> -s, X -> X^{-1}
    Negate,
    /// s -> 1 - s, X -> q^{-1} X^{-1}
    OneMinus,
    /// s -> s + k/2, X -> q^{-k/2} X
    ShiftHalves(i64),
}

impl Subst {
    /// The affine map s -> a s + b/2 realized by this rule.
    pub fn affine(self) -> (i64, i64) {
        match self {
            Subst::Double => (2, 0),
            Subst::PlusHalf => (1, 1),
            Subst::Negate => (-1, 0),
            Subst::OneMinus => (-1, 2),
            Subst::ShiftHalves(k) => (1, k),
        }
    }
}

fn poly_trim(v: &mut Vec<CycNum>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn poly_is_zero(v: &[CycNum]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn poly_add(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let n = a.len().max(b.len());
    let zero = CycNum::zero(1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.add(y));
    }
    poly_trim(&mut out);
    out
}

fn poly_neg(a: &[CycNum]) -> Vec<CycNum> {
    a.iter().map(|c| c.neg()).collect()
}

fn poly_mul(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![CycNum::zero(1); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_scale(a: &[CycNum], c: &CycNum) -> Vec<CycNum> {
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<CycNum> = a.iter().map(|x| x.mul(c)).collect();
    poly_trim(&mut out);
    out
}

fn poly_eval(a: &[CycNum], x: &CycNum) -> CycNum {
    let mut acc = CycNum::zero(1);
    for c in a.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Quotient and remainder of a by b (b nonzero), coefficients in a field.
fn poly_divmod(a: &[CycNum], b: &[CycNum]) -> Result<(Vec<CycNum>, Vec<CycNum>)> {
    let mut r: Vec<CycNum> = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    if bb.is_empty() {
        return Err(Error::DivisionByZero("poly_divmod"));
    }
    let lead_inv = bb.last().unwrap().inv()?;
    let db = bb.len() - 1;
    if r.len() < bb.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![CycNum::zero(1); r.len() - db];
    while r.len() > db || (r.len() == bb.len() && !r.is_empty() && db == 0) {
        if r.is_empty() || r.len() <= db {
            break;
        }
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().mul(&lead_inv);
        q[k] = q[k].add(&c);
        for i in 0..=db {
            let t = bb[i].mul(&c);
            r[k + i] = r[k + i].sub(&t);
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    Ok((q, r))
}

fn poly_gcd(a: &[CycNum], b: &[CycNum]) -> Result<Vec<CycNum>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divmod(&x, &y)?;
        x = y;
        y = r;
    }
    if x.is_empty() {
        return Ok(x);
    }
    // make monic
    let li = x.last().unwrap().inv()?;
    Ok(poly_scale(&x, &li))
}

impl RatFun {
    /// Build from Laurent data; canonicalizes monomial content and the
    /// denominator constant term.
    pub fn new(q: u64, mono: i64, mut num: Vec<CycNum>, mut den: Vec<CycNum>) -> RatFun {
        poly_trim(&mut num);
        poly_trim(&mut den);
        assert!(!den.is_empty(), "RatFun denominator must be nonzero");
        if num.is_empty() {
            return RatFun {
                q,
                mono: 0,
                num: Vec::new(),
                den: vec![CycNum::one()],
            };
        }
        let nlow = num.iter().position(|c| !c.is_zero()).unwrap();
        let dlow = den.iter().position(|c| !c.is_zero()).unwrap();
        let num: Vec<CycNum> = num[nlow..].to_vec();
        let den: Vec<CycNum> = den[dlow..].to_vec();
        let mono = mono + nlow as i64 - dlow as i64;
        let c0 = &den[0];
        let (num, den) = if c0.is_one() {
            (num, den)
        } else {
            let inv = c0.inv().expect("nonzero constant term");
            (poly_scale(&num, &inv), poly_scale(&den, &inv))
        };
        RatFun { q, mono, num, den }
    }

    pub fn from_laurent_terms(q: u64, num_terms: &[(i64, CycNum)], den_terms: &[(i64, CycNum)]) -> RatFun {
        let build = |terms: &[(i64, CycNum)]| -> (i64, Vec<CycNum>) {
            let live: Vec<&(i64, CycNum)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
            if live.is_empty() {
                return (0, Vec::new());
            }
            let lo = live.iter().map(|(e, _)| *e).min().unwrap();
            let hi = live.iter().map(|(e, _)| *e).max().unwrap();
            let mut poly = vec![CycNum::zero(1); (hi - lo + 1) as usize];
            for (e, c) in live {
                let i = (e - lo) as usize;
                poly[i] = poly[i].add(c);
            }
            (lo, poly)
        };
        let (nlo, num) = build(num_terms);
        let (dlo, den) = build(den_terms);
        assert!(!poly_is_zero(&den), "RatFun denominator must be nonzero");
        RatFun::new(q, nlo - dlo, num, den)
    }

    pub fn zero(q: u64) -> RatFun {
        RatFun {
            q,
            mono: 0,
            num: Vec::new(),
            den: vec![CycNum::one()],
        }
    }

    pub fn one(q: u64) -> RatFun {
        RatFun::from_cyc(q, CycNum::one())
    }

    pub fn from_cyc(q: u64, c: CycNum) -> RatFun {
        RatFun::new(q, 0, vec![c], vec![CycNum::one()])
    }

    pub fn from_rat(q: u64, r: Rat) -> RatFun {
        RatFun::from_cyc(q, CycNum::from_rat(r))
    }

    pub fn from_int(q: u64, n: i64) -> RatFun {
        RatFun::from_rat(q, rat_int(n))
    }

    /// c * X^k
    pub fn monomial(q: u64, c: CycNum, k: i64) -> RatFun {
        RatFun::new(q, k, vec![c], vec![CycNum::one()])
    }

    /// q^{k/2} as a constant.
    pub fn q_half_power(q: u64, k: i64) -> Result<RatFun> {
        Ok(RatFun::from_cyc(q, q_pow_half(q, k)?))
    }

    /// C * X^start / (1 - c X^period): the exact value of the geometric
    /// tail sum_{t >= 0} C (c)^t X^{start + t*period}.
    pub fn geometric_tail(q: u64, coeff: CycNum, start: i64, ratio: CycNum, period: u32) -> RatFun {
        assert!(period > 0);
        let mut den = vec![CycNum::zero(1); period as usize + 1];
        den[0] = CycNum::one();
        den[period as usize] = ratio.neg();
        RatFun::new(q, start, vec![coeff], den)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn mono_exp(&self) -> i64 {
        self.mono
    }

    pub fn num_coeffs(&self) -> &[CycNum] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[CycNum] {
        &self.den
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        assert_eq!(self.q, other.q, "mixed residue fields");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m = self.mono.min(other.mono);
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        // shift numerators so both sit at monomial exponent m
        for _ in 0..(self.mono - m) {
            a.insert(0, CycNum::zero(1));
        }
        for _ in 0..(other.mono - m) {
            b.insert(0, CycNum::zero(1));
        }
        let num = poly_add(&poly_mul(&a, &other.den), &poly_mul(&b, &self.den));
        let den = poly_mul(&self.den, &other.den);
        RatFun::new(self.q, m, num, den)
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            q: self.q,
            mono: self.mono,
            num: poly_neg(&self.num),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        assert_eq!(self.q, other.q, "mixed residue fields");
        if self.is_zero() || other.is_zero() {
            return RatFun::zero(self.q);
        }
        RatFun::new(
            self.q,
            self.mono + other.mono,
            poly_mul(&self.num, &other.num),
            poly_mul(&self.den, &other.den),
        )
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("RatFun::inv"));
        }
        Ok(RatFun::new(
            self.q,
            -self.mono,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: &CycNum) -> RatFun {
        if c.is_zero() {
            return RatFun::zero(self.q);
        }
        RatFun::new(self.q, self.mono, poly_scale(&self.num, c), self.den.clone())
    }

    pub fn pow(&self, k: i64) -> Result<RatFun> {
        if k == 0 {
            return Ok(RatFun::one(self.q));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one(self.q);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute s -> a s + b/2 (X -> q^{-b/2} X^a).
    pub fn substitute_affine(&self, a: i64, b_halves: i64) -> Result<RatFun> {
        assert!(a != 0, "degenerate substitution");
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut num_terms = Vec::with_capacity(self.num.len());
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.mono + k as i64;
            let scaled = c.mul(&q_pow_half(self.q, -b_halves * e)?);
            num_terms.push((a * e, scaled));
        }
        let mut den_terms = Vec::with_capacity(self.den.len());
        for (k, c) in self.den.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = k as i64;
            let scaled = c.mul(&q_pow_half(self.q, -b_halves * e)?);
            den_terms.push((a * e, scaled));
        }
        Ok(RatFun::from_laurent_terms(self.q, &num_terms, &den_terms))
    }

    pub fn substitute(&self, rule: Subst) -> Result<RatFun> {
        let (a, b) = rule.affine();
        self.substitute_affine(a, b)
    }

    /// Exact evaluation at a nonzero rational point X = x.
    pub fn eval_rat(&self, x: &Rat) -> Result<CycNum> {
        if x.is_zero() && self.mono < 0 {
            return Err(Error::DivisionByZero("eval at 0 with Laurent pole"));
        }
        let xc = CycNum::from_rat(x.clone());
        let n = poly_eval(&self.num, &xc);
        let d = poly_eval(&self.den, &xc);
        if d.is_zero() {
            return Err(Error::DivisionByZero("eval at pole"));
        }
        let mut v = n.mul(&d.inv()?);
        if self.mono != 0 {
            let xm = CycNum::from_rat(if self.mono >= 0 {
                x.clone().pow(self.mono as i32)
            } else {
                x.clone().pow(self.mono as i32)
            });
            v = v.mul(&xm);
        }
        Ok(v)
    }

    /// Remove the common polynomial factor of numerator and denominator.
    pub fn reduced(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let g = poly_gcd(&self.num, &self.den)?;
        if g.len() <= 1 {
            return Ok(self.clone());
        }
        let (qn, rn) = poly_divmod(&self.num, &g)?;
        let (qd, rd) = poly_divmod(&self.den, &g)?;
        debug_assert!(rn.is_empty() && rd.is_empty());
        Ok(RatFun::new(self.q, self.mono, qn, qd))
    }

    /// Some((c, k)) iff the reduced value is exactly c X^k.
    pub fn as_monomial(&self) -> Result<Option<(CycNum, i64)>> {
        let r = self.reduced()?;
        if r.is_zero() {
            return Ok(None);
        }
        if r.num.len() == 1 && r.den.len() == 1 {
            // den is the constant 1 after canonicalization
            return Ok(Some((r.num[0].clone(), r.mono)));
        }
        Ok(None)
    }

    /// True iff the value, in lowest terms, has a pole at X = 1 (s = 0).
    pub fn has_pole_at_one(&self) -> Result<bool> {
        let r = self.reduced()?;
        if r.is_zero() {
            return Ok(false);
        }
        let one = CycNum::one();
        Ok(poly_eval(&r.den, &one).is_zero())
    }

    /// Exact value at X = 1 when analytic there.
    pub fn eval_at_one(&self) -> Result<CycNum> {
        let r = self.reduced()?;
        if r.is_zero() {
            return Ok(CycNum::zero(1));
        }
        let one = CycNum::one();
        let d = poly_eval(&r.den, &one);
        if d.is_zero() {
            return Err(Error::DivisionByZero("pole at X=1"));
        }
        Ok(poly_eval(&r.num, &one).mul(&d.inv()?))
    }

    pub fn is_constant(&self) -> Result<Option<CycNum>> {
        match self.as_monomial()? {
            Some((c, 0)) => Ok(Some(c)),
            _ => Ok(if self.is_zero() {
                Some(CycNum::zero(1))
            } else {
                None
            }),
        }
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        assert_eq!(self.q, other.q, "mixed residue fields");
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.mono != other.mono {
            return false;
        }
        let l = poly_mul(&self.num, &other.den);
        let r = poly_mul(&other.num, &self.den);
        l == r
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let show = |p: &[CycNum], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            let mut first = true;
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if k == 0 {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})X^{k}")?;
                }
            }
            Ok(())
        };
        if self.mono != 0 {
            write!(f, "X^{}*", self.mono)?;
        }
        write!(f, "[")?;
        show(&self.num, f)?;
        write!(f, "] / [")?;
        show(&self.den, f)?;
        write!(f, "]")
    }
}
