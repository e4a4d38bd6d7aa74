//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored on the tensor basis: for N = q_1 ... q_r a product
//! of prime powers, the monomials zeta_{q_1}^{j_1} ... zeta_{q_r}^{j_r}
//! with 0 <= j_i < phi(q_i) form a Q-basis of Q(zeta_N).  Reduction per
//! coordinate uses the prime-power cyclotomic relation
//!
//!   zeta^{(p-1)p^{a-1} + t} = -(zeta^t + zeta^{p^{a-1}+t} + ... ),
//!
//! so canonical forms are reached in one expansion step per coordinate and
//! equality of values is equality of coefficient tables.  The order N grows
//! on demand: binary operations promote both sides to lcm of their orders.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::nt;

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// base^k as an exact rational (k may be negative).
pub fn rat_pow(base: u64, k: i64) -> Rat {
    BigRational::from_integer(BigInt::from(base)).pow(k as i32)
}

/// Factored order of a cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycOrder {
    pub n: u64,
    /// sorted list of (p, a) with N = prod p^a
    pub factors: Vec<(u64, u32)>,
}

impl CycOrder {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        CycOrder {
            n,
            factors: nt::factorize(n),
        }
    }

    fn prime_power(&self, i: usize) -> u64 {
        let (p, a) = self.factors[i];
        p.pow(a)
    }

    fn phi(&self, i: usize) -> u64 {
        let (p, a) = self.factors[i];
        nt::euler_phi_prime_power(p, a)
    }

    /// Decompose an exponent of zeta_N into per-coordinate exponents.
    fn split_exponent(&self, k: i64) -> Vec<i64> {
        let k = k.rem_euclid(self.n as i64) as u64;
        self.factors
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let q = self.prime_power(i);
                let m = self.n / q;
                let t = nt::mod_inv(m % q, q).expect("coprime by construction");
                ((k % q) as u128 * t as u128 % q as u128) as i64
            })
            .collect()
    }

    /// Recombine per-coordinate exponents into an exponent of zeta_N.
    fn join_exponent(&self, e: &[u32]) -> u64 {
        let mut acc: u128 = 0;
        for (i, &j) in e.iter().enumerate() {
            let q = self.prime_power(i);
            let m = (self.n / q) as u128;
            acc = (acc + j as u128 * m) % self.n as u128;
        }
        acc as u64
    }
}

/// An element of Q(zeta_N), canonical on the tensor basis.
#[derive(Debug, Clone)]
pub struct CycNum {
    order: Arc<CycOrder>,
    coeffs: BTreeMap<Vec<u32>, Rat>,
}

impl CycNum {
    pub fn zero(n: u64) -> Self {
        CycNum {
            order: Arc::new(CycOrder::new(n)),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut c = CycNum::zero(1);
        if !r.is_zero() {
            c.coeffs.insert(Vec::new(), r);
        }
        c
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// zeta_N^k
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let order = Arc::new(CycOrder::new(n));
        let exps = order.split_exponent(k);
        let mut coeffs = BTreeMap::new();
        push_reduced(&mut coeffs, &order, &exps, Rat::one());
        CycNum { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Some(r) iff the value lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.is_empty() {
            return Some(Rat::zero());
        }
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            if e.iter().all(|&j| j == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// Canonical embedding into Q(zeta_M) for N | M.
    pub fn promote(&self, m: u64) -> Result<CycNum> {
        if m == self.order.n {
            return Ok(self.clone());
        }
        if m % self.order.n != 0 {
            return Err(Error::OrderMismatch {
                old: self.order.n,
                new: m,
            });
        }
        let new_order = Arc::new(CycOrder::new(m));
        // map old coordinate i -> new coordinate holding the same prime
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let mut ne = vec![0i64; new_order.factors.len()];
            for (i, &(p, a)) in self.order.factors.iter().enumerate() {
                let ni = new_order
                    .factors
                    .iter()
                    .position(|&(np, _)| np == p)
                    .expect("divisibility checked");
                let na = new_order.factors[ni].1;
                // zeta_{p^a} = zeta_{p^na}^{p^(na-a)}
                ne[ni] = e[i] as i64 * p.pow(na - a) as i64;
            }
            push_reduced(&mut coeffs, &new_order, &ne, c.clone());
        }
        Ok(CycNum {
            order: new_order,
            coeffs,
        })
    }

    fn common_order(&self, other: &CycNum) -> u64 {
        nt::lcm(self.order.n, other.order.n)
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let m = self.common_order(other);
        let a = self.promote(m).expect("lcm divisible");
        let b = other.promote(m).expect("lcm divisible");
        let mut coeffs = a.coeffs;
        for (e, c) in b.coeffs {
            add_coeff(&mut coeffs, e, c);
        }
        CycNum {
            order: a.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            order: self.order.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        let m = self.common_order(other);
        let a = self.promote(m).expect("lcm divisible");
        let b = other.promote(m).expect("lcm divisible");
        let mut coeffs = BTreeMap::new();
        let mut scratch: Vec<i64> = vec![0; a.order.factors.len()];
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in &b.coeffs {
                for (i, s) in scratch.iter_mut().enumerate() {
                    *s = ea[i] as i64 + eb[i] as i64;
                }
                push_reduced(&mut coeffs, &a.order, &scratch, ca * cb);
            }
        }
        CycNum {
            order: a.order,
            coeffs,
        }
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        if r.is_zero() {
            return CycNum::zero(self.order.n);
        }
        CycNum {
            order: self.order.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.clone(), c * r))
                .collect(),
        }
    }

    /// Galois automorphism zeta_N -> zeta_N^t, gcd(t, N) = 1.
    pub fn galois(&self, t: u64) -> Result<CycNum> {
        if nt::gcd(t % self.order.n.max(1), self.order.n) != 1 && self.order.n > 1 {
            return Err(Error::InvalidParams(format!(
                "galois exponent {t} not coprime to {}",
                self.order.n
            )));
        }
        let mut coeffs = BTreeMap::new();
        let mut scratch: Vec<i64> = vec![0; self.order.factors.len()];
        for (e, c) in &self.coeffs {
            for (i, s) in scratch.iter_mut().enumerate() {
                let q = self.order.prime_power(i);
                *s = (e[i] as u128 * (t % q) as u128 % q as u128) as i64;
            }
            push_reduced(&mut coeffs, &self.order, &scratch, c.clone());
        }
        Ok(CycNum {
            order: self.order.clone(),
            coeffs,
        })
    }

    /// Complex conjugation (zeta -> zeta^{-1}) in any embedding.
    pub fn conj(&self) -> CycNum {
        if self.order.n <= 2 {
            return self.clone();
        }
        self.galois(self.order.n - 1).expect("N-1 coprime to N")
    }

    /// Multiplicative inverse of a nonzero element.
    ///
    /// Fast paths: monomials invert directly and elements whose product
    /// with their conjugate is rational (roots of unity, Gauss sums,
    /// epsilon constants) use the conjugate.  The general case descends a
    /// tower of subfields via norms, one prime at a time.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("CycNum::inv"));
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rat(r.recip()));
        }
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            let mut exps: Vec<i64> = e.iter().map(|&j| -(j as i64)).collect();
            let mut coeffs = BTreeMap::new();
            push_reduced(&mut coeffs, &self.order, &exps, c.recip());
            let _ = &mut exps;
            return Ok(CycNum {
                order: self.order.clone(),
                coeffs,
            });
        }
        let w = self.conj();
        let t = self.mul(&w);
        if let Some(r) = t.as_rational() {
            if r.is_zero() {
                // |z|^2 = 0 cannot happen for nonzero z in a CM field
                unreachable!("nonzero element with zero norm");
            }
            return Ok(w.scale(&r.recip()));
        }
        self.inv_by_norm_descent()
    }

    fn inv_by_norm_descent(&self) -> Result<CycNum> {
        let n = self.order.n;
        let (p, a) = *self
            .order
            .factors
            .iter()
            .max_by_key(|&&(p, a)| p.pow(a))
            .expect("non-rational element has a prime factor");
        let sub = n / p;
        // Gal(Q(zeta_N)/Q(zeta_{N/p})) = { t = 1 + k*(N/p) coprime to N }
        let mut partial = CycNum::one();
        for k in 1..p {
            let t = (1 + k as u128 * sub as u128 % n as u128) as u64 % n;
            if nt::gcd(t, n) != 1 {
                continue;
            }
            partial = partial.mul(&self.galois(t)?);
        }
        let norm = self.mul(&partial);
        // the norm lies in Q(zeta_{N/p}); rebase it there
        let rebased = norm.rebase_without_prime_level(p, a)?;
        let inv_norm = rebased.inv()?;
        Ok(partial.mul(&inv_norm))
    }

    /// Rewrite an element known to lie in Q(zeta_{N/p}) at that order.
    fn rebase_without_prime_level(&self, p: u64, a: u32) -> Result<CycNum> {
        let new_n = self.order.n / p;
        let new_order = Arc::new(CycOrder::new(new_n));
        let pos = self
            .order
            .factors
            .iter()
            .position(|&(fp, _)| fp == p)
            .expect("prime present");
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let j = e[pos];
            let mut ne: Vec<i64> = Vec::with_capacity(new_order.factors.len());
            for (i, &(fp, _)) in self.order.factors.iter().enumerate() {
                if fp == p {
                    if a == 1 {
                        if j != 0 {
                            return Err(Error::InvalidParams(
                                "norm did not land in the subfield".into(),
                            ));
                        }
                        // coordinate drops
                    } else {
                        if j % p as u32 != 0 {
                            return Err(Error::InvalidParams(
                                "norm did not land in the subfield".into(),
                            ));
                        }
                        ne.push((j / p as u32) as i64);
                    }
                } else {
                    let _ = i;
                    ne.push(e[i] as i64);
                }
            }
            push_reduced(&mut coeffs, &new_order, &ne, c.clone());
        }
        Ok(CycNum {
            order: new_order,
            coeffs,
        })
    }

    pub fn pow(&self, k: i64) -> Result<CycNum> {
        if k == 0 {
            return Ok(CycNum::one());
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Iterate the canonical terms as (exponent of zeta_N, coefficient).
    pub fn terms_single_exponent(&self) -> Vec<(u64, Rat)> {
        self.coeffs
            .iter()
            .map(|(e, c)| (self.order.join_exponent(e), c.clone()))
            .collect()
    }

    /// Rebuild from (exponent, coefficient) pairs relative to zeta_N.
    pub fn from_single_exponents(n: u64, terms: &[(i64, Rat)]) -> CycNum {
        let order = Arc::new(CycOrder::new(n));
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            let exps = order.split_exponent(*k);
            push_reduced(&mut coeffs, &order, &exps, c.clone());
        }
        CycNum { order, coeffs }
    }
}

fn add_coeff(map: &mut BTreeMap<Vec<u32>, Rat>, e: Vec<u32>, c: Rat) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Push coeff * prod zeta_{q_i}^{e_i} onto the table in canonical form.
fn push_reduced(map: &mut BTreeMap<Vec<u32>, Rat>, order: &CycOrder, exps: &[i64], coeff: Rat) {
    if coeff.is_zero() {
        return;
    }
    let mut e: Vec<u32> = Vec::with_capacity(exps.len());
    for (i, &x) in exps.iter().enumerate() {
        let q = order.prime_power(i) as i64;
        e.push(x.rem_euclid(q) as u32);
    }
    // find a coordinate needing the cyclotomic relation
    for i in 0..e.len() {
        let (p, a) = order.factors[i];
        let phi = order.phi(i) as u32;
        if e[i] >= phi {
            let step = p.pow(a - 1) as u32;
            let t = e[i] - phi; // 0 <= t < p^(a-1)
            debug_assert!(t < step);
            for j in 0..(p - 1) as u32 {
                let mut ne: Vec<i64> = e.iter().map(|&x| x as i64).collect();
                ne[i] = (j * step + t) as i64;
                push_reduced(map, order, &ne, -coeff.clone());
            }
            return;
        }
    }
    add_coeff(map, e, coeff);
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order.n == other.order.n {
            return self.coeffs == other.coeffs;
        }
        let m = self.common_order(other);
        let a = self.promote(m).expect("lcm divisible");
        let b = other.promote(m).expect("lcm divisible");
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms_single_exponent() {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let ac = c.abs();
            if k == 0 {
                write!(f, "{ac}")?;
            } else if ac.is_one() {
                write!(f, "z{}^{}", self.order.n, k)?;
            } else {
                write!(f, "{}*z{}^{}", ac, self.order.n, k)?;
            }
        }
        Ok(())
    }
}

/// The quadratic Gauss sum realization of sqrt(p) for an odd prime p.
///
/// Returns the positive real square root of p under the standard embedding
/// zeta_m = exp(2 pi i / m): the sum g_p = sum_x (x|p) zeta_p^x equals
/// sqrt(p) for p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4, in which case we
/// divide by zeta_4.
pub fn sqrt_q(p: u64) -> Result<CycNum> {
    if p == 2 || !nt::is_prime(p) || p < 3 {
        return Err(Error::NoSquareRoot(p));
    }
    let mut g = CycNum::zero(p);
    for x in 1..p {
        let s = nt::legendre(x as i64, p);
        let term = CycNum::root_of_unity(p, x as i64).scale(&rat_int(s as i64));
        g = g.add(&term);
    }
    if p % 4 == 1 {
        Ok(g)
    } else {
        // divide by i = zeta_4
        let i_inv = CycNum::root_of_unity(4, -1);
        Ok(g.mul(&i_inv))
    }
}

/// q^{k/2} as an exact cyclotomic number (k may be negative or odd).
pub fn q_pow_half(p: u64, k: i64) -> Result<CycNum> {
    let whole = k.div_euclid(2);
    let frac = k.rem_euclid(2);
    let mut acc = CycNum::from_rat(Rat::from_integer(BigInt::from(p)).pow(whole as i32));
    if frac == 1 {
        acc = acc.mul(&sqrt_q(p)?);
    }
    Ok(acc)
}
