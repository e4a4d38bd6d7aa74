//! Independent oracles for the exact-arithmetic layer.
//!
//! The cyclotomic oracle here is deliberately naive: dense polynomials
//! over Q reduced modulo the N-th cyclotomic polynomial, with Phi_N
//! produced by dividing X^N - 1 by the lower-order cyclotomic factors.
//! It shares no code with the tensor-basis representation it checks.

use num::{BigInt, BigRational, One, Zero};
use padic_lf_core::cyclo::{rat, CycNum, Rat};
use padic_lf_core::ratfun::RatFun;

type Poly = Vec<Rat>;

fn poly_trim(p: &mut Poly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut q: Poly = Vec::new();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        if q.len() < k + 1 {
            q.resize(k + 1, Rat::zero());
        }
        q[k] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            r[k + i] -= t;
        }
        poly_trim(&mut r);
    }
    (q, r)
}

/// Phi_N by recursive division of X^N - 1.
fn cyclotomic_poly(n: u64) -> Poly {
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            let (q, r) = poly_divmod(&num, &phi_d);
            assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// Value of a CycNum as a dense residue mod Phi_N (the comparison form).
fn to_dense(z: &CycNum, n: u64, phi_n: &Poly) -> Poly {
    let mut raw = vec![Rat::zero(); n as usize];
    for (k, c) in z.terms_single_exponent() {
        raw[(k % n) as usize] += c;
    }
    poly_trim(&mut raw);
    let (_, r) = poly_divmod(&raw, phi_n);
    r
}

#[test]
fn promotion_commutes_with_squaring() {
    // (zeta_5 + zeta_5^4) promoted to order 20, squared, matches the square
    // computed at order 5 and then promoted
    let z = CycNum::root_of_unity(5, 1).add(&CycNum::root_of_unity(5, 4));
    let promoted_then_squared = {
        let w = z.promote(20).unwrap();
        w.mul(&w)
    };
    let squared_then_promoted = z.mul(&z).promote(20).unwrap();
    assert_eq!(promoted_then_squared, squared_then_promoted);
    // and both agree with the naive dense oracle at order 20
    let phi20 = cyclotomic_poly(20);
    // zeta_5 = zeta_20^4: dense representative
    let mut raw = vec![Rat::zero(); 20];
    raw[4] = Rat::one();
    raw[16] = Rat::one();
    let dense = {
        let sq = poly_mul(&raw, &raw);
        let (_, r) = poly_divmod(&sq, &phi20);
        r
    };
    assert_eq!(to_dense(&promoted_then_squared, 20, &phi20), dense);
}

#[test]
fn dense_oracle_matches_on_random_products() {
    // deterministic pseudo-random small elements over a few orders
    let mut state = 0x853c49e6748fea9bu64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for n in [12u64, 20, 24, 36] {
        let phi_n = cyclotomic_poly(n);
        for _ in 0..12 {
            let mut a = CycNum::zero(1);
            let mut b = CycNum::zero(1);
            for _ in 0..3 {
                let ka = (next() % n) as i64;
                let kb = (next() % n) as i64;
                let ca = rat((next() % 7) as i64 - 3, 1 + (next() % 4) as i64);
                let cb = rat((next() % 7) as i64 - 3, 1 + (next() % 4) as i64);
                a = a.add(&CycNum::root_of_unity(n, ka).scale(&ca));
                b = b.add(&CycNum::root_of_unity(n, kb).scale(&cb));
            }
            let sum = a.add(&b);
            let prod = a.mul(&b);
            // oracle side
            let dense = |z: &CycNum| to_dense(&z.promote(n).unwrap(), n, &phi_n);
            let da = dense(&a);
            let db = dense(&b);
            let mut dsum = vec![Rat::zero(); da.len().max(db.len())];
            for (i, c) in da.iter().enumerate() {
                dsum[i] += c;
            }
            for (i, c) in db.iter().enumerate() {
                dsum[i] += c;
            }
            poly_trim(&mut dsum);
            let dprod = {
                let m = poly_mul(&da, &db);
                let (_, r) = poly_divmod(&m, &phi_n);
                r
            };
            assert_eq!(dense(&sum), dsum, "sum at order {n}");
            assert_eq!(dense(&prod), dprod, "product at order {n}");
        }
    }
}

#[test]
fn inverse_against_dense_oracle() {
    let n = 15u64;
    let phi_n = cyclotomic_poly(n);
    let z = CycNum::root_of_unity(15, 2)
        .scale(&rat(2, 3))
        .add(&CycNum::root_of_unity(15, 7))
        .add(&CycNum::from_int(1));
    let inv = z.inv().unwrap();
    // z * inv reduces to 1 in the dense model too
    let prod = z.mul(&inv);
    let dense = to_dense(&prod.promote(n).unwrap(), n, &phi_n);
    assert_eq!(dense, vec![Rat::one()]);
}

#[test]
fn ratfun_substitution_eval_oracle() {
    // L(s, 1) under s -> 1-s, evaluated at three rational points of X
    let q = 7u64;
    let l = RatFun::geometric_tail(q, CycNum::one(), 0, CycNum::one(), 1);
    let f = l.substitute(padic_lf_core::Subst::OneMinus).unwrap();
    for x in [rat(2, 1), rat(1, 3), rat(-2, 5)] {
        let got = f.eval_rat(&x).unwrap();
        // 1/(1 - 1/(7x))
        let expected_rat: Rat = Rat::one() / (Rat::one() - Rat::new(BigInt::from(1), BigInt::from(7)) / x.clone());
        assert_eq!(got, CycNum::from_rat(expected_rat));
    }
}

#[test]
fn big_rational_coefficients_survive() {
    // exercise BigRational beyond machine range end to end
    let huge = Rat::new(BigInt::from(1), BigInt::parse_bytes(b"340282366920938463463374607431768211457", 10).unwrap());
    let z = CycNum::root_of_unity(8, 1).scale(&huge);
    let w = z.mul(&z.inv().unwrap());
    assert!(w.is_one());
    let _ = BigRational::zero();
}
