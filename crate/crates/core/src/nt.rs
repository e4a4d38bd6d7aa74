//! Small elementary number theory helpers shared across the crate.
//!
//! Everything here operates on machine integers; the sizes that occur
//! (moduli up to ~10^9, prime powers p^k with k bounded by the working
//! precision) stay well inside `u64`/`u128` range.

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % mm;
        }
        b = b * b % mm;
        exp >>= 1;
    }
    let _ = &mut base;
    acc as u64
}

pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    // extended Euclid on signed 128-bit
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, sorted by prime.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0u32;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi_prime_power(p: u64, a: u32) -> u64 {
    (p - 1) * p.pow(a - 1)
}

/// Smallest primitive root modulo the odd prime `p`, adjusted (by adding
/// `p` if necessary) so that it also generates `(Z/p^k)^*` for every `k`.
pub fn primitive_root(p: u64) -> u64 {
    assert!(p > 2 && is_prime(p), "primitive_root requires an odd prime");
    let factors = factorize(p - 1);
    let mut g = 2u64;
    'outer: loop {
        for &(f, _) in &factors {
            if mod_pow(g, (p - 1) / f, p) == 1 {
                g += 1;
                continue 'outer;
            }
        }
        break;
    }
    // g generates (Z/p)^*; it generates all (Z/p^k)^* iff g^(p-1) != 1 mod p^2
    if mod_pow(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// Discrete logarithm of `x` w.r.t. generator `g` in `(Z/p^e)^*`, brute force.
pub fn dlog(g: u64, x: u64, p: u64, e: u32) -> Option<u64> {
    let m = p.pow(e);
    let x = x % m;
    if x == 0 || gcd(x, p) != 1 {
        return None;
    }
    let ord = euler_phi_prime_power(p, e);
    let mut acc = 1u64;
    for k in 0..ord {
        if acc == x {
            return Some(k);
        }
        acc = (acc as u128 * g as u128 % m as u128) as u64;
    }
    None
}

/// Legendre symbol (a|p) in {-1, 0, 1} for odd prime p.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}
