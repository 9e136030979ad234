//! Small number-theoretic helpers shared across modules.

/// Deterministic primality test by trial division. All moduli in this crate
/// are tiny (below 10^7), so nothing fancier is warranted.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// a^e mod m with u128 intermediates.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let mut base = (a % m) as u128;
    let mut acc: u128 = 1 % m as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo the prime `p`. Panics if p | a.
pub fn mult_order(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "order of a non-unit is undefined");
    let mut x = a % p;
    let mut o = 1u64;
    while x != 1 {
        x = (x as u128 * a as u128 % p as u128) as u64;
        o += 1;
        assert!(o <= p, "order computation ran past the group size");
    }
    o
}

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
/// Returns 0, 1, or -1.
pub fn legendre(a: i64, p: u64) -> i64 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Inverse of `a` modulo `m` (gcd(a, m) = 1), by extended Euclid.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "inv_mod of a non-unit: gcd({a}, {m}) = {r}");
    t.rem_euclid(m as i128) as u64
}

/// Smallest generator of (Z/p)^x for prime p.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    // factor p-1
    let mut fac = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            fac.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        fac.push(m);
    }
    'g: for g in 2..p {
        for &q in &fac {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {p}")
}

/// Solve x = r1 (mod m1), x = r2 (mod m2) for coprime moduli; least
/// nonnegative solution mod m1*m2.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let inv = inv_mod(m1 % m2, m2) as u128;
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u128;
    let k = diff * inv % m2 as u128;
    (r1 as u128 + m1 as u128 * k) as u64
}
