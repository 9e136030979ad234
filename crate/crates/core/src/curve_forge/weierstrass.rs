//! Integral Weierstrass equations and their exact invariants.
//!
//! Coefficients are machine integers (they come from CRT lifts with small
//! moduli); every derived quantity is computed in arbitrary precision, so
//! the b/c/discriminant identities hold exactly at any size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassEquation {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl WeierstrassEquation {
    pub fn new(a: [i64; 5]) -> Self {
        WeierstrassEquation {
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            a6: a[4],
        }
    }

    pub fn coefficients(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn b2(&self) -> BigInt {
        let (a1, a2) = (BigInt::from(self.a1), BigInt::from(self.a2));
        &a1 * &a1 + 4 * a2
    }

    pub fn b4(&self) -> BigInt {
        let (a1, a3, a4) = (
            BigInt::from(self.a1),
            BigInt::from(self.a3),
            BigInt::from(self.a4),
        );
        2 * a4 + a1 * a3
    }

    pub fn b6(&self) -> BigInt {
        let (a3, a6) = (BigInt::from(self.a3), BigInt::from(self.a6));
        &a3 * &a3 + 4 * a6
    }

    pub fn b8(&self) -> BigInt {
        let [a1, a2, a3, a4, a6] = self.coefficients().map(BigInt::from);
        &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4
    }

    pub fn c4(&self) -> BigInt {
        let b2 = self.b2();
        &b2 * &b2 - 24 * self.b4()
    }

    pub fn c6(&self) -> BigInt {
        let b2 = self.b2();
        -(&b2 * &b2 * &b2) + 36 * &b2 * self.b4() - 216 * self.b6()
    }

    pub fn discriminant(&self) -> BigInt {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - 8 * (&b4 * &b4 * &b4) - 27 * &b6 * &b6 + 9 * b2 * b4 * b6
    }

    /// The universal identity c4^3 - c6^2 = 1728 disc, exact.
    pub fn identity_1728_holds(&self) -> bool {
        let c4 = self.c4();
        let c6 = self.c6();
        &c4 * &c4 * &c4 - &c6 * &c6 == 1728 * self.discriminant()
    }

    /// j-invariant as a reduced fraction (numerator, denominator),
    /// denominator positive. Requires disc != 0.
    pub fn j_invariant(&self) -> (BigInt, BigInt) {
        let c4 = self.c4();
        let num = &c4 * &c4 * &c4;
        let den = self.discriminant();
        assert!(!den.is_zero(), "j-invariant of a singular equation");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        (n, d)
    }

    /// Coefficient-wise least nonnegative residues mod m.
    pub fn reduce_mod(&self, m: u64) -> [u64; 5] {
        self.coefficients().map(|a| a.rem_euclid(m as i64) as u64)
    }
}

/// p-adic valuation of a nonzero big integer.
pub fn valuation(x: &BigInt, p: u64) -> u64 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        x = q;
    }
}

/// v_p(j) for the rational j = (num, den) in lowest terms:
/// v(num) - v(den). Either side may be zero-valuation.
pub fn valuation_rational(num: &BigInt, den: &BigInt, p: u64) -> i64 {
    valuation(num, p) as i64 - valuation(den, p) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_identities_for_the_exact_p0_model() {
        // y^2 + xy = x^3 - 5 p0 x - p0 for all odd p0 <= 99 (integral
        // identities, no primality needed)
        for p0 in (3..100i64).step_by(2) {
            let e = WeierstrassEquation::new([1, 0, 0, -5 * p0, -p0]);
            assert_eq!(e.c4(), BigInt::from(1 + 240 * p0));
            assert_eq!(e.c6(), BigInt::from(-1 + 504 * p0));
            assert!(e.identity_1728_holds());
            // disc = p0 - 47 p0^2 + 8000 p0^3, so disc = p0 mod p0^2
            let disc = e.discriminant();
            let m = BigInt::from(p0 * p0);
            assert_eq!(((&disc - p0) % &m), BigInt::zero());
        }
    }

    #[test]
    fn invariant_identities_for_the_exact_p1_model() {
        // y^2 = x^3 - 3 p1 x - 2 p1, disc = 1728 p1^2 (p1 - 1) identically
        for p1 in 2..100i64 {
            let e = WeierstrassEquation::new([0, 0, 0, -3 * p1, -2 * p1]);
            assert_eq!(e.discriminant(), BigInt::from(1728 * p1 * p1 * (p1 - 1)));
            assert_eq!(e.c4(), BigInt::from(144 * p1));
            assert_eq!(e.c6(), BigInt::from(1728 * p1));
            assert!(e.identity_1728_holds());
        }
    }

    #[test]
    fn p1_model_valuations_and_j() {
        // for valid p1 (prime >= 5, = 2 mod 3) the valuation triple is
        // (v(disc), v(j), v(j - 1728)) = (2, 1, 0) and j/(j-1728) = p1
        for p1 in [5u64, 11, 17, 23, 29, 41, 47, 53, 59, 71, 83, 89] {
            let e = WeierstrassEquation::new([0, 0, 0, -3 * p1 as i64, -2 * p1 as i64]);
            let disc = e.discriminant();
            assert_eq!(valuation(&disc, p1), 2);
            let (jn, jd) = e.j_invariant();
            assert_eq!(valuation_rational(&jn, &jd, p1), 1);
            // j - 1728 = (jn - 1728 jd) / jd
            let jm = &jn - 1728 * &jd;
            assert_eq!(valuation_rational(&jm, &jd, p1), 0);
            // j / (j - 1728) = jn / (jn - 1728 jd) = p1 exactly
            assert_eq!(&jn, &(BigInt::from(p1) * &jm));
            // direct spot values for p1 = 5: j = 2160, j - 1728 = 432
            if p1 == 5 {
                assert_eq!(disc, BigInt::from(172800));
                assert_eq!((&jn, &jd), (&BigInt::from(2160), &BigInt::from(1)));
                assert_eq!(jm, BigInt::from(432));
            }
        }
    }

    #[test]
    fn split_witness_minus_c6_is_one_mod_p0() {
        for p0 in [3i64, 5, 7, 11, 13, 97] {
            let e = WeierstrassEquation::new([1, 0, 0, -5 * p0, -p0]);
            let minus_c6 = -e.c6();
            assert_eq!((minus_c6 - 1i64) % p0, BigInt::zero());
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(172800), 5), 2);
        assert_eq!(valuation(&BigInt::from(432), 5), 0);
        assert_eq!(valuation(&BigInt::from(-250), 5), 3);
    }
}
