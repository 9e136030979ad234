//! Exact point counts on Weierstrass curves over small prime fields.

use num_traits::Zero;

use super::weierstrass::{valuation, WeierstrassEquation};
use super::ForgeError;

/// |E(F_p)| including the point at infinity, for odd p with good reduction.
///
/// Completing the square turns the affine count into a quadratic character
/// sum: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, so each x
/// contributes 1 + chi(g(x)) points.
pub fn count_points_fp(eq: &WeierstrassEquation, p: u64) -> Result<u64, ForgeError> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(ForgeError::BadPrime(p));
    }
    let disc = eq.discriminant();
    if disc.is_zero() || valuation(&disc, p) > 0 {
        return Err(ForgeError::BadReduction(p));
    }
    // chi table: chi[t] = 1 + chi(t) counts square roots of t
    let mut roots = vec![0u64; p as usize];
    for y in 0..p {
        roots[(y * y % p) as usize] += 1;
    }
    let [a1, a2, a3, a4, a6] = eq.reduce_mod(p);
    let b2 = (a1 * a1 + 4 * a2) % p;
    let two_b4 = (2 * (2 * a4 % p) + 2 * a1 % p * a3) % p;
    let b6 = (a3 * a3 + 4 * a6) % p;
    let mut count = 1u64; // infinity
    for x in 0..p {
        let x2 = x * x % p;
        let g = (4 * (x2 * x % p) + b2 * x2 + two_b4 * x + b6) % p;
        count += roots[g as usize];
    }
    let a_p = p as i64 + 1 - count as i64;
    assert!(
        a_p * a_p <= 4 * p as i64,
        "Hasse bound violated: a_{p} = {a_p}"
    );
    Ok(count)
}

/// Naive double-loop oracle, independent of the character-sum route.
pub fn count_points_naive(eq: &WeierstrassEquation, p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = eq.reduce_mod(p);
    let mut count = 1u64;
    for x in 0..p {
        for y in 0..p {
            let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

/// Trace of Frobenius a_p = p + 1 - |E(F_p)|.
pub fn trace_of_frobenius(eq: &WeierstrassEquation, p: u64) -> Result<i64, ForgeError> {
    Ok(p as i64 + 1 - count_points_fp(eq, p)? as i64)
}
