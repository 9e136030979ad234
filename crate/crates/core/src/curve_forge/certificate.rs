//! Seed certificates: every finitely-checkable local condition, recomputed
//! from the equation alone, plus sampled image evidence.
//!
//! Certificates serialize to canonical JSON: keys sorted, all integers as
//! decimal strings. Identical inputs produce byte-identical files.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::count::count_points_fp;
use super::weierstrass::{valuation, valuation_rational, WeierstrassEquation};
use super::{local_models, ForgeError};
use crate::arith::{legendre, mult_order, primitive_root};
use crate::root_data::{RootSystem, TypeLabel};

pub const CERTIFICATE_SCHEMA_VERSION: u64 = 1;

/// One named recomputed condition with the value it evaluated to.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: &'static str,
    pub passed: bool,
    pub value: String,
}

/// Sampled traces and the Borel-compatibility scan.
#[derive(Debug, Clone)]
pub struct ImageEvidence {
    /// (p, a_p mod l) at good odd primes p <= bound, p != l.
    pub samples: Vec<(u64, u64)>,
    /// True iff some character pair with product the mod-l cyclotomic
    /// character explains every sampled trace (evidence of reducibility;
    /// expected false for an accepted seed).
    pub borel_pair_found: bool,
    pub pairs_tested: u64,
}

#[derive(Debug, Clone)]
pub struct SeedCertificate {
    pub schema_version: u64,
    pub type_label: TypeLabel,
    pub ell: u64,
    pub coxeter_number: u64,
    pub trace: i64,
    pub p0: u64,
    pub p1: u64,
    pub seed: u64,
    pub equation: WeierstrassEquation,
    pub hodge_cocharacter: Vec<i64>,
    pub checks: Vec<CheckRecord>,
    pub evidence: ImageEvidence,
}

impl SeedCertificate {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Canonical JSON: serde_json maps are BTree-backed, so keys come out
    /// sorted; integers are rendered as decimal strings.
    pub fn to_canonical_json(&self) -> String {
        let istr = |x: i64| Value::String(x.to_string());
        let ustr = |x: u64| Value::String(x.to_string());
        let bstr = |x: &BigInt| Value::String(x.to_string());

        let eq = &self.equation;
        let (jn, jd) = eq.j_invariant();
        let mut equation = Map::new();
        for (k, v) in [
            ("a1", eq.a1),
            ("a2", eq.a2),
            ("a3", eq.a3),
            ("a4", eq.a4),
            ("a6", eq.a6),
        ] {
            equation.insert(k.into(), istr(v));
        }
        equation.insert("b2".into(), bstr(&eq.b2()));
        equation.insert("b4".into(), bstr(&eq.b4()));
        equation.insert("b6".into(), bstr(&eq.b6()));
        equation.insert("b8".into(), bstr(&eq.b8()));
        equation.insert("c4".into(), bstr(&eq.c4()));
        equation.insert("c6".into(), bstr(&eq.c6()));
        equation.insert("discriminant".into(), bstr(&eq.discriminant()));
        equation.insert("j_numerator".into(), bstr(&jn));
        equation.insert("j_denominator".into(), bstr(&jd));

        let mut checks = Map::new();
        for c in &self.checks {
            checks.insert(
                c.name.into(),
                json!({ "passed": c.passed, "value": c.value }),
            );
        }

        let samples: Vec<Value> = self
            .evidence
            .samples
            .iter()
            .map(|&(p, ap)| Value::Array(vec![ustr(p), ustr(ap)]))
            .collect();

        let root = json!({
            "schema_version": ustr(self.schema_version),
            "kind": "seed_certificate",
            "group": self.type_label.to_string(),
            "ell": ustr(self.ell),
            "coxeter_number": ustr(self.coxeter_number),
            "trace": istr(self.trace),
            "unit_root_residue": ustr(self.trace.rem_euclid(self.ell as i64) as u64),
            "p0": ustr(self.p0),
            "p1": ustr(self.p1),
            "seed": ustr(self.seed),
            "equation": Value::Object(equation),
            "hodge_cocharacter": self.hodge_cocharacter.iter().map(|&r| istr(r)).collect::<Vec<_>>(),
            "checks": Value::Object(checks),
            "surjectivity_samples": samples,
            "borel_pair_found": self.evidence.borel_pair_found,
            "accepted": self.all_checks_pass(),
        });
        let mut s = serde_json::to_string_pretty(&root).expect("serialization cannot fail");
        s.push('\n');
        s
    }
}

/// True iff all r_alpha > 0 and r_alpha = 1 mod (l - 1); for E6 they must
/// also be pairwise distinct.
pub fn validate_hodge_cocharacter(system: &RootSystem, ell: u64, r_values: &[i64]) -> bool {
    if r_values.len() != system.rank {
        return false;
    }
    let m = ell as i64 - 1;
    if !r_values.iter().all(|&r| r > 0 && r.rem_euclid(m) == 1 % m) {
        return false;
    }
    if system.type_label == TypeLabel::E6 {
        let mut sorted = r_values.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        return sorted.len() == r_values.len();
    }
    true
}

/// Default cocharacter datum: rho^vee (all ones) except for E6, where the
/// entries must be distinct: 1 + i (l - 1).
pub fn default_hodge_cocharacter(system: &RootSystem, ell: u64) -> Vec<i64> {
    match system.type_label {
        TypeLabel::E6 => (0..system.rank as i64)
            .map(|i| 1 + i * (ell as i64 - 1))
            .collect(),
        _ => vec![1; system.rank],
    }
}

/// Trace samples at good primes plus the bounded Borel-compatibility scan.
///
/// The scan runs over pairs of characters valued in F_l^x with conductor
/// dividing l times the small bad primes of the equation (those <= 50), with
/// the product pinned to the mod-l cyclotomic character; a pair "explains"
/// the data if a_p = eps1(p) + eps2(p) mod l at every sampled good prime.
pub fn sample_image_evidence(
    eq: &WeierstrassEquation,
    ell: u64,
    bound: u64,
) -> Result<ImageEvidence, ForgeError> {
    if bound > 100_000 {
        return Err(ForgeError::SampleBoundTooLarge(bound));
    }
    let disc = eq.discriminant();
    if num_traits::Zero::is_zero(&disc) {
        return Err(ForgeError::CheckFailed {
            name: "discriminant_nonzero".into(),
            value: "0".into(),
        });
    }
    let mut samples = Vec::new();
    let mut p = 3u64;
    while p <= bound {
        if p != ell && valuation(&disc, p) == 0 {
            let n = count_points_fp(eq, p)?;
            let ap = p as i64 + 1 - n as i64;
            assert!(ap * ap <= 4 * p as i64);
            samples.push((p, ap.rem_euclid(ell as i64) as u64));
        }
        p = crate::arith::next_prime_above(p);
    }

    // conductor primes: l plus small bad primes (odd, <= 50)
    let mut conductor: Vec<u64> = vec![ell];
    let mut q = 3u64;
    while q <= 50 {
        if q != ell && valuation(&disc, q) > 0 {
            conductor.push(q);
        }
        q = crate::arith::next_prime_above(q);
    }

    let big_l = ell - 1;
    let w = primitive_root(ell);
    // per conductor prime: generator, dlog-free data via explicit powers
    struct Factor {
        q: u64,
        g: u64,
        char_count: u64, // gcd(q - 1, l - 1); characters are t in 0..char_count
    }
    let factors: Vec<Factor> = conductor
        .iter()
        .map(|&q| Factor {
            q,
            g: primitive_root(q),
            char_count: num_integer::gcd(q - 1, big_l),
        })
        .collect();

    // discrete log of p mod each conductor prime
    let dlog = |q: u64, g: u64, x: u64| -> u64 {
        let mut acc = 1u64;
        for e in 0..q - 1 {
            if acc == x % q {
                return e;
            }
            acc = acc * g % q;
        }
        unreachable!("dlog of a unit must exist")
    };

    // precompute per-sample dlogs at each factor (skip samples sharing a
    // conductor prime)
    let usable: Vec<(usize, Vec<u64>)> = samples
        .iter()
        .enumerate()
        .filter(|(_, (p, _))| factors.iter().all(|f| p % f.q != 0))
        .map(|(i, (p, _))| (i, factors.iter().map(|f| dlog(f.q, f.g, *p)).collect()))
        .collect();

    // enumerate eps1 = (k, t_1, ..., t_m); eps2 forced by eps1 eps2 = chi
    let mut radix: Vec<u64> = vec![big_l];
    radix.extend(factors.iter().skip(1).map(|f| f.char_count));
    let total: u64 = radix.iter().product();
    let mut borel_pair_found = false;
    let mut pairs_tested = 0u64;
    'pairs: for idx in 0..total.min(2_000_000) {
        // decode mixed-radix index into exponents
        let mut rem = idx;
        let mut exps = Vec::with_capacity(radix.len());
        for &r in &radix {
            exps.push(rem % r);
            rem /= r;
        }
        pairs_tested += 1;
        // eps1(p) = w^{k dlog_l(p) + sum_j t_j (L/g_j) dlog_qj(p)}
        // eps2 = chi * eps1^{-1}: exponent k2 = 1 - k mod L, t2 = -t mod count
        let mut ok = true;
        for (si, dlogs) in &usable {
            let (_, ap) = samples[*si];
            let mut e1 = exps[0] * dlogs[0] % big_l;
            let mut e2 = (1 + big_l - exps[0]) % big_l * dlogs[0] % big_l;
            for (j, f) in factors.iter().enumerate().skip(1) {
                let step = big_l / f.char_count;
                let t1 = exps[j];
                let t2 = (f.char_count - t1) % f.char_count;
                e1 = (e1 + t1 * step % big_l * (dlogs[j] % f.char_count)) % big_l;
                e2 = (e2 + t2 * step % big_l * (dlogs[j] % f.char_count)) % big_l;
            }
            let v = (crate::arith::pow_mod(w, e1, ell) + crate::arith::pow_mod(w, e2, ell)) % ell;
            if v != ap {
                ok = false;
                break;
            }
        }
        if ok && !usable.is_empty() {
            borel_pair_found = true;
            break 'pairs;
        }
    }

    Ok(ImageEvidence {
        samples,
        borel_pair_found,
        pairs_tested,
    })
}

/// Recompute every certificate check from scratch for the given equation and
/// parameters. Returns the accepted certificate, or the first violated check
/// by name with its computed value.
#[allow(clippy::too_many_arguments)]
pub fn verify_certificate(
    system: &RootSystem,
    eq: &WeierstrassEquation,
    ell: u64,
    p0: u64,
    p1: u64,
    a: i64,
    seed: u64,
    sample_bound: u64,
) -> Result<SeedCertificate, ForgeError> {
    let h = system.coxeter_number;
    let disc = eq.discriminant();
    if num_traits::Zero::is_zero(&disc) {
        return Err(ForgeError::CheckFailed {
            name: "discriminant_nonzero".into(),
            value: "0".into(),
        });
    }
    let c4 = eq.c4();
    let c6 = eq.c6();
    let mut checks: Vec<CheckRecord> = Vec::new();
    let mut push = |name: &'static str, passed: bool, value: String| {
        checks.push(CheckRecord {
            name,
            passed,
            value,
        });
    };

    let admissible = system.is_admissible(ell)?;
    push(
        "admissible",
        admissible,
        format!("l = {ell}, 4h-1 = {}", 4 * h - 1),
    );

    let a_mod = a.rem_euclid(ell as i64) as u64;
    push(
        "ordinary",
        a_mod != 0,
        format!("a = {a} mod {ell} is {a_mod}"),
    );
    push(
        "trace_pm1",
        a_mod != 1 && a_mod != ell - 1,
        format!("a mod l = {a_mod}"),
    );
    let asq = (a_mod * a_mod) % ell;
    push(
        "trace_square_ne_one",
        asq != 1,
        format!("a^2 mod l = {asq}"),
    );

    push(
        "weierstrass_identity",
        eq.identity_1728_holds(),
        "c4^3 - c6^2 = 1728 disc".into(),
    );

    let v_ell = valuation(&disc, ell);
    push(
        "good_reduction_at_ell",
        v_ell == 0,
        format!("v_l(disc) = {v_ell}"),
    );

    if v_ell == 0 {
        let count = count_points_fp(eq, ell)?;
        let expect = (ell as i64 + 1 - a) as u64;
        push(
            "point_count_at_ell",
            count == expect,
            format!("|E(F_{ell})| = {count}, l + 1 - a = {expect}"),
        );
    } else {
        push(
            "point_count_at_ell",
            false,
            "skipped: bad reduction at l".into(),
        );
    }

    let ord_p0 = mult_order(p0 % ell, ell);
    push(
        "p0_order_at_least_h",
        ord_p0 >= h,
        format!("ord({p0} mod {ell}) = {ord_p0}, h = {h}"),
    );

    let v0_disc = valuation(&disc, p0);
    push(
        "p0_disc_valuation_one",
        v0_disc == 1,
        format!("v_p0(disc) = {v0_disc}"),
    );
    let v0_c4 = valuation(&c4, p0);
    push(
        "p0_c4_valuation_zero",
        v0_c4 == 0,
        format!("v_p0(c4) = {v0_c4}"),
    );

    // split multiplicative witness: -c6 a nonzero square mod p0
    // (standard criterion given v(c4) = 0, v(disc) = 1)
    let mc6_mod = (-&c6) % BigInt::from(p0);
    let mc6_i = ((mc6_mod.clone() + BigInt::from(p0)) % BigInt::from(p0))
        .to_string()
        .parse::<i64>()
        .expect("residue fits");
    let split = legendre(mc6_i, p0) == 1;
    push("p0_split_witness", split, format!("-c6 mod {p0} = {mc6_i}"));

    push(
        "p1_congruent_2_mod_3",
        p1 % 3 == 2 && p1 >= 5,
        format!("p1 = {p1}"),
    );
    let v1_c4 = valuation(&c4, p1);
    push(
        "p1_c4_valuation_positive",
        v1_c4 >= 1,
        format!("v_p1(c4) = {v1_c4}"),
    );
    let v1_disc = valuation(&disc, p1);
    push(
        "p1_disc_valuation_two",
        v1_disc == 2,
        format!("v_p1(disc) = {v1_disc}"),
    );

    let (jn, jd) = eq.j_invariant();
    let vj = valuation_rational(&jn, &jd, p1);
    push("p1_j_valuation_one", vj == 1, format!("v_p1(j) = {vj}"));
    let jm: BigInt = &jn - 1728 * &jd;
    let vjm = if num_traits::Zero::is_zero(&jm) {
        i64::MAX
    } else {
        valuation_rational(&jm, &jd, p1)
    };
    push(
        "p1_j_minus_1728_valuation_zero",
        vjm == 0,
        format!("v_p1(j - 1728) = {vjm}"),
    );

    // bit-exact local reductions against the displayed models
    let (m0, m1) = local_models(p0, p1);
    let r0 = eq.reduce_mod(m0.modulus);
    push(
        "p0_model_match",
        r0 == m0.coefficients,
        format!("{r0:?} vs {:?}", m0.coefficients),
    );
    let r1 = eq.reduce_mod(m1.modulus);
    push(
        "p1_model_match",
        r1 == m1.coefficients,
        format!("{r1:?} vs {:?}", m1.coefficients),
    );

    let cochar = default_hodge_cocharacter(system, ell);
    push(
        "hodge_cocharacter_valid",
        validate_hodge_cocharacter(system, ell, &cochar),
        format!("{cochar:?}"),
    );

    let evidence = sample_image_evidence(eq, ell, sample_bound)?;
    push(
        "no_borel_character_pair",
        !evidence.borel_pair_found,
        format!(
            "{} pairs tested on {} samples",
            evidence.pairs_tested,
            evidence.samples.len()
        ),
    );

    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(ForgeError::CheckFailed {
            name: bad.name.to_string(),
            value: bad.value.clone(),
        });
    }

    Ok(SeedCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        type_label: system.type_label,
        ell,
        coxeter_number: h,
        trace: a,
        p0,
        p1,
        seed,
        equation: eq.clone(),
        hodge_cocharacter: cochar,
        checks,
        evidence,
    })
}
