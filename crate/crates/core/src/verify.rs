//! Aggregated verification suites over a single group: the full bracket and
//! principal-sl2 checks, the unipotent congruence trials, and (REG), all at
//! the group's floor prime. Used by the command-line front end and the
//! acceptance battery.

use serde_json::{json, Value};

use crate::adjoint_modl::{verify_no_section_expansion, verify_reg_surjectivity, NoSectionVariant};
use crate::arith::next_prime_above;
use crate::chevalley::ChevalleyAlgebra;
use crate::principal_sl2::{build_principal_triple, decompose_adjoint};
use crate::root_data::{RootSystem, TypeLabel};

#[derive(Debug, Clone)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct LieSuiteReport {
    pub group: TypeLabel,
    pub dim: usize,
    pub coxeter_number: u64,
    pub floor_prime: u64,
    pub exponents: Vec<u64>,
    pub checks: Vec<SuiteCheck>,
}

impl LieSuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_canonical_json(&self) -> String {
        let mut checks = serde_json::Map::new();
        for c in &self.checks {
            checks.insert(
                c.name.into(),
                json!({ "passed": c.passed, "detail": c.detail }),
            );
        }
        let root = json!({
            "kind": "lie_suite_report",
            "group": self.group.to_string(),
            "dim": Value::String(self.dim.to_string()),
            "coxeter_number": Value::String(self.coxeter_number.to_string()),
            "floor_prime": Value::String(self.floor_prime.to_string()),
            "exponents": self.exponents.iter().map(|e| Value::String(e.to_string())).collect::<Vec<_>>(),
            "checks": Value::Object(checks),
            "passed": self.all_passed(),
        });
        let mut s = serde_json::to_string_pretty(&root).expect("serialization cannot fail");
        s.push('\n');
        s
    }
}

/// Floor prime used by the verification suites: the smallest prime above
/// 4h - 1 (defined for the scaffolding types A1 and A2 as well).
pub fn suite_floor_prime(system: &RootSystem) -> u64 {
    next_prime_above(4 * system.coxeter_number - 1)
}

/// Run the whole Lie-side battery for one group. `trials` controls the
/// random-lift congruence campaigns.
pub fn run_lie_suite(label: TypeLabel, trials: u32, seed: u64) -> LieSuiteReport {
    let system = RootSystem::build(label);
    let h = system.coxeter_number;
    let floor = suite_floor_prime(&system);
    let alg = ChevalleyAlgebra::build(system);
    let dim = alg.dim;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(SuiteCheck {
            name,
            passed,
            detail,
        });
    };

    push(
        "antisymmetry",
        alg.antisymmetry_holds(),
        "all basis pairs".into(),
    );
    push(
        "jacobi_identity",
        alg.jacobi_identity_holds(),
        "all sorted basis triples".into(),
    );
    push(
        "structure_constant_magnitudes",
        alg.magnitudes_match_chains(),
        "|N| = p + 1 from root chains".into(),
    );

    let triple = match build_principal_triple(&alg) {
        Ok(t) => t,
        Err(e) => {
            push("principal_triple", false, e.to_string());
            return LieSuiteReport {
                group: label,
                dim,
                coxeter_number: h,
                floor_prime: floor,
                exponents: Vec::new(),
                checks,
            };
        }
    };
    push("principal_triple", true, format!("r = {:?}", triple.r));

    let decomposition = decompose_adjoint(&alg, &triple, None);
    let exponents = match &decomposition {
        Ok(d) => d.exponents(),
        Err(_) => Vec::new(),
    };
    match decomposition {
        Ok(d) => {
            let e = d.exponents();
            let rank = alg.rank();
            let sum_ok = d.total_dimension() as usize == dim;
            let count_ok = e.len() == rank;
            let max_ok = e.last() == Some(&(h - 1));
            let sym_ok = (0..rank).all(|i| e[i] + e[rank - 1 - i] == h);
            push(
                "adjoint_decomposition",
                sum_ok && count_ok && max_ok && sym_ok,
                format!("exponents {e:?}, total {}", d.total_dimension()),
            );
            match decompose_adjoint(&alg, &triple, Some(floor)) {
                Ok(dm) => push(
                    "modular_decomposition_matches",
                    dm.exponents() == e,
                    format!("mod {floor}"),
                ),
                Err(err) => push("modular_decomposition_matches", false, err.to_string()),
            }
        }
        Err(e) => push("adjoint_decomposition", false, e.to_string()),
    }

    match alg.ad_nilpotency_index(&alg.x_highest()) {
        Ok(ix) => push("theta_nilpotency", ix == 3, format!("ad(X_theta)^{ix} = 0")),
        Err(e) => push("theta_nilpotency", false, e.to_string()),
    }
    match alg.ad_nilpotency_index(&alg.x_principal()) {
        Ok(ix) => push(
            "principal_nilpotency",
            ix as u64 == 2 * h - 1,
            format!("ad(X)^{ix} = 0, 2h - 1 = {}", 2 * h - 1),
        ),
        Err(e) => push("principal_nilpotency", false, e.to_string()),
    }

    match alg.exp_nilpotent_ad(&alg.x_highest(), floor, 2) {
        Ok(m) => push(
            "exp_theta_automorphism",
            alg.is_bracket_automorphism(&m, None),
            "exhaustive pairs".into(),
        ),
        Err(e) => push("exp_theta_automorphism", false, e.to_string()),
    }
    match (
        alg.exp_nilpotent_ad(&alg.x_principal(), floor, 2),
        alg.exp_nilpotent_ad(
            &crate::chevalley::AdElement::new(
                alg.x_principal().coeffs.iter().map(|c| -c).collect(),
            ),
            floor,
            2,
        ),
    ) {
        (Ok(a), Ok(b)) => push(
            "exp_principal_inverse",
            a.mul(&b).is_identity(),
            format!("mod {floor}^2"),
        ),
        (Err(e), _) | (_, Err(e)) => push("exp_principal_inverse", false, e.to_string()),
    }

    match verify_reg_surjectivity(&alg, floor) {
        Ok(rep) => push(
            "reg_surjectivity",
            rep.passed(&alg.system),
            format!(
                "image dim {}, kernel dim {}, kernel in nilradical: {}",
                rep.image_dimension, rep.kernel_dimension, rep.kernel_inside_nilradical
            ),
        ),
        Err(e) => push("reg_surjectivity", false, e.to_string()),
    }

    match verify_no_section_expansion(&alg, floor, 1, trials, NoSectionVariant::HighestRoot, seed) {
        Ok(rep) => push(
            "no_section_highest_root",
            rep.all_passed() && rep.order_obstruction_confirmed,
            format!("{}/{} lifts satisfy the congruence", rep.passes, rep.trials),
        ),
        Err(e) => push("no_section_highest_root", false, e.to_string()),
    }
    match verify_no_section_expansion(&alg, floor, 1, trials, NoSectionVariant::PrincipalX, seed) {
        Ok(rep) => push(
            "no_section_principal",
            rep.all_passed() && rep.order_obstruction_confirmed,
            format!("{}/{} lifts satisfy the congruence", rep.passes, rep.trials),
        ),
        Err(e) => push("no_section_principal", false, e.to_string()),
    }

    LieSuiteReport {
        group: label,
        dim,
        coxeter_number: h,
        floor_prime: floor,
        exponents,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_suite_passes() {
        let rep = run_lie_suite(TypeLabel::G2, 10, 0);
        assert!(rep.all_passed(), "{:#?}", rep.checks);
        assert_eq!(rep.floor_prime, 29);
        assert_eq!(rep.exponents, vec![1, 5]);
        let json = rep.to_canonical_json();
        assert!(json.contains("\"floor_prime\": \"29\""));
    }

    #[test]
    fn a_types_pass_as_scaffolding() {
        for label in [TypeLabel::A1, TypeLabel::A2] {
            let rep = run_lie_suite(label, 5, 1);
            assert!(rep.all_passed(), "{label}: {:#?}", rep.checks);
        }
    }
}
