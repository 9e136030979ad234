//! Command-line front end: Lie-algebra verification suites, seed-curve
//! forging with certificates, admissibility tables, and the Selmer instance
//! campaign.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error.
//! Output files are canonical JSON (sorted keys, integers as decimal
//! strings); identical configuration and seed give byte-identical files.
//! The default output directory is `$SEEDFORGE_OUT_DIR`, falling back to
//! the current directory.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use seedforge::curve_forge::forge_seed;
use seedforge::root_data::{RootSystem, TypeLabel};
use seedforge::selmer_ledger::{
    chase_removal, forcing_oracle, generate_instance, generate_instance_with_violation,
    lemma_consequences, simulate_forcing, ForcingVerdict, GeneratorConfig, Violation,
};
use seedforge::verify::run_lie_suite;

#[derive(Parser)]
#[command(
    name = "seedforge",
    version,
    about = "Exact verification suites and seed-curve forging for exceptional root systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_group(s: &str) -> Result<TypeLabel, String> {
    s.parse::<TypeLabel>().map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Run the Lie suite (bracket identities, principal sl2, exponents,
    /// nilpotency, exp automorphism, (REG), no-section congruences)
    VerifyLie {
        #[arg(long, value_parser = parse_group)]
        group: TypeLabel,
        /// Random lifts per no-section campaign
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report as canonical JSON
        #[arg(long)]
        out: Option<PathBuf>,
        /// Dump the bracket table as a deterministic text artifact
        #[arg(long)]
        dump_brackets: Option<PathBuf>,
    },
    /// Forge a seed elliptic curve for (group, l) and write its certificate
    SeedCurve {
        #[arg(long, value_parser = parse_group)]
        group: TypeLabel,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trace override (default 2)
        #[arg(long)]
        trace: Option<i64>,
        /// Sample traces at good primes up to this bound
        #[arg(long, default_value_t = 10_000)]
        sample_bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Admissibility arithmetic: floor primes and image-hypothesis bounds
    CheckHypotheses {
        #[arg(long, value_parser = parse_group)]
        group: Option<TypeLabel>,
        /// Verdict for a specific prime
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Generate Selmer instances and replay the dimension chases and the
    /// forcing argument against the exhaustive oracle
    SelmerSim {
        /// Field size: 2, 3, or 5
        #[arg(long)]
        field: u64,
        /// Global dimension (4..=12); sites are dims - 3 Ramakrishna primes
        /// plus the removable prime and the two candidates
        #[arg(long)]
        dims: usize,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write a counterexample, if one appears
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn out_dir() -> PathBuf {
    std::env::var_os("SEEDFORGE_OUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| format!("creating {parent:?}: {e}"))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| format!("writing {path:?}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyLie {
            group,
            trials,
            seed,
            out,
            dump_brackets,
        } => cmd_verify_lie(group, trials, seed, out, dump_brackets),
        Command::SeedCurve {
            group,
            ell,
            seed,
            trace,
            sample_bound,
            out,
        } => cmd_seed_curve(group, ell, seed, trace, sample_bound, out),
        Command::CheckHypotheses { group, ell } => cmd_check_hypotheses(group, ell),
        Command::SelmerSim {
            field,
            dims,
            trials,
            seed,
            out,
        } => cmd_selmer_sim(field, dims, trials, seed, out),
    }
}

fn cmd_verify_lie(
    group: TypeLabel,
    trials: u32,
    seed: u64,
    out: Option<PathBuf>,
    dump_brackets: Option<PathBuf>,
) -> ExitCode {
    if let Some(path) = dump_brackets {
        let alg = seedforge::ChevalleyAlgebra::build(RootSystem::build(group));
        if let Err(e) = write_file(&path, &alg.dump_bracket_table()) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
        println!("bracket table written to {}", path.display());
    }
    let report = run_lie_suite(group, trials, seed);
    println!(
        "group {} dim {} h {} floor prime {} exponents {:?}",
        report.group, report.dim, report.coxeter_number, report.floor_prime, report.exponents
    );
    for c in &report.checks {
        println!(
            "{} {:<32} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    if let Some(path) = out {
        if let Err(e) = write_file(&path, &report.to_canonical_json()) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if report.all_passed() {
        println!("verify-lie {}: all checks passed", report.group);
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "verify-lie {}: failing checks: {}",
            report.group,
            report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name)
                .collect::<Vec<_>>()
                .join(", ")
        );
        ExitCode::from(1)
    }
}

fn cmd_seed_curve(
    group: TypeLabel,
    ell: u64,
    seed: u64,
    trace: Option<i64>,
    sample_bound: u64,
    out: Option<PathBuf>,
) -> ExitCode {
    let system = RootSystem::build(group);
    match forge_seed(&system, ell, trace, seed, sample_bound) {
        Ok(outcome) => {
            let cert = &outcome.certificate;
            let path = out.unwrap_or_else(|| {
                out_dir().join(format!("seed-{}-{}-s{}.json", group, ell, seed))
            });
            if let Err(e) = write_file(&path, &cert.to_canonical_json()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            let eq = &outcome.equation;
            println!(
                "accepted certificate for {} at l = {}: trace {}, p0 = {}, p1 = {}, equation [{}, {}, {}, {}, {}]",
                group, ell, cert.trace, cert.p0, cert.p1, eq.a1, eq.a2, eq.a3, eq.a4, eq.a6
            );
            println!("written to {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("seed-curve {group} at l = {ell} rejected: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_check_hypotheses(group: Option<TypeLabel>, ell: Option<u64>) -> ExitCode {
    let groups: Vec<TypeLabel> = group
        .map(|g| vec![g])
        .unwrap_or_else(|| TypeLabel::EXCEPTIONAL.to_vec());
    let mut all_ok = true;
    for g in groups {
        let system = RootSystem::build(g);
        if !g.is_exceptional() {
            println!("{g}: scaffolding type, no admissibility data");
            continue;
        }
        let h = system.coxeter_number;
        let floor = system.admissible_prime_floor().expect("exceptional");
        let full = system.first_admissible_prime().expect("exceptional");
        let bound = system.image_hypothesis_bound();
        print!(
            "{g}: h = {h}, #Z = {}, 4h-1 = {}, floor prime {floor}, image bound l-1 > {bound}, first admissible {full}",
            system.sc_center_order,
            4 * h - 1,
        );
        if g == TypeLabel::E8 {
            print!(", excluded: 229 269 367");
        }
        println!();
        if let Some(l) = ell {
            let ok = system.is_admissible(l).expect("exceptional");
            println!("{g}: l = {l} admissible: {ok}");
            all_ok &= ok;
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_selmer_sim(
    field: u64,
    dims: usize,
    trials: u64,
    seed: u64,
    out: Option<PathBuf>,
) -> ExitCode {
    if !matches!(field, 2 | 3 | 5) {
        eprintln!("usage error: --field must be 2, 3, or 5");
        return ExitCode::from(2);
    }
    if !(4..=12).contains(&dims) {
        eprintln!("usage error: --dims must lie in 4..=12 (budget guard)");
        return ExitCode::from(2);
    }
    let cfg = GeneratorConfig {
        field,
        n_ram: dims - 3,
        n_base: 0,
        max_attempts: 20_000,
    };
    // the exhaustive oracle enumerates q^dims vectors per space; keep it on
    // only where that stays small
    let oracle_on = (field as f64).powi(dims as i32) <= 20_000.0;
    let mut oracle_checked = 0u64;
    let mut failure: Option<(String, serde_json::Value)> = None;

    'campaign: for i in 0..trials {
        let instance_seed = seed.wrapping_add(i);
        let inst = match generate_instance(&cfg, instance_seed) {
            Ok(inst) => inst,
            Err(e) => {
                failure = Some((
                    format!("generation failed at trial {i}: {e}"),
                    serde_json::json!({}),
                ));
                break 'campaign;
            }
        };
        match chase_removal(&inst) {
            Ok((1, 1)) => {}
            other => {
                failure = Some((format!("chase_removal returned {other:?}"), inst.to_json()));
                break 'campaign;
            }
        }
        match lemma_consequences(&inst) {
            Ok(rep) if rep.all_equal_psi_line && rep.phi_tilde_independent => {}
            other => {
                failure = Some((
                    format!("lemma consequences failed: {other:?}"),
                    inst.to_json(),
                ));
                break 'campaign;
            }
        }
        let verdict = match simulate_forcing(&inst) {
            Ok(v) => v,
            Err(e) => {
                failure = Some((format!("simulate_forcing error: {e}"), inst.to_json()));
                break 'campaign;
            }
        };
        if verdict != ForcingVerdict::Forced {
            failure = Some((format!("expected Forced, got {verdict:?}"), inst.to_json()));
            break 'campaign;
        }
        if oracle_on {
            match forcing_oracle(&inst) {
                Ok(ForcingVerdict::Forced) => oracle_checked += 1,
                other => {
                    failure = Some((format!("oracle disagrees: {other:?}"), inst.to_json()));
                    break 'campaign;
                }
            }
        }
        // adversarial spot checks, one per eight instances
        if i % 8 == 0 {
            for violation in [Violation::Hyp1PhiInRamPerp, Violation::Hyp2PsiInMeet] {
                let adv = match generate_instance_with_violation(&cfg, instance_seed, violation) {
                    Ok(a) => a,
                    Err(e) => {
                        failure = Some((
                            format!("adversarial generation failed: {e}"),
                            serde_json::json!({}),
                        ));
                        break 'campaign;
                    }
                };
                match simulate_forcing(&adv) {
                    Ok(ForcingVerdict::NotForced { .. }) => {}
                    other => {
                        failure = Some((
                            format!("adversarial {violation:?} not rejected: {other:?}"),
                            adv.to_json(),
                        ));
                        break 'campaign;
                    }
                }
            }
        }
    }

    match failure {
        None => {
            println!(
                "selmer-sim: {trials} instances over F_{field} (dims {dims}) passed; {} verified against the exhaustive oracle",
                if oracle_on { oracle_checked.to_string() } else { "0 (oracle off at this size)".to_string() }
            );
            ExitCode::SUCCESS
        }
        Some((reason, instance_json)) => {
            let path = out.unwrap_or_else(|| {
                out_dir().join(format!(
                    "selmer-counterexample-f{field}-d{dims}-s{seed}.json"
                ))
            });
            let doc = serde_json::json!({
                "kind": "selmer_counterexample",
                "reason": reason,
                "field": field.to_string(),
                "dims": dims.to_string(),
                "seed": seed.to_string(),
                "instance": instance_json,
            });
            let mut body = serde_json::to_string_pretty(&doc).expect("serializable");
            body.push('\n');
            if let Err(e) = write_file(&path, &body) {
                eprintln!("error writing counterexample: {e}");
            }
            eprintln!(
                "selmer-sim: counterexample found: {reason}; dumped to {}",
                path.display()
            );
            ExitCode::from(1)
        }
    }
}
