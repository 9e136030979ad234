//! A synthetic finite-dimensional model of the auxiliary-prime Selmer
//! bookkeeping: local condition pairs, global spaces with restriction maps,
//! Wiles-formula ledgers, the removal dimension chase, the two-prime
//! hypotheses, and a linear-algebra replay of the forcing argument.
//!
//! The model keeps a primal global space V = F_q^d and a dual global space
//! V' = F_q^{d'}, each mapping into per-prime local spaces W_s and W'_s that
//! carry an explicit nondegenerate pairing. Global duality is imposed by
//! construction: the images of V and V' inside the total local spaces are
//! exact mutual annihilators, which makes the Wiles-formula ledger an exact
//! identity (verified by rank, never assumed).

mod generator;

pub use generator::{
    enumerate_subspaces, generate_instance, generate_instance_with_violation,
    generate_unobstructed_instance, instance_from_subspace, GeneratorConfig, Violation,
};

use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{annihilator, in_span, kernel_basis, rank};

#[derive(Debug, Error)]
pub enum SelmerError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance generation failed after {0} attempts")]
    GenerationFailed(u32),
}

/// Local condition pair at one prime: an unramified tangent space and a
/// Ramakrishna tangent space of equal dimension inside W = F_q^{2m}, with a
/// nondegenerate pairing against the dual-side local space W'.
#[derive(Debug, Clone)]
pub struct LocalPair {
    pub dim: usize,
    /// Declared local h^0 term for the Wiles ledger (= dim / 2).
    pub h0: usize,
    pub unr: Vec<Vec<u64>>,
    pub ram: Vec<Vec<u64>>,
    pub pairing: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteRole {
    /// Background prime with a fixed condition (its unramified space).
    Base,
    /// Member of Q at which the lift is known ramified.
    AuxRam,
    /// The distinguished q in Q_unr that the chase removes.
    AuxUnr,
    /// Candidate q1 for the first new auxiliary prime.
    Candidate1,
    /// Candidate q2 for the second new auxiliary prime.
    Candidate2,
}

#[derive(Debug, Clone)]
pub struct Site {
    pub role: SiteRole,
    pub pair: LocalPair,
    /// (Ramakrishna type at level n-1, Ramakrishna type at level n) for
    /// candidate sites; None elsewhere.
    pub ram_flags: Option<(bool, bool)>,
}

/// Per-site choice of local condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Unramified,
    Ramakrishna,
    /// L = L^un intersect L^Ram.
    Meet,
    /// L^un + L^Ram.
    Join,
    Full,
    Zero,
}

pub type Assignment = Vec<Condition>;

#[derive(Debug, Clone)]
pub struct SelmerInstance {
    pub field: u64,
    pub global_dim: usize,
    pub dual_dim: usize,
    pub sites: Vec<Site>,
    /// res[s]: dim_s x global_dim restriction matrix.
    pub res: Vec<Vec<Vec<u64>>>,
    /// res_dual[s]: dim_s x dual_dim restriction matrix.
    pub res_dual: Vec<Vec<Vec<u64>>>,
    /// Generator of the primal Selmer group with q removed.
    pub psi: Vec<u64>,
    /// Generator of the dual Selmer group with q removed.
    pub phi: Vec<u64>,
}

impl LocalPair {
    pub fn meet(&self, q: u64) -> Vec<Vec<u64>> {
        subspace_intersection(&self.unr, &self.ram, self.dim, q)
    }

    pub fn join(&self, q: u64) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = self.unr.iter().chain(self.ram.iter()).cloned().collect();
        let r = crate::linalg::row_reduce(&mut rows, self.dim, q);
        rows.truncate(r);
        rows
    }

    pub fn condition_basis(&self, cond: Condition, q: u64) -> Vec<Vec<u64>> {
        match cond {
            Condition::Unramified => self.unr.clone(),
            Condition::Ramakrishna => self.ram.clone(),
            Condition::Meet => self.meet(q),
            Condition::Join => self.join(q),
            Condition::Full => identity_rows(self.dim),
            Condition::Zero => Vec::new(),
        }
    }

    /// Pairing-annihilator of a condition inside the dual local space.
    pub fn dual_condition_basis(&self, cond: Condition, q: u64) -> Vec<Vec<u64>> {
        annihilator(&self.condition_basis(cond, q), &self.pairing, self.dim, q)
    }

    /// dim(L^un + L^Ram) - dim(L^un); equals 1 for Ramakrishna-type pairs.
    pub fn join_excess(&self, q: u64) -> i64 {
        rank(&self.join(q), self.dim, q) as i64 - rank(&self.unr, self.dim, q) as i64
    }

    pub fn validate(&self, q: u64) -> Result<(), SelmerError> {
        if self.dim == 0 || self.dim % 2 != 0 {
            return Err(SelmerError::Malformed(
                "local dim must be even and positive".into(),
            ));
        }
        if self.h0 * 2 != self.dim {
            return Err(SelmerError::Malformed("declared h0 must be dim/2".into()));
        }
        if rank(&self.pairing, self.dim, q) != self.dim {
            return Err(SelmerError::Malformed(
                "pairing must be nondegenerate".into(),
            ));
        }
        if rank(&self.unr, self.dim, q) != self.h0 || rank(&self.ram, self.dim, q) != self.h0 {
            return Err(SelmerError::Malformed(
                "tangent spaces must have dim h0".into(),
            ));
        }
        if self.join_excess(q) != 1 {
            return Err(SelmerError::Malformed(
                "dim(un + Ram) - dim(un) must be 1".into(),
            ));
        }
        // perp is an involution on the condition subspaces
        for cond in [
            Condition::Unramified,
            Condition::Ramakrishna,
            Condition::Meet,
        ] {
            let basis = self.condition_basis(cond, q);
            let perp = self.dual_condition_basis(cond, q);
            let transposed: Vec<Vec<u64>> = (0..self.dim)
                .map(|j| (0..self.dim).map(|i| self.pairing[i][j]).collect())
                .collect();
            let back = annihilator(&perp, &transposed, self.dim, q);
            if rank(&back, self.dim, q) != rank(&basis, self.dim, q) {
                return Err(SelmerError::Malformed("double annihilator failed".into()));
            }
            for v in &basis {
                if !in_span(&back, v, q) {
                    return Err(SelmerError::Malformed("double annihilator failed".into()));
                }
            }
        }
        Ok(())
    }
}

pub fn identity_rows(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0u64; n];
            r[i] = 1;
            r
        })
        .collect()
}

pub fn subspace_intersection(a: &[Vec<u64>], b: &[Vec<u64>], n: usize, q: u64) -> Vec<Vec<u64>> {
    // span(a) cap span(b) = kernel of the stacked annihilator functionals
    let mut rows = kernel_basis(a, n, q);
    rows.extend(kernel_basis(b, n, q));
    kernel_basis(&rows, n, q)
}

impl SelmerInstance {
    pub fn site_index(&self, role: SiteRole) -> Option<usize> {
        self.sites.iter().position(|s| s.role == role)
    }

    pub fn validate(&self) -> Result<(), SelmerError> {
        let q = self.field;
        if !matches!(q, 2 | 3 | 5) {
            return Err(SelmerError::Malformed(format!(
                "field size {q} not in {{2,3,5}}"
            )));
        }
        if self.sites.is_empty() {
            return Err(SelmerError::Malformed("no sites".into()));
        }
        let total: usize = self.sites.iter().map(|s| s.pair.dim).sum();
        if self.global_dim + self.dual_dim != total {
            return Err(SelmerError::Malformed(
                "global dims must sum to the total local dim".into(),
            ));
        }
        for s in &self.sites {
            s.pair.validate(q)?;
        }
        for (s, site) in self.sites.iter().enumerate() {
            if self.res[s].len() != site.pair.dim || self.res_dual[s].len() != site.pair.dim {
                return Err(SelmerError::Malformed("restriction matrix shape".into()));
            }
        }
        // injectivity of both global embeddings
        if self.stacked_rank(false) != self.global_dim {
            return Err(SelmerError::Malformed(
                "primal restriction not injective".into(),
            ));
        }
        if self.stacked_rank(true) != self.dual_dim {
            return Err(SelmerError::Malformed(
                "dual restriction not injective".into(),
            ));
        }
        // reciprocity: images are mutual annihilators; by dimensions it is
        // enough that every pair of global vectors pairs to zero
        for x in 0..self.global_dim {
            for y in 0..self.dual_dim {
                let mut acc = 0u64;
                for (s, site) in self.sites.iter().enumerate() {
                    let xs: Vec<u64> = (0..site.pair.dim).map(|r| self.res[s][r][x]).collect();
                    let ys: Vec<u64> = (0..site.pair.dim).map(|r| self.res_dual[s][r][y]).collect();
                    for i in 0..site.pair.dim {
                        for j in 0..site.pair.dim {
                            acc = (acc + xs[i] * site.pair.pairing[i][j] % q * ys[j]) % q;
                        }
                    }
                }
                if acc != 0 {
                    return Err(SelmerError::Malformed("global reciprocity violated".into()));
                }
            }
        }
        Ok(())
    }

    fn stacked_rank(&self, dual: bool) -> usize {
        let q = self.field;
        let (maps, cols) = if dual {
            (&self.res_dual, self.dual_dim)
        } else {
            (&self.res, self.global_dim)
        };
        let rows: Vec<Vec<u64>> = maps.iter().flat_map(|m| m.iter().cloned()).collect();
        rank(&rows, cols, q)
    }

    /// Restriction of a global vector at a site.
    pub fn restrict(&self, s: usize, x: &[u64]) -> Vec<u64> {
        let q = self.field;
        self.res[s]
            .iter()
            .map(|row| row.iter().zip(x).map(|(&a, &b)| a * b % q).sum::<u64>() % q)
            .collect()
    }

    pub fn restrict_dual(&self, s: usize, y: &[u64]) -> Vec<u64> {
        let q = self.field;
        self.res_dual[s]
            .iter()
            .map(|row| row.iter().zip(y).map(|(&a, &b)| a * b % q).sum::<u64>() % q)
            .collect()
    }

    /// The P_Q assignment: Ramakrishna at all of Q, base/unramified elsewhere.
    pub fn assignment_q(&self) -> Assignment {
        self.sites
            .iter()
            .map(|s| match s.role {
                SiteRole::AuxRam | SiteRole::AuxUnr => Condition::Ramakrishna,
                _ => Condition::Unramified,
            })
            .collect()
    }

    /// The P_{Q0} assignment: q dropped back to unramified.
    pub fn assignment_q0(&self) -> Assignment {
        self.sites
            .iter()
            .map(|s| match s.role {
                SiteRole::AuxRam => Condition::Ramakrishna,
                _ => Condition::Unramified,
            })
            .collect()
    }

    /// Basis of the Selmer space for an assignment (primal side).
    pub fn selmer_basis(&self, assignment: &Assignment) -> Vec<Vec<u64>> {
        let q = self.field;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (s, site) in self.sites.iter().enumerate() {
            let cond = site.pair.condition_basis(assignment[s], q);
            for f in kernel_basis(&cond, site.pair.dim, q) {
                // functional f o res_s as a row on the global space
                let row: Vec<u64> = (0..self.global_dim)
                    .map(|c| {
                        (0..site.pair.dim)
                            .map(|r| f[r] * self.res[s][r][c] % q)
                            .sum::<u64>()
                            % q
                    })
                    .collect();
                rows.push(row);
            }
        }
        kernel_basis(&rows, self.global_dim, q)
    }

    /// Basis of the dual Selmer space: dual-side classes landing in the
    /// pairing-annihilators of the assigned conditions.
    pub fn dual_selmer_basis(&self, assignment: &Assignment) -> Vec<Vec<u64>> {
        let q = self.field;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (s, site) in self.sites.iter().enumerate() {
            let dual_cond = site.pair.dual_condition_basis(assignment[s], q);
            for f in kernel_basis(&dual_cond, site.pair.dim, q) {
                let row: Vec<u64> = (0..self.dual_dim)
                    .map(|c| {
                        (0..site.pair.dim)
                            .map(|r| f[r] * self.res_dual[s][r][c] % q)
                            .sum::<u64>()
                            % q
                    })
                    .collect();
                rows.push(row);
            }
        }
        kernel_basis(&rows, self.dual_dim, q)
    }

    pub fn h1(&self, assignment: &Assignment) -> usize {
        self.selmer_basis(assignment).len()
    }

    pub fn h1_dual(&self, assignment: &Assignment) -> usize {
        self.dual_selmer_basis(assignment).len()
    }

    /// Exhaustive membership enumeration of the primal Selmer set, as an
    /// independent oracle for the rank route. Membership is tested per
    /// vector with augmented-rank span checks against the local condition
    /// bases, never through kernel computations.
    pub fn selmer_set_bruteforce(&self, assignment: &Assignment) -> Vec<Vec<u64>> {
        let q = self.field;
        let mut out = Vec::new();
        let mut x = vec![0u64; self.global_dim];
        loop {
            let mut ok = true;
            for (s, site) in self.sites.iter().enumerate() {
                let r = self.restrict(s, &x);
                let basis = site.pair.condition_basis(assignment[s], q);
                if !in_span(&basis, &r, q) {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(x.clone());
            }
            // odometer
            let mut i = 0;
            loop {
                if i == self.global_dim {
                    return out;
                }
                x[i] += 1;
                if x[i] < q {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    /// Serialize for counterexample dumps: canonical JSON, integers as
    /// decimal strings.
    pub fn to_json(&self) -> Value {
        let ustr = |x: u64| Value::String(x.to_string());
        let mat = |m: &Vec<Vec<u64>>| -> Value {
            Value::Array(
                m.iter()
                    .map(|row| Value::Array(row.iter().map(|&x| ustr(x)).collect()))
                    .collect(),
            )
        };
        let sites: Vec<Value> = self
            .sites
            .iter()
            .map(|s| {
                json!({
                    "role": format!("{:?}", s.role),
                    "dim": ustr(s.pair.dim as u64),
                    "h0": ustr(s.pair.h0 as u64),
                    "unr": mat(&s.pair.unr),
                    "ram": mat(&s.pair.ram),
                    "pairing": mat(&s.pair.pairing),
                    "ram_flags": s.ram_flags.map(|(a, b)| json!([a, b])),
                })
            })
            .collect();
        json!({
            "kind": "selmer_instance",
            "field": ustr(self.field),
            "global_dim": ustr(self.global_dim as u64),
            "dual_dim": ustr(self.dual_dim as u64),
            "sites": sites,
            "res": self.res.iter().map(mat).collect::<Vec<_>>(),
            "res_dual": self.res_dual.iter().map(mat).collect::<Vec<_>>(),
            "psi": Value::Array(self.psi.iter().map(|&x| ustr(x)).collect()),
            "phi": Value::Array(self.phi.iter().map(|&x| ustr(x)).collect()),
        })
    }
}

/// Wiles ledger: sum over primes of (dim L_v - h0_v) for the assignment.
pub fn wiles_delta(instance: &SelmerInstance, assignment: &Assignment) -> Result<i64, SelmerError> {
    instance.validate()?;
    let q = instance.field;
    let mut delta = 0i64;
    for (s, site) in instance.sites.iter().enumerate() {
        let basis = site.pair.condition_basis(assignment[s], q);
        delta += rank(&basis, site.pair.dim, q) as i64 - site.pair.h0 as i64;
    }
    Ok(delta)
}

/// The ledger identity h1 - h1_dual = wiles_delta, exact for instances whose
/// global images are mutual annihilators.
pub fn wiles_ledger_check(
    instance: &SelmerInstance,
    assignment: &Assignment,
) -> Result<bool, SelmerError> {
    let delta = wiles_delta(instance, assignment)?;
    let lhs = instance.h1(assignment) as i64 - instance.h1_dual(assignment) as i64;
    Ok(lhs == delta)
}

/// Remove the distinguished q in Q_unr and chase the dimensions: under the
/// preconditions (Q auxiliary, nonzero dual Selmer after removal) both the
/// Selmer and dual Selmer dimensions equal exactly 1.
pub fn chase_removal(instance: &SelmerInstance) -> Result<(usize, usize), SelmerError> {
    instance.validate()?;
    if instance.site_index(SiteRole::AuxUnr).is_none() {
        return Err(SelmerError::Precondition(
            "no removable prime in Q_unr".into(),
        ));
    }
    let p_q = instance.assignment_q();
    if instance.h1(&p_q) != 0 || instance.h1_dual(&p_q) != 0 {
        return Err(SelmerError::Precondition(
            "Q is not an auxiliary set".into(),
        ));
    }
    let p_q0 = instance.assignment_q0();
    let dual = instance.h1_dual(&p_q0);
    if dual == 0 {
        return Err(SelmerError::Precondition(
            "removing q leaves a zero dual Selmer group; the lemma does not apply".into(),
        ));
    }
    Ok((instance.h1(&p_q0), dual))
}

/// Restriction data a candidate prime supplies to the hypothesis checks.
#[derive(Debug, Clone)]
pub struct CandidateData {
    pub psi_restriction: Vec<u64>,
    pub phi_restriction: Vec<u64>,
    /// Ramakrishna type at level n-1 and at level n.
    pub ram_type_prev: bool,
    pub ram_type_cur: bool,
}

impl SelmerInstance {
    pub fn candidate_data(&self, role: SiteRole) -> Option<CandidateData> {
        let s = self.site_index(role)?;
        let (prev, cur) = self.sites[s].ram_flags?;
        Some(CandidateData {
            psi_restriction: self.restrict(s, &self.psi),
            phi_restriction: self.restrict_dual(s, &self.phi),
            ram_type_prev: prev,
            ram_type_cur: cur,
        })
    }
}

/// First-prime hypothesis: psi lands in L = L^un cap L^Ram, phi avoids
/// L^{Ram, perp}, and the candidate is Ramakrishna type at level n-1 but not
/// at level n.
pub fn check_hyp1(pair: &LocalPair, data: &CandidateData, q: u64) -> bool {
    let meet = pair.meet(q);
    let ram_perp = pair.dual_condition_basis(Condition::Ramakrishna, q);
    in_span(&meet, &data.psi_restriction, q)
        && !in_span(&ram_perp, &data.phi_restriction, q)
        && data.ram_type_prev
        && !data.ram_type_cur
}

/// Second-prime hypothesis: psi avoids L, phi and phi-tilde avoid
/// L^{un, perp} cap L^{Ram, perp}, and the candidate is Ramakrishna type at
/// level n-1.
pub fn check_hyp2(
    pair: &LocalPair,
    data: &CandidateData,
    phi_tilde_restriction: &[u64],
    q: u64,
) -> bool {
    let meet = pair.meet(q);
    let join_perp = pair.dual_condition_basis(Condition::Join, q);
    !in_span(&meet, &data.psi_restriction, q)
        && !in_span(&join_perp, &data.phi_restriction, q)
        && !in_span(&join_perp, phi_tilde_restriction, q)
        && data.ram_type_prev
}

#[derive(Debug, Clone)]
pub struct ConsequencesReport {
    /// Dimensions of the three Selmer spaces (join, Ramakrishna, meet at q1).
    pub dims: (usize, usize, usize),
    pub all_equal_psi_line: bool,
    /// Generator of the dual Selmer group of P_{Q0 union q1}.
    pub phi_tilde: Vec<u64>,
    pub phi_tilde_independent: bool,
}

/// Consequences of the first hypothesis: the three Selmer spaces with the
/// join / Ramakrishna / meet condition at q1 all equal the line through psi,
/// and the new dual Selmer group is a line whose generator is independent
/// from phi.
pub fn lemma_consequences(instance: &SelmerInstance) -> Result<ConsequencesReport, SelmerError> {
    instance.validate()?;
    let q = instance.field;
    let c1 = instance
        .site_index(SiteRole::Candidate1)
        .ok_or_else(|| SelmerError::Precondition("no candidate q1 site".into()))?;
    let data = instance
        .candidate_data(SiteRole::Candidate1)
        .ok_or_else(|| SelmerError::Precondition("q1 lacks Ramakrishna-type flags".into()))?;
    if !check_hyp1(&instance.sites[c1].pair, &data, q) {
        return Err(SelmerError::Precondition("hypothesis for q1 fails".into()));
    }
    let base = instance.assignment_q0();
    let with = |cond: Condition| {
        let mut a = base.clone();
        a[c1] = cond;
        a
    };
    let spaces = [
        instance.selmer_basis(&with(Condition::Join)),
        instance.selmer_basis(&with(Condition::Ramakrishna)),
        instance.selmer_basis(&with(Condition::Meet)),
    ];
    let dims = (spaces[0].len(), spaces[1].len(), spaces[2].len());
    let psi_line = vec![instance.psi.clone()];
    let all_equal_psi_line = spaces
        .iter()
        .all(|sp| sp.len() == 1 && in_span(&psi_line, &sp[0], q) && in_span(sp, &instance.psi, q));

    let dual = instance.dual_selmer_basis(&with(Condition::Ramakrishna));
    if dual.len() != 1 {
        return Err(SelmerError::Precondition(format!(
            "dual Selmer group of P_{{Q0 u q1}} has dimension {} instead of 1",
            dual.len()
        )));
    }
    let phi_tilde = dual[0].clone();
    let span = vec![instance.phi.clone(), phi_tilde.clone()];
    let phi_tilde_independent = rank(&span, instance.dual_dim, q) == 2;
    Ok(ConsequencesReport {
        dims,
        all_equal_psi_line,
        phi_tilde,
        phi_tilde_independent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForcingVerdict {
    /// Ramification is forced at both candidate primes.
    Forced,
    /// The argument does not force ramification; if a nonzero cocycle
    /// witnesses the escape it is included (coordinates in the global space).
    NotForced {
        reason: String,
        escape: Option<Vec<u64>>,
    },
    /// Q_unr is empty: route to `unobstructed_step`.
    NotApplicable,
}

/// Replay the forcing argument as linear algebra. The verdict is Forced iff
/// the two hypotheses hold, Q0 with both candidates Ramakrishna is auxiliary
/// (Selmer and dual Selmer vanish), and for each i the space of admissible
/// difference cocycles unramified at q_i is contained in the psi line, whose
/// q1-restriction lies in L^Ram, contradicting the not-Ramakrishna-at-level-n
/// flag at q1.
pub fn simulate_forcing(instance: &SelmerInstance) -> Result<ForcingVerdict, SelmerError> {
    instance.validate()?;
    let q = instance.field;
    if instance.site_index(SiteRole::AuxUnr).is_none() {
        return Ok(ForcingVerdict::NotApplicable);
    }
    let c1 = instance
        .site_index(SiteRole::Candidate1)
        .ok_or_else(|| SelmerError::Precondition("no candidate q1 site".into()))?;
    let c2 = instance
        .site_index(SiteRole::Candidate2)
        .ok_or_else(|| SelmerError::Precondition("no candidate q2 site".into()))?;

    let d1 = instance
        .candidate_data(SiteRole::Candidate1)
        .ok_or_else(|| SelmerError::Precondition("q1 lacks flags".into()))?;
    if !check_hyp1(&instance.sites[c1].pair, &d1, q) {
        return Ok(ForcingVerdict::NotForced {
            reason: "hypothesis 1 fails at q1".into(),
            escape: first_nonzero(&aux_selmer(instance, c1, c2)),
        });
    }
    let cons = lemma_consequences(instance)?;
    let d2 = instance
        .candidate_data(SiteRole::Candidate2)
        .ok_or_else(|| SelmerError::Precondition("q2 lacks flags".into()))?;
    let s2 = instance.site_index(SiteRole::Candidate2).unwrap();
    let phi_tilde_at_q2 = instance.restrict_dual(s2, &cons.phi_tilde);
    let hyp2_ok = check_hyp2(&instance.sites[c2].pair, &d2, &phi_tilde_at_q2, q);

    // auxiliary-ness of Q0 with (q1, q2) Ramakrishna: both Selmer groups
    // vanish, so the new deformation exists and is unique
    let aux = aux_selmer(instance, c1, c2);
    let mut aux_dual_assignment = instance.assignment_q0();
    aux_dual_assignment[c1] = Condition::Ramakrishna;
    aux_dual_assignment[c2] = Condition::Ramakrishna;
    let aux_dual = instance.dual_selmer_basis(&aux_dual_assignment);
    if !hyp2_ok || !aux.is_empty() || !aux_dual.is_empty() {
        return Ok(ForcingVerdict::NotForced {
            reason: if hyp2_ok {
                "Q0 with the two candidates is not auxiliary".into()
            } else {
                "hypothesis 2 fails at q2".into()
            },
            escape: first_nonzero(&aux),
        });
    }

    // difference-cocycle spaces: unramified at q and q_i, join at q_j
    let psi_line = vec![instance.psi.clone()];
    let ram_q1 = instance.sites[c1].pair.ram.clone();
    for (qi, qj) in [(c1, c2), (c2, c1)] {
        let mut a = instance.assignment_q0();
        a[qi] = Condition::Unramified;
        a[qj] = Condition::Join;
        let space = instance.selmer_basis(&a);
        for h in &space {
            let in_psi = in_span(&psi_line, h, q);
            let r1 = instance.restrict(c1, h);
            let in_ram = in_span(&ram_q1, &r1, q);
            if !(in_psi && in_ram) {
                return Ok(ForcingVerdict::NotForced {
                    reason: "an admissible difference cocycle escapes the psi line".into(),
                    escape: Some(h.clone()),
                });
            }
        }
    }
    // every nonzero h lies on the psi line with Ramakrishna-type
    // q1-restriction, contradicting the not-Ramakrishna-at-level-n flag
    // already enforced by hypothesis 1
    Ok(ForcingVerdict::Forced)
}

fn aux_selmer(instance: &SelmerInstance, c1: usize, c2: usize) -> Vec<Vec<u64>> {
    let mut a = instance.assignment_q0();
    a[c1] = Condition::Ramakrishna;
    a[c2] = Condition::Ramakrishna;
    instance.selmer_basis(&a)
}

fn first_nonzero(basis: &[Vec<u64>]) -> Option<Vec<u64>> {
    basis.iter().find(|v| v.iter().any(|&x| x != 0)).cloned()
}

impl SelmerInstance {
    /// Dual-side exhaustive membership enumeration, mirror of
    /// `selmer_set_bruteforce`.
    pub fn dual_selmer_set_bruteforce(&self, assignment: &Assignment) -> Vec<Vec<u64>> {
        let q = self.field;
        let mut out = Vec::new();
        let mut y = vec![0u64; self.dual_dim];
        loop {
            let mut ok = true;
            for (s, site) in self.sites.iter().enumerate() {
                let r = self.restrict_dual(s, &y);
                let basis = site.pair.dual_condition_basis(assignment[s], q);
                if !in_span(&basis, &r, q) {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(y.clone());
            }
            let mut i = 0;
            loop {
                if i == self.dual_dim {
                    return out;
                }
                y[i] += 1;
                if y[i] < q {
                    break;
                }
                y[i] = 0;
                i += 1;
            }
        }
    }
}

/// Independent exhaustive re-derivation of the forcing verdict: every space
/// that `simulate_forcing` computes by rank is re-enumerated vector by
/// vector, and the same decision tree is applied to the enumerated sets.
pub fn forcing_oracle(instance: &SelmerInstance) -> Result<ForcingVerdict, SelmerError> {
    instance.validate()?;
    let q = instance.field;
    if instance.site_index(SiteRole::AuxUnr).is_none() {
        return Ok(ForcingVerdict::NotApplicable);
    }
    let c1 = instance.site_index(SiteRole::Candidate1).unwrap();
    let c2 = instance.site_index(SiteRole::Candidate2).unwrap();
    let d1 = instance.candidate_data(SiteRole::Candidate1).unwrap();
    let nonzero = |set: &[Vec<u64>]| set.iter().find(|v| v.iter().any(|&x| x != 0)).cloned();

    let mut aux_assignment = instance.assignment_q0();
    aux_assignment[c1] = Condition::Ramakrishna;
    aux_assignment[c2] = Condition::Ramakrishna;
    let aux_set = instance.selmer_set_bruteforce(&aux_assignment);

    if !check_hyp1(&instance.sites[c1].pair, &d1, q) {
        return Ok(ForcingVerdict::NotForced {
            reason: "hypothesis 1 fails at q1".into(),
            escape: nonzero(&aux_set),
        });
    }

    // phi-tilde by enumeration: the dual Selmer set of P_{Q0 union q1}
    // must be exactly a line (q points including zero)
    let mut q1_ram = instance.assignment_q0();
    q1_ram[c1] = Condition::Ramakrishna;
    let dual_set = instance.dual_selmer_set_bruteforce(&q1_ram);
    if dual_set.len() != q as usize {
        return Err(SelmerError::Precondition(format!(
            "dual Selmer set of P_{{Q0 u q1}} has {} points, expected a line",
            dual_set.len()
        )));
    }
    let phi_tilde = nonzero(&dual_set).expect("a line has a nonzero point");
    let d2 = instance.candidate_data(SiteRole::Candidate2).unwrap();
    let phi_tilde_at_q2 = instance.restrict_dual(c2, &phi_tilde);
    let hyp2_ok = check_hyp2(&instance.sites[c2].pair, &d2, &phi_tilde_at_q2, q);

    let aux_nonzero = aux_set.iter().any(|v| v.iter().any(|&x| x != 0));
    let aux_dual_nonzero = instance
        .dual_selmer_set_bruteforce(&aux_assignment)
        .iter()
        .any(|v| v.iter().any(|&x| x != 0));
    if !hyp2_ok || aux_nonzero || aux_dual_nonzero {
        return Ok(ForcingVerdict::NotForced {
            reason: if hyp2_ok {
                "Q0 with the two candidates is not auxiliary".into()
            } else {
                "hypothesis 2 fails at q2".into()
            },
            escape: nonzero(&aux_set),
        });
    }

    let psi_line = vec![instance.psi.clone()];
    let ram_q1 = instance.sites[c1].pair.ram.clone();
    for (qi, qj) in [(c1, c2), (c2, c1)] {
        let mut a = instance.assignment_q0();
        a[qi] = Condition::Unramified;
        a[qj] = Condition::Join;
        for h in instance.selmer_set_bruteforce(&a) {
            if h.iter().all(|&x| x == 0) {
                continue;
            }
            let in_psi = in_span(&psi_line, &h, q);
            let in_ram = in_span(&ram_q1, &instance.restrict(c1, &h), q);
            if !(in_psi && in_ram) {
                return Ok(ForcingVerdict::NotForced {
                    reason: "an admissible difference cocycle escapes the psi line".into(),
                    escape: Some(h),
                });
            }
        }
    }
    Ok(ForcingVerdict::Forced)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnobstructedVerdict {
    /// The augmented lift is flagged ramified at q: done.
    DoneRamified,
    /// Both deformation rings are the Witt vectors, the unramified lift
    /// equals the plain one, and the level-2 flag contradicts that.
    Contradiction,
}

/// Replay of the unobstructed-case argument: the instance must have a
/// vanishing Selmer group for the base problem and for the q-augmented one
/// (both verified by rank); the two flags then decide which branch fires.
pub fn unobstructed_step(
    instance: &SelmerInstance,
    rho_q_ramified: bool,
    rho2_ram_type_at_q: bool,
) -> Result<UnobstructedVerdict, SelmerError> {
    instance.validate()?;
    let c1 = instance
        .site_index(SiteRole::Candidate1)
        .ok_or_else(|| SelmerError::Precondition("no candidate site for q".into()))?;
    let base: Assignment = instance
        .sites
        .iter()
        .map(|s| match s.role {
            SiteRole::AuxRam => Condition::Ramakrishna,
            _ => Condition::Unramified,
        })
        .collect();
    if instance.h1(&base) != 0 {
        return Err(SelmerError::Precondition(
            "declared h1 = 0 fails the rank check".into(),
        ));
    }
    let mut aug = base.clone();
    aug[c1] = Condition::Ramakrishna;
    if instance.h1(&aug) != 0 {
        return Err(SelmerError::Precondition(
            "q-augmented problem is not rigid; the uniqueness step needs h1 = 0".into(),
        ));
    }
    if rho_q_ramified {
        Ok(UnobstructedVerdict::DoneRamified)
    } else if !rho2_ram_type_at_q {
        Ok(UnobstructedVerdict::Contradiction)
    } else {
        Err(SelmerError::Precondition(
            "q was required to have a non-Ramakrishna-type level-2 reduction".into(),
        ))
    }
}
