//! Integral Chevalley basis of the simple Lie algebra attached to a root
//! system, with exact signed structure constants.
//!
//! Basis order: H_1..H_rank (simple coroots), then X_{roots[k]} following the
//! root order of [`RootSystem`]. Structure constant signs are pinned by the
//! extraspecial-pair normalization: positive roots carry the (height, lex)
//! total order; for each composite positive root the special pair with
//! minimal first member gets N = +(p+1), and every other constant is derived
//! from those through the standard bracket relations
//!
//! * N(beta, alpha) = -N(alpha, beta),
//! * N(-alpha, -beta) = -N(alpha, beta),
//! * N(alpha, beta)/(gamma,gamma) = N(beta,gamma)/(alpha,alpha)
//!   = N(gamma,alpha)/(beta,beta) whenever alpha + beta + gamma = 0,
//!
//! together with the Jacobi identity on triples (X_{-a1}, X_a, X_b) for the
//! remaining positive special pairs. The exhaustive Jacobi and |N| = p+1
//! suites below are the correctness oracle for the whole construction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::inv_mod;
use crate::linalg::ModMatrix;
use crate::root_data::RootSystem;

#[derive(Debug, Error)]
pub enum ChevalleyError {
    #[error("modulus mismatch between operands ({0:?} vs {1:?})")]
    ModulusMismatch(Option<u64>, Option<u64>),
    #[error("ad(a) is not nilpotent")]
    NotNilpotent,
    #[error("l = {ell} is too small: nilpotency index is {index}, need l > index")]
    PrimeTooSmall { ell: u64, index: u32 },
}

/// Element of the Lie algebra in Chevalley-basis coordinates, optionally
/// reduced mod l^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdElement {
    pub coeffs: Vec<i64>,
    pub modulus: Option<u64>,
}

impl AdElement {
    pub fn new(coeffs: Vec<i64>) -> Self {
        AdElement {
            coeffs,
            modulus: None,
        }
    }

    pub fn new_mod(mut coeffs: Vec<i64>, modulus: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c = c.rem_euclid(modulus as i64);
        }
        AdElement {
            coeffs,
            modulus: Some(modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The integral Chevalley algebra: bracket table and services built on it.
pub struct ChevalleyAlgebra {
    pub system: RootSystem,
    pub dim: usize,
    /// brackets[i * dim + j] = [e_i, e_j] as a sparse integer vector.
    brackets: Vec<Vec<(u32, i64)>>,
    /// N(alpha, beta) for all root index pairs with alpha + beta a root.
    struct_consts: HashMap<(usize, usize), i64>,
}

impl ChevalleyAlgebra {
    pub fn build(system: RootSystem) -> ChevalleyAlgebra {
        let rank = system.rank;
        let nroots = system.roots.len();
        let dim = rank + nroots;

        let consts = structure_constants(&system);

        let mut brackets: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dim * dim];
        // [H_i, H_j] = 0; [H_i, X_beta] = <beta, alpha_i^vee> X_beta
        for i in 0..rank {
            for (r, beta) in system.roots.iter().enumerate() {
                let c = system.pairing_with_simple_coroot(beta, i);
                if c != 0 {
                    let bi = rank + r;
                    brackets[i * dim + bi].push((bi as u32, c));
                    brackets[bi * dim + i].push((bi as u32, -c));
                }
            }
        }
        for (a, alpha) in system.roots.iter().enumerate() {
            for (b, beta) in system.roots.iter().enumerate() {
                let ia = rank + a;
                let ib = rank + b;
                if b == system.negate(a) {
                    // [X_alpha, X_{-alpha}] = H_alpha
                    let co = system.coroot(alpha);
                    for (i, &c) in co.iter().enumerate() {
                        if c != 0 {
                            brackets[ia * dim + ib].push((i as u32, c));
                        }
                    }
                    continue;
                }
                if a == b {
                    continue;
                }
                let sum: Vec<i64> = alpha.iter().zip(beta.iter()).map(|(x, y)| x + y).collect();
                if let Some(s) = system.root_index(&sum) {
                    let n = consts[&(a, b)];
                    brackets[ia * dim + ib].push(((rank + s) as u32, n));
                }
            }
        }

        ChevalleyAlgebra {
            system,
            dim,
            brackets,
            struct_consts: consts,
        }
    }

    pub fn rank(&self) -> usize {
        self.system.rank
    }

    /// Basis index of X_{roots[r]}.
    pub fn root_basis_index(&self, r: usize) -> usize {
        self.rank() + r
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, i64)] {
        &self.brackets[i * self.dim + j]
    }

    pub fn structure_constant(&self, a: usize, b: usize) -> Option<i64> {
        self.struct_consts.get(&(a, b)).copied()
    }

    /// X_theta for the highest root.
    pub fn x_highest(&self) -> AdElement {
        let mut v = vec![0i64; self.dim];
        v[self.root_basis_index(self.system.highest_root)] = 1;
        AdElement::new(v)
    }

    /// The principal regular nilpotent X = sum of simple-root vectors.
    pub fn x_principal(&self) -> AdElement {
        let mut v = vec![0i64; self.dim];
        for i in 0..self.rank() {
            let mut simple = vec![0i64; self.rank()];
            simple[i] = 1;
            let r = self
                .system
                .root_index(&simple)
                .expect("simple root present");
            v[self.root_basis_index(r)] = 1;
        }
        AdElement::new(v)
    }

    /// Bilinear extension of the bracket table.
    pub fn bracket(&self, a: &AdElement, b: &AdElement) -> Result<AdElement, ChevalleyError> {
        if a.modulus != b.modulus {
            return Err(ChevalleyError::ModulusMismatch(a.modulus, b.modulus));
        }
        let mut out = vec![0i64; self.dim];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                for &(k, c) in self.bracket_basis(i, j) {
                    let term = ai
                        .checked_mul(bj)
                        .and_then(|t| t.checked_mul(c))
                        .expect("bracket coefficient overflow");
                    out[k as usize] = out[k as usize]
                        .checked_add(term)
                        .expect("bracket coefficient overflow");
                }
            }
        }
        Ok(match a.modulus {
            Some(m) => AdElement::new_mod(out, m),
            None => AdElement::new(out),
        })
    }

    /// Matrix of ad(a) in the Chevalley basis (columns are ad(a)(e_j)).
    pub fn ad_matrix(&self, a: &AdElement) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.dim]; self.dim];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in self.bracket_basis(i, j) {
                    let term = ai.checked_mul(c).expect("ad matrix overflow");
                    m[k as usize][j] = m[k as usize][j]
                        .checked_add(term)
                        .expect("ad matrix overflow");
                }
            }
        }
        m
    }

    /// Smallest k with ad(a)^k = 0, computed exactly with big integers.
    /// Returns an error if ad(a) is not nilpotent (no vanishing power up to
    /// dim, which bounds the nilpotency index of any nilpotent operator).
    pub fn ad_nilpotency_index(&self, a: &AdElement) -> Result<u32, ChevalleyError> {
        let ad = self.ad_matrix(a);
        // column-sparse form of ad(a)
        let cols: Vec<Vec<(usize, i64)>> = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .filter(|&i| ad[i][j] != 0)
                    .map(|i| (i, ad[i][j]))
                    .collect()
            })
            .collect();
        let mut power: Vec<Vec<BigInt>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| BigInt::from(ad[i][j])).collect())
            .collect();
        if power.iter().all(|row| row.iter().all(|x| x.is_zero())) {
            return Ok(1);
        }
        for k in 2..=(self.dim as u32 + 1) {
            power = sparse_times_dense(&cols, &power, self.dim);
            if power.iter().all(|row| row.iter().all(|x| x.is_zero())) {
                return Ok(k);
            }
        }
        Err(ChevalleyError::NotNilpotent)
    }

    /// exp(ad a) reduced mod l^n, for nilpotent ad(a). Rejects l less than or
    /// equal to the nilpotency index so that every divided power 1/k! exists
    /// l-integrally.
    pub fn exp_nilpotent_ad(
        &self,
        a: &AdElement,
        ell: u64,
        n: u32,
    ) -> Result<ModMatrix, ChevalleyError> {
        let index = self.ad_nilpotency_index(a)?;
        if ell <= index as u64 {
            return Err(ChevalleyError::PrimeTooSmall { ell, index });
        }
        let modulus = ell.pow(n);
        let ad = self.ad_matrix(a);
        let cols: Vec<Vec<(usize, i64)>> = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .filter(|&i| ad[i][j] != 0)
                    .map(|i| (i, ad[i][j]))
                    .collect()
            })
            .collect();
        let mut acc = ModMatrix::identity(self.dim, modulus);
        let mut power: Vec<Vec<BigInt>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        if i == j {
                            BigInt::from(1)
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut kfact_inv = 1u64;
        for k in 1..index {
            power = sparse_times_dense(&cols, &power, self.dim);
            kfact_inv = kfact_inv * inv_mod(k as u64 % modulus, modulus) % modulus;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if power[i][j].is_zero() {
                        continue;
                    }
                    let r = bigint_mod(&power[i][j], modulus);
                    let term = r * kfact_inv % modulus;
                    let cur = acc.get(i, j);
                    acc.set(i, j, (cur + term) % modulus);
                }
            }
        }
        Ok(acc)
    }

    /// Exhaustive bracket-preservation test: M[e_i,e_j] = [Me_i, Me_j] for
    /// all basis pairs, mod the matrix modulus. With `sample_pairs` set, only
    /// that many deterministically-spread pairs are checked (for the large
    /// types, where the full quadratic loop is expensive).
    pub fn is_bracket_automorphism(&self, m: &ModMatrix, sample_pairs: Option<usize>) -> bool {
        assert_eq!(m.dim, self.dim);
        let p = m.modulus;
        let pairs: Vec<(usize, usize)> = match sample_pairs {
            None => (0..self.dim)
                .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
                .collect(),
            Some(count) => {
                let total = self.dim * (self.dim - 1) / 2;
                let step = (total / count.max(1)).max(1);
                (0..self.dim)
                    .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
                    .step_by(step)
                    .collect()
            }
        };
        let cols: Vec<Vec<u64>> = (0..self.dim)
            .map(|j| (0..self.dim).map(|i| m.get(i, j)).collect())
            .collect();
        for (i, j) in pairs {
            // left: M [e_i, e_j]
            let mut left = vec![0u64; self.dim];
            for &(k, c) in self.bracket_basis(i, j) {
                let cu = c.rem_euclid(p as i64) as u64;
                for r in 0..self.dim {
                    left[r] = (left[r] + cols[k as usize][r] * cu) % p;
                }
            }
            // right: [M e_i, M e_j]
            let mut right = vec![0u64; self.dim];
            for (a, &ma) in cols[i].iter().enumerate() {
                if ma == 0 {
                    continue;
                }
                for (b, &mb) in cols[j].iter().enumerate() {
                    if mb == 0 {
                        continue;
                    }
                    let f = ma * mb % p;
                    for &(k, c) in self.bracket_basis(a, b) {
                        let cu = c.rem_euclid(p as i64) as u64;
                        right[k as usize] = (right[k as usize] + f * cu) % p;
                    }
                }
            }
            if left != right {
                return false;
            }
        }
        true
    }

    /// Antisymmetry [e_i, e_j] = -[e_j, e_i] and alternation [e_i, e_i] = 0
    /// over all basis pairs.
    pub fn antisymmetry_holds(&self) -> bool {
        for i in 0..self.dim {
            if !self.bracket_basis(i, i).is_empty() {
                return false;
            }
            for j in i + 1..self.dim {
                let mut ij: Vec<(u32, i64)> = self.bracket_basis(i, j).to_vec();
                let mut ji: Vec<(u32, i64)> = self
                    .bracket_basis(j, i)
                    .iter()
                    .map(|&(k, c)| (k, -c))
                    .collect();
                ij.sort_unstable();
                ji.sort_unstable();
                if ij != ji {
                    return false;
                }
            }
        }
        true
    }

    /// Jacobi identity on every sorted basis triple i < j < k. Together with
    /// antisymmetry and alternation this covers all dim^3 ordered triples,
    /// since the Jacobi sum is an alternating trilinear form.
    pub fn jacobi_identity_holds(&self) -> bool {
        let dim = self.dim;
        let mut scratch = vec![0i64; dim];
        let mut touched: Vec<usize> = Vec::with_capacity(32);
        for i in 0..dim {
            for j in i + 1..dim {
                let bij = self.bracket_basis(i, j);
                for k in j + 1..dim {
                    let bjk = self.bracket_basis(j, k);
                    let bki = self.bracket_basis(k, i);
                    if bij.is_empty() && bjk.is_empty() && bki.is_empty() {
                        continue;
                    }
                    for &(m, c) in bij {
                        for &(t, c2) in self.bracket_basis(m as usize, k) {
                            if scratch[t as usize] == 0 {
                                touched.push(t as usize);
                            }
                            scratch[t as usize] += c * c2;
                        }
                    }
                    for &(m, c) in bjk {
                        for &(t, c2) in self.bracket_basis(m as usize, i) {
                            if scratch[t as usize] == 0 {
                                touched.push(t as usize);
                            }
                            scratch[t as usize] += c * c2;
                        }
                    }
                    for &(m, c) in bki {
                        for &(t, c2) in self.bracket_basis(m as usize, j) {
                            if scratch[t as usize] == 0 {
                                touched.push(t as usize);
                            }
                            scratch[t as usize] += c * c2;
                        }
                    }
                    let mut ok = true;
                    for &t in &touched {
                        if scratch[t] != 0 {
                            ok = false;
                        }
                        scratch[t] = 0;
                    }
                    touched.clear();
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Recompute |N(alpha, beta)| = p + 1 from the root chains for every
    /// stored constant.
    pub fn magnitudes_match_chains(&self) -> bool {
        self.struct_consts.iter().all(|(&(a, b), &n)| {
            let p = self
                .system
                .chain_down(&self.system.roots[a], &self.system.roots[b]);
            n.abs() == p + 1
        })
    }

    /// Deterministic text dump of the bracket table, for cross-implementation
    /// diffing. One line per nonzero basis bracket.
    pub fn dump_bracket_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# chevalley bracket table {} dim {}\n",
            self.system.type_label, self.dim
        ));
        for i in 0..self.dim {
            for j in 0..self.dim {
                let entries = self.bracket_basis(i, j);
                if entries.is_empty() {
                    continue;
                }
                let terms: Vec<String> = entries.iter().map(|(k, c)| format!("{c}*e{k}")).collect();
                out.push_str(&format!("[e{i},e{j}] = {}\n", terms.join(" + ")));
            }
        }
        out
    }

    pub fn basis_name(&self, i: usize) -> String {
        if i < self.rank() {
            format!("H{}", i + 1)
        } else {
            format!("X{:?}", self.system.roots[i - self.rank()])
        }
    }
}

fn bigint_mod(x: &BigInt, m: u64) -> u64 {
    let r = x % BigInt::from(m);
    let r = if r.is_negative() {
        r + BigInt::from(m)
    } else {
        r
    };
    let digits = r.to_u64_digits().1;
    if digits.is_empty() {
        0
    } else {
        digits[0]
    }
}

/// sparse (column-major) * dense product over BigInt.
fn sparse_times_dense(
    cols: &[Vec<(usize, i64)>],
    m: &[Vec<BigInt>],
    dim: usize,
) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); dim]; dim];
    for k in 0..dim {
        for &(i, v) in &cols[k] {
            let vb = BigInt::from(v);
            for c in 0..dim {
                if !m[k][c].is_zero() {
                    out[i][c] += &vb * &m[k][c];
                }
            }
        }
    }
    out
}

/// Compute N(alpha, beta) for every ordered root index pair with
/// alpha + beta a root, via the extraspecial-pair normalization.
fn structure_constants(system: &RootSystem) -> HashMap<(usize, usize), i64> {
    let npos = system.num_positive;

    // extraspecial pairs: for each composite positive root gamma, the special
    // pair (a, b), a < b positive with a + b = gamma and a minimal
    let mut extraspecial: HashMap<usize, (usize, usize)> = HashMap::new();
    for g in 0..npos {
        let gamma = &system.roots[g];
        for a in 0..npos {
            let diff: Vec<i64> = gamma
                .iter()
                .zip(system.roots[a].iter())
                .map(|(x, y)| x - y)
                .collect();
            if diff.iter().all(|&x| x == 0) {
                continue;
            }
            if let Some(b) = system.root_index(&diff) {
                if b < npos && a < b {
                    extraspecial.insert(g, (a, b));
                    break; // positive roots are scanned in increasing order
                }
            }
        }
    }

    // positive-pair constants, filled by increasing height of the sum
    let mut npos_consts: HashMap<(usize, usize), i64> = HashMap::new();

    // order positive roots by height for the induction
    let mut by_height: Vec<usize> = (0..npos).collect();
    by_height.sort_by_key(|&g| (system.height_of(g), g));

    for &g in &by_height {
        let Some(&(a1, b1)) = extraspecial.get(&g) else {
            continue;
        };
        let p = system.chain_down(&system.roots[a1], &system.roots[b1]);
        npos_consts.insert((a1, b1), p + 1);

        // all other special pairs (a, b) with a + b = gamma
        for a in 0..npos {
            let diff: Vec<i64> = system.roots[g]
                .iter()
                .zip(system.roots[a].iter())
                .map(|(x, y)| x - y)
                .collect();
            let Some(b) = system.root_index(&diff) else {
                continue;
            };
            if b >= npos || a >= b || (a, b) == (a1, b1) {
                continue;
            }
            // Jacobi identity on (X_{-a1}, X_a, X_b):
            // N(a,b) N(g,-a1) = -N(-a1,a) N(a-a1, b) - N(b,-a1) N(b-a1, a)
            let n_g_ma1 = mixed_constant(system, &npos_consts, g, true, a1, false);
            assert!(n_g_ma1 != 0);
            let mut rhs = 0i64;
            let delta: Vec<i64> = system.roots[a]
                .iter()
                .zip(system.roots[a1].iter())
                .map(|(x, y)| x - y)
                .collect();
            if let Some(d) = system.root_index(&delta) {
                let n1 = -mixed_constant(system, &npos_consts, a, true, a1, false);
                let n2 = pos_pair(system, &npos_consts, d, b);
                rhs -= n1 * n2;
            }
            let eta: Vec<i64> = system.roots[b]
                .iter()
                .zip(system.roots[a1].iter())
                .map(|(x, y)| x - y)
                .collect();
            if let Some(e) = system.root_index(&eta) {
                let n1 = mixed_constant(system, &npos_consts, b, true, a1, false);
                let n2 = pos_pair(system, &npos_consts, e, a);
                rhs -= n1 * n2;
            }
            assert_eq!(
                rhs % n_g_ma1,
                0,
                "extraspecial recursion must divide exactly"
            );
            npos_consts.insert((a, b), rhs / n_g_ma1);
        }
    }

    // expand to all signed pairs
    let nroots = system.roots.len();
    let mut all: HashMap<(usize, usize), i64> = HashMap::new();
    for a in 0..nroots {
        for b in 0..nroots {
            if b == system.negate(a) || a == b {
                continue;
            }
            let sum: Vec<i64> = system.roots[a]
                .iter()
                .zip(system.roots[b].iter())
                .map(|(x, y)| x + y)
                .collect();
            if system.root_index(&sum).is_none() {
                continue;
            }
            let n = signed_constant(system, &npos_consts, a, b);
            // |N| = p + 1 sanity, enforced at construction time
            let p = system.chain_down(&system.roots[a], &system.roots[b]);
            assert_eq!(n.abs(), p + 1, "structure constant magnitude must be p+1");
            all.insert((a, b), n);
        }
    }
    all
}

/// Constant for a positive pair in either order.
fn pos_pair(system: &RootSystem, consts: &HashMap<(usize, usize), i64>, a: usize, b: usize) -> i64 {
    debug_assert!(system.is_positive(a) && system.is_positive(b));
    if a < b {
        consts[&(a, b)]
    } else {
        -consts[&(b, a)]
    }
}

/// N(s_a * roots[a], s_b * roots[b]) where s = true means +, false means -,
/// reduced to positive-pair constants through the standard relations.
fn mixed_constant(
    system: &RootSystem,
    consts: &HashMap<(usize, usize), i64>,
    a: usize,
    a_pos: bool,
    b: usize,
    b_pos: bool,
) -> i64 {
    let ra: Vec<i64> = if a_pos {
        system.roots[a].clone()
    } else {
        system.roots[a].iter().map(|x| -x).collect()
    };
    let rb: Vec<i64> = if b_pos {
        system.roots[b].clone()
    } else {
        system.roots[b].iter().map(|x| -x).collect()
    };
    signed_constant_vec(system, consts, &ra, &rb)
}

fn signed_constant(
    system: &RootSystem,
    consts: &HashMap<(usize, usize), i64>,
    a: usize,
    b: usize,
) -> i64 {
    signed_constant_vec(
        system,
        consts,
        &system.roots[a].clone(),
        &system.roots[b].clone(),
    )
}

fn signed_constant_vec(
    system: &RootSystem,
    consts: &HashMap<(usize, usize), i64>,
    ra: &[i64],
    rb: &[i64],
) -> i64 {
    let ha: i64 = ra.iter().sum();
    let hb: i64 = rb.iter().sum();
    let (ia, ib) = (
        system.root_index(ra).expect("root"),
        system.root_index(rb).expect("root"),
    );
    if ha > 0 && hb > 0 {
        let (pa, pb) = (ia, ib);
        return pos_pair(system, consts, pa, pb);
    }
    if ha < 0 && hb < 0 {
        // N(-a', -b') = -N(a', b')
        let na = system.negate(ia);
        let nb = system.negate(ib);
        return -pos_pair(system, consts, na, nb);
    }
    // mixed signs: r + s = t', use the alpha+beta+gamma = 0 relation
    let sum: Vec<i64> = ra.iter().zip(rb.iter()).map(|(x, y)| x + y).collect();
    let hsum: i64 = sum.iter().sum();
    let t: Vec<i64> = sum.iter().map(|x| -x).collect(); // ra + rb + t = 0
    let (r, s) = if ha > 0 { (ra, rb) } else { (rb, ra) };
    let flip = ha < 0; // N(rb, ra) computed, negate at the end
    let n = if hsum > 0 {
        // t negative; (-s, -t) positive pair summing to r
        let ns: Vec<i64> = s.iter().map(|x| -x).collect();
        let nt: Vec<i64> = t.iter().map(|x| -x).collect();
        let is = system.root_index(&ns).expect("root");
        let it = system.root_index(&nt).expect("root");
        let base = pos_pair(system, consts, is, it);
        // N(r, s) = -((t,t)/(r,r)) * N(-s, -t)
        let tt = system.norm2(&t);
        let rr = system.norm2(r);
        let num = -tt * base;
        assert_eq!(num % rr, 0);
        num / rr
    } else {
        // t positive; (r, t) positive pair summing to -s
        let ir = system.root_index(r).expect("root");
        let it = system.root_index(&t).expect("root");
        let base = pos_pair(system, consts, ir, it);
        // N(r, s) = -((t,t)/(s,s)) * N(r, t)
        let tt = system.norm2(&t);
        let ss = system.norm2(s);
        let num = -tt * base;
        assert_eq!(num % ss, 0);
        num / ss
    };
    if flip {
        -n
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::TypeLabel;

    fn algebra(label: TypeLabel) -> ChevalleyAlgebra {
        ChevalleyAlgebra::build(RootSystem::build(label))
    }

    fn basis_elt(alg: &ChevalleyAlgebra, i: usize) -> AdElement {
        let mut v = vec![0i64; alg.dim];
        v[i] = 1;
        AdElement::new(v)
    }

    /// Full unsorted dim^3 Jacobi loop; used on the small types where it is
    /// cheap, to validate the sorted-triple reduction used elsewhere.
    fn jacobi_full(alg: &ChevalleyAlgebra) {
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                for k in 0..alg.dim {
                    let a = basis_elt(alg, i);
                    let b = basis_elt(alg, j);
                    let c = basis_elt(alg, k);
                    let t1 = alg.bracket(&alg.bracket(&a, &b).unwrap(), &c).unwrap();
                    let t2 = alg.bracket(&alg.bracket(&b, &c).unwrap(), &a).unwrap();
                    let t3 = alg.bracket(&alg.bracket(&c, &a).unwrap(), &b).unwrap();
                    let sum: Vec<i64> = t1
                        .coeffs
                        .iter()
                        .zip(&t2.coeffs)
                        .zip(&t3.coeffs)
                        .map(|((x, y), z)| x + y + z)
                        .collect();
                    assert!(sum.iter().all(|&x| x == 0), "Jacobi fails at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn jacobi_small_types_full() {
        for label in [TypeLabel::A1, TypeLabel::A2, TypeLabel::G2] {
            jacobi_full(&algebra(label));
        }
    }

    #[test]
    fn cartan_action_and_defining_relations() {
        let alg = algebra(TypeLabel::A2);
        let rank = alg.rank();
        // [H_1, X_{alpha_1}] = 2 X_{alpha_1}
        let a1 = alg.system.root_index(&[1, 0]).unwrap();
        let h1 = basis_elt(&alg, 0);
        let x1 = basis_elt(&alg, rank + a1);
        let br = alg.bracket(&h1, &x1).unwrap();
        let mut expect = vec![0i64; alg.dim];
        expect[rank + a1] = 2;
        assert_eq!(br.coeffs, expect);
        // [X_{alpha_1}, X_{-alpha_1}] = H_{alpha_1}
        let na1 = alg.system.negate(a1);
        let xm1 = basis_elt(&alg, rank + na1);
        let br2 = alg.bracket(&x1, &xm1).unwrap();
        let mut expect2 = vec![0i64; alg.dim];
        expect2[0] = 1;
        assert_eq!(br2.coeffs, expect2);
    }

    #[test]
    fn g2_has_constant_of_magnitude_three() {
        let alg = algebra(TypeLabel::G2);
        // short-short pair alpha_1, 2 alpha_1 + alpha_2 with chain length 3
        let a = alg.system.root_index(&[1, 0]).unwrap();
        let b = alg.system.root_index(&[2, 1]).unwrap();
        let n = alg.structure_constant(a, b).unwrap();
        assert_eq!(n.abs(), 3);
        let p = alg
            .system
            .chain_down(&alg.system.roots[a], &alg.system.roots[b]);
        assert_eq!(p + 1, 3);
        // maximal |N| over all of G2 is 3
        let max = alg.struct_consts.values().map(|n| n.abs()).max().unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn magnitudes_match_chains_small() {
        for label in [TypeLabel::A2, TypeLabel::G2, TypeLabel::F4] {
            let alg = algebra(label);
            for (&(a, b), &n) in alg.struct_consts.iter() {
                let p = alg
                    .system
                    .chain_down(&alg.system.roots[a], &alg.system.roots[b]);
                assert_eq!(n.abs(), p + 1, "{label}: |N| != p+1");
            }
        }
    }

    #[test]
    fn ad_x_theta_cubed_vanishes() {
        for label in [TypeLabel::A1, TypeLabel::A2, TypeLabel::G2, TypeLabel::F4] {
            let alg = algebra(label);
            assert_eq!(
                alg.ad_nilpotency_index(&alg.x_highest()).unwrap(),
                3,
                "{label}"
            );
        }
    }

    #[test]
    fn principal_nilpotency_index_small() {
        for label in [TypeLabel::A1, TypeLabel::A2, TypeLabel::G2] {
            let alg = algebra(label);
            let h = alg.system.coxeter_number as u32;
            assert_eq!(
                alg.ad_nilpotency_index(&alg.x_principal()).unwrap(),
                2 * h - 1,
                "{label}"
            );
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let alg = algebra(TypeLabel::G2);
        let zero = AdElement::new(vec![0; alg.dim]);
        let m = alg.exp_nilpotent_ad(&zero, 29, 2).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn exp_series_matches_truncated_sum_mod_ell() {
        let alg = algebra(TypeLabel::G2);
        let xt = alg.x_highest();
        let m = alg.exp_nilpotent_ad(&xt, 29, 1).unwrap();
        // 1 + ad + ad^2/2 with series length exactly 3
        let ad = ModMatrix::from_i64(&alg.ad_matrix(&xt), 29);
        let half = inv_mod(2, 29);
        let expect = ModMatrix::identity(alg.dim, 29)
            .add(&ad)
            .add(&ad.mul(&ad).scale(half));
        assert_eq!(m, expect);
    }

    #[test]
    fn exp_rejects_small_primes() {
        let alg = algebra(TypeLabel::G2);
        let err = alg.exp_nilpotent_ad(&alg.x_highest(), 3, 1);
        assert!(matches!(
            err,
            Err(ChevalleyError::PrimeTooSmall { index: 3, .. })
        ));
        // principal X in G2 has index 11, so l = 11 is refused and l = 13 works
        assert!(alg.exp_nilpotent_ad(&alg.x_principal(), 11, 1).is_err());
        assert!(alg.exp_nilpotent_ad(&alg.x_principal(), 13, 1).is_ok());
    }

    #[test]
    fn exp_principal_times_inverse_is_identity() {
        let alg = algebra(TypeLabel::G2);
        let x = alg.x_principal();
        let neg = AdElement::new(x.coeffs.iter().map(|c| -c).collect());
        let a = alg.exp_nilpotent_ad(&x, 29, 2).unwrap();
        let b = alg.exp_nilpotent_ad(&neg, 29, 2).unwrap();
        assert!(a.mul(&b).is_identity());
    }

    #[test]
    fn exp_theta_automorphism_exhaustive_large_types() {
        for label in [TypeLabel::F4, TypeLabel::E6, TypeLabel::E7, TypeLabel::E8] {
            let alg = algebra(label);
            let floor = crate::arith::next_prime_above(4 * alg.system.coxeter_number - 1);
            let m = alg.exp_nilpotent_ad(&alg.x_highest(), floor, 2).unwrap();
            assert!(alg.is_bracket_automorphism(&m, None), "{label}");
        }
    }

    #[test]
    fn exp_is_bracket_automorphism_exhaustive_small() {
        for label in [TypeLabel::A2, TypeLabel::G2] {
            let alg = algebra(label);
            let m = alg.exp_nilpotent_ad(&alg.x_highest(), 29, 2).unwrap();
            assert!(alg.is_bracket_automorphism(&m, None), "{label}");
            let m2 = alg.exp_nilpotent_ad(&alg.x_principal(), 29, 2).unwrap();
            assert!(alg.is_bracket_automorphism(&m2, None), "{label}");
        }
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let alg = algebra(TypeLabel::A1);
        let a = AdElement::new(vec![1, 0, 0]);
        let b = AdElement::new_mod(vec![1, 0, 0], 29);
        assert!(matches!(
            alg.bracket(&a, &b),
            Err(ChevalleyError::ModulusMismatch(..))
        ));
    }

    #[test]
    fn antisymmetry_all_pairs_g2() {
        let alg = algebra(TypeLabel::G2);
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let a = basis_elt(&alg, i);
                let b = basis_elt(&alg, j);
                let ab = alg.bracket(&a, &b).unwrap();
                let ba = alg.bracket(&b, &a).unwrap();
                let sum: Vec<i64> = ab
                    .coeffs
                    .iter()
                    .zip(&ba.coeffs)
                    .map(|(x, y)| x + y)
                    .collect();
                assert!(sum.iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn bracket_dump_is_deterministic() {
        let d1 = algebra(TypeLabel::G2).dump_bracket_table();
        let d2 = algebra(TypeLabel::G2).dump_bracket_table();
        assert_eq!(d1, d2);
        assert!(d1.contains("# chevalley bracket table G2"));
    }

    fn fnv(s: &str) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in s.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }

    #[test]
    fn bracket_tables_are_frozen() {
        // regression fixture for the sign convention: any change to the
        // root order or the extraspecial recursion shows up here
        let expected = [
            (TypeLabel::A2, 0x769f394533f76af8u64, 43usize),
            (TypeLabel::G2, 0xea1f7c6f54ac9657, 113),
            (TypeLabel::F4, 0x4c88d3f257a11e76, 1105),
            (TypeLabel::E6, 0xf2fe2944994f91d3, 2017),
            (TypeLabel::E7, 0x0a3c87abcf3904ce, 5083),
            (TypeLabel::E8, 0xd327dcd1e4639311, 15505),
        ];
        for (label, hash, lines) in expected {
            let dump = algebra(label).dump_bracket_table();
            assert_eq!(dump.lines().count(), lines, "{label}: table size drifted");
            assert_eq!(fnv(&dump), hash, "{label}: structure constants drifted");
        }
    }
}
