//! Exact combinatorial root-system data for the exceptional types
//! (plus A1 and A2 as test scaffolding).
//!
//! Conventions, fixed once and documented here so that every structure
//! constant downstream is reproducible:
//!
//! * Simple roots are numbered in Bourbaki order (Planches I, VII-IX).
//! * Roots are stored as integer coordinate vectors in the simple-root
//!   basis; all arithmetic is exact.
//! * `cartan` is the Bourbaki-printed Cartan matrix, `cartan[i][j] =
//!   <alpha_i, alpha_j^vee>`. The pairing of an arbitrary root `beta`
//!   against the simple coroot `alpha_i^vee` is therefore
//!   `sum_j beta_j * cartan[j][i]`.
//! * The root list is the positive roots sorted by (height, coordinates
//!   lexicographic), followed by their negatives in the same order.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, next_prime_above};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A1,
    A2,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 7] = [
        TypeLabel::A1,
        TypeLabel::A2,
        TypeLabel::G2,
        TypeLabel::F4,
        TypeLabel::E6,
        TypeLabel::E7,
        TypeLabel::E8,
    ];

    pub const EXCEPTIONAL: [TypeLabel; 5] = [
        TypeLabel::G2,
        TypeLabel::F4,
        TypeLabel::E6,
        TypeLabel::E7,
        TypeLabel::E8,
    ];

    pub fn is_exceptional(self) -> bool {
        !matches!(self, TypeLabel::A1 | TypeLabel::A2)
    }

    pub fn rank(self) -> usize {
        match self {
            TypeLabel::A1 => 1,
            TypeLabel::A2 => 2,
            TypeLabel::G2 => 2,
            TypeLabel::F4 => 4,
            TypeLabel::E6 => 6,
            TypeLabel::E7 => 7,
            TypeLabel::E8 => 8,
        }
    }

    /// Bourbaki Cartan matrix, `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        fn simply_laced(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
            let mut c = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                c[i][i] = 2;
            }
            for &(a, b) in edges {
                c[a - 1][b - 1] = -1;
                c[b - 1][a - 1] = -1;
            }
            c
        }
        match self {
            TypeLabel::A1 => vec![vec![2]],
            TypeLabel::A2 => simply_laced(2, &[(1, 2)]),
            // alpha1 short, alpha2 long
            TypeLabel::G2 => vec![vec![2, -1], vec![-3, 2]],
            // alpha1, alpha2 long; alpha3, alpha4 short
            TypeLabel::F4 => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -2, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2],
            ],
            TypeLabel::E6 => simply_laced(6, &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
            TypeLabel::E7 => simply_laced(7, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]),
            TypeLabel::E8 => {
                simply_laced(8, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)])
            }
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for TypeLabel {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(TypeLabel::A1),
            "A2" => Ok(TypeLabel::A2),
            "G2" => Ok(TypeLabel::G2),
            "F4" => Ok(TypeLabel::F4),
            "E6" => Ok(TypeLabel::E6),
            "E7" => Ok(TypeLabel::E7),
            "E8" => Ok(TypeLabel::E8),
            _ => Err(RootDataError::UnsupportedLabel(s.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum RootDataError {
    #[error("unsupported group label {0:?} (supported: A1 A2 G2 F4 E6 E7 E8)")]
    UnsupportedLabel(String),
    #[error("{0} is not an exceptional type")]
    NotExceptional(TypeLabel),
}

/// A reduced irreducible root system with exact integer data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// Bourbaki Cartan matrix: cartan[i][j] = <alpha_i, alpha_j^vee>.
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths (alpha_i, alpha_i)/2, normalized to min 1.
    pub root_length: Vec<i64>,
    /// Positive roots in (height, lex) order, then their negatives.
    pub roots: Vec<Vec<i64>>,
    pub num_positive: usize,
    /// Index into `roots` of the highest root.
    pub highest_root: usize,
    pub coxeter_number: u64,
    pub sc_center_order: u64,
    pub minus_one_in_weyl: bool,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn build(type_label: TypeLabel) -> RootSystem {
        let rank = type_label.rank();
        let cartan = type_label.cartan_matrix();
        let root_length = lengths_from_cartan(&cartan);

        // close the simple roots under simple reflections
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            seen.insert(v.clone(), ());
            queue.push(v);
        }
        while let Some(beta) = queue.pop() {
            for i in 0..rank {
                let c = pairing_raw(&cartan, &beta, i);
                let mut refl = beta.clone();
                refl[i] -= c;
                if !seen.contains_key(&refl) {
                    seen.insert(refl.clone(), ());
                    queue.push(refl);
                }
            }
        }

        let mut positive: Vec<Vec<i64>> = seen.keys().filter(|r| height(r) > 0).cloned().collect();
        positive.sort_by_key(|a| (height(a), a.clone()));
        let num_positive = positive.len();
        assert_eq!(
            seen.len(),
            2 * num_positive,
            "roots must split into +/- halves"
        );

        let mut roots = positive.clone();
        roots.extend(
            positive
                .iter()
                .map(|r| r.iter().map(|x| -x).collect::<Vec<i64>>()),
        );
        let index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        let total = roots.len() as u64;
        assert_eq!(
            total % rank as u64,
            0,
            "|roots| must be divisible by the rank"
        );
        let coxeter_number = total / rank as u64;

        let highest_root = num_positive - 1;
        let max_h = height(&roots[highest_root]);
        assert_eq!(
            positive.iter().filter(|r| height(r) == max_h).count(),
            1,
            "highest root must be unique"
        );
        assert_eq!(max_h as u64, coxeter_number - 1, "ht(theta) = h - 1");

        let sc_center_order = det_i64(&cartan);
        assert!(sc_center_order > 0);

        let minus_one_in_weyl = minus_one_test(&cartan, rank);

        RootSystem {
            type_label,
            rank,
            cartan,
            root_length,
            roots,
            num_positive,
            highest_root,
            coxeter_number,
            sc_center_order: sc_center_order as u64,
            minus_one_in_weyl,
            index,
        }
    }

    pub fn dim_lie_algebra(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }

    /// Index of -roots[i].
    pub fn negate(&self, i: usize) -> usize {
        if i < self.num_positive {
            i + self.num_positive
        } else {
            i - self.num_positive
        }
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive
    }

    pub fn height_of(&self, i: usize) -> i64 {
        height(&self.roots[i])
    }

    /// <beta, alpha_i^vee>.
    pub fn pairing_with_simple_coroot(&self, beta: &[i64], i: usize) -> i64 {
        pairing_raw(&self.cartan, beta, i)
    }

    /// Squared length (beta, beta) in the normalization (short, short) = 2.
    pub fn norm2(&self, beta: &[i64]) -> i64 {
        // (beta, beta) = sum_{i,j} b_i b_j (alpha_i, alpha_j),
        // (alpha_i, alpha_j) = cartan[i][j] * d_j
        let mut acc = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += beta[i] * beta[j] * self.cartan[i][j] * self.root_length[j];
            }
        }
        acc
    }

    /// Coroot beta^vee expressed in the simple-coroot basis.
    pub fn coroot(&self, beta: &[i64]) -> Vec<i64> {
        let n2 = self.norm2(beta);
        (0..self.rank)
            .map(|i| {
                let num = beta[i] * 2 * self.root_length[i];
                assert_eq!(num % n2, 0, "coroot coefficients must be integral");
                num / n2
            })
            .collect()
    }

    /// <beta, gamma^vee> for roots beta, gamma.
    pub fn pairing(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let co = self.coroot(gamma);
        (0..self.rank)
            .map(|i| co[i] * self.pairing_with_simple_coroot(beta, i))
            .sum()
    }

    /// Largest k >= 0 with beta - k*alpha a root (alpha, beta roots, beta != +-alpha).
    pub fn chain_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut k = 0i64;
        loop {
            let cand: Vec<i64> = beta
                .iter()
                .zip(alpha.iter())
                .map(|(b, a)| b - (k + 1) * a)
                .collect();
            if cand.iter().all(|&x| x == 0) || !self.is_root(&cand) {
                return k;
            }
            k += 1;
        }
    }

    /// Smallest prime l with l > 4h - 1.
    pub fn admissible_prime_floor(&self) -> Result<u64, RootDataError> {
        if !self.type_label.is_exceptional() {
            return Err(RootDataError::NotExceptional(self.type_label));
        }
        Ok(next_prime_above(4 * self.coxeter_number - 1))
    }

    /// The image-hypothesis bound: l - 1 must exceed
    /// max(8 #Z, (h-1)#Z for even #Z / (2h-2)#Z for odd #Z).
    pub fn image_hypothesis_bound(&self) -> u64 {
        let z = self.sc_center_order;
        let h = self.coxeter_number;
        let parity = if z % 2 == 0 {
            (h - 1) * z
        } else {
            (2 * h - 2) * z
        };
        (8 * z).max(parity)
    }

    /// Full admissibility of l for the seed construction: prime,
    /// l > 4h - 1, the E8 exclusions, and the image-hypothesis bound.
    pub fn is_admissible(&self, ell: u64) -> Result<bool, RootDataError> {
        if !self.type_label.is_exceptional() {
            return Err(RootDataError::NotExceptional(self.type_label));
        }
        if !is_prime(ell) || ell < 4 * self.coxeter_number {
            return Ok(false);
        }
        if self.type_label == TypeLabel::E8 && matches!(ell, 229 | 269 | 367) {
            return Ok(false);
        }
        Ok(ell - 1 > self.image_hypothesis_bound())
    }

    /// Smallest prime passing `is_admissible`.
    pub fn first_admissible_prime(&self) -> Result<u64, RootDataError> {
        let mut ell = self.admissible_prime_floor()?;
        loop {
            if self.is_admissible(ell)? {
                return Ok(ell);
            }
            ell = next_prime_above(ell);
        }
    }
}

fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

fn pairing_raw(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter()
        .enumerate()
        .map(|(j, &b)| b * cartan[j][i])
        .sum()
}

/// Solve d_j / d_i = cartan[j][i] / cartan[i][j] over the Dynkin graph,
/// normalized to minimum 1. Values land in {1, 2, 3}.
fn lengths_from_cartan(cartan: &[Vec<i64>]) -> Vec<i64> {
    let rank = cartan.len();
    let mut d = vec![0i64; rank];
    d[0] = 6; // scratch unit, divided out below
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..rank {
            if i != j && cartan[i][j] != 0 && d[j] == 0 {
                // cartan[i][j] * d_j = (alpha_i, alpha_j) = cartan[j][i] * d_i
                let num = d[i] * cartan[j][i];
                assert_eq!(num % cartan[i][j], 0);
                d[j] = num / cartan[i][j];
                stack.push(j);
            }
        }
    }
    let min = *d.iter().min().expect("nonempty");
    assert!(min > 0, "disconnected or malformed Cartan matrix");
    d.iter()
        .map(|&x| {
            assert_eq!(x % min, 0);
            x / min
        })
        .collect()
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    // fraction-free Gaussian elimination (Bareiss) on a small copy
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut denom = 1i64;
    let mut sign = 1i64;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / denom;
            }
            a[i][k] = 0;
        }
        denom = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Orbit test for -1 in the Weyl group: take a strictly dominant weight with
/// pairwise distinct fundamental coordinates, run the descent algorithm to
/// its antidominant representative w0(v), and compare with -v. Since the
/// stabilizer of a strictly dominant weight is trivial and its coordinates
/// break every diagram symmetry, w0(v) = -v iff w0 = -id.
fn minus_one_test(cartan: &[Vec<i64>], rank: usize) -> bool {
    // weight in fundamental-weight coordinates: v_i = <v, alpha_i^vee>
    let mut v: Vec<i64> = (1..=rank as i64).collect();
    let target: Vec<i64> = v.iter().map(|x| -x).collect();
    let mut steps = 0usize;
    while let Some(i) = (0..rank).find(|&i| v[i] > 0) {
        // s_i in weight coordinates: v -= v_i * (i-th column of <alpha_i, alpha_j^vee>)_j
        let vi = v[i];
        for j in 0..rank {
            v[j] -= vi * cartan[i][j];
        }
        steps += 1;
        assert!(steps <= 10_000, "descent failed to terminate");
    }
    v == target
}
