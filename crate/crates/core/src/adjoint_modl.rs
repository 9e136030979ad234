//! Arithmetic in the adjoint group image inside Aut(g) over Z/l^n: torus
//! elements, element orders, the unipotent-order congruences behind the
//! no-section lemmas, and the (REG) surjectivity of 1 - Ad(gamma) for a
//! regular unipotent gamma.
//!
//! Group elements are represented purely by their adjoint matrices; the
//! representation is faithful since the group is adjoint.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{AdElement, ChevalleyAlgebra, ChevalleyError};
use crate::linalg::{kernel_basis, rank, ModMatrix};

#[derive(Debug, Error)]
pub enum AdjointError {
    #[error("t = {0} is not a unit mod {1}")]
    NonUnit(u64, u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

/// An element of the adjoint group over Z/l^n, carried by its matrix on g
/// together with a provenance tag.
#[derive(Debug, Clone)]
pub struct GroupElementModLn {
    pub matrix: ModMatrix,
    pub provenance: String,
}

/// Result of `element_order` under a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Order(u64),
    ExceedsCap,
}

/// Diagonal torus element: acts on X_beta by t^{<beta, cochar>} and trivially
/// on the Cartan subalgebra. The cocharacter is given by its coefficients in
/// the simple-coroot basis.
pub fn torus_element(
    alg: &ChevalleyAlgebra,
    cocharacter: &[i64],
    t: u64,
    modulus: u64,
) -> Result<GroupElementModLn, AdjointError> {
    let ell = smallest_prime_factor(modulus);
    if t % ell == 0 {
        return Err(AdjointError::NonUnit(t, modulus));
    }
    let t = t % modulus;
    let tinv = crate::arith::inv_mod(t, modulus);
    let mut m = ModMatrix::identity(alg.dim, modulus);
    for (r, beta) in alg.system.roots.iter().enumerate() {
        let pairing: i64 = cocharacter
            .iter()
            .enumerate()
            .map(|(i, &c)| c * alg.system.pairing_with_simple_coroot(beta, i))
            .sum();
        let val = if pairing >= 0 {
            crate::arith::pow_mod(t, pairing as u64, modulus)
        } else {
            crate::arith::pow_mod(tinv, (-pairing) as u64, modulus)
        };
        let b = alg.root_basis_index(r);
        m.set(b, b, val);
    }
    Ok(GroupElementModLn {
        matrix: m,
        provenance: format!("cochar{cocharacter:?}({t})"),
    })
}

fn smallest_prime_factor(m: u64) -> u64 {
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 1;
    }
    m
}

/// Exact multiplicative order by iterated multiplication, up to `cap`.
pub fn element_order(g: &GroupElementModLn, cap: u64) -> OrderResult {
    let mut p = g.matrix.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return OrderResult::Order(k);
        }
        p = p.mul(&g.matrix);
    }
    OrderResult::ExceedsCap
}

/// Which regular nilpotent drives the no-section congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NoSectionVariant {
    /// u lifts exp(X_theta); requires l > 5.
    HighestRoot,
    /// u lifts exp(X) for the principal X; requires l > 4h - 3.
    PrincipalX,
}

#[derive(Debug, Clone, Serialize)]
pub struct NoSectionReport {
    pub variant: NoSectionVariant,
    pub ell: u64,
    pub n: u32,
    pub trials: u32,
    pub passes: u32,
    /// Trial indices whose congruence failed (empty on success), with the
    /// perturbation that witnessed the failure.
    pub failures: Vec<NoSectionFailure>,
    /// For every trial, the order check confirmed Ad(u)^{l^n} != 1, so no
    /// lift can have order l^n.
    pub order_obstruction_confirmed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NoSectionFailure {
    pub trial: u32,
    pub perturbation: Vec<i64>,
}

impl NoSectionReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passes == self.trials
    }
}

/// Verify, over `trials` random lifts u = exp(l^n ad R) exp(ad X) of exp(ad X)
/// to Z/l^{n+1}, the displayed congruence
///
///   Ad(u)^{l^n} = 1 + l^n ad(X)   (mod l^{n+1})
///
/// for X = X_theta (l > 5) or the principal X (l > 4h - 3); in both cases
/// the right side differs from the identity, which is the order obstruction.
pub fn verify_no_section_expansion(
    alg: &ChevalleyAlgebra,
    ell: u64,
    n: u32,
    trials: u32,
    variant: NoSectionVariant,
    seed: u64,
) -> Result<NoSectionReport, AdjointError> {
    let h = alg.system.coxeter_number;
    match variant {
        NoSectionVariant::HighestRoot => {
            if ell <= 5 {
                return Err(AdjointError::Precondition(format!(
                    "highest-root variant needs l > 5, got l = {ell}"
                )));
            }
        }
        NoSectionVariant::PrincipalX => {
            if ell <= 4 * h - 3 {
                return Err(AdjointError::Precondition(format!(
                    "principal variant needs l > 4h - 3 = {}, got l = {ell}",
                    4 * h - 3
                )));
            }
        }
    }
    let x = match variant {
        NoSectionVariant::HighestRoot => alg.x_highest(),
        NoSectionVariant::PrincipalX => alg.x_principal(),
    };
    let modulus = ell.pow(n + 1);
    let exp_x = alg.exp_nilpotent_ad(&x, ell, n + 1)?;

    // expected: 1 + l^n ad(X) mod l^{n+1}; nonzero since ad(X) != 0 mod l
    let ad_x = ModMatrix::from_i64(&alg.ad_matrix(&x), modulus);
    let expected = ModMatrix::identity(alg.dim, modulus).add(&ad_x.scale(ell.pow(n)));
    assert!(
        !expected.is_identity(),
        "1 + l^n ad(X) must differ from the identity"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut passes = 0u32;
    let mut order_ok = true;
    for trial in 0..trials {
        let r: Vec<i64> = (0..alg.dim).map(|_| rng.gen_range(0..ell as i64)).collect();
        // exp(l^n ad R) = 1 + l^n ad(R) mod l^{n+1}, a bracket automorphism
        let ad_r = ModMatrix::from_i64(&alg.ad_matrix(&AdElement::new(r.clone())), modulus);
        let pert = ModMatrix::identity(alg.dim, modulus).add(&ad_r.scale(ell.pow(n)));
        let u = pert.mul(&exp_x);
        let power = u.pow(ell.pow(n));
        if power == expected {
            passes += 1;
        } else {
            failures.push(NoSectionFailure {
                trial,
                perturbation: r,
            });
        }
        if power.is_identity() {
            order_ok = false;
        }
    }
    Ok(NoSectionReport {
        variant,
        ell,
        n,
        trials,
        passes,
        failures,
        order_obstruction_confirmed: order_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RegReport {
    pub ell: u64,
    /// rank of (1 - Ad(gamma)) restricted to the Borel subalgebra.
    pub image_dimension: usize,
    /// dim ker(1 - Ad(gamma)) on all of g.
    pub kernel_dimension: usize,
    pub image_equals_nilradical: bool,
    pub kernel_inside_nilradical: bool,
}

impl RegReport {
    pub fn passed(&self, sys: &crate::root_data::RootSystem) -> bool {
        self.image_dimension == sys.num_positive
            && self.kernel_dimension == sys.rank
            && self.image_equals_nilradical
            && self.kernel_inside_nilradical
    }
}

/// The (REG) condition: gamma a regular unipotent over F_l, then
/// 1 - Ad(gamma) maps the Borel subalgebra onto the nilpotent radical, and
/// its kernel on all of g has dimension rank and lies inside the radical.
///
/// gamma is exp(ad X) for the principal X when the divided powers exist
/// (l >= 2h - 1, which covers every prime this artifact uses); in the
/// remaining window h < l < 2h - 1 it is the product of the simple-root
/// exponentials, an equally regular unipotent that is integral for every l.
pub fn verify_reg_surjectivity(
    alg: &ChevalleyAlgebra,
    ell: u64,
) -> Result<RegReport, AdjointError> {
    let h = alg.system.coxeter_number;
    if ell <= h {
        return Err(AdjointError::Precondition(format!(
            "(REG) requires l > h = {h}, got l = {ell}"
        )));
    }
    let gamma = if ell >= 2 * h - 1 {
        alg.exp_nilpotent_ad(&alg.x_principal(), ell, 1)?
    } else {
        let mut m = ModMatrix::identity(alg.dim, ell);
        for i in 0..alg.rank() {
            let mut v = vec![0i64; alg.dim];
            let mut simple = vec![0i64; alg.rank()];
            simple[i] = 1;
            let r = alg.system.root_index(&simple).expect("simple root");
            v[alg.root_basis_index(r)] = 1;
            m = m.mul(&alg.exp_nilpotent_ad(&AdElement::new(v), ell, 1)?);
        }
        m
    };

    let dim = alg.dim;
    let rank_g = alg.rank();
    let npos = alg.system.num_positive;
    // 1 - Ad(gamma)
    let mut one_minus = ModMatrix::identity(dim, ell);
    for i in 0..dim {
        for j in 0..dim {
            let v = (ell + one_minus.get(i, j) - gamma.get(i, j) % ell) % ell;
            one_minus.set(i, j, v);
        }
    }

    // Borel basis: H_1..H_rank and positive root vectors
    let borel: Vec<usize> = (0..rank_g).chain((0..npos).map(|r| rank_g + r)).collect();
    let nilrad_coord = |i: usize| i >= rank_g && i < rank_g + npos;

    // columns (1 - Ad gamma) e_b for b in the Borel; check they lie in n
    let mut image_in_n = true;
    let mut image_rows: Vec<Vec<u64>> = Vec::new();
    for &b in &borel {
        let col: Vec<u64> = (0..dim).map(|i| one_minus.get(i, b)).collect();
        if col
            .iter()
            .enumerate()
            .any(|(i, &v)| v != 0 && !nilrad_coord(i))
        {
            image_in_n = false;
        }
        image_rows.push((rank_g..rank_g + npos).map(|i| col[i]).collect());
    }
    let image_dimension = rank(&image_rows, npos, ell);

    // kernel on all of g
    let rows: Vec<Vec<u64>> = (0..dim)
        .map(|i| (0..dim).map(|j| one_minus.get(i, j)).collect())
        .collect();
    let kern = kernel_basis(&rows, dim, ell);
    let kernel_dimension = kern.len();
    let kernel_inside_nilradical = kern.iter().all(|v| {
        v.iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || nilrad_coord(i))
    });

    Ok(RegReport {
        ell,
        image_dimension,
        kernel_dimension,
        image_equals_nilradical: image_in_n && image_dimension == npos,
        kernel_inside_nilradical,
    })
}
