//! Exact computational algebra for exceptional Lie data and seed elliptic curves.
//!
//! The crate builds, for each exceptional simply-connected type, the
//! combinatorial root system and the integral Chevalley algebra, decomposes
//! the adjoint representation under the principal sl2, verifies the mod-l^n
//! unipotent-order and regularity lemmas that the lifting machinery consumes,
//! forges seed elliptic curves over Q with prescribed local behavior at
//! (l, p0, p1), and replays the auxiliary-prime Selmer dimension chases on a
//! synthetic finite-dimensional model.
//!
//! All arithmetic is exact: integer vectors for roots, machine integers with
//! overflow checks for structure constants, arbitrary-precision integers for
//! Weierstrass invariants and nilpotent matrix powers, and dense modular
//! matrices over Z/l^n.

#![allow(clippy::manual_is_multiple_of, clippy::needless_range_loop)]

pub mod adjoint_modl;
pub mod arith;
pub mod chevalley;
pub mod curve_forge;
pub mod linalg;
pub mod principal_sl2;
pub mod root_data;
pub mod selmer_ledger;
pub mod verify;

pub use chevalley::{AdElement, ChevalleyAlgebra};
pub use curve_forge::{SeedCertificate, WeierstrassEquation};
pub use principal_sl2::{PrincipalTriple, StringDecomposition};
pub use root_data::{RootSystem, TypeLabel};
