//! Dense exact linear algebra over Z/m and prime fields.
//!
//! Matrices are row-major `Vec<u64>` with entries reduced modulo `m`.
//! Moduli are capped at 2^26 so a dot product of length <= 256 cannot
//! overflow u64 (2^52 * 2^8 = 2^60).

use crate::arith::inv_mod;

const MAX_MODULUS: u64 = 1 << 26;

/// Dense square matrix over Z/m.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub modulus: u64,
    pub dim: usize,
    pub a: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(dim: usize, modulus: u64) -> Self {
        assert!(modulus > 1 && modulus < MAX_MODULUS, "modulus out of range");
        ModMatrix {
            modulus,
            dim,
            a: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(dim, modulus);
        for i in 0..dim {
            m.a[i * dim + i] = 1 % modulus;
        }
        m
    }

    /// Reduce a signed integer matrix (row-major) mod m.
    pub fn from_i64(rows: &[Vec<i64>], modulus: u64) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, &v) in row.iter().enumerate() {
                m.a[i * dim + j] = v.rem_euclid(modulus as i64) as u64;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.dim + j] = v % self.modulus;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim, self.modulus)
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let m = self.modulus;
        assert!(
            n <= 256,
            "dot products of length > 256 would overflow the accumulator"
        );
        let mut out = ModMatrix::zeros(n, m);
        for i in 0..n {
            let arow = &self.a[i * n..(i + 1) * n];
            let orow = &mut out.a[i * n..(i + 1) * n];
            for (k, &aik) in arow.iter().enumerate() {
                if aik == 0 {
                    continue;
                }
                let brow = &other.a[k * n..(k + 1) * n];
                for j in 0..n {
                    // entries < 2^26, products < 2^52, and at most 2^8 adds:
                    // the raw accumulation stays below 2^60
                    orow[j] += aik * brow[j];
                }
            }
            for x in orow.iter_mut() {
                *x %= m;
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> ModMatrix {
        let mut acc = ModMatrix::identity(self.dim, self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x = (*x + *y) % self.modulus;
        }
        out
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        let c = c % self.modulus;
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = *x * c % self.modulus;
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let n = self.dim;
        let m = self.modulus;
        let mut out = vec![0u64; n];
        for i in 0..n {
            let mut acc = 0u64;
            for j in 0..n {
                acc = (acc + self.a[i * n + j] * (v[j] % m)) % m;
            }
            out[i] = acc;
        }
        out
    }

    /// Reduce entries into a smaller modulus (which must divide self.modulus).
    pub fn reduce_modulus(&self, m2: u64) -> ModMatrix {
        assert!(self.modulus % m2 == 0);
        let mut out = ModMatrix::zeros(self.dim, m2);
        for (o, &x) in out.a.iter_mut().zip(self.a.iter()) {
            *o = x % m2;
        }
        out
    }

    /// Inverse over Z/l^n by Gaussian elimination with unit pivots.
    /// Works whenever the reduction mod l is invertible. Returns None if a
    /// unit pivot cannot be found (matrix singular mod l).
    pub fn inverse(&self, ell: u64) -> Option<ModMatrix> {
        let n = self.dim;
        let m = self.modulus;
        let mut a = self.clone();
        let mut inv = ModMatrix::identity(n, m);
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col) % ell != 0)?;
            if piv != col {
                for j in 0..n {
                    a.a.swap(col * n + j, piv * n + j);
                    inv.a.swap(col * n + j, piv * n + j);
                }
            }
            let pinv = inv_mod(a.get(col, col), m);
            for j in 0..n {
                a.a[col * n + j] = a.a[col * n + j] * pinv % m;
                inv.a[col * n + j] = inv.a[col * n + j] * pinv % m;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let s = a.a[col * n + j] * f % m;
                    a.a[r * n + j] = (a.a[r * n + j] + m - s) % m;
                    let s2 = inv.a[col * n + j] * f % m;
                    inv.a[r * n + j] = (inv.a[r * n + j] + m - s2) % m;
                }
            }
        }
        Some(inv)
    }
}

impl std::fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "ModMatrix {}x{} mod {}",
            self.dim, self.dim, self.modulus
        )?;
        for i in 0..self.dim.min(12) {
            writeln!(f, "  {:?}", &self.a[i * self.dim..(i + 1) * self.dim])?;
        }
        Ok(())
    }
}

/// Row-reduce `rows` (each of length `ncols`) over the prime field F_p,
/// in place; returns the rank. The slice is left in row echelon form.
pub fn row_reduce(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> usize {
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let pinv = inv_mod(rows[rank][col] % p, p);
        for x in rows[rank].iter_mut() {
            *x = *x * pinv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let f = rows[r][col] % p;
                for j in 0..ncols {
                    let s = rows[rank][j] * f % p;
                    rows[r][j] = (rows[r][j] + p - s) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over F_p of a list of row vectors.
pub fn rank(rows: &[Vec<u64>], ncols: usize, p: u64) -> usize {
    let mut work: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    row_reduce(&mut work, ncols, p)
}

/// Basis of the right kernel {x : M x = 0} over F_p, for M given as rows.
pub fn kernel_basis(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let rank = row_reduce(&mut work, ncols, p);
    work.truncate(rank);
    // locate pivot columns
    let mut pivots = Vec::with_capacity(rank);
    for row in &work {
        let col = row
            .iter()
            .position(|&x| x != 0)
            .expect("zero row above rank");
        pivots.push(col);
    }
    let mut basis = Vec::new();
    let is_pivot = |c: usize| pivots.contains(&c);
    for free in 0..ncols {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot entry is 1 after reduction
            let coeff = work[r][free];
            v[pc] = (p - coeff) % p;
        }
        basis.push(v);
    }
    basis
}

/// Is `v` in the row span of `basis` over F_p?
pub fn in_span(basis: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let n = v.len();
    let r0 = rank(basis, n, p);
    let mut aug: Vec<Vec<u64>> = basis.to_vec();
    aug.push(v.to_vec());
    rank(&aug, n, p) == r0
}

/// Annihilator of span(basis) under the bilinear pairing x^T P y between
/// F_p^n and F_p^m: returns a basis of {y : b P y = 0 for all b in basis}.
pub fn annihilator(basis: &[Vec<u64>], pairing: &[Vec<u64>], m: usize, p: u64) -> Vec<Vec<u64>> {
    // rows of the system: for each b, the functional y -> sum_j (b P)_j y_j
    let rows: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..m)
                .map(|j| {
                    let mut acc = 0u64;
                    for (i, &bi) in b.iter().enumerate() {
                        acc = (acc + bi % p * (pairing[i][j] % p)) % p;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    kernel_basis(&rows, m, p)
}
