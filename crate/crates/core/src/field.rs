//! Prime-field arithmetic, seeded randomness, and dense matrices over the
//! field.
//!
//! Elements of Z/pZ are plain `u64` values kept reduced in `[0, p)`; all
//! arithmetic goes through a [`Zp`] context so the reduction invariant is
//! maintained by construction. Products are formed in `u128`, which covers
//! any modulus below 2^63 without further tricks.

use crate::{Error, Result};
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

/// An element of Z/pZ, always reduced modulo the ambient [`Zp`].
pub type Fe = u64;

/// Arithmetic context for Z/pZ with p an odd prime below 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    /// Builds the field context, checking primality (deterministic
    /// Miller-Rabin over the usual witness set, exact for u64).
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || p >= (1 << 63) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Zp { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// Reduces an arbitrary u64 into the field.
    #[inline]
    pub fn reduce(&self, a: u64) -> Fe {
        a % self.p
    }

    /// Reduces a signed integer into the field.
    #[inline]
    pub fn reduce_i64(&self, a: i64) -> Fe {
        let r = a.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn pow(&self, mut base: Fe, mut exp: u64) -> Fe {
        let mut acc: Fe = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        // Extended Euclid on (p, a); p prime makes every nonzero a invertible.
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    /// Inverse of a known-nonzero element.
    #[inline]
    pub(crate) fn inv_nz(&self, a: Fe) -> Fe {
        debug_assert_ne!(a, 0);
        self.inv(a).expect("nonzero element")
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    // Deterministic for all u64 with this witness set.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic seeded random stream.
///
/// A fixed seed yields a fixed stream; [`Rng::fork`] derives an independent
/// child stream so that concurrent or per-index consumers never share state.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha12Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            seed,
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives an independent deterministic child stream. Draws one value
    /// from this stream, so successive forks (and forks from different
    /// states) are independent.
    pub fn fork(&mut self, stream: u64) -> Self {
        let fresh = self.next_u64();
        Rng::new(splitmix64(
            fresh ^ splitmix64(stream.wrapping_add(0x9E37_79B9_7F4A_7C15)),
        ))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform value in `[0, bound)`, rejection-sampled to avoid modulo bias.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // 2^64 mod bound; accepting x >= threshold makes x % bound uniform.
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Uniform field element.
    pub fn field_element(&mut self, zp: &Zp) -> Fe {
        self.below(zp.p())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Samples `delta` pairwise-distinct elements of `{0, .., s_size-1}`,
/// uniformly among all ordered delta-tuples (hence uniform as a subset).
///
/// Sparse Fisher-Yates: only the touched positions of the virtual array are
/// stored, so `s_size` may be much larger than `delta`.
pub fn sample_distinct_subset(s_size: u64, delta: usize, rng: &mut Rng) -> Result<Vec<Fe>> {
    if (delta as u64) > s_size {
        return Err(Error::TooFewPoints {
            requested: delta as u64,
            available: s_size,
        });
    }
    let mut moved: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
    let mut out = Vec::with_capacity(delta);
    for i in 0..delta as u64 {
        let j = i + rng.below(s_size - i);
        let vj = *moved.get(&j).unwrap_or(&j);
        let vi = *moved.get(&i).unwrap_or(&i);
        moved.insert(j, vi);
        out.push(vj);
    }
    Ok(out)
}

/// Dense matrix over the field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstMat {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl ConstMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ConstMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ConstMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ConstMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> ConstMat {
        let mut t = ConstMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, zp: &Zp, other: &ConstMat) -> Result<ConstMat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("matrix product"));
        }
        let mut out = ConstMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = zp.add(out[(i, j)], zp.mul(a, other[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, zp: &Zp, other: &ConstMat) -> Result<ConstMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix difference"));
        }
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = zp.sub(*x, y);
        }
        Ok(out)
    }

    pub fn random(rows: usize, cols: usize, zp: &Zp, rng: &mut Rng) -> ConstMat {
        let mut m = ConstMat::zero(rows, cols);
        for x in m.data.iter_mut() {
            *x = rng.field_element(zp);
        }
        m
    }

    pub fn rank(&self, zp: &Zp) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&i| a[(i, col)] != 0) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            let inv = zp.inv_nz(a[(rank, col)]);
            for i in 0..a.rows {
                if i != rank && a[(i, col)] != 0 {
                    let f = zp.mul(a[(i, col)], inv);
                    for j in col..a.cols {
                        let s = zp.mul(f, a[(rank, j)]);
                        a[(i, j)] = zp.sub(a[(i, j)], s);
                    }
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, zp: &Zp) -> Fe {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det: Fe = 1;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| a[(i, col)] != 0) else {
                return 0;
            };
            if p != col {
                det = zp.neg(det);
                a.swap_rows(col, p);
            }
            det = zp.mul(det, a[(col, col)]);
            let inv = zp.inv_nz(a[(col, col)]);
            for i in col + 1..n {
                if a[(i, col)] != 0 {
                    let f = zp.mul(a[(i, col)], inv);
                    for j in col..n {
                        let s = zp.mul(f, a[(col, j)]);
                        a[(i, j)] = zp.sub(a[(i, j)], s);
                    }
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self, zp: &Zp) -> Option<ConstMat> {
        assert_eq!(self.rows, self.cols, "inverse of a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = ConstMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| a[(i, col)] != 0)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let f = zp.inv_nz(a[(col, col)]);
            for j in 0..n {
                a[(col, j)] = zp.mul(a[(col, j)], f);
                inv[(col, j)] = zp.mul(inv[(col, j)], f);
            }
            for i in 0..n {
                if i != col && a[(i, col)] != 0 {
                    let f = a[(i, col)];
                    for j in 0..n {
                        let s = zp.mul(f, a[(col, j)]);
                        a[(i, j)] = zp.sub(a[(i, j)], s);
                        let s = zp.mul(f, inv[(col, j)]);
                        inv[(i, j)] = zp.sub(inv[(i, j)], s);
                    }
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for ConstMat {
    type Output = Fe;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ConstMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}
