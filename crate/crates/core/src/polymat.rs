//! Matrices over K\[x\]: shifted degrees, reduced/Popov/Hermite forms, a
//! dense Hermite-normal-form routine with unimodular transform, and bases
//! of relation modules R(mu, F) = { p : p F = 0 mod mu }.
//!
//! The HNF convention is row-wise and lower triangular: monic diagonal,
//! and every entry below the diagonal has degree less than the diagonal
//! entry of its column. Shifted degrees use `Option<i64>` with `None` as
//! the minus-infinity sentinel (`None` orders below every finite value).

use crate::field::{ConstMat, Fe, Rng, Zp};
use crate::poly::{self, Poly};
use crate::{Error, Result};

/// Shifted degree value; `None` is minus infinity.
pub type SDeg = Option<i64>;

/// Dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMat {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Poly::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<Poly>) -> Self {
        let n = entries.len();
        let mut m = PolyMat::zero(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            *m.at_mut(i, i) = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMat {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest entry degree; `None` for the zero matrix.
    pub fn max_deg(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::deg).max()
    }

    pub fn transpose(&self) -> PolyMat {
        let mut t = PolyMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, zp: &Zp, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("matrix product"));
        }
        let mut out = PolyMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a.mul(zp, other.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(zp, &term);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, zp: &Zp, other: &PolyMat) -> Result<PolyMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix difference"));
        }
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x = x.sub(zp, y);
        }
        Ok(out)
    }

    /// Entrywise remainder modulo `m`.
    pub fn map_rem(&self, zp: &Zp, m: &Poly) -> Result<PolyMat> {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.rem(zp, m)?;
        }
        Ok(out)
    }

    /// Entrywise evaluation at a point.
    pub fn eval_at(&self, zp: &Zp, a: Fe) -> ConstMat {
        let mut out = ConstMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.at(i, j).eval(zp, a);
            }
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> PolyMat {
        let mut out = PolyMat::zero(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                *out.at_mut(i, j) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vertical stack"));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(PolyMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn random(zp: &Zp, rows: usize, cols: usize, len: usize, rng: &mut Rng) -> PolyMat {
        let mut m = PolyMat::zero(rows, cols);
        for e in m.entries.iter_mut() {
            *e = Poly::random(zp, len, rng);
        }
        m
    }

    /// Text form: first line `rows cols`, then one entry per line as an
    /// ascending coefficient list, row-major.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for e in &self.entries {
            out.push_str(&e.to_text());
            out.push('\n');
        }
        out
    }

    pub fn from_text(zp: &Zp, s: &str) -> Result<PolyMat> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad dimension {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse("matrix header must be `rows cols`".into()));
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("matrix file ended early".into()))?;
            entries.push(Poly::from_text(zp, line)?);
        }
        Ok(PolyMat {
            rows,
            cols,
            entries,
        })
    }
}

/// Strictly increasing indices in `[0, n)`, selecting rows or columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexTuple {
    indices: Vec<usize>,
}

impl IndexTuple {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty()
            || indices.windows(2).any(|w| w[0] >= w[1])
            || *indices.last().unwrap() >= n
        {
            return Err(Error::BadIndexTuple);
        }
        Ok(IndexTuple { indices })
    }

    /// The tuple `(0, 1, .., m-1)`.
    pub fn leading(m: usize, n: usize) -> Result<Self> {
        IndexTuple::new((0..m).collect(), n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// s-row degrees: entry i is `max_j (deg M_ij + s_j)`.
pub fn shifted_row_degree(m: &PolyMat, s: &[i64]) -> Result<Vec<SDeg>> {
    if s.len() != m.cols() {
        return Err(Error::ShapeMismatch("shift length"));
    }
    Ok((0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter_map(|j| m.at(i, j).deg().map(|d| d as i64 + s[j]))
                .max()
        })
        .collect())
}

/// s-leading matrix: entry (i, j) is the coefficient of degree `t_i - s_j`
/// of M_ij, taken as 0 when `t_i` is minus infinity.
pub fn leading_matrix(zp: &Zp, m: &PolyMat, s: &[i64]) -> Result<ConstMat> {
    let _ = zp;
    let t = shifted_row_degree(m, s)?;
    let mut out = ConstMat::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        let Some(ti) = t[i] else { continue };
        for j in 0..m.cols() {
            let want = ti - s[j];
            if want >= 0 {
                out[(i, j)] = m.at(i, j).coeff(want as usize);
            }
        }
    }
    Ok(out)
}

/// s-reduced: the s-leading matrix is invertible.
pub fn is_reduced(zp: &Zp, m: &PolyMat, s: &[i64]) -> Result<bool> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch("reducedness of a square matrix"));
    }
    let lm = leading_matrix(zp, m, s)?;
    Ok(lm.rank(zp) == m.rows())
}

/// s-weak Popov: the s-leading matrix is invertible and lower triangular.
pub fn is_weak_popov(zp: &Zp, m: &PolyMat, s: &[i64]) -> Result<bool> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch("weak Popov form of a square matrix"));
    }
    let lm = leading_matrix(zp, m, s)?;
    for i in 0..m.rows() {
        if lm[(i, i)] == 0 {
            return Ok(false);
        }
        for j in i + 1..m.cols() {
            if lm[(i, j)] != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// s-Popov: s-weak Popov with monic diagonal and every off-diagonal entry
/// of degree less than the diagonal entry of its column.
pub fn is_popov(zp: &Zp, m: &PolyMat, s: &[i64]) -> Result<bool> {
    if !is_weak_popov(zp, m, s)? {
        return Ok(false);
    }
    for j in 0..m.cols() {
        if !m.at(j, j).is_monic() {
            return Ok(false);
        }
        for i in 0..m.rows() {
            if i != j && m.at(i, j).deg() >= m.at(j, j).deg() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hermite normal form: lower triangular, monic diagonal, entries below
/// the diagonal reduced against the diagonal entry of their column.
pub fn is_hnf(m: &PolyMat) -> Result<bool> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch("HNF of a square matrix"));
    }
    for j in 0..m.cols() {
        if !m.at(j, j).is_monic() {
            return Ok(false);
        }
        for i in 0..m.rows() {
            if i < j && !m.at(i, j).is_zero() {
                return Ok(false);
            }
            if i > j && m.at(i, j).deg() >= m.at(j, j).deg() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Elementary row operations applied jointly to the working matrix, the
/// transform u (u * input = e), and optionally the inverse transform w
/// (w = u^{-1}).
struct RowOps {
    e: PolyMat,
    u: Option<PolyMat>,
    w: Option<PolyMat>,
}

impl RowOps {
    fn new(a: &PolyMat, track_u: bool, track_w: bool) -> Self {
        RowOps {
            e: a.clone(),
            u: track_u.then(|| PolyMat::identity(a.rows())),
            w: track_w.then(|| PolyMat::identity(a.rows())),
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [Some(&mut self.e), self.u.as_mut(), None]
            .into_iter()
            .flatten()
        {
            for c in 0..m.cols {
                m.entries.swap(i * m.cols + c, j * m.cols + c);
            }
        }
        if let Some(w) = self.w.as_mut() {
            for r in 0..w.rows {
                w.entries.swap(r * w.cols + i, r * w.cols + j);
            }
        }
    }

    /// Unimodular 2x2 combination built from the xgcd of the entries at
    /// `col`: afterwards `e[p][col]` holds their gcd and `e[q][col]` is 0.
    fn combine(&mut self, zp: &Zp, p: usize, q: usize, col: usize) -> Result<()> {
        let a = self.e.at(p, col).clone();
        let b = self.e.at(q, col).clone();
        debug_assert!(!a.is_zero());
        if b.is_zero() {
            return Ok(());
        }
        let (g, uu, vv) = poly::xgcd(zp, &a, &b)?;
        let gamma = b.div_exact(zp, &g)?.neg(zp);
        let delta = a.div_exact(zp, &g)?;
        // rows: [p; q] <- [[uu, vv]; [gamma, delta]] * [p; q], det = 1
        for m in [Some(&mut self.e), self.u.as_mut(), None]
            .into_iter()
            .flatten()
        {
            for c in 0..m.cols {
                let rp = m.at(p, c).clone();
                let rq = m.at(q, c).clone();
                *m.at_mut(p, c) = uu.mul(zp, &rp).add(zp, &vv.mul(zp, &rq));
                *m.at_mut(q, c) = gamma.mul(zp, &rp).add(zp, &delta.mul(zp, &rq));
            }
        }
        if let Some(w) = self.w.as_mut() {
            // w <- w * T^{-1}, T^{-1} = [[delta, -vv]; [-gamma, uu]]
            for r in 0..w.rows {
                let cp = w.at(r, p).clone();
                let cq = w.at(r, q).clone();
                *w.at_mut(r, p) = delta.mul(zp, &cp).sub(zp, &gamma.mul(zp, &cq));
                *w.at_mut(r, q) = uu.mul(zp, &cq).sub(zp, &vv.mul(zp, &cp));
            }
        }
        Ok(())
    }

    /// row_i -= q * row_j
    fn axpy(&mut self, zp: &Zp, i: usize, j: usize, q: &Poly) {
        if q.is_zero() {
            return;
        }
        for m in [Some(&mut self.e), self.u.as_mut(), None]
            .into_iter()
            .flatten()
        {
            for c in 0..m.cols {
                let t = q.mul(zp, m.at(j, c));
                *m.at_mut(i, c) = m.at(i, c).sub(zp, &t);
            }
        }
        if let Some(w) = self.w.as_mut() {
            for r in 0..w.rows {
                let t = q.mul(zp, w.at(r, i));
                *w.at_mut(r, j) = w.at(r, j).add(zp, &t);
            }
        }
    }

    /// row_i *= c (c nonzero)
    fn scale(&mut self, zp: &Zp, i: usize, c: Fe) {
        if c == 1 {
            return;
        }
        for m in [Some(&mut self.e), self.u.as_mut(), None]
            .into_iter()
            .flatten()
        {
            for col in 0..m.cols {
                *m.at_mut(i, col) = m.at(i, col).scale(zp, c);
            }
        }
        if let Some(w) = self.w.as_mut() {
            let cinv = zp.inv_nz(c);
            for r in 0..w.rows {
                *w.at_mut(r, i) = w.at(r, i).scale(zp, cinv);
            }
        }
    }
}

/// Lower staircase echelon form by unimodular row operations: columns are
/// processed right to left, pivots fill rows from the bottom, and the
/// untouched rows at the top end up zero. Returns the reduced matrix, the
/// transforms requested, and the rank.
fn echelon_lower(
    zp: &Zp,
    a: &PolyMat,
    track_u: bool,
    track_w: bool,
) -> Result<(PolyMat, Option<PolyMat>, Option<PolyMat>, usize)> {
    let mut ops = RowOps::new(a, track_u, track_w);
    let rows = a.rows();
    let mut next = rows as isize - 1;
    for col in (0..a.cols()).rev() {
        if next < 0 {
            break;
        }
        let limit = next as usize;
        let Some(pivot) = (0..=limit).rev().find(|&i| !ops.e.at(i, col).is_zero()) else {
            continue;
        };
        ops.swap(pivot, limit);
        for i in 0..limit {
            if !ops.e.at(i, col).is_zero() {
                ops.combine(zp, limit, i, col)?;
            }
        }
        next -= 1;
    }
    let rank = rows - (next + 1) as usize;
    Ok((ops.e, ops.u, ops.w, rank))
}

/// Echelon form with the inverse transform tracked: returns
/// `(e, u, w, rank)` with `u * a = e` and `w = u^{-1}` (both unimodular).
/// Used for polynomial rank factorizations.
pub(crate) fn echelon_with_inverse(
    zp: &Zp,
    a: &PolyMat,
) -> Result<(PolyMat, PolyMat, PolyMat, usize)> {
    let (e, u, w, rank) = echelon_lower(zp, a, true, true)?;
    Ok((e, u.unwrap(), w.unwrap(), rank))
}

/// Hermite normal form with unimodular transform: returns `(h, u)` with
/// `u * m = h`, `h` in HNF. Fails with `SingularMatrix` when the input is
/// rank deficient.
pub fn dense_hnf(zp: &Zp, m: &PolyMat) -> Result<(PolyMat, PolyMat)> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch("HNF of a square matrix"));
    }
    let n = m.rows();
    let (e, u, _, rank) = echelon_lower(zp, m, true, false)?;
    if rank < n {
        return Err(Error::SingularMatrix);
    }
    let mut ops = RowOps { e, u, w: None };
    for i in 0..n {
        debug_assert!(!ops.e.at(i, i).is_zero());
        ops.scale(zp, i, zp.inv_nz(ops.e.at(i, i).lc()));
    }
    for i in 0..n {
        for j in (0..i).rev() {
            let q = ops.e.at(i, j).divrem(zp, ops.e.at(j, j))?.0;
            ops.axpy(zp, i, j, &q);
        }
    }
    Ok((ops.e, ops.u.unwrap()))
}

/// HNF basis of the relation module R(mu, f) = { p : p f = 0 mod mu }.
///
/// Stacks `[f mod mu]` over `mu * I` and reads a kernel basis off the
/// unimodular transform of the echelon form; the kernel rows, restricted
/// to their first block, generate R(mu, f), and a final HNF pass
/// canonicalizes them.
pub fn hnf_relbas(zp: &Zp, mu: &Poly, f: &PolyMat) -> Result<PolyMat> {
    if mu.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (m, n) = (f.rows(), f.cols());
    let f_red = f.map_rem(zp, mu)?;
    let mut scaled = PolyMat::zero(n, n);
    for i in 0..n {
        *scaled.at_mut(i, i) = mu.clone();
    }
    let t = f_red.vstack(&scaled)?;
    let (e, u, _, rank) = echelon_lower(zp, &t, true, false)?;
    debug_assert_eq!(rank, n, "stacked relation system has full column rank");
    let u = u.unwrap();
    let mut kernel_rows = Vec::new();
    for i in 0..m + n {
        if (0..n).all(|j| e.at(i, j).is_zero()) {
            kernel_rows.push(i);
        }
    }
    debug_assert_eq!(kernel_rows.len(), m, "kernel has rank m");
    let k = u.submatrix(&kernel_rows, &(0..m).collect::<Vec<_>>());
    Ok(dense_hnf(zp, &k)?.0)
}

/// s-Popov basis of R(mu, f): the HNF basis followed by a shifted
/// weak-Popov reduction and Popov normalization.
pub fn popov_relbas(zp: &Zp, mu: &Poly, f: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    let b = hnf_relbas(zp, mu, f)?;
    popov_form(zp, &b, s)
}

/// Brings a nonsingular square matrix into s-Popov form (same row span).
pub fn popov_form(zp: &Zp, m: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch("Popov form of a square matrix"));
    }
    if s.len() != m.cols() {
        return Err(Error::ShapeMismatch("shift length"));
    }
    let n = m.rows();
    let mut e = m.clone();

    // rightmost column index attaining the s-row degree
    let pivot_of = |e: &PolyMat, i: usize| -> Result<usize> {
        let t = shifted_row_degree(e, s)?[i].ok_or(Error::SingularMatrix)?;
        Ok((0..n)
            .rev()
            .find(|&j| e.at(i, j).deg().map(|d| d as i64 + s[j]) == Some(t))
            .expect("degree attained"))
    };

    // Mulders-Storjohann: cancel pivot collisions until all pivots differ.
    loop {
        let pivots: Vec<usize> = (0..n).map(|i| pivot_of(&e, i)).collect::<Result<_>>()?;
        let mut seen: std::collections::HashMap<usize, usize> = Default::default();
        let mut collision = None;
        for (i, &pc) in pivots.iter().enumerate() {
            if let Some(&k) = seen.get(&pc) {
                collision = Some((k, i, pc));
                break;
            }
            seen.insert(pc, i);
        }
        let Some((i, k, pc)) = collision else { break };
        let (di, dk) = (e.at(i, pc).deg().unwrap(), e.at(k, pc).deg().unwrap());
        let (hi, lo) = if di >= dk { (i, k) } else { (k, i) };
        let c = zp.mul(e.at(hi, pc).lc(), zp.inv_nz(e.at(lo, pc).lc()));
        let shift = e.at(hi, pc).deg().unwrap() - e.at(lo, pc).deg().unwrap();
        let q = Poly::monomial(c, shift);
        for col in 0..n {
            let t = q.mul(zp, e.at(lo, col));
            *e.at_mut(hi, col) = e.at(hi, col).sub(zp, &t);
        }
        if (0..n).all(|j| e.at(hi, j).is_zero()) {
            return Err(Error::SingularMatrix);
        }
    }

    // order rows so the pivot of row i is column i
    let mut order: Vec<usize> = (0..n).collect();
    let pivots: Vec<usize> = (0..n).map(|i| pivot_of(&e, i)).collect::<Result<_>>()?;
    order.sort_by_key(|&i| pivots[i]);
    let e_sorted = e.submatrix(&order, &(0..n).collect::<Vec<_>>());
    let mut e = e_sorted;
    for i in 0..n {
        let c = zp.inv_nz(e.at(i, i).lc());
        for j in 0..n {
            *e.at_mut(i, j) = e.at(i, j).scale(zp, c);
        }
    }

    // Normalize each row: repeatedly clear the worst violation
    // deg(e[i][j]) >= deg(e[j][j]) by subtracting a multiple of row j,
    // always picking the violating column with the largest shifted degree
    // (ties to the right); the (value, column) pair strictly decreases.
    let diag_degs: Vec<usize> = (0..n).map(|j| e.at(j, j).deg().unwrap()).collect();
    for i in 0..n {
        loop {
            let mut worst: Option<(i64, usize)> = None;
            for j in 0..n {
                if j == i {
                    continue;
                }
                if let Some(d) = e.at(i, j).deg() {
                    if d >= diag_degs[j] {
                        let key = (d as i64 + s[j], j);
                        if worst.is_none_or(|w| key > w) {
                            worst = Some(key);
                        }
                    }
                }
            }
            let Some((_, j)) = worst else { break };
            let q = e.at(i, j).divrem(zp, e.at(j, j))?.0;
            let row_j: Vec<Poly> = (0..n).map(|c| e.at(j, c).clone()).collect();
            for (c, rjc) in row_j.iter().enumerate() {
                let t = q.mul(zp, rjc);
                *e.at_mut(i, c) = e.at(i, c).sub(zp, &t);
            }
        }
        let lc = e.at(i, i).lc();
        if lc != 1 {
            let c = zp.inv_nz(lc);
            for j in 0..n {
                *e.at_mut(i, j) = e.at(i, j).scale(zp, c);
            }
        }
    }
    debug_assert!(is_popov(zp, &e, s)?);
    Ok(e)
}

/// A matrix whose columns span the column module of `f`; the number of
/// columns equals the rank of `f`.
pub fn column_basis(zp: &Zp, f: &PolyMat) -> Result<PolyMat> {
    let (e, _, _, rank) = echelon_lower(zp, &f.transpose(), false, false)?;
    let nonzero: Vec<usize> = (0..e.rows())
        .filter(|&i| (0..e.cols()).any(|j| !e.at(i, j).is_zero()))
        .collect();
    debug_assert_eq!(nonzero.len(), rank);
    Ok(e.submatrix(&nonzero, &(0..e.cols()).collect::<Vec<_>>())
        .transpose())
}

/// Explicit HNF basis of R(mu, c) for a single column `c` whose top entry
/// is coprime with monic `mu`: mu at (0,0), ones on the rest of the
/// diagonal, and `-c_i / c_0 mod mu` below it.
pub fn relbas_onecol_hrow(zp: &Zp, mu: &Poly, c: &[Poly]) -> Result<PolyMat> {
    if mu.is_zero() || !mu.is_monic() {
        return Err(Error::ZeroInput);
    }
    let m = c.len();
    if m == 0 {
        return Err(Error::ShapeMismatch("empty column"));
    }
    let c0 = c[0].rem(zp, mu)?;
    let c0_inv = mod_inverse_or_not_coprime(zp, &c0, mu)?;
    let mut b = PolyMat::identity(m);
    *b.at_mut(0, 0) = mu.clone();
    for i in 1..m {
        let ci = c[i].rem(zp, mu)?;
        *b.at_mut(i, 0) = ci.neg(zp).mul(zp, &c0_inv).rem(zp, mu)?;
    }
    Ok(b)
}

fn mod_inverse_or_not_coprime(zp: &Zp, c: &Poly, mu: &Poly) -> Result<Poly> {
    poly::mod_inverse(zp, c, mu)
}

/// For two rows of a matrix `R` with `gcd(mu, row0 entries) = 1` and an
/// HNF basis of R(mu, R) in generic-row shape, the HNF basis of the
/// two-row relation module is `[[mu, 0], [b, 1]]`; returns `b`.
pub fn relbas_tworow(zp: &Zp, mu: &Poly, row0: &[Poly], rowi: &[Poly]) -> Result<Poly> {
    if mu.is_zero() || !mu.is_monic() {
        return Err(Error::ZeroInput);
    }
    if row0.len() != rowi.len() || row0.is_empty() {
        return Err(Error::ShapeMismatch("two-row relation basis"));
    }
    let mut g = mu.clone();
    for e in row0 {
        if g.deg() == Some(0) {
            break;
        }
        if !e.is_zero() {
            g = poly::gcd(zp, &g, e)?;
        }
    }
    if g.deg() != Some(0) {
        return Err(Error::GcdNotOne);
    }
    let stacked = PolyMat::from_rows(vec![row0.to_vec(), rowi.to_vec()]);
    let b = hnf_relbas(zp, mu, &stacked)?;
    let shape_ok = b.at(0, 0) == mu && b.at(0, 1).is_zero() && b.at(1, 1) == &Poly::one();
    if !shape_ok {
        return Err(Error::NotHrowShape);
    }
    Ok(b.at(1, 0).clone())
}

/// Degree of the determinant of an s-reduced matrix: the sum of its s-row
/// degrees minus the sum of the shift.
pub fn det_degree_reduced(zp: &Zp, m: &PolyMat, s: &[i64]) -> Result<i64> {
    if !is_reduced(zp, m, s)? {
        return Err(Error::NotReduced);
    }
    let t = shifted_row_degree(m, s)?;
    let sum: i64 = t
        .iter()
        .map(|d| d.expect("reduced matrix has no zero row"))
        .sum();
    Ok(sum - s.iter().sum::<i64>())
}

/// Degree bound for the adjugate of an s-reduced matrix:
/// `deg det + max(s) - min(s)`.
pub fn adjugate_degree_bound(zp: &Zp, m: &PolyMat, s: &[i64]) -> Result<i64> {
    let d = det_degree_reduced(zp, m, s)?;
    let max = *s.iter().max().ok_or(Error::ShapeMismatch("empty shift"))?;
    let min = *s.iter().min().unwrap();
    Ok(d + max - min)
}

/// Determinant of a polynomial matrix by evaluation-interpolation: the
/// determinant has degree at most `n * max_deg`, so that many evaluations
/// of dense determinants pin it down exactly.
pub fn det_poly(zp: &Zp, m: &PolyMat) -> Result<Poly> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::ShapeMismatch("determinant of a square matrix"));
    }
    if n == 0 {
        return Ok(Poly::one());
    }
    let bound = n * m.max_deg().unwrap_or(0) + 1;
    if bound as u64 > zp.p() {
        return Err(Error::FieldTooSmall {
            p: zp.p(),
            needed: bound as u128,
        });
    }
    let points: Vec<Fe> = (0..bound as u64).collect();
    let values: Vec<Fe> = points.iter().map(|&a| m.eval_at(zp, a).det(zp)).collect();
    crate::poly::interpolate(zp, &points, &values)
}

/// Membership of a row vector in the row span of a lower-triangular
/// nonsingular basis, by exact back-substitution.
pub fn triangular_rowspan_contains(zp: &Zp, basis: &PolyMat, v: &[Poly]) -> Result<bool> {
    let n = basis.rows();
    if basis.cols() != n || v.len() != n {
        return Err(Error::ShapeMismatch("membership test"));
    }
    let mut rem: Vec<Poly> = v.to_vec();
    for i in (0..n).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = rem[i].divrem(zp, basis.at(i, i))?;
        if !r.is_zero() {
            return Ok(false);
        }
        for j in 0..=i {
            let t = q.mul(zp, basis.at(i, j));
            rem[j] = rem[j].sub(zp, &t);
        }
    }
    Ok(rem.iter().all(Poly::is_zero))
}
