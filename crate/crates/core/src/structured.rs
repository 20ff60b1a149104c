//! Displacement structure: operators, generators, and the structured
//! inversion contract.
//!
//! With Z0 the down-shift matrix, Z1 the down-shift with an extra 1 in the
//! top-right corner, three displacement operators appear:
//!
//! * `Syl`:  A -> Z0 A - A Z1^T, used for the input matrix M;
//! * `Inv`:  A -> Z1^T A - A Z0, used for inverses M(a)^{-1};
//! * `InvT`: A -> Z0^T A - A Z1, used for transposed inverses in left
//!   products.
//!
//! All three are invertible, and applying or undoing them only takes index
//! shifts; the operator matrices are never materialized outside of test
//! oracles. A matrix of displacement rank alpha is carried around as a
//! generator pair (G, H) of n x alpha matrices with op(A) = G H^T.

use crate::field::{ConstMat, Fe, Rng, Zp};
use crate::poly::Poly;
use crate::polymat::PolyMat;
use crate::{Error, Result};

/// Which displacement equation a generator pair refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    /// Z0 A - A Z1^T
    Syl,
    /// Z1^T A - A Z0
    Inv,
    /// Z0^T A - A Z1
    InvT,
}

/// Generator pair over the field: `op(A) = G H^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldGen {
    pub op: Operator,
    pub g: ConstMat,
    pub h: ConstMat,
}

impl FieldGen {
    pub fn new(op: Operator, g: ConstMat, h: ConstMat) -> Result<Self> {
        if g.rows() != h.rows() || g.cols() != h.cols() {
            return Err(Error::ShapeMismatch("generator pair"));
        }
        Ok(FieldGen { op, g, h })
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn alpha(&self) -> usize {
        self.g.cols()
    }

    /// The dense product G H^T.
    pub fn outer(&self, zp: &Zp) -> ConstMat {
        self.g.mul(zp, &self.h.transpose()).expect("shapes agree")
    }
}

/// Generator pair over K\[x\] for the `Syl` operator:
/// `Z0 M - M Z1^T = G H^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyGen {
    pub g: PolyMat,
    pub h: PolyMat,
}

impl PolyGen {
    pub fn new(g: PolyMat, h: PolyMat) -> Result<Self> {
        if g.rows() != h.rows() || g.cols() != h.cols() {
            return Err(Error::ShapeMismatch("generator pair"));
        }
        Ok(PolyGen { g, h })
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn alpha(&self) -> usize {
        self.g.cols()
    }

    /// Largest coefficient degree across both generators.
    pub fn deg(&self) -> Option<usize> {
        self.g.max_deg().max(self.h.max_deg())
    }

    pub fn outer(&self, zp: &Zp) -> PolyMat {
        self.g.mul(zp, &self.h.transpose()).expect("shapes agree")
    }

    /// Evaluation at a point gives generators of M(a) for the same
    /// operator.
    pub fn eval_at(&self, zp: &Zp, a: Fe) -> FieldGen {
        FieldGen {
            op: Operator::Syl,
            g: self.g.eval_at(zp, a),
            h: self.h.eval_at(zp, a),
        }
    }

    /// File format: `n alpha d`, then G row-major one polynomial per line,
    /// then H likewise.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.n(),
            self.alpha(),
            self.deg().map_or(0, |d| d)
        );
        for m in [&self.g, &self.h] {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.push_str(&m.at(i, j).to_text());
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn from_text(zp: &Zp, s: &str) -> Result<PolyGen> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty generator file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header field {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [n, alpha, _d] = dims[..] else {
            return Err(Error::Parse("generator header must be `n alpha d`".into()));
        };
        let mut read_mat = |rows: usize, cols: usize| -> Result<PolyMat> {
            let mut m = PolyMat::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    let line = lines
                        .next()
                        .ok_or_else(|| Error::Parse("generator file ended early".into()))?;
                    *m.at_mut(i, j) = Poly::from_text(zp, line)?;
                }
            }
            Ok(m)
        };
        let g = read_mat(n, alpha)?;
        let h = read_mat(n, alpha)?;
        PolyGen::new(g, h)
    }
}

/// Applies a displacement operator to a dense matrix over the field using
/// index shifts only.
pub fn apply_displacement_const(zp: &Zp, m: &ConstMat, op: Operator) -> Result<ConstMat> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::ShapeMismatch("displacement of a square matrix"));
    }
    let mut e = ConstMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            e[(i, j)] = match op {
                // Z0 M shifts rows down; M Z1^T shifts columns right with
                // wraparound of the last column into column 0.
                Operator::Syl => {
                    let a = if i > 0 { m[(i - 1, j)] } else { 0 };
                    let b = if j > 0 { m[(i, j - 1)] } else { m[(i, n - 1)] };
                    zp.sub(a, b)
                }
                // Z1^T N shifts rows up with wraparound; N Z0 shifts
                // columns left, dropping column 0.
                Operator::Inv => {
                    let a = m[((i + 1) % n, j)];
                    let b = if j + 1 < n { m[(i, j + 1)] } else { 0 };
                    zp.sub(a, b)
                }
                // Z0^T A shifts rows up, dropping the last; A Z1 shifts
                // columns left with wraparound of column 0 to the end.
                Operator::InvT => {
                    let a = if i + 1 < n { m[(i + 1, j)] } else { 0 };
                    let b = if j + 1 < n { m[(i, j + 1)] } else { m[(i, 0)] };
                    zp.sub(a, b)
                }
            };
        }
    }
    Ok(e)
}

/// `Syl` displacement of a polynomial matrix.
pub fn apply_displacement_poly(zp: &Zp, m: &PolyMat) -> Result<PolyMat> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::ShapeMismatch("displacement of a square matrix"));
    }
    let mut e = PolyMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let a = if i > 0 {
                m.at(i - 1, j).clone()
            } else {
                Poly::zero()
            };
            let b = if j > 0 {
                m.at(i, j - 1)
            } else {
                m.at(i, n - 1)
            };
            *e.at_mut(i, j) = a.sub(zp, b);
        }
    }
    Ok(e)
}

/// Rank factorization of a dense matrix over the field: `D = G H^T` with
/// exactly `rank(D)` generator columns (the CR factorization read off the
/// reduced row echelon form).
pub fn compress_const(zp: &Zp, d: &ConstMat, op: Operator) -> FieldGen {
    let rows = d.rows();
    let cols = d.cols();
    let mut r = d.clone();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| r[(i, c)] != 0) else {
            continue;
        };
        for j in 0..cols {
            let (x, y) = (r[(rank, j)], r[(p, j)]);
            r[(rank, j)] = y;
            r[(p, j)] = x;
        }
        let inv = zp.inv_nz(r[(rank, c)]);
        for j in 0..cols {
            r[(rank, j)] = zp.mul(r[(rank, j)], inv);
        }
        for i in 0..rows {
            if i != rank && r[(i, c)] != 0 {
                let f = r[(i, c)];
                for j in 0..cols {
                    let s = zp.mul(f, r[(rank, j)]);
                    r[(i, j)] = zp.sub(r[(i, j)], s);
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let mut g = ConstMat::zero(rows, rank);
    for i in 0..rows {
        for (k, &c) in pivot_cols.iter().enumerate() {
            g[(i, k)] = d[(i, c)];
        }
    }
    let mut h = ConstMat::zero(cols, rank);
    for j in 0..cols {
        for k in 0..rank {
            h[(j, k)] = r[(k, j)];
        }
    }
    FieldGen { op, g, h }
}

/// Polynomial rank factorization `E = G H^T` with `rank(E)` columns; both
/// factors stay polynomial by going through a column basis with a tracked
/// inverse transform.
pub fn compress_poly(zp: &Zp, e: &PolyMat) -> Result<PolyGen> {
    let (ech, _, w, rank) = crate::polymat::echelon_with_inverse(zp, &e.transpose())?;
    let nonzero: Vec<usize> = (0..ech.rows())
        .filter(|&i| (0..ech.cols()).any(|j| !ech.at(i, j).is_zero()))
        .collect();
    debug_assert_eq!(nonzero.len(), rank);
    let all_cols: Vec<usize> = (0..ech.cols()).collect();
    // E^T = W * ech, so E = ech_nz^T * (W columns at nonzero rows)^T.
    let g = ech.submatrix(&nonzero, &all_cols).transpose();
    let all_rows: Vec<usize> = (0..w.rows()).collect();
    let h = w.submatrix(&all_rows, &nonzero);
    PolyGen::new(g, h)
}

/// Recovers the unique matrix with the given displacement image, by the
/// propagation the shift structure induces (rows top-down for `Syl`,
/// columns right-to-left for `Inv`, rows bottom-up for `InvT`).
pub fn reconstruct_image_const(zp: &Zp, e: &ConstMat, op: Operator) -> ConstMat {
    let n = e.rows();
    debug_assert_eq!(n, e.cols());
    let mut m = ConstMat::zero(n, n);
    match op {
        Operator::Syl => {
            // row 0 is determined outright, then each row from the one above
            for j in 0..n {
                let src = if j + 1 < n { (0, j + 1) } else { (0, 0) };
                m[(0, j)] = zp.neg(e[src]);
            }
            for i in 1..n {
                for j in 0..n {
                    let src = if j + 1 < n { (i, j + 1) } else { (i, 0) };
                    let up = m[(i - 1, if j + 1 < n { j + 1 } else { 0 })];
                    m[(i, j)] = zp.sub(up, e[src]);
                }
            }
        }
        Operator::Inv => {
            // column n-1 is determined outright, then each column from the
            // one to its right
            for i in 0..n {
                m[((i + 1) % n, n - 1)] = e[(i, n - 1)];
            }
            for j in (0..n.saturating_sub(1)).rev() {
                for i in 0..n {
                    let k = (i + 1) % n;
                    m[(k, j)] = zp.add(e[(i, j)], m[(i, j + 1)]);
                }
            }
        }
        Operator::InvT => {
            // row n-1 is determined outright, then each row from the one
            // below
            for j in 0..n {
                let src = if j + 1 < n {
                    (n - 1, j)
                } else {
                    (n - 1, n - 1)
                };
                let col = if j + 1 < n { j + 1 } else { 0 };
                m[(n - 1, col)] = zp.neg(e[src]);
            }
            for i in (0..n.saturating_sub(1)).rev() {
                for j in 0..n {
                    let col = if j + 1 < n { j + 1 } else { 0 };
                    m[(i, col)] = zp.sub(m[(i + 1, j)], e[(i, j)]);
                }
            }
        }
    }
    debug_assert_eq!(&apply_displacement_const(zp, &m, op).unwrap(), e);
    m
}

/// Dense matrix represented by field generators.
pub fn reconstruct_const(zp: &Zp, gen: &FieldGen) -> ConstMat {
    reconstruct_image_const(zp, &gen.outer(zp), gen.op)
}

/// Dense polynomial matrix represented by `Syl` generators.
pub fn reconstruct_poly(zp: &Zp, gen: &PolyGen) -> PolyMat {
    let n = gen.n();
    let e = gen.outer(zp);
    let mut m = PolyMat::zero(n, n);
    for j in 0..n {
        let src = if j + 1 < n { j + 1 } else { 0 };
        *m.at_mut(0, j) = e.at(0, src).neg(zp);
    }
    for i in 1..n {
        for j in 0..n {
            let src = if j + 1 < n { j + 1 } else { 0 };
            *m.at_mut(i, j) = m.at(i - 1, src).clone().sub(zp, e.at(i, src));
        }
    }
    debug_assert!({
        let back = apply_displacement_poly(zp, &m).unwrap();
        back == e
    });
    m
}

/// Outcome of structured inversion over the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvOutcome {
    /// The Las Vegas backend gave up; retrying with fresh randomness may
    /// succeed.
    Fail,
    /// The represented matrix is singular.
    Singular,
    /// Generators of the inverse for the `Inv` operator, with at most
    /// alpha + 2 columns.
    Inverse(FieldGen),
}

/// Structured inversion backend: given `Syl` generators of a square matrix
/// A over the field, produce `Inv` generators of A^{-1} or report
/// `Singular`. Backends may be randomized and are allowed to `Fail`.
pub trait Inverter {
    fn invert(&self, zp: &Zp, gen: &FieldGen, s_size: u64, rng: &mut Rng) -> InvOutcome;
}

/// Baseline backend: reconstructs the dense matrix, inverts it by Gaussian
/// elimination, and compresses the inverse. Never returns `Fail`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DenseInverter;

impl Inverter for DenseInverter {
    fn invert(&self, zp: &Zp, gen: &FieldGen, _s_size: u64, _rng: &mut Rng) -> InvOutcome {
        debug_assert_eq!(gen.op, Operator::Syl);
        let m = reconstruct_const(zp, gen);
        let Some(n_inv) = m.inverse(zp) else {
            return InvOutcome::Singular;
        };
        let e = apply_displacement_const(zp, &n_inv, Operator::Inv).expect("square");
        let out = compress_const(zp, &e, Operator::Inv);
        debug_assert!(out.alpha() <= gen.alpha() + 2, "generator growth bound");
        InvOutcome::Inverse(out)
    }
}

/// Product N * Y for N given by `Inv` generators.
pub fn mul_inv_structured_dense(zp: &Zp, gen: &FieldGen, y: &ConstMat) -> Result<ConstMat> {
    if gen.op != Operator::Inv {
        return Err(Error::ShapeMismatch("expected Inv generators"));
    }
    if y.rows() != gen.n() {
        return Err(Error::ShapeMismatch("structured product"));
    }
    reconstruct_const(zp, gen).mul(zp, y)
}

/// Generators of N^T for the `InvT` operator, from `Inv` generators of N:
/// the pair (-H, G), satisfying `Z0^T N^T - N^T Z1 = (-H) G^T`.
pub fn left_generators(zp: &Zp, gen: &FieldGen) -> Result<FieldGen> {
    if gen.op != Operator::Inv {
        return Err(Error::ShapeMismatch("expected Inv generators"));
    }
    let mut neg_h = gen.h.clone();
    for i in 0..neg_h.rows() {
        for j in 0..neg_h.cols() {
            neg_h[(i, j)] = zp.neg(neg_h[(i, j)]);
        }
    }
    FieldGen::new(Operator::InvT, neg_h, gen.g.clone())
}

/// Product X * N for N given by `Inv` generators, through the transposed
/// generators of `left_generators`.
pub fn mul_dense_inv_structured(zp: &Zp, x: &ConstMat, gen: &FieldGen) -> Result<ConstMat> {
    if x.cols() != gen.n() {
        return Err(Error::ShapeMismatch("structured product"));
    }
    let nt = reconstruct_const(zp, &left_generators(zp, gen)?);
    Ok(nt.mul(zp, &x.transpose())?.transpose())
}
