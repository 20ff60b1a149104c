//! Modular structured system solving by evaluation-interpolation.
//!
//! Given Syl generators of M over K\[x\] and a right-hand side Y (or a
//! left-hand side X), the solvers evaluate the generators at a set of
//! distinct points, invert each M(a_i) as a structured matrix over the
//! field, multiply, and interpolate the result back, yielding
//! `M^{-1} Y mod A` (resp. `X M^{-1} mod A`) for `A` the product of the
//! chosen linear factors.
//!
//! Outcomes are Las Vegas flags, never wrong answers: `Fail` can only come
//! from a probabilistic inversion backend giving up, and `Singular` is
//! reported exactly at the first point in sampling order where det(M)
//! vanishes. Per-point work is isolated in a pure function of the point
//! index, so the iteration could run concurrently; results are always
//! inspected in ascending point order.

use crate::field::{sample_distinct_subset, ConstMat, Fe, Rng, Zp};
use crate::poly::{interpolate, linear_product, multipoint_eval, Poly};
use crate::polymat::PolyMat;
use crate::structured::{
    mul_dense_inv_structured, mul_inv_structured_dense, FieldGen, InvOutcome, Inverter, Operator,
    PolyGen,
};
use crate::{Error, Result};

/// Result of solving against an explicit point list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointsOutcome {
    Fail,
    /// Index i of the first point with det(M)(a_i) = 0.
    Singular(usize),
    Solved(PolyMat),
}

/// Result of the modular solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Fail,
    /// The sampled prefix (a_0, .., a_i) whose last point is the first
    /// root of det(M) encountered.
    Singular(Vec<Fe>),
    /// `modulus` is monic, split with distinct roots, coprime with
    /// det(M); `solution` has degree < deg(modulus).
    Success {
        modulus: Poly,
        solution: PolyMat,
    },
}

/// Sample-set size from the headline probability bound:
/// `8 * delta * max(n(n+1), 2*det_bound)`.
pub fn recommended_sample_size(n: usize, delta: usize, det_bound: usize) -> u128 {
    let n = n as u128;
    8 * delta as u128 * std::cmp::max(n * (n + 1), 2 * det_bound as u128)
}

/// Evaluates every entry of a polynomial matrix at every point:
/// `out[i]` is the constant matrix at points[i].
fn eval_grid(zp: &Zp, m: &PolyMat, points: &[Fe]) -> Vec<ConstMat> {
    let mut out = vec![ConstMat::zero(m.rows(), m.cols()); points.len()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let vals = multipoint_eval(zp, m.at(i, j), points);
            for (k, v) in vals.into_iter().enumerate() {
                out[k][(i, j)] = v;
            }
        }
    }
    out
}

fn interpolate_grid(zp: &Zp, points: &[Fe], values: &[ConstMat]) -> Result<PolyMat> {
    let rows = values[0].rows();
    let cols = values[0].cols();
    let mut out = PolyMat::zero(rows, cols);
    let mut buf = vec![0u64; points.len()];
    for i in 0..rows {
        for j in 0..cols {
            for (k, v) in values.iter().enumerate() {
                buf[k] = v[(i, j)];
            }
            *out.at_mut(i, j) = interpolate(zp, points, &buf)?;
        }
    }
    Ok(out)
}

enum Side<'a> {
    /// solve M F = Y for Y of shape n x m
    Right(&'a PolyMat),
    /// solve F M = X for X of shape m x n
    Left(&'a PolyMat),
}

fn solve_with_points(
    zp: &Zp,
    gen: &PolyGen,
    side: Side<'_>,
    points: &[Fe],
    s_size: u64,
    inverter: &dyn Inverter,
    rng: &mut Rng,
) -> Result<PointsOutcome> {
    let n = gen.n();
    let rhs = match side {
        Side::Right(y) => {
            if y.rows() != n {
                return Err(Error::ShapeMismatch("right-hand side rows"));
            }
            y
        }
        Side::Left(x) => {
            if x.cols() != n {
                return Err(Error::ShapeMismatch("left-hand side columns"));
            }
            x
        }
    };
    if points.len() > {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len()
    } {
        return Err(Error::DuplicatePoints);
    }
    if let Some(d) = rhs.max_deg() {
        if d >= points.len() {
            return Err(Error::ShapeMismatch("right-hand side degree exceeds Delta"));
        }
    }

    let g_at = eval_grid(zp, &gen.g, points);
    let h_at = eval_grid(zp, &gen.h, points);
    let rhs_at = eval_grid(zp, rhs, points);

    // Per-point work, a pure function of the index; outcomes are inspected
    // in ascending order so the Singular report is the first failing index.
    let solve_one =
        |i: usize, rng: &mut Rng| -> Result<std::result::Result<ConstMat, InvOutcome>> {
            let gen_i = FieldGen::new(Operator::Syl, g_at[i].clone(), h_at[i].clone())?;
            let mut point_rng = rng.fork(i as u64);
            match inverter.invert(zp, &gen_i, s_size, &mut point_rng) {
                InvOutcome::Fail => Ok(Err(InvOutcome::Fail)),
                InvOutcome::Singular => Ok(Err(InvOutcome::Singular)),
                InvOutcome::Inverse(inv) => {
                    let prod = match side {
                        Side::Right(_) => mul_inv_structured_dense(zp, &inv, &rhs_at[i])?,
                        Side::Left(_) => mul_dense_inv_structured(zp, &rhs_at[i], &inv)?,
                    };
                    Ok(Ok(prod))
                }
            }
        };

    let mut values = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        match solve_one(i, rng)? {
            Ok(v) => values.push(v),
            Err(InvOutcome::Fail) => return Ok(PointsOutcome::Fail),
            Err(InvOutcome::Singular) => return Ok(PointsOutcome::Singular(i)),
            Err(InvOutcome::Inverse(_)) => unreachable!(),
        }
    }
    Ok(PointsOutcome::Solved(interpolate_grid(
        zp, points, &values,
    )?))
}

/// Solves `M F = Y mod prod (x - a_i)` for F of degree < the number of
/// points, where M is represented by Syl generators.
pub fn right_solve_with_points(
    zp: &Zp,
    gen: &PolyGen,
    y: &PolyMat,
    points: &[Fe],
    s_size: u64,
    inverter: &dyn Inverter,
    rng: &mut Rng,
) -> Result<PointsOutcome> {
    solve_with_points(zp, gen, Side::Right(y), points, s_size, inverter, rng)
}

/// Solves `F M = X mod prod (x - a_i)`, the left-side mirror.
pub fn left_solve_with_points(
    zp: &Zp,
    gen: &PolyGen,
    x: &PolyMat,
    points: &[Fe],
    s_size: u64,
    inverter: &dyn Inverter,
    rng: &mut Rng,
) -> Result<PointsOutcome> {
    solve_with_points(zp, gen, Side::Left(x), points, s_size, inverter, rng)
}

fn modular_solve(
    zp: &Zp,
    gen: &PolyGen,
    side: Side<'_>,
    delta: usize,
    s_size: u64,
    inverter: &dyn Inverter,
    rng: &mut Rng,
) -> Result<SolveOutcome> {
    if delta == 0 {
        return Err(Error::ShapeMismatch("Delta must be positive"));
    }
    // field (or sample set) too small: report Fail, not an error
    if (delta as u64) > zp.p() || s_size > zp.p() || (delta as u64) > s_size {
        return Ok(SolveOutcome::Fail);
    }
    let points = sample_distinct_subset(s_size, delta, rng)?;
    match solve_with_points(zp, gen, side, &points, s_size, inverter, rng)? {
        PointsOutcome::Fail => Ok(SolveOutcome::Fail),
        PointsOutcome::Singular(i) => Ok(SolveOutcome::Singular(points[..=i].to_vec())),
        PointsOutcome::Solved(f) => Ok(SolveOutcome::Success {
            modulus: linear_product(zp, &points),
            solution: f,
        }),
    }
}

/// Samples `delta` distinct points from `{0, .., s_size-1}` and solves
/// `M F = Y mod A` with `A` the product of the sampled linear factors.
/// Always returns `Fail` or `Singular` when det(M) = 0.
pub fn modular_right_solve(
    zp: &Zp,
    gen: &PolyGen,
    y: &PolyMat,
    delta: usize,
    s_size: u64,
    inverter: &dyn Inverter,
    rng: &mut Rng,
) -> Result<SolveOutcome> {
    modular_solve(zp, gen, Side::Right(y), delta, s_size, inverter, rng)
}

/// Left-side mirror of [`modular_right_solve`]: `F M = X mod A`.
pub fn modular_left_solve(
    zp: &Zp,
    gen: &PolyGen,
    x: &PolyMat,
    delta: usize,
    s_size: u64,
    inverter: &dyn Inverter,
    rng: &mut Rng,
) -> Result<SolveOutcome> {
    modular_solve(zp, gen, Side::Left(x), delta, s_size, inverter, rng)
}
