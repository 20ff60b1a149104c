//! Shared oracles and fixture generators for the integration suites.
//!
//! Everything here is deliberately independent of the code paths under
//! test: determinants and adjugates come from dense evaluation with
//! Gaussian elimination, Gröbner bases of point ideals from plain linear
//! algebra on evaluation vectors, and membership tests from exact
//! back-substitution.

#![allow(dead_code)]

use shnf::bivar::{drl_less, BivPoly, DrlBasis};
use shnf::field::{ConstMat, Fe, Rng, Zp};
use shnf::poly::{self, Poly};
use shnf::polymat::PolyMat;
use shnf::structured::{DenseInverter, FieldGen, InvOutcome, Inverter, PolyGen};

/// Random displacement generators of the given shape and degree.
pub fn random_poly_gen(zp: &Zp, n: usize, alpha: usize, len: usize, rng: &mut Rng) -> PolyGen {
    PolyGen::new(
        PolyMat::random(zp, n, alpha, len, rng),
        PolyMat::random(zp, n, alpha, len, rng),
    )
    .unwrap()
}

/// Exact adjugate by evaluation-interpolation, skipping the points where
/// the determinant vanishes (adj has degree at most (n-1) * deg M).
pub fn adjugate_poly(zp: &Zp, m: &PolyMat) -> PolyMat {
    let n = m.rows();
    if n == 1 {
        let mut out = PolyMat::zero(1, 1);
        *out.at_mut(0, 0) = Poly::one();
        return out;
    }
    let bound = (n - 1) * m.max_deg().unwrap_or(0) + 1;
    let mut points = Vec::with_capacity(bound);
    let mut values = Vec::with_capacity(bound);
    let mut a = 0u64;
    while points.len() < bound {
        let ma = m.eval_at(zp, a);
        let d = ma.det(zp);
        if d != 0 {
            let inv = ma.inverse(zp).unwrap();
            let mut adj = ConstMat::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    adj[(i, j)] = zp.mul(d, inv[(i, j)]);
                }
            }
            points.push(a);
            values.push(adj);
        }
        a += 1;
        assert!(a < zp.p(), "ran out of evaluation points");
    }
    let mut out = PolyMat::zero(n, n);
    let mut buf = vec![0u64; bound];
    for i in 0..n {
        for j in 0..n {
            for (k, v) in values.iter().enumerate() {
                buf[k] = v[(i, j)];
            }
            *out.at_mut(i, j) = poly::interpolate(zp, &points, &buf).unwrap();
        }
    }
    out
}

/// Dense oracle for inverse column slices: `(mu, mu * N_{*,J})` from the
/// adjugate and determinant, cancelling the gcd in every entry.
pub fn slice_oracle_cols(zp: &Zp, det: &Poly, adj: &PolyMat, cols: &[usize]) -> (Poly, PolyMat) {
    let n = adj.rows();
    let mut dens = Vec::new();
    for &c in cols {
        for i in 0..n {
            let g = if adj.at(i, c).is_zero() {
                det.clone()
            } else {
                poly::gcd(zp, det, adj.at(i, c)).unwrap()
            };
            dens.push(det.div_exact(zp, &g).unwrap());
        }
    }
    let mu = poly::lcm_tree(zp, &dens).unwrap();
    let mut out = PolyMat::zero(n, cols.len());
    for (k, &c) in cols.iter().enumerate() {
        for i in 0..n {
            let num = adj.at(i, c).mul(zp, &mu);
            *out.at_mut(i, k) = num.div_exact(zp, det).unwrap();
        }
    }
    (mu, out)
}

/// Inversion backend mock calibrated to the per-call failure bound of the
/// fast structured inversion: `Fail` with probability n(n+1)/s_size, the
/// dense result otherwise.
pub struct FlakyInverter;

impl Inverter for FlakyInverter {
    fn invert(&self, zp: &Zp, gen: &FieldGen, s_size: u64, rng: &mut Rng) -> InvOutcome {
        let n = gen.n() as u128;
        let bad = (n * (n + 1)).min(s_size as u128) as u64;
        if rng.below(s_size) < bad {
            return InvOutcome::Fail;
        }
        DenseInverter.invert(zp, gen, s_size, rng)
    }
}

fn monomials_of_total_degree(t: usize) -> Vec<(usize, usize)> {
    // DRL-increasing within a total degree: increasing y-exponent
    (0..=t).map(|b| (b, t - b)).collect()
}

/// Reduced DRL Gröbner basis of the vanishing ideal of pairwise-distinct
/// points, by incremental linear algebra on evaluation vectors: monomials
/// are scanned in increasing DRL order; a monomial whose evaluation
/// vector is independent joins the staircase, a dependent one (not under
/// a known leading monomial) yields a basis element whose tail is the
/// solved combination of staircase monomials.
pub fn point_ideal_drl_basis(zp: &Zp, points: &[(Fe, Fe)]) -> DrlBasis {
    let k = points.len();
    assert!(k > 0);
    let eval = |b: usize, a: usize| -> Vec<Fe> {
        points
            .iter()
            .map(|&(x, y)| zp.mul(zp.pow(y, b as u64), zp.pow(x, a as u64)))
            .collect()
    };
    let mut staircase: Vec<(usize, usize)> = Vec::new();
    let mut reduced: Vec<Vec<Fe>> = Vec::new(); // echelonized staircase vectors
    let mut combos: Vec<Vec<Fe>> = Vec::new(); // reduced[r] over staircase vectors
    let mut pivots: Vec<usize> = Vec::new();
    let mut lms: Vec<(usize, usize)> = Vec::new();
    let mut elems: Vec<BivPoly> = Vec::new();

    let mut t = 0usize;
    loop {
        let mut all_divisible = true;
        for (b, a) in monomials_of_total_degree(t) {
            if lms.iter().any(|&(lb, la)| b >= lb && a >= la) {
                continue;
            }
            all_divisible = false;
            let v = eval(b, a);
            // reduce v against the echelonized staircase vectors
            let mut r = v;
            let mut coeffs = vec![0u64; staircase.len()];
            for (ri, row) in reduced.iter().enumerate() {
                let p = pivots[ri];
                if r[p] != 0 {
                    let f = zp.mul(r[p], zp.inv(row[p]).unwrap());
                    for j in 0..k {
                        r[j] = zp.sub(r[j], zp.mul(f, row[j]));
                    }
                    for (j, &c) in combos[ri].iter().enumerate() {
                        coeffs[j] = zp.add(coeffs[j], zp.mul(f, c));
                    }
                }
            }
            if let Some(p) = (0..k).find(|&j| r[j] != 0) {
                // independent: (b, a) is a standard monomial
                let mut combo = vec![0u64; staircase.len() + 1];
                combo[staircase.len()] = 1;
                for (j, &c) in coeffs.iter().enumerate() {
                    combo[j] = zp.neg(c);
                }
                staircase.push((b, a));
                for c in combos.iter_mut() {
                    c.push(0);
                }
                reduced.push(r);
                combos.push(combo);
                pivots.push(p);
            } else {
                // dependent: new leading monomial with tail -sum coeffs
                let mut ycoeffs: Vec<Vec<Fe>> = vec![vec![0; a + t + 1]; b + t + 1];
                for (j, &(sb, sa)) in staircase.iter().enumerate() {
                    if coeffs[j] != 0 {
                        if ycoeffs.len() <= sb {
                            ycoeffs.resize(sb + 1, vec![]);
                        }
                        if ycoeffs[sb].len() <= sa {
                            ycoeffs[sb].resize(sa + 1, 0);
                        }
                        ycoeffs[sb][sa] = zp.neg(coeffs[j]);
                    }
                }
                if ycoeffs.len() <= b {
                    ycoeffs.resize(b + 1, vec![]);
                }
                if ycoeffs[b].len() <= a {
                    ycoeffs[b].resize(a + 1, 0);
                }
                ycoeffs[b][a] = 1;
                lms.push((b, a));
                elems.push(BivPoly::from_ycoeffs(
                    ycoeffs.into_iter().map(Poly::from_coeffs).collect(),
                ));
            }
        }
        if all_divisible && t > 0 {
            break;
        }
        t += 1;
        assert!(t <= 4 * k + 4, "runaway enumeration");
    }
    assert_eq!(staircase.len(), k, "radical point ideal has degree k");
    // sort by increasing leading y-degree
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| lms[i].0);
    DrlBasis::new(order.into_iter().map(|i| elems[i].clone()).collect())
}

/// Random points with pairwise-distinct x-coordinates.
pub fn random_points_distinct_x(zp: &Zp, k: usize, rng: &mut Rng) -> Vec<(Fe, Fe)> {
    let xs = shnf::field::sample_distinct_subset(zp.p(), k, rng).unwrap();
    xs.into_iter().map(|x| (x, rng.field_element(zp))).collect()
}

/// Random distinct points where at least one x-coordinate repeats, so the
/// vanishing ideal is not in shape position.
pub fn random_points_repeated_x(zp: &Zp, k: usize, rng: &mut Rng) -> Vec<(Fe, Fe)> {
    assert!(k >= 2);
    let mut pts = random_points_distinct_x(zp, k - 1, rng);
    let (x0, y0) = pts[0];
    let mut y1 = rng.field_element(zp);
    while y1 == y0 {
        y1 = rng.field_element(zp);
    }
    pts.push((x0, y1));
    pts
}

/// Lagrange interpolant through points with distinct x-coordinates.
pub fn interpolant(zp: &Zp, points: &[(Fe, Fe)]) -> Poly {
    let xs: Vec<Fe> = points.iter().map(|p| p.0).collect();
    let ys: Vec<Fe> = points.iter().map(|p| p.1).collect();
    poly::interpolate(zp, &xs, &ys).unwrap()
}

/// Sanity-checks of the fixture machinery itself (the oracle must not be
/// trusted blindly).
pub fn check_drl_basis_shape(gb: &DrlBasis) {
    let lms: Vec<(usize, usize)> = gb
        .polys
        .iter()
        .map(|f| shnf::bivar::drl_leading_monomial(f).unwrap())
        .collect();
    assert!(lms.windows(2).all(|w| w[0].0 < w[1].0));
    for f in &gb.polys {
        let lm = shnf::bivar::drl_leading_monomial(f).unwrap();
        // every other monomial of f is strictly below the leading one
        for (b, c) in f.ycoeffs().iter().enumerate() {
            for a in 0..=c.deg().map_or(0, |d| d) {
                if c.coeff(a) != 0 && (b, a) != lm {
                    assert!(drl_less((b, a), lm), "monomial above the leading one");
                }
            }
        }
    }
}
