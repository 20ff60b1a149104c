//! Dense univariate polynomials over Z/pZ.
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so
//! the zero polynomial is the empty vector and `deg` returns `None` for it
//! (the -infinity sentinel). Multiplication switches from schoolbook to
//! Karatsuba above a small threshold; multipoint evaluation and
//! interpolation use subproduct trees above a threshold and direct methods
//! below it.

use crate::field::{Fe, Rng, Zp};
use crate::{Error, Result};

const KARATSUBA_THRESHOLD: usize = 32;
const TREE_THRESHOLD: usize = 32;

/// Dense polynomial, coefficients ascending, canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: Fe) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `x` as a polynomial.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    /// Monomial `c * x^k`.
    pub fn monomial(c: Fe, k: usize) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Canonicalizes by stripping trailing zeros. Coefficients must already
    /// be reduced.
    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of degree `k` (0 beyond the stored length).
    pub fn coeff(&self, k: usize) -> Fe {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` encodes -infinity for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, 0 for the zero polynomial.
    pub fn lc(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn add(&self, zp: &Zp, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(zp.add(self.coeff(k), other.coeff(k)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, zp: &Zp, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(zp.sub(self.coeff(k), other.coeff(k)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, zp: &Zp) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| zp.neg(c)).collect())
    }

    pub fn scale(&self, zp: &Zp, c: Fe) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|&a| zp.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, zp: &Zp, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(mul_slices(zp, &self.coeffs, &other.coeffs))
    }

    pub fn monic(&self, zp: &Zp) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(zp, zp.inv_nz(self.lc()))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, zp: &Zp, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg().unwrap();
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = zp.inv_nz(d.lc());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = zp.mul(c, lc_inv);
            quo[k - dd] = q;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] = zp.sub(rem[k - dd + i], zp.mul(q, dc));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, zp: &Zp, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(zp, d)?.1)
    }

    /// Exact quotient; the division must leave no remainder.
    pub fn div_exact(&self, zp: &Zp, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(zp, d)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Horner evaluation.
    pub fn eval(&self, zp: &Zp, x: Fe) -> Fe {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = zp.add(zp.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, zp: &Zp) -> Poly {
        if self.coeffs.len() < 2 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| zp.mul(c, zp.reduce(i as u64 + 1)))
                .collect(),
        )
    }

    /// Uniformly random polynomial with `len` coefficients (degree < len
    /// after canonicalization).
    pub fn random(zp: &Zp, len: usize, rng: &mut Rng) -> Poly {
        Poly::from_coeffs((0..len).map(|_| rng.field_element(zp)).collect())
    }

    /// Uniformly random monic polynomial of exact degree `deg`.
    pub fn random_monic(zp: &Zp, deg: usize, rng: &mut Rng) -> Poly {
        let mut coeffs: Vec<Fe> = (0..deg).map(|_| rng.field_element(zp)).collect();
        coeffs.push(1);
        Poly { coeffs }
    }

    /// Space-separated ascending coefficients; the zero polynomial prints
    /// as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses space-separated coefficients; entries are reduced into the
    /// field and may carry a sign.
    pub fn from_text(zp: &Zp, s: &str) -> Result<Poly> {
        let mut coeffs = Vec::new();
        for tok in s.split_whitespace() {
            let v: i128 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
            coeffs.push(v.rem_euclid(zp.p() as i128) as u64);
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

fn mul_slices(zp: &Zp, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return mul_schoolbook(zp, a, b);
    }
    let half = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(a.len().min(half));
    let (b0, b1) = b.split_at(b.len().min(half));
    let z0 = mul_slices(zp, a0, b0);
    let z2 = if a1.is_empty() || b1.is_empty() {
        vec![]
    } else {
        mul_slices(zp, a1, b1)
    };
    let sa = add_slices(zp, a0, a1);
    let sb = add_slices(zp, b0, b1);
    let mut z1 = mul_slices(zp, &sa, &sb);
    for (i, &c) in z0.iter().enumerate() {
        z1[i] = zp.sub(z1[i], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        z1[i] = zp.sub(z1[i], c);
    }
    // with unbalanced halves the top of z1 cancels to zero; strip it so
    // the placement below stays within the product length
    while z1.last() == Some(&0) {
        z1.pop();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &c) in z0.iter().enumerate() {
        out[i] = zp.add(out[i], c);
    }
    for (i, &c) in z1.iter().enumerate() {
        out[i + half] = zp.add(out[i + half], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        out[i + 2 * half] = zp.add(out[i + 2 * half], c);
    }
    out
}

fn mul_schoolbook(zp: &Zp, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = zp.add(out[i + j], zp.mul(x, y));
        }
    }
    out
}

fn add_slices(zp: &Zp, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            zp.add(
                a.get(k).copied().unwrap_or(0),
                b.get(k).copied().unwrap_or(0),
            )
        })
        .collect()
}

/// Extended gcd: returns `(g, u, v)` with `g` monic, `u*a + v*b = g`.
pub fn xgcd(zp: &Zp, a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (Poly::one(), Poly::zero());
    let (mut v0, mut v1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(zp, &r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let nu = u0.sub(zp, &q.mul(zp, &u1));
        u0 = std::mem::replace(&mut u1, nu);
        let nv = v0.sub(zp, &q.mul(zp, &v1));
        v0 = std::mem::replace(&mut v1, nv);
    }
    let c = zp.inv_nz(r0.lc());
    Ok((r0.scale(zp, c), u0.scale(zp, c), v0.scale(zp, c)))
}

/// Monic gcd.
pub fn gcd(zp: &Zp, a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(zp, &r1)?;
        r0 = std::mem::replace(&mut r1, r);
    }
    Ok(r0.monic(zp))
}

/// Inverse of `c` modulo `mu`: the unique `r` with `r*c = 1 mod mu` and
/// `deg r < deg mu`. For a constant `mu` the quotient ring is trivial and
/// the result is 0.
pub fn mod_inverse(zp: &Zp, c: &Poly, mu: &Poly) -> Result<Poly> {
    if mu.is_zero() {
        return Err(Error::ZeroInput);
    }
    if mu.deg() == Some(0) {
        return Ok(Poly::zero());
    }
    let c_red = c.rem(zp, mu)?;
    if c_red.is_zero() {
        return Err(Error::NotCoprime);
    }
    let (g, u, _) = xgcd(zp, &c_red, mu)?;
    if g.deg() != Some(0) {
        return Err(Error::NotCoprime);
    }
    u.rem(zp, mu)
}

/// Subproduct tree over a point set: level 0 holds the factors `x - a_i`,
/// each higher level the products of adjacent pairs (an odd leftover is
/// carried up unchanged).
struct SubproductTree {
    levels: Vec<Vec<Poly>>,
}

impl SubproductTree {
    fn build(zp: &Zp, points: &[Fe]) -> Self {
        let leaves: Vec<Poly> = points
            .iter()
            .map(|&a| Poly::from_coeffs(vec![zp.neg(a), 1]))
            .collect();
        let mut levels = vec![leaves];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let mut next = Vec::with_capacity(prev.len().div_ceil(2));
            for chunk in prev.chunks(2) {
                if chunk.len() == 2 {
                    next.push(chunk[0].mul(zp, &chunk[1]));
                } else {
                    next.push(chunk[0].clone());
                }
            }
            levels.push(next);
        }
        SubproductTree { levels }
    }

    fn root(&self) -> &Poly {
        &self.levels.last().unwrap()[0]
    }

    /// Remainders of `f` modulo every leaf, by descending the tree.
    fn eval_down(&self, zp: &Zp, f: &Poly) -> Result<Vec<Fe>> {
        let top = f.rem(zp, self.root())?;
        let mut rems = vec![top];
        for level in (0..self.levels.len() - 1).rev() {
            let nodes = &self.levels[level];
            let mut next = Vec::with_capacity(nodes.len());
            for (i, node) in nodes.iter().enumerate() {
                // a sibling-less node equals its parent, so the remainder
                // from above is already reduced and passes through
                next.push(rems[i / 2].rem(zp, node)?);
            }
            rems = next;
        }
        Ok(rems.iter().map(|r| r.coeff(0)).collect())
    }

    /// Linear combination `sum_i c_i * (root / (x - a_i))` by ascending the
    /// tree with the same pairing.
    fn combine_up(&self, zp: &Zp, leaf_consts: &[Fe]) -> Poly {
        let mut acc: Vec<Poly> = leaf_consts.iter().map(|&c| Poly::constant(c)).collect();
        for level in 0..self.levels.len() - 1 {
            let nodes = &self.levels[level];
            let mut next = Vec::with_capacity(acc.len().div_ceil(2));
            let mut i = 0;
            while i < acc.len() {
                if i + 1 < acc.len() {
                    let left = acc[i].mul(zp, &nodes[i + 1]);
                    let right = acc[i + 1].mul(zp, &nodes[i]);
                    next.push(left.add(zp, &right));
                    i += 2;
                } else {
                    next.push(acc[i].clone());
                    i += 1;
                }
            }
            acc = next;
        }
        acc.into_iter().next().unwrap_or_else(Poly::zero)
    }
}

/// Product of `x - a_i` over all points.
pub fn linear_product(zp: &Zp, points: &[Fe]) -> Poly {
    if points.is_empty() {
        return Poly::one();
    }
    SubproductTree::build(zp, points).root().clone()
}

/// Evaluates `f` at every point.
pub fn multipoint_eval(zp: &Zp, f: &Poly, points: &[Fe]) -> Vec<Fe> {
    if points.len() < TREE_THRESHOLD || f.coeffs.len() < TREE_THRESHOLD {
        return points.iter().map(|&a| f.eval(zp, a)).collect();
    }
    let tree = SubproductTree::build(zp, points);
    tree.eval_down(zp, f).expect("tree nodes are nonzero")
}

/// Interpolates the unique polynomial of degree < `points.len()` through
/// the given values.
pub fn interpolate(zp: &Zp, points: &[Fe], values: &[Fe]) -> Result<Poly> {
    if points.is_empty() || points.len() != values.len() {
        return Err(Error::ShapeMismatch("interpolation data"));
    }
    let set: std::collections::HashSet<_> = points.iter().collect();
    if set.len() != points.len() {
        return Err(Error::DuplicatePoints);
    }
    if points.len() < TREE_THRESHOLD {
        return Ok(interpolate_newton(zp, points, values));
    }
    let tree = SubproductTree::build(zp, points);
    let deriv = tree.root().derivative(zp);
    let denoms = tree.eval_down(zp, &deriv)?;
    let consts: Vec<Fe> = values
        .iter()
        .zip(&denoms)
        .map(|(&v, &d)| zp.mul(v, zp.inv_nz(d)))
        .collect();
    Ok(tree.combine_up(zp, &consts))
}

fn interpolate_newton(zp: &Zp, points: &[Fe], values: &[Fe]) -> Poly {
    let mut result = Poly::zero();
    let mut basis = Poly::one();
    for (i, (&a, &v)) in points.iter().zip(values).enumerate() {
        let cur = result.eval(zp, a);
        let b = basis.eval(zp, a);
        let c = zp.mul(zp.sub(v, cur), zp.inv_nz(b));
        result = result.add(zp, &basis.scale(zp, c));
        if i + 1 < points.len() {
            basis = basis.mul(zp, &Poly::from_coeffs(vec![zp.neg(a), 1]));
        }
    }
    result
}

/// Rational reconstruction: finds `(f, g)`, not both zero, with
/// `g * big_f = f mod a`, `deg f <= df`, `deg g <= dg`, `gcd(f, g) = 1`,
/// and `g` monic. Runs the extended Euclidean algorithm on `(a, big_f)`
/// and stops at the first remainder of degree at most `df`.
pub fn rational_reconstruct(
    zp: &Zp,
    big_f: &Poly,
    a: &Poly,
    df: usize,
    dg: usize,
) -> Result<(Poly, Poly)> {
    let da = a.deg().ok_or(Error::ZeroInput)?;
    if big_f.deg() >= a.deg() {
        return Err(Error::ShapeMismatch("deg F must be below deg A"));
    }
    if df + dg + 1 > da {
        return Err(Error::ShapeMismatch("degree budget exceeds deg A"));
    }
    let (mut r0, mut r1) = (a.clone(), big_f.clone());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while r1.deg().is_some_and(|d| d > df) {
        let (q, r) = r0.divrem(zp, &r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let nt = t0.sub(zp, &q.mul(zp, &t1));
        t0 = std::mem::replace(&mut t1, nt);
    }
    let (f, g) = (r1, t1);
    if g.is_zero() {
        return Err(Error::NoSolution);
    }
    if g.deg().unwrap() > dg {
        return Err(Error::NoSolution);
    }
    if !f.is_zero() && gcd(zp, &f, &g)?.deg() != Some(0) {
        return Err(Error::NoSolution);
    }
    let c = zp.inv_nz(g.lc());
    Ok((f.scale(zp, c), g.scale(zp, c)))
}

/// Monic least common multiple via a balanced binary fold, keeping
/// intermediate degrees bounded by the final degree.
pub fn lcm_tree(zp: &Zp, polys: &[Poly]) -> Result<Poly> {
    if polys.is_empty() {
        return Err(Error::ZeroInput);
    }
    if polys.iter().any(Poly::is_zero) {
        return Err(Error::ZeroInput);
    }
    let mut layer: Vec<Poly> = polys.to_vec();
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        for chunk in layer.chunks(2) {
            if chunk.len() == 2 {
                let g = gcd(zp, &chunk[0], &chunk[1])?;
                next.push(chunk[0].mul(zp, &chunk[1]).div_exact(zp, &g)?);
            } else {
                next.push(chunk[0].clone());
            }
        }
        layer = next;
    }
    Ok(layer.pop().unwrap().monic(zp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert, prop_assert_eq, prop_assume, proptest};

    fn f7() -> Zp {
        Zp::new(7).unwrap()
    }

    fn poly(zp: &Zp, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| zp.reduce_i64(c)).collect())
    }

    #[test]
    fn mul_basic() {
        let zp = f7();
        // (x+1)(x-1) = x^2 - 1 = x^2 + 6 over F7
        let a = poly(&zp, &[1, 1]);
        let b = poly(&zp, &[-1, 1]);
        assert_eq!(a.mul(&zp, &b), poly(&zp, &[6, 0, 1]));
        assert_eq!(a.mul(&zp, &Poly::zero()), Poly::zero());
    }

    #[test]
    fn mul_matches_schoolbook_oracle() {
        let zp = Zp::new(1000003).unwrap();
        let mut rng = Rng::new(5);
        for _ in 0..20 {
            let a = Poly::random(&zp, 51, &mut rng);
            let b = Poly::random(&zp, 51, &mut rng);
            let expect = Poly::from_coeffs(mul_schoolbook(&zp, a.coeffs(), b.coeffs()));
            assert_eq!(a.mul(&zp, &b), expect);
        }
        // strongly unbalanced operand lengths
        for (la, lb) in [(40usize, 111usize), (111, 40), (33, 200), (65, 64)] {
            let a = Poly::random(&zp, la, &mut rng);
            let b = Poly::random(&zp, lb, &mut rng);
            let expect = Poly::from_coeffs(mul_schoolbook(&zp, a.coeffs(), b.coeffs()));
            assert_eq!(a.mul(&zp, &b), expect, "lengths {la} x {lb}");
        }
    }

    #[test]
    fn divrem_round_trip() {
        let zp = Zp::new(101).unwrap();
        let mut rng = Rng::new(8);
        for _ in 0..100 {
            let a = Poly::random(&zp, 20, &mut rng);
            let d = Poly::random(&zp, 1 + rng.below(10) as usize, &mut rng);
            if d.is_zero() {
                continue;
            }
            let (q, r) = a.divrem(&zp, &d).unwrap();
            assert!(r.deg() < d.deg());
            assert_eq!(q.mul(&zp, &d).add(&zp, &r), a);
        }
    }

    #[test]
    fn xgcd_simple_cases() {
        let zp = f7();
        let (g, u, v) = xgcd(&zp, &poly(&zp, &[0, 0, 1]), &poly(&zp, &[0, 1])).unwrap();
        assert_eq!(g, poly(&zp, &[0, 1]));
        assert_eq!(u, Poly::zero());
        assert_eq!(v, Poly::one());

        // (a, 0) -> (a/lc, 1/lc, 0)
        let a = poly(&zp, &[1, 3]);
        let (g, u, v) = xgcd(&zp, &a, &Poly::zero()).unwrap();
        assert_eq!(g, a.monic(&zp));
        assert_eq!(u, Poly::constant(zp.inv(3).unwrap()));
        assert_eq!(v, Poly::zero());

        assert_eq!(
            xgcd(&zp, &Poly::zero(), &Poly::zero()),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn xgcd_planted_common_factor() {
        let zp = Zp::new(101).unwrap();
        let mut rng = Rng::new(17);
        for _ in 0..50 {
            let f = Poly::random_monic(&zp, 1 + rng.below(4) as usize, &mut rng);
            let a = f.mul(&zp, &Poly::random(&zp, 6, &mut rng));
            let b = f.mul(&zp, &Poly::random(&zp, 6, &mut rng));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let (g, u, v) = xgcd(&zp, &a, &b).unwrap();
            assert!(
                g.rem(&zp, &f).unwrap().is_zero(),
                "planted factor divides g"
            );
            assert_eq!(u.mul(&zp, &a).add(&zp, &v.mul(&zp, &b)), g);
            assert!(a.rem(&zp, &g).unwrap().is_zero());
            assert!(b.rem(&zp, &g).unwrap().is_zero());
        }
    }

    #[test]
    fn multipoint_eval_trivial() {
        let zp = f7();
        assert_eq!(multipoint_eval(&zp, &Poly::x(), &[0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(
            multipoint_eval(&zp, &Poly::constant(5), &[0, 1, 2]),
            vec![5, 5, 5]
        );
    }

    #[test]
    fn multipoint_eval_matches_horner_oracle() {
        let zp = Zp::new(10007).unwrap();
        let mut rng = Rng::new(23);
        let f = Poly::random(&zp, 100, &mut rng);
        let points: Vec<Fe> = (0..64).collect();
        let fast = multipoint_eval(&zp, &f, &points);
        let horner: Vec<Fe> = points.iter().map(|&a| f.eval(&zp, a)).collect();
        assert_eq!(fast, horner);
    }

    #[test]
    fn interpolate_trivial() {
        let zp = f7();
        assert_eq!(interpolate(&zp, &[5], &[3]).unwrap(), Poly::constant(3));
        assert_eq!(
            interpolate(&zp, &[1, 1], &[0, 0]),
            Err(Error::DuplicatePoints)
        );
    }

    #[test]
    fn interpolate_recovers_low_degree_poly() {
        let zp = Zp::new(10007).unwrap();
        let mut rng = Rng::new(31);
        for delta in [1usize, 2, 5, 40, 80] {
            let f = Poly::random(&zp, delta, &mut rng);
            let points: Vec<Fe> = (0..delta as u64).collect();
            let values = multipoint_eval(&zp, &f, &points);
            assert_eq!(interpolate(&zp, &points, &values).unwrap(), f);
        }
    }

    #[test]
    fn mod_inverse_cases() {
        let zp = f7();
        let mu = Poly::random_monic(&zp, 4, &mut Rng::new(2));
        assert_eq!(mod_inverse(&zp, &Poly::one(), &mu).unwrap(), Poly::one());
        // x = 1 mod (x - 1)
        let m = poly(&zp, &[-1, 1]);
        assert_eq!(mod_inverse(&zp, &Poly::x(), &m).unwrap(), Poly::one());
        let mut rng = Rng::new(77);
        for _ in 0..50 {
            let mu = Poly::random_monic(&zp, 1 + rng.below(5) as usize, &mut rng);
            let c = Poly::random(&zp, 6, &mut rng);
            match mod_inverse(&zp, &c, &mu) {
                Ok(r) => {
                    assert_eq!(r.mul(&zp, &c).rem(&zp, &mu).unwrap(), Poly::one());
                    assert!(r.deg() < mu.deg());
                }
                Err(Error::NotCoprime) => {
                    let g = gcd(&zp, &c, &mu);
                    assert!(c.is_zero() || g.unwrap().deg() > Some(0));
                }
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }

    #[test]
    fn rational_reconstruct_exact_and_zero() {
        let zp = Zp::new(101).unwrap();
        let mut rng = Rng::new(4);
        let a = Poly::random_monic(&zp, 9, &mut rng);
        let f = Poly::random(&zp, 5, &mut rng); // deg <= 4 = df
        let (fr, gr) = rational_reconstruct(&zp, &f, &a, 4, 4).unwrap();
        assert_eq!((fr, gr), (f, Poly::one()));
        let (fz, gz) = rational_reconstruct(&zp, &Poly::zero(), &a, 4, 4).unwrap();
        assert_eq!((fz, gz), (Poly::zero(), Poly::one()));
    }

    #[test]
    fn rational_reconstruct_plant_and_recover() {
        let zp = Zp::new(10007).unwrap();
        let mut rng = Rng::new(6);
        let mut done = 0;
        while done < 500 {
            let df = rng.below(5) as usize;
            let dg = rng.below(5) as usize;
            let a = Poly::random_monic(&zp, df + dg + 1, &mut rng);
            let f = Poly::random(&zp, df + 1, &mut rng);
            let g = Poly::random_monic(&zp, dg, &mut rng);
            if gcd(&zp, &g, &a).unwrap().deg() != Some(0) {
                continue;
            }
            if f.is_zero() || gcd(&zp, &f, &g).unwrap().deg() != Some(0) {
                continue;
            }
            let ginv = mod_inverse(&zp, &g, &a).unwrap();
            let big_f = f.mul(&zp, &ginv).rem(&zp, &a).unwrap();
            let (fr, gr) = rational_reconstruct(&zp, &big_f, &a, df, dg).unwrap();
            // equality as a fraction: fr * g = gr * f
            assert_eq!(fr.mul(&zp, &g), gr.mul(&zp, &f));
            assert!(gr.is_monic());
            done += 1;
        }
    }

    #[test]
    fn lcm_tree_cases() {
        let zp = f7();
        let x = Poly::x();
        assert_eq!(lcm_tree(&zp, &[x.clone(), x.clone()]).unwrap(), x);
        let xp1 = poly(&zp, &[1, 1]);
        assert_eq!(
            lcm_tree(&zp, &[x.clone(), xp1]).unwrap(),
            poly(&zp, &[0, 1, 1])
        );
        assert_eq!(lcm_tree(&zp, &[x, Poly::zero()]), Err(Error::ZeroInput));
    }

    #[test]
    fn lcm_tree_matches_fold_oracle() {
        let zp = Zp::new(101).unwrap();
        let mut rng = Rng::new(12);
        let polys: Vec<Poly> = (0..20)
            .map(|_| loop {
                let f = Poly::random(&zp, 4, &mut rng);
                if !f.is_zero() {
                    break f;
                }
            })
            .collect();
        let fast = lcm_tree(&zp, &polys).unwrap();
        // left-fold oracle
        let mut acc = Poly::one();
        for f in &polys {
            let g = gcd(&zp, &acc, f).unwrap();
            acc = acc.mul(&zp, f).div_exact(&zp, &g).unwrap();
        }
        assert_eq!(fast, acc.monic(&zp));
        for f in &polys {
            assert!(fast.rem(&zp, f).unwrap().is_zero());
        }
    }

    #[test]
    fn text_round_trip() {
        let zp = f7();
        let f = poly(&zp, &[1, 0, 3]);
        assert_eq!(f.to_text(), "1 0 3");
        assert_eq!(Poly::from_text(&zp, "1 0 3").unwrap(), f);
        assert_eq!(Poly::from_text(&zp, "0").unwrap(), Poly::zero());
        assert_eq!(Poly::from_text(&zp, "-1 8").unwrap(), poly(&zp, &[6, 1]));
    }

    proptest! {
        #[test]
        fn interpolation_inverts_evaluation(seed in 0u64..500, n in 1usize..60) {
            let zp = Zp::new(10007).unwrap();
            let mut rng = Rng::new(seed);
            let f = Poly::random(&zp, n, &mut rng);
            let points = crate::field::sample_distinct_subset(zp.p(), n, &mut rng).unwrap();
            let values = multipoint_eval(&zp, &f, &points);
            prop_assert_eq!(interpolate(&zp, &points, &values).unwrap(), f);
        }

        #[test]
        fn bezout_identity_holds(seed in 0u64..500) {
            let zp = Zp::new(101).unwrap();
            let mut rng = Rng::new(seed);
            let a = Poly::random(&zp, 8, &mut rng);
            let b = Poly::random(&zp, 8, &mut rng);
            prop_assume!(!a.is_zero() || !b.is_zero());
            let (g, u, v) = xgcd(&zp, &a, &b).unwrap();
            prop_assert_eq!(u.mul(&zp, &a).add(&zp, &v.mul(&zp, &b)), g.clone());
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&zp, &g).unwrap().is_zero());
            prop_assert!(b.rem(&zp, &g).unwrap().is_zero());
        }
    }
}
