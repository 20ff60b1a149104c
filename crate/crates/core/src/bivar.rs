//! Change of monomial order for zero-dimensional bivariate ideals.
//!
//! A minimal Gröbner basis for the degree-reverse-lexicographic order
//! (with x below y) is turned into a block-Toeplitz polynomial matrix M
//! whose rows represent the basis elements multiplied by powers of y. M
//! is weak Popov for the staircase shift, its determinant degree is the
//! ideal degree, and the row-reversed matrix has displacement rank at
//! most the number of basis elements, with explicit generators. The
//! leading principal submatrix of the HNF of M then yields the reduced
//! lexicographic basis, with the submatrix size doubled until the basis
//! is complete.

use crate::field::{Fe, Rng, Zp};
use crate::hnfcore::{hermite_submatrix, Branch, Cert, HnfOutcome};
use crate::modsolve::recommended_sample_size;
use crate::poly::Poly;
use crate::polymat::{IndexTuple, PolyMat};
use crate::structured::{Inverter, PolyGen};
use crate::{Error, Result};

/// Bivariate polynomial as x-coefficients of powers of y, canonical (no
/// trailing zero coefficient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivPoly {
    ycoeffs: Vec<Poly>,
}

impl BivPoly {
    pub fn zero() -> Self {
        BivPoly { ycoeffs: vec![] }
    }

    pub fn from_ycoeffs(mut ycoeffs: Vec<Poly>) -> Self {
        while ycoeffs.last().is_some_and(Poly::is_zero) {
            ycoeffs.pop();
        }
        BivPoly { ycoeffs }
    }

    pub fn ycoeffs(&self) -> &[Poly] {
        &self.ycoeffs
    }

    /// Coefficient of `y^i`, zero beyond the stored length.
    pub fn ycoeff(&self, i: usize) -> Poly {
        self.ycoeffs.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    /// Degree in y; `None` for zero.
    pub fn ydeg(&self) -> Option<usize> {
        self.ycoeffs.len().checked_sub(1)
    }

    /// Degree in x; `None` for zero.
    pub fn xdeg(&self) -> Option<usize> {
        self.ycoeffs.iter().filter_map(Poly::deg).max()
    }

    /// Multiplication by `y^k`.
    pub fn mul_ypow(&self, k: usize) -> BivPoly {
        if self.is_zero() {
            return BivPoly::zero();
        }
        let mut ycoeffs = vec![Poly::zero(); k];
        ycoeffs.extend_from_slice(&self.ycoeffs);
        BivPoly { ycoeffs }
    }

    pub fn add(&self, zp: &Zp, other: &BivPoly) -> BivPoly {
        let n = self.ycoeffs.len().max(other.ycoeffs.len());
        BivPoly::from_ycoeffs(
            (0..n)
                .map(|i| self.ycoeff(i).add(zp, &other.ycoeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, zp: &Zp) -> BivPoly {
        BivPoly {
            ycoeffs: self.ycoeffs.iter().map(|c| c.neg(zp)).collect(),
        }
    }

    pub fn eval(&self, zp: &Zp, x: Fe, y: Fe) -> Fe {
        let mut acc = 0;
        for c in self.ycoeffs.iter().rev() {
            acc = zp.add(zp.mul(acc, y), c.eval(zp, x));
        }
        acc
    }
}

/// True iff monomial `a` is below `b` in the degree-reverse-lexicographic
/// order with x below y: total degree decides, and at equal total degree
/// the smaller x-degree (larger y-degree) wins. Monomials are given as
/// `(y_exponent, x_exponent)` pairs.
pub fn drl_less(a: (usize, usize), b: (usize, usize)) -> bool {
    let ka = (a.0 + a.1, a.0);
    let kb = (b.0 + b.1, b.0);
    ka < kb
}

/// DRL-leading monomial of a nonzero polynomial, as
/// `(y_exponent, x_exponent)`.
pub fn drl_leading_monomial(f: &BivPoly) -> Result<(usize, usize)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // within a fixed y-exponent the largest monomial is the x-leading one
    let mut best: Option<(usize, usize)> = None;
    for (i, c) in f.ycoeffs.iter().enumerate() {
        let Some(d) = c.deg() else { continue };
        let cand = (i, d);
        if best.is_none_or(|b| drl_less(b, cand)) {
            best = Some(cand);
        }
    }
    Ok(best.expect("nonzero polynomial has a monomial"))
}

/// A minimal DRL basis, sorted by increasing y-degree of the leading
/// monomial. Validation happens in [`build_staircase`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrlBasis {
    pub polys: Vec<BivPoly>,
}

impl DrlBasis {
    pub fn new(polys: Vec<BivPoly>) -> Self {
        DrlBasis { polys }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// File format: first line `p ell`, then for each polynomial a line
    /// `ny` followed by `ny` coefficient lines (x-coefficients of
    /// y^0 .. y^{ny-1}).
    pub fn to_text(&self, zp: &Zp) -> String {
        let mut out = format!("{} {}\n", zp.p(), self.polys.len());
        for f in &self.polys {
            out.push_str(&format!("{}\n", f.ycoeffs.len()));
            for c in &f.ycoeffs {
                out.push_str(&c.to_text());
                out.push('\n');
            }
        }
        out
    }

    /// Parses the file format, returning the modulus alongside the basis.
    pub fn from_text(s: &str) -> Result<(Zp, DrlBasis)> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty basis file".into()))?;
        let fields: Vec<u64> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header field {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [p, ell] = fields[..] else {
            return Err(Error::Parse("basis header must be `p ell`".into()));
        };
        let zp = Zp::new(p)?;
        let mut polys = Vec::with_capacity(ell as usize);
        for _ in 0..ell {
            let ny: usize = lines
                .next()
                .ok_or_else(|| Error::Parse("basis file ended early".into()))?
                .trim()
                .parse()
                .map_err(|_| Error::Parse("bad y-coefficient count".into()))?;
            let mut ycoeffs = Vec::with_capacity(ny);
            for _ in 0..ny {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::Parse("basis file ended early".into()))?;
                ycoeffs.push(Poly::from_text(&zp, line)?);
            }
            polys.push(BivPoly::from_ycoeffs(ycoeffs));
        }
        Ok((zp, DrlBasis::new(polys)))
    }
}

/// Block structure of the matrix: the per-element row counts, their total
/// n, and the ideal degree D (the number of standard monomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    pub counts: Vec<usize>,
    pub n: usize,
    pub ideal_degree: usize,
}

/// Validates the shape of a minimal sorted DRL basis and computes the
/// block row counts: `n_i` is the leading-y-degree gap to the next
/// element, the last count pads so that every shifted row fits.
pub fn build_staircase(gb: &DrlBasis) -> Result<Staircase> {
    let ell = gb.len();
    if ell < 2 {
        return Err(Error::NotMinimalBasis("need at least two elements"));
    }
    let mut lms = Vec::with_capacity(ell);
    for f in &gb.polys {
        lms.push(drl_leading_monomial(f)?);
    }
    if lms.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::NotMinimalBasis(
            "leading y-degrees must strictly increase",
        ));
    }
    if lms[0].0 != 0 || lms[0].1 == 0 {
        return Err(Error::NotMinimalBasis(
            "first leading monomial must be a positive power of x",
        ));
    }
    if lms[ell - 1].1 != 0 {
        return Err(Error::NotMinimalBasis(
            "last leading monomial must be a power of y",
        ));
    }
    if gb.polys[ell - 1].ydeg() != Some(lms[ell - 1].0) {
        return Err(Error::NotMinimalBasis(
            "last element must not exceed its leading y-degree",
        ));
    }
    // minimality: no leading monomial divides another; with strictly
    // increasing y-degrees this is strictly decreasing x-degrees
    if lms.windows(2).any(|w| w[0].1 <= w[1].1) {
        return Err(Error::NotMinimalBasis(
            "leading x-degrees must strictly decrease",
        ));
    }
    let mut counts: Vec<usize> = (0..ell - 1).map(|i| lms[i + 1].0 - lms[i].0).collect();
    let ydeg_last = gb.polys[ell - 1].ydeg().unwrap();
    let pad = (0..ell - 1)
        .map(|i| (counts[i] + gb.polys[i].ydeg().unwrap()) as i64 - ydeg_last as i64)
        .max()
        .unwrap();
    counts.push(pad.max(1) as usize);
    let n = counts.iter().sum();
    let ideal_degree = (0..ell - 1).map(|i| counts[i] * lms[i].1).sum();
    Ok(Staircase {
        counts,
        n,
        ideal_degree,
    })
}

/// The n x n matrix whose rows represent `y^k g_i` (k below the block
/// count of `g_i`) on the basis `(1, y, .., y^{n-1})`.
pub fn build_matrix(gb: &DrlBasis, st: &Staircase) -> PolyMat {
    let n = st.n;
    let mut m = PolyMat::zero(n, n);
    let mut row = 0;
    for (i, f) in gb.polys.iter().enumerate() {
        for k in 0..st.counts[i] {
            debug_assert!(k + f.ydeg().unwrap() < n, "shifted row fits");
            for (j, c) in f.ycoeffs.iter().enumerate() {
                *m.at_mut(row, k + j) = c.clone();
            }
            row += 1;
        }
    }
    debug_assert_eq!(row, n);
    m
}

/// The rotation `psi(f) = y (f - f_{n-1} y^{n-1}) + f_{n-1}`: the
/// y-coefficient vector cycles one step.
pub fn psi(f: &BivPoly, n: usize) -> Result<BivPoly> {
    if let Some(d) = f.ydeg() {
        if d >= n {
            return Err(Error::DegreeTooHigh { ydeg: d, bound: n });
        }
    }
    let mut ycoeffs = Vec::with_capacity(n);
    ycoeffs.push(f.ycoeff(n.saturating_sub(1)));
    for i in 0..n.saturating_sub(1) {
        ycoeffs.push(f.ycoeff(i));
    }
    Ok(BivPoly::from_ycoeffs(ycoeffs))
}

/// Displacement generators of the row-reversed matrix L*M: the only rows
/// of its displacement image that can be nonzero sit at the block
/// boundaries, so G consists of identity columns at those indices and the
/// columns of H hold the boundary polynomials. At most `ell` generator
/// columns, degree at most the ideal degree.
pub fn displacement_generators(zp: &Zp, gb: &DrlBasis, st: &Staircase) -> Result<PolyGen> {
    let ell = gb.len();
    let n = st.n;
    let mut g = PolyMat::zero(n, ell);
    let mut h = PolyMat::zero(n, ell);
    for t in 0..ell {
        // block index whose boundary this column describes
        let bi = ell - 1 - t;
        let row_idx: usize = st.counts[bi + 1..].iter().sum();
        *g.at_mut(row_idx, t) = Poly::one();
        let shifted = gb.polys[bi].mul_ypow(st.counts[bi] - 1);
        // -psi(y^{n_i - 1} g_i), preceded by the next block element when
        // this boundary has one above it
        let mut poly_t = psi(&shifted, n)?.neg(zp);
        if t >= 1 {
            poly_t = poly_t.add(zp, &gb.polys[bi + 1]);
        }
        for (j, c) in poly_t.ycoeffs.iter().enumerate() {
            *h.at_mut(j, t) = c.clone();
        }
    }
    PolyGen::new(g, h)
}

/// A (partial) reduced lexicographic basis read off HNF rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexBasis {
    pub polys: Vec<BivPoly>,
    /// True when the basis is complete (its last element is monic in y
    /// alone), hence a reduced lex Gröbner basis.
    pub complete: bool,
}

impl LexBasis {
    /// Leading monomials `(y_exponent, x_degree)` of the elements, in
    /// increasing y-degree.
    pub fn leading_profile(&self) -> Vec<(usize, usize)> {
        self.polys
            .iter()
            .map(|f| {
                let yd = f.ydeg().unwrap();
                (yd, f.ycoeff(yd).deg().unwrap())
            })
            .collect()
    }

    /// Number of monomials outside the staircase of the leading terms;
    /// `None` while the basis is incomplete (the count is infinite).
    pub fn standard_monomial_count(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        let prof = self.leading_profile();
        let mut count = 0usize;
        for t in 0..prof.len() - 1 {
            count += prof[t].1 * (prof[t + 1].0 - prof[t].0);
        }
        Some(count)
    }
}

/// Reads the lexicographic basis elements off the rows of an HNF basis:
/// row i contributes `sum_j B_ij y^j` whenever its diagonal degree drops
/// strictly below everything above it; extraction closes at the first
/// degree-zero diagonal (the pure power of y).
pub fn extract_lex(b: &PolyMat) -> LexBasis {
    let mut polys = Vec::new();
    let mut min_deg = usize::MAX;
    let mut complete = false;
    for i in 0..b.rows() {
        let d = b.at(i, i).deg().expect("HNF diagonal entries are nonzero");
        if d < min_deg {
            min_deg = d;
            polys.push(BivPoly::from_ycoeffs(
                (0..=i).map(|j| b.at(i, j).clone()).collect(),
            ));
            if d == 0 {
                complete = true;
                break;
            }
        }
    }
    LexBasis { polys, complete }
}

/// How the random sample set is sized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplePolicy {
    /// `8 Delta max(n(n+1), 2D)` from the headline probability bound.
    Recommended,
    Fixed(u64),
}

#[derive(Debug, Clone)]
pub struct ChangeOrderOptions {
    /// Starting submatrix size; doubled (capped at n) until the basis is
    /// complete. Defaults to 2, the shape-position size.
    pub m_hint: Option<usize>,
    pub sample: SamplePolicy,
}

impl Default for ChangeOrderOptions {
    fn default() -> Self {
        ChangeOrderOptions {
            m_hint: None,
            sample: SamplePolicy::Recommended,
        }
    }
}

/// Run metadata of a change of order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeOrderReport {
    pub counts: Vec<usize>,
    pub n: usize,
    pub ideal_degree: usize,
    pub alpha: usize,
    pub branch: Branch,
    pub cert: Cert,
    pub doublings: usize,
    pub m_final: usize,
    pub sample_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChangeOrderOutcome {
    Fail,
    Singular(Vec<Fe>),
    Ok {
        lex: LexBasis,
        report: ChangeOrderReport,
    },
}

/// Computes the reduced lexicographic Gröbner basis of the ideal
/// generated by a minimal sorted DRL basis. The determinant degree of the
/// constructed matrix is known exactly, so every returned basis is
/// certified; completeness is checked by counting standard monomials
/// against the ideal degree and the submatrix size is doubled on a
/// shortfall.
pub fn change_order(
    zp: &Zp,
    gb: &DrlBasis,
    opts: &ChangeOrderOptions,
    inverter: &dyn Inverter,
    rng: &mut Rng,
) -> Result<ChangeOrderOutcome> {
    let st = build_staircase(gb)?;
    let gen = displacement_generators(zp, gb, &st)?;
    let n = st.n;
    let d = st.ideal_degree;
    let da = d + n;
    let delta = d + da + 1;
    let s_size = match opts.sample {
        SamplePolicy::Recommended => {
            let rec = recommended_sample_size(n, delta, d);
            if rec > zp.p() as u128 {
                return Err(Error::FieldTooSmall {
                    p: zp.p(),
                    needed: rec,
                });
            }
            rec as u64
        }
        SamplePolicy::Fixed(sz) => sz,
    };

    let mut m = opts.m_hint.unwrap_or(2).clamp(1, n);
    let mut doublings = 0;
    loop {
        let j = IndexTuple::leading(m, n)?;
        let out = hermite_submatrix(zp, &gen, &j, d, da, s_size, inverter, rng)?;
        let res = match out {
            HnfOutcome::Fail => return Ok(ChangeOrderOutcome::Fail),
            HnfOutcome::Singular(points) => return Ok(ChangeOrderOutcome::Singular(points)),
            HnfOutcome::Ok(res) => res,
        };
        let lex = extract_lex(&res.b);
        if lex.standard_monomial_count() == Some(d) {
            return Ok(ChangeOrderOutcome::Ok {
                lex,
                report: ChangeOrderReport {
                    counts: st.counts.clone(),
                    n,
                    ideal_degree: d,
                    alpha: gen.alpha(),
                    branch: res.branch,
                    cert: res.cert,
                    doublings,
                    m_final: m,
                    sample_size: s_size,
                },
            });
        }
        if m == n {
            return Err(Error::LexIncomplete);
        }
        m = (2 * m).min(n);
        doublings += 1;
    }
}
