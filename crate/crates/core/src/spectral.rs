//! Spectral oracle: an independent route to the Q-polynomial decision.
//!
//! The eigenvalues `θ_0 > ... > θ_D` of the intersection matrix are the
//! roots of `v_{D+1}`. They are isolated with a Sturm chain over exact
//! rationals and refined by bisection; integer eigenvalues are detected and
//! kept as exact points. From the enclosures we derive `u_i(θ_j)`, the
//! multiplicities
//!
//! ```text
//! m_j = |X| / sum_i k_i u_i(θ_j)^2
//! ```
//!
//! and the Krein parameters
//!
//! ```text
//! q^h_ij = (m_i m_j / |X|) sum_l k_l u_l(θ_i) u_l(θ_j) u_l(θ_h)
//! ```
//!
//! Intervals can certify that a Krein parameter is nonzero but can only
//! suggest that it vanishes (`NumericZero` below a width threshold). The
//! exact `det(G)` test in [`crate::gram`] is the certified path; this module
//! exists to cross-check it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gram::{trace_inner_product, Family, GramMatrix, CANONICAL_ORDER};
use crate::linalg::IntervalMatrix;
use crate::numeric::{int, pow10_neg, sign_of, BigInt, Rational, RationalInterval};
use crate::params::{IntersectionArray, ParameterTable};
use crate::poly::{Poly, SturmChain};

/// The tridiagonal intersection matrix `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridiagonalB {
    diag: Vec<i64>,
    upper: Vec<i64>,
    lower: Vec<i64>,
}

impl TridiagonalB {
    pub fn new(arr: &IntersectionArray) -> Self {
        let d = arr.diameter() as isize;
        TridiagonalB {
            diag: (0..=d).map(|i| arr.a(i)).collect(),
            upper: (0..d).map(|i| arr.b(i)).collect(),
            lower: (1..=d).map(|i| arr.c(i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.diag[i]
        } else if j == i + 1 {
            self.upper[i]
        } else if i == j + 1 {
            self.lower[j]
        } else {
            0
        }
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.entry(i, j)).sum())
            .collect()
    }

    /// `det(x I - B)` by the continuant recurrence.
    pub fn characteristic_polynomial(&self) -> Poly {
        let mut prev = Poly::constant(Rational::one());
        let mut cur = Poly::x().sub(&Poly::constant(int(self.diag[0])));
        for i in 1..self.dim() {
            let lin = Poly::x().sub(&Poly::constant(int(self.diag[i])));
            let off = int(self.upper[i - 1] * self.lower[i - 1]);
            let next = lin.mul(&cur).sub(&prev.scale(&off));
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// The polynomial sequences `v_0..v_{D+1}` and `u_0..u_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeq {
    pub v: Vec<Poly>,
    pub u: Vec<Poly>,
}

pub fn build_poly_seq(arr: &IntersectionArray) -> PolySeq {
    let d = arr.diameter();
    let mut v = vec![Poly::constant(Rational::one()), Poly::x()];
    for i in 1..=d {
        let ii = i as isize;
        // c_{D+1} is taken to be 1.
        let c_next = if i == d { 1 } else { arr.c(ii + 1) };
        let rhs = v[i]
            .shift_up()
            .sub(&v[i].scale(&int(arr.a(ii))))
            .sub(&v[i - 1].scale(&int(arr.b(ii - 1))));
        v.push(rhs.scale(&Rational::new(BigInt::one(), BigInt::from(c_next))));
    }
    let u = (0..=d)
        .map(|i| v[i].scale(&Rational::new(BigInt::one(), arr.valency(i).clone())))
        .collect();
    PolySeq { v, u }
}

/// Numeric settings for the spectral path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralConfig {
    /// Intervals containing zero that are at most this wide count as zero.
    pub zero_width: Rational,
    /// Maximum number of refinement rounds before giving up.
    pub max_refinements: u32,
    /// Maximum bisection steps spent on a single eigenvalue.
    pub max_bisections: u32,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            zero_width: pow10_neg(30),
            max_refinements: 24,
            max_bisections: 4096,
        }
    }
}

/// Eigenvalue enclosures and the quantities derived from them.
#[derive(Clone, Debug)]
pub struct SpectralData {
    order: BigInt,
    valencies: Vec<BigInt>,
    polys: PolySeq,
    sturm: SturmChain,
    max_bisections: u32,
    /// `θ_0..θ_D`, sorted descending, pairwise disjoint.
    pub theta: Vec<RationalInterval>,
    /// `u_vals[i][j]` encloses `u_i(θ_j)`.
    pub u_vals: Vec<Vec<RationalInterval>>,
    /// `v_vals[i][j]` encloses `v_i(θ_j)`.
    pub v_vals: Vec<Vec<RationalInterval>>,
    /// Multiplicities `m_0..m_D`.
    pub m: Vec<RationalInterval>,
}

/// Bits of binary precision that resolve `width`, plus headroom.
fn precision_bits(width: &Rational) -> u32 {
    let num_bits = width.numer().bits() as i64;
    let den_bits = width.denom().bits() as i64;
    (den_bits - num_bits + 64).max(64) as u32
}

impl SpectralData {
    pub fn diameter(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn polys(&self) -> &PolySeq {
        &self.polys
    }

    pub fn max_theta_width(&self) -> Rational {
        self.theta
            .iter()
            .map(|t| t.width())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Shrink every eigenvalue enclosure to width at most `width` and
    /// recompute the derived enclosures.
    pub fn refine(&mut self, width: &Rational) -> Result<()> {
        let p = self.sturm.polynomial().clone();
        for t in self.theta.iter_mut() {
            if t.width() > *width {
                *t = refine_root(&p, &self.sturm, t.clone(), width, self.max_bisections)?;
            }
        }
        self.recompute(width);
        Ok(())
    }

    fn recompute(&mut self, width: &Rational) {
        let bits = precision_bits(width);
        let round = |x: RationalInterval| if x.is_point() { x } else { x.round_outward(bits) };
        let d = self.diameter();
        self.v_vals = (0..=d + 1)
            .map(|i| {
                self.theta
                    .iter()
                    .map(|t| round(self.polys.v[i].eval_interval(t)))
                    .collect()
            })
            .collect();
        self.u_vals = (0..=d)
            .map(|i| {
                let inv_k = Rational::new(BigInt::one(), self.valencies[i].clone());
                self.v_vals[i].iter().map(|x| x.scale(&inv_k)).collect()
            })
            .collect();
        let n = RationalInterval::from_bigint(&self.order);
        self.m = (0..=d)
            .map(|j| {
                let mut denom = RationalInterval::zero();
                for i in 0..=d {
                    let term = self.u_vals[i][j].square();
                    denom = denom + term.scale(&Rational::from_integer(self.valencies[i].clone()));
                }
                round(n.checked_div(&denom).expect("sum includes u_0^2 = 1"))
            })
            .collect();
    }

    /// Each enclosure holds exactly one root of `v_{D+1}` (Sturm count), or
    /// is an exact root.
    pub fn certify_isolation(&self) -> bool {
        let p = self.sturm.polynomial();
        self.theta.iter().all(|t| {
            if t.is_point() {
                p.eval(t.lo()).is_zero()
            } else {
                !p.eval(t.lo()).is_zero() && self.sturm.count_roots(t.lo(), t.hi()) == 1
            }
        }) && self.theta.windows(2).all(|w| w[1].hi() < w[0].lo())
    }

    /// `sum m_j` encloses `|X|` and `m_0` encloses 1.
    pub fn check_multiplicities(&self) -> bool {
        let total = self
            .m
            .iter()
            .fold(RationalInterval::zero(), |acc, x| acc + x);
        total.contains(&Rational::from_integer(self.order.clone())) && self.m[0].contains(&Rational::one())
    }

    /// Whether every `u_i(θ_j)`, `1 <= i, j <= D`, is certified different from 1.
    pub fn primitivity_witness(&self) -> bool {
        let one = Rational::one();
        let d = self.diameter();
        (1..=d).all(|i| (1..=d).all(|j| !self.u_vals[i][j].contains(&one)))
    }
}

/// Enclose one simple root inside `t` to width `width` by bisection.
fn refine_root(
    p: &Poly,
    sturm: &SturmChain,
    t: RationalInterval,
    width: &Rational,
    budget: u32,
) -> Result<RationalInterval> {
    let (mut lo, mut hi) = (t.lo().clone(), t.hi().clone());
    let mut steps = 0u32;
    // Move the lower end off a neighbouring root first.
    while p.eval(&lo).is_zero() {
        let mid = (&lo + &hi) / int(2);
        if p.eval(&mid).is_zero() {
            return Ok(RationalInterval::point(mid));
        }
        if sturm.count_roots(&mid, &hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::Precision(format!("could not separate root near {lo}")));
        }
    }
    let s_lo = sign_of(&p.eval(&lo));
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / int(2);
        let s = sign_of(&p.eval(&mid));
        if s == 0 {
            return Ok(RationalInterval::point(mid));
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::Precision(format!(
                "eigenvalue enclosure stuck at width {} after {budget} bisections",
                &hi - &lo
            )));
        }
    }
    Ok(RationalInterval::new(lo, hi))
}

/// Isolate the `D + 1` eigenvalues of `B` to the given width.
pub fn isolate_eigenvalues(arr: &IntersectionArray, width: &Rational) -> Result<SpectralData> {
    isolate_eigenvalues_with(arr, width, &SpectralConfig::default())
}

pub fn isolate_eigenvalues_with(
    arr: &IntersectionArray,
    width: &Rational,
    cfg: &SpectralConfig,
) -> Result<SpectralData> {
    assert!(width.is_positive(), "requested width must be positive");
    let d = arr.diameter();
    let polys = build_poly_seq(arr);
    let p = polys.v[d + 1].clone();
    let sturm = SturmChain::new(&p);
    if !sturm.is_squarefree() {
        return Err(Error::Internal("v_{D+1} has a repeated root".into()));
    }

    // All eigenvalues lie in [-k, k]; integer ones are exact.
    let k = arr.k();
    let mut found: Vec<RationalInterval> = Vec::new();
    let mut pending: Vec<(Rational, Rational)> = vec![(int(-k - 1), int(k))];
    let mut steps = 0u32;
    while let Some((a, b)) = pending.pop() {
        let count = sturm.count_roots(&a, &b);
        if count == 0 {
            continue;
        }
        if count == 1 {
            let lo_int: BigInt = a.floor().to_integer() + 1;
            let hi_int = b.floor().to_integer();
            let mut exact = None;
            let mut z = lo_int;
            while z <= hi_int {
                let zr = Rational::from_integer(z.clone());
                if p.eval(&zr).is_zero() {
                    exact = Some(zr);
                    break;
                }
                z += 1;
            }
            match exact {
                Some(z) => found.push(RationalInterval::point(z)),
                None => found.push(RationalInterval::new(a, b)),
            }
            continue;
        }
        steps += 1;
        if steps > cfg.max_bisections {
            return Err(Error::Precision("root isolation did not separate all eigenvalues".into()));
        }
        let mid = (&a + &b) / int(2);
        pending.push((a, mid.clone()));
        pending.push((mid, b));
    }
    if found.len() != d + 1 {
        return Err(Error::Internal(format!(
            "found {} eigenvalues, expected {}",
            found.len(),
            d + 1
        )));
    }
    // Bring every enclosure to the requested width.
    for t in found.iter_mut() {
        if !t.is_point() {
            *t = refine_root(&p, &sturm, t.clone(), width, cfg.max_bisections)?;
        }
    }
    found.sort_by_key(|t| core::cmp::Reverse(t.midpoint()));
    // Touching closed enclosures are pulled apart.
    let mut rounds = 0;
    while let Some(i) = (1..found.len()).find(|&i| found[i].hi() >= found[i - 1].lo()) {
        rounds += 1;
        if rounds > cfg.max_bisections {
            return Err(Error::Precision("could not separate eigenvalue enclosures".into()));
        }
        for idx in [i - 1, i] {
            let t = &found[idx];
            if !t.is_point() {
                let w = t.width() / int(2);
                found[idx] = refine_root(&p, &sturm, t.clone(), &w, cfg.max_bisections)?;
            }
        }
    }
    if found[0] != RationalInterval::from_int(k) {
        return Err(Error::Internal("largest eigenvalue is not k".into()));
    }

    let mut sd = SpectralData {
        order: arr.order().clone(),
        valencies: arr.valencies().to_vec(),
        polys,
        sturm,
        max_bisections: cfg.max_bisections,
        theta: found,
        u_vals: Vec::new(),
        v_vals: Vec::new(),
        m: Vec::new(),
    };
    sd.recompute(width);
    if !sd.check_multiplicities() {
        return Err(Error::Internal("multiplicities do not sum to |X|".into()));
    }
    Ok(sd)
}

/// How a Krein parameter enclosure was classified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroFlag {
    /// The enclosure excludes zero.
    CertNonzero,
    /// The enclosure contains zero and is no wider than the threshold.
    NumericZero(Rational),
    /// Contains zero but is still too wide to call.
    Indeterminate(Rational),
}

impl ZeroFlag {
    fn classify(x: &RationalInterval, zero_width: &Rational) -> Self {
        if !x.contains_zero() {
            ZeroFlag::CertNonzero
        } else if x.width() <= *zero_width {
            ZeroFlag::NumericZero(x.width())
        } else {
            ZeroFlag::Indeterminate(x.width())
        }
    }

    pub fn is_nonzero(&self) -> bool {
        matches!(self, ZeroFlag::CertNonzero)
    }
}

/// Krein parameter enclosures `q[h][i][j]` and their zero flags.
#[derive(Clone, Debug)]
pub struct KreinTable {
    dim: usize,
    q: Vec<RationalInterval>,
    flags: Vec<ZeroFlag>,
}

impl KreinTable {
    pub fn diameter(&self) -> usize {
        self.dim - 1
    }

    pub fn q(&self, h: usize, i: usize, j: usize) -> &RationalInterval {
        &self.q[(h * self.dim + i) * self.dim + j]
    }

    pub fn flag(&self, h: usize, i: usize, j: usize) -> &ZeroFlag {
        &self.flags[(h * self.dim + i) * self.dim + j]
    }

    pub fn has_indeterminate(&self) -> bool {
        self.flags.iter().any(|f| matches!(f, ZeroFlag::Indeterminate(_)))
    }

    /// No enclosure lies entirely below `-tolerance`.
    pub fn nonnegative_within(&self, tolerance: &Rational) -> bool {
        let floor = -tolerance.clone();
        self.q.iter().all(|x| x.hi() >= &floor)
    }
}

/// Krein enclosures at the current precision of `sd`, without refinement.
pub fn krein_table_at(sd: &SpectralData, pt: &ParameterTable, zero_width: &Rational) -> KreinTable {
    let d = sd.diameter();
    let dim = d + 1;
    let n_inv = Rational::new(BigInt::one(), sd.order.clone());
    let weights: Vec<Rational> = (0..dim)
        .map(|l| Rational::from_integer(pt.p(0, l, l).clone()))
        .collect();
    // The sum is symmetric in (h, i, j); compute each unordered triple once.
    let idx = |h: usize, i: usize, j: usize| (h * dim + i) * dim + j;
    let mut sums: Vec<Option<RationalInterval>> = vec![None; dim * dim * dim];
    for h in 0..dim {
        for i in h..dim {
            let pair: Vec<RationalInterval> =
                (0..dim).map(|l| (&sd.u_vals[l][h] * &sd.u_vals[l][i]).scale(&weights[l])).collect();
            for j in i..dim {
                let mut sum = RationalInterval::zero();
                for (p, u) in pair.iter().zip(&sd.u_vals) {
                    sum = sum + p * &u[j];
                }
                for (a, b, c) in [(h, i, j), (h, j, i), (i, h, j), (i, j, h), (j, h, i), (j, i, h)] {
                    sums[idx(a, b, c)] = Some(sum.clone());
                }
            }
        }
    }
    let fronts: Vec<RationalInterval> = (0..dim * dim)
        .map(|ij| (&sd.m[ij / dim] * &sd.m[ij % dim]).scale(&n_inv))
        .collect();
    let q: Vec<RationalInterval> = sums
        .into_iter()
        .enumerate()
        .map(|(e, s)| &fronts[e % (dim * dim)] * &s.expect("every triple is filled"))
        .collect();
    let flags = q.iter().map(|x| ZeroFlag::classify(x, zero_width)).collect();
    KreinTable { dim, q, flags }
}

/// Krein enclosures refined until every flag is decided.
///
/// `sd` is refined in place. Fails with [`Error::Precision`] when the
/// refinement budget runs out first.
pub fn krein_parameters(
    sd: &mut SpectralData,
    pt: &ParameterTable,
    cfg: &SpectralConfig,
) -> Result<KreinTable> {
    let mut table = krein_table_at(sd, pt, &cfg.zero_width);
    let mut rounds = 0;
    while table.has_indeterminate() {
        rounds += 1;
        if rounds > cfg.max_refinements {
            return Err(Error::Precision(format!(
                "Krein parameters undecided after {} refinements",
                cfg.max_refinements
            )));
        }
        // Zero enclosures are typically a modest multiple of the eigenvalue
        // width, so aim well below the threshold in one step.
        let target = (sd.max_theta_width() / Rational::from_integer(BigInt::one() << 32usize))
            .min(&cfg.zero_width / Rational::from_integer(BigInt::one() << 40usize));
        sd.refine(&target)?;
        table = krein_table_at(sd, pt, &cfg.zero_width);
    }
    Ok(table)
}

fn flag_is_zero(kt: &KreinTable, h: usize, i: usize, j: usize) -> Result<bool> {
    match kt.flag(h, i, j) {
        ZeroFlag::CertNonzero => Ok(false),
        ZeroFlag::NumericZero(_) => Ok(true),
        ZeroFlag::Indeterminate(w) => Err(Error::Precision(format!(
            "q^{h}_{i}{j} undecided at width {w}"
        ))),
    }
}

/// Check both vanishing conditions for an ordering `σ` (`σ[0] = 0`).
pub fn is_q_ordering(kt: &KreinTable, ordering: &[usize]) -> Result<bool> {
    let dim = kt.dim;
    if ordering.len() != dim {
        return Ok(false);
    }
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let mut s = [x, y, z];
                s.sort_unstable();
                let zero = flag_is_zero(kt, ordering[x], ordering[y], ordering[z])?;
                if s[2] > s[0] + s[1] && !zero {
                    return Ok(false);
                }
                if s[2] == s[0] + s[1] && zero {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The ordering that starts `E_0, E_t` and follows the tridiagonal pattern
/// of `q^h_{t,·}`, if it exists and passes both conditions.
pub fn ordering_from(kt: &KreinTable, t: usize) -> Result<Option<Vec<usize>>> {
    let dim = kt.dim;
    let mut ordering = vec![0, t];
    while ordering.len() < dim {
        let last = *ordering.last().unwrap();
        let mut next = None;
        for h in 0..dim {
            if ordering.contains(&h) || flag_is_zero(kt, h, t, last)? {
                continue;
            }
            if next.is_some() {
                return Ok(None);
            }
            next = Some(h);
        }
        match next {
            Some(h) => ordering.push(h),
            None => return Ok(None),
        }
    }
    Ok(is_q_ordering(kt, &ordering)?.then_some(ordering))
}

/// First Q-polynomial ordering found, trying `E_t` as `E_1` for `t = 1..D`.
pub fn find_q_ordering(kt: &KreinTable) -> Result<Option<Vec<usize>>> {
    for t in 1..kt.dim {
        if let Some(o) = ordering_from(kt, t)? {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

/// Every `t` for which `E_t` generates a Q-polynomial ordering.
pub fn q_polynomial_generators(kt: &KreinTable) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in 1..kt.dim {
        if ordering_from(kt, t)?.is_some() {
            out.push(t);
        }
    }
    Ok(out)
}

/// `S`, `S^{-1}` and the reduced `D x D` matrices built from them.
#[derive(Clone, Debug)]
pub struct TransitionMatrices {
    order: BigInt,
    /// `S_ij = m_j u_i(θ_j) / |X|`.
    pub s: IntervalMatrix,
    /// `(S^{-1})_ij = v_j(θ_i)`.
    pub s_inv: IntervalMatrix,
    /// `S_ij - S_0j` for `1 <= i, j <= D`.
    pub s_alt: IntervalMatrix,
    /// `(S^{-1})_ij` for `1 <= i, j <= D`.
    pub s_inv_alt: IntervalMatrix,
}

pub fn build_transition_matrices(sd: &SpectralData) -> TransitionMatrices {
    let d = sd.diameter();
    let n_inv = Rational::new(BigInt::one(), sd.order.clone());
    let s = IntervalMatrix::from_fn(d + 1, |i, j| (&sd.m[j] * &sd.u_vals[i][j]).scale(&n_inv));
    let s_inv = IntervalMatrix::from_fn(d + 1, |i, j| sd.v_vals[j][i].clone());
    let s_alt = IntervalMatrix::from_fn(d, |i, j| &s[(i + 1, j + 1)] - &s[(0, j + 1)]);
    let s_inv_alt = IntervalMatrix::from_fn(d, |i, j| s_inv[(i + 1, j + 1)].clone());
    TransitionMatrices {
        order: sd.order.clone(),
        s,
        s_inv,
        s_alt,
        s_inv_alt,
    }
}

impl TransitionMatrices {
    pub fn diameter(&self) -> usize {
        self.s_alt.dim()
    }

    /// `S S^{-1}` and `S^alt (S^{-1})^alt` both enclose the identity.
    pub fn inverse_pairs_hold(&self) -> bool {
        self.s.mul(&self.s_inv).contains_identity()
            && self.s_alt.mul(&self.s_inv_alt).contains_identity()
    }

    /// Every row of `S^alt` has an entry bounded away from zero.
    pub fn s_alt_rows_nonzero(&self) -> bool {
        let d = self.diameter();
        (0..d).all(|i| (0..d).any(|j| !self.s_alt[(i, j)].contains_zero()))
    }

    /// The `4D x 4D` block-diagonal matrix with four copies of `S^alt`.
    pub fn s_prime(&self) -> IntervalMatrix {
        let d = self.diameter();
        IntervalMatrix::from_fn(4 * d, |i, j| {
            if i / d == j / d {
                self.s_alt[(i % d, j % d)].clone()
            } else {
                RationalInterval::zero()
            }
        })
    }

    /// Enclosures of `det(S')` and `det(S^alt)^4` overlap.
    pub fn s_prime_identity_holds(&self) -> bool {
        let lhs = self.s_prime().determinant();
        let rhs = self.s_alt.determinant().powi(4);
        lhs.overlaps(&rhs)
    }

    /// `det(|X| S^alt)`, the determinant of the transition matrix between
    /// the `E*_i`-based and `A*_i`-based families.
    pub fn scaled_s_alt_determinant(&self) -> RationalInterval {
        let n = Rational::from_integer(self.order.clone());
        let d = self.diameter() as u32;
        self.s_alt
            .determinant()
            .scale(&num_traits::pow(n, d as usize))
    }
}

/// The `4 x 4` Gram matrices `B_1..B_D` of the `A*_t`-based families,
/// evaluated through the trace expansion with `A*_t = sum_l m_t u_l(θ_t) E*_l`.
pub fn build_b_blocks(sd: &SpectralData, pt: &ParameterTable) -> Vec<IntervalMatrix> {
    let d = sd.diameter();
    let dim = d + 1;
    // pair[f][g][l][l'] = <F(E*_l), G(E*_l')> as exact integers.
    let pair: Vec<Vec<Vec<BigInt>>> = CANONICAL_ORDER
        .iter()
        .flat_map(|f| CANONICAL_ORDER.iter().map(move |g| (*f, *g)))
        .map(|(f, g)| family_pair_table(pt, f, g))
        .collect();
    (1..=d)
        .map(|t| {
            let dual: Vec<RationalInterval> =
                (0..dim).map(|l| &sd.m[t] * &sd.u_vals[l][t]).collect();
            IntervalMatrix::from_fn(4, |r, c| {
                let table = &pair[r * 4 + c];
                let mut acc = RationalInterval::zero();
                for (l, row) in table.iter().enumerate() {
                    let mut inner = RationalInterval::zero();
                    for (l2, w) in row.iter().enumerate() {
                        if !w.is_zero() {
                            inner = inner + dual[l2].scale(&Rational::from_integer(w.clone()));
                        }
                    }
                    acc = acc + &dual[l] * &inner;
                }
                acc
            })
        })
        .collect()
}

fn family_pair_table(pt: &ParameterTable, f: Family, g: Family) -> Vec<Vec<BigInt>> {
    let dim = pt.diameter() + 1;
    (0..dim)
        .map(|l| {
            (0..dim)
                .map(|l2| {
                    let mut v = BigInt::zero();
                    for (s1, a1, b1) in f.terms() {
                        for (s2, a2, b2) in g.terms() {
                            v += BigInt::from(s1 * s2)
                                * trace_inner_product(pt, (a1, l, b1), (a2, l2, b2));
                        }
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Enclosure of `prod det(B_t) / det(|X| S^alt)^8`, which equals `det(G)`.
pub fn det_factorization_enclosure(
    tm: &TransitionMatrices,
    blocks: &[IntervalMatrix],
) -> Result<RationalInterval> {
    let prod = blocks
        .iter()
        .fold(RationalInterval::one(), |acc, b| &acc * &b.determinant());
    let denom = tm.scaled_s_alt_determinant().powi(8);
    Ok(prod.checked_div(&denom)?)
}

/// Whether the factorisation enclosure contains the exact `det(G)`.
///
/// Fails with [`Error::Precision`] when the enclosure is too wide to say
/// anything: it contains zero although `det(G) != 0`.
pub fn check_det_factorization(
    g: &GramMatrix,
    tm: &TransitionMatrices,
    blocks: &[IntervalMatrix],
) -> Result<bool> {
    let det = crate::gram::exact_determinant(g);
    let enclosure = det_factorization_enclosure(tm, blocks).map_err(|_| {
        Error::Precision("det(S^alt) enclosure contains zero".into())
    })?;
    if !det.is_zero() && enclosure.contains_zero() {
        return Err(Error::Precision(format!(
            "factorisation enclosure {enclosure} too wide to confirm det(G) = {det}"
        )));
    }
    Ok(enclosure.contains_int(&det))
}

/// Which eigenvalue indices have `det(B_t)` enclosures containing zero.
pub fn singular_blocks(blocks: &[IntervalMatrix]) -> Vec<usize> {
    blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.determinant().contains_zero())
        .map(|(i, _)| i + 1)
        .collect()
}

/// Everything the oracle computes for one array.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub spectral: SpectralData,
    pub krein: KreinTable,
    pub ordering: Option<Vec<usize>>,
}

/// Run the full oracle path at the given starting width.
pub fn run_oracle(
    arr: &IntersectionArray,
    pt: &ParameterTable,
    width: &Rational,
    cfg: &SpectralConfig,
) -> Result<OracleOutcome> {
    let mut spectral = isolate_eigenvalues_with(arr, width, cfg)?;
    let krein = krein_parameters(&mut spectral, pt, cfg)?;
    let ordering = find_q_ordering(&krein)?;
    Ok(OracleOutcome {
        spectral,
        krein,
        ordering,
    })
}
