//! The integer Gram matrix `G` and the Q-polynomial decision.
//!
//! `G` is the matrix of trace inner products of the `4D` matrices
//!
//! ```text
//! W_i = A_2 E*_i A - A E*_i A_2     X_i = A_3 E*_i - E*_i A_3
//! Y_i = A_2 E*_i - E*_i A_2         Z_i = A E*_i - E*_i A
//! ```
//!
//! for `1 <= i <= D`. Its entries are closed expressions in the intersection
//! numbers, so `G` is available from the intersection array alone. For a
//! primitive graph, `det(G) = 0` exactly when the graph is Q-polynomial.
//!
//! Rows and columns are laid out family-major in the order `W, X, Y, Z`,
//! with the inner index `i = 1..D` running fastest.

use alloc::vec::Vec;
use core::time::Duration;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{characteristic_polynomial, exact_rank, IntMatrix};
use crate::numeric::{BigInt, Rational};
use crate::params::{compute_parameter_table, primitivity, IntersectionArray, ParameterTable, Primitivity};

/// One of the four commutator-like families indexing `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `A_2 E*_i A - A E*_i A_2`
    W,
    /// `A_3 E*_i - E*_i A_3`
    X,
    /// `A_2 E*_i - E*_i A_2`
    Y,
    /// `A E*_i - E*_i A`
    Z,
}

/// Canonical layout used by [`GramMatrix`].
pub const CANONICAL_ORDER: [Family; 4] = [Family::W, Family::X, Family::Y, Family::Z];

/// The layout of the explicit diameter-3 presentation: `X, Y, Z, W`.
pub const EXPLICIT_D3_ORDER: [Family; 4] = [Family::X, Family::Y, Family::Z, Family::W];

impl Family {
    pub fn position(self) -> usize {
        match self {
            Family::W => 0,
            Family::X => 1,
            Family::Y => 2,
            Family::Z => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::W => "W",
            Family::X => "X",
            Family::Y => "Y",
            Family::Z => "Z",
        }
    }

    /// The family as `sum sign * A_left * M * A_right`, where `M` is the
    /// diagonal matrix (`E*_i` or `A*_i`) in the middle.
    pub fn terms(self) -> [(i64, usize, usize); 2] {
        match self {
            Family::W => [(1, 2, 1), (-1, 1, 2)],
            Family::X => [(1, 3, 0), (-1, 0, 3)],
            Family::Y => [(1, 2, 0), (-1, 0, 2)],
            Family::Z => [(1, 1, 0), (-1, 0, 1)],
        }
    }
}

/// `<A_i E*_j A_h, A_r E*_s A_t> = sum_l k_l p^l_ir p^l_js p^l_ht`.
pub fn trace_inner_product(
    pt: &ParameterTable,
    (i, j, h): (usize, usize, usize),
    (r, s, t): (usize, usize, usize),
) -> BigInt {
    (0..=pt.diameter())
        .map(|l| pt.p(0, l, l) * pt.p(l, i, r) * pt.p(l, j, s) * pt.p(l, h, t))
        .sum()
}

/// `4D x 4D` symmetric integer matrix in the canonical `W, X, Y, Z` layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    diameter: usize,
    entries: IntMatrix,
}

impl GramMatrix {
    /// Wrap a matrix already in canonical layout.
    pub fn from_matrix(diameter: usize, entries: IntMatrix) -> Self {
        assert_eq!(entries.dim(), 4 * diameter);
        GramMatrix { diameter, entries }
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.entries
    }

    /// Row index of `(family, i)` with `1 <= i <= D`.
    pub fn index(&self, family: Family, i: usize) -> usize {
        debug_assert!((1..=self.diameter).contains(&i));
        family.position() * self.diameter + (i - 1)
    }

    pub fn entry(&self, f: Family, i: usize, g: Family, j: usize) -> &BigInt {
        &self.entries[(self.index(f, i), self.index(g, j))]
    }

    /// The `D x D` block for rows of family `f` and columns of family `g`.
    pub fn block(&self, f: Family, g: Family) -> IntMatrix {
        let d = self.diameter;
        IntMatrix::from_fn(d, |i, j| self.entry(f, i + 1, g, j + 1).clone())
    }

    /// The matrix re-laid out with families in `order`.
    pub fn in_order(&self, order: [Family; 4]) -> IntMatrix {
        let d = self.diameter;
        let perm: Vec<usize> = order
            .iter()
            .flat_map(|f| (1..=d).map(move |i| (*f, i)))
            .map(|(f, i)| self.index(f, i))
            .collect();
        self.entries.permuted(&perm)
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.is_symmetric()
    }
}

/// The named parameters of the array, read back from the table.
struct Named {
    k: BigInt,
    k2: BigInt,
    k3: BigInt,
    a1: BigInt,
    a2: BigInt,
    b1: BigInt,
    b2: BigInt,
    c2: BigInt,
    c3: BigInt,
}

impl Named {
    fn from_table(pt: &ParameterTable) -> Self {
        Named {
            k: pt.p(0, 1, 1).clone(),
            k2: pt.p(0, 2, 2).clone(),
            k3: pt.p(0, 3, 3).clone(),
            a1: pt.p(1, 1, 1).clone(),
            a2: pt.p(2, 1, 2).clone(),
            b1: pt.p(1, 1, 2).clone(),
            b2: pt.p(2, 1, 3).clone(),
            c2: pt.p(2, 1, 1).clone(),
            c3: pt.p(3, 1, 2).clone(),
        }
    }
}

/// Coefficient of `p^2_ij` in `phi / 2`, as the closed form
/// `k_2 (c_2 (b_1 - 1) - a_2 (a_1 + 1) + b_2 (c_3 - 1))`.
pub fn phi_p2_coefficient(pt: &ParameterTable) -> BigInt {
    let n = Named::from_table(pt);
    let one = BigInt::one();
    &n.k2 * (&n.c2 * (&n.b1 - &one) - &n.a2 * (&n.a1 + &one) + &n.b2 * (&n.c3 - &one))
}

/// The same coefficient written as `k_2 c_2 p^2_22 - k_2 a_2^2`, i.e.
/// `k_2 (c_2 (b_1 - 1) + a_2 (a_2 - a_1 - 1) + b_2 (c_3 - 1)) - k_2 a_2^2`.
pub fn phi_p2_coefficient_expanded(pt: &ParameterTable) -> BigInt {
    let n = Named::from_table(pt);
    let one = BigInt::one();
    &n.k2 * (&n.c2 * (&n.b1 - &one) + &n.a2 * (&n.a2 - &n.a1 - &one) + &n.b2 * (&n.c3 - &one))
        - &n.k2 * &n.a2 * &n.a2
}

/// Build `G` from the closed-form entry table.
pub fn build_gram(pt: &ParameterTable) -> GramMatrix {
    let d = pt.diameter();
    assert!(d >= 3, "G is defined for diameter at least 3");
    let n = Named::from_table(pt);
    let two = BigInt::from(2);
    let coef0 = &n.k * &n.k2;
    let coef1 = &n.k2 * &n.a1 * &n.a2 - &n.k * &n.b1 * &n.b1;
    let coef2 = phi_p2_coefficient(pt);
    let coef3 = -(&n.k3 * &n.c3 * &n.c3);
    let valency = |i: usize| pt.p(0, i, i);

    let mut g = GramMatrix {
        diameter: d,
        entries: IntMatrix::zeros(4 * d),
    };
    for i in 1..=d {
        for j in 1..=d {
            let p = |h: usize| pt.p(h, i, j);
            let delta_k = if i == j { valency(i).clone() } else { BigInt::zero() };
            let phi =
                &two * (&coef0 * p(0) + &coef1 * p(1) + &coef2 * p(2) + &coef3 * p(3));
            let diff = p(1) - p(2);
            let couple = |c: &BigInt| &two * &n.k2 * c * &diff;
            let diag = |weight: &BigInt, h: usize| &two * weight * (&delta_k - p(h));

            let mut put = |f: Family, g2: Family, v: BigInt| {
                let (r, c) = (g.index(f, i), g.index(g2, j));
                g.entries[(r, c)] = v;
            };
            put(Family::W, Family::W, phi);
            put(Family::W, Family::X, couple(&n.b2));
            put(Family::X, Family::W, couple(&n.b2));
            put(Family::W, Family::Y, couple(&n.a2));
            put(Family::Y, Family::W, couple(&n.a2));
            put(Family::W, Family::Z, couple(&n.c2));
            put(Family::Z, Family::W, couple(&n.c2));
            put(Family::X, Family::X, diag(&n.k3, 3));
            put(Family::Y, Family::Y, diag(&n.k2, 2));
            put(Family::Z, Family::Z, diag(&n.k, 1));
        }
    }
    g
}

/// Build `G` by expanding every inner product through
/// [`trace_inner_product`]; an independent route to the same matrix.
pub fn build_gram_by_expansion(pt: &ParameterTable) -> GramMatrix {
    let d = pt.diameter();
    let mut g = GramMatrix {
        diameter: d,
        entries: IntMatrix::zeros(4 * d),
    };
    for f in CANONICAL_ORDER {
        for h in CANONICAL_ORDER {
            for i in 1..=d {
                for j in 1..=d {
                    let mut v = BigInt::zero();
                    for (s1, l1, r1) in f.terms() {
                        for (s2, l2, r2) in h.terms() {
                            let t = trace_inner_product(pt, (l1, i, r1), (l2, j, r2));
                            v += BigInt::from(s1 * s2) * t;
                        }
                    }
                    let (r, c) = (g.index(f, i), g.index(h, j));
                    g.entries[(r, c)] = v;
                }
            }
        }
    }
    g
}

/// Exact `det(G)`.
pub fn exact_determinant(g: &GramMatrix) -> BigInt {
    crate::linalg::exact_determinant(g.matrix())
}

/// `e_r` = sum of all `r x r` principal minors, for `r = 0..=n`.
pub fn principal_minor_sums(m: &IntMatrix) -> Vec<BigInt> {
    characteristic_polynomial(m)
        .into_iter()
        .enumerate()
        .map(|(r, c)| if r % 2 == 0 { c } else { -c })
        .collect()
}

/// A symmetric integer matrix is positive semidefinite iff every `e_r >= 0`.
pub fn certify_psd(m: &IntMatrix) -> bool {
    assert!(m.is_symmetric(), "PSD certification needs a symmetric matrix");
    principal_minor_sums(m).iter().all(|e| !e.is_negative())
}

/// Structured diagnostics attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramDiagnostics {
    /// Largest absolute entry of each block, indexed `[row family][column family]`
    /// in canonical order.
    pub block_max_abs: [[BigInt; 4]; 4],
    pub rank: usize,
    pub psd: bool,
    /// Filled in by callers that can measure time.
    pub elapsed: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolyVerdict {
    pub det_g: BigInt,
    pub primitivity: Primitivity,
    /// `Some(det_g == 0)` for primitive graphs, `None` otherwise.
    pub is_q_polynomial: Option<bool>,
    pub gram: GramMatrix,
    pub diagnostics: GramDiagnostics,
}

impl QPolyVerdict {
    pub fn primitive(&self) -> bool {
        self.primitivity.is_primitive()
    }
}

/// Build `G` and record its determinant for any feasible array, primitive
/// or not.
pub fn assess(arr: &IntersectionArray) -> Result<QPolyVerdict> {
    let pt = compute_parameter_table(arr)?;
    let gram = build_gram(&pt);
    let det_g = exact_determinant(&gram);
    let prim = primitivity(arr);
    let block_max_abs = core::array::from_fn(|r| {
        core::array::from_fn(|c| gram.block(CANONICAL_ORDER[r], CANONICAL_ORDER[c]).max_abs())
    });
    let diagnostics = GramDiagnostics {
        block_max_abs,
        rank: exact_rank(gram.matrix()),
        psd: certify_psd(gram.matrix()),
        elapsed: None,
    };
    Ok(QPolyVerdict {
        is_q_polynomial: prim.is_primitive().then(|| det_g.is_zero()),
        det_g,
        primitivity: prim,
        gram,
        diagnostics,
    })
}

/// Decide Q-polynomiality; non-primitive arrays are refused with
/// [`Error::Hypothesis`].
pub fn decide_q_polynomial(arr: &IntersectionArray) -> Result<QPolyVerdict> {
    let verdict = assess(arr)?;
    if !verdict.primitive() {
        return Err(Error::Hypothesis {
            reason: verdict.primitivity.describe().into(),
            det_g: verdict.det_g,
        });
    }
    Ok(verdict)
}

/// The diameter-3 matrix written out block by block from the explicit
/// `a_i, b_i, c_i, k_i` formulas, in the `X, Y, Z, W` layout.
///
/// Every intersection number that appears is itself expanded through its
/// closed form in the array parameters, so this does not consult a
/// [`ParameterTable`]. Returns `None` if the diameter is not 3 or a closed
/// form fails to be integral.
pub fn explicit_d3_gram(arr: &IntersectionArray) -> Option<IntMatrix> {
    if arr.diameter() != 3 {
        return None;
    }
    let r = |v: i64| Rational::from_integer(BigInt::from(v));
    let (a1, a2, a3) = (r(arr.a(1)), r(arr.a(2)), r(arr.a(3)));
    let (b1, b2, b3) = (r(arr.b(1)), r(arr.b(2)), r(arr.b(3)));
    let (c2, c3) = (r(arr.c(2)), r(arr.c(3)));
    let k = r(arr.k());
    let k2 = Rational::from_integer(arr.valency(2).clone());
    let k3 = Rational::from_integer(arr.valency(3).clone());
    let one = Rational::one();
    let two = r(2);

    let p1_22 = &k2 * &a2 / &k;
    let p2_22 = (&c2 * (&b1 - &one) + &a2 * (&a2 - &a1 - &one) + &b2 * (&c3 - &one)) / &c2;
    let p3_22 = &c3 * (&a2 + &a3 - &a1) / &c2;
    let p1_23 = &k2 * &b2 / &k;
    let p2_23 = &b2 * (&a3 + &a2 - &a1) / &c2;
    let inner = &c3 * (&b2 - &one) + &a3 * (&a3 - &a1 - &one) - &b3;
    let p3_23 = &inner / &c2;
    let p1_33 = &k3 * &a3 / &k;
    let p2_33 = &b2 * &inner / (&c2 * &c3);
    let p3_33 = &c3 * &b2 * (&a3 + &a2 - &a1) / (&c2 * &c3)
        + (&a3 - &a2) * &inner / (&c2 * &c3)
        - &b1 * &a3 / &c3;

    let xx = [
        [&two * &k3 * &k, -&two * &k3 * &c3, -&two * &k3 * &a3],
        [-&two * &k3 * &c3, &two * &k3 * (&k2 - &p3_22), -&two * &k3 * &p3_23],
        [-&two * &k3 * &a3, -&two * &k3 * &p3_23, &two * &k3 * (&k3 - &p3_33)],
    ];
    let yy = [
        [&two * &k2 * (&k - &c2), -&two * &k2 * &a2, -&two * &k2 * &b2],
        [-&two * &k2 * &a2, &two * &k2 * (&k2 - &p2_22), -&two * &k2 * &p2_23],
        [-&two * &k2 * &b2, -&two * &k2 * &p2_23, &two * &k2 * (&k3 - &p2_33)],
    ];
    let zz = [
        [&two * &k * (&k - &a1), -&two * &k * &b1, Rational::zero()],
        [-&two * &k * &b1, &two * &k * (&k2 - &p1_22), -&two * &k * &p1_23],
        [Rational::zero(), -&two * &k * &p1_23, &two * &k * (&k3 - &p1_33)],
    ];
    let coupling = |w: &Rational| {
        let f = &two * &k2 * w;
        [
            [&f * (&a1 - &c2), &f * (&b1 - &a2), -&f * &b2],
            [&f * (&b1 - &a2), &f * (&p1_22 - &p2_22), &f * (&p1_23 - &p2_23)],
            [-&f * &b2, &f * (&p1_23 - &p2_23), &f * (&p1_33 - &p2_33)],
        ]
    };
    let ss = coupling(&b2);
    let tt = coupling(&a2);
    let uu = coupling(&c2);

    let alpha = &k2 * &a1 * &a2 - &k * &b1 * &b1;
    let beta = &k2 * (&c2 * (&b1 - &one) + &a2 * (&a2 - &a1 - &one) + &b2 * (&c3 - &one))
        - &k2 * &a2 * &a2;
    let gamma = &k3 * &c3 * &c3;
    let w11 = &two * (&k * &k * &k2 + &alpha * &a1 + &beta * &c2);
    let w12 = &two * (&alpha * &b1 + &beta * &a2 - &k3 * &c3 * &c3 * &c3);
    let w13 = &two * (&beta * &b2 - &gamma * &a3);
    let w22 = &two * (&k * &k2 * &k2 + &alpha * &p1_22 + &beta * &p2_22 - &gamma * &p3_22);
    let w23 = &two * (&alpha * &p1_23 + &beta * &p2_23 - &gamma * &p3_23);
    let w33 = &two * (&k * &k2 * &k3 + &alpha * &p1_33 + &beta * &p2_33 - &gamma * &p3_33);
    let ww = [
        [w11, w12.clone(), w13.clone()],
        [w12, w22, w23.clone()],
        [w13, w23, w33],
    ];

    let zero3 = || -> [[Rational; 3]; 3] { Default::default() };
    let grid: [[[[Rational; 3]; 3]; 4]; 4] = [
        [xx, zero3(), zero3(), ss.clone()],
        [zero3(), yy, zero3(), tt.clone()],
        [zero3(), zero3(), zz, uu.clone()],
        [ss, tt, uu, ww],
    ];
    let mut out = IntMatrix::zeros(12);
    for (bi, row) in grid.iter().enumerate() {
        for (bj, block) in row.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    let v = &block[i][j];
                    if !v.is_integer() {
                        return None;
                    }
                    out[(3 * bi + i, 3 * bj + j)] = v.to_integer();
                }
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::parse_array;

    fn gram_of(text: &str) -> GramMatrix {
        let arr = parse_array(text).unwrap();
        build_gram(&compute_parameter_table(&arr).unwrap())
    }

    #[test]
    fn hamming_zz_corner() {
        let g = gram_of("6,4,2;1,2,3");
        assert_eq!(*g.entry(Family::Z, 1, Family::Z, 1), BigInt::from(60));
    }

    #[test]
    fn heptagon_zz_corner() {
        let g = gram_of("2,1,1;1,1,1");
        assert_eq!(*g.entry(Family::Z, 1, Family::Z, 1), BigInt::from(8));
    }

    #[test]
    fn cross_blocks_vanish() {
        for text in ["6,4,2;1,2,3", "3,2,2,1;1,1,1,2", "12,6,2;1,4,9"] {
            let g = gram_of(text);
            for (f, h) in [(Family::X, Family::Y), (Family::X, Family::Z), (Family::Y, Family::Z)] {
                assert!(g.block(f, h).max_abs().is_zero(), "{text} {f:?}{h:?}");
                assert!(g.block(h, f).max_abs().is_zero());
            }
            assert!(g.is_symmetric());
        }
    }

    #[test]
    fn expansion_route_agrees() {
        for text in ["6,4,2;1,2,3", "2,1,1,1;1,1,1,1", "3,2,2,1;1,1,1,2", "16,9,4,1;1,4,9,16"] {
            let pt = compute_parameter_table(&parse_array(text).unwrap()).unwrap();
            assert_eq!(build_gram(&pt), build_gram_by_expansion(&pt), "{text}");
        }
    }

    #[test]
    fn p2_coefficient_transcriptions_agree() {
        for text in ["6,4,2;1,2,3", "3,2,2,1;1,1,1,2", "5,4,2;1,1,4", "21,10,3;1,6,15"] {
            let pt = compute_parameter_table(&parse_array(text).unwrap()).unwrap();
            assert_eq!(phi_p2_coefficient(&pt), phi_p2_coefficient_expanded(&pt));
        }
    }

    #[test]
    fn explicit_layout_matches() {
        for text in ["6,4,2;1,2,3", "2,1,1;1,1,1", "5,4,2;1,1,4", "4,2,1;1,1,4"] {
            let arr = parse_array(text).unwrap();
            let g = build_gram(&compute_parameter_table(&arr).unwrap());
            assert_eq!(Some(g.in_order(EXPLICIT_D3_ORDER)), explicit_d3_gram(&arr), "{text}");
        }
        assert!(explicit_d3_gram(&parse_array("8,6,4,2;1,2,3,4").unwrap()).is_none());
    }

    #[test]
    fn psd_examples() {
        let mut m = IntMatrix::zeros(6);
        m[(0, 0)] = BigInt::from(1);
        m[(2, 2)] = BigInt::from(2);
        assert!(certify_psd(&m));
        let mut m = IntMatrix::zeros(6);
        m[(0, 1)] = BigInt::from(1);
        m[(1, 0)] = BigInt::from(1);
        assert!(!certify_psd(&m));
    }

    #[test]
    fn verdicts() {
        let v = decide_q_polynomial(&parse_array("6,4,2;1,2,3").unwrap()).unwrap();
        assert_eq!(v.is_q_polynomial, Some(true));
        assert!(v.det_g.is_zero());
        assert!(v.diagnostics.psd);
        assert!(v.diagnostics.rank < 12);

        let v = decide_q_polynomial(&parse_array("3,2,2,1;1,1,1,2").unwrap()).unwrap();
        assert_eq!(v.is_q_polynomial, Some(false));
        assert_eq!(v.diagnostics.rank, 16);

        let cube = decide_q_polynomial(&parse_array("3,2,1;1,2,3").unwrap());
        assert!(matches!(cube, Err(Error::Hypothesis { .. })));
    }
}
