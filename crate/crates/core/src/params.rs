//! Intersection arrays and the full table of intersection numbers.
//!
//! An array `{b_0,...,b_{D-1}; c_1,...,c_D}` determines every `p^h_ij`
//! through the three-term recursion obtained from `A(A_i A_j) = (A A_i) A_j`.
//! The table is seeded with `p^h_0j` and `p^h_1j` and filled by ascending
//! `i`; every intermediate value must be a nonnegative integer, otherwise the
//! array is rejected as infeasible.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{BigInt, Rational};

/// A validated intersection array together with its derived quantities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    diameter: usize,
    /// `b_0..b_D` with `b_D = 0`.
    b: Vec<i64>,
    /// `c_0..c_D` with `c_0 = 0`.
    c: Vec<i64>,
    /// `a_0..a_D`.
    a: Vec<i64>,
    /// Valencies `k_0..k_D`.
    valencies: Vec<BigInt>,
    order: BigInt,
}

/// Outcome of checking an array or a table against its structural rules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl FeasibilityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, rule: &'static str, detail: String) {
        self.violations.push(Violation { rule, detail });
    }

    fn into_result(self) -> Result<()> {
        if self.ok() {
            Ok(())
        } else {
            Err(Error::Feasibility(self))
        }
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}: {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

impl IntersectionArray {
    /// Validate `b = [b_0..b_{D-1}]`, `c = [c_1..c_D]`.
    pub fn new(b: &[i64], c: &[i64]) -> Result<Self> {
        if b.len() != c.len() {
            return Err(Error::Parse(format!(
                "{} b-values but {} c-values",
                b.len(),
                c.len()
            )));
        }
        let d = b.len();
        if d < 3 {
            return Err(Error::Diameter(d));
        }
        let mut bb = b.to_vec();
        bb.push(0);
        let mut cc = Vec::with_capacity(d + 1);
        cc.push(0);
        cc.extend_from_slice(c);
        let k = bb[0];
        let a: Vec<i64> = (0..=d).map(|i| k - bb[i] - cc[i]).collect();

        let mut report = FeasibilityReport::default();
        for (i, &bi) in bb.iter().enumerate().take(d) {
            if bi <= 0 {
                report.push("b-positive", format!("b_{i} = {bi} must be positive"));
            }
        }
        for (i, &ci) in cc.iter().enumerate().skip(1) {
            if ci <= 0 {
                report.push("c-positive", format!("c_{i} = {ci} must be positive"));
            }
        }
        if cc[1] != 1 {
            report.push("c1-one", format!("c_1 = {} must equal 1", cc[1]));
        }
        for (i, &ai) in a.iter().enumerate() {
            if ai < 0 {
                report.push("a-nonnegative", format!("a_{i} = k - b_{i} - c_{i} = {ai} is negative"));
            }
        }
        if !report.ok() {
            return Err(Error::Feasibility(report));
        }

        let mut valencies = vec![BigInt::one()];
        for i in 0..d {
            let num = &valencies[i] * BigInt::from(bb[i]);
            let den = BigInt::from(cc[i + 1]);
            if !(&num % &den).is_zero() {
                report.push(
                    "valency-integral",
                    format!("k_{} = k_{i} * b_{i} / c_{} = {num}/{den} is not an integer", i + 1, i + 1),
                );
                break;
            }
            valencies.push(num / den);
        }
        report.into_result()?;
        let order = valencies.iter().sum();
        Ok(IntersectionArray {
            diameter: d,
            b: bb,
            c: cc,
            a,
            valencies,
            order,
        })
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// Valency `k = b_0`.
    pub fn k(&self) -> i64 {
        self.b[0]
    }

    /// `b_i`, zero outside `0..=D`.
    pub fn b(&self, i: isize) -> i64 {
        self.get(&self.b, i)
    }

    pub fn c(&self, i: isize) -> i64 {
        self.get(&self.c, i)
    }

    pub fn a(&self, i: isize) -> i64 {
        self.get(&self.a, i)
    }

    fn get(&self, v: &[i64], i: isize) -> i64 {
        if i < 0 {
            0
        } else {
            v.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn b_values(&self) -> &[i64] {
        &self.b[..self.diameter]
    }

    pub fn c_values(&self) -> &[i64] {
        &self.c[1..]
    }

    pub fn a_values(&self) -> &[i64] {
        &self.a
    }

    pub fn valency(&self, i: usize) -> &BigInt {
        &self.valencies[i]
    }

    pub fn valencies(&self) -> &[BigInt] {
        &self.valencies
    }

    /// Number of vertices `|X| = k_0 + ... + k_D`.
    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Canonical text form `b0,...,b_{D-1};c1,...,cD`.
    pub fn to_text(&self) -> String {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{};{}", join(self.b_values()), join(self.c_values()))
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

impl core::str::FromStr for IntersectionArray {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_array(s)
    }
}

/// Parse `"b0,b1,...,b_{D-1};c1,...,cD"`. Whitespace is ignored and a
/// surrounding pair of braces is accepted.
pub fn parse_array(text: &str) -> Result<IntersectionArray> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(&compact);
    let mut halves = body.split(';');
    let (Some(bs), Some(cs), None) = (halves.next(), halves.next(), halves.next()) else {
        return Err(Error::Parse(format!(
            "expected exactly one ';' separating b- and c-values in {text:?}"
        )));
    };
    let b = parse_list(bs)?;
    let c = parse_list(cs)?;
    IntersectionArray::new(&b, &c)
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    if s.is_empty() {
        return Err(Error::Parse("empty value list".into()));
    }
    s.split(',')
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("{t:?} is not an integer")))
        })
        .collect()
}

/// Why an array fails primitivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primitivity {
    Primitive,
    Bipartite,
    Antipodal,
    BipartiteAntipodal,
    /// An odd cycle of composite length `n`: for a divisor `d` of `n` the
    /// distance-`d` graph splits into `d` cycles of length `n / d`.
    CompositeCycle,
}

impl Primitivity {
    pub fn is_primitive(self) -> bool {
        self == Primitivity::Primitive
    }

    pub fn describe(self) -> &'static str {
        match self {
            Primitivity::Primitive => "primitive",
            Primitivity::Bipartite => "bipartite",
            Primitivity::Antipodal => "antipodal",
            Primitivity::BipartiteAntipodal => "bipartite and antipodal",
            Primitivity::CompositeCycle => "cycle of composite length",
        }
    }
}

/// Classify by the bipartite / antipodal dichotomy, which is exact for
/// valency at least 3. A cycle `C_n` is primitive exactly when `n` is prime.
pub fn primitivity(arr: &IntersectionArray) -> Primitivity {
    let d = arr.diameter();
    if arr.k() == 2 {
        // C_n with n = 2D (bipartite, antipodal) or 2D + 1.
        let n = 2 * d + 1;
        return if arr.order() % BigInt::from(2) == BigInt::zero() {
            Primitivity::BipartiteAntipodal
        } else if (3..n).take_while(|p| p * p <= n).any(|p| n.is_multiple_of(p)) {
            Primitivity::CompositeCycle
        } else {
            Primitivity::Primitive
        };
    }
    let bipartite = arr.a_values().iter().all(|&a| a == 0);
    let antipodal = (0..=d)
        .filter(|&i| i != d / 2)
        .all(|i| arr.b(i as isize) == arr.c((d - i) as isize));
    match (bipartite, antipodal) {
        (false, false) => Primitivity::Primitive,
        (true, false) => Primitivity::Bipartite,
        (false, true) => Primitivity::Antipodal,
        (true, true) => Primitivity::BipartiteAntipodal,
    }
}

pub fn is_primitive(arr: &IntersectionArray) -> bool {
    primitivity(arr).is_primitive()
}

/// The intersection numbers `p^h_ij` for `0 <= h, i, j <= D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterTable {
    dim: usize,
    p: Vec<BigInt>,
    zero: BigInt,
}

impl ParameterTable {
    pub fn diameter(&self) -> usize {
        self.dim - 1
    }

    /// `p^h_ij`; zero when any index lies outside `0..=D`.
    pub fn p(&self, h: usize, i: usize, j: usize) -> &BigInt {
        if h >= self.dim || i >= self.dim || j >= self.dim {
            return &self.zero;
        }
        &self.p[(h * self.dim + i) * self.dim + j]
    }

    /// Signed-index variant for formulas that step past the edges.
    pub fn ps(&self, h: isize, i: isize, j: isize) -> BigInt {
        if h < 0 || i < 0 || j < 0 {
            return BigInt::zero();
        }
        self.p(h as usize, i as usize, j as usize).clone()
    }

    fn set(&mut self, h: usize, i: usize, j: usize, v: BigInt) {
        let idx = (h * self.dim + i) * self.dim + j;
        self.p[idx] = v;
    }

    /// Check every structural identity of the table against `arr`.
    pub fn check_invariants(&self, arr: &IntersectionArray) -> FeasibilityReport {
        let mut report = FeasibilityReport::default();
        let d = self.diameter();
        let k = arr.valencies();
        for h in 0..=d {
            for i in 0..=d {
                for j in 0..=d {
                    let v = self.p(h, i, j);
                    if v.is_negative() {
                        report.push("nonnegative", format!("p^{h}_{i}{j} = {v}"));
                    }
                    if h == 0 && *v != if i == j { k[i].clone() } else { BigInt::zero() } {
                        report.push("p0ij", format!("p^0_{i}{j} = {v}"));
                    }
                    if i == 0 && *v != BigInt::from((h == j) as u8) {
                        report.push("ph0j", format!("p^{h}_0{j} = {v}"));
                    }
                    if v != self.p(h, j, i) {
                        report.push("symmetry", format!("p^{h}_{i}{j} != p^{h}_{j}{i}"));
                    }
                    let x = &k[h] * v;
                    if x != &k[i] * self.p(i, h, j) || x != &k[j] * self.p(j, i, h) {
                        report.push(
                            "valency-balance",
                            format!("k_h p^h_ij != k_i p^i_hj or k_j p^j_ih at ({h},{i},{j})"),
                        );
                    }
                    let mut s = [h, i, j];
                    s.sort_unstable();
                    if s[2] > s[0] + s[1] && !v.is_zero() {
                        report.push("triangle-zero", format!("p^{h}_{i}{j} = {v} should vanish"));
                    }
                    if s[2] == s[0] + s[1] && v.is_zero() {
                        report.push("triangle-boundary", format!("p^{h}_{i}{j} should be nonzero"));
                    }
                }
                let row: BigInt = (0..=d).map(|j| self.p(h, i, j)).sum();
                if row != k[i] {
                    report.push("row-sum", format!("sum_j p^{h}_{i}j = {row} != k_{i}"));
                }
            }
        }
        report
    }
}

/// Which index the recursion ascends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecursionAxis {
    /// Solve for `p^h_{i+1,j}` (the default order).
    First,
    /// Solve for `p^h_{i,j+1}` using `p^h_ij = p^h_ji` for the seeds.
    Second,
}

pub fn compute_parameter_table(arr: &IntersectionArray) -> Result<ParameterTable> {
    compute_parameter_table_along(arr, RecursionAxis::First)
}

pub fn compute_parameter_table_along(
    arr: &IntersectionArray,
    axis: RecursionAxis,
) -> Result<ParameterTable> {
    let d = arr.diameter();
    let dim = d + 1;
    let mut t = ParameterTable {
        dim,
        p: vec![BigInt::zero(); dim * dim * dim],
        zero: BigInt::zero(),
    };
    // Index helpers that put the ascending index in the `i` slot.
    let at = |t: &ParameterTable, h: isize, i: isize, j: isize| match axis {
        RecursionAxis::First => t.ps(h, i, j),
        RecursionAxis::Second => t.ps(h, j, i),
    };
    let put = |t: &mut ParameterTable, h: usize, i: usize, j: usize, v: BigInt| match axis {
        RecursionAxis::First => t.set(h, i, j, v),
        RecursionAxis::Second => t.set(h, j, i, v),
    };

    for h in 0..=d {
        put(&mut t, h, 0, h, BigInt::one());
        let hi = h as isize;
        if h >= 1 {
            put(&mut t, h, 1, h - 1, BigInt::from(arr.c(hi)));
        }
        put(&mut t, h, 1, h, BigInt::from(arr.a(hi)));
        if h < d {
            put(&mut t, h, 1, h + 1, BigInt::from(arr.b(hi)));
        }
    }

    let mut report = FeasibilityReport::default();
    for i in 1..d {
        let ii = i as isize;
        let c_next = BigInt::from(arr.c(ii + 1));
        for h in 0..=d {
            let hh = h as isize;
            for j in 0..=d {
                let jj = j as isize;
                let rhs = BigInt::from(arr.c(hh)) * at(&t, hh - 1, ii, jj)
                    + BigInt::from(arr.a(hh)) * at(&t, hh, ii, jj)
                    + BigInt::from(arr.b(hh)) * at(&t, hh + 1, ii, jj)
                    - BigInt::from(arr.a(ii)) * at(&t, hh, ii, jj)
                    - BigInt::from(arr.b(ii - 1)) * at(&t, hh, ii - 1, jj);
                if !(&rhs % &c_next).is_zero() {
                    report.push(
                        "integral",
                        format!(
                            "p^{h}_{{{},{j}}} = {}",
                            i + 1,
                            Rational::new(rhs.clone(), c_next.clone())
                        ),
                    );
                    continue;
                }
                let v = rhs / &c_next;
                if v.is_negative() {
                    report.push("nonnegative", format!("p^{h}_{{{},{j}}} = {v}", i + 1));
                }
                put(&mut t, h, i + 1, j, v);
            }
        }
        if !report.ok() {
            return Err(Error::Feasibility(report));
        }
    }
    let check = t.check_invariants(arr);
    check.into_result()?;
    Ok(t)
}

fn window(arr: &IntersectionArray, h: isize, j: isize, reach: isize) -> bool {
    let d = arr.diameter() as isize;
    (0..=d).contains(&h) && (0..=d).contains(&j) && (j - h).abs() <= reach
}

/// Closed form for `p^h_{2j}`, `|j - h| <= 2`; zero outside the window.
pub fn closed_form_p2(arr: &IntersectionArray, h: usize, j: usize) -> Rational {
    let (h, j) = (h as isize, j as isize);
    if !window(arr, h, j, 2) {
        return Rational::zero();
    }
    let a = |i: isize| BigInt::from(arr.a(i));
    let b = |i: isize| BigInt::from(arr.b(i));
    let c = |i: isize| BigInt::from(arr.c(i));
    let one = BigInt::one();
    let num = match j - h {
        -2 => c(h - 1) * c(h),
        -1 => c(h) * (a(h - 1) + a(h) - a(1)),
        0 => {
            c(h) * (b(h - 1) - &one)
                + a(h) * (a(h) - a(1) - &one)
                + b(h) * (c(h + 1) - &one)
        }
        1 => b(h) * (a(h + 1) + a(h) - a(1)),
        2 => b(h) * b(h + 1),
        _ => unreachable!(),
    };
    Rational::new(num, c(2))
}

/// Closed form for `p^h_{3j}`, `|j - h| <= 3`; zero outside the window.
pub fn closed_form_p3(arr: &IntersectionArray, h: usize, j: usize) -> Rational {
    let (h, j) = (h as isize, j as isize);
    if !window(arr, h, j, 3) {
        return Rational::zero();
    }
    let a = |i: isize| BigInt::from(arr.a(i));
    let b = |i: isize| BigInt::from(arr.b(i));
    let c = |i: isize| BigInt::from(arr.c(i));
    let one = BigInt::one();
    let c23 = c(2) * c(3);
    let over = |num: BigInt, den: &BigInt| Rational::new(num, den.clone());
    match j - h {
        -3 => over(c(h - 2) * c(h - 1) * c(h), &c23),
        -2 => over(
            (a(h) - a(2)) * c(h - 1) * c(h) + c(h - 1) * c(h) * (a(h - 2) + a(h - 1) - a(1)),
            &c23,
        ),
        -1 => {
            over(
                c(h - 1) * c(h) * (b(h - 2) - &one)
                    + c(h) * a(h - 1) * (a(h - 1) - a(1) - &one)
                    + c(h) * b(h - 1) * (c(h) - &one)
                    + c(h) * (a(h) - a(2)) * (a(h - 1) + a(h) - a(1))
                    + b(h) * c(h) * c(h + 1),
                &c23,
            ) - over(b(1) * c(h), &c(3))
        }
        0 => {
            over(
                c(h) * b(h - 1) * (a(h) + a(h - 1) - a(1))
                    + (a(h) - a(2))
                        * (c(h) * (b(h - 1) - &one)
                            + a(h) * (a(h) - a(1) - &one)
                            + b(h) * (c(h + 1) - &one))
                    + b(h) * c(h + 1) * (a(h) + a(h + 1) - a(1)),
                &c23,
            ) - over(b(1) * a(h), &c(3))
        }
        1 => {
            over(
                c(h) * b(h - 1) * b(h)
                    + b(h) * (a(h) - a(2)) * (a(h + 1) + a(h) - a(1))
                    + b(h)
                        * (c(h + 1) * (b(h) - &one)
                            + a(h + 1) * (a(h + 1) - a(1) - &one)
                            + b(h + 1) * (c(h + 2) - &one)),
                &c23,
            ) - over(b(1) * b(h), &c(3))
        }
        2 => over(
            (a(h) - a(2)) * b(h) * b(h + 1) + b(h) * b(h + 1) * (a(h + 2) + a(h + 1) - a(1)),
            &c23,
        ),
        3 => over(b(h) * b(h + 1) * b(h + 2), &c23),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h33() -> IntersectionArray {
        parse_array("6,4,2;1,2,3").unwrap()
    }

    fn c7() -> IntersectionArray {
        parse_array("2,1,1;1,1,1").unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn hamming_valencies() {
        let arr = h33();
        assert_eq!(ints(arr.valencies()), [1, 6, 12, 8]);
        assert_eq!(*arr.order(), BigInt::from(27));
        assert_eq!(arr.a_values(), &[0, 1, 2, 3]);
    }

    #[test]
    fn heptagon_valencies() {
        let arr = c7();
        assert_eq!(ints(arr.valencies()), [1, 2, 2, 2]);
        assert_eq!(*arr.order(), BigInt::from(7));
    }

    #[test]
    fn diameter_two_rejected() {
        assert_eq!(parse_array("6,4;1,2"), Err(Error::Diameter(2)));
    }

    #[test]
    fn whitespace_and_braces_accepted() {
        assert_eq!(parse_array(" { 6, 4,2 ; 1,2 ,3 } ").unwrap(), h33());
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "6,4,2", "6,4,2;1,2", "6,x,2;1,2,3", "6,4,2;1,2,3;4", "6,,2;1,2,3"] {
            assert!(matches!(parse_array(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn invariant_violations_listed() {
        let Err(Error::Feasibility(rep)) = parse_array("6,4,2;2,2,3") else {
            panic!("expected feasibility error");
        };
        assert!(rep.violations.iter().any(|v| v.rule == "c1-one"));
        let Err(Error::Feasibility(rep)) = parse_array("3,0,1;1,2,5") else {
            panic!("expected feasibility error");
        };
        let rules: Vec<_> = rep.violations.iter().map(|v| v.rule).collect();
        assert!(rules.contains(&"b-positive"));
        assert!(rules.contains(&"a-nonnegative"));
    }

    #[test]
    fn non_integral_valency_rejected() {
        let Err(Error::Feasibility(rep)) = parse_array("3,2,1;1,2,2") else {
            panic!("expected feasibility error");
        };
        assert_eq!(rep.violations[0].rule, "valency-integral");
    }

    #[test]
    fn unrealisable_table_rejected() {
        // Valencies are integral but p^2_{22} = -1.
        let arr = parse_array("3,1,1;1,1,1").unwrap();
        let Err(Error::Feasibility(rep)) = compute_parameter_table(&arr) else {
            panic!("expected feasibility error");
        };
        assert_eq!(rep.violations[0].rule, "nonnegative");
    }

    #[test]
    fn hamming_table_values() {
        let arr = h33();
        let t = compute_parameter_table(&arr).unwrap();
        assert_eq!(*t.p(2, 2, 2), BigInt::from(5));
        assert_eq!(*t.p(3, 1, 2), BigInt::from(arr.c(3)));
        assert_eq!(*t.p(0, 2, 2), BigInt::from(12));
        assert_eq!(closed_form_p2(&arr, 2, 2), Rational::from_integer(5.into()));
        assert_eq!(closed_form_p2(&arr, 3, 1), Rational::from_integer(3.into()));
    }

    #[test]
    fn heptagon_table_values() {
        let arr = c7();
        let t = compute_parameter_table(&arr).unwrap();
        // Gamma_3(0) = {3, 4} and Gamma_3(3) = {0, 6} are disjoint.
        assert_eq!(*t.p(3, 3, 3), BigInt::zero());
        assert_eq!(*t.p(3, 1, 3), BigInt::one());
        assert_eq!(closed_form_p2(&arr, 2, 2), Rational::zero());
        assert_eq!(
            closed_form_p3(&arr, 1, 2),
            Rational::from_integer(t.p(1, 3, 2).clone())
        );
    }

    #[test]
    fn closed_forms_at_boundaries() {
        let arr = h33();
        assert_eq!(closed_form_p2(&arr, 0, 2), Rational::from_integer(12.into()));
        assert_eq!(closed_form_p3(&arr, 0, 3), Rational::from_integer(8.into()));
        assert_eq!(closed_form_p3(&arr, 3, 0), Rational::one());
        assert_eq!(closed_form_p2(&arr, 0, 3), Rational::zero());
        assert_eq!(closed_form_p3(&arr, 3, 7), Rational::zero());
    }

    #[test]
    fn axis_swap_gives_same_table() {
        for text in ["6,4,2;1,2,3", "2,1,1;1,1,1", "8,6,4,2;1,2,3,4", "3,2,2,1;1,1,1,2"] {
            let arr = parse_array(text).unwrap();
            assert_eq!(
                compute_parameter_table_along(&arr, RecursionAxis::First).unwrap(),
                compute_parameter_table_along(&arr, RecursionAxis::Second).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn primitivity_classes() {
        assert_eq!(primitivity(&h33()), Primitivity::Primitive);
        assert_eq!(primitivity(&c7()), Primitivity::Primitive);
        assert_eq!(
            primitivity(&parse_array("3,2,1;1,2,3").unwrap()),
            Primitivity::BipartiteAntipodal
        );
        assert_eq!(
            primitivity(&parse_array("4,2,1;1,1,4").unwrap()),
            Primitivity::Antipodal
        );
        assert_eq!(
            primitivity(&parse_array("3,2,2;1,1,3").unwrap()),
            Primitivity::Bipartite
        );
        assert_eq!(
            primitivity(&parse_array("2,1,1;1,1,2").unwrap()),
            Primitivity::BipartiteAntipodal
        );
        assert_eq!(
            primitivity(&parse_array("2,1,1,1;1,1,1,1").unwrap()),
            Primitivity::CompositeCycle
        );
        assert_eq!(
            primitivity(&parse_array("2,1,1,1,1,1,1;1,1,1,1,1,1,1").unwrap()),
            Primitivity::CompositeCycle
        );
    }

    #[test]
    fn canonical_text_round_trip() {
        let arr = parse_array("{3, 2, 2, 1; 1, 1, 1, 2}").unwrap();
        assert_eq!(arr.to_text(), "3,2,2,1;1,1,1,2");
        assert_eq!(parse_array(&arr.to_text()).unwrap(), arr);
    }
}
