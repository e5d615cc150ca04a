//! Univariate polynomials with exact rational coefficients and Sturm chains.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::numeric::{int, sign_of, Rational, RationalInterval};

/// Coefficients stored in ascending order of degree, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn shift_up(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(Rational::zero());
        c.extend(self.coeffs.iter().cloned());
        Poly::new(c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation over intervals; encloses `{p(t) : t in x}`.
    pub fn eval_interval(&self, x: &RationalInterval) -> RationalInterval {
        if x.is_point() {
            return RationalInterval::point(self.eval(x.lo()));
        }
        let mut acc = RationalInterval::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &RationalInterval::point(c.clone());
        }
        acc
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&int(-1)));
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &Poly {
        &self.chain[0]
    }

    /// Whether the chain ends in a nonzero constant, i.e. `p` is squarefree.
    pub fn is_squarefree(&self) -> bool {
        self.chain.last().is_some_and(|q| q.degree() == Some(0))
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for q in &self.chain {
            let s = sign_of(&q.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}
