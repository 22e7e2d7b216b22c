//! Multivariate Laurent polynomials over cyclotomic scalars: the character
//! ring `R(T)` of a rank-`r` torus.
//!
//! Exact division is the workhorse here: the Weyl character formula and the
//! fixed-point pushforward both end in a division that must be exact, and
//! `exact_div` certifies this by multiplying the candidate quotient back.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, Zero};

use crate::cyclotomic::{lcm, Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A finitely supported map from exponent vectors in `Z^r` to nonzero
/// cyclotomic coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Vec<i64>, Cyclotomic>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: Cyclotomic) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(vec![0; rank], c);
        }
        p
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Cyclotomic::one())
    }

    pub fn monomial(rank: usize, exp: &[i64], coeff: Cyclotomic) -> Self {
        assert_eq!(exp.len(), rank);
        let mut p = Self::zero(rank);
        if !coeff.is_zero() {
            p.terms.insert(exp.to_vec(), coeff);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Cyclotomic {
        self.terms.get(exp).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    fn insert_add(&mut self, exp: Vec<i64>, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.rank);
        }
        let mut out = LaurentPoly::zero(self.rank);
        for (e, a) in &self.terms {
            out.insert_add(e.clone(), a.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = LaurentPoly::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_add(e, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.rank);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `x^lambda -> x^(-lambda)`, coefficients unchanged.
    pub fn dual(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the zero exponent vector.
    pub fn constant_term(&self) -> Cyclotomic {
        self.coeff(&vec![0; self.rank])
    }

    /// `x^lambda -> x^(M lambda)` extended linearly.
    pub fn act_matrix(&self, m: &[Vec<i64>]) -> LaurentPoly {
        assert_eq!(m.len(), self.rank, "matrix size mismatch");
        let mut out = LaurentPoly::zero(self.rank);
        for (e, c) in &self.terms {
            let ne: Vec<i64> = m
                .iter()
                .map(|row| row.iter().zip(e).map(|(a, b)| a * b).sum())
                .collect();
            out.insert_add(ne, c.clone());
        }
        out
    }

    /// Evaluate at the torsion point with the given rational coordinates:
    /// `x^lambda -> exp(2*pi*i*<lambda, q>)` extended linearly.
    pub fn evaluate_at(&self, coords: &[Rational]) -> Cyclotomic {
        assert_eq!(coords.len(), self.rank, "rank mismatch");
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut pairing = Rational::zero();
            for (x, qi) in e.iter().zip(coords) {
                pairing += qi * BigRational::from_integer(BigInt::from(*x));
            }
            // pairing = num/den in lowest terms; value is zeta_den^num
            let den = pairing.denom().clone();
            let num = pairing.numer().mod_floor(&den);
            let den_u: u64 = den.to_string().parse().expect("denominator fits u64");
            let num_i: i64 = num.to_string().parse().expect("numerator fits i64");
            let root = Cyclotomic::root_of_unity(den_u, num_i);
            acc = acc.add_ref(&c.mul_ref(&root));
        }
        acc
    }

    /// The least common multiple of the conductors of all coefficients.
    pub fn coefficient_conductor(&self) -> u64 {
        self.terms
            .values()
            .fold(1u64, |acc, c| lcm(acc, c.conductor()))
    }

    fn lex_leading(&self) -> Option<(&Vec<i64>, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    /// Extreme exponent of the support under the lex order that compares
    /// coordinate `primary` first, then the remaining coordinates in order.
    fn extreme(&self, primary: usize, max: bool) -> Option<Vec<i64>> {
        let cmp = |a: &Vec<i64>, b: &Vec<i64>| -> Ordering {
            a[primary]
                .cmp(&b[primary])
                .then_with(|| a.cmp(b))
        };
        let mut best: Option<&Vec<i64>> = None;
        for e in self.terms.keys() {
            best = Some(match best {
                None => e,
                Some(cur) => {
                    let o = cmp(e, cur);
                    if (max && o == Ordering::Greater) || (!max && o == Ordering::Less) {
                        e
                    } else {
                        cur
                    }
                }
            });
        }
        best.cloned()
    }

    /// Exact division in the Laurent ring.  The quotient is found by lex
    /// long division constrained to the support box forced on any exact
    /// quotient, and certified by multiplying back.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        assert_eq!(self.rank, divisor.rank, "rank mismatch");
        if divisor.is_zero() {
            return Err(Error::Arithmetic("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.rank));
        }
        // For an exact quotient q, the extreme term of q*b under any lex
        // order is the sum of the extreme terms of q and b (no cancellation
        // at a unique extreme), which pins each coordinate of supp(q).
        let mut hi = vec![0i64; self.rank];
        let mut lo = vec![0i64; self.rank];
        for i in 0..self.rank {
            let a_max = self.extreme(i, true).unwrap();
            let b_max = divisor.extreme(i, true).unwrap();
            let a_min = self.extreme(i, false).unwrap();
            let b_min = divisor.extreme(i, false).unwrap();
            hi[i] = a_max[i] - b_max[i];
            lo[i] = a_min[i] - b_min[i];
            if hi[i] < lo[i] {
                return Err(Error::NotDivisible {
                    remainder: self.to_string(),
                });
            }
        }
        let (lead_exp, lead_coeff) = {
            let (e, c) = divisor.lex_leading().unwrap();
            (e.clone(), c.clone())
        };
        let lead_inv = lead_coeff.inverse()?;
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero(self.rank);
        while let Some((re, rc)) = rem.lex_leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i64> = re.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&hi).any(|(e, h)| e > h) || qe.iter().zip(&lo).any(|(e, l)| e < l) {
                return Err(Error::NotDivisible {
                    remainder: rem.to_string(),
                });
            }
            let qc = rc.mul_ref(&lead_inv);
            let qterm = LaurentPoly::monomial(self.rank, &qe, qc);
            rem = rem.sub(&qterm.mul(divisor));
            quo = quo.add(&qterm);
        }
        if &quo.mul(divisor) != self {
            return Err(Error::NotDivisible {
                remainder: self.sub(&quo.mul(divisor)).to_string(),
            });
        }
        Ok(quo)
    }
}

/// An unreduced quotient of Laurent polynomials, used for fixed-point sums
/// over a common denominator.  No gcd reduction is ever performed.
#[derive(Debug, Clone)]
pub struct RationalFn {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let rank = p.rank();
        RationalFn {
            num: p,
            den: LaurentPoly::one(rank),
        }
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    /// Collapse to a Laurent polynomial; errors when the quotient is inexact.
    pub fn into_polynomial(&self) -> Result<LaurentPoly> {
        self.num.exact_div(&self.den)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    write!(f, " x{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parse a sum of monomial terms.  Accepts the canonical `Display`
    /// rendering (`(coeff) x1^e1 x2^e2 + ...`) and the looser hand-written
    /// forms: coefficients without parentheses, implicit coefficient 1,
    /// `x1` for `x1^1`, and `*` between factors.  The rank must be supplied
    /// since the zero polynomial carries no exponent data.
    pub fn parse(s: &str, rank: usize) -> Result<LaurentPoly> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero(rank));
        }
        // split into terms at top-level `+` (parenthesized coefficients may
        // themselves contain `+`)
        let mut terms = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?
                }
                '+' if depth == 0 => {
                    terms.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse("unbalanced parenthesis".into()));
        }
        terms.push(&s[start..]);

        let mut out = LaurentPoly::zero(rank);
        for term in terms {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let (mut coeff, factors) = if let Some(rest) = term.strip_prefix('(') {
                let close = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?;
                (rest[..close].parse::<Cyclotomic>()?, &rest[close + 1..])
            } else {
                (Cyclotomic::one(), term)
            };
            let mut exp = vec![0i64; rank];
            for part in factors.split(|c: char| c.is_whitespace() || c == '*') {
                if part.is_empty() {
                    continue;
                }
                if let Some(body) = part.strip_prefix('x') {
                    let (var, pow) = match body.split_once('^') {
                        Some((v, p)) => (v, p),
                        None => (body, "1"),
                    };
                    let vi: usize = var
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable `{part}`")))?;
                    if vi == 0 || vi > rank {
                        return Err(Error::Parse(format!(
                            "variable index out of range `{part}`"
                        )));
                    }
                    exp[vi - 1] += pow
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent `{part}`")))?;
                } else {
                    // bare numeric coefficient factor
                    let c: Cyclotomic = part
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad factor `{part}`")))?;
                    coeff = coeff.mul_ref(&c);
                }
            }
            out.insert_add(exp, coeff);
        }
        Ok(out)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses assuming rank can be inferred from the highest variable index;
    /// prefer [`LaurentPoly::parse`] when the rank is known.
    fn from_str(s: &str) -> Result<Self> {
        let mut rank = 0usize;
        for piece in s.split_whitespace() {
            if let Some(body) = piece.strip_prefix('x') {
                if let Some((var, _)) = body.split_once('^') {
                    if let Ok(v) = var.parse::<usize>() {
                        rank = rank.max(v);
                    }
                }
            }
        }
        LaurentPoly::parse(s, rank.max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, &[e], Cyclotomic::one())
    }

    fn std_char() -> LaurentPoly {
        x(1).add(&x(-1))
    }

    #[test]
    fn convolution_square() {
        // (x + x^-1)^2 = x^2 + 2 + x^-2
        let sq = std_char().mul(&std_char());
        let expected = x(2)
            .add(&LaurentPoly::constant(1, Cyclotomic::from_i64(2)))
            .add(&x(-2));
        assert_eq!(sq, expected);
        assert_eq!(sq.constant_term(), Cyclotomic::from_i64(2));
    }

    #[test]
    fn exact_div_telescopes() {
        // (x^2 - x^-2) / (x - x^-1) = x + x^-1
        let a = x(2).sub(&x(-2));
        let b = x(1).sub(&x(-1));
        assert_eq!(a.exact_div(&b).unwrap(), std_char());
    }

    #[test]
    fn exact_div_rejects_inexact() {
        let a = x(1).add(&LaurentPoly::one(1));
        let b = x(1).sub(&LaurentPoly::one(1));
        match a.exact_div(&b) {
            Err(Error::NotDivisible { .. }) => {}
            other => panic!("expected divisibility error, got {other:?}"),
        }
    }

    #[test]
    fn dual_is_involution() {
        let a = std_char().mul(&std_char()).add(&x(3));
        assert_eq!(a.dual().dual(), a);
        assert_eq!(x(1).dual(), x(-1));
    }

    #[test]
    fn evaluate_at_quarter() {
        // x at q = 1/4 is i; (x + x^-1) at 1/4 is 0
        let quarter = vec![Rational::new(BigInt::from(1), BigInt::from(4))];
        assert_eq!(x(1).evaluate_at(&quarter), Cyclotomic::root_of_unity(4, 1));
        assert!(std_char().evaluate_at(&quarter).is_zero());
        // any a at q = 0 is the coefficient sum
        let zero_pt = vec![Rational::zero()];
        assert_eq!(std_char().evaluate_at(&zero_pt), Cyclotomic::from_i64(2));
    }

    #[test]
    fn display_parse_round_trip() {
        let p = LaurentPoly::monomial(2, &[2, -1], Cyclotomic::root_of_unity(4, 1))
            .add(&LaurentPoly::constant(2, Cyclotomic::from_i64(-3)))
            .add(&LaurentPoly::monomial(2, &[0, 5], Cyclotomic::one()));
        let s = p.to_string();
        assert_eq!(LaurentPoly::parse(&s, 2).unwrap(), p);
        assert_eq!(LaurentPoly::parse("0", 2).unwrap(), LaurentPoly::zero(2));
    }
}
