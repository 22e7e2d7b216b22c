//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are stored on the power basis `1, z, ..., z^(phi(n)-1)` of
//! `Q[z]/(Phi_n(z))`, where `Phi_n` is the n-th cyclotomic polynomial, so
//! zero-testing is exact.  Every constructor reduces to this basis and then
//! descends to the smallest conductor containing the value, which makes
//! structural equality canonical across computation paths.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}

fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

// -------- dense rational polynomials, ascending coefficients --------

fn poly_trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() - 1 >= dm && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for (j, mj) in m.iter().enumerate() {
            let idx = dr - dm + j;
            let sub = &c * mj;
            r[idx] -= sub;
        }
        poly_trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    r
}

fn poly_quotient_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    // b monic up to leading unit; used only for x^n - 1 / product of Phi_d.
    let mut r: Vec<Rational> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut quo = vec![Rational::zero(); r.len().saturating_sub(db)];
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let c = &r[dr] / &lead;
        quo[dr - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let sub = &c * bj;
            r[dr - db + j] -= sub;
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quo);
    quo
}

fn cyclotomic_polynomial_uncached(n: u64, cache: &mut HashMap<u64, Vec<Rational>>) -> Vec<Rational> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![-q(1), q(1)]
    } else {
        // (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut num = vec![Rational::zero(); (n + 1) as usize];
        num[0] = -q(1);
        num[n as usize] = q(1);
        let mut den = vec![q(1)];
        for d in 1..n {
            if n % d == 0 {
                let pd = cyclotomic_polynomial_uncached(d, cache);
                den = poly_mul(&den, &pd);
            }
        }
        poly_quotient_exact(&num, &den)
    };
    cache.insert(n, poly.clone());
    poly
}

fn cyclotomic_polynomial(n: u64) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    cyclotomic_polynomial_uncached(n, &mut guard)
}

/// Solve `A x = b` over the rationals; `A` is given by columns.
/// Returns `None` when the system is inconsistent.
fn solve_columns(cols: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = b.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let mut piv = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for j in c..=ncols {
            let v = &m[r][j] / &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if !m[i][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (k, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[k][ncols].clone();
    }
    Some(x)
}

/// An element of a cyclotomic field, reduced to its minimal conductor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>, // length phi(conductor), power basis
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n > 0);
        let k = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = Rational::one();
        Self::from_raw(n, raw)
    }

    /// Build from raw coefficients on powers of `zeta_n` (any degree).
    fn from_raw(n: u64, raw: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let mut red = poly_rem(&raw, &phi);
        let target = euler_phi(n) as usize;
        red.resize(target, Rational::zero());
        let mut v = Cyclotomic {
            conductor: n,
            coeffs: red,
        };
        v.normalize();
        v
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    /// Returns the value as a rational when it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.conductor == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express on the power basis of `Q(zeta_m)` where `conductor | m`.
    fn promoted_coeffs(&self, m: u64) -> Vec<Rational> {
        debug_assert!(m % self.conductor == 0);
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let scale = (m / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * scale + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * scale] = c.clone();
        }
        let phi = cyclotomic_polynomial(m);
        let mut red = poly_rem(&raw, &phi);
        red.resize(euler_phi(m) as usize, Rational::zero());
        red
    }

    /// Descend to the minimal conductor whose field contains the value.
    fn normalize(&mut self) {
        'outer: loop {
            if self.conductor == 1 {
                return;
            }
            for p in prime_factors(self.conductor) {
                let m = self.conductor / p;
                // basis of Q(zeta_m) expressed inside Q(zeta_n)
                let scale = self.conductor / m;
                let cols: Vec<Vec<Rational>> = (0..euler_phi(m))
                    .map(|i| {
                        Cyclotomic::root_of_unity_unnormalized(self.conductor, (i * scale) as i64)
                    })
                    .collect();
                if let Some(sol) = solve_columns(&cols, &self.coeffs) {
                    self.conductor = m;
                    self.coeffs = sol;
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Reduced coefficient vector of `zeta_n^k` without conductor descent.
    fn root_of_unity_unnormalized(n: u64, k: i64) -> Vec<Rational> {
        let k = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = Rational::one();
        let phi = cyclotomic_polynomial(n);
        let mut red = poly_rem(&raw, &phi);
        red.resize(euler_phi(n) as usize, Rational::zero());
        red
    }

    fn binop(&self, other: &Cyclotomic, f: impl Fn(&Rational, &Rational) -> Rational) -> Cyclotomic {
        if self.conductor == 1 && other.conductor == 1 {
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![f(&self.coeffs[0], &other.coeffs[0])],
            };
        }
        let n = lcm(self.conductor, other.conductor);
        let a = self.promoted_coeffs(n);
        let b = other.promoted_coeffs(n);
        let coeffs: Vec<Rational> = a.iter().zip(b.iter()).map(|(x, y)| f(x, y)).collect();
        let mut v = Cyclotomic {
            conductor: n,
            coeffs,
        };
        v.normalize();
        v
    }

    pub fn add_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        self.binop(other, |a, b| a + b)
    }

    pub fn sub_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        self.binop(other, |a, b| a - b)
    }

    pub fn mul_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 && other.conductor == 1 {
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        let n = lcm(self.conductor, other.conductor);
        let a = self.promoted_coeffs(n);
        let b = other.promoted_coeffs(n);
        let raw = poly_mul(&a, &b);
        Cyclotomic::from_raw(n, raw)
    }

    pub fn neg_ref(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        if self.conductor == 1 {
            return Ok(Cyclotomic::from_rational(self.coeffs[0].recip()));
        }
        // extended Euclid in Q[x] against the (irreducible) cyclotomic polynomial
        let phi = cyclotomic_polynomial(self.conductor);
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            // divide r0 by r1
            let mut rem = r0.clone();
            poly_trim(&mut rem);
            let d1 = r1.len() - 1;
            let lead = r1[d1].clone();
            let mut quo = vec![Rational::zero(); rem.len().saturating_sub(d1).max(1)];
            while rem.len() - 1 >= d1 && !(rem.len() == 1 && rem[0].is_zero()) {
                let dr = rem.len() - 1;
                let c = &rem[dr] / &lead;
                quo[dr - d1] = c.clone();
                for (j, bj) in r1.iter().enumerate() {
                    let sub = &c * bj;
                    rem[dr - d1 + j] -= sub;
                }
                poly_trim(&mut rem);
                if rem.len() == 1 && rem[0].is_zero() {
                    break;
                }
                if rem.len() - 1 < d1 {
                    break;
                }
            }
            poly_trim(&mut quo);
            // s2 = s0 - quo * s1
            let qs = poly_mul(&quo, &s1);
            let len = s0.len().max(qs.len());
            let mut s2 = vec![Rational::zero(); len];
            for (i, c) in s0.iter().enumerate() {
                s2[i] += c;
            }
            for (i, c) in qs.iter().enumerate() {
                s2[i] -= c;
            }
            poly_trim(&mut s2);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant gcd; inverse = s0 / r0
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let inv_raw: Vec<Rational> = s0.iter().map(|c| c / &g).collect();
        Ok(Cyclotomic::from_raw(self.conductor, inv_raw))
    }

    /// Complex conjugation: `zeta -> zeta^(n-1)`.
    pub fn conjugate(&self) -> Cyclotomic {
        self.galois(self.conductor as i64 - 1)
    }

    /// The Galois map `zeta -> zeta^k` (requires `gcd(k, n) = 1` for a
    /// field automorphism; arbitrary `k` gives the induced linear map).
    pub fn galois(&self, k: i64) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor;
        let mut raw = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((i as i64) * k).rem_euclid(n as i64) as usize;
            raw[e] += c;
        }
        Cyclotomic::from_raw(n, raw)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(rhs)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.sub_ref(rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        self.add_ref(&rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self.sub_ref(&rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        self.mul_ref(&rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "z{}", self.conductor)?;
                } else {
                    write!(f, "z{}^{}", self.conductor, i)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic literal".into()));
        }
        // split into signed terms at top level (no parentheses inside)
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i64;
        let mut chars = s.chars().peekable();
        // leading sign
        if let Some('-') = chars.peek() {
            sign = -1;
            chars.next();
        } else if let Some('+') = chars.peek() {
            chars.next();
        }
        let mut prev_space = false;
        while let Some(ch) = chars.next() {
            match ch {
                ' ' => {
                    prev_space = true;
                }
                '+' | '-' if prev_space => {
                    terms.push((sign, cur.trim().to_string()));
                    cur = String::new();
                    sign = if ch == '-' { -1 } else { 1 };
                    prev_space = false;
                }
                _ => {
                    if prev_space {
                        cur.push(' ');
                        prev_space = false;
                    }
                    cur.push(ch);
                }
            }
        }
        terms.push((sign, cur.trim().to_string()));

        let mut acc = Cyclotomic::zero();
        for (sg, t) in terms {
            if t.is_empty() {
                return Err(Error::Parse(format!("malformed cyclotomic literal `{s}`")));
            }
            let (coef_str, root_str) = match t.split_once('*') {
                Some((a, b)) => (a.to_string(), Some(b.to_string())),
                None => {
                    if t.starts_with('z') {
                        ("1".to_string(), Some(t.clone()))
                    } else {
                        (t.clone(), None)
                    }
                }
            };
            let coef: Rational = coef_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational `{coef_str}`")))?;
            let mut term = Cyclotomic::from_rational(coef);
            if let Some(rs) = root_str {
                let rs = rs.trim();
                let body = rs
                    .strip_prefix('z')
                    .ok_or_else(|| Error::Parse(format!("bad root-of-unity `{rs}`")))?;
                let (n_str, e_str) = match body.split_once('^') {
                    Some((a, b)) => (a, b),
                    None => (body, "1"),
                };
                let n: u64 = n_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad conductor `{n_str}`")))?;
                let e: i64 = e_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{e_str}`")))?;
                term = term.mul_ref(&Cyclotomic::root_of_unity(n, e));
            }
            if sg < 0 {
                term = term.neg_ref();
            }
            acc = acc.add_ref(&term);
        }
        Ok(acc)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn defining_relations() {
        // zeta_4^2 = -1
        assert_eq!(zeta(4, 1).mul_ref(&zeta(4, 1)), Cyclotomic::from_i64(-1));
        // 1 + zeta_3 + zeta_3^2 = 0
        let s = Cyclotomic::one().add_ref(&zeta(3, 1)).add_ref(&zeta(3, 2));
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_root() {
        // zeta_8^-1 = zeta_8^7
        assert_eq!(zeta(8, 1).inverse().unwrap(), zeta(8, 7));
        assert!(Cyclotomic::zero().inverse().is_err());
    }

    #[test]
    fn conductor_descent() {
        // zeta_6 = 1 + zeta_3 lives in conductor 3
        let z6 = zeta(6, 1);
        assert_eq!(z6.conductor(), 3);
        // zeta_4^2 descends all the way to Q
        assert_eq!(zeta(4, 2).conductor(), 1);
        // zeta_12^3 = zeta_4 = i, conductor 4
        assert_eq!(zeta(12, 3).conductor(), 4);
        assert_eq!(zeta(12, 3), zeta(4, 1));
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        let x = zeta(3, 1).add_ref(&zeta(4, 1));
        let y = x.sub_ref(&zeta(4, 1));
        assert_eq!(y, zeta(3, 1));
    }

    #[test]
    fn conjugate_inverts_roots() {
        let z = zeta(5, 2);
        assert_eq!(z.conjugate(), zeta(5, 3));
        assert!(z.mul_ref(&z.conjugate()).is_one());
    }

    #[test]
    fn display_parse_round_trip() {
        let vals = [
            Cyclotomic::zero(),
            Cyclotomic::from_rational(Rational::new(BigInt::from(-3), BigInt::from(7))),
            zeta(4, 1),
            zeta(12, 1).scale(&Rational::new(BigInt::from(1), BigInt::from(2))),
            zeta(3, 1).add_ref(&Cyclotomic::from_i64(2)).neg_ref(),
        ];
        for v in vals {
            let s = v.to_string();
            let back: Cyclotomic = s.parse().unwrap();
            assert_eq!(back, v, "round trip of `{s}`");
        }
    }
}
