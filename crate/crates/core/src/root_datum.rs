//! Combinatorial model of a connected reductive group: root data, Weyl
//! groups, torsion points of the maximal torus, and centralizer/Levi
//! subdata.
//!
//! The character lattice is fixed to `Z^r` with the standard dot-product
//! pairing against `Z^r`-valued cocharacters.  Simply connected presets are
//! given in the fundamental-weight basis, `GL_n` presets in the standard
//! basis; this pins every coordinate convention used downstream.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{lcm, Rational};
use crate::error::{Error, Result};

pub const KNOWN_PRESETS: &[&str] = &[
    "A1", "A2", "B2", "G2", "A1xA1", "GL2", "GL3", "SL2", "SL3", "Sp4",
];

pub const DEFAULT_WEYL_CAP: usize = 2000;

// ---------------------------------------------------------------- WeylElement

/// An element of the Weyl group, as an integer matrix acting on the
/// character lattice (columns are images of basis vectors).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement { matrix }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank())
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let r = self.rank();
        let matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        WeylElement { matrix }
    }

    pub fn act_weight(&self, w: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn det(&self) -> i64 {
        det_i64(&self.matrix)
    }

    pub fn transpose(&self) -> WeylElement {
        let r = self.rank();
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| self.matrix[j][i]).collect())
            .collect();
        WeylElement { matrix }
    }

    /// Inverse via adjugate; Weyl matrices have determinant +-1.
    pub fn inverse(&self) -> WeylElement {
        let r = self.rank();
        let d = self.det();
        assert!(d == 1 || d == -1, "non-unimodular Weyl matrix");
        let mut adj = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let minor: Vec<Vec<i64>> = (0..r)
                    .filter(|&a| a != j)
                    .map(|a| {
                        (0..r)
                            .filter(|&b| b != i)
                            .map(|b| self.matrix[a][b])
                            .collect()
                    })
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[i][j] = sign * det_i64(&minor) * d;
            }
        }
        WeylElement { matrix: adj }
    }

    /// The natural action on torsion points of the torus: the contragredient
    /// action `q -> (M^T)^(-1) q`, reduced mod 1.
    pub fn act_torsion(&self, q: &TorsionPoint) -> TorsionPoint {
        let inv_t = self.inverse().transpose();
        let coords: Vec<Rational> = inv_t
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&q.coords)
                    .map(|(a, b)| b * BigRational::from_integer(BigInt::from(*a)))
                    .sum()
            })
            .collect();
        TorsionPoint::new(coords)
    }
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0i64;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&k| k != j)
                            .map(|k| m[i][k])
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * m[0][j] * det_i64(&minor);
            }
            acc
        }
    }
}

// --------------------------------------------------------------- TorsionPoint

/// A finite-order element of the maximal torus, encoded as a rational vector
/// reduced mod 1 componentwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionPoint {
    coords: Vec<Rational>,
}

impl TorsionPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        let coords = coords
            .into_iter()
            .map(|c| {
                let f = c.floor();
                c - f
            })
            .collect();
        TorsionPoint { coords }
    }

    pub fn zero(rank: usize) -> Self {
        TorsionPoint {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// lcm of coordinate denominators.
    pub fn order(&self) -> u64 {
        self.coords.iter().fold(1u64, |acc, c| {
            let d: u64 = c.denom().to_string().parse().expect("small denominator");
            lcm(acc, d)
        })
    }

    pub fn add(&self, other: &TorsionPoint) -> TorsionPoint {
        assert_eq!(self.rank(), other.rank());
        TorsionPoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Parse "1/4" (rank 1) or "1/2,0,1/3".
    pub fn parse(s: &str, rank: usize) -> Result<TorsionPoint> {
        let parts: Vec<&str> = s.split(',').map(|p| p.trim()).collect();
        if parts.len() != rank {
            return Err(Error::Parse(format!(
                "torsion point `{s}` has {} coordinates, expected {rank}",
                parts.len()
            )));
        }
        let coords = parts
            .iter()
            .map(|p| {
                p.parse::<Rational>()
                    .map_err(|_| Error::Parse(format!("bad rational `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TorsionPoint::new(coords))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

// ----------------------------------------------------------------- RootDatum

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
}

pub fn pairing(weight: &[i64], coroot: &[i64]) -> i64 {
    weight.iter().zip(coroot).map(|(a, b)| a * b).sum()
}

fn reflect(root: &[i64], coroot: &[i64], target: &[i64]) -> Vec<i64> {
    let p = pairing(target, coroot);
    target
        .iter()
        .zip(root)
        .map(|(t, r)| t - p * r)
        .collect()
}

fn coreflect(root: &[i64], coroot: &[i64], target_coroot: &[i64]) -> Vec<i64> {
    let p = pairing(root, target_coroot);
    target_coroot
        .iter()
        .zip(coroot)
        .map(|(t, c)| t - p * c)
        .collect()
}

impl RootDatum {
    /// Build a datum from its simple root/coroot pairs by reflection closure,
    /// then validate.
    pub fn from_simple_system(
        name: &str,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<RootDatum> {
        let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = simple_roots
            .iter()
            .cloned()
            .zip(simple_coroots.iter().cloned())
            .collect();
        let mut seen: BTreeSet<Vec<i64>> = pairs.iter().map(|(r, _)| r.clone()).collect();
        let mut frontier = pairs.clone();
        while let Some((r, c)) = frontier.pop() {
            for (sr, sc) in simple_roots.iter().zip(&simple_coroots) {
                let nr = reflect(sr, sc, &r);
                let nc = coreflect(sr, sc, &c);
                if seen.insert(nr.clone()) {
                    pairs.push((nr.clone(), nc.clone()));
                    frontier.push((nr, nc));
                    if pairs.len() > 10_000 {
                        return Err(Error::ResourceCap(
                            "root closure did not terminate".into(),
                        ));
                    }
                }
            }
        }
        let datum = RootDatum {
            name: name.to_string(),
            rank,
            roots: pairs.iter().map(|(r, _)| r.clone()).collect(),
            coroots: pairs.iter().map(|(_, c)| c.clone()).collect(),
            simple_indices: (0..simple_roots.len()).collect(),
        };
        datum.validate()?;
        Ok(datum)
    }

    /// Check every root-datum axiom; returns the full list of violations.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.rank == 0 {
            problems.push("rank must be positive".to_string());
        }
        if self.roots.len() != self.coroots.len() {
            problems.push("roots and coroots must be index-paired".to_string());
        }
        for (i, r) in self.roots.iter().enumerate() {
            if r.len() != self.rank {
                problems.push(format!("root {i} has wrong length"));
            }
        }
        for (i, c) in self.coroots.iter().enumerate() {
            if c.len() != self.rank {
                problems.push(format!("coroot {i} has wrong length"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidDatum(problems.join("; ")));
        }
        let root_set: BTreeSet<&Vec<i64>> = self.roots.iter().collect();
        for (i, (r, c)) in self.roots.iter().zip(&self.coroots).enumerate() {
            if pairing(r, c) != 2 {
                problems.push(format!(
                    "pairing axiom <a,a~> = 2 fails at index {i} (got {})",
                    pairing(r, c)
                ));
            }
        }
        // reflection closure
        for (r, c) in self.roots.iter().zip(&self.coroots) {
            for b in &self.roots {
                let im = reflect(r, c, b);
                if !root_set.contains(&im) {
                    problems.push(format!(
                        "reflection closure fails: s_{r:?} maps {b:?} outside the root set"
                    ));
                }
            }
        }
        // +- pairs, reduced
        for r in &self.roots {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            if !root_set.contains(&neg) {
                problems.push(format!("root {r:?} has no negative"));
            }
            let dbl: Vec<i64> = r.iter().map(|x| 2 * x).collect();
            if root_set.contains(&dbl) {
                problems.push(format!("non-reduced: {r:?} and its double are both roots"));
            }
        }
        let uniq: BTreeSet<&Vec<i64>> = self.roots.iter().collect();
        if uniq.len() != self.roots.len() {
            problems.push("duplicate roots".to_string());
        }
        for &i in &self.simple_indices {
            if i >= self.roots.len() {
                problems.push(format!("simple index {i} out of range"));
            }
        }
        if problems.is_empty() {
            // simple system: independent, and every root has uniformly
            // signed integer coordinates in the simple roots
            let simples: Vec<Vec<i64>> = self
                .simple_indices
                .iter()
                .map(|&i| self.roots[i].clone())
                .collect();
            if rational_rank(&simples) != simples.len() {
                problems.push("simple roots are linearly dependent".to_string());
            } else {
                for r in &self.roots {
                    match self.simple_coefficients(r) {
                        Some(coeffs) => {
                            let all_nonneg = coeffs.iter().all(|c| !c.is_negative());
                            let all_nonpos = coeffs.iter().all(|c| !c.is_positive());
                            let integral = coeffs.iter().all(|c| c.is_integer());
                            if !(integral && (all_nonneg || all_nonpos)) {
                                problems.push(format!(
                                    "root {r:?} is not a signed integer span of the simple roots"
                                ));
                            }
                        }
                        None => problems.push(format!(
                            "root {r:?} is outside the span of the simple roots"
                        )),
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidDatum(problems.join("; ")))
        }
    }

    /// Coefficients of `v` in the simple-root basis, when `v` lies in the span.
    pub fn simple_coefficients(&self, v: &[i64]) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self
            .simple_indices
            .iter()
            .map(|&i| {
                self.roots[i]
                    .iter()
                    .map(|&x| Rational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let target: Vec<Rational> = v
            .iter()
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect();
        rational_solve(&cols, &target)
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        self.simple_indices
            .iter()
            .map(|&i| self.roots[i].clone())
            .collect()
    }

    pub fn simple_coroots(&self) -> Vec<Vec<i64>> {
        self.simple_indices
            .iter()
            .map(|&i| self.coroots[i].clone())
            .collect()
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        match self.simple_coefficients(v) {
            Some(coeffs) => coeffs.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    pub fn positive_root_indices(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.is_positive_root(&self.roots[i]))
            .collect()
    }

    /// Sum of the positive roots (twice rho, always integral).
    pub fn two_rho(&self) -> Vec<i64> {
        let mut acc = vec![0i64; self.rank];
        for i in self.positive_root_indices() {
            for (a, b) in acc.iter_mut().zip(&self.roots[i]) {
                *a += b;
            }
        }
        acc
    }

    /// Max over roots of the sum of absolute simple-root coefficients.
    pub fn max_root_height(&self) -> i64 {
        self.roots
            .iter()
            .filter_map(|r| self.simple_coefficients(r))
            .map(|coeffs| {
                coeffs
                    .iter()
                    .map(|c| c.abs().to_integer())
                    .sum::<BigInt>()
            })
            .max()
            .map(|h| h.to_string().parse().unwrap_or(1))
            .unwrap_or(1)
    }

    pub fn simple_reflection(&self, simple_pos: usize) -> WeylElement {
        let idx = self.simple_indices[simple_pos];
        reflection_matrix(self.rank, &self.roots[idx], &self.coroots[idx])
    }

    /// The full Weyl group by breadth-first closure of the simple
    /// reflections, capped at `cap` elements.
    pub fn weyl_elements_capped(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let gens: Vec<WeylElement> = (0..self.simple_indices.len())
            .map(|i| self.simple_reflection(i))
            .collect();
        close_group(self.rank, &gens, cap)
    }

    pub fn weyl_elements(&self) -> Result<Vec<WeylElement>> {
        self.weyl_elements_capped(weyl_cap())
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        self.simple_coroots().iter().all(|c| pairing(w, c) >= 0)
    }

    /// True when the cocharacter-mod-coroot quotient is torsion-free,
    /// i.e. the commutator subgroup is simply connected.
    pub fn simply_connected_commutator(&self) -> bool {
        if self.coroots.is_empty() {
            return true;
        }
        // columns are the coroots
        let mat: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| self.coroots.iter().map(|c| c[i]).collect())
            .collect();
        smith_normal_divisors(mat).iter().all(|&d| d == 1)
    }

    /// Dominant weights generating `R(G)` for the supported presets: the
    /// fundamental weights when the simple coroots span, else (GL types)
    /// the partial-sum weights plus the inverse determinant.
    pub fn fundamental_generators(&self) -> Vec<Vec<i64>> {
        let simple_coroots = self.simple_coroots();
        if simple_coroots.len() == self.rank {
            let cols: Vec<Vec<Rational>> = (0..self.rank)
                .map(|j| {
                    simple_coroots
                        .iter()
                        .map(|c| Rational::from_integer(BigInt::from(c[j])))
                        .collect()
                })
                .collect();
            let mut out = Vec::new();
            for i in 0..self.rank {
                let mut target = vec![Rational::zero(); self.rank];
                target[i] = Rational::one();
                let sol = rational_solve(&cols, &target)
                    .expect("simple coroots span the lattice");
                let w: Vec<i64> = sol
                    .iter()
                    .map(|c| {
                        assert!(c.is_integer(), "non-integral fundamental weight");
                        c.to_integer().to_string().parse().unwrap()
                    })
                    .collect();
                out.push(w);
            }
            out
        } else {
            let mut out = Vec::new();
            for k in 1..=self.rank {
                let mut w = vec![0i64; self.rank];
                for x in w.iter_mut().take(k) {
                    *x = 1;
                }
                out.push(w);
            }
            out.push(vec![-1i64; self.rank]);
            out
        }
    }

    /// All dominant weights with coordinates in `[-h, h]`.
    pub fn dominant_weights_in_box(&self, h: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![-h; self.rank];
        loop {
            if self.is_dominant(&cur) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == self.rank {
                    return out;
                }
                cur[i] += 1;
                if cur[i] <= h {
                    break;
                }
                cur[i] = -h;
                i += 1;
            }
        }
    }
}

pub fn reflection_matrix(rank: usize, root: &[i64], coroot: &[i64]) -> WeylElement {
    let matrix = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| i64::from(i == j) - root[i] * coroot[j])
                .collect()
        })
        .collect();
    WeylElement { matrix }
}

fn weyl_cap() -> usize {
    std::env::var("WEYLKIT_WEYL_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_WEYL_CAP)
}

/// Breadth-first closure of a generating set; identity first, remaining
/// elements in deterministic matrix order.
pub fn close_group(rank: usize, gens: &[WeylElement], cap: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(rank);
    let mut seen: BTreeSet<WeylElement> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id.clone()];
    while let Some(w) = frontier.pop() {
        for g in gens {
            let n = g.mul(&w);
            if seen.insert(n.clone()) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap(format!(
                        "group enumeration exceeded the element cap {cap}"
                    )));
                }
                frontier.push(n);
            }
        }
    }
    let mut out: Vec<WeylElement> = seen.into_iter().collect();
    out.retain(|w| !w.is_identity());
    out.insert(0, id);
    Ok(out)
}

// ------------------------------------------------------------------ SubDatum

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubKind {
    Centralizer,
    Levi,
    Torus,
}

/// An equal-rank reductive subgroup of the parent datum, cut out by a
/// reflection-closed subset of the roots.
#[derive(Debug, Clone)]
pub struct SubDatum {
    pub parent: RootDatum,
    pub root_indices: Vec<usize>,
    pub sub_weyl: Vec<WeylElement>,
    pub kind: SubKind,
    /// positions into `parent.simple_indices` for Levi subdata
    pub levi_simple: Vec<usize>,
    pub parent_simply_connected: bool,
    pub sub_simply_connected: bool,
}

impl SubDatum {
    pub fn torus(parent: &RootDatum) -> SubDatum {
        SubDatum {
            parent: parent.clone(),
            root_indices: Vec::new(),
            sub_weyl: vec![WeylElement::identity(parent.rank)],
            kind: SubKind::Torus,
            levi_simple: Vec::new(),
            parent_simply_connected: parent.simply_connected_commutator(),
            sub_simply_connected: true,
        }
    }

    /// The standard Levi generated by a subset of the simple roots.
    pub fn levi(parent: &RootDatum, simple_subset: &[usize]) -> Result<SubDatum> {
        for &s in simple_subset {
            if s >= parent.simple_indices.len() {
                return Err(Error::Precondition(format!(
                    "simple position {s} out of range"
                )));
            }
        }
        let gens: Vec<WeylElement> = simple_subset
            .iter()
            .map(|&s| parent.simple_reflection(s))
            .collect();
        let sub_weyl = close_group(parent.rank, &gens, weyl_cap())?;
        // roots of the Levi: the roots fixed inside the span of the chosen
        // simple roots
        let chosen: Vec<usize> = simple_subset
            .iter()
            .map(|&s| parent.simple_indices[s])
            .collect();
        let mut root_indices = Vec::new();
        'roots: for (i, r) in parent.roots.iter().enumerate() {
            let coeffs = match parent.simple_coefficients(r) {
                Some(c) => c,
                None => continue,
            };
            for (pos, c) in coeffs.iter().enumerate() {
                let idx = parent.simple_indices[pos];
                if !c.is_zero() && !chosen.contains(&idx) {
                    continue 'roots;
                }
            }
            root_indices.push(i);
        }
        let sub = SubDatum {
            parent: parent.clone(),
            root_indices,
            sub_weyl,
            kind: SubKind::Levi,
            levi_simple: simple_subset.to_vec(),
            parent_simply_connected: parent.simply_connected_commutator(),
            sub_simply_connected: false,
        };
        Ok(SubDatum {
            sub_simply_connected: sub.compute_sub_simply_connected(),
            ..sub
        })
    }

    /// Centralizer of the torsion point: roots with integral pairing.
    pub fn centralizer(parent: &RootDatum, q: &TorsionPoint) -> Result<SubDatum> {
        if q.rank() != parent.rank {
            return Err(Error::Precondition("torsion point rank mismatch".into()));
        }
        let mut root_indices = Vec::new();
        for (i, r) in parent.roots.iter().enumerate() {
            let mut p = Rational::zero();
            for (x, c) in r.iter().zip(q.coords()) {
                p += c * Rational::from_integer(BigInt::from(*x));
            }
            if p.is_integer() {
                root_indices.push(i);
            }
        }
        let gens: Vec<WeylElement> = root_indices
            .iter()
            .map(|&i| reflection_matrix(parent.rank, &parent.roots[i], &parent.coroots[i]))
            .collect();
        let sub_weyl = if gens.is_empty() {
            vec![WeylElement::identity(parent.rank)]
        } else {
            close_group(parent.rank, &gens, weyl_cap())?
        };
        let sub = SubDatum {
            parent: parent.clone(),
            root_indices,
            sub_weyl,
            kind: SubKind::Centralizer,
            levi_simple: Vec::new(),
            parent_simply_connected: parent.simply_connected_commutator(),
            sub_simply_connected: false,
        };
        Ok(SubDatum {
            sub_simply_connected: sub.compute_sub_simply_connected(),
            ..sub
        })
    }

    fn compute_sub_simply_connected(&self) -> bool {
        // cocharacters mod the sub coroot lattice
        if self.root_indices.is_empty() {
            return true;
        }
        let mat: Vec<Vec<i64>> = (0..self.parent.rank)
            .map(|i| {
                self.root_indices
                    .iter()
                    .map(|&k| self.parent.coroots[k][i])
                    .collect()
            })
            .collect();
        smith_normal_divisors(mat).iter().all(|&d| d == 1)
    }

    pub fn rank(&self) -> usize {
        self.parent.rank
    }

    pub fn sub_roots(&self) -> Vec<Vec<i64>> {
        self.root_indices
            .iter()
            .map(|&i| self.parent.roots[i].clone())
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.root_indices.len() == self.parent.roots.len()
    }

    /// Roots of the parent outside the subgroup.
    pub fn complement_root_indices(&self) -> Vec<usize> {
        (0..self.parent.roots.len())
            .filter(|i| !self.root_indices.contains(i))
            .collect()
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.sub_weyl
    }
}

// -------------------------------------------------------------- presets

pub fn datum_from_preset(label: &str) -> Result<RootDatum> {
    let build = |name: &str, rank, sr: Vec<Vec<i64>>, sc: Vec<Vec<i64>>| {
        RootDatum::from_simple_system(name, rank, sr, sc)
    };
    match label {
        "A1" | "SL2" => build(label, 1, vec![vec![2]], vec![vec![1]]),
        "A2" | "SL3" => build(
            label,
            2,
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        // Spin(5): alpha1 long, alpha2 short, fundamental-weight basis
        "B2" => build(
            label,
            2,
            vec![vec![2, -2], vec![-1, 2]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        // Sp(4): alpha1 short, alpha2 long
        "Sp4" => build(
            label,
            2,
            vec![vec![2, -1], vec![-2, 2]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        "G2" => build(
            label,
            2,
            vec![vec![2, -3], vec![-1, 2]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        "A1xA1" => build(
            label,
            2,
            vec![vec![2, 0], vec![0, 2]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        "GL2" => build(label, 2, vec![vec![1, -1]], vec![vec![1, -1]]),
        "GL3" => build(
            label,
            3,
            vec![vec![1, -1, 0], vec![0, 1, -1]],
            vec![vec![1, -1, 0], vec![0, 1, -1]],
        ),
        _ => Err(Error::UnknownPreset {
            label: label.to_string(),
            known: KNOWN_PRESETS.join(", "),
        }),
    }
}

// ------------------------------------------------------ orbit / cosets

pub struct OrbitData {
    pub orbit: Vec<TorsionPoint>,
    pub stabilizer: Vec<WeylElement>,
    /// whether the stabilizer equals the reflection subgroup of the
    /// centralizer (the conclusion of the stabilizer lemma); only asserted
    /// when the parent has simply connected commutator
    pub stabilizer_is_reflection_group: bool,
    pub parent_simply_connected: bool,
}

pub fn orbit_and_stabilizer(datum: &RootDatum, q: &TorsionPoint) -> Result<OrbitData> {
    let weyl = datum.weyl_elements()?;
    let mut orbit_set: BTreeSet<TorsionPoint> = BTreeSet::new();
    let mut stabilizer = Vec::new();
    for w in &weyl {
        let wq = w.act_torsion(q);
        if wq == *q {
            stabilizer.push(w.clone());
        }
        orbit_set.insert(wq);
    }
    let sub = SubDatum::centralizer(datum, q)?;
    let refl: BTreeSet<&WeylElement> = sub.sub_weyl.iter().collect();
    let stab_set: BTreeSet<&WeylElement> = stabilizer.iter().collect();
    let matches = refl == stab_set;
    let parent_sc = datum.simply_connected_commutator();
    if parent_sc && !matches {
        return Err(Error::Structural(format!(
            "stabilizer of {q} differs from the centralizer reflection group on a simply connected preset"
        )));
    }
    Ok(OrbitData {
        orbit: orbit_set.into_iter().collect(),
        stabilizer,
        stabilizer_is_reflection_group: matches,
        parent_simply_connected: parent_sc,
    })
}

/// One representative per left coset `w W1`, identity first.
pub fn coset_representatives(
    weyl: &[WeylElement],
    sub: &[WeylElement],
) -> Result<Vec<WeylElement>> {
    let full: BTreeSet<&WeylElement> = weyl.iter().collect();
    for w1 in sub {
        if !full.contains(w1) {
            return Err(Error::Structural(
                "W1 is not contained in W".into(),
            ));
        }
    }
    // subgroup check: closure under multiplication
    let sub_set: BTreeSet<&WeylElement> = sub.iter().collect();
    for a in sub {
        for b in sub {
            if !sub_set.contains(&a.mul(b)) {
                return Err(Error::Structural("W1 is not a subgroup".into()));
            }
        }
    }
    if weyl.len() % sub.len() != 0 {
        return Err(Error::Structural("|W1| does not divide |W|".into()));
    }
    let mut covered: BTreeSet<WeylElement> = BTreeSet::new();
    let mut reps = Vec::new();
    let id = WeylElement::identity(weyl[0].rank());
    let ordered = std::iter::once(&id).chain(weyl.iter());
    for w in ordered {
        if covered.contains(w) {
            continue;
        }
        reps.push(w.clone());
        for w1 in sub {
            covered.insert(w.mul(w1));
        }
    }
    debug_assert_eq!(reps.len(), weyl.len() / sub.len());
    Ok(reps)
}

// --------------------------------------------------- exact linear algebra

/// Solve `cols * x = target` over Q; `None` when inconsistent.
pub fn rational_solve(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let n = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let piv = (r..rows).find(|&i| !m[i][c].is_zero());
        let Some(p) = piv else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for j in c..=n {
            let v = &m[r][j] / &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if !m[i][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = m[k][n].clone();
    }
    Some(x)
}

fn rational_rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let piv = (rank..m.len()).find(|&i| !m[i][c].is_zero());
        let Some(p) = piv else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].clone();
        for j in 0..cols {
            let v = &m[rank][j] / &inv;
            m[rank][j] = v;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[rank][j];
                    m[i][j] -= sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Nonzero elementary divisors of an integer matrix (rows x cols).
pub fn smith_normal_divisors(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut divisors = Vec::new();
    let mut top = 0;
    let mut left = 0;
    while top < rows && left < cols {
        // find the entry of smallest absolute value in the working block
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if m[i][j] != 0 {
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if m[i][j].abs() < m[bi][bj].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(top, bi);
        for row in m.iter_mut() {
            row.swap(left, bj);
        }
        // eliminate; restart if a remainder appears
        let mut clean = true;
        let pivot = m[top][left];
        for i in (top + 1)..rows {
            let f = m[i][left] / pivot;
            for j in left..cols {
                m[i][j] -= f * m[top][j];
            }
            if m[i][left] != 0 {
                clean = false;
            }
        }
        for j in (left + 1)..cols {
            let f = m[top][j] / pivot;
            for i in top..rows {
                m[i][j] -= f * m[i][left];
            }
            if m[top][j] != 0 {
                clean = false;
            }
        }
        if clean {
            divisors.push(pivot.abs());
            top += 1;
            left += 1;
        }
    }
    divisors
}
