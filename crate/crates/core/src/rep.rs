//! Characters of representations: the Weyl character formula, exterior
//! algebra classes of weight multisets, invariant dimensions by Weyl
//! integration, and decomposition into irreducibles.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One};

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::root_datum::{pairing, RootDatum, SubDatum};

/// A virtual character lives in `R(T) = Z[x1^+-1, ..., xr^+-1]`, possibly
/// with cyclotomic coefficients after twisting.
pub type VirtualCharacter = LaurentPoly;

/// A finite multiset of torus weights, e.g. the weights of a tangent or
/// conormal module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    rank: usize,
    mults: BTreeMap<Vec<i64>, u32>,
}

impl WeightMultiset {
    pub fn new(rank: usize) -> Self {
        WeightMultiset {
            rank,
            mults: BTreeMap::new(),
        }
    }

    pub fn from_weights<I: IntoIterator<Item = Vec<i64>>>(rank: usize, it: I) -> Self {
        let mut m = WeightMultiset::new(rank);
        for w in it {
            m.insert(w, 1);
        }
        m
    }

    pub fn insert(&mut self, weight: Vec<i64>, mult: u32) {
        assert_eq!(weight.len(), self.rank);
        if mult > 0 {
            *self.mults.entry(weight).or_insert(0) += mult;
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total(&self) -> u32 {
        self.mults.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, u32)> {
        self.mults.iter().map(|(w, &m)| (w, m))
    }

    /// Negate every weight (passing to the dual module).
    pub fn dual(&self) -> WeightMultiset {
        WeightMultiset {
            rank: self.rank,
            mults: self
                .mults
                .iter()
                .map(|(w, &m)| (w.iter().map(|x| -x).collect(), m))
                .collect(),
        }
    }

    /// Character of the module itself.
    pub fn character(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(self.rank);
        for (w, m) in self.iter() {
            acc = acc.add(&LaurentPoly::monomial(
                self.rank,
                w,
                Cyclotomic::from_i64(i64::from(m)),
            ));
        }
        acc
    }

    /// The alternating sum of exterior powers: `prod_w (1 - x^w)^mult`.
    pub fn lambda_minus_one(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.rank);
        for (w, m) in self.iter() {
            let factor = LaurentPoly::one(self.rank).sub(&LaurentPoly::monomial(
                self.rank,
                w,
                Cyclotomic::one(),
            ));
            acc = acc.mul(&factor.pow(m));
        }
        acc
    }
}

/// Weights of the isotropy module `g/h` for an equal-rank subgroup: the
/// parent roots outside the subgroup.
pub fn g_mod_h_weights(sub: &SubDatum) -> WeightMultiset {
    WeightMultiset::from_weights(
        sub.rank(),
        sub.complement_root_indices()
            .into_iter()
            .map(|i| sub.parent.roots[i].clone()),
    )
}

/// Weights of the conormal module `(g/h)*`.
pub fn conormal_weights(sub: &SubDatum) -> WeightMultiset {
    g_mod_h_weights(sub).dual()
}

/// Irreducible character by the Weyl character formula, computed through
/// the rho-shifted form with the doubled weight `2*rho` so that every
/// exponent stays integral:
/// `chi = (sum_w det(w) x^(w(lambda+rho)-rho)) / prod_(a>0) (1 - x^-a)`.
pub fn weyl_character(datum: &RootDatum, lambda: &[i64]) -> Result<LaurentPoly> {
    if lambda.len() != datum.rank {
        return Err(Error::Precondition("weight rank mismatch".into()));
    }
    if !datum.is_dominant(lambda) {
        return Err(Error::Precondition(format!(
            "weight {lambda:?} is not dominant"
        )));
    }
    let weyl = datum.weyl_elements()?;
    let two_rho = datum.two_rho();
    let shifted: Vec<i64> = lambda
        .iter()
        .zip(&two_rho)
        .map(|(l, r)| 2 * l + r)
        .collect();
    let mut numerator = LaurentPoly::zero(datum.rank);
    for w in &weyl {
        let image = w.act_weight(&shifted);
        let exp: Vec<i64> = image
            .iter()
            .zip(&two_rho)
            .map(|(a, r)| {
                let e = a - r;
                assert!(e % 2 == 0, "rho shift left an odd exponent");
                e / 2
            })
            .collect();
        numerator = numerator.add(&LaurentPoly::monomial(
            datum.rank,
            &exp,
            Cyclotomic::from_i64(w.det()),
        ));
    }
    let mut denominator = LaurentPoly::one(datum.rank);
    for i in datum.positive_root_indices() {
        let neg: Vec<i64> = datum.roots[i].iter().map(|x| -x).collect();
        let factor = LaurentPoly::one(datum.rank).sub(&LaurentPoly::monomial(
            datum.rank,
            &neg,
            Cyclotomic::one(),
        ));
        denominator = denominator.mul(&factor);
    }
    let chi = numerator.exact_div(&denominator)?;
    // cross-check against the dimension formula
    let mut dim = BigRational::one();
    for i in datum.positive_root_indices() {
        let num = pairing(&shifted, &datum.coroots[i]);
        let den = pairing(&two_rho, &datum.coroots[i]);
        dim *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    let total: Cyclotomic = chi
        .terms()
        .fold(Cyclotomic::zero(), |acc, (_, c)| acc.add_ref(c));
    if total.to_rational() != Some(dim.clone()) {
        return Err(Error::Structural(format!(
            "character of {lambda:?} has total {total}, dimension formula gives {dim}"
        )));
    }
    Ok(chi)
}

/// Dimension of the character at the identity (sum of coefficients); only
/// meaningful for honest characters.
pub fn character_dimension(a: &LaurentPoly) -> Cyclotomic {
    a.terms()
        .fold(Cyclotomic::zero(), |acc, (_, c)| acc.add_ref(c))
}

pub fn is_weyl_invariant(datum: &RootDatum, a: &LaurentPoly) -> Result<bool> {
    for w in datum.weyl_elements()? {
        if &a.act_matrix(&w.matrix) != a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicity of the trivial representation by exact Weyl integration:
/// `(1/|W|) * CT[ a * prod_(a in roots) (1 - x^a) ]`.
///
/// Stated for any equal-rank context: pass the full root list and the Weyl
/// group order of the group being integrated over.
pub fn invariant_dim(
    rank: usize,
    roots: &[Vec<i64>],
    weyl_order: usize,
    a: &LaurentPoly,
) -> Cyclotomic {
    let mut density = LaurentPoly::one(rank);
    for r in roots {
        let factor = LaurentPoly::one(rank).sub(&LaurentPoly::monomial(
            rank,
            r,
            Cyclotomic::one(),
        ));
        density = density.mul(&factor);
    }
    // CT(a * density) as a dot product; avoids the full product, which can
    // be large when a is a product of characters
    let mut ct = Cyclotomic::zero();
    for (e, c) in a.terms() {
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        let d = density.coeff(&neg);
        if !d.is_zero() {
            ct = ct.add_ref(&c.mul_ref(&d));
        }
    }
    let inv = Rational::new(BigInt::one(), BigInt::from(weyl_order as i64));
    ct.scale(&inv)
}

pub fn invariant_dim_group(datum: &RootDatum, a: &LaurentPoly) -> Result<Cyclotomic> {
    let weyl = datum.weyl_elements()?;
    Ok(invariant_dim(datum.rank, &datum.roots, weyl.len(), a))
}

pub fn invariant_dim_sub(sub: &SubDatum, a: &LaurentPoly) -> Cyclotomic {
    invariant_dim(sub.rank(), &sub.sub_roots(), sub.sub_weyl.len(), a)
}

/// `dim Hom(a, b) = dim (a* tensor b)^G`.
pub fn hom_dim(
    rank: usize,
    roots: &[Vec<i64>],
    weyl_order: usize,
    a: &LaurentPoly,
    b: &LaurentPoly,
) -> Cyclotomic {
    let mut density = LaurentPoly::one(rank);
    for r in roots {
        let factor = LaurentPoly::one(rank).sub(&LaurentPoly::monomial(
            rank,
            r,
            Cyclotomic::one(),
        ));
        density = density.mul(&factor);
    }
    // CT(dual(a) * b * density) without materializing the triple product
    let mut ct = Cyclotomic::zero();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let key: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x - y).collect();
            let d = density.coeff(&key);
            if !d.is_zero() {
                ct = ct.add_ref(&ca.mul_ref(&cb).mul_ref(&d));
            }
        }
    }
    let inv = Rational::new(BigInt::one(), BigInt::from(weyl_order as i64));
    ct.scale(&inv)
}

pub fn hom_dim_group(datum: &RootDatum, a: &LaurentPoly, b: &LaurentPoly) -> Result<Cyclotomic> {
    let weyl = datum.weyl_elements()?;
    Ok(hom_dim(datum.rank, &datum.roots, weyl.len(), a, b))
}

pub fn hom_dim_sub(sub: &SubDatum, a: &LaurentPoly, b: &LaurentPoly) -> Cyclotomic {
    hom_dim(sub.rank(), &sub.sub_roots(), sub.sub_weyl.len(), a, b)
}

/// Write a Weyl-invariant element as a finite combination of irreducible
/// characters by repeatedly peeling the character of the highest surviving
/// dominant weight.  The leading weight is taken maximal in (height, lex)
/// where height pairs against the sum of positive coroots, which dominates
/// the weight order, so it is always dominant for invariant inputs.
pub fn decompose_irreducibles(
    datum: &RootDatum,
    a: &LaurentPoly,
) -> Result<Vec<(Vec<i64>, Cyclotomic)>> {
    if !is_weyl_invariant(datum, a)? {
        return Err(Error::Precondition(
            "decomposition requires a Weyl-invariant element".into(),
        ));
    }
    let pos_coroot_sum: Vec<i64> = datum.positive_root_indices().iter().fold(
        vec![0i64; datum.rank],
        |mut acc, &i| {
            for (a, b) in acc.iter_mut().zip(&datum.coroots[i]) {
                *a += b;
            }
            acc
        },
    );
    let mut rem = a.clone();
    let mut out = Vec::new();
    let cap = 4 * a.num_terms() + 16;
    for _ in 0..cap {
        if rem.is_zero() {
            return Ok(out);
        }
        let (lead, coeff) = rem
            .terms()
            .max_by_key(|(e, _)| (pairing(e, &pos_coroot_sum), (*e).clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero polynomial has a leading term");
        if !datum.is_dominant(&lead) {
            return Err(Error::Structural(format!(
                "leading weight {lead:?} of an invariant element is not dominant"
            )));
        }
        let chi = weyl_character(datum, &lead)?;
        rem = rem.sub(&chi.scale(&coeff));
        out.push((lead, coeff));
    }
    Err(Error::ResourceCap(
        "decomposition did not terminate within the step cap".into(),
    ))
}

/// Rebuild an element from its decomposition (test helper and CLI output).
pub fn recompose(datum: &RootDatum, parts: &[(Vec<i64>, Cyclotomic)]) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero(datum.rank);
    for (lambda, c) in parts {
        acc = acc.add(&weyl_character(datum, lambda)?.scale(c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::datum_from_preset;

    fn chi(label: &str, lambda: &[i64]) -> LaurentPoly {
        let d = datum_from_preset(label).unwrap();
        weyl_character(&d, lambda).unwrap()
    }

    fn dim_of(p: &LaurentPoly) -> i64 {
        character_dimension(p)
            .to_rational()
            .unwrap()
            .to_integer()
            .to_string()
            .parse()
            .unwrap()
    }

    #[test]
    fn sl2_characters() {
        let v1 = chi("SL2", &[1]);
        assert_eq!(v1, LaurentPoly::parse("x1 + x1^-1", 1).unwrap());
        let v2 = chi("SL2", &[2]);
        assert_eq!(v2, LaurentPoly::parse("x1^2 + 1 + x1^-2", 1).unwrap());
        assert_eq!(dim_of(&chi("SL2", &[7])), 8);
    }

    #[test]
    fn sl3_standard_rep() {
        let std = chi("SL3", &[1, 0]);
        assert_eq!(dim_of(&std), 3);
        // weights of the standard rep in the fundamental-weight basis
        for w in [[1, 0], [-1, 1], [0, -1]] {
            assert!(std.coeff(&w).is_one(), "missing weight {w:?}");
        }
        assert_eq!(dim_of(&chi("SL3", &[1, 1])), 8);
    }

    #[test]
    fn fundamental_dimensions() {
        // classical values: strong independent checks on roots and coroots
        assert_eq!(dim_of(&chi("B2", &[1, 0])), 5);
        assert_eq!(dim_of(&chi("B2", &[0, 1])), 4);
        assert_eq!(dim_of(&chi("Sp4", &[1, 0])), 4);
        assert_eq!(dim_of(&chi("Sp4", &[0, 1])), 5);
        // alpha1 is the long simple root in this presentation, so omega1 is
        // the adjoint highest weight
        assert_eq!(dim_of(&chi("G2", &[1, 0])), 14);
        assert_eq!(dim_of(&chi("G2", &[0, 1])), 7);
    }

    #[test]
    fn gl2_characters() {
        let std = chi("GL2", &[1, 0]);
        assert_eq!(std, LaurentPoly::parse("x1 + x2", 2).unwrap());
        let det = chi("GL2", &[1, 1]);
        assert_eq!(det, LaurentPoly::parse("x1 x2", 2).unwrap());
        let sym2 = chi("GL2", &[2, 0]);
        assert_eq!(
            sym2,
            LaurentPoly::parse("x1^2 + x1 x2 + x2^2", 2).unwrap()
        );
    }

    #[test]
    fn rejects_non_dominant() {
        let d = datum_from_preset("SL2").unwrap();
        assert!(matches!(
            weyl_character(&d, &[-1]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn invariant_dims() {
        let d = datum_from_preset("SL2").unwrap();
        let adj = chi("SL2", &[2]);
        assert!(invariant_dim_group(&d, &adj).unwrap().is_zero());
        let sq = adj.mul(&adj);
        assert!(invariant_dim_group(&d, &sq).unwrap().is_one());
        assert!(invariant_dim_group(&d, &LaurentPoly::one(1))
            .unwrap()
            .is_one());
    }

    #[test]
    fn hom_orthogonality() {
        let d = datum_from_preset("A2").unwrap();
        let a = chi("A2", &[1, 0]);
        let b = chi("A2", &[0, 1]);
        assert!(hom_dim_group(&d, &a, &a).unwrap().is_one());
        assert!(hom_dim_group(&d, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn clebsch_gordan() {
        let d = datum_from_preset("SL2").unwrap();
        let v1 = chi("SL2", &[1]);
        let sq = v1.mul(&v1);
        let parts = decompose_irreducibles(&d, &sq).unwrap();
        let mut parts: Vec<(Vec<i64>, String)> =
            parts.into_iter().map(|(l, c)| (l, c.to_string())).collect();
        parts.sort();
        assert_eq!(
            parts,
            vec![(vec![0], "1".to_string()), (vec![2], "1".to_string())]
        );
    }

    #[test]
    fn decompose_recompose_round_trip() {
        let d = datum_from_preset("B2").unwrap();
        let a = chi("B2", &[1, 0]).mul(&chi("B2", &[0, 1]));
        let parts = decompose_irreducibles(&d, &a).unwrap();
        assert_eq!(recompose(&d, &parts).unwrap(), a);
    }

    #[test]
    fn lambda_minus_one_of_conormal() {
        // SL2, torus subgroup: conormal weights are the negated roots,
        // lambda_-1 = (1 - x^2)(1 - x^-2)
        let d = datum_from_preset("SL2").unwrap();
        let sub = SubDatum::torus(&d);
        let lam = conormal_weights(&sub).lambda_minus_one();
        let expect = LaurentPoly::parse("(-1) x1^2 + 2 + (-1) x1^-2", 1).unwrap();
        assert_eq!(lam, expect);
    }
}
