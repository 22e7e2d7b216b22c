//! Twisted induction and restriction between equal-rank subgroups, the
//! reciprocity / transitivity / projection identities, and the fixed-point
//! pushforward on `G/P`.
//!
//! Positivity is fixed by the parent's simple roots; only standard
//! parabolics are supported.  With that choice the pushforward of a
//! dominant-weight line-bundle class over `G/B` recovers the Weyl character
//! formula, which pins the orientation of every multiset below.

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RationalFn};
use crate::rep::{hom_dim_group, hom_dim_sub, WeightMultiset};
use crate::report::{CaseResult, VerificationReport};
use crate::root_datum::{coset_representatives, SubDatum, SubKind, WeylElement};

/// The three complementary root multisets of an equal-rank subgroup, split
/// by the standard positivity: `g_mod_z = g_mod_p + p_mod_z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelKind {
    /// all parent roots outside the subgroup
    GModZ,
    /// the negative parent roots outside the subgroup (the conormal
    /// directions of `G/P` at the base point)
    GModP,
    /// the positive parent roots outside the subgroup
    PModZ,
}

pub fn relative_weights(sub: &SubDatum, kind: RelKind, dualize: bool) -> Result<WeightMultiset> {
    if matches!(kind, RelKind::GModP | RelKind::PModZ)
        && sub.kind == SubKind::Centralizer
        && !sub.is_full()
    {
        return Err(Error::Precondition(
            "parabolic splits need a Levi or torus subdatum".into(),
        ));
    }
    let datum = &sub.parent;
    let mut ws = WeightMultiset::new(datum.rank);
    for i in sub.complement_root_indices() {
        let root = &datum.roots[i];
        let positive = datum.is_positive_root(root);
        let keep = match kind {
            RelKind::GModZ => true,
            RelKind::GModP => !positive,
            RelKind::PModZ => positive,
        };
        if keep {
            ws.insert(root.clone(), 1);
        }
    }
    Ok(if dualize { ws.dual() } else { ws })
}

/// Restriction `R(G) -> R(H)` is the inclusion of invariants; the value is
/// the same Laurent polynomial, re-checked for the smaller invariance.
pub fn restrict(a: &LaurentPoly, target: &SubDatum) -> Result<LaurentPoly> {
    for w in target.weyl_group() {
        if &a.act_matrix(&w.matrix) != a {
            return Err(Error::Structural(
                "restriction input is not invariant under the target Weyl group".into(),
            ));
        }
    }
    Ok(a.clone())
}

/// Orbit sum over one representative per coset `w W1`.
fn coset_orbit_sum(
    full: &[WeylElement],
    sub: &[WeylElement],
    a: &LaurentPoly,
) -> Result<LaurentPoly> {
    let reps = coset_representatives(full, sub)?;
    let mut acc = LaurentPoly::zero(a.rank());
    for w in &reps {
        acc = acc.add(&a.act_matrix(&w.matrix));
    }
    Ok(acc)
}

/// Twisted induction `ind^G_H(a) = sum over W/W1 of w a`.
pub fn induce(sub: &SubDatum, a: &LaurentPoly) -> Result<LaurentPoly> {
    for w in sub.weyl_group() {
        if &a.act_matrix(&w.matrix) != a {
            return Err(Error::Precondition(
                "induction input is not invariant under the subgroup Weyl group".into(),
            ));
        }
    }
    let full = sub.parent.weyl_elements()?;
    let out = coset_orbit_sum(&full, sub.weyl_group(), a)?;
    for w in &full {
        if out.act_matrix(&w.matrix) != out {
            return Err(Error::Structural(
                "induced element failed the full-invariance check".into(),
            ));
        }
    }
    Ok(out)
}

/// `sum over W of w a` — symmetrization helper for sampling invariant
/// elements.
pub fn symmetrize(elements: &[WeylElement], a: &LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(a.rank());
    for w in elements {
        acc = acc.add(&a.act_matrix(&w.matrix));
    }
    acc
}

/// The fixed-point denominator at the base point: `lambda_-1` of the
/// conormal weights of `G/P`, i.e. `prod over positive complement roots
/// gamma of (1 - x^-gamma)`.
pub fn fixed_point_denominator(sub: &SubDatum) -> Result<LaurentPoly> {
    Ok(relative_weights(sub, RelKind::GModP, false)?.lambda_minus_one())
}

/// Equivariant Euler characteristic on `G/P` by localization to the torus
/// fixed points: sums `w(a)/w(d)` over coset representatives on a common
/// denominator and performs a single exact division at the end.
pub fn pushforward_fixed_points(sub: &SubDatum, a: &LaurentPoly) -> Result<LaurentPoly> {
    for w in sub.weyl_group() {
        if &a.act_matrix(&w.matrix) != a {
            return Err(Error::Precondition(
                "pushforward input is not invariant under the subgroup Weyl group".into(),
            ));
        }
    }
    let d = fixed_point_denominator(sub)?;
    let full = sub.parent.weyl_elements()?;
    let reps = coset_representatives(&full, sub.weyl_group())?;
    let mut acc: Option<RationalFn> = None;
    for w in &reps {
        let term = RationalFn::new(a.act_matrix(&w.matrix), d.act_matrix(&w.matrix))?;
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    let out = acc
        .expect("at least the identity coset")
        .into_polynomial()
        .map_err(|e| match e {
            Error::NotDivisible { remainder } => Error::Structural(format!(
                "fixed-point sum is not polynomial (remainder {remainder}); wrong weight multiset"
            )),
            other => other,
        })?;
    for w in &full {
        if out.act_matrix(&w.matrix) != out {
            return Err(Error::Structural(
                "pushforward failed the full-invariance check".into(),
            ));
        }
    }
    Ok(out)
}

/// Both sides of the alternate induction formula: the coset orbit sum
/// against the localized pushforward of `lambda_-1(conormal) * a`.  The two
/// sides go through disjoint code paths (no rational arithmetic on the
/// left, no orbit sum shortcut on the right).
pub fn verify_alternate_induction(sub: &SubDatum, a: &LaurentPoly) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("localization");
    let lhs = induce(sub, a)?;
    let conormal = fixed_point_denominator(sub)?;
    let rhs = pushforward_fixed_points(sub, &conormal.mul(a))?;
    report.push(CaseResult::compare(format!("ind vs pushforward [{a}]"), &lhs, &rhs));
    Ok(report)
}

/// Reciprocity: `Hom_G(ind a, b) = Hom_H(lambda_-1((g/h)*) a, res b)`.
pub fn check_reciprocity(
    sub: &SubDatum,
    a: &LaurentPoly,
    b: &LaurentPoly,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("reciprocity");
    let lhs = hom_dim_group(&sub.parent, &induce(sub, a)?, b)?;
    let factor = relative_weights(sub, RelKind::GModZ, true)?.lambda_minus_one();
    let res_b = restrict(b, sub)?;
    let rhs = hom_dim_sub(sub, &factor.mul(a), &res_b);
    report.push(CaseResult::compare(
        format!("reciprocity [{a} ; {b}]"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Transitivity `ind^G_H (ind^H_K a) = ind^G_K a` and the projection
/// formula `ind^G_H(alpha res beta) = ind^G_H(alpha) beta` on a chain
/// `K <= H <= G` of subdata of the same parent.
pub fn verify_induction_axioms(
    h: &SubDatum,
    k: &SubDatum,
    samples: &[LaurentPoly],
) -> Result<VerificationReport> {
    if h.parent != k.parent {
        return Err(Error::Precondition("chain subdata must share a parent".into()));
    }
    let h_set: std::collections::BTreeSet<&WeylElement> = h.sub_weyl.iter().collect();
    if !k.sub_weyl.iter().all(|w| h_set.contains(w)) {
        return Err(Error::Precondition(
            "inner subgroup Weyl group is not contained in the outer one".into(),
        ));
    }
    let full = h.parent.weyl_elements()?;
    let mut report = VerificationReport::new("axioms");
    for a in samples {
        // W_K-invariant representative of the sample
        let ak = symmetrize(&k.sub_weyl, a);
        let via_h = coset_orbit_sum(&full, h.weyl_group(), &coset_orbit_sum(
            &h.sub_weyl,
            k.weyl_group(),
            &ak,
        )?)?;
        let direct = coset_orbit_sum(&full, k.weyl_group(), &ak)?;
        report.push(CaseResult::compare(
            format!("transitivity [{a}]"),
            &via_h,
            &direct,
        ));

        // projection formula with alpha in R(H), beta in R(G)
        let alpha = symmetrize(&h.sub_weyl, a);
        let beta = symmetrize(&full, a);
        let lhs = induce(h, &alpha.mul(&restrict(&beta, h)?))?;
        let rhs = induce(h, &alpha)?.mul(&beta);
        report.push(CaseResult::compare(format!("projection [{a}]"), &lhs, &rhs));
    }
    Ok(report)
}

/// `|W/W1|` as a cyclotomic constant, for the degenerate checks.
pub fn index_constant(sub: &SubDatum) -> Result<Cyclotomic> {
    let full = sub.parent.weyl_elements()?;
    Ok(Cyclotomic::from_i64(
        (full.len() / sub.sub_weyl.len()) as i64,
    ))
}
