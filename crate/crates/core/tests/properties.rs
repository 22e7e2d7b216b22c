//! Randomized algebraic invariants.  Each property encodes an identity the
//! library is supposed to preserve for *all* inputs; proptest shrinks any
//! counterexample it finds.

use proptest::prelude::*;

use weylkit::completion::{jet, jet_transport, twist};
use weylkit::cyclotomic::{Cyclotomic, Rational};
use weylkit::induction::induce;
use weylkit::rep::{hom_dim_group, is_weyl_invariant, weyl_character, WeightMultiset};
use weylkit::root_datum::datum_from_preset;
use weylkit::{LaurentPoly, TorsionPoint};

const PRESETS: &[&str] = &["SL2", "A2", "B2", "GL2"];

fn preset_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(PRESETS)
}

fn cyclotomic_strategy() -> impl Strategy<Value = Cyclotomic> {
    // span Q, Q(i), Q(zeta_3), Q(zeta_6) with small numerators
    (1u64..=6, 0i64..6, -4i64..=4, 1i64..=3).prop_map(|(n, k, num, den)| {
        let root = Cyclotomic::root_of_unity(n, k % n as i64);
        let r = Rational::new(num.into(), den.into());
        root.scale(&r)
    })
}

type TermData = Vec<(Vec<i64>, Cyclotomic)>;

fn terms_strategy() -> impl Strategy<Value = TermData> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, 2), cyclotomic_strategy()),
        0..5,
    )
}

fn build_poly(rank: usize, terms: &TermData) -> LaurentPoly {
    let mut p = LaurentPoly::zero(rank);
    for (e, c) in terms {
        p = p.add(&LaurentPoly::monomial(rank, &e[..rank], c.clone()));
    }
    p
}

fn poly_strategy(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    terms_strategy().prop_map(move |terms| build_poly(rank, &terms))
}

fn torsion_strategy(rank: usize) -> impl Strategy<Value = TorsionPoint> {
    prop::collection::vec((0i64..12, prop::sample::select(vec![2i64, 3, 4, 6])), rank).prop_map(
        |coords| {
            TorsionPoint::new(
                coords
                    .into_iter()
                    .map(|(num, den)| Rational::new(num.into(), den.into()))
                    .collect(),
            )
        },
    )
}

proptest! {
    #[test]
    fn cyclotomic_mul_associative(
        a in cyclotomic_strategy(),
        b in cyclotomic_strategy(),
        c in cyclotomic_strategy(),
    ) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
    }

    #[test]
    fn cyclotomic_inverse_round_trip(a in cyclotomic_strategy()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul_ref(&inv).is_one());
    }

    #[test]
    fn cyclotomic_display_parse_round_trip(a in cyclotomic_strategy()) {
        let s = a.to_string();
        let back: Cyclotomic = s.parse().unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn laurent_display_parse_round_trip(p in poly_strategy(2)) {
        let s = p.to_string();
        let back = LaurentPoly::parse(&s, 2).unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn laurent_dual_is_involution(p in poly_strategy(2)) {
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn exact_div_round_trip(p in poly_strategy(2), d in poly_strategy(2)) {
        prop_assume!(!d.is_zero());
        let prod = p.mul(&d);
        let q = prod.exact_div(&d).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn lambda_minus_one_multiplicative(
        ws1 in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 0..3),
        ws2 in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 0..3),
    ) {
        let s = WeightMultiset::from_weights(2, ws1.clone());
        let t = WeightMultiset::from_weights(2, ws2.clone());
        let mut joined = ws1;
        joined.extend(ws2);
        let st = WeightMultiset::from_weights(2, joined);
        prop_assert_eq!(
            st.lambda_minus_one(),
            s.lambda_minus_one().mul(&t.lambda_minus_one())
        );
    }

    #[test]
    fn twist_is_ring_homomorphism(
        p in poly_strategy(2),
        r in poly_strategy(2),
        q in torsion_strategy(2),
    ) {
        prop_assert_eq!(twist(&p.mul(&r), &q), twist(&p, &q).mul(&twist(&r, &q)));
        prop_assert_eq!(twist(&p.add(&r), &q), twist(&p, &q).add(&twist(&r, &q)));
    }

    #[test]
    fn twist_composes_as_addition(
        p in poly_strategy(2),
        q1 in torsion_strategy(2),
        q2 in torsion_strategy(2),
    ) {
        prop_assert_eq!(twist(&twist(&p, &q1), &q2), twist(&p, &q1.add(&q2)));
    }
}

proptest! {
    // heavier group-level checks: fewer cases
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weyl_characters_are_invariant(
        label in preset_strategy(),
        mut lam in prop::collection::vec(0i64..=2, 2),
    ) {
        let d = datum_from_preset(label).unwrap();
        // descending nonnegative coordinates are dominant in both the
        // fundamental-weight and the standard GL basis
        lam.sort_by(|a, b| b.cmp(a));
        let lam = &lam[..d.rank];
        let chi = weyl_character(&d, lam).unwrap();
        prop_assert!(is_weyl_invariant(&d, &chi).unwrap());
    }

    #[test]
    fn induced_classes_are_invariant(label in preset_strategy(), terms in terms_strategy()) {
        let d = datum_from_preset(label).unwrap();
        let p = build_poly(d.rank, &terms);
        let torus = weylkit::root_datum::SubDatum::torus(&d);
        let ind = induce(&torus, &p).unwrap();
        prop_assert!(is_weyl_invariant(&d, &ind).unwrap());
    }

    #[test]
    fn irreducibles_are_orthonormal(
        label in preset_strategy(),
        mut lam in prop::collection::vec(0i64..=2, 2),
        mut mu in prop::collection::vec(0i64..=2, 2),
    ) {
        let d = datum_from_preset(label).unwrap();
        lam.sort_by(|a, b| b.cmp(a));
        mu.sort_by(|a, b| b.cmp(a));
        let lam = &lam[..d.rank];
        let mu = &mu[..d.rank];
        let a = weyl_character(&d, lam).unwrap();
        let b = weyl_character(&d, mu).unwrap();
        let expect = if lam == mu { Cyclotomic::one() } else { Cyclotomic::zero() };
        prop_assert_eq!(hom_dim_group(&d, &a, &b).unwrap(), expect);
    }

    #[test]
    fn jets_are_natural(
        label in preset_strategy(),
        terms in terms_strategy(),
        q2 in torsion_strategy(2),
    ) {
        let d = datum_from_preset(label).unwrap();
        let p = build_poly(d.rank, &terms);
        let q = TorsionPoint::new(q2.coords()[..d.rank].to_vec());
        for w in d.weyl_elements().unwrap() {
            let wa = p.act_matrix(&w.matrix);
            let wq = w.act_torsion(&q);
            prop_assert_eq!(jet(&wa, &wq, 3), jet_transport(&w, &jet(&p, &q, 3)));
        }
    }
}
