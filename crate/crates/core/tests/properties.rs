//! Property suites: ring axioms on random truncated classes, power-law
//! identities, Whitney multiplicativity on random sums, and the heavier
//! exhaustive module invariants that are not acceptance criteria.

use proptest::prelude::*;

use whitney::dihedral::{irreducibles, DihedralParam, Representation};
use whitney::lifting::lift_report_cohomological;
use whitney::ring_f2::{normalize, CohomClass, Monomial, RingPresentation};
use whitney::swc::{total_swc, total_swc_truncated};
use whitney::sweeps;

fn arb_presentation() -> impl Strategy<Value = RingPresentation> {
    prop_oneof![
        Just(RingPresentation::Odd),
        Just(RingPresentation::TwoModFour),
        Just(RingPresentation::ZeroModFour),
    ]
}

fn class_from_raw(kind: RingPresentation, trunc: u32, raw: &[(u32, u32, u32)]) -> CohomClass {
    let terms = raw.iter().map(|&(i, j, k)| match kind {
        RingPresentation::Odd => Monomial::Odd { a: i },
        RingPresentation::TwoModFour => Monomial::TwoModFour { a: i, b: j },
        RingPresentation::ZeroModFour => normalize(i, j, k),
    });
    CohomClass::from_terms(kind, trunc, terms).expect("kinds match")
}

fn arb_class() -> impl Strategy<Value = CohomClass> {
    (arb_presentation(), 0u32..=10).prop_flat_map(|(kind, trunc)| {
        proptest::collection::vec((0u32..=10, 0u32..=10, 0u32..=5), 0..10)
            .prop_map(move |raw| class_from_raw(kind, trunc, &raw))
    })
}

fn unit(p: &CohomClass) -> CohomClass {
    if p.constant_term() {
        p.clone()
    } else {
        p.add(&CohomClass::one(p.presentation(), p.truncation_degree()))
            .unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(
        (p, q, r) in (arb_presentation(), 0u32..=10).prop_flat_map(|(kind, trunc)| {
            let one = proptest::collection::vec((0u32..=10, 0u32..=10, 0u32..=5), 0..10)
                .prop_map(move |raw| class_from_raw(kind, trunc, &raw));
            let two = proptest::collection::vec((0u32..=10, 0u32..=10, 0u32..=5), 0..10)
                .prop_map(move |raw| class_from_raw(kind, trunc, &raw));
            let three = proptest::collection::vec((0u32..=10, 0u32..=10, 0u32..=5), 0..10)
                .prop_map(move |raw| class_from_raw(kind, trunc, &raw));
            (one, two, three)
        })
    ) {
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(
            p.mul(&q).unwrap().mul(&r).unwrap(),
            p.mul(&q.mul(&r).unwrap()).unwrap(),
        );
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap(),
        );
        prop_assert!(p.add(&p).unwrap().is_zero());
    }

    #[test]
    fn pow_is_additive_in_the_exponent(p in arb_class(), a in -4i64..=4, b in -4i64..=4) {
        let u = unit(&p);
        prop_assert_eq!(
            u.pow(a + b).unwrap(),
            u.pow(a).unwrap().mul(&u.pow(b).unwrap()).unwrap(),
        );
    }

    #[test]
    fn pow_is_additive_nonnegative(p in arb_class(), a in 0i64..=5, b in 0i64..=5) {
        prop_assert_eq!(
            p.pow(a + b).unwrap(),
            p.pow(a).unwrap().mul(&p.pow(b).unwrap()).unwrap(),
        );
    }

    #[test]
    fn squaring_is_frobenius(p in arb_class()) {
        let trunc = p.truncation_degree();
        let squared = p.pow(2).unwrap();
        let expected: Vec<Monomial> = p
            .terms()
            .into_iter()
            .map(|t| match t {
                Monomial::Odd { a } => Monomial::Odd { a: 2 * a },
                Monomial::TwoModFour { a, b } => Monomial::TwoModFour { a: 2 * a, b: 2 * b },
                Monomial::ZeroModFour { x, y, w } => Monomial::ZeroModFour {
                    x: 2 * x,
                    y: 2 * y,
                    w: 2 * w,
                },
            })
            .filter(|t| t.degree() <= trunc)
            .collect();
        let rebuilt = CohomClass::from_terms(p.presentation(), trunc, expected).unwrap();
        prop_assert_eq!(squared, rebuilt);
        prop_assert!(p.pow(2).unwrap().terms().iter().all(|t| t.degree() % 2 == 0));
    }

    #[test]
    fn invert_unit_is_a_right_inverse(p in arb_class()) {
        let u = unit(&p);
        let inv = u.invert_unit().unwrap();
        prop_assert!(u.mul(&inv).unwrap().is_one());
    }
}

fn arb_representation(ms: &'static [u64], max_mult: u64) -> impl Strategy<Value = Representation> {
    proptest::sample::select(ms).prop_flat_map(move |m| {
        let g = DihedralParam::new(m).unwrap();
        let labels = irreducibles(g);
        proptest::collection::vec(0u64..=max_mult, labels.len()).prop_map(move |counts| {
            Representation::from_multiplicities(g, labels.iter().copied().zip(counts)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn whitney_sum_is_multiplicative(
        (a, b) in proptest::sample::select(&[3u64, 4, 6, 8, 12][..]).prop_flat_map(|m| {
            let g = DihedralParam::new(m).unwrap();
            let labels = irreducibles(g);
            let len = labels.len();
            let labels2 = labels.clone();
            (
                proptest::collection::vec(0u64..=3, len).prop_map(move |c| {
                    Representation::from_multiplicities(g, labels.iter().copied().zip(c)).unwrap()
                }),
                proptest::collection::vec(0u64..=3, len).prop_map(move |c| {
                    Representation::from_multiplicities(g, labels2.iter().copied().zip(c)).unwrap()
                }),
            )
        })
    ) {
        let sum = a.direct_sum(&b).unwrap();
        let trunc = sum.degree() as u32;
        prop_assert_eq!(
            total_swc(&sum).unwrap(),
            total_swc_truncated(&a, trunc)
                .unwrap()
                .mul(&total_swc_truncated(&b, trunc).unwrap())
                .unwrap(),
        );
    }

    #[test]
    fn total_swc_shape(rep in arb_representation(&[3, 4, 6, 8, 12], 3)) {
        let w = total_swc(&rep).unwrap();
        prop_assert!(w.constant_term());
        prop_assert!(w
            .max_term_degree()
            .is_none_or(|d| u64::from(d) <= rep.degree()));
    }

    #[test]
    fn all_three_lifts_iff_w1sq_and_w2_vanish(rep in arb_representation(&[3, 4, 6, 8, 12], 3)) {
        let report = lift_report_cohomological(&rep).unwrap();
        let low = total_swc_truncated(&rep, 2).unwrap();
        let w1 = low.graded_component(1).unwrap();
        let w2 = low.graded_component(2).unwrap();
        let all = report.lifts_tilde_o && report.lifts_pin_plus && report.lifts_pin_minus;
        prop_assert_eq!(all, w1.mul(&w1).unwrap().is_zero() && w2.is_zero());
    }
}

#[test]
fn restriction_naturality_exhaustive() {
    for m in [4, 8] {
        let report = sweeps::restriction_naturality(m, 2).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn sylow_compatibility_exhaustive() {
    for m in [12, 20, 24] {
        let report = sweeps::sylow_compatibility(m, 2).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn serialization_round_trips_are_bit_exact() {
    let samples = [
        (RingPresentation::Odd, "1+v+v^3"),
        (RingPresentation::TwoModFour, "v1+v2^2+v1*v2"),
        (RingPresentation::ZeroModFour, "1+x+y^2*w+w^3"),
    ];
    for (kind, text) in samples {
        let cls = CohomClass::parse_text(kind, 8, text).unwrap();
        assert_eq!(
            CohomClass::parse_text(kind, 8, &cls.to_string()).unwrap(),
            cls
        );
        let tuples = cls.to_exponent_tuples();
        assert_eq!(
            CohomClass::from_exponent_tuples(kind, 8, &tuples).unwrap(),
            cls
        );
    }
}
