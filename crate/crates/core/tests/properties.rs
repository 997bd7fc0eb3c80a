use num_bigint::BigUint;
use proptest::prelude::*;
use semigold::goldbach_poly::{goldbach, VerdictKind};
use semigold::irreducibility::{
    certify_irreducible, enumerate_goldbach_bruteforce, factor_bruteforce, recheck, Certification,
};
use semigold::laurent_poly::default_vars;
use semigold::laurent_series::{
    decompose_series, gap_profile, SeriesCase, StructuredSeries, TailSpec,
};
use semigold::semidomain::TwoThirds;
use semigold::{parse_poly, Element, LaurentPoly, Ring, SearchConfig};

fn element(ring: Ring) -> BoxedStrategy<Element> {
    match ring {
        Ring::Natural => (0u64..40).prop_map(Element::nat).boxed(),
        Ring::NonnegRational => (0u64..30, 1u64..8)
            .prop_map(|(n, d)| Element::rational(n, d))
            .boxed(),
        Ring::QuadraticNat => (0u64..8, 0u64..8)
            .prop_map(|(a, b)| Element::quadratic(a, b))
            .boxed(),
        Ring::TwoThirds => proptest::collection::btree_map(-4i64..5, 1u32..4, 0..4)
            .prop_map(|m| {
                Element::TwoThirds(TwoThirds::from_witness(
                    m.into_iter().map(|(k, n)| (k, BigUint::from(n))),
                ))
            })
            .boxed(),
        Ring::Laurent(_) => unreachable!(),
    }
}

fn any_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Natural),
        Just(Ring::NonnegRational),
        Just(Ring::QuadraticNat),
        Just(Ring::TwoThirds)
    ]
}

fn triple() -> impl Strategy<Value = (Element, Element, Element)> {
    any_ring().prop_flat_map(|r| (element(r.clone()), element(r.clone()), element(r)))
}

fn poly(ring: Ring, max_terms: usize) -> BoxedStrategy<LaurentPoly> {
    proptest::collection::btree_map(-3i64..5, element(ring.clone()), 0..=max_terms)
        .prop_map(move |m| LaurentPoly::from_terms(ring.clone(), m).unwrap())
        .boxed()
}

fn nat_poly(max_terms: usize) -> BoxedStrategy<LaurentPoly> {
    poly(Ring::Natural, max_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn element_laws((a, b, c) in triple()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        if !a.is_zero() && !b.is_zero() {
            prop_assert!(!a.mul(&b).unwrap().is_zero());
        }
        if a.add(&b).unwrap().is_zero() {
            prop_assert!(a.is_zero() && b.is_zero());
        }
    }

    #[test]
    fn unit_split_adds_up(s in prop_oneof![element(Ring::Natural), element(Ring::TwoThirds)]) {
        prop_assume!(!s.is_zero());
        let split = s.unit_decompose().unwrap();
        prop_assert!(split.u.is_unit());
        prop_assert_eq!(split.u.add(&split.v).unwrap(), s);
    }

    #[test]
    fn natural_unit_summands(n in 1u64..20) {
        let got = Element::nat(n).min_unit_summands(3, &SearchConfig::default()).unwrap();
        prop_assert_eq!(got, (n <= 3).then_some(n as u32));
    }

    #[test]
    fn two_thirds_rewrites_keep_value(
        m in proptest::collection::btree_map(-4i64..5, 1u32..5, 1..4),
        steps in proptest::collection::vec((any::<bool>(), -5i64..6), 0..12),
    ) {
        let mut t = TwoThirds::from_witness(m.into_iter().map(|(k, n)| (k, BigUint::from(n))));
        let value = t.value().clone();
        for (down, k) in steps {
            let next = if down { t.rewrite_down(k) } else { t.rewrite_up(k) };
            if let Some(n) = next {
                t = n;
            }
            let sum = t.witness().iter().fold(TwoThirds::zero(), |acc, (k, n)| {
                (0..u64::try_from(n).unwrap()).fold(acc, |a, _| a.add(&TwoThirds::atom(*k)))
            });
            prop_assert_eq!(sum.value(), &value);
        }
    }

    #[test]
    fn poly_laws((f, g, h) in prop_oneof![Just(Ring::Natural), Just(Ring::QuadraticNat)]
        .prop_flat_map(|r| (poly(r.clone(), 4), poly(r.clone(), 4), poly(r, 4))))
    {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.add(&g).unwrap().add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g.add(&h).unwrap()).unwrap(), f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn shift_and_mass(f in nat_poly(5), g in nat_poly(5)) {
        prop_assume!(!f.is_zero());
        let (n, k) = f.normalize_shift().unwrap();
        prop_assert_eq!(n.shift(k).unwrap(), f.clone());
        prop_assert_eq!(f.add(&g).unwrap().mass(), f.mass().add(&g.mass()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mass(), f.mass().mul(&g.mass()).unwrap());
    }

    #[test]
    fn parse_format_round_trip(f in prop_oneof![Just(Ring::Natural), Just(Ring::QuadraticNat), Just(Ring::NonnegRational)]
        .prop_flat_map(|r| poly(r, 5)))
    {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(parse_poly(&f.to_string(), f.ring(), &["x"]).unwrap(), f);
    }

    #[test]
    fn bivariate_round_trip(m in proptest::collection::btree_map((-2i64..3, -2i64..3), 1u64..5, 1..6)) {
        let text = m.iter().map(|((a, b), c)| format!("{c}x^{a}y^{b}")).collect::<Vec<_>>().join(" + ");
        let vars = default_vars(2);
        let f = semigold::laurent_poly::parse_poly_with(&text, &Ring::Natural, &vars).unwrap();
        prop_assert_eq!(semigold::laurent_poly::parse_poly_with(&f.to_string(), &Ring::Natural, &vars).unwrap(), f);
    }
}

fn low_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(0u64..4, 2..=6).prop_map(|c| {
        LaurentPoly::from_terms(
            Ring::Natural,
            c.into_iter()
                .enumerate()
                .map(|(e, c)| (e as i64, Element::nat(c))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificates_are_sound_and_recheck(f in low_poly()) {
        prop_assume!(f.len() >= 2);
        let cfg = SearchConfig::default();
        match certify_irreducible(&f, &cfg).unwrap() {
            Certification::Irreducible(c) => {
                prop_assert!(factor_bruteforce(&f, &cfg).unwrap().is_none());
                prop_assert!(recheck(&f, &c, &cfg).unwrap());
            }
            Certification::NotIrreducible(w) => prop_assert_eq!(w.g.mul(&w.h).unwrap(), f),
            Certification::Unknown(_) => {}
        }
    }

    #[test]
    fn splits_add_up(f in low_poly()) {
        prop_assume!(f.len() >= 2 && f.degree_span() <= 4);
        let cfg = SearchConfig::default();
        for parts in enumerate_goldbach_bruteforce(&f, 2, &cfg).unwrap() {
            prop_assert_eq!(parts[0].add(&parts[1]).unwrap(), f.clone());
        }
    }

    #[test]
    fn sum_of_two_is_exact(f in low_poly()) {
        prop_assume!(f.len() >= 2);
        let v = goldbach(&f, &SearchConfig::default()).unwrap();
        if v.kind == VerdictKind::SumOfTwo {
            prop_assert_eq!(v.summands[0].poly.add(&v.summands[1].poly).unwrap(), f);
        }
    }
}

fn series() -> impl Strategy<Value = StructuredSeries> {
    (
        proptest::collection::btree_map(-4i64..4, 1u64..4, 0..4),
        0i64..4,
        any::<bool>(),
        1u64..4,
        1u64..3,
        proptest::collection::vec(1u64..4, 1..3),
    )
        .prop_map(|(head, offset, affine, g, a, cycle)| {
            let head: Vec<(i64, Element)> = head
                .into_iter()
                .map(|(e, c)| (e, Element::nat(c)))
                .collect();
            let start = head.last().map_or(0, |t| t.0 + 1) + offset;
            let cycle = cycle.into_iter().map(Element::nat).collect();
            if affine {
                StructuredSeries::affine_gap(Ring::Natural, head, start, g, a, cycle).unwrap()
            } else {
                StructuredSeries::constant_gap(Ring::Natural, head, start, g, cycle).unwrap()
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn decompositions_add_up_at_every_order(f in series()) {
        let d = decompose_series(&f, &SearchConfig::default()).unwrap();
        prop_assert!(!d.summands.is_empty() && d.summands.len() <= 3);
        let lo = f.min_exp().unwrap();
        let mut sum = LaurentPoly::zero(Ring::Natural);
        let mut want = LaurentPoly::zero(Ring::Natural);
        // incremental truncations: compare at every order up to 500
        let all: Vec<_> = d.summands.iter().map(|s| s.series.truncate(500)).collect();
        let full = f.truncate(500);
        for n in lo..=500 {
            for p in &all {
                if let Some(c) = p.coeff(n) {
                    sum.add_term(n, c.clone()).unwrap();
                }
            }
            if let Some(c) = full.coeff(n) {
                want.add_term(n, c.clone()).unwrap();
            }
            prop_assert_eq!(&sum, &want, "order {}", n);
        }
        prop_assert_eq!(d.truncated_sum(137).unwrap(), f.truncate(137));
    }

    #[test]
    fn hyper_certificates_hold_on_prefixes(f in series()) {
        let d = decompose_series(&f, &SearchConfig::default()).unwrap();
        for s in &d.summands {
            if s.certificate.kind.name() != "HyperMonolithic" {
                continue;
            }
            let t = s.series.truncate(300);
            let e: Vec<i64> = t.support();
            for k in 3..=e.len() {
                let first = e[1] - e[0];
                prop_assert!(e[..k].windows(2).skip(1).all(|w| w[1] - w[0] > first), "{}", s.series);
            }
        }
    }

    #[test]
    fn gap_profile_matches_inspection(f in series()) {
        let p = gap_profile(&f).unwrap();
        let e: Vec<i64> = f.terms().take(10_000).map(|t| t.0).collect();
        let gaps: Vec<u64> = e.windows(2).map(|w| (w[1] - w[0]) as u64).collect();
        prop_assert_eq!(*gaps.iter().min().unwrap(), p.delta);
        let hits: Vec<usize> = (0..gaps.len()).filter(|&i| gaps[i] == p.delta).collect();
        prop_assert_eq!(hits[0] as u64, p.alpha);
        if p.j_finite {
            prop_assert_eq!(Some(*hits.last().unwrap() as u64), p.beta);
            prop_assert!(*hits.last().unwrap() < 100);
        } else {
            prop_assert!(*hits.last().unwrap() > 9_000);
        }
        let constant = matches!(f.tail(), TailSpec::ConstantGap { gap, .. } if *gap == p.delta);
        prop_assert_eq!(!p.j_finite, constant);
    }
}

#[test]
fn polynomial_series_follow_the_polynomial_engine() {
    let cfg = SearchConfig::default();
    for c in 0u64..4u64.pow(4) {
        let coeffs = [1 + c % 3, c / 3 % 4, c / 12 % 4, 1 + c / 48];
        let f = LaurentPoly::from_terms(
            Ring::Natural,
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i64, Element::nat(c))),
        )
        .unwrap();
        let d = decompose_series(&StructuredSeries::from_poly(&f).unwrap(), &cfg).unwrap();
        let v = goldbach(&f, &cfg).unwrap();
        assert_eq!(d.case, SeriesCase::Polynomial);
        let a: Vec<LaurentPoly> = d.summands.iter().map(|s| s.series.head_poly()).collect();
        let b: Vec<LaurentPoly> = v.summands.iter().map(|s| s.poly.clone()).collect();
        assert_eq!(a, b, "{f}");
    }
}
