use proptest::prelude::*;

use wp_core::quadratic::perp;
use wp_core::wp::{gk_dimension_from_dims, GkEstimate, GkModel};
use wp_core::tate::*;
use wp_core::wp::build_wp_instance;
use wp_core::{PathElement, QuadraticPresentation, Rational};

fn tate_monomial() -> impl Strategy<Value = DgMonomial> {
    (0u32..256, proptest::collection::vec(0u32..2, 8))
        .prop_filter("degree at most 4", |(odd, even)| odd.count_ones() + 2 * even.iter().sum::<u32>() <= 4)
        .prop_map(|(odd, even)| DgMonomial { odd, even })
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(0u8..10, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tate_d_squared_vanishes(u in tate_monomial()) {
        let tate = build_tate(2).unwrap();
        prop_assert!(tate.d(&tate.d_monomial(&u)).is_empty());
    }

    #[test]
    fn tate_product_is_graded_commutative(a in tate_monomial(), b in tate_monomial()) {
        let tate = build_tate(2).unwrap();
        let ab = tate.mul_monomials(&a, &b);
        let ba = tate.mul_monomials(&b, &a);
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let (Some((s, m)), Some((t, n))) = (ab, ba) {
            prop_assert_eq!(&m, &n);
            let sign = if a.odd.count_ones() * b.odd.count_ones() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(s, sign * t);
        }
    }

    #[test]
    fn hstar_is_associative(a in word(3), b in word(3), c in word(3)) {
        let h = hstar_rtilde();
        let (a, b, c) = (h.word(&a), h.word(&b), h.word(&c));
        prop_assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
    }

    #[test]
    fn perp_is_an_involution(mask in 0u32..(1 << 12), mix in -3i64..4) {
        let inst = build_wp_instance(2).unwrap();
        let pool: Vec<PathElement> = inst.basic.relations().iter().chain(inst.yoneda.relations()).cloned().collect();
        let mut rels: Vec<PathElement> = pool.iter().enumerate()
            .filter(|(i, _)| mask >> (i % 12) & 1 == 1)
            .map(|(_, r)| r.clone())
            .collect();
        if rels.len() >= 2 {
            let (x, y) = (&rels[0], &rels[1]);
            let same_ends = x.terms().next().map(|(p, _)| (p.src(), p.tgt()))
                == y.terms().next().map(|(p, _)| (p.src(), p.tgt()));
            if same_ends {
                let combo = x.add(&y.scale(&Rational::from_int(mix)));
                rels[0] = combo;
            }
        }
        rels.retain(|r| !r.is_zero());
        let pres = QuadraticPresentation::new(inst.quiver.clone(), rels).unwrap();
        let back = perp(&perp(&pres));
        prop_assert!(back.same_span(&pres));
    }

    #[test]
    fn gk_recovers_polynomial_growth(d in 0usize..4, lead in 1usize..5, low in 0usize..7) {
        let dims: Vec<usize> = (0..12usize).map(|n| lead * (n + 1).pow(d as u32) + low * n.min(d)).collect();
        let est = gk_dimension_from_dims(&dims, GkModel::Polynomial).unwrap();
        // n.min(d) is eventually constant, so drop the first d entries
        let tail = gk_dimension_from_dims(&dims[d..], GkModel::Polynomial).unwrap();
        prop_assert_eq!(tail, GkEstimate::Exact { degree: d + 1, period: 1 });
        if low == 0 {
            prop_assert_eq!(est, GkEstimate::Exact { degree: d + 1, period: 1 });
        }
    }

    #[test]
    fn gk_quasi_polynomial_needs_period_two(a in 1usize..6, b in 1usize..6) {
        prop_assume!(a != b);
        let dims: Vec<usize> = (0..12).map(|n| if n % 2 == 0 { a } else { b }).collect();
        prop_assert_eq!(
            gk_dimension_from_dims(&dims, GkModel::RationalSeries(2)).unwrap(),
            GkEstimate::Exact { degree: 1, period: 2 }
        );
        let poly = gk_dimension_from_dims(&dims, GkModel::Polynomial).unwrap();
        let is_bracket = matches!(poly, GkEstimate::Bracket { .. });
        prop_assert!(is_bracket);
    }
}
