//! Tate-side checks against closed forms, hand expansions and brute force.

use wp_core::comm::{build_gra, Polynomial};
use wp_core::tate::*;
use wp_core::{c_p, Rational};

/// Power-series coefficients of `Π (1 + t^a)^{e} / Π (1 - t^b)^{f}` by
/// plain convolution.
fn series(num: &[(usize, u32)], den: &[(usize, u32)], max: usize) -> Vec<i64> {
    let mut c = vec![0i64; max + 1];
    c[0] = 1;
    let mul = |c: &Vec<i64>, f: &Vec<i64>| -> Vec<i64> {
        (0..=max).map(|n| (0..=n).map(|k| c[k] * f[n - k]).sum()).collect()
    };
    for &(a, e) in num {
        let mut f = vec![0i64; max + 1];
        f[0] = 1;
        if a <= max {
            f[a] = 1;
        }
        for _ in 0..e {
            c = mul(&c, &f);
        }
    }
    for &(b, e) in den {
        let f: Vec<i64> = (0..=max).map(|n| i64::from(n % b == 0)).collect();
        for _ in 0..e {
            c = mul(&c, &f);
        }
    }
    c
}

fn single(alg: &DgAlgebra, m: DgMonomial, c: Polynomial) -> DgElement {
    alg.element(m, c)
}

#[test]
fn tate_ranks_match_generating_function() {
    let want = series(&[(1, 8)], &[(2, 8)], 8);
    let tate = build_tate(2).unwrap();
    for m in 0..=8 {
        assert_eq!(tate_rank(m) as i64, want[m], "m={m}");
    }
    for m in 0..=4 {
        assert_eq!(tate.rank(m), tate_rank(m));
        assert_eq!(tate.monomials(m).len(), tate_rank(m));
    }
}

#[test]
fn tate_differential_examples() {
    for p in 2..=3u32 {
        let tate = build_tate(p).unwrap();
        let ring = tate.base().ring().clone();
        let w = ring.var(3);
        let one = DgMonomial::one(tate.n_even());
        assert_eq!(tate.d_monomial(&tate.odd_generator(3)), single(&tate, one, w.clone()));
        assert_eq!(
            tate.d_monomial(&tate.even_generator(3)),
            single(&tate, tate.odd_generator(3), w.pow(3 * p - 2))
        );
        // Leibniz on a product: d(t1 t4) = x1 t4 - w t1
        let t1t4 = tate.mul_monomials(&tate.odd_generator(0), &tate.odd_generator(3)).unwrap();
        assert_eq!(t1t4.0, 1);
        let mut want = single(&tate, tate.odd_generator(3), ring.var(0));
        want.insert(tate.odd_generator(0), w.scale(&Rational::from_int(-1)));
        assert_eq!(tate.d_monomial(&t1t4.1), want);
        assert!(tate.check_d_squared(3).is_ok());
        assert!(tate.is_minimal());
    }
}

#[test]
fn psi_on_generators() {
    for p in 2..=3u32 {
        let psi = PsiLift::new(p).unwrap();
        let t = &psi.target;
        let ring = t.base().ring().clone();
        let s8 = psi.target_relations.iter().position(|&r| r == 7).unwrap();
        let s1 = psi.target_relations.iter().position(|&r| r == 0).unwrap();
        let src = &psi.source;
        assert_eq!(psi.on_monomial(&src.odd_generator(0)), single(t, t.odd_generator(0), ring.one()));
        assert!(psi.on_monomial(&src.odd_generator(4)).is_empty());
        assert_eq!(psi.on_monomial(&src.even_generator(2)), single(t, t.even_generator(s8), ring.var(2)));
        let c = c_p(p).unwrap();
        assert_eq!(
            psi.on_monomial(&src.even_generator(3)),
            single(t, t.even_generator(s8), ring.var(3).pow(p).scale(&(-c.recip())))
        );
        let (sg, t1t2) = src.mul_monomials(&src.odd_generator(0), &src.odd_generator(1)).unwrap();
        let (sg2, u) = src.mul_monomials(&t1t2, &src.even_generator(0)).unwrap();
        let (tg, v12) = t.mul_monomials(&t.odd_generator(0), &t.odd_generator(1)).unwrap();
        let (tg2, v) = t.mul_monomials(&v12, &t.even_generator(s1)).unwrap();
        assert_eq!(sg * sg2, tg * tg2);
        assert_eq!(psi.on_monomial(&u), single(t, v, ring.one()));
    }
}

#[test]
fn psi_commutes_with_differentials() {
    let psi = PsiLift::new(2).unwrap();
    let n = psi.check_chain_map(3).unwrap();
    assert_eq!(n, (0..=3).map(tate_rank).sum::<usize>());
}

#[test]
fn pi_kills_extra_variables_and_reduces() {
    let psi = PsiLift::new(2).unwrap();
    let src = psi.source.base().ring().clone();
    let tgt = psi.target.base().ring().clone();
    assert!(psi.pi(&src.var(5)).is_zero());
    // E^2 is a relation downstairs
    assert!(psi.pi(&src.var(0).pow(2)).is_zero());
    assert_eq!(psi.pi(&src.var(1)), tgt.var(1));
}

#[test]
fn hstar_dims_are_binomial() {
    // the Tate resolution is minimal, so dim H^m = tate rank = C(m + 7, 7)
    let h = hstar_rtilde();
    assert!(h.rules_decrease());
    assert!(h.is_confluent());
    let want = series(&[], &[(1, 8)], 6);
    for m in 0..=6 {
        assert_eq!(h.normal_words(m).len() as i64, want[m]);
        assert_eq!(h.normal_words(m).len(), tate_rank(m));
    }
}

#[test]
fn hstar_relations() {
    let h = hstar_rtilde();
    let a = |i: usize| h.word(&[alpha(i)]);
    let zero = WordElement::new();
    assert_eq!(h.mul(&a(3), &a(3)), zero);
    let a8a8 = h.mul(&a(7), &a(7));
    let a3a3 = h.mul(&a(2), &a(2));
    assert_eq!(a8a8, a3a3.iter().map(|(w, c)| (w.clone(), -c.clone())).collect::<WordElement>());
    let ab = h.mul(&a(0), &a(5));
    let ba = h.mul(&a(5), &a(0));
    assert_eq!(ab, ba.iter().map(|(w, c)| (w.clone(), -c.clone())).collect::<WordElement>());
    let b3 = h.word(&[BETA3]);
    assert_eq!(h.mul(&b3, &a(6)), h.mul(&a(6), &b3));
}

#[test]
fn pi_sharp_table() {
    let psi = PsiLift::new(2).unwrap();
    let h = hstar_rtilde();
    let table = pi_sharp_generators(&psi, &h).unwrap();
    let get = |l: &str| table.iter().find(|(x, _, _)| x == l).unwrap().2.clone();
    for i in 0..4 {
        assert_eq!(get(&format!("g{}", i + 1)), h.word(&[alpha(i)]));
    }
    assert_eq!(get("d8"), h.word(&[alpha(2), alpha(2)]));
    for l in ["d9", "d10", "d11"] {
        assert!(get(l).is_empty(), "{l}");
    }
    let neg = |e: WordElement| e.into_iter().map(|(w, c)| (w, -c)).collect::<WordElement>();
    assert_eq!(get("d5"), neg(h.word(&[alpha(4), alpha(4)])));
}

#[test]
fn image_dims_match_series() {
    let want = series(&[(1, 1)], &[(1, 3), (2, 3)], 8);
    assert_eq!(image_series_coefficients(8).iter().map(|&x| x as i64).collect::<Vec<_>>(), want);
    let got = image_pi_sharp_dims(2, 8).unwrap();
    assert_eq!(got.iter().map(|&x| x as i64).collect::<Vec<_>>(), want);
}

#[test]
fn r_start_is_exact_in_low_degrees() {
    for p in 2..=3u32 {
        let dim = build_gra(p).unwrap().dim().unwrap();
        let s = r_resolution_start(p).unwrap();
        assert_eq!(s.ranks, [1, 4, 15]);
        assert!(s.composite_zero && s.minimal);
        // image of d1 is the maximal ideal, and d2 hits all of ker d1
        assert_eq!(s.rank_d1, dim - 1);
        assert_eq!(s.rank_d2, 4 * dim - s.rank_d1);
    }
}

#[test]
fn pi_sharp_respects_a_product() {
    let psi = PsiLift::new(2).unwrap();
    let h = hstar_rtilde();
    let t = &psi.target;
    let (_, t1t2) = t.mul_monomials(&t.odd_generator(0), &t.odd_generator(1)).unwrap();
    let mut img = WordElement::new();
    for (u, c) in psi.pullback_dual(&t1t2) {
        for (w, x) in dual_class(&h, &u).unwrap() {
            *img.entry(w).or_insert_with(Rational::zero) += &c * &x;
        }
    }
    img.retain(|_, c| !c.is_zero());
    let img = h.reduce(&img);
    let a1a2 = h.mul(&h.word(&[alpha(0)]), &h.word(&[alpha(1)]));
    let neg: WordElement = a1a2.iter().map(|(w, c)| (w.clone(), -c.clone())).collect();
    assert!(img == a1a2 || img == neg, "{}", h.format(&img));
}
