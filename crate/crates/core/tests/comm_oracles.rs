//! Gröbner-side values checked against computations that avoid Buchberger.

use std::collections::BTreeMap;

use wp_core::comm::*;
use wp_core::linalg::Matrix;
use wp_core::Rational;

/// All exponent vectors of weighted degree `d`.
fn monomials_of_degree(w: &[u32], d: u32) -> Vec<Monomial> {
    fn go(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= left {
            cur.push(e);
            go(w, i + 1, left - e * w[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(w, 0, d, &mut Vec::new(), &mut out);
    out
}

/// `dim (k[x]/I)_d` from the rank of the Macaulay matrix of all multiples
/// `m * r` landing in degree `d`.
fn macaulay_hilbert(rels: &[Polynomial], w: &[u32], d: u32) -> usize {
    let cols = monomials_of_degree(w, d);
    let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for r in rels {
        let dr = r.homogeneous_degree(w).unwrap();
        if dr > d {
            continue;
        }
        for m in monomials_of_degree(w, d - dr) {
            let prod = r.mul_term(&m, &Rational::one());
            let mut row = vec![Rational::zero(); cols.len()];
            for (x, c) in prod.terms() {
                row[index[x]] = c.clone();
            }
            rows.push(row);
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows, cols.len()).rank() };
    cols.len() - rank
}

#[test]
fn gra_dimension_is_6p_minus_1() {
    for p in 2..=4u32 {
        let q = build_gra(p).unwrap();
        assert_eq!(q.dim().unwrap(), 6 * p as usize - 1);
    }
}

#[test]
fn gra_hilbert_function_matches_macaulay_matrices() {
    for p in 2..=3u32 {
        let q = build_gra(p).unwrap();
        let rels = gra_relations(p).unwrap();
        let w = q.ring().weights().to_vec();
        let top = 2 * (3 * p - 2) + 2;
        let mut total = 0;
        for d in 0..=top {
            let gb = q.hilbert_function(&w, d).unwrap();
            assert_eq!(gb, macaulay_hilbert(&rels, &w, d), "p={p} d={d}");
            total += gb;
        }
        assert_eq!(total, 6 * p as usize - 1);
    }
}

#[test]
fn gra_p2_hilbert_series() {
    let q = build_gra(2).unwrap();
    let hs = q.hilbert_series(&[3, 3, 3, 2]).unwrap();
    let want: BTreeMap<u32, usize> = [(0, 1), (2, 1), (3, 3), (4, 1), (5, 3), (6, 1), (8, 1)].into_iter().collect();
    assert_eq!(hs, want);
}

#[test]
fn rtilde_dimension_matches_weighted_bezout() {
    // complete intersection of weighted-homogeneous elements: the dimension
    // is the product of relation degrees over the product of weights
    for p in 2..=3u32 {
        let ring = rtilde_ring(p).unwrap();
        let w = ring.weights().to_vec();
        let rels = rtilde_relations(p).unwrap();
        let num: u64 = rels.iter().map(|r| r.homogeneous_degree(&w).unwrap() as u64).product();
        let den: u64 = w.iter().map(|&x| x as u64).product();
        assert_eq!(num % den, 0);
        let dim = build_rtilde(p).unwrap().dim().unwrap();
        assert_eq!(dim as u64, num / den);
        assert_eq!(dim, 192 * (3 * p as usize - 1));
    }
}

#[test]
fn redundant_relations_are_explicit_combinations() {
    for p in 2..=3u32 {
        let rels = gra_relations(p).unwrap();
        let ring = rels[0].ring().clone();
        let c = wp_core::c_p(p).unwrap();
        let h = ring.var(2);
        let w = ring.var(3);
        // H^3 = H r8 + C w^(p-1) r7
        let r3 = h.mul(&rels[7]).add(&w.pow(p - 1).mul(&rels[6]).scale(&c));
        assert_eq!(r3, rels[2]);
        // w^(3p-1) = (H r7 - w^p r8) / C
        let r4 = h.mul(&rels[6]).sub(&w.pow(p).mul(&rels[7])).scale(&c.recip());
        assert_eq!(r4, rels[3]);
        assert_eq!(minimal_generators(&rels, &ring).unwrap(), vec![0, 1, 4, 5, 6, 7, 8, 9, 10]);
    }
}

#[test]
fn regular_sequences() {
    for p in 2..=4u32 {
        let ring = gra_ring(p).unwrap();
        let rels = gra_relations(p).unwrap();
        assert!(is_regular_sequence(&rels[..4], &ring).unwrap().regular);
        // r5 = w^p E kills w^(2p-1) E modulo r1..r4, so it is a zero divisor
        let cert = is_regular_sequence(&rels[..5], &ring).unwrap();
        assert_eq!(cert.first_failure, Some(5));
    }
    for p in 2..=3u32 {
        let ring = rtilde_ring(p).unwrap();
        assert!(is_regular_sequence(&rtilde_relations(p).unwrap(), &ring).unwrap().regular);
    }
}

#[test]
fn ideal_quotient_textbook() {
    // (x^2 y, x y^2) : (x y) = (x, y)
    let r = Ring::from_names(&["x", "y"], &[1, 1], MonomialOrder::DegRevLex).unwrap();
    let i = buchberger(&[r.parse("x^2*y").unwrap(), r.parse("x*y^2").unwrap()], &r);
    let q = ideal_quotient(&i, &r.parse("x*y").unwrap()).unwrap();
    let want = buchberger(&[r.parse("x").unwrap(), r.parse("y").unwrap()], &r);
    assert!(q.same_ideal(&want));
    // (x^2) : (x + y) = (x^2)
    let j = buchberger(&[r.parse("x^2").unwrap()], &r);
    assert!(ideal_quotient(&j, &r.parse("x + y").unwrap()).unwrap().same_ideal(&j));
}

#[test]
fn groebner_basis_is_verified_and_order_independent_in_size() {
    let q = build_rtilde(2).unwrap();
    assert!(q.gb().verify());
    let lex_ring = rtilde_ring(2).unwrap().with_order(MonomialOrder::WeightedDegRevLex);
    let rels: Vec<Polynomial> = rtilde_relations(2).unwrap().iter().map(|r| r.to_ring(&lex_ring)).collect();
    assert_eq!(QuotientRing::new(&lex_ring, rels).dim().unwrap(), 960);
}

#[test]
fn positive_dimensional_quotient_errors() {
    let ring = gra_ring(2).unwrap();
    let q = QuotientRing::new(&ring, gra_relations(2).unwrap()[..3].to_vec());
    assert!(matches!(q.quotient_basis(), Err(wp_core::Error::PositiveDimensional)));
}

#[test]
fn json_ring_loader() {
    let doc = r#"{"variables": ["x", "y"], "weights": [1, 2], "relations": ["x^2 - y", "y^2", "x*y"]}"#;
    let (ring, rels) = load_ring(doc).unwrap();
    let q = QuotientRing::new(&ring, rels);
    assert_eq!(q.dim().unwrap(), 3);
    assert_eq!(q.hilbert_function(&[1, 2], 2).unwrap(), 1);
    assert!(load_ring(r#"{"variables": ["x"], "weights": [1], "relations": ["z"]}"#).is_err());
    let json = q.gb().to_json();
    assert!(json["generators"].as_array().unwrap().iter().all(|g| g["leading"].is_string()));
}
