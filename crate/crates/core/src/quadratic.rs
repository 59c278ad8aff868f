//! Quadratic presentations `kQ/<I_2>`, the pairing between `kQ_2` and
//! `kQ^op_2`, perp spaces and quadratic duals.
//!
//! The pairing is `<w, w'^op> = 1` when `w = w'` and 0 otherwise, where
//! `w'^op` is the reversed path in the opposite quiver. In words,
//! `<a*b, c^op*d^op> = [a = d][b = c]`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dense_to_sparse, EchelonSpace, Matrix, PivotPolicy, SparseVec};
use crate::quiver::{enumerate_paths, GradedQuotient, Path, PathElement, PathIdeal, Quiver};
use crate::scalars::Rational;

#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    quiver: Quiver,
    /// Canonical reduced basis of `I_2`, sorted by pivot path.
    relations: Vec<PathElement>,
}

fn quadratic_paths(q: &Quiver) -> Vec<Path> {
    enumerate_paths(q, None, None, 2)
}

fn span_of(paths: &[Path], rels: &[PathElement]) -> EchelonSpace {
    let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut sp = EchelonSpace::new(PivotPolicy::Max);
    for r in rels {
        let v: SparseVec = r.terms().map(|(p, c)| (index[p], c.clone())).collect();
        sp.insert(v);
    }
    sp
}

impl QuadraticPresentation {
    pub fn new(quiver: Quiver, relations: Vec<PathElement>) -> Result<Self> {
        for r in &relations {
            if !r.is_zero() && r.degree() != Some(2) {
                return Err(Error::DegreeMismatch(format!(
                    "quadratic relation expected, got `{}`",
                    r.display(&quiver)
                )));
            }
        }
        let paths = quadratic_paths(&quiver);
        let sp = span_of(&paths, &relations);
        let relations = sp
            .canonical_basis()
            .iter()
            .map(|v| {
                let mut e = PathElement::zero();
                for (&i, c) in v {
                    e.add_term(paths[i].clone(), c.clone());
                }
                e
            })
            .collect();
        Ok(QuadraticPresentation { quiver, relations })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathElement] {
        &self.relations
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.len()
    }

    pub fn ideal(&self) -> PathIdeal {
        PathIdeal::new(&self.quiver, self.relations.clone()).expect("relations are homogeneous")
    }

    pub fn graded_quotient(&self) -> GradedQuotient {
        GradedQuotient::new(&self.quiver, &self.ideal())
    }

    /// `dim e_j I_2 e_i` for relations `i -> j`.
    pub fn block_relation_dim(&self, i: usize, j: usize) -> usize {
        self.relations
            .iter()
            .filter(|r| r.endpoints() == Some((i, j)))
            .count()
    }

    /// Same subspace of `kQ_2`, over an equal quiver.
    pub fn same_span(&self, other: &QuadraticPresentation) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }

    pub fn contains(&self, r: &PathElement) -> bool {
        let paths = quadratic_paths(&self.quiver);
        let sp = span_of(&paths, &self.relations);
        let single = span_of(&paths, std::slice::from_ref(r));
        let ok = single.rows().all(|v| sp.contains(v));
        ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc<'a> {
            quiver: &'a Quiver,
            degree2_basis: Vec<String>,
            relations: Vec<Vec<Rational>>,
        }
        let paths = quadratic_paths(&self.quiver);
        let relations = self
            .relations
            .iter()
            .map(|r| paths.iter().map(|p| r.coefficient(p)).collect())
            .collect();
        serde_json::to_value(Doc {
            quiver: &self.quiver,
            degree2_basis: paths.iter().map(|p| p.display(&self.quiver)).collect(),
            relations,
        })
        .expect("serializable")
    }
}

/// Reverse every arrow and every relation word.
pub fn opposite(pres: &QuadraticPresentation) -> QuadraticPresentation {
    let q = pres.quiver.opposite();
    let rels = pres.relations.iter().map(PathElement::opposite).collect();
    QuadraticPresentation::new(q, rels).expect("opposite of quadratic is quadratic")
}

/// `I_2^perp` inside `kQ^op_2`, block by block.
pub fn perp(pres: &QuadraticPresentation) -> QuadraticPresentation {
    let q = &pres.quiver;
    let mut rels = Vec::new();
    for i in 0..q.vertex_count() {
        for j in 0..q.vertex_count() {
            let block = enumerate_paths(q, Some(i), Some(j), 2);
            if block.is_empty() {
                continue;
            }
            let rows: Vec<Vec<Rational>> = pres
                .relations
                .iter()
                .filter(|r| r.endpoints() == Some((i, j)))
                .map(|r| block.iter().map(|p| r.coefficient(p)).collect())
                .collect();
            let null = if rows.is_empty() {
                (0..block.len())
                    .map(|k| {
                        let mut v = vec![Rational::zero(); block.len()];
                        v[k] = Rational::one();
                        v
                    })
                    .collect()
            } else {
                Matrix::from_rows(rows, block.len()).nullspace()
            };
            for v in null {
                let mut e = PathElement::zero();
                for (k, c) in dense_to_sparse(&v) {
                    e.add_term(block[k].opposite(), c);
                }
                rels.push(e);
            }
        }
    }
    QuadraticPresentation::new(q.opposite(), rels).expect("perp is quadratic")
}

pub fn quadratic_dual(pres: &QuadraticPresentation) -> QuadraticPresentation {
    perp(pres)
}

/// Vertex-graded Hilbert matrix in degree `n`: entry `(i, j)` counts basis
/// paths `i -> j`.
pub fn hilbert_matrix(gq: &mut GradedQuotient, n: usize) -> Vec<Vec<i64>> {
    let v = gq.quiver().vertex_count();
    let mut m = vec![vec![0i64; v]; v];
    for p in gq.basis(n) {
        m[p.src()][p.tgt()] += 1;
    }
    m
}

/// Checks `H_A(t) * H_{A^!}(-t)^T = 1` coefficientwise through degree `n`.
/// Returns the first degree where it fails.
pub fn koszul_hilbert_check(pres: &QuadraticPresentation, max_degree: usize) -> std::result::Result<(), usize> {
    let dual = quadratic_dual(pres);
    let mut a = pres.graded_quotient();
    let mut b = dual.graded_quotient();
    let v = pres.quiver.vertex_count();
    let ha: Vec<_> = (0..=max_degree).map(|n| hilbert_matrix(&mut a, n)).collect();
    let hb: Vec<_> = (0..=max_degree).map(|n| hilbert_matrix(&mut b, n)).collect();
    for n in 0..=max_degree {
        let mut acc = vec![vec![0i64; v]; v];
        for k in 0..=n {
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            let x = &ha[k];
            let y = &hb[n - k];
            for i in 0..v {
                for j in 0..v {
                    let mut s = 0;
                    for l in 0..v {
                        s += x[i][l] * y[j][l];
                    }
                    acc[i][j] += sign * s;
                }
            }
        }
        for (i, row) in acc.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = i64::from(n == 0 && i == j);
                if x != want {
                    return Err(n);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loops(names: &[&str]) -> Quiver {
        let mut q = Quiver::new();
        q.add_vertex("v").unwrap();
        for n in names {
            q.add_arrow(*n, "v", "v").unwrap();
        }
        q
    }

    #[test]
    fn commutator_perp() {
        let q = loops(&["x", "y"]);
        let r = PathElement::combination(&q, &[(1, &["x", "y"]), (-1, &["y", "x"])]).unwrap();
        let pres = QuadraticPresentation::new(q.clone(), vec![r]).unwrap();
        let d = perp(&pres);
        assert_eq!(d.relation_dim(), 3);
        let qo = d.quiver().clone();
        for w in [
            PathElement::word(&qo, &["x^op", "x^op"]).unwrap(),
            PathElement::word(&qo, &["y^op", "y^op"]).unwrap(),
            PathElement::combination(&qo, &[(1, &["x^op", "y^op"]), (1, &["y^op", "x^op"])]).unwrap(),
        ] {
            assert!(d.contains(&w));
        }
        assert!(perp(&d).same_span(&pres));
    }

    #[test]
    fn full_and_empty() {
        let q = loops(&["x"]);
        let x2 = PathElement::word(&q, &["x", "x"]).unwrap();
        let full = QuadraticPresentation::new(q.clone(), vec![x2.clone()]).unwrap();
        assert_eq!(perp(&full).relation_dim(), 0);
        let empty = QuadraticPresentation::new(q.clone(), vec![]).unwrap();
        assert_eq!(opposite(&empty).relation_dim(), 0);
        let op = opposite(&full);
        assert!(op.contains(&PathElement::word(op.quiver(), &["x^op", "x^op"]).unwrap()));
    }

    #[test]
    fn dual_numbers_and_polynomials_are_koszul_dual() {
        let q = loops(&["x"]);
        let x2 = PathElement::word(&q, &["x", "x"]).unwrap();
        let pres = QuadraticPresentation::new(q, vec![x2]).unwrap();
        assert!(koszul_hilbert_check(&pres, 8).is_ok());
        let sym = loops(&["x", "y"]);
        let c = PathElement::combination(&sym, &[(1, &["x", "y"]), (-1, &["y", "x"])]).unwrap();
        let pres = QuadraticPresentation::new(sym, vec![c]).unwrap();
        assert!(koszul_hilbert_check(&pres, 6).is_ok());
    }

    #[test]
    fn rank_nullity_per_block() {
        let mut q = Quiver::new();
        q.add_vertex("a").unwrap();
        q.add_vertex("b").unwrap();
        q.add_arrow("f", "a", "b").unwrap();
        q.add_arrow("g", "b", "a").unwrap();
        q.add_arrow("h", "b", "a").unwrap();
        let r = PathElement::combination(&q, &[(1, &["g", "f"]), (2, &["h", "f"])]).unwrap();
        let pres = QuadraticPresentation::new(q.clone(), vec![r]).unwrap();
        let d = perp(&pres);
        for i in 0..2 {
            for j in 0..2 {
                let total = enumerate_paths(&q, Some(i), Some(j), 2).len();
                assert_eq!(pres.block_relation_dim(i, j) + d.block_relation_dim(j, i), total);
            }
        }
    }
}
