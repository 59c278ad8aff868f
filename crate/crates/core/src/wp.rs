//! The quiver `Q_{W(p)}`, the basic algebra of the triplet algebra and its
//! Yoneda algebra, the Zhu algebra, Gelfand–Kirillov growth estimates, and
//! the one-vertex model of `gr A(W(p))`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::comm::{build_gra, gra_relations, QuotientRing};
use crate::error::{Error, Result};
use crate::linalg::{EchelonSpace, PivotPolicy, SparseVec};
use crate::quadratic::{koszul_hilbert_check, opposite, perp, QuadraticPresentation};
use crate::quiver::{Path, PathElement, PathIdeal, Quiver};
use crate::rep::{
    ext_dim_from_resolution, ext_quiver, minimal_projective_resolution, simple_rep, BasicAlgebra, QuiverRep, Yoneda,
};
use crate::scalars::{c_p, Rational};

fn check_p(p: u32) -> Result<()> {
    c_p(p).map(|_| ())
}

/// `Q_{W(p)}`: vertices `X{s}+`, `X{s}-` for `s = 1..p`; for `s < p`,
/// arrows `alpha{s}{i}: X{s}- -> X{s}+` and `beta{s}{i}: X{s}+ -> X{s}-`.
pub fn wp_quiver(p: u32) -> Result<Quiver> {
    check_p(p)?;
    let mut q = Quiver::new();
    for s in 1..=p {
        q.add_vertex(format!("X{s}+"))?;
        q.add_vertex(format!("X{s}-"))?;
    }
    for s in 1..p {
        let (plus, minus) = (format!("X{s}+"), format!("X{s}-"));
        for i in 1..=2 {
            q.add_arrow(format!("alpha{s}{i}"), &minus, &plus)?;
        }
        for i in 1..=2 {
            q.add_arrow(format!("beta{s}{i}"), &plus, &minus)?;
        }
    }
    Ok(q)
}

fn block_relations(q: &Quiver, s: u32, sign: i64, squares: bool) -> Result<Vec<PathElement>> {
    let a = |i: u32| format!("alpha{s}{i}");
    let b = |i: u32| format!("beta{s}{i}");
    let (a1, a2, b1, b2) = (a(1), a(2), b(1), b(2));
    let mut out = vec![
        PathElement::combination(q, &[(1, &[&a1, &b2]), (sign, &[&a2, &b1])])?,
        PathElement::combination(q, &[(1, &[&b1, &a2]), (sign, &[&b2, &a1])])?,
    ];
    if squares {
        for (x, y) in [(&a1, &b1), (&a2, &b2), (&b1, &a1), (&b2, &a2)] {
            out.push(PathElement::word(q, &[x.as_str(), y.as_str()])?);
        }
    }
    Ok(out)
}

/// `I = (alpha1 beta2 - alpha2 beta1, alpha_i beta_i, beta1 alpha2 - beta2
/// alpha1, beta_i alpha_i)` for each `s < p` (words read right to left).
pub fn basic_relations(q: &Quiver, p: u32) -> Result<Vec<PathElement>> {
    let mut out = Vec::new();
    for s in 1..p {
        out.extend(block_relations(q, s, -1, true)?);
    }
    Ok(out)
}

/// `(alpha1 beta2 + alpha2 beta1, beta1 alpha2 + beta2 alpha1)` per `s < p`.
pub fn yoneda_relations(q: &Quiver, p: u32) -> Result<Vec<PathElement>> {
    let mut out = Vec::new();
    for s in 1..p {
        out.extend(block_relations(q, s, 1, false)?);
    }
    Ok(out)
}

/// Everything attached to one `p`.
#[derive(Clone, Debug)]
pub struct WpInstance {
    pub p: u32,
    pub quiver: Quiver,
    /// `kQ/I`, the basic algebra.
    pub basic: QuadraticPresentation,
    /// Presentation of the endomorphism algebra on `Q^op`.
    pub e_presentation: QuadraticPresentation,
    /// `kQ/(Yoneda relations)`.
    pub yoneda: QuadraticPresentation,
    pub algebra: BasicAlgebra,
}

pub fn build_wp_instance(p: u32) -> Result<WpInstance> {
    let quiver = wp_quiver(p)?;
    let basic = QuadraticPresentation::new(quiver.clone(), basic_relations(&quiver, p)?)?;
    let e_presentation = opposite(&basic);
    let yoneda = QuadraticPresentation::new(quiver.clone(), yoneda_relations(&quiver, p)?)?;
    let ideal = PathIdeal::new(&quiver, basic.relations().to_vec())?;
    let algebra = BasicAlgebra::from_ideal(&quiver, &ideal, 8)?;
    Ok(WpInstance {
        p,
        quiver,
        basic,
        e_presentation,
        yoneda,
        algebra,
    })
}

/// `dim Ext^n` summed over all pairs of simples: `2p` for `n = 0`, else
/// `2(p - 1)(n + 1)`.
pub fn yoneda_dim_formula(p: u32, n: usize) -> usize {
    if n == 0 {
        2 * p as usize
    } else {
        2 * (p as usize - 1) * (n + 1)
    }
}

impl WpInstance {
    pub fn yoneda(&self, max_degree: usize) -> Result<Yoneda<'_>> {
        Yoneda::new(&self.algebra, max_degree)
    }

    /// Ext dimensions computed from minimal resolutions of the simples.
    pub fn yoneda_dims(&self, max_degree: usize) -> Result<Vec<usize>> {
        let y = self.yoneda(max_degree)?;
        Ok((0..=max_degree).map(|n| y.total_dim(n)).collect())
    }

    /// Graded dimensions of the quadratic algebra `kQ/(Yoneda relations)`.
    pub fn presentation_dims(&self, max_degree: usize) -> Vec<usize> {
        let mut gq = self.yoneda.graded_quotient();
        (0..=max_degree).map(|n| gq.dim(n)).collect()
    }

    /// The Yoneda algebra is the quadratic dual of `E`.
    pub fn dual_matches(&self) -> bool {
        perp(&self.e_presentation).same_span(&self.yoneda)
    }

    pub fn koszul_check(&self, max_degree: usize) -> std::result::Result<(), usize> {
        koszul_hilbert_check(&self.basic, max_degree)
    }

    /// The Ext quiver of the basic algebra equals `Q` up to arrow names.
    pub fn ext_quiver_matches(&self) -> Result<bool> {
        let eq = ext_quiver(&self.algebra)?;
        let n = self.quiver.vertex_count();
        Ok(eq.vertex_count() == n
            && (0..n).all(|i| (0..n).all(|j| eq.arrows_between(i, j).len() == self.quiver.arrows_between(i, j).len())))
    }

    pub fn projective_dims(&self) -> Vec<usize> {
        (0..self.algebra.vertex_count())
            .map(|v| self.algebra.projective(v).total_dim())
            .collect()
    }

    /// `dim Ext^1(S_i, S_j)` for all pairs of simples.
    pub fn ext1_table(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.algebra.vertex_count();
        let simples = (0..n)
            .map(|v| simple_rep(&self.algebra, v))
            .collect::<Result<Vec<_>>>()?;
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            let res = minimal_projective_resolution(&self.algebra, &simples[i], 2)?;
            for j in 0..n {
                out[i][j] = ext_dim_from_resolution(&self.algebra, &res, &simples[j], 1)?;
            }
        }
        Ok(out)
    }

    pub fn report(&self, max_degree: usize) -> Result<serde_json::Value> {
        let zhu = zhu_algebra(self.p)?;
        Ok(serde_json::json!({
            "p": self.p,
            "dims": {
                "basic": self.algebra.total_dim(),
                "zhu_basic": zhu.total_dim(),
            },
            "ext1_table": self.ext1_table()?,
            "yoneda_dims": self.yoneda_dims(max_degree)?,
            "quivers": {
                "wp": self.quiver,
                "zhu": zhu.quiver(),
            },
        }))
    }
}

/// Quiver of the Zhu algebra's basic algebra: a loop `gamma{s}` at
/// `X{s}+(0)` for `s < p`, and isolated vertices `X{s}-(0)` (`s < p`),
/// `X{p}+(0)`, `X{p}-(0)`.
pub fn zhu_quiver(p: u32) -> Result<Quiver> {
    check_p(p)?;
    let mut q = Quiver::new();
    for s in 1..=p {
        q.add_vertex(format!("X{s}+(0)"))?;
        q.add_vertex(format!("X{s}-(0)"))?;
    }
    for s in 1..p {
        let v = format!("X{s}+(0)");
        q.add_arrow(format!("gamma{s}"), &v, &v)?;
    }
    Ok(q)
}

pub fn zhu_algebra(p: u32) -> Result<BasicAlgebra> {
    let q = zhu_quiver(p)?;
    let rels = (1..p)
        .map(|s| {
            let g = format!("gamma{s}");
            PathElement::word(&q, &[g.as_str(), g.as_str()])
        })
        .collect::<Result<Vec<_>>>()?;
    BasicAlgebra::from_ideal(&q, &PathIdeal::new(&q, rels)?, 4)
}

pub fn zhu_yoneda_dims(p: u32, max_degree: usize) -> Result<Vec<usize>> {
    let alg = zhu_algebra(p)?;
    let y = Yoneda::new(&alg, max_degree)?;
    Ok((0..=max_degree).map(|n| y.total_dim(n)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GkModel {
    /// Cumulative dimensions are eventually a polynomial.
    Polynomial,
    /// Rational Hilbert series: cumulative dimensions are a quasi-polynomial
    /// of period at most the given value.
    RationalSeries(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GkEstimate {
    Exact { degree: usize, period: usize },
    /// Growth not certified by the data; `upper` is `None` when no bound
    /// follows.
    Bracket { lower: usize, upper: Option<usize> },
}

pub const GK_MIN_DEGREE: usize = 8;

/// Degree of a polynomial sequence certified by its difference table: the
/// `d`-th differences are a nonzero constant with at least two entries.
fn certified_degree(seq: &[i128]) -> Option<usize> {
    let mut row = seq.to_vec();
    let mut d = 0;
    loop {
        if row.len() < 2 {
            return None;
        }
        if row.iter().all(|&x| x == row[0]) {
            return (row[0] != 0 || d == 0).then_some(d);
        }
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
        d += 1;
    }
}

/// Gelfand–Kirillov dimension from graded dimensions `dims[0..=N]` via
/// exact finite differences of the cumulative sums. Requires `N >= 8`.
pub fn gk_dimension_from_dims(dims: &[usize], model: GkModel) -> Result<GkEstimate> {
    if dims.len() < GK_MIN_DEGREE + 1 {
        return Err(Error::InsufficientData {
            needed: GK_MIN_DEGREE + 1,
            got: dims.len(),
        });
    }
    let cumulative: Vec<i128> = dims
        .iter()
        .scan(0i128, |acc, &d| {
            *acc += d as i128;
            Some(*acc)
        })
        .collect();
    let max_period = match model {
        GkModel::Polynomial => 1,
        GkModel::RationalSeries(k) => k.max(1),
    };
    for period in 1..=max_period {
        let mut degree = 0;
        let mut ok = true;
        for r in 0..period {
            let sub: Vec<i128> = cumulative.iter().skip(r).step_by(period).copied().collect();
            match certified_degree(&sub) {
                Some(d) => degree = degree.max(d),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(GkEstimate::Exact { degree, period });
        }
    }
    // lower bound: rows of the difference table whose last entry stays
    // positive
    let mut row = cumulative;
    let mut lower: usize = 0;
    while row.len() >= 2 {
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
        if *row.last().expect("nonempty") > 0 {
            lower += 1;
        } else {
            break;
        }
    }
    Ok(GkEstimate::Bracket {
        lower: lower.saturating_sub(1),
        upper: None,
    })
}

/// `gr A(W(p))` as a one-vertex basic algebra with loops `E, F, H, w`,
/// built from its regular representation.
pub fn gra_basic_algebra(p: u32) -> Result<(BasicAlgebra, QuotientRing)> {
    let qr = build_gra(p)?;
    let ring = qr.ring().clone();
    let mut q = Quiver::new();
    q.add_vertex("v")?;
    for name in ring.names() {
        q.add_arrow(name.clone(), "v", "v")?;
    }
    let maps = (0..ring.nvars())
        .map(|i| qr.mult_matrix(&ring.var(i)))
        .collect::<Result<Vec<_>>>()?;
    let dim = qr.dim()?;
    let qa = Arc::new(q.clone());
    let rep = QuiverRep::new(qa, vec![dim], maps)?;
    let generator = qr.coordinates(&ring.one())?;
    let mut relations = Vec::new();
    for i in 0..ring.nvars() {
        for j in i + 1..ring.nvars() {
            let (a, b) = (ring.names()[i].as_str(), ring.names()[j].as_str());
            relations.push(PathElement::combination(&q, &[(1, &[a, b]), (-1, &[b, a])])?);
        }
    }
    for r in gra_relations(p)? {
        let mut e = PathElement::zero();
        for (m, c) in r.terms() {
            let mut arrows = Vec::new();
            for (i, &k) in m.0.iter().enumerate() {
                arrows.extend(std::iter::repeat(i).take(k as usize));
            }
            let path = if arrows.is_empty() {
                Path::stationary(0)
            } else {
                Path::from_traversal(&q, &arrows)?
            };
            e.add_term(path, c.clone());
        }
        relations.push(e);
    }
    Ok((BasicAlgebra::from_projectives(&q, vec![(rep, generator)], relations)?, qr))
}

/// Graded `Ext^1(k, k(d))` over `gr A`: the weights of minimal generators of
/// the maximal ideal, computed as `m/m^2` degree by degree.
pub fn graded_gra_ext1(p: u32) -> Result<BTreeMap<u32, usize>> {
    let qr = build_gra(p)?;
    let ring = qr.ring().clone();
    let w = ring.weights().to_vec();
    let basis = qr.quotient_basis()?.to_vec();
    let m: Vec<_> = basis.iter().filter(|b| !b.is_one()).cloned().collect();
    let mut out = BTreeMap::new();
    let mut degrees: Vec<u32> = m.iter().map(|b| b.weighted_degree(&w)).collect();
    degrees.sort();
    degrees.dedup();
    for d in degrees {
        let mut m2 = EchelonSpace::new(PivotPolicy::Min);
        for a in &m {
            for b in &m {
                if a.weighted_degree(&w) + b.weighted_degree(&w) != d {
                    continue;
                }
                let prod = ring.term(a.mul(b), Rational::one());
                let v: SparseVec = qr
                    .coordinates(&prod)?
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                m2.insert(v);
            }
        }
        let md = m.iter().filter(|b| b.weighted_degree(&w) == d).count();
        let gens = md - m2.dim();
        if gens > 0 {
            out.insert(d, gens);
        }
    }
    Ok(out)
}

/// Multiplicity of arrows `k -> k + shift` in the graded Ext quiver.
pub fn graded_gra_ext1_at(p: u32, shift: i64) -> Result<usize> {
    let t = graded_gra_ext1(p)?;
    Ok(u32::try_from(shift).ok().and_then(|s| t.get(&s).copied()).unwrap_or(0))
}

/// Window `[a, b]` of the quiver of graded `gr A`-modules: one vertex per
/// internal degree and one arrow `k -> k + d` per generator of weight `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedQuiverWindow {
    pub vertices: Vec<i64>,
    pub arrows: Vec<(i64, i64)>,
}

pub fn graded_gra_quiver_window(p: u32, a: i64, b: i64) -> Result<GradedQuiverWindow> {
    if a > b {
        return Err(Error::InvalidArgument(format!("empty window {a}:{b}")));
    }
    let ext1 = graded_gra_ext1(p)?;
    let mut arrows = Vec::new();
    for k in a..=b {
        for (&d, &n) in &ext1 {
            let t = k + d as i64;
            if t <= b {
                arrows.extend(std::iter::repeat((k, t)).take(n));
            }
        }
    }
    Ok(GradedQuiverWindow {
        vertices: (a..=b).collect(),
        arrows,
    })
}

pub fn graded_window_dot(w: &GradedQuiverWindow) -> String {
    let mut s = String::from("digraph grA {\n");
    for v in &w.vertices {
        s.push_str(&format!("  \"{v}\";\n"));
    }
    for (x, y) in &w.arrows {
        s.push_str(&format!("  \"{x}\" -> \"{y}\";\n"));
    }
    s.push_str("}\n");
    s
}

/// `Ext^1` of the trivial module over the one-vertex model.
pub fn gra_ext1_dim(p: u32) -> Result<usize> {
    let (alg, _) = gra_basic_algebra(p)?;
    let s = simple_rep(&alg, 0)?;
    crate::rep::ext_dim(&alg, &s, &s, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instance() {
        let w = build_wp_instance(2).unwrap();
        assert_eq!(w.quiver.vertex_count(), 4);
        assert_eq!(w.quiver.arrow_count(), 4);
        assert_eq!(w.algebra.total_dim(), 10);
        assert_eq!(w.projective_dims(), vec![4, 4, 1, 1]);
        assert!(w.dual_matches());
    }

    #[test]
    fn rejects_small_p() {
        assert!(wp_quiver(1).is_err());
        assert!(zhu_quiver(0).is_err());
    }

    #[test]
    fn certified_degrees() {
        assert_eq!(certified_degree(&[1, 1, 1]), Some(0));
        assert_eq!(certified_degree(&[0, 1, 4, 9, 16]), Some(2));
        assert_eq!(certified_degree(&[0, 1, 4]), None);
        assert_eq!(certified_degree(&[1, 2, 4, 8, 16, 32]), None);
    }

    #[test]
    fn gk_needs_data() {
        assert!(matches!(
            gk_dimension_from_dims(&[1; 8], GkModel::Polynomial),
            Err(Error::InsufficientData { needed: 9, got: 8 })
        ));
        let exp: Vec<usize> = (0..12).map(|n| 1 << n).collect();
        assert!(matches!(
            gk_dimension_from_dims(&exp, GkModel::RationalSeries(2)).unwrap(),
            GkEstimate::Bracket { .. }
        ));
    }
}
