//! Quivers, paths, path-algebra elements, homogeneous ideals, and graded
//! quotients `kQ/I` computed degree by degree.
//!
//! Paths are stored in traversal order (the target of each arrow is the
//! source of the next). Multiplication is composition written right to left:
//! `a * b` means "first `b`, then `a`", and is zero unless `t(b) = s(a)`.
//! Words such as `alpha11*beta12` are read the same way.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{EchelonSpace, PivotPolicy, SparseVec};
use crate::scalars::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
}

const OP_SUFFIX: &str = "^op";

fn toggle_op(s: &str) -> String {
    match s.strip_suffix(OP_SUFFIX) {
        Some(base) => base.to_string(),
        None => format!("{s}{OP_SUFFIX}"),
    }
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.vindex.contains_key(&label) {
            return Err(Error::InvalidArgument(format!("duplicate vertex `{label}`")));
        }
        let i = self.vertices.len();
        self.vindex.insert(label.clone(), i);
        self.vertices.push(label);
        Ok(i)
    }

    /// Add an arrow whose label equals its id.
    pub fn add_arrow(&mut self, id: impl Into<String>, src: &str, tgt: &str) -> Result<usize> {
        let id = id.into();
        let label = id.clone();
        self.add_labeled_arrow(id, src, tgt, label)
    }

    pub fn add_labeled_arrow(
        &mut self,
        id: impl Into<String>,
        src: &str,
        tgt: &str,
        label: impl Into<String>,
    ) -> Result<usize> {
        let id = id.into();
        if self.aindex.contains_key(&id) {
            return Err(Error::DuplicateArrow(id));
        }
        let src = self.vertex_index(src)?;
        let tgt = self.vertex_index(tgt)?;
        let i = self.arrows.len();
        self.aindex.insert(id.clone(), i);
        self.arrows.push(Arrow {
            id,
            src,
            tgt,
            label: label.into(),
        });
        Ok(i)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vindex
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.aindex
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    /// Arrows `i -> j`, in index order.
    pub fn arrows_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].src == i && self.arrows[a].tgt == j)
            .collect()
    }

    pub fn loop_count(&self) -> usize {
        self.arrows.iter().filter(|a| a.src == a.tgt).count()
    }

    /// Same vertices, every arrow reversed. Ids and labels gain an `^op`
    /// suffix, or lose it if already present, so `opposite` is an involution.
    pub fn opposite(&self) -> Quiver {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v.clone()).expect("distinct vertices");
        }
        for a in &self.arrows {
            q.add_labeled_arrow(
                toggle_op(&a.id),
                &self.vertices[a.tgt],
                &self.vertices[a.src],
                toggle_op(&a.label),
            )
            .expect("distinct arrows");
        }
        q
    }

    /// Arrow multiplicity matrix `m[i][j] = #arrows i -> j`.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.src][a.tgt] += 1;
        }
        m
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    id: String,
    src: String,
    tgt: String,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverDoc {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    id: a.id.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                    label: a.label.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = QuiverDoc::deserialize(d)?;
        let mut q = Quiver::new();
        for v in doc.vertices {
            q.add_vertex(v).map_err(serde::de::Error::custom)?;
        }
        for a in doc.arrows {
            q.add_labeled_arrow(a.id, &a.src, &a.tgt, a.label)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(q)
    }
}

/// DOT digraph with vertices and arrows in index order.
pub fn emit_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph Q {\n");
    for v in &q.vertices {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for a in &q.arrows {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            q.vertices[a.src], q.vertices[a.tgt], a.label
        );
    }
    out.push_str("}\n");
    out
}

/// A path in traversal order. Length-0 paths are the idempotents `e_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    arrows: Vec<usize>,
    src: usize,
    tgt: usize,
}

impl Path {
    pub fn stationary(v: usize) -> Self {
        Path {
            arrows: Vec::new(),
            src: v,
            tgt: v,
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let ar = q.arrow(a);
        Path {
            arrows: vec![a],
            src: ar.src,
            tgt: ar.tgt,
        }
    }

    /// Build from arrow indices in traversal order.
    pub fn from_traversal(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let Some((&first, rest)) = arrows.split_first() else {
            return Err(Error::InvalidArgument("empty arrow list".into()));
        };
        let mut p = Path::arrow(q, first);
        for &a in rest {
            if q.arrow(a).src != p.tgt {
                return Err(Error::NotComposable(q.arrow(a).id.clone()));
            }
            p.arrows.push(a);
            p.tgt = q.arrow(a).tgt;
        }
        Ok(p)
    }

    /// Build from arrow ids in written (multiplicative) order: `["a", "b"]`
    /// is `a*b`, i.e. `b` first.
    pub fn from_word(q: &Quiver, word: &[&str]) -> Result<Self> {
        let mut idx = word
            .iter()
            .map(|id| q.arrow_index(id))
            .collect::<Result<Vec<_>>>()?;
        idx.reverse();
        Path::from_traversal(q, &idx)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `a * b`: `b` then `a`. `None` when not composable.
    pub fn mul(a: &Path, b: &Path) -> Option<Path> {
        if b.tgt != a.src {
            return None;
        }
        let mut arrows = b.arrows.clone();
        arrows.extend_from_slice(&a.arrows);
        Some(Path {
            arrows,
            src: b.src,
            tgt: a.tgt,
        })
    }

    /// The reversed path in the opposite quiver (same arrow indices).
    pub fn opposite(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            arrows,
            src: self.tgt,
            tgt: self.src,
        }
    }

    /// Written (multiplicative) form, e.g. `alpha11*beta12` or `e_X1+`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertex_label(self.src));
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrow(a).id.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Finite linear combination of paths. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathElement {
    terms: BTreeMap<Path, Rational>,
}

impl PathElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, Rational::one())
    }

    pub fn term(p: Path, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn idempotent(v: usize) -> Self {
        Self::from_path(Path::stationary(v))
    }

    pub fn word(q: &Quiver, word: &[&str]) -> Result<Self> {
        Ok(Self::from_path(Path::from_word(q, word)?))
    }

    /// Sum of `coef * word` terms.
    pub fn combination(q: &Quiver, terms: &[(i64, &[&str])]) -> Result<Self> {
        let mut e = Self::zero();
        for (c, w) in terms {
            e.add_term(Path::from_word(q, w)?, Rational::from_int(*c));
        }
        Ok(e)
    }

    pub fn add_term(&mut self, p: Path, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common path length, if every term has the same one.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Path::len);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Common `(source, target)`, if every term shares it.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|p| (p.src, p.tgt));
        let e = it.next()?;
        it.all(|x| x == e).then_some(e)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PathElement {
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    /// `self * other` (other first).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(p) = Path::mul(a, b) {
                    out.add_term(p, x * y);
                }
            }
        }
        out
    }

    /// `e_j * self * e_i` for each occurring `(i, j)`.
    pub fn split_bihomogeneous(&self) -> Vec<PathElement> {
        let mut blocks: BTreeMap<(usize, usize), PathElement> = BTreeMap::new();
        for (p, c) in &self.terms {
            blocks
                .entry((p.src, p.tgt))
                .or_default()
                .add_term(p.clone(), c.clone());
        }
        blocks.into_values().collect()
    }

    /// Per-degree components.
    pub fn split_degrees(&self) -> BTreeMap<usize, PathElement> {
        let mut out: BTreeMap<usize, PathElement> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(p.len()).or_default().add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn opposite(&self) -> Self {
        PathElement {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.opposite(), c.clone()))
                .collect(),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                let _ = write!(out, "{mag}*");
            }
            out.push_str(&p.display(q));
        }
        out
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.arrows, self.src)
    }
}

/// Ideal of `kQ` generated by length-homogeneous relations. Generators are
/// split into vertex-bihomogeneous pieces on construction, which does not
/// change the ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathIdeal {
    relations: Vec<PathElement>,
}

impl PathIdeal {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(q: &Quiver, relations: Vec<PathElement>) -> Result<Self> {
        let mut out = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            if r.degree().is_none() {
                return Err(Error::Inhomogeneous(r.display(q)));
            }
            out.extend(r.split_bihomogeneous());
        }
        Ok(PathIdeal { relations: out })
    }

    pub fn relations(&self) -> &[PathElement] {
        &self.relations
    }

    pub fn with_relation(&self, q: &Quiver, r: PathElement) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.push(r);
        PathIdeal::new(q, rels)
    }

    /// `true` if every generator has length at least 2.
    pub fn inside_square_of_arrow_ideal(&self) -> bool {
        self.relations.iter().all(|r| r.degree().is_some_and(|d| d >= 2))
    }
}

/// All paths of the given length with the optional endpoint filters, sorted
/// lexicographically by arrow indices (vertex index for length 0).
pub fn enumerate_paths(
    q: &Quiver,
    from: Option<usize>,
    to: Option<usize>,
    length: usize,
) -> Vec<Path> {
    let starts: Vec<usize> = match from {
        Some(v) => vec![v],
        None => (0..q.vertex_count()).collect(),
    };
    let mut layer: Vec<Path> = starts.into_iter().map(Path::stationary).collect();
    let out_arrows: Vec<Vec<usize>> = (0..q.vertex_count())
        .map(|v| (0..q.arrow_count()).filter(|&a| q.arrow(a).src == v).collect())
        .collect();
    for _ in 0..length {
        let mut next = Vec::new();
        for p in &layer {
            for &a in &out_arrows[p.tgt] {
                let mut np = p.clone();
                np.arrows.push(a);
                np.tgt = q.arrow(a).tgt;
                next.push(np);
            }
        }
        layer = next;
    }
    if let Some(t) = to {
        layer.retain(|p| p.tgt == t);
    }
    layer.sort();
    layer
}

#[derive(Clone, Debug)]
struct Degree {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: EchelonSpace,
}

/// The graded quotient `kQ/I`, computed lazily degree by degree.
///
/// The degree-`n` part of the ideal is `R_n + kQ_1 I_{n-1} + I_{n-1} kQ_1`.
/// Rows pivot on the largest path, so the surviving basis is the
/// lexicographically smallest complement.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    quiver: Quiver,
    ideal: PathIdeal,
    degrees: Vec<Degree>,
}

impl GradedQuotient {
    pub fn new(quiver: &Quiver, ideal: &PathIdeal) -> Self {
        GradedQuotient {
            quiver: quiver.clone(),
            ideal: ideal.clone(),
            degrees: Vec::new(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn ideal(&self) -> &PathIdeal {
        &self.ideal
    }

    fn to_sparse(&self, n: usize, e: &PathElement) -> SparseVec {
        let d = &self.degrees[n];
        e.terms()
            .map(|(p, c)| (d.index[p], c.clone()))
            .collect()
    }

    fn from_sparse(&self, n: usize, v: &SparseVec) -> PathElement {
        let d = &self.degrees[n];
        let mut e = PathElement::zero();
        for (&i, c) in v {
            e.add_term(d.paths[i].clone(), c.clone());
        }
        e
    }

    pub fn ensure(&mut self, n: usize) {
        while self.degrees.len() <= n {
            let k = self.degrees.len();
            let paths = enumerate_paths(&self.quiver, None, None, k);
            let index = paths
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect();
            self.degrees.push(Degree {
                paths,
                index,
                ideal: EchelonSpace::new(PivotPolicy::Max),
            });
            let mut gens: Vec<PathElement> = self
                .ideal
                .relations
                .iter()
                .filter(|r| r.degree() == Some(k))
                .cloned()
                .collect();
            if k > 0 {
                let prev: Vec<PathElement> = self.degrees[k - 1]
                    .ideal
                    .rows()
                    .map(|r| self.from_sparse(k - 1, r))
                    .collect();
                for x in &prev {
                    for a in 0..self.quiver.arrow_count() {
                        let ea = PathElement::from_path(Path::arrow(&self.quiver, a));
                        gens.push(ea.mul(x));
                        gens.push(x.mul(&ea));
                    }
                }
            }
            for g in gens {
                if g.is_zero() {
                    continue;
                }
                let v = self.to_sparse(k, &g);
                self.degrees[k].ideal.insert(v);
            }
        }
    }

    pub fn path_count(&mut self, n: usize) -> usize {
        self.ensure(n);
        self.degrees[n].paths.len()
    }

    pub fn dim(&mut self, n: usize) -> usize {
        self.ensure(n);
        self.degrees[n].paths.len() - self.degrees[n].ideal.dim()
    }

    /// Dimension of `e_j (kQ/I)_n e_i` (paths `i -> j`).
    pub fn block_dim(&mut self, n: usize, i: usize, j: usize) -> usize {
        self.basis(n)
            .iter()
            .filter(|p| p.src == i && p.tgt == j)
            .count()
    }

    /// Paths whose classes form a basis of degree `n`.
    pub fn basis(&mut self, n: usize) -> Vec<Path> {
        self.ensure(n);
        let d = &self.degrees[n];
        d.paths
            .iter()
            .enumerate()
            .filter(|(i, _)| !d.ideal.is_pivot(*i))
            .map(|(_, p)| p.clone())
            .collect()
    }

    /// Reduce modulo `I`; the result is supported on basis paths.
    pub fn normal_form(&mut self, e: &PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for (n, part) in e.split_degrees() {
            self.ensure(n);
            let v = self.to_sparse(n, &part);
            let r = self.degrees[n].ideal.reduce(v);
            out = out.add(&self.from_sparse(n, &r));
        }
        out
    }

    pub fn in_ideal(&mut self, e: &PathElement) -> bool {
        self.normal_form(e).is_zero()
    }

    /// Smallest `N` with `(kQ/I)_N = 0`, searching up to `limit`. All higher
    /// degrees then vanish as well.
    pub fn top_degree(&mut self, limit: usize) -> Result<usize> {
        for n in 0..=limit {
            if self.dim(n) == 0 {
                return Ok(n);
            }
        }
        Err(Error::NotFiniteDimensional(limit))
    }

    /// Canonical basis of `I_n` as path elements.
    pub fn ideal_basis(&mut self, n: usize) -> Vec<PathElement> {
        self.ensure(n);
        self.degrees[n]
            .ideal
            .canonical_basis()
            .iter()
            .map(|v| self.from_sparse(n, v))
            .collect()
    }
}

pub fn graded_quotient_dim(q: &Quiver, ideal: &PathIdeal, degree: usize) -> usize {
    GradedQuotient::new(q, ideal).dim(degree)
}

pub fn graded_quotient_basis(q: &Quiver, ideal: &PathIdeal, degree: usize) -> Vec<PathElement> {
    GradedQuotient::new(q, ideal)
        .basis(degree)
        .into_iter()
        .map(PathElement::from_path)
        .collect()
}
