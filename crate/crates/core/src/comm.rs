//! Commutative polynomial rings over the rationals: monomial orders,
//! Buchberger's algorithm, normal forms, zero-dimensional quotients, ideal
//! quotients, regular sequences and minimal generators, plus the two rings
//! `gr A(W(p))` and its complete-intersection enlargement.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::{c_p, Rational};

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u32 {
        self.0.iter().zip(w).map(|(e, w)| e * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable of a pure power, if it is one.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        match nz.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with standard degree.
    DegRevLex,
    Lex,
    /// Graded reverse lexicographic with the ring's weights as degree.
    WeightedDegRevLex,
    /// Block order: degrevlex on the first `k` variables, ties broken by
    /// degrevlex on the rest. Eliminates the first block.
    Elimination(usize),
}

fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable is larger
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

/// Variable names, grading weights, and the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(names: Vec<String>, weights: Vec<u32>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if names.len() != weights.len() {
            return Err(Error::InvalidArgument("one weight per variable required".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        Ok(Arc::new(Ring { names, weights, order }))
    }

    pub fn from_names(names: &[&str], weights: &[u32], order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(names.iter().map(|s| s.to_string()).collect(), weights.to_vec(), order)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            order,
            ..self.clone()
        })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (&a.0, &b.0);
        match self.order {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::WeightedDegRevLex => {
                let wa: u32 = a.iter().zip(&self.weights).map(|(e, w)| e * w).sum();
                let wb: u32 = b.iter().zip(&self.weights).map(|(e, w)| e * w).sum();
                wa.cmp(&wb).then_with(|| revlex_tail(a, b))
            }
            MonomialOrder::Elimination(k) => {
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> Polynomial {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(Rational::one())
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), i), Rational::one())
    }

    pub fn var_named(self: &Arc<Self>, name: &str) -> Result<Polynomial> {
        Ok(self.var(self.var_index(name)?))
    }

    pub fn term(self: &Arc<Self>, m: Monomial, c: Rational) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Polynomial {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn parse(self: &Arc<Self>, s: &str) -> Result<Polynomial> {
        parse_polynomial(self, s)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Polynomial with terms sorted decreasingly in its ring's order.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{mag}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(x, _)| x == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Common weighted degree, if homogeneous for `w`.
    pub fn homogeneous_degree(&self, w: &[u32]) -> Option<u32> {
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self, w: &[u32]) -> bool {
        self.is_zero() || self.homogeneous_degree(w).is_some()
    }

    fn same_ring(&self, o: &Polynomial) {
        debug_assert!(Arc::ptr_eq(&self.ring, &o.ring) || *self.ring == *o.ring, "ring mismatch");
    }

    /// `self + c * m * o`, merging sorted term lists.
    pub fn add_scaled(&self, c: &Rational, m: &Monomial, o: &Polynomial) -> Polynomial {
        self.same_ring(o);
        if c.is_zero() {
            return self.clone();
        }
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = o.terms.iter().map(|(x, y)| (x.mul(m), y * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (mx, cx) = a.next().unwrap();
                        let (_, cy) = b.next().unwrap();
                        let s = cx + &cy;
                        if !s.is_zero() {
                            out.push((mx.clone(), s));
                        }
                    }
                },
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        self.add_scaled(&Rational::one(), &Monomial::one(self.ring.nvars()), o)
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add_scaled(&Rational::from_int(-1), &Monomial::one(self.ring.nvars()), o)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(x, y)| (x.mul(m), y * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        self.same_ring(o);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        self.ring.from_terms(acc)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Re-express in another ring with the same number of variables.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        ring.from_terms(self.terms.iter().cloned())
    }

    /// Map monomials through `f` into `ring` (e.g. adding or dropping vars).
    pub fn map_monomials(&self, ring: &Arc<Ring>, f: impl Fn(&Monomial) -> Option<Monomial>) -> Polynomial {
        ring.from_terms(
            self.terms
                .iter()
                .filter_map(|(m, c)| f(m).map(|m2| (m2, c.clone()))),
        )
    }

    /// Set the listed variables to zero.
    pub fn kill_vars(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .cloned()
                .collect(),
        }
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        if d.is_zero() {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        }
        let mut rem = self.clone();
        let mut q = self.ring.zero();
        while !rem.is_zero() {
            if !d.lm().divides(rem.lm()) {
                return Err(Error::Invariant(format!("`{d}` does not divide `{self}`")));
            }
            let m = d.lm().quotient(rem.lm());
            let c = rem.lc() / d.lc();
            q = q.add(&self.ring.term(m.clone(), c.clone()));
            rem = rem.add_scaled(&(-c), &m, d);
        }
        Ok(q)
    }
}

fn parse_polynomial(ring: &Arc<Ring>, s: &str) -> Result<Polynomial> {
    let err = |m: &str| Error::Parse(format!("{m} in `{s}`"));
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        pieces.push((neg, cur));
    } else if !pieces.is_empty() || s.trim().is_empty() {
        if s.trim().is_empty() {
            return Err(err("empty polynomial"));
        }
        return Err(err("dangling sign"));
    }
    let mut terms = Vec::new();
    for (neg, piece) in pieces {
        let mut coef = Rational::one();
        let mut mono = Monomial::one(ring.nvars());
        for factor in piece.split('*') {
            let f = factor.trim();
            if f.is_empty() {
                return Err(err("empty factor"));
            }
            if f.starts_with(|c: char| c.is_ascii_digit()) {
                coef = coef * f.parse::<Rational>()?;
                continue;
            }
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim().parse::<u32>().map_err(|_| err("bad exponent"))?,
                ),
                None => (f, 1),
            };
            let i = ring.var_index(name)?;
            mono.0[i] += exp;
        }
        if neg {
            coef = -coef;
        }
        terms.push((mono, coef));
    }
    Ok(ring.from_terms(terms))
}

/// JSON ring description: variables, weights and relations as ASCII
/// polynomials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingDoc {
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    pub relations: Vec<String>,
}

pub fn load_ring(json: &str) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    let doc: RingDoc = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let ring = Ring::new(doc.variables, doc.weights, MonomialOrder::DegRevLex)?;
    let rels = doc
        .relations
        .iter()
        .map(|r| ring.parse(r))
        .collect::<Result<Vec<_>>>()?;
    Ok((ring, rels))
}

/// Reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
}

fn reduce_with(f: &Polynomial, basis: &[Polynomial], full: bool) -> Polynomial {
    let ring = f.ring.clone();
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, Rational)> = Vec::new();
    while !p.is_zero() {
        let lm = p.lm().clone();
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let m = g.lm().quotient(&lm);
                let c = -(p.lc() / g.lc());
                p = p.add_scaled(&c, &m, g);
            }
            None => {
                if !full {
                    break;
                }
                rest.push(p.terms.remove(0));
            }
        }
    }
    if full {
        Polynomial { ring, terms: rest }
    } else {
        p
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Buchberger's algorithm with the product and chain criteria, sugar-degree
/// pair selection (normal selection on ties), and final reduction.
pub fn buchberger(gens: &[Polynomial], ring: &Arc<Ring>) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add = |h: Polynomial,
               s: u32,
               basis: &mut Vec<Polynomial>,
               sugar: &mut Vec<u32>,
               pairs: &mut Vec<Pair>,
               pending: &mut HashSet<(usize, usize)>| {
        let j = basis.len();
        for i in 0..j {
            let lcm = basis[i].lm().lcm(h.lm());
            let si = sugar[i] + lcm.degree() - basis[i].lm().degree();
            let sj = s + lcm.degree() - h.lm().degree();
            pairs.push(Pair {
                i,
                j,
                lcm,
                sugar: si.max(sj),
            });
            pending.insert((i, j));
        }
        basis.push(h);
        sugar.push(s);
    };
    for g in gens {
        let g = g.to_ring(ring);
        let h = reduce_with(&g, &basis, true).monic();
        if !h.is_zero() {
            let s = g.total_degree();
            add(h, s, &mut basis, &mut sugar, &mut pairs, &mut pending);
        }
    }
    let mut reductions = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| ring.cmp(&pairs[a].lcm, &pairs[b].lcm))
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi.lm().coprime(fj.lm()) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].lm().divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let mi = fi.lm().quotient(&pair.lcm);
        let mj = fj.lm().quotient(&pair.lcm);
        let s = fi
            .mul_term(&mi, &fj.lc().clone())
            .add_scaled(&(-fi.lc().clone()), &mj, fj);
        let h = reduce_with(&s, &basis, true);
        reductions += 1;
        if !h.is_zero() {
            debug!(
                "groebner: basis {} pairs {} new lm {}",
                basis.len() + 1,
                pairs.len(),
                ring.format_monomial(h.lm())
            );
            add(h.monic(), pair.sugar, &mut basis, &mut sugar, &mut pairs, &mut pending);
        }
    }
    debug!("groebner: {} reductions, {} elements before reduction", reductions, basis.len());
    GroebnerBasis::reduce(ring, basis)
}

impl GroebnerBasis {
    fn reduce(ring: &Arc<Ring>, mut polys: Vec<Polynomial>) -> Self {
        polys.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
        let mut minimal: Vec<Polynomial> = Vec::new();
        for p in polys {
            if !minimal.iter().any(|g| g.lm().divides(p.lm())) {
                minimal.retain(|g| !p.lm().divides(g.lm()));
                minimal.push(p);
            }
        }
        let reduced: Vec<Polynomial> = (0..minimal.len())
            .map(|i| {
                let others: Vec<Polynomial> = minimal
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let g = &minimal[i];
                let tail = Polynomial {
                    ring: ring.clone(),
                    terms: g.terms[1..].to_vec(),
                };
                let t = reduce_with(&tail, &others, true);
                Polynomial {
                    ring: ring.clone(),
                    terms: std::iter::once(g.terms[0].clone()).chain(t.terms).collect(),
                }
                .monic()
            })
            .collect();
        let mut out = reduced;
        out.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
        GroebnerBasis {
            ring: ring.clone(),
            polys: out,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce_with(&f.to_ring(&self.ring), &self.polys, true)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let (fi, fj) = (&self.polys[i], &self.polys[j]);
                let l = fi.lm().lcm(fj.lm());
                let s = fi
                    .mul_term(&fi.lm().quotient(&l), fj.lc())
                    .add_scaled(&(-fi.lc().clone()), &fj.lm().quotient(&l), fj);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `true` if an `x_i^e` leading monomial exists for every variable.
    pub fn is_zero_dimensional(&self) -> bool {
        let n = self.ring.nvars();
        let mut hit = vec![false; n];
        for m in self.leading_monomials() {
            if let Some(i) = m.pure_power_var() {
                hit[i] = true;
            }
        }
        if self.polys.iter().any(|p| p.lm().is_one()) {
            return true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        other.polys.iter().all(|g| self.contains(g)) && self.polys.iter().all(|g| other.contains(g))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<serde_json::Value> = self
            .polys
            .iter()
            .map(|p| {
                serde_json::json!({
                    "polynomial": p.to_string(),
                    "leading": self.ring.format_monomial(p.lm()),
                })
            })
            .collect();
        serde_json::json!({
            "variables": self.ring.names(),
            "order": self.ring.order(),
            "generators": gens,
        })
    }
}

/// A quotient `k[x]/I` with its Gröbner basis and original generators.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    gens: Vec<Polynomial>,
    gb: GroebnerBasis,
    basis: Option<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
}

impl QuotientRing {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Self {
        let gb = buchberger(&gens, ring);
        let basis = enumerate_standard(&gb);
        let index = basis
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        QuotientRing {
            gens,
            gb,
            basis,
            index,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.gb.ring()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.basis.is_some()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    pub fn quotient_basis(&self) -> Result<&[Monomial]> {
        self.basis.as_deref().ok_or(Error::PositiveDimensional)
    }

    pub fn dim(&self) -> Result<usize> {
        Ok(self.quotient_basis()?.len())
    }

    /// Coordinates of the normal form over the standard monomials.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<Rational>> {
        let n = self.dim()?;
        let mut v = vec![Rational::zero(); n];
        for (m, c) in self.normal_form(f).terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &[Rational]) -> Result<Polynomial> {
        let b = self.quotient_basis()?;
        Ok(self
            .ring()
            .from_terms(b.iter().cloned().zip(v.iter().cloned())))
    }

    /// Matrix of multiplication by `f` on the standard-monomial basis.
    pub fn mult_matrix(&self, f: &Polynomial) -> Result<Matrix> {
        let b = self.quotient_basis()?.to_vec();
        let cols: Vec<Vec<Rational>> = b
            .iter()
            .map(|m| self.coordinates(&f.mul_term(m, &Rational::one())))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(&cols, b.len()))
    }

    fn check_homogeneous(&self, w: &[u32]) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous(w)) {
            Some(g) => Err(Error::Inhomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Number of standard monomials of weighted degree `d`.
    pub fn hilbert_function(&self, w: &[u32], d: u32) -> Result<usize> {
        self.check_homogeneous(w)?;
        Ok(self
            .quotient_basis()?
            .iter()
            .filter(|m| m.weighted_degree(w) == d)
            .count())
    }

    pub fn hilbert_series(&self, w: &[u32]) -> Result<BTreeMap<u32, usize>> {
        self.check_homogeneous(w)?;
        let mut out = BTreeMap::new();
        for m in self.quotient_basis()? {
            *out.entry(m.weighted_degree(w)).or_insert(0) += 1;
        }
        Ok(out)
    }
}

fn enumerate_standard(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    if !gb.is_zero_dimensional() {
        return None;
    }
    let ring = gb.ring();
    let lms = gb.leading_monomials();
    let n = ring.nvars();
    let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut out = Vec::new();
    let one = Monomial::one(n);
    if standard(&one) {
        let mut queue = VecDeque::from([one.clone()]);
        seen.insert(one);
        while let Some(m) = queue.pop_front() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i));
                if !seen.contains(&next) && standard(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
            out.push(m);
        }
    }
    let w = ring.weights().to_vec();
    out.sort_by(|a, b| {
        a.weighted_degree(&w)
            .cmp(&b.weighted_degree(&w))
            .then_with(|| b.0.cmp(&a.0))
    });
    Some(out)
}

/// `(I : f)` via `I ∩ (f) = (t I + (1 - t) f) ∩ k[x]`.
pub fn ideal_quotient(i: &GroebnerBasis, f: &Polynomial) -> Result<GroebnerBasis> {
    let ring = i.ring().clone();
    if f.is_zero() {
        return Ok(buchberger(&[ring.one()], &ring));
    }
    let f = f.to_ring(&ring);
    let n = ring.nvars();
    let mut names = vec!["_t".to_string()];
    names.extend(ring.names().iter().cloned());
    let mut weights = vec![1];
    weights.extend_from_slice(ring.weights());
    let ering = Ring::new(names, weights, MonomialOrder::Elimination(1))?;
    let lift = |p: &Polynomial, t: u32| {
        p.map_monomials(&ering, |m| {
            let mut e = vec![t];
            e.extend_from_slice(&m.0);
            Some(Monomial(e))
        })
    };
    let mut gens: Vec<Polynomial> = i.polys().iter().map(|g| lift(g, 1)).collect();
    gens.push(lift(&f, 0).sub(&lift(&f, 1)));
    let egb = buchberger(&gens, &ering);
    let mut quot = Vec::new();
    for g in egb.polys() {
        if g.terms().iter().all(|(m, _)| m.0[0] == 0) {
            let h = g.map_monomials(&ring, |m| Some(Monomial(m.0[1..].to_vec())));
            quot.push(h.exact_div(&f)?);
        }
    }
    debug_assert_eq!(n, ring.nvars());
    Ok(buchberger(&quot, &ring))
}

/// Result of a regular-sequence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    pub regular: bool,
    /// 1-based index of the first element that is a zero divisor.
    pub first_failure: Option<usize>,
    /// Size of the Gröbner basis of `(r_1..r_{i-1}) : r_i` at each step.
    pub quotient_sizes: Vec<usize>,
}

/// Checks `((r_1..r_{i-1}) : r_i) = (r_1..r_{i-1})` for every `i`.
pub fn is_regular_sequence(seq: &[Polynomial], ring: &Arc<Ring>) -> Result<RegularityCertificate> {
    let mut sizes = Vec::new();
    for (i, r) in seq.iter().enumerate() {
        let prefix = buchberger(&seq[..i], ring);
        if r.is_zero() || prefix.contains(r) {
            return Ok(RegularityCertificate {
                regular: false,
                first_failure: Some(i + 1),
                quotient_sizes: sizes,
            });
        }
        let q = if i == 0 {
            // (0 : r) = 0 in a domain
            prefix.clone()
        } else {
            ideal_quotient(&prefix, r)?
        };
        debug!("regular sequence: step {} quotient has {} generators", i + 1, q.len());
        sizes.push(q.len());
        if !q.polys().iter().all(|g| prefix.contains(g)) {
            return Ok(RegularityCertificate {
                regular: false,
                first_failure: Some(i + 1),
                quotient_sizes: sizes,
            });
        }
    }
    Ok(RegularityCertificate {
        regular: true,
        first_failure: None,
        quotient_sizes: sizes,
    })
}

/// Graded Nakayama: scanning from the last generator backwards, drop `g`
/// when it lies in `(kept others) + m * (all)`. Returns kept indices.
pub fn minimal_generators(gens: &[Polynomial], ring: &Arc<Ring>) -> Result<Vec<usize>> {
    let w = ring.weights();
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous(w)) {
        return Err(Error::Inhomogeneous(g.to_string()));
    }
    let mut m_all: Vec<Polynomial> = Vec::new();
    for g in gens {
        for v in 0..ring.nvars() {
            m_all.push(g.mul(&ring.var(v)));
        }
    }
    let mut kept: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    for i in (0..gens.len()).rev() {
        if !kept.contains(&i) {
            continue;
        }
        let mut others: Vec<Polynomial> = kept
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| gens[j].clone())
            .collect();
        others.extend(m_all.iter().cloned());
        if buchberger(&others, ring).contains(&gens[i]) {
            kept.retain(|&j| j != i);
        }
    }
    Ok(kept)
}

/// Ring `Q[E, F, H, w]` with `deg w = 2`, `deg E = deg F = deg H = 2p - 1`,
/// ordered by weighted degrevlex so that `H^2` leads `H^2 - C w^(2p-1)`.
pub fn gra_ring(p: u32) -> Result<Arc<Ring>> {
    c_p(p)?;
    Ring::from_names(
        &["E", "F", "H", "w"],
        &[2 * p - 1, 2 * p - 1, 2 * p - 1, 2],
        MonomialOrder::WeightedDegRevLex,
    )
}

/// Relations `r_1..r_11` of `gr A(W(p))`, in order:
/// `E^2, F^2, H^3, w^(3p-1), w^p E, w^p F, w^p H, H^2 - C w^(2p-1),
/// EF + C w^(2p-1), EH, FH`.
pub fn gra_relations(p: u32) -> Result<Vec<Polynomial>> {
    let ring = gra_ring(p)?;
    let c = c_p(p)?;
    let (e, f, h, w) = (ring.var(0), ring.var(1), ring.var(2), ring.var(3));
    let w2 = w.pow(2 * p - 1).scale(&c);
    Ok(vec![
        e.pow(2),
        f.pow(2),
        h.pow(3),
        w.pow(3 * p - 1),
        w.pow(p).mul(&e),
        w.pow(p).mul(&f),
        w.pow(p).mul(&h),
        h.pow(2).sub(&w2),
        e.mul(&f).add(&w2),
        e.mul(&h),
        f.mul(&h),
    ])
}

pub fn build_gra(p: u32) -> Result<QuotientRing> {
    let ring = gra_ring(p)?;
    Ok(QuotientRing::new(&ring, gra_relations(p)?))
}

/// Ring `Q[E, F, H, w, x5..x8]`. The weights make the enlarged relations
/// homogeneous: `E, F, H, x8 = 4p - 2`, `w = 4`, `x5, x6, x7 = 4p - 1`.
pub fn rtilde_ring(p: u32) -> Result<Arc<Ring>> {
    c_p(p)?;
    let a = 4 * p - 2;
    let b = 4 * p - 1;
    Ring::from_names(
        &["E", "F", "H", "w", "x5", "x6", "x7", "x8"],
        &[a, a, a, 4, b, b, b, a],
        MonomialOrder::DegRevLex,
    )
}

/// `r_1, r_2, r_3, r_4, w^p E - x5^2, w^p F - x6^2, w^p H - x7^2,
/// H^2 - C w^(2p-1) - x8^2`.
pub fn rtilde_relations(p: u32) -> Result<Vec<Polynomial>> {
    let ring = rtilde_ring(p)?;
    let c = c_p(p)?;
    let v: Vec<Polynomial> = (0..8).map(|i| ring.var(i)).collect();
    let (e, f, h, w) = (&v[0], &v[1], &v[2], &v[3]);
    let wp = w.pow(p);
    Ok(vec![
        e.pow(2),
        f.pow(2),
        h.pow(3),
        w.pow(3 * p - 1),
        wp.mul(e).sub(&v[4].pow(2)),
        wp.mul(f).sub(&v[5].pow(2)),
        wp.mul(h).sub(&v[6].pow(2)),
        h.pow(2).sub(&w.pow(2 * p - 1).scale(&c)).sub(&v[7].pow(2)),
    ])
}

pub fn build_rtilde(p: u32) -> Result<QuotientRing> {
    let ring = rtilde_ring(p)?;
    Ok(QuotientRing::new(&ring, rtilde_relations(p)?))
}

/// Decomposition `r = Σ c_i x_i` obtained by dividing every term by its
/// lowest-index variable. Returns `(i, c_i)` for nonzero `c_i`.
pub fn linear_decomposition(r: &Polynomial) -> Result<Vec<(usize, Polynomial)>> {
    let ring = r.ring().clone();
    let n = ring.nvars();
    let mut parts: BTreeMap<usize, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in r.terms() {
        let i = (0..n)
            .find(|&i| m.0[i] > 0)
            .ok_or_else(|| Error::InvalidArgument("constant term has no decomposition".into()))?;
        let mut e = m.clone();
        e.0[i] -= 1;
        parts.entry(i).or_default().push((e, c.clone()));
    }
    Ok(parts.into_iter().map(|(i, t)| (i, ring.from_terms(t))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xy() -> Arc<Ring> {
        Ring::from_names(&["x", "y"], &[1, 1], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn trivial_bases() {
        let r = xy();
        let g = buchberger(&[r.parse("x^2").unwrap(), r.parse("y^2").unwrap()], &r);
        assert_eq!(g.len(), 2);
        let g = buchberger(&[r.parse("x - y").unwrap(), r.parse("y").unwrap()], &r);
        let lms: Vec<String> = g.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(lms, vec!["y", "x"]);
        assert!(g.verify());
    }

    #[test]
    fn parse_and_print_round_trip() {
        let r = xy();
        let p = r.parse("3/2*x^2*y - y + 4 - 2*x").unwrap();
        assert_eq!(p.to_string(), "3/2*x^2*y - 2*x - y + 4");
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
        assert!(r.parse("z").is_err());
        assert!(r.parse("x +").is_err());
    }

    #[test]
    fn degrevlex_orders_variables() {
        let r = Ring::from_names(&["a", "b", "c"], &[1, 1, 1], MonomialOrder::DegRevLex).unwrap();
        let ab = r.parse("a*c").unwrap();
        let bb = r.parse("b^2").unwrap();
        // b^2 > a*c in degrevlex with a > b > c
        assert_eq!(r.cmp(bb.lm(), ab.lm()), Ordering::Greater);
    }

    #[test]
    fn quotient_of_square() {
        let r = Ring::from_names(&["x"], &[1], MonomialOrder::DegRevLex).unwrap();
        let i = buchberger(&[r.parse("x^2").unwrap()], &r);
        let q = ideal_quotient(&i, &r.parse("x").unwrap()).unwrap();
        assert_eq!(q.polys(), &[r.parse("x").unwrap()]);
        let one = ideal_quotient(&i, &r.one()).unwrap();
        assert!(one.same_ideal(&i));
        let qr = QuotientRing::new(&r, vec![r.parse("x^2").unwrap()]);
        assert_eq!(qr.quotient_basis().unwrap().len(), 2);
    }

    #[test]
    fn regular_sequence_basics() {
        let r = xy();
        let x = r.parse("x").unwrap();
        let cert = is_regular_sequence(&[x.clone(), x.clone()], &r).unwrap();
        assert_eq!(cert.first_failure, Some(2));
        let cert = is_regular_sequence(&[x, r.parse("y").unwrap()], &r).unwrap();
        assert!(cert.regular);
        let z = is_regular_sequence(&[r.parse("x*y").unwrap(), r.parse("x^2").unwrap()], &r).unwrap();
        assert!(!z.regular);
    }

    #[test]
    fn minimal_generator_scan() {
        let r = xy();
        let g = [r.parse("x^2").unwrap(), r.parse("y^2").unwrap(), r.parse("x^2 + y^2").unwrap()];
        assert_eq!(minimal_generators(&g, &r).unwrap(), vec![0, 1]);
        let r1 = Ring::from_names(&["x"], &[1], MonomialOrder::DegRevLex).unwrap();
        let g = [r1.parse("x^2").unwrap(), r1.parse("x^3").unwrap()];
        assert_eq!(minimal_generators(&g, &r1).unwrap(), vec![0]);
        assert!(minimal_generators(&[r.parse("x^2 + y").unwrap()], &r).is_err());
    }

    #[test]
    fn gra_p2_basis_and_normal_forms() {
        let q = build_gra(2).unwrap();
        let ring = q.ring().clone();
        let basis: Vec<String> = q
            .quotient_basis()
            .unwrap()
            .iter()
            .map(|m| ring.format_monomial(m))
            .collect();
        let mut want = vec!["1", "w", "w^2", "w^3", "w^4", "E", "F", "H", "E*w", "F*w", "H*w"];
        let mut got = basis.clone();
        want.sort();
        got.sort();
        assert_eq!(got, want);
        let h2 = q.normal_form(&ring.parse("H^2").unwrap());
        assert_eq!(h2, ring.parse("128/9*w^3").unwrap());
        assert!(q.normal_form(&ring.parse("w^5").unwrap()).is_zero());
        let w = [3, 3, 3, 2];
        assert_eq!(q.hilbert_function(&w, 3).unwrap(), 3);
        assert_eq!(q.hilbert_function(&w, 0).unwrap(), 1);
        let total: usize = q.hilbert_series(&w).unwrap().values().sum();
        assert_eq!(total, 11);
    }

    #[test]
    fn gra_basis_size_independent_of_order() {
        let p = 2;
        let lex = gra_ring(p).unwrap().with_order(MonomialOrder::Lex);
        let rels: Vec<Polynomial> = gra_relations(p).unwrap().iter().map(|r| r.to_ring(&lex)).collect();
        let q = QuotientRing::new(&lex, rels);
        assert_eq!(q.dim().unwrap(), 11);
    }

    #[test]
    fn decomposition_follows_lowest_variable() {
        let ring = gra_ring(2).unwrap();
        let r9 = &gra_relations(2).unwrap()[8];
        let d = linear_decomposition(r9).unwrap();
        assert_eq!(d[0], (0, ring.parse("F").unwrap()));
        assert_eq!(d[1], (3, ring.parse("128/9*w^2").unwrap()));
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
        proptest::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..6)
    }

    proptest! {
        #[test]
        fn normal_form_properties(a in arb_poly(), b in arb_poly()) {
            let r = xy();
            let to = |v: &Vec<(u32, u32, i64)>| r.from_terms(
                v.iter().map(|&(i, j, c)| (Monomial(vec![i, j]), Rational::from_int(c))));
            let gb = buchberger(&[r.parse("x^2 - y").unwrap(), r.parse("x*y^2 - 1").unwrap()], &r);
            let (f, g) = (to(&a), to(&b));
            let nf = gb.normal_form(&f);
            prop_assert_eq!(gb.normal_form(&nf), nf.clone());
            prop_assert!(gb.contains(&f.sub(&nf)));
            prop_assert_eq!(gb.normal_form(&f.add(&g)), nf.add(&gb.normal_form(&g)));
        }
    }
}
