//! Koszul–Tate DG algebras over commutative quotient rings, the Tate
//! resolution of the complete intersection `R~`, the presentation of
//! `H*(R~)` by a rewriting system, the lift `psi` of the surjection
//! `R~ -> gr A(W(p))`, and the induced map on cohomology.

use std::collections::{BTreeMap, HashMap};

use log::debug;
use serde::Serialize;

use crate::comm::{
    build_gra, build_rtilde, gra_relations, linear_decomposition, minimal_generators, rtilde_relations, Monomial,
    Polynomial, QuotientRing,
};
use crate::error::{Error, Result};
use crate::linalg::{EchelonSpace, Matrix, PivotPolicy, SparseVec};
use crate::scalars::{c_p, Rational};

/// Monomial `t_A s^b`: `A` as a bitmask of odd generators, `b` as
/// exponents of even generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DgMonomial {
    pub odd: u32,
    pub even: Vec<u32>,
}

impl DgMonomial {
    pub fn one(n_even: usize) -> Self {
        DgMonomial {
            odd: 0,
            even: vec![0; n_even],
        }
    }

    pub fn degree(&self) -> usize {
        self.odd.count_ones() as usize + 2 * self.even.iter().sum::<u32>() as usize
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.odd >> i & 1 == 1).collect()
    }
}

/// Sign of `t_A * t_B` reordered to sorted form, or `None` if they share a
/// generator.
fn odd_product_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for j in 0..32 {
        if b >> j & 1 == 1 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Element of a DG algebra: coefficients are normal forms in the base.
pub type DgElement = BTreeMap<DgMonomial, Polynomial>;

/// Free graded-commutative algebra over a quotient ring on odd generators
/// `T_i` (`dT_i = x_i`) and even generators `S_j` (`dS_j = Σ c_{j,i} T_i`).
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    base: QuotientRing,
    odd_names: Vec<String>,
    even_names: Vec<String>,
    d_odd: Vec<Polynomial>,
    d_even: Vec<Vec<(usize, Polynomial)>>,
}

impl DgAlgebra {
    /// `T_i -> x_i` for every variable and `S_j` killing the cycle
    /// `Σ c_{j,i} T_i` of the relation `r_j` (lowest-variable split).
    pub fn koszul_tate(base: QuotientRing, relations: &[Polynomial], even_names: Vec<String>) -> Result<Self> {
        let ring = base.ring().clone();
        let n = ring.nvars();
        if n > 32 {
            return Err(Error::InvalidArgument("at most 32 odd generators".into()));
        }
        let d_odd = (0..n).map(|i| ring.var(i)).collect();
        let d_even = relations
            .iter()
            .map(linear_decomposition)
            .collect::<Result<Vec<_>>>()?;
        let odd_names = (1..=n).map(|i| format!("T{i}")).collect();
        Ok(DgAlgebra {
            base,
            odd_names,
            even_names,
            d_odd,
            d_even,
        })
    }

    pub fn base(&self) -> &QuotientRing {
        &self.base
    }

    pub fn n_odd(&self) -> usize {
        self.d_odd.len()
    }

    pub fn n_even(&self) -> usize {
        self.d_even.len()
    }

    pub fn even_names(&self) -> &[String] {
        &self.even_names
    }

    pub fn odd_generator(&self, i: usize) -> DgMonomial {
        DgMonomial {
            odd: 1 << i,
            even: vec![0; self.n_even()],
        }
    }

    pub fn even_generator(&self, j: usize) -> DgMonomial {
        let mut even = vec![0; self.n_even()];
        even[j] = 1;
        DgMonomial { odd: 0, even }
    }

    pub fn d_even_table(&self) -> &[Vec<(usize, Polynomial)>] {
        &self.d_even
    }

    /// All monomials of homological degree `m`, sorted.
    pub fn monomials(&self, m: usize) -> Vec<DgMonomial> {
        let mut out = Vec::new();
        let no = self.n_odd();
        for mask in 0u32..(1u32 << no) {
            let k = mask.count_ones() as usize;
            if k > m || (m - k) % 2 != 0 {
                continue;
            }
            let mut exps = vec![0u32; self.n_even()];
            compositions((m - k) / 2, 0, &mut exps, &mut |e| {
                out.push(DgMonomial {
                    odd: mask,
                    even: e.to_vec(),
                })
            });
        }
        out.sort();
        out
    }

    pub fn rank(&self, m: usize) -> usize {
        self.monomials(m).len()
    }

    fn push(&self, acc: &mut DgElement, m: DgMonomial, c: Polynomial) {
        let c = self.base.normal_form(&c);
        if c.is_zero() {
            return;
        }
        match acc.get_mut(&m) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    acc.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                acc.insert(m, c);
            }
        }
    }

    pub fn element(&self, m: DgMonomial, c: Polynomial) -> DgElement {
        let mut e = DgElement::new();
        self.push(&mut e, m, c);
        e
    }

    pub fn unit(&self) -> DgElement {
        self.element(DgMonomial::one(self.n_even()), self.base.ring().one())
    }

    pub fn mul_monomials(&self, a: &DgMonomial, b: &DgMonomial) -> Option<(i64, DgMonomial)> {
        let sign = odd_product_sign(a.odd, b.odd)?;
        Some((
            sign,
            DgMonomial {
                odd: a.odd | b.odd,
                even: a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect(),
            },
        ))
    }

    pub fn mul(&self, a: &DgElement, b: &DgElement) -> DgElement {
        let mut out = DgElement::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                if let Some((s, m)) = self.mul_monomials(ma, mb) {
                    self.push(&mut out, m, ca.mul(cb).scale(&Rational::from_int(s)));
                }
            }
        }
        out
    }

    pub fn add_into(&self, acc: &mut DgElement, e: &DgElement, c: &Polynomial) {
        for (m, x) in e {
            self.push(acc, m.clone(), x.mul(c));
        }
    }

    /// Differential of a monomial (graded Leibniz rule).
    pub fn d_monomial(&self, m: &DgMonomial) -> DgElement {
        let mut out = DgElement::new();
        let idx = m.odd_indices();
        for (pos, &i) in idx.iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let rest = DgMonomial {
                odd: m.odd & !(1 << i),
                even: m.even.clone(),
            };
            self.push(&mut out, rest, self.d_odd[i].scale(&Rational::from_int(sign)));
        }
        let outer = if idx.len() % 2 == 0 { 1 } else { -1 };
        for j in 0..self.n_even() {
            let b = m.even[j];
            if b == 0 {
                continue;
            }
            let mut lowered = m.even.clone();
            lowered[j] -= 1;
            for (i, c) in &self.d_even[j] {
                if let Some(s) = odd_product_sign(m.odd, 1 << i) {
                    let mono = DgMonomial {
                        odd: m.odd | 1 << i,
                        even: lowered.clone(),
                    };
                    let coef = Rational::from_int(outer * s * b as i64);
                    self.push(&mut out, mono, c.scale(&coef));
                }
            }
        }
        out
    }

    pub fn d(&self, e: &DgElement) -> DgElement {
        let mut out = DgElement::new();
        for (m, c) in e {
            let dm = self.d_monomial(m);
            self.add_into(&mut out, &dm, c);
        }
        out
    }

    /// `d^2 = 0` on every monomial of degree at most `max`. Returns the
    /// first offending monomial.
    pub fn check_d_squared(&self, max: usize) -> std::result::Result<usize, DgMonomial> {
        let mut checked = 0;
        for m in 0..=max {
            for u in self.monomials(m) {
                if !self.d(&self.d_monomial(&u)).is_empty() {
                    return Err(u);
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Every differential coefficient on generators lies in the maximal
    /// ideal.
    pub fn is_minimal(&self) -> bool {
        self.d_odd.iter().all(|c| c.constant_term().is_zero())
            && self
                .d_even
                .iter()
                .flatten()
                .all(|(_, c)| self.base.normal_form(c).constant_term().is_zero())
    }

    pub fn format_monomial(&self, m: &DgMonomial) -> String {
        let mut parts: Vec<String> = m.odd_indices().iter().map(|&i| self.odd_names[i].clone()).collect();
        for (j, &e) in m.even.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.even_names[j].clone()),
                _ => parts.push(format!("{}^{}", self.even_names[j], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format_element(&self, e: &DgElement) -> String {
        if e.is_empty() {
            return "0".into();
        }
        e.iter()
            .map(|(m, c)| format!("({c})*{}", self.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn compositions(total: usize, j: usize, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if j == exps.len() {
        if total == 0 {
            f(exps);
        }
        return;
    }
    if j + 1 == exps.len() {
        exps[j] = total as u32;
        f(exps);
        exps[j] = 0;
        return;
    }
    for k in 0..=total {
        exps[j] = k as u32;
        compositions(total - k, j + 1, exps, f);
    }
    exps[j] = 0;
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// `Σ_j C(8, m - 2j) C(j + 7, 7)`: rank of the Tate complex on eight odd and
/// eight even generators in degree `m`.
pub fn tate_rank(m: usize) -> usize {
    (0..=m / 2).map(|j| binomial(8, m - 2 * j) * binomial(j + 7, 7)).sum()
}

/// The Tate resolution of `k` over `R~`: odd `t_1..t_8`, even `s_1..s_8`.
pub fn build_tate(p: u32) -> Result<DgAlgebra> {
    let base = build_rtilde(p)?;
    let rels = rtilde_relations(p)?;
    DgAlgebra::koszul_tate(base, &rels, (1..=8).map(|j| format!("s{j}")).collect())
}

/// Start of the Tate construction over `R = gr A(W(p))`: odd `T_1..T_4`
/// and one even `S_j` per minimal relation.
pub fn build_r_start(p: u32) -> Result<(DgAlgebra, Vec<usize>)> {
    let base = build_gra(p)?;
    let rels = gra_relations(p)?;
    let kept = minimal_generators(&rels, base.ring())?;
    let chosen: Vec<Polynomial> = kept.iter().map(|&i| rels[i].clone()).collect();
    let names = kept.iter().map(|i| format!("S{}", i + 1)).collect();
    Ok((DgAlgebra::koszul_tate(base, &chosen, names)?, kept))
}

/// The DG map `psi` from the Tate resolution over `R~` to the Tate
/// construction over `R`, covering `pi: R~ -> R`.
pub struct PsiLift {
    pub p: u32,
    pub source: DgAlgebra,
    pub target: DgAlgebra,
    /// Original relation index (0-based) of each even target generator.
    pub target_relations: Vec<usize>,
    odd_images: Vec<DgElement>,
    even_images: Vec<DgElement>,
}

impl PsiLift {
    pub fn new(p: u32) -> Result<Self> {
        let source = build_tate(p)?;
        let (target, kept) = build_r_start(p)?;
        let c = c_p(p)?;
        let ring = target.base().ring().clone();
        let even_of = |rel: usize| -> Result<usize> {
            kept.iter()
                .position(|&k| k == rel)
                .ok_or_else(|| Error::Invariant(format!("relation r{} is not minimal", rel + 1)))
        };
        let s8 = even_of(7)?;
        let mut odd_images = Vec::new();
        for i in 0..source.n_odd() {
            odd_images.push(if i < 4 {
                target.element(target.odd_generator(i), ring.one())
            } else {
                DgElement::new()
            });
        }
        let mut even_images = Vec::new();
        for j in 0..source.n_even() {
            let img = match j {
                2 => target.element(target.even_generator(s8), ring.var(2)),
                3 => target.element(
                    target.even_generator(s8),
                    ring.var(3).pow(p).scale(&(-c.recip())),
                ),
                _ => target.element(target.even_generator(even_of(j)?), ring.one()),
            };
            even_images.push(img);
        }
        Ok(PsiLift {
            p,
            source,
            target,
            target_relations: kept,
            odd_images,
            even_images,
        })
    }

    /// `pi`: set `x5..x8` to zero and reduce in `R`.
    pub fn pi(&self, f: &Polynomial) -> Polynomial {
        let ring = self.target.base().ring();
        let g = f.map_monomials(ring, |m| {
            if m.0[4..].iter().any(|&e| e > 0) {
                None
            } else {
                Some(Monomial(m.0[..4].to_vec()))
            }
        });
        self.target.base().normal_form(&g)
    }

    pub fn on_monomial(&self, m: &DgMonomial) -> DgElement {
        let mut acc = self.target.unit();
        for i in m.odd_indices() {
            acc = self.target.mul(&acc, &self.odd_images[i]);
        }
        for (j, &e) in m.even.iter().enumerate() {
            for _ in 0..e {
                acc = self.target.mul(&acc, &self.even_images[j]);
            }
        }
        acc
    }

    pub fn apply(&self, e: &DgElement) -> DgElement {
        let mut out = DgElement::new();
        for (m, c) in e {
            let pc = self.pi(c);
            if pc.is_zero() {
                continue;
            }
            let img = self.on_monomial(m);
            self.target.add_into(&mut out, &img, &pc);
        }
        out
    }

    /// `d psi = psi d` on all source monomials of degree at most `max`.
    pub fn check_chain_map(&self, max: usize) -> std::result::Result<usize, DgMonomial> {
        let mut checked = 0;
        for m in 0..=max {
            for u in self.source.monomials(m) {
                let lhs = self.target.d(&self.on_monomial(&u));
                let rhs = self.apply(&self.source.d_monomial(&u));
                if lhs != rhs {
                    debug!(
                        "psi fails on {}: {} vs {}",
                        self.source.format_monomial(&u),
                        self.target.format_element(&lhs),
                        self.target.format_element(&rhs)
                    );
                    return Err(u);
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Pull back the functional dual to the target monomial `v`: the
    /// constant term of the coefficient of `v` in `psi(u)`, for each source
    /// monomial `u` of the same degree.
    pub fn pullback_dual(&self, v: &DgMonomial) -> Vec<(DgMonomial, Rational)> {
        self.source
            .monomials(v.degree())
            .into_iter()
            .filter_map(|u| {
                let c = self.on_monomial(&u).get(v).map(|c| c.constant_term())?;
                (!c.is_zero()).then_some((u, c))
            })
            .collect()
    }
}

/// Letter of the alphabet of `H*(R~)`: `alpha_1..alpha_8` in degree 1 and
/// `beta_3, beta_4` in degree 2.
pub type Letter = u8;

/// Algebra `k<letters>/(rules)` with length-two rewriting rules.
#[derive(Clone, Debug)]
pub struct SkewPresentedAlgebra {
    names: Vec<String>,
    degrees: Vec<usize>,
    rules: HashMap<(Letter, Letter), Vec<(Rational, Vec<Letter>)>>,
}

pub type WordElement = BTreeMap<Vec<Letter>, Rational>;

impl SkewPresentedAlgebra {
    pub fn new(names: Vec<String>, degrees: Vec<usize>) -> Self {
        SkewPresentedAlgebra {
            names,
            degrees,
            rules: HashMap::new(),
        }
    }

    pub fn add_rule(&mut self, a: Letter, b: Letter, rhs: Vec<(Rational, Vec<Letter>)>) {
        self.rules.insert((a, b), rhs);
    }

    pub fn letter_count(&self) -> usize {
        self.names.len()
    }

    pub fn word_degree(&self, w: &[Letter]) -> usize {
        w.iter().map(|&l| self.degrees[l as usize]).sum()
    }

    /// Length-lex comparison with letters ordered by index.
    fn lenlex_greater(a: &[Letter], b: &[Letter]) -> bool {
        (a.len(), a) > (b.len(), b)
    }

    /// Each rule rewrites to strictly smaller words of the same degree.
    pub fn rules_decrease(&self) -> bool {
        self.rules.iter().all(|(&(a, b), rhs)| {
            rhs.iter().all(|(_, w)| {
                Self::lenlex_greater(&[a, b], w) && self.word_degree(w) == self.word_degree(&[a, b])
            })
        })
    }

    pub fn reduce(&self, e: &WordElement) -> WordElement {
        let mut out = WordElement::new();
        let mut stack: Vec<(Vec<Letter>, Rational)> = e.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            let hit = (0..w.len().saturating_sub(1)).find_map(|i| self.rules.get(&(w[i], w[i + 1])).map(|r| (i, r)));
            match hit {
                None => {
                    let x = out.entry(w).or_insert_with(Rational::zero);
                    *x += c;
                }
                Some((i, rhs)) => {
                    for (k, sub) in rhs {
                        let mut nw = w[..i].to_vec();
                        nw.extend_from_slice(sub);
                        nw.extend_from_slice(&w[i + 2..]);
                        stack.push((nw, &c * k));
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn word(&self, w: &[Letter]) -> WordElement {
        self.reduce(&WordElement::from([(w.to_vec(), Rational::one())]))
    }

    pub fn mul(&self, a: &WordElement, b: &WordElement) -> WordElement {
        let mut raw = WordElement::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                *raw.entry(w).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        self.reduce(&raw)
    }

    /// Words of degree `m` avoiding every rule's left side.
    pub fn normal_words(&self, m: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_normal(m, &mut cur, &mut out);
        out
    }

    fn extend_normal(&self, left: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in 0..self.letter_count() as Letter {
            let d = self.degrees[l as usize];
            if d > left {
                continue;
            }
            if let Some(&last) = cur.last() {
                if self.rules.contains_key(&(last, l)) {
                    continue;
                }
            }
            cur.push(l);
            self.extend_normal(left - d, cur, out);
            cur.pop();
        }
    }

    /// Resolves every overlap `abc` with rules on `ab` and `bc`.
    pub fn is_confluent(&self) -> bool {
        let n = self.letter_count() as Letter;
        for a in 0..n {
            for b in 0..n {
                let Some(r1) = self.rules.get(&(a, b)) else { continue };
                for c in 0..n {
                    let Some(r2) = self.rules.get(&(b, c)) else { continue };
                    let left: WordElement = r1
                        .iter()
                        .map(|(k, w)| {
                            let mut w = w.clone();
                            w.push(c);
                            (w, k.clone())
                        })
                        .fold(WordElement::new(), |mut acc, (w, k)| {
                            *acc.entry(w).or_insert_with(Rational::zero) += k;
                            acc
                        });
                    let right: WordElement = r2
                        .iter()
                        .map(|(k, w)| {
                            let mut v = vec![a];
                            v.extend_from_slice(w);
                            (v, k.clone())
                        })
                        .fold(WordElement::new(), |mut acc, (w, k)| {
                            *acc.entry(w).or_insert_with(Rational::zero) += k;
                            acc
                        });
                    if self.reduce(&left) != self.reduce(&right) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn format(&self, e: &WordElement) -> String {
        if e.is_empty() {
            return "0".into();
        }
        e.iter()
            .map(|(w, c)| {
                let body = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&l| self.names[l as usize].clone()).collect::<Vec<_>>().join("*")
                };
                format!("{c}*{body}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub const BETA3: Letter = 8;
pub const BETA4: Letter = 9;

/// `a_i = alpha_(i+1)`.
pub fn alpha(i: usize) -> Letter {
    i as Letter
}

/// `H*(R~)`: `alpha_i` anticommute, `alpha_4^2 = 0`,
/// `alpha_8^2 = -alpha_3^2`, and the `beta`s are central.
pub fn hstar_rtilde() -> SkewPresentedAlgebra {
    let mut names: Vec<String> = (1..=8).map(|i| format!("a{i}")).collect();
    names.push("b3".into());
    names.push("b4".into());
    let mut degrees = vec![1; 8];
    degrees.extend([2, 2]);
    let mut h = SkewPresentedAlgebra::new(names, degrees);
    let neg = Rational::from_int(-1);
    for j in 0..8u8 {
        for i in 0..j {
            h.add_rule(j, i, vec![(neg.clone(), vec![i, j])]);
        }
    }
    h.add_rule(alpha(3), alpha(3), vec![]);
    h.add_rule(alpha(7), alpha(7), vec![(neg.clone(), vec![alpha(2), alpha(2)])]);
    for b in [BETA3, BETA4] {
        for i in 0..8u8 {
            h.add_rule(b, i, vec![(Rational::one(), vec![i, b])]);
        }
    }
    h.add_rule(BETA4, BETA3, vec![(Rational::one(), vec![BETA3, BETA4])]);
    h
}

/// Dual of a Tate monomial of degree 1 or 2 as an element of `H*(R~)`:
/// `t_i -> a_i`, `t_i t_j -> a_i a_j`, `s_1, s_2 -> a_1^2, a_2^2`,
/// `s_3, s_4 -> b_3, b_4`, `s_k -> -a_k^2` for `k = 5..8`.
pub fn dual_class(h: &SkewPresentedAlgebra, u: &DgMonomial) -> Result<WordElement> {
    let odd = u.odd_indices();
    let ev: Vec<usize> = (0..u.even.len()).filter(|&j| u.even[j] > 0).collect();
    match (odd.as_slice(), ev.as_slice(), u.degree()) {
        ([i], [], 1) => Ok(h.word(&[alpha(*i)])),
        ([i, j], [], 2) => Ok(h.word(&[alpha(*i), alpha(*j)])),
        ([], [j], 2) => Ok(match *j {
            0 | 1 => h.word(&[alpha(*j), alpha(*j)]),
            2 => h.word(&[BETA3]),
            3 => h.word(&[BETA4]),
            k => {
                let w = h.word(&[alpha(k), alpha(k)]);
                w.into_iter().map(|(x, c)| (x, -c)).collect()
            }
        }),
        _ => Err(Error::DegreeMismatch(format!("no dual class for degree {}", u.degree()))),
    }
}

/// Images of the degree-one and degree-two generators of `H*(R)` under
/// `pi^#`, labelled `g1..g4` and `d{j}` (relation index).
pub fn pi_sharp_generators(psi: &PsiLift, h: &SkewPresentedAlgebra) -> Result<Vec<(String, usize, WordElement)>> {
    let mut out = Vec::new();
    let mut image = |label: String, v: DgMonomial| -> Result<()> {
        let mut acc = WordElement::new();
        for (u, c) in psi.pullback_dual(&v) {
            for (w, x) in dual_class(h, &u)? {
                *acc.entry(w).or_insert_with(Rational::zero) += &c * &x;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.push((label, v.degree(), h.reduce(&acc)));
        Ok(())
    };
    for i in 0..psi.target.n_odd() {
        image(format!("g{}", i + 1), psi.target.odd_generator(i))?;
    }
    for (j, &rel) in psi.target_relations.iter().enumerate() {
        image(format!("d{}", rel + 1), psi.target.even_generator(j))?;
    }
    Ok(out)
}

/// Dimensions, degrees `0..=max`, of the subalgebra generated by `gens`.
pub fn subalgebra_dims(h: &SkewPresentedAlgebra, gens: &[(usize, WordElement)], max: usize) -> Vec<usize> {
    let mut index: HashMap<Vec<Letter>, usize> = HashMap::new();
    let mut layers: Vec<Vec<WordElement>> = vec![vec![h.word(&[])]];
    for n in 1..=max {
        let mut space = EchelonSpace::new(PivotPolicy::Min);
        let mut basis = Vec::new();
        for (d, g) in gens {
            if *d > n || g.is_empty() {
                continue;
            }
            for v in &layers[n - d] {
                let prod = h.mul(g, v);
                if prod.is_empty() {
                    continue;
                }
                let sv: SparseVec = prod
                    .iter()
                    .map(|(w, c)| {
                        let next = index.len();
                        (*index.entry(w.clone()).or_insert(next), c.clone())
                    })
                    .collect();
                if space.insert(sv) {
                    basis.push(prod);
                }
            }
        }
        debug!("image algebra degree {n}: dim {}", basis.len());
        layers.push(basis);
    }
    layers.iter().map(Vec::len).collect()
}

/// Coefficients of `(1 + t) / ((1 - t)^3 (1 - t^2)^3)`.
pub fn image_series_coefficients(max: usize) -> Vec<usize> {
    let mut c = vec![0i64; max + 1];
    c[0] = 1;
    if max >= 1 {
        c[1] = 1;
    }
    let divide = |c: &mut Vec<i64>, step: usize| {
        for n in step..c.len() {
            c[n] += c[n - step];
        }
    };
    for _ in 0..3 {
        divide(&mut c, 1);
        divide(&mut c, 2);
    }
    c.into_iter().map(|x| x as usize).collect()
}

pub fn image_pi_sharp_dims(p: u32, max: usize) -> Result<Vec<usize>> {
    let psi = PsiLift::new(p)?;
    let h = hstar_rtilde();
    let gens: Vec<(usize, WordElement)> = pi_sharp_generators(&psi, &h)?
        .into_iter()
        .map(|(_, d, e)| (d, e))
        .collect();
    Ok(subalgebra_dims(&h, &gens, max))
}

/// First two differentials of the resolution of `k` over `R`, realized as
/// rational matrices over the standard-monomial basis of `R`.
#[derive(Clone, Debug, Serialize)]
pub struct RResolutionStart {
    pub ranks: [usize; 3],
    pub vector_dims: [usize; 3],
    pub rank_d1: usize,
    pub rank_d2: usize,
    pub composite_zero: bool,
    pub minimal: bool,
}

fn realize(alg: &DgAlgebra, m: usize) -> Result<Matrix> {
    let base = alg.base();
    let basis = base.quotient_basis()?.to_vec();
    let src = alg.monomials(m);
    let tgt = alg.monomials(m - 1);
    let tindex: HashMap<&DgMonomial, usize> = tgt.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let dim = basis.len();
    let mut cols = Vec::new();
    for u in &src {
        let du = alg.d_monomial(u);
        for b in &basis {
            let mut col = vec![Rational::zero(); tgt.len() * dim];
            for (v, c) in &du {
                let coords = base.coordinates(&c.mul_term(b, &Rational::one()))?;
                let off = tindex[v] * dim;
                for (k, x) in coords.into_iter().enumerate() {
                    col[off + k] = x;
                }
            }
            cols.push(col);
        }
    }
    Ok(Matrix::from_columns(&cols, tgt.len() * dim))
}

pub fn r_resolution_start(p: u32) -> Result<RResolutionStart> {
    let (alg, _) = build_r_start(p)?;
    let dim = alg.base().dim()?;
    let d1 = realize(&alg, 1)?;
    let d2 = realize(&alg, 2)?;
    let ranks = [alg.rank(0), alg.rank(1), alg.rank(2)];
    Ok(RResolutionStart {
        ranks,
        vector_dims: [ranks[0] * dim, ranks[1] * dim, ranks[2] * dim],
        rank_d1: d1.rank(),
        rank_d2: d2.rank(),
        composite_zero: d1.mul(&d2).is_zero(),
        minimal: alg.is_minimal(),
    })
}

/// `{p, ranks, dsquared_checked_through, hstar_dims, pi_sharp_table,
/// image_dims}` with ranks and counts through `max_degree`.
pub fn tate_report(p: u32, max_degree: usize) -> Result<serde_json::Value> {
    let tate = build_tate(p)?;
    let dsq_through = max_degree.min(5);
    if let Err(u) = tate.check_d_squared(dsq_through) {
        return Err(Error::Invariant(format!("d^2 != 0 on {}", tate.format_monomial(&u))));
    }
    let h = hstar_rtilde();
    let psi = PsiLift::new(p)?;
    let table: Vec<serde_json::Value> = pi_sharp_generators(&psi, &h)?
        .iter()
        .map(|(l, d, e)| serde_json::json!({ "generator": l, "degree": d, "image": h.format(e) }))
        .collect();
    let gens: Vec<(usize, WordElement)> = pi_sharp_generators(&psi, &h)?
        .into_iter()
        .map(|(_, d, e)| (d, e))
        .collect();
    Ok(serde_json::json!({
        "p": p,
        "ranks": (0..=max_degree).map(tate_rank).collect::<Vec<_>>(),
        "dsquared_checked_through": dsq_through,
        "hstar_dims": (0..=max_degree).map(|m| h.normal_words(m).len()).collect::<Vec<_>>(),
        "pi_sharp_table": table,
        "image_dims": subalgebra_dims(&h, &gens, max_degree),
        "minimal": tate.is_minimal(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_formula_matches_binomials() {
        let want = [1, 8, 36, 120, 330, 792, 1716, 3432, 6435];
        for (m, w) in want.iter().enumerate() {
            assert_eq!(tate_rank(m), *w);
            assert_eq!(tate_rank(m), binomial(m + 7, 7));
        }
    }

    #[test]
    fn odd_signs() {
        assert_eq!(odd_product_sign(0b01, 0b10), Some(1));
        assert_eq!(odd_product_sign(0b10, 0b01), Some(-1));
        assert_eq!(odd_product_sign(0b11, 0b01), None);
        assert_eq!(odd_product_sign(0b110, 0b001), Some(1));
    }

    #[test]
    fn rewriting_system_is_well_formed() {
        let h = hstar_rtilde();
        assert!(h.rules_decrease());
        assert!(h.is_confluent());
        for m in 0..=5 {
            assert_eq!(h.normal_words(m).len(), tate_rank(m));
        }
        let a8 = h.word(&[alpha(7), alpha(7)]);
        assert_eq!(a8, h.word(&[alpha(2), alpha(2)]).into_iter().map(|(w, c)| (w, -c)).collect());
    }

    #[test]
    fn series_coefficients() {
        assert_eq!(&image_series_coefficients(3), &[1, 4, 12, 28]);
    }
}
