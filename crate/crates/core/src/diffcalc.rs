//! The differential calculus algebra generated by x^i, xi^i, Lambda^{+-1} and
//! partial_i: quadratic rules from the projectors, normal ordering, exterior
//! derivative, Hodge map, codifferential and the Laplacian identity.
//!
//! Normal words are laid out x-part, xi-part, Lambda power, partial-part. The
//! x-part is non-decreasing, the xi-part strictly increasing and the
//! partial-part non-increasing in alphabet position (the partial relations
//! are the x relations read backwards).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;

use crate::braid::{braid, Braid};
use crate::error::{Error, Result};
use crate::exterior::{self, EpsilonTable, Reducer, Word};
use crate::model::{Model, Sign};
use crate::qcoeff;
use crate::scalar::{ExtScalar, Scalar};
use crate::tensor::{multi_indices, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Species {
    Xx,
    XiXi,
    DD,
}

type Pair = (u8, u8);

/// Rewrite rules for one species of quadratic relations: every non-basis pair
/// as a combination of basis pairs.
#[derive(Clone, Debug)]
pub struct QuadraticRules {
    pub species: Species,
    n: usize,
    rules: HashMap<Pair, Vec<(Scalar, Pair)>>,
}

impl QuadraticRules {
    pub fn is_basis(&self, a: u8, b: u8) -> bool {
        match self.species {
            Species::Xx => a <= b,
            Species::XiXi => a < b,
            Species::DD => a >= b,
        }
    }

    pub fn rule(&self, a: u8, b: u8) -> Option<&[(Scalar, Pair)]> {
        self.rules.get(&(a, b)).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Non-basis pairs whose rule differs from the explicit xi relations.
    pub fn exterior_mismatches(&self, model: &Model) -> Vec<Pair> {
        let mut bad = Vec::new();
        for a in 0..self.n as u8 {
            for b in 0..self.n as u8 {
                if self.is_basis(a, b) {
                    continue;
                }
                let mine: BTreeMap<Pair, Scalar> = collect(self.rule(a, b).unwrap_or(&[]));
                let theirs = exterior::pair_rule(model, a, b).unwrap_or_default();
                let theirs: BTreeMap<Pair, Scalar> = collect(
                    &theirs
                        .into_iter()
                        .map(|(c, p)| (c, (p[0], p[1])))
                        .collect::<Vec<_>>(),
                );
                if mine != theirs {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

fn collect(terms: &[(Scalar, Pair)]) -> BTreeMap<Pair, Scalar> {
    let mut m: BTreeMap<Pair, Scalar> = BTreeMap::new();
    for (c, p) in terms {
        let e = m.entry(*p).or_insert_with(Scalar::zero);
        *e = &*e + c;
    }
    m.retain(|_, v| !v.is_zero());
    m
}

/// Order in which rewriting must decrease: lexicographic on positions, read
/// right to left for partial words.
fn smaller(species: Species, lhs: Pair, rhs: Pair) -> bool {
    match species {
        Species::DD => (rhs.1, rhs.0) < (lhs.1, lhs.0),
        _ => rhs < lhs,
    }
}

/// Solves the relation space of one species for its non-basis pairs.
///
/// x: P^{-ij}_{hk} x^h x^k = 0. xi: (1 - P^-)^{ij}_{hk} xi^h xi^k = 0.
/// partial: P^{-ij}_{hk} partial_j partial_i = 0 for every (h, k).
pub fn derive_quadratic_rules(model: &Model, species: Species) -> Result<QuadraticRules> {
    let b = braid(model);
    let n = model.n;
    let pm = b.p2(Sign::Minus);
    let pairs: Vec<Pair> = multi_indices(n, 2).iter().map(|w| (w[0], w[1])).collect();
    let col = |p: Pair| p.0 as usize * n + p.1 as usize;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (i, j) in &pairs {
        let mut row = vec![Scalar::zero(); n * n];
        for (h, k) in &pairs {
            let c = match species {
                Species::Xx => pm.get(&[*i, *j], &[*h, *k]),
                Species::XiXi => {
                    let id = if (i, j) == (h, k) {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    };
                    id - pm.get(&[*i, *j], &[*h, *k])
                }
                // row (i, j) plays the role of the free lower pair; the word is
                // partial_k partial_h for the summed upper pair (h, k)
                Species::DD => pm.get(&[*h, *k], &[*i, *j]),
            };
            if c.is_zero() {
                continue;
            }
            let w = match species {
                Species::DD => (*k, *h),
                _ => (*h, *k),
            };
            row[col(w)] = &row[col(w)] + &c;
        }
        if row.iter().any(|c| !c.is_zero()) {
            rows.push(row);
        }
    }
    let mut rules = QuadraticRules {
        species,
        n,
        rules: HashMap::new(),
    };
    let pivots: Vec<Pair> = pairs
        .iter()
        .cloned()
        .filter(|&(a, b)| !rules.is_basis(a, b))
        .collect();
    let mut used = vec![false; rows.len()];
    let mut pivot_row: Vec<(Pair, usize)> = Vec::new();
    for &p in &pivots {
        let c = col(p);
        let Some(r) = (0..rows.len()).find(|&r| !used[r] && !rows[r][c].is_zero()) else {
            return Err(Error::Elimination(format!(
                "{:?}: no relation solves for pair {:?} of {}",
                species,
                p,
                model.name()
            )));
        };
        used[r] = true;
        let inv = rows[r][c].recip()?;
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pr = rows[r].clone();
        for (r2, row) in rows.iter_mut().enumerate() {
            if r2 == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivot_row.push((p, r));
    }
    for (r, row) in rows.iter().enumerate() {
        if !used[r] && row.iter().any(|c| !c.is_zero()) {
            return Err(Error::Elimination(format!(
                "{:?}: a relation among basis pairs survives for {}",
                species,
                model.name()
            )));
        }
    }
    for (p, r) in pivot_row {
        let mut rhs = Vec::new();
        for &q in &pairs {
            if rules.is_basis(q.0, q.1) {
                let c = &rows[r][col(q)];
                if !c.is_zero() {
                    if !smaller(species, p, q) {
                        return Err(Error::Elimination(format!(
                            "{:?}: rule for {:?} produces the larger pair {:?}",
                            species, p, q
                        )));
                    }
                    rhs.push((-c, q));
                }
            } else if q != p && !rows[r][col(q)].is_zero() {
                return Err(Error::Elimination(format!(
                    "{:?}: pivot {:?} not isolated",
                    species, p
                )));
            }
        }
        rules.rules.insert(p, rhs);
    }
    Ok(rules)
}

/// A generator of the calculus algebra; `Lam(m)` is Lambda^m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X(u8),
    Xi(u8),
    Lam(i32),
    D(u8),
}

impl Letter {
    fn rank(self) -> u8 {
        match self {
            Letter::X(_) => 0,
            Letter::Xi(_) => 1,
            Letter::Lam(_) => 2,
            Letter::D(_) => 3,
        }
    }
}

/// A normal-ordered word x^I xi^J Lambda^m partial_K.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCWord {
    pub x: Vec<u8>,
    pub xi: Vec<u8>,
    pub lam: i32,
    pub d: Vec<u8>,
}

impl NCWord {
    pub fn one() -> Self {
        NCWord::default()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.x.iter().map(|&a| Letter::X(a)).collect();
        out.extend(self.xi.iter().map(|&a| Letter::Xi(a)));
        if self.lam != 0 {
            out.push(Letter::Lam(self.lam));
        }
        out.extend(self.d.iter().map(|&a| Letter::D(a)));
        out
    }

    fn last(&self) -> Option<Letter> {
        if let Some(&a) = self.d.last() {
            Some(Letter::D(a))
        } else if self.lam != 0 {
            Some(Letter::Lam(self.lam))
        } else if let Some(&a) = self.xi.last() {
            Some(Letter::Xi(a))
        } else {
            self.x.last().map(|&a| Letter::X(a))
        }
    }

    fn pop(&self) -> NCWord {
        let mut w = self.clone();
        if w.d.pop().is_none() {
            if w.lam != 0 {
                w.lam = 0;
            } else if w.xi.pop().is_none() {
                w.x.pop();
            }
        }
        w
    }

    /// Appends a letter that is already in order with the last one.
    fn push(&self, g: Letter) -> NCWord {
        let mut w = self.clone();
        match g {
            Letter::X(a) => w.x.push(a),
            Letter::Xi(a) => w.xi.push(a),
            Letter::Lam(m) => w.lam += m,
            Letter::D(a) => w.d.push(a),
        }
        w
    }

    pub fn render(&self, model: &Model) -> String {
        let mut parts = Vec::new();
        for &a in &self.x {
            parts.push(format!("x^({})", model.label(a)));
        }
        for &a in &self.xi {
            parts.push(format!("xi^({})", model.label(a)));
        }
        if self.lam != 0 {
            parts.push(format!("L^({})", self.lam));
        }
        for &a in &self.d {
            parts.push(format!("d_({})", model.label(a)));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Linear combination of normal words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCElement {
    terms: BTreeMap<NCWord, Scalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn one() -> Self {
        NCElement::word(NCWord::one())
    }

    pub fn word(w: NCWord) -> Self {
        let mut e = NCElement::zero();
        e.terms.insert(w, Scalar::one());
        e
    }

    pub fn scalar(c: Scalar) -> Self {
        NCElement::one().scale(&c)
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

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NCWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: NCWord, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NCElement) -> NCElement {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> NCElement {
        if c.is_zero() {
            return NCElement::zero();
        }
        NCElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// The xi-degree, if every word has the same one.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.xi.len());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn render(&self, model: &Model) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({}) {}", c, w.render(model)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An element a + s*b with s^2 = rho.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtNC {
    pub a: NCElement,
    pub b: NCElement,
    pub rho: Scalar,
}

impl ExtNC {
    pub fn from_base(a: NCElement, rho: &Scalar) -> Self {
        ExtNC {
            a,
            b: NCElement::zero(),
            rho: rho.clone(),
        }
    }

    pub fn coeff(&self, w: &NCWord) -> ExtScalar {
        ExtScalar::new(self.a.coeff(w), self.b.coeff(w), self.rho.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &ExtNC) -> ExtNC {
        ExtNC {
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
            rho: self.rho.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ExtNC {
        ExtNC {
            a: self.a.scale(c),
            b: self.b.scale(c),
            rho: self.rho.clone(),
        }
    }
}

type Terms = Vec<(Scalar, Vec<Letter>)>;

/// The rewriting engine for one model.
pub struct Calculus {
    pub model: Model,
    braid: Arc<Braid>,
    pub xx: QuadraticRules,
    pub xixi: QuadraticRules,
    pub dd: QuadraticRules,
    /// (xi^j, x^k) -> q^{-1} Rhat^{-1 jk}_{hi} x^h xi^i
    xi_x: HashMap<Pair, Terms>,
    /// (partial_i, x^j) -> delta + q Rhat^{jh}_{ik} x^k partial_h
    d_x: HashMap<Pair, Terms>,
    /// (partial_h, xi^i) -> q^{-1} Rhat^{-1 ik}_{hj} xi^j partial_k
    d_xi: HashMap<Pair, Terms>,
    memo: HashMap<(NCWord, Letter), NCElement>,
    hodge_cache: HashMap<(Word, bool), Vec<(Scalar, Word)>>,
}

impl Calculus {
    pub fn new(model: &Model) -> Result<Self> {
        let b = braid(model);
        let xx = derive_quadratic_rules(model, Species::Xx)?;
        let xixi = derive_quadratic_rules(model, Species::XiXi)?;
        let dd = derive_quadratic_rules(model, Species::DD)?;
        let q = Scalar::q();
        let qi = Scalar::q_pow(-1);
        let mut xi_x: HashMap<Pair, Terms> = HashMap::new();
        for (u, l, v) in b.rhat_inv.entries() {
            xi_x.entry((u[0], u[1]))
                .or_default()
                .push((&qi * v, vec![Letter::X(l[0]), Letter::Xi(l[1])]));
        }
        let mut d_x: HashMap<Pair, Terms> = HashMap::new();
        for i in 0..model.n as u8 {
            d_x.entry((i, i)).or_default().push((Scalar::one(), vec![]));
        }
        for (u, l, v) in b.rhat.entries() {
            // Rhat^{jh}_{ik}: u = (j, h), l = (i, k)
            d_x.entry((l[0], u[0]))
                .or_default()
                .push((&q * v, vec![Letter::X(l[1]), Letter::D(u[1])]));
        }
        let mut d_xi: HashMap<Pair, Terms> = HashMap::new();
        for (u, l, v) in b.rhat_inv.entries() {
            // Rhat^{-1 ik}_{hj}: u = (i, k), l = (h, j)
            d_xi.entry((l[0], u[0]))
                .or_default()
                .push((&qi * v, vec![Letter::Xi(l[1]), Letter::D(u[1])]));
        }
        Ok(Calculus {
            model: model.clone(),
            braid: b,
            xx,
            xixi,
            dd,
            xi_x,
            d_x,
            d_xi,
            memo: HashMap::new(),
            hodge_cache: HashMap::new(),
        })
    }

    fn quad(rules: &QuadraticRules, a: u8, b: u8, f: fn(u8) -> Letter) -> Option<Terms> {
        if rules.is_basis(a, b) {
            return None;
        }
        Some(
            rules
                .rule(a, b)
                .unwrap_or(&[])
                .iter()
                .map(|(c, (x, y))| (c.clone(), vec![f(*x), f(*y)]))
                .collect(),
        )
    }

    /// Rewrite for an adjacent pair (a, b), or `None` when the pair is in
    /// normal order. An empty letter list is the unit.
    pub fn pair(&self, a: Letter, b: Letter) -> Option<Terms> {
        use Letter::*;
        if a.rank() < b.rank() {
            return None;
        }
        match (a, b) {
            (X(i), X(j)) => Self::quad(&self.xx, i, j, X),
            (Xi(i), Xi(j)) => Self::quad(&self.xixi, i, j, Xi),
            (D(i), D(j)) => Self::quad(&self.dd, i, j, D),
            (Lam(m), Lam(k)) => {
                let l = if m + k == 0 { vec![] } else { vec![Lam(m + k)] };
                Some(vec![(Scalar::one(), l)])
            }
            (Xi(i), X(j)) => Some(self.xi_x.get(&(i, j)).cloned().unwrap_or_default()),
            (Lam(m), X(j)) => Some(vec![(Scalar::q_pow(-m), vec![X(j), Lam(m)])]),
            (Lam(m), Xi(j)) => Some(vec![(Scalar::one(), vec![Xi(j), Lam(m)])]),
            (D(i), X(j)) => Some(self.d_x.get(&(i, j)).cloned().unwrap_or_default()),
            (D(i), Xi(j)) => Some(self.d_xi.get(&(i, j)).cloned().unwrap_or_default()),
            (D(i), Lam(m)) => Some(vec![(Scalar::q_pow(-m), vec![Lam(m), D(i)])]),
            _ => unreachable!("rank order handled above"),
        }
    }

    /// Normal word times one letter.
    pub fn append(&mut self, w: &NCWord, g: Letter) -> NCElement {
        let key = (w.clone(), g);
        if let Some(e) = self.memo.get(&key) {
            return e.clone();
        }
        let out = match w.last().and_then(|h| self.pair(h, g)) {
            None => NCElement::word(w.push(g)),
            Some(terms) => {
                let base = w.pop();
                let mut acc = NCElement::zero();
                for (c, letters) in terms {
                    let mut cur = NCElement::word(base.clone());
                    for l in letters {
                        cur = self.mul_letter(&cur, l);
                    }
                    acc = acc.add(&cur.scale(&c));
                }
                acc
            }
        };
        self.memo.insert(key, out.clone());
        out
    }

    pub fn mul_letter(&mut self, e: &NCElement, g: Letter) -> NCElement {
        let mut out = NCElement::zero();
        for (w, c) in e.terms() {
            for (w2, c2) in self.append(w, g).terms() {
                out.add_term(w2.clone(), &(c * c2));
            }
        }
        out
    }

    pub fn mul(&mut self, a: &NCElement, b: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (w, c) in b.terms() {
            let mut cur = a.clone();
            for l in w.letters() {
                cur = self.mul_letter(&cur, l);
            }
            out = out.add(&cur.scale(c));
        }
        out
    }

    /// Normal form of an arbitrary letter sequence.
    pub fn reduce_letters(&mut self, letters: &[Letter]) -> NCElement {
        let mut cur = NCElement::one();
        for &l in letters {
            cur = self.mul_letter(&cur, l);
        }
        cur
    }

    pub fn gen(&mut self, l: Letter) -> NCElement {
        self.reduce_letters(&[l])
    }

    /// The element d = xi^i partial_i.
    pub fn d_element(&mut self) -> NCElement {
        let mut out = NCElement::zero();
        for i in 0..self.model.n as u8 {
            out = out.add(&self.reduce_letters(&[Letter::Xi(i), Letter::D(i)]));
        }
        out
    }

    /// partial . partial = g^{kl} partial_l partial_k (so only).
    pub fn box_element(&mut self) -> Result<NCElement> {
        let g = self.braid.metric()?.clone();
        let mut out = NCElement::zero();
        for (k, l, v) in g.entries() {
            let t = self.reduce_letters(&[Letter::D(l[0]), Letter::D(k[0])]);
            out = out.add(&t.scale(v));
        }
        Ok(out)
    }

    /// r^2 = g_{kl} x^k x^l (so only).
    pub fn r2_element(&mut self) -> Result<NCElement> {
        let g = self.braid.metric()?.clone();
        let mut out = NCElement::zero();
        for (k, l, v) in g.entries() {
            let t = self.reduce_letters(&[Letter::X(k[0]), Letter::X(l[0])]);
            out = out.add(&t.scale(v));
        }
        Ok(out)
    }

    fn homogeneous(omega: &NCElement) -> Result<usize> {
        if omega.is_zero() {
            return Ok(0);
        }
        omega.degree().ok_or_else(|| {
            Error::InvalidArgument("exterior derivative needs a homogeneous form".into())
        })
    }

    /// d omega = d.omega - (-1)^p omega.d.
    pub fn ext_derivative(&mut self, omega: &NCElement) -> Result<NCElement> {
        let p = Self::homogeneous(omega)?;
        let d = self.d_element();
        let left = self.mul(&d, omega);
        let right = self.mul(omega, &d);
        Ok(if p % 2 == 0 {
            left.sub(&right)
        } else {
            left.add(&right)
        })
    }

    /// Left multiplication by d.
    pub fn left_d(&mut self, omega: &NCElement) -> NCElement {
        let d = self.d_element();
        self.mul(&d, omega)
    }

    /// Hodge image of a basis xi-word, as xi-words with coefficients; the
    /// Lambda power is 2p - N.
    fn hodge_basis(&mut self, table: &EpsilonTable, j: &[u8]) -> Result<Vec<(Scalar, Word)>> {
        let key = (
            j.to_vec(),
            table.normalization == exterior::Normalization::Tabulated,
        );
        if let Some(v) = self.hodge_cache.get(&key) {
            return Ok(v.clone());
        }
        let n = self.model.n;
        let p = j.len();
        // q^{-N(p - N/2)} c_p
        let pre = Scalar::v_pow(-(n as i32) * (2 * p as i32 - n as i32))
            * qcoeff::hodge_c(&self.model, p as u32)?;
        let mut red = Reducer::new(&self.model);
        let mut acc = exterior::ExtElement::zero();
        for k in multi_indices(n, n - p) {
            let krev: Word = k.iter().rev().cloned().collect();
            let e = table.lowered(&[krev.as_slice(), j].concat(), n - p);
            if e.is_zero() {
                continue;
            }
            for (w, c) in red.reduce(&k).terms() {
                acc.add_term(w.clone(), &(c * &e));
            }
        }
        let out: Vec<(Scalar, Word)> = acc.terms().map(|(w, c)| (c * &pre, w.clone())).collect();
        self.hodge_cache.insert(key, out.clone());
        Ok(out)
    }

    /// The Hodge map with the given epsilon, extended H-bilinearly:
    /// *(x^I xi^J L^m d_K) = x^I *(xi^J) L^m d_K.
    pub fn hodge(&mut self, table: &EpsilonTable, omega: &NCElement) -> Result<NCElement> {
        if !self.model.is_so() {
            return Err(Error::Unsupported(
                "the Hodge map needs the so metric".into(),
            ));
        }
        let n = self.model.n as i32;
        let mut out = NCElement::zero();
        for (w, c) in omega.terms() {
            let p = w.xi.len() as i32;
            for (h, word) in self.hodge_basis(table, &w.xi)? {
                let nw = NCWord {
                    x: w.x.clone(),
                    xi: word,
                    lam: w.lam + 2 * p - n,
                    d: w.d.clone(),
                };
                out.add_term(nw, &(c * &h));
            }
        }
        Ok(out)
    }

    /// Hodge map with epsilon scaled by s, s^2 = rho.
    pub fn hodge_ext(&mut self, table: &EpsilonTable, omega: &ExtNC) -> Result<ExtNC> {
        let ha = self.hodge(table, &omega.a)?;
        let hb = self.hodge(table, &omega.b)?;
        Ok(ExtNC {
            a: hb.scale(&omega.rho),
            b: ha,
            rho: omega.rho.clone(),
        })
    }

    /// delta = - * d *, with d the graded commutator.
    pub fn codifferential(&mut self, table: &EpsilonTable, omega: &NCElement) -> Result<NCElement> {
        let s = self.hodge(table, omega)?;
        let ds = self.ext_derivative(&s)?;
        Ok(self.hodge(table, &ds)?.scale(&Scalar::from_int(-1)))
    }

    /// - * (d . (* omega)), d acting by left multiplication.
    fn codiff_left(&mut self, table: &EpsilonTable, omega: &NCElement) -> Result<NCElement> {
        let s = self.hodge(table, omega)?;
        let ds = self.left_d(&s);
        Ok(self.hodge(table, &ds)?.scale(&Scalar::from_int(-1)))
    }

    fn codiff_left_ext(&mut self, table: &EpsilonTable, omega: &ExtNC) -> Result<ExtNC> {
        let s = self.hodge_ext(table, omega)?;
        let ds = ExtNC {
            a: self.left_d(&s.a),
            b: self.left_d(&s.b),
            rho: s.rho.clone(),
        };
        Ok(self.hodge_ext(table, &ds)?.scale(&Scalar::from_int(-1)))
    }

    /// (d delta + delta d) omega with d acting by left multiplication.
    pub fn laplacian(&mut self, table: &EpsilonTable, omega: &NCElement) -> Result<NCElement> {
        let a = self.codiff_left(table, omega)?;
        let a = self.left_d(&a);
        let dw = self.left_d(omega);
        let b = self.codiff_left(table, &dw)?;
        Ok(a.add(&b))
    }

    pub fn laplacian_ext(&mut self, table: &EpsilonTable, omega: &ExtNC) -> Result<ExtNC> {
        let a = self.codiff_left_ext(table, omega)?;
        let a = ExtNC {
            a: self.left_d(&a.a),
            b: self.left_d(&a.b),
            rho: a.rho.clone(),
        };
        let dw = ExtNC {
            a: self.left_d(&omega.a),
            b: self.left_d(&omega.b),
            rho: omega.rho.clone(),
        };
        let b = self.codiff_left_ext(table, &dw)?;
        Ok(a.add(&b))
    }

    /// -q^2 (partial . partial) Lambda^2 omega.
    pub fn laplacian_rhs(&mut self, omega: &NCElement) -> Result<NCElement> {
        let bx = self.box_element()?;
        let bl = self.mul_letter(&bx, Letter::Lam(2));
        Ok(self.mul(&bl, omega).scale(&-Scalar::q_pow(2)))
    }

    /// The realisation L = 1 + q k x^i partial_i (+ q^N k^2/(1+q^{N-2})^2 r^2 box for so).
    pub fn lambda_minus_two(&mut self) -> Result<NCElement> {
        let n = self.model.n as i32;
        let k = Scalar::k();
        let mut xd = NCElement::zero();
        for i in 0..self.model.n as u8 {
            xd = xd.add(&self.reduce_letters(&[Letter::X(i), Letter::D(i)]));
        }
        let mut out = NCElement::one().add(&xd.scale(&(Scalar::q() * &k)));
        if self.model.is_so() {
            let r2 = self.r2_element()?;
            let bx = self.box_element()?;
            let rb = self.mul(&r2, &bx);
            let den = Scalar::one() + Scalar::q_pow(n - 2);
            let c = Scalar::q_pow(n) * &k * &k / (&den * &den);
            out = out.add(&rb.scale(&c));
        }
        Ok(out)
    }
}

/// rho = d_0(table)/d_0(canonical): *^2 = rho^{-1} with this table.
pub fn rho(table: &EpsilonTable) -> Result<Scalar> {
    let d0 = exterior::d0_from_epsilon(table)?;
    Ok(d0 / qcoeff::d0_canonical(&table.model)?)
}

/// Randomised reduction of a letter sequence: each step rewrites a uniformly
/// chosen reducible adjacent pair of a uniformly chosen pending sequence.
pub fn reduce_random<R: Rng>(calc: &Calculus, letters: &[Letter], rng: &mut R) -> NCElement {
    let mut pending: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
    pending.insert(letters.to_vec(), Scalar::one());
    let mut out = NCElement::zero();
    while !pending.is_empty() {
        let idx = rng.gen_range(0..pending.len());
        let key = pending.keys().nth(idx).cloned().expect("index in range");
        let c = pending.remove(&key).expect("present");
        let spots: Vec<(usize, Terms)> = key
            .windows(2)
            .enumerate()
            .filter_map(|(p, w)| calc.pair(w[0], w[1]).map(|t| (p, t)))
            .collect();
        if spots.is_empty() {
            let mut w = NCWord::one();
            for l in key {
                w = w.push(l);
            }
            out.add_term(w, &c);
            continue;
        }
        let (p, terms) = &spots[rng.gen_range(0..spots.len())];
        for (d, repl) in terms {
            let mut nk = key[..*p].to_vec();
            nk.extend(repl.iter().cloned());
            nk.extend_from_slice(&key[p + 2..]);
            let e = pending.entry(nk).or_insert_with(Scalar::zero);
            *e = &*e + &(&c * d);
        }
        pending.retain(|_, v| !v.is_zero());
    }
    out
}

/// Random letter sequence of length 1..=max_len.
pub fn random_letters<R: Rng>(model: &Model, max_len: usize, rng: &mut R) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    let n = model.n as u8;
    (0..len)
        .map(|_| match rng.gen_range(0..4) {
            0 => Letter::X(rng.gen_range(0..n)),
            1 => Letter::Xi(rng.gen_range(0..n)),
            2 => Letter::Lam(if rng.gen_bool(0.5) { 1 } else { -1 }),
            _ => Letter::D(rng.gen_range(0..n)),
        })
        .collect()
}

/// Normal x-monomials of degree <= `deg`.
pub fn x_monomials(model: &Model, deg: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for l in 0..=deg {
        for w in multi_indices(model.n, l) {
            if w.windows(2).all(|p| p[0] <= p[1]) {
                out.push(w);
            }
        }
    }
    out
}

/// All strictly increasing xi-words.
pub fn xi_basis(model: &Model) -> Vec<Word> {
    let mut out = Vec::new();
    for p in 0..=model.n {
        for w in multi_indices(model.n, p) {
            if exterior::is_increasing(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// The matrix of a species' rules, for display.
pub fn rules_tensor(rules: &QuadraticRules) -> Tensor {
    let mut t = Tensor::zero(rules.n, 2, 2);
    for (&(a, b), rhs) in &rules.rules {
        for (c, (x, y)) in rhs {
            t.add_to(vec![a, b], vec![*x, *y], c);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{epsilon_table, Normalization};

    #[test]
    fn gl2_coordinate_rule() {
        let r = derive_quadratic_rules(&Model::gl(2), Species::Xx).unwrap();
        assert_eq!(r.rule(1, 0).unwrap(), &[(Scalar::q_pow(-1), (0, 1))]);
        let d = derive_quadratic_rules(&Model::gl(2), Species::DD).unwrap();
        assert_eq!(d.rule(0, 1).unwrap(), &[(Scalar::q_pow(-1), (1, 0))]);
    }

    #[test]
    fn xi_rules_match_explicit_relations() {
        for m in [Model::gl(3), Model::so(3), Model::so(4)] {
            let r = derive_quadratic_rules(&m, Species::XiXi).unwrap();
            assert!(r.exterior_mismatches(&m).is_empty(), "{}", m);
        }
    }

    #[test]
    fn dilatation_moves_past_x() {
        let mut c = Calculus::new(&Model::so(3)).unwrap();
        let e = c.reduce_letters(&[Letter::Lam(1), Letter::X(0)]);
        let w = NCWord {
            x: vec![0],
            lam: 1,
            ..NCWord::default()
        };
        assert_eq!(e, NCElement::word(w).scale(&Scalar::q_pow(-1)));
    }

    #[test]
    fn x_xi_gl2() {
        let mut c = Calculus::new(&Model::gl(2)).unwrap();
        // x^1 xi^1 = q^2 xi^1 x^1, so xi^1 x^1 = q^{-2} x^1 xi^1
        let e = c.reduce_letters(&[Letter::Xi(0), Letter::X(0)]);
        let w = NCWord {
            x: vec![0],
            xi: vec![0],
            ..NCWord::default()
        };
        assert_eq!(e, NCElement::word(w).scale(&Scalar::q_pow(-2)));
    }

    #[test]
    fn d_of_coordinate() {
        let mut c = Calculus::new(&Model::so(3)).unwrap();
        for j in 0..3 {
            let x = c.gen(Letter::X(j));
            assert_eq!(c.ext_derivative(&x).unwrap(), c.gen(Letter::Xi(j)));
        }
        assert!(c.ext_derivative(&NCElement::one()).unwrap().is_zero());
    }

    #[test]
    fn d_squared_element_vanishes() {
        let mut c = Calculus::new(&Model::so(3)).unwrap();
        let d = c.d_element();
        assert!(c.mul(&d, &d).is_zero());
    }

    #[test]
    fn hodge_squares_to_rho_inverse() {
        let m = Model::so(3);
        let t = epsilon_table(&m, Normalization::Tabulated).unwrap();
        let r = rho(&t).unwrap().recip().unwrap();
        let mut c = Calculus::new(&m).unwrap();
        for w in xi_basis(&m) {
            let e = NCElement::word(NCWord {
                xi: w,
                ..NCWord::default()
            });
            let h = c.hodge(&t, &e).unwrap();
            let hh = c.hodge(&t, &h).unwrap();
            assert_eq!(hh, e.scale(&r));
        }
    }
}
