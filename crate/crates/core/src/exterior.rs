//! The q-exterior algebra: rewriting of xi-words to the strictly increasing
//! basis, epsilon tables, and the epsilon identities.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::braid::braid;
use crate::error::{Error, Result};
use crate::model::{Kind, Model};
use crate::qcoeff;
use crate::scalar::{Acc, Scalar};
use crate::tensor::{multi_indices, Tensor};

/// A word in the xi generators, as alphabet positions.
pub type Word = Vec<u8>;

/// Linear combination of strictly increasing words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtElement {
    terms: BTreeMap<Word, Scalar>,
}

impl ExtElement {
    pub fn zero() -> Self {
        ExtElement::default()
    }

    pub fn basis(word: Word) -> Self {
        debug_assert!(is_increasing(&word));
        let mut e = ExtElement::zero();
        e.terms.insert(word, Scalar::one());
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
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

    pub fn scale(&self, c: &Scalar) -> ExtElement {
        if c.is_zero() {
            return ExtElement::zero();
        }
        ExtElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

pub fn is_increasing(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] < p[1])
}

/// One application of the quadratic relations to the pair (a, b), or `None`
/// when the pair is already a basis word. An empty list means the pair
/// vanishes.
pub fn pair_rule(model: &Model, a: u8, b: u8) -> Option<Vec<(Scalar, [u8; 2])>> {
    if a < b {
        return None;
    }
    let i = model.label(a);
    let j = model.label(b);
    let pos = |l: i32| model.pos(l).expect("label in alphabet");
    if a == b {
        if i != 0 {
            return Some(Vec::new());
        }
        // xi^0 xi^0 = (q^{1/2} - q^{-1/2}) sum_{i>0} q^{1-i} xi^{-i} xi^i
        let c = Scalar::v_pow(1) - Scalar::v_pow(-1);
        let top = (model.n / 2) as i32;
        return Some(
            (1..=top)
                .map(|m| (&c * &Scalar::q_pow(1 - m), [pos(-m), pos(m)]))
                .collect(),
        );
    }
    if model.kind == Kind::So && j == -i {
        // xi^l xi^{-l} = -xi^{-l} xi^l + k sum_{i>l} q^{l+1-i} xi^{-i} xi^i
        let top = (model.n / 2) as i32;
        let k = Scalar::k();
        let mut out = vec![(Scalar::from_int(-1), [b, a])];
        for m in i + 1..=top {
            out.push((&k * &Scalar::q_pow(i + 1 - m), [pos(-m), pos(m)]));
        }
        return Some(out);
    }
    Some(vec![(-Scalar::q(), [b, a])])
}

/// Reducible positions of a word: squares first, then inversions, each in
/// left-to-right order.
fn reducible(w: &[u8]) -> (Vec<usize>, Vec<usize>) {
    let mut squares = Vec::new();
    let mut inversions = Vec::new();
    for p in 0..w.len().saturating_sub(1) {
        if w[p] == w[p + 1] {
            squares.push(p);
        } else if w[p] > w[p + 1] {
            inversions.push(p);
        }
    }
    (squares, inversions)
}

fn rewrite_at(model: &Model, w: &[u8], p: usize) -> Vec<(Scalar, Word)> {
    let rule = pair_rule(model, w[p], w[p + 1]).expect("reducible pair");
    rule.into_iter()
        .map(|(c, pair)| {
            let mut nw = w.to_vec();
            nw[p] = pair[0];
            nw[p + 1] = pair[1];
            (c, nw)
        })
        .collect()
}

/// Memoised canonical reduction: leftmost square first, else leftmost
/// inversion.
#[derive(Debug)]
pub struct Reducer {
    model: Model,
    memo: HashMap<Word, ExtElement>,
}

impl Reducer {
    pub fn new(model: &Model) -> Self {
        Reducer {
            model: model.clone(),
            memo: HashMap::new(),
        }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn reduce(&mut self, w: &[u8]) -> ExtElement {
        if let Some(e) = self.memo.get(w) {
            return e.clone();
        }
        let (sq, inv) = reducible(w);
        let out = match sq.first().or(inv.first()) {
            None => ExtElement::basis(w.to_vec()),
            Some(&p) => self.reduce_from(w, p),
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    /// Applies the rule at position `p` and reduces the results canonically.
    pub fn reduce_from(&mut self, w: &[u8], p: usize) -> ExtElement {
        let mut out = ExtElement::zero();
        for (c, nw) in rewrite_at(&self.model, w, p) {
            let r = self.reduce(&nw);
            for (b, v) in r.terms() {
                out.add_term(b.clone(), &(&c * v));
            }
        }
        out
    }

    /// Product of two elements.
    pub fn mul(&mut self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let w = [wa.as_slice(), wb.as_slice()].concat();
                let c = ca * cb;
                for (wr, cr) in self.reduce(&w).terms() {
                    out.add_term(wr.clone(), &(&c * cr));
                }
            }
        }
        out
    }
}

/// Canonical reduction of a single word.
pub fn reduce(model: &Model, w: &[u8]) -> ExtElement {
    Reducer::new(model).reduce(w)
}

/// Reduction where every step rewrites a uniformly chosen reducible pair of a
/// uniformly chosen pending word.
pub fn reduce_random<R: Rng>(model: &Model, w: &[u8], rng: &mut R) -> ExtElement {
    let mut pending: BTreeMap<Word, Scalar> = BTreeMap::new();
    pending.insert(w.to_vec(), Scalar::one());
    let mut out = ExtElement::zero();
    while !pending.is_empty() {
        let idx = rng.gen_range(0..pending.len());
        let key = pending.keys().nth(idx).cloned().expect("index in range");
        let c = pending.remove(&key).expect("present");
        let (sq, inv) = reducible(&key);
        let all: Vec<usize> = sq.into_iter().chain(inv).collect();
        if all.is_empty() {
            out.add_term(key, &c);
            continue;
        }
        let p = all[rng.gen_range(0..all.len())];
        for (d, nw) in rewrite_at(model, &key, p) {
            let v = &c * &d;
            let e = pending.entry(nw).or_insert_with(Scalar::zero);
            *e = &*e + &v;
        }
        pending.retain(|_, v| !v.is_zero());
    }
    out
}

/// Words of length 3 where rewriting first at two different positions leads to
/// different normal forms. Empty means the rewriting system is confluent
/// (every overlap of two quadratic rules lives in a word of length 3).
pub fn critical_pair_failures(model: &Model) -> Vec<Word> {
    let mut red = Reducer::new(model);
    let mut bad = Vec::new();
    for w in multi_indices(model.n, 3) {
        let (sq, inv) = reducible(&w);
        let all: Vec<usize> = sq.into_iter().chain(inv).collect();
        if all.len() < 2 {
            continue;
        }
        let first = red.reduce_from(&w, all[0]);
        for &p in &all[1..] {
            if red.reduce_from(&w, p) != first {
                bad.push(w.clone());
                break;
            }
        }
    }
    bad
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// gamma_N = 1.
    UnitTop,
    /// gamma_N of the tabulated epsilon: 1 for gl, q^{-1} for so(3), q^{-2}
    /// for so(4).
    Tabulated,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::UnitTop => "unit-top",
            Normalization::Tabulated => "paper",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit-top" => Ok(Normalization::UnitTop),
            "paper" => Ok(Normalization::Tabulated),
            _ => Err(Error::InvalidArgument(format!(
                "unknown normalization {:?}",
                s
            ))),
        }
    }
}

impl Normalization {
    pub fn gamma(self, model: &Model) -> Result<Scalar> {
        match self {
            Normalization::UnitTop => Ok(Scalar::one()),
            Normalization::Tabulated => qcoeff::gamma_tabulated(model),
        }
    }
}

/// The nonzero entries of epsilon^{i_1...i_N}, keyed by position words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    pub model: Model,
    pub normalization: Normalization,
    pub gamma: Scalar,
    entries: BTreeMap<Word, Scalar>,
}

impl EpsilonTable {
    pub fn from_entries(
        model: &Model,
        normalization: Normalization,
        gamma: Scalar,
        entries: BTreeMap<Word, Scalar>,
    ) -> Self {
        EpsilonTable {
            model: model.clone(),
            normalization,
            gamma,
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn get(&self, w: &[u8]) -> Scalar {
        self.entries.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The same tensor times `c`.
    pub fn scaled(&self, c: &Scalar) -> EpsilonTable {
        EpsilonTable {
            model: self.model.clone(),
            normalization: self.normalization,
            gamma: &self.gamma * c,
            entries: self
                .entries
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    /// epsilon as a tensor with N upper slots and no lower slots.
    pub fn to_tensor(&self) -> Tensor {
        let mut t = Tensor::zero(self.model.n, self.model.n, 0);
        for (w, v) in &self.entries {
            t.set(w.clone(), Vec::new(), v.clone());
        }
        t
    }

    /// Index labels of a position word.
    pub fn labels(&self, w: &[u8]) -> Vec<i32> {
        w.iter().map(|&p| self.model.label(p)).collect()
    }

    /// epsilon with its first `m` indices lowered by the metric:
    /// epsilon_{a_1..a_m}^{rest} = g_{a_1 b_1} ... g_{a_m b_m} epsilon^{b_1..b_m rest}.
    pub fn lowered(&self, w: &[u8], m: usize) -> Scalar {
        let b = braid(&self.model);
        let mut src = w.to_vec();
        let mut c = Scalar::one();
        for slot in src.iter_mut().take(m) {
            let o = self.model.opposite(*slot);
            c = c * b.g(*slot, o);
            *slot = o;
        }
        let e = self.get(&src);
        if e.is_zero() {
            return e;
        }
        c * e
    }
}

/// epsilon from the reduction of every N-word against the top word.
pub fn epsilon_table(model: &Model, normalization: Normalization) -> Result<EpsilonTable> {
    let gamma = normalization.gamma(model)?;
    let n = model.n;
    let top: Word = (0..n as u8).collect();
    let mut red = Reducer::new(model);
    let mut entries = BTreeMap::new();
    for w in multi_indices(n, n) {
        let r = red.reduce(&w);
        debug_assert!(r.terms().all(|(b, _)| *b == top));
        let c = r.coeff(&top);
        if !c.is_zero() {
            entries.insert(w, c * &gamma);
        }
    }
    Ok(EpsilonTable::from_entries(
        model,
        normalization,
        gamma,
        entries,
    ))
}

/// Number of inversions of a word.
fn inversions(w: &[u8]) -> usize {
    let mut n = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] > w[b] {
                n += 1;
            }
        }
    }
    n
}

/// The gl closed form (-q)^{l(I)} on permutations, zero otherwise.
pub fn epsilon_gl_closed(model: &Model) -> Result<EpsilonTable> {
    if model.is_so() {
        return Err(Error::Unsupported(
            "the closed epsilon form is for gl".into(),
        ));
    }
    let n = model.n;
    let mut entries = BTreeMap::new();
    for w in multi_indices(n, n) {
        let mut seen = vec![false; n];
        if w.iter()
            .all(|&p| !std::mem::replace(&mut seen[p as usize], true))
        {
            let l = inversions(&w) as u32;
            let v = Scalar::q_pow(l as i32)
                * Scalar::from_int(if l.is_multiple_of(2) { 1 } else { -1 });
            entries.insert(w, v);
        }
    }
    Ok(EpsilonTable::from_entries(
        model,
        Normalization::Tabulated,
        Scalar::one(),
        entries,
    ))
}

/// d_0 = (sum of squares of all entries)^{-1}.
pub fn d0_from_epsilon(table: &EpsilonTable) -> Result<Scalar> {
    let mut acc = Acc::new();
    for (_, v) in table.entries() {
        acc.add_product(v, v);
    }
    acc.finish().recip()
}

fn check_level(model: &Model, l: usize) -> Result<()> {
    if l > model.n {
        return Err(Error::InvalidArgument(format!(
            "level {} exceeds N = {}",
            l, model.n
        )));
    }
    Ok(())
}

fn d_l(table: &EpsilonTable, l: usize) -> Result<Scalar> {
    let d0 = d0_from_epsilon(table)?;
    qcoeff::dee(&table.model, l as u32, &d0)
}

fn finish(n: usize, l: usize, acc: BTreeMap<(Word, Word), Acc>) -> Tensor {
    let mut t = Tensor::zero(n, l, l);
    for ((i, j), a) in acc {
        t.set(i, j, a.finish());
    }
    t
}

/// First line of the projector formula:
/// P^{I}_{J} = d_l U_J epsilon^{K I} epsilon^{K J}, summed over K.
pub fn antisym_line1(table: &EpsilonTable, l: usize) -> Result<Tensor> {
    let model = &table.model;
    check_level(model, l)?;
    let n = model.n;
    let d = d_l(table, l)?;
    let u = braid(model).u.clone();
    let mut by_prefix: BTreeMap<&[u8], Vec<(&[u8], &Scalar)>> = BTreeMap::new();
    for (w, v) in table.entries() {
        by_prefix
            .entry(&w[..n - l])
            .or_default()
            .push((&w[n - l..], v));
    }
    let mut acc: BTreeMap<(Word, Word), Acc> = BTreeMap::new();
    for group in by_prefix.values() {
        for (i, a) in group {
            for (j, b) in group {
                let uj: Scalar = j.iter().map(|&p| u.get(&[p], &[p])).product();
                acc.entry((i.to_vec(), j.to_vec()))
                    .or_default()
                    .add_product3(a, b, &uj);
            }
        }
    }
    Ok(finish(n, l, acc).scale(&d))
}

/// Second line: P^{I}_{J} = (-1)^{l(N-1)} d_l epsilon^{J K} epsilon^{K I}.
pub fn antisym_line2(table: &EpsilonTable, l: usize) -> Result<Tensor> {
    let model = &table.model;
    check_level(model, l)?;
    let n = model.n;
    let mut d = d_l(table, l)?;
    if l * (n - 1) % 2 == 1 {
        d = -d;
    }
    let mut left: BTreeMap<&[u8], Vec<(&[u8], &Scalar)>> = BTreeMap::new();
    let mut right: BTreeMap<&[u8], Vec<(&[u8], &Scalar)>> = BTreeMap::new();
    for (w, v) in table.entries() {
        left.entry(&w[l..]).or_default().push((&w[..l], v));
        right.entry(&w[..n - l]).or_default().push((&w[n - l..], v));
    }
    let mut acc: BTreeMap<(Word, Word), Acc> = BTreeMap::new();
    for (k, js) in &left {
        let Some(is) = right.get(k) else { continue };
        for (j, a) in js {
            for (i, b) in is {
                acc.entry((i.to_vec(), j.to_vec()))
                    .or_default()
                    .add_product(a, b);
            }
        }
    }
    Ok(finish(n, l, acc).scale(&d))
}

/// The metric form (so only):
/// P^{I}_{J} = d_l epsilon_{J}^{K} epsilon_{K reversed}^{I}.
///
/// The lowered block of the first factor is contracted in reversed order,
/// epsilon_{j_1..j_l}^{K} = g_{j_1 a_1}..g_{j_l a_l} epsilon^{a_l..a_1 K}; the
/// second factor is lowered slot by slot.
pub fn antisym_metric_form(table: &EpsilonTable, l: usize) -> Result<Tensor> {
    let model = &table.model;
    if !model.is_so() {
        return Err(Error::Unsupported("the metric form needs so".into()));
    }
    check_level(model, l)?;
    let n = model.n;
    let d = d_l(table, l)?;
    let mut acc: BTreeMap<(Word, Word), Acc> = BTreeMap::new();
    let words_j = multi_indices(n, l);
    let words_k = multi_indices(n, n - l);
    for k in &words_k {
        let krev: Word = k.iter().rev().cloned().collect();
        let mut lefts = Vec::new();
        for j in &words_j {
            let jrev: Word = j.iter().rev().cloned().collect();
            let a = table.lowered(&[jrev.as_slice(), k.as_slice()].concat(), l);
            if !a.is_zero() {
                lefts.push((j, a));
            }
        }
        if lefts.is_empty() {
            continue;
        }
        for i in &words_j {
            let b = table.lowered(&[krev.as_slice(), i.as_slice()].concat(), n - l);
            if b.is_zero() {
                continue;
            }
            for (j, a) in &lefts {
                acc.entry((i.clone(), (*j).clone()))
                    .or_default()
                    .add_product(a, &b);
            }
        }
    }
    Ok(finish(n, l, acc).scale(&d))
}

/// The conditions of the vanishing property that a word fails (numbered 1-4).
pub fn vanishing_violations(model: &Model, w: &[u8]) -> Vec<u8> {
    let labels: Vec<i32> = w.iter().map(|&p| model.label(p)).collect();
    let mut out = Vec::new();
    let zeros = labels.iter().filter(|&&l| l == 0).count();
    if model.n % 2 == 1 && zeros % 2 == 0 {
        out.push(1);
    }
    let count = |l: i32| labels.iter().filter(|&&x| x == l).count();
    let top = (model.n / 2) as i32;
    if (1..=top).any(|l| count(l) != count(-l)) {
        out.push(2);
    }
    if (1..=top).any(|l| count(l).min(count(-l)) as i32 > top - l + 1) {
        out.push(3);
    }
    if labels.windows(2).any(|p| p[0] != 0 && p[0] == p[1]) {
        out.push(4);
    }
    out
}

/// Nonzero entries that break the vanishing property.
pub fn check_vanishing(table: &EpsilonTable) -> Result<Vec<(Word, Vec<u8>)>> {
    if !table.model.is_so() {
        return Err(Error::Unsupported(
            "the vanishing conditions are stated for so".into(),
        ));
    }
    Ok(table
        .entries()
        .filter_map(|(w, _)| {
            let v = vanishing_violations(&table.model, w);
            (!v.is_empty()).then(|| (w.clone(), v))
        })
        .collect())
}

/// A word where two sides of an identity differ.
pub type Mismatch = (Word, Scalar, Scalar);

/// Words on which either side can be nonzero: the support and its images
/// under `f`.
fn candidate_words(table: &EpsilonTable, f: impl Fn(&[u8]) -> Word) -> Vec<Word> {
    let mut out: Vec<Word> = table.entries().map(|(w, _)| w.clone()).collect();
    out.extend(table.entries().map(|(w, _)| f(w)));
    out.sort();
    out.dedup();
    out
}

/// q-cyclicity: epsilon^{i_1..i_N} = (-1)^{N-1} U^{i_1}_{i_1} epsilon^{i_2..i_N i_1}.
pub fn check_cyclic(table: &EpsilonTable) -> Vec<Mismatch> {
    let model = &table.model;
    let u = braid(model).u.clone();
    let sign = if model.n.is_multiple_of(2) { -1 } else { 1 };
    // both sides vanish unless the word or its left rotation is in the support
    let unrotate = |w: &[u8]| -> Word {
        let mut r = w.to_vec();
        r.rotate_right(1);
        r
    };
    let mut out = Vec::new();
    for w in candidate_words(table, unrotate) {
        let mut rot = w.clone();
        rot.rotate_left(1);
        let rhs = Scalar::from_int(sign) * u.get(&[w[0]], &[w[0]]) * table.get(&rot);
        let lhs = table.get(&w);
        if lhs != rhs {
            out.push((w, lhs, rhs));
        }
    }
    out
}

/// Lowering all indices slot by slot reverses epsilon:
/// g_{i_1 j_1}..g_{i_N j_N} epsilon^{j_1..j_N} = epsilon^{i_N..i_1}.
pub fn check_lowering(table: &EpsilonTable) -> Result<Vec<Mismatch>> {
    let model = &table.model;
    if !model.is_so() {
        return Err(Error::Unsupported("index lowering needs so".into()));
    }
    let b = braid(model);
    let opp = |w: &[u8]| -> Word { w.iter().map(|&p| model.opposite(p)).collect() };
    let rev = |w: &[u8]| -> Word { w.iter().rev().cloned().collect() };
    let mut words = candidate_words(table, opp);
    words.extend(candidate_words(table, rev));
    words.sort();
    words.dedup();
    let mut out = Vec::new();
    for w in words {
        let src = opp(&w);
        let mut lhs = table.get(&src);
        if !lhs.is_zero() {
            for &c in &w {
                lhs = lhs * b.g(c, model.opposite(c));
            }
        }
        let rhs = table.get(&rev(&w));
        if lhs != rhs {
            out.push((w, lhs, rhs));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn w(model: &Model, labels: &[i32]) -> Word {
        labels.iter().map(|&l| model.pos(l).unwrap()).collect()
    }

    #[test]
    fn increasing_word_is_fixed() {
        let m = Model::so(3);
        let word = w(&m, &[-1, 0, 1]);
        assert_eq!(reduce(&m, &word), ExtElement::basis(word));
    }

    #[test]
    fn gl_inversion() {
        let m = Model::gl(2);
        let r = reduce(&m, &[1, 0]);
        assert_eq!(r.coeff(&[0, 1]), -Scalar::q());
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn cube_of_xi_zero() {
        let m = Model::so(3);
        let r = reduce(&m, &w(&m, &[0, 0, 0]));
        let expect = Scalar::v_pow(1) - Scalar::v_pow(3);
        assert_eq!(r.coeff(&w(&m, &[-1, 0, 1])), expect);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn confluent_on_overlaps() {
        for m in [Model::gl(3), Model::so(3), Model::so(4), Model::so(5)] {
            assert!(critical_pair_failures(&m).is_empty(), "{}", m);
        }
    }

    #[test]
    fn random_strategy_agrees() {
        let m = Model::so(4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for word in multi_indices(4, 4).into_iter().step_by(11) {
            assert_eq!(reduce_random(&m, &word, &mut rng), reduce(&m, &word));
        }
    }

    #[test]
    fn so3_table_size() {
        let t = epsilon_table(&Model::so(3), Normalization::Tabulated).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.get(&[0, 1, 2]), Scalar::q_pow(-1));
    }

    #[test]
    fn gl_matches_closed_form() {
        for n in 2..=4 {
            let m = Model::gl(n);
            assert_eq!(
                epsilon_table(&m, Normalization::Tabulated).unwrap(),
                epsilon_gl_closed(&m).unwrap()
            );
        }
    }

    #[test]
    fn artificial_repeat_is_flagged() {
        let m = Model::so(3);
        assert_eq!(vanishing_violations(&m, &w(&m, &[1, 1, 0])), vec![2, 4]);
        assert!(vanishing_violations(&m, &w(&m, &[-1, 0, 1])).is_empty());
    }

    #[test]
    fn unit_top_scaling() {
        let m = Model::so(3);
        let p = epsilon_table(&m, Normalization::Tabulated).unwrap();
        let u = epsilon_table(&m, Normalization::UnitTop).unwrap();
        let g = qcoeff::gamma_tabulated(&m).unwrap();
        assert_eq!(u.scaled(&g).get(&[1, 1, 1]), p.get(&[1, 1, 1]));
        let ratio = d0_from_epsilon(&u).unwrap() / d0_from_epsilon(&p).unwrap();
        assert_eq!(ratio, &g * &g);
    }
}
