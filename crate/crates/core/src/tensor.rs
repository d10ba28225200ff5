//! Sparse multi-index arrays over `Scalar`.
//!
//! A tensor with `up` upper and `low` lower slots is stored as a map from the
//! upper multi-index to a row map from lower multi-index to value. Indices are
//! alphabet positions, so iteration order is lexicographic in the alphabet.
//! Zero entries are never stored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Acc, Scalar};

pub type Multi = Vec<u8>;
type Row = BTreeMap<Multi, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    up: usize,
    low: usize,
    rows: BTreeMap<Multi, Row>,
}

/// All multi-indices of length `len` over `0..dim`, in lexicographic order.
pub fn multi_indices(dim: usize, len: usize) -> Vec<Multi> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * dim);
        for m in &out {
            for d in 0..dim as u8 {
                let mut m2 = m.clone();
                m2.push(d);
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

impl Tensor {
    pub fn zero(dim: usize, up: usize, low: usize) -> Self {
        Tensor {
            dim,
            up,
            low,
            rows: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize, arity: usize) -> Self {
        let mut t = Tensor::zero(dim, arity, arity);
        for m in multi_indices(dim, arity) {
            t.set(m.clone(), m, Scalar::one());
        }
        t
    }

    /// Diagonal N x N matrix.
    pub fn diagonal(values: &[Scalar]) -> Self {
        let mut t = Tensor::zero(values.len(), 1, 1);
        for (i, v) in values.iter().enumerate() {
            t.set(vec![i as u8], vec![i as u8], v.clone());
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn up_arity(&self) -> usize {
        self.up
    }

    pub fn low_arity(&self) -> usize {
        self.low
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(|r| r.len()).sum()
    }

    pub fn get(&self, up: &[u8], low: &[u8]) -> Scalar {
        self.rows
            .get(up)
            .and_then(|r| r.get(low))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn row(&self, up: &[u8]) -> Option<&BTreeMap<Multi, Scalar>> {
        self.rows.get(up)
    }

    pub fn set(&mut self, up: Multi, low: Multi, value: Scalar) {
        debug_assert_eq!(up.len(), self.up);
        debug_assert_eq!(low.len(), self.low);
        if value.is_zero() {
            if let Some(r) = self.rows.get_mut(&up) {
                r.remove(&low);
                if r.is_empty() {
                    self.rows.remove(&up);
                }
            }
            return;
        }
        self.rows.entry(up).or_default().insert(low, value);
    }

    pub fn add_to(&mut self, up: Multi, low: Multi, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let row = self.rows.entry(up.clone()).or_default();
        match row.get_mut(&low) {
            Some(v) => {
                let s = &*v + value;
                if s.is_zero() {
                    row.remove(&low);
                    if row.is_empty() {
                        self.rows.remove(&up);
                    }
                } else {
                    *v = s;
                }
            }
            None => {
                row.insert(low, value.clone());
            }
        }
    }

    /// Entries in lexicographic (upper, lower) order.
    pub fn entries(&self) -> impl Iterator<Item = (&Multi, &Multi, &Scalar)> {
        self.rows
            .iter()
            .flat_map(|(u, r)| r.iter().map(move |(l, v)| (u, l, v)))
    }

    fn same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim || self.up != other.up || self.low != other.low {
            return Err(Error::Arity(format!(
                "shapes ({},{},{}) and ({},{},{})",
                self.dim, self.up, self.low, other.dim, other.up, other.low
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (u, l, v) in other.entries() {
            out.add_to(u.clone(), l.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(self.dim, self.up, self.low);
        }
        let mut out = self.clone();
        for row in out.rows.values_mut() {
            for v in row.values_mut() {
                *v = &*v * c;
            }
        }
        out
    }

    /// Matrix product: contracts the lower slots of `self` with the upper slots
    /// of `other`.
    pub fn compose(&self, other: &Tensor) -> Result<Tensor> {
        if self.low != other.up || self.dim != other.dim {
            return Err(Error::Arity(format!(
                "compose: lower arity {} against upper arity {}",
                self.low, other.up
            )));
        }
        let mut out = Tensor::zero(self.dim, self.up, other.low);
        for (u, row) in &self.rows {
            let mut acc: BTreeMap<&Multi, Acc> = BTreeMap::new();
            for (k, a) in row {
                if let Some(orow) = other.rows.get(k) {
                    for (j, b) in orow {
                        acc.entry(j).or_default().add_product(a, b);
                    }
                }
            }
            let r: Row = acc
                .into_iter()
                .map(|(j, s)| (j.clone(), s.finish()))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if !r.is_empty() {
                out.rows.insert(u.clone(), r);
            }
        }
        Ok(out)
    }

    /// Tensor (Kronecker) product; slots of `self` come first.
    pub fn kron(&self, other: &Tensor) -> Result<Tensor> {
        if self.dim != other.dim {
            return Err(Error::Arity("kron: dimension mismatch".into()));
        }
        let mut out = Tensor::zero(self.dim, self.up + other.up, self.low + other.low);
        for (u1, l1, a) in self.entries() {
            for (u2, l2, b) in other.entries() {
                let u = [u1.as_slice(), u2.as_slice()].concat();
                let l = [l1.as_slice(), l2.as_slice()].concat();
                out.set(u, l, a * b);
            }
        }
        Ok(out)
    }

    /// Acts with a square `m` on slots `slot..slot+r` (1-based) of an `total`-slot
    /// space, identity elsewhere.
    pub fn embed_at(&self, slot: usize, total: usize) -> Result<Tensor> {
        let r = self.up;
        if self.low != r {
            return Err(Error::Arity("embed_at needs a square tensor".into()));
        }
        if slot < 1 || slot + r - 1 > total {
            return Err(Error::InvalidArgument(format!(
                "embed_at: slots {}..{} outside 1..{}",
                slot,
                slot + r - 1,
                total
            )));
        }
        let pre = multi_indices(self.dim, slot - 1);
        let post = multi_indices(self.dim, total + 1 - slot - r);
        let mut out = Tensor::zero(self.dim, total, total);
        for a in &pre {
            for b in &post {
                for (u, l, v) in self.entries() {
                    let uu = [a.as_slice(), u.as_slice(), b.as_slice()].concat();
                    let ll = [a.as_slice(), l.as_slice(), b.as_slice()].concat();
                    out.set(uu, ll, v.clone());
                }
            }
        }
        Ok(out)
    }

    /// tr_slot(W_slot A) for a square tensor A; `slot` is 1-based and the
    /// optional weight is an N x N matrix acting on that slot from the left.
    pub fn partial_trace(&self, slot: usize, weight: Option<&Tensor>) -> Result<Tensor> {
        if self.up != self.low || slot < 1 || slot > self.up {
            return Err(Error::Arity(format!(
                "partial_trace: slot {} of {}",
                slot, self.up
            )));
        }
        let s = slot - 1;
        let mut out = Tensor::zero(self.dim, self.up - 1, self.low - 1);
        for (u, l, v) in self.entries() {
            let k = u[s];
            let i = l[s];
            let w = match weight {
                Some(w) => w.get(&[i], &[k]),
                None if i == k => Scalar::one(),
                None => Scalar::zero(),
            };
            if w.is_zero() {
                continue;
            }
            let mut uu = u.clone();
            uu.remove(s);
            let mut ll = l.clone();
            ll.remove(s);
            out.add_to(uu, ll, &(v * &w));
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Scalar> {
        if self.up != self.low {
            return Err(Error::Arity("trace of a non-square tensor".into()));
        }
        Ok(self
            .rows
            .iter()
            .filter_map(|(u, r)| r.get(u).cloned())
            .sum())
    }

    pub fn transpose(&self) -> Tensor {
        let mut out = Tensor::zero(self.dim, self.low, self.up);
        for (u, l, v) in self.entries() {
            out.set(l.clone(), u.clone(), v.clone());
        }
        out
    }

    /// B^{..i..} = sum_j M^i_j A^{..j..} on upper slot `slot` (1-based).
    pub fn map_upper_slot(&self, slot: usize, m: &Tensor) -> Result<Tensor> {
        if slot < 1 || slot > self.up || m.up != 1 || m.low != 1 {
            return Err(Error::Arity("map_upper_slot".into()));
        }
        let s = slot - 1;
        let mt = m.transpose();
        let mut out = Tensor::zero(self.dim, self.up, self.low);
        for (u, l, v) in self.entries() {
            if let Some(col) = mt.rows.get(&vec![u[s]]) {
                for (i, c) in col {
                    let mut uu = u.clone();
                    uu[s] = i[0];
                    out.add_to(uu, l.clone(), &(c * v));
                }
            }
        }
        Ok(out)
    }

    /// B_{..i..} = sum_j A_{..j..} M^j_i on lower slot `slot` (1-based).
    pub fn map_lower_slot(&self, slot: usize, m: &Tensor) -> Result<Tensor> {
        if slot < 1 || slot > self.low || m.up != 1 || m.low != 1 {
            return Err(Error::Arity("map_lower_slot".into()));
        }
        let s = slot - 1;
        let mut out = Tensor::zero(self.dim, self.up, self.low);
        for (u, l, v) in self.entries() {
            if let Some(row) = m.rows.get(&vec![l[s]]) {
                for (i, c) in row {
                    let mut ll = l.clone();
                    ll[s] = i[0];
                    out.add_to(u.clone(), ll, &(v * c));
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every entry; zero results are dropped.
    pub fn map_values<E>(
        &self,
        mut f: impl FnMut(&Scalar) -> std::result::Result<Scalar, E>,
    ) -> std::result::Result<Tensor, E> {
        let mut out = Tensor::zero(self.dim, self.up, self.low);
        for (u, l, v) in self.entries() {
            out.set(u.clone(), l.clone(), f(v)?);
        }
        Ok(out)
    }

    /// First entry where the two tensors differ, with both values.
    pub fn first_difference(&self, other: &Tensor) -> Option<(Multi, Multi, Scalar, Scalar)> {
        if self.up != other.up || self.low != other.low {
            return Some((vec![], vec![], Scalar::zero(), Scalar::zero()));
        }
        for (u, l, v) in self.entries() {
            let w = other.get(u, l);
            if *v != w {
                return Some((u.clone(), l.clone(), v.clone(), w));
            }
        }
        for (u, l, w) in other.entries() {
            if self.get(u, l).is_zero() {
                return Some((u.clone(), l.clone(), Scalar::zero(), w.clone()));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> Scalar {
        Scalar::q_pow(e)
    }

    fn sample() -> Tensor {
        let mut t = Tensor::zero(2, 2, 2);
        t.set(vec![0, 1], vec![1, 0], q(1));
        t.set(vec![0, 1], vec![0, 1], Scalar::k());
        t.set(vec![1, 1], vec![1, 1], q(-2));
        t
    }

    #[test]
    fn identity_is_neutral() {
        let a = sample();
        let id = Tensor::identity(2, 2);
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&id).unwrap(), a);
    }

    #[test]
    fn embed_identity() {
        let id = Tensor::identity(3, 2);
        assert_eq!(id.embed_at(2, 4).unwrap(), Tensor::identity(3, 4));
    }

    #[test]
    fn trace_of_identity() {
        let id = Tensor::identity(3, 2);
        let t = id.partial_trace(2, None).unwrap();
        assert_eq!(t, Tensor::identity(3, 1).scale(&Scalar::from_int(3)));
    }

    #[test]
    fn distant_embeddings_commute() {
        let a = sample().embed_at(1, 4).unwrap();
        let b = sample().transpose().embed_at(3, 4).unwrap();
        assert_eq!(a.compose(&b).unwrap(), b.compose(&a).unwrap());
    }

    #[test]
    fn double_transpose() {
        assert_eq!(sample().transpose().transpose(), sample());
    }

    #[test]
    fn slot_maps_match_composition() {
        let m = Tensor::diagonal(&[q(1), q(3)]);
        let a = sample();
        let left = m
            .kron(&Tensor::identity(2, 1))
            .unwrap()
            .compose(&a)
            .unwrap();
        assert_eq!(a.map_upper_slot(1, &m).unwrap(), left);
        let right = a
            .compose(&Tensor::identity(2, 1).kron(&m).unwrap())
            .unwrap();
        assert_eq!(a.map_lower_slot(2, &m).unwrap(), right);
    }

    #[test]
    fn no_zero_entries_after_cancellation() {
        let a = sample();
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.nnz(), 0);
    }

    #[test]
    fn arity_errors() {
        let a = Tensor::zero(2, 2, 1);
        assert!(a.compose(&a).is_err());
        assert!(a.trace().is_err());
    }
}
