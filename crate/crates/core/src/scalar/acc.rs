//! Lazy sums of products of scalars.
//!
//! Terms are kept unreduced and grouped by denominator; reduction happens once
//! in `finish`. Sums of many products that share a handful of denominators
//! (the common case in tensor contractions) then need only a few gcds.

use std::collections::HashMap;

use super::poly::Poly;
use super::Scalar;

#[derive(Default, Clone, Debug)]
pub struct Acc {
    groups: HashMap<Poly, (Poly, i32)>,
}

impl Acc {
    pub fn new() -> Self {
        Acc::default()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    fn insert(&mut self, den: Poly, num: Poly, shift: i32) {
        if num.is_zero() {
            return;
        }
        match self.groups.get_mut(&den) {
            Some((n, s)) => {
                let m = (*s).min(shift);
                let a = n.shift_up((*s - m) as usize);
                let b = num.shift_up((shift - m) as usize);
                *n = a.add(&b);
                *s = m;
            }
            None => {
                self.groups.insert(den, (num, shift));
            }
        }
    }

    pub fn add(&mut self, a: &Scalar) {
        let (n, s) = a.numerator();
        self.insert(a.denominator().clone(), n.clone(), s);
    }

    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let (na, sa) = a.numerator();
        let (nb, sb) = b.numerator();
        let den = if a.denominator().is_one() {
            b.denominator().clone()
        } else if b.denominator().is_one() {
            a.denominator().clone()
        } else {
            a.denominator().mul(b.denominator())
        };
        self.insert(den, na.mul(nb), sa + sb);
    }

    pub fn add_product3(&mut self, a: &Scalar, b: &Scalar, c: &Scalar) {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return;
        }
        let (na, sa) = a.numerator();
        let (nb, sb) = b.numerator();
        let (nc, sc) = c.numerator();
        let mut den = a.denominator().clone();
        for d in [b.denominator(), c.denominator()] {
            if !d.is_one() {
                den = den.mul(d);
            }
        }
        self.insert(den, na.mul(nb).mul(nc), sa + sb + sc);
    }

    pub fn finish(self) -> Scalar {
        let mut total = Scalar::zero();
        for (den, (num, shift)) in self.groups {
            if num.is_zero() {
                continue;
            }
            let s = Scalar::from_parts(num, shift, den).expect("nonzero denominator");
            total = total + s;
        }
        total
    }
}
