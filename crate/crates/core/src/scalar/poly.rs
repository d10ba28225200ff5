//! Dense univariate polynomials over the rationals.
//!
//! A nonzero polynomial is stored as `content * prim`, where `prim` is a
//! primitive integer polynomial (coefficient gcd 1, positive leading
//! coefficient) in ascending degree order and `content` is a nonzero rational.
//! The zero polynomial has content 0 and no coefficients. The form is unique,
//! so derived equality and hashing are structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    content: BigRational,
    prim: Vec<BigInt>,
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn int_gcd(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl Poly {
    /// `scale * v` for an integer vector, brought to canonical form.
    fn from_ints(mut v: Vec<BigInt>, scale: BigRational) -> Poly {
        trim(&mut v);
        if v.is_empty() || scale.is_zero() {
            return Poly::zero();
        }
        let mut g = int_gcd(&v);
        if v.last().unwrap().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in v.iter_mut() {
                *c = &*c / &g;
            }
        }
        Poly {
            content: scale * BigRational::from_integer(g),
            prim: v,
        }
    }

    pub fn zero() -> Self {
        Poly {
            content: BigRational::zero(),
            prim: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Poly {
            content: BigRational::one(),
            prim: vec![BigInt::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            content: c,
            prim: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut l = BigInt::one();
        for c in &coeffs {
            if !c.denom().is_one() {
                l = l.lcm(c.denom());
            }
        }
        let ints = coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        Poly::from_ints(ints, BigRational::new(BigInt::one(), l))
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_ints(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigRational::one(),
        )
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.prim
            .iter()
            .map(|c| &self.content * BigRational::from_integer(c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.prim.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.prim.len() == 1 && self.content.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.prim.len() <= 1
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.prim.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<BigRational> {
        self.prim
            .last()
            .map(|c| &self.content * BigRational::from_integer(c.clone()))
    }

    /// Number of trailing zero coefficients (the x-adic valuation).
    pub fn valuation(&self) -> usize {
        self.prim.iter().take_while(|c| c.is_zero()).count()
    }

    /// Drops the lowest `k` coefficients, which must all be zero.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.prim.iter().take(k).all(|c| c.is_zero()));
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        Poly {
            content: self.content.clone(),
            prim: self.prim[k..].to_vec(),
        }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut prim = vec![BigInt::zero(); k];
        prim.extend(self.prim.iter().cloned());
        Poly {
            content: self.content.clone(),
            prim,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // content_a = na/da, content_b = nb/db; work over the common denominator.
        let (na, da) = (self.content.numer(), self.content.denom());
        let (nb, db) = (other.content.numer(), other.content.denom());
        let l = if da == db { da.clone() } else { da.lcm(db) };
        let fa = na * (&l / da);
        let fb = nb * (&l / db);
        let n = self.prim.len().max(other.prim.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.prim.get(i), other.prim.get(i)) {
                (Some(a), Some(b)) => a * &fa + b * &fb,
                (Some(a), None) => a * &fa,
                (None, Some(b)) => b * &fb,
                (None, None) => unreachable!(),
            };
            v.push(c);
        }
        Poly::from_ints(v, BigRational::new(BigInt::one(), l))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            content: -&self.content,
            prim: self.prim.clone(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let content = &self.content * &other.content;
        // Gauss: a product of primitive polynomials is primitive.
        let prim = if self.prim.len() == 1 {
            other.prim.clone()
        } else if other.prim.len() == 1 {
            self.prim.clone()
        } else {
            let mut v = vec![BigInt::zero(); self.prim.len() + other.prim.len() - 1];
            for (i, a) in self.prim.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.prim.iter().enumerate() {
                    if !b.is_zero() {
                        v[i + j] += a * b;
                    }
                }
            }
            v
        };
        Poly { content, prim }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() || self.is_zero() {
            return Poly::zero();
        }
        Poly {
            content: &self.content * c,
            prim: self.prim.clone(),
        }
    }

    /// Euclidean division over Q. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        if divisor.is_constant() {
            let inv = divisor.leading().unwrap().recip();
            return (self.scale(&inv), Poly::zero());
        }
        let Some(s_deg) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if s_deg < d_deg {
            return (Poly::zero(), self.clone());
        }
        let dc = divisor.coeffs();
        let lead_inv = dc[d_deg].recip();
        let mut rem = self.coeffs();
        let mut quot = vec![BigRational::zero(); s_deg - d_deg + 1];
        for k in (0..=s_deg - d_deg).rev() {
            let c = &rem[k + d_deg] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in dc.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; the remainder must vanish.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let Some(s_deg) = self.degree() else {
            return Poly::zero();
        };
        let content = &self.content / &divisor.content;
        if d_deg == 0 {
            return Poly {
                content,
                prim: self.prim.clone(),
            };
        }
        if s_deg < d_deg {
            debug_assert!(false, "inexact polynomial division");
            return self.div_rem(divisor).0;
        }
        // A primitive divisor of an integer polynomial leaves an integer quotient.
        let lead = &divisor.prim[d_deg];
        let mut rem = self.prim.clone();
        let mut quot = vec![BigInt::zero(); s_deg - d_deg + 1];
        for k in (0..=s_deg - d_deg).rev() {
            let top = &rem[k + d_deg];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                debug_assert!(false, "inexact polynomial division");
                return self.div_rem(divisor).0;
            }
            for (j, b) in divisor.prim.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        debug_assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division"
        );
        Poly {
            content,
            prim: quot,
        }
    }

    pub fn monic(&self) -> Poly {
        match self.prim.last() {
            None => Poly::zero(),
            Some(l) => Poly {
                content: BigRational::new(BigInt::one(), l.clone()),
                prim: self.prim.clone(),
            },
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self.prim == other.prim {
            return self.monic();
        }
        if coprime_mod_p(&self.prim, &other.prim) {
            return Poly::one();
        }
        let (mut a, mut b) = if self.prim.len() >= other.prim.len() {
            (self.prim.clone(), other.prim.clone())
        } else {
            (other.prim.clone(), self.prim.clone())
        };
        loop {
            let r = primitive_part(pseudo_rem(&a, &b));
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                return Poly::one();
            }
            a = b;
            b = r;
        }
        Poly::from_ints(b, BigRational::one()).monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.prim.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc * &self.content
    }

    pub fn leading_is_positive(&self) -> bool {
        self.content.is_positive()
    }
}

/// Pseudo-remainder of a by b (deg a >= deg b).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut g = int_gcd(&v);
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(v: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(P);
    v.iter()
        .map(|c| c.mod_floor(&p).to_u64().expect("reduced below p"))
        .collect()
}

/// True when the images mod a large prime are coprime; that forces the
/// integer polynomials to be coprime when p divides neither leading
/// coefficient. False is inconclusive.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let mut a = reduce(a);
    let mut b = reduce(b);
    if a.last() == Some(&0) || b.last() == Some(&0) {
        return false;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        while b.last() == Some(&0) {
            b.pop();
        }
        match b.len() {
            0 => return false,
            1 => return true,
            _ => {}
        }
        let db = b.len() - 1;
        let inv = powmod(b[db], P - 2);
        while a.len() > db {
            let da = a.len() - 1;
            let c = mulmod(a[da], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    let t = mulmod(c, bj);
                    let x = &mut a[da - db + j];
                    *x = if *x >= t { *x - t } else { *x + P - t };
                }
            }
            a.pop();
        }
        std::mem::swap(&mut a, &mut b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (x^2 - 1) and (x^3 - 1) share x - 1
        let a = Poly::from_i64(&[-1, 0, 1]);
        let b = Poly::from_i64(&[-1, 0, 0, 1]);
        assert_eq!(a.gcd(&b), Poly::from_i64(&[-1, 1]));
    }

    #[test]
    fn gcd_is_monic_with_rational_inputs() {
        let a = Poly::from_i64(&[2, 3, 1]).scale(&BigRational::new(3.into(), 7.into()));
        let b = Poly::from_i64(&[4, 4, 1]).scale(&BigRational::new((-5).into(), 2.into()));
        assert_eq!(a.gcd(&b), Poly::from_i64(&[2, 1]));
        assert_eq!(
            Poly::from_i64(&[1, 1]).gcd(&Poly::from_i64(&[1, 2])),
            Poly::one()
        );
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Poly::from_coeffs(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::one(),
        ]);
        let b = Poly::from_i64(&[1, 2]).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(a, b);
        assert_eq!(a.sub(&b), Poly::zero());
        assert_eq!(
            a.coeffs(),
            vec![BigRational::new(1.into(), 2.into()), BigRational::one()]
        );
    }

    #[test]
    fn division_roundtrip() {
        let a = Poly::from_i64(&[1, 2, 3, 4, 5]);
        let b = Poly::from_i64(&[2, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn geometric_sum_is_exact_quotient() {
        let num = Poly::from_i64(&[-1, 0, 0, 1]);
        let den = Poly::from_i64(&[-1, 1]);
        assert_eq!(num.div_exact(&den), Poly::from_i64(&[1, 1, 1]));
        let half = den.scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(num.div_exact(&half), Poly::from_i64(&[2, 2, 2]));
    }
}
