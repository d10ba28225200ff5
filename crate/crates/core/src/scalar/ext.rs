use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;
use crate::error::{Error, Result};

/// `a + b*s` with `s^2 = rho`. All operands of one expression must share `rho`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtScalar {
    pub a: Scalar,
    pub b: Scalar,
    pub rho: Scalar,
}

impl ExtScalar {
    pub fn new(a: Scalar, b: Scalar, rho: Scalar) -> Self {
        ExtScalar { a, b, rho }
    }

    pub fn from_base(a: Scalar, rho: &Scalar) -> Self {
        ExtScalar::new(a, Scalar::zero(), rho.clone())
    }

    /// The adjoined root `s`.
    pub fn root(rho: &Scalar) -> Self {
        ExtScalar::new(Scalar::zero(), Scalar::one(), rho.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExtScalar::new(self.a.clone(), -&self.b, self.rho.clone())
    }

    /// a^2 - rho*b^2.
    pub fn norm(&self) -> Scalar {
        &self.a * &self.a - &self.rho * &(&self.b * &self.b)
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = n.recip()?;
        Ok(ExtScalar::new(
            &self.a * &inv,
            -(&self.b * &inv),
            self.rho.clone(),
        ))
    }

    fn check(&self, other: &ExtScalar) {
        assert_eq!(
            self.rho, other.rho,
            "ExtScalar operands with different moduli"
        );
    }

    pub fn render(&self) -> String {
        if self.b.is_zero() {
            return self.a.render();
        }
        format!("({}) + ({})*s", self.a.render(), self.b.render())
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: &ExtScalar) -> ExtScalar {
        self.check(rhs);
        ExtScalar::new(&self.a + &rhs.a, &self.b + &rhs.b, self.rho.clone())
    }
}

impl Sub for &ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: &ExtScalar) -> ExtScalar {
        self.check(rhs);
        ExtScalar::new(&self.a - &rhs.a, &self.b - &rhs.b, self.rho.clone())
    }
}

impl Mul for &ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: &ExtScalar) -> ExtScalar {
        self.check(rhs);
        let a = &self.a * &rhs.a + &self.rho * &(&self.b * &rhs.b);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        ExtScalar::new(a, b, self.rho.clone())
    }
}

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar::new(-&self.a, -&self.b, self.rho.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_squares_to_modulus() {
        let rho = Scalar::q_pow(1) + Scalar::one();
        let s = ExtScalar::root(&rho);
        assert_eq!(&s * &s, ExtScalar::from_base(rho.clone(), &rho));
    }

    #[test]
    fn recip_roundtrip() {
        let rho = Scalar::q_pow(1) + Scalar::q_pow(-1);
        let x = ExtScalar::new(Scalar::q_pow(2), Scalar::from_int(3), rho.clone());
        let one = ExtScalar::from_base(Scalar::one(), &rho);
        assert_eq!(&x * &x.recip().unwrap(), one);
    }
}
