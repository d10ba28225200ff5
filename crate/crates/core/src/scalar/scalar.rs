use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Shorthand for a small rational constant.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// An element of Q(v), v^2 = q, stored as `v^shift * num / den`.
///
/// Canonical form: `num(0) != 0` (or `num` is zero with `shift == 0`),
/// `den` monic with `den(0) != 0`, and `gcd(num, den) = 1`. Two scalars are
/// equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    shift: i32,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            shift: 0,
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar {
            num: Poly::constant(c),
            shift: 0,
            den: Poly::one(),
        }
    }

    /// v^e, i.e. q^(e/2).
    pub fn v_pow(e: i32) -> Self {
        Scalar {
            num: Poly::one(),
            shift: e,
            den: Poly::one(),
        }
    }

    /// q^e for integer e.
    pub fn q_pow(e: i32) -> Self {
        Scalar::v_pow(2 * e)
    }

    pub fn q() -> Self {
        Scalar::v_pow(2)
    }

    /// k = q - q^(-1).
    pub fn k() -> Self {
        Scalar::q_pow(1) - Scalar::q_pow(-1)
    }

    /// Builds `v^shift * num / den` and brings it to canonical form.
    pub fn from_parts(num: Poly, shift: i32, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, shift, den, true))
    }

    /// Laurent polynomial in v from (exponent, coefficient) pairs.
    pub fn laurent(terms: &[(i32, BigRational)]) -> Self {
        let mut acc = Scalar::zero();
        for (e, c) in terms {
            acc = acc + Scalar::from_rational(c.clone()) * Scalar::v_pow(*e);
        }
        acc
    }

    fn normalize(num: Poly, shift: i32, den: Poly, need_gcd: bool) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let nv = num.valuation();
        let dv = den.valuation();
        let mut num = if nv > 0 { num.shift_down(nv) } else { num };
        let mut den = if dv > 0 { den.shift_down(dv) } else { den };
        let shift = shift + nv as i32 - dv as i32;
        if need_gcd && !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        if let Some(l) = den.leading() {
            if !l.is_one() {
                let inv = l.recip();
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        }
        Scalar { num, shift, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The rational constant, if the scalar does not depend on v.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.shift == 0 && self.num.is_constant() && self.den.is_one() {
            return Some(self.num.coeffs()[0].clone());
        }
        None
    }

    pub fn numerator(&self) -> (&Poly, i32) {
        (&self.num, self.shift)
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(
            self.den.clone(),
            -self.shift,
            self.num.clone(),
            false,
        ))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    fn add_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(other.shift);
        let a = self.num.shift_up((self.shift - m) as usize);
        let b = other.num.shift_up((other.shift - m) as usize);
        if self.den == other.den {
            let num = a.add(&b);
            return Self::normalize(num, m, self.den.clone(), !self.den.is_one());
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = a.mul(&other.den).add(&b.mul(&self.den));
            return Self::normalize(num, m, self.den.mul(&other.den), false);
        }
        let d1 = self.den.div_exact(&g);
        let d2 = other.den.div_exact(&g);
        let num = a.mul(&d2).add(&b.mul(&d1));
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h), g.div_exact(&h))
        };
        Self::normalize(num, m, d1.mul(&d2).mul(&g), false)
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                shift,
                den: Poly::one(),
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.div_exact(&g1)
        };
        let d2 = if g1.is_one() {
            other.den.clone()
        } else {
            other.den.div_exact(&g1)
        };
        let n2 = if g2.is_one() {
            other.num.clone()
        } else {
            other.num.div_exact(&g2)
        };
        let d1 = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.div_exact(&g2)
        };
        Self::normalize(n1.mul(&n2), shift, d1.mul(&d2), false)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            shift: self.shift,
            den: self.den.clone(),
        }
    }

    /// Evaluates at a rational value of v.
    pub fn eval_v(&self, v: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: render_laurent(&self.den, 0),
            });
        }
        if v.is_zero() && self.shift < 0 {
            return Err(Error::Pole {
                denominator: render_term(&BigRational::one(), -self.shift),
            });
        }
        let vp = pow_rat(v, self.shift);
        Ok(self.num.eval(v) * vp / d)
    }

    /// Evaluates at a rational value of q. When q is not a rational square the
    /// expression must only involve integer powers of q.
    pub fn eval_q(&self, q: &BigRational) -> Result<BigRational> {
        if let Some(v) = rational_sqrt(q) {
            return self.eval_v(&v);
        }
        let even =
            self.shift % 2 == 0 && odd_coeffs_vanish(&self.num) && odd_coeffs_vanish(&self.den);
        if !even {
            return Err(Error::NotASquare(q.to_string()));
        }
        let num = halve(&self.num);
        let den = halve(&self.den);
        let d = den.eval(q);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: render_laurent(&self.den, 0),
            });
        }
        if q.is_zero() && self.shift < 0 {
            return Err(Error::Pole {
                denominator: render_term(&BigRational::one(), -self.shift),
            });
        }
        Ok(num.eval(q) * pow_rat(q, self.shift / 2) / d)
    }

    /// Replaces v by v^-1 (q by q^-1).
    pub fn bar(&self) -> Scalar {
        let flip = |p: &Poly| -> (Poly, i32) {
            let deg = p.degree().unwrap_or(0);
            let mut c = p.coeffs();
            c.reverse();
            (Poly::from_coeffs(c), -(deg as i32))
        };
        let (n, ns) = flip(&self.num);
        let (d, ds) = flip(&self.den);
        Self::normalize(n, -self.shift + ns - ds, d, false)
    }

    /// Canonical string, e.g. `q^(3/2) + 2*q - 1/2 * q^(-1)`.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            return render_laurent(&self.num, self.shift);
        }
        format!(
            "({}) / ({})",
            render_laurent(&self.num, self.shift),
            render_laurent(&self.den, 0)
        )
    }

    pub fn parse(s: &str) -> Result<Scalar> {
        super::parse::parse(s)
    }

    /// Exponents (in powers of v) and coefficients of a Laurent polynomial,
    /// highest first. `None` for a genuine fraction.
    pub fn laurent_terms(&self) -> Option<Vec<(i32, BigRational)>> {
        if !self.den.is_one() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i32 + self.shift, c.clone()))
                .collect(),
        )
    }
}

fn odd_coeffs_vanish(p: &Poly) -> bool {
    p.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero())
}

fn halve(p: &Poly) -> Poly {
    Poly::from_coeffs(p.coeffs().iter().step_by(2).cloned().collect())
}

fn pow_rat(x: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Half-integer exponent for v^e.
fn half(e: i32) -> String {
    if e % 2 == 0 {
        format!("{}", e / 2)
    } else {
        format!("{}/2", e)
    }
}

fn render_term(c: &BigRational, e: i32) -> String {
    let mag = c.abs();
    if e == 0 {
        return mag.to_string();
    }
    let var = if e == 2 {
        "q".to_string()
    } else {
        format!("q^({})", half(e))
    };
    if mag.is_one() {
        var
    } else {
        format!("{}*{}", mag, var)
    }
}

fn render_laurent(p: &Poly, shift: i32) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = render_term(c, i as i32 + shift);
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&term);
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.render())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            shift: self.shift,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b));
binop!(Sub, sub, |a, b| a.add_impl(&-b));
binop!(Mul, mul, |a, b| a.mul_impl(b));
// Panics on a zero divisor; use `checked_div` to get an error instead.
binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero scalar"));

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> Scalar {
        Scalar::q_pow(e)
    }

    #[test]
    fn inverse_of_q() {
        assert!((q(1) * q(-1)).is_one());
    }

    #[test]
    fn k_over_half_k() {
        let half = Scalar::v_pow(1) - Scalar::v_pow(-1);
        let expect = Scalar::v_pow(1) + Scalar::v_pow(-1);
        assert_eq!(Scalar::k() / half, expect);
    }

    #[test]
    fn geometric_sum() {
        let a = q(3) - Scalar::one();
        let b = q(1) - Scalar::one();
        assert_eq!(a / b, q(2) + q(1) + Scalar::one());
    }

    #[test]
    fn canonical_after_cancellation() {
        let a = (q(1) + Scalar::from_int(3)) / (q(2) - Scalar::from_int(5));
        let b = q(4) - q(-1) + Scalar::from_int(2);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!((&a + &b) - &b, a);
    }

    #[test]
    fn render_shapes() {
        assert_eq!(Scalar::zero().render(), "0");
        assert_eq!(Scalar::k().render(), "q - q^(-1)");
        assert_eq!(
            (Scalar::v_pow(-1) - Scalar::v_pow(1)).render(),
            "-q^(1/2) + q^(-1/2)"
        );
        let f = Scalar::one() / (q(1) + Scalar::one());
        assert_eq!(f.render(), "(1) / (q + 1)");
        let g = Scalar::from_rational(rat(-3, 2)) * q(2);
        assert_eq!(g.render(), "-3/2*q^(2)");
    }

    #[test]
    fn eval_at_q_four() {
        let s = q(1) + q(-1);
        assert_eq!(s.eval_q(&rat(4, 1)).unwrap(), rat(17, 4));
        assert_eq!(Scalar::v_pow(1).eval_q(&rat(4, 1)).unwrap(), rat(2, 1));
    }

    #[test]
    fn eval_non_square_needs_integer_powers() {
        assert_eq!(q(1).eval_q(&rat(2, 1)).unwrap(), rat(2, 1));
        assert!(matches!(
            Scalar::v_pow(1).eval_q(&rat(2, 1)),
            Err(Error::NotASquare(_))
        ));
    }

    #[test]
    fn pole_names_denominator() {
        let f = Scalar::one() / (q(1) - Scalar::one());
        match f.eval_q(&rat(1, 1)) {
            Err(Error::Pole { denominator }) => assert_eq!(denominator, "q - 1"),
            other => panic!("expected pole, got {:?}", other),
        }
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn bar_inverts_q() {
        let f = (q(2) + Scalar::from_int(3)) / (q(1) - Scalar::from_int(2));
        let expect = (q(-2) + Scalar::from_int(3)) / (q(-1) - Scalar::from_int(2));
        assert_eq!(f.bar(), expect);
        assert_eq!(f.bar().bar(), f);
    }
}
