//! Scalar structure constants: q-numbers, Q_N, recursion coefficients,
//! projector traces b_l, epsilon normalisations d_l and Hodge coefficients c_p.
//!
//! Half-integer powers of q are written through `Scalar::v_pow`, so `vq(e2)`
//! below means q^(e2/2).

use crate::error::{Error, Result};
use crate::model::{Kind, Model, Sign};
use crate::scalar::Scalar;

fn vq(e2: i32) -> Scalar {
    Scalar::v_pow(e2)
}

/// q^(e2/2) + q^(-e2/2).
fn sym(e2: i32) -> Scalar {
    vq(e2) + vq(-e2)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// [y]_q for y = y2/2.
pub fn q_number(y2: i32) -> Scalar {
    (vq(y2) - vq(-y2)) / (vq(2) - vq(-2))
}

/// [y]_{q^a} for integer y and a = a2/2.
pub fn q_number_base(y: i32, a2: i32) -> Scalar {
    (vq(a2 * y) - vq(-a2 * y)) / (vq(a2) - vq(-a2))
}

/// y_{q^{+-2}} = (q^{+-2y} - 1)/(q^{+-2} - 1).
pub fn q_shifted(y: u32, sign: Sign) -> Scalar {
    let s = sign.unit();
    (vq(4 * s * y as i32) - int(1)) / (vq(4 * s) - int(1))
}

pub fn q_factorial(n: u32) -> Scalar {
    (1..=n as i32).map(|i| q_number(2 * i)).product()
}

pub fn q_binomial(n: u32, k: u32) -> Result<Scalar> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "q_binomial({}, {}) out of range",
            n, k
        )));
    }
    Ok(q_factorial(n) / (q_factorial(k) * q_factorial(n - k)))
}

fn require_so(model: &Model, what: &str) -> Result<()> {
    if model.is_so() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} is defined only for so",
            what
        )))
    }
}

/// Q_N from the two closed forms (1+q^{2-N})(q^N-1)/(q^2-1) and
/// (q^{1-N/2}+q^{N/2-1})[N/2]_q.
pub fn big_q_forms(model: &Model) -> Result<(Scalar, Scalar)> {
    require_so(model, "Q_N")?;
    let n = model.n as i32;
    let a = (int(1) + vq(4 - 2 * n)) * (vq(2 * n) - int(1)) / (vq(4) - int(1));
    let b = sym(2 - n) * q_number(n);
    Ok((a, b))
}

pub fn big_q(model: &Model) -> Result<Scalar> {
    let (a, b) = big_q_forms(model)?;
    if a != b {
        return Err(Error::InvalidArgument(format!(
            "closed forms of Q_N disagree: {} vs {}",
            a, b
        )));
    }
    Ok(a)
}

/// (alpha, beta, gamma) of M^{+-,l+1} = alpha(1 + beta*Rhat + gamma*Pt).
///
/// gamma vanishes for gl. For l = 0 the triple is (1, 0, 0).
pub fn recursion_coeffs(model: &Model, sign: Sign, l: u32) -> (Scalar, Scalar, Scalar) {
    if l == 0 {
        return (int(1), Scalar::zero(), Scalar::zero());
    }
    let s = sign.unit();
    let alpha = q_shifted(l + 1, sign).recip().expect("nonzero q-number");
    let beta = int(s as i64) * vq(2 * s) * q_shifted(l, sign);
    let gamma = match model.kind {
        Kind::Gl => Scalar::zero(),
        Kind::So => gamma_so(model.n as i32, sign, l as i32),
    };
    (alpha, beta, gamma)
}

fn gamma_so(n: i32, sign: Sign, l: i32) -> Scalar {
    match sign {
        Sign::Plus => {
            (vq(2 * n) - int(1)) * (int(1) + vq(4 - 2 * n)) * q_shifted(l as u32, Sign::Plus)
                / (int(1) - vq(2 * (n + 2 * l - 2)))
        }
        Sign::Minus => {
            (vq(-2 * n) - int(1)) * (int(1) + vq(2 * n - 4)) * q_shifted(l as u32, Sign::Minus)
                / (int(1) + vq(2 * (n - 2 * l)))
        }
    }
}

/// The antisymmetric gamma with the denominator 1 - q^{N-2l}, kept for
/// comparison; it has a pole at N = 2l and fails the l = 1 reduction.
pub fn gamma_minus_alt_sign(n: u32, l: u32) -> Result<Scalar> {
    let n = n as i32;
    let l = l as i32;
    let den = int(1) - vq(2 * (n - 2 * l));
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((vq(-2 * n) - int(1)) * (int(1) + vq(2 * n - 4)) * q_shifted(l as u32, Sign::Minus) / den)
}

/// b_l with tr_2(U_2 M^{-,l}_{12}) = b_l 1_N, via the factorised form.
pub fn trace_b(model: &Model, l: u32) -> Result<Scalar> {
    let n = model.n as i32;
    let li = l as i32;
    if l < 1 || l > model.n as u32 {
        return Err(Error::InvalidArgument(format!(
            "b_l needs 1 <= l <= N, got {}",
            l
        )));
    }
    let base = q_number(2 * (n - li + 1)) / q_number(2 * li);
    Ok(match model.kind {
        Kind::Gl => base,
        Kind::So => base * sym(n - 2 * li) / sym(n + 2 - 2 * li),
    })
}

/// The expanded so form
/// (1/[l]) (q^{l-1} Q_N - [l-1] q^{N-1} + (q^{-2}-1)[l-1]/(q^{-1}+q^{N+1-2l})).
pub fn trace_b_expanded(model: &Model, l: u32) -> Result<Scalar> {
    require_so(model, "expanded b_l")?;
    let n = model.n as i32;
    let l = l as i32;
    let qn = big_q(model)?;
    let lm1 = q_number(2 * (l - 1));
    let inner = vq(2 * (l - 1)) * qn - &lm1 * vq(2 * (n - 1))
        + (vq(-4) - int(1)) * &lm1 / (vq(-2) + vq(2 * (n + 1 - 2 * l)));
    Ok(inner / q_number(2 * l))
}

/// d_l from a caller-supplied d_0.
pub fn dee(model: &Model, l: u32, d0: &Scalar) -> Result<Scalar> {
    let n = model.n as u32;
    let base = d0 * q_binomial(n, l)?;
    Ok(match model.kind {
        Kind::Gl => base,
        Kind::So => {
            let (n, l) = (n as i32, l as i32);
            base * sym(2 * l - n) / sym(n)
        }
    })
}

/// c_p = 1/[N-p]! prod_{l=p}^{N-1} (q^{l-N/2}+q^{N/2-l})/(q^{1-N/2}+q^{N/2-1}).
pub fn hodge_c(model: &Model, p: u32) -> Result<Scalar> {
    require_so(model, "c_p")?;
    let n = model.n as u32;
    if p > n {
        return Err(Error::InvalidArgument(format!(
            "c_p needs p <= N, got {}",
            p
        )));
    }
    let ni = n as i32;
    let den = sym(2 - ni);
    let prod: Scalar = (p as i32..ni).map(|l| sym(2 * l - ni) / &den).product();
    Ok(prod / q_factorial(n - p))
}

/// d_0 = c_0 fixed by c_N = 1.
pub fn d0_canonical(model: &Model) -> Result<Scalar> {
    hodge_c(model, 0)
}

/// Closed-form d_0 for N = 3, 4 with [.]_{q^{1/2}} taken literally.
pub fn d0_half_base(model: &Model) -> Result<Scalar> {
    require_so(model, "closed-form d_0")?;
    let inv = match model.n {
        3 => q_number_base(2, 1) * q_number_base(3, 1),
        4 => int(2) * q_number_base(2, 1).pow(2)? * q_number(6),
        _ => {
            return Err(Error::Unsupported(
                "a closed-form d_0 exists only for N = 3, 4".into(),
            ))
        }
    };
    inv.recip()
}

/// Closed-form d_0 for N = 3, 4 with [2]_q in place of [2]_{q^{1/2}}.
pub fn d0_full_base(model: &Model) -> Result<Scalar> {
    require_so(model, "closed-form d_0")?;
    let inv = match model.n {
        3 => q_number(4) * q_number_base(3, 1),
        4 => int(2) * q_number(4).pow(2)? * q_number(6),
        _ => {
            return Err(Error::Unsupported(
                "a closed-form d_0 exists only for N = 3, 4".into(),
            ))
        }
    };
    inv.recip()
}

/// Top-word normalisation used for the tabulated epsilon: 1 for gl,
/// q^{-1} for so(3), q^{-2} for so(4).
pub fn gamma_tabulated(model: &Model) -> Result<Scalar> {
    match (model.kind, model.n) {
        (Kind::Gl, _) => Ok(int(1)),
        (Kind::So, 3) => Ok(Scalar::q_pow(-1)),
        (Kind::So, 4) => Ok(Scalar::q_pow(-2)),
        (Kind::So, n) => Err(Error::Unsupported(format!(
            "no tabulated normalisation for so({}); use unit-top",
            n
        ))),
    }
}

/// Right-hand side of the Laplacian scalar identity:
/// (q^{1-N/2}+q^{N/2-1})/(q^{-N/2}+q^{N/2}).
pub fn laplacian_ratio(model: &Model) -> Scalar {
    let n = model.n as i32;
    sym(2 - n) / sym(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(e: i32) -> Scalar {
        Scalar::q_pow(e)
    }

    #[test]
    fn q_numbers() {
        assert!(q_number(2).is_one());
        assert_eq!(q_number(4), q(1) + q(-1));
        let expect = (vq(2) + int(1) + vq(-2)) / (vq(1) + vq(-1));
        assert_eq!(q_number(3), expect);
        assert_eq!(q_number(-5), -q_number(5));
    }

    #[test]
    fn shifted_numbers() {
        assert!(q_shifted(1, Sign::Plus).is_one());
        assert_eq!(q_shifted(2, Sign::Plus), int(1) + q(2));
        assert_eq!(q_shifted(2, Sign::Minus), int(1) + q(-2));
        for y in 1..6 {
            assert_eq!(
                q_shifted(y, Sign::Plus),
                q(y as i32 - 1) * q_number(2 * y as i32)
            );
            assert_eq!(
                q_shifted(y, Sign::Minus),
                q(1 - y as i32) * q_number(2 * y as i32)
            );
        }
    }

    #[test]
    fn binomials() {
        assert!(q_binomial(5, 0).unwrap().is_one());
        assert_eq!(q_factorial(3), (q(1) + q(-1)) * (q(2) + int(1) + q(-2)));
        let b = q_binomial(4, 2).unwrap();
        assert!(b.is_laurent());
        assert_eq!(b, q_number(8) * q_number(6) / q_number(4));
        assert_eq!(b.eval_v(&rat(1, 1)).unwrap(), rat(6, 1));
        assert!(q_binomial(2, 3).is_err());
    }

    #[test]
    fn big_q_values() {
        assert_eq!(big_q(&Model::so(3)).unwrap(), q(1) + int(1) + q(-1));
        assert_eq!(big_q(&Model::so(4)).unwrap(), q(2) + int(2) + q(-2));
        for n in 3..=8 {
            let (a, b) = big_q_forms(&Model::so(n)).unwrap();
            assert_eq!(a, b);
        }
        assert!(big_q(&Model::gl(3)).is_err());
    }

    #[test]
    fn recursion_base_cases() {
        let (a, b, g) = recursion_coeffs(&Model::gl(3), Sign::Plus, 1);
        assert_eq!(a, int(1) / (int(1) + q(2)));
        assert_eq!(b, q(1));
        assert!(g.is_zero());
        let (_, _, g) = recursion_coeffs(&Model::so(3), Sign::Plus, 1);
        assert_eq!(g, -(int(1) + q(-1)));
        for sign in [Sign::Plus, Sign::Minus] {
            let (a, b, g) = recursion_coeffs(&Model::so(4), sign, 0);
            assert!(a.is_one() && b.is_zero() && g.is_zero());
        }
    }

    #[test]
    fn gamma_plus_is_finite_at_q_one() {
        let (_, _, g) = recursion_coeffs(&Model::so(3), Sign::Plus, 1);
        assert_eq!(g.eval_v(&rat(1, 1)).unwrap(), rat(-2, 1));
        for n in 3..=6 {
            for l in 1..=4 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let (_, _, g) = recursion_coeffs(&Model::so(n), sign, l);
                    assert!(g.eval_v(&rat(1, 1)).is_ok(), "so({}) l={} {}", n, l, sign);
                }
            }
        }
    }

    #[test]
    fn b_l_chain() {
        for n in 3..=5 {
            for kind in [Kind::Gl, Kind::So] {
                let m = Model::new(kind, n).unwrap();
                let d0 = int(1);
                for l in 1..=n as u32 {
                    let lhs = dee(&m, l - 1, &d0).unwrap() * trace_b(&m, l).unwrap();
                    assert_eq!(lhs, dee(&m, l, &d0).unwrap(), "{} l={}", m, l);
                }
            }
        }
        assert_eq!(trace_b(&Model::gl(3), 1).unwrap(), q_number(6));
    }

    #[test]
    fn b_l_expanded_so() {
        for n in 3..=6 {
            let m = Model::so(n);
            for l in 1..=n as u32 {
                assert_eq!(
                    trace_b_expanded(&m, l).unwrap(),
                    trace_b(&m, l).unwrap(),
                    "so({}) l={}",
                    n,
                    l
                );
            }
        }
    }

    #[test]
    fn d_symmetry() {
        let d0 = vq(3) + int(7);
        for n in 3..=5 {
            for kind in [Kind::Gl, Kind::So] {
                let m = Model::new(kind, n).unwrap();
                for l in 0..=n as u32 {
                    assert_eq!(
                        dee(&m, l, &d0).unwrap(),
                        dee(&m, n as u32 - l, &d0).unwrap()
                    );
                }
                assert_eq!(dee(&m, 0, &d0).unwrap(), d0);
            }
        }
    }

    #[test]
    fn hodge_coefficients() {
        for n in 3..=6 {
            let m = Model::so(n);
            let nu = n as u32;
            assert!(hodge_c(&m, nu).unwrap().is_one());
            let c0 = d0_canonical(&m).unwrap();
            for p in 0..=nu {
                let lhs = hodge_c(&m, p).unwrap() * hodge_c(&m, nu - p).unwrap();
                assert_eq!(lhs, dee(&m, p, &c0).unwrap());
            }
            let c1 = hodge_c(&m, 1).unwrap();
            assert_eq!(c1 / (c0 * q_number(2 * n as i32)), laplacian_ratio(&m));
        }
        assert!(hodge_c(&Model::gl(3), 0).is_err());
    }
}
