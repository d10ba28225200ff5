//! The (anti)symmetriser tower P^{+-,l}, built recursively from the
//! two-slot matrices M^{+-,l+1} = alpha (1 + beta Rhat + gamma P^t).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::braid::braid;
use crate::error::{Error, Result};
use crate::model::{Model, Sign};
use crate::qcoeff;
use crate::scalar::{rat, Scalar};
use crate::tensor::Tensor;

/// M^{+-,l+1} for l >= 1, from the recursion coefficients.
pub fn build_m(model: &Model, sign: Sign, l: u32) -> Tensor {
    let b = braid(model);
    let (alpha, beta, gamma) = qcoeff::recursion_coeffs(model, sign, l);
    let mut m = Tensor::identity(model.n, 2)
        .add(&b.rhat.scale(&beta))
        .expect("same shape");
    if let Some(pt) = &b.pt {
        m = m.add(&pt.scale(&gamma)).expect("same shape");
    }
    m.scale(&alpha)
}

/// The gl closed form 1/[l+1] (q^{-+l} 1 +- [l] Rhat).
pub fn build_m_closed_gl(model: &Model, sign: Sign, l: u32) -> Result<Tensor> {
    if model.is_so() {
        return Err(Error::Unsupported(
            "closed M form is used for gl only".into(),
        ));
    }
    let b = braid(model);
    let s = sign.unit();
    let l = l as i32;
    let id = Tensor::identity(model.n, 2).scale(&Scalar::q_pow(-s * l));
    let r = b
        .rhat
        .scale(&(Scalar::from_int(s as i64) * qcoeff::q_number(2 * l)));
    Ok(id.add(&r)?.scale(&qcoeff::q_number(2 * (l + 1)).recip()?))
}

type Key = (Model, Sign, bool);

fn cache() -> &'static Mutex<HashMap<Key, Vec<Arc<Tensor>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Vec<Arc<Tensor>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn tower(model: &Model, sign: Sign, l: usize, right: bool) -> Arc<Tensor> {
    let key = (model.clone(), sign, right);
    let mut have = {
        let c = cache().lock().unwrap();
        c.get(&key).cloned().unwrap_or_default()
    };
    if have.len() > l {
        return have[l].clone();
    }
    if have.is_empty() {
        have.push(Arc::new(Tensor::identity(model.n, 0)));
    }
    while have.len() <= l {
        let cur = have.len() - 1;
        let next = step(model, sign, &have[cur], cur, right);
        have.push(Arc::new(next));
    }
    let out = have[l].clone();
    cache().lock().unwrap().insert(key, have);
    out
}

/// One recursion step from P^{l} to P^{l+1}.
fn step(model: &Model, sign: Sign, p: &Tensor, l: usize, right: bool) -> Tensor {
    let n = model.n;
    if l == 0 {
        return Tensor::identity(n, 1);
    }
    let one = Tensor::identity(n, 1);
    let m = build_m(model, sign, l as u32);
    let (pe, me) = if right {
        (
            one.kron(p).expect("dims"),
            m.embed_at(1, l + 1).expect("slots"),
        )
    } else {
        (
            p.kron(&one).expect("dims"),
            m.embed_at(l, l + 1).expect("slots"),
        )
    };
    let left = pe.compose(&me).expect("arity");
    left.compose(&pe).expect("arity")
}

/// P^{+-,l} from the left-anchored recursion (P^l x 1) M_{l,l+1} (P^l x 1),
/// with P^{+-,0} the empty identity and P^{+-,1} = 1_N.
pub fn build_projector(model: &Model, sign: Sign, l: usize) -> Arc<Tensor> {
    tower(model, sign, l, false)
}

/// The right-anchored recursion (1 x P^l) M_{12} (1 x P^l).
pub fn build_projector_right(model: &Model, sign: Sign, l: usize) -> Arc<Tensor> {
    tower(model, sign, l, true)
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Classical dimension of the (anti)symmetric irreducible component.
pub fn expected_dimension(model: &Model, sign: Sign, l: usize) -> i64 {
    let n = model.n as i64;
    let l = l as i64;
    match sign {
        Sign::Minus => binom(n, l),
        Sign::Plus => {
            let full = binom(n - 1 + l, n - 1);
            if model.is_so() {
                full - binom(n - 3 + l, n - 1)
            } else {
                full
            }
        }
    }
}

/// Entrywise substitution v = 1.
pub fn at_q_one(t: &Tensor) -> Result<Tensor> {
    t.map_values(|s| s.eval_v(&rat(1, 1)).map(Scalar::from_rational))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_reproduces_rank_two_projectors() {
        for m in [Model::gl(2), Model::gl(3), Model::so(3), Model::so(4)] {
            for sign in [Sign::Plus, Sign::Minus] {
                assert_eq!(&build_m(&m, sign, 1), braid(&m).p2(sign), "{} {}", m, sign);
            }
        }
    }

    #[test]
    fn gl_closed_form_matches() {
        let m = Model::gl(3);
        for l in 1..=3 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert_eq!(
                    build_m(&m, sign, l),
                    build_m_closed_gl(&m, sign, l).unwrap()
                );
            }
        }
    }

    #[test]
    fn traces_are_dimensions() {
        for m in [Model::gl(2), Model::gl(3), Model::so(3)] {
            for sign in [Sign::Plus, Sign::Minus] {
                for l in 0..=3 {
                    let p = build_projector(&m, sign, l);
                    let t = p.trace().unwrap();
                    let d = expected_dimension(&m, sign, l);
                    assert_eq!(t, Scalar::from_int(d), "{} {} l={}", m, sign, l);
                }
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(expected_dimension(&Model::so(3), Sign::Plus, 2), 5);
        assert_eq!(expected_dimension(&Model::gl(3), Sign::Minus, 3), 1);
        assert_eq!(expected_dimension(&Model::gl(2), Sign::Minus, 3), 0);
    }

    #[test]
    fn antisymmetriser_beyond_n_vanishes() {
        assert!(build_projector(&Model::gl(2), Sign::Minus, 3).is_zero());
    }

    #[test]
    fn left_and_right_agree() {
        let m = Model::so(3);
        for l in 0..=3 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert_eq!(
                    build_projector(&m, sign, l),
                    build_projector_right(&m, sign, l)
                );
            }
        }
    }
}
