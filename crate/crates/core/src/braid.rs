//! The fundamental two-slot objects: braid matrix, its inverse, metric, U,
//! trace projector and the rank-two projectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::model::{Kind, Model, Sign};
use crate::qcoeff;
use crate::scalar::Scalar;
use crate::tensor::Tensor;

/// Everything built from one model, computed once and shared.
#[derive(Debug)]
pub struct Braid {
    pub model: Model,
    pub rhat: Tensor,
    pub rhat_inv: Tensor,
    pub u: Tensor,
    /// g_{ij} as an N x N matrix (row i, column j); equals g^{ij}. `None` for gl.
    pub metric: Option<Tensor>,
    pub pt: Option<Tensor>,
    pub p_plus: Tensor,
    pub p_minus: Tensor,
}

impl Braid {
    pub fn p2(&self, sign: Sign) -> &Tensor {
        match sign {
            Sign::Plus => &self.p_plus,
            Sign::Minus => &self.p_minus,
        }
    }

    pub fn metric(&self) -> Result<&Tensor> {
        self.metric
            .as_ref()
            .ok_or_else(|| Error::Unsupported("gl has no metric".into()))
    }

    pub fn pt(&self) -> Result<&Tensor> {
        self.pt
            .as_ref()
            .ok_or_else(|| Error::Unsupported("gl has no trace projector".into()))
    }

    /// g_{ij} for alphabet positions.
    pub fn g(&self, i: u8, j: u8) -> Scalar {
        match &self.metric {
            Some(m) => m.get(&[i], &[j]),
            None => Scalar::zero(),
        }
    }
}

/// Shared, memoised constructor.
pub fn braid(model: &Model) -> Arc<Braid> {
    static CACHE: OnceLock<Mutex<HashMap<Model, Arc<Braid>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(model) {
        return b.clone();
    }
    let b = Arc::new(build(model));
    cache.lock().unwrap().insert(model.clone(), b.clone());
    b
}

fn build(model: &Model) -> Braid {
    let rhat = build_rhat(model);
    let u = build_u(model);
    let metric = build_metric(model).ok();
    let pt = build_pt(model).ok();
    let p_plus = build_p2_from(model, &rhat, pt.as_ref(), Sign::Plus);
    let p_minus = build_p2_from(model, &rhat, pt.as_ref(), Sign::Minus);
    let rhat_inv = spectral_inverse(model, &p_plus, &p_minus, pt.as_ref());
    Braid {
        model: model.clone(),
        rhat,
        rhat_inv,
        u,
        metric,
        pt,
        p_plus,
        p_minus,
    }
}

fn vq(e2: i32) -> Scalar {
    Scalar::v_pow(e2)
}

fn pair(a: u8, b: u8) -> Vec<u8> {
    vec![a, b]
}

/// The braid matrix, rows indexed by the upper pair and columns by the lower
/// pair. For gl the k entries sit at upper pair (i, j) with i < j.
pub fn build_rhat(model: &Model) -> Tensor {
    let n = model.n;
    let mut r = Tensor::zero(n, 2, 2);
    let q = Scalar::q();
    let k = Scalar::k();
    match model.kind {
        Kind::Gl => {
            for i in 0..n as u8 {
                r.set(pair(i, i), pair(i, i), q.clone());
                for j in 0..n as u8 {
                    if i != j {
                        r.set(pair(i, j), pair(j, i), Scalar::one());
                    }
                    if i < j {
                        r.set(pair(i, j), pair(i, j), k.clone());
                    }
                }
            }
        }
        Kind::So => {
            let rho2 = model.rho2().expect("so model");
            let zero = model.pos(0);
            for i in 0..n as u8 {
                let mi = model.opposite(i);
                if Some(i) == zero {
                    r.set(pair(i, i), pair(i, i), Scalar::one());
                } else {
                    r.set(pair(i, i), pair(i, i), q.clone());
                    r.set(pair(i, mi), pair(mi, i), vq(-2));
                }
                for j in 0..n as u8 {
                    if j != i && j != mi {
                        r.set(pair(i, j), pair(j, i), Scalar::one());
                    }
                }
            }
            for i in 0..n as u8 {
                for j in i + 1..n as u8 {
                    r.add_to(pair(i, j), pair(i, j), &k);
                    let c = -(&k * &vq(rho2[j as usize] - rho2[i as usize]));
                    r.add_to(pair(i, model.opposite(i)), pair(model.opposite(j), j), &c);
                }
            }
        }
    }
    r
}

/// g_{ij} = q^{rho_j} delta_{-i,j}.
pub fn build_metric(model: &Model) -> Result<Tensor> {
    let rho2 = model.rho2()?;
    let mut g = Tensor::zero(model.n, 1, 1);
    for i in 0..model.n as u8 {
        let j = model.opposite(i);
        g.set(vec![i], vec![j], vq(rho2[j as usize]));
    }
    Ok(g)
}

/// U = diag(q^{2i-N-1}) for gl, diag(q^{-2 rho_i}) for so.
pub fn build_u(model: &Model) -> Tensor {
    let vals: Vec<Scalar> = match model.kind {
        Kind::Gl => model
            .alphabet()
            .iter()
            .map(|&i| Scalar::q_pow(2 * i - model.n as i32 - 1))
            .collect(),
        Kind::So => model
            .rho2()
            .expect("so model")
            .iter()
            .map(|&r| vq(-2 * r))
            .collect(),
    };
    Tensor::diagonal(&vals)
}

/// P^t = g^{ij} g_{kl} / Q_N.
pub fn build_pt(model: &Model) -> Result<Tensor> {
    let g = build_metric(model)?;
    let inv_q = qcoeff::big_q(model)?.recip()?;
    let mut pt = Tensor::zero(model.n, 2, 2);
    for (i, j, a) in g.entries() {
        for (k, l, b) in g.entries() {
            pt.set(pair(i[0], j[0]), pair(k[0], l[0]), a * b * &inv_q);
        }
    }
    Ok(pt)
}

fn build_p2_from(model: &Model, rhat: &Tensor, pt: Option<&Tensor>, sign: Sign) -> Tensor {
    let s = sign.unit();
    let id = Tensor::identity(model.n, 2);
    let mut t = id
        .scale(&vq(-2 * s))
        .add(&rhat.scale(&Scalar::from_int(s as i64)))
        .expect("same shape");
    if let Some(pt) = pt {
        let c = vq(-2 * s) + Scalar::from_int(s as i64) * vq(2 - 2 * model.n as i32);
        t = t.sub(&pt.scale(&c)).expect("same shape");
    }
    t.scale(&(vq(2) + vq(-2)).recip().expect("nonzero"))
}

/// P^{+-} from the braid matrix.
pub fn build_p2(model: &Model, sign: Sign) -> Tensor {
    braid(model).p2(sign).clone()
}

/// Inverse braid matrix from the spectral decomposition with inverted
/// eigenvalues: q^{-1} P^+ - q P^- (+ q^{N-1} P^t).
fn spectral_inverse(model: &Model, pp: &Tensor, pm: &Tensor, pt: Option<&Tensor>) -> Tensor {
    let mut t = pp
        .scale(&vq(-2))
        .sub(&pm.scale(&vq(2)))
        .expect("same shape");
    if let Some(pt) = pt {
        t = t
            .add(&pt.scale(&vq(2 * model.n as i32 - 2)))
            .expect("same shape");
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> Scalar {
        Scalar::q_pow(e)
    }

    #[test]
    fn gl2_matrix() {
        let r = build_rhat(&Model::gl(2));
        let order = [[0u8, 0], [0, 1], [1, 0], [1, 1]];
        let k = Scalar::k();
        let one = Scalar::one();
        let z = Scalar::zero();
        let expect = [
            [q(1), z.clone(), z.clone(), z.clone()],
            [z.clone(), k, one.clone(), z.clone()],
            [z.clone(), one, z.clone(), z.clone()],
            [z.clone(), z.clone(), z, q(1)],
        ];
        for (a, ra) in order.iter().enumerate() {
            for (b, rb) in order.iter().enumerate() {
                assert_eq!(r.get(ra, rb), expect[a][b]);
            }
        }
        assert_eq!(r.nnz(), 5);
    }

    #[test]
    fn gl2_antisymmetriser_block() {
        let p = build_p2(&Model::gl(2), Sign::Minus);
        let d = q(2) + Scalar::one();
        assert_eq!(p.get(&[0, 1], &[0, 1]), Scalar::one() / &d);
        assert_eq!(p.get(&[0, 1], &[1, 0]), -q(1) / &d);
        assert_eq!(p.get(&[1, 0], &[1, 0]), q(2) / &d);
        assert_eq!(p.nnz(), 4);
        assert!(p.trace().unwrap().is_one());
    }

    #[test]
    fn metric_entries() {
        let m = Model::so(3);
        let g = build_metric(&m).unwrap();
        assert_eq!(g.get(&[0], &[2]), vq(-1));
        assert_eq!(g.get(&[1], &[1]), Scalar::one());
        assert_eq!(g.get(&[2], &[0]), vq(1));
        let g4 = build_metric(&Model::so(4)).unwrap();
        assert_eq!(g4.get(&[0], &[3]), q(-1));
        assert_eq!(g4.get(&[3], &[0]), q(1));
        assert!(build_metric(&Model::gl(3)).is_err());
    }

    #[test]
    fn metric_is_its_own_inverse() {
        for n in 3..=5 {
            let g = build_metric(&Model::so(n)).unwrap();
            assert_eq!(g.compose(&g).unwrap(), Tensor::identity(n, 1));
        }
    }

    #[test]
    fn u_entries() {
        let u = build_u(&Model::gl(2));
        assert_eq!(u.get(&[0], &[0]), q(-1));
        assert_eq!(u.get(&[1], &[1]), q(1));
        let u3 = build_u(&Model::so(3));
        assert_eq!(u3.get(&[0], &[0]), q(-1));
        assert_eq!(u3.get(&[1], &[1]), Scalar::one());
        assert_eq!(u3.get(&[2], &[2]), q(1));
    }

    #[test]
    fn pt_entry_and_trace() {
        let m = Model::so(3);
        let pt = build_pt(&m).unwrap();
        let q3 = q(1) + Scalar::one() + q(-1);
        assert_eq!(pt.get(&[0, 2], &[1, 1]), vq(-1) / q3);
        assert!(pt.trace().unwrap().is_one());
    }

    #[test]
    fn inverse_is_inverse() {
        for m in [Model::gl(2), Model::gl(3), Model::so(3), Model::so(4)] {
            let b = braid(&m);
            let prod = b.rhat.compose(&b.rhat_inv).unwrap();
            assert_eq!(prod, Tensor::identity(m.n, 2), "{}", m);
        }
    }
}
