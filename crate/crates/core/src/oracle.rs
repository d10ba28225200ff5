//! Independent classical reference objects used to test the deformed ones at
//! q = 1: permutation-sum (anti)symmetrisers and the traceless symmetric
//! projector of so(N), built by dense rational linear algebra.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Model, Sign};
use crate::scalar::Scalar;
use crate::tensor::{multi_indices, Tensor};

fn permutations(l: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; l], &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..l)
                .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let s = if inv % 2 == 0 { 1 } else { -1 };
            (p, s)
        })
        .collect()
}

/// (1/l!) sum over permutations (with signs for the antisymmetriser).
pub fn classical_symmetrizer(n: usize, l: usize, sign: Sign) -> Tensor {
    let perms = permutations(l);
    let norm = BigRational::new(1.into(), (1..=l as i64).product::<i64>().into());
    let mut t = Tensor::zero(n, l, l);
    for j in multi_indices(n, l) {
        for (p, s) in &perms {
            let i: Vec<u8> = p.iter().map(|&k| j[k]).collect();
            let c = match sign {
                Sign::Plus => norm.clone(),
                Sign::Minus => &norm * BigRational::from_integer((*s).into()),
            };
            t.add_to(i, j.clone(), &Scalar::from_rational(c));
        }
    }
    t
}

type Mat = Vec<Vec<BigRational>>;

fn to_dense(t: &Tensor, rows: &[Vec<u8>], cols: &[Vec<u8>]) -> Result<Mat> {
    let mut m = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
    for (a, r) in rows.iter().enumerate() {
        for (b, c) in cols.iter().enumerate() {
            let v = t.get(r, c);
            if !v.is_zero() {
                m[a][b] = v.as_constant().ok_or_else(|| {
                    Error::InvalidArgument("oracle needs q-independent entries".into())
                })?;
            }
        }
    }
    Ok(m)
}

/// Indices of a maximal set of linearly independent columns.
fn independent_columns(m: &Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut picked = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        picked.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    picked
}

fn invert(m: &Mat) -> Result<Mat> {
    let n = m.len();
    let mut a: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by_key(|&i| !a[i][c].is_zero())
            .filter(|&i| !a[i][c].is_zero())
            .ok_or(Error::DivisionByZero)?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The classical traceless symmetric projector of so(N) on l slots, with the
/// q = 1 metric g^{ij} = delta_{i,-j}: the orthogonal projector onto the
/// symmetric tensors killed by every metric contraction.
pub fn harmonic_projector(model: &Model, l: usize) -> Result<Tensor> {
    if !model.is_so() {
        return Err(Error::Unsupported(
            "traceless projector needs a metric".into(),
        ));
    }
    let n = model.n;
    let sym = classical_symmetrizer(n, l, Sign::Plus);
    if l < 2 {
        return Ok(sym);
    }
    // trace tensors S(g (x) e_J)
    let mut gen = Tensor::zero(n, l, l - 2);
    for j in multi_indices(n, l - 2) {
        for a in 0..n as u8 {
            let mut w = vec![a, model.opposite(a)];
            w.extend_from_slice(&j);
            gen.add_to(w, j.clone(), &Scalar::one());
        }
    }
    let a = sym.compose(&gen)?;
    let rows = multi_indices(n, l);
    let cols = multi_indices(n, l - 2);
    let dense = to_dense(&a, &rows, &cols)?;
    let keep = independent_columns(&dense);
    let basis: Mat = dense
        .iter()
        .map(|r| keep.iter().map(|&c| r[c].clone()).collect())
        .collect();
    let k = keep.len();
    let mut gram = vec![vec![BigRational::zero(); k]; k];
    for (x, gx) in gram.iter_mut().enumerate() {
        for (y, v) in gx.iter_mut().enumerate() {
            *v = basis.iter().map(|r| &r[x] * &r[y]).sum();
        }
    }
    let ginv = invert(&gram)?;
    // basis * ginv * basis^T
    let bg: Mat = basis
        .iter()
        .map(|r| {
            (0..k)
                .map(|y| (0..k).map(|x| &r[x] * &ginv[x][y]).sum())
                .collect()
        })
        .collect();
    let mut out = sym;
    for (a_i, ra) in rows.iter().enumerate() {
        for (b_i, rb) in rows.iter().enumerate() {
            let v: BigRational = (0..k).map(|y| &bg[a_i][y] * &basis[b_i][y]).sum();
            if !v.is_zero() {
                out.add_to(ra.clone(), rb.clone(), &Scalar::from_rational(-v));
            }
        }
    }
    Ok(out)
}

/// The classical projector matching P^{sign,l} at q = 1.
pub fn classical_projector(model: &Model, sign: Sign, l: usize) -> Result<Tensor> {
    match (sign, model.is_so()) {
        (Sign::Plus, true) => harmonic_projector(model, l),
        _ => Ok(classical_symmetrizer(model.n, l, sign)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Model;

    #[test]
    fn antisymmetriser_of_two() {
        let t = classical_symmetrizer(2, 2, Sign::Minus);
        let h = Scalar::from_rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(t.get(&[0, 1], &[0, 1]), h);
        assert_eq!(t.get(&[0, 1], &[1, 0]), -&h);
        assert!(t.get(&[0, 0], &[0, 0]).is_zero());
    }

    #[test]
    fn harmonic_is_idempotent_with_right_rank() {
        let m = Model::so(3);
        for l in 0..4 {
            let p = harmonic_projector(&m, l).unwrap();
            assert_eq!(p.compose(&p).unwrap(), p);
            assert_eq!(p.trace().unwrap(), Scalar::from_int(2 * l as i64 + 1));
        }
    }
}
