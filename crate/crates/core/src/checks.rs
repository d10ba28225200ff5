//! Identity suites with pass/fail outcomes. Every check is an exact equality;
//! failures carry the first counterexample found.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::braid;
use crate::diffcalc::{self, Calculus, ExtNC, Letter, NCElement, NCWord, Species};
use crate::error::Result;
use crate::exterior::{self, EpsilonTable, Normalization, Reducer};
use crate::model::{Model, Sign};
use crate::oracle;
use crate::projectors::{self, build_m, build_projector, build_projector_right};
use crate::qcoeff;
use crate::scalar::{rat, ExtScalar, Scalar};
use crate::tensor::{multi_indices, Tensor};

type Verdict = std::result::Result<(), String>;

/// Which side of the Hodge normalisation is checked: plain Q(v) with the
/// rho factor, or the quadratic extension by sqrt(rho).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Rational,
    Extension,
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Mode::Rational),
            "extension" => Ok(Mode::Extension),
            _ => Err(crate::Error::InvalidArgument(format!(
                "unknown mode {:?}",
                s
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Rational => "rational",
            Mode::Extension => "extension",
        })
    }
}

fn wants(mode: Option<Mode>, m: Mode) -> bool {
    mode.is_none_or(|x| x == m)
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {} ({} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_millis()
        );
        if !self.detail.is_empty() {
            let _ = write!(s, ": {}", self.detail);
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.outcomes.extend(other.outcomes);
    }

    /// Prefixes every name with `tag: `.
    pub fn tagged(mut self, tag: &str) -> Report {
        for o in &mut self.outcomes {
            o.name = format!("{}: {}", tag, o.name);
        }
        self
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            s.push_str(&o.line());
            s.push('\n');
        }
        s
    }

    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<Verdict>) {
        let t0 = Instant::now();
        let (pass, detail) = match f() {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {}", e)),
        };
        self.outcomes.push(Outcome {
            name: name.into(),
            pass,
            detail,
            elapsed: t0.elapsed(),
        });
    }
}

fn labels(model: &Model, w: &[u8]) -> Vec<i32> {
    w.iter().map(|&p| model.label(p)).collect()
}

fn same(model: &Model, a: &Tensor, b: &Tensor) -> Verdict {
    match a.first_difference(b) {
        None => Ok(()),
        Some((u, l, x, y)) => Err(format!(
            "up {:?} low {:?}: {} vs {}",
            labels(model, &u),
            labels(model, &l),
            x,
            y
        )),
    }
}

fn eq_scalar(what: &str, a: &Scalar, b: &Scalar) -> Verdict {
    if a == b {
        Ok(())
    } else {
        Err(format!("{}: {} vs {}", what, a, b))
    }
}

fn all(items: impl IntoIterator<Item = Verdict>) -> Verdict {
    for v in items {
        v?;
    }
    Ok(())
}

fn family(model: &Model) -> Vec<(&'static str, Tensor)> {
    let b = braid(model);
    let mut out = vec![("P+", b.p_plus.clone()), ("P-", b.p_minus.clone())];
    if let Some(pt) = &b.pt {
        out.push(("Pt", pt.clone()));
    }
    out
}

fn at(t: &Tensor, slot: usize, total: usize) -> Result<Tensor> {
    t.embed_at(slot, total)
}

fn product(ts: &[&Tensor]) -> Result<Tensor> {
    let mut out = ts[0].clone();
    for t in &ts[1..] {
        out = out.compose(t)?;
    }
    Ok(out)
}

/// g^{(x) l} as an l-slot matrix, slot a paired with slot a, or with slot
/// l+1-a when `nested`.
fn metric_power(model: &Model, l: usize, nested: bool) -> Tensor {
    let b = braid(model);
    let mut g = Tensor::zero(model.n, l, l);
    for i in multi_indices(model.n, l) {
        let mut j: Vec<u8> = i.iter().map(|&a| model.opposite(a)).collect();
        let v: Scalar = i.iter().zip(&j).map(|(&a, &c)| b.g(a, c)).product();
        if nested {
            j.reverse();
        }
        g.set(i, j, v);
    }
    g
}

fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let poly = |rng: &mut R| {
        let terms: Vec<(i32, num_rational::BigRational)> = (0..rng.gen_range(1..4))
            .map(|_| {
                (
                    rng.gen_range(-4..5),
                    rat(rng.gen_range(-5..6), rng.gen_range(1..4)),
                )
            })
            .collect();
        Scalar::laurent(&terms)
    };
    let num = poly(rng);
    let mut den = poly(rng);
    while den.is_zero() {
        den = poly(rng);
    }
    num / den
}

/// Arithmetic of Q(v): canonical forms, q-numbers, substitution, the quadratic
/// extension.
pub fn scalar_suite(seed: u64) -> Report {
    let mut r = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(Scalar, Scalar)> = (0..60)
        .map(|_| (random_scalar(&mut rng), random_scalar(&mut rng)))
        .collect();
    r.run("canonical form: a*b/b = a", || {
        Ok(all(samples
            .iter()
            .filter(|(_, b)| !b.is_zero())
            .map(|(a, b)| eq_scalar("a*b/b", &(a * b / b.clone()), a))))
    });
    r.run("[-y]_q = -[y]_q", || {
        Ok(all((-12..=12).map(|y2| {
            eq_scalar(
                &format!("y = {}/2", y2),
                &qcoeff::q_number(-y2),
                &-qcoeff::q_number(y2),
            )
        })))
    });
    r.run("y_{q^2} = q^{y-1}[y]_q", || {
        Ok(all((0..8).map(|y: i32| {
            eq_scalar(
                &format!("y = {}", y),
                &qcoeff::q_shifted(y as u32, Sign::Plus),
                &(Scalar::q_pow(y - 1) * qcoeff::q_number(2 * y)),
            )
        })))
    });
    r.run("substitution is a ring map", || {
        let points = [rat(4, 1), rat(9, 4), rat(1, 9)];
        let mut checked = 0;
        for (a, b) in &samples {
            for p in &points {
                let (Ok(x), Ok(y), Ok(s), Ok(m)) = (
                    a.eval_q(p),
                    b.eval_q(p),
                    (a + b).eval_q(p),
                    (a * b).eval_q(p),
                ) else {
                    continue;
                };
                if s != &x + &y || m != &x * &y {
                    return Ok(Err(format!("a = {}, b = {}, q = {}", a, b, p)));
                }
                checked += 1;
            }
        }
        Ok(if checked > 0 {
            Ok(())
        } else {
            Err("no pole-free samples".into())
        })
    });
    r.run("(a + bs)(a - bs) = a^2 - rho b^2", || {
        Ok(all(samples.windows(2).map(|w| {
            let rho = &w[1].0 * &w[1].0 + Scalar::one();
            let x = ExtScalar::new(w[0].0.clone(), w[0].1.clone(), rho.clone());
            let p = &x * &x.conj();
            let want = &w[0].0 * &w[0].0 - &rho * &(&w[0].1 * &w[0].1);
            if p.b.is_zero() && p.a == want {
                Ok(())
            } else {
                Err(format!("a = {}, b = {}", w[0].0, w[0].1))
            }
        })))
    });
    r.run("render/parse round trip", || {
        Ok(all(samples.iter().map(|(a, _)| {
            let back = Scalar::parse(&a.render()).map_err(|e| e.to_string())?;
            eq_scalar("parse(render(a))", &back, a)
        })))
    });
    r
}

/// Two- and three-slot identities of the braid matrix and its projectors.
fn braid_checks(model: &Model) -> Report {
    let mut r = Report::default();
    let m = model.clone();
    let b = braid(model);
    let n = model.n;
    let fam = family(model);
    r.run("spectral decomposition of Rhat", || {
        let mut t = b
            .p_plus
            .scale(&Scalar::q())
            .sub(&b.p_minus.scale(&Scalar::q_pow(-1)))?;
        if let Some(pt) = &b.pt {
            t = t.add(&pt.scale(&Scalar::q_pow(1 - n as i32)))?;
        }
        Ok(same(&m, &t, &b.rhat))
    });
    r.run("projector orthogonality", || {
        for (na, a) in &fam {
            for (nb, bb) in &fam {
                let want = if na == nb {
                    a.clone()
                } else {
                    Tensor::zero(n, 2, 2)
                };
                if let Err(e) = same(&m, &a.compose(bb)?, &want) {
                    return Ok(Err(format!("{} {}: {}", na, nb, e)));
                }
            }
        }
        Ok(Ok(()))
    });
    r.run("projector completeness", || {
        let mut s = Tensor::zero(n, 2, 2);
        for (_, t) in &fam {
            s = s.add(t)?;
        }
        Ok(same(&m, &s, &Tensor::identity(n, 2)))
    });
    r.run("transpose symmetry of Rhat and its projectors", || {
        let mut items = vec![("Rhat", b.rhat.clone())];
        items.extend(fam.iter().cloned());
        Ok(all(items.iter().map(|(name, t)| {
            same(&m, &t.transpose(), t).map_err(|e| format!("{}: {}", name, e))
        })))
    });
    r.run("braid relation", || {
        let r12 = at(&b.rhat, 1, 3)?;
        let r23 = at(&b.rhat, 2, 3)?;
        Ok(same(
            &m,
            &product(&[&r12, &r23, &r12])?,
            &product(&[&r23, &r12, &r23])?,
        ))
    });
    r.run("P_12 R_23 R_12 = R_23 R_12 P_23", || {
        let r12 = at(&b.rhat, 1, 3)?;
        let r23 = at(&b.rhat, 2, 3)?;
        for (name, p) in &fam {
            let lhs = product(&[&at(p, 1, 3)?, &r23, &r12])?;
            let rhs = product(&[&r23, &r12, &at(p, 2, 3)?])?;
            if let Err(e) = same(&m, &lhs, &rhs) {
                return Ok(Err(format!("{}: {}", name, e)));
            }
        }
        Ok(Ok(()))
    });
    r.run("Rhat Rhat^-1 = 1", || {
        Ok(same(
            &m,
            &b.rhat.compose(&b.rhat_inv)?,
            &Tensor::identity(n, 2),
        ))
    });
    r.run("Rhat at q = 1 is the flip", || {
        let mut flip = Tensor::zero(n, 2, 2);
        for i in 0..n as u8 {
            for j in 0..n as u8 {
                flip.set(vec![i, j], vec![j, i], Scalar::one());
            }
        }
        Ok(same(&m, &projectors::at_q_one(&b.rhat)?, &flip))
    });
    let u_trace = if model.is_so() {
        qcoeff::big_q(model)
    } else {
        Ok(qcoeff::q_number(2 * n as i32))
    };
    r.run("det U = 1, tr U", || {
        let det: Scalar = (0..n as u8).map(|i| b.u.get(&[i], &[i])).product();
        Ok(eq_scalar("det U", &det, &Scalar::one()).and(eq_scalar(
            "tr U",
            &b.u.trace()?,
            &u_trace?,
        )))
    });
    r.run("tr_2(U_2 Rhat_12)", || {
        let e = if model.is_so() {
            n as i32 - 1
        } else {
            n as i32
        };
        let t = b.rhat.partial_trace(2, Some(&b.u))?;
        Ok(same(
            &m,
            &t,
            &Tensor::identity(n, 1).scale(&Scalar::q_pow(e)),
        ))
    });
    if !model.is_so() {
        return r;
    }
    let g = b.metric().expect("so").clone();
    let pt = b.pt().expect("so").clone();
    r.run("metric: g g = 1 and g.g = Q_N", || {
        let contraction: Scalar = g.entries().map(|(_, _, v)| v * v).sum();
        Ok(
            same(&m, &g.compose(&g)?, &Tensor::identity(n, 1)).and(eq_scalar(
                "g^{lm} g_{lm}",
                &contraction,
                &qcoeff::big_q(model)?,
            )),
        )
    });
    r.run("U^i_j = g^{ik} g_{jk}", || {
        let mut u = Tensor::zero(n, 1, 1);
        for i in 0..n as u8 {
            for j in 0..n as u8 {
                let s: Scalar = (0..n as u8).map(|k| b.g(i, k) * b.g(j, k)).sum();
                u.set(vec![i], vec![j], s);
            }
        }
        Ok(same(&m, &u, &b.u))
    });
    r.run("P^t idempotent with trace 1", || {
        Ok(same(&m, &pt.compose(&pt)?, &pt).and(eq_scalar("tr P^t", &pt.trace()?, &Scalar::one())))
    });
    r.run("tr_2(U_2 P^t_12) = 1/Q_N", || {
        let t = pt.partial_trace(2, Some(&b.u))?;
        Ok(same(
            &m,
            &t,
            &Tensor::identity(n, 1).scale(&qcoeff::big_q(model)?.recip()?),
        ))
    });
    r.run("metric intertwines Rhat and Rhat^-1", || {
        let pairs = [(&b.rhat, &b.rhat_inv), (&b.rhat_inv, &b.rhat)];
        let idx = multi_indices(n, 4);
        for (p, mi) in pairs {
            for w in &idx {
                let (i, h, j, k) = (w[0], w[1], w[2], w[3]);
                let lhs: Scalar = (0..n as u8)
                    .map(|l| b.g(i, l) * p.get(&[l, h], &[j, k]))
                    .sum();
                let rhs: Scalar = (0..n as u8)
                    .map(|l| mi.get(&[h, l], &[i, j]) * b.g(l, k))
                    .sum();
                if lhs != rhs {
                    return Ok(Err(format!(
                        "lower form at {:?}: {} vs {}",
                        labels(&m, w),
                        lhs,
                        rhs
                    )));
                }
                let lhs: Scalar = (0..n as u8)
                    .map(|l| b.g(i, l) * p.get(&[j, k], &[l, h]))
                    .sum();
                let rhs: Scalar = (0..n as u8)
                    .map(|l| mi.get(&[i, j], &[h, l]) * b.g(l, k))
                    .sum();
                if lhs != rhs {
                    return Ok(Err(format!(
                        "upper form at {:?}: {} vs {}",
                        labels(&m, w),
                        lhs,
                        rhs
                    )));
                }
            }
        }
        Ok(Ok(()))
    });
    r.run(
        "trace projector against Rhat, four identities per sign",
        || {
            let qn = qcoeff::big_q(model)?;
            let pt12 = at(&pt, 1, 3)?;
            let pt23 = at(&pt, 2, 3)?;
            for (s, (p, mi)) in [("+", (&b.rhat, &b.rhat_inv)), ("-", (&b.rhat_inv, &b.rhat))] {
                let (r12, r23) = (at(p, 1, 3)?, at(p, 2, 3)?);
                let (i12, i23) = (at(mi, 1, 3)?, at(mi, 2, 3)?);
                let cases = [
                    (product(&[&pt12, &r23])?, product(&[&pt12, &pt23, &i12])?),
                    (product(&[&r23, &pt12])?, product(&[&i12, &pt23, &pt12])?),
                    (product(&[&pt23, &r12])?, product(&[&pt23, &pt12, &i23])?),
                    (product(&[&r12, &pt23])?, product(&[&i23, &pt12, &pt23])?),
                ];
                for (c, (lhs, rhs)) in cases.iter().enumerate() {
                    if let Err(e) = same(&m, lhs, &rhs.scale(&qn)) {
                        return Ok(Err(format!("identity {} sign {}: {}", c + 1, s, e)));
                    }
                }
            }
            Ok(Ok(()))
        },
    );
    r
}

/// The (anti)symmetriser towers up to `max_level`.
fn projector_checks(model: &Model, max_level: usize) -> Report {
    let mut r = Report::default();
    let m = model.clone();
    let n = model.n;
    let b = braid(model);
    let fam = family(model);
    r.run("M^{+-,2} reproduces P^+-", || {
        Ok(all([Sign::Plus, Sign::Minus].iter().map(|&s| {
            same(&m, &build_m(&m, s, 1), b.p2(s)).map_err(|e| format!("{}: {}", s, e))
        })))
    });
    if !model.is_so() {
        r.run("gl closed form of M equals alpha(1 + beta Rhat)", || {
            for s in [Sign::Plus, Sign::Minus] {
                for l in 1..=3 {
                    if let Err(e) = same(
                        &m,
                        &projectors::build_m_closed_gl(&m, s, l)?,
                        &build_m(&m, s, l),
                    ) {
                        return Ok(Err(format!("{} l = {}: {}", s, l, e)));
                    }
                }
            }
            Ok(Ok(()))
        });
    } else {
        r.run("so recursion coefficients finite at q = 1", || {
            for s in [Sign::Plus, Sign::Minus] {
                for l in 1..=max_level.max(n) as u32 {
                    let (a, be, ga) = qcoeff::recursion_coeffs(&m, s, l);
                    for (name, c) in [("alpha", a), ("beta", be), ("gamma", ga)] {
                        if let Err(e) = c.eval_v(&rat(1, 1)) {
                            return Ok(Err(format!("{} {} l = {}: {}", name, s, l, e)));
                        }
                    }
                }
            }
            Ok(Ok(()))
        });
    }
    r.run("b_l: tr_2(U_2 M^{-,l}) = b_l 1", || {
        for l in 1..=n as u32 {
            let t = build_m(&m, Sign::Minus, l - 1).partial_trace(2, Some(&b.u))?;
            let bl = qcoeff::trace_b(&m, l)?;
            if let Err(e) = same(&m, &t, &Tensor::identity(n, 1).scale(&bl)) {
                return Ok(Err(format!("l = {}: {}", l, e)));
            }
            if m.is_so() {
                let ex = qcoeff::trace_b_expanded(&m, l)?;
                if ex != bl {
                    return Ok(Err(format!("expanded b_{} = {} vs {}", l, ex, bl)));
                }
            }
        }
        Ok(Ok(()))
    });
    let top = max_level;
    for s in [Sign::Plus, Sign::Minus] {
        // warm the caches once so the checks below only compare
        for l in 0..=top {
            build_projector(model, s, l);
        }
        r.run(format!("idempotency P^{{{},l}}, l <= {}", s, top), || {
            for l in 0..=top {
                let p = build_projector(&m, s, l);
                if let Err(e) = same(&m, &p.compose(&p)?, &p) {
                    return Ok(Err(format!("l = {}: {}", l, e)));
                }
            }
            Ok(Ok(()))
        });
        r.run(format!("trace = dim V^{{{},l}}, l <= {}", s, top), || {
            Ok(all((0..=top).map(|l| {
                let t = build_projector(&m, s, l)
                    .trace()
                    .map_err(|e| e.to_string())?;
                let d = projectors::expected_dimension(&m, s, l);
                eq_scalar(&format!("l = {}", l), &t, &Scalar::from_int(d))
            })))
        });
        r.run(format!("absorption P^{{{},l}}, l <= {}", s, top), || {
            for l in 2..=top {
                let p = build_projector(&m, s, l);
                for slot in 1..l {
                    for (name, pi) in &fam {
                        let e = at(pi, slot, l)?;
                        let hit = (*name == "P+" && s == Sign::Plus)
                            || (*name == "P-" && s == Sign::Minus);
                        let want = if hit {
                            (*p).clone()
                        } else {
                            Tensor::zero(n, l, l)
                        };
                        for (side, got) in [("right", p.compose(&e)?), ("left", e.compose(&p)?)] {
                            if let Err(err) = same(&m, &got, &want) {
                                return Ok(Err(format!(
                                    "l = {} {} at {} {}: {}",
                                    l, name, slot, side, err
                                )));
                            }
                        }
                    }
                }
            }
            Ok(Ok(()))
        });
        r.run(format!("left and right recursions agree, {}", s), || {
            for l in 0..=top {
                if let Err(e) = same(
                    &m,
                    &build_projector(&m, s, l),
                    &build_projector_right(&m, s, l),
                ) {
                    return Ok(Err(format!("l = {}: {}", l, e)));
                }
            }
            Ok(Ok(()))
        });
        r.run(format!("transpose symmetry P^{{{},l}}", s), || {
            for l in 0..=top {
                let p = build_projector(&m, s, l);
                if let Err(e) = same(&m, &p.transpose(), &p) {
                    return Ok(Err(format!("l = {}: {}", l, e)));
                }
            }
            Ok(Ok(()))
        });
        r.run(format!("classical limit of P^{{{},l}}", s), || {
            for l in 0..=top {
                let p = projectors::at_q_one(&build_projector(&m, s, l))?;
                let o = oracle::classical_projector(&m, s, l)?;
                if let Err(e) = same(&m, &p, &o) {
                    return Ok(Err(format!("l = {}: {}", l, e)));
                }
            }
            Ok(Ok(()))
        });
        if model.is_so() {
            for (nested, what) in [(false, "slot-wise pairing"), (true, "nested contraction")] {
                r.run(
                    format!("metric conjugation of P^{{{},l}}, {}", s, what),
                    || {
                        for l in 2..=top.min(3) {
                            let p = build_projector(&m, s, l);
                            let g = metric_power(&m, l, nested);
                            let gt = g.transpose();
                            for (name, gg) in [("g", &g), ("g^T", &gt)] {
                                if let Err(e) = same(&m, &p.compose(gg)?, &gg.compose(&p)?) {
                                    return Ok(Err(format!("l = {} {}: {}", l, name, e)));
                                }
                            }
                        }
                        Ok(Ok(()))
                    },
                );
            }
        }
    }
    if n <= 4 {
        r.run("P^{-,N+1} = 0", || {
            let p = build_projector(&m, Sign::Minus, n + 1);
            Ok(if p.is_zero() {
                Ok(())
            } else {
                Err(format!("{} nonzero entries", p.nnz()))
            })
        });
    }
    r
}

fn sc(sign: i64, e: i32) -> Scalar {
    Scalar::from_int(sign) * Scalar::q_pow(e)
}

/// The tabulated nonzero epsilon entries (labels, value) for so(3), so(4) in
/// their tabulated normalisation.
pub fn tabulated_epsilon(model: &Model) -> Option<Vec<(Vec<i32>, Scalar)>> {
    if !model.is_so() {
        return None;
    }
    let k = Scalar::k();
    match model.n {
        3 => Some(vec![
            (vec![-1, 0, 1], sc(1, -1)),
            (vec![-1, 1, 0], sc(-1, 0)),
            (vec![0, -1, 1], sc(-1, 0)),
            (vec![0, 1, -1], sc(1, 0)),
            (vec![1, 0, -1], sc(-1, 1)),
            (vec![1, -1, 0], sc(1, 0)),
            (vec![0, 0, 0], Scalar::v_pow(-1) - Scalar::v_pow(1)),
        ]),
        4 => Some(vec![
            (vec![-2, -1, 1, 2], sc(1, -2)),
            (vec![-2, 1, -1, 2], sc(-1, -2)),
            (vec![-2, -1, 2, 1], sc(-1, -1)),
            (vec![-2, 1, 2, -1], sc(1, -1)),
            (vec![-2, 2, -1, 1], sc(1, 0)),
            (vec![-2, 2, 1, -1], sc(-1, 0)),
            (vec![-1, -2, 1, 2], sc(-1, -1)),
            (vec![-1, 1, -2, 2], sc(1, 0)),
            (vec![-1, -2, 2, 1], sc(1, 0)),
            (vec![-1, 2, -2, 1], sc(-1, 0)),
            (vec![-1, 2, 1, -2], sc(1, 1)),
            (vec![-1, 1, 2, -2], sc(-1, 0)),
            (vec![1, -1, -2, 2], sc(-1, 0)),
            (vec![1, -2, -1, 2], sc(1, -1)),
            (vec![1, -1, 2, -2], sc(1, 1)),
            (vec![1, 2, -1, -2], sc(-1, 1)),
            (vec![1, 2, -2, -1], sc(1, 0)),
            (vec![1, -2, 2, -1], sc(-1, 0)),
            (vec![2, -2, -1, 1], sc(-1, 0)),
            (vec![2, -1, -2, 1], sc(1, 1)),
            (vec![2, 1, -2, -1], sc(-1, 1)),
            (vec![2, -2, 1, -1], sc(1, 0)),
            (vec![2, -1, 1, -2], sc(-1, 2)),
            (vec![2, 1, -1, -2], sc(1, 2)),
            (vec![-1, 1, -1, 1], k.clone()),
            (vec![1, -1, 1, -1], -k),
        ]),
        _ => None,
    }
}

/// Entries where the computed table and the tabulated one differ:
/// (labels, computed, tabulated).
pub fn tabulated_mismatches(table: &EpsilonTable) -> Option<Vec<(Vec<i32>, Scalar, Scalar)>> {
    let m = &table.model;
    let tab = tabulated_epsilon(m)?;
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (lab, v) in &tab {
        let w: Vec<u8> = lab.iter().map(|&l| m.pos(l).expect("label")).collect();
        seen.insert(w.clone());
        let got = table.get(&w);
        if &got != v {
            out.push((lab.clone(), got, v.clone()));
        }
    }
    for (w, v) in table.entries() {
        if !seen.contains(w) {
            out.push((labels(m, w), v.clone(), Scalar::zero()));
        }
    }
    Some(out)
}

fn render_mismatch(model: &Model, mm: &[exterior::Mismatch]) -> Verdict {
    match mm.first() {
        None => Ok(()),
        Some((w, a, b)) => Err(format!(
            "{} mismatches, first {:?}: {} vs {}",
            mm.len(),
            labels(model, w),
            a,
            b
        )),
    }
}

/// The xi-algebra, epsilon tables and the projector identities they satisfy.
fn epsilon_checks(model: &Model, norm: Normalization, max_level: usize, seed: u64) -> Report {
    let mut r = Report::default();
    let m = model.clone();
    let n = model.n;
    r.run("xi relations: overlaps resolve", || {
        let bad = exterior::critical_pair_failures(&m);
        Ok(match bad.first() {
            None => Ok(()),
            Some(w) => Err(format!("{} words, first {:?}", bad.len(), labels(&m, w))),
        })
    });
    r.run("xi relations: randomised reductions agree", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut red = Reducer::new(&m);
        for _ in 0..200 {
            let len = rng.gen_range(1..=n + 2);
            let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..n as u8)).collect();
            let a = exterior::reduce_random(&m, &w, &mut rng);
            let b = exterior::reduce_random(&m, &w, &mut rng);
            if a != b || a != red.reduce(&w) {
                return Ok(Err(format!("word {:?}", labels(&m, &w))));
            }
        }
        Ok(Ok(()))
    });
    r.run("dim of degree-p forms is (N over p)", || {
        let mut red = Reducer::new(&m);
        for p in 0..=n + 1 {
            let mut span = std::collections::BTreeSet::new();
            for w in multi_indices(n, p) {
                for (t, _) in red.reduce(&w).terms() {
                    span.insert(t.clone());
                }
            }
            let want = projectors::expected_dimension(&m, Sign::Minus, p) as usize;
            if span.len() != want {
                return Ok(Err(format!("p = {}: {} vs {}", p, span.len(), want)));
            }
        }
        Ok(Ok(()))
    });
    let table = match exterior::epsilon_table(model, norm) {
        Ok(t) => t,
        Err(e) => {
            r.run("epsilon table", || Err(e));
            return r;
        }
    };
    if norm == Normalization::Tabulated && tabulated_epsilon(model).is_some() {
        r.run(
            format!("tabulated epsilon entries ({} nonzero)", table.len()),
            || {
                let mm = tabulated_mismatches(&table).expect("tabulated");
                Ok(match mm.first() {
                    None => Ok(()),
                    Some((l, a, b)) => Err(format!(
                        "{} of {} entries differ, first {:?}: computed {} vs tabulated {}",
                        mm.len(),
                        tabulated_epsilon(&m).map(|t| t.len()).unwrap_or(0),
                        l,
                        a,
                        b
                    )),
                })
            },
        );
    }
    if !model.is_so() {
        r.run("gl closed form on all N^N entries", || {
            let closed = exterior::epsilon_gl_closed(&m)?;
            for w in multi_indices(n, n) {
                if closed.get(&w) != table.get(&w) {
                    return Ok(Err(format!(
                        "{:?}: {} vs {}",
                        labels(&m, &w),
                        table.get(&w),
                        closed.get(&w)
                    )));
                }
            }
            Ok(Ok(()))
        });
    }
    r.run("q-cyclicity", || {
        Ok(render_mismatch(&m, &exterior::check_cyclic(&table)))
    });
    if model.is_so() {
        r.run("vanishing conditions", || {
            let bad = exterior::check_vanishing(&table)?;
            Ok(match bad.first() {
                None => Ok(()),
                Some((w, c)) => Err(format!("{:?} violates {:?}", labels(&m, w), c)),
            })
        });
        r.run("lowering and reversal", || {
            Ok(render_mismatch(&m, &exterior::check_lowering(&table)?))
        });
        if norm == Normalization::Tabulated && n <= 4 {
            let d0 = exterior::d0_from_epsilon(&table);
            r.run("d_0 closed form with [2]_{q^(1/2)}", || {
                Ok(eq_scalar("d_0", &d0.clone()?, &qcoeff::d0_half_base(&m)?))
            });
            r.run("d_0 closed form with [2]_q", || {
                Ok(eq_scalar("d_0", &d0.clone()?, &qcoeff::d0_full_base(&m)?))
            });
        }
    }
    let mut levels: Vec<usize> = (0..=max_level.min(n)).collect();
    if !levels.contains(&n) {
        levels.push(n);
    }
    r.run(
        format!(
            "antisymmetriser from epsilon, first form, l in {:?}",
            levels
        ),
        || {
            for &l in &levels {
                let p = build_projector(&m, Sign::Minus, l);
                if let Err(e) = same(&m, &exterior::antisym_line1(&table, l)?, &p) {
                    return Ok(Err(format!("l = {}: {}", l, e)));
                }
            }
            Ok(Ok(()))
        },
    );
    r.run(
        format!(
            "antisymmetriser from epsilon, second form, l in {:?}",
            levels
        ),
        || {
            for &l in &levels {
                let p = build_projector(&m, Sign::Minus, l);
                if let Err(e) = same(&m, &exterior::antisym_line2(&table, l)?, &p) {
                    return Ok(Err(format!("l = {}: {}", l, e)));
                }
            }
            Ok(Ok(()))
        },
    );
    if model.is_so() {
        r.run(
            format!(
                "antisymmetriser from epsilon, metric form, l in {:?}",
                levels
            ),
            || {
                for &l in &levels {
                    let p = build_projector(&m, Sign::Minus, l);
                    if let Err(e) = same(&m, &exterior::antisym_metric_form(&table, l)?, &p) {
                        return Ok(Err(format!("l = {}: {}", l, e)));
                    }
                }
                Ok(Ok(()))
            },
        );
    }
    r.run("P^{-,N} eps = eps", || {
        let e = table.to_tensor();
        Ok(same(
            &m,
            &build_projector(&m, Sign::Minus, n).compose(&e)?,
            &e,
        ))
    });
    r.run("Rhat_{m,m+1} eps = -q^-1 eps", || {
        let e = table.to_tensor();
        let b = braid(&m);
        for slot in 1..n {
            let got = at(&b.rhat, slot, n)?.compose(&e)?;
            if let Err(err) = same(&m, &got, &e.scale(&-Scalar::q_pow(-1))) {
                return Ok(Err(format!("m = {}: {}", slot, err)));
            }
        }
        Ok(Ok(()))
    });
    r
}

/// Coefficient identities of the Hodge map for so(N).
fn coefficient_checks(n: usize) -> Report {
    let mut r = Report::default();
    let m = match Model::new(crate::model::Kind::So, n) {
        Ok(m) => m,
        Err(e) => {
            r.run(format!("so({}) coefficients", n), || Err(e));
            return r;
        }
    };
    let nn = n as u32;
    r.run("c_p c_(N-p) = d_p with canonical d_0", || {
        let d0 = qcoeff::d0_canonical(&m)?;
        for p in 0..=nn {
            let lhs = qcoeff::hodge_c(&m, p)? * qcoeff::hodge_c(&m, nn - p)?;
            let rhs = qcoeff::dee(&m, p, &d0)?;
            if lhs != rhs {
                return Ok(Err(format!("p = {}: {} vs {}", p, lhs, rhs)));
            }
        }
        Ok(Ok(()))
    });
    r.run("c_p recursion", || {
        for p in 1..nn {
            let c = |i: u32| qcoeff::hodge_c(&m, i);
            let v = qcoeff::q_number(2 * (n as i32 - p as i32)) * c(p)? * c(nn - p + 1)?
                - qcoeff::q_number(2 * p as i32) * c(p + 1)? * c(nn - p)?;
            if !v.is_zero() {
                return Ok(Err(format!("p = {}: residual {}", p, v)));
            }
        }
        Ok(Ok(()))
    });
    r.run("c_N = 1 and c_0 = d_N", || {
        let d0 = qcoeff::d0_canonical(&m)?;
        Ok(
            eq_scalar("c_N", &qcoeff::hodge_c(&m, nn)?, &Scalar::one()).and(eq_scalar(
                "c_0",
                &qcoeff::hodge_c(&m, 0)?,
                &qcoeff::dee(&m, nn, &d0)?,
            )),
        )
    });
    r.run("c_1/(c_0 [N]_q)", || {
        let lhs =
            qcoeff::hodge_c(&m, 1)? / (qcoeff::hodge_c(&m, 0)? * qcoeff::q_number(2 * n as i32));
        Ok(eq_scalar("ratio", &lhs, &qcoeff::laplacian_ratio(&m)))
    });
    r
}

fn basis_forms(model: &Model, xdeg: usize, max_p: usize) -> Vec<NCElement> {
    let mut out = Vec::new();
    for xs in diffcalc::x_monomials(model, xdeg) {
        for w in diffcalc::xi_basis(model) {
            if w.len() <= max_p {
                out.push(NCElement::word(NCWord {
                    x: xs.clone(),
                    xi: w,
                    ..NCWord::default()
                }));
            }
        }
    }
    out
}

fn xi_word(w: &[u8]) -> NCElement {
    NCElement::word(NCWord {
        xi: w.to_vec(),
        ..NCWord::default()
    })
}

fn nc_same(model: &Model, what: &NCElement, a: &NCElement, b: &NCElement) -> Verdict {
    if a == b {
        Ok(())
    } else {
        let d = a.sub(b);
        let (w, _) = d.terms().next().expect("nonzero difference");
        Err(format!(
            "omega = {}: differs at {}: {} vs {}",
            what.render(model),
            w.render(model),
            a.coeff(w),
            b.coeff(w)
        ))
    }
}

/// The table used by the Hodge map: tabulated normalisation where it exists,
/// unit-top otherwise.
pub fn hodge_table(model: &Model) -> Result<EpsilonTable> {
    let norm = if qcoeff::gamma_tabulated(model).is_ok() {
        Normalization::Tabulated
    } else {
        Normalization::UnitTop
    };
    exterior::epsilon_table(model, norm)
}

/// Hodge map, its square, H-bilinearity and the codifferential.
fn hodge_checks(model: &Model, mode: Option<Mode>) -> Report {
    let mut r = coefficient_checks(model.n);
    if !model.is_so() {
        return r;
    }
    let m = model.clone();
    let n = model.n;
    let table = match hodge_table(model) {
        Ok(t) => t,
        Err(e) => {
            r.run("epsilon table", || Err(e));
            return r;
        }
    };
    let mut calc = match Calculus::new(model) {
        Ok(c) => c,
        Err(e) => {
            r.run("calculus", || Err(e));
            return r;
        }
    };
    let rho = diffcalc::rho(&table);
    if table.normalization == Normalization::Tabulated {
        r.run(
            "rho_N from the table equals d_0 closed form / d_0 from c_N = 1",
            || {
                let alt = qcoeff::d0_full_base(&m)? / qcoeff::d0_canonical(&m)?;
                Ok(eq_scalar("rho", &rho.clone()?, &alt))
            },
        );
    }
    if wants(mode, Mode::Rational) {
        r.run("rational mode: ** = rho^-1 on every basis form", || {
            let inv = rho.clone()?.recip()?;
            for w in diffcalc::xi_basis(&m) {
                let e = xi_word(&w);
                let h = calc.hodge(&table, &e)?;
                if h.degree() != Some(n - w.len()) {
                    return Ok(Err(format!(
                        "{} is not of degree {}",
                        h.render(&m),
                        n - w.len()
                    )));
                }
                if let Err(d) = nc_same(&m, &e, &calc.hodge(&table, &h)?, &e.scale(&inv)) {
                    return Ok(Err(d));
                }
            }
            Ok(Ok(()))
        });
    }
    if wants(mode, Mode::Extension) {
        r.run("extension mode: ** = id on every basis form", || {
            let rho = rho.clone()?;
            for w in diffcalc::xi_basis(&m) {
                let e = ExtNC::from_base(xi_word(&w), &rho);
                let h = calc.hodge_ext(&table, &e)?;
                if calc.hodge_ext(&table, &h)? != e {
                    return Ok(Err(format!("xi word {:?}", labels(&m, &w))));
                }
            }
            Ok(Ok(()))
        });
    }
    r.run("H-bilinearity of the Hodge map", || {
        let forms = basis_forms(&m, 1, n);
        let mut gens = Vec::new();
        for j in 0..n as u8 {
            gens.push(Letter::X(j));
            gens.push(Letter::D(j));
        }
        gens.push(Letter::Lam(1));
        gens.push(Letter::Lam(-1));
        for om in &forms {
            let h = calc.hodge(&table, om)?;
            for &g in &gens {
                let a = calc.gen(g);
                let left = calc.mul(&a, om);
                let lhs = calc.hodge(&table, &left)?;
                let rhs = calc.mul(&a, &h);
                if let Err(d) = nc_same(&m, om, &lhs, &rhs) {
                    return Ok(Err(format!("left {:?}: {}", g, d)));
                }
                let right = calc.mul_letter(om, g);
                let lhs = calc.hodge(&table, &right)?;
                let rhs = calc.mul_letter(&h, g);
                if let Err(d) = nc_same(&m, om, &lhs, &rhs) {
                    return Ok(Err(format!("right {:?}: {}", g, d)));
                }
            }
        }
        Ok(Ok(()))
    });
    r.run(
        "codifferential: delta 1 = 0, degree -1, delta^2 = 0",
        || {
            if !calc.codifferential(&table, &NCElement::one())?.is_zero() {
                return Ok(Err("delta 1 != 0".into()));
            }
            for om in basis_forms(&m, 1, n) {
                let p = om.degree().unwrap_or(0);
                let d1 = calc.codifferential(&table, &om)?;
                if !d1.is_zero() && (p == 0 || d1.degree() != Some(p - 1)) {
                    return Ok(Err(format!("delta of {} has wrong degree", om.render(&m))));
                }
                if !calc.codifferential(&table, &d1)?.is_zero() {
                    return Ok(Err(format!("delta^2 of {} is nonzero", om.render(&m))));
                }
            }
            Ok(Ok(()))
        },
    );
    r
}

/// Forms for the Laplacian identity: all basis xi-words times x-monomials of
/// degree <= 2 for N = 3; degrees p <= 1 and x-degree <= 1 otherwise. A few
/// right-multiplied coefficients are added.
pub fn laplacian_samples(calc: &mut Calculus) -> Vec<NCElement> {
    let m = calc.model.clone();
    let (xdeg, max_p) = if m.n == 3 { (2, 3) } else { (1, 1) };
    let mut out = basis_forms(&m, xdeg, max_p);
    for j in 0..m.n as u8 {
        let xi = calc.gen(Letter::Xi(0));
        out.push(calc.mul_letter(&xi, Letter::X(j)));
    }
    let mut top: Vec<u8> = (0..m.n as u8).collect();
    if max_p < m.n {
        top.truncate(max_p);
    }
    out.push(xi_word(&top));
    out
}

/// Laplacian identity on `samples`: the failing forms, as messages, for
/// (rational, extension) mode.
pub fn laplacian_run(
    model: &Model,
    table: &EpsilonTable,
    samples: &[NCElement],
    mode: Option<Mode>,
) -> Result<(Vec<String>, Vec<String>)> {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let chunk = samples.len().div_ceil(threads).max(1);
    let rho = diffcalc::rho(table)?;
    let inv = rho.recip()?;
    let results: Vec<Result<(Vec<String>, Vec<String>)>> = std::thread::scope(|s| {
        let handles: Vec<_> = samples
            .chunks(chunk)
            .map(|part| {
                let (rho, inv) = (&rho, &inv);
                s.spawn(move || -> Result<(Vec<String>, Vec<String>)> {
                    let mut calc = Calculus::new(model)?;
                    let (mut fr, mut fe) = (Vec::new(), Vec::new());
                    for om in part {
                        let rhs = calc.laplacian_rhs(om)?;
                        if wants(mode, Mode::Rational) {
                            let lhs = calc.laplacian(table, om)?;
                            if let Err(d) = nc_same(model, om, &lhs, &rhs.scale(inv)) {
                                fr.push(d);
                            }
                        }
                        if wants(mode, Mode::Extension) {
                            let lhs =
                                calc.laplacian_ext(table, &ExtNC::from_base(om.clone(), rho))?;
                            if lhs != ExtNC::from_base(rhs, rho) {
                                fe.push(format!("omega = {}", om.render(model)));
                            }
                        }
                    }
                    Ok((fr, fe))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker"))
            .collect()
    });
    let (mut fr, mut fe) = (Vec::new(), Vec::new());
    for res in results {
        let (a, b) = res?;
        fr.extend(a);
        fe.extend(b);
    }
    Ok((fr, fe))
}

/// (d delta + delta d) omega = -q^2 rho^-1 (partial.partial) Lambda^2 omega,
/// and the same without rho^-1 over Q(v)(sqrt rho).
fn laplacian_checks(model: &Model, mode: Option<Mode>) -> Report {
    let mut r = Report::default();
    if !model.is_so() {
        r.run("Laplacian identity", || {
            Ok(Err("needs the so metric".into()))
        });
        return r;
    }
    let m = model.clone();
    let t0 = Instant::now();
    let run = (|| -> Result<(usize, Vec<String>, Vec<String>)> {
        let table = hodge_table(&m)?;
        let mut calc = Calculus::new(&m)?;
        let samples = laplacian_samples(&mut calc);
        let (fr, fe) = laplacian_run(&m, &table, &samples, mode)?;
        Ok((samples.len(), fr, fe))
    })();
    let elapsed = t0.elapsed();
    for (which, idx) in [(Mode::Rational, 0), (Mode::Extension, 1)] {
        if !wants(mode, which) {
            continue;
        }
        let name = format!("Laplacian identity, {} mode", which);
        let (pass, detail) = match &run {
            Err(e) => (false, format!("error: {}", e)),
            Ok((count, fr, fe)) => {
                let f = if idx == 0 { fr } else { fe };
                match f.first() {
                    None => (true, format!("{} forms", count)),
                    Some(d) => (false, format!("{} of {} forms fail; {}", f.len(), count, d)),
                }
            }
        };
        r.outcomes.push(Outcome {
            name,
            pass,
            detail,
            elapsed,
        });
    }
    r
}

/// Forms x^I xi^J for the d^2 = 0 check: enough x-degree for at least `min`.
fn derivative_samples(model: &Model, min: usize) -> Vec<NCElement> {
    let mut deg = 1;
    loop {
        let f = basis_forms(model, deg, model.n);
        if f.len() >= min || deg >= 4 {
            return f;
        }
        deg += 1;
    }
}

/// Normal ordering of the calculus algebra, d, and the Lambda realisation.
fn calculus_checks(model: &Model, seed: u64) -> Report {
    let mut r = Report::default();
    let m = model.clone();
    let n = model.n;
    let mut calc = match Calculus::new(model) {
        Ok(c) => c,
        Err(e) => {
            r.run("quadratic rules by elimination", || Err(e));
            return r;
        }
    };
    r.run("quadratic rules by elimination", || Ok(Ok(())));
    r.run("xi rules coincide with the explicit relations", || {
        let bad = calc.xixi.exterior_mismatches(&m);
        Ok(if bad.is_empty() {
            Ok(())
        } else {
            Err(format!("pairs {:?}", bad))
        })
    });
    if !model.is_so() {
        r.run(
            "coordinates commute as x^j x^i = q^-1 x^i x^j (i < j)",
            || {
                for i in 0..n as u8 {
                    for j in i + 1..n as u8 {
                        let got = calc.reduce_letters(&[Letter::X(j), Letter::X(i)]);
                        let want = NCElement::word(NCWord {
                            x: vec![i, j],
                            ..NCWord::default()
                        })
                        .scale(&Scalar::q_pow(-1));
                        if let Err(d) = nc_same(&m, &got, &got, &want) {
                            return Ok(Err(d));
                        }
                    }
                }
                Ok(Ok(()))
            },
        );
    }
    r.run("overlap words of each species reduce uniquely", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (species, f) in [
            (Species::Xx, Letter::X as fn(u8) -> Letter),
            (Species::XiXi, Letter::Xi as fn(u8) -> Letter),
            (Species::DD, Letter::D as fn(u8) -> Letter),
        ] {
            for w in multi_indices(n, 3) {
                let letters: Vec<Letter> = w.iter().map(|&a| f(a)).collect();
                let e = calc.reduce_letters(&letters);
                for _ in 0..3 {
                    if diffcalc::reduce_random(&calc, &letters, &mut rng) != e {
                        return Ok(Err(format!("{:?} word {:?}", species, labels(&m, &w))));
                    }
                }
            }
        }
        Ok(Ok(()))
    });
    r.run("confluence sampling: 200 mixed words", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let w = diffcalc::random_letters(&m, 6, &mut rng);
            let a = diffcalc::reduce_random(&calc, &w, &mut rng);
            let b = diffcalc::reduce_random(&calc, &w, &mut rng);
            let e = calc.reduce_letters(&w);
            if a != b || a != e {
                return Ok(Err(format!("word {:?}", w)));
            }
            let deg = w.iter().filter(|l| matches!(l, Letter::Xi(_))).count();
            if !e.is_zero() && e.degree() != Some(deg) {
                return Ok(Err(format!("grading broken by {:?}", w)));
            }
        }
        Ok(Ok(()))
    });
    r.run("(xi^i d_i)(xi^j d_j) = 0", || {
        let d = calc.d_element();
        Ok(if calc.mul(&d, &d).is_zero() {
            Ok(())
        } else {
            Err("nonzero".into())
        })
    });
    r.run("d 1 = 0 and d x^j = xi^j", || {
        if !calc.ext_derivative(&NCElement::one())?.is_zero() {
            return Ok(Err("d 1 != 0".into()));
        }
        for j in 0..n as u8 {
            let x = calc.gen(Letter::X(j));
            let got = calc.ext_derivative(&x)?;
            let want = calc.gen(Letter::Xi(j));
            if let Err(d) = nc_same(&m, &x, &got, &want) {
                return Ok(Err(d));
            }
        }
        Ok(Ok(()))
    });
    let forms = derivative_samples(&m, 50);
    r.run(format!("d^2 = 0 on {} forms", forms.len()), || {
        for om in &forms {
            let d1 = calc.ext_derivative(om)?;
            if !d1.is_zero() && d1.degree() != om.degree().map(|p| p + 1) {
                return Ok(Err(format!("d of {} has wrong degree", om.render(&m))));
            }
            if !calc.ext_derivative(&d1)?.is_zero() {
                return Ok(Err(format!("omega = {}", om.render(&m))));
            }
        }
        Ok(Ok(()))
    });
    r.run(
        "realisation of Lambda^-2 by coordinates and derivatives",
        || {
            let l = calc.lambda_minus_two()?;
            let b = braid(&m);
            for i in 0..n as u8 {
                let x = calc.gen(Letter::X(i));
                let lhs = calc.mul(&l, &x);
                let rhs = calc.mul(&x, &l).scale(&Scalar::q_pow(2));
                if lhs != rhs {
                    return Ok(Err(format!("x^{}", m.label(i))));
                }
                // d^i = g^{ij} d_j for so, d_i for gl
                let du = match &b.metric {
                    Some(_) => {
                        let j = m.opposite(i);
                        calc.gen(Letter::D(j)).scale(&b.g(i, j))
                    }
                    None => calc.gen(Letter::D(i)),
                };
                let lhs = calc.mul(&l, &du);
                let rhs = calc.mul(&du, &l).scale(&Scalar::q_pow(-2));
                if lhs != rhs {
                    return Ok(Err(format!("d^{}", m.label(i))));
                }
            }
            Ok(Ok(()))
        },
    );
    r
}

/// Main-path results against the independent reference computations.
pub fn selftest(seed: u64) -> Report {
    let mut r = Report::default();
    for (m, s, l) in [
        (Model::gl(2), Sign::Minus, 2),
        (Model::gl(3), Sign::Minus, 3),
        (Model::gl(3), Sign::Plus, 3),
        (Model::so(3), Sign::Minus, 2),
        (Model::so(3), Sign::Plus, 2),
        (Model::so(3), Sign::Plus, 3),
    ] {
        r.run(
            format!("classical oracle vs P^{{{},{}}} at q = 1, {}", s, l, m),
            || {
                let p = projectors::at_q_one(&build_projector(&m, s, l))?;
                Ok(same(&m, &p, &oracle::classical_projector(&m, s, l)?))
            },
        );
    }
    for n in 2..=4 {
        let m = Model::gl(n);
        r.run(format!("gl closed form vs reduced epsilon, {}", m), || {
            let a = exterior::epsilon_table(&m, Normalization::UnitTop)?;
            let b = exterior::epsilon_gl_closed(&m)?;
            Ok(if a.entries().eq(b.entries()) {
                Ok(())
            } else {
                Err("tables differ".into())
            })
        });
    }
    for n in [3, 4] {
        let m = Model::so(n);
        r.run(
            format!("rho_{} from the table and from the d_0 formulas", n),
            || {
                let t = exterior::epsilon_table(&m, Normalization::Tabulated)?;
                let a = diffcalc::rho(&t)?;
                let b = qcoeff::d0_full_base(&m)? / qcoeff::d0_canonical(&m)?;
                Ok(eq_scalar("rho", &a, &b))
            },
        );
    }
    for m in [Model::so(3), Model::so(4), Model::so(5)] {
        r.run(
            format!("Q_N closed forms and metric contraction, {}", m),
            || {
                let (a, b) = qcoeff::big_q_forms(&m)?;
                let g = braid(&m);
                let c: Scalar = g.metric()?.entries().map(|(_, _, v)| v * v).sum();
                Ok(eq_scalar("closed forms", &a, &b).and(eq_scalar("contraction", &c, &a)))
            },
        );
    }
    for m in [Model::gl(2), Model::gl(3), Model::so(3)] {
        r.extend(calculus_suite_confluence_only(&m, seed));
    }
    r
}

fn calculus_suite_confluence_only(model: &Model, seed: u64) -> Report {
    let mut r = Report::default();
    let m = model.clone();
    r.run(format!("calculus confluence sampling, {}", m), || {
        let mut calc = Calculus::new(&m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let w = diffcalc::random_letters(&m, 6, &mut rng);
            let a = diffcalc::reduce_random(&calc, &w, &mut rng);
            if a != calc.reduce_letters(&w) {
                return Ok(Err(format!("word {:?}", w)));
            }
        }
        Ok(Ok(()))
    });
    r
}

pub fn braid_suite(model: &Model) -> Report {
    braid_checks(model).tagged(&model.name())
}

pub fn projector_suite(model: &Model, max_level: usize) -> Report {
    projector_checks(model, max_level).tagged(&model.name())
}

pub fn epsilon_suite(model: &Model, norm: Normalization, max_level: usize, seed: u64) -> Report {
    epsilon_checks(model, norm, max_level, seed).tagged(&model.name())
}

pub fn hodge_suite(model: &Model, mode: Option<Mode>) -> Report {
    hodge_checks(model, mode).tagged(&model.name())
}

pub fn laplacian_suite(model: &Model, mode: Option<Mode>) -> Report {
    laplacian_checks(model, mode).tagged(&model.name())
}

pub fn calculus_suite(model: &Model, seed: u64) -> Report {
    calculus_checks(model, seed).tagged(&model.name())
}

pub fn coefficient_suite(n: usize) -> Report {
    coefficient_checks(n).tagged(&format!("so({})", n))
}
