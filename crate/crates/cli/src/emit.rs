//! Documents for `qdeform emit`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use num_rational::BigRational;
use serde::Serialize;

use qdeform_core::braid::braid;
use qdeform_core::exterior::{self, Normalization};
use qdeform_core::projectors::build_projector;
use qdeform_core::tensor::Tensor;
use qdeform_core::{qcoeff, Kind, Model, Scalar, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Object {
    Rhat,
    RhatInv,
    Metric,
    U,
    Pt,
    P2,
    Proj,
    Epsilon,
    Coeffs,
}

impl Object {
    pub fn name(self) -> &'static str {
        match self {
            Object::Rhat => "rhat",
            Object::RhatInv => "rhat-inv",
            Object::Metric => "metric",
            Object::U => "u",
            Object::Pt => "pt",
            Object::P2 => "p2",
            Object::Proj => "proj",
            Object::Epsilon => "epsilon",
            Object::Coeffs => "coeffs",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub object: Object,
    pub model: Model,
    pub level: Option<usize>,
    pub sign: Option<Sign>,
    pub normalization: Option<Normalization>,
    pub eval: Option<BigRational>,
}

#[derive(Serialize)]
pub struct Entry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub up: Vec<i32>,
    pub low: Vec<i32>,
    pub value: String,
}

#[derive(Serialize)]
pub struct Shape {
    pub dim: usize,
    pub up: usize,
    pub low: usize,
}

#[derive(Serialize)]
pub struct Document {
    pub object: String,
    pub algebra: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub params: BTreeMap<String, String>,
    pub shape: Shape,
    pub entries: Vec<Entry>,
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialisable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}({})", self.object, self.algebra, self.n);
        for (k, v) in &self.params {
            let _ = write!(s, " {}={}", k, v);
        }
        s.push('\n');
        let join = |v: &[i32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        for e in &self.entries {
            if let Some(n) = &e.name {
                let _ = write!(s, "{} ", n);
            }
            let _ = writeln!(s, "[{}] [{}] {}", join(&e.up), join(&e.low), e.value);
        }
        s
    }
}

/// Rejects combinations before any computation.
pub fn validate(r: &Request) -> Result<()> {
    let so = r.model.is_so();
    match r.object {
        Object::Metric | Object::Pt if !so => {
            bail!("{} exists only for so (got {})", r.object.name(), r.model)
        }
        Object::P2 if r.sign.is_none() => bail!("p2 needs --sign + or -"),
        Object::Proj if r.sign.is_none() || r.level.is_none() => {
            bail!("proj needs --sign and --level")
        }
        _ => {}
    }
    if r.sign.is_some() && !matches!(r.object, Object::P2 | Object::Proj) {
        bail!("--sign applies only to p2 and proj");
    }
    if r.level.is_some() && !matches!(r.object, Object::Proj | Object::Coeffs) {
        bail!("--level applies only to proj and coeffs");
    }
    if let Some(l) = r.level {
        if r.object == Object::Proj && r.model.n.pow(l as u32) > 1 << 16 {
            bail!(
                "proj level {} on N = {} exceeds the supported size (N^l <= 65536)",
                l,
                r.model.n
            );
        }
    }
    if r.normalization.is_some() && r.object != Object::Epsilon {
        bail!("--normalization applies only to epsilon");
    }
    if r.normalization == Some(Normalization::Tabulated) {
        qcoeff::gamma_tabulated(&r.model).map_err(|e| anyhow::anyhow!("{}", e))?;
    }
    Ok(())
}

fn labels(model: &Model, w: &[u8]) -> Vec<i32> {
    w.iter().map(|&p| model.label(p)).collect()
}

fn render(value: &Scalar, eval: Option<&BigRational>) -> Result<String> {
    match eval {
        None => Ok(value.render()),
        Some(q) => Ok(value
            .eval_q(q)
            .map_err(|e| anyhow::anyhow!("{}", e))?
            .to_string()),
    }
}

fn tensor_entries(model: &Model, t: &Tensor, eval: Option<&BigRational>) -> Result<Vec<Entry>> {
    t.entries()
        .map(|(u, l, v)| {
            Ok(Entry {
                name: None,
                up: labels(model, u),
                low: labels(model, l),
                value: render(v, eval)?,
            })
        })
        .collect()
}

fn coeff_list(model: &Model, level: usize) -> Result<Vec<(String, Vec<i32>, Scalar)>> {
    let n = model.n as u32;
    let mut out = Vec::new();
    for l in 1..=n {
        out.push(("b".to_string(), vec![l as i32], qcoeff::trace_b(model, l)?));
    }
    for s in [Sign::Plus, Sign::Minus] {
        for l in 1..=level as u32 {
            let (a, b, g) = qcoeff::recursion_coeffs(model, s, l);
            out.push((format!("alpha{}", s), vec![l as i32], a));
            out.push((format!("beta{}", s), vec![l as i32], b));
            if model.is_so() {
                out.push((format!("gamma{}", s), vec![l as i32], g));
            }
        }
    }
    if let Ok(g) = qcoeff::gamma_tabulated(model) {
        out.push(("epsilon-top".to_string(), vec![], g));
    }
    if model.kind == Kind::So {
        out.push(("Q".to_string(), vec![], qcoeff::big_q(model)?));
        let d0 = qcoeff::d0_canonical(model)?;
        for p in 0..=n {
            out.push(("c".to_string(), vec![p as i32], qcoeff::hodge_c(model, p)?));
            out.push(("d".to_string(), vec![p as i32], qcoeff::dee(model, p, &d0)?));
        }
        out.push((
            "laplacian-ratio".to_string(),
            vec![],
            qcoeff::laplacian_ratio(model),
        ));
        if let Ok(t) = exterior::epsilon_table(model, Normalization::Tabulated) {
            let rho = exterior::d0_from_epsilon(&t)? / d0;
            out.push(("rho".to_string(), vec![], rho));
        }
    }
    Ok(out)
}

pub fn build(r: &Request) -> Result<Document> {
    validate(r)?;
    let m = &r.model;
    let b = braid(m);
    let eval = r.eval.as_ref();
    let mut params = BTreeMap::new();
    if let Some(l) = r.level {
        params.insert("level".to_string(), l.to_string());
    }
    if let Some(s) = r.sign {
        params.insert("sign".to_string(), s.to_string());
    }
    if let Some(q) = eval {
        params.insert("q".to_string(), q.to_string());
    }
    let tensor = |t: &Tensor| -> Result<(Shape, Vec<Entry>)> {
        let shape = Shape {
            dim: m.n,
            up: t.up_arity(),
            low: t.low_arity(),
        };
        Ok((shape, tensor_entries(m, t, eval)?))
    };
    let (shape, mut entries) = match r.object {
        Object::Rhat => tensor(&b.rhat)?,
        Object::RhatInv => tensor(&b.rhat_inv)?,
        Object::U => tensor(&b.u)?,
        Object::Metric => tensor(b.metric()?)?,
        Object::Pt => tensor(b.pt()?)?,
        Object::P2 => tensor(b.p2(r.sign.expect("validated")))?,
        Object::Proj => tensor(&build_projector(
            m,
            r.sign.expect("validated"),
            r.level.expect("validated"),
        ))?,
        Object::Epsilon => {
            let norm = r.normalization.unwrap_or(Normalization::UnitTop);
            params.insert("normalization".to_string(), norm.to_string());
            let t = exterior::epsilon_table(m, norm)?;
            let entries = t
                .entries()
                .map(|(w, v)| {
                    Ok(Entry {
                        name: None,
                        up: labels(m, w),
                        low: vec![],
                        value: render(v, eval)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (
                Shape {
                    dim: m.n,
                    up: m.n,
                    low: 0,
                },
                entries,
            )
        }
        Object::Coeffs => {
            let level = r.level.unwrap_or(m.n);
            params.insert("level".to_string(), level.to_string());
            let entries = coeff_list(m, level)?
                .into_iter()
                .map(|(name, up, v)| {
                    let value = render(&v, eval)
                        .with_context(|| format!("coefficient {}{:?}", name, up))?;
                    Ok(Entry {
                        name: Some(name),
                        up,
                        low: vec![],
                        value,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (
                Shape {
                    dim: m.n,
                    up: 1,
                    low: 0,
                },
                entries,
            )
        }
    };
    entries.sort_by(|a, b| (&a.name, &a.up, &a.low).cmp(&(&b.name, &b.up, &b.low)));
    Ok(Document {
        object: r.object.name().to_string(),
        algebra: m.kind.to_string(),
        n: m.n,
        params,
        shape,
        entries,
    })
}
