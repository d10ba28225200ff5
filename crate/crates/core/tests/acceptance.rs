//! One line per acceptance criterion. Known disagreements with the tabulated
//! values are printed as FAIL with their counterexample; the process fails
//! only if something outside that list fails.

use std::process::ExitCode;
use std::time::Instant;

use qdeform_core::checks::{self, Outcome, Report};
use qdeform_core::exterior::{self, Normalization};
use qdeform_core::projectors::build_projector;
use qdeform_core::{Model, Scalar, Sign};

/// Outcome names allowed to fail.
const KNOWN: &[&str] = &[
    "so(4): tabulated epsilon entries (26 nonzero)",
    "so(3): d_0 closed form with [2]_{q^(1/2)}",
    "so(4): d_0 closed form with [2]_{q^(1/2)}",
];

struct Criterion {
    id: usize,
    title: &'static str,
    outcomes: Vec<Outcome>,
    extra: Vec<String>,
}

impl Criterion {
    fn pass(&self) -> bool {
        !self.outcomes.is_empty() && self.outcomes.iter().all(|o| o.pass)
    }

    fn line(&self) -> String {
        let ms: u128 = self.outcomes.iter().map(|o| o.elapsed.as_millis()).sum();
        let mut s = format!(
            "{} criterion {}: {} ({} identities, {} ms)",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.outcomes.len(),
            ms
        );
        for o in self.outcomes.iter().filter(|o| !o.pass) {
            s.push_str(&format!("\n    {}: {}", o.name, o.detail));
        }
        for e in &self.extra {
            s.push_str(&format!("\n    {}", e));
        }
        s
    }
}

fn pick(reports: &[&Report], keys: &[&str]) -> Vec<Outcome> {
    reports
        .iter()
        .flat_map(|r| r.outcomes.iter())
        .filter(|o| keys.iter().any(|k| o.name.contains(k)))
        .cloned()
        .collect()
}

/// Whether the tabulated q at epsilon^{1,-1,2,-2} is compatible with the
/// eigenvector property.
fn tabulated_entry_breaks_eigenvector() -> bool {
    let m = Model::so(4);
    let t = exterior::epsilon_table(&m, Normalization::Tabulated).expect("table");
    let mut e = t.to_tensor();
    let w: Vec<u8> = [1, -1, 2, -2]
        .iter()
        .map(|&l| m.pos(l).expect("label"))
        .collect();
    e.set(w, vec![], Scalar::q());
    build_projector(&m, Sign::Minus, 4)
        .compose(&e)
        .expect("arity")
        != e
}

fn refs(v: &[Report]) -> Vec<&Report> {
    v.iter().collect()
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let gl: Vec<Model> = (2..=4).map(Model::gl).collect();
    let so: Vec<Model> = (3..=4).map(Model::so).collect();
    let tower = [Model::gl(2), Model::gl(3), Model::so(3), Model::so(4)];

    let braid: Vec<Report> = gl.iter().chain(&so).map(checks::braid_suite).collect();
    let proj: Vec<Report> = tower
        .iter()
        .map(|m| checks::projector_suite(m, 4))
        .collect();
    let mut eps: Vec<Report> = gl
        .iter()
        .map(|m| checks::epsilon_suite(m, Normalization::Tabulated, 4, 1))
        .collect();
    eps.push(checks::epsilon_suite(
        &Model::so(3),
        Normalization::Tabulated,
        3,
        1,
    ));
    eps.push(checks::epsilon_suite(
        &Model::so(4),
        Normalization::Tabulated,
        2,
        1,
    ));
    let coeff: Vec<Report> = (3..=6).map(checks::coefficient_suite).collect();
    let hodge: Vec<Report> = so.iter().map(|m| checks::hodge_suite(m, None)).collect();
    let lap: Vec<Report> = so
        .iter()
        .map(|m| checks::laplacian_suite(m, None))
        .collect();
    let calc: Vec<Report> = tower.iter().map(|m| checks::calculus_suite(m, 1)).collect();
    let selftest = checks::selftest(1);

    let eps_so: Vec<&Report> = eps[3..].iter().collect();
    let eps_gl23: Vec<&Report> = eps[..2].iter().collect();

    let mut crit = vec![
        Criterion {
            id: 1,
            title: "projector absorption, idempotency, traces (gl 2-3, so 3-4, l <= 4)",
            outcomes: pick(&refs(&proj), &["absorption", "idempotency", "trace = dim"]),
            extra: vec![],
        },
        Criterion {
            id: 2,
            title: "left and right recursions agree; l = 1 steps give the two-slot projectors",
            outcomes: pick(&refs(&proj), &["left and right recursions", "M^{+-,2}"]),
            extra: vec![],
        },
        Criterion {
            id: 3,
            title: "braid-layer identities (gl 2-4, so 3-4)",
            outcomes: pick(&refs(&braid), &[""]),
            extra: vec![],
        },
        Criterion {
            id: 4,
            title: "epsilon tables: so(3) 7 entries, so(4) 26 entries, gl(2-4) closed form",
            outcomes: pick(&refs(&eps), &["tabulated epsilon", "gl closed form"]),
            extra: vec![],
        },
        Criterion {
            id: 5,
            title: "epsilon properties and d_0 (so 3-4)",
            outcomes: pick(
                &eps_so,
                &[
                    "q-cyclicity",
                    "vanishing conditions",
                    "lowering and reversal",
                    "d_0 closed form",
                ],
            ),
            extra: vec![],
        },
        Criterion {
            id: 6,
            title:
                "antisymmetriser from epsilon (so(3) all l, so(4) l <= 2 and 4, gl(2-3) first line)",
            outcomes: {
                let mut v = pick(&eps_so, &["antisymmetriser from epsilon"]);
                v.extend(pick(
                    &eps_gl23,
                    &["antisymmetriser from epsilon, first form"],
                ));
                v
            },
            extra: vec![],
        },
        Criterion {
            id: 7,
            title: "Hodge coefficients (N = 3..6)",
            outcomes: pick(&refs(&coeff), &[""]),
            extra: vec![],
        },
        Criterion {
            id: 8,
            title: "Hodge involutivity in both modes, rho two ways (so 3-4)",
            outcomes: pick(&refs(&hodge), &["**", "rho_N"]),
            extra: vec![],
        },
        Criterion {
            id: 9,
            title: "Laplacian identity (so(3) all p, x-degree <= 2; so(4) p <= 1)",
            outcomes: pick(&refs(&lap), &[""]),
            extra: vec![],
        },
        Criterion {
            id: 10,
            title: "calculus engine: d^2 = 0, confluence, Lambda realisation",
            outcomes: pick(
                &refs(&calc),
                &["d^2 = 0", "confluence", "Lambda^-2", "overlap words"],
            ),
            extra: vec![],
        },
        Criterion {
            id: 11,
            title: "classical limits and finiteness at q = 1",
            outcomes: {
                let mut v = pick(&proj[..3].iter().collect::<Vec<_>>(), &["classical limit"]);
                v.extend(pick(
                    &proj[2..].iter().collect::<Vec<_>>(),
                    &["finite at q = 1"],
                ));
                v.extend(pick(&[&selftest], &["classical oracle"]));
                v
            },
            extra: vec![],
        },
        Criterion {
            id: 12,
            title: "epsilon eigenvector property (so 3-4, gl 2-4)",
            outcomes: pick(&refs(&eps), &["P^{-,N} eps = eps", "eps = -q^-1 eps"]),
            extra: vec![],
        },
    ];

    if let Some(c) = crit.iter_mut().find(|c| c.id == 4) {
        if tabulated_entry_breaks_eigenvector() {
            c.extra.push("with the tabulated value q in place, P^{-,4} eps != eps; the computed 1 satisfies it".into());
        }
    }
    if let Some(c) = crit.iter_mut().find(|c| c.id == 9) {
        let ok = lap[0].outcomes.iter().all(|o| {
            o.detail
                .split(' ')
                .next()
                .and_then(|n| n.parse::<usize>().ok())
                .is_some_and(|n| n >= 40)
        });
        if !ok {
            c.extra.push("fewer than 40 so(3) instances".into());
            c.outcomes.push(Outcome {
                name: "instance count".into(),
                pass: false,
                detail: String::new(),
                elapsed: Default::default(),
            });
        }
    }

    let mut unexpected = Vec::new();
    for c in &crit {
        println!("{}", c.line());
        for o in c.outcomes.iter().filter(|o| !o.pass) {
            if !KNOWN.contains(&o.name.as_str()) {
                unexpected.push(o.name.clone());
            }
        }
    }
    let passed = crit.iter().filter(|c| c.pass()).count();
    println!(
        "{} of {} criteria pass ({:.1} s)",
        passed,
        crit.len(),
        t0.elapsed().as_secs_f64()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {:?}", unexpected);
        ExitCode::FAILURE
    }
}
