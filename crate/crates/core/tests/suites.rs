use qdeform_core::checks::{self, Report};
use qdeform_core::exterior::{self, Normalization};
use qdeform_core::{qcoeff, Model, Scalar};

fn failing(r: &Report) -> Vec<String> {
    r.failures().map(|o| o.name.clone()).collect()
}

fn assert_clean(r: &Report) {
    assert!(r.all_pass(), "{}", r.render());
    assert!(!r.outcomes.is_empty());
}

#[test]
fn braid_identities_hold() {
    for m in [
        Model::gl(2),
        Model::gl(3),
        Model::gl(4),
        Model::so(3),
        Model::so(4),
    ] {
        assert_clean(&checks::braid_suite(&m));
    }
}

#[test]
fn projector_towers_gl() {
    for n in 2..=3 {
        assert_clean(&checks::projector_suite(&Model::gl(n), 4));
    }
}

#[test]
fn projector_towers_so_fail_only_on_slotwise_conjugation() {
    for n in 3..=4 {
        let r = checks::projector_suite(&Model::so(n), 4);
        let bad = failing(&r);
        assert_eq!(bad.len(), 2, "{}", r.render());
        assert!(
            bad.iter().all(|b| b.contains("slot-wise pairing")),
            "{:?}",
            bad
        );
        assert!(r
            .outcomes
            .iter()
            .any(|o| o.name.contains("nested contraction") && o.pass));
    }
}

#[test]
fn epsilon_gl() {
    for n in 2..=4 {
        assert_clean(&checks::epsilon_suite(
            &Model::gl(n),
            Normalization::Tabulated,
            4,
            7,
        ));
    }
}

#[test]
fn epsilon_so3_fails_only_on_literal_d0() {
    let r = checks::epsilon_suite(&Model::so(3), Normalization::Tabulated, 3, 7);
    assert_eq!(
        failing(&r),
        vec!["so(3): d_0 closed form with [2]_{q^(1/2)}".to_string()]
    );
}

#[test]
fn epsilon_so4_known_discrepancies() {
    let r = checks::epsilon_suite(&Model::so(4), Normalization::Tabulated, 4, 7);
    let bad = failing(&r);
    assert_eq!(bad.len(), 2, "{}", r.render());
    let tab = r
        .failures()
        .find(|o| o.name.contains("tabulated"))
        .expect("table row");
    assert!(
        tab.detail
            .contains("[1, -1, 2, -2]: computed 1 vs tabulated q"),
        "{}",
        tab.detail
    );
}

#[test]
fn so4_single_entry_disagreement() {
    let t = exterior::epsilon_table(&Model::so(4), Normalization::Tabulated).unwrap();
    let mm = checks::tabulated_mismatches(&t).unwrap();
    assert_eq!(mm.len(), 1);
    assert_eq!(mm[0].0, vec![1, -1, 2, -2]);
    assert_eq!(mm[0].1, Scalar::one());
    assert_eq!(mm[0].2, Scalar::q());
}

#[test]
fn hodge_and_laplacian_so3() {
    let m = Model::so(3);
    assert_clean(&checks::hodge_suite(&m, None));
    assert_clean(&checks::laplacian_suite(&m, None));
}

#[test]
fn hodge_and_laplacian_so4() {
    let m = Model::so(4);
    assert_clean(&checks::hodge_suite(&m, None));
    assert_clean(&checks::laplacian_suite(&m, None));
}

#[test]
fn coefficients_up_to_six() {
    for n in 3..=6 {
        assert_clean(&checks::coefficient_suite(n));
    }
}

#[test]
fn calculus_engine() {
    for m in [Model::gl(2), Model::gl(3), Model::so(3), Model::so(4)] {
        assert_clean(&checks::calculus_suite(&m, 11));
    }
}

#[test]
fn selftest_and_scalars() {
    assert_clean(&checks::selftest(5));
    assert_clean(&checks::scalar_suite(5));
}

#[test]
fn rho_values() {
    let rho = |n| {
        let t = exterior::epsilon_table(&Model::so(n), Normalization::Tabulated).unwrap();
        qdeform_core::diffcalc::rho(&t).unwrap()
    };
    assert_eq!(rho(3), Scalar::one());
    let half = (Scalar::q() + Scalar::q_pow(-1)) / Scalar::from_int(2);
    assert_eq!(rho(4), &half * &half);
    let d =
        qcoeff::d0_full_base(&Model::so(4)).unwrap() / qcoeff::d0_canonical(&Model::so(4)).unwrap();
    assert_eq!(rho(4), d);
}
