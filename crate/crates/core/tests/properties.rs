use num_rational::BigRational;
use proptest::prelude::*;

use qdeform_core::braid::braid;
use qdeform_core::exterior::{self, Reducer};
use qdeform_core::scalar::{rat, ExtScalar};
use qdeform_core::tensor::Tensor;
use qdeform_core::{Model, Scalar};

fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i32..7, -9i64..10, 1i64..5), 1..4).prop_map(|ts| {
        let terms: Vec<(i32, BigRational)> =
            ts.into_iter().map(|(e, n, d)| (e, rat(n, d))).collect();
        Scalar::laurent(&terms)
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { a / b })
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn small_tensor(up: usize, low: usize) -> impl Strategy<Value = Tensor> {
    let n = 2usize;
    let cells = n.pow((up + low) as u32);
    prop::collection::vec(prop::option::weighted(0.4, laurent()), cells).prop_map(move |vals| {
        let mut t = Tensor::zero(n, up, low);
        for (k, v) in vals.into_iter().enumerate() {
            if let Some(v) = v {
                let digits: Vec<u8> = (0..up + low).rev().map(|i| ((k >> i) & 1) as u8).collect();
                t.set(digits[..up].to_vec(), digits[up..].to_vec(), v);
            }
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(), b in nonzero()) {
        prop_assert_eq!(&(&a * &b) / &b, a.clone());
        prop_assert_eq!(&b * &b.recip().unwrap(), Scalar::one());
    }

    #[test]
    fn bar_is_an_involutive_ring_map(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn render_is_canonical(a in scalar()) {
        let back = Scalar::parse(&a.render()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.render(), a.render());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), v in 2i64..6) {
        let v = rat(v, 1);
        if let (Ok(x), Ok(y)) = (a.eval_v(&v), b.eval_v(&v)) {
            prop_assert_eq!((&a * &b).eval_v(&v).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).eval_v(&v).unwrap(), &x + &y);
        }
    }

    #[test]
    fn extension_norm_is_multiplicative(a in laurent(), b in laurent(), c in laurent(), d in laurent()) {
        let rho = Scalar::q() + Scalar::from_int(3);
        let x = ExtScalar::new(a, b, rho.clone());
        let y = ExtScalar::new(c, d, rho);
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
    }

    #[test]
    fn compose_is_associative(a in small_tensor(1, 1), b in small_tensor(1, 1), c in small_tensor(1, 1)) {
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn transpose_reverses_products(a in small_tensor(2, 2), b in small_tensor(2, 2)) {
        prop_assert_eq!(a.compose(&b).unwrap().transpose(), b.transpose().compose(&a.transpose()).unwrap());
    }

    #[test]
    fn kron_is_compatible_with_compose(a in small_tensor(1, 1), b in small_tensor(1, 1), c in small_tensor(1, 1), d in small_tensor(1, 1)) {
        let l = a.kron(&b).unwrap().compose(&c.kron(&d).unwrap()).unwrap();
        let r = a.compose(&c).unwrap().kron(&b.compose(&d).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn trace_is_cyclic(a in small_tensor(2, 2), b in small_tensor(2, 2)) {
        prop_assert_eq!(a.compose(&b).unwrap().trace().unwrap(), b.compose(&a).unwrap().trace().unwrap());
    }

    #[test]
    fn xi_reduction_is_order_independent(w in prop::collection::vec(0u8..3, 0..6), seed in any::<u64>()) {
        use rand::SeedableRng;
        let m = Model::so(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut red = Reducer::new(&m);
        prop_assert_eq!(exterior::reduce_random(&m, &w, &mut rng), red.reduce(&w));
    }

    #[test]
    fn rhat_inverse_at_rational_points(v in 2i64..5) {
        let b = braid(&Model::so(4));
        let p = b.rhat.compose(&b.rhat_inv).unwrap();
        let ev = p.map_values(|s| s.eval_v(&rat(v, 1)).map(Scalar::from_rational)).unwrap();
        prop_assert_eq!(ev, Tensor::identity(4, 2));
    }
}
