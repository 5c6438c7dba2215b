use cqg_core::corep::IrrepRegistry;
use cqg_core::dsl::parse_poly;
use cqg_core::dual::{DualContext, DualElement};
use cqg_core::haar::compute_haar;
use cqg_core::hopf::CqgAlgebra;
use cqg_core::ncalg::{Letter, NcPoly, Word};
use cqg_core::presets::su_q_2;
use cqg_core::scalar::Matrix;
use cqg_core::Scalar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

/// `(a + b i) q^k / (c + d q)` with small integers.
fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, -4i64..=4, -2i32..=2, 1i64..=3, -2i64..=2).prop_map(|(a, b, k, c, d)| {
        let num = &Scalar::from_int(a) + &(&Scalar::from_int(b) * &Scalar::i());
        let den = &Scalar::from_int(c) + &(&Scalar::from_int(d) * &Scalar::q());
        (&num * &Scalar::q_pow(k)).checked_div(&den).unwrap()
    })
}

fn su2() -> &'static CqgAlgebra {
    static ALG: OnceLock<CqgAlgebra> = OnceLock::new();
    ALG.get_or_init(su_q_2)
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0 as Letter..4, 0..=max).prop_map(|l| Word::from_letters(&l))
}

fn su2_poly() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((word(3), scalar()), 1..=3).prop_map(|terms| {
        let mut p = NcPoly::zero();
        for (w, s) in terms {
            p.add_term(w, s);
        }
        su2().presentation().normal_form(&p).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn normal_form_is_idempotent_and_associative(x in su2_poly(), y in su2_poly(), z in su2_poly()) {
        let p = su2().presentation();
        prop_assert_eq!(p.normal_form(&x).unwrap(), x.clone());
        prop_assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
        prop_assert_eq!(p.star(&p.mul(&x, &y)), p.mul(&p.star(&y), &p.star(&x)));
        prop_assert_eq!(p.star(&p.star(&x)), x);
    }

    #[test]
    fn comultiplication_is_a_star_homomorphism(x in su2_poly(), y in su2_poly()) {
        let alg = su2();
        let p = alg.presentation();
        let dxy = alg.comultiply(&p.mul(&x, &y)).unwrap();
        let dx = alg.comultiply(&x).unwrap();
        let dy = alg.comultiply(&y).unwrap();
        prop_assert_eq!(dxy, p.t_mul(&dx, &dy));
        prop_assert_eq!(alg.comultiply(&p.star(&x)).unwrap(), p.t_star(&dx));
        let e = alg.counit(&p.mul(&x, &y)).unwrap();
        prop_assert_eq!(e, &alg.counit(&x).unwrap() * &alg.counit(&y).unwrap());
    }

    #[test]
    fn polynomial_text_round_trip(x in su2_poly()) {
        let p = su2().presentation();
        prop_assert_eq!(parse_poly(p, &p.fmt_poly(&x)).unwrap(), x);
    }
}

fn su2_dual() -> &'static DualContext {
    static CTX: OnceLock<DualContext> = OnceLock::new();
    CTX.get_or_init(|| {
        let alg = su2();
        let mut reg = IrrepRegistry::new(alg).unwrap();
        reg.fusion_table(alg, 2).unwrap();
        let t = compute_haar(alg, 4).unwrap();
        DualContext::new(&reg, alg, &t).unwrap()
    })
}

fn random_element(ctx: &DualContext, seed: u64) -> DualElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = DualElement::zero();
    for b in ctx.blocks() {
        let vals: Vec<Scalar> = (0..b.dim * b.dim)
            .map(|_| &Scalar::from_int(rng.gen_range(-3..=3)) + &(&Scalar::from_int(rng.gen_range(-3..=3)) * &Scalar::i()))
            .collect();
        w.set(b.label, Matrix::from_fn(b.dim, b.dim, |i, j| vals[i * b.dim + j].clone()));
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dual_star_is_an_antilinear_antimultiplicative_involution(s1 in any::<u64>(), s2 in any::<u64>()) {
        let ctx = su2_dual();
        let (w, z) = (random_element(ctx, s1), random_element(ctx, s2));
        let ws = ctx.star(&w).unwrap();
        prop_assert_eq!(ctx.star(&ws).unwrap(), w.clone());
        let zs = ctx.star(&z).unwrap();
        prop_assert_eq!(ctx.star(&ctx.convolve(&w, &z).unwrap()).unwrap(), ctx.convolve(&zs, &ws).unwrap());
        prop_assert_eq!(ctx.star(&w.scale(&Scalar::i())).unwrap(), ws.scale(&-Scalar::i()));
    }
}
