use proptest::prelude::*;

use super::*;
use crate::rat::rat;

fn p(i: usize) -> TruncSeries {
    TruncSeries::var(Family::P, Caps::default(), i - 1)
}

fn beta() -> TruncSeries {
    TruncSeries::monomial(Family::P, Caps::default(), Monomial::aux(1), Rat::one())
}

fn one() -> TruncSeries {
    TruncSeries::one(Family::P, Caps::default())
}

#[test]
fn add_examples() {
    assert!((&p(1) + &(-&p(1))).is_zero());
    let s = &(&one() + &p(1)) + &p(2);
    assert_eq!(s.len(), 3);
    assert_eq!(s.coeff(&Monomial::var(1)), Rat::one());
    let half = p(1).pow(2).scale(&rat(1, 2));
    assert_eq!(&half + &half, p(1).pow(2));
}

#[test]
fn mul_examples() {
    let pp = &p(1) * &p(2);
    assert_eq!(pp.coeff(&Monomial::from_indices(0, &[0, 1])), Rat::one());
    let x = &one() + &(&beta() * &p(1));
    let sq = &x * &x;
    assert_eq!(sq.coeff(&Monomial::new(1, vec![1])), rint(2));
    assert_eq!(sq.coeff(&Monomial::new(2, vec![2])), Rat::one());
    assert_eq!(sq.len(), 3);
    let capped = TruncSeries::var(Family::P, Caps::new(1, 5), 0);
    assert!((&capped * &capped).is_zero());
}

#[test]
fn family_mismatch_is_an_error() {
    let t = TruncSeries::var(Family::TQ, Caps::default(), 0);
    assert!(matches!(p(1).checked_add(&t), Err(Error::FamilyMismatch(..))));
    assert!(p(1).checked_mul(&t).is_err());
}

#[test]
fn partial_examples() {
    let d = p(2).pow(2).partial(Var::Index(1));
    assert_eq!(d, p(2).scale(&rint(2)).with_caps(d.caps()));
    assert_eq!(d.caps().weight, Caps::DEFAULT_WEIGHT - 2);
    let t0 = TruncSeries::var(Family::TQ, Caps::default(), 0);
    let t1 = TruncSeries::var(Family::TQ, Caps::default(), 1);
    assert_eq!((&t0 * &t1).partial(Var::Index(0)).terms(), t1.terms());
    assert!(p(2).partial(Var::Index(0)).is_zero());
    let b2 = beta().pow(2).partial(Var::Aux);
    assert_eq!(b2.coeff(&Monomial::aux(1)), rint(2));
}

#[test]
fn diffop_examples() {
    let d1 = DiffOp::d(0);
    assert_eq!(d1.apply(&p(1).pow(2)).terms(), p(1).scale(&rint(2)).terms());
    // D_(2) = 1/2 d1^2 + d2 and D_(1,1) = 1/2 d1^2 - d2.
    let dd = |sign: i64| {
        let mut op = DiffOp::zero();
        op.add_term(Monomial::one(), vec![2], rat(1, 2));
        op.add_term(Monomial::one(), vec![0, 1], rint(sign));
        op
    };
    assert_eq!(dd(1).apply(&p(1).pow(2)).constant_term(), Rat::one());
    assert_eq!(dd(-1).apply(&p(2)).constant_term(), rint(-1));
}

#[test]
fn poly_view_agrees_with_operator_view() {
    let poly = &p(1).pow(2).scale(&rat(1, 2)) + &p(2);
    let op = DiffOp::from_poly(&poly);
    assert_eq!(op.to_poly(&poly).unwrap(), poly);
    let tau = &(&p(1).pow(2) + &p(2)) + &(&p(1) * &p(2));
    let mut manual = DiffOp::zero();
    manual.add_term(Monomial::one(), vec![2], rat(1, 2));
    manual.add_term(Monomial::one(), vec![0, 1], Rat::one());
    assert_eq!(op.apply(&tau), manual.apply(&tau));
}

#[test]
fn identity_substitution_and_zero() {
    let s = &(&p(1) * &p(3)) + &(&beta() * &p(2));
    let id = Substitution::identity(Family::P, Caps::default(), 4);
    assert_eq!(s.substitute(&id).unwrap(), s);
    let z = TruncSeries::zero(Family::P, Caps::default());
    assert!(z.substitute(&id).unwrap().is_zero());
}

#[test]
fn non_triangular_substitution_rejected() {
    // p_2 -> t_0 lowers the weight.
    let img0 = TruncSeries::var(Family::TQ, Caps::default(), 0);
    let img1 = TruncSeries::var(Family::TQ, Caps::default(), 0);
    let r = Substitution::new(Family::TQ, Caps::default(), 2, vec![img0, img1]);
    assert!(matches!(r, Err(Error::NonTriangular(1, 1, 2))));
}

#[test]
fn exp_log_inverse() {
    let x = &(&p(1) + &(&beta() * &p(2))).with_caps(Caps::new(6, 4)) + &p(3).with_caps(Caps::new(6, 4));
    let e = x.exp().unwrap();
    assert_eq!(e.log().unwrap(), x);
    assert!(one().exp().is_err());
    let unbounded = TruncSeries::var(Family::P, Caps::unbounded(), 0);
    assert_eq!(unbounded.exp(), Err(Error::Divergent));
}

#[test]
fn json_roundtrip_is_bit_exact() {
    let s = &(&p(1).pow(2).scale(&rat(-3, 7)) + &beta()) + &p(4);
    let text = s.to_json();
    let back = TruncSeries::from_json(&text).unwrap();
    assert_eq!(back, s);
    assert_eq!(back.to_json(), text);
    assert!(text.contains("\"coeff\":\"-3/7\""));
    assert!(text.contains("\"family\":\"P\""));
}

fn small_series(caps: Caps) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec((0i32..3, prop::collection::vec(0u16..3, 0..4), -5i64..6, 1i64..4), 0..6).prop_map(
        move |terms| {
            TruncSeries::from_terms(
                Family::P,
                caps,
                terms.into_iter().map(|(a, e, n, d)| (Monomial::new(a, e), rat(n, d))),
            )
        },
    )
}

fn caps() -> Caps {
    Caps::new(7, 4)
}

proptest! {
    #[test]
    fn ring_axioms(a in small_series(caps()), b in small_series(caps()), c in small_series(caps())) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn leibniz(a in small_series(caps()), b in small_series(caps()), i in 0usize..3) {
        let lhs = (&a * &b).partial(Var::Index(i));
        let rhs = &(&a.partial(Var::Index(i)) * &b) + &(&a * &b.partial(Var::Index(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_morphism(a in small_series(caps()), b in small_series(caps()), k in -2i64..3) {
        // p_1 -> p_1 + k p_2 + p_1 p_2, p_2 -> p_2 - p_1^2, p_3 -> p_3 + k p_1 p_2
        let c = caps();
        let v = |i| TruncSeries::var(Family::P, c, i);
        let img0 = &(&v(0) + &v(1).scale(&rint(k))) + &(&v(0) * &v(1));
        let img1 = &v(1) - &(&v(0) * &v(0));
        let img2 = &v(2) + &(&v(0) * &v(1)).scale(&rint(k));
        let sub = Substitution::new(Family::P, c, 1, vec![img0, img1, img2]).unwrap();
        let lhs = (&a * &b).substitute(&sub).unwrap();
        let rhs = &a.substitute(&sub).unwrap() * &b.substitute(&sub).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_roundtrip(a in small_series(caps())) {
        prop_assert_eq!(TruncSeries::from_json(&a.to_json()).unwrap(), a);
    }
}
