use super::*;
use crate::rat::rat;

fn op(g: u32, b: &[usize]) -> HurwitzQuery {
    HurwitzQuery::one_part(g, b).unwrap()
}

fn sq(g: u32, b: &[usize]) -> HurwitzQuery {
    HurwitzQuery::simple(g, b).unwrap()
}

#[test]
fn brute_force_examples() {
    for b in 1..=5 {
        assert_eq!(hurwitz_bruteforce(&op(0, &[b])).unwrap(), rat(1, b as i64));
    }
    assert_eq!(hurwitz_bruteforce(&op(0, &[1, 1])).unwrap(), rint(1));
    assert_eq!(hurwitz_bruteforce(&op(0, &[1, 1, 1])).unwrap(), rint(6));
    assert_eq!(hurwitz_bruteforce(&op(1, &[2])).unwrap(), rat(1, 2));
    assert_eq!(hurwitz_bruteforce(&op(1, &[3])).unwrap(), rint(2));
    assert_eq!(hurwitz_bruteforce(&op(1, &[1])).unwrap(), rint(0));
}

#[test]
fn brute_force_simple_examples() {
    for b in 1..=5usize {
        // b^(b-2) / b
        let expect = rpow(&rint(b as i64), b as u32) / rint((b * b * b) as i64);
        assert_eq!(hurwitz_bruteforce(&sq(0, &[b])).unwrap(), expect, "b = {b}");
    }
    assert_eq!(hurwitz_bruteforce(&sq(1, &[1])).unwrap(), rint(0));
    assert_eq!(hurwitz_frobenius(&sq(1, &[1])).unwrap(), rint(0));
}

#[test]
fn brute_force_bounds() {
    assert!(matches!(hurwitz_bruteforce(&op(0, &[6])), Err(Error::OutOfRange(_))));
    assert!(matches!(hurwitz_bruteforce(&op(4, &[1])), Err(Error::OutOfRange(_))));
    assert!(HurwitzQuery::one_part(0, &[]).is_err());
    assert!(HurwitzQuery::one_part(0, &[2, 0]).is_err());
}

#[test]
fn three_routes_agree_onepart() {
    let grid = onepart_grid(5, 7);
    assert!(grid.len() > 50);
    for q in grid {
        let b = hurwitz_bruteforce(&q).unwrap();
        assert_eq!(hurwitz_frobenius(&q).unwrap(), b, "{q:?}");
        assert_eq!(hurwitz_closed(&q).unwrap(), b, "{q:?}");
    }
}

#[test]
fn two_routes_agree_simple() {
    let grid = simple_grid(5, 7);
    assert!(grid.len() > 20);
    for q in grid {
        assert_eq!(hurwitz_frobenius(&q).unwrap(), hurwitz_bruteforce(&q).unwrap(), "{q:?}");
    }
}

#[test]
fn one_part_full_cycle_closed_form() {
    for d in 1..=10 {
        assert_eq!(hurwitz_frobenius(&op(0, &[d])).unwrap(), rat(1, d as i64));
    }
}

#[test]
fn onepart_unstable_part() {
    let caps = Caps::new(7, 4);
    let h = assemble_h_onepart(caps).unwrap();
    assert_eq!(genus_zero_unstable(&h, HurwitzKind::OnePart), h_unst_onepart(caps));
    // beta^2 p_3 coefficient: h_{1;3} / (2! * 3) = 1/3
    assert_eq!(h.coeff(&Monomial::from_indices(2, &[2])), rat(1, 3));
}

#[test]
fn onepart_closed_form_matches_series() {
    let caps = Caps::new(7, 5);
    let h = assemble_h_onepart(caps).unwrap();
    assert_eq!(l_p(&l_p(&h)), lp2h_closed_form(caps));
    let at_zero = lp2h_closed_form(caps).at_aux_zero();
    let sum_p = TruncSeries::from_terms(Family::P, caps, (0..7).map(|i| (Monomial::var(i), rint(1))));
    assert_eq!(at_zero, sum_p);
}

#[test]
fn simple_unstable_part() {
    let caps = Caps::new(6, 8);
    let h = assemble_h_simple(caps).unwrap();
    assert_eq!(genus_zero_unstable(&h, HurwitzKind::Simple), h_unst_simple(caps));
    let degree_one = h.retain(|m, _| m.weight() == 1);
    assert_eq!(degree_one, TruncSeries::var(Family::P, caps, 0));
}

#[test]
fn simple_series_matches_queries() {
    let caps = Caps::new(5, 7);
    let h = assemble_h_simple(caps).unwrap();
    for q in simple_grid(5, 7) {
        let b = q.partition();
        let m = q.branch_points();
        let mono = Monomial { aux: m as i32, exps: power_monomial(&b).exps };
        let from_series = h.coeff(&mono) * rfactorial(m as u64) * rbig(b.aut_order());
        assert_eq!(from_series, hurwitz_frobenius(&q).unwrap(), "{q:?}");
    }
}

#[test]
fn polynomiality() {
    let fit = polynomiality_check(1, 1, &[2, 3, 4, 5, 6], &[vec![7], vec![1], vec![9]]).unwrap();
    assert!(fit.holds);
    // h_{1;b} / (2! b) = (b^2 - 1) / 24
    assert_eq!(fit.poly.coeff(&[2]), rat(1, 24));
    assert_eq!(fit.poly.coeff(&[0]), rat(-1, 24));
    assert!(polynomiality_check(0, 1, &[1], &[vec![2], vec![7]]).unwrap().holds);
    assert!(polynomiality_check(0, 2, &[1, 2], &[vec![3, 4], vec![5, 1]]).unwrap().holds);
    let g0n3 = polynomiality_check(0, 3, &[1, 2, 3], &[vec![2, 2, 3], vec![3, 1, 3]]).unwrap();
    assert!(g0n3.holds);
    // h/(m! d) = <tau_0^3> = 1 in genus 0 with three points.
    assert_eq!(g0n3.poly.coeff(&[0, 0, 0]), rint(1));
    assert!(polynomiality_check(1, 2, &[1, 2, 3, 4], &[vec![5, 1], vec![2, 5]]).unwrap().holds);
    assert!(matches!(polynomiality_check(1, 1, &[2, 3], &[]), Err(Error::InsufficientPoints(_))));
}

#[test]
fn cache_round_trip() {
    let path = std::env::temp_dir().join(format!("tau-lab-cache-{}.jsonl", std::process::id()));
    let _ = std::fs::remove_file(&path);
    let q = op(1, &[3]);
    {
        let mut c = HurwitzCache::open(&path).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.get_or_compute(&q, Method::Frobenius).unwrap(), rint(2));
        assert_eq!(c.get_or_compute(&q, Method::Frobenius).unwrap(), rint(2));
    }
    let c = HurwitzCache::open(&path).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c.get(&q, Method::Frobenius), Some(&rint(2)));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn compositions_count() {
    for d in 1..=8 {
        assert_eq!(compositions(d).len(), 1 << (d - 1));
    }
}
