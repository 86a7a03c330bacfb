use super::*;
use crate::rat::rat;

fn b(idx: &[usize]) -> Rat {
    bracket(idx).unwrap()
}

#[test]
fn low_genus_brackets() {
    assert_eq!(b(&[0, 0, 0]), rat(1, 1));
    assert_eq!(b(&[1, 0, 0, 0]), rat(1, 1));
    assert_eq!(b(&[2]), rat(1, 24));
    assert_eq!(b(&[1]), rat(0, 1));
    assert_eq!(b(&[2, 2]), rat(0, 1));
}

#[test]
fn genus_two_values() {
    let cases: [(&[usize], Rat); 7] = [
        (&[6], rat(1, 1920)),
        (&[2, 5], rat(19, 5760)),
        (&[3, 4], rat(11, 1920)),
        (&[2, 2, 4], rat(37, 1440)),
        (&[2, 3, 3], rat(5, 144)),
        (&[2, 2, 2, 3], rat(5, 24)),
        (&[2, 2, 2, 2, 2], rat(25, 16)),
    ];
    for (idx, want) in cases {
        assert_eq!(b(idx), want, "{idx:?}");
    }
}

#[test]
fn bracket_is_symmetric() {
    assert_eq!(b(&[5, 2]), b(&[2, 5]));
    assert_eq!(b(&[3, 2, 3]), b(&[2, 3, 3]));
}

#[test]
fn genus_rule() {
    assert_eq!(bracket_genus(&[0, 0, 0]), Some(0));
    assert_eq!(bracket_genus(&[2]), Some(1));
    assert_eq!(bracket_genus(&[6]), Some(2));
    assert_eq!(bracket_genus(&[1]), None);
    assert_eq!(bracket_genus(&[]), None);
}

#[test]
fn alternating_sum_starts_at_psi_d() {
    for d in 0..=8 {
        assert!(lowest_order_identity_check(d), "d = {d}");
    }
    let first: Vec<Rat> = (0..3).map(|k| alternating_moment(1, 1 + k)).collect();
    assert_eq!(first, vec![rat(1, 1), rat(3, 1), rat(7, 1)]);
    let second: Vec<Rat> = (0..3).map(|k| alternating_moment(2, 2 + k)).collect();
    assert_eq!(second, vec![rat(1, 1), rat(6, 1), rat(25, 1)]);
}

#[test]
fn derivative_transform_inverts_jacobian() {
    assert!(derivative_transform_check(10));
}

#[test]
fn coefficient_conversion_round_trips() {
    let (m, c) = bracket_to_coefficient(&[2, 2, 2, 2, 2], &rat(25, 16));
    assert_eq!(c, rat(25, 16 * 120));
    assert_eq!(coefficient_to_bracket(&m, &c), (vec![2, 2, 2, 2, 2], rat(25, 16)));
}

#[test]
fn unstable_part_transforms_to_closed_form() {
    let caps = Caps::new(8, 4);
    let direct = chvar_pic(&lp2_h_unst(caps), -1).unwrap();
    let closed = lp2_h_unst_transformed(direct.caps());
    assert_eq!(direct, closed);
}

#[test]
fn stable_part_starts_at_q() {
    let caps = Caps::new(8, 6);
    let img = chvar_pic(&h_stable(caps).unwrap(), 1).unwrap();
    assert!(img.min_aux().unwrap() >= 1);
    // Negative floor violations are reported, not silently truncated.
    assert!(matches!(chvar_pic(&lp2_h_unst(caps), 0), Err(Error::NegativeAux(-1, 0))));
}

#[test]
fn brackets_are_the_q_coefficient_of_stable_part() {
    let caps = Caps::new(10, 7);
    let img = chvar_pic(&h_stable(caps).unwrap(), 1).unwrap();
    let lin = img.aux_coefficient(1);
    let mut checked = 0;
    for idx in bracket_index_sets(10) {
        let g = bracket_genus(&idx).unwrap();
        if g > 2 || idx.len() > 3 || idx.iter().sum::<usize>() > 9 {
            continue;
        }
        let (m, c) = bracket_to_coefficient(&idx, &b(&idx));
        assert_eq!(lin.coeff(&m), c, "{idx:?}");
        checked += 1;
    }
    assert!(checked > 5);
}

#[test]
fn lp2h_q_inverse_coefficient_is_u() {
    let caps = Caps::new(9, 8);
    let lp2h = l_p(&l_p(&assemble_h_onepart(caps).unwrap()));
    let img = chvar_pic(&lp2h, -1).unwrap();
    let u = u_series(&f_series(11).unwrap());
    let w = img.caps().weight.min(u.caps().weight);
    let lhs = img.aux_coefficient(-1).truncate(Caps::new(w, 0));
    let rhs = u.truncate(Caps::new(w, 0));
    assert!(!rhs.is_zero());
    assert_eq!(lhs, rhs);
}

#[test]
fn string_and_dilaton() {
    let f = f_series(12).unwrap();
    assert!(string_check(&f));
    assert!(dilaton_check(&f));
}

#[test]
fn lt_identities() {
    let f = f_series(11).unwrap();
    assert_eq!(lt_identities_check(&f), (true, true));
}

#[test]
fn lt_is_image_of_lp() {
    let caps = Caps::new(8, 7);
    assert!(lt_morphism_check(&h_stable(caps).unwrap(), 1).unwrap());
}

#[test]
fn u_satisfies_equations() {
    let u = u_in_t_variables(12).unwrap();
    let eqs = [(2, 2), (2, 3), (3, 3), (2, 4)];
    let res = theorem2_residuals(&u, &eqs, &[rat(0, 1), rat(1, 1)]).unwrap();
    for r in res {
        assert!(r.hirota_zero && r.lkp_zero, "{r:?}");
        assert!(r.checked_weight >= 2);
    }
}

#[test]
fn genus_two_table_defaults() {
    let t = bracket_table(2, 2).unwrap();
    let idx: Vec<Vec<usize>> = t.iter().map(|x| x.indices.clone()).collect();
    assert_eq!(idx.len(), 7);
    assert!(idx.contains(&vec![2, 2, 2, 2, 2]));
    assert!(t.iter().all(|x| x.genus == Some(2)));
}
