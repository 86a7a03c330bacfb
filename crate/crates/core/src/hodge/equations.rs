//! KP equations on the simple series pushed through the change of
//! variables, their conjugation by `exp(l)`, and the displayed equations on
//! the graded generating series.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hierarchy::{kp_expression, DerivExpr, Factor};
use crate::hurwitz::h_unst_simple;
use crate::rat::{rat, rfactorial, rint, rpow, Rat};
use crate::series::{Caps, TruncSeries};

use super::elsv::elsv_chvar_coefficient;
use super::ops::AlphaTable;

/// `d/dp_b = b^{b-1} sum_{d<b} u^{3b+2d+1} / (b-d-1)! d/dt_d`, as
/// `(u power, d, coefficient)`.
pub fn derivative_transform_elsv(b: usize) -> Vec<(i32, usize, Rat)> {
    let lead = rpow(&rint(b as i64), b as u32 - 1);
    (0..b)
        .map(|d| ((3 * b + 2 * d + 1) as i32, d, &lead / rfactorial((b - d - 1) as u64)))
        .collect()
}

/// The derivative transform inverts the Jacobian of the change of
/// variables for `b, b' <= n`.
pub fn derivative_transform_elsv_check(n: usize) -> bool {
    (1..=n).all(|b| {
        (1..=n).all(|b2| {
            let mut total = Rat::zero();
            for (u, d, c) in derivative_transform_elsv(b) {
                let m = elsv_chvar_coefficient(d, b2);
                if m.is_zero() {
                    continue;
                }
                // u powers: (3b + 2d + 1) - (3b' + 2d + 1) = 3(b - b')
                debug_assert_eq!(u - (3 * b2 + 2 * d + 1) as i32, 3 * (b as i32 - b2 as i32));
                total += c * m;
            }
            total == if b == b2 { Rat::one() } else { Rat::zero() }
        })
    })
}

/// `d^alpha H_unst` at `p = 0`, as `(beta power, value)`, for a multi-index
/// of order two; first-order derivatives are not constant.
fn unstable_constant(alpha: &[u16], unst: &TruncSeries) -> Result<Option<(i32, Rat)>> {
    let order: u16 = alpha.iter().sum();
    match order {
        0 | 1 => Err(Error::OutOfRange("equation contains derivatives of order below two".into())),
        2 => {
            let hit = unst.terms().iter().find(|(m, _)| m.exps == alpha);
            Ok(hit.map(|(m, c)| (m.aux, c * m.factorial_of_exps())))
        }
        _ => Ok(None),
    }
}

/// `KP_{i,j}` with `H = H_st + H_unst` expanded: the symbol `F` now stands
/// for `H_st` and the auxiliary power is the power of `beta`.
pub fn kp_hat(i: usize, j: usize) -> Result<DerivExpr> {
    let kp = kp_expression(i, j)?;
    let unst = h_unst_simple(Caps::new(2 * (i + j) as u64, 4 * (i + j) as i32));
    let mut out = DerivExpr::zero();
    for (aux, factors, c) in kp.terms() {
        let mut term = DerivExpr::constant(c.clone()).shift_aux(aux);
        for f in factors {
            let mut piece = DerivExpr::symbol(f.clone());
            if let Some((e, v)) = unstable_constant(&f.derivs, &unst)? {
                piece = piece.add(&DerivExpr::constant(v).shift_aux(e));
            }
            term = term.mul(&piece);
        }
        out = out.add(&term);
    }
    Ok(out)
}

type XiPoly = BTreeMap<(i32, Vec<u16>), Rat>;

fn xi_mul(a: &XiPoly, b: &XiPoly) -> XiPoly {
    let mut out = XiPoly::new();
    for ((u1, e1), c1) in a {
        for ((u2, e2), c2) in b {
            let mut e = vec![0; e1.len().max(e2.len())];
            for (i, x) in e1.iter().enumerate() {
                e[i] += x;
            }
            for (i, x) in e2.iter().enumerate() {
                e[i] += x;
            }
            *out.entry((u1 + u2, e)).or_insert_with(Rat::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `d^alpha` in `p` rewritten in `t` derivatives with `u` powers.
fn transform_factor(alpha: &[u16]) -> XiPoly {
    let mut acc = XiPoly::from([((0, Vec::new()), Rat::one())]);
    for (idx, &e) in alpha.iter().enumerate() {
        let mut single = XiPoly::new();
        for (u, d, c) in derivative_transform_elsv(idx + 1) {
            single.insert((u, Factor::from_indices(0, &[d]).derivs), c);
        }
        for _ in 0..e {
            acc = xi_mul(&acc, &single);
        }
    }
    acc
}

/// `KP-bar_{i,j}`: [`kp_hat`] in `t` derivatives, divided by the lowest
/// power of `u`, with `u^2` renamed `z`. The symbol `F` stands for the
/// transformed stable series.
pub fn kp_bar(i: usize, j: usize) -> Result<DerivExpr> {
    let hat = kp_hat(i, j)?;
    let mut in_u = DerivExpr::zero();
    for (aux, factors, c) in hat.terms() {
        if factors.is_empty() {
            return Err(Error::NonzeroConstant);
        }
        let mut term = DerivExpr::constant(c.clone()).shift_aux(3 * aux);
        for f in factors {
            let mut piece = DerivExpr::zero();
            for ((u, e), v) in transform_factor(&f.derivs) {
                piece.add_term(u, vec![Factor::new(0, e)], v);
            }
            term = term.mul(&piece);
        }
        in_u = in_u.add(&term);
    }
    let lo = in_u.terms().map(|(a, _, _)| a).min().unwrap_or(0);
    let mut out = DerivExpr::zero();
    for (a, factors, c) in in_u.terms() {
        let rel = a - lo;
        if rel % 2 != 0 {
            return Err(Error::OutOfRange(format!("odd relative power u^{rel}")));
        }
        out.add_term(rel / 2, factors.to_vec(), c.clone());
    }
    Ok(out)
}

/// `exp(D) xi^gamma` through `z^max_z`, where `D` is the derivation
/// `sum_k z^k sum_n alpha_{n,n+k} xi_{n+k} d/dxi_n` induced by
/// `Q -> [Q, l]` on constant-coefficient operators.
pub fn conjugate_symbol(gamma: &[u16], max_z: u32, table: &mut AlphaTable) -> BTreeMap<(u32, Vec<u16>), Rat> {
    let trim = |mut v: Vec<u16>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let mut out: BTreeMap<(u32, Vec<u16>), Rat> = BTreeMap::new();
    let mut current: BTreeMap<(u32, Vec<u16>), Rat> = BTreeMap::from([((0, trim(gamma.to_vec())), Rat::one())]);
    for p in 0..=max_z {
        for (k, c) in &current {
            *out.entry(k.clone()).or_insert_with(Rat::zero) += c;
        }
        if p == max_z {
            break;
        }
        let mut next: BTreeMap<(u32, Vec<u16>), Rat> = BTreeMap::new();
        for ((z, e), c) in &current {
            for (n, &en) in e.iter().enumerate() {
                if en == 0 {
                    continue;
                }
                for k in 1..=(max_z - z) as usize {
                    let a = table.alpha(n, k);
                    if a.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[n] -= 1;
                    if e2.len() <= n + k {
                        e2.resize(n + k + 1, 0);
                    }
                    e2[n + k] += 1;
                    let v = c * a * rint(en as i64) / rint(p as i64 + 1);
                    *next.entry((z + k as u32, trim(e2))).or_insert_with(Rat::zero) += v;
                }
            }
        }
        current = next;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficient of `z^k` in `exp(-l) KP-bar_{i,j}(exp(l) F)` with
/// `F = sum_j (-z)^j F^{(j)}`: a finite equation whose field `j` is
/// `F^{(j)}`.
pub fn conjugated_equation(i: usize, j: usize, k: u32) -> Result<DerivExpr> {
    let bar = kp_bar(i, j)?;
    let mut table = AlphaTable::new();
    let mut out = DerivExpr::zero();
    for (a, factors, c) in bar.terms() {
        if a as i64 > k as i64 {
            continue;
        }
        let budget = k - a as u32;
        let mut term = DerivExpr::constant(c.clone()).shift_aux(a);
        for f in factors {
            let mut piece = DerivExpr::zero();
            for ((z, g), v) in conjugate_symbol(&f.derivs, budget, &mut table) {
                for field in 0..=(budget - z) {
                    let sign = if field % 2 == 0 { v.clone() } else { -v.clone() };
                    piece.add_term((z + field) as i32, vec![Factor::new(field as u8, g.clone())], sign);
                }
            }
            term = term.mul(&piece);
        }
        out = out.add(&term);
    }
    Ok(out.aux_coefficient(k as i32))
}

/// One of the displayed equations `F_{d',d''} = sum_r z^r (...)`, each
/// right-hand term a product of pure `t_0` derivatives.
#[derive(Debug, Clone)]
pub struct DisplayedEquation {
    pub name: &'static str,
    /// Highest power of `z` displayed.
    pub max_z: u32,
    /// `F_{d',d''} - rhs`, with field 0 the graded series.
    pub residual: DerivExpr,
}

fn t0_term(orders: &[u16]) -> Vec<Factor> {
    orders.iter().map(|&o| Factor::new(0, vec![o])).collect()
}

fn displayed(name: &'static str, lhs: (usize, usize), rhs: &[(i32, (i64, i64), &[u16])]) -> DisplayedEquation {
    let mut e = DerivExpr::field(0, &[lhs.0, lhs.1]);
    let mut max_z = 0;
    for &(z, (p, q), orders) in rhs {
        e.add_term(z, t0_term(orders), -rat(p, q));
        max_z = max_z.max(z as u32);
    }
    DisplayedEquation { name, max_z, residual: e }
}

/// The five displayed equations, through the displayed powers of `z`.
pub fn displayed_equations() -> Vec<DisplayedEquation> {
    vec![
        displayed(
            "F_{0,1}",
            (0, 1),
            &[
                (0, (1, 2), &[2, 2]),
                (0, (1, 12), &[4]),
                (1, (-1, 24), &[3, 3]),
                (1, (-1, 720), &[6]),
                (2, (1, 720), &[3, 5]),
                (2, (1, 360), &[4, 4]),
                (2, (1, 30240), &[8]),
            ],
        ),
        displayed(
            "F_{0,2}",
            (0, 2),
            &[
                (0, (1, 6), &[2, 2, 2]),
                (0, (1, 12), &[2, 4]),
                (0, (1, 24), &[3, 3]),
                (0, (1, 240), &[6]),
                (1, (-1, 24), &[2, 3, 3]),
                (1, (-1, 720), &[2, 6]),
                (1, (-7, 720), &[3, 5]),
                (1, (-1, 180), &[4, 4]),
                (1, (-1, 7560), &[8]),
            ],
        ),
        displayed(
            "F_{1,1}",
            (1, 1),
            &[
                (0, (1, 3), &[2, 2, 2]),
                (0, (1, 6), &[2, 4]),
                (0, (1, 24), &[3, 3]),
                (0, (1, 144), &[6]),
                (1, (-1, 12), &[2, 3, 3]),
                (1, (-1, 360), &[2, 6]),
                (1, (-13, 720), &[3, 5]),
                (1, (-1, 120), &[4, 4]),
                (1, (-1, 4320), &[8]),
            ],
        ),
        displayed(
            "F_{0,3}",
            (0, 3),
            &[
                (0, (1, 24), &[2, 2, 2, 2]),
                (0, (1, 24), &[2, 2, 4]),
                (0, (1, 24), &[2, 3, 3]),
                (0, (1, 240), &[2, 6]),
                (0, (1, 120), &[3, 5]),
                (0, (1, 160), &[4, 4]),
                (0, (1, 6720), &[8]),
            ],
        ),
        displayed(
            "F_{1,2}",
            (1, 2),
            &[
                (0, (1, 8), &[2, 2, 2, 2]),
                (0, (1, 8), &[2, 2, 4]),
                (0, (1, 12), &[2, 3, 3]),
                (0, (1, 90), &[2, 6]),
                (0, (1, 60), &[3, 5]),
                (0, (23, 1440), &[4, 4]),
                (0, (1, 2880), &[8]),
            ],
        ),
    ]
}

/// Result of one displayed equation at one power of `z`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DisplayedCheck {
    pub name: &'static str,
    pub z: u32,
    pub holds: bool,
    /// t-weight through which the residual is exact.
    pub checked_weight: u64,
}

/// Checks every displayed power of `z` up to `max_z` on the graded series
/// `f` (auxiliary variable `z`). Only terms up to `z^r` enter the check at
/// order `r`, so the exact range is not eaten by unrelated high-order
/// derivatives.
pub fn displayed_checks(f: &TruncSeries, max_z: u32) -> Result<Vec<DisplayedCheck>> {
    let mut out = Vec::new();
    for eq in displayed_equations() {
        for r in 0..=eq.max_z.min(max_z) {
            let mut part = DerivExpr::zero();
            for (a, factors, c) in eq.residual.terms() {
                if a <= r as i32 {
                    part.add_term(a, factors.to_vec(), c.clone());
                }
            }
            let res = part.evaluate(std::slice::from_ref(f))?;
            let coeff = res.aux_coefficient(r as i32);
            out.push(DisplayedCheck { name: eq.name, z: r, holds: coeff.is_zero(), checked_weight: coeff.caps().weight });
        }
    }
    Ok(out)
}
