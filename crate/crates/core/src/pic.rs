//! Psi-class brackets on the Picard compactification, extracted from one-part
//! Hurwitz numbers, and the change of variables relating the two generating
//! series.
//!
//! Families: `H` lives in family P with auxiliary `beta`; transformed series
//! live in family T_Q with auxiliary `q`, `q^2 = beta`, and indexed variable
//! `d` standing for `t_d`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hierarchy::{hirota_residual, lkp_residual};
use crate::hurwitz::{assemble_h_onepart, h_unst_onepart, hurwitz_frobenius, l_p, HurwitzQuery};
use crate::partition::partitions_of;
use crate::rat::{rat, rfactorial, rint, rpow, Rat};
use crate::series::{Caps, DiffOp, Family, Monomial, Substitution, TruncSeries, Var};

/// `(-1)^{d-b+1} / ((d-b+1)! (b-1)!)` for `1 <= b <= d+1`, else 0.
pub fn alternating_coefficient(d: usize, b: usize) -> Rat {
    if b == 0 || b > d + 1 {
        return Rat::zero();
    }
    let k = d + 1 - b;
    let sign = if k.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    sign / (rfactorial(k as u64) * rfactorial(b as u64 - 1))
}

/// Coefficient of `psi^k` in `sum_b c(d, b) / (1 - b psi)`, i.e.
/// `sum_b c(d, b) b^k`.
pub fn alternating_moment(d: usize, k: usize) -> Rat {
    (1..=d + 1).map(|b| alternating_coefficient(d, b) * rpow(&rint(b as i64), k as u32)).sum()
}

/// `sum_b c(d, b) / (1 - b psi) = psi^d + O(psi^{d+1})`.
pub fn lowest_order_identity_check(d: usize) -> bool {
    (0..=d).all(|k| alternating_moment(d, k) == if k == d { Rat::one() } else { Rat::zero() })
}

/// The substitution `p_b -> sum_{d >= b-1} q^{-(d+1)} c(d, b) t_d`,
/// `beta -> q^2`, with output truncated at `caps`.
pub fn chvar_pic_substitution(caps: Caps) -> Result<Substitution> {
    let w = caps.weight as usize;
    let images = (1..=w)
        .map(|b| {
            let mut img = TruncSeries::zero(Family::TQ, Caps::new(caps.weight, i32::MAX));
            for d in b - 1..w {
                img.add_term(Monomial::new(-(d as i32 + 1), Monomial::var(d).exps), alternating_coefficient(d, b));
            }
            img
        })
        .collect();
    Substitution::new(Family::TQ, caps, 2, images)
}

/// Output caps that keep every retained coefficient exact: with source
/// `beta` cap `M` and weight cap `W`, the `q` exponent is exact up to
/// `2M - W`.
pub fn chvar_pic_caps(source: Caps) -> Caps {
    let aux = if source.aux == i32::MAX {
        i32::MAX
    } else {
        2 * source.aux - source.weight.min(i32::MAX as u64 / 4) as i32
    };
    Caps::new(source.weight, aux)
}

/// Applies the change of variables. Every retained term must have `q`
/// exponent at least `floor`; otherwise the input lies outside the class the
/// caller claimed and [`Error::NegativeAux`] is returned.
pub fn chvar_pic(s: &TruncSeries, floor: i32) -> Result<TruncSeries> {
    if s.family() != Family::P {
        return Err(Error::FamilyMismatch(s.family().name().into(), Family::P.name().into()));
    }
    let caps = chvar_pic_caps(s.caps());
    let out = s.substitute(&chvar_pic_substitution(caps)?)?;
    if let Some(lo) = out.min_aux() {
        if lo < floor {
            return Err(Error::NegativeAux(lo, floor));
        }
    }
    Ok(out)
}

/// `L_p^2 H_unst = sum p_b + beta/2 sum (b_1 + b_2) p_{b_1} p_{b_2}`.
pub fn lp2_h_unst(caps: Caps) -> TruncSeries {
    l_p(&l_p(&h_unst_onepart(caps)))
}

/// Closed image of `L_p^2 H_unst`: `q^{-1} t_0 (t_1 + 1) + t_0^2`.
pub fn lp2_h_unst_transformed(caps: Caps) -> TruncSeries {
    TruncSeries::from_terms(
        Family::TQ,
        caps,
        [
            (Monomial::new(-1, vec![1, 1]), Rat::one()),
            (Monomial::new(-1, vec![1]), Rat::one()),
            (Monomial::new(0, vec![2]), Rat::one()),
        ],
    )
}

/// Stable part of the one-part series.
pub fn h_stable(caps: Caps) -> Result<TruncSeries> {
    let h = assemble_h_onepart(caps)?;
    h.checked_sub(&h_unst_onepart(caps))
}

// ---------------------------------------------------------------------------
// Brackets

/// Genus of a nonzero bracket: `sum d_i = 4g - 3 + n`.
pub fn bracket_genus(indices: &[usize]) -> Option<u32> {
    let n = indices.len() as i64;
    let s: i64 = indices.iter().map(|&d| d as i64).sum();
    let four_g = s - n + 3;
    (n > 0 && four_g >= 0 && four_g % 4 == 0).then_some((four_g / 4) as u32)
}

/// A bracket value with its genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicBracket {
    pub indices: Vec<usize>,
    pub genus: Option<u32>,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub value: Rat,
}

/// `h / ((2g - 1 + n)! d)`, memoized on the sorted profile.
fn normalized(g: u32, profile: &[usize]) -> Result<Rat> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, Vec<usize>), Rat>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let mut key = profile.to_vec();
    key.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(v) = memo.lock().unwrap().get(&(g, key.clone())) {
        return Ok(v.clone());
    }
    let q = HurwitzQuery::one_part(g, &key)?;
    let h = hurwitz_frobenius(&q)?;
    let v = h / (rfactorial(q.branch_points() as u64) * rint(q.degree() as i64));
    memo.lock().unwrap().insert((g, key), v.clone());
    Ok(v)
}

/// `<tau_{d_1} ... tau_{d_n}>` as the alternating sum over one-part Hurwitz
/// numbers; zero unless the dimension condition holds.
pub fn bracket(indices: &[usize]) -> Result<Rat> {
    let Some(g) = bracket_genus(indices) else {
        return Ok(Rat::zero());
    };
    let mut total = Rat::zero();
    let sides: Vec<usize> = indices.iter().map(|&d| d + 1).collect();
    for idx in crate::interp::grid(&sides) {
        let b: Vec<usize> = idx.iter().map(|&i| i + 1).collect();
        let mut c = Rat::one();
        for (&d, &bi) in indices.iter().zip(&b) {
            c *= alternating_coefficient(d, bi);
        }
        total += c * normalized(g, &b)?;
    }
    Ok(total)
}

pub fn pic_bracket(indices: &[usize]) -> Result<PicBracket> {
    Ok(PicBracket { indices: indices.to_vec(), genus: bracket_genus(indices), value: bracket(indices)? })
}

/// Conversion between a bracket and the coefficient of `prod t_{d_i}` in
/// `F = sum 1/n! sum <...> t_{d_1} ... t_{d_n}`: the ordered sum produces
/// `n! / prod e_d!` copies of the monomial, so the coefficient is the bracket
/// divided by `prod e_d!` where `e_d` are the index multiplicities.
pub fn bracket_to_coefficient(indices: &[usize], value: &Rat) -> (Monomial, Rat) {
    let m = Monomial::from_indices(0, indices);
    let c = value / m.factorial_of_exps();
    (m, c)
}

/// Inverse of [`bracket_to_coefficient`].
pub fn coefficient_to_bracket(m: &Monomial, coeff: &Rat) -> (Vec<usize>, Rat) {
    (m.indices(), coeff * m.factorial_of_exps())
}

/// Index multisets of every potentially nonzero bracket with
/// `sum (d_i + 1) <= weight`.
pub fn bracket_index_sets(weight: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for w in 1..=weight {
        for p in partitions_of(w) {
            let idx: Vec<usize> = p.parts().iter().map(|&x| x - 1).collect();
            if bracket_genus(&idx).is_some() {
                out.push(idx);
            }
        }
    }
    out
}

/// `F` up to t-weight `weight` (family T_Q, no `q`).
pub fn f_series(weight: u64) -> Result<TruncSeries> {
    let caps = Caps::new(weight, 0);
    let mut f = TruncSeries::zero(Family::TQ, caps);
    for idx in bracket_index_sets(weight as usize) {
        let (m, c) = bracket_to_coefficient(&idx, &bracket(&idx)?);
        f.add_term(m, c);
    }
    Ok(f)
}

/// `U = d^2 F / dt_0^2`.
pub fn u_series(f: &TruncSeries) -> TruncSeries {
    f.partial(Var::Index(0)).partial(Var::Index(0))
}

/// Rewrites a series in `t_d` in the variables `T_{d+1} = t_d / d!`
/// (family P, index `d` standing for `T_{d+1}`).
pub fn to_t_variables(s: &TruncSeries) -> TruncSeries {
    s.map_coeffs(|m, c| {
        let mut k = c.clone();
        for (d, &e) in m.exps.iter().enumerate() {
            k *= rpow(&rfactorial(d as u64), e as u32);
        }
        k
    })
    .relabel(Family::P)
}

// ---------------------------------------------------------------------------
// String, dilaton, L_t

fn t_times_d(target: usize, source: usize, c: Rat) -> DiffOp {
    let mut op = DiffOp::zero();
    op.add_term(Monomial::var(target), Monomial::var(source).exps, c);
    op
}

/// `sum_{d >= 1} t_d d/dt_{d-1}` up to `t_{max}`.
pub fn string_operator(max: usize) -> DiffOp {
    (1..=max).fold(DiffOp::zero(), |op, d| op.plus(&t_times_d(d, d - 1, Rat::one())))
}

/// `sum_d (d+1) t_d d/dt_d`.
pub fn euler_operator(max: usize) -> DiffOp {
    (0..=max).fold(DiffOp::zero(), |op, d| op.plus(&t_times_d(d, d, rint(d as i64 + 1))))
}

fn max_index(s: &TruncSeries) -> usize {
    s.caps().weight.min(64) as usize
}

fn agree(a: &TruncSeries, b: &TruncSeries) -> bool {
    let caps = a.caps().meet(b.caps());
    a.truncate(caps) == b.truncate(caps)
}

/// `dF/dt_0 = sum t_d dF/dt_{d-1} + t_0^2 / 2`.
pub fn string_check(f: &TruncSeries) -> bool {
    let lhs = f.partial(Var::Index(0));
    let mut rhs = string_operator(max_index(f)).apply(f);
    rhs.add_term(Monomial::new(0, vec![2]), rat(1, 2));
    agree(&lhs, &rhs)
}

/// `dF/dt_1 = 1/2 sum (d+1) t_d dF/dt_d - F/2`.
pub fn dilaton_check(f: &TruncSeries) -> bool {
    let lhs = f.partial(Var::Index(1));
    let half = rat(1, 2);
    let rhs = &euler_operator(max_index(f)).apply(f).scale(&half) - &f.scale(&half);
    agree(&lhs, &rhs)
}

pub fn string_dilaton_check(f: &TruncSeries) -> bool {
    string_check(f) && dilaton_check(f)
}

/// `L_t = sum (d+1) t_d d/dt_d + q^{-1} sum t_d d/dt_{d-1}`.
pub fn lt_operator(max: usize) -> DiffOp {
    let mut op = euler_operator(max);
    for d in 1..=max {
        op.add_term(Monomial::new(-1, Monomial::var(d).exps), Monomial::var(d - 1).exps, Rat::one());
    }
    op
}

/// Both identities for `L_t F` and `L_t dF/dt_0`, with `F` viewed in T_Q.
pub fn lt_identities_check(f: &TruncSeries) -> (bool, bool) {
    let f = f.with_caps(Caps::new(f.caps().weight, i32::MAX));
    let lt = lt_operator(max_index(&f));
    let qinv = Monomial::aux(-1);
    // L_t F = F + 2 dF/dt_1 + q^{-1} (dF/dt_0 - t_0^2/2)
    let lhs1 = lt.apply(&f);
    let mut inner = f.partial(Var::Index(0));
    inner.add_term(Monomial::new(0, vec![2]), rat(-1, 2));
    let rhs1 = &(&f + &f.partial(Var::Index(1)).scale(&rint(2))) + &inner.shift(&qinv);
    // L_t dF/dt_0 = 2 d^2F/dt_0 dt_1 + q^{-1} (d^2F/dt_0^2 - t_0)
    let f0 = f.partial(Var::Index(0));
    let lhs2 = lt.apply(&f0);
    let mut inner2 = f0.partial(Var::Index(0));
    inner2.add_term(Monomial::var(0), -Rat::one());
    let rhs2 = &f0.partial(Var::Index(1)).scale(&rint(2)) + &inner2.shift(&qinv);
    (agree(&lhs1, &rhs1), agree(&lhs2, &rhs2))
}

/// `chvar(L_p X) = L_t chvar(X)` on the exact range. `L_t` may lower the
/// `q` exponent by one, so the image of `L_p X` is checked against
/// `floor - 1`.
pub fn lt_morphism_check(x: &TruncSeries, floor: i32) -> Result<bool> {
    let lhs = chvar_pic(&l_p(x), floor - 1)?;
    let image = chvar_pic(x, floor)?;
    let rhs = lt_operator(max_index(&image)).apply(&image);
    // L_t lowers q by one; compare where both are exact.
    let caps = Caps::new(lhs.caps().weight, lhs.caps().aux.min(image.caps().aux.saturating_sub(1)));
    Ok(lhs.truncate(caps) == rhs.truncate(caps))
}

/// `d/dp_b = sum_{d < b} q^{d+1} (b-1)!/(b-d-1)! d/dt_d` is inverse to the
/// Jacobian of the change of variables, for `b, b' <= n`.
pub fn derivative_transform_check(n: usize) -> bool {
    (1..=n).all(|b| {
        (1..=n).all(|b2| {
            let s: Rat = (0..b)
                .map(|d| rfactorial(b as u64 - 1) / rfactorial((b - d - 1) as u64) * alternating_coefficient(d, b2))
                .sum();
            s == if b == b2 { Rat::one() } else { Rat::zero() }
        })
    })
}

// ---------------------------------------------------------------------------
// Equations for U

/// Outcome of one equation check on `U` in the `T` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationCheck {
    pub i: usize,
    pub j: usize,
    /// Constant shifts tested for the Hirota form.
    pub shifts: Vec<String>,
    pub hirota_zero: bool,
    pub lkp_zero: bool,
    /// Largest weight at which the residual is exact.
    pub checked_weight: u64,
}

/// Hirota residuals of `c + U` for every `c` in `shifts`, and the LKP
/// residual of `U`, with `U` already in `T` variables.
pub fn theorem2_residuals(u_t: &TruncSeries, equations: &[(usize, usize)], shifts: &[Rat]) -> Result<Vec<EquationCheck>> {
    let mut out = Vec::new();
    for &(i, j) in equations {
        let mut hirota_zero = true;
        let mut checked = 0;
        for c in shifts {
            let tau = u_t + &TruncSeries::constant(Family::P, u_t.caps(), c.clone());
            let r = hirota_residual(i, j, &tau)?;
            hirota_zero &= r.is_zero();
            checked = r.caps().weight;
        }
        let lkp_zero = lkp_residual(i, j, u_t)?.is_zero();
        out.push(EquationCheck {
            i,
            j,
            shifts: shifts.iter().map(crate::rat::format_rat).collect(),
            hirota_zero,
            lkp_zero,
            checked_weight: checked,
        });
    }
    Ok(out)
}

/// `U` in `T` variables, exact up to weight `weight`.
pub fn u_in_t_variables(weight: u64) -> Result<TruncSeries> {
    Ok(to_t_variables(&u_series(&f_series(weight + 2)?)))
}

/// All bracket values of a genus with every index at least `min_index`.
pub fn bracket_table(genus: u32, min_index: usize) -> Result<Vec<PicBracket>> {
    let mut out = Vec::new();
    // sum (d_i + 1) = 4g - 3 + 2n; n is bounded because every index is at
    // least min_index: (min_index - 1) n <= 4g - 3 when min_index >= 2.
    let max_n = if min_index >= 2 { (4 * genus as usize + 3) / (min_index - 1).max(1) } else { 4 * genus as usize + 3 };
    for n in 1..=max_n.max(1) {
        let total = 4 * genus as i64 - 3 + n as i64;
        if total < 0 {
            continue;
        }
        for p in partitions_of(total as usize + n) {
            if p.len() != n {
                continue;
            }
            let idx: Vec<usize> = p.parts().iter().rev().map(|&x| x - 1).collect();
            if idx.iter().any(|&d| d < min_index) {
                continue;
            }
            out.push(pic_bracket(&idx)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
