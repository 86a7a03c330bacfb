//! Hodge integrals with one lambda class, read off from simple Hurwitz
//! numbers, and the change of variables carrying the simple series to
//! their generating series.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::{assemble_h_simple, h_unst_simple, hurwitz_frobenius, HurwitzQuery};
use crate::interp::MultiPoly;
use crate::partition::partitions_of;
use crate::rat::{binomial, rbig, rfactorial, rint, rpow, Rat};
use crate::series::{Caps, Family, Monomial, Substitution, TruncSeries};

/// Genus of `<tau_{d_1} .. tau_{d_n}>^{(k)}`: `k + sum d_i = 3g - 3 + n`.
pub fn hodge_genus(indices: &[usize], k: usize) -> Option<u32> {
    let n = indices.len() as i64;
    let three_g = (k + indices.iter().sum::<usize>()) as i64 + 3 - n;
    (n > 0 && three_g >= 0 && three_g % 3 == 0).then_some((three_g / 3) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeBracket {
    pub indices: Vec<usize>,
    pub k: usize,
    pub genus: Option<u32>,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub value: Rat,
}

/// `m! prod b_i^{b_i} / b_i!` with `m = d + n + 2g - 2`.
pub fn elsv_prefactor(genus: u32, profile: &[usize]) -> Rat {
    let d: usize = profile.iter().sum();
    let m = d + profile.len() + 2 * genus as usize - 2;
    profile
        .iter()
        .fold(rfactorial(m as u64), |acc, &b| acc * rpow(&rint(b as i64), b as u32) / rfactorial(b as u64))
}

/// `h_{g;b} / prefactor`, memoized on the sorted profile.
pub fn elsv_normalized(genus: u32, profile: &[usize]) -> Result<Rat> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, Vec<usize>), Rat>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let mut key = profile.to_vec();
    key.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(v) = memo.lock().unwrap().get(&(genus, key.clone())) {
        return Ok(v.clone());
    }
    let h = hurwitz_frobenius(&HurwitzQuery::simple(genus, &key)?)?;
    let v = h / elsv_prefactor(genus, &key);
    memo.lock().unwrap().insert((genus, key), v.clone());
    Ok(v)
}

/// Multi-indices `alpha` in `N^n` with `|alpha| == total`.
fn simplex_layer(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in simplex_layer(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `binom(x - 1, a)` as a polynomial in `x`, low degree first.
fn shifted_binomial(a: usize) -> Vec<Rat> {
    let mut p = vec![Rat::one()];
    for j in 0..a {
        // multiply by (x - 1 - j)
        let c = -rint(1 + j as i64);
        let mut q = vec![Rat::zero(); p.len() + 1];
        for (i, v) in p.iter().enumerate() {
            q[i + 1] += v;
            q[i] += v * &c;
        }
        p = q;
    }
    let f = rfactorial(a as u64);
    p.into_iter().map(|v| v / &f).collect()
}

/// Fit of `b -> h_{g;b} / prefactor` as a polynomial of total degree
/// `3g - 3 + n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElsvFit {
    pub genus: u32,
    pub n: usize,
    pub poly: MultiPoly,
    /// Number of held-out profiles the fit predicted exactly.
    pub held_out: usize,
}

impl ElsvFit {
    /// Coefficient of `prod b_i^{d_i}`; equals `(-1)^k <tau_d lambda_k>`.
    pub fn coefficient(&self, indices: &[usize]) -> Rat {
        let e: Vec<u32> = indices.iter().map(|&d| d as u32).collect();
        self.poly.coeff(&e)
    }
}

/// Newton interpolation on the simplex `{b : sum (b_i - 1) <= D}`, checked
/// on the next layer `sum (b_i - 1) = D + 1`.
pub fn elsv_fit(genus: u32, n: usize) -> Result<ElsvFit> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, usize), ElsvFit>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(f) = memo.lock().unwrap().get(&(genus, n)) {
        return Ok(f.clone());
    }
    let dim = 3 * genus as i64 - 3 + n as i64;
    if n == 0 || dim < 0 {
        return Err(Error::OutOfRange(format!("no stable moduli space for g = {genus}, n = {n}")));
    }
    let dim = dim as usize;
    let profile = |alpha: &[usize]| -> Vec<usize> { alpha.iter().map(|a| a + 1).collect() };
    let mut values: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
    for total in 0..=dim {
        for alpha in simplex_layer(n, total) {
            let v = elsv_normalized(genus, &profile(&alpha))?;
            values.insert(alpha, v);
        }
    }
    // forward differences at the origin
    let mut poly = MultiPoly { terms: BTreeMap::new() };
    for alpha in values.keys() {
        let mut delta = Rat::zero();
        for beta in sub_indices(alpha) {
            let mut c = Rat::one();
            let mut gap = 0;
            for (a, b) in alpha.iter().zip(&beta) {
                c *= rbig(binomial(*a as u64, *b as u64));
                gap += a - b;
            }
            if gap % 2 == 1 {
                c = -c;
            }
            delta += c * &values[&beta];
        }
        if delta.is_zero() {
            continue;
        }
        // delta * prod binom(b_i - 1, alpha_i)
        let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::from([(Vec::new(), delta)]);
        for &a in alpha {
            let uni = shifted_binomial(a);
            let mut next = BTreeMap::new();
            for (e, c) in &acc {
                for (p, u) in uni.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2.push(p as u32);
                    *next.entry(e2).or_insert_with(Rat::zero) += c * u;
                }
            }
            acc = next;
        }
        for (e, c) in acc {
            *poly.terms.entry(e).or_insert_with(Rat::zero) += c;
        }
    }
    poly.terms.retain(|_, c| !c.is_zero());
    let mut held_out = 0;
    for alpha in simplex_layer(n, dim + 1) {
        let b = profile(&alpha);
        let x: Vec<Rat> = b.iter().map(|&v| rint(v as i64)).collect();
        if poly.eval(&x) != elsv_normalized(genus, &b)? {
            return Err(Error::InsufficientPoints(format!("held-out profile {b:?} disagrees for g = {genus}")));
        }
        held_out += 1;
    }
    let fit = ElsvFit { genus, n, poly, held_out };
    memo.lock().unwrap().insert((genus, n), fit.clone());
    Ok(fit)
}

fn sub_indices(alpha: &[usize]) -> Vec<Vec<usize>> {
    let sides: Vec<usize> = alpha.iter().map(|a| a + 1).collect();
    crate::interp::grid(&sides)
}

/// `<tau_{d_1} .. tau_{d_n} lambda_k>`; zero off the dimension condition,
/// for `k > g`, and on unstable spaces.
pub fn hodge_bracket(indices: &[usize], k: usize) -> Result<Rat> {
    let Some(g) = hodge_genus(indices, k) else {
        return Ok(Rat::zero());
    };
    if k > g as usize || 2 * g as i64 - 2 + indices.len() as i64 <= 0 {
        return Ok(Rat::zero());
    }
    let c = elsv_fit(g, indices.len())?.coefficient(indices);
    Ok(if k.is_multiple_of(2) { c } else { -c })
}

/// Every bracket of genus `g` with `n` points and `k <= max_k`.
pub fn hurwitz_to_hodge(genus: u32, n: usize, max_k: usize) -> Result<Vec<HodgeBracket>> {
    let dim = 3 * genus as i64 - 3 + n as i64;
    let mut out = Vec::new();
    for k in 0..=max_k.min(genus as usize) {
        let total = dim - k as i64;
        if total < 0 {
            continue;
        }
        for idx in multisets(n, total as usize) {
            let value = hodge_bracket(&idx, k)?;
            out.push(HodgeBracket { indices: idx, k, genus: Some(genus), value });
        }
    }
    Ok(out)
}

/// Nondecreasing sequences of length `n` with sum `total`.
pub fn multisets(n: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, total: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut v = min;
        while v * n <= total {
            prefix.push(v);
            go(n - 1, total - v, v, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    go(n, total, 0, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Change of variables

/// `(-1)^{d-b+1} / ((d-b+1)! b^{b-1})`, the coefficient of `t_d` in `p_b`.
pub fn elsv_chvar_coefficient(d: usize, b: usize) -> Rat {
    if b == 0 || b > d + 1 {
        return Rat::zero();
    }
    let k = d + 1 - b;
    let v = Rat::one() / (rfactorial(k as u64) * rpow(&rint(b as i64), b as u32 - 1));
    if k.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `p_b -> sum_d coeff u^{-3b-2d-1} t_d`, `beta -> u^3`.
pub fn chvar_elsv_substitution(caps: Caps) -> Result<Substitution> {
    let w = caps.weight as usize;
    let images = (1..=w)
        .map(|b| {
            let mut img = TruncSeries::zero(Family::TU, Caps::new(caps.weight, i32::MAX));
            for d in b - 1..w {
                let u = -(3 * b as i32) - 2 * d as i32 - 1;
                img.add_term(Monomial::new(u, Monomial::var(d).exps), elsv_chvar_coefficient(d, b));
            }
            img
        })
        .collect();
    Substitution::new(Family::TU, caps, 3, images)
}

/// Output caps of [`chvar_elsv`]: a source term beyond `beta^M` lands at
/// `u` power at least `3M + 4 - 5W`.
pub fn chvar_elsv_caps(source: Caps) -> Caps {
    if source.aux == i32::MAX {
        return Caps::new(source.weight, i32::MAX);
    }
    let aux = 3 * source.aux as i64 + 3 - 5 * source.weight as i64;
    Caps::new(source.weight, aux.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Applies the change of variables; negative `u` powers are rejected.
pub fn chvar_elsv(s: &TruncSeries) -> Result<TruncSeries> {
    if s.family() != Family::P {
        return Err(Error::FamilyMismatch(s.family().name().into(), Family::P.name().into()));
    }
    let out = s.substitute(&chvar_elsv_substitution(chvar_elsv_caps(s.caps()))?)?;
    match out.min_aux() {
        Some(lo) if lo < 0 => Err(Error::NegativeAux(lo, 0)),
        _ => Ok(out),
    }
}

/// Relabels `u^2` as `z`; odd powers of `u` are an error.
pub fn u_to_z(s: &TruncSeries) -> Result<TruncSeries> {
    let caps = s.caps();
    let zcap = if caps.aux == i32::MAX { i32::MAX } else { caps.aux.div_euclid(2) };
    let mut out = TruncSeries::zero(s.family(), Caps::new(caps.weight, zcap));
    for (m, c) in s.terms() {
        if m.aux % 2 != 0 {
            return Err(Error::OutOfRange(format!("odd power u^{}", m.aux)));
        }
        out.add_term(Monomial::new(m.aux / 2, m.exps.clone()), c.clone());
    }
    Ok(out)
}

/// Stable part of the simple series.
pub fn h_st_simple(caps: Caps) -> Result<TruncSeries> {
    assemble_h_simple(caps)?.checked_sub(&h_unst_simple(caps))
}

/// Source caps making the transformed stable series exact through `z^max_z`
/// at t-weight `weight`.
pub fn source_caps(weight: u64, max_z: u32) -> Caps {
    let aux = (2 * max_z as i64 + 5 * weight as i64 - 3 + 2) / 3;
    Caps::new(weight, aux as i32)
}

/// Change of variables applied to the stable simple series, graded by `z`.
pub fn transformed_h_st(weight: u64, max_z: u32) -> Result<TruncSeries> {
    let img = u_to_z(&chvar_elsv(&h_st_simple(source_caps(weight, max_z))?)?)?;
    Ok(img.truncate(Caps::new(weight, max_z as i32)))
}

/// `F = sum_k (-z)^k F^{(k)}` through t-weight `weight` and `z^max_k`.
pub fn hodge_series(weight: u64, max_k: u32) -> Result<TruncSeries> {
    let caps = Caps::new(weight, max_k as i32);
    let mut f = TruncSeries::zero(Family::TU, caps);
    for w in 1..=weight as usize {
        for p in partitions_of(w) {
            let idx: Vec<usize> = p.parts().iter().rev().map(|&x| x - 1).collect();
            for k in 0..=max_k as usize {
                let v = hodge_bracket(&idx, k)?;
                if v.is_zero() {
                    continue;
                }
                let m = Monomial::from_indices(k as i32, &idx);
                let c = v / m.factorial_of_exps();
                f.add_term(m, if k % 2 == 0 { c } else { -c });
            }
        }
    }
    Ok(f)
}

/// `F^{(k)}` from the graded series.
pub fn hodge_component(f: &TruncSeries, k: u32) -> TruncSeries {
    let c = f.aux_coefficient(k as i32);
    if k.is_multiple_of(2) {
        c
    } else {
        -&c
    }
}
