//! The `D_mu` operator algebra, Hirota / KP / linearized KP equations, the
//! cut-and-join operator and the corner calculus for `S = sum i d_i d/dd_{i+1}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::rat::{binomial, rbig, rfactorial, rint, Rat};
use crate::series::{Caps, DiffOp, Family, Monomial, TruncSeries};
use crate::symmetric::{character, power_monomial};

mod bilinear;
mod deriv;

pub use bilinear::{Bilinear, DMono};
pub use deriv::{DerivExpr, Factor};

/// Largest `i + j` for which equations are built.
pub const MAX_EQUATION_WEIGHT: usize = 10;

/// `D_mu = sum_lambda chi_mu(lambda) d_lambda / |Aut lambda|` as a polynomial
/// in the symbols `d_i` (variable index `i` stands for `d_{i+1}`).
pub fn d_mu_poly(mu: &Partition) -> TruncSeries {
    let mut out = TruncSeries::zero(Family::P, Caps::unbounded());
    for lambda in partitions_of(mu.size()) {
        let chi = character(mu, &lambda).expect("sizes agree");
        if chi != 0 {
            out.add_term(power_monomial(&lambda), Rat::new(BigInt::from(chi), lambda.aut_order()));
        }
    }
    out
}

/// `D_mu` as a constant-coefficient differential operator.
pub fn d_mu(mu: &Partition) -> DiffOp {
    DiffOp::from_poly(&d_mu_poly(mu))
}

fn part(v: &[usize]) -> Partition {
    Partition::from_unsorted(v.to_vec())
}

/// One Hirota equation as a bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HirotaEq {
    pub i: usize,
    pub j: usize,
    pub form: Bilinear,
}

/// `Hir_{i,j} = D_() ⊗ D_(j,i) - D_(i-1) ⊗ D_(j,1) + D_(j) ⊗ D_(i-1,1)`.
pub fn hirota_eq(i: usize, j: usize) -> Result<HirotaEq> {
    if i < 2 || j < i || i + j > MAX_EQUATION_WEIGHT {
        return Err(Error::OutOfRange(format!(
            "Hirota equations need 2 <= i <= j and i + j <= {MAX_EQUATION_WEIGHT}, got ({i}, {j})"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), HirotaEq>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(eq) = cache.lock().unwrap().get(&(i, j)) {
        return Ok(eq.clone());
    }
    let one = Rat::one();
    let form = Bilinear::tensor(&d_mu_poly(&Partition::empty()), &d_mu_poly(&part(&[j, i])), &one)
        .sub(&Bilinear::tensor(&d_mu_poly(&part(&[i - 1])), &d_mu_poly(&part(&[j, 1])), &one))
        .add(&Bilinear::tensor(&d_mu_poly(&part(&[j])), &d_mu_poly(&part(&[i - 1, 1])), &one));
    let eq = HirotaEq { i, j, form };
    cache.lock().unwrap().insert((i, j), eq.clone());
    Ok(eq)
}

/// `Hir_{i,j}(tau)`. Output caps shrink by `i + j` in weight, so every
/// retained coefficient is exact.
pub fn hirota_residual(i: usize, j: usize, tau: &TruncSeries) -> Result<TruncSeries> {
    hirota_eq(i, j)?.form.evaluate(tau)
}

/// Symbolic `KP_{i,j}` in the derivatives of `F`.
pub fn kp_expression(i: usize, j: usize) -> Result<DerivExpr> {
    Ok(hirota_eq(i, j)?.form.kp_expression())
}

/// Symbolic `LKP_{i,j}`.
pub fn lkp_expression(i: usize, j: usize) -> Result<DerivExpr> {
    Ok(hirota_eq(i, j)?.form.lkp_expression())
}

fn require_no_constant(f: &TruncSeries) -> Result<()> {
    if f.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::NonzeroConstant)
    }
}

/// `KP_{i,j}(F)` from the closed polynomial form.
pub fn kp_residual(i: usize, j: usize, f: &TruncSeries) -> Result<TruncSeries> {
    require_no_constant(f)?;
    kp_expression(i, j)?.evaluate(std::slice::from_ref(f))
}

/// `KP_{i,j}(F) = Hir_{i,j}(e^F) / e^{2F}`, computed literally.
pub fn kp_residual_via_exp(i: usize, j: usize, f: &TruncSeries) -> Result<TruncSeries> {
    require_no_constant(f)?;
    let tau = f.exp()?;
    let hir = hirota_residual(i, j, &tau)?;
    let inv = f.scale(&rint(-2)).exp()?;
    hir.checked_mul(&inv)
}

/// `LKP_{i,j}` as a linear differential operator.
pub fn lkp_operator(i: usize, j: usize) -> Result<DiffOp> {
    let mut op = DiffOp::zero();
    for (_, fs, c) in lkp_expression(i, j)?.terms() {
        op.add_term(Monomial::one(), fs[0].derivs.clone(), c.clone());
    }
    Ok(op)
}

pub fn lkp_residual(i: usize, j: usize, f: &TruncSeries) -> Result<TruncSeries> {
    Ok(lkp_operator(i, j)?.apply(f))
}

/// `Hir_{2,3} - 1/2 d/dp_1 Hir_{2,2}`.
pub fn simplified_hirota_2_3() -> Bilinear {
    let h23 = hirota_eq(2, 3).expect("in range").form;
    let h22 = hirota_eq(2, 2).expect("in range").form;
    h23.sub(&h22.total_derivative(0).scale(&Rat::new(1.into(), 2.into())))
}

/// `KP_{2,3} - F_1 KP_{2,2} - 1/2 d/dp_1 KP_{2,2}`.
///
/// With `KP_{2,3}` taken literally from the definition the multiple of
/// `F_1 KP_{2,2}` that removes every `F_1` term is 1.
pub fn simplified_kp_2_3() -> DerivExpr {
    let half = Rat::new(1.into(), 2.into());
    let k23 = kp_expression(2, 3).expect("in range");
    let k22 = kp_expression(2, 2).expect("in range");
    let f1 = DerivExpr::field(0, &[0]);
    k23.sub(&f1.mul(&k22)).sub(&k22.derivative(0).scale(&half))
}

/// `LKP_{2,3} - 1/2 d/dp_1 LKP_{2,2}`.
pub fn simplified_lkp_2_3() -> DerivExpr {
    let half = Rat::new(1.into(), 2.into());
    let l23 = lkp_expression(2, 3).expect("in range");
    let l22 = lkp_expression(2, 2).expect("in range");
    l23.sub(&l22.derivative(0).scale(&half))
}

// ---------------------------------------------------------------------------
// Cut-and-join

/// `A = 1/2 sum [(i+j) p_i p_j d/dp_{i+j} + ij p_{i+j} d^2/dp_i dp_j]`.
pub fn cut_and_join(s: &TruncSeries) -> TruncSeries {
    let half = Rat::new(1.into(), 2.into());
    let mut out = TruncSeries::zero(s.family(), s.caps());
    for (m, c) in s.terms() {
        let n = m.exps.len();
        // Join: p_k -> p_i p_j, i + j = k (k = index + 1).
        for k in 0..n {
            let e = m.exp(k);
            if e == 0 {
                continue;
            }
            let w = k + 1;
            for i in 1..w {
                let j = w - i;
                let mut exps = m.exps.clone();
                exps[k] -= 1;
                let base = Monomial::new(m.aux, exps).mul(&Monomial::from_indices(0, &[i - 1, j - 1]));
                out.add_term(base, c * &half * rint((w as u64 * e as u64) as i64));
            }
        }
        // Cut: p_i p_j -> p_{i+j}.
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (m.exp(a) as i64, m.exp(b) as i64);
                let falling = if a == b { ea * (ea - 1) } else { ea * eb };
                if falling == 0 {
                    continue;
                }
                let mut exps = m.exps.clone();
                exps[a] -= 1;
                exps[b] -= 1;
                let mono = Monomial::new(m.aux, exps).mul(&Monomial::var(a + b + 1));
                out.add_term(mono, c * &half * rint((a as i64 + 1) * (b as i64 + 1) * falling));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Corner calculus

/// `S` on a single monomial in the `d_i`.
pub fn s_on_monomial(m: &DMono) -> Vec<(DMono, Rat)> {
    let mut out = Vec::new();
    for k in 1..m.len() {
        let e = m[k];
        if e == 0 {
            continue;
        }
        let mut m2 = m.clone();
        m2[k] -= 1;
        m2[k - 1] += 1;
        out.push((m2, rint(k as i64 * e as i64)));
    }
    out
}

/// `S = sum_i i d_i d/dd_{i+1}` on a polynomial in the `d_i`.
pub fn s_operator(poly: &TruncSeries) -> TruncSeries {
    let mut out = TruncSeries::zero(poly.family(), poly.caps());
    for (m, c) in poly.terms() {
        for (m2, k) in s_on_monomial(&m.exps) {
            out.add_term(Monomial::new(m.aux, m2), c * k);
        }
    }
    out
}

/// `sum over corners (i, mu_i) of (mu_i - i) D_{mu - box_i}`.
pub fn corner_sum(mu: &Partition) -> TruncSeries {
    let mut out = TruncSeries::zero(Family::P, Caps::unbounded());
    for (i, mi) in mu.corners() {
        let w = rint(mi as i64 - i as i64);
        let smaller = mu.remove_corner(i).expect("corner");
        out = &out + &d_mu_poly(&smaller).scale(&w);
    }
    out
}

/// Whether `S D_mu` equals the corner sum.
pub fn corner_descent_check(mu: &Partition) -> bool {
    s_operator(&d_mu_poly(mu)) == corner_sum(mu)
}

/// `sum_corners (mu_i - i) chi_{mu - box_i}(lambda) = sum_i lambda_i chi_mu(lambda + 1_i)`.
pub fn character_identity_check(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if lambda.size() + 1 != mu.size() {
        return Err(Error::SizeMismatch(mu.to_string(), mu.size(), lambda.to_string(), lambda.size()));
    }
    let mut left = 0i64;
    for (i, mi) in mu.corners() {
        left += (mi as i64 - i as i64) * character(&mu.remove_corner(i)?, lambda)?;
    }
    let mut right = 0i64;
    for (k, &l) in lambda.parts().iter().enumerate() {
        right += l as i64 * character(mu, &lambda.increment(k + 1))?;
    }
    Ok(left == right)
}

/// `(S ⊗ 1 + 1 ⊗ S) Hir_{i,j}`.
pub fn s_derivation(form: &Bilinear) -> Bilinear {
    form.derivation(s_on_monomial)
}

/// The lower combination predicted for `(S ⊗ 1 + 1 ⊗ S) Hir_{i,j}`.
pub fn hirota_descent_target(i: usize, j: usize) -> Result<Bilinear> {
    let mut out = Bilinear::zero();
    if i < j {
        if i > 2 {
            out = out.add(&hirota_eq(i - 1, j)?.form.scale(&rint(i as i64 - 2)));
        }
        out = out.add(&hirota_eq(i, j - 1)?.form.scale(&rint(j as i64 - 1)));
    } else if i > 2 {
        out = out.add(&hirota_eq(i - 1, i)?.form.scale(&rint(i as i64 - 2)));
    }
    Ok(out)
}

/// Compares both sides as forms acting on `tau ⊗ tau` (symmetrized).
pub fn hirota_descent_check(i: usize, j: usize) -> Result<bool> {
    if j > 5 {
        return Err(Error::OutOfRange(format!("descent check needs j <= 5, got {j}")));
    }
    let lhs = s_derivation(&hirota_eq(i, j)?.form).symmetrized();
    Ok(lhs == hirota_descent_target(i, j)?.symmetrized())
}

/// Image of a polynomial in `d_i` under the rescaled inverse change of
/// variables `d/dp_i = sum_k C(i-1, k) q^{k+1} d/dT_{k+1}` (family T_Q,
/// `q^2 = beta`).
pub fn rescaled_chvar_of_poly(poly: &TruncSeries) -> TruncSeries {
    let caps = Caps::unbounded();
    let image = |i: usize| {
        // variable index i is d_{i+1}
        let mut s = TruncSeries::zero(Family::TQ, caps);
        for k in 0..=i {
            s.add_term(Monomial::new(k as i32 + 1, Monomial::var(k).exps), rbig(binomial(i as u64, k as u64)));
        }
        s
    };
    let mut out = TruncSeries::zero(Family::TQ, caps);
    for (m, c) in poly.terms() {
        let mut t = TruncSeries::constant(Family::TQ, caps, c.clone());
        for (i, &e) in m.exps.iter().enumerate() {
            if e > 0 {
                t = &t * &image(i).pow(e as u32);
            }
        }
        out = &out + &t;
    }
    out
}

/// `beta^{n/2} e^{S / sqrt(beta)} D` for `D` of weight `n`, in family T_Q.
pub fn s_exponential(poly: &TruncSeries, n: u64) -> TruncSeries {
    let mut out = TruncSeries::zero(Family::TQ, Caps::unbounded());
    let mut power = poly.clone();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = power.relabel(Family::TQ).with_caps(Caps::unbounded()).scale(&(Rat::one() / rfactorial(k)));
        out = &out + &term.shift(&Monomial::aux(n as i32 - k as i32));
        power = s_operator(&power);
        k += 1;
    }
    out
}

/// Check that the change of variables on `D_mu` as an operator equals
/// `beta^{n/2} e^{S/sqrt(beta)}` on `D_mu` as a polynomial.
pub fn lemma_s_check(mu: &Partition) -> bool {
    let d = d_mu_poly(mu);
    rescaled_chvar_of_poly(&d) == s_exponential(&d, mu.size() as u64)
}
