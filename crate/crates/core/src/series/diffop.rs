use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{sat_sub, sat_sub_i, Caps, Monomial, TruncSeries};
use crate::rat::{rint, Rat};

/// A finite linear differential operator
/// `sum c * x^coef * d^derivs` (coefficient on the left).
///
/// Constant-coefficient operators double as polynomials in the symbols `d_i`;
/// [`DiffOp::from_poly`] and [`DiffOp::to_poly`] switch between the views.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    terms: BTreeMap<(Monomial, Vec<u16>), Rat>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn identity() -> Self {
        let mut d = DiffOp::zero();
        d.add_term(Monomial::one(), Vec::new(), Rat::one());
        d
    }

    /// `d/dx_i`
    pub fn d(i: usize) -> Self {
        let mut d = DiffOp::zero();
        d.add_term(Monomial::one(), Monomial::var(i).exps, Rat::one());
        d
    }

    pub fn add_term(&mut self, coef: Monomial, mut derivs: Vec<u16>, c: Rat) {
        while derivs.last() == Some(&0) {
            derivs.pop();
        }
        if c.is_zero() {
            return;
        }
        let key = (coef, derivs);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Vec<u16>, &Rat)> {
        self.terms.iter().map(|((m, d), c)| (m, d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for ((m, d), c) in &other.terms {
            out.add_term(m.clone(), d.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> DiffOp {
        let mut out = DiffOp::zero();
        for ((m, d), v) in &self.terms {
            out.add_term(m.clone(), d.clone(), v * c);
        }
        out
    }

    /// Reads a polynomial in `d_i` (variable index `i` stands for `d_{i+1}`
    /// in family P) as a constant-coefficient operator.
    pub fn from_poly(poly: &TruncSeries) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m, c) in poly.terms() {
            out.add_term(Monomial::aux(m.aux), m.exps.clone(), c.clone());
        }
        out
    }

    /// Inverse of [`DiffOp::from_poly`]; `None` if a coefficient involves an
    /// indexed variable.
    pub fn to_poly(&self, like: &TruncSeries) -> Option<TruncSeries> {
        let mut out = TruncSeries::zero(like.family(), like.caps());
        for ((m, d), c) in &self.terms {
            if m.has_vars() {
                return None;
            }
            out.add_term(Monomial::new(m.aux, d.clone()), c.clone());
        }
        Some(out)
    }

    /// Largest `(derivative weight - coefficient weight)` over the terms,
    /// and the same for the auxiliary exponent (derivatives never touch it).
    fn cap_shift(&self) -> (i64, i32) {
        let mut w = i64::MIN;
        let mut a = i32::MIN;
        for (m, d) in self.terms.keys() {
            let dw = Monomial::new(0, d.clone()).weight() as i64;
            w = w.max(dw - m.weight() as i64);
            a = a.max(-m.aux);
        }
        (w.max(0), a.max(0))
    }

    /// Applies the operator term by term. The output caps shrink by the
    /// largest net weight the operator can remove.
    pub fn apply(&self, s: &TruncSeries) -> TruncSeries {
        let (dw, da) = self.cap_shift();
        let caps = Caps { weight: sat_sub(s.caps().weight, dw as u64), aux: sat_sub_i(s.caps().aux, da) };
        let mut out = TruncSeries::zero(s.family(), caps);
        for ((coef, derivs), c) in &self.terms {
            for (m, v) in s.terms() {
                let mut factor = Rat::one();
                let mut exps = m.exps.clone();
                let mut ok = true;
                for (i, &k) in derivs.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    let e = m.exp(i);
                    if e < k {
                        ok = false;
                        break;
                    }
                    for j in 0..k {
                        factor *= rint((e - j) as i64);
                    }
                    exps[i] -= k;
                }
                if !ok {
                    continue;
                }
                let mono = Monomial::new(m.aux, exps).mul(coef);
                out.add_term(mono, c * v * factor);
            }
        }
        out
    }
}

impl TruncSeries {
    pub fn apply_diffop(&self, d: &DiffOp) -> TruncSeries {
        d.apply(self)
    }
}
