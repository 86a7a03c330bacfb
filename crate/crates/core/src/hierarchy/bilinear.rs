//! Bilinear forms in the derivative symbols `d_i`, i.e. elements of the
//! tensor square of the polynomial algebra `Q[d_1, d_2, ...]`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::Result;
use crate::rat::Rat;
use crate::series::{Monomial, TruncSeries};

use super::deriv::{DerivExpr, Factor};

/// Exponent vector of a monomial in the `d_i` (index `i` is `d_{i+1}`).
pub type DMono = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bilinear {
    terms: BTreeMap<(DMono, DMono), Rat>,
}

fn trim(mut v: DMono) -> DMono {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Bilinear {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: DMono, b: DMono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (trim(a), trim(b));
        let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `c * (left ⊗ right)` for polynomials in `d_i`.
    pub fn tensor(left: &TruncSeries, right: &TruncSeries, c: &Rat) -> Self {
        let mut out = Bilinear::zero();
        for (ma, ca) in left.terms() {
            for (mb, cb) in right.terms() {
                out.add_term(ma.exps.clone(), mb.exps.clone(), c * ca * cb);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DMono, &DMono, &Rat)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &[u16], b: &[u16]) -> Rat {
        self.terms.get(&(trim(a.to_vec()), trim(b.to_vec()))).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Bilinear) -> Bilinear {
        let mut out = self.clone();
        for ((a, b), c) in &o.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Bilinear {
        let mut out = Bilinear::zero();
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, o: &Bilinear) -> Bilinear {
        self.add(&o.scale(&-Rat::one()))
    }

    /// The form as it acts on `tau ⊗ tau`: pairs are put in a canonical
    /// order, so `a ⊗ b` and `b ⊗ a` are identified.
    pub fn symmetrized(&self) -> Bilinear {
        let mut out = Bilinear::zero();
        for ((a, b), c) in &self.terms {
            let (x, y) = if a <= b { (a, b) } else { (b, a) };
            out.add_term(x.clone(), y.clone(), c.clone());
        }
        out
    }

    /// Applies a linear map on `Q[d]` to both tensor factors as a derivation:
    /// `f ⊗ 1 + 1 ⊗ f`.
    pub fn derivation<F>(&self, f: F) -> Bilinear
    where
        F: Fn(&DMono) -> Vec<(DMono, Rat)>,
    {
        let mut out = Bilinear::zero();
        for ((a, b), c) in &self.terms {
            for (a2, k) in f(a) {
                out.add_term(a2, b.clone(), c * k);
            }
            for (b2, k) in f(b) {
                out.add_term(a.clone(), b2, c * k);
            }
        }
        out
    }

    /// Total derivative `d/dx_i` of the expression `sum c tau_a tau_b`.
    pub fn total_derivative(&self, i: usize) -> Bilinear {
        self.derivation(|m| {
            let mut m2 = m.clone();
            if m2.len() <= i {
                m2.resize(i + 1, 0);
            }
            m2[i] += 1;
            vec![(m2, Rat::one())]
        })
    }

    /// `sum c (d^a tau)(d^b tau)`.
    pub fn evaluate(&self, tau: &TruncSeries) -> Result<TruncSeries> {
        let mut cache: HashMap<DMono, TruncSeries> = HashMap::new();
        let mut get = |m: &DMono| cache.entry(m.clone()).or_insert_with(|| tau.partial_multi(m)).clone();
        let mut out: Option<TruncSeries> = None;
        for ((a, b), c) in &self.terms {
            let t = get(a).checked_mul(&get(b))?.scale(c);
            out = Some(match out {
                None => t,
                Some(o) => o.checked_add(&t)?,
            });
        }
        Ok(out.unwrap_or_else(|| TruncSeries::zero(tau.family(), tau.caps())))
    }

    /// `sum c B_a B_b` where `B_a = e^{-F} d^a e^{F}` are the multivariate
    /// Bell polynomials in the derivatives of `F` (field 0).
    pub fn kp_expression(&self) -> DerivExpr {
        let mut bell = BellCache::default();
        let mut out = DerivExpr::zero();
        for ((a, b), c) in &self.terms {
            out = out.add(&bell.get(a).mul(&bell.get(b)).scale(c));
        }
        out
    }

    /// Linear part of [`Bilinear::kp_expression`].
    pub fn lkp_expression(&self) -> DerivExpr {
        let mut out = DerivExpr::zero();
        for ((a, b), c) in &self.terms {
            let (ea, eb) = (a.is_empty(), b.is_empty());
            if ea && !eb {
                out = out.add(&DerivExpr::symbol(Factor::new(0, b.clone())).scale(c));
            }
            if eb && !ea {
                out = out.add(&DerivExpr::symbol(Factor::new(0, a.clone())).scale(c));
            }
        }
        out
    }
}

#[derive(Default)]
struct BellCache {
    memo: HashMap<DMono, DerivExpr>,
}

impl BellCache {
    /// `B_0 = 1`, `B_{a + e_i} = d_i B_a + F_i B_a`.
    fn get(&mut self, a: &DMono) -> DerivExpr {
        if let Some(v) = self.memo.get(a) {
            return v.clone();
        }
        let v = match a.iter().rposition(|&k| k > 0) {
            None => DerivExpr::constant(Rat::one()),
            Some(i) => {
                let mut prev = a.clone();
                prev[i] -= 1;
                let prev = trim(prev);
                let b = self.get(&prev);
                let fi = DerivExpr::symbol(Factor::new(0, Monomial::var(i).exps));
                b.derivative(i).add(&fi.mul(&b))
            }
        };
        self.memo.insert(a.clone(), v.clone());
        v
    }
}
