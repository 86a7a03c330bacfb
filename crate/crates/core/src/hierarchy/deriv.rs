//! Polynomials in the derivatives of one or more unknown series.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::rat::{format_rat, Rat};
use crate::series::{Monomial, TruncSeries};

/// One symbol `F^{(field)}_{alpha}`: a partial derivative of an unknown.
/// `derivs[i]` is the order of differentiation in indexed variable `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub field: u8,
    pub derivs: Vec<u16>,
}

impl Factor {
    pub fn new(field: u8, mut derivs: Vec<u16>) -> Self {
        while derivs.last() == Some(&0) {
            derivs.pop();
        }
        Factor { field, derivs }
    }

    /// Derivative multi-index from a list of variable indices.
    pub fn from_indices(field: u8, idx: &[usize]) -> Self {
        Factor::new(field, Monomial::from_indices(0, idx).exps)
    }

    fn bump(&self, i: usize) -> Factor {
        let mut d = self.derivs.clone();
        if d.len() <= i {
            d.resize(i + 1, 0);
        }
        d[i] += 1;
        Factor::new(self.field, d)
    }
}

/// Key: power of the auxiliary variable and the sorted factor list.
type Key = (i32, Vec<Factor>);

/// A polynomial in symbols [`Factor`], with an auxiliary variable power per
/// term. Used for the symbolic forms of KP-type equations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivExpr {
    terms: BTreeMap<Key, Rat>,
}

impl DerivExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut e = Self::zero();
        e.add_term(0, Vec::new(), c);
        e
    }

    pub fn symbol(f: Factor) -> Self {
        let mut e = Self::zero();
        e.add_term(0, vec![f], Rat::one());
        e
    }

    /// Convenience: `F^{(field)}` differentiated along the listed indices.
    pub fn field(field: u8, idx: &[usize]) -> Self {
        Self::symbol(Factor::from_indices(field, idx))
    }

    pub fn add_term(&mut self, aux: i32, mut factors: Vec<Factor>, c: Rat) {
        if c.is_zero() {
            return;
        }
        factors.sort();
        let key = (aux, factors);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &[Factor], &Rat)> {
        self.terms.iter().map(|((a, f), c)| (*a, f.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, aux: i32, factors: &[Factor]) -> Rat {
        let mut f = factors.to_vec();
        f.sort();
        self.terms.get(&(aux, f)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &DerivExpr) -> DerivExpr {
        let mut out = self.clone();
        for ((a, f), c) in &o.terms {
            out.add_term(*a, f.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &DerivExpr) -> DerivExpr {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> DerivExpr {
        let mut out = DerivExpr::zero();
        for ((a, f), v) in &self.terms {
            out.add_term(*a, f.clone(), v * c);
        }
        out
    }

    /// Multiplies by the auxiliary variable to the power `k`.
    pub fn shift_aux(&self, k: i32) -> DerivExpr {
        DerivExpr { terms: self.terms.iter().map(|((a, f), c)| ((a + k, f.clone()), c.clone())).collect() }
    }

    pub fn mul(&self, o: &DerivExpr) -> DerivExpr {
        let mut out = DerivExpr::zero();
        for ((a1, f1), c1) in &self.terms {
            for ((a2, f2), c2) in &o.terms {
                let mut f = f1.clone();
                f.extend(f2.iter().cloned());
                out.add_term(a1 + a2, f, c1 * c2);
            }
        }
        out
    }

    /// Total derivative along indexed variable `i` (Leibniz rule).
    pub fn derivative(&self, i: usize) -> DerivExpr {
        let mut out = DerivExpr::zero();
        for ((a, f), c) in &self.terms {
            for k in 0..f.len() {
                let mut g = f.clone();
                g[k] = g[k].bump(i);
                out.add_term(*a, g, c.clone());
            }
        }
        out
    }

    /// Keeps the terms with exactly `n` factors.
    pub fn homogeneous_part(&self, n: usize) -> DerivExpr {
        DerivExpr {
            terms: self.terms.iter().filter(|((_, f), _)| f.len() == n).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Keeps the terms with auxiliary power `k` and drops the power.
    pub fn aux_coefficient(&self, k: i32) -> DerivExpr {
        DerivExpr {
            terms: self.terms.iter().filter(|((a, _), _)| *a == k).map(|((_, f), c)| ((0, f.clone()), c.clone())).collect(),
        }
    }

    /// Renames fields.
    pub fn map_fields<F: Fn(u8) -> u8>(&self, f: F) -> DerivExpr {
        let mut out = DerivExpr::zero();
        for ((a, fs), c) in &self.terms {
            let g = fs.iter().map(|x| Factor { field: f(x.field), derivs: x.derivs.clone() }).collect();
            out.add_term(*a, g, c.clone());
        }
        out
    }

    /// Evaluates on concrete series, one per field.
    pub fn evaluate(&self, fields: &[TruncSeries]) -> Result<TruncSeries> {
        let first = &fields[0];
        let mut cache: BTreeMap<Factor, TruncSeries> = BTreeMap::new();
        let mut out: Option<TruncSeries> = None;
        for ((a, fs), c) in &self.terms {
            let mut term = TruncSeries::one(first.family(), first.caps()).scale(c).shift(&Monomial::aux(*a));
            for f in fs {
                let v = cache
                    .entry(f.clone())
                    .or_insert_with(|| fields[f.field as usize].partial_multi(&f.derivs))
                    .clone();
                term = term.checked_mul(&v)?;
            }
            out = Some(match out {
                None => term,
                Some(o) => o.checked_add(&term)?,
            });
        }
        Ok(out.unwrap_or_else(|| TruncSeries::zero(first.family(), first.caps())))
    }

    /// Renders with `label(i)` naming indexed variable `i` and `name(field)`
    /// naming the unknowns.
    pub fn render<L, N>(&self, label: L, name: N, aux: &str) -> String
    where
        L: Fn(usize) -> String,
        N: Fn(u8) -> String,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((a, fs), c) in &self.terms {
            let mut s = format_rat(c);
            if *a != 0 {
                s.push_str(&format!(" {aux}^{a}"));
            }
            for f in fs {
                let idx: Vec<String> = f
                    .derivs
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &k)| std::iter::repeat_n(label(i), k as usize))
                    .collect();
                if idx.is_empty() {
                    s.push_str(&format!(" {}", name(f.field)));
                } else {
                    s.push_str(&format!(" {}_{{{}}}", name(f.field), idx.join(",")));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for DerivExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(|i| (i + 1).to_string(), |k| if k == 0 { "F".into() } else { format!("F{k}") }, "z");
        f.write_str(&s)
    }
}
