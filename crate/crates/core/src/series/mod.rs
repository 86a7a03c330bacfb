//! Truncated sparse multivariate power series over the rationals.
//!
//! A series lives in one variable family. Every family has an auxiliary
//! variable (beta, q = beta^(1/2), or u = beta^(1/3)) stored as an integer
//! exponent, plus indexed variables: `p_1, p_2, ...` (index 0 is `p_1`) or
//! `t_0, t_1, ...` (index 0 is `t_0`). The weight of the variable at index
//! `i` is `i + 1` in every family, so `weight(p_b) = b` and
//! `weight(t_d) = d + 1`. Truncation is by total weight and by the
//! auxiliary exponent, and it is applied eagerly by every operation.

mod diffop;
mod json;
mod subst;

pub use diffop::DiffOp;
pub use json::SeriesJson;
pub use subst::Substitution;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{format_rat, rint, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `p_1, p_2, ...` with auxiliary `beta`.
    P,
    /// `t_0, t_1, ...` with auxiliary `q`, `q^2 = beta`.
    TQ,
    /// `t_0, t_1, ...` with auxiliary `u`, `u^3 = beta` (and `z = u^2`).
    TU,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::P => "P",
            Family::TQ => "T_Q",
            Family::TU => "T_U",
        }
    }

    pub fn from_name(s: &str) -> Result<Family> {
        match s {
            "P" => Ok(Family::P),
            "T_Q" => Ok(Family::TQ),
            "T_U" => Ok(Family::TU),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }

    fn var_name(self, i: usize) -> String {
        match self {
            Family::P => format!("p{}", i + 1),
            Family::TQ | Family::TU => format!("t{i}"),
        }
    }

    fn aux_name(self) -> &'static str {
        match self {
            Family::P => "b",
            Family::TQ => "q",
            Family::TU => "u",
        }
    }
}

/// A variable of a family: the auxiliary one or an indexed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Aux,
    Index(usize),
}

pub fn var_weight(i: usize) -> u64 {
    i as u64 + 1
}

/// Exponent vector. `exps` never carries trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub aux: i32,
    pub exps: Vec<u16>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new(aux: i32, mut exps: Vec<u16>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { aux, exps }
    }

    pub fn var(i: usize) -> Self {
        let mut exps = vec![0; i + 1];
        exps[i] = 1;
        Monomial { aux: 0, exps }
    }

    pub fn aux(e: i32) -> Self {
        Monomial { aux: e, exps: Vec::new() }
    }

    /// Builds the monomial `prod x_{i}` over a list of indices (repeats allowed).
    pub fn from_indices(aux: i32, indices: &[usize]) -> Self {
        let mut exps = Vec::new();
        for &i in indices {
            if exps.len() <= i {
                exps.resize(i + 1, 0);
            }
            exps[i] += 1;
        }
        Monomial::new(aux, exps)
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| var_weight(i) * e as u64)
            .sum()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn has_vars(&self) -> bool {
        !self.exps.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial { aux: self.aux + other.aux, exps }
    }

    /// Indices of the variables, repeated by multiplicity, in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// `prod e_i!`
    pub fn factorial_of_exps(&self) -> Rat {
        self.exps
            .iter()
            .map(|&e| crate::rat::rfactorial(e as u64))
            .fold(Rat::one(), |a, b| a * b)
    }
}

/// Truncation caps: maximal total weight and maximal auxiliary exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub weight: u64,
    pub aux: i32,
}

impl Caps {
    pub const DEFAULT_WEIGHT: u64 = 12;
    pub const DEFAULT_AUX: i32 = 12;

    pub fn new(weight: u64, aux: i32) -> Self {
        Caps { weight, aux }
    }

    pub fn unbounded() -> Self {
        Caps { weight: u64::MAX, aux: i32::MAX }
    }

    pub fn meet(self, other: Caps) -> Caps {
        Caps { weight: self.weight.min(other.weight), aux: self.aux.min(other.aux) }
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        m.aux <= self.aux && m.weight() <= self.weight
    }

    pub fn lower_weight(self, by: u64) -> Caps {
        Caps { weight: sat_sub(self.weight, by), aux: self.aux }
    }

    pub fn lower_aux(self, by: i32) -> Caps {
        Caps { weight: self.weight, aux: sat_sub_i(self.aux, by) }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::new(Self::DEFAULT_WEIGHT, Self::DEFAULT_AUX)
    }
}

pub(crate) fn sat_sub(cap: u64, by: u64) -> u64 {
    if cap == u64::MAX {
        cap
    } else {
        cap.saturating_sub(by)
    }
}

pub(crate) fn sat_sub_i(cap: i32, by: i32) -> i32 {
    if cap == i32::MAX {
        cap
    } else {
        cap - by
    }
}

/// Sparse truncated power series. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    family: Family,
    caps: Caps,
    terms: BTreeMap<Monomial, Rat>,
}

impl TruncSeries {
    pub fn zero(family: Family, caps: Caps) -> Self {
        TruncSeries { family, caps, terms: BTreeMap::new() }
    }

    pub fn constant(family: Family, caps: Caps, c: Rat) -> Self {
        Self::monomial(family, caps, Monomial::one(), c)
    }

    pub fn one(family: Family, caps: Caps) -> Self {
        Self::constant(family, caps, Rat::one())
    }

    pub fn var(family: Family, caps: Caps, i: usize) -> Self {
        Self::monomial(family, caps, Monomial::var(i), Rat::one())
    }

    pub fn monomial(family: Family, caps: Caps, m: Monomial, c: Rat) -> Self {
        let mut s = Self::zero(family, caps);
        s.add_term(m, c);
        s
    }

    /// Builds a series from raw terms, truncating and dropping zeros.
    pub fn from_terms<I>(family: Family, caps: Caps, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut s = Self::zero(family, caps);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    /// Adds `c * m` in place (ignored when outside the caps).
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() || !self.caps.admits(&m) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Same series with tighter (or looser, as a relabel) caps; terms outside
    /// the new caps are dropped.
    pub fn with_caps(&self, caps: Caps) -> Self {
        let mut s = Self::zero(self.family, caps);
        for (m, c) in &self.terms {
            if caps.admits(m) {
                s.terms.insert(m.clone(), c.clone());
            }
        }
        s
    }

    pub fn truncate(&self, caps: Caps) -> Self {
        self.with_caps(self.caps.meet(caps))
    }

    /// Reinterprets the series in another family without touching exponents.
    pub fn relabel(&self, family: Family) -> Self {
        TruncSeries { family, caps: self.caps, terms: self.terms.clone() }
    }

    pub fn retain<F: FnMut(&Monomial, &Rat) -> bool>(&self, mut keep: F) -> Self {
        let terms = self.terms.iter().filter(|(m, c)| keep(m, c)).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncSeries { family: self.family, caps: self.caps, terms }
    }

    pub fn map_coeffs<F: FnMut(&Monomial, &Rat) -> Rat>(&self, mut f: F) -> Self {
        Self::from_terms(self.family, self.caps, self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))))
    }

    fn check_family(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family.name().into(), other.family.name().into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        let caps = self.caps.meet(other.caps);
        let mut s = self.with_caps(caps);
        for (m, c) in &other.terms {
            s.add_term(m.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        let caps = self.caps.meet(other.caps);
        let mut s = Self::zero(self.family, caps);
        // Sort the right factor by weight so the inner loop can stop early.
        let mut right: Vec<(&Monomial, &Rat, u64)> = other.terms.iter().map(|(m, c)| (m, c, m.weight())).collect();
        right.sort_by_key(|x| x.2);
        for (ma, ca) in &self.terms {
            let wa = ma.weight();
            if wa > caps.weight {
                continue;
            }
            for &(mb, cb, wb) in &right {
                if wa + wb > caps.weight {
                    break;
                }
                if ma.aux.saturating_add(mb.aux) > caps.aux {
                    continue;
                }
                s.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(s)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.family, self.caps);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        TruncSeries { family: self.family, caps: self.caps, terms }
    }

    fn neg_ref(&self) -> Self {
        self.scale(&rint(-1))
    }

    /// Multiplies every term by the monomial `m` (with truncation).
    pub fn shift(&self, m: &Monomial) -> Self {
        Self::from_terms(self.family, self.caps, self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.family, self.caps);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative. Differentiating by an indexed variable of
    /// weight `w` lowers the weight cap by `w`; by the auxiliary variable,
    /// lowers the auxiliary cap by one.
    pub fn partial(&self, v: Var) -> Self {
        match v {
            Var::Index(i) => {
                let caps = self.caps.lower_weight(var_weight(i));
                let mut s = Self::zero(self.family, caps);
                for (m, c) in &self.terms {
                    let e = m.exp(i);
                    if e == 0 {
                        continue;
                    }
                    let mut exps = m.exps.clone();
                    exps[i] -= 1;
                    s.add_term(Monomial::new(m.aux, exps), c * rint(e as i64));
                }
                s
            }
            Var::Aux => {
                let caps = self.caps.lower_aux(1);
                let mut s = Self::zero(self.family, caps);
                for (m, c) in &self.terms {
                    if m.aux == 0 {
                        continue;
                    }
                    let mono = Monomial { aux: m.aux - 1, exps: m.exps.clone() };
                    s.add_term(mono, c * rint(m.aux as i64));
                }
                s
            }
        }
    }

    /// Mixed partial derivative given by an exponent vector over the indexed
    /// variables.
    pub fn partial_multi(&self, exps: &[u16]) -> Self {
        let mut s = self.clone();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                s = s.partial(Var::Index(i));
            }
        }
        s
    }

    /// Part of the series with a given auxiliary exponent, returned with
    /// auxiliary exponent 0.
    pub fn aux_coefficient(&self, e: i32) -> Self {
        let caps = Caps { weight: self.caps.weight, aux: 0 };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.aux == e)
            .map(|(m, c)| (Monomial { aux: 0, exps: m.exps.clone() }, c.clone()));
        Self::from_terms(self.family, caps, terms)
    }

    pub fn min_aux(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.aux).min()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::weight).max()
    }

    /// `exp(self)`; requires a vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        self.check_nilpotent()?;
        let mut acc = Self::one(self.family, self.caps);
        let mut power = Self::one(self.family, self.caps);
        let mut k = 1i64;
        loop {
            power = (&power * self).scale(&Rat::new(1.into(), k.into()));
            if power.is_zero() {
                return Ok(acc);
            }
            acc = &acc + &power;
            k += 1;
        }
    }

    /// `log(self)`; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.log_with(|s| s)
    }

    /// `log(self)` where every intermediate power passes through `filter`
    /// (used to cut by number of variables, a truncation compatible with
    /// multiplication).
    pub fn log_with<F: Fn(Self) -> Self>(&self, filter: F) -> Result<Self> {
        if self.constant_term() != Rat::one() {
            return Err(Error::NonzeroConstant);
        }
        let mut x = self.clone();
        x.terms.remove(&Monomial::one());
        x.check_nilpotent()?;
        let x = filter(x);
        let mut acc = Self::zero(self.family, self.caps);
        let mut power = Self::one(self.family, self.caps);
        let mut k = 1i64;
        loop {
            power = filter(&power * &x);
            if power.is_zero() {
                return Ok(acc);
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &power.scale(&Rat::new(sign.into(), k.into()));
            k += 1;
        }
    }

    fn check_nilpotent(&self) -> Result<()> {
        // Every term must raise a capped grading: weight or auxiliary exponent.
        let w_capped = self.caps.weight != u64::MAX;
        let a_capped = self.caps.aux != i32::MAX;
        let ok = self
            .terms
            .keys()
            .all(|m| (m.weight() > 0 && w_capped) || (m.aux > 0 && a_capped));
        if ok {
            Ok(())
        } else {
            Err(Error::Divergent)
        }
    }

    /// Substitutes rational values for the auxiliary variable exponent 0 only,
    /// i.e. keeps the auxiliary-free part.
    pub fn at_aux_zero(&self) -> Self {
        self.retain(|m, _| m.aux == 0)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rat(c))?;
            if m.aux != 0 {
                write!(f, "*{}^{}", self.family.aux_name(), m.aux)?;
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.family.var_name(i))?,
                    _ => write!(f, "*{}^{}", self.family.var_name(i), e)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    /// Panics on a family mismatch; use `checked_add` to get an error instead.
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_add(rhs).expect("series_add")
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_sub(rhs).expect("series_sub")
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_mul(rhs).expect("series_mul")
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests;
