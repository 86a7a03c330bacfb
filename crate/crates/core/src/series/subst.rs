use std::collections::{BTreeMap, HashMap};



use super::{var_weight, Caps, Family, Monomial, TruncSeries};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// A simultaneous substitution of every indexed variable by a series, and of
/// the auxiliary variable by a power of the target auxiliary variable
/// (`beta -> q^2` is `aux_factor = 2`).
///
/// Images must be triangular: every term of the image of a variable of weight
/// `w` has weight at least `w` and involves at least one indexed variable.
/// Under that condition a source exact up to weight `W` produces a target
/// exact up to weight `W`.
#[derive(Debug, Clone)]
pub struct Substitution {
    target: Family,
    caps: Caps,
    aux_factor: i32,
    images: Vec<TruncSeries>,
}

impl Substitution {
    /// `caps` is the truncation of the output. Images are re-capped to
    /// `caps.weight` with an unbounded auxiliary range, since negative
    /// auxiliary exponents may still cancel.
    pub fn new(target: Family, caps: Caps, aux_factor: i32, images: Vec<TruncSeries>) -> Result<Self> {
        let inner = Caps { weight: caps.weight, aux: i32::MAX };
        let mut fixed = Vec::with_capacity(images.len());
        for (i, img) in images.into_iter().enumerate() {
            if img.family() != target {
                return Err(Error::FamilyMismatch(img.family().name().into(), target.name().into()));
            }
            for m in img.terms().keys() {
                let w = m.weight();
                if w < var_weight(i) || !m.has_vars() {
                    return Err(Error::NonTriangular(i, w, var_weight(i)));
                }
            }
            fixed.push(img.with_caps(inner));
        }
        Ok(Substitution { target, caps, aux_factor, images: fixed })
    }

    /// Identity substitution on the first `n` variables of `family`.
    pub fn identity(family: Family, caps: Caps, n: usize) -> Self {
        let images = (0..n).map(|i| TruncSeries::var(family, caps, i)).collect();
        Substitution::new(family, caps, 1, images).expect("identity is triangular")
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn image(&self, i: usize) -> Option<&TruncSeries> {
        self.images.get(i)
    }

    /// Applies the substitution. Source terms are grouped by their indexed
    /// part so that each product of images is expanded once.
    pub fn apply(&self, source: &TruncSeries) -> Result<TruncSeries> {
        let inner = Caps { weight: self.caps.weight, aux: i32::MAX };
        let mut groups: BTreeMap<&[u16], Vec<(i32, &Rat)>> = BTreeMap::new();
        for (m, c) in source.terms() {
            if m.weight() > self.caps.weight {
                continue;
            }
            groups.entry(m.exps.as_slice()).or_default().push((m.aux, c));
        }
        let mut powers: HashMap<(usize, u16), TruncSeries> = HashMap::new();
        let mut out = TruncSeries::zero(self.target, self.caps);
        for (exps, auxes) in groups {
            let mut prod = TruncSeries::one(self.target, inner);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = self.images.get(i).ok_or(Error::MissingImage(i))?;
                let p = powers.entry((i, e)).or_insert_with(|| img.pow(e as u32));
                prod = &prod * p;
                if prod.is_zero() {
                    break;
                }
            }
            for (aux, c) in auxes {
                let shift = aux * self.aux_factor;
                for (m, v) in prod.terms() {
                    let mono = Monomial { aux: m.aux + shift, exps: m.exps.clone() };
                    out.add_term(mono, v * c);
                }
            }
        }
        Ok(out)
    }
}

impl TruncSeries {
    pub fn substitute(&self, s: &Substitution) -> Result<TruncSeries> {
        s.apply(self)
    }
}

