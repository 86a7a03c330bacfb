use serde::{Deserialize, Serialize};

use super::{Caps, Family, Monomial, TruncSeries};
use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat};

/// Wire form of a series: `{"family", "caps", "terms": [{"exp", "coeff"}]}`.
/// `exp` lists the auxiliary exponent first, then the indexed exponents;
/// coefficients are `"num/den"` strings. A `null` cap means unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub family: String,
    pub caps: CapsJson,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsJson {
    pub weight: Option<u64>,
    pub aux: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: String,
}

impl From<&TruncSeries> for SeriesJson {
    fn from(s: &TruncSeries) -> Self {
        let caps = s.caps();
        SeriesJson {
            family: s.family().name().to_string(),
            caps: CapsJson {
                weight: (caps.weight != u64::MAX).then_some(caps.weight),
                aux: (caps.aux != i32::MAX).then_some(caps.aux),
            },
            terms: s
                .terms()
                .iter()
                .map(|(m, c)| TermJson {
                    exp: std::iter::once(m.aux as i64).chain(m.exps.iter().map(|&e| e as i64)).collect(),
                    coeff: format_rat(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for TruncSeries {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<Self> {
        let family = Family::from_name(&j.family)?;
        let caps = Caps { weight: j.caps.weight.unwrap_or(u64::MAX), aux: j.caps.aux.unwrap_or(i32::MAX) };
        let mut s = TruncSeries::zero(family, caps);
        for t in &j.terms {
            let (aux, rest) = t.exp.split_first().ok_or_else(|| Error::Parse("empty exponent vector".into()))?;
            let aux = i32::try_from(*aux).map_err(|_| Error::Parse("aux exponent out of range".into()))?;
            let exps = rest
                .iter()
                .map(|&e| u16::try_from(e).map_err(|_| Error::Parse(format!("bad exponent {e}"))))
                .collect::<Result<Vec<_>>>()?;
            s.add_term(Monomial::new(aux, exps), parse_rat(&t.coeff)?);
        }
        Ok(s)
    }
}

impl TruncSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("series serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&SeriesJson::from(self)).expect("series serializes")
    }

    pub fn from_json(s: &str) -> Result<TruncSeries> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        TruncSeries::try_from(&j)
    }
}
