//! Normal-ordered differential operators in `t_0, t_1, ...` graded by `z`,
//! the coefficients `a_{d,d+k}`, and the logarithm `alpha` of the operator
//! they generate.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pic::alternating_moment;
use crate::rat::{as_integer, binomial, rat, rbig, rfactorial, Rat};
use crate::series::{Monomial, TruncSeries};

/// `a_{d,d+k}`: the coefficient of `psi^{d+k}` in
/// `sum_b (-1)^{d-b+1} / ((d-b+1)! (b-1)!) / (1 - b psi)`.
pub fn a_coeff(d: usize, k: usize) -> Rat {
    alternating_moment(d, d + k)
}

/// Integer table of `a_{d,d+k}` for `d <= max_d`, `k <= max_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ACoeffTable {
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl ACoeffTable {
    /// Fails if some entry is not an integer.
    pub fn build(max_d: usize, max_k: usize) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for d in 0..=max_d {
            for k in 0..=max_k {
                let v = a_coeff(d, k);
                let i = as_integer(&v).ok_or_else(|| Error::OutOfRange(format!("a_({d},{}) = {v} is not an integer", d + k)))?;
                entries.insert((d, k), i);
            }
        }
        Ok(ACoeffTable { entries })
    }

    pub fn get(&self, d: usize, k: usize) -> Option<&BigInt> {
        self.entries.get(&(d, k))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }
}

/// Which way a first-order piece moves an index. `Lowering` is
/// `t_n d/dt_{n+k}`, the form under which the transformed Hurwitz series is
/// `L F`; `Raising` is `t_{n+k} d/dt_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Lowering,
    Raising,
}

impl Orientation {
    /// `(t index, derivative index)` of the piece indexed by `(n, k)`.
    pub fn letter(self, n: usize, k: usize) -> (usize, usize) {
        match self {
            Orientation::Lowering => (n, n + k),
            Orientation::Raising => (n + k, n),
        }
    }
}

type OpKey = (u32, Vec<u16>, Vec<u16>);

fn trim(mut v: Vec<u16>) -> Vec<u16> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn unit(i: usize) -> Vec<u16> {
    let mut v = vec![0; i + 1];
    v[i] = 1;
    v
}

fn add_exps(a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut v = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        v[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        v[i] += x;
    }
    trim(v)
}

/// `sum c z^j t^a d^b` with every `t` to the left of every derivative,
/// truncated above `z^max_z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZOperator {
    terms: BTreeMap<OpKey, Rat>,
    max_z: u32,
}

impl ZOperator {
    pub fn zero(max_z: u32) -> Self {
        ZOperator { terms: BTreeMap::new(), max_z }
    }

    pub fn identity(max_z: u32) -> Self {
        let mut op = Self::zero(max_z);
        op.add_term(0, Vec::new(), Vec::new(), Rat::one());
        op
    }

    pub fn max_z(&self) -> u32 {
        self.max_z
    }

    pub fn add_term(&mut self, z: u32, t: Vec<u16>, d: Vec<u16>, c: Rat) {
        if z > self.max_z || c.is_zero() {
            return;
        }
        let key = (z, trim(t), trim(d));
        let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `c z^j t_a d/dt_b`.
    pub fn add_letter(&mut self, z: u32, a: usize, b: usize, c: Rat) {
        self.add_term(z, unit(a), unit(b), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &[u16], &[u16], &Rat)> {
        self.terms.iter().map(|((z, t, d), c)| (*z, t.as_slice(), d.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `z^j prod t_{ts} prod d/dt_{ds}`.
    pub fn coeff(&self, z: u32, ts: &[usize], ds: &[usize]) -> Rat {
        let t = Monomial::from_indices(0, ts).exps;
        let d = Monomial::from_indices(0, ds).exps;
        self.terms.get(&(z, t, d)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn plus(&self, o: &ZOperator) -> ZOperator {
        let mut out = ZOperator { terms: self.terms.clone(), max_z: self.max_z.min(o.max_z) };
        out.terms.retain(|k, _| k.0 <= out.max_z);
        for ((z, t, d), c) in &o.terms {
            out.add_term(*z, t.clone(), d.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> ZOperator {
        let mut out = Self::zero(self.max_z);
        for ((z, t, d), v) in &self.terms {
            out.add_term(*z, t.clone(), d.clone(), v * c);
        }
        out
    }

    /// Product of symbols: concatenates `t`s and derivatives without the
    /// commutator corrections.
    pub fn normal_product(&self, o: &ZOperator) -> ZOperator {
        let mut out = Self::zero(self.max_z.min(o.max_z));
        for ((z1, t1, d1), c1) in &self.terms {
            for ((z2, t2, d2), c2) in &o.terms {
                out.add_term(z1 + z2, add_exps(t1, t2), add_exps(d1, d2), c1 * c2);
            }
        }
        out
    }

    /// Operator composition `self o other`, normal-ordered by Leibniz:
    /// `d^b t^c = sum_g prod C(b,g) c!/(c-g)! t^{c-g} d^{b-g}`.
    pub fn compose(&self, o: &ZOperator) -> ZOperator {
        let mut out = Self::zero(self.max_z.min(o.max_z));
        for ((z1, t1, d1), c1) in &self.terms {
            for ((z2, t2, d2), c2) in &o.terms {
                if z1 + z2 > out.max_z {
                    continue;
                }
                let n = d1.len().min(t2.len());
                let shared: Vec<usize> = (0..n).filter(|&i| d1[i] > 0 && t2[i] > 0).collect();
                let mut gamma = vec![0u16; n];
                loop {
                    let mut c = c1 * c2;
                    let mut tt = t2.clone();
                    let mut dd = d1.clone();
                    for &i in &shared {
                        let g = gamma[i];
                        c *= rbig(binomial(d1[i] as u64, g as u64)) * rfactorial(t2[i] as u64)
                            / rfactorial((t2[i] - g) as u64);
                        tt[i] -= g;
                        dd[i] -= g;
                    }
                    out.add_term(z1 + z2, add_exps(t1, &tt), add_exps(&dd, d2), c);
                    // next multi-index gamma <= min(d1, t2) on the shared slots
                    let mut pos = 0;
                    loop {
                        if pos == shared.len() {
                            break;
                        }
                        let i = shared[pos];
                        if gamma[i] < d1[i].min(t2[i]) {
                            gamma[i] += 1;
                            break;
                        }
                        gamma[i] = 0;
                        pos += 1;
                    }
                    if pos == shared.len() {
                        break;
                    }
                }
            }
        }
        out
    }

    fn exp_with(&self, mul: impl Fn(&ZOperator, &ZOperator) -> ZOperator) -> Result<ZOperator> {
        if self.terms.keys().any(|k| k.0 == 0) {
            return Err(Error::Divergent);
        }
        let mut out = Self::identity(self.max_z);
        let mut power = Self::identity(self.max_z);
        for p in 1..=self.max_z {
            power = mul(&power, self).scale(&rat(1, p as i64));
            out = out.plus(&power);
        }
        Ok(out)
    }

    /// `exp` under composition. Needs every term to carry a positive `z`
    /// power.
    pub fn exp(&self) -> Result<ZOperator> {
        self.exp_with(|a, b| a.compose(b))
    }

    /// `exp` of the symbol, normal-ordered.
    pub fn normal_exp(&self) -> Result<ZOperator> {
        self.exp_with(|a, b| a.normal_product(b))
    }

    /// Applies the operator to a series whose auxiliary variable is `z`.
    /// A term removing net weight `w` only sees exact input up to the cap,
    /// so the output weight cap drops by the largest such `w`.
    pub fn apply(&self, s: &TruncSeries) -> TruncSeries {
        let weight = |e: &[u16]| -> u64 { e.iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x as u64).sum() };
        let drop = self.terms.keys().map(|(_, t, d)| weight(d).saturating_sub(weight(t))).max().unwrap_or(0);
        let caps = s.caps().lower_weight(drop);
        let mut out = TruncSeries::zero(s.family(), caps);
        let mut cache: HashMap<&[u16], TruncSeries> = HashMap::new();
        for ((z, t, d), c) in &self.terms {
            let ds = cache.entry(d.as_slice()).or_insert_with(|| s.partial_multi(d));
            for (m, v) in ds.terms() {
                out.add_term(m.mul(&Monomial::new(*z as i32, t.clone())), v * c);
            }
        }
        out
    }
}

/// `L = :exp(sum_k z^k sum_n a_{n,n+k} X_{n,k}):` on indices `<= max_index`.
pub fn build_big_l(max_z: u32, max_index: usize, orientation: Orientation) -> ZOperator {
    let mut a = ZOperator::zero(max_z);
    for k in 1..=max_z as usize {
        for n in 0..=max_index.saturating_sub(k) {
            let (ti, di) = orientation.letter(n, k);
            a.add_letter(k as u32, ti, di, a_coeff(n, k));
        }
    }
    a.normal_exp().expect("positive z grading")
}

/// Memoized `alpha_{n,n+k}`, solved from
/// `a_{n,n+k} = sum over compositions (k_1..k_r) of k of
///  1/r! prod alpha_{n + k_1 + .. + k_{i-1}, n + k_1 + .. + k_i}`.
#[derive(Debug, Default)]
pub struct AlphaTable {
    memo: HashMap<(usize, usize), Rat>,
}

impl AlphaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alpha(&mut self, n: usize, k: usize) -> Rat {
        if k == 0 {
            return Rat::zero();
        }
        if let Some(v) = self.memo.get(&(n, k)) {
            return v.clone();
        }
        let mut chains = Rat::zero();
        // compositions with at least two parts: first part j < k
        for j in 1..k {
            let head = self.alpha(n, j);
            if head.is_zero() {
                continue;
            }
            chains += head * self.tail(n + j, k - j, 2);
        }
        let v = a_coeff(n, k) - chains;
        self.memo.insert((n, k), v.clone());
        v
    }

    /// Sum over compositions of `k` starting at `n`, with `r - 1` parts
    /// already fixed, of `prod alpha / (total parts)!`.
    fn tail(&mut self, n: usize, k: usize, r: usize) -> Rat {
        let mut s = self.alpha(n, k) / rfactorial(r as u64);
        for j in 1..k {
            let head = self.alpha(n, j);
            if !head.is_zero() {
                s += head * self.tail(n + j, k - j, r + 1);
            }
        }
        s
    }
}

/// `l = sum_k z^k sum_n alpha_{n,n+k} X_{n,k}` on indices `<= max_index`.
pub fn build_small_l(max_z: u32, max_index: usize, orientation: Orientation, table: &mut AlphaTable) -> ZOperator {
    let mut l = ZOperator::zero(max_z);
    for k in 1..=max_z as usize {
        for n in 0..=max_index.saturating_sub(k) {
            let (ti, di) = orientation.letter(n, k);
            l.add_letter(k as u32, ti, di, table.alpha(n, k));
        }
    }
    l
}

/// `exp(l) = L` through `z^max_z` on indices `<= max_index`.
pub fn exp_l_check(max_z: u32, max_index: usize, orientation: Orientation) -> Result<bool> {
    let mut table = AlphaTable::new();
    let l = build_small_l(max_z, max_index, orientation, &mut table);
    Ok(l.exp()? == build_big_l(max_z, max_index, orientation))
}

/// The published head of the sequence `c_k`.
pub const CK_SEQUENCE: [(i64, i64); 12] = [
    (1, 1),
    (-1, 2),
    (1, 2),
    (-2, 3),
    (11, 12),
    (-3, 4),
    (-11, 6),
    (29, 4),
    (493, 12),
    (-2711, 6),
    (-12406, 15),
    (2636317, 60),
];

/// Ratio test for one `k` and one reading of the binomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CkRow {
    pub k: usize,
    pub orientation: Orientation,
    pub ratios: Vec<String>,
    /// The common ratio, if all ratios agree.
    pub constant: Option<String>,
    pub expected: Option<String>,
    pub matches: bool,
}

/// For each `k <= k_max`, tests whether `alpha_{n,n+k} / binom(N, k+1)` is
/// constant over `n <= n_max`, where `N = n+k+1` when `t_n` is the lower
/// end of the piece and `N = n+2k+1` when the printed `t_n` is read as the
/// upper end.
pub fn ck_conjecture_check(k_max: usize, n_max: usize) -> Vec<CkRow> {
    let mut table = AlphaTable::new();
    let mut rows = Vec::new();
    for orientation in [Orientation::Lowering, Orientation::Raising] {
        for k in 1..=k_max {
            let ratios: Vec<Rat> = (0..=n_max)
                .map(|n| {
                    let top = match orientation {
                        Orientation::Lowering => n + k + 1,
                        Orientation::Raising => n + 2 * k + 1,
                    };
                    table.alpha(n, k) / rbig(binomial(top as u64, k as u64 + 1))
                })
                .collect();
            let constant = ratios.windows(2).all(|w| w[0] == w[1]).then(|| ratios[0].clone());
            let expected = CK_SEQUENCE.get(k - 1).map(|&(p, q)| rat(p, q));
            let matches = matches!((&constant, &expected), (Some(c), Some(e)) if c == e);
            rows.push(CkRow {
                k,
                orientation,
                ratios: ratios.iter().map(crate::rat::format_rat).collect(),
                constant: constant.as_ref().map(crate::rat::format_rat),
                expected: expected.as_ref().map(crate::rat::format_rat),
                matches,
            });
        }
    }
    rows
}
