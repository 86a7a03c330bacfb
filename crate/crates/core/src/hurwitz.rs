//! Hurwitz numbers of two kinds, each computed by independent routes, and the
//! generating series built from them.
//!
//! Counting model: a cover is a tuple of permutations in `S_d` whose product
//! is the identity; the count is divided by `d!` and multiplied by the number
//! of ways to number the cycles over infinity compatibly with the profile.
//! This reproduces both unstable parts exactly (see tests).

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::{tensor_fit, MultiPoly};
use crate::partition::{partitions_of, ColShape, Partition};
use crate::rat::{parse_rat, format_rat, rbig, rfactorial, rint, rpow, Rat};
use crate::series::{Caps, Family, Monomial, TruncSeries};
use crate::symmetric::{character, dimension, hook_coefficient, power_monomial, schur_poly};

/// Largest degree accepted by the brute-force route.
pub const BRUTE_MAX_DEGREE: usize = 5;
/// Largest number of simple branch points accepted by the brute-force route.
pub const BRUTE_MAX_BRANCH: usize = 7;
/// Largest degree accepted by the character routes.
pub const FROBENIUS_MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HurwitzKind {
    /// Unique preimage of 0, `2g - 1 + n` simple branch points.
    OnePart,
    /// `d + n + 2g - 2` simple branch points.
    Simple,
}

impl HurwitzKind {
    pub fn from_name(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "onepart" | "one-part" => Ok(HurwitzKind::OnePart),
            "simple" => Ok(HurwitzKind::Simple),
            _ => Err(Error::Parse(format!("unknown kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Frobenius,
    Closed,
}

impl Method {
    pub fn from_name(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brute" => Ok(Method::Brute),
            "frobenius" => Ok(Method::Frobenius),
            "closed" => Ok(Method::Closed),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// A Hurwitz number request. The profile is ordered (numbered preimages).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HurwitzQuery {
    pub kind: HurwitzKind,
    pub genus: u32,
    pub profile: Vec<usize>,
}

impl HurwitzQuery {
    pub fn new(kind: HurwitzKind, genus: u32, profile: Vec<usize>) -> Result<Self> {
        if profile.is_empty() || profile.contains(&0) {
            return Err(Error::OutOfRange(format!("profile must be nonempty and positive: {profile:?}")));
        }
        Ok(HurwitzQuery { kind, genus, profile })
    }

    pub fn one_part(genus: u32, profile: &[usize]) -> Result<Self> {
        Self::new(HurwitzKind::OnePart, genus, profile.to_vec())
    }

    pub fn simple(genus: u32, profile: &[usize]) -> Result<Self> {
        Self::new(HurwitzKind::Simple, genus, profile.to_vec())
    }

    pub fn degree(&self) -> usize {
        self.profile.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.profile.len()
    }

    /// Number of simple branch points.
    pub fn branch_points(&self) -> usize {
        let g2 = 2 * self.genus as usize;
        match self.kind {
            HurwitzKind::OnePart => g2 + self.n() - 1,
            HurwitzKind::Simple => self.degree() + self.n() + g2 - 2,
        }
    }

    pub fn partition(&self) -> Partition {
        Partition::from_unsorted(self.profile.clone())
    }
}

/// Computes a Hurwitz number with the chosen route.
pub fn hurwitz(q: &HurwitzQuery, method: Method) -> Result<Rat> {
    match method {
        Method::Brute => hurwitz_bruteforce(q),
        Method::Frobenius => hurwitz_frobenius(q),
        Method::Closed => hurwitz_closed(q),
    }
}

// ---------------------------------------------------------------------------
// Brute force

type Perm = Vec<u8>;

fn identity(d: usize) -> Perm {
    (0..d as u8).collect()
}

fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = identity(d);
    heap_permutations(d, &mut cur, &mut out);
    out
}

fn heap_permutations(k: usize, a: &mut Perm, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, a, out);
}

fn cycle_type(p: &Perm) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_unsorted(lens)
}

fn transpositions(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

/// Right multiplication by the transposition `(i j)`.
fn times_transposition(p: &Perm, (i, j): (usize, usize)) -> Perm {
    let mut q = p.clone();
    q.swap(i, j);
    q
}

/// Canonical component labelling after joining `i` and `j`.
fn join(comp: &[u8], i: usize, j: usize) -> Vec<u8> {
    let (a, b) = (comp[i], comp[j]);
    let merged: Vec<u8> = comp.iter().map(|&c| if c == b { a } else { c }).collect();
    let mut relabel = HashMap::new();
    merged
        .iter()
        .map(|c| {
            let next = relabel.len() as u8;
            *relabel.entry(*c).or_insert(next)
        })
        .collect()
}

fn check_brute_bounds(q: &HurwitzQuery) -> Result<()> {
    let (d, m) = (q.degree(), q.branch_points());
    if d > BRUTE_MAX_DEGREE || m > BRUTE_MAX_BRANCH {
        return Err(Error::OutOfRange(format!(
            "brute force needs d <= {BRUTE_MAX_DEGREE} and m <= {BRUTE_MAX_BRANCH}, got d = {d}, m = {m}"
        )));
    }
    Ok(())
}

/// Direct enumeration over tuples of permutations.
pub fn hurwitz_bruteforce(q: &HurwitzQuery) -> Result<Rat> {
    check_brute_bounds(q)?;
    let d = q.degree();
    let m = q.branch_points();
    let target = q.partition();
    let ts = transpositions(d);
    let count: u128 = match q.kind {
        HurwitzKind::OnePart => {
            let mut dist: HashMap<Perm, u128> = all_perms(d)
                .into_iter()
                .filter(|p| cycle_type(p).len() == 1)
                .map(|p| (p, 1))
                .collect();
            for _ in 0..m {
                let mut next = HashMap::new();
                for (p, c) in &dist {
                    for &t in &ts {
                        *next.entry(times_transposition(p, t)).or_insert(0) += c;
                    }
                }
                dist = next;
            }
            dist.iter().filter(|(p, _)| cycle_type(p) == target).map(|(_, c)| c).sum()
        }
        HurwitzKind::Simple => {
            let start = (identity(d), (0..d as u8).collect::<Vec<u8>>());
            let mut dist: HashMap<(Perm, Vec<u8>), u128> = HashMap::from([(start, 1)]);
            for _ in 0..m {
                let mut next = HashMap::new();
                for ((p, comp), c) in &dist {
                    for &t in &ts {
                        let key = (times_transposition(p, t), join(comp, t.0, t.1));
                        *next.entry(key).or_insert(0) += c;
                    }
                }
                dist = next;
            }
            dist.iter()
                .filter(|((p, comp), _)| comp.iter().all(|&c| c == 0) && cycle_type(p) == target)
                .map(|(_, c)| c)
                .sum()
        }
    };
    let labelings = target.aut_order();
    Ok(Rat::new(BigInt::from(count) * labelings, crate::rat::factorial(d as u64)))
}

// ---------------------------------------------------------------------------
// Character sums

fn check_frobenius_bounds(q: &HurwitzQuery) -> Result<()> {
    if q.degree() > FROBENIUS_MAX_DEGREE {
        return Err(Error::OutOfRange(format!("character routes need d <= {FROBENIUS_MAX_DEGREE}")));
    }
    Ok(())
}

fn eigenvalue(lambda: &Partition) -> Rat {
    ColShape(lambda.clone()).cut_and_join_eigenvalue()
}

/// Burnside/Frobenius character formula.
///
/// One-part: `h = (1 / (d prod b_i)) sum_l chi_l((d)) chi_l(b) f_l^m`.
/// Simple: connected numbers come from the logarithm of the disconnected
/// series `sum_l (dim l / d!) s_l e^{f_l beta}`.
pub fn hurwitz_frobenius(q: &HurwitzQuery) -> Result<Rat> {
    check_frobenius_bounds(q)?;
    let d = q.degree();
    let m = q.branch_points() as u32;
    let b = q.partition();
    match q.kind {
        HurwitzKind::OnePart => {
            let full = Partition::new(vec![d])?;
            let mut sum = Rat::zero();
            for lambda in partitions_of(d) {
                let top = character(&lambda, &full)?;
                if top == 0 {
                    continue;
                }
                let c = top * character(&lambda, &b)?;
                if c != 0 {
                    sum += rint(c) * rpow(&eigenvalue(&lambda), m);
                }
            }
            let prod: usize = q.profile.iter().product();
            Ok(sum / rint((d * prod) as i64))
        }
        HurwitzKind::Simple => {
            let target = power_monomial(&b);
            let caps = Caps::new(d as u64, m as i32);
            let h = disconnected_simple_divisors(&target, caps).log_with(|s| s)?;
            Ok(h.coeff(&Monomial { aux: m as i32, exps: target.exps.clone() }) * rfactorial(m as u64) * rbig(b.aut_order()))
        }
    }
}

fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.exps.len() <= b.exps.len() && a.exps.iter().zip(&b.exps).all(|(x, y)| x <= y)
}

/// Sub-multisets of a partition, as partitions.
fn sub_partitions(b: &Partition) -> Vec<Partition> {
    let mut out = vec![Vec::new()];
    let mut parts = b.parts().to_vec();
    parts.dedup();
    for v in parts {
        let mult = b.parts().iter().filter(|&&x| x == v).count();
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=mult).map(move |k| {
                    let mut q = p.clone();
                    q.extend(std::iter::repeat_n(v, k));
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Partition::from_unsorted).collect()
}

/// Disconnected simple series restricted to monomials dividing `target`.
/// The restriction commutes with products, so its logarithm agrees with the
/// full logarithm on those monomials.
fn disconnected_simple_divisors(target: &Monomial, caps: Caps) -> TruncSeries {
    let b = Partition::from_unsorted(target.indices().iter().map(|i| i + 1).collect());
    let mut z = TruncSeries::zero(Family::P, caps);
    for nu in sub_partitions(&b) {
        let k = nu.size();
        let mono = power_monomial(&nu);
        for mu in partitions_of(k) {
            let chi = character(&mu, &nu).expect("sizes agree");
            if chi == 0 {
                continue;
            }
            let base = rint(dimension(&mu) * chi) / rfactorial(k as u64) * nu.inv_z();
            let f = eigenvalue(&mu);
            let mut c = base;
            for j in 0..=caps.aux {
                if j > 0 {
                    c = c * &f / rint(j as i64);
                }
                z.add_term(Monomial { aux: j, exps: mono.exps.clone() }, c.clone());
            }
        }
    }
    debug_assert!(z.terms().keys().all(|m| divides(m, target)));
    z
}

/// `Z = 1 + sum_{l} (dim l / |l|!) s_l e^{f_l beta}` (all covers, possibly
/// disconnected).
pub fn disconnected_simple_series(caps: Caps) -> TruncSeries {
    let mut z = TruncSeries::one(Family::P, caps);
    for d in 1..=caps.weight as usize {
        for mu in partitions_of(d) {
            let e = exp_eigen(&eigenvalue(&mu), caps);
            let s = schur_poly(&mu, caps).scale(&(rint(dimension(&mu)) / rfactorial(d as u64)));
            z = &z + &(&s * &e);
        }
    }
    z
}

fn exp_eigen(f: &Rat, caps: Caps) -> TruncSeries {
    let mut s = TruncSeries::zero(Family::P, caps);
    let mut c = Rat::one();
    for j in 0..=caps.aux {
        if j > 0 {
            c = c * f / rint(j as i64);
        }
        s.add_term(Monomial::aux(j), c.clone());
    }
    s
}

// ---------------------------------------------------------------------------
// Closed form

/// `L_p^2 H = sum_{a,b} (-1)^b s_hook(a,b) e^{f beta}`, truncated.
pub fn lp2h_closed_form(caps: Caps) -> TruncSeries {
    let mut out = TruncSeries::zero(Family::P, caps);
    for d in 1..=caps.weight as usize {
        for b in 0..d {
            let a = d - 1 - b;
            let s = schur_poly(&ColShape::hook(a, b).0, caps);
            let e = hook_coefficient(a, b, caps.aux).with_caps(caps);
            out = &out + &(&s * &e);
        }
    }
    out
}

/// One-part numbers read off the hook closed form of `L_p^2 H`.
pub fn hurwitz_closed(q: &HurwitzQuery) -> Result<Rat> {
    if q.kind != HurwitzKind::OnePart {
        return Err(Error::OutOfRange("the closed form covers one-part numbers only".into()));
    }
    check_frobenius_bounds(q)?;
    let d = q.degree();
    let m = q.branch_points();
    let b = q.partition();
    let caps = Caps::new(d as u64, m as i32);
    // Only degree-d hooks contribute to a degree-d monomial.
    let mut coef = Rat::zero();
    let mono = power_monomial(&b);
    for bb in 0..d {
        let a = d - 1 - bb;
        let s = schur_poly(&ColShape::hook(a, bb).0, caps);
        let e = hook_coefficient(a, bb, m as i32);
        coef += s.coeff(&mono) * e.coeff(&Monomial::aux(m as i32));
    }
    Ok(coef * rfactorial(m as u64) * rbig(b.aut_order()) / rint(d as i64))
}

// ---------------------------------------------------------------------------
// Generating series

/// Multiplies every term by its weight (the operator `sum b p_b d/dp_b`).
pub fn l_p(s: &TruncSeries) -> TruncSeries {
    s.map_coeffs(|m, c| c * rint(m.weight() as i64))
}

/// One-part series `sum 1/n! beta^m/m! sum_b h/d p_b`.
pub fn assemble_h_onepart(caps: Caps) -> Result<TruncSeries> {
    let mut out = TruncSeries::zero(Family::P, caps);
    for d in 1..=caps.weight.min(FROBENIUS_MAX_DEGREE as u64) as usize {
        for lambda in partitions_of(d) {
            let mut g = 0u32;
            loop {
                let q = HurwitzQuery::new(HurwitzKind::OnePart, g, lambda.parts().to_vec())?;
                let m = q.branch_points();
                if m as i64 > caps.aux as i64 {
                    break;
                }
                let h = hurwitz_frobenius(&q)?;
                // Ordered tuples give n!/|Aut| copies of the monomial.
                let c = h / (rbig(lambda.aut_order()) * rfactorial(m as u64) * rint(d as i64));
                out.add_term(Monomial { aux: m as i32, exps: power_monomial(&lambda).exps }, c);
                g += 1;
            }
        }
    }
    Ok(out)
}

/// Simple series `sum 1/n! beta^m/m! sum_b h p_b`, as the logarithm of the
/// disconnected series.
pub fn assemble_h_simple(caps: Caps) -> Result<TruncSeries> {
    disconnected_simple_series(caps).log()
}

/// The displayed unstable part of the one-part series.
pub fn h_unst_onepart(caps: Caps) -> TruncSeries {
    let mut s = TruncSeries::zero(Family::P, caps);
    for b in 1..=caps.weight as usize {
        s.add_term(Monomial::var(b - 1), Rat::new(BigInt::one(), BigInt::from(b * b)));
    }
    for b1 in 1..=caps.weight as usize {
        for b2 in 1..=caps.weight as usize {
            let m = Monomial::from_indices(1, &[b1 - 1, b2 - 1]);
            s.add_term(m, Rat::new(BigInt::one(), BigInt::from(2 * (b1 + b2))));
        }
    }
    s
}

/// The displayed unstable part of the simple series.
pub fn h_unst_simple(caps: Caps) -> TruncSeries {
    let bb = |b: usize| rpow(&rint(b as i64), b as u32) / rfactorial(b as u64);
    let mut s = TruncSeries::zero(Family::P, caps);
    for b in 1..=caps.weight as usize {
        let c = bb(b) / rint((b * b) as i64);
        s.add_term(Monomial::from_indices(b as i32 - 1, &[b - 1]), c);
    }
    for b1 in 1..=caps.weight as usize {
        for b2 in 1..=caps.weight as usize {
            let m = Monomial::from_indices((b1 + b2) as i32, &[b1 - 1, b2 - 1]);
            s.add_term(m, bb(b1) * bb(b2) / rint(2 * (b1 + b2) as i64));
        }
    }
    s
}

/// Restriction of a series to genus 0 terms with one or two variables.
pub fn genus_zero_unstable(s: &TruncSeries, kind: HurwitzKind) -> TruncSeries {
    s.retain(|m, _| {
        let n = m.degree() as i64;
        let d = m.weight() as i64;
        let g0 = match kind {
            HurwitzKind::OnePart => m.aux as i64 == n - 1,
            HurwitzKind::Simple => m.aux as i64 == d + n - 2,
        };
        g0 && (n == 1 || n == 2)
    })
}

// ---------------------------------------------------------------------------
// Polynomiality

/// Result of fitting one-part numbers by a polynomial in the profile.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    pub holds: bool,
    pub poly: MultiPoly,
    /// Held-out profiles that disagree with the fit.
    pub failures: Vec<Vec<usize>>,
}

/// The quantity expected to be polynomial in the profile:
/// `h / (m! d)` for stable `(g, n)`, `h b` for `(0, 1)` and `h` for `(0, 2)`.
pub fn normalized_onepart(g: u32, profile: &[usize]) -> Result<Rat> {
    let q = HurwitzQuery::one_part(g, profile)?;
    let h = hurwitz_frobenius(&q)?;
    Ok(match (g, profile.len()) {
        (0, 1) => h * rint(profile[0] as i64),
        (0, 2) => h,
        _ => h / (rfactorial(q.branch_points() as u64) * rint(q.degree() as i64)),
    })
}

/// Per-variable degree bound of [`normalized_onepart`].
pub fn onepart_degree_bound(g: u32, n: usize) -> usize {
    match (g, n) {
        (0, 1) | (0, 2) => 0,
        _ => 4 * g as usize + n - 3,
    }
}

/// Fits [`normalized_onepart`] on `fit_values^n` and checks `holdout`.
pub fn polynomiality_check(g: u32, n: usize, fit_values: &[usize], holdout: &[Vec<usize>]) -> Result<PolyFit> {
    let need = onepart_degree_bound(g, n) + 1;
    if n == 0 || fit_values.len() < need {
        return Err(Error::InsufficientPoints(format!(
            "need {need} fit values per variable for g = {g}, n = {n}, got {}",
            fit_values.len()
        )));
    }
    if holdout.iter().any(|p| p.len() != n) {
        return Err(Error::OutOfRange("held-out profile has wrong length".into()));
    }
    let nodes: Vec<Vec<Rat>> = (0..n).map(|_| fit_values.iter().map(|&b| rint(b as i64)).collect()).collect();
    let poly = tensor_fit(&nodes, |idx| {
        let profile: Vec<usize> = idx.iter().map(|&i| fit_values[i]).collect();
        normalized_onepart(g, &profile)
    })?;
    let mut failures = Vec::new();
    for p in holdout {
        let x: Vec<Rat> = p.iter().map(|&b| rint(b as i64)).collect();
        if poly.eval(&x) != normalized_onepart(g, p)? {
            failures.push(p.clone());
        }
    }
    let degree_ok = poly.terms.keys().all(|e| e.iter().all(|&k| (k as usize) < need));
    Ok(PolyFit { holds: failures.is_empty() && degree_ok, poly, failures })
}

// ---------------------------------------------------------------------------
// Cache

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheLine {
    query: HurwitzQuery,
    method: Method,
    value: String,
}

/// Append-only JSON-lines cache of computed values. Advisory only: a lookup
/// miss simply means recomputation.
#[derive(Debug)]
pub struct HurwitzCache {
    path: PathBuf,
    entries: HashMap<(HurwitzQuery, Method), Rat>,
}

impl HurwitzCache {
    /// Loads existing lines; unreadable lines are skipped.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if let Ok(f) = File::open(&path) {
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| Error::Parse(e.to_string()))?;
                if let Ok(l) = serde_json::from_str::<CacheLine>(&line) {
                    if let Ok(v) = parse_rat(&l.value) {
                        entries.insert((l.query, l.method), v);
                    }
                }
            }
        }
        Ok(HurwitzCache { path, entries })
    }

    pub fn get(&self, q: &HurwitzQuery, method: Method) -> Option<&Rat> {
        self.entries.get(&(q.clone(), method))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, q: &HurwitzQuery, method: Method, value: &Rat) -> Result<()> {
        if self.entries.contains_key(&(q.clone(), method)) {
            return Ok(());
        }
        let line = CacheLine { query: q.clone(), method, value: format_rat(value) };
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Parse(format!("{}: {e}", self.path.display())))?;
        writeln!(f, "{}", serde_json::to_string(&line).expect("serializable"))
            .map_err(|e| Error::Parse(e.to_string()))?;
        self.entries.insert((q.clone(), method), value.clone());
        Ok(())
    }

    /// Cached value, or computes and records it.
    pub fn get_or_compute(&mut self, q: &HurwitzQuery, method: Method) -> Result<Rat> {
        if let Some(v) = self.get(q, method) {
            return Ok(v.clone());
        }
        let v = hurwitz(q, method)?;
        self.insert(q, method, &v)?;
        Ok(v)
    }
}

/// All one-part queries with `d <= max_d` and `m <= max_m`, profiles ordered.
pub fn onepart_grid(max_d: usize, max_m: usize) -> Vec<HurwitzQuery> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for p in compositions(d) {
            for g in 0.. {
                let q = HurwitzQuery { kind: HurwitzKind::OnePart, genus: g, profile: p.clone() };
                if q.branch_points() > max_m {
                    break;
                }
                out.push(q);
            }
        }
    }
    out
}

/// All simple queries with `d <= max_d` and `m <= max_m`.
pub fn simple_grid(max_d: usize, max_m: usize) -> Vec<HurwitzQuery> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for p in compositions(d) {
            for g in 0.. {
                let q = HurwitzQuery { kind: HurwitzKind::Simple, genus: g, profile: p.clone() };
                if q.branch_points() > max_m {
                    break;
                }
                out.push(q);
            }
        }
    }
    out
}

/// Ordered compositions of `d` into positive parts.
pub fn compositions(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=d {
        for mut rest in compositions(d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Map from partitions of `d` to values, for tables.
pub fn onepart_table(g: u32, d: usize) -> Result<BTreeMap<Partition, Rat>> {
    partitions_of(d)
        .into_iter()
        .map(|l| {
            let q = HurwitzQuery::new(HurwitzKind::OnePart, g, l.parts().to_vec())?;
            Ok((l, hurwitz_frobenius(&q)?))
        })
        .collect()
}

#[cfg(test)]
mod tests;
