//! Hodge integrals recovered from the finite conjugated equations plus the
//! string and dilaton equations, seeded only at `<tau_0^3> = 1`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hierarchy::{DerivExpr, Factor};
use crate::rat::{rfactorial, rint, Rat};

use super::elsv::{hodge_bracket, hodge_genus, multisets};
use super::equations::conjugated_equation;

type Key = (usize, Vec<usize>);

/// Layered solver: brackets are reduced by string and dilaton until every
/// index is at least 2 (or no stable reduction exists); those irreducible
/// values are solved layer by layer in `(k, g, n)` from the coefficients of
/// the `z^k` equation.
#[derive(Debug, Clone)]
pub struct PdeSolver {
    equations: Vec<DerivExpr>,
    solved: HashMap<Key, Rat>,
    max_genus: u32,
}

fn stable(g: u32, n: usize) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

impl PdeSolver {
    /// Builds the `z^0 .. z^max_k` equations from `KP_{2,2}` and solves all
    /// layers up to `max_genus`.
    pub fn solve(max_k: u32, max_genus: u32) -> Result<Self> {
        let equations = (0..=max_k).map(|k| conjugated_equation(2, 2, k)).collect::<Result<Vec<_>>>()?;
        let mut s = PdeSolver { equations, solved: HashMap::new(), max_genus };
        s.solved.insert((0, vec![0, 0, 0]), Rat::one());
        for k in 0..=max_k as usize {
            for g in k as u32..=max_genus {
                for n in 1..=(3 * g as usize + 3) {
                    s.solve_layer(k, g, n)?;
                }
            }
        }
        Ok(s)
    }

    pub fn max_genus(&self) -> u32 {
        self.max_genus
    }

    pub fn equation(&self, k: usize) -> Option<&DerivExpr> {
        self.equations.get(k)
    }

    fn value(&self, k: usize, x: &[usize], extra: &HashMap<Key, Rat>) -> std::result::Result<Rat, Key> {
        let Some(g) = hodge_genus(x, k) else {
            return Ok(Rat::zero());
        };
        let n = x.len();
        if k > g as usize || !stable(g, n) {
            return Ok(Rat::zero());
        }
        if stable(g, n - 1) {
            if let Some(pos) = x.iter().position(|&d| d == 0) {
                let mut rest = x.to_vec();
                rest.remove(pos);
                let mut total = Rat::zero();
                for j in 0..rest.len() {
                    if rest[j] == 0 {
                        continue;
                    }
                    let mut y = rest.clone();
                    y[j] -= 1;
                    y.sort_unstable();
                    total += self.value(k, &y, extra)?;
                }
                return Ok(total);
            }
            if let Some(pos) = x.iter().position(|&d| d == 1) {
                let mut rest = x.to_vec();
                rest.remove(pos);
                let c = rint(2 * g as i64 - 2 + n as i64 - 1);
                return Ok(c * self.value(k, &rest, extra)?);
            }
        }
        let mut key = x.to_vec();
        key.sort_unstable();
        let key = (k, key);
        extra.get(&key).or_else(|| self.solved.get(&key)).cloned().ok_or(key)
    }

    /// Coefficient of `t^y` (exponent vector) in the `z^k` equation.
    fn coefficient(&self, k: usize, y: &[u16], extra: &HashMap<Key, Rat>) -> std::result::Result<Rat, Key> {
        let mut total = Rat::zero();
        for (_, factors, c) in self.equations[k].terms() {
            total += c * self.split(factors, y.to_vec(), extra)?;
        }
        Ok(total)
    }

    fn split(&self, factors: &[Factor], rest: Vec<u16>, extra: &HashMap<Key, Rat>) -> std::result::Result<Rat, Key> {
        let Some((first, others)) = factors.split_first() else {
            return Ok(if rest.iter().all(|&e| e == 0) { Rat::one() } else { Rat::zero() });
        };
        let factor_value = |e: &[u16]| -> std::result::Result<Rat, Key> {
            let mut idx = Vec::new();
            let len = e.len().max(first.derivs.len());
            for i in 0..len {
                let m = e.get(i).copied().unwrap_or(0) + first.derivs.get(i).copied().unwrap_or(0);
                idx.extend(std::iter::repeat_n(i, m as usize));
            }
            let fact: Rat = e.iter().map(|&v| rfactorial(v as u64)).product();
            Ok(self.value(first.field as usize, &idx, extra)? / fact)
        };
        if others.is_empty() {
            return factor_value(&rest);
        }
        let mut total = Rat::zero();
        for mine in crate::interp::grid(&rest.iter().map(|&e| e as usize + 1).collect::<Vec<_>>()) {
            let mine: Vec<u16> = mine.iter().map(|&v| v as u16).collect();
            let v = factor_value(&mine)?;
            if v.is_zero() {
                continue;
            }
            let left: Vec<u16> = rest.iter().zip(&mine).map(|(a, b)| a - b).collect();
            total += v * self.split(others, left, extra)?;
        }
        Ok(total)
    }

    fn solve_layer(&mut self, k: usize, g: u32, n: usize) -> Result<()> {
        let s = 3 * g as i64 - 3 + n as i64 - k as i64;
        if s < 0 || !stable(g, n) {
            return Ok(());
        }
        let s = s as usize;
        let empty = HashMap::new();
        let unknowns: Vec<Key> = multisets(n, s)
            .into_iter()
            .filter_map(|x| match self.value(k, &x, &empty) {
                Err(key) if key == (k, x.clone()) => Some(key),
                _ => None,
            })
            .collect();
        if unknowns.is_empty() {
            return Ok(());
        }
        let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
        let lo = n.saturating_sub(1);
        for size in lo..=n + 1 {
            for total in s..=s + 2 {
                for y in multisets(size, total) {
                    let exps = crate::series::Monomial::from_indices(0, &y).exps;
                    if let Some(row) = self.affine_row(k, &exps, &unknowns) {
                        rows.push(row);
                    }
                }
            }
        }
        let sol = solve_linear(&rows, unknowns.len()).ok_or_else(|| {
            Error::Singular(format!("layer k = {k}, g = {g}, n = {n}: {} unknowns, {} equations", unknowns.len(), rows.len()))
        })?;
        for (key, v) in unknowns.into_iter().zip(sol) {
            self.solved.insert(key, v);
        }
        Ok(())
    }

    /// The equation coefficient at `y` as `row . x + constant`, or `None`
    /// when it depends on values outside the layer.
    fn affine_row(&self, k: usize, y: &[u16], unknowns: &[Key]) -> Option<(Vec<Rat>, Rat)> {
        let zeros: HashMap<Key, Rat> = unknowns.iter().map(|u| (u.clone(), Rat::zero())).collect();
        let base = self.coefficient(k, y, &zeros).ok()?;
        let mut row = Vec::with_capacity(unknowns.len());
        for u in unknowns {
            let mut probe = zeros.clone();
            probe.insert(u.clone(), Rat::one());
            row.push(self.coefficient(k, y, &probe).ok()? - &base);
        }
        // the coefficient must be affine in the layer: check at all ones
        let ones: HashMap<Key, Rat> = unknowns.iter().map(|u| (u.clone(), Rat::one())).collect();
        let at_ones = self.coefficient(k, y, &ones).ok()?;
        let predicted: Rat = row.iter().sum::<Rat>() + &base;
        if at_ones != predicted || row.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some((row, base))
    }

    /// Value of `<tau_x lambda_k>` from the solved layers.
    pub fn bracket(&self, indices: &[usize], k: usize) -> Result<Rat> {
        let mut x = indices.to_vec();
        x.sort_unstable();
        self.value(k, &x, &HashMap::new())
            .map_err(|(kk, key)| Error::OutOfRange(format!("bracket {key:?} with lambda_{kk} not solved")))
    }
}

/// Solves `row . x + c = 0` for every row; `None` unless the solution is
/// unique and satisfies every row.
fn solve_linear(rows: &[(Vec<Rat>, Rat)], n: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|(r, c)| {
            let mut v = r.clone();
            v.push(-c.clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            return None;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][col];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|c| m[pivots[c]][n].clone()).collect())
}

/// One bracket computed by both routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub indices: Vec<usize>,
    pub k: usize,
    pub genus: u32,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub elsv: Rat,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub pde: Rat,
    pub agree: bool,
}

/// Every nonzero-dimension bracket with `g <= max_genus`, `n <= max_n`,
/// `k <= max_k`, by the Hurwitz fit and by the equations.
pub fn cross_route_check(max_genus: u32, max_n: usize, max_k: usize) -> Result<Vec<CrossCheck>> {
    let solver = PdeSolver::solve(max_k as u32, max_genus)?;
    let mut out = Vec::new();
    for g in 0..=max_genus {
        for n in 1..=max_n {
            if !stable(g, n) {
                continue;
            }
            for k in 0..=max_k.min(g as usize) {
                let total = 3 * g as i64 - 3 + n as i64 - k as i64;
                if total < 0 {
                    continue;
                }
                for idx in multisets(n, total as usize) {
                    let elsv = hodge_bracket(&idx, k)?;
                    let pde = solver.bracket(&idx, k)?;
                    out.push(CrossCheck { agree: elsv == pde, indices: idx, k, genus: g, elsv, pde });
                }
            }
        }
    }
    Ok(out)
}
