//! Exact multivariate polynomial interpolation on tensor grids.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::rat::Rat;

/// Polynomial in several variables with exponent vectors as keys.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.clone();
                for (xi, &k) in x.iter().zip(e) {
                    for _ in 0..k {
                        t *= xi;
                    }
                }
                t
            })
            .sum()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Coefficient vectors of the Lagrange basis for the given distinct nodes.
pub fn lagrange_basis(nodes: &[Rat]) -> Vec<Vec<Rat>> {
    let k = nodes.len();
    (0..k)
        .map(|j| {
            // prod_{i != j} (x - x_i) / (x_j - x_i)
            let mut poly = vec![Rat::one()];
            let mut denom = Rat::one();
            for (i, xi) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rat::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * xi;
                }
                poly = next;
                denom *= &nodes[j] - xi;
            }
            poly.into_iter().map(|c| c / &denom).collect()
        })
        .collect()
}

/// Interpolates `f` on the grid `nodes[0] x nodes[1] x ...`.
///
/// `f` receives grid indices, one per variable. The result has degree at most
/// `nodes[v].len() - 1` in variable `v`.
pub fn tensor_fit<F>(nodes: &[Vec<Rat>], mut f: F) -> Result<MultiPoly>
where
    F: FnMut(&[usize]) -> Result<Rat>,
{
    let bases: Vec<Vec<Vec<Rat>>> = nodes.iter().map(|n| lagrange_basis(n)).collect();
    let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    for idx in grid(&nodes.iter().map(Vec::len).collect::<Vec<_>>()) {
        let value = f(&idx)?;
        if value.is_zero() {
            continue;
        }
        // Expand prod_v basis[v][idx_v](x_v) into monomials.
        let mut partial: Vec<(Vec<u32>, Rat)> = vec![(Vec::new(), value)];
        for (v, &i) in idx.iter().enumerate() {
            let mut next = Vec::new();
            for (e, c) in &partial {
                for (k, b) in bases[v][i].iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2.push(k as u32);
                    next.push((e2, c * b));
                }
            }
            partial = next;
        }
        for (e, c) in partial {
            *acc.entry(e).or_insert_with(Rat::zero) += c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(MultiPoly { terms: acc })
}

/// All index tuples of a grid with the given side lengths, last index fastest.
pub fn grid(sides: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sides {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..s).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn recovers_bivariate_polynomial() {
        // 3 x^2 y - y/2 + 7
        let p = |x: &Rat, y: &Rat| rint(3) * x * x * y - y * rat(1, 2) + rint(7);
        let nodes: Vec<Vec<Rat>> = vec![(1..=3).map(rint).collect(), (1..=2).map(rint).collect()];
        let fit = tensor_fit(&nodes, |i| Ok(p(&nodes[0][i[0]], &nodes[1][i[1]]))).unwrap();
        assert_eq!(fit.coeff(&[2, 1]), rint(3));
        assert_eq!(fit.coeff(&[0, 1]), rat(-1, 2));
        assert_eq!(fit.coeff(&[0, 0]), rint(7));
        assert_eq!(fit.terms.len(), 3);
        assert_eq!(fit.eval(&[rint(10), rint(-4)]), p(&rint(10), &rint(-4)));
        assert_eq!(fit.total_degree(), Some(3));
    }

    #[test]
    fn grid_order() {
        assert_eq!(grid(&[2, 2]), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(grid(&[]), vec![Vec::<usize>::new()]);
    }
}
