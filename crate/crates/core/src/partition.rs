//! Integer partitions, viewed as Young diagrams.
//!
//! A [`Partition`] is an abstract weakly decreasing sequence. Whether it
//! lists row lengths or column lengths is stated at the call site with
//! [`RowShape`] / [`ColShape`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{factorial, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl Partition {
    /// Validates that parts are positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the input and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `prod_j (multiplicity of j)!`
    pub fn aut_order(&self) -> BigInt {
        multiplicities(&self.parts).iter().map(|&m| factorial(m as u64)).product()
    }

    /// `|Aut| * prod parts`, the centralizer order of the conjugacy class.
    pub fn z(&self) -> BigInt {
        self.aut_order() * self.parts.iter().map(|&p| BigInt::from(p)).product::<BigInt>()
    }

    /// `1 / z`
    pub fn inv_z(&self) -> Rat {
        Rat::new(BigInt::one(), self.z())
    }

    /// Corners as `(i, mu_i)` with 1-based `i`: positions where the next part
    /// is strictly smaller, or the last part.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        let n = self.parts.len();
        (0..n)
            .filter(|&k| k + 1 == n || self.parts[k + 1] < self.parts[k])
            .map(|k| (k + 1, self.parts[k]))
            .collect()
    }

    /// Removes the corner box in row `i` (1-based).
    pub fn remove_corner(&self, i: usize) -> Result<Partition> {
        let part = if i >= 1 { self.parts.get(i - 1).copied() } else { None };
        match part {
            Some(_) if self.corners().iter().any(|&(j, _)| j == i) => {
                let mut parts = self.parts.clone();
                parts[i - 1] -= 1;
                parts.retain(|&x| x > 0);
                Ok(Partition { parts })
            }
            _ => Err(Error::NotACorner(i, part.unwrap_or(0))),
        }
    }

    /// `lambda + 1_i`: increments the `i`-th part (1-based), re-sorting.
    pub fn increment(&self, i: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[i - 1] += 1;
        Partition::from_unsorted(parts)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn multiplicities(parts: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < parts.len() {
        let mut j = k;
        while j < parts.len() && parts[j] == parts[k] {
            j += 1;
        }
        out.push(j - k);
        k = j;
    }
    out
}

/// Multiplicity automorphism count of an arbitrary (unsorted) tuple.
pub fn tuple_aut_order(values: &[usize]) -> BigInt {
    Partition::from_unsorted(values.to_vec()).aut_order()
}

/// All partitions of `d` in reverse lexicographic order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if d == 0 {
        out.push(Partition::empty());
        return out;
    }
    let mut cur = vec![d];
    loop {
        out.push(Partition { parts: cur.clone() });
        // Rightmost part > 1.
        let Some(k) = cur.iter().rposition(|&x| x > 1) else { break };
        let v = cur[k] - 1;
        let mut rest: usize = cur[k + 1..].iter().sum::<usize>() + 1;
        cur.truncate(k);
        cur.push(v);
        while rest > 0 {
            let take = rest.min(v);
            cur.push(take);
            rest -= take;
        }
    }
    out
}

/// All partitions of every size up to `max`, smallest size first.
pub fn partitions_up_to(max: usize) -> Vec<Partition> {
    (0..=max).flat_map(partitions_of).collect()
}

/// A partition read as the column lengths of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColShape(pub Partition);

/// A partition read as the row lengths of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowShape(pub Partition);

impl ColShape {
    /// Cut-and-join eigenvalue `1/2 sum c_i (c_i - 2i + 1)` over the column
    /// lengths `c_i`.
    pub fn cut_and_join_eigenvalue(&self) -> Rat {
        let twice: i64 = self
            .0
            .parts
            .iter()
            .enumerate()
            .map(|(k, &c)| c as i64 * (c as i64 - 2 * (k as i64 + 1) + 1))
            .sum();
        rat(twice, 2)
    }

    /// Hook with column lengths `a + 1, 1, ..., 1` (`b` ones).
    pub fn hook(a: usize, b: usize) -> ColShape {
        let mut parts = vec![a + 1];
        parts.extend(std::iter::repeat_n(1, b));
        ColShape(Partition { parts })
    }

    /// `(a, b)` if the shape is a hook.
    pub fn hook_arms(&self) -> Option<(usize, usize)> {
        let p = &self.0;
        (!p.is_empty() && p.is_hook()).then(|| (p.parts[0] - 1, p.len() - 1))
    }

    pub fn to_rows(&self) -> RowShape {
        RowShape(self.0.conjugate())
    }
}

impl RowShape {
    /// Sum over boxes of `(column - row)`, boxes at (row i, column j).
    pub fn content_sum(&self) -> i64 {
        self.0
            .parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| j as i64 - (i as i64 + 1)))
            .sum()
    }

    pub fn to_cols(&self) -> ColShape {
        ColShape(self.0.conjugate())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(partitions_of(5).len(), 7);
        let counts: Vec<usize> = (0..=10).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for d in 0..=8 {
            let ps = partitions_of(d);
            let mut sorted = ps.clone();
            sorted.sort_by(|a, b| b.parts.cmp(&a.parts));
            assert_eq!(ps, sorted, "reverse lexicographic order for {d}");
        }
    }

    #[test]
    fn aut_examples() {
        assert_eq!(part(&[7, 6, 6, 4, 1, 1, 1, 1, 1]).aut_order(), BigInt::from(240));
        assert_eq!(part(&[1, 1, 1]).aut_order(), BigInt::from(6));
        assert_eq!(part(&[3]).aut_order(), BigInt::from(1));
    }

    #[test]
    fn corner_examples() {
        assert_eq!(part(&[2, 1]).corners(), vec![(1, 2), (2, 1)]);
        assert_eq!(part(&[1, 1]).corners(), vec![(2, 1)]);
        let big = part(&[7, 6, 6, 4, 1, 1, 1, 1, 1]);
        let rows: Vec<usize> = big.corners().iter().map(|c| c.0).collect();
        assert_eq!(rows, vec![1, 3, 4, 9]);
        assert!(Partition::empty().corners().is_empty());
    }

    #[test]
    fn remove_corner_examples() {
        assert_eq!(part(&[2, 1]).remove_corner(1).unwrap(), part(&[1, 1]));
        assert_eq!(part(&[1]).remove_corner(1).unwrap(), Partition::empty());
        assert_eq!(part(&[3, 3, 1]).remove_corner(2).unwrap(), part(&[3, 2, 1]));
        assert!(matches!(part(&[3, 3, 1]).remove_corner(1), Err(Error::NotACorner(1, 3))));
        assert!(part(&[2]).remove_corner(0).is_err());
        for mu in partitions_up_to(10) {
            for (i, _) in mu.corners() {
                let r = mu.remove_corner(i).unwrap();
                assert_eq!(r.size() + 1, mu.size());
                assert!(Partition::new(r.parts.clone()).is_ok());
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part(&[2, 2]).conjugate(), part(&[2, 2]));
        for l in partitions_up_to(10) {
            assert_eq!(l.conjugate().conjugate(), l);
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for d in 0..=8 {
            let total: Rat = partitions_of(d).iter().map(|l| Rat::new(factorial(d as u64), l.z())).sum();
            assert_eq!(total, Rat::from_integer(factorial(d as u64)));
        }
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(ColShape(part(&[1])).cut_and_join_eigenvalue(), rint(0));
        assert_eq!(ColShape(part(&[2, 1])).cut_and_join_eigenvalue(), rint(0));
        for a in 0..5usize {
            for b in 0..5usize {
                let f = ColShape::hook(a, b).cut_and_join_eigenvalue();
                assert_eq!(f, rat((a * (a + 1)) as i64 - (b * (b + 1)) as i64, 2));
            }
        }
    }

    #[test]
    fn eigenvalue_matches_content_sum() {
        for l in partitions_up_to(10) {
            let f = ColShape(l.clone()).cut_and_join_eigenvalue();
            assert_eq!(f, rint(RowShape(l).content_sum()));
        }
    }

    #[test]
    fn hooks() {
        assert_eq!(ColShape::hook(0, 0).0, part(&[1]));
        assert_eq!(ColShape::hook(2, 1).0, part(&[3, 1]));
        assert_eq!(ColShape::hook(0, 2).0, part(&[1, 1, 1]));
        assert_eq!(ColShape::hook(2, 1).hook_arms(), Some((2, 1)));
        assert_eq!(ColShape(part(&[2, 2])).hook_arms(), None);
    }

    #[test]
    fn json_is_an_integer_array() {
        let p = part(&[3, 1, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1,1]");
        assert_eq!(serde_json::from_str::<Partition>("[3,1,1]").unwrap(), p);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
