//! Symmetric group characters and Schur polynomials in power sums.
//!
//! Labels follow the standard row convention for the character table. With
//! it, `A s_l = f_l s_l` where `f_l` is computed from the same list read as
//! column lengths (see [`crate::ColShape::cut_and_join_eigenvalue`]), which is
//! the bookkeeping used for hooks throughout the crate.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, ColShape, Partition};
use crate::rat::{rat, rbig, rfactorial, Rat};
use crate::series::{Caps, Family, Monomial, TruncSeries};

/// Memoized Murnaghan-Nakayama evaluation.
///
/// Shareable across threads; values are immutable once inserted.
#[derive(Debug, Default)]
pub struct CharacterTable {
    cache: Mutex<HashMap<(Partition, Partition), i64>>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide table.
    pub fn global() -> &'static CharacterTable {
        static TABLE: OnceLock<CharacterTable> = OnceLock::new();
        TABLE.get_or_init(CharacterTable::new)
    }

    pub fn character(&self, mu: &Partition, lambda: &Partition) -> Result<i64> {
        if mu.size() != lambda.size() {
            return Err(Error::SizeMismatch(mu.to_string(), mu.size(), lambda.to_string(), lambda.size()));
        }
        Ok(self.mn(mu, lambda.parts()))
    }

    pub fn cached_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    fn mn(&self, mu: &Partition, lambda: &[usize]) -> i64 {
        if lambda.is_empty() {
            return 1;
        }
        let key = (mu.clone(), Partition::from_unsorted(lambda.to_vec()));
        if let Some(&v) = self.cache.lock().unwrap().get(&key) {
            return v;
        }
        let r = lambda[0];
        let mut total = 0;
        for (rest, sign) in remove_rim_hooks(mu, r) {
            total += sign * self.mn(&rest, &lambda[1..]);
        }
        self.cache.lock().unwrap().insert(key, total);
        total
    }
}

/// All ways to strip a rim hook of length `r` from `mu`, with the sign
/// `(-1)^(height)`. Uses the beta-set (abacus) description.
fn remove_rim_hooks(mu: &Partition, r: usize) -> Vec<(Partition, i64)> {
    let l = mu.len();
    let beta: Vec<usize> = mu.parts().iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut out = Vec::new();
    for (k, &x) in beta.iter().enumerate() {
        if x < r || beta.contains(&(x - r)) {
            continue;
        }
        let y = x - r;
        let between = beta.iter().filter(|&&b| b > y && b < x).count();
        let mut nb = beta.clone();
        nb[k] = y;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts = nb.iter().enumerate().map(|(i, &b)| b - (l - 1 - i)).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::from_unsorted(parts), sign));
    }
    out
}

/// `chi_mu(lambda)` via the global table.
pub fn character(mu: &Partition, lambda: &Partition) -> Result<i64> {
    CharacterTable::global().character(mu, lambda)
}

/// Dimension of the irreducible representation `mu`.
pub fn dimension(mu: &Partition) -> i64 {
    let ones = Partition::from_unsorted(vec![1; mu.size()]);
    character(mu, &ones).expect("sizes agree")
}

/// The monomial `p_lambda = prod p_{lambda_i}`.
pub fn power_monomial(lambda: &Partition) -> Monomial {
    let idx: Vec<usize> = lambda.parts().iter().map(|&k| k - 1).collect();
    Monomial::from_indices(0, &idx)
}

/// `s_mu = sum_lambda chi_mu(lambda) p_lambda / z_lambda`.
pub fn schur_poly(mu: &Partition, caps: Caps) -> TruncSeries {
    let mut s = TruncSeries::zero(Family::P, caps);
    if mu.size() as u64 > caps.weight {
        return s;
    }
    for lambda in partitions_of(mu.size()) {
        let chi = character(mu, &lambda).expect("sizes agree");
        if chi != 0 {
            s.add_term(power_monomial(&lambda), Rat::from_integer(BigInt::from(chi)) * lambda.inv_z());
        }
    }
    s
}

/// Coefficients `c_mu = chi_mu(lambda)` with `p_lambda = sum c_mu s_mu`.
pub fn power_to_schur(lambda: &Partition) -> BTreeMap<Partition, Rat> {
    partitions_of(lambda.size())
        .into_iter()
        .filter_map(|mu| {
            let chi = character(&mu, lambda).expect("sizes agree");
            (chi != 0).then(|| (mu, Rat::from_integer(BigInt::from(chi))))
        })
        .collect()
}

/// Whether `p_d = sum_{a+b+1=d} (-1)^b s_hook(a,b)` holds as polynomials.
pub fn hook_sum_identity_check(d: usize) -> bool {
    if d == 0 {
        return false;
    }
    let caps = Caps::new(d as u64, 0);
    let mut rhs = TruncSeries::zero(Family::P, caps);
    for b in 0..d {
        let a = d - 1 - b;
        let s = schur_poly(&ColShape::hook(a, b).0, caps);
        let s = if b % 2 == 0 { s } else { -&s };
        rhs = &rhs + &s;
    }
    rhs == TruncSeries::var(Family::P, caps, d - 1)
}

/// `e^{k beta}` truncated at `beta^order`.
fn exp_beta(k: i64, order: i32, caps: Caps) -> TruncSeries {
    let mut s = TruncSeries::zero(Family::P, caps);
    let mut c = Rat::one();
    for n in 0..=order {
        if n > 0 {
            c *= rat(k, n as i64);
        }
        s.add_term(Monomial::aux(n), c.clone());
    }
    s
}

/// Entry of the coefficient matrix: row `i` (1-based), column `z^k`.
fn phi_entry(i: usize, k: i64, c: &Rat, order: i32, caps: Caps) -> TruncSeries {
    if i == 1 {
        if k == 1 {
            TruncSeries::constant(Family::P, caps, c.clone())
        } else if k <= 0 {
            let n = -k;
            exp_beta(n * (n + 1) / 2, order, caps)
        } else {
            TruncSeries::zero(Family::P, caps)
        }
    } else if k == i as i64 {
        TruncSeries::one(Family::P, caps)
    } else if k == i as i64 - 1 {
        -&exp_beta(-(i as i64 - 1), order, caps)
    } else {
        TruncSeries::zero(Family::P, caps)
    }
}

/// Coefficient of the wedge basis vector indexed by `mu` (column lengths) in
/// `phi_1 ^ phi_2 ^ ...`, as a series in beta up to `beta^order`.
///
/// The vector for `mu` is `z^{k_1} ^ z^{k_2} ^ ...` with `k_i = i - mu_i`.
/// Rows beyond `len(mu)` contribute a unit triangular block, so the
/// coefficient is the leading `len(mu)` minor.
pub fn wedge_minor_coefficient(mu: &ColShape, c: &Rat, order: i32) -> TruncSeries {
    let caps = Caps::new(0, order);
    let parts = mu.0.parts();
    let n = parts.len();
    if n == 0 {
        return TruncSeries::constant(Family::P, caps, c.clone());
    }
    let cols: Vec<i64> = parts.iter().enumerate().map(|(i, &m)| (i + 1) as i64 - m as i64).collect();
    let entries: Vec<Vec<TruncSeries>> = (1..=n)
        .map(|i| cols.iter().map(|&k| phi_entry(i, k, c, order, caps)).collect())
        .collect();
    let mut memo = HashMap::new();
    minor(&entries, 0, (1u32 << n) - 1, &mut memo)
}

/// Laplace expansion along rows, memoized on the set of unused columns.
fn minor(m: &[Vec<TruncSeries>], row: usize, cols: u32, memo: &mut HashMap<u32, TruncSeries>) -> TruncSeries {
    if row == m.len() {
        return TruncSeries::one(Family::P, m[0][0].caps());
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = TruncSeries::zero(Family::P, m[0][0].caps());
    let mut sign_neg = false;
    for j in 0..m.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let e = &m[row][j];
        if !e.is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << j), memo);
            let t = e * &sub;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// `(-1)^b e^{f beta}` for `hook(a,b)`, truncated at `beta^order`.
pub fn hook_coefficient(a: usize, b: usize, order: i32) -> TruncSeries {
    let f = ColShape::hook(a, b).cut_and_join_eigenvalue();
    let caps = Caps::new(0, order);
    let mut s = TruncSeries::zero(Family::P, caps);
    let mut c = if b.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    for n in 0..=order {
        if n > 0 {
            c = c * &f / rat(n as i64, 1);
        }
        s.add_term(Monomial::aux(n), c.clone());
    }
    s
}

/// `d! / |C_lambda|`, i.e. `z_lambda` as a rational.
pub fn centralizer_order(lambda: &Partition) -> Rat {
    rbig(lambda.z())
}

/// Row orthogonality check at degree `d`.
pub fn row_orthogonality_holds(d: usize) -> bool {
    let ps = partitions_of(d);
    ps.iter().all(|mu| {
        ps.iter().all(|nu| {
            let s: Rat = ps
                .iter()
                .map(|l| {
                    let a = character(mu, l).unwrap() * character(nu, l).unwrap();
                    Rat::from_integer(BigInt::from(a)) * l.inv_z()
                })
                .sum();
            s == if mu == nu { Rat::one() } else { Rat::zero() }
        })
    })
}

/// Column orthogonality check at degree `d`.
pub fn column_orthogonality_holds(d: usize) -> bool {
    let ps = partitions_of(d);
    ps.iter().all(|l| {
        ps.iter().all(|m| {
            let s: i64 = ps.iter().map(|mu| character(mu, l).unwrap() * character(mu, m).unwrap()).sum();
            let expect = if l == m { centralizer_order(l) } else { Rat::zero() };
            Rat::from_integer(BigInt::from(s)) == expect
        })
    })
}

/// `sum_mu dim(mu)^2 = d!`.
pub fn dimension_sum_holds(d: usize) -> bool {
    let s: i64 = partitions_of(d).iter().map(|mu| dimension(mu).pow(2)).sum();
    Rat::from_integer(BigInt::from(s)) == rfactorial(d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_characters() {
        assert_eq!(character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
        assert_eq!(character(&part(&[2, 1]), &part(&[2, 1])).unwrap(), 0);
        assert_eq!(character(&part(&[1, 1]), &part(&[2])).unwrap(), -1);
        assert_eq!(character(&part(&[3, 2]), &part(&[1; 5])).unwrap(), 5);
        assert_eq!(character(&part(&[2, 2]), &part(&[2, 2])).unwrap(), 2);
        assert!(matches!(character(&part(&[2]), &part(&[3])), Err(Error::SizeMismatch(..))));
    }

    #[test]
    fn dimensions_of_s4() {
        let dims: Vec<i64> = partitions_of(4).iter().map(dimension).collect();
        assert_eq!(dims, vec![1, 3, 2, 3, 1]);
    }

    #[test]
    fn orthogonality() {
        for d in 0..=8 {
            assert!(row_orthogonality_holds(d), "rows {d}");
            assert!(column_orthogonality_holds(d), "columns {d}");
            assert!(dimension_sum_holds(d), "dims {d}");
        }
    }

    #[test]
    fn schur_small() {
        let caps = Caps::new(6, 0);
        assert_eq!(schur_poly(&part(&[1]), caps), TruncSeries::var(Family::P, caps, 0));
        let s2 = schur_poly(&part(&[2]), caps);
        assert_eq!(s2.coeff(&Monomial::from_indices(0, &[0, 0])), rat(1, 2));
        assert_eq!(s2.coeff(&Monomial::var(1)), rat(1, 2));
        let s11 = schur_poly(&part(&[1, 1]), caps);
        assert_eq!(s11.coeff(&Monomial::var(1)), rat(-1, 2));
        assert!(schur_poly(&part(&[4, 3]), caps).is_zero());
    }

    #[test]
    fn schur_is_quasihomogeneous_with_dimension_leading_term() {
        let caps = Caps::new(8, 0);
        for d in 1..=7 {
            for mu in partitions_of(d) {
                let s = schur_poly(&mu, caps);
                assert!(s.terms().keys().all(|m| m.weight() == d as u64));
                let lead = s.coeff(&Monomial::from_indices(0, &vec![0; d]));
                assert_eq!(lead, rint(dimension(&mu)) / rfactorial(d as u64));
            }
        }
    }

    #[test]
    fn power_schur_round_trip() {
        assert_eq!(power_to_schur(&part(&[1])), BTreeMap::from([(part(&[1]), rint(1))]));
        assert_eq!(
            power_to_schur(&part(&[2])),
            BTreeMap::from([(part(&[2]), rint(1)), (part(&[1, 1]), rint(-1))])
        );
        let caps = Caps::new(6, 0);
        for d in 1..=6 {
            for lambda in partitions_of(d) {
                let mut acc = TruncSeries::zero(Family::P, caps);
                for (mu, c) in power_to_schur(&lambda) {
                    acc = &acc + &schur_poly(&mu, caps).scale(&c);
                }
                assert_eq!(acc, TruncSeries::monomial(Family::P, caps, power_monomial(&lambda), rint(1)));
            }
        }
    }

    #[test]
    fn hook_sum_identity() {
        for d in 1..=8 {
            assert!(hook_sum_identity_check(d), "d = {d}");
        }
    }

    #[test]
    fn wedge_minors() {
        let c = rat(7, 3);
        let order = 6;
        assert_eq!(wedge_minor_coefficient(&ColShape(Partition::empty()), &c, order), TruncSeries::constant(Family::P, Caps::new(0, order), c.clone()));
        for d in 1..=8 {
            for b in 0..d {
                let a = d - 1 - b;
                assert_eq!(
                    wedge_minor_coefficient(&ColShape::hook(a, b), &c, order),
                    hook_coefficient(a, b, order),
                    "hook({a},{b})"
                );
            }
        }
        for d in 1..=6 {
            for mu in partitions_of(d) {
                if !mu.is_hook() {
                    assert!(wedge_minor_coefficient(&ColShape(mu.clone()), &c, order).is_zero(), "{mu}");
                }
            }
        }
    }

    #[test]
    fn shared_table_from_threads() {
        let table = CharacterTable::new();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for mu in partitions_of(6) {
                        table.character(&mu, &part(&[3, 2, 1])).unwrap();
                    }
                });
            }
        });
        assert!(table.cached_len() > 0);
        assert_eq!(table.character(&part(&[3, 2, 1]), &part(&[1; 6])).unwrap(), 16);
    }
}
