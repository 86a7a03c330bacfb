//! Fixtures shared by the criterion benchmarks in `benches/`.

use tau_lab::hurwitz::{assemble_h_onepart, l_p};
use tau_lab::partition::partitions_of;
use tau_lab::{Caps, Partition, TruncSeries};

/// `L_p^2 H` for the one-part series, the usual tau function under test.
pub fn lp2h(weight: u64, aux: i32) -> TruncSeries {
    let h = assemble_h_onepart(Caps::new(weight, aux)).expect("within the Frobenius range");
    l_p(&l_p(&h))
}

/// Every pair of partitions of `d`, in enumeration order.
pub fn partition_pairs(d: usize) -> Vec<(Partition, Partition)> {
    let ps = partitions_of(d);
    ps.iter().flat_map(|a| ps.iter().map(move |b| (a.clone(), b.clone()))).collect()
}
