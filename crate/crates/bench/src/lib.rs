//! Benchmark inputs shared by the criterion targets in `benches/`.

use pgcaps::catalog;
use pgcaps::construct::partition_to_cap;
use pgcaps::search::partition_chain;
use pgcaps::PointSet;

/// The complete partition cap of PG(k+3,2), of size `2^{k+1}+3`.
pub fn partition_cap(k: u32) -> PointSet {
    let chain = partition_chain(&catalog::seed_partition(), catalog::SEED_ANCHORS, k)
        .expect("doubling chain");
    let last = chain.last().expect("nonempty chain");
    partition_to_cap(last).expect("partition cap").cap
}
