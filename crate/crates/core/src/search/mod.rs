//! Brute-force oracles: complete-cap enumeration, size spectra, partition
//! searches and the greedy extension of a periodic slice.
//!
//! Every cap a search emits is re-verified with [`crate::cap::completeness`].

mod enumerate;
mod extension;
mod partition_search;
mod spectrum;

pub use enumerate::{
    all_complete_caps, canonical_slice, enumerate_complete_caps, enumerate_structured, has_slice,
    SearchConstraints, SearchMode, MAX_EXHAUSTIVE_N, STRUCTURED_BUDGET,
};
pub use extension::{periodic_extension, Extension};
pub use partition_search::{
    count_partitions, counting_identity_check, find_doubling_anchors, partition_chain,
    partition_search, CountingCheck, PartitionMode, PartitionSearch, EXHAUSTIVE_PARTITION_LIMIT,
};
pub use spectrum::{construction_spectrum, spectrum, Spectrum, Witness};
