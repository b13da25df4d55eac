//! Explicit families of complete caps.
//!
//! Every builder returns the cap together with a [`Certificate`] whose
//! completeness verdict comes from [`crate::cap::completeness`], never from
//! the construction's own reasoning.

mod c4;
mod family;
mod partition;
mod tangent;

pub use c4::{
    c4_admissible, c4_construct, c4_planar_case, c4_predicted_size, C4Outcome, C4Route,
    PlanarVerdict,
};
pub use family::{
    c_full_minus_one_family, check_family_hypotheses, general_family, size_by_k,
    size_by_singletons, trivial_and_singleton_plan, two_trivial_family, FamilyGeometry,
    FamilyHypothesis, PairPlan, SingletonFamily, TwoTrivial,
};
pub use partition::{
    partition_condition, partition_double, partition_from_cap, partition_to_cap, witness_lines,
    CapPartition, PartitionCheck,
};
pub use tangent::{saturate, tangent_cap, Saturation, TangentOutcome};

use crate::cap::completeness;
use crate::geom::PointSet;

/// Which construction produced a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `{c0} ⊔ A ⊔ (H_B \ (c0 + A))`.
    Tangent,
    /// A cap joined with its uncovered points.
    Saturated,
    /// Coset pairs solved pair by pair under the sufficient conditions.
    CosetFamily,
    /// `|Ĉ \ C| = 1`, every pair a singleton.
    AllSingletons,
    /// `|Ĉ \ C| = 1`, two trivial pairs and singletons elsewhere.
    TwoTrivial,
    /// Built from a labelled partition of an affine space.
    Partition,
    /// Four-point slice spanning a solid.
    FourPoint,
    /// Plotkin double of a smaller cap.
    Double,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Tangent => "tangent",
            Construction::Saturated => "saturated",
            Construction::CosetFamily => "coset-family",
            Construction::AllSingletons => "all-singletons",
            Construction::TwoTrivial => "two-trivial",
            Construction::Partition => "partition",
            Construction::FourPoint => "four-point",
            Construction::Double => "double",
        }
    }
}

/// What a construction claims and what the oracle found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub construction: Construction,
    pub parameters: Vec<(&'static str, i64)>,
    pub predicted_size: usize,
    pub size: usize,
    pub is_cap: bool,
    pub is_complete: bool,
}

impl Certificate {
    /// Runs the completeness oracle on `cap`.
    pub fn check(
        construction: Construction,
        parameters: Vec<(&'static str, i64)>,
        predicted_size: usize,
        cap: &PointSet,
    ) -> Self {
        let report = completeness(cap);
        Certificate {
            construction,
            parameters,
            predicted_size,
            size: cap.len(),
            is_cap: report.is_cap,
            is_complete: report.is_complete,
        }
    }

    /// Complete and of the predicted size.
    pub fn verified(&self) -> bool {
        self.is_complete && self.size == self.predicted_size
    }

    pub fn parameter(&self, key: &str) -> Option<i64> {
        self.parameters
            .iter()
            .find(|(k, _)| *k == key)
            .map(|&(_, v)| v)
    }
}

/// A constructed cap with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Built {
    pub cap: PointSet,
    pub certificate: Certificate,
}
