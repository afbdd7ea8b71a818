use std::collections::BTreeMap;

use crate::catalog::canon::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_extensions_with_limit, Extensions, DEFAULT_ENUMERATION_LIMIT};
use crate::space::FiniteSpace;

/// A topology together with the number of labeled topologies it stands for.
#[derive(Clone, Debug)]
pub struct TopologyClass {
    pub space: FiniteSpace,
    pub code: CanonicalCode,
    pub multiplicity: usize,
}

/// All topologies on `n` labeled points, as extensions of the indiscrete one.
pub fn labeled_topologies(n: usize, max_points: usize) -> Result<Extensions> {
    if n == 0 {
        return Err(Error::SizeOutOfRange(0));
    }
    enumerate_extensions_with_limit(&FiniteSpace::indiscrete(n), max_points)
}

/// One canonical representative per homeomorphism class, ordered by code.
pub fn topology_classes(n: usize, max_points: usize) -> Result<Vec<TopologyClass>> {
    let mut counts: BTreeMap<CanonicalCode, usize> = BTreeMap::new();
    for space in labeled_topologies(n, max_points)? {
        *counts.entry(canonical_code(&space)?).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(code, multiplicity)| {
            Ok(TopologyClass {
                space: code.decode()?,
                code,
                multiplicity,
            })
        })
        .collect()
}

/// Labeled enumeration (multiplicity 1 each) or one entry per class.
pub fn enumerate_topologies(n: usize, up_to_homeo: bool, max_points: usize) -> Result<Vec<TopologyClass>> {
    if up_to_homeo {
        return topology_classes(n, max_points);
    }
    labeled_topologies(n, max_points)?
        .map(|space| {
            Ok(TopologyClass {
                code: canonical_code(&space)?,
                space,
                multiplicity: 1,
            })
        })
        .collect()
}

/// Classes with the default size guard.
pub fn classes(n: usize) -> Result<Vec<TopologyClass>> {
    topology_classes(n, DEFAULT_ENUMERATION_LIMIT)
}
