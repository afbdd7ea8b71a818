//! Structural numbers: the least number of extensions from a class whose
//! intersection is the given topology.
//!
//! A family `F` of extensions of `τ` meets to `τ` exactly when every set
//! that is not `τ`-open is omitted by some member of `F`. So the search is a
//! minimum hitting set: one constraint per non-open set, listing the
//! candidate extensions that omit it. A constraint with no candidates proves
//! that no family of any size works.

mod decompose;
mod predicate;

pub use decompose::{decompose_zero_dim, Decomposition};
pub use predicate::{Atom, ClassPredicate, NAMED_CLASSES};

use serde::{Deserialize, Serialize};

use crate::bingh::bing_hanner;
use crate::catalog::CANON_LIMIT;
use crate::error::{Error, Result};
use crate::hitting::{minimum_hitting_set, HittingOutcome};
use crate::lattice::{enumerate_extensions_with_limit, is_extension, meet, DEFAULT_ENUMERATION_LIMIT};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// Largest space accepted by [`sn_naive`].
pub const NAIVE_LIMIT: usize = 3;
/// Largest candidate list accepted by [`sn_naive`].
pub const NAIVE_CANDIDATE_LIMIT: usize = 64;

/// Why no family exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "kebab-case")]
pub enum InfinityCertificate {
    /// This non-open set is open in every candidate extension.
    EmptyHitSet { set: Vec<usize> },
    /// The topology is discrete and not itself in the class, so there are no candidates.
    NoExtensions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SnValue {
    Finite { k: usize, witness: Vec<FiniteSpace> },
    Infinite(InfinityCertificate),
}

impl SnValue {
    /// `Some(k)` for a finite value.
    pub fn finite(&self) -> Option<usize> {
        match self {
            SnValue::Finite { k, .. } => Some(*k),
            SnValue::Infinite(_) => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SnValue::Infinite(_))
    }

    /// Ordering of values with `∞` on top.
    pub fn le(&self, other: &SnValue) -> bool {
        match (self.finite(), other.finite()) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        }
    }

    /// Short display form: the number, or `inf(<certificate>)`.
    pub fn summary(&self) -> String {
        match self {
            SnValue::Finite { k, .. } => k.to_string(),
            SnValue::Infinite(InfinityCertificate::EmptyHitSet { set }) => {
                format!("inf (empty-hit-set {set:?})")
            }
            SnValue::Infinite(InfinityCertificate::NoExtensions) => "inf (no-extensions)".into(),
        }
    }
}

/// Structural number over Bing–Hanner families, with the generating subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BhSnValue {
    pub value: SnValue,
    /// `M_1, …, M_k` for a finite value, empty otherwise.
    pub subsets: Vec<PointSet>,
}

/// Every extension of `tau` in the class, in enumeration order.
pub fn a_extensions(tau: &FiniteSpace, pred: &ClassPredicate) -> Result<Vec<FiniteSpace>> {
    a_extensions_with_limit(tau, pred, DEFAULT_ENUMERATION_LIMIT)
}

pub fn a_extensions_with_limit(
    tau: &FiniteSpace,
    pred: &ClassPredicate,
    max_points: usize,
) -> Result<Vec<FiniteSpace>> {
    Ok(enumerate_extensions_with_limit(tau, max_points)?
        .filter(|mu| pred.evaluate(mu))
        .collect())
}

/// Least family of candidates meeting to `tau`, as indices into `candidates`.
fn least_meeting_family(
    tau: &FiniteSpace,
    candidates: &[FiniteSpace],
    max_k: Option<usize>,
) -> Result<std::result::Result<Vec<usize>, InfinityCertificate>> {
    let non_open: Vec<PointSet> = PointSet::all_subsets(tau.n())
        .filter(|&s| !tau.is_open(s))
        .collect();
    if non_open.is_empty() {
        return Ok(if candidates.is_empty() {
            Err(InfinityCertificate::NoExtensions)
        } else {
            Ok(vec![0])
        });
    }
    let constraints: Vec<Vec<usize>> = non_open
        .iter()
        .map(|&s| {
            candidates
                .iter()
                .enumerate()
                .filter(|(_, mu)| !mu.is_open(s))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let max_k = max_k.unwrap_or(candidates.len());
    match minimum_hitting_set(candidates.len(), &constraints, max_k) {
        HittingOutcome::Optimal(family) => Ok(Ok(family)),
        HittingOutcome::Infeasible { constraint } => Ok(Err(InfinityCertificate::EmptyHitSet {
            set: non_open[constraint].to_vec(),
        })),
        HittingOutcome::BoundExceeded => Err(Error::BoundExhausted { max_k }),
    }
}

/// Structural number of `tau` with respect to the class.
///
/// `max_k = None` searches all family sizes, which on finite spaces is
/// complete. With a bound, a minimum above it is reported as
/// [`Error::BoundExhausted`], never as infinity.
pub fn sn(tau: &FiniteSpace, pred: &ClassPredicate, max_k: Option<usize>) -> Result<SnValue> {
    if max_k == Some(0) {
        return Err(Error::BoundExhausted { max_k: 0 });
    }
    let candidates = a_extensions(tau, pred)?;
    Ok(match least_meeting_family(tau, &candidates, max_k)? {
        Ok(family) => SnValue::Finite {
            k: family.len(),
            witness: family.iter().map(|&i| candidates[i].clone()).collect(),
        },
        Err(cert) => SnValue::Infinite(cert),
    })
}

/// Literal search: tries every family of candidates of size `1, 2, …, max_k`.
pub fn sn_naive(tau: &FiniteSpace, pred: &ClassPredicate, max_k: usize) -> Result<SnValue> {
    if tau.n() > NAIVE_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: "naive structural number",
            n: tau.n(),
            limit: NAIVE_LIMIT,
        });
    }
    let candidates = a_extensions(tau, pred)?;
    if candidates.len() > NAIVE_CANDIDATE_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: "naive structural number (candidates)",
            n: candidates.len(),
            limit: NAIVE_CANDIDATE_LIMIT,
        });
    }
    for k in 1..=max_k.min(candidates.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let family: Vec<FiniteSpace> = idx.iter().map(|&i| candidates[i].clone()).collect();
            if meet(&family)? == *tau {
                return Ok(SnValue::Finite { k, witness: family });
            }
            // next k-combination in lexicographic order
            let Some(pos) = (0..k).rev().find(|&i| idx[i] < candidates.len() - k + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Err(Error::BoundExhausted { max_k })
}

/// Structural number restricted to families `τ(M_1), …, τ(M_k)`.
///
/// Distinct subsets giving the same topology are merged, keeping the largest
/// one (the union of all subsets that give it). When `tau` has no isolated points, every `{x}`
/// is a non-open set omitted only by the `τ(M)` with `x ∈ M`, so the hitting
/// constraints already force `M_1 ∪ … ∪ M_k = X`.
pub fn sn_bh(tau: &FiniteSpace, pred: &ClassPredicate, max_k: Option<usize>) -> Result<BhSnValue> {
    if tau.n() > CANON_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: "Bing-Hanner structural number",
            n: tau.n(),
            limit: CANON_LIMIT,
        });
    }
    if max_k == Some(0) {
        return Err(Error::BoundExhausted { max_k: 0 });
    }
    let mut subsets: Vec<PointSet> = Vec::new();
    let mut candidates: Vec<FiniteSpace> = Vec::new();
    let all: Vec<PointSet> = PointSet::all_subsets(tau.n()).collect();
    for &m in all.iter().rev() {
        let t = bing_hanner(tau, m);
        if candidates.contains(&t) || !pred.evaluate(&t) {
            continue;
        }
        subsets.push(m);
        candidates.push(t);
    }
    Ok(match least_meeting_family(tau, &candidates, max_k)? {
        Ok(family) => {
            let chosen: Vec<PointSet> = family.iter().map(|&i| subsets[i]).collect();
            debug_assert!(
                !tau.isolated_points().is_empty()
                    || chosen.iter().fold(PointSet::empty(tau.n()), |a, &m| a | m).is_full()
            );
            BhSnValue {
                value: SnValue::Finite {
                    k: family.len(),
                    witness: family.iter().map(|&i| candidates[i].clone()).collect(),
                },
                subsets: chosen,
            }
        }
        Err(cert) => BhSnValue {
            value: SnValue::Infinite(cert),
            subsets: Vec::new(),
        },
    })
}

/// Re-checks a finite value from scratch: witness size, class membership,
/// extension of the base, and that the witnesses meet to the base.
pub fn verify_witness(tau: &FiniteSpace, pred: &ClassPredicate, value: &SnValue) -> bool {
    match value {
        SnValue::Finite { k, witness } => {
            witness.len() == *k
                && *k >= 1
                && witness.iter().all(|mu| {
                    pred.evaluate(mu) && is_extension(tau, mu).unwrap_or(false)
                })
                && meet(witness).map(|m| m == *tau).unwrap_or(false)
        }
        SnValue::Infinite(InfinityCertificate::EmptyHitSet { set }) => {
            let Some(s) = PointSet::from_indices(tau.n(), set.iter().copied()) else {
                return false;
            };
            !tau.is_open(s)
                && a_extensions(tau, pred)
                    .map(|ext| ext.iter().all(|mu| mu.is_open(s)))
                    .unwrap_or(false)
        }
        SnValue::Infinite(InfinityCertificate::NoExtensions) => {
            a_extensions(tau, pred).map(|e| e.is_empty()).unwrap_or(false)
        }
    }
}
