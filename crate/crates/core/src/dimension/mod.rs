//! Dimension functions of finite spaces: `ord`, covering dimension `dim`,
//! large inductive dimension `Ind`, and small inductive dimension `ind` in
//! its boundary and partition formulations.
//!
//! All functions are defined on every finite space, whatever separation
//! axioms it satisfies. On non-regular spaces the two `ind` formulations
//! disagree (the Sierpiński space has boundary form 1, partition form ∞).

mod memo;
mod registry;
mod value;

pub use registry::{
    CoveringDimension, DimensionFunction, DimensionRegistry, IndBoundary, IndPartition,
    LargeInductive,
};
pub use value::DimValue;

use memo::{memoized, Kind};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// Largest space accepted by [`cov_dim_oracle`].
pub const COV_ORACLE_LIMIT: usize = 4;

/// A partition `L = X ∖ (U ∪ V)` between two sets, with `U`, `V` open and disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Partition {
    pub l: PointSet,
    pub u: PointSet,
    pub v: PointSet,
}

/// Order of a family: one less than the largest number of distinct members
/// with a common point; `-1` when every member is empty.
pub fn ord(family: &[PointSet]) -> Result<DimValue> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut members = family.to_vec();
    members.sort();
    members.dedup();
    let n = members[0].n();
    let deepest = (0..n)
        .map(|p| members.iter().filter(|m| m.contains(p)).count())
        .max()
        .unwrap_or(0);
    Ok(if deepest == 0 {
        DimValue::NegOne
    } else {
        DimValue::Finite(deepest as u32 - 1)
    })
}

/// Covering dimension.
///
/// The cover by minimal neighborhoods refines every open cover, so it is
/// enough to find the least order of an open cover refining it: a cover by
/// nonempty opens each inside some minimal neighborhood.
pub fn cov_dim(space: &FiniteSpace) -> DimValue {
    if space.is_empty() {
        return DimValue::NegOne;
    }
    memoized(Kind::Covering, space, |s| {
        let n = s.n();
        let candidates: Vec<PointSet> = s
            .opens()
            .iter()
            .copied()
            .filter(|w| !w.is_empty() && s.min_nbhds().iter().any(|&m| w.is_subset(m)))
            .collect();
        (0..n)
            .find(|&k| {
                let mut depth = vec![0usize; n];
                cover_within(&candidates, &mut depth, k + 1)
            })
            .map(|k| DimValue::Finite(k as u32))
            .expect("the minimal-neighborhood cover has order below n")
    })
}

/// Is there a cover from `candidates`, extending the current one, in which no
/// point lies in more than `cap` members?
fn cover_within(candidates: &[PointSet], depth: &mut [usize], cap: usize) -> bool {
    let Some(x) = depth.iter().position(|&d| d == 0) else {
        return true;
    };
    for &w in candidates {
        if !w.contains(x) || w.iter().any(|p| depth[p] >= cap) {
            continue;
        }
        for p in w.iter() {
            depth[p] += 1;
        }
        let ok = cover_within(candidates, depth, cap);
        for p in w.iter() {
            depth[p] -= 1;
        }
        if ok {
            return true;
        }
    }
    false
}

/// Covering dimension straight from the definition: quantifies over every
/// open cover and searches its open refinements.
///
/// Only irredundant refinements are examined (at most `n` members), since
/// dropping a redundant member never raises the order.
pub fn cov_dim_oracle(space: &FiniteSpace) -> Result<DimValue> {
    let n = space.n();
    if n > COV_ORACLE_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: "covering dimension oracle",
            n,
            limit: COV_ORACLE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(DimValue::NegOne);
    }
    let opens = space.opens();
    let full = space.ground();
    let mut cache: std::collections::HashMap<u32, DimValue> = std::collections::HashMap::new();
    let mut worst = DimValue::NegOne;
    for cover in 1u32..(1 << opens.len()) {
        let members: Vec<PointSet> = (0..opens.len())
            .filter(|&i| cover & (1 << i) != 0)
            .map(|i| opens[i])
            .collect();
        if members.iter().fold(PointSet::empty(n), |a, &m| a | m) != full {
            continue;
        }
        let refining: u32 = (0..opens.len())
            .filter(|&i| !opens[i].is_empty() && members.iter().any(|&m| opens[i].is_subset(m)))
            .fold(0, |acc, i| acc | (1 << i));
        let best = *cache.entry(refining).or_insert_with(|| {
            let pool: Vec<PointSet> = (0..opens.len())
                .filter(|&i| refining & (1 << i) != 0)
                .map(|i| opens[i])
                .collect();
            least_order_refinement(&pool, n, full)
        });
        worst = worst.max(best);
    }
    Ok(worst)
}

fn least_order_refinement(pool: &[PointSet], n: usize, full: PointSet) -> DimValue {
    let mut best = DimValue::Infinite;
    let mut pick: Vec<PointSet> = Vec::new();
    fn rec(pool: &[PointSet], start: usize, left: usize, full: PointSet, pick: &mut Vec<PointSet>, best: &mut DimValue) {
        if !pick.is_empty() && pick.iter().fold(PointSet::empty(full.n()), |a, &m| a | m) == full {
            let o = ord(pick).unwrap();
            *best = (*best).min(o);
        }
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            pick.push(pool[i]);
            rec(pool, i + 1, left - 1, full, pick, best);
            pick.pop();
        }
    }
    rec(pool, 0, n, full, &mut pick, &mut best);
    best
}

fn partitions<'a>(
    space: &'a FiniteSpace,
    a: PointSet,
    b: PointSet,
) -> impl Iterator<Item = Partition> + 'a {
    let opens = space.opens();
    let full = space.ground();
    opens
        .iter()
        .copied()
        .filter(move |u| a.is_subset(*u))
        .flat_map(move |u| {
            opens
                .iter()
                .copied()
                .filter(move |v| b.is_subset(*v) && u.is_disjoint(*v))
                .map(move |v| Partition {
                    l: full - (u | v),
                    u,
                    v,
                })
        })
}

/// Least value of `dimfn` over the partition subspaces between `a` and `b`;
/// `Infinite` when there is no partition at all.
fn best_partition_value(
    space: &FiniteSpace,
    a: PointSet,
    b: PointSet,
    dimfn: fn(&FiniteSpace) -> DimValue,
) -> DimValue {
    let mut ls: Vec<PointSet> = partitions(space, a, b).map(|p| p.l).collect();
    if ls.iter().any(|l| l.is_empty()) {
        return DimValue::NegOne;
    }
    ls.sort();
    ls.dedup();
    let mut best = DimValue::Infinite;
    for l in ls {
        best = best.min(dimfn(&space.restrict(l).0));
        if best == DimValue::Finite(0) {
            break;
        }
    }
    best
}

/// Large inductive dimension: every pair of disjoint closed sets has a
/// partition of dimension one less.
pub fn large_ind(space: &FiniteSpace) -> DimValue {
    if space.is_empty() {
        return DimValue::NegOne;
    }
    memoized(Kind::LargeInd, space, |s| {
        let closed: Vec<PointSet> = s.closed_sets().into_iter().filter(|c| !c.is_empty()).collect();
        let mut worst = DimValue::Finite(0);
        for (i, &a) in closed.iter().enumerate() {
            for &b in &closed[i + 1..] {
                if a.meets(b) {
                    continue;
                }
                worst = worst.max(best_partition_value(s, a, b, large_ind).succ());
                if worst == DimValue::Infinite {
                    return worst;
                }
            }
        }
        worst
    })
}

/// Small inductive dimension at one point, boundary form. The minimal
/// neighborhood is the only open `U` with `x ∈ U ⊆ N(x)`, so the local value
/// is one more than the dimension of its boundary.
pub fn ind_at(space: &FiniteSpace, x: usize) -> DimValue {
    let u = space.min_nbhd(x);
    ind_boundary(&space.restrict(space.boundary(u)).0).succ()
}

/// Small inductive dimension, boundary form: every point has arbitrarily small
/// open neighborhoods whose boundaries have dimension one less.
pub fn ind_boundary(space: &FiniteSpace) -> DimValue {
    if space.is_empty() {
        return DimValue::NegOne;
    }
    memoized(Kind::IndBoundary, space, |s| {
        (0..s.n()).map(|x| ind_at(s, x)).max().unwrap()
    })
}

/// Boundary form of `ind` with the full quantifier: every open `O ∋ x` and
/// every open `U` with `x ∈ U ⊆ O`.
pub fn ind_boundary_literal(space: &FiniteSpace) -> DimValue {
    if space.is_empty() {
        return DimValue::NegOne;
    }
    memoized(Kind::IndLiteral, space, |s| {
        let opens = s.opens();
        let mut worst = DimValue::NegOne;
        for x in 0..s.n() {
            for &o in opens.iter().filter(|o| o.contains(x)) {
                let best = opens
                    .iter()
                    .filter(|u| u.contains(x) && u.is_subset(o))
                    .map(|&u| ind_boundary_literal(&s.restrict(s.boundary(u)).0).succ())
                    .min()
                    .unwrap();
                worst = worst.max(best);
            }
        }
        worst
    })
}

/// Small inductive dimension, partition form: every point and closed set
/// missing it have a partition of dimension one less.
pub fn ind_partition(space: &FiniteSpace) -> DimValue {
    if space.is_empty() {
        return DimValue::NegOne;
    }
    memoized(Kind::IndPartition, space, |s| {
        let n = s.n();
        let closed: Vec<PointSet> = s.closed_sets().into_iter().filter(|c| !c.is_empty()).collect();
        let mut worst = DimValue::Finite(0);
        for x in 0..n {
            let pt = PointSet::singleton(n, x);
            for &a in closed.iter().filter(|a| !a.contains(x)) {
                worst = worst.max(best_partition_value(s, pt, a, ind_partition).succ());
                if worst == DimValue::Infinite {
                    return worst;
                }
            }
        }
        worst
    })
}

fn check_closed(space: &FiniteSpace, s: PointSet) -> Result<()> {
    if s.n() != space.n() {
        return Err(Error::SizeMismatch(s.n(), space.n()));
    }
    if !space.is_closed(s) {
        return Err(Error::NotClosed(s));
    }
    Ok(())
}

/// A partition between closed disjoint `a` and `b` missing `avoid`, if one exists.
///
/// Opens are tried in ascending bit order, `U` before `V`.
pub fn find_partition(
    space: &FiniteSpace,
    a: PointSet,
    b: PointSet,
    avoid: PointSet,
) -> Result<Option<Partition>> {
    check_closed(space, a)?;
    check_closed(space, b)?;
    if a.meets(b) {
        return Err(Error::NotDisjoint(a, b));
    }
    Ok(partitions(space, a, b).find(|p| p.l.is_disjoint(avoid)))
}

/// A partition between the point `x` and a closed set `a` not containing it,
/// missing `avoid`.
pub fn find_point_partition(
    space: &FiniteSpace,
    x: usize,
    a: PointSet,
    avoid: PointSet,
) -> Result<Option<Partition>> {
    check_closed(space, a)?;
    let pt = PointSet::singleton(space.n(), x);
    if a.contains(x) {
        return Err(Error::NotDisjoint(pt, a));
    }
    Ok(partitions(space, pt, a).find(|p| p.l.is_disjoint(avoid)))
}
