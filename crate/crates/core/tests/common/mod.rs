//! Literal definitions used as test oracles. Everything here works from the
//! open family of a space and a ground subset `g`, with the subspace topology
//! on `g` taken as `{O ∩ g}`; none of it goes through the library's
//! minimal-neighborhood shortcuts.
#![allow(dead_code)]

use std::collections::HashMap;

use fintopo::catalog::labeled_topologies;
use fintopo::{DimValue, FiniteSpace, PointSet};
use proptest::prelude::*;

pub fn labeled(n: usize) -> Vec<FiniteSpace> {
    labeled_topologies(n, 5).unwrap().collect()
}

pub fn labeled_up_to(n: usize) -> Vec<FiniteSpace> {
    (1..=n).flat_map(labeled).collect()
}

/// A random topology on up to `max_n` points.
pub fn arb_space(max_n: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max_n).prop_flat_map(arb_space_on)
}

/// A random topology on `n` points from a random relation closed to a preorder.
pub fn arb_space_on(n: usize) -> impl Strategy<Value = FiniteSpace> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), n), n).prop_map(move |rel| {
        let mut r = rel;
        for (x, row) in r.iter_mut().enumerate() {
            row[x] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        let table = (0..n)
            .map(|x| PointSet::from_indices(n, (0..n).filter(|&y| r[x][y])).unwrap())
            .collect();
        FiniteSpace::from_min_nbhds(table).unwrap()
    })
}

/// The space with point `x` renamed `perm[x]`.
pub fn permute(space: &FiniteSpace, perm: &[usize]) -> FiniteSpace {
    let n = space.n();
    let mut table = vec![PointSet::empty(n); n];
    for x in 0..n {
        table[perm[x]] = PointSet::from_indices(n, space.min_nbhd(x).iter().map(|y| perm[y])).unwrap();
    }
    FiniteSpace::from_min_nbhds(table).unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn homeomorphic(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    a.n() == b.n() && permutations(a.n()).iter().any(|p| permute(a, p) == *b)
}

pub fn sorted_opens(family: impl IntoIterator<Item = PointSet>) -> Vec<PointSet> {
    let mut v: Vec<PointSet> = family.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Intersection of open families, set by set.
pub fn meet_lit(spaces: &[FiniteSpace]) -> Vec<PointSet> {
    sorted_opens(
        spaces[0]
            .opens()
            .iter()
            .copied()
            .filter(|o| spaces.iter().all(|s| s.opens().contains(o))),
    )
}

/// Smallest family containing every open set that is closed under pairwise
/// unions and intersections.
pub fn join_lit(spaces: &[FiniteSpace]) -> Vec<PointSet> {
    let mut family = sorted_opens(spaces.iter().flat_map(|s| s.opens().iter().copied()));
    loop {
        let mut next = family.clone();
        for &a in &family {
            for &b in &family {
                next.push(a | b);
                next.push(a & b);
            }
        }
        let next = sorted_opens(next);
        if next == family {
            return family;
        }
        family = next;
    }
}

/// `{U ∪ K : U open, K ⊆ X∖M}`.
pub fn bing_hanner_lit(space: &FiniteSpace, m: PointSet) -> Vec<PointSet> {
    let outside: Vec<PointSet> = PointSet::all_subsets(space.n()).filter(|k| k.is_disjoint(m)).collect();
    sorted_opens(space.opens().iter().flat_map(|&u| outside.iter().map(move |&k| u | k)))
}

/// Subspace topology on `g`.
pub fn opens_on(space: &FiniteSpace, g: PointSet) -> Vec<PointSet> {
    let mut v: Vec<PointSet> = space.opens().iter().map(|&o| o & g).collect();
    v.sort();
    v.dedup();
    v
}

pub fn closeds_on(opens: &[PointSet], g: PointSet) -> Vec<PointSet> {
    opens.iter().map(|&o| g - o).collect()
}

pub fn closure_lit(opens: &[PointSet], g: PointSet, a: PointSet) -> PointSet {
    closeds_on(opens, g)
        .into_iter()
        .filter(|&c| a.is_subset(c))
        .fold(g, |acc, c| acc & c)
}

pub fn interior_lit(opens: &[PointSet], a: PointSet) -> PointSet {
    opens
        .iter()
        .filter(|o| o.is_subset(a))
        .fold(PointSet::empty(a.n()), |acc, &o| acc | o)
}

fn separable(opens: &[PointSet], a: PointSet, b: PointSet) -> bool {
    opens.iter().any(|&u| {
        a.is_subset(u) && opens.iter().any(|&v| b.is_subset(v) && u.is_disjoint(v))
    })
}

pub fn t0_lit(space: &FiniteSpace) -> bool {
    let n = space.n();
    (0..n).all(|x| {
        (0..n).all(|y| x == y || space.opens().iter().any(|o| o.contains(x) != o.contains(y)))
    })
}

pub fn t1_lit(space: &FiniteSpace) -> bool {
    let n = space.n();
    (0..n).all(|x| {
        (0..n).all(|y| x == y || space.opens().iter().any(|o| o.contains(x) && !o.contains(y)))
    })
}

pub fn t2_lit(space: &FiniteSpace) -> bool {
    let n = space.n();
    (0..n).all(|x| {
        (0..n).all(|y| {
            x == y || separable(space.opens(), PointSet::singleton(n, x), PointSet::singleton(n, y))
        })
    })
}

pub fn regular_lit(space: &FiniteSpace) -> bool {
    let g = space.ground();
    let opens = space.opens();
    closeds_on(opens, g).into_iter().all(|f| {
        (g - f).iter().all(|x| separable(opens, PointSet::singleton(g.n(), x), f))
    })
}

pub fn normal_on(opens: &[PointSet], g: PointSet) -> bool {
    let closed = closeds_on(opens, g);
    closed.iter().all(|&a| {
        closed
            .iter()
            .all(|&b| !a.is_disjoint(b) || separable(opens, a, b))
    })
}

pub fn normal_lit(space: &FiniteSpace) -> bool {
    normal_on(space.opens(), space.ground())
}

/// Every subspace normal.
pub fn hereditarily_normal_lit(space: &FiniteSpace) -> bool {
    PointSet::all_subsets(space.n()).all(|g| normal_on(&opens_on(space, g), g))
}

/// Every discrete family of pairwise disjoint closed sets expands to pairwise
/// disjoint open sets.
pub fn collectionwise_normal_on(opens: &[PointSet], g: PointSet) -> bool {
    let mut closed: Vec<PointSet> = closeds_on(opens, g).into_iter().filter(|c| !c.is_empty()).collect();
    closed.sort();
    closed.dedup();
    let discrete = |family: &[PointSet]| {
        g.iter().all(|x| {
            opens
                .iter()
                .filter(|o| o.contains(x))
                .any(|&o| family.iter().filter(|f| f.meets(o)).count() <= 1)
        })
    };
    fn expands(opens: &[PointSet], family: &[PointSet], used: PointSet) -> bool {
        let Some((&f, rest)) = family.split_first() else {
            return true;
        };
        opens
            .iter()
            .filter(|&&u| f.is_subset(u) && u.is_disjoint(used))
            .any(|&u| expands(opens, rest, used | u))
    }
    fn families(
        closed: &[PointSet],
        start: usize,
        current: &mut Vec<PointSet>,
        check: &mut dyn FnMut(&[PointSet]) -> bool,
    ) -> bool {
        if !check(current) {
            return false;
        }
        for i in start..closed.len() {
            if current.iter().all(|c| c.is_disjoint(closed[i])) {
                current.push(closed[i]);
                let ok = families(closed, i + 1, current, check);
                current.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let empty = PointSet::empty(g.n());
    let mut check = |family: &[PointSet]| !discrete(family) || expands(opens, family, empty);
    families(&closed, 0, &mut Vec::new(), &mut check)
}

pub fn collectionwise_normal_lit(space: &FiniteSpace) -> bool {
    collectionwise_normal_on(space.opens(), space.ground())
}

pub fn hereditarily_collectionwise_normal_lit(space: &FiniteSpace) -> bool {
    PointSet::all_subsets(space.n()).all(|g| collectionwise_normal_on(&opens_on(space, g), g))
}

pub fn density_lit(space: &FiniteSpace) -> usize {
    let g = space.ground();
    PointSet::all_subsets(space.n())
        .filter(|&d| closure_lit(space.opens(), g, d) == g)
        .map(|d| d.len())
        .min()
        .unwrap()
}

/// ord of a family of distinct sets, literally: the largest number of
/// members with a common point, minus one.
pub fn ord_lit(family: &[PointSet]) -> DimValue {
    let mut members = family.to_vec();
    members.sort();
    members.dedup();
    let m = members.len();
    let mut best: Option<u32> = None;
    for mask in 1u32..(1 << m) {
        let common = (0..m)
            .filter(|i| mask & (1 << i) != 0)
            .fold(None::<PointSet>, |acc, i| Some(acc.map_or(members[i], |a| a & members[i])));
        if common.is_some_and(|c| !c.is_empty()) {
            let k = mask.count_ones() - 1;
            best = Some(best.map_or(k, |b| b.max(k)));
        }
    }
    best.map_or(DimValue::NegOne, DimValue::Finite)
}

/// Partitions between `a` and `b` inside the subspace on `g`.
fn partitions_on(opens: &[PointSet], g: PointSet, a: PointSet, b: PointSet) -> Vec<PointSet> {
    let mut out = Vec::new();
    for &u in opens {
        for &v in opens {
            if a.is_subset(u) && b.is_subset(v) && u.is_disjoint(v) {
                out.push(g - (u | v));
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Which {
    Large,
    SmallPartition,
    SmallBoundary,
}

/// The three inductive dimensions read as "dim(g) <= k" predicates with `k`
/// decreasing through the recursion, then minimized over `k`.
pub struct Dims<'a> {
    space: &'a FiniteSpace,
    memo: HashMap<(Which, u16, i64), bool>,
}

impl<'a> Dims<'a> {
    pub fn new(space: &'a FiniteSpace) -> Self {
        Dims {
            space,
            memo: HashMap::new(),
        }
    }

    fn le(&mut self, which: Which, g: PointSet, k: i64) -> bool {
        if g.is_empty() {
            return true;
        }
        if k < 0 {
            return false;
        }
        if let Some(&v) = self.memo.get(&(which, g.bits(), k)) {
            return v;
        }
        let opens = opens_on(self.space, g);
        let closed = closeds_on(&opens, g);
        let v = match which {
            Which::Large => closed.iter().all(|&a| {
                closed.iter().filter(|b| b.is_disjoint(a)).all(|&b| {
                    partitions_on(&opens, g, a, b).into_iter().any(|l| self.le(which, l, k - 1))
                })
            }),
            Which::SmallPartition => g.iter().all(|x| {
                let pt = PointSet::singleton(g.n(), x);
                closed.iter().filter(|a| !a.contains(x)).all(|&a| {
                    partitions_on(&opens, g, pt, a).into_iter().any(|l| self.le(which, l, k - 1))
                })
            }),
            Which::SmallBoundary => g.iter().all(|x| {
                opens.iter().filter(|o| o.contains(x)).all(|&o| {
                    opens.iter().filter(|u| u.contains(x) && u.is_subset(o)).any(|&u| {
                        let bd = closure_lit(&opens, g, u) - interior_lit(&opens, u);
                        self.le(which, bd, k - 1)
                    })
                })
            }),
        };
        self.memo.insert((which, g.bits(), k), v);
        v
    }

    fn value(&mut self, which: Which, g: PointSet) -> DimValue {
        if g.is_empty() {
            return DimValue::NegOne;
        }
        // a finite value never exceeds |g| - 1
        (0..=g.len() as i64)
            .find(|&k| self.le(which, g, k))
            .map_or(DimValue::Infinite, |k| DimValue::Finite(k as u32))
    }

    /// Ind of the subspace `g`.
    pub fn large_ind(&mut self, g: PointSet) -> DimValue {
        self.value(Which::Large, g)
    }

    /// ind of the subspace `g`, partition form.
    pub fn ind_partition(&mut self, g: PointSet) -> DimValue {
        self.value(Which::SmallPartition, g)
    }

    /// ind of the subspace `g`, boundary form with the full quantifier over
    /// neighborhoods `O` and `U`.
    pub fn ind_boundary(&mut self, g: PointSet) -> DimValue {
        self.value(Which::SmallBoundary, g)
    }
}

/// dim from the definition: every finite open cover has an open refinement
/// cover of order at most k. Only for tiny spaces.
pub fn cov_dim_lit(space: &FiniteSpace) -> DimValue {
    let g = space.ground();
    if g.is_empty() {
        return DimValue::NegOne;
    }
    let opens: Vec<PointSet> = space.opens().to_vec();
    let m = opens.len();
    assert!(m <= 12, "literal covering dimension is for tiny spaces");
    let families: Vec<Vec<PointSet>> = (1u32..(1 << m))
        .map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).map(|i| opens[i]).collect())
        .collect();
    let covers: Vec<&Vec<PointSet>> = families
        .iter()
        .filter(|f| f.iter().fold(PointSet::empty(g.n()), |a, &b| a | b) == g)
        .collect();
    for k in 0..=space.n() as u32 {
        let ok = covers.iter().all(|c| {
            covers.iter().any(|r| {
                r.iter().all(|s| c.iter().any(|t| s.is_subset(*t))) && ord_lit(r) <= DimValue::Finite(k)
            })
        });
        if ok {
            return DimValue::Finite(k);
        }
    }
    DimValue::Infinite
}

/// Least `k` such that some `k` of the candidates meet to `tau`, by brute
/// force. `None` when even all of them together do not.
pub fn least_family(tau: &FiniteSpace, candidates: &[FiniteSpace]) -> Option<usize> {
    let target = sorted_opens(tau.opens().iter().copied());
    if candidates.is_empty() || meet_lit(candidates) != target {
        return None;
    }
    (1..=candidates.len()).find(|&k| {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let family: Vec<FiniteSpace> = idx.iter().map(|&i| candidates[i].clone()).collect();
            if meet_lit(&family) == target {
                return true;
            }
            let Some(pos) = (0..k).rev().find(|&i| idx[i] < candidates.len() - k + i) else {
                return false;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    })
}

pub fn is_topology(n: usize, family: &[PointSet]) -> bool {
    let has = |s: PointSet| family.contains(&s);
    has(PointSet::empty(n))
        && has(PointSet::full(n))
        && family.iter().all(|&a| family.iter().all(|&b| has(a | b) && has(a & b)))
}
