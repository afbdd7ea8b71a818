//! Exact minimum hitting set by branch and bound.
//!
//! Given a universe `0..m` and a list of constraints (subsets of the
//! universe), find a smallest set of elements meeting every constraint.

use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HittingOutcome {
    /// A minimum hitting set (element indices ascending).
    Optimal(Vec<usize>),
    /// The constraint at this index (in the caller's list) is empty.
    Infeasible { constraint: usize },
    /// Every hitting set has more than `max_k` elements.
    BoundExceeded,
}

/// Minimum hitting set of `constraints` over `0..universe`, searching sizes up
/// to `max_k`. Deterministic: among minimum sets, the first one found by a
/// fixed branching order is returned.
pub fn minimum_hitting_set(
    universe: usize,
    constraints: &[Vec<usize>],
    max_k: usize,
) -> HittingOutcome {
    if let Some(i) = constraints.iter().position(|c| c.is_empty()) {
        return HittingOutcome::Infeasible { constraint: i };
    }

    // Deduplicate constraints and drop any that contain another one.
    let mut rows: Vec<Bits> = constraints
        .iter()
        .map(|c| {
            let mut b = Bits::new(universe);
            for &e in c {
                assert!(e < universe, "element {e} outside universe {universe}");
                b.set(e);
            }
            b
        })
        .collect();
    rows.sort_by_key(|r| r.count());
    rows.dedup();
    let mut kept: Vec<Bits> = Vec::new();
    for r in rows {
        if !kept.iter().any(|k| k.is_subset(&r)) {
            kept.push(r);
        }
    }
    let rows = kept;
    if rows.is_empty() {
        return HittingOutcome::Optimal(Vec::new());
    }

    // Column signatures: which constraints each element hits. Identical
    // columns keep the lowest index; strictly dominated columns are dropped.
    let mut by_sig: HashMap<Bits, usize> = HashMap::new();
    for e in 0..universe {
        let mut sig = Bits::new(rows.len());
        for (ri, r) in rows.iter().enumerate() {
            if r.get(e) {
                sig.set(ri);
            }
        }
        if sig.count() == 0 {
            continue;
        }
        by_sig.entry(sig).or_insert(e);
    }
    let mut cols: Vec<(usize, Bits)> = by_sig.into_iter().map(|(s, e)| (e, s)).collect();
    cols.sort_by_key(|c| c.0);
    let undominated: Vec<(usize, Bits)> = cols
        .iter()
        .filter(|(e, s)| {
            !cols
                .iter()
                .any(|(f, t)| f != e && s.is_subset(t) && s != t)
        })
        .cloned()
        .collect();

    let mut solver = Solver {
        rows: rows.len(),
        cols: undominated,
        best: None,
        limit: max_k,
    };
    let greedy = solver.greedy();
    if greedy.len() <= max_k {
        solver.limit = greedy.len();
        solver.best = Some(greedy);
    }
    let mut chosen = Vec::new();
    let uncovered = {
        let mut b = Bits::new(rows.len());
        for i in 0..rows.len() {
            b.set(i);
        }
        b
    };
    solver.search(&mut chosen, uncovered);
    match solver.best {
        Some(mut set) => {
            set.sort_unstable();
            HittingOutcome::Optimal(set)
        }
        None => HittingOutcome::BoundExceeded,
    }
}

struct Solver {
    rows: usize,
    cols: Vec<(usize, Bits)>,
    best: Option<Vec<usize>>,
    /// Largest size still worth finding.
    limit: usize,
}

impl Solver {
    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = Bits::new(self.rows);
        for i in 0..self.rows {
            uncovered.set(i);
        }
        let mut picked = Vec::new();
        while uncovered.count() > 0 {
            let (e, sig) = self
                .cols
                .iter()
                .max_by_key(|(e, s)| {
                    let gain = s.0.iter().zip(&uncovered.0).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
                    (gain, std::cmp::Reverse(*e))
                })
                .expect("feasible instance has columns");
            picked.push(*e);
            for (u, s) in uncovered.0.iter_mut().zip(&sig.0) {
                *u &= !s;
            }
        }
        picked
    }

    /// Number of pairwise column-disjoint uncovered rows, a lower bound on
    /// the elements still needed.
    fn lower_bound(&self, uncovered: &Bits) -> usize {
        let mut used = Bits::new(self.cols.len());
        let mut bound = 0;
        for r in uncovered.ones() {
            let hitters: Vec<usize> = self
                .cols
                .iter()
                .enumerate()
                .filter(|(_, (_, s))| s.get(r))
                .map(|(ci, _)| ci)
                .collect();
            if hitters.iter().all(|&ci| !used.get(ci)) {
                bound += 1;
                for ci in hitters {
                    used.set(ci);
                }
            }
        }
        bound
    }

    fn search(&mut self, chosen: &mut Vec<usize>, uncovered: Bits) {
        if uncovered.count() == 0 {
            let better = match &self.best {
                Some(b) => chosen.len() < b.len(),
                None => chosen.len() <= self.limit,
            };
            if better {
                self.limit = chosen.len().saturating_sub(1);
                self.best = Some(chosen.clone());
            }
            return;
        }
        let budget = match &self.best {
            Some(b) => b.len() - 1,
            None => self.limit,
        };
        if chosen.len() + self.lower_bound(&uncovered) > budget {
            return;
        }
        // branch on the uncovered row with the fewest hitters
        let row = uncovered
            .ones()
            .min_by_key(|&r| self.cols.iter().filter(|(_, s)| s.get(r)).count())
            .unwrap();
        let branches: Vec<usize> = self
            .cols
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| s.get(row))
            .map(|(ci, _)| ci)
            .collect();
        for ci in branches {
            let (e, sig) = &self.cols[ci];
            let e = *e;
            let mut next = uncovered.clone();
            for (u, s) in next.0.iter_mut().zip(&sig.0) {
                *u &= !s;
            }
            chosen.push(e);
            self.search(chosen, next);
            chosen.pop();
        }
    }
}

/// Whether `set` meets every constraint.
pub fn is_hitting_set(set: &[usize], constraints: &[Vec<usize>]) -> bool {
    constraints.iter().all(|c| c.iter().any(|e| set.contains(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(universe: usize, constraints: &[Vec<usize>]) -> Option<usize> {
        (0u32..1 << universe)
            .filter(|&m| {
                let set: Vec<usize> = (0..universe).filter(|&e| m & (1 << e) != 0).collect();
                is_hitting_set(&set, constraints)
            })
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn empty_constraint_is_infeasible() {
        assert_eq!(
            minimum_hitting_set(3, &[vec![0], vec![]], 3),
            HittingOutcome::Infeasible { constraint: 1 }
        );
    }

    #[test]
    fn no_constraints() {
        assert_eq!(minimum_hitting_set(3, &[], 3), HittingOutcome::Optimal(vec![]));
    }

    #[test]
    fn small_instances() {
        let c = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
        match minimum_hitting_set(4, &c, 4) {
            HittingOutcome::Optimal(s) => {
                assert_eq!(s.len(), 2);
                assert!(is_hitting_set(&s, &c));
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(minimum_hitting_set(4, &c, 1), HittingOutcome::BoundExceeded);
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // greedy picks 0 first (hits three rows) and then needs two more
        let c = vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 4], vec![2, 4], vec![3, 5], vec![4, 5]];
        let best = brute_force(6, &c).unwrap();
        match minimum_hitting_set(6, &c, 6) {
            HittingOutcome::Optimal(s) => {
                assert_eq!(s.len(), best);
                assert!(is_hitting_set(&s, &c));
            }
            o => panic!("{o:?}"),
        }
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            universe in 1usize..9,
            raw in prop::collection::vec(prop::collection::vec(0usize..9, 0..4), 0..8),
        ) {
            let constraints: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|c| c.into_iter().filter(|&e| e < universe).collect())
                .collect();
            let expected = brute_force(universe, &constraints);
            match minimum_hitting_set(universe, &constraints, universe) {
                HittingOutcome::Optimal(s) => {
                    prop_assert!(is_hitting_set(&s, &constraints));
                    prop_assert_eq!(Some(s.len()), expected);
                }
                HittingOutcome::Infeasible { constraint } => {
                    prop_assert!(constraints[constraint].is_empty());
                    prop_assert_eq!(expected, None);
                }
                HittingOutcome::BoundExceeded => prop_assert!(false, "bound is the universe size"),
            }
        }
    }
}
