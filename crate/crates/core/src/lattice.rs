//! The lattice of topologies on a fixed finite ground set.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// Default cap on the point count for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 5;

fn same_size(a: &FiniteSpace, b: &FiniteSpace) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// Is `mu` finer than or equal to `tau`?
pub fn is_extension(tau: &FiniteSpace, mu: &FiniteSpace) -> Result<bool> {
    same_size(tau, mu)?;
    Ok(is_extension_by_table(tau, mu))
}

/// `mu ⊇ tau` iff every minimal neighborhood of `mu` lies inside the
/// corresponding one of `tau`.
pub fn is_extension_by_table(tau: &FiniteSpace, mu: &FiniteSpace) -> bool {
    (0..tau.n()).all(|x| mu.min_nbhd(x).is_subset(tau.min_nbhd(x)))
}

/// `mu ⊇ tau` checked directly on open sets.
pub fn is_extension_by_opens(tau: &FiniteSpace, mu: &FiniteSpace) -> bool {
    tau.opens().iter().all(|&o| mu.is_open(o))
}

fn check_list(spaces: &[FiniteSpace]) -> Result<&FiniteSpace> {
    let first = spaces.first().ok_or(Error::EmptyList)?;
    for s in &spaces[1..] {
        same_size(first, s)?;
    }
    Ok(first)
}

/// Intersection of the open families.
pub fn meet(spaces: &[FiniteSpace]) -> Result<FiniteSpace> {
    let first = check_list(spaces)?;
    if first.is_empty() {
        return Ok(FiniteSpace::empty());
    }
    let common: Vec<PointSet> = first
        .opens()
        .iter()
        .copied()
        .filter(|&o| spaces[1..].iter().all(|s| s.is_open(o)))
        .collect();
    let result = FiniteSpace::from_opens(first.n(), &common);
    assert!(
        result.is_ok(),
        "intersection of topologies failed validation: {result:?}"
    );
    result
}

/// The topology generated by the union of the open families: closed under
/// pairwise intersection first, then under union.
pub fn join(spaces: &[FiniteSpace]) -> Result<FiniteSpace> {
    let first = check_list(spaces)?;
    let n = first.n();
    if n == 0 {
        return Ok(FiniteSpace::empty());
    }
    let mut seen = vec![false; 1 << n];
    let mut base: Vec<PointSet> = Vec::new();
    for s in spaces {
        for &o in s.opens() {
            if !seen[o.bits() as usize] {
                seen[o.bits() as usize] = true;
                base.push(o);
            }
        }
    }
    // finite intersections of the subbasis
    let mut i = 0;
    while i < base.len() {
        let a = base[i];
        let mut j = 0;
        while j < base.len() {
            let c = a & base[j];
            if !seen[c.bits() as usize] {
                seen[c.bits() as usize] = true;
                base.push(c);
            }
            j += 1;
        }
        i += 1;
    }
    // arbitrary unions of the basis
    let mut opens = base.clone();
    let mut i = 0;
    while i < opens.len() {
        let a = opens[i];
        for &b in &base {
            let c = a | b;
            if !seen[c.bits() as usize] {
                seen[c.bits() as usize] = true;
                opens.push(c);
            }
        }
        i += 1;
    }
    let result = FiniteSpace::from_opens(n, &opens);
    assert!(result.is_ok(), "generated family failed validation: {result:?}");
    result
}

/// Every topology finer than a base topology, emitted once each in
/// lexicographic order of minimal-neighborhood tables (rows compared by bits).
///
/// Candidate tables choose `N'(x) ⊆ N(x)` with `x ∈ N'(x)`, point by point,
/// rejecting a choice as soon as it breaks `y ∈ N'(x) ⇒ N'(y) ⊆ N'(x)`
/// against an earlier point.
pub struct Extensions {
    base: Vec<PointSet>,
    table: Vec<PointSet>,
    /// Next candidate bits per point (submask cursor), `None` once exhausted.
    cursor: Vec<Option<u16>>,
    depth: usize,
    emitted: usize,
    done: bool,
}

/// All extensions of `tau`, limited to [`DEFAULT_ENUMERATION_LIMIT`] points.
pub fn enumerate_extensions(tau: &FiniteSpace) -> Result<Extensions> {
    enumerate_extensions_with_limit(tau, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_extensions_with_limit(tau: &FiniteSpace, max_points: usize) -> Result<Extensions> {
    if tau.n() > max_points {
        return Err(Error::SizeGuardExceeded {
            what: "extension enumeration",
            n: tau.n(),
            limit: max_points,
        });
    }
    let n = tau.n();
    Ok(Extensions {
        base: tau.min_nbhds().to_vec(),
        table: vec![PointSet::empty(n); n],
        cursor: vec![Some(0); n],
        depth: 0,
        emitted: 0,
        done: false,
    })
}

impl Extensions {
    /// Number of spaces emitted so far.
    pub fn count_emitted(&self) -> usize {
        self.emitted
    }

    fn consistent(&self, x: usize, cand: PointSet) -> bool {
        (0..x).all(|y| {
            let ny = self.table[y];
            (!cand.contains(y) || ny.is_subset(cand)) && (!ny.contains(x) || cand.is_subset(ny))
        })
    }

    fn advance(cursor: u16, mask: u16) -> Option<u16> {
        if cursor == mask {
            None
        } else {
            Some(((cursor | !mask).wrapping_add(1)) & mask)
        }
    }
}

impl Iterator for Extensions {
    type Item = FiniteSpace;

    fn next(&mut self) -> Option<FiniteSpace> {
        if self.done {
            return None;
        }
        let n = self.base.len();
        if n == 0 {
            self.done = true;
            self.emitted += 1;
            return Some(FiniteSpace::empty());
        }
        loop {
            let x = self.depth;
            if x == n {
                // full table; back up one level before returning
                let space = FiniteSpace::from_table_unchecked(self.table.clone());
                self.depth -= 1;
                self.emitted += 1;
                return Some(space);
            }
            let mask = self.base[x].bits();
            let mut found = false;
            while let Some(c) = self.cursor[x] {
                self.cursor[x] = Self::advance(c, mask);
                let cand = PointSet::from_bits(n, c).unwrap();
                if cand.contains(x) && self.consistent(x, cand) {
                    self.table[x] = cand;
                    found = true;
                    break;
                }
            }
            if found {
                self.depth += 1;
                if self.depth < n {
                    self.cursor[self.depth] = Some(0);
                }
            } else {
                if x == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
            }
        }
    }
}
