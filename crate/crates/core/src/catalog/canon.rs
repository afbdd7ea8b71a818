//! Canonical codes: relabeling-invariant fingerprints of finite spaces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// Largest space accepted by [`canonical_code`].
pub const CANON_LIMIT: usize = 8;

/// Lexicographically least row-major bit serialization of the
/// minimal-neighborhood membership matrix over point relabelings.
///
/// Entry `(i, j)` is 1 when point `j` lies in the minimal neighborhood of
/// point `i`. Two spaces are homeomorphic iff their codes are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalCode {
    n: usize,
    code: Vec<u8>,
}

/// Result of canonicalization together with the size of the automorphism group.
#[derive(Clone, Debug)]
pub struct Canonized {
    pub code: CanonicalCode,
    pub automorphisms: usize,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bytes(&self) -> &[u8] {
        &self.code
    }

    fn from_rows(n: usize, rows: &[u16]) -> Self {
        let mut code = vec![0u8; (n * n).div_ceil(8)];
        let mut k = 0;
        for &row in rows {
            for j in 0..n {
                if row & (1 << (n - 1 - j)) != 0 {
                    code[k / 8] |= 0x80 >> (k % 8);
                }
                k += 1;
            }
        }
        CanonicalCode { n, code }
    }

    fn rows(&self) -> Vec<u16> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n).fold(0u16, |acc, j| {
                    let k = i * n + j;
                    if self.code[k / 8] & (0x80 >> (k % 8)) != 0 {
                        acc | (1 << (n - 1 - j))
                    } else {
                        acc
                    }
                })
            })
            .collect()
    }

    /// Rebuilds the canonical representative of the class.
    pub fn decode(&self) -> Result<FiniteSpace> {
        let n = self.n;
        if n == 0 {
            return Ok(FiniteSpace::empty());
        }
        let table = self
            .rows()
            .into_iter()
            .map(|row| {
                PointSet::from_indices(n, (0..n).filter(|&j| row & (1 << (n - 1 - j)) != 0))
                    .unwrap()
            })
            .collect();
        FiniteSpace::from_min_nbhds(table)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, hex::encode(&self.code))
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, h) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("canonical code `{s}` lacks `n:`")))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad point count in `{s}`")))?;
        if n > CANON_LIMIT {
            return Err(Error::Parse(format!("code `{s}` has too many points")));
        }
        let code = hex::decode(h).map_err(|e| Error::Parse(format!("code `{s}`: {e}")))?;
        if code.len() != (n * n).div_ceil(8) {
            return Err(Error::Parse(format!("code `{s}` has the wrong length")));
        }
        Ok(CanonicalCode { n, code })
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn canonical_code(space: &FiniteSpace) -> Result<CanonicalCode> {
    canonize(space).map(|c| c.code)
}

/// Brute-force search over relabelings.
///
/// Only relabelings that list points in ascending order of the invariant
/// `(|N(x)|, |cl{x}|)` are tried; homeomorphisms preserve that invariant, so
/// the minimum is still a complete invariant. Ties at the minimum are counted:
/// they form a coset of the automorphism group.
pub fn canonize(space: &FiniteSpace) -> Result<Canonized> {
    let n = space.n();
    if n > CANON_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: "canonical code",
            n,
            limit: CANON_LIMIT,
        });
    }
    let inv: Vec<(usize, usize)> = (0..n)
        .map(|x| {
            (
                space.min_nbhd(x).len(),
                space.closure(PointSet::singleton(n, x)).len(),
            )
        })
        .collect();
    let mut slots = inv.clone();
    slots.sort();

    let mut search = Search {
        space,
        n,
        inv: &inv,
        slots: &slots,
        perm: Vec::with_capacity(n),
        used: 0,
        best: None,
        ties: 0,
        rows: vec![0; n],
    };
    search.run();
    let best = search.best.unwrap_or_default();
    Ok(Canonized {
        code: CanonicalCode::from_rows(n, &best),
        automorphisms: search.ties.max(1),
    })
}

struct Search<'a> {
    space: &'a FiniteSpace,
    n: usize,
    inv: &'a [(usize, usize)],
    slots: &'a [(usize, usize)],
    /// new position -> old point
    perm: Vec<usize>,
    used: u16,
    best: Option<Vec<u16>>,
    ties: usize,
    rows: Vec<u16>,
}

impl Search<'_> {
    fn run(&mut self) {
        let i = self.perm.len();
        if i == self.n {
            self.evaluate();
            return;
        }
        for x in 0..self.n {
            if self.used & (1 << x) == 0 && self.inv[x] == self.slots[i] {
                self.used |= 1 << x;
                self.perm.push(x);
                self.run();
                self.perm.pop();
                self.used &= !(1 << x);
            }
        }
    }

    fn evaluate(&mut self) {
        let n = self.n;
        let mut state = std::cmp::Ordering::Equal;
        for i in 0..n {
            let nb = self.space.min_nbhd(self.perm[i]);
            let mut row = 0u16;
            for j in 0..n {
                if nb.contains(self.perm[j]) {
                    row |= 1 << (n - 1 - j);
                }
            }
            self.rows[i] = row;
            if state == std::cmp::Ordering::Equal {
                if let Some(best) = &self.best {
                    state = row.cmp(&best[i]);
                    if state == std::cmp::Ordering::Greater {
                        return;
                    }
                }
            }
        }
        match (&self.best, state) {
            (None, _) | (Some(_), std::cmp::Ordering::Less) => {
                self.best = Some(self.rows.clone());
                self.ties = 1;
            }
            (Some(_), std::cmp::Ordering::Equal) => self.ties += 1,
            _ => {}
        }
    }
}

/// Cache key for homeomorphism-invariant quantities: the canonical code when
/// the space is small enough, the raw table otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SpaceKey {
    Canonical(CanonicalCode),
    Labeled(Vec<u16>),
}

pub fn space_key(space: &FiniteSpace) -> SpaceKey {
    match canonical_code(space) {
        Ok(c) => SpaceKey::Canonical(c),
        Err(_) => SpaceKey::Labeled(space.min_nbhds().iter().map(|s| s.bits()).collect()),
    }
}
