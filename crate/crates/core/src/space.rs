//! Finite topological spaces stored by their minimal neighborhoods.
//!
//! Every finite topology is determined by the table `x -> N(x)`, where `N(x)`
//! is the intersection of all open sets containing `x`. A table is valid
//! exactly when `x ∈ N(x)` and `y ∈ N(x)` implies `N(y) ⊆ N(x)`; the open
//! sets are then the unions of table entries.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hitting::{minimum_hitting_set, HittingOutcome};
use crate::pointset::{PointSet, MAX_POINTS};

/// A topology on the points `{0, .., n-1}`.
pub struct FiniteSpace {
    n: usize,
    min_nbhd: Vec<PointSet>,
    opens: OnceLock<Vec<PointSet>>,
}

impl Clone for FiniteSpace {
    fn clone(&self) -> Self {
        FiniteSpace {
            n: self.n,
            min_nbhd: self.min_nbhd.clone(),
            opens: self.opens.clone(),
        }
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.min_nbhd == other.min_nbhd
    }
}

impl Eq for FiniteSpace {}

impl std::hash::Hash for FiniteSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.min_nbhd.hash(state);
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("n", &self.n)
            .field("min_nbhd", &self.min_nbhd)
            .finish()
    }
}

/// How a space is described when it is built: by its open sets or by its
/// minimal-neighborhood table. Index lists are raw and get validated.
#[derive(Clone, Debug)]
pub enum SpaceSpec {
    Opens(Vec<Vec<usize>>),
    MinNbhds(Vec<Vec<usize>>),
}

/// Validates a description and builds the space.
pub fn build_space(n: usize, spec: &SpaceSpec) -> Result<FiniteSpace> {
    if n == 0 || n > MAX_POINTS {
        return Err(Error::SizeOutOfRange(n));
    }
    let to_sets = |lists: &[Vec<usize>]| -> Result<Vec<PointSet>> {
        lists
            .iter()
            .map(|l| {
                PointSet::from_indices(n, l.iter().copied()).ok_or_else(|| {
                    Error::AxiomViolation(format!("set {l:?} has an index outside 0..{n}"))
                })
            })
            .collect()
    };
    match spec {
        SpaceSpec::Opens(lists) => FiniteSpace::from_opens(n, &to_sets(lists)?),
        SpaceSpec::MinNbhds(lists) => {
            if lists.len() != n {
                return Err(Error::AxiomViolation(format!(
                    "table has {} rows for {n} points",
                    lists.len()
                )));
            }
            FiniteSpace::from_min_nbhds(to_sets(lists)?)
        }
    }
}

impl FiniteSpace {
    /// Builds a space from a minimal-neighborhood table, checking both table
    /// invariants.
    pub fn from_min_nbhds(table: Vec<PointSet>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_POINTS {
            return Err(Error::SizeOutOfRange(n));
        }
        for (x, &nx) in table.iter().enumerate() {
            if nx.n() != n {
                return Err(Error::SizeMismatch(nx.n(), n));
            }
            if !nx.contains(x) {
                return Err(Error::AxiomViolation(format!(
                    "point {x} is not in its own neighborhood {nx}"
                )));
            }
        }
        for (x, &nx) in table.iter().enumerate() {
            for y in nx.iter() {
                if !table[y].is_subset(nx) {
                    return Err(Error::AxiomViolation(format!(
                        "neighborhood of point {x} is {nx}, which contains {y}, \
                         but the neighborhood {} of {y} is not inside it",
                        table[y]
                    )));
                }
            }
        }
        Ok(Self::from_table_unchecked(table))
    }

    /// Builds a space from a family of open sets, checking that the family is
    /// a topology. Duplicates are allowed; order is irrelevant.
    pub fn from_opens(n: usize, family: &[PointSet]) -> Result<Self> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::SizeOutOfRange(n));
        }
        let mut sets: Vec<PointSet> = family.to_vec();
        for s in &sets {
            if s.n() != n {
                return Err(Error::SizeMismatch(s.n(), n));
            }
        }
        sets.sort();
        sets.dedup();
        if !sets.contains(&PointSet::empty(n)) {
            return Err(Error::AxiomViolation("the empty set is not open".into()));
        }
        if !sets.contains(&PointSet::full(n)) {
            return Err(Error::AxiomViolation("the whole set is not open".into()));
        }
        let table: Vec<PointSet> = (0..n)
            .map(|x| {
                sets.iter()
                    .filter(|o| o.contains(x))
                    .fold(PointSet::full(n), |acc, &o| acc & o)
            })
            .collect();
        let space = Self::from_table_unchecked(table);
        // The family is a topology iff it equals the topology generated by its
        // own minimal neighborhoods.
        if space.opens() == sets.as_slice() {
            return Ok(space);
        }
        Err(Self::first_axiom_violation(&sets))
    }

    fn first_axiom_violation(sets: &[PointSet]) -> Error {
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if sets.binary_search(&(a | b)).is_err() {
                    return Error::AxiomViolation(format!(
                        "union of {a} and {b} is not in the family"
                    ));
                }
                if sets.binary_search(&(a & b)).is_err() {
                    return Error::AxiomViolation(format!(
                        "intersection of {a} and {b} is not in the family"
                    ));
                }
            }
        }
        unreachable!("family closed under pairwise operations is a topology")
    }

    /// Caller guarantees the table is valid.
    pub(crate) fn from_table_unchecked(table: Vec<PointSet>) -> Self {
        FiniteSpace {
            n: table.len(),
            min_nbhd: table,
            opens: OnceLock::new(),
        }
    }

    /// The space with no points.
    pub fn empty() -> Self {
        Self::from_table_unchecked(Vec::new())
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_table_unchecked((0..n).map(|x| PointSet::singleton(n, x)).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_table_unchecked(vec![PointSet::full(n); n])
    }

    /// Two points, opens `{}`, `{1}`, `{0,1}`.
    pub fn sierpinski() -> Self {
        Self::chain(2)
    }

    /// The chain `C_n`: `N(x) = {x, .., n-1}`, so the opens are the final segments.
    pub fn chain(n: usize) -> Self {
        Self::from_table_unchecked(
            (0..n)
                .map(|x| PointSet::from_indices(n, x..n).unwrap())
                .collect(),
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn min_nbhd(&self, x: usize) -> PointSet {
        self.min_nbhd[x]
    }

    pub fn min_nbhds(&self) -> &[PointSet] {
        &self.min_nbhd
    }

    pub fn ground(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// All open sets in ascending bit order.
    pub fn opens(&self) -> &[PointSet] {
        self.opens.get_or_init(|| {
            PointSet::all_subsets(self.n)
                .filter(|&s| self.is_open(s))
                .collect()
        })
    }

    /// All closed sets in ascending bit order.
    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut c: Vec<PointSet> = self.opens().iter().map(|o| o.complement()).collect();
        c.sort();
        c
    }

    #[inline]
    pub fn is_open(&self, s: PointSet) -> bool {
        s.iter().all(|x| self.min_nbhd[x].is_subset(s))
    }

    #[inline]
    pub fn is_closed(&self, s: PointSet) -> bool {
        self.is_open(s.complement())
    }

    /// Smallest closed superset: the points whose minimal neighborhood meets `s`.
    pub fn closure(&self, s: PointSet) -> PointSet {
        let mut c = PointSet::empty(self.n);
        for x in 0..self.n {
            if self.min_nbhd[x].meets(s) {
                c.insert(x);
            }
        }
        c
    }

    pub fn interior(&self, s: PointSet) -> PointSet {
        self.closure(s.complement()).complement()
    }

    pub fn boundary(&self, s: PointSet) -> PointSet {
        self.closure(s) - self.interior(s)
    }

    /// Smallest open superset of `s`.
    pub fn open_hull(&self, s: PointSet) -> PointSet {
        s.iter()
            .fold(PointSet::empty(self.n), |acc, x| acc | self.min_nbhd[x])
    }

    /// Relative topology on `s`, re-indexed in ascending order. The returned
    /// vector maps new indices to the original points.
    pub fn subspace(&self, s: PointSet) -> Result<(FiniteSpace, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        Ok(self.restrict(s))
    }

    /// Like [`FiniteSpace::subspace`], but an empty carrier yields the empty space.
    pub fn restrict(&self, s: PointSet) -> (FiniteSpace, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let m = map.len();
        let mut pos = [usize::MAX; MAX_POINTS];
        for (i, &x) in map.iter().enumerate() {
            pos[x] = i;
        }
        let table = map
            .iter()
            .map(|&x| {
                PointSet::from_indices(m, (self.min_nbhd[x] & s).iter().map(|y| pos[y])).unwrap()
            })
            .collect();
        (Self::from_table_unchecked(table), map)
    }

    /// Points `x` with `{x}` open.
    pub fn isolated_points(&self) -> PointSet {
        PointSet::from_indices(
            self.n,
            (0..self.n).filter(|&x| self.min_nbhd[x].len() == 1),
        )
        .unwrap()
    }

    /// Minimum size of a dense subset. A set is dense iff it meets every
    /// minimal neighborhood, so this is a minimum hitting set.
    pub fn density(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let constraints: Vec<Vec<usize>> =
            self.min_nbhd.iter().map(|s| s.to_vec()).collect();
        match minimum_hitting_set(self.n, &constraints, self.n) {
            HittingOutcome::Optimal(d) => d.len(),
            other => unreachable!("the ground set is always dense: {other:?}"),
        }
    }

    /// Specialization check used by several axioms: is `y` in the closure of `{x}`?
    #[inline]
    fn in_closure_of_point(&self, y: usize, x: usize) -> bool {
        self.min_nbhd[y].contains(x)
    }

    pub fn is_t0(&self) -> bool {
        (0..self.n).all(|x| {
            (x + 1..self.n).all(|y| self.min_nbhd[x] != self.min_nbhd[y])
        })
    }

    /// Singletons closed; on finite spaces this means discrete.
    pub fn is_t1(&self) -> bool {
        (0..self.n).all(|x| self.is_closed(PointSet::singleton(self.n, x)))
    }

    pub fn is_t2(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.min_nbhd[x].is_disjoint(self.min_nbhd[y])))
    }

    /// A point outside a closed set `F` has a neighborhood disjoint from a
    /// neighborhood of `F`. With minimal neighborhoods it is enough to test
    /// `F = cl{f}`.
    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|f| {
                self.in_closure_of_point(x, f) || self.min_nbhd[x].is_disjoint(self.min_nbhd[f])
            })
        })
    }

    /// Disjoint closed sets have disjoint open hulls. A failure for `(E, F)`
    /// is witnessed by points `e`, `f` with overlapping neighborhoods, and then
    /// `(cl{e}, cl{f})` fails too, so point closures suffice.
    pub fn is_normal(&self) -> bool {
        let cls: Vec<PointSet> = (0..self.n)
            .map(|x| self.closure(PointSet::singleton(self.n, x)))
            .collect();
        (0..self.n).all(|e| {
            (0..self.n).all(|f| self.min_nbhd[e].is_disjoint(self.min_nbhd[f]) || cls[e].meets(cls[f]))
        })
    }

    /// Separated sets (`cl E ∩ F = E ∩ cl F = ∅`) have disjoint open hulls.
    ///
    /// Shrinking a separated pair keeps it separated, and overlapping hulls
    /// are witnessed by a single pair of points, so the test runs over
    /// singleton pairs: `{e}`, `{f}` are separated iff neither lies in the
    /// other's minimal neighborhood.
    pub fn is_hereditarily_normal(&self) -> bool {
        (0..self.n).all(|e| {
            (0..self.n).all(|f| {
                self.min_nbhd[e].is_disjoint(self.min_nbhd[f])
                    || self.min_nbhd[e].contains(f)
                    || self.min_nbhd[f].contains(e)
            })
        })
    }

    /// Every discrete family of pairwise disjoint closed sets has pairwise
    /// disjoint open expansions.
    ///
    /// In a finite space a point's neighborhood meets a closed set iff the
    /// point belongs to it, so every pairwise disjoint closed family is
    /// discrete. The minimal expansions are the open hulls; two hulls overlap
    /// iff some members `a`, `b` have overlapping neighborhoods, and then the
    /// two-member family `{cl{a}, cl{b}}` already fails. So the test runs over
    /// pairs of point closures.
    pub fn is_collectionwise_normal(&self) -> bool {
        let cls: Vec<PointSet> = (0..self.n)
            .map(|x| self.closure(PointSet::singleton(self.n, x)))
            .collect();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if cls[a].is_disjoint(cls[b]) && self.min_nbhd[a].meets(self.min_nbhd[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Collectionwise normality of every nonempty subspace.
    pub fn is_hereditarily_collectionwise_normal(&self) -> bool {
        PointSet::all_subsets(self.n)
            .filter(|s| !s.is_empty())
            .all(|s| self.restrict(s).0.is_collectionwise_normal())
    }

    pub fn separation_profile(&self) -> SeparationProfile {
        SeparationProfile {
            t0: self.is_t0(),
            t1: self.is_t1(),
            t2: self.is_t2(),
            regular: self.is_regular(),
            normal: self.is_normal(),
            hereditarily_normal: self.is_hereditarily_normal(),
            collectionwise_normal: self.is_collectionwise_normal(),
            hereditarily_collectionwise_normal: self.is_hereditarily_collectionwise_normal(),
        }
    }

    /// Serializable description using the minimal-neighborhood table.
    pub fn to_file(&self) -> SpaceFile {
        SpaceFile {
            points: self.n,
            opens: None,
            min_nbhds: Some(self.min_nbhd.iter().map(|s| s.to_vec()).collect()),
        }
    }

    /// Serializable description listing every open set.
    pub fn to_opens_file(&self) -> SpaceFile {
        SpaceFile {
            points: self.n,
            opens: Some(self.opens().iter().map(|s| s.to_vec()).collect()),
            min_nbhds: None,
        }
    }

    /// Parses the JSON space format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpaceFile = serde_json::from_str(text)?;
        file.build()
    }
}

/// Separation and normality flags of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationProfile {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    pub regular: bool,
    pub normal: bool,
    pub hereditarily_normal: bool,
    pub collectionwise_normal: bool,
    pub hereditarily_collectionwise_normal: bool,
}

impl SeparationProfile {
    /// Names and values, in declaration order.
    pub fn flags(&self) -> [(&'static str, bool); 8] {
        [
            ("t0", self.t0),
            ("t1", self.t1),
            ("t2", self.t2),
            ("regular", self.regular),
            ("normal", self.normal),
            ("hereditarily_normal", self.hereditarily_normal),
            ("collectionwise_normal", self.collectionwise_normal),
            (
                "hereditarily_collectionwise_normal",
                self.hereditarily_collectionwise_normal,
            ),
        ]
    }
}

/// On-disk space description: exactly one of `opens` and `min_nbhds`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_nbhds: Option<Vec<Vec<usize>>>,
}

impl SpaceFile {
    pub fn build(&self) -> Result<FiniteSpace> {
        let lists = match (&self.opens, &self.min_nbhds) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "exactly one of `opens` and `min_nbhds` may be given".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Parse(
                    "one of `opens` and `min_nbhds` is required".into(),
                ))
            }
            (Some(o), None) => o,
            (None, Some(m)) => m,
        };
        for l in lists {
            if l.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!(
                    "set {l:?} is not strictly ascending"
                )));
            }
        }
        let spec = match &self.opens {
            Some(o) => SpaceSpec::Opens(o.clone()),
            None => SpaceSpec::MinNbhds(lists.clone()),
        };
        build_space(self.points, &spec)
    }
}

impl Serialize for FiniteSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteSpace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = SpaceFile::deserialize(deserializer)?;
        file.build().map_err(serde::de::Error::custom)
    }
}
