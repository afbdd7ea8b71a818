//! Process-wide cache of dimension values, keyed by canonical code.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use super::DimValue;
use crate::catalog::{space_key, SpaceKey};
use crate::space::FiniteSpace;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Kind {
    Covering,
    LargeInd,
    IndBoundary,
    IndLiteral,
    IndPartition,
}

static CACHE: LazyLock<RwLock<HashMap<(Kind, SpaceKey), DimValue>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Looks the value up, computing and storing it on a miss. The lock is not
/// held during computation, so recursive calls are fine; concurrent misses
/// compute the same value.
pub(crate) fn memoized(
    kind: Kind,
    space: &FiniteSpace,
    compute: impl FnOnce(&FiniteSpace) -> DimValue,
) -> DimValue {
    let key = (kind, space_key(space));
    if let Some(&v) = CACHE.read().unwrap().get(&key) {
        return v;
    }
    let v = compute(space);
    CACHE.write().unwrap().insert(key, v);
    v
}
