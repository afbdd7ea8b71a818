//! Dimension functions behind a common trait, looked up by name.

use super::{cov_dim, ind_boundary, ind_partition, large_ind, DimValue};
use crate::error::{Error, Result};
use crate::space::FiniteSpace;

pub trait DimensionFunction: Send + Sync {
    /// Canonical name, as used in catalogs and reports.
    fn name(&self) -> &'static str;

    fn evaluate(&self, space: &FiniteSpace) -> DimValue;
}

pub struct IndBoundary;
pub struct IndPartition;
pub struct LargeInductive;
pub struct CoveringDimension;

impl DimensionFunction for IndBoundary {
    fn name(&self) -> &'static str {
        "ind_b"
    }

    fn evaluate(&self, space: &FiniteSpace) -> DimValue {
        ind_boundary(space)
    }
}

impl DimensionFunction for IndPartition {
    fn name(&self) -> &'static str {
        "ind_p"
    }

    fn evaluate(&self, space: &FiniteSpace) -> DimValue {
        ind_partition(space)
    }
}

impl DimensionFunction for LargeInductive {
    fn name(&self) -> &'static str {
        "Ind"
    }

    fn evaluate(&self, space: &FiniteSpace) -> DimValue {
        large_ind(space)
    }
}

impl DimensionFunction for CoveringDimension {
    fn name(&self) -> &'static str {
        "dim"
    }

    fn evaluate(&self, space: &FiniteSpace) -> DimValue {
        cov_dim(space)
    }
}

/// Name → dimension function. Several names may point at one function.
pub struct DimensionRegistry {
    entries: Vec<(String, Box<dyn DimensionFunction>)>,
}

impl DimensionRegistry {
    pub fn new() -> Self {
        DimensionRegistry {
            entries: Vec::new(),
        }
    }

    /// `ind`/`ind_b` (boundary form), `ind_p`, `Ind`, `dim`.
    pub fn standard() -> Self {
        let mut r = Self::new();
        r.register("ind", IndBoundary);
        r.register("ind_b", IndBoundary);
        r.register("ind_p", IndPartition);
        r.register("Ind", LargeInductive);
        r.register("dim", CoveringDimension);
        r
    }

    pub fn register<D: DimensionFunction + 'static>(&mut self, name: &str, f: D) {
        self.entries.retain(|(k, _)| k != name);
        self.entries.push((name.to_string(), Box::new(f)));
    }

    pub fn get(&self, name: &str) -> Result<&dyn DimensionFunction> {
        self.entries
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, f)| f.as_ref())
            .ok_or_else(|| Error::UnknownDimension(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(k, _)| k.as_str()).collect()
    }
}

impl Default for DimensionRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        let r = DimensionRegistry::standard();
        assert_eq!(r.get("ind").unwrap().name(), "ind_b");
        assert_eq!(r.get("Ind").unwrap().evaluate(&FiniteSpace::sierpinski()), DimValue::Finite(0));
        assert_eq!(r.get("ind").unwrap().evaluate(&FiniteSpace::sierpinski()), DimValue::Finite(1));
        assert!(matches!(r.get("IND"), Err(Error::UnknownDimension(_))));
        assert_eq!(r.names(), vec!["ind", "ind_b", "ind_p", "Ind", "dim"]);
    }
}
