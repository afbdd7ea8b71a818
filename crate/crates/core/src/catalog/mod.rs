//! Enumeration of finite topologies up to homeomorphism and persisted
//! analysis catalogs.

mod canon;
mod enumerate;
mod store;

pub use canon::{canonical_code, canonize, space_key, CanonicalCode, Canonized, SpaceKey, CANON_LIMIT};
pub use enumerate::{classes, enumerate_topologies, labeled_topologies, topology_classes, TopologyClass};
pub use store::{
    analyze_class, catalog_build, catalog_query, parse_filter, read_catalog, CatalogFooter,
    CatalogHeader, CatalogRecord, CatalogSummary, Filter, FORMAT_VERSION,
};
