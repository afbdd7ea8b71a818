use crate::dimension::{DimValue, DimensionFunction};
use crate::error::{Error, Result};
use crate::hitting::{minimum_hitting_set, HittingOutcome};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// A cover of the space by subspaces of dimension at most 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub k: usize,
    pub pieces: Vec<PointSet>,
}

/// Least number of pieces of dimension `<= 0` covering the space. Pieces may
/// overlap; singletons always qualify, so `k <= n`.
pub fn decompose_zero_dim(space: &FiniteSpace, dimfn: &dyn DimensionFunction) -> Result<Decomposition> {
    if space.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let pieces: Vec<PointSet> = PointSet::all_subsets(space.n())
        .filter(|s| !s.is_empty())
        .filter(|&s| dimfn.evaluate(&space.restrict(s).0) <= DimValue::Finite(0))
        .collect();
    let constraints: Vec<Vec<usize>> = (0..space.n())
        .map(|x| {
            pieces
                .iter()
                .enumerate()
                .filter(|(_, p)| p.contains(x))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    match minimum_hitting_set(pieces.len(), &constraints, space.n()) {
        HittingOutcome::Optimal(chosen) => Ok(Decomposition {
            k: chosen.len(),
            pieces: chosen.into_iter().map(|i| pieces[i]).collect(),
        }),
        other => unreachable!("singletons cover every point: {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::DimensionRegistry;

    #[test]
    fn chain_examples() {
        let reg = DimensionRegistry::standard();
        let c3 = FiniteSpace::chain(3);
        let d = decompose_zero_dim(&c3, reg.get("ind").unwrap()).unwrap();
        assert_eq!(d.k, 3);
        let d = decompose_zero_dim(&c3, reg.get("dim").unwrap()).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.pieces, vec![PointSet::full(3)]);
        for name in ["ind", "Ind", "dim", "ind_p"] {
            let d = decompose_zero_dim(&FiniteSpace::discrete(4), reg.get(name).unwrap()).unwrap();
            assert_eq!(d.k, 1);
        }
        assert!(decompose_zero_dim(&FiniteSpace::empty(), reg.get("dim").unwrap()).is_err());
    }
}
