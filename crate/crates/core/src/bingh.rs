//! The Bing–Hanner modification `τ(M) = {U ∪ K : U ∈ τ, K ⊆ X∖M}`.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// Largest space accepted by [`bing_hanner_oracle`].
pub const ORACLE_LIMIT: usize = 5;

/// Points outside `m` become isolated; points of `m` keep their minimal
/// neighborhoods.
pub fn bing_hanner(tau: &FiniteSpace, m: PointSet) -> FiniteSpace {
    assert_eq!(m.n(), tau.n(), "subset lives over a different ground set");
    let n = tau.n();
    let table = (0..n)
        .map(|x| {
            if m.contains(x) {
                tau.min_nbhd(x)
            } else {
                PointSet::singleton(n, x)
            }
        })
        .collect();
    FiniteSpace::from_table_unchecked(table)
}

/// Direct transcription of the defining formula: every `U ∪ K` with `U` open
/// in `tau` and `K` inside the complement of `m`.
pub fn bing_hanner_oracle(tau: &FiniteSpace, m: PointSet) -> Result<FiniteSpace> {
    if tau.n() > ORACLE_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: "Bing-Hanner oracle",
            n: tau.n(),
            limit: ORACLE_LIMIT,
        });
    }
    if tau.is_empty() {
        return Ok(FiniteSpace::empty());
    }
    let outside = m.complement();
    let mut family: Vec<PointSet> = Vec::new();
    for &u in tau.opens() {
        for k in outside.subsets() {
            family.push(u | k);
        }
    }
    FiniteSpace::from_opens(tau.n(), &family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::is_extension;

    fn set(n: usize, xs: &[usize]) -> PointSet {
        PointSet::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn sierpinski_cases() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(bing_hanner(&s, set(2, &[1])), FiniteSpace::discrete(2));
        assert_eq!(bing_hanner(&s, set(2, &[0, 1])), s);
        assert_eq!(bing_hanner_oracle(&s, set(2, &[0])).unwrap(), s);
        assert_eq!(bing_hanner(&s, set(2, &[0])), s);
    }

    #[test]
    fn chain_with_middle_point() {
        let c3 = FiniteSpace::chain(3);
        let t = bing_hanner(&c3, set(3, &[1]));
        assert_eq!(t.min_nbhds(), &[set(3, &[0]), set(3, &[1, 2]), set(3, &[2])]);
        let expected: Vec<PointSet> = [
            &[][..],
            &[0],
            &[2],
            &[0, 2],
            &[1, 2],
            &[0, 1, 2],
        ]
        .iter()
        .map(|xs| set(3, xs))
        .collect();
        let mut got = t.opens().to_vec();
        got.sort();
        let mut exp = expected.clone();
        exp.sort();
        assert_eq!(got, exp);
        assert_eq!(bing_hanner_oracle(&c3, set(3, &[1])).unwrap(), t);
    }

    #[test]
    fn extreme_subsets() {
        let c4 = FiniteSpace::chain(4);
        assert_eq!(bing_hanner_oracle(&c4, PointSet::empty(4)).unwrap(), FiniteSpace::discrete(4));
        assert_eq!(bing_hanner_oracle(&c4, PointSet::full(4)).unwrap(), c4);
        assert_eq!(bing_hanner(&c4, PointSet::empty(4)), FiniteSpace::discrete(4));
    }

    #[test]
    fn basic_properties_on_chain() {
        let c4 = FiniteSpace::chain(4);
        for m in PointSet::all_subsets(4) {
            let t = bing_hanner(&c4, m);
            assert!(is_extension(&c4, &t).unwrap());
            assert!(t.is_closed(m));
            for x in m.complement().iter() {
                assert!(t.is_open(PointSet::singleton(4, x)));
            }
        }
    }

    #[test]
    fn oracle_guard() {
        let big = FiniteSpace::indiscrete(6);
        assert!(matches!(
            bing_hanner_oracle(&big, PointSet::empty(6)),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }
}
