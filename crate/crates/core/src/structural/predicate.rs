//! Classes of spaces as conjunctions of primitive membership tests.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{LazyLock, RwLock};

use crate::catalog::{space_key, SpaceKey};
use crate::dimension::{cov_dim, ind_boundary, large_ind};
use crate::error::{Error, Result};
use crate::space::FiniteSpace;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    T0,
    T1,
    Regular,
    Normal,
    HereditarilyNormal,
    CollectionwiseNormal,
    HereditarilyCollectionwiseNormal,
    /// boundary-form `ind` equals 0
    Ind0,
    /// `Ind` equals 0
    LargeInd0,
    /// `dim` equals 0
    Dim0,
}

impl Atom {
    pub const ALL: [Atom; 10] = [
        Atom::T0,
        Atom::T1,
        Atom::Regular,
        Atom::Normal,
        Atom::HereditarilyNormal,
        Atom::CollectionwiseNormal,
        Atom::HereditarilyCollectionwiseNormal,
        Atom::Ind0,
        Atom::LargeInd0,
        Atom::Dim0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::T0 => "t0",
            Atom::T1 => "t1",
            Atom::Regular => "regular",
            Atom::Normal => "normal",
            Atom::HereditarilyNormal => "hereditarily_normal",
            Atom::CollectionwiseNormal => "collectionwise_normal",
            Atom::HereditarilyCollectionwiseNormal => "hereditarily_collectionwise_normal",
            Atom::Ind0 => "ind0",
            Atom::LargeInd0 => "Ind0",
            Atom::Dim0 => "dim0",
        }
    }

    pub fn parse(name: &str) -> Option<Atom> {
        Atom::ALL.into_iter().find(|a| a.name() == name)
    }

    fn compute(self, space: &FiniteSpace) -> bool {
        match self {
            Atom::T0 => space.is_t0(),
            Atom::T1 => space.is_t1(),
            Atom::Regular => space.is_regular(),
            Atom::Normal => space.is_normal(),
            Atom::HereditarilyNormal => space.is_hereditarily_normal(),
            Atom::CollectionwiseNormal => space.is_collectionwise_normal(),
            Atom::HereditarilyCollectionwiseNormal => space.is_hereditarily_collectionwise_normal(),
            Atom::Ind0 => ind_boundary(space).is_zero(),
            Atom::LargeInd0 => large_ind(space).is_zero(),
            Atom::Dim0 => cov_dim(space).is_zero(),
        }
    }
}

static ATOM_CACHE: LazyLock<RwLock<HashMap<(Atom, SpaceKey), bool>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn atom_holds(atom: Atom, key: &SpaceKey, space: &FiniteSpace) -> bool {
    let k = (atom, key.clone());
    if let Some(&v) = ATOM_CACHE.read().unwrap().get(&k) {
        return v;
    }
    let v = atom.compute(space);
    ATOM_CACHE.write().unwrap().insert(k, v);
    v
}

/// A named class of spaces: those satisfying every atom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassPredicate {
    name: String,
    atoms: BTreeSet<Atom>,
}

/// Named bundles accepted by [`ClassPredicate::named`].
pub const NAMED_CLASSES: [(&str, &[Atom]); 10] = [
    ("ind0", &[Atom::Ind0]),
    ("dim0", &[Atom::Dim0]),
    ("Ind0", &[Atom::LargeInd0]),
    ("hn", &[Atom::HereditarilyNormal]),
    ("hn-ind0", &[Atom::HereditarilyNormal, Atom::Ind0]),
    ("hn-dim0", &[Atom::HereditarilyNormal, Atom::Dim0]),
    ("hn-Ind0", &[Atom::HereditarilyNormal, Atom::LargeInd0]),
    ("hcn-ind0", &[Atom::HereditarilyCollectionwiseNormal, Atom::Ind0]),
    ("hcn-dim0", &[Atom::HereditarilyCollectionwiseNormal, Atom::Dim0]),
    ("hcn-Ind0", &[Atom::HereditarilyCollectionwiseNormal, Atom::LargeInd0]),
];

impl ClassPredicate {
    pub fn new(name: impl Into<String>, atoms: impl IntoIterator<Item = Atom>) -> Self {
        ClassPredicate {
            name: name.into(),
            atoms: atoms.into_iter().collect(),
        }
    }

    /// A predefined bundle (`ind0`, `hn-dim0`, …), a single atom name, or a
    /// `+`-separated conjunction of atom names.
    pub fn named(name: &str) -> Result<Self> {
        if let Some((_, atoms)) = NAMED_CLASSES.iter().find(|(n, _)| *n == name) {
            return Ok(Self::new(name, atoms.iter().copied()));
        }
        let atoms = name
            .split('+')
            .map(|part| Atom::parse(part.trim()).ok_or_else(|| Error::UnknownClass(name.to_string())))
            .collect::<Result<BTreeSet<Atom>>>()?;
        Ok(ClassPredicate {
            name: name.to_string(),
            atoms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    /// Membership test; atoms are checked in order and cached per space class.
    pub fn evaluate(&self, space: &FiniteSpace) -> bool {
        if self.atoms.is_empty() {
            return true;
        }
        let key = space_key(space);
        self.atoms.iter().all(|&a| atom_holds(a, &key, space))
    }

    /// Containment decided from atoms: more atoms, smaller class.
    pub fn is_subclass_of(&self, other: &ClassPredicate) -> bool {
        self.atoms.is_superset(&other.atoms)
    }
}

impl fmt::Display for ClassPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_containment() {
        let a = ClassPredicate::named("hn-dim0").unwrap();
        let b = ClassPredicate::named("dim0").unwrap();
        assert!(a.is_subclass_of(&b));
        assert!(!b.is_subclass_of(&a));
        let c = ClassPredicate::named("t0+regular").unwrap();
        assert_eq!(c.atoms().len(), 2);
        assert!(matches!(ClassPredicate::named("foo"), Err(Error::UnknownClass(_))));
        for (name, _) in NAMED_CLASSES {
            assert_eq!(ClassPredicate::named(name).unwrap().name(), name);
        }
    }

    #[test]
    fn evaluation() {
        let s = FiniteSpace::sierpinski();
        assert!(ClassPredicate::named("dim0").unwrap().evaluate(&s));
        assert!(!ClassPredicate::named("ind0").unwrap().evaluate(&s));
        assert!(ClassPredicate::named("hn-Ind0").unwrap().evaluate(&s));
        assert!(ClassPredicate::new("any", []).evaluate(&s));
    }
}
