use std::collections::BTreeSet;

use crate::{Error, Result};

use super::HyperVectorSpace;

/// A subset of a space's carrier, by vector index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorSubset(BTreeSet<usize>);

impl VectorSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: usize) -> Self {
        Self(BTreeSet::from([v]))
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VectorSubset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VectorSubset) -> VectorSubset {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VectorSubset) -> VectorSubset {
        Self(self.0.difference(&other.0).copied().collect())
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl FromIterator<usize> for VectorSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Extend<usize> for VectorSubset {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

/// Why a subset fails to be a subhyperspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceWitness {
    Empty,
    /// `y - z` escapes the set.
    Difference {
        y: usize,
        z: usize,
    },
    /// `element` lies in `b o y` but not in the set.
    Hyper {
        b: usize,
        y: usize,
        element: usize,
    },
}

impl SubspaceWitness {
    pub fn describe(&self, space: &HyperVectorSpace) -> String {
        match *self {
            SubspaceWitness::Empty => "the set is empty".into(),
            SubspaceWitness::Difference { y, z } => format!(
                "{} - {} = {} is not in the set",
                space.label(y),
                space.label(z),
                space.label(space.sub(y, z))
            ),
            SubspaceWitness::Hyper { b, y, element } => format!(
                "{} o {} = {} contains {}, which is not in the set",
                space.field().label(b),
                space.label(y),
                space.format_set(space.hyper(b, y)),
                space.label(element)
            ),
        }
    }
}

fn check_members(space: &HyperVectorSpace, set: &VectorSubset) -> Result<()> {
    match set.max_index() {
        Some(v) if v >= space.len() => Err(Error::Domain(format!(
            "vector index {v} is outside a carrier of size {}",
            space.len()
        ))),
        _ => Ok(()),
    }
}

/// First refutation of the subhyperspace property, scanning differences
/// before hyperoperation cells, each in ascending index order.
pub fn subhyperspace_witness(
    space: &HyperVectorSpace,
    set: &VectorSubset,
) -> Result<Option<SubspaceWitness>> {
    check_members(space, set)?;
    Ok(witness_unchecked(space, set))
}

pub(crate) fn witness_unchecked(
    space: &HyperVectorSpace,
    set: &VectorSubset,
) -> Option<SubspaceWitness> {
    if set.is_empty() {
        return Some(SubspaceWitness::Empty);
    }
    for y in set.iter() {
        for z in set.iter() {
            if !set.contains(space.sub(y, z)) {
                return Some(SubspaceWitness::Difference { y, z });
            }
        }
    }
    for b in space.field().elements() {
        for y in set.iter() {
            if let Some(element) = space.hyper(b, y).iter().find(|&t| !set.contains(t)) {
                return Some(SubspaceWitness::Hyper { b, y, element });
            }
        }
    }
    None
}

/// Non-empty, closed under `(y, z) -> y - z` and under `b o y` for every
/// scalar `b`.
pub fn is_subhyperspace(space: &HyperVectorSpace, set: &VectorSubset) -> Result<bool> {
    Ok(subhyperspace_witness(space, set)?.is_none())
}

/// The linear span: the smallest subhyperspace containing `seed`.
///
/// Computed as a worklist fixed point under sums, negation and every
/// `b o x`; on a finite carrier this reaches exactly the elements of the
/// finite sums of `a_i o s_i`.
pub fn span(space: &HyperVectorSpace, seed: &VectorSubset) -> Result<VectorSubset> {
    if seed.is_empty() {
        return Err(Error::Precondition("span of the empty set".into()));
    }
    check_members(space, seed)?;
    let mut closed = seed.clone();
    let mut frontier: Vec<usize> = seed.iter().collect();
    while let Some(x) = frontier.pop() {
        let mut found = Vec::new();
        found.push(space.neg(x));
        for b in space.field().elements() {
            found.extend(space.hyper(b, x).iter());
        }
        for y in closed.iter() {
            found.push(space.add(x, y));
        }
        for v in found {
            if closed.insert(v) {
                frontier.push(v);
            }
        }
    }
    Ok(closed)
}

/// Largest carrier for which the `2^n` subset scan is attempted.
pub const ENUMERATION_LIMIT: usize = 16;

/// All subhyperspaces, ordered by size and then lexicographically by their
/// ascending member indices.
pub fn enumerate_subhyperspaces(space: &HyperVectorSpace) -> Result<Vec<VectorSubset>> {
    let n = space.len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            what: "carrier size for subhyperspace enumeration",
            size: n as u128,
            limit: ENUMERATION_LIMIT as u128,
        });
    }
    let mut found: Vec<VectorSubset> = (1u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .collect::<VectorSubset>()
        })
        .filter(|set| witness_unchecked(space, set).is_none())
        .collect();
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(found)
}
