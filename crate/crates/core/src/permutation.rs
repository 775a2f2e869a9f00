//! Permutations of finite ordered index sets.
//!
//! A [`Permutation`] is stored as an explicit map from its domain to itself, never in
//! one-line notation, so that a permutation of the interval positions `{2, 3, 4}` of an
//! object cannot be confused with one of `{1, 2, 3}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    map: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermutationError {
    #[error("index {0} is not in the domain")]
    OutsideDomain(usize),
    #[error("index {0} appears more than once")]
    Repeated(usize),
    #[error("the map is not a bijection of its domain")]
    NotBijective,
}

impl Permutation {
    pub fn identity<I: IntoIterator<Item = usize>>(domain: I) -> Self {
        Permutation {
            map: domain.into_iter().map(|i| (i, i)).collect(),
        }
    }

    /// Builds a permutation from an explicit map, checking that it is a bijection of its
    /// key set.
    pub fn from_map(map: BTreeMap<usize, usize>) -> Result<Self, PermutationError> {
        let image: BTreeSet<usize> = map.values().copied().collect();
        if image.len() != map.len() || image.iter().any(|i| !map.contains_key(i)) {
            return Err(PermutationError::NotBijective);
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of `domain` from disjoint cycles. Elements of the domain not
    /// mentioned in any cycle are fixed.
    pub fn from_cycles<I, C>(domain: I, cycles: C) -> Result<Self, PermutationError>
    where
        I: IntoIterator<Item = usize>,
        C: IntoIterator,
        C::Item: AsRef<[usize]>,
    {
        let mut map: BTreeMap<usize, usize> = domain.into_iter().map(|i| (i, i)).collect();
        let mut seen = BTreeSet::new();
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (pos, &i) in cycle.iter().enumerate() {
                if !map.contains_key(&i) {
                    return Err(PermutationError::OutsideDomain(i));
                }
                if !seen.insert(i) {
                    return Err(PermutationError::Repeated(i));
                }
                map.insert(i, cycle[(pos + 1) % cycle.len()]);
            }
        }
        Ok(Permutation { map })
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.map.get(&i).copied()
    }

    pub fn as_map(&self) -> &BTreeMap<usize, usize> {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    /// Disjoint cycles including fixed points. Each cycle starts at its least element and
    /// cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = self.map[&start];
            while cur != start {
                seen.insert(cur);
                cycle.push(cur);
                cur = self.map[&cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of disjoint cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn inverse(&self) -> Self {
        Permutation {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// Transports the permutation along a bijection of index sets: the result maps
    /// `f(i)` to `f(self(i))`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        Permutation {
            map: self.map.iter().map(|(&a, &b)| (f(a), f(b))).collect(),
        }
    }

    /// Disjoint union of two permutations with disjoint domains.
    pub fn disjoint_union(&self, other: &Permutation) -> Self {
        debug_assert!(other.map.keys().all(|k| !self.map.contains_key(k)));
        let mut map = self.map.clone();
        map.extend(other.map.iter().map(|(&a, &b)| (a, b)));
        Permutation { map }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return f.write_str("id");
        }
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (k, i) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{i}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
