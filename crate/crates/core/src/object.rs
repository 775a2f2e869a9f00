//! Objects: ordered sequences of circles and brane-labeled intervals, together with an
//! open boundary permutation of the interval positions.

use std::fmt;

use crate::brane::{Brane, BraneSet};
use crate::permutation::{Permutation, PermutationError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Circle,
    Interval { left: Brane, right: Brane },
}

impl Entry {
    pub fn interval(left: impl Into<Brane>, right: impl Into<Brane>) -> Self {
        Entry::Interval {
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, Entry::Circle)
    }

    pub fn endpoints(&self) -> Option<(&Brane, &Brane)> {
        match self {
            Entry::Circle => None,
            Entry::Interval { left, right } => Some((left, right)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ObjectError {
    #[error("brane {brane} at position {position} is not in the brane set {set}")]
    UnknownBrane {
        position: usize,
        brane: Brane,
        set: BraneSet,
    },
    #[error("sigma must permute exactly the interval positions {expected:?}, got {found:?}")]
    SigmaDomain {
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("brane sets differ: {0} vs {1}")]
    BraneSetMismatch(BraneSet, BraneSet),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
}

/// A general object `(n, beta, sigma)`. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneralObject {
    branes: BraneSet,
    entries: Vec<Entry>,
    sigma: Permutation,
}

impl GeneralObject {
    pub fn new(
        branes: BraneSet,
        entries: Vec<Entry>,
        sigma: Permutation,
    ) -> Result<Self, ObjectError> {
        for (i, e) in entries.iter().enumerate() {
            if let Some((l, r)) = e.endpoints() {
                for b in [l, r] {
                    if !branes.contains(b) {
                        return Err(ObjectError::UnknownBrane {
                            position: i + 1,
                            brane: b.clone(),
                            set: branes.clone(),
                        });
                    }
                }
            }
        }
        let expected = interval_positions(&entries);
        let found: Vec<usize> = sigma.domain().collect();
        if expected != found {
            return Err(ObjectError::SigmaDomain { expected, found });
        }
        Ok(GeneralObject {
            branes,
            entries,
            sigma,
        })
    }

    /// Object with the identity permutation on its intervals.
    pub fn with_identity(branes: BraneSet, entries: Vec<Entry>) -> Result<Self, ObjectError> {
        let sigma = Permutation::identity(interval_positions(&entries));
        Self::new(branes, entries, sigma)
    }

    /// Object whose interval permutation is given by disjoint cycles; unlisted intervals
    /// are fixed.
    pub fn with_cycles<C>(
        branes: BraneSet,
        entries: Vec<Entry>,
        cycles: C,
    ) -> Result<Self, ObjectError>
    where
        C: IntoIterator,
        C::Item: AsRef<[usize]>,
    {
        let sigma = Permutation::from_cycles(interval_positions(&entries), cycles)?;
        Self::new(branes, entries, sigma)
    }

    /// Single-brane object from a 0/1 pattern (0 = circle, 1 = interval), with the given
    /// cycles on the interval positions.
    pub fn from_pattern<C>(pattern: &[u8], cycles: C) -> Result<Self, ObjectError>
    where
        C: IntoIterator,
        C::Item: AsRef<[usize]>,
    {
        let entries = pattern
            .iter()
            .map(|&p| {
                if p == 0 {
                    Entry::Circle
                } else {
                    Entry::interval(Brane::star(), Brane::star())
                }
            })
            .collect();
        Self::with_cycles(BraneSet::single(), entries, cycles)
    }

    pub fn empty(branes: BraneSet) -> Self {
        GeneralObject {
            branes,
            entries: Vec::new(),
            sigma: Permutation::default(),
        }
    }

    /// The object `(0)`: a single circle.
    pub fn circle(branes: BraneSet) -> Self {
        GeneralObject {
            branes,
            entries: vec![Entry::Circle],
            sigma: Permutation::default(),
        }
    }

    pub fn branes(&self) -> &BraneSet {
        &self.branes
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry at 1-based position `i`.
    pub fn entry(&self, i: usize) -> Option<&Entry> {
        i.checked_sub(1).and_then(|k| self.entries.get(k))
    }

    pub fn is_circle_at(&self, i: usize) -> bool {
        matches!(self.entry(i), Some(Entry::Circle))
    }

    pub fn interval_at(&self, i: usize) -> Option<(&Brane, &Brane)> {
        self.entry(i).and_then(Entry::endpoints)
    }

    /// Positions of the interval entries, increasing.
    pub fn interval_indices(&self) -> Vec<usize> {
        interval_positions(&self.entries)
    }

    pub fn circle_indices(&self) -> Vec<usize> {
        (1..=self.entries.len())
            .filter(|&i| self.is_circle_at(i))
            .collect()
    }

    /// Number of intervals.
    pub fn alpha(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_circle()).count()
    }

    pub fn circle_count(&self) -> usize {
        self.entries.len() - self.alpha()
    }

    /// Number of circles plus number of cycles of sigma plus one.
    pub fn c_number(&self) -> usize {
        self.circle_count() + self.sigma.cycle_count() + 1
    }

    /// Same entries with a different permutation of the intervals.
    pub fn with_sigma(&self, sigma: Permutation) -> Result<Self, ObjectError> {
        Self::new(self.branes.clone(), self.entries.clone(), sigma)
    }

    /// Equal entries and branes; the permutations may differ.
    pub fn same_underlying(&self, other: &GeneralObject) -> bool {
        self.branes == other.branes && self.entries == other.entries
    }

    /// Juxtaposition. Indices of `other` are shifted by `self.len()`.
    pub fn tensor(&self, other: &GeneralObject) -> Result<Self, ObjectError> {
        if self.branes != other.branes {
            return Err(ObjectError::BraneSetMismatch(
                self.branes.clone(),
                other.branes.clone(),
            ));
        }
        let shift = self.len();
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        let sigma = self
            .sigma
            .disjoint_union(&other.sigma.relabel(|i| i + shift));
        Ok(GeneralObject {
            branes: self.branes.clone(),
            entries,
            sigma,
        })
    }
}

fn interval_positions(entries: &[Entry]) -> Vec<usize> {
    entries
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_circle())
        .map(|(i, _)| i + 1)
        .collect()
}

impl fmt::Display for GeneralObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match e {
                Entry::Circle => f.write_str("O")?,
                Entry::Interval { left, right } => write!(f, "I({left},{right})")?,
            }
        }
        write!(f, "] sigma {}", self.sigma)
    }
}
