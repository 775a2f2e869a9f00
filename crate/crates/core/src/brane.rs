//! D-brane labels and finite brane sets.

use std::fmt;

/// A boundary condition label. Branes are compared by identifier only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Brane(String);

impl Brane {
    pub fn new(id: impl Into<String>) -> Self {
        Brane(id.into())
    }

    /// The label used when only one brane is in play.
    pub fn star() -> Self {
        Brane("*".to_owned())
    }

    pub fn id(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Brane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Brane {
    fn from(s: &str) -> Self {
        Brane::new(s)
    }
}

/// A nonempty finite set of branes, stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraneSet(Vec<Brane>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("a brane set must contain at least one brane")]
pub struct EmptyBraneSet;

impl BraneSet {
    pub fn new<I, B>(branes: I) -> Result<Self, EmptyBraneSet>
    where
        I: IntoIterator<Item = B>,
        B: Into<Brane>,
    {
        let mut v: Vec<Brane> = branes.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(EmptyBraneSet);
        }
        Ok(BraneSet(v))
    }

    /// The one-element set `{*}`.
    pub fn single() -> Self {
        BraneSet(vec![Brane::star()])
    }

    pub fn is_single_star(&self) -> bool {
        self.0.len() == 1 && self.0[0] == Brane::star()
    }

    pub fn contains(&self, b: &Brane) -> bool {
        self.0.binary_search(b).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Brane> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Brane] {
        &self.0
    }
}

impl<'a> IntoIterator for &'a BraneSet {
    type Item = &'a Brane;
    type IntoIter = std::slice::Iter<'a, Brane>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for BraneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}
