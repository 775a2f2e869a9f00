//! Canonical forms, isomorphism testing, and enumeration of the isomorphism classes of
//! connected cobordisms to the circle.
//!
//! Two cobordisms with the same interface objects are isomorphic exactly when, component
//! by component, they have the same genus, the same closed and mixed boundary circles
//! (mixed circles up to rotation), and the same multiset of window labels. The canonical
//! form sorts all of that data so that isomorphism reduces to equality.

use std::collections::BTreeMap;

use crate::brane::{Brane, BraneSet};
use crate::calculus::{self, CalculusError};
use crate::object::GeneralObject;
use crate::permutation::Permutation;
use crate::surface::{BoundaryCircle, Cobordism, Component, InvariantSummary, MixedEntry};

/// Deterministic normal encoding of a cobordism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Cobordism);

impl CanonicalForm {
    pub fn cobordism(&self) -> &Cobordism {
        &self.0
    }

    pub fn into_cobordism(self) -> Cobordism {
        self.0
    }

    pub fn components(&self) -> &[Component] {
        &self.0.components
    }

    pub fn summary(&self) -> InvariantSummary {
        self.0.invariant_summary()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("isomorphism needs equal interfaces: {left_source} -> {left_target} vs {right_source} -> {right_target}")]
pub struct InterfaceMismatch {
    pub left_source: Box<GeneralObject>,
    pub left_target: Box<GeneralObject>,
    pub right_source: Box<GeneralObject>,
    pub right_target: Box<GeneralObject>,
}

/// Rotate a mixed cycle so that it starts at its least entry. Interval references sort
/// before arcs, so the result always starts with an interval.
pub fn rotate_min(cycle: &[MixedEntry]) -> Vec<MixedEntry> {
    let Some(start) = (0..cycle.len()).min_by(|&a, &b| {
        cycle[a..]
            .iter()
            .chain(&cycle[..a])
            .cmp(cycle[b..].iter().chain(&cycle[..b]))
    }) else {
        return Vec::new();
    };
    cycle[start..]
        .iter()
        .chain(&cycle[..start])
        .cloned()
        .collect()
}

fn canonical_component(comp: &Component) -> Component {
    let mut boundary: Vec<BoundaryCircle> = comp
        .boundary
        .iter()
        .map(|circle| match circle {
            BoundaryCircle::Mixed(cycle) => BoundaryCircle::Mixed(rotate_min(cycle)),
            other => other.clone(),
        })
        .collect();
    boundary.sort();
    Component::new(comp.genus, boundary)
}

pub fn canonicalize(c: &Cobordism) -> CanonicalForm {
    let mut components: Vec<Component> = c.components.iter().map(canonical_component).collect();
    components.sort();
    CanonicalForm(Cobordism::new(
        c.source.clone(),
        c.target.clone(),
        components,
    ))
}

/// Isomorphism rel the incoming and outgoing boundary. Windows may be permuted but keep
/// their labels. The interface objects must agree up to their boundary permutations.
pub fn is_isomorphic(a: &Cobordism, b: &Cobordism) -> Result<bool, InterfaceMismatch> {
    if !a.source.same_underlying(&b.source) || !a.target.same_underlying(&b.target) {
        return Err(InterfaceMismatch {
            left_source: Box::new(a.source.clone()),
            left_target: Box::new(a.target.clone()),
            right_source: Box::new(b.source.clone()),
            right_target: Box::new(b.target.clone()),
        });
    }
    Ok(canonicalize(a).components() == canonicalize(b).components())
}

/// Genus, window vector and boundary permutation of a connected cobordism to `(0)`.
pub fn connected_invariants(c: &Cobordism) -> Option<(u32, BTreeMap<Brane, usize>, Permutation)> {
    if c.components.len() != 1 {
        return None;
    }
    let sigma = c.boundary_permutation().ok()?;
    Some((c.components[0].genus, c.window_vector(), sigma))
}

/// Genus one self-cobordism of the circle without windows.
fn handle(branes: &BraneSet) -> Cobordism {
    let circle = GeneralObject::circle(branes.clone());
    Cobordism::new(
        circle.clone(),
        circle,
        vec![Component::new(
            1,
            vec![BoundaryCircle::InClosed(1), BoundaryCircle::OutClosed(1)],
        )],
    )
}

/// Annulus with one extra window labeled `b`.
fn window_annulus(branes: &BraneSet, b: &Brane) -> Cobordism {
    let circle = GeneralObject::circle(branes.clone());
    Cobordism::new(
        circle.clone(),
        circle,
        vec![Component::new(
            0,
            vec![
                BoundaryCircle::InClosed(1),
                BoundaryCircle::OutClosed(1),
                BoundaryCircle::Window(b.clone()),
            ],
        )],
    )
}

/// Connected representative from `obj` to `(0)` with the given genus and window counts.
/// Built from the realizer by stabilizing as far as possible, then adding handles and
/// single windows.
pub fn representative(
    obj: &GeneralObject,
    genus: u32,
    windows: &BTreeMap<Brane, usize>,
) -> Result<Cobordism, CalculusError> {
    let branes = obj.branes();
    let common = branes
        .iter()
        .map(|b| windows.get(b).copied().unwrap_or(0))
        .min()
        .unwrap_or(0)
        .min(genus as usize);
    let mut rep = calculus::stabilize_n(&calculus::realize(obj)?, common)?;
    for _ in common..genus as usize {
        rep = calculus::compose(&handle(branes), &rep)?;
    }
    for b in branes {
        let extra = windows.get(b).copied().unwrap_or(0) - common;
        let deco = window_annulus(branes, b);
        for _ in 0..extra {
            rep = calculus::compose(&deco, &rep)?;
        }
    }
    Ok(rep)
}

/// All window vectors with entries in `0..=max` over `branes`, lexicographic.
pub fn window_grid(branes: &BraneSet, max: usize) -> Vec<BTreeMap<Brane, usize>> {
    let mut grid = vec![BTreeMap::new()];
    for b in branes {
        grid = grid
            .into_iter()
            .flat_map(|w| {
                (0..=max).map(move |n| {
                    let mut w = w.clone();
                    w.insert(b.clone(), n);
                    w
                })
            })
            .collect();
    }
    grid
}

/// One canonical representative per `(g, w)` with `g <= max_genus` and every
/// `w_b <= max_windows`, sorted.
pub fn enumerate_classes(
    obj: &GeneralObject,
    max_genus: u32,
    max_windows: usize,
) -> Result<Vec<CanonicalForm>, CalculusError> {
    let grid = window_grid(obj.branes(), max_windows);
    let mut out = Vec::with_capacity((max_genus as usize + 1) * grid.len());
    for g in 0..=max_genus {
        for w in &grid {
            out.push(canonicalize(&representative(obj, g, w)?));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StrataRow {
    pub genus: u32,
    pub windows: BTreeMap<Brane, usize>,
    /// Number of boundary circles fixed pointwise (all but the windows).
    pub c_number: usize,
    pub in_b: bool,
}

/// Classification table of morphisms from `obj` to `(0)`, one row per class, ordered by
/// genus and then window vector.
pub fn strata_table(
    obj: &GeneralObject,
    max_genus: u32,
    max_windows: usize,
) -> Result<Vec<StrataRow>, CalculusError> {
    let mut rows: Vec<StrataRow> = enumerate_classes(obj, max_genus, max_windows)?
        .into_iter()
        .map(|form| {
            let c = form.cobordism();
            let comp = &c.components[0];
            StrataRow {
                genus: comp.genus,
                windows: c.window_vector(),
                c_number: comp.fixed_boundary_count(),
                in_b: c.in_b_subcategory(),
            }
        })
        .collect();
    rows.sort();
    Ok(rows)
}
