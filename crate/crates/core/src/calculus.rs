//! Categorical structure on cobordisms: identities, composition by gluing, tensor
//! product, symmetry, realizers of boundary permutations, pullback, and stabilization.

use std::collections::BTreeMap;

use crate::brane::{Brane, BraneSet};
use crate::object::{Entry, GeneralObject, ObjectError};
use crate::permutation::Permutation;
use crate::surface::{
    genus_from_euler, BoundaryCircle, Cobordism, Component, IntervalRef, MixedEntry, Side,
    SurfaceError,
};
use crate::union_find::DisjointSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("cannot compose: first ends at {first_target} but second starts at {second_source}")]
    InterfaceMismatch {
        first_target: Box<GeneralObject>,
        second_source: Box<GeneralObject>,
    },
    #[error("brane sets differ: {0} vs {1}")]
    BraneSetMismatch(BraneSet, BraneSet),
    #[error("interval {index} of the middle object is traversed in the same direction on both sides of the gluing")]
    OrientationClash { index: usize },
    #[error("gluing closes up a component of genus {genus} with no boundary")]
    ClosedComponent { genus: u32 },
    #[error("cycle {cycle:?} cannot close up: interval {from} ends on brane {right}, interval {to} starts on brane {left}")]
    Incoherent {
        cycle: Vec<usize>,
        from: usize,
        right: Brane,
        to: usize,
        left: Brane,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Object(#[from] ObjectError),
}

/// The cylinder over `obj`: an annulus per circle and a square per interval.
pub fn identity(obj: &GeneralObject) -> Cobordism {
    let components = obj
        .entries()
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let i = k + 1;
            match e {
                Entry::Circle => Component::new(
                    0,
                    vec![BoundaryCircle::InClosed(i), BoundaryCircle::OutClosed(i)],
                ),
                Entry::Interval { left, right } => {
                    Component::new(0, vec![strip_cycle(i, i, left, right)])
                }
            }
        })
        .collect();
    Cobordism::new(obj.clone(), obj.clone(), components)
}

/// Square from incoming interval `from` to outgoing interval `to` with the given
/// endpoint branes, in stored orientation.
fn strip_cycle(from: usize, to: usize, left: &Brane, right: &Brane) -> BoundaryCircle {
    BoundaryCircle::Mixed(vec![
        MixedEntry::outgoing(to),
        MixedEntry::Arc(left.clone()),
        MixedEntry::incoming(from),
        MixedEntry::Arc(right.clone()),
    ])
}

/// `second ∘ first`: glue the target of `first` to the source of `second`.
///
/// The two cobordisms must be valid and the interface objects equal, permutations
/// included.
pub fn compose(second: &Cobordism, first: &Cobordism) -> Result<Cobordism, CalculusError> {
    if first.target != second.source {
        return Err(CalculusError::InterfaceMismatch {
            first_target: Box::new(first.target.clone()),
            second_source: Box::new(second.source.clone()),
        });
    }
    glue(second, first)
}

/// One interval occurrence of a mixed circle of either operand, with the arc that
/// follows it.
struct Node {
    iref: IntervalRef,
    in_first: bool,
    component: usize,
    succ: usize,
    arc: Brane,
}

impl Node {
    fn glued(&self) -> bool {
        match self.iref.side {
            Side::Outgoing => self.in_first,
            Side::Incoming => !self.in_first,
        }
    }
}

/// Gluing along the middle object, comparing entries and branes only. The boundary
/// permutations stored on the interface objects are ignored.
pub(crate) fn glue(second: &Cobordism, first: &Cobordism) -> Result<Cobordism, CalculusError> {
    if !first.target.same_underlying(&second.source) {
        return Err(CalculusError::InterfaceMismatch {
            first_target: Box::new(first.target.clone()),
            second_source: Box::new(second.source.clone()),
        });
    }
    debug_assert!(first.is_valid(), "{:?}", first.validate());
    debug_assert!(second.is_valid(), "{:?}", second.validate());

    let middle = &first.target;
    let n_first = first.components.len();
    let n_comp = n_first + second.components.len();
    let all_components = || {
        first
            .components
            .iter()
            .map(|c| (true, c))
            .chain(second.components.iter().map(|c| (false, c)))
            .enumerate()
    };

    let mut nodes: Vec<Node> = Vec::new();
    let mut closed_first = BTreeMap::new();
    let mut closed_second = BTreeMap::new();
    for (ci, (in_first, comp)) in all_components() {
        for circle in &comp.boundary {
            match circle {
                BoundaryCircle::OutClosed(i) if in_first => {
                    closed_first.insert(*i, ci);
                }
                BoundaryCircle::InClosed(i) if !in_first => {
                    closed_second.insert(*i, ci);
                }
                BoundaryCircle::Mixed(cycle) => {
                    let base = nodes.len();
                    let refs: Vec<(IntervalRef, Brane)> = cycle
                        .iter()
                        .enumerate()
                        .filter_map(|(p, e)| {
                            let r = e.as_interval()?;
                            let MixedEntry::Arc(b) = &cycle[(p + 1) % cycle.len()] else {
                                unreachable!("mixed cycles alternate");
                            };
                            Some((*r, b.clone()))
                        })
                        .collect();
                    let len = refs.len();
                    for (k, (iref, arc)) in refs.into_iter().enumerate() {
                        nodes.push(Node {
                            iref,
                            in_first,
                            component: ci,
                            succ: base + (k + 1) % len,
                            arc,
                        });
                    }
                }
                _ => {}
            }
        }
    }

    let mut out_of_first = BTreeMap::new();
    let mut into_second = BTreeMap::new();
    for (id, node) in nodes.iter().enumerate() {
        if node.glued() {
            let slot = if node.in_first {
                &mut out_of_first
            } else {
                &mut into_second
            };
            slot.insert(node.iref.index, id);
        }
    }
    let mut partner = vec![usize::MAX; nodes.len()];
    let mut merged = DisjointSet::new(n_comp);
    let mut glued_intervals = vec![0i64; n_comp];
    for i in middle.interval_indices() {
        let (a, b) = (out_of_first[&i], into_second[&i]);
        if nodes[a].iref.reversed == nodes[b].iref.reversed {
            return Err(CalculusError::OrientationClash { index: i });
        }
        partner[a] = b;
        partner[b] = a;
        merged.union(nodes[a].component, nodes[b].component);
        glued_intervals[nodes[a].component] += 1;
    }
    for i in middle.circle_indices() {
        merged.union(closed_first[&i], closed_second[&i]);
    }

    let mut circles: Vec<Vec<BoundaryCircle>> = vec![Vec::new(); n_comp];
    for (ci, (in_first, comp)) in all_components() {
        for circle in &comp.boundary {
            let keep = match circle {
                BoundaryCircle::InClosed(_) => in_first,
                BoundaryCircle::OutClosed(_) => !in_first,
                BoundaryCircle::Window(_) => true,
                BoundaryCircle::Mixed(_) => false,
            };
            if keep {
                let root = merged.find(ci);
                circles[root].push(circle.clone());
            }
        }
    }

    // `visited[n]`: the arc following node `n` has been placed on a circle.
    // Surviving mixed circles: walk from each unvisited surviving interval, jumping
    // across glued intervals to the arc following the partner.
    let mut visited = vec![false; nodes.len()];
    for start in 0..nodes.len() {
        if visited[start] || nodes[start].glued() {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            cycle.push(MixedEntry::Interval(nodes[cur].iref));
            let brane = &nodes[cur].arc;
            let mut next = nodes[cur].succ;
            while nodes[next].glued() {
                let p = partner[next];
                visited[p] = true;
                assert_eq!(
                    &nodes[p].arc, brane,
                    "arc labels agree across a glued interval"
                );
                next = nodes[p].succ;
            }
            cycle.push(MixedEntry::Arc(brane.clone()));
            if next == start {
                break;
            }
            cur = next;
        }
        let root = merged.find(nodes[start].component);
        circles[root].push(BoundaryCircle::Mixed(cycle));
    }
    // Loops made only of glued intervals close up into windows.
    for start in 0..nodes.len() {
        if visited[start] {
            continue;
        }
        let brane = nodes[start].arc.clone();
        let mut cur = start;
        loop {
            visited[cur] = true;
            assert_eq!(nodes[cur].arc, brane, "window arcs share one label");
            let next = nodes[cur].succ;
            debug_assert!(nodes[next].glued());
            cur = partner[next];
            if cur == start {
                break;
            }
        }
        let root = merged.find(nodes[start].component);
        circles[root].push(BoundaryCircle::Window(brane));
    }

    let mut chi = vec![0i64; n_comp];
    for (ci, (_, comp)) in all_components() {
        let root = merged.find(ci);
        chi[root] += comp.euler_char() - glued_intervals[ci];
    }
    let mut components = Vec::new();
    for ci in 0..n_comp {
        if merged.find(ci) != ci {
            continue;
        }
        let boundary = std::mem::take(&mut circles[ci]);
        let genus = genus_from_euler(chi[ci], boundary.len())
            .expect("gluing preserves the parity of 2 - chi - b");
        if boundary.is_empty() {
            return Err(CalculusError::ClosedComponent { genus });
        }
        components.push(Component::new(genus, boundary));
    }
    Ok(Cobordism::new(
        first.source.clone(),
        second.target.clone(),
        components,
    ))
}

/// Disjoint union, with `b`'s object positions shifted past `a`'s.
pub fn tensor(a: &Cobordism, b: &Cobordism) -> Result<Cobordism, CalculusError> {
    let source = a.source.tensor(&b.source)?;
    let target = a.target.tensor(&b.target)?;
    let (ds, dt) = (a.source.len(), a.target.len());
    let mut components = a.components.clone();
    components.extend(
        b.components
            .iter()
            .map(|c| reindex(c, |i| i + ds, |i| i + dt)),
    );
    Ok(Cobordism::new(source, target, components))
}

fn reindex(
    comp: &Component,
    src: impl Fn(usize) -> usize,
    tgt: impl Fn(usize) -> usize,
) -> Component {
    let boundary = comp
        .boundary
        .iter()
        .map(|circle| match circle {
            BoundaryCircle::InClosed(i) => BoundaryCircle::InClosed(src(*i)),
            BoundaryCircle::OutClosed(i) => BoundaryCircle::OutClosed(tgt(*i)),
            BoundaryCircle::Window(b) => BoundaryCircle::Window(b.clone()),
            BoundaryCircle::Mixed(cycle) => BoundaryCircle::Mixed(
                cycle
                    .iter()
                    .map(|e| match e {
                        MixedEntry::Interval(r) => {
                            let index = match r.side {
                                Side::Incoming => src(r.index),
                                Side::Outgoing => tgt(r.index),
                            };
                            MixedEntry::Interval(IntervalRef { index, ..*r })
                        }
                        arc => arc.clone(),
                    })
                    .collect(),
            ),
        })
        .collect();
    Component::new(comp.genus, boundary)
}

/// The symmetry `a ⊗ b -> b ⊗ a`: identity cylinders with the blocks exchanged.
pub fn swap(a: &GeneralObject, b: &GeneralObject) -> Result<Cobordism, CalculusError> {
    let source = a.tensor(b)?;
    let target = b.tensor(a)?;
    let (la, lb) = (a.len(), b.len());
    let moved = |i: usize| if i <= la { i + lb } else { i - la };
    let components = identity(&source)
        .components
        .iter()
        .map(|c| reindex(c, |i| i, moved))
        .collect();
    Ok(Cobordism::new(source, target, components))
}

/// The minimal connected cobordism from `obj` to `(0)` whose boundary permutation is
/// `obj.sigma()`: genus zero, no windows.
pub fn realize(obj: &GeneralObject) -> Result<Cobordism, CalculusError> {
    let mut boundary: Vec<BoundaryCircle> = obj
        .circle_indices()
        .into_iter()
        .map(BoundaryCircle::InClosed)
        .collect();
    for cycle in obj.sigma().cycles() {
        let mut mixed = Vec::with_capacity(2 * cycle.len());
        for (k, &i) in cycle.iter().enumerate() {
            let j = cycle[(k + 1) % cycle.len()];
            let (_, right) = obj.interval_at(i).expect("sigma permutes intervals");
            let (left, _) = obj.interval_at(j).expect("sigma permutes intervals");
            if right != left {
                return Err(CalculusError::Incoherent {
                    cycle: cycle.clone(),
                    from: i,
                    right: right.clone(),
                    to: j,
                    left: left.clone(),
                });
            }
            mixed.push(MixedEntry::incoming(i));
            mixed.push(MixedEntry::Arc(right.clone()));
        }
        boundary.push(BoundaryCircle::Mixed(mixed));
    }
    boundary.push(BoundaryCircle::OutClosed(1));
    Ok(Cobordism::new(
        obj.clone(),
        GeneralObject::circle(obj.branes().clone()),
        vec![Component::new(0, boundary)],
    ))
}

/// Boundary permutation on the source induced by gluing a realizer of `tau` onto the
/// target of `c`.
pub fn pullback(c: &Cobordism, tau: &Permutation) -> Result<Permutation, CalculusError> {
    let realizer = realize(&c.target.with_sigma(tau.clone())?)?;
    pullback_through(c, &realizer)
}

/// Pullback computed with an explicit realizer: any cobordism from the target of `c` to
/// `(0)`.
pub fn pullback_through(c: &Cobordism, realizer: &Cobordism) -> Result<Permutation, CalculusError> {
    let glued = glue(realizer, c)?;
    Ok(glued.boundary_permutation()?)
}

/// Whether `c` is a morphism from `(source, sigma)` to `(target, tau)`, i.e. whether
/// pulling `tau` back along `c` gives `sigma`. Only the permutations of `source` and
/// `target` are consulted beyond the interface check.
pub fn is_morphism(
    c: &Cobordism,
    source: &GeneralObject,
    target: &GeneralObject,
) -> Result<bool, CalculusError> {
    for (have, want) in [(&c.source, source), (&c.target, target)] {
        if !have.same_underlying(want) {
            return Err(CalculusError::InterfaceMismatch {
                first_target: Box::new(have.clone()),
                second_source: Box::new(want.clone()),
            });
        }
    }
    Ok(pullback(c, target.sigma())? == *source.sigma())
}

/// Genus one self-cobordism of the circle with one window per brane.
pub fn make_t(branes: &BraneSet) -> Cobordism {
    let circle = GeneralObject::circle(branes.clone());
    let mut boundary = vec![BoundaryCircle::InClosed(1), BoundaryCircle::OutClosed(1)];
    boundary.extend(branes.iter().cloned().map(BoundaryCircle::Window));
    Cobordism::new(circle.clone(), circle, vec![Component::new(1, boundary)])
}

/// Glue `make_t` onto the outgoing circle of a cobordism to `(0)`.
pub fn stabilize(c: &Cobordism) -> Result<Cobordism, CalculusError> {
    if c.target.entries() != [Entry::Circle] {
        return Err(SurfaceError::TargetNotCircle(c.target.clone()).into());
    }
    glue(&make_t(c.source.branes()), c)
}

pub fn stabilize_n(c: &Cobordism, times: usize) -> Result<Cobordism, CalculusError> {
    let mut out = c.clone();
    for _ in 0..times {
        out = stabilize(&out)?;
    }
    Ok(out)
}
