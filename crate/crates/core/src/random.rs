//! Random objects and cobordisms for property tests.
//!
//! Generated objects are brane-balanced (every brane occurs as often as a left endpoint
//! as it does as a right endpoint), which is exactly what is needed for a coherent
//! boundary permutation and for a cobordism between two such objects to exist.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::brane::{Brane, BraneSet};
use crate::object::{Entry, GeneralObject};
use crate::permutation::Permutation;
use crate::surface::{BoundaryCircle, Cobordism, Component, IntervalRef, MixedEntry};

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_circles: usize,
    pub max_intervals: usize,
    pub max_components: usize,
    pub max_genus: u32,
    pub max_windows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_circles: 2,
            max_intervals: 3,
            max_components: 4,
            max_genus: 3,
            max_windows: 2,
        }
    }
}

/// `{a}`, `{a, b}`, ... with between one and `max` elements.
pub fn brane_set<R: Rng>(rng: &mut R, max: usize) -> BraneSet {
    let n = rng.gen_range(1..=max.max(1));
    BraneSet::new((0..n).map(|i| Brane::new(char::from(b'a' + i as u8).to_string())))
        .expect("nonempty")
}

/// Random coherent permutation of the intervals: every interval's right brane equals
/// the left brane of its image.
pub fn coherent_sigma<R: Rng>(rng: &mut R, obj: &GeneralObject) -> Permutation {
    let mut by_left: BTreeMap<&Brane, Vec<usize>> = BTreeMap::new();
    for i in obj.interval_indices() {
        by_left
            .entry(obj.interval_at(i).unwrap().0)
            .or_default()
            .push(i);
    }
    for v in by_left.values_mut() {
        v.shuffle(rng);
    }
    let map = obj
        .interval_indices()
        .into_iter()
        .map(|i| {
            let right = obj.interval_at(i).unwrap().1;
            let j = by_left
                .get_mut(right)
                .and_then(Vec::pop)
                .expect("object is brane-balanced");
            (i, j)
        })
        .collect();
    Permutation::from_map(map).expect("matching is a bijection")
}

/// Brane-balanced object with a random coherent permutation.
pub fn object<R: Rng>(rng: &mut R, branes: &BraneSet, limits: &Limits) -> GeneralObject {
    let k = rng.gen_range(0..=limits.max_intervals);
    let mut intervals = Vec::with_capacity(k);
    // Concatenate closed walks over the brane set.
    let mut left = k;
    while left > 0 {
        let len = rng.gen_range(1..=left);
        let walk: Vec<&Brane> = (0..len)
            .map(|_| branes.as_slice().choose(rng).unwrap())
            .collect();
        for t in 0..len {
            intervals.push(Entry::Interval {
                left: walk[t].clone(),
                right: walk[(t + 1) % len].clone(),
            });
        }
        left -= len;
    }
    let circles = rng.gen_range(0..=limits.max_circles);
    let mut entries = intervals;
    entries.extend(std::iter::repeat_n(Entry::Circle, circles));
    entries.shuffle(rng);
    let plain = GeneralObject::with_identity(branes.clone(), entries).expect("labels from set");
    let sigma = coherent_sigma(rng, &plain);
    plain.with_sigma(sigma).expect("same domain")
}

/// Random valid cobordism between two brane-balanced objects, with default interval
/// orientations.
pub fn cobordism<R: Rng>(
    rng: &mut R,
    source: &GeneralObject,
    target: &GeneralObject,
    limits: &Limits,
) -> Cobordism {
    let branes = source.branes();
    // (ref, entry brane, exit brane)
    let mut refs: Vec<(IntervalRef, Brane, Brane)> = Vec::new();
    for i in source.interval_indices() {
        let (l, r) = source.interval_at(i).unwrap();
        refs.push((IntervalRef::incoming(i), l.clone(), r.clone()));
    }
    for i in target.interval_indices() {
        let (l, r) = target.interval_at(i).unwrap();
        refs.push((IntervalRef::outgoing(i), r.clone(), l.clone()));
    }
    let mut entering: BTreeMap<&Brane, Vec<usize>> = BTreeMap::new();
    for (k, (_, entry, _)) in refs.iter().enumerate() {
        entering.entry(entry).or_default().push(k);
    }
    for v in entering.values_mut() {
        v.shuffle(rng);
    }
    let succ: Vec<usize> = refs
        .iter()
        .map(|(_, _, exit)| {
            entering
                .get_mut(exit)
                .and_then(Vec::pop)
                .expect("objects are brane-balanced")
        })
        .collect();

    let mut circles: Vec<BoundaryCircle> = Vec::new();
    let mut seen = vec![false; refs.len()];
    for start in 0..refs.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cycle.push(MixedEntry::Interval(refs[cur].0));
            cycle.push(MixedEntry::Arc(refs[cur].2.clone()));
            cur = succ[cur];
        }
        circles.push(BoundaryCircle::Mixed(cycle));
    }
    circles.extend(
        source
            .circle_indices()
            .into_iter()
            .map(BoundaryCircle::InClosed),
    );
    circles.extend(
        target
            .circle_indices()
            .into_iter()
            .map(BoundaryCircle::OutClosed),
    );
    let windows = rng.gen_range(0..=limits.max_windows);
    for _ in 0..windows {
        circles.push(BoundaryCircle::Window(
            branes.as_slice().choose(rng).unwrap().clone(),
        ));
    }

    let n = rng.gen_range(1..=limits.max_components.max(1));
    let mut buckets: Vec<Vec<BoundaryCircle>> = vec![Vec::new(); n];
    for circle in circles {
        buckets[rng.gen_range(0..n)].push(circle);
    }
    let components = buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| Component::new(rng.gen_range(0..=limits.max_genus), b))
        .collect();
    Cobordism::new(source.clone(), target.clone(), components)
}

/// Like [`cobordism`], but every component touches the outgoing boundary whenever the
/// target is nonempty.
pub fn b_cobordism<R: Rng>(
    rng: &mut R,
    source: &GeneralObject,
    target: &GeneralObject,
    limits: &Limits,
) -> Cobordism {
    let mut c = cobordism(rng, source, target, limits);
    let (good, bad): (Vec<Component>, Vec<Component>) =
        c.components.drain(..).partition(Component::has_outgoing);
    c.components = good;
    if c.components.is_empty() {
        c.components = bad;
        return c;
    }
    for comp in bad {
        let k = rng.gen_range(0..c.components.len());
        c.components[k].genus += comp.genus;
        c.components[k].boundary.extend(comp.boundary);
    }
    c
}

/// Reorders components and boundary circles and rotates every mixed cycle. The result
/// is isomorphic to the input.
pub fn shuffle<R: Rng>(rng: &mut R, c: &Cobordism) -> Cobordism {
    let mut out = c.clone();
    out.components.shuffle(rng);
    for comp in &mut out.components {
        comp.boundary.shuffle(rng);
        for circle in &mut comp.boundary {
            if let BoundaryCircle::Mixed(cycle) = circle {
                let k = rng.gen_range(0..cycle.len());
                cycle.rotate_left(k);
            }
        }
    }
    out
}

/// Whether every interval reference has the default traversal for its side.
pub fn default_oriented(c: &Cobordism) -> bool {
    c.components
        .iter()
        .flat_map(|comp| &comp.boundary)
        .all(|circle| match circle {
            BoundaryCircle::Mixed(cycle) => cycle
                .iter()
                .filter_map(MixedEntry::as_interval)
                .all(IntervalRef::has_default_orientation),
            _ => true,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::canonicalize;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_data_is_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        let limits = Limits::default();
        for _ in 0..300 {
            let branes = brane_set(&mut rng, 3);
            let a = object(&mut rng, &branes, &limits);
            let b = object(&mut rng, &branes, &limits);
            assert!(crate::calculus::realize(&a).is_ok());
            let c = cobordism(&mut rng, &a, &b, &limits);
            assert!(c.is_valid(), "{:?}\n{c:?}", c.validate());
            assert!(default_oriented(&c));
            assert!(c.components.len() <= limits.max_components);
            let s = shuffle(&mut rng, &c);
            assert!(s.is_valid());
            assert_eq!(canonicalize(&s), canonicalize(&c));
        }
    }

    #[test]
    fn b_generator_respects_condition() {
        let mut rng = StdRng::seed_from_u64(11);
        let limits = Limits::default();
        for _ in 0..200 {
            let branes = brane_set(&mut rng, 2);
            let a = object(&mut rng, &branes, &limits);
            let mut b = object(&mut rng, &branes, &limits);
            if b.is_empty() {
                b = GeneralObject::circle(branes.clone());
            }
            let c = b_cobordism(&mut rng, &a, &b, &limits);
            assert!(c.is_valid());
            assert!(c.in_b_subcategory());
        }
    }
}
