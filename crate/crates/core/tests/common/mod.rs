#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use occob::brane::BraneSet;
use occob::calculus::{self, CalculusError};
use occob::random::{self, Limits};
use occob::{Cobordism, GeneralObject};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn branes<R: Rng>(rng: &mut R) -> BraneSet {
    random::brane_set(rng, 2)
}

/// A chain of `n + 1` objects over one brane set.
pub fn objects<R: Rng>(rng: &mut R, n: usize, limits: &Limits) -> Vec<GeneralObject> {
    let b = branes(rng);
    (0..=n).map(|_| random::object(rng, &b, limits)).collect()
}

/// Composable chain `c[0]: x0 -> x1`, `c[1]: x1 -> x2`, ...
pub fn chain<R: Rng>(rng: &mut R, n: usize, limits: &Limits) -> Vec<Cobordism> {
    let xs = objects(rng, n, limits);
    xs.windows(2)
        .map(|w| random::cobordism(rng, &w[0], &w[1], limits))
        .collect()
}

/// Composition that may legitimately fail only by closing off a component.
pub fn compose_open(second: &Cobordism, first: &Cobordism) -> Option<Cobordism> {
    match calculus::compose(second, first) {
        Ok(c) => Some(c),
        Err(CalculusError::ClosedComponent { .. }) => None,
        Err(e) => panic!("unexpected composition failure: {e}"),
    }
}

pub fn iso(a: &Cobordism, b: &Cobordism) -> bool {
    occob::is_isomorphic(a, b).expect("same interface")
}
