mod common;

use proptest::prelude::*;

use occob::calculus::{
    self, identity, pullback, pullback_through, realize, stabilize_n, swap, tensor,
};
use occob::random::{self, Limits};
use occob::surface::Cobordism;
use occob::{canonicalize, GeneralObject};

use common::{chain, compose_open, iso, objects, rng};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn compose_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = chain(&mut r, 3, &Limits::default());
        let left = compose_open(&c[2], &c[1]).and_then(|x| compose_open(&x, &c[0]));
        let right = compose_open(&c[1], &c[0]).and_then(|x| compose_open(&c[2], &x));
        match (left, right) {
            (Some(l), Some(r)) => prop_assert!(iso(&l, &r)),
            (None, None) => {}
            (l, r) => prop_assert!(false, "only one bracketing closed off: {l:?} / {r:?}"),
        }
    }

    #[test]
    fn identities_are_units(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = &chain(&mut r, 1, &Limits::default())[0];
        let left = calculus::compose(&identity(&f.target), f).unwrap();
        let right = calculus::compose(f, &identity(&f.source)).unwrap();
        prop_assert!(iso(&left, f));
        prop_assert!(iso(&right, f));
    }

    #[test]
    fn interchange(seed in any::<u64>()) {
        let mut r = rng(seed);
        let limits = Limits { max_intervals: 2, ..Limits::default() };
        let xs = objects(&mut r, 5, &limits);
        let b = random::cobordism(&mut r, &xs[0], &xs[1], &limits);
        let a = random::cobordism(&mut r, &xs[1], &xs[2], &limits);
        let d = random::cobordism(&mut r, &xs[3], &xs[4], &limits);
        let c = random::cobordism(&mut r, &xs[4], &xs[5], &limits);
        let (Some(ab), Some(cd)) = (compose_open(&a, &b), compose_open(&c, &d)) else {
            return Ok(());
        };
        let lhs = tensor(&ab, &cd).unwrap();
        let rhs = compose_open(&tensor(&a, &c).unwrap(), &tensor(&b, &d).unwrap()).unwrap();
        prop_assert!(iso(&lhs, &rhs));
    }

    #[test]
    fn tensor_units_and_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = &chain(&mut r, 1, &Limits::default())[0];
        let e = GeneralObject::empty(f.source.branes().clone());
        let unit = Cobordism::new(e.clone(), e, Vec::new());
        prop_assert_eq!(&tensor(&unit, f).unwrap(), f);
        prop_assert_eq!(&tensor(f, &unit).unwrap(), f);
        let (x, y) = (&f.source, &f.target);
        prop_assert!(iso(
            &tensor(&identity(x), &identity(y)).unwrap(),
            &identity(&x.tensor(y).unwrap())
        ));
    }

    #[test]
    fn swap_is_involutive_and_natural(seed in any::<u64>()) {
        let mut r = rng(seed);
        let limits = Limits { max_intervals: 2, ..Limits::default() };
        let xs = objects(&mut r, 3, &limits);
        let (n1, m1, n2, m2) = (&xs[0], &xs[1], &xs[2], &xs[3]);
        let twice = calculus::compose(&swap(n2, n1).unwrap(), &swap(n1, n2).unwrap()).unwrap();
        prop_assert!(iso(&twice, &identity(&n1.tensor(n2).unwrap())));

        let s1 = random::cobordism(&mut r, n1, m1, &limits);
        let s2 = random::cobordism(&mut r, n2, m2, &limits);
        let lhs = compose_open(&swap(m1, m2).unwrap(), &tensor(&s1, &s2).unwrap()).unwrap();
        let rhs = compose_open(&tensor(&s2, &s1).unwrap(), &swap(n1, n2).unwrap()).unwrap();
        prop_assert!(iso(&lhs, &rhs));
    }

    #[test]
    fn euler_characteristic_is_conserved(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = chain(&mut r, 2, &Limits::default());
        if let Some(g) = compose_open(&c[1], &c[0]) {
            prop_assert!(g.is_valid());
            let middle = c[0].target.alpha() as i64;
            prop_assert_eq!(g.euler_total(), c[0].euler_total() + c[1].euler_total() - middle);
        }
    }

    #[test]
    fn pullback_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = chain(&mut r, 2, &Limits::default());
        let tau = random::coherent_sigma(&mut r, &c[1].target);
        if let Some(g) = compose_open(&c[1], &c[0]) {
            let direct = pullback(&g, &tau).unwrap();
            let nested = pullback(&c[0], &pullback(&c[1], &tau).unwrap()).unwrap();
            prop_assert_eq!(direct, nested);
        }
    }

    #[test]
    fn pullback_ignores_realizer(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let f = &chain(&mut r, 1, &Limits::default())[0];
        let tau = random::coherent_sigma(&mut r, &f.target);
        let fat = stabilize_n(&realize(&f.target.with_sigma(tau.clone()).unwrap()).unwrap(), k).unwrap();
        prop_assert_eq!(pullback(f, &tau).unwrap(), pullback_through(f, &fat).unwrap());
        let sigma = random::coherent_sigma(&mut r, &f.source);
        prop_assert_eq!(pullback(&identity(&f.source), &sigma).unwrap(), sigma);
    }

    #[test]
    fn b_subcategory_is_closed(seed in any::<u64>()) {
        let mut r = rng(seed);
        let limits = Limits::default();
        let mut xs = objects(&mut r, 2, &limits);
        for x in xs.iter_mut().skip(1) {
            if x.is_empty() {
                *x = GeneralObject::circle(x.branes().clone());
            }
        }
        let f = random::b_cobordism(&mut r, &xs[0], &xs[1], &limits);
        let s = random::b_cobordism(&mut r, &xs[1], &xs[2], &limits);
        prop_assert!(f.in_b_subcategory() && s.in_b_subcategory());
        if let Some(g) = compose_open(&s, &f) {
            prop_assert!(g.in_b_subcategory());
        }
        prop_assert!(tensor(&f, &s).unwrap().in_b_subcategory());
    }

    #[test]
    fn canonical_form_ignores_list_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = &chain(&mut r, 1, &Limits::default())[0];
        let s = random::shuffle(&mut r, c);
        prop_assert_eq!(canonicalize(&s), canonicalize(c));
        prop_assert_eq!(canonicalize(canonicalize(c).cobordism()), canonicalize(c));
        prop_assert!(iso(c, &s));
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let mut r = rng(5);
    let limits = Limits::default();
    for _ in 0..100 {
        let xs = objects(&mut r, 1, &limits);
        let cs: Vec<Cobordism> = (0..4)
            .map(|_| random::cobordism(&mut r, &xs[0], &xs[1], &limits))
            .collect();
        for a in &cs {
            assert!(iso(a, a));
            for b in &cs {
                assert_eq!(iso(a, b), iso(b, a));
                for c in &cs {
                    if iso(a, b) && iso(b, c) {
                        assert!(iso(a, c));
                    }
                }
            }
        }
    }
}
