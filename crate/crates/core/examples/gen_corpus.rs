//! Writes random valid documents, for the round-trip corpus.
//!
//! ```text
//! cargo run --example gen_corpus -- DIR COUNT SEED
//! ```

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use occob::brane::BraneSet;
use occob::random::{self, Limits};
use occob::textio::{serialize, Document, NamedCobordism};

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().expect("DIR"));
    let count: usize = args.next().map_or(30, |s| s.parse().expect("COUNT"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("SEED"));
    let mut rng = StdRng::seed_from_u64(seed);
    let limits = Limits::default();
    std::fs::create_dir_all(&dir).unwrap();
    for k in 0..count {
        let branes = if rng.gen_bool(0.5) {
            BraneSet::single()
        } else {
            random::brane_set(&mut rng, 3)
        };
        let mut doc = Document::new(branes.clone());
        let objects = rng.gen_range(1..=3);
        for i in 0..objects {
            let name = format!("o{}", i + 1);
            doc.objects
                .push((name, random::object(&mut rng, &branes, &limits)));
        }
        for j in 0..rng.gen_range(1..=3) {
            let (s, t) = (rng.gen_range(0..objects), rng.gen_range(0..objects));
            let c = random::cobordism(&mut rng, &doc.objects[s].1, &doc.objects[t].1, &limits);
            doc.cobordisms.push(NamedCobordism {
                name: format!("C{}", j + 1),
                source: doc.objects[s].0.clone(),
                target: doc.objects[t].0.clone(),
                cobordism: random::shuffle(&mut rng, &c),
            });
        }
        let path = dir.join(format!("random_{:02}.occ", k + 1));
        std::fs::write(&path, serialize(&doc)).unwrap();
    }
}
