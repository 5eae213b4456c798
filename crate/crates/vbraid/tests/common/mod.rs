//! Shared helpers for the integration suites.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;

use vbraid::gauss::{EndpointRef, GaussData};
use vbraid::word::{BraidWord, Generator, Sign};

pub fn word(text: &str) -> BraidWord {
    text.parse().expect("test word parses")
}

pub fn random_word(rng: &mut StdRng, max_degree: usize, max_len: usize) -> BraidWord {
    let degree = rng.random_range(2..=max_degree.max(2));
    let len = rng.random_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.random_range(1..degree);
            match rng.random_range(0..3) {
                0 => Generator::Sigma(i),
                1 => Generator::SigmaInv(i),
                _ => Generator::Tau(i),
            }
        })
        .collect();
    BraidWord::new(degree, letters).expect("indices in range")
}

/// A random abstract Gauss datum: arbitrary signs and an arbitrary bijection
/// from exit corners to entry corners. Realizability is not required.
pub fn random_gauss(rng: &mut StdRng, max_crossings: usize) -> GaussData {
    let n = rng.random_range(1..=max_crossings.max(1));
    let crossings: BTreeMap<String, Sign> = (1..=n)
        .map(|k| {
            let sign = if rng.random_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            (format!("c{k}"), sign)
        })
        .collect();
    let mut exits: Vec<EndpointRef> = crossings
        .keys()
        .flat_map(|id| {
            [
                EndpointRef::new(id.clone(), 3),
                EndpointRef::new(id.clone(), 4),
            ]
        })
        .collect();
    let mut entries: Vec<EndpointRef> = crossings
        .keys()
        .flat_map(|id| {
            [
                EndpointRef::new(id.clone(), 1),
                EndpointRef::new(id.clone(), 2),
            ]
        })
        .collect();
    shuffle(rng, &mut exits);
    shuffle(rng, &mut entries);
    let arcs: BTreeSet<(EndpointRef, EndpointRef)> = exits.into_iter().zip(entries).collect();
    GaussData::new(crossings, arcs, rng.random_range(0..=2)).expect("random pairing is total")
}

fn shuffle<T>(rng: &mut StdRng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}
