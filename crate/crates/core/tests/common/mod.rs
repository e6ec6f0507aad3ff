#![allow(dead_code)]

use std::collections::HashSet;

use abelsq::{Topology, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Census by direct letter counting of every candidate factor.
pub fn naive_census(letters: &[u8], circular: bool) -> (u64, u64, u64) {
    let n = letters.len();
    let at = |i: usize| letters[i % n];
    let mut total = 0;
    let mut distinct: HashSet<Vec<u8>> = HashSet::new();
    let mut classes: HashSet<Vec<usize>> = HashSet::new();
    for l in 1..=n / 2 {
        let starts = if circular { n } else { n + 1 - 2 * l };
        for i in 0..starts {
            let mut left = vec![0usize; 8];
            let mut right = vec![0usize; 8];
            for j in 0..l {
                left[at(i + j) as usize] += 1;
                right[at(i + l + j) as usize] += 1;
            }
            if left == right {
                total += 1;
                distinct.insert((i..i + 2 * l).map(at).collect());
                classes.insert(left);
            }
        }
    }
    (total, distinct.len() as u64, classes.len() as u64)
}

pub fn all_words(n: usize, t: usize) -> impl Iterator<Item = Vec<u8>> {
    let count = (t as u64).pow(n as u32);
    (0..count).map(move |mut code| {
        (0..n)
            .map(|_| {
                let c = (code % t as u64) as u8;
                code /= t as u64;
                c
            })
            .collect()
    })
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut StdRng, max_len: usize, max_t: usize) -> Word {
    let t = rng.gen_range(2..=max_t);
    let n = rng.gen_range(1..=max_len);
    let letters = (0..n).map(|_| rng.gen_range(0..t as u8)).collect();
    let topology = if rng.gen_bool(0.5) { Topology::Circular } else { Topology::Linear };
    Word::new(letters, t).unwrap().with_topology(topology)
}
