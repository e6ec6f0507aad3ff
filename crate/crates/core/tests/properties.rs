mod common;

use abelsq::counting::{enumerate_k_abelian_squares, Mode};
use abelsq::families::{fici_block, kucherov, thue_morse};
use abelsq::symmetry::{canonical_representative, Symmetry};
use abelsq::{census, enumerate_abelian_squares, Topology, Word};
use common::{all_words, random_word, rng};
use proptest::prelude::*;

const RANDOM_WORDS: usize = 10_000;

fn fields(w: &Word) -> [u64; 3] {
    let c = census(w);
    [c.total, c.distinct, c.nonequivalent]
}

fn word_strategy(max_len: usize, max_t: usize) -> impl Strategy<Value = Word> {
    (2..=max_t).prop_flat_map(move |t| {
        (proptest::collection::vec(0..t as u8, 1..=max_len), any::<bool>()).prop_map(move |(letters, circ)| {
            let topology = if circ { Topology::Circular } else { Topology::Linear };
            Word::new(letters, t).unwrap().with_topology(topology)
        })
    })
}

#[test]
fn chain_on_random_words() {
    let mut r = rng(1);
    for _ in 0..RANDOM_WORDS {
        let w = random_word(&mut r, 30, 4);
        let [t, d, n] = fields(&w);
        assert!(t >= d && d >= n, "{w}");
    }
}

#[test]
fn extension_monotonicity_on_random_words() {
    let mut r = rng(2);
    for _ in 0..RANDOM_WORDS {
        let w = random_word(&mut r, 30, 4).with_topology(Topology::Linear);
        let before = fields(&w);
        for c in 0..w.alphabet_size() as u8 {
            let mut letters = w.letters().to_vec();
            letters.push(c);
            let after = fields(&Word::new(letters, w.alphabet_size()).unwrap());
            assert!((0..3).all(|m| after[m] >= before[m]), "{w} + {c}");
        }
    }
}

#[test]
fn extension_monotonicity_exhaustive() {
    for (t, n_max) in [(2, 12), (3, 8)] {
        for n in 0..n_max {
            for letters in all_words(n, t) {
                let before = if n == 0 { [0; 3] } else { fields(&Word::new(letters.clone(), t).unwrap()) };
                for c in 0..t as u8 {
                    let mut longer = letters.clone();
                    longer.push(c);
                    let after = fields(&Word::new(longer, t).unwrap());
                    assert!((0..3).all(|m| after[m] >= before[m]));
                }
            }
        }
    }
}

#[test]
fn symmetry_invariance_on_random_words() {
    let mut r = rng(3);
    for _ in 0..RANDOM_WORDS {
        let w = random_word(&mut r, 30, 4);
        let base = fields(&w);
        assert_eq!(fields(&w.reverse()), base, "{w} reversed");
        let t = w.alphabet_size();
        let perm: Vec<u8> = (0..t as u8).rev().collect();
        assert_eq!(fields(&w.relabel(&perm).unwrap()), base, "{w} relabelled");
        if w.is_circular() {
            assert_eq!(fields(&w.rotate(w.len() / 2)), base, "{w} rotated");
        }
        assert_eq!(fields(&canonical_representative(&w, Symmetry::full_for(&w))), base);
    }
}

#[test]
fn k_abelian_squares_are_abelian_on_random_words() {
    let mut r = rng(4);
    for i in 0..RANDOM_WORDS {
        let w = random_word(&mut r, 24, 3).with_topology(Topology::Linear);
        let k = 1 + i % 4;
        let abelian: Vec<_> = enumerate_abelian_squares(&w).collect();
        let k_abelian = enumerate_k_abelian_squares(&w, k).unwrap();
        assert!(k_abelian.iter().all(|o| abelian.contains(o)), "{w} k = {k}");
        if k == 1 {
            assert_eq!(k_abelian, abelian);
        }
        // Ordinary squares are k-abelian for every k.
        let letters = w.letters();
        for o in &abelian {
            let (u, v) = (&letters[o.start..o.start + o.half_len], &letters[o.start + o.half_len..o.start + o.len()]);
            if u == v {
                assert!(k_abelian.contains(o), "{w} {o}");
            }
        }
    }
}

#[test]
fn circular_dominates_linear_on_random_words() {
    let mut r = rng(5);
    for _ in 0..RANDOM_WORDS {
        let w = random_word(&mut r, 30, 4).with_topology(Topology::Linear);
        let lin = census(&w);
        let circ = census(&w.clone().circular());
        for m in Mode::ALL {
            assert!(circ.value(m) >= lin.value(m), "{w} {m}");
        }
    }
}

#[test]
fn closed_forms_for_powers() {
    for n in 1..=64usize {
        let a = Word::new(vec![0; n], 2).unwrap();
        assert_eq!(census(&a).total, ((n / 2) * n.div_ceil(2)) as u64);
        assert_eq!(census(&a.circular()).total, (n * (n / 2)) as u64);
    }
}

#[test]
fn family_lengths() {
    for k in 1..=12 {
        assert_eq!(kucherov(k).unwrap().len(), k * (k + 1));
        assert_eq!(fici_block(k).unwrap().len(), 4 * k + 2);
    }
    let tm = thue_morse(512);
    for i in 0..256 {
        assert_eq!(tm[2 * i], tm[i]);
        assert_eq!(tm[2 * i + 1], 1 - tm[i]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn chain_holds(w in word_strategy(30, 4)) {
        let [t, d, n] = fields(&w);
        prop_assert!(t >= d && d >= n);
    }

    #[test]
    fn parikh_sums_to_length(w in word_strategy(40, 8)) {
        let p = w.parikh(0..w.len()).unwrap();
        prop_assert_eq!(p.total(), w.len() as u64);
    }

    #[test]
    fn reverse_and_complement_are_involutions(w in word_strategy(30, 2)) {
        prop_assert_eq!(w.reverse().reverse(), w.clone());
        prop_assert_eq!(w.complement().unwrap().complement().unwrap(), w);
    }

    #[test]
    fn canonical_form_is_idempotent(w in word_strategy(16, 3)) {
        let sym = Symmetry::full_for(&w);
        let c = canonical_representative(&w, sym);
        prop_assert_eq!(canonical_representative(&c, sym), c.clone());
        prop_assert_eq!(canonical_representative(&w.reverse(), sym), c);
    }
}
