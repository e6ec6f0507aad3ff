//! Abelian powers and k-abelian equivalence.

use rustc_hash::FxHashMap;

use super::{enumerate_abelian_squares, CountingError, Occurrence};
use crate::parikh::ParikhPrefixTable;
use crate::word::Word;

/// Whether `w` splits into `p` consecutive blocks sharing one Parikh vector.
pub fn is_abelian_power(w: &Word, p: usize) -> Result<bool, CountingError> {
    if p < 2 {
        return Err(CountingError::Exponent(p));
    }
    if !w.len().is_multiple_of(p) {
        return Ok(false);
    }
    let block = w.len() / p;
    let table = ParikhPrefixTable::new(w.letters(), w.alphabet_size());
    let first = table.packed(0, block);
    Ok((1..p).all(|b| table.packed(b * block, (b + 1) * block) == first))
}

/// k-equivalence on raw letter slices: every factor of length `1..=k` occurs
/// equally often in `x` and `y`. `k = 0` imposes no condition.
pub fn k_equivalent_letters(x: &[u8], y: &[u8], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if x.len() != y.len() {
        return false;
    }
    if x == y {
        return true;
    }
    let mut balance: FxHashMap<&[u8], i64> = FxHashMap::default();
    for len in 1..=k.min(x.len()) {
        for f in x.windows(len) {
            *balance.entry(f).or_default() += 1;
        }
        for f in y.windows(len) {
            *balance.entry(f).or_default() -= 1;
        }
    }
    balance.values().all(|&v| v == 0)
}

pub fn k_equivalent(x: &Word, y: &Word, k: usize) -> bool {
    k_equivalent_letters(x.letters(), y.letters(), k)
}

/// Occurrences `(i, l)` whose halves are k-equivalent, in the same order as
/// [`enumerate_abelian_squares`]. For `k = 1` this is exactly that stream.
pub fn enumerate_k_abelian_squares(w: &Word, k: usize) -> Result<Vec<Occurrence>, CountingError> {
    if k == 0 {
        return Err(CountingError::ZeroK);
    }
    let unrolled = w.unrolled();
    Ok(enumerate_abelian_squares(w)
        .filter(|o| {
            let f = o.factor(&unrolled);
            k == 1 || k_equivalent_letters(&f[..o.half_len], &f[o.half_len..], k)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn w(s: &str) -> Word {
        Word::parse_with_alphabet(s, 2).unwrap()
    }

    /// Oracle: tabulate every factor of length <= k explicitly.
    fn grams(x: &[u8], k: usize) -> BTreeMap<Vec<u8>, usize> {
        let mut m = BTreeMap::new();
        for len in 1..=k {
            for i in 0..x.len().saturating_sub(len - 1) {
                *m.entry(x[i..i + len].to_vec()).or_insert(0) += 1;
            }
        }
        m
    }

    #[test]
    fn abelian_powers() {
        assert!(is_abelian_power(&w("aaa"), 3).unwrap());
        assert!(is_abelian_power(&w("abbaab"), 3).unwrap());
        assert!(!is_abelian_power(&w("ababab"), 4).unwrap());
        assert!(!is_abelian_power(&w("aabbab"), 3).unwrap());
        assert_eq!(is_abelian_power(&w("ab"), 1), Err(CountingError::Exponent(1)));
    }

    #[test]
    fn k_equivalence_examples() {
        assert!(k_equivalent(&w("abab"), &w("abab"), 3));
        assert!(k_equivalent(&w("ab"), &w("ba"), 1));
        assert!(!k_equivalent(&w("ab"), &w("ba"), 2));
        let (x, y) = (w("aabab"), w("abaab"));
        assert_eq!(grams(x.letters(), 2), grams(y.letters(), 2));
        assert!(k_equivalent(&x, &y, 2));
        assert_ne!(grams(x.letters(), 3), grams(y.letters(), 3));
        assert!(!k_equivalent(&x, &y, 3));
    }

    #[test]
    fn k_abelian_square_examples() {
        assert!(enumerate_k_abelian_squares(&w("abab"), 2).unwrap().contains(&Occurrence::new(0, 2)));
        // halves aabab and abaab
        let word = w("aababab").letters().iter().chain(w("aab").letters()).copied().collect::<Vec<_>>();
        let word = Word::new(word, 2).unwrap();
        assert_eq!(word.to_string(), "aabababaab");
        assert!(enumerate_k_abelian_squares(&word, 2).unwrap().contains(&Occurrence::new(0, 5)));
        assert!(!enumerate_k_abelian_squares(&word, 3).unwrap().contains(&Occurrence::new(0, 5)));
        assert!(enumerate_k_abelian_squares(&w("aa"), 5).unwrap().contains(&Occurrence::new(0, 1)));
        assert_eq!(enumerate_k_abelian_squares(&w("aa"), 0), Err(CountingError::ZeroK));
    }

    #[test]
    fn k_equivalence_agrees_with_gram_tables() {
        let words: Vec<Vec<u8>> = (0..64u32).map(|c| (0..6).map(|b| ((c >> b) & 1) as u8).collect()).collect();
        for x in &words {
            for y in &words {
                for k in 1..=4 {
                    assert_eq!(k_equivalent_letters(x, y, k), grams(x, k) == grams(y, k), "{x:?} {y:?} {k}");
                }
            }
        }
    }
}
