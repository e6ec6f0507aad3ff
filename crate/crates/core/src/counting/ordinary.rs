//! Ordinary squares, square-length restrictions and factor density.

use rustc_hash::FxHashSet;

use super::{CountingError, Occurrence};
use crate::parikh::ParikhPrefixTable;
use crate::word::Word;

/// Number of distinct strings `uu` occurring as factors of `w`.
pub fn count_distinct_ordinary_squares(w: &Word) -> usize {
    let n = w.len();
    let unrolled = w.unrolled();
    let mut seen: FxHashSet<&[u8]> = FxHashSet::default();
    for l in 1..=n / 2 {
        let starts = if w.is_circular() { n } else { n + 1 - 2 * l };
        for i in 0..starts {
            if unrolled[i..i + l] == unrolled[i + l..i + 2 * l] {
                seen.insert(&unrolled[i..i + 2 * l]);
            }
        }
    }
    seen.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Restriction {
    pub holds: bool,
    /// Least violating occurrence by `(half_len, start)`.
    pub violation: Option<Occurrence>,
}

/// Checks that every abelian square of `w` has length at most
/// `max_square_length`.
pub fn verify_restricted_abelian_squares(w: &Word, max_square_length: usize) -> Restriction {
    let n = w.len();
    let table = w.prefix_table();
    for l in max_square_length / 2 + 1..=n / 2 {
        let starts = if w.is_circular() { n } else { n + 1 - 2 * l };
        if let Some(i) = (0..starts).find(|&i| table.is_abelian_square(i, l)) {
            return Restriction { holds: false, violation: Some(Occurrence::new(i, l)) };
        }
    }
    Restriction { holds: true, violation: None }
}

/// Least total abelian-square count over the length-`m` factors of `w`.
pub fn min_factor_square_mass(w: &Word, m: usize) -> Result<u64, CountingError> {
    let n = w.len();
    if m == 0 || m > n {
        return Err(CountingError::FactorLength { m, n });
    }
    let unrolled = w.unrolled();
    let table = ParikhPrefixTable::new(&unrolled, w.alphabet_size());
    let starts = if w.is_circular() { n } else { n - m + 1 };
    let mass = |s: usize| -> u64 {
        (1..=m / 2).map(|l| (s..=s + m - 2 * l).filter(|&i| table.is_abelian_square(i, l)).count() as u64).sum()
    };
    Ok((0..starts).map(mass).min().expect("at least one factor"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::census;
    use crate::families::thue_morse;

    fn w(s: &str) -> Word {
        Word::parse_with_alphabet(s, 2).unwrap()
    }

    #[test]
    fn ordinary_square_examples() {
        assert_eq!(count_distinct_ordinary_squares(&w("aba")), 0);
        assert_eq!(count_distinct_ordinary_squares(&w("aaabaaa")), 1);
        assert_eq!(count_distinct_ordinary_squares(&w("abaabbaaabbbaabbab")), 2);
        assert_eq!(count_distinct_ordinary_squares(&w("abab")), 1);
    }

    /// Oracle: every square factor by explicit string comparison.
    fn brute_squares(s: &str) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        for i in 0..s.len() {
            for j in (i + 2..=s.len()).step_by(2) {
                let (u, v) = s[i..j].split_at((j - i) / 2);
                if u == v {
                    out.insert(s[i..j].to_string());
                }
            }
        }
        out
    }

    #[test]
    fn ordinary_squares_match_brute_force() {
        assert_eq!(brute_squares("aaabaaa").into_iter().collect::<Vec<_>>(), ["aa"]);
        for code in 0..(1u32 << 11) {
            let s: String = (0..11).map(|b| if code >> b & 1 == 1 { 'b' } else { 'a' }).collect();
            assert_eq!(count_distinct_ordinary_squares(&w(&s)), brute_squares(&s).len());
        }
    }

    #[test]
    fn restriction_examples() {
        let r = verify_restricted_abelian_squares(&w("abab"), 2);
        assert!(!r.holds);
        assert_eq!(r.violation, Some(Occurrence::new(0, 2)));
        assert!(verify_restricted_abelian_squares(&Word::parse("abc").unwrap(), 2).holds);
        assert!(verify_restricted_abelian_squares(&w("abab"), 4).holds);
    }

    #[test]
    fn factor_mass_examples() {
        assert_eq!(min_factor_square_mass(&w("aaaaaaaaaa"), 4).unwrap(), 4);
        assert_eq!(min_factor_square_mass(&w("abaaaaaaaab"), 2).unwrap(), 0);
        assert!(min_factor_square_mass(&w("ab"), 3).is_err());
        assert!(min_factor_square_mass(&w("ab"), 0).is_err());
    }

    #[test]
    fn thue_morse_factor_mass_regression() {
        let tm = Word::new(thue_morse(1024), 2).unwrap();
        // Oracle: full census of every length-16 factor.
        let oracle = (0..=1024 - 16)
            .map(|s| census(&Word::new(tm.letters()[s..s + 16].to_vec(), 2).unwrap()).total)
            .min()
            .unwrap();
        assert_eq!(oracle, 23);
        assert_eq!(min_factor_square_mass(&tm, 16).unwrap(), oracle);
    }
}
