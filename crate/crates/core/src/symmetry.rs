//! Symmetry groups acting on words and canonical orbit representatives.
//!
//! Letter permutations are handled through first-occurrence normal form:
//! relabel so that letters appear for the first time in the order `0, 1, 2,
//! ...`. That form is the lexicographically least member of a word's
//! permutation orbit, and the orbit has exactly `t!/(t-m)!` members when `m`
//! distinct letters occur.

use crate::word::{Word, MAX_ALPHABET};

/// Generators of the group used by [`canonical_representative`].
///
/// `permute` is the binary complement for `t = 2` and the full letter
/// permutation group for larger alphabets. `rotate` is meant for circular
/// words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Symmetry {
    pub permute: bool,
    pub reverse: bool,
    pub rotate: bool,
}

impl Symmetry {
    pub const NONE: Symmetry = Symmetry { permute: false, reverse: false, rotate: false };

    /// Letter permutations and reversal, plus rotations for circular words.
    pub fn full_for(word: &Word) -> Symmetry {
        Symmetry { permute: true, reverse: true, rotate: word.is_circular() }
    }
}

/// Relabels `letters` into first-occurrence normal form, writing into `out`.
pub fn normalize_into(letters: impl IntoIterator<Item = u8>, out: &mut Vec<u8>) {
    let mut map = [u8::MAX; MAX_ALPHABET];
    let mut next = 0u8;
    out.clear();
    for c in letters {
        let slot = &mut map[c as usize];
        if *slot == u8::MAX {
            *slot = next;
            next += 1;
        }
        out.push(*slot);
    }
}

pub fn normalize(letters: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(letters.len());
    normalize_into(letters.iter().copied(), &mut out);
    out
}

/// Whether `letters` is already in first-occurrence normal form.
pub fn is_normalized(letters: &[u8]) -> bool {
    let mut next = 0u8;
    for &c in letters {
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    true
}

/// Number of injective relabelings of `used` letters into an alphabet of `size`.
pub fn permutation_orbit_size(size: usize, used: usize) -> u64 {
    ((size - used + 1)..=size).map(|k| k as u64).product()
}

/// Images of `letters` under rotations and reflections selected by `sym`,
/// excluding letter permutations. Visits `(rotation, reflected)` images in a
/// fixed order.
fn for_each_geometric_image(letters: &[u8], sym: Symmetry, mut f: impl FnMut(&mut dyn Iterator<Item = u8>)) {
    let n = letters.len();
    let shifts = if sym.rotate { n.max(1) } else { 1 };
    for shift in 0..shifts {
        f(&mut (0..n).map(|i| letters[(i + shift) % n.max(1)]));
        if sym.reverse {
            f(&mut (0..n).rev().map(|i| letters[(i + shift) % n.max(1)]));
        }
    }
}

fn image_letters(letters: &[u8], sym: Symmetry) -> Vec<Vec<u8>> {
    let mut images = Vec::new();
    for_each_geometric_image(letters, sym, |it| {
        let mut img = Vec::with_capacity(letters.len());
        if sym.permute {
            normalize_into(it, &mut img);
        } else {
            img.extend(it);
        }
        images.push(img);
    });
    images
}

/// Lexicographically least word in the orbit of `word` under `sym`.
pub fn canonical_representative(word: &Word, sym: Symmetry) -> Word {
    let best = image_letters(word.letters(), sym).into_iter().min().unwrap_or_default();
    Word::with_alphabet(best, word.alphabet()).expect("images stay within the alphabet").with_topology(word.topology())
}

/// Orbit size of `letters` (over `size` letters) under `sym`.
pub fn orbit_size(letters: &[u8], size: usize, sym: Symmetry) -> u64 {
    let mut images = image_letters(letters, sym);
    images.sort_unstable();
    images.dedup();
    if !sym.permute {
        return images.len() as u64;
    }
    let mut seen = [false; MAX_ALPHABET];
    letters.iter().for_each(|&c| seen[c as usize] = true);
    let used = seen.iter().filter(|&&s| s).count();
    images.len() as u64 * permutation_orbit_size(size, used)
}

/// Orbit data for a word already in first-occurrence normal form under the
/// full group (permutations, reversal, optional rotation).
///
/// Returns `None` when `letters` is not the canonical member of its orbit,
/// otherwise the orbit size. `scratch` is reused between calls.
pub(crate) fn canonical_orbit(letters: &[u8], size: usize, rotate: bool, scratch: &mut Vec<Vec<u8>>) -> Option<u64> {
    let sym = Symmetry { permute: true, reverse: true, rotate };
    let mut count = 0;
    let mut rejected = false;
    for_each_geometric_image(letters, sym, |it| {
        if rejected {
            return;
        }
        if scratch.len() <= count {
            scratch.push(Vec::with_capacity(letters.len()));
        }
        let img = &mut scratch[count];
        normalize_into(it, img);
        if img.as_slice() < letters {
            rejected = true;
        }
        count += 1;
    });
    if rejected {
        return None;
    }
    let images = &mut scratch[..count];
    images.sort_unstable();
    let distinct = 1 + images.windows(2).filter(|p| p[0] != p[1]).count();
    let used = letters.iter().max().map_or(0, |&m| m as usize + 1);
    Some(distinct as u64 * permutation_orbit_size(size, used))
}
