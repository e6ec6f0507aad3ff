//! Finite words over a small indexed alphabet.
//!
//! Letters are stored as indices `0..t`; glyphs only matter when parsing or
//! rendering. Index `i` renders as the `i`-th letter (`a`, `b`, ...) or as the
//! digit `i`, and parsing maps glyphs back by that fixed table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parikh::{ParikhPrefixTable, ParikhVector};

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 8;

/// Longest supported word. Parikh counts are packed into 16-bit lanes and the
/// circular prefix table covers the doubled word.
pub const MAX_WORD_LEN: usize = (u16::MAX as usize) / 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet size {0} outside 1..={MAX_ALPHABET}")]
    AlphabetSize(usize),
    #[error("letter index {letter} is not below the alphabet size {size}")]
    LetterOutOfRange { letter: u8, size: usize },
    #[error("invalid glyph {0:?}: expected a-h or 0-7")]
    InvalidGlyph(char),
    #[error("word length {0} exceeds the supported maximum {MAX_WORD_LEN}")]
    TooLong(usize),
    #[error("range {start}..{end} is outside the valid factor range 0..={limit}")]
    Range { start: usize, end: usize, limit: usize },
    #[error("operation requires a binary alphabet, found size {0}")]
    UnsupportedAlphabet(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    #[default]
    Linear,
    Circular,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Linear => "linear",
            Topology::Circular => "circular",
        })
    }
}

impl FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Topology::Linear),
            "circular" => Ok(Topology::Circular),
            other => Err(format!("unknown topology {other:?}")),
        }
    }
}

/// How letter indices are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GlyphStyle {
    #[default]
    Letters,
    Digits,
}

impl GlyphStyle {
    pub fn glyph(self, letter: u8) -> char {
        match self {
            GlyphStyle::Letters => (b'a' + letter) as char,
            GlyphStyle::Digits => (b'0' + letter) as char,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: u8,
    style: GlyphStyle,
}

impl Alphabet {
    pub fn new(size: usize, style: GlyphStyle) -> Result<Self, WordError> {
        if !(1..=MAX_ALPHABET).contains(&size) {
            return Err(WordError::AlphabetSize(size));
        }
        Ok(Alphabet { size: size as u8, style })
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn style(&self) -> GlyphStyle {
        self.style
    }

    pub fn glyph(&self, letter: u8) -> char {
        self.style.glyph(letter)
    }

    /// Maps a glyph to its letter index; `a` and `0` both denote index 0.
    pub fn index_of(glyph: char) -> Result<u8, WordError> {
        match glyph {
            'a'..='h' => Ok(glyph as u8 - b'a'),
            '0'..='7' => Ok(glyph as u8 - b'0'),
            other => Err(WordError::InvalidGlyph(other)),
        }
    }
}

/// A finite word together with its alphabet and topology.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: Alphabet,
    topology: Topology,
}

impl Word {
    /// Builds a linear word over `alphabet_size` letters rendered as `a, b, ...`.
    pub fn new(letters: Vec<u8>, alphabet_size: usize) -> Result<Self, WordError> {
        Self::with_alphabet(letters, Alphabet::new(alphabet_size, GlyphStyle::Letters)?)
    }

    pub fn with_alphabet(letters: Vec<u8>, alphabet: Alphabet) -> Result<Self, WordError> {
        if letters.len() > MAX_WORD_LEN {
            return Err(WordError::TooLong(letters.len()));
        }
        if let Some(&bad) = letters.iter().find(|&&c| c as usize >= alphabet.size()) {
            return Err(WordError::LetterOutOfRange { letter: bad, size: alphabet.size() });
        }
        Ok(Word { letters, alphabet, topology: Topology::Linear })
    }

    /// Parses a word written in glyphs `a-h` or `0-7`.
    ///
    /// The alphabet is the smallest one containing every letter that occurs
    /// (at least size 1); the glyph style follows the first character.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let letters = text.chars().map(Alphabet::index_of).collect::<Result<Vec<_>, _>>()?;
        let size = letters.iter().max().map_or(1, |&m| m as usize + 1);
        let style = match text.chars().next() {
            Some(c) if c.is_ascii_digit() => GlyphStyle::Digits,
            _ => GlyphStyle::Letters,
        };
        Self::with_alphabet(letters, Alphabet::new(size, style)?)
    }

    /// Parses a word and widens its alphabet to `size` letters.
    pub fn parse_with_alphabet(text: &str, size: usize) -> Result<Self, WordError> {
        let w = Self::parse(text)?;
        let alphabet = Alphabet::new(size, w.alphabet.style)?;
        Self::with_alphabet(w.letters, alphabet)
    }

    pub fn with_topology(mut self, topology: Topology) -> Self {
        self.topology = topology;
        self
    }

    pub fn circular(self) -> Self {
        self.with_topology(Topology::Circular)
    }

    pub fn with_style(mut self, style: GlyphStyle) -> Self {
        self.alphabet.style = style;
        self
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_circular(&self) -> bool {
        self.topology == Topology::Circular
    }

    /// Letter sequence that factor queries run over: the word itself, or the
    /// word written twice when circular.
    pub fn unrolled(&self) -> Vec<u8> {
        match self.topology {
            Topology::Linear => self.letters.clone(),
            Topology::Circular => {
                let mut doubled = Vec::with_capacity(2 * self.len());
                doubled.extend_from_slice(&self.letters);
                doubled.extend_from_slice(&self.letters);
                doubled
            }
        }
    }

    pub fn prefix_table(&self) -> ParikhPrefixTable {
        ParikhPrefixTable::new(&self.unrolled(), self.alphabet_size())
    }

    /// Parikh vector of the factor covering the 0-based half-open `range`.
    ///
    /// Circular words accept ranges reaching into the second copy, up to `2n`.
    pub fn parikh(&self, range: std::ops::Range<usize>) -> Result<ParikhVector, WordError> {
        let limit = match self.topology {
            Topology::Linear => self.len(),
            Topology::Circular => 2 * self.len(),
        };
        if range.start > range.end || range.end > limit {
            return Err(WordError::Range { start: range.start, end: range.end, limit });
        }
        let mut counts = vec![0u32; self.alphabet_size()];
        let n = self.len().max(1);
        for pos in range {
            counts[self.letters[pos % n] as usize] += 1;
        }
        Ok(ParikhVector::new(counts))
    }

    /// Swaps the two letters of a binary word.
    pub fn complement(&self) -> Result<Word, WordError> {
        if self.alphabet_size() != 2 {
            return Err(WordError::UnsupportedAlphabet(self.alphabet_size()));
        }
        Ok(self.map_letters(|c| 1 - c))
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters, ..*self }
    }

    /// The word shifted left by `k` positions.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.len());
        }
        Word { letters, ..*self }
    }

    /// All `n` rotations, by increasing shift. Repeated rotations of a
    /// periodic word are kept.
    pub fn conjugates(&self) -> Vec<Word> {
        (0..self.len()).map(|k| self.rotate(k)).collect()
    }

    /// Applies the letter map `perm[old] = new`.
    pub fn relabel(&self, perm: &[u8]) -> Result<Word, WordError> {
        let w = self.map_letters(|c| perm[c as usize]);
        Self::with_alphabet(w.letters, self.alphabet).map(|x| x.with_topology(self.topology))
    }

    fn map_letters(&self, f: impl Fn(u8) -> u8) -> Word {
        Word { letters: self.letters.iter().map(|&c| f(c)).collect(), ..*self }
    }

    /// Number of distinct letters that actually occur.
    pub fn letters_used(&self) -> usize {
        let mut seen = [false; MAX_ALPHABET];
        self.letters.iter().for_each(|&c| seen[c as usize] = true);
        seen.iter().filter(|&&s| s).count()
    }

    pub fn render(&self, letters: &[u8]) -> String {
        letters.iter().map(|&c| self.alphabet.glyph(c)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&self.letters))
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

/// Parses the word text format: one word per line, blank lines skipped.
pub fn parse_lines(text: &str) -> Result<Vec<Word>, WordError> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(Word::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn glyphs_map_by_table_not_first_occurrence() {
        assert_eq!(w("bba").letters(), &[1, 1, 0]);
        assert_eq!(w("110").letters(), &[1, 1, 0]);
        assert_eq!(w("bbb").alphabet_size(), 2);
        assert_eq!(w("").alphabet_size(), 1);
        assert_eq!(w("ab01").letters(), &[0, 1, 0, 1]);
        assert_eq!(Word::parse("abx"), Err(WordError::InvalidGlyph('x')));
    }

    #[test]
    fn output_mirrors_input_style() {
        assert_eq!(w("0120").to_string(), "0120");
        assert_eq!(w("abca").to_string(), "abca");
    }

    #[test]
    fn parikh_examples() {
        let abba = w("abba");
        assert_eq!(abba.parikh(0..2).unwrap().counts(), &[1, 1]);
        assert_eq!(abba.parikh(0..0).unwrap().counts(), &[0, 0]);
        // "aaabaa"
        assert_eq!(w("ababbaaabaa").parikh(5..11).unwrap().counts(), &[5, 1]);
        assert!(matches!(abba.parikh(2..5), Err(WordError::Range { .. })));
        assert_eq!(abba.clone().circular().parikh(3..6).unwrap().counts(), &[2, 1]);
        assert!(abba.circular().parikh(0..9).is_err());
    }

    #[test]
    fn involutions_and_rotations() {
        assert_eq!(w("aab").complement().unwrap().to_string(), "bba");
        assert_eq!(w("aab").reverse().to_string(), "baa");
        let conj: Vec<String> = w("aab").conjugates().iter().map(|c| c.to_string()).collect();
        assert_eq!(conj, ["aab", "aba", "baa"]);
        assert_eq!(w("abc").complement(), Err(WordError::UnsupportedAlphabet(3)));
    }

    #[test]
    fn rejects_letters_outside_alphabet() {
        assert!(matches!(Word::new(vec![0, 2], 2), Err(WordError::LetterOutOfRange { .. })));
        assert!(Word::new(vec![0; 3], 9).is_err());
        assert!(Word::new(vec![0; MAX_WORD_LEN + 1], 2).is_err());
    }
}
