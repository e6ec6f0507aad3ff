//! Generators for the named word families.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog;
use crate::word::{Alphabet, GlyphStyle, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?} (expected power, fici-block, kucherov, thue-morse or named)")]
    UnknownFamily(String),
    #[error("unknown named word {0:?}")]
    UnknownName(String),
    #[error("{family} requires parameter >= {min}, got {got}")]
    Parameter { family: &'static str, min: usize, got: usize },
    #[error("parameter {0:?} is not a non-negative integer")]
    NotAnInteger(String),
    #[error("{0} is too long to materialize")]
    TooLong(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `a^n`
    Power(usize),
    /// `a^k b a^k b a^{2k}`
    FiciBlock(usize),
    /// `w_1 = ab`, `w_k = w_{k-1} a^k b^k`
    Kucherov(usize),
    /// Length-`n` prefix of the Thue-Morse word `0110100110010110...`
    ThueMorse(usize),
    Named(String),
}

impl Family {
    /// Builds a family from its command-line name and parameter text.
    pub fn from_name(name: &str, param: &str) -> Result<Family, FamilyError> {
        let int = || param.trim().parse::<usize>().map_err(|_| FamilyError::NotAnInteger(param.to_string()));
        Ok(match name {
            "power" => Family::Power(int()?),
            "fici-block" => Family::FiciBlock(int()?),
            "kucherov" => Family::Kucherov(int()?),
            "thue-morse" => Family::ThueMorse(int()?),
            "named" => Family::Named(param.to_string()),
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Power(n) => write!(f, "power({n})"),
            Family::FiciBlock(k) => write!(f, "fici-block({k})"),
            Family::Kucherov(k) => write!(f, "kucherov({k})"),
            Family::ThueMorse(n) => write!(f, "thue-morse({n})"),
            Family::Named(id) => write!(f, "named({id})"),
        }
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    /// Parses `name(param)` or `name:param`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, param) = s
            .split_once('(')
            .map(|(n, rest)| (n, rest.trim_end_matches(')')))
            .or_else(|| s.split_once(':'))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))?;
        Family::from_name(name, param)
    }
}

pub fn generate(family: &Family) -> Result<Word, FamilyError> {
    let binary = |letters: Vec<u8>, label: String| Word::new(letters, 2).map_err(|_| FamilyError::TooLong(label));
    match family {
        Family::Power(n) => Word::new(vec![0; *n], 2).map_err(|_| FamilyError::TooLong(family.to_string())),
        Family::FiciBlock(k) => binary(fici_block(*k)?, family.to_string()),
        Family::Kucherov(k) => binary(kucherov(*k)?, family.to_string()),
        Family::ThueMorse(n) => {
            let alphabet = Alphabet::new(2, GlyphStyle::Digits).expect("binary alphabet");
            Word::with_alphabet(thue_morse(*n), alphabet).map_err(|_| FamilyError::TooLong(family.to_string()))
        }
        Family::Named(id) => catalog::named_word(id).ok_or_else(|| FamilyError::UnknownName(id.clone())),
    }
}

pub fn fici_block(k: usize) -> Result<Vec<u8>, FamilyError> {
    if k < 1 {
        return Err(FamilyError::Parameter { family: "fici-block", min: 1, got: k });
    }
    let mut w = Vec::with_capacity(4 * k + 2);
    w.extend(std::iter::repeat_n(0, k));
    w.push(1);
    w.extend(std::iter::repeat_n(0, k));
    w.push(1);
    w.extend(std::iter::repeat_n(0, 2 * k));
    Ok(w)
}

pub fn kucherov(k: usize) -> Result<Vec<u8>, FamilyError> {
    if k < 1 {
        return Err(FamilyError::Parameter { family: "kucherov", min: 1, got: k });
    }
    let mut w = vec![0, 1];
    for j in 2..=k {
        w.extend(std::iter::repeat_n(0, j));
        w.extend(std::iter::repeat_n(1, j));
    }
    Ok(w)
}

/// `t[i]` is the parity of the number of one bits of `i`.
pub fn thue_morse(n: usize) -> Vec<u8> {
    (0..n).map(|i| (i.count_ones() & 1) as u8).collect()
}
