//! Reference solver: every one of the `t^n` words, full recount each time.

use std::collections::BTreeSet;

use super::{ProblemSpec, SearchError, SearchResult};
use crate::counting::census;
use crate::symmetry::{canonical_representative, Symmetry};
use crate::word::Word;

/// Solves `spec` by plain enumeration with no pruning, no symmetry
/// reduction and no incremental state. Refuses more than `limit` words.
pub fn solve_blind(spec: ProblemSpec, limit: u64) -> Result<SearchResult, SearchError> {
    spec.validate()?;
    let words = (spec.t as u64).checked_pow(spec.n as u32).filter(|&w| w <= limit);
    let Some(words) = words else {
        return Err(SearchError::BudgetExceeded { n: spec.n, nodes: u64::MAX, budget: limit });
    };
    let mut best: Option<u64> = None;
    let mut count = 0u64;
    let mut witnesses = BTreeSet::new();
    let mut letters = vec![0u8; spec.n];
    for code in 0..words {
        let mut rest = code;
        for slot in letters.iter_mut() {
            *slot = (rest % spec.t as u64) as u8;
            rest /= spec.t as u64;
        }
        let word = Word::new(letters.clone(), spec.t).expect("letters below t").with_topology(spec.topology);
        let value = census(&word).value(spec.mode);
        match best {
            Some(b) if spec.objective.better(b, value) => continue,
            Some(b) if b == value => count += 1,
            _ => {
                best = Some(value);
                count = 1;
                witnesses.clear();
            }
        }
        witnesses.insert(canonical_representative(&word, Symmetry::full_for(&word)).into_letters());
    }
    let witnesses: Vec<Word> = witnesses
        .into_iter()
        .map(|w| Word::new(w, spec.t).expect("letters below t").with_topology(spec.topology))
        .collect();
    Ok(SearchResult {
        spec,
        value: best.expect("n >= 1"),
        witness_count: count,
        witness_cap: witnesses.len(),
        witnesses,
        witnesses_truncated: false,
        nodes: words,
    })
}
