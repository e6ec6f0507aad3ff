//! Parallel execution over disjoint subtrees rooted at fixed-depth prefixes.
//!
//! Prefixes are processed in fixed-size chunks, in order. Results inside a
//! chunk are merged in prefix order, so the outcome does not depend on the
//! number of worker threads. Checkpoints are written between chunks.

use std::collections::HashSet;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use super::checkpoint::{prefix_label, Checkpoint, CHECKPOINT_VERSION};
use super::SearchError;

const CHUNK: usize = 64;
const METER_BATCH: u64 = 1 << 14;

/// Associative summary of a searched subtree.
pub(crate) trait Accumulate: Default + Clone + Send + Serialize + DeserializeOwned {
    fn merge(&mut self, other: Self);

    /// Stop launching further chunks once this holds.
    fn settled(&self) -> bool {
        false
    }
}

/// Shared node budget.
pub(crate) struct Budget {
    used: AtomicU64,
    limit: u64,
    exhausted: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limit: u64, already_used: u64) -> Self {
        Budget { used: AtomicU64::new(already_used), limit, exhausted: AtomicBool::new(already_used > limit) }
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

/// Per-task node counter that reports to the shared budget in batches.
pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    pub(crate) nodes: u64,
    pending: u64,
}

impl<'a> Meter<'a> {
    pub(crate) fn new(budget: &'a Budget) -> Self {
        Meter { budget, nodes: 0, pending: 0 }
    }

    /// Counts one node; returns `false` once the budget is gone.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= METER_BATCH {
            self.flush();
        }
        !self.budget.exhausted()
    }

    fn flush(&mut self) {
        let used = self.budget.used.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if used > self.budget.limit {
            self.budget.exhausted.store(true, Ordering::Relaxed);
        }
    }
}

impl Drop for Meter<'_> {
    fn drop(&mut self) {
        self.flush();
    }
}

pub(crate) struct RunConfig<'a> {
    pub threads: Option<usize>,
    pub checkpoint: Option<&'a Path>,
    pub checkpoint_every: u64,
    pub kind: &'static str,
    pub key: serde_json::Value,
    pub bound: serde_json::Value,
}

pub(crate) struct Outcome<A> {
    pub acc: A,
    /// Nodes below the frontier, including those of a resumed checkpoint.
    pub nodes: u64,
    pub budget_exhausted: bool,
}

pub(crate) struct Pool(Option<rayon::ThreadPool>);

impl Pool {
    pub(crate) fn new(threads: Option<usize>) -> Result<Self, SearchError> {
        let pool = threads
            .map(|n| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| SearchError::InvalidSpec(format!("thread pool: {e}")))
            })
            .transpose()?;
        Ok(Pool(pool))
    }

    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.0 {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

/// Runs `task` on every prefix not already recorded in `resume`.
pub(crate) fn run<A, F>(
    cfg: &RunConfig<'_>,
    prefixes: &[Vec<u8>],
    resume: Option<Checkpoint>,
    node_budget: u64,
    task: F,
) -> Result<Outcome<A>, SearchError>
where
    A: Accumulate,
    F: Fn(&[u8], &mut Meter<'_>) -> A + Sync,
{
    let (mut acc, mut done, mut nodes) = match resume {
        Some(ckpt) => {
            let acc: A = serde_json::from_value(ckpt.state).map_err(|e| SearchError::Checkpoint {
                path: cfg.checkpoint.map(Path::to_path_buf).unwrap_or_default(),
                message: e.to_string(),
            })?;
            (acc, ckpt.done, ckpt.nodes)
        }
        None => (A::default(), Vec::new(), 0),
    };
    let skip: HashSet<String> = done.iter().cloned().collect();
    let pending: Vec<&Vec<u8>> = prefixes.iter().filter(|p| !skip.contains(&prefix_label(p))).collect();
    let budget = Budget::new(node_budget, nodes);
    let mut since_checkpoint = 0u64;
    let pool = Pool::new(cfg.threads)?;

    let save = |acc: &A, done: &Vec<String>, nodes: u64| -> Result<(), SearchError> {
        let Some(path) = cfg.checkpoint else { return Ok(()) };
        let state = serde_json::to_value(acc).expect("accumulator serializes");
        Checkpoint {
            version: CHECKPOINT_VERSION,
            kind: cfg.kind.to_string(),
            key: cfg.key.clone(),
            bound: cfg.bound.clone(),
            done: done.clone(),
            nodes,
            state,
        }
        .store(path)
    };

    for chunk in pending.chunks(CHUNK) {
        if acc.settled() || budget.exhausted() {
            break;
        }
        let results: Vec<(A, u64)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|prefix| {
                    let mut meter = Meter::new(&budget);
                    let a = task(prefix, &mut meter);
                    (a, meter.nodes)
                })
                .collect()
        });
        if budget.exhausted() {
            save(&acc, &done, nodes)?;
            // Partial subtrees are still merged so best-so-far answers survive,
            // but they are not recorded as done.
            for (a, n) in results {
                acc.merge(a);
                nodes += n;
            }
            break;
        }
        for ((a, n), prefix) in results.into_iter().zip(chunk) {
            acc.merge(a);
            nodes += n;
            since_checkpoint += n;
            done.push(prefix_label(prefix));
        }
        if since_checkpoint >= cfg.checkpoint_every {
            save(&acc, &done, nodes)?;
            since_checkpoint = 0;
        }
    }
    let budget_exhausted = budget.exhausted();
    if !budget_exhausted && !acc.settled() {
        save(&acc, &done, nodes)?;
    }
    Ok(Outcome { acc, nodes, budget_exhausted })
}
