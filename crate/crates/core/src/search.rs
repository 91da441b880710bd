//! Exhaustive lexicographic backtracking for longest pattern-avoiding words.
//!
//! Letters are tried in the given alphabet order and the first word to reach
//! each new depth is recorded, so the reported witness is the
//! lexicographically least among the longest avoiding words whenever the
//! tree is exhausted.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::detectors::{
    find_congruential_power, AbelianState, AdjacentSumState, IncrementalState, Pattern,
    SquareState, SuffixDetector, SumSquareState,
};
use crate::error::{argument, Error, Result};
use crate::word::{Letter, Word};

/// Batch of nodes counted locally before touching the shared budget.
const BUDGET_CHUNK: u64 = 1 << 12;
const PROGRESS_EVERY: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub r: usize,
    pub k: u32,
    pub max_len: Option<usize>,
    pub node_budget: Option<u64>,
    /// Prefix length at which the tree is split into independent branches.
    /// Zero searches the whole tree on the calling thread.
    pub parallel_depth: usize,
    pub threads: usize,
    /// Restrict to words starting with 0 whose first nonzero letter divides
    /// `k`. Every affine map `x -> u*x + c` with `u` a unit mod `k` preserves
    /// congruential powers, and the lexicographically least longest word is
    /// always of this form, so both `l` and the witness are unchanged.
    pub symmetry: bool,
}

impl SearchConfig {
    pub fn new(r: usize, k: u32) -> Self {
        SearchConfig {
            r,
            k,
            max_len: None,
            node_budget: None,
            parallel_depth: 0,
            threads: 1,
            symmetry: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.r < 2 || self.k < 2 {
            return argument(format!(
                "search needs r >= 2 and k >= 2, got r={} k={}",
                self.r, self.k
            ));
        }
        if self.k > 128 {
            return argument(format!("alphabet size {} exceeds the letter range", self.k));
        }
        if self.max_len == Some(0) || self.node_budget == Some(0) {
            return argument("caps must be positive when present");
        }
        if self.threads == 0 {
            return argument("threads must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub l: usize,
    pub witness: Word,
    pub nodes_explored: u64,
    /// True iff the whole tree was exhausted without hitting a cap, which
    /// certifies that no longer avoiding word exists.
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_len: Option<usize>,
    pub node_budget: Option<u64>,
}

/// Progress snapshot passed to the optional observer.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub nodes: u64,
    pub best_len: usize,
}

type Observer<'a> = &'a (dyn Fn(Progress) + Sync);

/// Restriction on which letters may extend a word.
trait LetterFilter: Sync {
    fn allows(&self, word: &[Letter], letter: Letter) -> bool;
}

struct Unrestricted;

impl LetterFilter for Unrestricted {
    #[inline]
    fn allows(&self, _: &[Letter], _: Letter) -> bool {
        true
    }
}

struct AffineCanonical {
    k: u32,
}

impl LetterFilter for AffineCanonical {
    #[inline]
    fn allows(&self, word: &[Letter], letter: Letter) -> bool {
        if word.is_empty() {
            return letter == 0;
        }
        if letter == 0 || word.iter().any(|&a| a != 0) {
            return true;
        }
        self.k.is_multiple_of(letter as u32)
    }
}

struct Shared<'a> {
    budget: Option<u64>,
    spent: AtomicU64,
    exhausted: AtomicBool,
    observer: Option<Observer<'a>>,
}

impl Shared<'_> {
    /// Reserves up to `n` nodes and returns how many were granted; zero once
    /// the budget is gone.
    fn reserve(&self, n: u64) -> u64 {
        let before = self.spent.fetch_add(n, Ordering::Relaxed);
        match self.budget {
            Some(b) if before >= b => {
                self.exhausted.store(true, Ordering::Relaxed);
                0
            }
            Some(b) => n.min(b - before),
            None => n,
        }
    }
}

#[derive(Debug, Clone)]
struct Branch {
    best: Vec<Letter>,
    nodes: u64,
    truncated: bool,
    aborted: bool,
}

impl Branch {
    fn merge(self, other: Branch) -> Branch {
        // `self` precedes `other` in lexicographic order.
        let keep_self = self.best.len() >= other.best.len();
        Branch {
            best: if keep_self { self.best } else { other.best },
            nodes: self.nodes + other.nodes,
            truncated: self.truncated || other.truncated,
            aborted: self.aborted || other.aborted,
        }
    }
}

/// Depth-first search below `prefix`, whose letters are already in `state`.
fn explore<D: SuffixDetector, F: LetterFilter>(
    alphabet: &[Letter],
    filter: &F,
    mut state: D,
    prefix: Vec<Letter>,
    max_len: usize,
    shared: &Shared<'_>,
) -> Branch {
    let base = prefix.len();
    let mut word = prefix;
    let mut best = word.clone();
    let mut nodes = 0u64;
    let mut allowance = 0u64;
    let mut truncated = false;
    let mut aborted = false;
    let mut next: Vec<usize> = Vec::with_capacity(256);
    next.push(0);
    while let Some(idx) = next.last_mut() {
        if word.len() >= max_len {
            truncated = true;
            *idx = alphabet.len();
        }
        if *idx == alphabet.len() {
            next.pop();
            if word.len() > base {
                word.pop();
                state.pop();
            }
            continue;
        }
        let letter = alphabet[*idx];
        *idx += 1;
        if !filter.allows(&word, letter) {
            continue;
        }
        if allowance == 0 {
            allowance = shared.reserve(BUDGET_CHUNK);
            if allowance == 0 {
                aborted = true;
                break;
            }
            if let Some(obs) = shared.observer {
                if shared.spent.load(Ordering::Relaxed) % PROGRESS_EVERY < BUDGET_CHUNK {
                    obs(Progress {
                        nodes: shared.spent.load(Ordering::Relaxed),
                        best_len: best.len(),
                    });
                }
            }
        }
        allowance -= 1;
        nodes += 1;
        if state.push(letter) {
            state.pop();
            continue;
        }
        word.push(letter);
        if word.len() > best.len() {
            best.clone_from(&word);
            // nothing later in lex order can beat a word of the cap length
            if best.len() >= max_len {
                truncated = true;
                break;
            }
        }
        next.push(0);
    }
    Branch {
        best,
        nodes,
        truncated,
        aborted,
    }
}

/// A prefix with its detector state; `None` marks a dead end.
type Frontier<D> = Vec<(Vec<Letter>, Option<D>)>;

/// All surviving prefixes of length `depth` in lexicographic order. Dead ends
/// met on the way stay in place as leaves (state `None`) so they still
/// compete in the merge.
fn split<D: SuffixDetector, F: LetterFilter>(
    alphabet: &[Letter],
    filter: &F,
    root: D,
    depth: usize,
) -> (Frontier<D>, u64) {
    let mut frontier = vec![(Vec::new(), Some(root))];
    let mut nodes = 0u64;
    for _ in 0..depth {
        let mut next = Vec::new();
        for (word, state) in frontier {
            let Some(state) = state else {
                next.push((word, None));
                continue;
            };
            let mut grew = false;
            for &a in alphabet {
                if !filter.allows(&word, a) {
                    continue;
                }
                nodes += 1;
                let mut s = state.clone();
                if s.push(a) {
                    continue;
                }
                let mut w = word.clone();
                w.push(a);
                next.push((w, Some(s)));
                grew = true;
            }
            if !grew {
                next.push((word, None));
            }
        }
        frontier = next;
    }
    (frontier, nodes)
}

fn run_generic<D: SuffixDetector, F: LetterFilter>(
    alphabet: &[Letter],
    filter: &F,
    root: D,
    limits: Limits,
    parallel_depth: usize,
    threads: usize,
    observer: Option<Observer<'_>>,
) -> SearchResult {
    let max_len = limits.max_len.unwrap_or(usize::MAX);
    let shared = Shared {
        budget: limits.node_budget,
        spent: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        observer,
    };
    let depth = parallel_depth.min(max_len);
    let branch = if depth == 0 {
        explore(alphabet, filter, root, Vec::new(), max_len, &shared)
    } else {
        let (frontier, split_nodes) = split(alphabet, filter, root, depth);
        let search = || {
            frontier
                .into_par_iter()
                .map(|(prefix, state)| match state {
                    Some(state) => explore(alphabet, filter, state, prefix, max_len, &shared),
                    None => Branch {
                        best: prefix,
                        nodes: 0,
                        truncated: false,
                        aborted: false,
                    },
                })
                .reduce_with(Branch::merge)
        };
        let merged = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(search),
            Err(_) => search(),
        };
        let mut merged = merged.unwrap_or(Branch {
            best: Vec::new(),
            nodes: 0,
            truncated: false,
            aborted: false,
        });
        merged.nodes += split_nodes;
        merged
    };
    let aborted = branch.aborted || shared.exhausted.load(Ordering::Relaxed);
    SearchResult {
        l: branch.best.len(),
        witness: Word::new(branch.best),
        nodes_explored: branch.nodes,
        complete: !aborted && !branch.truncated,
    }
}

pub fn longest_avoiding(cfg: &SearchConfig) -> Result<SearchResult> {
    longest_avoiding_observed(cfg, None)
}

/// As [`longest_avoiding`], reporting progress to `observer` every few
/// million nodes.
pub fn longest_avoiding_observed(
    cfg: &SearchConfig,
    observer: Option<Observer<'_>>,
) -> Result<SearchResult> {
    cfg.validate()?;
    let alphabet: Vec<Letter> = (0..cfg.k).map(|a| a as Letter).collect();
    let root = IncrementalState::new(cfg.r, cfg.k)?;
    let limits = Limits {
        max_len: cfg.max_len,
        node_budget: cfg.node_budget,
    };
    let result = if cfg.symmetry {
        run_generic(
            &alphabet,
            &AffineCanonical { k: cfg.k },
            root,
            limits,
            cfg.parallel_depth,
            cfg.threads,
            observer,
        )
    } else {
        run_generic(
            &alphabet,
            &Unrestricted,
            root,
            limits,
            cfg.parallel_depth,
            cfg.threads,
            observer,
        )
    };
    if find_congruential_power(&result.witness, cfg.r, cfg.k)?.is_some() {
        return Err(Error::Internal(format!(
            "witness {} contains a congruential {}-power mod {}",
            result.witness, cfg.r, cfg.k
        )));
    }
    Ok(result)
}

/// Whether a pattern is known to be unavoidable over the given alphabet, so a
/// search over it terminates without caps.
fn known_bounded(alphabet: &[Letter], pattern: Pattern) -> bool {
    let size = alphabet.len();
    match pattern {
        Pattern::Congruential { .. } => true,
        Pattern::Square => size <= 2,
        Pattern::Abelian { r: 2 } => size <= 3,
        Pattern::Abelian { r: 3 } => size <= 2,
        Pattern::Abelian { .. } => size <= 1,
        // every abelian square is a sum-square
        Pattern::SumSquare => size <= 3,
        Pattern::AdjacentEqualSum => false,
    }
}

/// Longest word over an arbitrary integer alphabet (searched in the given
/// order) avoiding `pattern`. Patterns not known to be unavoidable over the
/// alphabet require at least one cap, and the result is then a lower bound.
pub fn longest_avoiding_custom(
    alphabet: &[Letter],
    pattern: Pattern,
    limits: Limits,
) -> Result<SearchResult> {
    let pattern = pattern.check()?;
    if alphabet.is_empty() {
        return argument("alphabet must be nonempty");
    }
    let mut seen = alphabet.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != alphabet.len() {
        return argument("alphabet letters must be distinct");
    }
    if limits.max_len == Some(0) || limits.node_budget == Some(0) {
        return argument("caps must be positive when present");
    }
    if !known_bounded(alphabet, pattern) && limits.max_len.is_none() && limits.node_budget.is_none()
    {
        return argument(format!(
            "pattern {pattern} is not known to be unavoidable over this alphabet; give --max-len or --budget"
        ));
    }
    let result = match pattern {
        Pattern::Square => run_generic(
            alphabet,
            &Unrestricted,
            SquareState::new(),
            limits,
            0,
            1,
            None,
        ),
        Pattern::Abelian { r } => run_generic(
            alphabet,
            &Unrestricted,
            AbelianState::new(r, alphabet)?,
            limits,
            0,
            1,
            None,
        ),
        Pattern::SumSquare => run_generic(
            alphabet,
            &Unrestricted,
            SumSquareState::new(),
            limits,
            0,
            1,
            None,
        ),
        Pattern::Congruential { r, k } => run_generic(
            alphabet,
            &Unrestricted,
            IncrementalState::new(r, k)?,
            limits,
            0,
            1,
            None,
        ),
        Pattern::AdjacentEqualSum => run_generic(
            alphabet,
            &Unrestricted,
            AdjacentSumState::new(),
            limits,
            0,
            1,
            None,
        ),
    };
    if pattern.detect(&result.witness)?.is_some() {
        return Err(Error::Internal(format!(
            "witness {} contains a {pattern} occurrence",
            result.witness
        )));
    }
    Ok(result)
}
