use std::collections::HashMap;

use crate::error::{argument, Error, Result};
use crate::word::Letter;

/// Letter-at-a-time pattern test used by the backtracking search.
///
/// `push` reports whether the appended letter completes an occurrence ending
/// at the new last position. States are cloned to fork search branches.
pub trait SuffixDetector: Clone + Send {
    fn push(&mut self, letter: Letter) -> bool;
    fn pop(&mut self);
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Residue prefix sums for congruential `r`-powers modulo `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementalState {
    r: usize,
    k: u32,
    sums: Vec<u32>,
}

impl IncrementalState {
    pub fn new(r: usize, k: u32) -> Result<Self> {
        if r < 2 || k < 2 {
            return argument(format!(
                "congruential power needs r >= 2 and k >= 2, got r={r} k={k}"
            ));
        }
        let mut sums = Vec::with_capacity(128);
        sums.push(0);
        Ok(IncrementalState { r, k, sums })
    }

    pub fn from_word(w: &[Letter], r: usize, k: u32) -> Result<Self> {
        let mut state = Self::new(r, k)?;
        for &a in w {
            state.push(a);
        }
        Ok(state)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Value-style step: returns the extended state and whether the new letter
    /// completed a congruential power.
    pub fn extend_check(&self, next: Letter, r: usize, k: u32) -> Result<(Self, bool)> {
        if (r, k) != (self.r, self.k) {
            return Err(Error::Usage(format!(
                "state built for r={} k={} used with r={r} k={k}",
                self.r, self.k
            )));
        }
        let mut state = self.clone();
        let created = state.push(next);
        Ok((state, created))
    }

    #[inline]
    fn creates_power(&self) -> bool {
        let s = &self.sums;
        let n = s.len() - 1;
        let k = self.k;
        let diff = |a: u32, b: u32| if a >= b { a - b } else { a + k - b };
        let last = s[n];
        if self.r == 2 {
            for m in 1..=n / 2 {
                let mid = s[n - m];
                if diff(last, mid) == diff(mid, s[n - 2 * m]) {
                    return true;
                }
            }
            return false;
        }
        'len: for m in 1..=n / self.r {
            let d = diff(last, s[n - m]);
            for i in 1..self.r {
                if diff(s[n - i * m], s[n - (i + 1) * m]) != d {
                    continue 'len;
                }
            }
            return true;
        }
        false
    }
}

impl SuffixDetector for IncrementalState {
    #[inline]
    fn push(&mut self, letter: Letter) -> bool {
        let last = *self.sums.last().expect("never empty");
        let a = i64::from(letter).rem_euclid(i64::from(self.k)) as u32;
        let next = last + a;
        self.sums
            .push(if next >= self.k { next - self.k } else { next });
        self.creates_power()
    }

    #[inline]
    fn pop(&mut self) {
        debug_assert!(self.sums.len() > 1);
        self.sums.pop();
    }

    fn len(&self) -> usize {
        self.sums.len() - 1
    }
}

#[derive(Debug, Clone, Default)]
pub struct SquareState {
    letters: Vec<Letter>,
}

impl SquareState {
    pub fn new() -> Self {
        Self::default()
    }
}

impl SuffixDetector for SquareState {
    fn push(&mut self, letter: Letter) -> bool {
        self.letters.push(letter);
        let w = &self.letters;
        let n = w.len();
        (1..=n / 2).any(|m| w[n - 2 * m..n - m] == w[n - m..])
    }

    fn pop(&mut self) {
        self.letters.pop();
    }

    fn len(&self) -> usize {
        self.letters.len()
    }
}

/// Prefix Parikh counts over a fixed alphabet.
#[derive(Debug, Clone)]
pub struct AbelianState {
    r: usize,
    index: HashMap<Letter, usize>,
    width: usize,
    counts: Vec<u32>,
}

impl AbelianState {
    pub fn new(r: usize, alphabet: &[Letter]) -> Result<Self> {
        if r < 2 {
            return argument("abelian power needs r >= 2");
        }
        let mut index = HashMap::new();
        for &a in alphabet {
            let next = index.len();
            index.entry(a).or_insert(next);
        }
        let width = index.len();
        Ok(AbelianState {
            r,
            index,
            width,
            counts: vec![0; width],
        })
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.counts[i * self.width..(i + 1) * self.width]
    }
}

impl SuffixDetector for AbelianState {
    /// Panics if `letter` is not in the alphabet given to [`AbelianState::new`].
    fn push(&mut self, letter: Letter) -> bool {
        let n = self.len();
        let j = *self
            .index
            .get(&letter)
            .unwrap_or_else(|| panic!("letter {letter} outside the abelian alphabet"));
        self.counts.extend_from_within(n * self.width..);
        self.counts[(n + 1) * self.width + j] += 1;
        let n = n + 1;
        let d = self.width;
        'len: for m in 1..=n / self.r {
            for i in 0..self.r - 1 {
                let (a, b, c) = (
                    self.row(n - (i + 2) * m),
                    self.row(n - (i + 1) * m),
                    self.row(n - i * m),
                );
                if (0..d).any(|t| b[t] - a[t] != c[t] - b[t]) {
                    continue 'len;
                }
            }
            return true;
        }
        false
    }

    fn pop(&mut self) {
        let n = self.len();
        self.counts.truncate(n * self.width);
    }

    fn len(&self) -> usize {
        self.counts.len() / self.width.max(1) - 1
    }
}

/// Exact integer prefix sums for sum-squares.
#[derive(Debug, Clone)]
pub struct SumSquareState {
    sums: Vec<i64>,
}

impl Default for SumSquareState {
    fn default() -> Self {
        SumSquareState { sums: vec![0] }
    }
}

impl SumSquareState {
    pub fn new() -> Self {
        Self::default()
    }
}

impl SuffixDetector for SumSquareState {
    fn push(&mut self, letter: Letter) -> bool {
        let next = self.sums.last().expect("never empty") + i64::from(letter);
        self.sums.push(next);
        let s = &self.sums;
        let n = s.len() - 1;
        (1..=n / 2).any(|m| s[n] - s[n - m] == s[n - m] - s[n - 2 * m])
    }

    fn pop(&mut self) {
        self.sums.pop();
    }

    fn len(&self) -> usize {
        self.sums.len() - 1
    }
}

/// Prefix sums plus a value -> positions index for adjacent equal-nonzero-sum
/// pairs `x x'` of unrestricted lengths.
#[derive(Debug, Clone)]
pub struct AdjacentSumState {
    sums: Vec<i64>,
    positions: HashMap<i64, Vec<usize>>,
}

impl Default for AdjacentSumState {
    fn default() -> Self {
        AdjacentSumState {
            sums: vec![0],
            positions: HashMap::from([(0, vec![0])]),
        }
    }
}

impl AdjacentSumState {
    pub fn new() -> Self {
        Self::default()
    }
}

impl SuffixDetector for AdjacentSumState {
    fn push(&mut self, letter: Letter) -> bool {
        let n = self.sums.len();
        let end = self.sums[n - 1] + i64::from(letter);
        self.sums.push(end);
        // V[t], V[j], V[n] in progression with t < j < n and V[j] != V[n].
        let created = (1..n).any(|j| {
            let mid = self.sums[j];
            mid != end
                && self
                    .positions
                    .get(&(2 * mid - end))
                    .and_then(|p| p.first())
                    .is_some_and(|&t| t < j)
        });
        self.positions.entry(end).or_default().push(n);
        created
    }

    fn pop(&mut self) {
        let end = self.sums.pop().expect("never empty");
        assert!(!self.sums.is_empty(), "pop on empty state");
        if let Some(p) = self.positions.get_mut(&end) {
            p.pop();
            if p.is_empty() {
                self.positions.remove(&end);
            }
        }
    }

    fn len(&self) -> usize {
        self.sums.len() - 1
    }
}
