//! Pattern detectors.
//!
//! Every `find_*` function returns the occurrence with the smallest end
//! position, breaking ties by the smallest block length, so results are
//! reproducible. Positions in reports are 1-based.

mod incremental;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{argument, Error, Result};
use crate::word::{prefix_sums, Letter};

pub use incremental::{
    AbelianState, AdjacentSumState, IncrementalState, SquareState, SuffixDetector, SumSquareState,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    Square,
    Abelian,
    SumSquare,
    Congruential,
}

/// A factor `x_1 x_2 ... x_r` with `|x_i| = m`, located in a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub kind: PatternKind,
    /// 1-based position of the first letter of `x_1`.
    pub start: usize,
    pub m: usize,
    pub r: usize,
    /// Block sums; residues in `[0, k)` for congruential occurrences.
    pub sums: Vec<i64>,
    #[serde(skip)]
    pub modulus: Option<u32>,
}

impl Occurrence {
    /// 1-based position of the last letter.
    pub fn end(&self) -> usize {
        self.start + self.r * self.m - 1
    }

    pub fn block<'w>(&self, w: &'w [Letter], i: usize) -> &'w [Letter] {
        let s = self.start - 1 + i * self.m;
        &w[s..s + self.m]
    }

    /// Re-checks the occurrence against `w` from scratch.
    pub fn validate(&self, w: &[Letter]) -> bool {
        if self.start == 0 || self.m == 0 || self.r < 2 || self.end() > w.len() {
            return false;
        }
        if self.sums.len() != self.r {
            return false;
        }
        let blocks: Vec<&[Letter]> = (0..self.r).map(|i| self.block(w, i)).collect();
        let raw: Vec<i64> = blocks.iter().map(|b| block_sum(b)).collect();
        match self.kind {
            PatternKind::Square => raw == self.sums && blocks.iter().all(|b| *b == blocks[0]),
            PatternKind::Abelian => {
                let sorted = |b: &[Letter]| {
                    let mut v = b.to_vec();
                    v.sort_unstable();
                    v
                };
                let first = sorted(blocks[0]);
                raw == self.sums && blocks.iter().all(|b| sorted(b) == first)
            }
            PatternKind::SumSquare => raw == self.sums && raw.iter().all(|&s| s == raw[0]),
            PatternKind::Congruential => {
                let Some(k) = self.modulus else {
                    return false;
                };
                let k = i64::from(k);
                let res: Vec<i64> = raw.iter().map(|s| s.rem_euclid(k)).collect();
                res == self.sums && res.iter().all(|&s| s == res[0])
            }
        }
    }
}

/// Adjacent factors `w[i..j]` and `w[j+1..j']` with the same nonzero sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacentPairOccurrence {
    pub i: usize,
    pub j: usize,
    pub j_prime: usize,
    pub common_sum: i64,
}

impl AdjacentPairOccurrence {
    pub fn validate(&self, w: &[Letter]) -> bool {
        if self.i == 0 || self.i > self.j || self.j >= self.j_prime || self.j_prime > w.len() {
            return false;
        }
        let left = block_sum(&w[self.i - 1..self.j]);
        let right = block_sum(&w[self.j..self.j_prime]);
        left == right && left == self.common_sum && left != 0
    }
}

fn block_sum(b: &[Letter]) -> i64 {
    b.iter().map(|&a| i64::from(a)).sum()
}

fn residue(x: i64, k: u32) -> u32 {
    x.rem_euclid(i64::from(k)) as u32
}

/// Earliest `(end, m)` occurrence of `r` adjacent blocks of length `m` where
/// `equal(q, m)` says the blocks starting at 0-based `q` and `q + m` agree.
/// Returns the 0-based start and block length.
fn earliest_block_run<F>(n: usize, r: usize, mut equal: F) -> Option<(usize, usize)>
where
    F: FnMut(usize, usize) -> bool,
{
    let mut best: Option<(usize, usize, usize)> = None;
    let mut run = vec![0usize; n];
    for m in 1..=n / r {
        let best_end = best.map_or(usize::MAX, |b| b.0);
        if r * m >= best_end {
            break;
        }
        // q is the start of the last two blocks; the occurrence ends at q + 2m.
        let first_q = (r - 2) * m;
        for q in 0..=n - 2 * m {
            let end = q + 2 * m;
            if end >= best_end {
                break;
            }
            run[q] = if equal(q, m) {
                1 + if q >= m { run[q - m] } else { 0 }
            } else {
                0
            };
            if q >= first_q && run[q] >= r - 1 {
                best = Some((end, m, q - first_q));
                break;
            }
        }
    }
    best.map(|(_, m, s)| (s, m))
}

pub fn find_square(w: &[Letter]) -> Option<Occurrence> {
    let n = w.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for m in 1..=n / 2 {
        let best_end = best.map_or(usize::MAX, |b| b.0);
        if 2 * m >= best_end {
            break;
        }
        let mut run = 0usize;
        for i in 0..n - m {
            // A square w[s..s+2m) ends at s + 2m = i + m + 1 once run reaches m.
            if i + m + 1 >= best_end {
                break;
            }
            if w[i] == w[i + m] {
                run += 1;
                if run >= m {
                    best = Some((i + m + 1, m, i + 1 - m));
                    break;
                }
            } else {
                run = 0;
            }
        }
    }
    best.map(|(_, m, s)| {
        let sum = block_sum(&w[s..s + m]);
        Occurrence {
            kind: PatternKind::Square,
            start: s + 1,
            m,
            r: 2,
            sums: vec![sum, sum],
            modulus: None,
        }
    })
}

pub fn find_abelian_power(w: &[Letter], r: usize) -> Result<Option<Occurrence>> {
    if r < 2 {
        return argument(format!("abelian power needs r >= 2, got {r}"));
    }
    let n = w.len();
    let mut index: HashMap<Letter, usize> = HashMap::new();
    for &a in w {
        let next = index.len();
        index.entry(a).or_insert(next);
    }
    let d = index.len();
    // counts[i * d + j]: occurrences of letter j among the first i letters.
    let mut counts = vec![0u32; (n + 1) * d];
    for (i, a) in w.iter().enumerate() {
        let (prev, cur) = counts.split_at_mut((i + 1) * d);
        cur[..d].copy_from_slice(&prev[i * d..]);
        cur[index[a]] += 1;
    }
    let found = earliest_block_run(n, r, |q, m| {
        let a = &counts[q * d..(q + 1) * d];
        let b = &counts[(q + m) * d..(q + m + 1) * d];
        let c = &counts[(q + 2 * m) * d..(q + 2 * m + 1) * d];
        (0..d).all(|j| b[j] - a[j] == c[j] - b[j])
    });
    Ok(found.map(|(s, m)| Occurrence {
        kind: PatternKind::Abelian,
        start: s + 1,
        m,
        r,
        sums: (0..r)
            .map(|i| block_sum(&w[s + i * m..s + (i + 1) * m]))
            .collect(),
        modulus: None,
    }))
}

pub fn find_sum_square(w: &[Letter]) -> Option<Occurrence> {
    let ps = prefix_sums(w);
    earliest_block_run(w.len(), 2, |q, m| {
        ps[q + m] - ps[q] == ps[q + 2 * m] - ps[q + m]
    })
    .map(|(s, m)| {
        let sum = ps.range(s, s + m);
        Occurrence {
            kind: PatternKind::SumSquare,
            start: s + 1,
            m,
            r: 2,
            sums: vec![sum, sum],
            modulus: None,
        }
    })
}

pub fn find_congruential_power(w: &[Letter], r: usize, k: u32) -> Result<Option<Occurrence>> {
    if r < 2 {
        return argument(format!("congruential power needs r >= 2, got {r}"));
    }
    if k < 2 {
        return argument(format!("congruential power needs k >= 2, got {k}"));
    }
    let res: Vec<u32> = prefix_sums(w).iter().map(|&s| residue(s, k)).collect();
    let diff = |a: u32, b: u32| if a >= b { a - b } else { a + k - b };
    Ok(earliest_block_run(w.len(), r, |q, m| {
        diff(res[q + m], res[q]) == diff(res[q + 2 * m], res[q + m])
    })
    .map(|(s, m)| {
        let sum = diff(res[s + m], res[s]);
        Occurrence {
            kind: PatternKind::Congruential,
            start: s + 1,
            m,
            r,
            sums: vec![i64::from(sum); r],
            modulus: Some(k),
        }
    }))
}

/// Adjacent factors `x x'` (any lengths) with `sum(x) = sum(x') != 0`.
///
/// Such a pair is a 3-term progression `V[i-1], V[j], V[j']` in the prefix
/// sums with nonzero difference, so for each `(i, j')` only the middle value
/// needs a lookup. Minimal `j'` first, then minimal `i`, then minimal `j`.
pub fn find_adjacent_equal_nonzero_sum(w: &[Letter]) -> Option<AdjacentPairOccurrence> {
    let ps = prefix_sums(w);
    let n = w.len();
    let mut positions: HashMap<i64, Vec<usize>> = HashMap::new();
    for (idx, &v) in ps.iter().enumerate() {
        positions.entry(v).or_default().push(idx);
    }
    for jp in 2..=n {
        let end = ps[jp];
        for i in 1..jp {
            let start = ps[i - 1];
            let twice_mid = start + end;
            if start == end || twice_mid % 2 != 0 {
                continue;
            }
            let Some(list) = positions.get(&(twice_mid / 2)) else {
                continue;
            };
            let at = list.partition_point(|&p| p < i);
            if let Some(&j) = list.get(at).filter(|&&j| j < jp) {
                return Some(AdjacentPairOccurrence {
                    i,
                    j,
                    j_prime: jp,
                    common_sum: ps[j] - start,
                });
            }
        }
    }
    None
}

/// A pattern class with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    Square,
    Abelian { r: usize },
    SumSquare,
    Congruential { r: usize, k: u32 },
    AdjacentEqualSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Detection {
    Blocks(Occurrence),
    Pair(AdjacentPairOccurrence),
}

impl Detection {
    pub fn validate(&self, w: &[Letter]) -> bool {
        match self {
            Detection::Blocks(o) => o.validate(w),
            Detection::Pair(p) => p.validate(w),
        }
    }
}

impl Pattern {
    pub fn check(self) -> Result<Self> {
        match self {
            Pattern::Abelian { r } if r < 2 => argument("abelian power needs r >= 2"),
            Pattern::Congruential { r, .. } if r < 2 => argument("congruential power needs r >= 2"),
            Pattern::Congruential { k, .. } if k < 2 => argument("congruential power needs k >= 2"),
            p => Ok(p),
        }
    }

    pub fn detect(self, w: &[Letter]) -> Result<Option<Detection>> {
        Ok(match self {
            Pattern::Square => find_square(w).map(Detection::Blocks),
            Pattern::Abelian { r } => find_abelian_power(w, r)?.map(Detection::Blocks),
            Pattern::SumSquare => find_sum_square(w).map(Detection::Blocks),
            Pattern::Congruential { r, k } => {
                find_congruential_power(w, r, k)?.map(Detection::Blocks)
            }
            Pattern::AdjacentEqualSum => find_adjacent_equal_nonzero_sum(w).map(Detection::Pair),
        })
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| -> Result<u64> {
            t.parse()
                .map_err(|_| Error::Argument(format!("bad number {t:?} in pattern {s:?}")))
        };
        let pattern = match parts.as_slice() {
            ["square"] => Pattern::Square,
            ["sum-square"] => Pattern::SumSquare,
            ["adjacent-equal-sum"] => Pattern::AdjacentEqualSum,
            ["abelian", r] => Pattern::Abelian {
                r: num(r)? as usize,
            },
            ["congruential", r, k] => Pattern::Congruential {
                r: num(r)? as usize,
                k: u32::try_from(num(k)?)
                    .map_err(|_| Error::Argument(format!("modulus too large in {s:?}")))?,
            },
            _ => return argument(format!("unknown pattern {s:?}")),
        };
        pattern.check()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Square => write!(f, "square"),
            Pattern::Abelian { r } => write!(f, "abelian:{r}"),
            Pattern::SumSquare => write!(f, "sum-square"),
            Pattern::Congruential { r, k } => write!(f, "congruential:{r}:{k}"),
            Pattern::AdjacentEqualSum => write!(f, "adjacent-equal-sum"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occ(o: Option<Occurrence>) -> Option<(usize, usize, usize)> {
        o.map(|o| (o.start, o.m, o.r))
    }

    #[test]
    fn square_examples() {
        assert_eq!(occ(find_square(&[0, 1, 0, 1])), Some((1, 2, 2)));
        assert_eq!(find_square(&[0, 1, 0, 2, 0, 1, 0]), None);
        assert_eq!(find_square(&[]), None);
        // end position wins over block length
        assert_eq!(occ(find_square(&[0, 1, 2, 0, 1, 2, 2])), Some((1, 3, 2)));
        assert_eq!(occ(find_square(&[0, 1, 2, 0, 1, 1])), Some((5, 1, 2)));
        assert_eq!(occ(find_square(&[1, 0, 1, 0, 0])), Some((1, 2, 2)));
    }

    #[test]
    fn abelian_examples() {
        // `11` ends before `0110` does
        assert_eq!(
            occ(find_abelian_power(&[0, 1, 1, 0], 2).unwrap()),
            Some((2, 1, 2))
        );
        assert_eq!(
            occ(find_abelian_power(&[0, 1, 2, 1, 0, 2], 2).unwrap()),
            Some((1, 3, 2))
        );
        assert_eq!(
            occ(find_abelian_power(&[0, 1, 1, 0, 1, 0], 3).unwrap()),
            Some((1, 2, 3))
        );
        assert_eq!(find_abelian_power(&[0, 1, 2], 2).unwrap(), None);
        assert!(find_abelian_power(&[0], 1).is_err());
    }

    #[test]
    fn sum_square_examples() {
        let o = find_sum_square(&[1, 2, 3, 0]).unwrap();
        assert_eq!((o.start, o.m, o.sums.clone()), (1, 2, vec![3, 3]));
        assert!(o.validate(&[1, 2, 3, 0]));
        assert_eq!(find_sum_square(&[1, -1]), None);
        assert_eq!(find_sum_square(&[0]), None);
    }

    #[test]
    fn congruential_examples() {
        assert_eq!(find_congruential_power(&[0, 1, 0], 2, 2).unwrap(), None);
        let o = find_congruential_power(&[0, 1, 0, 0], 2, 2)
            .unwrap()
            .unwrap();
        assert_eq!((o.start, o.m, o.sums.clone()), (3, 1, vec![0, 0]));
        // 12|00 and 0|0 both end at 4; the shorter blocks win
        let o = find_congruential_power(&[1, 2, 0, 0], 2, 3)
            .unwrap()
            .unwrap();
        assert_eq!((o.start, o.m, o.sums.clone()), (3, 1, vec![0, 0]));
        let o = find_congruential_power(&[0, 2, 0, 2], 2, 3)
            .unwrap()
            .unwrap();
        assert_eq!((o.start, o.m, o.sums.clone()), (1, 2, vec![2, 2]));
        assert!(o.validate(&[0, 2, 0, 2]));
        assert!(find_congruential_power(&[0], 1, 2).is_err());
        assert!(find_congruential_power(&[0], 2, 1).is_err());
    }

    #[test]
    fn congruential_handles_negative_letters() {
        let w = [-1, 2, 0];
        let o = find_congruential_power(&w, 2, 3).unwrap().unwrap();
        // -1 = 2 (mod 3)
        assert_eq!((o.start, o.m, o.sums.clone()), (1, 1, vec![2, 2]));
        assert!(o.validate(&w));
    }

    #[test]
    fn adjacent_pair_examples() {
        assert_eq!(
            find_adjacent_equal_nonzero_sum(&[1, 2, 3]),
            Some(AdjacentPairOccurrence {
                i: 1,
                j: 2,
                j_prime: 3,
                common_sum: 3
            })
        );
        assert_eq!(find_adjacent_equal_nonzero_sum(&[0, 0]), None);
        assert_eq!(find_adjacent_equal_nonzero_sum(&[]), None);
    }

    #[test]
    fn pattern_parsing() {
        assert_eq!("square".parse::<Pattern>().unwrap(), Pattern::Square);
        assert_eq!(
            "abelian:3".parse::<Pattern>().unwrap(),
            Pattern::Abelian { r: 3 }
        );
        assert_eq!(
            "congruential:2:5".parse::<Pattern>().unwrap(),
            Pattern::Congruential { r: 2, k: 5 }
        );
        assert!("congruential:1:5".parse::<Pattern>().is_err());
        assert!("cube".parse::<Pattern>().is_err());
        for p in [
            "square",
            "abelian:2",
            "sum-square",
            "congruential:3:4",
            "adjacent-equal-sum",
        ] {
            assert_eq!(p.parse::<Pattern>().unwrap().to_string(), p);
        }
    }

    #[test]
    fn tampered_occurrences_fail_validation() {
        let w = [0, 1, 0, 1];
        let mut o = find_square(&w).unwrap();
        assert!(o.validate(&w));
        o.start = 2;
        assert!(!o.validate(&w));
    }
}
