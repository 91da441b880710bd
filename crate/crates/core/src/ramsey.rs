//! Van der Waerden machinery.
//!
//! Monochromatic progressions in finite colorings, the two extraction
//! procedures that turn such progressions into congruential and abelian
//! powers, and brute-force evaluation of the small threshold quantities
//! `Omega(t, k)` and `w1(t, k)`.

use serde::Serialize;

use crate::detectors::{Occurrence, PatternKind};
use crate::error::{argument, Error, Result};
use crate::search::{longest_avoiding, SearchConfig};
use crate::word::{parikh, prefix_sums, Letter};

/// Finite coloring indexed from `base` (0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring<C> {
    pub base: usize,
    pub colors: Vec<C>,
}

impl<C: PartialEq> Coloring<C> {
    pub fn new(base: usize, colors: Vec<C>) -> Self {
        Coloring { base, colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, index: usize) -> Option<&C> {
        index
            .checked_sub(self.base)
            .and_then(|i| self.colors.get(i))
    }
}

/// `n, n + d, ..., n + (t-1) d`, all of one color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApWitness {
    pub n: usize,
    pub d: usize,
    pub t: usize,
}

impl ApWitness {
    pub fn validate<C: PartialEq>(&self, c: &Coloring<C>) -> bool {
        if self.d == 0 || self.t == 0 {
            return false;
        }
        let Some(first) = c.color(self.n) else {
            return false;
        };
        (1..self.t).all(|i| c.color(self.n + i * self.d) == Some(first))
    }
}

/// Monochromatic `t`-term progression with minimal start, then minimal
/// difference.
pub fn find_mono_ap<C: PartialEq>(c: &Coloring<C>, t: usize) -> Option<ApWitness> {
    let len = c.colors.len();
    let t = t.max(1);
    for n in 0..len {
        let mut d = 1;
        while n + (t - 1) * d < len {
            let first = &c.colors[n];
            if (1..t).all(|i| c.colors[n + i * d] == *first) {
                return Some(ApWitness {
                    n: n + c.base,
                    d,
                    t,
                });
            }
            if t == 1 {
                break;
            }
            d += 1;
        }
    }
    None
}

/// Running sums modulo `k`, indexed from 0 (`y[0] = 0`).
pub fn running_sum_coloring(w: &[Letter], k: u32) -> Coloring<u32> {
    Coloring::new(
        0,
        prefix_sums(w)
            .iter()
            .map(|&s| s.rem_euclid(i64::from(k)) as u32)
            .collect(),
    )
}

/// A congruential `r`-power with every block sum `= 0 (mod k)`, read off an
/// `(r+1)`-term monochromatic progression in the running-sum coloring.
/// `None` when the word is too short to contain such a progression.
pub fn extract_congruential(w: &[Letter], r: usize, k: u32) -> Result<Option<Occurrence>> {
    if r < 2 || k < 2 {
        return argument(format!(
            "extraction needs r >= 2 and k >= 2, got r={r} k={k}"
        ));
    }
    let y = running_sum_coloring(w, k);
    Ok(find_mono_ap(&y, r + 1).map(|ap| Occurrence {
        kind: PatternKind::Congruential,
        start: ap.n + 1,
        m: ap.d,
        r,
        sums: vec![0; r],
        modulus: Some(k),
    }))
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact rational vector `numerators / denominator`, kept in lowest terms so
/// the denominator is the lcm of the entries' reduced denominators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalVector {
    numerators: Vec<i64>,
    denominator: i64,
}

impl RationalVector {
    pub fn new(numerators: Vec<i64>, denominator: i64) -> Result<Self> {
        if denominator <= 0 {
            return argument("denominator must be positive");
        }
        let g = numerators.iter().fold(denominator, |g, &x| gcd(g, x));
        Ok(RationalVector {
            numerators: numerators.iter().map(|x| x / g).collect(),
            denominator: denominator / g,
        })
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_fractions(entries: &[(i64, i64)]) -> Result<Self> {
        if entries.iter().any(|&(_, d)| d <= 0) {
            return argument("denominators must be positive");
        }
        let lcm = entries.iter().fold(1i64, |l, &(_, d)| l / gcd(l, d) * d);
        Self::new(entries.iter().map(|&(n, d)| n * (lcm / d)).collect(), lcm)
    }

    /// `(1/k, ..., 1/k)`.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return argument("dimension must be positive");
        }
        Self::new(vec![1; k], k as i64)
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn sums_to_one(&self) -> bool {
        self.numerators.iter().sum::<i64>() == self.denominator
    }
}

fn check_gamma_args(w: &[Letter], v: &RationalVector) -> Result<()> {
    if !v.sums_to_one() {
        return argument(
            "entries of v must sum to exactly 1, otherwise the deviation from i*v is unbounded",
        );
    }
    parikh(w, v.dim())?;
    Ok(())
}

/// Colors index `i` in `0..=|w|` by `L * Gamma(i)`: the pairwise differences
/// `L (X_l - X_m)`, `l < m`, of the deviation `X = parikh(w[1..i]) - i v`,
/// with `L` the denominator of `v`. All arithmetic is exact.
pub fn gamma_coloring(w: &[Letter], v: &RationalVector) -> Result<Coloring<Vec<i64>>> {
    check_gamma_args(w, v)?;
    let k = v.dim();
    let den = v.denominator;
    let mut counts = vec![0i64; k];
    let mut colors = Vec::with_capacity(w.len() + 1);
    let color = |counts: &[i64], i: i64| -> Vec<i64> {
        let scaled: Vec<i64> = (0..k)
            .map(|j| den * counts[j] - i * v.numerators[j])
            .collect();
        let mut out = Vec::with_capacity(k * (k.saturating_sub(1)) / 2);
        for l in 0..k {
            for m in l + 1..k {
                out.push(scaled[l] - scaled[m]);
            }
        }
        out
    };
    colors.push(color(&counts, 0));
    for (i, &a) in w.iter().enumerate() {
        counts[a as usize] += 1;
        colors.push(color(&counts, i as i64 + 1));
    }
    Ok(Coloring::new(0, colors))
}

/// An abelian `alpha`-power `w[n+1..n+alpha*d]` read off an
/// `(alpha+1)`-term monochromatic progression in [`gamma_coloring`]; each
/// block's Parikh vector is exactly `d * v`.
pub fn extract_abelian_power(
    w: &[Letter],
    v: &RationalVector,
    alpha: usize,
) -> Result<Option<Occurrence>> {
    if alpha < 2 {
        return argument(format!("alpha must be at least 2, got {alpha}"));
    }
    let coloring = gamma_coloring(w, v)?;
    let Some(ap) = find_mono_ap(&coloring, alpha + 1) else {
        return Ok(None);
    };
    let (n, d) = (ap.n, ap.d);
    let den = v.denominator;
    for i in 0..alpha {
        let block = &w[n + i * d..n + (i + 1) * d];
        let counts = parikh(block, v.dim())?;
        let matches = counts
            .iter()
            .zip(&v.numerators)
            .all(|(&c, &num)| c as i64 * den == d as i64 * num);
        if !matches {
            return Err(Error::Internal(format!(
                "block {} of the extracted power has Parikh vector {:?}, not {d} * v",
                i + 1,
                counts.counts()
            )));
        }
    }
    Ok(Some(Occurrence {
        kind: PatternKind::Abelian,
        start: n + 1,
        m: d,
        r: alpha,
        sums: (0..alpha)
            .map(|i| {
                w[n + i * d..n + (i + 1) * d]
                    .iter()
                    .map(|&a| i64::from(a))
                    .sum()
            })
            .collect(),
        modulus: None,
    }))
}

/// Outcome of a capped brute-force threshold computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Threshold {
    /// The threshold, when it is at most the cap and the budget sufficed.
    pub value: Option<usize>,
    /// Longest structure-free configuration seen.
    pub longest_free: usize,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

pub const DEFAULT_CAP: usize = 25;
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Generic capped DFS over prefix-closed configurations; `choices(depth)`
/// lists the options for the next slot, `accept(depth, option)` tests the
/// extension and `undo` rolls it back.
struct Dfs {
    cap: usize,
    budget: u64,
    nodes: u64,
    best: usize,
    exhausted: bool,
    reached_cap: bool,
}

impl Dfs {
    fn new(cap: usize, budget: u64) -> Self {
        Dfs {
            cap,
            budget,
            nodes: 0,
            best: 0,
            exhausted: false,
            reached_cap: false,
        }
    }

    fn finish(self) -> Threshold {
        let value = if self.exhausted || self.reached_cap {
            None
        } else {
            Some(self.best + 1)
        };
        Threshold {
            value,
            longest_free: self.best,
            nodes: self.nodes,
            budget_exhausted: self.exhausted,
        }
    }
}

/// Whether the largest element `x` of `set` completes a `t`-term progression.
fn closes_ap(set: &[bool], x: usize, t: usize, below: &[usize]) -> bool {
    below.iter().any(|&y| {
        let d = x - y;
        (2..t).all(|i| i * d <= x && set[x - i * d])
    })
}

/// `Omega(t, k)`: least `n` such that every choice `x_i` in
/// `[(i-1)k+1, ik]`, `i = 1..n`, contains a `t`-term progression.
pub fn omega(t: usize, k: usize, n_cap: usize, node_budget: u64) -> Result<Threshold> {
    if t < 2 || k < 1 {
        return argument(format!("omega needs t >= 2 and k >= 1, got t={t} k={k}"));
    }
    let mut dfs = Dfs::new(n_cap, node_budget);
    let mut set = vec![false; n_cap * k + 1];
    let mut chosen: Vec<usize> = Vec::new();

    fn go(dfs: &mut Dfs, set: &mut [bool], chosen: &mut Vec<usize>, t: usize, k: usize) {
        let depth = chosen.len();
        dfs.best = dfs.best.max(depth);
        if depth >= dfs.cap {
            dfs.reached_cap = true;
            return;
        }
        for x in depth * k + 1..=(depth + 1) * k {
            if dfs.reached_cap || dfs.exhausted {
                return;
            }
            if dfs.nodes >= dfs.budget {
                dfs.exhausted = true;
                return;
            }
            dfs.nodes += 1;
            if t > 1 && closes_ap(set, x, t, chosen) {
                continue;
            }
            set[x] = true;
            chosen.push(x);
            go(dfs, set, chosen, t, k);
            chosen.pop();
            set[x] = false;
        }
    }

    go(&mut dfs, &mut set, &mut chosen, t, k);
    Ok(dfs.finish())
}

/// `w1(t, k)`: least `n` such that every red/blue coloring of `[1, n]` has a
/// red `t`-term progression or `k` consecutive blues.
pub fn w1(t: usize, k: usize, n_cap: usize, node_budget: u64) -> Result<Threshold> {
    if t < 2 || k < 1 {
        return argument(format!("w1 needs t >= 2 and k >= 1, got t={t} k={k}"));
    }
    let mut dfs = Dfs::new(n_cap, node_budget);
    let mut red = vec![false; n_cap + 1];
    let mut reds: Vec<usize> = Vec::new();

    fn go(
        dfs: &mut Dfs,
        red: &mut [bool],
        reds: &mut Vec<usize>,
        blue_run: usize,
        len: usize,
        t: usize,
        k: usize,
    ) {
        dfs.best = dfs.best.max(len);
        if len >= dfs.cap {
            dfs.reached_cap = true;
            return;
        }
        let x = len + 1;
        for is_red in [true, false] {
            if dfs.reached_cap || dfs.exhausted {
                return;
            }
            if dfs.nodes >= dfs.budget {
                dfs.exhausted = true;
                return;
            }
            dfs.nodes += 1;
            if is_red {
                if closes_ap(red, x, t, reds) {
                    continue;
                }
                red[x] = true;
                reds.push(x);
                go(dfs, red, reds, 0, x, t, k);
                reds.pop();
                red[x] = false;
            } else if blue_run + 1 < k {
                go(dfs, red, reds, blue_run + 1, x, t, k);
            }
        }
    }

    go(&mut dfs, &mut red, &mut reds, 0, 0, t, k);
    Ok(dfs.finish())
}

/// Both sides of `L(k, t) >= Omega(t+1, floor(k/2)) - 1`, with
/// `L(k, t) = l(t, k) + 1` taken from the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub k: u32,
    pub t: usize,
    /// Longest avoiding word length found; exact when `search_complete`.
    pub l: usize,
    pub search_complete: bool,
    /// `l + 1`; a lower bound on `L(k, t)` when the search was capped.
    pub big_l: usize,
    pub omega_t: usize,
    pub omega_k: usize,
    pub omega: Option<usize>,
    pub omega_complete: bool,
    /// `omega - 1`.
    pub bound: Option<usize>,
    /// `Some(true)` if the inequality is confirmed, `Some(false)` on a
    /// violation, `None` when a side could not be determined.
    pub holds: Option<bool>,
}

impl LemmaReport {
    pub fn violation(&self) -> bool {
        self.holds == Some(false)
    }
}

pub fn check_lemma_bounds(
    k: u32,
    t: usize,
    search_budget: Option<u64>,
    omega_cap: usize,
    omega_budget: u64,
) -> Result<LemmaReport> {
    if k < 2 || t < 2 {
        return argument(format!(
            "lemma check needs k >= 2 and t >= 2, got k={k} t={t}"
        ));
    }
    let mut cfg = SearchConfig::new(t, k);
    cfg.symmetry = true;
    cfg.node_budget = search_budget;
    let search = longest_avoiding(&cfg)?;
    let big_l = search.l + 1;

    let omega_k = (k / 2) as usize;
    let om = omega(t + 1, omega_k, omega_cap, omega_budget)?;
    let bound = om.value.map(|o| o - 1);

    // A capped search still gives a lower bound on L(k, t), which is enough
    // to confirm the inequality but not to refute it.
    let holds = match bound {
        Some(b) if big_l >= b => Some(true),
        Some(_) if search.complete => Some(false),
        _ => None,
    };
    Ok(LemmaReport {
        k,
        t,
        l: search.l,
        search_complete: search.complete,
        big_l,
        omega_t: t + 1,
        omega_k,
        omega: om.value,
        omega_complete: !om.budget_exhausted,
        bound,
        holds,
    })
}

/// Both sides of `w1(t, k) <= k * Omega(t, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct W1BoundReport {
    pub t: usize,
    pub k: usize,
    pub w1: Option<usize>,
    pub omega: Option<usize>,
    pub holds: Option<bool>,
}

pub fn check_w1_bound(t: usize, k: usize, n_cap: usize, node_budget: u64) -> Result<W1BoundReport> {
    let om = omega(t, k, n_cap, node_budget)?;
    let w = w1(t, k, n_cap.max(k * om.value.unwrap_or(0)), node_budget)?;
    let holds = match (w.value, om.value) {
        (Some(a), Some(b)) => Some(a <= k * b),
        _ => None,
    };
    Ok(W1BoundReport {
        t,
        k,
        w1: w.value,
        omega: om.value,
        holds,
    })
}
