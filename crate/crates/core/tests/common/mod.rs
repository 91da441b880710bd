//! Brute-force reference implementations shared by the integration tests.
//! They follow the definitions literally and share no code with the library.

#![allow(dead_code)]

use avoidance::Letter;
use rand::rngs::StdRng;
use rand::Rng;

fn sum(b: &[Letter]) -> i64 {
    b.iter().map(|&a| i64::from(a)).sum()
}

/// First `(start, m)` (1-based start) of `r` adjacent length-`m` blocks
/// accepted by `same`, ordered by end position and then by `m`.
pub fn naive_power(
    w: &[Letter],
    r: usize,
    same: impl Fn(&[&[Letter]]) -> bool,
) -> Option<(usize, usize)> {
    for end in 1..=w.len() {
        for m in 1..=end / r {
            let s = end - r * m;
            let blocks: Vec<&[Letter]> = (0..r).map(|i| &w[s + i * m..s + (i + 1) * m]).collect();
            if same(&blocks) {
                return Some((s + 1, m));
            }
        }
    }
    None
}

pub fn naive_square(w: &[Letter]) -> Option<(usize, usize)> {
    naive_power(w, 2, |b| b[0] == b[1])
}

pub fn naive_abelian(w: &[Letter], r: usize) -> Option<(usize, usize)> {
    naive_power(w, r, |b| {
        let sorted = |x: &[Letter]| {
            let mut v = x.to_vec();
            v.sort();
            v
        };
        b.iter().all(|x| sorted(x) == sorted(b[0]))
    })
}

pub fn naive_sum_square(w: &[Letter]) -> Option<(usize, usize)> {
    naive_power(w, 2, |b| sum(b[0]) == sum(b[1]))
}

pub fn naive_congruential(w: &[Letter], r: usize, k: u32) -> Option<(usize, usize)> {
    let k = i64::from(k);
    naive_power(w, r, |b| {
        b.iter()
            .all(|x| sum(x).rem_euclid(k) == sum(b[0]).rem_euclid(k))
    })
}

/// Adjacent `w[i..j] w[j+1..j']` with equal nonzero sums, minimal `j'`, then
/// `i`, then `j` (all 1-based).
pub fn naive_adjacent(w: &[Letter]) -> Option<(usize, usize, usize)> {
    for jp in 2..=w.len() {
        for i in 1..jp {
            for j in i..jp {
                let left = sum(&w[i - 1..j]);
                let right = sum(&w[j..jp]);
                if left == right && left != 0 {
                    return Some((i, j, jp));
                }
            }
        }
    }
    None
}

/// Random word of length at most `max_len` over `size` consecutive integers
/// starting at `low`.
pub fn random_word(rng: &mut StdRng, max_len: usize, low: i8, size: i8) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| low + rng.gen_range(0..size)).collect()
}

/// All words of length `n` over `0..k` in lexicographic order.
pub fn all_words(n: usize, k: u32) -> impl Iterator<Item = Vec<Letter>> {
    let total = (k as u64).pow(n as u32);
    (0..total).map(move |mut x| {
        let mut w = vec![0; n];
        for slot in w.iter_mut().rev() {
            *slot = (x % u64::from(k)) as Letter;
            x /= u64::from(k);
        }
        w
    })
}

/// Smallest `n` such that every choice `x_i in [(i-1)k+1, ik]`, `i <= n`,
/// contains a `t`-term progression, by plain enumeration of all `k^n`
/// choice vectors. `None` if not reached by `cap`.
pub fn brute_omega(t: usize, k: u64, cap: usize) -> Option<usize> {
    (1..=cap).find(|&n| {
        (0..k.pow(n as u32)).all(|mut code| {
            let xs: Vec<u64> = (0..n as u64)
                .map(|i| {
                    let off = code % k;
                    code /= k;
                    i * k + 1 + off
                })
                .collect();
            has_progression(&xs, t)
        })
    })
}

/// Smallest `n` such that every 2-coloring of `[1, n]` has a `t`-term
/// progression in the first color or `k` consecutive integers in the second,
/// by enumeration of all `2^n` colorings.
pub fn brute_w1(t: usize, k: usize, cap: usize) -> Option<usize> {
    (1..=cap).find(|&n| {
        (0..1u64 << n).all(|mask| {
            let first: Vec<u64> = (0..n as u64)
                .filter(|&i| mask >> i & 1 == 0)
                .map(|i| i + 1)
                .collect();
            let mut run = 0;
            let mut long_run = false;
            for i in 0..n {
                run = if mask >> i & 1 == 1 { run + 1 } else { 0 };
                long_run |= run >= k;
            }
            long_run || has_progression(&first, t)
        })
    })
}

/// Whether the increasing sequence `xs` contains a `t`-term progression,
/// `t >= 3`.
pub fn has_progression(xs: &[u64], t: usize) -> bool {
    let set: std::collections::HashSet<u64> = xs.iter().copied().collect();
    for (a, &x) in xs.iter().enumerate() {
        for &y in &xs[a + 1..] {
            let d = y - x;
            if (2..t as u64).all(|j| set.contains(&(x + j * d))) {
                return true;
            }
        }
    }
    false
}
