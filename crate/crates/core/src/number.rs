//! Small-prime number theory and the quadratic-plus-geometric construction
//! of long words avoiding congruential squares modulo a prime.

use serde::Serialize;

use crate::detectors::find_congruential_power;
use crate::error::{argument, Error, Result};
use crate::word::{Letter, Word};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = u128::from(modulus);
    let mut b = u128::from(base) % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return argument(format!("{p} is not prime"));
    }
    Ok(())
}

fn require_unit(x: u64, p: u64) -> Result<()> {
    if x == 0 || x >= p {
        return argument(format!("{x} is not in [1, {p})"));
    }
    Ok(())
}

/// Multiplicative order of `x` modulo the prime `p`.
pub fn element_order(x: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    require_unit(x, p)?;
    let mut acc = x;
    let mut order = 1;
    while acc != 1 {
        acc = acc * x % p;
        order += 1;
    }
    Ok(order)
}

/// Smallest generator of the multiplicative group modulo `p`.
pub fn find_generator(p: u64) -> Result<u64> {
    require_prime(p)?;
    for g in 1..p {
        if element_order(g, p)? == p - 1 {
            return Ok(g);
        }
    }
    Err(Error::Internal(format!("no generator found modulo {p}")))
}

/// Euler's criterion for an odd prime `p`.
pub fn is_qr(a: u64, p: u64) -> Result<bool> {
    require_prime(p)?;
    require_unit(a, p)?;
    if p == 2 {
        return Ok(true);
    }
    Ok(mod_pow(a, (p - 1) / 2, p) == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PengParams {
    pub p: u64,
    /// Smallest generator modulo `p`.
    pub g: u64,
    /// `g^2 mod p`, of order `(p - 1) / 2`.
    pub c: u64,
    /// Smallest residue in `[1, p)` that is a quadratic residue when
    /// `p = 5, 7 (mod 8)` and a non-residue when `p = 1, 3 (mod 8)`.
    pub a: u64,
    pub word_len: u64,
}

/// Builds the length `p^2 - p - 1` word `f(k) = e(k+1) - e(k) mod p` where
/// `e(k) = c^k + a k^2 mod p`, and confirms it has no congruential square
/// modulo `p`. Letters must fit a [`Letter`], so `p <= 127`.
pub fn construct_peng(p: u64) -> Result<(PengParams, Word)> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return argument(format!("p must be an odd prime, got {p}"));
    }
    if p > 127 {
        return argument(format!("p = {p} exceeds the letter range (p <= 127)"));
    }
    let g = find_generator(p)?;
    let c = g * g % p;
    let want_residue = matches!(p % 8, 5 | 7);
    let mut a = None;
    for cand in 1..p {
        if is_qr(cand, p)? == want_residue {
            a = Some(cand);
            break;
        }
    }
    let a = a.ok_or_else(|| Error::Internal(format!("no suitable a modulo {p}")))?;

    let len = p * p - p - 1;
    // e(k) for k = 1..=p^2 - p
    let mut e = Vec::with_capacity(len as usize + 1);
    let mut ck = c;
    for k in 1..=p * p - p {
        let kk = k % p;
        e.push((ck + a * kk % p * kk) % p);
        ck = ck * c % p;
    }
    let word: Word = e
        .windows(2)
        .map(|w| ((w[1] + p - w[0]) % p) as Letter)
        .collect();
    debug_assert_eq!(word.len() as u64, len);

    if let Some(o) = find_congruential_power(&word, 2, p as u32)? {
        return Err(Error::Internal(format!(
            "constructed word for p = {p} contains a congruential square at {} (block length {})",
            o.start, o.m
        )));
    }
    Ok((
        PengParams {
            p,
            g,
            c,
            a,
            word_len: len,
        },
        word,
    ))
}
