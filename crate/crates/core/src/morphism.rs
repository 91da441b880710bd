//! Morphisms and codings over small named alphabets, fixed-point prefixes,
//! and checks of the four-letter construction whose coded fixed point is
//! squarefree with running sums confined to `{0, 1}`.

use std::collections::{BTreeMap, HashSet};

use crate::detectors::{find_adjacent_equal_nonzero_sum, find_square};
use crate::error::{argument, Error, Result};
use crate::report::{Check, Report};
use crate::word::{prefix_sums, Letter, Word};

/// Internal value of the primed zero `0'`, kept distinct from `0` until a
/// coding identifies them.
pub const ZERO_PRIME: Letter = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub letter: Letter,
    pub name: String,
}

impl Symbol {
    fn plain(letter: Letter) -> Self {
        Symbol {
            letter,
            name: letter.to_string(),
        }
    }
}

fn name_of(alphabet: &[Symbol], letter: Letter) -> String {
    alphabet
        .iter()
        .find(|s| s.letter == letter)
        .map_or_else(|| letter.to_string(), |s| s.name.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    name: String,
    alphabet: Vec<Symbol>,
    images: BTreeMap<Letter, Word>,
}

impl Morphism {
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<Symbol>,
        images: BTreeMap<Letter, Word>,
    ) -> Result<Self> {
        let known: HashSet<Letter> = alphabet.iter().map(|s| s.letter).collect();
        if known.len() != alphabet.len() {
            return argument("alphabet letters must be distinct");
        }
        for s in &alphabet {
            let image = images
                .get(&s.letter)
                .ok_or_else(|| Error::Argument(format!("no image for letter {}", s.name)))?;
            if let Some(&bad) = image.iter().find(|a| !known.contains(a)) {
                return argument(format!(
                    "image of {} uses letter {bad} outside the alphabet",
                    s.name
                ));
            }
        }
        if let Some(extra) = images.keys().find(|a| !known.contains(a)) {
            return argument(format!(
                "image given for letter {extra} outside the alphabet"
            ));
        }
        Ok(Morphism {
            name: name.into(),
            alphabet,
            images,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn image(&self, letter: Letter) -> Result<&Word> {
        self.images
            .get(&letter)
            .ok_or_else(|| Error::UnknownLetter(name_of(&self.alphabet, letter)))
    }

    pub fn is_prolongable(&self, letter: Letter) -> bool {
        self.images
            .get(&letter)
            .is_some_and(|img| img.len() >= 2 && img[0] == letter)
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        let mut out = Word::empty();
        for &a in w {
            out.extend_from_slice(self.image(a)?);
        }
        Ok(out)
    }

    /// `m^n(w)`.
    pub fn power(&self, w: &[Letter], n: usize) -> Result<Word> {
        let mut cur = Word::from(w);
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// The length-`n` prefix of the fixed point `m^ω(seed)`.
    ///
    /// The fixed point is produced left to right: the image of the `i`-th
    /// letter is appended once the first `i` letters are known, which works
    /// for images of unequal lengths.
    pub fn fixed_point_prefix(&self, seed: Letter, n: usize) -> Result<Word> {
        if !self.is_prolongable(seed) {
            return argument(format!(
                "{} is not prolongable on {}",
                self.name,
                name_of(&self.alphabet, seed)
            ));
        }
        let mut out: Vec<Letter> = self.image(seed)?.to_vec();
        let mut i = 1;
        while out.len() < n {
            if i >= out.len() {
                return argument(format!(
                    "{} has a finite fixed point on its seed",
                    self.name
                ));
            }
            let image = self.image(out[i])?;
            out.extend_from_slice(image);
            i += 1;
        }
        out.truncate(n);
        Ok(Word::new(out))
    }

    /// Space-separated letter names, e.g. `0 1 0' -1`.
    pub fn render(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|&a| name_of(&self.alphabet, a))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A letter-to-letter map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coding {
    name: String,
    alphabet: Vec<Symbol>,
    map: BTreeMap<Letter, Letter>,
}

impl Coding {
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<Symbol>,
        map: BTreeMap<Letter, Letter>,
    ) -> Result<Self> {
        if let Some(s) = alphabet.iter().find(|s| !map.contains_key(&s.letter)) {
            return argument(format!("coding is not defined on {}", s.name));
        }
        Ok(Coding {
            name: name.into(),
            alphabet,
            map,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        w.iter()
            .map(|a| {
                self.map
                    .get(a)
                    .copied()
                    .ok_or_else(|| Error::UnknownLetter(name_of(&self.alphabet, *a)))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }
}

fn signed_alphabet(with_prime: bool) -> Vec<Symbol> {
    let mut v = vec![Symbol::plain(-1), Symbol::plain(0), Symbol::plain(1)];
    if with_prime {
        v.push(Symbol {
            letter: ZERO_PRIME,
            name: "0'".into(),
        });
    }
    v
}

fn build(name: &str, with_prime: bool, images: &[(Letter, &[Letter])]) -> Morphism {
    let images = images
        .iter()
        .map(|&(a, img)| (a, Word::from(img)))
        .collect();
    Morphism::new(name, signed_alphabet(with_prime), images)
        .expect("built-in morphism is well formed")
}

const P: Letter = ZERO_PRIME;

/// `0 -> 0 1 0' -1`, `1 -> 0 1 -1 1`, `0' -> 0' -1 0 1`, `-1 -> 0' -1 1 -1`.
pub fn phi() -> Morphism {
    build(
        "phi",
        true,
        &[
            (0, &[0, 1, P, -1]),
            (1, &[0, 1, -1, 1]),
            (P, &[P, -1, 0, 1]),
            (-1, &[P, -1, 1, -1]),
        ],
    )
}

/// `0, 0' -> 0 1 0' -1`, `1 -> 0 1 -1 1 0' -1`, `-1 -> 1 -1`.
pub fn zeta() -> Morphism {
    build(
        "zeta",
        true,
        &[
            (0, &[0, 1, P, -1]),
            (P, &[0, 1, P, -1]),
            (1, &[0, 1, -1, 1, P, -1]),
            (-1, &[1, -1]),
        ],
    )
}

/// `zeta` with `0'` identified with `0`: `0 -> 0 1 0 -1`,
/// `1 -> 0 1 -1 1 0 -1`, `-1 -> 1 -1`.
pub fn psi_m() -> Morphism {
    build(
        "psi",
        false,
        &[
            (0, &[0, 1, 0, -1]),
            (1, &[0, 1, -1, 1, 0, -1]),
            (-1, &[1, -1]),
        ],
    )
}

/// `0, 0' -> 0`, `1 -> 1`, `-1 -> -1`.
pub fn tau() -> Coding {
    Coding::new(
        "tau",
        signed_alphabet(true),
        BTreeMap::from([(0, 0), (P, 0), (1, 1), (-1, -1)]),
    )
    .expect("built-in coding is well formed")
}

pub fn builtin(name: &str) -> Result<Morphism> {
    match name {
        "phi" => Ok(phi()),
        "zeta" => Ok(zeta()),
        "psi" => Ok(psi_m()),
        other => Err(Error::Argument(format!("unknown morphism {other:?}"))),
    }
}

pub fn builtin_coding(name: &str) -> Result<Coding> {
    match name {
        "tau" => Ok(tau()),
        other => Err(Error::Argument(format!("unknown coding {other:?}"))),
    }
}

/// Parses one `letter -> l1 l2 ...` rule per line. Letters are signed
/// integers, optionally primed (`0'`); primed letters receive internal values
/// above every plain letter, in order of first appearance. Blank lines and
/// lines starting with `#` are ignored.
pub fn parse_morphism(name: &str, text: &str) -> Result<Morphism> {
    let mut rules: Vec<(String, Vec<String>)> = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        let trimmed = line.trim();
        let line_offset = offset;
        offset += line.len() + 1;
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (head, body) = trimmed.split_once("->").ok_or_else(|| Error::Parse {
            offset: line_offset,
            message: format!("expected `letter -> image`, found {trimmed:?}"),
        })?;
        let head = head.trim();
        if head.is_empty() || head.contains(char::is_whitespace) {
            return Err(Error::Parse {
                offset: line_offset,
                message: format!("expected a single letter before `->` in {trimmed:?}"),
            });
        }
        rules.push((
            head.to_string(),
            body.split_whitespace().map(str::to_string).collect(),
        ));
    }
    if rules.is_empty() {
        return argument("morphism text defines no letters");
    }

    let token_value = |t: &str| -> Result<Option<Letter>> {
        let base = t.trim_end_matches('\'');
        let value: i64 = base
            .parse()
            .map_err(|_| Error::Argument(format!("malformed letter {t:?}")))?;
        if base.len() != t.len() {
            return Ok(None);
        }
        Letter::try_from(value)
            .map(Some)
            .map_err(|_| Error::Argument(format!("letter {value} outside [-128, 127]")))
    };

    let mut all_tokens: Vec<&str> = Vec::new();
    for (head, body) in &rules {
        all_tokens.push(head);
        all_tokens.extend(body.iter().map(String::as_str));
    }
    let mut values: BTreeMap<String, Letter> = BTreeMap::new();
    let mut plain_max: i64 = -1;
    for t in &all_tokens {
        if let Some(v) = token_value(t)? {
            values.insert(t.to_string(), v);
            plain_max = plain_max.max(v.into());
        }
    }
    let mut next = plain_max + 1;
    for t in &all_tokens {
        if !values.contains_key(*t) {
            let v = Letter::try_from(next)
                .map_err(|_| Error::Argument("too many primed letters".into()))?;
            values.insert(t.to_string(), v);
            next += 1;
        }
    }

    let mut alphabet = Vec::new();
    let mut images = BTreeMap::new();
    for (head, body) in &rules {
        let letter = values[head];
        if images.contains_key(&letter) {
            return argument(format!("letter {head} defined twice"));
        }
        alphabet.push(Symbol {
            letter,
            name: head.clone(),
        });
        images.insert(letter, body.iter().map(|t| values[t]).collect::<Word>());
    }
    Morphism::new(name, alphabet, images)
}

/// `-1 -> k-1`, other letters unchanged.
pub fn map_to_sigma_k(w: &[Letter], k: u32) -> Result<Word> {
    if k < 2 {
        return argument(format!("alphabet size must be at least 2, got {k}"));
    }
    let top = Letter::try_from(k - 1)
        .map_err(|_| Error::Argument(format!("alphabet size {k} exceeds the letter range")))?;
    w.iter()
        .enumerate()
        .map(|(i, &a)| match a {
            -1 => Ok(top),
            0 | 1 => Ok(a),
            _ => Err(Error::LetterOutOfRange {
                position: i + 1,
                letter: a.into(),
                alphabet_size: 3,
            }),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word::new)
}

/// 1-based position of the first difference between two words, if any.
fn first_difference(a: &[Letter], b: &[Letter]) -> Option<usize> {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .or((a.len() != b.len()).then(|| a.len().min(b.len())))
        .map(|i| i + 1)
}

/// Checks `phi^n(zeta(a)) = zeta^(n+1)(a)` for every letter `a` and
/// `phi^n(0) = zeta^n(0)`, for all `n <= n_max`.
pub fn verify_zeta_lemma(n_max: usize) -> Report {
    let (phi, zeta) = (phi(), zeta());
    let mut checks = Vec::new();
    for &a in &[-1, 0, 1, ZERO_PRIME] {
        let name = name_of(phi.alphabet(), a);
        let mut lhs = zeta.apply(&[a]).expect("letter in alphabet");
        let mut rhs = lhs.clone();
        for n in 0..=n_max {
            if n > 0 {
                lhs = phi.apply(&lhs).expect("closed alphabet");
                rhs = zeta.apply(&rhs).expect("closed alphabet");
            }
            let label = format!("phi^{n}(zeta({name})) = zeta^{}({name})", n + 1);
            let lengths = format!("lengths {} and {}", lhs.len(), rhs.len());
            checks.push(match first_difference(&lhs, &rhs) {
                None => Check::pass(label, lengths),
                Some(at) => Check::fail(label, lengths, Some(at)),
            });
        }
    }
    let mut lhs = Word::new(vec![0]);
    let mut rhs = lhs.clone();
    for n in 0..=n_max {
        if n > 0 {
            lhs = phi.apply(&lhs).expect("closed alphabet");
            rhs = zeta.apply(&rhs).expect("closed alphabet");
        }
        let label = format!("phi^{n}(0) = zeta^{n}(0)");
        let lengths = format!("lengths {} and {}", lhs.len(), rhs.len());
        checks.push(match first_difference(&lhs, &rhs) {
            None => Check::pass(label, lengths),
            Some(at) => Check::fail(label, lengths, Some(at)),
        });
    }
    Report::new(format!("zeta lemma for n <= {n_max}"), checks)
}

/// Checks `tau(phi^n(0)) = psi^n(0)` for all `n <= n_max`.
pub fn verify_tau_phi_psi(n_max: usize) -> Report {
    let (phi, psi, tau) = (phi(), psi_m(), tau());
    let mut lhs = Word::new(vec![0]);
    let mut rhs = lhs.clone();
    let mut checks = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            lhs = phi.apply(&lhs).expect("closed alphabet");
            rhs = psi.apply(&rhs).expect("closed alphabet");
        }
        let coded = tau.apply(&lhs).expect("closed alphabet");
        let label = format!("tau(phi^{n}(0)) = psi^{n}(0)");
        let lengths = format!("lengths {} and {}", coded.len(), rhs.len());
        checks.push(match first_difference(&coded, &rhs) {
            None => Check::pass(label, lengths),
            Some(at) => Check::fail(label, lengths, Some(at)),
        });
    }
    Report::new(format!("tau/phi/psi identity for n <= {n_max}"), checks)
}

/// Generates the length-`n` prefix of `psi^ω(0)` and checks that it is
/// squarefree, that its running sums stay in `{0, 1}`, and that it has no
/// adjacent factors with equal nonzero sums.
pub fn verify_psi_prefix(n: usize) -> Result<Report> {
    if n == 0 {
        return argument("prefix length must be at least 1");
    }
    let w = psi_m().fixed_point_prefix(0, n)?;
    let mut checks = Vec::new();

    checks.push(match find_square(&w) {
        None => Check::pass("squarefree", format!("no square in the first {n} letters")),
        Some(o) => Check::fail(
            "squarefree",
            format!("square with block length {} at {}", o.m, o.start),
            Some(o.start),
        ),
    });

    let sums = prefix_sums(&w);
    checks.push(match sums.iter().position(|&v| v != 0 && v != 1) {
        None => Check::pass(
            "running sums in {0,1}",
            format!("{} prefix sums checked", sums.len()),
        ),
        Some(i) => Check::fail(
            "running sums in {0,1}",
            format!("prefix sum {} after {i} letters", sums[i]),
            Some(i),
        ),
    });

    checks.push(match find_adjacent_equal_nonzero_sum(&w) {
        None => Check::pass(
            "no adjacent equal nonzero sums",
            format!("no pair x x' with sum(x) = sum(x') != 0 in the first {n} letters"),
        ),
        Some(p) => Check::fail(
            "no adjacent equal nonzero sums",
            format!(
                "w[{}..{}] and w[{}..{}] both sum to {}",
                p.i,
                p.j,
                p.j + 1,
                p.j_prime,
                p.common_sum
            ),
            Some(p.i),
        ),
    });

    Ok(
        Report::new(format!("psi fixed point, first {n} letters"), checks)
            .with_note("certifies a finite prefix only"),
    )
}

/// Number of distinct factors of length `len`.
pub fn distinct_factors(w: &[Letter], len: usize) -> usize {
    if len == 0 {
        return 1;
    }
    w.windows(len).collect::<HashSet<_>>().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_examples() {
        assert_eq!(phi().apply(&[0]).unwrap().letters(), &[0, 1, P, -1]);
        assert_eq!(psi_m().apply(&[-1]).unwrap().letters(), &[1, -1]);
        assert_eq!(phi().apply(&[]).unwrap(), Word::empty());
        assert!(matches!(psi_m().apply(&[P]), Err(Error::UnknownLetter(_))));
        assert!(matches!(phi().apply(&[5]), Err(Error::UnknownLetter(n)) if n == "5"));
    }

    #[test]
    fn coding_examples() {
        let t = tau();
        assert_eq!(t.apply(&[0, 1, P, -1]).unwrap().letters(), &[0, 1, 0, -1]);
        assert_eq!(t.apply(&[]).unwrap(), Word::empty());
        assert_eq!(t.apply(&[P, P]).unwrap().letters(), &[0, 0]);
        assert!(t.apply(&[3]).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        let phi16 = phi().fixed_point_prefix(0, 16).unwrap();
        assert_eq!(
            phi16.letters(),
            &[0, 1, P, -1, 0, 1, -1, 1, P, -1, 0, 1, P, -1, 1, -1]
        );
        let psi16 = psi_m().fixed_point_prefix(0, 16).unwrap();
        assert_eq!(
            psi16.letters(),
            &[0, 1, 0, -1, 0, 1, -1, 1, 0, -1, 0, 1, 0, -1, 1, -1]
        );
        assert_eq!(phi().fixed_point_prefix(0, 1).unwrap().letters(), &[0]);
        assert_eq!(psi_m().fixed_point_prefix(0, 0).unwrap(), Word::empty());
    }

    #[test]
    fn non_prolongable_seed_is_rejected() {
        assert!(phi().fixed_point_prefix(1, 4).is_err());
        assert!(psi_m().fixed_point_prefix(-1, 4).is_err());
        assert!(phi().is_prolongable(P));
    }

    #[test]
    fn finite_fixed_point_is_reported() {
        let m = parse_morphism("m", "0 -> 0 1\n1 ->").unwrap();
        assert!(m.fixed_point_prefix(0, 10).is_err());
        assert_eq!(m.fixed_point_prefix(0, 2).unwrap().letters(), &[0, 1]);
    }

    #[test]
    fn parse_matches_builtin_phi() {
        let text = "# phi\n0 -> 0 1 0' -1\n1 -> 0 1 -1 1\n0' -> 0' -1 0 1\n-1 -> 0' -1 1 -1\n";
        let m = parse_morphism("phi", text).unwrap();
        for a in [-1, 0, 1, P] {
            assert_eq!(m.image(a).unwrap(), phi().image(a).unwrap());
        }
        assert_eq!(m.render(&[0, P, -1]), "0 0' -1");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_morphism("m", "0 0 1").is_err());
        assert!(parse_morphism("m", "0 -> 0 x").is_err());
        assert!(parse_morphism("m", "0 -> 0 1").is_err()); // 1 has no image
        assert!(parse_morphism("m", "0 -> 0\n0 -> 1").is_err());
        assert!(parse_morphism("m", "").is_err());
    }

    #[test]
    fn sigma_k_mapping() {
        assert_eq!(
            map_to_sigma_k(&[0, 1, -1], 3).unwrap().letters(),
            &[0, 1, 2]
        );
        assert_eq!(
            map_to_sigma_k(&[0, 1, -1], 2).unwrap().letters(),
            &[0, 1, 1]
        );
        assert_eq!(map_to_sigma_k(&[], 7).unwrap(), Word::empty());
        assert!(map_to_sigma_k(&[0], 1).is_err());
        assert!(map_to_sigma_k(&[2], 3).is_err());
    }

    #[test]
    fn small_verifications() {
        assert!(verify_zeta_lemma(0).passed);
        assert!(verify_zeta_lemma(1).passed);
        assert!(verify_tau_phi_psi(0).passed);
        let r = verify_tau_phi_psi(2);
        assert!(r.passed);
        assert_eq!(r.checks[2].detail, "lengths 16 and 16");
        assert!(verify_psi_prefix(1).unwrap().passed);
        assert!(verify_psi_prefix(25).unwrap().passed);
        assert!(verify_psi_prefix(0).is_err());
    }

    #[test]
    fn broken_identity_is_reported_with_position() {
        assert_eq!(first_difference(&[0, 1, 2], &[0, 1, 3]), Some(3));
        assert_eq!(first_difference(&[0, 1], &[0, 1, 3]), Some(3));
        assert_eq!(first_difference(&[0, 1], &[0, 1]), None);
    }
}
