//! Words over small integer alphabets, with prefix sums, Parikh vectors and
//! the two text encodings used on the command line.

use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A single letter. Alphabets used here never leave `-1..=7`, and the signed
/// byte keeps search stacks dense.
pub type Letter = i8;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from_slice(&mut self, letters: &[Letter]) {
        self.0.extend_from_slice(letters);
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    /// Factor `w[start..start+len]` with a 0-based start.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&a| i64::from(a)).sum()
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let style = if self.0.iter().all(|&a| (0..=9).contains(&a)) {
            Style::Compact
        } else {
            Style::Csv
        };
        f.write_str(&render_word(self, style).expect("style chosen to fit"))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Running sums: entry `i` is the sum of the first `i` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSums(Vec<i64>);

impl PrefixSums {
    pub fn sums(&self) -> &[i64] {
        &self.0
    }

    /// Sum of the 0-based half-open range `[start, end)`.
    pub fn range(&self, start: usize, end: usize) -> i64 {
        self.0[end] - self.0[start]
    }

    pub fn total(&self) -> i64 {
        *self.0.last().expect("prefix sums are never empty")
    }
}

impl Deref for PrefixSums {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// Letter counts indexed by alphabet position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParikhVector(Vec<usize>);

impl ParikhVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl Deref for ParikhVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

pub fn parikh(w: &[Letter], alphabet_size: usize) -> Result<ParikhVector> {
    let mut counts = vec![0usize; alphabet_size];
    for (i, &a) in w.iter().enumerate() {
        let idx = usize::try_from(a)
            .ok()
            .filter(|&j| j < alphabet_size)
            .ok_or(Error::LetterOutOfRange {
                position: i + 1,
                letter: a.into(),
                alphabet_size,
            })?;
        counts[idx] += 1;
    }
    Ok(ParikhVector(counts))
}

pub fn prefix_sums(w: &[Letter]) -> PrefixSums {
    let mut sums = Vec::with_capacity(w.len() + 1);
    let mut acc = 0i64;
    sums.push(acc);
    for &a in w {
        acc += i64::from(a);
        sums.push(acc);
    }
    PrefixSums(sums)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// One decimal digit per letter, no separators.
    Compact,
    /// Signed decimals separated by commas.
    Csv,
}

/// Parses either encoding. Input containing a comma or a minus sign is read
/// as csv, anything else as compact digits.
pub fn parse_word(text: &str) -> Result<Word> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Ok(Word::empty());
    }
    if body.contains(',') || body.contains('-') {
        parse_csv(body, lead)
    } else {
        parse_compact(body, lead)
    }
}

fn parse_compact(body: &str, lead: usize) -> Result<Word> {
    body.char_indices()
        .map(|(i, ch)| {
            ch.to_digit(10)
                .map(|d| d as Letter)
                .ok_or_else(|| Error::Parse {
                    offset: lead + i,
                    message: format!("expected a digit, found {ch:?}"),
                })
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

fn parse_csv(body: &str, lead: usize) -> Result<Word> {
    let mut letters = Vec::new();
    let mut offset = lead;
    // A single trailing comma is allowed so one-letter words above 9 stay
    // distinguishable from compact digit strings.
    let body = match body.strip_suffix(',') {
        Some(rest) if !rest.is_empty() => rest,
        _ => body,
    };
    for token in body.split(',') {
        let trimmed = token.trim();
        let at = offset + (token.len() - token.trim_start().len());
        let value: i64 = trimmed.parse().map_err(|_| Error::Parse {
            offset: at,
            message: format!("malformed letter {trimmed:?}"),
        })?;
        let letter = Letter::try_from(value).map_err(|_| Error::Parse {
            offset: at,
            message: format!("letter {value} outside [-128, 127]"),
        })?;
        letters.push(letter);
        offset += token.len() + 1;
    }
    Ok(Word(letters))
}

pub fn render_word(w: &[Letter], style: Style) -> Result<String> {
    match style {
        Style::Compact => w
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if (0..=9).contains(&a) {
                    Ok(char::from(b'0' + a as u8))
                } else {
                    Err(Error::Argument(format!(
                        "letter {a} at position {} cannot be written in compact style",
                        i + 1
                    )))
                }
            })
            .collect(),
        Style::Csv => {
            let mut out = w
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            if let [a] = w {
                if *a > 9 {
                    out.push(',');
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parikh_counts() {
        let w = [3, 1, 2, 2, 0, 2, 1, 2, 3, 3];
        assert_eq!(parikh(&w, 4).unwrap().counts(), &[1, 2, 4, 3]);
        assert_eq!(parikh(&[], 3).unwrap().counts(), &[0, 0, 0]);
        assert_eq!(parikh(&[0, 1, 0], 2).unwrap().counts(), &[2, 1]);
    }

    #[test]
    fn parikh_rejects_out_of_range() {
        let err = parikh(&[0, 1, 2, 0], 2).unwrap_err();
        assert_eq!(
            err,
            Error::LetterOutOfRange {
                position: 3,
                letter: 2,
                alphabet_size: 2
            }
        );
        assert!(parikh(&[-1], 2).is_err());
    }

    #[test]
    fn prefix_sum_examples() {
        assert_eq!(prefix_sums(&[]).sums(), &[0]);
        assert_eq!(prefix_sums(&[0, 1, 0, -1]).sums(), &[0, 0, 1, 1, 0]);
        assert_eq!(prefix_sums(&[1, 2, 3]).sums(), &[0, 1, 3, 6]);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_word("0102010").unwrap().letters(),
            &[0, 1, 0, 2, 0, 1, 0]
        );
        assert_eq!(parse_word("0,1,-1,1").unwrap().letters(), &[0, 1, -1, 1]);
        assert_eq!(parse_word("").unwrap(), Word::empty());
        assert_eq!(parse_word("-1").unwrap().letters(), &[-1]);
        assert_eq!(parse_word(" 12, -7 ").unwrap().letters(), &[12, -7]);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            parse_word("01x2").unwrap_err(),
            Error::Parse {
                offset: 2,
                message: "expected a digit, found 'x'".into()
            }
        );
        match parse_word("0,1,,2").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 4),
            e => panic!("unexpected {e:?}"),
        }
        match parse_word("0,200").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 2),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn compact_rejects_wide_letters() {
        assert!(render_word(&[0, 10], Style::Compact).is_err());
        assert!(render_word(&[-1], Style::Compact).is_err());
        assert_eq!(render_word(&[0, -1, 12], Style::Csv).unwrap(), "0,-1,12");
        assert_eq!(render_word(&[12], Style::Csv).unwrap(), "12,");
        assert_eq!(parse_word("12,").unwrap().letters(), &[12]);
    }

    proptest! {
        #[test]
        fn csv_round_trip(letters in prop::collection::vec(any::<i8>(), 0..40)) {
            let w = Word::new(letters);
            let text = render_word(&w, Style::Csv).unwrap();
            prop_assert_eq!(parse_word(&text).unwrap(), w);
        }

        #[test]
        fn compact_round_trip(letters in prop::collection::vec(0i8..=9, 0..40)) {
            let w = Word::new(letters);
            let text = render_word(&w, Style::Compact).unwrap();
            prop_assert_eq!(parse_word(&text).unwrap(), w);
        }

        #[test]
        fn sums_and_counts_are_consistent(letters in prop::collection::vec(0i8..5, 0..60)) {
            let ps = prefix_sums(&letters);
            prop_assert_eq!(ps.len(), letters.len() + 1);
            prop_assert_eq!(ps.total(), letters.iter().map(|&a| i64::from(a)).sum::<i64>());
            prop_assert_eq!(parikh(&letters, 5).unwrap().total(), letters.len());
        }
    }
}
