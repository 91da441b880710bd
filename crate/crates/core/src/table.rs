//! Reproduction of the published table of longest words avoiding
//! congruential powers.

use serde::Serialize;

use crate::error::Result;
use crate::search::{longest_avoiding, SearchConfig};
use crate::word::{parse_word, Word};

/// `(r, k, l(r, k), lexicographically least longest word)`.
pub const GOLDEN: [(usize, u32, usize, &str); 9] = [
    (2, 2, 3, "010"),
    (2, 3, 7, "0102010"),
    (2, 4, 16, "0130102013101201"),
    (2, 5, 33, "010214243213143040102142432131430"),
    (2, 6, 35, "01024021240241402401024021240241402"),
    (2, 7, 47, "01021614636032312426404301021614636032312426404"),
    (3, 2, 9, "001101100"),
    (
        3,
        3,
        67,
        "0010210112021200102022121011202120010201012101120212001021002210112",
    ),
    (
        4,
        2,
        88,
        "0011000110001001110010001100011000100111001000110001100010011100100011000110001001110011",
    ),
];

pub fn golden(r: usize, k: u32) -> Option<(usize, Word)> {
    GOLDEN.iter().find(|g| g.0 == r && g.1 == k).map(|g| {
        (
            g.2,
            parse_word(g.3).expect("golden words are compact digits"),
        )
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    /// Exhaustive result equal to the stored value.
    Match,
    /// Exhaustive result that differs from the stored value.
    Mismatch,
    /// Capped run that still found an avoiding word of the stored length.
    LowerBound,
    /// Exhaustive result for a row with no stored value.
    New,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub r: usize,
    pub k: u32,
    pub l: usize,
    pub witness: Word,
    pub nodes: u64,
    pub complete: bool,
    pub expected_l: Option<usize>,
    pub expected_witness: Option<Word>,
    pub status: RowStatus,
}

/// Runs one search per `(r, k)` row. `template` supplies the budget, thread
/// and symmetry settings shared by every row.
pub fn reproduce_table(rows: &[(usize, u32)], template: &SearchConfig) -> Result<Vec<TableRow>> {
    rows.iter()
        .map(|&(r, k)| {
            let cfg = SearchConfig {
                r,
                k,
                ..template.clone()
            };
            let res = longest_avoiding(&cfg)?;
            let expected = golden(r, k);
            let status = match (&expected, res.complete) {
                (Some((l, w)), true) if *l == res.l && *w == res.witness => RowStatus::Match,
                (Some(_), true) => RowStatus::Mismatch,
                (Some((l, _)), false) if res.l >= *l => RowStatus::LowerBound,
                (None, true) => RowStatus::New,
                _ => RowStatus::Incomplete,
            };
            Ok(TableRow {
                r,
                k,
                l: res.l,
                witness: res.witness,
                nodes: res.nodes_explored,
                complete: res.complete,
                expected_l: expected.as_ref().map(|e| e.0),
                expected_witness: expected.map(|e| e.1),
                status,
            })
        })
        .collect()
}
