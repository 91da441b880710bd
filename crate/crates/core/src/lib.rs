//! Pattern avoidance in words over integer alphabets: detectors for squares,
//! abelian powers, sum-squares and congruential powers; morphism fixed
//! points; a number-theoretic construction of long words avoiding
//! congruential squares modulo a prime; van der Waerden style extraction;
//! and exhaustive searches for longest avoiding words.

pub mod detectors;
pub mod error;
pub mod morphism;
pub mod number;
pub mod ramsey;
pub mod report;
pub mod search;
pub mod table;
pub mod word;

pub use error::{Error, Result};
pub use word::{parse_word, prefix_sums, render_word, Letter, Style, Word};
