//! Word syntax, result documents, and output formatting for the `cobracket`
//! binary: everything the command line needs that is worth unit testing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FormalSum, Mode};
use crate::cyclic_words::{CyclicWord, Letter, ReducedWord, Word};
use crate::surface_model::Genus;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("token {index}: expected 'c<n>' with optional '-' or '^-1', got {token:?}")]
    BadToken { index: usize, token: String },
    #[error("token {index}: generator index {gen} out of range 1..={max}")]
    OutOfRange { index: usize, gen: u32, max: u32 },
    #[error("empty word")]
    Empty,
}

/// Parses a whitespace-separated word such as `"c4 c6 c3 c1- c5^-1 c4"`.
pub fn parse_word(genus: Genus, input: &str) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    for (index, token) in input.split_whitespace().enumerate() {
        let bad = || ParseError::BadToken {
            index: index + 1,
            token: token.to_string(),
        };
        let rest = token.strip_prefix('c').ok_or_else(bad)?;
        let (digits, sign) = if let Some(d) = rest.strip_suffix("^-1") {
            (d, -1)
        } else if let Some(d) = rest.strip_suffix('-') {
            (d, -1)
        } else {
            (rest, 1)
        };
        let gen: u32 = digits.parse().map_err(|_| bad())?;
        let letter = Letter::new(gen, sign).map_err(|_| bad())?;
        if genus.check_letter(letter).is_err() {
            return Err(ParseError::OutOfRange {
                index: index + 1,
                gen,
                max: genus.alphabet_size(),
            });
        }
        letters.push(letter);
    }
    if letters.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(Word::new(letters))
}

/// One tensor term of a result, with both factors spelled out as letters.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DocumentTerm {
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub coeff: i64,
}

/// The stable serialization of one computation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ResultDocument {
    pub genus: u32,
    pub word: Vec<Letter>,
    pub mode: String,
    pub level: usize,
    pub terms: Vec<DocumentTerm>,
    pub engine: String,
}

#[derive(Debug, Error)]
#[error("coefficient overflows the document range")]
pub struct CoefficientOverflow;

impl ResultDocument {
    pub fn new(
        genus: Genus,
        word: &ReducedWord,
        mode: Mode,
        sum: &FormalSum,
        engine: &str,
    ) -> Result<ResultDocument, CoefficientOverflow> {
        let mut terms = Vec::new();
        for (t, c) in sum.iter() {
            let coeff: i64 = c.try_into().map_err(|_| CoefficientOverflow)?;
            terms.push(DocumentTerm {
                left: t.left.word().letters().to_vec(),
                right: t.right.word().letters().to_vec(),
                coeff,
            });
        }
        Ok(ResultDocument {
            genus: genus.value(),
            word: word.letters().to_vec(),
            mode: mode.to_string(),
            level: word.level(),
            terms,
            engine: engine.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialization cannot fail")
    }
}

fn latex_word(letters: &[Letter]) -> String {
    let mut s = String::new();
    for l in letters {
        s.push_str(&format!("c_{{{}}}", l.gen()));
        if l.sign() < 0 {
            s.push_str("^{-1}");
        }
    }
    s
}

/// Renders a sum in the bracket-and-tensor notation, e.g.
/// `-[c_{3}c_{1}^{-1}]\otimes[c_{4}]`.
pub fn latex_sum(sum: &FormalSum) -> String {
    if sum.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (t, c)) in sum.iter().enumerate() {
        let neg = c < &num_bigint::BigInt::from(0);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = if neg { -c } else { c.clone() };
        if abs != num_bigint::BigInt::from(1) {
            out.push_str(&format!("{abs}\\,"));
        }
        out.push_str(&format!(
            "[{}]\\otimes[{}]",
            latex_word(t.left.word().letters()),
            latex_word(t.right.word().letters())
        ));
    }
    out
}

/// Splits a batch file into (line number, word text) pairs, skipping blank
/// lines and `#` comments.
pub fn batch_lines(contents: &str) -> Vec<(usize, &str)> {
    contents
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// A uniformly random cyclically reduced word of length in `1..=max_len`.
pub fn random_reduced_word<R: rand::Rng>(genus: Genus, max_len: usize, rng: &mut R) -> CyclicWord {
    let n = genus.alphabet_size();
    let random_letter = |rng: &mut R| {
        let gen = rng.gen_range(1..=n);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        Letter::new(gen, sign).unwrap()
    };
    loop {
        let len = rng.gen_range(1..=max_len);
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let mut l = random_letter(rng);
            while letters.last() == Some(&l.inverse()) {
                l = random_letter(rng);
            }
            letters.push(l);
        }
        let w = CyclicWord::reduce(&Word::new(letters));
        if !w.is_empty() {
            return w;
        }
    }
}
