//! Words and cyclic words over the alphabet `{c_1, .., c_2g, c_1^-, .., c_2g^-}`.
//!
//! A [`Word`] is a plain letter sequence; a [`CyclicWord`] is a conjugacy-class
//! representative: cyclically reduced and stored in its canonical (least)
//! rotation, so equal classes compare equal structurally.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A single generator or its inverse: `c_gen^sign` with `sign` in `{+1, -1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    gen: u32,
    sign: i8,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index must be >= 1")]
    ZeroGenerator,
    #[error("letter sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("subword indices are undefined on the empty cyclic word")]
    EmptySubword,
    #[error("subword index {index} out of range 1..={max}")]
    SubwordIndex { index: usize, max: usize },
}

impl Letter {
    pub fn new(gen: u32, sign: i8) -> Result<Self, WordError> {
        if gen == 0 {
            return Err(WordError::ZeroGenerator);
        }
        if sign != 1 && sign != -1 {
            return Err(WordError::BadSign(sign));
        }
        Ok(Letter { gen, sign })
    }

    /// `c_gen`
    pub fn pos(gen: u32) -> Self {
        Letter::new(gen, 1).expect("positive generator")
    }

    /// `c_gen^{-1}`
    pub fn neg(gen: u32) -> Self {
        Letter::new(gen, -1).expect("negative generator")
    }

    pub fn gen(&self) -> u32 {
        self.gen
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn inverse(&self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    fn order_key(&self) -> (u32, bool) {
        // gen ascending, then positive before negative
        (self.gen, self.sign < 0)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign > 0 {
            write!(f, "c{}", self.gen)
        } else {
            write!(f, "c{}-", self.gen)
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.gen, self.sign).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (gen, sign) = <(u32, i8)>::deserialize(deserializer)?;
        Letter::new(gen, sign).map_err(D::Error::custom)
    }
}

/// A finite, possibly empty, letter sequence. Not reduced by construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
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

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    /// Removes adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    /// Exponent sum per generator, for abelianization checks.
    pub fn abelianization(&self) -> std::collections::BTreeMap<u32, i64> {
        let mut m = std::collections::BTreeMap::new();
        for l in &self.0 {
            *m.entry(l.gen()).or_insert(0i64) += l.sign() as i64;
        }
        m.retain(|_, v| *v != 0);
        m
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A cyclically reduced representative with its rotation preserved.
///
/// The coproduct algorithm indexes letters relative to the rotation the
/// caller supplied, so this type keeps it; [`CyclicWord`] canonicalizes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    /// Cyclically reduces `w`, keeping the surviving letters in input order.
    pub fn new(w: &Word) -> ReducedWord {
        let mut v = w.free_reduce().0;
        while v.len() >= 2 && *v.first().unwrap() == v.last().unwrap().inverse() {
            v.pop();
            v.remove(0);
        }
        ReducedWord { letters: v }
    }

    /// The canonical rotation of a class.
    pub fn from_class(v: &CyclicWord) -> ReducedWord {
        ReducedWord {
            letters: v.letters().to_vec(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The letter `v_i`, `i` 1-based and taken mod the length.
    pub fn letter(&self, i: usize) -> Letter {
        assert!(!self.is_empty());
        self.letters[(i - 1) % self.letters.len()]
    }

    pub fn subword(&self, a: usize, b: usize) -> Result<Word, WordError> {
        cyclic_subword(&self.letters, a, b)
    }

    pub fn level(&self) -> usize {
        sequence_level(&self.letters)
    }

    pub fn as_word(&self) -> Word {
        Word(self.letters.clone())
    }

    pub fn to_class(&self) -> CyclicWord {
        CyclicWord {
            letters: canonical_rotation(&self.letters),
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_word())
    }
}

/// The forward cyclic subword `v_a .. v_b` of a representative (1-based,
/// index `m+1` wraps to 1). Length is `((b - a) mod m) + 1`, never 0.
pub fn cyclic_subword(letters: &[Letter], a: usize, b: usize) -> Result<Word, WordError> {
    let m = letters.len();
    if m == 0 {
        return Err(WordError::EmptySubword);
    }
    for &i in &[a, b] {
        if i < 1 || i > m + 1 {
            return Err(WordError::SubwordIndex { index: i, max: m + 1 });
        }
    }
    let a0 = (a - 1) % m;
    let b0 = (b - 1) % m;
    let len = (b0 + m - a0) % m + 1;
    Ok((0..len).map(|i| letters[(a0 + i) % m]).collect())
}

fn sequence_level(letters: &[Letter]) -> usize {
    let m = letters.len();
    if m == 0 {
        return 0;
    }
    for p in 1..=m {
        if m % p == 0 && (0..m).all(|i| letters[i] == letters[i % p]) {
            return m / p;
        }
    }
    1
}

/// A cyclically reduced word in canonical (lexicographically least) rotation.
///
/// The empty sequence represents the trivial class.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Cyclically reduces `w` and stores the canonical rotation.
    pub fn reduce(w: &Word) -> CyclicWord {
        let mut v = w.free_reduce().0;
        // strip matching first/last inverse pairs
        while v.len() >= 2 && *v.first().unwrap() == v.last().unwrap().inverse() {
            v.pop();
            v.remove(0);
        }
        CyclicWord {
            letters: canonical_rotation(&v),
        }
    }

    pub fn trivial() -> CyclicWord {
        CyclicWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The letter `v_i`, `i` taken 1-based and mod the length.
    pub fn letter(&self, i: usize) -> Letter {
        assert!(!self.is_empty());
        self.letters[(i - 1) % self.letters.len()]
    }

    pub fn as_word(&self) -> Word {
        Word(self.letters.clone())
    }

    /// All rotations of the stored representative, as linear words.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        let m = self.letters.len();
        (0..m.max(1)).map(move |r| {
            if m == 0 {
                Word::empty()
            } else {
                (0..m).map(|i| self.letters[(r + i) % m]).collect()
            }
        })
    }

    /// The forward cyclic subword `v_a .. v_b` of the canonical rotation.
    pub fn subword(&self, a: usize, b: usize) -> Result<Word, WordError> {
        cyclic_subword(&self.letters, a, b)
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::reduce(&self.as_word().inverse())
    }

    pub fn power(&self, k: usize) -> CyclicWord {
        let mut v = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.letters);
        }
        CyclicWord::reduce(&Word(v))
    }

    /// The repetition multiplicity of the letter sequence: the largest `l`
    /// such that the sequence is an `l`-fold repetition of a block. The
    /// trivial class has level 0.
    pub fn level(&self) -> usize {
        sequence_level(&self.letters)
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.letters.len(), &self.letters).cmp(&(other.letters.len(), &other.letters))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_word())
    }
}

/// Least rotation of `v` under the letter order.
fn canonical_rotation(v: &[Letter]) -> Vec<Letter> {
    let m = v.len();
    if m <= 1 {
        return v.to_vec();
    }
    let mut best = 0usize;
    for cand in 1..m {
        for i in 0..m {
            let a = v[(cand + i) % m];
            let b = v[(best + i) % m];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    best = cand;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    (0..m).map(|i| v[(best + i) % m]).collect()
}
