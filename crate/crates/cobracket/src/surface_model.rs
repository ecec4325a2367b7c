//! The fattened wedge of `2g` circles: generator ends on the boundary circle
//! of the disk neighborhood `U_0`, their cyclic order, and the boundary word
//! of the one-vertex ribbon graph (the surface relator).
//!
//! The `4g` ends occupy exact angle slots in `Z/4g`: `e_i` at slot `i-1` and
//! `e'_i` at slot `2g+i-1`, i.e. angle `slot/4g`. All order comparisons are
//! slot comparisons, no floating point anywhere.

use thiserror::Error;

use crate::cyclic_words::{Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenusError {
    #[error("genus must be >= 1, got {0}")]
    TooSmall(u32),
    #[error("generator index {gen} out of range 1..={max}")]
    GeneratorOutOfRange { gen: u32, max: u32 },
}

/// The genus of the surface. `g = 1` is accepted here only so the relator
/// tracer can be validated; every downstream module requires `g >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Genus {
    g: u32,
}

impl Genus {
    pub fn new(g: u32) -> Result<Genus, GenusError> {
        if g < 1 {
            return Err(GenusError::TooSmall(g));
        }
        Ok(Genus { g })
    }

    pub fn value(&self) -> u32 {
        self.g
    }

    /// Number of generators, `2g`.
    pub fn alphabet_size(&self) -> u32 {
        2 * self.g
    }

    /// Number of ends, `4g`.
    pub fn end_count(&self) -> u32 {
        4 * self.g
    }

    pub fn check_letter(&self, l: Letter) -> Result<(), GenusError> {
        if l.gen() > self.alphabet_size() {
            return Err(GenusError::GeneratorOutOfRange {
                gen: l.gen(),
                max: self.alphabet_size(),
            });
        }
        Ok(())
    }

    /// The angle slot of an end in `0..4g`.
    pub fn slot(&self, e: End) -> u32 {
        if e.ingoing {
            2 * self.g + e.gen - 1
        } else {
            e.gen - 1
        }
    }

    /// Strict cyclic betweenness on ends: walking positively from `a`, is `b`
    /// met strictly before `c`? False unless all three are pairwise distinct.
    pub fn cyclic_between(&self, a: End, b: End, c: End) -> bool {
        self.slot_between(self.slot(a), self.slot(b), self.slot(c))
    }

    pub fn slot_between(&self, a: u32, b: u32, c: u32) -> bool {
        let n = self.end_count();
        let db = (b + n - a) % n;
        let dc = (c + n - a) % n;
        db != 0 && dc != 0 && db != dc && db < dc
    }

    /// The outgoing and ingoing ends `(f, f̄)` of a letter.
    pub fn ends_of_letter(&self, v: Letter) -> Result<(End, End), GenusError> {
        self.check_letter(v)?;
        let f = End {
            gen: v.gen(),
            ingoing: v.sign() < 0,
        };
        Ok((f, f.bar()))
    }

    /// Traces the single boundary face of the one-vertex ribbon graph with
    /// rotation `1 < 2 < .. < 2g < 1̄ < .. < 2ḡ`: traverse the current edge,
    /// then step to the cyclic successor of the arrival half-edge. Length is
    /// exactly `4g`.
    pub fn boundary_word(&self) -> Word {
        let n = self.end_count();
        // half-edges 0..2g-1 are 1..2g, half-edges 2g..4g-1 are 1̄..2ḡ
        let partner = |h: u32| (h + 2 * self.g) % n;
        let mut word = Word::empty();
        let mut current = 0u32;
        loop {
            let arrival = partner(current);
            let letter = if current < 2 * self.g {
                Letter::pos(current + 1)
            } else {
                Letter::neg(current - 2 * self.g + 1)
            };
            word.push(letter);
            current = (arrival + 1) % n;
            if current == 0 {
                break;
            }
        }
        word
    }
}

/// One of the `4g` points `e_i`, `e'_i` where the generator loops meet the
/// boundary circle of `U_0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct End {
    gen: u32,
    ingoing: bool,
}

impl End {
    pub fn outgoing(gen: u32) -> End {
        End { gen, ingoing: false }
    }

    pub fn ingoing(gen: u32) -> End {
        End { gen, ingoing: true }
    }

    pub fn gen(&self) -> u32 {
        self.gen
    }

    pub fn is_ingoing(&self) -> bool {
        self.ingoing
    }

    /// `e_i <-> e'_i`
    pub fn bar(self) -> End {
        End {
            gen: self.gen,
            ingoing: !self.ingoing,
        }
    }
}

impl std::fmt::Display for End {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ingoing {
            write!(f, "e{}'", self.gen)
        } else {
            write!(f, "e{}", self.gen)
        }
    }
}
