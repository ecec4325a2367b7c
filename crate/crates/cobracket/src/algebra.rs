//! Integer-coefficient formal sums over ordered pairs of class keys, the
//! codomain of the coproduct and the cobracket.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cyclic_words::{CyclicWord, Word};
use crate::surface_group::{GroupError, Presentation};
use crate::surface_model::Genus;

/// How cut factors are identified before storage.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Canonical cyclic rotation only, faithful to the raw algorithm output.
    Literal,
    /// Surface-group conjugacy keys, identifying equal free homotopy classes.
    #[default]
    Dehn,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "literal" => Some(Mode::Literal),
            "dehn" => Some(Mode::Dehn),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Literal => write!(f, "literal"),
            Mode::Dehn => write!(f, "dehn"),
        }
    }
}

/// A normalized conjugacy-class representative; never trivial inside a
/// stored term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct ClassKey(CyclicWord);

impl ClassKey {
    pub fn word(&self) -> &CyclicWord {
        &self.0
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// Turns cut factors into class keys under the active mode.
pub struct Normalizer {
    mode: Mode,
    presentation: Option<Presentation>,
}

impl Normalizer {
    pub fn new(genus: Genus, mode: Mode) -> Result<Normalizer, GroupError> {
        let presentation = match mode {
            Mode::Literal => None,
            Mode::Dehn => Some(Presentation::new(genus)?),
        };
        Ok(Normalizer { mode, presentation })
    }

    pub fn literal() -> Normalizer {
        Normalizer {
            mode: Mode::Literal,
            presentation: None,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Normalizes a class; `None` marks the trivial class.
    pub fn key(&self, w: &CyclicWord) -> Result<Option<ClassKey>, GroupError> {
        let normalized = match &self.presentation {
            None => w.clone(),
            Some(p) => p.conjugacy_key(w)?,
        };
        Ok(if normalized.is_empty() {
            None
        } else {
            Some(ClassKey(normalized))
        })
    }

    pub fn key_of_word(&self, w: &Word) -> Result<Option<ClassKey>, GroupError> {
        self.key(&CyclicWord::reduce(w))
    }
}

/// An ordered tensor pair of nontrivial class keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct TensorTerm {
    pub left: ClassKey,
    pub right: ClassKey,
}

impl fmt::Display for TensorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x){}", self.left, self.right)
    }
}

/// A finitely supported integer combination of tensor terms. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalSum {
    terms: BTreeMap<TensorTerm, BigInt>,
}

impl FormalSum {
    pub fn zero() -> FormalSum {
        FormalSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TensorTerm, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, term: &TensorTerm) -> BigInt {
        self.terms.get(term).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, term: TensorTerm, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let new = self.coefficient(&term) + coeff;
        if new.is_zero() {
            self.terms.remove(&term);
        } else {
            self.terms.insert(term, new);
        }
    }

    /// Normalizes both factors and accumulates `coeff * left (x) right`,
    /// dropping the term when either factor is trivial.
    pub fn insert_pair(
        &mut self,
        norm: &Normalizer,
        left: &Word,
        right: &Word,
        coeff: i64,
    ) -> Result<(), GroupError> {
        let (Some(left), Some(right)) = (norm.key_of_word(left)?, norm.key_of_word(right)?)
        else {
            return Ok(());
        };
        self.add_term(TensorTerm { left, right }, BigInt::from(coeff));
        Ok(())
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn negate(&self) -> FormalSum {
        FormalSum {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, n: i64) -> FormalSum {
        if n == 0 {
            return FormalSum::zero();
        }
        FormalSum {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c * BigInt::from(n)))
                .collect(),
        }
    }

    /// Every term `(x, y, n)` becomes `(y, x, n)`.
    pub fn swap_factors(&self) -> FormalSum {
        FormalSum {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    (
                        TensorTerm {
                            left: t.right.clone(),
                            right: t.left.clone(),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact division by `n`; `None` if any coefficient is not divisible.
    pub fn exact_div(&self, n: u64) -> Option<FormalSum> {
        let n = BigInt::from(n);
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            if (c % &n).is_zero() {
                terms.insert(t.clone(), c / &n);
            } else {
                return None;
            }
        }
        Some(FormalSum { terms })
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if abs != BigInt::from(1) {
                write!(f, "{abs} ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
