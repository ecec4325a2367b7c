//! Word and conjugacy problem in the surface group `<c_1..c_2g | R_g>` via
//! Dehn's algorithm, where `R_g` is the traced ribbon-graph boundary word.
//!
//! The presentation satisfies C'(1/6) for `g >= 2` (pieces of length 1
//! against a relator of length `4g`), so greedy replacement of any subword
//! longer than half the relator solves the word problem, and cyclic Dehn
//! reduction plus a single-cell annular closure yields conjugacy class keys.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::cyclic_words::{CyclicWord, Letter, Word};
use crate::surface_model::Genus;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("genus {0} violates C'(1/6): max piece length {1} vs relator length {2}")]
    SmallCancellationFailed(u32, usize, usize),
    #[error("conjugacy closure exceeded the safety cap of {0} elements")]
    ClosureCapExceeded(usize),
}

/// Default bound on the half-relator closure size.
pub const CLOSURE_CAP: usize = 10_000;

/// The one-relator presentation of the surface group, with the rotation set
/// of the relator precomputed for Dehn reduction.
#[derive(Clone, Debug)]
pub struct Presentation {
    genus: Genus,
    relator: Word,
    max_piece: usize,
    /// Subwords of length > 2g to their shorter complement inverses.
    replacements: HashMap<Vec<Letter>, Vec<Letter>>,
    /// Prefixes of length <= 2g to the inverses of their complements; used
    /// for the single-cell conjugacy moves.
    complements: HashMap<Vec<Letter>, Vec<Vec<Letter>>>,
    closure_cap: usize,
}

impl Presentation {
    pub fn new(genus: Genus) -> Result<Presentation, GroupError> {
        let relator = genus.boundary_word();
        let n = relator.len();
        let rotations = rotation_set(&relator);
        let max_piece = max_piece_length(&rotations);
        // C'(1/6): every piece strictly shorter than |R|/6
        if 6 * max_piece >= n {
            return Err(GroupError::SmallCancellationFailed(
                genus.value(),
                max_piece,
                n,
            ));
        }
        let half = n / 2;
        let mut replacements = HashMap::new();
        let mut complements: HashMap<Vec<Letter>, Vec<Vec<Letter>>> = HashMap::new();
        for rot in &rotations {
            for len in 1..=n {
                let prefix = rot[..len].to_vec();
                let complement: Vec<Letter> =
                    rot[len..].iter().rev().map(|l| l.inverse()).collect();
                if len > half {
                    replacements.entry(prefix).or_insert(complement);
                } else {
                    let entry = complements.entry(prefix).or_default();
                    if !entry.contains(&complement) {
                        entry.push(complement);
                    }
                }
            }
        }
        Ok(Presentation {
            genus,
            relator,
            max_piece,
            replacements,
            complements,
            closure_cap: CLOSURE_CAP,
        })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn max_piece_length(&self) -> usize {
        self.max_piece
    }

    /// Dehn reduction: freely reduce, then while some subword longer than
    /// half the relator matches a rotation-set prefix, replace it with the
    /// inverse of the complementary suffix. The output is empty iff the input
    /// is trivial in the group.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let half = self.relator.len() / 2;
        let mut cur = w.free_reduce().letters().to_vec();
        'outer: loop {
            let n = cur.len();
            for len in ((half + 1)..=self.relator.len().min(n)).rev() {
                for start in 0..=(n - len) {
                    if let Some(replacement) = self.replacements.get(&cur[start..start + len]) {
                        let mut next = cur[..start].to_vec();
                        next.extend_from_slice(replacement);
                        next.extend_from_slice(&cur[start + len..]);
                        cur = Word::new(next).free_reduce().letters().to_vec();
                        continue 'outer;
                    }
                }
            }
            return Word::new(cur);
        }
    }

    /// True iff `w` represents the trivial conjugacy class.
    pub fn is_trivial_class(&self, w: &CyclicWord) -> bool {
        self.cyclic_dehn_reduce(w).is_empty()
    }

    /// Applies Dehn reduction to every rotation until no rotation shortens.
    fn cyclic_dehn_reduce(&self, w: &CyclicWord) -> CyclicWord {
        let mut cur = w.clone();
        'outer: loop {
            let rots: Vec<Word> = cur.rotations().collect();
            for rot in rots {
                let reduced = self.dehn_reduce(&rot);
                if reduced.len() < rot.len() {
                    cur = CyclicWord::reduce(&reduced);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// The conjugacy class key: cyclically Dehn-reduce, close under
    /// single-cell annular moves, and return the least canonical rotation of
    /// minimal length in the closure. Two cyclic words are conjugate in the
    /// surface group iff their keys coincide.
    ///
    /// A single-cell move replaces a window that matches a prefix of a
    /// rotation of `R` or `R^{-1}` by the inverse of the complementary
    /// suffix. In an annular diagram over a C'(1/6) presentation with pieces
    /// of length 1, every cell meets each boundary in an arc of length at
    /// least `|R|/2 - 2`, so windows of lengths `|R|/2 - 2 .. |R|/2` (plus
    /// the whole word, for representatives shorter than that) generate all
    /// conjugacies between reduced representatives. Intermediate states may
    /// grow by up to `|R|` letters before the piece cancellations fire.
    pub fn conjugacy_key(&self, w: &CyclicWord) -> Result<CyclicWord, GroupError> {
        let half = self.relator.len() / 2;
        let mut base = self.cyclic_dehn_reduce(w);
        'restart: loop {
            if base.is_empty() {
                return Ok(CyclicWord::trivial());
            }
            let m = base.len();
            let bound = m + self.relator.len();
            let mut seen: BTreeSet<CyclicWord> = BTreeSet::new();
            let mut queue: VecDeque<CyclicWord> = VecDeque::new();
            seen.insert(base.clone());
            queue.push_back(base.clone());
            while let Some(v) = queue.pop_front() {
                let letters = v.letters();
                let len = letters.len();
                let mut window_lens: Vec<usize> = (half.saturating_sub(2)..=half)
                    .filter(|&l| 1 <= l && l <= len)
                    .collect();
                if len < half.saturating_sub(2) {
                    window_lens.push(len);
                }
                for start in 0..len {
                    for &wl in &window_lens {
                        let window: Vec<Letter> =
                            (0..wl).map(|i| letters[(start + i) % len]).collect();
                        let Some(swaps) = self.complements.get(&window) else {
                            continue;
                        };
                        for swap in swaps {
                            // splice the complement into the rotation at `start`
                            let mut next: Vec<Letter> = swap.clone();
                            next.extend((wl..len).map(|i| letters[(start + i) % len]));
                            let next = CyclicWord::reduce(&Word::new(next));
                            if next.len() < m {
                                // uncovered a shorter representative; start over
                                base = self.cyclic_dehn_reduce(&next);
                                continue 'restart;
                            }
                            if next.len() == m {
                                let reduced = self.cyclic_dehn_reduce(&next);
                                if reduced.len() < m {
                                    base = reduced;
                                    continue 'restart;
                                }
                            }
                            if next.len() <= bound && seen.insert(next.clone()) {
                                if seen.len() > self.closure_cap {
                                    return Err(GroupError::ClosureCapExceeded(self.closure_cap));
                                }
                                queue.push_back(next);
                            }
                        }
                    }
                }
            }
            // the set orders by (length, letters), so the first element is
            // the least representative of minimal length
            return Ok(seen.into_iter().next().expect("closure is nonempty"));
        }
    }
}

fn rotation_set(relator: &Word) -> Vec<Vec<Letter>> {
    let mut set: BTreeSet<Vec<Letter>> = BTreeSet::new();
    for base in [relator.clone(), relator.inverse()] {
        let v = base.letters();
        let n = v.len();
        for r in 0..n {
            set.insert((0..n).map(|i| v[(r + i) % n]).collect());
        }
    }
    set.into_iter().collect()
}

/// A piece is a common prefix of two distinct elements of the symmetrized
/// rotation set; this is the longest one.
fn max_piece_length(rotations: &[Vec<Letter>]) -> usize {
    let mut best = 0;
    for (i, u) in rotations.iter().enumerate() {
        for v in &rotations[i + 1..] {
            let common = u.iter().zip(v).take_while(|(a, b)| a == b).count();
            best = best.max(common);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(g: u32) -> Presentation {
        Presentation::new(Genus::new(g).unwrap()).unwrap()
    }

    fn wd(ls: &[(u32, i8)]) -> Word {
        ls.iter()
            .map(|&(g, s)| Letter::new(g, s).unwrap())
            .collect()
    }

    #[test]
    fn pieces_and_small_cancellation() {
        assert_eq!(pres(2).max_piece_length(), 1);
        assert_eq!(pres(3).max_piece_length(), 1);
        // g = 1: pieces of length 1 against relator length 4 fail C'(1/6)
        assert_eq!(
            Presentation::new(Genus::new(1).unwrap()).err(),
            Some(GroupError::SmallCancellationFailed(1, 1, 4))
        );
    }

    #[test]
    fn relator_reduces_to_empty() {
        for g in 2..=4 {
            let p = pres(g);
            assert!(p.dehn_reduce(p.relator()).is_empty());
        }
    }

    #[test]
    fn one_replacement_step() {
        let p = pres(2);
        let r = p.relator().letters();
        let half_plus: Word = r[..5].iter().copied().collect();
        let expect: Word = r[5..].iter().rev().map(|l| l.inverse()).collect();
        assert_eq!(p.dehn_reduce(&half_plus), expect.free_reduce());
        assert_eq!(p.dehn_reduce(&half_plus).len(), 3);
    }

    #[test]
    fn short_words_are_fixed() {
        let p = pres(2);
        let w = wd(&[(1, 1), (2, 1), (3, -1), (4, 1)]);
        assert_eq!(p.dehn_reduce(&w), w);
    }

    #[test]
    fn conjugacy_key_basics() {
        let p = pres(2);
        let a = CyclicWord::reduce(&wd(&[(2, -1), (1, 1), (2, 1)]));
        let b = CyclicWord::reduce(&wd(&[(1, 1)]));
        assert_eq!(p.conjugacy_key(&a).unwrap(), p.conjugacy_key(&b).unwrap());
        assert_eq!(
            p.conjugacy_key(&CyclicWord::trivial()).unwrap(),
            CyclicWord::trivial()
        );
        let r = CyclicWord::reduce(p.relator());
        assert!(p.is_trivial_class(&r));
        assert!(!p.is_trivial_class(&b));
    }

    #[test]
    fn half_relator_halves_are_conjugate() {
        let p = pres(2);
        let r = p.relator().letters();
        let first: Word = r[..4].iter().copied().collect();
        let second_inv: Word = r[4..].iter().rev().map(|l| l.inverse()).collect();
        let ka = p.conjugacy_key(&CyclicWord::reduce(&first)).unwrap();
        let kb = p.conjugacy_key(&CyclicWord::reduce(&second_inv)).unwrap();
        assert_eq!(ka, kb);
    }

    #[test]
    fn whole_word_cell_moves_merge_short_conjugates() {
        // c1 c2- c3 is a prefix of the genus-2 relator, so it is conjugate
        // to the inverse of the complementary suffix, whose cyclic reduction
        // is c3 c2- c1 -- a different cyclic word of the same length
        let p = pres(2);
        let a = CyclicWord::reduce(&wd(&[(1, 1), (2, -1), (3, 1)]));
        let b = CyclicWord::reduce(&wd(&[(3, 1), (2, -1), (1, 1)]));
        assert_ne!(a, b);
        assert_eq!(p.conjugacy_key(&a).unwrap(), p.conjugacy_key(&b).unwrap());
    }

    #[test]
    fn short_keys_degenerate_to_canonical_rotation() {
        let p = pres(3); // half = 6
        let v = CyclicWord::reduce(&wd(&[(1, 1), (2, 1), (3, 1)]));
        assert_eq!(p.conjugacy_key(&v).unwrap(), v);
    }
}
