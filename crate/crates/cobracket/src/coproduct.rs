//! The combinatorial coproduct algorithm: from a cyclically reduced word,
//! the twelve-case intersection analysis produces the sets Q and Q̄ with
//! signs, from which the coproduct of the swept class, the generator
//! coproduct, and the Turaev cobracket are assembled.

use thiserror::Error;

use crate::algebra::{FormalSum, Normalizer};
use crate::cyclic_words::{ReducedWord, Word};
use crate::surface_group::GroupError;
use crate::surface_model::{End, Genus, GenusError};

#[derive(Debug, Error)]
pub enum CoproductError {
    #[error("coproduct requires genus >= 2, got {0}")]
    GenusTooSmall(u32),
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("coefficient of {term} is not divisible by the level {level}")]
    NotDivisibleByLevel { term: String, level: usize },
    #[error("coproduct on the generator requires a nonempty word")]
    EmptyWord,
}

/// The twelve intersection cases of the step analysis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CaseLabel {
    C1a,
    C1b,
    C1c,
    C1d,
    C1e,
    C1f,
    C2a,
    C2b,
    C3a,
    C3b,
    C3c,
    C3d,
}

pub const ALL_CASES: [CaseLabel; 12] = [
    CaseLabel::C1a,
    CaseLabel::C1b,
    CaseLabel::C1c,
    CaseLabel::C1d,
    CaseLabel::C1e,
    CaseLabel::C1f,
    CaseLabel::C2a,
    CaseLabel::C2b,
    CaseLabel::C3a,
    CaseLabel::C3b,
    CaseLabel::C3c,
    CaseLabel::C3d,
];

/// Which of the two output families a case feeds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Q,
    QBar,
}

impl CaseLabel {
    pub fn index(self) -> usize {
        ALL_CASES.iter().position(|&c| c == self).unwrap()
    }

    pub fn family(self) -> Family {
        match self {
            CaseLabel::C1b | CaseLabel::C1d | CaseLabel::C1f | CaseLabel::C2b => Family::QBar,
            _ => Family::Q,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::C1a => "1a",
            CaseLabel::C1b => "1b",
            CaseLabel::C1c => "1c",
            CaseLabel::C1d => "1d",
            CaseLabel::C1e => "1e",
            CaseLabel::C1f => "1f",
            CaseLabel::C2a => "2a",
            CaseLabel::C2b => "2b",
            CaseLabel::C3a => "3a",
            CaseLabel::C3b => "3b",
            CaseLabel::C3c => "3c",
            CaseLabel::C3d => "3d",
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The fixed sign per case.
pub const DEFAULT_SIGNS: [i8; 12] = [-1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, 1];

/// Sign table plus per-case enable flags. The mutation harness flips single
/// entries; everything else uses [`CaseTable::default`].
#[derive(Clone, Copy, Debug)]
pub struct CaseTable {
    pub enabled: [bool; 12],
    pub signs: [i8; 12],
}

impl Default for CaseTable {
    fn default() -> Self {
        CaseTable {
            enabled: [true; 12],
            signs: DEFAULT_SIGNS,
        }
    }
}

impl CaseTable {
    pub fn with_sign_flipped(label: CaseLabel) -> CaseTable {
        let mut t = CaseTable::default();
        t.signs[label.index()] = -t.signs[label.index()];
        t
    }

    pub fn with_case_dropped(label: CaseLabel) -> CaseTable {
        let mut t = CaseTable::default();
        t.enabled[label.index()] = false;
        t
    }
}

/// The step-(m+1) k-range. The printed case list stops at `m-1`, which is
/// the default; the conditions at `k = m` are unsatisfiable either way, so
/// both ranges agree on every input.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum LastStepRange {
    /// k in 2..=m-1
    #[default]
    ExcludeM,
    /// k in 2..=m
    IncludeM,
}

/// One self-intersection found by the step analysis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IntersectionRecord {
    /// Step index in `2..=m+1`.
    pub j: usize,
    /// Partner index in `1..=m`.
    pub k: usize,
    pub label: CaseLabel,
    pub sign: i8,
}

impl IntersectionRecord {
    pub fn family(&self) -> Family {
        self.label.family()
    }
}

fn require_genus(genus: Genus) -> Result<(), CoproductError> {
    if genus.value() < 2 {
        return Err(CoproductError::GenusTooSmall(genus.value()));
    }
    Ok(())
}

/// Per-letter ends and step directions of a representative.
struct Steps {
    f: Vec<End>,
    fbar: Vec<End>,
    /// `s[j]` for `j` in `2..=m`; index 0 and 1 unused.
    s: Vec<i8>,
}

impl Steps {
    fn compute(genus: Genus, v: &ReducedWord) -> Result<Steps, CoproductError> {
        let m = v.len();
        let mut f = Vec::with_capacity(m + 1);
        let mut fbar = Vec::with_capacity(m + 1);
        f.push(End::outgoing(1)); // dummy at index 0
        fbar.push(End::ingoing(1));
        for i in 1..=m {
            let (fi, fbari) = genus.ends_of_letter(v.letter(i))?;
            f.push(fi);
            fbar.push(fbari);
        }
        let mut s = vec![0i8; m + 1];
        for j in 2..=m {
            s[j] = direction_from_ends(genus, f[j - 1], fbar[j - 1], f[j]);
        }
        Ok(Steps { f, fbar, s })
    }
}

fn direction_from_ends(genus: Genus, f_prev: End, fbar_prev: End, f_cur: End) -> i8 {
    if f_cur == f_prev {
        return 1;
    }
    let n = genus.end_count();
    let d_pos = (genus.slot(f_cur) + n - genus.slot(fbar_prev)) % n;
    // d_pos = 0 and d_pos = 2g are excluded by cyclic reducedness
    debug_assert!(d_pos != 0 && d_pos != n / 2);
    if d_pos < n - d_pos {
        1
    } else {
        -1
    }
}

/// The arc direction `s_j` at step `j` in `2..=m`: positive when the ends
/// coincide, otherwise the shorter way from `f̄_{j-1}` to `f_j`.
pub fn direction(genus: Genus, v: &ReducedWord, j: usize) -> Result<i8, CoproductError> {
    require_genus(genus)?;
    let m = v.len();
    if j < 2 || j > m {
        return Err(GenusError::GeneratorOutOfRange {
            gen: j as u32,
            max: m as u32,
        }
        .into());
    }
    let steps = Steps::compute(genus, v)?;
    Ok(steps.s[j])
}

/// Runs the step analysis with the default case table.
pub fn intersections(
    genus: Genus,
    v: &ReducedWord,
    range: LastStepRange,
) -> Result<Vec<IntersectionRecord>, CoproductError> {
    intersections_with(genus, v, range, &CaseTable::default())
}

/// The full step analysis: for each step `j = 2..=m+1` every earlier index
/// `k` is classified against the twelve cases; each emitted record carries
/// the case's fixed sign from `table`.
pub fn intersections_with(
    genus: Genus,
    v: &ReducedWord,
    range: LastStepRange,
    table: &CaseTable,
) -> Result<Vec<IntersectionRecord>, CoproductError> {
    require_genus(genus)?;
    let m = v.len();
    let mut records = Vec::new();
    if m < 2 {
        return Ok(records);
    }
    let steps = Steps::compute(genus, v)?;
    let (f, fbar, s) = (&steps.f, &steps.fbar, &steps.s);
    let mut emit = |j: usize, k: usize, label: CaseLabel| {
        if table.enabled[label.index()] {
            records.push(IntersectionRecord {
                j,
                k,
                label,
                sign: table.signs[label.index()],
            });
        }
    };

    for j in 2..=m {
        if s[j] == 1 {
            for k in 1..j {
                // at most one of 1a/1c/1e holds for a pair (j,k)
                if f[k] == f[j] {
                    emit(j, k, CaseLabel::C1c);
                } else if k < j - 1 && f[k] == fbar[j - 1] {
                    emit(j, k, CaseLabel::C1e);
                } else if genus.cyclic_between(fbar[j - 1], f[k], f[j]) {
                    emit(j, k, CaseLabel::C1a);
                }
                // and at most one of 1b/1d/1f
                if fbar[k] == f[j] {
                    emit(j, k, CaseLabel::C1d);
                } else if k < j - 1 && fbar[k] == fbar[j - 1] {
                    emit(j, k, CaseLabel::C1f);
                } else if genus.cyclic_between(fbar[j - 1], fbar[k], f[j]) {
                    emit(j, k, CaseLabel::C1b);
                }
            }
        } else {
            for k in 1..j {
                if genus.cyclic_between(f[j], f[k], fbar[j - 1]) {
                    emit(j, k, CaseLabel::C2a);
                }
                if genus.cyclic_between(f[j], fbar[k], fbar[j - 1]) {
                    emit(j, k, CaseLabel::C2b);
                }
            }
        }
    }

    let k_max = match range {
        LastStepRange::ExcludeM => m.saturating_sub(1),
        LastStepRange::IncludeM => m,
    };
    for k in 2..=k_max {
        if s[k] == 1 {
            if f[k] == fbar[m] {
                emit(m + 1, k, CaseLabel::C3c);
            } else if genus.cyclic_between(fbar[k - 1], fbar[m], f[k]) {
                emit(m + 1, k, CaseLabel::C3a);
            }
        } else if fbar[k - 1] == fbar[m] {
            emit(m + 1, k, CaseLabel::C3d);
        } else if genus.cyclic_between(f[k], fbar[m], fbar[k - 1]) {
            emit(m + 1, k, CaseLabel::C3b);
        }
    }

    records.sort_by_key(|r| (r.j, r.k, r.label));
    Ok(records)
}

/// The two cut factors of a record, as linear subwords of the representative.
pub fn cut_factors(v: &ReducedWord, r: &IntersectionRecord) -> (Word, Word) {
    let m = v.len();
    let wrap = |i: usize| ((i - 1) % m) + 1;
    match r.family() {
        Family::Q => {
            let a = v.subword(wrap(r.k), wrap(r.j + m - 1)).unwrap();
            let b = v.subword(wrap(r.j), wrap(r.k + m - 1)).unwrap();
            (a, b)
        }
        Family::QBar => {
            let a = v.subword(wrap(r.k + 1), wrap(r.j + m - 1)).unwrap();
            let b = v.subword(wrap(r.j), wrap(r.k)).unwrap();
            (a, b)
        }
    }
}

fn assemble(
    v: &ReducedWord,
    records: &[IntersectionRecord],
    norm: &Normalizer,
) -> Result<FormalSum, CoproductError> {
    let mut sum = FormalSum::zero();
    for r in records {
        let (a, b) = cut_factors(v, r);
        sum.insert_pair(norm, &a, &b, r.sign as i64)?;
        sum.insert_pair(norm, &b, &a, -(r.sign as i64))?;
    }
    Ok(sum)
}

/// The coproduct of the class swept out by rotating the loop of `v`
/// (the main output of the step analysis).
pub fn coproduct_of_bv(
    genus: Genus,
    v: &ReducedWord,
    norm: &Normalizer,
) -> Result<FormalSum, CoproductError> {
    coproduct_of_bv_with(genus, v, norm, LastStepRange::default(), &CaseTable::default())
}

pub fn coproduct_of_bv_with(
    genus: Genus,
    v: &ReducedWord,
    norm: &Normalizer,
    range: LastStepRange,
    table: &CaseTable,
) -> Result<FormalSum, CoproductError> {
    let records = intersections_with(genus, v, range, table)?;
    assemble(v, &records, norm)
}

/// The coproduct of the degree-1 generator of the component of `v`: the
/// swept-class coproduct divided exactly by the level of `v`.
pub fn coproduct_on_generator(
    genus: Genus,
    v: &ReducedWord,
    norm: &Normalizer,
) -> Result<FormalSum, CoproductError> {
    if v.is_empty() {
        return Err(CoproductError::EmptyWord);
    }
    let sum = coproduct_of_bv(genus, v, norm)?;
    let level = v.level();
    sum.exact_div(level as u64).ok_or_else(|| {
        use num_traits::Zero;
        let n = num_bigint::BigInt::from(level);
        let term = sum
            .iter()
            .find(|(_, c)| !(*c % &n).is_zero())
            .map(|(t, _)| t.to_string())
            .unwrap_or_default();
        CoproductError::NotDivisibleByLevel { term, level }
    })
}

/// The Turaev cobracket: the negated swept-class coproduct with trivial
/// factors projected away (the projection is built into term insertion).
pub fn turaev_cobracket(
    genus: Genus,
    v: &ReducedWord,
    norm: &Normalizer,
) -> Result<FormalSum, CoproductError> {
    Ok(coproduct_of_bv(genus, v, norm)?.negate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_words::Letter;

    fn rw(ls: &[(u32, i8)]) -> ReducedWord {
        ReducedWord::new(
            &ls.iter()
                .map(|&(g, s)| Letter::new(g, s).unwrap())
                .collect(),
        )
    }

    fn g(v: u32) -> Genus {
        Genus::new(v).unwrap()
    }

    const EXAMPLE_G3: &[(u32, i8)] = &[(4, 1), (6, 1), (3, 1), (1, -1), (5, -1), (4, 1)];
    const FIGURE_G2: &[(u32, i8)] = &[(1, 1), (1, 1), (3, 1), (1, -1), (3, 1)];

    #[test]
    fn directions() {
        let v = rw(EXAMPLE_G3);
        assert_eq!(direction(g(3), &v, 5).unwrap(), -1);
        assert_eq!(direction(g(3), &v, 2).unwrap(), -1);
        // consecutive equal letters go positively
        let v = rw(&[(1, 1), (1, 1), (3, 1), (1, -1), (3, 1)]);
        assert_eq!(direction(g(2), &v, 2).unwrap(), 1);
        // adjacent slots take the short positive way
        let v = rw(&[(1, 1), (3, 1)]);
        // fbar_1 = e1' (slot 4), f_2 = e3 (slot 2): d+ = 6 > 4 -> -1
        assert_eq!(direction(g(2), &v, 2).unwrap(), -1);
    }

    #[test]
    fn figure_fixture_records() {
        let recs = intersections(g(2), &rw(FIGURE_G2), LastStepRange::default()).unwrap();
        let got: Vec<(usize, usize, &str, i8)> =
            recs.iter().map(|r| (r.j, r.k, r.label.name(), r.sign)).collect();
        assert_eq!(
            got,
            vec![
                (2, 1, "1c", -1),
                (5, 1, "1e", -1),
                (5, 2, "1e", -1),
                (5, 3, "1c", -1),
                (6, 2, "3a", -1),
                (6, 4, "3d", 1),
            ]
        );
    }

    #[test]
    fn example_fixture_records() {
        let recs = intersections(g(3), &rw(EXAMPLE_G3), LastStepRange::default()).unwrap();
        let got: Vec<(usize, usize, &str, i8)> =
            recs.iter().map(|r| (r.j, r.k, r.label.name(), r.sign)).collect();
        assert_eq!(got, vec![(5, 2, "2b", -1), (7, 2, "3d", 1)]);
    }

    #[test]
    fn single_letter_has_no_intersections() {
        assert!(intersections(g(2), &rw(&[(1, 1)]), LastStepRange::default())
            .unwrap()
            .is_empty());
        assert!(intersections(g(2), &rw(&[]), LastStepRange::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cut_factor_lengths_sum_to_m() {
        for (genus, word) in [(g(3), rw(EXAMPLE_G3)), (g(2), rw(FIGURE_G2))] {
            let m = word.len();
            for r in intersections(genus, &word, LastStepRange::default()).unwrap() {
                let (a, b) = cut_factors(&word, &r);
                assert_eq!(a.len() + b.len(), m, "record {r:?}");
            }
        }
    }

    #[test]
    fn example_coproduct_matches_paper() {
        let norm = Normalizer::literal();
        let sum = coproduct_of_bv(g(3), &rw(EXAMPLE_G3), &norm).unwrap();
        let mut expect = FormalSum::zero();
        let a: Word = rw(&[(3, 1), (1, -1)]).as_word();
        let b: Word = rw(&[(5, -1), (4, 1), (4, 1), (6, 1)]).as_word();
        let c: Word = rw(&[(6, 1), (3, 1), (1, -1), (5, -1), (4, 1)]).as_word();
        let d: Word = rw(&[(4, 1)]).as_word();
        expect.insert_pair(&norm, &a, &b, -1).unwrap();
        expect.insert_pair(&norm, &b, &a, 1).unwrap();
        expect.insert_pair(&norm, &c, &d, 1).unwrap();
        expect.insert_pair(&norm, &d, &c, -1).unwrap();
        assert_eq!(sum, expect);
    }

    #[test]
    fn rejects_genus_one() {
        assert!(matches!(
            intersections(Genus::new(1).unwrap(), &rw(&[(1, 1)]), LastStepRange::default()),
            Err(CoproductError::GenusTooSmall(1))
        ));
    }

    #[test]
    fn generator_coproduct_divides_by_level() {
        let norm = Normalizer::new(g(2), crate::algebra::Mode::Dehn).unwrap();
        let v = rw(&[(1, 1), (2, 1), (1, 1), (2, 1)]);
        assert_eq!(v.level(), 2);
        let bv = coproduct_of_bv(g(2), &v, &norm).unwrap();
        let gen = coproduct_on_generator(g(2), &v, &norm).unwrap();
        assert_eq!(gen.scalar_mul(2), bv);
        // level-1 words are unchanged
        let v = rw(EXAMPLE_G3);
        let norm3 = Normalizer::new(g(3), crate::algebra::Mode::Dehn).unwrap();
        assert_eq!(
            coproduct_on_generator(g(3), &v, &norm3).unwrap(),
            coproduct_of_bv(g(3), &v, &norm3).unwrap()
        );
    }

    #[test]
    fn turaev_is_negation() {
        let norm = Normalizer::literal();
        let v = rw(EXAMPLE_G3);
        let bv = coproduct_of_bv(g(3), &v, &norm).unwrap();
        let t = turaev_cobracket(g(3), &v, &norm).unwrap();
        assert_eq!(t, bv.negate());
        assert_eq!(t.swap_factors(), t.negate());
    }
}
