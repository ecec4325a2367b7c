//! Independent ground-truth engine: builds the explicit disk-model curve
//! for a word, finds all transversal self-intersections by exact rational
//! geometry, assigns signs, cuts, and reads off the coproduct.
//!
//! The curve lives in polar coordinates on the unit disk and consists only
//! of radial segments (fixed angle) and circular arcs (fixed radius), so
//! every self-intersection is a radial/arc crossing decided by exact
//! interval membership. No code is shared with the case analysis in
//! [`crate::coproduct`]; agreement between the two engines is checked by
//! [`compare`].

use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{FormalSum, Normalizer};
use crate::coproduct::{cut_factors, CoproductError, Family, IntersectionRecord, LastStepRange};
use crate::cyclic_words::{Letter, ReducedWord, Word};
use crate::surface_model::{Genus, GenusError};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle requires genus >= 2, got {0}")]
    GenusTooSmall(u32),
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error("schedule violates the construction bounds at index {0}")]
    BadSchedule(usize),
    #[error("degenerate contact between strands {0} and {1} (non-transversal)")]
    Degenerate(usize, usize),
    #[error(transparent)]
    Coproduct(#[from] CoproductError),
}

/// The monotone ε and radius schedules of the construction. Any schedule
/// obeying `0 < ε_1 < .. < ε_m < 1/(8g)` and `1/2 < r_2 < .. < r_m < 1`
/// yields the same coproduct; two are provided so that independence can be
/// tested.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Schedule {
    /// `ε_j = j/(16g(m+1))`, `r_j = 1/2 + j/(2(m+2))`.
    #[default]
    Standard,
    /// `ε_j = j/(32g(m+2))`, `r_j = 1/2 + j/(4(m+2))`.
    Alternate,
}

impl Schedule {
    fn epsilon(&self, g: u32, m: usize, j: usize) -> Rational64 {
        let (g, m, j) = (g as i64, m as i64, j as i64);
        match self {
            Schedule::Standard => Rational64::new(j, 16 * g * (m + 1)),
            Schedule::Alternate => Rational64::new(j, 32 * g * (m + 2)),
        }
    }

    fn radius(&self, m: usize, j: usize) -> Rational64 {
        let (m, j) = (m as i64, j as i64);
        let half = Rational64::new(1, 2);
        match self {
            Schedule::Standard => half + Rational64::new(j, 2 * (m + 2)),
            Schedule::Alternate => half + Rational64::new(j, 4 * (m + 2)),
        }
    }
}

/// Who a strand belongs to, in loop order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StrandOwner {
    /// `δ_1`, the initial outward radial.
    DeltaFirst,
    /// The inward radial of `μ_j`.
    MuIn(usize),
    /// The circular arc of `μ_j` at radius `r_j`.
    MuArc(usize),
    /// The outward radial of `μ_j`.
    MuOut(usize),
    /// The connector `ν_p` along the strip of letter `v_p`.
    Nu(usize),
    /// `δ_{m+1}`, the final inward radial.
    DeltaLast,
}

impl std::fmt::Display for StrandOwner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StrandOwner::DeltaFirst => write!(f, "delta_1"),
            StrandOwner::MuIn(j) => write!(f, "mu_{j}.in"),
            StrandOwner::MuArc(j) => write!(f, "mu_{j}.arc"),
            StrandOwner::MuOut(j) => write!(f, "mu_{j}.out"),
            StrandOwner::Nu(p) => write!(f, "nu_{p}"),
            StrandOwner::DeltaLast => write!(f, "delta_last"),
        }
    }
}

/// Geometry of one strand, in polar coordinates on the unit disk.
#[derive(Clone, Copy, Debug)]
pub enum StrandKind {
    /// Fixed angle, radius running over `(lo, hi)`; `outward` is the
    /// traversal direction.
    Radial {
        angle: Rational64,
        lo: Rational64,
        hi: Rational64,
        outward: bool,
    },
    /// Fixed radius; angles swept from `start` over a length of `sweep`
    /// in direction `dir` (`+1` counterclockwise).
    Arc {
        radius: Rational64,
        start: Rational64,
        sweep: Rational64,
        dir: i8,
    },
    /// A connector along a strip, away from the disk; carries letter `v_p`.
    Connector { letter: Letter },
}

/// One strand with its loop-sequence position (its index in the strand
/// list of the [`CurveModel`]).
#[derive(Clone, Copy, Debug)]
pub struct Strand {
    pub owner: StrandOwner,
    pub kind: StrandKind,
}

/// The constructed curve: the loop `δ_1 ν_1 μ_2 ν_2 .. μ_m ν_m δ_{m+1}`
/// as an ordered strand list.
#[derive(Clone, Debug)]
pub struct CurveModel {
    pub genus: Genus,
    pub word: ReducedWord,
    pub strands: Vec<Strand>,
}

fn frac(x: Rational64) -> Rational64 {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < Rational64::one());
    f
}

/// Builds the disk-model curve of `v` under `schedule`.
pub fn build_curve(
    genus: Genus,
    v: &ReducedWord,
    schedule: Schedule,
) -> Result<CurveModel, OracleError> {
    if genus.value() < 2 {
        return Err(OracleError::GenusTooSmall(genus.value()));
    }
    let g = genus.value();
    let m = v.len();
    let theta = |e| Rational64::new(genus.slot(e) as i64, genus.end_count() as i64);
    let eps = |j: usize| schedule.epsilon(g, m, j);
    // schedule sanity: strict monotonicity and the 1/(8g) bound
    for j in 1..=m {
        if !(eps(j).is_positive() && eps(j) < Rational64::new(1, 8 * g as i64)) {
            return Err(OracleError::BadSchedule(j));
        }
        if j > 1 && eps(j) <= eps(j - 1) {
            return Err(OracleError::BadSchedule(j));
        }
        if j >= 2 {
            let r = schedule.radius(m, j);
            if !(r > Rational64::new(1, 2) && r < Rational64::one()) {
                return Err(OracleError::BadSchedule(j));
            }
            if j > 2 && r <= schedule.radius(m, j - 1) {
                return Err(OracleError::BadSchedule(j));
            }
        }
    }

    let mut ends = Vec::with_capacity(m + 1);
    ends.push(None);
    for p in 1..=m {
        ends.push(Some(genus.ends_of_letter(v.letter(p))?));
    }
    let fj = |p: usize| ends[p].unwrap().0;
    let fbar = |p: usize| ends[p].unwrap().1;

    let mut strands = Vec::new();
    strands.push(Strand {
        owner: StrandOwner::DeltaFirst,
        kind: StrandKind::Radial {
            angle: frac(theta(fj(1)) + eps(1)),
            lo: Rational64::zero(),
            hi: Rational64::one(),
            outward: true,
        },
    });
    strands.push(Strand {
        owner: StrandOwner::Nu(1),
        kind: StrandKind::Connector { letter: v.letter(1) },
    });
    for j in 2..=m {
        let r = schedule.radius(m, j);
        let a_in = frac(theta(fbar(j - 1)) - eps(j - 1));
        let a_out = frac(theta(fj(j)) + eps(j));
        let (sweep, dir) = if fj(j) == fj(j - 1) {
            // the long positive way almost once around the near side
            (Rational64::new(1, 2) + eps(j) + eps(j - 1), 1)
        } else {
            let d_pos = frac(a_out - a_in);
            let d_neg = Rational64::one() - d_pos;
            if d_pos == d_neg {
                return Err(OracleError::Degenerate(j, j));
            }
            if d_pos < d_neg {
                (d_pos, 1)
            } else {
                (d_neg, -1)
            }
        };
        // construction identity: the arc must land on the outward radial
        let landing = frac(a_in + Rational64::from(dir as i64) * sweep);
        assert_eq!(landing, a_out, "arc of step {j} misses its radial");
        strands.push(Strand {
            owner: StrandOwner::MuIn(j),
            kind: StrandKind::Radial {
                angle: a_in,
                lo: r,
                hi: Rational64::one(),
                outward: false,
            },
        });
        strands.push(Strand {
            owner: StrandOwner::MuArc(j),
            kind: StrandKind::Arc {
                radius: r,
                start: a_in,
                sweep,
                dir,
            },
        });
        strands.push(Strand {
            owner: StrandOwner::MuOut(j),
            kind: StrandKind::Radial {
                angle: a_out,
                lo: r,
                hi: Rational64::one(),
                outward: true,
            },
        });
        strands.push(Strand {
            owner: StrandOwner::Nu(j),
            kind: StrandKind::Connector { letter: v.letter(j) },
        });
    }
    strands.push(Strand {
        owner: StrandOwner::DeltaLast,
        kind: StrandKind::Radial {
            angle: frac(theta(fbar(m)) - eps(m)),
            lo: Rational64::zero(),
            hi: Rational64::one(),
            outward: false,
        },
    });
    Ok(CurveModel {
        genus,
        word: v.clone(),
        strands,
    })
}

/// One transversal self-intersection: the loop-sequence positions of the
/// two strands through it and the sign of Lemma 4.1's orientation rule.
#[derive(Clone, Copy, Debug)]
pub struct GeometricIntersection {
    /// Index of the earlier strand in the strand list.
    pub earlier: usize,
    /// Index of the later strand.
    pub later: usize,
    pub sign: i8,
    /// The point, as (radius, angle).
    pub point: (Rational64, Rational64),
}

/// Is `angle` strictly interior to the swept interval of an arc?
fn angle_in_sweep(angle: Rational64, start: Rational64, sweep: Rational64, dir: i8) -> bool {
    let delta = frac(Rational64::from(dir as i64) * (angle - start));
    delta.is_positive() && delta < sweep
}

fn crossing(
    radial: &StrandKind,
    arc: &StrandKind,
) -> Option<(Rational64, Rational64)> {
    let StrandKind::Radial { angle, lo, hi, .. } = *radial else {
        return None;
    };
    let StrandKind::Arc { radius, start, sweep, dir } = *arc else {
        return None;
    };
    if radius > lo && radius < hi && angle_in_sweep(angle, start, sweep, dir) {
        Some((radius, angle))
    } else {
        None
    }
}

/// The tangent vector of a strand in the frame (radial-out, ccw-tangent).
fn tangent(kind: &StrandKind) -> (i8, i8) {
    match kind {
        StrandKind::Radial { outward, .. } => (if *outward { 1 } else { -1 }, 0),
        StrandKind::Arc { dir, .. } => (0, *dir),
        StrandKind::Connector { .. } => (0, 0),
    }
}

/// All self-intersections of the curve, found by exhaustive exact
/// radial/arc crossing tests over strand pairs.
pub fn oracle_intersections(
    curve: &CurveModel,
) -> Result<Vec<GeometricIntersection>, OracleError> {
    let mut out = Vec::new();
    for (s, a) in curve.strands.iter().enumerate() {
        for (t, b) in curve.strands.iter().enumerate().skip(s + 1) {
            let point = match (&a.kind, &b.kind) {
                (StrandKind::Radial { .. }, StrandKind::Arc { .. }) => crossing(&a.kind, &b.kind),
                (StrandKind::Arc { .. }, StrandKind::Radial { .. }) => crossing(&b.kind, &a.kind),
                _ => None,
            };
            let Some(point) = point else { continue };
            let (ur, ut) = tangent(&a.kind);
            let (wr, wt) = tangent(&b.kind);
            let det = ur * wt - ut * wr;
            if det == 0 {
                return Err(OracleError::Degenerate(s, t));
            }
            out.push(GeometricIntersection {
                earlier: s,
                later: t,
                sign: if det > 0 { -1 } else { 1 },
                point,
            });
        }
    }
    Ok(out)
}

/// The two cut pieces of an intersection: the letters whose connector lies
/// strictly between the strands, and the complementary letters in loop
/// order.
pub fn cut_pieces(curve: &CurveModel, x: &GeometricIntersection) -> (Word, Word) {
    let mut inner = Word::empty();
    let mut outer_tail = Word::empty();
    let mut outer_head = Word::empty();
    for (pos, s) in curve.strands.iter().enumerate() {
        let StrandKind::Connector { letter } = s.kind else {
            continue;
        };
        if pos > x.earlier && pos < x.later {
            inner.push(letter);
        } else if pos > x.later {
            outer_tail.push(letter);
        } else {
            outer_head.push(letter);
        }
    }
    (inner, outer_tail.concat(&outer_head))
}

/// The coproduct read off the geometric curve.
pub fn oracle_coproduct(
    genus: Genus,
    v: &ReducedWord,
    schedule: Schedule,
    norm: &Normalizer,
) -> Result<FormalSum, OracleError> {
    let curve = build_curve(genus, v, schedule)?;
    let mut sum = FormalSum::zero();
    for x in oracle_intersections(&curve)? {
        let (p1, p2) = cut_pieces(&curve, &x);
        sum.insert_pair(norm, &p1, &p2, x.sign as i64)
            .map_err(CoproductError::from)?;
        sum.insert_pair(norm, &p2, &p1, -(x.sign as i64))
            .map_err(CoproductError::from)?;
    }
    Ok(sum)
}

/// The strand pair a combinatorial record must correspond to.
fn expected_strands(r: &IntersectionRecord, m: usize) -> (StrandOwner, StrandOwner) {
    if r.j == m + 1 {
        (StrandOwner::MuArc(r.k), StrandOwner::DeltaLast)
    } else {
        let radial = match r.family() {
            Family::Q => {
                if r.k == 1 {
                    StrandOwner::DeltaFirst
                } else {
                    StrandOwner::MuOut(r.k)
                }
            }
            Family::QBar => StrandOwner::MuIn(r.k + 1),
        };
        (radial, StrandOwner::MuArc(r.j))
    }
}

/// One line of disagreement between the two engines.
#[derive(Clone, Debug)]
pub enum Discrepancy {
    /// A combinatorial record with no geometric counterpart (or a sign or
    /// cut mismatch at its strand pair).
    Record(IntersectionRecord, String),
    /// A geometric intersection not claimed by any record.
    Unclaimed(StrandOwner, StrandOwner, i8),
    /// The two formal sums differ.
    SumMismatch { combinatorial: String, oracle: String },
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Discrepancy::Record(r, why) => write!(
                f,
                "record (j={}, k={}, case {}, sign {:+}): {why}",
                r.j, r.k, r.label, r.sign
            ),
            Discrepancy::Unclaimed(a, b, sign) => {
                write!(f, "geometric intersection {a} x {b} (sign {sign:+}) unclaimed")
            }
            Discrepancy::SumMismatch { combinatorial, oracle } => {
                write!(f, "sums differ: combinatorial = {combinatorial}, oracle = {oracle}")
            }
        }
    }
}

/// Outcome of running both engines on one word.
#[derive(Debug)]
pub struct ComparisonReport {
    pub combinatorial: FormalSum,
    pub oracle: FormalSum,
    pub record_count: usize,
    pub intersection_count: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl ComparisonReport {
    pub fn matched(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Runs the combinatorial engine and the oracle and checks that the sums
/// agree and that records and geometric intersections are in sign- and
/// cut-preserving bijection.
pub fn compare(
    genus: Genus,
    v: &ReducedWord,
    norm: &Normalizer,
) -> Result<ComparisonReport, OracleError> {
    compare_with(genus, v, norm, Schedule::Standard, LastStepRange::default(), &crate::coproduct::CaseTable::default())
}

pub fn compare_with(
    genus: Genus,
    v: &ReducedWord,
    norm: &Normalizer,
    schedule: Schedule,
    range: LastStepRange,
    table: &crate::coproduct::CaseTable,
) -> Result<ComparisonReport, OracleError> {
    let records = crate::coproduct::intersections_with(genus, v, range, table)?;
    let mut combinatorial = FormalSum::zero();
    for r in &records {
        let (a, b) = cut_factors(v, r);
        combinatorial
            .insert_pair(norm, &a, &b, r.sign as i64)
            .map_err(CoproductError::from)?;
        combinatorial
            .insert_pair(norm, &b, &a, -(r.sign as i64))
            .map_err(CoproductError::from)?;
    }

    let curve = build_curve(genus, v, schedule)?;
    let geometric = oracle_intersections(&curve)?;
    let mut oracle = FormalSum::zero();
    for x in &geometric {
        let (p1, p2) = cut_pieces(&curve, x);
        oracle
            .insert_pair(norm, &p1, &p2, x.sign as i64)
            .map_err(CoproductError::from)?;
        oracle
            .insert_pair(norm, &p2, &p1, -(x.sign as i64))
            .map_err(CoproductError::from)?;
    }

    let mut discrepancies = Vec::new();
    let m = v.len();
    let mut claimed = vec![false; geometric.len()];
    for r in &records {
        let want = expected_strands(r, m);
        let found = geometric.iter().enumerate().find(|(_, x)| {
            (curve.strands[x.earlier].owner, curve.strands[x.later].owner) == want
        });
        match found {
            None => discrepancies.push(Discrepancy::Record(
                *r,
                format!("no geometric intersection at {} x {}", want.0, want.1),
            )),
            Some((i, x)) => {
                claimed[i] = true;
                if x.sign != r.sign {
                    discrepancies.push(Discrepancy::Record(
                        *r,
                        format!("geometric sign is {:+}", x.sign),
                    ));
                } else {
                    let (p1, p2) = cut_pieces(&curve, x);
                    let (a, b) = cut_factors(v, r);
                    if p1.letters() != a.letters() || p2.letters() != b.letters() {
                        discrepancies.push(Discrepancy::Record(
                            *r,
                            format!("cut pieces differ: geometric ({p1}, {p2}) vs ({a}, {b})"),
                        ));
                    }
                }
            }
        }
    }
    for (i, x) in geometric.iter().enumerate() {
        if !claimed[i] {
            discrepancies.push(Discrepancy::Unclaimed(
                curve.strands[x.earlier].owner,
                curve.strands[x.later].owner,
                x.sign,
            ));
        }
    }
    if combinatorial != oracle {
        discrepancies.push(Discrepancy::SumMismatch {
            combinatorial: combinatorial.to_string(),
            oracle: oracle.to_string(),
        });
    }
    Ok(ComparisonReport {
        combinatorial,
        oracle,
        record_count: records.len(),
        intersection_count: geometric.len(),
        discrepancies,
    })
}

fn polar_to_xy(r: Rational64, angle: Rational64) -> (f64, f64) {
    let r = *r.numer() as f64 / *r.denom() as f64;
    let a = (*angle.numer() as f64 / *angle.denom() as f64) * std::f64::consts::TAU;
    (r * a.cos(), -r * a.sin()) // SVG y axis points down
}

/// Renders the curve and its intersection points into a standalone SVG.
pub fn to_svg(curve: &CurveModel) -> Result<String, OracleError> {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.1 -1.1 2.2 2.2" width="600" height="600">"#
    );
    let _ = writeln!(
        s,
        r##"  <circle cx="0" cy="0" r="1" fill="none" stroke="#ccc" stroke-width="0.008"/>"##
    );
    for strand in &curve.strands {
        match strand.kind {
            StrandKind::Radial { angle, lo, hi, .. } => {
                let (x1, y1) = polar_to_xy(lo, angle);
                let (x2, y2) = polar_to_xy(hi, angle);
                let _ = writeln!(
                    s,
                    r##"  <line x1="{x1:.4}" y1="{y1:.4}" x2="{x2:.4}" y2="{y2:.4}" stroke="#1a6" stroke-width="0.01"/>"##
                );
            }
            StrandKind::Arc { radius, start, sweep, dir } => {
                let end = start + Rational64::from(dir as i64) * sweep;
                let (x1, y1) = polar_to_xy(radius, start);
                let (x2, y2) = polar_to_xy(radius, end);
                let r = *radius.numer() as f64 / *radius.denom() as f64;
                let large = if sweep > Rational64::new(1, 2) { 1 } else { 0 };
                // positive mathematical direction is negative SVG sweep
                let svg_sweep = if dir > 0 { 0 } else { 1 };
                let _ = writeln!(
                    s,
                    r##"  <path d="M {x1:.4} {y1:.4} A {r:.4} {r:.4} 0 {large} {svg_sweep} {x2:.4} {y2:.4}" fill="none" stroke="#36c" stroke-width="0.01"/>"##
                );
            }
            StrandKind::Connector { .. } => {}
        }
    }
    for x in oracle_intersections(curve)? {
        let (px, py) = polar_to_xy(x.point.0, x.point.1);
        let _ = writeln!(
            s,
            r##"  <circle cx="{px:.4}" cy="{py:.4}" r="0.02" fill="#c22"/>"##
        );
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}
