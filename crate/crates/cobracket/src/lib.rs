//! String topology coproduct and Turaev cobracket of free homotopy classes
//! of loops on closed oriented surfaces of genus `g >= 2`.
//!
//! Classes are given as cyclic words in the standard generators
//! `c_1, .., c_2g` of the surface group. The combinatorial engine in
//! [`coproduct`] computes the coproduct of the class swept out by rotating
//! a loop by a twelve-case analysis of an explicit immersed representative;
//! the independent engine in [`oracle`] builds that representative in the
//! disk model with exact rational geometry and reads the answer off its
//! actual self-intersections, which is used to cross-validate the former.

pub mod algebra;
pub mod cli;
pub mod coproduct;
pub mod cyclic_words;
pub mod oracle;
pub mod surface_group;
pub mod surface_model;

pub use algebra::{ClassKey, FormalSum, Mode, Normalizer, TensorTerm};
pub use coproduct::{
    coproduct_of_bv, coproduct_on_generator, intersections, turaev_cobracket, CaseLabel,
    CaseTable, CoproductError, IntersectionRecord, LastStepRange,
};
pub use cyclic_words::{CyclicWord, Letter, ReducedWord, Word, WordError};
pub use oracle::{build_curve, compare, oracle_coproduct, OracleError, Schedule};
pub use surface_group::{GroupError, Presentation};
pub use surface_model::{End, Genus, GenusError};
