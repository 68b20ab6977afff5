//! Plane trees whose vertex colors obey a zero-one coloring matrix: exact
//! counting, equivalence classification, closed forms, functional equations
//! and bijections.
//!
//! A matrix `A` allows a child of color `j` under a parent of color `i`
//! exactly when `a_ij = 1`. Colors are numbered from 1.

pub mod error;
pub mod matrix;
pub mod tree;
pub mod counting;
pub mod series;
pub mod poly;
pub mod analysis;
pub mod closed_forms;
pub mod constructions;
pub mod equivalence;
pub mod classify;
pub mod bijections;

pub use error::{Error, Result};
pub use matrix::{
    apply_permutation, canonical_form, necessary_invariants, parse_matrix, parse_matrix_json,
    Canonizer, ColorPermutation, ColoringMatrix, NecessaryInvariants,
};
pub use tree::{enumerate_plane_trees, glove, unglove, ColoredTree, DyckPath, PlaneTree, Step};
pub use counting::{
    brute_force_counts, count_by_root, count_total, enumerate_colored_trees, SequenceTable,
};
pub use series::TruncatedSeries;
pub use poly::{check_palindromic, parse_polynomial, BivariatePolynomial, IntPoly};
pub use analysis::{
    guess_hypergeometric, guess_linear_recurrence, series_from_counts, solve_system,
    verify_functional_equation, verify_prediction, EquationVerdict, HypergeometricGuess,
    LinearRecurrence, Prediction, SeriesSelector,
};
pub use closed_forms::{
    binom_rational, eval_formula, family5_polys, family6_polys, verify_hyper_identity,
    Family2Part, Formula, HyperTerm, NamedSequence,
};
pub use constructions::{
    adjoin, block_diagonal, blowup, family_matrix, BitBlock, BlockSpec, Construction, Family,
};
pub use equivalence::{
    apply_rewrite, find_rewrites, find_rewrites_bounded, strictly_equivalent, strongly_equivalent,
    tree_coloring_equivalent, EquivalenceKind, EquivalenceVerdict, InvariantFilter, RewriteMove, Verdict,
};
pub use classify::{
    classify_all, default_depth, iso_representatives, CatalogHeader, CatalogSummary,
    ClassificationCatalog, ClassifyOptions, DecimalSeq, IsoClass, StrongClass, TreeClass,
    CATALOG_VERSION,
};
pub use bijections::{
    all_downward_even, ascents_even, downward_paths, is_root3_path, root3_path, root3_path_inv,
    tau, tau_inv, DownwardPathProfile,
};
