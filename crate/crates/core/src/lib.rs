//! Toroidal grid diagrams of links in lens spaces L(p, q).
//!
//! A diagram lives on the Heegaard torus of L(p, q), drawn as `n` rows by
//! `p·n` columns. This crate validates and transforms such diagrams with grid
//! isotopy moves and the diffeomorphisms τ, σ+ and σ−, computes homology
//! classes, lifts diagrams to the 3-sphere along the universal cyclic cover,
//! evaluates the Kauffman bracket of the lift, and searches for isotopy and
//! diffeomorphism equivalences.

pub mod bracket;
pub mod diffeo;
pub mod equivalence;
pub mod exec;
pub mod grid;
pub mod homology;
pub mod lens;
pub mod moves;
pub mod planar;
pub mod poly;
pub mod random;
pub mod text;

pub use bracket::{
    kauffman_bracket, kauffman_bracket_exhaustive, lift_normalized_poly, normalize, normalized_poly, BracketConfig,
    BracketError, DEFAULT_CAP,
};
pub use diffeo::{
    apply, apply_word, diffeo_orbit, diffeotopy_case, expected_homology_action, parse_word, sigma_minus, sigma_plus,
    tau, DiffeoElement, DiffeoError, DiffeotopyCase, Generator, Sigma,
};
pub use equivalence::{
    canonical_form, diffeo_classify, enumerate_diagrams, invariants, isotopy_search, parse_catalog, replay, tabulate,
    text_order, verify_path, verify_report, CanonicalForm, Catalog, CatalogClass, CatalogError, EquivalenceError,
    EquivalenceReport, Invariants, SearchConfig, SearchStats, Verdict, Witness, DEFAULT_BUDGET, DEFAULT_N_SLACK,
};
pub use exec::Exec;
pub use grid::{
    col_cell_to_rect, rect_to_col_cell, trace_components, translate, validate, Cell, Component, GridDiagram, GridError,
    MarkType, Marking, MarkingSet, ValidationReport, Violation,
};
pub use homology::{
    homology_class, homology_classes, homology_multiset, is_primitive_homologous, lift_component_count_formula,
    lift_grid, HomologyError,
};
pub use lens::{LensError, LensSpace};
pub use moves::{
    apply_move, commute_cols, commute_rows, destabilize, neighbors, stabilize, Corner, Inapplicable, MoveError,
    MoveKind,
};
pub use planar::{linking_matrix, mirror, planar_diagram, writhe, Crossing, PlanarDiagram, PlanarError};
pub use poly::{LaurentPoly, PolyParseError};
pub use text::{parse, parse_markings, render, render_ascii, serialize, ParseError, RenderOptions};
