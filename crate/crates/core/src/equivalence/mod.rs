//! Canonical forms, isotopy search, diffeomorphism classification and
//! tabulation.

mod canonical;
mod search;
mod tabulate;

use std::fmt;

use thiserror::Error;

use crate::bracket::{lift_normalized_poly, BracketConfig};
use crate::diffeo::{apply, diffeo_orbit, DiffeoElement, DiffeoError};
use crate::exec::Exec;
use crate::grid::GridDiagram;
use crate::homology::{homology_multiset, lift_component_count_formula};
use crate::lens::LensSpace;
use crate::moves::MoveKind;
use crate::poly::LaurentPoly;

pub use canonical::{canonical_form, text_order, CanonicalForm};
pub use search::{replay, verify_path, SearchStats};
pub use tabulate::{enumerate_diagrams, parse_catalog, tabulate, Catalog, CatalogClass, CatalogError};

use search::{bidirectional, Outcome};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Grid numbers explored beyond the larger input by default.
pub const DEFAULT_N_SLACK: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("diagrams live in different lens spaces: {0} and {1}")]
    LensMismatch(LensSpace, LensSpace),
    #[error("n_max = {n_max} is below the input grid number {n}")]
    NMaxTooSmall { n_max: u32, n: u32 },
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Diffeo(#[from] DiffeoError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest grid number visited; `None` means the larger input plus
    /// [`DEFAULT_N_SLACK`].
    pub n_max: Option<u32>,
    /// Canonical forms stored per search.
    pub budget: usize,
    pub bracket: BracketConfig,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { n_max: None, budget: DEFAULT_BUDGET, bracket: BracketConfig::default(), exec: Exec::default() }
    }
}

/// The invariant that separates two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Homology {
        a: Vec<u32>,
        b: Vec<u32>,
    },
    LiftComponents {
        a: u32,
        b: u32,
    },
    LiftPoly {
        a: LaurentPoly,
        b: LaurentPoly,
    },
    /// `a`'s classes differ from the classes of every diffeomorphic image of `b`.
    HomologyOrbit {
        a: Vec<u32>,
        orbit: Vec<Vec<u32>>,
    },
    /// `a`'s lift polynomial differs from that of every image of `b`.
    LiftPolyOrbit {
        a: LaurentPoly,
        orbit: Vec<LaurentPoly>,
    },
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes = |v: &[u32]| format!("{{{}}}", join(v, ","));
        match self {
            Witness::Homology { a, b } => write!(f, "homology {} vs {}", classes(a), classes(b)),
            Witness::LiftComponents { a, b } => write!(f, "lift components {a} vs {b}"),
            Witness::LiftPoly { a, b } => write!(f, "lift polynomial {a} vs {b}"),
            Witness::HomologyOrbit { a, orbit } => {
                let orbit: Vec<String> = orbit.iter().map(|v| classes(v)).collect();
                write!(f, "homology {} vs orbit {}", classes(a), orbit.join(" "))
            }
            Witness::LiftPolyOrbit { a, orbit } => write!(f, "lift polynomial {a} vs orbit [{}]", join(orbit, "; ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Replaying `path` from A reaches a translate of the image of B under `via`.
    Equivalent {
        path: Vec<MoveKind>,
        via: DiffeoElement,
    },
    DistinctCertified(Witness),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        matches!(self.verdict, Verdict::Equivalent { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self.verdict, Verdict::DistinctCertified(_))
    }
}

/// Move-invariant data of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub homology: Vec<u32>,
    pub lift_components: u32,
    /// `None` when the lift exceeds the bracket cap.
    pub lift_poly: Option<LaurentPoly>,
}

pub fn invariants(g: &GridDiagram, bracket: &BracketConfig) -> Invariants {
    Invariants {
        homology: homology_multiset(g),
        lift_components: lift_component_count_formula(g),
        lift_poly: lift_normalized_poly(g, bracket).ok(),
    }
}

fn distinguish(a: &Invariants, b: &Invariants) -> Option<Witness> {
    if a.homology != b.homology {
        return Some(Witness::Homology { a: a.homology.clone(), b: b.homology.clone() });
    }
    if a.lift_components != b.lift_components {
        return Some(Witness::LiftComponents { a: a.lift_components, b: b.lift_components });
    }
    match (&a.lift_poly, &b.lift_poly) {
        (Some(pa), Some(pb)) if pa != pb => Some(Witness::LiftPoly { a: pa.clone(), b: pb.clone() }),
        _ => None,
    }
}

fn resolve_n_max(a: &GridDiagram, b: &GridDiagram, cfg: &SearchConfig) -> Result<(u32, u32), EquivalenceError> {
    if a.lens() != b.lens() {
        return Err(EquivalenceError::LensMismatch(a.lens(), b.lens()));
    }
    if cfg.budget == 0 {
        return Err(EquivalenceError::ZeroBudget);
    }
    let n = a.n().max(b.n());
    let n_max = cfg.n_max.unwrap_or(n + DEFAULT_N_SLACK);
    if n_max < n {
        return Err(EquivalenceError::NMaxTooSmall { n_max, n });
    }
    Ok((n, n_max))
}

/// Searches with grid numbers bounded by `n`, then `n + 1`, up to `n_max`,
/// all within one node budget.
fn widening_search(
    a: &GridDiagram,
    b: &GridDiagram,
    n: u32,
    n_max: u32,
    cfg: &SearchConfig,
) -> (Option<Vec<MoveKind>>, SearchStats) {
    let mut stats = SearchStats::default();
    for n_lim in n..=n_max {
        let remaining = cfg.budget.saturating_sub(stats.nodes);
        if remaining == 0 {
            stats.budget_exhausted = true;
            break;
        }
        match bidirectional(a, b, n_lim, remaining, cfg.exec, &mut stats) {
            Outcome::Found(path) => return (Some(path), stats),
            Outcome::Exhausted => continue,
            Outcome::OutOfBudget => break,
        }
    }
    (None, stats)
}

/// Semi-decides whether `a` and `b` are isotopic by grid moves.
pub fn isotopy_search(
    a: &GridDiagram,
    b: &GridDiagram,
    cfg: &SearchConfig,
) -> Result<EquivalenceReport, EquivalenceError> {
    let (n, n_max) = resolve_n_max(a, b, cfg)?;
    if let Some(w) = distinguish(&invariants(a, &cfg.bracket), &invariants(b, &cfg.bracket)) {
        return Ok(EquivalenceReport { verdict: Verdict::DistinctCertified(w), stats: SearchStats::default() });
    }
    let (path, stats) = widening_search(a, b, n, n_max, cfg);
    let verdict = match path {
        Some(path) => Verdict::Equivalent { path, via: DiffeoElement::ID },
        None => Verdict::Unknown,
    };
    Ok(EquivalenceReport { verdict, stats })
}

/// Semi-decides whether `a` is isotopic to the image of `b` under some
/// element of the diffeotopy group.
pub fn diffeo_classify(
    a: &GridDiagram,
    b: &GridDiagram,
    cfg: &SearchConfig,
) -> Result<EquivalenceReport, EquivalenceError> {
    let (n, n_max) = resolve_n_max(a, b, cfg)?;
    let orbit = diffeo_orbit(b)?;
    let inv_a = invariants(a, &cfg.bracket);
    let orbit_inv: Vec<Invariants> = cfg.exec.map(&orbit, |(_, h)| invariants(h, &cfg.bracket));

    let candidates: Vec<usize> = (0..orbit.len()).filter(|&i| distinguish(&inv_a, &orbit_inv[i]).is_none()).collect();
    if candidates.is_empty() {
        let witness = if orbit_inv.iter().all(|inv| inv.homology != inv_a.homology) {
            Witness::HomologyOrbit { a: inv_a.homology, orbit: orbit_inv.iter().map(|i| i.homology.clone()).collect() }
        } else if orbit_inv.iter().all(|inv| inv.lift_poly.is_some()) && inv_a.lift_poly.is_some() {
            Witness::LiftPolyOrbit {
                a: inv_a.lift_poly.expect("checked"),
                orbit: orbit_inv.into_iter().map(|i| i.lift_poly.expect("checked")).collect(),
            }
        } else {
            let i = (0..orbit.len()).find(|&i| orbit_inv[i].homology == inv_a.homology).expect("some class matches");
            distinguish(&inv_a, &orbit_inv[i]).expect("every member was separated")
        };
        return Ok(EquivalenceReport { verdict: Verdict::DistinctCertified(witness), stats: SearchStats::default() });
    }

    let mut total = SearchStats::default();
    for i in candidates {
        let (e, target) = &orbit[i];
        let (path, stats) = widening_search(a, target, n, n_max, cfg);
        total.nodes += stats.nodes;
        total.layers += stats.layers;
        total.n_limit = total.n_limit.max(stats.n_limit);
        total.budget_exhausted |= stats.budget_exhausted;
        if let Some(path) = path {
            return Ok(EquivalenceReport { verdict: Verdict::Equivalent { path, via: *e }, stats: total });
        }
    }
    Ok(EquivalenceReport { verdict: Verdict::Unknown, stats: total })
}

/// Checks an equivalence verdict by replaying its path.
pub fn verify_report(a: &GridDiagram, b: &GridDiagram, report: &EquivalenceReport) -> bool {
    match &report.verdict {
        Verdict::Equivalent { path, via } => match apply(b, *via) {
            Ok(target) => verify_path(a, &target, path),
            Err(_) => false,
        },
        _ => true,
    }
}
