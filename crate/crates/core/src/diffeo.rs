//! The diffeotopy group of L(p, q) and its grid-level generators τ, σ+, σ−.
//!
//! All three maps preserve marking types. Group relations hold up to a
//! translation of the torus, so composites are compared by canonical form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::grid::{col_cell_unchecked, rect_to_col_cell_unchecked, Cell, GridDiagram, MarkType};
use crate::lens::LensSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffeoError {
    #[error("{generator} is not defined on {lens}")]
    Inapplicable { generator: Generator, lens: LensSpace },
    #[error("the diffeotopy group is only tabulated for p >= 2")]
    Sphere,
    #[error("sigma+ and sigma- never coexist in one group")]
    MixedSigma,
    #[error("cannot parse diffeomorphism word {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Tau,
    SigmaPlus,
    SigmaMinus,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Tau => "tau",
            Generator::SigmaPlus => "sigma+",
            Generator::SigmaMinus => "sigma-",
        })
    }
}

impl FromStr for Generator {
    type Err = DiffeoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tau" | "τ" => Ok(Generator::Tau),
            "sigma+" | "σ+" => Ok(Generator::SigmaPlus),
            "sigma-" | "σ-" | "σ−" => Ok(Generator::SigmaMinus),
            _ => Err(DiffeoError::Parse(s.to_string())),
        }
    }
}

/// The five shapes of the diffeotopy group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffeotopyCase {
    /// p = 2: Z2 generated by σ−.
    P2,
    /// q ≡ ±1, p ≠ 2: Z2 generated by τ.
    QisPM1,
    /// q² ≡ +1, q ≢ ±1: Z2 ⊕ Z2 generated by τ and σ+.
    QsqP1,
    /// q² ≡ −1, p ≠ 2: Z4 generated by σ−.
    QsqM1,
    /// Otherwise: Z2 generated by τ.
    Generic,
}

impl DiffeotopyCase {
    pub fn generators(self) -> &'static [Generator] {
        match self {
            DiffeotopyCase::P2 | DiffeotopyCase::QsqM1 => &[Generator::SigmaMinus],
            DiffeotopyCase::QisPM1 | DiffeotopyCase::Generic => &[Generator::Tau],
            DiffeotopyCase::QsqP1 => &[Generator::Tau, Generator::SigmaPlus],
        }
    }

    pub fn order(self) -> usize {
        match self {
            DiffeotopyCase::QsqP1 | DiffeotopyCase::QsqM1 => 4,
            _ => 2,
        }
    }

    pub fn structure(self) -> &'static str {
        match self {
            DiffeotopyCase::QsqP1 => "Z2+Z2",
            DiffeotopyCase::QsqM1 => "Z4",
            _ => "Z2",
        }
    }

    /// The group elements, in labeling order.
    pub fn elements(self) -> Vec<DiffeoElement> {
        use DiffeoElement as E;
        match self {
            DiffeotopyCase::P2 => vec![E::ID, E::SIGMA_MINUS],
            DiffeotopyCase::QisPM1 | DiffeotopyCase::Generic => vec![E::ID, E::TAU],
            DiffeotopyCase::QsqP1 => vec![E::ID, E::TAU, E::SIGMA_PLUS, E::SIGMA_PLUS.then_tau()],
            DiffeotopyCase::QsqM1 => vec![E::ID, E::SIGMA_MINUS, E::TAU, E::SIGMA_MINUS.then_tau()],
        }
    }
}

impl fmt::Display for DiffeotopyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DiffeotopyCase::P2 => "P2",
            DiffeotopyCase::QisPM1 => "QisPM1",
            DiffeotopyCase::QsqP1 => "QsqP1",
            DiffeotopyCase::QsqM1 => "QsqM1",
            DiffeotopyCase::Generic => "Generic",
        };
        f.write_str(name)
    }
}

pub fn diffeotopy_case(lens: LensSpace) -> Result<DiffeotopyCase, DiffeoError> {
    let case = if lens.p() == 1 {
        return Err(DiffeoError::Sphere);
    } else if lens.p() == 2 {
        DiffeotopyCase::P2
    } else if lens.q_is_plus_minus_one() {
        DiffeotopyCase::QisPM1
    } else if lens.q_squared_is_plus_one() {
        DiffeotopyCase::QsqP1
    } else if lens.q_squared_is_minus_one() {
        DiffeotopyCase::QsqM1
    } else {
        DiffeotopyCase::Generic
    };
    Ok(case)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sigma {
    Plus,
    Minus,
}

/// A reduced word `σ^a τ^b`, applied as `σ(τ(G))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffeoElement {
    pub sigma: Option<Sigma>,
    pub tau: bool,
}

impl DiffeoElement {
    pub const ID: Self = Self { sigma: None, tau: false };
    pub const TAU: Self = Self { sigma: None, tau: true };
    pub const SIGMA_PLUS: Self = Self { sigma: Some(Sigma::Plus), tau: false };
    pub const SIGMA_MINUS: Self = Self { sigma: Some(Sigma::Minus), tau: false };

    pub fn then_tau(self) -> Self {
        Self { tau: !self.tau, ..self }
    }

    pub fn from_generator(g: Generator) -> Self {
        match g {
            Generator::Tau => Self::TAU,
            Generator::SigmaPlus => Self::SIGMA_PLUS,
            Generator::SigmaMinus => Self::SIGMA_MINUS,
        }
    }

    /// Reduces a composition word, written left to right as `g1 ∘ g2 ∘ …`.
    pub fn from_word(word: &[Generator]) -> Result<Self, DiffeoError> {
        word.iter().try_fold(Self::ID, |acc, &g| acc.compose(Self::from_generator(g)))
    }

    /// `self ∘ other`, using τ² = σ+² = 1, σ+τ = τσ+ and σ−² = τ.
    pub fn compose(self, other: Self) -> Result<Self, DiffeoError> {
        match (self.sigma, other.sigma) {
            (Some(Sigma::Minus), Some(Sigma::Plus)) | (Some(Sigma::Plus), Some(Sigma::Minus)) => {
                Err(DiffeoError::MixedSigma)
            }
            (Some(Sigma::Minus), _) | (_, Some(Sigma::Minus)) => {
                let exponent = (self.z4_exponent() + other.z4_exponent()) % 4;
                Ok(Self::from_z4_exponent(exponent))
            }
            _ => Ok(Self {
                sigma: if self.sigma.is_some() != other.sigma.is_some() { Some(Sigma::Plus) } else { None },
                tau: self.tau != other.tau,
            }),
        }
    }

    fn z4_exponent(self) -> u32 {
        u32::from(self.sigma.is_some()) + 2 * u32::from(self.tau)
    }

    fn from_z4_exponent(e: u32) -> Self {
        Self { sigma: (e % 2 == 1).then_some(Sigma::Minus), tau: e >= 2 }
    }

    pub fn is_applicable(self, lens: LensSpace) -> bool {
        match self.sigma {
            None => true,
            Some(Sigma::Plus) => lens.q_squared_is_plus_one(),
            Some(Sigma::Minus) => lens.q_squared_is_minus_one(),
        }
    }

    /// Multiplier of the homology class: −1 per τ, q per σ±.
    pub fn homology_factor(self, lens: LensSpace) -> i64 {
        let sign = if self.tau { -1 } else { 1 };
        let scale = if self.sigma.is_some() { lens.q() as i64 } else { 1 };
        sign * scale
    }
}

impl fmt::Display for DiffeoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sigma, self.tau) {
            (None, false) => f.write_str("id"),
            (None, true) => f.write_str("tau"),
            (Some(s), tau) => {
                f.write_str(if s == Sigma::Plus { "sigma+" } else { "sigma-" })?;
                if tau {
                    f.write_str(" tau")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses a whitespace- or `.`-separated word such as `sigma- tau`, or `id`.
pub fn parse_word(text: &str) -> Result<Vec<Generator>, DiffeoError> {
    let trimmed = text.trim();
    if trimmed == "id" {
        return Ok(Vec::new());
    }
    let word: Vec<Generator> = trimmed
        .split(|c: char| c.is_whitespace() || c == '.' || c == '∘')
        .filter(|w| !w.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    if word.is_empty() {
        return Err(DiffeoError::Parse(text.to_string()));
    }
    Ok(word)
}

fn from_cells(lens: LensSpace, n: u32, cells: impl Iterator<Item = (Cell, MarkType)>) -> GridDiagram {
    let mut x_cols = vec![0; n as usize];
    let mut o_cols = vec![0; n as usize];
    for (cell, kind) in cells {
        match kind {
            MarkType::X => x_cols[cell.row as usize] = cell.col,
            MarkType::O => o_cols[cell.row as usize] = cell.col,
        }
    }
    GridDiagram::from_rows_unchecked(lens, x_cols, o_cols)
}

/// Rotation by π: column-cell `(j, k)` goes to `(n−1−j, np−1−k)`.
pub fn tau(g: &GridDiagram) -> GridDiagram {
    let (lens, n) = (g.lens(), g.n());
    let len = n * lens.p();
    from_cells(
        lens,
        n,
        g.markings().map(|m| {
            let (j, k) = rect_to_col_cell_unchecked(lens, n, m.cell);
            (col_cell_unchecked(lens, n, n - 1 - j, len - 1 - k), m.kind)
        }),
    )
}

/// Rows become columns: row-cell `(i, x)` goes to column-cell `(i, x)`.
pub fn sigma_plus(g: &GridDiagram) -> Result<GridDiagram, DiffeoError> {
    let (lens, n) = (g.lens(), g.n());
    if !lens.q_squared_is_plus_one() {
        return Err(DiffeoError::Inapplicable { generator: Generator::SigmaPlus, lens });
    }
    Ok(from_cells(lens, n, g.markings().map(|m| (col_cell_unchecked(lens, n, m.cell.row, m.cell.col), m.kind))))
}

/// Rows become columns in reverse: row-cell `(i, x)` goes to column-cell
/// `(n−1−i, x)`.
pub fn sigma_minus(g: &GridDiagram) -> Result<GridDiagram, DiffeoError> {
    let (lens, n) = (g.lens(), g.n());
    if !lens.q_squared_is_minus_one() {
        return Err(DiffeoError::Inapplicable { generator: Generator::SigmaMinus, lens });
    }
    Ok(from_cells(lens, n, g.markings().map(|m| (col_cell_unchecked(lens, n, n - 1 - m.cell.row, m.cell.col), m.kind))))
}

pub fn apply_generator(g: &GridDiagram, generator: Generator) -> Result<GridDiagram, DiffeoError> {
    match generator {
        Generator::Tau => Ok(tau(g)),
        Generator::SigmaPlus => sigma_plus(g),
        Generator::SigmaMinus => sigma_minus(g),
    }
}

/// Applies a composition word literally, rightmost generator first.
pub fn apply_word(g: &GridDiagram, word: &[Generator]) -> Result<GridDiagram, DiffeoError> {
    word.iter().rev().try_fold(g.clone(), |acc, &gen| apply_generator(&acc, gen))
}

/// Applies the reduced element as `σ(τ(G))`.
pub fn apply(g: &GridDiagram, e: DiffeoElement) -> Result<GridDiagram, DiffeoError> {
    if !e.is_applicable(g.lens()) {
        let generator = match e.sigma {
            Some(Sigma::Plus) => Generator::SigmaPlus,
            _ => Generator::SigmaMinus,
        };
        return Err(DiffeoError::Inapplicable { generator, lens: g.lens() });
    }
    let base = if e.tau { tau(g) } else { g.clone() };
    match e.sigma {
        None => Ok(base),
        Some(Sigma::Plus) => sigma_plus(&base),
        Some(Sigma::Minus) => sigma_minus(&base),
    }
}

/// The images of `g` under every element of the diffeotopy group.
pub fn diffeo_orbit(g: &GridDiagram) -> Result<Vec<(DiffeoElement, GridDiagram)>, DiffeoError> {
    diffeotopy_case(g.lens())?.elements().into_iter().map(|e| apply(g, e).map(|h| (e, h))).collect()
}

/// The class `e` sends `delta` to, as a residue mod p.
pub fn expected_homology_action(e: DiffeoElement, delta: u32, lens: LensSpace) -> u32 {
    lens.residue(e.homology_factor(lens) * delta as i64)
}
