//! Grid isotopy moves: non-interleaving commutation and (de)stabilization,
//! plus unit translations of the torus.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::grid::{translate, Cell, GridDiagram, MarkType};

/// Corner of the 2×2 square created by a stabilization that receives the
/// marking of the opposite type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];

    fn is_north(self) -> bool {
        matches!(self, Corner::NW | Corner::NE)
    }

    fn is_west(self) -> bool {
        matches!(self, Corner::NW | Corner::SW)
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Corner::NW => "NW",
            Corner::NE => "NE",
            Corner::SW => "SW",
            Corner::SE => "SE",
        };
        f.write_str(s)
    }
}

impl FromStr for Corner {
    type Err = MoveParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "NW" => Ok(Corner::NW),
            "NE" => Ok(Corner::NE),
            "SW" => Ok(Corner::SW),
            "SE" => Ok(Corner::SE),
            _ => Err(MoveParseError(s.to_string())),
        }
    }
}

/// One grid move. The derived order is the deterministic enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// Exchange rows `r` and `r + 1`.
    CommuteRows(u32),
    /// Exchange column annuli `j` and `j + 1`.
    CommuteCols(u32),
    /// Collapse the 2×2 square with top-left cell `(row, col)`.
    Destabilize {
        row: u32,
        col: u32,
    },
    /// Stabilize at marking index `marking` (see [`GridDiagram::marking`]).
    Stabilize {
        marking: u32,
        corner: Corner,
    },
    TranslateH(i64),
    TranslateV(i64),
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::CommuteRows(r) => write!(f, "commute-rows {r}"),
            MoveKind::CommuteCols(j) => write!(f, "commute-cols {j}"),
            MoveKind::Destabilize { row, col } => write!(f, "destabilize {row} {col}"),
            MoveKind::Stabilize { marking, corner } => write!(f, "stabilize {marking} {corner}"),
            MoveKind::TranslateH(d) => write!(f, "translate-h {d}"),
            MoveKind::TranslateV(d) => write!(f, "translate-v {d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse move {0:?}")]
pub struct MoveParseError(String);

impl FromStr for MoveKind {
    type Err = MoveParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MoveParseError(s.to_string());
        let words: Vec<&str> = s.split_whitespace().collect();
        let int = |i: usize| words.get(i).and_then(|w| w.parse::<i64>().ok()).ok_or_else(err);
        let nat = |i: usize| words.get(i).and_then(|w| w.parse::<u32>().ok()).ok_or_else(err);
        let mv = match words.first().copied() {
            Some("commute-rows") if words.len() == 2 => MoveKind::CommuteRows(nat(1)?),
            Some("commute-cols") if words.len() == 2 => MoveKind::CommuteCols(nat(1)?),
            Some("destabilize") if words.len() == 3 => MoveKind::Destabilize { row: nat(1)?, col: nat(2)? },
            Some("stabilize") if words.len() == 3 => {
                MoveKind::Stabilize { marking: nat(1)?, corner: words[2].parse()? }
            }
            Some("translate-h") if words.len() == 2 => MoveKind::TranslateH(int(1)?),
            Some("translate-v") if words.len() == 2 => MoveKind::TranslateV(int(1)?),
            _ => return Err(err()),
        };
        Ok(mv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inapplicable {
    /// The two marking pairs interleave cyclically.
    Interleaving,
    /// Two of the four levels coincide.
    SharedLevel,
    /// The 2×2 square does not hold a destabilizable pattern.
    Pattern,
    /// Grid number 1 cannot be reduced.
    GridNumberOne,
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Inapplicable::Interleaving => "interleaving",
            Inapplicable::SharedLevel => "shared level",
            Inapplicable::Pattern => "pattern",
            Inapplicable::GridNumberOne => "grid number 1",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("inapplicable move: {0}")]
    Inapplicable(Inapplicable),
    #[error("{what} {value} out of range (limit {limit})")]
    OutOfRange { what: &'static str, value: u64, limit: u64 },
}

fn out_of_range(what: &'static str, value: u32, limit: u32) -> MoveError {
    MoveError::OutOfRange { what, value: value as u64, limit: limit as u64 }
}

/// Whether `{c, d}` lies in a single component of the circle minus `{a, b}`.
/// All four values must be distinct.
fn separated(a: u32, b: u32, c: u32, d: u32) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |v: u32| lo < v && v < hi;
    inside(c) == inside(d)
}

fn check_levels(first: [u32; 2], second: [u32; 2]) -> Result<(), MoveError> {
    let all = [first[0], first[1], second[0], second[1]];
    for i in 0..4 {
        for j in i + 1..4 {
            if all[i] == all[j] {
                return Err(MoveError::Inapplicable(Inapplicable::SharedLevel));
            }
        }
    }
    if !separated(first[0], first[1], second[0], second[1]) {
        return Err(MoveError::Inapplicable(Inapplicable::Interleaving));
    }
    Ok(())
}

/// Exchanges rows `r` and `r + 1` when their markings do not interleave.
pub fn commute_rows(g: &GridDiagram, r: u32) -> Result<GridDiagram, MoveError> {
    let n = g.n();
    if n < 2 || r > n - 2 {
        return Err(out_of_range("row pair", r, n.saturating_sub(1)));
    }
    check_levels([g.x_col(r), g.o_col(r)], [g.x_col(r + 1), g.o_col(r + 1)])?;
    let mut x_cols = g.x_cols().to_vec();
    let mut o_cols = g.o_cols().to_vec();
    x_cols.swap(r as usize, r as usize + 1);
    o_cols.swap(r as usize, r as usize + 1);
    Ok(GridDiagram::from_rows_unchecked(g.lens(), x_cols, o_cols))
}

/// Exchanges column annuli `j` and `j + 1` when their markings do not
/// interleave along the annulus (levels are column-cell indices).
pub fn commute_cols(g: &GridDiagram, j: u32) -> Result<GridDiagram, MoveError> {
    let n = g.n();
    if n < 2 || j > n - 2 {
        return Err(out_of_range("column pair", j, n.saturating_sub(1)));
    }
    let x_rows = g.rows_by_annulus(MarkType::X);
    let o_rows = g.rows_by_annulus(MarkType::O);
    let level = |annulus: u32, kind: MarkType| {
        let rows = if kind == MarkType::X { &x_rows } else { &o_rows };
        let row = rows[annulus as usize];
        (row, g.column_cell(Cell::new(row, g.col_of(row, kind))))
    };
    let left = [level(j, MarkType::X), level(j, MarkType::O)];
    let right = [level(j + 1, MarkType::X), level(j + 1, MarkType::O)];
    check_levels([left[0].1, left[1].1], [right[0].1, right[1].1])?;

    let mut x_cols = g.x_cols().to_vec();
    let mut o_cols = g.o_cols().to_vec();
    x_cols[left[0].0 as usize] += 1;
    o_cols[left[1].0 as usize] += 1;
    x_cols[right[0].0 as usize] -= 1;
    o_cols[right[1].0 as usize] -= 1;
    Ok(GridDiagram::from_rows_unchecked(g.lens(), x_cols, o_cols))
}

/// Replaces marking `marking` by a 2×2 square in a new row and column annulus.
///
/// The new row goes above the marking for `NW`/`NE` and below for `SW`/`SE`;
/// the new annulus goes left for `NW`/`SW` and right for `NE`/`SE`. The
/// opposite type lands on the chosen corner, the original type on its two
/// neighbours, and the cell of the original marking stays empty.
pub fn stabilize(g: &GridDiagram, marking: u32, corner: Corner) -> Result<GridDiagram, MoveError> {
    let n = g.n();
    let m = g.marking(marking as usize).ok_or_else(|| out_of_range("marking", marking, 2 * n))?;
    let kind = m.kind;
    let r = m.cell.row;
    let new_row = if corner.is_north() { r } else { r + 1 };
    let new_annulus = m.cell.annulus(n) + u32::from(!corner.is_west());
    let map_row = |i: u32| if i >= new_row { i + 1 } else { i };
    let map_col = |c: u32| {
        let (b, a) = (c / n, c % n);
        b * (n + 1) + if a >= new_annulus { a + 1 } else { a }
    };
    let new_col = m.cell.box_index(n) * (n + 1) + new_annulus;
    let old_col = map_col(m.cell.col);

    let size = n as usize + 1;
    let mut x_cols = vec![0; size];
    let mut o_cols = vec![0; size];
    for i in 0..n {
        x_cols[map_row(i) as usize] = map_col(g.x_col(i));
        o_cols[map_row(i) as usize] = map_col(g.o_col(i));
    }
    let (same, other) = match kind {
        MarkType::X => (&mut x_cols, &mut o_cols),
        MarkType::O => (&mut o_cols, &mut x_cols),
    };
    same[map_row(r) as usize] = new_col;
    same[new_row as usize] = old_col;
    other[new_row as usize] = new_col;
    Ok(GridDiagram::from_rows_unchecked(g.lens(), x_cols, o_cols))
}

/// Removes the row and column annulus through the odd corner of the 2×2
/// square with top-left cell `(row, col)`.
///
/// The square must sit inside one box. It must hold exactly three markings:
/// one type at a corner and the other type at both neighbouring corners.
pub fn destabilize(g: &GridDiagram, row: u32, col: u32) -> Result<GridDiagram, MoveError> {
    let n = g.n();
    if n == 1 {
        return Err(MoveError::Inapplicable(Inapplicable::GridNumberOne));
    }
    if row > n - 2 {
        return Err(out_of_range("square row", row, n - 1));
    }
    if col >= g.width() || col % n > n - 2 {
        return Err(out_of_range("square column", col, g.width()));
    }
    let corners = [Cell::new(row, col), Cell::new(row, col + 1), Cell::new(row + 1, col), Cell::new(row + 1, col + 1)];
    let kinds = corners.map(|c| g.marking_at(c));
    let empties: Vec<usize> = (0..4).filter(|&i| kinds[i].is_none()).collect();
    let &[empty] = empties.as_slice() else {
        return Err(MoveError::Inapplicable(Inapplicable::Pattern));
    };
    // index 3 - i is the diagonally opposite corner
    let odd = 3 - empty;
    let odd_kind = kinds[odd].expect("three markings");
    let kept = odd_kind.complement();
    if (0..4).filter(|&i| i != odd && i != empty).any(|i| kinds[i] != Some(kept)) {
        return Err(MoveError::Inapplicable(Inapplicable::Pattern));
    }

    let gone_row = corners[odd].row;
    let gone_annulus = corners[odd].col % n;
    let other_row = corners[empty].row;
    let map_row = |i: u32| if i > gone_row { i - 1 } else { i };
    let map_col = |c: u32| {
        let (b, a) = (c / n, c % n);
        b * (n - 1) + if a > gone_annulus { a - 1 } else { a }
    };
    let mut x_cols = vec![0; n as usize - 1];
    let mut o_cols = vec![0; n as usize - 1];
    for i in (0..n).filter(|&i| i != gone_row) {
        let (mut xc, mut oc) = (g.x_col(i), g.o_col(i));
        if i == other_row {
            match kept {
                MarkType::X => xc = corners[empty].col,
                MarkType::O => oc = corners[empty].col,
            }
        }
        x_cols[map_row(i) as usize] = map_col(xc);
        o_cols[map_row(i) as usize] = map_col(oc);
    }
    Ok(GridDiagram::from_rows_unchecked(g.lens(), x_cols, o_cols))
}

pub fn apply_move(g: &GridDiagram, mv: MoveKind) -> Result<GridDiagram, MoveError> {
    match mv {
        MoveKind::CommuteRows(r) => commute_rows(g, r),
        MoveKind::CommuteCols(j) => commute_cols(g, j),
        MoveKind::Destabilize { row, col } => destabilize(g, row, col),
        MoveKind::Stabilize { marking, corner } => stabilize(g, marking, corner),
        MoveKind::TranslateH(d) => Ok(translate(g, 0, d)),
        MoveKind::TranslateV(d) => Ok(translate(g, d, 0)),
    }
}

/// Applicable commutations, destabilizations and (when `n < n_max`)
/// stabilizations, without translations.
pub(crate) fn local_moves(g: &GridDiagram, n_max: u32) -> Vec<(MoveKind, GridDiagram)> {
    let n = g.n();
    let mut out = Vec::new();
    for r in 0..n.saturating_sub(1) {
        if let Ok(h) = commute_rows(g, r) {
            out.push((MoveKind::CommuteRows(r), h));
        }
    }
    for j in 0..n.saturating_sub(1) {
        if let Ok(h) = commute_cols(g, j) {
            out.push((MoveKind::CommuteCols(j), h));
        }
    }
    if n >= 2 {
        for row in 0..n - 1 {
            for col in (0..g.width()).filter(|c| c % n < n - 1) {
                if let Ok(h) = destabilize(g, row, col) {
                    out.push((MoveKind::Destabilize { row, col }, h));
                }
            }
        }
    }
    if n < n_max {
        for marking in 0..2 * n {
            for corner in Corner::ALL {
                let h = stabilize(g, marking, corner).expect("marking index in range");
                out.push((MoveKind::Stabilize { marking, corner }, h));
            }
        }
    }
    out
}

/// Every move applicable to `g`, in [`MoveKind`] order.
pub fn neighbors(g: &GridDiagram, n_max: u32) -> Vec<(MoveKind, GridDiagram)> {
    let mut out = local_moves(g, n_max);
    for d in [1, -1] {
        out.push((MoveKind::TranslateH(d), translate(g, 0, d)));
        out.push((MoveKind::TranslateV(d), translate(g, d, 0)));
    }
    out.sort_by_key(|(mv, _)| *mv);
    out
}
