//! Toroidal grid diagrams of links in L(p, q).
//!
//! A diagram with grid number `n` is a rectangle of `n` rows and `p·n`
//! cell-columns, made of `p` juxtaposed `n × n` boxes. The vertical sides are
//! glued directly; leaving the bottom edge at rectangle column `x` re-enters
//! the top edge at column `(x + q·n) mod p·n`. Column annulus `j` is the set of
//! cells whose column is `≡ j (mod n)`; it meets the rectangle in `p` strips.
//!
//! Every row and every column annulus holds exactly one `X` and one `O`.
//! Horizontal arcs run `O → X`, vertical arcs run `X → O` in the downward
//! direction of the annulus.

use std::fmt;

use thiserror::Error;

use crate::lens::LensSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkType {
    X,
    O,
}

impl MarkType {
    pub fn complement(self) -> Self {
        match self {
            MarkType::X => MarkType::O,
            MarkType::O => MarkType::X,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            MarkType::X => 'X',
            MarkType::O => 'O',
        }
    }
}

/// A cell of the rectangle: `row ∈ [0, n)`, `col ∈ [0, p·n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }

    /// Column annulus index `col mod n`.
    pub fn annulus(&self, n: u32) -> u32 {
        self.col % n
    }

    /// Box index `⌊col / n⌋`.
    pub fn box_index(&self, n: u32) -> u32 {
        self.col / n
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    pub cell: Cell,
    pub kind: MarkType,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("column annulus {j} out of range for grid number {n}")]
    AnnulusOutOfRange { j: u32, n: u32 },
    #[error("column-cell {k} out of range [0, {len})")]
    ColumnCellOutOfRange { k: u32, len: u32 },
    #[error("cell {cell} outside the {n} x {width} rectangle")]
    CellOutOfRange { cell: Cell, n: u32, width: u32 },
    #[error("invalid grid diagram: {0}")]
    Invalid(ValidationReport),
}

/// An arbitrary, possibly invalid, set of markings on a rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkingSet {
    pub lens: LensSpace,
    pub n: u32,
    pub width: u32,
    pub markings: Vec<Marking>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroGridNumber,
    Width { width: u32, expected: u32 },
    OutOfRange(Cell),
    SharedCell(Cell),
    Row { row: u32, x: usize, o: usize },
    Column { annulus: u32, x: usize, o: usize },
}

fn count_word(count: usize) -> String {
    match count {
        0 => "no".into(),
        1 => "one".into(),
        2 => "two".into(),
        3 => "three".into(),
        c => c.to_string(),
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroGridNumber => write!(f, "grid number must be positive"),
            Violation::Width { width, expected } => {
                write!(f, "rectangle width {width} differs from p*n = {expected}")
            }
            Violation::OutOfRange(cell) => write!(f, "cell {cell} lies outside the rectangle"),
            Violation::SharedCell(cell) => write!(f, "cell {cell} holds more than one marking"),
            Violation::Row { row, x, o } => {
                write!(f, "row {row} has {} X, {} O", count_word(*x), count_word(*o))
            }
            Violation::Column { annulus, x, o } => {
                write!(f, "column {annulus} has {} X, {} O", count_word(*x), count_word(*o))
            }
        }
    }
}

/// Result of [`validate`]: empty means the markings form a grid diagram.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every grid-diagram invariant on an arbitrary marking set.
pub fn validate(set: &MarkingSet) -> ValidationReport {
    let mut violations = Vec::new();
    let n = set.n;
    if n == 0 {
        violations.push(Violation::ZeroGridNumber);
        return ValidationReport { violations };
    }
    let expected = set.lens.p() * n;
    if set.width != expected {
        violations.push(Violation::Width { width: set.width, expected });
    }
    let mut row_counts = vec![(0usize, 0usize); n as usize];
    let mut col_counts = vec![(0usize, 0usize); n as usize];
    let mut seen = std::collections::BTreeMap::new();
    for m in &set.markings {
        if m.cell.row >= n || m.cell.col >= set.width {
            violations.push(Violation::OutOfRange(m.cell));
            continue;
        }
        *seen.entry(m.cell).or_insert(0usize) += 1;
        let (r, j) = (m.cell.row as usize, m.cell.annulus(n) as usize);
        match m.kind {
            MarkType::X => {
                row_counts[r].0 += 1;
                col_counts[j].0 += 1;
            }
            MarkType::O => {
                row_counts[r].1 += 1;
                col_counts[j].1 += 1;
            }
        }
    }
    violations.extend(seen.into_iter().filter(|&(_, c)| c > 1).map(|(cell, _)| Violation::SharedCell(cell)));
    for (row, &(x, o)) in row_counts.iter().enumerate() {
        if (x, o) != (1, 1) {
            violations.push(Violation::Row { row: row as u32, x, o });
        }
    }
    for (annulus, &(x, o)) in col_counts.iter().enumerate() {
        if (x, o) != (1, 1) {
            violations.push(Violation::Column { annulus: annulus as u32, x, o });
        }
    }
    ValidationReport { violations }
}

/// Converts the column-cell coordinates `(j, k)` to a rectangle cell.
///
/// Cells of column annulus `j` are numbered `0..n·p` from the top-left strip
/// downward; after row `n - 1` the walk re-enters row 0 shifted by `q` boxes.
pub fn col_cell_to_rect(lens: LensSpace, n: u32, j: u32, k: u32) -> Result<Cell, GridError> {
    let len = n * lens.p();
    if j >= n {
        return Err(GridError::AnnulusOutOfRange { j, n });
    }
    if k >= len {
        return Err(GridError::ColumnCellOutOfRange { k, len });
    }
    Ok(col_cell_unchecked(lens, n, j, k))
}

pub(crate) fn col_cell_unchecked(lens: LensSpace, n: u32, j: u32, k: u32) -> Cell {
    let width = (n * lens.p()) as u64;
    let strip = (k / n) as u64;
    let col = (j as u64 + strip * lens.q() as u64 * n as u64) % width;
    Cell::new(k % n, col as u32)
}

/// Inverse of [`col_cell_to_rect`]: returns `(j, k)`.
pub fn rect_to_col_cell(lens: LensSpace, n: u32, cell: Cell) -> Result<(u32, u32), GridError> {
    let width = n * lens.p();
    if cell.row >= n || cell.col >= width {
        return Err(GridError::CellOutOfRange { cell, n, width });
    }
    Ok(rect_to_col_cell_unchecked(lens, n, cell))
}

pub(crate) fn rect_to_col_cell_unchecked(lens: LensSpace, n: u32, cell: Cell) -> (u32, u32) {
    let strip = column_strip(lens, n, cell.col);
    (cell.col % n, strip * n + cell.row)
}

/// Strip index `s` of rectangle column `col` within its annulus, i.e. the
/// solution of `box ≡ s·q (mod p)`.
pub(crate) fn column_strip(lens: LensSpace, n: u32, col: u32) -> u32 {
    let b = (col / n) as u64;
    ((b * lens.q_inverse() as u64) % lens.p() as u64) as u32
}

/// A valid grid diagram. Row `r` holds its `X` at `x_cols[r]` and its `O` at
/// `o_cols[r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDiagram {
    lens: LensSpace,
    n: u32,
    x_cols: Vec<u32>,
    o_cols: Vec<u32>,
}

impl GridDiagram {
    /// Builds a diagram from the per-row `X` and `O` columns, validating it.
    pub fn from_rows(lens: LensSpace, x_cols: Vec<u32>, o_cols: Vec<u32>) -> Result<Self, GridError> {
        let n = x_cols.len() as u32;
        let markings = x_cols
            .iter()
            .enumerate()
            .map(|(r, &c)| Marking { cell: Cell::new(r as u32, c), kind: MarkType::X })
            .chain(o_cols.iter().enumerate().map(|(r, &c)| Marking { cell: Cell::new(r as u32, c), kind: MarkType::O }))
            .collect();
        Self::from_markings(&MarkingSet { lens, n, width: n * lens.p(), markings })
    }

    pub fn from_markings(set: &MarkingSet) -> Result<Self, GridError> {
        let report = validate(set);
        if !report.is_ok() {
            return Err(GridError::Invalid(report));
        }
        let mut x_cols = vec![0; set.n as usize];
        let mut o_cols = vec![0; set.n as usize];
        for m in &set.markings {
            match m.kind {
                MarkType::X => x_cols[m.cell.row as usize] = m.cell.col,
                MarkType::O => o_cols[m.cell.row as usize] = m.cell.col,
            }
        }
        Ok(Self { lens: set.lens, n: set.n, x_cols, o_cols })
    }

    /// Callers guarantee validity; checked in debug builds.
    pub(crate) fn from_rows_unchecked(lens: LensSpace, x_cols: Vec<u32>, o_cols: Vec<u32>) -> Self {
        let g = Self { lens, n: x_cols.len() as u32, x_cols, o_cols };
        debug_assert!(validate(&g.to_marking_set()).is_ok(), "invalid diagram {g:?}");
        g
    }

    pub fn lens(&self) -> LensSpace {
        self.lens
    }

    /// Grid number.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Rectangle width `p·n`.
    pub fn width(&self) -> u32 {
        self.n * self.lens.p()
    }

    pub fn x_col(&self, row: u32) -> u32 {
        self.x_cols[row as usize]
    }

    pub fn o_col(&self, row: u32) -> u32 {
        self.o_cols[row as usize]
    }

    pub fn x_cols(&self) -> &[u32] {
        &self.x_cols
    }

    pub fn o_cols(&self) -> &[u32] {
        &self.o_cols
    }

    pub fn col_of(&self, row: u32, kind: MarkType) -> u32 {
        match kind {
            MarkType::X => self.x_col(row),
            MarkType::O => self.o_col(row),
        }
    }

    /// Marking `index`: rows in order, `X` before `O` within a row.
    pub fn marking(&self, index: usize) -> Option<Marking> {
        let row = (index / 2) as u32;
        if row >= self.n {
            return None;
        }
        let kind = if index.is_multiple_of(2) { MarkType::X } else { MarkType::O };
        Some(Marking { cell: Cell::new(row, self.col_of(row, kind)), kind })
    }

    pub fn markings(&self) -> impl Iterator<Item = Marking> + '_ {
        (0..2 * self.n as usize).map(move |i| self.marking(i).expect("index in range"))
    }

    pub fn marking_at(&self, cell: Cell) -> Option<MarkType> {
        if cell.row >= self.n {
            return None;
        }
        if self.x_col(cell.row) == cell.col {
            Some(MarkType::X)
        } else if self.o_col(cell.row) == cell.col {
            Some(MarkType::O)
        } else {
            None
        }
    }

    pub fn to_marking_set(&self) -> MarkingSet {
        MarkingSet { lens: self.lens, n: self.n, width: self.width(), markings: self.markings().collect() }
    }

    /// Row holding the marking of `kind` in each column annulus.
    pub fn rows_by_annulus(&self, kind: MarkType) -> Vec<u32> {
        let mut rows = vec![0; self.n as usize];
        for r in 0..self.n {
            rows[(self.col_of(r, kind) % self.n) as usize] = r;
        }
        rows
    }

    /// Column-cell index of a cell of this diagram's rectangle.
    pub fn column_cell(&self, cell: Cell) -> u32 {
        rect_to_col_cell_unchecked(self.lens, self.n, cell).1
    }
}

/// A link component as the cyclic list of rows it passes through.
///
/// Following the orientation, the component leaves the `X` of `rows[i]`
/// vertically, reaches the `O` of `rows[i + 1]` and continues horizontally to
/// the `X` of the same row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub rows: Vec<u32>,
}

impl Component {
    /// Markings in traversal order: `X(r0), O(r1), X(r1), O(r2), …, O(r0)`.
    pub fn markings(&self, g: &GridDiagram) -> Vec<Marking> {
        let mut out = Vec::with_capacity(2 * self.rows.len());
        for (i, &r) in self.rows.iter().enumerate() {
            let next = self.rows[(i + 1) % self.rows.len()];
            out.push(Marking { cell: Cell::new(r, g.x_col(r)), kind: MarkType::X });
            out.push(Marking { cell: Cell::new(next, g.o_col(next)), kind: MarkType::O });
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Partitions the markings into link components, ordered by smallest row.
pub fn trace_components(g: &GridDiagram) -> Vec<Component> {
    let o_row = g.rows_by_annulus(MarkType::O);
    let next: Vec<u32> = (0..g.n).map(|r| o_row[(g.x_col(r) % g.n) as usize]).collect();
    let mut seen = vec![false; g.n as usize];
    let mut out = Vec::new();
    for start in 0..g.n {
        if seen[start as usize] {
            continue;
        }
        let mut rows = Vec::new();
        let mut r = start;
        while !seen[r as usize] {
            seen[r as usize] = true;
            rows.push(r);
            r = next[r as usize];
        }
        out.push(Component { rows });
    }
    out
}

/// Rigid translation of the diagram on the Heegaard torus.
///
/// `dx` shifts columns cyclically; each unit of `dr` moves every marking one
/// row down, re-entering row 0 shifted right by `q·n` when it leaves the
/// bottom row. Both shifts may be negative.
pub fn translate(g: &GridDiagram, dr: i64, dx: i64) -> GridDiagram {
    let n = g.n as i64;
    let width = g.width() as i64;
    let shift = g.lens.q() as i64 * n;
    let mut x_cols = vec![0; g.n as usize];
    let mut o_cols = vec![0; g.n as usize];
    for r in 0..n {
        let target = r + dr;
        let wraps = target.div_euclid(n);
        let new_row = target.rem_euclid(n) as usize;
        let delta = wraps * shift + dx;
        x_cols[new_row] = (g.x_cols[r as usize] as i64 + delta).rem_euclid(width) as u32;
        o_cols[new_row] = (g.o_cols[r as usize] as i64 + delta).rem_euclid(width) as u32;
    }
    GridDiagram::from_rows_unchecked(g.lens, x_cols, o_cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    fn lens(p: u32, q: u32) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    fn raw(p: u32, q: u32, rows: &[&str]) -> MarkingSet {
        let n = rows.len() as u32;
        let mut markings = Vec::new();
        for (r, line) in rows.iter().enumerate() {
            for (c, ch) in line.chars().enumerate() {
                let kind = match ch {
                    'X' => MarkType::X,
                    'O' => MarkType::O,
                    _ => continue,
                };
                markings.push(Marking { cell: Cell::new(r as u32, c as u32), kind });
            }
        }
        MarkingSet { lens: lens(p, q), n, width: rows[0].len() as u32, markings }
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&raw(2, 1, &["XO"])).is_ok());
        assert!(validate(&raw(5, 2, &["XO..."])).is_ok());
        let report = validate(&raw(2, 1, &["XX"]));
        assert!(report.violations.iter().any(|v| v.to_string() == "row 0 has two X, no O"));
    }

    #[test]
    fn validate_reports_shared_cells_and_width() {
        let mut set = raw(2, 1, &["XO"]);
        set.markings.push(Marking { cell: Cell::new(0, 0), kind: MarkType::O });
        let report = validate(&set);
        assert!(report.violations.contains(&Violation::SharedCell(Cell::new(0, 0))));
        let report = validate(&raw(2, 1, &["XO."]));
        assert!(report.violations.contains(&Violation::Width { width: 3, expected: 2 }));
        // Both markings of the single row sit in annulus 0 of a p = 1 grid.
        assert!(!validate(&raw(1, 0, &["XO"])).is_ok());
    }

    #[test]
    fn column_cells_follow_the_glued_strips() {
        let l52 = lens(5, 2);
        // strip sequence x_t = 2t mod 5
        let xs: Vec<u32> = (0..5).map(|k| col_cell_to_rect(l52, 1, 0, k).unwrap().col).collect();
        assert_eq!(xs, vec![0, 2, 4, 1, 3]);
        assert_eq!(col_cell_to_rect(l52, 1, 0, 3).unwrap(), Cell::new(0, 1));
        assert_eq!(col_cell_to_rect(lens(2, 1), 1, 0, 1).unwrap(), Cell::new(0, 1));
        assert_eq!(col_cell_to_rect(lens(7, 2), 3, 2, 0).unwrap(), Cell::new(0, 2));
        assert!(col_cell_to_rect(l52, 1, 1, 0).is_err());
        assert!(col_cell_to_rect(l52, 1, 0, 5).is_err());
    }

    #[test]
    fn column_cells_are_a_bijection_per_annulus() {
        for p in 1..=9u32 {
            for q in 0..p {
                let Ok(l) = LensSpace::new(p, q) else { continue };
                for n in 1..=4u32 {
                    for j in 0..n {
                        let mut hit = std::collections::BTreeSet::new();
                        for k in 0..n * p {
                            let cell = col_cell_to_rect(l, n, j, k).unwrap();
                            assert_eq!(cell.annulus(n), j);
                            assert!(hit.insert(cell));
                            assert_eq!(rect_to_col_cell(l, n, cell).unwrap(), (j, k));
                        }
                        assert_eq!(hit.len() as u32, n * p);
                    }
                }
            }
        }
    }

    #[test]
    fn components_by_pairing_walk() {
        let e1 = parse("lens 2 1\ngrid 1\nXO\n").unwrap();
        assert_eq!(trace_components(&e1).len(), 1);

        // X0 -> O in annulus 0 (row 1) -> X1 in annulus 1 -> O in annulus 1 (row 0).
        let g = parse("lens 2 1\ngrid 2\nXO..\n..OX\n").unwrap();
        let comps = trace_components(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].rows, vec![0, 1]);

        let lift = GridDiagram::from_rows(LensSpace::sphere(), vec![0, 1], vec![1, 0]).unwrap();
        assert_eq!(trace_components(&lift).len(), 1);

        let split = GridDiagram::from_rows(LensSpace::sphere(), vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
        assert_eq!(trace_components(&split).len(), 2);
    }

    #[test]
    fn component_markings_alternate_partners() {
        let g = parse("lens 2 1\ngrid 2\nXO..\n..OX\n").unwrap();
        let comp = &trace_components(&g)[0];
        let ms = comp.markings(&g);
        assert_eq!(ms.len(), 4);
        for pair in ms.windows(2) {
            let same_row = pair[0].cell.row == pair[1].cell.row;
            let same_annulus = pair[0].cell.annulus(2) == pair[1].cell.annulus(2);
            assert!(same_row || same_annulus);
            assert_ne!(pair[0].kind, pair[1].kind);
        }
    }

    #[test]
    fn translations() {
        let e3 = parse("lens 5 2\ngrid 1\nXO...\n").unwrap();
        assert_eq!(translate(&e3, 1, 0), translate(&e3, 0, 2));
        assert_eq!(translate(&e3, 0, 5), e3);
        let g = parse("lens 7 2\ngrid 2\nX....O........\n..O..........X\n").unwrap();
        assert_eq!(translate(&translate(&g, 0, 1), 0, -1), g);
        assert_eq!(translate(&translate(&g, 3, 0), -3, 0), g);
        assert_eq!(translate(&g, 2, 0), translate(&g, 0, 4));
        assert_eq!(translate(&translate(&g, 1, 5), 2, -3), translate(&g, 3, 2));
    }
}
