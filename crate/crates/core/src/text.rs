//! Plain-text grid format and ASCII rendering.
//!
//! ```text
//! lens <p> <q>
//! grid <n>
//! <n rows of exactly p·n characters from {., X, O}>
//! ```
//!
//! Lines starting with `#` are comments. Lines end with LF.

use thiserror::Error;

use crate::grid::{
    col_cell_unchecked, rect_to_col_cell_unchecked, Cell, GridDiagram, GridError, MarkType, Marking, MarkingSet,
    ValidationReport,
};
use crate::lens::{LensError, LensSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}`")]
    MalformedHeader { line: usize, expected: &'static str },
    #[error("bad lens space: {0}")]
    Lens(#[from] LensError),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row}: expected {expected} characters, found {found}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("row {row}, column {col}: illegal character {ch:?}")]
    IllegalChar { row: usize, col: usize, ch: char },
    #[error("invalid grid diagram: {0}")]
    Invalid(ValidationReport),
}

fn content_lines(text: &str) -> Vec<(usize, &str)> {
    let mut lines: Vec<(usize, &str)> =
        text.split('\n').enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.starts_with('#')).collect();
    // A final LF leaves one empty trailing piece.
    if matches!(lines.last(), Some((_, ""))) {
        lines.pop();
    }
    lines
}

fn header_value(
    line: Option<&(usize, &str)>,
    keyword: &str,
    arity: usize,
    expected: &'static str,
) -> Result<Vec<u32>, ParseError> {
    let Some(&(no, text)) = line else {
        return Err(ParseError::MalformedHeader { line: 0, expected });
    };
    let err = || ParseError::MalformedHeader { line: no, expected };
    let mut words = text.split(' ');
    if words.next() != Some(keyword) {
        return Err(err());
    }
    let values = words.map(|w| w.parse::<u32>().map_err(|_| err())).collect::<Result<Vec<_>, _>>()?;
    if values.len() != arity {
        return Err(err());
    }
    Ok(values)
}

/// Parses the marking layout without enforcing the grid invariants.
pub fn parse_markings(text: &str) -> Result<MarkingSet, ParseError> {
    let lines = content_lines(text);
    let lens = header_value(lines.first(), "lens", 2, "lens <p> <q>")?;
    let lens = LensSpace::new(lens[0], lens[1])?;
    let n = header_value(lines.get(1), "grid", 1, "grid <n>")?[0];
    let rows = &lines[2.min(lines.len())..];
    if rows.len() != n as usize {
        return Err(ParseError::RowCount { expected: n as usize, found: rows.len() });
    }
    let width = lens.p() as usize * n as usize;
    let mut markings = Vec::with_capacity(2 * n as usize);
    for (r, &(_, line)) in rows.iter().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        if chars.len() != width {
            return Err(ParseError::RowLength { row: r, expected: width, found: chars.len() });
        }
        for (c, &ch) in chars.iter().enumerate() {
            let kind = match ch {
                '.' => continue,
                'X' => MarkType::X,
                'O' => MarkType::O,
                _ => return Err(ParseError::IllegalChar { row: r, col: c, ch }),
            };
            markings.push(Marking { cell: Cell::new(r as u32, c as u32), kind });
        }
    }
    Ok(MarkingSet { lens, n, width: width as u32, markings })
}

pub fn parse(text: &str) -> Result<GridDiagram, ParseError> {
    let set = parse_markings(text)?;
    GridDiagram::from_markings(&set).map_err(|e| match e {
        GridError::Invalid(report) => ParseError::Invalid(report),
        other => unreachable!("from_markings only reports validation failures: {other}"),
    })
}

pub fn serialize(g: &GridDiagram) -> String {
    let width = g.width() as usize;
    let mut out = format!("lens {} {}\ngrid {}\n", g.lens().p(), g.lens().q(), g.n());
    out.reserve(g.n() as usize * (width + 1));
    for r in 0..g.n() {
        let mut row = vec![b'.'; width];
        row[g.x_col(r) as usize] = b'X';
        row[g.o_col(r) as usize] = b'O';
        out.push_str(std::str::from_utf8(&row).expect("ascii"));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RenderOptions {
    /// ANSI colors for the markings.
    pub color: bool,
}

/// Draws the rectangle with box separators `:` and the link arcs: `-` on
/// horizontal arcs, `|` on vertical arcs, `+` where a vertical arc passes over
/// a horizontal one.
pub fn render_ascii(g: &GridDiagram) -> String {
    render(g, RenderOptions::default())
}

pub fn render(g: &GridDiagram, opts: RenderOptions) -> String {
    let n = g.n();
    let width = g.width();
    let lens = g.lens();
    let mut horizontal = vec![vec![false; width as usize]; n as usize];
    let mut vertical = vec![vec![false; width as usize]; n as usize];
    for r in 0..n {
        let (o, x) = (g.o_col(r), g.x_col(r));
        let mut c = (o + 1) % width;
        while c != x {
            horizontal[r as usize][c as usize] = true;
            c = (c + 1) % width;
        }
    }
    let len = n * lens.p();
    let o_row = g.rows_by_annulus(MarkType::O);
    for r in 0..n {
        let x_cell = Cell::new(r, g.x_col(r));
        let (j, kx) = rect_to_col_cell_unchecked(lens, n, x_cell);
        let o_r = o_row[j as usize];
        let (_, ko) = rect_to_col_cell_unchecked(lens, n, Cell::new(o_r, g.o_col(o_r)));
        let mut k = (kx + 1) % len;
        while k != ko {
            let cell = col_cell_unchecked(lens, n, j, k);
            vertical[cell.row as usize][cell.col as usize] = true;
            k = (k + 1) % len;
        }
    }

    let mut out = format!("{} n={}\n", lens, n);
    for r in 0..n {
        for c in 0..width {
            if c > 0 && c % n == 0 {
                out.push(':');
            }
            let (ru, cu) = (r as usize, c as usize);
            match g.marking_at(Cell::new(r, c)) {
                Some(kind) if opts.color => {
                    let code = if kind == MarkType::X { 31 } else { 34 };
                    out.push_str(&format!("\x1b[1;{code}m{}\x1b[0m", kind.as_char()));
                }
                Some(kind) => out.push(kind.as_char()),
                None => out.push(match (horizontal[ru][cu], vertical[ru][cu]) {
                    (true, true) => '+',
                    (true, false) => '-',
                    (false, true) => '|',
                    (false, false) => '.',
                }),
            }
        }
        out.push('\n');
    }
    out
}
