use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::grid::{translate, GridDiagram};
use crate::text::serialize;

/// The translate of a diagram with the lexicographically smallest
/// serialization, together with the shift that produces it.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    diagram: GridDiagram,
    shift: (i64, i64),
}

impl CanonicalForm {
    pub fn diagram(&self) -> &GridDiagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> GridDiagram {
        self.diagram
    }

    /// `(dr, dx)` with `translate(g, dr, dx) == self.diagram()`.
    pub fn shift(&self) -> (i64, i64) {
        self.shift
    }

    pub fn to_text(&self) -> String {
        serialize(&self.diagram)
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.diagram == other.diagram
    }
}

impl Eq for CanonicalForm {}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.diagram.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        text_order(&self.diagram, &other.diagram)
    }
}

type RowKey = (u32, u8, u32);

/// Sort key of one row, ordered like its text (`.` < `O` < `X`): a later
/// first marking sorts first, then the type of that marking, then a later
/// second marking.
fn row_key(x: u32, o: u32, width: u32) -> RowKey {
    if o < x {
        (width - o, 0, width - x)
    } else {
        (width - x, 1, width - o)
    }
}

/// Compares diagrams of equal lens space by their serialized text.
pub fn text_order(a: &GridDiagram, b: &GridDiagram) -> Ordering {
    let header = (a.lens(), a.n()).cmp(&(b.lens(), b.n()));
    if header != Ordering::Equal {
        return serialize(a).cmp(&serialize(b));
    }
    let w = a.width();
    (0..a.n())
        .map(|r| row_key(a.x_col(r), a.o_col(r), w).cmp(&row_key(b.x_col(r), b.o_col(r), w)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

pub fn canonical_form(g: &GridDiagram) -> CanonicalForm {
    let (n, w) = (g.n(), g.width());
    let mut best: Option<(Vec<RowKey>, (i64, i64))> = None;
    let mut key = Vec::with_capacity(n as usize);
    for dr in 0..n as i64 {
        let v = translate(g, dr, 0);
        for dx in 0..w {
            key.clear();
            key.extend((0..n).map(|r| row_key((v.x_col(r) + dx) % w, (v.o_col(r) + dx) % w, w)));
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key.clone(), (dr, dx as i64)));
            }
        }
    }
    let (_, shift) = best.expect("at least one translate");
    CanonicalForm { diagram: translate(g, shift.0, shift.1), shift }
}
