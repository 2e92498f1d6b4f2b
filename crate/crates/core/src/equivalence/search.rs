//! Bidirectional breadth-first search over canonical forms.

use std::collections::HashMap;

use crate::exec::Exec;
use crate::grid::{translate, GridDiagram};
use crate::moves::{apply_move, local_moves, MoveError, MoveKind};

use super::canonical::canonical_form;

/// Translates of a canonical node on which local moves are tried. A unit
/// shift brings every wrap-around row pair, column pair and 2×2 square into
/// the fundamental domain.
const SHIFTS: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Edge {
    shift: (i64, i64),
    mv: MoveKind,
}

/// All canonical neighbours of a canonical node, in deterministic order.
fn expand(y: &GridDiagram, n_lim: u32) -> Vec<(Edge, GridDiagram)> {
    let mut out = Vec::new();
    for shift in SHIFTS {
        let h = translate(y, shift.0, shift.1);
        // Stabilizations do not depend on the shift, so only try them once.
        let limit = if shift == (0, 0) { n_lim } else { 0 };
        for (mv, z) in local_moves(&h, limit) {
            out.push((Edge { shift, mv }, canonical_form(&z).into_diagram()));
        }
    }
    out
}

#[derive(Default)]
struct Side {
    nodes: Vec<GridDiagram>,
    index: HashMap<GridDiagram, u32>,
    parent: Vec<Option<(u32, Edge)>>,
}

impl Side {
    fn rooted(root: GridDiagram) -> Self {
        let mut side = Side::default();
        side.insert(root, None);
        side
    }

    fn insert(&mut self, node: GridDiagram, parent: Option<(u32, Edge)>) -> u32 {
        let id = self.nodes.len() as u32;
        self.index.insert(node.clone(), id);
        self.nodes.push(node);
        self.parent.push(parent);
        id
    }

    /// Canonical nodes from the root to `id`, with the edge into each.
    fn chain(&self, mut id: u32) -> Vec<(Option<Edge>, &GridDiagram)> {
        let mut out = Vec::new();
        loop {
            let parent = self.parent[id as usize];
            out.push((parent.map(|(_, e)| e), &self.nodes[id as usize]));
            match parent {
                Some((p, _)) => id = p,
                None => break,
            }
        }
        out.reverse();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Canonical forms stored, summed over both frontiers and all widening rounds.
    pub nodes: usize,
    /// Largest grid number admitted in the final round.
    pub n_limit: u32,
    /// Breadth-first layers expanded in total.
    pub layers: usize,
    pub budget_exhausted: bool,
}

pub(crate) enum Outcome {
    Found(Vec<MoveKind>),
    Exhausted,
    OutOfBudget,
}

/// Records the translation taking `d` to its canonical form shifted by
/// `extra`, and returns the translated diagram.
fn push_translation(path: &mut Vec<MoveKind>, d: &GridDiagram, extra: (i64, i64)) -> GridDiagram {
    let s = canonical_form(d).shift();
    let (dr, dx) = (s.0 + extra.0, s.1 + extra.1);
    if dr != 0 {
        path.push(MoveKind::TranslateV(dr));
    }
    if dx != 0 {
        path.push(MoveKind::TranslateH(dx));
    }
    translate(d, dr, dx)
}

fn build_path(a: &GridDiagram, fwd: &Side, fwd_id: u32, bwd: &Side, bwd_id: u32, n_lim: u32) -> Vec<MoveKind> {
    let mut path = Vec::new();
    let mut d = a.clone();
    for (edge, _) in fwd.chain(fwd_id).into_iter().skip(1) {
        let edge = edge.expect("non-root nodes have an edge");
        let h = push_translation(&mut path, &d, edge.shift);
        path.push(edge.mv);
        d = apply_move(&h, edge.mv).expect("recorded moves apply");
    }
    // Walk the backward chain from the meeting node toward B, inverting each
    // recorded edge by finding a neighbour with the parent's canonical form.
    let back = bwd.chain(bwd_id);
    for target in back.iter().rev().skip(1).map(|(_, node)| *node) {
        let y = canonical_form(&d).into_diagram();
        let (edge, _) = expand(&y, n_lim)
            .into_iter()
            .find(|(_, z)| z == target)
            .expect("grid moves are symmetric up to translation");
        let h = push_translation(&mut path, &d, edge.shift);
        path.push(edge.mv);
        d = apply_move(&h, edge.mv).expect("enumerated moves apply");
    }
    path
}

/// One bidirectional search with grid numbers up to `n_lim`, storing at most
/// `budget` nodes.
pub(crate) fn bidirectional(
    a: &GridDiagram,
    b: &GridDiagram,
    n_lim: u32,
    budget: usize,
    exec: Exec,
    stats: &mut SearchStats,
) -> Outcome {
    let ca = canonical_form(a).into_diagram();
    let cb = canonical_form(b).into_diagram();
    stats.n_limit = n_lim;
    if ca == cb {
        stats.nodes += 1;
        let mut path = Vec::new();
        let sa = canonical_form(a).shift();
        let sb = canonical_form(b).shift();
        let (dr, dx) = (sa.0 - sb.0, sa.1 - sb.1);
        if dr != 0 {
            path.push(MoveKind::TranslateV(dr));
        }
        if dx != 0 {
            path.push(MoveKind::TranslateH(dx));
        }
        return Outcome::Found(path);
    }
    let mut sides = [Side::rooted(ca), Side::rooted(cb)];
    let mut frontiers: [Vec<u32>; 2] = [vec![0], vec![0]];
    let mut used = 2;
    loop {
        if frontiers[0].is_empty() || frontiers[1].is_empty() {
            stats.nodes += used;
            return Outcome::Exhausted;
        }
        let s = usize::from(frontiers[1].len() < frontiers[0].len());
        let frontier = std::mem::take(&mut frontiers[s]);
        let expanded = {
            let side = &sides[s];
            exec.map(&frontier, |&id| expand(&side.nodes[id as usize], n_lim))
        };
        stats.layers += 1;
        let mut next = Vec::new();
        for (&from, successors) in frontier.iter().zip(expanded) {
            for (edge, z) in successors {
                if sides[s].index.contains_key(&z) {
                    continue;
                }
                if let Some(&other) = sides[1 - s].index.get(&z) {
                    let here = sides[s].insert(z, Some((from, edge)));
                    stats.nodes += used + 1;
                    let (fa, fb) = if s == 0 { (here, other) } else { (other, here) };
                    return Outcome::Found(build_path(a, &sides[0], fa, &sides[1], fb, n_lim));
                }
                if used >= budget {
                    stats.nodes += used;
                    stats.budget_exhausted = true;
                    return Outcome::OutOfBudget;
                }
                next.push(sides[s].insert(z, Some((from, edge))));
                used += 1;
            }
        }
        frontiers[s] = next;
    }
}

/// Applies a move path to `a`.
pub fn replay(a: &GridDiagram, path: &[MoveKind]) -> Result<GridDiagram, MoveError> {
    path.iter().try_fold(a.clone(), |d, &mv| apply_move(&d, mv))
}

/// Whether replaying `path` from `a` lands on a translate of `b`.
pub fn verify_path(a: &GridDiagram, b: &GridDiagram, path: &[MoveKind]) -> bool {
    match replay(a, path) {
        Ok(end) => canonical_form(&end) == canonical_form(b),
        Err(_) => false,
    }
}
