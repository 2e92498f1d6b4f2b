//! Kauffman bracket state sums.
//!
//! Two evaluators share one contract: a frontier dynamic program that sweeps
//! the crossings in row-major order, and an exhaustive enumeration of all
//! `2^c` smoothing states. Both run sequentially or data-parallel and return
//! identical polynomials.

use std::collections::HashMap;

use thiserror::Error;

use crate::exec::Exec;
use crate::grid::GridDiagram;
use crate::homology::lift_grid;
use crate::planar::{planar_diagram, PlanarDiagram, EAST, NORTH, SOUTH, WEST};
use crate::poly::LaurentPoly;

pub const DEFAULT_CAP: usize = 16;

/// Hard limit for the exhaustive evaluator.
pub const EXHAUSTIVE_LIMIT: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("{crossings} crossings exceed the cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketConfig {
    /// Largest crossing count accepted.
    pub cap: usize,
    pub exec: Exec,
}

impl Default for BracketConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, exec: Exec::default() }
    }
}

impl BracketConfig {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap, ..Self::default() }
    }
}

/// Arm pairs joined by the A- and B-smoothings.
const A_PAIRS: [(usize, usize); 2] = [(NORTH, EAST), (SOUTH, WEST)];
const B_PAIRS: [(usize, usize); 2] = [(NORTH, WEST), (SOUTH, EAST)];

fn check_cap(pd: &PlanarDiagram, cap: usize) -> Result<(), BracketError> {
    let crossings = pd.crossing_count();
    if crossings > cap {
        return Err(BracketError::CapExceeded { crossings, cap });
    }
    Ok(())
}

/// Polynomial with contiguous coefficients starting at exponent `lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Dense {
    lo: i32,
    coeffs: Vec<i64>,
}

impl Dense {
    fn one() -> Self {
        Self { lo: 0, coeffs: vec![1] }
    }

    fn shift(mut self, k: i32) -> Self {
        self.lo += k;
        self
    }

    /// Multiplies by `d = −A² − A⁻²`.
    fn times_loop(&self) -> Self {
        let mut coeffs = vec![0; self.coeffs.len() + 4];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] -= c;
            coeffs[i + 4] -= c;
        }
        Self { lo: self.lo - 2, coeffs }
    }

    fn add_assign(&mut self, other: &Dense) {
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i32).max(other.lo + other.coeffs.len() as i32);
        if lo < self.lo || hi > self.lo + self.coeffs.len() as i32 {
            let mut coeffs = vec![0; (hi - lo) as usize];
            let off = (self.lo - lo) as usize;
            coeffs[off..off + self.coeffs.len()].copy_from_slice(&self.coeffs);
            self.coeffs = coeffs;
            self.lo = lo;
        }
        let off = (other.lo - self.lo) as usize;
        for (i, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i] += c;
        }
    }

    fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(i, &c)| (c, self.lo + i as i32)))
    }
}

/// Frontier state: pairing of dangling path ends plus whether the first
/// closed loop (which carries no factor of d) has been seen.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    /// Flattened pairs `(a, b)` with `a < b`, sorted by `a`. Each entry is an
    /// unprocessed arm where a path through the processed region arrives.
    pairs: Vec<u32>,
    closed: bool,
}

impl State {
    fn other_end(&self, slot: u32) -> Option<u32> {
        self.pairs.chunks_exact(2).find_map(|pair| match pair {
            [a, b] if *a == slot => Some(*b),
            [a, b] if *b == slot => Some(*a),
            _ => None,
        })
    }
}

#[derive(Clone, Copy)]
enum Out {
    Arm(usize),
    Slot(u32),
}

/// Smooths crossing `i` in `state`; returns the new state, the number of
/// closed loops, and whether they include the first one.
fn smooth(pd: &PlanarDiagram, i: usize, state: &State, pairs: [(usize, usize); 2]) -> (State, u32) {
    let base = 4 * i;
    let local = |arm: usize| arm >= base && arm < base + 4;
    let out: [Out; 4] = std::array::from_fn(|a| {
        let arm = base + a;
        let next = match state.other_end(arm as u32) {
            Some(end) => end as usize,
            None => pd.partner[arm],
        };
        if local(next) {
            Out::Arm(next - base)
        } else {
            Out::Slot(next as u32)
        }
    });
    let mut smooth_to = [0usize; 4];
    for (a, b) in pairs {
        smooth_to[a] = b;
        smooth_to[b] = a;
    }

    let mut kept: Vec<(u32, u32)> = state
        .pairs
        .chunks_exact(2)
        .filter(|p| !local(p[0] as usize) && !local(p[1] as usize))
        .map(|p| (p[0], p[1]))
        .collect();
    let mut visited = [false; 4];
    // Open paths start at an arm whose outside end is a slot.
    for start in 0..4 {
        let Out::Slot(first) = out[start] else { continue };
        if visited[start] {
            continue;
        }
        let mut arm = start;
        loop {
            visited[arm] = true;
            let across = smooth_to[arm];
            visited[across] = true;
            match out[across] {
                Out::Slot(last) => {
                    kept.push((first.min(last), first.max(last)));
                    break;
                }
                Out::Arm(next) => arm = next,
            }
        }
    }
    let mut loops = 0;
    for start in 0..4 {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut arm = start;
        while !visited[arm] {
            visited[arm] = true;
            let across = smooth_to[arm];
            visited[across] = true;
            let Out::Arm(next) = out[across] else { unreachable!("closed loops stay local") };
            arm = next;
        }
    }
    kept.sort_unstable();
    let pairs = kept.into_iter().flat_map(|(a, b)| [a, b]).collect();
    (State { pairs, closed: state.closed || loops > 0 }, loops)
}

fn loop_factor(poly: &Dense, closed_before: bool, loops: u32) -> Dense {
    let extra = if closed_before { loops } else { loops.saturating_sub(1) };
    (0..extra).fold(poly.clone(), |acc, _| acc.times_loop())
}

fn free_circle_factor(pd: &PlanarDiagram, bracket: LaurentPoly) -> LaurentPoly {
    let d = LaurentPoly::loop_value();
    if pd.crossing_count() == 0 {
        d.pow(pd.free_circles.saturating_sub(1) as u32)
    } else {
        &bracket * &d.pow(pd.free_circles as u32)
    }
}

/// Kauffman bracket `Σ A^(a−b) d^(loops−1)` by frontier dynamic programming.
pub fn kauffman_bracket(pd: &PlanarDiagram, cfg: &BracketConfig) -> Result<LaurentPoly, BracketError> {
    check_cap(pd, cfg.cap)?;
    let mut layer: HashMap<State, Dense> = HashMap::new();
    layer.insert(State { pairs: Vec::new(), closed: false }, Dense::one());
    for i in 0..pd.crossing_count() {
        let entries: Vec<(State, Dense)> = layer.into_iter().collect();
        let expanded = cfg.exec.map(&entries, |(state, poly)| {
            [(A_PAIRS, 1), (B_PAIRS, -1)].map(|(pairs, weight)| {
                let (next, loops) = smooth(pd, i, state, pairs);
                (next, loop_factor(poly, state.closed, loops).shift(weight))
            })
        });
        layer = HashMap::with_capacity(expanded.len());
        for (state, poly) in expanded.into_iter().flatten() {
            layer.entry(state).and_modify(|acc| acc.add_assign(&poly)).or_insert(poly);
        }
    }
    let mut total = LaurentPoly::zero();
    for (state, poly) in &layer {
        debug_assert!(state.pairs.is_empty());
        total += &poly.to_poly();
    }
    Ok(free_circle_factor(pd, total))
}

/// Counts closed loops of one smoothing state with a union-find over arms.
fn count_loops(pd: &PlanarDiagram, state: u64, parent: &mut Vec<usize>) -> u32 {
    let arms = pd.partner.len();
    parent.clear();
    parent.extend(0..arms);
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = arms as u32;
    let mut union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    };
    for a in 0..arms {
        let b = pd.partner[a];
        if a < b {
            union(parent, a, b);
        }
    }
    for i in 0..pd.crossing_count() {
        let pairs = if state >> i & 1 == 0 { A_PAIRS } else { B_PAIRS };
        for (a, b) in pairs {
            union(parent, 4 * i + a, 4 * i + b);
        }
    }
    components
}

/// Kauffman bracket by enumerating every smoothing state.
pub fn kauffman_bracket_exhaustive(pd: &PlanarDiagram, cfg: &BracketConfig) -> Result<LaurentPoly, BracketError> {
    check_cap(pd, cfg.cap.min(EXHAUSTIVE_LIMIT))?;
    let c = pd.crossing_count();
    if c == 0 {
        return Ok(free_circle_factor(pd, LaurentPoly::one()));
    }
    let total: u64 = 1 << c;
    let chunks = total.min(256);
    let per_chunk = total / chunks;
    // table[b][loops]: states with b B-smoothings closing `loops` loops.
    let tables = cfg.exec.map_range(chunks as usize, |chunk| {
        let mut table = vec![vec![0i64; 2 * c + 2]; c + 1];
        let mut parent = Vec::with_capacity(4 * c);
        for state in chunk as u64 * per_chunk..(chunk as u64 + 1) * per_chunk {
            let loops = count_loops(pd, state, &mut parent) as usize;
            table[state.count_ones() as usize][loops] += 1;
        }
        table
    });
    let d = LaurentPoly::loop_value();
    let d_pows: Vec<LaurentPoly> = (0..2 * c + 1).map(|k| d.pow(k as u32)).collect();
    let mut bracket = LaurentPoly::zero();
    for b in 0..=c {
        for loops in 1..2 * c + 2 {
            let count: i64 = tables.iter().map(|t| t[b][loops]).sum();
            if count != 0 {
                let a_minus_b = c as i32 - 2 * b as i32;
                bracket += &(&d_pows[loops - 1] * &LaurentPoly::monomial(count, a_minus_b));
            }
        }
    }
    Ok(free_circle_factor(pd, bracket))
}

/// `(−A³)^(−w) · bracket`.
pub fn normalize(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    &LaurentPoly::monomial(sign, -3 * writhe as i32) * bracket
}

pub fn normalized_poly(pd: &PlanarDiagram, cfg: &BracketConfig) -> Result<LaurentPoly, BracketError> {
    Ok(normalize(&kauffman_bracket(pd, cfg)?, pd.writhe()))
}

/// Normalized polynomial of the lift of `g` to the 3-sphere.
pub fn lift_normalized_poly(g: &GridDiagram, cfg: &BracketConfig) -> Result<LaurentPoly, BracketError> {
    let pd = planar_diagram(&lift_grid(g)).expect("lifts live in L(1,0)");
    normalized_poly(&pd, cfg)
}
