//! Reference implementations used as oracles. They share no code with the
//! library beyond the diagram accessors.

#![allow(dead_code, clippy::needless_range_loop)]

use lensgrid::{parse, GridDiagram, LaurentPoly, LensSpace};

pub fn grid(text: &str) -> GridDiagram {
    parse(text).unwrap_or_else(|e| panic!("{e}: {text:?}"))
}

pub fn lens(p: u32, q: u32) -> LensSpace {
    LensSpace::new(p, q).unwrap()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

/// Raw Kauffman bracket and writhe of a square grid by summing over all
/// smoothing states, with loops counted by union-find on a strand graph.
///
/// Rows are drawn top to bottom; each row is a segment from O to X, each
/// column a segment from X to O lying above the rows it crosses.
pub fn bracket_oracle(g: &GridDiagram) -> (LaurentPoly, i64) {
    assert!(g.lens().is_sphere());
    let size = g.n() as usize;
    let mut x_row = vec![0; size];
    let mut o_row = vec![0; size];
    for r in 0..size {
        x_row[g.x_col(r as u32) as usize] = r;
        o_row[g.o_col(r as u32) as usize] = r;
    }
    let between = |v: usize, a: usize, b: usize| a.min(b) < v && v < a.max(b);
    let mut crossing = vec![vec![None; size]; size];
    let mut count = 0;
    let mut writhe = 0i64;
    for r in 0..size {
        let (xc, oc) = (g.x_col(r as u32) as usize, g.o_col(r as u32) as usize);
        for c in 0..size {
            if between(c, xc, oc) && between(r, x_row[c], o_row[c]) {
                crossing[r][c] = Some(count);
                count += 1;
                // Vertical over strand travels down when its O lies below its X;
                // the under strand travels right when its X lies right of its O.
                let down = o_row[c] > x_row[c];
                let right = xc > oc;
                writhe += if down == right { 1 } else { -1 };
            }
        }
    }
    assert!(count <= 22, "oracle limited to 22 crossings");

    // Nodes: one per marking cell (2 per row), then arms N, E, S, W per crossing.
    let marking_node = |r: usize, is_x: bool| 2 * r + usize::from(is_x);
    let arm = |i: usize, a: usize| 2 * size + 4 * i + a;
    let (n_arm, e_arm, s_arm, w_arm) = (0, 1, 2, 3);
    let mut edges = Vec::new();
    for r in 0..size {
        let (xc, oc) = (g.x_col(r as u32) as usize, g.o_col(r as u32) as usize);
        let (left, right) = if xc < oc {
            (marking_node(r, true), marking_node(r, false))
        } else {
            (marking_node(r, false), marking_node(r, true))
        };
        let mut prev = left;
        for c in xc.min(oc) + 1..xc.max(oc) {
            if let Some(i) = crossing[r][c] {
                edges.push((prev, arm(i, w_arm)));
                prev = arm(i, e_arm);
            }
        }
        edges.push((prev, right));
    }
    for c in 0..size {
        let (xr, or) = (x_row[c], o_row[c]);
        let (top, bottom) = if xr < or {
            (marking_node(xr, true), marking_node(or, false))
        } else {
            (marking_node(or, false), marking_node(xr, true))
        };
        let mut prev = top;
        for r in xr.min(or) + 1..xr.max(or) {
            if let Some(i) = crossing[r][c] {
                edges.push((prev, arm(i, n_arm)));
                prev = arm(i, s_arm);
            }
        }
        edges.push((prev, bottom));
    }

    let nodes = 2 * size + 4 * count;
    let mut bracket = LaurentPoly::zero();
    let d = LaurentPoly::from_terms([(-1, 2), (-1, -2)]);
    for state in 0u64..1 << count {
        let mut uf = UnionFind((0..nodes).collect());
        let mut loops = nodes;
        for &(a, b) in &edges {
            loops -= usize::from(uf.union(a, b));
        }
        let mut a_count = 0i32;
        for i in 0..count {
            // The over strand runs north to south; an A-smoothing opens the
            // channel between the regions it sweeps turning counterclockwise.
            let pairs = if state >> i & 1 == 0 {
                a_count += 1;
                [(n_arm, e_arm), (s_arm, w_arm)]
            } else {
                [(n_arm, w_arm), (s_arm, e_arm)]
            };
            for (x, y) in pairs {
                loops -= usize::from(uf.union(arm(i, x), arm(i, y)));
            }
        }
        let b_count = count as i32 - a_count;
        bracket = bracket + LaurentPoly::monomial(1, a_count - b_count) * d.pow(loops as u32 - 1);
    }
    (bracket, writhe)
}

/// Writhe-normalized bracket from [`bracket_oracle`].
pub fn normalized_oracle(g: &GridDiagram) -> LaurentPoly {
    let (bracket, writhe) = bracket_oracle(g);
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    LaurentPoly::monomial(sign, -3 * writhe as i32) * bracket
}

/// All valid diagrams with grid number `n`, found by testing every choice of
/// one X cell and one O cell per row against the column-annulus rule.
pub fn brute_force_diagrams(lens: LensSpace, n: u32) -> Vec<GridDiagram> {
    let width = lens.p() * n;
    let cells = (width as usize).pow(2 * n);
    let mut out = Vec::new();
    for code in 0..cells {
        let mut rest = code;
        let mut cols = Vec::with_capacity(2 * n as usize);
        for _ in 0..2 * n {
            cols.push((rest % width as usize) as u32);
            rest /= width as usize;
        }
        let (x, o) = cols.split_at(n as usize);
        if x.iter().zip(o).any(|(a, b)| a == b) {
            continue;
        }
        let annuli_ok = |v: &[u32]| {
            let mut seen = vec![false; n as usize];
            v.iter().all(|c| !std::mem::replace(&mut seen[(c % n) as usize], true))
        };
        if annuli_ok(x) && annuli_ok(o) {
            out.push(GridDiagram::from_rows(lens, x.to_vec(), o.to_vec()).expect("brute-force diagram is valid"));
        }
    }
    out
}

/// Sum of the classes of all components: every vertical arc runs along its
/// column annulus from an X to the O of that annulus, and contributes the
/// number of strips it advances. Strip `s` of the annulus lies in box `b`
/// of the rectangle with `b ≡ s·q (mod p)`, found here by search.
pub fn total_class_by_strips(g: &GridDiagram) -> u32 {
    let (p, q, n) = (g.lens().p() as i64, g.lens().q() as i64, g.n() as i64);
    let strip_of_box = |b: i64| (0..p).find(|s| (s * q).rem_euclid(p) == b).expect("q is a unit");
    let mut total = 0i64;
    for r in 0..g.n() {
        let x = g.x_col(r) as i64;
        let o = (0..g.n()).map(|s| g.o_col(s) as i64).find(|o| o % n == x % n).expect("one O per annulus");
        total += strip_of_box(o / n) - strip_of_box(x / n);
    }
    total.rem_euclid(p) as u32
}
