//! Planar link diagrams read off square grids of the 3-sphere.
//!
//! Each row carries a straight horizontal segment from its O to its X, each
//! column a straight vertical segment from its X to its O, and vertical
//! segments pass over horizontal ones.

use thiserror::Error;

use crate::grid::{trace_components, GridDiagram};
use crate::lens::LensSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("planar diagrams need a grid of L(1,0), got {0}")]
    NotSphere(LensSpace),
}

/// Arms of a crossing.
pub(crate) const NORTH: usize = 0;
pub(crate) const EAST: usize = 1;
pub(crate) const SOUTH: usize = 2;
pub(crate) const WEST: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Row of the under (horizontal) segment.
    pub row: u32,
    /// Column of the over (vertical) segment.
    pub col: u32,
    pub over_component: usize,
    pub under_component: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    /// Crossings in row-major order.
    pub crossings: Vec<Crossing>,
    pub component_count: usize,
    /// Components that meet no crossing.
    pub free_circles: usize,
    /// Arm `4·i + a` of crossing `i` is joined by a link strand to arm
    /// `partner[4·i + a]`.
    pub(crate) partner: Vec<usize>,
}

fn check_sphere(g: &GridDiagram) -> Result<(), PlanarError> {
    if g.lens().is_sphere() {
        Ok(())
    } else {
        Err(PlanarError::NotSphere(g.lens()))
    }
}

fn strictly_between(v: u32, a: u32, b: u32) -> bool {
    a.min(b) < v && v < a.max(b)
}

pub fn planar_diagram(g: &GridDiagram) -> Result<PlanarDiagram, PlanarError> {
    check_sphere(g)?;
    let size = g.n();
    // In a square grid each column holds exactly one X and one O.
    let mut x_row = vec![0; size as usize];
    let mut o_row = vec![0; size as usize];
    for r in 0..size {
        x_row[g.x_col(r) as usize] = r;
        o_row[g.o_col(r) as usize] = r;
    }
    let components = trace_components(g);
    let mut component_of_row = vec![0; size as usize];
    for (i, c) in components.iter().enumerate() {
        for &r in &c.rows {
            component_of_row[r as usize] = i;
        }
    }

    let mut crossings = Vec::new();
    let mut index = vec![vec![usize::MAX; size as usize]; size as usize];
    for r in 0..size {
        let (o, x) = (g.o_col(r), g.x_col(r));
        let dx: i8 = if x > o { 1 } else { -1 };
        for c in o.min(x) + 1..o.max(x) {
            let (top, bottom) = (x_row[c as usize], o_row[c as usize]);
            if !strictly_between(r, top, bottom) {
                continue;
            }
            let dy: i8 = if bottom > top { 1 } else { -1 };
            index[r as usize][c as usize] = crossings.len();
            crossings.push(Crossing {
                row: r,
                col: c,
                over_component: component_of_row[x_row[c as usize] as usize],
                under_component: component_of_row[r as usize],
                sign: dx * dy,
            });
        }
    }

    // Walk each component, recording (entry arm, exit arm) at every crossing.
    let mut partner = vec![usize::MAX; 4 * crossings.len()];
    let mut free_circles = 0;
    for comp in &components {
        let mut visits: Vec<(usize, usize)> = Vec::new();
        for &r in &comp.rows {
            let (o, x) = (g.o_col(r), g.x_col(r));
            let horizontal: Box<dyn Iterator<Item = u32>> =
                if x > o { Box::new(o + 1..x) } else { Box::new((x + 1..o).rev()) };
            let (enter, leave) = if x > o { (WEST, EAST) } else { (EAST, WEST) };
            for c in horizontal {
                let i = index[r as usize][c as usize];
                if i != usize::MAX {
                    visits.push((4 * i + enter, 4 * i + leave));
                }
            }
            let bottom = o_row[x as usize];
            let vertical: Box<dyn Iterator<Item = u32>> =
                if bottom > r { Box::new(r + 1..bottom) } else { Box::new((bottom + 1..r).rev()) };
            let (enter, leave) = if bottom > r { (NORTH, SOUTH) } else { (SOUTH, NORTH) };
            for row in vertical {
                let i = index[row as usize][x as usize];
                if i != usize::MAX {
                    visits.push((4 * i + enter, 4 * i + leave));
                }
            }
        }
        if visits.is_empty() {
            free_circles += 1;
            continue;
        }
        for t in 0..visits.len() {
            let leave = visits[t].1;
            let enter = visits[(t + 1) % visits.len()].0;
            partner[leave] = enter;
            partner[enter] = leave;
        }
    }

    Ok(PlanarDiagram { crossings, component_count: components.len(), free_circles, partner })
}

impl PlanarDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Symmetric matrix of pairwise linking numbers, zero on the diagonal.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let nu = self.component_count;
        let mut twice = vec![vec![0i64; nu]; nu];
        for c in &self.crossings {
            if c.over_component != c.under_component {
                twice[c.over_component][c.under_component] += c.sign as i64;
                twice[c.under_component][c.over_component] += c.sign as i64;
            }
        }
        twice.iter().map(|row| row.iter().map(|v| v / 2).collect()).collect()
    }
}

pub fn writhe(pd: &PlanarDiagram) -> i64 {
    pd.writhe()
}

pub fn linking_matrix(pd: &PlanarDiagram) -> Vec<Vec<i64>> {
    pd.linking_matrix()
}

/// Left-right reflection with X and O exchanged.
pub fn mirror(g: &GridDiagram) -> Result<GridDiagram, PlanarError> {
    check_sphere(g)?;
    let last = g.n() - 1;
    let x_cols = g.o_cols().iter().map(|&c| last - c).collect();
    let o_cols = g.x_cols().iter().map(|&c| last - c).collect();
    Ok(GridDiagram::from_rows_unchecked(g.lens(), x_cols, o_cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::lift_grid;
    use crate::text::parse;

    fn sphere(rows: &str) -> GridDiagram {
        let n = rows.lines().count();
        parse(&format!("lens 1 0\ngrid {n}\n{rows}")).unwrap()
    }

    /// X on the diagonal, O two steps to the right: a Hopf link.
    pub(crate) const HOPF: &str = "X.O.\n.X.O\nO.X.\n.O.X\n";

    #[test]
    fn staircases_have_no_crossings() {
        let e1 = parse("lens 2 1\ngrid 1\nXO\n").unwrap();
        let pd = planar_diagram(&lift_grid(&e1)).unwrap();
        assert_eq!((pd.crossing_count(), pd.free_circles, pd.component_count), (0, 1, 1));
        let stair = sphere("XO..\n.XO.\n..XO\nO..X\n");
        assert_eq!(planar_diagram(&stair).unwrap().crossing_count(), 0);
    }

    #[test]
    fn hopf_pattern() {
        let pd = planar_diagram(&sphere(HOPF)).unwrap();
        assert_eq!(pd.component_count, 2);
        assert_eq!(pd.crossing_count(), 2);
        assert_eq!(pd.writhe(), 2);
        assert_eq!(pd.linking_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert!(pd.partner.iter().all(|&p| p != usize::MAX));
    }

    #[test]
    fn split_union_is_unlinked() {
        let g = sphere("XO..\nOX..\n..XO\n..OX\n");
        let pd = planar_diagram(&g).unwrap();
        assert_eq!(pd.component_count, 2);
        assert_eq!(pd.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(pd.writhe(), 0);
    }

    #[test]
    fn mirror_is_an_involution() {
        let g = sphere(HOPF);
        let m = mirror(&g).unwrap();
        assert_eq!(mirror(&m).unwrap(), g);
        assert_eq!(planar_diagram(&m).unwrap().writhe(), -2);
        let l21 = parse("lens 2 1\ngrid 1\nXO\n").unwrap();
        assert!(mirror(&l21).is_err());
        assert!(planar_diagram(&l21).is_err());
    }
}
