//! Homology classes in H1(L(p, q)) = Z/p and the lift to the 3-sphere.

use thiserror::Error;

use crate::grid::{trace_components, Cell, Component, GridDiagram, MarkType};
use crate::lens::{gcd, LensSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("rows {0:?} do not form a component of the diagram")]
    NotAComponent(Vec<u32>),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
}

/// Signed count of passages through the bottom edge along the vertical arcs
/// of one component, reduced mod p.
///
/// Each vertical arc runs from its X to its O in increasing column-cell order,
/// wrapping once around the annulus when the O comes first.
fn delta_of_rows(g: &GridDiagram, rows: &[u32]) -> u32 {
    let n = g.n();
    let len = n * g.lens().p();
    let o_rows = g.rows_by_annulus(MarkType::O);
    let total: i64 = rows
        .iter()
        .map(|&r| {
            let x_col = g.x_col(r);
            let k_x = g.column_cell(Cell::new(r, x_col));
            let o_row = o_rows[(x_col % n) as usize];
            let mut k_o = g.column_cell(Cell::new(o_row, g.o_col(o_row)));
            if k_o <= k_x {
                k_o += len;
            }
            (k_o / n) as i64 - (k_x / n) as i64
        })
        .sum();
    g.lens().residue(total)
}

pub fn homology_class(g: &GridDiagram, component: &Component) -> Result<u32, HomologyError> {
    if !trace_components(g).contains(component) {
        return Err(HomologyError::NotAComponent(component.rows.clone()));
    }
    Ok(delta_of_rows(g, &component.rows))
}

/// Classes of all components, in [`trace_components`] order.
pub fn homology_classes(g: &GridDiagram) -> Vec<u32> {
    trace_components(g).iter().map(|c| delta_of_rows(g, &c.rows)).collect()
}

/// Sorted classes of all components.
pub fn homology_multiset(g: &GridDiagram) -> Vec<u32> {
    let mut classes = homology_classes(g);
    classes.sort_unstable();
    classes
}

/// Whether a knot's class generates Z/p.
pub fn is_primitive_homologous(g: &GridDiagram) -> Result<bool, HomologyError> {
    match homology_classes(g).as_slice() {
        &[delta] => Ok(gcd(delta as i64, g.lens().p() as i64) == 1),
        classes => Err(HomologyError::NotAKnot(classes.len())),
    }
}

/// Number of lift components predicted from the classes: Σ gcd(δᵢ, p).
pub fn lift_component_count_formula(g: &GridDiagram) -> u32 {
    let p = g.lens().p() as i64;
    homology_classes(g).iter().map(|&d| gcd(d as i64, p) as u32).sum()
}

/// Preimage of the diagram under the p-fold cyclic cover of L(p, q) by S³.
///
/// Copy `t` of the marking at `(r, x)` sits at row `t·n + r` and column
/// `(x − t·q·n) mod p·n` of a grid of size `p·n` with trivial gluing.
pub fn lift_grid(g: &GridDiagram) -> GridDiagram {
    let (n, p, q) = (g.n() as i64, g.lens().p() as i64, g.lens().q() as i64);
    let width = p * n;
    let mut x_cols = Vec::with_capacity(width as usize);
    let mut o_cols = Vec::with_capacity(width as usize);
    for t in 0..p {
        let shift = t * q * n;
        for r in 0..g.n() {
            x_cols.push((g.x_col(r) as i64 - shift).rem_euclid(width) as u32);
            o_cols.push((g.o_col(r) as i64 - shift).rem_euclid(width) as u32);
        }
    }
    GridDiagram::from_rows_unchecked(LensSpace::sphere(), x_cols, o_cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse, serialize};

    #[test]
    fn smallest_examples() {
        let e1 = parse("lens 2 1\ngrid 1\nXO\n").unwrap();
        assert_eq!(homology_classes(&e1), [1]);
        assert_eq!(serialize(&lift_grid(&e1)), "lens 1 0\ngrid 2\nXO\nOX\n");
        assert_eq!(lift_component_count_formula(&e1), 1);

        let e3 = parse("lens 5 2\ngrid 1\nXO...\n").unwrap();
        assert_eq!(homology_classes(&e3), [3]);
        assert!(is_primitive_homologous(&e3).unwrap());
        assert_eq!(trace_components(&lift_grid(&e3)).len(), 1);
    }

    #[test]
    fn hopf_lift_in_l41() {
        // X at k=0, O at k=2: the vertical arc passes the bottom edge twice.
        let g = parse("lens 4 1\ngrid 1\nX.O.\n").unwrap();
        assert_eq!(homology_classes(&g), [2]);
        assert!(!is_primitive_homologous(&g).unwrap());
        assert_eq!(lift_component_count_formula(&g), 2);
        assert_eq!(trace_components(&lift_grid(&g)).len(), 2);
    }

    #[test]
    fn component_membership_is_checked() {
        let g = parse("lens 2 1\ngrid 2\nXO..\n..OX\n").unwrap();
        let bogus = Component { rows: vec![7] };
        assert!(matches!(homology_class(&g, &bogus), Err(HomologyError::NotAComponent(_))));
        let two = parse("lens 3 1\ngrid 2\nX.O...\n.X.O..\n").unwrap();
        assert_eq!(is_primitive_homologous(&two), Err(HomologyError::NotAKnot(2)));
    }
}
