//! Seeded random diagrams and move sequences.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::GridDiagram;
use crate::lens::LensSpace;
use crate::moves::{neighbors, MoveKind};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smallest grid number admitting a valid diagram: the sphere needs two rows.
pub fn min_grid_number(lens: LensSpace) -> u32 {
    if lens.p() == 1 {
        2
    } else {
        1
    }
}

/// A uniformly random valid diagram with grid number `n`.
///
/// # Panics
/// If `n` is below [`min_grid_number`].
pub fn random_diagram<R: Rng + ?Sized>(lens: LensSpace, n: u32, rng: &mut R) -> GridDiagram {
    assert!(n >= min_grid_number(lens), "no valid diagram with grid number {n} in {lens}");
    let p = lens.p();
    let mut x_annuli: Vec<u32> = (0..n).collect();
    let mut o_annuli: Vec<u32> = (0..n).collect();
    loop {
        x_annuli.shuffle(rng);
        o_annuli.shuffle(rng);
        let x_cols: Vec<u32> = x_annuli.iter().map(|&a| rng.gen_range(0..p) * n + a).collect();
        let o_cols: Vec<u32> = o_annuli.iter().map(|&a| rng.gen_range(0..p) * n + a).collect();
        if x_cols.iter().zip(&o_cols).all(|(x, o)| x != o) {
            return GridDiagram::from_rows_unchecked(lens, x_cols, o_cols);
        }
    }
}

/// `count` random diagrams with grid numbers drawn uniformly from the
/// feasible range up to `n_max`.
pub fn random_corpus(lens: LensSpace, n_max: u32, count: usize, seed: u64) -> Vec<GridDiagram> {
    let mut rng = rng_from_seed(seed);
    let lo = min_grid_number(lens);
    assert!(n_max >= lo, "no valid diagram with grid number at most {n_max} in {lens}");
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=n_max);
            random_diagram(lens, n, &mut rng)
        })
        .collect()
}

/// Applies `k` uniformly chosen moves from [`neighbors`].
pub fn random_moves<R: Rng + ?Sized>(
    g: &GridDiagram,
    k: usize,
    n_max: u32,
    rng: &mut R,
) -> (Vec<MoveKind>, GridDiagram) {
    let mut current = g.clone();
    let mut path = Vec::with_capacity(k);
    for _ in 0..k {
        let mut options = neighbors(&current, n_max);
        let (mv, next) = options.swap_remove(rng.gen_range(0..options.len()));
        path.push(mv);
        current = next;
    }
    (path, current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::validate;
    use crate::moves::apply_move;

    #[test]
    fn random_diagrams_are_valid_and_reproducible() {
        for (p, q) in [(1, 0), (2, 1), (5, 2), (8, 3)] {
            let lens = LensSpace::new(p, q).unwrap();
            let corpus = random_corpus(lens, 4, 50, 7);
            assert!(corpus.iter().all(|g| validate(&g.to_marking_set()).is_ok()));
            assert_eq!(corpus, random_corpus(lens, 4, 50, 7));
        }
    }

    #[test]
    fn random_moves_replay() {
        let lens = LensSpace::new(5, 2).unwrap();
        let mut rng = rng_from_seed(3);
        let g = random_diagram(lens, 2, &mut rng);
        let (path, end) = random_moves(&g, 6, 4, &mut rng);
        let replayed = path.iter().try_fold(g.clone(), |acc, &mv| apply_move(&acc, mv)).unwrap();
        assert_eq!(replayed, end);
    }
}
