//! Exhaustive enumeration of small diagrams and the catalog file format.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::diffeo::diffeo_orbit;
use crate::grid::GridDiagram;
use crate::lens::{LensError, LensSpace};
use crate::poly::LaurentPoly;
use crate::text::{parse, serialize, ParseError};

use super::{canonical_form, invariants, widening_search, CanonicalForm, Invariants, SearchConfig, DEFAULT_N_SLACK};

/// Every valid diagram with grid number exactly `n`, in a fixed order.
pub fn enumerate_diagrams(lens: LensSpace, n: u32) -> Vec<GridDiagram> {
    let p = lens.p();
    let placements: Vec<Vec<u32>> = (0..n)
        .permutations(n as usize)
        .cartesian_product((0..n).map(|_| 0..p).multi_cartesian_product().collect_vec())
        .map(|(annuli, boxes)| annuli.iter().zip(&boxes).map(|(&a, &b)| b * n + a).collect())
        .collect();
    placements
        .iter()
        .cartesian_product(&placements)
        .filter(|(x, o)| x.iter().zip(o.iter()).all(|(a, b)| a != b))
        .map(|(x, o)| GridDiagram::from_rows_unchecked(lens, x.clone(), o.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogClass {
    /// Text-smallest canonical form in the class.
    pub representative: GridDiagram,
    pub homology: Vec<u32>,
    pub lift_components: u32,
    pub lift_poly: Option<LaurentPoly>,
    /// Canonical forms in the class.
    pub members: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub lens: LensSpace,
    pub n_max: u32,
    /// Valid diagrams enumerated, before translation.
    pub diagrams: usize,
    /// Distinct canonical forms.
    pub canonical: usize,
    /// False when the search budget ran out.
    pub complete: bool,
    pub classes: Vec<CatalogClass>,
    /// Class indices whose diffeomorphism orbits carry the same invariants.
    pub diffeo_buckets: Vec<Vec<usize>>,
    /// Class pairs with equal invariants that no search connected.
    pub unresolved: Vec<(usize, usize)>,
}

/// Enumerates diagrams with grid number up to `n`, groups them into isotopy
/// classes, and spends at most `budget` search nodes in total.
pub fn tabulate(lens: LensSpace, n: u32, budget: usize, cfg: &SearchConfig) -> Catalog {
    let all: Vec<GridDiagram> = (1..=n).flat_map(|k| enumerate_diagrams(lens, k)).collect();
    let forms: BTreeSet<CanonicalForm> = cfg.exec.map(&all, canonical_form).into_iter().collect();
    let forms: Vec<GridDiagram> = forms.into_iter().map(CanonicalForm::into_diagram).collect();
    let invs: Vec<Invariants> = cfg.exec.map(&forms, |g| invariants(g, &cfg.bracket));

    let mut bucket_order: Vec<&Invariants> = Vec::new();
    let mut buckets: HashMap<&Invariants, Vec<usize>> = HashMap::new();
    for (i, inv) in invs.iter().enumerate() {
        buckets.entry(inv).or_insert_with(|| {
            bucket_order.push(inv);
            Vec::new()
        });
        buckets.get_mut(inv).expect("inserted").push(i);
    }

    let mut remaining = budget;
    let mut complete = true;
    let mut classes: Vec<CatalogClass> = Vec::new();
    let mut unresolved = Vec::new();
    for inv in bucket_order {
        // Classes of this bucket as (index into `classes`, representative form).
        let mut local: Vec<(usize, usize)> = Vec::new();
        for &i in &buckets[inv] {
            let mut joined = None;
            let mut undecided = Vec::new();
            for &(class, rep) in &local {
                if remaining == 0 {
                    complete = false;
                    undecided.push(class);
                    continue;
                }
                let a = &forms[rep];
                let b = &forms[i];
                let n_lim = a.n().max(b.n());
                let n_max = cfg.n_max.unwrap_or(n_lim + DEFAULT_N_SLACK).max(n_lim);
                let search_cfg = SearchConfig { budget: remaining.min(cfg.budget), ..*cfg };
                let (path, stats) = widening_search(a, b, n_lim, n_max, &search_cfg);
                remaining = remaining.saturating_sub(stats.nodes);
                if path.is_some() {
                    joined = Some(class);
                    break;
                }
                undecided.push(class);
            }
            match joined {
                Some(class) => classes[class].members += 1,
                None => {
                    let class = classes.len();
                    unresolved.extend(undecided.into_iter().map(|c| (c, class)));
                    classes.push(CatalogClass {
                        representative: forms[i].clone(),
                        homology: inv.homology.clone(),
                        lift_components: inv.lift_components,
                        lift_poly: inv.lift_poly.clone(),
                        members: 1,
                    });
                    local.push((class, i));
                }
            }
        }
    }
    unresolved.sort_unstable();

    let keys: Vec<Vec<(Vec<u32>, Option<LaurentPoly>)>> = cfg.exec.map(&classes, |c| {
        let images: Vec<GridDiagram> = match diffeo_orbit(&c.representative) {
            Ok(orbit) => orbit.into_iter().map(|(_, h)| h).collect(),
            Err(_) => vec![c.representative.clone()],
        };
        let mut key: Vec<_> = images
            .iter()
            .map(|h| {
                let inv = invariants(h, &cfg.bracket);
                (inv.homology, inv.lift_poly)
            })
            .collect();
        key.sort();
        key.dedup();
        key
    });
    let mut diffeo_buckets: Vec<Vec<usize>> = Vec::new();
    for i in 0..classes.len() {
        match diffeo_buckets.iter_mut().find(|b| keys[b[0]] == keys[i]) {
            Some(bucket) => bucket.push(i),
            None => diffeo_buckets.push(vec![i]),
        }
    }

    Catalog {
        lens,
        n_max: n,
        diagrams: all.len(),
        canonical: forms.len(),
        complete,
        classes,
        diffeo_buckets,
        unresolved,
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().join(" ")
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "catalog {} {} {}", self.lens.p(), self.lens.q(), self.n_max)?;
        writeln!(f, "diagrams: {}", self.diagrams)?;
        writeln!(f, "canonical: {}", self.canonical)?;
        writeln!(f, "status: {}", if self.complete { "complete" } else { "partial" })?;
        for (i, class) in self.classes.iter().enumerate() {
            writeln!(f, "class {i}")?;
            f.write_str(&serialize(&class.representative))?;
            writeln!(f, "homology: {}", join(&class.homology))?;
            writeln!(f, "lift_components: {}", class.lift_components)?;
            match &class.lift_poly {
                Some(poly) => writeln!(f, "lift_poly: {poly}")?,
                None => writeln!(f, "lift_poly: over cap")?,
            }
            writeln!(f, "members: {}", class.members)?;
        }
        for bucket in &self.diffeo_buckets {
            writeln!(f, "diffeo: {}", join(bucket))?;
        }
        writeln!(f, "unresolved")?;
        for (a, b) in &self.unresolved {
            writeln!(f, "pair {a} {b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error("catalog line {line}: {source}")]
    Diagram { line: usize, source: ParseError },
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    /// An error about the line most recently consumed.
    fn malformed(&self, reason: impl Into<String>) -> CatalogError {
        CatalogError::Malformed { line: self.pos.max(1), reason: reason.into() }
    }

    fn next(&mut self) -> Result<&'a str, CatalogError> {
        let line = self.peek().ok_or_else(|| CatalogError::Malformed {
            line: self.pos + 1,
            reason: "unexpected end of catalog".into(),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn field(&mut self, key: &str) -> Result<&'a str, CatalogError> {
        let line = self.next()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(": ").or_else(|| (rest == ":").then_some("")))
            .ok_or_else(|| self.malformed(format!("expected `{key}:`")))
    }

    fn number<T: std::str::FromStr>(&self, text: &str) -> Result<T, CatalogError> {
        text.parse().map_err(|_| self.malformed(format!("bad number {text:?}")))
    }

    fn numbers<T: std::str::FromStr>(&self, text: &str) -> Result<Vec<T>, CatalogError> {
        text.split_whitespace().map(|w| self.number(w)).collect()
    }

    fn number_field<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, CatalogError> {
        let text = self.field(key)?;
        self.number(text)
    }

    fn numbers_field<T: std::str::FromStr>(&mut self, key: &str) -> Result<Vec<T>, CatalogError> {
        let text = self.field(key)?;
        self.numbers(text)
    }

    /// A line `<prefix> <a> <b> ...` with exactly `N` numbers.
    fn tuple<const N: usize>(&mut self, prefix: &str) -> Result<[u32; N], CatalogError> {
        let line = self.next()?;
        let expected = || self.malformed(format!("expected `{prefix}` followed by {N} numbers"));
        let rest = line.strip_prefix(prefix).and_then(|r| r.strip_prefix(' ')).ok_or_else(expected)?;
        let nums: Vec<u32> = self.numbers(rest)?;
        nums.try_into().map_err(|_| expected())
    }
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let mut lines = Lines { lines: text.lines().collect(), pos: 0 };
    let [p, q, n_max] = lines.tuple::<3>("catalog")?;
    let lens = LensSpace::new(p, q)?;
    let diagrams = lines.number_field("diagrams")?;
    let canonical = lines.number_field("canonical")?;
    let complete = match lines.field("status")? {
        "complete" => true,
        "partial" => false,
        other => return Err(lines.malformed(format!("unknown status {other:?}"))),
    };

    let mut classes = Vec::new();
    while lines.peek().is_some_and(|l| l.starts_with("class ")) {
        lines.next()?;
        let start = lines.pos + 1;
        let lens_line = lines.next()?;
        let grid_line = lines.next()?;
        let n: usize = grid_line
            .strip_prefix("grid ")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| lines.malformed("expected `grid <n>`"))?;
        let mut block = format!("{lens_line}\n{grid_line}\n");
        for _ in 0..n {
            block.push_str(lines.next()?);
            block.push('\n');
        }
        let representative = parse(&block).map_err(|source| CatalogError::Diagram { line: start, source })?;
        let homology = lines.numbers_field("homology")?;
        let lift_components = lines.number_field("lift_components")?;
        let lift_poly = match lines.field("lift_poly")? {
            "over cap" => None,
            poly => Some(poly.parse().map_err(|_| lines.malformed(format!("bad polynomial {poly:?}")))?),
        };
        let members = lines.number_field("members")?;
        classes.push(CatalogClass { representative, homology, lift_components, lift_poly, members });
    }

    let mut diffeo_buckets = Vec::new();
    while lines.peek().is_some_and(|l| l.starts_with("diffeo:")) {
        diffeo_buckets.push(lines.numbers_field("diffeo")?);
    }
    if lines.next()? != "unresolved" {
        return Err(lines.malformed("expected `unresolved`"));
    }
    let mut unresolved = Vec::new();
    while lines.peek().is_some() {
        let [a, b] = lines.tuple::<2>("pair")?;
        unresolved.push((a as usize, b as usize));
    }
    Ok(Catalog { lens, n_max, diagrams, canonical, complete, classes, diffeo_buckets, unresolved })
}
