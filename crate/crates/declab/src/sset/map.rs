//! Simplicial maps and exhaustive enumeration of mapping spaces.
//!
//! A map is determined by the images of the nondegenerate cells of its
//! source; compatibility with the recorded faces is the only condition
//! (degeneracies extend uniquely along the EZ action). Enumeration is a
//! backtracking search in dimension-increasing cell order with forward
//! checking: assigning a cell immediately filters the candidate images of
//! every higher cell one of whose faces it is.

use crate::ordinal::coface;
use crate::sset::{CellId, SSet, Simplex};

/// A simplicial map as cellwise data: for every nondegenerate source cell,
/// its image simplex of the same dimension in the target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SMap {
    assignment: Vec<Vec<Simplex>>,
}

impl SMap {
    pub fn from_assignment(assignment: Vec<Vec<Simplex>>) -> SMap {
        SMap { assignment }
    }

    /// Validates face compatibility against the given source and target.
    pub fn new(
        source: &SSet,
        target: &SSet,
        assignment: Vec<Vec<Simplex>>,
    ) -> Result<SMap, String> {
        let f = SMap { assignment };
        f.check(source, target)?;
        Ok(f)
    }

    pub fn identity(x: &SSet) -> SMap {
        let assignment = x
            .names()
            .iter()
            .enumerate()
            .map(|(dim, names)| {
                (0..names.len()).map(|idx| Simplex::of_cell(CellId { dim, idx })).collect()
            })
            .collect();
        SMap { assignment }
    }

    pub fn image_of_cell(&self, c: CellId) -> &Simplex {
        &self.assignment[c.dim][c.idx]
    }

    pub fn assignment(&self) -> &Vec<Vec<Simplex>> {
        &self.assignment
    }

    /// Evaluates on an arbitrary simplex of the source.
    pub fn apply(&self, target: &SSet, s: &Simplex) -> Simplex {
        target.act(&s.deg, self.image_of_cell(s.cell))
    }

    /// `g ∘ self`, where `self : A -> B` and `g : B -> C`.
    pub fn then(&self, g: &SMap, c: &SSet) -> SMap {
        let assignment = self
            .assignment
            .iter()
            .map(|level| level.iter().map(|s| g.apply(c, s)).collect())
            .collect();
        SMap { assignment }
    }

    /// Face compatibility: for every cell `c` and every `i`,
    /// `f(d_i c) = d_i f(c)` after normalization.
    pub fn check(&self, source: &SSet, target: &SSet) -> Result<(), String> {
        if self.assignment.len() != source.names().len() {
            return Err("assignment shape does not match source".into());
        }
        for (dim, level) in self.assignment.iter().enumerate() {
            if level.len() != source.cell_count(dim) {
                return Err(format!("assignment at dimension {dim} has wrong length"));
            }
            for (idx, img) in level.iter().enumerate() {
                if img.level() != dim {
                    return Err(format!(
                        "image of cell {} has level {}, expected {dim}",
                        source.cell_name(CellId { dim, idx }),
                        img.level()
                    ));
                }
            }
        }
        for dim in 1..self.assignment.len() {
            for idx in 0..self.assignment[dim].len() {
                let c = CellId { dim, idx };
                let img = self.image_of_cell(c);
                for i in 0..=dim {
                    let lhs = target.act(&coface(dim as i32, i as i32).unwrap(), img);
                    let rhs = self.apply(target, source.face(c, i));
                    if lhs != rhs {
                        return Err(format!(
                            "face {i} of cell {} does not commute: {lhs} vs {rhs}",
                            source.cell_name(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Search budget for the exhaustive enumerators; exceeding it aborts the
/// check with an explicit inconclusive outcome instead of a silent pass.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 50_000_000 }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("search budget exhausted after {visited} nodes")]
pub struct BudgetExceeded {
    pub visited: u64,
}

/// All simplicial maps `a -> x`, in lexicographic order of (cell order,
/// candidate order). Candidate images are taken in level order, so the
/// output ordering is reproducible.
pub fn hom_sset(a: &SSet, x: &SSet) -> Vec<SMap> {
    hom_sset_budgeted(a, x, Budget::default()).expect("default budget exhausted")
}

pub fn hom_sset_budgeted(a: &SSet, x: &SSet, budget: Budget) -> Result<Vec<SMap>, BudgetExceeded> {
    let cells = a.all_cells();
    if cells.is_empty() {
        return Ok(vec![SMap { assignment: vec![Vec::new(); a.names().len()] }]);
    }
    // flat ordering: position of each cell in the search
    let mut order_of = vec![Vec::new(); a.names().len()];
    for (pos, c) in cells.iter().enumerate() {
        order_of[c.dim].push(pos);
        debug_assert_eq!(order_of[c.dim].len() - 1, c.idx);
    }
    // incidence: for each cell position, the (higher cell, face index) pairs
    // whose recorded face references it
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cells.len()];
    for (pos, c) in cells.iter().enumerate() {
        if c.dim == 0 {
            continue;
        }
        for i in 0..=c.dim {
            let f = a.face(*c, i);
            incident[order_of[f.cell.dim][f.cell.idx]].push((pos, i));
        }
    }
    let mut domains: Vec<Vec<Simplex>> = cells.iter().map(|c| x.level(c.dim)).collect();
    let mut chosen: Vec<Simplex> = Vec::with_capacity(cells.len());
    let mut out = Vec::new();
    let mut visited = 0u64;
    search(
        a,
        x,
        &cells,
        &incident,
        &mut domains,
        &mut chosen,
        &mut out,
        &mut visited,
        budget.max_nodes,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &SSet,
    x: &SSet,
    cells: &[CellId],
    incident: &[Vec<(usize, usize)>],
    domains: &mut Vec<Vec<Simplex>>,
    chosen: &mut Vec<Simplex>,
    out: &mut Vec<SMap>,
    visited: &mut u64,
    max_nodes: u64,
) -> Result<(), BudgetExceeded> {
    let pos = chosen.len();
    if pos == cells.len() {
        let mut assignment = vec![Vec::new(); a.names().len()];
        for (c, img) in cells.iter().zip(chosen.iter()) {
            assignment[c.dim].push(img.clone());
        }
        out.push(SMap { assignment });
        return Ok(());
    }
    let candidates = domains[pos].clone();
    for img in candidates {
        *visited += 1;
        if *visited > max_nodes {
            return Err(BudgetExceeded { visited: *visited });
        }
        // filter the domains of incident higher cells against this choice
        let mut saved: Vec<(usize, Vec<Simplex>)> = Vec::new();
        let mut dead = false;
        for &(hi, i) in &incident[pos] {
            debug_assert!(hi > pos);
            let c = cells[hi];
            let face = a.face(c, i);
            debug_assert_eq!((face.cell.dim, face.cell.idx), (cells[pos].dim, cells[pos].idx));
            let want = x.act(&face.deg, &img);
            let d = coface(c.dim as i32, i as i32).unwrap();
            let filtered: Vec<Simplex> =
                domains[hi].iter().filter(|y| x.act(&d, y) == want).cloned().collect();
            if filtered.is_empty() {
                saved.push((hi, std::mem::replace(&mut domains[hi], filtered)));
                dead = true;
                break;
            }
            saved.push((hi, std::mem::replace(&mut domains[hi], filtered)));
        }
        if !dead {
            chosen.push(img);
            search(a, x, cells, incident, domains, chosen, out, visited, max_nodes)?;
            chosen.pop();
        }
        for (hi, old) in saved.into_iter().rev() {
            domains[hi] = old;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::build::{boundary, product, quotient, quotient_map, simplex};
    use crate::sset::pi0_induced;

    #[test]
    fn yoneda_hom_counts() {
        let spaces = vec![simplex(2), boundary(2), product(&simplex(1), &simplex(1))];
        for x in &spaces {
            for n in 0..=4usize {
                assert_eq!(hom_sset(&simplex(n), x).len(), x.level(n).len(), "n={n}");
            }
        }
    }

    #[test]
    fn hom_interval_counts() {
        let d1 = simplex(1);
        assert_eq!(hom_sset(&d1, &d1).len(), 3);
        assert_eq!(hom_sset(&boundary(1), &d1).len(), 4);
    }

    #[test]
    fn maps_validate() {
        let d1 = simplex(1);
        for f in hom_sset(&boundary(2), &d1) {
            f.check(&boundary(2), &d1).unwrap();
        }
        let id = SMap::identity(&d1);
        id.check(&d1, &d1).unwrap();
    }

    #[test]
    fn compose_and_apply() {
        let d2 = simplex(2);
        let d0 = simplex(0);
        let collapse = &hom_sset(&d2, &d0)[0];
        let id = SMap::identity(&d2);
        let both = id.then(collapse, &d0);
        assert_eq!(&both, collapse);
    }

    #[test]
    fn quotient_projection_is_simplicial() {
        let x = simplex(1);
        let a = boundary(1);
        let q = quotient(&x, &a).unwrap();
        let proj = quotient_map(&x, &a, &q).unwrap();
        proj.check(&x, &q).unwrap();
        // π₀ functoriality: the projection collapses both components to one
        let p_src = crate::sset::pi0(&x);
        let p_dst = crate::sset::pi0(&q);
        let induced = pi0_induced(&p_src, &p_dst, |v| proj.apply(&q, v)).unwrap();
        assert_eq!(induced, vec![0]);
    }

    #[test]
    fn projections_are_simplicial() {
        let x = boundary(2);
        let y = simplex(1);
        let p = crate::sset::build::Product::new(&x, &y);
        p.proj_left().check(&p.space, &x).unwrap();
        p.proj_right().check(&p.space, &y).unwrap();
    }

    #[test]
    fn empty_source_has_one_map() {
        let e = crate::sset::SSet::empty();
        assert_eq!(hom_sset(&e, &simplex(2)).len(), 1);
    }
}
