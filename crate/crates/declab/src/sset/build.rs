//! Builders for the corpus: standard simplices, boundaries, horns, disjoint
//! unions, products and subcomplex quotients.

use std::collections::HashMap;

use crate::ordinal::{coface, enumerate_injections, Ordinal, OrdinalMap};
use crate::sset::{CellId, SSet, SSetError, Simplex};

fn subset_name(values: &[i32]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

/// Cells of `Δ[n]` are the injective monotone maps into `[n]`; builds the
/// cell table shared by `simplex`, `boundary` and `horn`.
fn from_subsets(n: usize, keep: impl Fn(&OrdinalMap) -> bool) -> SSet {
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut subsets: Vec<Vec<OrdinalMap>> = Vec::new();
    for m in 0..=n {
        let kept: Vec<OrdinalMap> = enumerate_injections(Ordinal(m as i32), Ordinal(n as i32))
            .into_iter()
            .filter(&keep)
            .collect();
        names.push(kept.iter().map(|f| subset_name(f.values())).collect());
        subsets.push(kept);
    }
    while names.len() > 1 && names.last().is_some_and(|v| v.is_empty()) {
        names.pop();
        subsets.pop();
    }
    let mut index: HashMap<Vec<i32>, CellId> = HashMap::new();
    for (dim, maps) in subsets.iter().enumerate() {
        for (idx, f) in maps.iter().enumerate() {
            index.insert(f.values().to_vec(), CellId { dim, idx });
        }
    }
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); names.len()];
    for (m, maps) in subsets.iter().enumerate().skip(1) {
        for f in maps {
            let mut cell_faces = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let sub = f.compose(&coface(m as i32, i as i32).unwrap()).unwrap();
                let cell = *index
                    .get(sub.values())
                    .unwrap_or_else(|| panic!("face {:?} missing: not face-closed", sub.values()));
                cell_faces.push(Simplex::of_cell(cell));
            }
            faces[m].push(cell_faces);
        }
    }
    SSet::new_unchecked(names, faces)
}

/// The standard simplex `Δ[n]`.
pub fn simplex(n: usize) -> SSet {
    from_subsets(n, |_| true)
}

/// The boundary `∂Δ[n]`: all proper faces of `Δ[n]`. `boundary(0)` is empty.
pub fn boundary(n: usize) -> SSet {
    if n == 0 {
        return SSet::empty();
    }
    from_subsets(n, |f| f.dom().0 < n as i32)
}

/// The horn `Λ^k[n]`: `Δ[n]` minus the top cell and its `k`-th face.
pub fn horn(n: usize, k: usize) -> SSet {
    assert!(n >= 1 && k <= n, "horn requires n ≥ 1 and 0 ≤ k ≤ n");
    let opposite: Vec<i32> = (0..=n as i32).filter(|&v| v != k as i32).collect();
    from_subsets(n, |f| f.dom().0 < n as i32 && f.values() != opposite)
}

/// Disjoint union, cells of `x` before cells of `y`, names prefixed to stay
/// unique.
pub fn disjoint_union(x: &SSet, y: &SSet) -> SSet {
    let dims = x.names().len().max(y.names().len());
    let mut names = vec![Vec::new(); dims];
    let mut faces = vec![Vec::new(); dims];
    for dim in 0..dims {
        for (idx, name) in x.names().get(dim).into_iter().flatten().enumerate() {
            names[dim].push(format!("l.{name}"));
            if dim >= 1 {
                faces[dim].push(x.face_table()[dim][idx].clone());
            }
        }
    }
    let offset: Vec<usize> = (0..dims).map(|d| names[d].len()).collect();
    for dim in 0..dims {
        for (idx, name) in y.names().get(dim).into_iter().flatten().enumerate() {
            names[dim].push(format!("r.{name}"));
            if dim >= 1 {
                let shifted = y.face_table()[dim][idx]
                    .iter()
                    .map(|s| Simplex {
                        deg: s.deg.clone(),
                        cell: CellId { dim: s.cell.dim, idx: s.cell.idx + offset[s.cell.dim] },
                    })
                    .collect();
                faces[dim].push(shifted);
            }
        }
    }
    SSet::new_unchecked(names, faces)
}

/// A levelwise product, with the generating pair of simplices remembered for
/// each nondegenerate cell and both projections available.
#[derive(Clone, Debug)]
pub struct Product {
    pub space: SSet,
    pairs: Vec<Vec<(Simplex, Simplex)>>,
    index: HashMap<(Simplex, Simplex), CellId>,
}

fn jointly_nondegenerate(s: &Simplex, t: &Simplex) -> bool {
    let n = s.level();
    (1..=n).all(|i| {
        s.deg.at(i as i32) > s.deg.at(i as i32 - 1) || t.deg.at(i as i32) > t.deg.at(i as i32 - 1)
    })
}

impl Product {
    /// Builds `X × Y`: nondegenerate `n`-cells are the jointly nondegenerate
    /// pairs of `n`-simplices, faces computed componentwise and renormalized.
    pub fn new(x: &SSet, y: &SSet) -> Product {
        if x.is_empty() || y.is_empty() {
            return Product { space: SSet::empty(), pairs: Vec::new(), index: HashMap::new() };
        }
        let top = x.top_dim().unwrap() + y.top_dim().unwrap();
        let mut names: Vec<Vec<String>> = Vec::new();
        let mut pairs: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
        let mut index: HashMap<(Simplex, Simplex), CellId> = HashMap::new();
        for n in 0..=top {
            let mut level_names = Vec::new();
            let mut level_pairs = Vec::new();
            for s in x.level(n) {
                for t in y.level(n) {
                    if jointly_nondegenerate(&s, &t) {
                        let name = format!(
                            "{}({})*{}({})",
                            x.cell_name(s.cell),
                            subset_name(s.deg.values()),
                            y.cell_name(t.cell),
                            subset_name(t.deg.values()),
                        );
                        index.insert(
                            (s.clone(), t.clone()),
                            CellId { dim: n, idx: level_pairs.len() },
                        );
                        level_names.push(name);
                        level_pairs.push((s.clone(), t.clone()));
                    }
                }
            }
            names.push(level_names);
            pairs.push(level_pairs);
        }
        while names.len() > 1 && names.last().is_some_and(|v| v.is_empty()) {
            names.pop();
            pairs.pop();
        }
        let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); names.len()];
        for n in 1..names.len() {
            for (s, t) in &pairs[n] {
                let mut cell_faces = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let d = coface(n as i32, i as i32).unwrap();
                    let fs = x.act(&d, s);
                    let ft = y.act(&d, t);
                    cell_faces.push(pair_normal_form(x, y, &index, &fs, &ft));
                }
                faces[n].push(cell_faces);
            }
        }
        let space = SSet::new_unchecked(names, faces);
        Product { space, pairs, index }
    }

    /// The generating pair of simplices of a product cell.
    pub fn pair(&self, c: CellId) -> &(Simplex, Simplex) {
        &self.pairs[c.dim][c.idx]
    }

    /// All generating pairs, indexed like the cells of the product.
    pub fn pairs_table(&self) -> &Vec<Vec<(Simplex, Simplex)>> {
        &self.pairs
    }

    /// EZ normal form in the product of a componentwise pair of `n`-simplices.
    pub fn simplex_of_pair(&self, x: &SSet, y: &SSet, s: &Simplex, t: &Simplex) -> Simplex {
        pair_normal_form(x, y, &self.index, s, t)
    }

    /// Both components of an arbitrary simplex of the product.
    pub fn components(&self, x: &SSet, y: &SSet, e: &Simplex) -> (Simplex, Simplex) {
        let (s, t) = self.pair(e.cell);
        (x.act(&e.deg, s), y.act(&e.deg, t))
    }

    /// The canonical projection onto `x`, as a cellwise assignment.
    pub fn proj_left(&self) -> super::map::SMap {
        super::map::SMap::from_assignment(
            self.pairs.iter().map(|lvl| lvl.iter().map(|(s, _)| s.clone()).collect()).collect(),
        )
    }

    /// The canonical projection onto `y`.
    pub fn proj_right(&self) -> super::map::SMap {
        super::map::SMap::from_assignment(
            self.pairs.iter().map(|lvl| lvl.iter().map(|(_, t)| t.clone()).collect()).collect(),
        )
    }
}

fn pair_normal_form(
    x: &SSet,
    y: &SSet,
    index: &HashMap<(Simplex, Simplex), CellId>,
    s: &Simplex,
    t: &Simplex,
) -> Simplex {
    let n = s.level() as i32;
    debug_assert_eq!(t.level() as i32, n);
    // the joint degeneracy jumps exactly where one of the components does
    let mut values = Vec::with_capacity(n as usize + 1);
    let mut section = Vec::new();
    let mut current = 0i32;
    values.push(0);
    section.push(0);
    for i in 1..=n {
        if s.deg.at(i) > s.deg.at(i - 1) || t.deg.at(i) > t.deg.at(i - 1) {
            current += 1;
            section.push(i);
        }
        values.push(current);
    }
    let q = Ordinal(current);
    let eta = OrdinalMap::new(Ordinal(n), q, values).unwrap();
    let delta = OrdinalMap::new(q, Ordinal(n), section).unwrap();
    let u = x.act(&delta, s);
    let v = y.act(&delta, t);
    let cell = *index
        .get(&(u.clone(), v.clone()))
        .unwrap_or_else(|| panic!("jointly nondegenerate pair missing from product index"));
    Simplex { deg: eta, cell }
}

/// Levelwise product as a plain simplicial set.
pub fn product(x: &SSet, y: &SSet) -> SSet {
    Product::new(x, y).space
}

/// The tensor of a simplicial set with another: for set-valued presheaves
/// this is the levelwise product, and the canonical map `X × K -> X` is the
/// left projection ([`Product::proj_left`]).
pub fn tensor(x: &SSet, k: &SSet) -> Product {
    Product::new(x, k)
}

/// Identifies the cells of `a` inside `x` by name and checks that they form a
/// face-closed subcomplex with the same face structure.
pub fn subcomplex_cells(x: &SSet, a: &SSet) -> Result<Vec<CellId>, SSetError> {
    let mut matched = Vec::new();
    let mut in_sub = vec![Vec::new(); x.names().len()];
    for (dim, names) in a.names().iter().enumerate() {
        for name in names {
            let cell = x.cell_by_name(name).ok_or_else(|| {
                SSetError::Other(format!("subcomplex cell {name} not found in ambient space"))
            })?;
            if cell.dim != dim {
                return Err(SSetError::Other(format!(
                    "subcomplex cell {name} has dimension {} in the ambient space, expected {dim}",
                    cell.dim
                )));
            }
            in_sub[cell.dim].push(cell.idx);
            matched.push(cell);
        }
    }
    for &cell in &matched {
        if cell.dim == 0 {
            continue;
        }
        for i in 0..=cell.dim {
            let f = x.face(cell, i);
            if !in_sub[f.cell.dim].contains(&f.cell.idx) {
                return Err(SSetError::Other(format!(
                    "subcomplex is not face-closed: face {i} of {} leaves it",
                    x.cell_name(cell)
                )));
            }
            // the subcomplex must carry the same face structure
            let a_cell = a.cell_by_name(x.cell_name(cell)).unwrap();
            let a_face = a.face(a_cell, i);
            if a_face.deg != f.deg || a.cell_name(a_face.cell) != x.cell_name(f.cell) {
                return Err(SSetError::Other(format!(
                    "face {i} of {} differs between subcomplex and ambient space",
                    x.cell_name(cell)
                )));
            }
        }
    }
    Ok(matched)
}

/// Collapses the subcomplex `a ⊆ x` to a single new vertex `*`. Cells of `a`
/// disappear; faces landing in `a` are redirected to the total degeneracy of
/// the basepoint.
pub fn quotient(x: &SSet, a: &SSet) -> Result<SSet, SSetError> {
    let cells = subcomplex_cells(x, a)?;
    if cells.is_empty() {
        return Err(SSetError::Other("cannot collapse an empty subcomplex".into()));
    }
    let mut collapsed = vec![Vec::new(); x.names().len()];
    for c in &cells {
        collapsed[c.dim].push(c.idx);
    }
    // new index: basepoint first in dimension 0, survivors keep relative order
    let mut names: Vec<Vec<String>> = vec![Vec::new(); x.names().len().max(1)];
    names[0].push("*".to_string());
    let mut renumber: HashMap<CellId, CellId> = HashMap::new();
    for (dim, level_names) in x.names().iter().enumerate() {
        for (idx, name) in level_names.iter().enumerate() {
            if collapsed[dim].contains(&idx) {
                continue;
            }
            renumber.insert(CellId { dim, idx }, CellId { dim, idx: names[dim].len() });
            names[dim].push(name.clone());
        }
    }
    while names.len() > 1 && names.last().is_some_and(|v| v.is_empty()) {
        names.pop();
    }
    let base = CellId { dim: 0, idx: 0 };
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); names.len()];
    for dim in 1..names.len() {
        for idx in 0..x.cell_count(dim) {
            if collapsed[dim].contains(&idx) {
                continue;
            }
            let cell_faces = x.face_table()[dim][idx]
                .iter()
                .map(|f| match renumber.get(&f.cell) {
                    Some(&new_cell) => Simplex { deg: f.deg.clone(), cell: new_cell },
                    None => Simplex {
                        deg: OrdinalMap::constant(Ordinal(dim as i32 - 1), Ordinal(0), 0).unwrap(),
                        cell: base,
                    },
                })
                .collect();
            faces[dim].push(cell_faces);
        }
        debug_assert_eq!(faces[dim].len(), names[dim].len());
    }
    let q = SSet::new_unchecked(names, faces);
    q.validate()?;
    Ok(q)
}

/// The quotient projection `x -> x/a` as a cellwise assignment.
pub fn quotient_map(x: &SSet, a: &SSet, q: &SSet) -> Result<super::map::SMap, SSetError> {
    let cells = subcomplex_cells(x, a)?;
    let base = CellId { dim: 0, idx: 0 };
    let mut assignment: Vec<Vec<Simplex>> = Vec::new();
    for (dim, level_names) in x.names().iter().enumerate() {
        let mut level = Vec::new();
        for (idx, name) in level_names.iter().enumerate() {
            let old = CellId { dim, idx };
            if cells.contains(&old) {
                let deg = if dim == 0 {
                    OrdinalMap::identity(Ordinal(0))
                } else {
                    OrdinalMap::constant(Ordinal(dim as i32), Ordinal(0), 0).unwrap()
                };
                level.push(Simplex { deg, cell: base });
            } else {
                let target = q
                    .cell_by_name(name)
                    .ok_or_else(|| SSetError::Other(format!("cell {name} missing in quotient")))?;
                level.push(Simplex::of_cell(target));
            }
        }
        assignment.push(level);
    }
    Ok(super::map::SMap::from_assignment(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::pi0;

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut acc = 1usize;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    #[test]
    fn standard_builders_validate() {
        for n in 0..=4 {
            simplex(n).validate().unwrap();
        }
        for n in 1..=4 {
            boundary(n).validate().unwrap();
            for k in 0..=n {
                horn(n, k).validate().unwrap();
            }
        }
    }

    #[test]
    fn simplex_and_boundary_cells() {
        assert_eq!(simplex(0).total_cells(), 1);
        let b2 = boundary(2);
        assert_eq!(b2.cell_count(0), 3);
        assert_eq!(b2.cell_count(1), 3);
        assert_eq!(b2.cell_count(2), 0);
        let h = horn(2, 1);
        assert_eq!(h.cell_count(0), 3);
        assert_eq!(h.cell_count(1), 2);
        assert!(h.cell_by_name("0.2").is_none());
    }

    #[test]
    fn product_levels_multiply() {
        let x = boundary(2);
        let y = simplex(1);
        let p = product(&x, &y);
        for n in 0..=4 {
            assert_eq!(p.level(n).len(), x.level(n).len() * y.level(n).len());
        }
        p.validate().unwrap();
    }

    #[test]
    fn product_square_shuffles() {
        let d1 = simplex(1);
        let sq = product(&d1, &d1);
        assert_eq!(sq.cell_count(0), 4);
        assert_eq!(sq.cell_count(1), 5);
        assert_eq!(sq.cell_count(2), 2);
        sq.validate().unwrap();
    }

    #[test]
    fn product_top_cells_are_shuffles() {
        // cross-check against the shuffle count C(p+q, p)
        for p in 0..=2usize {
            for q in 0..=2usize {
                let prod = product(&simplex(p), &simplex(q));
                assert_eq!(prod.cell_count(p + q), binomial(p + q, p));
            }
        }
    }

    #[test]
    fn product_unit() {
        let x = boundary(2);
        let p = product(&x, &simplex(0));
        assert_eq!(p.cell_count(0), x.cell_count(0));
        assert_eq!(p.cell_count(1), x.cell_count(1));
        for n in 0..=3 {
            assert_eq!(p.level(n).len(), x.level(n).len());
        }
    }

    #[test]
    fn product_associative_levelwise() {
        let a = simplex(1);
        let b = boundary(2);
        let c = simplex(0);
        let left = product(&product(&a, &b), &c);
        let right = product(&a, &product(&b, &c));
        for n in 0..=4 {
            assert_eq!(left.level(n).len(), right.level(n).len());
        }
    }

    #[test]
    fn quotient_circle() {
        let circle = quotient(&simplex(1), &boundary(1)).unwrap();
        assert_eq!(circle.cell_count(0), 1);
        assert_eq!(circle.cell_count(1), 1);
        let e = CellId { dim: 1, idx: 0 };
        assert_eq!(circle.face(e, 0), circle.face(e, 1));
        assert_eq!(pi0(&circle).len(), 1);
    }

    #[test]
    fn quotient_collapse_everything() {
        let q = quotient(&simplex(2), &simplex(2)).unwrap();
        assert_eq!(q.total_cells(), 1);
        assert_eq!(q.cell_count(0), 1);
    }

    #[test]
    fn quotient_rejects_bad_subcomplexes() {
        assert!(quotient(&simplex(2), &SSet::empty()).is_err());
        // horn(2, 1) is a subcomplex; a space with an alien cell is not
        assert!(quotient(&simplex(2), &horn(2, 1)).is_ok());
        assert!(quotient(&boundary(2), &simplex(2)).is_err());
    }

    #[test]
    fn disjoint_union_counts() {
        let u = disjoint_union(&simplex(1), &boundary(2));
        assert_eq!(u.cell_count(0), 2 + 3);
        assert_eq!(u.cell_count(1), 1 + 3);
        u.validate().unwrap();
        assert_eq!(pi0(&u).len(), 2);
    }

    #[test]
    fn tensor_with_interval() {
        // Δ[0] ⊗ Δ[1] has the levels of Δ[1], and in general
        // |(X ⊗ Δ[1])_k| = (k+2)·|X_k|
        let interval = simplex(1);
        let t = tensor(&simplex(0), &interval);
        for n in 0..=3 {
            assert_eq!(t.space.level(n).len(), interval.level(n).len());
        }
        let x = boundary(2);
        let t = tensor(&x, &interval);
        for k in 0..=3 {
            assert_eq!(t.space.level(k).len(), (k + 2) * x.level(k).len());
        }
        // the canonical map to X is the projection
        t.proj_left().check(&t.space, &x).unwrap();
    }
}
