//! Finite simplicial sets presented by nondegenerate cells.
//!
//! A simplicial set is stored as its nondegenerate cells together with, for
//! every cell of dimension `n ≥ 1` and every `0 ≤ i ≤ n`, the `i`-th face
//! recorded as a [`Simplex`]: the unique Eilenberg–Zilber normal form
//! `(degeneracy, cell)` of a possibly degenerate simplex. All levels and the
//! full presheaf action are computed from this data, so levelwise-infinite
//! objects never need to be materialized beyond the dimension asked for.

pub mod bisset;
pub mod build;
pub mod format;
pub mod map;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::ordinal::{codegeneracy, coface, enumerate_surjections, Ordinal, OrdinalMap};

/// Identifier of a nondegenerate cell: dimension plus index in presentation
/// order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub dim: usize,
    pub idx: usize,
}

/// A simplex in Eilenberg–Zilber normal form: a surjective degeneracy applied
/// to a nondegenerate cell. Two simplices are equal iff componentwise equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub deg: OrdinalMap,
    pub cell: CellId,
}

impl Simplex {
    /// The cell itself, with identity degeneracy.
    pub fn of_cell(cell: CellId) -> Simplex {
        Simplex { deg: OrdinalMap::identity(Ordinal(cell.dim as i32)), cell }
    }

    /// Level this simplex lives in.
    pub fn level(&self) -> usize {
        self.deg.dom().0 as usize
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.deg.is_identity()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}_{}{}", self.cell.dim, self.cell.idx, self.deg)
    }
}

#[derive(Debug, Error)]
pub enum SSetError {
    #[error("cell {cell} of dimension {dim} has {found} faces, expected {expected}")]
    FaceCount { cell: String, dim: usize, found: usize, expected: usize },
    #[error("face {i} of cell {cell}: {reason}")]
    BadFace { cell: String, i: usize, reason: String },
    #[error("simplicial identity failed on cell {cell}: d_{i} d_{j} != d_{jm1} d_{i} ({lhs} vs {rhs})")]
    Identity { cell: String, i: usize, j: usize, jm1: usize, lhs: String, rhs: String },
    #[error("duplicate cell name {0}")]
    DuplicateName(String),
    #[error("{0}")]
    Other(String),
}

/// A finite simplicial set presented by nondegenerate cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSet {
    /// Cell names per dimension.
    names: Vec<Vec<String>>,
    /// `faces[n][idx][i]` is the `i`-th face of the `idx`-th `n`-cell, for
    /// `n ≥ 1`; entry `faces[0]` is always empty.
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl SSet {
    /// Builds and validates a simplicial set from raw presentation data.
    pub fn new(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<SSet, SSetError> {
        let s = SSet { names, faces };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> SSet {
        SSet { names, faces }
    }

    /// The empty simplicial set.
    pub fn empty() -> SSet {
        SSet { names: Vec::new(), faces: Vec::new() }
    }

    /// Largest dimension carrying a cell, or `None` when empty.
    pub fn top_dim(&self) -> Option<usize> {
        (0..self.names.len()).rev().find(|&n| !self.names[n].is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.top_dim().is_none()
    }

    /// Number of nondegenerate cells in dimension `n`.
    pub fn cell_count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |v| v.len())
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|v| v.len()).sum()
    }

    pub fn cell_name(&self, c: CellId) -> &str {
        &self.names[c.dim][c.idx]
    }

    pub fn cell_by_name(&self, name: &str) -> Option<CellId> {
        for (dim, names) in self.names.iter().enumerate() {
            if let Some(idx) = names.iter().position(|n| n == name) {
                return Some(CellId { dim, idx });
            }
        }
        None
    }

    /// All cells in presentation order (dimension, then index).
    pub fn all_cells(&self) -> Vec<CellId> {
        let mut out = Vec::new();
        for (dim, names) in self.names.iter().enumerate() {
            for idx in 0..names.len() {
                out.push(CellId { dim, idx });
            }
        }
        out
    }

    /// Recorded `i`-th face of a cell of dimension `≥ 1`.
    pub fn face(&self, c: CellId, i: usize) -> &Simplex {
        &self.faces[c.dim][c.idx][i]
    }

    pub(crate) fn names(&self) -> &Vec<Vec<String>> {
        &self.names
    }

    pub(crate) fn face_table(&self) -> &Vec<Vec<Vec<Simplex>>> {
        &self.faces
    }

    /// Checks face-table shape and the simplicial identities
    /// `d_i d_j = d_{j-1} d_i` (`i < j`) on every cell.
    pub fn validate(&self) -> Result<(), SSetError> {
        if self.faces.len() != self.names.len() {
            return Err(SSetError::Other("face table and cell table lengths differ".into()));
        }
        let mut seen = HashMap::new();
        for (dim, names) in self.names.iter().enumerate() {
            for (idx, name) in names.iter().enumerate() {
                if seen.insert(name.clone(), (dim, idx)).is_some() {
                    return Err(SSetError::DuplicateName(name.clone()));
                }
            }
        }
        for n in 0..self.names.len() {
            if n == 0 {
                continue;
            }
            if self.faces[n].len() != self.names[n].len() {
                return Err(SSetError::Other(format!("face table at dim {n} has wrong length")));
            }
            for (idx, cell_faces) in self.faces[n].iter().enumerate() {
                let cell = CellId { dim: n, idx };
                if cell_faces.len() != n + 1 {
                    return Err(SSetError::FaceCount {
                        cell: self.cell_name(cell).to_string(),
                        dim: n,
                        found: cell_faces.len(),
                        expected: n + 1,
                    });
                }
                for (i, f) in cell_faces.iter().enumerate() {
                    let reason = if f.deg.dom() != Ordinal(n as i32 - 1) {
                        Some("degeneracy domain is not the face level".to_string())
                    } else if !f.deg.is_surjective() {
                        Some("degeneracy is not surjective".to_string())
                    } else if f.cell.dim != f.deg.cod().0 as usize {
                        Some("degeneracy codomain does not match cell dimension".to_string())
                    } else if f.cell.dim >= self.names.len()
                        || f.cell.idx >= self.names[f.cell.dim].len()
                    {
                        Some("face references a missing cell".to_string())
                    } else {
                        None
                    };
                    if let Some(reason) = reason {
                        return Err(SSetError::BadFace {
                            cell: self.cell_name(cell).to_string(),
                            i,
                            reason,
                        });
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j, computed through the EZ action
        for n in 2..self.names.len() {
            for idx in 0..self.names[n].len() {
                let cell = CellId { dim: n, idx };
                for j in 1..=n {
                    for i in 0..j {
                        let dj = self.face(cell, j);
                        let di = self.face(cell, i);
                        let lhs = self.act(&coface(n as i32 - 1, i as i32).unwrap(), dj);
                        let rhs = self.act(&coface(n as i32 - 1, j as i32 - 1).unwrap(), di);
                        if lhs != rhs {
                            return Err(SSetError::Identity {
                                cell: self.cell_name(cell).to_string(),
                                i,
                                j,
                                jm1: j - 1,
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The set of `n`-simplices: every pair (surjection, cell) in
    /// presentation order — cells by (dimension, index), degeneracies in
    /// lexicographic order.
    pub fn level(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        let top = match self.top_dim() {
            Some(t) => t.min(n),
            None => return out,
        };
        for m in 0..=top {
            for idx in 0..self.cell_count(m) {
                for deg in enumerate_surjections(Ordinal(n as i32), Ordinal(m as i32)) {
                    out.push(Simplex { deg, cell: CellId { dim: m, idx } });
                }
            }
        }
        out
    }

    /// Presheaf action: the EZ normal form of `s · op` for `op : [n'] -> [n]`
    /// and `s` an `n`-simplex. Contravariantly functorial:
    /// `act(β∘γ, s) = act(γ, act(β, s))`.
    pub fn act(&self, op: &OrdinalMap, s: &Simplex) -> Simplex {
        debug_assert_eq!(op.cod().0 as usize, s.level(), "operator/simplex level mismatch");
        let gamma = s.deg.compose(op).expect("level mismatch in act");
        let (inj, surj) = gamma.ez_factor();
        let t = self.act_injective(&inj, s.cell);
        Simplex { deg: t.deg.compose(&surj).unwrap(), cell: t.cell }
    }

    /// Normal form of `cell · inj` for an injective `inj : [p] -> [m]`,
    /// `m = dim(cell)`: peel one missed coface at a time, pushing through the
    /// recorded face and renormalizing.
    fn act_injective(&self, inj: &OrdinalMap, cell: CellId) -> Simplex {
        if inj.is_identity() {
            return Simplex::of_cell(cell);
        }
        let m = inj.cod().0;
        let mut missed = m;
        while inj.values().binary_search(&missed).is_ok() {
            missed -= 1;
        }
        let reduced = OrdinalMap::new(
            inj.dom(),
            Ordinal(m - 1),
            inj.values().iter().map(|&v| if v < missed { v } else { v - 1 }).collect(),
        )
        .unwrap();
        let face = self.face(cell, missed as usize);
        let gamma = face.deg.compose(&reduced).unwrap();
        let (inj1, surj1) = gamma.ez_factor();
        let t = self.act_injective(&inj1, face.cell);
        Simplex { deg: t.deg.compose(&surj1).unwrap(), cell: t.cell }
    }
}

/// Levelwise view of a simplicial object: finite level sets plus the
/// contravariant action of ordinal maps. Implemented by [`SSet`] and by the
/// virtual constructions (Kan extensions, totals, cotensors) whose levels are
/// computed on demand.
pub trait Levelwise {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn elems(&self, n: usize) -> Vec<Self::Elem>;

    /// `op : [l] -> [k]` acting on an element of level `k`, producing an
    /// element of level `l`.
    fn act_elem(&self, op: &OrdinalMap, e: &Self::Elem) -> Self::Elem;

    fn describe(&self, e: &Self::Elem) -> String {
        format!("{e:?}")
    }
}

impl Levelwise for SSet {
    type Elem = Simplex;

    fn elems(&self, n: usize) -> Vec<Simplex> {
        self.level(n)
    }

    fn act_elem(&self, op: &OrdinalMap, e: &Simplex) -> Simplex {
        self.act(op, e)
    }

    fn describe(&self, e: &Simplex) -> String {
        format!("{}{}", self.cell_name(e.cell), e.deg)
    }
}

/// A partition of a finite list of elements, as produced by coequalizers of
/// finite sets. Classes are ordered by their least member; the canonical
/// representative of a class is its least member in presentation order.
#[derive(Clone, Debug)]
pub struct Partition<E> {
    elems: Vec<E>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash> Partition<E> {
    /// Quotient of `elems` by the equivalence generated by `pairs`
    /// (union-find).
    pub fn coequalize(elems: Vec<E>, pairs: &[(usize, usize)]) -> Partition<E> {
        let n = elems.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(a, b) in pairs {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                // keep the smaller index as root so representatives are canonical
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut class_of = vec![usize::MAX; n];
        for (x, slot) in class_of.iter_mut().enumerate() {
            let r = find(&mut parent, x);
            let cls = match roots.iter().position(|&q| q == r) {
                Some(c) => c,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            *slot = cls;
        }
        let mut classes = vec![Vec::new(); roots.len()];
        for (x, &c) in class_of.iter().enumerate() {
            classes[c].push(x);
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Partition { elems, class_of, classes, index }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn elems(&self) -> &[E] {
        &self.elems
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).map(|&i| self.class_of[i])
    }

    /// Canonical representative of a class: its least member.
    pub fn rep(&self, class: usize) -> &E {
        &self.elems[self.classes[class][0]]
    }

    /// Canonical representative of the class containing `e`.
    pub fn canonical(&self, e: &E) -> Option<&E> {
        self.class_of(e).map(|c| self.rep(c))
    }

    /// All canonical representatives, in class order.
    pub fn reps(&self) -> Vec<E> {
        (0..self.len()).map(|c| self.rep(c).clone()).collect()
    }
}

/// `π₀` as the coequalizer of the two face maps `X_1 ⇉ X_0`: the partition of
/// the vertices generated by `d_0(e) ~ d_1(e)` over the nondegenerate edges.
pub fn pi0(x: &SSet) -> Partition<Simplex> {
    let verts = x.level(0);
    let mut pos = HashMap::new();
    for (i, v) in verts.iter().enumerate() {
        pos.insert(v.clone(), i);
    }
    let mut pairs = Vec::new();
    for idx in 0..x.cell_count(1) {
        let c = CellId { dim: 1, idx };
        let a = x.face(c, 0);
        let b = x.face(c, 1);
        pairs.push((pos[a], pos[b]));
    }
    Partition::coequalize(verts, &pairs)
}

/// Induced map on `π₀` along a levelwise map of vertex sets. Returns the
/// class index in `target` for each class of `source`, or an error string if
/// the map fails to descend.
pub fn pi0_induced(
    source: &Partition<Simplex>,
    target: &Partition<Simplex>,
    mut vertex_map: impl FnMut(&Simplex) -> Simplex,
) -> Result<Vec<usize>, String> {
    let mut out = Vec::with_capacity(source.len());
    for class in 0..source.len() {
        let mut image = None;
        for &i in &source.classes()[class] {
            let v = vertex_map(&source.elems()[i]);
            let c = target
                .class_of(&v)
                .ok_or_else(|| format!("image vertex {v:?} not in target"))?;
            match image {
                None => image = Some(c),
                Some(prev) if prev != c => {
                    return Err(format!(
                        "map does not descend to classes: class {class} hits {prev} and {c}"
                    ));
                }
                _ => {}
            }
        }
        out.push(image.expect("classes are nonempty"));
    }
    Ok(out)
}

/// Checks that `X_k ⇉ X_{k-1} -> X_{k-2}` (faces `d_i, d_{i+1}`, then `d_i`)
/// is a split coequalizer: the quotient of `X_{k-1}` by `d_i ~ d_{i+1}` maps
/// bijectively onto `X_{k-2}`, and the degeneracy section data satisfies the
/// split-fork equations.
pub fn verify_split_fork(x: &SSet, k: usize, i: usize) -> Result<(), String> {
    assert!(k >= 2 && i < k, "need k ≥ 2 and 0 ≤ i ≤ k-1");
    let ki = k as i32;
    let ii = i as i32;
    let lv_k = x.level(k);
    let lv_km1 = x.level(k - 1);
    let lv_km2 = x.level(k - 2);

    let d_i_top = coface(ki, ii).unwrap();
    let d_ip1_top = coface(ki, ii + 1).unwrap();
    let d_i_mid = coface(ki - 1, ii).unwrap();

    // (a) coequalizer: quotient of X_{k-1} by d_i(x) ~ d_{i+1}(x) is X_{k-2}
    let mut pos = HashMap::new();
    for (p, e) in lv_km1.iter().enumerate() {
        pos.insert(e.clone(), p);
    }
    let pairs: Vec<(usize, usize)> = lv_k
        .iter()
        .map(|e| (pos[&x.act(&d_i_top, e)], pos[&x.act(&d_ip1_top, e)]))
        .collect();
    let quot = Partition::coequalize(lv_km1.clone(), &pairs);
    let mut seen = HashMap::new();
    for class in 0..quot.len() {
        let mut image = None;
        for &p in &quot.classes()[class] {
            let v = x.act(&d_i_mid, &lv_km1[p]);
            match &image {
                None => image = Some(v),
                Some(prev) if *prev != v => {
                    return Err(format!(
                        "d_{i} not constant on class of {} at k={k}",
                        x.describe(&lv_km1[quot.classes()[class][0]])
                    ));
                }
                _ => {}
            }
        }
        let v = image.unwrap();
        if let Some(other) = seen.insert(v.clone(), class) {
            return Err(format!(
                "induced map not injective at k={k}, i={i}: classes {other} and {class} collide"
            ));
        }
    }
    for e in &lv_km2 {
        if !seen.contains_key(e) {
            return Err(format!(
                "induced map not surjective at k={k}, i={i}: {} missed",
                x.describe(e)
            ));
        }
    }

    // (b) split-fork equations with the section data s_{i+1}, s_i (i < k-1)
    // or s_{k-2}, s_{k-2} (i = k-1)
    let (t_op, s_op) = if i < k - 1 {
        (codegeneracy(ki - 1, ii + 1).unwrap(), codegeneracy(ki - 2, ii).unwrap())
    } else {
        (codegeneracy(ki - 1, ki - 2).unwrap(), codegeneracy(ki - 2, ki - 2).unwrap())
    };
    for e in &lv_km2 {
        let se = x.act(&s_op, e);
        if x.act(&d_i_mid, &se) != *e {
            return Err(format!("e∘s ≠ id at k={k}, i={i} on {}", x.describe(e)));
        }
    }
    for e in &lv_km1 {
        let te = x.act(&t_op, e);
        if i < k - 1 {
            if x.act(&d_ip1_top, &te) != *e {
                return Err(format!("g∘t ≠ id at k={k}, i={i} on {}", x.describe(e)));
            }
            let lhs = x.act(&d_i_top, &te);
            let rhs = x.act(&s_op, &x.act(&d_i_mid, e));
            if lhs != rhs {
                return Err(format!("f∘t ≠ s∘e at k={k}, i={i} on {}", x.describe(e)));
            }
        } else {
            if x.act(&d_i_top, &te) != *e {
                return Err(format!("f∘t ≠ id at k={k}, i={i} on {}", x.describe(e)));
            }
            let lhs = x.act(&d_ip1_top, &te);
            let rhs = x.act(&s_op, &x.act(&d_i_mid, e));
            if lhs != rhs {
                return Err(format!("g∘t ≠ s∘e at k={k}, i={i} on {}", x.describe(e)));
            }
        }
    }
    Ok(())
}
