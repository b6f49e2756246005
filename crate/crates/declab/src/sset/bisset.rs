//! Finite bisimplicial sets.
//!
//! Two presentations coexist behind one interface: a bigraded cell
//! presentation ([`BiCells`], with horizontal and vertical faces recorded in
//! blockwise EZ normal form), and a virtual presentation backed by a
//! simplicial set `X` with levels `(k, l) ↦ X_{k+1+l}` — this is the
//! décalage, whose structure maps are the ordinal sums of the two indices.

use std::collections::{BTreeMap, HashMap};

use crate::ordinal::{coface, enumerate_maps, enumerate_surjections, Ordinal, OrdinalMap};
use crate::sset::map::{Budget, BudgetExceeded};
use crate::sset::{SSet, Simplex};

/// Identifier of a nondegenerate bigraded cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiCellId {
    pub hdim: usize,
    pub vdim: usize,
    pub idx: usize,
}

/// A bisimplex in blockwise EZ normal form: a pair of surjective degeneracies
/// applied to a nondegenerate bigraded cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiSimplex {
    pub hdeg: OrdinalMap,
    pub vdeg: OrdinalMap,
    pub cell: BiCellId,
}

impl BiSimplex {
    pub fn of_cell(cell: BiCellId) -> BiSimplex {
        BiSimplex {
            hdeg: OrdinalMap::identity(Ordinal(cell.hdim as i32)),
            vdeg: OrdinalMap::identity(Ordinal(cell.vdim as i32)),
            cell,
        }
    }
}

/// An element of some level of a bisimplicial set; which variant occurs
/// depends on the presentation of the ambient object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BiElem {
    /// Element of a décalage level: a simplex of the backing simplicial set.
    Dec(Simplex),
    /// Element of a cell-presented level.
    Cell(BiSimplex),
}

/// Cell presentation of a bisimplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiCells {
    names: BTreeMap<(usize, usize), Vec<String>>,
    hfaces: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
    vfaces: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
}

impl BiCells {
    pub fn new(
        names: BTreeMap<(usize, usize), Vec<String>>,
        hfaces: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
        vfaces: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
    ) -> Result<BiCells, String> {
        let b = BiCells { names, hfaces, vfaces };
        b.validate()?;
        Ok(b)
    }

    pub(crate) fn new_unchecked(
        names: BTreeMap<(usize, usize), Vec<String>>,
        hfaces: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
        vfaces: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>>,
    ) -> BiCells {
        BiCells { names, hfaces, vfaces }
    }

    pub fn cell_count(&self, p: usize, q: usize) -> usize {
        self.names.get(&(p, q)).map_or(0, |v| v.len())
    }

    pub fn total_cells(&self) -> usize {
        self.names.values().map(|v| v.len()).sum()
    }

    pub fn cell_name(&self, c: BiCellId) -> &str {
        &self.names[&(c.hdim, c.vdim)][c.idx]
    }

    /// All bicells in presentation order: total degree, then horizontal
    /// degree, then index.
    pub fn all_cells(&self) -> Vec<BiCellId> {
        let mut keys: Vec<(usize, usize)> = self.names.keys().cloned().collect();
        keys.sort_by_key(|&(p, q)| (p + q, p));
        let mut out = Vec::new();
        for (p, q) in keys {
            for idx in 0..self.names[&(p, q)].len() {
                out.push(BiCellId { hdim: p, vdim: q, idx });
            }
        }
        out
    }

    pub fn max_bidegree(&self) -> (usize, usize) {
        let mut p_max = 0;
        let mut q_max = 0;
        for (&(p, q), v) in &self.names {
            if !v.is_empty() {
                p_max = p_max.max(p);
                q_max = q_max.max(q);
            }
        }
        (p_max, q_max)
    }

    pub fn hface(&self, c: BiCellId, i: usize) -> &BiSimplex {
        &self.hfaces[&(c.hdim, c.vdim)][c.idx][i]
    }

    pub fn vface(&self, c: BiCellId, i: usize) -> &BiSimplex {
        &self.vfaces[&(c.hdim, c.vdim)][c.idx][i]
    }

    /// Checks face-table shape and the three families of bisimplicial
    /// identities (horizontal-horizontal, vertical-vertical, mixed).
    pub fn validate(&self) -> Result<(), String> {
        for (&(p, q), cells) in &self.names {
            for idx in 0..cells.len() {
                let c = BiCellId { hdim: p, vdim: q, idx };
                if p >= 1 {
                    let hf = self
                        .hfaces
                        .get(&(p, q))
                        .and_then(|v| v.get(idx))
                        .ok_or_else(|| format!("missing hfaces for {}", self.cell_name(c)))?;
                    if hf.len() != p + 1 {
                        return Err(format!("cell {} has {} hfaces", self.cell_name(c), hf.len()));
                    }
                }
                if q >= 1 {
                    let vf = self
                        .vfaces
                        .get(&(p, q))
                        .and_then(|v| v.get(idx))
                        .ok_or_else(|| format!("missing vfaces for {}", self.cell_name(c)))?;
                    if vf.len() != q + 1 {
                        return Err(format!("cell {} has {} vfaces", self.cell_name(c), vf.len()));
                    }
                }
            }
        }
        for (&(p, q), cells) in &self.names {
            for idx in 0..cells.len() {
                let c = BiCellId { hdim: p, vdim: q, idx };
                let e = BiElem::Cell(BiSimplex::of_cell(c));
                let pi = p as i32;
                let qi = q as i32;
                let idh = OrdinalMap::identity(Ordinal(pi));
                let idv = OrdinalMap::identity(Ordinal(qi));
                // horizontal-horizontal (needs two face applications)
                if pi >= 2 {
                    for j in 1..=pi {
                        for i in 0..j {
                            let lhs = self.act(
                                &coface(pi - 1, i).unwrap(),
                                &idv,
                                &self.act(&coface(pi, j).unwrap(), &idv, &e),
                            );
                            let rhs = self.act(
                                &coface(pi - 1, j - 1).unwrap(),
                                &idv,
                                &self.act(&coface(pi, i).unwrap(), &idv, &e),
                            );
                            if lhs != rhs {
                                return Err(format!(
                                    "hh identity fails on {} at ({i},{j})",
                                    self.cell_name(c)
                                ));
                            }
                        }
                    }
                }
                // vertical-vertical
                if qi >= 2 {
                    for j in 1..=qi {
                        for i in 0..j {
                            let lhs = self.act(
                                &idh,
                                &coface(qi - 1, i).unwrap(),
                                &self.act(&idh, &coface(qi, j).unwrap(), &e),
                            );
                            let rhs = self.act(
                                &idh,
                                &coface(qi - 1, j - 1).unwrap(),
                                &self.act(&idh, &coface(qi, i).unwrap(), &e),
                            );
                            if lhs != rhs {
                                return Err(format!(
                                    "vv identity fails on {} at ({i},{j})",
                                    self.cell_name(c)
                                ));
                            }
                        }
                    }
                }
                // mixed commutation
                if pi >= 1 && qi >= 1 {
                    for i in 0..=pi {
                        for j in 0..=qi {
                            let lhs = self.act(
                                &coface(pi, i).unwrap(),
                                &OrdinalMap::identity(Ordinal(qi - 1)),
                                &self.act(&idh, &coface(qi, j).unwrap(), &e),
                            );
                            let rhs = self.act(
                                &OrdinalMap::identity(Ordinal(pi - 1)),
                                &coface(qi, j).unwrap(),
                                &self.act(&coface(pi, i).unwrap(), &idv, &e),
                            );
                            if lhs != rhs {
                                return Err(format!(
                                    "hv identity fails on {} at ({i},{j})",
                                    self.cell_name(c)
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn level(&self, k: usize, l: usize) -> Vec<BiElem> {
        let mut out = Vec::new();
        let mut keys: Vec<(usize, usize)> = self.names.keys().cloned().collect();
        keys.sort_by_key(|&(p, q)| (p + q, p));
        for (p, q) in keys {
            if p > k || q > l {
                continue;
            }
            for idx in 0..self.names[&(p, q)].len() {
                for hdeg in enumerate_surjections(Ordinal(k as i32), Ordinal(p as i32)) {
                    for vdeg in enumerate_surjections(Ordinal(l as i32), Ordinal(q as i32)) {
                        out.push(BiElem::Cell(BiSimplex {
                            hdeg: hdeg.clone(),
                            vdeg,
                            cell: BiCellId { hdim: p, vdim: q, idx },
                        }));
                    }
                }
            }
        }
        out
    }

    fn act(&self, hop: &OrdinalMap, vop: &OrdinalMap, e: &BiElem) -> BiElem {
        let bs = match e {
            BiElem::Cell(bs) => bs,
            BiElem::Dec(_) => panic!("cell action applied to a décalage element"),
        };
        let (hinj, hsurj) = bs.hdeg.compose(hop).expect("h level mismatch").ez_factor();
        let (vinj, vsurj) = bs.vdeg.compose(vop).expect("v level mismatch").ez_factor();
        // c · (hinj, vinj) in two injective phases
        let (h1, v1, c1) = self.push_h(&hinj, bs.cell);
        let (vinj2, vsurj2) = v1.compose(&vinj).unwrap().ez_factor();
        let (h2, v2, c2) = self.push_v(&vinj2, c1);
        let hdeg = h2.compose(&h1).unwrap().compose(&hsurj).unwrap();
        let vdeg = v2.compose(&vsurj2).unwrap().compose(&vsurj).unwrap();
        BiElem::Cell(BiSimplex { hdeg, vdeg, cell: c2 })
    }

    /// Normal form of `cell · (inj, id)` for injective `inj`.
    fn push_h(&self, inj: &OrdinalMap, cell: BiCellId) -> (OrdinalMap, OrdinalMap, BiCellId) {
        if inj.is_identity() {
            return (
                OrdinalMap::identity(inj.dom()),
                OrdinalMap::identity(Ordinal(cell.vdim as i32)),
                cell,
            );
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
        let f = self.hface(cell, missed as usize);
        let (inj1, surj1) = f.hdeg.compose(&reduced).unwrap().ez_factor();
        let (h, v, c) = self.push_h(&inj1, f.cell);
        (h.compose(&surj1).unwrap(), v.compose(&f.vdeg).unwrap(), c)
    }

    /// Normal form of `cell · (id, inj)` for injective `inj`.
    fn push_v(&self, inj: &OrdinalMap, cell: BiCellId) -> (OrdinalMap, OrdinalMap, BiCellId) {
        if inj.is_identity() {
            return (
                OrdinalMap::identity(Ordinal(cell.hdim as i32)),
                OrdinalMap::identity(inj.dom()),
                cell,
            );
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
        let f = self.vface(cell, missed as usize);
        let (inj1, surj1) = f.vdeg.compose(&reduced).unwrap().ez_factor();
        let (h, v, c) = self.push_v(&inj1, f.cell);
        (h.compose(&f.hdeg).unwrap(), v.compose(&surj1).unwrap(), c)
    }
}

/// A finite bisimplicial set: cell-presented, or the décalage of a
/// simplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiSSet {
    Cells(BiCells),
    Dec(SSet),
}

impl BiSSet {
    /// The set of `(k, l)`-bisimplices, in presentation order.
    pub fn level2(&self, k: usize, l: usize) -> Vec<BiElem> {
        match self {
            BiSSet::Cells(b) => b.level(k, l),
            BiSSet::Dec(x) => x.level(k + 1 + l).into_iter().map(BiElem::Dec).collect(),
        }
    }

    /// Structure map for a pair `(hop, vop)` of ordinal maps acting on an
    /// element of level `(cod(hop), cod(vop))`.
    pub fn act2(&self, hop: &OrdinalMap, vop: &OrdinalMap, e: &BiElem) -> BiElem {
        match (self, e) {
            (BiSSet::Cells(b), BiElem::Cell(_)) => b.act(hop, vop, e),
            (BiSSet::Dec(x), BiElem::Dec(s)) => {
                BiElem::Dec(x.act(&hop.ordinal_sum(vop), s))
            }
            _ => panic!("element does not belong to this bisimplicial set"),
        }
    }

    pub fn describe(&self, e: &BiElem) -> String {
        match (self, e) {
            (BiSSet::Dec(x), BiElem::Dec(s)) => format!("{}{}", x.cell_name(s.cell), s.deg),
            (BiSSet::Cells(b), BiElem::Cell(bs)) => {
                format!("{}[{};{}]", b.cell_name(bs.cell), bs.hdeg, bs.vdeg)
            }
            _ => format!("{e:?}"),
        }
    }
}

/// Total décalage: the bisimplicial set with `(Dec X)_{k,l} = X_{k+1+l}`,
/// acting through the ordinal sum of the two indices.
pub fn dec(x: &SSet) -> BiSSet {
    BiSSet::Dec(x.clone())
}

/// External product `X ⊠ Y` with `(X ⊠ Y)_{k,l} = X_k × Y_l`; bicells are
/// pairs of cells, faces act on one coordinate at a time.
pub fn external_product(x: &SSet, y: &SSet) -> BiSSet {
    let mut names = BTreeMap::new();
    let mut hfaces = BTreeMap::new();
    let mut vfaces = BTreeMap::new();
    let xtop = x.top_dim().map_or(0, |t| t + 1);
    let ytop = y.top_dim().map_or(0, |t| t + 1);
    for p in 0..xtop {
        for q in 0..ytop {
            let mut level_names = Vec::new();
            let mut level_h = Vec::new();
            let mut level_v = Vec::new();
            for xi in 0..x.cell_count(p) {
                for yi in 0..y.cell_count(q) {
                    level_names
                        .push(format!("{}|{}", x.names()[p][xi], y.names()[q][yi]));
                    if p >= 1 {
                        let hf = (0..=p)
                            .map(|i| {
                                let f = &x.face_table()[p][xi][i];
                                BiSimplex {
                                    hdeg: f.deg.clone(),
                                    vdeg: OrdinalMap::identity(Ordinal(q as i32)),
                                    cell: BiCellId {
                                        hdim: f.cell.dim,
                                        vdim: q,
                                        idx: f.cell.idx * y.cell_count(q) + yi,
                                    },
                                }
                            })
                            .collect();
                        level_h.push(hf);
                    }
                    if q >= 1 {
                        let vf = (0..=q)
                            .map(|i| {
                                let f = &y.face_table()[q][yi][i];
                                BiSimplex {
                                    hdeg: OrdinalMap::identity(Ordinal(p as i32)),
                                    vdeg: f.deg.clone(),
                                    cell: BiCellId {
                                        hdim: p,
                                        vdim: f.cell.dim,
                                        idx: xi * y.cell_count(f.cell.dim) + f.cell.idx,
                                    },
                                }
                            })
                            .collect();
                        level_v.push(vf);
                    }
                }
            }
            if !level_names.is_empty() {
                names.insert((p, q), level_names);
                if p >= 1 {
                    hfaces.insert((p, q), level_h);
                }
                if q >= 1 {
                    vfaces.insert((p, q), level_v);
                }
            }
        }
    }
    BiSSet::Cells(BiCells::new_unchecked(names, hfaces, vfaces))
}

/// Cell presentation of `Dec Δ[n]`: the nondegenerate `(k, l)`-bicells are
/// the monotone maps `[k+1+l] -> [n]` that are strictly increasing on each
/// block; the blockwise EZ normal form splits, compresses each block and
/// looks the compressed map up again.
#[derive(Clone, Debug)]
pub struct DecSimplexCells {
    pub n: usize,
    pub cells: BiCells,
    maps: BTreeMap<(usize, usize), Vec<OrdinalMap>>,
    index: HashMap<Vec<i32>, BiCellId>,
}

impl DecSimplexCells {
    pub fn new(n: usize) -> DecSimplexCells {
        let ni = n as i32;
        let mut maps: BTreeMap<(usize, usize), Vec<OrdinalMap>> = BTreeMap::new();
        let mut index = HashMap::new();
        let mut names = BTreeMap::new();
        for k in 0..=n {
            for l in 0..=n {
                let blockwise: Vec<OrdinalMap> =
                    enumerate_maps(Ordinal((k + 1 + l) as i32), Ordinal(ni))
                        .into_iter()
                        .filter(|f| {
                            let v = f.values();
                            let h_strict = (1..=k).all(|i| v[i] > v[i - 1]);
                            let v_strict = (k + 2..=k + 1 + l).all(|i| v[i] > v[i - 1]);
                            h_strict && v_strict
                        })
                        .collect();
                if blockwise.is_empty() {
                    continue;
                }
                for (idx, f) in blockwise.iter().enumerate() {
                    // tag by (k, values) so equal value lists at different
                    // splits stay distinct
                    let mut key = vec![k as i32];
                    key.extend_from_slice(f.values());
                    index.insert(key, BiCellId { hdim: k, vdim: l, idx });
                }
                names.insert(
                    (k, l),
                    blockwise
                        .iter()
                        .map(|f| {
                            let (a, b) = f.values().split_at(k + 1);
                            format!(
                                "{}|{}",
                                a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("."),
                                b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
                            )
                        })
                        .collect(),
                );
                maps.insert((k, l), blockwise);
            }
        }
        let mut partial =
            DecSimplexCells { n, cells: BiCells::new_unchecked(names, BTreeMap::new(), BTreeMap::new()), maps, index };
        let mut hfaces = BTreeMap::new();
        let mut vfaces = BTreeMap::new();
        for (&(k, l), level) in &partial.maps {
            if k >= 1 {
                let mut level_h = Vec::new();
                for f in level {
                    let hf = (0..=k)
                        .map(|i| {
                            let op = coface(k as i32, i as i32)
                                .unwrap()
                                .ordinal_sum(&OrdinalMap::identity(Ordinal(l as i32)));
                            partial.normal_form(&f.compose(&op).unwrap(), k - 1, l)
                        })
                        .collect();
                    level_h.push(hf);
                }
                hfaces.insert((k, l), level_h);
            }
            if l >= 1 {
                let mut level_v = Vec::new();
                for f in level {
                    let vf = (0..=l)
                        .map(|i| {
                            let op = OrdinalMap::identity(Ordinal(k as i32))
                                .ordinal_sum(&coface(l as i32, i as i32).unwrap());
                            partial.normal_form(&f.compose(&op).unwrap(), k, l - 1)
                        })
                        .collect();
                    level_v.push(vf);
                }
                vfaces.insert((k, l), level_v);
            }
        }
        partial.cells =
            BiCells::new_unchecked(partial.cells.names.clone(), hfaces, vfaces);
        partial
    }

    /// The monotone map underlying a bicell.
    pub fn map_of_cell(&self, c: BiCellId) -> &OrdinalMap {
        &self.maps[&(c.hdim, c.vdim)][c.idx]
    }

    /// Blockwise EZ normal form of a monotone map `[k+1+l] -> [n]` seen as a
    /// `(k, l)`-bisimplex of `Dec Δ[n]`.
    pub fn normal_form(&self, f: &OrdinalMap, k: usize, l: usize) -> BiSimplex {
        debug_assert_eq!(f.dom().0 as usize, k + 1 + l);
        let (first, second) = f.values().split_at(k + 1);
        let a = OrdinalMap::new(Ordinal(k as i32), f.cod(), first.to_vec()).unwrap();
        let b = OrdinalMap::new(Ordinal(l as i32), f.cod(), second.to_vec()).unwrap();
        let (ia, sa) = a.ez_factor();
        let (ib, sb) = b.ez_factor();
        let p = ia.dom().0 as usize;
        let mut key = vec![p as i32];
        key.extend_from_slice(ia.values());
        key.extend_from_slice(ib.values());
        let cell = *self
            .index
            .get(&key)
            .unwrap_or_else(|| panic!("blockwise-injective map missing from Dec Δ[{}]", self.n));
        BiSimplex { hdeg: sa, vdeg: sb, cell }
    }

    /// The bisimplicial set `Dec Δ[n]` in cell presentation.
    pub fn as_bisset(&self) -> BiSSet {
        BiSSet::Cells(self.cells.clone())
    }
}

/// A bisimplicial map from a cell presentation, as cellwise data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiSMap {
    assignment: BTreeMap<(usize, usize), Vec<BiElem>>,
}

impl BiSMap {
    pub fn from_assignment(assignment: BTreeMap<(usize, usize), Vec<BiElem>>) -> BiSMap {
        BiSMap { assignment }
    }

    pub fn image_of_cell(&self, c: BiCellId) -> &BiElem {
        &self.assignment[&(c.hdim, c.vdim)][c.idx]
    }

    /// Evaluates on an arbitrary bisimplex of the source presentation.
    pub fn apply(&self, target: &BiSSet, s: &BiSimplex) -> BiElem {
        target.act2(&s.hdeg, &s.vdeg, self.image_of_cell(s.cell))
    }

    /// Checks horizontal and vertical face compatibility.
    pub fn check(&self, source: &BiCells, target: &BiSSet) -> Result<(), String> {
        for c in source.all_cells() {
            let img = self.image_of_cell(c);
            let idh = OrdinalMap::identity(Ordinal(c.hdim as i32));
            let idv = OrdinalMap::identity(Ordinal(c.vdim as i32));
            for i in 0..=c.hdim {
                if c.hdim == 0 {
                    continue;
                }
                let lhs = target.act2(&coface(c.hdim as i32, i as i32).unwrap(), &idv, img);
                let rhs = self.apply(target, source.hface(c, i));
                if lhs != rhs {
                    return Err(format!(
                        "horizontal face {i} of {} does not commute",
                        source.cell_name(c)
                    ));
                }
            }
            for i in 0..=c.vdim {
                if c.vdim == 0 {
                    continue;
                }
                let lhs = target.act2(&idh, &coface(c.vdim as i32, i as i32).unwrap(), img);
                let rhs = self.apply(target, source.vface(c, i));
                if lhs != rhs {
                    return Err(format!(
                        "vertical face {i} of {} does not commute",
                        source.cell_name(c)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// All bisimplicial maps `a -> y`, enumerated by forward-checking
/// backtracking in total-degree order. Deterministic output ordering.
pub fn hom_bisset(a: &BiCells, y: &BiSSet) -> Vec<BiSMap> {
    hom_bisset_budgeted(a, y, Budget::default()).expect("default budget exhausted")
}

pub fn hom_bisset_budgeted(
    a: &BiCells,
    y: &BiSSet,
    budget: Budget,
) -> Result<Vec<BiSMap>, BudgetExceeded> {
    let cells = a.all_cells();
    if cells.is_empty() {
        return Ok(vec![BiSMap { assignment: BTreeMap::new() }]);
    }
    let pos_of = |c: BiCellId| cells.iter().position(|&d| d == c).unwrap();
    // (higher cell position, face index, horizontal?) per lower cell position
    let mut incident: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); cells.len()];
    for (pos, &c) in cells.iter().enumerate() {
        if c.hdim >= 1 {
            for i in 0..=c.hdim {
                incident[pos_of(a.hface(c, i).cell)].push((pos, i, true));
            }
        }
        if c.vdim >= 1 {
            for i in 0..=c.vdim {
                incident[pos_of(a.vface(c, i).cell)].push((pos, i, false));
            }
        }
    }
    let mut domains: Vec<Vec<BiElem>> = cells.iter().map(|c| y.level2(c.hdim, c.vdim)).collect();
    let mut chosen: Vec<BiElem> = Vec::new();
    let mut out = Vec::new();
    let mut visited = 0u64;
    bi_search(a, y, &cells, &incident, &mut domains, &mut chosen, &mut out, &mut visited, budget.max_nodes)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn bi_search(
    a: &BiCells,
    y: &BiSSet,
    cells: &[BiCellId],
    incident: &[Vec<(usize, usize, bool)>],
    domains: &mut Vec<Vec<BiElem>>,
    chosen: &mut Vec<BiElem>,
    out: &mut Vec<BiSMap>,
    visited: &mut u64,
    max_nodes: u64,
) -> Result<(), BudgetExceeded> {
    let pos = chosen.len();
    if pos == cells.len() {
        let mut assignment: BTreeMap<(usize, usize), Vec<BiElem>> = BTreeMap::new();
        for (c, img) in cells.iter().zip(chosen.iter()) {
            let entry = assignment.entry((c.hdim, c.vdim)).or_default();
            debug_assert_eq!(entry.len(), c.idx);
            entry.push(img.clone());
        }
        out.push(BiSMap { assignment });
        return Ok(());
    }
    let candidates = domains[pos].clone();
    for img in candidates {
        *visited += 1;
        if *visited > max_nodes {
            return Err(BudgetExceeded { visited: *visited });
        }
        let mut saved: Vec<(usize, Vec<BiElem>)> = Vec::new();
        let mut dead = false;
        for &(hi, i, horizontal) in &incident[pos] {
            let c = cells[hi];
            let face = if horizontal { a.hface(c, i) } else { a.vface(c, i) };
            let want = y.act2(&face.hdeg, &face.vdeg, &img);
            let (hop, vop) = if horizontal {
                (coface(c.hdim as i32, i as i32).unwrap(), OrdinalMap::identity(Ordinal(c.vdim as i32)))
            } else {
                (OrdinalMap::identity(Ordinal(c.hdim as i32)), coface(c.vdim as i32, i as i32).unwrap())
            };
            let filtered: Vec<BiElem> =
                domains[hi].iter().filter(|e| y.act2(&hop, &vop, e) == want).cloned().collect();
            let empty = filtered.is_empty();
            saved.push((hi, std::mem::replace(&mut domains[hi], filtered)));
            if empty {
                dead = true;
                break;
            }
        }
        if !dead {
            chosen.push(img);
            bi_search(a, y, cells, incident, domains, chosen, out, visited, max_nodes)?;
            chosen.pop();
        }
        for (hi, old) in saved.into_iter().rev() {
            domains[hi] = old;
        }
    }
    Ok(())
}
