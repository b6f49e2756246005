//! The ordinal-sum adjunctions.
//!
//! Décalage `Dec = σ*` restricts a simplicial set along the ordinal sum. Its
//! left adjoint `σ_!` is computed twice — once from the explicit
//! three-summand formula ([`sigma::SigmaShriek`]) and once as the composite
//! of augmentation left adjoints through the augmented simplex category
//! ([`sigma::SigmaComposite`]) — and its right adjoint `σ_* = T` by
//! corepresentability ([`total::Total`]). The checks in this module and its
//! submodules verify, at a finite cutoff, that the counit is the canonical
//! map `X × Δ[1] -> X` and the unit is the path-space map
//! `X -> X^{Δ[1]}`.

pub mod sigma;
pub mod total;

use std::collections::HashMap;

use serde::Serialize;

pub use crate::sset::bisset::{dec, external_product};

use crate::ordinal::{coface, generators_up_to, Ordinal, OrdinalMap};
use crate::sset::bisset::{BiElem, BiSSet};
use crate::sset::{pi0, Levelwise, Partition, SSet, Simplex};

/// A counterexample emitted by a failed check: at worst a failing
/// naturality square `(β, level, lhs, rhs)` with the ordinal map in flat
/// form, plus a human-readable note.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Witness {
    pub fn note(note: impl Into<String>) -> Witness {
        Witness { note: note.into(), beta: None, level: None, lhs: None, rhs: None }
    }

    pub fn square(beta: &OrdinalMap, level: usize, lhs: String, rhs: String) -> Witness {
        Witness {
            note: "naturality square failed".into(),
            beta: Some(beta.flat()),
            level: Some(level),
            lhs: Some(lhs),
            rhs: Some(rhs),
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.note)?;
        if let Some(beta) = &self.beta {
            write!(f, " beta={beta:?}")?;
        }
        if let Some(level) = self.level {
            write!(f, " level={level}")?;
        }
        if let (Some(lhs), Some(rhs)) = (&self.lhs, &self.rhs) {
            write!(f, " lhs={lhs} rhs={rhs}")?;
        }
        Ok(())
    }
}

/// A verified levelwise isomorphism between two simplicial objects up to a
/// cutoff: per-level bijections that commute with every coface and
/// codegeneracy between levels below the cutoff.
#[derive(Clone, Debug)]
pub struct NatIso {
    pub cutoff: usize,
    pub level_sizes: Vec<usize>,
    /// `pairs[n][i]` is the index in the target of the image of the `i`-th
    /// source element of level `n`.
    pub pairs: Vec<Vec<usize>>,
}

/// Checks that `f` is a levelwise bijection commuting with all generators up
/// to `cutoff`.
pub fn check_nat_iso<A: Levelwise, B: Levelwise>(
    a: &A,
    b: &B,
    f: impl Fn(usize, &A::Elem) -> B::Elem,
    cutoff: usize,
) -> Result<NatIso, Witness> {
    let mut level_sizes = Vec::new();
    let mut pairs = Vec::new();
    for n in 0..=cutoff {
        let la = a.elems(n);
        let lb = b.elems(n);
        if la.len() != lb.len() {
            return Err(Witness {
                note: format!("level {n} sizes differ: {} vs {}", la.len(), lb.len()),
                beta: None,
                level: Some(n),
                lhs: None,
                rhs: None,
            });
        }
        let index: HashMap<&B::Elem, usize> = lb.iter().zip(0..).collect();
        let mut seen = vec![false; lb.len()];
        let mut level_pairs = Vec::with_capacity(la.len());
        for e in &la {
            let img = f(n, e);
            let Some(&i) = index.get(&img) else {
                return Err(Witness {
                    note: format!("image of {} not in target level {n}", a.describe(e)),
                    beta: None,
                    level: Some(n),
                    lhs: Some(a.describe(e)),
                    rhs: None,
                });
            };
            if seen[i] {
                return Err(Witness {
                    note: format!("map not injective at level {n}"),
                    beta: None,
                    level: Some(n),
                    lhs: Some(a.describe(e)),
                    rhs: Some(b.describe(&img)),
                });
            }
            seen[i] = true;
            level_pairs.push(i);
        }
        level_sizes.push(la.len());
        pairs.push(level_pairs);
    }
    check_squares(a, b, &f, cutoff)?;
    Ok(NatIso { cutoff, level_sizes, pairs })
}

/// Checks only the naturality squares (no bijectivity): for every generator
/// `g : [l] -> [k]` with `l, k ≤ cutoff` and every element `e` of level `k`,
/// `f(l, e·g) = f(k, e)·g`.
pub fn check_squares<A: Levelwise, B: Levelwise>(
    a: &A,
    b: &B,
    f: &impl Fn(usize, &A::Elem) -> B::Elem,
    cutoff: usize,
) -> Result<(), Witness> {
    for g in generators_up_to(cutoff) {
        let k = g.cod().0 as usize;
        let l = g.dom().0 as usize;
        for e in a.elems(k) {
            let lhs = f(l, &a.act_elem(&g, &e));
            let rhs = b.act_elem(&g, &f(k, &e));
            if lhs != rhs {
                return Err(Witness::square(&g, k, b.describe(&lhs), b.describe(&rhs)));
            }
        }
    }
    Ok(())
}

/// An augmented simplicial set: a simplicial set together with the universal
/// augmentation onto its set of connected components.
#[derive(Clone, Debug)]
pub struct ASSet {
    pub body: SSet,
    pub components: Partition<Simplex>,
}

/// Left adjoint of the restriction along `Δ ⊂ Δ_a`: augment by `π₀`, the
/// augmentation being the quotient map `X_0 -> π₀(X)`.
pub fn iota_shriek(x: &SSet) -> ASSet {
    ASSet { body: x.clone(), components: pi0(x) }
}

impl ASSet {
    /// The augmentation `X_0 -> X_{-1}`.
    pub fn augmentation(&self, v: &Simplex) -> usize {
        self.components.class_of(v).expect("vertex not in carrier")
    }

    /// The augmentation coequalizes the two face maps `X_1 ⇉ X_0`.
    pub fn validate(&self) -> Result<(), Witness> {
        let d0 = coface(1, 0).unwrap();
        let d1 = coface(1, 1).unwrap();
        for e in self.body.level(1) {
            let a = self.augmentation(&self.body.act(&d0, &e));
            let b = self.augmentation(&self.body.act(&d1, &e));
            if a != b {
                return Err(Witness::note(format!(
                    "augmentation does not coequalize faces on {}",
                    self.body.describe(&e)
                )));
            }
        }
        Ok(())
    }
}

/// An element of an augmented bisimplicial set: a body element, a row/column
/// `π₀` class, or the corner `π₀π₀` class — classes are carried by their
/// canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AElem {
    Body(BiElem),
    /// Class in `π₀(Y_{row,-})`, represented by its canonical element of
    /// `Y_{row,0}`.
    Row { row: usize, rep: BiElem },
    /// Class in `π₀(Y_{-,col})`, represented by its canonical element of
    /// `Y_{0,col}`.
    Col { col: usize, rep: BiElem },
    /// Class in `π₀π₀(Y)`, represented by its canonical element of `Y_{0,0}`.
    Corner { rep: BiElem },
}

/// The left adjoint of restriction along `Δ×Δ ⊂ Δ_a×Δ_a`, computed as two
/// one-sided augmentation stages: rows are augmented by vertical `π₀`,
/// columns by horizontal `π₀`, and the corner by `π₀` applied twice.
#[derive(Debug)]
pub struct ABiSSet<'a> {
    pub body: &'a BiSSet,
    max: usize,
    rows: Vec<Partition<BiElem>>,
    cols: Vec<Partition<BiElem>>,
    corner: Partition<BiElem>,
}

/// `π₀` of the simplicial object `l ↦ Y_{i,l}` (a row, `horizontal = false`)
/// or `k ↦ Y_{k,j}` (a column, `horizontal = true`).
pub(crate) fn line_pi0(y: &BiSSet, fixed: usize, horizontal: bool) -> Partition<BiElem> {
    let (zero, one) = if horizontal {
        (y.level2(0, fixed), y.level2(1, fixed))
    } else {
        (y.level2(fixed, 0), y.level2(fixed, 1))
    };
    let mut pos = HashMap::new();
    for (i, e) in zero.iter().enumerate() {
        pos.insert(e.clone(), i);
    }
    let d0 = coface(1, 0).unwrap();
    let d1 = coface(1, 1).unwrap();
    let idf = OrdinalMap::identity(Ordinal(fixed as i32));
    let pairs: Vec<(usize, usize)> = one
        .iter()
        .map(|e| {
            let (a, b) = if horizontal {
                (y.act2(&d0, &idf, e), y.act2(&d1, &idf, e))
            } else {
                (y.act2(&idf, &d0, e), y.act2(&idf, &d1, e))
            };
            (pos[&a], pos[&b])
        })
        .collect();
    Partition::coequalize(zero, &pairs)
}

/// Quotients the classes of `inner` (a partition of `Y_{0,0}`) by the
/// relations induced by the faces in the other direction, and flattens back
/// to a partition of `Y_{0,0}`.
fn nested_pi0(y: &BiSSet, inner: &Partition<BiElem>, outer_horizontal: bool) -> Vec<usize> {
    let one = if outer_horizontal { y.level2(1, 0) } else { y.level2(0, 1) };
    let d0 = coface(1, 0).unwrap();
    let d1 = coface(1, 1).unwrap();
    let id0 = OrdinalMap::identity(Ordinal(0));
    let pairs: Vec<(usize, usize)> = one
        .iter()
        .map(|e| {
            let (a, b) = if outer_horizontal {
                (y.act2(&d0, &id0, e), y.act2(&d1, &id0, e))
            } else {
                (y.act2(&id0, &d0, e), y.act2(&id0, &d1, e))
            };
            (inner.class_of(&a).unwrap(), inner.class_of(&b).unwrap())
        })
        .collect();
    let classes: Vec<usize> = (0..inner.len()).collect();
    let outer = Partition::coequalize(classes, &pairs);
    inner
        .elems()
        .iter()
        .map(|e| outer.class_of(&inner.class_of(e).unwrap()).unwrap())
        .collect()
}

/// Augments a bisimplicial set by row, column and corner components,
/// precomputing the quotients for all indices up to `max`.
pub fn iota2_shriek(y: &BiSSet, max: usize) -> ABiSSet<'_> {
    let rows: Vec<Partition<BiElem>> = (0..=max).map(|i| line_pi0(y, i, false)).collect();
    let cols: Vec<Partition<BiElem>> = (0..=max).map(|j| line_pi0(y, j, true)).collect();
    // corner: rows first, then π₀ of the induced simplicial object of row
    // components, flattened back to a partition of Y_{0,0}
    let flat = nested_pi0(y, &rows[0], true);
    let zero = y.level2(0, 0);
    let mut pairs = Vec::new();
    for (i, &c) in flat.iter().enumerate() {
        if let Some(first) = flat.iter().position(|&d| d == c) {
            if first != i {
                pairs.push((first, i));
            }
        }
    }
    let corner = Partition::coequalize(zero, &pairs);
    ABiSSet { body: y, max, rows, cols, corner }
}

impl ABiSSet<'_> {
    pub fn max(&self) -> usize {
        self.max
    }

    pub fn row(&self, i: usize) -> &Partition<BiElem> {
        &self.rows[i]
    }

    pub fn col(&self, j: usize) -> &Partition<BiElem> {
        &self.cols[j]
    }

    pub fn corner(&self) -> &Partition<BiElem> {
        &self.corner
    }

    /// Elements of level `(i, j)`, where either index may be `-1`.
    pub fn level_a(&self, i: i32, j: i32) -> Vec<AElem> {
        match (i, j) {
            (-1, -1) => self.corner.reps().into_iter().map(|rep| AElem::Corner { rep }).collect(),
            (-1, j) => self.cols[j as usize]
                .reps()
                .into_iter()
                .map(|rep| AElem::Col { col: j as usize, rep })
                .collect(),
            (i, -1) => self.rows[i as usize]
                .reps()
                .into_iter()
                .map(|rep| AElem::Row { row: i as usize, rep })
                .collect(),
            (i, j) => self
                .body
                .level2(i as usize, j as usize)
                .into_iter()
                .map(AElem::Body)
                .collect(),
        }
    }

    fn to_corner(&self, e: &BiElem) -> AElem {
        AElem::Corner { rep: self.corner.canonical(e).unwrap().clone() }
    }

    /// Structure map of the augmented bisimplicial set for a pair of maps in
    /// the augmented simplex category, acting on an element of level
    /// `(cod(b1), cod(b2))`.
    pub fn act_a(&self, b1: &OrdinalMap, b2: &OrdinalMap, e: &AElem) -> AElem {
        let id0 = OrdinalMap::identity(Ordinal(0));
        match e {
            AElem::Body(be) => {
                let (i, ip) = (b1.cod(), b2.cod());
                match (b1.dom().is_empty(), b2.dom().is_empty()) {
                    (false, false) => AElem::Body(self.body.act2(b1, b2, be)),
                    (true, false) => {
                        // the map [-1] -> [i] factors through any vertex
                        let v = OrdinalMap::vertex(0, i).unwrap();
                        let img = self.body.act2(&v, b2, be);
                        let col = b2.dom().0 as usize;
                        AElem::Col { col, rep: self.cols[col].canonical(&img).unwrap().clone() }
                    }
                    (false, true) => {
                        let v = OrdinalMap::vertex(0, ip).unwrap();
                        let img = self.body.act2(b1, &v, be);
                        let row = b1.dom().0 as usize;
                        AElem::Row { row, rep: self.rows[row].canonical(&img).unwrap().clone() }
                    }
                    (true, true) => {
                        let vi = OrdinalMap::vertex(0, i).unwrap();
                        let vip = OrdinalMap::vertex(0, ip).unwrap();
                        self.to_corner(&self.body.act2(&vi, &vip, be))
                    }
                }
            }
            AElem::Col { col, rep } => {
                debug_assert!(b1.cod().is_empty() && b1.dom().is_empty());
                if b2.dom().is_empty() {
                    let v = OrdinalMap::vertex(0, Ordinal(*col as i32)).unwrap();
                    self.to_corner(&self.body.act2(&id0, &v, rep))
                } else {
                    let img = self.body.act2(&id0, b2, rep);
                    let new_col = b2.dom().0 as usize;
                    AElem::Col {
                        col: new_col,
                        rep: self.cols[new_col].canonical(&img).unwrap().clone(),
                    }
                }
            }
            AElem::Row { row, rep } => {
                debug_assert!(b2.cod().is_empty() && b2.dom().is_empty());
                if b1.dom().is_empty() {
                    let v = OrdinalMap::vertex(0, Ordinal(*row as i32)).unwrap();
                    self.to_corner(&self.body.act2(&v, &id0, rep))
                } else {
                    let img = self.body.act2(b1, &id0, rep);
                    let new_row = b1.dom().0 as usize;
                    AElem::Row {
                        row: new_row,
                        rep: self.rows[new_row].canonical(&img).unwrap().clone(),
                    }
                }
            }
            AElem::Corner { .. } => {
                debug_assert!(b1.dom().is_empty() && b2.dom().is_empty());
                e.clone()
            }
        }
    }

    /// Augmentation laws, checked rather than assumed: every augmentation
    /// coequalizes the adjacent pair of face maps, the induced maps are
    /// independent of the chosen representative and vertex, and the two
    /// iterated-`π₀` routes to the corner agree.
    pub fn validate(&self) -> Result<(), Witness> {
        let y = self.body;
        let d0 = coface(1, 0).unwrap();
        let d1 = coface(1, 1).unwrap();
        let id0 = OrdinalMap::identity(Ordinal(0));
        for i in 0..=self.max {
            let idf = OrdinalMap::identity(Ordinal(i as i32));
            for e in y.level2(i, 1) {
                let a = self.rows[i].class_of(&y.act2(&idf, &d0, &e));
                let b = self.rows[i].class_of(&y.act2(&idf, &d1, &e));
                if a != b {
                    return Err(Witness::note(format!(
                        "row {i} augmentation fails to coequalize on {}",
                        y.describe(&e)
                    )));
                }
            }
            for e in y.level2(1, i) {
                let a = self.cols[i].class_of(&y.act2(&d0, &idf, &e));
                let b = self.cols[i].class_of(&y.act2(&d1, &idf, &e));
                if a != b {
                    return Err(Witness::note(format!(
                        "column {i} augmentation fails to coequalize on {}",
                        y.describe(&e)
                    )));
                }
            }
        }
        // vertex independence of the corner maps on Y_{0,0} neighbors
        for e in y.level2(0, 1) {
            let a = self.corner.class_of(&y.act2(&id0, &d0, &e));
            let b = self.corner.class_of(&y.act2(&id0, &d1, &e));
            if a != b {
                return Err(Witness::note("corner not constant along vertical edges"));
            }
        }
        for e in y.level2(1, 0) {
            let a = self.corner.class_of(&y.act2(&d0, &id0, &e));
            let b = self.corner.class_of(&y.act2(&d1, &id0, &e));
            if a != b {
                return Err(Witness::note("corner not constant along horizontal edges"));
            }
        }
        // the two composites to the corner agree
        let via_rows = nested_pi0(y, &self.rows[0], true);
        let via_cols = nested_pi0(y, &self.cols[0], false);
        let zero = y.level2(0, 0);
        for i in 0..zero.len() {
            for j in 0..zero.len() {
                let same_rows = via_rows[i] == via_rows[j];
                let same_cols = via_cols[i] == via_cols[j];
                let same_stored = self.corner.class_of(&zero[i]) == self.corner.class_of(&zero[j]);
                if same_rows != same_cols || same_rows != same_stored {
                    return Err(Witness::note(format!(
                        "corner composites disagree on {} vs {}",
                        y.describe(&zero[i]),
                        y.describe(&zero[j])
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Verifies `π₀((σ*X)_{-,k}) ≅ X_k ≅ π₀((σ*X)_{k,-})` for all `k ≤ k_max`,
/// including naturality in `k` over all generators below the cutoff.
///
/// The column coequalizer is `X_{k+2} ⇉ X_{k+1} -> X_k` along `d_0, d_1`
/// and `d_0`; the row coequalizer uses the two top faces and `d_{k+1}`.
pub fn check_pi0_identification(x: &SSet, k_max: usize) -> Result<(), Witness> {
    let quotient_side = |k: usize, row: bool| -> Result<Partition<Simplex>, Witness> {
        let ki = k as i32;
        let (f0, f1, e) = if row {
            (coface(ki + 2, ki + 1).unwrap(), coface(ki + 2, ki + 2).unwrap(), coface(ki + 1, ki + 1).unwrap())
        } else {
            (coface(ki + 2, 0).unwrap(), coface(ki + 2, 1).unwrap(), coface(ki + 1, 0).unwrap())
        };
        let mid = x.level(k + 1);
        let mut pos = HashMap::new();
        for (i, s) in mid.iter().enumerate() {
            pos.insert(s.clone(), i);
        }
        let pairs: Vec<(usize, usize)> = x
            .level(k + 2)
            .iter()
            .map(|s| (pos[&x.act(&f0, s)], pos[&x.act(&f1, s)]))
            .collect();
        let quot = Partition::coequalize(mid, &pairs);
        // induced map to X_k must be bijective
        let mut seen: HashMap<Simplex, usize> = HashMap::new();
        for class in 0..quot.len() {
            let mut image = None;
            for &p in &quot.classes()[class] {
                let v = x.act(&e, &quot.elems()[p]);
                match &image {
                    None => image = Some(v),
                    Some(prev) if *prev != v => {
                        return Err(Witness::note(format!(
                            "coequalizer map not constant on a class at k={k} (row={row})"
                        )));
                    }
                    _ => {}
                }
            }
            if seen.insert(image.unwrap(), class).is_some() {
                return Err(Witness::note(format!(
                    "identification not injective at k={k} (row={row})"
                )));
            }
        }
        for s in x.level(k) {
            if !seen.contains_key(&s) {
                return Err(Witness::note(format!(
                    "identification not surjective at k={k} (row={row}): {} missed",
                    x.describe(&s)
                )));
            }
        }
        Ok(quot)
    };

    let mut col_quots = Vec::new();
    let mut row_quots = Vec::new();
    for k in 0..=k_max {
        col_quots.push(quotient_side(k, false)?);
        row_quots.push(quotient_side(k, true)?);
    }

    // naturality in k: for β : [l] -> [k], the square with the induced map on
    // the quotient and the action on X commutes
    for g in generators_up_to(k_max) {
        let k = g.cod().0 as usize;
        let l = g.dom().0 as usize;
        let col_op = OrdinalMap::identity(Ordinal(0)).ordinal_sum(&g);
        let row_op = g.ordinal_sum(&OrdinalMap::identity(Ordinal(0)));
        let e_col_l = coface(l as i32 + 1, 0).unwrap();
        let e_col_k = coface(k as i32 + 1, 0).unwrap();
        let e_row_l = coface(l as i32 + 1, l as i32 + 1).unwrap();
        let e_row_k = coface(k as i32 + 1, k as i32 + 1).unwrap();
        for y in col_quots[k].elems() {
            let lhs = x.act(&e_col_l, &x.act(&col_op, y));
            let rhs = x.act(&g, &x.act(&e_col_k, y));
            if lhs != rhs {
                return Err(Witness::square(&g, k, x.describe(&lhs), x.describe(&rhs)));
            }
        }
        for y in row_quots[k].elems() {
            let lhs = x.act(&e_row_l, &x.act(&row_op, y));
            let rhs = x.act(&g, &x.act(&e_row_k, y));
            if lhs != rhs {
                return Err(Witness::square(&g, k, x.describe(&lhs), x.describe(&rhs)));
            }
        }
    }
    Ok(())
}

/// Extracts the cell presentation of a levelwise simplicial object whose
/// nondegenerate elements vanish above `max_dim`. Returns the presentation
/// and, per dimension, the elements its cells stand for.
pub fn cellize<L: Levelwise>(obj: &L, max_dim: usize) -> (SSet, Vec<Vec<L::Elem>>) {
    use crate::ordinal::{codegeneracy, enumerate_surjections};
    let mut nondeg: Vec<Vec<L::Elem>> = Vec::new();
    for n in 0..=max_dim {
        let level = obj.elems(n);
        let mut degenerate = std::collections::HashSet::new();
        if n >= 1 {
            for e in obj.elems(n - 1) {
                for i in 0..n as i32 {
                    degenerate.insert(obj.act_elem(&codegeneracy(n as i32 - 1, i).unwrap(), &e));
                }
            }
        }
        nondeg.push(level.into_iter().filter(|e| !degenerate.contains(e)).collect());
    }
    let names: Vec<Vec<String>> = nondeg
        .iter()
        .enumerate()
        .map(|(n, v)| (0..v.len()).map(|i| format!("e{n}_{i}")).collect())
        .collect();
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); nondeg.len()];
    for n in 1..=max_dim {
        for e in &nondeg[n] {
            let mut cell_faces = Vec::with_capacity(n + 1);
            for i in 0..=n as i32 {
                let fe = obj.act_elem(&coface(n as i32, i).unwrap(), e);
                // EZ expression of fe over the extracted cells
                let mut found = None;
                'search: for m in (0..n).rev() {
                    for (idx, u) in nondeg[m].iter().enumerate() {
                        for eta in
                            enumerate_surjections(Ordinal(n as i32 - 1), Ordinal(m as i32))
                        {
                            if obj.act_elem(&eta, u) == fe {
                                found = Some(Simplex {
                                    deg: eta,
                                    cell: crate::sset::CellId { dim: m, idx },
                                });
                                break 'search;
                            }
                        }
                    }
                }
                cell_faces.push(found.expect("face has no EZ expression: object is not simplicial"));
            }
            faces[n].push(cell_faces);
        }
    }
    let sset = SSet::new(names, faces).expect("cellized object fails validation");
    (sset, nondeg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::build::{boundary, quotient, simplex};
    use crate::sset::bisset::dec;

    #[test]
    fn iota_shriek_carriers() {
        assert_eq!(iota_shriek(&simplex(2)).components.len(), 1);
        assert_eq!(iota_shriek(&boundary(1)).components.len(), 2);
        let a = iota_shriek(&simplex(1));
        a.validate().unwrap();
        // both endpoints of the edge land in the same class
        let d0 = coface(1, 0).unwrap();
        let d1 = coface(1, 1).unwrap();
        let e = crate::sset::Simplex::of_cell(crate::sset::CellId { dim: 1, idx: 0 });
        assert_eq!(
            a.augmentation(&a.body.act(&d0, &e)),
            a.augmentation(&a.body.act(&d1, &e))
        );
    }

    #[test]
    fn iota2_shriek_point() {
        let y = dec(&simplex(0));
        let a = iota2_shriek(&y, 3);
        a.validate().unwrap();
        for i in -1..=3i32 {
            for j in -1..=3i32 {
                if i == -1 || j == -1 {
                    assert_eq!(a.level_a(i, j).len(), 1, "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn iota2_shriek_discrete_column() {
        // ∂Δ[1] ⊠ Δ[0]: columns are two isolated points, so every column
        // class set has 2 elements
        let y = external_product(&boundary(1), &simplex(0));
        let a = iota2_shriek(&y, 3);
        a.validate().unwrap();
        for j in 0..=3i32 {
            assert_eq!(a.level_a(-1, j).len(), 2);
        }
        assert_eq!(a.level_a(-1, -1).len(), 2);
    }

    #[test]
    fn iota2_shriek_dec_corner_connected() {
        for n in 0..=2 {
            let y = dec(&simplex(n));
            let a = iota2_shriek(&y, 3);
            a.validate().unwrap();
            assert_eq!(a.level_a(-1, -1).len(), 1, "n={n}");
        }
    }

    #[test]
    fn pi0_identification_on_corpus() {
        check_pi0_identification(&simplex(0), 2).unwrap();
        check_pi0_identification(&simplex(2), 2).unwrap();
        check_pi0_identification(&quotient(&simplex(1), &boundary(1)).unwrap(), 2).unwrap();
    }

    #[test]
    fn pi0_identification_counts() {
        // |Δ[2]_1| = 6: the column quotient at k = 1 has exactly 6 classes
        let x = simplex(2);
        let mid = x.level(2);
        let mut pos = std::collections::HashMap::new();
        for (i, s) in mid.iter().enumerate() {
            pos.insert(s.clone(), i);
        }
        let f0 = coface(3, 0).unwrap();
        let f1 = coface(3, 1).unwrap();
        let pairs: Vec<(usize, usize)> =
            x.level(3).iter().map(|s| (pos[&x.act(&f0, s)], pos[&x.act(&f1, s)])).collect();
        let quot = Partition::coequalize(mid, &pairs);
        assert_eq!(quot.len(), 6);
        assert_eq!(x.level(1).len(), 6);
    }

    #[test]
    fn cellize_recovers_simplex() {
        let x = simplex(2);
        let (cellized, elems) = cellize(&x, 2);
        assert_eq!(cellized.cell_count(0), 3);
        assert_eq!(cellized.cell_count(1), 3);
        assert_eq!(cellized.cell_count(2), 1);
        assert!(elems[2][0].is_nondegenerate());
    }
}
