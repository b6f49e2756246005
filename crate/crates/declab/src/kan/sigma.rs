//! The left adjoint of décalage, computed along two independent routes.
//!
//! [`SigmaShriek`] implements the explicit three-summand description of
//! `(σ_!Y)_k = π₀(Y_{-,k}) ⊔ ∐_{i=0}^{k-1} Y_{i,k-i-1} ⊔ π₀(Y_{k,-})`,
//! dispatching the structure maps on the unique block splitting. The summand
//! routing cases are: interior-to-interior through the split pair,
//! interior-to-`π₀` when the splitting degenerates at either end, and
//! `π₀`-to-`π₀` through the induced maps.
//!
//! [`SigmaComposite`] computes the same functor as
//! `ι* ∘ (σ_a)_! ∘ (ι×ι)_!` through the augmented simplex category, which is
//! an entirely different code path; the two must agree levelwise through the
//! identity on summands, and that agreement is one of the main checks.



use crate::kan::{ABiSSet, AElem, Witness};
use crate::ordinal::{coface, codegeneracy, Ordinal, OrdinalMap};
use crate::sset::bisset::{BiElem, BiSSet};
use crate::sset::build::Product;
use crate::sset::{CellId, Levelwise, Partition, SSet, Simplex};

/// An element of `(σ_!Y)_k`: a column-`π₀` class (summand `i = -1`), an
/// interior element (summand `0 ≤ i ≤ k-1`), or a row-`π₀` class (summand
/// `i = k`). Classes are carried by their canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaElem {
    /// Class in `π₀(Y_{-,k})`, represented canonically in `Y_{0,k}`.
    Col(BiElem),
    /// Element of `Y_{i,k-i-1}` tagged with its summand index `i`.
    Int(usize, BiElem),
    /// Class in `π₀(Y_{k,-})`, represented canonically in `Y_{k,0}`.
    Row(BiElem),
}

/// `σ_!Y` by the explicit formula, with levels available up to `max`.
#[derive(Debug)]
pub struct SigmaShriek<'a> {
    pub y: &'a BiSSet,
    max: usize,
    cols: Vec<Partition<BiElem>>,
    rows: Vec<Partition<BiElem>>,
}

impl<'a> SigmaShriek<'a> {
    pub fn new(y: &'a BiSSet, max: usize) -> SigmaShriek<'a> {
        let cols = (0..=max).map(|k| super::line_pi0(y, k, true)).collect();
        let rows = (0..=max).map(|k| super::line_pi0(y, k, false)).collect();
        SigmaShriek { y, max, cols, rows }
    }

    pub fn max(&self) -> usize {
        self.max
    }

    pub fn col_quot(&self, k: usize) -> &Partition<BiElem> {
        &self.cols[k]
    }

    pub fn row_quot(&self, k: usize) -> &Partition<BiElem> {
        &self.rows[k]
    }
}

impl Levelwise for SigmaShriek<'_> {
    type Elem = SigmaElem;

    fn elems(&self, k: usize) -> Vec<SigmaElem> {
        let mut out: Vec<SigmaElem> =
            self.cols[k].reps().into_iter().map(SigmaElem::Col).collect();
        for i in 0..k {
            for e in self.y.level2(i, k - i - 1) {
                out.push(SigmaElem::Int(i, e));
            }
        }
        out.extend(self.rows[k].reps().into_iter().map(SigmaElem::Row));
        out
    }

    fn act_elem(&self, op: &OrdinalMap, e: &SigmaElem) -> SigmaElem {
        let l = op.dom().0 as usize;
        let id0 = OrdinalMap::identity(Ordinal(0));
        match e {
            SigmaElem::Col(rep) => {
                let img = self.y.act2(&id0, op, rep);
                SigmaElem::Col(self.cols[l].canonical(&img).unwrap().clone())
            }
            SigmaElem::Row(rep) => {
                let img = self.y.act2(op, &id0, rep);
                SigmaElem::Row(self.rows[l].canonical(&img).unwrap().clone())
            }
            SigmaElem::Int(i, be) => {
                let (j, left, right) = op.split_at(*i as i32).unwrap();
                if j == -1 {
                    // lands in the column π₀ summand through any vertex
                    let v = OrdinalMap::vertex(0, Ordinal(*i as i32)).unwrap();
                    let img = self.y.act2(&v, &right, be);
                    SigmaElem::Col(self.cols[l].canonical(&img).unwrap().clone())
                } else if j == l as i32 {
                    // lands in the row π₀ summand
                    let v = OrdinalMap::vertex(0, right.cod()).unwrap();
                    let img = self.y.act2(&left, &v, be);
                    SigmaElem::Row(self.rows[l].canonical(&img).unwrap().clone())
                } else {
                    SigmaElem::Int(j as usize, self.y.act2(&left, &right, be))
                }
            }
        }
    }

    fn describe(&self, e: &SigmaElem) -> String {
        match e {
            SigmaElem::Col(r) => format!("col[{}]", self.y.describe(r)),
            SigmaElem::Int(i, r) => format!("int{}[{}]", i, self.y.describe(r)),
            SigmaElem::Row(r) => format!("row[{}]", self.y.describe(r)),
        }
    }
}

/// `σ_!Y` as `ι* (σ_a)_! (ι×ι)_! Y`: levels are tagged disjoint unions over
/// the summand index `-1 ≤ i ≤ k`, and every structure map routes through
/// the block splitting in the augmented category.
#[derive(Debug)]
pub struct SigmaComposite<'a> {
    pub augmented: &'a ABiSSet<'a>,
}

impl SigmaComposite<'_> {
    /// The carrier `((σ_a)_! A)_{-1} = A_{-1,-1}`.
    pub fn carrier(&self) -> Vec<AElem> {
        self.augmented.level_a(-1, -1)
    }

    /// The augmentation: action of the unique map `[-1] -> [0]` on level 0.
    pub fn augmentation(&self, e: &(i32, AElem)) -> AElem {
        let empty_to_zero = OrdinalMap::empty_to(Ordinal(0));
        let (j, left, right) = empty_to_zero.split_at(e.0).unwrap();
        debug_assert_eq!(j, -1);
        self.augmented.act_a(&left, &right, &e.1)
    }
}

impl Levelwise for SigmaComposite<'_> {
    type Elem = (i32, AElem);

    fn elems(&self, k: usize) -> Vec<(i32, AElem)> {
        let mut out = Vec::new();
        for i in -1..=k as i32 {
            for e in self.augmented.level_a(i, k as i32 - i - 1) {
                out.push((i, e));
            }
        }
        out
    }

    fn act_elem(&self, op: &OrdinalMap, e: &(i32, AElem)) -> (i32, AElem) {
        let (j, left, right) = op.split_at(e.0).unwrap();
        (j, self.augmented.act_a(&left, &right, &e.1))
    }
}

/// The identity-on-summands comparison between the two routes: for every
/// level `≤ cutoff` it is a bijection commuting with every generator.
pub fn two_route_check(y: &BiSSet, cutoff: usize) -> Result<(), Witness> {
    let direct = SigmaShriek::new(y, cutoff);
    let augmented = super::iota2_shriek(y, cutoff);
    augmented.validate()?;
    let composite = SigmaComposite { augmented: &augmented };
    let to_composite = |k: usize, e: &SigmaElem| -> (i32, AElem) {
        match e {
            SigmaElem::Col(rep) => (-1, AElem::Col { col: k, rep: rep.clone() }),
            SigmaElem::Int(i, be) => (*i as i32, AElem::Body(be.clone())),
            SigmaElem::Row(rep) => (k as i32, AElem::Row { row: k, rep: rep.clone() }),
        }
    };
    super::check_nat_iso(&direct, &composite, to_composite, cutoff)?;
    Ok(())
}

/// The simplex of `Δ[1]` classified by a monotone map into `[1]`.
///
/// Relies on `simplex(1)` listing its vertices as cells `0`, `1` in that
/// order.
pub fn interval_simplex(f: &OrdinalMap) -> Simplex {
    debug_assert_eq!(f.cod(), Ordinal(1));
    let (inj, surj) = f.ez_factor();
    let cell = if inj.dom().0 == 1 {
        CellId { dim: 1, idx: 0 }
    } else {
        CellId { dim: 0, idx: inj.at(0) as usize }
    };
    Simplex { deg: surj, cell }
}

/// The map `f_i : [k] -> [1]` sending `r` to `0` iff `r ≤ i`.
pub fn step_map(k: usize, i: i32) -> OrdinalMap {
    let values = (0..=k as i32).map(|r| if r <= i { 0 } else { 1 }).collect();
    OrdinalMap::new(Ordinal(k as i32), Ordinal(1), values).unwrap()
}

/// The counit `σ_!σ*X -> X`: the folding map that sends every summand copy
/// of `X_k` identically to `X_k`, the `π₀` summands through the coequalizer
/// identifications (`d_0` on columns, `d_{last}` on rows).
pub fn counit_sigma(x: &SSet, e: &SigmaElem) -> Simplex {
    match e {
        SigmaElem::Int(_, BiElem::Dec(s)) => s.clone(),
        SigmaElem::Col(BiElem::Dec(s)) => {
            let n = s.level() as i32;
            x.act(&coface(n, 0).unwrap(), s)
        }
        SigmaElem::Row(BiElem::Dec(s)) => {
            let n = s.level() as i32;
            x.act(&coface(n, n).unwrap(), s)
        }
        _ => panic!("counit applies to σ_! of a décalage"),
    }
}

/// The counit identification `σ_!σ*X ≅ X × Δ[1]`: the `i`-th summand copy of
/// `X_k` goes to `X_k × {f_i}`.
pub struct CounitIso<'a> {
    pub x: &'a SSet,
    pub interval: SSet,
    pub tensor: Product,
}

impl<'a> CounitIso<'a> {
    pub fn new(x: &'a SSet) -> CounitIso<'a> {
        let interval = crate::sset::build::simplex(1);
        let tensor = Product::new(x, &interval);
        CounitIso { x, interval, tensor }
    }

    /// Image of a `σ_!σ*X` element in `X × Δ[1]`.
    pub fn forward(&self, e: &SigmaElem) -> Simplex {
        let (xs, f) = match e {
            SigmaElem::Int(i, BiElem::Dec(s)) => (s.clone(), step_map(s.level(), *i as i32)),
            SigmaElem::Col(BiElem::Dec(s)) => {
                let n = s.level() as i32;
                (self.x.act(&coface(n, 0).unwrap(), s), step_map(n as usize - 1, -1))
            }
            SigmaElem::Row(BiElem::Dec(s)) => {
                let n = s.level() as i32;
                (self.x.act(&coface(n, n).unwrap(), s), step_map(n as usize - 1, n - 1))
            }
            _ => panic!("counit iso applies to σ_! of a décalage"),
        };
        self.tensor.simplex_of_pair(self.x, &self.interval, &xs, &interval_simplex(&f))
    }

    /// Full check of the counit theorem at cutoff `n`: the summand counts
    /// match `(k+2)·|X_k|`, the identification is a natural isomorphism, and
    /// the triangle `counit = projection ∘ iso` commutes.
    pub fn verify(&self, sigma: &SigmaShriek<'_>, cutoff: usize) -> Result<(), Witness> {
        for k in 0..=cutoff {
            let expected = (k + 2) * self.x.level(k).len();
            let got = self.tensor.space.level(k).len();
            if got != expected {
                return Err(Witness::note(format!(
                    "|X×Δ[1]|_{k} = {got}, expected (k+2)|X_k| = {expected}"
                )));
            }
            let sigma_size = sigma.elems(k).len();
            if sigma_size != expected {
                return Err(Witness::note(format!(
                    "|σ_!σ*X|_{k} = {sigma_size}, expected {expected}"
                )));
            }
        }
        super::check_nat_iso(sigma, &self.tensor.space, |_, e| self.forward(e), cutoff)?;
        // triangle: the counit is the projection after the identification
        for k in 0..=cutoff {
            for e in sigma.elems(k) {
                let through_iso =
                    self.tensor.components(self.x, &self.interval, &self.forward(&e)).0;
                let direct = counit_sigma(self.x, &e);
                if through_iso != direct {
                    return Err(Witness {
                        note: "counit/projection triangle failed".into(),
                        beta: None,
                        level: Some(k),
                        lhs: Some(self.x.describe(&through_iso)),
                        rhs: Some(self.x.describe(&direct)),
                    });
                }
            }
        }
        // naturality of the counit itself
        let fold = |_: usize, e: &SigmaElem| counit_sigma(self.x, e);
        super::check_squares(sigma, self.x, &fold, cutoff)?;
        Ok(())
    }
}

/// Inverse of the counit identification: a simplex of `X × Δ[1]` lands in
/// the summand read off from its interval component.
pub fn counit_iso_inverse(
    iso: &CounitIso<'_>,
    sigma: &SigmaShriek<'_>,
    e: &Simplex,
) -> SigmaElem {
    let k = e.level();
    let (xs, ts) = iso.tensor.components(iso.x, &iso.interval, e);
    let f = interval_map(&ts);
    let i = f.values().iter().filter(|&&v| v == 0).count() as i32 - 1;
    if i == -1 {
        let img = iso.x.act(&codegeneracy(k as i32, 0).unwrap(), &xs);
        SigmaElem::Col(sigma.col_quot(k).canonical(&BiElem::Dec(img)).unwrap().clone())
    } else if i == k as i32 {
        let img = iso.x.act(&codegeneracy(k as i32, k as i32).unwrap(), &xs);
        SigmaElem::Row(sigma.row_quot(k).canonical(&BiElem::Dec(img)).unwrap().clone())
    } else {
        SigmaElem::Int(i as usize, BiElem::Dec(xs))
    }
}

/// The monotone map `[k] -> [1]` underlying a simplex of `Δ[1]`.
///
/// Relies on the vertex ordering of `simplex(1)`.
pub fn interval_map(s: &Simplex) -> OrdinalMap {
    let k = s.level() as i32;
    if s.cell.dim == 1 {
        s.deg.clone()
    } else {
        OrdinalMap::constant(Ordinal(k), Ordinal(1), s.cell.idx as i32).unwrap()
    }
}

/// `σ_!` applied to a bisimplicial map, evaluated on one element of level
/// `level`: componentwise on interior summands, induced on `π₀`.
pub fn sigma_shriek_map(
    target: &SigmaShriek<'_>,
    mut eval: impl FnMut(&BiElem) -> BiElem,
    e: &SigmaElem,
    level: usize,
) -> SigmaElem {
    match e {
        SigmaElem::Int(i, be) => SigmaElem::Int(*i, eval(be)),
        SigmaElem::Col(rep) => {
            let img = eval(rep);
            SigmaElem::Col(target.col_quot(level).canonical(&img).unwrap().clone())
        }
        SigmaElem::Row(rep) => {
            let img = eval(rep);
            SigmaElem::Row(target.row_quot(level).canonical(&img).unwrap().clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kan::iota2_shriek;
    use crate::sset::bisset::dec;
    use crate::sset::build::{boundary, product, quotient, simplex};

    #[test]
    fn sigma_levels_of_point_look_like_interval() {
        let y = dec(&simplex(0));
        let s = SigmaShriek::new(&y, 4);
        let interval = simplex(1);
        for k in 0..=4 {
            assert_eq!(s.elems(k).len(), interval.level(k).len(), "k={k}");
        }
    }

    #[test]
    fn sigma_level_zero_is_two_pi0s() {
        let y = crate::kan::external_product(&boundary(2), &simplex(1));
        let s = SigmaShriek::new(&y, 2);
        assert_eq!(s.elems(0).len(), s.col_quot(0).len() + s.row_quot(0).len());
    }

    #[test]
    fn two_routes_agree_on_small_corpus() {
        let spaces = vec![simplex(0), simplex(1), boundary(2)];
        for x in &spaces {
            two_route_check(&dec(x), 3).unwrap();
        }
        two_route_check(&crate::kan::external_product(&boundary(2), &simplex(1)), 3).unwrap();
        two_route_check(&crate::kan::external_product(&simplex(1), &simplex(1)), 3).unwrap();
    }

    #[test]
    fn composite_route_point_counts() {
        // (σ_a)_! of the fully augmented point has k+2 singleton summands
        let y = dec(&simplex(0));
        let a = iota2_shriek(&y, 4);
        let c = SigmaComposite { augmented: &a };
        for k in 0..=4usize {
            assert_eq!(c.elems(k).len(), k + 2);
        }
        assert_eq!(c.carrier().len(), 1);
    }

    #[test]
    fn composite_identity_routes_summands_identically() {
        let y = dec(&simplex(1));
        let a = iota2_shriek(&y, 3);
        let c = SigmaComposite { augmented: &a };
        for k in 0..=3usize {
            let id = OrdinalMap::identity(Ordinal(k as i32));
            for e in c.elems(k) {
                assert_eq!(c.act_elem(&id, &e), e);
            }
        }
    }

    #[test]
    fn augmentation_coequalizes_level_one() {
        let y = dec(&boundary(2));
        let a = iota2_shriek(&y, 3);
        let c = SigmaComposite { augmented: &a };
        let d0 = coface(1, 0).unwrap();
        let d1 = coface(1, 1).unwrap();
        for e in c.elems(1) {
            let x0 = c.act_elem(&d0, &e);
            let x1 = c.act_elem(&d1, &e);
            assert_eq!(c.augmentation(&x0), c.augmentation(&x1));
        }
    }

    #[test]
    fn counit_point() {
        let x = simplex(0);
        let y = dec(&x);
        let s = SigmaShriek::new(&y, 3);
        let iso = CounitIso::new(&x);
        iso.verify(&s, 3).unwrap();
    }

    #[test]
    fn counit_interval_is_square() {
        // σ_!σ*Δ[1] ≅ Δ[1] × Δ[1]
        let x = simplex(1);
        let y = dec(&x);
        let s = SigmaShriek::new(&y, 3);
        let iso = CounitIso::new(&x);
        iso.verify(&s, 3).unwrap();
        let square = product(&simplex(1), &simplex(1));
        for k in 0..=3 {
            assert_eq!(s.elems(k).len(), square.level(k).len());
        }
    }

    #[test]
    fn counit_boundary_and_circle() {
        for x in [boundary(2), quotient(&simplex(1), &boundary(1)).unwrap()] {
            let y = dec(&x);
            let s = SigmaShriek::new(&y, 3);
            CounitIso::new(&x).verify(&s, 3).unwrap();
        }
    }

    #[test]
    fn counit_iso_round_trip() {
        let x = boundary(2);
        let y = dec(&x);
        let s = SigmaShriek::new(&y, 3);
        let iso = CounitIso::new(&x);
        for k in 0..=3 {
            for e in s.elems(k) {
                let fwd = iso.forward(&e);
                assert_eq!(counit_iso_inverse(&iso, &s, &fwd), e);
            }
        }
    }

    #[test]
    fn interior_routes_to_pi0_summands_at_the_ends() {
        // β = d^0 : [k-1] -> [k] splits at i = 0 with j = -1, so the image
        // of the 0-th interior summand lands in the column π₀ summand;
        // dually d^k at i = k-1 lands in the row π₀ summand
        let y = dec(&boundary(2));
        let s = SigmaShriek::new(&y, 3);
        for k in 2..=3i32 {
            let d0 = coface(k, 0).unwrap();
            assert_eq!(d0.split_at(0).unwrap().0, -1);
            let dk = coface(k, k).unwrap();
            for e in s.elems(k as usize) {
                match &e {
                    SigmaElem::Int(0, _) => {
                        assert!(matches!(s.act_elem(&d0, &e), SigmaElem::Col(_)));
                    }
                    SigmaElem::Int(i, _) if *i as i32 == k - 1 => {
                        assert!(matches!(s.act_elem(&dk, &e), SigmaElem::Row(_)));
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn step_map_endpoints() {
        // f_{-1} is constant 1, f_k is constant 0
        for k in 0..4usize {
            assert!(step_map(k, -1).values().iter().all(|&v| v == 1));
            assert!(step_map(k, k as i32).values().iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn counit_folding_on_interval_level_zero() {
        // X = Δ[1], k = 0: level 0 is two copies of X_0 (both π₀ summands),
        // and the fold is surjective onto X_0
        let x = simplex(1);
        let y = dec(&x);
        let s = SigmaShriek::new(&y, 2);
        let elems = s.elems(0);
        assert_eq!(elems.len(), 2 * x.level(0).len());
        let images: std::collections::HashSet<Simplex> =
            elems.iter().map(|e| counit_sigma(&x, e)).collect();
        assert_eq!(images.len(), x.level(0).len());
    }
}
