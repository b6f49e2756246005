//! The total simplicial set `T = σ_*` and the unit comparison.
//!
//! `(σ_*Y)_n` is computed by corepresentability as the set of bisimplicial
//! maps `Dec Δ[n] -> Y`, with structure maps given by precomposition. The
//! comparison carries a total element `φ` to the simplicial map
//! `Δ[n] × Δ[1] -> X` obtained as counit ∘ `σ_!φ` ∘ (counit iso)⁻¹, and the
//! main check verifies this is a natural bijection onto the path-space
//! levels under which the unit becomes the map induced by `Δ[1] -> Δ[0]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::kan::Witness;
use crate::ordinal::{coface, codegeneracy, enumerate_injections, Ordinal, OrdinalMap};
use crate::sset::bisset::{
    dec, hom_bisset_budgeted, BiCells, BiElem, BiSMap, BiSSet, DecSimplexCells,
};
use crate::sset::build::{simplex, Product};
use crate::sset::map::{hom_sset_budgeted, Budget, BudgetExceeded, SMap};
use crate::sset::{CellId, Levelwise, SSet, Simplex};

use super::sigma::{interval_map, SigmaShriek};

/// A standard simplex together with the injective map carried by each cell,
/// so simplices can be moved between their EZ form and the underlying
/// monotone map.
#[derive(Clone, Debug)]
pub struct StdSimplex {
    pub n: usize,
    pub space: SSet,
    injections: Vec<Vec<OrdinalMap>>,
    index: HashMap<Vec<i32>, CellId>,
}

impl StdSimplex {
    pub fn new(n: usize) -> StdSimplex {
        let space = simplex(n);
        let mut injections = Vec::new();
        let mut index = HashMap::new();
        for m in 0..=n {
            let maps = enumerate_injections(Ordinal(m as i32), Ordinal(n as i32));
            for (idx, f) in maps.iter().enumerate() {
                index.insert(f.values().to_vec(), CellId { dim: m, idx });
            }
            injections.push(maps);
        }
        StdSimplex { n, space, injections, index }
    }

    /// The monotone map `[m] -> [n]` a simplex stands for.
    pub fn underlying_map(&self, s: &Simplex) -> OrdinalMap {
        self.injections[s.cell.dim][s.cell.idx].compose(&s.deg).unwrap()
    }

    /// The simplex classified by a monotone map into `[n]`.
    pub fn simplex_of_map(&self, f: &OrdinalMap) -> Simplex {
        let (inj, surj) = f.ez_factor();
        let cell = self.index[inj.values()];
        Simplex { deg: surj, cell }
    }
}

/// `σ_*Y` with levels available up to `max`; levels are memoized because the
/// mapping-space enumeration behind them is the expensive part.
pub struct Total {
    pub y: BiSSet,
    max: usize,
    dec_cells: Vec<DecSimplexCells>,
    cache: Mutex<BTreeMap<usize, Vec<BiSMap>>>,
    budget: Budget,
}

impl Total {
    pub fn new(y: BiSSet, max: usize) -> Total {
        Total::with_budget(y, max, Budget::default())
    }

    pub fn with_budget(y: BiSSet, max: usize, budget: Budget) -> Total {
        let dec_cells = (0..=max).map(DecSimplexCells::new).collect();
        Total { y, max, dec_cells, cache: Mutex::new(BTreeMap::new()), budget }
    }

    pub fn max(&self) -> usize {
        self.max
    }

    pub fn dec_cells(&self, n: usize) -> &DecSimplexCells {
        &self.dec_cells[n]
    }

    /// Enumerates (and caches) one level, propagating budget exhaustion.
    pub fn try_elems(&self, n: usize) -> Result<Vec<BiSMap>, BudgetExceeded> {
        if let Some(hit) = self.cache.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let maps = hom_bisset_budgeted(&self.dec_cells[n].cells, &self.y, self.budget)?;
        self.cache.lock().unwrap().insert(n, maps.clone());
        Ok(maps)
    }

    /// Precomputes all levels up to `cutoff` so later `elems` calls cannot
    /// blow the budget.
    pub fn warm(&self, cutoff: usize) -> Result<(), BudgetExceeded> {
        for n in 0..=cutoff {
            self.try_elems(n)?;
        }
        Ok(())
    }
}

impl Levelwise for Total {
    type Elem = BiSMap;

    fn elems(&self, n: usize) -> Vec<BiSMap> {
        self.try_elems(n).expect("budget exhausted while enumerating total levels")
    }

    /// Precomposition with `Dec` of the induced map `Δ[l] -> Δ[k]`.
    fn act_elem(&self, op: &OrdinalMap, phi: &BiSMap) -> BiSMap {
        let k = op.cod().0 as usize;
        let l = op.dom().0 as usize;
        let source = &self.dec_cells[l];
        let target = &self.dec_cells[k];
        let mut assignment: BTreeMap<(usize, usize), Vec<BiElem>> = BTreeMap::new();
        for c in source.cells.all_cells() {
            let gamma = source.map_of_cell(c);
            let composite = op.compose(gamma).unwrap();
            let nf = target.normal_form(&composite, c.hdim, c.vdim);
            let value = self.y.act2(&nf.hdeg, &nf.vdeg, phi.image_of_cell(nf.cell));
            let entry = assignment.entry((c.hdim, c.vdim)).or_default();
            debug_assert_eq!(entry.len(), c.idx);
            entry.push(value);
        }
        BiSMap::from_assignment(assignment)
    }
}

/// The unit `X -> σ_*σ*X` on one element: décalage of the classifying map.
pub fn unit_elem(x: &SSet, dc: &DecSimplexCells, s: &Simplex) -> BiSMap {
    debug_assert_eq!(s.level(), dc.n);
    let mut assignment: BTreeMap<(usize, usize), Vec<BiElem>> = BTreeMap::new();
    for c in dc.cells.all_cells() {
        let gamma = dc.map_of_cell(c);
        let value = BiElem::Dec(x.act(gamma, s));
        let entry = assignment.entry((c.hdim, c.vdim)).or_default();
        debug_assert_eq!(entry.len(), c.idx);
        entry.push(value);
    }
    BiSMap::from_assignment(assignment)
}

/// The cotensor `X^K`: level `n` is the set of maps `Δ[n] × K -> X`, the
/// action precomposes with the induced map on the first factor.
pub struct Cotensor<'a> {
    pub x: &'a SSet,
    pub exponent: SSet,
    std: Vec<StdSimplex>,
    prisms: Vec<Product>,
    cache: Mutex<BTreeMap<usize, Vec<SMap>>>,
    budget: Budget,
}

impl<'a> Cotensor<'a> {
    pub fn new(x: &'a SSet, exponent: SSet, max: usize) -> Cotensor<'a> {
        Cotensor::with_budget(x, exponent, max, Budget::default())
    }

    pub fn with_budget(x: &'a SSet, exponent: SSet, max: usize, budget: Budget) -> Cotensor<'a> {
        let std: Vec<StdSimplex> = (0..=max).map(StdSimplex::new).collect();
        let prisms = std.iter().map(|s| Product::new(&s.space, &exponent)).collect();
        Cotensor { x, exponent, std, prisms, cache: Mutex::new(BTreeMap::new()), budget }
    }

    pub fn max(&self) -> usize {
        self.std.len() - 1
    }

    pub fn std(&self, n: usize) -> &StdSimplex {
        &self.std[n]
    }

    pub fn prism(&self, n: usize) -> &Product {
        &self.prisms[n]
    }

    pub fn try_elems(&self, n: usize) -> Result<Vec<SMap>, BudgetExceeded> {
        if let Some(hit) = self.cache.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let maps = hom_sset_budgeted(&self.prisms[n].space, self.x, self.budget)?;
        self.cache.lock().unwrap().insert(n, maps.clone());
        Ok(maps)
    }

    pub fn warm(&self, cutoff: usize) -> Result<(), BudgetExceeded> {
        for n in 0..=cutoff {
            self.try_elems(n)?;
        }
        Ok(())
    }

    /// The map `X -> X^K` induced by `K -> Δ[0]`: precompose the classifying
    /// map with the first projection.
    pub fn constant_path(&self, n: usize, s: &Simplex) -> SMap {
        let std_n = &self.std[n];
        let assignment = self.prisms[n]
            .pairs_table()
            .iter()
            .map(|level| {
                level.iter().map(|(a, _)| self.x.act(&std_n.underlying_map(a), s)).collect()
            })
            .collect();
        SMap::from_assignment(assignment)
    }
}

impl Levelwise for Cotensor<'_> {
    type Elem = SMap;

    fn elems(&self, n: usize) -> Vec<SMap> {
        self.try_elems(n).expect("budget exhausted while enumerating cotensor levels")
    }

    fn act_elem(&self, op: &OrdinalMap, f: &SMap) -> SMap {
        let k = op.cod().0 as usize;
        let l = op.dom().0 as usize;
        let assignment = self.prisms[l]
            .pairs_table()
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(s, t)| {
                        let u = self.std[l].underlying_map(s);
                        let moved = self.std[k].simplex_of_map(&op.compose(&u).unwrap());
                        let e = self.prisms[k].simplex_of_pair(
                            &self.std[k].space,
                            &self.exponent,
                            &moved,
                            t,
                        );
                        f.apply(self.x, &e)
                    })
                    .collect()
            })
            .collect();
        SMap::from_assignment(assignment)
    }
}

/// The comparison `σ_*σ*X ∋ φ ↦ (counit ∘ σ_!φ ∘ iso⁻¹) : Δ[n]×Δ[1] -> X`.
///
/// The `π₀` summand passages are computed on representatives directly: the
/// counit is constant on classes, so no quotient needs materializing.
pub fn comparison_map(
    x: &SSet,
    dx: &BiSSet,
    total: &Total,
    cotensor: &Cotensor<'_>,
    n: usize,
    phi: &BiSMap,
) -> SMap {
    let dc = total.dec_cells(n);
    let std_n = cotensor.std(n);
    let prism = cotensor.prism(n);
    // φ evaluated on a simplex of Δ[n] seen in bidegree (p, q)
    let eval = |w: &Simplex, p: usize, q: usize| -> Simplex {
        let u = std_n.underlying_map(w);
        let nf = dc.normal_form(&u, p, q);
        match phi.apply(dx, &nf) {
            BiElem::Dec(z) => z,
            BiElem::Cell(_) => panic!("comparison target is not a décalage"),
        }
    };
    let assignment = prism
        .pairs_table()
        .iter()
        .enumerate()
        .map(|(m, level)| {
            level
                .iter()
                .map(|(s, t)| {
                    let f = interval_map(t);
                    let i = f.values().iter().filter(|&&v| v == 0).count() as i32 - 1;
                    let mi = m as i32;
                    if i == -1 {
                        let lifted = std_n.space.act(&codegeneracy(mi, 0).unwrap(), s);
                        let z = eval(&lifted, 0, m);
                        x.act(&coface(mi + 1, 0).unwrap(), &z)
                    } else if i == mi {
                        let lifted = std_n.space.act(&codegeneracy(mi, mi).unwrap(), s);
                        let z = eval(&lifted, m, 0);
                        x.act(&coface(mi + 1, mi + 1).unwrap(), &z)
                    } else {
                        eval(s, i as usize, m - 1 - i as usize)
                    }
                })
                .collect()
        })
        .collect();
    SMap::from_assignment(assignment)
}

/// Full statement of the main comparison at cutoff `n_max`: the comparison
/// is a levelwise bijection `σ_*σ*X ≅ X^{Δ[1]}` natural under all generators,
/// the unit is natural, and under the comparison the unit becomes the map
/// induced by `Δ[1] -> Δ[0]`.
pub fn comparison_check(x: &SSet, n_max: usize, budget: Budget) -> Result<(), Witness> {
    let dx = dec(x);
    let total = Total::with_budget(dx.clone(), n_max, budget);
    let cotensor = Cotensor::with_budget(x, simplex(1), n_max, budget);
    total.warm(n_max).map_err(|e| Witness::note(format!("total: {e}")))?;
    cotensor.warm(n_max).map_err(|e| Witness::note(format!("cotensor: {e}")))?;
    super::check_nat_iso(
        &total,
        &cotensor,
        |n, phi| comparison_map(x, &dx, &total, &cotensor, n, phi),
        n_max,
    )?;
    // unit naturality: unit(x·β) = unit(x)·β
    let unit_of = |n: usize, s: &Simplex| unit_elem(x, total.dec_cells(n), s);
    super::check_squares(x, &total, &unit_of, n_max)?;
    // the unit corresponds to precomposition with the projection Δ[n]×Δ[1] -> Δ[n]
    for n in 0..=n_max {
        for s in x.level(n) {
            let through = comparison_map(x, &dx, &total, &cotensor, n, &unit_of(n, &s));
            let direct = cotensor.constant_path(n, &s);
            if through != direct {
                return Err(Witness {
                    note: "unit does not correspond to the Δ[1]->Δ[0]-induced map".into(),
                    beta: None,
                    level: Some(n),
                    lhs: None,
                    rhs: None,
                });
            }
        }
    }
    Ok(())
}

/// Independent oracle for the `(σ_!, σ*)` adjunction: the transpose
/// `g ↦ counit ∘ σ_!g` is a bijection between bisimplicial maps
/// `Y -> Dec X` and maps `σ_!Y -> X`, both sides enumerated exhaustively.
pub fn adjunction_check(y: &BiCells, x: &SSet, budget: Budget) -> Result<(), Witness> {
    use super::sigma::{counit_sigma, sigma_shriek_map};
    let (p, q) = y.max_bidegree();
    let top = p + q + 1;
    let ybis = BiSSet::Cells(y.clone());
    let sigma = SigmaShriek::new(&ybis, top + 1);
    let (cellized, elems) = super::cellize(&sigma, top);
    let maps_out = hom_sset_budgeted(&cellized, x, budget)
        .map_err(|e| Witness::note(format!("σ_!Y side: {e}")))?;
    let dx = dec(x);
    let sigma_dx = SigmaShriek::new(&dx, top + 1);
    let bimaps = hom_bisset_budgeted(y, &dx, budget)
        .map_err(|e| Witness::note(format!("Dec X side: {e}")))?;
    if maps_out.len() != bimaps.len() {
        return Err(Witness::note(format!(
            "adjunction sides have different sizes: {} maps σ_!Y -> X vs {} maps Y -> Dec X",
            maps_out.len(),
            bimaps.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for g in &bimaps {
        let eval = |be: &BiElem| -> BiElem {
            let BiElem::Cell(bs) = be else { panic!("adjunction source must be cell-presented") };
            g.apply(&dx, bs)
        };
        let assignment: Vec<Vec<Simplex>> = elems
            .iter()
            .enumerate()
            .map(|(n, level)| {
                level
                    .iter()
                    .map(|e| counit_sigma(x, &sigma_shriek_map(&sigma_dx, eval, e, n)))
                    .collect()
            })
            .collect();
        let transposed = SMap::from_assignment(assignment);
        if !maps_out.contains(&transposed) {
            return Err(Witness::note("transpose is not a simplicial map in the enumerated set"));
        }
        if !seen.insert(transposed) {
            return Err(Witness::note("transpose is not injective"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::build::{boundary, product, quotient};
    use crate::sset::map::hom_sset;

    #[test]
    fn total_of_point_is_terminal() {
        let total = Total::new(dec(&simplex(0)), 3);
        for n in 0..=3 {
            assert_eq!(total.elems(n).len(), 1);
        }
    }

    #[test]
    fn total_level_zero_of_interval() {
        // |σ_*σ*Δ[1]|_0 = |hom(Δ[1], Δ[1])| = 3, enumerated independently
        let x = simplex(1);
        let total = Total::new(dec(&x), 2);
        assert_eq!(total.elems(0).len(), 3);
        assert_eq!(hom_sset(&simplex(1), &x).len(), 3);
    }

    #[test]
    fn total_level_one_matches_square_maps() {
        let x = simplex(1);
        let total = Total::new(dec(&x), 1);
        let square = product(&simplex(1), &simplex(1));
        assert_eq!(total.elems(1).len(), hom_sset(&square, &x).len());
    }

    #[test]
    fn unit_point_and_interval() {
        let x = simplex(0);
        let total = Total::new(dec(&x), 2);
        let s = x.level(0)[0].clone();
        let u = unit_elem(&x, total.dec_cells(0), &s);
        assert_eq!(total.elems(0), vec![u]);

        // X = Δ[1], n = 0: the two vertices give two distinct total elements
        let x1 = simplex(1);
        let t1 = Total::new(dec(&x1), 1);
        let units: std::collections::HashSet<BiSMap> =
            x1.level(0).iter().map(|s| unit_elem(&x1, t1.dec_cells(0), s)).collect();
        assert_eq!(units.len(), 2);
        for u in &units {
            assert!(t1.elems(0).contains(u));
        }
    }

    #[test]
    fn comparison_point_and_interval() {
        comparison_check(&simplex(0), 2, Budget::default()).unwrap();
        comparison_check(&simplex(1), 2, Budget::default()).unwrap();
    }

    #[test]
    fn comparison_boundary() {
        comparison_check(&boundary(2), 2, Budget::default()).unwrap();
    }

    #[test]
    fn comparison_circle() {
        let circle = quotient(&simplex(1), &boundary(1)).unwrap();
        comparison_check(&circle, 2, Budget::default()).unwrap();
    }

    #[test]
    fn cotensor_constant_paths_are_elements() {
        let x = boundary(2);
        let cot = Cotensor::new(&x, simplex(1), 2);
        for n in 0..=2 {
            let level = cot.elems(n);
            for s in x.level(n) {
                assert!(level.contains(&cot.constant_path(n, &s)));
            }
        }
    }

    #[test]
    fn adjunction_point_bicell() {
        // Y = Δ[0] ⊠ Δ[0]: σ_!Y ≅ Δ[1], so both sides count X_1
        let BiSSet::Cells(y) = crate::kan::external_product(&simplex(0), &simplex(0)) else {
            unreachable!()
        };
        for x in [simplex(0), simplex(1), boundary(2)] {
            let bimaps = hom_bisset_budgeted(&y, &dec(&x), Budget::default()).unwrap();
            assert_eq!(bimaps.len(), x.level(1).len());
            adjunction_check(&y, &x, Budget::default()).unwrap();
        }
    }

    #[test]
    fn adjunction_dec_cells_of_point() {
        let d0 = DecSimplexCells::new(0);
        for x in [simplex(0), simplex(1)] {
            adjunction_check(&d0.cells, &x, Budget::default()).unwrap();
        }
    }
}
