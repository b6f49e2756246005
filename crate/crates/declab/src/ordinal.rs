//! The simplex category and its augmentation.
//!
//! Objects are the finite linear orders `[n] = {0, …, n}` for `n ≥ -1`, where
//! `[-1]` is the empty order, and morphisms are weakly monotone maps. The
//! ordinal sum `[k] ⊕ [l] = [k+1+l]` concatenates two orders, and every map
//! into a sum splits uniquely into a pair of blocks ([`OrdinalMap::split_at`]).
//! That unique splitting is what drives all the Kan-extension formulas in the
//! rest of the crate.

use std::fmt;

use thiserror::Error;

/// A finite linear order `[n]`, with `n ≥ -1`; `[-1]` is the empty order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal(pub i32);

impl Ordinal {
    pub const EMPTY: Ordinal = Ordinal(-1);

    /// Number of elements of `[n]`, i.e. `n + 1`.
    pub fn len(self) -> usize {
        (self.0 + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == -1
    }

    /// Ordinal sum on objects: `[k] ⊕ [l] = [k+1+l]`.
    pub fn ordinal_sum(self, other: Ordinal) -> Ordinal {
        Ordinal(self.0 + 1 + other.0)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("values {values:?} are not a monotone map [{dom}]->[{cod}]")]
    NotMonotone { dom: i32, cod: i32, values: Vec<i32> },
    #[error("composition mismatch: cannot compose [{gl}]->[{gk}] after [{fl}]->[{fk}]")]
    ComposeMismatch { fl: i32, fk: i32, gl: i32, gk: i32 },
    #[error("index {i} out of range for {what} on [{n}]")]
    IndexOutOfRange { what: &'static str, i: i32, n: i32 },
}

/// A weakly monotone map `[l] -> [k]` in the augmented simplex category.
///
/// `values` lists the images of `0, …, l` and is empty exactly when the
/// domain is `[-1]`. A codomain of `[-1]` forces the domain to be `[-1]`
/// (only the identity of the empty order targets it).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalMap {
    dom: Ordinal,
    cod: Ordinal,
    values: Vec<i32>,
}

impl fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "):{}->{}", self.dom, self.cod)
    }
}

impl OrdinalMap {
    /// Builds a map after checking monotonicity and range.
    pub fn new(dom: Ordinal, cod: Ordinal, values: Vec<i32>) -> Result<Self, OrdinalError> {
        let bad = values.len() != dom.len()
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v < 0 || v > cod.0)
            || (cod.is_empty() && !dom.is_empty());
        if bad {
            return Err(OrdinalError::NotMonotone { dom: dom.0, cod: cod.0, values });
        }
        Ok(OrdinalMap { dom, cod, values })
    }

    fn new_unchecked(dom: Ordinal, cod: Ordinal, values: Vec<i32>) -> Self {
        debug_assert!(values.len() == dom.len());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v >= 0 && v <= cod.0));
        OrdinalMap { dom, cod, values }
    }

    pub fn identity(n: Ordinal) -> Self {
        OrdinalMap::new_unchecked(n, n, (0..=n.0).collect())
    }

    /// The unique map `[-1] -> [k]`.
    pub fn empty_to(k: Ordinal) -> Self {
        OrdinalMap::new_unchecked(Ordinal::EMPTY, k, Vec::new())
    }

    /// The vertex `[0] -> [n]` hitting `i`.
    pub fn vertex(i: i32, n: Ordinal) -> Result<Self, OrdinalError> {
        if i < 0 || i > n.0 {
            return Err(OrdinalError::IndexOutOfRange { what: "vertex", i, n: n.0 });
        }
        Ok(OrdinalMap::new_unchecked(Ordinal(0), n, vec![i]))
    }

    /// The constant map `[l] -> [k]` with value `v`.
    pub fn constant(l: Ordinal, k: Ordinal, v: i32) -> Result<Self, OrdinalError> {
        OrdinalMap::new(l, k, vec![v; l.len()])
    }

    pub fn dom(&self) -> Ordinal {
        self.dom
    }

    pub fn cod(&self) -> Ordinal {
        self.cod
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Evaluates at `j ∈ [dom]`.
    pub fn at(&self, j: i32) -> i32 {
        self.values[j as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values.iter().enumerate().all(|(i, &v)| v == i as i32)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        if self.cod.is_empty() {
            return true;
        }
        if self.values.is_empty() || self.values[0] != 0 || *self.values.last().unwrap() != self.cod.0 {
            return false;
        }
        self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Composition `self ∘ f`.
    pub fn compose(&self, f: &OrdinalMap) -> Result<OrdinalMap, OrdinalError> {
        if f.cod != self.dom {
            return Err(OrdinalError::ComposeMismatch {
                fl: f.dom.0,
                fk: f.cod.0,
                gl: self.dom.0,
                gk: self.cod.0,
            });
        }
        let values = f.values.iter().map(|&j| self.values[j as usize]).collect();
        Ok(OrdinalMap::new_unchecked(f.dom, self.cod, values))
    }

    /// Ordinal sum on maps: blockwise, with the second block shifted by
    /// `cod(self) + 1`.
    pub fn ordinal_sum(&self, other: &OrdinalMap) -> OrdinalMap {
        let dom = self.dom.ordinal_sum(other.dom);
        let cod = self.cod.ordinal_sum(other.cod);
        let shift = self.cod.0 + 1;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + shift));
        OrdinalMap::new_unchecked(dom, cod, values)
    }

    /// Splits `self : [l] -> [k]` at `-1 ≤ i ≤ k` as the unique pair
    /// `(left, right)` with `left : [j] -> [i]`, `right : [l-j-1] -> [k-i-1]`
    /// and `left ⊕ right = self`. Returns `(j, left, right)` where
    /// `j = max { j ∈ [l] | self(j) ≤ i }`, or `-1` when that set is empty.
    pub fn split_at(&self, i: i32) -> Result<(i32, OrdinalMap, OrdinalMap), OrdinalError> {
        let k = self.cod.0;
        if i < -1 || i > k {
            return Err(OrdinalError::IndexOutOfRange { what: "split_at", i, n: k });
        }
        let j = self
            .values
            .iter()
            .rposition(|&v| v <= i)
            .map(|p| p as i32)
            .unwrap_or(-1);
        let left =
            OrdinalMap::new_unchecked(Ordinal(j), Ordinal(i), self.values[..(j + 1) as usize].to_vec());
        let l = self.dom.0;
        let right_values = self.values[(j + 1) as usize..]
            .iter()
            .map(|&v| v - i - 1)
            .collect();
        let right =
            OrdinalMap::new_unchecked(Ordinal(l - j - 1), Ordinal(k - i - 1), right_values);
        Ok((j, left, right))
    }

    /// Epi-mono factorization `self = inj ∘ surj` with `inj` injective and
    /// `surj` surjective; the pair is unique.
    pub fn ez_factor(&self) -> (OrdinalMap, OrdinalMap) {
        if self.dom.is_empty() {
            return (self.clone(), OrdinalMap::identity(Ordinal::EMPTY));
        }
        let mut image: Vec<i32> = self.values.clone();
        image.dedup();
        let m = Ordinal(image.len() as i32 - 1);
        let inj = OrdinalMap::new_unchecked(m, self.cod, image.clone());
        let surj_values = self
            .values
            .iter()
            .map(|v| image.binary_search(v).unwrap() as i32)
            .collect();
        let surj = OrdinalMap::new_unchecked(self.dom, m, surj_values);
        (inj, surj)
    }

    /// Serialization as a flat integer sequence `[l, k, v0, …, vl]`.
    pub fn flat(&self) -> Vec<i32> {
        let mut out = vec![self.dom.0, self.cod.0];
        out.extend_from_slice(&self.values);
        out
    }
}

/// The coface `d^i : [n-1] -> [n]`, the injective monotone map skipping `i`.
pub fn coface(n: i32, i: i32) -> Result<OrdinalMap, OrdinalError> {
    if !(0..=n).contains(&i) || n < 0 {
        return Err(OrdinalError::IndexOutOfRange { what: "coface", i, n });
    }
    let values = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
    Ok(OrdinalMap::new_unchecked(Ordinal(n - 1), Ordinal(n), values))
}

/// The codegeneracy `s^i : [n+1] -> [n]`, the surjective monotone map
/// repeating `i`.
pub fn codegeneracy(n: i32, i: i32) -> Result<OrdinalMap, OrdinalError> {
    if !(0..=n).contains(&i) {
        return Err(OrdinalError::IndexOutOfRange { what: "codegeneracy", i, n });
    }
    let values = (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
    Ok(OrdinalMap::new_unchecked(Ordinal(n + 1), Ordinal(n), values))
}

/// All weakly monotone maps `[l] -> [k]`, in lexicographic order of their
/// value sequences. For `l, k ≥ 0` there are `C(k+l+1, l+1)` of them.
pub fn enumerate_maps(l: Ordinal, k: Ordinal) -> Vec<OrdinalMap> {
    if l.is_empty() {
        return vec![OrdinalMap::empty_to(k)];
    }
    if k.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0i32; l.len()];
    loop {
        out.push(OrdinalMap::new_unchecked(l, k, current.clone()));
        // advance to the next monotone sequence
        let mut pos = current.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < k.0 {
                current[pos] += 1;
                let v = current[pos];
                for x in current[pos + 1..].iter_mut() {
                    *x = v;
                }
                break;
            }
        }
    }
}

/// All surjective monotone maps `[n] ->> [m]`, in lexicographic order.
pub fn enumerate_surjections(n: Ordinal, m: Ordinal) -> Vec<OrdinalMap> {
    enumerate_maps(n, m)
        .into_iter()
        .filter(|f| f.is_surjective())
        .collect()
}

/// All injective monotone maps `[m] -> [n]`, in lexicographic order.
pub fn enumerate_injections(m: Ordinal, n: Ordinal) -> Vec<OrdinalMap> {
    enumerate_maps(m, n)
        .into_iter()
        .filter(|f| f.is_injective())
        .collect()
}

/// Generators (cofaces and codegeneracies) between levels `≤ cutoff`.
pub fn generators_up_to(cutoff: usize) -> Vec<OrdinalMap> {
    let mut out = Vec::new();
    for n in 1..=cutoff as i32 {
        for i in 0..=n {
            out.push(coface(n, i).unwrap());
        }
    }
    for n in 0..cutoff as i32 {
        for i in 0..=n {
            out.push(codegeneracy(n, i).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(l: i32, k: i32, values: &[i32]) -> OrdinalMap {
        OrdinalMap::new(Ordinal(l), Ordinal(k), values.to_vec()).unwrap()
    }

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
    fn compose_identity_law() {
        let d1 = coface(2, 1).unwrap();
        assert_eq!(OrdinalMap::identity(Ordinal(2)).compose(&d1).unwrap(), d1);
        assert_eq!(d1.compose(&OrdinalMap::identity(Ordinal(1))).unwrap(), d1);
    }

    #[test]
    fn compose_simplicial_identity() {
        // s^0 ∘ d^1 = id on [0]
        let s0 = codegeneracy(0, 0).unwrap();
        let d1 = coface(1, 1).unwrap();
        assert_eq!(s0.compose(&d1).unwrap(), OrdinalMap::identity(Ordinal(0)));
    }

    #[test]
    fn compose_pointwise() {
        // d^0 ∘ s^0 : [2] -> [2], evaluated pointwise
        let d0 = coface(2, 0).unwrap();
        let s0 = codegeneracy(1, 0).unwrap();
        let got = d0.compose(&s0).unwrap();
        let expect: Vec<i32> = (0..=2).map(|j| d0.at(s0.at(j))).collect();
        assert_eq!(got.values(), &expect[..]);
        assert_eq!(got, map(2, 2, &[1, 1, 2]));
    }

    #[test]
    fn compose_mismatch_errors() {
        let d0 = coface(2, 0).unwrap();
        assert!(matches!(
            d0.compose(&d0),
            Err(OrdinalError::ComposeMismatch { .. })
        ));
    }

    #[test]
    fn ordinal_sum_objects() {
        assert_eq!(Ordinal(0).ordinal_sum(Ordinal(0)), Ordinal(1));
        assert_eq!(Ordinal::EMPTY.ordinal_sum(Ordinal(5)), Ordinal(5));
        assert_eq!(Ordinal(2).ordinal_sum(Ordinal(3)), Ordinal(6));
    }

    #[test]
    fn ordinal_sum_gives_cofaces() {
        // id_[i] ⊕ d^{k-i-1} = d^k : [n] -> [n+1] for i < k
        for n in 1..5 {
            for k in 0..=n + 1 {
                for i in 0..k {
                    let left = OrdinalMap::identity(Ordinal(i));
                    let right = coface(n - i, k - i - 1).unwrap();
                    assert_eq!(left.ordinal_sum(&right), coface(n + 1, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn ordinal_sum_unit_law() {
        let beta = map(2, 3, &[0, 2, 2]);
        assert_eq!(OrdinalMap::empty_to(Ordinal::EMPTY).ordinal_sum(&beta), beta);
        assert_eq!(beta.ordinal_sum(&OrdinalMap::empty_to(Ordinal::EMPTY)), beta);
    }

    #[test]
    fn ordinal_sum_blockwise() {
        let b1 = map(1, 1, &[0, 1]);
        let b2 = map(0, 1, &[1]);
        assert_eq!(b1.ordinal_sum(&b2), map(2, 3, &[0, 1, 3]));
    }

    #[test]
    fn ordinal_sum_bifunctorial() {
        // (α∘α') ⊕ (γ∘γ') = (α⊕γ) ∘ (α'⊕γ') over all composables with objects ≤ [2]
        let objs = [-1, 0, 1, 2];
        for &a in &objs {
            for &b in &objs {
                for &c in &objs {
                    for alpha in enumerate_maps(Ordinal(b), Ordinal(c)) {
                        for alpha_p in enumerate_maps(Ordinal(a), Ordinal(b)) {
                            for &x in &objs {
                                for &y in &objs {
                                    for &z in &objs {
                                        for gamma in enumerate_maps(Ordinal(y), Ordinal(z)) {
                                            for gamma_p in enumerate_maps(Ordinal(x), Ordinal(y)) {
                                                let lhs = alpha
                                                    .compose(&alpha_p)
                                                    .unwrap()
                                                    .ordinal_sum(&gamma.compose(&gamma_p).unwrap());
                                                let rhs = alpha
                                                    .ordinal_sum(&gamma)
                                                    .compose(&alpha_p.ordinal_sum(&gamma_p))
                                                    .unwrap();
                                                assert_eq!(lhs, rhs);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn split_at_coface() {
        // d^2 : [2] -> [3] splits at i = 1 as (id_[1], d^0)
        let d2 = coface(3, 2).unwrap();
        let (j, left, right) = d2.split_at(1).unwrap();
        assert_eq!(j, 1);
        assert_eq!(left, OrdinalMap::identity(Ordinal(1)));
        assert_eq!(right, coface(1, 0).unwrap());
    }

    #[test]
    fn split_at_identity() {
        for k in 0..4 {
            let id = OrdinalMap::identity(Ordinal(k));
            for i in -1..=k {
                let (j, left, right) = id.split_at(i).unwrap();
                assert_eq!(j, i);
                assert_eq!(left, OrdinalMap::identity(Ordinal(i)));
                assert_eq!(right, OrdinalMap::identity(Ordinal(k - i - 1)));
            }
        }
    }

    #[test]
    fn split_at_empty_left_block() {
        let beta = map(1, 2, &[2, 2]);
        let (j, left, right) = beta.split_at(1).unwrap();
        assert_eq!(j, -1);
        assert_eq!(left, OrdinalMap::empty_to(Ordinal(1)));
        assert_eq!(right, OrdinalMap::constant(Ordinal(1), Ordinal(0), 0).unwrap());
    }

    #[test]
    fn split_at_out_of_range() {
        let beta = map(1, 2, &[0, 1]);
        assert!(beta.split_at(3).is_err());
        assert!(beta.split_at(-2).is_err());
    }

    /// Brute-force oracle: every decomposition `β = β1 ⊕ β2` with
    /// `cod(β1) = [i]` is found by exhaustive search over candidate pairs.
    fn split_candidates(beta: &OrdinalMap, i: i32) -> Vec<(i32, OrdinalMap, OrdinalMap)> {
        let l = beta.dom().0;
        let k = beta.cod().0;
        let mut found = Vec::new();
        for j in -1..=l {
            for left in enumerate_maps(Ordinal(j), Ordinal(i)) {
                for right in enumerate_maps(Ordinal(l - j - 1), Ordinal(k - i - 1)) {
                    if left.ordinal_sum(&right) == *beta {
                        found.push((j, left.clone(), right));
                    }
                }
            }
        }
        found
    }

    #[test]
    fn split_at_unique_small() {
        for l in -1..=3 {
            for k in -1..=3 {
                for beta in enumerate_maps(Ordinal(l), Ordinal(k)) {
                    for i in -1..=k {
                        let found = split_candidates(&beta, i);
                        assert_eq!(found.len(), 1, "beta={beta}, i={i}");
                        let (j, left, right) = beta.split_at(i).unwrap();
                        assert_eq!(found[0], (j, left.clone(), right.clone()));
                        assert_eq!(left.ordinal_sum(&right), beta);
                    }
                }
            }
        }
    }

    #[test]
    fn coface_codegeneracy_generators() {
        assert_eq!(coface(1, 0).unwrap(), map(0, 1, &[1]));
        assert_eq!(codegeneracy(0, 0).unwrap(), map(1, 0, &[0, 0]));
        let c = coface(2, 2).unwrap().compose(&codegeneracy(1, 1).unwrap()).unwrap();
        assert_eq!(c, map(2, 2, &[0, 1, 1]));
        assert!(coface(2, 3).is_err());
        assert!(codegeneracy(1, 2).is_err());
    }

    #[test]
    fn ez_factor_examples() {
        let id3 = OrdinalMap::identity(Ordinal(3));
        assert_eq!(id3.ez_factor(), (id3.clone(), id3.clone()));

        let f = map(1, 2, &[1, 1]);
        let (inj, surj) = f.ez_factor();
        assert_eq!(inj, map(0, 2, &[1]));
        assert_eq!(surj, map(1, 0, &[0, 0]));

        let g = map(2, 2, &[0, 0, 2]);
        let (inj, surj) = g.ez_factor();
        assert_eq!(inj, map(1, 2, &[0, 2]));
        assert_eq!(surj, map(2, 1, &[0, 0, 1]));
    }

    #[test]
    fn ez_factor_unique_small() {
        // exactly one (inj, surj) factorization over exhaustive candidates
        for l in 0..=4 {
            for k in 0..=4 {
                for beta in enumerate_maps(Ordinal(l), Ordinal(k)) {
                    let mut count = 0;
                    for m in -1..=k {
                        for inj in enumerate_injections(Ordinal(m), Ordinal(k)) {
                            for surj in enumerate_surjections(Ordinal(l), Ordinal(m)) {
                                if inj.compose(&surj).unwrap() == beta {
                                    count += 1;
                                }
                            }
                        }
                    }
                    assert_eq!(count, 1, "beta={beta}");
                    let (inj, surj) = beta.ez_factor();
                    assert_eq!(inj.compose(&surj).unwrap(), beta);
                    assert!(inj.is_injective());
                    assert!(surj.is_surjective());
                }
            }
        }
    }

    #[test]
    fn enumerate_maps_counts() {
        assert_eq!(enumerate_maps(Ordinal(1), Ordinal(1)).len(), 3);
        for k in -1..=4 {
            assert_eq!(enumerate_maps(Ordinal::EMPTY, Ordinal(k)).len(), 1);
        }
        assert_eq!(enumerate_maps(Ordinal(2), Ordinal(0)).len(), 1);
        for l in 0..=4usize {
            for k in 0..=4usize {
                let expect = binomial(k + l + 1, l + 1);
                assert_eq!(
                    enumerate_maps(Ordinal(l as i32), Ordinal(k as i32)).len(),
                    expect
                );
            }
        }
        // no maps from a nonempty order into [-1]
        assert!(enumerate_maps(Ordinal(2), Ordinal::EMPTY).is_empty());
    }

    #[test]
    fn composition_associative_small() {
        let objs = [-1, 0, 1, 2, 3];
        for &a in &objs {
            for &b in &objs {
                for &c in &objs {
                    for &d in &objs {
                        for f in enumerate_maps(Ordinal(a), Ordinal(b)) {
                            for g in enumerate_maps(Ordinal(b), Ordinal(c)) {
                                for h in enumerate_maps(Ordinal(c), Ordinal(d)) {
                                    let lhs =
                                        h.compose(&g).unwrap().compose(&f).unwrap();
                                    let rhs =
                                        h.compose(&g.compose(&f).unwrap()).unwrap();
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flat_serialization() {
        let beta = map(2, 3, &[0, 1, 3]);
        assert_eq!(beta.flat(), vec![2, 3, 0, 1, 3]);
        assert_eq!(OrdinalMap::empty_to(Ordinal(2)).flat(), vec![-1, 2]);
    }
}
