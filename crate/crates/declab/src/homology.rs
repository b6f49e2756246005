//! Exact integer homology.
//!
//! Normalized chains over the nondegenerate cells, Smith normal form with
//! unimodular transforms on both sides, homology groups as (rank, torsion),
//! induced maps in kernel coordinates, and the retraction identity
//! `d_1 ∘ s_0 = id` on cotensor levels. All arithmetic is exact: the SNF
//! runs on checked machine integers and escalates to arbitrary precision on
//! overflow instead of ever wrapping.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::kan::total::Cotensor;
use crate::kan::Witness;
use crate::ordinal::{codegeneracy, coface, Ordinal, OrdinalMap};
use crate::sset::build::simplex;
use crate::sset::{CellId, Levelwise, SSet, Simplex};

/// A dense integer matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatZ {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl MatZ {
    pub fn zeros(rows: usize, cols: usize) -> MatZ {
        MatZ { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> MatZ {
        let mut m = MatZ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> MatZ {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        MatZ { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn entries(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }

    /// Exact product, accumulated in 128 bits; panics on entries that leave
    /// the machine range rather than wrapping.
    pub fn mul(&self, other: &MatZ) -> MatZ {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = MatZ::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as i128 * other.get(k, c) as i128;
                }
                out.set(r, c, i64::try_from(acc).expect("matrix product overflow"));
            }
        }
        out
    }

    pub fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| BigInt::from(self.get(r, c))).collect())
            .collect()
    }
}

impl fmt::Display for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Fraction-free determinant (Bareiss) over arbitrary precision.
pub fn det_big(m: &MatZ) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_big();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Scalar interface for the SNF kernel: checked ring operations so machine
/// integers can report overflow and arbitrary precision can run the same
/// code.
trait SnfScalar: Clone + PartialEq + Eq + Ord + fmt::Debug {
    fn is_zero_val(&self) -> bool;
    fn is_negative_val(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering;
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self>; // self - q·b
    fn checked_neg_val(&self) -> Option<Self>;
    fn div_trunc(&self, o: &Self) -> Self;
    fn rem_trunc(&self, o: &Self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_i64(&self) -> Option<i64>;
}

impl SnfScalar for i64 {
    fn is_zero_val(&self) -> bool {
        *self == 0
    }
    fn is_negative_val(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &i64) -> std::cmp::Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_sub_mul(&self, q: &i64, b: &i64) -> Option<i64> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn checked_neg_val(&self) -> Option<i64> {
        self.checked_neg()
    }
    fn div_trunc(&self, o: &i64) -> i64 {
        self / o
    }
    fn rem_trunc(&self, o: &i64) -> i64 {
        self % o
    }
    fn from_i64(v: i64) -> i64 {
        v
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
}

impl SnfScalar for BigInt {
    fn is_zero_val(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative_val(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, other: &BigInt) -> std::cmp::Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn checked_sub_mul(&self, q: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(self - q * b)
    }
    fn checked_neg_val(&self) -> Option<BigInt> {
        Some(-self)
    }
    fn div_trunc(&self, o: &BigInt) -> BigInt {
        self / o
    }
    fn rem_trunc(&self, o: &BigInt) -> BigInt {
        self % o
    }
    fn from_i64(v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

#[derive(Debug)]
struct Overflow;

struct Work<T> {
    rows: usize,
    cols: usize,
    w: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    uinv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    vinv: Vec<Vec<T>>,
}

impl<T: SnfScalar> Work<T> {
    fn new(m: &MatZ) -> Work<T> {
        let id = |n: usize| -> Vec<Vec<T>> {
            (0..n).map(|i| (0..n).map(|j| T::from_i64(i64::from(i == j))).collect()).collect()
        };
        Work {
            rows: m.rows,
            cols: m.cols,
            w: (0..m.rows)
                .map(|r| (0..m.cols).map(|c| T::from_i64(m.get(r, c))).collect())
                .collect(),
            u: id(m.rows),
            uinv: id(m.rows),
            v: id(m.cols),
            vinv: id(m.cols),
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.w.swap(a, b);
        self.u.swap(a, b);
        for r in 0..self.rows {
            self.uinv[r].swap(a, b);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.w[r].swap(a, b);
        }
        for r in 0..self.cols {
            self.v[r].swap(a, b);
        }
        self.vinv.swap(a, b);
    }

    fn row_neg(&mut self, r: usize) -> Result<(), Overflow> {
        for c in 0..self.cols {
            self.w[r][c] = self.w[r][c].checked_neg_val().ok_or(Overflow)?;
        }
        for c in 0..self.rows {
            self.u[r][c] = self.u[r][c].checked_neg_val().ok_or(Overflow)?;
            self.uinv[c][r] = self.uinv[c][r].checked_neg_val().ok_or(Overflow)?;
        }
        Ok(())
    }

    /// `row[dst] -= q · row[src]`, mirrored on `U`; the inverse operation
    /// lands on the columns of `U⁻¹`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let neg_q = q.checked_neg_val().ok_or(Overflow)?;
        for c in 0..self.cols {
            self.w[dst][c] = self.w[dst][c].checked_sub_mul(q, &self.w[src][c]).ok_or(Overflow)?;
        }
        for c in 0..self.rows {
            self.u[dst][c] = self.u[dst][c].checked_sub_mul(q, &self.u[src][c]).ok_or(Overflow)?;
        }
        for r in 0..self.rows {
            self.uinv[r][src] =
                self.uinv[r][src].checked_sub_mul(&neg_q, &self.uinv[r][dst]).ok_or(Overflow)?;
        }
        Ok(())
    }

    /// `col[dst] -= q · col[src]`, mirrored on `V`; the inverse operation
    /// lands on the rows of `V⁻¹`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let neg_q = q.checked_neg_val().ok_or(Overflow)?;
        for r in 0..self.rows {
            self.w[r][dst] = self.w[r][dst].checked_sub_mul(q, &self.w[r][src]).ok_or(Overflow)?;
        }
        for r in 0..self.cols {
            self.v[r][dst] = self.v[r][dst].checked_sub_mul(q, &self.v[r][src]).ok_or(Overflow)?;
        }
        for c in 0..self.cols {
            self.vinv[src][c] =
                self.vinv[src][c].checked_sub_mul(&neg_q, &self.vinv[dst][c]).ok_or(Overflow)?;
        }
        Ok(())
    }

    /// Smallest nonzero entry by absolute value in the trailing submatrix,
    /// ties broken by row-major position.
    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                if self.w[r][c].is_zero_val() {
                    continue;
                }
                match best {
                    Some((br, bc))
                        if self.w[br][bc].abs_cmp(&self.w[r][c]) != std::cmp::Ordering::Greater => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Result<(), Overflow> {
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            loop {
                let Some((pr, pc)) = self.pick_pivot(t) else {
                    return Ok(());
                };
                if pr != t {
                    self.row_swap(t, pr);
                }
                if pc != t {
                    self.col_swap(t, pc);
                }
                if self.w[t][t].is_negative_val() {
                    self.row_neg(t)?;
                }
                let mut dirty = false;
                for r in t + 1..self.rows {
                    if !self.w[r][t].is_zero_val() {
                        let q = self.w[r][t].div_trunc(&self.w[t][t]);
                        self.row_axpy(r, t, &q)?;
                        dirty |= !self.w[r][t].is_zero_val();
                    }
                }
                for c in t + 1..self.cols {
                    if !self.w[t][c].is_zero_val() {
                        let q = self.w[t][c].div_trunc(&self.w[t][t]);
                        self.col_axpy(c, t, &q)?;
                        dirty |= !self.w[t][c].is_zero_val();
                    }
                }
                if dirty {
                    continue;
                }
                // everything remaining must be divisible by the pivot
                let piv = self.w[t][t].clone();
                let offender = (t + 1..self.rows)
                    .flat_map(|r| (t + 1..self.cols).map(move |c| (r, c)))
                    .find(|&(r, c)| !self.w[r][c].rem_trunc(&piv).is_zero_val());
                if let Some((r, _)) = offender {
                    let minus_one = T::from_i64(-1);
                    self.row_axpy(t, r, &minus_one)?;
                    continue;
                }
                break;
            }
        }
        Ok(())
    }
}

/// Smith normal form `U · M · V = D` with recorded inverses.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: MatZ,
    pub u: MatZ,
    pub uinv: MatZ,
    pub v: MatZ,
    pub vinv: MatZ,
    /// Whether machine arithmetic overflowed and the reduction re-ran on
    /// arbitrary precision.
    pub escalated: bool,
}

impl Snf {
    pub fn rank(&self) -> usize {
        let n = self.d.rows.min(self.d.cols);
        (0..n).take_while(|&i| self.d.get(i, i) != 0).count()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<i64> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d.get(i, i)).take_while(|&v| v != 0).collect()
    }

    /// Invariant factors `> 1`, each dividing the next.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&v| v > 1).collect()
    }

    /// Columns of `V` spanning the kernel of `M`.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (r..self.d.cols).map(|c| self.v.column(c)).collect()
    }

    /// Coordinates of a kernel vector in the kernel basis; `None` when the
    /// vector is not in the kernel.
    pub fn kernel_coords(&self, w: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(w.len(), self.d.cols);
        let r = self.rank();
        let mut coords = Vec::with_capacity(self.d.cols - r);
        for row in 0..self.d.cols {
            let mut acc: i128 = 0;
            for (c, &wc) in w.iter().enumerate() {
                acc += self.vinv.get(row, c) as i128 * wc as i128;
            }
            let value = i64::try_from(acc).expect("kernel coordinate overflow");
            if row < r {
                if value != 0 {
                    return None;
                }
            } else {
                coords.push(value);
            }
        }
        Some(coords)
    }
}

fn extract<T: SnfScalar>(work: &Work<T>) -> Option<(MatZ, MatZ, MatZ, MatZ, MatZ)> {
    let to_mat = |m: &Vec<Vec<T>>, rows: usize, cols: usize| -> Option<MatZ> {
        let mut out = MatZ::zeros(rows, cols);
        for (r, row) in m.iter().take(rows).enumerate() {
            for (c, v) in row.iter().take(cols).enumerate() {
                out.set(r, c, v.to_i64()?);
            }
        }
        Some(out)
    };
    Some((
        to_mat(&work.w, work.rows, work.cols)?,
        to_mat(&work.u, work.rows, work.rows)?,
        to_mat(&work.uinv, work.rows, work.rows)?,
        to_mat(&work.v, work.cols, work.cols)?,
        to_mat(&work.vinv, work.cols, work.cols)?,
    ))
}

fn big_product(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    (0..rows)
        .map(|r| {
            (0..cols).map(|c| (0..inner).map(|k| &a[r][k] * &b[k][c]).sum::<BigInt>()).collect()
        })
        .collect()
}

fn verify_snf(m: &MatZ, s: &Snf) {
    // U·M·V = D over arbitrary precision
    let umv = big_product(&big_product(&s.u.to_big(), &m.to_big()), &s.v.to_big());
    assert_eq!(umv, s.d.to_big(), "SNF postcondition U·M·V = D failed");
    // integer inverses exist, hence det = ±1
    assert_eq!(
        big_product(&s.u.to_big(), &s.uinv.to_big()),
        MatZ::identity(s.u.rows).to_big(),
        "U·U⁻¹ ≠ I"
    );
    assert_eq!(
        big_product(&s.v.to_big(), &s.vinv.to_big()),
        MatZ::identity(s.v.rows).to_big(),
        "V·V⁻¹ ≠ I"
    );
    let n = s.d.rows.min(s.d.cols);
    for r in 0..s.d.rows {
        for c in 0..s.d.cols {
            if r != c {
                assert_eq!(s.d.get(r, c), 0, "D not diagonal");
            }
        }
    }
    let mut prev: Option<i64> = None;
    for i in 0..n {
        let v = s.d.get(i, i);
        assert!(v >= 0, "negative invariant factor");
        if let Some(p) = prev {
            if v != 0 {
                assert!(p != 0 && v % p == 0, "invariant factors not a divisibility chain");
            }
        }
        prev = Some(v);
    }
}

/// Smith normal form with self-checked postconditions. Machine-integer
/// arithmetic first; re-runs on arbitrary precision after an overflow.
pub fn snf(m: &MatZ) -> Snf {
    snf_impl(m, false)
}

fn snf_impl(m: &MatZ, force_big: bool) -> Snf {
    let fast = if force_big {
        Err(Overflow)
    } else {
        (|| -> Result<Option<Snf>, Overflow> {
            let mut work = Work::<i64>::new(m);
            work.reduce()?;
            Ok(extract(&work).map(|(d, u, uinv, v, vinv)| Snf {
                d,
                u,
                uinv,
                v,
                vinv,
                escalated: false,
            }))
        })()
    };
    let result = match fast {
        Ok(Some(s)) => s,
        _ => {
            let mut work = Work::<BigInt>::new(m);
            work.reduce().expect("arbitrary-precision reduction cannot overflow");
            let (d, u, uinv, v, vinv) =
                extract(&work).expect("Smith normal form does not fit in 64-bit integers");
            Snf { d, u, uinv, v, vinv, escalated: true }
        }
    };
    verify_snf(m, &result);
    result
}

/// A finitely generated abelian group as rank plus invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbGroup {
    pub fn free(rank: usize) -> AbGroup {
        AbGroup { rank, torsion: Vec::new() }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Chain complex of free abelian groups with labeled bases.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub labels: Vec<Vec<String>>,
    /// `boundaries[n] : C_n -> C_{n-1}`; `boundaries[0]` has zero rows.
    pub boundaries: Vec<MatZ>,
}

impl ChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(|v| v.len()).collect()
    }

    /// `∂ ∘ ∂ = 0` in every degree where the composite exists.
    pub fn validate(&self) -> Result<(), String> {
        for n in 1..self.boundaries.len() - 1 {
            if !self.boundaries[n].mul(&self.boundaries[n + 1]).is_zero() {
                return Err(format!("∂∂ ≠ 0 from degree {}", n + 1));
            }
        }
        Ok(())
    }

    /// Homology in degrees `0..=d` (requires boundaries through `d+1`).
    pub fn homology(&self, d: usize) -> Vec<AbGroup> {
        assert!(self.boundaries.len() > d + 1, "need boundaries through degree d+1");
        let snfs: Vec<Snf> = self.boundaries.iter().map(snf).collect();
        (0..=d)
            .map(|n| {
                let rank = self.labels[n].len() - snfs[n].rank() - snfs[n + 1].rank();
                AbGroup { rank, torsion: snfs[n + 1].torsion() }
            })
            .collect()
    }
}

/// Normalized chains of a cell presentation: the basis in degree `n` is the
/// set of `n`-cells, and a face contributes `(-1)^i` exactly when it is
/// nondegenerate.
pub fn normalized_chains(x: &SSet, d: usize) -> ChainComplex {
    let mut labels: Vec<Vec<String>> = Vec::new();
    for n in 0..=d + 1 {
        labels.push(
            (0..x.cell_count(n)).map(|i| x.cell_name(CellId { dim: n, idx: i }).to_string()).collect(),
        );
    }
    let mut boundaries = vec![MatZ::zeros(0, labels[0].len())];
    for n in 1..=d + 1 {
        let mut m = MatZ::zeros(labels[n - 1].len(), labels[n].len());
        for idx in 0..x.cell_count(n) {
            for i in 0..=n {
                let f = x.face(CellId { dim: n, idx }, i);
                if f.is_nondegenerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let r = f.cell.idx;
                    m.set(r, idx, m.get(r, idx) + sign);
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { labels, boundaries }
}

/// Normalized chains of any levelwise simplicial object: bases are the
/// elements not in the image of a degeneracy. Also returns the basis
/// elements so maps into the object can be turned into matrices.
pub fn chains_of<L: Levelwise>(obj: &L, d: usize) -> (ChainComplex, Vec<Vec<L::Elem>>) {
    let mut bases: Vec<Vec<L::Elem>> = Vec::new();
    for n in 0..=d + 1 {
        let level = obj.elems(n);
        let mut degenerate = std::collections::HashSet::new();
        if n >= 1 {
            for e in obj.elems(n - 1) {
                for i in 0..n as i32 {
                    degenerate.insert(obj.act_elem(&codegeneracy(n as i32 - 1, i).unwrap(), &e));
                }
            }
        }
        bases.push(level.into_iter().filter(|e| !degenerate.contains(e)).collect());
    }
    let labels = bases
        .iter()
        .enumerate()
        .map(|(n, v)| (0..v.len()).map(|i| format!("e{n}_{i}")).collect())
        .collect();
    let mut boundaries = vec![MatZ::zeros(0, bases[0].len())];
    for n in 1..=d + 1 {
        let index: HashMap<&L::Elem, usize> = bases[n - 1].iter().zip(0..).collect();
        let mut m = MatZ::zeros(bases[n - 1].len(), bases[n].len());
        for (col, e) in bases[n].iter().enumerate() {
            for i in 0..=n as i32 {
                let f = obj.act_elem(&coface(n as i32, i).unwrap(), e);
                if let Some(&r) = index.get(&f) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.set(r, col, m.get(r, col) + sign);
                }
            }
        }
        boundaries.push(m);
    }
    (ChainComplex { labels, boundaries }, bases)
}

/// A chain map as one matrix per degree, checked to commute with the
/// boundaries.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub mats: Vec<MatZ>,
}

/// The chain map induced by a simplicial map on normalized chains: a cell
/// whose image is degenerate contributes zero.
pub fn induced(
    f: &crate::sset::map::SMap,
    src: &SSet,
    dst: &SSet,
    d: usize,
) -> Result<ChainMap, String> {
    let src_chains = normalized_chains(src, d);
    let dst_chains = normalized_chains(dst, d);
    let mut mats = Vec::new();
    for n in 0..=d + 1 {
        let mut m = MatZ::zeros(dst.cell_count(n), src.cell_count(n));
        for idx in 0..src.cell_count(n) {
            let img = f.image_of_cell(CellId { dim: n, idx });
            if img.is_nondegenerate() {
                m.set(img.cell.idx, idx, 1);
            }
        }
        mats.push(m);
    }
    chain_map(&src_chains, &dst_chains, mats)
}

pub fn chain_map(
    src: &ChainComplex,
    dst: &ChainComplex,
    mats: Vec<MatZ>,
) -> Result<ChainMap, String> {
    if mats.len() != src.boundaries.len() {
        return Err("chain map has wrong number of degrees".into());
    }
    for (n, m) in mats.iter().enumerate() {
        if m.rows != dst.labels[n].len() || m.cols != src.labels[n].len() {
            return Err(format!("chain map has wrong shape in degree {n}"));
        }
    }
    for n in 1..mats.len() {
        let lhs = dst.boundaries[n].mul(&mats[n]);
        let rhs = mats[n - 1].mul(&src.boundaries[n]);
        if lhs != rhs {
            return Err(format!("chain map does not commute with ∂ in degree {n}"));
        }
    }
    Ok(ChainMap { mats })
}

/// A verified homology isomorphism: the common groups, plus the induced map
/// per degree as an integer matrix written in the kernel bases the Smith
/// normal forms of the boundaries provide.
#[derive(Clone, Debug)]
pub struct HomologyIso {
    pub groups: Vec<AbGroup>,
    pub induced: Vec<MatZ>,
}

/// Is the induced map on homology an isomorphism in degrees `0..=d`?
///
/// The groups must agree as (rank, torsion) and the induced map must be
/// surjective: its cokernel presentation `[image | relations]` reduces to
/// nothing. A surjection between isomorphic finitely generated abelian
/// groups is an isomorphism.
pub fn is_homology_iso(
    src: &ChainComplex,
    dst: &ChainComplex,
    f: &ChainMap,
    d: usize,
) -> Result<HomologyIso, String> {
    let hs = src.homology(d);
    let ht = dst.homology(d);
    let mut induced = Vec::new();
    for n in 0..=d {
        if hs[n] != ht[n] {
            return Err(format!("H_{n} differs: {} vs {}", hs[n], ht[n]));
        }
        let snf_src = snf(&src.boundaries[n]);
        let snf_dst = snf(&dst.boundaries[n]);
        let kernel_src = snf_src.kernel_basis();
        let s_src = kernel_src.len();
        let s_dst = snf_dst.kernel_basis().len();
        // image of each source kernel generator, in target kernel coordinates
        let mut columns: Vec<Vec<i64>> = Vec::new();
        for k in &kernel_src {
            let mut image = vec![0i128; dst.labels[n].len()];
            for (c, &coef) in k.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                for (r, slot) in image.iter_mut().enumerate() {
                    *slot += f.mats[n].get(r, c) as i128 * coef as i128;
                }
            }
            let image: Vec<i64> = image
                .into_iter()
                .map(|v| i64::try_from(v).expect("induced image overflow"))
                .collect();
            let coords = snf_dst
                .kernel_coords(&image)
                .ok_or_else(|| format!("induced map leaves the kernel in degree {n}"))?;
            columns.push(coords);
        }
        let mut image_matrix = MatZ::zeros(s_dst, s_src);
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                image_matrix.set(r, c, v);
            }
        }
        induced.push(image_matrix);
        // relations: boundaries from one degree up, in kernel coordinates
        for c in 0..dst.boundaries[n + 1].cols {
            let col = dst.boundaries[n + 1].column(c);
            let coords = snf_dst
                .kernel_coords(&col)
                .ok_or_else(|| format!("∂∂ ≠ 0 detected in degree {}", n + 1))?;
            columns.push(coords);
        }
        let mut presentation = MatZ::zeros(s_dst, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                presentation.set(r, c, v);
            }
        }
        let coker = snf(&presentation);
        let units = coker.diagonal().iter().filter(|&&v| v == 1).count();
        if units != s_dst {
            return Err(format!("induced map on H_{n} is not surjective"));
        }
    }
    Ok(HomologyIso { groups: hs, induced })
}

/// The retraction identity on cotensor levels: the maps induced by
/// `d^1 : Δ[0] -> Δ[1]` and `s^0 : Δ[1] -> Δ[0]` compose to the identity of
/// `(X^{Δ[0]})_n ≅ X_n` for all `n ≤ cutoff`.
pub fn verify_retraction(x: &SSet, cutoff: usize) -> Result<(), Witness> {
    let cot = Cotensor::new(x, simplex(1), cutoff);
    for n in 0..=cutoff {
        let std_n = cot.std(n);
        let top = Simplex::of_cell(CellId { dim: n, idx: 0 });
        // restricting along (id × d^1) evaluates at the pair whose interval
        // component is constant at the vertex d^1 hits, namely 0
        let vertex0 = Simplex {
            deg: OrdinalMap::constant(Ordinal(n as i32), Ordinal(0), 0).unwrap(),
            cell: CellId { dim: 0, idx: 0 },
        };
        let probe = cot.prism(n).simplex_of_pair(&std_n.space, &cot.exponent, &top, &vertex0);
        for s in x.level(n) {
            let lifted = cot.constant_path(n, &s);
            let back = lifted.apply(x, &probe);
            if back != s {
                return Err(Witness {
                    note: "d_1 ∘ s_0 ≠ id on cotensor levels".into(),
                    beta: None,
                    level: Some(n),
                    lhs: Some(x.describe(&back)),
                    rhs: Some(x.describe(&s)),
                });
            }
        }
    }
    Ok(())
}

/// Verifies that the unit `X -> T Dec X` induces isomorphisms on homology in
/// degrees `0..=d`, computing the right-hand side on the path-space levels
/// through the comparison bijection.
pub fn unit_homology_check(
    x: &SSet,
    d: usize,
    budget: crate::sset::map::Budget,
) -> Result<HomologyIso, Witness> {
    use crate::kan::total::{comparison_map, unit_elem, Total};
    use crate::sset::bisset::dec;

    let src = normalized_chains(x, d);
    src.validate().map_err(Witness::note)?;
    let dx = dec(x);
    let total = Total::with_budget(dx.clone(), d + 1, budget);
    let cot = Cotensor::with_budget(x, simplex(1), d + 1, budget);
    cot.warm(d + 1).map_err(|e| Witness::note(format!("cotensor: {e}")))?;
    let (dst, bases) = chains_of(&cot, d);
    dst.validate().map_err(Witness::note)?;
    let mut mats = Vec::new();
    for (n, basis) in bases.iter().enumerate() {
        let index: HashMap<&crate::sset::map::SMap, usize> = basis.iter().zip(0..).collect();
        let mut m = MatZ::zeros(basis.len(), x.cell_count(n));
        for idx in 0..x.cell_count(n) {
            let s = Simplex::of_cell(CellId { dim: n, idx });
            let u = unit_elem(x, total.dec_cells(n), &s);
            let g = comparison_map(x, &dx, &total, &cot, n, &u);
            // a degenerate image contributes nothing to normalized chains
            if let Some(&r) = index.get(&g) {
                m.set(r, idx, 1);
            }
        }
        mats.push(m);
    }
    let f = chain_map(&src, &dst, mats).map_err(Witness::note)?;
    is_homology_iso(&src, &dst, &f, d).map_err(Witness::note)
}

/// Report row for one homology degree.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyRow {
    pub n: usize,
    pub rank: usize,
    pub torsion: Vec<i64>,
}

pub fn homology_rows(groups: &[AbGroup]) -> Vec<HomologyRow> {
    groups
        .iter()
        .enumerate()
        .map(|(n, g)| HomologyRow { n, rank: g.rank, torsion: g.torsion.clone() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::build::{boundary, quotient, simplex};

    #[test]
    fn snf_zero_and_identity() {
        let z = snf(&MatZ::zeros(2, 3));
        assert_eq!(z.rank(), 0);
        assert!(z.d.is_zero());
        let id = snf(&MatZ::identity(3));
        assert_eq!(id.diagonal(), vec![1, 1, 1]);
    }

    #[test]
    fn snf_diag_2_3() {
        let m = MatZ::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        assert_eq!(s.diagonal(), vec![1, 6]);
        assert!(!s.escalated);
        assert_eq!(det_big(&s.u).abs(), BigInt::one());
        assert_eq!(det_big(&s.v).abs(), BigInt::one());
    }

    #[test]
    fn snf_big_path_agrees_with_machine_path() {
        let mats = vec![
            MatZ::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            MatZ::from_rows(vec![vec![0, 0], vec![0, 2]]),
            MatZ::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]),
        ];
        for m in &mats {
            let fast = snf_impl(m, false);
            let slow = snf_impl(m, true);
            assert!(!fast.escalated);
            assert!(slow.escalated);
            assert_eq!(fast.d, slow.d);
        }
    }

    #[test]
    #[should_panic(expected = "does not fit in 64-bit")]
    fn snf_overflow_escalates_then_fails_loudly_when_unrepresentable() {
        // |i64::MIN| cannot be negated in machine arithmetic, so the
        // reduction escalates; the invariant factor 2^63 then has no i64
        // representation and the failure is loud, never a silent wrap
        let m = MatZ::from_rows(vec![vec![i64::MIN]]);
        let _ = snf(&m);
    }

    #[test]
    fn boundary_matrix_of_hollow_triangle() {
        // ∂_1 of ∂Δ[2] is the 3×3 vertex–edge incidence matrix with zero
        // column sums
        let cc = normalized_chains(&boundary(2), 1);
        let d1 = &cc.boundaries[1];
        assert_eq!((d1.rows, d1.cols), (3, 3));
        for c in 0..3 {
            let sum: i64 = (0..3).map(|r| d1.get(r, c)).sum();
            assert_eq!(sum, 0);
            let nonzero = (0..3).filter(|&r| d1.get(r, c) != 0).count();
            assert_eq!(nonzero, 2);
        }
        cc.validate().unwrap();
    }

    #[test]
    fn circle_boundary_vanishes() {
        let circle = quotient(&simplex(1), &boundary(1)).unwrap();
        let cc = normalized_chains(&circle, 1);
        assert!(cc.boundaries[1].is_zero());
    }

    #[test]
    fn dd_zero_on_simplex() {
        normalized_chains(&simplex(3), 2).validate().unwrap();
    }

    #[test]
    fn homology_of_corpus() {
        let h = normalized_chains(&simplex(2), 2).homology(2);
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::free(0), AbGroup::free(0)]);
        let h = normalized_chains(&boundary(3), 2).homology(2);
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::free(0), AbGroup::free(1)]);
        let circle = quotient(&simplex(1), &boundary(1)).unwrap();
        let h = normalized_chains(&circle, 1).homology(1);
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::free(1)]);
    }

    #[test]
    fn h0_rank_matches_pi0() {
        use crate::sset::build::disjoint_union;
        let spaces = vec![
            simplex(2),
            boundary(3),
            disjoint_union(&simplex(1), &boundary(1)),
            quotient(&simplex(1), &boundary(1)).unwrap(),
        ];
        for x in &spaces {
            let h = normalized_chains(x, 1).homology(0);
            assert_eq!(h[0].rank, crate::sset::pi0(x).len());
            assert!(h[0].torsion.is_empty());
        }
    }

    #[test]
    fn chains_of_levelwise_agrees_with_cells() {
        let x = boundary(2);
        let (cc, _) = chains_of(&x, 1);
        let direct = normalized_chains(&x, 1);
        assert_eq!(cc.dims(), direct.dims());
        assert_eq!(cc.homology(1), direct.homology(1));
    }

    #[test]
    fn identity_chain_map_is_homology_iso() {
        let x = boundary(3);
        let cc = normalized_chains(&x, 2);
        let mats = (0..=3).map(|n| MatZ::identity(x.cell_count(n))).collect();
        let f = chain_map(&cc, &cc, mats).unwrap();
        let h = is_homology_iso(&cc, &cc, &f, 2).unwrap();
        assert_eq!(h.groups[2], AbGroup::free(1));
        // the induced matrix on H_2 is 1×1 and invertible
        assert_eq!(h.induced[2].rows, 1);
        assert_eq!(h.induced[2].get(0, 0).abs(), 1);
    }

    #[test]
    fn collapse_is_h0_iso_and_inclusion_kills_h2() {
        // Δ[1] -> Δ[0] induces an iso on H_0
        let d1 = simplex(1);
        let d0 = simplex(0);
        let cc1 = normalized_chains(&d1, 1);
        let cc0 = normalized_chains(&d0, 1);
        let mats =
            vec![MatZ::from_rows(vec![vec![1, 1]]), MatZ::zeros(0, 1), MatZ::zeros(0, 0)];
        let f = chain_map(&cc1, &cc0, mats).unwrap();
        is_homology_iso(&cc1, &cc0, &f, 1).unwrap();

        // the inclusion ∂Δ[3] -> Δ[3] induces 0 on H_2
        let b = boundary(3);
        let d3 = simplex(3);
        let ccb = normalized_chains(&b, 2);
        let ccd = normalized_chains(&d3, 2);
        let mut mats = Vec::new();
        for n in 0..=3usize {
            let mut m = MatZ::zeros(d3.cell_count(n), b.cell_count(n));
            for idx in 0..b.cell_count(n) {
                let name = b.cell_name(CellId { dim: n, idx });
                let target = d3.cell_by_name(name).unwrap();
                m.set(target.idx, idx, 1);
            }
            mats.push(m);
        }
        let f = chain_map(&ccb, &ccd, mats).unwrap();
        assert!(is_homology_iso(&ccb, &ccd, &f, 2).is_err());
    }

    #[test]
    fn constant_self_map_of_circle_kills_h1() {
        let circle = quotient(&simplex(1), &boundary(1)).unwrap();
        let cc = normalized_chains(&circle, 1);
        // constant at the vertex: edge image is degenerate, hence 0
        let mats = vec![MatZ::identity(1), MatZ::zeros(1, 1), MatZ::zeros(0, 0)];
        let f = chain_map(&cc, &cc, mats).unwrap();
        assert!(is_homology_iso(&cc, &cc, &f, 1).is_err());
    }

    #[test]
    fn retraction_on_small_spaces() {
        verify_retraction(&simplex(0), 2).unwrap();
        verify_retraction(&simplex(1), 2).unwrap();
        verify_retraction(&boundary(2), 2).unwrap();
    }

    #[test]
    fn unit_is_homology_iso_for_circle() {
        let circle = quotient(&simplex(1), &boundary(1)).unwrap();
        let h = unit_homology_check(&circle, 1, crate::sset::map::Budget::default()).unwrap();
        assert_eq!(h.groups, vec![AbGroup::free(1), AbGroup::free(1)]);
    }

    #[test]
    fn dd_zero_on_whole_corpus_through_degree_four() {
        for expr in crate::cli::corpus() {
            let x = crate::cli::parse_space(expr).unwrap();
            normalized_chains(&x, 4).validate().unwrap_or_else(|e| panic!("{expr}: {e}"));
        }
    }
}
