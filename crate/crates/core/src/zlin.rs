//! Exact integer linear algebra: Smith normal form, cokernels, finite abelian
//! groups and their characters.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, QMatrix, QVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("sublattice is not contained in the superlattice")]
    NotSublattice,
    #[error("sublattice has infinite index (torsion-free quotient direction of rank {0})")]
    InfiniteIndex(usize),
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have the same length; `cols`
    /// is needed to express `k x 0` shapes.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, all of length `dim`.
    pub fn from_columns(columns: &[Vec<BigInt>], dim: usize) -> Self {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), dim);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| BigRational::from_integer(self[(i, j)].clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        linalg::bareiss_det(&self.to_rows())
    }

    pub fn rank(&self) -> usize {
        linalg::integer_rank(&self.to_rows())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries forming a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries of `d`.
    pub fn invariants(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

/// Position of the smallest nonzero absolute value in the lower-right block
/// starting at `(t, t)`; ties resolved by row-major order.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let f = -q;
                d.add_row(i, t, &f);
                u.add_row(i, t, &f);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let f = -q;
                d.add_col(j, t, &f);
                v.add_col(j, t, &f);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Divisibility: fold an offending row into row t and retry.
            for i in t + 1..m {
                for j in t + 1..n {
                    if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> SnfDecomposition {
    for t in 0..d.rows.min(d.cols) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfDecomposition { u, d, v }
}

/// Finite abelian group `Z/f1 + ... + Z/fk + Z^free_rank` with `f1 | f2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariant_factors: vec![], free_rank: 0 }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup { invariant_factors: vec![BigInt::from(n)], free_rank: 0 }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when the group has a free part.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Every element of the torsion part, lexicographic in the components.
    pub fn elements(&self) -> Vec<Character> {
        let mut out = vec![Character { components: vec![] }];
        for f in &self.invariant_factors {
            let f = f.to_u64().expect("invariant factor too large to enumerate");
            out = out
                .into_iter()
                .flat_map(|c| {
                    (0..f).map(move |r| {
                        let mut comps = c.components.clone();
                        comps.push(BigInt::from(r));
                        Character { components: comps }
                    })
                })
                .collect();
        }
        out
    }

    pub fn zero(&self) -> Character {
        Character { components: vec![BigInt::zero(); self.invariant_factors.len()] }
    }

    pub fn reduce(&self, raw: &[BigInt]) -> Character {
        assert_eq!(raw.len(), self.invariant_factors.len());
        Character {
            components: raw.iter().zip(&self.invariant_factors).map(|(x, f)| x.mod_floor(f)).collect(),
        }
    }

    pub fn add(&self, a: &Character, b: &Character) -> Character {
        let raw: Vec<BigInt> = a.components.iter().zip(&b.components).map(|(x, y)| x + y).collect();
        self.reduce(&raw)
    }

    pub fn sub(&self, a: &Character, b: &Character) -> Character {
        let raw: Vec<BigInt> = a.components.iter().zip(&b.components).map(|(x, y)| x - y).collect();
        self.reduce(&raw)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|x| format!("Z/{x}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Element of the torsion part of a [`FiniteAbelianGroup`], one residue per
/// invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub components: Vec<BigInt>,
}

impl Character {
    pub fn from_i64(components: &[i64]) -> Self {
        Character { components: components.iter().map(|&x| BigInt::from(x)).collect() }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cokernel of `a: Z^cols -> Z^rows`.
pub fn cokernel(a: &IntMatrix) -> FiniteAbelianGroup {
    let snf = smith_normal_form(a);
    let inv = snf.invariants();
    FiniteAbelianGroup {
        free_rank: a.rows() - inv.len(),
        invariant_factors: inv.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// Quotient of a full-rank lattice by a finite-index sublattice, with an
/// explicit transversal and a classifier sending lattice vectors to group
/// elements.
#[derive(Debug, Clone)]
pub struct LatticeQuotient {
    pub group: FiniteAbelianGroup,
    /// Coset representatives, reduced into the half-open parallelepiped
    /// spanned by the sublattice basis. Ordered like `group.elements()`.
    pub representatives: Vec<QVector>,
    sup_inv: QMatrix,
    sub: QMatrix,
    sub_inv: QMatrix,
    u: IntMatrix,
    /// positions of the nontrivial invariant factors on the SNF diagonal
    nontrivial: Vec<usize>,
}

impl LatticeQuotient {
    /// Class of a superlattice vector, `None` if it is not in the superlattice.
    pub fn classify(&self, v: &[BigRational]) -> Option<Character> {
        let coords = self.sup_inv.mul_vec(v);
        let ints = linalg::as_integers(&coords)?;
        let y = self.u.mul_vec(&ints);
        let raw: Vec<BigInt> = self.nontrivial.iter().map(|&i| y[i].clone()).collect();
        Some(self.group.reduce(&raw))
    }

    /// Canonical representative of `v` modulo the sublattice.
    pub fn reduce(&self, v: &[BigRational]) -> QVector {
        let w: Vec<BigRational> = self.sub_inv.mul_vec(v).into_iter().map(|x| &x - x.floor()).collect();
        self.sub.mul_vec(&w)
    }

    pub fn representative(&self, chi: &Character) -> &QVector {
        let idx = self.group.elements().iter().position(|c| c == chi).expect("character outside group");
        &self.representatives[idx]
    }

    pub fn index(&self) -> usize {
        self.representatives.len()
    }
}

/// Quotient `sup / sub` of two lattices given by basis columns (rational
/// coordinates in a common ambient space).
pub fn character_quotient(sup: &QMatrix, sub: &QMatrix) -> Result<LatticeQuotient, LatticeError> {
    let r = sup.rows();
    if sup.cols() != r || sub.rows() != r || sub.cols() != r {
        return Err(LatticeError::Shape(format!(
            "expected square bases of rank {r}, got {}x{} over {}x{}",
            sup.rows(),
            sup.cols(),
            sub.rows(),
            sub.cols()
        )));
    }
    let sup_inv = sup.inverse().ok_or_else(|| LatticeError::Shape("superlattice basis is singular".into()))?;
    let k_rat = sup_inv.mul(sub);
    let k = k_rat.to_integer().ok_or(LatticeError::NotSublattice)?;
    let snf = smith_normal_form(&k);
    let rank = snf.rank();
    if rank < r {
        return Err(LatticeError::InfiniteIndex(r - rank));
    }
    let sub_inv = sub.inverse().ok_or(LatticeError::InfiniteIndex(r - rank))?;
    let diag = snf.d.diagonal();
    let nontrivial: Vec<usize> = (0..r).filter(|&i| !diag[i].is_one()).collect();
    let group = FiniteAbelianGroup {
        invariant_factors: nontrivial.iter().map(|&i| diag[i].clone()).collect(),
        free_rank: 0,
    };
    let u_inv = snf.u.to_rational().inverse().expect("unimodular");
    let mut representatives = Vec::new();
    for chi in group.elements() {
        let mut y = vec![BigRational::zero(); r];
        for (c, &i) in chi.components.iter().zip(&nontrivial) {
            y[i] = BigRational::from_integer(c.clone());
        }
        let v = sup.mul_vec(&u_inv.mul_vec(&y));
        let w: Vec<BigRational> = sub_inv.mul_vec(&v).into_iter().map(|x| &x - x.floor()).collect();
        representatives.push(sub.mul_vec(&w));
    }
    Ok(LatticeQuotient { group, representatives, sup_inv, sub: sub.clone(), sub_inv, u: snf.u, nontrivial })
}

/// Basis (as columns) of the saturated integer kernel of `a`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let n = a.cols();
    let cols: Vec<Vec<BigInt>> = (rank..n).map(|j| snf.v.column(j)).collect();
    IntMatrix::from_columns(&cols, n)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let inv = s.invariants();
        for w in inv.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_identity() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn snf_one_by_one() {
        for n in [-7i64, 0, 1, 5] {
            let s = check(&m(&[vec![n]]));
            assert_eq!(s.d[(0, 0)], BigInt::from(n.abs()));
        }
    }

    #[test]
    fn snf_two_by_two() {
        let s = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_forces_divisibility() {
        let s = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_empty_shapes() {
        let s = check(&IntMatrix::zeros(0, 0));
        assert_eq!(s.d.rows(), 0);
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.v, IntMatrix::identity(3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn cokernels() {
        assert_eq!(cokernel(&m(&[vec![5]])), FiniteAbelianGroup::cyclic(5));
        assert!(cokernel(&IntMatrix::identity(3)).is_trivial());
        let g = cokernel(&m(&[vec![2, 0], vec![0, 0]]));
        assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(g.free_rank, 1);
        assert!(cokernel(&IntMatrix::zeros(0, 0)).is_trivial());
    }

    fn q(rows: &[Vec<(i64, i64)>]) -> QMatrix {
        QMatrix::from_fn(rows.len(), rows[0].len(), |i, j| {
            BigRational::new(rows[i][j].0.into(), rows[i][j].1.into())
        })
    }

    #[test]
    fn quotient_of_fractional_line() {
        for n in 1..=6i64 {
            let qt = character_quotient(&q(&[vec![(1, n)]]), &q(&[vec![(1, 1)]])).unwrap();
            assert_eq!(qt.index(), n as usize);
            let reps: Vec<BigRational> = qt.representatives.iter().map(|v| v[0].clone()).collect();
            let mut expected: Vec<BigRational> = (0..n).map(|i| BigRational::new(i.into(), n.into())).collect();
            let mut got = reps.clone();
            got.sort();
            expected.sort();
            assert_eq!(got, expected);
            // classification inverts the representative map
            for (chi, rep) in qt.group.elements().iter().zip(&qt.representatives) {
                assert_eq!(qt.classify(rep).as_ref(), Some(chi));
            }
        }
    }

    #[test]
    fn quotient_of_product() {
        let sup = q(&[vec![(1, 2), (0, 1)], vec![(0, 1), (1, 3)]]);
        let qt = character_quotient(&sup, &QMatrix::identity(2)).unwrap();
        assert_eq!(qt.group.order(), Some(BigInt::from(6)));
        assert_eq!(qt.index(), 6);
        // brute-force coset enumeration over the (1/2)Z x (1/3)Z grid in [0,1)^2
        let mut brute = Vec::new();
        for a in 0..2i64 {
            for b in 0..3i64 {
                brute.push(vec![BigRational::new(a.into(), 2.into()), BigRational::new(b.into(), 3.into())]);
            }
        }
        let mut reps = qt.representatives.clone();
        reps.sort();
        brute.sort();
        assert_eq!(reps, brute);
    }

    #[test]
    fn quotient_errors() {
        let sing = q(&[vec![(1, 1), (0, 1)], vec![(0, 1), (0, 1)]]);
        assert!(matches!(
            character_quotient(&QMatrix::identity(2), &sing),
            Err(LatticeError::InfiniteIndex(1))
        ));
        let half = q(&[vec![(1, 2)]]);
        assert_eq!(character_quotient(&QMatrix::identity(1), &half).unwrap_err(), LatticeError::NotSublattice);
    }

    #[test]
    fn trivial_quotient() {
        let qt = character_quotient(&QMatrix::identity(1), &QMatrix::identity(1)).unwrap();
        assert!(qt.group.is_trivial());
        assert_eq!(qt.representatives, vec![vec![BigRational::zero()]]);
    }

    #[test]
    fn kernel_basis() {
        let k = integer_kernel(&m(&[vec![1, 1, 0]]));
        assert_eq!(k.cols(), 2);
        assert!(m(&[vec![1, 1, 0]]).mul(&k).is_zero());
    }
}
