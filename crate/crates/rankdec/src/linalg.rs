//! Dense linear algebra over GF(2^m), plus coordinate expansion over subfields.

use std::fmt;
use std::sync::Arc;

use crate::gf::{Elem, Field};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Elem>),
    None,
    /// Particular solution has every free variable set to zero.
    Many { particular: Vec<Elem>, kernel: Mat },
}

impl Mat {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if a row does not have `cols` entries.
    pub fn from_rows(field: Arc<Field>, cols: usize, rows: &[Vec<Elem>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        Mat {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) ^ f.mul(a, other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `v·M`.
    pub fn vec_mul(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o ^= f.mul(a, self.get(r, c));
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::Dimension("row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut out = Mat::zeros(self.field.clone(), self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let rows: Vec<Vec<Elem>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Mat::from_rows(self.field.clone(), self.cols, &rows)
    }

    /// Reduced row-echelon form; pivots are chosen in the leftmost nonzero
    /// column, from the topmost remaining row.
    pub fn rref(&self) -> Rref {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(p, rank);
            let inv = f.recip(m.get(rank, c));
            for j in c..m.cols {
                let v = f.mul(inv, m.get(rank, j));
                m.set(rank, j, v);
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j) ^ f.mul(factor, m.get(rank, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref { mat: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// All solutions of `A·x = b`.
pub fn solve_right(a: &Mat, b: &[Elem]) -> Result<Solution> {
    if b.len() != a.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows
        )));
    }
    let col = Mat::from_rows(a.field.clone(), 1, &b.iter().map(|&x| vec![x]).collect::<Vec<_>>());
    let aug = a.hcat(&col)?;
    let r = aug.rref();
    if r.pivots.last() == Some(&a.cols) {
        return Ok(Solution::None);
    }
    let mut x = vec![0; a.cols];
    for (i, &p) in r.pivots.iter().enumerate() {
        x[p] = r.mat.get(i, a.cols);
    }
    let kernel = right_kernel_basis(a);
    if kernel.rows == 0 {
        Ok(Solution::Unique(x))
    } else {
        Ok(Solution::Many {
            particular: x,
            kernel,
        })
    }
}

/// Canonical (rref) basis of `{x : M·x = 0}`, one vector per row.
pub fn right_kernel_basis(m: &Mat) -> Mat {
    let r = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (i, &p) in r.pivots.iter().enumerate() {
            v[p] = r.mat.get(i, free);
        }
        vecs.push(v);
    }
    row_space_basis(&Mat::from_rows(m.field.clone(), m.cols, &vecs))
}

/// Canonical (rref) basis of `{v : v·M = 0}`, one vector per row.
pub fn left_kernel_basis(m: &Mat) -> Mat {
    right_kernel_basis(&m.transpose())
}

/// Nonzero rows of the rref: the canonical basis of the row space.
pub fn row_space_basis(m: &Mat) -> Mat {
    let r = m.rref();
    let idx: Vec<usize> = (0..r.rank).collect();
    r.mat.select_rows(&idx)
}

/// GF(2) span of bit vectors, reduced on the highest set bit.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    slots: Vec<(u32, u64)>,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reduce(&self, mut x: u64) -> u64 {
        for &(bit, v) in &self.slots {
            if x >> bit & 1 == 1 {
                x ^= v;
            }
        }
        x
    }

    /// Adds `x`; returns false when it was already in the span.
    pub fn insert(&mut self, x: u64) -> bool {
        let r = self.reduce(x);
        if r == 0 {
            return false;
        }
        let bit = 63 - r.leading_zeros();
        let pos = self.slots.partition_point(|&(b, _)| b > bit);
        self.slots.insert(pos, (bit, r));
        true
    }

    pub fn contains(&self, x: u64) -> bool {
        self.reduce(x) == 0
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Matrix over GF(2) whose column j holds the bits of `cols[j]`.
pub(crate) fn bit_matrix(nbits: u32, cols: &[Elem]) -> Mat {
    let mut m = Mat::zeros(Field::gf2(), nbits as usize, cols.len());
    for (j, &x) in cols.iter().enumerate() {
        for i in 0..nbits {
            m.set(i as usize, j, x >> i & 1);
        }
    }
    m
}

/// Reads a GF(2) vector back as a bit vector.
pub(crate) fn bits_of(v: &[Elem]) -> Elem {
    v.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (b & 1) << i)
}

/// GF(2)-basis of the subfield GF(2^d) inside `field`, canonical.
pub fn subfield_basis(field: &Field, d: u32) -> Result<Vec<Elem>> {
    let m = field.m();
    if d == 0 || !m.is_multiple_of(d) {
        return Err(Error::InvalidArgument(format!(
            "subfield degree {d} does not divide {m}"
        )));
    }
    if d == m {
        return Ok((0..m).map(|i| 1u64 << i).collect());
    }
    let images: Vec<Elem> = (0..m).map(|i| field.frob(1 << i, d) ^ (1 << i)).collect();
    let k = right_kernel_basis(&bit_matrix(m, &images));
    Ok((0..k.rows()).map(|r| bits_of(k.row(r))).collect())
}

/// GF(2)-dimension of the GF(2^d)-span of `elems`, where `sub` is a
/// GF(2)-basis of GF(2^d).
pub fn subfield_span(field: &Field, elems: &[Elem], sub: &[Elem]) -> XorBasis {
    let mut xb = XorBasis::new();
    for &e in elems {
        for &w in sub {
            xb.insert(field.mul(w, e));
        }
    }
    xb
}

/// Coordinates `c` with `x = Σ c_i·basis_i` and every `c_i` in GF(2^d);
/// `None` when `x` is outside the GF(2^d)-span of `basis`.
pub fn coords_over_subfield(
    field: &Field,
    basis: &[Elem],
    x: Elem,
    d: u32,
) -> Result<Option<Vec<Elem>>> {
    let sub = subfield_basis(field, d)?;
    let mut cols = Vec::with_capacity(basis.len() * sub.len());
    for &b in basis {
        for &w in &sub {
            cols.push(field.mul(w, b));
        }
    }
    let a = bit_matrix(field.m(), &cols);
    let rhs: Vec<Elem> = (0..field.m()).map(|i| x >> i & 1).collect();
    let lambda = match solve_right(&a, &rhs)? {
        Solution::None => return Ok(None),
        Solution::Unique(v) => v,
        Solution::Many { particular, .. } => particular,
    };
    let coords = basis
        .iter()
        .enumerate()
        .map(|(i, _)| {
            sub.iter()
                .enumerate()
                .filter(|&(j, _)| lambda[i * sub.len() + j] == 1)
                .fold(0, |acc, (_, &w)| acc ^ w)
        })
        .collect();
    Ok(Some(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Automorphism;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn golden() -> Arc<Field> {
        Field::new(14, 0x40A9).unwrap()
    }

    fn random_mat(f: &Arc<Field>, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
        let mut m = Mat::zeros(f.clone(), rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                // Sparse-ish entries make rank deficiency common.
                let v = if rng.gen_bool(0.4) { 0 } else { f.random(rng) };
                m.set(r, c, v);
            }
        }
        m
    }

    #[test]
    fn identity_and_zero() {
        let f = golden();
        let r = Mat::identity(f.clone(), 3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.mat, Mat::identity(f.clone(), 3));
        let z = Mat::zeros(f.clone(), 3, 2);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(left_kernel_basis(&z), Mat::identity(f.clone(), 3));
        assert_eq!(left_kernel_basis(&Mat::identity(f, 4)).rows(), 0);
    }

    #[test]
    fn rref_properties() {
        let f = Field::new(8, 0x11D).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let m = random_mat(&f, r, c, &mut rng);
            let red = m.rref();
            assert_eq!(red.mat.rref().mat, red.mat);
            assert_eq!(red.rank, m.transpose().rank());
            let k = left_kernel_basis(&m);
            assert_eq!(k.rows(), r - red.rank);
            assert!(k.mul(&m).unwrap().is_zero());
            let rk = right_kernel_basis(&m);
            assert_eq!(rk.rows(), c - red.rank);
            assert!(m.mul(&rk.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_cases() {
        let f = golden();
        let b = vec![f.alpha_pow(3), 0, 1];
        assert_eq!(
            solve_right(&Mat::identity(f.clone(), 3), &b).unwrap(),
            Solution::Unique(b.clone())
        );
        let a = Mat::from_rows(f.clone(), 1, &[vec![1], vec![1]]);
        assert_eq!(solve_right(&a, &[0, 1]).unwrap(), Solution::None);
        let a = Mat::from_rows(f.clone(), 2, &[vec![1, 1]]);
        match solve_right(&a, &[5]).unwrap() {
            Solution::Many { particular, kernel } => {
                assert_eq!(particular, vec![5, 0]);
                assert_eq!(kernel.rows(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solve_random_consistent() {
        let f = Field::new(8, 0x11D).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let a = random_mat(&f, r, c, &mut rng);
            let x: Vec<Elem> = (0..c).map(|_| f.random(&mut rng)).collect();
            let b = a.mul(&Mat::from_rows(f.clone(), 1, &x.iter().map(|&v| vec![v]).collect::<Vec<_>>()))
                .unwrap()
                .col(0);
            let sol = match solve_right(&a, &b).unwrap() {
                Solution::Unique(v) => v,
                Solution::Many { particular, .. } => particular,
                Solution::None => panic!("consistent system reported inconsistent"),
            };
            let col = Mat::from_rows(f.clone(), 1, &sol.iter().map(|&v| vec![v]).collect::<Vec<_>>());
            assert_eq!(a.mul(&col).unwrap().col(0), b);
        }
    }

    #[test]
    fn subfield_bases() {
        let f = golden();
        for d in [1u32, 2, 7, 14] {
            let b = subfield_basis(&f, d).unwrap();
            assert_eq!(b.len(), d as usize);
            for &x in &b {
                assert_eq!(f.frob(x, d), x);
            }
        }
        assert!(subfield_basis(&f, 3).is_err());
    }

    #[test]
    fn coordinates_over_the_fixed_field() {
        let f = golden();
        let s = Automorphism::frobenius(f.clone());
        let h: Vec<Elem> = (0..14).map(|i| s.apply(f.alpha_pow(7), i)).collect();
        assert_eq!(coords_over_subfield(&f, &h, 1, 1).unwrap(), Some(vec![1; 14]));
        let mut e1 = vec![0; 14];
        e1[0] = 1;
        assert_eq!(coords_over_subfield(&f, &h, h[0], 1).unwrap(), Some(e1));
        assert_eq!(coords_over_subfield(&f, &h[1..], 1, 1).unwrap(), None);
    }

    #[test]
    fn coordinates_recombine() {
        let f = Field::new(12, 0x1053).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [1u32, 2, 3, 4, 6] {
            let sub = subfield_basis(&f, d).unwrap();
            let n = (12 / d) as usize;
            // A random GF(2^d)-basis of the whole field.
            let mut basis = Vec::new();
            let mut span = XorBasis::new();
            while basis.len() < n {
                let x = f.random_nonzero(&mut rng);
                let before = span.len();
                let mut trial = span.clone();
                for &w in &sub {
                    trial.insert(f.mul(w, x));
                }
                if trial.len() == before + d as usize {
                    span = trial;
                    basis.push(x);
                }
            }
            for _ in 0..20 {
                let x = f.random(&mut rng);
                let c = coords_over_subfield(&f, &basis, x, d).unwrap().unwrap();
                let back = c.iter().zip(&basis).fold(0, |acc, (&ci, &bi)| acc ^ f.mul(ci, bi));
                assert_eq!(back, x);
                assert!(c.iter().all(|&ci| f.frob(ci, d) == ci));
            }
        }
    }

    #[test]
    fn xor_basis_counts_rank() {
        let mut xb = XorBasis::new();
        assert!(xb.insert(0b101));
        assert!(xb.insert(0b011));
        assert!(!xb.insert(0b110));
        assert!(xb.insert(0b1000));
        assert_eq!(xb.len(), 3);
        assert!(xb.contains(0b1110));
    }
}
