//! The codes C(σ, h, T): parity matrices, encoding, syndromes, weights and
//! subfield subcodes.

use std::sync::Arc;

use rand::Rng;

use crate::gf::{Automorphism, Elem, Field};
use crate::linalg::{
    left_kernel_basis, right_kernel_basis, row_space_basis, subfield_basis,
    subfield_span, Mat, XorBasis,
};
use crate::{Error, Result};

/// Largest number of codewords the brute-force oracles will visit.
pub const ENUM_BUDGET_LOG2: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Rank,
    Hamming,
}

#[derive(Clone, Debug)]
pub struct CodeSpec {
    aut: Automorphism,
    h: Vec<Elem>,
    t: Vec<usize>,
    parity: Mat,
}

impl CodeSpec {
    /// `t` is reduced modulo |σ|; `h` must be F^σ-linearly independent.
    pub fn new(aut: Automorphism, h: Vec<Elem>, t: &[i64]) -> Result<Self> {
        let field = aut.field().clone();
        let order = aut.order();
        let n = h.len();
        if n == 0 || n > order {
            return Err(Error::InvalidCode(format!(
                "length {n} must lie in 1..={order}"
            )));
        }
        if let Some(&x) = h.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::InvalidCode(format!("{x:#x} is not a field element")));
        }
        let d = aut.fixed_degree();
        let sub = subfield_basis(&field, d)?;
        if subfield_span(&field, &h, &sub).len() != n * d as usize {
            return Err(Error::InvalidCode(
                "entries of h are linearly dependent over the fixed field".into(),
            ));
        }
        let mut t: Vec<usize> = t
            .iter()
            .map(|&i| i.rem_euclid(order as i64) as usize)
            .collect();
        t.sort_unstable();
        t.dedup();
        let parity = build_parity(&aut, &h, &t);
        Ok(CodeSpec { aut, h, t, parity })
    }

    /// Same σ and h with a different T.
    pub fn with_t(&self, t: &[i64]) -> Result<Self> {
        CodeSpec::new(self.aut.clone(), self.h.clone(), t)
    }

    pub fn field(&self) -> &Arc<Field> {
        self.aut.field()
    }

    pub fn aut(&self) -> &Automorphism {
        &self.aut
    }

    pub fn h(&self) -> &[Elem] {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn order(&self) -> usize {
        self.aut.order()
    }

    /// n × |T| matrix with columns σ^i(h)^T, i ascending in T.
    pub fn parity(&self) -> &Mat {
        &self.parity
    }

    /// Rows form the canonical basis of the code.
    pub fn generator(&self) -> Mat {
        left_kernel_basis(&self.parity)
    }

    pub fn dimension(&self) -> usize {
        self.n() - self.parity.rank()
    }

    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        let g = self.generator();
        if msg.len() != g.rows() {
            return Err(Error::Dimension(format!(
                "message of length {} for a code of dimension {}",
                msg.len(),
                g.rows()
            )));
        }
        if g.rows() == 0 {
            return Ok(vec![0; self.n()]);
        }
        g.vec_mul(msg)
    }

    pub fn is_codeword(&self, v: &[Elem]) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.parity.vec_mul(v)?.iter().all(|&x| x == 0))
    }

    /// S_d = v·σ^d(h)^T.
    pub fn syndrome(&self, v: &[Elem], d: i64) -> Result<Elem> {
        self.check_len(v)?;
        let f = self.field();
        Ok(v.iter()
            .zip(&self.h)
            .fold(0, |acc, (&x, &h)| acc ^ f.mul(x, self.aut.apply(h, d))))
    }

    /// Every i in [0, |σ|) whose column σ^i(h)^T is annihilated by the code.
    pub fn defining_set(&self) -> Vec<usize> {
        let base = self.parity.rank();
        (0..self.order())
            .filter(|&i| {
                if self.t.binary_search(&i).is_ok() {
                    return true;
                }
                let col = build_parity(&self.aut, &self.h, &[i]);
                self.parity.hcat(&col).expect("same rows").rank() == base
            })
            .collect()
    }

    /// Rank weight over the fixed field of σ.
    pub fn rank_weight(&self, v: &[Elem]) -> usize {
        rank_weight(self.field(), v, self.aut.fixed_degree())
    }

    /// Canonical basis, over GF(2^d), of the codewords with every entry in GF(2^d).
    pub fn subfield_subcode(&self, d: u32) -> Result<Mat> {
        let field = self.field();
        let sub = subfield_basis(field, d)?;
        let n = self.n();
        let m = field.m() as usize;
        // Unknowns λ_(j,l) with c_j = Σ_l λ_(j,l)·w_l; one block of m bit
        // equations per parity column.
        let cols = self.parity.cols();
        let mut a = Mat::zeros(Field::gf2(), m * cols, n * sub.len());
        for j in 0..n {
            for (l, &w) in sub.iter().enumerate() {
                for q in 0..cols {
                    let v = field.mul(w, self.parity.get(j, q));
                    for bit in 0..m {
                        a.set(q * m + bit, j * sub.len() + l, v >> bit & 1);
                    }
                }
            }
        }
        let k = right_kernel_basis(&a);
        let words: Vec<Vec<Elem>> = (0..k.rows())
            .map(|r| {
                (0..n)
                    .map(|j| {
                        sub.iter()
                            .enumerate()
                            .filter(|&(l, _)| k.get(r, j * sub.len() + l) == 1)
                            .fold(0, |acc, (_, &w)| acc ^ w)
                    })
                    .collect()
            })
            .collect();
        Ok(row_space_basis(&Mat::from_rows(field.clone(), n, &words)))
    }

    /// Exact minimum nonzero distance; `None` for the zero code.
    pub fn min_distance(&self, metric: Metric) -> Result<Option<usize>> {
        let g = self.generator();
        min_weight(self.field(), &g, self.field().m(), self.aut.fixed_degree(), metric)
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::Dimension(format!(
                "vector of length {} for a code of length {}",
                v.len(),
                self.n()
            )));
        }
        Ok(())
    }
}

/// n × |T| matrix whose columns are σ^i(h)^T.
pub fn build_parity(aut: &Automorphism, h: &[Elem], t: &[usize]) -> Mat {
    let mut m = Mat::zeros(aut.field().clone(), h.len(), t.len());
    for (c, &i) in t.iter().enumerate() {
        for (r, &x) in h.iter().enumerate() {
            m.set(r, c, aut.apply(x, i as i64));
        }
    }
    m
}

/// Dimension over GF(2^d) of the span of the entries.
pub fn rank_weight(field: &Field, v: &[Elem], d: u32) -> usize {
    if d == 1 {
        let mut xb = XorBasis::new();
        for &x in v {
            xb.insert(x);
        }
        return xb.len();
    }
    let sub = subfield_basis(field, d).expect("d divides m");
    subfield_span(field, v, &sub).len() / d as usize
}

pub fn hamming_weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

fn random_sub_elem<R: Rng + ?Sized>(sub: &[Elem], rng: &mut R) -> Elem {
    sub.iter().filter(|_| rng.gen_bool(0.5)).fold(0, |acc, &w| acc ^ w)
}

/// An error e = ε·B of rank ν over GF(2^d).
#[derive(Clone, Debug)]
pub struct RandomError {
    pub e: Vec<Elem>,
    pub eps: Vec<Elem>,
    pub b: Mat,
}

pub fn random_error<R: Rng + ?Sized>(
    field: &Arc<Field>,
    d: u32,
    n: usize,
    nu: usize,
    rng: &mut R,
) -> Result<RandomError> {
    let cap = (field.m() / d) as usize;
    if nu > n.min(cap) {
        return Err(Error::InvalidArgument(format!(
            "rank {nu} exceeds min(n = {n}, {cap})"
        )));
    }
    let sub = subfield_basis(field, d)?;
    let mut eps = Vec::with_capacity(nu);
    let mut span = XorBasis::new();
    while eps.len() < nu {
        let x = field.random_nonzero(rng);
        let mut trial = span.clone();
        for &w in &sub {
            trial.insert(field.mul(w, x));
        }
        if trial.len() == span.len() + d as usize {
            span = trial;
            eps.push(x);
        }
    }
    let b = loop {
        let mut b = Mat::zeros(field.clone(), nu, n);
        for r in 0..nu {
            for c in 0..n {
                b.set(r, c, random_sub_elem(&sub, rng));
            }
        }
        if b.rank() == nu {
            break b;
        }
    };
    let e = if nu == 0 { vec![0; n] } else { b.vec_mul(&eps)? };
    Ok(RandomError { e, eps, b })
}

/// Visits every GF(2^coeff_degree)-combination of the rows of `basis`.
pub fn for_each_codeword<F: FnMut(&[Elem])>(
    field: &Field,
    basis: &Mat,
    coeff_degree: u32,
    mut visit: F,
) -> Result<()> {
    let sub = subfield_basis(field, coeff_degree)?;
    let gens: Vec<Vec<Elem>> = (0..basis.rows())
        .flat_map(|r| {
            sub.iter()
                .map(|&w| basis.row(r).iter().map(|&x| field.mul(w, x)).collect())
                .collect::<Vec<_>>()
        })
        .collect();
    let bits = gens.len() as u32;
    if bits > ENUM_BUDGET_LOG2 {
        return Err(Error::Budget(1u128 << bits));
    }
    // Gray code order: each step flips one generator.
    let mut word = vec![0; basis.cols()];
    visit(&word);
    for i in 1u64..(1u64 << bits) {
        let g = &gens[i.trailing_zeros() as usize];
        for (w, &x) in word.iter_mut().zip(g) {
            *w ^= x;
        }
        visit(&word);
    }
    Ok(())
}

/// Minimum nonzero weight of the GF(2^coeff_degree)-span of `basis`, rank
/// weights taken over GF(2^rank_degree).
pub fn min_weight(
    field: &Field,
    basis: &Mat,
    coeff_degree: u32,
    rank_degree: u32,
    metric: Metric,
) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    for_each_codeword(field, basis, coeff_degree, |w| {
        let wt = match metric {
            Metric::Hamming => hamming_weight(w),
            Metric::Rank => rank_weight(field, w, rank_degree),
        };
        if wt > 0 && best.is_none_or(|b| wt < b) {
            best = Some(wt);
        }
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example() -> CodeSpec {
        let f = Field::new(14, 0x40A9).unwrap();
        let s = Automorphism::frobenius(f.clone());
        let h = (0..14).map(|i| s.apply(f.alpha_pow(7), i)).collect();
        CodeSpec::new(s, h, &[0, 1, 2, 3, 4, 8, 9, 10, 11, 12]).unwrap()
    }

    fn codeword(f: &Field) -> Vec<Elem> {
        let k: [i64; 14] = [0, 4851, 13201, 10, 11714, 5336, 15691, -1, 6387, 7195, 5026, -1, 14643, -1];
        k.iter()
            .map(|&k| if k < 0 { 0 } else { f.alpha_pow(k as u128) })
            .collect()
    }

    #[test]
    fn parity_shape_and_dimension() {
        let c = example();
        let f = c.field().clone();
        assert_eq!((c.parity().rows(), c.parity().cols()), (14, 10));
        assert_eq!(c.parity().get(0, 0), f.alpha_pow(7));
        assert_eq!(c.parity().rank(), 10);
        assert_eq!(c.dimension(), 4);
        let g = c.generator();
        for r in 0..g.rows() {
            assert!(c.is_codeword(g.row(r)).unwrap());
        }
        assert_eq!(c.encode(&[0; 4]).unwrap(), vec![0; 14]);
    }

    #[test]
    fn example_codeword() {
        let c = example();
        let f = c.field().clone();
        let w = codeword(&f);
        assert!(c.is_codeword(&w).unwrap());
        assert_eq!(c.rank_weight(&w), 10);
        assert_eq!(hamming_weight(&w), 11);
        for &d in &c.defining_set() {
            assert_eq!(c.syndrome(&w, d as i64).unwrap(), 0);
        }
    }

    #[test]
    fn defining_set_is_t() {
        let c = example();
        assert_eq!(c.defining_set(), vec![0, 1, 2, 3, 4, 8, 9, 10, 11, 12]);
        let empty = c.with_t(&[]).unwrap();
        assert!(empty.defining_set().is_empty());
        assert_eq!(empty.dimension(), 14);
        let full = c.with_t(&(0..14).collect::<Vec<_>>()).unwrap();
        assert_eq!(full.defining_set().len(), 14);
        assert_eq!(full.dimension(), 0);
    }

    #[test]
    fn rejects_dependent_h() {
        let f = Field::new(14, 0x40A9).unwrap();
        let s = Automorphism::frobenius(f.clone());
        assert!(CodeSpec::new(s.clone(), vec![2, 4, 6], &[0]).is_err());
        assert!(CodeSpec::new(s, vec![], &[0]).is_err());
    }

    #[test]
    fn subfield_subcode_dimensions() {
        let c = example();
        assert_eq!(c.subfield_subcode(7).unwrap().rows(), 2);
        assert_eq!(c.subfield_subcode(2).unwrap().rows(), 0);
        assert_eq!(c.subfield_subcode(1).unwrap().rows(), 0);
        assert_eq!(c.subfield_subcode(14).unwrap().rows(), 4);
        assert!(c.subfield_subcode(3).is_err());
    }

    #[test]
    fn toy_min_distance() {
        let f = Field::new(4, 0x13).unwrap();
        let s = Automorphism::frobenius(f.clone());
        let h = (0..4).map(|i| s.apply(f.alpha_pow(3), i)).collect();
        let c = CodeSpec::new(s, h, &[0, 1, 2]).unwrap();
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.min_distance(Metric::Rank).unwrap(), Some(4));
        let zero = c.with_t(&[0, 1, 2, 3]).unwrap();
        assert_eq!(zero.min_distance(Metric::Rank).unwrap(), None);
    }

    #[test]
    fn random_errors_have_requested_rank() {
        let c = example();
        let f = c.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for nu in 1..=4 {
            for _ in 0..200 {
                let r = random_error(&f, 1, 14, nu, &mut rng).unwrap();
                assert_eq!(c.rank_weight(&r.e), nu);
            }
        }
        assert_eq!(random_error(&f, 1, 14, 0, &mut rng).unwrap().e, vec![0; 14]);
        let a = random_error(&f, 1, 14, 3, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = random_error(&f, 1, 14, 3, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a.e, b.e);
        assert!(random_error(&f, 1, 14, 15, &mut rng).is_err());
    }

    #[test]
    fn hamming_dominates_rank() {
        let f = Field::new(8, 0x11D).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let v: Vec<Elem> = (0..6)
                .map(|_| if rng.gen_bool(0.3) { 0 } else { f.random(&mut rng) })
                .collect();
            assert!(hamming_weight(&v) >= rank_weight(&f, &v, 1));
            assert!(rank_weight(&f, &v, 1) >= rank_weight(&f, &v, 2));
        }
    }
}
