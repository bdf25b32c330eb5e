#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use rankdec::bounds::{certify, decoding_capacity, Pattern};
use rankdec::code::{rank_weight, CodeSpec};
use rankdec::decoder::DecodeParams;
use rankdec::gf::{gcd, Automorphism, Elem, Field};
use rankdec::linalg::Mat;

pub const T: [i64; 10] = [0, 1, 2, 3, 4, 8, 9, 10, 11, 12];

pub fn field() -> Arc<Field> {
    Field::new(14, 0x40A9).unwrap()
}

/// a^k for each k; negative k stands for 0.
pub fn pows(f: &Field, ks: &[i64]) -> Vec<Elem> {
    ks.iter()
        .map(|&k| if k < 0 { 0 } else { f.alpha_pow(k as u128) })
        .collect()
}

pub fn normal_h(f: &Arc<Field>) -> Vec<Elem> {
    let s = Automorphism::frobenius(f.clone());
    (0..14).map(|i| s.apply(f.alpha_pow(7), i)).collect()
}

pub fn spec() -> CodeSpec {
    let f = field();
    CodeSpec::new(Automorphism::frobenius(f.clone()), normal_h(&f), &T).unwrap()
}

pub fn roos() -> Pattern {
    Pattern::new(8, 1, 3, 6, vec![0, 2]).unwrap()
}

pub fn codeword(f: &Field) -> Vec<Elem> {
    pows(f, &[0, 4851, 13201, 10, 11714, 5336, 15691, -1, 6387, 7195, 5026, -1, 14643, -1])
}

pub fn bits(f: &Arc<Field>, rows: &[Vec<u8>]) -> Mat {
    let rows: Vec<Vec<Elem>> = rows
        .iter()
        .map(|r| r.iter().map(|&b| b as Elem).collect())
        .collect();
    Mat::from_rows(f.clone(), rows[0].len(), &rows)
}

fn row(prefix: &[u8], fill: u8, n: usize) -> Vec<u8> {
    let mut r = prefix.to_vec();
    r.resize(n, fill);
    r
}

/// Rows of the rank-3 error pattern.
pub fn b_rows() -> Vec<Vec<u8>> {
    vec![
        vec![1; 14],
        row(&[0, 0], 1, 14),
        row(&[0, 1, 1, 1, 1, 1], 0, 14),
    ]
}

pub fn add(x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    x.iter().zip(y).map(|(a, b)| a ^ b).collect()
}

/// c + (1, a, a^11)·B.
pub fn received(f: &Arc<Field>) -> Vec<Elem> {
    let e = bits(f, &b_rows()).vec_mul(&pows(f, &[0, 1, 11])).unwrap();
    add(&codeword(f), &e)
}

pub fn interleaved_eps(f: &Field) -> Vec<Elem> {
    pows(f, &[0, 1, 11, 5])
}

pub fn b1_rows() -> Vec<Vec<u8>> {
    let mut rows = b_rows();
    rows.push(row(&[1], 0, 14));
    rows
}

pub fn b2_rows() -> Vec<Vec<u8>> {
    vec![
        vec![1; 14],
        row(&[1; 12], 0, 14),
        row(&[0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1], 0, 14),
        row(&[0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1], 0, 14),
    ]
}

/// (c + ε·B1 | ε·B2).
pub fn interleaved_received(f: &Arc<Field>) -> Vec<Elem> {
    let eps = interleaved_eps(f);
    let mut y = add(&codeword(f), &bits(f, &b1_rows()).vec_mul(&eps).unwrap());
    y.extend(bits(f, &b2_rows()).vec_mul(&eps).unwrap());
    y
}

/// n elements of `f` independent over GF(2^d).
pub fn random_independent<R: Rng>(f: &Field, n: usize, d: u32, rng: &mut R) -> Vec<Elem> {
    loop {
        let h: Vec<Elem> = (0..n).map(|_| f.random_nonzero(rng)).collect();
        if rank_weight(f, &h, d) == n {
            return h;
        }
    }
}

/// A random certified pattern with positive capacity and a code whose
/// defining set is exactly the pattern's set; returns the capacity too.
pub fn random_instance<R: Rng>(f: &Arc<Field>, rng: &mut R) -> (DecodeParams, usize) {
    loop {
        let s = rng.gen_range(1..f.m());
        let aut = Automorphism::new(f.clone(), s).unwrap();
        let o = aut.order();
        if o < 3 {
            continue;
        }
        let t1 = loop {
            let t = rng.gen_range(1..o);
            if gcd(o as u64, t as u64) == 1 {
                break t as i64;
            }
        };
        let delta = rng.gen_range(3..=o);
        let r = rng.gen_range(0..=2usize);
        let mut ks: Vec<i64> = sample(rng, o, r + 1).into_iter().map(|k| k as i64).collect();
        ks.sort_unstable();
        let b = rng.gen_range(0..o) as i64;
        let t2 = rng.gen_range(1..o) as i64;
        let Ok(p) = Pattern::new(b, t1, t2, delta, ks) else {
            continue;
        };
        let set = p.generated_set(o);
        if certify(&p, o, &set).is_none() {
            continue;
        }
        let cap = decoding_capacity(&p, o);
        if cap == 0 {
            continue;
        }
        let n = rng.gen_range(cap..=o);
        let h = random_independent(f, n, aut.fixed_degree(), rng);
        let t: Vec<i64> = set.iter().map(|&i| i as i64).collect();
        let spec = CodeSpec::new(aut, h, &t).unwrap();
        return (DecodeParams::new(spec, p).unwrap(), cap);
    }
}
