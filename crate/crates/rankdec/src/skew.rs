//! Skew polynomials in F[z; θ] with θ = σ^t and z·a = θ(a)·z.

use std::fmt;

use crate::gf::{gcd, Automorphism, Elem, Field};
use crate::linalg::{bit_matrix, bits_of, right_kernel_basis, subfield_basis, subfield_span};
use crate::{Error, Result};

/// The twist θ = σ^t of a skew polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist {
    aut: Automorphism,
    t: i64,
}

impl Twist {
    pub fn new(aut: Automorphism, t: i64) -> Self {
        Twist { aut, t }
    }

    pub fn aut(&self) -> &Automorphism {
        &self.aut
    }

    pub fn field(&self) -> &Field {
        self.aut.field()
    }

    pub fn step(&self) -> i64 {
        self.t
    }

    /// θ^k(x).
    pub fn apply(&self, x: Elem, k: i64) -> Elem {
        self.aut.apply(x, self.t * k)
    }

    /// gcd(|σ|, t).
    pub fn gcd_with_order(&self) -> u64 {
        gcd(self.aut.order() as u64, self.t.unsigned_abs())
    }

    /// d with GF(2^d) the fixed field of θ.
    pub fn fixed_degree(&self) -> u32 {
        let m = self.field().m() as u64;
        gcd(m, (self.aut.s() as u64 * self.t.unsigned_abs()) % m) as u32
    }

    pub fn inverse(&self) -> Twist {
        Twist::new(self.aut.clone(), -self.t)
    }
}

/// Coefficients are stored in ascending degree without trailing zeros.
#[derive(Clone, PartialEq)]
pub struct SkewPoly {
    twist: Twist,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.twist.field();
        let c: Vec<String> = self.coeffs.iter().map(|&x| field.format(x)).collect();
        write!(f, "SkewPoly(t={}, [{}])", self.twist.t, c.join(", "))
    }
}

impl SkewPoly {
    pub fn new(twist: Twist, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        SkewPoly { twist, coeffs }
    }

    pub fn zero(twist: Twist) -> Self {
        SkewPoly { twist, coeffs: vec![] }
    }

    pub fn one(twist: Twist) -> Self {
        SkewPoly { twist, coeffs: vec![1] }
    }

    /// z - c.
    pub fn linear(twist: Twist, c: Elem) -> Self {
        SkewPoly::new(twist, vec![c, 1])
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check_twist(&self, other: &SkewPoly) -> Result<()> {
        if self.twist != other.twist {
            return Err(Error::InvalidArgument("skew polynomials with different twists".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_twist(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&0) ^ other.coeffs.get(i).unwrap_or(&0))
            .collect();
        Ok(SkewPoly::new(self.twist.clone(), c))
    }

    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_twist(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(SkewPoly::zero(self.twist.clone()));
        }
        let f = self.twist.field();
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= f.mul(a, self.twist.apply(b, i as i64));
            }
        }
        Ok(SkewPoly::new(self.twist.clone(), out))
    }

    /// (q, rem) with self = q·g + rem and deg rem < deg g.
    pub fn right_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_twist(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = self.twist.field();
        let mut rem = self.coeffs.clone();
        let mut q = vec![0; self.coeffs.len().saturating_sub(dg).max(1)];
        while rem.len() > dg {
            let top = rem.len() - 1;
            let lead = rem[top];
            if lead != 0 {
                let shift = top - dg;
                let c = f.div(lead, self.twist.apply(g.leading(), shift as i64));
                q[shift] = c;
                for (j, &gj) in g.coeffs.iter().enumerate() {
                    rem[j + shift] ^= f.mul(c, self.twist.apply(gj, shift as i64));
                }
            }
            rem.pop();
        }
        Ok((
            SkewPoly::new(self.twist.clone(), q),
            SkewPoly::new(self.twist.clone(), rem),
        ))
    }

    /// Left multiple by a constant making the leading coefficient 1.
    pub fn monic(&self) -> SkewPoly {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.twist.field();
        let inv = f.recip(self.leading());
        SkewPoly::new(self.twist.clone(), self.coeffs.iter().map(|&c| f.mul(inv, c)).collect())
    }

    /// Σ f_l·θ^l(γ).
    pub fn eval(&self, gamma: Elem) -> Elem {
        let f = self.twist.field();
        self.coeffs
            .iter()
            .enumerate()
            .fold(0, |acc, (l, &c)| acc ^ f.mul(c, self.twist.apply(gamma, l as i64)))
    }

    /// The monic operator θ^(-deg)∘f, written in the ring with the opposite
    /// twist; it has the same kernel as f.
    pub fn reversed(&self) -> SkewPoly {
        let Some(deg) = self.degree() else {
            return SkewPoly::zero(self.twist.inverse());
        };
        let c = (0..=deg)
            .map(|p| self.twist.apply(self.coeffs[deg - p], -(deg as i64)))
            .collect();
        SkewPoly::new(self.twist.inverse(), c).monic()
    }

    /// Canonical F^θ-basis of {γ : f(θ)(γ) = 0}.
    ///
    /// The kernel is expanded over GF(2) with bit 0 as the first unknown,
    /// reduced to rref, and scanned greedily for an F^θ-independent subset.
    pub fn kernel_basis(&self) -> Vec<Elem> {
        let op = if self.twist.t < 0 { self.reversed() } else { self.clone() };
        let field = self.twist.field();
        let m = field.m();
        let images: Vec<Elem> = (0..m).map(|i| op.eval(1 << i)).collect();
        let k = right_kernel_basis(&bit_matrix(m, &images));
        let d = self.twist.fixed_degree();
        let sub = subfield_basis(field, d).expect("fixed degree divides m");
        let mut basis: Vec<Elem> = Vec::new();
        let mut dim = 0;
        for r in 0..k.rows() {
            let v = bits_of(k.row(r));
            basis.push(v);
            let span = subfield_span(field, &basis, &sub).len();
            if span > dim {
                dim = span;
            } else {
                basis.pop();
            }
        }
        basis
    }
}

/// Monic generator of the left ideal annihilating every value: the lclm of
/// z - v⁻¹θ(v). Zero values are ignored.
pub fn minimal_skew_poly(values: &[Elem], twist: &Twist) -> Result<SkewPoly> {
    let f = twist.field();
    let mut p = SkewPoly::one(twist.clone());
    for &v in values {
        let u = p.eval(v);
        if u == 0 {
            continue;
        }
        let factor = SkewPoly::linear(twist.clone(), f.div(twist.apply(u, 1), u));
        p = factor.mul(&p)?;
    }
    Ok(p)
}
