//! Arithmetic in GF(2^m) for 1 <= m <= 63 and Frobenius automorphisms.
//!
//! Elements are plain bit vectors (`u64`): bit i is the coefficient of a^i,
//! where a is the residue class of x modulo the field polynomial.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::{Error, Result};

pub type Elem = u64;

/// Log/exp tables are built only up to this degree.
const TABLE_MAX_M: u32 = 20;

pub struct Field {
    m: u32,
    modulus: u64,
    tables: Option<Tables>,
}

struct Tables {
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.m, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^m) from `modulus`, rejecting reducible polynomials.
    pub fn new(m: u32, modulus: u64) -> Result<Arc<Field>> {
        if m == 0 || m > 63 {
            return Err(Error::InvalidField(format!("degree {m} outside 1..=63")));
        }
        if modulus >> m != 1 {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:#x} does not have degree {m}"
            )));
        }
        if modulus & 1 == 0 {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:#x} has zero constant term"
            )));
        }
        if !is_irreducible(modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:#x} is reducible over GF(2)"
            )));
        }
        let mut field = Field {
            m,
            modulus,
            tables: None,
        };
        if m <= TABLE_MAX_M {
            field.tables = field.build_tables();
        }
        Ok(Arc::new(field))
    }

    /// GF(2) itself, modulus x + 1.
    pub fn gf2() -> Arc<Field> {
        Field::new(1, 0b11).expect("x + 1 is irreducible")
    }

    // Walks the powers of a; tables exist only when a turns out primitive.
    fn build_tables(&self) -> Option<Tables> {
        let q1 = self.mult_order() as usize;
        let g = self.generator();
        let mut exp = Vec::with_capacity(2 * q1);
        let mut log = vec![0u32; q1 + 1];
        let mut x: Elem = 1;
        for i in 0..q1 {
            if i > 0 && x == 1 {
                return None;
            }
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        if x != 1 {
            return None;
        }
        exp.extend_from_within(..q1);
        Some(Tables { exp, log })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// 2^m - 1, the order of the multiplicative group.
    pub fn mult_order(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    pub fn mask(&self) -> u64 {
        self.mult_order()
    }

    pub fn contains(&self, x: Elem) -> bool {
        x & !self.mask() == 0
    }

    /// The residue class of x.
    pub fn generator(&self) -> Elem {
        reduce(2, self.modulus, self.m)
    }

    /// True when a log table is available (m <= 20 and a is primitive).
    pub fn has_log_table(&self) -> bool {
        self.tables.is_some()
    }

    pub fn log(&self, x: Elem) -> Option<u64> {
        if x == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[x as usize] as u64)
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        x ^ y
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[t.log[x as usize] as usize + t.log[y as usize] as usize],
            None => self.mul_slow(x, y),
        }
    }

    fn mul_slow(&self, x: Elem, y: Elem) -> Elem {
        reduce(clmul(x, y), self.modulus, self.m)
    }

    /// Inverse of a nonzero element. Panics on zero; see [`Field::inv`].
    #[inline]
    pub fn recip(&self, x: Elem) -> Elem {
        assert!(x != 0, "inverse of zero");
        match &self.tables {
            Some(t) => t.exp[self.mult_order() as usize - t.log[x as usize] as usize],
            None => self.pow(x, (self.mult_order() - 1) as u128),
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip(x))
        }
    }

    #[inline]
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.recip(y))
    }

    /// x^k with the exponent reduced modulo 2^m - 1 for nonzero x.
    pub fn pow(&self, x: Elem, k: u128) -> Elem {
        if x == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let k = (k % self.mult_order() as u128) as u64;
        if let Some(t) = &self.tables {
            let q1 = self.mult_order() as u128;
            let e = (t.log[x as usize] as u128 * k as u128) % q1;
            return t.exp[e as usize];
        }
        let mut acc = 1;
        let mut base = x;
        let mut k = k;
        while k != 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    /// x^k for any integer k; negative powers need x != 0.
    pub fn powi(&self, x: Elem, k: i64) -> Result<Elem> {
        if k >= 0 {
            return Ok(self.pow(x, k as u128));
        }
        let inv = self.inv(x)?;
        Ok(self.pow(inv, k.unsigned_abs() as u128))
    }

    /// a^k for the residue class a of x.
    pub fn alpha_pow(&self, k: u128) -> Elem {
        self.pow(self.generator(), k)
    }

    /// x^(2^e).
    pub fn frob(&self, x: Elem, e: u32) -> Elem {
        let e = e % self.m;
        if x == 0 || e == 0 {
            return x;
        }
        if let Some(t) = &self.tables {
            let q1 = self.mult_order();
            let l = (t.log[x as usize] as u64) << e;
            return t.exp[(l % q1) as usize];
        }
        let mut y = x;
        for _ in 0..e {
            y = self.mul_slow(y, y);
        }
        y
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen::<u64>() & self.mask()
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random(rng);
            if x != 0 {
                return x;
            }
        }
    }

    /// Parses "0", "1", "a", "a^k" or a hexadecimal bit vector "0x...".
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        let bad = || Error::Parse(text.to_string());
        match t {
            "0" => return Ok(0),
            "1" => return Ok(1),
            "a" => return Ok(self.generator()),
            _ => {}
        }
        if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            let v = u64::from_str_radix(hex, 16).map_err(|_| bad())?;
            if !self.contains(v) {
                return Err(Error::Parse(format!("{text} exceeds {} bits", self.m)));
            }
            return Ok(v);
        }
        if let Some(k) = t.strip_prefix("a^") {
            let k: u128 = k.parse().map_err(|_| bad())?;
            return Ok(self.alpha_pow(k));
        }
        Err(bad())
    }

    /// Power notation when a log table exists, hexadecimal otherwise.
    pub fn format(&self, x: Elem) -> String {
        match x {
            0 => "0".into(),
            1 => "1".into(),
            _ => match self.log(x) {
                Some(l) => format!("a^{l}"),
                None => format!("0x{x:X}"),
            },
        }
    }
}

fn clmul(x: u64, y: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = x as u128;
    let mut b = y;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

fn degree(p: u128) -> u32 {
    127 - p.leading_zeros()
}

/// Remainder of `p` modulo the degree-`m` polynomial `modulus`.
fn reduce(mut p: u128, modulus: u64, m: u32) -> u64 {
    let md = modulus as u128;
    while p >> m != 0 {
        p ^= md << (degree(p) - m);
    }
    p as u64
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: gcd(x^(2^i) - x, f) = 1 for all 1 <= i <= deg(f)/2.
pub fn is_irreducible(f: u64) -> bool {
    if f < 2 {
        return false;
    }
    let m = 63 - f.leading_zeros();
    if m == 0 {
        return false;
    }
    let x = reduce(2, f, m);
    let mut xp = x;
    for _ in 1..=m / 2 {
        xp = reduce(clmul(xp, xp), f, m);
        if poly_gcd(f, xp ^ x) != 1 {
            return false;
        }
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The Frobenius power σ(x) = x^(2^s).
#[derive(Clone, Debug)]
pub struct Automorphism {
    field: Arc<Field>,
    s: u32,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.s % self.field.m == other.s % other.field.m
    }
}

impl Automorphism {
    pub fn new(field: Arc<Field>, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument("Frobenius exponent must be >= 1".into()));
        }
        Ok(Automorphism { field, s })
    }

    /// x -> x^2.
    pub fn frobenius(field: Arc<Field>) -> Self {
        Automorphism { field, s: 1 }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// |σ| = m / gcd(m, s).
    pub fn order(&self) -> usize {
        (self.field.m as u64 / self.fixed_degree() as u64) as usize
    }

    /// d with fixed field GF(2^d), d = gcd(m, s).
    pub fn fixed_degree(&self) -> u32 {
        gcd(self.field.m as u64, self.s as u64) as u32
    }

    /// σ^k(x); k may be negative.
    pub fn apply(&self, x: Elem, k: i64) -> Elem {
        let m = self.field.m as i128;
        let e = (self.s as i128 * k as i128).rem_euclid(m);
        self.field.frob(x, e as u32)
    }

    pub fn is_fixed(&self, x: Elem) -> bool {
        self.apply(x, 1) == x
    }
}

/// An element bundled with its field, for callers that mix fields.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<Field>,
    bits: Elem,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.bits == other.bits
    }
}

impl FieldElement {
    pub fn new(field: Arc<Field>, bits: Elem) -> Result<Self> {
        if !field.contains(bits) {
            return Err(Error::InvalidArgument(format!(
                "{bits:#x} does not fit in {} bits",
                field.m
            )));
        }
        Ok(FieldElement { field, bits })
    }

    pub fn parse(field: Arc<Field>, text: &str) -> Result<Self> {
        let bits = field.parse(text)?;
        Ok(FieldElement { field, bits })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn bits(&self) -> Elem {
        self.bits
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(FieldElement {
            field: self.field.clone(),
            bits: self.bits ^ other.bits,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(FieldElement {
            field: self.field.clone(),
            bits: self.field.mul(self.bits, other.bits),
        })
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(FieldElement {
            field: self.field.clone(),
            bits: self.field.inv(self.bits)?,
        })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        Ok(FieldElement {
            field: self.field.clone(),
            bits: self.field.powi(self.bits, k)?,
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.bits))
    }
}
