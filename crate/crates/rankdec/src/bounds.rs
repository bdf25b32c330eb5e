//! Hartmann-Tzeng and Roos certificates for sets b + t1·{0..δ-2} + t2·{k_0..k_r},
//! and the decoding-capacity checks built on them.

use serde::{Deserialize, Serialize};

use crate::gf::gcd;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    pub b: i64,
    pub t1: i64,
    pub t2: i64,
    pub delta: usize,
    pub ks: Vec<i64>,
}

impl Pattern {
    pub fn new(b: i64, t1: i64, t2: i64, delta: usize, ks: Vec<i64>) -> Result<Self> {
        let p = Pattern { b, t1, t2, delta, ks };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta < 2 {
            return Err(Error::InvalidPattern(format!("delta = {} < 2", self.delta)));
        }
        if self.ks.is_empty() {
            return Err(Error::InvalidPattern("empty k list".into()));
        }
        if self.ks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPattern("k list must be strictly increasing".into()));
        }
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.ks.len() - 1
    }

    /// ⌊(δ + r - 1)/2⌋.
    pub fn tau(&self) -> usize {
        (self.delta + self.r() - 1) / 2
    }

    /// b + t1·i + t2·k_j.
    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        self.b + self.t1 * i as i64 + self.t2 * self.ks[j]
    }

    fn spread(&self) -> i64 {
        self.ks[self.r()] - self.ks[0]
    }

    fn ks_consecutive(&self) -> bool {
        self.ks.iter().enumerate().all(|(i, &k)| k == i as i64)
    }

    /// The generated set reduced mod `order`, sorted.
    pub fn generated_set(&self, order: usize) -> Vec<usize> {
        self.set_from(0, order)
    }

    fn set_from(&self, nu: usize, order: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (nu..=self.delta - 2)
            .flat_map(|i| (0..self.ks.len()).map(move |j| (i, j)))
            .map(|(i, j)| self.exponent(i, j).rem_euclid(order as i64) as usize)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    HT,
    Roos,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    pub pattern: Pattern,
    pub value: usize,
}

fn gcd_order(order: usize, t: i64) -> u64 {
    gcd(order as u64, t.rem_euclid(order as i64) as u64)
}

fn contained(p: &Pattern, order: usize, t: &[usize]) -> bool {
    let mut tt: Vec<usize> = t.iter().map(|&i| i % order).collect();
    tt.sort_unstable();
    p.generated_set(order)
        .iter()
        .all(|i| tt.binary_search(i).is_ok())
}

pub fn ht_check(p: &Pattern, order: usize, t: &[usize]) -> Option<BoundCertificate> {
    p.validate().ok()?;
    let ok = p.ks_consecutive()
        && gcd_order(order, p.t1) == 1
        && gcd_order(order, p.t2) < p.delta as u64
        && contained(p, order, t);
    ok.then(|| BoundCertificate {
        kind: BoundKind::HT,
        pattern: p.clone(),
        value: p.delta + p.r(),
    })
}

pub fn roos_check(p: &Pattern, order: usize, t: &[usize]) -> Option<BoundCertificate> {
    p.validate().ok()?;
    let ok = gcd_order(order, p.t1) == 1
        && gcd_order(order, p.t2) == 1
        && p.spread() <= (p.delta + p.r()) as i64 - 2
        && contained(p, order, t);
    ok.then(|| BoundCertificate {
        kind: BoundKind::Roos,
        pattern: p.clone(),
        value: p.delta + p.r(),
    })
}

/// HT if it applies, otherwise Roos.
pub fn certify(p: &Pattern, order: usize, t: &[usize]) -> Option<BoundCertificate> {
    ht_check(p, order, t).or_else(|| roos_check(p, order, t))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchLimits {
    /// Upper limit on r.
    pub max_r: Option<usize>,
}

fn rotate(mask: u64, s: usize, order: usize) -> u64 {
    let full = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
    if s == 0 {
        return mask;
    }
    ((mask << s) | (mask >> (order - s))) & full
}

fn rank_key(c: &BoundCertificate) -> (usize, usize, i64, i64, i64, u8) {
    let p = &c.pattern;
    let kind = match c.kind {
        BoundKind::HT => 1,
        BoundKind::Roos => 0,
    };
    (c.value, p.delta, -p.b, -p.t1, -p.t2, kind)
}

fn consider(best: &mut Option<BoundCertificate>, cand: BoundCertificate) {
    if best.as_ref().is_none_or(|b| rank_key(&cand) > rank_key(b)) {
        *best = Some(cand);
    }
}

/// Exhaustive search for the largest δ + r certificate contained in `t`.
///
/// Ties prefer larger δ, then smaller b, t1, t2, then HT over Roos.
pub fn best_bound_search(
    t: &[usize],
    order: usize,
    limits: SearchLimits,
) -> Result<Option<BoundCertificate>> {
    if order == 0 || order > 64 {
        return Err(Error::InvalidArgument(format!("order {order} outside 1..=64")));
    }
    let tmask = t.iter().fold(0u64, |m, &i| m | 1 << (i % order));
    let tsize = tmask.count_ones() as usize;
    let max_r = limits.max_r.unwrap_or(usize::MAX);
    let mut best = None;
    for b in 0..order {
        for t1 in 1..order.max(2) {
            if gcd(order as u64, t1 as u64) != 1 {
                continue;
            }
            let mut a = 0u64;
            for delta in 2..=tsize + 1 {
                a |= 1 << ((b + t1 * (delta - 2)) % order);
                // Shifts s with a + s ⊆ T.
                let shifts: Vec<bool> = (0..order)
                    .map(|s| rotate(a, s, order) & !tmask == 0)
                    .collect();
                if !shifts.iter().any(|&x| x) {
                    break;
                }
                for t2 in 1..order {
                    let ks: Vec<usize> = (0..order).filter(|&k| shifts[(t2 * k) % order]).collect();
                    if ks.is_empty() {
                        continue;
                    }
                    let g2 = gcd(order as u64, t2 as u64);
                    if g2 < delta as u64 && ks[0] == 0 {
                        let run = ks.iter().enumerate().take_while(|&(i, &k)| i == k).count();
                        let r = (run - 1).min(max_r);
                        let p = Pattern {
                            b: b as i64,
                            t1: t1 as i64,
                            t2: t2 as i64,
                            delta,
                            ks: (0..=r as i64).collect(),
                        };
                        consider(&mut best, BoundCertificate { kind: BoundKind::HT, value: delta + r, pattern: p });
                    }
                    if g2 == 1 {
                        if let Some(window) = roos_window(&ks, order, delta, max_r) {
                            let p = Pattern {
                                b: b as i64,
                                t1: t1 as i64,
                                t2: t2 as i64,
                                delta,
                                ks: window.iter().map(|&k| k as i64).collect(),
                            };
                            consider(&mut best, BoundCertificate { kind: BoundKind::Roos, value: delta + p.r(), pattern: p });
                        }
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Longest window k_i..k_j of the cyclic residue list with
/// k_j - k_i <= δ + (j - i) - 2; first such window on ties.
fn roos_window(ks: &[usize], order: usize, delta: usize, max_r: usize) -> Option<Vec<usize>> {
    let n = ks.len();
    let ext: Vec<usize> = ks.iter().copied().chain(ks.iter().map(|&k| k + order)).collect();
    let mut best: Option<(usize, usize)> = None;
    for i in 0..n {
        let mut j = i;
        while j + 1 < i + n
            && j + 1 - i <= max_r
            && ext[j + 1] - ext[i] + 2 <= delta + (j + 1 - i)
        {
            j += 1;
        }
        if best.is_none_or(|(bi, bj)| j - i > bj - bi) {
            best = Some((i, j));
        }
    }
    best.map(|(i, j)| ext[i..=j].to_vec())
}

/// T_ν = b + t1·ν + t1·{0..δ-2-ν} + t2·{k_0..k_r} reduced mod `order`.
pub fn tnu_set(p: &Pattern, nu: usize, order: usize) -> Result<Vec<usize>> {
    p.validate()?;
    if nu > p.delta - 2 {
        return Err(Error::InvalidArgument(format!(
            "nu = {nu} exceeds delta - 2 = {}",
            p.delta - 2
        )));
    }
    Ok(p.set_from(nu, order))
}

/// Whether T_ν contains an HT-like or Roos-like subset with δ' + r' > ν.
///
/// A `false` means the window search found no such subset.
pub fn check_tnusubset(p: &Pattern, nu: usize, order: usize) -> bool {
    if p.validate().is_err() || nu > p.delta - 2 {
        return false;
    }
    let Ok(tnu) = tnu_set(p, nu, order) else {
        return false;
    };
    matches!(
        best_bound_search(&tnu, order, SearchLimits::default()),
        Ok(Some(c)) if c.value > nu
    )
}

/// BCH-like, HT-like or Roos-like statement for ν.
pub fn check_tnu(p: &Pattern, nu: usize, order: usize) -> bool {
    if p.validate().is_err() {
        return false;
    }
    let (delta, r, tau) = (p.delta as i64, p.r() as i64, p.tau());
    let nu_i = nu as i64;
    let g2 = gcd_order(order, p.t2) as i64;
    let bch = 2 * nu_i < delta;
    let ht = nu <= tau && g2 < delta - nu_i && p.ks_consecutive();
    let roos = nu <= tau && g2 == 1 && p.spread() <= delta + r - nu_i - 2;
    bch || ht || roos
}

/// The four statements under which ν = τ is reachable.
pub fn check_sigmat2dr(p: &Pattern, order: usize) -> bool {
    if p.validate().is_err() {
        return false;
    }
    let (delta, r, tau) = (p.delta as i64, p.r() as i64, p.tau() as i64);
    let g2 = gcd_order(order, p.t2) as i64;
    r == 0
        || (delta % 2 == 1 && r == 1)
        || (g2 < delta - tau && p.ks_consecutive())
        || (g2 == 1 && p.spread() <= delta + r - tau - 2)
}

/// gcd(order, t2) = 1, ks = {0..r} and r <= δ - 2.
pub fn check_1rd(p: &Pattern, order: usize) -> bool {
    p.validate().is_ok()
        && gcd_order(order, p.t2) == 1
        && p.ks_consecutive()
        && p.r() + 2 <= p.delta
}

/// Largest rank weight the pattern guarantees to decode.
pub fn decoding_capacity(p: &Pattern, order: usize) -> usize {
    if p.validate().is_err() {
        return 0;
    }
    if check_sigmat2dr(p, order) {
        return p.tau();
    }
    (1..=p.tau())
        .rev()
        .find(|&nu| check_tnu(p, nu, order) || check_tnusubset(p, nu, order))
        .unwrap_or(0)
}

/// ⌊ℓ(δ-1)/(ℓ+1)⌋: typical, not guaranteed, reach of interleaved decoding.
pub fn interleaved_advisory(p: &Pattern, blocks: usize) -> usize {
    blocks * (p.delta - 1) / (blocks + 1)
}
