//! Syndrome decoding up to HT/Roos bounds: the error span path, the error
//! locator path and joint decoding of interleaved words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{decoding_capacity, Pattern};
use crate::code::{rank_weight, CodeSpec};
use crate::gf::{gcd, Elem};
use crate::linalg::{coords_over_subfield, solve_right, Mat, Solution};
use crate::skew::{minimal_skew_poly, SkewPoly, Twist};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Solver {
    /// Structured O(ν²) recursion on the first ν equations of one row.
    #[default]
    Gabidulin,
    /// Generic elimination over every equation.
    Linear,
}

#[derive(Clone, Debug)]
pub struct DecodeParams {
    spec: CodeSpec,
    pattern: Pattern,
    /// Column j·(δ-1) + i holds σ^(b + t1·i + t2·k_j)(h)^T.
    columns: Mat,
}

impl DecodeParams {
    pub fn new(spec: CodeSpec, pattern: Pattern) -> Result<Self> {
        pattern.validate()?;
        let order = spec.order();
        if gcd(order as u64, pattern.t1.rem_euclid(order as i64) as u64) != 1 {
            return Err(Error::InvalidPattern(format!(
                "gcd(|σ| = {order}, t1 = {}) != 1",
                pattern.t1
            )));
        }
        let defining = spec.defining_set();
        if let Some(i) = pattern
            .generated_set(order)
            .into_iter()
            .find(|i| defining.binary_search(i).is_err())
        {
            return Err(Error::InvalidPattern(format!(
                "exponent {i} of the pattern is outside the defining set"
            )));
        }
        let n = spec.n();
        let w = pattern.delta - 1;
        let mut columns = Mat::zeros(spec.field().clone(), n, w * pattern.ks.len());
        for j in 0..pattern.ks.len() {
            for i in 0..w {
                let d = pattern.exponent(i, j);
                for (r, &h) in spec.h().iter().enumerate() {
                    columns.set(r, j * w + i, spec.aut().apply(h, d));
                }
            }
        }
        Ok(DecodeParams {
            spec,
            pattern,
            columns,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn capacity(&self) -> usize {
        decoding_capacity(&self.pattern, self.spec.order())
    }

    fn span_twist(&self) -> Twist {
        Twist::new(self.spec.aut().clone(), self.pattern.t1)
    }

    fn locator_twist(&self) -> Twist {
        Twist::new(self.spec.aut().clone(), -self.pattern.t1)
    }

    fn bbar(&self) -> i64 {
        self.pattern.b + self.pattern.t2 * self.pattern.ks[0]
    }

    pub fn syndrome_table(&self, y: &[Elem]) -> Result<SyndromeTable> {
        if y.len() != self.spec.n() {
            return Err(Error::Dimension(format!(
                "word of length {} for a code of length {}",
                y.len(),
                self.spec.n()
            )));
        }
        let flat = self.columns.vec_mul(y)?;
        let w = self.pattern.delta - 1;
        let aut = self.spec.aut();
        let s: Vec<Vec<Elem>> = flat.chunks(w).map(|c| c.to_vec()).collect();
        let st = s
            .iter()
            .enumerate()
            .map(|(j, row)| {
                row.iter()
                    .enumerate()
                    .map(|(i, &x)| aut.apply(x, -self.pattern.exponent(i, j)))
                    .collect()
            })
            .collect();
        Ok(SyndromeTable { s, st })
    }
}

/// Rows are indexed by j (the k_j), columns by i in 0..δ-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeTable {
    pub s: Vec<Vec<Elem>>,
    /// s̃_ij = σ^-(b + t1·i + t2·k_j)(s_ij).
    pub st: Vec<Vec<Elem>>,
}

impl SyndromeTable {
    pub fn is_zero(&self) -> bool {
        self.s.iter().flatten().all(|&x| x == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureKind {
    /// The kernel of the synthesized polynomial is smaller than its degree.
    KernelDeficient,
    /// The cross system between values and locators has no solution.
    LocatorSystemInconsistent,
    /// A locator is outside the fixed-field span of h.
    LocatorOutsideSpan,
    /// y - e is not a codeword.
    ResultNotInCode,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    /// Length of the synthesized shift register.
    pub ell: usize,
    pub kernel_dim: Option<usize>,
    pub block: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Success {
    pub codeword: Vec<Elem>,
    pub error: Vec<Elem>,
    pub nu: usize,
    /// Trailing-normalized shift register that was synthesized.
    pub sfsr: Vec<Elem>,
    pub eps: Vec<Elem>,
    /// Locators per block.
    pub eta: Vec<Vec<Elem>>,
    /// Coordinates of the locators over h, per block.
    pub b: Vec<Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Success(Success),
    Failure(Failure),
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeOutcome::Success(_))
    }

    pub fn success(&self) -> Option<&Success> {
        match self {
            DecodeOutcome::Success(s) => Some(s),
            DecodeOutcome::Failure(_) => None,
        }
    }

    pub fn failure_kind(&self) -> Option<FailureKind> {
        match self {
            DecodeOutcome::Success(_) => None,
            DecodeOutcome::Failure(f) => Some(f.kind),
        }
    }
}

/// Shortest shift register v (v_0 != 0) with Σ v_i·θ^i(s_(n-i)) = 0 for all
/// sequences and all ℓ <= n < N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sfsr {
    pub len: usize,
    pub coeffs: Vec<Elem>,
}

/// Multi-sequence skew Berlekamp-Massey.
///
/// When ℓ >= N no equation constrains the register; the result is then the
/// minimal polynomial of {1, a, .., a^(ℓ-1)} if that has degree ℓ.
pub fn sfsr_synthesize(seqs: &[Vec<Elem>], twist: &Twist) -> Result<Sfsr> {
    let Some(first) = seqs.first() else {
        return Err(Error::InvalidArgument("no sequences".into()));
    };
    let n_len = first.len();
    if seqs.iter().any(|s| s.len() != n_len) {
        return Err(Error::Dimension("sequences of different lengths".into()));
    }
    let f = twist.field();
    // Per sequence: register before its last length change, its
    // discrepancy, the index of that change and the length then.
    struct Mem {
        reg: Vec<Elem>,
        disc: Elem,
        at: i64,
        len: usize,
    }
    let mut mem: Vec<Mem> = seqs
        .iter()
        .map(|_| Mem { reg: vec![1], disc: 1, at: -1, len: 0 })
        .collect();
    let mut reg: Vec<Elem> = vec![1];
    let mut len = 0usize;
    for n in 0..n_len {
        for (j, s) in seqs.iter().enumerate() {
            let d = reg
                .iter()
                .enumerate()
                .filter(|&(i, _)| i <= n)
                .fold(0, |acc, (i, &v)| acc ^ f.mul(v, twist.apply(s[n - i], i as i64)));
            if d == 0 {
                continue;
            }
            let mj = &mem[j];
            let k = (n as i64 - mj.at) as usize;
            let coef = f.div(d, twist.apply(mj.disc, k as i64));
            let mut next = reg.clone();
            if next.len() < mj.reg.len() + k {
                next.resize(mj.reg.len() + k, 0);
            }
            for (i, &v) in mj.reg.iter().enumerate() {
                next[i + k] ^= f.mul(coef, twist.apply(v, k as i64));
            }
            if k + mj.len > len {
                let new_len = k + mj.len;
                mem[j] = Mem { reg: reg.clone(), disc: d, at: n as i64, len };
                len = new_len;
            }
            reg = next;
        }
    }
    reg.resize(len + 1, 0);
    if len >= n_len && len <= f.m() as usize {
        let basis: Vec<Elem> = (0..len).map(|i| 1u64 << i).collect();
        let p = minimal_skew_poly(&basis, twist)?;
        if p.degree() == Some(len) {
            reg = p.coeffs().to_vec();
        }
    }
    let norm = if reg[len] != 0 { reg[len] } else { reg[0] };
    let inv = f.recip(norm);
    Ok(Sfsr {
        len,
        coeffs: reg.iter().map(|&x| f.mul(inv, x)).collect(),
    })
}

/// Whether `v` (with v_0 != 0) generates every sequence.
pub fn is_sfsr(v: &[Elem], seqs: &[Vec<Elem>], twist: &Twist) -> bool {
    let f = twist.field();
    if v.first().is_none_or(|&x| x == 0) {
        return false;
    }
    let l = v.len() - 1;
    seqs.iter().all(|s| {
        (l..s.len()).all(|n| {
            v.iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc ^ f.mul(c, twist.apply(s[n - i], i as i64)))
                == 0
        })
    })
}

/// A^(j)_k for k = j..ν and B^(j)_i for i = 0..ν-j, one row per j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabidulinTrace {
    pub a: Vec<Vec<Elem>>,
    pub b: Vec<Vec<Elem>>,
}

/// Solves b_i = Σ_k a_k·θ^(b̄ + t1·i)(X_k) for 0 <= i < ν.
///
/// The twist step is ±t1 and its sign selects θ = σ or θ = σ^-1.
pub fn gabidulin_solve(
    a: &[Elem],
    b: &[Elem],
    twist: &Twist,
    bbar: i64,
) -> Result<(Vec<Elem>, GabidulinTrace)> {
    let nu = a.len();
    if b.len() != nu {
        return Err(Error::Dimension(format!("{} coefficients, {} values", nu, b.len())));
    }
    if twist.step() == 0 {
        return Err(Error::InvalidArgument("twist step must be nonzero".into()));
    }
    let f = twist.field();
    let aut = twist.aut();
    let sign = twist.step().signum();
    let theta_bbar = |x: Elem, e: i64| aut.apply(x, sign * bbar * e);
    let mut ta: Vec<Vec<Elem>> = vec![a.to_vec()];
    let mut tb: Vec<Vec<Elem>> = vec![b.to_vec()];
    for j in 1..nu {
        let (pa, pb) = (&ta[j - 1], &tb[j - 1]);
        let piv = pa[0];
        if piv == 0 {
            return Err(Error::InvalidArgument("dependent coefficients in Gabidulin solve".into()));
        }
        let na = pa[1..]
            .iter()
            .map(|&x| x ^ f.mul(piv, twist.apply(f.div(x, piv), -1)))
            .collect();
        let nb = (0..pb.len() - 1)
            .map(|i| pb[i] ^ f.mul(piv, twist.apply(f.div(pb[i + 1], piv), -1)))
            .collect();
        ta.push(na);
        tb.push(nb);
    }
    let mut x = vec![0; nu];
    for k in (0..nu).rev() {
        let row = &ta[k];
        if row[0] == 0 {
            return Err(Error::InvalidArgument("dependent coefficients in Gabidulin solve".into()));
        }
        let acc = (k + 1..nu).fold(tb[k][0], |acc, l| acc ^ f.mul(row[l - k], theta_bbar(x[l], 1)));
        x[k] = theta_bbar(f.div(acc, row[0]), -1);
    }
    Ok((x, GabidulinTrace { a: ta, b: tb }))
}

/// Rows (i, j) of Σ_k coef(d_ij, u_k)·X_k = rhs_ij over the whole table.
fn cross_system(
    params: &DecodeParams,
    u: &[Elem],
    rhs: &[Vec<Elem>],
    coef: impl Fn(i64, Elem) -> Elem,
) -> (Mat, Vec<Elem>) {
    let p = &params.pattern;
    let w = p.delta - 1;
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for j in 0..p.ks.len() {
        for i in 0..w {
            let d = p.exponent(i, j);
            rows.push(u.iter().map(|&x| coef(d, x)).collect());
            b.push(rhs[j][i]);
        }
    }
    (Mat::from_rows(params.spec.field().clone(), u.len(), &rows), b)
}

enum Step<T> {
    Ok(T),
    Fail(FailureKind),
}

/// Locators from values: s_ij = Σ_k ε_k·σ^d(η_k).
fn locators_from_values(
    params: &DecodeParams,
    table: &SyndromeTable,
    eps: &[Elem],
    solver: Solver,
) -> Result<Step<Vec<Elem>>> {
    let aut = params.spec.aut();
    let f = params.spec.field();
    let nu = eps.len();
    let eta = if solver == Solver::Gabidulin && nu < params.pattern.delta {
        gabidulin_solve(eps, &table.s[0][..nu], &params.span_twist(), params.bbar())?.0
    } else {
        let (m, rhs) = cross_system(params, eps, &table.st, |d, e| aut.apply(e, -d));
        match solve_right(&m, &rhs)? {
            Solution::None => return Ok(Step::Fail(FailureKind::LocatorSystemInconsistent)),
            Solution::Unique(x) | Solution::Many { particular: x, .. } => x,
        }
    };
    let p = &params.pattern;
    for j in 0..p.ks.len() {
        for i in 0..p.delta - 1 {
            let d = p.exponent(i, j);
            let v = eps
                .iter()
                .zip(&eta)
                .fold(0, |acc, (&e, &h)| acc ^ f.mul(e, aut.apply(h, d)));
            if v != table.s[j][i] {
                return Ok(Step::Fail(FailureKind::LocatorSystemInconsistent));
            }
        }
    }
    Ok(Step::Ok(eta))
}

/// Values from locators: s̃_ij = Σ_k η_k·σ^-d(ε_k).
fn values_from_locators(
    params: &DecodeParams,
    table: &SyndromeTable,
    eta: &[Elem],
    solver: Solver,
) -> Result<Step<Vec<Elem>>> {
    let aut = params.spec.aut();
    let f = params.spec.field();
    let nu = eta.len();
    let eps = if solver == Solver::Gabidulin && nu < params.pattern.delta {
        gabidulin_solve(eta, &table.st[0][..nu], &params.locator_twist(), params.bbar())?.0
    } else {
        let (m, rhs) = cross_system(params, eta, &table.s, |d, h| aut.apply(h, d));
        match solve_right(&m, &rhs)? {
            Solution::None => return Ok(Step::Fail(FailureKind::LocatorSystemInconsistent)),
            Solution::Unique(x) | Solution::Many { particular: x, .. } => x,
        }
    };
    let p = &params.pattern;
    for j in 0..p.ks.len() {
        for i in 0..p.delta - 1 {
            let d = p.exponent(i, j);
            let v = eps
                .iter()
                .zip(eta)
                .fold(0, |acc, (&e, &h)| acc ^ f.mul(e, aut.apply(h, d)));
            if v != table.s[j][i] {
                return Ok(Step::Fail(FailureKind::LocatorSystemInconsistent));
            }
        }
    }
    Ok(Step::Ok(eps))
}

/// B with η^T = B·h^T and e = ε·B.
fn error_from(params: &DecodeParams, eps: &[Elem], eta: &[Elem]) -> Result<Step<(Mat, Vec<Elem>)>> {
    let spec = &params.spec;
    let d = spec.aut().fixed_degree();
    let mut rows = Vec::with_capacity(eta.len());
    for &x in eta {
        match coords_over_subfield(spec.field(), spec.h(), x, d)? {
            Some(c) => rows.push(c),
            None => return Ok(Step::Fail(FailureKind::LocatorOutsideSpan)),
        }
    }
    let b = Mat::from_rows(spec.field().clone(), spec.n(), &rows);
    let e = if eta.is_empty() { vec![0; spec.n()] } else { b.vec_mul(eps)? };
    Ok(Step::Ok((b, e)))
}

fn fail(kind: FailureKind, ell: usize, kernel_dim: Option<usize>, block: Option<usize>) -> DecodeOutcome {
    DecodeOutcome::Failure(Failure {
        kind,
        ell,
        kernel_dim,
        block,
    })
}

fn check_blocks(params: &DecodeParams, words: &[&[Elem]]) -> Result<Option<usize>> {
    for (l, w) in words.iter().enumerate() {
        if !params.spec.is_codeword(w)? {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Decoding through the error span polynomial.
pub fn decode_span(params: &DecodeParams, y: &[Elem], solver: Solver) -> Result<DecodeOutcome> {
    decode_interleaved(params, y, 1, solver)
}

/// Decoding through the error locator polynomial.
pub fn decode_locator(params: &DecodeParams, y: &[Elem], solver: Solver) -> Result<DecodeOutcome> {
    let table = params.syndrome_table(y)?;
    if table.is_zero() {
        return zero_outcome(params, y, 1);
    }
    let twist = params.locator_twist();
    let sfsr = sfsr_synthesize(&table.st, &twist)?;
    let ell = sfsr.len;
    let eta = SkewPoly::new(twist, sfsr.coeffs.clone()).kernel_basis();
    if eta.len() != ell {
        return Ok(fail(FailureKind::KernelDeficient, ell, Some(eta.len()), None));
    }
    let eps = match values_from_locators(params, &table, &eta, solver)? {
        Step::Ok(e) => e,
        Step::Fail(k) => return Ok(fail(k, ell, Some(ell), None)),
    };
    let (b, e) = match error_from(params, &eps, &eta)? {
        Step::Ok(v) => v,
        Step::Fail(k) => return Ok(fail(k, ell, Some(ell), None)),
    };
    let c: Vec<Elem> = y.iter().zip(&e).map(|(a, b)| a ^ b).collect();
    if !params.spec.is_codeword(&c)? {
        return Ok(fail(FailureKind::ResultNotInCode, ell, Some(ell), Some(0)));
    }
    let nu = rank_weight(params.spec.field(), &e, params.spec.aut().fixed_degree());
    Ok(DecodeOutcome::Success(Success {
        codeword: c,
        error: e,
        nu,
        sfsr: sfsr.coeffs,
        eps,
        eta: vec![eta],
        b: vec![b],
    }))
}

fn zero_outcome(params: &DecodeParams, y: &[Elem], blocks: usize) -> Result<DecodeOutcome> {
    let n = params.spec.n();
    let words: Vec<&[Elem]> = y.chunks(n).collect();
    if let Some(l) = check_blocks(params, &words)? {
        return Ok(fail(FailureKind::ResultNotInCode, 0, None, Some(l)));
    }
    let f = params.spec.field();
    Ok(DecodeOutcome::Success(Success {
        codeword: y.to_vec(),
        error: vec![0; y.len()],
        nu: 0,
        sfsr: vec![1],
        eps: vec![],
        eta: vec![vec![]; blocks],
        b: vec![Mat::zeros(f.clone(), 0, n); blocks],
    }))
}

/// Joint decoding of `blocks` concatenated words with one shared shift
/// register; one block is the plain error span path.
pub fn decode_interleaved(
    params: &DecodeParams,
    y: &[Elem],
    blocks: usize,
    solver: Solver,
) -> Result<DecodeOutcome> {
    let n = params.spec.n();
    if blocks == 0 || y.len() != blocks * n {
        return Err(Error::Dimension(format!(
            "word of length {} is not {blocks} blocks of length {n}",
            y.len()
        )));
    }
    if gcd(blocks as u64, params.pattern.t1.unsigned_abs()) != 1 {
        return Err(Error::InvalidArgument(format!(
            "gcd(blocks = {blocks}, t1 = {}) != 1",
            params.pattern.t1
        )));
    }
    let tables = y
        .chunks(n)
        .map(|w| params.syndrome_table(w))
        .collect::<Result<Vec<_>>>()?;
    if tables.iter().all(SyndromeTable::is_zero) {
        return zero_outcome(params, y, blocks);
    }
    let seqs: Vec<Vec<Elem>> = tables.iter().flat_map(|t| t.s.iter().cloned()).collect();
    let twist = params.span_twist();
    let sfsr = sfsr_synthesize(&seqs, &twist)?;
    let ell = sfsr.len;
    let eps = SkewPoly::new(twist, sfsr.coeffs.clone()).kernel_basis();
    if eps.len() != ell {
        return Ok(fail(FailureKind::KernelDeficient, ell, Some(eps.len()), None));
    }
    let block_of = |l: usize| (blocks > 1).then_some(l);
    let mut etas = Vec::with_capacity(blocks);
    let mut bs = Vec::with_capacity(blocks);
    let mut error = Vec::with_capacity(y.len());
    for (l, table) in tables.iter().enumerate() {
        let eta = match locators_from_values(params, table, &eps, solver)? {
            Step::Ok(v) => v,
            Step::Fail(k) => return Ok(fail(k, ell, Some(ell), block_of(l))),
        };
        let (b, e) = match error_from(params, &eps, &eta)? {
            Step::Ok(v) => v,
            Step::Fail(k) => return Ok(fail(k, ell, Some(ell), block_of(l))),
        };
        etas.push(eta);
        bs.push(b);
        error.extend(e);
    }
    let c: Vec<Elem> = y.iter().zip(&error).map(|(a, b)| a ^ b).collect();
    let words: Vec<&[Elem]> = c.chunks(n).collect();
    if let Some(l) = check_blocks(params, &words)? {
        return Ok(fail(FailureKind::ResultNotInCode, ell, Some(ell), block_of(l).or(Some(0))));
    }
    let nu = rank_weight(params.spec.field(), &error, params.spec.aut().fixed_degree());
    Ok(DecodeOutcome::Success(Success {
        codeword: c,
        error,
        nu,
        sfsr: sfsr.coeffs,
        eps,
        eta: etas,
        b: bs,
    }))
}

/// Rows σ^(b + t1·i + t2·k_j)(η_k) for every j and ν <= i <= δ-2.
pub fn h_nu(params: &DecodeParams, eta: &[Elem], nu: usize) -> Result<Mat> {
    key_matrix(params, eta, nu, 1)
}

/// Rows σ^-(b + t1·i + t2·k_j)(ε_k) for every j and ν <= i <= δ-2.
pub fn e_nu(params: &DecodeParams, eps: &[Elem], nu: usize) -> Result<Mat> {
    key_matrix(params, eps, nu, -1)
}

fn key_matrix(params: &DecodeParams, u: &[Elem], nu: usize, sign: i64) -> Result<Mat> {
    let p = &params.pattern;
    if nu + 2 > p.delta {
        return Err(Error::InvalidArgument(format!(
            "nu = {nu} exceeds delta - 2 = {}",
            p.delta - 2
        )));
    }
    let aut = params.spec.aut();
    let mut rows = Vec::new();
    for j in 0..p.ks.len() {
        for i in nu..=p.delta - 2 {
            let d = p.exponent(i, j);
            rows.push(u.iter().map(|&x| aut.apply(x, sign * d)).collect());
        }
    }
    Ok(Mat::from_rows(params.spec.field().clone(), u.len(), &rows))
}

/// Rank of H_ν (from locators) or E_ν (from values); ν means a unique
/// shortest shift register.
pub fn key_equation_rank(params: &DecodeParams, values: KeyInput<'_>, nu: usize) -> Result<usize> {
    Ok(match values {
        KeyInput::Locators(eta) => h_nu(params, eta, nu)?.rank(),
        KeyInput::Values(eps) => e_nu(params, eps, nu)?.rank(),
    })
}

#[derive(Clone, Copy, Debug)]
pub enum KeyInput<'a> {
    Locators(&'a [Elem]),
    Values(&'a [Elem]),
}
