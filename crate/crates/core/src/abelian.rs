//! Finitely generated abelian groups.
//!
//! A group is stored as a free rank together with a list of prime-power
//! cyclic summands `Z/p^e`, kept sorted by `(p, e)`. Every group that shows up
//! in a decomposition report (homology, K-groups, cohomotopy) lives here.
//!
//! Presentations are handled through an integer Smith normal form with
//! checked arithmetic; overflow is reported instead of wrapping.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("torsion exponent must be at least 1 (got {prime}^{exponent})")]
    ZeroExponent { prime: u64, exponent: u32 },
    #[error("torsion index {index} out of range (group has {len} torsion summands)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("torsion index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("integer overflow during matrix reduction")]
    Overflow,
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, got: usize },
    #[error("cannot parse group literal `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Prime factorisation by trial division, as `(p, e)` pairs in ascending `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A finitely generated abelian group `Z^r + Z/p1^e1 + ...` in primary form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FgAbGroup {
    free_rank: u32,
    torsion: Vec<(u64, u32)>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u32) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`, split into prime powers. `n = 0` gives `Z`, `n = 1` the zero group.
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return Self::free(1);
        }
        FgAbGroup { free_rank: 0, torsion: factorize(n) }
    }

    pub fn new(free_rank: u32, torsion: Vec<(u64, u32)>) -> Result<Self, AbelianError> {
        for &(p, e) in &torsion {
            if !is_prime(p) {
                return Err(AbelianError::NotPrime(p));
            }
            if e == 0 {
                return Err(AbelianError::ZeroExponent { prime: p, exponent: e });
            }
        }
        let mut g = FgAbGroup { free_rank, torsion };
        g.torsion.sort_unstable();
        Ok(g)
    }

    /// Group with the given free rank and one cyclic summand per order
    /// (orders are factored; orders 1 are dropped, order 0 adds a free rank).
    pub fn from_orders(free_rank: u32, orders: &[u64]) -> Self {
        orders
            .iter()
            .fold(Self::free(free_rank), |acc, &n| acc.direct_sum(&Self::cyclic(n)))
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion(&self) -> &[(u64, u32)] {
        &self.torsion
    }

    /// Prime-power orders of the torsion summands, in canonical order.
    pub fn torsion_orders(&self) -> Vec<u64> {
        self.torsion.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn summand_count(&self) -> usize {
        self.free_rank as usize + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        torsion.sort_unstable();
        FgAbGroup { free_rank: self.free_rank + other.free_rank, torsion }
    }

    /// `k` copies of `self`.
    pub fn power(&self, k: u32) -> FgAbGroup {
        (0..k).fold(FgAbGroup::zero(), |acc, _| acc.direct_sum(self))
    }

    pub fn has_p_torsion(&self, p: u64) -> bool {
        self.torsion.iter().any(|&(q, _)| q == p)
    }

    pub fn has_2_torsion(&self) -> bool {
        self.has_p_torsion(2)
    }

    pub fn has_3_torsion(&self) -> bool {
        self.has_p_torsion(3)
    }

    /// The `p`-primary part of the torsion subgroup.
    pub fn primary_component(&self, p: u64) -> Result<FgAbGroup, AbelianError> {
        if !is_prime(p) {
            return Err(AbelianError::NotPrime(p));
        }
        Ok(FgAbGroup {
            free_rank: 0,
            torsion: self.torsion.iter().copied().filter(|&(q, _)| q == p).collect(),
        })
    }

    /// Torsion summands whose prime is not `p`, free part dropped.
    pub fn prime_to(&self, p: u64) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            torsion: self.torsion.iter().copied().filter(|&(q, _)| q != p).collect(),
        }
    }

    /// Removes the torsion summands at the given positions of [`Self::torsion`].
    pub fn quotient_by_summands(&self, drop: &[usize]) -> Result<FgAbGroup, AbelianError> {
        let mut seen = vec![false; self.torsion.len()];
        for &i in drop {
            if i >= self.torsion.len() {
                return Err(AbelianError::IndexOutOfRange { index: i, len: self.torsion.len() });
            }
            if seen[i] {
                return Err(AbelianError::DuplicateIndex(i));
            }
            seen[i] = true;
        }
        Ok(FgAbGroup {
            free_rank: self.free_rank,
            torsion: self
                .torsion
                .iter()
                .zip(&seen)
                .filter(|(_, &gone)| !gone)
                .map(|(&t, _)| t)
                .collect(),
        })
    }

    /// Invariant factors `d1 | d2 | ...` of the torsion subgroup (all > 1).
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &(p, e) in &self.torsion {
            match by_prime.last_mut() {
                Some((q, es)) if *q == p => es.push(e),
                _ => by_prime.push((p, vec![e])),
            }
        }
        let len = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, es) in &by_prime {
            // exponents are ascending; align them to the end of the chain
            let offset = len - es.len();
            for (k, &e) in es.iter().enumerate() {
                factors[offset + k] *= p.pow(e);
            }
        }
        factors
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        for &(p, e) in &self.torsion {
            terms.push(format!("Z/{}", p.pow(e)));
        }
        f.write_str(&terms.join(" + "))
    }
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `0`, `Z`, `Z^r`, `Z/n` and `(Z/n)^k` terms joined by `+`.
impl FromStr for FgAbGroup {
    type Err = AbelianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| AbelianError::Parse { literal: s.to_string(), reason: reason.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty literal"));
        }
        let mut group = FgAbGroup::zero();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(err("empty term"));
            }
            if term == "0" {
                continue;
            }
            if term == "Z" {
                group.free_rank += 1;
                continue;
            }
            if let Some(rank) = term.strip_prefix("Z^") {
                group.free_rank += rank.parse::<u32>().map_err(|_| err("bad free rank"))?;
                continue;
            }
            let (order, copies) = if let Some(rest) = term.strip_prefix("(Z/") {
                let (order, power) = rest.split_once(")^").ok_or_else(|| err("expected (Z/n)^k"))?;
                (order, power.parse::<u32>().map_err(|_| err("bad power"))?)
            } else if let Some(order) = term.strip_prefix("Z/") {
                (order, 1)
            } else {
                return Err(err(&format!("unrecognised term `{term}`")));
            };
            let n: u64 = order.parse().map_err(|_| err("bad cyclic order"))?;
            if n < 2 {
                return Err(err("cyclic order must be at least 2"));
            }
            group = group.direct_sum(&FgAbGroup::cyclic(n).power(copies));
        }
        Ok(group)
    }
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, AbelianError> {
        if data.len() != rows * cols {
            return Err(AbelianError::Shape { rows, cols, got: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, AbelianError> {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<i64> = rows.iter().flatten().copied().collect();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AbelianError::Shape { rows: rows.len(), cols, got: data.len() });
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, AbelianError> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let term = self.get(i, k).checked_mul(other.get(k, j)).ok_or(AbelianError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(AbelianError::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn identity(n: usize) -> Self {
        BigMatrix::from(&IntMatrix::identity(n))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                data.push((0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        BigMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// Back to machine integers, if every entry fits.
    pub fn to_int(&self) -> Result<IntMatrix, AbelianError> {
        let data = self.data.iter().map(|x| i64::try_from(x).map_err(|_| AbelianError::Overflow)).collect::<Result<_, _>>()?;
        IntMatrix::new(self.rows, self.cols, data)
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        for j in 0..self.cols {
            self.data.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + j, i * self.cols + k);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let t = self.get(src, j) * factor;
            *self.at(dst, j) += t;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let t = self.get(i, src) * factor;
            *self.at(i, dst) += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = self.at(i, j);
            *x = -std::mem::take(x);
        }
    }
}

impl From<&IntMatrix> for BigMatrix {
    fn from(m: &IntMatrix) -> Self {
        BigMatrix { rows: m.rows, cols: m.cols, data: m.data.iter().map(|&x| BigInt::from(x)).collect() }
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: BigMatrix,
    pub u: BigMatrix,
    pub v: BigMatrix,
}

/// `q` with `x - q * p` in `(-|p|/2, |p|/2]`.
fn nearest_quotient(x: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(p);
    if (&r * 2u32) > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

/// Smith normal form with smallest-absolute-value pivoting, in exact
/// arithmetic.
///
/// Row operations are mirrored on `U` (so `U * A` tracks them) and column
/// operations on `V`; their transposes are never needed.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut w = BigMatrix::from(a);
    let mut u = BigMatrix::identity(m);
    let mut v = BigMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero |entry| in the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = w.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { d: w, u, v };
            };
            w.swap_rows(t, pi);
            u.swap_rows(t, pi);
            w.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = w.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                let q = -nearest_quotient(w.get(i, t), &pivot);
                if !q.is_zero() {
                    w.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                dirty |= !w.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = -nearest_quotient(w.get(t, j), &pivot);
                if !q.is_zero() {
                    w.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                dirty |= !w.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // pivot row/column are clear; enforce divisibility of the rest
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(w.get(i, j) % &pivot).is_zero()));
            if let Some(i) = offender {
                w.add_row(t, i, &BigInt::one());
                u.add_row(t, i, &BigInt::one());
                continue;
            }
            if pivot.is_negative() {
                w.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    SmithForm { d: w, u, v }
}

/// Cokernel of `A: Z^cols -> Z^rows`, i.e. `Z^rows / im(A)`.
pub fn from_presentation(a: &IntMatrix) -> Result<FgAbGroup, AbelianError> {
    let diag = smith_normal_form(a).d.diagonal();
    let mut free = (a.rows - diag.len()) as u32;
    let mut orders = Vec::new();
    for d in diag {
        match u64::try_from(d).map_err(|_| AbelianError::Overflow)? {
            0 => free += 1,
            1 => {}
            k => orders.push(k),
        }
    }
    Ok(FgAbGroup::from_orders(free, &orders))
}

/// Greatest common divisor of a list (0 for an empty or all-zero list).
pub fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, gcd_u64)
}
