//! Normal forms for the attaching data of the 4- and 5-cells.
//!
//! The h-matrix records the classes `S^4 -> S^3` (entries `0`/`eta`) and
//! `S^4 -> P^4(2^r)` (entries `0`/`i3eta`) of the 4-cell attaching map; its
//! reduction gives `c1` (Chang complexes `C^5_eta`) and `c2` (Chang complexes
//! `C^5_r`). The phi vector records the top-cell attaching map on the
//! remaining wedge; its reduction picks the homotopy type of the top piece.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::maps::{compose, Generator, MapClass, MapError};
use crate::spaces::ElementaryComplex::{self, Moore, Sphere};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("h-matrix row {row}: entry `{entry}` not allowed in a {kind} row")]
    BadEntry { row: usize, entry: HEntry, kind: &'static str },
    #[error("h-matrix row {row} has {got} entries, expected {cols}")]
    RowLength { row: usize, got: usize, cols: usize },
    #[error("Moore row {row} has exponent 0")]
    ZeroExponent { row: usize },
    #[error("orbit enumeration is limited to 3x3 matrices (got {rows}x{cols})")]
    TooLarge { rows: usize, cols: usize },
    #[error("exactly one of `smooth` and `pd_mode` must be set")]
    Context,
    #[error("a smooth spin manifold has no eta^2 or i eta^2 components in its top attaching map")]
    SmoothSpinSecondary,
    #[error("spin, but the top attaching map has an active eta, eta~ or i_P eta~ component")]
    SpinActive,
    #[error("non-spin, but the top attaching map has no active eta, eta~ or i_P eta~ component")]
    NonSpinInactive,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HEntry {
    Zero,
    Eta,
    I3Eta,
}

impl fmt::Display for HEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HEntry::Zero => "0",
            HEntry::Eta => "eta",
            HEntry::I3Eta => "i3eta",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MooreRow {
    pub r: u32,
    pub entries: Vec<HEntry>,
}

/// `(d + t2) x l` matrix of the 4-cell attaching map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HMatrix {
    pub cols: usize,
    pub sphere: Vec<Vec<HEntry>>,
    pub moore: Vec<MooreRow>,
}

impl HMatrix {
    pub fn zero(cols: usize, sphere_rows: usize, exponents: &[u32]) -> Self {
        HMatrix {
            cols,
            sphere: vec![vec![HEntry::Zero; cols]; sphere_rows],
            moore: exponents.iter().map(|&r| MooreRow { r, entries: vec![HEntry::Zero; cols] }).collect(),
        }
    }

    /// Builds a matrix from bit rows (`true` is `eta` resp. `i3eta`).
    pub fn from_bits(cols: usize, sphere: &[Vec<bool>], moore: &[(u32, Vec<bool>)]) -> Self {
        let conv = |row: &[bool], e: HEntry| row.iter().map(|&b| if b { e } else { HEntry::Zero }).collect();
        HMatrix {
            cols,
            sphere: sphere.iter().map(|r| conv(r, HEntry::Eta)).collect(),
            moore: moore.iter().map(|(r, row)| MooreRow { r: *r, entries: conv(row, HEntry::I3Eta) }).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        for (i, row) in self.sphere.iter().enumerate() {
            if row.len() != self.cols {
                return Err(ReductionError::RowLength { row: i, got: row.len(), cols: self.cols });
            }
            if let Some(&e) = row.iter().find(|&&e| e == HEntry::I3Eta) {
                return Err(ReductionError::BadEntry { row: i, entry: e, kind: "sphere" });
            }
        }
        for (j, row) in self.moore.iter().enumerate() {
            let i = self.sphere.len() + j;
            if row.entries.len() != self.cols {
                return Err(ReductionError::RowLength { row: i, got: row.entries.len(), cols: self.cols });
            }
            if row.r == 0 {
                return Err(ReductionError::ZeroExponent { row: j });
            }
            if let Some(&e) = row.entries.iter().find(|&&e| e == HEntry::Eta) {
                return Err(ReductionError::BadEntry { row: i, entry: e, kind: "Moore" });
            }
        }
        Ok(())
    }

    pub fn sphere_bits(&self) -> Vec<Vec<bool>> {
        self.sphere.iter().map(|r| r.iter().map(|&e| e != HEntry::Zero).collect()).collect()
    }

    pub fn moore_bits(&self) -> Vec<Vec<bool>> {
        self.moore.iter().map(|r| r.entries.iter().map(|&e| e != HEntry::Zero).collect()).collect()
    }

    fn rebuilt(&self, sphere: &[Vec<bool>], moore: &[Vec<bool>]) -> HMatrix {
        let exps: Vec<(u32, Vec<bool>)> = self.moore.iter().zip(moore).map(|(m, b)| (m.r, b.clone())).collect();
        HMatrix::from_bits(self.cols, sphere, &exps)
    }
}

/// Rank over the field with two elements.
pub fn f2_rank(rows: &[Vec<bool>]) -> usize {
    let mut rows: Vec<Vec<bool>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] {
                let pivot = rows[rank].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HReduction {
    pub c1: usize,
    pub c2: usize,
    /// columns holding the `eta` pivots, in pivot order
    pub consumed_sphere_cols: Vec<usize>,
    /// original indices of the Moore rows that become `C^5_r`, ascending
    pub consumed_moore_rows: Vec<usize>,
    pub normal_form: HMatrix,
}

fn xor_into(dst: &mut [bool], src: &[bool]) {
    dst.iter_mut().zip(src).for_each(|(a, b)| *a ^= b);
}

fn add_col(rows: &mut [Vec<bool>], dst: usize, src: usize) {
    for row in rows.iter_mut() {
        if row[src] {
            row[dst] ^= true;
        }
    }
}

/// Greedy elimination to the block normal form `diag(D_c1, E_c2)`.
///
/// Sphere rows are reduced first, their pivot columns are then cleared from
/// the Moore rows, and the Moore rows are processed by descending exponent
/// (ties by index), since a row may only be added into rows of lower or equal
/// exponent.
pub fn reduce_h_matrix(m: &HMatrix) -> Result<HReduction, ReductionError> {
    m.validate()?;
    let cols = m.cols;
    let mut sphere = m.sphere_bits();
    let mut moore = m.moore_bits();

    // reduced row echelon form of the sphere block
    let mut sphere_pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(p) = (next..sphere.len()).find(|&i| sphere[i][c]) else { continue };
        sphere.swap(next, p);
        for i in 0..sphere.len() {
            if i != next && sphere[i][c] {
                let pivot = sphere[next].clone();
                xor_into(&mut sphere[i], &pivot);
            }
        }
        sphere_pivots.push((next, c));
        next += 1;
    }

    // column moves: clear the rest of each sphere pivot row
    for &(row, c) in &sphere_pivots {
        for j in 0..cols {
            if j != c && sphere[row][j] {
                add_col(&mut sphere, j, c);
                add_col(&mut moore, j, c);
            }
        }
    }
    // i3 moves: clear Moore entries under sphere pivots
    for &(row, c) in &sphere_pivots {
        for mrow in moore.iter_mut() {
            if mrow[c] {
                xor_into(mrow, &sphere[row]);
            }
        }
    }

    let mut order: Vec<usize> = (0..moore.len()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(m.moore[j].r), j));
    let mut moore_pivots: Vec<(usize, usize)> = Vec::new();
    for &j in &order {
        for &(pj, pc) in &moore_pivots {
            if moore[j][pc] {
                let pivot = moore[pj].clone();
                xor_into(&mut moore[j], &pivot);
            }
        }
        if let Some(c) = moore[j].iter().position(|&b| b) {
            moore_pivots.push((j, c));
        }
    }
    for &(pj, pc) in &moore_pivots {
        for j in 0..cols {
            if j != pc && moore[pj][j] {
                add_col(&mut sphere, j, pc);
                add_col(&mut moore, j, pc);
            }
        }
    }

    let mut consumed_moore_rows: Vec<usize> = moore_pivots.iter().map(|&(j, _)| j).collect();
    consumed_moore_rows.sort_unstable();
    Ok(HReduction {
        c1: sphere_pivots.len(),
        c2: moore_pivots.len(),
        consumed_sphere_cols: sphere_pivots.iter().map(|&(_, c)| c).collect(),
        consumed_moore_rows,
        normal_form: m.rebuilt(&sphere, &moore),
    })
}

/// Effect of one move on a nonzero source entry, decided by composing in `maps`.
#[derive(Default)]
struct MoveTable {
    cache: HashMap<(Generator, ElementaryComplex, ElementaryComplex), bool>,
}

impl MoveTable {
    /// Whether `g o x` is nonzero, where `x` is the nonzero class `S^4 -> src`.
    fn hits(&mut self, g: Generator, src: ElementaryComplex, dst: ElementaryComplex) -> Result<bool, MapError> {
        if let Some(&b) = self.cache.get(&(g, src, dst)) {
            return Ok(b);
        }
        let s4 = Sphere(4);
        let entry = match src {
            Sphere(_) => MapClass::basic(Generator::Eta, s4, src)?,
            _ => MapClass::basic(Generator::IEta, s4, src)?,
        };
        let out = compose(&MapClass::basic(g, src, dst)?, &entry)?;
        let b = !out.terms.is_empty();
        self.cache.insert((g, src, dst), b);
        Ok(b)
    }
}

/// All matrices reachable from `m` by at most `move_budget` moves.
///
/// Moves are the wedge self-equivalences: adding one target summand into
/// another (sphere into sphere, sphere into Moore through `i`, Moore into
/// Moore through `B(chi)`, Moore into sphere through `eta q`) and adding one
/// column into another. Each move's effect is computed with [`compose`].
pub fn enumerate_orbit(m: &HMatrix, move_budget: usize) -> Result<BTreeSet<HMatrix>, ReductionError> {
    m.validate()?;
    let rows = m.sphere.len() + m.moore.len();
    if rows > 3 || m.cols > 3 {
        return Err(ReductionError::TooLarge { rows, cols: m.cols });
    }
    let s3 = Sphere(3);
    let target = |i: usize| -> ElementaryComplex {
        if i < m.sphere.len() {
            s3
        } else {
            Moore(4, 1u64 << m.moore[i - m.sphere.len()].r)
        }
    };
    let mut table = MoveTable::default();
    // effective[src][dst]: adding row src into row dst changes dst
    let mut effective = vec![vec![false; rows]; rows];
    for (src, row) in effective.iter_mut().enumerate() {
        for (dst, cell) in row.iter_mut().enumerate() {
            if src == dst {
                continue;
            }
            let (a, b) = (target(src), target(dst));
            let g = match (a, b) {
                (Sphere(_), Sphere(_)) => Generator::Identity,
                (Sphere(_), _) => Generator::IncBottom,
                (_, Sphere(_)) => Generator::EtaQ,
                _ if a == b => Generator::Identity,
                _ => Generator::BChi,
            };
            *cell = table.hits(g, a, b)?;
        }
    }

    let to_bits = |h: &HMatrix| -> Vec<Vec<bool>> {
        let mut all = h.sphere_bits();
        all.extend(h.moore_bits());
        all
    };
    let from_bits = |bits: &[Vec<bool>]| -> HMatrix {
        let (s, mo) = bits.split_at(m.sphere.len());
        m.rebuilt(s, mo)
    };

    let mut seen: BTreeSet<HMatrix> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(m.clone());
    queue.push_back((to_bits(m), 0usize));
    while let Some((bits, depth)) = queue.pop_front() {
        if depth >= move_budget {
            continue;
        }
        let mut push = |next: Vec<Vec<bool>>| {
            let h = from_bits(&next);
            if seen.insert(h) {
                queue.push_back((next, depth + 1));
            }
        };
        for src in 0..rows {
            for dst in 0..rows {
                if effective[src][dst] {
                    let mut next = bits.clone();
                    let s = next[src].clone();
                    xor_into(&mut next[dst], &s);
                    push(next);
                }
            }
        }
        for src in 0..m.cols {
            for dst in 0..m.cols {
                if src != dst {
                    let mut next = bits.clone();
                    add_col(&mut next, dst, src);
                    push(next);
                }
            }
        }
    }
    Ok(seen)
}

/// Coefficients of the top-cell attaching map on one `P^4(2^r)` summand:
/// `z * eta~_r + eps * i3 eta^2`. At `r = 1` the pair encodes `z + 2 eps` in `Z/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MooreCoeff {
    /// index into the 2-primary summands of `T`
    pub index: usize,
    pub r: u32,
    pub z: bool,
    pub eps: bool,
}

impl MooreCoeff {
    /// Reads a `Z/4` coefficient of `eta~_1`.
    pub fn from_mod4(index: usize, c: u8) -> Self {
        let c = c % 4;
        MooreCoeff { index, r: 1, z: c % 2 == 1, eps: c >= 2 }
    }

    pub fn as_mod4(&self) -> u8 {
        u8::from(self.z) + 2 * u8::from(self.eps)
    }
}

/// Coefficient of `i_P eta~_r` on one `C^5_r` summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChangCoeff {
    pub index: usize,
    pub r: u32,
    pub active: bool,
}

/// The top-cell attaching map `S^5 -> W` restricted to the 2-local part.
/// The Whitehead-product component is always zero and has no field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PhiVector {
    /// `eta^2` on the `S^3` summands
    pub x: Vec<bool>,
    /// `eta` on the `S^4` summands
    pub y: Vec<bool>,
    pub moore: Vec<MooreCoeff>,
    pub w: Vec<ChangCoeff>,
}

impl PhiVector {
    pub fn is_zero(&self) -> bool {
        !self.x.iter().any(|&b| b)
            && !self.y.iter().any(|&b| b)
            && !self.moore.iter().any(|m| m.z || m.eps)
            && !self.w.iter().any(|c| c.active)
    }

    fn cleared(&self) -> PhiVector {
        PhiVector {
            x: vec![false; self.x.len()],
            y: vec![false; self.y.len()],
            moore: self.moore.iter().map(|m| MooreCoeff { z: false, eps: false, ..*m }).collect(),
            w: self.w.iter().map(|c| ChangCoeff { active: false, ..*c }).collect(),
        }
    }

    /// Any `eta`, `eta~` or `i_P eta~` component.
    pub fn has_primary(&self) -> bool {
        self.y.iter().any(|&b| b) || self.moore.iter().any(|m| m.z) || self.w.iter().any(|c| c.active)
    }
}

/// Homotopy type of the top piece. Indices are positions among the
/// 2-primary summands of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AttachCase {
    /// `S^6`
    Null,
    /// `C^6_eta`, absorbing one `S^4`
    EtaTop,
    /// `A^6(eta~_r)`, absorbing `P^4(2^r)`
    TildeEtaTop { index: usize, r: u32 },
    /// `A^6(i_P eta~_r)`, absorbing `C^5_r`
    IPTildeEtaTop { index: usize, r: u32 },
    /// `S^3 cup_{eta^2} e^6`, absorbing one `S^3`
    EtaSqTop,
    /// `P^4(2^r) cup_{i eta^2} e^6`, absorbing `P^4(2^r)`
    IEtaSqTop { index: usize, r: u32 },
}

impl AttachCase {
    pub fn is_spin(&self) -> bool {
        matches!(self, AttachCase::Null | AttachCase::EtaSqTop | AttachCase::IEtaSqTop { .. })
    }

    pub fn needs_pd_mode(&self) -> bool {
        matches!(self, AttachCase::EtaSqTop | AttachCase::IEtaSqTop { .. })
    }

    /// Human-readable name of the case.
    pub fn label(&self) -> &'static str {
        match self {
            AttachCase::Null => "spin, trivial top attaching map",
            AttachCase::EtaTop => "non-spin, eta top cell",
            AttachCase::TildeEtaTop { .. } => "non-spin, eta~ top cell on a Moore summand",
            AttachCase::IPTildeEtaTop { .. } => "non-spin, i_P eta~ top cell on a Chang summand",
            AttachCase::EtaSqTop => "Poincare complex, eta^2 top cell",
            AttachCase::IEtaSqTop { .. } => "Poincare complex, i eta^2 top cell on a Moore summand",
        }
    }

    pub fn exponent(&self) -> Option<u32> {
        match *self {
            AttachCase::TildeEtaTop { r, .. } | AttachCase::IPTildeEtaTop { r, .. } | AttachCase::IEtaSqTop { r, .. } => {
                Some(r)
            }
            _ => None,
        }
    }
}

impl fmt::Display for AttachCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttachCase::Null => write!(f, "null"),
            AttachCase::EtaTop => write!(f, "eta"),
            AttachCase::TildeEtaTop { index, .. } => write!(f, "tilde_eta {index}"),
            AttachCase::IPTildeEtaTop { index, .. } => write!(f, "ip_tilde_eta {index}"),
            AttachCase::EtaSqTop => write!(f, "eta_sq"),
            AttachCase::IEtaSqTop { index, .. } => write!(f, "i_eta_sq {index}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiContext {
    pub spin: bool,
    pub smooth: bool,
    pub pd_mode: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReduction {
    pub case: AttachCase,
    /// a vector in the orbit of the input with one active component
    pub representative: PhiVector,
    /// both `eta^2` and `i eta^2` components were active and nothing dominated them
    pub remark_derived: bool,
}

/// Dominance normalization of the top attaching map.
///
/// `eta~`/`i_P eta~` components win (smallest exponent, Moore before Chang on
/// ties), then `eta`, then in Poincare-complex mode `eta^2` (it clears every
/// `i eta^2` through the bottom-cell inclusion, never conversely), then
/// `i eta^2` with the largest exponent.
pub fn reduce_phi(v: &PhiVector, ctx: PhiContext) -> Result<PhiReduction, ReductionError> {
    if ctx.smooth == ctx.pd_mode {
        return Err(ReductionError::Context);
    }
    let any_x = v.x.iter().any(|&b| b);
    let any_eps = v.moore.iter().any(|m| m.eps);
    if ctx.smooth && ctx.spin && (any_x || any_eps) {
        return Err(ReductionError::SmoothSpinSecondary);
    }
    match (ctx.spin, v.has_primary()) {
        (true, true) => return Err(ReductionError::SpinActive),
        (false, false) => return Err(ReductionError::NonSpinInactive),
        _ => {}
    }

    let mut rep = v.cleared();
    let best_z = v.moore.iter().enumerate().filter(|(_, m)| m.z).min_by_key(|(pos, m)| (m.r, *pos));
    let best_w = v.w.iter().enumerate().filter(|(_, c)| c.active).min_by_key(|(pos, c)| (c.r, *pos));
    let case = match (best_z, best_w) {
        (Some((pos, m)), w) if w.is_none_or(|(_, c)| m.r <= c.r) => {
            rep.moore[pos].z = true;
            AttachCase::TildeEtaTop { index: m.index, r: m.r }
        }
        (_, Some((pos, c))) => {
            rep.w[pos].active = true;
            AttachCase::IPTildeEtaTop { index: c.index, r: c.r }
        }
        (None, None) if v.y.iter().any(|&b| b) => {
            rep.y[0] = true;
            AttachCase::EtaTop
        }
        _ if ctx.pd_mode && any_x => {
            rep.x[0] = true;
            AttachCase::EtaSqTop
        }
        _ if ctx.pd_mode && any_eps => {
            let (pos, m) = v
                .moore
                .iter()
                .enumerate()
                .filter(|(_, m)| m.eps)
                .max_by_key(|(pos, m)| (m.r, std::cmp::Reverse(*pos)))
                .expect("some eps is active");
            rep.moore[pos].eps = true;
            AttachCase::IEtaSqTop { index: m.index, r: m.r }
        }
        _ => AttachCase::Null,
    };
    Ok(PhiReduction { case, representative: rep, remark_derived: ctx.pd_mode && any_x && any_eps && !v.has_primary() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMOOTH_SPIN: PhiContext = PhiContext { spin: true, smooth: true, pd_mode: false };
    const SMOOTH: PhiContext = PhiContext { spin: false, smooth: true, pd_mode: false };
    const PD_SPIN: PhiContext = PhiContext { spin: true, smooth: false, pd_mode: true };
    const PD: PhiContext = PhiContext { spin: false, smooth: false, pd_mode: true };

    fn phi(x: &[bool], y: &[bool], moore: &[(u32, bool, bool)], w: &[(u32, bool)]) -> PhiVector {
        PhiVector {
            x: x.to_vec(),
            y: y.to_vec(),
            moore: moore.iter().enumerate().map(|(i, &(r, z, eps))| MooreCoeff { index: i, r, z, eps }).collect(),
            w: w.iter()
                .enumerate()
                .map(|(i, &(r, active))| ChangCoeff { index: moore.len() + i, r, active })
                .collect(),
        }
    }

    #[test]
    fn h_matrix_examples() {
        let zero = HMatrix::zero(2, 1, &[1]);
        let red = reduce_h_matrix(&zero).unwrap();
        assert_eq!((red.c1, red.c2), (0, 0));

        let one = HMatrix::from_bits(1, &[vec![true]], &[]);
        let red = reduce_h_matrix(&one).unwrap();
        assert_eq!((red.c1, red.c2), (1, 0));

        let m = HMatrix::from_bits(1, &[], &[(2, vec![true]), (1, vec![true])]);
        let red = reduce_h_matrix(&m).unwrap();
        assert_eq!((red.c1, red.c2), (0, 1));
        assert_eq!(red.consumed_moore_rows, vec![0]);
        assert_eq!(red.normal_form.moore_bits(), vec![vec![true], vec![false]]);
    }

    #[test]
    fn h_matrix_normal_form_shape() {
        let m = HMatrix::from_bits(
            3,
            &[vec![true, true, false], vec![true, true, false]],
            &[(1, vec![true, false, true])],
        );
        let red = reduce_h_matrix(&m).unwrap();
        assert_eq!((red.c1, red.c2), (1, 1));
        let ones: usize = red.normal_form.sphere_bits().iter().chain(&red.normal_form.moore_bits()).flatten().filter(|&&b| b).count();
        assert_eq!(ones, 2);
    }

    #[test]
    fn malformed_entries() {
        let mut m = HMatrix::zero(1, 1, &[]);
        m.sphere[0][0] = HEntry::I3Eta;
        assert!(matches!(reduce_h_matrix(&m), Err(ReductionError::BadEntry { .. })));
        let mut m = HMatrix::zero(1, 0, &[1]);
        m.moore[0].entries.push(HEntry::Zero);
        assert!(matches!(reduce_h_matrix(&m), Err(ReductionError::RowLength { .. })));
    }

    #[test]
    fn orbit_examples() {
        let zero = HMatrix::zero(1, 1, &[]);
        assert_eq!(enumerate_orbit(&zero, 10).unwrap().len(), 1);
        let eta = HMatrix::from_bits(1, &[vec![true]], &[]);
        assert_eq!(enumerate_orbit(&eta, 10).unwrap().len(), 1);
        let m = HMatrix::from_bits(1, &[], &[(1, vec![true]), (2, vec![true])]);
        let orbit = enumerate_orbit(&m, 10).unwrap();
        assert!(orbit.contains(&HMatrix::from_bits(1, &[], &[(1, vec![false]), (2, vec![true])])));
        // the lower exponent cannot clear the higher one
        assert!(!orbit.contains(&HMatrix::from_bits(1, &[], &[(1, vec![true]), (2, vec![false])])));
        assert!(enumerate_orbit(&HMatrix::zero(4, 1, &[]), 1).is_err());
    }

    #[test]
    fn f2_rank_basics() {
        assert_eq!(f2_rank(&[vec![true, true], vec![true, true]]), 1);
        assert_eq!(f2_rank(&[vec![true, false], vec![false, true]]), 2);
        assert_eq!(f2_rank(&[]), 0);
    }

    #[test]
    fn phi_examples() {
        let v = phi(&[], &[false], &[], &[]);
        assert_eq!(reduce_phi(&v, SMOOTH_SPIN).unwrap().case, AttachCase::Null);

        let v = phi(&[true], &[true, false], &[(2, false, true)], &[]);
        let red = reduce_phi(&v, PD).unwrap();
        assert_eq!(red.case, AttachCase::EtaTop);
        assert_eq!(red.representative, phi(&[false], &[true, false], &[(2, false, false)], &[]));

        let v = phi(&[], &[false], &[(3, true, false)], &[(2, true)]);
        assert_eq!(reduce_phi(&v, SMOOTH).unwrap().case, AttachCase::IPTildeEtaTop { index: 1, r: 2 });

        let v = phi(&[true], &[false], &[], &[]);
        assert_eq!(reduce_phi(&v, PD_SPIN).unwrap().case, AttachCase::EtaSqTop);
    }

    #[test]
    fn phi_tie_rules() {
        let v = phi(&[], &[true], &[(2, true, false)], &[(2, true)]);
        assert_eq!(reduce_phi(&v, SMOOTH).unwrap().case, AttachCase::TildeEtaTop { index: 0, r: 2 });
        let v = phi(&[], &[], &[(3, true, false), (1, true, true)], &[]);
        assert_eq!(reduce_phi(&v, SMOOTH).unwrap().case, AttachCase::TildeEtaTop { index: 1, r: 1 });
        let v = phi(&[], &[], &[(1, false, true), (3, false, true), (3, false, true)], &[]);
        assert_eq!(reduce_phi(&v, PD_SPIN).unwrap().case, AttachCase::IEtaSqTop { index: 1, r: 3 });
        let v = phi(&[true, false], &[false], &[(2, false, true)], &[]);
        let red = reduce_phi(&v, PD_SPIN).unwrap();
        assert_eq!(red.case, AttachCase::EtaSqTop);
        assert!(red.remark_derived);
    }

    #[test]
    fn phi_mod4_coefficients() {
        assert_eq!(MooreCoeff::from_mod4(0, 2), MooreCoeff { index: 0, r: 1, z: false, eps: true });
        for c in 0..4 {
            assert_eq!(MooreCoeff::from_mod4(3, c).as_mod4(), c);
        }
        let v = PhiVector { x: vec![], y: vec![], moore: vec![MooreCoeff::from_mod4(0, 2)], w: vec![] };
        assert_eq!(reduce_phi(&v, PD_SPIN).unwrap().case, AttachCase::IEtaSqTop { index: 0, r: 1 });
        let v = PhiVector { x: vec![], y: vec![], moore: vec![MooreCoeff::from_mod4(0, 3)], w: vec![] };
        assert_eq!(reduce_phi(&v, SMOOTH).unwrap().case, AttachCase::TildeEtaTop { index: 0, r: 1 });
    }

    #[test]
    fn phi_flag_errors() {
        let v = phi(&[true], &[false], &[], &[]);
        assert_eq!(reduce_phi(&v, SMOOTH_SPIN), Err(ReductionError::SmoothSpinSecondary));
        let v = phi(&[], &[true], &[], &[]);
        assert_eq!(reduce_phi(&v, SMOOTH_SPIN), Err(ReductionError::SpinActive));
        let v = phi(&[], &[false], &[], &[]);
        assert_eq!(reduce_phi(&v, SMOOTH), Err(ReductionError::NonSpinInactive));
        let both = PhiContext { spin: true, smooth: true, pd_mode: true };
        assert_eq!(reduce_phi(&v, both), Err(ReductionError::Context));
    }
}
