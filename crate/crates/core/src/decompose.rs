//! From a manifold descriptor to homotopy decompositions of `Sigma M` and
//! `Sigma^2 M`.
//!
//! The homology of `M` is fixed by `(l, d, H, T)`:
//! `H_1 = Z^l + H`, `H_2 = Z^d + T`, `H_3 = Z^d + H`, `H_4 = Z^l`, `H_5 = Z`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::reduction::{
    reduce_h_matrix, reduce_phi, AttachCase, ChangCoeff, HMatrix, HReduction, MooreCoeff, PhiContext, PhiVector,
    ReductionError,
};
use crate::spaces::ElementaryComplex::{self, *};
use crate::spaces::{copies, peterson, suspend_wedge, Wedge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Single,
    Double,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Single => "single",
            Mode::Double => "double",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single" => Ok(Mode::Single),
            "double" => Ok(Mode::Double),
            _ => Err(format!("unknown mode `{s}` (expected single or double)")),
        }
    }
}

/// `c1`, `c2` and the top-cell case supplied directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantData {
    pub c1: u32,
    pub c2: u32,
    /// positions among the 2-primary summands of `T` that become `C^5_r`
    pub consumed: Vec<usize>,
    pub case: AttachCase,
}

/// Top attaching map in the coordinates of the reduced `W_5`.
///
/// `z`/`eps` run over the unconsumed 2-primary summands of `T` in order,
/// `w` over the consumed ones.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhiInput {
    pub x: Vec<bool>,
    pub y: Vec<bool>,
    pub z: Vec<bool>,
    pub eps: Vec<bool>,
    pub w: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescriptorData {
    Invariant(InvariantData),
    Attaching { h_matrix: HMatrix, phi: PhiInput },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldDescriptor {
    pub l: u32,
    pub d: u32,
    pub h: FgAbGroup,
    pub t: FgAbGroup,
    pub spin: bool,
    pub smooth: bool,
    pub pd_mode: bool,
    pub data: DescriptorData,
}

impl ManifoldDescriptor {
    /// Exponents `r_j` of the 2-primary summands `Z/2^{r_j}` of `T`, ascending.
    pub fn two_exponents(&self) -> Vec<u32> {
        self.t.torsion().iter().filter(|&&(p, _)| p == 2).map(|&(_, e)| e).collect()
    }

    pub fn t2(&self) -> usize {
        self.two_exponents().len()
    }
}

/// `H_i(M)` read off from the descriptor.
pub fn manifold_homology(m: &ManifoldDescriptor, i: u32) -> FgAbGroup {
    match i {
        0 | 5 => FgAbGroup::free(1),
        1 => FgAbGroup::free(m.l).direct_sum(&m.h),
        2 => FgAbGroup::free(m.d).direct_sum(&m.t),
        3 => FgAbGroup::free(m.d).direct_sum(&m.h),
        4 => FgAbGroup::free(m.l),
        _ => FgAbGroup::zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    NonPositive(&'static str),
    FreePart(&'static str),
    TwoTorsionInH,
    ThreeTorsionInH,
    Flags,
    C1Bound { c1: u32, max: u32 },
    C2Bound { c2: u32, max: u32 },
    ConsumedCount { expected: u32, got: usize },
    ConsumedIndex { index: usize, t2: usize },
    ConsumedDuplicate(usize),
    CaseSpin { case: String, spin: bool },
    CaseNeedsPdMode(String),
    CaseIndex { case: String, reason: &'static str },
    CaseExponent { index: usize, expected: u32, got: u32 },
    NoSphereForEtaSq,
    Shape(String),
    PhiLength { block: &'static str, expected: usize, got: usize },
    Reduction(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositive(name) => write!(f, "{name} must be at least 1"),
            Violation::FreePart(name) => write!(f, "{name} must be a torsion group"),
            Violation::TwoTorsionInH => write!(f, "H contains 2-torsion"),
            Violation::ThreeTorsionInH => write!(f, "H contains 3-torsion"),
            Violation::Flags => write!(f, "exactly one of smooth and pd_mode must be true"),
            Violation::C1Bound { c1, max } => write!(f, "c1 = {c1} exceeds min(l, d) = {max}"),
            Violation::C2Bound { c2, max } => write!(f, "c2 = {c2} exceeds min(l - c1, t2) = {max}"),
            Violation::ConsumedCount { expected, got } => {
                write!(f, "consumed lists {got} summands but c2 = {expected}")
            }
            Violation::ConsumedIndex { index, t2 } => {
                write!(f, "consumed index {index} out of range (T has {t2} 2-primary summands)")
            }
            Violation::ConsumedDuplicate(i) => write!(f, "consumed index {i} listed twice"),
            Violation::CaseSpin { case, spin } => write!(f, "case `{case}` contradicts spin = {spin}"),
            Violation::CaseNeedsPdMode(case) => write!(f, "case `{case}` needs pd_mode"),
            Violation::CaseIndex { case, reason } => write!(f, "case `{case}`: {reason}"),
            Violation::CaseExponent { index, expected, got } => {
                write!(f, "2-primary summand {index} has exponent {expected}, case says {got}")
            }
            Violation::NoSphereForEtaSq => write!(f, "case `eta_sq` needs d - c1 >= 1"),
            Violation::Shape(msg) => write!(f, "h-matrix: {msg}"),
            Violation::PhiLength { block, expected, got } => {
                write!(f, "phi block `{block}` has {got} entries, expected {expected}")
            }
            Violation::Reduction(msg) => write!(f, "{msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("invalid descriptor: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// The invariants that pick the decomposition, however they were obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub c1: u32,
    pub c2: u32,
    /// ascending positions among the 2-primary summands of `T`
    pub consumed: Vec<usize>,
    pub case: AttachCase,
    pub remark_derived: bool,
    pub h_reduction: Option<HReduction>,
    pub trace: Vec<String>,
}

fn check_case(m: &ManifoldDescriptor, c1: u32, consumed: &[usize], case: AttachCase, out: &mut Vec<Violation>) {
    let name = case.to_string();
    if case.is_spin() != m.spin {
        out.push(Violation::CaseSpin { case: name.clone(), spin: m.spin });
    }
    if case.needs_pd_mode() && !m.pd_mode {
        out.push(Violation::CaseNeedsPdMode(name.clone()));
    }
    if case == AttachCase::EtaSqTop && m.d <= c1 {
        out.push(Violation::NoSphereForEtaSq);
    }
    let exps = m.two_exponents();
    let (index, r, want_consumed) = match case {
        AttachCase::TildeEtaTop { index, r } | AttachCase::IEtaSqTop { index, r } => (index, r, false),
        AttachCase::IPTildeEtaTop { index, r } => (index, r, true),
        _ => return,
    };
    let Some(&expected) = exps.get(index) else {
        out.push(Violation::CaseIndex { case: name, reason: "index is not a 2-primary summand of T" });
        return;
    };
    if expected != r {
        out.push(Violation::CaseExponent { index, expected, got: r });
    }
    if consumed.contains(&index) != want_consumed {
        let reason = if want_consumed {
            "summand must be one of the consumed ones"
        } else {
            "summand must not be consumed"
        };
        out.push(Violation::CaseIndex { case: name, reason });
    }
}

fn analyze(m: &ManifoldDescriptor, mode: Mode) -> (Vec<Violation>, Option<Resolution>) {
    let mut out = Vec::new();
    if m.l == 0 {
        out.push(Violation::NonPositive("l"));
    }
    if m.d == 0 {
        out.push(Violation::NonPositive("d"));
    }
    if !m.h.is_torsion() {
        out.push(Violation::FreePart("H"));
    }
    if !m.t.is_torsion() {
        out.push(Violation::FreePart("T"));
    }
    if m.h.has_2_torsion() {
        out.push(Violation::TwoTorsionInH);
    }
    if mode == Mode::Single && m.h.has_3_torsion() {
        out.push(Violation::ThreeTorsionInH);
    }
    if m.smooth == m.pd_mode {
        out.push(Violation::Flags);
    }
    let exps = m.two_exponents();
    let t2 = exps.len();

    let res = match &m.data {
        DescriptorData::Invariant(inv) => {
            let max1 = m.l.min(m.d);
            if inv.c1 > max1 {
                out.push(Violation::C1Bound { c1: inv.c1, max: max1 });
            }
            let max2 = m.l.saturating_sub(inv.c1).min(t2 as u32);
            if inv.c2 > max2 {
                out.push(Violation::C2Bound { c2: inv.c2, max: max2 });
            }
            if inv.consumed.len() != inv.c2 as usize {
                out.push(Violation::ConsumedCount { expected: inv.c2, got: inv.consumed.len() });
            }
            let mut consumed = inv.consumed.clone();
            consumed.sort_unstable();
            for &i in &consumed {
                if i >= t2 {
                    out.push(Violation::ConsumedIndex { index: i, t2 });
                }
            }
            for w in consumed.windows(2) {
                if w[0] == w[1] {
                    out.push(Violation::ConsumedDuplicate(w[0]));
                }
            }
            check_case(m, inv.c1, &consumed, inv.case, &mut out);
            let trace = vec![format!("invariants supplied: c1 = {}, c2 = {}", inv.c1, inv.c2)];
            Resolution {
                c1: inv.c1,
                c2: inv.c2,
                consumed,
                case: inv.case,
                remark_derived: false,
                h_reduction: None,
                trace,
            }
        }
        DescriptorData::Attaching { h_matrix, phi } => match resolve_attaching(m, h_matrix, phi, &exps) {
            Ok(res) => {
                check_case(m, res.c1, &res.consumed, res.case, &mut out);
                res
            }
            Err(v) => {
                out.extend(v);
                return (out, None);
            }
        },
    };
    (out, Some(res))
}

fn resolve_attaching(
    m: &ManifoldDescriptor,
    h: &HMatrix,
    phi: &PhiInput,
    exps: &[u32],
) -> Result<Resolution, Vec<Violation>> {
    let mut shape = Vec::new();
    if h.cols != m.l as usize {
        shape.push(Violation::Shape(format!("{} columns, expected l = {}", h.cols, m.l)));
    }
    if h.sphere.len() != m.d as usize {
        shape.push(Violation::Shape(format!("{} sphere rows, expected d = {}", h.sphere.len(), m.d)));
    }
    let row_exps: Vec<u32> = h.moore.iter().map(|r| r.r).collect();
    if row_exps != exps {
        shape.push(Violation::Shape(format!(
            "Moore row exponents {row_exps:?} do not match the 2-primary part of T {exps:?}"
        )));
    }
    if !shape.is_empty() {
        return Err(shape);
    }
    let red = reduce_h_matrix(h).map_err(|e| vec![Violation::Reduction(e.to_string())])?;
    let (c1, c2) = (red.c1, red.c2);
    let consumed = red.consumed_moore_rows.clone();
    let free: Vec<usize> = (0..exps.len()).filter(|j| !consumed.contains(j)).collect();

    let mut lens = Vec::new();
    let mut want = |block, expected: usize, got: usize| {
        if expected != got {
            lens.push(Violation::PhiLength { block, expected, got });
        }
    };
    want("x", m.d as usize - c1, phi.x.len());
    want("y", m.d as usize, phi.y.len());
    want("z", free.len(), phi.z.len());
    want("eps", free.len(), phi.eps.len());
    want("w", consumed.len(), phi.w.len());
    if !lens.is_empty() {
        return Err(lens);
    }
    let vector = PhiVector {
        x: phi.x.clone(),
        y: phi.y.clone(),
        moore: free
            .iter()
            .zip(phi.z.iter().zip(&phi.eps))
            .map(|(&index, (&z, &eps))| MooreCoeff { index, r: exps[index], z, eps })
            .collect(),
        w: consumed
            .iter()
            .zip(&phi.w)
            .map(|(&index, &active)| ChangCoeff { index, r: exps[index], active })
            .collect(),
    };
    let ctx = PhiContext { spin: m.spin, smooth: m.smooth, pd_mode: m.pd_mode };
    let phi_red = reduce_phi(&vector, ctx).map_err(|e| vec![Violation::Reduction(e.to_string())])?;
    let trace = vec![
        format!("h-matrix reduced: c1 = {c1}, c2 = {c2}, consumed 2-primary summands {consumed:?}"),
        format!("top attaching map normalized to `{}`", phi_red.case),
    ];
    Ok(Resolution {
        c1: c1 as u32,
        c2: c2 as u32,
        consumed,
        case: phi_red.case,
        remark_derived: phi_red.remark_derived,
        h_reduction: Some(red),
        trace,
    })
}

pub fn validate(m: &ManifoldDescriptor, mode: Mode) -> ValidationReport {
    ValidationReport { violations: analyze(m, mode).0 }
}

/// Validates and returns `(c1, c2, consumed, case)`, running the reductions
/// when attaching data is given.
pub fn resolve(m: &ManifoldDescriptor, mode: Mode) -> Result<Resolution, DecomposeError> {
    match analyze(m, mode) {
        (v, Some(res)) if v.is_empty() => Ok(res),
        (violations, _) => Err(DecomposeError::Invalid(ValidationReport { violations })),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySections {
    pub w3: Wedge,
    pub w4: Wedge,
    pub w5: Wedge,
}

fn moore_wedge(g: &FgAbGroup, n: u32) -> Vec<ElementaryComplex> {
    peterson(g, n).map(|w| w.summands().to_vec()).unwrap_or_default()
}

fn two_primary_summands(exps: &[u32], consumed: &[usize]) -> Vec<ElementaryComplex> {
    exps.iter()
        .enumerate()
        .map(|(j, &r)| if consumed.contains(&j) { ChangR(5, r) } else { Moore(4, 1 << r) })
        .collect()
}

/// Homology sections `W_3`, `W_4`, `W_5` of the non-sphere part of `Sigma M`.
pub fn homology_sections(m: &ManifoldDescriptor, mode: Mode) -> Result<HomologySections, DecomposeError> {
    let res = resolve(m, mode)?;
    let (d, l) = (m.d as usize, m.l as usize);
    let (c1, c2) = (res.c1 as usize, res.c2 as usize);
    let mut w3 = copies(Sphere(3), d).summands().to_vec();
    w3.extend(moore_wedge(&m.h, 3));
    w3.extend(moore_wedge(&m.t, 4));
    let mut w4 = w3.clone();
    w4.extend(copies(Sphere(4), d).summands());
    w4.extend(moore_wedge(&m.h, 5));

    let mut w5 = moore_wedge(&m.h, 3);
    w5.extend(moore_wedge(&m.h, 5));
    w5.extend(moore_wedge(&m.t.prime_to(2), 4));
    w5.extend(copies(Sphere(3), d - c1).summands());
    w5.extend(copies(Sphere(4), d).summands());
    w5.extend(copies(Sphere(5), l - c1 - c2).summands());
    w5.extend(copies(ChangEta(5), c1).summands());
    w5.extend(two_primary_summands(&m.two_exponents(), &res.consumed));
    Ok(HomologySections { w3: Wedge::new(w3), w4: Wedge::new(w4), w5: Wedge::new(w5) })
}

/// `Sigma M` as a wedge, before the single/double distinction on `H`.
fn sigma_wedge(m: &ManifoldDescriptor, res: &Resolution) -> Wedge {
    let (d, l) = (m.d as usize, m.l as usize);
    let (c1, c2) = (res.c1 as usize, res.c2 as usize);
    let exps = m.two_exponents();
    let mut s3 = d - c1;
    let mut s4 = d;
    let mut two = two_primary_summands(&exps, &res.consumed);
    let top = match res.case {
        AttachCase::Null => Sphere(6),
        AttachCase::EtaTop => {
            s4 -= 1;
            ChangEta(6)
        }
        AttachCase::EtaSqTop => {
            s3 -= 1;
            SEtaSq(6)
        }
        AttachCase::TildeEtaTop { index, r } => {
            two.remove(index);
            ATilde(6, r)
        }
        AttachCase::IPTildeEtaTop { index, r } => {
            two.remove(index);
            AIP(6, r)
        }
        AttachCase::IEtaSqTop { index, r } => {
            two.remove(index);
            AEpsSq(6, r)
        }
    };
    let mut out = copies(Sphere(2), l).summands().to_vec();
    out.extend(copies(Sphere(3), s3).summands());
    out.extend(copies(Sphere(4), s4).summands());
    out.extend(copies(Sphere(5), l - c1 - c2).summands());
    out.extend(moore_wedge(&m.h, 3));
    out.extend(moore_wedge(&m.h, 5));
    out.extend(moore_wedge(&m.t.prime_to(2), 4));
    out.extend(copies(ChangEta(5), c1).summands());
    out.extend(two);
    out.push(top);
    Wedge::new(out)
}

/// Homotopy type of `Sigma M`; `H` must be free of 2- and 3-torsion.
pub fn suspension_decomposition(m: &ManifoldDescriptor) -> Result<Wedge, DecomposeError> {
    let res = resolve(m, Mode::Single)?;
    Ok(sigma_wedge(m, &res))
}

/// Homotopy type of `Sigma^2 M`; `H` must be free of 2-torsion.
///
/// The 3-primary part of `H` may be attached to the top cell of `Sigma M`,
/// but that component dies after one more suspension.
pub fn double_suspension_decomposition(m: &ManifoldDescriptor) -> Result<Wedge, DecomposeError> {
    let res = resolve(m, Mode::Double)?;
    Ok(suspend_wedge(&sigma_wedge(m, &res)))
}

/// The wedge for the given mode: `Sigma M` or `Sigma^2 M`.
pub fn decomposition(m: &ManifoldDescriptor, mode: Mode) -> Result<Wedge, DecomposeError> {
    match mode {
        Mode::Single => suspension_decomposition(m),
        Mode::Double => double_suspension_decomposition(m),
    }
}

/// `Sigma M` as a wedge without the 3-torsion restriction. In double mode this
/// is only meaningful after one more suspension.
pub(crate) fn unrestricted_sigma_wedge(m: &ManifoldDescriptor) -> Result<Wedge, DecomposeError> {
    let res = resolve(m, Mode::Double)?;
    Ok(sigma_wedge(m, &res))
}
