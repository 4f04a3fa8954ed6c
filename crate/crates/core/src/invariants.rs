//! Reduced K- and KO-groups and the third cohomotopy group, computed summand
//! by summand over the decompositions and checked against closed forms.

use serde::Serialize;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::decompose::{
    double_suspension_decomposition, resolve, unrestricted_sigma_wedge, DecomposeError, ManifoldDescriptor, Mode,
};
use crate::maps::{mapping_group, MapError, Provenance};
use crate::reduction::AttachCase;
use crate::spaces::ElementaryComplex::{self, *};
use crate::spaces::Wedge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("no {table} entry for {summand}")]
    TableGap { table: &'static str, summand: ElementaryComplex },
    #[error("{what}: summand-wise {summandwise} differs from closed form {closed}")]
    Mismatch { what: &'static str, summandwise: FgAbGroup, closed: FgAbGroup },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Contribution of one wedge summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub summand: ElementaryComplex,
    pub value: FgAbGroup,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Computation {
    pub value: FgAbGroup,
    pub terms: Vec<Term>,
}

impl Computation {
    /// Summands whose entry is not stated directly by the tables.
    pub fn notes(&self) -> Vec<String> {
        self.terms
            .iter()
            .filter(|t| t.provenance != Provenance::Tabulated)
            .map(|t| format!("{} = {} ({})", t.summand, t.value, format!("{:?}", t.provenance).to_lowercase()))
            .collect()
    }
}

fn z() -> FgAbGroup {
    FgAbGroup::free(1)
}

fn z2() -> FgAbGroup {
    FgAbGroup::cyclic(2)
}

/// `K~(X)` for the summands that occur in `Sigma^2 M`.
pub fn k_entry(x: &ElementaryComplex) -> Option<(FgAbGroup, Provenance)> {
    use Provenance::*;
    Some(match *x {
        Sphere(n) => (if n % 2 == 0 { z() } else { FgAbGroup::zero() }, Tabulated),
        Moore(n, k) => (if n % 2 == 0 { FgAbGroup::cyclic(k) } else { FgAbGroup::zero() }, Tabulated),
        ChangEta(n) => (if n % 2 == 0 { z().power(2) } else { FgAbGroup::zero() }, Tabulated),
        ChangR(6, _) | AIP(7, _) => (z(), Tabulated),
        ATilde(7, _) => (FgAbGroup::zero(), Tabulated),
        SEtaSq(7) => (z(), Derived),
        AEpsSq(7, _) => (FgAbGroup::zero(), Derived),
        _ => return None,
    })
}

/// `KO~^2(X)` for the summands that occur in `Sigma^2 M`.
pub fn ko2_entry(x: &ElementaryComplex) -> Option<(FgAbGroup, Provenance)> {
    use Provenance::*;
    let zz2 = || z().direct_sum(&z2());
    Some(match *x {
        // KO~^2(S^n) = KO~(S^{n-2})
        Sphere(n) if n >= 2 => {
            let g = match (n - 2) % 8 {
                0 | 4 => z(),
                1 | 2 => z2(),
                _ => FgAbGroup::zero(),
            };
            (g, Tabulated)
        }
        Moore(4..=6, k) if k % 2 == 1 => (FgAbGroup::zero(), Tabulated),
        Moore(5, k) if k.is_power_of_two() => (z2(), Tabulated),
        ChangEta(7) => (FgAbGroup::zero(), Tabulated),
        ChangEta(6) | ChangR(6, _) | AIP(7, _) => (zz2(), Tabulated),
        ATilde(7, _) => (z2(), Tabulated),
        SEtaSq(7) | AEpsSq(7, _) => (z2(), Derived),
        _ => return None,
    })
}

fn summandwise(
    w: &Wedge,
    table: &'static str,
    entry: impl Fn(&ElementaryComplex) -> Option<(FgAbGroup, Provenance)>,
) -> Result<Computation, InvariantError> {
    let mut value = FgAbGroup::zero();
    let mut terms = Vec::new();
    for x in w.summands() {
        let (g, provenance) = entry(x).ok_or(InvariantError::TableGap { table, summand: *x })?;
        value = value.direct_sum(&g);
        terms.push(Term { summand: *x, value: g, provenance });
    }
    Ok(Computation { value, terms })
}

/// `Z^{d+l} + H + H`
pub fn k_closed_form(m: &ManifoldDescriptor) -> FgAbGroup {
    FgAbGroup::free(m.d + m.l).direct_sum(&m.h).direct_sum(&m.h)
}

/// `Z^l + (Z/2)^{l+d+t2}`
pub fn ko_closed_form(m: &ManifoldDescriptor) -> FgAbGroup {
    FgAbGroup::free(m.l).direct_sum(&z2().power(m.l + m.d + m.t2() as u32))
}

/// `K~(M)`, summed over `Sigma^2 M` (Bott periodicity) and checked against
/// the closed form.
pub fn k_group(m: &ManifoldDescriptor) -> Result<Computation, InvariantError> {
    let w = double_suspension_decomposition(m)?;
    let comp = summandwise(&w, "K", k_entry)?;
    let closed = k_closed_form(m);
    if comp.value != closed {
        return Err(InvariantError::Mismatch { what: "K", summandwise: comp.value, closed });
    }
    Ok(comp)
}

/// `KO~(M) = KO~^2(Sigma^2 M)`, summed over the wedge and checked against
/// the closed form.
pub fn ko_group(m: &ManifoldDescriptor) -> Result<Computation, InvariantError> {
    let w = double_suspension_decomposition(m)?;
    let comp = summandwise(&w, "KO^2", ko2_entry)?;
    let closed = ko_closed_form(m);
    if comp.value != closed {
        return Err(InvariantError::Mismatch { what: "KO", summandwise: comp.value, closed });
    }
    Ok(comp)
}

/// `pi^3(M)` from the closed forms for the smooth cases; the `eta^2` top
/// cell is handled the same way, the `i eta^2` top cell is not.
pub fn pi3(m: &ManifoldDescriptor) -> Result<FgAbGroup, InvariantError> {
    let res = resolve(m, Mode::Double)?;
    let exps = m.two_exponents();
    let (l, c1, c2) = (m.l, res.c1, res.c2);
    assert!(l >= c1 + c2, "bounds guarantee l >= c1 + c2");
    let t_rest = m.t.quotient_by_summands(&res.consumed).map_err(|e| InvariantError::Unsupported(e.to_string()))?;
    let chang = |skip: Option<usize>| -> FgAbGroup {
        res.consumed
            .iter()
            .filter(|&&j| Some(j) != skip)
            .fold(FgAbGroup::zero(), |acc, &j| acc.direct_sum(&FgAbGroup::cyclic(1 << (exps[j] + 1))))
    };
    let base = |twos: u32| FgAbGroup::free(m.d).direct_sum(&z2().power(twos));
    let free_spheres = l - c1 - c2;
    Ok(match res.case {
        AttachCase::Null | AttachCase::EtaSqTop => base(free_spheres + 1 - u32::from(res.case == AttachCase::EtaSqTop))
            .direct_sum(&t_rest)
            .direct_sum(&chang(None)),
        AttachCase::EtaTop => base(free_spheres).direct_sum(&t_rest).direct_sum(&chang(None)),
        AttachCase::TildeEtaTop { index, r } => {
            // position of the summand once the consumed ones are gone
            let pos = index - res.consumed.iter().filter(|&&j| j < index).count();
            let quotient = t_rest.quotient_by_summands(&[pos]).map_err(|e| InvariantError::Unsupported(e.to_string()))?;
            base(free_spheres)
                .direct_sum(&quotient)
                .direct_sum(&chang(None))
                .direct_sum(&FgAbGroup::cyclic(1 << (r - 1)))
        }
        AttachCase::IPTildeEtaTop { index, r } => base(free_spheres)
            .direct_sum(&t_rest)
            .direct_sum(&chang(Some(index)))
            .direct_sum(&FgAbGroup::cyclic(1 << r)),
        AttachCase::IEtaSqTop { .. } => {
            return Err(InvariantError::Unsupported(
                "pi^3 with an i eta^2 top cell: the extension in [A^6(2^r eta^2), S^4] is not determined".into(),
            ))
        }
    })
}

/// `[Sigma M, S^4]` summed over the wedge of `Sigma M`.
///
/// In double mode with 3-torsion in `H` the `Sigma M` wedge is only a
/// suspension-level statement; the odd Moore summands contribute zero either way.
pub fn pi4_sigma_crosscheck(m: &ManifoldDescriptor) -> Result<Computation, InvariantError> {
    let w = unrestricted_sigma_wedge(m)?;
    let target = Sphere(4);
    let mut value = FgAbGroup::zero();
    let mut terms = Vec::new();
    for x in w.summands() {
        let g = mapping_group(x, &target).map_err(|e| match e {
            MapError::UnsupportedPair { .. } => InvariantError::TableGap { table: "[X, S^4]", summand: *x },
            e => e.into(),
        })?;
        let group = g.group();
        value = value.direct_sum(&group);
        terms.push(Term { summand: *x, value: group, provenance: g.provenance });
    }
    Ok(Computation { value, terms })
}

/// Degrees in which the cohomotopy Hurewicz map `pi^i(M) -> H^i(M)` is an
/// isomorphism; returns `H^i(M)` there.
pub fn hurewicz_cohomotopy(m: &ManifoldDescriptor, i: u32) -> Result<FgAbGroup, InvariantError> {
    match i {
        1 => Ok(FgAbGroup::free(m.l)),
        5 => Ok(z()),
        6.. => Ok(FgAbGroup::zero()),
        _ => Err(InvariantError::Unsupported(format!("cohomotopy Hurewicz map in degree {i}"))),
    }
}
