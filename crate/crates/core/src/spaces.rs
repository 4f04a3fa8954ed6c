//! Elementary complexes (spheres, Moore spaces, Chang complexes and the
//! two-cell top pieces) and their wedges.
//!
//! Dimensions are always the top dimension of the complex. A Moore space
//! `Moore(n, k)` is `P^n(Z/k)`, with reduced homology `Z/k` in degree `n - 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::abelian::{factorize, FgAbGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("{0} is outside the supported parameter range")]
    OutOfRange(String),
    #[error("Peterson space needs a torsion group, got {0}")]
    FreePart(FgAbGroup),
    #[error("cannot parse complex `{0}`")]
    Parse(String),
}

/// One wedge summand. The derived order (variant, then dimension, then
/// parameters) is the canonical order inside a [`Wedge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementaryComplex {
    Sphere(u32),
    /// `P^n(Z/k)`
    Moore(u32, u64),
    /// `S^{n-2} cup_eta e^n`
    ChangEta(u32),
    /// `P^{n-1}(2^r) cup_{i eta} e^n`
    ChangR(u32, u32),
    /// `S^{n-2} cup_{eta q} C P^{n-1}(2^s)`
    ChangS(u32, u32),
    /// `P^{n-1}(2^r) cup_{i eta q} C P^{n-1}(2^s)`, fields `(n, r, s)`
    ChangRS(u32, u32, u32),
    /// `P^{n-2}(2^r) cup_{eta~_r} e^n`
    ATilde(u32, u32),
    /// `C^{n-1}_r cup_{i_P eta~_r} e^n`
    AIP(u32, u32),
    /// `S^{n-3} cup_{eta^2} e^n`
    SEtaSq(u32),
    /// `P^{n-2}(2^r) cup_{i eta^2} e^n`
    AEpsSq(u32, u32),
}

use ElementaryComplex::*;

fn is_prime_power(k: u64) -> bool {
    factorize(k).len() == 1
}

impl ElementaryComplex {
    pub fn dim(&self) -> u32 {
        match *self {
            Sphere(n) | Moore(n, _) | ChangEta(n) | ChangR(n, _) | ChangS(n, _) | ChangRS(n, _, _)
            | ATilde(n, _) | AIP(n, _) | SEtaSq(n) | AEpsSq(n, _) => n,
        }
    }

    /// Checks the dimension and parameter ranges in which the complex is used.
    pub fn validate(&self) -> Result<(), SpaceError> {
        let ok = match *self {
            Sphere(n) => n >= 1,
            Moore(n, k) => n >= 2 && k >= 2,
            ChangEta(n) => n >= 5,
            ChangR(n, r) | ChangS(n, r) => n >= 5 && r >= 1,
            ChangRS(n, r, s) => n >= 5 && r >= 1 && s >= 1,
            ATilde(n, r) | AIP(n, r) | AEpsSq(n, r) => n >= 6 && r >= 1,
            SEtaSq(n) => n >= 6,
        };
        if ok {
            Ok(())
        } else {
            Err(SpaceError::OutOfRange(self.to_string()))
        }
    }

    /// Reduced integral homology in degree `i`.
    pub fn homology(&self, i: u32) -> FgAbGroup {
        let two = |r: u32| FgAbGroup::cyclic(1u64 << r);
        let z = FgAbGroup::free(1);
        let n = self.dim();
        let at = |deg: u32, g: FgAbGroup| if n >= deg && i == n - deg { g } else { FgAbGroup::zero() };
        match *self {
            Sphere(_) => at(0, z),
            Moore(_, k) => at(1, FgAbGroup::cyclic(k)),
            ChangEta(_) => at(2, z.clone()).direct_sum(&at(0, z)),
            ChangR(_, r) => at(2, two(r)).direct_sum(&at(0, z)),
            ChangS(_, s) => at(2, z).direct_sum(&at(1, two(s))),
            ChangRS(_, r, s) => at(2, two(r)).direct_sum(&at(1, two(s))),
            ATilde(_, r) | AEpsSq(_, r) => at(3, two(r)).direct_sum(&at(0, z)),
            AIP(_, r) => at(3, two(r)).direct_sum(&at(1, z.clone())).direct_sum(&at(0, z)),
            SEtaSq(_) => at(3, z.clone()).direct_sum(&at(0, z)),
        }
    }

    /// Number of cells of positive dimension in the minimal cell structure.
    pub fn cell_count(&self) -> usize {
        match self {
            Sphere(_) => 1,
            Moore(..) | ChangEta(_) | SEtaSq(_) => 2,
            ChangR(..) | ChangS(..) | ATilde(..) | AEpsSq(..) => 3,
            ChangRS(..) | AIP(..) => 4,
        }
    }

    pub fn suspend(&self) -> ElementaryComplex {
        match *self {
            Sphere(n) => Sphere(n + 1),
            Moore(n, k) => Moore(n + 1, k),
            ChangEta(n) => ChangEta(n + 1),
            ChangR(n, r) => ChangR(n + 1, r),
            ChangS(n, s) => ChangS(n + 1, s),
            ChangRS(n, r, s) => ChangRS(n + 1, r, s),
            ATilde(n, r) => ATilde(n + 1, r),
            AIP(n, r) => AIP(n + 1, r),
            SEtaSq(n) => SEtaSq(n + 1),
            AEpsSq(n, r) => AEpsSq(n + 1, r),
        }
    }

    /// `(p, e)` when this is a Moore space of prime-power order.
    pub fn moore_prime_power(&self) -> Option<(u64, u32)> {
        match *self {
            Moore(_, k) => match factorize(k).as_slice() {
                [(p, e)] => Some((*p, *e)),
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for ElementaryComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sphere(n) => write!(f, "S^{n}"),
            Moore(n, k) => write!(f, "P^{n}(Z/{k})"),
            ChangEta(n) => write!(f, "C^{n}_eta"),
            ChangR(n, r) => write!(f, "C^{n}_{{r={r}}}"),
            ChangS(n, s) => write!(f, "C^{{{n},s={s}}}"),
            ChangRS(n, r, s) => write!(f, "C^{{{n},s={s}}}_{{r={r}}}"),
            ATilde(n, r) => write!(f, "A^{n}(eta~_{r})"),
            AIP(n, r) => write!(f, "A^{n}(i_P eta~_{r})"),
            SEtaSq(n) => write!(f, "A^{n}(eta^2)"),
            AEpsSq(n, r) => write!(f, "A^{n}(2^{r} eta^2)"),
        }
    }
}

impl Serialize for ElementaryComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn num<T: FromStr>(s: &str, whole: &str) -> Result<T, SpaceError> {
    s.parse().map_err(|_| SpaceError::Parse(whole.to_string()))
}

impl FromStr for ElementaryComplex {
    type Err = SpaceError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s = text.trim();
        let bad = || SpaceError::Parse(text.to_string());
        let parsed = if let Some(n) = s.strip_prefix("S^") {
            Sphere(num(n, text)?)
        } else if let Some(rest) = s.strip_prefix("P^") {
            let (n, k) = rest.strip_suffix(')').and_then(|r| r.split_once("(Z/")).ok_or_else(bad)?;
            Moore(num(n, text)?, num(k, text)?)
        } else if let Some(rest) = s.strip_prefix("C^{") {
            let (n, rest) = rest.split_once(",s=").ok_or_else(bad)?;
            let (sv, tail) = rest.split_once('}').ok_or_else(bad)?;
            let (n, sv) = (num(n, text)?, num(sv, text)?);
            if tail.is_empty() {
                ChangS(n, sv)
            } else {
                let r = tail.strip_prefix("_{r=").and_then(|t| t.strip_suffix('}')).ok_or_else(bad)?;
                ChangRS(n, num(r, text)?, sv)
            }
        } else if let Some(rest) = s.strip_prefix("C^") {
            if let Some(n) = rest.strip_suffix("_eta") {
                ChangEta(num(n, text)?)
            } else {
                let (n, r) = rest.strip_suffix('}').and_then(|r| r.split_once("_{r=")).ok_or_else(bad)?;
                ChangR(num(n, text)?, num(r, text)?)
            }
        } else if let Some(rest) = s.strip_prefix("A^") {
            let (n, body) = rest.strip_suffix(')').and_then(|r| r.split_once('(')).ok_or_else(bad)?;
            let n: u32 = num(n, text)?;
            if body == "eta^2" {
                SEtaSq(n)
            } else if let Some(r) = body.strip_prefix("eta~_") {
                ATilde(n, num(r, text)?)
            } else if let Some(r) = body.strip_prefix("i_P eta~_") {
                AIP(n, num(r, text)?)
            } else if let Some(r) = body.strip_prefix("2^").and_then(|b| b.strip_suffix(" eta^2")) {
                AEpsSq(n, num(r, text)?)
            } else {
                return Err(bad());
            }
        } else {
            return Err(bad());
        };
        parsed.validate()?;
        Ok(parsed)
    }
}

/// A wedge of elementary complexes in canonical order. Moore spaces of
/// composite order are split into prime-power factors on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Wedge(Vec<ElementaryComplex>);

impl Wedge {
    pub fn empty() -> Self {
        Wedge(Vec::new())
    }

    pub fn new(items: impl IntoIterator<Item = ElementaryComplex>) -> Self {
        let mut out = Vec::new();
        for x in items {
            match x {
                Moore(n, k) if k >= 2 && !is_prime_power(k) => {
                    out.extend(factorize(k).into_iter().map(|(p, e)| Moore(n, p.pow(e))));
                }
                _ => out.push(x),
            }
        }
        out.sort_unstable();
        Wedge(out)
    }

    pub fn summands(&self) -> &[ElementaryComplex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &ElementaryComplex) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn count(&self, x: &ElementaryComplex) -> usize {
        self.0.iter().filter(|y| *y == x).count()
    }

    pub fn wedge(&self, other: &Wedge) -> Wedge {
        Wedge::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn homology(&self, i: u32) -> FgAbGroup {
        self.0.iter().fold(FgAbGroup::zero(), |acc, x| acc.direct_sum(&x.homology(i)))
    }

    pub fn cell_count(&self) -> usize {
        self.0.iter().map(ElementaryComplex::cell_count).sum()
    }

    pub fn suspend(&self) -> Wedge {
        Wedge(self.0.iter().map(ElementaryComplex::suspend).collect())
    }

    pub fn validate(&self) -> Result<(), SpaceError> {
        self.0.iter().try_for_each(ElementaryComplex::validate)
    }
}

impl FromIterator<ElementaryComplex> for Wedge {
    fn from_iter<I: IntoIterator<Item = ElementaryComplex>>(iter: I) -> Self {
        Wedge::new(iter)
    }
}

/// Re-sorts and splits an arbitrary wedge.
pub fn normalize_wedge(w: &Wedge) -> Wedge {
    Wedge::new(w.0.iter().copied())
}

pub fn wedge_homology(w: &Wedge, i: u32) -> FgAbGroup {
    w.homology(i)
}

pub fn suspend_wedge(w: &Wedge) -> Wedge {
    w.suspend()
}

/// `k` copies of `x`.
pub fn copies(x: ElementaryComplex, k: usize) -> Wedge {
    Wedge::new(std::iter::repeat_n(x, k))
}

/// `P^n(G)` for a torsion group `G`, as a wedge of Moore spaces.
pub fn peterson(g: &FgAbGroup, n: u32) -> Result<Wedge, SpaceError> {
    if !g.is_torsion() {
        return Err(SpaceError::FreePart(g.clone()));
    }
    Ok(Wedge::new(g.torsion_orders().into_iter().map(|k| Moore(n, k))))
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("*");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" v "))
    }
}

impl Serialize for Wedge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Wedge {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "*" {
            return Ok(Wedge::empty());
        }
        s.split(" v ").map(str::parse).collect::<Result<Vec<_>, _>>().map(Wedge::new)
    }
}
