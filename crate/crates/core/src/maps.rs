//! Homotopy classes of maps between elementary complexes.
//!
//! [`mapping_group`] returns the group `[X, Y]` with named generators for a
//! closed list of pairs; anything else is an explicit error. [`compose`] is the
//! bilinear composition calculus on formal sums of generators, driven by a
//! fixed relation table.
//!
//! Generators carry no parameters. Exponents and dimensions are read from the
//! domain and codomain of the class they appear in, so `TildeEta` in
//! `[S^5, P^4(Z/8)]` is `eta~_3`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::spaces::ElementaryComplex::{self, *};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("no table entry for [{0}, {1}]")]
    UnsupportedPair(ElementaryComplex, ElementaryComplex),
    #[error("composite {outer} o {inner} is not in the relation table ({via})")]
    UnknownComposite { outer: Generator, inner: Generator, via: ElementaryComplex },
    #[error("cannot compose: {0} is not {1}")]
    DomainMismatch(ElementaryComplex, ElementaryComplex),
    #[error("{gen} is not a map {domain} -> {codomain}")]
    BadGenerator { gen: Generator, domain: ElementaryComplex, codomain: ElementaryComplex },
    #[error("generator {gen} does not occur in [{domain}, {codomain}]")]
    UnknownGenerator { gen: Generator, domain: ElementaryComplex, codomain: ElementaryComplex },
}

/// Named maps. See [`Generator::fits`] for the shape each one takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    /// identity (a degree map when scaled)
    Identity,
    Eta,
    EtaSq,
    /// inclusion of the bottom cell
    IncBottom,
    /// pinch onto the top sphere (for `C^n_r`, the map to `S^{n-1}` extending it)
    PinchTop,
    /// `i eta`
    IEta,
    /// `i eta^2`
    IEtaSq,
    /// `eta q`
    EtaQ,
    TildeEta,
    /// `i_P eta~`
    IPTildeEta,
    /// inclusion `P^{n-1}(2^r) -> C^n_r`
    IP,
    ZetaTilde,
    /// `i_eta zeta~`
    IEtaZetaTilde,
    /// `B(chi^r_s)` between Moore spaces of one prime
    BChi,
    /// `i eta q`
    IEtaQ,
    /// `xi_r : C^n_r -> P^{n-1}(2^{r+1})`
    XiBar,
    /// `eta^_s B(chi^r_s) : P^4(p^r) -> P^3(p^s)`
    HatEta,
    /// generator of `pi_5(P^3(3^r))`
    OddThree,
    /// extension over the top cell of twice the pinch (or twice the identity)
    ExtendTwo,
}

use Generator as G;

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            G::Identity => "1",
            G::Eta => "eta",
            G::EtaSq => "eta^2",
            G::IncBottom => "i",
            G::PinchTop => "q",
            G::IEta => "i eta",
            G::IEtaSq => "i eta^2",
            G::EtaQ => "eta q",
            G::TildeEta => "eta~",
            G::IPTildeEta => "i_P eta~",
            G::IP => "i_P",
            G::ZetaTilde => "zeta~",
            G::IEtaZetaTilde => "i_eta zeta~",
            G::BChi => "B(chi)",
            G::IEtaQ => "i eta q",
            G::XiBar => "xi",
            G::HatEta => "eta^ B(chi)",
            G::OddThree => "a_3",
            G::ExtendTwo => "ext(2q)",
        };
        f.write_str(s)
    }
}

/// `chi^r_s` for the prime `p`: 1 when `r >= s`, else `p^(s-r)`.
pub fn chi(p: u64, r: u32, s: u32) -> u64 {
    if r >= s {
        1
    } else {
        p.pow(s - r)
    }
}

fn two_exp(x: &ElementaryComplex) -> Option<u32> {
    match x.moore_prime_power() {
        Some((2, e)) => Some(e),
        _ => None,
    }
}

impl Generator {
    /// Whether the generator names a map `domain -> codomain`.
    pub fn fits(self, domain: &ElementaryComplex, codomain: &ElementaryComplex) -> bool {
        let (a, b) = (*domain, *codomain);
        let moore2 = |x: &ElementaryComplex| two_exp(x).is_some();
        match self {
            G::Identity => a == b,
            G::Eta => matches!((a, b), (Sphere(m), Sphere(n)) if m == n + 1),
            G::EtaSq => matches!((a, b), (Sphere(m), Sphere(n)) if m == n + 2),
            G::IncBottom => match (a, b) {
                (Sphere(m), Moore(n, _)) => m + 1 == n,
                (Sphere(m), ChangEta(n) | ChangR(n, _)) => m + 2 == n,
                _ => false,
            },
            G::PinchTop => match (a, b) {
                (Moore(m, _) | ChangEta(m), Sphere(n)) => m == n,
                (ChangR(m, _), Sphere(n)) => m == n + 1,
                _ => false,
            },
            G::IEta => matches!((a, b), (Sphere(m), Moore(n, _)) if m == n),
            G::IEtaSq => matches!((a, b), (Sphere(m), Moore(n, _)) if m == n + 1),
            G::EtaQ => matches!((a, b), (Moore(m, _), Sphere(n)) if m == n + 1) && moore2(&a),
            G::TildeEta => matches!((a, b), (Sphere(m), Moore(n, _)) if m == n + 1) && moore2(&b),
            G::IPTildeEta | G::IEtaZetaTilde => matches!((a, b), (Sphere(m), ChangR(n, _)) if m == n),
            G::IP => match (a, b) {
                (Moore(m, _), ChangR(n, r)) => m + 1 == n && two_exp(&a) == Some(r),
                _ => false,
            },
            G::ZetaTilde => matches!((a, b), (Sphere(m), ChangEta(n)) if m == n),
            G::BChi | G::IEtaQ => match (a.moore_prime_power(), b.moore_prime_power()) {
                (Some((p, _)), Some((q, _))) => p == q && a.dim() == b.dim() && (self == G::BChi || p == 2),
                _ => false,
            },
            G::XiBar => match (a, b) {
                (ChangR(m, r), Moore(n, _)) => m == n + 1 && two_exp(&b) == Some(r + 1),
                _ => false,
            },
            G::HatEta => match (a.moore_prime_power(), b.moore_prime_power()) {
                (Some((p, _)), Some((q, _))) => p == q && p != 2 && a.dim() == 4 && b.dim() == 3,
                _ => false,
            },
            G::OddThree => matches!(b.moore_prime_power(), Some((3, _))) && a == Sphere(5) && b.dim() == 3,
            G::ExtendTwo => match (a, b) {
                (ChangEta(m) | ATilde(m, _) | AIP(m, _), Sphere(n)) => m == n + 2,
                _ => false,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// stated directly by the source tables
    Tabulated,
    /// not stated, but forced by the closed forms that use it
    Implied,
    /// computed here from a cofibration sequence
    Derived,
}

/// `[domain, codomain]` as a direct sum of cyclic groups with named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingGroup {
    pub domain: ElementaryComplex,
    pub codomain: ElementaryComplex,
    /// `(generator, order)`; order 0 means infinite cyclic.
    pub summands: Vec<(Generator, u64)>,
    /// generators that are not basis elements, written in the basis
    pub rewrites: Vec<(Generator, Vec<(Generator, i64)>)>,
    pub provenance: Provenance,
    /// the group suspends to zero
    pub suspends_trivially: bool,
}

impl MappingGroup {
    fn new(domain: ElementaryComplex, codomain: ElementaryComplex, summands: Vec<(Generator, u64)>) -> Self {
        MappingGroup {
            domain,
            codomain,
            summands,
            rewrites: Vec::new(),
            provenance: Provenance::Tabulated,
            suspends_trivially: false,
        }
    }

    fn zero(domain: ElementaryComplex, codomain: ElementaryComplex) -> Self {
        Self::new(domain, codomain, Vec::new())
    }

    fn with(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    fn rewrite(mut self, gen: Generator, terms: Vec<(Generator, i64)>) -> Self {
        self.rewrites.push((gen, terms));
        self
    }

    pub fn group(&self) -> FgAbGroup {
        let free = self.summands.iter().filter(|(_, o)| *o == 0).count() as u32;
        let orders: Vec<u64> = self.summands.iter().map(|&(_, o)| o).filter(|&o| o != 0).collect();
        FgAbGroup::from_orders(free, &orders)
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn order_of(&self, gen: Generator) -> Option<u64> {
        self.summands.iter().find(|(g, _)| *g == gen).map(|&(_, o)| o)
    }

    /// Rewrites non-basis generators and reduces coefficients.
    pub fn normalize(&self, terms: &BTreeMap<Generator, i64>) -> Result<BTreeMap<Generator, i64>, MapError> {
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return Ok(out);
        }
        let mut expanded: Vec<(Generator, i64)> = Vec::new();
        for (&g, &c) in terms {
            match self.rewrites.iter().find(|(h, _)| *h == g) {
                Some((_, sub)) => expanded.extend(sub.iter().map(|&(h, k)| (h, k * c))),
                None => expanded.push((g, c)),
            }
        }
        for (g, c) in expanded {
            let order = self.order_of(g).ok_or(MapError::UnknownGenerator {
                gen: g,
                domain: self.domain,
                codomain: self.codomain,
            })?;
            *out.entry(g).or_insert(0) += c;
            if order != 0 {
                let e = out.get_mut(&g).unwrap();
                *e = e.rem_euclid(order as i64);
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }
}

/// The group `[X, Y]`, or an error for pairs outside the table.
pub fn mapping_group(x: &ElementaryComplex, y: &ElementaryComplex) -> Result<MappingGroup, MapError> {
    let (x, y) = (*x, *y);
    let unsupported = || Err(MapError::UnsupportedPair(x, y));
    let mg = |summands| Ok(MappingGroup::new(x, y, summands));
    let zero = || Ok(MappingGroup::zero(x, y));
    match (x, y) {
        (Sphere(m), Sphere(n)) => match m as i64 - n as i64 {
            d if d < 0 => zero(),
            0 => mg(vec![(G::Identity, 0)]),
            1 if n == 2 => mg(vec![(G::Eta, 0)]),
            1 => mg(vec![(G::Eta, 2)]),
            2 if n >= 2 => mg(vec![(G::EtaSq, 2)]),
            _ => unsupported(),
        },
        (Sphere(m), Moore(n, k)) => {
            let Some((p, r)) = y.moore_prime_power() else { return unsupported() };
            let b = n - 1;
            if m < b {
                return zero();
            }
            if m == b {
                return mg(vec![(G::IncBottom, k)]);
            }
            if p == 2 {
                if b < 3 {
                    return unsupported();
                }
                match m - b {
                    1 => mg(vec![(G::IEta, 2)]),
                    2 if r == 1 => Ok(MappingGroup::new(x, y, vec![(G::TildeEta, 4)])
                        .rewrite(G::IEtaSq, vec![(G::TildeEta, 2)])),
                    2 => mg(vec![(G::TildeEta, 2), (G::IEtaSq, 2)]),
                    _ => unsupported(),
                }
            } else {
                match (b, m - b) {
                    (2, 1) => mg(vec![(G::IEta, k)]),
                    (2, 2) => zero(),
                    (2, 3) if p == 3 => {
                        let mut g = MappingGroup::new(x, y, vec![(G::OddThree, 3u64.pow(r + 1))]);
                        g.suspends_trivially = true;
                        Ok(g)
                    }
                    (2, 3) => zero(),
                    (_, 1) | (_, 2) => zero(),
                    _ => unsupported(),
                }
            }
        }
        (Sphere(m), ChangEta(n)) if n >= 5 => match m as i64 - n as i64 + 2 {
            d if d < 0 => zero(),
            0 => mg(vec![(G::IncBottom, 0)]),
            1 => zero(),
            2 => mg(vec![(G::ZetaTilde, 0)]),
            _ => unsupported(),
        },
        (Sphere(m), ChangR(n, r)) if n >= 5 => match m as i64 - n as i64 + 2 {
            d if d < 0 => zero(),
            0 => mg(vec![(G::IncBottom, 1u64 << r)]),
            1 => zero(),
            2 => mg(vec![(G::IEtaZetaTilde, 0), (G::IPTildeEta, 2)]),
            _ => unsupported(),
        },
        (Moore(m, _), Moore(n, _)) => {
            let (Some((p, r)), Some((q, s))) = (x.moore_prime_power(), y.moore_prime_power()) else {
                return unsupported();
            };
            let min = p.pow(r.min(s));
            if p != q {
                return if m.abs_diff(n) <= 1 { zero() } else { unsupported() };
            }
            let basic = if r == s { G::Identity } else { G::BChi };
            if m == n {
                if p == 2 {
                    if n < 4 {
                        return unsupported();
                    }
                    if r == 1 && s == 1 {
                        return Ok(MappingGroup::new(x, y, vec![(G::Identity, 4)])
                            .rewrite(G::IEtaQ, vec![(G::Identity, 2)]));
                    }
                    return Ok(MappingGroup::new(x, y, vec![(basic, min), (G::IEtaQ, 2)])
                        .rewrite(G::BChi, vec![(basic, 1)]));
                }
                let mut summands = vec![(basic, min)];
                if n == 3 {
                    summands.push((G::IEtaQ, min));
                }
                return Ok(MappingGroup::new(x, y, summands).rewrite(G::BChi, vec![(basic, 1)]));
            }
            if m == n + 1 && p != 2 {
                return if n == 3 { mg(vec![(G::HatEta, min)]) } else { zero() };
            }
            unsupported()
        }
        (Moore(m, k), Sphere(n)) => {
            let Some((p, _)) = x.moore_prime_power() else { return unsupported() };
            if m == n {
                mg(vec![(G::PinchTop, k)])
            } else if n == 4 && p != 2 && (m == 3 || m == 5) {
                // odd-order P^3, P^5 into S^4: forced by the cohomotopy closed forms
                Ok(MappingGroup::zero(x, y).with(Provenance::Implied))
            } else if m == n + 1 && n >= 3 {
                if p == 2 {
                    mg(vec![(G::EtaQ, 2)])
                } else {
                    zero()
                }
            } else if m < n {
                zero()
            } else {
                unsupported()
            }
        }
        // the [X, S^4] table for the summands of a suspended 5-manifold
        (ChangEta(5), Sphere(4)) => zero(),
        (ChangR(5, r), Sphere(4)) => mg(vec![(G::PinchTop, 1u64 << (r + 1))]),
        (ChangEta(6), Sphere(4)) => Ok(MappingGroup::new(x, y, vec![(G::ExtendTwo, 0)]).with(Provenance::Derived)),
        (ATilde(6, r), Sphere(4)) => {
            if r == 1 {
                zero()
            } else {
                mg(vec![(G::ExtendTwo, 1u64 << (r - 1))])
            }
        }
        (AIP(6, r), Sphere(4)) => mg(vec![(G::ExtendTwo, 1u64 << r)]),
        (SEtaSq(6), Sphere(4)) => Ok(MappingGroup::zero(x, y).with(Provenance::Derived)),
        _ => unsupported(),
    }
}

/// An element of `[domain, codomain]` as a formal sum of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapClass {
    pub domain: ElementaryComplex,
    pub codomain: ElementaryComplex,
    pub terms: BTreeMap<Generator, i64>,
}

impl MapClass {
    pub fn zero(domain: ElementaryComplex, codomain: ElementaryComplex) -> Self {
        MapClass { domain, codomain, terms: BTreeMap::new() }
    }

    /// `coeff * gen`, reduced in the mapping group when one is tabulated.
    pub fn of(gen: Generator, coeff: i64, domain: ElementaryComplex, codomain: ElementaryComplex) -> Result<Self, MapError> {
        if !gen.fits(&domain, &codomain) {
            return Err(MapError::BadGenerator { gen, domain, codomain });
        }
        let mut m = MapClass::zero(domain, codomain);
        m.terms.insert(gen, coeff);
        m.normalized()
    }

    pub fn basic(gen: Generator, domain: ElementaryComplex, codomain: ElementaryComplex) -> Result<Self, MapError> {
        Self::of(gen, 1, domain, codomain)
    }

    /// Reduces against the tabulated group; untabulated pairs only drop zero terms.
    pub fn normalized(mut self) -> Result<Self, MapError> {
        match mapping_group(&self.domain, &self.codomain) {
            Ok(group) => self.terms = group.normalize(&self.terms)?,
            Err(MapError::UnsupportedPair(..)) => self.terms.retain(|_, c| *c != 0),
            Err(e) => return Err(e),
        }
        Ok(self)
    }

    pub fn add(&self, other: &MapClass) -> Result<MapClass, MapError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(MapError::DomainMismatch(other.codomain, self.codomain));
        }
        let mut sum = self.clone();
        for (&g, &c) in &other.terms {
            *sum.terms.entry(g).or_insert(0) += c;
        }
        sum.normalized()
    }

    pub fn scale(&self, k: i64) -> Result<MapClass, MapError> {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c *= k);
        out.normalized()
    }

    pub fn coefficient(&self, gen: Generator) -> i64 {
        self.terms.get(&gen).copied().unwrap_or(0)
    }
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let label = |g: Generator| match (g, self.domain, self.codomain) {
            (G::TildeEta, _, c) => format!("eta~_{}", two_exp(&c).unwrap_or(0)),
            (G::IPTildeEta, _, ChangR(_, r)) => format!("i_P eta~_{r}"),
            _ => g.to_string(),
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&g, &c)| if c == 1 { label(g) } else { format!("{c}*{}", label(g)) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// True iff every reduced coefficient vanishes.
pub fn is_null(f: &MapClass) -> bool {
    match f.clone().normalized() {
        Ok(m) => m.terms.is_empty(),
        Err(_) => f.terms.values().all(|&c| c == 0),
    }
}

/// `outer o inner` for single generators, as terms in `[inner.dom, outer.cod]`.
fn compose_generators(
    outer: Generator,
    inner: Generator,
    dom: ElementaryComplex,
    mid: ElementaryComplex,
    cod: ElementaryComplex,
) -> Result<Vec<(Generator, i64)>, MapError> {
    let unknown = || Err(MapError::UnknownComposite { outer, inner, via: mid });
    let one = |g: Generator| Ok(vec![(g, 1)]);
    let none = || Ok(Vec::new());
    if outer == G::Identity {
        return one(inner);
    }
    if inner == G::Identity {
        return one(outer);
    }
    // exponents of the Moore spaces on either side of a B(chi)
    let prime_exp = |x: &ElementaryComplex| x.moore_prime_power();
    match (outer, inner) {
        (G::Eta, G::Eta) => one(G::EtaSq),
        (G::IncBottom, G::Eta) | (G::IEta, G::Eta) if matches!(cod, Moore(..)) => {
            one(if outer == G::IncBottom { G::IEta } else { G::IEtaSq })
        }
        (G::IncBottom, G::EtaSq) if matches!(cod, Moore(..)) => one(G::IEtaSq),
        (G::PinchTop, G::IncBottom | G::IEta | G::IEtaSq | G::IEtaQ) => none(),
        (G::PinchTop, G::TildeEta) => one(G::Eta),
        (G::PinchTop, G::BChi) => {
            let ((p, r), (_, s)) = (prime_exp(&dom).unwrap(), prime_exp(&mid).unwrap());
            Ok(vec![(G::PinchTop, chi(p, s, r) as i64)])
        }
        (G::PinchTop, G::IPTildeEta) => one(G::Eta),
        (G::PinchTop, G::IEtaZetaTilde) => none(),
        (G::PinchTop, G::ZetaTilde) => Ok(vec![(G::Identity, 2)]),
        (G::PinchTop, G::IP) => one(G::PinchTop),
        (G::Eta, G::PinchTop) if matches!(mid, Sphere(_)) && matches!(dom, Moore(..)) => one(G::EtaQ),
        (G::EtaQ, G::TildeEta) => one(G::EtaSq),
        (G::EtaQ, G::IncBottom | G::IEta | G::IEtaSq) => none(),
        (G::BChi, G::IncBottom | G::IEta | G::IEtaSq | G::TildeEta) => {
            let ((p, r), (_, s)) = (prime_exp(&mid).unwrap(), prime_exp(&cod).unwrap());
            let factor = if inner == G::TildeEta { chi(p, s, r) } else { chi(p, r, s) };
            Ok(vec![(inner, factor as i64)])
        }
        (G::IEtaQ, G::TildeEta) => one(G::IEtaSq),
        (G::IEtaQ, G::IncBottom | G::IEta | G::IEtaSq) => none(),
        (G::IP, G::TildeEta) => one(G::IPTildeEta),
        (G::IP, G::IEta | G::IEtaSq) => none(),
        (G::IP, G::IncBottom) => one(G::IncBottom),
        (G::XiBar, G::IPTildeEta) => one(G::TildeEta),
        (G::XiBar, G::IncBottom) => Ok(vec![(G::IncBottom, 2)]),
        (G::XiBar, G::IP) => one(G::BChi),
        _ => unknown(),
    }
}

/// `g o f`, bilinear over formal sums and normalized in `[dom f, cod g]`.
pub fn compose(g: &MapClass, f: &MapClass) -> Result<MapClass, MapError> {
    if f.codomain != g.domain {
        return Err(MapError::DomainMismatch(f.codomain, g.domain));
    }
    let mut out = MapClass::zero(f.domain, g.codomain);
    for (&outer, &a) in &g.terms {
        for (&inner, &b) in &f.terms {
            for (h, k) in compose_generators(outer, inner, f.domain, f.codomain, g.codomain)? {
                if !h.fits(&f.domain, &g.codomain) {
                    return Err(MapError::UnknownComposite { outer, inner, via: f.codomain });
                }
                *out.terms.entry(h).or_insert(0) += a * b * k;
            }
        }
    }
    out.normalized()
}

/// Applies the generators of `word` to `f` right to left, each one mapping into
/// the complex listed beside it.
pub fn apply_word(word: &[(Generator, ElementaryComplex)], f: &MapClass) -> Result<MapClass, MapError> {
    let mut current = f.clone();
    for &(gen, target) in word.iter().rev() {
        let g = MapClass::basic(gen, current.codomain, target)?;
        current = compose(&g, &current)?;
    }
    Ok(current)
}
