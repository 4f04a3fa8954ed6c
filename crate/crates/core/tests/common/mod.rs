#![allow(dead_code)]

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::RngExt;
use suspend5::abelian::FgAbGroup;
use suspend5::decompose::{DescriptorData, InvariantData, ManifoldDescriptor, Mode, PhiInput};
use suspend5::maps::{apply_word, Generator as G, MapClass};
use suspend5::reduction::{
    reduce_h_matrix, reduce_phi, AttachCase, ChangCoeff, HMatrix, MooreCoeff, PhiContext, PhiVector,
};
use suspend5::spaces::ElementaryComplex::{self, *};

/// Reduced `H_i(M)` straight from the homology table of the manifold.
pub fn reduced_homology(m: &ManifoldDescriptor, i: i64) -> FgAbGroup {
    let z = |k: u32| FgAbGroup::free(k);
    match i {
        1 => z(m.l).direct_sum(&m.h),
        2 => z(m.d).direct_sum(&m.t),
        3 => z(m.d).direct_sum(&m.h),
        4 => z(m.l),
        5 => z(1),
        _ => FgAbGroup::zero(),
    }
}

/// Rank over F_2 with rows packed into machine words.
pub fn rank_f2(rows: &[Vec<bool>]) -> usize {
    let mut packed: Vec<u64> =
        rows.iter().map(|r| r.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))).collect();
    let mut rank = 0;
    for bit in 0..64 {
        let mask = 1u64 << bit;
        let Some(p) = (rank..packed.len()).find(|&i| packed[i] & mask != 0) else { continue };
        packed.swap(rank, p);
        let pivot = packed[rank];
        for (i, row) in packed.iter_mut().enumerate() {
            if i != rank && *row & mask != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

pub fn mode_for(m: &ManifoldDescriptor) -> Mode {
    if m.h.has_3_torsion() {
        Mode::Double
    } else {
        Mode::Single
    }
}

fn random_group(rng: &mut StdRng, count: usize, primes: &[u64], max_exp: u32) -> FgAbGroup {
    let orders: Vec<u64> = (0..count)
        .map(|_| {
            let p = primes[rng.random_range(0..primes.len())];
            let e = rng.random_range(1..=if p == 2 { max_exp } else { max_exp.min(3) });
            p.pow(e)
        })
        .collect();
    FgAbGroup::from_orders(0, &orders)
}

fn pick<T: Copy>(rng: &mut StdRng, items: &[T]) -> Option<T> {
    if items.is_empty() {
        None
    } else {
        Some(items[rng.random_range(0..items.len())])
    }
}

/// A valid descriptor with `l, d <= 5`, at most six torsion summands and
/// exponents at most 5. Half the time the invariants are given directly,
/// otherwise attaching data is drawn and the reductions pick them.
pub fn random_descriptor(rng: &mut StdRng) -> ManifoldDescriptor {
    let l = rng.random_range(1..=5u32);
    let d = rng.random_range(1..=5u32);
    let total = rng.random_range(0..=6usize);
    let nh = rng.random_range(0..=total.min(3));
    let h_primes: &[u64] = if rng.random_bool(0.25) { &[3, 5, 7] } else { &[5, 7, 11] };
    let h = random_group(rng, nh, h_primes, 3);
    let t = random_group(rng, total - nh, &[2, 2, 2, 3, 5], 5);
    let pd_mode = rng.random_bool(0.35);
    let smooth = !pd_mode;
    let exps: Vec<u32> = t.torsion().iter().filter(|&&(p, _)| p == 2).map(|&(_, e)| e).collect();
    let t2 = exps.len();
    let mut spin = rng.random_bool(0.5);

    let data = if rng.random_bool(0.5) {
        let c1 = rng.random_range(0..=l.min(d));
        let c2 = rng.random_range(0..=(l - c1).min(t2 as u32));
        let mut pool: Vec<usize> = (0..t2).collect();
        let mut consumed = Vec::new();
        for _ in 0..c2 {
            consumed.push(pool.remove(rng.random_range(0..pool.len())));
        }
        consumed.sort_unstable();
        let free: Vec<usize> = (0..t2).filter(|j| !consumed.contains(j)).collect();
        let mut options = Vec::new();
        if spin {
            options.push(AttachCase::Null);
            if pd_mode {
                if d > c1 {
                    options.push(AttachCase::EtaSqTop);
                }
                if let Some(j) = pick(rng, &free) {
                    options.push(AttachCase::IEtaSqTop { index: j, r: exps[j] });
                }
            }
        } else {
            options.push(AttachCase::EtaTop);
            if let Some(j) = pick(rng, &free) {
                options.push(AttachCase::TildeEtaTop { index: j, r: exps[j] });
            }
            if let Some(j) = pick(rng, &consumed) {
                options.push(AttachCase::IPTildeEtaTop { index: j, r: exps[j] });
            }
        }
        let case = pick(rng, &options).unwrap();
        DescriptorData::Invariant(InvariantData { c1, c2, consumed, case })
    } else {
        let density = rng.random_range(0.1..0.6);
        let sphere: Vec<Vec<bool>> =
            (0..d).map(|_| (0..l).map(|_| rng.random_bool(density)).collect()).collect();
        let moore: Vec<(u32, Vec<bool>)> =
            exps.iter().map(|&r| (r, (0..l).map(|_| rng.random_bool(density)).collect())).collect();
        let h_matrix = HMatrix::from_bits(l as usize, &sphere, &moore);
        let red = reduce_h_matrix(&h_matrix).unwrap();
        let nfree = t2 - red.c2;
        let mut bits = |n: usize, on: bool| -> Vec<bool> { (0..n).map(|_| on && rng.random_bool(density)).collect() };
        let secondary = !(smooth && spin);
        let mut phi = PhiInput {
            x: bits(d as usize - red.c1, secondary),
            y: bits(d as usize, !spin),
            z: bits(nfree, !spin),
            eps: bits(nfree, secondary),
            w: bits(red.c2, !spin),
        };
        if !spin && !(phi.y.iter().chain(&phi.z).chain(&phi.w).any(|&b| b)) {
            phi.y[0] = true;
        }
        spin = !(phi.y.iter().chain(&phi.z).chain(&phi.w).any(|&b| b));
        DescriptorData::Attaching { h_matrix, phi }
    };
    ManifoldDescriptor { l, d, h, t, spin, smooth, pd_mode, data }
}

/// One summand of the target of the top attaching map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    S3,
    S4,
    Moore(u32),
    Chang(u32),
}

impl Slot {
    pub fn space(self) -> ElementaryComplex {
        match self {
            Slot::S3 => Sphere(3),
            Slot::S4 => Sphere(4),
            Slot::Moore(r) => ElementaryComplex::Moore(4, 1 << r),
            Slot::Chang(r) => ChangR(5, r),
        }
    }

    /// Values: a bit, or `z + 2 eps` on a Moore summand.
    pub fn size(self) -> u8 {
        if matches!(self, Slot::Moore(_)) {
            4
        } else {
            2
        }
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        match self {
            Slot::Moore(1) => (a + b) % 4,
            _ => a ^ b,
        }
    }

    pub fn encode(self, v: u8) -> MapClass {
        let s5 = Sphere(5);
        let y = self.space();
        let term = |g, c: u8| MapClass::of(g, i64::from(c), s5, y).unwrap();
        match self {
            Slot::S3 => term(G::EtaSq, v),
            Slot::S4 => term(G::Eta, v),
            Slot::Moore(1) => term(G::TildeEta, v),
            Slot::Moore(_) => term(G::TildeEta, v & 1).add(&term(G::IEtaSq, v >> 1)).unwrap(),
            Slot::Chang(_) => term(G::IPTildeEta, v),
        }
    }

    pub fn decode(self, f: &MapClass) -> u8 {
        let allowed: &[G] = match self {
            Slot::S3 => &[G::EtaSq],
            Slot::S4 => &[G::Eta],
            Slot::Moore(_) => &[G::TildeEta, G::IEtaSq],
            Slot::Chang(_) => &[G::IPTildeEta],
        };
        for g in f.terms.keys() {
            assert!(allowed.contains(g), "{f} leaves the span used for slot {self:?}");
        }
        let c = |g| f.coefficient(g).rem_euclid(4) as u8;
        match self {
            Slot::S3 => c(G::EtaSq) % 2,
            Slot::S4 => c(G::Eta) % 2,
            Slot::Moore(1) => c(G::TildeEta),
            Slot::Moore(_) => c(G::TildeEta) % 2 + 2 * (c(G::IEtaSq) % 2),
            Slot::Chang(_) => c(G::IPTildeEta) % 2,
        }
    }
}

type Word = Vec<(G, ElementaryComplex)>;

/// `B(chi)` between Moore spaces, which is the identity at equal exponents.
fn chi_gen(from: u32, to: u32) -> G {
    if from == to {
        G::Identity
    } else {
        G::BChi
    }
}

/// Self-equivalences of the wedge that move one summand into another,
/// written as words in the generators.
pub fn words(src: Slot, dst: Slot) -> Vec<Word> {
    use Slot::*;
    let (s3, s4) = (Sphere(3), Sphere(4));
    let t = dst.space();
    match (src, dst) {
        (S4, S4) | (S3, S3) => vec![vec![(G::Identity, t)]],
        (S4, S3) => vec![vec![(G::Eta, t)]],
        (S4, Moore(_)) => vec![vec![(G::IEta, t)]],
        (S3, Moore(_)) => vec![vec![(G::IncBottom, t)]],
        (S3, Chang(s)) => vec![vec![(G::IP, t), (G::IncBottom, Slot::Moore(s).space())]],
        (Moore(_), S4) | (Chang(_), S4) => vec![vec![(G::PinchTop, t)]],
        (Moore(_), S3) | (Chang(_), S3) => vec![vec![(G::Eta, t), (G::PinchTop, s4)]],
        (Moore(r), Moore(s)) => vec![vec![(chi_gen(r, s), t)], vec![(G::IEtaQ, t)]],
        (Moore(r), Chang(s)) => vec![vec![(G::IP, t), (chi_gen(r, s), Slot::Moore(s).space())]],
        (Chang(r), Chang(s)) => {
            let up = vec![(G::IP, t), (chi_gen(r + 1, s), Slot::Moore(s).space()), (G::XiBar, Slot::Moore(r + 1).space())];
            if r == s {
                vec![vec![(G::Identity, t)], up]
            } else {
                vec![up]
            }
        }
        (Chang(r), Moore(s)) => vec![
            vec![(chi_gen(r + 1, s), t), (G::XiBar, Slot::Moore(r + 1).space())],
            vec![(G::IncBottom, t), (G::Eta, s3), (G::PinchTop, s4)],
        ],
        (S3, S4) | (S4, Chang(_)) => Vec::new(),
    }
}

/// Orbits of top attaching maps under the wedge self-equivalences, for one
/// list of target summands.
pub struct PhiOrbits {
    pub slots: Vec<Slot>,
    parent: Vec<usize>,
}

impl PhiOrbits {
    pub fn state_count(&self) -> usize {
        self.parent.len()
    }

    pub fn decode_state(&self, mut idx: usize) -> Vec<u8> {
        self.slots
            .iter()
            .map(|s| {
                let v = (idx % s.size() as usize) as u8;
                idx /= s.size() as usize;
                v
            })
            .collect()
    }

    pub fn encode_state(&self, vals: &[u8]) -> usize {
        self.slots.iter().zip(vals).rev().fold(0, |acc, (s, &v)| acc * s.size() as usize + v as usize)
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn root(&mut self, x: usize) -> usize {
        self.find(x)
    }

    pub fn new(slots: Vec<Slot>) -> PhiOrbits {
        let n: usize = slots.iter().map(|s| s.size() as usize).product();
        let mut orbits = PhiOrbits { slots: slots.clone(), parent: (0..n).collect() };
        // effect tables: a move adds delta[value of src] into dst
        let mut moves: Vec<(usize, usize, Vec<u8>)> = Vec::new();
        for (i, &a) in slots.iter().enumerate() {
            for (j, &b) in slots.iter().enumerate() {
                if i == j {
                    continue;
                }
                for word in words(a, b) {
                    let delta = (0..a.size())
                        .map(|v| {
                            let out = apply_word(&word, &a.encode(v))
                                .unwrap_or_else(|e| panic!("{a:?} -> {b:?} via {word:?}: {e}"));
                            b.decode(&out)
                        })
                        .collect();
                    moves.push((i, j, delta));
                }
            }
        }
        // automorphisms of a single Moore summand: 1 + i eta q, and -1
        let mut self_moves: Vec<(usize, Vec<u8>)> = Vec::new();
        for (i, &a) in slots.iter().enumerate() {
            if let Slot::Moore(_) = a {
                let word = vec![(G::IEtaQ, a.space())];
                let plus = (0..4).map(|v| a.add(v, a.decode(&apply_word(&word, &a.encode(v)).unwrap()))).collect();
                let neg = (0..4).map(|v| a.decode(&a.encode(v).scale(-1).unwrap())).collect();
                self_moves.push((i, plus));
                self_moves.push((i, neg));
            }
        }
        for idx in 0..n {
            let vals = orbits.decode_state(idx);
            for (i, j, delta) in &moves {
                let mut next = vals.clone();
                next[*j] = slots[*j].add(next[*j], delta[vals[*i] as usize]);
                let (a, b) = (orbits.find(idx), orbits.find(orbits.encode_state(&next)));
                orbits.parent[a] = b;
            }
            for (i, table) in &self_moves {
                let mut next = vals.clone();
                next[*i] = table[vals[*i] as usize];
                let (a, b) = (orbits.find(idx), orbits.find(orbits.encode_state(&next)));
                orbits.parent[a] = b;
            }
        }
        orbits
    }

    /// The state as a phi vector; Moore summands get indices first, then Chang ones.
    pub fn vector(&self, vals: &[u8]) -> PhiVector {
        let mut v = PhiVector { x: vec![], y: vec![], moore: vec![], w: vec![] };
        let mut index = 0;
        for (s, &val) in self.slots.iter().zip(vals) {
            match *s {
                Slot::S3 => v.x.push(val == 1),
                Slot::S4 => v.y.push(val == 1),
                Slot::Moore(r) => {
                    v.moore.push(MooreCoeff { index, r, z: val & 1 == 1, eps: val >= 2 });
                    index += 1;
                }
                Slot::Chang(_) => {}
            }
        }
        for (s, &val) in self.slots.iter().zip(vals) {
            if let Slot::Chang(r) = *s {
                v.w.push(ChangCoeff { index, r, active: val == 1 });
                index += 1;
            }
        }
        v
    }

    pub fn values(&self, v: &PhiVector) -> Vec<u8> {
        let (mut x, mut y, mut mo, mut w) = (v.x.iter(), v.y.iter(), v.moore.iter(), v.w.iter());
        self.slots
            .iter()
            .map(|s| match s {
                Slot::S3 => u8::from(*x.next().unwrap()),
                Slot::S4 => u8::from(*y.next().unwrap()),
                Slot::Moore(_) => {
                    let m = mo.next().unwrap();
                    u8::from(m.z) + 2 * u8::from(m.eps)
                }
                Slot::Chang(_) => u8::from(w.next().unwrap().active),
            })
            .collect()
    }
}

/// Case kind and exponent, forgetting which summand carries it.
pub fn case_key(c: AttachCase) -> (u8, Option<u32>) {
    let kind = match c {
        AttachCase::Null => 0,
        AttachCase::EtaTop => 1,
        AttachCase::TildeEtaTop { .. } => 2,
        AttachCase::IPTildeEtaTop { .. } => 3,
        AttachCase::EtaSqTop => 4,
        AttachCase::IEtaSqTop { .. } => 5,
    };
    (kind, c.exponent())
}

pub struct PhiCheck {
    pub configurations: usize,
    pub states: usize,
    pub failures: Vec<String>,
}

/// All slot lists with at most `max_slots` summands and exponents at most `max_r`.
pub fn slot_configurations(max_slots: usize, max_r: u32) -> Vec<Vec<Slot>> {
    let mut kinds = vec![Slot::S3, Slot::S4];
    kinds.extend((1..=max_r).map(Slot::Moore));
    kinds.extend((1..=max_r).map(Slot::Chang));
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<Slot>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..max_slots {
        let mut next = Vec::new();
        for (cfg, start) in &frontier {
            for (k, &kind) in kinds.iter().enumerate().skip(*start) {
                let mut c = cfg.clone();
                c.push(kind);
                out.push(c.clone());
                next.push((c, k));
            }
        }
        frontier = next;
    }
    out
}

/// Checks `reduce_phi` against the orbits for every state of every configuration.
pub fn check_phi_orbits(max_slots: usize, max_r: u32) -> PhiCheck {
    let configs = slot_configurations(max_slots, max_r);
    let mut check = PhiCheck { configurations: configs.len(), states: 0, failures: Vec::new() };
    for slots in configs {
        let mut orbits = PhiOrbits::new(slots.clone());
        let mut class_case: HashMap<usize, (u8, Option<u32>)> = HashMap::new();
        for idx in 0..orbits.state_count() {
            check.states += 1;
            let vals = orbits.decode_state(idx);
            let v = orbits.vector(&vals);
            let spin = !v.has_primary();
            let pd = PhiContext { spin, smooth: false, pd_mode: true };
            let red = match reduce_phi(&v, pd) {
                Ok(r) => r,
                Err(e) => {
                    check.failures.push(format!("{slots:?} {vals:?}: {e}"));
                    continue;
                }
            };
            let root = orbits.root(idx);
            let rep_root = orbits.root(orbits.encode_state(&orbits.values(&red.representative)));
            if rep_root != root {
                check.failures.push(format!("{slots:?} {vals:?}: representative of {} not reachable", red.case));
            }
            let key = case_key(red.case);
            match class_case.get(&root) {
                Some(&k) if k != key => {
                    check.failures.push(format!("{slots:?} {vals:?}: orbit reduces to both {k:?} and {key:?}"))
                }
                _ => {
                    class_case.insert(root, key);
                }
            }
            let secondary = v.x.iter().any(|&b| b) || v.moore.iter().any(|m| m.eps);
            if !spin || !secondary {
                let smooth = PhiContext { spin, smooth: true, pd_mode: false };
                match reduce_phi(&v, smooth) {
                    Ok(r) if spin || r.case == red.case => {}
                    Ok(r) => check.failures.push(format!("{slots:?} {vals:?}: smooth gives {}", r.case)),
                    Err(e) => check.failures.push(format!("{slots:?} {vals:?}: smooth: {e}")),
                }
            }
        }
    }
    check
}
