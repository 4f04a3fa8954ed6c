mod common;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use suspend5::cli::{parse_descriptor_unchecked, render_descriptor};
use suspend5::decompose::{double_suspension_decomposition, suspension_decomposition, Mode};
use suspend5::invariants::k_group;
use suspend5::reduction::{
    enumerate_orbit, reduce_h_matrix, reduce_phi, ChangCoeff, HMatrix, MooreCoeff, PhiContext, PhiVector,
};

fn signature(h: &HMatrix) -> (usize, usize, Vec<u32>) {
    let red = reduce_h_matrix(h).unwrap();
    let mut exps: Vec<u32> = red.consumed_moore_rows.iter().map(|&j| h.moore[j].r).collect();
    exps.sort_unstable();
    (red.c1, red.c2, exps)
}

fn h_matrix(max_sphere: usize, max_moore: usize, max_cols: usize) -> impl Strategy<Value = HMatrix> {
    (1..=max_cols, 0..=max_sphere, prop::collection::vec(1..=4u32, 0..=max_moore)).prop_flat_map(
        |(cols, sphere, exps)| {
            let rows = sphere + exps.len();
            prop::collection::vec(prop::collection::vec(any::<bool>(), cols), rows).prop_map(move |bits| {
                let (s, m) = bits.split_at(sphere);
                let moore: Vec<(u32, Vec<bool>)> = exps.iter().copied().zip(m.iter().cloned()).collect();
                HMatrix::from_bits(cols, s, &moore)
            })
        },
    )
}

#[derive(Debug, Clone)]
enum Move {
    Col(usize, usize),
    SphereRow(usize, usize),
}

fn apply(h: &HMatrix, mv: &Move) -> HMatrix {
    let mut sphere = h.sphere_bits();
    let mut moore = h.moore_bits();
    match *mv {
        Move::Col(src, dst) if src != dst && dst < h.cols && src < h.cols => {
            for row in sphere.iter_mut().chain(moore.iter_mut()) {
                if row[src] {
                    row[dst] ^= true;
                }
            }
        }
        Move::SphereRow(src, dst) if src != dst && src < sphere.len() && dst < sphere.len() => {
            let s = sphere[src].clone();
            sphere[dst].iter_mut().zip(s).for_each(|(a, b)| *a ^= b);
        }
        _ => {}
    }
    let exps: Vec<(u32, Vec<bool>)> = h.moore.iter().map(|r| r.r).zip(moore).collect();
    HMatrix::from_bits(h.cols, &sphere, &exps)
}

fn phi_vector() -> impl Strategy<Value = PhiVector> {
    (
        prop::collection::vec(any::<bool>(), 0..3),
        prop::collection::vec(any::<bool>(), 0..3),
        prop::collection::vec((1..=4u32, any::<bool>(), any::<bool>()), 0..4),
        prop::collection::vec((1..=4u32, any::<bool>()), 0..3),
    )
        .prop_map(|(x, y, moore, w)| {
            let np = moore.len();
            PhiVector {
                x,
                y,
                moore: moore.into_iter().enumerate().map(|(index, (r, z, eps))| MooreCoeff { index, r, z, eps }).collect(),
                w: w.into_iter().enumerate().map(|(i, (r, active))| ChangCoeff { index: np + i, r, active }).collect(),
            }
        })
}

proptest! {
    #[test]
    fn orbits_keep_the_pivot_counts(h in h_matrix(2, 2, 3)) {
        prop_assume!(h.sphere.len() + h.moore.len() <= 3);
        let sig = signature(&h);
        for other in enumerate_orbit(&h, 3).unwrap() {
            prop_assert_eq!(signature(&other), sig.clone());
        }
    }

    #[test]
    fn random_moves_keep_the_pivot_counts(
        h in h_matrix(4, 3, 5),
        moves in prop::collection::vec(
            prop_oneof![
                (0..5usize, 0..5usize).prop_map(|(a, b)| Move::Col(a, b)),
                (0..4usize, 0..4usize).prop_map(|(a, b)| Move::SphereRow(a, b)),
            ],
            0..12,
        ),
    ) {
        let sig = signature(&h);
        let end = moves.iter().fold(h, |acc, mv| apply(&acc, mv));
        prop_assert_eq!(signature(&end), sig);
    }

    #[test]
    fn phi_reduction_ignores_summand_order(v in phi_vector(), seed in any::<u64>(), pd in any::<bool>()) {
        let spin = !v.has_primary();
        let ctx = PhiContext { spin, smooth: !pd, pd_mode: pd };
        let secondary = v.x.iter().any(|&b| b) || v.moore.iter().any(|m| m.eps);
        prop_assume!(pd || !spin || !secondary);
        let mut shuffled = v.clone();
        let mut rng = StdRng::seed_from_u64(seed);
        shuffled.x.shuffle(&mut rng);
        shuffled.y.shuffle(&mut rng);
        shuffled.moore.shuffle(&mut rng);
        shuffled.w.shuffle(&mut rng);
        let a = reduce_phi(&v, ctx).unwrap();
        let b = reduce_phi(&shuffled, ctx).unwrap();
        prop_assert_eq!(case_key(a.case), case_key(b.case));
        prop_assert_eq!(a.remark_derived, b.remark_derived);
    }

    #[test]
    fn descriptors_survive_a_round_trip(seed in any::<u64>()) {
        let m = random_descriptor(&mut StdRng::seed_from_u64(seed));
        let text = render_descriptor(&m);
        prop_assert_eq!(parse_descriptor_unchecked(&text).unwrap(), m);
    }

    #[test]
    fn double_suspension_extends_single(seed in any::<u64>()) {
        let m = random_descriptor(&mut StdRng::seed_from_u64(seed));
        let double = double_suspension_decomposition(&m).unwrap();
        if mode_for(&m) == Mode::Single {
            prop_assert_eq!(double, suspension_decomposition(&m).unwrap().suspend());
        }
    }

    #[test]
    fn k_theory_torsion_comes_from_h(seed in any::<u64>()) {
        let m = random_descriptor(&mut StdRng::seed_from_u64(seed));
        let k = k_group(&m).unwrap().value;
        prop_assert!(!k.has_2_torsion());
        prop_assert_eq!(k.has_3_torsion(), m.h.has_3_torsion());
    }
}

#[test]
fn orbit_oracle_separates_z4_classes() {
    let mut orbits = PhiOrbits::new(vec![Slot::Moore(1)]);
    let classes: std::collections::BTreeSet<usize> = (0..4).map(|i| orbits.root(i)).collect();
    assert_eq!(classes.len(), 3);
    assert_eq!(orbits.root(1), orbits.root(3));
}

#[test]
fn orbit_oracle_absorbs_i_eta_sq_into_eta_sq() {
    let mut orbits = PhiOrbits::new(vec![Slot::S3, Slot::Moore(2)]);
    let both = orbits.encode_state(&[1, 2]);
    let x_only = orbits.encode_state(&[1, 0]);
    let eps_only = orbits.encode_state(&[0, 2]);
    assert_eq!(orbits.root(both), orbits.root(x_only));
    assert_ne!(orbits.root(both), orbits.root(eps_only));
}

#[test]
fn orbit_oracle_lets_z_absorb_w_at_equal_exponent() {
    let mut orbits = PhiOrbits::new(vec![Slot::Moore(2), Slot::Chang(2)]);
    let both = orbits.encode_state(&[1, 1]);
    assert_eq!(orbits.root(both), orbits.root(orbits.encode_state(&[1, 0])));
    assert_ne!(orbits.root(both), orbits.root(orbits.encode_state(&[0, 1])));
}
