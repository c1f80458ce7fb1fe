//! Randomized invariants of the lattice, the slope formulas, the semicircle
//! geometry, and the chain construction.  Every check is an exact identity:
//! random inputs, zero tolerance.

use std::sync::OnceLock;

use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;

use k3walls::flop_chain::{ChainReport, StepKind};
use k3walls::mukai_lattice::{
    bm_vector, dual, hilbert_vector, pairing, phi, phi_inverse, square, twist, Degree,
    MukaiVector, RankParam,
};
use k3walls::stability_plane::{
    brill_noether_gamma, central_charge, gamma_from_vector, gamma_from_vector_bm,
    is_geometric_guaranteed, path_x, Frame, PlanePoint,
};
use k3walls::wall_engine::{Side, WallSet};

fn d(x: u32) -> Degree {
    Degree::new(x).unwrap()
}

fn n(x: u32) -> RankParam {
    RankParam::new(x).unwrap()
}

/// Wall sets for d = 1..12 (index d-1), built once.
fn wall_sets() -> &'static Vec<WallSet> {
    static SETS: OnceLock<Vec<WallSet>> = OnceLock::new();
    SETS.get_or_init(|| {
        (1..=12)
            .map(|dd| k3walls::wall_engine::all_walls(n(2), d(dd)).unwrap())
            .collect()
    })
}

/// Chain reports for d = 1..12 (index d-1), built once.
fn chains() -> &'static Vec<ChainReport> {
    static CHAINS: OnceLock<Vec<ChainReport>> = OnceLock::new();
    CHAINS.get_or_init(|| {
        (1..=12)
            .map(|dd| k3walls::flop_chain::build_chain(d(dd)).unwrap())
            .collect()
    })
}

fn vec3() -> impl Strategy<Value = MukaiVector> {
    (
        -1_000_000i64..=1_000_000,
        -1_000_000i64..=1_000_000,
        -1_000_000i64..=1_000_000,
    )
        .prop_map(MukaiVector::from)
}

/// `im(Z(a)·conj(Z(b))) = 0` at `p`: the two charges are aligned there.
fn aligned(a: &MukaiVector, b: &MukaiVector, p: &PlanePoint, dd: Degree) -> bool {
    let za = central_charge(a, p, dd);
    let zb = central_charge(b, p, dd);
    za.im_coeff.clone() * zb.re.clone() == za.re.clone() * zb.im_coeff.clone()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        u in vec3(), w in vec3(), z in vec3(),
        alpha in -1000i64..=1000, beta in -1000i64..=1000,
        dd in 1u32..=50,
    ) {
        let dd = d(dd);
        prop_assert_eq!(pairing(&u, &w, dd), pairing(&w, &u, dd));
        let combo = &u.scaled(&BigInt::from(alpha)) + &w.scaled(&BigInt::from(beta));
        prop_assert_eq!(
            pairing(&combo, &z, dd),
            BigInt::from(alpha) * pairing(&u, &z, dd) + BigInt::from(beta) * pairing(&w, &z, dd)
        );
        prop_assert_eq!(square(&u, dd), pairing(&u, &u, dd));
    }

    #[test]
    fn lattice_maps_are_isometries_with_inverses(
        u in vec3(), w in vec3(),
        nn in 1u32..=6, dd in 1u32..=50, k in -100i64..=100,
    ) {
        let (nn, dd) = (n(nn), d(dd));
        let p = pairing(&u, &w, dd);
        let f = phi(nn, dd);
        let g = phi_inverse(nn, dd);
        prop_assert_eq!(pairing(&f.apply(&u), &f.apply(&w), dd), p.clone());
        prop_assert_eq!(g.apply(&f.apply(&u)), u.clone());
        prop_assert_eq!(f.apply(&g.apply(&u)), u.clone());
        prop_assert_eq!(pairing(&dual(&u), &dual(&w), dd), p.clone());
        prop_assert_eq!(dual(&dual(&u)), u.clone());
        let kk = BigInt::from(k);
        prop_assert_eq!(pairing(&twist(&u, &kk, dd), &twist(&w, &kk, dd), dd), p);
        prop_assert_eq!(twist(&twist(&u, &kk, dd), &-&kk, dd), u.clone());
        // The isometry carries the hilbert total to the bm total.
        prop_assert_eq!(f.apply(&hilbert_vector(nn, dd)), bm_vector(nn));
    }

    #[test]
    fn slopes_ignore_scaling_shifting_and_sign(
        u in vec3(), nn in 1u32..=6, dd in 1u32..=50,
        k in -50i64..=50, scale in prop::sample::select(vec![-7i64, -2, -1, 2, 3, 11]),
    ) {
        let (nn, dd) = (n(nn), d(dd));
        let kk = BigInt::from(k);
        let sc = BigInt::from(scale);
        if let Ok(g) = gamma_from_vector(&u, nn, dd) {
            let v = hilbert_vector(nn, dd);
            prop_assert_eq!(gamma_from_vector(&(&u + &v.scaled(&kk)), nn, dd).unwrap(), g.clone());
            prop_assert_eq!(gamma_from_vector(&-&u, nn, dd).unwrap(), g.clone());
            prop_assert_eq!(gamma_from_vector(&u.scaled(&sc), nn, dd).unwrap(), g);
        }
        if let Ok(g) = gamma_from_vector_bm(&u, nn, dd) {
            let vp = bm_vector(nn);
            prop_assert_eq!(gamma_from_vector_bm(&(&u + &vp.scaled(&kk)), nn, dd).unwrap(), g.clone());
            prop_assert_eq!(gamma_from_vector_bm(&-&u, nn, dd).unwrap(), g.clone());
            prop_assert_eq!(gamma_from_vector_bm(&u.scaled(&sc), nn, dd).unwrap(), g);
        }
    }

    #[test]
    fn charges_align_at_both_crossings_of_every_wall(
        dd in 1u32..=12, pick in 0usize..=1000, vpick in 0usize..=1000,
    ) {
        let nn = n(2);
        let ws = &wall_sets()[dd as usize - 1];
        let w = &ws.walls[pick % ws.walls.len()];
        let dd = d(dd);
        let v = hilbert_vector(nn, dd);
        let vp = bm_vector(nn);
        // Hilbert-path crossing: the stored (hilbert-frame) classes align
        // with the hilbert total.
        let ph = PlanePoint::new(path_x(Frame::Hilbert, nn), w.crossing_t_hilbert(nn)).unwrap();
        let a = &w.defining_vectors[vpick % w.defining_vectors.len()];
        prop_assert!(aligned(a, &v, &ph, dd));
        // Bm-path crossing: the transported classes align with the bm total.
        let pb = PlanePoint::new(path_x(Frame::Bm, nn), w.crossing_t_bm(nn)).unwrap();
        let bms = w.bm_vectors(nn, dd);
        let ab = &bms[vpick % bms.len()];
        prop_assert!(aligned(ab, &vp, &pb, dd));
        // Geometric-region membership of each crossing matches the side.
        prop_assert_eq!(is_geometric_guaranteed(&ph, dd), w.side == Side::Hilbert);
        prop_assert_eq!(is_geometric_guaranteed(&pb, dd), w.side == Side::Bm);
        if w.side == Side::Middle {
            let boundary = BigRational::new(BigInt::one(), dd.big());
            prop_assert_eq!(ph.t, boundary.clone());
            prop_assert_eq!(pb.t, boundary);
        }
        // The slope ordering fixes the crossing ordering on both paths.
        let g0 = brill_noether_gamma(nn, dd);
        match w.side {
            Side::Hilbert => prop_assert!(w.gamma < g0),
            Side::Middle => prop_assert_eq!(&w.gamma, &g0),
            Side::Bm => prop_assert!(w.gamma > g0),
        }
    }

    #[test]
    fn crossings_are_monotone_in_the_slope(
        dd in 1u32..=12, i in 0usize..=1000, j in 0usize..=1000,
    ) {
        let nn = n(2);
        let ws = &wall_sets()[dd as usize - 1];
        let wi = &ws.walls[i % ws.walls.len()];
        let wj = &ws.walls[j % ws.walls.len()];
        prop_assume!(wi.gamma != wj.gamma);
        let (lo, hi) = if wi.gamma < wj.gamma { (wi, wj) } else { (wj, wi) };
        prop_assert!(lo.crossing_t_hilbert(nn) > hi.crossing_t_hilbert(nn));
        prop_assert!(lo.crossing_t_bm(nn) < hi.crossing_t_bm(nn));
    }

    #[test]
    fn flop_summands_carry_unit_imaginary_parts(
        dd in 1u32..=12, pick in 0usize..=1000,
    ) {
        let nn = n(2);
        let report = &chains()[dd as usize - 1];
        let flops: Vec<_> = report
            .steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Flop { .. }))
            .collect();
        let step = flops[pick % flops.len()];
        let dd = d(dd);
        let StepKind::Flop { a, b, frame, exc } = &step.kind else { unreachable!() };
        let (total, x) = match frame {
            Frame::Hilbert => (hilbert_vector(nn, dd), BigInt::from(-2)),
            Frame::Bm => (bm_vector(nn), BigInt::zero()),
        };
        // The splitting reassembles the total vector...
        prop_assert_eq!(&(a + b), &total);
        // ...and at an integer x the imaginary coefficient is an integer, so
        // the total's value 2 forces the parts into 1 + 1: no summand can be
        // slope-equivalent to the total (which has an even coefficient).
        let im = |u: &MukaiVector| &u.c - &u.r * &x;
        prop_assert_eq!(im(a), BigInt::one());
        prop_assert_eq!(im(b), BigInt::one());
        prop_assert_eq!(im(&total), BigInt::from(2));
        // Shape of the contracted locus: codimension equals fiber dimension
        // and is at least two.
        prop_assert_eq!(exc.codim, exc.fiber_dim);
        prop_assert!(exc.codim >= 2);
        prop_assert_eq!(
            exc.total_dim,
            exc.fiber_dim + exc.base_components.iter().map(|bc| bc.dim).sum::<u64>()
        );
        // Both summands stay numerically admissible.
        prop_assert!(square(a, dd) >= BigInt::from(-2));
        prop_assert!(square(b, dd) >= BigInt::from(-2));
    }
}

#[test]
fn doubled_slope_regression_n3() {
    // Two independent classes cut the same wall at slope 2/7 for n = 3,
    // d = 1 — duplicate slopes must merge, not multiply.
    let ws = k3walls::wall_engine::all_walls(n(3), d(1)).unwrap();
    let doubled: Vec<_> = ws
        .walls
        .iter()
        .filter(|w| w.gamma == BigRational::new(BigInt::from(2), BigInt::from(7)))
        .collect();
    assert_eq!(doubled.len(), 1);
    assert_eq!(doubled[0].defining_vectors.len(), 2);
    assert!(!ws.certified_complete);
}
