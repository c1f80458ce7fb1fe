//! Independent brute-force wall enumeration.
//!
//! The oracle rediscovers walls from nothing but the two-term flopping
//! criterion: it scans every primitive triple with coordinates up to a bound,
//! in *both* frames (a class can destabilize `v` on the hilbert path or `v'`
//! on the bm path — merging by slope reunites the two views of each wall),
//! and groups the passers by slope.  It shares no enumeration logic with
//! `alg_s`/`alg_m`, so agreement between the two is a genuine cross-check.
//!
//! The inner loop runs in `i128`; a pre-flight guard rejects bounds whose
//! intermediates could overflow.

use num::{BigRational, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::mukai_lattice::{phi_inverse, Degree, MukaiVector, RankParam};
use crate::wall_engine::{canonical_sign, Wall};

/// All wall slopes in the open window `(gamma_lo, gamma_hi)` realized by a
/// primitive class with coordinates bounded by `bound`, with every bounded
/// defining class attached.  Walls come back sorted by ascending slope with
/// `rank: None` (classification is a separate pass).
pub fn oracle_walls(
    n: RankParam,
    d: Degree,
    gamma_lo: &BigRational,
    gamma_hi: &BigRational,
    bound: u64,
) -> Result<Vec<Wall>> {
    if bound == 0 {
        return Err(Error::InvalidParameter(
            "the oracle bound must be at least 1".into(),
        ));
    }
    let window_cap = BigRational::from(n.big()).recip();
    if gamma_lo < &BigRational::zero()
        || gamma_lo >= gamma_hi
        || gamma_hi > &window_cap
    {
        return Err(Error::InvalidParameter(format!(
            "slope window [{gamma_lo}, {gamma_hi}] must sit inside (0, {window_cap})"
        )));
    }

    let b = bound as i128;
    let dd = d.get() as i128;
    let nn = n.get() as i128;
    // Largest intermediate is a product of two quantities of size
    // ~2·d·n²·b²; keep those below 2^40 so products stay inside i128.
    if 2 * dd * nn * nn * b * b >= 1i128 << 40 {
        return Err(Error::BoundTooLarge(format!(
            "oracle bound {bound} overflows the i128 budget at n = {nn}, d = {dd}"
        )));
    }

    let dn2 = dd * nn * nn;
    let v_sq = 2 * dn2;
    let half_v_sq = dn2;

    // Classes recorded per slope: hilbert-frame passers and bm-frame passers.
    let mut found: BTreeMap<BigRational, (Vec<(i128, i128, i128)>, Vec<(i128, i128, i128)>)> =
        BTreeMap::new();

    let in_window = |num: i128, den: i128| -> Option<BigRational> {
        if den == 0 {
            return None;
        }
        let gamma = BigRational::new(num.into(), den.into());
        if &gamma > gamma_lo && &gamma < gamma_hi {
            Some(gamma)
        } else {
            None
        }
    };
    let gcd3 = |r: i128, c: i128, s: i128| num::integer::gcd(num::integer::gcd(r, c), s);

    // Check the flopping criterion given the square, the pairing with the
    // total, and the total's square (shared by both frames).
    let passes = |sq: i128, pav: i128| -> bool {
        pav > 0
            && pav < v_sq
            && sq >= -2
            && sq * v_sq - pav * pav < 0
            && (v_sq - 2 * pav + sq) >= -2
            && (sq != -2 || pav <= half_v_sq)
            && (v_sq - 2 * pav + sq != -2 || v_sq - pav <= half_v_sq)
    };

    // Hilbert frame: (a, v) = dn²·r - s pins s into a narrow window.
    for r in -b..=b {
        let base = dn2 * r;
        let s_lo = (base - v_sq + 1).max(-b);
        let s_hi = (base - 1).min(b);
        for s in s_lo..=s_hi {
            let pav = base - s;
            let rs2 = 2 * r * s;
            for c in -b..=b {
                let sq = 2 * dd * c * c - rs2;
                if !passes(sq, pav) {
                    continue;
                }
                if let Some(gamma) = in_window(-2 * dd * c, dn2 * r + s) {
                    if gcd3(r, c, s).abs() == 1 {
                        found.entry(gamma).or_default().0.push((r, c, s));
                    }
                }
            }
        }
    }

    // Bm frame: (a, v') = 2dn·c + r pins r into a narrow window.
    for c in -b..=b {
        let base = 2 * dd * nn * c;
        let r_lo = (-base + 1).max(-b);
        let r_hi = (v_sq - base - 1).min(b);
        for r in r_lo..=r_hi {
            let pav = base + r;
            for s in -b..=b {
                let sq = 2 * dd * c * c - 2 * r * s;
                if !passes(sq, pav) {
                    continue;
                }
                let m = nn * s + c;
                if let Some(gamma) = in_window(2 * dd * m, 2 * dd * nn * m + r) {
                    if gcd3(r, c, s).abs() == 1 {
                        found.entry(gamma).or_default().1.push((r, c, s));
                    }
                }
            }
        }
    }

    let back = phi_inverse(n, d);
    let mut walls = Vec::with_capacity(found.len());
    for (gamma, (hilbert, bm)) in found {
        let mut vectors: Vec<MukaiVector> = hilbert
            .into_iter()
            .map(|(r, c, s)| MukaiVector::from((r as i64, c as i64, s as i64)))
            .chain(bm.into_iter().map(|(r, c, s)| {
                back.apply(&MukaiVector::from((r as i64, c as i64, s as i64)))
            }))
            .map(|u| canonical_sign(&u, n))
            .collect();
        vectors.sort();
        vectors.dedup();
        walls.push(Wall::from_gamma_and_vectors(gamma, vectors, n, d)?);
    }
    Ok(walls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::wall_engine::{all_walls, flopping_check, flopping_check_bm};

    fn d(x: u32) -> Degree {
        Degree::new(x).unwrap()
    }

    fn n(x: u32) -> RankParam {
        RankParam::new(x).unwrap()
    }

    fn full_window(nn: u32) -> (BigRational, BigRational) {
        (rat(0, 1), rat(1, nn as i64))
    }

    #[test]
    fn oracle_matches_catalog_at_small_degree() {
        for dd in 1..=3u32 {
            let (lo, hi) = full_window(2);
            let oracle = oracle_walls(n(2), d(dd), &lo, &hi, 10 * dd as u64).unwrap();
            let catalog = all_walls(n(2), d(dd)).unwrap().walls;
            let o: Vec<_> = oracle.iter().map(|w| w.gamma.clone()).collect();
            let c: Vec<_> = catalog.iter().map(|w| w.gamma.clone()).collect();
            assert_eq!(o, c, "slope lists at d = {dd}");
            // Every catalog class reappears among the oracle's classes.
            for (ow, cw) in oracle.iter().zip(&catalog) {
                for u in &cw.defining_vectors {
                    assert!(
                        ow.defining_vectors.contains(u),
                        "oracle at Γ = {} misses {u}",
                        cw.gamma
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_frozen_slopes_at_d1() {
        let (lo, hi) = full_window(2);
        let oracle = oracle_walls(n(2), d(1), &lo, &hi, 10).unwrap();
        let slopes: Vec<_> = oracle.iter().map(|w| w.gamma.clone()).collect();
        assert_eq!(slopes, vec![rat(1, 3), rat(2, 5), rat(4, 9), rat(6, 13)]);
    }

    #[test]
    fn oracle_n1_finds_only_the_middle_wall() {
        for dd in 1..=3u32 {
            let (lo, hi) = full_window(1);
            let oracle = oracle_walls(n(1), d(dd), &lo, &hi, 40).unwrap();
            assert_eq!(oracle.len(), 1, "n = 1, d = {dd}");
            assert_eq!(oracle[0].gamma, rat(2 * dd as i64, 2 * dd as i64 + 1));
        }
    }

    #[test]
    fn oracle_vectors_pass_the_flopping_criterion_up_to_sign() {
        let (lo, hi) = full_window(2);
        for w in oracle_walls(n(2), d(2), &lo, &hi, 20).unwrap() {
            for u in &w.defining_vectors {
                let neg = -u;
                assert!(
                    flopping_check(u, n(2), d(2))
                        || flopping_check(&neg, n(2), d(2))
                        || flopping_check_bm(&crate::mukai_lattice::phi(n(2), d(2)).apply(u), n(2), d(2))
                        || flopping_check_bm(&crate::mukai_lattice::phi(n(2), d(2)).apply(&neg), n(2), d(2)),
                    "oracle emitted {u} failing both frames"
                );
            }
        }
    }

    #[test]
    fn oracle_rejects_bad_parameters() {
        let (lo, hi) = full_window(2);
        assert!(matches!(
            oracle_walls(n(2), d(12), &lo, &hi, 40_000_000),
            Err(Error::BoundTooLarge(_))
        ));
        assert!(oracle_walls(n(2), d(1), &hi, &lo, 10).is_err());
        assert!(oracle_walls(n(2), d(1), &lo, &hi, 0).is_err());
    }

    #[test]
    fn sub_window_restricts_the_slopes() {
        // The only d = 1 wall strictly above Γ₀ = 4/9 (both window ends are
        // exclusive, so the middle wall itself is cut away).
        let oracle = oracle_walls(n(2), d(1), &rat(4, 9), &rat(1, 2), 10).unwrap();
        let slopes: Vec<_> = oracle.iter().map(|w| w.gamma.clone()).collect();
        assert_eq!(slopes, vec![rat(6, 13)]);
    }
}
