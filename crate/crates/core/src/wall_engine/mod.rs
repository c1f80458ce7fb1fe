//! Enumeration and classification of movable-cone walls.
//!
//! A *wall* is indexed by its slope `Γ ∈ (0, 1/n)`: the hyperplane spanned by
//! the total vector and a defining class.  One wall can carry several
//! primitive defining classes (all lying in one saturated rank-2 lattice);
//! walls are therefore merged by slope.  Each wall is realized as a
//! semicircle in both frames; the *side* records which path crosses it inside
//! the guaranteed-geometric region `t > 1/d`:
//!
//! * `Γ < Γ₀` — hilbert side, crossed by `x = -n`;
//! * `Γ = Γ₀  = 2dn/(2dn²+1)` — the middle (Brill–Noether) wall, the unique
//!   slope whose two crossings both sit at `t = 1/d`;
//! * `Γ > Γ₀` — bm side, crossed by `x = -ε`, `ε → 0⁺`.
//!
//! For `n = 2` the complete wall list is produced by two finite enumerations
//! (`alg_s` for the hilbert side, `alg_m` for the bm side) plus the middle
//! wall; for `n = 1` the middle wall is the only one.  For `n >= 3` only the
//! rank-one catalogs are certified, and the result is flagged incomplete.

mod oracle;
mod rank;
mod tss;

pub use oracle::oracle_walls;
pub use rank::{lattice_basis, rank_bound, wall_rank, LatticeBasis};
pub use tss::{is_totally_semistable, SearchBound, TssKind, TssOutcome, TssWitness};

use num::{BigInt, BigRational, Signed, Zero};
use std::collections::BTreeMap;

use crate::error::Result;
use crate::mukai_lattice::{
    bm_vector, hilbert_vector, pairing, phi, phi_inverse, primitive_part, square, Degree,
    MukaiVector, RankParam,
};
use crate::stability_plane::{
    brill_noether_gamma, gamma_from_vector, gamma_from_vector_bm, path_x, semicircle, Frame,
    Semicircle,
};

/// Which path crosses the wall inside the geometric region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Hilbert,
    Middle,
    Bm,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Hilbert => "hilbert",
            Side::Middle => "middle",
            Side::Bm => "bm",
        }
    }
}

/// A movable-cone wall: slope, primitive hilbert-frame defining classes, the
/// path side, the (lazily filled) Jordan–Hölder rank, and both semicircles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    /// Slope of the wall divisor `H̃ - Γ·B`; always in the open `(0, 1/n)`.
    pub gamma: BigRational,
    /// Primitive defining classes, hilbert frame, sorted and deduplicated;
    /// every entry reproduces `gamma` under `gamma_from_vector`.
    pub defining_vectors: Vec<MukaiVector>,
    pub side: Side,
    /// Jordan–Hölder rank at the crossing (see `wall_rank`); `None` until
    /// computed.
    pub rank: Option<u32>,
    pub semicircle_h: Semicircle,
    pub semicircle_bm: Semicircle,
}

impl Wall {
    /// Build a wall from one hilbert-frame defining class.
    pub fn from_hilbert_vector(a: &MukaiVector, n: RankParam, d: Degree) -> Result<Wall> {
        let a = primitive_part(a)?;
        let gamma = gamma_from_vector(&a, n, d)?;
        Wall::from_gamma_and_vectors(gamma, vec![canonical_sign(&a, n)], n, d)
    }

    /// Build a wall from one bm-frame defining class (stored transported).
    pub fn from_bm_vector(a_bm: &MukaiVector, n: RankParam, d: Degree) -> Result<Wall> {
        let a_bm = primitive_part(a_bm)?;
        let gamma = gamma_from_vector_bm(&a_bm, n, d)?;
        let transported = phi_inverse(n, d).apply(&a_bm);
        Wall::from_gamma_and_vectors(gamma, vec![canonical_sign(&transported, n)], n, d)
    }

    fn from_gamma_and_vectors(
        gamma: BigRational,
        vectors: Vec<MukaiVector>,
        n: RankParam,
        d: Degree,
    ) -> Result<Wall> {
        let semicircle_h = semicircle(&gamma, n, d, Frame::Hilbert)?;
        let semicircle_bm = semicircle(&gamma, n, d, Frame::Bm)?;
        let side = match gamma.cmp(&brill_noether_gamma(n, d)) {
            std::cmp::Ordering::Less => Side::Hilbert,
            std::cmp::Ordering::Equal => Side::Middle,
            std::cmp::Ordering::Greater => Side::Bm,
        };
        Ok(Wall {
            gamma,
            defining_vectors: vectors,
            side,
            rank: None,
            semicircle_h,
            semicircle_bm,
        })
    }

    /// Merge another wall of the same slope into this one (vector union).
    pub fn merge(&mut self, other: Wall) {
        debug_assert_eq!(self.gamma, other.gamma);
        self.defining_vectors.extend(other.defining_vectors);
        self.defining_vectors.sort();
        self.defining_vectors.dedup();
    }

    /// The defining classes transported to the bm frame by `Φₙ`.
    pub fn bm_vectors(&self, n: RankParam, d: Degree) -> Vec<MukaiVector> {
        let f = phi(n, d);
        self.defining_vectors.iter().map(|a| f.apply(a)).collect()
    }

    /// Crossing parameter on the hilbert path `x = -n` (always exists for an
    /// in-window wall).
    pub fn crossing_t_hilbert(&self, n: RankParam) -> BigRational {
        self.semicircle_h
            .crossing_t(&path_x(Frame::Hilbert, n))
            .expect("in-window wall semicircles always meet the hilbert path")
    }

    /// Crossing parameter on the bm path `x = 0`.
    pub fn crossing_t_bm(&self, n: RankParam) -> BigRational {
        self.semicircle_bm
            .crossing_t(&path_x(Frame::Bm, n))
            .expect("in-window wall semicircles always meet the bm path")
    }

    /// Crossing parameter on the wall's own side (`t = 1/d` on both paths for
    /// the middle wall).
    pub fn crossing_t_own_side(&self, n: RankParam) -> BigRational {
        match self.side {
            Side::Hilbert => self.crossing_t_hilbert(n),
            Side::Middle | Side::Bm => self.crossing_t_bm(n),
        }
    }

    /// First (lexicographically least) defining class.
    pub fn first_vector(&self) -> &MukaiVector {
        &self.defining_vectors[0]
    }
}

/// Canonical sign for a stored defining class: positive imaginary coefficient
/// on the hilbert path (`c + r·n > 0`); if that vanishes — as it does for the
/// middle wall's representative — positive imaginary coefficient at `x = 0`
/// (`c > 0`), then positive `s` as a final tiebreak.
fn canonical_sign(u: &MukaiVector, n: RankParam) -> MukaiVector {
    let im_h = &u.c + &u.r * n.big();
    let keep = match im_h.sign() {
        num::bigint::Sign::Plus => true,
        num::bigint::Sign::Minus => false,
        num::bigint::Sign::NoSign => match u.c.sign() {
            num::bigint::Sign::Plus => true,
            num::bigint::Sign::Minus => false,
            num::bigint::Sign::NoSign => !u.s.is_negative(),
        },
    };
    if keep {
        u.clone()
    } else {
        -u
    }
}

/// A wall list plus a completeness certificate: `true` exactly when the
/// enumeration provably lists *every* wall (`n ∈ {1, 2}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSet {
    /// Sorted by ascending slope.
    pub walls: Vec<Wall>,
    pub certified_complete: bool,
}

/// The two-term flopping criterion for `v = (1, 0, -dn²)` and a hilbert-frame
/// class `a` (with `b = v - a`):
///
/// 1. `span(a, v)` is hyperbolic: `a²·v² - (a,v)² < 0`;
/// 2. both summands are numerically admissible: `a² >= -2`, `b² >= -2`;
/// 3. `0 < (a, v) < v²`;
/// 4. a spherical summand must not dominate: `a² = -2 ⟹ (a,v) <= v²/2`,
///    and likewise for `b`.
///
/// Returns `false` (not an error) on any vector failing the criterion,
/// including multiples of `v` (which fail 3).
pub fn flopping_check(a: &MukaiVector, n: RankParam, d: Degree) -> bool {
    flopping_check_against(a, &hilbert_vector(n, d), d)
}

/// The same criterion for `v' = (0, n, -1)` and a bm-frame class.
pub fn flopping_check_bm(a_bm: &MukaiVector, n: RankParam, d: Degree) -> bool {
    flopping_check_against(a_bm, &bm_vector(n), d)
}

fn flopping_check_against(a: &MukaiVector, total: &MukaiVector, d: Degree) -> bool {
    let minus_two = BigInt::from(-2);
    let v_sq = square(total, d);
    let half_v_sq = &v_sq / BigInt::from(2);
    let a_sq = square(a, d);
    let pav = pairing(a, total, d);
    if pav <= BigInt::zero() || pav >= v_sq {
        return false;
    }
    if &a_sq * &v_sq - &pav * &pav >= BigInt::zero() {
        return false;
    }
    let b = total - a;
    let b_sq = square(&b, d);
    if a_sq < minus_two || b_sq < minus_two {
        return false;
    }
    if a_sq == minus_two && pav > half_v_sq {
        return false;
    }
    if b_sq == minus_two && &v_sq - &pav > half_v_sq {
        return false;
    }
    true
}

/// Rank-one wall catalog on the hilbert side, any `n`: classes
/// `(1, -c₁, s)` with `c₁ ∈ {1, …, n-1}` and
/// `2dnc₁ - dn² + 1 <= s <= dc₁² + 1`
/// (the upper bound is `a² >= -2`, the lower bound is `Γ < Γ₀`).
/// Walls of equal slope are merged; empty for `n = 1`.
pub fn rank_one_catalog_hilbert(n: RankParam, d: Degree) -> Vec<Wall> {
    let mut by_gamma: BTreeMap<BigRational, Wall> = BTreeMap::new();
    let (nn, dd) = (n.get() as i64, d.get() as i64);
    for c1 in 1..nn {
        let lo = 2 * dd * nn * c1 - dd * nn * nn + 1;
        let hi = dd * c1 * c1 + 1;
        for s in lo..=hi {
            let a = MukaiVector::from((1, -c1, s));
            let mut w = Wall::from_hilbert_vector(&a, n, d)
                .expect("catalog classes always span in-window walls");
            w.rank = Some(1);
            match by_gamma.get_mut(&w.gamma) {
                Some(existing) => existing.merge(w),
                None => {
                    by_gamma.insert(w.gamma.clone(), w);
                }
            }
        }
    }
    by_gamma.into_values().collect()
}

/// Rank-one wall catalog on the bm side, any `n`: classes `(1, c₁, s)` with
/// `c₁ ∈ {1, …, n-1}` and `1 <= s <= min(dc₁² + 1, d(n-c₁)²)`
/// (upper bounds are `a² >= -2` and `(v'-a)² >= -2`; `s >= 1` is `Γ > Γ₀`).
/// Empty for `n = 1`.
pub fn rank_one_catalog_bm(n: RankParam, d: Degree) -> Vec<Wall> {
    let mut by_gamma: BTreeMap<BigRational, Wall> = BTreeMap::new();
    let (nn, dd) = (n.get() as i64, d.get() as i64);
    for c1 in 1..nn {
        let hi = (dd * c1 * c1 + 1).min(dd * (nn - c1) * (nn - c1));
        for s in 1..=hi {
            let a = MukaiVector::from((1, c1, s));
            let mut w =
                Wall::from_bm_vector(&a, n, d).expect("catalog classes always span in-window walls");
            w.rank = Some(1);
            match by_gamma.get_mut(&w.gamma) {
                Some(existing) => existing.merge(w),
                None => {
                    by_gamma.insert(w.gamma.clone(), w);
                }
            }
        }
    }
    by_gamma.into_values().collect()
}

/// The middle wall at `Γ₀ = 2dn/(2dn²+1)`, hilbert representative
/// `(-1, n, -dn²-1)` (spherical; transports to `(1, 0, 1)` in the bm frame).
/// Its rank is 1 by convention: the generic destabilization there is the
/// stratified Brill–Noether family, not a two-term extension.
pub fn brill_noether_wall(n: RankParam, d: Degree) -> Wall {
    let dn2 = (d.get() as i64) * (n.get() as i64) * (n.get() as i64);
    let a = MukaiVector::from((-1, n.get() as i64, -dn2 - 1));
    let mut w = Wall::from_hilbert_vector(&a, n, d)
        .expect("the Brill-Noether class always spans the middle wall");
    debug_assert_eq!(w.side, Side::Middle);
    w.rank = Some(1);
    w
}

/// Hilbert-side enumeration for `n = 2`: all classes
/// `(a, 1 - 2a, M + 4d(a-1))` with `a >= 1`, `a·M <= d+1`, `M >= a`.
///
/// `a² >= -2` is exactly `a·M <= d+1`; `M >= a` places the slope strictly
/// below `Γ₀`.  Every output is primitive (`gcd(a, 1-2a) = 1`) and passes
/// [`flopping_check`].
pub fn alg_s(d: Degree) -> Vec<MukaiVector> {
    let dd = d.get() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while a * a <= dd + 1 {
        let mut m = a;
        while a * m <= dd + 1 {
            out.push(MukaiVector::from((a, 1 - 2 * a, m + 4 * dd * (a - 1))));
            m += 1;
        }
        a += 1;
    }
    out
}

/// Bm-side enumeration for `n = 2`: all classes `(a, 1, c)` with `a >= 1`,
/// `a·(a+1) <= d+1` and `a <= c <= (d+1)/a - 1`.
///
/// The two bounds are `(v'-a)² >= -2` (upper) and `Γ > Γ₀` (lower, `c >= a`).
/// Every output is primitive and passes [`flopping_check_bm`].
pub fn alg_m(d: Degree) -> Vec<MukaiVector> {
    let dd = d.get() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while a * (a + 1) <= dd + 1 {
        let hi = (dd + 1) / a - 1;
        for c in a..=hi {
            out.push(MukaiVector::from((a, 1, c)));
        }
        a += 1;
    }
    out
}

/// The full wall set of the movable cone.
///
/// * `n = 1`: the middle wall only (certified complete);
/// * `n = 2`: `alg_s` ∪ middle ∪ `alg_m`, merged by slope, with
///   Jordan–Hölder ranks computed for every wall (certified complete);
/// * `n >= 3`: rank-one catalogs plus the middle wall, flagged
///   `certified_complete: false`.
pub fn all_walls(n: RankParam, d: Degree) -> Result<WallSet> {
    if n.get() == 1 {
        return Ok(WallSet {
            walls: vec![brill_noether_wall(n, d)],
            certified_complete: true,
        });
    }

    let mut by_gamma: BTreeMap<BigRational, Wall> = BTreeMap::new();
    let insert = |w: Wall, by_gamma: &mut BTreeMap<BigRational, Wall>| match by_gamma
        .get_mut(&w.gamma)
    {
        Some(existing) => existing.merge(w),
        None => {
            by_gamma.insert(w.gamma.clone(), w);
        }
    };

    if n.get() == 2 {
        for a in alg_s(d) {
            debug_assert!(flopping_check(&a, n, d));
            insert(Wall::from_hilbert_vector(&a, n, d)?, &mut by_gamma);
        }
        for a in alg_m(d) {
            debug_assert!(flopping_check_bm(&a, n, d));
            insert(Wall::from_bm_vector(&a, n, d)?, &mut by_gamma);
        }
        insert(brill_noether_wall(n, d), &mut by_gamma);
        let mut walls: Vec<Wall> = by_gamma.into_values().collect();
        for w in &mut walls {
            w.rank = Some(wall_rank(w, n, d)?);
        }
        return Ok(WallSet {
            walls,
            certified_complete: true,
        });
    }

    for w in rank_one_catalog_hilbert(n, d) {
        insert(w, &mut by_gamma);
    }
    for w in rank_one_catalog_bm(n, d) {
        insert(w, &mut by_gamma);
    }
    insert(brill_noether_wall(n, d), &mut by_gamma);
    let mut walls: Vec<Wall> = by_gamma.into_values().collect();
    // The merge unions vector lists but keeps `rank: None` from the
    // constructor path; rank-one catalog walls are rank one by construction.
    for w in &mut walls {
        w.rank = Some(1);
    }
    Ok(WallSet {
        walls,
        certified_complete: false,
    })
}
