//! Detection of totally semistable walls.
//!
//! A wall is *totally semistable* for a target class `T` when every object of
//! class `T` is strictly semistable on it.  The two numerical mechanisms are:
//!
//! * an isotropic class `u` in the wall lattice with `(u, T) = 1`
//!   (Hilbert–Chow / Uhlenbeck-type contractions), or
//! * a spherical class `u` with `(u, T) < 0` and positive imaginary part at
//!   the crossing (a spherical twist forces every `T`-object to degenerate).
//!
//! The scan is exhaustive over lattice classes with basis coordinates up to a
//! caller-chosen bound, so a negative answer is always reported as
//! `NoneWithinBound` — the caller picks the bound high enough to be
//! conclusive for the range of interest.

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::mukai_lattice::{pairing, phi, Degree, MukaiVector, RankParam};
use crate::stability_plane::{path_x, Frame};
use crate::wall_engine::rank::{lattice_basis, LatticeBasis};
use crate::wall_engine::Wall;

/// Which numerical mechanism produced the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TssKind {
    IsotropicPairingOne,
    NegativeSpherical,
}

/// A class certifying total semistability, in the frame it was found in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TssWitness {
    pub kind: TssKind,
    pub class: MukaiVector,
    pub frame: Frame,
}

/// Half-width of the coefficient square scanned in the wall lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBound(u64);

impl SearchBound {
    pub fn new(coeff_bound: u64) -> Result<Self> {
        if coeff_bound == 0 {
            return Err(Error::InvalidParameter(
                "the search bound must be at least 1".into(),
            ));
        }
        Ok(SearchBound(coeff_bound))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TssOutcome {
    Found(TssWitness),
    NoneWithinBound,
}

/// Scan the wall's lattice for a totally-semistable witness against `target`.
///
/// The measuring frame follows the target: if it lies in the stored
/// (hilbert-frame) wall lattice the scan runs at the `x = -n` crossing; if it
/// lies in the `Φₙ`-transported lattice instead, the scan runs at the `x = 0`
/// crossing (this is how `(0, n, -1)` is tested on bm-side walls).  A target
/// in neither lattice is an error.
pub fn is_totally_semistable(
    wall: &Wall,
    target: &MukaiVector,
    bound: SearchBound,
    n: RankParam,
    d: Degree,
) -> Result<TssOutcome> {
    let basis = lattice_basis(wall.first_vector(), n, d)?;
    if basis.contains(target) {
        let x = path_x(Frame::Hilbert, n).to_integer();
        return Ok(scan_lattice(&basis, target, &x, bound, d, Frame::Hilbert));
    }
    let f = phi(n, d);
    let transported = LatticeBasis {
        g1: f.apply(&basis.g1),
        g2: f.apply(&basis.g2),
    };
    if transported.contains(target) {
        let x = path_x(Frame::Bm, n).to_integer();
        return Ok(scan_lattice(&transported, target, &x, bound, d, Frame::Bm));
    }
    Err(Error::TargetNotInLattice(format!(
        "{target} lies in neither the wall lattice nor its transport"
    )))
}

/// Exhaustive scan over `u = α·g1 + β·g2`, `|α|, |β| <= bound`, in ascending
/// `(α, β)` order; returns the first witness found.
fn scan_lattice(
    basis: &LatticeBasis,
    target: &MukaiVector,
    x: &BigInt,
    bound: SearchBound,
    d: Degree,
    frame: Frame,
) -> TssOutcome {
    let (q11, q12, q22) = basis.gram(d);
    let p1 = pairing(&basis.g1, target, d);
    let p2 = pairing(&basis.g2, target, d);
    // Imaginary coefficient of α·g1 + β·g2 at the integer abscissa x, up to
    // the positive factor 2d·sqrt(t): α·im1 + β·im2.
    let im1 = &basis.g1.c - &basis.g1.r * x;
    let im2 = &basis.g2.c - &basis.g2.r * x;
    let minus_two = BigInt::from(-2);
    let one = BigInt::from(1);

    let b = bound.0 as i64;
    for alpha in -b..=b {
        for beta in -b..=b {
            if alpha == 0 && beta == 0 {
                continue;
            }
            let (al, be) = (BigInt::from(alpha), BigInt::from(beta));
            let sq =
                &q11 * &al * &al + BigInt::from(2) * &q12 * &al * &be + &q22 * &be * &be;
            let pr = &p1 * &al + &p2 * &be;
            if sq.is_zero() && pr == one {
                return TssOutcome::Found(TssWitness {
                    kind: TssKind::IsotropicPairingOne,
                    class: basis.element(&al, &be),
                    frame,
                });
            }
            if sq == minus_two && pr.is_negative() {
                let im = &im1 * &al + &im2 * &be;
                if im.is_positive() {
                    return TssOutcome::Found(TssWitness {
                        kind: TssKind::NegativeSpherical,
                        class: basis.element(&al, &be),
                        frame,
                    });
                }
            }
        }
    }
    TssOutcome::NoneWithinBound
}
