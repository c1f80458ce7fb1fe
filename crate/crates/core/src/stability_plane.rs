//! The two affine slices of the stability manifold used to detect walls.
//!
//! A point `p = (x, t)` with `t > 0` stands for the divisorial stability
//! condition `σ_{x, y}` with `y² = t` (keeping `t = y²` rational keeps every
//! formula exact).  The central charge of `u = (r, c, s)` at `p` is
//!
//! ```text
//! Z(u) = [2d·c·x - s - r·d·(x² - t)]  +  i·y·[2d·(c - r·x)] ,
//! ```
//!
//! reported as the exact pair `(re, im_coeff)` with `im = y·im_coeff`.
//!
//! Walls for the Hilbert-scheme vector `v = (1, 0, -dn²)` are semicircles in
//! the `(x, t)`-halfplane met by the vertical *hilbert path* `x = -n`; their
//! images under `Φₙ` are walls for `v' = (0, n, -1)` met by the *bm path*
//! `x = 0` (approached as `x = -ε`, `ε → 0⁺`; all reported quantities are
//! evaluated exactly at `x = 0`).  Both families are indexed by the slope
//! `Γ ∈ (0, 1/n)` of the wall divisor `H̃ - Γ·B`.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::mukai_lattice::{
    bm_vector, hilbert_vector, is_integer_multiple_of_primitive, Degree, MukaiVector, RankParam,
};

/// Which affine slice (equivalently, which total vector) a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// The slice through `x = -n`, natural for `v = (1, 0, -dn²)`.
    Hilbert,
    /// The slice through `x = 0` (as `x = -ε`, `ε → 0⁺`), natural for
    /// `v' = (0, n, -1)`.
    Bm,
}

impl Frame {
    pub fn label(self) -> &'static str {
        match self {
            Frame::Hilbert => "hilbert",
            Frame::Bm => "bm",
        }
    }
}

/// A point of the upper half of the slice: `t = y² > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePoint {
    pub x: BigRational,
    pub t: BigRational,
}

impl PlanePoint {
    pub fn new(x: BigRational, t: BigRational) -> Result<Self> {
        if t <= BigRational::zero() {
            return Err(Error::InvalidParameter(format!(
                "plane point needs t > 0, got t = {t}"
            )));
        }
        Ok(PlanePoint { x, t })
    }
}

/// Exact central charge: the value is `re + i·y·im_coeff` with `y = sqrt(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralChargeValue {
    pub re: BigRational,
    pub im_coeff: BigRational,
}

/// `Z(u)` at `p` for degree parameter `d`.
pub fn central_charge(u: &MukaiVector, p: &PlanePoint, d: Degree) -> CentralChargeValue {
    let two_d = BigRational::from_integer(d.two_d());
    let dd = BigRational::from_integer(d.big());
    let r = BigRational::from_integer(u.r.clone());
    let c = BigRational::from_integer(u.c.clone());
    let s = BigRational::from_integer(u.s.clone());
    let re = &two_d * &c * &p.x - &s - &r * &dd * (&p.x * &p.x - &p.t);
    let im_coeff = &two_d * (&c - &r * &p.x);
    CentralChargeValue { re, im_coeff }
}

/// Whether `p` lies in the region where `σ_{x,y}` is unconditionally a
/// geometric stability condition: `y > 1/sqrt(d)`, i.e. `d·t > 1`.
pub fn is_geometric_guaranteed(p: &PlanePoint, d: Degree) -> bool {
    BigRational::from_integer(d.big()) * &p.t > BigRational::one()
}

/// The middle (Brill–Noether) slope `Γ₀ = 2dn / (2dn² + 1)`, the unique wall
/// slope shared by both frames.
pub fn brill_noether_gamma(n: RankParam, d: Degree) -> BigRational {
    let two_dn = d.two_d() * n.big();
    BigRational::new(two_dn.clone(), two_dn * n.big() + BigInt::one())
}

/// Slope of the wall spanned by `v` and a hilbert-frame class `a`:
/// `Γ = -2d·a.c / (dn²·a.r + a.s)`.
pub fn gamma_from_vector(a: &MukaiVector, n: RankParam, d: Degree) -> Result<BigRational> {
    let v = hilbert_vector(n, d);
    if is_integer_multiple_of_primitive(a, &v) {
        return Err(Error::DegenerateDefiningVector(a.to_string(), v.to_string()));
    }
    let den = d.big() * n.big() * n.big() * &a.r + &a.s;
    if den.is_zero() {
        return Err(Error::GammaAtInfinity(a.to_string()));
    }
    Ok(BigRational::new(-d.two_d() * &a.c, den))
}

/// Slope of the wall spanned by `v'` and a bm-frame class `a'`:
/// with `m = n·a'.s + a'.c`,  `Γ = 2d·m / (2dn·m + a'.r)`.
pub fn gamma_from_vector_bm(a_bm: &MukaiVector, n: RankParam, d: Degree) -> Result<BigRational> {
    let vp = bm_vector(n);
    if is_integer_multiple_of_primitive(a_bm, &vp) {
        return Err(Error::DegenerateDefiningVector(a_bm.to_string(), vp.to_string()));
    }
    let m = n.big() * &a_bm.s + &a_bm.c;
    let den = d.two_d() * n.big() * &m + &a_bm.r;
    if den.is_zero() {
        return Err(Error::GammaAtInfinity(a_bm.to_string()));
    }
    Ok(BigRational::new(d.two_d() * &m, den))
}

/// A wall semicircle `(x - center_x)² + t = radius_sq` in one slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semicircle {
    pub center_x: BigRational,
    pub radius_sq: BigRational,
}

impl Semicircle {
    pub fn new(center_x: BigRational, radius_sq: BigRational) -> Result<Self> {
        if radius_sq <= BigRational::zero() {
            return Err(Error::InvalidParameter(format!(
                "semicircle needs radius² > 0, got {radius_sq}"
            )));
        }
        Ok(Semicircle { center_x, radius_sq })
    }

    /// `t`-parameter at which the vertical line `x = x0` meets the
    /// semicircle, if it does.
    pub fn crossing_t(&self, x0: &BigRational) -> Result<BigRational> {
        let dx = x0 - &self.center_x;
        let t = &self.radius_sq - &dx * &dx;
        if t <= BigRational::zero() {
            return Err(Error::LineMissesWall(x0.to_string()));
        }
        Ok(t)
    }
}

/// The wall semicircle of slope `gamma` in the requested frame.
///
/// * hilbert: center `-1/Γ`, radius² `1/Γ² - n²`;
/// * bm:      center `-1/(2dn)`, radius² `1/(2dn)² + 1/(2d²n·(1/Γ - n))`.
///
/// Both radii are positive exactly on the open window `Γ ∈ (0, 1/n)`.
pub fn semicircle(
    gamma: &BigRational,
    n: RankParam,
    d: Degree,
    frame: Frame,
) -> Result<Semicircle> {
    let n_rat = BigRational::from_integer(n.big());
    if gamma <= &BigRational::zero() || gamma >= &n_rat.recip() {
        return Err(Error::GammaOutOfWindow(
            crate::rational::rat_str(gamma),
            n.get(),
        ));
    }
    let inv_gamma = gamma.recip();
    match frame {
        Frame::Hilbert => {
            let radius_sq = &inv_gamma * &inv_gamma - &n_rat * &n_rat;
            Semicircle::new(-inv_gamma, radius_sq)
        }
        Frame::Bm => {
            let two_dn = BigRational::from_integer(d.two_d() * n.big());
            let center = -two_dn.recip();
            // 1/(2d²n·(1/Γ - n)) = (Γ / (1 - nΓ)) / (2d²n).
            let two_d2n = BigRational::from_integer(d.two_d() * d.big() * n.big());
            let bulge = (&inv_gamma - &n_rat).recip() / two_d2n;
            let radius_sq = &center * &center + bulge;
            Semicircle::new(center, radius_sq)
        }
    }
}

/// The `x`-coordinate of the path belonging to a frame: `-n` or `0`.
pub fn path_x(frame: Frame, n: RankParam) -> BigRational {
    match frame {
        Frame::Hilbert => -BigRational::from_integer(n.big()),
        Frame::Bm => BigRational::zero(),
    }
}
