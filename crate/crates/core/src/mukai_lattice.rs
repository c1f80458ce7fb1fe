//! The algebraic Mukai lattice of a degree-`2d` K3 surface of Picard rank 1.
//!
//! A class is a triple `(r, c, s)` in the basis `(1, H, pt)` of
//! `Z ⊕ Z·H ⊕ Z·pt`: `r` the rank, `c` the coefficient of the ample generator
//! `H` (with `H² = 2d`), `s` the point-class coefficient.  The Mukai pairing
//! in this basis is
//!
//! ```text
//! ((r, c, s), (r', c', s')) = 2d·c·c' - r·s' - r'·s ,
//! ```
//!
//! an even lattice of signature `(2, 1)`.  Classes of square `-2` are
//! *spherical*, classes of square `0` *isotropic*.  The two distinguished
//! vectors of this crate are `v = (1, 0, -dn²)` (ideal sheaves of
//! `dn² + 1` points) and `v' = (0, n, -1)` (pure 1-dimensional sheaves of
//! curve class `nH` and Euler characteristic `-1`), exchanged by the integer
//! isometry `Φₙ` below.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Half the degree of the polarization: `H² = 2d`, `d >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(u32);

impl Degree {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("degree parameter d must be >= 1".into()));
        }
        Ok(Degree(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `d` as a `BigInt`.
    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `2d` as a `BigInt` (the pairing coefficient).
    pub fn two_d(self) -> BigInt {
        BigInt::from(2u32 * self.0)
    }
}

/// The curve-class multiplicity `n >= 1` of the Beauville–Mukai system
/// `M(0, n, -1)`; equivalently `S^[dn²+1]` on the Hilbert-scheme side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankParam(u32);

impl RankParam {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("curve multiplicity n must be >= 1".into()));
        }
        Ok(RankParam(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }
}

/// A class `(r, c, s)` in the algebraic Mukai lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MukaiVector {
    pub r: BigInt,
    pub c: BigInt,
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: BigInt, c: BigInt, s: BigInt) -> Self {
        MukaiVector { r, c, s }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.c.is_zero() && self.s.is_zero()
    }

    /// Scalar multiple `k·u`.
    pub fn scaled(&self, k: &BigInt) -> Self {
        MukaiVector::new(&self.r * k, &self.c * k, &self.s * k)
    }
}

impl From<(i64, i64, i64)> for MukaiVector {
    fn from((r, c, s): (i64, i64, i64)) -> Self {
        MukaiVector::new(BigInt::from(r), BigInt::from(c), BigInt::from(s))
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.c, self.s)
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector::new(&self.r + &rhs.r, &self.c + &rhs.c, &self.s + &rhs.s)
    }
}

impl Sub for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector::new(&self.r - &rhs.r, &self.c - &rhs.c, &self.s - &rhs.s)
    }
}

impl Neg for &MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector::new(-&self.r, -&self.c, -&self.s)
    }
}

/// The ideal-sheaf vector `v = (1, 0, -dn²)` of `S^[dn²+1]`.
pub fn hilbert_vector(n: RankParam, d: Degree) -> MukaiVector {
    let dn2 = d.big() * n.big() * n.big();
    MukaiVector::new(BigInt::one(), BigInt::zero(), -dn2)
}

/// The Beauville–Mukai vector `v' = (0, n, -1)`.
pub fn bm_vector(n: RankParam) -> MukaiVector {
    MukaiVector::new(BigInt::zero(), n.big(), -BigInt::one())
}

/// Mukai pairing `(u, w) = 2d·u.c·w.c - u.r·w.s - w.r·u.s`.
pub fn pairing(u: &MukaiVector, w: &MukaiVector, d: Degree) -> BigInt {
    d.two_d() * &u.c * &w.c - &u.r * &w.s - &w.r * &u.s
}

/// Self-pairing `u² = 2d·c² - 2·r·s`.
pub fn square(u: &MukaiVector, d: Degree) -> BigInt {
    pairing(u, u, d)
}

/// `u² = -2`: the class of a rigid (spherical) object.
pub fn is_spherical(u: &MukaiVector, d: Degree) -> bool {
    square(u, d) == BigInt::from(-2)
}

/// `u² = 0`.
pub fn is_isotropic(u: &MukaiVector, d: Degree) -> bool {
    square(u, d).is_zero()
}

/// gcd of the three coordinates (zero for the zero vector).
fn content(u: &MukaiVector) -> BigInt {
    u.r.gcd(&u.c).gcd(&u.s)
}

/// Whether the coordinates are coprime.
pub fn is_primitive(u: &MukaiVector) -> bool {
    content(u).is_one()
}

/// `u / gcd(coordinates)`; the zero vector has no primitive part.
pub fn primitive_part(u: &MukaiVector) -> Result<MukaiVector> {
    if u.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = content(u);
    Ok(MukaiVector::new(&u.r / &g, &u.c / &g, &u.s / &g))
}

/// Expected dimension `u² + 2` of the moduli space of stable objects of
/// primitive class `u`; defined only for `u² >= -2`.
pub fn moduli_dim(u: &MukaiVector, d: Degree) -> Result<BigInt> {
    if u.is_zero() {
        return Err(Error::ModuliDimUndefined(u.to_string(), "zero vector".into()));
    }
    if !is_primitive(u) {
        return Err(Error::ModuliDimUndefined(u.to_string(), "non-primitive class".into()));
    }
    let sq = square(u, d);
    if sq < BigInt::from(-2) {
        return Err(Error::ModuliDimUndefined(
            u.to_string(),
            format!("square {sq} < -2 has empty moduli"),
        ));
    }
    Ok(sq + BigInt::from(2))
}

/// An integer matrix acting on the Mukai lattice, certified on construction
/// to have determinant `±1` and to preserve the degree-`2d` pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryMatrix {
    /// Row-major entries: the image of `u` has coordinates `rows[i] · u`.
    rows: [[BigInt; 3]; 3],
}

impl IsometryMatrix {
    pub fn new(rows: [[BigInt; 3]; 3], d: Degree) -> Result<Self> {
        let m = IsometryMatrix { rows };
        let det = m.det();
        if !(det.clone().abs()).is_one() {
            return Err(Error::NotAnIsometry(d.get(), format!("determinant {det}")));
        }
        let basis = [
            MukaiVector::from((1, 0, 0)),
            MukaiVector::from((0, 1, 0)),
            MukaiVector::from((0, 0, 1)),
        ];
        for (i, ei) in basis.iter().enumerate() {
            for (j, ej) in basis.iter().enumerate().skip(i) {
                let before = pairing(ei, ej, d);
                let after = pairing(&m.apply(ei), &m.apply(ej), d);
                if before != after {
                    return Err(Error::NotAnIsometry(
                        d.get(),
                        format!("pairing of basis vectors {i},{j} changes from {before} to {after}"),
                    ));
                }
            }
        }
        Ok(m)
    }

    pub fn det(&self) -> BigInt {
        let m = &self.rows;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn apply(&self, u: &MukaiVector) -> MukaiVector {
        let row = |i: usize| -> BigInt {
            &self.rows[i][0] * &u.r + &self.rows[i][1] * &u.c + &self.rows[i][2] * &u.s
        };
        MukaiVector::new(row(0), row(1), row(2))
    }
}

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

/// The derived-equivalence isometry `Φₙ` with `Φₙ(v) = v'`:
///
/// ```text
///        ( -dn²  -2dn  -1 )
/// Φₙ  =  (   n     1    0 )
///        (  -1     0    0 )
/// ```
pub fn phi(n: RankParam, d: Degree) -> IsometryMatrix {
    let dn = d.big() * n.big();
    let dn2 = &dn * n.big();
    let rows = [
        [-&dn2, bi(-2) * &dn, bi(-1)],
        [n.big(), bi(1), bi(0)],
        [bi(-1), bi(0), bi(0)],
    ];
    IsometryMatrix::new(rows, d).expect("phi is an isometry by construction")
}

/// Inverse of [`phi`]:
///
/// ```text
///         (  0    0    -1  )
/// Φₙ⁻¹ =  (  0    1     n  )
///         ( -1  -2dn  -dn² )
/// ```
pub fn phi_inverse(n: RankParam, d: Degree) -> IsometryMatrix {
    let dn = d.big() * n.big();
    let dn2 = &dn * n.big();
    let rows = [
        [bi(0), bi(0), bi(-1)],
        [bi(0), bi(1), n.big()],
        [bi(-1), bi(-2) * &dn, -&dn2],
    ];
    IsometryMatrix::new(rows, d).expect("phi_inverse is an isometry by construction")
}

/// The pairing-preserving involution `(r, c, s) ↦ (-r, c, -s)` (the shifted
/// derived dual `u ↦ -u^∨`).
pub fn dual(u: &MukaiVector) -> MukaiVector {
    MukaiVector::new(-&u.r, u.c.clone(), -&u.s)
}

/// Tensoring by the line bundle `O(kH)`:
/// `(r, c, s) ↦ (r, c + kr, s + 2dk·c + dk²·r)`.
pub fn twist(u: &MukaiVector, k: &BigInt, d: Degree) -> MukaiVector {
    let dk = d.big() * k;
    MukaiVector::new(
        u.r.clone(),
        &u.c + k * &u.r,
        &u.s + BigInt::from(2) * &dk * &u.c + &dk * k * &u.r,
    )
}

/// Is `u` an integer multiple (possibly zero or negative) of `w`, where `w`
/// must be primitive?  Used to detect defining vectors proportional to the
/// total vector, which span no wall.
pub fn is_integer_multiple_of_primitive(u: &MukaiVector, w: &MukaiVector) -> bool {
    debug_assert!(is_primitive(w));
    // Parallel over Q  <=>  all 2x2 minors of the pair vanish; a vector
    // parallel to a primitive integer vector is an integer multiple of it.
    let m1 = &u.r * &w.c - &u.c * &w.r;
    let m2 = &u.r * &w.s - &u.s * &w.r;
    let m3 = &u.c * &w.s - &u.s * &w.c;
    m1.is_zero() && m2.is_zero() && m3.is_zero()
}

/// Convenience: the rational `p/q` with both parts `BigInt`.
pub fn big_rat(p: BigInt, q: BigInt) -> BigRational {
    BigRational::new(p, q)
}
