//! Wall lattices, Jordan–Hölder ranks, and closed-form rank bounds.
//!
//! The rank of a wall is measured *at its crossing point*: write the total
//! vector as a sum of classes in the wall's saturated rank-2 lattice whose
//! central charges all align there.  Every potential summand `u` satisfies
//! `u² >= -2` and has imaginary part strictly between `0` and that of the
//! total vector; the rank reported is the least positive first component
//! among such candidates (first component in the frame the wall is crossed
//! in: hilbert-side walls decompose `v` on `x = -n`, bm-side walls decompose
//! `v'` on `x = 0`).
//!
//! The candidate search is exhaustive inside a certified coefficient box:
//! any admissible `u = λ·V + μ·k` (with `k` spanning the kernel of the
//! central charge at the crossing) has `λ ∈ [0, 1]` and `|μ|` bounded by an
//! explicit rational, which converts into bounds on the integer coordinates
//! of `u` in the lattice basis.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mukai_lattice::{
    bm_vector, hilbert_vector, is_integer_multiple_of_primitive, pairing, phi, square, Degree,
    MukaiVector, RankParam,
};
use crate::rational::{ceil_u64, sqrt_upper};
use crate::stability_plane::{path_x, Frame, PlanePoint};
use crate::wall_engine::{Side, Wall};

/// An integral basis of a saturated rank-2 sublattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub g1: MukaiVector,
    pub g2: MukaiVector,
}

impl LatticeBasis {
    /// The Gram matrix entries `(g1², (g1,g2), g2²)`.
    pub fn gram(&self, d: Degree) -> (BigInt, BigInt, BigInt) {
        (
            square(&self.g1, d),
            pairing(&self.g1, &self.g2, d),
            square(&self.g2, d),
        )
    }

    /// Integer coordinates of `u` in this basis, if `u` lies in the lattice.
    pub fn coords_of(&self, u: &MukaiVector) -> Option<(BigInt, BigInt)> {
        let cols = [
            (&self.g1.r, &self.g2.r, &u.r),
            (&self.g1.c, &self.g2.c, &u.c),
            (&self.g1.s, &self.g2.s, &u.s),
        ];
        // Find an invertible 2x2 coordinate minor of (g1 g2).
        for i in 0..3 {
            for j in (i + 1)..3 {
                let det = cols[i].0 * cols[j].1 - cols[j].0 * cols[i].1;
                if det.is_zero() {
                    continue;
                }
                let alpha_num = cols[i].2 * cols[j].1 - cols[j].2 * cols[i].1;
                let beta_num = cols[i].0 * cols[j].2 - cols[j].0 * cols[i].2;
                if !(&alpha_num % &det).is_zero() || !(&beta_num % &det).is_zero() {
                    return None;
                }
                let alpha = alpha_num / &det;
                let beta = beta_num / &det;
                if self.element(&alpha, &beta) == *u {
                    return Some((alpha, beta));
                }
                return None;
            }
        }
        None
    }

    pub fn contains(&self, u: &MukaiVector) -> bool {
        self.coords_of(u).is_some()
    }

    pub fn element(&self, alpha: &BigInt, beta: &BigInt) -> MukaiVector {
        MukaiVector::new(
            alpha * &self.g1.r + beta * &self.g2.r,
            alpha * &self.g1.c + beta * &self.g2.c,
            alpha * &self.g1.s + beta * &self.g2.s,
        )
    }
}

/// The saturation of `span(v, a)` inside the lattice, for
/// `v = (1, 0, -dn²)`: the set of integral classes lying on the rational
/// plane through `v` and `a`.  Errors when `a` is a multiple of `v`
/// (`DegenerateDefiningVector`) or when the restricted form fails to be
/// hyperbolic (`NotHyperbolic`) — a genuine wall lattice always is, since it
/// contains `v` with `v² > 0` and has negative discriminant.
pub fn lattice_basis(a: &MukaiVector, n: RankParam, d: Degree) -> Result<LatticeBasis> {
    let v = hilbert_vector(n, d);
    if a.is_zero() || is_integer_multiple_of_primitive(a, &v) {
        return Err(Error::DegenerateDefiningVector(
            a.to_string(),
            v.to_string(),
        ));
    }

    // Normal vector of the plane span(v, a) in the coordinate sense.
    let w = MukaiVector::new(
        &v.c * &a.s - &v.s * &a.c,
        &v.s * &a.r - &v.r * &a.s,
        &v.r * &a.c - &v.c * &a.r,
    );
    let content = w.r.gcd(&w.c).gcd(&w.s);
    debug_assert!(!content.is_zero(), "independent vectors span a plane");
    let w = MukaiVector::new(&w.r / &content, &w.c / &content, &w.s / &content);

    // Integral basis of the kernel of x ↦ w·x (coordinate dot product):
    // exactly the saturation of span(v, a).
    let basis = if w.r.is_zero() && w.c.is_zero() {
        LatticeBasis {
            g1: MukaiVector::from((1, 0, 0)),
            g2: MukaiVector::from((0, 1, 0)),
        }
    } else {
        let egcd = w.r.extended_gcd(&w.c);
        let (mut g, mut p, mut q) = (egcd.gcd, egcd.x, egcd.y);
        if g.is_negative() {
            g = -g;
            p = -p;
            q = -q;
        }
        LatticeBasis {
            g1: MukaiVector::new(-&w.c / &g, &w.r / &g, BigInt::zero()),
            g2: MukaiVector::new(-&p * &w.s, -&q * &w.s, g),
        }
    };

    let (q11, q12, q22) = basis.gram(d);
    if &q11 * &q22 - &q12 * &q12 >= BigInt::zero() {
        return Err(Error::NotHyperbolic(format!(
            "the plane through {v} and {a} restricts to a non-hyperbolic form"
        )));
    }
    debug_assert!(basis.contains(&v), "saturation must contain v");
    debug_assert!(basis.contains(a), "saturation must contain the defining class");
    Ok(basis)
}

/// Rational triple: a class with rational coordinates (used for the kernel
/// direction of the central charge, which is rational but not integral).
#[derive(Debug, Clone)]
struct QVec {
    r: BigRational,
    c: BigRational,
    s: BigRational,
}

impl QVec {
    fn of(u: &MukaiVector) -> QVec {
        QVec {
            r: BigRational::from(u.r.clone()),
            c: BigRational::from(u.c.clone()),
            s: BigRational::from(u.s.clone()),
        }
    }
}

fn pairing_q(u: &QVec, w: &QVec, d: Degree) -> BigRational {
    let two_d = BigRational::from(d.two_d());
    two_d * &u.c * &w.c - &u.r * &w.s - &w.r * &u.s
}

/// Certified coordinate box: any class `u` in `span(g1, g2)` with
/// `u² >= -2` and imaginary coefficient in `[0, im(V)]` at `p` has basis
/// coordinates `(α, β)` with `|α| <= b_alpha`, `|β| <= b_beta`.
fn admissible_box(
    basis: &LatticeBasis,
    total: &MukaiVector,
    p: &PlanePoint,
    d: Degree,
) -> Result<(BigInt, BigInt)> {
    // Kernel direction of the central charge at p: k = (1, x, d(x² + t)).
    let dd = BigRational::from(d.big());
    let k = QVec {
        r: BigRational::one(),
        c: p.x.clone(),
        s: &dd * (&p.x * &p.x + &p.t),
    };
    let vq = QVec::of(total);
    let vk = pairing_q(&vq, &k, d);
    let v_sq = BigRational::from(square(total, d));
    let two_dt = BigRational::from(d.two_d()) * &p.t;

    // u = λV + μk with λ ∈ [0,1]: u² >= -2 bounds |μ| by the larger root of
    // the quadratic 2dt·μ² - 2λ(V,k)·μ - (λ²V² + 2) <= 0, monotone in λ
    // because V² + 2 >= 0.
    let inner = &vk * &vk + &two_dt * (&v_sq + BigRational::from(BigInt::from(2)));
    if inner.is_negative() {
        return Ok((BigInt::zero(), BigInt::zero()));
    }
    let mu_max = (vk.abs() + sqrt_upper(&inner)) / &two_dt;

    // Dual functionals from an invertible coordinate minor of (g1 g2).
    let cols = |u: &QVec| [u.r.clone(), u.c.clone(), u.s.clone()];
    let g1 = cols(&QVec::of(&basis.g1));
    let g2 = cols(&QVec::of(&basis.g2));
    for i in 0..3 {
        for j in (i + 1)..3 {
            let det = &g1[i] * &g2[j] - &g1[j] * &g2[i];
            if det.is_zero() {
                continue;
            }
            let e1 = |u: &[BigRational; 3]| (&u[i] * &g2[j] - &u[j] * &g2[i]) / &det;
            let e2 = |u: &[BigRational; 3]| (&g1[i] * &u[j] - &g1[j] * &u[i]) / &det;
            let kc = cols(&k);
            let vc = cols(&vq);
            let b_alpha = ceil_u64(&(e1(&vc).abs() + &mu_max * e1(&kc).abs()))?;
            let b_beta = ceil_u64(&(e2(&vc).abs() + &mu_max * e2(&kc).abs()))?;
            let cap = BigInt::from(1_000_000u64);
            let (ba, bb) = (BigInt::from(b_alpha), BigInt::from(b_beta));
            if ba > cap || bb > cap {
                return Err(Error::BoundTooLarge(format!(
                    "coefficient box {ba} x {bb} exceeds the search cap"
                )));
            }
            return Ok((ba, bb));
        }
    }
    unreachable!("a basis of independent vectors has an invertible minor")
}

/// Inclusive `α` range with `α·im1 + off ∈ (0, im_total)` (exclusive),
/// clipped to `[-b, b]`; empty ranges come back with `lo > hi`.
fn alpha_range(
    im1: &BigInt,
    off: &BigInt,
    im_total: &BigInt,
    b: &BigInt,
) -> (BigInt, BigInt) {
    let one = BigInt::one();
    if im1.is_zero() {
        return if off > &BigInt::zero() && off < im_total {
            (-b.clone(), b.clone())
        } else {
            (one.clone(), BigInt::zero())
        };
    }
    // α·im1 ∈ (lo, hi) with lo = -off, hi = im_total - off; for negative im1
    // substitute α·(-im1) ∈ (-hi, -lo).
    let (m, lo, hi) = if im1.is_positive() {
        (im1.clone(), -off, im_total - off)
    } else {
        (-im1, off - im_total, off.clone())
    };
    let a_min = lo.div_floor(&m) + &one;
    let a_max = (hi - &one).div_floor(&m);
    (a_min.max(-b.clone()), a_max.min(b.clone()))
}

/// Jordan–Hölder rank of a wall at its own crossing point.
///
/// The middle wall is rank 1 by convention (its generic behavior is the
/// stratified family, not a two-term decomposition).  Hilbert-side walls
/// decompose `v` at `(-n, t_h)`; bm-side walls decompose `v'` at `(0, t_bm)`
/// in the `Φₙ`-transported lattice.  Errors with `RankUndetermined` if the
/// certified box contains no admissible candidate (impossible for genuine
/// walls: the defining class itself qualifies).
pub fn wall_rank(w: &Wall, n: RankParam, d: Degree) -> Result<u32> {
    if w.side == Side::Middle {
        return Ok(1);
    }
    let basis = lattice_basis(w.first_vector(), n, d)?;
    let (basis, total, frame) = match w.side {
        Side::Hilbert => (basis, hilbert_vector(n, d), Frame::Hilbert),
        Side::Bm => {
            let f = phi(n, d);
            (
                LatticeBasis {
                    g1: f.apply(&basis.g1),
                    g2: f.apply(&basis.g2),
                },
                bm_vector(n),
                Frame::Bm,
            )
        }
        Side::Middle => unreachable!(),
    };
    let x = path_x(frame, n);
    let t = match frame {
        Frame::Hilbert => w.crossing_t_hilbert(n),
        Frame::Bm => w.crossing_t_bm(n),
    };
    let p = PlanePoint::new(x.clone(), t)?;
    let (b_alpha, b_beta) = admissible_box(&basis, &total, &p, d)?;

    // Imaginary coefficients are integers on both paths (x ∈ {-n, 0}):
    // im(u)/(2d) = u.c - u.r·x.
    let x_int = x.to_integer();
    let im_of = |u: &MukaiVector| &u.c - &u.r * &x_int;
    let im1 = im_of(&basis.g1);
    let im2 = im_of(&basis.g2);
    let im_total = im_of(&total);
    debug_assert!(im_total.is_positive());

    let (q11, q12, q22) = basis.gram(d);
    let minus_two = BigInt::from(-2);
    let mut best: Option<BigInt> = None;

    let mut beta = -b_beta.clone();
    while beta <= b_beta {
        let off = &im2 * &beta;
        let (a_lo, a_hi) = alpha_range(&im1, &off, &im_total, &b_alpha);
        let mut alpha = a_lo;
        while alpha <= a_hi {
            let sq = &q11 * &alpha * &alpha
                + BigInt::from(2) * &q12 * &alpha * &beta
                + &q22 * &beta * &beta;
            if sq >= minus_two {
                let r = &alpha * &basis.g1.r + &beta * &basis.g2.r;
                if r.is_positive() && best.as_ref().map_or(true, |b| r < *b) {
                    best = Some(r);
                }
            }
            alpha += BigInt::one();
        }
        beta += BigInt::one();
    }

    match best {
        Some(r) => Ok(u32::try_from(&r).expect("wall ranks are tiny")),
        None => {
            let cap = b_alpha.max(b_beta);
            Err(Error::RankUndetermined(u64::try_from(&cap).unwrap_or(u64::MAX)))
        }
    }
}

/// Closed-form upper bound for the first components of Jordan–Hölder factors
/// at the wall of slope `gamma`, as a certified rational (outward-rounded
/// square root).  Every wall of slope `gamma` has rank at most this value;
/// walls strictly farther from `Γ₀` obey the strictly smaller bound at their
/// own slope (the bound shrinks monotonically away from `Γ₀` on each side).
///
/// * `Frame::Hilbert`, any `n`: valid for `0 < gamma <= Γ₀`; bound
///   `(n-1 + sqrt((n-1)² + 2n((n-1)²d+1)/(d(1/γ-n)))) / (2n)`.
/// * `Frame::Bm`, `n = 2` only: valid for `Γ₀ <= gamma < 1/2`; bound
///   `-dq + sqrt(d²q² + 4d(d+1)q)` with `q = 1/γ - 2`.
pub fn rank_bound(
    gamma: &BigRational,
    n: RankParam,
    d: Degree,
    frame: Frame,
) -> Result<BigRational> {
    let gamma0 = crate::stability_plane::brill_noether_gamma(n, d);
    if gamma <= &BigRational::zero() {
        return Err(Error::InvalidParameter(format!(
            "rank bound needs a positive slope, got {gamma}"
        )));
    }
    let nn = BigRational::from(n.big());
    let dd = BigRational::from(d.big());
    match frame {
        Frame::Hilbert => {
            if gamma > &gamma0 {
                return Err(Error::InvalidParameter(format!(
                    "hilbert-side rank bound is valid for slopes <= {gamma0}, got {gamma}"
                )));
            }
            let q = gamma.recip() - &nn; // > 0 since gamma <= Γ₀ < 1/n
            let nm1 = &nn - BigRational::one();
            let inner = &nm1 * &nm1
                + BigRational::from(BigInt::from(2)) * &nn * (&nm1 * &nm1 * &dd + BigRational::one())
                    / (&dd * &q);
            Ok((nm1 + sqrt_upper(&inner)) / (BigRational::from(BigInt::from(2)) * &nn))
        }
        Frame::Bm => {
            if n.get() != 2 {
                return Err(Error::InvalidParameter(format!(
                    "bm-side rank bound is only derived for n = 2, got n = {}",
                    n.get()
                )));
            }
            if gamma < &gamma0 || gamma >= &nn.recip() {
                return Err(Error::InvalidParameter(format!(
                    "bm-side rank bound is valid for slopes in [{gamma0}, 1/2), got {gamma}"
                )));
            }
            let q = gamma.recip() - BigRational::from(BigInt::from(2));
            let inner = &dd * &dd * &q * &q
                + BigRational::from(BigInt::from(4))
                    * &dd
                    * (&dd + BigRational::one())
                    * &q;
            Ok(-(&dd * &q) + sqrt_upper(&inner))
        }
    }
}
