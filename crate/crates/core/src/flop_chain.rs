//! The chain of birational models and the flops connecting them.
//!
//! Each chamber of the movable cone is a birational model; crossing a wall is
//! a flop.  For `n = 2` the chain is walked from both ends toward the middle
//! wall: the hilbert path starts at the Hilbert scheme `S^[4d+1]` and crosses
//! its walls by descending crossing parameter (`f_{d+1}, …, f_1, h`), the bm
//! path starts at the Beauville–Mukai system `M(0,2,-1)` and does the same
//! (`g_d, …, g_1, j`), and the final middle step `g_0` is the stratified
//! Mukai flop along the Brill–Noether wall.  The two walks meet in one
//! chamber — the model just below the middle wall — which therefore carries a
//! second name `cX_0`; that identification (induced by the isometry `Φₙ`) is
//! the *splice* of the chain.
//!
//! Extra walls beyond the named families (they first appear at `d = 7`) get
//! slope-based labels `w[p/q]` / `w'[p/q]` and chambers `X[p/q]` / `cX[p/q]`.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mukai_lattice::{
    bm_vector, hilbert_vector, moduli_dim, pairing, square, Degree, MukaiVector, RankParam,
};
use crate::rational::rat_str;
use crate::stability_plane::Frame;
use crate::wall_engine::{all_walls, Side, Wall};

/// A birational model: one chamber of the movable cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub name: String,
    /// Which walk visits the chamber (the two end models included).
    pub side: Side,
    /// True for the one chamber visited by both walks.
    pub spliced: bool,
}

/// One irreducible piece of the locus contracted by a flop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseComponent {
    pub class: MukaiVector,
    pub dim: u64,
    /// A spherical class contributes a single point (dimension 0).
    pub spherical_point: bool,
}

/// Numerical shape of the exceptional locus of a two-term flop: a projective
/// bundle of fiber dimension `(a,b) - 1` over the product of the two moduli
/// bases.  Its codimension always equals the fiber dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcLocus {
    pub fiber_dim: u64,
    pub base_components: Vec<BaseComponent>,
    pub total_dim: u64,
    pub codim: u64,
}

impl ExcLocus {
    /// How many base components are isolated (spherical) points.
    pub fn spherical_count(&self) -> usize {
        self.base_components
            .iter()
            .filter(|b| b.spherical_point)
            .count()
    }
}

/// One stratum of the stratified Mukai flop at the middle wall:
/// `total = m · spherical + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTerm {
    pub m: u32,
    pub remainder: MukaiVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    /// Ordinary flop: the total vector splits as `a + b` at the crossing.
    Flop {
        a: MukaiVector,
        b: MukaiVector,
        frame: Frame,
        exc: ExcLocus,
    },
    /// The middle wall: a stratified Mukai flop, one stratum per multiple of
    /// the spherical class (bm frame).
    StratifiedMukaiFlop {
        spherical: MukaiVector,
        family: Vec<FamilyTerm>,
    },
}

/// One wall crossing of the chain walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlopStep {
    pub label: String,
    pub wall: Wall,
    pub path_x: BigRational,
    pub crossing_t: BigRational,
    pub kind: StepKind,
}

/// The chamber that wears two names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceInfo {
    pub model: String,
    pub alias: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub n: u32,
    pub d: u32,
    /// Models by ascending slope of their chamber.
    pub models: Vec<Model>,
    /// Steps in travel order: the hilbert walk, then the bm walk, then the
    /// middle step.
    pub steps: Vec<FlopStep>,
    pub n_models: usize,
    pub splice: Option<SpliceInfo>,
}

/// Crossing point(s) of a wall on the path(s) that meet it inside the
/// geometric region: one for a side wall, both lines for the middle wall
/// (which they cross at the same parameter `t = 1/d`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCrossing {
    pub frame: Frame,
    pub x: BigRational,
    pub t: BigRational,
}

pub fn crossing_parameter(wall: &Wall, n: RankParam, _d: Degree) -> Vec<PathCrossing> {
    let hilbert = PathCrossing {
        frame: Frame::Hilbert,
        x: crate::stability_plane::path_x(Frame::Hilbert, n),
        t: wall.crossing_t_hilbert(n),
    };
    let bm = PathCrossing {
        frame: Frame::Bm,
        x: crate::stability_plane::path_x(Frame::Bm, n),
        t: wall.crossing_t_bm(n),
    };
    match wall.side {
        Side::Hilbert => vec![hilbert],
        Side::Bm => vec![bm],
        Side::Middle => vec![hilbert, bm],
    }
}

/// The canonical two-term splitting `total = a + b` at a side wall's
/// crossing, in the wall's own frame: `a` is the first (lexicographically
/// least) own-frame defining class giving two primitive, numerically
/// admissible summands with positive imaginary part there.  When a defining
/// class leaves a non-primitive complement, its primitive part — which lies
/// in the wall's saturated lattice — is used to re-split the total instead.
/// The middle wall has no two-term splitting (`MiddleWallDecomposition`).
pub fn decomposition_at_crossing(
    wall: &Wall,
    n: RankParam,
    d: Degree,
) -> Result<(MukaiVector, MukaiVector)> {
    let (total, mut candidates) = match wall.side {
        Side::Middle => return Err(Error::MiddleWallDecomposition),
        Side::Hilbert => (hilbert_vector(n, d), wall.defining_vectors.clone()),
        Side::Bm => (bm_vector(n), wall.bm_vectors(n, d)),
    };
    candidates.sort();
    // Imaginary coefficient up to the positive factor 2d·sqrt(t): on the
    // hilbert path (x = -n) it is c + n·r, on the bm path (x = 0) it is c.
    let im_of = |u: &MukaiVector| match wall.side {
        Side::Hilbert => &u.c + n.big() * &u.r,
        _ => u.c.clone(),
    };
    let im_total = im_of(&total);
    let minus_two = BigInt::from(-2);
    let admissible_split = |a: &MukaiVector| -> Option<(MukaiVector, MukaiVector)> {
        let im = im_of(a);
        if !(im.is_positive() && im < im_total) {
            return None;
        }
        let b = &total - a;
        let ok = crate::mukai_lattice::is_primitive(a)
            && crate::mukai_lattice::is_primitive(&b)
            && square(a, d) >= minus_two
            && square(&b, d) >= minus_two;
        ok.then(|| (a.clone(), b))
    };
    // First pass: the defining classes themselves.
    for u in &candidates {
        let a = if im_of(u).is_positive() { u.clone() } else { -u };
        if let Some(split) = admissible_split(&a) {
            return Ok(split);
        }
    }
    // Second pass: re-split against the primitive part of a non-primitive
    // complement (still a class of the wall's saturated lattice).
    for u in &candidates {
        let a = if im_of(u).is_positive() { u.clone() } else { -u };
        let b = &total - &a;
        if b.is_zero() {
            continue;
        }
        let b0 = crate::mukai_lattice::primitive_part(&b).expect("nonzero complement");
        if let Some((b1, a1)) = admissible_split(&b0) {
            return Ok((a1, b1));
        }
    }
    Err(Error::NotACrossing(format!(
        "no defining class of the wall at Γ = {} splits the total vector into \
         primitive admissible summands",
        rat_str(&wall.gamma)
    )))
}

/// Dimension data of the exceptional locus of the flop `total = a + b`:
/// fiber dimension `(a,b) - 1`, base components of dimensions `a² + 2` and
/// `b² + 2`.  Errors with `NotProjectiveBundle` when `(a,b) <= 1` (no
/// positive-dimensional fiber — not a flop of this shape).
pub fn exceptional_locus(a: &MukaiVector, b: &MukaiVector, d: Degree) -> Result<ExcLocus> {
    let pab = pairing(a, b, d);
    if pab <= BigInt::one() {
        return Err(Error::NotProjectiveBundle(format!(
            "pairing (a,b) = {pab} gives no projective fiber for a = {a}, b = {b}"
        )));
    }
    let fiber_dim = u64::try_from(&(pab - BigInt::one())).expect("small fiber dims");
    let mut base_components = Vec::with_capacity(2);
    let mut base_total = 0u64;
    for class in [a, b] {
        let dim_big = moduli_dim(class, d)?;
        let dim = u64::try_from(&dim_big).expect("small base dims");
        base_total += dim;
        base_components.push(BaseComponent {
            class: class.clone(),
            dim,
            spherical_point: dim == 0,
        });
    }
    let total_dim = fiber_dim + base_total;
    let total_vec = a + b;
    let ambient = u64::try_from(&(square(&total_vec, d) + BigInt::from(2)))
        .expect("small ambient dim");
    let codim = ambient - total_dim;
    Ok(ExcLocus {
        fiber_dim,
        base_components,
        total_dim,
        codim,
    })
}

/// The strata of the middle wall's flop: `total' = m·(1,0,1) + remainder`
/// in the bm frame, for every `m >= 1` with `m(m+1) <= dn² + 1` (the
/// remainder `(-m, n, -(m+1))` stays numerically admissible).
pub fn brill_noether_family(n: RankParam, d: Degree) -> (MukaiVector, Vec<FamilyTerm>) {
    let spherical = MukaiVector::from((1, 0, 1));
    let cap = (d.get() as i64) * (n.get() as i64) * (n.get() as i64) + 1;
    let mut family = Vec::new();
    let mut m = 1i64;
    while m * (m + 1) <= cap {
        family.push(FamilyTerm {
            m: m as u32,
            remainder: MukaiVector::from((-m, n.get() as i64, -(m + 1))),
        });
        m += 1;
    }
    (spherical, family)
}

fn middle_step(wall: &Wall, n: RankParam, d: Degree) -> FlopStep {
    let (spherical, family) = brill_noether_family(n, d);
    FlopStep {
        label: "g_0".into(),
        wall: wall.clone(),
        path_x: BigRational::zero(),
        crossing_t: wall.crossing_t_bm(n),
        kind: StepKind::StratifiedMukaiFlop { spherical, family },
    }
}

/// Label of a hilbert-side wall and the chamber directly above it.
fn hilbert_wall_names(w: &Wall, d: Degree) -> (String, String) {
    let dd = d.get() as i64;
    for u in &w.defining_vectors {
        if u.r == BigInt::one() && u.c == BigInt::from(-1) {
            if let Ok(k) = i64::try_from(&u.s) {
                if (1..=dd + 1).contains(&k) {
                    return (format!("f_{k}"), format!("X_{k}"));
                }
            }
        }
    }
    for u in &w.defining_vectors {
        if u.r == BigInt::from(2) && u.c == BigInt::from(-3) && u.s == BigInt::from(4 * dd + 2) {
            return ("h".into(), "X_flat".into());
        }
    }
    let g = rat_str(&w.gamma);
    (format!("w[{g}]"), format!("X[{g}]"))
}

/// Label of a bm-side wall and the chamber directly below it.
fn bm_wall_names(w: &Wall, n: RankParam, d: Degree) -> (String, String) {
    let dd = d.get() as i64;
    let bm = w.bm_vectors(n, d);
    for u in &bm {
        if u.r == BigInt::one() && u.c == BigInt::one() {
            if let Ok(k) = i64::try_from(&u.s) {
                if (1..=dd).contains(&k) {
                    return (format!("g_{k}"), format!("cX_{k}"));
                }
            }
        }
    }
    for u in &bm {
        if u.r == BigInt::from(2) && u.c == BigInt::one() && u.s == BigInt::from(2) {
            return ("j".into(), "cX_flat".into());
        }
    }
    let g = rat_str(&w.gamma);
    (format!("w'[{g}]"), format!("cX[{g}]"))
}

fn flop_step(w: &Wall, n: RankParam, d: Degree, label: String) -> Result<FlopStep> {
    let (a, b) = decomposition_at_crossing(w, n, d)?;
    let exc = exceptional_locus(&a, &b, d)?;
    let (frame, path_x, crossing_t) = match w.side {
        Side::Hilbert => (
            Frame::Hilbert,
            crate::stability_plane::path_x(Frame::Hilbert, n),
            w.crossing_t_hilbert(n),
        ),
        _ => (
            Frame::Bm,
            BigRational::zero(),
            w.crossing_t_bm(n),
        ),
    };
    Ok(FlopStep {
        label,
        wall: w.clone(),
        path_x,
        crossing_t,
        kind: StepKind::Flop { a, b, frame, exc },
    })
}

/// The full chain for the `n = 2` system at degree `d`.
pub fn build_chain(d: Degree) -> Result<ChainReport> {
    let n = RankParam::new(2).unwrap();
    let ws = all_walls(n, d)?;
    let hilbert: Vec<&Wall> = ws.walls.iter().filter(|w| w.side == Side::Hilbert).collect();
    let bm: Vec<&Wall> = ws.walls.iter().filter(|w| w.side == Side::Bm).collect();
    let middle = ws
        .walls
        .iter()
        .find(|w| w.side == Side::Middle)
        .expect("the middle wall exists for every degree");

    let mut models = Vec::new();
    models.push(Model {
        name: format!("S^[{}]", 4 * d.get() + 1),
        side: Side::Hilbert,
        spliced: false,
    });
    for w in &hilbert {
        let (_, chamber) = hilbert_wall_names(w, d);
        models.push(Model {
            name: chamber,
            side: Side::Hilbert,
            spliced: false,
        });
    }
    let spliced_index = models.len() - 1;
    models[spliced_index].spliced = true;
    for w in &bm {
        let (_, chamber) = bm_wall_names(w, n, d);
        models.push(Model {
            name: chamber,
            side: Side::Bm,
            spliced: false,
        });
    }
    models.push(Model {
        name: "M(0,2,-1)".into(),
        side: Side::Bm,
        spliced: false,
    });

    let mut steps = Vec::new();
    for w in &hilbert {
        let (label, _) = hilbert_wall_names(w, d);
        steps.push(flop_step(w, n, d, label)?);
    }
    for w in bm.iter().rev() {
        let (label, _) = bm_wall_names(w, n, d);
        steps.push(flop_step(w, n, d, label)?);
    }
    steps.push(middle_step(middle, n, d));

    let splice = SpliceInfo {
        model: models[spliced_index].name.clone(),
        alias: "cX_0".into(),
    };
    let n_models = models.len();
    debug_assert_eq!(n_models, ws.walls.len() + 1);
    Ok(ChainReport {
        n: 2,
        d: d.get(),
        models,
        steps,
        n_models,
        splice: Some(splice),
    })
}

/// A chain with generic chamber names for any `n`: one ascending walk from
/// the Hilbert scheme to the Beauville–Mukai system, steps labeled by slope.
/// For `n >= 3` the underlying wall set is the rank-one catalog and is not
/// certified complete, so the report inherits that caveat; no splice is
/// named.
pub fn generic_chain(n: RankParam, d: Degree) -> Result<ChainReport> {
    let ws = all_walls(n, d)?;
    let g0 = crate::stability_plane::brill_noether_gamma(n, d);
    let cone = movable_cone_rays(&ws.walls, n, d);
    let models = cone
        .chambers
        .iter()
        .map(|ch| Model {
            name: ch.label.clone(),
            side: if ch.gamma_hi <= g0 {
                Side::Hilbert
            } else {
                Side::Bm
            },
            spliced: false,
        })
        .collect();
    let mut steps = Vec::new();
    for w in &ws.walls {
        if w.side == Side::Middle {
            steps.push(middle_step(w, n, d));
        } else {
            let g = rat_str(&w.gamma);
            let label = match w.side {
                Side::Hilbert => format!("w[{g}]"),
                _ => format!("w'[{g}]"),
            };
            steps.push(flop_step(w, n, d, label)?);
        }
    }
    Ok(ChainReport {
        n: n.get(),
        d: d.get(),
        models,
        steps,
        n_models: ws.walls.len() + 1,
        splice: None,
    })
}

/// The (two-model) chain for `n = 1`: one stratified step across the single
/// wall.
pub fn n1_report(d: Degree) -> Result<ChainReport> {
    let n = RankParam::new(1).unwrap();
    let ws = all_walls(n, d)?;
    debug_assert_eq!(ws.walls.len(), 1);
    let models = vec![
        Model {
            name: format!("S^[{}]", d.get() + 1),
            side: Side::Hilbert,
            spliced: false,
        },
        Model {
            name: "M(0,1,-1)".into(),
            side: Side::Bm,
            spliced: false,
        },
    ];
    let steps = vec![middle_step(&ws.walls[0], n, d)];
    Ok(ChainReport {
        n: 1,
        d: d.get(),
        models,
        steps,
        n_models: 2,
        splice: None,
    })
}

/// A boundary ray of the movable cone, tagged by the contraction it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRay {
    pub gamma: BigRational,
    pub label: String,
}

/// One chamber as a slope interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberInterval {
    pub gamma_lo: BigRational,
    pub gamma_hi: BigRational,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    pub rays: Vec<ConeRay>,
    pub chambers: Vec<ChamberInterval>,
}

/// The movable cone as a slope interval `(0, 1/n)`: the boundary rays carry
/// the two Lagrangian-type contractions, the walls cut it into chambers.
/// Chamber labels here are generic (the chain report names them for
/// `n <= 2`); `walls` must be sorted by ascending slope.
pub fn movable_cone_rays(walls: &[Wall], n: RankParam, d: Degree) -> ConeDescription {
    let rays = vec![
        ConeRay {
            gamma: BigRational::zero(),
            label: "hilbert-chow".into(),
        },
        ConeRay {
            gamma: BigRational::from(n.big()).recip(),
            label: "lagrangian-fibration".into(),
        },
    ];
    let mut bounds = Vec::with_capacity(walls.len() + 2);
    bounds.push(BigRational::zero());
    for w in walls {
        bounds.push(w.gamma.clone());
    }
    bounds.push(BigRational::from(n.big()).recip());
    let last = bounds.len() - 2;
    let chambers = bounds
        .windows(2)
        .enumerate()
        .map(|(i, pair)| {
            let label = if i == 0 {
                format!("S^[{}]", d.get() * n.get() * n.get() + 1)
            } else if i == last {
                format!("M(0,{},-1)", n.get())
            } else {
                format!("chamber {}", i + 1)
            };
            ChamberInterval {
                gamma_lo: pair[0].clone(),
                gamma_hi: pair[1].clone(),
                label,
            }
        })
        .collect();
    ConeDescription { rays, chambers }
}
