//! Upper-half-plane wall diagram: one semicircular arc per wall in the
//! chosen frame, the two vertical path lines (`x = -n` and `x = 0`), and the
//! real axis.  Arcs are colored by wall rank, the middle wall is highlighted.
//! All geometry is computed in exact rationals and serialized as decimals
//! with twelve significant digits; svg is the CLI's only lossy surface.

use num::{BigRational, Zero};

use k3walls::mukai_lattice::{Degree, RankParam};
use k3walls::rational::rat;
use k3walls::stability_plane::Frame;
use k3walls::wall_engine::{Side, Wall};

use crate::fmt::{fmt_sig, sqrt_sig, sqrt_upper_approx, SIG_DIGITS};

const COLOR_RANK_1: &str = "#2c7fb8";
const COLOR_RANK_2: &str = "#d95f02";
const COLOR_RANK_3PLUS: &str = "#7570b3";
const COLOR_UNKNOWN_RANK: &str = "#888888";
const COLOR_MIDDLE: &str = "#e7298a";
const COLOR_AXIS: &str = "#555555";
const COLOR_PATH: &str = "#333333";

fn circle(w: &Wall, frame: Frame) -> &k3walls::stability_plane::Semicircle {
    match frame {
        Frame::Hilbert => &w.semicircle_h,
        Frame::Bm => &w.semicircle_bm,
    }
}

pub fn render(walls: &[Wall], n: RankParam, d: Degree, frame: Frame) -> String {
    let dec = |x: &BigRational| fmt_sig(x, SIG_DIGITS);

    // Canvas: x in [-2n-1, 1]; y up to the tallest arc plus a margin.
    let ni = n.get() as i64;
    let min_x = rat(-2 * ni - 1, 1);
    let width = rat(2 * ni + 2, 1);
    let max_radius = walls
        .iter()
        .map(|w| sqrt_upper_approx(&circle(w, frame).radius_sq, 20))
        .max()
        .unwrap_or_else(BigRational::zero);
    let height = &max_radius + (&max_radius + rat(1, 1)) / rat(10, 1);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} -{} {} {}\">\n",
        dec(&min_x),
        dec(&height),
        dec(&width),
        dec(&height)
    ));
    out.push_str(&format!(
        "  <desc>wall semicircles, n={} d={}, {} frame</desc>\n",
        n.get(),
        d.get(),
        frame.label()
    ));
    out.push_str(&format!(
        "  <line class=\"axis\" x1=\"{}\" y1=\"0\" x2=\"1\" y2=\"0\" \
         stroke=\"{COLOR_AXIS}\" stroke-width=\"0.015\"/>\n",
        dec(&min_x)
    ));
    for path_x in [-ni, 0] {
        out.push_str(&format!(
            "  <line class=\"path\" x1=\"{x}\" y1=\"-{h}\" x2=\"{x}\" y2=\"0\" \
             stroke=\"{COLOR_PATH}\" stroke-width=\"0.015\" stroke-dasharray=\"0.08 0.05\"/>\n",
            x = path_x,
            h = dec(&height)
        ));
    }
    for w in walls {
        let sc = circle(w, frame);
        let r_attr = sqrt_sig(&sc.radius_sq, SIG_DIGITS);
        let r_approx = sqrt_upper_approx(&sc.radius_sq, 20);
        let x1 = dec(&(&sc.center_x - &r_approx));
        let x2 = dec(&(&sc.center_x + &r_approx));
        let (color, stroke) = match (w.side, w.rank) {
            (Side::Middle, _) => (COLOR_MIDDLE, "0.04"),
            (_, Some(1)) => (COLOR_RANK_1, "0.025"),
            (_, Some(2)) => (COLOR_RANK_2, "0.025"),
            (_, Some(_)) => (COLOR_RANK_3PLUS, "0.025"),
            (_, None) => (COLOR_UNKNOWN_RANK, "0.025"),
        };
        out.push_str(&format!(
            "  <path class=\"wall\" d=\"M {x1} 0 A {r_attr} {r_attr} 0 0 1 {x2} 0\" \
             fill=\"none\" stroke=\"{color}\" stroke-width=\"{stroke}\"/>\n",
        ));
    }
    out.push_str("</svg>\n");
    out
}
