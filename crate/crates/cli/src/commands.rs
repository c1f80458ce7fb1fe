//! Subcommand parsing, validation, dispatch, and rendering.
//!
//! Every command computes with the core library's exact types and renders at
//! the very end through one of the format backends (`table`, `dto`+json,
//! `svg`, `dot`).  Identical invocations produce byte-identical output: all
//! orderings are inherited from the core's sorted structures and all number
//! formatting is exact.

use std::collections::BTreeSet;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigRational, Zero};

use k3walls::flop_chain::{
    build_chain, decomposition_at_crossing, exceptional_locus, generic_chain, n1_report,
    ChainReport, ExcLocus, StepKind,
};
use k3walls::mukai_lattice::{
    bm_vector, hilbert_vector, is_primitive, primitive_part, Degree, MukaiVector, RankParam,
};
use k3walls::rational::{parse_rat, rat, rat_str};
use k3walls::stability_plane::{gamma_from_vector, gamma_from_vector_bm, Frame, Semicircle};
use k3walls::wall_engine::{
    all_walls, flopping_check, flopping_check_bm, is_totally_semistable, oracle_walls, Wall,
    SearchBound, Side, TssOutcome,
};

use crate::fmt::fmt_rat_human;
use crate::{dot, dto, svg, table};

#[derive(Parser)]
#[command(
    name = "k3walls",
    version,
    about = "Walls, chambers, and flop chains of the movable cone for moduli of sheaves \
             on degree-2d K3 surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the walls of the movable cone, with slopes, defining classes,
    /// ranks, and crossing data.
    Walls(WallsArgs),
    /// Walk the chain of birational models wall by wall.
    Chain(ChainArgs),
    /// Re-run the frozen consistency checks and report per-check status.
    Verify(VerifyArgs),
    /// Draw the wall semicircles in the upper half plane.
    Plot(PlotArgs),
    /// Classify one Mukai class: slope, side, rank, flopping criterion,
    /// crossing parameters, exceptional locus.
    Classify(ClassifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FrameArg {
    Hilbert,
    Bm,
}

impl FrameArg {
    fn get(self) -> Frame {
        match self {
            FrameArg::Hilbert => Frame::Hilbert,
            FrameArg::Bm => Frame::Bm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TextFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ChainFormat {
    Table,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PlotFormat {
    Svg,
}

#[derive(Args)]
pub struct WallsArgs {
    /// Curve-class multiplicity n of M(0,n,-1) (n = 1 on the Hilbert side
    /// means S^[d+1]).
    #[arg(long)]
    n: u32,
    /// Half the surface degree: H² = 2d.
    #[arg(long)]
    d: u32,
    /// Frame for defining classes and semicircles.
    #[arg(long, value_enum, default_value = "hilbert")]
    frame: FrameArg,
    #[arg(long, value_enum, default_value = "table")]
    format: TextFormat,
    /// Keep only walls with slope >= this rational ("p/q").
    #[arg(long)]
    gamma_lo: Option<String>,
    /// Keep only walls with slope <= this rational ("p/q").
    #[arg(long)]
    gamma_hi: Option<String>,
}

#[derive(Args)]
pub struct ChainArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum, default_value = "table")]
    format: ChainFormat,
    /// Walk the rank-one-only (possibly incomplete) wall list for n >= 3.
    #[arg(long)]
    allow_incomplete: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    n: u32,
    /// A single value "d" or an inclusive range "a..b".
    #[arg(long)]
    d: String,
    #[arg(long, value_enum, default_value = "table")]
    format: TextFormat,
    /// Also check the wall catalog against the exhaustive scan.
    #[arg(long)]
    oracle: bool,
    /// Coefficient bound for the bounded searches (default: 50 for the
    /// total-semistability scan, 10·d for the oracle scan).
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Args)]
pub struct PlotArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum, default_value = "hilbert")]
    frame: FrameArg,
    #[arg(long, value_enum, default_value = "svg")]
    format: PlotFormat,
    /// Draw the rank-one-only (possibly incomplete) wall list for n >= 3.
    #[arg(long)]
    allow_incomplete: bool,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    /// Frame the triple is read in.
    #[arg(long, value_enum, default_value = "hilbert")]
    frame: FrameArg,
    #[arg(long, value_enum, default_value = "table")]
    format: TextFormat,
    /// The class as "r,c,s" (parentheses allowed).
    vector: String,
}

/// Rendered output plus the process exit code (verify reports failures in
/// its body and through the code).
pub struct CmdOutput {
    pub text: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(text: String) -> Self {
        CmdOutput { text, code: 0 }
    }
}

pub fn dispatch(cli: Cli) -> Result<CmdOutput, String> {
    match cli.command {
        Command::Walls(a) => cmd_walls(a),
        Command::Chain(a) => cmd_chain(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Plot(a) => cmd_plot(a),
        Command::Classify(a) => cmd_classify(a),
    }
}

fn rank_param(n: u32) -> Result<RankParam, String> {
    RankParam::new(n).map_err(|e| e.to_string())
}

fn degree(d: u32) -> Result<Degree, String> {
    Degree::new(d).map_err(|e| e.to_string())
}

fn parse_vector(s: &str) -> Result<MukaiVector, String> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = trimmed.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected a class as three comma-separated integers \"r,c,s\", got {s:?}"
        ));
    }
    let mut out = [0i64; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<i64>()
            .map_err(|_| format!("malformed integer {:?} in class {s:?}", part.trim()))?;
    }
    Ok(MukaiVector::from((out[0], out[1], out[2])))
}

fn parse_d_range(s: &str) -> Result<(u32, u32), String> {
    let parse_one = |part: &str| -> Result<u32, String> {
        let value: u32 = part
            .trim()
            .parse()
            .map_err(|_| format!("malformed degree value {:?}", part.trim()))?;
        if value == 0 {
            return Err("degree parameter d must be >= 1".into());
        }
        Ok(value)
    };
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
            if lo > hi {
                return Err(format!("empty degree range {s:?}"));
            }
            Ok((lo, hi))
        }
        None => {
            let v = parse_one(s)?;
            Ok((v, v))
        }
    }
}

fn frame_circle(w: &Wall, frame: Frame) -> &Semicircle {
    match frame {
        Frame::Hilbert => &w.semicircle_h,
        Frame::Bm => &w.semicircle_bm,
    }
}

fn frame_vectors(w: &Wall, n: RankParam, d: Degree, frame: Frame) -> Vec<MukaiVector> {
    match frame {
        Frame::Hilbert => w.defining_vectors.clone(),
        Frame::Bm => w.bm_vectors(n, d),
    }
}

// ---------------------------------------------------------------- walls ----

fn cmd_walls(a: WallsArgs) -> Result<CmdOutput, String> {
    let n = rank_param(a.n)?;
    let d = degree(a.d)?;
    let frame = a.frame.get();
    let ws = all_walls(n, d).map_err(|e| e.to_string())?;

    let lo = a.gamma_lo.as_deref().map(parse_rat).transpose().map_err(|e| e.to_string())?;
    let hi = a.gamma_hi.as_deref().map(parse_rat).transpose().map_err(|e| e.to_string())?;
    if let (Some(lo), Some(hi)) = (&lo, &hi) {
        if lo > hi {
            return Err(format!(
                "empty slope window: --gamma-lo {} > --gamma-hi {}",
                fmt_rat_human(lo),
                fmt_rat_human(hi)
            ));
        }
    }
    let walls: Vec<&Wall> = ws
        .walls
        .iter()
        .filter(|w| lo.as_ref().map_or(true, |lo| &w.gamma >= lo))
        .filter(|w| hi.as_ref().map_or(true, |hi| &w.gamma <= hi))
        .collect();

    match a.format {
        TextFormat::Json => {
            let report = dto::Report {
                meta: dto::Meta { n: a.n, d: a.d },
                walls: Some(walls.iter().map(|w| wall_dto(w, n, d, frame)).collect()),
                chain: None,
            };
            Ok(CmdOutput::ok(dto::to_json(&report)))
        }
        TextFormat::Table => {
            let rows: Vec<Vec<String>> = walls
                .iter()
                .map(|w| {
                    vec![
                        fmt_rat_human(&w.gamma),
                        frame_vectors(w, n, d, frame)
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        w.side.label().to_string(),
                        w.rank.map_or_else(|| "?".into(), |r| r.to_string()),
                        fmt_rat_human(&frame_circle(w, frame).center_x),
                        fmt_rat_human(&frame_circle(w, frame).radius_sq),
                        fmt_rat_human(&w.crossing_t_own_side(n)),
                    ]
                })
                .collect();
            let mut text = format!(
                "walls for n = {}, d = {} ({} frame; {} wall{})\n\n",
                a.n,
                a.d,
                frame.label(),
                rows.len(),
                if rows.len() == 1 { "" } else { "s" }
            );
            text.push_str(&table::render(
                &["Γ", "vectors", "side", "rank", "center", "radius²", "crossing t"],
                &rows,
            ));
            if !ws.certified_complete {
                text.push_str(
                    "\nnote: rank-one catalog plus the middle wall only; \
                     the list is not certified complete for n >= 3\n",
                );
            }
            Ok(CmdOutput::ok(text))
        }
    }
}

fn wall_dto(w: &Wall, n: RankParam, d: Degree, frame: Frame) -> dto::WallDto {
    let sc = frame_circle(w, frame);
    dto::WallDto {
        gamma: rat_str(&w.gamma),
        vectors: frame_vectors(w, n, d, frame)
            .iter()
            .map(|v| v.to_string())
            .collect(),
        side: w.side.label().to_string(),
        rank: w.rank,
        semicircle: dto::SemicircleDto {
            center: rat_str(&sc.center_x),
            radius_sq: rat_str(&sc.radius_sq),
        },
        crossing_t: rat_str(&w.crossing_t_own_side(n)),
    }
}

// ---------------------------------------------------------------- chain ----

fn chain_report(n: RankParam, d: Degree, allow_incomplete: bool) -> Result<ChainReport, String> {
    match n.get() {
        1 => n1_report(d).map_err(|e| e.to_string()),
        2 => build_chain(d).map_err(|e| e.to_string()),
        _ if allow_incomplete => generic_chain(n, d).map_err(|e| e.to_string()),
        _ => Err(format!(
            "chain not certified complete for n = {}; pass --allow-incomplete to walk \
             the rank-one-only wall list",
            n.get()
        )),
    }
}

fn cmd_chain(a: ChainArgs) -> Result<CmdOutput, String> {
    let n = rank_param(a.n)?;
    let d = degree(a.d)?;
    let report = chain_report(n, d, a.allow_incomplete)?;
    match a.format {
        ChainFormat::Json => {
            let out = dto::Report {
                meta: dto::Meta { n: a.n, d: a.d },
                walls: None,
                chain: Some(chain_dto(&report)),
            };
            Ok(CmdOutput::ok(dto::to_json(&out)))
        }
        ChainFormat::Dot => Ok(CmdOutput::ok(dot::render(&report))),
        ChainFormat::Table => Ok(CmdOutput::ok(chain_table(&report, n))),
    }
}

fn bases_str(exc: &ExcLocus) -> String {
    exc.base_components
        .iter()
        .map(|b| {
            if b.spherical_point {
                "pt".to_string()
            } else {
                b.dim.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn chain_table(report: &ChainReport, n: RankParam) -> String {
    let mut text = format!(
        "chain for n = {}, d = {} (N = {} models)\n\n",
        report.n, report.d, report.n_models
    );
    let model_rows: Vec<Vec<String>> = report
        .models
        .iter()
        .map(|m| {
            let note = match (&report.splice, m.spliced) {
                (Some(sp), true) => format!("splice (= {})", sp.alias),
                _ => String::new(),
            };
            vec![m.name.clone(), m.side.label().to_string(), note]
        })
        .collect();
    text.push_str(&table::render(&["model", "side", "note"], &model_rows));
    text.push('\n');
    let step_rows: Vec<Vec<String>> = report
        .steps
        .iter()
        .map(|s| {
            let (decomp, exc) = match &s.kind {
                StepKind::Flop { a, b, exc, .. } => (
                    format!("{a} + {b}"),
                    format!(
                        "fiber {}, bases [{}], codim {}",
                        exc.fiber_dim,
                        bases_str(exc),
                        exc.codim
                    ),
                ),
                StepKind::StratifiedMukaiFlop { spherical, family } => (
                    format!("m·{spherical} + remainder, m = 1..{}", family.len()),
                    "stratified".to_string(),
                ),
            };
            vec![
                s.label.clone(),
                fmt_rat_human(&s.wall.gamma),
                fmt_rat_human(&s.path_x),
                fmt_rat_human(&s.crossing_t),
                decomp,
                exc,
            ]
        })
        .collect();
    text.push_str(&table::render(
        &["step", "Γ", "path x", "crossing t", "decomposition", "exceptional locus"],
        &step_rows,
    ));
    if let Some(sp) = &report.splice {
        text.push_str(&format!(
            "\nsplice: {} = {} (identified by Φ_{})\n",
            sp.model,
            sp.alias,
            n.get()
        ));
    }
    text
}

fn exc_dto(exc: &ExcLocus) -> dto::ExcDto {
    dto::ExcDto {
        fiber_dim: exc.fiber_dim,
        bases: exc
            .base_components
            .iter()
            .map(|b| dto::BaseDto {
                class: b.class.to_string(),
                dim: b.dim,
                spherical_point: b.spherical_point,
            })
            .collect(),
        total_dim: exc.total_dim,
        codim: exc.codim,
    }
}

fn chain_dto(report: &ChainReport) -> dto::ChainDto {
    dto::ChainDto {
        models: report
            .models
            .iter()
            .map(|m| dto::ModelDto {
                name: m.name.clone(),
                side: m.side.label().to_string(),
                spliced: m.spliced,
            })
            .collect(),
        steps: report
            .steps
            .iter()
            .map(|s| dto::StepDto {
                label: s.label.clone(),
                gamma: rat_str(&s.wall.gamma),
                path_x: rat_str(&s.path_x),
                crossing_t: rat_str(&s.crossing_t),
                kind: match &s.kind {
                    StepKind::Flop { a, b, frame, exc } => dto::StepKindDto::Flop {
                        a: a.to_string(),
                        b: b.to_string(),
                        frame: frame.label().to_string(),
                        exc: exc_dto(exc),
                    },
                    StepKind::StratifiedMukaiFlop { spherical, family } => {
                        dto::StepKindDto::StratifiedMukaiFlop {
                            spherical: spherical.to_string(),
                            family: family
                                .iter()
                                .map(|t| dto::FamilyTermDto {
                                    m: t.m,
                                    remainder: t.remainder.to_string(),
                                })
                                .collect(),
                        }
                    }
                },
            })
            .collect(),
        n_models: report.n_models,
        splice: report.splice.as_ref().map(|sp| dto::SpliceDto {
            model: sp.model.clone(),
            alias: sp.alias.clone(),
        }),
    }
}

// ----------------------------------------------------------------- plot ----

fn cmd_plot(a: PlotArgs) -> Result<CmdOutput, String> {
    let n = rank_param(a.n)?;
    let d = degree(a.d)?;
    if n.get() > 2 && !a.allow_incomplete {
        return Err(format!(
            "wall diagram not certified complete for n = {}; pass --allow-incomplete to \
             draw the rank-one-only wall list",
            n.get()
        ));
    }
    let PlotFormat::Svg = a.format;
    let ws = all_walls(n, d).map_err(|e| e.to_string())?;
    Ok(CmdOutput::ok(svg::render(&ws.walls, n, d, a.frame.get())))
}

// ------------------------------------------------------------- classify ----

fn cmd_classify(a: ClassifyArgs) -> Result<CmdOutput, String> {
    let n = rank_param(a.n)?;
    let d = degree(a.d)?;
    let frame = a.frame.get();
    let input = parse_vector(&a.vector)?;
    if input.is_zero() {
        return Err("the zero class defines no wall".into());
    }
    let primitive = is_primitive(&input);
    let class = primitive_part(&input).map_err(|e| e.to_string())?;

    let wall = match frame {
        Frame::Hilbert => Wall::from_hilbert_vector(&class, n, d),
        Frame::Bm => Wall::from_bm_vector(&class, n, d),
    }
    .map_err(|e| format!("cannot classify {input} in the {} frame: {e}", frame.label()))?;

    let rank = k3walls::wall_engine::wall_rank(&wall, n, d).map_err(|e| e.to_string())?;
    let flopping = match frame {
        Frame::Hilbert => flopping_check(&class, n, d),
        Frame::Bm => flopping_check_bm(&class, n, d),
    };
    let window_hi = BigRational::new(1.into(), n.big());
    let in_window = |g: &BigRational| g > &BigRational::zero() && g < &window_hi;
    let gamma_h = gamma_from_vector(&class, n, d)
        .ok()
        .filter(|g| in_window(g));
    let gamma_b = gamma_from_vector_bm(&class, n, d)
        .ok()
        .filter(|g| in_window(g));
    let exc = if wall.side == Side::Middle {
        None
    } else {
        decomposition_at_crossing(&wall, n, d)
            .ok()
            .and_then(|(x, y)| exceptional_locus(&x, &y, d).ok())
    };

    let record = dto::ClassifyDto {
        vector: input.to_string(),
        frame: frame.label().to_string(),
        primitive,
        primitive_part: (!primitive).then(|| class.to_string()),
        gamma: rat_str(&wall.gamma),
        gamma_hilbert: gamma_h.as_ref().map(rat_str),
        gamma_bm: gamma_b.as_ref().map(rat_str),
        side: wall.side.label().to_string(),
        rank,
        flopping,
        crossing_t_hilbert: rat_str(&wall.crossing_t_hilbert(n)),
        crossing_t_bm: rat_str(&wall.crossing_t_bm(n)),
        exc: exc.as_ref().map(exc_dto),
    };

    match a.format {
        TextFormat::Json => Ok(CmdOutput::ok(dto::to_json(&record))),
        TextFormat::Table => {
            let opt_gamma = |g: &Option<BigRational>| {
                g.as_ref().map_or("n/a".to_string(), fmt_rat_human)
            };
            let mut lines = vec![
                ("class", input.to_string()),
                ("frame", frame.label().to_string()),
                ("primitive", yes_no(primitive)),
            ];
            if !primitive {
                lines.push(("primitive part", class.to_string()));
            }
            lines.extend([
                ("Γ", fmt_rat_human(&wall.gamma)),
                ("Γ read in hilbert frame", opt_gamma(&gamma_h)),
                ("Γ read in bm frame", opt_gamma(&gamma_b)),
                ("side", wall.side.label().to_string()),
                ("rank", rank.to_string()),
                ("flopping", yes_no(flopping)),
                (
                    "crossing t at x = -n",
                    fmt_rat_human(&wall.crossing_t_hilbert(n)),
                ),
                ("crossing t at x = 0", fmt_rat_human(&wall.crossing_t_bm(n))),
            ]);
            if let Some(e) = &exc {
                lines.push((
                    "exceptional locus",
                    format!(
                        "fiber {}, bases [{}], total {}, codim {}",
                        e.fiber_dim,
                        bases_str(e),
                        e.total_dim,
                        e.codim
                    ),
                ));
            }
            let width = lines.iter().map(|(k, _)| k.chars().count()).max().unwrap();
            let mut text = String::new();
            for (k, v) in lines {
                let pad = " ".repeat(width - k.chars().count());
                text.push_str(&format!("{k}:{pad}  {v}\n"));
            }
            Ok(CmdOutput::ok(text))
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes".into() } else { "no".into() }
}

// --------------------------------------------------------------- verify ----

const FROZEN_MODEL_COUNTS: [usize; 6] = [5, 7, 10, 12, 15, 17];

fn cmd_verify(a: VerifyArgs) -> Result<CmdOutput, String> {
    let n = rank_param(a.n)?;
    let (d_lo, d_hi) = parse_d_range(&a.d)?;
    let mut checks: Vec<dto::CheckDto> = Vec::new();
    for dd in d_lo..=d_hi {
        let d = degree(dd)?;
        run_checks(n, d, a.oracle, a.bound, &mut checks).map_err(|e| e.to_string())?;
    }
    let failed = checks.iter().filter(|c| c.status == "fail").count();
    let all_passed = failed == 0;
    let summary = dto::VerifySummary {
        n: a.n,
        d_lo,
        d_hi,
        checks,
        all_passed,
    };
    let text = match a.format {
        TextFormat::Json => dto::to_json(&summary),
        TextFormat::Table => {
            let rows: Vec<Vec<String>> = summary
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.d.to_string(),
                        c.name.clone(),
                        c.status.clone(),
                        c.detail.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            let mut text = format!("verify for n = {}, d = {}..{}\n\n", a.n, d_lo, d_hi);
            text.push_str(&table::render(&["d", "check", "status", "detail"], &rows));
            text.push('\n');
            if all_passed {
                text.push_str(&format!("all {} checks passed\n", summary.checks.len()));
            } else {
                text.push_str(&format!(
                    "{failed} of {} checks FAILED\n",
                    summary.checks.len()
                ));
            }
            text
        }
    };
    Ok(CmdOutput {
        text,
        code: if all_passed { 0 } else { 1 },
    })
}

/// A check body: `Ok(detail)` on pass, `Err(explanation)` on fail.
type Check = Result<String, String>;

fn push(checks: &mut Vec<dto::CheckDto>, d: Degree, name: &str, outcome: Check) {
    let (status, detail) = match outcome {
        Ok(detail) => ("pass", detail),
        Err(msg) => ("fail", msg),
    };
    checks.push(dto::CheckDto {
        d: d.get(),
        name: name.into(),
        status: status.into(),
        detail: (!detail.is_empty()).then_some(detail),
    });
}

fn push_skip(checks: &mut Vec<dto::CheckDto>, d: Degree, name: &str, why: &str) {
    checks.push(dto::CheckDto {
        d: d.get(),
        name: name.into(),
        status: "skip".into(),
        detail: Some(why.into()),
    });
}

fn run_checks(
    n: RankParam,
    d: Degree,
    oracle: bool,
    bound: Option<u64>,
    checks: &mut Vec<dto::CheckDto>,
) -> k3walls::Result<()> {
    let tss_bound = SearchBound::new(bound.unwrap_or(50))?;
    let oracle_bound = bound.unwrap_or(10 * d.get() as u64);
    match n.get() {
        1 => {
            push(checks, d, "model_count", check_model_count(n, d));
            push(checks, d, "n1_unique_wall", check_n1_unique(d, oracle_bound));
            push(checks, d, "total_semistability", check_tss(n, d, tss_bound));
            if oracle {
                push(checks, d, "oracle_equivalence", check_oracle(n, d, oracle_bound, true));
            }
        }
        2 => {
            push(checks, d, "model_count", check_model_count(n, d));
            push(checks, d, "extremality", check_extremality(d));
            if d.get() <= 6 {
                push(checks, d, "rank_purity", check_rank_purity(d));
            } else {
                push_skip(checks, d, "rank_purity", "rank table frozen for d <= 6 only");
            }
            push(checks, d, "crossing_formulas", check_crossings(d));
            push(checks, d, "exceptional_dims", check_exc_dims(d));
            push(checks, d, "total_semistability", check_tss(n, d, tss_bound));
            if oracle {
                push(checks, d, "oracle_equivalence", check_oracle(n, d, oracle_bound, true));
            }
        }
        _ => {
            push(checks, d, "wall_structure", check_structure(n, d));
            push(checks, d, "model_count", check_model_count(n, d));
            push(checks, d, "total_semistability", check_tss(n, d, tss_bound));
            if oracle {
                push(checks, d, "oracle_containment", check_oracle(n, d, oracle_bound, false));
            }
        }
    }
    Ok(())
}

fn check_model_count(n: RankParam, d: Degree) -> Check {
    let report = chain_report(n, d, true)?;
    let ws = all_walls(n, d).map_err(|e| e.to_string())?;
    if report.n_models != report.models.len()
        || report.n_models != report.steps.len() + 1
        || report.n_models != ws.walls.len() + 1
    {
        return Err(format!(
            "inconsistent counts: N = {}, {} models, {} steps, {} walls",
            report.n_models,
            report.models.len(),
            report.steps.len(),
            ws.walls.len()
        ));
    }
    if n.get() == 2 && (1..=6).contains(&d.get()) {
        let expected = FROZEN_MODEL_COUNTS[d.get() as usize - 1];
        if report.n_models != expected {
            return Err(format!("expected N = {expected}, got {}", report.n_models));
        }
    }
    if n.get() == 1 && report.n_models != 2 {
        return Err(format!("expected N = 2, got {}", report.n_models));
    }
    Ok(format!("N = {}", report.n_models))
}

fn check_n1_unique(d: Degree, bound: u64) -> Check {
    let n1 = RankParam::new(1).unwrap();
    let expected = rat(2 * d.get() as i64, 2 * d.get() as i64 + 1);
    let ws = all_walls(n1, d).map_err(|e| e.to_string())?;
    if ws.walls.len() != 1 || ws.walls[0].gamma != expected {
        return Err(format!(
            "wall list is not the single slope {}",
            fmt_rat_human(&expected)
        ));
    }
    let scan = oracle_walls(n1, d, &rat(0, 1), &rat(1, 1), bound).map_err(|e| e.to_string())?;
    if scan.len() != 1 || scan[0].gamma != expected {
        return Err(format!(
            "exhaustive scan (bound {bound}) found {} wall(s) instead of the single slope {}",
            scan.len(),
            fmt_rat_human(&expected)
        ));
    }
    Ok(format!(
        "one wall at Γ = {} (scan bound {bound})",
        fmt_rat_human(&expected)
    ))
}

fn check_extremality(d: Degree) -> Check {
    let n = RankParam::new(2).unwrap();
    let k = d.get() as i64;
    let ws = all_walls(n, d).map_err(|e| e.to_string())?;
    let min = &ws.walls.first().ok_or("empty wall list")?.gamma;
    let max = &ws.walls.last().unwrap().gamma;
    let expected_min = gamma_from_vector(&MukaiVector::from((1, -1, k + 1)), n, d)
        .map_err(|e| e.to_string())?;
    let expected_max = gamma_from_vector_bm(&MukaiVector::from((1, 1, k)), n, d)
        .map_err(|e| e.to_string())?;
    if *min != expected_min {
        return Err(format!(
            "smallest slope {} is not Γ(1,-1,d+1) = {}",
            fmt_rat_human(min),
            fmt_rat_human(&expected_min)
        ));
    }
    if *max != expected_max {
        return Err(format!(
            "largest slope {} is not Γ_bm(1,1,d) = {}",
            fmt_rat_human(max),
            fmt_rat_human(&expected_max)
        ));
    }
    Ok(format!(
        "Γ spans [{}, {}]",
        fmt_rat_human(min),
        fmt_rat_human(max)
    ))
}

fn check_rank_purity(d: Degree) -> Check {
    let n = RankParam::new(2).unwrap();
    let k = d.get() as i64;
    let ws = all_walls(n, d).map_err(|e| e.to_string())?;
    let mut rank_two_slopes: BTreeSet<BigRational> = BTreeSet::new();
    if d.get() >= 3 {
        rank_two_slopes.insert(
            gamma_from_vector(&MukaiVector::from((2, -3, 4 * k + 2)), n, d)
                .map_err(|e| e.to_string())?,
        );
    }
    if d.get() >= 5 {
        rank_two_slopes.insert(
            gamma_from_vector_bm(&MukaiVector::from((2, 1, 2)), n, d)
                .map_err(|e| e.to_string())?,
        );
    }
    for w in &ws.walls {
        let expected = if rank_two_slopes.contains(&w.gamma) { 2 } else { 1 };
        if w.rank != Some(expected) {
            return Err(format!(
                "wall at Γ = {} has rank {:?}, expected {expected}",
                fmt_rat_human(&w.gamma),
                w.rank
            ));
        }
    }
    Ok(format!(
        "all rank 1 except {} rank-two wall(s)",
        rank_two_slopes.len()
    ))
}

fn check_crossings(d: Degree) -> Check {
    let n = RankParam::new(2).unwrap();
    let k = d.get() as i64;
    let mut count = 0u32;
    for i in 1..=k + 1 {
        let w = Wall::from_hilbert_vector(&MukaiVector::from((1, -1, i)), n, d)
            .map_err(|e| e.to_string())?;
        let expected = rat(2 * i, k);
        if w.crossing_t_hilbert(n) != expected {
            return Err(format!(
                "(1,-1,{i}) crosses x = -2 at {}, expected {}",
                fmt_rat_human(&w.crossing_t_hilbert(n)),
                fmt_rat_human(&expected)
            ));
        }
        count += 1;
    }
    for i in 1..=k {
        let w = Wall::from_bm_vector(&MukaiVector::from((1, 1, i)), n, d)
            .map_err(|e| e.to_string())?;
        let expected = rat(2 * i + 1, 2 * k);
        if w.crossing_t_bm(n) != expected {
            return Err(format!(
                "(1,1,{i}) crosses x = 0 at {}, expected {}",
                fmt_rat_human(&w.crossing_t_bm(n)),
                fmt_rat_human(&expected)
            ));
        }
        count += 1;
    }
    if d.get() >= 3 {
        let w = Wall::from_hilbert_vector(&MukaiVector::from((2, -3, 4 * k + 2)), n, d)
            .map_err(|e| e.to_string())?;
        if w.crossing_t_hilbert(n) != rat(4, 3 * k) {
            return Err("(2,-3,4d+2) misses the 4/(3d) crossing".into());
        }
        count += 1;
    }
    if d.get() >= 5 {
        let w = Wall::from_bm_vector(&MukaiVector::from((2, 1, 2)), n, d)
            .map_err(|e| e.to_string())?;
        if w.crossing_t_bm(n) != rat(5, 4 * k) {
            return Err("(2,1,2) misses the 5/(4d) crossing".into());
        }
        count += 1;
    }
    Ok(format!("checked {count} crossing parameters"))
}

fn check_exc_dims(d: Degree) -> Check {
    let report = build_chain(d).map_err(|e| e.to_string())?;
    let k = d.get() as u64;
    let mut count = 0u32;
    for step in &report.steps {
        let exc = match &step.kind {
            StepKind::Flop { exc, .. } => exc,
            StepKind::StratifiedMukaiFlop { .. } => continue,
        };
        if exc.codim < 2 || exc.codim != exc.fiber_dim {
            return Err(format!(
                "step {} has fiber {}, codim {}",
                step.label, exc.fiber_dim, exc.codim
            ));
        }
        let label = step.label.as_str();
        let expected: Option<(u64, u64, u64)> = if let Some(idx) = label.strip_prefix("f_") {
            let i: u64 = idx.parse().map_err(|_| format!("odd step label {label}"))?;
            if i == k + 1 {
                Some((3 * k, 0, 2 * k + 2))
            } else {
                Some((2 * k + i - 1, 2 * (k + 1 - i), 2 * k + 2))
            }
        } else if label == "h" {
            Some((2 * k + 5, 2 * k - 6, 2 * k - 2))
        } else if let Some(idx) = label.strip_prefix("g_") {
            let i: u64 = idx.parse().map_err(|_| format!("odd step label {label}"))?;
            Some((2 * k + 2 * i, 2 * (k + 1 - i), 2 * (k - i)))
        } else if label == "j" {
            Some((2 * k + 9, 2 * k - 6, 2 * k - 10))
        } else {
            None
        };
        if let Some((fiber, base0, base1)) = expected {
            let got = (
                exc.fiber_dim,
                exc.base_components[0].dim,
                exc.base_components[1].dim,
            );
            if got != (fiber, base0, base1) {
                return Err(format!(
                    "step {} has (fiber, bases) = {:?}, expected ({fiber}, {base0}, {base1})",
                    step.label, got
                ));
            }
        }
        count += 1;
    }
    Ok(format!("checked {count} flop steps"))
}

fn check_tss(n: RankParam, d: Degree, bound: SearchBound) -> Check {
    let v = hilbert_vector(n, d);
    let vp = bm_vector(n);
    let ws = all_walls(n, d).map_err(|e| e.to_string())?;
    let mut count = 0u32;
    for w in &ws.walls {
        if matches!(w.side, Side::Hilbert | Side::Middle) {
            match is_totally_semistable(w, &v, bound, n, d).map_err(|e| e.to_string())? {
                TssOutcome::NoneWithinBound => count += 1,
                TssOutcome::Found(witness) => {
                    return Err(format!(
                        "witness against the total vector at Γ = {}: {} ({:?})",
                        fmt_rat_human(&w.gamma),
                        witness.class,
                        witness.kind
                    ))
                }
            }
        }
        if matches!(w.side, Side::Bm | Side::Middle) {
            match is_totally_semistable(w, &vp, bound, n, d).map_err(|e| e.to_string())? {
                TssOutcome::NoneWithinBound => count += 1,
                TssOutcome::Found(witness) => {
                    return Err(format!(
                        "witness against the bm total vector at Γ = {}: {} ({:?})",
                        fmt_rat_human(&w.gamma),
                        witness.class,
                        witness.kind
                    ))
                }
            }
        }
    }
    Ok(format!(
        "{count} bounded searches clean (evidence-grade, coefficient bound {})",
        bound.get()
    ))
}

fn check_oracle(n: RankParam, d: Degree, bound: u64, require_equality: bool) -> Check {
    let catalog = all_walls(n, d).map_err(|e| e.to_string())?;
    let hi = BigRational::new(1.into(), n.big());
    let scan = oracle_walls(n, d, &BigRational::zero(), &hi, bound).map_err(|e| e.to_string())?;
    let catalog_slopes: BTreeSet<BigRational> =
        catalog.walls.iter().map(|w| w.gamma.clone()).collect();
    let scan_slopes: BTreeSet<BigRational> = scan.iter().map(|w| w.gamma.clone()).collect();
    let missing: Vec<&BigRational> = catalog_slopes.difference(&scan_slopes).collect();
    if !missing.is_empty() {
        return Err(format!(
            "scan (bound {bound}) misses catalog slope(s) {}",
            missing
                .iter()
                .map(|g| fmt_rat_human(g))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    let extra: Vec<&BigRational> = scan_slopes.difference(&catalog_slopes).collect();
    if require_equality && !extra.is_empty() {
        return Err(format!(
            "scan (bound {bound}) found slope(s) beyond the catalog: {}",
            extra
                .iter()
                .map(|g| fmt_rat_human(g))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    if require_equality {
        Ok(format!(
            "slope sets agree on {} wall(s) (scan bound {bound})",
            catalog_slopes.len()
        ))
    } else {
        Ok(format!(
            "catalog ⊆ scan; scan (bound {bound}) adds {} slope(s)",
            extra.len()
        ))
    }
}

fn check_structure(n: RankParam, d: Degree) -> Check {
    let ws = all_walls(n, d).map_err(|e| e.to_string())?;
    if ws.certified_complete {
        return Err("n >= 3 wall list unexpectedly claims completeness".into());
    }
    let hi = BigRational::new(1.into(), n.big());
    let middle = k3walls::stability_plane::brill_noether_gamma(n, d);
    let mut middles = 0;
    for pair in ws.walls.windows(2) {
        if pair[0].gamma >= pair[1].gamma {
            return Err("wall slopes are not strictly ascending".into());
        }
    }
    for w in &ws.walls {
        if w.gamma <= BigRational::zero() || w.gamma >= hi {
            return Err(format!(
                "slope {} outside the open window (0, 1/n)",
                fmt_rat_human(&w.gamma)
            ));
        }
        if w.gamma == middle {
            middles += 1;
            if w.side != Side::Middle {
                return Err("the middle slope is not flagged middle".into());
            }
        }
        if w.rank.is_none() {
            return Err(format!(
                "wall at Γ = {} has no rank",
                fmt_rat_human(&w.gamma)
            ));
        }
    }
    if middles != 1 {
        return Err(format!("expected exactly one middle wall, found {middles}"));
    }
    Ok(format!("{} walls, strictly ascending, one middle", ws.walls.len()))
}
