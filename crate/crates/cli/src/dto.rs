//! Serialization records for the machine-readable (json) surface.
//!
//! The shapes here are the stable contract: top level
//! `{meta:{n,d}, walls:[…], chain:{models, steps, N, …}}`, with every
//! rational as a `"p/q"` string (never a float) and every Mukai vector in its
//! `(r,c,s)` display form.  The records round-trip: parsing emitted json and
//! re-rendering reproduces the same bytes.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walls: Option<Vec<WallDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub n: u32,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallDto {
    /// Slope, `"p/q"`.
    pub gamma: String,
    /// Defining classes in the requested frame, `(r,c,s)` form.
    pub vectors: Vec<String>,
    pub side: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    /// In the requested frame.
    pub semicircle: SemicircleDto,
    /// Crossing parameter on the wall's own side's path.
    pub crossing_t: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemicircleDto {
    pub center: String,
    pub radius_sq: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainDto {
    pub models: Vec<ModelDto>,
    pub steps: Vec<StepDto>,
    #[serde(rename = "N")]
    pub n_models: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splice: Option<SpliceDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDto {
    pub name: String,
    pub side: String,
    pub spliced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpliceDto {
    pub model: String,
    pub alias: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepDto {
    pub label: String,
    pub gamma: String,
    pub path_x: String,
    pub crossing_t: String,
    pub kind: StepKindDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StepKindDto {
    Flop {
        a: String,
        b: String,
        frame: String,
        exc: ExcDto,
    },
    StratifiedMukaiFlop {
        spherical: String,
        family: Vec<FamilyTermDto>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcDto {
    pub fiber_dim: u64,
    pub bases: Vec<BaseDto>,
    pub total_dim: u64,
    pub codim: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseDto {
    pub class: String,
    pub dim: u64,
    pub spherical_point: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyTermDto {
    pub m: u32,
    pub remainder: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub n: u32,
    pub d_lo: u32,
    pub d_hi: u32,
    pub checks: Vec<CheckDto>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDto {
    pub d: u32,
    pub name: String,
    /// `"pass"`, `"fail"`, or `"skip"`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyDto {
    /// The classified (primitive) class, `(r,c,s)` form.
    pub vector: String,
    /// Frame the input triple was read in.
    pub frame: String,
    /// Whether the input triple itself was primitive.
    pub primitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_part: Option<String>,
    /// Slope of the wall the class defines (under the requested frame).
    pub gamma: String,
    /// Slope when the same triple is read in the hilbert frame, if that
    /// interpretation defines an in-window wall.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_hilbert: Option<String>,
    /// Slope when the same triple is read in the bm frame, likewise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_bm: Option<String>,
    pub side: String,
    pub rank: u32,
    /// Two-term flopping criterion in the requested frame.
    pub flopping: bool,
    pub crossing_t_hilbert: String,
    pub crossing_t_bm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exc: Option<ExcDto>,
}

/// Pretty json with a trailing newline; the single json entry point so the
/// byte-for-byte round-trip guarantee has one formatting authority.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable report");
    out.push('\n');
    out
}
