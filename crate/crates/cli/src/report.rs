//! Report envelope shared by every command: the same data renders as text or
//! as versioned JSON. Identical configuration and seed produce byte-identical
//! JSON output.

use serde::Serialize;

pub const SCHEMA: &str = "quivercover-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: &'static str,
    pub command: String,
    pub fixture: Option<String>,
    pub fixture_digest: Option<String>,
    pub field: String,
    pub seed: u64,
    pub radius: i64,
    pub cap: u32,
    pub data: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateData {
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub group_rank: usize,
    pub nilpotency_bound: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndData {
    pub count: usize,
    pub modules: Vec<IndModule>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndModule {
    pub walk: String,
    pub dims: Vec<usize>,
    pub total_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArData {
    pub vertices: Vec<ArVertexData>,
    pub arrows: Vec<(usize, usize, usize)>,
    pub tau_pairs: Vec<(usize, usize)>,
    pub meshes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArVertexData {
    pub index: usize,
    pub label: String,
    pub dims: Vec<usize>,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeshData {
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub nilpotency_bound: u32,
    pub standard_pairs_equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverCheckData {
    pub window_radius: i64,
    pub interior_modules: usize,
    pub pairs: usize,
    pub failures: usize,
    pub sample: Vec<CoverCheckSample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverCheckSample {
    pub x_dims: Vec<usize>,
    pub y_dims: Vec<usize>,
    pub pushed_hom: usize,
    pub translate_sum: usize,
    pub contributions: Vec<(Vec<i64>, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinesData {
    pub orbits: Vec<LineData>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LineData {
    pub start: String,
    pub period_letters: Vec<String>,
    pub period_shift: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KindData {
    pub input: String,
    pub verdict: String,
    pub witness_dims: Option<Vec<usize>>,
    pub companion: Option<Vec<String>>,
    pub evidence: Option<Vec<(i64, Vec<usize>)>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproduceData {
    pub criteria: Vec<CriterionData>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionData {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub signature: String,
    pub detail: String,
    pub millis: u128,
}
