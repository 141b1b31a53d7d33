//! Command implementations. Each returns a rendered report string plus the
//! process exit code; `main` only does argument plumbing and printing.
//!
//! Exit codes: 0 success, 1 reproduction failure, 2 validation failure,
//! 3 I/O or parse error, 4 unsupported input class.

use crate::report::*;
use crate::reproduce;
use quivercover::artheory::{ar_quiver, mesh_presentation, standard_check};
use quivercover::covering::{CoveringContext, KindVerdict};
use quivercover::error::Error;
use quivercover::field::Field;
use quivercover::functor::{classify_functor_kind, FpFunctor};
use quivercover::parse::{
    content_digest, parse_fixture_with_field, parse_representation, serialize_bound, Fixture,
    ParsedFixture,
};
use quivercover::periodic::PeriodicPresentation;
use quivercover::quiver::BoundPresentation;
use quivercover::rep::Representation;
use quivercover::strings::{enumerate_strings, string_module};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
    FixtureText,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub field_override: Option<Field>,
    pub radius: i64,
    pub cap: u32,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field_override: None,
            radius: 3,
            cap: 32,
            seed: 0,
            format: OutputFormat::Text,
        }
    }
}

pub struct CommandOutput {
    pub text: String,
    pub exit_code: i32,
}

fn ok(text: String) -> CommandOutput {
    CommandOutput { text, exit_code: 0 }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) => 3,
        Error::NotSpecialBiserial(_)
        | Error::RepresentationInfinite(_)
        | Error::RationalsUnsupported(_)
        | Error::UnsupportedGroup(_)
        | Error::HypothesesNotCertified(_) => 4,
        _ => 2,
    }
}

pub fn failure(command: &str, e: &Error) -> CommandOutput {
    CommandOutput {
        text: format!("{command}: error: {e}"),
        exit_code: exit_code_for(e),
    }
}

struct Loaded {
    parsed: ParsedFixture,
    digest: String,
    name: String,
}

fn load(path: &str, cfg: &RunConfig) -> Result<Loaded, Error> {
    let text = std::fs::read_to_string(path)?;
    let parsed = parse_fixture_with_field(&text, cfg.field_override)?;
    Ok(Loaded { parsed, digest: content_digest(&text), name: path.to_string() })
}

fn field_name(f: &Field) -> String {
    match f {
        Field::Prime(p) => format!("F_{p}"),
        Field::Rationals => "Q".to_string(),
    }
}

fn envelope<T: serde::Serialize>(
    command: &str,
    loaded: Option<&Loaded>,
    cfg: &RunConfig,
    field: Field,
    data: T,
) -> Envelope<T> {
    Envelope {
        schema: SCHEMA,
        command: command.to_string(),
        fixture: loaded.map(|l| l.name.clone()),
        fixture_digest: loaded.map(|l| l.digest.clone()),
        field: field_name(&field),
        seed: cfg.seed,
        radius: cfg.radius,
        cap: cfg.cap,
        data,
    }
}

/// The finite algebra described by a fixture: either directly, or the orbit
/// algebra of a cover.
fn algebra_of(parsed: &ParsedFixture, cap: u32) -> Result<Arc<BoundPresentation>, Error> {
    match &parsed.fixture {
        Fixture::Algebra(p) => {
            let mut p = p.clone();
            p.certify(cap)?;
            Ok(Arc::new(p))
        }
        Fixture::Cover(c) => Ok(Arc::new(c.orbit_presentation(cap)?)),
    }
}

fn cover_of(parsed: &ParsedFixture) -> Result<PeriodicPresentation, Error> {
    match &parsed.fixture {
        Fixture::Cover(c) => Ok(c.clone()),
        Fixture::Algebra(_) => Err(Error::BadQuiver(
            "this command needs a periodic cover (group rank >= 1)".into(),
        )),
    }
}

pub fn cmd_validate(path: &str, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("validate", &e),
    };
    let run = || -> Result<(ValidateData, Field), Error> {
        let (bound, v, a, r, rank, field) = match &loaded.parsed.fixture {
            Fixture::Algebra(p) => {
                let mut p = p.clone();
                p.certify(cfg.cap)?;
                (
                    p.bound()?,
                    p.quiver().vertex_count(),
                    p.quiver().arrow_count(),
                    p.relations().len(),
                    0,
                    p.field(),
                )
            }
            Fixture::Cover(c) => {
                let orbit = c.orbit_presentation(cfg.cap)?;
                // certify a window too, so the cover itself is exercised
                let _ = c.build_window(1, cfg.cap)?;
                (
                    orbit.bound()?,
                    c.slice().vertex_count(),
                    c.slice().arrow_count(),
                    c.relations().len(),
                    c.rank(),
                    c.field(),
                )
            }
        };
        Ok((
            ValidateData {
                vertices: v,
                arrows: a,
                relations: r,
                group_rank: rank,
                nilpotency_bound: bound,
            },
            field,
        ))
    };
    match run() {
        Ok((data, field)) => {
            let env = envelope("validate", Some(&loaded), cfg, field, data);
            match cfg.format {
                OutputFormat::Json => ok(env.to_json()),
                _ => ok(format!(
                    "{}: ok ({} vertices, {} arrows, {} relations, group rank {}, \
                     nilpotency bound {})",
                    path,
                    env.data.vertices,
                    env.data.arrows,
                    env.data.relations,
                    env.data.group_rank,
                    env.data.nilpotency_bound
                )),
            }
        }
        Err(e) => failure("validate", &e),
    }
}

pub fn cmd_ind(path: &str, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("ind", &e),
    };
    let run = || -> Result<(IndData, Field), Error> {
        let pres = algebra_of(&loaded.parsed, cfg.cap)?;
        let e = enumerate_strings(&pres, 0)?;
        if !e.certifies_finite() {
            return Err(Error::RepresentationInfinite(
                "string set does not stabilise or a band exists".into(),
            ));
        }
        let mut modules = Vec::new();
        for w in &e.strings {
            let m = string_module(&pres, w)?;
            modules.push(IndModule {
                walk: w.display(&pres),
                dims: m.dims().to_vec(),
                total_dim: m.total_dim(),
            });
        }
        modules.sort_by(|a, b| (a.total_dim, &a.dims, &a.walk).cmp(&(b.total_dim, &b.dims, &b.walk)));
        Ok((IndData { count: modules.len(), modules }, pres.field()))
    };
    match run() {
        Ok((data, field)) => {
            let env = envelope("ind", Some(&loaded), cfg, field, data);
            match cfg.format {
                OutputFormat::Json => ok(env.to_json()),
                _ => {
                    let mut s = format!("{} indecomposables\n", env.data.count);
                    for m in &env.data.modules {
                        s.push_str(&format!("  {:12} dims {:?}\n", m.walk, m.dims));
                    }
                    ok(s)
                }
            }
        }
        Err(e) => failure("ind", &e),
    }
}

fn ar_data(pres: &Arc<BoundPresentation>, seed: u64) -> Result<(ArData, String), Error> {
    let tq = ar_quiver(pres, 0, seed)?;
    let vertices = tq
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| ArVertexData {
            index: i,
            label: v.label.clone(),
            dims: v.rep.dims().to_vec(),
            projective: v.projective.is_some(),
            injective: v.injective.is_some(),
        })
        .collect();
    let arrows = tq.arrows.iter().map(|a| (a.src, a.dst, a.mult)).collect();
    let tau_pairs = tq
        .tau
        .iter()
        .enumerate()
        .filter_map(|(x, t)| t.map(|tx| (x, tx)))
        .collect();
    Ok((
        ArData { vertices, arrows, tau_pairs, meshes: tq.meshes.len() },
        tq.to_dot(),
    ))
}

pub fn cmd_ar(path: &str, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("ar", &e),
    };
    let run = || -> Result<(ArData, String, Field), Error> {
        let pres = algebra_of(&loaded.parsed, cfg.cap)?;
        let (data, dot) = ar_data(&pres, cfg.seed)?;
        Ok((data, dot, pres.field()))
    };
    match run() {
        Ok((data, dot, field)) => match cfg.format {
            OutputFormat::Dot => ok(dot),
            OutputFormat::Json => ok(envelope("ar", Some(&loaded), cfg, field, data).to_json()),
            _ => {
                let mut s = format!(
                    "AR quiver: {} vertices, {} arrow classes, {} meshes\n",
                    data.vertices.len(),
                    data.arrows.len(),
                    data.meshes
                );
                for v in &data.vertices {
                    s.push_str(&format!("  [{}] {} dims {:?}\n", v.index, v.label, v.dims));
                }
                for (src, dst, mult) in &data.arrows {
                    s.push_str(&format!("  {src} -> {dst} (x{mult})\n"));
                }
                for (x, tx) in &data.tau_pairs {
                    s.push_str(&format!("  tau {x} = {tx}\n"));
                }
                ok(s)
            }
        },
        Err(e) => failure("ar", &e),
    }
}

pub fn cmd_mesh(path: &str, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("mesh", &e),
    };
    let run = || -> Result<(MeshData, String, String, Field), Error> {
        let pres = algebra_of(&loaded.parsed, cfg.cap)?;
        let tq = ar_quiver(&pres, 0, cfg.seed)?;
        let mesh = mesh_presentation(&tq, cfg.cap)?;
        let report = standard_check(&tq, &mesh)?;
        let fixture_text = serialize_bound(&mesh.pres);
        let mut dot = String::from("digraph mesh {\n");
        let q = mesh.pres.quiver();
        for v in 0..q.vertex_count() {
            dot.push_str(&format!(
                "  {} [label=\"{} = {}\"];\n",
                q.vertex_name(v),
                q.vertex_name(v),
                tq.vertices[v].label
            ));
        }
        for a in q.arrows() {
            dot.push_str(&format!(
                "  {} -> {} [label=\"{}\"];\n",
                q.vertex_name(a.src),
                q.vertex_name(a.dst),
                a.name
            ));
        }
        dot.push_str("}\n");
        Ok((
            MeshData {
                vertices: q.vertex_count(),
                arrows: q.arrow_count(),
                relations: mesh.pres.relations().len(),
                nilpotency_bound: mesh.pres.bound()?,
                standard_pairs_equal: report.all_equal(),
            },
            fixture_text,
            dot,
            pres.field(),
        ))
    };
    match run() {
        Ok((data, fixture_text, dot, field)) => match cfg.format {
            OutputFormat::Dot => ok(dot),
            OutputFormat::FixtureText => ok(fixture_text),
            OutputFormat::Json => ok(envelope("mesh", Some(&loaded), cfg, field, data).to_json()),
            _ => ok(format!(
                "mesh presentation: {} vertices, {} arrows, {} relations, bound {}, \
                 standard dimension check: {}",
                data.vertices,
                data.arrows,
                data.relations,
                data.nilpotency_bound,
                if data.standard_pairs_equal { "all pairs equal" } else { "UNEQUAL PAIRS" }
            )),
        },
        Err(e) => failure("mesh", &e),
    }
}

pub fn cmd_cover_check(path: &str, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("cover-check", &e),
    };
    let run = || -> Result<(CoverCheckData, Field), Error> {
        let cover = cover_of(&loaded.parsed)?;
        let field = cover.field();
        let ctx = CoveringContext::new(cover, cfg.cap)?;
        let win = ctx.window(cfg.radius)?;
        let e = enumerate_strings(win.presentation(), 0)?;
        let mut mods = Vec::new();
        for w in &e.strings {
            let m = string_module(win.presentation(), w)?;
            if win.is_interior(&m) {
                mods.push(m);
            }
        }
        let mut failures = 0usize;
        let mut pairs = 0usize;
        let mut sample = Vec::new();
        for x in &mods {
            for y in &mods {
                pairs += 1;
                let rep = ctx.covering_hom_check(&win, x, y)?;
                if !rep.holds() {
                    failures += 1;
                }
                if sample.len() < 8 && rep.lhs > 0 {
                    sample.push(CoverCheckSample {
                        x_dims: x.dims().to_vec(),
                        y_dims: y.dims().to_vec(),
                        pushed_hom: rep.lhs,
                        translate_sum: rep.rhs,
                        contributions: rep.contributions.clone(),
                    });
                }
            }
        }
        Ok((
            CoverCheckData {
                window_radius: cfg.radius,
                interior_modules: mods.len(),
                pairs,
                failures,
                sample,
            },
            field,
        ))
    };
    match run() {
        Ok((data, field)) => {
            let pass = data.failures == 0;
            let env = envelope("cover-check", Some(&loaded), cfg, field, data);
            let text = match cfg.format {
                OutputFormat::Json => env.to_json(),
                _ => format!(
                    "covering identity at radius {}: {} interior modules, {} pairs, {} failures",
                    env.data.window_radius,
                    env.data.interior_modules,
                    env.data.pairs,
                    env.data.failures
                ),
            };
            CommandOutput { text, exit_code: if pass { 0 } else { 1 } }
        }
        Err(e) => failure("cover-check", &e),
    }
}

pub fn cmd_lines(path: &str, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("lines", &e),
    };
    let run = || -> Result<(LinesData, Field), Error> {
        let cover = cover_of(&loaded.parsed)?;
        let field = cover.field();
        let slice = cover.slice().clone();
        let ctx = CoveringContext::new(cover, cfg.cap)?;
        let orbits = ctx
            .periodic_lines(cfg.radius)?
            .into_iter()
            .map(|l| LineData {
                start: slice.vertex_name(l.start_orbit).to_string(),
                period_letters: l
                    .letters
                    .iter()
                    .map(|lt| {
                        let n = &slice.arrow(lt.arrow).name;
                        if lt.forward {
                            n.clone()
                        } else {
                            format!("{n}~")
                        }
                    })
                    .collect(),
                period_shift: l.period_shift.clone(),
            })
            .collect();
        Ok((LinesData { orbits }, field))
    };
    match run() {
        Ok((data, field)) => {
            let env = envelope("lines", Some(&loaded), cfg, field, data);
            match cfg.format {
                OutputFormat::Json => ok(env.to_json()),
                _ => {
                    let mut s =
                        format!("{} periodic line orbit(s)\n", env.data.orbits.len());
                    for l in &env.data.orbits {
                        s.push_str(&format!(
                            "  start {} period {:?} shift {:?}\n",
                            l.start, l.period_letters, l.period_shift
                        ));
                    }
                    ok(s)
                }
            }
        }
        Err(e) => failure("lines", &e),
    }
}

pub enum KindInput {
    /// Push-down of the simple at a slab vertex (always of the first kind).
    Simple(String),
    /// Band module on the n-th periodic line with scalar companion.
    Band(usize, i64),
    /// A serialized representation over the orbit presentation.
    ModuleFile(String),
}

pub fn cmd_kind(path: &str, input: KindInput, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("kind", &e),
    };
    let run = || -> Result<(KindData, Field), Error> {
        let cover = cover_of(&loaded.parsed)?;
        let field = cover.field();
        if !loaded.parsed.simply_connected {
            return Err(Error::HypothesesNotCertified(
                "fixture must carry `assert simply-connected` for kind classification".into(),
            ));
        }
        let ctx = CoveringContext::new(cover, cfg.cap)?;
        let (label, module): (String, Representation) = match &input {
            KindInput::Simple(v) => {
                let win = ctx.window(2)?;
                let slice_idx = ctx
                    .periodic()
                    .slice()
                    .vertex_index(v)
                    .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
                let w = win
                    .find_vertex(slice_idx, &vec![0; ctx.periodic().rank()])
                    .ok_or(Error::EmptyWindow)?;
                let s = quivercover::rep::simple_at(win.presentation(), w)?;
                (format!("push-down of simple at {v}"), ctx.push_down(&win, &s)?)
            }
            KindInput::Band(idx, lambda) => {
                let lines = ctx.periodic_lines(cfg.radius)?;
                let line = lines
                    .get(*idx)
                    .ok_or_else(|| Error::BadQuiver(format!("no periodic line #{idx}")))?;
                let companion = reproduce::scalar_companion(field, *lambda);
                (
                    format!("band on line #{idx} with companion [{lambda}]"),
                    ctx.band_from_line(line, &companion)?,
                )
            }
            KindInput::ModuleFile(file) => {
                let text = std::fs::read_to_string(file)?;
                let m = parse_representation(ctx.orbit(), &text)?;
                (format!("module from {file}"), m)
            }
        };
        let verdict = ctx.classify_module_kind(&module, cfg.radius.max(1), true, cfg.seed)?;
        let data = kind_data(label, &verdict, field);
        Ok((data, field))
    };
    match run() {
        Ok((data, field)) => {
            let env = envelope("kind", Some(&loaded), cfg, field, data);
            match cfg.format {
                OutputFormat::Json => ok(env.to_json()),
                _ => ok(format!("{}: {} kind", env.data.input, env.data.verdict)),
            }
        }
        Err(e) => failure("kind", &e),
    }
}

fn kind_data(input: String, verdict: &KindVerdict, field: Field) -> KindData {
    match verdict {
        KindVerdict::FirstKind { witness, .. } => KindData {
            input,
            verdict: "first".into(),
            witness_dims: Some(witness.dims().to_vec()),
            companion: None,
            evidence: None,
        },
        KindVerdict::SecondKind { companion, .. } => KindData {
            input,
            verdict: "second".into(),
            witness_dims: None,
            companion: Some(
                companion.entries().iter().map(|e| field.format_scalar(e)).collect(),
            ),
            evidence: None,
        },
        KindVerdict::Inconclusive { evidence, .. } => KindData {
            input,
            verdict: "inconclusive".into(),
            witness_dims: None,
            companion: None,
            evidence: Some(evidence.clone()),
        },
    }
}

pub enum FunctorKindInput {
    /// `Hom(-, X_i)` for the i-th canonical indecomposable.
    Yoneda(usize),
    /// The functor corresponding to the band with scalar companion on the
    /// mesh cover's n-th periodic line.
    CycleBand(usize, i64),
    /// A serialized module over the mesh presentation.
    MeshModuleFile(String),
}

pub fn cmd_functor_kind(path: &str, input: FunctorKindInput, cfg: &RunConfig) -> CommandOutput {
    let loaded = match load(path, cfg) {
        Ok(l) => l,
        Err(e) => return failure("functor-kind", &e),
    };
    let run = || -> Result<(KindData, Field), Error> {
        let pres = algebra_of(&loaded.parsed, cfg.cap)?;
        let field = pres.field();
        if !loaded.parsed.simply_connected {
            return Err(Error::HypothesesNotCertified(
                "fixture must carry `assert simply-connected`".into(),
            ));
        }
        let tq = ar_quiver(&pres, 0, cfg.seed)?;
        let mesh = mesh_presentation(&tq, cfg.cap)?;
        let (label, functor): (String, FpFunctor) = match &input {
            FunctorKindInput::Yoneda(i) => {
                let v = tq
                    .vertices
                    .get(*i)
                    .ok_or_else(|| Error::UnknownVertex(format!("#{i}")))?;
                (
                    format!("hom functor at {}", v.label),
                    FpFunctor::representable(&v.rep),
                )
            }
            FunctorKindInput::CycleBand(idx, lambda) => {
                let cover = quivercover::artheory::translation_cover(&mesh)?;
                let mctx = CoveringContext::with_orbit(cover, mesh.pres.clone(), cfg.cap)?;
                let lines = mctx.periodic_lines(cfg.radius)?;
                let line = lines
                    .get(*idx)
                    .ok_or_else(|| Error::BadQuiver(format!("no periodic line #{idx}")))?;
                let companion = reproduce::scalar_companion(field, *lambda);
                let band = mctx.band_from_line(line, &companion)?;
                let u = quivercover::functor::from_ind_module(&band, &tq, &mesh)?;
                (format!("cycle band functor, companion [{lambda}]"), u)
            }
            FunctorKindInput::MeshModuleFile(file) => {
                let text = std::fs::read_to_string(file)?;
                let n = parse_representation(&mesh.pres, &text)?;
                let u = quivercover::functor::from_ind_module(&n, &tq, &mesh)?;
                (format!("functor of mesh module from {file}"), u)
            }
        };
        let verdict =
            classify_functor_kind(&functor, &tq, &mesh, cfg.radius.max(1), true, cfg.seed)?;
        Ok((kind_data(label, &verdict, field), field))
    };
    match run() {
        Ok((data, field)) => {
            let env = envelope("functor-kind", Some(&loaded), cfg, field, data);
            match cfg.format {
                OutputFormat::Json => ok(env.to_json()),
                _ => ok(format!("{}: {} kind", env.data.input, env.data.verdict)),
            }
        }
        Err(e) => failure("functor-kind", &e),
    }
}

pub fn cmd_reproduce(cfg: &RunConfig) -> CommandOutput {
    let results = match cfg.field_override {
        Some(f) => reproduce::run_criteria(f, cfg.seed),
        None => reproduce::run_all(cfg.seed),
    };
    let all_pass = results.iter().all(|r| r.pass);
    let data = ReproduceData {
        criteria: results
            .iter()
            .map(|r| CriterionData {
                id: r.id,
                name: r.name.clone(),
                pass: r.pass,
                signature: r.signature.clone(),
                detail: r.detail.clone(),
                millis: r.millis,
            })
            .collect(),
        all_pass,
    };
    let field = cfg.field_override.unwrap_or(Field::Prime(101));
    let text = match cfg.format {
        OutputFormat::Json => envelope("reproduce", None, cfg, field, data).to_json(),
        _ => {
            let mut s = String::new();
            for c in &data.criteria {
                s.push_str(&format!(
                    "criterion {:2} {}: {} ({} ms) - {}\n",
                    c.id,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.millis,
                    c.detail
                ));
            }
            s.push_str(if all_pass { "all criteria pass\n" } else { "FAILURES PRESENT\n" });
            s
        }
    };
    CommandOutput { text, exit_code: if all_pass { 0 } else { 1 } }
}
