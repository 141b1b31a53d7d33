//! The line-oriented text format for presentations and representations.
//!
//! Fixture grammar (UTF-8, one declaration per line, `#` starts a comment):
//!
//! ```text
//! field p=101            # or: field rationals
//! group rank 1           # optional; 0 when absent
//! vertex 1
//! arrow a : 1 -> 2 shift (1)     # shift only when group rank > 0
//! relation 1*a.d + -1*b.g        # coefficient * dot-separated arrow path
//! assert simply-connected        # optional hypothesis assertion
//! ```
//!
//! Unknown keywords are rejected with their line number. A file with group
//! rank 0 describes a finite bound presentation; positive rank describes a
//! translation-periodic cover.
//!
//! Representations serialize to a similarly shaped block (`representation`
//! ... `end`) that round-trips bit-exactly.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::periodic::PeriodicPresentation;
use crate::quiver::{BoundPresentation, PathWord, Quiver, Relation};
use crate::rep::Representation;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub enum Fixture {
    Algebra(BoundPresentation),
    Cover(PeriodicPresentation),
}

#[derive(Debug, Clone)]
pub struct ParsedFixture {
    pub fixture: Fixture,
    pub simply_connected: bool,
    pub field: Field,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: line + 1, msg: msg.into() }
}

pub fn parse_fixture(text: &str) -> Result<ParsedFixture> {
    parse_fixture_with_field(text, None)
}

/// Parses with the declared field replaced by `override_field`; coefficients
/// are read in the overriding field, which is what makes the two-prime rerun
/// policy work on one set of fixture files.
pub fn parse_fixture_with_field(
    text: &str,
    override_field: Option<Field>,
) -> Result<ParsedFixture> {
    let mut field: Option<Field> = None;
    let mut rank: usize = 0;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut shifts: Vec<Vec<i64>> = Vec::new();
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut simply_connected = false;

    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "field" => {
                if field.is_some() {
                    return Err(perr(ln, "duplicate field declaration"));
                }
                if let Some(f) = override_field {
                    field = Some(f);
                } else if rest == "rationals" {
                    field = Some(Field::Rationals);
                } else if let Some(p) = rest.strip_prefix("p=") {
                    let p: u64 = p.trim().parse().map_err(|_| perr(ln, "bad prime"))?;
                    field = Some(Field::prime(p).map_err(|e| perr(ln, e.to_string()))?);
                } else {
                    return Err(perr(ln, "expected `field p=<prime>` or `field rationals`"));
                }
            }
            "group" => {
                let r = rest
                    .strip_prefix("rank")
                    .map(str::trim)
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| perr(ln, "expected `group rank <k>`"))?;
                rank = r;
            }
            "vertex" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(perr(ln, "expected `vertex <id>`"));
                }
                vertices.push(rest.to_string());
            }
            "arrow" => {
                // arrow <id> : <src> -> <dst> [shift (t,...)]
                let (name, tail) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(ln, "expected `arrow <id> : <src> -> <dst>`"))?;
                let name = name.trim().to_string();
                let (ends, shift_part) = match tail.split_once("shift") {
                    Some((e, s)) => (e.trim(), Some(s.trim())),
                    None => (tail.trim(), None),
                };
                let (src, dst) = ends
                    .split_once("->")
                    .ok_or_else(|| perr(ln, "expected `<src> -> <dst>`"))?;
                let shift = match shift_part {
                    None => vec![0i64; rank],
                    Some(s) => {
                        let inner = s
                            .strip_prefix('(')
                            .and_then(|x| x.strip_suffix(')'))
                            .ok_or_else(|| perr(ln, "expected `shift (t1,...,tk)`"))?;
                        let vals: Vec<i64> = inner
                            .split(',')
                            .map(|x| x.trim().parse::<i64>())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| perr(ln, "bad shift coordinates"))?;
                        if vals.len() != rank {
                            return Err(perr(
                                ln,
                                format!("shift has {} coordinates, group rank is {rank}", vals.len()),
                            ));
                        }
                        vals
                    }
                };
                arrows.push((name, src.trim().to_string(), dst.trim().to_string()));
                shifts.push(shift);
            }
            "relation" => relation_lines.push((ln, rest.to_string())),
            "assert" => match rest {
                "simply-connected" => simply_connected = true,
                other => return Err(perr(ln, format!("unknown assertion `{other}`"))),
            },
            other => return Err(perr(ln, format!("unknown keyword `{other}`"))),
        }
    }

    let field = field.ok_or_else(|| perr(0, "missing field declaration"))?;
    let quiver = Quiver::new(vertices, arrows).map_err(|e| perr(0, e.to_string()))?;
    let mut relations = Vec::new();
    for (ln, body) in relation_lines {
        relations.push(parse_relation(&quiver, &field, &body, ln)?);
    }

    let fixture = if rank == 0 {
        Fixture::Algebra(BoundPresentation::new(quiver, relations, field)?)
    } else {
        Fixture::Cover(PeriodicPresentation::new(quiver, rank, shifts, relations, field)?)
    };
    Ok(ParsedFixture { fixture, simply_connected, field })
}

fn parse_relation(q: &Quiver, field: &Field, body: &str, ln: usize) -> Result<Relation> {
    let mut terms = Vec::new();
    for term in body.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(perr(ln, "empty relation term"));
        }
        let (coeff, path) = term
            .split_once('*')
            .ok_or_else(|| perr(ln, "expected `<coeff>*<path>` in relation"))?;
        let c = field
            .parse_scalar(coeff)
            .map_err(|_| perr(ln, format!("bad coefficient `{coeff}`")))?;
        let mut arrow_idx = Vec::new();
        for part in path.trim().split('.') {
            let a = q
                .arrow_index(part.trim())
                .ok_or_else(|| perr(ln, format!("unknown arrow `{part}` in relation")))?;
            arrow_idx.push(a);
        }
        let pw = PathWord::from_arrows(q, arrow_idx).map_err(|e| perr(ln, e.to_string()))?;
        terms.push((c, pw));
    }
    Ok(Relation { terms })
}

fn format_field(f: &Field) -> String {
    match f {
        Field::Prime(p) => format!("p={p}"),
        Field::Rationals => "rationals".to_string(),
    }
}

/// Fixture-grammar rendering of a finite bound presentation (group rank 0).
pub fn serialize_bound(p: &BoundPresentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    out.push_str(&format!("field {}\n", format_field(&p.field())));
    for v in q.vertex_names() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            a.name,
            q.vertex_name(a.src),
            q.vertex_name(a.dst)
        ));
    }
    for r in p.relations() {
        out.push_str(&format!("relation {}\n", render_relation(q, &p.field(), r)));
    }
    out
}

/// Fixture-grammar rendering of a periodic cover.
pub fn serialize_periodic(p: &PeriodicPresentation) -> String {
    let q = p.slice();
    let mut out = String::new();
    out.push_str(&format!("field {}\n", format_field(&p.field())));
    out.push_str(&format!("group rank {}\n", p.rank()));
    for v in q.vertex_names() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for (i, a) in q.arrows().iter().enumerate() {
        let shift = p.shift(i);
        if shift.iter().all(|&s| s == 0) {
            out.push_str(&format!(
                "arrow {} : {} -> {}\n",
                a.name,
                q.vertex_name(a.src),
                q.vertex_name(a.dst)
            ));
        } else {
            let coords: Vec<String> = shift.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "arrow {} : {} -> {} shift ({})\n",
                a.name,
                q.vertex_name(a.src),
                q.vertex_name(a.dst),
                coords.join(",")
            ));
        }
    }
    for r in p.relations() {
        out.push_str(&format!("relation {}\n", render_relation(q, &p.field(), r)));
    }
    out
}

fn render_relation(q: &Quiver, field: &Field, r: &Relation) -> String {
    r.terms
        .iter()
        .map(|(c, p)| format!("{}*{}", field.format_scalar_portable(c), p.display(q)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Bit-exact text form of a representation over a known presentation.
pub fn serialize_representation(m: &Representation) -> String {
    let pres = m.presentation();
    let q = pres.quiver();
    let f = m.field();
    let mut out = String::from("representation\n");
    out.push_str(&format!("field {}\n", format_field(&f)));
    for v in 0..q.vertex_count() {
        out.push_str(&format!("dim {} {}\n", q.vertex_name(v), m.dim_at(v)));
    }
    for a in 0..q.arrow_count() {
        let mat = m.arrow_matrix(a);
        let entries: Vec<String> =
            mat.entries().iter().map(|e| f.format_scalar(e)).collect();
        out.push_str(&format!(
            "mat {} {}x{} {}\n",
            q.arrow(a).name,
            mat.rows(),
            mat.cols(),
            entries.join(" ")
        ));
    }
    out.push_str("end\n");
    out
}

pub fn parse_representation(
    pres: &Arc<BoundPresentation>,
    text: &str,
) -> Result<Representation> {
    let q = pres.quiver();
    let f = pres.field();
    let mut dims = vec![0usize; q.vertex_count()];
    let mut mats: Vec<Option<Matrix>> = vec![None; q.arrow_count()];
    let mut saw_header = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "representation" => saw_header = true,
            "end" => break,
            "field" => {
                let expect = format_field(&f);
                if rest != expect {
                    return Err(perr(ln, format!("field `{rest}` does not match `{expect}`")));
                }
            }
            "dim" => {
                let (v, n) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| perr(ln, "expected `dim <vertex> <n>`"))?;
                let vi = q
                    .vertex_index(v.trim())
                    .ok_or_else(|| perr(ln, format!("unknown vertex `{v}`")))?;
                dims[vi] = n.trim().parse().map_err(|_| perr(ln, "bad dimension"))?;
            }
            "mat" => {
                let mut parts = rest.split_whitespace();
                let name = parts.next().ok_or_else(|| perr(ln, "expected arrow name"))?;
                let shape = parts.next().ok_or_else(|| perr(ln, "expected RxC shape"))?;
                let (r, c) = shape
                    .split_once('x')
                    .ok_or_else(|| perr(ln, "expected RxC shape"))?;
                let rows: usize = r.parse().map_err(|_| perr(ln, "bad row count"))?;
                let cols: usize = c.parse().map_err(|_| perr(ln, "bad column count"))?;
                let ai = q
                    .arrow_index(name)
                    .ok_or_else(|| perr(ln, format!("unknown arrow `{name}`")))?;
                let mut entries = Vec::with_capacity(rows * cols);
                for tok in parts {
                    entries.push(f.parse_scalar(tok).map_err(|e| perr(ln, e.to_string()))?);
                }
                if entries.len() != rows * cols {
                    return Err(perr(ln, "entry count does not match the shape"));
                }
                mats[ai] = Some(Matrix::from_rows(f, rows, cols, entries)?);
            }
            other => return Err(perr(ln, format!("unknown keyword `{other}`"))),
        }
    }
    if !saw_header {
        return Err(perr(0, "missing `representation` header"));
    }
    let mats: Vec<Matrix> = mats
        .into_iter()
        .enumerate()
        .map(|(a, m)| {
            m.unwrap_or_else(|| {
                let arr = q.arrow(a);
                Matrix::zero(f, dims[arr.dst], dims[arr.src])
            })
        })
        .collect();
    Representation::new(pres.clone(), dims, mats)
}

/// FNV-1a digest of a fixture file, recorded in reports for provenance.
pub fn content_digest(text: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DEFAULT_ADMISSIBILITY_CAP;

    const SQUARE: &str = "\
# the four-vertex gentle algebra
field p=101
vertex 1
vertex 2
vertex 3
vertex 4
arrow a : 1 -> 2
arrow b : 1 -> 3
arrow d : 2 -> 4
arrow g : 3 -> 4
relation 1*a.d
relation 1*b.g
";

    #[test]
    fn parse_square_fixture() {
        let parsed = parse_fixture(SQUARE).unwrap();
        let Fixture::Algebra(mut p) = parsed.fixture else {
            panic!("expected an algebra");
        };
        p.certify(DEFAULT_ADMISSIBILITY_CAP).unwrap();
        assert_eq!(p.bound().unwrap(), 2);
        assert_eq!(p.quiver().vertex_count(), 4);
    }

    #[test]
    fn parse_periodic_fixture() {
        let text = "\
field p=101
group rank 1
vertex 1
vertex 2
arrow a : 1 -> 2
arrow b : 2 -> 1 shift (1)
";
        let parsed = parse_fixture(text).unwrap();
        let Fixture::Cover(c) = parsed.fixture else { panic!("expected a cover") };
        assert_eq!(c.rank(), 1);
        assert_eq!(c.shift(1), &[1]);
    }

    #[test]
    fn rejects_unknown_keys_with_line_numbers() {
        let text = "field p=101\nvortex 1\n";
        match parse_fixture(text).unwrap_err() {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("vortex"));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn rejects_short_relations() {
        let text = "\
field p=101
vertex 1
vertex 2
arrow a : 1 -> 2
relation 1*a
";
        let err = parse_fixture(text).unwrap_err();
        assert!(matches!(err, Error::BadRelation(_)));
    }

    #[test]
    fn representation_round_trip_is_bit_exact() {
        let parsed = parse_fixture(SQUARE).unwrap();
        let Fixture::Algebra(mut p) = parsed.fixture else { unreachable!() };
        p.certify(DEFAULT_ADMISSIBILITY_CAP).unwrap();
        let pres = Arc::new(p);
        let m = crate::rep::projective_at(&pres, 0).unwrap();
        let text = serialize_representation(&m);
        let back = parse_representation(&pres, &text).unwrap();
        assert_eq!(back, m);
        assert_eq!(serialize_representation(&back), text);
    }

    #[test]
    fn fixture_round_trip_through_serializer() {
        let parsed = parse_fixture(SQUARE).unwrap();
        let Fixture::Algebra(p) = parsed.fixture else { unreachable!() };
        let text = serialize_bound(&p);
        let reparsed = parse_fixture(&text).unwrap();
        let Fixture::Algebra(p2) = reparsed.fixture else { unreachable!() };
        assert_eq!(p, p2);
    }
}
