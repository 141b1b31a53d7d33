//! Quivers, path words, relations and bound presentations.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * a path `c_1 ... c_n` runs from `s(c_1)` to `t(c_n)`, composing left to
//!   right (`p.q` means "first `p`, then `q`");
//! * the morphism space `R(x, y)` of the presented category is spanned by
//!   residue classes of paths **from `y` to `x`**;
//! * consequently a right module assigns to an arrow `a: u -> v` a linear map
//!   `M(a): M(u) -> M(v)` along the arrow, and `P_x = R(-, x)` has basis at
//!   `y` the residue classes of paths from `x` to `y`.
//!
//! A presentation must be certified (`certify`) before hom spaces can be
//! queried: certification finds the least `N` below the cap such that every
//! path of length `N` lies in the relation ideal, then tabulates a residue
//! basis for every ordered vertex pair. Only relations whose terms all share
//! one path length are supported; that covers zero relations and mesh
//! relations, the two kinds that actually occur here.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::RowSpan;
use std::collections::HashMap;
use std::fmt;

pub const DEFAULT_ADMISSIBILITY_CAP: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vmap: HashMap<String, usize>,
    amap: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        let mut vmap = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vmap.insert(v.clone(), i).is_some() {
                return Err(Error::BadQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut amap = HashMap::new();
        let mut built = Vec::new();
        for (i, (name, src, dst)) in arrows.into_iter().enumerate() {
            let s = *vmap
                .get(&src)
                .ok_or_else(|| Error::BadQuiver(format!("arrow `{name}`: unknown vertex `{src}`")))?;
            let d = *vmap
                .get(&dst)
                .ok_or_else(|| Error::BadQuiver(format!("arrow `{name}`: unknown vertex `{dst}`")))?;
            if amap.insert(name.clone(), i).is_some() {
                return Err(Error::BadQuiver(format!("duplicate arrow `{name}`")));
            }
            built.push(Arrow { name, src: s, dst: d });
        }
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (i, a) in built.iter().enumerate() {
            out[a.src].push(i);
            inc[a.dst].push(i);
        }
        Ok(Quiver { vertices, arrows: built, vmap, amap, out, inc })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vmap.get(name).copied()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.amap.get(name).copied()
    }

    pub fn arrows_from(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn arrows_into(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// The opposite quiver: same names, arrows reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                (a.name.clone(), self.vertices[a.dst].clone(), self.vertices[a.src].clone())
            })
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver is valid")
    }
}

/// A composable word of arrows, or a stationary path at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    start: usize,
    arrows: Vec<usize>,
}

impl PathWord {
    pub fn stationary(v: usize) -> PathWord {
        PathWord { start: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<PathWord> {
        if arrows.is_empty() {
            return Err(Error::BadQuiver("empty arrow word; use `stationary`".into()));
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).dst != q.arrow(w[1]).src {
                return Err(Error::BadQuiver(format!(
                    "arrows `{}` and `{}` do not compose",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        Ok(PathWord { start: q.arrow(arrows[0]).src, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn src(&self) -> usize {
        self.start
    }

    pub fn dst(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&a) => q.arrow(a).dst,
            None => self.start,
        }
    }

    /// Concatenation `self` then `other`.
    pub fn compose(&self, q: &Quiver, other: &PathWord) -> Result<PathWord> {
        if self.dst(q) != other.src() {
            return Err(Error::BadQuiver("paths do not compose".into()));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Ok(PathWord { start: self.start, arrows })
    }

    pub fn append_arrow(&self, q: &Quiver, a: usize) -> Result<PathWord> {
        if self.dst(q) != q.arrow(a).src {
            return Err(Error::BadQuiver("arrow does not extend path".into()));
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Ok(PathWord { start: self.start, arrows })
    }

    pub fn reversed(&self, q: &Quiver) -> PathWord {
        if self.arrows.is_empty() {
            return self.clone();
        }
        let mut arrows: Vec<usize> = self.arrows.clone();
        arrows.reverse();
        PathWord { start: q.arrow(*arrows.first().unwrap()).dst, arrows }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_name(self.start))
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrow(a).name.clone())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, PathWord)>,
}

impl Relation {
    pub fn src(&self) -> usize {
        self.terms[0].1.src()
    }

    pub fn dst(&self, q: &Quiver) -> usize {
        self.terms[0].1.dst(q)
    }

    pub fn degree(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn display(&self, q: &Quiver, field: &Field) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{}*{}", field.format_scalar(c), p.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Residue data for one ordered pair of vertices: all paths `u -> v` shorter
/// than the nilpotency bound, the ideal span over them, and the surviving
/// basis (non-pivot paths).
#[derive(Debug, Clone)]
pub struct PathTable {
    paths: Vec<PathWord>,
    index_of: HashMap<PathWord, usize>,
    ideal: RowSpan,
    basis: Vec<usize>,
}

impl PathTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_paths(&self) -> Vec<&PathWord> {
        self.basis.iter().map(|&i| &self.paths[i]).collect()
    }

    pub fn all_paths(&self) -> &[PathWord] {
        &self.paths
    }
}

#[derive(Debug, Clone)]
pub struct BoundPresentation {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    bound: Option<u32>,
    tables: Vec<PathTable>,
}

impl PartialEq for BoundPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations && self.field == other.field
    }
}

impl fmt::Display for BoundPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} arrows, {} relations",
            self.quiver.vertex_count(),
            self.quiver.arrow_count(),
            self.relations.len()
        )
    }
}

impl BoundPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, field: Field) -> Result<BoundPresentation> {
        for (k, rel) in relations.iter().enumerate() {
            validate_relation(&quiver, rel, &field, k)?;
        }
        Ok(BoundPresentation { quiver, relations, field, bound: None, tables: Vec::new() })
    }

    /// Constructs and certifies in one step.
    pub fn certified(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: Field,
        cap: u32,
    ) -> Result<BoundPresentation> {
        let mut p = BoundPresentation::new(quiver, relations, field)?;
        p.certify(cap)?;
        Ok(p)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bound(&self) -> Result<u32> {
        self.bound.ok_or(Error::NotCertified)
    }

    pub fn is_certified(&self) -> bool {
        self.bound.is_some()
    }

    /// Finds the least `N <= cap` with every length-`N` path in the ideal and
    /// tabulates residue bases. Errors with `AdmissibilityCapExceeded` when no
    /// such `N` exists below the cap.
    pub fn certify(&mut self, cap: u32) -> Result<()> {
        if self.bound.is_some() {
            return Ok(());
        }
        let nv = self.quiver.vertex_count();
        let f = self.field;
        // paths_by_len[l][pair] and ideal spans per pair per length
        let pair = |u: usize, v: usize| u * nv + v;
        let mut paths_by_len: Vec<Vec<Vec<PathWord>>> = Vec::new();
        let mut ideal_by_len: Vec<Vec<RowSpan>> = Vec::new();

        // length 0
        let mut level0 = vec![Vec::new(); nv * nv];
        for v in 0..nv {
            level0[pair(v, v)].push(PathWord::stationary(v));
        }
        paths_by_len.push(level0);
        ideal_by_len.push((0..nv * nv).map(|_| RowSpan::new(f, 0)).collect());

        let mut bound = None;
        for len in 1..=cap {
            let len = len as usize;
            // Extend paths.
            let mut level = vec![Vec::new(); nv * nv];
            let mut any = false;
            for u in 0..nv {
                for v in 0..nv {
                    for p in &paths_by_len[len - 1][pair(u, v)] {
                        for &a in self.quiver.arrows_from(v) {
                            let q = p.append_arrow(&self.quiver, a).expect("extension composes");
                            level[pair(u, self.quiver.arrow(a).dst)].push(q);
                            any = true;
                        }
                    }
                }
            }
            for l in level.iter_mut() {
                l.sort();
            }
            if !any {
                // No paths of this length at all: vacuously every such path
                // is in the ideal.
                bound = Some(len as u32);
                paths_by_len.push(level);
                ideal_by_len.push((0..nv * nv).map(|_| RowSpan::new(f, 0)).collect());
                break;
            }

            // Ideal at this length: arrow * I + I * arrow + relations of this degree.
            let mut spans: Vec<RowSpan> = level
                .iter()
                .map(|paths| RowSpan::new(f, paths.len()))
                .collect();
            let coords = |paths: &Vec<PathWord>, terms: &[(Scalar, PathWord)]| -> Vec<Scalar> {
                let mut v = vec![f.zero(); paths.len()];
                for (c, p) in terms {
                    let i = paths.binary_search(p).expect("term path enumerated");
                    v[i] = f.add(&v[i], c);
                }
                v
            };
            // relations of degree == len
            for rel in &self.relations {
                if rel.degree() == len {
                    let pr = pair(rel.src(), rel.dst(&self.quiver));
                    let vec = coords(&level[pr], &rel.terms);
                    spans[pr].insert(vec);
                }
            }
            // previous-level ideal elements, composed with one arrow on either side
            for u in 0..nv {
                for v in 0..nv {
                    let prev_paths = &paths_by_len[len - 1][pair(u, v)];
                    let prev_span = &ideal_by_len[len - 1][pair(u, v)];
                    for row in 0..prev_span.rank() {
                        let rowvec = prev_span_row(prev_span, row);
                        // extend on the right by every arrow out of v
                        for &a in self.quiver.arrows_from(v) {
                            let dst = self.quiver.arrow(a).dst;
                            let terms: Vec<(Scalar, PathWord)> = rowvec
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !f.is_zero(c))
                                .map(|(i, c)| {
                                    (c.clone(), prev_paths[i].append_arrow(&self.quiver, a).unwrap())
                                })
                                .collect();
                            let pr = pair(u, dst);
                            let vec = coords(&level[pr], &terms);
                            spans[pr].insert(vec);
                        }
                        // extend on the left by every arrow into u
                        for &a in self.quiver.arrows_into(u) {
                            let srcv = self.quiver.arrow(a).src;
                            let head = PathWord::from_arrows(&self.quiver, vec![a]).unwrap();
                            let terms: Vec<(Scalar, PathWord)> = rowvec
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !f.is_zero(c))
                                .map(|(i, c)| {
                                    (c.clone(), head.compose(&self.quiver, &prev_paths[i]).unwrap())
                                })
                                .collect();
                            let pr = pair(srcv, v);
                            let vec = coords(&level[pr], &terms);
                            spans[pr].insert(vec);
                        }
                    }
                }
            }

            let all_in_ideal = (0..nv * nv).all(|pr| spans[pr].rank() == level[pr].len());
            paths_by_len.push(level);
            ideal_by_len.push(spans);
            if all_in_ideal {
                bound = Some(len as u32);
                break;
            }
        }

        let Some(n) = bound else {
            return Err(Error::AdmissibilityCapExceeded { cap });
        };

        // Assemble residue tables from lengths 0 .. n-1.
        let mut tables = Vec::with_capacity(nv * nv);
        for u in 0..nv {
            for v in 0..nv {
                let mut paths = Vec::new();
                for len in 0..n as usize {
                    paths.extend(paths_by_len[len][pair(u, v)].iter().cloned());
                }
                let mut index_of = HashMap::new();
                for (i, p) in paths.iter().enumerate() {
                    index_of.insert(p.clone(), i);
                }
                let mut ideal = RowSpan::new(f, paths.len());
                let mut offset = 0usize;
                for len in 0..n as usize {
                    let span = &ideal_by_len[len][pair(u, v)];
                    let local_dim = paths_by_len[len][pair(u, v)].len();
                    for row in 0..span.rank() {
                        let local = prev_span_row(span, row);
                        let mut vec = vec![f.zero(); paths.len()];
                        vec[offset..offset + local_dim].clone_from_slice(&local);
                        ideal.insert(vec);
                    }
                    offset += local_dim;
                }
                let pivot_set: std::collections::HashSet<usize> =
                    ideal.pivots().iter().copied().collect();
                let basis: Vec<usize> = (0..paths.len()).filter(|i| !pivot_set.contains(i)).collect();
                tables.push(PathTable { paths, index_of, ideal, basis });
            }
        }
        self.bound = Some(n);
        self.tables = tables;
        Ok(())
    }

    fn table(&self, u: usize, v: usize) -> &PathTable {
        &self.tables[u * self.quiver.vertex_count() + v]
    }

    /// Residue data for paths `u -> v` (certified presentations only).
    pub fn paths_table(&self, u: usize, v: usize) -> Result<&PathTable> {
        if !self.is_certified() {
            return Err(Error::NotCertified);
        }
        Ok(self.table(u, v))
    }

    /// Dimension of the morphism space `R(x, y)`, spanned by paths `y -> x`.
    pub fn hom_dim(&self, x: usize, y: usize) -> Result<usize> {
        Ok(self.paths_table(y, x)?.dim())
    }

    /// Basis of `R(x, y)` as residue classes of paths from `y` to `x`.
    pub fn path_basis(&self, x: usize, y: usize) -> Result<Vec<PathWord>> {
        Ok(self.paths_table(y, x)?.basis_paths().into_iter().cloned().collect())
    }

    /// Coordinates of a path's residue class in the basis of its table.
    pub fn reduce_path(&self, p: &PathWord) -> Result<Vec<Scalar>> {
        self.reduce_combination(std::slice::from_ref(&(self.field.one(), p.clone())))
    }

    /// Coordinates of a linear combination of parallel paths.
    pub fn reduce_combination(&self, terms: &[(Scalar, PathWord)]) -> Result<Vec<Scalar>> {
        if !self.is_certified() {
            return Err(Error::NotCertified);
        }
        let f = self.field;
        let n = self.bound.unwrap() as usize;
        let (u, v) = (terms[0].1.src(), terms[0].1.dst(&self.quiver));
        let t = self.table(u, v);
        let mut vec = vec![f.zero(); t.paths.len()];
        for (c, p) in terms {
            if p.src() != u || p.dst(&self.quiver) != v {
                return Err(Error::BadRelation("combination of non-parallel paths".into()));
            }
            if p.len() >= n {
                continue; // lies in the ideal
            }
            let i = *t.index_of.get(p).expect("short path is enumerated");
            vec[i] = f.add(&vec[i], c);
        }
        let red = t.ideal.reduce(vec);
        Ok(t.basis.iter().map(|&i| red[i].clone()).collect())
    }

    /// Opposite presentation: arrows and relation paths reversed.
    pub fn opposite(&self) -> Result<BoundPresentation> {
        let q = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (c.clone(), p.reversed(&self.quiver)))
                    .collect(),
            })
            .collect();
        let mut p = BoundPresentation::new(q, relations, self.field)?;
        if let Some(n) = self.bound {
            p.certify(n.max(2))?;
        }
        Ok(p)
    }

    /// Full subcategory on a convex vertex subset, or a witness path.
    pub fn convex_restrict(&self, keep: &[usize]) -> Result<BoundPresentation> {
        let inside: std::collections::HashSet<usize> = keep.iter().copied().collect();
        // A violating witness is a directed path between kept vertices whose
        // intermediate vertices all lie outside. Search outward from each
        // kept vertex through dropped vertices only.
        for &u in keep {
            let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
            let mut seen = vec![false; self.quiver.vertex_count()];
            stack.push((u, Vec::new()));
            while let Some((v, trail)) = stack.pop() {
                for &a in self.quiver.arrows_from(v) {
                    let w = self.quiver.arrow(a).dst;
                    let mut t2 = trail.clone();
                    t2.push(a);
                    if inside.contains(&w) {
                        if !trail.is_empty() {
                            let names: Vec<&str> =
                                t2.iter().map(|&i| self.quiver.arrow(i).name.as_str()).collect();
                            return Err(Error::NotConvex(format!(
                                "path {} leaves the subset and returns",
                                names.join(".")
                            )));
                        }
                    } else if !seen[w] {
                        seen[w] = true;
                        stack.push((w, t2));
                    }
                }
            }
        }
        // Renumber and keep relations fully supported inside.
        let mut order: Vec<usize> = keep.to_vec();
        order.sort_unstable();
        order.dedup();
        let vertices: Vec<String> =
            order.iter().map(|&v| self.quiver.vertex_name(v).to_string()).collect();
        let arrows: Vec<(String, String, String)> = self
            .quiver
            .arrows()
            .iter()
            .filter(|a| inside.contains(&a.src) && inside.contains(&a.dst))
            .map(|a| {
                (
                    a.name.clone(),
                    self.quiver.vertex_name(a.src).to_string(),
                    self.quiver.vertex_name(a.dst).to_string(),
                )
            })
            .collect();
        let q = Quiver::new(vertices, arrows)?;
        let relations: Vec<Relation> = self
            .relations
            .iter()
            .filter(|r| {
                r.terms.iter().all(|(_, p)| {
                    let mut vs = vec![p.src()];
                    for &a in p.arrows() {
                        vs.push(self.quiver.arrow(a).dst);
                    }
                    vs.iter().all(|v| inside.contains(v))
                })
            })
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        let arrows = p
                            .arrows()
                            .iter()
                            .map(|&a| q.arrow_index(&self.quiver.arrow(a).name).unwrap())
                            .collect::<Vec<_>>();
                        let np = if arrows.is_empty() {
                            PathWord::stationary(
                                q.vertex_index(self.quiver.vertex_name(p.src())).unwrap(),
                            )
                        } else {
                            PathWord::from_arrows(&q, arrows).unwrap()
                        };
                        (c.clone(), np)
                    })
                    .collect(),
            })
            .collect();
        let cap = self.bound.map(|n| n.max(2)).unwrap_or(DEFAULT_ADMISSIBILITY_CAP);
        BoundPresentation::certified(q, relations, self.field, cap)
    }
}

fn prev_span_row(span: &RowSpan, row: usize) -> Vec<Scalar> {
    span.row(row).to_vec()
}

/// Convenience builder used by tests and fixtures: single-term zero relation.
pub fn zero_relation(q: &Quiver, field: &Field, arrows: &[&str]) -> Result<Relation> {
    let idx: Vec<usize> = arrows
        .iter()
        .map(|a| q.arrow_index(a).ok_or_else(|| Error::BadQuiver(format!("unknown arrow `{a}`"))))
        .collect::<Result<_>>()?;
    Ok(Relation { terms: vec![(field.one(), PathWord::from_arrows(q, idx)?)] })
}

fn validate_relation(q: &Quiver, rel: &Relation, field: &Field, k: usize) -> Result<()> {
    if rel.terms.is_empty() {
        return Err(Error::BadRelation(format!("relation #{k} has no terms")));
    }
    if rel.terms.iter().all(|(c, _)| field.is_zero(c)) {
        return Err(Error::BadRelation(format!("relation #{k} has no nonzero coefficient")));
    }
    let (s, d, l) = (rel.src(), rel.dst(q), rel.degree());
    for (_, p) in &rel.terms {
        if p.len() < 2 {
            return Err(Error::BadRelation(format!(
                "relation #{k}: admissibility requires path length >= 2"
            )));
        }
        if p.src() != s || p.dst(q) != d {
            return Err(Error::BadRelation(format!("relation #{k}: terms are not parallel")));
        }
        if p.len() != l {
            return Err(Error::BadRelation(format!(
                "relation #{k}: mixed term lengths are not supported"
            )));
        }
    }
    Ok(())
}

/// The example-5.1-shaped test algebra: commutative square quiver with both
/// length-2 compositions set to zero. Used by many tests.
#[cfg(test)]
pub(crate) fn square_gentle(field: Field) -> BoundPresentation {
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into(), "4".into()],
        vec![
            ("a".into(), "1".into(), "2".into()),
            ("b".into(), "1".into(), "3".into()),
            ("d".into(), "2".into(), "4".into()),
            ("g".into(), "3".into(), "4".into()),
        ],
    )
    .unwrap();
    let r1 = zero_relation(&q, &field, &["a", "d"]).unwrap();
    let r2 = zero_relation(&q, &field, &["b", "g"]).unwrap();
    BoundPresentation::certified(q, vec![r1, r2], field, DEFAULT_ADMISSIBILITY_CAP).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> Field {
        Field::prime(101).unwrap()
    }

    #[test]
    fn loop_square_bound_two() {
        let q = Quiver::new(
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
        )
        .unwrap();
        let rel = zero_relation(&q, &f101(), &["x", "x"]).unwrap();
        let p = BoundPresentation::certified(q, vec![rel], f101(), 32).unwrap();
        assert_eq!(p.bound().unwrap(), 2);
        // R(v, v) = span{e, x}
        assert_eq!(p.hom_dim(0, 0).unwrap(), 2);
    }

    #[test]
    fn a2_vacuous_bound_two() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap();
        let p = BoundPresentation::certified(q, vec![], f101(), 32).unwrap();
        assert_eq!(p.bound().unwrap(), 2);
        // morphisms 1 -> 2 are spanned by paths 2 -> 1: none
        assert_eq!(p.hom_dim(0, 1).unwrap(), 0);
        // morphisms 2 -> 1 are spanned by paths 1 -> 2: the arrow
        assert_eq!(p.hom_dim(1, 0).unwrap(), 1);
    }

    #[test]
    fn square_gentle_bound_and_homs() {
        let p = square_gentle(f101());
        assert_eq!(p.bound().unwrap(), 2);
        // both length-2 paths 1 -> 4 are relations: R(4, 1) = paths 1 -> 4 = 0
        assert_eq!(p.hom_dim(3, 0).unwrap(), 0);
        assert_eq!(p.path_basis(3, 0).unwrap().len(), 0);
        // stationary class survives everywhere
        assert_eq!(p.hom_dim(0, 0).unwrap(), 1);
    }

    #[test]
    fn triple_loop_basis() {
        let q = Quiver::new(
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
        )
        .unwrap();
        let rel = zero_relation(&q, &f101(), &["x", "x", "x"]).unwrap();
        let p = BoundPresentation::certified(q, vec![rel], f101(), 32).unwrap();
        assert_eq!(p.bound().unwrap(), 3);
        assert_eq!(p.hom_dim(0, 0).unwrap(), 3); // e, x, x^2
    }

    #[test]
    fn cap_exceeded_is_detected() {
        let q = Quiver::new(
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
        )
        .unwrap();
        let err = BoundPresentation::certified(q, vec![], f101(), 8).unwrap_err();
        assert!(matches!(err, Error::AdmissibilityCapExceeded { cap: 8 }));
    }

    #[test]
    fn convex_restrict_witnesses() {
        let p = square_gentle(f101());
        // restriction to all vertices is fine
        assert!(p.convex_restrict(&[0, 1, 2, 3]).is_ok());
        // {1, 4} fails: a path through 2 (or 3) leaves and returns
        let err = p.convex_restrict(&[0, 3]).unwrap_err();
        assert!(matches!(err, Error::NotConvex(_)));
        // single vertex is convex
        let sub = p.convex_restrict(&[0]).unwrap();
        assert_eq!(sub.quiver().vertex_count(), 1);
    }

    #[test]
    fn path_round_trip_in_basis() {
        let p = square_gentle(f101());
        let q = p.quiver();
        let a = q.arrow_index("a").unwrap();
        let path = PathWord::from_arrows(q, vec![a]).unwrap();
        let coords = p.reduce_path(&path).unwrap();
        let basis = p.paths_table(0, 1).unwrap().basis_paths();
        let mut rebuilt = vec![];
        for (c, b) in coords.iter().zip(&basis) {
            if !p.field().is_zero(c) {
                rebuilt.push((*b).clone());
            }
        }
        assert_eq!(rebuilt, vec![path]);
    }

    #[test]
    fn mesh_style_relation_reduces() {
        // two parallel length-2 paths with p + q = 0: residue of q is -p
        let f = f101();
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "1".into(), "3".into()),
                ("d".into(), "2".into(), "4".into()),
                ("g".into(), "3".into(), "4".into()),
            ],
        )
        .unwrap();
        let ad = PathWord::from_arrows(&q, vec![0, 2]).unwrap();
        let bg = PathWord::from_arrows(&q, vec![1, 3]).unwrap();
        let mesh = Relation { terms: vec![(f.one(), ad.clone()), (f.one(), bg.clone())] };
        let p = BoundPresentation::certified(q, vec![mesh], f, 32).unwrap();
        assert_eq!(p.bound().unwrap(), 3);
        assert_eq!(p.paths_table(0, 3).unwrap().dim(), 1);
        let ca = p.reduce_path(&ad).unwrap();
        let cb = p.reduce_path(&bg).unwrap();
        assert_eq!(f.add(&ca[0], &cb[0]), f.zero());
    }
}
