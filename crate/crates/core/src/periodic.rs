//! Translation-periodic presentations of infinite covers, finite convex
//! windows into them, and the orbit-category construction.
//!
//! An infinite cover with a free `Z^k` translation action is stored as one
//! fundamental slab: a finite quiver whose arrows carry translation offsets.
//! The cover's vertex set is `slice vertices x Z^k`; the lift of arrow `a`
//! starting at `(v, t)` ends at `(dst a, t + shift a)`. Relations are given by
//! one representative per orbit (all terms starting at offset zero and ending
//! at a common offset).
//!
//! A window is the directed convex hull of a coordinate box, taken inside a
//! padded search region; its full subcategory is presented by the arrows and
//! relation instances lying entirely inside, which is exact because convexity
//! keeps every internal path internal.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{BoundPresentation, PathWord, Quiver, Relation};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPresentation {
    slice: Quiver,
    rank: usize,
    shifts: Vec<Vec<i64>>,
    relations: Vec<Relation>,
    field: Field,
}

impl PeriodicPresentation {
    pub fn new(
        slice: Quiver,
        rank: usize,
        shifts: Vec<Vec<i64>>,
        relations: Vec<Relation>,
        field: Field,
    ) -> Result<PeriodicPresentation> {
        if shifts.len() != slice.arrow_count() {
            return Err(Error::BadQuiver("one shift vector per arrow required".into()));
        }
        for (i, s) in shifts.iter().enumerate() {
            if s.len() != rank {
                return Err(Error::BadQuiver(format!(
                    "arrow `{}`: shift has length {}, group rank is {rank}",
                    slice.arrow(i).name,
                    s.len()
                )));
            }
        }
        let p = PeriodicPresentation { slice, rank, shifts, relations, field };
        for (k, r) in p.relations.iter().enumerate() {
            let first = p.total_shift(&r.terms[0].1);
            for (_, path) in &r.terms {
                if p.total_shift(path) != first {
                    return Err(Error::BadRelation(format!(
                        "relation #{k}: terms end at different translation offsets"
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn slice(&self) -> &Quiver {
        &self.slice
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn shift(&self, arrow: usize) -> &[i64] {
        &self.shifts[arrow]
    }

    pub fn total_shift(&self, p: &PathWord) -> Vec<i64> {
        let mut t = vec![0i64; self.rank];
        for &a in p.arrows() {
            for (i, s) in self.shifts[a].iter().enumerate() {
                t[i] += s;
            }
        }
        t
    }

    fn max_abs_shift(&self) -> i64 {
        self.shifts
            .iter()
            .flat_map(|s| s.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    fn max_relation_len(&self) -> usize {
        self.relations.iter().map(|r| r.degree()).max().unwrap_or(2)
    }

    /// The orbit category `R/G`: one vertex and arrow per orbit, relations
    /// folded. The default renaming prefixes vertices with `orbit:`.
    pub fn orbit_presentation(&self, cap: u32) -> Result<BoundPresentation> {
        self.orbit_presentation_named(cap, |v| format!("orbit:{v}"))
    }

    pub fn orbit_presentation_named(
        &self,
        cap: u32,
        rename: impl Fn(&str) -> String,
    ) -> Result<BoundPresentation> {
        let vertices: Vec<String> =
            self.slice.vertex_names().iter().map(|v| rename(v)).collect();
        let arrows: Vec<(String, String, String)> = self
            .slice
            .arrows()
            .iter()
            .map(|a| {
                (
                    a.name.clone(),
                    rename(self.slice.vertex_name(a.src)),
                    rename(self.slice.vertex_name(a.dst)),
                )
            })
            .collect();
        let q = Quiver::new(vertices, arrows)?;
        let relations: Vec<Relation> = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        let arrows = p.arrows().to_vec();
                        let np = PathWord::from_arrows(&q, arrows).expect("same arrow indices");
                        (c.clone(), np)
                    })
                    .collect(),
            })
            .collect();
        BoundPresentation::certified(q, relations, self.field, cap)
    }

    /// Convex window around the coordinate box `[-radius, radius]^k`.
    pub fn build_window(&self, radius: i64, cap: u32) -> Result<WindowCategory> {
        if radius < 1 && self.rank > 0 {
            return Err(Error::EmptyWindow);
        }
        let pad = (self.max_relation_len() as i64 + 4) * self.max_abs_shift().max(1);
        let bound = radius + pad;
        let in_box = |t: &[i64], r: i64| t.iter().all(|x| x.abs() <= r);

        // Base box.
        let mut verts: Vec<(usize, Vec<i64>)> = Vec::new();
        let mut coords = vec![-radius; self.rank];
        loop {
            for v in 0..self.slice.vertex_count() {
                verts.push((v, coords.clone()));
            }
            // advance odometer
            let mut i = 0;
            loop {
                if i == self.rank {
                    break;
                }
                coords[i] += 1;
                if coords[i] <= radius {
                    break;
                }
                coords[i] = -radius;
                i += 1;
            }
            if self.rank == 0 || i == self.rank {
                break;
            }
        }
        let base: HashSet<(usize, Vec<i64>)> = verts.iter().cloned().collect();

        // Directed hull: base ∪ (forward-reachable ∩ backward-reachable),
        // searched inside the padded box.
        let reach = |forward: bool| -> HashSet<(usize, Vec<i64>)> {
            let mut seen: HashSet<(usize, Vec<i64>)> = base.clone();
            let mut queue: VecDeque<(usize, Vec<i64>)> = verts.iter().cloned().collect();
            while let Some((v, t)) = queue.pop_front() {
                let arrows = if forward {
                    self.slice.arrows_from(v)
                } else {
                    self.slice.arrows_into(v)
                };
                for &a in arrows {
                    let arr = self.slice.arrow(a);
                    let mut nt = t.clone();
                    for (i, s) in self.shifts[a].iter().enumerate() {
                        nt[i] += if forward { *s } else { -*s };
                    }
                    let nv = if forward { arr.dst } else { arr.src };
                    if !in_box(&nt, bound) {
                        continue;
                    }
                    let key = (nv, nt);
                    if !seen.contains(&key) {
                        seen.insert(key.clone());
                        queue.push_back(key);
                    }
                }
            }
            seen
        };
        let fwd = reach(true);
        let bwd = reach(false);
        let mut hull: Vec<(usize, Vec<i64>)> = fwd.intersection(&bwd).cloned().collect();
        for h in &hull {
            if !in_box(&h.1, bound - 1) {
                return Err(Error::WindowOverflow(format!(
                    "convex hull reached the search boundary at ({}, {:?})",
                    self.slice.vertex_name(h.0),
                    h.1
                )));
            }
        }
        hull.sort();
        if hull.is_empty() {
            return Err(Error::EmptyWindow);
        }

        let vindex: HashMap<(usize, Vec<i64>), usize> =
            hull.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let names: Vec<String> = hull
            .iter()
            .map(|(v, t)| window_vertex_name(self.slice.vertex_name(*v), t))
            .collect();

        // Arrows with both endpoints inside; track boundary contacts.
        let mut arrows: Vec<(String, String, String)> = Vec::new();
        let mut arrow_lift: Vec<(usize, Vec<i64>)> = Vec::new();
        let mut boundary: HashSet<usize> = HashSet::new();
        for (wi, (v, t)) in hull.iter().enumerate() {
            for &a in self.slice.arrows_from(*v) {
                let arr = self.slice.arrow(a);
                let mut nt = t.clone();
                for (i, s) in self.shifts[a].iter().enumerate() {
                    nt[i] += s;
                }
                match vindex.get(&(arr.dst, nt.clone())) {
                    Some(&wj) => {
                        arrows.push((
                            window_arrow_name(&arr.name, t),
                            names[wi].clone(),
                            names[wj].clone(),
                        ));
                        arrow_lift.push((a, t.clone()));
                    }
                    None => {
                        boundary.insert(wi);
                    }
                }
            }
            for &a in self.slice.arrows_into(*v) {
                let arr = self.slice.arrow(a);
                let mut st = t.clone();
                for (i, s) in self.shifts[a].iter().enumerate() {
                    st[i] -= s;
                }
                if !vindex.contains_key(&(arr.src, st)) {
                    boundary.insert(wi);
                }
            }
        }

        let quiver = Quiver::new(names, arrows)?;
        // Relation instances fully inside the hull.
        let mut relations: Vec<Relation> = Vec::new();
        for rel in &self.relations {
            let src = rel.src();
            for (v, t) in &hull {
                if *v != src {
                    continue;
                }
                let mut ok = true;
                let mut terms = Vec::new();
                for (c, p) in &rel.terms {
                    let mut cur = t.clone();
                    let mut arrow_idx = Vec::new();
                    for &a in p.arrows() {
                        let name = window_arrow_name(&self.slice.arrow(a).name, &cur);
                        match quiver.arrow_index(&name) {
                            Some(i) => arrow_idx.push(i),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                        for (i, s) in self.shifts[a].iter().enumerate() {
                            cur[i] += s;
                        }
                    }
                    if !ok {
                        break;
                    }
                    terms.push((c.clone(), PathWord::from_arrows(&quiver, arrow_idx)?));
                }
                if ok {
                    relations.push(Relation { terms });
                }
            }
        }
        let pres = Arc::new(BoundPresentation::certified(quiver, relations, self.field, cap)?);
        Ok(WindowCategory {
            pres,
            periodic: self.clone(),
            verts: hull,
            vindex,
            arrow_lift,
            boundary,
            radius,
        })
    }
}

pub fn window_vertex_name(orbit: &str, t: &[i64]) -> String {
    match t.len() {
        0 => orbit.to_string(),
        1 => format!("{orbit}@{}", t[0]),
        _ => {
            let inner = t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            format!("{orbit}@({inner})")
        }
    }
}

fn window_arrow_name(arrow: &str, t: &[i64]) -> String {
    window_vertex_name(arrow, t)
}

/// A finite convex window into the cover, with its lift data.
#[derive(Debug, Clone)]
pub struct WindowCategory {
    pres: Arc<BoundPresentation>,
    periodic: PeriodicPresentation,
    verts: Vec<(usize, Vec<i64>)>,
    vindex: HashMap<(usize, Vec<i64>), usize>,
    arrow_lift: Vec<(usize, Vec<i64>)>,
    boundary: HashSet<usize>,
    radius: i64,
}

impl WindowCategory {
    pub fn presentation(&self) -> &Arc<BoundPresentation> {
        &self.pres
    }

    pub fn periodic(&self) -> &PeriodicPresentation {
        &self.periodic
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    /// (orbit vertex, translation coordinates) of a window vertex.
    pub fn lift(&self, w: usize) -> (usize, &[i64]) {
        (self.verts[w].0, &self.verts[w].1)
    }

    /// (slice arrow, source coordinates) of a window arrow.
    pub fn arrow_lift(&self, a: usize) -> (usize, &[i64]) {
        (self.arrow_lift[a].0, &self.arrow_lift[a].1)
    }

    pub fn find_vertex(&self, orbit: usize, coords: &[i64]) -> Option<usize> {
        self.vindex.get(&(orbit, coords.to_vec())).copied()
    }

    pub fn boundary(&self) -> &HashSet<usize> {
        &self.boundary
    }

    /// True when the support avoids every boundary vertex.
    pub fn is_interior(&self, m: &crate::rep::Representation) -> bool {
        m.support().iter().all(|v| !self.boundary.contains(v))
    }

    /// Translates a representation by `g`; errors when the translated support
    /// (or any arrow between supported vertices) leaves the window.
    pub fn translate(
        &self,
        m: &crate::rep::Representation,
        g: &[i64],
    ) -> Result<crate::rep::Representation> {
        if g.len() != self.periodic.rank() {
            return Err(Error::UnsupportedGroup(format!(
                "offset has length {}, group rank is {}",
                g.len(),
                self.periodic.rank()
            )));
        }
        let f = self.pres.field();
        let q = self.pres.quiver();
        let mut dims = vec![0usize; self.verts.len()];
        for w in 0..self.verts.len() {
            if m.dim_at(w) == 0 {
                continue;
            }
            let (orbit, t) = self.lift(w);
            let nt: Vec<i64> = t.iter().zip(g).map(|(a, b)| a + b).collect();
            match self.find_vertex(orbit, &nt) {
                Some(nw) => dims[nw] = m.dim_at(w),
                None => {
                    return Err(Error::WindowOverflow(format!(
                        "translate: support leaves the window at {}",
                        q.vertex_name(w)
                    )))
                }
            }
        }
        let mut mats: Vec<crate::matrix::Matrix> = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                crate::matrix::Matrix::zero(f, dims[arr.dst], dims[arr.src])
            })
            .collect();
        for a in 0..q.arrow_count() {
            let src_dim = m.arrow_matrix(a).cols();
            let dst_dim = m.arrow_matrix(a).rows();
            if src_dim == 0 || dst_dim == 0 {
                continue;
            }
            let (sa, t) = self.arrow_lift(a);
            let nt: Vec<i64> = t.iter().zip(g).map(|(x, y)| x + y).collect();
            let name = window_arrow_name(&self.periodic.slice().arrow(sa).name, &nt);
            let na = q.arrow_index(&name).ok_or_else(|| {
                Error::WindowOverflow("translate: arrow image leaves the window".into())
            })?;
            mats[na] = m.arrow_matrix(a).clone();
        }
        crate::rep::Representation::new(self.pres.clone(), dims, mats)
    }

    /// Offsets `g` for which `g . supp(m)` meets `supp(n)`.
    pub fn overlap_offsets(
        &self,
        m: &crate::rep::Representation,
        n: &crate::rep::Representation,
    ) -> Vec<Vec<i64>> {
        let mut out: HashSet<Vec<i64>> = HashSet::new();
        for &wm in &m.support() {
            let (om, tm) = self.lift(wm);
            for &wn in &n.support() {
                let (on, tn) = self.lift(wn);
                if om == on {
                    let g: Vec<i64> = tn.iter().zip(tm).map(|(a, b)| a - b).collect();
                    out.insert(g);
                }
            }
        }
        let mut v: Vec<Vec<i64>> = out.into_iter().collect();
        v.sort();
        v
    }
}

/// The periodic zigzag cover used across tests: slab vertices 1..4, arrows
/// a: 1->2, b: 1->3, d: 2->4 (offset 0) and g: 3->4 (offset +1); relations
/// a.d and b.g. Folds to the square gentle algebra.
#[cfg(test)]
pub(crate) fn zigzag_cover(field: Field) -> PeriodicPresentation {
    use crate::quiver::zero_relation;
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
    let shifts = vec![vec![0], vec![0], vec![0], vec![1]];
    PeriodicPresentation::new(q, 1, shifts, vec![r1, r2], field).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_category_recovers_square_algebra() {
        let f = Field::prime(101).unwrap();
        let p = zigzag_cover(f);
        let orbit = p.orbit_presentation(32).unwrap();
        assert_eq!(orbit.bound().unwrap(), 2);
        assert_eq!(orbit.quiver().vertex_count(), 4);
        assert_eq!(orbit.quiver().arrow_count(), 4);
        // both compositions 1 -> 4 vanish
        let v1 = orbit.quiver().vertex_index("orbit:1").unwrap();
        let v4 = orbit.quiver().vertex_index("orbit:4").unwrap();
        assert_eq!(orbit.hom_dim(v4, v1).unwrap(), 0);
    }

    #[test]
    fn rank_zero_orbit_is_identity() {
        let f = Field::prime(101).unwrap();
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap();
        let p = PeriodicPresentation::new(q, 0, vec![vec![]], vec![], f).unwrap();
        let orbit = p.orbit_presentation(8).unwrap();
        assert_eq!(orbit.quiver().vertex_count(), 2);
        let w = p.build_window(1, 8).unwrap();
        assert_eq!(w.vertex_count(), 2);
    }

    #[test]
    fn windows_nest_and_contain_slabs() {
        let f = Field::prime(101).unwrap();
        let p = zigzag_cover(f);
        let w2 = p.build_window(2, 32).unwrap();
        let w3 = p.build_window(3, 32).unwrap();
        // radius 2 window: 5 slabs of 4 vertices, monotone shifts keep the
        // box convex
        assert_eq!(w2.vertex_count(), 20);
        assert_eq!(w3.vertex_count(), 28);
        for w in 0..w2.vertex_count() {
            let (v, t) = w2.lift(w);
            assert!(w3.find_vertex(v, t).is_some());
        }
        assert_eq!(w2.presentation().bound().unwrap(), 2);
    }

    #[test]
    fn window_boundary_and_translation() {
        let f = Field::prime(101).unwrap();
        let p = zigzag_cover(f);
        let w = p.build_window(2, 32).unwrap();
        // vertex 4 at the left edge misses its incoming g-arrow
        let v4_left = w.find_vertex(3, &[-2]).unwrap();
        assert!(w.boundary().contains(&v4_left));
        // an interior simple translates freely by small offsets
        let mid = w.find_vertex(0, &[0]).unwrap();
        let s = crate::rep::simple_at(w.presentation(), mid).unwrap();
        assert!(w.is_interior(&s));
        let t = w.translate(&s, &[1]).unwrap();
        assert_eq!(t.dim_at(w.find_vertex(0, &[1]).unwrap()), 1);
        // translating to the far edge eventually fails
        assert!(w.translate(&s, &[5]).is_err());
    }
}
