//! String and band combinatorics for special biserial presentations.
//!
//! A string is a reduced walk of arrows traversed forward or backward such
//! that no maximal directed run contains a (monomial) relation path; its thin
//! module has dimension at most one per walk position. A band is a cyclically
//! reduced cyclic string with both orientations present that is not a proper
//! power; placing an invertible companion block on the closing letter yields
//! the band modules. Enumeration is capped and certifies representation
//! finiteness only when the string set stabilises below the cap and no band
//! exists.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::BoundPresentation;
use crate::rep::Representation;
use std::collections::HashSet;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub forward: bool,
}

/// A reduced walk; `letters` empty means the trivial walk at `base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringWalk {
    pub base: usize,
    pub letters: Vec<Letter>,
}

impl StringWalk {
    pub fn trivial(v: usize) -> StringWalk {
        StringWalk { base: v, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn letter_from(pres: &BoundPresentation, l: Letter) -> usize {
        let a = pres.quiver().arrow(l.arrow);
        if l.forward {
            a.src
        } else {
            a.dst
        }
    }

    fn letter_to(pres: &BoundPresentation, l: Letter) -> usize {
        let a = pres.quiver().arrow(l.arrow);
        if l.forward {
            a.dst
        } else {
            a.src
        }
    }

    /// Vertices visited, one per walk position (length + 1 entries).
    pub fn positions(&self, pres: &BoundPresentation) -> Vec<usize> {
        let mut out = vec![self.base];
        for &l in &self.letters {
            out.push(Self::letter_to(pres, l));
        }
        out
    }

    pub fn end(&self, pres: &BoundPresentation) -> usize {
        *self.positions(pres).last().unwrap()
    }

    pub fn inverse(&self, pres: &BoundPresentation) -> StringWalk {
        if self.letters.is_empty() {
            return self.clone();
        }
        let letters: Vec<Letter> = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter { arrow: l.arrow, forward: !l.forward })
            .collect();
        StringWalk { base: Self::letter_to(pres, *self.letters.last().unwrap()), letters }
    }

    fn encode(&self) -> Vec<(usize, bool)> {
        self.letters.iter().map(|l| (l.arrow, l.forward)).collect()
    }

    /// Canonical representative of `{walk, inverse walk}`.
    pub fn canonical(&self, pres: &BoundPresentation) -> StringWalk {
        if self.letters.is_empty() {
            return self.clone();
        }
        let inv = self.inverse(pres);
        if self.encode() <= inv.encode() {
            self.clone()
        } else {
            inv
        }
    }

    pub fn display(&self, pres: &BoundPresentation) -> String {
        if self.letters.is_empty() {
            return format!("e_{}", pres.quiver().vertex_name(self.base));
        }
        self.letters
            .iter()
            .map(|l| {
                let n = &pres.quiver().arrow(l.arrow).name;
                if l.forward {
                    n.clone()
                } else {
                    format!("{n}~")
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Monomial relation paths, as arrow index sequences.
fn monomial_relations(pres: &BoundPresentation) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for r in pres.relations() {
        if r.terms.len() != 1 {
            return Err(Error::NotSpecialBiserial(format!(
                "non-monomial relation `{}`",
                r.display(pres.quiver(), &pres.field())
            )));
        }
        out.push(r.terms[0].1.arrows().to_vec());
    }
    Ok(out)
}

/// Special biserial test with a witness on failure: at most two arrows in and
/// out of each vertex, and each arrow has at most one surviving successor and
/// predecessor modulo the (monomial) relations.
pub fn detect_special_biserial(pres: &BoundPresentation) -> Result<()> {
    let q = pres.quiver();
    let rels = monomial_relations(pres)?;
    let is_rel_pair = |a: usize, b: usize| rels.iter().any(|r| r.len() == 2 && r[0] == a && r[1] == b);
    for v in 0..q.vertex_count() {
        if q.arrows_from(v).len() > 2 {
            return Err(Error::NotSpecialBiserial(format!(
                "vertex `{}` has more than two outgoing arrows",
                q.vertex_name(v)
            )));
        }
        if q.arrows_into(v).len() > 2 {
            return Err(Error::NotSpecialBiserial(format!(
                "vertex `{}` has more than two incoming arrows",
                q.vertex_name(v)
            )));
        }
    }
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let successors: Vec<usize> = q
            .arrows_from(arr.dst)
            .iter()
            .copied()
            .filter(|&b| !is_rel_pair(a, b))
            .collect();
        if successors.len() > 1 {
            return Err(Error::NotSpecialBiserial(format!(
                "arrow `{}` has {} surviving successors",
                arr.name,
                successors.len()
            )));
        }
        let predecessors: Vec<usize> = q
            .arrows_into(arr.src)
            .iter()
            .copied()
            .filter(|&b| !is_rel_pair(b, a))
            .collect();
        if predecessors.len() > 1 {
            return Err(Error::NotSpecialBiserial(format!(
                "arrow `{}` has {} surviving predecessors",
                arr.name,
                predecessors.len()
            )));
        }
    }
    Ok(())
}

/// Checks that no maximal directed run of the letter sequence contains a
/// relation path as a contiguous subword.
fn runs_avoid_relations(
    pres: &BoundPresentation,
    letters: &[Letter],
    rels: &[Vec<usize>],
) -> bool {
    let mut i = 0usize;
    while i < letters.len() {
        let dir = letters[i].forward;
        let mut j = i;
        while j < letters.len() && letters[j].forward == dir {
            j += 1;
        }
        // directed run letters[i..j]; read in path order
        let mut run: Vec<usize> = letters[i..j].iter().map(|l| l.arrow).collect();
        if !dir {
            run.reverse();
        }
        for r in rels {
            if r.len() <= run.len() {
                if run.windows(r.len()).any(|w| w == r.as_slice()) {
                    return false;
                }
            }
        }
        let _ = pres;
        i = j;
    }
    true
}

fn walk_is_reduced(letters: &[Letter]) -> bool {
    letters
        .windows(2)
        .all(|w| !(w[0].arrow == w[1].arrow && w[0].forward != w[1].forward))
}

#[derive(Debug, Clone)]
pub struct StringEnumeration {
    /// Canonical representatives up to inversion, sorted by length then
    /// encoding.
    pub strings: Vec<StringWalk>,
    /// True when no string reached the cap (so nothing longer can exist).
    pub stable: bool,
    /// Band representatives up to rotation and inversion found below the cap.
    pub bands: Vec<StringWalk>,
    pub cap: usize,
}

impl StringEnumeration {
    pub fn certifies_finite(&self) -> bool {
        self.stable && self.bands.is_empty()
    }
}

/// Enumerates all strings (up to inversion) and bands (up to rotation and
/// inversion) of length at most `cap`; `cap = 0` picks the default
/// `4 * arrow count`.
pub fn enumerate_strings(pres: &Arc<BoundPresentation>, cap: usize) -> Result<StringEnumeration> {
    detect_special_biserial(pres)?;
    let q = pres.quiver();
    let rels = monomial_relations(pres)?;
    let cap = if cap == 0 { 4 * q.arrow_count().max(1) } else { cap };

    let mut seen: HashSet<Vec<(usize, bool)>> = HashSet::new();
    let mut strings: Vec<StringWalk> = Vec::new();
    let mut hit_cap = false;

    for v in 0..q.vertex_count() {
        strings.push(StringWalk::trivial(v));
    }

    // DFS over extensions on the right; starting from every vertex covers
    // every walk (each walk is reachable by right-extensions of its start).
    let mut stack: Vec<StringWalk> = (0..q.vertex_count()).map(StringWalk::trivial).collect();
    while let Some(w) = stack.pop() {
        if w.len() == cap {
            hit_cap = true;
            continue;
        }
        let endv = w.end(pres);
        let mut exts: Vec<Letter> = Vec::new();
        for &a in q.arrows_from(endv) {
            exts.push(Letter { arrow: a, forward: true });
        }
        for &a in q.arrows_into(endv) {
            exts.push(Letter { arrow: a, forward: false });
        }
        exts.sort();
        for l in exts {
            let mut letters = w.letters.clone();
            letters.push(l);
            if !walk_is_reduced(&letters) {
                continue;
            }
            if !runs_avoid_relations(pres, &letters, &rels) {
                continue;
            }
            let nw = StringWalk { base: w.base, letters };
            let canon = nw.canonical(pres);
            if seen.insert(canon.encode()) {
                strings.push(canon);
            }
            stack.push(nw);
        }
    }
    strings.sort_by_key(|w| (w.len(), w.base, w.encode()));

    // Bands: cyclic walks; search cyclically reduced primitive cycles.
    let mut bands: Vec<StringWalk> = Vec::new();
    let mut band_seen: HashSet<Vec<(usize, bool)>> = HashSet::new();
    for w in &strings {
        if w.len() < 2 || w.end(pres) != w.base {
            continue;
        }
        // cyclic reducedness at the seam
        let first = w.letters[0];
        let last = *w.letters.last().unwrap();
        if first.arrow == last.arrow && first.forward != last.forward {
            continue;
        }
        // both orientations present
        if w.letters.iter().all(|l| l.forward) || w.letters.iter().all(|l| !l.forward) {
            continue;
        }
        // relation avoidance across the seam: check the doubled walk
        let mut doubled = w.letters.clone();
        doubled.extend(w.letters.iter().copied());
        if !runs_avoid_relations(pres, &doubled, &rels) {
            continue;
        }
        // primitive (not a proper power)
        if is_proper_power(&w.encode()) {
            continue;
        }
        // canonical up to rotation and inversion
        let canon = band_canonical(pres, w);
        if band_seen.insert(canon.encode()) {
            bands.push(canon);
        }
    }
    bands.sort_by_key(|w| (w.len(), w.base, w.encode()));

    Ok(StringEnumeration { strings, stable: !hit_cap, bands, cap })
}

fn is_proper_power(enc: &[(usize, bool)]) -> bool {
    let n = enc.len();
    for period in 1..n {
        if n % period == 0 && (0..n).all(|i| enc[i] == enc[i % period]) {
            return true;
        }
    }
    false
}

fn band_canonical(pres: &BoundPresentation, w: &StringWalk) -> StringWalk {
    let mut best: Option<StringWalk> = None;
    for cand in [w.clone(), w.inverse(pres)] {
        for rot in 0..cand.len() {
            let mut letters = cand.letters.clone();
            letters.rotate_left(rot);
            let base = StringWalk::letter_from(pres, letters[0]);
            let r = StringWalk { base, letters };
            if best.as_ref().map_or(true, |b| r.encode() < b.encode()) {
                best = Some(r);
            }
        }
    }
    best.unwrap()
}

/// The thin module of a string: one basis vector per walk position.
pub fn string_module(pres: &Arc<BoundPresentation>, w: &StringWalk) -> Result<Representation> {
    let q = pres.quiver();
    let f = pres.field();
    let positions = w.positions(pres);
    let nv = q.vertex_count();
    let mut dims = vec![0usize; nv];
    let mut slot = Vec::with_capacity(positions.len());
    for &v in &positions {
        slot.push(dims[v]);
        dims[v] += 1;
    }
    let mut mats: Vec<Matrix> = (0..q.arrow_count())
        .map(|a| {
            let arr = q.arrow(a);
            Matrix::zero(f, dims[arr.dst], dims[arr.src])
        })
        .collect();
    for (i, &l) in w.letters.iter().enumerate() {
        let (from_pos, to_pos) = (i, i + 1);
        if l.forward {
            // arrow maps position i to position i+1
            mats[l.arrow].set(slot[to_pos], slot[from_pos], f.one());
        } else {
            // arrow maps position i+1 to position i
            mats[l.arrow].set(slot[from_pos], slot[to_pos], f.one());
        }
    }
    Representation::new(pres.clone(), dims, mats)
}

/// The band module: identity blocks on all letters, the companion block on
/// the closing letter. Dimension is `period length * companion size`.
pub fn band_module(
    pres: &Arc<BoundPresentation>,
    band: &StringWalk,
    companion: &Matrix,
) -> Result<Representation> {
    if companion.rows() != companion.cols()
        || companion.rows() == 0
        || companion.rank() < companion.rows()
    {
        return Err(Error::NonInvertibleCompanion);
    }
    if band.is_empty() || band.end(pres) != band.base {
        return Err(Error::BadRepresentation("band walk must be cyclic".into()));
    }
    let q = pres.quiver();
    let f = pres.field();
    let m = companion.rows();
    let k = band.len(); // positions 0..k-1, cyclic
    let positions = &band.positions(pres)[..k];
    let nv = q.vertex_count();
    let mut dims = vec![0usize; nv];
    let mut slot = Vec::with_capacity(k);
    for &v in positions {
        slot.push(dims[v]);
        dims[v] += 1;
    }
    let mut mats: Vec<Matrix> = (0..q.arrow_count())
        .map(|a| {
            let arr = q.arrow(a);
            Matrix::zero(f, dims[arr.dst] * m, dims[arr.src] * m)
        })
        .collect();
    let id = Matrix::identity(f, m);
    for (i, &l) in band.letters.iter().enumerate() {
        let from_pos = i;
        let to_pos = (i + 1) % k;
        let block = if i + 1 == k { companion } else { &id };
        let (row_slot, col_slot) = if l.forward {
            (slot[to_pos], slot[from_pos])
        } else {
            (slot[from_pos], slot[to_pos])
        };
        let mat = &mut mats[l.arrow];
        for r in 0..m {
            for c in 0..m {
                mat.set(row_slot * m + r, col_slot * m + c, block.get(r, c).clone());
            }
        }
    }
    let dims_scaled: Vec<usize> = dims.iter().map(|&d| d * m).collect();
    Representation::new(pres.clone(), dims_scaled, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quiver::square_gentle;

    fn pres() -> Arc<BoundPresentation> {
        Arc::new(square_gentle(Field::prime(101).unwrap()))
    }

    #[test]
    fn square_algebra_is_gentle_with_ten_strings() {
        let p = pres();
        detect_special_biserial(&p).unwrap();
        let e = enumerate_strings(&p, 0).unwrap();
        assert!(e.certifies_finite());
        assert_eq!(e.strings.len(), 10);
        assert!(e.bands.is_empty());
        // dim vectors of the ten string modules
        let mut dims: Vec<Vec<usize>> = e
            .strings
            .iter()
            .map(|w| string_module(&p, w).unwrap().dims().to_vec())
            .collect();
        dims.sort();
        assert_eq!(
            dims,
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![0, 0, 1, 1],
                vec![0, 1, 0, 0],
                vec![0, 1, 0, 1],
                vec![0, 1, 1, 1],
                vec![1, 0, 0, 0],
                vec![1, 0, 1, 0],
                vec![1, 1, 0, 0],
                vec![1, 1, 1, 0],
            ]
        );
    }

    #[test]
    fn ten_strings_pairwise_non_isomorphic_and_indecomposable() {
        let p = pres();
        let e = enumerate_strings(&p, 0).unwrap();
        let mods: Vec<Representation> =
            e.strings.iter().map(|w| string_module(&p, w).unwrap()).collect();
        for m in &mods {
            assert!(crate::decomp::is_indecomposable(m, 42).unwrap());
        }
        for i in 0..mods.len() {
            for j in 0..i {
                assert!(!crate::decomp::indecomposables_isomorphic(&mods[i], &mods[j]).unwrap());
            }
        }
    }

    #[test]
    fn isolated_vertex_has_one_string() {
        let q = crate::quiver::Quiver::new(vec!["v".into()], vec![]).unwrap();
        let p = Arc::new(
            BoundPresentation::certified(q, vec![], Field::prime(101).unwrap(), 4).unwrap(),
        );
        let e = enumerate_strings(&p, 0).unwrap();
        assert_eq!(e.strings.len(), 1);
        assert!(e.certifies_finite());
    }

    #[test]
    fn loop_with_square_zero() {
        let q = crate::quiver::Quiver::new(
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
        )
        .unwrap();
        let f = Field::prime(101).unwrap();
        let rel = crate::quiver::zero_relation(&q, &f, &["x", "x"]).unwrap();
        let p = Arc::new(BoundPresentation::certified(q, vec![rel], f, 8).unwrap());
        let e = enumerate_strings(&p, 0).unwrap();
        // trivial walk and the walk `x`
        assert_eq!(e.strings.len(), 2);
        assert!(e.certifies_finite());
    }

    #[test]
    fn three_outgoing_arrows_are_rejected_with_witness() {
        let q = crate::quiver::Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "1".into(), "2".into()),
                ("c".into(), "1".into(), "2".into()),
            ],
        )
        .unwrap();
        let f = Field::prime(101).unwrap();
        let p = BoundPresentation::certified(q, vec![], f, 8).unwrap();
        match detect_special_biserial(&p).unwrap_err() {
            Error::NotSpecialBiserial(w) => assert!(w.contains("1"), "{w}"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn kronecker_is_representation_infinite() {
        // two parallel arrows: bands exist
        let q = crate::quiver::Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "1".into(), "2".into()),
            ],
        )
        .unwrap();
        let f = Field::prime(101).unwrap();
        let p = Arc::new(BoundPresentation::certified(q, vec![], f, 8).unwrap());
        let e = enumerate_strings(&p, 0).unwrap();
        assert!(!e.bands.is_empty());
        assert!(!e.certifies_finite());
    }

    #[test]
    fn band_modules_on_kronecker() {
        let q = crate::quiver::Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "1".into(), "2".into()),
            ],
        )
        .unwrap();
        let f = Field::prime(101).unwrap();
        let p = Arc::new(BoundPresentation::certified(q, vec![], f, 8).unwrap());
        let e = enumerate_strings(&p, 0).unwrap();
        let band = &e.bands[0];
        let c1 = Matrix::from_i64(f, 1, 1, &[1]);
        let c2 = Matrix::from_i64(f, 1, 1, &[2]);
        let m1 = band_module(&p, band, &c1).unwrap();
        let m2 = band_module(&p, band, &c2).unwrap();
        assert_eq!(m1.dims(), &[1, 1]);
        assert!(crate::decomp::is_indecomposable(&m1, 3).unwrap());
        assert!(!crate::decomp::indecomposables_isomorphic(&m1, &m2).unwrap());
        // Jordan block companion stays indecomposable
        let j = Matrix::from_i64(f, 2, 2, &[1, 1, 0, 1]);
        let mj = band_module(&p, band, &j).unwrap();
        assert_eq!(mj.total_dim(), 4);
        assert!(crate::decomp::is_indecomposable(&mj, 3).unwrap());
        // singular companion is refused
        let z = Matrix::zero(f, 1, 1);
        assert!(matches!(
            band_module(&p, band, &z).unwrap_err(),
            Error::NonInvertibleCompanion
        ));
    }
}
