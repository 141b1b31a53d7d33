//! Auslander–Reiten machinery: minimal projective presentations, the
//! translate `D Tr`, the AR quiver with arrow multiplicities `dim rad/rad^2`,
//! mesh presentations of the category of indecomposables, the dimension-level
//! standardness check, and translation covers of the mesh quiver.
//!
//! Arrow multiplicities come from radical quotients rather than knitting, so
//! everything below needs only hom bases and composition. Mesh relations are
//! not imposed abstractly: the degree-two part of the relation ideal of the
//! category of indecomposables is computed from actual compositions of chosen
//! irreducible representatives, which makes the chosen arrows satisfy their
//! own relations by construction.

use crate::decomp::{indecomposables_isomorphic, radical_endo_basis};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, RowSpan};
use crate::periodic::PeriodicPresentation;
use crate::quiver::{BoundPresentation, PathWord, Quiver, Relation};
use crate::rep::{
    cokernel, hom_basis, kernel, projective_at, simple_at, top, yoneda_morphism, Morphism,
    Representation,
};
use crate::strings::{enumerate_strings, string_module};
use std::sync::Arc;

/// `P1 -> P0 -> M -> 0` with both covers minimal.
#[derive(Debug, Clone)]
pub struct MinimalPresentation {
    pub p0: Representation,
    pub p1: Representation,
    /// Multiset of projective vertices of `P0` and `P1`, in summand order.
    pub p0_vertices: Vec<usize>,
    pub p1_vertices: Vec<usize>,
    pub d1: Morphism,
    pub d0: Morphism,
}

/// Projective cover `P -> M` built from a lifted basis of `top M`.
fn projective_cover(m: &Representation) -> Result<(Representation, Vec<usize>, Morphism)> {
    let pres = m.presentation().clone();
    let f = m.field();
    let (t, proj) = top(m)?;
    if t.is_zero() {
        let zero = Representation::zero(pres.clone());
        let cover = Morphism::zero(&zero, m)?;
        return Ok((zero, Vec::new(), cover));
    }
    let mut summand_vertices = Vec::new();
    let mut summand_maps: Vec<Morphism> = Vec::new();
    for x in 0..m.dims().len() {
        let k = t.dim_at(x);
        if k == 0 {
            continue;
        }
        // Right inverse of the top projection at x lifts a basis of top(x).
        let lift = proj
            .mat_at(x)
            .solve(&Matrix::identity(f, k))?
            .ok_or_else(|| Error::BadMorphism("top projection is not surjective".into()))?;
        let px = projective_at(&pres, x)?;
        for j in 0..k {
            let col = lift.column(j);
            summand_vertices.push(x);
            summand_maps.push(yoneda_morphism(&px, x, m, &col)?);
        }
    }
    let summands: Vec<&Representation> =
        summand_maps.iter().map(|mor| mor.source()).collect();
    let (p0, _incls, projs) = Representation::direct_sum(&summands)?;
    // Combined map: sum of components through the projections.
    let mut cover = Morphism::zero(&p0, m)?;
    for (mor, pr) in summand_maps.iter().zip(&projs) {
        cover = cover.add(&pr.then(mor)?)?;
    }
    Ok((p0, summand_vertices, cover))
}

pub fn minimal_projective_presentation(m: &Representation) -> Result<MinimalPresentation> {
    let (p0, p0_vertices, d0) = projective_cover(m)?;
    let (k, incl) = kernel(&d0)?;
    let (p1, p1_vertices, cover1) = projective_cover(&k)?;
    let d1 = cover1.then(&incl)?;
    Ok(MinimalPresentation { p0, p1, p0_vertices, p1_vertices, d1, d0 })
}

/// A hom-functor morphism `P_y -> P_x` given by a combination of paths
/// `x -> y`; acts by left concatenation.
pub fn hom_functor_morphism(
    pres: &Arc<BoundPresentation>,
    x: usize,
    y: usize,
    terms: &[(Scalar, PathWord)],
    p_y: &Representation,
    p_x: &Representation,
) -> Result<Morphism> {
    let q = pres.quiver();
    let f = pres.field();
    let mut mats = Vec::new();
    for z in 0..q.vertex_count() {
        let from_paths = pres.paths_table(y, z)?.basis_paths();
        let mut mat = Matrix::zero(f, p_x.dim_at(z), p_y.dim_at(z));
        for (j, qpath) in from_paths.iter().enumerate() {
            // sum of c * (p . q) over terms (p: x -> y)
            let mut combo: Vec<(Scalar, PathWord)> = Vec::new();
            for (c, p) in terms {
                combo.push((c.clone(), p.compose(q, qpath)?));
            }
            let coords = pres.reduce_combination(&combo)?;
            for (i, c) in coords.into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        let _ = x;
        mats.push(mat);
    }
    Morphism::new(p_y.clone(), p_x.clone(), mats)
}

/// The Auslander–Reiten translate `tau M = D Tr M`; errors on projectives.
pub fn ar_translate(
    pres: &Arc<BoundPresentation>,
    op: &Arc<BoundPresentation>,
    m: &Representation,
) -> Result<Representation> {
    let mp = minimal_projective_presentation(m)?;
    if mp.p1.is_zero() {
        return Err(Error::ProjectiveInput(format!("dims {:?}", m.dims())));
    }
    // Extract the path matrix of d1: component P_{b_j} -> P_{a_i} is a
    // combination of paths a_i -> b_j, read off the stationary basis vector.
    let q = pres.quiver();
    let f = pres.field();
    // Per-summand slices of P0 and P1 at each vertex are contiguous in
    // direct-sum order.
    let offsets = |vertices: &[usize], pres: &Arc<BoundPresentation>| -> Result<Vec<Vec<usize>>> {
        // offsets[s][v] = starting row of summand s in the sum at vertex v
        let mut per_vertex = vec![0usize; pres.quiver().vertex_count()];
        let mut out = Vec::new();
        for &x in vertices {
            out.push(per_vertex.clone());
            let px = projective_at(pres, x)?;
            for v in 0..per_vertex.len() {
                per_vertex[v] += px.dim_at(v);
            }
        }
        Ok(out)
    };
    let off0 = offsets(&mp.p0_vertices, pres)?;
    let off1 = offsets(&mp.p1_vertices, pres)?;

    // Build the transposed map over the opposite presentation.
    let op_projs: Vec<Representation> = mp
        .p1_vertices
        .iter()
        .map(|&b| projective_at(op, b))
        .collect::<Result<_>>()?;
    let op_sources: Vec<Representation> = mp
        .p0_vertices
        .iter()
        .map(|&a| projective_at(op, a))
        .collect::<Result<_>>()?;
    if op_sources.is_empty() {
        // M has no projective cover only when M = 0
        return Err(Error::BadRepresentation("translate of the zero module".into()));
    }
    let (src_sum, _, src_projs) = Representation::direct_sum(&op_sources.iter().collect::<Vec<_>>())?;
    let (dst_sum, dst_incls, _) = Representation::direct_sum(&op_projs.iter().collect::<Vec<_>>())?;
    let mut transposed = Morphism::zero(&src_sum, &dst_sum)?;
    for (i, &a) in mp.p0_vertices.iter().enumerate() {
        for (j, &b) in mp.p1_vertices.iter().enumerate() {
            // coefficient paths a -> b of the (i, j) component
            let stat_idx = {
                let table = pres.paths_table(b, b)?;
                table
                    .basis_paths()
                    .iter()
                    .position(|p| p.is_stationary())
                    .expect("stationary path survives")
            };
            let col = off1[j][b] + stat_idx;
            let basis_paths = pres.paths_table(a, b)?.basis_paths();
            let mut terms: Vec<(Scalar, PathWord)> = Vec::new();
            for (r, path) in basis_paths.iter().enumerate() {
                let row = off0[i][b] + r;
                let c = mp.d1.mat_at(b).get(row, col).clone();
                if !f.is_zero(&c) {
                    terms.push((c, (*path).clone()));
                }
            }
            if terms.is_empty() {
                continue;
            }
            // reverse the paths into the opposite presentation
            let op_terms: Vec<(Scalar, PathWord)> = terms
                .iter()
                .map(|(c, p)| {
                    let arrows: Vec<usize> = p
                        .arrows()
                        .iter()
                        .rev()
                        .map(|&ai| op.quiver().arrow_index(&q.arrow(ai).name).unwrap())
                        .collect();
                    let rp = if arrows.is_empty() {
                        PathWord::stationary(b)
                    } else {
                        PathWord::from_arrows(op.quiver(), arrows).unwrap()
                    };
                    (c.clone(), rp)
                })
                .collect();
            // morphism P^op_{a_i} -> P^op_{b_j} from paths b -> a in op
            let comp = hom_functor_morphism(op, b, a, &op_terms, &op_sources[i], &op_projs[j])?;
            let lifted = src_projs[i].then(&comp)?.then(&dst_incls[j])?;
            transposed = transposed.add(&lifted)?;
        }
    }
    let (tr, _) = cokernel(&transposed)?;
    crate::rep::dual(&tr, pres)
}

#[derive(Debug, Clone)]
pub struct ArVertex {
    pub rep: Representation,
    pub label: String,
    /// `Some(x)` when this class is `P_x` / `I_x`.
    pub projective: Option<usize>,
    pub injective: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ArArrow {
    pub src: usize,
    pub dst: usize,
    pub mult: usize,
    /// Chosen radical representatives spanning `rad/rad^2`, one per copy.
    pub reps: Vec<Morphism>,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    pub x: usize,
    pub tau_x: usize,
    /// (middle vertex, multiplicity) pairs.
    pub middles: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct TranslationQuiver {
    pub pres: Arc<BoundPresentation>,
    pub vertices: Vec<ArVertex>,
    pub arrows: Vec<ArArrow>,
    pub tau: Vec<Option<usize>>,
    pub meshes: Vec<Mesh>,
}

impl TranslationQuiver {
    pub fn vertex_of(&self, m: &Representation) -> Result<Option<usize>> {
        for (i, v) in self.vertices.iter().enumerate() {
            if indecomposables_isomorphic(&v.rep, m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Mesh additivity: `dim tau X + dim X = sum of middle dims` at every
    /// mesh, vertexwise.
    pub fn check_mesh_additivity(&self) -> Result<()> {
        for mesh in &self.meshes {
            let nv = self.vertices[mesh.x].rep.dims().len();
            for v in 0..nv {
                let lhs = self.vertices[mesh.x].rep.dim_at(v)
                    + self.vertices[mesh.tau_x].rep.dim_at(v);
                let rhs: usize = mesh
                    .middles
                    .iter()
                    .map(|&(z, mult)| mult * self.vertices[z].rep.dim_at(v))
                    .sum();
                if lhs != rhs {
                    return Err(Error::DegenerateMesh(format!(
                        "additivity fails at mesh of `{}`",
                        self.vertices[mesh.x].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Stable DOT rendering: solid irreducible arrows, dashed translates.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let dims: Vec<String> = v.rep.dims().iter().map(|d| d.to_string()).collect();
            s.push_str(&format!(
                "  v{} [label=\"{} ({})\"];\n",
                i,
                v.label,
                dims.join(",")
            ));
        }
        for a in &self.arrows {
            for _ in 0..a.mult {
                s.push_str(&format!("  v{} -> v{};\n", a.src, a.dst));
            }
        }
        for (x, t) in self.tau.iter().enumerate() {
            if let Some(tx) = t {
                s.push_str(&format!("  v{x} -> v{tx} [style=dashed, constraint=false];\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the AR quiver from an explicit complete list of indecomposables.
pub fn ar_quiver_from_indecomposables(
    pres: &Arc<BoundPresentation>,
    mut mods: Vec<Representation>,
    seed: u64,
) -> Result<TranslationQuiver> {
    mods.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let op = Arc::new(pres.opposite()?);
    let n = mods.len();
    // identify projectives and injectives
    let mut labels = vec![String::new(); n];
    let mut proj = vec![None; n];
    let mut inj = vec![None; n];
    for x in 0..pres.quiver().vertex_count() {
        let px = projective_at(pres, x)?;
        let ix = crate::rep::injective_at(pres, &op, x)?;
        let sx = simple_at(pres, x)?;
        for (i, m) in mods.iter().enumerate() {
            if indecomposables_isomorphic(m, &px)? {
                proj[i] = Some(x);
            }
            if indecomposables_isomorphic(m, &ix)? {
                inj[i] = Some(x);
            }
            if labels[i].is_empty() && indecomposables_isomorphic(m, &sx)? {
                labels[i] = format!("S_{}", pres.quiver().vertex_name(x));
            }
        }
    }
    for i in 0..n {
        if let Some(x) = proj[i] {
            labels[i] = format!("P_{}", pres.quiver().vertex_name(x));
        } else if let Some(x) = inj[i] {
            labels[i] = format!("I_{}", pres.quiver().vertex_name(x));
        } else if labels[i].is_empty() {
            let dims: Vec<String> = mods[i].dims().iter().map(|d| d.to_string()).collect();
            labels[i] = format!("M({})", dims.join(","));
        }
    }

    // radical bases between all pairs
    let mut rad: Vec<Vec<Vec<Morphism>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            rad[i][j] = if i == j {
                radical_endo_basis(&mods[i], seed)?
            } else {
                hom_basis(&mods[i], &mods[j])?
            };
        }
    }
    // rad^2 spans and arrow multiplicities
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rad[i][j].is_empty() {
                continue;
            }
            let flat_len = rad[i][j][0].flatten().len();
            let mut rad2 = RowSpan::new(pres.field(), flat_len);
            for z in 0..n {
                for f1 in &rad[i][z] {
                    for f2 in &rad[z][j] {
                        rad2.insert(f1.then(f2)?.flatten());
                    }
                }
            }
            let mult = rad[i][j].len() - rad2.rank();
            if mult == 0 {
                continue;
            }
            // representatives spanning rad/rad^2: extend the rad^2 span
            let mut reps = Vec::new();
            let mut span = rad2.clone();
            for f in &rad[i][j] {
                if span.insert(f.flatten()) {
                    reps.push(f.clone());
                }
                if reps.len() == mult {
                    break;
                }
            }
            arrows.push(ArArrow { src: i, dst: j, mult, reps });
        }
    }

    // translates
    let mut tau = vec![None; n];
    for i in 0..n {
        if proj[i].is_some() {
            continue;
        }
        let t = ar_translate(pres, &op, &mods[i])?;
        let Some(ti) = ({
            let mut found = None;
            for (k, m) in mods.iter().enumerate() {
                if indecomposables_isomorphic(m, &t)? {
                    found = Some(k);
                    break;
                }
            }
            found
        }) else {
            return Err(Error::RepresentationInfinite(
                "translate of a listed module is not in the list".into(),
            ));
        };
        tau[i] = Some(ti);
    }

    // meshes with symmetry check
    let mut meshes = Vec::new();
    for x in 0..n {
        let Some(tx) = tau[x] else { continue };
        let middles: Vec<(usize, usize)> = arrows
            .iter()
            .filter(|a| a.dst == x)
            .map(|a| (a.src, a.mult))
            .collect();
        let outgoing: Vec<(usize, usize)> = arrows
            .iter()
            .filter(|a| a.src == tx)
            .map(|a| (a.dst, a.mult))
            .collect();
        let mut sm = middles.clone();
        let mut so = outgoing.clone();
        sm.sort_unstable();
        so.sort_unstable();
        if sm != so {
            return Err(Error::DegenerateMesh(format!(
                "arrows into `{}` do not match arrows out of `{}`",
                labels[x], labels[tx]
            )));
        }
        meshes.push(Mesh { x, tau_x: tx, middles });
    }

    let vertices = mods
        .into_iter()
        .zip(labels)
        .zip(proj.iter().zip(&inj))
        .map(|((rep, label), (p, i))| ArVertex { rep, label, projective: *p, injective: *i })
        .collect();
    Ok(TranslationQuiver { pres: pres.clone(), vertices, arrows, tau, meshes })
}

/// AR quiver via certified string enumeration.
pub fn ar_quiver(pres: &Arc<BoundPresentation>, cap: usize, seed: u64) -> Result<TranslationQuiver> {
    let e = enumerate_strings(pres, cap)?;
    if !e.certifies_finite() {
        return Err(Error::RepresentationInfinite(if e.bands.is_empty() {
            format!("string set did not stabilise below cap {}", e.cap)
        } else {
            "a band exists".into()
        }));
    }
    let mods: Vec<Representation> =
        e.strings.iter().map(|w| string_module(pres, w)).collect::<Result<_>>()?;
    ar_quiver_from_indecomposables(pres, mods, seed)
}

/// The mesh presentation: path category of the opposite AR quiver modulo the
/// degree-two relations that actually hold among the chosen irreducible
/// representatives.
#[derive(Debug, Clone)]
pub struct MeshPresentation {
    pub pres: Arc<BoundPresentation>,
    /// Module morphism realising each mesh-quiver arrow (for an arrow
    /// `[U] -> [V]` this is an irreducible `V -> U`).
    pub arrow_rep: Vec<Morphism>,
    /// AR vertex of each mesh-quiver arrow's source/target, aligned with the
    /// mesh quiver's arrow list: (ar_src, ar_dst) of the underlying AR arrow.
    pub arrow_ar: Vec<(usize, usize)>,
    pub relation_count: usize,
}

pub fn mesh_presentation(tq: &TranslationQuiver, cap: u32) -> Result<MeshPresentation> {
    let f = tq.pres.field();
    let n = tq.vertices.len();
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let mut arrows = Vec::new();
    let mut arrow_rep = Vec::new();
    let mut arrow_ar = Vec::new();
    for a in &tq.arrows {
        for (c, rep) in a.reps.iter().enumerate() {
            // AR arrow src -> dst becomes mesh arrow [dst] -> [src]
            let name = if a.mult == 1 {
                format!("a{}_{}", a.dst + 1, a.src + 1)
            } else {
                format!("a{}_{}_{}", a.dst + 1, a.src + 1, c + 1)
            };
            arrows.push((name, names[a.dst].clone(), names[a.src].clone()));
            arrow_rep.push(rep.clone());
            arrow_ar.push((a.src, a.dst));
        }
    }
    let quiver = Quiver::new(names, arrows)?;

    // Degree-two kernel of the multiplication into hom spaces.
    let mut relations: Vec<Relation> = Vec::new();
    let mut relation_count = 0usize;
    for u in 0..n {
        for w in 0..n {
            // paths u -> w of length 2 in the mesh quiver
            let mut paths: Vec<(usize, usize)> = Vec::new();
            for (i1, arr1) in quiver.arrows().iter().enumerate() {
                if quiver.vertex_index(&format!("x{}", u + 1)) != Some(arr1.src) {
                    continue;
                }
                for (i2, arr2) in quiver.arrows().iter().enumerate() {
                    if arr2.src == arr1.dst
                        && quiver.vertex_index(&format!("x{}", w + 1)) == Some(arr2.dst)
                    {
                        paths.push((i1, i2));
                    }
                }
            }
            if paths.is_empty() {
                continue;
            }
            // composite module morphisms: X_w -> X_u
            let flat_len = {
                let m = Morphism::zero(&tq.vertices[w].rep, &tq.vertices[u].rep)?;
                m.flatten().len()
            };
            let mut mat = Matrix::zero(f, flat_len, paths.len());
            for (col, &(i1, i2)) in paths.iter().enumerate() {
                let comp = arrow_rep[i2].then(&arrow_rep[i1])?;
                for (row, val) in comp.flatten().into_iter().enumerate() {
                    mat.set(row, col, val);
                }
            }
            let ker = mat.kernel_basis();
            for kcol in 0..ker.cols() {
                let mut terms = Vec::new();
                for (prow, &(i1, i2)) in paths.iter().enumerate() {
                    let c = ker.get(prow, kcol).clone();
                    if !f.is_zero(&c) {
                        let pw = PathWord::from_arrows(&quiver, vec![i1, i2])?;
                        terms.push((c, pw));
                    }
                }
                if terms.is_empty() {
                    return Err(Error::DegenerateMesh("empty degree-two relation".into()));
                }
                relations.push(Relation { terms });
                relation_count += 1;
            }
        }
    }
    let pres = Arc::new(BoundPresentation::certified(quiver, relations, f, cap)?);
    Ok(MeshPresentation { pres, arrow_rep, arrow_ar, relation_count })
}

/// Dimension-level standardness check: `dim Hom(X, Y)` against the mesh
/// category's path space, for every ordered pair.
#[derive(Debug, Clone)]
pub struct StandardReport {
    pub pairs: usize,
    pub unequal: Vec<(usize, usize, usize, usize)>,
}

impl StandardReport {
    pub fn all_equal(&self) -> bool {
        self.unequal.is_empty()
    }
}

pub fn standard_check(tq: &TranslationQuiver, mesh: &MeshPresentation) -> Result<StandardReport> {
    let n = tq.vertices.len();
    let mut unequal = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let module_dim = hom_basis(&tq.vertices[i].rep, &tq.vertices[j].rep)?.len();
            let mesh_dim = mesh.pres.hom_dim(i, j)?;
            if module_dim != mesh_dim {
                unequal.push((i, j, module_dim, mesh_dim));
            }
        }
    }
    Ok(StandardReport { pairs: n * n, unequal })
}

// ---------------------------------------------------------------------------
// translation cover of the mesh quiver
// ---------------------------------------------------------------------------

/// Smith-normal-form based cover: the cycle lattice of the mesh quiver modulo
/// the classes of its multi-term relations. A free quotient `Z^k` yields a
/// periodic presentation whose orbit category is the mesh presentation;
/// torsion is reported as unsupported.
pub fn translation_cover(mesh: &MeshPresentation) -> Result<PeriodicPresentation> {
    let q = mesh.pres.quiver();
    let nv = q.vertex_count();
    let na = q.arrow_count();

    // spanning forest (undirected), rooted at vertex 0 per component
    let mut parent_edge: Vec<Option<(usize, bool)>> = vec![None; nv]; // (arrow, outgoing?)
    let mut visited = vec![false; nv];
    for root in 0..nv {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for a in 0..na {
                let arr = q.arrow(a);
                if arr.src == v && !visited[arr.dst] {
                    visited[arr.dst] = true;
                    parent_edge[arr.dst] = Some((a, true));
                    queue.push_back(arr.dst);
                } else if arr.dst == v && !visited[arr.src] {
                    visited[arr.src] = true;
                    parent_edge[arr.src] = Some((a, false));
                    queue.push_back(arr.src);
                }
            }
        }
    }
    let tree: std::collections::HashSet<usize> =
        parent_edge.iter().flatten().map(|(a, _)| *a).collect();
    let nontree: Vec<usize> = (0..na).filter(|a| !tree.contains(a)).collect();
    let c = nontree.len();
    // The cycle class of a closed signed arrow vector is just its non-tree
    // coordinates (tree coordinates are determined by closedness).
    let cycle_coords =
        |signed: &[i64]| -> Vec<i64> { nontree.iter().map(|&a| signed[a]).collect() };

    // relation constraints: difference of term paths
    let mut constraints: Vec<Vec<i64>> = Vec::new();
    for rel in mesh.pres.relations() {
        if rel.terms.len() < 2 {
            continue;
        }
        let as_vec = |p: &PathWord| -> Vec<i64> {
            let mut v = vec![0i64; na];
            for &a in p.arrows() {
                v[a] += 1;
            }
            v
        };
        let first = as_vec(&rel.terms[0].1);
        for (_, p) in rel.terms.iter().skip(1) {
            let other = as_vec(p);
            let diff: Vec<i64> = first.iter().zip(&other).map(|(x, y)| x - y).collect();
            constraints.push(cycle_coords(&diff));
        }
    }

    // quotient Z^c / rows(constraints) via Smith normal form
    let (rank_r, u_rows, torsion) = smith_quotient(&constraints, c);
    if torsion {
        return Err(Error::UnsupportedGroup(
            "mesh fundamental group has torsion; only free abelian covers are supported".into(),
        ));
    }
    let k = c - rank_r;
    // degree of an arrow: tree arrows 0; non-tree arrow j: free coordinates
    // of its cycle class. The cycle class of non-tree arrow a is
    // e_j + path_to_root contributions; its non-tree coordinates are e_j.
    // But path_to_root parts only touch tree arrows, so coordinates = e_j.
    let mut shifts: Vec<Vec<i64>> = vec![vec![0i64; k]; na];
    for (j, &a) in nontree.iter().enumerate() {
        let mut class = vec![0i64; c];
        class[j] = 1;
        // free coordinates: rows rank_r.. of U applied to the class
        let mut deg = Vec::with_capacity(k);
        for row in u_rows.iter().skip(rank_r) {
            let d: i64 = row.iter().zip(&class).map(|(x, y)| x * y).sum();
            deg.push(d);
        }
        shifts[a] = deg;
    }
    // Make shifts gauge-nicer: shifts of tree arrows are zero already.
    PeriodicPresentation::new(
        q.clone(),
        k,
        shifts,
        mesh.pres.relations().to_vec(),
        mesh.pres.field(),
    )
}

/// Row-reduces integer `constraints` (rows over `Z^c`) to Smith form,
/// returning (rank, U rows, torsion?) where the quotient's free coordinates
/// are `U[rank..] . x`.
fn smith_quotient(constraints: &[Vec<i64>], c: usize) -> (usize, Vec<Vec<i64>>, bool) {
    // We need column operations on the constraint matrix M (m x c) paired
    // with row operations on the identity tracking the coordinate change:
    // with G = M^T (c x m), compute S = U G V; free part reads off U.
    let m = constraints.len();
    let mut g: Vec<Vec<i64>> = (0..c)
        .map(|i| (0..m).map(|j| constraints[j][i]).collect())
        .collect();
    let mut u: Vec<Vec<i64>> = (0..c)
        .map(|i| (0..c).map(|j| i64::from(i == j)).collect())
        .collect();
    let rows = c;
    let cols = m;
    let mut r = 0usize;
    let mut torsion = false;
    let mut col = 0usize;
    while r < rows && col < cols {
        // find pivot with smallest absolute nonzero value in the submatrix
        let mut best: Option<(usize, usize)> = None;
        for i in r..rows {
            for j in col..cols {
                if g[i][j] != 0 {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => g[i][j].abs() < g[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        g.swap(r, pi);
        u.swap(r, pi);
        for row in g.iter_mut() {
            row.swap(col, pj);
        }
        // clear the pivot column with row ops; iterate because of remainders
        loop {
            let mut clean = true;
            for i in 0..rows {
                if i == r || g[i][col] == 0 {
                    continue;
                }
                let qv = g[i][col].div_euclid(g[r][col]);
                if qv != 0 {
                    for jj in 0..cols {
                        g[i][jj] -= qv * g[r][jj];
                    }
                    for jj in 0..c {
                        u[i][jj] -= qv * u[r][jj];
                    }
                }
                if g[i][col] != 0 {
                    clean = false;
                }
            }
            // clear the pivot row with column ops (no tracking needed)
            for j in 0..cols {
                if j == col || g[r][j] == 0 {
                    continue;
                }
                let qv = g[r][j].div_euclid(g[r][col]);
                if qv != 0 {
                    for ii in 0..rows {
                        g[ii][j] -= qv * g[ii][col];
                    }
                }
                if g[r][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // a smaller remainder may have appeared; re-pivot on min entry
            let mut best = (r, col);
            for i in r..rows {
                for j in col..cols {
                    if g[i][j] != 0 && g[i][j].abs() < g[best.0][best.1].abs().max(1) {
                        if g[best.0][best.1] == 0 || g[i][j].abs() < g[best.0][best.1].abs() {
                            best = (i, j);
                        }
                    }
                }
            }
            if best != (r, col) {
                g.swap(r, best.0);
                u.swap(r, best.0);
                for row in g.iter_mut() {
                    row.swap(col, best.1);
                }
            }
        }
        if g[r][col].abs() != 1 {
            torsion = true;
        }
        r += 1;
        col += 1;
    }
    (r, u, torsion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quiver::square_gentle;

    fn a2() -> Arc<BoundPresentation> {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap();
        Arc::new(BoundPresentation::certified(q, vec![], Field::prime(101).unwrap(), 8).unwrap())
    }

    #[test]
    fn a2_translate_swaps_simples() {
        let p = a2();
        let op = Arc::new(p.opposite().unwrap());
        let s1 = simple_at(&p, 0).unwrap();
        let t = ar_translate(&p, &op, &s1).unwrap();
        assert_eq!(t.dims(), &[0, 1]);
        // projective input errors
        let p1 = projective_at(&p, 0).unwrap();
        assert!(matches!(
            ar_translate(&p, &op, &p1).unwrap_err(),
            Error::ProjectiveInput(_)
        ));
    }

    #[test]
    fn a2_ar_quiver_shape() {
        let p = a2();
        let tq = ar_quiver(&p, 0, 5).unwrap();
        assert_eq!(tq.vertices.len(), 3);
        let total_arrows: usize = tq.arrows.iter().map(|a| a.mult).sum();
        assert_eq!(total_arrows, 2);
        assert_eq!(tq.tau.iter().flatten().count(), 1);
        assert_eq!(tq.meshes.len(), 1);
        tq.check_mesh_additivity().unwrap();
    }

    #[test]
    fn square_algebra_ar_quiver() {
        let p = Arc::new(square_gentle(Field::prime(101).unwrap()));
        let tq = ar_quiver(&p, 0, 5).unwrap();
        assert_eq!(tq.vertices.len(), 10);
        // twelve arrows, all multiplicity one
        assert!(tq.arrows.iter().all(|a| a.mult == 1));
        assert_eq!(tq.arrows.len(), 12);
        // six meshes = six non-projective vertices = six non-injectives
        assert_eq!(tq.meshes.len(), 6);
        assert_eq!(tq.vertices.iter().filter(|v| v.projective.is_none()).count(), 6);
        assert_eq!(tq.vertices.iter().filter(|v| v.injective.is_none()).count(), 6);
        tq.check_mesh_additivity().unwrap();
    }

    #[test]
    fn ar_quiver_is_independent_of_enumeration_order() {
        let p = Arc::new(square_gentle(Field::prime(101).unwrap()));
        let e = crate::strings::enumerate_strings(&p, 0).unwrap();
        let mods: Vec<Representation> = e
            .strings
            .iter()
            .map(|w| crate::strings::string_module(&p, w).unwrap())
            .collect();
        let mut shuffled = mods.clone();
        shuffled.reverse();
        shuffled.rotate_left(3);
        let a = ar_quiver_from_indecomposables(&p, mods, 5).unwrap();
        let b = ar_quiver_from_indecomposables(&p, shuffled, 5).unwrap();
        let labels = |tq: &TranslationQuiver| -> Vec<String> {
            tq.vertices.iter().map(|v| v.label.clone()).collect()
        };
        assert_eq!(labels(&a), labels(&b));
        let arrows = |tq: &TranslationQuiver| -> Vec<(usize, usize, usize)> {
            tq.arrows.iter().map(|x| (x.src, x.dst, x.mult)).collect()
        };
        assert_eq!(arrows(&a), arrows(&b));
        assert_eq!(a.tau, b.tau);
    }

    #[test]
    fn translate_bijects_nonprojectives_onto_noninjectives() {
        let p = Arc::new(square_gentle(Field::prime(101).unwrap()));
        let tq = ar_quiver(&p, 0, 5).unwrap();
        let mut targets: Vec<usize> = tq.tau.iter().flatten().copied().collect();
        targets.sort_unstable();
        targets.dedup();
        assert_eq!(targets.len(), 6, "translate is injective on non-projectives");
        let noninjectives: Vec<usize> = (0..tq.vertices.len())
            .filter(|&i| tq.vertices[i].injective.is_none())
            .collect();
        assert_eq!(targets, noninjectives);
    }

    #[test]
    fn square_algebra_mesh_and_standardness() {
        let p = Arc::new(square_gentle(Field::prime(101).unwrap()));
        let tq = ar_quiver(&p, 0, 5).unwrap();
        let mesh = mesh_presentation(&tq, 32).unwrap();
        assert_eq!(mesh.relation_count, tq.meshes.len());
        let report = standard_check(&tq, &mesh).unwrap();
        assert!(report.all_equal(), "unequal pairs: {:?}", report.unequal);
        // injecting a bogus extra relation drops some dimension
        let mut rels = mesh.pres.relations().to_vec();
        // find a surviving length-2 path and kill it
        let q = mesh.pres.quiver();
        'outer: for u in 0..q.vertex_count() {
            for w in 0..q.vertex_count() {
                let table = mesh.pres.paths_table(u, w).unwrap();
                for path in table.basis_paths() {
                    if path.len() == 2 {
                        rels.push(Relation {
                            terms: vec![(mesh.pres.field().one(), path.clone())],
                        });
                        break 'outer;
                    }
                }
            }
        }
        let tweaked = Arc::new(
            BoundPresentation::certified(q.clone(), rels, mesh.pres.field(), 32).unwrap(),
        );
        let mut any_drop = false;
        for i in 0..tq.vertices.len() {
            for j in 0..tq.vertices.len() {
                if tweaked.hom_dim(i, j).unwrap() != mesh.pres.hom_dim(i, j).unwrap() {
                    any_drop = true;
                }
            }
        }
        assert!(any_drop);
    }

    #[test]
    fn square_algebra_translation_cover_rank_one() {
        let p = Arc::new(square_gentle(Field::prime(101).unwrap()));
        let tq = ar_quiver(&p, 0, 5).unwrap();
        let mesh = mesh_presentation(&tq, 32).unwrap();
        let cover = translation_cover(&mesh).unwrap();
        assert_eq!(cover.rank(), 1);
        // folding back gives the mesh presentation's hom dimensions
        let folded = cover
            .orbit_presentation_named(32, |v| v.to_string())
            .unwrap();
        for i in 0..tq.vertices.len() {
            for j in 0..tq.vertices.len() {
                assert_eq!(
                    folded.hom_dim(i, j).unwrap(),
                    mesh.pres.hom_dim(i, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn a2_translation_cover_rank_zero() {
        let p = a2();
        let tq = ar_quiver(&p, 0, 5).unwrap();
        let mesh = mesh_presentation(&tq, 32).unwrap();
        let cover = translation_cover(&mesh).unwrap();
        assert_eq!(cover.rank(), 0);
    }
}
