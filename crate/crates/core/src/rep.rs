//! Finite-dimensional representations of a bound presentation and their
//! morphisms.
//!
//! Following the crate conventions (see [`crate::quiver`]), a representation
//! `M` assigns to each vertex `x` a space of dimension `dims[x]` and to each
//! arrow `a: u -> v` a matrix `M(a): M(u) -> M(v)` acting along the arrow.
//! Every constructor certifies that all relations evaluate to zero; nothing
//! downstream ever assumes it.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, RowSpan};
use crate::quiver::{BoundPresentation, PathWord};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pres: Arc<BoundPresentation>,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

pub fn same_presentation(a: &Arc<BoundPresentation>, b: &Arc<BoundPresentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    pub fn new(
        pres: Arc<BoundPresentation>,
        dims: Vec<usize>,
        mats: Vec<Matrix>,
    ) -> Result<Representation> {
        let q = pres.quiver();
        if dims.len() != q.vertex_count() || mats.len() != q.arrow_count() {
            return Err(Error::BadRepresentation("wrong number of vertices or arrows".into()));
        }
        for (i, m) in mats.iter().enumerate() {
            let a = q.arrow(i);
            if m.rows() != dims[a.dst] || m.cols() != dims[a.src] {
                return Err(Error::BadRepresentation(format!(
                    "arrow `{}`: matrix is {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.dst],
                    dims[a.src]
                )));
            }
            if m.field() != pres.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let rep = Representation { pres, dims, mats };
        rep.check_relations()?;
        Ok(rep)
    }

    pub fn zero(pres: Arc<BoundPresentation>) -> Representation {
        let q = pres.quiver();
        let f = pres.field();
        let dims = vec![0; q.vertex_count()];
        let mats = (0..q.arrow_count()).map(|_| Matrix::zero(f, 0, 0)).collect();
        Representation { pres, dims, mats }
    }

    fn check_relations(&self) -> Result<()> {
        let f = self.field();
        for rel in self.pres.relations() {
            let src = rel.src();
            let dst = rel.dst(self.pres.quiver());
            let mut acc = Matrix::zero(f, self.dims[dst], self.dims[src]);
            for (c, p) in &rel.terms {
                acc = acc.add(&self.eval_path(p).scale(c))?;
            }
            if !acc.is_zero() {
                return Err(Error::BadRepresentation(format!(
                    "relation `{}` does not vanish",
                    rel.display(self.pres.quiver(), &f)
                )));
            }
        }
        Ok(())
    }

    pub fn presentation(&self) -> &Arc<BoundPresentation> {
        &self.pres
    }

    pub fn field(&self) -> Field {
        self.pres.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `M(p): M(src p) -> M(dst p)`, multiplying arrow matrices right-to-left.
    pub fn eval_path(&self, p: &PathWord) -> Matrix {
        let f = self.field();
        let mut acc = Matrix::identity(f, self.dims[p.src()]);
        for &a in p.arrows() {
            acc = self.mats[a].mul(&acc).expect("path shapes compose");
        }
        acc
    }

    /// Canonical sort key: total dimension, dimension vector, then matrix
    /// entries; used to make enumerations order-independent.
    pub fn sort_key(&self) -> (usize, Vec<usize>, String) {
        let mut s = String::new();
        for m in &self.mats {
            for e in m.entries() {
                s.push_str(&self.field().format_scalar(e));
                s.push(',');
            }
            s.push(';');
        }
        (self.total_dim(), self.dims.clone(), s)
    }

    /// Direct sum with split injections and projections.
    pub fn direct_sum(
        summands: &[&Representation],
    ) -> Result<(Representation, Vec<Morphism>, Vec<Morphism>)> {
        let first = summands
            .first()
            .ok_or_else(|| Error::BadRepresentation("direct sum of an empty family".into()))?;
        let pres = first.pres.clone();
        let f = first.field();
        for s in summands {
            if !same_presentation(&s.pres, &pres) {
                return Err(Error::PresentationMismatch);
            }
        }
        let nv = pres.quiver().vertex_count();
        let dims: Vec<usize> = (0..nv).map(|v| summands.iter().map(|s| s.dims[v]).sum()).collect();
        let offsets: Vec<Vec<usize>> = (0..nv)
            .map(|v| {
                let mut off = Vec::with_capacity(summands.len());
                let mut acc = 0;
                for s in summands {
                    off.push(acc);
                    acc += s.dims[v];
                }
                off
            })
            .collect();
        let mats: Vec<Matrix> = (0..pres.quiver().arrow_count())
            .map(|a| {
                let arr = pres.quiver().arrow(a);
                let mut m = Matrix::zero(f, dims[arr.dst], dims[arr.src]);
                for (k, s) in summands.iter().enumerate() {
                    let block = &s.mats[a];
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            m.set(
                                offsets[arr.dst][k] + r,
                                offsets[arr.src][k] + c,
                                block.get(r, c).clone(),
                            );
                        }
                    }
                }
                m
            })
            .collect();
        let sum = Representation { pres: pres.clone(), dims, mats };
        let mut incls = Vec::new();
        let mut projs = Vec::new();
        for (k, s) in summands.iter().enumerate() {
            let inc_mats: Vec<Matrix> = (0..nv)
                .map(|v| {
                    let mut m = Matrix::zero(f, sum.dims[v], s.dims[v]);
                    for i in 0..s.dims[v] {
                        m.set(offsets[v][k] + i, i, f.one());
                    }
                    m
                })
                .collect();
            let proj_mats: Vec<Matrix> = (0..nv)
                .map(|v| {
                    let mut m = Matrix::zero(f, s.dims[v], sum.dims[v]);
                    for i in 0..s.dims[v] {
                        m.set(i, offsets[v][k] + i, f.one());
                    }
                    m
                })
                .collect();
            incls.push(Morphism::new((*s).clone(), sum.clone(), inc_mats)?);
            projs.push(Morphism::new(sum.clone(), (*s).clone(), proj_mats)?);
        }
        Ok((sum, incls, projs))
    }
}

/// A natural transformation between representations: one matrix per vertex,
/// commuting with every arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    mats: Vec<Matrix>,
}

impl Morphism {
    pub fn new(
        source: Representation,
        target: Representation,
        mats: Vec<Matrix>,
    ) -> Result<Morphism> {
        if !same_presentation(&source.pres, &target.pres) {
            return Err(Error::PresentationMismatch);
        }
        let q = source.pres.quiver();
        if mats.len() != q.vertex_count() {
            return Err(Error::BadMorphism("one matrix per vertex required".into()));
        }
        for v in 0..q.vertex_count() {
            if mats[v].rows() != target.dims[v] || mats[v].cols() != source.dims[v] {
                return Err(Error::BadMorphism(format!(
                    "vertex `{}`: matrix is {}x{}, expected {}x{}",
                    q.vertex_name(v),
                    mats[v].rows(),
                    mats[v].cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        for a in 0..q.arrow_count() {
            let arr = q.arrow(a);
            let lhs = target.mats[a].mul(&mats[arr.src])?;
            let rhs = mats[arr.dst].mul(&source.mats[a])?;
            if lhs != rhs {
                return Err(Error::BadMorphism(format!("naturality fails at arrow `{}`", arr.name)));
            }
        }
        Ok(Morphism { source, target, mats })
    }

    pub fn identity(m: &Representation) -> Morphism {
        let f = m.field();
        let mats = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        Morphism { source: m.clone(), target: m.clone(), mats }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Result<Morphism> {
        if !same_presentation(&source.pres, &target.pres) {
            return Err(Error::PresentationMismatch);
        }
        let f = source.field();
        let mats = (0..source.dims.len())
            .map(|v| Matrix::zero(f, target.dims[v], source.dims[v]))
            .collect();
        Ok(Morphism { source: source.clone(), target: target.clone(), mats })
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat_at(&self, v: usize) -> &Matrix {
        &self.mats[v]
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    /// `other` after `self` (`self: M -> N`, `other: N -> P`).
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if self.target != other.source {
            return Err(Error::BadMorphism("composition targets do not match".into()));
        }
        let mats: Vec<Matrix> = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(f, g)| g.mul(f))
            .collect::<Result<_>>()?;
        Ok(Morphism { source: self.source.clone(), target: other.target.clone(), mats })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        let mats: Vec<Matrix> = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), mats })
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let mats = self.mats.iter().map(|m| m.scale(c)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), mats }
    }

    /// Vertexwise invertibility test.
    pub fn is_isomorphism(&self) -> bool {
        self.source.dims == self.target.dims
            && self.mats.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    pub fn inverse(&self) -> Result<Morphism> {
        let mats: Vec<Matrix> = self.mats.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
        Ok(Morphism { source: self.target.clone(), target: self.source.clone(), mats })
    }

    /// Flattens all vertex matrices into one coordinate vector (vertex order,
    /// row-major); the inverse of [`Morphism::from_flat`].
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut v = Vec::new();
        for m in &self.mats {
            v.extend(m.entries().iter().cloned());
        }
        v
    }

    pub fn from_flat(
        source: &Representation,
        target: &Representation,
        flat: &[Scalar],
    ) -> Result<Morphism> {
        let f = source.field();
        let mut mats = Vec::new();
        let mut off = 0usize;
        for v in 0..source.dims.len() {
            let (r, c) = (target.dims[v], source.dims[v]);
            let m = Matrix::from_rows(f, r, c, flat[off..off + r * c].to_vec())?;
            off += r * c;
            mats.push(m);
        }
        Morphism::new(source.clone(), target.clone(), mats)
    }
}

/// Basis of `Hom(M, N)`, by solving the naturality system; deterministic.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    if !same_presentation(m.presentation(), n.presentation()) {
        return Err(Error::PresentationMismatch);
    }
    let f = m.field();
    let q = m.presentation().quiver();
    let nv = q.vertex_count();
    // Unknowns: entries of f_v (target.dims[v] x source.dims[v]), vertex order.
    let var_off: Vec<usize> = {
        let mut off = vec![0; nv + 1];
        for v in 0..nv {
            off[v + 1] = off[v] + n.dims[v] * m.dims[v];
        }
        off
    };
    let nvars = var_off[nv];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let (s, t) = (arr.src, arr.dst);
        // N(a) f_s - f_t M(a) = 0, entry (i, j): i < n.dims[t], j < m.dims[s]
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![f.zero(); nvars];
                for k in 0..n.dims[s] {
                    let idx = var_off[s] + k * m.dims[s] + j;
                    row[idx] = f.add(&row[idx], n.arrow_matrix(a).get(i, k));
                }
                for k in 0..m.dims[t] {
                    let idx = var_off[t] + i * m.dims[t] + k;
                    let c = f.neg(m.arrow_matrix(a).get(k, j));
                    row[idx] = f.add(&row[idx], &c);
                }
                rows.push(row);
            }
        }
    }
    let nrows = rows.len();
    let mut sys = Matrix::zero(f, nrows, nvars);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, val) in row.into_iter().enumerate() {
            sys.set(r, c, val);
        }
    }
    let ker = sys.kernel_basis();
    let mut basis = Vec::new();
    for col in 0..ker.cols() {
        let flat: Vec<Scalar> = (0..nvars).map(|r| ker.get(r, col).clone()).collect();
        basis.push(Morphism::from_flat(m, n, &flat)?);
    }
    Ok(basis)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// Kernel with its inclusion; exact: `dim ker + dim im = dim source`,
/// vertexwise.
pub fn kernel(f: &Morphism) -> Result<(Representation, Morphism)> {
    let nv = f.source.dims.len();
    let incl_mats: Vec<Matrix> = (0..nv).map(|v| f.mats[v].kernel_basis()).collect();
    let dims: Vec<usize> = incl_mats.iter().map(|m| m.cols()).collect();
    let q = f.source.pres.quiver();
    let mut mats = Vec::new();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        // incl_t * K(a) = M(a) * incl_s has a unique solution
        let rhs = f.source.mats[a].mul(&incl_mats[arr.src])?;
        let ka = incl_mats[arr.dst]
            .solve(&rhs)?
            .ok_or_else(|| Error::BadMorphism("kernel arrow map does not restrict".into()))?;
        mats.push(ka);
    }
    let ker = Representation::new(f.source.pres.clone(), dims, mats)?;
    let incl = Morphism::new(ker.clone(), f.source.clone(), incl_mats)?;
    Ok((ker, incl))
}

/// Image with its inclusion into the target.
pub fn image(f: &Morphism) -> Result<(Representation, Morphism)> {
    let nv = f.source.dims.len();
    let incl_mats: Vec<Matrix> = (0..nv)
        .map(|v| {
            let piv = f.mats[v].rref().pivots;
            f.mats[v].select_columns(&piv)
        })
        .collect();
    let dims: Vec<usize> = incl_mats.iter().map(|m| m.cols()).collect();
    let q = f.source.pres.quiver();
    let mut mats = Vec::new();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let rhs = f.target.mats[a].mul(&incl_mats[arr.src])?;
        let ia = incl_mats[arr.dst]
            .solve(&rhs)?
            .ok_or_else(|| Error::BadMorphism("image arrow map does not restrict".into()))?;
        mats.push(ia);
    }
    let im = Representation::new(f.source.pres.clone(), dims, mats)?;
    let incl = Morphism::new(im.clone(), f.target.clone(), incl_mats)?;
    Ok((im, incl))
}

/// Cokernel with its projection from the target.
pub fn cokernel(f: &Morphism) -> Result<(Representation, Morphism)> {
    let nv = f.source.dims.len();
    let proj_mats: Vec<Matrix> = (0..nv).map(|v| f.mats[v].cokernel_projection().0).collect();
    let dims: Vec<usize> = proj_mats.iter().map(|m| m.rows()).collect();
    let q = f.source.pres.quiver();
    let mut mats = Vec::new();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        // C(a) * proj_s = proj_t * N(a); transpose to solve
        let rhs = proj_mats[arr.dst].mul(&f.target.mats[a])?;
        let sol = proj_mats[arr.src]
            .transpose()
            .solve(&rhs.transpose())?
            .ok_or_else(|| Error::BadMorphism("cokernel arrow map does not descend".into()))?;
        mats.push(sol.transpose());
    }
    let coker = Representation::new(f.source.pres.clone(), dims, mats)?;
    let proj = Morphism::new(f.target.clone(), coker.clone(), proj_mats)?;
    Ok((coker, proj))
}

/// The indecomposable projective `P_x = R(-, x)`: basis at `y` is the set of
/// residue classes of paths `x -> y`; arrows act by composition.
pub fn projective_at(pres: &Arc<BoundPresentation>, x: usize) -> Result<Representation> {
    let q = pres.quiver();
    let f = pres.field();
    if x >= q.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{x}")));
    }
    let dims: Vec<usize> = (0..q.vertex_count())
        .map(|y| pres.paths_table(x, y).map(|t| t.dim()))
        .collect::<Result<_>>()?;
    let mut mats = Vec::new();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let src_paths = pres.paths_table(x, arr.src)?.basis_paths();
        let mut m = Matrix::zero(f, dims[arr.dst], dims[arr.src]);
        for (j, p) in src_paths.iter().enumerate() {
            let extended = p.append_arrow(q, a).expect("basis path extends by arrow");
            let coords = pres.reduce_path(&extended)?;
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        mats.push(m);
    }
    Representation::new(pres.clone(), dims, mats)
}

/// The simple module concentrated at `x`.
pub fn simple_at(pres: &Arc<BoundPresentation>, x: usize) -> Result<Representation> {
    let q = pres.quiver();
    let f = pres.field();
    if x >= q.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{x}")));
    }
    let mut dims = vec![0; q.vertex_count()];
    dims[x] = 1;
    let mats = (0..q.arrow_count())
        .map(|a| {
            let arr = q.arrow(a);
            Matrix::zero(f, dims[arr.dst], dims[arr.src])
        })
        .collect();
    Representation::new(pres.clone(), dims, mats)
}

/// Dual of a representation, over the opposite presentation.
pub fn dual(m: &Representation, op: &Arc<BoundPresentation>) -> Result<Representation> {
    let q = m.presentation().quiver();
    let mut mats = vec![Matrix::zero(m.field(), 0, 0); q.arrow_count()];
    for a in 0..q.arrow_count() {
        let name = &q.arrow(a).name;
        let oa = op
            .quiver()
            .arrow_index(name)
            .ok_or_else(|| Error::BadQuiver(format!("opposite arrow `{name}` missing")))?;
        mats[oa] = m.arrow_matrix(a).transpose();
    }
    Representation::new(op.clone(), m.dims().to_vec(), mats)
}

/// The indecomposable injective `I_x = D(P_x over the opposite)`.
pub fn injective_at(
    pres: &Arc<BoundPresentation>,
    op: &Arc<BoundPresentation>,
    x: usize,
) -> Result<Representation> {
    let p_op = projective_at(op, x)?;
    dual(&p_op, pres)
}

/// The radical subrepresentation `rad M = sum of images of all arrows`,
/// with its inclusion.
pub fn radical(m: &Representation) -> Result<(Representation, Morphism)> {
    let q = m.presentation().quiver();
    let f = m.field();
    let nv = q.vertex_count();
    let mut spans: Vec<RowSpan> = (0..nv).map(|v| RowSpan::new(f, m.dims()[v])).collect();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let mat = m.arrow_matrix(a);
        for c in 0..mat.cols() {
            let col: Vec<Scalar> = (0..mat.rows()).map(|r| mat.get(r, c).clone()).collect();
            spans[arr.dst].insert(col);
        }
    }
    let incl_mats: Vec<Matrix> = (0..nv)
        .map(|v| {
            let span = &spans[v];
            let mut m2 = Matrix::zero(f, m.dims()[v], span.rank());
            for j in 0..span.rank() {
                for (i, val) in span.row(j).iter().enumerate() {
                    m2.set(i, j, val.clone());
                }
            }
            m2
        })
        .collect();
    let dims: Vec<usize> = incl_mats.iter().map(|mm| mm.cols()).collect();
    let mut mats = Vec::new();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let rhs = m.arrow_matrix(a).mul(&incl_mats[arr.src])?;
        let ra = incl_mats[arr.dst]
            .solve(&rhs)?
            .ok_or_else(|| Error::BadMorphism("radical is not arrow-stable".into()))?;
        mats.push(ra);
    }
    let rad = Representation::new(m.presentation().clone(), dims, mats)?;
    let incl = Morphism::new(rad.clone(), m.clone(), incl_mats)?;
    Ok((rad, incl))
}

/// `top M = M / rad M`, with the quotient projection.
pub fn top(m: &Representation) -> Result<(Representation, Morphism)> {
    let (_, incl) = radical(m)?;
    cokernel(&incl)
}

/// The Yoneda morphism `P_x -> M` sending the stationary class to the given
/// element of `M(x)` (a column vector).
pub fn yoneda_morphism(
    p_x: &Representation,
    x: usize,
    m: &Representation,
    elem: &Matrix,
) -> Result<Morphism> {
    let pres = m.presentation();
    let q = pres.quiver();
    let f = m.field();
    if elem.rows() != m.dims()[x] || elem.cols() != 1 {
        return Err(Error::BadMorphism("element shape mismatch".into()));
    }
    let mut mats = Vec::new();
    for y in 0..q.vertex_count() {
        let paths = pres.paths_table(x, y)?.basis_paths();
        let mut fm = Matrix::zero(f, m.dims()[y], p_x.dims()[y]);
        for (j, path) in paths.iter().enumerate() {
            let img = m.eval_path(path).mul(elem)?;
            for i in 0..img.rows() {
                fm.set(i, j, img.get(i, 0).clone());
            }
        }
        mats.push(fm);
    }
    Morphism::new(p_x.clone(), m.clone(), mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::square_gentle;

    fn pres() -> Arc<BoundPresentation> {
        Arc::new(square_gentle(Field::prime(101).unwrap()))
    }

    #[test]
    fn projective_dims_match_paths() {
        let p = pres();
        let p1 = projective_at(&p, 0).unwrap();
        // e1, a, b survive; both length-2 paths die
        assert_eq!(p1.dims(), &[1, 1, 1, 0]);
        let p4 = projective_at(&p, 3).unwrap();
        assert_eq!(p4.dims(), &[0, 0, 0, 1]);
    }

    #[test]
    fn yoneda_dimension_identity() {
        let p = pres();
        for x in 0..4 {
            let px = projective_at(&p, x).unwrap();
            for y in 0..4 {
                let m = projective_at(&p, y).unwrap();
                assert_eq!(hom_dim(&px, &m).unwrap(), m.dims()[x], "Hom(P_{x}, P_{y})");
            }
            let s = simple_at(&p, x).unwrap();
            assert_eq!(hom_dim(&px, &s).unwrap(), 1);
        }
    }

    #[test]
    fn simple_homs() {
        let p = pres();
        let s1 = simple_at(&p, 0).unwrap();
        let s2 = simple_at(&p, 1).unwrap();
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
    }

    #[test]
    fn kernel_image_cokernel_exactness() {
        let p = pres();
        let p1 = projective_at(&p, 0).unwrap();
        let s1 = simple_at(&p, 0).unwrap();
        let basis = hom_basis(&p1, &s1).unwrap();
        assert_eq!(basis.len(), 1);
        let f = &basis[0];
        let (ker, _) = kernel(f).unwrap();
        let (im, _) = image(f).unwrap();
        let (cok, _) = cokernel(f).unwrap();
        for v in 0..4 {
            assert_eq!(ker.dims()[v] + im.dims()[v], p1.dims()[v]);
            assert_eq!(cok.dims()[v] + im.dims()[v], s1.dims()[v]);
        }
        // identity: kernel 0, image = source
        let id = Morphism::identity(&p1);
        assert!(kernel(&id).unwrap().0.is_zero());
        assert_eq!(image(&id).unwrap().0.dims(), p1.dims());
        // zero map: kernel = source, cokernel = target
        let z = Morphism::zero(&p1, &s1).unwrap();
        assert_eq!(kernel(&z).unwrap().0.dims(), p1.dims());
        assert_eq!(cokernel(&z).unwrap().0.dims(), s1.dims());
    }

    #[test]
    fn injective_duality_round_trip() {
        let p = pres();
        let op = Arc::new(p.opposite().unwrap());
        for x in 0..4 {
            let ix = injective_at(&p, &op, x).unwrap();
            let back = dual(&dual(&ix, &op).unwrap(), &p).unwrap();
            assert_eq!(back, ix);
        }
        // I_4 of the square algebra has dims (0,1,1,1)
        let i4 = injective_at(&p, &op, 3).unwrap();
        assert_eq!(i4.dims(), &[0, 1, 1, 1]);
        // vertex with nothing in/out: P = I = S
        let q = crate::quiver::Quiver::new(vec!["v".into()], vec![]).unwrap();
        let single = Arc::new(
            BoundPresentation::certified(q, vec![], Field::prime(101).unwrap(), 4).unwrap(),
        );
        let sop = Arc::new(single.opposite().unwrap());
        let px = projective_at(&single, 0).unwrap();
        let ix = injective_at(&single, &sop, 0).unwrap();
        let sx = simple_at(&single, 0).unwrap();
        assert_eq!(px, sx);
        assert_eq!(ix, sx);
    }

    #[test]
    fn radical_and_top() {
        let p = pres();
        let p1 = projective_at(&p, 0).unwrap();
        let (rad, _) = radical(&p1).unwrap();
        assert_eq!(rad.dims(), &[0, 1, 1, 0]);
        let (t, _) = top(&p1).unwrap();
        assert_eq!(t.dims(), &[1, 0, 0, 0]);
    }

    #[test]
    fn direct_sum_additivity() {
        let p = pres();
        let s1 = simple_at(&p, 0).unwrap();
        let s2 = simple_at(&p, 1).unwrap();
        let p1 = projective_at(&p, 0).unwrap();
        let (sum, incls, projs) = Representation::direct_sum(&[&s1, &s2]).unwrap();
        assert_eq!(sum.total_dim(), 2);
        assert_eq!(
            hom_dim(&sum, &p1).unwrap(),
            hom_dim(&s1, &p1).unwrap() + hom_dim(&s2, &p1).unwrap()
        );
        // proj . incl = id on each summand
        for (i, pj) in incls.iter().zip(&projs) {
            let comp = i.then(pj).unwrap();
            assert_eq!(comp, Morphism::identity(i.source()));
        }
    }
}
