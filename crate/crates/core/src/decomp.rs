//! Krull–Schmidt decomposition over prime fields.
//!
//! The splitting loop works with the endomorphism algebra of a representation:
//! an endomorphism whose minimal polynomial has two coprime factors splits the
//! module into the corresponding primary kernels (Fitting). When no basis
//! element or seeded combination splits, locality of the endomorphism algebra
//! is certified directly: the span of the nilpotent parts must close to a
//! nilpotent two-sided ideal of codimension one. Indecomposability and
//! isomorphism tests are derived from the same machinery; over the rationals
//! all of this is refused rather than approximated.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, RowSpan};
use crate::rep::{hom_basis, kernel, Morphism, Representation};
use crate::rng::SplitMix64;
use num_bigint::BigUint;
use num_traits::One;

/// Direct-sum decomposition into indecomposables, with witnesses composed all
/// the way to the input module.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub summands: Vec<DecompositionSummand>,
}

#[derive(Debug, Clone)]
pub struct DecompositionSummand {
    pub rep: Representation,
    pub multiplicity: usize,
    /// (inclusion into the input, projection from the input), one per copy.
    pub witnesses: Vec<(Morphism, Morphism)>,
}

impl DecompositionReport {
    pub fn total_summands(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// Multiset of dimension vectors, one entry per indecomposable copy.
    pub fn dim_vectors(&self) -> Vec<Vec<usize>> {
        let mut v = Vec::new();
        for s in &self.summands {
            for _ in 0..s.multiplicity {
                v.push(s.rep.dims().to_vec());
            }
        }
        v.sort();
        v
    }
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over F_p
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
struct Poly {
    field: Field,
    // low-to-high, normalised (no trailing zeros)
    coeffs: Vec<Scalar>,
}

impl Poly {
    fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    fn constant(field: Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        // degree of the zero polynomial is treated as 0 by callers that
        // already excluded it
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![f.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = f.add(&out[i], c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = f.add(&out[i], c);
        }
        Poly::new(f, out)
    }

    fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![f.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = f.add(&out[i], c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = f.sub(&out[i], c);
        }
        Poly::new(f, out)
    }

    fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = f.mul(a, b);
                out[i + j] = f.add(&out[i + j], &prod);
            }
        }
        Poly::new(f, out)
    }

    fn divrem(&self, den: &Poly) -> (Poly, Poly) {
        let f = self.field;
        assert!(!den.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = vec![f.zero(); self.coeffs.len().saturating_sub(den.coeffs.len()) + 1];
        let dinv = f.inv(den.lead()).expect("leading coefficient invertible");
        while !rem.is_zero() && rem.coeffs.len() >= den.coeffs.len() {
            let shift = rem.coeffs.len() - den.coeffs.len();
            let c = f.mul(rem.lead(), &dinv);
            quo[shift] = f.add(&quo[shift], &c);
            // rem -= c * x^shift * den
            let mut sub = vec![f.zero(); shift + den.coeffs.len()];
            for (i, d) in den.coeffs.iter().enumerate() {
                sub[shift + i] = f.mul(&c, d);
            }
            rem = rem.sub(&Poly::new(f, sub));
        }
        (Poly::new(f, quo), rem)
    }

    fn rem(&self, den: &Poly) -> Poly {
        self.divrem(den).1
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn monic(&self) -> Poly {
        let f = self.field;
        let inv = f.inv(self.lead()).expect("nonzero");
        Poly::new(f, self.coeffs.iter().map(|c| f.mul(c, &inv)).collect())
    }

    fn derivative(&self) -> Poly {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Poly::new(f, out)
    }

    /// `self^exp mod m`, square-and-multiply over a big exponent.
    fn pow_mod(&self, exp: &BigUint, m: &Poly) -> Poly {
        let f = self.field;
        let mut base = self.rem(m);
        let mut acc = Poly::constant(f, f.one());
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }
}

/// Irreducible factors with multiplicities, seeded Cantor–Zassenhaus for the
/// equal-degree stage. Requires a prime field.
fn factor_min_poly(m: &Poly, rng: &mut SplitMix64) -> Result<Vec<(Poly, usize)>> {
    let f = m.field;
    let Field::Prime(p) = f else {
        return Err(Error::RationalsUnsupported("polynomial factorisation"));
    };
    let deriv = m.derivative();
    if deriv.is_zero() {
        // only possible for degree >= p, far beyond the scales handled here
        return Err(Error::BudgetExceeded("inseparable minimal polynomial".into()));
    }
    let sqfree = m.divrem(&m.gcd(&deriv)).0.monic();

    // distinct-degree stage on the squarefree part
    let mut stage = sqfree.clone();
    let mut irreducibles: Vec<Poly> = Vec::new();
    let x = Poly::x(f);
    let mut xq = x.clone(); // x^(p^d) mod stage, recomputed per degree
    let p_big = BigUint::from(p);
    let mut d = 0usize;
    while !stage.is_zero() && stage.deg() >= 1 {
        d += 1;
        if stage.deg() < 2 * d {
            // whatever is left is irreducible
            irreducibles.push(stage.monic());
            break;
        }
        xq = xq.pow_mod(&p_big, &stage);
        let g = xq.sub(&x).gcd(&stage);
        if g.deg() >= 1 {
            // g = product of all irreducible factors of degree d
            split_equal_degree(&g, d, rng, &mut irreducibles)?;
            stage = stage.divrem(&g).0.monic();
            xq = xq.rem(&stage.clone().add(&Poly::zero(f)));
            if stage.deg() == 0 {
                break;
            }
        }
    }

    let mut out = Vec::new();
    for q in irreducibles {
        let mut e = 0usize;
        let mut rest = m.clone();
        loop {
            let (quo, rem) = rest.divrem(&q);
            if rem.is_zero() {
                e += 1;
                rest = quo;
            } else {
                break;
            }
        }
        out.push((q, e));
    }
    out.sort_by(|a, b| {
        (a.0.deg(), format_poly(&a.0)).cmp(&(b.0.deg(), format_poly(&b.0)))
    });
    Ok(out)
}

fn format_poly(p: &Poly) -> String {
    p.coeffs.iter().map(|c| p.field.format_scalar(c)).collect::<Vec<_>>().join(",")
}

/// Splits a squarefree product of irreducibles of equal degree `d`.
fn split_equal_degree(
    g: &Poly,
    d: usize,
    rng: &mut SplitMix64,
    out: &mut Vec<Poly>,
) -> Result<()> {
    let f = g.field;
    let Field::Prime(p) = f else { unreachable!() };
    if g.deg() == d {
        out.push(g.monic());
        return Ok(());
    }
    // exponent (p^d - 1) / 2; p is odd for every prime used here
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    for _ in 0..512 {
        let coeffs: Vec<Scalar> =
            (0..g.deg()).map(|_| f.from_i64(rng.below(p as u64) as i64)).collect();
        let a = Poly::new(f, coeffs);
        if a.is_zero() {
            continue;
        }
        let mut h = a.gcd(g);
        if h.deg() == 0 || h.deg() == g.deg() {
            let b = a.pow_mod(&exp, g);
            let b1 = b.sub(&Poly::constant(f, f.one()));
            h = b1.gcd(g);
        }
        if h.deg() >= 1 && h.deg() < g.deg() {
            split_equal_degree(&h, d, rng, out)?;
            let rest = g.divrem(&h).0.monic();
            split_equal_degree(&rest, d, rng, out)?;
            return Ok(());
        }
    }
    Err(Error::BudgetExceeded("equal-degree splitting".into()))
}

// ---------------------------------------------------------------------------
// endomorphisms as total-space matrices
// ---------------------------------------------------------------------------

/// Block-diagonal total matrix of an endomorphism on `⊕_x M(x)`.
fn total_matrix(e: &Morphism) -> Matrix {
    let m = e.source();
    let f = m.field();
    let d = m.total_dim();
    let mut out = Matrix::zero(f, d, d);
    let mut off = 0usize;
    for v in 0..m.dims().len() {
        let b = e.mat_at(v);
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                out.set(off + r, off + c, b.get(r, c).clone());
            }
        }
        off += m.dims()[v];
    }
    out
}

fn min_poly_of_matrix(a: &Matrix) -> Poly {
    let f = a.field();
    let d = a.rows();
    if d == 0 {
        return Poly::constant(f, f.one());
    }
    let mut powers: Vec<Matrix> = vec![Matrix::identity(f, d)];
    let mut span = RowSpan::new(f, d * d);
    span.insert(powers[0].entries().to_vec());
    loop {
        let next = powers.last().unwrap().mul(a).unwrap();
        if !span.insert(next.entries().to_vec()) {
            // dependent: solve for the combination
            let k = powers.len();
            let mut sys = Matrix::zero(f, d * d, k);
            for (j, pw) in powers.iter().enumerate() {
                for (i, e) in pw.entries().iter().enumerate() {
                    sys.set(i, j, e.clone());
                }
            }
            let mut rhs = Matrix::zero(f, d * d, 1);
            for (i, e) in next.entries().iter().enumerate() {
                rhs.set(i, 0, e.clone());
            }
            let sol = sys.solve(&rhs).unwrap().expect("dependency is solvable");
            let mut coeffs: Vec<Scalar> = (0..k).map(|i| f.neg(sol.get(i, 0))).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        powers.push(next);
    }
}

/// Evaluates a polynomial on an endomorphism, as a morphism `M -> M`.
fn eval_poly_on_endo(p: &Poly, e: &Morphism) -> Morphism {
    let m = e.source().clone();
    let f = m.field();
    let mut acc = Morphism::identity(&m).scale(&f.zero());
    let mut pw = Morphism::identity(&m);
    for c in &p.coeffs {
        acc = acc.add(&pw.scale(c)).unwrap();
        pw = pw.then(e).unwrap();
    }
    acc
}

// ---------------------------------------------------------------------------
// the splitting loop
// ---------------------------------------------------------------------------

fn seeded_combination(
    basis: &[Morphism],
    rng: &mut SplitMix64,
    p: u64,
    m: &Representation,
) -> Morphism {
    let f = m.field();
    let mut acc = Morphism::identity(m).scale(&f.zero());
    for b in basis {
        let c = f.from_i64(rng.below(p) as i64);
        acc = acc.add(&b.scale(&c)).unwrap();
    }
    acc
}

/// Splits `m` along a coprime factorisation of the minimal polynomial of the
/// endomorphism `e`, if one exists.
fn try_split(
    m: &Representation,
    e: &Morphism,
    rng: &mut SplitMix64,
) -> Result<Option<(Representation, Morphism, Representation, Morphism)>> {
    let tm = total_matrix(e);
    let mp = min_poly_of_matrix(&tm);
    if mp.deg() < 1 {
        return Ok(None);
    }
    let factors = factor_min_poly(&mp, rng)?;
    if factors.len() < 2 {
        return Ok(None);
    }
    // u = first primary component, w = the rest
    let (q0, e0) = &factors[0];
    let mut u = Poly::constant(m.field(), m.field().one());
    for _ in 0..*e0 {
        u = u.mul(q0);
    }
    let w = mp.divrem(&u).0;
    let (k1, i1) = kernel(&eval_poly_on_endo(&u, e))?;
    let (k2, i2) = kernel(&eval_poly_on_endo(&w, e))?;
    debug_assert_eq!(k1.total_dim() + k2.total_dim(), m.total_dim());
    Ok(Some((k1, i1, k2, i2)))
}

/// Certifies that `End(m)` is local: the nilpotent parts of an endomorphism
/// basis must close to a nilpotent two-sided ideal of codimension one.
/// Returns the coefficient of the identity in each basis element (its residue
/// in `End/rad`), or `None` when the certificate fails.
fn certify_local(
    m: &Representation,
    basis: &[Morphism],
    rng: &mut SplitMix64,
) -> Result<Option<()>> {
    let f = m.field();
    let d = m.total_dim();
    if basis.len() == 1 {
        return Ok(Some(()));
    }
    // Reduce each basis element by the scalar found in its (primary) minimal
    // polynomial; a residue-field extension would show up as an irreducible
    // factor of degree >= 2 and is rejected (it never occurs for the
    // presentations handled here, which split over F_p).
    let mut nilparts: Vec<Matrix> = Vec::new();
    for b in basis {
        let tm = total_matrix(b);
        let mp = min_poly_of_matrix(&tm);
        let factors = factor_min_poly(&mp, rng)?;
        if factors.len() != 1 {
            return Ok(None); // splittable after all
        }
        let (q, _) = &factors[0];
        if q.deg() != 1 {
            return Err(Error::BudgetExceeded(
                "endomorphism with residue-field extension; cannot certify locality".into(),
            ));
        }
        // q = t - lambda  => nilpotent part is b - lambda id
        let lambda = f.neg(&q.coeffs[0]);
        let nil = tm.sub(&Matrix::identity(f, d).scale(&lambda)).unwrap();
        nilparts.push(nil);
    }
    // Close under two-sided multiplication by the algebra basis.
    let totals: Vec<Matrix> = basis.iter().map(total_matrix).collect();
    let mut span = RowSpan::new(f, d * d);
    let mut queue: Vec<Matrix> = Vec::new();
    for n in &nilparts {
        if span.insert(n.entries().to_vec()) {
            queue.push(n.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for t in &totals {
            for prod in [t.mul(&x).unwrap(), x.mul(t).unwrap()] {
                if span.insert(prod.entries().to_vec()) {
                    queue.push(prod);
                }
            }
        }
    }
    if span.rank() != basis.len() - 1 {
        return Ok(None);
    }
    // The ideal must be nilpotent: iterate the space product until zero.
    let mut gens: Vec<Matrix> = (0..span.rank())
        .map(|i| {
            Matrix::from_rows(f, d, d, span.row(i).to_vec()).expect("square reshape")
        })
        .collect();
    for _ in 0..=d {
        if gens.is_empty() {
            return Ok(Some(()));
        }
        let mut next = RowSpan::new(f, d * d);
        let mut next_gens = Vec::new();
        for g in &gens {
            for n in &nilparts {
                let prod = g.mul(n).unwrap();
                if !prod.is_zero() && next.insert(prod.entries().to_vec()) {
                    next_gens.push(prod);
                }
            }
        }
        gens = next_gens;
    }
    Ok(None)
}

/// Complete decomposition into indecomposables with witnesses back to `m`.
/// Deterministic for a fixed seed; the multiset of iso classes is independent
/// of the seed.
pub fn decompose(m: &Representation, seed: u64) -> Result<DecompositionReport> {
    if !m.field().is_prime_field() {
        return Err(Error::RationalsUnsupported("decompose"));
    }
    let mut rng = SplitMix64::new(seed ^ 0x5eed_c0de);
    let id = Morphism::identity(m);
    let mut pieces: Vec<(Representation, Morphism, Morphism)> = Vec::new();
    decompose_rec(m, &id, &id, &mut rng, &mut pieces, 0)?;
    // Group by isomorphism.
    let mut summands: Vec<DecompositionSummand> = Vec::new();
    'piece: for (rep, incl, proj) in pieces {
        for s in summands.iter_mut() {
            if indecomposables_isomorphic(&s.rep, &rep)? {
                s.multiplicity += 1;
                s.witnesses.push((incl.clone(), proj.clone()));
                continue 'piece;
            }
        }
        summands.push(DecompositionSummand {
            rep,
            multiplicity: 1,
            witnesses: vec![(incl, proj)],
        });
    }
    summands.sort_by(|a, b| a.rep.sort_key().cmp(&b.rep.sort_key()));
    Ok(DecompositionReport { summands })
}

/// incl: piece -> m (composed), proj: m -> piece (composed).
fn decompose_rec(
    piece: &Representation,
    incl: &Morphism,
    proj: &Morphism,
    rng: &mut SplitMix64,
    out: &mut Vec<(Representation, Morphism, Morphism)>,
    depth: usize,
) -> Result<()> {
    if piece.is_zero() {
        return Ok(());
    }
    if depth > piece.total_dim() + 64 {
        return Err(Error::BudgetExceeded("decomposition recursion".into()));
    }
    let basis = hom_basis(piece, piece)?;
    let Field::Prime(p) = piece.field() else { unreachable!() };

    // Try basis elements first, then seeded combinations.
    let budget = 24 + 2 * basis.len();
    for attempt in 0..budget {
        let cand = if attempt < basis.len() {
            basis[attempt].clone()
        } else {
            seeded_combination(&basis, rng, p as u64, piece)
        };
        if let Some((k1, i1, k2, i2)) = try_split(piece, &cand, rng)? {
            if k1.is_zero() || k2.is_zero() {
                continue;
            }
            // Splitting projections: invert [i1 | i2] vertexwise.
            let (p1, p2) = splitting_projections(piece, &i1, &i2)?;
            let inc1 = i1.then(incl)?;
            let inc2 = i2.then(incl)?;
            let pr1 = proj.then(&p1)?;
            let pr2 = proj.then(&p2)?;
            decompose_rec(&k1, &inc1, &pr1, rng, out, depth + 1)?;
            decompose_rec(&k2, &inc2, &pr2, rng, out, depth + 1)?;
            return Ok(());
        }
    }
    // No split found: certify End local.
    match certify_local(piece, &basis, rng)? {
        Some(()) => {
            out.push((piece.clone(), incl.clone(), proj.clone()));
            Ok(())
        }
        None => Err(Error::BudgetExceeded(
            "no split found but locality certificate failed".into(),
        )),
    }
}

fn splitting_projections(
    m: &Representation,
    i1: &Morphism,
    i2: &Morphism,
) -> Result<(Morphism, Morphism)> {
    let f = m.field();
    let nv = m.dims().len();
    let mut p1_mats = Vec::new();
    let mut p2_mats = Vec::new();
    for v in 0..nv {
        let joint = i1.mat_at(v).hstack(i2.mat_at(v))?;
        let inv = joint.inverse().map_err(|_| {
            Error::BadMorphism("kernels do not span a direct decomposition".into())
        })?;
        let d1 = i1.mat_at(v).cols();
        let d = m.dims()[v];
        let mut p1 = Matrix::zero(f, d1, d);
        let mut p2 = Matrix::zero(f, d - d1, d);
        for r in 0..d1 {
            for c in 0..d {
                p1.set(r, c, inv.get(r, c).clone());
            }
        }
        for r in d1..d {
            for c in 0..d {
                p2.set(r - d1, c, inv.get(r, c).clone());
            }
        }
        p1_mats.push(p1);
        p2_mats.push(p2);
    }
    let p1 = Morphism::new(m.clone(), i1.source().clone(), p1_mats)?;
    let p2 = Morphism::new(m.clone(), i2.source().clone(), p2_mats)?;
    Ok((p1, p2))
}

/// Split/locality analysis for an arbitrary matrix algebra given by a basis
/// of `d x d` matrices containing the identity in its span: `Ok(true)` means
/// the algebra is local (the underlying object is indecomposable), `Ok(false)`
/// means some element's minimal polynomial has two coprime factors (a split
/// exists). Used both for module and for functor endomorphism algebras.
pub fn matrix_algebra_is_local(basis: &[Matrix], dim: usize, seed: u64) -> Result<bool> {
    if basis.is_empty() || dim == 0 {
        return Err(Error::BadMorphism("empty endomorphism algebra".into()));
    }
    let f = basis[0].field();
    if !f.is_prime_field() {
        return Err(Error::RationalsUnsupported("matrix_algebra_is_local"));
    }
    let Field::Prime(p) = f else { unreachable!() };
    let mut rng = SplitMix64::new(seed ^ 0xa15e_ba5e);
    if basis.len() == 1 {
        return Ok(true);
    }
    let budget = 24 + 2 * basis.len();
    for attempt in 0..budget {
        let cand = if attempt < basis.len() {
            basis[attempt].clone()
        } else {
            let mut acc = Matrix::zero(f, dim, dim);
            for b in basis {
                let c = f.from_i64(rng.below(p as u64) as i64);
                acc = acc.add(&b.scale(&c)).unwrap();
            }
            acc
        };
        let mp = min_poly_of_matrix(&cand);
        if mp.deg() >= 1 && factor_min_poly(&mp, &mut rng)?.len() >= 2 {
            return Ok(false);
        }
    }
    match certify_local_matrices(basis, dim, &mut rng)? {
        Some(()) => Ok(true),
        None => Err(Error::BudgetExceeded(
            "no split found but locality certificate failed".into(),
        )),
    }
}

fn certify_local_matrices(
    basis: &[Matrix],
    d: usize,
    rng: &mut SplitMix64,
) -> Result<Option<()>> {
    let f = basis[0].field();
    let mut nilparts: Vec<Matrix> = Vec::new();
    for b in basis {
        let mp = min_poly_of_matrix(b);
        let factors = factor_min_poly(&mp, rng)?;
        if factors.len() != 1 {
            return Ok(None);
        }
        let (q, _) = &factors[0];
        if q.deg() != 1 {
            return Err(Error::BudgetExceeded(
                "endomorphism with residue-field extension; cannot certify locality".into(),
            ));
        }
        let lambda = f.neg(&q.coeffs[0]);
        let nil = b.sub(&Matrix::identity(f, d).scale(&lambda)).unwrap();
        nilparts.push(nil);
    }
    let mut span = RowSpan::new(f, d * d);
    let mut queue: Vec<Matrix> = Vec::new();
    for n in &nilparts {
        if span.insert(n.entries().to_vec()) {
            queue.push(n.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for t in basis {
            for prod in [t.mul(&x).unwrap(), x.mul(t).unwrap()] {
                if span.insert(prod.entries().to_vec()) {
                    queue.push(prod);
                }
            }
        }
    }
    if span.rank() != basis.len() - 1 {
        return Ok(None);
    }
    let mut gens: Vec<Matrix> = (0..span.rank())
        .map(|i| Matrix::from_rows(f, d, d, span.row(i).to_vec()).expect("square reshape"))
        .collect();
    for _ in 0..=d {
        if gens.is_empty() {
            return Ok(Some(()));
        }
        let mut next = RowSpan::new(f, d * d);
        let mut next_gens = Vec::new();
        for g in &gens {
            for n in &nilparts {
                let prod = g.mul(n).unwrap();
                if !prod.is_zero() && next.insert(prod.entries().to_vec()) {
                    next_gens.push(prod);
                }
            }
        }
        gens = next_gens;
    }
    Ok(None)
}

/// Basis of the radical of `End(M)` for an indecomposable `M`: every basis
/// endomorphism has primary minimal polynomial `(t - λ)^e`, and the nilpotent
/// parts `b - λ id` span a codimension-one ideal.
pub fn radical_endo_basis(m: &Representation, seed: u64) -> Result<Vec<Morphism>> {
    if !m.field().is_prime_field() {
        return Err(Error::RationalsUnsupported("radical_endo_basis"));
    }
    let f = m.field();
    let mut rng = SplitMix64::new(seed ^ 0x7ad1_ca1e);
    let basis = hom_basis(m, m)?;
    let flat_len = Morphism::identity(m).flatten().len();
    let mut out_span = RowSpan::new(f, flat_len);
    let mut out = Vec::new();
    for b in &basis {
        let tm = total_matrix(b);
        let mp = min_poly_of_matrix(&tm);
        let factors = factor_min_poly(&mp, &mut rng)?;
        if factors.len() != 1 || factors[0].0.deg() != 1 {
            return Err(Error::BadMorphism(
                "endomorphism algebra is not local over the base field".into(),
            ));
        }
        let lambda = f.neg(&factors[0].0.coeffs[0]);
        let nil = b.add(&Morphism::identity(m).scale(&f.neg(&lambda)))?;
        if out_span.insert(nil.flatten()) {
            out.push(nil);
        }
    }
    if out.len() + 1 != basis.len() {
        return Err(Error::BadMorphism(
            "radical basis has unexpected dimension; module may be decomposable".into(),
        ));
    }
    Ok(out)
}

/// Fitting-based indecomposability test (prime fields only).
pub fn is_indecomposable(m: &Representation, seed: u64) -> Result<bool> {
    if !m.field().is_prime_field() {
        return Err(Error::RationalsUnsupported("is_indecomposable"));
    }
    if m.is_zero() {
        return Ok(false);
    }
    let report = decompose(m, seed)?;
    Ok(report.total_summands() == 1)
}

/// Exact isomorphism test for two modules already known indecomposable: some
/// product of hom-basis elements must be invertible. For indecomposables this
/// is equivalent to isomorphism, since non-invertible endomorphisms form the
/// radical ideal.
pub fn indecomposables_isomorphic(x: &Representation, y: &Representation) -> Result<bool> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let fwd = hom_basis(x, y)?;
    let bwd = hom_basis(y, x)?;
    for f in &fwd {
        for g in &bwd {
            let h = f.then(g)?;
            let tm = total_matrix(&h);
            if tm.rank() == x.total_dim() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// General isomorphism test: decompose both sides and match summands.
pub fn is_isomorphic(x: &Representation, y: &Representation, seed: u64) -> Result<bool> {
    if !crate::rep::same_presentation(x.presentation(), y.presentation()) {
        return Err(Error::PresentationMismatch);
    }
    if x.dims() != y.dims() {
        return Ok(false);
    }
    if !x.field().is_prime_field() {
        return Err(Error::RationalsUnsupported("is_isomorphic"));
    }
    let dx = decompose(x, seed)?;
    let dy = decompose(y, seed)?;
    if dx.total_summands() != dy.total_summands() {
        return Ok(false);
    }
    let mut used = vec![false; dy.summands.len()];
    for sx in &dx.summands {
        let mut matched = false;
        for (j, sy) in dy.summands.iter().enumerate() {
            if used[j] || sy.multiplicity != sx.multiplicity {
                continue;
            }
            if indecomposables_isomorphic(&sx.rep, &sy.rep)? {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::square_gentle;
    use crate::rep::{projective_at, simple_at};
    use std::sync::Arc;

    fn pres() -> Arc<crate::quiver::BoundPresentation> {
        Arc::new(square_gentle(Field::prime(101).unwrap()))
    }

    #[test]
    fn simple_is_indecomposable() {
        let p = pres();
        let s = simple_at(&p, 1).unwrap();
        assert!(is_indecomposable(&s, 7).unwrap());
        let report = decompose(&s, 7).unwrap();
        assert_eq!(report.total_summands(), 1);
    }

    #[test]
    fn double_simple_splits() {
        let p = pres();
        let s = simple_at(&p, 1).unwrap();
        let (sum, _, _) = Representation::direct_sum(&[&s, &s]).unwrap();
        let report = decompose(&sum, 3).unwrap();
        assert_eq!(report.summands.len(), 1);
        assert_eq!(report.summands[0].multiplicity, 2);
        // witnesses: proj . incl = id
        for (i, pr) in &report.summands[0].witnesses {
            assert_eq!(i.then(pr).unwrap(), Morphism::identity(i.source()));
        }
    }

    #[test]
    fn mixed_sum_decomposes() {
        let p = pres();
        let s1 = simple_at(&p, 0).unwrap();
        let p1 = projective_at(&p, 0).unwrap();
        let s3 = simple_at(&p, 2).unwrap();
        let (sum, _, _) = Representation::direct_sum(&[&s1, &p1, &s3]).unwrap();
        let report = decompose(&sum, 11).unwrap();
        assert_eq!(report.total_summands(), 3);
        let mut dims = report.dim_vectors();
        dims.sort();
        assert_eq!(
            dims,
            vec![vec![0, 0, 1, 0], vec![1, 0, 0, 0], vec![1, 1, 1, 0]]
        );
        // seed independence of the iso-class multiset
        let report2 = decompose(&sum, 987654321).unwrap();
        assert_eq!(report.dim_vectors(), report2.dim_vectors());
    }

    #[test]
    fn permuted_basis_detected_isomorphic() {
        let p = pres();
        let p1 = projective_at(&p, 0).unwrap();
        // change of basis at vertex 1 of P_1 is another valid representation
        let f = p1.field();
        let q = p.quiver();
        let mut mats: Vec<Matrix> = (0..q.arrow_count())
            .map(|a| p1.arrow_matrix(a).clone())
            .collect();
        // scale the arrow maps out of vertex 0 by 5 (basis change e -> 5e)
        for a in 0..q.arrow_count() {
            if q.arrow(a).src == 0 {
                mats[a] = mats[a].scale(&f.from_i64(5));
            }
        }
        let twisted = Representation::new(p.clone(), p1.dims().to_vec(), mats).unwrap();
        assert!(is_isomorphic(&p1, &twisted, 5).unwrap());
        assert!(!is_isomorphic(&p1, &simple_at(&p, 0).unwrap(), 5).unwrap());
    }

    #[test]
    fn rationals_are_refused() {
        let q = crate::quiver::Quiver::new(vec!["v".into()], vec![]).unwrap();
        let p = Arc::new(
            crate::quiver::BoundPresentation::certified(q, vec![], Field::rationals(), 4).unwrap(),
        );
        let s = simple_at(&p, 0).unwrap();
        assert!(matches!(
            decompose(&s, 0).unwrap_err(),
            Error::RationalsUnsupported(_)
        ));
    }
}
