//! Composition algebras by Cayley-Dickson doubling, quadratic and cubic
//! etale algebras, discriminants, and etale-subalgebra tests.
//!
//! A [`ConicAlgebra`] stores structure constants on a fixed basis with the
//! unit at index 0, its norm as a [`QuadraticForm`], the trace as a linear
//! form and conjugation as a matrix. The composition law n(xy) = n(x)n(y)
//! is verified on random pairs at construction time; a failure indicates an
//! internal bug and is reported, never ignored.

use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{Field, Scalar, SquareVerdict};
use crate::linalg;
use crate::quadforms::{self, FormVerdict, QuadraticForm};
use crate::rng::subseed;

#[derive(Clone, Debug)]
pub struct ConicAlgebra {
    field: Field,
    dim: usize,
    /// mul[a][b] = coefficient vector of e_a * e_b.
    mul: Vec<Vec<Vec<Scalar>>>,
    norm: QuadraticForm,
    /// t_C(e_a) for each basis index.
    trace: Vec<Scalar>,
    /// conj[a] = coefficient vector of the conjugate of e_a.
    conj: Vec<Vec<Scalar>>,
    split: OnceLock<FormVerdict>,
    /// Doubling parameters applied so far (empty for the base field).
    pub doubling_chain: Vec<Scalar>,
    /// Set when the dimension-2 layer came from a quadratic etale algebra.
    pub etale_base: Option<EtaleKind2>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EtaleKind2 {
    Split,
    SquareRoot(Scalar),
    ArtinSchreier(Scalar),
}

impl ConicAlgebra {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_form(&self) -> &QuadraticForm {
        &self.norm
    }

    pub fn unit(&self) -> Vec<Scalar> {
        linalg::basis_vector(&self.field, self.dim, 0)
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len().max(y.len()) });
        }
        let mut out = linalg::zero_vector(f, self.dim);
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if f.is_zero(yb) {
                    continue;
                }
                let c = f.mul(xa, yb)?;
                for (m, s) in self.mul[a][b].iter().enumerate() {
                    if f.is_zero(s) {
                        continue;
                    }
                    out[m] = f.add(&out[m], &f.mul(&c, s)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn conj_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let mut out = linalg::zero_vector(f, self.dim);
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (m, s) in self.conj[a].iter().enumerate() {
                if f.is_zero(s) {
                    continue;
                }
                out[m] = f.add(&out[m], &f.mul(xa, s)?)?;
            }
        }
        Ok(out)
    }

    pub fn trace_of(&self, x: &[Scalar]) -> Result<Scalar> {
        let f = &self.field;
        let mut acc = f.zero();
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) || f.is_zero(&self.trace[a]) {
                continue;
            }
            acc = f.add(&acc, &f.mul(xa, &self.trace[a])?)?;
        }
        Ok(acc)
    }

    pub fn norm_of(&self, x: &[Scalar]) -> Result<Scalar> {
        self.norm.eval(x)
    }

    pub fn random_vec(&self, rng: &mut impl Rng) -> Vec<Scalar> {
        (0..self.dim).map(|_| self.field.random(rng)).collect()
    }

    /// Splitness: dimension 1 is split; otherwise split iff the norm is
    /// isotropic. Cached after the first query.
    pub fn is_split(&self) -> Result<FormVerdict> {
        if let Some(v) = self.split.get() {
            return Ok(v.clone());
        }
        let v = if self.dim == 1 {
            FormVerdict::yes(None, "one-dimensional algebra")
        } else {
            quadforms::isotropic(&self.norm, quadforms::DEFAULT_BUDGET)?
        };
        let _ = self.split.set(v.clone());
        Ok(v)
    }

    /// Verify n(xy) = n(x) n(y) on random pairs; construction-time guard.
    fn check_composition(&self, samples: usize) -> Result<()> {
        let mut rng = subseed(0xC0DE, &format!("composition-{}-{}", self.field, self.dim));
        for _ in 0..samples {
            let x = self.random_vec(&mut rng);
            let y = self.random_vec(&mut rng);
            let f = &self.field;
            let lhs = self.norm_of(&self.mul_vec(&x, &y)?)?;
            let rhs = f.mul(&self.norm_of(&x)?, &self.norm_of(&y)?)?;
            if !f.eq_within_precision(&lhs, &rhs) {
                return Err(Error::CompositionCheckFailed(format!(
                    "n(xy) != n(x)n(y) over {} at dim {}",
                    self.field, self.dim
                )));
            }
        }
        Ok(())
    }
}

/// The base field as a one-dimensional conic algebra (norm x^2, trace 2x).
pub fn base_algebra(field: &Field) -> ConicAlgebra {
    let mut norm = QuadraticForm::zero(field, 1);
    norm.set(0, 0, field.one());
    ConicAlgebra {
        field: field.clone(),
        dim: 1,
        mul: vec![vec![vec![field.one()]]],
        norm: norm.mark_pfister(),
        trace: vec![field.int(2)],
        conj: vec![vec![field.one()]],
        split: OnceLock::new(),
        doubling_chain: vec![],
        etale_base: None,
    }
}

/// Cayley-Dickson double with multiplication
/// (a, b)(c, d) = (ac + mu conj(d) b, da + b conj(c)) and norm
/// n _|_ (-mu) n.
pub fn cayley_dickson(c: &ConicAlgebra, mu: &Scalar) -> Result<ConicAlgebra> {
    let f = c.field().clone();
    if f.is_zero(mu) {
        return Err(Error::ZeroSlot);
    }
    if c.dim > 4 {
        return Err(Error::DimTooLarge(c.dim));
    }
    if c.dim == 1 && f.characteristic() == 2 {
        return Err(Error::Char2ScalarBase);
    }
    let n = c.dim;
    let dim = 2 * n;
    let mut mul = vec![vec![linalg::zero_vector(&f, dim); dim]; dim];
    // basis: (e_a, 0) at a, (0, e_b) at n + b
    let embed = |lo: &[Scalar], hi: &[Scalar]| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(dim);
        v.extend_from_slice(lo);
        v.extend_from_slice(hi);
        v
    };
    let zero_n = linalg::zero_vector(&f, n);
    for a in 0..dim {
        for b in 0..dim {
            let (xa, xb) = if a < n {
                (linalg::basis_vector(&f, n, a), zero_n.clone())
            } else {
                (zero_n.clone(), linalg::basis_vector(&f, n, a - n))
            };
            let (yc, yd) = if b < n {
                (linalg::basis_vector(&f, n, b), zero_n.clone())
            } else {
                (zero_n.clone(), linalg::basis_vector(&f, n, b - n))
            };
            // (a, b)(c, d) = (ac + mu conj(d) b, da + b conj(c))
            let ac = c.mul_vec(&xa, &yc)?;
            let dbar_b = c.mul_vec(&c.conj_vec(&yd)?, &xb)?;
            let lo = linalg::add_vec(&f, &ac, &linalg::scale_vec(&f, mu, &dbar_b)?)?;
            let da = c.mul_vec(&yd, &xa)?;
            let b_cbar = c.mul_vec(&xb, &c.conj_vec(&yc)?)?;
            let hi = linalg::add_vec(&f, &da, &b_cbar)?;
            mul[a][b] = embed(&lo, &hi);
        }
    }
    let norm = quadforms::pfister_multiple(&c.norm, std::slice::from_ref(mu))?;
    let mut trace = Vec::with_capacity(dim);
    trace.extend(c.trace.iter().cloned());
    trace.extend(std::iter::repeat(f.zero()).take(n));
    let mut conj = Vec::with_capacity(dim);
    for a in 0..n {
        conj.push(embed(&c.conj[a], &zero_n));
    }
    for b in 0..n {
        let neg = linalg::scale_vec(&f, &f.int(-1), &linalg::basis_vector(&f, n, b))?;
        conj.push(embed(&zero_n, &neg));
    }
    let mut chain = c.doubling_chain.clone();
    chain.push(mu.clone());
    let out = ConicAlgebra {
        field: f,
        dim,
        mul,
        norm,
        trace,
        conj,
        split: OnceLock::new(),
        doubling_chain: chain,
        etale_base: c.etale_base.clone(),
    };
    out.check_composition(100)?;
    Ok(out)
}

// ----------------------------------------------------------------------
// etale algebras
// ----------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum EtaleSpec2 {
    Split,
    SquareRoot(Scalar),
    ArtinSchreier(Scalar),
}

#[derive(Clone, Debug)]
pub struct EtaleAlgebra {
    field: Field,
    rank: usize,
    /// mul[a][b] as for conic algebras; unit at index 0.
    mul: Vec<Vec<Vec<Scalar>>>,
    pub kind: EtaleKind,
}

#[derive(Clone, Debug)]
pub enum EtaleKind {
    Split2,
    SquareRoot(Scalar),
    ArtinSchreier(Scalar),
    SplitTriple,
    MinPoly(Vec<Scalar>),
    ProductWithQuadratic(Box<EtaleAlgebra>),
}

impl EtaleAlgebra {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mul_table(&self) -> &Vec<Vec<Vec<Scalar>>> {
        &self.mul
    }

    pub fn unit(&self) -> Vec<Scalar> {
        linalg::basis_vector(&self.field, self.rank, 0)
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let mut out = linalg::zero_vector(f, self.rank);
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if f.is_zero(yb) {
                    continue;
                }
                let c = f.mul(xa, yb)?;
                for (m, s) in self.mul[a][b].iter().enumerate() {
                    if f.is_zero(s) {
                        continue;
                    }
                    out[m] = f.add(&out[m], &f.mul(&c, s)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of multiplication by x in the chosen basis.
    pub fn mul_matrix(&self, x: &[Scalar]) -> Result<linalg::Matrix> {
        let f = &self.field;
        let mut m = vec![vec![f.zero(); self.rank]; self.rank];
        for b in 0..self.rank {
            let col = self.mul_vec(x, &linalg::basis_vector(f, self.rank, b))?;
            for (r, val) in col.into_iter().enumerate() {
                m[r][b] = val;
            }
        }
        Ok(m)
    }

    /// Linear trace T(x) = tr of the multiplication matrix.
    pub fn trace_of(&self, x: &[Scalar]) -> Result<Scalar> {
        let f = &self.field;
        let m = self.mul_matrix(x)?;
        let mut acc = f.zero();
        for i in 0..self.rank {
            acc = f.add(&acc, &m[i][i])?;
        }
        Ok(acc)
    }

    /// Norm N(x) = det of the multiplication matrix.
    pub fn norm_of(&self, x: &[Scalar]) -> Result<Scalar> {
        linalg::det(&self.field, &self.mul_matrix(x)?)
    }

    /// Trace bilinear form (x, y) |-> T(xy) as a Gram matrix.
    pub fn trace_gram(&self) -> Result<linalg::Matrix> {
        let f = &self.field;
        let mut g = vec![vec![f.zero(); self.rank]; self.rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                let prod = self.mul_vec(
                    &linalg::basis_vector(f, self.rank, i),
                    &linalg::basis_vector(f, self.rank, j),
                )?;
                g[i][j] = self.trace_of(&prod)?;
            }
        }
        Ok(g)
    }

    pub fn is_etale(&self) -> Result<bool> {
        Ok(!self.field.is_zero(&linalg::det(&self.field, &self.trace_gram()?)?))
    }

    /// Conjugation of a rank-2 etale algebra (the nontrivial automorphism):
    /// x |-> t(x) 1 - x.
    pub fn conj2(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.rank != 2 {
            return Err(Error::NotRank3);
        }
        let f = &self.field;
        let t = self.trace_of(x)?;
        let mut out = linalg::scale_vec(&f.clone(), &f.int(-1), x)?;
        out[0] = f.add(&out[0], &t)?;
        Ok(out)
    }

    /// Norm form of a rank-2 etale algebra as a binary quadratic form.
    pub fn norm_form2(&self) -> Result<QuadraticForm> {
        if self.rank != 2 {
            return Err(Error::NotRank3);
        }
        let f = &self.field;
        let mut q = QuadraticForm::zero(f, 2);
        let e0 = linalg::basis_vector(f, 2, 0);
        let e1 = linalg::basis_vector(f, 2, 1);
        q.set(0, 0, self.norm_of(&e0)?);
        q.set(1, 1, self.norm_of(&e1)?);
        let sum = linalg::add_vec(f, &e0, &e1)?;
        let cross = f.sub(
            &self.norm_of(&sum)?,
            &f.add(&self.norm_of(&e0)?, &self.norm_of(&e1)?)?,
        )?;
        q.set(0, 1, cross);
        Ok(q.mark_pfister())
    }

    /// View a rank-2 etale algebra as a 2-dimensional conic algebra, ready
    /// for Cayley-Dickson doubling.
    pub fn to_conic(&self) -> Result<ConicAlgebra> {
        if self.rank != 2 {
            return Err(Error::NotRank3);
        }
        let f = self.field.clone();
        let e0 = linalg::basis_vector(&f, 2, 0);
        let e1 = linalg::basis_vector(&f, 2, 1);
        let conj = vec![self.conj2(&e0)?, self.conj2(&e1)?];
        let trace = vec![self.trace_of(&e0)?, self.trace_of(&e1)?];
        let kind2 = match &self.kind {
            EtaleKind::Split2 => EtaleKind2::Split,
            EtaleKind::SquareRoot(d) => EtaleKind2::SquareRoot(d.clone()),
            EtaleKind::ArtinSchreier(b) => EtaleKind2::ArtinSchreier(b.clone()),
            _ => return Err(Error::NotRank3),
        };
        let out = ConicAlgebra {
            field: f,
            dim: 2,
            mul: self.mul.clone(),
            norm: self.norm_form2()?,
            trace,
            conj,
            split: OnceLock::new(),
            doubling_chain: vec![],
            etale_base: Some(kind2),
        };
        out.check_composition(50)?;
        Ok(out)
    }
}

/// Quadratic etale algebra over `field`.
pub fn quadratic_etale(field: &Field, spec: EtaleSpec2) -> Result<EtaleAlgebra> {
    let f = field.clone();
    let (mul, kind) = match spec {
        EtaleSpec2::Split => {
            // basis 1, w with w^2 = w; the two idempotents are w and 1 - w
            let mut mul = empty_table(&f, 2);
            set_entry(&mut mul, 0, 0, vec![f.one(), f.zero()]);
            set_entry(&mut mul, 0, 1, vec![f.zero(), f.one()]);
            set_entry(&mut mul, 1, 0, vec![f.zero(), f.one()]);
            set_entry(&mut mul, 1, 1, vec![f.zero(), f.one()]);
            (mul, EtaleKind::Split2)
        }
        EtaleSpec2::SquareRoot(d) => {
            if f.characteristic() == 2 {
                return Err(Error::WrongCharacteristic(2));
            }
            if f.is_zero(&d) {
                return Err(Error::NonEtale("square root of zero".into()));
            }
            let mut mul = empty_table(&f, 2);
            set_entry(&mut mul, 0, 0, vec![f.one(), f.zero()]);
            set_entry(&mut mul, 0, 1, vec![f.zero(), f.one()]);
            set_entry(&mut mul, 1, 0, vec![f.zero(), f.one()]);
            set_entry(&mut mul, 1, 1, vec![d.clone(), f.zero()]);
            (mul, EtaleKind::SquareRoot(d))
        }
        EtaleSpec2::ArtinSchreier(b) => {
            if f.characteristic() != 2 {
                return Err(Error::WrongCharacteristic(f.characteristic()));
            }
            // basis 1, w with w^2 = w + b
            let mut mul = empty_table(&f, 2);
            set_entry(&mut mul, 0, 0, vec![f.one(), f.zero()]);
            set_entry(&mut mul, 0, 1, vec![f.zero(), f.one()]);
            set_entry(&mut mul, 1, 0, vec![f.zero(), f.one()]);
            set_entry(&mut mul, 1, 1, vec![b.clone(), f.one()]);
            (mul, EtaleKind::ArtinSchreier(b))
        }
    };
    let alg = EtaleAlgebra { field: f, rank: 2, mul, kind };
    if !alg.is_etale()? {
        return Err(Error::NonEtale("degenerate trace form".into()));
    }
    Ok(alg)
}

#[derive(Clone, Debug)]
pub enum EtaleSpec3 {
    SplitTriple,
    /// Monic cubic x^3 + c2 x^2 + c1 x + c0 given little-endian (c0, c1, c2).
    MinPoly(Vec<Scalar>),
    ProductWith(EtaleAlgebra),
}

/// Cubic etale algebra over `field`.
pub fn cubic_etale(field: &Field, spec: EtaleSpec3) -> Result<EtaleAlgebra> {
    let f = field.clone();
    let (mul, kind) = match spec {
        EtaleSpec3::SplitTriple => {
            // k x k x k on idempotents; basis 1, u, v with u = (0,1,0),
            // v = (0,0,1): u^2 = u, v^2 = v, uv = 0
            let mut mul = empty_table(&f, 3);
            for i in 0..3 {
                set_entry(&mut mul, 0, i, linalg::basis_vector(&f, 3, i));
                set_entry(&mut mul, i, 0, linalg::basis_vector(&f, 3, i));
            }
            set_entry(&mut mul, 1, 1, linalg::basis_vector(&f, 3, 1));
            set_entry(&mut mul, 2, 2, linalg::basis_vector(&f, 3, 2));
            set_entry(&mut mul, 1, 2, linalg::zero_vector(&f, 3));
            set_entry(&mut mul, 2, 1, linalg::zero_vector(&f, 3));
            (mul, EtaleKind::SplitTriple)
        }
        EtaleSpec3::MinPoly(coeffs) => {
            if coeffs.len() != 3 {
                return Err(Error::parse("cubic minimal polynomial needs three coefficients"));
            }
            // separability: gcd(fpoly, fpoly') = 1
            let mut fp: Vec<Scalar> = coeffs.clone();
            fp.push(f.one());
            let deriv = crate::fpoly::derivative(&f, &fp)?;
            let g = crate::fpoly::gcd(&f, &fp, &deriv)?;
            if crate::fpoly::degree(&f, &g) != Some(0) {
                return Err(Error::InseparablePoly);
            }
            // basis 1, x, x^2 with x^3 = -(c0 + c1 x + c2 x^2)
            let mut mul = empty_table(&f, 3);
            for i in 0..3 {
                set_entry(&mut mul, 0, i, linalg::basis_vector(&f, 3, i));
                set_entry(&mut mul, i, 0, linalg::basis_vector(&f, 3, i));
            }
            let xcube: Vec<Scalar> = coeffs.iter().map(|c| f.neg(c)).collect();
            set_entry(&mut mul, 1, 1, linalg::basis_vector(&f, 3, 2));
            set_entry(&mut mul, 1, 2, xcube.clone());
            set_entry(&mut mul, 2, 1, xcube.clone());
            // x^4 = x * x^3
            let mut x4 = linalg::zero_vector(&f, 3);
            // multiply xcube by x: shift with reduction
            x4[1] = f.add(&x4[1], &xcube[0])?;
            x4[2] = f.add(&x4[2], &xcube[1])?;
            let top = xcube[2].clone();
            for i in 0..3 {
                x4[i] = f.add(&x4[i], &f.mul(&top, &xcube[i])?)?;
            }
            set_entry(&mut mul, 2, 2, x4);
            (mul, EtaleKind::MinPoly(coeffs))
        }
        EtaleSpec3::ProductWith(k2) => {
            if k2.rank() != 2 {
                return Err(Error::NotRank3);
            }
            // k x K on basis (1,1_K), (0,1_K), (0,w)
            let mut mul = empty_table(&f, 3);
            for i in 0..3 {
                set_entry(&mut mul, 0, i, linalg::basis_vector(&f, 3, i));
                set_entry(&mut mul, i, 0, linalg::basis_vector(&f, 3, i));
            }
            let kmul = |a: usize, b: usize| -> Vec<Scalar> {
                // indices 1, 2 correspond to K basis 0, 1
                let prod = k2.mul[a][b].clone();
                vec![f.zero(), prod[0].clone(), prod[1].clone()]
            };
            set_entry(&mut mul, 1, 1, kmul(0, 0));
            set_entry(&mut mul, 1, 2, kmul(0, 1));
            set_entry(&mut mul, 2, 1, kmul(1, 0));
            set_entry(&mut mul, 2, 2, kmul(1, 1));
            (mul, EtaleKind::ProductWithQuadratic(Box::new(k2)))
        }
    };
    let alg = EtaleAlgebra { field: f, rank: 3, mul, kind };
    if !alg.is_etale()? {
        return Err(Error::NonEtale("degenerate trace form".into()));
    }
    Ok(alg)
}

fn empty_table(f: &Field, n: usize) -> Vec<Vec<Vec<Scalar>>> {
    vec![vec![linalg::zero_vector(f, n); n]; n]
}

fn set_entry(t: &mut [Vec<Vec<Scalar>>], a: usize, b: usize, v: Vec<Scalar>) {
    t[a][b] = v;
}

/// Discriminant of a rank-3 etale algebra as a quadratic etale algebra.
pub fn discriminant(e: &EtaleAlgebra) -> Result<EtaleAlgebra> {
    if e.rank() != 3 {
        return Err(Error::NotRank3);
    }
    let f = e.field().clone();
    match &e.kind {
        EtaleKind::SplitTriple => quadratic_etale(&f, EtaleSpec2::Split),
        EtaleKind::ProductWithQuadratic(k) => Ok((**k).clone()),
        EtaleKind::MinPoly(c) => {
            if f.characteristic() == 2 {
                // Berlekamp discriminant of x^3 + a x^2 + b x + c:
                // delta = (b^3 + a^3 c + c^2) / (ab + c)^2
                let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
                let denom = f.add(&f.mul(c2, c1)?, c0)?;
                if f.is_zero(&denom) {
                    return Err(Error::InseparablePoly);
                }
                let num = f.add(
                    &f.add(
                        &f.pow(c1, 3)?,
                        &f.mul(&f.pow(c2, 3)?, c0)?,
                    )?,
                    &f.mul(c0, c0)?,
                )?;
                let delta = f.div(&num, &f.mul(&denom, &denom)?)?;
                if f.is_perfect() && f.artin_schreier_trivial(&delta)? {
                    quadratic_etale(&f, EtaleSpec2::Split)
                } else {
                    quadratic_etale(&f, EtaleSpec2::ArtinSchreier(delta))
                }
            } else {
                // disc(x^3 + a x^2 + b x + c)
                //   = 18abc - 4a^3c + a^2 b^2 - 4b^3 - 27c^2
                let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
                let t1 = f.mul(&f.int(18), &f.mul(c2, &f.mul(c1, c0)?)?)?;
                let t2 = f.mul(&f.int(-4), &f.mul(&f.pow(c2, 3)?, c0)?)?;
                let t3 = f.mul(&f.mul(c2, c2)?, &f.mul(c1, c1)?)?;
                let t4 = f.mul(&f.int(-4), &f.pow(c1, 3)?)?;
                let t5 = f.mul(&f.int(-27), &f.mul(c0, c0)?)?;
                let mut disc = f.add(&t1, &t2)?;
                disc = f.add(&disc, &t3)?;
                disc = f.add(&disc, &t4)?;
                disc = f.add(&disc, &t5)?;
                if f.is_zero(&disc) {
                    return Err(Error::InseparablePoly);
                }
                let rep = f.square_class_rep(&disc)?;
                if f.is_square(&disc)? == SquareVerdict::Square {
                    quadratic_etale(&f, EtaleSpec2::Split)
                } else {
                    quadratic_etale(&f, EtaleSpec2::SquareRoot(rep))
                }
            }
        }
        _ => Err(Error::NotRank3),
    }
}

/// Does the quadratic etale algebra K embed into the conic algebra C?
/// Searches two-dimensional slices span(1, e_m) first (solving the trace and
/// norm equations there), then falls back to full enumeration within budget.
pub fn embeds_in(k: &EtaleAlgebra, c: &ConicAlgebra, budget: u64) -> Result<FormVerdict> {
    if k.rank() != 2 {
        return Err(Error::NotRank3);
    }
    if k.field() != c.field() {
        return Err(Error::FieldMismatch);
    }
    let f = c.field().clone();
    if c.dim() < 2 {
        return Ok(FormVerdict::no("target algebra too small"));
    }
    // generator w = second basis vector of K
    let w = linalg::basis_vector(&f, 2, 1);
    let t_gen = k.trace_of(&w)?;
    let n_gen = k.norm_of(&w)?;
    let check = |x: &Vec<Scalar>| -> Result<bool> {
        Ok(c.trace_of(x)? == t_gen && c.norm_of(x)? == n_gen)
    };
    if let Some(elements) = f.elements() {
        // slice search x = alpha 1 + beta e_m, beta != 0
        for m in 1..c.dim() {
            for alpha in &elements {
                for beta in &elements {
                    if f.is_zero(beta) {
                        continue;
                    }
                    let mut x = linalg::zero_vector(&f, c.dim());
                    x[0] = alpha.clone();
                    x[m] = beta.clone();
                    if check(&x)? {
                        return Ok(FormVerdict::yes(Some(x), "two-dimensional slice search"));
                    }
                }
            }
        }
        // full enumeration fallback
        let order = f.order().unwrap();
        let mut total: u128 = 1;
        for _ in 0..c.dim() {
            total = total.saturating_mul(order);
        }
        if total > budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "embedding search needs {order}^{} evaluations",
                c.dim()
            )));
        }
        for x in quadforms::VecEnum::new(elements, c.dim()) {
            // skip scalars: x must generate a rank-2 subalgebra
            if x[1..].iter().all(|v| f.is_zero(v)) {
                continue;
            }
            if check(&x)? {
                return Ok(FormVerdict::yes(Some(x), "full enumeration"));
            }
        }
        return Ok(FormVerdict::no("full enumeration found no embedded generator"));
    }
    Ok(FormVerdict::unknown("embedding search needs a finite field"))
}

/// The norm of the iterated Cayley-Dickson double: <<a_1, ..., a_n>>.
/// In characteristic 2, slot 0 is the Artin-Schreier parameter of the
/// binary etale base [1, b].
pub fn pfister_norm(field: &Field, slots: &[Scalar]) -> Result<QuadraticForm> {
    if field.characteristic() == 2 {
        let Some((b, rest)) = slots.split_first() else {
            return Err(Error::Char2WithoutEtaleBase);
        };
        let base = quadratic_etale(field, EtaleSpec2::ArtinSchreier(b.clone()))?;
        let mut alg = base.to_conic()?;
        for mu in rest {
            if field.is_zero(mu) {
                return Err(Error::ZeroSlot);
            }
            alg = cayley_dickson(&alg, mu)?;
        }
        Ok(alg.norm_form().clone().mark_pfister())
    } else {
        for mu in slots {
            if field.is_zero(mu) {
                return Err(Error::ZeroSlot);
            }
        }
        let mut alg = base_algebra(field);
        for mu in slots {
            alg = cayley_dickson(&alg, mu)?;
        }
        Ok(alg.norm_form().clone().mark_pfister())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn rational_quaternions_norm_is_sum_of_four_squares() {
        let q = Field::rationals();
        let m1 = q.int(-1);
        let c = cayley_dickson(&base_algebra(&q), &m1).unwrap();
        let h = cayley_dickson(&c, &m1).unwrap();
        assert_eq!(h.dim(), 4);
        let expected = QuadraticForm::diagonal(&q, &[q.one(), q.one(), q.one(), q.one()]);
        for i in 0..4 {
            for j in i..4 {
                assert_eq!(h.norm_form().coeff(i, j), expected.coeff(i, j));
            }
        }
        // octonions over Q: norm <1,...,1> is anisotropic by sign analysis
        let o = cayley_dickson(&h, &m1).unwrap();
        assert!(o.is_split().unwrap().is_no());
    }

    #[test]
    fn split_doubling_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let c = cayley_dickson(&base_algebra(&f7), &f7.one()).unwrap();
        // slot 1 splits: norm <1, -1>
        assert!(c.is_split().unwrap().is_yes());
        // any octonion algebra over a finite field is split
        let h = cayley_dickson(&c, &f7.int(3)).unwrap();
        let o = cayley_dickson(&h, &f7.int(5)).unwrap();
        assert!(o.is_split().unwrap().is_yes());
    }

    #[test]
    fn conjugation_is_an_involution_and_antihomomorphism() {
        let f5 = Field::prime(5).unwrap();
        let h = cayley_dickson(
            &cayley_dickson(&base_algebra(&f5), &f5.int(2)).unwrap(),
            &f5.int(3),
        )
        .unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        for _ in 0..100 {
            let x = h.random_vec(&mut rng);
            let y = h.random_vec(&mut rng);
            let lhs = h.conj_vec(&h.mul_vec(&x, &y).unwrap()).unwrap();
            let rhs = h
                .mul_vec(&h.conj_vec(&y).unwrap(), &h.conj_vec(&x).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(h.conj_vec(&h.conj_vec(&x).unwrap()).unwrap(), x);
            // x + conj(x) = t(x) 1 and x conj(x) = n(x) 1
            let f = h.field();
            let sum = linalg::add_vec(f, &x, &h.conj_vec(&x).unwrap()).unwrap();
            let mut expect = linalg::zero_vector(f, 4);
            expect[0] = h.trace_of(&x).unwrap();
            assert_eq!(sum, expect);
            let prod = h.mul_vec(&x, &h.conj_vec(&x).unwrap()).unwrap();
            let mut expect = linalg::zero_vector(f, 4);
            expect[0] = h.norm_of(&x).unwrap();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn octonions_are_alternative() {
        let f5 = Field::prime(5).unwrap();
        let mut alg = base_algebra(&f5);
        for mu in [1i64, 2, 1] {
            alg = cayley_dickson(&alg, &f5.int(mu)).unwrap();
        }
        assert_eq!(alg.dim(), 8);
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = alg.random_vec(&mut rng);
            let y = alg.random_vec(&mut rng);
            let xx = alg.mul_vec(&x, &x).unwrap();
            assert_eq!(
                alg.mul_vec(&xx, &y).unwrap(),
                alg.mul_vec(&x, &alg.mul_vec(&x, &y).unwrap()).unwrap()
            );
            assert_eq!(
                alg.mul_vec(&alg.mul_vec(&y, &x).unwrap(), &x).unwrap(),
                alg.mul_vec(&y, &xx).unwrap()
            );
        }
    }

    #[test]
    fn pfister_examples() {
        // <<1>> over F_5 = <1, -1>
        let f5 = Field::prime(5).unwrap();
        let p = pfister_norm(&f5, &[f5.one()]).unwrap();
        assert_eq!(p.coeff(0, 0), &f5.one());
        assert_eq!(p.coeff(1, 1), &f5.int(-1));
        assert!(quadforms::isotropic(&p, 1000).unwrap().is_yes());

        // <<-1,-1>> over Q = <1,1,1,1>
        let q = Field::rationals();
        let p = pfister_norm(&q, &[q.int(-1), q.int(-1)]).unwrap();
        for i in 0..4 {
            assert_eq!(p.coeff(i, i), &q.one());
        }

        // <<-1,-1>> over F_7: 4-dimensional and hyperbolic
        let f7 = Field::prime(7).unwrap();
        let p = pfister_norm(&f7, &[f7.int(-1), f7.int(-1)]).unwrap();
        assert_eq!(p.dim(), 4);
        assert!(quadforms::hyperbolic(&p, 10_000_000).unwrap().is_yes());
    }

    #[test]
    fn char2_pfister_needs_etale_base() {
        let f2 = Field::prime(2).unwrap();
        assert!(matches!(pfister_norm(&f2, &[]), Err(Error::Char2WithoutEtaleBase)));
        // [1, b] base with one doubling slot: dimension 4
        let p = pfister_norm(&f2, &[f2.one(), f2.one()]).unwrap();
        assert_eq!(p.dim(), 4);
    }

    #[test]
    fn cd_norm_matches_pfister_multiple() {
        let f3 = Field::prime(3).unwrap();
        let c = cayley_dickson(&base_algebra(&f3), &f3.int(2)).unwrap();
        let mu = f3.int(2);
        let doubled = cayley_dickson(&c, &mu).unwrap();
        let expected = quadforms::pfister_multiple(c.norm_form(), &[mu]).unwrap();
        for i in 0..4 {
            for j in i..4 {
                assert_eq!(doubled.norm_form().coeff(i, j), expected.coeff(i, j));
            }
        }
    }

    #[test]
    fn quadratic_etale_examples() {
        let f5 = Field::prime(5).unwrap();
        // split: norm is the hyperbolic plane
        let k = quadratic_etale(&f5, EtaleSpec2::Split).unwrap();
        let n = k.norm_form2().unwrap();
        assert!(quadforms::hyperbolic(&n, 1000).unwrap().is_yes());
        // sqrt(2): 2 is a nonsquare mod 5, so the norm is anisotropic
        let k = quadratic_etale(&f5, EtaleSpec2::SquareRoot(f5.int(2))).unwrap();
        let n = k.norm_form2().unwrap();
        assert!(quadforms::isotropic(&n, 1000).unwrap().is_no());
        // Artin-Schreier over F_2: x^2 + x + 1 is irreducible, F_4
        let f2 = Field::prime(2).unwrap();
        let k = quadratic_etale(&f2, EtaleSpec2::ArtinSchreier(f2.one())).unwrap();
        assert!(k.is_etale().unwrap());
        let n = k.norm_form2().unwrap();
        assert!(quadforms::isotropic(&n, 1000).unwrap().is_no());
    }

    #[test]
    fn cubic_etale_examples() {
        let f7 = Field::prime(7).unwrap();
        let e = cubic_etale(&f7, EtaleSpec3::SplitTriple).unwrap();
        // norm of (a, b, c) = abc; check on 1 + u + v <-> (1,2,3)-like data
        let one = e.unit();
        assert_eq!(e.norm_of(&one).unwrap(), f7.one());
        assert_eq!(e.trace_of(&one).unwrap(), f7.int(3));

        // x^3 + x + 1 over F_5 has no roots: the field F_125
        let f5 = Field::prime(5).unwrap();
        let e = cubic_etale(
            &f5,
            EtaleSpec3::MinPoly(vec![f5.one(), f5.one(), f5.zero()]),
        )
        .unwrap();
        assert!(e.is_etale().unwrap());
        // every nonzero element has nonzero norm in a field
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x: Vec<Scalar> = (0..3).map(|_| f5.random(&mut rng)).collect();
            if x.iter().all(|c| f5.is_zero(c)) {
                continue;
            }
            assert!(!f5.is_zero(&e.norm_of(&x).unwrap()));
        }

        // x^3 - 2 over Q: irreducible by the rational root test
        let q = Field::rationals();
        let e = cubic_etale(
            &q,
            EtaleSpec3::MinPoly(vec![q.int(-2), q.zero(), q.zero()]),
        )
        .unwrap();
        assert!(e.is_etale().unwrap());
    }

    #[test]
    fn norm_multiplicativity_of_etale_algebras() {
        let f5 = Field::prime(5).unwrap();
        for spec in [
            EtaleSpec3::SplitTriple,
            EtaleSpec3::MinPoly(vec![f5.one(), f5.one(), f5.zero()]),
        ] {
            let e = cubic_etale(&f5, spec).unwrap();
            let mut rng = ChaCha20Rng::seed_from_u64(23);
            for _ in 0..100 {
                let x: Vec<Scalar> = (0..3).map(|_| f5.random(&mut rng)).collect();
                let y: Vec<Scalar> = (0..3).map(|_| f5.random(&mut rng)).collect();
                let xy = e.mul_vec(&x, &y).unwrap();
                assert_eq!(
                    e.norm_of(&xy).unwrap(),
                    f5.mul(&e.norm_of(&x).unwrap(), &e.norm_of(&y).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        let f5 = Field::prime(5).unwrap();
        // split triple -> split discriminant
        let e = cubic_etale(&f5, EtaleSpec3::SplitTriple).unwrap();
        assert!(matches!(discriminant(&e).unwrap().kind, EtaleKind::Split2));
        // F_125 / F_5 is cyclic: discriminant is a square -> split
        let e = cubic_etale(
            &f5,
            EtaleSpec3::MinPoly(vec![f5.one(), f5.one(), f5.zero()]),
        )
        .unwrap();
        assert!(matches!(discriminant(&e).unwrap().kind, EtaleKind::Split2));
        // Q[x]/(x^3 - 2): disc = -108, square class of -3
        let q = Field::rationals();
        let e = cubic_etale(
            &q,
            EtaleSpec3::MinPoly(vec![q.int(-2), q.zero(), q.zero()]),
        )
        .unwrap();
        match discriminant(&e).unwrap().kind {
            EtaleKind::SquareRoot(d) => assert_eq!(d, q.int(-3)),
            other => panic!("expected SquareRoot, got {other:?}"),
        }
    }

    #[test]
    fn embedding_examples() {
        let f5 = Field::prime(5).unwrap();
        // split octonions over F_5
        let mut oct = quadratic_etale(&f5, EtaleSpec2::Split)
            .unwrap()
            .to_conic()
            .unwrap();
        oct = cayley_dickson(&oct, &f5.one()).unwrap();
        oct = cayley_dickson(&oct, &f5.one()).unwrap();
        // split K embeds
        let ksplit = quadratic_etale(&f5, EtaleSpec2::Split).unwrap();
        assert!(embeds_in(&ksplit, &oct, 10_000_000).unwrap().is_yes());
        // F_25 embeds into the split octonions
        let k25 = quadratic_etale(&f5, EtaleSpec2::SquareRoot(f5.int(2))).unwrap();
        let v = embeds_in(&k25, &oct, 10_000_000).unwrap();
        assert!(v.is_yes());
        // the witness satisfies the generator's trace and norm
        let w = v.witness.unwrap();
        assert_eq!(
            oct.trace_of(&w).unwrap(),
            k25.trace_of(&linalg::basis_vector(&f5, 2, 1)).unwrap()
        );
        // F_25 does not embed into the 1-dimensional base
        let base = base_algebra(&f5);
        assert!(embeds_in(&k25, &base, 1000).unwrap().is_no());
    }

    #[test]
    fn slice_search_agrees_with_full_enumeration() {
        // oracle cross-check on a quaternion algebra over F_3
        let f3 = Field::prime(3).unwrap();
        let quat = cayley_dickson(
            &cayley_dickson(&base_algebra(&f3), &f3.int(1)).unwrap(),
            &f3.int(2),
        )
        .unwrap();
        for spec in [
            EtaleSpec2::Split,
            EtaleSpec2::SquareRoot(f3.int(2)),
        ] {
            let k = quadratic_etale(&f3, spec).unwrap();
            let fast = embeds_in(&k, &quat, 10_000_000).unwrap();
            // full enumeration oracle
            let w = linalg::basis_vector(&f3, 2, 1);
            let t_gen = k.trace_of(&w).unwrap();
            let n_gen = k.norm_of(&w).unwrap();
            let mut brute = false;
            for x in quadforms::VecEnum::new(f3.elements().unwrap(), 4) {
                if x[1..].iter().all(|v| f3.is_zero(v)) {
                    continue;
                }
                if quat.trace_of(&x).unwrap() == t_gen && quat.norm_of(&x).unwrap() == n_gen {
                    brute = true;
                    break;
                }
            }
            assert_eq!(fast.is_yes(), brute);
        }
    }
}
