//! Associative algebras with a cubic norm: the base field, cubic etale
//! algebras, 3x3 matrices, and cyclic algebras over Laurent fields.
//!
//! Each kind supplies a degree-3 representation whose symbolic determinant,
//! trace, and second charpoly coefficient give the norm, trace, and adjoint
//! tables. Multiplicativity of the norm and the identity x x# = N(x) 1 are
//! checked on seeded samples at construction.

use std::collections::BTreeMap;

use crate::comp_alg::EtaleAlgebra;
use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg;
use crate::mpoly::{alg_det3, alg_mul, scalar_table, MPoly};
use crate::rng::subseed;

use super::{derive_t_s, finish_quad, push_quad, CubicTable, QuadTable};

#[derive(Clone, Debug)]
pub enum AssocKind {
    Base,
    Etale(EtaleAlgebra),
    Mat3,
    CyclicLaurent {
        /// Cubic subfield as an etale algebra over the Laurent field.
        ext: EtaleAlgebra,
        /// Frobenius generator of the residue Galois action, as a matrix.
        sigma: linalg::Matrix,
        gamma: Scalar,
    },
}

#[derive(Clone, Debug)]
pub struct AssocCubic {
    field: Field,
    dim: usize,
    mul: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    norm: CubicTable,
    sharp: QuadTable,
    trace_vec: Vec<Scalar>,
    trace_gram: linalg::Matrix,
    kind: AssocKind,
}

impl AssocCubic {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn kind(&self) -> &AssocKind {
        &self.kind
    }

    pub fn kind_label(&self) -> &'static str {
        match self.kind {
            AssocKind::Base => "base field",
            AssocKind::Etale(_) => "cubic etale",
            AssocKind::Mat3 => "mat3",
            AssocKind::CyclicLaurent { .. } => "cyclic over Laurent",
        }
    }

    pub fn mul_table(&self) -> &Vec<Vec<Vec<Scalar>>> {
        &self.mul
    }

    pub fn norm_table(&self) -> &CubicTable {
        &self.norm
    }

    pub fn sharp_table(&self) -> &QuadTable {
        &self.sharp
    }

    pub fn trace_vec(&self) -> &[Scalar] {
        &self.trace_vec
    }

    pub fn trace_gram(&self) -> &linalg::Matrix {
        &self.trace_gram
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
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

    pub fn norm_of(&self, x: &[Scalar]) -> Result<Scalar> {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, j, l, c) in &self.norm {
            let t = f.mul(&x[*i], &f.mul(&x[*j], &x[*l])?)?;
            if f.is_zero(&t) {
                continue;
            }
            acc = f.add(&acc, &f.mul(c, &t)?)?;
        }
        Ok(acc)
    }

    pub fn trace_of(&self, x: &[Scalar]) -> Result<Scalar> {
        let f = &self.field;
        let mut acc = f.zero();
        for (a, c) in self.trace_vec.iter().enumerate() {
            if f.is_zero(c) || f.is_zero(&x[a]) {
                continue;
            }
            acc = f.add(&acc, &f.mul(c, &x[a])?)?;
        }
        Ok(acc)
    }

    pub fn sharp_of(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let mut out = linalg::zero_vector(f, self.dim);
        for (m, entries) in self.sharp.iter().enumerate() {
            let mut acc = f.zero();
            for (i, j, c) in entries {
                let t = f.mul(&x[*i], &x[*j])?;
                if f.is_zero(&t) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(c, &t)?)?;
            }
            out[m] = acc;
        }
        Ok(out)
    }

    /// Regularity of the trace bilinear form.
    pub fn is_regular(&self) -> Result<bool> {
        Ok(!self.field.is_zero(&linalg::det(&self.field, &self.trace_gram)?))
    }

    fn check(&self, samples: usize) -> Result<()> {
        let f = &self.field;
        if !super::eq_vec(f, &self.mul_vec(&self.unit, &self.unit)?, &self.unit) {
            return Err(Error::VerificationFailed("unit is not idempotent".into()));
        }
        if !f.eq_within_precision(&self.norm_of(&self.unit)?, &f.one()) {
            return Err(Error::VerificationFailed("N(1) != 1".into()));
        }
        let mut rng = subseed(0xA55C, &format!("assoc-{}-{}", self.field, self.dim));
        let sample = |rng: &mut rand_chacha::ChaCha20Rng| -> Vec<Scalar> {
            (0..self.dim)
                .map(|_| {
                    if f.laurent_precision().is_some() {
                        f.random_laurent(rng, 0, 3)
                    } else {
                        f.random(rng)
                    }
                })
                .collect()
        };
        for _ in 0..samples {
            let x = sample(&mut rng);
            let y = sample(&mut rng);
            // associativity on random triples via basis contraction is
            // implied by table construction; check norm multiplicativity
            let xy = self.mul_vec(&x, &y)?;
            let lhs = self.norm_of(&xy)?;
            let rhs = f.mul(&self.norm_of(&x)?, &self.norm_of(&y)?)?;
            if !f.eq_within_precision(&lhs, &rhs) {
                return Err(Error::VerificationFailed("N(xy) != N(x)N(y)".into()));
            }
            // x x# = N(x) 1
            let prod = self.mul_vec(&x, &self.sharp_of(&x)?)?;
            let mut expect = linalg::zero_vector(f, self.dim);
            expect[0] = self.norm_of(&x)?;
            let unit_scaled = linalg::scale_vec(f, &expect[0], &self.unit)?;
            if !super::eq_vec(f, &prod, &unit_scaled) {
                return Err(Error::VerificationFailed("x x# != N(x) 1".into()));
            }
            // T(xy) = T(yx)
            let yx = self.mul_vec(&y, &x)?;
            if !f.eq_within_precision(&self.trace_of(&xy)?, &self.trace_of(&yx)?) {
                return Err(Error::VerificationFailed("trace not symmetric".into()));
            }
        }
        Ok(())
    }
}

/// Assemble the derived tables (trace, adjoint, trace Gram) from a
/// multiplication table, a norm table, and the unit.
fn assemble(
    field: Field,
    mul: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    norm: CubicTable,
    kind: AssocKind,
) -> Result<AssocCubic> {
    let f = field.clone();
    let dim = unit.len();
    let (trace_vec, s_table) = derive_t_s(&f, dim, &norm, &unit)?;
    // sharp = x^2 - T(x) x + S(x) 1, built symbolically per coordinate
    let vars: Vec<MPoly> = (0..dim).map(|i| MPoly::var(&f, i)).collect();
    let x2 = alg_mul(&f, &mul, &vars, &vars)?;
    let mut t_poly = MPoly::zero(&f);
    for (i, c) in trace_vec.iter().enumerate() {
        t_poly = t_poly.add(&MPoly::var(&f, i).scale(c)?)?;
    }
    let mut s_poly = MPoly::zero(&f);
    for (i, j, c) in &s_table {
        s_poly = s_poly.add(&MPoly::var(&f, *i).mul(&MPoly::var(&f, *j))?.scale(c)?)?;
    }
    let mut sharp: QuadTable = Vec::with_capacity(dim);
    for m in 0..dim {
        let mut entry = x2[m].clone();
        entry = entry.sub(&t_poly.mul(&vars[m])?)?;
        entry = entry.add(&s_poly.scale(&unit[m])?)?;
        let mut table = BTreeMap::new();
        for (i, j, c) in entry.quadratic_part() {
            push_quad(&f, &mut table, i, j, c)?;
        }
        sharp.push(finish_quad(&f, table));
    }
    // trace Gram T(e_a e_b)
    let mut gram = vec![vec![f.zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let mut t = f.zero();
            for (m, s) in mul[a][b].iter().enumerate() {
                if f.is_zero(s) || f.is_zero(&trace_vec[m]) {
                    continue;
                }
                t = f.add(&t, &f.mul(s, &trace_vec[m])?)?;
            }
            gram[a][b] = t;
        }
    }
    let out = AssocCubic { field, dim, mul, unit, norm, sharp, trace_vec, trace_gram: gram, kind };
    out.check(12)?;
    Ok(out)
}

/// The base field as a one-dimensional cubic algebra (N = x^3).
pub fn base_cubic(field: &Field) -> Result<AssocCubic> {
    let f = field.clone();
    let mul = vec![vec![vec![f.one()]]];
    let unit = vec![f.one()];
    let norm = vec![(0, 0, 0, f.one())];
    assemble(f, mul, unit, norm, AssocKind::Base)
}

/// A rank-3 etale algebra as an associative cubic algebra; norm, trace and
/// adjoint come from the symbolic regular representation.
pub fn etale_cubic(e: &EtaleAlgebra) -> Result<AssocCubic> {
    if e.rank() != 3 {
        return Err(Error::NotRank3);
    }
    let f = e.field().clone();
    let mul = e.mul_table().clone();
    // L_x[r][c] = sum_i x_i mul[i][c][r]
    let table = scalar_table(&f);
    let mut m: Vec<Vec<Vec<MPoly>>> = vec![vec![vec![MPoly::zero(&f)]; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let mut p = MPoly::zero(&f);
            for i in 0..3 {
                let s = &mul[i][c][r];
                if f.is_zero(s) {
                    continue;
                }
                p = p.add(&MPoly::var(&f, i).scale(s)?)?;
            }
            m[r][c] = vec![p];
        }
    }
    let det = alg_det3(&f, &table, &m)?;
    let norm = det[0]
        .cubic_part()
        .into_iter()
        .map(|(i, j, l, c)| (i, j, l, c))
        .collect();
    assemble(f, mul, linalg::basis_vector(e.field(), 3, 0), norm, AssocKind::Etale(e.clone()))
}

/// 3x3 matrices over the base field; norm is the determinant.
pub fn mat3_cubic(field: &Field) -> Result<AssocCubic> {
    let f = field.clone();
    let dim = 9;
    let idx = |r: usize, c: usize| 3 * r + c;
    let mut mul = vec![vec![linalg::zero_vector(&f, dim); dim]; dim];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if b == c {
                        let mut v = linalg::zero_vector(&f, dim);
                        v[idx(a, d)] = f.one();
                        mul[idx(a, b)][idx(c, d)] = v;
                    }
                }
            }
        }
    }
    let mut unit = linalg::zero_vector(&f, dim);
    for r in 0..3 {
        unit[idx(r, r)] = f.one();
    }
    // symbolic determinant of the variable matrix
    let table = scalar_table(&f);
    let m: Vec<Vec<Vec<MPoly>>> = (0..3)
        .map(|r| (0..3).map(|c| vec![MPoly::var(&f, idx(r, c))]).collect())
        .collect();
    let det = alg_det3(&f, &table, &m)?;
    let norm = det[0].cubic_part();
    assemble(f, mul, unit, norm, AssocKind::Mat3)
}

/// Cyclic algebra over a Laurent field: E + E z + E z^2 with
/// z l = sigma(l) z and z^3 = gamma, where E is a cubic etale extension
/// with structure constants from the residue field and sigma the lift of
/// the residue Frobenius.
pub fn cyclic_laurent(e: &EtaleAlgebra, gamma: &Scalar) -> Result<AssocCubic> {
    let f = e.field().clone();
    if f.laurent_precision().is_none() {
        return Err(Error::UnsupportedField("cyclic algebras need a Laurent base".into()));
    }
    if e.rank() != 3 {
        return Err(Error::NotRank3);
    }
    if f.is_zero(gamma) {
        return Err(Error::ZeroMu);
    }
    let sigma = frobenius_matrix(e)?;
    let dim = 9;
    // basis e_a z^i at index 3*i + a
    let idx = |i: usize, a: usize| 3 * i + a;
    let apply = |m: &linalg::Matrix, v: &[Scalar]| linalg::mat_vec(&f, m, v);
    let sigma2 = linalg::mat_mul(&f, &sigma, &sigma)?;
    let mut mul = vec![vec![linalg::zero_vector(&f, dim); dim]; dim];
    for i in 0..3 {
        for a in 0..3 {
            for j in 0..3 {
                for b in 0..3 {
                    // (e_a z^i)(e_b z^j) = e_a sigma^i(e_b) z^(i+j)
                    let sb = match i {
                        0 => linalg::basis_vector(&f, 3, b),
                        1 => apply(&sigma, &linalg::basis_vector(&f, 3, b))?,
                        _ => apply(&sigma2, &linalg::basis_vector(&f, 3, b))?,
                    };
                    let prod = e.mul_vec(&linalg::basis_vector(&f, 3, a), &sb)?;
                    let (block, scale) = if i + j >= 3 {
                        (i + j - 3, gamma.clone())
                    } else {
                        (i + j, f.one())
                    };
                    let mut v = linalg::zero_vector(&f, dim);
                    for (m, c) in prod.iter().enumerate() {
                        v[idx(block, m)] = f.mul(&scale, c)?;
                    }
                    mul[idx(i, a)][idx(j, b)] = v;
                }
            }
        }
    }
    let mut unit = linalg::zero_vector(&f, dim);
    unit[idx(0, 0)] = f.one();
    // reduced norm: N_E(l0) + gamma N_E(l1) + gamma^2 N_E(l2)
    //               - gamma T_E(l0 sigma(l1) sigma^2(l2))
    let e_assoc = etale_cubic(e)?;
    let mut table: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for (block, scale) in [(0usize, f.one()), (1, gamma.clone()), (2, f.mul(gamma, gamma)?)] {
        for (i, j, l, c) in e_assoc.norm_table() {
            super::push_cubic(
                &f,
                &mut table,
                [idx(block, *i), idx(block, *j), idx(block, *l)],
                f.mul(&scale, c)?,
            )?;
        }
    }
    let neg_gamma = f.neg(gamma);
    for a in 0..3 {
        let ea = linalg::basis_vector(&f, 3, a);
        for b in 0..3 {
            let sb = apply(&sigma, &linalg::basis_vector(&f, 3, b))?;
            let absb = e.mul_vec(&ea, &sb)?;
            for c in 0..3 {
                let s2c = apply(&sigma2, &linalg::basis_vector(&f, 3, c))?;
                let prod = e.mul_vec(&absb, &s2c)?;
                let t = e.trace_of(&prod)?;
                super::push_cubic(
                    &f,
                    &mut table,
                    [idx(0, a), idx(1, b), idx(2, c)],
                    f.mul(&neg_gamma, &t)?,
                )?;
            }
        }
    }
    let norm = super::finish_cubic(&f, table);
    let out = assemble(
        f.clone(),
        mul,
        unit,
        norm,
        AssocKind::CyclicLaurent { ext: e.clone(), sigma, gamma: gamma.clone() },
    )?;
    // cross-check: det of the 9x9 left regular representation is Nrd^3
    {
        let mut rng = subseed(0xC11C, "cyclic-regular-rep");
        for _ in 0..4 {
            let x: Vec<Scalar> = (0..9).map(|_| f.random_laurent(&mut rng, 0, 2)).collect();
            let mut lm = vec![linalg::zero_vector(&f, 9); 9];
            for bcol in 0..9 {
                let col = out.mul_vec(&x, &linalg::basis_vector(&f, 9, bcol))?;
                for (r, v) in col.into_iter().enumerate() {
                    lm[r][bcol] = v;
                }
            }
            let d9 = linalg::det(&f, &lm)?;
            let nrd = out.norm_of(&x)?;
            let nrd3 = f.mul(&nrd, &f.mul(&nrd, &nrd)?)?;
            if !f.eq_within_precision(&d9, &nrd3) {
                return Err(Error::VerificationFailed(
                    "cyclic reduced norm does not cube to the regular-representation determinant"
                        .into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Matrix of the Frobenius lift on a cubic etale extension of a Laurent
/// field whose structure constants come from the residue field: the residue
/// Frobenius y -> y^q applied to the generator, extended t-linearly.
fn frobenius_matrix(e: &EtaleAlgebra) -> Result<linalg::Matrix> {
    let f = e.field().clone();
    let base = f.base_field().ok_or(Error::UnsupportedField("frobenius".into()))?;
    let q = base.order().ok_or(Error::UnsupportedField("frobenius".into()))?;
    // sigma(x) = x^q computed in the algebra; must be checked to be an
    // automorphism of order 3 (it is when E is the unramified cubic field)
    let mut cols = Vec::with_capacity(3);
    for b in 0..3 {
        let eb = linalg::basis_vector(&f, 3, b);
        let mut acc = e.unit();
        // x^q by square-and-multiply in the algebra
        let mut base_pow = eb;
        let mut k = q;
        while k > 0 {
            if k & 1 == 1 {
                acc = e.mul_vec(&acc, &base_pow)?;
            }
            k >>= 1;
            if k > 0 {
                base_pow = e.mul_vec(&base_pow, &base_pow)?;
            }
        }
        cols.push(acc);
    }
    let m = linalg::transpose(&cols);
    // order-3 check: sigma^3 = id, sigma != id
    let m2 = linalg::mat_mul(&f, &m, &m)?;
    let m3 = linalg::mat_mul(&f, &m2, &m)?;
    let id = linalg::identity(&f, 3);
    let eq_mat = |a: &linalg::Matrix, b: &linalg::Matrix| {
        a.iter().zip(b).all(|(r1, r2)| super::eq_vec(&f, r1, r2))
    };
    if !eq_mat(&m3, &id) || eq_mat(&m, &id) {
        return Err(Error::NonEtale(
            "extension is not a cubic field with Frobenius of order 3".into(),
        ));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp_alg::{cubic_etale, EtaleSpec3};

    #[test]
    fn mat3_norm_is_determinant() {
        let f5 = Field::prime(5).unwrap();
        let a = mat3_cubic(&f5).unwrap();
        // diag(1,2,3): det = 6 = 1 mod 5
        let mut x = linalg::zero_vector(&f5, 9);
        x[0] = f5.int(1);
        x[4] = f5.int(2);
        x[8] = f5.int(3);
        assert_eq!(a.norm_of(&x).unwrap(), f5.int(1));
        assert_eq!(a.trace_of(&x).unwrap(), f5.int(6));
    }

    #[test]
    fn etale_cubic_norm_on_split_triple() {
        let f7 = Field::prime(7).unwrap();
        let e = cubic_etale(&f7, EtaleSpec3::SplitTriple).unwrap();
        let a = etale_cubic(&e).unwrap();
        // basis is 1, u, v with the idempotent decomposition (1,1,1),
        // (0,1,0), (0,0,1): the element (a,b,c) is a*1 + (b-a)u + (c-a)v
        let x = vec![f7.int(1), f7.int(1), f7.int(2)]; // components (1,2,3)
        assert_eq!(a.norm_of(&x).unwrap(), f7.int(6));
    }

    #[test]
    fn base_cubic_regularity_depends_on_char_3() {
        let f7 = Field::prime(7).unwrap();
        assert!(base_cubic(&f7).unwrap().is_regular().unwrap());
        let f3 = Field::prime(3).unwrap();
        assert!(!base_cubic(&f3).unwrap().is_regular().unwrap());
    }

    #[test]
    fn cyclic_laurent_division_algebra() {
        // E = F_125((t)) over F_5((t)), gamma = t: ramified division algebra
        let l = Field::parse("Laurent:Fp:5:t").unwrap();
        let e = cubic_etale(
            &l,
            EtaleSpec3::MinPoly(vec![l.one(), l.one(), l.zero()]),
        )
        .unwrap();
        let t = l.variable().unwrap();
        let a = cyclic_laurent(&e, &t).unwrap();
        assert_eq!(a.dim(), 9);
        // sampled nonzero elements have nonzero reduced norm
        let mut rng = subseed(9, "cyclic-division-sample");
        for _ in 0..50 {
            let x: Vec<Scalar> = (0..9).map(|_| l.random_laurent(&mut rng, 0, 2)).collect();
            if x.iter().all(|c| l.is_zero(c)) {
                continue;
            }
            assert!(!l.is_zero(&a.norm_of(&x).unwrap()));
        }
    }
}
