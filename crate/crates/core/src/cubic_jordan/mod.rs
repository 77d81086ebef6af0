//! Cubic Jordan algebras as cubic norm structures.
//!
//! An algebra is a table triple: the cubic norm N as monomial coefficients,
//! the adjoint x -> x# as per-coordinate quadratic tables, and the bilinear
//! trace T as a symmetric matrix. The U-operator is always
//! U_x y = T(x, y) x - x# x y with x x y the bilinearized adjoint, squares
//! are U_x 1 and cubes U_x x, so characteristics 2 and 3 need no special
//! casing anywhere.
//!
//! Every constructor validates its output (unit axioms, the adjoint
//! identity x## = N(x) x, Hamilton-Cayley, Jordan composition of the norm)
//! on seeded random samples before returning.

pub mod assoc;
pub mod constructions;
pub mod maps;
pub mod tits2;

use std::sync::Arc;

use rand::Rng;

use crate::comp_alg::ConicAlgebra;
use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg;
use crate::rng::subseed;

pub use assoc::{AssocCubic, AssocKind};
pub use constructions::{her3, isotope, plus_algebra, tits1};
pub use maps::{find_elementary_idempotent, jomast_map, verify_hom, HomMode, IdempotentSearch};
pub use tits2::{etale_system, mat3_system, tits2, InvolutorialSystem};

/// Monomial table of a cubic form: (i, j, l, c) with i <= j <= l means a
/// contribution c * x_i x_j x_l.
pub type CubicTable = Vec<(usize, usize, usize, Scalar)>;

/// Per-coordinate quadratic map tables: entry (i, j, c) with i <= j.
pub type QuadTable = Vec<Vec<(usize, usize, Scalar)>>;

#[derive(Clone, Debug)]
pub enum Provenance {
    Her3 { conic: Arc<ConicAlgebra>, gamma: [Scalar; 3] },
    Plus { algebra: Arc<AssocCubic> },
    Tits1 { algebra: Arc<AssocCubic>, mu: Scalar },
    Tits2 { system: Arc<InvolutorialSystem>, p: Vec<Scalar>, mu: Vec<Scalar> },
    Isotope { parent: Arc<CubicJordan>, p: Vec<Scalar> },
    Residue { description: String },
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::Her3 { conic, .. } => format!("her3(dim C = {})", conic.dim()),
            Provenance::Plus { algebra } => format!("plus({})", algebra.kind_label()),
            Provenance::Tits1 { algebra, mu } => format!(
                "tits1({}, mu = {})",
                algebra.kind_label(),
                algebra.field().format(mu)
            ),
            Provenance::Tits2 { .. } => "tits2".into(),
            Provenance::Isotope { parent, .. } => format!("isotope of {}", parent.provenance().label()),
            Provenance::Residue { description } => format!("residue({description})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CubicJordan {
    field: Field,
    dim: usize,
    unit: Vec<Scalar>,
    norm: CubicTable,
    sharp: QuadTable,
    tbilin: Vec<Vec<Scalar>>,
    provenance: Provenance,
}

/// The five classical quantities attached to an element.
#[derive(Clone, Debug)]
pub struct CubicData {
    pub norm: Scalar,
    pub sharp: Vec<Scalar>,
    pub lin_trace: Scalar,
    pub quad_trace: Scalar,
    /// Coefficients of N(t 1 - x): (1, -T(x), S(x), -N(x)).
    pub charpoly: [Scalar; 4],
}

impl CubicJordan {
    pub fn from_tables(
        field: Field,
        dim: usize,
        unit: Vec<Scalar>,
        norm: CubicTable,
        sharp: QuadTable,
        tbilin: Vec<Vec<Scalar>>,
        provenance: Provenance,
    ) -> Result<CubicJordan> {
        let j = CubicJordan { field, dim, unit, norm, sharp, tbilin, provenance };
        j.validate(8)?;
        Ok(j)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn norm_table(&self) -> &CubicTable {
        &self.norm
    }

    pub fn sharp_table(&self) -> &QuadTable {
        &self.sharp
    }

    pub fn trace_matrix(&self) -> &Vec<Vec<Scalar>> {
        &self.tbilin
    }

    pub fn random_vec(&self, rng: &mut impl Rng) -> Vec<Scalar> {
        (0..self.dim).map(|_| self.field.random(rng)).collect()
    }

    /// Random element over Laurent fields that stays in the standard
    /// lattice (nonnegative exponents), for valuation sampling.
    pub fn random_lattice_vec(&self, rng: &mut impl Rng) -> Vec<Scalar> {
        (0..self.dim)
            .map(|_| {
                if self.field.laurent_precision().is_some() {
                    self.field.random_laurent(rng, 0, 3)
                } else {
                    self.field.random(rng)
                }
            })
            .collect()
    }

    pub fn eval_norm(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
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

    pub fn eval_sharp(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
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

    /// Bilinearized adjoint x x y = (x + y)# - x# - y#, via the tables.
    pub fn cross(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let mut out = linalg::zero_vector(f, self.dim);
        for (m, entries) in self.sharp.iter().enumerate() {
            let mut acc = f.zero();
            for (i, j, c) in entries {
                let t = if i == j {
                    let p = f.mul(&x[*i], &y[*i])?;
                    f.add(&p, &p)?
                } else {
                    f.add(&f.mul(&x[*i], &y[*j])?, &f.mul(&x[*j], &y[*i])?)?
                };
                if f.is_zero(&t) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(c, &t)?)?;
            }
            out[m] = acc;
        }
        Ok(out)
    }

    pub fn t_bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.dim {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..self.dim {
                let c = &self.tbilin[i][j];
                if f.is_zero(c) || f.is_zero(&y[j]) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(&x[i], &f.mul(c, &y[j])?)?)?;
            }
        }
        Ok(acc)
    }

    pub fn t_linear(&self, x: &[Scalar]) -> Result<Scalar> {
        self.t_bilinear(x, &self.unit)
    }

    pub fn s_quadratic(&self, x: &[Scalar]) -> Result<Scalar> {
        self.t_linear(&self.eval_sharp(x)?)
    }

    /// U_x y = T(x, y) x - x# x y.
    pub fn u_apply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len().max(y.len()),
            });
        }
        let f = &self.field;
        let t = self.t_bilinear(x, y)?;
        let tx = linalg::scale_vec(f, &t, x)?;
        let xs = self.eval_sharp(x)?;
        let c = self.cross(&xs, y)?;
        linalg::sub_vec(f, &tx, &c)
    }

    pub fn square(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.u_apply(x, &self.unit)
    }

    pub fn cube(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.u_apply(x, x)
    }

    /// Matrix of U_x in the standard basis.
    pub fn u_matrix(&self, x: &[Scalar]) -> Result<linalg::Matrix> {
        let f = &self.field;
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            cols.push(self.u_apply(x, &linalg::basis_vector(f, self.dim, j))?);
        }
        Ok(linalg::transpose(&cols))
    }

    pub fn cubic_data(&self, x: &[Scalar]) -> Result<CubicData> {
        let f = &self.field;
        let norm = self.eval_norm(x)?;
        let sharp = self.eval_sharp(x)?;
        let lin = self.t_linear(x)?;
        let quad = self.t_linear(&sharp)?;
        Ok(CubicData {
            charpoly: [f.one(), f.neg(&lin), quad.clone(), f.neg(&norm)],
            norm,
            sharp,
            lin_trace: lin,
            quad_trace: quad,
        })
    }

    /// Inverse x^-1 = N(x)^-1 x#, with the postcondition U_x x^-1 = x
    /// checked before returning.
    pub fn invert(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let n = self.eval_norm(x)?;
        if f.is_zero(&n) {
            return Err(Error::NotInvertible);
        }
        let ninv = f.inv(&n).map_err(|_| Error::NotInvertible)?;
        let inv = linalg::scale_vec(f, &ninv, &self.eval_sharp(x)?)?;
        let back = self.u_apply(x, &inv)?;
        if !eq_vec(f, &back, x) {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    /// Run the cubic-norm-structure axiom suite on `samples` random points.
    pub fn validate(&self, samples: usize) -> Result<()> {
        let f = &self.field;
        let ok = |cond: bool, what: &str| {
            if cond {
                Ok(())
            } else {
                Err(Error::VerificationFailed(format!(
                    "{what} fails for {}",
                    self.provenance.label()
                )))
            }
        };
        // unit axioms
        ok(
            f.eq_within_precision(&self.eval_norm(&self.unit)?, &f.one()),
            "N(1) = 1",
        )?;
        ok(eq_vec(f, &self.eval_sharp(&self.unit)?, &self.unit), "1# = 1")?;
        ok(
            f.eq_within_precision(&self.t_bilinear(&self.unit, &self.unit)?, &f.int(3)),
            "T(1,1) = 3",
        )?;
        let mut rng = subseed(0x10AD, &format!("validate-{}-{}", self.field, self.dim));
        for s in 0..samples {
            let x = if self.field.laurent_precision().is_some() {
                self.random_lattice_vec(&mut rng)
            } else {
                self.random_vec(&mut rng)
            };
            // U_1 = id
            if s < 3 {
                ok(eq_vec(f, &self.u_apply(&self.unit, &x)?, &x), "U_1 = id")?;
            }
            // adjoint identity x## = N(x) x
            let xs = self.eval_sharp(&x)?;
            let xss = self.eval_sharp(&xs)?;
            let nx = self.eval_norm(&x)?;
            ok(
                eq_vec(f, &xss, &linalg::scale_vec(f, &nx, &x)?),
                "x## = N(x) x",
            )?;
            // Hamilton-Cayley: x^3 - T(x) x^2 + S(x) x - N(x) 1 = 0
            let x2 = self.square(&x)?;
            let x3 = self.cube(&x)?;
            let t = self.t_linear(&x)?;
            let s_ = self.s_quadratic(&x)?;
            let mut hc = linalg::sub_vec(f, &x3, &linalg::scale_vec(f, &t, &x2)?)?;
            hc = linalg::add_vec(f, &hc, &linalg::scale_vec(f, &s_, &x)?)?;
            hc = linalg::sub_vec(f, &hc, &linalg::scale_vec(f, &nx, &self.unit)?)?;
            ok(
                eq_vec(f, &hc, &linalg::zero_vector(f, self.dim)),
                "Hamilton-Cayley",
            )?;
            // Jordan composition of the norm (on pairs)
            if s % 2 == 0 {
                let y = if self.field.laurent_precision().is_some() {
                    self.random_lattice_vec(&mut rng)
                } else {
                    self.random_vec(&mut rng)
                };
                let lhs = self.eval_norm(&self.u_apply(&x, &y)?)?;
                let rhs = f.mul(&f.mul(&nx, &nx)?, &self.eval_norm(&y)?)?;
                ok(f.eq_within_precision(&lhs, &rhs), "N(U_x y) = N(x)^2 N(y)")?;
            }
        }
        Ok(())
    }

    /// Fundamental formula U_{U_x y} = U_x U_y U_x as operator tables, on
    /// `pairs` random pairs.
    pub fn check_fundamental_formula(&self, pairs: usize, rng: &mut impl Rng) -> Result<()> {
        let f = &self.field;
        for _ in 0..pairs {
            let x = if f.laurent_precision().is_some() {
                self.random_lattice_vec(rng)
            } else {
                self.random_vec(rng)
            };
            let y = if f.laurent_precision().is_some() {
                self.random_lattice_vec(rng)
            } else {
                self.random_vec(rng)
            };
            let uxy = self.u_apply(&x, &y)?;
            for j in 0..self.dim {
                let z = linalg::basis_vector(f, self.dim, j);
                let lhs = self.u_apply(&uxy, &z)?;
                let rhs = self.u_apply(&x, &self.u_apply(&y, &self.u_apply(&x, &z)?)?)?;
                if !eq_vec(f, &lhs, &rhs) {
                    return Err(Error::VerificationFailed(format!(
                        "fundamental formula fails for {}",
                        self.provenance.label()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Componentwise equality up to Laurent precision.
pub fn eq_vec(f: &Field, a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| f.eq_within_precision(x, y))
}

/// Derive the tables of the linear trace T and quadratic trace S from a
/// cubic norm table and the unit vector, by expanding N(t u + x) and
/// collecting the t^2 and t coefficients.
pub fn derive_t_s(
    f: &Field,
    dim: usize,
    norm: &CubicTable,
    unit: &[Scalar],
) -> Result<(Vec<Scalar>, Vec<(usize, usize, Scalar)>)> {
    let mut t_vec = linalg::zero_vector(f, dim);
    let mut s_map: std::collections::BTreeMap<(usize, usize), Scalar> =
        std::collections::BTreeMap::new();
    let mut add_s = |key: (usize, usize), val: Scalar| -> Result<()> {
        let key = (key.0.min(key.1), key.0.max(key.1));
        let entry = s_map.entry(key).or_insert_with(|| f.zero());
        *entry = f.add(entry, &val)?;
        Ok(())
    };
    for (i, j, l, c) in norm {
        // t^2 terms: u_i u_j x_l and rotations
        for (a, b, free) in [(i, j, l), (i, l, j), (j, l, i)] {
            let coeff = f.mul(c, &f.mul(&unit[*a], &unit[*b])?)?;
            t_vec[*free] = f.add(&t_vec[*free], &coeff)?;
        }
        // t terms: u_i x_j x_l and rotations
        for (fixed, a, b) in [(i, j, l), (j, i, l), (l, i, j)] {
            let coeff = f.mul(c, &unit[*fixed])?;
            add_s((*a, *b), coeff)?;
        }
    }
    let s_table: Vec<(usize, usize, Scalar)> = s_map
        .into_iter()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|((i, j), c)| (i, j, c))
        .collect();
    Ok((t_vec, s_table))
}

/// Push a monomial into a cubic table with sorted indices.
pub fn push_cubic(
    f: &Field,
    table: &mut std::collections::BTreeMap<(usize, usize, usize), Scalar>,
    mut idx: [usize; 3],
    c: Scalar,
) -> Result<()> {
    if f.is_zero(&c) {
        return Ok(());
    }
    idx.sort_unstable();
    let key = (idx[0], idx[1], idx[2]);
    let entry = table.entry(key).or_insert_with(|| f.zero());
    *entry = f.add(entry, &c)?;
    Ok(())
}

pub fn finish_cubic(
    f: &Field,
    table: std::collections::BTreeMap<(usize, usize, usize), Scalar>,
) -> CubicTable {
    table
        .into_iter()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|((i, j, l), c)| (i, j, l, c))
        .collect()
}

pub fn push_quad(
    f: &Field,
    table: &mut std::collections::BTreeMap<(usize, usize), Scalar>,
    i: usize,
    j: usize,
    c: Scalar,
) -> Result<()> {
    if f.is_zero(&c) {
        return Ok(());
    }
    let key = (i.min(j), i.max(j));
    let entry = table.entry(key).or_insert_with(|| f.zero());
    *entry = f.add(entry, &c)?;
    Ok(())
}

pub fn finish_quad(
    f: &Field,
    table: std::collections::BTreeMap<(usize, usize), Scalar>,
) -> Vec<(usize, usize, Scalar)> {
    table
        .into_iter()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|((i, j), c)| (i, j, c))
        .collect()
}

#[cfg(test)]
mod tests;
