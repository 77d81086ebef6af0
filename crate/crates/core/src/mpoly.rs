//! Small symbolic multivariate polynomials with [`Scalar`] coefficients,
//! used once at construction time to turn determinant and involution
//! formulas into monomial tables. Degrees never exceed 3.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::fields::{Field, Scalar};

/// Monomial key: sorted variable indices with multiplicity (len = degree).
pub type Mono = Vec<usize>;

#[derive(Clone, Debug)]
pub struct MPoly {
    field: Field,
    terms: BTreeMap<Mono, Scalar>,
}

impl MPoly {
    pub fn zero(field: &Field) -> Self {
        MPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, c: Scalar) -> Self {
        let mut p = Self::zero(field);
        p.insert(vec![], c);
        p
    }

    pub fn var(field: &Field, i: usize) -> Self {
        let mut p = Self::zero(field);
        p.insert(vec![i], field.one());
        p
    }

    fn insert(&mut self, mono: Mono, c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        self.terms.insert(mono, c);
    }

    fn accumulate(&mut self, mono: Mono, c: &Scalar) -> Result<()> {
        if self.field.is_zero(c) {
            return Ok(());
        }
        let f = self.field.clone();
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = f.add(existing, c)?;
                if f.is_zero(&sum) {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(&self.field);
        for (m, c) in &self.terms {
            out.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Result<MPoly> {
        let mut out = MPoly::zero(&self.field);
        for (m, v) in &self.terms {
            out.accumulate(m.clone(), &self.field.mul(c, v)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        let mut out = MPoly::zero(&self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                m.sort_unstable();
                debug_assert!(m.len() <= 3, "symbolic degree above 3");
                out.accumulate(m, &self.field.mul(c1, c2)?)?;
            }
        }
        Ok(out)
    }

    /// Coefficients of the homogeneous cubic part, keys i <= j <= l.
    pub fn cubic_part(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.len() == 3)
            .map(|(m, c)| (m[0], m[1], m[2], c.clone()))
            .collect()
    }

    pub fn quadratic_part(&self) -> Vec<(usize, usize, Scalar)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.len() == 2)
            .map(|(m, c)| (m[0], m[1], c.clone()))
            .collect()
    }

    pub fn linear_part(&self) -> Vec<(usize, Scalar)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.len() == 1)
            .map(|(m, c)| (m[0], c.clone()))
            .collect()
    }

    pub fn constant_part(&self) -> Scalar {
        self.terms.get(&vec![]).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn eval(&self, at: &[Scalar]) -> Result<Scalar> {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &i in m {
                t = f.mul(&t, &at[i])?;
            }
            acc = f.add(&acc, &t)?;
        }
        Ok(acc)
    }
}

/// Multiply two vectors of polynomials as elements of an algebra given by
/// structure constants: table[a][b] = coefficients of e_a e_b.
pub fn alg_mul(
    f: &Field,
    table: &[Vec<Vec<Scalar>>],
    x: &[MPoly],
    y: &[MPoly],
) -> Result<Vec<MPoly>> {
    let n = table.len();
    let mut out = vec![MPoly::zero(f); n];
    for a in 0..n {
        if x[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if y[b].is_zero() {
                continue;
            }
            let prod = x[a].mul(&y[b])?;
            for (m, s) in table[a][b].iter().enumerate() {
                if f.is_zero(s) {
                    continue;
                }
                out[m] = out[m].add(&prod.scale(s)?)?;
            }
        }
    }
    Ok(out)
}

/// Determinant of a 3x3 matrix with entries in the algebra given by
/// `table` (entries are coefficient vectors of polynomials).
pub fn alg_det3(
    f: &Field,
    table: &[Vec<Vec<Scalar>>],
    m: &[Vec<Vec<MPoly>>],
) -> Result<Vec<MPoly>> {
    let n = table.len();
    let mut acc = vec![MPoly::zero(f); n];
    // permutation expansion; the entry algebras used here are commutative
    let perms: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([2, 1, 0], false),
        ([0, 2, 1], false),
        ([1, 0, 2], false),
    ];
    for (perm, positive) in perms {
        let t1 = alg_mul(f, table, &m[0][perm[0]], &m[1][perm[1]])?;
        let t2 = alg_mul(f, table, &t1, &m[2][perm[2]])?;
        for i in 0..n {
            acc[i] = if positive { acc[i].add(&t2[i])? } else { acc[i].sub(&t2[i])? };
        }
    }
    Ok(acc)
}

/// The trivial one-dimensional algebra table (plain field coefficients).
pub fn scalar_table(f: &Field) -> Vec<Vec<Vec<Scalar>>> {
    vec![vec![vec![f.one()]]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det3_of_variable_matrix_is_the_determinant_polynomial() {
        let f = Field::prime(7).unwrap();
        let table = scalar_table(&f);
        let m: Vec<Vec<Vec<MPoly>>> = (0..3)
            .map(|r| (0..3).map(|c| vec![MPoly::var(&f, 3 * r + c)]).collect())
            .collect();
        let det = alg_det3(&f, &table, &m).unwrap();
        let cubic = det[0].cubic_part();
        assert_eq!(cubic.len(), 6);
        // evaluate at a concrete matrix and compare with linalg::det
        let vals: Vec<Scalar> = (0..9).map(|v| f.int(v as i64 + 1)).collect();
        let sym = det[0].eval(&vals).unwrap();
        let rows: Vec<Vec<Scalar>> =
            (0..3).map(|r| vals[3 * r..3 * r + 3].to_vec()).collect();
        let dd = crate::linalg::det(&f, &rows).unwrap();
        assert_eq!(sym, dd);
    }
}
