//! Univariate polynomials over an arbitrary [`Field`], little-endian
//! coefficient vectors. Only the handful of operations the algebra
//! constructors need: gcd for separability tests, evaluation, derivative.

use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};

pub type FPoly = Vec<Scalar>;

pub fn trim(f: &Field, mut p: FPoly) -> FPoly {
    while p.last().map(|c| f.is_zero(c)) == Some(true) {
        p.pop();
    }
    p
}

pub fn degree(f: &Field, p: &FPoly) -> Option<usize> {
    let t = trim(f, p.clone());
    if t.is_empty() {
        None
    } else {
        Some(t.len() - 1)
    }
}

pub fn derivative(f: &Field, p: &FPoly) -> Result<FPoly> {
    let mut out = vec![];
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(f.mul(&f.int(i as i64), c)?);
    }
    Ok(trim(f, out))
}

pub fn eval(f: &Field, p: &FPoly, x: &Scalar) -> Result<Scalar> {
    let mut acc = f.zero();
    for c in p.iter().rev() {
        acc = f.add(&f.mul(&acc, x)?, c)?;
    }
    Ok(acc)
}

pub fn divrem(f: &Field, a: &FPoly, b: &FPoly) -> Result<(FPoly, FPoly)> {
    let b = trim(f, b.clone());
    if b.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let lead_inv = f.inv(b.last().unwrap())?;
    let mut rem = trim(f, a.clone());
    let mut quo: FPoly = vec![];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = f.mul(rem.last().unwrap(), &lead_inv)?;
        if quo.len() < shift + 1 {
            quo.resize(shift + 1, f.zero());
        }
        quo[shift] = f.add(&quo[shift], &c)?;
        for (i, bc) in b.iter().enumerate() {
            let t = f.mul(&c, bc)?;
            rem[shift + i] = f.sub(&rem[shift + i], &t)?;
        }
        rem = trim(f, rem);
    }
    Ok((trim(f, quo), rem))
}

pub fn gcd(f: &Field, a: &FPoly, b: &FPoly) -> Result<FPoly> {
    let mut x = trim(f, a.clone());
    let mut y = trim(f, b.clone());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y)?;
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let li = f.inv(&lead)?;
        x = x.iter().map(|c| f.mul(&li, c)).collect::<Result<Vec<_>>>()?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separability_of_cubics() {
        let q = Field::rationals();
        // x^3 - 2 is separable
        let p = vec![q.int(-2), q.zero(), q.zero(), q.one()];
        let d = derivative(&q, &p).unwrap();
        assert_eq!(degree(&q, &gcd(&q, &p, &d).unwrap()), Some(0));
        // (x - 1)^2 (x + 1) is not
        let p = vec![q.int(1), q.int(-1), q.int(-1), q.one()];
        let d = derivative(&q, &p).unwrap();
        assert!(degree(&q, &gcd(&q, &p, &d).unwrap()).unwrap() > 0);
    }
}
