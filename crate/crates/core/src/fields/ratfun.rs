//! Rational functions over a finite base field, stored as reduced fractions
//! with monic denominator.

use super::gf::{Gf, GfElt, GfPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunRepr {
    /// Numerator, little-endian; empty means zero.
    pub num: GfPoly,
    /// Monic denominator, never empty.
    pub den: GfPoly,
}

pub struct RatFunCtx<'a> {
    pub base: &'a Gf,
}

impl<'a> RatFunCtx<'a> {
    pub fn zero(&self) -> RatFunRepr {
        RatFunRepr { num: vec![], den: vec![self.base.one()] }
    }

    pub fn from_poly(&self, f: GfPoly) -> RatFunRepr {
        RatFunRepr { num: self.base.poly_trim(f), den: vec![self.base.one()] }
    }

    pub fn is_zero(&self, a: &RatFunRepr) -> bool {
        a.num.is_empty()
    }

    fn normalize(&self, num: GfPoly, den: GfPoly) -> Result<RatFunRepr> {
        let gf = self.base;
        let num = gf.poly_trim(num);
        let den = gf.poly_trim(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(self.zero());
        }
        let g = gf.poly_gcd(&num, &den)?;
        let (num, den) = if gf.poly_deg(&g) == Some(0) {
            (num, den)
        } else {
            (gf.poly_divrem(&num, &g)?.0, gf.poly_divrem(&den, &g)?.0)
        };
        // monic denominator
        let li = gf.inv(den.last().unwrap())?;
        Ok(RatFunRepr { num: gf.poly_scale(&li, &num), den: gf.poly_scale(&li, &den) })
    }

    pub fn add(&self, a: &RatFunRepr, b: &RatFunRepr) -> Result<RatFunRepr> {
        let gf = self.base;
        let num = gf.poly_add(&gf.poly_mul(&a.num, &b.den), &gf.poly_mul(&b.num, &a.den));
        self.normalize(num, gf.poly_mul(&a.den, &b.den))
    }

    pub fn neg(&self, a: &RatFunRepr) -> RatFunRepr {
        RatFunRepr { num: self.base.poly_neg(&a.num), den: a.den.clone() }
    }

    pub fn mul(&self, a: &RatFunRepr, b: &RatFunRepr) -> Result<RatFunRepr> {
        let gf = self.base;
        self.normalize(gf.poly_mul(&a.num, &b.num), gf.poly_mul(&a.den, &b.den))
    }

    pub fn inv(&self, a: &RatFunRepr) -> Result<RatFunRepr> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        self.normalize(a.den.clone(), a.num.clone())
    }

    /// Order of vanishing at s = 0 (used by the residue-form decomposition);
    /// negative for poles at 0, `None` for the zero function.
    pub fn val_at_zero(&self, a: &RatFunRepr) -> Option<i64> {
        if self.is_zero(a) {
            return None;
        }
        let low = |f: &GfPoly| f.iter().position(|c| !self.base.is_zero(c)).unwrap() as i64;
        Some(low(&a.num) - low(&a.den))
    }

    /// The unit part at s = 0: a = s^v * u with u(0) != 0; returns u(0).
    pub fn unit_residue_at_zero(&self, a: &RatFunRepr) -> Option<GfElt> {
        let gf = self.base;
        if self.is_zero(a) {
            return None;
        }
        let first = |f: &GfPoly| f.iter().find(|c| !gf.is_zero(c)).unwrap().clone();
        gf.div(&first(&a.num), &first(&a.den)).ok()
    }

    pub fn fmt(&self, a: &RatFunRepr, var: &str) -> String {
        let gf = self.base;
        let poly = |f: &GfPoly| {
            if f.is_empty() {
                return "0".to_string();
            }
            let terms: Vec<String> = f
                .iter()
                .enumerate()
                .filter(|(_, c)| !gf.is_zero(c))
                .map(|(i, c)| {
                    let cs = gf.fmt_elt(c);
                    let cs = if cs.contains('+') { format!("({cs})") } else { cs };
                    match i {
                        0 => cs,
                        1 if cs == "1" => var.to_string(),
                        1 => format!("{cs}{var}"),
                        _ if cs == "1" => format!("{var}^{i}"),
                        _ => format!("{cs}{var}^{i}"),
                    }
                })
                .collect();
            terms.join("+")
        };
        if gf.poly_deg(&a.den) == Some(0) {
            poly(&a.num)
        } else {
            format!("({})/({})", poly(&a.num), poly(&a.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_equality() {
        let gf = Gf::prime(5).unwrap();
        let c = RatFunCtx { base: &gf };
        // (s^2 - 1)/(s - 1) reduces to s + 1
        let num = vec![gf.from_int(-1), gf.zero(), gf.one()];
        let den = vec![gf.from_int(-1), gf.one()];
        let a = c.normalize(num, den).unwrap();
        assert_eq!(a, c.from_poly(vec![gf.one(), gf.one()]));
    }

    #[test]
    fn field_ops() {
        let gf = Gf::prime(3).unwrap();
        let c = RatFunCtx { base: &gf };
        let s = c.from_poly(vec![gf.zero(), gf.one()]);
        let inv = c.inv(&s).unwrap();
        let one = c.mul(&s, &inv).unwrap();
        assert_eq!(one, c.from_poly(vec![gf.one()]));
        assert_eq!(c.val_at_zero(&s), Some(1));
        assert_eq!(c.val_at_zero(&inv), Some(-1));
    }
}
