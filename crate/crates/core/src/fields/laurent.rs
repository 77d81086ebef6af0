//! Truncated Laurent-series arithmetic over a finite base field.
//!
//! A nonzero element is a window of known coefficients starting at the
//! leading exponent. `exact` means every coefficient beyond the window is
//! zero (the element is a genuine Laurent polynomial); otherwise the tail is
//! unknown and the window length is the number of significant coefficients
//! that are still trusted. Operations either keep at least [`MIN_SIG`]
//! trusted coefficients or fail with `PrecisionExhausted` — precision loss
//! is never silent.

use super::gf::{Gf, GfElt};
use crate::error::{Error, Result};

/// Minimum number of significant coefficients an inexact element must carry.
pub const MIN_SIG: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRepr {
    /// Leading exponent of the window. For an exact empty window (exact
    /// zero) this is 0 by convention; for an inexact empty window it is the
    /// exponent below which all coefficients are known to vanish ("zero
    /// within precision", a value smaller than the resolution).
    pub lead: i64,
    /// Known coefficients from `lead` upwards; `coeffs[0] != 0` unless empty.
    pub coeffs: Vec<GfElt>,
    /// True if all coefficients beyond the window are known to be zero.
    pub exact: bool,
}

impl LaurentRepr {
    pub fn zero() -> Self {
        LaurentRepr { lead: 0, coeffs: vec![], exact: true }
    }

    /// Known to be exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.exact
    }

    /// Zero within the trusted window but with unknown tail.
    pub fn is_fuzzy_zero(&self) -> bool {
        self.coeffs.is_empty() && !self.exact
    }

    /// Valuation: `Ok(None)` is infinity (exact zero); a fuzzy zero has no
    /// determinable valuation.
    pub fn val(&self) -> Result<Option<i64>> {
        if self.is_zero() {
            Ok(None)
        } else if self.is_fuzzy_zero() {
            Err(Error::PrecisionExhausted(format!(
                "value is zero below exponent {} but its valuation is unknown",
                self.lead
            )))
        } else {
            Ok(Some(self.lead))
        }
    }

    /// Exponent up to which (exclusively) coefficients are known.
    fn known_to(&self) -> Option<i64> {
        if self.exact {
            None // known everywhere
        } else {
            Some(self.lead + self.coeffs.len() as i64)
        }
    }

    /// Start of the nonzero support window; `None` when no nonzero
    /// coefficient is known.
    fn support_start(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lead)
        }
    }

    pub fn coeff_at(&self, e: i64) -> GfElt
    where
        GfElt: Clone,
    {
        if self.coeffs.is_empty() || e < self.lead {
            return vec![]; // caller resolves: below window is known zero
        }
        let idx = (e - self.lead) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_default()
    }
}

pub struct LaurentCtx<'a> {
    pub base: &'a Gf,
    /// Window capacity for inexact results.
    pub prec: usize,
}

impl<'a> LaurentCtx<'a> {
    /// Cap on the support of exact results before they are demoted to
    /// inexact windows of length `prec`.
    fn exact_cap(&self) -> usize {
        (4 * self.prec).max(64)
    }

    pub fn monomial(&self, c: &GfElt, e: i64) -> LaurentRepr {
        if self.base.is_zero(c) {
            LaurentRepr::zero()
        } else {
            LaurentRepr { lead: e, coeffs: vec![c.clone()], exact: true }
        }
    }

    pub fn from_terms(&self, terms: &[(i64, GfElt)]) -> LaurentRepr {
        let mut acc = LaurentRepr::zero();
        for (e, c) in terms {
            acc = self
                .add(&acc, &self.monomial(c, *e))
                .expect("polynomial assembly cannot lose precision");
        }
        acc
    }

    /// Normalize a raw window: strip leading zeros (they are known exactly),
    /// demote over-long exact windows, and reject windows whose trusted
    /// length fell below `MIN_SIG`. A completely cancelled inexact window is
    /// not an error: the value is zero within precision, recorded as an
    /// empty window whose `lead` bounds the unknown tail.
    fn normalize(&self, lead: i64, mut coeffs: Vec<GfElt>, exact: bool) -> Result<LaurentRepr> {
        let mut lead = lead;
        while coeffs.first().map(|c| self.base.is_zero(c)) == Some(true) {
            coeffs.remove(0);
            lead += 1;
        }
        if exact {
            while coeffs.last().map(|c| self.base.is_zero(c)) == Some(true) {
                coeffs.pop();
            }
            if coeffs.is_empty() {
                return Ok(LaurentRepr::zero());
            }
            if coeffs.len() > self.exact_cap() {
                coeffs.truncate(self.prec);
                return Ok(LaurentRepr { lead, coeffs, exact: false });
            }
            return Ok(LaurentRepr { lead, coeffs, exact: true });
        }
        if coeffs.is_empty() {
            // lead now equals the end of the known range
            return Ok(LaurentRepr { lead, coeffs, exact: false });
        }
        if coeffs.len() > self.prec {
            coeffs.truncate(self.prec);
        }
        if coeffs.len() < MIN_SIG {
            return Err(Error::PrecisionExhausted(format!(
                "only {} significant coefficients left (minimum {})",
                coeffs.len(),
                MIN_SIG
            )));
        }
        Ok(LaurentRepr { lead, coeffs, exact: false })
    }

    pub fn add(&self, a: &LaurentRepr, b: &LaurentRepr) -> Result<LaurentRepr> {
        if a.is_zero() {
            return Ok(b.clone());
        }
        if b.is_zero() {
            return Ok(a.clone());
        }
        let lead = a.lead.min(b.lead);
        let known_to = match (a.known_to(), b.known_to()) {
            (None, None) => None,
            (Some(k), None) | (None, Some(k)) => Some(k),
            (Some(x), Some(y)) => Some(x.min(y)),
        };
        let end = match known_to {
            None => (a.lead + a.coeffs.len() as i64).max(b.lead + b.coeffs.len() as i64),
            Some(k) => k,
        };
        let mut coeffs = Vec::new();
        for e in lead..end {
            let ca = a.coeff_at(e);
            let cb = b.coeff_at(e);
            let ca = if ca.is_empty() { self.base.zero() } else { ca };
            let cb = if cb.is_empty() { self.base.zero() } else { cb };
            coeffs.push(self.base.add(&ca, &cb));
        }
        self.normalize(lead, coeffs, known_to.is_none())
    }

    pub fn neg(&self, a: &LaurentRepr) -> LaurentRepr {
        LaurentRepr {
            lead: a.lead,
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
            exact: a.exact,
        }
    }

    pub fn sub(&self, a: &LaurentRepr, b: &LaurentRepr) -> Result<LaurentRepr> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &LaurentRepr, b: &LaurentRepr) -> Result<LaurentRepr> {
        if a.is_zero() || b.is_zero() {
            return Ok(LaurentRepr::zero());
        }
        let exact = a.exact && b.exact;
        let window = if exact {
            a.coeffs.len() + b.coeffs.len() - 1
        } else {
            let la = if a.exact { usize::MAX } else { a.coeffs.len() };
            let lb = if b.exact { usize::MAX } else { b.coeffs.len() };
            la.min(lb)
        };
        let mut coeffs = vec![self.base.zero(); window];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= window || self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= window {
                    break;
                }
                let t = self.base.mul(x, y);
                coeffs[i + j] = self.base.add(&coeffs[i + j], &t);
            }
        }
        self.normalize(a.lead + b.lead, coeffs, exact)
    }

    pub fn inv(&self, a: &LaurentRepr) -> Result<LaurentRepr> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_fuzzy_zero() {
            return Err(Error::PrecisionExhausted(
                "cannot invert a value only known to be small".into(),
            ));
        }
        let u0_inv = self.base.inv(&a.coeffs[0])?;
        if a.exact && a.coeffs.len() == 1 {
            return Ok(LaurentRepr { lead: -a.lead, coeffs: vec![u0_inv], exact: true });
        }
        // window recurrence for the inverse of the unit part
        let window = if a.exact { self.prec } else { a.coeffs.len().min(self.prec) };
        let mut inv = Vec::with_capacity(window);
        inv.push(u0_inv.clone());
        for m in 1..window {
            let mut s = self.base.zero();
            for i in 1..=m {
                let ai = a.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero());
                if self.base.is_zero(&ai) {
                    continue;
                }
                s = self.base.add(&s, &self.base.mul(&ai, &inv[m - i]));
            }
            inv.push(self.base.neg(&self.base.mul(&u0_inv, &s)));
        }
        self.normalize(-a.lead, inv, false)
    }

    pub fn div(&self, a: &LaurentRepr, b: &LaurentRepr) -> Result<LaurentRepr> {
        if a.is_zero() {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(LaurentRepr::zero());
        }
        self.mul(a, &self.inv(b)?)
    }

    /// Coefficient of t^0, defined when the valuation is >= 0.
    pub fn residue(&self, a: &LaurentRepr) -> Result<GfElt> {
        if a.coeffs.is_empty() {
            if a.exact || a.lead > 0 {
                return Ok(self.base.zero());
            }
            return Err(Error::PrecisionExhausted(
                "constant coefficient lies beyond the trusted window".into(),
            ));
        }
        if a.lead < 0 {
            return Err(Error::NegativeValuation);
        }
        if a.lead > 0 {
            return Ok(self.base.zero());
        }
        Ok(a.coeffs[0].clone())
    }

    pub fn fmt(&self, a: &LaurentRepr, var: &str) -> String {
        if a.is_zero() {
            return "0".into();
        }
        if a.is_fuzzy_zero() {
            return format!("O({}^{})", var, a.lead);
        }
        let mut terms = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let e = a.lead + i as i64;
            let cs = self.base.fmt_elt(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            terms.push(match e {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{cs}{var}"),
                _ if cs == "1" => format!("{var}^{e}"),
                _ => format!("{cs}{var}^{e}"),
            });
        }
        let mut s = terms.join("+");
        if !a.exact {
            s.push_str(&format!("+O({}^{})", var, a.lead + a.coeffs.len() as i64));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(gf: &Gf) -> LaurentCtx<'_> {
        LaurentCtx { base: gf, prec: 12 }
    }

    #[test]
    fn geometric_series_inverse() {
        let gf = Gf::prime(5).unwrap();
        let c = ctx(&gf);
        // 1/(1 - t) = 1 + t + t^2 + ... up to the precision window
        let one = c.monomial(&gf.one(), 0);
        let t = c.monomial(&gf.one(), 1);
        let f = c.sub(&one, &t).unwrap();
        let inv = c.inv(&f).unwrap();
        assert_eq!(inv.lead, 0);
        assert!(!inv.exact);
        assert_eq!(inv.coeffs.len(), 12);
        assert!(inv.coeffs.iter().all(|cf| *cf == gf.one()));
        // multiply back: should be 1 within the window
        let back = c.mul(&inv, &f).unwrap();
        assert_eq!(back.lead, 0);
        assert_eq!(back.coeffs[0], gf.one());
        assert!(back.coeffs[1..].iter().all(|cf| gf.is_zero(cf)));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let gf = Gf::prime(5).unwrap();
        let c = ctx(&gf);
        let t2 = c.monomial(&gf.one(), 2);
        let inv = c.inv(&t2).unwrap();
        assert_eq!(inv.val().unwrap(), Some(-2));
        assert!(inv.exact);
    }

    #[test]
    fn exact_cancellation_gives_exact_zero() {
        let gf = Gf::prime(5).unwrap();
        let c = ctx(&gf);
        let a = c.from_terms(&[(0, gf.from_int(3)), (2, gf.from_int(1))]);
        let d = c.sub(&a, &a).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn inexact_cancellation_yields_a_fuzzy_zero() {
        let gf = Gf::prime(5).unwrap();
        let c = ctx(&gf);
        let one = c.monomial(&gf.one(), 0);
        let t = c.monomial(&gf.one(), 1);
        let f = c.sub(&one, &t).unwrap();
        let g = c.inv(&f).unwrap(); // inexact
        let z = c.sub(&g, &g).unwrap();
        assert!(z.is_fuzzy_zero());
        assert!(!z.is_zero());
        // its valuation is undeterminable, and it cannot be inverted
        assert!(z.val().is_err());
        assert!(matches!(c.inv(&z), Err(Error::PrecisionExhausted(_))));
        // but it is still usable in further sums: g - g + g agrees with g
        let back = c.add(&z, &g).unwrap();
        assert_eq!(back.coeffs, g.coeffs);
    }

    #[test]
    fn valuation_additivity() {
        let gf = Gf::prime(3).unwrap();
        let c = ctx(&gf);
        let a = c.from_terms(&[(-1, gf.from_int(2)), (0, gf.from_int(1))]);
        let b = c.from_terms(&[(2, gf.from_int(1)), (5, gf.from_int(2))]);
        let prod = c.mul(&a, &b).unwrap();
        assert_eq!(prod.val().unwrap(), Some(1));
    }
}
