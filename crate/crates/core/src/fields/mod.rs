//! The coefficient-field tower: Q, F_p, F_{p^n}, F_q(s) and truncated
//! F_q((t)).
//!
//! A [`Field`] is a cheap-to-clone handle; a [`Scalar`] is an exact element
//! owned by one handle. Scalars are immutable values and all operations are
//! pure, so both types are freely shareable across threads. Arithmetic
//! between scalars of different fields is rejected rather than coerced.

pub mod gf;
pub mod laurent;
pub mod ratfun;

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use gf::{Gf, GfElt, GfPoly};
use laurent::{LaurentCtx, LaurentRepr, MIN_SIG};
use ratfun::{RatFunCtx, RatFunRepr};

pub const DEFAULT_LAURENT_PREC: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(Gf),
    Galois(Gf),
    RatFun { base: Gf, var: String },
    Laurent { base: Gf, var: String, prec: usize },
}

#[derive(Debug)]
struct FieldInner {
    kind: FieldKind,
    /// Handle for the residue / coefficient field of RatFun and Laurent.
    base_handle: Option<Field>,
}

/// Handle to one field of the supported tower.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}
impl Eq for Field {}

/// Three-valued squareness answer; `Unknown` is a verdict, not an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareVerdict {
    Square,
    NonSquare,
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Rat(BigRational),
    Ff(GfElt),
    RatFun(Box<RatFunRepr>),
    Laurent(Box<LaurentRepr>),
}

/// An exact element of one field of the tower.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}
impl Eq for Scalar {}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl Field {
    fn new(kind: FieldKind) -> Field {
        let base_handle = match &kind {
            FieldKind::RatFun { base, .. } | FieldKind::Laurent { base, .. } => {
                let bk = if base.n == 1 {
                    FieldKind::Prime(base.clone())
                } else {
                    FieldKind::Galois(base.clone())
                };
                Some(Field(Arc::new(FieldInner { kind: bk, base_handle: None })))
            }
            _ => None,
        };
        Field(Arc::new(FieldInner { kind, base_handle }))
    }

    pub fn rationals() -> Field {
        Field::new(FieldKind::Rationals)
    }

    pub fn prime(p: u64) -> Result<Field> {
        Ok(Field::new(FieldKind::Prime(Gf::prime(p)?)))
    }

    pub fn galois(p: u64, n: usize, modulus: Vec<u64>) -> Result<Field> {
        Ok(Field::new(FieldKind::Galois(Gf::extension(p, n, modulus)?)))
    }

    pub fn rational_functions(base: Gf, var: &str) -> Field {
        Field::new(FieldKind::RatFun { base, var: var.to_string() })
    }

    pub fn laurent(base: Gf, var: &str, prec: usize) -> Result<Field> {
        if prec < MIN_SIG {
            return Err(Error::PrecisionTooSmall(prec));
        }
        Ok(Field::new(FieldKind::Laurent { base, var: var.to_string(), prec }))
    }

    /// Parse a one-line field descriptor:
    /// `Q` | `Fp:<p>` | `Fq:<p>:<n>:<modulus>` | `RatFun:<galois>:<var>` |
    /// `Laurent:<galois>:<var>[:prec=<N>]`.
    pub fn parse(desc: &str) -> Result<Field> {
        let toks: Vec<&str> = desc.trim().split(':').collect();
        let bad = |m: &str| Error::FieldDescriptorError(format!("{m} in `{desc}`"));
        let parse_u64 = |s: &str| s.parse::<u64>().map_err(|_| bad("bad integer"));
        let galois_at = |i: usize| -> Result<(Gf, usize)> {
            match toks.get(i) {
                Some(&"Fp") => {
                    let p = parse_u64(toks.get(i + 1).ok_or_else(|| bad("missing prime"))?)?;
                    Ok((Gf::prime(p)?, i + 2))
                }
                Some(&"Fq") => {
                    let p = parse_u64(toks.get(i + 1).ok_or_else(|| bad("missing prime"))?)?;
                    let n = parse_u64(toks.get(i + 2).ok_or_else(|| bad("missing degree"))?)?;
                    let m = parse_fp_poly(toks.get(i + 3).ok_or_else(|| bad("missing modulus"))?)?;
                    Ok((Gf::extension(p, n as usize, fp_poly_mod(&m, p))?, i + 4))
                }
                _ => Err(bad("expected Fp or Fq")),
            }
        };
        match toks[0] {
            "Q" if toks.len() == 1 => Ok(Field::rationals()),
            "Fp" => {
                if toks.len() != 2 {
                    return Err(bad("Fp takes one parameter"));
                }
                Field::prime(parse_u64(toks[1])?)
            }
            "Fq" => {
                if toks.len() != 4 {
                    return Err(bad("Fq takes three parameters"));
                }
                let p = parse_u64(toks[1])?;
                let n = parse_u64(toks[2])? as usize;
                Field::galois(p, n, fp_poly_mod(&parse_fp_poly(toks[3])?, p))
            }
            "RatFun" => {
                let (base, next) = galois_at(1)?;
                let var = toks.get(next).ok_or_else(|| bad("missing variable"))?;
                if toks.len() != next + 1 {
                    return Err(bad("trailing tokens"));
                }
                Ok(Field::rational_functions(base, var))
            }
            "Laurent" => {
                let (base, next) = galois_at(1)?;
                let var = *toks.get(next).ok_or_else(|| bad("missing variable"))?;
                let prec = match toks.get(next + 1) {
                    None => DEFAULT_LAURENT_PREC,
                    Some(t) => t
                        .strip_prefix("prec=")
                        .ok_or_else(|| bad("expected prec=<N>"))?
                        .parse::<usize>()
                        .map_err(|_| bad("bad precision"))?,
                };
                if toks.len() > next + 2 {
                    return Err(bad("trailing tokens"));
                }
                Field::laurent(base, var, prec)
            }
            _ => Err(bad("unknown field kind")),
        }
    }

    pub fn descriptor(&self) -> String {
        match &self.0.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Prime(gf) => format!("Fp:{}", gf.p),
            FieldKind::Galois(gf) => {
                format!("Fq:{}:{}:{}", gf.p, gf.n, gf::fp_poly_string(&gf.modulus))
            }
            FieldKind::RatFun { base, var } => {
                let b = if base.n == 1 {
                    format!("Fp:{}", base.p)
                } else {
                    format!("Fq:{}:{}:{}", base.p, base.n, gf::fp_poly_string(&base.modulus))
                };
                format!("RatFun:{b}:{var}")
            }
            FieldKind::Laurent { base, var, prec } => {
                let b = if base.n == 1 {
                    format!("Fp:{}", base.p)
                } else {
                    format!("Fq:{}:{}:{}", base.p, base.n, gf::fp_poly_string(&base.modulus))
                };
                format!("Laurent:{b}:{var}:prec={prec}")
            }
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(gf) | FieldKind::Galois(gf) => gf.p,
            FieldKind::RatFun { base, .. } | FieldKind::Laurent { base, .. } => base.p,
        }
    }

    pub fn is_perfect(&self) -> bool {
        matches!(
            self.0.kind,
            FieldKind::Rationals | FieldKind::Prime(_) | FieldKind::Galois(_)
        )
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0.kind, FieldKind::Prime(_) | FieldKind::Galois(_))
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match &self.0.kind {
            FieldKind::Prime(gf) | FieldKind::Galois(gf) => Some(gf.order()),
            _ => None,
        }
    }

    /// Residue / coefficient field of a Laurent or rational function field.
    pub fn base_field(&self) -> Option<Field> {
        self.0.base_handle.clone()
    }

    pub fn laurent_precision(&self) -> Option<usize> {
        match &self.0.kind {
            FieldKind::Laurent { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    fn gf(&self) -> Option<&Gf> {
        match &self.0.kind {
            FieldKind::Prime(gf) | FieldKind::Galois(gf) => Some(gf),
            _ => None,
        }
    }

    fn lctx(&self) -> Option<LaurentCtx<'_>> {
        match &self.0.kind {
            FieldKind::Laurent { base, prec, .. } => Some(LaurentCtx { base, prec: *prec }),
            _ => None,
        }
    }

    fn rctx(&self) -> Option<RatFunCtx<'_>> {
        match &self.0.kind {
            FieldKind::RatFun { base, .. } => Some(RatFunCtx { base }),
            _ => None,
        }
    }

    // ------------------------------------------------------------------
    // element constructors
    // ------------------------------------------------------------------

    fn wrap(&self, repr: Repr) -> Scalar {
        Scalar { field: self.clone(), repr }
    }

    pub fn zero(&self) -> Scalar {
        match &self.0.kind {
            FieldKind::Rationals => self.wrap(Repr::Rat(BigRational::zero())),
            FieldKind::Prime(gf) | FieldKind::Galois(gf) => self.wrap(Repr::Ff(gf.zero())),
            FieldKind::RatFun { base, .. } => {
                self.wrap(Repr::RatFun(Box::new(RatFunCtx { base }.zero())))
            }
            FieldKind::Laurent { .. } => self.wrap(Repr::Laurent(Box::new(LaurentRepr::zero()))),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        match &self.0.kind {
            FieldKind::Rationals => self.wrap(Repr::Rat(BigRational::from_integer(v.into()))),
            FieldKind::Prime(gf) | FieldKind::Galois(gf) => self.wrap(Repr::Ff(gf.from_int(v))),
            FieldKind::RatFun { base, .. } => self.wrap(Repr::RatFun(Box::new(
                RatFunCtx { base }.from_poly(vec![base.from_int(v)]),
            ))),
            FieldKind::Laurent { base, prec, .. } => self.wrap(Repr::Laurent(Box::new(
                LaurentCtx { base, prec: *prec }.monomial(&base.from_int(v), 0),
            ))),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.int(den);
        self.div(&self.int(num), &d)
    }

    /// Monomial c * var^e over a Laurent field.
    pub fn laurent_monomial(&self, c: i64, e: i64) -> Result<Scalar> {
        match &self.0.kind {
            FieldKind::Laurent { base, prec, .. } => Ok(self.wrap(Repr::Laurent(Box::new(
                LaurentCtx { base, prec: *prec }.monomial(&base.from_int(c), e),
            )))),
            _ => Err(Error::UnsupportedField("laurent_monomial".into())),
        }
    }

    /// The variable of a Laurent or rational function field.
    pub fn variable(&self) -> Result<Scalar> {
        match &self.0.kind {
            FieldKind::Laurent { base, prec, .. } => Ok(self.wrap(Repr::Laurent(Box::new(
                LaurentCtx { base, prec: *prec }.monomial(&base.one(), 1),
            )))),
            FieldKind::RatFun { base, .. } => Ok(self.wrap(Repr::RatFun(Box::new(
                RatFunCtx { base }.from_poly(vec![base.zero(), base.one()]),
            )))),
            _ => Err(Error::UnsupportedField("variable".into())),
        }
    }

    /// Generator of a Galois field (the class of x).
    pub fn generator(&self) -> Result<Scalar> {
        match &self.0.kind {
            FieldKind::Galois(gf) => {
                let mut e = gf.zero();
                e[1] = 1;
                Ok(self.wrap(Repr::Ff(e)))
            }
            _ => Err(Error::UnsupportedField("generator".into())),
        }
    }

    /// Lift an element of the residue field into a Laurent field (as the
    /// constant term) or a rational function field.
    pub fn lift_base(&self, a: &Scalar) -> Result<Scalar> {
        let base = self.base_field().ok_or(Error::UnsupportedField("lift_base".into()))?;
        if a.field != base {
            return Err(Error::OwnerMismatch);
        }
        let Repr::Ff(e) = &a.repr else { return Err(Error::OwnerMismatch) };
        match &self.0.kind {
            FieldKind::Laurent { base, prec, .. } => Ok(self.wrap(Repr::Laurent(Box::new(
                LaurentCtx { base, prec: *prec }.monomial(e, 0),
            )))),
            FieldKind::RatFun { base, .. } => {
                Ok(self.wrap(Repr::RatFun(Box::new(RatFunCtx { base }.from_poly(vec![e.clone()])))))
            }
            _ => unreachable!(),
        }
    }

    // ------------------------------------------------------------------
    // arithmetic
    // ------------------------------------------------------------------

    fn own(&self, a: &Scalar) -> Result<()> {
        if a.field == *self {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match &a.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Ff(e) => e.iter().all(|&c| c == 0),
            Repr::RatFun(r) => r.num.is_empty(),
            Repr::Laurent(l) => l.is_zero(),
        }
    }

    /// Equality up to the knowledge both operands carry: plain equality
    /// everywhere except over Laurent fields, where the known coefficient
    /// windows must agree on their common range. This is the right notion
    /// for checking identities whose evaluation involved truncation.
    pub fn eq_within_precision(&self, a: &Scalar, b: &Scalar) -> bool {
        if a == b {
            return true;
        }
        let (Repr::Laurent(x), Repr::Laurent(y)) = (&a.repr, &b.repr) else {
            return false;
        };
        let FieldKind::Laurent { base, .. } = &self.0.kind else { return false };
        let end = |l: &LaurentRepr| -> Option<i64> {
            if l.exact {
                None
            } else {
                Some(l.lead + l.coeffs.len() as i64)
            }
        };
        let overlap_end = match (end(x), end(y)) {
            (None, None) => return false, // both exact and not equal
            (Some(e), None) | (None, Some(e)) => e,
            (Some(e1), Some(e2)) => e1.min(e2),
        };
        let support = |l: &LaurentRepr| -> Option<i64> {
            if l.coeffs.is_empty() {
                None
            } else {
                Some(l.lead)
            }
        };
        let start = match (support(x), support(y)) {
            (None, None) => return true, // zero against zero-within-precision
            (Some(v), None) | (None, Some(v)) => v,
            (Some(v1), Some(v2)) => v1.min(v2),
        };
        for e in start..overlap_end {
            let cx = x.coeff_at(e);
            let cy = y.coeff_at(e);
            let cx = if cx.is_empty() { base.zero() } else { cx };
            let cy = if cy.is_empty() { base.zero() } else { cy };
            if cx != cy {
                return false;
            }
        }
        true
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.own(a)?;
        self.own(b)?;
        match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Ok(self.wrap(Repr::Rat(x + y))),
            (Repr::Ff(x), Repr::Ff(y)) => Ok(self.wrap(Repr::Ff(self.gf().unwrap().add(x, y)))),
            (Repr::RatFun(x), Repr::RatFun(y)) => {
                Ok(self.wrap(Repr::RatFun(Box::new(self.rctx().unwrap().add(x, y)?))))
            }
            (Repr::Laurent(x), Repr::Laurent(y)) => {
                Ok(self.wrap(Repr::Laurent(Box::new(self.lctx().unwrap().add(x, y)?))))
            }
            _ => Err(Error::OwnerMismatch),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match &a.repr {
            Repr::Rat(x) => self.wrap(Repr::Rat(-x)),
            Repr::Ff(x) => self.wrap(Repr::Ff(self.gf().unwrap().neg(x))),
            Repr::RatFun(x) => self.wrap(Repr::RatFun(Box::new(self.rctx().unwrap().neg(x)))),
            Repr::Laurent(x) => self.wrap(Repr::Laurent(Box::new(self.lctx().unwrap().neg(x)))),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.own(a)?;
        self.own(b)?;
        match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Ok(self.wrap(Repr::Rat(x * y))),
            (Repr::Ff(x), Repr::Ff(y)) => Ok(self.wrap(Repr::Ff(self.gf().unwrap().mul(x, y)))),
            (Repr::RatFun(x), Repr::RatFun(y)) => {
                Ok(self.wrap(Repr::RatFun(Box::new(self.rctx().unwrap().mul(x, y)?))))
            }
            (Repr::Laurent(x), Repr::Laurent(y)) => {
                Ok(self.wrap(Repr::Laurent(Box::new(self.lctx().unwrap().mul(x, y)?))))
            }
            _ => Err(Error::OwnerMismatch),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        self.own(a)?;
        match &a.repr {
            Repr::Rat(x) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(self.wrap(Repr::Rat(x.recip())))
                }
            }
            Repr::Ff(x) => Ok(self.wrap(Repr::Ff(self.gf().unwrap().inv(x)?))),
            Repr::RatFun(x) => Ok(self.wrap(Repr::RatFun(Box::new(self.rctx().unwrap().inv(x)?)))),
            Repr::Laurent(x) => {
                Ok(self.wrap(Repr::Laurent(Box::new(self.lctx().unwrap().inv(x)?))))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.mul(a, &self.inv(b)?)
    }

    pub fn pow(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    // ------------------------------------------------------------------
    // valuation-flavoured queries
    // ------------------------------------------------------------------

    /// Leading exponent over a Laurent field; `None` encodes infinity.
    /// Values that cancelled to zero within precision have no determinable
    /// valuation and report `PrecisionExhausted`.
    pub fn laurent_val(&self, a: &Scalar) -> Result<Option<i64>> {
        self.own(a)?;
        match &a.repr {
            Repr::Laurent(l) => l.val(),
            _ => Err(Error::OwnerMismatch),
        }
    }

    /// Constant coefficient of a Laurent scalar with valuation >= 0, as an
    /// element of the residue field.
    pub fn residue(&self, a: &Scalar) -> Result<Scalar> {
        self.own(a)?;
        match &a.repr {
            Repr::Laurent(l) => {
                let c = self.lctx().unwrap().residue(l)?;
                Ok(self.base_field().unwrap().wrap(Repr::Ff(c)))
            }
            _ => Err(Error::OwnerMismatch),
        }
    }

    /// Known coefficient of `var^e` over a Laurent field, as an element of
    /// the residue field; errors if `e` lies beyond the trusted window.
    pub fn laurent_coeff(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        self.own(a)?;
        match &a.repr {
            Repr::Laurent(l) => {
                let base = self.base_field().unwrap();
                if l.is_zero() || e < l.lead {
                    return Ok(base.zero());
                }
                let idx = (e - l.lead) as usize;
                if idx < l.coeffs.len() {
                    Ok(base.wrap(Repr::Ff(l.coeffs[idx].clone())))
                } else if l.exact {
                    Ok(base.zero())
                } else {
                    Err(Error::PrecisionExhausted(format!(
                        "coefficient at exponent {e} is beyond the trusted window"
                    )))
                }
            }
            _ => Err(Error::OwnerMismatch),
        }
    }

    /// How many coefficients of `a` are still trusted; `None` means the
    /// element is exact. Only meaningful over Laurent fields.
    pub fn significant_coeffs(&self, a: &Scalar) -> Option<usize> {
        match &a.repr {
            Repr::Laurent(l) if !l.exact => Some(l.coeffs.len()),
            _ => None,
        }
    }

    /// Order of vanishing at s = 0 for rational functions (residue-form
    /// decompositions); `None` encodes infinity.
    pub fn ratfun_val_at_zero(&self, a: &Scalar) -> Result<Option<i64>> {
        self.own(a)?;
        match &a.repr {
            Repr::RatFun(r) => Ok(self.rctx().unwrap().val_at_zero(r)),
            _ => Err(Error::OwnerMismatch),
        }
    }

    /// For `a = s^v * u` with `u(0) != 0`, the residue `u(0)` in the base
    /// field; for Laurent scalars the leading window coefficient.
    pub fn unit_residue(&self, a: &Scalar) -> Result<Scalar> {
        self.own(a)?;
        let base = self.base_field().ok_or(Error::UnsupportedField("unit_residue".into()))?;
        match &a.repr {
            Repr::RatFun(r) => {
                let u = self
                    .rctx()
                    .unwrap()
                    .unit_residue_at_zero(r)
                    .ok_or(Error::DivisionByZero)?;
                Ok(base.wrap(Repr::Ff(u)))
            }
            Repr::Laurent(l) => {
                if l.coeffs.is_empty() {
                    return Err(if l.is_zero() {
                        Error::DivisionByZero
                    } else {
                        Error::PrecisionExhausted("no trusted leading coefficient".into())
                    });
                }
                Ok(base.wrap(Repr::Ff(l.coeffs[0].clone())))
            }
            _ => Err(Error::OwnerMismatch),
        }
    }

    // ------------------------------------------------------------------
    // squareness and square classes
    // ------------------------------------------------------------------

    pub fn is_square(&self, a: &Scalar) -> Result<SquareVerdict> {
        self.own(a)?;
        match &a.repr {
            Repr::Rat(x) => {
                if x.is_negative() {
                    return Ok(SquareVerdict::NonSquare);
                }
                let sq = |n: &BigInt| {
                    let r = n.sqrt();
                    &r * &r == *n
                };
                Ok(if sq(x.numer()) && sq(x.denom()) {
                    SquareVerdict::Square
                } else {
                    SquareVerdict::NonSquare
                })
            }
            Repr::Ff(e) => Ok(if self.gf().unwrap().is_square(e) {
                SquareVerdict::Square
            } else {
                SquareVerdict::NonSquare
            }),
            Repr::RatFun(_) => Ok(SquareVerdict::Unknown),
            Repr::Laurent(l) => {
                if l.is_zero() {
                    return Ok(SquareVerdict::Square);
                }
                if self.characteristic() == 2 {
                    return Ok(SquareVerdict::Unknown);
                }
                if l.lead % 2 != 0 {
                    return Ok(SquareVerdict::NonSquare);
                }
                // even valuation: squareness of the unit part is decided by
                // the residue (Hensel, residue characteristic != 2)
                let base = match &self.0.kind {
                    FieldKind::Laurent { base, .. } => base,
                    _ => unreachable!(),
                };
                Ok(if base.is_square(&l.coeffs[0]) {
                    SquareVerdict::Square
                } else {
                    SquareVerdict::NonSquare
                })
            }
        }
    }

    /// A canonical representative of the square class of `a` (1 or a fixed
    /// non-square over finite fields, the square-free part over Q). Fields
    /// without a decision procedure return `a` unchanged.
    pub fn square_class_rep(&self, a: &Scalar) -> Result<Scalar> {
        self.own(a)?;
        if self.is_zero(a) {
            return Ok(a.clone());
        }
        match &a.repr {
            Repr::Ff(e) => {
                let gf = self.gf().unwrap();
                if gf.is_square(e) {
                    Ok(self.one())
                } else {
                    Ok(self.wrap(Repr::Ff(gf.nonsquare().unwrap())))
                }
            }
            Repr::Rat(x) => {
                let sf = |n: &BigInt| -> Option<BigInt> {
                    let mut n = n.abs();
                    let mut out = BigInt::one();
                    let mut d = BigInt::from(2u32);
                    let limit = BigInt::from(1_000_000u64);
                    while &d * &d <= n {
                        if &d > &limit {
                            return None;
                        }
                        let mut cnt = 0u32;
                        while (&n % &d).is_zero() {
                            n /= &d;
                            cnt += 1;
                        }
                        if cnt % 2 == 1 {
                            out *= &d;
                        }
                        d += 1;
                    }
                    Some(out * n)
                };
                let (sn, sd) = match (sf(x.numer()), sf(x.denom())) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Ok(a.clone()),
                };
                let mut v = BigRational::new(sn * sd, BigInt::one());
                if x.is_negative() {
                    v = -v;
                }
                Ok(self.wrap(Repr::Rat(v)))
            }
            _ => Ok(a.clone()),
        }
    }

    /// A fixed non-square of a finite field of odd order.
    pub fn nonsquare(&self) -> Option<Scalar> {
        self.gf().and_then(|gf| gf.nonsquare()).map(|e| self.wrap(Repr::Ff(e)))
    }

    /// Artin-Schreier triviality of `a` in characteristic 2: is a = y^2 + y?
    pub fn artin_schreier_trivial(&self, a: &Scalar) -> Result<bool> {
        self.own(a)?;
        match &a.repr {
            Repr::Ff(e) => {
                let gf = self.gf().unwrap();
                if gf.p != 2 {
                    return Err(Error::WrongCharacteristic(gf.p));
                }
                Ok(gf.as_trivial(e))
            }
            _ => Err(Error::UnsupportedField("artin_schreier_trivial".into())),
        }
    }

    // ------------------------------------------------------------------
    // enumeration, sampling, text
    // ------------------------------------------------------------------

    /// All elements of a finite field, in a fixed deterministic order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.gf()
            .map(|gf| gf.elements().into_iter().map(|e| self.wrap(Repr::Ff(e))).collect())
    }

    pub fn random(&self, rng: &mut impl Rng) -> Scalar {
        match &self.0.kind {
            FieldKind::Rationals => {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=9);
                self.rational(n, d).unwrap()
            }
            FieldKind::Prime(gf) | FieldKind::Galois(gf) => {
                let e: GfElt = (0..gf.n).map(|_| rng.gen_range(0..gf.p)).collect();
                self.wrap(Repr::Ff(e))
            }
            FieldKind::RatFun { base, .. } => {
                let rc = RatFunCtx { base };
                let num: GfPoly = (0..=rng.gen_range(0usize..=2))
                    .map(|_| (0..base.n).map(|_| rng.gen_range(0..base.p)).collect())
                    .collect();
                let mut den: GfPoly = (0..=rng.gen_range(0usize..=1))
                    .map(|_| (0..base.n).map(|_| rng.gen_range(0..base.p)).collect())
                    .collect();
                if den.iter().all(|c| base.is_zero(c)) {
                    den = vec![base.one()];
                }
                let a = rc.from_poly(num);
                let b = rc.from_poly(den);
                self.wrap(Repr::RatFun(Box::new(
                    rc.mul(&a, &rc.inv(&b).unwrap()).unwrap(),
                )))
            }
            FieldKind::Laurent { .. } => self.random_laurent(rng, -2, 3),
        }
    }

    /// Random exact Laurent polynomial with support in `[min_lead, max_exp]`.
    pub fn random_laurent(&self, rng: &mut impl Rng, min_lead: i64, max_exp: i64) -> Scalar {
        let FieldKind::Laurent { base, prec, .. } = &self.0.kind else {
            panic!("random_laurent on a non-Laurent field");
        };
        let ctx = LaurentCtx { base, prec: *prec };
        let nterms = rng.gen_range(1usize..=3);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let e = rng.gen_range(min_lead..=max_exp);
            let c: GfElt = (0..base.n).map(|_| rng.gen_range(0..base.p)).collect();
            terms.push((e, c));
        }
        self.wrap(Repr::Laurent(Box::new(ctx.from_terms(&terms))))
    }

    pub fn random_nonzero(&self, rng: &mut impl Rng) -> Scalar {
        loop {
            let s = self.random(rng);
            if !self.is_zero(&s) {
                return s;
            }
        }
    }

    pub fn format(&self, a: &Scalar) -> String {
        match &a.repr {
            Repr::Rat(x) => x.to_string(),
            Repr::Ff(e) => self.gf().unwrap().fmt_elt(e),
            Repr::RatFun(r) => {
                let FieldKind::RatFun { var, .. } = &self.0.kind else { unreachable!() };
                self.rctx().unwrap().fmt(r, var)
            }
            Repr::Laurent(l) => {
                let FieldKind::Laurent { var, .. } = &self.0.kind else { unreachable!() };
                self.lctx().unwrap().fmt(l, var)
            }
        }
    }

    /// Parse a scalar literal: integers and fractions everywhere; polynomial
    /// expressions in the field variable (`t^2+3t`, `t^-1`) over Laurent and
    /// rational function fields; generator expressions (`g^2+1`) over Galois
    /// fields.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse("empty scalar"));
        }
        // fraction with parenthesized or plain sides, split at top level
        if let Some(idx) = top_level_slash(text) {
            let lhs = self.parse_scalar(&text[..idx])?;
            let rhs = self.parse_scalar(&text[idx + 1..])?;
            return self.div(&lhs, &rhs);
        }
        let inner = text.strip_prefix('(').and_then(|r| r.strip_suffix(')'));
        if let Some(inner) = inner {
            return self.parse_scalar(inner);
        }
        let var = match &self.0.kind {
            FieldKind::RatFun { var, .. } | FieldKind::Laurent { var, .. } => Some(var.clone()),
            FieldKind::Galois(_) => Some("g".to_string()),
            _ => None,
        };
        let mut acc = self.zero();
        for (sign, term) in split_terms(text)? {
            let t = self.parse_term(&term, var.as_deref())?;
            acc = if sign > 0 { self.add(&acc, &t)? } else { self.sub(&acc, &t)? };
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str, var: Option<&str>) -> Result<Scalar> {
        let term = term.trim().trim_end_matches('*');
        if term.is_empty() {
            return Err(Error::parse("empty term"));
        }
        if let Some(v) = var {
            if let Some(pos) = term.find(v) {
                let coeff_txt = term[..pos].trim().trim_end_matches('*').trim();
                let rest = &term[pos + v.len()..];
                let exp: i64 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| Error::parse(format!("bad exponent in `{term}`")))?
                        .parse()
                        .map_err(|_| Error::parse(format!("bad exponent in `{term}`")))?
                };
                let coeff = if coeff_txt.is_empty() {
                    self.one()
                } else {
                    self.parse_term(coeff_txt, None)?
                };
                let base = match &self.0.kind {
                    FieldKind::Galois(_) => self.generator()?,
                    _ => self.variable()?,
                };
                return self.mul(&coeff, &self.pow(&base, exp)?);
            }
        }
        if let Ok(n) = term.parse::<i64>() {
            return Ok(self.int(n));
        }
        // generator expressions in the coefficient field of a Laurent or
        // rational function field, e.g. `(g+1)t^2`
        if term.contains('g') {
            if let Some(base) = self.base_field() {
                let c = base.parse_scalar(term)?;
                return self.lift_base(&c);
            }
        }
        Err(Error::parse(format!("bad scalar term `{term}`")))
    }
}

fn top_level_slash(text: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Split `a+b-c` into signed terms, respecting parentheses and exponent
/// minus signs (`t^-1`).
fn split_terms(text: &str) -> Result<Vec<(i32, String)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign = 1i32;
    let mut depth = 0i32;
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && i > 0 && chars[i - 1] != '^' => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                }
                cur = String::new();
                sign = if ch == '+' { 1 } else { -1 };
            }
            '-' if depth == 0 && i == 0 => sign = -1,
            '+' if depth == 0 && i == 0 => {}
            _ => cur.push(ch),
        }
        i += 1;
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.is_empty() {
        return Err(Error::parse("no terms"));
    }
    Ok(out)
}

/// Parse a polynomial over F_p written like `x^3+x+1` into little-endian
/// signed integer coefficients (reduce with [`fp_poly_mod`]).
pub fn parse_fp_poly(text: &str) -> Result<Vec<i64>> {
    let mut coeffs: Vec<i64> = vec![];
    for (sign, term) in split_terms(text)? {
        let (c, e) = if let Some(pos) = term.find('x') {
            let coeff_txt = term[..pos].trim().trim_end_matches('*').trim();
            let rest = &term[pos + 1..];
            let e: usize = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(|| Error::parse(format!("bad exponent in `{term}`")))?
                    .parse()
                    .map_err(|_| Error::parse(format!("bad exponent in `{term}`")))?
            };
            let c: i64 = if coeff_txt.is_empty() {
                1
            } else {
                coeff_txt.parse().map_err(|_| Error::parse(format!("bad term `{term}`")))?
            };
            (c, e)
        } else {
            let c: i64 =
                term.parse().map_err(|_| Error::parse(format!("bad term `{term}`")))?;
            (c, 0)
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += sign as i64 * c;
    }
    Ok(coeffs)
}

/// Reduce signed coefficients into `[0, p)`.
pub fn fp_poly_mod(coeffs: &[i64], p: u64) -> Vec<u64> {
    coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn fields_under_test() -> Vec<Field> {
        vec![
            Field::rationals(),
            Field::parse("Fp:7").unwrap(),
            Field::parse("Fq:2:3:x^3+x+1").unwrap(),
            Field::parse("Fq:3:2:x^2+1").unwrap(),
            Field::parse("RatFun:Fp:3:s").unwrap(),
            Field::parse("Laurent:Fp:5:t:prec=12").unwrap(),
        ]
    }

    #[test]
    fn descriptor_examples() {
        let f = Field::parse("Fp:7").unwrap();
        assert_eq!(f.characteristic(), 7);
        assert!(f.is_perfect());

        let f8 = Field::parse("Fq:2:3:x^3+x+1").unwrap();
        assert_eq!(f8.order(), Some(8));
        assert_eq!(f8.elements().unwrap().len(), 8);

        let l = Field::parse("Laurent:Fp:5:t:prec=12").unwrap();
        assert_eq!(l.laurent_precision(), Some(12));
        assert!(!l.is_perfect());

        assert!(matches!(Field::parse("Fp:4"), Err(Error::NonPrimeCharacteristic(4))));
        assert!(matches!(
            Field::parse("Laurent:Fp:5:t:prec=4"),
            Err(Error::PrecisionTooSmall(4))
        ));
    }

    #[test]
    fn field_axioms_on_random_triples() {
        for f in fields_under_test() {
            let mut rng = ChaCha20Rng::seed_from_u64(11);
            for _ in 0..200 {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                let assoc_l = f.add(&f.add(&a, &b).unwrap(), &c).unwrap();
                let assoc_r = f.add(&a, &f.add(&b, &c).unwrap()).unwrap();
                assert_eq!(assoc_l, assoc_r, "additive associativity over {f}");
                let m_l = f.mul(&f.mul(&a, &b).unwrap(), &c).unwrap();
                let m_r = f.mul(&a, &f.mul(&b, &c).unwrap()).unwrap();
                assert_eq!(m_l, m_r, "multiplicative associativity over {f}");
                let d_l = f.mul(&a, &f.add(&b, &c).unwrap()).unwrap();
                let d_r = f.add(&f.mul(&a, &b).unwrap(), &f.mul(&a, &c).unwrap()).unwrap();
                assert_eq!(d_l, d_r, "distributivity over {f}");
                if !f.is_zero(&a) {
                    let ai = f.inv(&a).unwrap();
                    let prod = f.mul(&a, &ai).unwrap();
                    assert!(
                        f.eq_within_precision(&prod, &f.one()),
                        "inverses over {f}: got {}",
                        f.format(&prod)
                    );
                }
            }
        }
    }

    #[test]
    fn modular_add_example() {
        let f7 = Field::parse("Fp:7").unwrap();
        assert_eq!(f7.add(&f7.int(3), &f7.int(5)).unwrap(), f7.one());
    }

    #[test]
    fn laurent_examples() {
        let l = Field::parse("Laurent:Fp:5:t:prec=12").unwrap();
        // inv(t^2) = t^-2
        let t2 = l.laurent_monomial(1, 2).unwrap();
        let inv = l.inv(&t2).unwrap();
        assert_eq!(l.laurent_val(&inv).unwrap(), Some(-2));
        // div(1, 1-t) = 1 + t + ... + t^11, verified by multiplying back
        let one = l.one();
        let t = l.variable().unwrap();
        let f = l.sub(&one, &t).unwrap();
        let series = l.div(&one, &f).unwrap();
        let base = l.base_field().unwrap();
        for e in 0..12 {
            assert_eq!(l.laurent_coeff(&series, e).unwrap(), base.one());
        }
        let back = l.mul(&series, &f).unwrap();
        assert_eq!(l.laurent_coeff(&back, 0).unwrap(), base.one());
        for e in 1..11 {
            assert_eq!(l.laurent_coeff(&back, e).unwrap(), base.zero());
        }
        // val examples
        let x = l.parse_scalar("t^2+2t^5").unwrap();
        assert_eq!(l.laurent_val(&x).unwrap(), Some(2));
        assert_eq!(l.laurent_val(&l.zero()).unwrap(), None);
        let y = l.parse_scalar("3t^-1").unwrap();
        assert_eq!(l.laurent_val(&y).unwrap(), Some(-1));
        // residue examples
        let r = l.parse_scalar("2+4t+t^3").unwrap();
        assert_eq!(l.residue(&r).unwrap(), l.base_field().unwrap().int(2));
        assert!(matches!(l.residue(&y), Err(Error::NegativeValuation)));
    }

    #[test]
    fn laurent_val_is_a_valuation() {
        let l = Field::parse("Laurent:Fp:5:t").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a = l.random(&mut rng);
            let b = l.random(&mut rng);
            let va = l.laurent_val(&a).unwrap();
            let vb = l.laurent_val(&b).unwrap();
            let prod = l.mul(&a, &b).unwrap();
            match (va, vb) {
                (Some(x), Some(y)) => {
                    assert_eq!(l.laurent_val(&prod).unwrap(), Some(x + y));
                }
                _ => assert_eq!(l.laurent_val(&prod).unwrap(), None),
            }
            if let Ok(sum) = l.add(&a, &b) {
                if let (Some(x), Some(y)) = (va, vb) {
                    if let Some(vs) = l.laurent_val(&sum).unwrap() {
                        assert!(vs >= x.min(y));
                    }
                }
            }
        }
    }

    #[test]
    fn squares_match_enumeration_small_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = Field::prime(p).unwrap();
            let elements = f.elements().unwrap();
            let mut squares = std::collections::HashSet::new();
            for e in &elements {
                squares.insert(f.format(&f.mul(e, e).unwrap()));
            }
            for e in &elements {
                if f.is_zero(e) {
                    continue;
                }
                let expected = squares.contains(&f.format(e));
                let got = f.is_square(e).unwrap() == SquareVerdict::Square;
                assert_eq!(expected, got, "p={p} a={}", f.format(e));
            }
        }
    }

    #[test]
    fn squareness_examples() {
        let q = Field::rationals();
        assert_eq!(
            q.is_square(&q.rational(4, 9).unwrap()).unwrap(),
            SquareVerdict::Square
        );
        let l = Field::parse("Laurent:Fp:5:t").unwrap();
        let t = l.variable().unwrap();
        assert_eq!(l.is_square(&t).unwrap(), SquareVerdict::NonSquare);
        let rf = Field::parse("RatFun:Fp:3:s").unwrap();
        let s = rf.variable().unwrap();
        assert_eq!(rf.is_square(&s).unwrap(), SquareVerdict::Unknown);
    }

    #[test]
    fn scalar_parsing_round_trips() {
        let l = Field::parse("Laurent:Fp:5:t").unwrap();
        let a = l.parse_scalar("t^-1+2+3t^2").unwrap();
        assert_eq!(l.laurent_val(&a).unwrap(), Some(-1));
        let f9 = Field::parse("Fq:3:2:x^2+1").unwrap();
        let g = f9.parse_scalar("g+2").unwrap();
        assert!(!f9.is_zero(&g));
        let q = Field::rationals();
        assert_eq!(q.parse_scalar("-3/4").unwrap(), q.rational(-3, 4).unwrap());
    }

    #[test]
    fn owner_mismatch_rejected() {
        let f5 = Field::parse("Fp:5").unwrap();
        let f7 = Field::parse("Fp:7").unwrap();
        let a = f5.int(1);
        let b = f7.int(1);
        assert!(matches!(f5.add(&a, &b), Err(Error::OwnerMismatch)));
    }
}
