//! Arithmetic contexts for finite fields F_{p^n} and univariate polynomials
//! over them.
//!
//! Elements of F_{p^n} are coefficient vectors of length `n` (little-endian
//! in the generator), reduced modulo a monic irreducible polynomial of
//! degree `n` over F_p. For `n = 1` the modulus is the formal polynomial
//! `x` and reduction degenerates to arithmetic mod `p`.

use crate::error::{Error, Result};

/// An element of F_{p^n}: exactly `n` coefficients in `[0, p)`.
pub type GfElt = Vec<u64>;

/// A univariate polynomial over F_{p^n}, little-endian, no trailing zeros.
pub type GfPoly = Vec<GfElt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf {
    pub p: u64,
    pub n: usize,
    /// Monic modulus over F_p, little-endian, length `n + 1`.
    pub modulus: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Gf {
    pub fn prime(p: u64) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Gf { p, n: 1, modulus: vec![0, 1] })
    }

    /// Extension field F_p[x]/(modulus); the modulus must be monic of degree
    /// `n` and irreducible over F_p.
    pub fn extension(p: u64, n: usize, modulus: Vec<u64>) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() != n + 1 || n < 1 {
            return Err(Error::FieldDescriptorError(format!(
                "modulus degree {} does not match extension degree {}",
                m.len().saturating_sub(1),
                n
            )));
        }
        if *m.last().unwrap() != 1 {
            return Err(Error::FieldDescriptorError("modulus is not monic".into()));
        }
        if n > 1 && !fp_irreducible(p, &m) {
            return Err(Error::ReducibleModulus(fp_poly_string(&m)));
        }
        Ok(Gf { p, n, modulus: m })
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.n as u32)
    }

    pub fn zero(&self) -> GfElt {
        vec![0; self.n]
    }

    pub fn one(&self) -> GfElt {
        let mut e = vec![0; self.n];
        e[0] = 1 % self.p;
        e
    }

    pub fn from_int(&self, v: i64) -> GfElt {
        let p = self.p as i64;
        let mut e = vec![0; self.n];
        e[0] = v.rem_euclid(p) as u64;
        e
    }

    pub fn is_zero(&self, a: &GfElt) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &GfElt, b: &GfElt) -> GfElt {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &GfElt, b: &GfElt) -> GfElt {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &GfElt) -> GfElt {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn scale(&self, c: u64, a: &GfElt) -> GfElt {
        let c = c % self.p;
        a.iter().map(|&x| mulmod(c, x, self.p)).collect()
    }

    pub fn mul(&self, a: &GfElt, b: &GfElt) -> GfElt {
        if self.n == 1 {
            return vec![mulmod(a[0], b[0], self.p)];
        }
        // schoolbook product, then reduce by the modulus
        let mut prod = vec![0u64; 2 * self.n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                prod[i + j] = (prod[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        self.reduce(prod)
    }

    fn reduce(&self, mut v: Vec<u64>) -> GfElt {
        let n = self.n;
        let p = self.p;
        for i in (n..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                // x^i = x^(i-n) * (x^n) and x^n = -(low part of modulus)
                for j in 0..n {
                    let m = self.modulus[j];
                    if m != 0 {
                        let t = mulmod(c, m, p);
                        v[i - n + j] = (v[i - n + j] + p - t) % p;
                    }
                }
                v[i] = 0;
            }
        }
        v.truncate(n);
        v.resize(n, 0);
        v
    }

    pub fn pow(&self, a: &GfElt, mut e: u128) -> GfElt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &GfElt) -> Result<GfElt> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2) = a^(-1) in F_q
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &GfElt, b: &GfElt) -> Result<GfElt> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// All field elements in a fixed deterministic order.
    pub fn elements(&self) -> Vec<GfElt> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; self.n];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.n {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < self.p {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Squareness of a nonzero element. In characteristic 2 the Frobenius is
    /// surjective, so everything is a square; in odd characteristic use the
    /// Euler criterion.
    pub fn is_square(&self, a: &GfElt) -> bool {
        if self.is_zero(a) {
            return true;
        }
        if self.p == 2 {
            return true;
        }
        let e = (self.order() - 1) / 2;
        let s = self.pow(a, e);
        s == self.one()
    }

    pub fn sqrt(&self, a: &GfElt) -> Option<GfElt> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.p == 2 {
            // inverse Frobenius: a^(q/2)
            return Some(self.pow(a, self.order() / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        // order is tiny at desk scale; scan
        for c in self.elements() {
            if self.mul(&c, &c) == *a {
                return Some(c);
            }
        }
        None
    }

    /// A canonical non-square, if one exists (odd characteristic only).
    pub fn nonsquare(&self) -> Option<GfElt> {
        if self.p == 2 {
            return None;
        }
        self.elements().into_iter().find(|e| !self.is_zero(e) && !self.is_square(e))
    }

    /// Absolute trace to F_p.
    pub fn abs_trace(&self, a: &GfElt) -> u64 {
        let mut acc = self.zero();
        let mut x = a.clone();
        for _ in 0..self.n {
            acc = self.add(&acc, &x);
            x = self.pow(&x, self.p as u128);
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0));
        acc[0]
    }

    /// Is `c` of the form y^2 + y (Artin-Schreier trivial)? Characteristic 2.
    pub fn as_trivial(&self, c: &GfElt) -> bool {
        debug_assert_eq!(self.p, 2);
        self.abs_trace(c) == 0
    }

    pub fn fmt_elt(&self, a: &GfElt) -> String {
        if self.n == 1 {
            return a[0].to_string();
        }
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 if c == 1 => "g".into(),
                1 => format!("{c}g"),
                _ if c == 1 => format!("g^{i}"),
                _ => format!("{c}g^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    // ------------------------------------------------------------------
    // univariate polynomials over this field
    // ------------------------------------------------------------------

    pub fn poly_trim(&self, mut f: GfPoly) -> GfPoly {
        while f.last().map(|c| self.is_zero(c)) == Some(true) {
            f.pop();
        }
        f
    }

    pub fn poly_deg(&self, f: &GfPoly) -> Option<usize> {
        if f.is_empty() {
            None
        } else {
            Some(f.len() - 1)
        }
    }

    pub fn poly_add(&self, f: &GfPoly, g: &GfPoly) -> GfPoly {
        let len = f.len().max(g.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = f.get(i).cloned().unwrap_or_else(|| self.zero());
            let b = g.get(i).cloned().unwrap_or_else(|| self.zero());
            out.push(self.add(&a, &b));
        }
        self.poly_trim(out)
    }

    pub fn poly_neg(&self, f: &GfPoly) -> GfPoly {
        f.iter().map(|c| self.neg(c)).collect()
    }

    pub fn poly_sub(&self, f: &GfPoly, g: &GfPoly) -> GfPoly {
        self.poly_add(f, &self.poly_neg(g))
    }

    pub fn poly_mul(&self, f: &GfPoly, g: &GfPoly) -> GfPoly {
        if f.is_empty() || g.is_empty() {
            return vec![];
        }
        let mut out = vec![self.zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if self.is_zero(a) {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                let t = self.mul(a, b);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        self.poly_trim(out)
    }

    pub fn poly_scale(&self, c: &GfElt, f: &GfPoly) -> GfPoly {
        self.poly_trim(f.iter().map(|a| self.mul(c, a)).collect())
    }

    /// Division with remainder; the divisor must be nonzero.
    pub fn poly_divrem(&self, f: &GfPoly, g: &GfPoly) -> Result<(GfPoly, GfPoly)> {
        let g = self.poly_trim(g.clone());
        if g.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let lead_inv = self.inv(g.last().unwrap())?;
        let mut rem = self.poly_trim(f.clone());
        let mut quo: GfPoly = vec![];
        while rem.len() >= g.len() {
            let shift = rem.len() - g.len();
            let c = self.mul(rem.last().unwrap(), &lead_inv);
            if quo.len() < shift + 1 {
                quo.resize(shift + 1, self.zero());
            }
            quo[shift] = self.add(&quo[shift], &c);
            for (i, gc) in g.iter().enumerate() {
                let t = self.mul(&c, gc);
                rem[shift + i] = self.sub(&rem[shift + i], &t);
            }
            rem = self.poly_trim(rem);
        }
        Ok((self.poly_trim(quo), rem))
    }

    pub fn poly_gcd(&self, f: &GfPoly, g: &GfPoly) -> Result<GfPoly> {
        let mut a = self.poly_trim(f.clone());
        let mut b = self.poly_trim(g.clone());
        while !b.is_empty() {
            let (_, r) = self.poly_divrem(&a, &b)?;
            a = b;
            b = r;
        }
        // monic normalization
        if let Some(lead) = a.last().cloned() {
            let li = self.inv(&lead)?;
            a = self.poly_scale(&li, &a);
        }
        Ok(a)
    }

    pub fn poly_derivative(&self, f: &GfPoly) -> GfPoly {
        let mut out = vec![];
        for (i, c) in f.iter().enumerate().skip(1) {
            out.push(self.scale(i as u64 % self.p, c));
        }
        self.poly_trim(out)
    }

    pub fn poly_eval(&self, f: &GfPoly, x: &GfElt) -> GfElt {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// Powers of x modulo f, used for Frobenius images in quotient rings.
    pub fn poly_powmod(&self, base: &GfPoly, mut e: u128, modulus: &GfPoly) -> Result<GfPoly> {
        let mut b = self.poly_divrem(base, modulus)?.1;
        let mut acc = vec![self.one()];
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_divrem(&self.poly_mul(&acc, &b), modulus)?.1;
            }
            b = self.poly_divrem(&self.poly_mul(&b, &b), modulus)?.1;
            e >>= 1;
        }
        Ok(acc)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Irreducibility over F_p by trial division with monic polynomials of
/// degree up to deg/2. Only used for moduli of small degree.
fn fp_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    let gf = Gf { p, n: 1, modulus: vec![0, 1] };
    let fe: GfPoly = gf.poly_trim(f.iter().map(|&c| vec![c % p]).collect());
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d, indexed by their low coefficients
        for k in 0..p.pow(d as u32) {
            let mut g: GfPoly = Vec::with_capacity(d + 1);
            let mut kk = k;
            for _ in 0..d {
                g.push(vec![kk % p]);
                kk /= p;
            }
            g.push(vec![1]);
            if let Ok((_, r)) = gf.poly_divrem(&fe, &g) {
                if r.is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn fp_poly_string(f: &[u64]) -> String {
    let terms: Vec<String> = f
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match i {
            0 => c.to_string(),
            1 if c == 1 => "x".into(),
            1 => format!("{c}x"),
            _ if c == 1 => format!("x^{i}"),
            _ => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
