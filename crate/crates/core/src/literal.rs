//! Text literals for algebras, forms, and vectors, as used by the CLI:
//!
//!   cd(F5,1,1)                       iterated Cayley-Dickson doubling
//!   etale2(split) etale2(sqrt:2) etale2(as:1)
//!   etale3(split) etale3(minpoly:x^3-x-1) etale3(product:etale2(sqrt:2))
//!   her3(cd(F,1,1),gamma=1,1,1)
//!   plus(etale3(...)) plus(mat3) plus(cyclic(etale3(...),gamma=t))
//!   tits1(etale3(...),mu=3)
//!   tits2(K=etale2(sqrt:2),B=mat3,tau=hermitian:1,1,1,p=unit,mu=2,1)
//!   isotope(her3(...),p=1,2,1,0,...)
//!   diag(1,-1,2)  pf(-1,-1)  pf(g,d)*diag(...)

use crate::comp_alg::{
    self, cayley_dickson, cubic_etale, quadratic_etale, ConicAlgebra, EtaleAlgebra, EtaleSpec2,
    EtaleSpec3,
};
use crate::cubic_jordan::{
    self, assoc, her3, isotope, plus_algebra, tits1, tits2, AssocCubic, CubicJordan,
};
use crate::error::{Error, Result};
use crate::fields::{fp_poly_mod, parse_fp_poly, Field, Scalar};
use crate::quadforms::{self, QuadraticForm};

/// Split `a,b,f(c,d),e` at top-level commas.
fn split_args(s: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Parse `name(args)`; returns (name, inner args text).
fn call(s: &str) -> Option<(&str, &str)> {
    let s = s.trim();
    let open = s.find('(')?;
    if !s.ends_with(')') {
        return None;
    }
    let name = &s[..open];
    let inner = &s[open + 1..s.len() - 1];
    Some((name.trim(), inner))
}

/// An argument is a keyword argument iff it has `key=` before any paren.
fn is_keyword_arg(a: &str) -> bool {
    match a.find('=') {
        Some(i) => !a[..i].contains('('),
        None => false,
    }
}

fn keyword<'a>(args: &'a [String], key: &str) -> Option<String> {
    // joins everything after `key=` across the following args (vectors are
    // comma separated, so `p=1,2,3` spans several args)
    let prefix = format!("{key}=");
    let start = args.iter().position(|a| a.starts_with(&prefix))?;
    let mut parts = vec![args[start][prefix.len()..].to_string()];
    for a in &args[start + 1..] {
        if is_keyword_arg(a) {
            break;
        }
        parts.push(a.clone());
    }
    Some(parts.join(","))
}

fn positional(args: &[String]) -> Vec<String> {
    args.iter().take_while(|a| !is_keyword_arg(a)).cloned().collect()
}

pub fn parse_vector(f: &Field, text: &str, dim: usize) -> Result<Vec<Scalar>> {
    let parts = split_args(text);
    if parts.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: parts.len() });
    }
    parts.iter().map(|p| f.parse_scalar(p)).collect()
}

pub fn parse_conic(f: &Field, text: &str) -> Result<ConicAlgebra> {
    let (name, inner) = call(text)
        .ok_or_else(|| Error::UnknownConstruction(text.to_string()))?;
    match name {
        "cd" => {
            let args = split_args(inner);
            if args.is_empty() {
                return Err(Error::parse("cd needs a base and doubling scalars"));
            }
            let mut alg = if args[0].starts_with("etale2") {
                parse_etale2(f, &args[0])?.to_conic()?
            } else {
                // a field-name echo like Q, F, F5, Fp; the ambient field is
                // taken from context
                comp_alg::base_algebra(f)
            };
            for mu_text in &args[1..] {
                let mu = f.parse_scalar(mu_text)?;
                alg = cayley_dickson(&alg, &mu)?;
            }
            Ok(alg)
        }
        "etale2" => parse_etale2(f, text)?.to_conic(),
        _ => Err(Error::UnknownConstruction(text.to_string())),
    }
}

pub fn parse_etale2(f: &Field, text: &str) -> Result<EtaleAlgebra> {
    let (name, inner) = call(text)
        .ok_or_else(|| Error::UnknownConstruction(text.to_string()))?;
    if name != "etale2" {
        return Err(Error::UnknownConstruction(text.to_string()));
    }
    let inner = inner.trim();
    if inner == "split" {
        return quadratic_etale(f, EtaleSpec2::Split);
    }
    if let Some(rest) = inner.strip_prefix("sqrt:") {
        return quadratic_etale(f, EtaleSpec2::SquareRoot(f.parse_scalar(rest)?));
    }
    if let Some(rest) = inner.strip_prefix("as:") {
        return quadratic_etale(f, EtaleSpec2::ArtinSchreier(f.parse_scalar(rest)?));
    }
    Err(Error::UnknownConstruction(text.to_string()))
}

pub fn parse_etale3(f: &Field, text: &str) -> Result<EtaleAlgebra> {
    let (name, inner) = call(text)
        .ok_or_else(|| Error::UnknownConstruction(text.to_string()))?;
    if name != "etale3" {
        return Err(Error::UnknownConstruction(text.to_string()));
    }
    let inner = inner.trim();
    if inner == "split" {
        return cubic_etale(f, EtaleSpec3::SplitTriple);
    }
    if let Some(rest) = inner.strip_prefix("minpoly:") {
        let coeffs = parse_fp_poly(rest)?;
        if coeffs.len() != 4 || coeffs[3] != 1 {
            return Err(Error::parse("minpoly must be a monic cubic in x"));
        }
        let cs: Vec<Scalar> = if f.characteristic() > 0 {
            fp_poly_mod(&coeffs[..3], f.characteristic())
                .into_iter()
                .map(|c| f.int(c as i64))
                .collect()
        } else {
            coeffs[..3].iter().map(|&c| f.int(c)).collect()
        };
        return cubic_etale(f, EtaleSpec3::MinPoly(cs));
    }
    if let Some(rest) = inner.strip_prefix("product:") {
        return cubic_etale(f, EtaleSpec3::ProductWith(parse_etale2(f, rest)?));
    }
    Err(Error::UnknownConstruction(text.to_string()))
}

pub fn parse_assoc(f: &Field, text: &str) -> Result<AssocCubic> {
    let text = text.trim();
    if text == "mat3" {
        return assoc::mat3_cubic(f);
    }
    if text == "base" {
        return assoc::base_cubic(f);
    }
    if let Some((name, inner)) = call(text) {
        match name {
            "etale3" => return assoc::etale_cubic(&parse_etale3(f, text)?),
            "cyclic" => {
                let args = split_args(inner);
                let e3 = parse_etale3(
                    f,
                    args.first()
                        .ok_or_else(|| Error::parse("cyclic needs an etale3 argument"))?,
                )?;
                let gamma_text = keyword(&args, "gamma")
                    .ok_or_else(|| Error::parse("cyclic needs gamma=<scalar>"))?;
                return assoc::cyclic_laurent(&e3, &f.parse_scalar(&gamma_text)?);
            }
            _ => {}
        }
    }
    Err(Error::UnknownConstruction(text.to_string()))
}

pub fn parse_algebra(f: &Field, text: &str) -> Result<CubicJordan> {
    let (name, inner) = call(text)
        .ok_or_else(|| Error::UnknownConstruction(text.to_string()))?;
    let args = split_args(inner);
    match name {
        "her3" => {
            let pos = positional(&args);
            let conic = parse_conic(
                f,
                pos.first().ok_or_else(|| Error::parse("her3 needs a coordinate algebra"))?,
            )?;
            let g_text = keyword(&args, "gamma")
                .ok_or_else(|| Error::parse("her3 needs gamma=<s>,<s>,<s>"))?;
            let g = parse_vector(f, &g_text, 3)?;
            her3(&conic, [g[0].clone(), g[1].clone(), g[2].clone()])
        }
        "plus" => {
            let pos = positional(&args);
            let a = parse_assoc(
                f,
                pos.first().ok_or_else(|| Error::parse("plus needs an algebra"))?,
            )?;
            plus_algebra(&a)
        }
        "tits1" => {
            let pos = positional(&args);
            let a = parse_assoc(
                f,
                pos.first().ok_or_else(|| Error::parse("tits1 needs an algebra"))?,
            )?;
            let mu_text =
                keyword(&args, "mu").ok_or_else(|| Error::parse("tits1 needs mu=<scalar>"))?;
            tits1(&a, &f.parse_scalar(&mu_text)?)
        }
        "tits2" => {
            let k_text =
                keyword(&args, "K").ok_or_else(|| Error::parse("tits2 needs K=etale2(...)"))?;
            let k2 = parse_etale2(f, &k_text)?;
            let b_text =
                keyword(&args, "B").ok_or_else(|| Error::parse("tits2 needs B=mat3|etale3(...)"))?;
            let sys = if b_text.trim() == "mat3" {
                let tau = keyword(&args, "tau").unwrap_or_else(|| "hermitian:1,1,1".into());
                let g_text = tau
                    .strip_prefix("hermitian:")
                    .ok_or_else(|| Error::parse("tau must be hermitian:<g1>,<g2>,<g3>"))?;
                let g = parse_vector(f, g_text, 3)?;
                cubic_jordan::mat3_system(f, &k2, [g[0].clone(), g[1].clone(), g[2].clone()])?
            } else {
                let e3 = parse_etale3(f, &b_text)?;
                cubic_jordan::etale_system(f, &k2, &e3)?
            };
            let p_text = keyword(&args, "p").unwrap_or_else(|| "unit".into());
            let p = if p_text.trim() == "unit" {
                sys.unit().to_vec()
            } else {
                parse_vector(f, &p_text, sys.bdim())?
            };
            let mu_text =
                keyword(&args, "mu").ok_or_else(|| Error::parse("tits2 needs mu=<a>,<b>"))?;
            let mu_parts = split_args(&mu_text);
            let mu = if mu_parts.len() == 2 {
                vec![f.parse_scalar(&mu_parts[0])?, f.parse_scalar(&mu_parts[1])?]
            } else {
                vec![f.parse_scalar(&mu_text)?, f.zero()]
            };
            tits2(&sys, &p, &mu)
        }
        "isotope" => {
            let pos = positional(&args);
            let parent = parse_algebra(
                f,
                pos.first().ok_or_else(|| Error::parse("isotope needs a parent algebra"))?,
            )?;
            let p_text =
                keyword(&args, "p").ok_or_else(|| Error::parse("isotope needs p=<vector>"))?;
            let p = parse_vector(f, &p_text, parent.dim())?;
            isotope(&parent, &p)
        }
        _ => Err(Error::UnknownConstruction(text.to_string())),
    }
}

/// Form literals: `diag(...)`, `pf(...)`, or `pf(...)*<form>` for Pfister
/// multiples.
pub fn parse_form(f: &Field, text: &str) -> Result<QuadraticForm> {
    let text = text.trim();
    if let Some(star) = top_level_star(text) {
        let left = &text[..star];
        let right = &text[star + 1..];
        let (name, inner) = call(left)
            .ok_or_else(|| Error::UnknownConstruction(left.to_string()))?;
        if name != "pf" {
            return Err(Error::UnknownConstruction(text.to_string()));
        }
        let gammas: Vec<Scalar> = split_args(inner)
            .iter()
            .map(|a| f.parse_scalar(a))
            .collect::<Result<_>>()?;
        let base = parse_form(f, right)?;
        // <<a_1, ..., a_n>> (x) q
        let neg: Vec<Scalar> = gammas.iter().map(|g| f.neg(g)).collect();
        return quadforms::pfister_multiple(&base, &neg);
    }
    let (name, inner) = call(text)
        .ok_or_else(|| Error::UnknownConstruction(text.to_string()))?;
    match name {
        "diag" => {
            let entries: Vec<Scalar> = split_args(inner)
                .iter()
                .map(|a| f.parse_scalar(a))
                .collect::<Result<_>>()?;
            Ok(QuadraticForm::diagonal(f, &entries))
        }
        "pf" => {
            let slots: Vec<Scalar> = split_args(inner)
                .iter()
                .map(|a| f.parse_scalar(a))
                .collect::<Result<_>>()?;
            quadforms::pfister(f, &slots)
        }
        _ => Err(Error::UnknownConstruction(text.to_string())),
    }
}

fn top_level_star(text: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let f5 = Field::parse("Fp:5").unwrap();
        let j = parse_algebra(&f5, "her3(cd(F,1,1),gamma=1,1,1)").unwrap();
        assert_eq!(j.dim(), 15);
        let j = parse_algebra(&f5, "plus(etale3(split))").unwrap();
        assert_eq!(j.dim(), 3);
        let j = parse_algebra(&f5, "tits1(etale3(minpoly:x^3+x+1),mu=2)").unwrap();
        assert_eq!(j.dim(), 9);
        let j = parse_algebra(&f5, "plus(mat3)").unwrap();
        assert_eq!(j.dim(), 9);
        let j = parse_algebra(
            &f5,
            "isotope(her3(cd(F,1,1),gamma=1,1,1),p=1,1,2,0,0,0,0,0,0,0,0,0,0,0,0)",
        )
        .unwrap();
        assert_eq!(j.dim(), 15);
        // downstream errors surface
        assert!(matches!(
            parse_algebra(&f5, "tits1(etale3(split),mu=0)"),
            Err(Error::ZeroMu)
        ));
    }

    #[test]
    fn parse_char2_and_q() {
        let f8 = Field::parse("Fq:2:3:x^3+x+1").unwrap();
        let j = parse_algebra(&f8, "her3(cd(etale2(as:1),1),gamma=1,1,1)").unwrap();
        assert_eq!(j.dim(), 15);
        let q = Field::rationals();
        let j = parse_algebra(&q, "her3(cd(Q,-1,-1,-1),gamma=1,1,1)").unwrap();
        assert_eq!(j.dim(), 27);
    }

    #[test]
    fn parse_forms() {
        let f3 = Field::parse("Fp:3").unwrap();
        let q = parse_form(&f3, "diag(1,-1,2)").unwrap();
        assert_eq!(q.dim(), 3);
        let p = parse_form(&f3, "pf(-1,-1)").unwrap();
        assert_eq!(p.dim(), 4);
        assert!(p.is_pfister_built());
        let t = parse_form(&f3, "pf(2)*diag(1,2)").unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn parse_tits2_literal() {
        let f5 = Field::parse("Fp:5").unwrap();
        // mu with n_K(mu) = 1 over F_25 = F_5(sqrt 2): n(a + b w) = a^2 - 2 b^2
        // a = 2, b = 2: 4 - 8 = -4 = 1 mod 5
        let j = parse_algebra(
            &f5,
            "tits2(K=etale2(sqrt:2),B=etale3(minpoly:x^3+x+1),p=unit,mu=2,2)",
        )
        .unwrap();
        assert_eq!(j.dim(), 9);
        let j = parse_algebra(
            &f5,
            "tits2(K=etale2(sqrt:2),B=mat3,tau=hermitian:1,1,1,p=unit,mu=2,2)",
        )
        .unwrap();
        assert_eq!(j.dim(), 27);
    }

    #[test]
    fn valuation_literals() {
        let l = Field::parse("Laurent:Fp:5:t").unwrap();
        let j = parse_algebra(&l, "tits1(etale3(minpoly:x^3+x+1),mu=t)").unwrap();
        assert_eq!(j.dim(), 9);
        let j = parse_algebra(
            &l,
            "plus(cyclic(etale3(minpoly:x^3+x+1),gamma=t))",
        )
        .unwrap();
        assert_eq!(j.dim(), 9);
    }
}
