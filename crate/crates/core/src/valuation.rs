//! Jordan valuations, ramification data, residue algebras, and the
//! trichotomy for cubic Jordan algebras constructed over truncated Laurent
//! fields.
//!
//! The valuation is lambda_J(x) = (1/3) lambda(N(x)). Lattices are taken
//! from construction provenance (the standard basis is an o-basis for the
//! supported constructions), and the lambda-theoretic definitions are then
//! verified on samples rather than recomputed from level sets.

use num::rational::Ratio;
use rand::Rng;

use crate::cubic_jordan::{self, AssocKind, CubicJordan, Provenance};
use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg;

pub type ValRat = Ratio<i64>;

/// lambda_J(x) = (1/3) lambda(N(x)); `None` encodes infinity.
pub fn lambda_j(j: &CubicJordan, x: &[Scalar]) -> Result<Option<ValRat>> {
    let f = j.field();
    let n = j.eval_norm(x)?;
    Ok(f.laurent_val(&n)?.map(|v| ValRat::new(v, 3)))
}

fn provenance_supported(j: &CubicJordan) -> Result<()> {
    match j.provenance() {
        Provenance::Tits1 { algebra, .. } => match algebra.kind() {
            AssocKind::Etale(_) | AssocKind::CyclicLaurent { .. } => Ok(()),
            _ => Err(Error::UnsupportedProvenance),
        },
        Provenance::Plus { algebra } => match algebra.kind() {
            AssocKind::Etale(_) | AssocKind::CyclicLaurent { .. } => Ok(()),
            _ => Err(Error::UnsupportedProvenance),
        },
        Provenance::Her3 { .. } => Ok(()),
        _ => Err(Error::UnsupportedProvenance),
    }
}

/// Index of Z in the subgroup of Q generated by the lambda values of the
/// standard basis vectors and their pairwise sums (sound for the supported
/// provenances).
fn value_group_index(j: &CubicJordan) -> Result<u32> {
    let field = j.field().clone();
    if field.laurent_precision().is_none() {
        return Err(Error::UnsupportedField("ramification needs a Laurent base".into()));
    }
    let dim = j.dim();
    let mut e: i64 = 1;
    let mut consider = |v: Option<ValRat>| {
        if let Some(r) = v {
            e = num::integer::lcm(e, *r.denom());
        }
    };
    for i in 0..dim {
        let ei = linalg::basis_vector(&field, dim, i);
        consider(lambda_j(j, &ei)?);
        for k in i + 1..dim {
            let ek = linalg::basis_vector(&field, dim, k);
            let sum = linalg::add_vec(&field, &ei, &ek)?;
            consider(lambda_j(j, &sum)?);
        }
    }
    Ok(e as u32)
}

/// Ramification data (e, f) with e the value-group index and f = dim / e,
/// cross-checked against the residue dimension when unramified.
pub fn ramification(j: &CubicJordan) -> Result<(u32, usize)> {
    provenance_supported(j)?;
    let e = value_group_index(j)?;
    let dim = j.dim();
    if dim % e as usize != 0 {
        return Err(Error::VerificationFailed(
            "value-group index does not divide the dimension".into(),
        ));
    }
    let f = dim / e as usize;
    // cross-check against the residue algebra in the unramified case
    if e == 1 {
        let res = residue_algebra(j)?;
        if res.dim() != f {
            return Err(Error::VerificationFailed(
                "residue dimension disagrees with dim/e".into(),
            ));
        }
    }
    Ok((e, f))
}

/// Residue algebra on the standard lattice: reduce every table coefficient
/// and the unit. Only for unramified algebras (e = 1).
pub fn residue_algebra(j: &CubicJordan) -> Result<CubicJordan> {
    let field = j.field().clone();
    let base = field
        .base_field()
        .ok_or_else(|| Error::UnsupportedField("residue needs a Laurent base".into()))?;
    provenance_supported(j)?;
    if value_group_index(j)? != 1 {
        return Err(Error::Ramified);
    }
    // reduce tables; every coefficient must be integral
    let res = |s: &Scalar| -> Result<Scalar> { field.residue(s) };
    let norm: cubic_jordan::CubicTable = j
        .norm_table()
        .iter()
        .map(|(a, b, c, s)| Ok((*a, *b, *c, res(s)?)))
        .collect::<Result<_>>()?;
    let sharp: cubic_jordan::QuadTable = j
        .sharp_table()
        .iter()
        .map(|entries| {
            entries
                .iter()
                .map(|(a, b, s)| Ok((*a, *b, res(s)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let tb: Vec<Vec<Scalar>> = j
        .trace_matrix()
        .iter()
        .map(|row| row.iter().map(res).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let unit: Vec<Scalar> = j.unit().iter().map(res).collect::<Result<_>>()?;
    CubicJordan::from_tables(
        base,
        j.dim(),
        unit,
        norm,
        sharp,
        tb,
        Provenance::Residue { description: j.provenance().label() },
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrichotomyTag {
    ResidueInseparableChar3,
    Unramified,
    RamifiedFirstTits,
}

#[derive(Debug)]
pub struct TrichotomyOutcome {
    pub tag: Option<TrichotomyTag>,
    /// Sampling certificate: number of nonzero samples with N != 0.
    pub division_samples: usize,
    /// Why the algebra is not a division algebra, when the norm criterion
    /// rejects it (the tag is then withheld).
    pub rejection: Option<String>,
    /// For the ramified case: the first Tits presentation (A kind, pi).
    pub presentation: Option<(String, Scalar)>,
    pub e: u32,
    pub f: usize,
}

/// Division-ness by the norm criterion, decidable for the supported
/// provenances: J(A, mu) is division iff A is division and mu is not a
/// norm. Over a Laurent field with finite residue, the norms of the
/// unramified cubic field are exactly the elements of valuation in 3Z, and
/// reduced norms of a division cyclic algebra fill the whole group.
fn division_by_rule(j: &CubicJordan) -> Result<Option<(bool, String)>> {
    let field = j.field().clone();
    let etale_is_field = |e: &crate::comp_alg::EtaleAlgebra| -> Result<bool> {
        // unramified etale algebra with residue-field structure constants:
        // a field iff the reduced minimal polynomial has no residue root
        let crate::comp_alg::EtaleKind::MinPoly(coeffs) = &e.kind else {
            return Ok(false); // split kinds are never fields
        };
        let base = field.base_field().ok_or(Error::UnsupportedProvenance)?;
        let mut reduced: Vec<Scalar> = Vec::with_capacity(4);
        for c in coeffs {
            reduced.push(field.residue(c)?);
        }
        reduced.push(base.one());
        for x in base.elements().unwrap() {
            if base.is_zero(&crate::fpoly::eval(&base, &reduced, &x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    match j.provenance() {
        Provenance::Tits1 { algebra, mu } => match algebra.kind() {
            AssocKind::Etale(e) => {
                if !etale_is_field(e)? {
                    return Ok(Some((false, "coefficient algebra is not a field".into())));
                }
                let v = field.laurent_val(mu)?.ok_or(Error::ZeroMu)?;
                if v.rem_euclid(3) == 0 {
                    Ok(Some((
                        false,
                        format!(
                            "mu has valuation {v} in 3Z, hence is a norm of the \
                             unramified cubic field"
                        ),
                    )))
                } else {
                    Ok(Some((true, format!("mu has valuation {v} not in 3Z"))))
                }
            }
            AssocKind::CyclicLaurent { .. } => Ok(Some((
                false,
                "reduced norms of a cyclic algebra over a local field fill the whole \
                 unit group"
                    .into(),
            ))),
            _ => Ok(None),
        },
        Provenance::Plus { algebra } => match algebra.kind() {
            AssocKind::Etale(e) => {
                let isf = etale_is_field(e)?;
                Ok(Some((isf, if isf { "cubic field".into() } else { "split factors".into() })))
            }
            AssocKind::CyclicLaurent { gamma, .. } => {
                let v = field.laurent_val(gamma)?.ok_or(Error::ZeroMu)?;
                let div = v.rem_euclid(3) != 0;
                Ok(Some((
                    div,
                    format!("cyclic algebra with lambda(gamma) = {v}"),
                )))
            }
            _ => Ok(None),
        },
        Provenance::Her3 { .. } => {
            Ok(Some((false, "reduced algebras are never division algebras".into())))
        }
        _ => Ok(None),
    }
}

/// Trichotomy for provenance-backed division candidates. Division-ness is
/// decided by the norm criterion where the provenance allows it and
/// certified by sampling on top (a certificate, not a proof); non-division
/// inputs record the rejection instead of a tag. Residue fields in the
/// supported tower are finite, hence perfect, so the inseparable branch
/// cannot fire here; it would be reported if it ever did.
pub fn trichotomy(j: &CubicJordan, samples: usize, rng: &mut impl Rng) -> Result<TrichotomyOutcome> {
    let field = j.field().clone();
    let (e, f) = ramification(j)?;
    if let Some((false, why)) = division_by_rule(j)? {
        return Ok(TrichotomyOutcome {
            tag: None,
            division_samples: 0,
            rejection: Some(why),
            presentation: None,
            e,
            f,
        });
    }
    let mut division_samples = 0;
    for _ in 0..samples {
        let x = j.random_lattice_vec(rng);
        if x.iter().all(|c| field.is_zero(c)) {
            continue;
        }
        if field.is_zero(&j.eval_norm(&x)?) {
            return Ok(TrichotomyOutcome {
                tag: None,
                division_samples,
                rejection: Some("sampling found a nonzero element of norm zero".into()),
                presentation: None,
                e,
                f,
            });
        }
        division_samples += 1;
    }
    let tag = if e == 3 {
        TrichotomyTag::RamifiedFirstTits
    } else {
        // residue separability: the residue algebra lives over a finite
        // (perfect) field, so inseparability cannot occur in this tower
        TrichotomyTag::Unramified
    };
    let presentation = if tag == TrichotomyTag::RamifiedFirstTits {
        if let Provenance::Tits1 { algebra, mu } = j.provenance() {
            if field.laurent_val(mu)? == Some(1) {
                Some((algebra.kind_label().to_string(), mu.clone()))
            } else {
                None
            }
        } else {
            None
        }
    } else {
        None
    };
    Ok(TrichotomyOutcome {
        tag: Some(tag),
        division_samples,
        rejection: None,
        presentation,
        e,
        f,
    })
}

#[derive(Debug)]
pub struct RegularityReport {
    /// Valuation of the determinant of the lattice trace Gram matrix.
    pub gram_det_val: Option<i64>,
    pub e: u32,
    /// (unit Gram determinant) <=> (e = 1).
    pub equivalence_holds: bool,
    /// x^3 lands in p o_J for sampled x in p_J.
    pub nilpotence_ok: bool,
}

/// Regularity of the lattice versus unramifiedness, plus the cube-nilpotence
/// of the valuation ideal modulo p.
pub fn regularity_unramified_check(
    j: &CubicJordan,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<RegularityReport> {
    let field = j.field().clone();
    let (e, _f) = ramification(j)?;
    let det = linalg::det(&field, j.trace_matrix())?;
    let gram_det_val = field.laurent_val(&det)?;
    let equivalence_holds = (gram_det_val == Some(0)) == (e == 1);
    // sample x in p_J and check all coordinates of x^3 have valuation >= 1.
    // Membership in p_J is by construction: t times a lattice vector always
    // qualifies; for first Tits constructions, scaling only the leading
    // block keeps the fractional-valuation j-parts intact (lambda >= 1/3),
    // which makes the check nontrivial in the ramified case.
    let t = field.variable()?;
    let mut nil_ok = true;
    for s in 0..samples {
        let y = j.random_lattice_vec(rng);
        let mut x = linalg::scale_vec(&field, &t, &y)?;
        if s % 2 == 1 {
            // in the ramified division case lambda is a genuine valuation
            // and scaling only the leading block keeps the fractional
            // j-parts (lambda >= 1/3) in p_J, making the check nontrivial
            if let Provenance::Tits1 { algebra, mu } = j.provenance() {
                let ramified_division = matches!(
                    field.laurent_val(mu),
                    Ok(Some(v)) if v.rem_euclid(3) != 0
                );
                if ramified_division {
                    let d = algebra.dim();
                    x = y.clone();
                    for slot in x.iter_mut().take(d) {
                        *slot = field.mul(&t, slot)?;
                    }
                }
            }
        }
        let x3 = j.cube(&x)?;
        for c in &x3 {
            if let Some(v) = field.laurent_val(c)? {
                if v < 1 {
                    nil_ok = false;
                }
            }
        }
    }
    Ok(RegularityReport { gram_det_val, e, equivalence_holds, nilpotence_ok: nil_ok })
}

/// Full valuation bundle for one algebra.
#[derive(Debug)]
pub struct ValuationReport {
    pub e: u32,
    pub f: usize,
    pub dim: usize,
    pub fundeq_ok: bool,
    pub residue_label: Option<String>,
    pub trichotomy: TrichotomyOutcome,
    /// The valuation laws below are properties of lambda on *division*
    /// algebras; for rejected inputs they are not applicable (`None`).
    pub lamsha_ok: Option<bool>,
    pub u_composition_ok: Option<bool>,
    pub ultrametric_ok: Option<bool>,
    pub unit_group_ok: Option<bool>,
}

pub fn analyze(j: &CubicJordan, samples: usize, rng: &mut impl Rng) -> Result<ValuationReport> {
    let field = j.field().clone();
    let (e, f) = ramification(j)?;
    let fundeq_ok = (e as usize) * f == j.dim();
    let residue_label = if e == 1 {
        Some(residue_algebra(j)?.provenance().label())
    } else {
        None
    };
    let trich = trichotomy(j, 100, rng)?;
    if trich.rejection.is_some() {
        return Ok(ValuationReport {
            e,
            f,
            dim: j.dim(),
            fundeq_ok,
            residue_label,
            trichotomy: trich,
            lamsha_ok: None,
            u_composition_ok: None,
            ultrametric_ok: None,
            unit_group_ok: None,
        });
    }
    // LAMSHA: lambda(x#) = 2 lambda(x)
    let mut lamsha_ok = true;
    for _ in 0..samples {
        let x = j.random_lattice_vec(rng);
        let lx = lambda_j(j, &x)?;
        let xs = j.eval_sharp(&x)?;
        let n_sharp = j.eval_norm(&xs)?;
        let ls = field.laurent_val(&n_sharp)?.map(|v| ValRat::new(v, 3));
        match (lx, ls) {
            (Some(a), Some(b)) => {
                if b != a * 2 {
                    lamsha_ok = false;
                }
            }
            (None, None) => {}
            _ => lamsha_ok = false,
        }
    }
    // lambda(U_x y) = 2 lambda(x) + lambda(y)
    let mut u_composition_ok = true;
    for _ in 0..samples {
        let x = j.random_lattice_vec(rng);
        let y = j.random_lattice_vec(rng);
        let lx = lambda_j(j, &x)?;
        let ly = lambda_j(j, &y)?;
        let lu = lambda_j(j, &j.u_apply(&x, &y)?)?;
        match (lx, ly, lu) {
            (Some(a), Some(b), Some(c)) => {
                if c != a * 2 + b {
                    u_composition_ok = false;
                }
            }
            (None, _, None) | (_, None, None) => {}
            _ => u_composition_ok = false,
        }
    }
    // ultrametric: lambda(x + y) >= min
    let mut ultrametric_ok = true;
    for _ in 0..(2 * samples) {
        let x = j.random_lattice_vec(rng);
        let y = j.random_lattice_vec(rng);
        let lx = lambda_j(j, &x)?;
        let ly = lambda_j(j, &y)?;
        let ls = lambda_j(j, &linalg::add_vec(&field, &x, &y)?)?;
        if let (Some(a), Some(b), Some(c)) = (lx, ly, ls) {
            if c < a.min(b) {
                ultrametric_ok = false;
            }
        }
    }
    // unit stability: lambda(x) = 0 implies x invertible with lambda(x^-1) = 0
    let mut unit_group_ok = true;
    let mut checked = 0;
    let mut guard = 0;
    while checked < samples && guard < 50 * samples {
        guard += 1;
        let x = j.random_lattice_vec(rng);
        if lambda_j(j, &x)? != Some(ValRat::new(0, 1)) {
            continue;
        }
        checked += 1;
        match j.invert(&x) {
            Ok(inv) => {
                if lambda_j(j, &inv)? != Some(ValRat::new(0, 1)) {
                    unit_group_ok = false;
                }
            }
            Err(_) => unit_group_ok = false,
        }
    }
    Ok(ValuationReport {
        e,
        f,
        dim: j.dim(),
        fundeq_ok,
        residue_label,
        trichotomy: trich,
        lamsha_ok: Some(lamsha_ok),
        u_composition_ok: Some(u_composition_ok),
        ultrametric_ok: Some(ultrametric_ok),
        unit_group_ok: Some(unit_group_ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp_alg::{cubic_etale, EtaleSpec3};
    use crate::cubic_jordan::{assoc, plus_algebra, tits1, verify_hom, HomMode};
    use crate::rng::subseed;

    fn laurent5() -> Field {
        Field::parse("Laurent:Fp:5:t").unwrap()
    }

    fn unramified_cubic(l: &Field) -> crate::comp_alg::EtaleAlgebra {
        cubic_etale(l, EtaleSpec3::MinPoly(vec![l.one(), l.one(), l.zero()])).unwrap()
    }

    #[test]
    fn lambda_examples() {
        let l = laurent5();
        let e = unramified_cubic(&l);
        let a = assoc::etale_cubic(&e).unwrap();
        let t = l.variable().unwrap();
        let j = tits1(&a, &t).unwrap();
        // lambda(1) = 0
        assert_eq!(lambda_j(&j, j.unit()).unwrap(), Some(ValRat::new(0, 1)));
        // lambda(j_1) = 1/3
        let mut j1 = linalg::zero_vector(&l, 9);
        j1[3] = l.one();
        assert_eq!(lambda_j(&j, &j1).unwrap(), Some(ValRat::new(1, 3)));
        // lambda(t 1) = 1
        let t1 = linalg::scale_vec(&l, &t, j.unit()).unwrap();
        assert_eq!(lambda_j(&j, &t1).unwrap(), Some(ValRat::new(1, 1)));
        // lambda(0) = infinity
        assert_eq!(lambda_j(&j, &linalg::zero_vector(&l, 9)).unwrap(), None);
    }

    #[test]
    fn ramification_of_the_three_standard_examples() {
        let l = laurent5();
        let e = unramified_cubic(&l);
        let a = assoc::etale_cubic(&e).unwrap();
        // ramified: J(E, t)
        let t = l.variable().unwrap();
        let j = tits1(&a, &t).unwrap();
        assert_eq!(ramification(&j).unwrap(), (3, 3));
        // unramified: J(E, unit)
        let j = tits1(&a, &l.int(2)).unwrap();
        assert_eq!(ramification(&j).unwrap(), (1, 9));
        // plus algebra of the unramified cubic field
        let j = plus_algebra(&a).unwrap();
        assert_eq!(ramification(&j).unwrap(), (1, 3));
    }

    #[test]
    fn residue_of_unramified_tits1_is_tits1_of_residues() {
        let l = laurent5();
        let base = l.base_field().unwrap();
        let e = unramified_cubic(&l);
        let a = assoc::etale_cubic(&e).unwrap();
        for mu_val in [2i64, 3] {
            let mu = l.int(mu_val);
            let j = tits1(&a, &mu).unwrap();
            let res = residue_algebra(&j).unwrap();
            assert_eq!(res.dim(), 9);
            // independently built: tits1 over the residue field
            let e_bar = cubic_etale(
                &base,
                EtaleSpec3::MinPoly(vec![base.one(), base.one(), base.zero()]),
            )
            .unwrap();
            let a_bar = assoc::etale_cubic(&e_bar).unwrap();
            let j_bar = tits1(&a_bar, &base.int(mu_val)).unwrap();
            let id = linalg::identity(&base, 9);
            let v = verify_hom(&res, &j_bar, &id, HomMode::Isomorphism, 50).unwrap();
            assert!(v.is_yes(), "mu = {mu_val}: {}", v.evidence);
        }
    }

    #[test]
    fn ramified_algebra_has_no_residue_on_the_standard_lattice() {
        let l = laurent5();
        let e = unramified_cubic(&l);
        let a = assoc::etale_cubic(&e).unwrap();
        let t = l.variable().unwrap();
        let j = tits1(&a, &t).unwrap();
        assert!(matches!(residue_algebra(&j), Err(Error::Ramified)));
    }

    #[test]
    fn trichotomy_tags() {
        let l = laurent5();
        let e = unramified_cubic(&l);
        let a = assoc::etale_cubic(&e).unwrap();
        let mut rng = subseed(61, "trichotomy-test");
        // ramified first Tits construction, with presentation
        let t = l.variable().unwrap();
        let j = tits1(&a, &t).unwrap();
        let out = trichotomy(&j, 100, &mut rng).unwrap();
        assert_eq!(out.tag, Some(TrichotomyTag::RamifiedFirstTits));
        assert!(out.presentation.is_some());
        assert!(out.rejection.is_none());
        // unramified (plus algebra of the cubic field)
        let j = plus_algebra(&a).unwrap();
        let out = trichotomy(&j, 100, &mut rng).unwrap();
        assert_eq!(out.tag, Some(TrichotomyTag::Unramified));
        // a non-division algebra records the rejection: J(E, mu) with mu a
        // norm is reduced; over the finite residue field every unit is a
        // norm, so any unit mu gives a non-division algebra
        let j = tits1(&a, &l.int(2)).unwrap();
        let out = trichotomy(&j, 500, &mut rng).unwrap();
        assert!(out.tag.is_none());
        assert!(out.rejection.is_some());
    }

    #[test]
    fn gram_determinant_matches_ramification() {
        let l = laurent5();
        let e = unramified_cubic(&l);
        let a = assoc::etale_cubic(&e).unwrap();
        let mut rng = subseed(67, "chaunr-test");
        // unramified: unit Gram determinant
        let j = tits1(&a, &l.int(2)).unwrap();
        let r = regularity_unramified_check(&j, 20, &mut rng).unwrap();
        assert_eq!(r.gram_det_val, Some(0));
        assert_eq!(r.e, 1);
        assert!(r.equivalence_holds);
        assert!(r.nilpotence_ok);
        // ramified: positive valuation
        let t = l.variable().unwrap();
        let j = tits1(&a, &t).unwrap();
        let r = regularity_unramified_check(&j, 20, &mut rng).unwrap();
        assert!(r.gram_det_val.unwrap() > 0);
        assert_eq!(r.e, 3);
        assert!(r.equivalence_holds);
        assert!(r.nilpotence_ok);
        // plus algebra: unit determinant
        let j = plus_algebra(&a).unwrap();
        let r = regularity_unramified_check(&j, 20, &mut rng).unwrap();
        assert_eq!(r.gram_det_val, Some(0));
        assert!(r.equivalence_holds);
    }

    #[test]
    fn full_reports_on_the_examples() {
        let l = laurent5();
        let e = unramified_cubic(&l);
        let a = assoc::etale_cubic(&e).unwrap();
        let t = l.variable().unwrap();
        let mut rng = subseed(71, "valuation-report");
        // division algebras: all lambda laws hold on samples
        for j in [tits1(&a, &t).unwrap(), plus_algebra(&a).unwrap()] {
            let rep = analyze(&j, 50, &mut rng).unwrap();
            assert!(rep.fundeq_ok, "FUNDEQ for {}", j.provenance().label());
            assert_eq!(rep.lamsha_ok, Some(true));
            assert_eq!(rep.u_composition_ok, Some(true));
            assert_eq!(rep.ultrametric_ok, Some(true));
            assert_eq!(rep.unit_group_ok, Some(true));
        }
        // non-division input: rejected with a reason, laws not applicable
        let j = tits1(&a, &l.int(2)).unwrap();
        let rep = analyze(&j, 50, &mut rng).unwrap();
        assert!(rep.fundeq_ok);
        assert!(rep.trichotomy.rejection.is_some());
        assert_eq!(rep.lamsha_ok, None);
        assert_eq!(rep.residue_label.as_deref().is_some(), true);
    }

    #[test]
    fn cyclic_tits1_dim27_ramification() {
        // Albert-scale example: J(cyclic, t) where the cyclic algebra is
        // itself a division algebra; lattice data stays exact
        let l = laurent5();
        let e = unramified_cubic(&l);
        let t = l.variable().unwrap();
        let cyc = assoc::cyclic_laurent(&e, &t).unwrap();
        let j = plus_algebra(&cyc).unwrap();
        // the cyclic algebra is ramified (z has lambda = 1/3)
        let (eidx, fdeg) = ramification(&j).unwrap();
        assert_eq!((eidx as usize) * fdeg, 9);
        assert_eq!(eidx, 3);
    }
}
