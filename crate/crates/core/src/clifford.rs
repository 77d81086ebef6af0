//! Jordan algebras of pointed quadratic modules and the brute-force
//! verification that homogeneity of J(V, q, e) matches roundness of q.
//!
//! The structure group of such an algebra is the similitude group of q, so
//! homogeneity is transitivity of the similitudes on the invertible set
//! {x : q(x) != 0}. For small dimensions the group is enumerated outright;
//! in dimension 4 a generated subgroup (reflections, scalars, and randomly
//! found proper similitudes) saturates the orbit instead.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::homogeneity::{Homogeneity, HomogeneityVerdict};
use crate::linalg;
use crate::quadforms::{self, QuadraticForm, VecEnum};
use crate::rng::subseed;

#[derive(Clone, Debug)]
pub struct CliffordJordan {
    q: QuadraticForm,
    e: Vec<Scalar>,
}

impl CliffordJordan {
    pub fn q(&self) -> &QuadraticForm {
        &self.q
    }

    pub fn base_point(&self) -> &[Scalar] {
        &self.e
    }

    pub fn field(&self) -> &Field {
        self.q.field()
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    /// Conjugation x -> b_q(e, x) e - x.
    pub fn conj(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = self.field().clone();
        let b = self.q.polar(&self.e, x)?;
        let be = linalg::scale_vec(&f, &b, &self.e)?;
        linalg::sub_vec(&f, &be, x)
    }

    /// U_x y = b_q(x, conj(y)) x - q(x) conj(y).
    pub fn u_apply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = self.field().clone();
        let ybar = self.conj(y)?;
        let b = self.q.polar(x, &ybar)?;
        let first = linalg::scale_vec(&f, &b, x)?;
        let qx = self.q.eval(x)?;
        let second = linalg::scale_vec(&f, &qx, &ybar)?;
        linalg::sub_vec(&f, &first, &second)
    }

    /// For dim > 1 the generic norm of the algebra is q itself.
    pub fn norm_form(&self) -> &QuadraticForm {
        &self.q
    }
}

/// Build J(V, q, e); requires q(e) = 1.
pub fn clifford_jordan(q: &QuadraticForm, e: &[Scalar]) -> Result<CliffordJordan> {
    let f = q.field().clone();
    if e.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), got: e.len() });
    }
    if !f.eq_within_precision(&q.eval(e)?, &f.one()) {
        return Err(Error::BadBasePoint);
    }
    let j = CliffordJordan { q: q.clone(), e: e.to_vec() };
    // sanity of the conjugation: fixes e, is an involution, U_e = id
    if !super_eq(&f, &j.conj(e)?, e) {
        return Err(Error::VerificationFailed("conj(e) != e".into()));
    }
    let mut rng = subseed(0xC11F, "clifford-check");
    for _ in 0..10 {
        let x: Vec<Scalar> = (0..j.dim()).map(|_| f.random(&mut rng)).collect();
        if !super_eq(&f, &j.conj(&j.conj(&x)?)?, &x) {
            return Err(Error::VerificationFailed("conjugation is not an involution".into()));
        }
        if !super_eq(&f, &j.u_apply(e, &x)?, &x) {
            return Err(Error::VerificationFailed("U_e != id".into()));
        }
    }
    Ok(j)
}

fn super_eq(f: &Field, a: &[Scalar], b: &[Scalar]) -> bool {
    a.iter().zip(b).all(|(x, y)| f.eq_within_precision(x, y))
}

/// All similitudes of q over a finite field, by filtering every invertible
/// matrix. Exponential in dim^2; callers bound the dimension.
pub fn similitude_group(q: &QuadraticForm, budget: u64) -> Result<Vec<linalg::Matrix>> {
    let f = q.field().clone();
    let elements = f.elements().ok_or_else(|| {
        Error::UnsupportedField("similitude enumeration needs a finite field".into())
    })?;
    let dim = q.dim();
    let order = f.order().unwrap();
    let mut total: u128 = 1;
    for _ in 0..dim * dim {
        total = total.saturating_mul(order);
        if total > budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "similitude enumeration needs {order}^{}",
                dim * dim
            )));
        }
    }
    let mut out = vec![];
    for flat in VecEnum::new(elements, dim * dim) {
        let m: linalg::Matrix = (0..dim).map(|r| flat[r * dim..(r + 1) * dim].to_vec()).collect();
        if is_similitude(q, &m)?.is_some() {
            out.push(m);
        }
    }
    Ok(out)
}

/// The similitude factor of m, if m is an invertible similitude of q.
pub fn is_similitude(q: &QuadraticForm, m: &linalg::Matrix) -> Result<Option<Scalar>> {
    let f = q.field().clone();
    let dim = q.dim();
    // images of basis vectors
    let mut images = Vec::with_capacity(dim);
    for i in 0..dim {
        images.push(linalg::mat_vec(&f, m, &linalg::basis_vector(&f, dim, i))?);
    }
    // determine the factor from the first constraint with a nonzero value
    let mut nu: Option<Scalar> = None;
    for i in 0..dim {
        let qi = q.eval(&linalg::basis_vector(&f, dim, i))?;
        if !f.is_zero(&qi) {
            nu = Some(f.div(&q.eval(&images[i])?, &qi)?);
            break;
        }
    }
    if nu.is_none() {
        for i in 0..dim {
            for j in i + 1..dim {
                let bij = q.polar(
                    &linalg::basis_vector(&f, dim, i),
                    &linalg::basis_vector(&f, dim, j),
                )?;
                if !f.is_zero(&bij) {
                    nu = Some(f.div(&q.polar(&images[i], &images[j])?, &bij)?);
                    break;
                }
            }
            if nu.is_some() {
                break;
            }
        }
    }
    let Some(nu) = nu else { return Ok(None) };
    if f.is_zero(&nu) {
        return Ok(None);
    }
    // verify all constraints
    for i in 0..dim {
        let qi = q.eval(&linalg::basis_vector(&f, dim, i))?;
        if q.eval(&images[i])? != f.mul(&nu, &qi)? {
            return Ok(None);
        }
        for j in i + 1..dim {
            let bij = q.polar(
                &linalg::basis_vector(&f, dim, i),
                &linalg::basis_vector(&f, dim, j),
            )?;
            if q.polar(&images[i], &images[j])? != f.mul(&nu, &bij)? {
                return Ok(None);
            }
        }
    }
    if f.is_zero(&linalg::det(&f, m)?) {
        return Ok(None);
    }
    Ok(Some(nu))
}

fn vec_key(f: &Field, v: &[Scalar]) -> String {
    v.iter().map(|c| f.format(c)).collect::<Vec<_>>().join(",")
}

/// Homogeneity of J(V, q, e): does the similitude group act transitively on
/// the invertible elements {x : q(x) != 0}?
pub fn cliff_homogeneous(j: &CliffordJordan, budget: u64) -> Result<HomogeneityVerdict> {
    let f = j.field().clone();
    let Some(elements) = f.elements() else {
        return Ok(HomogeneityVerdict {
            value: Homogeneity::Unknown,
            rationale: "orbit enumeration needs a finite field".into(),
            certificates: vec![],
        });
    };
    let dim = j.dim();
    let invertibles: Vec<Vec<Scalar>> = VecEnum::new(elements.clone(), dim)
        .filter(|v| !matches!(j.q().eval(v), Ok(val) if f.is_zero(&val)))
        .collect();
    // full enumeration when q^(dim^2) fits the budget
    let order = f.order().unwrap();
    let mut full_fits = true;
    {
        let mut total: u128 = 1;
        for _ in 0..dim * dim {
            total = total.saturating_mul(order);
            if total > budget as u128 {
                full_fits = false;
                break;
            }
        }
    }
    let orbit: std::collections::BTreeSet<String> = if full_fits {
        let group = similitude_group(j.q(), budget)?;
        let mut orbit = std::collections::BTreeSet::new();
        for g in &group {
            let img = linalg::mat_vec(&f, g, j.base_point())?;
            orbit.insert(vec_key(&f, &img));
        }
        orbit
    } else {
        // generator-based saturation: reflections, scalars, and a bounded
        // random search for proper similitude factors
        if f.characteristic() == 2 || !j.q().is_regular()? {
            return Ok(HomogeneityVerdict {
                value: Homogeneity::Unknown,
                rationale:
                    "saturation path needs a regular form in odd characteristic".into(),
                certificates: vec![],
            });
        }
        let mut gens: Vec<linalg::Matrix> = vec![];
        // reflections through anisotropic vectors (generate the isometry
        // group in odd characteristic)
        for v in VecEnum::new(elements.clone(), dim) {
            let qv = j.q().eval(&v)?;
            if f.is_zero(&qv) {
                continue;
            }
            let qv_inv = f.inv(&qv)?;
            let mut m = vec![vec![f.zero(); dim]; dim];
            for c in 0..dim {
                let ec = linalg::basis_vector(&f, dim, c);
                let bc = j.q().polar(&ec, &v)?;
                let coeff = f.mul(&bc, &qv_inv)?;
                let img = linalg::sub_vec(&f, &ec, &linalg::scale_vec(&f, &coeff, &v)?)?;
                for (r, val) in img.into_iter().enumerate() {
                    m[r][c] = val;
                }
            }
            gens.push(m);
        }
        // scalar maps
        for c in elements.iter().filter(|c| !f.is_zero(c)) {
            let mut m = vec![vec![f.zero(); dim]; dim];
            for i in 0..dim {
                m[i][i] = c.clone();
            }
            gens.push(m);
        }
        // a similitude with nonsquare factor: random search first, then the
        // constructive route (an isometry witness nu q -> q is a similitude
        // with factor nu); if nu q and q are inequivalent no such similitude
        // exists and the reflection-generated orbit is already complete
        if let Some(ns) = f.nonsquare() {
            let mut rng = subseed(0x51A1, "similitude-random-search");
            let mut found = None;
            for _ in 0..20_000 {
                let m: linalg::Matrix = (0..dim)
                    .map(|_| (0..dim).map(|_| f.random(&mut rng)).collect())
                    .collect();
                if let Some(nu) = is_similitude(j.q(), &m)? {
                    if f.is_square(&nu)? == crate::fields::SquareVerdict::NonSquare {
                        found = Some(m);
                        break;
                    }
                }
            }
            if found.is_none() {
                let scaled = j.q().scaled(&ns)?;
                let eqv = quadforms::equivalent(&scaled, j.q(), budget)?;
                match eqv.value {
                    quadforms::Verdict::Yes => {
                        let Some(flat) = eqv.witness else {
                            return Ok(HomogeneityVerdict {
                                value: Homogeneity::Unknown,
                                rationale: "nu q = q but no witness isometry produced".into(),
                                certificates: vec![],
                            });
                        };
                        let m: linalg::Matrix =
                            (0..dim).map(|r| flat[r * dim..(r + 1) * dim].to_vec()).collect();
                        if is_similitude(j.q(), &m)?.is_none() {
                            return Err(Error::VerificationFailed(
                                "witness isometry is not a similitude".into(),
                            ));
                        }
                        found = Some(m);
                    }
                    quadforms::Verdict::No => {
                        // no nonsquare-factor similitude exists; proceed with
                        // the square-factor generators alone
                    }
                    quadforms::Verdict::Unknown => {
                        return Ok(HomogeneityVerdict {
                            value: Homogeneity::Unknown,
                            rationale: "similitude class existence undecided".into(),
                            certificates: vec![],
                        });
                    }
                }
            }
            if let Some(m) = found {
                gens.push(m);
            }
        }
        // BFS orbit saturation; deterministic because the frontier is sorted
        let mut orbit: std::collections::BTreeMap<String, Vec<Scalar>> =
            std::collections::BTreeMap::new();
        orbit.insert(vec_key(&f, j.base_point()), j.base_point().to_vec());
        let mut frontier = vec![j.base_point().to_vec()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let img = linalg::mat_vec(&f, g, &x)?;
                let key = vec_key(&f, &img);
                if !orbit.contains_key(&key) {
                    orbit.insert(key, img.clone());
                    frontier.push(img);
                }
            }
        }
        orbit.into_keys().collect()
    };
    let inv_keys: std::collections::BTreeSet<String> =
        invertibles.iter().map(|v| vec_key(&f, v)).collect();
    let value = if orbit == inv_keys {
        Homogeneity::Homogeneous
    } else {
        Homogeneity::NotHomogeneous
    };
    Ok(HomogeneityVerdict {
        value,
        rationale: format!(
            "similitude orbit of e has {} elements, invertible set has {}",
            orbit.len(),
            inv_keys.len()
        ),
        certificates: vec![],
    })
}

/// Both directions of the roundness correspondence on one pointed module.
#[derive(Clone, Debug)]
pub struct RoundnessReport {
    pub d_set: Vec<Scalar>,
    pub g_set: Vec<Scalar>,
    pub round: bool,
    pub regular: bool,
    pub homogeneous: Homogeneity,
    /// homogeneous => round (asserted unconditionally).
    pub forward_ok: bool,
    /// round and regular => homogeneous.
    pub converse_ok: Option<bool>,
}

/// Compute roundness data and the similitude-orbit verdict, then check the
/// two directions of the correspondence.
pub fn roundness_theorem_check(
    q: &QuadraticForm,
    e: &[Scalar],
    budget: u64,
) -> Result<RoundnessReport> {
    let j = clifford_jordan(q, e)?;
    let (d_set, g_set, round) = quadforms::d_g_round(q, budget)?;
    let regular = q.is_regular()?;
    let hom = cliff_homogeneous(&j, budget)?;
    let forward_ok = hom.value != Homogeneity::Homogeneous || round;
    let converse_ok = if round && regular {
        Some(hom.value == Homogeneity::Homogeneous)
    } else {
        None
    };
    Ok(RoundnessReport {
        d_set,
        g_set,
        round,
        regular,
        homogeneous: hom.value,
        forward_ok,
        converse_ok,
    })
}

/// All regular quadratic forms of the given dimension over a finite field,
/// up to equivalence (representatives chosen by enumeration).
pub fn regular_forms_up_to_equivalence(
    f: &Field,
    dim: usize,
    budget: u64,
) -> Result<Vec<QuadraticForm>> {
    let elements = f.elements().ok_or_else(|| {
        Error::UnsupportedField("form enumeration needs a finite field".into())
    })?;
    let entries = dim * (dim + 1) / 2;
    let mut reps: Vec<QuadraticForm> = vec![];
    for flat in VecEnum::new(elements, entries) {
        let mut q = QuadraticForm::zero(f, dim);
        let mut k = 0;
        for i in 0..dim {
            for j in i..dim {
                q.set(i, j, flat[k].clone());
                k += 1;
            }
        }
        if !q.is_regular()? {
            continue;
        }
        let mut new = true;
        for r in &reps {
            if quadforms::equivalent(r, &q, budget)?.is_yes() {
                new = false;
                break;
            }
        }
        if new {
            reps.push(q);
        }
    }
    Ok(reps)
}

/// Base points e with q(e) = 1.
pub fn base_points(q: &QuadraticForm) -> Result<Vec<Vec<Scalar>>> {
    let f = q.field().clone();
    let elements = f.elements().ok_or_else(|| {
        Error::UnsupportedField("base-point enumeration needs a finite field".into())
    })?;
    let mut out = vec![];
    for v in VecEnum::new(elements, q.dim()) {
        if f.is_one(&q.eval(&v)?) {
            out.push(v);
        }
    }
    Ok(out)
}
