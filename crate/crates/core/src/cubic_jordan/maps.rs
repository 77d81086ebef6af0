//! Structure-preserving-map verification, the explicit isomorphism from
//! Her_3(C, Gamma) onto a diagonal isotope of Her_3(C), and elementary
//! idempotent search.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::linalg;
use crate::quadforms::FormVerdict;
use crate::rng::subseed;

use super::{constructions, eq_vec, CubicJordan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomMode {
    Isomorphism,
    Embedding,
}

/// Verify that the linear map `l` (a dim2 x dim1 matrix) is a homomorphism
/// of cubic Jordan algebras: unit to unit, norm preserved, adjoint
/// intertwined, on the basis plus `samples` random points.
pub fn verify_hom(
    j1: &CubicJordan,
    j2: &CubicJordan,
    l: &linalg::Matrix,
    mode: HomMode,
    samples: usize,
) -> Result<FormVerdict> {
    let f = j1.field().clone();
    if j2.field() != &f {
        return Err(Error::FieldMismatch);
    }
    let apply = |x: &[Scalar]| linalg::mat_vec(&f, l, x);
    if !eq_vec(&f, &apply(j1.unit())?, j2.unit()) {
        return Ok(FormVerdict::no("unit is not preserved"));
    }
    let mut points: Vec<Vec<Scalar>> = (0..j1.dim())
        .map(|i| linalg::basis_vector(&f, j1.dim(), i))
        .collect();
    let mut rng = subseed(0x7E57, "verify-hom");
    for _ in 0..samples {
        points.push(if f.laurent_precision().is_some() {
            j1.random_lattice_vec(&mut rng)
        } else {
            j1.random_vec(&mut rng)
        });
    }
    for x in &points {
        let lx = apply(x)?;
        if !f.eq_within_precision(&j2.eval_norm(&lx)?, &j1.eval_norm(x)?) {
            return Ok(FormVerdict::no("norm is not preserved"));
        }
        if !eq_vec(&f, &apply(&j1.eval_sharp(x)?)?, &j2.eval_sharp(&lx)?) {
            return Ok(FormVerdict::no("adjoint is not intertwined"));
        }
    }
    if mode == HomMode::Isomorphism {
        if j1.dim() != j2.dim() || f.is_zero(&linalg::det(&f, l)?) {
            return Ok(FormVerdict::no("map is not bijective"));
        }
    }
    Ok(FormVerdict::yes(None, format!("checked on basis + {samples} samples")))
}

/// Result of the Her_3(C, Gamma) -> Her_3(C)^(p^-1) verification.
pub struct JomastResult {
    pub map: linalg::Matrix,
    pub source: CubicJordan,
    pub target: CubicJordan,
    /// Unit carried to the target unit, N o phi = (g1 g2 g3) N_Gamma checked
    /// on the basis plus 50 random points, U-compatibility on 20 pairs.
    pub certificate: String,
}

/// The diagonal rescaling map from Her_3(C, Gamma) onto the p^-1 isotope of
/// Her_3(C), p = sum gamma_i e_ii:
/// xi_i e_ii + u_i[jl] -> (gamma_i xi_i) e_ii + (gamma_j gamma_l u_i)[jl].
pub fn jomast_map(
    c: &crate::comp_alg::ConicAlgebra,
    gamma: [Scalar; 3],
) -> Result<JomastResult> {
    let f = c.field().clone();
    for g in &gamma {
        if f.is_zero(g) {
            return Err(Error::ZeroGamma);
        }
    }
    let source = constructions::her3(c, gamma.clone())?;
    let ones = [f.one(), f.one(), f.one()];
    let j = constructions::her3(c, ones)?;
    let dim = j.dim();
    let cd = c.dim();
    // p = sum gamma_i e_ii in Her_3(C)
    let mut p = linalg::zero_vector(&f, dim);
    for i in 0..3 {
        p[i] = gamma[i].clone();
    }
    let p_inv = j.invert(&p)?;
    let target = constructions::isotope(&j, &p_inv)?;
    // phi as a diagonal matrix
    let mut m = vec![vec![f.zero(); dim]; dim];
    let cyclic: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    for &(i, jj, l) in &cyclic {
        m[i][i] = gamma[i].clone();
        let gjl = f.mul(&gamma[jj], &gamma[l])?;
        for a in 0..cd {
            let idx = 3 + i * cd + a;
            m[idx][idx] = gjl.clone();
        }
    }
    // certificate checks
    let mut rng = subseed(0x10A5, "jomast");
    let g123 = f.mul(&gamma[0], &f.mul(&gamma[1], &gamma[2])?)?;
    // phi(1_Gamma) must be the target unit (= p)
    let phi_unit = linalg::mat_vec(&f, &m, source.unit())?;
    if !eq_vec(&f, &phi_unit, target.unit()) || !eq_vec(&f, &phi_unit, &p) {
        return Err(Error::VerificationFailed("jomast: unit image is not p".into()));
    }
    // norm semisimilarity into Her_3(C): N(phi x) = g1 g2 g3 N_Gamma(x)
    let mut points: Vec<Vec<Scalar>> =
        (0..dim).map(|i| linalg::basis_vector(&f, dim, i)).collect();
    for _ in 0..50 {
        points.push(source.random_vec(&mut rng));
    }
    for x in &points {
        let phix = linalg::mat_vec(&f, &m, x)?;
        let lhs = j.eval_norm(&phix)?;
        let rhs = f.mul(&g123, &source.eval_norm(x)?)?;
        if !f.eq_within_precision(&lhs, &rhs) {
            return Err(Error::VerificationFailed(
                "jomast: norm semisimilarity fails".into(),
            ));
        }
    }
    // full homomorphism check into the isotope
    let hom = verify_hom(&source, &target, &m, HomMode::Isomorphism, 50)?;
    if !hom.is_yes() {
        return Err(Error::VerificationFailed(format!(
            "jomast: isomorphism check failed ({})",
            hom.evidence
        )));
    }
    // U-operator compatibility on random pairs
    for _ in 0..20 {
        let x = source.random_vec(&mut rng);
        let y = source.random_vec(&mut rng);
        let lhs = linalg::mat_vec(&f, &m, &source.u_apply(&x, &y)?)?;
        let rhs = target.u_apply(
            &linalg::mat_vec(&f, &m, &x)?,
            &linalg::mat_vec(&f, &m, &y)?,
        )?;
        if !eq_vec(&f, &lhs, &rhs) {
            return Err(Error::VerificationFailed(
                "jomast: U-operator compatibility fails".into(),
            ));
        }
    }
    Ok(JomastResult {
        map: m,
        source,
        target,
        certificate: "unit image = p; norm semisimilarity on basis + 50 points; \
                      isomorphism onto the isotope; U-compatibility on 20 pairs"
            .into(),
    })
}

#[derive(Clone, Debug)]
pub enum IdempotentSearch {
    Found(Vec<Scalar>),
    NotFound { reason: String },
}

/// Search for an elementary idempotent: e^2 = e, e# = 0, T(e) = 1.
/// Strategy: split the characteristic polynomial of random elements at a
/// simple root to manufacture idempotents, falling back to full enumeration
/// within budget.
pub fn find_elementary_idempotent(
    j: &CubicJordan,
    budget: u64,
    rng: &mut impl Rng,
) -> Result<IdempotentSearch> {
    let f = j.field().clone();
    if j.dim() == 1 {
        return Ok(IdempotentSearch::NotFound {
            reason: "TraceConstraint: only 0 and 1 are idempotent in dimension 1".into(),
        });
    }
    let is_elementary = |e: &Vec<Scalar>| -> Result<bool> {
        if linalg::is_zero_vec(&f, e) {
            return Ok(false);
        }
        Ok(eq_vec(&f, &j.square(e)?, e)
            && linalg::is_zero_vec(&f, &j.eval_sharp(e)?)
            && f.eq_within_precision(&j.t_linear(e)?, &f.one()))
    };
    let complement = |e: &Vec<Scalar>| -> Result<Vec<Scalar>> {
        linalg::sub_vec(&f, j.unit(), e)
    };
    if let Some(elements) = f.elements() {
        // root-splitting attempts
        for _ in 0..400 {
            let x = j.random_vec(rng);
            let data = j.cubic_data(&x)?;
            let (t, s, n) = (data.lin_trace, data.quad_trace, data.norm);
            for alpha in &elements {
                // m(alpha) = alpha^3 - t alpha^2 + s alpha - n
                let a2 = f.mul(alpha, alpha)?;
                let a3 = f.mul(&a2, alpha)?;
                let mut val = f.sub(&a3, &f.mul(&t, &a2)?)?;
                val = f.add(&val, &f.mul(&s, alpha)?)?;
                val = f.sub(&val, &n)?;
                if !f.is_zero(&val) {
                    continue;
                }
                // m(t)/(t - alpha) = t^2 + p t + q
                let p = f.sub(alpha, &t)?;
                let q = f.add(&f.sub(&a2, &f.mul(&t, alpha)?)?, &s)?;
                // g(alpha) = 3 alpha^2 - 2 t alpha + s
                let mut galpha = f.mul(&f.int(3), &a2)?;
                galpha = f.sub(&galpha, &f.mul(&f.int(2), &f.mul(&t, alpha)?)?)?;
                galpha = f.add(&galpha, &s)?;
                if f.is_zero(&galpha) {
                    continue; // repeated root
                }
                // e = (x^2 + p x + q 1) / g(alpha)
                let x2 = j.square(&x)?;
                let mut e = linalg::add_vec(&f, &x2, &linalg::scale_vec(&f, &p, &x)?)?;
                e = linalg::add_vec(&f, &e, &linalg::scale_vec(&f, &q, j.unit())?)?;
                e = linalg::scale_vec(&f, &f.inv(&galpha)?, &e)?;
                if !eq_vec(&f, &j.square(&e)?, &e) {
                    continue;
                }
                if is_elementary(&e)? {
                    return Ok(IdempotentSearch::Found(e));
                }
                let co = complement(&e)?;
                if is_elementary(&co)? {
                    return Ok(IdempotentSearch::Found(co));
                }
            }
        }
        // full enumeration fallback
        let order = f.order().unwrap();
        let mut total: u128 = 1;
        let mut fits = true;
        for _ in 0..j.dim() {
            total = total.saturating_mul(order);
            if total > budget as u128 {
                fits = false;
                break;
            }
        }
        if !fits {
            return Err(Error::BudgetExceeded(format!(
                "idempotent enumeration needs {order}^{}",
                j.dim()
            )));
        }
        for v in crate::quadforms::VecEnum::new(elements, j.dim()) {
            if is_elementary(&v)? {
                return Ok(IdempotentSearch::Found(v));
            }
        }
        return Ok(IdempotentSearch::NotFound {
            reason: "exhaustive enumeration found no elementary idempotent".into(),
        });
    }
    Err(Error::BudgetExceeded("idempotent search needs a finite field".into()))
}
