//! The second Tits construction from an associative involutorial system
//! (K, B, tau): K a quadratic etale algebra, B a cubic associative
//! K-algebra (3x3 matrices or a cubic etale extension), tau a K/k-involution.
//! The output lives on H(B, tau) + B j with
//!
//!   N(x)   = N_H(x_0) + t_K(mu N_B(u)) - T_H(x_0, u p tau(u))
//!   x#     = (x_0# - u p tau(u)) + (conj(mu) tau(u#) p^-1 - x_0 u) j
//!   T(x,y) = T_H(x_0, y_0) + T_B(u p tau(v)) + T_B(v p tau(u))
//!
//! gated by the admissibility condition N_B(p) = n_K(mu). When K is split
//! the construction collapses to a first Tits construction and is delegated
//! to it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::comp_alg::{EtaleAlgebra, EtaleKind};
use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg;
use crate::mpoly::{alg_det3, alg_mul, MPoly};
use crate::rng::subseed;

use super::{
    assoc, constructions, derive_t_s, eq_vec, finish_cubic, finish_quad, push_cubic, push_quad,
    CubicJordan, CubicTable, Provenance, QuadTable,
};

#[derive(Clone, Debug)]
pub enum SysKind {
    Mat3 { gamma: [Scalar; 3] },
    EtaleOverK { e3: EtaleAlgebra },
}

#[derive(Clone, Debug)]
pub struct InvolutorialSystem {
    field: Field,
    k2: EtaleAlgebra,
    bdim: usize,
    mul: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    tau: linalg::Matrix,
    /// Multiplication by the K-generator w on B.
    wmul: linalg::Matrix,
    /// N_B as a pair of cubic tables (components along 1 and w of K).
    norm_k: [CubicTable; 2],
    /// T_B as a pair of linear forms.
    trace_k: [Vec<Scalar>; 2],
    h_basis: Vec<Vec<Scalar>>,
    pub kind: SysKind,
}

impl InvolutorialSystem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k2(&self) -> &EtaleAlgebra {
        &self.k2
    }

    pub fn bdim(&self) -> usize {
        self.bdim
    }

    pub fn h_basis(&self) -> &[Vec<Scalar>] {
        &self.h_basis
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let mut out = linalg::zero_vector(f, self.bdim);
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if f.is_zero(yb) {
                    continue;
                }
                let c = f.mul(xa, yb)?;
                for (m, s) in self.mul[a][b].iter().enumerate() {
                    if f.is_zero(s) {
                        continue;
                    }
                    out[m] = f.add(&out[m], &f.mul(&c, s)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn tau_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        linalg::mat_vec(&self.field, &self.tau, x)
    }

    /// N_B(x) as a K-element (pair of base-field scalars).
    pub fn norm_k_of(&self, x: &[Scalar]) -> Result<[Scalar; 2]> {
        let f = &self.field;
        let mut out = [f.zero(), f.zero()];
        for (comp, table) in self.norm_k.iter().enumerate() {
            let mut acc = f.zero();
            for (i, j, l, c) in table {
                let t = f.mul(&x[*i], &f.mul(&x[*j], &x[*l])?)?;
                if f.is_zero(&t) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(c, &t)?)?;
            }
            out[comp] = acc;
        }
        Ok(out)
    }

    pub fn trace_k_of(&self, x: &[Scalar]) -> Result<[Scalar; 2]> {
        let f = &self.field;
        let mut out = [f.zero(), f.zero()];
        for (comp, tv) in self.trace_k.iter().enumerate() {
            let mut acc = f.zero();
            for (a, c) in tv.iter().enumerate() {
                if f.is_zero(c) || f.is_zero(&x[a]) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(c, &x[a])?)?;
            }
            out[comp] = acc;
        }
        Ok(out)
    }

    /// n_K(mu) = mu conj(mu) for mu given in K-coordinates.
    pub fn k_norm(&self, mu: &[Scalar]) -> Result<[Scalar; 2]> {
        let conj = self.k2.conj2(mu)?;
        let prod = self.k2.mul_vec(mu, &conj)?;
        Ok([prod[0].clone(), prod[1].clone()])
    }

    fn check(&self) -> Result<()> {
        let f = &self.field;
        // tau is an involution and an antihomomorphism
        let t2 = linalg::mat_mul(&f.clone(), &self.tau, &self.tau)?;
        let id = linalg::identity(f, self.bdim);
        if !t2.iter().zip(&id).all(|(a, b)| eq_vec(f, a, b)) {
            return Err(Error::VerificationFailed("tau^2 != id".into()));
        }
        let mut rng = subseed(0x7A0, "involutorial-system");
        for _ in 0..20 {
            let x: Vec<Scalar> = (0..self.bdim).map(|_| f.random(&mut rng)).collect();
            let y: Vec<Scalar> = (0..self.bdim).map(|_| f.random(&mut rng)).collect();
            let lhs = self.tau_vec(&self.mul_vec(&x, &y)?)?;
            let rhs = self.mul_vec(&self.tau_vec(&y)?, &self.tau_vec(&x)?)?;
            if !eq_vec(f, &lhs, &rhs) {
                return Err(Error::VerificationFailed("tau(xy) != tau(y)tau(x)".into()));
            }
            // norm multiplicativity in K
            let nx = self.norm_k_of(&x)?;
            let ny = self.norm_k_of(&y)?;
            let nxy = self.norm_k_of(&self.mul_vec(&x, &y)?)?;
            let prod = self.k2.mul_vec(&[nx[0].clone(), nx[1].clone()], &[ny[0].clone(), ny[1].clone()])?;
            if !(f.eq_within_precision(&nxy[0], &prod[0])
                && f.eq_within_precision(&nxy[1], &prod[1]))
            {
                return Err(Error::VerificationFailed("N_B not multiplicative".into()));
            }
            // tau restricted to K 1 is the conjugation of K: check on w 1
        }
        let w_unit = linalg::mat_vec(f, &self.wmul, &self.unit)?;
        let tau_w = self.tau_vec(&w_unit)?;
        let conj_w = self.k2.conj2(&[f.zero(), f.one()])?;
        // conj(w) = conj_w[0] 1 + conj_w[1] w in B
        let mut expect = linalg::scale_vec(f, &conj_w[0], &self.unit)?;
        expect = linalg::add_vec(f, &expect, &linalg::scale_vec(f, &conj_w[1], &w_unit)?)?;
        if !eq_vec(f, &tau_w, &expect) {
            return Err(Error::VerificationFailed(
                "tau does not restrict to the conjugation of K".into(),
            ));
        }
        Ok(())
    }
}

/// B = Mat_3(K) with the Gamma-hermitian involution
/// tau(x) = Gamma^-1 conj(x)^T Gamma.
pub fn mat3_system(field: &Field, k2: &EtaleAlgebra, gamma: [Scalar; 3]) -> Result<InvolutorialSystem> {
    let f = field.clone();
    if k2.rank() != 2 || k2.field() != &f {
        return Err(Error::FieldMismatch);
    }
    for g in &gamma {
        if f.is_zero(g) {
            return Err(Error::ZeroGamma);
        }
    }
    let bdim = 18;
    let idx = |r: usize, c: usize, s: usize| (3 * r + c) * 2 + s;
    let kt = k2.mul_table();
    let mut mul = vec![vec![linalg::zero_vector(&f, bdim); bdim]; bdim];
    for a in 0..3 {
        for b in 0..3 {
            for s in 0..2 {
                for c in 0..3 {
                    for d in 0..3 {
                        for t in 0..2 {
                            if b != c {
                                continue;
                            }
                            let prod = &kt[s][t];
                            let mut v = linalg::zero_vector(&f, bdim);
                            for m in 0..2 {
                                v[idx(a, d, m)] = prod[m].clone();
                            }
                            mul[idx(a, b, s)][idx(c, d, t)] = v;
                        }
                    }
                }
            }
        }
    }
    let mut unit = linalg::zero_vector(&f, bdim);
    for r in 0..3 {
        unit[idx(r, r, 0)] = f.one();
    }
    // tau
    let mut tau = vec![vec![f.zero(); bdim]; bdim];
    for r in 0..3 {
        for c in 0..3 {
            let scale = f.div(&gamma[r], &gamma[c])?;
            for s in 0..2 {
                let conj_s = k2.conj2(&linalg::basis_vector(&f, 2, s))?;
                for m in 0..2 {
                    if f.is_zero(&conj_s[m]) {
                        continue;
                    }
                    tau[idx(c, r, m)][idx(r, c, s)] = f.mul(&scale, &conj_s[m])?;
                }
            }
        }
    }
    // w action
    let mut wmul = vec![vec![f.zero(); bdim]; bdim];
    for r in 0..3 {
        for c in 0..3 {
            for s in 0..2 {
                let prod = &kt[1][s];
                for m in 0..2 {
                    if f.is_zero(&prod[m]) {
                        continue;
                    }
                    wmul[idx(r, c, m)][idx(r, c, s)] = prod[m].clone();
                }
            }
        }
    }
    // symbolic norm: det over K of the variable matrix
    let entries: Vec<Vec<Vec<MPoly>>> = (0..3)
        .map(|r| {
            (0..3)
                .map(|c| vec![MPoly::var(&f, idx(r, c, 0)), MPoly::var(&f, idx(r, c, 1))])
                .collect()
        })
        .collect();
    let det = alg_det3(&f, kt, &entries)?;
    let norm_k = [det[0].cubic_part(), det[1].cubic_part()];
    let mut trace_k = [linalg::zero_vector(&f, bdim), linalg::zero_vector(&f, bdim)];
    for r in 0..3 {
        for (s, tk) in trace_k.iter_mut().enumerate() {
            tk[idx(r, r, s)] = f.one();
        }
    }
    finish_system(f, k2.clone(), bdim, mul, unit, tau, wmul, norm_k, trace_k, SysKind::Mat3 { gamma })
}

/// B = E (x) K for a cubic etale algebra E over the base field, with
/// tau = id_E (x) conj_K.
pub fn etale_system(field: &Field, k2: &EtaleAlgebra, e3: &EtaleAlgebra) -> Result<InvolutorialSystem> {
    let f = field.clone();
    if k2.rank() != 2 || e3.rank() != 3 || k2.field() != &f || e3.field() != &f {
        return Err(Error::FieldMismatch);
    }
    let bdim = 6;
    let idx = |i: usize, s: usize| i * 2 + s;
    let kt = k2.mul_table();
    let et = e3.mul_table();
    let mut mul = vec![vec![linalg::zero_vector(&f, bdim); bdim]; bdim];
    for i in 0..3 {
        for s in 0..2 {
            for j in 0..3 {
                for t in 0..2 {
                    let mut v = linalg::zero_vector(&f, bdim);
                    for m in 0..3 {
                        for u in 0..2 {
                            let c = f.mul(&et[i][j][m], &kt[s][t][u])?;
                            if f.is_zero(&c) {
                                continue;
                            }
                            v[idx(m, u)] = f.add(&v[idx(m, u)], &c)?;
                        }
                    }
                    mul[idx(i, s)][idx(j, t)] = v;
                }
            }
        }
    }
    let mut unit = linalg::zero_vector(&f, bdim);
    unit[idx(0, 0)] = f.one();
    let mut tau = vec![vec![f.zero(); bdim]; bdim];
    for i in 0..3 {
        for s in 0..2 {
            let conj_s = k2.conj2(&linalg::basis_vector(&f, 2, s))?;
            for m in 0..2 {
                if f.is_zero(&conj_s[m]) {
                    continue;
                }
                tau[idx(i, m)][idx(i, s)] = conj_s[m].clone();
            }
        }
    }
    let mut wmul = vec![vec![f.zero(); bdim]; bdim];
    for i in 0..3 {
        for s in 0..2 {
            let prod = &kt[1][s];
            for m in 0..2 {
                if f.is_zero(&prod[m]) {
                    continue;
                }
                wmul[idx(i, m)][idx(i, s)] = prod[m].clone();
            }
        }
    }
    // K-valued regular representation: L[m][c] component u = sum_i
    // et[i][c][m] x_{i,u}
    let mut entries: Vec<Vec<Vec<MPoly>>> = vec![vec![vec![]; 3]; 3];
    for m in 0..3 {
        for c in 0..3 {
            let mut comps = vec![MPoly::zero(&f), MPoly::zero(&f)];
            for i in 0..3 {
                let sc = &et[i][c][m];
                if f.is_zero(sc) {
                    continue;
                }
                for (u, comp) in comps.iter_mut().enumerate() {
                    *comp = comp.add(&MPoly::var(&f, idx(i, u)).scale(sc)?)?;
                }
            }
            entries[m][c] = comps;
        }
    }
    let det = alg_det3(&f, kt, &entries)?;
    let norm_k = [det[0].cubic_part(), det[1].cubic_part()];
    // trace: sum of diagonal entries of L
    let mut trace_k = [linalg::zero_vector(&f, bdim), linalg::zero_vector(&f, bdim)];
    for m in 0..3 {
        for i in 0..3 {
            let sc = &et[i][m][m];
            if f.is_zero(sc) {
                continue;
            }
            for (u, tk) in trace_k.iter_mut().enumerate() {
                tk[idx(i, u)] = f.add(&tk[idx(i, u)], sc)?;
            }
        }
    }
    finish_system(
        f,
        k2.clone(),
        bdim,
        mul,
        unit,
        tau,
        wmul,
        norm_k,
        trace_k,
        SysKind::EtaleOverK { e3: e3.clone() },
    )
}

#[allow(clippy::too_many_arguments)]
fn finish_system(
    field: Field,
    k2: EtaleAlgebra,
    bdim: usize,
    mul: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    tau: linalg::Matrix,
    wmul: linalg::Matrix,
    norm_k: [CubicTable; 2],
    trace_k: [Vec<Scalar>; 2],
    kind: SysKind,
) -> Result<InvolutorialSystem> {
    // H = ker(tau - id)
    let f = field.clone();
    let mut m = tau.clone();
    for i in 0..bdim {
        m[i][i] = f.sub(&m[i][i], &f.one())?;
    }
    let h_basis = linalg::kernel(&f, &m)?;
    let sys = InvolutorialSystem {
        field,
        k2,
        bdim,
        mul,
        unit,
        tau,
        wmul,
        norm_k,
        trace_k,
        h_basis,
        kind,
    };
    sys.check()?;
    Ok(sys)
}

// ----------------------------------------------------------------------
// symbolic helpers over K
// ----------------------------------------------------------------------

fn subst_cubic(f: &Field, table: &CubicTable, at: &[MPoly]) -> Result<MPoly> {
    let mut acc = MPoly::zero(f);
    for (i, j, l, c) in table {
        let t = at[*i].mul(&at[*j])?.mul(&at[*l])?;
        acc = acc.add(&t.scale(c)?)?;
    }
    Ok(acc)
}

fn subst_linear(f: &Field, v: &[Scalar], at: &[MPoly]) -> Result<MPoly> {
    let mut acc = MPoly::zero(f);
    for (i, c) in v.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        acc = acc.add(&at[i].scale(c)?)?;
    }
    Ok(acc)
}

fn subst_quad(f: &Field, table: &[(usize, usize, Scalar)], at: &[MPoly]) -> Result<MPoly> {
    let mut acc = MPoly::zero(f);
    for (i, j, c) in table {
        acc = acc.add(&at[*i].mul(&at[*j])?.scale(c)?)?;
    }
    Ok(acc)
}

/// Multiply a symbolic B-vector by a symbolic K-scalar (a, b) = a + b w.
fn kscale_sym(
    f: &Field,
    wmul: &linalg::Matrix,
    kappa: &[MPoly; 2],
    x: &[MPoly],
) -> Result<Vec<MPoly>> {
    let n = x.len();
    let mut out = vec![MPoly::zero(f); n];
    for m in 0..n {
        out[m] = out[m].add(&kappa[0].mul(&x[m])?)?;
    }
    // w part: kappa_1 * (wmul x)
    for m in 0..n {
        let mut wx = MPoly::zero(f);
        for (mp, xp) in x.iter().enumerate() {
            let c = &wmul[m][mp];
            if f.is_zero(c) {
                continue;
            }
            wx = wx.add(&xp.scale(c)?)?;
        }
        out[m] = out[m].add(&kappa[1].mul(&wx)?)?;
    }
    Ok(out)
}

fn mat_apply_sym(f: &Field, m: &linalg::Matrix, x: &[MPoly]) -> Result<Vec<MPoly>> {
    let mut out = vec![MPoly::zero(f); m.len()];
    for (r, row) in m.iter().enumerate() {
        for (c, xp) in x.iter().enumerate() {
            let s = &row[c];
            if f.is_zero(s) {
                continue;
            }
            out[r] = out[r].add(&xp.scale(s)?)?;
        }
    }
    Ok(out)
}

fn const_vec_sym(f: &Field, v: &[Scalar]) -> Vec<MPoly> {
    v.iter().map(|c| MPoly::constant(f, c.clone())).collect()
}

// ----------------------------------------------------------------------
// the construction
// ----------------------------------------------------------------------

/// Second Tits construction J(sys, p, mu); `p` in B-coordinates with
/// tau(p) = p, `mu` in K-coordinates, subject to N_B(p) = n_K(mu).
pub fn tits2(sys: &InvolutorialSystem, p: &[Scalar], mu: &[Scalar]) -> Result<CubicJordan> {
    let f = sys.field.clone();
    if p.len() != sys.bdim || mu.len() != 2 {
        return Err(Error::DimensionMismatch { expected: sys.bdim, got: p.len() });
    }
    if !eq_vec(&f, &sys.tau_vec(p)?, p) {
        return Err(Error::VerificationFailed("p is not tau-symmetric".into()));
    }
    // invertibility of p in B
    let np = sys.norm_k_of(p)?;
    if !f.is_zero(&np[1]) {
        return Err(Error::VerificationFailed("N_B(p) is not in the base field".into()));
    }
    if f.is_zero(&np[0]) {
        return Err(Error::NonInvertibleP);
    }
    // admissibility N_B(p) = n_K(mu)
    let nk = sys.k_norm(mu)?;
    if !f.is_zero(&nk[1]) {
        return Err(Error::VerificationFailed("n_K(mu) is not in the base field".into()));
    }
    if !f.eq_within_precision(&np[0], &nk[0]) {
        return Err(Error::InadmissibleScalar);
    }
    // split K: the construction collapses to a first Tits construction
    if matches!(sys.k2.kind, EtaleKind::Split2) {
        let a = match &sys.kind {
            SysKind::Mat3 { .. } => assoc::mat3_cubic(&f)?,
            SysKind::EtaleOverK { e3 } => assoc::etale_cubic(e3)?,
        };
        // mu = mu[0] 1 + mu[1] w; the first split component is mu[0]
        if f.is_zero(&mu[0]) {
            return Err(Error::ZeroMu);
        }
        return constructions::tits1(&a, &mu[0]);
    }

    let h = sys.h_basis.len();
    let bd = sys.bdim;
    let dim = h + bd;
    // symbolic coordinates: 0..h for H, h..h+bd for the B summand
    let x0: Vec<MPoly> = {
        let mut v = vec![MPoly::zero(&f); bd];
        for (i, hb) in sys.h_basis.iter().enumerate() {
            for (m, c) in hb.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                v[m] = v[m].add(&MPoly::var(&f, i).scale(c)?)?;
            }
        }
        v
    };
    let u: Vec<MPoly> = (0..bd).map(|m| MPoly::var(&f, h + m)).collect();
    let mu_conj = sys.k2.conj2(mu)?;
    let p_inv = {
        // solve p y = 1 in B
        let mut lp = vec![linalg::zero_vector(&f, bd); bd];
        for col in 0..bd {
            let v = sys.mul_vec(p, &linalg::basis_vector(&f, bd, col))?;
            for (r, val) in v.into_iter().enumerate() {
                lp[r][col] = val;
            }
        }
        linalg::solve(&f, &lp, &sys.unit)?.ok_or(Error::NonInvertibleP)?
    };

    // K-valued trace and S tables for B-sharp
    let unit_b = sys.unit.clone();
    let (t0, s0) = derive_t_s(&f, bd, &sys.norm_k[0], &unit_b)?;
    let (t1, s1) = derive_t_s(&f, bd, &sys.norm_k[1], &unit_b)?;
    let sharp_b_sym = |y: &[MPoly]| -> Result<Vec<MPoly>> {
        let y2 = alg_mul(&f, &sys.mul, y, y)?;
        let t_k = [subst_linear(&f, &t0, y)?, subst_linear(&f, &t1, y)?];
        let s_k = [subst_quad(&f, &s0, y)?, subst_quad(&f, &s1, y)?];
        let ty = kscale_sym(&f, &sys.wmul, &t_k, y)?;
        let s_unit = kscale_sym(&f, &sys.wmul, &s_k, &const_vec_sym(&f, &unit_b))?;
        let mut out = Vec::with_capacity(bd);
        for m in 0..bd {
            out.push(y2[m].sub(&ty[m])?.add(&s_unit[m])?);
        }
        Ok(out)
    };

    // q_p(u) = u p tau(u)
    let up = alg_mul(&f, &sys.mul, &u, &const_vec_sym(&f, p))?;
    let tau_u = mat_apply_sym(&f, &sys.tau, &u)?;
    let q_p = alg_mul(&f, &sys.mul, &up, &tau_u)?;

    // ---- norm table ----
    let mut norm_map: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    // N_H(x_0): component 1 must vanish identically
    let n0 = subst_cubic(&f, &sys.norm_k[0], &x0)?;
    let n1 = subst_cubic(&f, &sys.norm_k[1], &x0)?;
    if !n1.is_zero() {
        return Err(Error::VerificationFailed("N_B on H has a w-component".into()));
    }
    for (i, j, l, c) in n0.cubic_part() {
        push_cubic(&f, &mut norm_map, [i, j, l], c)?;
    }
    // t_K(mu N_B(u))
    let nb_u = [
        subst_cubic(&f, &sys.norm_k[0], &u)?,
        subst_cubic(&f, &sys.norm_k[1], &u)?,
    ];
    let kt = sys.k2.mul_table();
    let k_mul_sym = |a: &[MPoly; 2], b: &[MPoly; 2]| -> Result<[MPoly; 2]> {
        let mut out = [MPoly::zero(&f), MPoly::zero(&f)];
        for s in 0..2 {
            for t in 0..2 {
                let prod = a[s].mul(&b[t])?;
                for m in 0..2 {
                    let c = &kt[s][t][m];
                    if f.is_zero(c) {
                        continue;
                    }
                    out[m] = out[m].add(&prod.scale(c)?)?;
                }
            }
        }
        Ok(out)
    };
    let mu_sym = [
        MPoly::constant(&f, mu[0].clone()),
        MPoly::constant(&f, mu[1].clone()),
    ];
    let mu_nb = k_mul_sym(&mu_sym, &nb_u)?;
    // t_K(kappa) = kappa + conj(kappa)
    let conj_mat = {
        // conj on K coordinates as a 2x2 matrix
        let c0 = sys.k2.conj2(&linalg::basis_vector(&f, 2, 0))?;
        let c1 = sys.k2.conj2(&linalg::basis_vector(&f, 2, 1))?;
        vec![vec![c0[0].clone(), c1[0].clone()], vec![c0[1].clone(), c1[1].clone()]]
    };
    let mu_nb_conj = [
        mu_nb[0].scale(&conj_mat[0][0])?.add(&mu_nb[1].scale(&conj_mat[0][1])?)?,
        mu_nb[0].scale(&conj_mat[1][0])?.add(&mu_nb[1].scale(&conj_mat[1][1])?)?,
    ];
    let tk = [
        mu_nb[0].add(&mu_nb_conj[0])?,
        mu_nb[1].add(&mu_nb_conj[1])?,
    ];
    if !tk[1].is_zero() {
        return Err(Error::VerificationFailed("t_K has a w-component".into()));
    }
    for (i, j, l, c) in tk[0].cubic_part() {
        push_cubic(&f, &mut norm_map, [i, j, l], c)?;
    }
    // - T_H(x_0, u p tau(u)) = - T_B(x_0 q_p(u)), component 0
    let x0_qp = alg_mul(&f, &sys.mul, &x0, &q_p)?;
    let t_term = [
        subst_linear(&f, &sys.trace_k[0], &x0_qp)?,
        subst_linear(&f, &sys.trace_k[1], &x0_qp)?,
    ];
    if !t_term[1].is_zero() {
        return Err(Error::VerificationFailed("T_B(x0 u p tau(u)) has a w-component".into()));
    }
    for (i, j, l, c) in t_term[0].cubic_part() {
        push_cubic(&f, &mut norm_map, [i, j, l], f.neg(&c))?;
    }
    let norm = finish_cubic(&f, norm_map);

    // ---- sharp table ----
    // H block: x_0# - u p tau(u), resolved in H coordinates
    let x0_sharp = sharp_b_sym(&x0)?;
    let mut h_block: Vec<MPoly> = Vec::with_capacity(bd);
    for m in 0..bd {
        h_block.push(x0_sharp[m].sub(&q_p[m])?);
    }
    // collect per-monomial coefficient vectors and resolve against h_basis
    let mut h_coords: Vec<BTreeMap<(usize, usize), Scalar>> = vec![BTreeMap::new(); h];
    {
        let mut mono_coeffs: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (m, poly) in h_block.iter().enumerate() {
            for (i, j, c) in poly.quadratic_part() {
                let key = (i, j);
                let entry = mono_coeffs
                    .entry(key)
                    .or_insert_with(|| linalg::zero_vector(&f, bd));
                entry[m] = f.add(&entry[m], &c)?;
            }
        }
        for ((i, j), coeff_vec) in mono_coeffs {
            let coords = linalg::coordinates_in(&f, &sys.h_basis, &coeff_vec)?
                .ok_or_else(|| {
                    Error::VerificationFailed("sharp does not preserve H".into())
                })?;
            for (hidx, c) in coords.into_iter().enumerate() {
                push_quad(&f, &mut h_coords[hidx], i, j, c)?;
            }
        }
    }
    // B block: conj(mu) tau(u#) p^-1 - x_0 u
    let u_sharp = sharp_b_sym(&u)?;
    let tau_usharp = mat_apply_sym(&f, &sys.tau, &u_sharp)?;
    let tu_pinv = alg_mul(&f, &sys.mul, &tau_usharp, &const_vec_sym(&f, &p_inv))?;
    let muc_sym = [
        MPoly::constant(&f, mu_conj[0].clone()),
        MPoly::constant(&f, mu_conj[1].clone()),
    ];
    let first = kscale_sym(&f, &sys.wmul, &muc_sym, &tu_pinv)?;
    let x0u = alg_mul(&f, &sys.mul, &x0, &u)?;
    let mut sharp: QuadTable = Vec::with_capacity(dim);
    for tab in h_coords {
        sharp.push(finish_quad(&f, tab));
    }
    for m in 0..bd {
        let poly = first[m].sub(&x0u[m])?;
        let mut tab = BTreeMap::new();
        for (i, j, c) in poly.quadratic_part() {
            push_quad(&f, &mut tab, i, j, c)?;
        }
        sharp.push(finish_quad(&f, tab));
    }

    // ---- bilinear trace ----
    let mut tb = vec![vec![f.zero(); dim]; dim];
    for i in 0..h {
        for j in 0..h {
            let prod = sys.mul_vec(&sys.h_basis[i], &sys.h_basis[j])?;
            let t = sys.trace_k_of(&prod)?;
            if !f.is_zero(&t[1]) {
                return Err(Error::VerificationFailed("T_H has a w-component".into()));
            }
            tb[i][j] = t[0].clone();
        }
    }
    for i in 0..bd {
        let ei = linalg::basis_vector(&f, bd, i);
        let ei_p = sys.mul_vec(&ei, p)?;
        for j in 0..bd {
            let ej = linalg::basis_vector(&f, bd, j);
            let t1v = sys.trace_k_of(&sys.mul_vec(&ei_p, &sys.tau_vec(&ej)?)?)?;
            let ej_p = sys.mul_vec(&ej, p)?;
            let t2v = sys.trace_k_of(&sys.mul_vec(&ej_p, &sys.tau_vec(&ei)?)?)?;
            let sum0 = f.add(&t1v[0], &t2v[0])?;
            let sum1 = f.add(&t1v[1], &t2v[1])?;
            if !f.is_zero(&sum1) {
                return Err(Error::VerificationFailed(
                    "B-block trace has a w-component".into(),
                ));
            }
            tb[h + i][h + j] = sum0;
        }
    }

    // ---- unit ----
    let unit_h = linalg::coordinates_in(&f, &sys.h_basis, &sys.unit)?
        .ok_or_else(|| Error::VerificationFailed("unit not in H".into()))?;
    let mut unit = linalg::zero_vector(&f, dim);
    for (i, c) in unit_h.into_iter().enumerate() {
        unit[i] = c;
    }

    CubicJordan::from_tables(
        f,
        dim,
        unit,
        norm,
        sharp,
        tb,
        Provenance::Tits2 {
            system: Arc::new(sys.clone()),
            p: p.to_vec(),
            mu: mu.to_vec(),
        },
    )
}
