//! The table-building constructors: Hermitian 3x3 algebras over a conic
//! coefficient algebra, plus-algebras of associative cubic algebras, the
//! first Tits construction, and isotopes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::comp_alg::ConicAlgebra;
use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::linalg;

use super::{
    finish_cubic, finish_quad, push_cubic, push_quad, AssocCubic, CubicJordan, Provenance,
    QuadTable,
};

/// Her_3(C, Gamma): coordinates (xi_1, xi_2, xi_3, u_1, u_2, u_3) with u_i
/// running through C, on the cyclic convention that (i, j, l) ranges over
/// cyclic permutations of (1, 2, 3):
///
///   N(x)  = xi_1 xi_2 xi_3 - sum gamma_j gamma_l xi_i n_C(u_i)
///           + gamma_1 gamma_2 gamma_3 t_C(u_1 u_2 u_3)
///   x#    = sum (xi_j xi_l - gamma_j gamma_l n_C(u_i)) e_ii
///           + (-xi_i u_i + gamma_i conj(u_j u_l)) [jl]
///   T(x,y) = sum (xi_i eta_i + gamma_j gamma_l n_C(u_i, v_i))
pub fn her3(c: &ConicAlgebra, gamma: [Scalar; 3]) -> Result<CubicJordan> {
    let f = c.field().clone();
    for g in &gamma {
        if f.is_zero(g) {
            return Err(Error::ZeroGamma);
        }
    }
    let cd = c.dim();
    let dim = 3 + 3 * cd;
    let block = |i: usize, a: usize| 3 + i * cd + a;
    let cyclic: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    let nc = c.norm_form();
    let g_pair = |j: usize, l: usize| f.mul(&gamma[j], &gamma[l]);

    // norm
    let mut norm_map: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    push_cubic(&f, &mut norm_map, [0, 1, 2], f.one())?;
    for &(i, j, l) in &cyclic {
        let coeff = f.neg(&g_pair(j, l)?);
        for a in 0..cd {
            for b in a..cd {
                let nab = nc.coeff(a, b);
                if f.is_zero(nab) {
                    continue;
                }
                push_cubic(
                    &f,
                    &mut norm_map,
                    [i, block(i, a), block(i, b)],
                    f.mul(&coeff, nab)?,
                )?;
            }
        }
    }
    let g123 = f.mul(&gamma[0], &g_pair(1, 2)?)?;
    for a in 0..cd {
        let ea = linalg::basis_vector(&f, cd, a);
        for b in 0..cd {
            let eb = linalg::basis_vector(&f, cd, b);
            let ab = c.mul_vec(&ea, &eb)?;
            for d in 0..cd {
                let ed = linalg::basis_vector(&f, cd, d);
                let abd = c.mul_vec(&ab, &ed)?;
                let t = c.trace_of(&abd)?;
                if f.is_zero(&t) {
                    continue;
                }
                push_cubic(
                    &f,
                    &mut norm_map,
                    [block(0, a), block(1, b), block(2, d)],
                    f.mul(&g123, &t)?,
                )?;
            }
        }
    }
    let norm = finish_cubic(&f, norm_map);

    // sharp
    let mut sharp: QuadTable = Vec::with_capacity(dim);
    for &(i, j, l) in &cyclic {
        // diagonal coordinate i: xi_j xi_l - gamma_j gamma_l n_C(u_i)
        let mut tab = BTreeMap::new();
        push_quad(&f, &mut tab, j, l, f.one())?;
        let coeff = f.neg(&g_pair(j, l)?);
        for a in 0..cd {
            for b in a..cd {
                let nab = nc.coeff(a, b);
                if f.is_zero(nab) {
                    continue;
                }
                push_quad(&f, &mut tab, block(i, a), block(i, b), f.mul(&coeff, nab)?)?;
            }
        }
        sharp.push(finish_quad(&f, tab));
    }
    // off-diagonal block i, coordinate m: -xi_i u_i[m] + gamma_i conj(u_j u_l)[m]
    let mut block_tabs: Vec<BTreeMap<(usize, usize), Scalar>> =
        vec![BTreeMap::new(); 3 * cd];
    for &(i, j, l) in &cyclic {
        for m in 0..cd {
            push_quad(&f, &mut block_tabs[i * cd + m], i, block(i, m), f.int(-1))?;
        }
        for a in 0..cd {
            let ea = linalg::basis_vector(&f, cd, a);
            for b in 0..cd {
                let eb = linalg::basis_vector(&f, cd, b);
                let prod = c.conj_vec(&c.mul_vec(&ea, &eb)?)?;
                for (m, s) in prod.iter().enumerate() {
                    if f.is_zero(s) {
                        continue;
                    }
                    push_quad(
                        &f,
                        &mut block_tabs[i * cd + m],
                        block(j, a),
                        block(l, b),
                        f.mul(&gamma[i], s)?,
                    )?;
                }
            }
        }
    }
    for tab in block_tabs {
        sharp.push(finish_quad(&f, tab));
    }

    // bilinear trace
    let mut tb = vec![vec![f.zero(); dim]; dim];
    for i in 0..3 {
        tb[i][i] = f.one();
    }
    let polar = nc.polar_matrix()?;
    for &(i, j, l) in &cyclic {
        let coeff = g_pair(j, l)?;
        for a in 0..cd {
            for b in 0..cd {
                if f.is_zero(&polar[a][b]) {
                    continue;
                }
                tb[block(i, a)][block(i, b)] = f.mul(&coeff, &polar[a][b])?;
            }
        }
    }

    let mut unit = linalg::zero_vector(&f, dim);
    for i in 0..3 {
        unit[i] = f.one();
    }
    CubicJordan::from_tables(
        f,
        dim,
        unit,
        norm,
        sharp,
        tb,
        Provenance::Her3 { conic: Arc::new(c.clone()), gamma },
    )
}

/// A^(+): the Jordan algebra on an associative cubic algebra, with the same
/// norm, adjoint, and bilinear trace.
pub fn plus_algebra(a: &AssocCubic) -> Result<CubicJordan> {
    CubicJordan::from_tables(
        a.field().clone(),
        a.dim(),
        a.unit().to_vec(),
        a.norm_table().clone(),
        a.sharp_table().clone(),
        a.trace_gram().clone(),
        Provenance::Plus { algebra: Arc::new(a.clone()) },
    )
}

/// First Tits construction J(A, mu) on A + A j_1 + A j_2:
///
///   N(x)  = N_A(x_0) + mu N_A(x_1) + mu^2 N_A(x_2) - mu T_A(x_0 x_1 x_2)
///   x#    = (x_0# - mu x_1 x_2) + (mu x_2# - x_0 x_1) j_1
///           + (x_1# - x_2 x_0) j_2
///   T(x,y) = T_A(x_0 y_0) + mu T_A(x_1 y_2) + mu T_A(x_2 y_1)
pub fn tits1(a: &AssocCubic, mu: &Scalar) -> Result<CubicJordan> {
    let f = a.field().clone();
    if f.is_zero(mu) {
        return Err(Error::ZeroMu);
    }
    if !a.is_regular()? {
        return Err(Error::NonRegularA);
    }
    let d = a.dim();
    let dim = 3 * d;
    let block = |b: usize, i: usize| b * d + i;
    let mu2 = f.mul(mu, mu)?;

    // norm
    let mut norm_map: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for (b, scale) in [(0usize, f.one()), (1, mu.clone()), (2, mu2.clone())] {
        for (i, j, l, c) in a.norm_table() {
            push_cubic(
                &f,
                &mut norm_map,
                [block(b, *i), block(b, *j), block(b, *l)],
                f.mul(&scale, c)?,
            )?;
        }
    }
    let neg_mu = f.neg(mu);
    for i in 0..d {
        let ei = linalg::basis_vector(&f, d, i);
        for j in 0..d {
            let ej = linalg::basis_vector(&f, d, j);
            let eij = a.mul_vec(&ei, &ej)?;
            for l in 0..d {
                let el = linalg::basis_vector(&f, d, l);
                let prod = a.mul_vec(&eij, &el)?;
                let t = a.trace_of(&prod)?;
                if f.is_zero(&t) {
                    continue;
                }
                push_cubic(
                    &f,
                    &mut norm_map,
                    [block(0, i), block(1, j), block(2, l)],
                    f.mul(&neg_mu, &t)?,
                )?;
            }
        }
    }
    let norm = finish_cubic(&f, norm_map);

    // sharp: three blocks of output coordinates
    let mut sharp: QuadTable = Vec::with_capacity(dim);
    // helper: add "u * v" cross terms for blocks (bu, bv) into tab with
    // the multiplication order u from bu, v from bv
    let product_terms = |tabs: &mut [BTreeMap<(usize, usize), Scalar>],
                         bu: usize,
                         bv: usize,
                         scale: &Scalar|
     -> Result<()> {
        for i in 0..d {
            let ei = linalg::basis_vector(&f, d, i);
            for j in 0..d {
                let ej = linalg::basis_vector(&f, d, j);
                let prod = a.mul_vec(&ei, &ej)?;
                for (m, s) in prod.iter().enumerate() {
                    if f.is_zero(s) {
                        continue;
                    }
                    push_quad(
                        &f,
                        &mut tabs[m],
                        block(bu, i),
                        block(bv, j),
                        f.mul(scale, s)?,
                    )?;
                }
            }
        }
        Ok(())
    };
    // block 0: x_0# - mu x_1 x_2
    let mut tabs0: Vec<BTreeMap<(usize, usize), Scalar>> = vec![BTreeMap::new(); d];
    for (m, entries) in a.sharp_table().iter().enumerate() {
        for (i, j, c) in entries {
            push_quad(&f, &mut tabs0[m], block(0, *i), block(0, *j), c.clone())?;
        }
    }
    product_terms(&mut tabs0, 1, 2, &neg_mu)?;
    // block 1: mu x_2# - x_0 x_1
    let mut tabs1: Vec<BTreeMap<(usize, usize), Scalar>> = vec![BTreeMap::new(); d];
    for (m, entries) in a.sharp_table().iter().enumerate() {
        for (i, j, c) in entries {
            push_quad(&f, &mut tabs1[m], block(2, *i), block(2, *j), f.mul(mu, c)?)?;
        }
    }
    product_terms(&mut tabs1, 0, 1, &f.int(-1))?;
    // block 2: x_1# - x_2 x_0
    let mut tabs2: Vec<BTreeMap<(usize, usize), Scalar>> = vec![BTreeMap::new(); d];
    for (m, entries) in a.sharp_table().iter().enumerate() {
        for (i, j, c) in entries {
            push_quad(&f, &mut tabs2[m], block(1, *i), block(1, *j), c.clone())?;
        }
    }
    product_terms(&mut tabs2, 2, 0, &f.int(-1))?;
    for tabs in [tabs0, tabs1, tabs2] {
        for tab in tabs {
            sharp.push(finish_quad(&f, tab));
        }
    }

    // bilinear trace: T_A(x_0 y_0) + mu T_A(x_1 y_2) + mu T_A(x_2 y_1)
    let gram = a.trace_gram();
    let mut tb = vec![vec![f.zero(); dim]; dim];
    for i in 0..d {
        for j in 0..d {
            let g = &gram[i][j];
            if f.is_zero(g) {
                continue;
            }
            tb[block(0, i)][block(0, j)] = g.clone();
            let mg = f.mul(mu, g)?;
            tb[block(1, i)][block(2, j)] = mg.clone();
            tb[block(2, i)][block(1, j)] = mg;
        }
    }

    let mut unit = linalg::zero_vector(&f, dim);
    for (i, c) in a.unit().iter().enumerate() {
        unit[i] = c.clone();
    }
    CubicJordan::from_tables(
        f,
        dim,
        unit,
        norm,
        sharp,
        tb,
        Provenance::Tits1 { algebra: Arc::new(a.clone()), mu: mu.clone() },
    )
}

/// The p-isotope: N^(p) = N(p) N, x#(p) = N(p) U_{p^-1}(x#),
/// T^(p)(x, y) = T(U_p x, y), unit p^-1.
pub fn isotope(j: &CubicJordan, p: &[Scalar]) -> Result<CubicJordan> {
    let f = j.field().clone();
    let p_inv = j.invert(p)?;
    let np = j.eval_norm(p)?;
    let norm: super::CubicTable = j
        .norm_table()
        .iter()
        .map(|(a, b, c, s)| Ok((*a, *b, *c, f.mul(&np, s)?)))
        .collect::<Result<_>>()?;
    // sharp transform matrix M = N(p) U_{p^-1}
    let upinv = j.u_matrix(&p_inv)?;
    let mut m = vec![vec![f.zero(); j.dim()]; j.dim()];
    for r in 0..j.dim() {
        for c0 in 0..j.dim() {
            m[r][c0] = f.mul(&np, &upinv[r][c0])?;
        }
    }
    let mut sharp: QuadTable = Vec::with_capacity(j.dim());
    for r in 0..j.dim() {
        let mut tab = BTreeMap::new();
        for (k, entries) in j.sharp_table().iter().enumerate() {
            if f.is_zero(&m[r][k]) {
                continue;
            }
            for (i, jj, c) in entries {
                push_quad(&f, &mut tab, *i, *jj, f.mul(&m[r][k], c)?)?;
            }
        }
        sharp.push(finish_quad(&f, tab));
    }
    // T'(e_i, e_j) = T(U_p e_i, e_j)
    let up = j.u_matrix(p)?;
    let mut tb = vec![vec![f.zero(); j.dim()]; j.dim()];
    for i in 0..j.dim() {
        let upi: Vec<Scalar> = (0..j.dim()).map(|r| up[r][i].clone()).collect();
        for jj in 0..j.dim() {
            tb[i][jj] = j.t_bilinear(&upi, &linalg::basis_vector(&f, j.dim(), jj))?;
        }
    }
    CubicJordan::from_tables(
        f,
        j.dim(),
        p_inv,
        norm,
        sharp,
        tb,
        Provenance::Isotope { parent: Arc::new(j.clone()), p: p.to_vec() },
    )
}
