//! Dense exact linear algebra over a [`Field`]: just enough Gaussian
//! elimination for determinants, inverses, solving, and kernels of the
//! small matrices that show up in algebra constructions.
//!
//! Over Laurent fields, pivots are chosen with minimal valuation so that
//! elimination never divides by a high-valuation entry unnecessarily.

use crate::error::Result;
use crate::fields::{Field, Scalar};

pub type Vector = Vec<Scalar>;
pub type Matrix = Vec<Vec<Scalar>>;

pub fn zero_vector(f: &Field, n: usize) -> Vector {
    vec![f.zero(); n]
}

pub fn basis_vector(f: &Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(f, n);
    v[i] = f.one();
    v
}

pub fn identity(f: &Field, n: usize) -> Matrix {
    (0..n).map(|i| basis_vector(f, n, i)).collect()
}

pub fn add_vec(f: &Field, a: &[Scalar], b: &[Scalar]) -> Result<Vector> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub_vec(f: &Field, a: &[Scalar], b: &[Scalar]) -> Result<Vector> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn scale_vec(f: &Field, c: &Scalar, a: &[Scalar]) -> Result<Vector> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

pub fn is_zero_vec(f: &Field, a: &[Scalar]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

/// Matrix times column vector; rows index the output.
pub fn mat_vec(f: &Field, m: &[Vec<Scalar>], v: &[Scalar]) -> Result<Vector> {
    let mut out = Vec::with_capacity(m.len());
    for row in m {
        let mut acc = f.zero();
        for (a, x) in row.iter().zip(v) {
            if f.is_zero(a) || f.is_zero(x) {
                continue;
            }
            acc = f.add(&acc, &f.mul(a, x)?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn mat_mul(f: &Field, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Matrix> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![f.zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if f.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                if f.is_zero(&b[l][j]) {
                    continue;
                }
                let t = f.mul(&a[i][l], &b[l][j])?;
                out[i][j] = f.add(&out[i][j], &t)?;
            }
        }
    }
    Ok(out)
}

pub fn transpose(m: &[Vec<Scalar>]) -> Matrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Pick the pivot row for a column: over Laurent fields the nonzero entry of
/// minimal valuation, otherwise the first nonzero entry.
fn pick_pivot(f: &Field, rows: &[Vec<Scalar>], col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, i64)> = None;
    for (r, row) in rows.iter().enumerate().skip(from) {
        if f.is_zero(&row[col]) {
            continue;
        }
        let val = f.laurent_val(&row[col]).ok().flatten().unwrap_or(0);
        match best {
            None => best = Some((r, val)),
            Some((_, bv)) if val < bv => best = Some((r, val)),
            _ => {}
        }
        if val == 0 && !matches!(f.laurent_val(&row[col]), Ok(Some(_))) {
            // not a Laurent field: first nonzero is fine
            return Some(r);
        }
    }
    best.map(|(r, _)| r)
}

/// Determinant. Over Laurent fields small matrices are expanded without
/// division (Gaussian pivots would turn exact windows into truncated series
/// and cancellations could exhaust the precision); everything else uses
/// Gaussian elimination.
pub fn det(f: &Field, m: &[Vec<Scalar>]) -> Result<Scalar> {
    if f.laurent_precision().is_some() && m.len() <= 12 {
        return det_division_free(f, m);
    }
    det_gauss(f, m)
}

/// Laplace expansion with dynamic programming over column subsets; no
/// divisions, exponential in the dimension, fine below a dozen rows.
pub fn det_division_free(f: &Field, m: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = m.len();
    if n == 0 {
        return Ok(f.one());
    }
    // minors[mask] = det of rows 0..k over column set `mask` (popcount k)
    let mut minors: Vec<Option<Scalar>> = vec![None; 1 << n];
    minors[0] = Some(f.one());
    for mask in 1usize..(1 << n) {
        let k = (mask as u32).count_ones() as usize;
        let row = k - 1;
        let mut acc = f.zero();
        let mut sign_pos = true;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let sub = minors[mask ^ (1 << col)].clone().expect("filled in order");
            if !f.is_zero(&m[row][col]) {
                let term = f.mul(&m[row][col], &sub)?;
                acc = if sign_pos { f.add(&acc, &term)? } else { f.sub(&acc, &term)? };
            }
            sign_pos = !sign_pos;
        }
        minors[mask] = Some(acc);
    }
    Ok(minors[(1 << n) - 1].clone().unwrap())
}

fn det_gauss(f: &Field, m: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut acc = f.one();
    let mut sign = false;
    for col in 0..n {
        let piv = match pick_pivot(f, &a, col, col) {
            Some(p) => p,
            None => return Ok(f.zero()),
        };
        if piv != col {
            a.swap(piv, col);
            sign = !sign;
        }
        let p = a[col][col].clone();
        acc = f.mul(&acc, &p)?;
        let pinv = f.inv(&p)?;
        for r in col + 1..n {
            if f.is_zero(&a[r][col]) {
                continue;
            }
            let factor = f.mul(&a[r][col], &pinv)?;
            for c in col..n {
                let t = f.mul(&factor, &a[col][c])?;
                a[r][c] = f.sub(&a[r][c], &t)?;
            }
        }
    }
    if sign {
        acc = f.neg(&acc);
    }
    Ok(acc)
}

/// Solve M x = b; `None` when the system is singular/inconsistent.
pub fn solve(f: &Field, m: &[Vec<Scalar>], b: &[Scalar]) -> Result<Option<Vector>> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut rhs: Vector = b.to_vec();
    for col in 0..n {
        let piv = match pick_pivot(f, &a, col, col) {
            Some(p) => p,
            None => return Ok(None),
        };
        a.swap(piv, col);
        rhs.swap(piv, col);
        let pinv = f.inv(&a[col][col])?;
        for r in 0..n {
            if r == col || f.is_zero(&a[r][col]) {
                continue;
            }
            let factor = f.mul(&a[r][col], &pinv)?;
            for c in col..n {
                let t = f.mul(&factor, &a[col][c])?;
                a[r][c] = f.sub(&a[r][c], &t)?;
            }
            let t = f.mul(&factor, &rhs[col])?;
            rhs[r] = f.sub(&rhs[r], &t)?;
        }
    }
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        x.push(f.div(&rhs[i], &a[i][i])?);
    }
    Ok(Some(x))
}

pub fn inverse(f: &Field, m: &[Vec<Scalar>]) -> Result<Option<Matrix>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        match solve(f, m, &basis_vector(f, n, j))? {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(transpose(&cols)))
}

/// Basis of the kernel of M (as column vectors).
pub fn kernel(f: &Field, m: &[Vec<Scalar>]) -> Result<Vec<Vector>> {
    if m.is_empty() {
        return Ok(vec![]);
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Matrix = m.to_vec();
    let mut pivot_col_of_row = vec![usize::MAX; rows];
    let mut r = 0;
    for c in 0..cols {
        // find a pivot in column c at/below row r
        let mut piv = None;
        for rr in r..rows {
            if !f.is_zero(&a[rr][c]) {
                let val = f.laurent_val(&a[rr][c]).ok().flatten().unwrap_or(0);
                match piv {
                    None => piv = Some((rr, val)),
                    Some((_, bv)) if val < bv => piv = Some((rr, val)),
                    _ => {}
                }
            }
        }
        let Some((piv, _)) = piv else { continue };
        a.swap(piv, r);
        let pinv = f.inv(&a[r][c])?;
        for rr in 0..rows {
            if rr == r || f.is_zero(&a[rr][c]) {
                continue;
            }
            let factor = f.mul(&a[rr][c], &pinv)?;
            for cc in 0..cols {
                let t = f.mul(&factor, &a[r][cc])?;
                a[rr][cc] = f.sub(&a[rr][cc], &t)?;
            }
        }
        // normalize pivot row
        let prow: Result<Vec<Scalar>> = a[r].iter().map(|x| f.mul(x, &pinv)).collect();
        a[r] = prow?;
        pivot_col_of_row[r] = c;
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> =
        pivot_col_of_row.iter().copied().filter(|&c| c != usize::MAX).collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = zero_vector(f, cols);
        v[free] = f.one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            if pc == usize::MAX {
                continue;
            }
            v[pc] = f.neg(&a[row][free]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Express `v` in terms of the given (independent) column vectors, if
/// possible: returns x with basis * x = v.
pub fn coordinates_in(f: &Field, basis: &[Vector], v: &[Scalar]) -> Result<Option<Vector>> {
    let n = v.len();
    let k = basis.len();
    // solve the (possibly rectangular) system by augmenting to square via
    // least-norm pivoting on rows; at desk scale just run elimination on the
    // n x k system.
    let mut a: Matrix = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let mut rhs: Vector = v.to_vec();
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut row = 0;
    for col in 0..k {
        let mut piv = None;
        for rr in row..n {
            if !f.is_zero(&a[rr][col]) {
                let val = f.laurent_val(&a[rr][col]).ok().flatten().unwrap_or(0);
                match piv {
                    None => piv = Some((rr, val)),
                    Some((_, bv)) if val < bv => piv = Some((rr, val)),
                    _ => {}
                }
            }
        }
        let Some((piv, _)) = piv else { continue };
        a.swap(piv, row);
        rhs.swap(piv, row);
        let pinv = f.inv(&a[row][col])?;
        for rr in 0..n {
            if rr == row || f.is_zero(&a[rr][col]) {
                continue;
            }
            let factor = f.mul(&a[rr][col], &pinv)?;
            for cc in 0..k {
                let t = f.mul(&factor, &a[row][cc])?;
                a[rr][cc] = f.sub(&a[rr][cc], &t)?;
            }
            let t = f.mul(&factor, &rhs[row])?;
            rhs[rr] = f.sub(&rhs[rr], &t)?;
        }
        pivots.push((row, col));
        row += 1;
        if row == n {
            break;
        }
    }
    let mut x = zero_vector(f, k);
    for &(r, c) in &pivots {
        x[c] = f.div(&rhs[r], &a[r][c])?;
    }
    // consistency check
    let mut recon = zero_vector(f, n);
    for (j, b) in basis.iter().enumerate() {
        if f.is_zero(&x[j]) {
            continue;
        }
        recon = add_vec(f, &recon, &scale_vec(f, &x[j], b)?)?;
    }
    if recon
        .iter()
        .zip(v)
        .all(|(a, b)| a == b)
    {
        Ok(Some(x))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse_over_f7() {
        let f = Field::parse("Fp:7").unwrap();
        let m = vec![
            vec![f.int(1), f.int(2)],
            vec![f.int(3), f.int(4)],
        ];
        let d = det(&f, &m).unwrap();
        assert_eq!(d, f.int(-2));
        let inv = inverse(&f, &m).unwrap().unwrap();
        let prod = mat_mul(&f, &m, &inv).unwrap();
        assert_eq!(prod, identity(&f, 2));
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let f = Field::parse("Fp:5").unwrap();
        let m = vec![
            vec![f.int(1), f.int(2), f.int(3)],
            vec![f.int(2), f.int(4), f.int(6)],
        ];
        let k = kernel(&f, &m).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&f, &mat_vec(&f, &m, v).unwrap()));
        }
    }

    #[test]
    fn solve_consistency() {
        let f = Field::rationals();
        let m = vec![
            vec![f.int(2), f.int(1)],
            vec![f.int(1), f.int(3)],
        ];
        let b = vec![f.int(5), f.int(10)];
        let x = solve(&f, &m, &b).unwrap().unwrap();
        assert_eq!(mat_vec(&f, &m, &x).unwrap(), b);
    }
}
