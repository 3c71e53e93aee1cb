//! Exact integer and rational linear algebra used by the lattice code.
//!
//! Everything here works on `BigInt`/`BigRational`; no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn z_identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn to_zmat(m: &[Vec<i64>]) -> ZMat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_qmat(m: &ZMat) -> QMat {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

pub fn z_mul(a: &ZMat, b: &ZMat) -> ZMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn q_mul(a: &QMat, b: &QMat) -> QMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &ZMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn q_inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m.to_vec();
    let mut inv: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        inv.swap(p, c);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                    let t = &f * &inv[c][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Rank over Q of a rational matrix (rows are vectors).
pub fn q_rank(m: &QMat) -> usize {
    let mut a: QMat = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for r in rank + 1..rows {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let t = &f * &a[rank][j];
                    a[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Smith normal form `u * m * v = d` with `d` diagonal, nonnegative and in
/// divisibility order. `v_inv` is the inverse of `v`.
pub struct Smith {
    pub u: ZMat,
    pub v: ZMat,
    pub v_inv: ZMat,
    pub diag: Vec<BigInt>,
}

pub fn smith(m: &ZMat) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = z_identity(rows);
    let mut v = z_identity(cols);
    let mut v_inv = z_identity(cols);

    // column op: col_j += f * col_i ; v_inv: row_i -= f * row_j
    fn col_add(a: &mut ZMat, v: &mut ZMat, v_inv: &mut ZMat, j: usize, i: usize, f: &BigInt) {
        for r in a.iter_mut() {
            let t = &r[i] * f;
            r[j] += t;
        }
        for r in v.iter_mut() {
            let t = &r[i] * f;
            r[j] += t;
        }
        let (ri, rj) = (v_inv[j].clone(), i);
        for (k, x) in ri.iter().enumerate() {
            let t = x * f;
            v_inv[rj][k] -= t;
        }
    }
    fn col_swap(a: &mut ZMat, v: &mut ZMat, v_inv: &mut ZMat, i: usize, j: usize) {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        for r in v.iter_mut() {
            r.swap(i, j);
        }
        v_inv.swap(i, j);
    }
    fn col_neg(a: &mut ZMat, v: &mut ZMat, v_inv: &mut ZMat, i: usize) {
        for r in a.iter_mut() {
            r[i] = -r[i].clone();
        }
        for r in v.iter_mut() {
            r[i] = -r[i].clone();
        }
        for x in v_inv[i].iter_mut() {
            *x = -x.clone();
        }
    }
    fn row_add(a: &mut ZMat, u: &mut ZMat, j: usize, i: usize, f: &BigInt) {
        let ri = a[i].clone();
        for (k, x) in ri.iter().enumerate() {
            let t = x * f;
            a[j][k] += t;
        }
        let ui = u[i].clone();
        for (k, x) in ui.iter().enumerate() {
            let t = x * f;
            u[j][k] += t;
        }
    }

    let steps = rows.min(cols);
    let mut k = 0;
    while k < steps {
        // pivot of minimal absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(pi, k);
        u.swap(pi, k);
        col_swap(&mut a, &mut v, &mut v_inv, pj, k);

        let mut clean = true;
        for i in k + 1..rows {
            if !a[i][k].is_zero() {
                let q = a[i][k].div_floor(&a[k][k]);
                row_add(&mut a, &mut u, i, k, &-q);
                if !a[i][k].is_zero() {
                    clean = false;
                }
            }
        }
        for j in k + 1..cols {
            if !a[k][j].is_zero() {
                let q = a[k][j].div_floor(&a[k][k]);
                col_add(&mut a, &mut v, &mut v_inv, j, k, &-q);
                if !a[k][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        let mut bad_row = None;
        'outer: for i in k + 1..rows {
            for j in k + 1..cols {
                if !a[i][j].is_multiple_of(&a[k][k]) {
                    bad_row = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad_row {
            row_add(&mut a, &mut u, k, i, &BigInt::one());
            continue;
        }
        if a[k][k].is_negative() {
            col_neg(&mut a, &mut v, &mut v_inv, k);
        }
        k += 1;
    }
    let diag = (0..steps).map(|i| a[i][i].clone()).collect();
    Smith { u, v, v_inv, diag }
}

/// A Z-basis (as rows) of the module spanned by the given integer rows.
pub fn row_basis(gens: &ZMat) -> ZMat {
    let mut a: ZMat = gens
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        loop {
            let mut piv: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && piv.is_none_or(|p| a[i][c].abs() < a[p][c].abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            a.swap(p, r);
            let mut done = true;
            for i in r + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pr = a[r].clone();
                    for (j, x) in pr.iter().enumerate() {
                        let t = x * &q;
                        a[i][j] -= t;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                r += 1;
                break;
            }
        }
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    a
}

/// Basis (rows) of the integer kernel `{x : m x = 0}`. The result is
/// automatically a saturated sublattice of `Z^n`.
pub fn integer_kernel(m: &ZMat, n: usize) -> ZMat {
    if m.is_empty() {
        return z_identity(n);
    }
    let s = smith(m);
    let rank = s.diag.iter().filter(|d| !d.is_zero()).count();
    (rank..n)
        .map(|j| s.v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Integral LLL reduction of a positive definite Gram matrix (delta = 3/4).
///
/// Returns `(t, reduced)` where the rows of `t` express the reduced basis in
/// the old one and `reduced = t * gram * t^T`.
pub fn lll_gram(gram: &ZMat) -> (ZMat, ZMat) {
    let n = gram.len();
    let mut g = gram.clone();
    let mut h = z_identity(n);
    if n <= 1 {
        return (h, g);
    }
    let mut lam: ZMat = vec![vec![BigInt::zero(); n]; n];
    // d[0] = 1, d[i+1] = det of the leading (i+1)-block
    let mut d: Vec<BigInt> = vec![BigInt::one(); n + 1];

    fn reduce(k: usize, l: usize, g: &mut ZMat, h: &mut ZMat, lam: &mut ZMat, d: &[BigInt]) {
        let two_l: BigInt = &lam[k][l] * 2;
        if two_l.abs() > d[l + 1] {
            // q = round(lam / d)
            let q = (&two_l + &d[l + 1]).div_floor(&(&d[l + 1] * 2));
            let hl = h[l].clone();
            for (j, x) in hl.iter().enumerate() {
                let t = x * &q;
                h[k][j] -= t;
            }
            // b_k -= q b_l in the Gram matrix
            let n = g.len();
            let gl = g[l].clone();
            for j in 0..n {
                let t = &gl[j] * &q;
                g[k][j] -= t;
            }
            for i in 0..n {
                let t = &g[i][l] * &q;
                g[i][k] -= t;
            }
            lam[k][l] -= &q * &d[l + 1];
            for i in 0..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    }

    let incremental = |k: usize, g: &ZMat, lam: &mut ZMat, d: &mut Vec<BigInt>| {
        for j in 0..=k {
            let mut u = g[k][j].clone();
            for i in 0..j {
                u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
            }
            if j < k {
                lam[k][j] = u;
            } else {
                assert!(!u.is_zero(), "lll_gram: Gram matrix is degenerate");
                d[k + 1] = u;
            }
        }
    };

    incremental(0, &g, &mut lam, &mut d);
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            incremental(k, &g, &mut lam, &mut d);
        }
        reduce(k, k - 1, &mut g, &mut h, &mut lam, &d);
        // Lovasz: 4 d_{k+1} d_{k-1} < 3 d_k^2 - 4 lam^2  (1-based shifted)
        let lhs = &d[k + 1] * &d[k - 1] * 4;
        let rhs = &d[k] * &d[k] * 3 - &lam[k][k - 1] * &lam[k][k - 1] * 4;
        if lhs < rhs {
            h.swap(k, k - 1);
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            for j in 0..k.saturating_sub(1) {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = b;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                reduce(k, l, &mut g, &mut h, &mut lam, &d);
            }
            k += 1;
        }
    }
    (h, g)
}
