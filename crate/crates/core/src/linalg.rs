//! Exact linear algebra over fields and integral domains.

use num_traits::{One, Zero};

use crate::arith::{primitive, Field, Rational, Ring};

/// Reduces `m` (rows × `ncols`) to reduced row echelon form in place and
/// returns the pivot columns in increasing order.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for c in col..ncols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                let v = m[row][c].clone();
                m[r][c] = m[r][c].clone() - factor.clone() * v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>], ncols: usize) -> usize {
    let mut work = m.to_vec();
    rref(&mut work, ncols).len()
}

/// Kernel basis of `m`, one vector per free column. The vector for free
/// column `f` has a 1 in position `f` and zeros in every other free column.
pub fn exact_nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Bareiss fraction-free elimination; every division is exact
/// in an integral domain.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return R::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * pivot.clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.exact_div(&prev).expect("Bareiss step must divide exactly");
            }
            m[i][k] = R::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Bareiss determinant of a small integer matrix.
pub fn int_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank over Q of integer row vectors.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][col] == 0 {
                continue;
            }
            let (pv, f) = (a[rank][col], a[r][col]);
            for c in col..ncols {
                a[r][c] = a[r][c] * pv - a[rank][c] * f;
            }
            let g = a[r].iter().fold(0i128, |g, &x| gcd128(g, x));
            if g > 1 {
                a[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Generalized cross product of `k - 1` vectors in Z^k: the vector `n`
/// with `n · w = det[rows; w]` for every `w`.
pub fn generalized_cross(rows: &[Vec<i64>]) -> Vec<i64> {
    let k = rows.len() + 1;
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if (k - 1 + j).is_multiple_of(2) { 1 } else { -1 };
            (sign * int_det(&minor)) as i64
        })
        .collect()
}

/// Primitive integer basis of the kernel of an integer matrix.
pub fn int_nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let m: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    exact_nullspace(&m, ncols)
        .into_iter()
        .map(|v| {
            let l = crate::arith::denominator_lcm(v.iter());
            let ints: Vec<i64> = v
                .iter()
                .map(|q| {
                    let x = (q * Rational::from_integer(l.clone())).to_integer();
                    i64::try_from(x).expect("kernel entry exceeds i64")
                })
                .collect();
            primitive(&ints)
        })
        .collect()
}

/// Inverse of an integer matrix with determinant ±1.
pub fn int_inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let det = int_det(m);
    if det.abs() != 1 {
        return None;
    }
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().map(|&x| Rational::from_integer(x.into())).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    rref(&mut aug, 2 * n);
    Some(
        aug.iter()
            .map(|r| r[n..].iter().map(|q| i64::try_from(q.to_integer()).expect("inverse entry exceeds i64")).collect())
            .collect(),
    )
}
