//! Small exact linear algebra over the rationals.
//!
//! Matrices are dense row-major `Vec<Vec<BigRational>>`. Sizes here are tiny
//! (Čech complexes over a handful of rays), so plain Gaussian elimination is
//! the right tool.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rank of a matrix, computed by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for col in 0..ncols {
        // partial pivot by largest absolute value keeps entries tame
        let pivot = (r..nrows)
            .filter(|&i| !m[i][col].is_zero())
            .max_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()));
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        let inv = m[r][col].clone();
        for i in (r + 1)..nrows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &inv;
            for c in col..ncols {
                let sub = &f * &m[r][c];
                m[i][c] -= sub;
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Integer-matrix rank by fraction-free (Bareiss) elimination; `None`
/// when an intermediate value would overflow `i128`. Entries of the
/// Čech incidence matrices are tiny, so this is the common fast path.
pub fn rank_i64(rows: &[Vec<i64>]) -> Option<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Some(0);
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut denom: i128 = 1;
    let mut r = 0;
    for col in 0..ncols {
        let piv = (r..nrows).find(|&i| m[i][col] != 0);
        let Some(p) = piv else { continue };
        m.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (col + 1)..ncols {
                let t1 = m[i][j].checked_mul(m[r][col])?;
                let t2 = m[i][col].checked_mul(m[r][j])?;
                m[i][j] = t1.checked_sub(t2)? / denom;
            }
            m[i][col] = 0;
        }
        denom = m[r][col];
        r += 1;
        if r == nrows {
            break;
        }
    }
    Some(r)
}

/// Exact rank of an integer matrix: Bareiss when it fits, rationals
/// otherwise.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    if let Some(r) = rank_i64(rows) {
        return r;
    }
    let rat_rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    rank(&rat_rows)
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    // reduced row echelon
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let pivot = (r..nrows).find(|&i| !m[i][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        let inv = m[r][col].clone();
        for c in 0..ncols {
            m[r][c] = &m[r][c] / &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..ncols {
                    let sub = &f * &m[r][c];
                    m[i][c] -= sub;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == nrows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for &(pr, pc) in &pivots {
            v[pc] = -m[pr][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn rank_basic() {
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&mat(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn kernel_dimensions() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let k = kernel_basis(&m, 3);
        assert_eq!(k.len(), 1);
        // check M k = 0
        for row in &m {
            let dot: Rat = row
                .iter()
                .zip(&k[0])
                .map(|(a, b)| a * b)
                .fold(Rat::zero(), |s, t| s + t);
            assert!(dot.is_zero());
        }
        assert_eq!(kernel_basis(&mat(&[&[1, 0], &[0, 1]]), 2).len(), 0);
    }
}
