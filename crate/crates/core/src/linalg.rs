//! Dense linear algebra over a table-driven finite field.

use crate::error::{GeomError, Result};
use crate::gf::Field;

pub type Matrix = Vec<Vec<u32>>;

/// Reduced row echelon form with zero rows dropped. Returns the pivot columns.
pub fn rref(f: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = f.inv_nz(rows[r][c]);
        if s != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, s);
            }
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = f.neg(rows[i][c]);
                for j in c..ncols {
                    let t = f.mul(m, rows[r][j]);
                    rows[i][j] = f.add(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : rows · x = 0}` for vectors `x` of length `ncols`.
pub fn nullspace(f: &Field, rows: &[Vec<u32>], ncols: usize) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u32; ncols];
        x[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = f.neg(m[r][free]);
        }
        basis.push(x);
    }
    basis
}

/// Row vector times matrix.
pub fn vec_mat(f: &Field, v: &[u32], m: &[Vec<u32>]) -> Vec<u32> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = vec![0u32; ncols];
    for (i, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(&m[i]) {
            *o = f.add(*o, f.mul(x, y));
        }
    }
    out
}

/// Matrix times column vector.
pub fn mat_vec(f: &Field, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}

pub fn mat_mul(f: &Field, a: &[Vec<u32>], b: &[Vec<u32>]) -> Matrix {
    a.iter().map(|row| vec_mat(f, row, b)).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

pub fn mat_add(f: &Field, a: &[Vec<u32>], b: &[Vec<u32>]) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(&s, &t)| f.add(s, t)).collect())
        .collect()
}

pub fn mat_scale(f: &Field, c: u32, a: &[Vec<u32>]) -> Matrix {
    a.iter().map(|r| r.iter().map(|&x| f.mul(c, x)).collect()).collect()
}

pub fn mat_inv(f: &Field, m: &[Vec<u32>]) -> Result<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(GeomError::Degenerate("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det3(f: &Field, m: &[[u32; 3]; 3]) -> u32 {
    let t = |a: u32, b: u32, c: u32| f.mul(a, f.mul(b, c));
    let pos = f.add(
        f.add(t(m[0][0], m[1][1], m[2][2]), t(m[0][1], m[1][2], m[2][0])),
        t(m[0][2], m[1][0], m[2][1]),
    );
    let neg = f.add(
        f.add(t(m[0][2], m[1][1], m[2][0]), t(m[0][0], m[1][2], m[2][1])),
        t(m[0][1], m[1][0], m[2][2]),
    );
    f.sub(pos, neg)
}

pub fn cross(f: &Field, a: &[u32], b: &[u32]) -> [u32; 3] {
    let d = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    [d(1, 2), d(2, 0), d(0, 1)]
}

pub fn dot(f: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_orthogonal_and_complementary() {
        let f = Field::prime(5).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 0]];
        let ns = nullspace(&f, &rows, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                assert_eq!(dot(&f, r, x), 0);
            }
        }
        assert_eq!(rank(&f, &ns), 2);
    }

    #[test]
    fn inverse_round_trips() {
        let f = Field::prime(7).unwrap();
        let m = vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]];
        let inv = mat_inv(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(3));
        assert!(mat_inv(&f, &[vec![1, 2], vec![2, 4]]).is_err());
    }
}
