//! Dense exact linear algebra over a [`Field`].
//!
//! Elimination is fraction-free (Bareiss): every intermediate entry is a
//! minor of the input, so integral input over `Q` stays integral until the
//! final normalisation step.

use crate::field::Field;

pub type Mat<E> = Vec<Vec<E>>;

/// Row echelon data: reduced rows and the pivot column of each row.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub rref: Mat<E>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    vec![vec![field.zero(); cols]; rows]
}

pub fn identity<F: Field>(field: &F, n: usize) -> Mat<F::Elem> {
    let mut m = zeros(field, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

pub fn transpose<E: Clone>(m: &Mat<E>, cols: usize) -> Mat<E> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<F: Field>(field: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![field.zero(); cols];
            for (k, a_ik) in row.iter().enumerate().take(inner) {
                if field.is_zero(a_ik) {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    if !field.is_zero(&b[k][j]) {
                        *o = field.add(o, &field.mul(a_ik, &b[k][j]));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec<F: Field>(field: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(field.zero(), |acc, (x, y)| {
                if field.is_zero(x) || field.is_zero(y) {
                    acc
                } else {
                    field.add(&acc, &field.mul(x, y))
                }
            })
        })
        .collect()
}

pub fn is_zero_matrix<F: Field>(field: &F, m: &Mat<F::Elem>) -> bool {
    m.iter().all(|r| r.iter().all(|x| field.is_zero(x)))
}

/// Fraction-free forward elimination followed by normalisation to reduced
/// row echelon form.
pub fn echelon<F: Field>(field: &F, m: &Mat<F::Elem>, cols: usize) -> Echelon<F::Elem> {
    let mut a: Mat<F::Elem> = m.clone();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = field.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, pr);
        let piv = a[r][c].clone();
        for i in (r + 1)..rows {
            let factor = a[i][c].clone();
            for j in c..cols {
                let v = field.sub(&field.mul(&piv, &a[i][j]), &field.mul(&factor, &a[r][j]));
                a[i][j] = field.div(&v, &prev).expect("Bareiss pivot is nonzero");
            }
        }
        // Entries left of the pivot in lower rows are already zero; rows
        // above are untouched, so their minors stay consistent.
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    // Normalise and back-substitute.
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = field.inv(&a[i][c]).expect("pivot is nonzero");
        for j in c..cols {
            a[i][j] = field.mul(&a[i][j], &inv);
        }
        for k in 0..i {
            let factor = a[k][c].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let v = field.mul(&factor, &a[i][j]);
                a[k][j] = field.sub(&a[k][j], &v);
            }
        }
    }
    Echelon {
        rref: a,
        pivots,
        cols,
    }
}

pub fn rank<F: Field>(field: &F, m: &Mat<F::Elem>, cols: usize) -> usize {
    echelon(field, m, cols).rank()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Mat<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let ech = echelon(field, m, cols);
    let mut is_pivot = vec![None; cols];
    for (i, &c) in ech.pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    (0..cols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut x = vec![field.zero(); cols];
            x[f] = field.one();
            for (i, &c) in ech.pivots.iter().enumerate() {
                x[c] = field.neg(&ech.rref[i][f]);
            }
            x
        })
        .collect()
}

/// One solution of `m x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(
    field: &F,
    m: &Mat<F::Elem>,
    b: &[F::Elem],
    cols: usize,
) -> Option<Vec<F::Elem>> {
    let aug: Mat<F::Elem> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let ech = echelon(field, &aug, cols + 1);
    if ech.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (i, &c) in ech.pivots.iter().enumerate() {
        x[c] = ech.rref[i][cols].clone();
    }
    Some(x)
}

/// Determinant by Bareiss elimination.
pub fn determinant<F: Field>(field: &F, m: &Mat<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = field.one();
    let mut sign = false;
    for k in 0..n {
        let Some(pr) = (k..n).find(|&i| !field.is_zero(&a[i][k])) else {
            return field.zero();
        };
        if pr != k {
            a.swap(pr, k);
            sign = !sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = field.sub(&field.mul(&a[k][k], &a[i][j]), &field.mul(&a[i][k], &a[k][j]));
                a[i][j] = field.div(&v, &prev).expect("nonzero pivot");
            }
            a[i][k] = field.zero();
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { field.one() } else { a[n - 1][n - 1].clone() };
    if sign {
        field.neg(&d)
    } else {
        d
    }
}

pub fn inverse<F: Field>(field: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    let n = m.len();
    let aug: Mat<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let ech = echelon(field, &aug, 2 * n);
    if ech.rank() < n || ech.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(ech.rref.iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer helpers for lattice vectors.
pub mod int {
    use num_integer::Integer;

    pub fn gcd_vec(v: &[i64]) -> i64 {
        v.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn quad_form(gram: &[Vec<i64>], v: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                s += v[i] * g * v[j];
            }
        }
        s
    }

    pub fn bilinear(gram: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                s += u[i] * g * v[j];
            }
        }
        s
    }

    pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        m.iter().map(|r| dot(r, v)).collect()
    }

    pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|r| {
                (0..cols)
                    .map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Mat<num_rational::BigRational> {
        let f = Rationals;
        rows.iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_and_rank_over_q() {
        let f = Rationals;
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&f, &m, 3), 2);
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&f, &m, &k[0]).iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn determinant_matches_cofactor() {
        let f = Rationals;
        let m = q(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(determinant(&f, &m), f.from_i64(4));
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&f, &m), f.from_i64(-1));
    }

    #[test]
    fn inverse_and_solve_mod_p() {
        let f = PrimeField::new(5).unwrap();
        let m = vec![vec![1, 1], vec![0, 2]];
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(&f, 2));
        let x = solve(&f, &m, &[3, 4], 2).unwrap();
        assert_eq!(mat_vec(&f, &m, &x), vec![3, 4]);
        let sing = vec![vec![1, 2], vec![2, 4]];
        assert!(inverse(&f, &sing).is_none());
        assert!(solve(&f, &sing, &[1, 0], 2).is_none());
    }
}
