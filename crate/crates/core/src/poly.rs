//! Dense univariate polynomials over a [`Field`], coefficients low degree first.

use crate::field::Field;
use crate::linalg::{self, Mat};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }
}

pub fn normalize<F: Field>(f: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while p.coeffs.last().is_some_and(|c| f.is_zero(c)) {
        p.coeffs.pop();
    }
    p
}

pub fn from_coeffs<F: Field>(f: &F, coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
    normalize(f, Poly { coeffs })
}

pub fn add<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let z = f.zero();
    let c = (0..n)
        .map(|i| f.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
        .collect();
    from_coeffs(f, c)
}

pub fn sub<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let z = f.zero();
    let c = (0..n)
        .map(|i| f.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
        .collect();
    from_coeffs(f, c)
}

pub fn mul<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return Poly { coeffs: vec![] };
    }
    let mut c = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            c[i + j] = f.add(&c[i + j], &f.mul(x, y));
        }
    }
    from_coeffs(f, c)
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let db = b.degree().expect("division by zero polynomial");
    let lead_inv = f.inv(&b.coeffs[db]).expect("normalized leading coefficient");
    let mut r = a.coeffs.clone();
    if r.len() <= db {
        return (Poly { coeffs: vec![] }, normalize(f, Poly { coeffs: r }));
    }
    let mut q = vec![f.zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(&r[k + db], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
        }
        q[k] = c;
    }
    r.truncate(db);
    (from_coeffs(f, q), from_coeffs(f, r))
}

pub fn monic<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    match a.coeffs.last() {
        None => a.clone(),
        Some(l) => {
            let li = f.inv(l).expect("nonzero leading coefficient");
            Poly {
                coeffs: a.coeffs.iter().map(|c| f.mul(c, &li)).collect(),
            }
        }
    }
}

pub fn gcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while y.degree().is_some() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    let c = a
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    from_coeffs(f, c)
}

/// Product of the distinct monic irreducible factors of `a` (perfect fields only).
pub fn radical<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    let a = monic(f, a);
    match a.degree() {
        None | Some(0) => return Poly { coeffs: vec![f.one()] },
        _ => {}
    }
    let da = derivative(f, &a);
    if da.degree().is_none() {
        // a(x) = b(x^p) = (b^{1/p}(x))^p
        let p = f.characteristic() as usize;
        let root: Vec<F::Elem> = a.coeffs.iter().step_by(p).map(|c| f.pth_root(c)).collect();
        return radical(f, &from_coeffs(f, root));
    }
    let g = gcd(f, &a, &da);
    let (r, _) = divrem(f, &a, &g);
    let r = monic(f, &r);
    let rg = radical(f, &g);
    let common = gcd(f, &rg, &r);
    let (extra, _) = divrem(f, &rg, &common);
    monic(f, &mul(f, &r, &extra))
}

pub fn is_squarefree<F: Field>(f: &F, a: &Poly<F::Elem>) -> bool {
    radical(f, a).degree() == monic(f, a).degree()
}

/// Evaluate at a square matrix by Horner's rule.
pub fn eval_matrix<F: Field>(f: &F, a: &Poly<F::Elem>, m: &Mat<F::Elem>) -> Mat<F::Elem> {
    let n = m.len();
    let mut acc = linalg::zeros(f, n, n);
    for c in a.coeffs.iter().rev() {
        acc = linalg::mat_mul(f, &acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = f.add(&row[i], c);
        }
    }
    acc
}

/// Minimal polynomial of a square matrix via the Krylov sequence of its powers.
pub fn minimal_polynomial<F: Field>(f: &F, m: &Mat<F::Elem>) -> Poly<F::Elem> {
    let n = m.len();
    let flat = |x: &Mat<F::Elem>| -> Vec<F::Elem> { x.iter().flatten().cloned().collect() };
    let mut powers = vec![flat(&linalg::identity(f, n))];
    let mut cur = linalg::identity(f, n);
    loop {
        cur = linalg::mat_mul(f, &cur, m);
        let target = flat(&cur);
        let k = powers.len();
        // columns are previous powers
        let sys: Mat<F::Elem> = (0..n * n).map(|r| powers.iter().map(|p| p[r].clone()).collect()).collect();
        if let Some(c) = linalg::solve(f, &sys, &target, k) {
            let mut coeffs: Vec<F::Elem> = c.iter().map(|x| f.neg(x)).collect();
            coeffs.push(f.one());
            return from_coeffs(f, coeffs);
        }
        powers.push(target);
    }
}
