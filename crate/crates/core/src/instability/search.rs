//! Brute-force maximisation of `mu(X, phi)^2 / ||phi||^2` over a norm ball
//! in the cocharacter lattice.

use std::cmp::Ordering;

use num_integer::Roots;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::is_primitive;
use crate::chevalley::{LieAlgebra, LieElement, LieElementJson};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::{self, int};
use crate::rootdata::NormForm;

/// Result of a bounded optimal-cocharacter search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityReport {
    pub target: LieElementJson,
    /// `(numerator, denominator)` of the best `mu^2 / ||phi||^2`, in lowest terms.
    pub best_ratio_sq: Option<(i64, i64)>,
    /// Primitive maximizers, sorted.
    pub argmax: Vec<Vec<i64>>,
    pub bound_used: i64,
    pub points_scanned: u64,
}

impl OptimalityReport {
    pub fn ratio_string(&self) -> String {
        match self.best_ratio_sq {
            Some((n, d)) if d == 1 => n.to_string(),
            Some((n, d)) => format!("{n}/{d}"),
            None => "none".into(),
        }
    }
}

const MAX_POINTS: u64 = 200_000_000;

fn cmp_ratio(a: (i64, i64), b: (i64, i64)) -> Ordering {
    (a.0 as i128 * b.1 as i128).cmp(&(b.0 as i128 * a.1 as i128))
}

#[derive(Default)]
struct Partial {
    best: Option<(i64, i64)>,
    argmax: Vec<Vec<i64>>,
    scanned: u64,
    nonzero_in_ball: bool,
}

impl Partial {
    fn offer(&mut self, r: (i64, i64), phi: &[i64]) {
        match self.best.map(|b| cmp_ratio(r, b)) {
            None | Some(Ordering::Greater) => {
                self.best = Some(r);
                self.argmax = vec![phi.to_vec()];
            }
            Some(Ordering::Equal) => self.argmax.push(phi.to_vec()),
            Some(Ordering::Less) => {}
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.scanned += other.scanned;
        self.nonzero_in_ball |= other.nonzero_in_ball;
        if let Some(b) = other.best {
            match self.best.map(|a| cmp_ratio(b, a)) {
                None | Some(Ordering::Greater) => {
                    self.best = Some(b);
                    self.argmax = other.argmax;
                }
                Some(Ordering::Equal) => self.argmax.extend(other.argmax),
                Some(Ordering::Less) => {}
            }
        }
        self
    }
}

/// Per-coordinate box containing the ellipsoid `phi^T G phi <= bound`:
/// `|phi_i| <= sqrt(bound * (G^{-1})_{ii})`.
pub fn search_box(norm: &NormForm, bound: i64) -> Vec<i64> {
    let q = Rationals;
    let g: Vec<Vec<BigRational>> = norm.gram.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
    let inv = linalg::inverse(&q, &g).expect("positive definite norm");
    (0..g.len())
        .map(|i| {
            let v = (&inv[i][i] * q.from_i64(bound)).floor().to_integer();
            v.to_i64().expect("box fits in i64").max(0).sqrt()
        })
        .collect()
}

/// Exhaustive scan of primitive `phi` with `||phi||^2 <= bound` and
/// `mu(X, phi) >= 1`, without the nilpotency precondition.
pub fn torus_scan<F: Field>(
    alg: &LieAlgebra<F>,
    x: &LieElement<F::Elem>,
    norm: &NormForm,
    bound: i64,
) -> Result<OptimalityReport> {
    alg.check_parent(x)?;
    if alg.is_zero(x) {
        return Err(Error::ZeroElement);
    }
    if bound <= 0 {
        return Err(Error::Config(format!("search bound must be positive, got {bound}")));
    }
    let f = &alg.field;
    let t = alg.torus_rank();
    let cartan_part = x.coords[..t].iter().any(|c| !f.is_zero(c));
    let support: Vec<&Vec<i64>> = (0..alg.datum.num_roots())
        .filter(|&a| !f.is_zero(&x.coords[alg.root_basis(a)]))
        .map(|a| &alg.datum.roots[a])
        .collect();
    let bx = search_box(norm, bound);
    let total: u64 = bx.iter().map(|&b| (2 * b + 1) as u64).product();
    if total > MAX_POINTS {
        return Err(Error::guard("instability", format!("search box has {total} points")));
    }
    let first: Vec<i64> = (-bx[0]..=bx[0]).collect();
    let result = first
        .par_iter()
        .map(|&c0| {
            let mut part = Partial::default();
            let mut phi = vec![0i64; t];
            phi[0] = c0;
            for (i, b) in bx.iter().enumerate().skip(1) {
                phi[i] = -b;
            }
            loop {
                part.scanned += 1;
                let n2 = norm.norm_sq(&phi);
                if n2 > 0 && n2 <= bound {
                    part.nonzero_in_ball = true;
                    if !cartan_part && is_primitive(&phi) {
                        let m = support.iter().map(|r| int::dot(r, &phi)).min().unwrap_or(0);
                        if m >= 1 {
                            part.offer(reduce(m * m, n2), &phi);
                        }
                    }
                }
                // odometer over coordinates 1..t
                let mut i = t;
                loop {
                    if i == 1 {
                        return part;
                    }
                    i -= 1;
                    if phi[i] < bx[i] {
                        phi[i] += 1;
                        break;
                    }
                    phi[i] = -bx[i];
                }
            }
        })
        .reduce(Partial::default, Partial::merge);
    if !result.nonzero_in_ball {
        return Err(Error::EmptySearchRegion(bound.to_string()));
    }
    let mut argmax = result.argmax;
    argmax.sort();
    Ok(OptimalityReport {
        target: alg.to_json(x),
        best_ratio_sq: result.best,
        argmax,
        bound_used: bound,
        points_scanned: result.scanned,
    })
}

/// All nonzero lattice points with `phi^T G phi <= bound` satisfying `keep`.
pub(crate) fn ball_points(norm: &NormForm, bound: i64, keep: impl Fn(&[i64]) -> bool) -> Result<Vec<Vec<i64>>> {
    let bx = search_box(norm, bound);
    let total: u64 = bx.iter().map(|&b| (2 * b + 1) as u64).product();
    if total > MAX_POINTS {
        return Err(Error::guard("instability", format!("search box has {total} points")));
    }
    let t = bx.len();
    let mut phi: Vec<i64> = bx.iter().map(|b| -b).collect();
    let mut out = Vec::new();
    loop {
        let n2 = norm.norm_sq(&phi);
        if n2 > 0 && n2 <= bound && keep(&phi) {
            out.push(phi.clone());
        }
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if phi[i] < bx[i] {
                phi[i] += 1;
                break;
            }
            phi[i] = -bx[i];
        }
    }
}

fn reduce(n: i64, d: i64) -> (i64, i64) {
    let g = num_integer::gcd(n, d);
    (n / g, d / g)
}

/// Optimal-cocharacter search for a nonzero nilpotent `X`.
pub fn optimal_search<F: Field>(
    alg: &LieAlgebra<F>,
    x: &LieElement<F::Elem>,
    norm: &NormForm,
    bound: i64,
) -> Result<OptimalityReport> {
    alg.check_parent(x)?;
    if alg.is_zero(x) {
        return Err(Error::ZeroElement);
    }
    if !alg.is_nilpotent(x)? {
        return Err(Error::NotNilpotent);
    }
    torus_scan(alg, x, norm, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use std::sync::Arc;

    #[test]
    fn sl2_regular_oracle() {
        let d = Arc::new(RootDatum::simply_connected("A1").unwrap());
        let l = LieAlgebra::new(d.clone(), Rationals);
        let e = l.root_vector(0);
        let r = optimal_search(&l, &e, &d.default_norm(), 100).unwrap();
        assert_eq!(r.argmax, vec![vec![1]]);
        assert_eq!(r.best_ratio_sq, Some((1, 2)));
        // oracle: m in [-10, 10], mu(e, m a^vee) = 2m, ||m a^vee||^2 = 8 m^2
        let mut best = (0i64, 1i64);
        let mut arg = vec![];
        for m in -10i64..=10 {
            if m == 0 || 2 * m < 1 || 8 * m * m > 100 || m.abs() != 1 {
                continue;
            }
            let rr = reduce(4 * m * m, 8 * m * m);
            if cmp_ratio(rr, best) == Ordering::Greater {
                best = rr;
                arg = vec![vec![m]];
            }
        }
        assert_eq!(r.best_ratio_sq, Some(best));
        assert_eq!(r.argmax, arg);
    }

    #[test]
    fn semisimple_input() {
        let d = Arc::new(RootDatum::simply_connected("A1").unwrap());
        let l = LieAlgebra::new(d.clone(), Rationals);
        let x = l.add(&l.root_vector(0), &l.root_vector(1)).unwrap();
        assert_eq!(optimal_search(&l, &x, &d.default_norm(), 100), Err(Error::NotNilpotent));
        let r = torus_scan(&l, &x, &d.default_norm(), 100).unwrap();
        assert!(r.argmax.is_empty());
        assert_eq!(r.best_ratio_sq, None);
    }

    #[test]
    fn empty_region() {
        let d = Arc::new(RootDatum::simply_connected("A1").unwrap());
        let l = LieAlgebra::new(d.clone(), Rationals);
        assert!(matches!(
            optimal_search(&l, &l.root_vector(0), &d.default_norm(), 7),
            Err(Error::EmptySearchRegion(_))
        ));
    }
}
