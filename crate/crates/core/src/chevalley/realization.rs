//! Defining matrix realizations of the classical algebras and of `gl_n`.
//!
//! Simple root vectors are standard elementary matrices projected into the
//! algebra `{X : X^T J + J X = 0}`; the remaining root vectors are built from
//! extraspecial brackets, so the map is a homomorphism for the Chevalley basis
//! of [`LieAlgebra`]. Everything is computed over `Q` and then reduced.

use num_rational::BigRational;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{rational_into, Field, Rationals};
use crate::linalg::{self, Mat};
use crate::rootdata::{Family, IsogenyFlavor, RootDatum};

type QMat = Mat<BigRational>;

/// A faithful representation `rho: g -> gl(W)` given on the Chevalley basis.
#[derive(Clone, Debug)]
pub struct Realization<F: Field> {
    pub degree: usize,
    pub rational: Vec<QMat>,
    pub matrices: Vec<Mat<F::Elem>>,
    /// `rho(e_alpha)^k / k!` for each root, reduced into the field.
    pub divided_powers: Vec<Vec<Mat<F::Elem>>>,
}

impl<F: Field> LieAlgebra<F> {
    /// Defining representation for simply connected classical types without
    /// central torus (types A-D) and for `GL_n`.
    pub fn defining_realization(&self) -> Result<Realization<F>> {
        let rational = rational_realization(&self.datum, &self.n_const)?;
        let f = &self.field;
        let degree = rational[0].len();
        let reduce = |m: &QMat| -> Result<Mat<F::Elem>> {
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            rational_into(f, x).ok_or_else(|| {
                                Error::Unsupported(format!(
                                    "realization not integral at p = {}",
                                    f.characteristic()
                                ))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let matrices = rational.iter().map(reduce).collect::<Result<Vec<_>>>()?;
        let q = Rationals;
        let t = self.datum.torus_rank;
        let mut divided_powers = Vec::with_capacity(self.datum.num_roots());
        for a in 0..self.datum.num_roots() {
            let e = &rational[t + a];
            let mut out = vec![reduce(&linalg::identity(&q, degree))?];
            let mut cur = linalg::identity(&q, degree);
            for k in 1.. {
                cur = linalg::mat_mul(&q, &cur, e);
                let kk = q.from_i64(k);
                cur = cur.iter().map(|r| r.iter().map(|x| x / &kk).collect()).collect();
                if linalg::is_zero_matrix(&q, &cur) {
                    break;
                }
                out.push(reduce(&cur)?);
            }
            divided_powers.push(out);
        }
        Ok(Realization {
            degree,
            rational,
            matrices,
            divided_powers,
        })
    }
}

impl<F: Field> Realization<F> {
    /// `rho(x)`.
    pub fn image(&self, f: &F, coords: &[F::Elem]) -> Mat<F::Elem> {
        let mut m = linalg::zeros(f, self.degree, self.degree);
        for (c, b) in coords.iter().zip(&self.matrices) {
            if f.is_zero(c) {
                continue;
            }
            for (mr, br) in m.iter_mut().zip(b) {
                for (x, y) in mr.iter_mut().zip(br) {
                    *x = f.add(x, &f.mul(c, y));
                }
            }
        }
        m
    }

    /// Coordinates of `x` with `rho(x) = m`, if `m` lies in the image.
    pub fn preimage(&self, f: &F, m: &Mat<F::Elem>) -> Option<Vec<F::Elem>> {
        let n2 = self.degree * self.degree;
        let sys: Mat<F::Elem> = (0..n2)
            .map(|r| {
                let (i, j) = (r / self.degree, r % self.degree);
                self.matrices.iter().map(|b| b[i][j].clone()).collect()
            })
            .collect();
        let rhs: Vec<F::Elem> = m.iter().flatten().cloned().collect();
        linalg::solve(f, &sys, &rhs, self.matrices.len())
    }

    /// `x_alpha(t) = sum_k t^k rho(e_alpha)^k / k!`.
    pub fn root_group(&self, f: &F, alpha: usize, t: &F::Elem) -> Mat<F::Elem> {
        let mut out = linalg::zeros(f, self.degree, self.degree);
        let mut tk = f.one();
        for dp in &self.divided_powers[alpha] {
            for (or, dr) in out.iter_mut().zip(dp) {
                for (o, d) in or.iter_mut().zip(dr) {
                    *o = f.add(o, &f.mul(&tk, d));
                }
            }
            tk = f.mul(&tk, t);
        }
        out
    }

    /// Weights of the standard basis of `W` against a cocharacter.
    pub fn weights(&self, torus_rank: usize, phi: &[i64]) -> Vec<i64> {
        (0..self.degree)
            .map(|k| {
                let mut w = BigRational::zero();
                for (i, &c) in phi.iter().enumerate().take(torus_rank) {
                    w += &self.rational[i][k][k] * BigRational::from_integer(c.into());
                }
                w.to_integer().to_i64().expect("small weight")
            })
            .collect()
    }

    /// Torus element `phi(s)` acting diagonally on `W`.
    pub fn torus(&self, f: &F, torus_rank: usize, phi: &[i64], s: &F::Elem) -> Result<Mat<F::Elem>> {
        let s_inv = f.inv(s).ok_or(Error::DivisionByZero)?;
        let mut m = linalg::zeros(f, self.degree, self.degree);
        for (k, w) in self.weights(torus_rank, phi).into_iter().enumerate() {
            m[k][k] = if w >= 0 { f.pow(s, w as u64) } else { f.pow(&s_inv, (-w) as u64) };
        }
        Ok(m)
    }
}

fn commutator(q: &Rationals, a: &QMat, b: &QMat) -> QMat {
    let ab = linalg::mat_mul(q, a, b);
    let ba = linalg::mat_mul(q, b, a);
    ab.iter()
        .zip(&ba)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn scale(m: &QMat, c: &BigRational) -> QMat {
    m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn unit(n: usize, a: usize, b: usize) -> QMat {
    let mut m = vec![vec![BigRational::zero(); n]; n];
    m[a][b] = BigRational::one();
    m
}

/// Project `E_{ab}` into `{X : X^T J + J X = 0}`; collinear results are
/// returned unscaled.
fn project(q: &Rationals, j: &QMat, j_inv: &QMat, a: usize, b: usize) -> QMat {
    let n = j.len();
    let x = unit(n, a, b);
    let xt = unit(n, b, a);
    let corr = linalg::mat_mul(q, &linalg::mat_mul(q, j_inv, &xt), j);
    let y: QMat = x
        .iter()
        .zip(&corr)
        .map(|(r, s)| r.iter().zip(s).map(|(u, v)| u - v).collect())
        .collect();
    if y[a][b] == BigRational::from_integer(2.into()) && y.iter().flatten().filter(|v| !v.is_zero()).count() == 1 {
        x
    } else {
        y
    }
}

fn antidiagonal(n: usize, sign: impl Fn(usize) -> i64) -> QMat {
    let mut j = vec![vec![BigRational::zero(); n]; n];
    for k in 0..n {
        j[k][n - 1 - k] = BigRational::from_integer(sign(k).into());
    }
    j
}

pub(super) fn rational_realization(d: &RootDatum, n_const: &[Vec<i64>]) -> Result<Vec<QMat>> {
    let q = Rationals;
    let t = d.torus_rank;
    let nr = d.num_roots();
    let unsupported = || Error::Unsupported(format!("no defining realization for {}", d.label()));

    let mut out: Vec<Option<QMat>> = vec![None; t + nr];
    if d.flavor == IsogenyFlavor::GeneralLinear {
        let n = t;
        for (k, slot) in out.iter_mut().enumerate().take(n) {
            *slot = Some(unit(n, k, k));
        }
        for i in 0..d.rank {
            out[t + i] = Some(unit(n, i, i + 1));
            out[t + d.negative_of(i)] = Some(unit(n, i + 1, i));
        }
    } else {
        if d.flavor != IsogenyFlavor::SimplyConnected || d.central_rank != 0 || d.cartan_type.components.len() != 1 {
            return Err(unsupported());
        }
        let comp = d.cartan_type.components[0];
        let r = comp.rank;
        let (m, j, pairs): (usize, QMat, Vec<(usize, usize)>) = match comp.family {
            Family::A => {
                let m = r + 1;
                (m, QMat::new(), (0..r).map(|i| (i, i + 1)).collect())
            }
            Family::B => {
                let m = 2 * r + 1;
                let mut p: Vec<_> = (0..r - 1).map(|i| (i, i + 1)).collect();
                p.push((r - 1, r));
                (m, antidiagonal(m, |_| 1), p)
            }
            Family::C => {
                let m = 2 * r;
                let mut p: Vec<_> = (0..r - 1).map(|i| (i, i + 1)).collect();
                p.push((r - 1, r));
                (m, antidiagonal(m, |k| if k < r { 1 } else { -1 }), p)
            }
            Family::D => {
                let m = 2 * r;
                let mut p: Vec<_> = (0..r - 1).map(|i| (i, i + 1)).collect();
                p.push((r - 2, r));
                (m, antidiagonal(m, |_| 1), p)
            }
            _ => return Err(unsupported()),
        };
        let j_inv = if j.is_empty() { QMat::new() } else { linalg::inverse(&q, &j).expect("invertible form") };
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let (e, f0) = if j.is_empty() {
                (unit(m, a, b), unit(m, b, a))
            } else {
                (project(&q, &j, &j_inv, a, b), project(&q, &j, &j_inv, b, a))
            };
            let h0 = commutator(&q, &e, &f0);
            let he = commutator(&q, &h0, &e);
            // he = c e
            let (pa, pb) = (0..m)
                .flat_map(|x| (0..m).map(move |y| (x, y)))
                .find(|&(x, y)| !e[x][y].is_zero())
                .unwrap();
            let c = &he[pa][pb] / &e[pa][pb];
            let lambda = BigRational::from_integer(2.into()) / c;
            let f = scale(&f0, &lambda);
            let h = commutator(&q, &e, &f);
            out[i] = Some(h);
            out[t + i] = Some(e);
            out[t + d.negative_of(i)] = Some(f);
        }
    }

    // non-simple root vectors from extraspecial pairs
    for xi in 0..d.num_positive {
        if out[t + xi].is_some() {
            continue;
        }
        let (g, dl) = (0..xi)
            .flat_map(|a| ((a + 1)..xi).map(move |b| (a, b)))
            .find(|&(a, b)| d.sum_root(a, b) == Some(xi))
            .expect("non-simple positive root has a special pair");
        for (x, y, target) in [(g, dl, xi), (d.negative_of(g), d.negative_of(dl), d.negative_of(xi))] {
            let c = commutator(&q, out[t + x].as_ref().unwrap(), out[t + y].as_ref().unwrap());
            let nn = BigRational::from_integer(n_const[x][y].into());
            out[t + target] = Some(scale(&c, &nn.recip()));
        }
    }
    let mats: Vec<QMat> = out.into_iter().map(|m| m.expect("every basis vector realized")).collect();
    check_homomorphism(d, n_const, &mats)?;
    Ok(mats)
}

fn check_homomorphism(d: &RootDatum, n_const: &[Vec<i64>], mats: &[QMat]) -> Result<()> {
    let q = Rationals;
    let n = mats.len();
    let lie = LieAlgebra::new(Arc::new(d.clone()), Rationals);
    debug_assert_eq!(*lie.n_const, n_const);
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = commutator(&q, &mats[i], &mats[j]);
            let br = lie.bracket_coords(&basis(n, i), &basis(n, j));
            let mut rhs = linalg::zeros(&q, mats[0].len(), mats[0].len());
            for (k, c) in br.iter().enumerate() {
                if !c.is_zero() {
                    for (rr, mr) in rhs.iter_mut().zip(&mats[k]) {
                        for (x, y) in rr.iter_mut().zip(mr) {
                            *x += c * y;
                        }
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::Falsified(format!(
                    "defining realization of {} is not a homomorphism on basis pair ({i},{j})",
                    d.label()
                )));
            }
        }
    }
    // faithfulness: images linearly independent
    let flat: Mat<BigRational> = mats.iter().map(|m| m.iter().flatten().cloned().collect()).collect();
    let cols = flat[0].len();
    if linalg::rank(&q, &flat, cols) != n {
        return Err(Error::Falsified(format!("defining realization of {} is not faithful", d.label())));
    }
    Ok(())
}

fn basis(n: usize, k: usize) -> Vec<BigRational> {
    (0..n).map(|i| if i == k { BigRational::one() } else { BigRational::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn classical_realizations_exist() {
        for s in ["A1", "A3", "B2", "B3", "C2", "C3", "D4"] {
            let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected(s).unwrap()), Rationals);
            let r = l.defining_realization().unwrap();
            assert!(r.degree >= 2, "{s}");
        }
        let gl = LieAlgebra::new(Arc::new(RootDatum::general_linear(3).unwrap()), Rationals);
        assert_eq!(gl.defining_realization().unwrap().degree, 3);
        let g2 = LieAlgebra::new(Arc::new(RootDatum::simply_connected("G2").unwrap()), Rationals);
        assert!(g2.defining_realization().is_err());
    }

    #[test]
    fn trace_form_matches_invariant_form() {
        for s in ["A2", "B2", "C2", "B3", "D4"] {
            let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected(s).unwrap()), Rationals);
            let r = l.defining_realization().unwrap();
            let tf = crate::chevalley::trace_form_gram(&l.field, &r);
            assert_eq!(tf, l.invariant_form().unwrap(), "{s}");
        }
    }

    #[test]
    fn sp4_root_groups_mod_3() {
        let f = PrimeField::new(3).unwrap();
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), f.clone());
        let r = l.defining_realization().unwrap();
        assert_eq!(r.degree, 4);
        for a in 0..l.datum.num_roots() {
            assert_eq!(r.root_group(&f, a, &0), linalg::identity(&f, 4));
            let u = r.root_group(&f, a, &1);
            let ui = r.root_group(&f, a, &2);
            assert_eq!(linalg::mat_mul(&f, &u, &ui), linalg::identity(&f, 4));
        }
    }
}
