//! Lie algebras with a Chevalley basis over an exact field.
//!
//! The basis is the cocharacter basis of the Cartan subalgebra
//! `X_*(T) (x) k` (indices `0..torus_rank`) followed by one root vector
//! `e_alpha` per root, in the root order of the datum.

mod jordan;
mod lambda;
mod realization;
mod structure;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{rational_into, Field};
use crate::linalg::{self, Mat};
use crate::rootdata::{Family, IsogenyFlavor, RootDatum};

pub use jordan::jordan_decompose;
pub use lambda::{lambda_map, trace_form_gram, LambdaMap};
pub use realization::Realization;
pub use structure::{string_p, structure_constants};

/// An element of a [`LieAlgebra`], tagged with the algebra it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement<E> {
    pub algebra_id: Arc<str>,
    pub coords: Vec<E>,
}

/// Serialized form of a [`LieElement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieElementJson {
    pub algebra_id: String,
    pub coords: Vec<String>,
}

/// The weight-space decomposition `g = sum_i g(i; phi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub cochar: Vec<i64>,
    /// weight -> basis indices spanning that slice
    pub slices: BTreeMap<i64, Vec<usize>>,
}

impl Grading {
    pub fn dim(&self, i: i64) -> usize {
        self.slices.get(&i).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.slices.values().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebra<F: Field> {
    pub datum: Arc<RootDatum>,
    pub field: F,
    pub n_const: Arc<Vec<Vec<i64>>>,
    id: Arc<str>,
    /// bracket of basis vectors `[b_i, b_j]` as sparse integer combinations
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl<F: Field> LieAlgebra<F> {
    pub fn new(datum: Arc<RootDatum>, field: F) -> Self {
        let n_const = Arc::new(structure_constants(&datum));
        let id: Arc<str> = format!(
            "{}/{}/{}/{}",
            datum.label(),
            match datum.flavor {
                IsogenyFlavor::SimplyConnected => "sc",
                IsogenyFlavor::Adjoint => "ad",
                IsogenyFlavor::GeneralLinear => "gl",
            },
            datum.central_rank,
            field.name()
        )
        .into();
        let table = integer_table(&datum, &n_const);
        LieAlgebra {
            datum,
            field,
            n_const,
            id,
            table,
        }
    }

    pub fn id(&self) -> &Arc<str> {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.datum.torus_rank + self.datum.num_roots()
    }

    pub fn torus_rank(&self) -> usize {
        self.datum.torus_rank
    }

    /// Basis index of `e_alpha`.
    pub fn root_basis(&self, alpha: usize) -> usize {
        self.datum.torus_rank + alpha
    }

    /// Root index of a basis vector, `None` for Cartan basis vectors.
    pub fn basis_root(&self, k: usize) -> Option<usize> {
        k.checked_sub(self.datum.torus_rank)
    }

    /// `<alpha, phi>` weight of basis vector `k` (Cartan vectors have weight 0).
    pub fn basis_weight(&self, k: usize, phi: &[i64]) -> i64 {
        self.basis_root(k).map_or(0, |a| self.datum.pairing(a, phi))
    }

    pub fn element(&self, coords: Vec<F::Elem>) -> Result<LieElement<F::Elem>> {
        if coords.len() != self.dim() {
            return Err(Error::Config(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        Ok(LieElement {
            algebra_id: self.id.clone(),
            coords,
        })
    }

    pub fn zero(&self) -> LieElement<F::Elem> {
        LieElement {
            algebra_id: self.id.clone(),
            coords: vec![self.field.zero(); self.dim()],
        }
    }

    pub fn basis_element(&self, k: usize) -> LieElement<F::Elem> {
        let mut x = self.zero();
        x.coords[k] = self.field.one();
        x
    }

    pub fn root_vector(&self, alpha: usize) -> LieElement<F::Elem> {
        self.basis_element(self.root_basis(alpha))
    }

    /// The Cartan element with the given cocharacter coordinates.
    pub fn cartan_element(&self, h: &[i64]) -> LieElement<F::Elem> {
        let mut x = self.zero();
        for (c, v) in x.coords.iter_mut().zip(h) {
            *c = self.field.from_i64(*v);
        }
        x
    }

    pub fn check_parent(&self, x: &LieElement<F::Elem>) -> Result<()> {
        if x.algebra_id != self.id || x.coords.len() != self.dim() {
            Err(Error::ParentMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, x: &LieElement<F::Elem>, y: &LieElement<F::Elem>) -> Result<LieElement<F::Elem>> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let f = &self.field;
        Ok(LieElement {
            algebra_id: self.id.clone(),
            coords: x.coords.iter().zip(&y.coords).map(|(a, b)| f.add(a, b)).collect(),
        })
    }

    pub fn sub(&self, x: &LieElement<F::Elem>, y: &LieElement<F::Elem>) -> Result<LieElement<F::Elem>> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let f = &self.field;
        Ok(LieElement {
            algebra_id: self.id.clone(),
            coords: x.coords.iter().zip(&y.coords).map(|(a, b)| f.sub(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &F::Elem, x: &LieElement<F::Elem>) -> LieElement<F::Elem> {
        LieElement {
            algebra_id: x.algebra_id.clone(),
            coords: x.coords.iter().map(|a| self.field.mul(c, a)).collect(),
        }
    }

    pub fn is_zero(&self, x: &LieElement<F::Elem>) -> bool {
        x.coords.iter().all(|c| self.field.is_zero(c))
    }

    fn bracket_coords(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let xy = f.mul(xi, yj);
                for &(k, c) in &self.table[i][j] {
                    out[k] = f.add(&out[k], &f.mul(&f.from_i64(c), &xy));
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &LieElement<F::Elem>, y: &LieElement<F::Elem>) -> Result<LieElement<F::Elem>> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        Ok(LieElement {
            algebra_id: self.id.clone(),
            coords: self.bracket_coords(&x.coords, &y.coords),
        })
    }

    /// Matrix of `ad(x)` in the standard basis: column `j` is `[x, b_j]`.
    pub fn ad_matrix(&self, x: &LieElement<F::Elem>) -> Result<Mat<F::Elem>> {
        self.check_parent(x)?;
        let f = &self.field;
        let n = self.dim();
        let mut m = linalg::zeros(f, n, n);
        for (i, xi) in x.coords.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for j in 0..n {
                for &(k, c) in &self.table[i][j] {
                    m[k][j] = f.add(&m[k][j], &f.mul(&f.from_i64(c), xi));
                }
            }
        }
        Ok(m)
    }

    /// Integer matrix of `ad(e_alpha)` on the Chevalley lattice.
    pub fn ad_root_integer(&self, alpha: usize) -> Vec<Vec<i64>> {
        let n = self.dim();
        let i = self.root_basis(alpha);
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            for &(k, c) in &self.table[i][j] {
                m[k][j] += c;
            }
        }
        m
    }

    pub fn is_nilpotent(&self, x: &LieElement<F::Elem>) -> Result<bool> {
        let ad = self.ad_matrix(x)?;
        Ok(matrix_is_nilpotent(&self.field, &ad))
    }

    /// Basis of the centralizer `ker ad(x)`.
    pub fn centralizer(&self, x: &LieElement<F::Elem>) -> Result<Vec<Vec<F::Elem>>> {
        let ad = self.ad_matrix(x)?;
        Ok(linalg::kernel(&self.field, &ad, self.dim()))
    }

    pub fn grading(&self, phi: &[i64]) -> Grading {
        let mut slices: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for k in 0..self.dim() {
            slices.entry(self.basis_weight(k, phi)).or_default().push(k);
        }
        Grading {
            cochar: phi.to_vec(),
            slices,
        }
    }

    /// Exhaustive Jacobi check on all basis triples.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        let f = &self.field;
        let basis: Vec<Vec<F::Elem>> = (0..n).map(|k| self.basis_element(k).coords).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let bij = self.bracket_coords(&basis[i], &basis[j]);
                for k in (j + 1)..n {
                    let a = self.bracket_coords(&bij, &basis[k]);
                    let bjk = self.bracket_coords(&basis[j], &basis[k]);
                    let b = self.bracket_coords(&bjk, &basis[i]);
                    let bki = self.bracket_coords(&basis[k], &basis[i]);
                    let c = self.bracket_coords(&bki, &basis[j]);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !f.is_zero(&f.add(&f.add(x, y), z))) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Gram matrix of the normalized invariant form.
    ///
    /// On each simple factor this is the Killing form divided by twice the
    /// dual Coxeter number, doubled for types B and D. For the classical
    /// types this is the trace form of the defining representation. Central
    /// directions get the identity; `GL_n` uses the trace form `diag(1,...,1)`.
    pub fn invariant_form(&self) -> Result<Mat<F::Elem>> {
        let d = &self.datum;
        let t = d.torus_rank;
        let mut cartan_q = vec![vec![BigRational::from_integer(0.into()); t]; t];
        if d.flavor == IsogenyFlavor::GeneralLinear {
            for (i, row) in cartan_q.iter_mut().enumerate() {
                row[i] = BigRational::from_integer(1.into());
            }
        } else {
            let comp_of = d.cartan_type.component_of_simple();
            for (ci, comp) in d.cartan_type.components.iter().enumerate() {
                let scale = match comp.family {
                    Family::B | Family::D => 2,
                    _ => 1,
                };
                let den = 2 * comp.dual_coxeter();
                for a in 0..d.num_roots() {
                    let first = d.simple_coords[a].iter().position(|&c| c != 0).unwrap();
                    if comp_of[first] != ci {
                        continue;
                    }
                    let r = &d.roots[a];
                    for i in 0..t {
                        for j in 0..t {
                            cartan_q[i][j] += BigRational::new((scale * r[i] * r[j]).into(), den.into());
                        }
                    }
                }
            }
            for z in d.central_cochar_basis() {
                for i in 0..t {
                    for j in 0..t {
                        cartan_q[i][j] += BigRational::from_integer((z[i] * z[j]).into());
                    }
                }
            }
        }
        let f = &self.field;
        let into = |r: &BigRational| {
            rational_into(f, r).ok_or_else(|| {
                Error::Unsupported(format!("invariant form has denominator divisible by {}", f.characteristic()))
            })
        };
        let n = self.dim();
        let mut g = linalg::zeros(f, n, n);
        for i in 0..t {
            for j in 0..t {
                g[i][j] = into(&cartan_q[i][j])?;
            }
        }
        let two = BigRational::from_integer(2.into());
        for a in 0..d.num_roots() {
            let na = d.negative_of(a);
            let c = &d.coroots[a];
            let mut k = BigRational::from_integer(0.into());
            for i in 0..t {
                for j in 0..t {
                    k += &cartan_q[i][j] * BigRational::from_integer((c[i] * c[j]).into());
                }
            }
            g[t + a][t + na] = into(&(k / &two))?;
        }
        Ok(g)
    }

    pub fn form_eval(&self, gram: &Mat<F::Elem>, x: &LieElement<F::Elem>, y: &LieElement<F::Elem>) -> F::Elem {
        let gy = linalg::mat_vec(&self.field, gram, &y.coords);
        let f = &self.field;
        x.coords.iter().zip(&gy).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    pub fn to_json(&self, x: &LieElement<F::Elem>) -> LieElementJson {
        LieElementJson {
            algebra_id: x.algebra_id.to_string(),
            coords: x.coords.iter().map(|c| self.field.format(c)).collect(),
        }
    }

    pub fn from_json(&self, j: &LieElementJson) -> Result<LieElement<F::Elem>> {
        if j.algebra_id != *self.id {
            return Err(Error::ParentMismatch);
        }
        let coords = j.coords.iter().map(|s| self.field.parse(s)).collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }

    /// Human-readable form like `e[1,0] + 2*e[0,1]` in simple-root coordinates.
    pub fn describe(&self, x: &LieElement<F::Elem>) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (k, c) in x.coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let name = match self.basis_root(k) {
                Some(a) => format!(
                    "e[{}]",
                    self.datum.simple_coords[a].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                ),
                None => format!("h{}", k + 1),
            };
            if f.is_one(c) {
                parts.push(name);
            } else {
                parts.push(format!("{}*{}", f.format(c), name));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn is_nondegenerate<F: Field>(field: &F, gram: &Mat<F::Elem>) -> bool {
    linalg::rank(field, gram, gram.len()) == gram.len()
}

pub fn matrix_is_nilpotent<F: Field>(f: &F, m: &Mat<F::Elem>) -> bool {
    let n = m.len();
    // m is nilpotent iff m^n = 0; square up to a power >= n
    let mut p = m.clone();
    let mut e = 1;
    while e < n {
        p = linalg::mat_mul(f, &p, &p);
        e *= 2;
        if linalg::is_zero_matrix(f, &p) {
            return true;
        }
    }
    linalg::is_zero_matrix(f, &p)
}

fn integer_table(d: &RootDatum, n_const: &[Vec<i64>]) -> Vec<Vec<Vec<(usize, i64)>>> {
    let t = d.torus_rank;
    let n = t + d.num_roots();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..t {
        for a in 0..d.num_roots() {
            let w = d.roots[a][i];
            if w != 0 {
                table[i][t + a].push((t + a, w));
                table[t + a][i].push((t + a, -w));
            }
        }
    }
    for a in 0..d.num_roots() {
        for b in 0..d.num_roots() {
            if b == d.negative_of(a) {
                for (i, &c) in d.coroots[a].iter().enumerate() {
                    if c != 0 {
                        table[t + a][t + b].push((i, c));
                    }
                }
            } else if let Some(s) = d.sum_root(a, b) {
                table[t + a][t + b].push((t + s, n_const[a][b]));
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn alg<F: Field>(s: &str, f: F) -> LieAlgebra<F> {
        LieAlgebra::new(Arc::new(RootDatum::simply_connected(s).unwrap()), f)
    }

    #[test]
    fn sl2_brackets() {
        let l = alg("A1", Rationals);
        assert_eq!(l.dim(), 3);
        let (h, e, f) = (l.basis_element(0), l.root_vector(0), l.root_vector(1));
        assert_eq!(l.bracket(&e, &f).unwrap(), h);
        assert_eq!(l.bracket(&h, &e).unwrap(), l.scale(&l.field.from_i64(2), &e));
        assert!(l.is_zero(&l.bracket(&e, &e).unwrap()));
        assert!(l.is_nilpotent(&e).unwrap());
        assert!(!l.is_nilpotent(&h).unwrap());
        assert_eq!(l.centralizer(&e).unwrap().len(), 1);
        assert_eq!(l.centralizer(&h).unwrap().len(), 1);
    }

    #[test]
    fn jacobi_small_types() {
        assert!(alg("C2", PrimeField::new(3).unwrap()).check_jacobi());
        assert!(alg("G2", PrimeField::new(7).unwrap()).check_jacobi());
        assert!(alg("B3", Rationals).check_jacobi());
        assert!(alg("A1xA2", PrimeField::new(5).unwrap()).check_jacobi());
        let gl = LieAlgebra::new(Arc::new(RootDatum::general_linear(3).unwrap()), Rationals);
        assert!(gl.check_jacobi());
    }

    #[test]
    fn sp4_simple_bracket_sign() {
        // alpha1 + alpha2 is extraspecial with alpha1 minimal: p = 0, N = +1
        let l = alg("C2", Rationals);
        let d = &l.datum;
        let a12 = d.root_index(&[1, 1]).unwrap();
        let x = l.bracket(&l.root_vector(0), &l.root_vector(1)).unwrap();
        assert_eq!(x, l.root_vector(a12));
    }

    #[test]
    fn sp4_regular_centralizer_and_grading() {
        let l = alg("C2", Rationals);
        let x = l.add(&l.root_vector(0), &l.root_vector(1)).unwrap();
        assert_eq!(l.centralizer(&x).unwrap().len(), 2);
        // 2 rho^vee pairs to 2 with both simple roots: coords in the coroot basis
        // solve A^T-style system; for C2 the cocharacter is (3,4)
        let phi = [3, 4];
        assert_eq!(l.datum.pairing(0, &phi), 2);
        assert_eq!(l.datum.pairing(1, &phi), 2);
        let g = l.grading(&phi);
        let dims: Vec<(i64, usize)> = g.slices.iter().map(|(k, v)| (*k, v.len())).collect();
        assert_eq!(dims, vec![(-6, 1), (-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1), (6, 1)]);
    }

    #[test]
    fn invariant_form_gates() {
        let sp4_3 = alg("C2", PrimeField::new(3).unwrap());
        let g = sp4_3.invariant_form().unwrap();
        assert!(is_nondegenerate(&sp4_3.field, &g));
        let sl3_3 = alg("A2", PrimeField::new(3).unwrap());
        assert!(!is_nondegenerate(&sl3_3.field, &sl3_3.invariant_form().unwrap()));
        let gl = LieAlgebra::new(Arc::new(RootDatum::general_linear(3).unwrap()), PrimeField::new(3).unwrap());
        assert!(is_nondegenerate(&gl.field, &gl.invariant_form().unwrap()));
    }

    #[test]
    fn invariant_form_is_ad_invariant() {
        for s in ["C2", "G2", "B3", "A1xA1"] {
            let l = alg(s, Rationals);
            let g = l.invariant_form().unwrap();
            let n = l.dim();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(g[i][j], g[j][i]);
                    for k in 0..n {
                        let (x, y, z) = (l.basis_element(i), l.basis_element(j), l.basis_element(k));
                        let lhs = l.form_eval(&g, &l.bracket(&x, &y).unwrap(), &z);
                        let rhs = l.form_eval(&g, &x, &l.bracket(&y, &z).unwrap());
                        assert_eq!(lhs, rhs, "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn parent_mismatch_detected() {
        let a = alg("A1", Rationals);
        let b = alg("A2", Rationals);
        assert_eq!(a.bracket(&a.root_vector(0), &b.root_vector(0)), Err(Error::ParentMismatch));
    }
}
