//! Groups of `F_p`-points generated by root groups, acting on the Lie
//! algebra through a faithful matrix representation.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::chevalley::{LieAlgebra, LieElement, Realization};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::instability::adjoint_root_element;
use crate::linalg::{self, Mat};

pub const MAX_GROUP_ORDER: usize = 1_000_000;

/// Where a group element came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Identity,
    RootGroup { root: usize, t: u64 },
    Torus { cochar: Vec<i64>, scalar: u64 },
    Product,
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Mat<u64>,
    pub tag: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    /// The natural module of a classical group (or `GL_n`).
    Defining,
    /// The adjoint representation on the Chevalley lattice mod p.
    Adjoint,
}

/// `G(F_p)` for the group of a Lie algebra over a prime field.
#[derive(Debug)]
pub struct FiniteGroup {
    pub alg: LieAlgebra<PrimeField>,
    pub kind: RepKind,
    real: Option<Realization<PrimeField>>,
    elements: OnceLock<Vec<Mat<u64>>>,
}

pub(crate) fn key(v: &[u64]) -> Vec<u8> {
    v.iter().map(|&x| x as u8).collect()
}

pub(crate) fn mat_key(m: &Mat<u64>) -> Vec<u8> {
    m.iter().flatten().map(|&x| x as u8).collect()
}

fn primitive_root(f: &PrimeField) -> u64 {
    let p = f.modulus();
    (1..p)
        .find(|&g| (1..p - 1).all(|e| f.pow(&g, e) != 1))
        .unwrap_or(1)
}

impl FiniteGroup {
    /// Uses the defining realization when one exists, else the adjoint one.
    pub fn new(alg: LieAlgebra<PrimeField>) -> Result<Self> {
        if alg.field.modulus() > 255 {
            return Err(Error::Config("finite-group enumeration needs p < 256".into()));
        }
        let real = alg.defining_realization().ok();
        let kind = if real.is_some() { RepKind::Defining } else { RepKind::Adjoint };
        Ok(FiniteGroup {
            alg,
            kind,
            real,
            elements: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.alg.field
    }

    pub fn realization(&self) -> Option<&Realization<PrimeField>> {
        self.real.as_ref()
    }

    pub fn degree(&self) -> usize {
        match &self.real {
            Some(r) => r.degree,
            None => self.alg.dim(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            matrix: linalg::identity(self.field(), self.degree()),
            tag: Provenance::Identity,
        }
    }

    /// `x_alpha(t)`, through divided powers of `e_alpha`.
    pub fn root_group_element(&self, alpha: usize, t: u64) -> GroupElement {
        let f = self.field();
        let t = t % f.modulus();
        let matrix = match &self.real {
            Some(r) => r.root_group(f, alpha, &t),
            None => adjoint_root_element(&self.alg, alpha, &t),
        };
        GroupElement {
            matrix,
            tag: Provenance::RootGroup { root: alpha, t },
        }
    }

    /// `phi(s)`, acting on weight vectors by `s^weight`.
    pub fn torus_element(&self, phi: &[i64], s: u64) -> Result<GroupElement> {
        let f = self.field();
        let s = s % f.modulus();
        if phi.len() != self.alg.torus_rank() {
            return Err(Error::Config("cocharacter length does not match the torus".into()));
        }
        let weights = self.weights(phi);
        let s_inv = f.inv(&s).ok_or(Error::DivisionByZero)?;
        let mut matrix = linalg::zeros(f, weights.len(), weights.len());
        for (k, w) in weights.into_iter().enumerate() {
            matrix[k][k] = if w >= 0 { f.pow(&s, w as u64) } else { f.pow(&s_inv, (-w) as u64) };
        }
        Ok(GroupElement {
            matrix,
            tag: Provenance::Torus {
                cochar: phi.to_vec(),
                scalar: s,
            },
        })
    }

    /// Weights of `phi` on the basis of the representation space.
    pub fn weights(&self, phi: &[i64]) -> Vec<i64> {
        match &self.real {
            Some(r) => r.weights(self.alg.torus_rank(), phi),
            None => (0..self.alg.dim()).map(|k| self.alg.basis_weight(k, phi)).collect(),
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: linalg::mat_mul(self.field(), &g.matrix, &h.matrix),
            tag: Provenance::Product,
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement {
            matrix: linalg::inverse(self.field(), &g.matrix).ok_or(Error::DivisionByZero)?,
            tag: Provenance::Inverse,
        })
    }

    /// Matrix of `Ad(g)` on the Chevalley basis.
    pub fn ad_matrix(&self, g: &Mat<u64>) -> Result<Mat<u64>> {
        let f = self.field();
        let Some(r) = &self.real else {
            return Ok(g.clone());
        };
        let ginv = linalg::inverse(f, g).ok_or(Error::DivisionByZero)?;
        let n = self.alg.dim();
        let mut out = linalg::zeros(f, n, n);
        for (k, b) in r.matrices.iter().enumerate() {
            let conj = linalg::mat_mul(f, &linalg::mat_mul(f, g, b), &ginv);
            let col = r
                .preimage(f, &conj)
                .ok_or_else(|| Error::Falsified("conjugate of a basis vector left the Lie algebra".into()))?;
            for (i, c) in col.into_iter().enumerate() {
                out[i][k] = c;
            }
        }
        Ok(out)
    }

    /// `Ad(g) x`.
    pub fn act(&self, g: &Mat<u64>, x: &LieElement<u64>) -> Result<LieElement<u64>> {
        let ad = self.ad_matrix(g)?;
        self.alg.element(linalg::mat_vec(self.field(), &ad, &x.coords))
    }

    /// Whether `Ad(g) x = x`, without inverting `g`.
    pub fn fixes(&self, g: &Mat<u64>, x: &LieElement<u64>) -> bool {
        let f = self.field();
        match &self.real {
            Some(r) => {
                let m = r.image(f, &x.coords);
                linalg::mat_mul(f, g, &m) == linalg::mat_mul(f, &m, g)
            }
            None => linalg::mat_vec(f, g, &x.coords) == x.coords,
        }
    }

    /// Whether `ad` preserves the bracket on all pairs of basis vectors.
    pub fn is_automorphism(&self, ad: &Mat<u64>) -> Result<bool> {
        let n = self.alg.dim();
        let f = self.field();
        let cols: Vec<LieElement<u64>> = (0..n)
            .map(|k| self.alg.element((0..n).map(|i| ad[i][k]).collect()))
            .collect::<Result<_>>()?;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.alg.bracket(&cols[i], &cols[j])?;
                let b = self.alg.bracket(&self.alg.basis_element(i), &self.alg.basis_element(j))?;
                let rhs = linalg::mat_vec(f, ad, &b.coords);
                if lhs.coords != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Generators: `x_alpha(1)` for every root and `phi_i(g)` for a
    /// primitive root `g` and each coordinate cocharacter.
    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        let mut gens: Vec<GroupElement> = (0..self.alg.datum.num_roots()).map(|a| self.root_group_element(a, 1)).collect();
        let g = primitive_root(self.field());
        let t = self.alg.torus_rank();
        for i in 0..t {
            let mut phi = vec![0; t];
            phi[i] = 1;
            gens.push(self.torus_element(&phi, g)?);
        }
        Ok(gens)
    }

    /// All elements of the generated group, enumerated once by BFS.
    pub fn elements(&self) -> Result<&[Mat<u64>]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let f = self.field();
        let gens: Vec<Mat<u64>> = self.generators()?.into_iter().map(|g| g.matrix).collect();
        let id = linalg::identity(f, self.degree());
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut out = vec![];
        let mut queue = VecDeque::new();
        seen.insert(mat_key(&id));
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = linalg::mat_mul(f, s, &g);
                if seen.insert(mat_key(&h)) {
                    if seen.len() > MAX_GROUP_ORDER {
                        return Err(Error::guard("finorbits", format!("group order exceeds {MAX_GROUP_ORDER}")));
                    }
                    queue.push_back(h);
                }
            }
            out.push(g);
        }
        Ok(self.elements.get_or_init(|| out))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }
}
