//! Instability degrees, optimal cocharacters, associated cocharacters and
//! the Bala-Carter enumeration of nilpotent orbits.

mod assoc;
mod bala_carter;
mod search;

use serde::{Deserialize, Serialize};

use crate::chevalley::{LieAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::int;
use crate::rootdata::RootDatum;

pub use assoc::{adjoint_root_element, parabolic_homog_check, theorem_assoc_check, verify_associated, TheoremReport};
pub use bala_carter::{
    dominant, enumerate_orbits, is_distinguished, is_distinguished_roots, levi_classes, levi_label, levi_roots,
    richardson_representative,
    OrbitDescriptor, OrbitRow,
};
pub use search::{optimal_search, torus_scan, OptimalityReport};

pub fn is_primitive(phi: &[i64]) -> bool {
    int::gcd_vec(phi) == 1
}

/// `phi / gcd(phi)`; the zero vector is returned unchanged.
pub fn primitive_part(phi: &[i64]) -> Vec<i64> {
    let g = int::gcd_vec(phi);
    if g == 0 {
        phi.to_vec()
    } else {
        phi.iter().map(|x| x / g).collect()
    }
}

/// `mu(X, phi)`: the smallest `phi`-weight carried by a nonzero coordinate.
pub fn mu<F: Field>(alg: &LieAlgebra<F>, x: &LieElement<F::Elem>, phi: &[i64]) -> Result<i64> {
    alg.check_parent(x)?;
    x.coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !alg.field.is_zero(c))
        .map(|(k, _)| alg.basis_weight(k, phi))
        .min()
        .ok_or(Error::ZeroElement)
}

/// Weight `m` with `X in g(m; phi)`, if `X` is homogeneous.
pub fn homogeneous_weight<F: Field>(alg: &LieAlgebra<F>, x: &LieElement<F::Elem>, phi: &[i64]) -> Option<i64> {
    let mut w = None;
    for (k, c) in x.coords.iter().enumerate() {
        if alg.field.is_zero(c) {
            continue;
        }
        let wk = alg.basis_weight(k, phi);
        match w {
            None => w = Some(wk),
            Some(v) if v != wk => return None,
            _ => {}
        }
    }
    w
}

/// Root sets of the parabolic `P(phi)`, its Levi factor and unipotent radical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    pub p_roots: Vec<usize>,
    pub levi_roots: Vec<usize>,
    pub u_roots: Vec<usize>,
}

pub fn instability_parabolic(datum: &RootDatum, phi: &[i64]) -> ParabolicData {
    let mut out = ParabolicData {
        p_roots: vec![],
        levi_roots: vec![],
        u_roots: vec![],
    };
    for a in 0..datum.num_roots() {
        let w = datum.pairing(a, phi);
        if w >= 0 {
            out.p_roots.push(a);
        }
        if w == 0 {
            out.levi_roots.push(a);
        }
        if w > 0 {
            out.u_roots.push(a);
        }
    }
    out
}
