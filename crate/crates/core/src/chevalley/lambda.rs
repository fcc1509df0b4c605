//! The Bardsley-Richardson map `Lambda: G -> g`: project `rho(g)` onto
//! `d rho(g)` along its trace-form orthogonal complement, shifted so that
//! `Lambda(1) = 0`.

use super::{LieAlgebra, LieElement, Realization};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Mat};

fn trace_of_product<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> F::Elem {
    let mut t = f.zero();
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if !f.is_zero(x) {
                t = f.add(&t, &f.mul(x, &b[k][i]));
            }
        }
    }
    t
}

/// Gram matrix `tr(rho(b_i) rho(b_j))` of the trace form.
pub fn trace_form_gram<F: Field>(f: &F, real: &Realization<F>) -> Mat<F::Elem> {
    let m = &real.matrices;
    (0..m.len()).map(|i| (0..m.len()).map(|j| trace_of_product(f, &m[i], &m[j])).collect()).collect()
}

/// Precomputed projection data for repeated evaluation.
#[derive(Clone, Debug)]
pub struct LambdaMap<'a, F: Field> {
    alg: &'a LieAlgebra<F>,
    real: &'a Realization<F>,
    gram_inv: Mat<F::Elem>,
    /// Projection of the identity; nonzero only when the centre of `g`
    /// meets the scalars, as for `gl_n`.
    offset: Vec<F::Elem>,
}

impl<'a, F: Field> LambdaMap<'a, F> {
    pub fn new(alg: &'a LieAlgebra<F>, real: &'a Realization<F>) -> Result<Self> {
        let gram = trace_form_gram(&alg.field, real);
        let gram_inv = linalg::inverse(&alg.field, &gram).ok_or_else(|| {
            Error::DegenerateTraceForm(format!("{} in characteristic {}", alg.datum.label(), alg.field.characteristic()))
        })?;
        let mut map = LambdaMap {
            alg,
            real,
            gram_inv,
            offset: vec![alg.field.zero(); alg.dim()],
        };
        map.offset = map.apply(&linalg::identity(&alg.field, real.degree)).coords;
        Ok(map)
    }

    pub fn apply(&self, g: &Mat<F::Elem>) -> LieElement<F::Elem> {
        let f = &self.alg.field;
        let rhs: Vec<F::Elem> = self.real.matrices.iter().map(|b| trace_of_product(f, g, b)).collect();
        let coords = linalg::mat_vec(f, &self.gram_inv, &rhs)
            .iter()
            .zip(&self.offset)
            .map(|(c, o)| f.sub(c, o))
            .collect();
        LieElement {
            algebra_id: self.alg.id().clone(),
            coords,
        }
    }
}

/// `Lambda(g)` for a single matrix `g` in the defining realization.
pub fn lambda_map<F: Field>(
    alg: &LieAlgebra<F>,
    real: &Realization<F>,
    g: &Mat<F::Elem>,
) -> Result<LieElement<F::Elem>> {
    if g.len() != real.degree || g.iter().any(|r| r.len() != real.degree) {
        return Err(Error::Config("matrix size does not match the realization".into()));
    }
    if linalg::determinant(&alg.field, g) == alg.field.zero() {
        return Err(Error::Config("group element must be invertible".into()));
    }
    Ok(LambdaMap::new(alg, real)?.apply(g))
}
