//! Additive Jordan decomposition through a faithful matrix realization.

use super::{matrix_is_nilpotent, LieAlgebra, LieElement, Realization};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::poly;

/// Split `x = s + n` with `s` semisimple, `n` nilpotent, `[s, n] = 0`.
///
/// The semisimple part is obtained by Newton iteration on the radical `g` of
/// the minimal polynomial of `rho(x)`: `s <- s - g(s) g'(s)^{-1}`. Over a
/// perfect field `g` is separable, so the iteration terminates with `g(s) = 0`
/// and `s` is a polynomial in `rho(x)`.
pub fn jordan_decompose<F: Field>(
    alg: &LieAlgebra<F>,
    real: &Realization<F>,
    x: &LieElement<F::Elem>,
) -> Result<(LieElement<F::Elem>, LieElement<F::Elem>)> {
    alg.check_parent(x)?;
    let f = &alg.field;
    let a = real.image(f, &x.coords);
    let mp = poly::minimal_polynomial(f, &a);
    let g = poly::radical(f, &mp);
    let dg = poly::derivative(f, &g);
    let mut s = a.clone();
    for _ in 0..64 {
        let gs = poly::eval_matrix(f, &g, &s);
        if linalg::is_zero_matrix(f, &gs) {
            let coords = real
                .preimage(f, &s)
                .ok_or_else(|| Error::Falsified("semisimple part left the image of the realization".into()))?;
            let s_el = alg.element(coords)?;
            let n_el = alg.sub(x, &s_el)?;
            debug_assert!(alg.is_zero(&alg.bracket(&s_el, &n_el)?));
            debug_assert!(matrix_is_nilpotent(f, &real.image(f, &n_el.coords)));
            return Ok((s_el, n_el));
        }
        let inv = linalg::inverse(f, &poly::eval_matrix(f, &dg, &s))
            .ok_or_else(|| Error::Falsified("g'(s) singular in Jordan iteration".into()))?;
        let step = linalg::mat_mul(f, &gs, &inv);
        s = s.iter().zip(&step).map(|(r, t)| r.iter().zip(t).map(|(u, v)| f.sub(u, v)).collect()).collect();
    }
    Err(Error::Falsified("Jordan iteration did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::rootdata::RootDatum;
    use std::sync::Arc;

    #[test]
    fn gl2_mod_5_example() {
        let f = PrimeField::new(5).unwrap();
        let l = LieAlgebra::new(Arc::new(RootDatum::general_linear(2).unwrap()), f.clone());
        let r = l.defining_realization().unwrap();
        // [[1,1],[0,2]] = E11 + 2 E22 + E12
        let mut x = l.cartan_element(&[1, 2]);
        x.coords[l.root_basis(0)] = 1;
        let (s, n) = jordan_decompose(&l, &r, &x).unwrap();
        // distinct eigenvalues: x is already semisimple
        assert_eq!(s, x);
        assert!(l.is_zero(&n));
        let sm = r.image(&f, &s.coords);
        let mp = poly::minimal_polynomial(&f, &sm);
        assert_eq!(mp, poly::mul(&f, &poly::from_coeffs(&f, vec![4, 1]), &poly::from_coeffs(&f, vec![3, 1])));
    }

    #[test]
    fn jordan_block_splits() {
        let q = Rationals;
        let l = LieAlgebra::new(Arc::new(RootDatum::general_linear(3).unwrap()), q.clone());
        let r = l.defining_realization().unwrap();
        // 2*I + E12 + E23: s = 2I, n = E12 + E23
        let mut x = l.cartan_element(&[2, 2, 2]);
        x.coords[l.root_basis(0)] = q.one();
        x.coords[l.root_basis(1)] = q.one();
        let (s, n) = jordan_decompose(&l, &r, &x).unwrap();
        assert_eq!(s, l.cartan_element(&[2, 2, 2]));
        assert!(l.is_nilpotent(&n).unwrap());
    }

    #[test]
    fn nilpotent_and_diagonal_inputs() {
        let f = PrimeField::new(7).unwrap();
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), f.clone());
        let r = l.defining_realization().unwrap();
        let e = l.add(&l.root_vector(0), &l.root_vector(1)).unwrap();
        let (s, n) = jordan_decompose(&l, &r, &e).unwrap();
        assert!(l.is_zero(&s));
        assert_eq!(n, e);
        let h = l.cartan_element(&[1, 3]);
        let (s, n) = jordan_decompose(&l, &r, &h).unwrap();
        assert_eq!(s, h);
        assert!(l.is_zero(&n));
    }
}
