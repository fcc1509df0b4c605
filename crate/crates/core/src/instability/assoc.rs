//! Associated cocharacters and their relation to optimal ones.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::bala_carter::is_distinguished_roots;
use super::search::{ball_points, optimal_search};
use super::{homogeneous_weight, primitive_part};
use crate::chevalley::{LieAlgebra, LieElement, LieElementJson};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg;
use crate::rootdata::{NormForm, RootDatum};

fn q_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let q = Rationals;
    let m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
    linalg::rank(&q, &m, cols)
}

/// Roots lying in the rational span of `support`: the smallest standard-torus
/// Levi whose Lie algebra contains an element with that root support.
fn span_levi(d: &RootDatum, support: &[usize]) -> Vec<usize> {
    let base: Vec<Vec<i64>> = support.iter().map(|&a| d.simple_coords[a].clone()).collect();
    let r = q_rank(&base, d.rank);
    (0..d.num_roots())
        .filter(|&a| {
            let mut rows = base.clone();
            rows.push(d.simple_coords[a].clone());
            q_rank(&rows, d.rank) == r
        })
        .collect()
}

/// Whether `phi` is associated to the nilpotent `X`, taking for the Levi the
/// roots in the span of the root support of `X`: `X in g(2; phi)`, `phi`
/// lies in the coroot span of that Levi, and `X` is distinguished there.
pub fn verify_associated<F: Field>(alg: &LieAlgebra<F>, x: &LieElement<F::Elem>, phi: &[i64]) -> Result<bool> {
    alg.check_parent(x)?;
    if alg.is_zero(x) {
        return Err(Error::ZeroElement);
    }
    if phi.len() != alg.torus_rank() {
        return Err(Error::Config(format!("cocharacter has length {}, expected {}", phi.len(), alg.torus_rank())));
    }
    if homogeneous_weight(alg, x, phi) != Some(2) {
        return Ok(false);
    }
    let d = &alg.datum;
    let support: Vec<usize> = (0..d.num_roots()).filter(|&a| !alg.field.is_zero(&x.coords[alg.root_basis(a)])).collect();
    let levi = span_levi(d, &support);
    let coroots: Vec<Vec<i64>> = levi.iter().map(|&a| d.coroots[a].clone()).collect();
    let r = q_rank(&coroots, d.torus_rank);
    let mut with_phi = coroots;
    with_phi.push(phi.to_vec());
    if q_rank(&with_phi, d.torus_rank) != r {
        return Ok(false);
    }
    is_distinguished_roots(alg, x, &levi, phi)
}

/// Outcome of checking that an associated cocharacter is optimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub target: LieElementJson,
    pub associated_cochar: Vec<i64>,
    pub bound_used: i64,
    pub best_ratio_sq: Option<(i64, i64)>,
    pub argmax: Vec<Vec<i64>>,
    /// Every cocharacter in the ball that is associated to the target.
    pub associated_in_ball: Vec<Vec<i64>>,
    pub passed: Vec<String>,
    pub violations: Vec<String>,
    pub holds: bool,
}

/// For `X` with associated `phi`, scans the norm ball and checks that the
/// primitive part of `phi` is the unique optimal cocharacter in `Y(T)`, that
/// `X` is homogeneous of weight 1 or 2 for every maximizer, and that `phi` is
/// the only associated cocharacter in the ball.
pub fn theorem_assoc_check<F: Field>(
    alg: &LieAlgebra<F>,
    x: &LieElement<F::Elem>,
    phi: &[i64],
    norm: &NormForm,
    bound: Option<i64>,
) -> Result<TheoremReport> {
    if !verify_associated(alg, x, phi)? {
        return Err(Error::Config("supplied cocharacter is not associated to the element".into()));
    }
    let floor = 9 * norm.norm_sq(phi);
    let bound = bound.map_or(floor, |b| b.max(floor));
    let opt = optimal_search(alg, x, norm, bound)?;
    let prim = primitive_part(phi);
    let mut passed = Vec::new();
    let mut violations = Vec::new();

    if opt.argmax.contains(&prim) {
        passed.push("primitive part of phi attains the maximum".to_string());
    } else {
        violations.push(format!("primitive part {prim:?} is not a maximizer"));
    }
    if opt.argmax == vec![prim.clone()] {
        passed.push("maximizer in Y(T) is unique".to_string());
    } else {
        violations.push(format!("maximizers {:?} differ from {{{prim:?}}}", opt.argmax));
    }
    let bad: Vec<&Vec<i64>> = opt
        .argmax
        .iter()
        .filter(|psi| !matches!(homogeneous_weight(alg, x, psi), Some(1) | Some(2)))
        .collect();
    if bad.is_empty() {
        passed.push("target homogeneous of weight 1 or 2 for every maximizer".to_string());
    } else {
        violations.push(format!("maximizers without weight 1 or 2: {bad:?}"));
    }

    let candidates = ball_points(norm, bound, |psi| homogeneous_weight(alg, x, psi) == Some(2))?;
    let mut associated_in_ball = Vec::new();
    for psi in candidates {
        if verify_associated(alg, x, &psi)? {
            associated_in_ball.push(psi);
        }
    }
    if associated_in_ball == vec![phi.to_vec()] {
        passed.push("phi is the only associated cocharacter in the ball".to_string());
    } else {
        violations.push(format!("associated cocharacters in ball: {associated_in_ball:?}"));
    }

    Ok(TheoremReport {
        target: alg.to_json(x),
        associated_cochar: phi.to_vec(),
        bound_used: bound,
        best_ratio_sq: opt.best_ratio_sq,
        argmax: opt.argmax,
        associated_in_ball,
        holds: violations.is_empty(),
        passed,
        violations,
    })
}

/// Scalars to try for root-group parameters: all of a small prime field,
/// otherwise a handful of small integers.
fn sample_scalars<F: Field>(f: &F) -> Vec<F::Elem> {
    match f.characteristic() {
        p @ 1..=101 => (1..p as i64).map(|t| f.from_i64(t)).collect(),
        _ => [-3, -2, -1, 1, 2, 3].iter().map(|&t| f.from_i64(t)).collect(),
    }
}

/// `Ad(x_beta(t))` as a matrix, through the divided powers of `ad(e_beta)`
/// on the Chevalley lattice.
pub fn adjoint_root_element<F: Field>(alg: &LieAlgebra<F>, beta: usize, t: &F::Elem) -> Mat<F::Elem> {
    let f = &alg.field;
    let n = alg.dim();
    let m = alg.ad_root_integer(beta);
    let mut out = linalg::identity(f, n);
    let mut power = m.clone();
    let mut k: i64 = 1;
    let mut tk = t.clone();
    while power.iter().any(|r| r.iter().any(|&v| v != 0)) {
        for i in 0..n {
            for j in 0..n {
                if power[i][j] != 0 {
                    let c = f.mul(&f.from_i64(power[i][j]), &tk);
                    out[i][j] = f.add(&out[i][j], &c);
                }
            }
        }
        // next divided power: M^{(k+1)} = M * M^{(k)} / (k+1)
        k += 1;
        power = linalg::int::mat_mul(&m, &power);
        for row in power.iter_mut() {
            for v in row.iter_mut() {
                debug_assert_eq!(*v % k, 0);
                *v /= k;
            }
        }
        tk = f.mul(&tk, t);
    }
    out
}

use crate::linalg::Mat;

/// Checks that the unipotent radical of `P(phi)` acts trivially on the
/// graded pieces of the filtration `g(>= i; phi)` for `i >= 1`: for every
/// root `beta` with `<beta, phi> > 0`, sample `t` and basis vector `b` of
/// weight `i`, `Ad(x_beta(t)) b - b` lies in `g(> i; phi)`.
pub fn parabolic_homog_check<F: Field>(alg: &LieAlgebra<F>, phi: &[i64]) -> Result<bool> {
    if phi.len() != alg.torus_rank() {
        return Err(Error::Config(format!("cocharacter has length {}, expected {}", phi.len(), alg.torus_rank())));
    }
    let d = &alg.datum;
    let f = &alg.field;
    let n = alg.dim();
    let scalars = sample_scalars(f);
    for beta in (0..d.num_roots()).filter(|&b| d.pairing(b, phi) > 0) {
        for t in &scalars {
            let u = adjoint_root_element(alg, beta, t);
            for j in 0..n {
                let wj = alg.basis_weight(j, phi);
                if wj < 1 {
                    continue;
                }
                for (i, row) in u.iter().enumerate() {
                    let mut c = row[j].clone();
                    if i == j {
                        c = f.sub(&c, &f.one());
                    }
                    if !f.is_zero(&c) && alg.basis_weight(i, phi) <= wj {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::instability::enumerate_orbits;
    use std::sync::Arc;

    fn c2() -> LieAlgebra<Rationals> {
        LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), Rationals)
    }

    #[test]
    fn regular_sp4() {
        let l = c2();
        let x = l.add(&l.root_vector(0), &l.root_vector(1)).unwrap();
        assert!(verify_associated(&l, &x, &[3, 4]).unwrap());
        assert!(!verify_associated(&l, &x, &[6, 8]).unwrap());
        assert!(!verify_associated(&l, &l.root_vector(0), &[3, 4]).unwrap());
        let r = theorem_assoc_check(&l, &x, &[3, 4], &l.datum.default_norm(), None).unwrap();
        assert!(r.holds, "{:?}", r.violations);
        assert_eq!(r.argmax, vec![vec![3, 4]]);
    }

    #[test]
    fn root_vector_in_a1() {
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("A1").unwrap()), Rationals);
        let e = l.root_vector(0);
        assert!(verify_associated(&l, &e, &[1]).unwrap());
        let r = theorem_assoc_check(&l, &e, &[1], &l.datum.default_norm(), Some(10)).unwrap();
        assert!(r.holds);
        assert_eq!(r.bound_used, 72);
        assert_eq!(r.associated_in_ball, vec![vec![1]]);
    }

    #[test]
    fn not_associated_is_config_error() {
        let l = c2();
        let x = l.root_vector(0);
        assert!(matches!(
            theorem_assoc_check(&l, &x, &[0, 1], &l.datum.default_norm(), None),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn all_g2_orbits_over_f7() {
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("G2").unwrap()), PrimeField::new(7).unwrap());
        for o in enumerate_orbits(&l, 1).unwrap().into_iter().skip(1) {
            let r = theorem_assoc_check(&l, &o.representative, &o.associated_cochar, &l.datum.default_norm(), None)
                .unwrap();
            assert!(r.holds, "{}: {:?}", o.label, r.violations);
        }
    }

    #[test]
    fn unipotent_radical_acts_on_graded_pieces() {
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), PrimeField::new(5).unwrap());
        assert!(parabolic_homog_check(&l, &[3, 4]).unwrap());
        assert!(parabolic_homog_check(&l, &[1, 0]).unwrap());
    }

    #[test]
    fn divided_powers_are_group_elements() {
        // Ad(x_b(s)) Ad(x_b(t)) = Ad(x_b(s + t))
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("G2").unwrap()), PrimeField::new(7).unwrap());
        let f = &l.field;
        for beta in 0..l.datum.num_roots() {
            let a = adjoint_root_element(&l, beta, &f.from_i64(2));
            let b = adjoint_root_element(&l, beta, &f.from_i64(3));
            let c = adjoint_root_element(&l, beta, &f.from_i64(5));
            assert_eq!(linalg::mat_mul(f, &a, &b), c);
        }
    }
}
