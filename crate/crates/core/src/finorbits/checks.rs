//! Exact set-level checks over `F_p`: orbits of the unipotent radical,
//! centralizer factorizations, rational orbit partitions and the map
//! `Lambda` on unipotent elements.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{key, mat_key, FiniteGroup};
use crate::chevalley::{matrix_is_nilpotent, LambdaMap, LieElement, LieElementJson};
use crate::error::{Error, Result};
use crate::instability::{enumerate_orbits, homogeneous_weight};
use crate::linalg::{self, Mat};

pub const MAX_WORDS: u64 = 10_000_000;
pub const MAX_CONE_SCAN: u64 = 1_000_000;
pub const MAX_STORED: usize = 10_000_000;

fn checked_pow(q: u64, e: usize, limit: u64, what: &str) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q);
        if acc > limit {
            return Err(Error::guard("finorbits", format!("{what}: {q}^{e} exceeds {limit}")));
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UOrbitReport {
    pub representative: String,
    pub cochar: Vec<i64>,
    pub q: u64,
    pub dim_u: usize,
    pub dim_v: usize,
    pub words_enumerated: u64,
    pub orbit_size: usize,
    pub expected_size: u64,
    /// Images `Ad(u) X` with `Ad(u) X - X` outside `g(>= 3; phi)`.
    pub outside_slice: usize,
    pub holds: bool,
}

/// Enumerates `Ad(U(F_p)) X` for `X in g(2; phi)`, with `U` the product of
/// the root groups of the roots with `<alpha, phi> > 0` taken in a fixed
/// order, and compares it with `X + g(>= 3; phi)`.
pub fn u_orbit_check(g: &FiniteGroup, x: &LieElement<u64>, phi: &[i64]) -> Result<UOrbitReport> {
    let alg = &g.alg;
    alg.check_parent(x)?;
    if homogeneous_weight(alg, x, phi) != Some(2) {
        return Err(Error::Config("representative must lie in g(2; phi)".into()));
    }
    let d = &alg.datum;
    let q = g.field().modulus();
    let u_roots: Vec<usize> = (0..d.num_roots()).filter(|&a| d.pairing(a, phi) > 0).collect();
    let words = checked_pow(q, u_roots.len(), MAX_WORDS, "U(F_q) enumeration")?;
    let dim_v = (0..d.num_roots()).filter(|&a| d.pairing(a, phi) >= 3).count();
    // Ad(x_beta(t)) for every U-root and parameter
    let ads: Vec<Vec<Mat<u64>>> = u_roots
        .iter()
        .map(|&b| (0..q).map(|t| g.ad_matrix(&g.root_group_element(b, t).matrix)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let f = g.field();
    let in_slice: Vec<bool> = (0..alg.dim()).map(|k| alg.basis_weight(k, phi) >= 3).collect();

    let mut images: HashSet<Vec<u8>> = HashSet::new();
    let mut outside = 0usize;
    // depth-first over words x_{b1}(t1) ... x_{bm}(tm), applying the innermost first
    let m = u_roots.len();
    let mut stack: Vec<(usize, Vec<u64>)> = vec![(m, x.coords.clone())];
    while let Some((level, v)) = stack.pop() {
        if level == 0 {
            let diff_ok = v.iter().zip(&x.coords).enumerate().all(|(k, (a, b))| a == b || in_slice[k]);
            if !diff_ok {
                outside += 1;
            }
            images.insert(key(&v));
            continue;
        }
        for ad in &ads[level - 1] {
            stack.push((level - 1, linalg::mat_vec(f, ad, &v)));
        }
    }
    let expected = q.pow(dim_v as u32);
    Ok(UOrbitReport {
        representative: alg.describe(x),
        cochar: phi.to_vec(),
        q,
        dim_u: m,
        dim_v,
        words_enumerated: words,
        orbit_size: images.len(),
        expected_size: expected,
        outside_slice: outside,
        holds: outside == 0 && images.len() as u64 == expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub representative: String,
    pub cochar: Vec<i64>,
    pub group_order: usize,
    pub centralizer_order: usize,
    /// `|C cap L(phi)|`, the elements commuting with the image of `phi`.
    pub levi_part_order: usize,
    /// `|C cap U(phi)|`.
    pub unipotent_part_order: usize,
    pub factorization_holds: bool,
    pub unipotent_part_normal: bool,
    pub holds: bool,
}

fn preserves_grading(g: &Mat<u64>, w: &[i64]) -> bool {
    g.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &c)| c == 0 || w[i] == w[j]))
}

fn in_unipotent_radical(g: &Mat<u64>, w: &[i64]) -> bool {
    g.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &c)| if i == j { c == 1 } else { c == 0 || w[i] > w[j] })
    })
}

/// Enumerates `C = C_G(X)(F_p)` and checks `C = (C cap L(phi)) . (C cap U(phi))`
/// as an exact factorization with `C cap U(phi)` normal in `C`.
pub fn centralizer_levi_check(g: &FiniteGroup, x: &LieElement<u64>, phi: &[i64]) -> Result<CentralizerReport> {
    let alg = &g.alg;
    alg.check_parent(x)?;
    if !alg.is_zero(x) && homogeneous_weight(alg, x, phi) != Some(2) {
        return Err(Error::Config("representative must lie in g(2; phi)".into()));
    }
    let f = g.field();
    let elems = g.elements()?;
    let w = g.weights(phi);
    let c: Vec<&Mat<u64>> = elems.par_iter().filter(|m| g.fixes(m, x)).collect();
    let c_phi: Vec<&Mat<u64>> = c.iter().copied().filter(|m| preserves_grading(m, &w)).collect();
    let r: Vec<&Mat<u64>> = c.iter().copied().filter(|m| in_unipotent_radical(m, &w)).collect();
    let c_keys: HashSet<Vec<u8>> = c.iter().map(|m| mat_key(m)).collect();

    let mut products = HashSet::new();
    let mut all_in_c = true;
    for l in &c_phi {
        for u in &r {
            let k = mat_key(&linalg::mat_mul(f, l, u));
            all_in_c &= c_keys.contains(&k);
            products.insert(k);
        }
    }
    let factorization_holds = all_in_c && products.len() == c.len() && c_phi.len() * r.len() == c.len();

    let r_keys: HashSet<Vec<u8>> = r.iter().map(|m| mat_key(m)).collect();
    let unipotent_part_normal = c.par_iter().all(|cm| {
        let Some(ci) = linalg::inverse(f, cm) else { return false };
        r.iter()
            .all(|u| r_keys.contains(&mat_key(&linalg::mat_mul(f, &linalg::mat_mul(f, cm, u), &ci))))
    });
    Ok(CentralizerReport {
        representative: alg.describe(x),
        cochar: phi.to_vec(),
        group_order: elems.len(),
        centralizer_order: c.len(),
        levi_part_order: c_phi.len(),
        unipotent_part_order: r.len(),
        factorization_holds,
        unipotent_part_normal,
        holds: factorization_holds && unipotent_part_normal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalOrbit {
    pub representative: LieElementJson,
    pub description: String,
    pub size: usize,
    pub stabilizer_order: usize,
    pub centralizer_dim: usize,
    pub weighted_dynkin: Option<Vec<i64>>,
    pub geometric_label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub q: u64,
    pub group_order: usize,
    pub nilpotent_count: usize,
    pub orbits: Vec<RationalOrbit>,
    /// Orbit sizes sum to the cone size and `size * stabilizer = |G|`.
    pub holds: bool,
}

fn decode(mut idx: u64, q: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    for c in v.iter_mut() {
        *c = idx % q;
        idx /= q;
    }
    v
}

/// Scans `g(F_p)` for nilpotent elements and partitions them into
/// `Ad(G(F_p))`-orbits by breadth-first closure under the generators.
pub fn count_rational_nilpotent_orbits(g: &FiniteGroup) -> Result<OrbitPartition> {
    let alg = &g.alg;
    let f = g.field();
    let q = f.modulus();
    let n = alg.dim();
    let total = checked_pow(q, n, MAX_CONE_SCAN, "nilpotent cone scan")?;
    let is_nil = |v: &[u64]| -> bool {
        match g.realization() {
            Some(r) => matrix_is_nilpotent(f, &r.image(f, v)),
            None => alg
                .element(v.to_vec())
                .and_then(|e| alg.is_nilpotent(&e))
                .unwrap_or(false),
        }
    };
    let cone: Vec<Vec<u64>> = (0..total)
        .into_par_iter()
        .map(|i| decode(i, q, n))
        .filter(|v| is_nil(v))
        .collect();
    let cone_keys: HashSet<Vec<u8>> = cone.iter().map(|v| key(v)).collect();
    if cone_keys.len() > MAX_STORED {
        return Err(Error::guard("finorbits", "too many stored vectors"));
    }
    let gens: Vec<Mat<u64>> = g
        .generators()?
        .iter()
        .map(|s| g.ad_matrix(&s.matrix))
        .collect::<Result<_>>()?;
    let elems = g.elements()?;
    let group_order = elems.len();
    let geometric = enumerate_orbits(alg, 0).ok();

    let mut orbit_of: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut orbits = Vec::new();
    let mut holds = true;
    for v in &cone {
        if orbit_of.contains_key(&key(v)) {
            continue;
        }
        let id = orbits.len();
        let mut queue = VecDeque::from([v.clone()]);
        orbit_of.insert(key(v), id);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for a in &gens {
                let w = linalg::mat_vec(f, a, &u);
                let k = key(&w);
                if !cone_keys.contains(&k) {
                    holds = false;
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = orbit_of.entry(k) {
                    e.insert(id);
                    queue.push_back(w);
                }
            }
        }
        let rep = alg.element(v.clone())?;
        let stabilizer_order = elems.par_iter().filter(|m| g.fixes(m, &rep)).count();
        holds &= size * stabilizer_order == group_order;
        let centralizer_dim = alg.centralizer(&rep)?.len();
        let matched = geometric.as_ref().and_then(|orbs| {
            let hits: Vec<_> = orbs.iter().filter(|o| o.centralizer_dim == centralizer_dim).collect();
            (hits.len() == 1).then(|| hits[0])
        });
        orbits.push(RationalOrbit {
            representative: alg.to_json(&rep),
            description: alg.describe(&rep),
            size,
            stabilizer_order,
            centralizer_dim,
            weighted_dynkin: matched.map(|o| o.weighted_dynkin.clone()),
            geometric_label: matched.map(|o| o.label.clone()),
        });
    }
    holds &= orbits.iter().map(|o| o.size).sum::<usize>() == cone.len();
    Ok(OrbitPartition {
        cartan_type: alg.datum.label(),
        q,
        group_order,
        nilpotent_count: cone.len(),
        orbits,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub p: u64,
    pub lambda_of_identity_is_zero: bool,
    pub unipotent_samples: usize,
    pub nilpotent_failures: usize,
    pub equivariance_pairs: usize,
    pub equivariance_failures: usize,
    pub borel_unipotent_order: usize,
    pub injective_on_borel_unipotent: Option<bool>,
    pub holds: bool,
}

fn random_word<R: Rng>(g: &FiniteGroup, rng: &mut R, roots: &[usize], len: usize) -> Mat<u64> {
    let q = g.field().modulus();
    let mut m = g.identity().matrix;
    for _ in 0..len {
        let a = roots[rng.gen_range(0..roots.len())];
        let s = g.root_group_element(a, rng.gen_range(0..q));
        m = linalg::mat_mul(g.field(), &m, &s.matrix);
    }
    m
}

/// Checks `Lambda(1) = 0`, nilpotency of `Lambda(u)` on sampled unipotent
/// `u`, `Lambda(h u h^-1) = Ad(h) Lambda(u)` on sampled pairs, and, when
/// `borel_limit` allows, injectivity of `Lambda` on the unipotent radical of
/// the standard Borel subgroup.
pub fn lambda_check(
    g: &FiniteGroup,
    unipotent_samples: usize,
    pairs: usize,
    borel_limit: u64,
    seed: u64,
) -> Result<LambdaReport> {
    let alg = &g.alg;
    let f = g.field();
    let real = g
        .realization()
        .ok_or_else(|| Error::Unsupported("Lambda needs a defining realization".into()))?;
    let lambda = LambdaMap::new(alg, real)?;
    let id = g.identity().matrix;
    let lambda_of_identity_is_zero = alg.is_zero(&lambda.apply(&id));
    let d = &alg.datum;
    let positive: Vec<usize> = (0..d.num_roots()).filter(|&a| d.is_positive(a)).collect();
    let all: Vec<usize> = (0..d.num_roots()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // unipotent elements: Borel words conjugated by random group words
    let mut samples = Vec::with_capacity(unipotent_samples);
    for _ in 0..unipotent_samples {
        let u = random_word(g, &mut rng, &positive, 4);
        let h = random_word(g, &mut rng, &all, 3);
        let hinv = linalg::inverse(f, &h).ok_or(Error::DivisionByZero)?;
        samples.push(linalg::mat_mul(f, &linalg::mat_mul(f, &h, &u), &hinv));
    }
    let nilpotent_failures = samples
        .par_iter()
        .filter(|u| !matrix_is_nilpotent(f, &real.image(f, &lambda.apply(u).coords)))
        .count();

    let pair_data: Vec<(Mat<u64>, Mat<u64>)> = (0..pairs)
        .map(|k| (random_word(g, &mut rng, &all, 5), samples[k % samples.len().max(1)].clone()))
        .collect();
    let equivariance_failures = pair_data
        .par_iter()
        .filter(|(h, u)| {
            let hinv = linalg::inverse(f, h).unwrap();
            let lhs = lambda.apply(&linalg::mat_mul(f, &linalg::mat_mul(f, h, u), &hinv));
            let rhs = g.act(h, &lambda.apply(u));
            rhs.map_or(true, |r| r.coords != lhs.coords)
        })
        .count();

    let q = f.modulus();
    let (borel_unipotent_order, injective) = match checked_pow(q, positive.len(), borel_limit, "Borel unipotent") {
        Err(_) => (0, None),
        Ok(total) => {
            let mut elems: HashSet<Vec<u8>> = HashSet::new();
            let mut values: HashSet<Vec<u8>> = HashSet::new();
            for idx in 0..total {
                let ts = decode(idx, q, positive.len());
                let mut m = id.clone();
                for (&a, &t) in positive.iter().zip(&ts) {
                    m = linalg::mat_mul(f, &m, &g.root_group_element(a, t).matrix);
                }
                values.insert(key(&lambda.apply(&m).coords));
                elems.insert(mat_key(&m));
            }
            (elems.len(), Some(values.len() == elems.len() && elems.len() as u64 == total))
        }
    };
    Ok(LambdaReport {
        cartan_type: d.label(),
        p: q,
        lambda_of_identity_is_zero,
        unipotent_samples,
        nilpotent_failures,
        equivariance_pairs: pairs,
        equivariance_failures,
        borel_unipotent_order,
        injective_on_borel_unipotent: injective,
        holds: lambda_of_identity_is_zero
            && nilpotent_failures == 0
            && equivariance_failures == 0
            && injective != Some(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::LieAlgebra;
    use crate::field::PrimeField;
    use crate::rootdata::RootDatum;
    use std::sync::Arc;

    fn group(s: &str, p: u64) -> FiniteGroup {
        let alg = LieAlgebra::new(Arc::new(RootDatum::simply_connected(s).unwrap()), PrimeField::new(p).unwrap());
        FiniteGroup::new(alg).unwrap()
    }

    #[test]
    fn sl2_u_orbit_of_e() {
        let g = group("A1", 3);
        let e = g.alg.root_vector(0);
        let r = u_orbit_check(&g, &e, &[1]).unwrap();
        assert!(r.holds);
        assert_eq!(r.orbit_size, 1);
        assert_eq!(r.dim_v, 0);
    }

    #[test]
    fn sp4_regular_u_orbit() {
        let g = group("C2", 3);
        let x = g.alg.add(&g.alg.root_vector(0), &g.alg.root_vector(1)).unwrap();
        let r = u_orbit_check(&g, &x, &[3, 4]).unwrap();
        assert_eq!(r.dim_v, 2);
        assert_eq!(r.orbit_size, 9);
        assert!(r.holds);
    }

    #[test]
    fn sl2_centralizer() {
        let g = group("A1", 3);
        let r = centralizer_levi_check(&g, &g.alg.root_vector(0), &[1]).unwrap();
        assert_eq!(r.group_order, 24);
        assert_eq!(r.centralizer_order, 6);
        assert_eq!(r.levi_part_order, 2);
        assert_eq!(r.unipotent_part_order, 3);
        assert!(r.holds);
        let z = centralizer_levi_check(&g, &g.alg.zero(), &[0]).unwrap();
        assert_eq!(z.centralizer_order, 24);
        assert!(z.holds);
    }

    #[test]
    fn sl2_rational_orbits() {
        for (p, count) in [(3, 3), (5, 3), (7, 3)] {
            let g = group("A1", p);
            let part = count_rational_nilpotent_orbits(&g).unwrap();
            assert!(part.holds);
            assert_eq!(part.nilpotent_count as u64, p * p);
            assert_eq!(part.orbits.len(), count);
            assert_eq!(part.orbits[0].size, 1);
        }
        let part = count_rational_nilpotent_orbits(&group("A1", 3)).unwrap();
        let sizes: Vec<usize> = part.orbits.iter().map(|o| o.size).collect();
        assert_eq!(sizes, vec![1, 4, 4]);
    }

    #[test]
    fn lambda_sl2() {
        let g = group("A1", 5);
        let r = lambda_check(&g, 200, 100, 1000, 0).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.borel_unipotent_order, 5);
    }
}
