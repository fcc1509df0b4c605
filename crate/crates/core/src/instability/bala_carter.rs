//! Bala-Carter enumeration: nilpotent orbits from pairs (Levi subset up to
//! W-conjugacy, distinguished parabolic of that Levi).

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chevalley::{LieAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg;
use crate::rootdata::{Family, RootDatum};

pub const MAX_ATTEMPTS: usize = 32;

/// One nilpotent orbit in Bala-Carter form.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitDescriptor<E> {
    pub label: String,
    pub levi_simple_subset: Vec<usize>,
    pub distinguished_parabolic_subset: Vec<usize>,
    pub weighted_dynkin: Vec<i64>,
    pub representative: LieElement<E>,
    pub associated_cochar: Vec<i64>,
    pub orbit_dim: usize,
    pub centralizer_dim: usize,
    /// Distinguished in `g` itself (the Levi is the whole group).
    pub distinguished: bool,
}

/// Flat serializable row of an orbit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub index: usize,
    pub bala_carter_label: String,
    pub weighted_dynkin: String,
    pub orbit_dim: usize,
    pub centralizer_dim: usize,
    pub distinguished: bool,
    pub levi_subset: String,
    pub parabolic_subset: String,
    pub associated_cochar: String,
    pub representative: String,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl<E> OrbitDescriptor<E> {
    pub fn row<F: Field<Elem = E>>(&self, index: usize, alg: &LieAlgebra<F>) -> OrbitRow {
        OrbitRow {
            index,
            bala_carter_label: self.label.clone(),
            weighted_dynkin: join(&self.weighted_dynkin),
            orbit_dim: self.orbit_dim,
            centralizer_dim: self.centralizer_dim,
            distinguished: self.distinguished,
            levi_subset: join(&self.levi_simple_subset.iter().map(|i| i + 1).collect::<Vec<_>>()),
            parabolic_subset: join(&self.distinguished_parabolic_subset.iter().map(|i| i + 1).collect::<Vec<_>>()),
            associated_cochar: join(&self.associated_cochar),
            representative: alg.describe(&self.representative),
        }
    }
}

/// Roots of the standard Levi with simple roots `subset`.
pub fn levi_roots(d: &RootDatum, subset: &[usize]) -> Vec<usize> {
    (0..d.num_roots())
        .filter(|&a| d.simple_coords[a].iter().enumerate().all(|(i, &c)| c == 0 || subset.contains(&i)))
        .collect()
}

/// One representative simple subset per W-conjugacy class of standard Levis,
/// chosen lexicographically least within its class.
pub fn levi_classes(d: &RootDatum) -> Result<Vec<Vec<usize>>> {
    let perms = d.weyl_permutations()?;
    let mut by_key: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for mask in 0u32..(1 << d.rank) {
        let j: Vec<usize> = (0..d.rank).filter(|i| mask & (1 << i) != 0).collect();
        let roots = levi_roots(d, &j);
        let key = perms
            .iter()
            .map(|w| {
                let mut img: Vec<usize> = roots.iter().map(|&a| w[a]).collect();
                img.sort_unstable();
                img
            })
            .min()
            .unwrap_or_default();
        let slot = by_key.entry(key).or_insert_with(|| j.clone());
        if (j.len(), &j) < (slot.len(), &*slot) {
            *slot = j;
        }
    }
    let mut out: Vec<Vec<usize>> = by_key.into_values().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// Bala-Carter style name of the Levi with simple roots `subset`.
pub fn levi_label(d: &RootDatum, subset: &[usize]) -> String {
    if subset.is_empty() {
        return "0".into();
    }
    let comp_of = d.cartan_type.component_of_simple();
    let mult = |i: usize, j: usize| d.cartan[i][j] * d.cartan[j][i];
    let mut seen = BTreeSet::new();
    let mut labels = Vec::new();
    for &s in subset {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen.insert(s);
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for &j in subset {
                if i != j && d.cartan[i][j] != 0 && seen.insert(j) {
                    comp.push(j);
                }
            }
            k += 1;
        }
        let ambient = d.cartan_type.components[comp_of[s]];
        let amb_max = (0..d.rank).filter(|&i| comp_of[i] == comp_of[s]).map(|i| d.root_lengths[i]).max().unwrap();
        let n = comp.len();
        let degree = |i: usize| comp.iter().filter(|&&j| j != i && d.cartan[i][j] != 0).count();
        let has = |m: i64| comp.iter().any(|&i| comp.iter().any(|&j| i != j && mult(i, j) == m));
        let name = if has(3) {
            "G2".to_string()
        } else if has(2) {
            if n == 2 {
                match ambient.family {
                    Family::C => "C2".into(),
                    _ => "B2".into(),
                }
            } else if n == 4 && ambient.family == Family::F {
                "F4".into()
            } else {
                let end = comp
                    .iter()
                    .copied()
                    .find(|&i| degree(i) == 1 && comp.iter().any(|&j| mult(i, j) == 2))
                    .unwrap();
                if d.root_lengths[end] < amb_max {
                    format!("B{n}")
                } else {
                    format!("C{n}")
                }
            }
        } else if let Some(branch) = comp.iter().copied().find(|&i| degree(i) == 3) {
            // arm lengths from the branch node
            let mut arms = Vec::new();
            for &nb in comp.iter().filter(|&&j| j != branch && d.cartan[branch][j] != 0) {
                let (mut prev, mut cur, mut len) = (branch, nb, 1);
                while let Some(next) = comp.iter().copied().find(|&j| j != prev && j != cur && d.cartan[cur][j] != 0) {
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                arms.push(len);
            }
            arms.sort_unstable();
            if arms[0] == 1 && arms[1] == 1 {
                format!("D{n}")
            } else {
                format!("E{n}")
            }
        } else {
            let short = d.root_lengths[s] < amb_max;
            format!("{}A{n}", if short { "~" } else { "" })
        };
        labels.push(name);
    }
    labels.sort();
    let mut counted: Vec<(String, usize)> = Vec::new();
    for l in labels {
        match counted.last_mut() {
            Some((name, c)) if *name == l => *c += 1,
            _ => counted.push((l, 1)),
        }
    }
    counted
        .into_iter()
        .map(|(l, c)| if c > 1 { format!("{c}{l}") } else { l })
        .collect::<Vec<_>>()
        .join("+")
}

fn q_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let q = Rationals;
    let m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
    linalg::rank(&q, &m, rows[0].len())
}

/// Rank of `ad(X): l(0) -> l(2)` where `l(0)` is spanned by the Cartan
/// subalgebra and the weight-0 Levi roots.
fn surjectivity_rank<F: Field>(
    alg: &LieAlgebra<F>,
    x: &LieElement<F::Elem>,
    l0_roots: &[usize],
    l2_roots: &[usize],
) -> Result<usize> {
    let t = alg.torus_rank();
    let sources: Vec<usize> = (0..t).chain(l0_roots.iter().map(|&a| alg.root_basis(a))).collect();
    let mut m = linalg::zeros(&alg.field, l2_roots.len(), sources.len());
    for (j, &b) in sources.iter().enumerate() {
        let img = alg.bracket(x, &alg.basis_element(b))?;
        for (i, &a) in l2_roots.iter().enumerate() {
            m[i][j] = img.coords[alg.root_basis(a)].clone();
        }
    }
    Ok(linalg::rank(&alg.field, &m, sources.len()))
}

/// Lie-level distinguishedness of `X` in the Levi with root set `levi`:
/// even grading, `X in l(2)`, `dim l'(0) = dim l(2)` for the derived Levi
/// `l'`, and `ad X: l(0) -> l(2)` surjective.
pub fn is_distinguished_roots<F: Field>(
    alg: &LieAlgebra<F>,
    x: &LieElement<F::Elem>,
    levi: &[usize],
    phi: &[i64],
) -> Result<bool> {
    alg.check_parent(x)?;
    let f = &alg.field;
    let d = &alg.datum;
    let in_levi: BTreeSet<usize> = levi.iter().copied().collect();
    for a in 0..d.num_roots() {
        if !f.is_zero(&x.coords[alg.root_basis(a)]) && !in_levi.contains(&a) {
            return Err(Error::NotInLevi);
        }
    }
    if x.coords[..alg.torus_rank()].iter().any(|c| !f.is_zero(c)) {
        return Ok(false);
    }
    if levi.iter().any(|&a| d.pairing(a, phi) % 2 != 0) {
        return Ok(false);
    }
    if levi.iter().any(|&a| !f.is_zero(&x.coords[alg.root_basis(a)]) && d.pairing(a, phi) != 2) {
        return Ok(false);
    }
    let l0: Vec<usize> = levi.iter().copied().filter(|&a| d.pairing(a, phi) == 0).collect();
    let l2: Vec<usize> = levi.iter().copied().filter(|&a| d.pairing(a, phi) == 2).collect();
    let rank_l = q_rank(&levi.iter().map(|&a| d.simple_coords[a].clone()).collect::<Vec<_>>());
    if rank_l + l0.len() != l2.len() {
        return Ok(false);
    }
    Ok(surjectivity_rank(alg, x, &l0, &l2)? == l2.len())
}

/// [`is_distinguished_roots`] for the standard Levi with simple roots `levi_subset`.
pub fn is_distinguished<F: Field>(
    alg: &LieAlgebra<F>,
    x: &LieElement<F::Elem>,
    levi_subset: &[usize],
    phi: &[i64],
) -> Result<bool> {
    is_distinguished_roots(alg, x, &levi_roots(&alg.datum, levi_subset), phi)
}

fn random_nonzero<F: Field, R: Rng>(f: &F, rng: &mut R) -> F::Elem {
    let p = f.characteristic();
    let hi = if p == 0 { 97 } else { p as i64 - 1 };
    f.from_i64(rng.gen_range(1..=hi))
}

/// An element of `l(2; phi)` with `ad X: l(0) -> l(2)` surjective: the
/// all-ones combination first, then seeded pseudorandom retries.
pub fn richardson_representative<F: Field>(
    alg: &LieAlgebra<F>,
    levi_subset: &[usize],
    parabolic_subset: &[usize],
    phi: &[i64],
    seed: u64,
) -> Result<LieElement<F::Elem>> {
    let d = &alg.datum;
    if !parabolic_subset.iter().all(|i| levi_subset.contains(i)) {
        return Err(Error::Config("parabolic subset must lie in the Levi subset".into()));
    }
    let levi = levi_roots(d, levi_subset);
    let l0: Vec<usize> = levi.iter().copied().filter(|&a| d.pairing(a, phi) == 0).collect();
    let l2: Vec<usize> = levi.iter().copied().filter(|&a| d.pairing(a, phi) == 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..=MAX_ATTEMPTS {
        let mut x = alg.zero();
        for &a in &l2 {
            x.coords[alg.root_basis(a)] = if attempt == 0 {
                alg.field.one()
            } else {
                random_nonzero(&alg.field, &mut rng)
            };
        }
        if surjectivity_rank(alg, &x, &l0, &l2)? == l2.len() {
            return Ok(x);
        }
    }
    Err(Error::NoRepresentative(MAX_ATTEMPTS))
}

/// The dominant W-conjugate of a cocharacter.
pub fn dominant(d: &RootDatum, phi: &[i64]) -> Vec<i64> {
    let mut v = phi.to_vec();
    while let Some(i) = (0..d.rank).find(|&i| d.pairing(i, &v) < 0) {
        v = d.reflect_cochar(i, &v);
    }
    v
}

/// Cocharacter in the coroot span of `levi_subset` pairing to `values[i]`
/// with each simple root `i` of the subset.
fn solve_cochar(d: &RootDatum, levi_subset: &[usize], values: &[i64]) -> Result<Vec<i64>> {
    if levi_subset.is_empty() {
        return Ok(vec![0; d.torus_rank]);
    }
    let q = Rationals;
    let a: Vec<Vec<BigRational>> = levi_subset
        .iter()
        .map(|&i| levi_subset.iter().map(|&j| q.from_i64(d.cartan[i][j])).collect())
        .collect();
    let rhs: Vec<BigRational> = values.iter().map(|&v| q.from_i64(v)).collect();
    let c = linalg::solve(&q, &a, &rhs, levi_subset.len()).expect("Cartan submatrix is invertible");
    let mut phi = vec![q.zero(); d.torus_rank];
    for (cj, &j) in c.iter().zip(levi_subset) {
        for (p, &r) in phi.iter_mut().zip(&d.coroots[j]) {
            *p += cj * q.from_i64(r);
        }
    }
    phi.iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer().to_i64().expect("small cocharacter"))
            } else {
                Err(Error::Falsified(format!(
                    "even cocharacter for Levi {levi_subset:?} is not in X_*(T)"
                )))
            }
        })
        .collect()
}

/// All nilpotent orbits of `alg` in Bala-Carter form, sorted by dimension.
pub fn enumerate_orbits<F: Field>(alg: &LieAlgebra<F>, seed: u64) -> Result<Vec<OrbitDescriptor<F::Elem>>> {
    let d = &alg.datum;
    let p = alg.field.characteristic();
    if !d.is_good_prime(p) {
        return Err(Error::BadPrime {
            p,
            cartan: d.label(),
        });
    }
    if d.rank > 4 {
        return Err(Error::guard("instability", format!("orbit enumeration limited to rank <= 4, got {}", d.rank)));
    }
    let mut out: Vec<OrbitDescriptor<F::Elem>> = Vec::new();
    let mut seen_wdd = BTreeSet::new();
    for (li, j) in levi_classes(d)?.into_iter().enumerate() {
        let levi = levi_roots(d, &j);
        for mask in 0u32..(1 << j.len()) {
            let k: Vec<usize> = j.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &i)| i).collect();
            let values: Vec<i64> = j.iter().map(|i| if k.contains(i) { 0 } else { 2 }).collect();
            // Levi root weights depend only on the values on simple roots
            let weight = |a: usize| j.iter().zip(&values).map(|(&i, v)| d.simple_coords[a][i] * v).sum::<i64>();
            let l0 = levi.iter().filter(|&&a| weight(a) == 0).count();
            let l2 = levi.iter().filter(|&&a| weight(a) == 2).count();
            if j.len() + l0 != l2 {
                continue;
            }
            let phi = solve_cochar(d, &j, &values)?;
            let wdd: Vec<i64> = {
                let dom = dominant(d, &phi);
                (0..d.rank).map(|i| d.pairing(i, &dom)).collect()
            };
            if !seen_wdd.insert(wdd.clone()) {
                continue;
            }
            let rep = richardson_representative(alg, &j, &k, &phi, seed.wrapping_add((li as u64) << 16 | mask as u64))?;
            let centralizer_dim = alg.centralizer(&rep)?.len();
            let mut label = levi_label(d, &j);
            if !k.is_empty() {
                label = format!("{label}(a{})", k.len());
            }
            out.push(OrbitDescriptor {
                label,
                distinguished: j.len() == d.rank,
                levi_simple_subset: j.clone(),
                distinguished_parabolic_subset: k,
                weighted_dynkin: wdd,
                representative: rep,
                associated_cochar: phi,
                orbit_dim: alg.dim() - centralizer_dim,
                centralizer_dim,
            });
        }
    }
    out.sort_by(|a, b| (a.orbit_dim, &a.weighted_dynkin).cmp(&(b.orbit_dim, &b.weighted_dynkin)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use std::sync::Arc;

    fn orbits(s: &str) -> Vec<OrbitDescriptor<BigRational>> {
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected(s).unwrap()), Rationals);
        enumerate_orbits(&l, 0).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(orbits("A1").len(), 2);
        assert_eq!(orbits("A2").len(), 3);
        assert_eq!(orbits("C2").len(), 4);
        assert_eq!(orbits("G2").len(), 5);
    }

    #[test]
    fn rank_three_and_four_counts() {
        // partition counts: A3 -> p(4), B3 -> 7, C3 -> 8, D4 -> 12 (with triality-related pairs)
        assert_eq!(orbits("A3").len(), 5);
        assert_eq!(orbits("B3").len(), 7);
        assert_eq!(orbits("C3").len(), 8);
        assert_eq!(orbits("D4").len(), 12);
        assert_eq!(orbits("F4").len(), 16);
        assert_eq!(orbits("A1xA2").len(), 6);
    }

    #[test]
    fn g2_labels_and_dims() {
        let o = orbits("G2");
        let labels: Vec<&str> = o.iter().map(|d| d.label.as_str()).collect();
        assert_eq!(labels, vec!["0", "A1", "~A1", "G2(a1)", "G2"]);
        let dims: Vec<usize> = o.iter().map(|d| d.orbit_dim).collect();
        assert_eq!(dims, vec![0, 6, 8, 10, 12]);
    }

    #[test]
    fn c2_over_f3() {
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), PrimeField::new(3).unwrap());
        let o = enumerate_orbits(&l, 7).unwrap();
        assert_eq!(o.len(), 4);
        let dims: Vec<usize> = o.iter().map(|d| d.orbit_dim).collect();
        assert_eq!(dims, vec![0, 4, 6, 8]);
    }

    #[test]
    fn bad_prime_rejected() {
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), PrimeField::new(2).unwrap());
        assert!(matches!(enumerate_orbits(&l, 0), Err(Error::BadPrime { .. })));
    }

    #[test]
    fn distinguished_examples() {
        let l = LieAlgebra::new(Arc::new(RootDatum::simply_connected("A1").unwrap()), Rationals);
        assert!(is_distinguished(&l, &l.root_vector(0), &[0], &[1]).unwrap());
        let c2 = LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), Rationals);
        let d = &c2.datum;
        // highest (long) root vector 2a1 + a2 with its sl2 cocharacter
        let hr = d.root_index(&[2, 1]).unwrap();
        let x = c2.root_vector(hr);
        let phi = d.coroots[hr].clone();
        assert!(!is_distinguished(&c2, &x, &[0, 1], &phi).unwrap());
        let reg = c2.add(&c2.root_vector(0), &c2.root_vector(1)).unwrap();
        assert!(is_distinguished(&c2, &reg, &[0, 1], &[3, 4]).unwrap());
        assert_eq!(is_distinguished(&c2, &reg, &[0], &[3, 4]), Err(Error::NotInLevi));
    }

    #[test]
    fn sp4_borel_representative() {
        let c2 = LieAlgebra::new(Arc::new(RootDatum::simply_connected("C2").unwrap()), Rationals);
        let x = richardson_representative(&c2, &[0, 1], &[], &[3, 4], 0).unwrap();
        assert_eq!(x, c2.add(&c2.root_vector(0), &c2.root_vector(1)).unwrap());
        let short = richardson_representative(&c2, &[0], &[], &c2.datum.coroots[0].clone(), 0).unwrap();
        assert_eq!(short, c2.root_vector(0));
    }

    #[test]
    fn levi_class_counts() {
        // standard Levi classes: A2 -> 0, A1, A2; C2 -> 0, A1, ~A1, C2
        let a2 = RootDatum::simply_connected("A2").unwrap();
        assert_eq!(levi_classes(&a2).unwrap().len(), 3);
        let c2 = RootDatum::simply_connected("C2").unwrap();
        let labels: Vec<String> = levi_classes(&c2).unwrap().iter().map(|j| levi_label(&c2, j)).collect();
        assert_eq!(labels, vec!["0", "~A1", "A1", "C2"]);
    }
}
