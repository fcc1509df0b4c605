//! Root data: Cartan matrices, roots and coroots in the character and
//! cocharacter lattices, Weyl groups, the invariant norm on cocharacters,
//! and good/very good prime predicates.
//!
//! Conventions:
//! * simple roots are numbered as in Bourbaki's tables;
//! * `cartan[i][j] = <alpha_i, alpha_j^vee>`, so `C2` has matrix
//!   `[[2,-1],[-2,2]]` with `alpha_1` short;
//! * roots are indexed positives first (by height, then lexicographically in
//!   simple-root coordinates) followed by their negatives in the same order;
//! * character and cocharacter coordinates are taken in dual bases, so the
//!   pairing `<alpha, phi>` is the plain dot product.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::{self, int};

/// Family letter of an irreducible root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One irreducible factor of a Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Component { family, rank })
        } else {
            Err(Error::InvalidCartanType(format!("{}{}", family.letter(), rank)))
        }
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    pub fn dual_coxeter(&self) -> i64 {
        let n = self.rank as i64;
        match self.family {
            Family::A => n + 1,
            Family::B => 2 * n - 1,
            Family::C => n + 1,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 9,
            Family::G => 4,
        }
    }

    pub fn is_good_prime(&self, p: u64) -> bool {
        if p == 0 {
            return true;
        }
        match self.family {
            Family::A => true,
            Family::B | Family::C | Family::D => p != 2,
            Family::G | Family::F => p != 2 && p != 3,
            Family::E => p != 2 && p != 3 && !(self.rank == 8 && p == 5),
        }
    }

    pub fn is_very_good_prime(&self, p: u64) -> bool {
        if !self.is_good_prime(p) {
            return false;
        }
        match self.family {
            Family::A if p != 0 => (self.rank as u64 + 1) % p != 0,
            _ => true,
        }
    }

    /// Cartan matrix with `m[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, a_ij: i64, a_ji: i64| {
            m[i][j] = a_ij;
            m[j][i] = a_ji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n short
                link(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n long
                link(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -1, -3),
        }
        m
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A (possibly reducible) Cartan type such as `C2`, `A1xA2`, or `GL3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub components: Vec<Component>,
}

impl CartanType {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidCartanType("empty type".into()));
        }
        Ok(CartanType { components })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        CartanType::new(vec![Component::new(family, rank)?])
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        let mut off = 0;
        for c in &self.components {
            let block = c.cartan_matrix();
            for i in 0..c.rank {
                for j in 0..c.rank {
                    m[off + i][off + j] = block[i][j];
                }
            }
            off += c.rank;
        }
        m
    }

    /// Component index of each simple root.
    pub fn component_of_simple(&self) -> Vec<usize> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(k, c)| std::iter::repeat(k).take(c.rank))
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split(['x', 'X', '+', '*'])
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let fam = chars
                    .next()
                    .and_then(Family::from_char)
                    .ok_or_else(|| Error::InvalidCartanType(s.to_string()))?;
                let rank: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::InvalidCartanType(s.to_string()))?;
                Component::new(fam, rank)
            })
            .collect::<Result<Vec<_>>>()?;
        CartanType::new(comps)
    }
}

/// Which lattice realises the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsogenyFlavor {
    /// Cocharacter lattice spanned by the coroots.
    SimplyConnected,
    /// Cocharacter lattice spanned by the fundamental coweights.
    Adjoint,
    /// `GL_n`: character and cocharacter lattices `Z^n` (type `A_{n-1}`).
    GeneralLinear,
}

impl FromStr for IsogenyFlavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sc" | "simply-connected" => Ok(IsogenyFlavor::SimplyConnected),
            "ad" | "adjoint" => Ok(IsogenyFlavor::Adjoint),
            "gl" | "general-linear" => Ok(IsogenyFlavor::GeneralLinear),
            other => Err(Error::Config(format!("unknown isogeny flavor {other:?}"))),
        }
    }
}

/// A reduced root datum with a fixed maximal torus.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub flavor: IsogenyFlavor,
    pub central_rank: usize,
    /// Semisimple rank.
    pub rank: usize,
    /// Rank of the maximal torus (dimension of the cocharacter lattice).
    pub torus_rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Roots in simple-root coordinates.
    pub simple_coords: Vec<Vec<i64>>,
    /// Roots in the character-lattice basis.
    pub roots: Vec<Vec<i64>>,
    /// Coroots in the cocharacter-lattice basis, aligned with `roots`.
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    /// Squared lengths of roots, normalised so the shortest root in each
    /// component has length 1 (integers).
    pub root_lengths: Vec<i64>,
    pub num_positive: usize,
    root_index: HashMap<Vec<i64>, usize>,
}

impl RootDatum {
    /// Build the root datum of `cartan_type` with the given lattice flavor and
    /// `central_rank` extra central cocharacter directions.
    pub fn build(cartan_type: &CartanType, flavor: IsogenyFlavor, central_rank: usize) -> Result<Self> {
        if flavor == IsogenyFlavor::GeneralLinear {
            let [c] = cartan_type.components.as_slice() else {
                return Err(Error::InvalidCartanType("GL_n needs a single type A component".into()));
            };
            if c.family != Family::A || central_rank != 0 {
                return Err(Error::InvalidCartanType(format!(
                    "general-linear flavor needs type A with no extra centre, got {cartan_type}"
                )));
            }
            return Self::general_linear(c.rank + 1);
        }
        let cartan = cartan_type.cartan_matrix();
        let rank = cartan.len();
        let lengths = simple_lengths(&cartan, cartan_type);
        let positives = positive_roots(&cartan);
        let mut simple_coords = positives.clone();
        simple_coords.extend(positives.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));

        let torus_rank = rank + central_rank;
        let mut roots = Vec::with_capacity(simple_coords.len());
        let mut coroots = Vec::with_capacity(simple_coords.len());
        let mut root_lengths = Vec::with_capacity(simple_coords.len());
        for c in &simple_coords {
            let len = root_length(c, &cartan, &lengths);
            // coroot in simple-coroot coordinates
            let d: Vec<i64> = c
                .iter()
                .zip(&lengths)
                .map(|(ci, li)| {
                    debug_assert_eq!((ci * li) % len, 0);
                    ci * li / len
                })
                .collect();
            let (mut r, mut cr) = match flavor {
                IsogenyFlavor::SimplyConnected => {
                    let r: Vec<i64> = (0..rank).map(|j| (0..rank).map(|i| c[i] * cartan[i][j]).sum()).collect();
                    (r, d)
                }
                IsogenyFlavor::Adjoint => {
                    let cr: Vec<i64> = (0..rank).map(|j| (0..rank).map(|i| d[i] * cartan[j][i]).sum()).collect();
                    (c.clone(), cr)
                }
                IsogenyFlavor::GeneralLinear => unreachable!(),
            };
            r.extend(std::iter::repeat(0).take(central_rank));
            cr.extend(std::iter::repeat(0).take(central_rank));
            roots.push(r);
            coroots.push(cr);
            root_lengths.push(len);
        }
        let num_positive = positives.len();
        let root_index = simple_coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let datum = RootDatum {
            cartan_type: cartan_type.clone(),
            flavor,
            central_rank,
            rank,
            torus_rank,
            cartan,
            simple_coords,
            roots,
            coroots,
            simple_indices: (0..rank).collect(),
            root_lengths,
            num_positive,
            root_index,
        };
        datum.check_counts()?;
        Ok(datum)
    }

    /// Convenience constructor for simply connected types without centre.
    pub fn simply_connected(spec: &str) -> Result<Self> {
        Self::build(&spec.parse()?, IsogenyFlavor::SimplyConnected, 0)
    }

    /// Root datum of `GL_n`.
    pub fn general_linear(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCartanType(format!("GL{n}")));
        }
        let cartan_type = CartanType::simple(Family::A, n - 1)?;
        let cartan = cartan_type.cartan_matrix();
        let positives = positive_roots(&cartan);
        let mut simple_coords = positives.clone();
        simple_coords.extend(positives.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let to_z = |c: &[i64]| -> Vec<i64> {
            // sum_k c_k (e_k - e_{k+1})
            let mut v = vec![0i64; n];
            for (k, ck) in c.iter().enumerate() {
                v[k] += ck;
                v[k + 1] -= ck;
            }
            v
        };
        let roots: Vec<Vec<i64>> = simple_coords.iter().map(|c| to_z(c)).collect();
        let coroots = roots.clone();
        let num_positive = positives.len();
        let root_index = simple_coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let datum = RootDatum {
            cartan_type,
            flavor: IsogenyFlavor::GeneralLinear,
            central_rank: 1,
            rank: n - 1,
            torus_rank: n,
            cartan,
            root_lengths: vec![1; simple_coords.len()],
            simple_coords,
            roots,
            coroots,
            simple_indices: (0..n - 1).collect(),
            num_positive,
            root_index,
        };
        datum.check_counts()?;
        Ok(datum)
    }

    fn check_counts(&self) -> Result<()> {
        let expected: usize = self.cartan_type.components.iter().map(|c| c.root_count()).sum();
        if expected != self.roots.len() {
            return Err(Error::Falsified(format!(
                "root count {} differs from table value {} for {}",
                self.roots.len(),
                expected,
                self.cartan_type
            )));
        }
        Ok(())
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Label such as `C2` or `GL3`.
    pub fn label(&self) -> String {
        match self.flavor {
            IsogenyFlavor::GeneralLinear => format!("GL{}", self.torus_rank),
            _ => self.cartan_type.to_string(),
        }
    }

    /// `<alpha, phi>` for the root with index `alpha`.
    pub fn pairing(&self, alpha: usize, phi: &[i64]) -> i64 {
        int::dot(&self.roots[alpha], phi)
    }

    /// `<lambda, alpha^vee>` for a character `lambda`.
    pub fn copairing(&self, lambda: &[i64], alpha: usize) -> i64 {
        int::dot(lambda, &self.coroots[alpha])
    }

    pub fn root_index(&self, simple_coords: &[i64]) -> Option<usize> {
        self.root_index.get(simple_coords).copied()
    }

    pub fn negative_of(&self, alpha: usize) -> usize {
        if alpha < self.num_positive {
            alpha + self.num_positive
        } else {
            alpha - self.num_positive
        }
    }

    pub fn is_positive(&self, alpha: usize) -> bool {
        alpha < self.num_positive
    }

    pub fn height(&self, alpha: usize) -> i64 {
        self.simple_coords[alpha].iter().sum()
    }

    /// Index of `alpha + beta` if it is a root.
    pub fn sum_root(&self, alpha: usize, beta: usize) -> Option<usize> {
        let s: Vec<i64> = self.simple_coords[alpha]
            .iter()
            .zip(&self.simple_coords[beta])
            .map(|(a, b)| a + b)
            .collect();
        self.root_index(&s)
    }

    /// Action of the simple reflection `s_i` on cocharacter coordinates.
    pub fn reflect_cochar(&self, i: usize, phi: &[i64]) -> Vec<i64> {
        let k = self.pairing(i, phi);
        phi.iter().zip(&self.coroots[i]).map(|(x, c)| x - k * c).collect()
    }

    /// Action of the simple reflection `s_i` on character coordinates.
    pub fn reflect_char(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let k = self.copairing(lambda, i);
        lambda.iter().zip(&self.roots[i]).map(|(x, r)| x - k * r).collect()
    }

    /// The permutation of root indices induced by `s_i`.
    pub fn reflection_permutation(&self, i: usize) -> Vec<usize> {
        (0..self.num_roots())
            .map(|a| {
                let k: i64 = (0..self.rank).map(|j| self.simple_coords[a][j] * self.cartan[j][i]).sum();
                let mut c = self.simple_coords[a].clone();
                c[i] -= k;
                self.root_index(&c).expect("reflection permutes roots")
            })
            .collect()
    }

    /// Matrix of `s_i` on cocharacter coordinates: columns are images of basis vectors.
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.torus_rank;
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let img = self.reflect_cochar(i, &e);
            for (k, v) in img.into_iter().enumerate() {
                m[k][j] = v;
            }
        }
        m
    }

    /// All Weyl group elements as integer matrices acting on `X_*(T)`.
    pub fn weyl_group_elements(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        if self.rank > 6 {
            return Err(Error::guard("rootdata", format!("Weyl enumeration limited to rank <= 6, got {}", self.rank)));
        }
        let gens: Vec<_> = (0..self.rank).map(|i| self.reflection_matrix(i)).collect();
        let n = self.torus_rank;
        let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Ok(closure(id, &gens, |a, b| int::mat_mul(b, a)))
    }

    /// All Weyl group elements as permutations of root indices.
    pub fn weyl_permutations(&self) -> Result<Vec<Vec<usize>>> {
        if self.rank > 6 {
            return Err(Error::guard("rootdata", format!("Weyl enumeration limited to rank <= 6, got {}", self.rank)));
        }
        let gens: Vec<_> = (0..self.rank).map(|i| self.reflection_permutation(i)).collect();
        let id: Vec<usize> = (0..self.num_roots()).collect();
        Ok(closure(id, &gens, |a, b| a.iter().map(|&x| b[x]).collect()))
    }

    /// Cocharacters annihilated by every root (a basis of the central directions).
    pub fn central_cochar_basis(&self) -> Vec<Vec<i64>> {
        let q = Rationals;
        let m: Vec<Vec<_>> = self.roots.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        linalg::kernel(&q, &m, self.torus_rank)
            .into_iter()
            .map(|v| {
                let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
                let w: Vec<i64> = v
                    .iter()
                    .map(|x| {
                        let y = x * num_rational::BigRational::from_integer(l.clone());
                        i64::try_from(y.to_integer()).expect("small lattice vector")
                    })
                    .collect();
                let g = int::gcd_vec(&w).max(1);
                w.into_iter().map(|x| x / g).collect()
            })
            .collect()
    }

    /// The canonical W-invariant norm: the root-sum form on the coroot span,
    /// plus the identity (in the sense of `z z^T`) on the central directions.
    pub fn default_norm(&self) -> NormForm {
        let n = self.torus_rank;
        let mut gram = vec![vec![0i64; n]; n];
        for r in &self.roots {
            for i in 0..n {
                for j in 0..n {
                    gram[i][j] += r[i] * r[j];
                }
            }
        }
        for z in self.central_cochar_basis() {
            for i in 0..n {
                for j in 0..n {
                    gram[i][j] += z[i] * z[j];
                }
            }
        }
        NormForm { gram }
    }

    pub fn is_good_prime(&self, p: u64) -> bool {
        self.cartan_type.components.iter().all(|c| c.is_good_prime(p))
    }

    pub fn is_very_good_prime(&self, p: u64) -> bool {
        self.cartan_type.components.iter().all(|c| c.is_very_good_prime(p))
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            cartan_type: self.label(),
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            cartan: self.cartan.clone(),
        }
    }
}

/// Serialized form of a root datum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDatumJson {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
}

/// A positive-definite symmetric form on `X_*(T) (x) Q`, integral on the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormForm {
    pub gram: Vec<Vec<i64>>,
}

impl NormForm {
    pub fn eval(&self, u: &[i64], v: &[i64]) -> i64 {
        int::bilinear(&self.gram, u, v)
    }

    pub fn norm_sq(&self, v: &[i64]) -> i64 {
        int::quad_form(&self.gram, v)
    }

    /// Positive definiteness via leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let q = Rationals;
        let n = self.gram.len();
        (1..=n).all(|k| {
            let m: Vec<Vec<_>> = (0..k).map(|i| (0..k).map(|j| q.from_i64(self.gram[i][j])).collect()).collect();
            linalg::determinant(&q, &m) > q.zero()
        })
    }

    pub fn is_invariant_under(&self, datum: &RootDatum) -> bool {
        let n = self.gram.len();
        let basis: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        (0..datum.rank).all(|s| {
            basis.iter().all(|u| {
                basis.iter().all(|v| {
                    self.eval(&datum.reflect_cochar(s, u), &datum.reflect_cochar(s, v)) == self.eval(u, v)
                })
            })
        })
    }
}

fn closure<T: Clone + Eq + std::hash::Hash>(id: T, gens: &[T], compose: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut seen: HashSet<T> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// Squared lengths of the simple roots; shortest root of each component = 1.
fn simple_lengths(cartan: &[Vec<i64>], ty: &CartanType) -> Vec<i64> {
    let n = cartan.len();
    let comp = ty.component_of_simple();
    let mut len: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some(Rational64::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && len[j].is_none() {
                    // (a_j,a_j)/(a_i,a_i) = A[j][i]/A[i][j]
                    let r = Rational64::new(cartan[j][i], cartan[i][j]);
                    len[j] = Some(len[i].unwrap() * r);
                    stack.push(j);
                }
            }
        }
    }
    // Normalise each component so its minimum is 1.
    let mut out = vec![0i64; n];
    for k in 0..ty.components.len() {
        let idx: Vec<usize> = (0..n).filter(|&i| comp[i] == k).collect();
        let min = idx.iter().map(|&i| len[i].unwrap()).min().unwrap();
        for &i in &idx {
            let v = len[i].unwrap() / min;
            debug_assert!(v.is_integer());
            out[i] = v.to_integer();
        }
    }
    out
}

/// Squared length of a root given in simple coordinates.
fn root_length(c: &[i64], cartan: &[Vec<i64>], lengths: &[i64]) -> i64 {
    // 2 (a_i, a_j) = A[i][j] * len_j
    let n = c.len();
    let mut twice = 0i64;
    for i in 0..n {
        for j in 0..n {
            twice += c[i] * c[j] * cartan[i][j] * lengths[j];
        }
    }
    twice / 2
}

/// Positive roots in simple coordinates, sorted by height then lexicographically.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let mut all: HashSet<Vec<i64>> = (0..n).map(unit).collect();
    let mut layer: Vec<Vec<i64>> = (0..n).map(unit).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p = max k with beta - k alpha_i a root
                let mut p = 0;
                loop {
                    let mut c = beta.clone();
                    c[i] -= p + 1;
                    if all.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let q = p - pair;
                if q > 0 {
                    let mut c = beta.clone();
                    c[i] += 1;
                    if all.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        layer = next;
    }
    let mut v: Vec<Vec<i64>> = all.into_iter().collect();
    v.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_table_values() {
        let d = RootDatum::simply_connected("C2").unwrap();
        assert_eq!(d.num_roots(), 8);
        assert_eq!(d.cartan, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(d.weyl_group_elements().unwrap().len(), 8);
    }

    #[test]
    fn a1_and_g2() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        assert_eq!(a1.num_roots(), 2);
        assert_eq!(a1.coroots[0], vec![1]);
        assert_eq!(a1.weyl_group_elements().unwrap().len(), 2);
        let g2 = RootDatum::simply_connected("G2").unwrap();
        assert_eq!(g2.num_roots(), 12);
        assert_eq!(g2.weyl_group_elements().unwrap().len(), 12);
        let a2 = RootDatum::simply_connected("A2").unwrap();
        assert_eq!(a2.weyl_group_elements().unwrap().len(), 6);
    }

    #[test]
    fn root_counts_all_families() {
        for s in ["A3", "B3", "C3", "D4", "F4", "G2", "E6", "E7", "E8", "B2xA1"] {
            let d = RootDatum::simply_connected(s).unwrap();
            let expected: usize = d.cartan_type.components.iter().map(|c| c.root_count()).sum();
            assert_eq!(d.num_roots(), expected, "{s}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!("D3".parse::<CartanType>().is_err());
        assert!("G3".parse::<CartanType>().is_err());
        assert!("Q2".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
    }

    #[test]
    fn cartan_matrix_reproduced_by_pairings() {
        for s in ["A3", "B3", "C3", "D4", "F4", "G2"] {
            for flavor in [IsogenyFlavor::SimplyConnected, IsogenyFlavor::Adjoint] {
                let d = RootDatum::build(&s.parse().unwrap(), flavor, 1).unwrap();
                for i in 0..d.rank {
                    for j in 0..d.rank {
                        assert_eq!(int::dot(&d.roots[i], &d.coroots[j]), d.cartan[i][j], "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_generators_permute_roots_and_coroots() {
        for s in ["B3", "G2", "A1xC2"] {
            let d = RootDatum::simply_connected(s).unwrap();
            let roots: HashSet<_> = d.roots.iter().cloned().collect();
            let coroots: HashSet<_> = d.coroots.iter().cloned().collect();
            for i in 0..d.rank {
                for r in &d.roots {
                    assert!(roots.contains(&d.reflect_char(i, r)));
                }
                for c in &d.coroots {
                    assert!(coroots.contains(&d.reflect_cochar(i, c)));
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let n = a1.default_norm();
        assert_eq!(n.norm_sq(&[1]), 8);
        assert_eq!(n.norm_sq(&[0]), 0);
        // C2 by hand: the roots in fundamental-weight coordinates are
        // +-(2,-1), +-(-2,2), +-(0,1), +-(2,0); summing squares of the
        // pairings with alpha_1^vee = (1,0) and alpha_2^vee = (0,1):
        // gram = 2*[[4+4+0+4, -2-4+0+0],[.., 1+4+1+0]] = [[24,-12],[-12,12]].
        let c2 = RootDatum::simply_connected("C2").unwrap();
        let n = c2.default_norm();
        assert_eq!(n.gram, vec![vec![24, -12], vec![-12, 12]]);
    }

    #[test]
    fn norm_invariant_and_definite() {
        for s in ["A2", "B3", "C3", "G2", "D4", "F4"] {
            for flavor in [IsogenyFlavor::SimplyConnected, IsogenyFlavor::Adjoint] {
                let d = RootDatum::build(&s.parse().unwrap(), flavor, 2).unwrap();
                let n = d.default_norm();
                assert!(n.is_positive_definite(), "{s}");
                assert!(n.is_invariant_under(&d), "{s}");
            }
        }
        let gl = RootDatum::general_linear(3).unwrap();
        let n = gl.default_norm();
        assert!(n.is_positive_definite());
        assert!(n.is_invariant_under(&gl));
    }

    #[test]
    fn good_prime_examples() {
        let c2 = RootDatum::simply_connected("C2").unwrap();
        assert!(!c2.is_good_prime(2));
        let a4 = RootDatum::simply_connected("A4").unwrap();
        assert!(a4.is_good_prime(5));
        assert!(!a4.is_very_good_prime(5));
        let g2 = RootDatum::simply_connected("G2").unwrap();
        assert!(g2.is_good_prime(5) && g2.is_very_good_prime(5));
        assert!(!g2.is_good_prime(3));
        assert!(RootDatum::simply_connected("E8").unwrap().is_good_prime(7));
        assert!(!RootDatum::simply_connected("E8").unwrap().is_good_prime(5));
        assert!(c2.is_very_good_prime(0));
    }

    #[test]
    fn very_good_implies_good() {
        let primes: Vec<u64> = (2..=100).filter(|&p| crate::field::is_prime(p)).collect();
        for s in ["A1", "A2", "A3", "A4", "B3", "C2", "D4", "E6", "E7", "E8", "F4", "G2", "A1xG2"] {
            let d = RootDatum::simply_connected(s).unwrap();
            for &p in &primes {
                assert!(!d.is_very_good_prime(p) || d.is_good_prime(p));
            }
        }
    }

    #[test]
    fn json_shape() {
        let d = RootDatum::simply_connected("A1").unwrap();
        let v = serde_json::to_value(d.to_json()).unwrap();
        assert_eq!(v["type"], "A1");
        assert_eq!(v["cartan"], serde_json::json!([[2]]));
        assert_eq!(v["roots"], serde_json::json!([[2], [-2]]));
    }
}
