//! Finite fields `GF(q)` for small prime powers, by lookup tables.
//!
//! Elements are encoded as integers `sum c_i p^i` for the residue class of
//! `sum c_i z^i` modulo the lexicographically first monic irreducible
//! polynomial of degree `k`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};

const MAX_Q: u32 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    pth_root: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf {
    p: u32,
    k: u32,
    q: u32,
    /// Low-to-high coefficients of the monic modulus (without the leading 1).
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // z^k = -sum modulus[i] z^i
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[d - k + i] = (prod[d - k + i] + p - (c * m) % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl Gf {
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::Config(format!("field size {q} outside 2..={MAX_Q}")));
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut k = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 || !is_prime(p as u64) {
            return Err(Error::Config(format!("{q} is not a prime power")));
        }
        for cand in 0..q {
            let modulus = digits(cand, p, k);
            if let Some(tables) = Self::build(p, k, &modulus) {
                return Ok(Gf {
                    p,
                    k,
                    q,
                    modulus,
                    tables: Arc::new(tables),
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Tables for `F_p[z]/(modulus)`, or `None` if that ring is not a field.
    fn build(p: u32, k: u32, modulus: &[u32]) -> Option<Tables> {
        let q = p.pow(k) as usize;
        let d: Vec<Vec<u32>> = (0..q as u32).map(|x| digits(x, p, k)).collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = d[a].iter().zip(&d[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p);
                mul[a * q + b] = undigits(&poly_mulmod(&d[a], &d[b], modulus, p), p);
            }
        }
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q as u32).find(|&b| mul[a * q + b as usize] == 1)?;
        }
        let neg = (0..q).map(|a| (0..q as u32).find(|&b| add[a * q + b as usize] == 0).unwrap()).collect();
        let mut pth_root = vec![0; q];
        for a in 0..q as u32 {
            let mut x = 1u32;
            for _ in 0..p {
                x = mul[x as usize * q + a as usize];
            }
            pth_root[x as usize] = a;
        }
        Some(Tables {
            add,
            mul,
            neg,
            inv,
            pth_root,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// 1 for nonzero squares, -1 for nonsquares, 0 for zero.
    pub fn quadratic_character(&self, a: u32) -> i8 {
        if a == 0 {
            0
        } else if self.p == 2 || self.pow(&a, ((self.q - 1) / 2) as u64) == 1 {
            1
        } else {
            -1
        }
    }

    /// A square root, if one exists.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        self.elements().find(|&x| self.mul(&x, &x) == a)
    }

    /// The least nonsquare in the integer encoding (odd `q` only).
    pub fn least_nonsquare(&self) -> Option<u32> {
        self.elements().find(|&x| self.quadratic_character(x) == -1)
    }
}

impl Field for Gf {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.tables.add[(*a * self.q + *b) as usize]
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.tables.mul[(*a * self.q + *b) as usize]
    }
    fn neg(&self, a: &u32) -> u32 {
        self.tables.neg[*a as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.tables.inv[*a as usize])
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn pth_root(&self, a: &u32) -> u32 {
        self.tables.pth_root[*a as usize]
    }
    fn format(&self, a: &u32) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let terms: Vec<String> = digits(*a, self.p, self.k)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".into(),
                (1, c) => format!("{c}z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let bad = || Error::Parse(format!("bad element of {}: {s:?}", self.name()));
        let mut acc = vec![0u32; self.k as usize];
        for term in s.trim().split('+') {
            let term = term.trim();
            let (coef, exp) = match term.find('z') {
                None => (term, 0usize),
                Some(pos) => {
                    let e = match term[pos + 1..].strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if pos + 1 == term.len() => 1,
                        None => return Err(bad()),
                    };
                    (if pos == 0 { "1" } else { &term[..pos] }, e)
                }
            };
            let c: i64 = coef.parse().map_err(|_| bad())?;
            if exp >= self.k as usize {
                return Err(bad());
            }
            acc[exp] = (acc[exp] + c.rem_euclid(self.p as i64) as u32) % self.p;
        }
        Ok(undigits(&acc, self.p))
    }
    fn name(&self) -> String {
        format!("GF{}", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_is_a_field() {
        let f = Gf::new(9).unwrap();
        assert_eq!(f.prime(), 3);
        assert_eq!(f.degree(), 2);
        for a in 1..9 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            assert_eq!(f.pow(&a, 8), 1);
        }
        let squares: std::collections::BTreeSet<u32> = (1..9).map(|a| f.mul(&a, &a)).collect();
        assert_eq!(squares.len(), 4);
        // every element of F_3 is a square in F_9
        assert_eq!(f.quadratic_character(2), 1);
    }

    #[test]
    fn prime_fields_and_nonsquares() {
        assert_eq!(Gf::new(3).unwrap().least_nonsquare(), Some(2));
        assert_eq!(Gf::new(5).unwrap().least_nonsquare(), Some(2));
        assert_eq!(Gf::new(7).unwrap().least_nonsquare(), Some(3));
        assert!(Gf::new(6).is_err());
        assert!(Gf::new(1).is_err());
    }

    #[test]
    fn frobenius_inverse() {
        let f = Gf::new(27).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(&f.pth_root(&a), 3), a);
        }
    }

    #[test]
    fn format_parse_roundtrip() {
        let f = Gf::new(25).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
        }
    }
}
