//! The division quaternion algebra `(eps, t)` over `F_q((t))`.

use rand::Rng;

use super::laurent::{Laurent, SeriesField, SquareClass};
use crate::error::{Error, Result};

/// `a + b i + c j + d ij` with `i^2 = eps`, `j^2 = t`, `ji = -ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    pub a: Laurent,
    pub b: Laurent,
    pub c: Laurent,
    pub d: Laurent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuatAlgebra {
    pub k: SeriesField,
    /// The least nonsquare of `F_q`.
    pub eps: u32,
}

impl QuatAlgebra {
    pub fn new(q: u32, prec: usize) -> Result<Self> {
        if q % 2 == 0 {
            return Err(Error::Config("residue characteristic must be odd".into()));
        }
        let k = SeriesField::new(q, prec)?;
        let eps = k.gf().least_nonsquare().expect("odd q has nonsquares");
        Ok(QuatAlgebra { k, eps })
    }

    pub fn eps_scalar(&self) -> Laurent {
        self.k.constant(self.eps)
    }

    pub fn new_elem(&self, a: Laurent, b: Laurent, c: Laurent, d: Laurent) -> Quaternion {
        Quaternion { a, b, c, d }
    }

    pub fn scalar(&self, x: Laurent) -> Quaternion {
        let z = self.k.zero();
        Quaternion {
            a: x,
            b: z.clone(),
            c: z.clone(),
            d: z,
        }
    }

    pub fn one(&self) -> Quaternion {
        self.scalar(self.k.one())
    }

    pub fn basis(&self, n: usize) -> Quaternion {
        let mut v = [self.k.zero(), self.k.zero(), self.k.zero(), self.k.zero()];
        v[n] = self.k.one();
        let [a, b, c, d] = v;
        Quaternion { a, b, c, d }
    }

    pub fn i(&self) -> Quaternion {
        self.basis(1)
    }

    pub fn j(&self) -> Quaternion {
        self.basis(2)
    }

    pub fn ij(&self) -> Quaternion {
        self.basis(3)
    }

    pub fn skew(&self, b: Laurent, c: Laurent, d: Laurent) -> Quaternion {
        Quaternion {
            a: self.k.zero(),
            b,
            c,
            d,
        }
    }

    fn parts(x: &Quaternion) -> [&Laurent; 4] {
        [&x.a, &x.b, &x.c, &x.d]
    }

    fn map2(&self, x: &Quaternion, y: &Quaternion, f: impl Fn(&Laurent, &Laurent) -> Laurent) -> Quaternion {
        Quaternion {
            a: f(&x.a, &y.a),
            b: f(&x.b, &y.b),
            c: f(&x.c, &y.c),
            d: f(&x.d, &y.d),
        }
    }

    pub fn add(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        self.map2(x, y, |u, v| self.k.add(u, v))
    }

    pub fn sub(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        self.map2(x, y, |u, v| self.k.sub(u, v))
    }

    pub fn scale(&self, s: &Laurent, x: &Quaternion) -> Quaternion {
        Quaternion {
            a: self.k.mul(s, &x.a),
            b: self.k.mul(s, &x.b),
            c: self.k.mul(s, &x.c),
            d: self.k.mul(s, &x.d),
        }
    }

    pub fn mul(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let k = &self.k;
        let e = self.eps_scalar();
        let t = k.t();
        let et = k.mul(&e, &t);
        let m = |u: &Laurent, v: &Laurent| k.mul(u, v);
        let sum = |terms: &[Laurent]| terms.iter().fold(k.zero(), |acc, x| k.add(&acc, x));
        Quaternion {
            a: sum(&[
                m(&x.a, &y.a),
                m(&e, &m(&x.b, &y.b)),
                m(&t, &m(&x.c, &y.c)),
                k.neg(&m(&et, &m(&x.d, &y.d))),
            ]),
            b: sum(&[
                m(&x.a, &y.b),
                m(&x.b, &y.a),
                k.neg(&m(&t, &m(&x.c, &y.d))),
                m(&t, &m(&x.d, &y.c)),
            ]),
            c: sum(&[
                m(&x.a, &y.c),
                m(&x.c, &y.a),
                m(&e, &m(&x.b, &y.d)),
                k.neg(&m(&e, &m(&x.d, &y.b))),
            ]),
            d: sum(&[m(&x.a, &y.d), m(&x.d, &y.a), m(&x.b, &y.c), k.neg(&m(&x.c, &y.b))]),
        }
    }

    /// The symplectic involution: fixes the centre, negates `i`, `j`, `ij`.
    pub fn conj(&self, x: &Quaternion) -> Quaternion {
        Quaternion {
            a: x.a.clone(),
            b: self.k.neg(&x.b),
            c: self.k.neg(&x.c),
            d: self.k.neg(&x.d),
        }
    }

    /// `a^2 - eps b^2 - t c^2 + eps t d^2`.
    pub fn nrd(&self, x: &Quaternion) -> Laurent {
        let k = &self.k;
        let e = self.eps_scalar();
        let t = k.t();
        let sq = |u: &Laurent| k.mul(u, u);
        let mut r = sq(&x.a);
        r = k.sub(&r, &k.mul(&e, &sq(&x.b)));
        r = k.sub(&r, &k.mul(&t, &sq(&x.c)));
        k.add(&r, &k.mul(&k.mul(&e, &t), &sq(&x.d)))
    }

    pub fn trd(&self, x: &Quaternion) -> Laurent {
        self.k.add(&x.a, &x.a)
    }

    pub fn is_zero(&self, x: &Quaternion) -> bool {
        Self::parts(x).iter().all(|u| u.is_zero())
    }

    pub fn is_skew(&self, x: &Quaternion) -> bool {
        x.a.is_zero()
    }

    pub fn is_scalar(&self, x: &Quaternion) -> bool {
        x.b.is_zero() && x.c.is_zero() && x.d.is_zero()
    }

    /// Projection onto `Skew(Q) = { x : x + iota(x) = 0 }`.
    pub fn skew_part(&self, x: &Quaternion) -> Quaternion {
        self.skew(x.b.clone(), x.c.clone(), x.d.clone())
    }

    pub fn approx_eq(&self, x: &Quaternion, y: &Quaternion) -> bool {
        self.is_zero(&self.sub(x, y))
    }

    pub fn inv(&self, x: &Quaternion) -> Result<Quaternion> {
        let n = self.nrd(x);
        let ninv = self.k.inv(&n)?;
        Ok(self.scale(&ninv, &self.conj(x)))
    }

    /// `rho(x) y = x y iota(x)`.
    pub fn rho(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        self.mul(&self.mul(x, y), &self.conj(x))
    }

    pub fn commutator(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// `y^2` for skew `y`, which is central and equals `-Nrd(y)`.
    pub fn skew_square(&self, y: &Quaternion) -> Laurent {
        self.k.neg(&self.nrd(y))
    }

    fn check_skew(&self, y: &Quaternion) -> Result<()> {
        if !self.is_skew(y) {
            return Err(Error::Config("element is not skew".into()));
        }
        if self.is_zero(y) {
            return Err(Error::ZeroElement);
        }
        Ok(())
    }

    /// Square class of `Nrd(y)`, taken literally.
    pub fn nrd_class(&self, y: &Quaternion) -> Result<SquareClass> {
        self.check_skew(y)?;
        self.k.square_class(&self.nrd(y))
    }

    /// The orbit invariant of a nonzero skew element: the square class of
    /// `y^2 = -Nrd(y)`, i.e. the class `a` with `F[y] = F(sqrt a)`. It
    /// agrees with [`Self::nrd_class`] when `-1` is a square in `F_q`.
    pub fn eta(&self, y: &Quaternion) -> Result<SquareClass> {
        self.check_skew(y)?;
        let c = self.k.square_class(&self.skew_square(y))?;
        if c.is_trivial() {
            return Err(Error::Falsified(format!(
                "skew element with square y^2 in F^2 (algebra would be split): {}",
                self.format(y)
            )));
        }
        Ok(c)
    }

    pub fn format(&self, x: &Quaternion) -> String {
        let names = ["1", "i", "j", "ij"];
        let parts: Vec<String> = Self::parts(x)
            .iter()
            .zip(names)
            .filter(|(u, _)| !u.exact_zero)
            .map(|(u, n)| format!("({})*{n}", self.k.format(u)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// A random scalar with valuation in `[-vspan, vspan]` and a few random
    /// digits, or zero with probability `zero_prob`.
    pub fn random_scalar<R: Rng>(&self, rng: &mut R, vspan: i64, zero_prob: f64) -> Laurent {
        if rng.gen_bool(zero_prob) {
            return self.k.zero();
        }
        let q = self.k.gf().order();
        let mut digits = vec![rng.gen_range(1..q)];
        for _ in 0..3 {
            digits.push(rng.gen_range(0..q));
        }
        self.k.from_digits(rng.gen_range(-vspan..=vspan), &digits)
    }

    pub fn random_skew<R: Rng>(&self, rng: &mut R) -> Quaternion {
        loop {
            let y = self.skew(
                self.random_scalar(rng, 2, 0.25),
                self.random_scalar(rng, 2, 0.25),
                self.random_scalar(rng, 2, 0.25),
            );
            if !self.is_zero(&y) {
                return y;
            }
        }
    }

    pub fn random_unit<R: Rng>(&self, rng: &mut R) -> Quaternion {
        loop {
            let x = self.new_elem(
                self.random_scalar(rng, 2, 0.2),
                self.random_scalar(rng, 2, 0.2),
                self.random_scalar(rng, 2, 0.2),
                self.random_scalar(rng, 2, 0.2),
            );
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q3() -> QuatAlgebra {
        QuatAlgebra::new(3, 16).unwrap()
    }

    #[test]
    fn basic_norms() {
        let h = q3();
        let k = &h.k;
        assert!(k.approx_eq(&h.nrd(&h.one()), &k.one()));
        assert!(k.approx_eq(&h.nrd(&h.i()), &k.neg(&h.eps_scalar())));
        assert!(h.approx_eq(&h.mul(&h.i(), &h.i()), &h.scalar(h.eps_scalar())));
        assert!(h.approx_eq(&h.mul(&h.j(), &h.j()), &h.scalar(k.t())));
        assert!(h.approx_eq(&h.mul(&h.j(), &h.i()), &h.scale(&k.constant(2), &h.ij())));
    }

    #[test]
    fn eta_of_basis() {
        let h = q3();
        // over F_3, eps = 2 = -1: i^2 = -1 (class eps), j^2 = t, (ij)^2 = -eps t = t
        assert_eq!(h.eta(&h.i()).unwrap().to_string(), "eps");
        assert_eq!(h.eta(&h.j()).unwrap().to_string(), "t");
        assert_eq!(h.eta(&h.ij()).unwrap().to_string(), "t");
        // Nrd(i) = -eps = 1 is a square when q = 3 mod 4
        assert!(h.nrd_class(&h.i()).unwrap().is_trivial());
        assert_eq!(h.eta(&h.one()), Err(Error::Config("element is not skew".into())));
    }

    #[test]
    fn sampled_identities() {
        let h = QuatAlgebra::new(5, 14).unwrap();
        let k = &h.k;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = h.random_unit(&mut rng);
            let y = h.random_unit(&mut rng);
            assert!(k.approx_eq(&h.nrd(&h.mul(&x, &y)), &k.mul(&h.nrd(&x), &h.nrd(&y))));
            assert!(h.approx_eq(&h.mul(&x, &h.conj(&x)), &h.scalar(h.nrd(&x))));
            let s = h.random_skew(&mut rng);
            let r = h.rho(&x, &s);
            assert!(h.is_skew(&r));
            assert_eq!(h.eta(&r).unwrap(), h.eta(&s).unwrap());
            assert!(!h.nrd(&x).is_zero());
        }
    }
}
