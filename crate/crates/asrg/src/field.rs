//! Table-based arithmetic in GF(q) for small prime powers.
//!
//! Prime fields use modular arithmetic directly; extension fields reduce
//! modulo the lexicographically least monic irreducible polynomial over
//! GF(p), with coefficients compared from the constant term up. All
//! multiplicative arithmetic goes through exp/log tables built from a
//! fixed generator, so element operations are O(1) after construction
//! (addition is O(e) digit arithmetic).

use thiserror::Error;

/// Largest supported field order; keeps the exp/log tables in memory.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("square classification is undefined in characteristic 2")]
    CharTwo,
    #[error("element index {index} out of range for GF({q})")]
    IndexOutOfRange { index: u32, q: u32 },
}

/// A field element, encoded as its index in `[0, q)`.
///
/// The index is the base-`p` packing of the coefficient vector of the
/// element with respect to the power basis of the chosen modulus, with
/// the constant term as the least significant digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);
}

/// Outcome of classifying an element as a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClass {
    Zero,
    Square,
    Nonsquare,
}

/// Arithmetic tables for GF(q), immutable after construction.
#[derive(Debug, Clone)]
pub struct Field {
    q: u32,
    p: u32,
    e: u32,
    /// Coefficients `c_0, ..., c_{e-1}` of the monic modulus
    /// `x^e + c_{e-1} x^{e-1} + ... + c_0`; empty slice means `e = 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed generator `g`; length `q - 1`.
    exp: Vec<u32>,
    /// `log[exp[i]] = i`; `log[0]` is unused.
    log: Vec<u32>,
    /// `+1` if `q ≡ 1 (mod 4)`, `-1` if `q ≡ 3 (mod 4)`, `0` for even q.
    gamma: i8,
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut n = q;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            return if n == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Dense polynomial over GF(p), constant term first, no trailing zeros.
fn poly_trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    debug_assert!(!b.is_empty() && *b.last().unwrap() != 0);
    let db = b.len() - 1;
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while a.len() > db {
        let da = a.len() - 1;
        let coef = (a[da] * lead_inv) % p;
        if coef != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = da - db + i;
                a[idx] = (a[idx] + p - (coef * bc) % p) % p;
            }
        }
        a = poly_trim(a);
        if a.len() <= db {
            break;
        }
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and small, so Fermat is fine.
    mod_pow(a, p - 2, p)
}

fn mod_pow(b: u32, mut e: u32, m: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut bb = b as u64 % m as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % m as u64;
        }
        bb = bb * bb % m as u64;
        e >>= 1;
    }
    acc as u32
}

/// True iff the monic polynomial with the given full coefficient vector
/// (constant term first, leading coefficient included) is irreducible
/// over GF(p). Trial division by every monic polynomial of degree at
/// most half the degree of the candidate.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d.
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut n = idx;
            for _ in 0..d {
                div.push((n % p as u64) as u32);
                n /= p as u64;
            }
            div.push(1);
            if poly_rem(poly.to_vec(), &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(q) with verified tables.
    pub fn new(q: u64) -> Result<Field, FieldError> {
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        let (p64, e) = factor_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let q = q as u32;
        let p = p64 as u32;

        let modulus = if e == 1 {
            Vec::new()
        } else {
            Self::least_irreducible(p, e)
        };

        let mut field = Field {
            q,
            p,
            e,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            gamma: if q % 2 == 1 {
                if q % 4 == 1 {
                    1
                } else {
                    -1
                }
            } else {
                0
            },
        };
        field.build_tables();
        field.verify_tables();
        Ok(field)
    }

    /// Lexicographically least monic irreducible of degree `e` over
    /// GF(p), comparing coefficient vectors from the constant term up.
    fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
        let count = (p as u64).pow(e);
        for idx in 0..count {
            // idx encodes (c_0, c_1, ...) with c_0 most significant so
            // that ascending idx is ascending lexicographic order.
            let mut coeffs = vec![0u32; e as usize];
            let mut n = idx;
            for i in (0..e as usize).rev() {
                coeffs[i] = (n % p as u64) as u32;
                n /= p as u64;
            }
            let mut full = coeffs.clone();
            full.push(1);
            if is_irreducible(&full, p) {
                return coeffs;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over GF(p)")
    }

    /// Polynomial-basis multiplication; used only while building tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let e = self.e as usize;
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce modulo x^e = -(c_{e-1} x^{e-1} + ... + c_0).
        for d in (e..2 * e - 1).rev() {
            let coef = prod[d];
            if coef != 0 {
                prod[d] = 0;
                for (i, &c) in self.modulus.iter().enumerate() {
                    let idx = d - e + i;
                    prod[idx] = (prod[idx] + (p - c as u64) * coef) % p;
                }
            }
        }
        let mut acc = 0u32;
        for i in (0..e).rev() {
            acc = acc * self.p + prod[i] as u32;
        }
        acc
    }

    fn build_tables(&mut self) {
        let q = self.q;
        // Find a generator of the multiplicative group.
        'cand: for g in 1..q {
            let mut pow = 1u32;
            let mut exp = Vec::with_capacity((q - 1) as usize);
            for _ in 0..q - 1 {
                exp.push(pow);
                pow = self.mul_slow(pow, g);
                if pow == 1 && exp.len() < (q - 1) as usize {
                    continue 'cand;
                }
            }
            if pow != 1 {
                continue;
            }
            let mut log = vec![0u32; q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn verify_tables(&self) {
        let q = self.q as usize;
        assert_eq!(self.exp.len(), q - 1);
        assert_eq!(self.exp[0], 1);
        for (i, &v) in self.exp.iter().enumerate() {
            assert!(v != 0 && (v as usize) < q);
            assert_eq!(self.log[v as usize] as usize, i);
        }
        // Period q-1: g^(q-1) = 1.
        if q > 2 {
            assert_eq!(self.mul_slow(*self.exp.last().unwrap(), self.exp[1]), 1);
        }
        if self.p != 2 {
            let squares = (1..self.q)
                .filter(|&a| self.square_classify(Elem(a)).unwrap() == SquareClass::Square)
                .count();
            assert_eq!(squares, (q - 1) / 2);
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Modulus coefficients `c_0, ..., c_{e-1}`; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn gamma(&self) -> i8 {
        self.gamma
    }

    pub fn elem(&self, index: u32) -> Result<Elem, FieldError> {
        if index < self.q {
            Ok(Elem(index))
        } else {
            Err(FieldError::IndexOutOfRange { index, q: self.q })
        }
    }

    /// Iterates over all elements in index order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Base-p digit vector of an element, constant term first.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut n = a;
        for _ in 0..self.e {
            v.push(n % self.p);
            n /= self.p;
        }
        v
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        let mut acc = 0u32;
        for i in (0..d.len()).rev() {
            acc = acc * self.p + d[i] % self.p;
        }
        acc
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        Elem(self.from_digits(&sum))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            return Elem((self.p - a.0) % self.p);
        }
        let da = self.digits(a.0);
        let neg: Vec<u32> = da.iter().map(|x| (self.p - x) % self.p).collect();
        Elem(self.from_digits(&neg))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let idx = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64)
            % (self.q - 1) as u64;
        Elem(self.exp[idx as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero(self.q));
        }
        let l = self.log[a.0 as usize];
        let idx = ((self.q - 1) - l) % (self.q - 1);
        Ok(Elem(self.exp[idx as usize]))
    }

    /// Doubles an element; common in bilinear-form arithmetic.
    pub fn double(&self, a: Elem) -> Elem {
        self.add(a, a)
    }

    /// Square classification by log parity; odd characteristic only.
    pub fn square_classify(&self, a: Elem) -> Result<SquareClass, FieldError> {
        if self.p == 2 {
            return Err(FieldError::CharTwo);
        }
        if a.0 == 0 {
            return Ok(SquareClass::Zero);
        }
        if self.log[a.0 as usize] % 2 == 0 {
            Ok(SquareClass::Square)
        } else {
            Ok(SquareClass::Nonsquare)
        }
    }

    /// The least-index nonsquare element; odd characteristic only.
    pub fn least_nonsquare(&self) -> Result<Elem, FieldError> {
        for a in 1..self.q {
            if self.square_classify(Elem(a))? == SquareClass::Nonsquare {
                return Ok(Elem(a));
            }
        }
        unreachable!("odd-order fields have nonsquares")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(Field::new(12).unwrap_err(), FieldError::NotPrimePower(12));
        assert_eq!(Field::new(1).unwrap_err(), FieldError::NotPrimePower(1));
        assert!(matches!(Field::new(1 << 17), Err(FieldError::TooLarge(_))));
    }

    #[test]
    fn gf7_basics() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.characteristic(), 7);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.gamma(), -1);
        assert_eq!(f.mul(Elem(3), Elem(5)), Elem(1));
        assert_eq!(f.inv(Elem(0)).unwrap_err(), FieldError::DivisionByZero(7));
        // Squares mod 7 are {1, 2, 4}.
        assert_eq!(f.square_classify(Elem(3)).unwrap(), SquareClass::Nonsquare);
        assert_eq!(f.square_classify(Elem(2)).unwrap(), SquareClass::Square);
        assert_eq!(f.square_classify(Elem(0)).unwrap(), SquareClass::Zero);
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        let f = Field::new(9).unwrap();
        assert_eq!(f.characteristic(), 3);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.gamma(), 1);
        assert_eq!(f.modulus(), &[1, 0]);
        // x * x = -1 = 2 under x^2 + 1; x has index 3 (digits (0,1)).
        let x = Elem(3);
        assert_eq!(f.mul(x, x), Elem(2));
        // -1 is a square exactly because gamma = +1.
        assert_eq!(f.square_classify(Elem(2)).unwrap(), SquareClass::Square);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121] {
            let f = Field::new(q).unwrap();
            for a in f.elems() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if a != Elem::ZERO {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                    assert_eq!(
                        f.square_classify(f.mul(a, a)).unwrap(),
                        SquareClass::Square
                    );
                }
            }
            // Distributivity on a sample grid.
            for a in f.elems().step_by(3) {
                for b in f.elems().step_by(5) {
                    for c in f.elems().step_by(7) {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn square_product_rule_exhaustive() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121] {
            let f = Field::new(q).unwrap();
            for a in 1..f.order() {
                for b in 1..f.order() {
                    let ca = f.square_classify(Elem(a)).unwrap();
                    let cb = f.square_classify(Elem(b)).unwrap();
                    let cab = f.square_classify(f.mul(Elem(a), Elem(b))).unwrap();
                    let expect = if ca == cb {
                        SquareClass::Square
                    } else {
                        SquareClass::Nonsquare
                    };
                    assert_eq!(cab, expect);
                }
            }
        }
    }

    #[test]
    fn minus_one_square_iff_gamma_positive() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121] {
            let f = Field::new(q).unwrap();
            let minus_one = f.neg(Elem::ONE);
            let cls = f.square_classify(minus_one).unwrap();
            if f.gamma() == 1 {
                assert_eq!(cls, SquareClass::Square, "q = {q}");
            } else {
                assert_eq!(cls, SquareClass::Nonsquare, "q = {q}");
            }
        }
    }

    #[test]
    fn char_two_allowed_for_geometry_only() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.square_classify(Elem(1)).unwrap_err(), FieldError::CharTwo);
    }
}
