//! Arithmetic over GF(2^m) and polynomials over GF(2).
//!
//! Field elements are stored as integers whose bits are the coefficients of
//! the polynomial representation (bit 0 = constant term). Multiplication and
//! inversion go through log/antilog tables built once at construction, so a
//! [`GaloisField`] is immutable afterwards and safe to share across threads.

use crate::{Error, Result};

/// Smallest supported extension degree (outer code length 7).
pub const MIN_M: u32 = 3;
/// Largest supported extension degree (outer code length 511).
pub const MAX_M: u32 = 9;

/// Conventional minimal-weight primitive polynomial for each m in [3, 9],
/// indexed by m - 3. Fixing these makes codewords bit-exact across runs.
const PRIMITIVE_POLYS: [u32; 7] = [
    0b1011,       // m=3: x^3 + x + 1
    0b10011,      // m=4: x^4 + x + 1
    0b100101,     // m=5: x^5 + x^2 + 1
    0b1000011,    // m=6: x^6 + x + 1
    0b10001001,   // m=7: x^7 + x^3 + 1
    0b100011101,  // m=8: x^8 + x^4 + x^3 + x^2 + 1
    0b1000010001, // m=9: x^9 + x^4 + 1
];

/// GF(2^m) with precomputed log/antilog tables.
#[derive(Debug, Clone)]
pub struct GaloisField {
    m: u32,
    primitive_poly: u32,
    /// antilog[i] = alpha^i, for i in [0, 2^m - 2].
    antilog: Vec<u16>,
    /// log[x] = i such that alpha^i = x, for x in [1, 2^m - 1]; log[0] unused.
    log: Vec<u16>,
}

impl GaloisField {
    /// Builds GF(2^m) from the fixed conventional primitive polynomial.
    pub fn new(m: u32) -> Result<Self> {
        if !(MIN_M..=MAX_M).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "extension degree m must be in [{MIN_M}, {MAX_M}], got {m}"
            )));
        }
        let primitive_poly = PRIMITIVE_POLYS[(m - MIN_M) as usize];
        let order = (1usize << m) - 1;
        let mut antilog = vec![0u16; order];
        let mut log = vec![0u16; order + 1];
        let mut x: u32 = 1;
        for (i, slot) in antilog.iter_mut().enumerate() {
            *slot = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= primitive_poly;
            }
        }
        debug_assert_eq!(x, 1, "alpha must have multiplicative order 2^m - 1");
        Ok(Self {
            m,
            primitive_poly,
            antilog,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Multiplicative group order, 2^m - 1.
    pub fn order(&self) -> usize {
        self.antilog.len()
    }

    /// alpha^i (exponent taken mod 2^m - 1, negative allowed).
    pub fn alpha_pow(&self, i: i64) -> u16 {
        let order = self.order() as i64;
        self.antilog[i.rem_euclid(order) as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, x: u16) -> u16 {
        assert!(
            x != 0 && (x as usize) <= self.order(),
            "log of invalid element {x}"
        );
        self.log[x as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log(a) as usize + self.log(b) as usize;
        self.antilog[s % self.order()]
    }

    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero");
        let order = self.order();
        self.antilog[(order - self.log(a) as usize) % order]
    }

    pub fn div(&self, a: u16, b: u16) -> u16 {
        self.mul(a, self.inv(b))
    }

    /// Minimal polynomial of alpha^element_power over GF(2): the product of
    /// (x + alpha^c) over the conjugacy class {p, 2p, 4p, ...} mod 2^m - 1.
    pub fn minimal_polynomial(&self, element_power: usize) -> BinaryPolynomial {
        assert!(element_power < self.order(), "element power out of range");
        let order = self.order();
        let mut coset = Vec::new();
        let mut c = element_power;
        loop {
            coset.push(c);
            c = (c * 2) % order;
            if c == element_power {
                break;
            }
        }
        // Product over the coset, with coefficients in GF(2^m); the result is
        // guaranteed to have coefficients in {0, 1}.
        let mut coeffs: Vec<u16> = vec![1];
        for &p in &coset {
            let root = self.alpha_pow(p as i64);
            let mut next = vec![0u16; coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] ^= a;
                next[i] ^= self.mul(a, root);
            }
            coeffs = next;
        }
        let bits: Vec<u8> = coeffs
            .iter()
            .map(|&a| {
                debug_assert!(a <= 1, "minimal polynomial coefficient not binary");
                a as u8
            })
            .collect();
        BinaryPolynomial::from_coeffs(&bits)
    }
}

/// Dense polynomial over GF(2), lowest degree first, bit-packed in u64 words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    /// x^n.
    pub fn x_pow(n: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(n, true);
        p
    }

    /// Builds from 0/1 coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.set_coeff(i, true);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Degree of the polynomial; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        let wi = i / 64;
        if wi >= self.words.len() {
            if !value {
                return;
            }
            self.words.resize(wi + 1, 0);
        }
        if value {
            self.words[wi] |= 1 << (i % 64);
        } else {
            self.words[wi] &= !(1 << (i % 64));
        }
    }

    /// Addition over GF(2) (XOR of coefficients).
    pub fn add(&self, rhs: &Self) -> Self {
        let mut words = vec![0u64; self.words.len().max(rhs.words.len())];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ rhs.words.get(i).copied().unwrap_or(0);
        }
        Self { words }
    }

    pub fn shl(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        let deg = self.degree().unwrap();
        out.words.resize((deg + n) / 64 + 1, 0);
        for i in 0..=deg {
            if self.coeff(i) {
                out.words[(i + n) / 64] |= 1 << ((i + n) % 64);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc = Self::zero();
        let Some(deg) = self.degree() else { return acc };
        for i in 0..=deg {
            if self.coeff(i) {
                acc = acc.add(&rhs.shl(i));
            }
        }
        acc
    }

    /// Remainder of self modulo divisor. Panics on a zero divisor.
    pub fn rem(&self, divisor: &Self) -> Self {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let mut r = self.clone();
        while let Some(r_deg) = r.degree() {
            if r_deg < d_deg {
                break;
            }
            r = r.add(&divisor.shl(r_deg - d_deg));
        }
        r
    }

    /// Evaluates the polynomial at a GF(2^m) element by Horner's rule.
    pub fn eval(&self, field: &GaloisField, x: u16) -> u16 {
        let Some(deg) = self.degree() else { return 0 };
        let mut acc: u16 = 0;
        for i in (0..=deg).rev() {
            acc = field.mul(acc, x);
            if self.coeff(i) {
                acc ^= 1;
            }
        }
        acc
    }
}

impl std::fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for i in (0..=deg).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}
