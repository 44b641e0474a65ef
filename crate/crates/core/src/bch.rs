//! Binary BCH codes: construction from a designed correction capability,
//! systematic encoding, and Berlekamp–Massey + Chien-search decoding.
//!
//! Codewords are laid out systematically: the first k positions carry the
//! message, the remaining n - k the parity. Decoding failure is an in-band
//! result (the received word is passed through unchanged with
//! `success = false`), because the frame decoder has no failure branch and
//! simply keeps going with the uncorrected column.

use std::sync::Arc;

use crate::galois::{BinaryPolynomial, GaloisField};

/// A primitive narrow-sense binary BCH code (n, k, t) with n = 2^m - 1.
#[derive(Debug, Clone)]
pub struct OuterCode {
    n: usize,
    k: usize,
    t: usize,
    generator: BinaryPolynomial,
    field: Arc<GaloisField>,
}

impl OuterCode {
    /// Constructs the (2^m - 1, k, t) code whose generator is the LCM of the
    /// minimal polynomials of alpha, alpha^2, ..., alpha^2t.
    ///
    /// The stored `t` is the Bose designed capability of the resulting
    /// generator (the run of consecutive roots can extend past 2t, e.g.
    /// requesting t = 4 at n = 31 yields the (31, 11) code whose designed
    /// capability is 5). Returns `None` when fewer than 2 message bits
    /// remain or when t exceeds the enumeration bound 2^(m-2) - 1.
    pub fn construct(m: u32, t: usize) -> Option<Self> {
        if t >= (1usize << m) / 4 {
            return None;
        }
        Self::construct_unbounded(m, t)
    }

    /// Same as [`OuterCode::construct`] without the t-enumeration bound;
    /// any designed t up to (n-1)/2 is attempted.
    pub fn construct_unbounded(m: u32, t: usize) -> Option<Self> {
        let field = Arc::new(GaloisField::new(m).ok()?);
        let n = field.order();
        if t == 0 || 2 * t >= n {
            return None;
        }
        // LCM of minimal polynomials = product over distinct conjugacy classes.
        let mut seen = std::collections::HashSet::new();
        let mut generator = BinaryPolynomial::one();
        for p in 1..=(2 * t) {
            let mp = field.minimal_polynomial(p);
            if seen.insert(mp.clone()) {
                generator = generator.mul(&mp);
            }
        }
        let k = n.checked_sub(generator.degree().expect("nonzero generator"))?;
        if k < 2 {
            return None;
        }
        // Bose capability: longest run of consecutive roots alpha^1..alpha^d.
        let mut d = 2 * t;
        while d + 1 < n && generator.eval(&field, field.alpha_pow((d + 1) as i64)) == 0 {
            d += 1;
        }
        Some(Self {
            n,
            k,
            t: d / 2,
            generator,
            field,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Designed correction capability in bits.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator(&self) -> &BinaryPolynomial {
        &self.generator
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// Systematic encoding: message in positions [0, k), parity in [k, n).
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        assert_eq!(message.len(), self.k, "message length must equal k");
        let shift = self.n - self.k;
        let mut poly = BinaryPolynomial::zero();
        for (j, &bit) in message.iter().enumerate() {
            if bit != 0 {
                poly.set_coeff(shift + j, true);
            }
        }
        let parity = poly.rem(&self.generator);
        let mut out = Vec::with_capacity(self.n);
        out.extend_from_slice(message);
        for i in 0..shift {
            out.push(parity.coeff(i) as u8);
        }
        out
    }

    /// Maps a codeword vector index to its coefficient index in the codeword
    /// polynomial c(x) = m(x) x^(n-k) + r(x).
    fn poly_pos(&self, vec_idx: usize) -> usize {
        let shift = self.n - self.k;
        if vec_idx < self.k {
            shift + vec_idx
        } else {
            vec_idx - self.k
        }
    }

    fn vec_pos(&self, poly_idx: usize) -> usize {
        let shift = self.n - self.k;
        if poly_idx >= shift {
            poly_idx - shift
        } else {
            self.k + poly_idx
        }
    }

    fn syndromes(&self, received: &[u8]) -> Vec<u16> {
        let f = &self.field;
        (1..=(2 * self.t))
            .map(|i| {
                let mut s: u16 = 0;
                for (v, &bit) in received.iter().enumerate() {
                    if bit != 0 {
                        s ^= f.alpha_pow((self.poly_pos(v) * i) as i64);
                    }
                }
                s
            })
            .collect()
    }

    /// Syndrome decoding via Berlekamp–Massey and Chien search.
    ///
    /// Returns the corrected word, the number of bits flipped, and a success
    /// flag. With `success = true` the returned word is always a valid
    /// codeword; on failure the received word is returned unmodified.
    pub fn correct(&self, received: &[u8]) -> (Vec<u8>, usize, bool) {
        assert_eq!(received.len(), self.n, "received length must equal n");
        let syndromes = self.syndromes(received);
        if syndromes.iter().all(|&s| s == 0) {
            return (received.to_vec(), 0, true);
        }
        let Some(locator) = self.berlekamp_massey(&syndromes) else {
            return (received.to_vec(), 0, false);
        };
        let deg = locator.len() - 1;
        if deg == 0 || deg > self.t {
            return (received.to_vec(), 0, false);
        }
        // Chien search: error at polynomial position e iff Lambda(alpha^-e) = 0.
        let f = &self.field;
        let mut error_positions = Vec::with_capacity(deg);
        for e in 0..self.n {
            let x = f.alpha_pow(-(e as i64));
            let mut acc: u16 = 0;
            for &c in locator.iter().rev() {
                acc = f.mul(acc, x) ^ c;
            }
            if acc == 0 {
                error_positions.push(e);
            }
        }
        if error_positions.len() != deg {
            return (received.to_vec(), 0, false);
        }
        let mut corrected = received.to_vec();
        for &e in &error_positions {
            let v = self.vec_pos(e);
            corrected[v] ^= 1;
        }
        // Guard against a consistent-looking locator that does not produce a
        // codeword (possible when more than t errors occurred).
        if self.syndromes(&corrected).iter().any(|&s| s != 0) {
            return (received.to_vec(), 0, false);
        }
        (corrected, error_positions.len(), true)
    }

    /// Berlekamp–Massey over GF(2^m); returns the error-locator coefficients
    /// (Lambda_0 = 1 first) or None if the LFSR synthesis is inconsistent.
    fn berlekamp_massey(&self, syndromes: &[u16]) -> Option<Vec<u16>> {
        let f = &self.field;
        let mut lambda: Vec<u16> = vec![1];
        let mut prev: Vec<u16> = vec![1];
        let mut l: usize = 0;
        let mut shift: usize = 1;
        let mut prev_disc: u16 = 1;
        for i in 0..syndromes.len() {
            let mut disc = syndromes[i];
            for j in 1..=l.min(lambda.len() - 1) {
                disc ^= f.mul(lambda[j], syndromes[i - j]);
            }
            if disc == 0 {
                shift += 1;
                continue;
            }
            let scale = f.div(disc, prev_disc);
            let mut next = lambda.clone();
            if next.len() < prev.len() + shift {
                next.resize(prev.len() + shift, 0);
            }
            for (j, &c) in prev.iter().enumerate() {
                next[j + shift] ^= f.mul(scale, c);
            }
            if 2 * l <= i {
                prev = lambda;
                prev_disc = disc;
                l = i + 1 - l;
                shift = 1;
            } else {
                shift += 1;
            }
            lambda = next;
        }
        while lambda.len() > 1 && *lambda.last().unwrap() == 0 {
            lambda.pop();
        }
        (lambda.len() - 1 == l).then_some(lambda)
    }
}
