//! Polar encoding, Gaussian-approximation bit-channel analysis, code
//! construction, and a pausable per-bit SC decoder.
//!
//! Conventions used throughout the crate:
//!
//! * BPSK maps bit 0 to +1 and bit 1 to -1; the SNR gamma (dB) is the symbol
//!   SNR with total noise variance sigma^2 = 10^(-gamma/10), so the exact
//!   channel LLR is l = 2y/sigma^2 and the GA recursion terminates at
//!   E(l) = 2/sigma^2.
//! * Bit-channel indices are 0-based internally. The degradation order `w`
//!   sorts indices from most to least degraded.
//! * The encoder computes c = (F^T)^(kron i) B u with the lower-triangular
//!   kernel F = [[1,0],[1,1]] and the bit-reversal permutation B; the decoder
//!   consumes channel LLRs in transmitted order and applies B internally, so
//!   encode and decode compose without any external reordering.

use crate::{Error, Result};

/// Clip for noiseless/infinite channel LLRs, in natural-log units.
pub const LLR_CLIP: f64 = 300.0;

/// Q-function: upper tail of the standard normal distribution.
pub fn q_func(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(x / std::f64::consts::SQRT_2)
}

/// Noise variance for a symbol SNR in dB under the crate's convention.
pub fn noise_variance(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// The check-node reliability transfer function phi, in the fitted
/// exponential model for 0 < x <= 10 and the asymptotic form above.
fn phi(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x <= 10.0 {
        f64::exp(-0.4527 * x.powf(0.86) + 0.0218).min(1.0)
    } else {
        (std::f64::consts::PI / x).sqrt() * f64::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x))
    }
}

/// Inverse of [`phi`] by bisection on [0, 100]; phi is monotone decreasing.
/// Values below phi(100) saturate at 100 (the corresponding bit-channel error
/// probability is below 1e-12 and indistinguishable for construction).
fn phi_inv(y: f64) -> f64 {
    if y >= 1.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 100.0f64);
    if y <= phi(hi) {
        return hi;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Result of the Gaussian-approximation bit-channel analysis.
#[derive(Debug, Clone)]
pub struct GaResult {
    /// Mean LLR per bit channel, natural (decoding) order.
    pub means: Vec<f64>,
    /// Error probability per bit channel, natural order.
    pub eps: Vec<f64>,
    /// Bit-channel indices sorted most- to least-degraded (0-based).
    pub order: Vec<usize>,
}

/// Tracks mean LLRs through the polar recursion and converts them to
/// per-bit-channel error probabilities eps_b = Q(sqrt(E(l_b)/2)).
///
/// Odd-numbered bit channels (0-based even index) take the check-node
/// degradation phi_inv(1 - (1 - phi(E))^2); the others double the mean.
pub fn ga_analyze(n: usize, snr_db: f64) -> Result<GaResult> {
    if !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "polar length {n} is not a power of two"
        )));
    }
    if !snr_db.is_finite() {
        return Err(Error::InvalidParameter("SNR must be finite".into()));
    }
    let mut means = vec![2.0 / noise_variance(snr_db)];
    while means.len() < n {
        let half = means;
        let mut next = vec![0.0; half.len() * 2];
        for (j, value) in next.iter_mut().enumerate() {
            let child = half[j >> 1];
            *value = if j % 2 == 0 {
                let p = phi(child);
                phi_inv(1.0 - (1.0 - p) * (1.0 - p))
            } else {
                2.0 * child
            };
        }
        means = next;
    }
    let eps: Vec<f64> = means.iter().map(|&m| q_func((m / 2.0).sqrt())).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // Most degraded first; ties broken by ascending natural index.
    order.sort_by(|&a, &b| eps[b].partial_cmp(&eps[a]).unwrap().then(a.cmp(&b)));
    Ok(GaResult { means, eps, order })
}

/// A polar code: the six-tuple (n, k, frozen set, frozen values, degradation
/// order, bit-channel error probabilities).
#[derive(Debug, Clone)]
pub struct PolarCode {
    n: usize,
    k: usize,
    stages: u32,
    frozen: Vec<bool>,
    frozen_values: Vec<u8>,
    order: Vec<usize>,
    eps: Vec<f64>,
    /// Information positions in ascending natural order.
    info_positions: Vec<usize>,
    design_snr_db: f64,
}

impl PolarCode {
    /// Builds the code for a design SNR: the n - k most degraded bit channels
    /// under GA are frozen to zero.
    pub fn construct(n: usize, k: usize, snr_db: f64) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "k_p = {k} exceeds n_p = {n}"
            )));
        }
        let ga = ga_analyze(n, snr_db)?;
        Ok(Self::from_ga(n, k, snr_db, &ga))
    }

    /// Same, reusing an existing GA run for this (n, snr).
    pub fn from_ga(n: usize, k: usize, snr_db: f64, ga: &GaResult) -> Self {
        assert!(k <= n && ga.eps.len() == n);
        let mut frozen = vec![false; n];
        for &b in &ga.order[..n - k] {
            frozen[b] = true;
        }
        let mut info_positions: Vec<usize> = ga.order[n - k..].to_vec();
        info_positions.sort_unstable();
        Self {
            n,
            k,
            stages: n.trailing_zeros(),
            frozen,
            frozen_values: vec![0; n],
            order: ga.order.clone(),
            eps: ga.eps.clone(),
            info_positions,
            design_snr_db: snr_db,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn design_snr_db(&self) -> f64 {
        self.design_snr_db
    }

    pub fn is_frozen(&self, b: usize) -> bool {
        self.frozen[b]
    }

    /// Frozen positions in ascending natural order.
    pub fn frozen_positions(&self) -> Vec<usize> {
        (0..self.n).filter(|&b| self.frozen[b]).collect()
    }

    /// Information positions in ascending natural order.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// Degradation order (most degraded first, 0-based).
    pub fn degradation_order(&self) -> &[usize] {
        &self.order
    }

    /// GA error probability per bit channel, natural order.
    pub fn bit_channel_eps(&self) -> &[f64] {
        &self.eps
    }

    /// GA error probabilities of the information set, worst channel first.
    pub fn info_eps(&self) -> Vec<f64> {
        self.order[self.n - self.k..]
            .iter()
            .map(|&b| self.eps[b])
            .collect()
    }

    /// Assembles the input vector u: frozen values on the frozen set, message
    /// bits on the information set in degradation order (most degraded
    /// information position gets message bit 0).
    pub fn assemble_u(&self, message: &[u8]) -> Vec<u8> {
        assert_eq!(message.len(), self.k, "message length must equal k");
        let mut u = self.frozen_values.clone();
        for (j, &b) in self.order[self.n - self.k..].iter().enumerate() {
            u[b] = message[j];
        }
        u
    }

    /// Extracts the message from a decoded u vector (inverse of
    /// [`PolarCode::assemble_u`]).
    pub fn extract_message(&self, u: &[u8]) -> Vec<u8> {
        self.order[self.n - self.k..]
            .iter()
            .map(|&b| u[b])
            .collect()
    }

    /// Encodes a k-bit message.
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        self.encode_u(&self.assemble_u(message))
    }

    /// Applies the transform c = (F^T)^(kron i) B u to a full input vector.
    /// The transform is an involution: applying it twice yields the input.
    pub fn encode_u(&self, u: &[u8]) -> Vec<u8> {
        assert_eq!(u.len(), self.n, "input length must equal n");
        let mut v = vec![0u8; self.n];
        for (j, value) in v.iter_mut().enumerate() {
            *value = u[bit_reverse(j, self.stages)];
        }
        for s in 0..self.stages {
            let h = 1usize << s;
            for p in 0..self.n {
                if p & h == 0 {
                    v[p] ^= v[p | h];
                }
            }
        }
        v
    }
}

fn bit_reverse(x: usize, bits: u32) -> usize {
    let mut out = 0;
    for s in 0..bits {
        out |= ((x >> s) & 1) << (bits - 1 - s);
    }
    out
}

/// f-combine: 2 atanh(tanh(a/2) tanh(b/2)) evaluated in a stable log form.
fn f_combine(a: f64, b: f64) -> f64 {
    let sign_min = a.signum() * b.signum() * a.abs().min(b.abs());
    sign_min + f64::ln_1p(f64::exp(-(a + b).abs())) - f64::ln_1p(f64::exp(-(a - b).abs()))
}

/// g-combine: b + (1 - 2u) a.
fn g_combine(a: f64, b: f64, u: u8) -> f64 {
    if u == 0 {
        b + a
    } else {
        b - a
    }
}

/// Pausable per-bit SC decoder state for one codeword.
///
/// Decisions advance in natural order through [`ScDecoderState::decode_next`].
/// The most recent decision stays pending until the next advance (or
/// [`ScDecoderState::decode_all`]), which lets [`ScDecoderState::override_last`]
/// replace it before its partial sums are committed; later bits are then
/// decoded conditioned on the corrected value.
#[derive(Debug, Clone)]
pub struct ScDecoderState {
    n: usize,
    stages: u32,
    /// llr[s] holds the level-s values (level 0 = bit-reversed channel LLRs).
    llr: Vec<Vec<f64>>,
    /// bits[s] holds partial sums at level s; bits[stages] the decisions.
    bits: Vec<Vec<u8>>,
    decisions: Vec<u8>,
    next_bit: usize,
    pending: Option<usize>,
}

impl ScDecoderState {
    /// Positions the decoder before bit 0 for a length-n LLR vector in
    /// transmitted order. Inputs are clipped to +/-[`LLR_CLIP`].
    pub fn new(code: &PolarCode, channel_llrs: &[f64]) -> Self {
        assert_eq!(channel_llrs.len(), code.n, "LLR length must equal n");
        let stages = code.stages;
        let mut level0 = vec![0.0; code.n];
        for (j, value) in level0.iter_mut().enumerate() {
            *value = channel_llrs[bit_reverse(j, stages)].clamp(-LLR_CLIP, LLR_CLIP);
        }
        let mut llr = vec![level0];
        for _ in 0..stages {
            llr.push(vec![0.0; code.n]);
        }
        Self {
            n: code.n,
            stages,
            llr,
            bits: vec![vec![0u8; code.n]; stages as usize + 1],
            decisions: vec![0; code.n],
            next_bit: 0,
            pending: None,
        }
    }

    /// Natural index of the next undecoded position.
    pub fn next_bit(&self) -> usize {
        self.next_bit
    }

    /// Decides the next bit in natural order. Frozen positions copy the
    /// frozen value; information positions threshold the bit LLR (l >= 0
    /// decides 0, the tie at exactly zero included).
    pub fn decode_next(&mut self, code: &PolarCode) -> (usize, u8, bool) {
        assert!(self.next_bit < self.n, "decode past the final bit");
        self.commit_pending();
        let b = self.next_bit;
        let llr = self.bit_llr(b);
        let frozen = code.frozen[b];
        let decision = if frozen {
            code.frozen_values[b]
        } else if llr >= 0.0 {
            0
        } else {
            1
        };
        self.decisions[b] = decision;
        self.pending = Some(b);
        self.next_bit += 1;
        (b, decision, frozen)
    }

    /// Replaces the decision at `bit_index`, which must be the most recently
    /// decided information position; partial sums are repaired on the next
    /// advance so later bits see the corrected value.
    pub fn override_last(&mut self, code: &PolarCode, bit_index: usize, corrected_bit: u8) {
        assert_eq!(
            self.pending,
            Some(bit_index),
            "can only override the last decided bit"
        );
        assert!(!code.frozen[bit_index], "cannot override a frozen position");
        self.decisions[bit_index] = corrected_bit;
    }

    /// All decisions made so far (positions >= the cursor are still zero).
    pub fn decisions(&self) -> &[u8] {
        &self.decisions
    }

    /// Runs the remaining positions with no outer involvement and returns the
    /// full decided u vector.
    pub fn decode_all(&mut self, code: &PolarCode) -> Vec<u8> {
        while self.next_bit < self.n {
            self.decode_next(code);
        }
        self.commit_pending();
        self.decisions.clone()
    }

    /// Computes the level-by-level LLRs along the path to leaf b and returns
    /// the bit LLR.
    fn bit_llr(&mut self, b: usize) -> f64 {
        let i = self.stages as usize;
        if i == 0 {
            return self.llr[0][0];
        }
        for s in 0..i {
            let size = self.n >> (s + 1);
            let base = (b >> (i - s)) << (i - s);
            let branch = (b >> (i - 1 - s)) & 1;
            if branch == 0 {
                for j in 0..size {
                    let a = self.llr[s][base + j];
                    let c = self.llr[s][base + j + size];
                    self.llr[s + 1][base + j] = f_combine(a, c);
                }
            } else {
                for j in 0..size {
                    let a = self.llr[s][base + j];
                    let c = self.llr[s][base + j + size];
                    let u = self.bits[s + 1][base + j];
                    self.llr[s + 1][base + size + j] = g_combine(a, c, u);
                }
            }
        }
        self.llr[i][b]
    }

    /// Commits the pending decision into the partial-sum tree.
    fn commit_pending(&mut self) {
        let Some(b) = self.pending.take() else { return };
        let i = self.stages as usize;
        self.bits[i][b] = self.decisions[b];
        let mut size = 1usize;
        for s in (0..i).rev() {
            if b % (2 * size) != 2 * size - 1 {
                break;
            }
            let base = (b / (2 * size)) * 2 * size;
            for j in 0..size {
                self.bits[s][base + j] =
                    self.bits[s + 1][base + j] ^ self.bits[s + 1][base + size + j];
                self.bits[s][base + size + j] = self.bits[s + 1][base + size + j];
            }
            size *= 2;
        }
    }
}

/// One-shot SC decode of a full codeword; returns the decided u vector.
pub fn sc_decode(code: &PolarCode, channel_llrs: &[f64]) -> Vec<u8> {
    ScDecoderState::new(code, channel_llrs).decode_all(code)
}
