//! BPSK modulation over AWGN and block-Rayleigh fading, LLR generation, and
//! Rayleigh state-space discretization.
//!
//! All randomness flows through a seeded counter-based generator; identical
//! seeds produce identical LLR streams, and Monte Carlo workers derive
//! independent streams from (seed, frame index).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Normal};
use serde::Serialize;

use crate::polar::noise_variance;
use crate::{Error, Result};

/// 64-bit seed newtype; identical seeds give identical sample streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Independent stream for a (seed, index) pair.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }
}

/// One discretized fading state: mean SNR and occupancy probability.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChannelState {
    pub snr_db: f64,
    pub prob: f64,
}

/// Channel model: AWGN at a fixed SNR, or block-Rayleigh fading around an
/// average SNR with a discretized state profile for analysis.
#[derive(Debug, Clone, Serialize)]
pub enum ChannelSpec {
    Awgn {
        snr_db: f64,
    },
    Rayleigh {
        avg_snr_db: f64,
        /// State means are strictly increasing; probabilities sum to 1.
        states: Vec<ChannelState>,
    },
}

impl ChannelSpec {
    pub fn awgn(snr_db: f64) -> Self {
        ChannelSpec::Awgn { snr_db }
    }

    /// Discretizes the exponential SNR distribution of Rayleigh fading into
    /// `s_count` equiprobable-quantile states. Each state carries its
    /// conditional mean SNR, computed in closed form for the truncated
    /// exponential, and probability 1/S.
    pub fn rayleigh(avg_snr_db: f64, s_count: usize) -> Result<Self> {
        if s_count == 0 {
            return Err(Error::InvalidParameter("state count must be >= 1".into()));
        }
        let mean = 10f64.powf(avg_snr_db / 10.0);
        let s = s_count as f64;
        // Quantile boundaries a_i = -mean ln(1 - i/S), i = 0..S (a_S = inf).
        // Conditional mean on [a, b]: mean + (a e^(-a/mean) - b e^(-b/mean)) / (e^(-a/mean) - e^(-b/mean)).
        let mut states = Vec::with_capacity(s_count);
        for i in 0..s_count {
            let lo_tail = 1.0 - i as f64 / s; // e^(-a/mean)
            let hi_tail = 1.0 - (i + 1) as f64 / s; // e^(-b/mean)
            let a = -mean * lo_tail.ln();
            let cond_mean = if i + 1 == s_count {
                mean + a
            } else {
                let b = -mean * hi_tail.ln();
                mean + (a * lo_tail - b * hi_tail) / (lo_tail - hi_tail)
            };
            states.push(ChannelState {
                snr_db: 10.0 * cond_mean.log10(),
                prob: 1.0 / s,
            });
        }
        Ok(ChannelSpec::Rayleigh { avg_snr_db, states })
    }

    /// Nominal SNR in dB: the fixed SNR for AWGN, the average for Rayleigh.
    pub fn nominal_snr_db(&self) -> f64 {
        match self {
            ChannelSpec::Awgn { snr_db } => *snr_db,
            ChannelSpec::Rayleigh { avg_snr_db, .. } => *avg_snr_db,
        }
    }
}

/// Transmit output: per-symbol channel LLRs and the SNR actually seen by the
/// frame (equal to the nominal SNR for AWGN; includes the fading gain for
/// Rayleigh).
#[derive(Debug, Clone)]
pub struct TransmitOutput {
    pub llrs: Vec<f64>,
    pub realized_snr_db: f64,
}

/// BPSK-modulates `bits` (0 -> +1, 1 -> -1), passes them through the channel,
/// and returns exact LLRs 2 g y / sigma^2 with the fading gain g known to the
/// receiver (g = 1 for AWGN). Block fading: one gain per call.
pub fn transmit(bits: &[u8], spec: &ChannelSpec, seed: RngSeed) -> TransmitOutput {
    assert!(!bits.is_empty(), "transmit of empty bit vector");
    let mut rng = seed.stream(0);
    transmit_with(bits, spec, &mut rng)
}

/// Same as [`transmit`], drawing from a caller-managed generator (used by the
/// simulator to keep payload and noise on one per-frame stream).
pub fn transmit_with(bits: &[u8], spec: &ChannelSpec, rng: &mut ChaCha8Rng) -> TransmitOutput {
    let snr_db = spec.nominal_snr_db();
    let sigma2 = noise_variance(snr_db);
    let gain = match spec {
        ChannelSpec::Awgn { .. } => 1.0,
        ChannelSpec::Rayleigh { .. } => {
            // Squared gain is Exp(1): E[g^2] = 1 preserves the mean SNR.
            let power: f64 = Exp1.sample(rng);
            power.sqrt()
        }
    };
    let normal = Normal::new(0.0, sigma2.sqrt()).expect("valid sigma");
    let scale = 2.0 * gain / sigma2;
    let llrs = bits
        .iter()
        .map(|&b| {
            let x = if b == 0 { 1.0 } else { -1.0 };
            let y = gain * x + normal.sample(rng);
            scale * y
        })
        .collect();
    TransmitOutput {
        llrs,
        realized_snr_db: snr_db + 20.0 * gain.log10(),
    }
}
