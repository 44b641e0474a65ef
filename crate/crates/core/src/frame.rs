//! Concatenated frame construction and the two frame decoders: FEC-assisted
//! lockstep decoding and the plain SC baseline.
//!
//! Frame geometry (one super-segment): the payload chunk is zero-padded to
//! k_o * k_p bits and arranged row-major into a k_o x k_p matrix (payload bit
//! j sits at row j / k_p, column j mod k_p). Each column is outer-encoded to
//! n_o bits, giving the extended n_o x k_p matrix; row z is then the message
//! of polar block z, mapped onto the information positions in ascending
//! natural order. A frame is beta independent super-segments back to back.
//!
//! Serialized frame format: super-segments in order; within one, polar blocks
//! z = 1..n_o in order, each block's n_p coded bits in transmitted order;
//! packed MSB-first by [`pack_bits`].

use rayon::prelude::*;

use crate::bch::OuterCode;
use crate::polar::{PolarCode, ScDecoderState};
use crate::{Error, Result};

/// A polar code, an outer BCH code, and the number of super-segments.
#[derive(Debug, Clone)]
pub struct ConcatenatedScheme {
    pub polar: PolarCode,
    pub outer: OuterCode,
    pub beta: usize,
}

impl ConcatenatedScheme {
    pub fn new(polar: PolarCode, outer: OuterCode, beta: usize) -> Result<Self> {
        if beta == 0 {
            return Err(Error::InvalidParameter("beta must be >= 1".into()));
        }
        Ok(Self { polar, outer, beta })
    }

    /// Transmitted frame length beta * n_o * n_p.
    pub fn l_phy(&self) -> usize {
        self.beta * self.outer.n() * self.polar.n()
    }

    /// Deliverable payload length beta * k_o * k_p.
    pub fn l_mac(&self) -> usize {
        self.beta * self.outer.k() * self.polar.k()
    }

    /// Overall code rate r_o * r_p.
    pub fn rate(&self) -> f64 {
        self.outer.rate() * self.polar.rate()
    }
}

/// Result of a frame decode.
#[derive(Debug, Clone)]
pub struct DecodedFrame {
    /// The reconstructed payload, beta * k_o * k_p bits (padding included).
    pub payload: Vec<u8>,
    /// Decided pre-polar matrix, row-major per segment: bit (seg, z, v) at
    /// index (seg * n_o + z) * k_p + v.
    pub extended: Vec<u8>,
    /// Per-column outer-decode success flags (beta * k_p entries), in
    /// decoding order. Empty for the SC baseline.
    pub column_ok: Vec<bool>,
}

/// Encodes a payload of up to `l_mac` bits into a `l_phy`-bit frame.
pub fn encode(scheme: &ConcatenatedScheme, payload: &[u8]) -> Vec<u8> {
    encode_layout(scheme, payload).0
}

/// Encode that also returns the extended matrix (the per-block messages
/// before polar encoding), used as ground truth by simulation and tests.
pub fn encode_layout(scheme: &ConcatenatedScheme, payload: &[u8]) -> (Vec<u8>, Vec<u8>) {
    assert!(payload.len() <= scheme.l_mac(), "payload exceeds L_MAC");
    let polar = &scheme.polar;
    let outer = &scheme.outer;
    let (n_o, k_o, k_p) = (outer.n(), outer.k(), polar.k());
    let seg_payload_len = k_o * k_p;
    let info = polar.info_positions();

    let mut frame = Vec::with_capacity(scheme.l_phy());
    let mut extended = Vec::with_capacity(scheme.beta * n_o * k_p);
    for seg in 0..scheme.beta {
        let base = seg * seg_payload_len;
        let bit = |j: usize| -> u8 {
            if base + j < payload.len() {
                payload[base + j]
            } else {
                0
            }
        };
        // Outer-encode each column of the k_o x k_p message matrix.
        let mut columns = Vec::with_capacity(k_p);
        for v in 0..k_p {
            let col: Vec<u8> = (0..k_o).map(|z| bit(z * k_p + v)).collect();
            columns.push(outer.encode(&col));
        }
        // Row z of the extended matrix is the message of polar block z.
        for z in 0..n_o {
            let mut u = vec![0u8; polar.n()];
            for (v, col) in columns.iter().enumerate() {
                u[info[v]] = col[z];
                extended.push(col[z]);
            }
            frame.extend(polar.encode_u(&u));
        }
    }
    (frame, extended)
}

/// How the column corrections of the FEC-assisted decoder are produced.
enum ColumnCorrector<'a> {
    Outer(&'a OuterCode),
    /// Ground-truth extended matrix (genie-aided diagnostic mode).
    Genie(&'a [u8]),
}

/// FEC-assisted decode: the n_o SC decoders of each super-segment advance in
/// lockstep; every decided column is corrected by the outer code and the
/// corrections are pushed back as newly frozen values.
pub fn decode_fec_assisted(scheme: &ConcatenatedScheme, llrs: &[f64]) -> DecodedFrame {
    decode_lockstep(
        scheme,
        llrs,
        ColumnCorrector::Outer(&scheme.outer),
        false,
        None,
    )
}

/// Same, with the per-segment decoder fan-out across `n_o` workers enabled.
/// Produces bit-identical output to the serial path.
pub fn decode_fec_assisted_parallel(scheme: &ConcatenatedScheme, llrs: &[f64]) -> DecodedFrame {
    decode_lockstep(
        scheme,
        llrs,
        ColumnCorrector::Outer(&scheme.outer),
        true,
        None,
    )
}

/// Diagnostic decode with corrections taken from the true extended matrix
/// instead of the outer decoder.
pub fn decode_genie_aided(
    scheme: &ConcatenatedScheme,
    llrs: &[f64],
    true_extended: &[u8],
) -> DecodedFrame {
    decode_lockstep(
        scheme,
        llrs,
        ColumnCorrector::Genie(true_extended),
        false,
        None,
    )
}

/// FEC-assisted decode that additionally records every column as decided
/// *before* correction (for lockstep-equivalence checks).
pub fn decode_fec_assisted_traced(
    scheme: &ConcatenatedScheme,
    llrs: &[f64],
) -> (DecodedFrame, Vec<Vec<u8>>) {
    let mut trace = Vec::new();
    let decoded = decode_lockstep(
        scheme,
        llrs,
        ColumnCorrector::Outer(&scheme.outer),
        false,
        Some(&mut trace),
    );
    (decoded, trace)
}

fn decode_lockstep(
    scheme: &ConcatenatedScheme,
    llrs: &[f64],
    corrector: ColumnCorrector<'_>,
    parallel: bool,
    mut trace: Option<&mut Vec<Vec<u8>>>,
) -> DecodedFrame {
    assert_eq!(llrs.len(), scheme.l_phy(), "LLR length must equal L_PHY");
    let polar = &scheme.polar;
    let (n_o, n_p, k_p) = (scheme.outer.n(), polar.n(), polar.k());
    let info = polar.info_positions();

    let mut extended = vec![0u8; scheme.beta * n_o * k_p];
    let mut column_ok = Vec::with_capacity(scheme.beta * k_p);
    for seg in 0..scheme.beta {
        let seg_llrs = &llrs[seg * n_o * n_p..(seg + 1) * n_o * n_p];
        let mut states: Vec<ScDecoderState> = (0..n_o)
            .map(|z| ScDecoderState::new(polar, &seg_llrs[z * n_p..(z + 1) * n_p]))
            .collect();
        for (v, &pos) in info.iter().enumerate() {
            // Advance every decoder through the frozen run up to and
            // including the v-th information position (the column barrier).
            let advance = |st: &mut ScDecoderState| -> u8 {
                let mut decision = 0;
                while st.next_bit() <= pos {
                    let (b, d, _) = st.decode_next(polar);
                    if b == pos {
                        decision = d;
                    }
                }
                decision
            };
            let column: Vec<u8> = if parallel {
                states.par_iter_mut().map(advance).collect()
            } else {
                states.iter_mut().map(advance).collect()
            };
            if let Some(t) = trace.as_deref_mut() {
                t.push(column.clone());
            }
            let (corrected, ok) = match corrector {
                ColumnCorrector::Outer(outer) => {
                    let (corrected, _, ok) = outer.correct(&column);
                    (corrected, ok)
                }
                ColumnCorrector::Genie(truth) => {
                    let corrected: Vec<u8> =
                        (0..n_o).map(|z| truth[(seg * n_o + z) * k_p + v]).collect();
                    (corrected, true)
                }
            };
            column_ok.push(ok);
            for (z, st) in states.iter_mut().enumerate() {
                if corrected[z] != column[z] {
                    st.override_last(polar, pos, corrected[z]);
                }
                extended[(seg * n_o + z) * k_p + v] = corrected[z];
            }
        }
        // Drain trailing frozen positions so every decoder finishes cleanly.
        for st in &mut states {
            st.decode_all(polar);
        }
    }
    DecodedFrame {
        payload: payload_from_extended(scheme, &extended),
        extended,
        column_ok,
    }
}

/// Plain SC baseline: each polar block is decoded independently start to
/// finish; the outer code is only a payload-layout container.
pub fn decode_sc_baseline(scheme: &ConcatenatedScheme, llrs: &[f64]) -> DecodedFrame {
    assert_eq!(llrs.len(), scheme.l_phy(), "LLR length must equal L_PHY");
    let polar = &scheme.polar;
    let (n_o, n_p, k_p) = (scheme.outer.n(), polar.n(), polar.k());
    let info = polar.info_positions();
    let mut extended = vec![0u8; scheme.beta * n_o * k_p];
    for seg in 0..scheme.beta {
        for z in 0..n_o {
            let block = seg * n_o + z;
            let u = crate::polar::sc_decode(polar, &llrs[block * n_p..(block + 1) * n_p]);
            for (v, &pos) in info.iter().enumerate() {
                extended[block * k_p + v] = u[pos];
            }
        }
    }
    DecodedFrame {
        payload: payload_from_extended(scheme, &extended),
        extended,
        column_ok: Vec::new(),
    }
}

/// Extracts the beta * k_o * k_p payload bits (first k_o rows per segment).
fn payload_from_extended(scheme: &ConcatenatedScheme, extended: &[u8]) -> Vec<u8> {
    let (n_o, k_o, k_p) = (scheme.outer.n(), scheme.outer.k(), scheme.polar.k());
    let mut payload = Vec::with_capacity(scheme.l_mac());
    for seg in 0..scheme.beta {
        for z in 0..k_o {
            for v in 0..k_p {
                payload.push(extended[(seg * n_o + z) * k_p + v]);
            }
        }
    }
    payload
}

/// Packs a bit vector into bytes, most significant bit first; the final byte
/// is zero-padded.
pub fn pack_bits(bits: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        if b != 0 {
            out[i / 8] |= 0x80 >> (i % 8);
        }
    }
    out
}

/// Inverse of [`pack_bits`] for a known bit count.
pub fn unpack_bits(bytes: &[u8], n_bits: usize) -> Vec<u8> {
    (0..n_bits)
        .map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1)
        .collect()
}
