//! BPSK over AWGN with flooding sum-product decoding.
//!
//! Every frame draws its noise from its own ChaCha stream keyed by
//! `(seed, snr index, frame index)`, and frames are processed in fixed-size
//! batches, so results do not depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::distance::gf2_rank;
use crate::error::{Error, Result};
use crate::matrix::ParityCheck;

/// Default LLR clipping magnitude.
pub const DEFAULT_CLIP: f64 = 30.0;

/// Frames drawn between early-termination checks.
const BATCH: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    /// Energy per information bit over noise density, in dB.
    pub ebn0_db: f64,
    /// Code rate `k / n` used for noise scaling.
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    /// Noise variance `1 / (2 R 10^(ebn0/10))` for unit-energy BPSK; zero
    /// when the SNR is infinite.
    pub fn noise_variance(&self) -> f64 {
        if self.ebn0_db == f64::INFINITY {
            return 0.0;
        }
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

/// `k / n` with `k` taken from the GF(2) rank of `h`.
pub fn design_rate(h: &ParityCheck) -> f64 {
    let n = h.cols();
    (n - gf2_rank(h)) as f64 / n as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub hard: Vec<u8>,
    /// Iterations run; 0 when the channel decision is already a codeword.
    pub iterations: usize,
    pub converged: bool,
}

/// Sum-product decoder with the edge layout of one parity-check matrix.
#[derive(Clone, Debug)]
pub struct Decoder {
    h: ParityCheck,
    /// `check_start[c]..check_start[c+1]` are the edges of check `c`.
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    /// Edge indices incident to each variable.
    var_edges: Vec<Vec<usize>>,
    pub clip: f64,
}

impl Decoder {
    pub fn new(h: &ParityCheck) -> Self {
        let mut check_start = vec![0];
        let mut edge_var = Vec::with_capacity(h.nnz());
        let mut var_edges = vec![Vec::new(); h.cols()];
        for row in h.row_supports() {
            for &v in row {
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
            check_start.push(edge_var.len());
        }
        Decoder {
            h: h.clone(),
            check_start,
            edge_var,
            var_edges,
            clip: DEFAULT_CLIP,
        }
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn parity_check(&self) -> &ParityCheck {
        &self.h
    }

    /// Decodes channel LLRs (positive favours 0), stopping as soon as the
    /// hard decision satisfies every check.
    pub fn decode(&self, llr: &[f64], max_iter: usize) -> Result<DecodeResult> {
        if llr.len() != self.n() {
            return Err(Error::SizeMismatch {
                left: llr.len(),
                right: self.n(),
            });
        }
        let clip = self.clip;
        let llr: Vec<f64> = llr.iter().map(|&l| l.clamp(-clip, clip)).collect();
        let mut hard: Vec<u8> = llr.iter().map(|&l| u8::from(l < 0.0)).collect();
        if self.h.is_codeword(&hard) {
            return Ok(DecodeResult {
                hard,
                iterations: 0,
                converged: true,
            });
        }
        let edges = self.edge_var.len();
        let mut v2c: Vec<f64> = self.edge_var.iter().map(|&v| llr[v]).collect();
        let mut c2v = vec![0.0; edges];
        let mut t = Vec::new();
        let mut suffix = Vec::new();
        for it in 1..=max_iter {
            for c in 0..self.h.rows() {
                let (lo, hi) = (self.check_start[c], self.check_start[c + 1]);
                t.clear();
                t.extend(v2c[lo..hi].iter().map(|&m| (m / 2.0).tanh()));
                // leave-one-out products without division
                suffix.clear();
                suffix.resize(t.len() + 1, 1.0);
                for i in (0..t.len()).rev() {
                    suffix[i] = suffix[i + 1] * t[i];
                }
                let mut prefix = 1.0;
                for i in 0..t.len() {
                    let p = prefix * suffix[i + 1];
                    c2v[lo + i] = (2.0 * p.atanh()).clamp(-clip, clip);
                    prefix *= t[i];
                }
            }
            for (v, es) in self.var_edges.iter().enumerate() {
                let total: f64 = llr[v] + es.iter().map(|&e| c2v[e]).sum::<f64>();
                hard[v] = u8::from(total < 0.0);
                for &e in es {
                    v2c[e] = (total - c2v[e]).clamp(-clip, clip);
                }
            }
            if self.h.is_codeword(&hard) {
                return Ok(DecodeResult {
                    hard,
                    iterations: it,
                    converged: true,
                });
            }
        }
        Ok(DecodeResult {
            hard,
            iterations: max_iter,
            converged: false,
        })
    }
}

/// Flooding sum-product decoding of `llr` on the Tanner graph of `h`.
pub fn sp_decode(h: &ParityCheck, llr: &[f64], max_iter: usize) -> Result<DecodeResult> {
    Decoder::new(h).decode(llr, max_iter)
}

/// Noise stream of one frame.
pub fn frame_rng(seed: u64, snr_index: u64, frame: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&snr_index.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(frame);
    rng
}

/// Channel LLRs `2y/σ²` for BPSK `x = 1 - 2c` plus Gaussian noise of
/// variance `sigma2`. A zero variance gives saturated noiseless LLRs.
pub fn channel_llrs(codeword: &[u8], sigma2: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    codeword
        .iter()
        .map(|&c| {
            let x = 1.0 - 2.0 * f64::from(c);
            if sigma2 == 0.0 {
                return x * f64::INFINITY;
            }
            let noise: f64 = StandardNormal.sample(rng);
            2.0 * (x + sigma2.sqrt() * noise) / sigma2
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SimOptions {
    pub max_frames: u64,
    /// Stop a point once this many frame errors are seen (checked between
    /// batches of frames).
    pub target_frame_errors: u64,
    pub max_iter: usize,
    pub clip: f64,
    pub seed: u64,
    /// Overrides the rate from the GF(2) rank.
    pub rate: Option<f64>,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            max_frames: 100_000,
            target_frame_errors: 100,
            max_iter: 100,
            clip: DEFAULT_CLIP,
            seed: 1,
            rate: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub ebn0_db: f64,
    pub n: usize,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub avg_iters: f64,
    /// Sum over frames of the squared bit-error count, for the BER interval.
    pub bit_errors_sq: u64,
}

impl SimResult {
    pub const CSV_HEADER: &'static str = "ebn0_db,frames,bit_errors,frame_errors,ber,fer,avg_iters";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6e},{:.6e},{:.3}",
            self.ebn0_db, self.frames, self.bit_errors, self.frame_errors, self.ber, self.fer, self.avg_iters
        )
    }

    /// Normal-approximation 95% interval for the BER, treating frames as
    /// the independent samples.
    pub fn ber_ci95(&self) -> (f64, f64) {
        if self.frames == 0 {
            return (0.0, 1.0);
        }
        let f = self.frames as f64;
        let mean = self.bit_errors as f64 / f;
        let var = (self.bit_errors_sq as f64 / f - mean * mean).max(0.0);
        let half = 1.96 * (var / f).sqrt() / self.n as f64;
        ((self.ber - half).max(0.0), self.ber + half)
    }

    /// Wilson 95% interval for the FER.
    pub fn fer_ci95(&self) -> (f64, f64) {
        if self.frames == 0 {
            return (0.0, 1.0);
        }
        let (n, p, z) = (self.frames as f64, self.fer, 1.96f64);
        let centre = (p + z * z / (2.0 * n)) / (1.0 + z * z / n);
        let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / (1.0 + z * z / n);
        ((centre - half).max(0.0), (centre + half).min(1.0))
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    frames: u64,
    bit_errors: u64,
    bit_errors_sq: u64,
    frame_errors: u64,
    iterations: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            frames: self.frames + o.frames,
            bit_errors: self.bit_errors + o.bit_errors,
            bit_errors_sq: self.bit_errors_sq + o.bit_errors_sq,
            frame_errors: self.frame_errors + o.frame_errors,
            iterations: self.iterations + o.iterations,
        }
    }
}

/// Simulates the all-zero codeword at every SNR point.
pub fn simulate(h: &ParityCheck, ebn0_db: &[f64], opts: &SimOptions) -> Result<Vec<SimResult>> {
    let mut dec = Decoder::new(h);
    dec.clip = opts.clip;
    let rate = opts.rate.unwrap_or_else(|| design_rate(h));
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::Unsupported(format!("code rate {rate} is outside (0, 1]")));
    }
    let n = h.cols();
    let zero = vec![0u8; n];
    ebn0_db
        .iter()
        .enumerate()
        .map(|(idx, &snr)| {
            let sigma2 = ChannelConfig {
                ebn0_db: snr,
                rate,
                seed: opts.seed,
            }
            .noise_variance();
            let mut tally = Tally::default();
            while tally.frames < opts.max_frames && tally.frame_errors < opts.target_frame_errors {
                let end = (tally.frames + BATCH).min(opts.max_frames);
                let batch = (tally.frames..end)
                    .into_par_iter()
                    .map(|frame| {
                        let mut rng = frame_rng(opts.seed, idx as u64, frame);
                        let llr = channel_llrs(&zero, sigma2, &mut rng);
                        let out = dec.decode(&llr, opts.max_iter).expect("llr length matches");
                        let errs = out.hard.iter().filter(|&&b| b == 1).count() as u64;
                        Tally {
                            frames: 1,
                            bit_errors: errs,
                            bit_errors_sq: errs * errs,
                            frame_errors: u64::from(errs > 0),
                            iterations: out.iterations as u64,
                        }
                    })
                    .reduce(Tally::default, Tally::add);
                tally = tally.add(batch);
            }
            let f = tally.frames.max(1) as f64;
            Ok(SimResult {
                ebn0_db: snr,
                n,
                frames: tally.frames,
                bit_errors: tally.bit_errors,
                frame_errors: tally.frame_errors,
                ber: tally.bit_errors as f64 / (f * n as f64),
                fer: tally.frame_errors as f64 / f,
                avg_iters: tally.iterations as f64 / f,
                bit_errors_sq: tally.bit_errors_sq,
            })
        })
        .collect()
}

/// Parses `a:b:step` (inclusive, in dB), or a single value, or `inf`.
pub fn parse_snr_range(text: &str) -> Result<Vec<f64>> {
    let bad = |msg: &str| Error::parse(1, format!("{msg}: '{text}'"));
    let nums: Vec<f64> = text
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad("not a number")))
        .collect::<Result<_>>()?;
    match nums[..] {
        [x] => Ok(vec![x]),
        [a, b, step] => {
            if !(step > 0.0) || !a.is_finite() || !b.is_finite() || b < a {
                return Err(bad("range needs a <= b and step > 0"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| a + step * i as f64).collect())
        }
        _ => Err(bad("expected a:b:step")),
    }
}
