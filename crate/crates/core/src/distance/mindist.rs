//! Minimum distance: exhaustive enumeration for small dimensions, and an
//! information-set search with an optional certified lower bound for the
//! rest.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::ParityCheck;

use super::gf2::{unpack, weight, xor_into, BitMatrix};

/// Largest dimension accepted by exhaustive enumeration.
pub const MAX_EXHAUSTIVE_K: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Search => "low-weight-search",
        })
    }
}

/// Knobs for the search method.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Random information sets to try.
    pub iterations: u64,
    pub seed: u64,
    /// Information-set weight: every sum of at most `p` systematic rows is
    /// inspected.
    pub p: usize,
    /// Stop the random phase once a codeword of this weight or less is found.
    pub stop_at: Option<usize>,
    /// Codeword combinations the lower-bound phase may enumerate; 0 skips it.
    pub lower_bound_work: u64,
    /// Circulant size, used to put the witness in a canonical shift.
    pub qc_block: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            iterations: 2000,
            seed: 1,
            p: 2,
            stop_at: None,
            lower_bound_work: 0,
            qc_block: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    pub method: Method,
    /// Certified lower bound on the minimum distance.
    pub d_lower: usize,
    /// Weight of the witness; `None` when the code has no nonzero codeword.
    pub d_upper: Option<usize>,
    pub witness: Option<Vec<u8>>,
    /// Information sets tried by the random phase.
    pub iterations: u64,
    /// Whether the lower-bound phase ran out of work before closing the gap.
    pub budget_exhausted: bool,
}

impl DistanceReport {
    pub fn exact(&self) -> Option<usize> {
        self.d_upper.filter(|&d| d == self.d_lower)
    }

    pub fn to_key_values(&self) -> String {
        let mut s = format!(
            "n: {}\nk: {}\nmethod: {}\nd_lower: {}\n",
            self.n, self.k, self.method, self.d_lower
        );
        match self.d_upper {
            Some(d) => s.push_str(&format!("d_upper: {d}\n")),
            None => s.push_str("d_upper: none\n"),
        }
        if let Some(d) = self.exact() {
            s.push_str(&format!("d_exact: {d}\n"));
        }
        s.push_str(&format!(
            "iterations: {}\nbudget_exhausted: {}\n",
            self.iterations, self.budget_exhausted
        ));
        if let Some(w) = &self.witness {
            let support: Vec<String> = w
                .iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(j, _)| j.to_string())
                .collect();
            s.push_str(&format!("witness: {}\n", support.join(" ")));
        }
        s
    }

    pub const CSV_HEADER: &'static str = "n,k,method,d_lower,d_upper,iterations,budget_exhausted";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.method,
            self.d_lower,
            self.d_upper.map_or_else(|| "none".to_string(), |d| d.to_string()),
            self.iterations,
            self.budget_exhausted
        )
    }
}

/// Minimum distance of the null space of `h`.
pub fn min_distance(h: &ParityCheck, method: Method, opts: &SearchOptions) -> Result<DistanceReport> {
    let g = BitMatrix::from_parity_check(h).nullspace();
    match method {
        Method::Exhaustive => exhaustive(&g, opts),
        Method::Search => search(&g, opts),
    }
}

#[derive(Clone)]
struct Best {
    weight: usize,
    key: u64,
    word: Vec<u64>,
}

fn pick(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.weight, y.key) < (x.weight, x.key) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn no_codewords(n: usize, method: Method) -> DistanceReport {
    DistanceReport {
        n,
        k: 0,
        method,
        d_lower: 0,
        d_upper: None,
        witness: None,
        iterations: 0,
        budget_exhausted: false,
    }
}

fn exhaustive(g: &BitMatrix, opts: &SearchOptions) -> Result<DistanceReport> {
    let (k, n) = (g.rows(), g.cols());
    if k > MAX_EXHAUSTIVE_K {
        return Err(Error::DimensionTooLarge {
            k,
            limit: MAX_EXHAUSTIVE_K,
        });
    }
    if k == 0 {
        return Ok(no_codewords(n, Method::Exhaustive));
    }
    let high = k.min(6);
    let low = k - high;
    let best = (0u64..1 << high)
        .into_par_iter()
        .map(|shard| {
            let mut acc = vec![0u64; g.words()];
            for b in 0..high {
                if shard >> b & 1 == 1 {
                    xor_into(&mut acc, g.row(low + b));
                }
            }
            let mut best: Option<Best> = None;
            let mut consider = |acc: &[u64], step: u64| {
                let w = weight(acc);
                if w > 0 && best.as_ref().is_none_or(|b| w < b.weight) {
                    best = Some(Best {
                        weight: w,
                        key: shard << low | step,
                        word: acc.to_vec(),
                    });
                }
            };
            consider(&acc, 0);
            for step in 1u64..1 << low {
                xor_into(&mut acc, g.row(step.trailing_zeros() as usize));
                consider(&acc, step);
            }
            best
        })
        .reduce(|| None, pick)
        .expect("k > 0 gives a nonzero codeword");
    let word = canonical_shift(&unpack(&best.word, n), opts.qc_block);
    Ok(DistanceReport {
        n,
        k,
        method: Method::Exhaustive,
        d_lower: best.weight,
        d_upper: Some(best.weight),
        witness: Some(word),
        iterations: 0,
        budget_exhausted: false,
    })
}

/// Lowest-weight sum of at most `p` rows of `g` after reducing it on a
/// random column order.
fn info_set_trial(g: &BitMatrix, seed: u64, iteration: u64, p: usize) -> Option<Best> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration);
    let mut order: Vec<usize> = (0..g.cols()).collect();
    order.shuffle(&mut rng);
    let mut m = g.clone();
    m.reduce_in_order(order);
    let k = m.rows();
    let mut best: Option<Best> = None;
    let mut acc = vec![0u64; m.words()];
    let mut consider = |acc: &[u64]| {
        let w = weight(acc);
        if w > 0 && best.as_ref().is_none_or(|b| w < b.weight) {
            best = Some(Best {
                weight: w,
                key: iteration,
                word: acc.to_vec(),
            });
        }
    };
    for a in 0..k {
        consider(m.row(a));
        if p >= 2 {
            for b in a + 1..k {
                acc.copy_from_slice(m.row(a));
                xor_into(&mut acc, m.row(b));
                consider(&acc);
                if p >= 3 {
                    let base = acc.clone();
                    for c in b + 1..k {
                        acc.copy_from_slice(&base);
                        xor_into(&mut acc, m.row(c));
                        consider(&acc);
                    }
                }
            }
        }
    }
    best
}

const CHUNK: u64 = 32;

fn search(g: &BitMatrix, opts: &SearchOptions) -> Result<DistanceReport> {
    let (k, n) = (g.rows(), g.cols());
    if k == 0 {
        return Ok(no_codewords(n, Method::Search));
    }
    let mut best: Option<Best> = None;
    let mut done = 0u64;
    while done < opts.iterations {
        let end = (done + CHUNK).min(opts.iterations);
        let chunk_best = (done..end)
            .into_par_iter()
            .map(|it| info_set_trial(g, opts.seed, it, opts.p.max(1)))
            .reduce(|| None, pick);
        best = pick(best, chunk_best);
        done = end;
        if let (Some(b), Some(t)) = (&best, opts.stop_at) {
            if b.weight <= t {
                break;
            }
        }
    }
    let mut d_lower = 1;
    let mut budget_exhausted = false;
    if opts.lower_bound_work > 0 {
        let (lb, found, complete) = brouwer_zimmermann(g, best.as_ref().map(|b| b.weight), opts.lower_bound_work);
        d_lower = lb;
        budget_exhausted = !complete;
        best = pick(best, found);
    }
    let best = best.expect("k > 0 gives a nonzero codeword");
    d_lower = d_lower.min(best.weight);
    Ok(DistanceReport {
        n,
        k,
        method: Method::Search,
        d_lower,
        d_upper: Some(best.weight),
        witness: Some(canonical_shift(&unpack(&best.word, n), opts.qc_block)),
        iterations: done,
        budget_exhausted,
    })
}

/// Enumerates low-weight messages over disjoint information sets.
/// Returns the certified lower bound, any codeword found lighter than
/// `upper`, and whether the bound met the upper bound within `work`.
fn brouwer_zimmermann(g: &BitMatrix, upper: Option<usize>, work: u64) -> (usize, Option<Best>, bool) {
    let (k, n) = (g.rows(), g.cols());
    let mut bases: Vec<(BitMatrix, usize)> = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let mut m = g.clone();
        let pivots = m.reduce_in_order(remaining.iter().copied());
        if pivots.is_empty() {
            break;
        }
        let rank = pivots.len();
        bases.push((m, rank));
        remaining.retain(|c| !pivots.contains(c));
    }
    let mut ub = upper.unwrap_or(usize::MAX);
    let mut found: Option<Best> = None;
    let mut lb = 1;
    let mut spent = 0u64;
    for w in 1..=k {
        let active: Vec<&(BitMatrix, usize)> = bases.iter().filter(|(_, r)| w + 1 > k - r).collect();
        let cost: u64 = active
            .iter()
            .map(|_| binomial_u64(k as u64, w as u64))
            .fold(0u64, u64::saturating_add);
        if spent.saturating_add(cost) > work {
            return (lb, found, false);
        }
        spent += cost;
        for (basis, _) in &active {
            if let Some(b) = enumerate_level(basis, w, ub) {
                if b.weight < ub {
                    ub = b.weight;
                    found = pick(found, Some(b));
                }
            }
        }
        lb = active.iter().map(|(_, r)| w + 1 - (k - r)).sum::<usize>().max(lb);
        if lb >= ub {
            return (ub, found, true);
        }
    }
    (lb.min(ub), found, true)
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Lightest sum of exactly `w` rows of `basis`, if lighter than `below`.
fn enumerate_level(basis: &BitMatrix, w: usize, below: usize) -> Option<Best> {
    let r = basis.rows();
    if w > r {
        return None;
    }
    (0..=r - w)
        .into_par_iter()
        .map(|first| {
            let mut stack = vec![vec![0u64; basis.words()]; w];
            stack[0].copy_from_slice(basis.row(first));
            let mut idx = vec![0usize; w];
            idx[0] = first;
            let mut best: Option<Best> = None;
            let mut limit = below;
            descend(basis, w, 1, &mut idx, &mut stack, &mut best, &mut limit);
            best
        })
        .reduce(|| None, pick)
}

fn descend(
    basis: &BitMatrix,
    w: usize,
    depth: usize,
    idx: &mut Vec<usize>,
    stack: &mut Vec<Vec<u64>>,
    best: &mut Option<Best>,
    limit: &mut usize,
) {
    if depth == w {
        let wt = weight(&stack[w - 1]);
        if wt > 0 && wt < *limit {
            *limit = wt;
            *best = Some(Best {
                weight: wt,
                key: idx[0] as u64,
                word: stack[w - 1].clone(),
            });
        }
        return;
    }
    let r = basis.rows();
    for next in idx[depth - 1] + 1..=r - (w - depth) {
        idx[depth] = next;
        let (head, tail) = stack.split_at_mut(depth);
        tail[0].copy_from_slice(&head[depth - 1]);
        xor_into(&mut tail[0], basis.row(next));
        descend(basis, w, depth + 1, idx, stack, best, limit);
    }
}

/// Among the `r` simultaneous cyclic shifts of every length-`r` block,
/// the one with the lexicographically smallest support.
pub fn canonical_shift(word: &[u8], block: Option<usize>) -> Vec<u8> {
    let Some(r) = block.filter(|&r| r > 1 && word.len() % r == 0) else {
        return word.to_vec();
    };
    let support = |v: &[u8]| -> Vec<usize> { (0..v.len()).filter(|&j| v[j] == 1).collect() };
    let mut best = word.to_vec();
    let mut best_support = support(word);
    for t in 1..r {
        let shifted = shift_blocks(word, r, t);
        let s = support(&shifted);
        if s < best_support {
            best_support = s;
            best = shifted;
        }
    }
    best
}

/// Cyclically shifts every length-`r` block of `word` by `t`.
pub fn shift_blocks(word: &[u8], r: usize, t: usize) -> Vec<u8> {
    let mut out = vec![0u8; word.len()];
    for (j, &b) in word.iter().enumerate() {
        let (blk, x) = (j / r, j % r);
        out[blk * r + (x + t) % r] = b;
    }
    out
}
