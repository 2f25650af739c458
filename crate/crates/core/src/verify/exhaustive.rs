//! Exhaustive scans over every Boolean function of a few variables.
//!
//! Tables are packed into a `u64` and the joint numerators kept in `u128`
//! (exact for `2^n v^n < 2^126`). Consecutive tables in a scan differ in one
//! entry (Gray-code order), so `p_YZ(., 1)` is updated by adding or
//! subtracting one channel column instead of being rebuilt.
//!
//! With canonicalization, a table is split on `x_1` into halves `(g0, g1)`.
//! The symmetries acting on `x_2..x_n`, together with output complement,
//! act on both halves at once, so every orbit has a member whose `g0` is a
//! canonical `(n-1)`-variable table; only those are scanned, with `g1` free.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfn::{Symmetry, TruthTable};
use crate::channel::{butterfly_u128, ChannelWeights};
use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::mi::capacity_bound;
use crate::numeric::mi_from_numerators;

/// Largest `n` for a scan of every table.
pub const MAX_FULL_SCAN_N: u32 = 4;

/// Largest `n` for a canonicalized scan.
pub const MAX_EXHAUSTIVE_N: u32 = 5;

/// Tables within this distance of the maximum count as maximizers.
pub const ARGMAX_TOL: f64 = 1e-12;

/// When orbits are not enumerated (`n = 5`), only the first this many
/// maximizers in scan order are canonicalized for the argmax list.
pub const ARGMAX_SAMPLE: usize = 64;

const CHUNK: u64 = 1 << 12;

/// Result of one exhaustive scan at one `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveSummary {
    pub n: u32,
    pub p: ExactProb,
    pub canonicalized: bool,
    pub num_functions_scanned: u64,
    /// Orbits met during the scan; every orbit is met, so this is the
    /// number of orbits of the group. Not computed for `n = 5`.
    pub num_orbits: Option<u64>,
    pub max_mi_bits: f64,
    /// Scanned tables within [`ARGMAX_TOL`] of the maximum.
    pub argmax_count: u64,
    /// Canonical forms of maximizers, entries in index order, first
    /// occurrence first.
    pub argmax_canonical_tables: Vec<String>,
    /// False when only the first [`ARGMAX_SAMPLE`] maximizers were examined.
    pub argmax_complete: bool,
    pub bound_bits: f64,
    /// `bound_bits - max_mi_bits`.
    pub max_margin: f64,
    pub dictator_mi_bits: f64,
    /// The dictator reaches the maximum within [`ARGMAX_TOL`].
    pub dictator_attains_max: bool,
}

/// Channel data for packed tables at one `p`.
struct PackedChannel {
    n: u32,
    size: usize,
    /// `v^n`, the numerator of `1/2^n`.
    unit: u128,
    denom: f64,
    /// Column `x` at `[x * size .. (x + 1) * size]`: `stay^(n-d) flip^d`.
    columns: Vec<u128>,
    stay: u128,
    flip: u128,
}

impl PackedChannel {
    fn new(n: u32, p: &ExactProb) -> Result<Self> {
        let w = ChannelWeights::new(p)?;
        let (stay, flip, scale) = w.small(n).ok_or_else(|| {
            Error::Unsupported(format!("denominator of p = {p} too large for the packed scan at n = {n}"))
        })?;
        let size = 1usize << n;
        let pow = |d: u32| stay.pow(n - d) * flip.pow(d);
        let by_distance: Vec<u128> = (0..=n).map(pow).collect();
        let mut columns = vec![0u128; size * size];
        for x in 0..size {
            for y in 0..size {
                columns[x * size + y] = by_distance[(x ^ y).count_ones() as usize];
            }
        }
        let unit = scale.pow(n);
        Ok(PackedChannel {
            n,
            size,
            unit,
            denom: (unit << n) as f64,
            columns,
            stay,
            flip,
        })
    }

    fn fill(&self, table: u64, p1: &mut [u128]) {
        for (i, slot) in p1.iter_mut().enumerate() {
            *slot = ((table >> i) & 1) as u128;
        }
        butterfly_u128(p1, self.n, self.stay, self.flip);
    }

    fn toggle(&self, p1: &mut [u128], index: usize, now_set: bool) {
        let col = &self.columns[index * self.size..(index + 1) * self.size];
        if now_set {
            p1.iter_mut().zip(col).for_each(|(a, c)| *a += c);
        } else {
            p1.iter_mut().zip(col).for_each(|(a, c)| *a -= c);
        }
    }

    fn mi(&self, p1: &[u128]) -> f64 {
        let z1: u128 = p1.iter().sum();
        let z0 = (self.unit << self.n) - z1;
        let rows = p1.iter().map(|&a| (a as f64, (self.unit - a) as f64));
        mi_from_numerators(self.n, self.denom, z1 as f64, z0 as f64, rows)
    }
}

/// MI of a packed table (`n <= 6`) through the scan engine.
pub fn packed_mutual_information(n: u32, table: u64, p: &ExactProb) -> Result<f64> {
    let ch = PackedChannel::new(n, p)?;
    let mut p1 = vec![0u128; ch.size];
    ch.fill(table, &mut p1);
    Ok(ch.mi(&p1))
}

/// The set of scanned tables: `base | gray(g) << offset` for every base and
/// every `g < 2^free`.
struct ScanPlan {
    bases: Vec<u64>,
    offset: u32,
    free: u32,
}

impl ScanPlan {
    fn new(n: u32, canonical: bool) -> Self {
        if canonical && n >= 2 {
            let half = n - 1;
            let sym = Symmetry::new(half);
            let mut seen = HashSet::new();
            let mut bases = Vec::new();
            for t in 0..1u64 << (1u32 << half) {
                let c = sym.canonical(t);
                if seen.insert(c) {
                    bases.push(c);
                }
            }
            bases.sort_unstable();
            ScanPlan {
                bases,
                offset: 1 << half,
                free: 1 << half,
            }
        } else {
            ScanPlan {
                bases: vec![0],
                offset: 0,
                free: 1 << n,
            }
        }
    }

    fn per_base(&self) -> u64 {
        1u64 << self.free
    }

    fn len(&self) -> u64 {
        self.bases.len() as u64 * self.per_base()
    }

    fn table_at(&self, s: u64) -> u64 {
        let g = s % self.per_base();
        self.bases[(s / self.per_base()) as usize] | ((g ^ (g >> 1)) << self.offset)
    }

    /// MI of every scanned table, in scan order.
    fn scan(&self, ch: &PackedChannel) -> Vec<f64> {
        let chunk = CHUNK.min(self.per_base());
        let mut out = vec![0f64; self.len() as usize];
        out.par_chunks_mut(chunk as usize).enumerate().for_each(|(ci, slots)| {
            let start = ci as u64 * chunk;
            let mut table = self.table_at(start);
            let mut p1 = vec![0u128; ch.size];
            ch.fill(table, &mut p1);
            let g0 = start % self.per_base();
            for (k, slot) in slots.iter_mut().enumerate() {
                if k > 0 {
                    let bit = (g0 + k as u64).trailing_zeros() + self.offset;
                    table ^= 1 << bit;
                    ch.toggle(&mut p1, bit as usize, (table >> bit) & 1 == 1);
                }
                *slot = ch.mi(&p1);
            }
        });
        out
    }
}

/// Number of orbits of `n`-variable tables under output complement and
/// input permutation/negation, by canonicalizing every table (`n <= 4`).
pub fn orbit_count(n: u32) -> Result<u64> {
    if !(1..=MAX_FULL_SCAN_N).contains(&n) {
        return Err(Error::Unsupported(format!("orbit count needs 1 <= n <= {MAX_FULL_SCAN_N}")));
    }
    let sym = Symmetry::new(n);
    let forms: HashSet<u64> = (0..1u64 << (1u32 << n)).map(|t| sym.canonical(t)).collect();
    Ok(forms.len() as u64)
}

/// Scans every Boolean function of `n` variables (one representative
/// half-split per orbit class of `g0` when `use_canonicalization` is set)
/// and reports the largest MI at each grid point.
///
/// Plain scans are limited to `n <= 4`; `n = 5` needs canonicalization.
pub fn exhaustive_check(n: u32, p_grid: &[ExactProb], use_canonicalization: bool) -> Result<Vec<ExhaustiveSummary>> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::Unsupported(format!("exhaustive scan needs 1 <= n <= {MAX_EXHAUSTIVE_N}, got {n}")));
    }
    if n > MAX_FULL_SCAN_N && !use_canonicalization {
        return Err(Error::Unsupported(format!("n = {n} needs canonicalization")));
    }
    let canonical = use_canonicalization && n >= 2;
    let plan = ScanPlan::new(n, canonical);
    let sym = Symmetry::new(n);
    let num_orbits = (n <= MAX_FULL_SCAN_N).then(|| {
        let forms: HashSet<u64> = (0..plan.len()).map(|s| sym.canonical(plan.table_at(s))).collect();
        forms.len() as u64
    });
    let dictator = TruthTable::from_fn(n, |i| (i >> (n - 1)) & 1 == 1)?
        .as_u64()
        .expect("n <= 6");

    let mut out = Vec::with_capacity(p_grid.len());
    for p in p_grid {
        let ch = PackedChannel::new(n, p)?;
        let mis = plan.scan(&ch);
        let max_mi = mis.iter().copied().fold(f64::NEG_INFINITY, f64::max);

        let mut argmax_count = 0u64;
        let mut forms: Vec<u64> = Vec::new();
        let mut examined = 0usize;
        let complete = num_orbits.is_some();
        for (s, &mi) in mis.iter().enumerate() {
            if mi < max_mi - ARGMAX_TOL {
                continue;
            }
            argmax_count += 1;
            if complete || examined < ARGMAX_SAMPLE {
                examined += 1;
                let c = sym.canonical(plan.table_at(s as u64));
                if !forms.contains(&c) {
                    forms.push(c);
                }
            }
        }
        let argmax_complete = complete || argmax_count as usize <= ARGMAX_SAMPLE;

        let mut p1 = vec![0u128; ch.size];
        ch.fill(dictator, &mut p1);
        let dictator_mi = ch.mi(&p1);
        let bound = capacity_bound(p);

        out.push(ExhaustiveSummary {
            n,
            p: p.clone(),
            canonicalized: canonical,
            num_functions_scanned: plan.len(),
            num_orbits,
            max_mi_bits: max_mi,
            argmax_count,
            argmax_canonical_tables: forms
                .into_iter()
                .map(|t| TruthTable::from_u64(n, t).expect("valid packed table").to_string())
                .collect(),
            argmax_complete,
            bound_bits: bound,
            max_margin: bound - max_mi,
            dictator_mi_bits: dictator_mi,
            dictator_attains_max: (dictator_mi - max_mi).abs() <= ARGMAX_TOL,
        });
    }
    Ok(out)
}
