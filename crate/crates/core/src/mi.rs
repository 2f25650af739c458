//! Entropy and mutual information in bits.
//!
//! Inputs are exact; each log term rounds its argument to `f64` once and the
//! terms are accumulated with a compensated sum in iteration order.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::channel::JointYZ;
use crate::exact::ExactProb;
use crate::numeric::{big_ratio_f64, mi_from_numerators, xlog2x, CompensatedSum};

/// Mutual information against the `1 - H(p)` bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MIResult {
    pub mi_bits: f64,
    pub bound_bits: f64,
    /// `bound_bits - mi_bits`.
    pub margin_bits: f64,
}

impl MIResult {
    pub fn new(mi_bits: f64, bound_bits: f64) -> Self {
        MIResult {
            mi_bits,
            bound_bits,
            margin_bits: bound_bits - mi_bits,
        }
    }
}

/// `H(p) = -p log2 p - (1-p) log2 (1-p)`, with `0 log 0 = 0`.
pub fn binary_entropy(p: &ExactProb) -> f64 {
    let q = p.complement().expect("binary entropy needs p <= 1");
    binary_entropy_f64(p.to_f64(), q.to_f64())
}

pub(crate) fn binary_entropy_f64(p: f64, one_minus_p: f64) -> f64 {
    -(xlog2x(p) + xlog2x(one_minus_p))
}

/// `1 - H(p)`, the capacity of the channel.
pub fn capacity_bound(p: &ExactProb) -> f64 {
    1.0 - binary_entropy(p)
}

/// `MI(Y; Z) = sum_{y,z} p_yz log2(p_yz / (p_y p_z))` over the exact table.
pub fn mutual_information(j: &JointYZ) -> MIResult {
    let n = j.n();
    let denom = j.denominator();
    let unit = j.row_unit();
    let z1 = j.z1_numerator();
    let z0 = denom - &z1;
    let to_f64 = |x: &num_bigint::BigUint| x.to_f64().unwrap_or(f64::INFINITY);

    let mi = if denom.bits() < 1000 {
        let (d, z1, z0) = (to_f64(denom), to_f64(&z1), to_f64(&z0));
        let rows = j.p1_numerators().iter().map(|p1| (to_f64(p1), to_f64(&(unit - p1))));
        mi_from_numerators(n, d, z1, z0, rows)
    } else {
        // Magnitudes beyond f64 range: take each ratio directly.
        let scale = (n as f64).exp2();
        let mut acc = CompensatedSum::default();
        for p1 in j.p1_numerators() {
            let p0 = unit - p1;
            for (num, z) in [(p1, &z1), (&p0, &z0)] {
                if num.bits() > 0 {
                    acc.add(big_ratio_f64(num, denom) * (big_ratio_f64(num, z) * scale).log2());
                }
            }
        }
        acc.value()
    };
    MIResult::new(mi, capacity_bound(j.p()))
}

/// `C(n, k)` as `f64`.
pub(crate) fn binomial_f64(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `q_k = (1-p)^(n-k) p^k / 2^n`, the value of `p_YZ(y, 1)` for a
/// single-point function at Hamming distance `k` from its witness.
pub fn single_point_q(n: u32, k: u32, p: &ExactProb) -> ExactProb {
    let keep = p.complement().expect("p <= 1");
    &(&keep.pow(n - k) * &p.pow(k)) * &ExactProb::inv_pow2(n)
}

/// Closed form of the MI of a single-point function:
/// `2n + sum_i (2^n - 1) p_i log2 p_i + sum_i q_i log2 q_i`, where
/// `p_i = p_YZ(y_i, 0) / (2^n - 1)` and the sums run over Hamming-distance
/// classes with multiplicity `C(n, k)`.
pub fn mi_class1_closed(n: u32, p: &ExactProb) -> f64 {
    assert!(n >= 1);
    let others = (1u64 << n) - 1;
    let mut acc = CompensatedSum::default();
    acc.add(2.0 * n as f64);
    for k in 0..=n {
        let m = binomial_f64(n, k);
        let q = single_point_q(n, k, p);
        let zero_mass = ExactProb::inv_pow2(n).checked_sub(&q).expect("q <= 1/2^n");
        let p_i = zero_mass.div_u64(others.max(1));
        if others > 0 {
            acc.add(m * others as f64 * xlog2x(p_i.to_f64()));
        }
        acc.add(m * xlog2x(q.to_f64()));
    }
    acc.value()
}

/// Both sides of `sum_i q_i log2 q_i = -n/2^n - (n/2^n) H(p)`.
pub fn qlogq_identity_check(n: u32, p: &ExactProb) -> (f64, f64) {
    let lhs: CompensatedSum = (0..=n)
        .map(|k| binomial_f64(n, k) * xlog2x(single_point_q(n, k, p).to_f64()))
        .collect();
    let scale = n as f64 / (n as f64).exp2();
    let rhs = -scale - scale * binary_entropy(p);
    (lhs.value(), rhs)
}
