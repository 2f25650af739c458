//! Floating-point kernels shared by the MI engines.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Neumaier-compensated running sum. Summation order is the caller's
/// iteration order, so results are reproducible bit for bit.
#[derive(Default, Clone, Copy, Debug)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `x * log2(x)` with `0 * log 0 = 0`.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Nearest `f64` to `num / den` for big integers of any size.
pub(crate) fn big_ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    let bits = num.bits().max(den.bits());
    if bits <= 1000 {
        return num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY);
    }
    let shift = (bits - 1000) as usize;
    let n = (num >> shift).to_f64().unwrap_or(0.0);
    let d = (den >> shift).to_f64().unwrap_or(0.0);
    n / d
}

/// Mutual information in bits from a joint table of `(Y, Z)` given as
/// integer numerators over a common denominator.
///
/// `rows` yields `(p1_num, p0_num)` for every `y`; `unit` is the numerator of
/// `p_Y(y) = 1/2^n`, `z1`/`z0` are the numerators of `p_Z(1)`/`p_Z(0)`.
/// Each term is `p_yz * log2(p_yz / (p_y p_z)) = (num/D) * log2(num * 2^n / Z)`.
/// Only ratios of exact integers are rounded, once each.
pub(crate) fn mi_from_numerators<I>(n: u32, denom: f64, z1: f64, z0: f64, rows: I) -> f64
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let scale = (n as f64).exp2();
    let mut acc = CompensatedSum::default();
    for (p1, p0) in rows {
        if p1 > 0.0 {
            acc.add((p1 / denom) * ((p1 / z1) * scale).log2());
        }
        if p0 > 0.0 {
            acc.add((p0 / denom) * ((p0 / z0) * scale).log2());
        }
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-16).abs() < 1e-30);
    }

    #[test]
    fn xlogx_zero_convention() {
        assert_eq!(xlog2x(0.0), 0.0);
        assert_eq!(xlog2x(1.0), 0.0);
        assert_eq!(xlog2x(0.5), -0.5);
    }

    #[test]
    fn big_ratio_handles_huge_operands() {
        let a = BigUint::from(3u32) << 5000usize;
        let b = BigUint::from(4u32) << 5000usize;
        assert_eq!(big_ratio_f64(&a, &b), 0.75);
    }
}
