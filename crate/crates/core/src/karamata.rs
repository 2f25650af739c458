//! Majorization certificate for single-point functions.
//!
//! For a single-point function the bound `MI <= 1 - H(p)` is equivalent to
//! `sum g(y_i) <= sum g(x_i)` with `g(t) = t log2 t` and two sequences of
//! length `2^n (2^n - 1)`:
//!
//! - `x`: `a = (1-p)/2^(n-1)` repeated `K` times, `c = 1/2^n` repeated
//!   `(n-1) 2^n` times, `b = p/2^(n-1)` repeated `K` times, where
//!   `K = 2^(n-1) (2^n - n)`;
//! - `y`: every `w_i = (1 - (1-p)^(n-k) p^k) / (2^n - 1)` (one per output
//!   vector, `k` its distance from the witness) repeated `2^n - 1` times.
//!
//! Since `g` is convex, Karamata's inequality gives the bound as soon as `x`
//! majorizes `y`. That condition involves no logarithms, so it is certified
//! here with exact rationals.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::boolfn::{make_class, FunctionClass};
use crate::channel::joint_yz;
use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::mi::{binary_entropy, binomial_f64, capacity_bound, mutual_information};
use crate::numeric::{xlog2x, CompensatedSum};

/// Largest dimension for which sequences are built.
pub const MAX_KARAMATA_N: u32 = 24;

/// A nonincreasing sequence stored as runs of equal values.
///
/// Adjacent runs always have strictly decreasing values and positive counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendingSeq {
    runs: Vec<(ExactProb, u64)>,
    len: u64,
}

impl DescendingSeq {
    pub fn from_runs(runs: impl IntoIterator<Item = (ExactProb, u64)>) -> Result<Self> {
        let mut out: Vec<(ExactProb, u64)> = Vec::new();
        let mut len = 0u64;
        for (value, count) in runs {
            if count == 0 {
                continue;
            }
            len = len
                .checked_add(count)
                .ok_or_else(|| Error::Range("sequence length overflows u64".into()))?;
            match out.last_mut() {
                Some((last, c)) if *last == value => *c += count,
                Some((last, _)) if *last < value => {
                    return Err(Error::Contract(format!(
                        "sequence not descending: {value} follows {last}"
                    )))
                }
                _ => out.push((value, count)),
            }
        }
        if len == 0 {
            return Err(Error::Contract("empty sequence".into()));
        }
        Ok(DescendingSeq { runs: out, len })
    }

    pub fn from_values(values: impl IntoIterator<Item = ExactProb>) -> Result<Self> {
        Self::from_runs(values.into_iter().map(|v| (v, 1)))
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn runs(&self) -> &[(ExactProb, u64)] {
        &self.runs
    }

    pub fn total(&self) -> ExactProb {
        self.runs.iter().map(|(v, c)| v.mul_u64(*c)).sum()
    }

    /// Element at 0-based position `i`.
    pub fn get(&self, mut i: u64) -> Option<&ExactProb> {
        for (v, c) in &self.runs {
            if i < *c {
                return Some(v);
            }
            i -= c;
        }
        None
    }

    /// Every element in order.
    pub fn iter(&self) -> impl Iterator<Item = &ExactProb> + '_ {
        self.runs
            .iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, *c as usize))
    }

    /// Sum of the first `k` elements.
    pub fn prefix_sum(&self, mut k: u64) -> ExactProb {
        let mut acc = ExactProb::zero();
        for (v, c) in &self.runs {
            let take = k.min(*c);
            acc = acc + v.mul_u64(take);
            k -= take;
            if k == 0 {
                break;
            }
        }
        acc
    }

    /// `sum g(t)` over all elements, `g(t) = t log2 t`.
    pub fn sum_xlogx(&self) -> f64 {
        let s: CompensatedSum = self
            .runs
            .iter()
            .map(|(v, c)| *c as f64 * xlog2x(v.to_f64()))
            .collect();
        s.value()
    }
}

/// Everything the single-point majorization argument is built from.
#[derive(Clone, Debug)]
pub struct KaramataInstance {
    pub n: u32,
    pub p: ExactProb,
    /// `(1-p) / 2^(n-1)`.
    pub a: ExactProb,
    /// `p / 2^(n-1)`.
    pub b: ExactProb,
    /// `1 / 2^n`.
    pub c: ExactProb,
    /// Repeat count of `a` and of `b`: `2^(n-1) (2^n - n)`.
    pub k_count: u64,
    /// `2^n (2^n - 1) - (2^n - 1)`, the index before the final `b` block
    /// that `w_min` is compared against.
    pub m_count: u64,
    /// `w` for an output vector at Hamming distance `k` from the witness,
    /// indexed by `k`; it occurs `C(n, k)` times among the `2^n` values.
    pub w_by_distance: Vec<ExactProb>,
    pub x_seq: DescendingSeq,
    pub y_seq: DescendingSeq,
}

impl KaramataInstance {
    /// All `2^n` values of `w`, largest first.
    pub fn w_values(&self) -> Vec<ExactProb> {
        let n = self.n;
        (0..=n)
            .rev()
            .flat_map(|k| std::iter::repeat_n(self.w_by_distance[k as usize].clone(), binomial_u64(n, k) as usize))
            .collect()
    }

    /// `w` at distance `n`, the largest value.
    pub fn w_max(&self) -> &ExactProb {
        &self.w_by_distance[self.n as usize]
    }

    /// `w` at distance 0, the smallest value.
    pub fn w_min(&self) -> &ExactProb {
        &self.w_by_distance[0]
    }

    /// Number of `c` entries in `x`: `len - 2K`.
    pub fn filler_count(&self) -> u64 {
        self.x_seq.len() - 2 * self.k_count
    }
}

pub(crate) fn binomial_u64(n: u32, k: u32) -> u64 {
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Builds `x`, `y` and the parameters for dimension `n >= 2` and
/// `0 <= p <= 1/2`.
pub fn build_karamata_sequences(n: u32, p: &ExactProb) -> Result<KaramataInstance> {
    if n < 2 {
        return Err(Error::Unsupported(format!("majorization argument needs n >= 2, got {n}")));
    }
    if n > MAX_KARAMATA_N {
        return Err(Error::Unsupported(format!("n = {n} above {MAX_KARAMATA_N}")));
    }
    if *p > ExactProb::half() {
        return Err(Error::Domain(p.to_string()));
    }
    let size = 1u64 << n;
    let half = size / 2;
    let keep = p.complement().expect("p <= 1/2");
    let a = keep.div_u64(half);
    let b = p.div_u64(half);
    let c = ExactProb::inv_pow2(n);
    let k_count = half * (size - n as u64);
    let len = size * (size - 1);
    let m_count = len - (size - 1);

    let w_by_distance: Vec<ExactProb> = (0..=n)
        .map(|k| {
            let mass = &keep.pow(n - k) * &p.pow(k);
            mass.complement().expect("mass <= 1").div_u64(size - 1)
        })
        .collect();

    let x_seq = DescendingSeq::from_runs([
        (a.clone(), k_count),
        (c.clone(), size * (n as u64 - 1)),
        (b.clone(), k_count),
    ])?;
    let y_seq = DescendingSeq::from_runs(
        (0..=n)
            .rev()
            .map(|k| (w_by_distance[k as usize].clone(), binomial_u64(n, k) * (size - 1))),
    )?;

    Ok(KaramataInstance {
        n,
        p: p.clone(),
        a,
        b,
        c,
        k_count,
        m_count,
        w_by_distance,
        x_seq,
        y_seq,
    })
}

/// The named side conditions of the majorization argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubInequality {
    /// `w_max <= a`.
    WMaxLeA,
    /// `2 w_max <= a + c`; used for the middle block when `n >= 3`.
    TwoWmaxLeAPlusC,
    /// `w_min >= b`.
    WMinGeB,
    /// `sum x = sum y = 2^n - 1`.
    Totals,
}

/// Outcome of an exact majorization check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorizationCertificate {
    /// Every partial sum of `y` is at most that of `x`, and the totals agree.
    pub holds: bool,
    /// Smallest 1-based `k` with `SL_k > SR_k`.
    pub first_violation: Option<u64>,
    pub totals_equal: bool,
    pub sub_inequalities: BTreeMap<SubInequality, bool>,
}

/// Checks that `x` majorizes `y`: `SL_k = y_1 + ... + y_k <= SR_k = x_1 +
/// ... + x_k` for every `k`, with equal totals.
///
/// `SR_k - SL_k` is linear in `k` wherever both sequences stay inside a run,
/// so it suffices to evaluate it at run boundaries; a violation inside a
/// segment is located exactly.
pub fn check_majorization(x: &DescendingSeq, y: &DescendingSeq) -> Result<MajorizationCertificate> {
    if x.len() != y.len() {
        return Err(Error::Contract(format!(
            "sequence lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let mut xi = x.runs.iter();
    let mut yi = y.runs.iter();
    let (mut xv, mut xrem) = xi.next().map(|(v, c)| (v, *c)).expect("nonempty");
    let (mut yv, mut yrem) = yi.next().map(|(v, c)| (v, *c)).expect("nonempty");
    let mut pos = 0u64;
    let mut diff = BigRational::zero();
    let mut first_violation = None;

    loop {
        let step = xrem.min(yrem);
        let slope = xv.as_ratio() - yv.as_ratio();
        let end = &diff + &slope * BigRational::from_integer(BigInt::from(step));
        if end.is_negative() {
            // diff >= 0 here and slope < 0: first t with diff + t*slope < 0
            let t: BigInt = (&diff / (-&slope)).floor().to_integer() + 1;
            let t = t.to_u64().expect("offset within a run");
            first_violation = Some(pos + t);
            break;
        }
        diff = end;
        pos += step;
        xrem -= step;
        yrem -= step;
        if xrem == 0 {
            match xi.next() {
                Some((v, c)) => (xv, xrem) = (v, *c),
                None => break,
            }
        }
        if yrem == 0 {
            match yi.next() {
                Some((v, c)) => (yv, yrem) = (v, *c),
                None => break,
            }
        }
    }

    let totals_equal = x.total() == y.total();
    let mut sub_inequalities = BTreeMap::new();
    sub_inequalities.insert(SubInequality::Totals, totals_equal);
    Ok(MajorizationCertificate {
        holds: first_violation.is_none() && totals_equal,
        first_violation,
        totals_equal,
        sub_inequalities,
    })
}

/// Full certificate for an instance: the exact partial-sum scan plus every
/// named side condition, each decided by exact comparison.
pub fn sub_inequality_ledger(inst: &KaramataInstance) -> Result<MajorizationCertificate> {
    let mut cert = check_majorization(&inst.x_seq, &inst.y_seq)?;
    let w_max = inst.w_max();
    let size_minus_one = ExactProb::from_u64((1u64 << inst.n) - 1, 1);
    let totals = inst.x_seq.total() == size_minus_one && inst.y_seq.total() == size_minus_one;
    let ledger = &mut cert.sub_inequalities;
    ledger.insert(SubInequality::WMaxLeA, *w_max <= inst.a);
    ledger.insert(SubInequality::TwoWmaxLeAPlusC, w_max.mul_u64(2) <= &inst.a + &inst.c);
    ledger.insert(SubInequality::WMinGeB, *inst.w_min() >= inst.b);
    ledger.insert(SubInequality::Totals, totals);
    Ok(cert)
}

/// `(sum g(y_i), sum g(x_i))` for a majorizing pair, `g(t) = t log2 t`.
pub fn karamata_conclusion(x: &DescendingSeq, y: &DescendingSeq) -> Result<(f64, f64)> {
    let cert = check_majorization(x, y)?;
    if !cert.holds {
        return Err(Error::Contract(match cert.first_violation {
            Some(k) => format!("x does not majorize y (first violation at k = {k})"),
            None => "x and y have different totals".into(),
        }));
    }
    Ok((y.sum_xlogx(), x.sum_xlogx()))
}

/// Both formulations of the single-point bound, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEquivalence {
    /// `MI - (1 - H(p))` from the generic joint-table engine.
    pub mi_minus_bound: f64,
    /// Right side minus left side of
    /// `sum (2^n-1) w_i log2 w_i <= -n(n-1) + (2^n-n) 2^(n-1) (a log2 a + b log2 b)`.
    pub karamata_gap: f64,
    /// MI rebuilt from `w`: `n - n H(p)/2^n + (2^n-1)/2^n * sum w_i log2 w_i`.
    pub mi_from_w: f64,
    /// MI from the generic engine.
    pub mi_generic: f64,
}

impl BoundEquivalence {
    /// Both formulations agree on which side wins; values within `tol` of
    /// zero count as ties.
    pub fn signs_agree(&self, tol: f64) -> bool {
        let sign = |v: f64| if v.abs() <= tol { 0 } else if v > 0.0 { 1 } else { -1 };
        sign(self.mi_minus_bound) == -sign(self.karamata_gap)
    }
}

pub fn bound_equivalence_check(n: u32, p: &ExactProb) -> Result<BoundEquivalence> {
    let inst = build_karamata_sequences(n, p)?;
    let size = (n as f64).exp2();
    let size_minus_one = size - 1.0;

    let sum_wlogw: CompensatedSum = (0..=n)
        .map(|k| binomial_f64(n, k) * xlog2x(inst.w_by_distance[k as usize].to_f64()))
        .collect();
    let sum_wlogw = sum_wlogw.value();
    let lhs = size_minus_one * sum_wlogw;
    let rhs = -(n as f64) * (n as f64 - 1.0)
        + (size - n as f64) * (size / 2.0) * (xlog2x(inst.a.to_f64()) + xlog2x(inst.b.to_f64()));

    let f = make_class(n, &FunctionClass::Class1 { witness_index: 0 })?;
    let generic = mutual_information(&joint_yz(&f, p)?);
    let h = binary_entropy(p);
    let mi_from_w = n as f64 - n as f64 * h / size + size_minus_one / size * sum_wlogw;

    Ok(BoundEquivalence {
        mi_minus_bound: generic.mi_bits - capacity_bound(p),
        karamata_gap: rhs - lhs,
        mi_from_w,
        mi_generic: generic.mi_bits,
    })
}

/// One row of the partial-sum table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSumRow {
    pub k: u64,
    pub sl: ExactProb,
    pub sr: ExactProb,
}

impl PartialSumRow {
    pub fn ok(&self) -> bool {
        self.sl <= self.sr
    }
}

/// Every partial sum `(k, SL_k, SR_k)`, `k = 1..=len`, where `SL` sums `y`
/// and `SR` sums `x`.
pub fn partial_sums<'a>(
    x: &'a DescendingSeq,
    y: &'a DescendingSeq,
) -> impl Iterator<Item = PartialSumRow> + 'a {
    let mut sl = ExactProb::zero();
    let mut sr = ExactProb::zero();
    x.iter().zip(y.iter()).enumerate().map(move |(i, (xv, yv))| {
        sr = &sr + xv;
        sl = &sl + yv;
        PartialSumRow {
            k: i as u64 + 1,
            sl: sl.clone(),
            sr: sr.clone(),
        }
    })
}

/// Writes the partial-sum table as CSV:
/// `k,SL_num,SL_den,SR_num,SR_den,ok`.
pub fn write_partial_sums_csv<W: Write>(mut out: W, x: &DescendingSeq, y: &DescendingSeq) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Contract("sequence lengths differ".into()));
    }
    writeln!(out, "k,SL_num,SL_den,SR_num,SR_den,ok")?;
    for row in partial_sums(x, y) {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.k,
            row.sl.numer(),
            row.sl.denom(),
            row.sr.numer(),
            row.sr.denom(),
            row.ok()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: u64, b: u64) -> ExactProb {
        ExactProb::from_u64(a, b)
    }

    fn seq(vals: &[(u64, u64, u64)]) -> DescendingSeq {
        DescendingSeq::from_runs(vals.iter().map(|&(a, b, c)| (q(a, b), c))).unwrap()
    }

    #[test]
    fn n2_quarter_instance() {
        let inst = build_karamata_sequences(2, &q(1, 4)).unwrap();
        assert_eq!((inst.a.clone(), inst.c.clone(), inst.b.clone()), (q(3, 8), q(1, 4), q(1, 8)));
        assert_eq!(inst.k_count, 4);
        assert_eq!(inst.m_count, 9);
        assert_eq!(inst.x_seq, seq(&[(3, 8, 4), (1, 4, 4), (1, 8, 4)]));
        assert_eq!(inst.y_seq, seq(&[(5, 16, 3), (13, 48, 6), (7, 48, 3)]));
        assert_eq!(inst.x_seq.total(), q(3, 1));
        assert_eq!(inst.y_seq.total(), q(3, 1));
        assert_eq!(inst.w_values(), vec![q(5, 16), q(13, 48), q(13, 48), q(7, 48)]);
    }

    #[test]
    fn symmetry_point_and_noiseless() {
        let inst = build_karamata_sequences(2, &q(1, 2)).unwrap();
        assert!(inst.w_by_distance.iter().all(|w| *w == q(1, 4)));
        assert_eq!(inst.x_seq.runs(), &[(q(1, 4), 12)]);
        assert_eq!(inst.x_seq.total(), q(3, 1));

        for n in 2..=6 {
            let inst = build_karamata_sequences(n, &ExactProb::zero()).unwrap();
            let w = inst.w_values();
            let others = (1u64 << n) - 1;
            assert_eq!(w.iter().filter(|v| v.is_zero()).count(), 1);
            assert_eq!(w.iter().filter(|v| **v == q(1, others)).count() as u64, others);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(build_karamata_sequences(1, &q(1, 4)), Err(Error::Unsupported(_))));
        assert!(matches!(build_karamata_sequences(3, &q(3, 4)), Err(Error::Domain(_))));
    }

    #[test]
    fn majorization_examples() {
        let x = seq(&[(1, 1, 2)]);
        let y = seq(&[(2, 1, 1), (0, 1, 1)]);
        let cert = check_majorization(&x, &y).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.first_violation, Some(1));
        assert!(cert.totals_equal);

        let same = check_majorization(&y, &y).unwrap();
        assert!(same.holds && same.first_violation.is_none());

        let inst = build_karamata_sequences(2, &q(1, 4)).unwrap();
        assert!(check_majorization(&inst.x_seq, &inst.y_seq).unwrap().holds);
    }

    #[test]
    fn violation_located_inside_run() {
        // SR - SL = 5/2 after k = 1, then drops by 1/2 per step: negative at k = 7
        let x = seq(&[(4, 1, 1), (1, 1, 9)]);
        let y = seq(&[(3, 2, 10)]);
        let cert = check_majorization(&x, &y).unwrap();
        let rows: Vec<_> = partial_sums(&x, &y).collect();
        let expect = rows.iter().find(|r| !r.ok()).map(|r| r.k);
        assert_eq!(cert.first_violation, expect);
        assert_eq!(cert.first_violation, Some(7));
    }

    #[test]
    fn unequal_totals_fail() {
        let x = seq(&[(1, 1, 2)]);
        let y = seq(&[(1, 2, 2)]);
        let cert = check_majorization(&x, &y).unwrap();
        assert!(!cert.holds && !cert.totals_equal && cert.first_violation.is_none());
    }

    #[test]
    fn contract_errors() {
        let x = seq(&[(1, 1, 2)]);
        let y = seq(&[(1, 1, 3)]);
        assert!(matches!(check_majorization(&x, &y), Err(Error::Contract(_))));
        assert!(DescendingSeq::from_values([q(1, 4), q(1, 2)]).is_err());
        let bad = seq(&[(2, 1, 1), (0, 1, 1)]);
        assert!(matches!(karamata_conclusion(&x, &bad), Err(Error::Contract(_))));
    }

    #[test]
    fn ledger_n2_quarter() {
        let inst = build_karamata_sequences(2, &q(1, 4)).unwrap();
        let cert = sub_inequality_ledger(&inst).unwrap();
        assert!(cert.holds);
        assert!(cert.sub_inequalities.values().all(|&v| v));
        // 2 * 5/16 = 5/8 = a + c exactly
        assert_eq!(inst.w_max().mul_u64(2), &inst.a + &inst.c);
    }

    #[test]
    fn ledger_symmetry_point() {
        for n in 2..=8 {
            let inst = build_karamata_sequences(n, &q(1, 2)).unwrap();
            let cert = sub_inequality_ledger(&inst).unwrap();
            assert!(cert.holds && cert.sub_inequalities.values().all(|&v| v));
            assert_eq!(*inst.w_min(), ExactProb::inv_pow2(n));
            assert_eq!(inst.b, ExactProb::inv_pow2(n));
        }
    }

    #[test]
    fn two_wmax_fails_for_n2_above_quarter() {
        // The middle-block condition is only needed for n >= 3; at n = 2 it
        // fails for p > 1/4 while the majorization itself still holds.
        let inst = build_karamata_sequences(2, &q(3, 8)).unwrap();
        let cert = sub_inequality_ledger(&inst).unwrap();
        assert!(cert.holds);
        assert!(!cert.sub_inequalities[&SubInequality::TwoWmaxLeAPlusC]);
        assert_eq!(inst.w_max().mul_u64(2), q(110, 192));
        assert_eq!(&inst.a + &inst.c, q(108, 192));
    }

    #[test]
    fn conclusion_examples() {
        let x = seq(&[(1, 3, 3)]);
        let (l, r) = karamata_conclusion(&x, &x).unwrap();
        assert_eq!(l, r);

        let inst = build_karamata_sequences(2, &q(1, 4)).unwrap();
        let (l, r) = karamata_conclusion(&inst.x_seq, &inst.y_seq).unwrap();
        // direct evaluation from the exact values
        let g = |v: f64| v * v.log2();
        let lhs = 3.0 * g(5.0 / 16.0) + 6.0 * g(13.0 / 48.0) + 3.0 * g(7.0 / 48.0);
        let rhs = 4.0 * (g(3.0 / 8.0) + g(0.25) + g(1.0 / 8.0));
        assert!((l - lhs).abs() < 1e-14 && (r - rhs).abs() < 1e-14);
        assert!(l < r);

        let inst = build_karamata_sequences(2, &q(1, 2)).unwrap();
        let (l, r) = karamata_conclusion(&inst.x_seq, &inst.y_seq).unwrap();
        assert!((l - r).abs() <= 1e-15);
    }

    #[test]
    fn bound_equivalence_examples() {
        let e = bound_equivalence_check(2, &q(1, 4)).unwrap();
        assert!(e.mi_minus_bound < 0.0 && e.karamata_gap > 0.0);
        assert!(e.signs_agree(1e-10));

        let e = bound_equivalence_check(3, &q(1, 2)).unwrap();
        assert!(e.mi_minus_bound.abs() <= 1e-10 && e.karamata_gap.abs() <= 1e-10);

        let e = bound_equivalence_check(3, &q(1, 8)).unwrap();
        assert!(e.signs_agree(1e-10));
        assert!((e.mi_from_w - e.mi_generic).abs() <= 1e-12);
        assert!((e.karamata_gap + 8.0 * e.mi_minus_bound).abs() <= 1e-12);
    }

    #[test]
    fn partial_sum_csv() {
        let inst = build_karamata_sequences(2, &q(1, 4)).unwrap();
        let mut buf = Vec::new();
        write_partial_sums_csv(&mut buf, &inst.x_seq, &inst.y_seq).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 13);
        assert_eq!(lines[0], "k,SL_num,SL_den,SR_num,SR_den,ok");
        assert_eq!(lines[1], "1,5,16,3,8,true");
        assert_eq!(lines[12], "12,3,1,3,1,true");
    }
}
