//! Exact model of the memoryless binary symmetric channel with uniform
//! Bernoulli(1/2) inputs.
//!
//! Every quantity here is an exact rational. With `p = u/v` in lowest terms,
//! `p(x, y) = (v-u)^(n-d) u^d / (2^n v^n)` where `d` is the Hamming distance,
//! so joint tables are kept as integer numerators over `2^n v^n`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};
use crate::exact::ExactProb;

/// Largest `k` accepted by [`marginal_sum`].
pub const MAX_MARGINAL_K: u32 = 30;

/// Channel factor `P(Y_j = y | X_j = x)`: `1 - p` when the bits agree,
/// `p` otherwise.
pub fn transition(x_bit: bool, y_bit: bool, p: &ExactProb) -> ExactProb {
    if x_bit == y_bit {
        p.complement().expect("crossover probability above 1")
    } else {
        p.clone()
    }
}

/// `P(X = x, Y = y) = (1-p)^(n-d) p^d / 2^n`, `d` the Hamming distance of
/// the two indices.
pub fn joint_xy(x_index: u64, y_index: u64, n: u32, p: &ExactProb) -> ExactProb {
    let d = (x_index ^ y_index).count_ones();
    assert!(d <= n, "indices wider than n = {n}");
    let keep = p.complement().expect("crossover probability above 1");
    &(&keep.pow(n - d) * &p.pow(d)) * &ExactProb::inv_pow2(n)
}

/// Integer parameters of the channel at `p = u/v`: `stay = v - u`,
/// `flip = u`, `scale = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ChannelWeights {
    pub stay: BigUint,
    pub flip: BigUint,
    pub scale: BigUint,
}

impl ChannelWeights {
    pub fn new(p: &ExactProb) -> Result<Self> {
        if *p > ExactProb::half() {
            return Err(Error::Domain(p.to_string()));
        }
        let flip = p.numer();
        let scale = p.denom();
        Ok(ChannelWeights {
            stay: &scale - &flip,
            flip,
            scale,
        })
    }

    /// `(stay, flip, scale)` when `2^n * scale^n` fits comfortably in `u128`.
    pub fn small(&self, n: u32) -> Option<(u128, u128, u128)> {
        let bits = self.scale.bits() * n as u64 + n as u64;
        if bits > 126 {
            return None;
        }
        Some((
            self.stay.to_u128()?,
            self.flip.to_u128()?,
            self.scale.to_u128()?,
        ))
    }

    /// `[stay^(n-d) * flip^d for d in 0..=n]`.
    pub fn distance_weights(&self, n: u32) -> Vec<BigUint> {
        (0..=n)
            .map(|d| self.stay.pow(n - d) * self.flip.pow(d))
            .collect()
    }
}

/// `sum over x in {0,1}^k of P(X = x, Y = y)`, summed term by term.
///
/// Always equals `1/2^k`; this routine does not use that fact.
pub fn marginal_sum(y_index: u64, k: u32, p: &ExactProb) -> Result<ExactProb> {
    if k == 0 || k > MAX_MARGINAL_K {
        return Err(Error::Range(format!("marginal sum length {k} outside 1..={MAX_MARGINAL_K}")));
    }
    if y_index >> k != 0 {
        return Err(Error::Range(format!("y index {y_index} >= 2^{k}")));
    }
    let w = ChannelWeights::new(p)?;
    let denom = (BigUint::one() << k as usize) * w.scale.pow(k);
    let total = if let Some((stay, flip, _)) = w.small(k) {
        let table: Vec<u128> = (0..=k).map(|d| stay.pow(k - d) * flip.pow(d)).collect();
        let mut acc: u128 = 0;
        for x in 0..1u64 << k {
            acc += table[(x ^ y_index).count_ones() as usize];
        }
        BigUint::from(acc)
    } else {
        let table = w.distance_weights(k);
        let mut acc = BigUint::zero();
        for x in 0..1u64 << k {
            acc += &table[(x ^ y_index).count_ones() as usize];
        }
        acc
    };
    Ok(ExactProb::from_biguint(total, denom))
}

/// Exact joint distribution of `(Y, Z = f(X))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointYZ {
    n: u32,
    p: ExactProb,
    /// Numerator of `1/2^n`, i.e. `v^n`.
    row_unit: BigUint,
    /// Common denominator `2^n v^n`.
    denom: BigUint,
    /// Numerators of `p_YZ(y, 1)`.
    p1: Vec<BigUint>,
}

impl JointYZ {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> &ExactProb {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p1.is_empty()
    }

    /// `p_YZ(y, 1)`.
    pub fn p1(&self, y: usize) -> ExactProb {
        ExactProb::from_biguint(self.p1[y].clone(), self.denom.clone())
    }

    /// `p_YZ(y, 0)`.
    pub fn p0(&self, y: usize) -> ExactProb {
        ExactProb::from_biguint(&self.row_unit - &self.p1[y], self.denom.clone())
    }

    /// `(p_YZ(y, 0), p_YZ(y, 1))`.
    pub fn row(&self, y: usize) -> (ExactProb, ExactProb) {
        (self.p0(y), self.p1(y))
    }

    /// `p_Z(1)`.
    pub fn pz1(&self) -> ExactProb {
        ExactProb::from_biguint(self.z1_numerator(), self.denom.clone())
    }

    /// `p_Z(0)`.
    pub fn pz0(&self) -> ExactProb {
        ExactProb::from_biguint(&self.denom - self.z1_numerator(), self.denom.clone())
    }

    /// Common denominator of every entry.
    pub fn denominator(&self) -> &BigUint {
        &self.denom
    }

    /// Numerator of `p_Y(y) = 1/2^n` over [`JointYZ::denominator`].
    pub fn row_unit(&self) -> &BigUint {
        &self.row_unit
    }

    /// Numerators of `p_YZ(y, 1)` over [`JointYZ::denominator`].
    pub fn p1_numerators(&self) -> &[BigUint] {
        &self.p1
    }

    pub(crate) fn z1_numerator(&self) -> BigUint {
        self.p1.iter().sum()
    }

    /// Distinct rows `(p0, p1)` with their multiplicities, in increasing
    /// order of `p1`. For the structured classes this is the short list of
    /// values the joint table actually takes.
    pub fn distinct_rows(&self) -> Vec<(ExactProb, ExactProb, u64)> {
        let mut counts: BTreeMap<&BigUint, u64> = BTreeMap::new();
        for v in &self.p1 {
            *counts.entry(v).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(num, m)| {
                let p1 = ExactProb::from_biguint(num.clone(), self.denom.clone());
                let p0 = ExactProb::from_biguint(&self.row_unit - num, self.denom.clone());
                (p0, p1, m)
            })
            .collect()
    }
}

/// Exact joint table of `(Y, f(X))`: `p_YZ(y, 1)` is the channel mass of
/// the preimage of 1 and `p_YZ(y, 0) = 1/2^n - p_YZ(y, 1)`.
///
/// The preimage sum `sum_{x: f(x)=1} (v-u)^(n-d(x,y)) u^d(x,y)` factorises
/// over coordinates, so it is evaluated as `n` butterfly passes over the
/// table instead of a `4^n` double loop.
pub fn joint_yz(f: &TruthTable, p: &ExactProb) -> Result<JointYZ> {
    let n = f.n();
    let w = ChannelWeights::new(p)?;
    let row_unit = w.scale.pow(n);
    let denom = &row_unit << n as usize;
    let p1 = match w.small(n) {
        Some((stay, flip, _)) => {
            let mut t: Vec<u128> = (0..f.len()).map(|i| f.get(i) as u128).collect();
            butterfly_u128(&mut t, n, stay, flip);
            t.into_iter().map(BigUint::from).collect()
        }
        None => {
            let mut t: Vec<BigUint> = (0..f.len()).map(|i| BigUint::from(f.get(i) as u8)).collect();
            butterfly_big(&mut t, n, &w.stay, &w.flip);
            t
        }
    };
    Ok(JointYZ {
        n,
        p: p.clone(),
        row_unit,
        denom,
        p1,
    })
}

/// `p_Z(1)` of a joint table.
pub fn pz1(j: &JointYZ) -> ExactProb {
    j.pz1()
}

/// In-place channel transform: after the call `t[y] = sum_x t_in[x] *
/// stay^(n-d) * flip^d`.
pub(crate) fn butterfly_u128(t: &mut [u128], n: u32, stay: u128, flip: u128) {
    debug_assert_eq!(t.len(), 1 << n);
    for b in 0..n {
        let step = 1usize << b;
        for block in t.chunks_exact_mut(step << 1) {
            let (lo, hi) = block.split_at_mut(step);
            for (a, c) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *c);
                *a = stay * x + flip * y;
                *c = flip * x + stay * y;
            }
        }
    }
}

fn butterfly_big(t: &mut [BigUint], n: u32, stay: &BigUint, flip: &BigUint) {
    for b in 0..n {
        let step = 1usize << b;
        for block in t.chunks_exact_mut(step << 1) {
            let (lo, hi) = block.split_at_mut(step);
            for (a, c) in lo.iter_mut().zip(hi.iter_mut()) {
                let na = stay * &*a + flip * &*c;
                let nc = flip * &*a + stay * &*c;
                *a = na;
                *c = nc;
            }
        }
    }
}
