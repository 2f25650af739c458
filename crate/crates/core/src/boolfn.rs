//! Truth tables, the structured function families, and canonical forms
//! under the MI-preserving symmetry group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_N: u32 = 24;

/// Largest dimension accepted by [`canonical_form`].
pub const MAX_CANONICAL_N: u32 = 6;

/// A Boolean function `f: {0,1}^n -> {0,1}` stored as its truth table.
///
/// Bit `i` is `f(x)` where `x` is the binary expansion of `i` with `x_1` as
/// the most significant bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zeros(n: u32) -> Result<Self> {
        check_dimension(n)?;
        let len = 1usize << n;
        Ok(TruthTable {
            n,
            words: vec![0; len.div_ceil(64)],
        })
    }

    pub fn ones(n: u32) -> Result<Self> {
        Ok(Self::zeros(n)?.complement())
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for i in 0..t.len() {
            if f(i) {
                t.words[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(t)
    }

    /// Table for `n <= 6` packed into the low `2^n` bits of a word.
    pub fn from_u64(n: u32, bits: u64) -> Result<Self> {
        if n > MAX_CANONICAL_N {
            return Err(Error::Range(format!("from_u64 needs n <= 6, got {n}")));
        }
        check_dimension(n)?;
        let full = full_mask(n);
        if bits & !full != 0 {
            return Err(Error::Range(format!("bits set beyond 2^{n} entries")));
        }
        Ok(TruthTable { n, words: vec![bits] })
    }

    pub fn from_bools(n: u32, bits: &[bool]) -> Result<Self> {
        if bits.len() != 1usize << n.min(MAX_N) || n > MAX_N {
            return Err(Error::Range(format!(
                "expected 2^{n} entries, got {}",
                bits.len()
            )));
        }
        Self::from_fn(n, |i| bits[i])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len(), "index {index} out of range");
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    /// Packed words, entry `i` at bit `i % 64` of word `i / 64`.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn as_u64(&self) -> Option<u64> {
        (self.n <= MAX_CANONICAL_N).then(|| self.words[0])
    }

    /// `N_1`, the size of the preimage of 1.
    pub fn ones_count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `N_0`.
    pub fn zeros_count(&self) -> u64 {
        self.len() as u64 - self.ones_count()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Output complement `1 - f`.
    pub fn complement(&self) -> TruthTable {
        let len = self.len();
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if len < 64 {
            words[0] &= (1u64 << len) - 1;
        }
        TruthTable { n: self.n, words }
    }

    /// `g(x) = f(x')` where `x'_{perm[j]} = x_j`, coordinates 0-based.
    ///
    /// `perm` must be a permutation of `0..n`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Result<TruthTable> {
        let n = self.n as usize;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Range(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        Self::from_fn(self.n, |i| {
            let mut src = 0usize;
            for (j, &pj) in perm.iter().enumerate() {
                let bit = (i >> (n - 1 - j)) & 1;
                src |= bit << (n - 1 - pj);
            }
            self.get(src)
        })
    }

    /// `g(x) = f(x XOR m)` where `m` is given as an index mask; flipping
    /// coordinate `x_j` corresponds to bit `n - j` of the mask.
    pub fn negate_inputs(&self, index_mask: usize) -> Result<TruthTable> {
        if index_mask >= self.len() {
            return Err(Error::Range(format!("negation mask {index_mask:#x} too wide")));
        }
        Self::from_fn(self.n, |i| self.get(i ^ index_mask))
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self)
    }
}

/// Entries in index order, e.g. `1000` for the single point at index 0.
impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn check_dimension(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Range(format!("dimension {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

/// The function families: the four single-point and subcube classes, the
/// dictators, and lexicographic prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum FunctionClass {
    /// Exactly one input, `witness_index`, maps to 1.
    Class1 { witness_index: u64 },
    /// Exactly one input, `witness_index`, maps to 0.
    Class2 { witness_index: u64 },
    /// 1 on the subcube where the first `r` coordinates equal `fixed_prefix`.
    Class3 { r: u32, fixed_prefix: u64 },
    /// Complement of [`FunctionClass::Class3`].
    Class4 { r: u32, fixed_prefix: u64 },
    /// `f(x) = x_j`, `j` 1-based.
    Dictator { j: u32 },
    /// 1 on the `ones_count` lexicographically smallest inputs.
    Lex { ones_count: u64 },
}

impl FunctionClass {
    pub fn validate(&self, n: u32) -> Result<()> {
        check_dimension(n)?;
        let size = 1u64 << n;
        let bad = |msg: String| Err(Error::Range(msg));
        match *self {
            FunctionClass::Class1 { witness_index } | FunctionClass::Class2 { witness_index } => {
                if witness_index >= size {
                    return bad(format!("witness index {witness_index} >= 2^{n}"));
                }
            }
            FunctionClass::Class3 { r, fixed_prefix } | FunctionClass::Class4 { r, fixed_prefix } => {
                if r < 1 || r + 1 > n {
                    return bad(format!("subcube depth r={r} outside 1..={}", n as i64 - 1));
                }
                if fixed_prefix >= 1u64 << r {
                    return bad(format!("prefix {fixed_prefix} >= 2^{r}"));
                }
            }
            FunctionClass::Dictator { j } => {
                if j < 1 || j > n {
                    return bad(format!("dictator coordinate {j} outside 1..={n}"));
                }
            }
            FunctionClass::Lex { ones_count } => {
                if ones_count > size {
                    return bad(format!("lex ones count {ones_count} > 2^{n}"));
                }
            }
        }
        Ok(())
    }

    /// True for the four families covered by the MI bound proof.
    pub fn is_structured(&self) -> bool {
        !matches!(self, FunctionClass::Dictator { .. } | FunctionClass::Lex { .. })
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionClass::Class1 { witness_index } => write!(f, "class1:i={witness_index}"),
            FunctionClass::Class2 { witness_index } => write!(f, "class2:i={witness_index}"),
            FunctionClass::Class3 { r, fixed_prefix } => write!(f, "class3:r={r}:prefix={fixed_prefix}"),
            FunctionClass::Class4 { r, fixed_prefix } => write!(f, "class4:r={r}:prefix={fixed_prefix}"),
            FunctionClass::Dictator { j } => write!(f, "dictator:j={j}"),
            FunctionClass::Lex { ones_count } => write!(f, "lex:n1={ones_count}"),
        }
    }
}

/// Parses `class1:i=0`, `class3:r=2:prefix=1`, `dictator:j=1`, `lex:n1=3`.
/// Omitted parameters default to `i=0`, `prefix=0`, `j=1`; `r` and `n1`
/// are required.
impl FromStr for FunctionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default().to_ascii_lowercase();
        let mut params = std::collections::BTreeMap::new();
        for part in parts {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {s:?}, got {part:?}")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value for {k} in {s:?}")))?;
            params.insert(k.trim().to_ascii_lowercase(), v);
        }
        let get = |keys: &[&str], default: Option<u64>| -> Result<u64> {
            keys.iter()
                .find_map(|k| params.get(*k).copied())
                .or(default)
                .ok_or_else(|| Error::Parse(format!("{s:?} is missing parameter {}", keys[0])))
        };
        let small = |v: u64| -> Result<u32> {
            u32::try_from(v).map_err(|_| Error::Parse(format!("parameter {v} too large")))
        };
        let class = match kind.as_str() {
            "class1" => FunctionClass::Class1 { witness_index: get(&["i"], Some(0))? },
            "class2" => FunctionClass::Class2 { witness_index: get(&["i"], Some(0))? },
            "class3" => FunctionClass::Class3 {
                r: small(get(&["r"], None)?)?,
                fixed_prefix: get(&["prefix"], Some(0))?,
            },
            "class4" => FunctionClass::Class4 {
                r: small(get(&["r"], None)?)?,
                fixed_prefix: get(&["prefix"], Some(0))?,
            },
            "dictator" => FunctionClass::Dictator { j: small(get(&["j"], Some(1))?)? },
            "lex" => FunctionClass::Lex { ones_count: get(&["n1", "ones"], None)? },
            other => return Err(Error::Parse(format!("unknown function class {other:?}"))),
        };
        Ok(class)
    }
}

/// Builds the truth table of `class` on `n` variables.
pub fn make_class(n: u32, class: &FunctionClass) -> Result<TruthTable> {
    class.validate(n)?;
    let shift = |k: u32| n - k;
    match *class {
        FunctionClass::Class1 { witness_index } => {
            TruthTable::from_fn(n, |i| i as u64 == witness_index)
        }
        FunctionClass::Class2 { witness_index } => {
            TruthTable::from_fn(n, |i| i as u64 != witness_index)
        }
        FunctionClass::Class3 { r, fixed_prefix } => {
            TruthTable::from_fn(n, |i| (i as u64) >> shift(r) == fixed_prefix)
        }
        FunctionClass::Class4 { r, fixed_prefix } => {
            TruthTable::from_fn(n, |i| (i as u64) >> shift(r) != fixed_prefix)
        }
        FunctionClass::Dictator { j } => TruthTable::from_fn(n, |i| (i >> shift(j)) & 1 == 1),
        FunctionClass::Lex { ones_count } => TruthTable::from_fn(n, |i| (i as u64) < ones_count),
    }
}

/// Output complement.
pub fn complement(f: &TruthTable) -> TruthTable {
    f.complement()
}

/// Lexicographically smallest table (entry 0 compared first, `0 < 1`) in
/// the orbit of `f` under output complement, input permutations and input
/// negations.
pub fn canonical_form(f: &TruthTable) -> Result<TruthTable> {
    let n = f.n();
    let bits = f
        .as_u64()
        .ok_or_else(|| Error::Unsupported(format!("canonical form needs n <= 6, got {n}")))?;
    TruthTable::from_u64(n, Symmetry::new(n).canonical(bits))
}

/// Precomputed walk over the symmetry group for packed tables with `n <= 6`.
///
/// The walk applies Heap's sequence of index-bit transpositions and, between
/// them, a Gray-code sequence of index-bit flips, which together visit every
/// one of the `n! * 2^n` input transformations. Each step is a single
/// delta-swap on the packed word.
#[derive(Clone, Debug)]
pub struct Symmetry {
    n: u32,
    full: u64,
    swaps: Vec<(u32, u32)>,
}

/// `LOW_HALF[b]` selects the positions whose index has bit `b` clear.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

fn full_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

impl Symmetry {
    pub fn new(n: u32) -> Self {
        assert!((1..=MAX_CANONICAL_N).contains(&n), "symmetry walk needs 1 <= n <= 6");
        Symmetry {
            n,
            full: full_mask(n),
            swaps: heap_transpositions(n as usize),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of table transformations visited (input group times complement).
    pub fn group_order(&self) -> u64 {
        (2 * (self.swaps.len() as u64 + 1)) << self.n
    }

    /// Negates the input bit `b` of the index.
    #[inline]
    pub fn flip(t: u64, b: u32) -> u64 {
        let s = 1u32 << b;
        let m = LOW_HALF[b as usize];
        ((t & m) << s) | ((t >> s) & m)
    }

    /// Exchanges index bits `i < j`.
    #[inline]
    pub fn swap(t: u64, i: u32, j: u32) -> u64 {
        debug_assert!(i < j);
        let shift = (1u32 << j) - (1u32 << i);
        let mask = !LOW_HALF[i as usize] & LOW_HALF[j as usize];
        let x = (t ^ (t >> shift)) & mask;
        t ^ x ^ (x << shift)
    }

    /// Calls `visit` on every image of `t` under the input group; the
    /// complement of each image is left to the caller.
    pub fn for_each_image(&self, t: u64, mut visit: impl FnMut(u64)) {
        let mut cur = t;
        let gray = |cur: &mut u64, visit: &mut dyn FnMut(u64)| {
            visit(*cur);
            for g in 1u32..(1 << self.n) {
                *cur = Self::flip(*cur, g.trailing_zeros());
                visit(*cur);
            }
        };
        gray(&mut cur, &mut visit);
        for &(i, j) in &self.swaps {
            cur = Self::swap(cur, i, j);
            gray(&mut cur, &mut visit);
        }
    }

    /// Canonical representative of the orbit of `t`.
    pub fn canonical(&self, t: u64) -> u64 {
        let mut best = t;
        let full = self.full;
        self.for_each_image(t, |img| {
            if lex_less(img, best) {
                best = img;
            }
            let c = img ^ full;
            if lex_less(c, best) {
                best = c;
            }
        });
        best
    }
}

/// Lexicographic order on tables compared from index 0 upwards.
#[inline]
pub fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) == 0
}

/// Transpositions of Heap's algorithm; applying them in order from the
/// identity visits all `n!` permutations.
fn heap_transpositions(n: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            let k = if i % 2 == 0 { 0 } else { c[i] };
            out.push((k.min(i) as u32, k.max(i) as u32));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(t: &TruthTable) -> String {
        t.to_string()
    }

    #[test]
    fn class1_single_point() {
        let t = make_class(2, &FunctionClass::Class1 { witness_index: 0 }).unwrap();
        assert_eq!(bits(&t), "1000");
        assert_eq!(t.ones_count(), 1);
    }

    #[test]
    fn dictator_uses_msb_for_x1() {
        let t = make_class(2, &FunctionClass::Dictator { j: 1 }).unwrap();
        assert_eq!(bits(&t), "0011");
        let t = make_class(2, &FunctionClass::Dictator { j: 2 }).unwrap();
        assert_eq!(bits(&t), "0101");
    }

    #[test]
    fn class3_depth_one_is_dictator() {
        let a = make_class(3, &FunctionClass::Class3 { r: 1, fixed_prefix: 1 }).unwrap();
        let b = make_class(3, &FunctionClass::Dictator { j: 1 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn class3_subcube_size() {
        for n in 2..=8 {
            for r in 1..n {
                let t = make_class(n, &FunctionClass::Class3 { r, fixed_prefix: (1 << r) - 1 }).unwrap();
                assert_eq!(t.ones_count(), 1 << (n - r));
                let c = make_class(n, &FunctionClass::Class4 { r, fixed_prefix: (1 << r) - 1 }).unwrap();
                assert_eq!(c, t.complement());
            }
        }
    }

    #[test]
    fn class2_is_complement_of_class1() {
        for i in 0..8 {
            let a = make_class(3, &FunctionClass::Class1 { witness_index: i }).unwrap();
            let b = make_class(3, &FunctionClass::Class2 { witness_index: i }).unwrap();
            assert_eq!(complement(&a), b);
        }
    }

    #[test]
    fn complement_examples() {
        let t = TruthTable::from_u64(2, 0b0001).unwrap();
        assert_eq!(bits(&t), "1000");
        assert_eq!(bits(&t.complement()), "0111");
        assert_eq!(t.complement().complement(), t);
        assert_eq!(TruthTable::zeros(5).unwrap().complement(), TruthTable::ones(5).unwrap());
        let big = TruthTable::zeros(9).unwrap();
        assert_eq!(big.complement().ones_count(), 512);
    }

    #[test]
    fn lex_prefix() {
        let t = make_class(3, &FunctionClass::Lex { ones_count: 3 }).unwrap();
        assert_eq!(bits(&t), "11100000");
    }

    #[test]
    fn parameter_errors() {
        assert!(make_class(2, &FunctionClass::Class1 { witness_index: 4 }).is_err());
        assert!(make_class(3, &FunctionClass::Class3 { r: 3, fixed_prefix: 0 }).is_err());
        assert!(make_class(3, &FunctionClass::Class3 { r: 0, fixed_prefix: 0 }).is_err());
        assert!(make_class(3, &FunctionClass::Class4 { r: 2, fixed_prefix: 4 }).is_err());
        assert!(make_class(3, &FunctionClass::Dictator { j: 0 }).is_err());
        assert!(make_class(3, &FunctionClass::Dictator { j: 4 }).is_err());
        assert!(make_class(0, &FunctionClass::Dictator { j: 1 }).is_err());
        assert!(make_class(25, &FunctionClass::Dictator { j: 1 }).is_err());
    }

    #[test]
    fn class_spec_round_trip() {
        for s in ["class1:i=0", "class2:i=5", "class3:r=2:prefix=1", "class4:r=1:prefix=0", "dictator:j=3", "lex:n1=7"] {
            let c: FunctionClass = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!("class3:r=2".parse::<FunctionClass>().unwrap(), FunctionClass::Class3 { r: 2, fixed_prefix: 0 });
        assert!("class3".parse::<FunctionClass>().is_err());
        assert!("foo:i=1".parse::<FunctionClass>().is_err());
        assert!("class1:i".parse::<FunctionClass>().is_err());
    }

    #[test]
    fn canonical_examples() {
        let ones = TruthTable::ones(3).unwrap();
        assert_eq!(canonical_form(&ones).unwrap(), TruthTable::zeros(3).unwrap());
        for n in 1..=5 {
            let forms: Vec<_> = (1..=n)
                .map(|j| canonical_form(&make_class(n, &FunctionClass::Dictator { j }).unwrap()).unwrap())
                .collect();
            assert!(forms.windows(2).all(|w| w[0] == w[1]));
        }
        assert!(canonical_form(&TruthTable::zeros(7).unwrap()).is_err());
    }

    #[test]
    fn delta_swaps_match_generic_transforms() {
        let t = TruthTable::from_u64(4, 0b1011_0010_0111_0001).unwrap();
        let w = t.as_u64().unwrap();
        // index bit b <-> coordinate x_{n-b}
        for b in 0..4 {
            let g = t.negate_inputs(1 << b).unwrap();
            assert_eq!(Symmetry::flip(w, b), g.as_u64().unwrap());
        }
        // swapping index bits 0 and 2 swaps coordinates x_4 and x_2
        let g = t.permute_inputs(&[0, 3, 2, 1]).unwrap();
        assert_eq!(Symmetry::swap(w, 0, 2), g.as_u64().unwrap());
    }

    #[test]
    fn group_walk_visits_whole_group() {
        for n in 1..=4u32 {
            let s = Symmetry::new(n);
            let mut count = 0u64;
            s.for_each_image(0, |_| count += 1);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(count, fact << n);
            assert_eq!(s.group_order(), 2 * count);
        }
    }

    #[test]
    fn iter_ones_matches_get() {
        let t = TruthTable::from_fn(8, |i| i % 7 == 3).unwrap();
        let ones: Vec<_> = t.iter_ones().collect();
        let expect: Vec<_> = (0..256).filter(|i| i % 7 == 3).collect();
        assert_eq!(ones, expect);
    }
}
