//! Partitions, compositions, integer vectors and the small statistics
//! (z, pi, delta, rho) that the expansion formulas consume.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts. Trailing zeros are dropped on
/// construction so that equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the entries and drops zeros.
    pub fn from_unsorted(parts: &[u32]) -> Partition {
        let mut p: Vec<u32> = parts.iter().copied().filter(|&v| v > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition(p)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `m[i]` is the number of parts equal to `i` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<u32> {
        let top = self.0.first().copied().unwrap_or(0) as usize;
        let mut m = vec![0u32; top + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.part(0);
        let parts = (1..=top)
            .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: u32) -> Partition {
        Partition::from_unsorted(&self.0.iter().map(|p| p * k).collect::<Vec<_>>())
    }

    /// Parts padded with zeros to length `n` (never truncates).
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        v
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        Partition::all_bounded(n, usize::MAX)
    }

    /// All partitions of `n` with at most `max_len` parts.
    pub fn all_bounded(n: u32, max_len: usize) -> Vec<Partition> {
        fn rec(rem: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=cap.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, max_len, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        write_list(f, &self.0)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        Partition::new(parse_list(s)?)
    }
}

/// Ordered list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(Error::Invalid(format!(
                "composition parts must be positive: {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The partition obtained by sorting the parts.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(&self.0)
    }

    /// All compositions of `n`, ordered by the bit pattern of their cut
    /// points.
    pub fn all(n: u32) -> Vec<Composition> {
        if n == 0 {
            return vec![Composition(Vec::new())];
        }
        (0u64..1 << (n - 1))
            .map(|mask| {
                let mut parts = Vec::new();
                let mut run = 1;
                for i in 0..n - 1 {
                    if mask >> i & 1 == 1 {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                Composition(parts)
            })
            .collect()
    }

    /// Whether `self` refines `other` (other is a coarsening of self).
    pub fn refines(&self, other: &Composition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let mut acc = 0;
        let mut it = self.0.iter();
        for &target in &other.0 {
            while acc < target {
                match it.next() {
                    Some(&p) => acc += p,
                    None => return false,
                }
            }
            if acc != target {
                return false;
            }
            acc = 0;
        }
        true
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        write_list(f, &self.0)
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Composition> {
        Composition::new(parse_list(s)?.into_iter().filter(|&v| v > 0).collect())
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
    for (i, p) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

/// Parses a comma-separated list of non-negative integers. The empty string,
/// `-` and `0` all denote the empty list.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() || s == "-" || s == "()" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

/// Comma-separated list of (possibly negative) integers.
pub fn parse_signed_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() || s == "-" || s == "()" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{t}` is not an integer")))
        })
        .collect()
}

/// Integer vector. When `doubled` is set the stored entries are twice the
/// represented (half-integer) values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntVector {
    entries: Vec<i64>,
    doubled: bool,
}

impl IntVector {
    pub fn new(entries: Vec<i64>) -> IntVector {
        IntVector {
            entries,
            doubled: false,
        }
    }

    pub fn from_doubled(entries: Vec<i64>) -> IntVector {
        IntVector {
            entries,
            doubled: true,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored entries (doubled when `is_doubled`).
    pub fn raw(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    /// Same vector with doubled storage.
    pub fn to_doubled(&self) -> IntVector {
        if self.doubled {
            self.clone()
        } else {
            IntVector::from_doubled(self.entries.iter().map(|v| 2 * v).collect())
        }
    }

    /// Plain integer entries, or `None` if some entry is a proper half.
    pub fn to_plain(&self) -> Option<Vec<i64>> {
        if !self.doubled {
            return Some(self.entries.clone());
        }
        self.entries
            .iter()
            .map(|v| if v % 2 == 0 { Some(v / 2) } else { None })
            .collect()
    }

    pub fn add(&self, other: &IntVector) -> Result<IntVector> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntVector) -> Result<IntVector> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &IntVector, op: impl Fn(i64, i64) -> i64) -> Result<IntVector> {
        if self.len() != other.len() {
            return Err(Error::Invalid(format!(
                "vector lengths differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        let (a, b) = if self.doubled == other.doubled {
            (self.clone(), other.clone())
        } else {
            (self.to_doubled(), other.to_doubled())
        };
        Ok(IntVector {
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| op(*x, *y)).collect(),
            doubled: a.doubled,
        })
    }

    /// Entries reordered as `out[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> IntVector {
        IntVector {
            entries: perm.iter().map(|&p| self.entries[p]).collect(),
            doubled: self.doubled,
        }
    }
}

/// z_λ = prod_i i^{m_i} m_i!.
pub fn z_of(lambda: &Partition) -> u128 {
    z_of_parts(lambda.parts())
}

/// z of the partition obtained by sorting `parts`.
pub fn z_of_parts(parts: &[u32]) -> u128 {
    let mut sorted: Vec<u32> = parts.to_vec();
    sorted.sort_unstable();
    let mut z: u128 = 1;
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut m: u128 = 0;
        while i < sorted.len() && sorted[i] == v {
            m += 1;
            z *= v as u128 * m;
            i += 1;
        }
    }
    z
}

/// Every coarsening beta of `alpha` together with pi(alpha, beta): the
/// product over blocks of the partial sums of the merged parts.
pub fn coarsenings_with_pi(alpha: &Composition) -> Vec<(Composition, u128)> {
    let l = alpha.len();
    if l == 0 {
        return vec![(alpha.clone(), 1)];
    }
    let a = alpha.parts();
    (0u64..1 << (l - 1))
        .map(|merge| {
            let mut parts = Vec::new();
            let mut pi: u128 = 1;
            let mut acc = a[0];
            pi *= acc as u128;
            for i in 1..l {
                if merge >> (i - 1) & 1 == 1 {
                    acc += a[i];
                } else {
                    parts.push(acc);
                    acc = a[i];
                }
                pi *= acc as u128;
            }
            parts.push(acc);
            (Composition(parts), pi)
        })
        .collect()
}

/// pi(alpha, beta) when beta coarsens alpha.
pub fn pi_of(alpha: &Composition, beta: &Composition) -> Option<u128> {
    if !alpha.refines(beta) {
        return None;
    }
    let mut pi: u128 = 1;
    let mut it = alpha.parts().iter();
    for &target in beta.parts() {
        let mut acc = 0;
        while acc < target {
            acc += it.next().copied().unwrap_or(0);
            pi *= acc as u128;
        }
    }
    Some(pi)
}

/// delta = (n-1, ..., 1, 0) and rho = ((n-1)/2, (n-3)/2, ..., (1-n)/2) stored
/// doubled.
pub fn special_vectors(n: usize) -> Result<(IntVector, IntVector)> {
    if n == 0 {
        return Err(Error::Invalid("special vectors need n >= 1".into()));
    }
    let n = n as i64;
    let delta = IntVector::new((0..n).map(|i| n - 1 - i).collect());
    let rho = IntVector::from_doubled((0..n).map(|i| n - 1 - 2 * i).collect());
    Ok((delta, rho))
}

/// All permutations of `0..n` in lexicographic order, each with its sign.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            out.push((cur.clone(), permutation_sign(cur)));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Binomial coefficient as u128.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}
