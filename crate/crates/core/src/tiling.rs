//! k-ribbon tilings of cylindric diagrams, k-partitioned boundary words,
//! good pairs and the k-pairing constant.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::cylindric::{Cell, CylindricDiagram};
use crate::error::{Error, Result};
use crate::ribbon::{has_square, is_connected, subdiagrams_removing, vertical_edges};

/// Letters of `w` split by index modulo k (1-based indices, class `i`
/// holding indices congruent to `i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPartitionedWord {
    pub word: Vec<u8>,
    pub k: usize,
    pub subwords: Vec<Vec<u8>>,
    pub one_counts: Vec<usize>,
}

fn check_divides(len: usize, k: usize) -> Result<()> {
    if k == 0 || !len.is_multiple_of(k) {
        return Err(Error::Invalid(format!("k = {k} does not divide word length {len}")));
    }
    Ok(())
}

pub fn k_partition(w: &[u8], k: usize) -> Result<KPartitionedWord> {
    check_divides(w.len(), k)?;
    let mut subwords = vec![Vec::new(); k];
    for (a, &b) in w.iter().enumerate() {
        // Index a+1 lands in class ((a+1) - 1) mod k, listed as i = 1..=k.
        subwords[a % k].push(b);
    }
    let one_counts = subwords.iter().map(|s| s.iter().filter(|&&b| b == 1).count()).collect();
    Ok(KPartitionedWord {
        word: w.to_vec(),
        k,
        subwords,
        one_counts,
    })
}

/// Why class `i` satisfies (or fails) the good-pair condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GoodReason {
    SameParityAsY,
    NoOnes,
    AllOnesOdd,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPairReport {
    pub good: bool,
    pub one_counts: Vec<usize>,
    pub reasons: Vec<GoodReason>,
}

pub fn is_good_pair(d: &CylindricDiagram, k: usize) -> Result<GoodPairReport> {
    let w = d.outer_loop().word().to_vec();
    let part = k_partition(&w, k)?;
    let y = d.y();
    let full = w.len() / k;
    let reasons: Vec<GoodReason> = part
        .one_counts
        .iter()
        .map(|&yi| {
            if yi % 2 == y % 2 {
                GoodReason::SameParityAsY
            } else if yi == 0 {
                GoodReason::NoOnes
            } else if yi == full && full % 2 == 1 {
                GoodReason::AllOnesOdd
            } else {
                GoodReason::Fails
            }
        })
        .collect();
    Ok(GoodPairReport {
        good: reasons.iter().all(|&r| r != GoodReason::Fails),
        one_counts: part.one_counts,
        reasons,
    })
}

/// Where the halving in the pairing constant is applied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairingFloor {
    /// Floor of half the whole sum.
    #[default]
    Total,
    /// Sum of the floors of each halved term.
    PerTerm,
}

/// `p[i][j]`: ordered pairs of ones at positions `a < b` with `a` in class
/// `i` and `b` in class `j`.
pub fn pair_counts(w: &[u8], k: usize) -> Result<Vec<Vec<u64>>> {
    check_divides(w.len(), k)?;
    let mut p = vec![vec![0u64; k]; k];
    let mut seen = vec![0u64; k];
    for (b, &letter) in w.iter().enumerate() {
        if letter == 1 {
            for i in 0..k {
                p[i][b % k] += seen[i];
            }
            seen[b % k] += 1;
        }
    }
    Ok(p)
}

pub fn invar_k(w: &[u8], k: usize, floor: PairingFloor) -> Result<i64> {
    let p = pair_counts(w, k)?;
    let diff = |i: usize, j: usize| p[i][j] as i64 - p[j][i] as i64;
    let pairs = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
    Ok(match floor {
        PairingFloor::Total => pairs.map(|(i, j)| diff(i, j)).sum::<i64>().div_euclid(2),
        PairingFloor::PerTerm => pairs.map(|(i, j)| diff(i, j).div_euclid(2)).sum(),
    })
}

pub fn epsilon_k(w: &[u8], k: usize, floor: PairingFloor) -> Result<u8> {
    Ok(invar_k(w, k, floor)?.rem_euclid(2) as u8)
}

pub fn rotated(w: &[u8], s: usize) -> Vec<u8> {
    let s = s % w.len().max(1);
    w[s..].iter().chain(&w[..s]).copied().collect()
}

/// A removable k-ribbon of `d`: the boundary it leaves behind and its cells.
#[derive(Debug, Clone)]
pub struct Removal {
    pub remaining: Vec<i64>,
    pub cells: Vec<Cell>,
    pub height: u32,
}

pub fn ribbon_height(r: &CylindricDiagram) -> u32 {
    if r.size() == r.x() + r.y() {
        r.y() as u32
    } else {
        vertical_edges(r)
    }
}

pub fn removable_ribbons(d: &CylindricDiagram, k: usize) -> Result<Vec<Removal>> {
    if k == 0 || k > d.x() + d.y() || k > d.size() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for nu in subdiagrams_removing(d, k) {
        let r = d.between(nu.clone(), d.outer_edges().to_vec())?;
        if is_connected(&r) && !has_square(&r) {
            out.push(Removal {
                remaining: nu,
                cells: r.cells(),
                height: ribbon_height(&r),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tiling {
    /// Ribbon supports, each sorted, listed in sorted order.
    pub ribbons: Vec<Vec<Cell>>,
    pub heights: Vec<u32>,
    /// Outer edges of the core reached.
    pub core_outer: Vec<i64>,
    pub core_size: usize,
}

impl Tiling {
    pub fn total_height(&self) -> u32 {
        self.heights.iter().sum()
    }

    pub fn render(&self, d: &CylindricDiagram) -> String {
        let mut labels = HashMap::new();
        for (j, r) in self.ribbons.iter().enumerate() {
            for &c in r {
                labels.insert(c, (j + 1).to_string());
            }
        }
        for c in d.cells() {
            labels.entry(c).or_insert_with(|| "c".to_string());
        }
        d.render(Some(&labels))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingReport {
    pub k: usize,
    pub tilings: Vec<Tiling>,
    pub total_heights: Vec<u32>,
    pub parities: BTreeSet<u32>,
    /// Distinct cores as sorted cell lists.
    pub cores: Vec<Vec<Cell>>,
    /// Number of ordered removal sequences.
    pub sequences: u128,
}

type PartialTilings = BTreeSet<(Vec<(Vec<Cell>, u32)>, Vec<i64>)>;

/// Every unordered k-ribbon tiling down to a core.
pub fn enumerate_tilings(d: &CylindricDiagram, k: usize, limits: &Limits) -> Result<TilingReport> {
    Limits::check("tiling boxes", d.size(), limits.max_tiling_boxes)?;
    if k == 0 {
        return Err(Error::Invalid("ribbon size must be positive".into()));
    }
    let mut memo: HashMap<Vec<i64>, (PartialTilings, u128)> = HashMap::new();
    let (all, sequences) = tilings_from(d, k, d.outer_edges().to_vec(), &mut memo)?;
    let mut tilings: Vec<Tiling> = all
        .into_iter()
        .map(|(pieces, core_outer)| {
            let core = d.between(d.inner_edges().to_vec(), core_outer.clone()).unwrap();
            Tiling {
                heights: pieces.iter().map(|p| p.1).collect(),
                ribbons: pieces.into_iter().map(|p| p.0).collect(),
                core_size: core.size(),
                core_outer,
            }
        })
        .collect();
    tilings.sort();
    let total_heights: Vec<u32> = tilings.iter().map(|t| t.total_height()).collect();
    let parities = total_heights.iter().map(|h| h % 2).collect();
    let cores: BTreeSet<Vec<Cell>> = tilings
        .iter()
        .map(|t| {
            d.between(d.inner_edges().to_vec(), t.core_outer.clone())
                .unwrap()
                .cells()
        })
        .collect();
    Ok(TilingReport {
        k,
        tilings,
        total_heights,
        parities,
        cores: cores.into_iter().collect(),
        sequences,
    })
}

fn tilings_from(
    d: &CylindricDiagram,
    k: usize,
    outer: Vec<i64>,
    memo: &mut HashMap<Vec<i64>, (PartialTilings, u128)>,
) -> Result<(PartialTilings, u128)> {
    if let Some(v) = memo.get(&outer) {
        return Ok(v.clone());
    }
    let cur = d.between(d.inner_edges().to_vec(), outer.clone())?;
    let removals = removable_ribbons(&cur, k)?;
    let mut out = PartialTilings::new();
    let mut sequences = 0u128;
    if removals.is_empty() {
        out.insert((Vec::new(), outer.clone()));
        sequences = 1;
    }
    for rm in removals {
        let (sub, n) = tilings_from(d, k, rm.remaining.clone(), memo)?;
        sequences += n;
        for (pieces, core) in sub {
            let mut pieces = pieces;
            pieces.push((rm.cells.clone(), rm.height));
            pieces.sort();
            out.insert((pieces, core));
        }
    }
    memo.insert(outer, (out.clone(), sequences));
    Ok((out, sequences))
}

/// Height parities of the tilings reaching the empty diagram, without
/// materializing the tilings.
pub fn empty_core_parities(d: &CylindricDiagram, k: usize) -> Result<BTreeSet<u32>> {
    let mut memo: HashMap<Vec<i64>, u8> = HashMap::new();
    let bits = parity_bits(d, k, d.outer_edges().to_vec(), &mut memo)?;
    Ok((0..2).filter(|p| bits >> p & 1 == 1).collect())
}

fn parity_bits(d: &CylindricDiagram, k: usize, outer: Vec<i64>, memo: &mut HashMap<Vec<i64>, u8>) -> Result<u8> {
    if outer == d.inner_edges() {
        return Ok(1);
    }
    if let Some(&b) = memo.get(&outer) {
        return Ok(b);
    }
    let cur = d.between(d.inner_edges().to_vec(), outer.clone())?;
    let mut bits = 0u8;
    for rm in removable_ribbons(&cur, k)? {
        let sub = parity_bits(d, k, rm.remaining, memo)?;
        bits |= if rm.height % 2 == 0 {
            sub
        } else {
            ((sub & 1) << 1) | ((sub >> 1) & 1)
        };
    }
    memo.insert(outer, bits);
    Ok(bits)
}

/// Inner boundary word alternates 1 and 0 around the loop.
pub fn is_inner_strict(d: &CylindricDiagram) -> bool {
    let w = d.inner_loop().word().to_vec();
    w.len().is_multiple_of(2) && (0..w.len()).all(|i| w[i] != w[(i + 1) % w.len()])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    /// None when k does not divide x + y.
    pub good_pair: Option<bool>,
    pub inner_strict: bool,
    /// Parities of total heights over tilings with empty core.
    pub parities_observed: BTreeSet<u32>,
    pub cancellation_free: bool,
}

pub fn parity_report(d: &CylindricDiagram, k: usize, limits: &Limits) -> Result<ParityReport> {
    Limits::check("tiling boxes", d.size(), limits.max_tiling_boxes)?;
    let good_pair = if k > 0 && (d.x() + d.y()).is_multiple_of(k) {
        Some(is_good_pair(d, k)?.good)
    } else {
        None
    };
    let parities_observed = if d.is_empty() {
        BTreeSet::new()
    } else {
        empty_core_parities(d, k)?
    };
    Ok(ParityReport {
        good_pair,
        inner_strict: is_inner_strict(d),
        cancellation_free: parities_observed.len() <= 1,
        parities_observed,
    })
}

/// Histogram of total heights, convenient for printing.
pub fn height_histogram(r: &TilingReport) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &t in &r.total_heights {
        *h.entry(t).or_default() += 1;
    }
    h
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn word(s: &str) -> Vec<u8> {
        crate::cylindric::BoundaryLoop::parse_word(s).unwrap()
    }

    pub(crate) fn two_ribbon_example() -> CylindricDiagram {
        "skew lambda=4,1,1 mu=0,0,0 shift=3 rows=3".parse().unwrap()
    }

    /// Rows {k-1..3k-2}, {k-1}, {1..k-1} on C_{3k-3,3}.
    pub(crate) fn mixed_parity_example(k: i64) -> CylindricDiagram {
        let lambda = [3 * k - 2, k - 1, k - 1];
        let mu = [k - 2, k - 2, 0];
        CylindricDiagram::from_skew(&lambda, &mu, (3 * k - 3) as usize, 3, 0).unwrap()
    }

    pub(crate) fn three_fills() -> CylindricDiagram {
        "skew lambda=5,4,3 mu=3,2,1 shift=3 rows=3".parse().unwrap()
    }

    pub(crate) fn core_sizes_example() -> CylindricDiagram {
        "skew lambda=6,5,4 mu=3,2,1 shift=3 rows=3".parse().unwrap()
    }

    pub(crate) fn core_position_example() -> CylindricDiagram {
        "skew lambda=6,5,5,3 mu=4,3,2,1 shift=4 rows=4".parse().unwrap()
    }

    pub(crate) fn core_shape_example() -> CylindricDiagram {
        "skew lambda=8,7,6,5,4 mu=5,4,3,2,1 shift=5 rows=5".parse().unwrap()
    }

    #[test]
    fn three_partitioning() {
        let p = k_partition(&word("110001011010"), 3).unwrap();
        let subs: Vec<String> = p
            .subwords
            .iter()
            .map(|s| s.iter().map(|b| b.to_string()).collect())
            .collect();
        assert_eq!(subs, vec!["1000", "1011", "0110"]);
        assert_eq!(p.one_counts, vec![1, 3, 2]);
        assert!(k_partition(&word("110"), 2).is_err());
        let all = k_partition(&word("1101"), 4).unwrap();
        assert!(all.subwords.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn pair_counts_by_hand() {
        // Ones at 1-based positions 1,2,6,8,9,11 with classes 1,2,3,2,3,2.
        let p = pair_counts(&word("110001011010"), 3).unwrap();
        // Class-1 one at 1 precedes five ones: classes 2,3,2,3,2.
        assert_eq!(p[0], vec![0, 3, 2]);
        // Class-2 ones at 2, 8, 11 see later ones at 6,8,9,11 / 9,11 / none.
        assert_eq!(p[1], vec![0, 3, 3]);
        // Class-3 ones at 6, 9 see 8,9,11 / 11.
        assert_eq!(p[2], vec![0, 3, 1]);
        // (3-0) + (2-0) + (3-3) = 5.
        assert_eq!(invar_k(&word("110001011010"), 3, PairingFloor::Total).unwrap(), 2);
        assert_eq!(epsilon_k(&word("110001011010"), 3, PairingFloor::Total).unwrap(), 0);
        assert_eq!(invar_k(&word("110001011010"), 3, PairingFloor::PerTerm).unwrap(), 2);
        // An odd negative sum rounds down: (0-1) with k = 2.
        assert_eq!(invar_k(&word("0110"), 2, PairingFloor::Total).unwrap(), -1);
    }

    #[test]
    fn single_one_has_no_pairs() {
        for w in ["000000", "001000", "100000"] {
            assert_eq!(invar_k(&word(w), 3, PairingFloor::Total).unwrap(), 0);
        }
    }

    #[test]
    fn two_ribbon_example_has_heights_one_and_two() {
        let d = two_ribbon_example();
        assert_eq!(d.size(), 6);
        let r = enumerate_tilings(&d, 2, &Limits::default()).unwrap();
        assert_eq!(r.tilings.len(), 2);
        let hs: BTreeSet<u32> = r.total_heights.iter().copied().collect();
        assert_eq!(hs, BTreeSet::from([1, 2]));
        assert!(r.tilings.iter().all(|t| t.core_size == 0));
        assert!(!is_good_pair(&d, 2).unwrap().good);
        assert!(r.sequences >= r.tilings.len() as u128);
    }

    #[test]
    fn mixed_parities_for_three_and_four() {
        for k in [3, 4] {
            let d = mixed_parity_example(k);
            assert_eq!(d.size(), 3 * k as usize);
            let rep = parity_report(&d, k as usize, &Limits::default()).unwrap();
            assert_eq!(rep.parities_observed, BTreeSet::from([0, 1]), "k = {k}");
            assert!(!rep.cancellation_free);
        }
    }

    #[test]
    fn three_fills_example() {
        let r = enumerate_tilings(&three_fills(), 3, &Limits::default()).unwrap();
        assert_eq!(r.tilings.len(), 3);
        assert!(r.tilings.iter().all(|t| t.core_size == 0));
    }

    #[test]
    fn cores_of_different_sizes() {
        let r = enumerate_tilings(&core_sizes_example(), 3, &Limits::default()).unwrap();
        let sizes: BTreeSet<usize> = r.tilings.iter().map(|t| t.core_size).collect();
        assert!(sizes.contains(&0));
        assert!(sizes.len() > 1, "{sizes:?}");
    }

    #[test]
    fn cores_in_different_places() {
        let r = enumerate_tilings(&core_position_example(), 4, &Limits::default()).unwrap();
        assert!(r.cores.len() > 1);
        let r = enumerate_tilings(&core_shape_example(), 5, &Limits::default()).unwrap();
        assert!(r.cores.len() > 1);
    }

    #[test]
    fn empty_is_cancellation_free() {
        let d = CylindricDiagram::empty(2, 2).unwrap();
        assert!(!is_inner_strict(&d));
        let staircase = CylindricDiagram::from_edges(2, 2, vec![1, 0], vec![1, 0]).unwrap();
        let rep = parity_report(&staircase, 2, &Limits::default()).unwrap();
        assert!(rep.cancellation_free);
        assert!(rep.inner_strict);
        assert!(rep.parities_observed.is_empty());
    }

    #[test]
    fn size_guard() {
        let d = core_shape_example();
        let tight = Limits {
            max_tiling_boxes: 10,
            ..Limits::default()
        };
        assert!(matches!(enumerate_tilings(&d, 5, &tight), Err(Error::CostGuard { .. })));
    }

    #[test]
    fn parity_and_rotation_on_small_corpus() {
        for d in CylindricDiagram::all_up_to(8, 6, false) {
            let n = d.x() + d.y();
            let w = d.outer_loop().word().to_vec();
            for k in (1..=n).filter(|k| n % k == 0) {
                let good = is_good_pair(&d, k).unwrap().good;
                let e0 = epsilon_k(&w, k, PairingFloor::Total).unwrap();
                let invariant = (0..n).all(|s| epsilon_k(&rotated(&w, s), k, PairingFloor::Total).unwrap() == e0);
                assert_eq!(good, invariant, "{d} k={k}");
                if !good {
                    continue;
                }
                assert!(empty_core_parities(&d, k).unwrap().len() <= 1, "{d} k={k}");
                if k == n {
                    continue;
                }
                for rm in removable_ribbons(&d, k).unwrap() {
                    let smaller = d.with_outer(rm.remaining.clone()).unwrap();
                    let e1 = epsilon_k(smaller.outer_loop().word(), k, PairingFloor::Total).unwrap();
                    assert_eq!(e0 != e1, rm.height % 2 == 1, "{d} k={k}");
                    let before = k_partition(&w, k).unwrap().one_counts;
                    let after = k_partition(smaller.outer_loop().word(), k).unwrap().one_counts;
                    assert_eq!(before, after);
                }
            }
        }
    }

    #[test]
    fn loop_removal_keeps_the_word() {
        // A loop on C_{1,2} has height 2; on C_{2,1} height 1 with the same
        // word before and after.
        let d: CylindricDiagram = "skew lambda=5 shift=2 rows=1".parse().unwrap();
        let rms = removable_ribbons(&d, 3).unwrap();
        assert!(!rms.is_empty());
        for rm in rms {
            assert_eq!(rm.height, 1);
            let smaller = d.with_outer(rm.remaining).unwrap();
            assert_eq!(smaller.outer_loop().word(), d.outer_loop().word());
        }
    }
}
