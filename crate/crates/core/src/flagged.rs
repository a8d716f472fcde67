//! Row-flagged skew Schur polynomials, their Jacobi-Trudi determinant,
//! contingency tables and Littlewood-Richardson coefficients.
//!
//! Skew shapes use English row order: row 1 is the longest, `lambda[0]`.
//! Row `j` of a flagged tableau takes entries from `a[j]..=b[j]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinat::{parse_list, permutations, special_vectors, IntVector, Partition};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::polyring::{SparsePolynomial, Rational};

/// Per-row lower and upper bounds for tableau entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagPair {
    a: Vec<u32>,
    b: Vec<u32>,
}

impl FlagPair {
    /// Weakly increasing flags with `a[i] <= b[i]`.
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<FlagPair> {
        let f = FlagPair::unchecked(a, b)?;
        if !f.is_monotone() {
            return Err(Error::Invalid(format!("flags {f} are not weakly increasing")));
        }
        if let Some(i) = (0..f.len()).find(|&i| f.a[i] > f.b[i]) {
            return Err(Error::Invalid(format!("flag row {} has a > b", i + 1)));
        }
        Ok(f)
    }

    /// Flags with only the length checked. Permuted flags in signed sums
    /// and flags fixed by a first column need not be monotone; a row with
    /// `a > b` admits no entries.
    pub fn unchecked(a: Vec<u32>, b: Vec<u32>) -> Result<FlagPair> {
        if a.len() != b.len() {
            return Err(Error::Invalid(format!(
                "flag lengths differ: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        Ok(FlagPair { a, b })
    }

    /// `a = (1, ..., 1)`, `b = (n, ..., n)`.
    pub fn unrestricted(rows: usize, n: u32) -> FlagPair {
        FlagPair {
            a: vec![1; rows],
            b: vec![n; rows],
        }
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn is_monotone(&self) -> bool {
        self.a.windows(2).all(|w| w[0] <= w[1]) && self.b.windows(2).all(|w| w[0] <= w[1])
    }

    /// Whether `value` may appear in row `row` (0-based).
    pub fn allows(&self, row: usize, value: u32) -> bool {
        self.a[row] <= value && value <= self.b[row]
    }

    /// Every monotone flag pair of the given length with entries in `1..=n`.
    pub fn all(rows: usize, n: u32) -> Vec<FlagPair> {
        fn seqs(rows: usize, lo: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == rows {
                out.push(cur.clone());
                return;
            }
            for v in lo..=n {
                cur.push(v);
                seqs(rows, v, n, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        seqs(rows, 1, n, &mut Vec::new(), &mut all);
        let mut out = Vec::new();
        for a in &all {
            for b in &all {
                if a.iter().zip(b).all(|(x, y)| x <= y) {
                    out.push(FlagPair {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for FlagPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "a={} b={}", j(&self.a), j(&self.b))
    }
}

/// A skew shape `lambda / mu` with a fixed number of rows (rows may be
/// empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    lambda: Vec<u32>,
    mu: Vec<u32>,
}

impl SkewShape {
    /// Pads both lists with zeros to the longer length.
    pub fn new(lambda: &[u32], mu: &[u32]) -> Result<SkewShape> {
        SkewShape::with_rows(lambda, mu, lambda.len().max(mu.len()))
    }

    pub fn with_rows(lambda: &[u32], mu: &[u32], rows: usize) -> Result<SkewShape> {
        if lambda.len() > rows || mu.len() > rows {
            return Err(Error::Invalid(format!("shape has more than {rows} rows")));
        }
        let mut l = lambda.to_vec();
        let mut m = mu.to_vec();
        l.resize(rows, 0);
        m.resize(rows, 0);
        for (name, v) in [("lambda", &l), ("mu", &m)] {
            if v.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Invalid(format!("{name} is not weakly decreasing")));
            }
        }
        if let Some(i) = (0..rows).find(|&i| m[i] > l[i]) {
            return Err(Error::Invalid(format!("mu is not contained in lambda at row {}", i + 1)));
        }
        Ok(SkewShape { lambda: l, mu: m })
    }

    pub fn straight(lambda: &Partition) -> SkewShape {
        SkewShape {
            lambda: lambda.parts().to_vec(),
            mu: vec![0; lambda.len()],
        }
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    pub fn rows(&self) -> usize {
        self.lambda.len()
    }

    pub fn size(&self) -> usize {
        self.lambda.iter().zip(&self.mu).map(|(l, m)| (l - m) as usize).sum()
    }

    pub fn row_len(&self, j: usize) -> u32 {
        self.lambda[j] - self.mu[j]
    }

    /// `k lambda / k mu`.
    pub fn stretched(&self, k: u32) -> SkewShape {
        SkewShape {
            lambda: self.lambda.iter().map(|v| v * k).collect(),
            mu: self.mu.iter().map(|v| v * k).collect(),
        }
    }

    /// Every skew shape with `1..=max_boxes` cells and non-empty rows, up to
    /// translation and up to the width of gaps between disconnected rows.
    /// Normalised so the last row starts in column 1 and a row that does
    /// not touch the one below it starts exactly above its end.
    pub fn all_up_to(max_boxes: usize, max_rows: usize) -> Vec<SkewShape> {
        let mut out = Vec::new();
        fn lengths(left: usize, max_rows: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
            if !cur.is_empty() {
                f(cur);
            }
            if cur.len() == max_rows {
                return;
            }
            for l in 1..=left {
                cur.push(l as u32);
                lengths(left - l, max_rows, cur, f);
                cur.pop();
            }
        }
        lengths(max_boxes, max_rows, &mut Vec::new(), &mut |lens| {
            // Build upwards from the last row.
            fn place(lens: &[u32], j: usize, lambda: &mut Vec<u32>, mu: &mut Vec<u32>, out: &mut Vec<SkewShape>) {
                if j == 0 {
                    out.push(SkewShape {
                        lambda: lambda.iter().rev().copied().collect(),
                        mu: mu.iter().rev().copied().collect(),
                    });
                    return;
                }
                let (below_mu, below_lambda) = (*mu.last().unwrap(), *lambda.last().unwrap());
                let len = lens[j - 1];
                for m in below_mu..=below_lambda {
                    if m + len < below_lambda {
                        continue;
                    }
                    mu.push(m);
                    lambda.push(m + len);
                    place(lens, j - 1, lambda, mu, out);
                    mu.pop();
                    lambda.pop();
                }
            }
            let last = lens.len() - 1;
            place(lens, last, &mut vec![lens[last]], &mut vec![0], &mut out);
        });
        out.sort();
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}/{}", j(&self.lambda), j(&self.mu))
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    /// `"4,3/2"`, or a bare partition.
    fn from_str(s: &str) -> Result<SkewShape> {
        match s.split_once('/') {
            Some((l, m)) => SkewShape::new(&parse_list(l)?, &parse_list(m)?),
            None => SkewShape::new(&parse_list(s)?, &[]),
        }
    }
}

/// A flagged skew tableau: `rows[j]` lists the entries of row `j` from
/// left to right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FlaggedTableau {
    pub rows: Vec<Vec<u32>>,
}

impl FlaggedTableau {
    pub fn weight(&self, n: usize) -> Vec<u32> {
        let mut w = vec![0; n];
        for &v in self.rows.iter().flatten() {
            w[v as usize - 1] += 1;
        }
        w
    }

    /// English layout with `.` for cells of `mu`.
    pub fn render(&self, shape: &SkewShape) -> String {
        let width = self.rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for (j, row) in self.rows.iter().enumerate() {
            let mut cells: Vec<String> = Vec::new();
            for _ in 0..shape.mu[j] {
                cells.push(format!("{:>width$}", "."));
            }
            for v in row {
                cells.push(format!("{v:>width$}"));
            }
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Checks shape, row/column conditions and flags.
pub fn is_flagged_ssyt(shape: &SkewShape, flags: &FlagPair, t: &FlaggedTableau) -> bool {
    if t.rows.len() != shape.rows() || flags.len() != shape.rows() {
        return false;
    }
    for j in 0..shape.rows() {
        let row = &t.rows[j];
        if row.len() != shape.row_len(j) as usize {
            return false;
        }
        if row.windows(2).any(|w| w[0] > w[1]) || row.iter().any(|&v| v == 0 || !flags.allows(j, v)) {
            return false;
        }
        if j > 0 {
            for (k, &v) in row.iter().enumerate() {
                let col = shape.mu[j] + k as u32;
                if col >= shape.mu[j - 1] && col < shape.lambda[j - 1] {
                    let above = t.rows[j - 1][(col - shape.mu[j - 1]) as usize];
                    if above >= v {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Admissible new row ends after placing all copies of `value`, as inclusive
/// ranges per row. Row `j` may grow up to the old end of row `j - 1`.
fn strip_ranges(shape: &SkewShape, flags: &FlagPair, cur: &[u32], value: u32) -> Vec<(u32, u32)> {
    (0..shape.rows())
        .map(|j| {
            if !flags.allows(j, value) {
                return (cur[j], cur[j]);
            }
            let cap = if j == 0 { shape.lambda[0] } else { shape.lambda[j].min(cur[j - 1]) };
            (cur[j], cap.max(cur[j]))
        })
        .collect()
}

fn for_each_strip(ranges: &[(u32, u32)], size: Option<u32>, f: &mut dyn FnMut(&[u32], u32)) {
    // room[j]: most boxes rows j.. can still add
    let mut room = vec![0u32; ranges.len() + 1];
    for j in (0..ranges.len()).rev() {
        room[j] = room[j + 1] + ranges[j].1 - ranges[j].0;
    }
    fn rec(
        ranges: &[(u32, u32)],
        room: &[u32],
        size: Option<u32>,
        acc: u32,
        cur: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32], u32),
    ) {
        let j = cur.len();
        if j == ranges.len() {
            if size.is_none_or(|s| s == acc) {
                f(cur, acc);
            }
            return;
        }
        let (lo, hi) = ranges[j];
        for v in lo..=hi {
            let added = acc + v - lo;
            if let Some(s) = size {
                if added > s {
                    break;
                }
                if added + room[j + 1] < s {
                    continue;
                }
            }
            cur.push(v);
            rec(ranges, room, size, added, cur, f);
            cur.pop();
        }
    }
    rec(ranges, &room, size, 0, &mut Vec::with_capacity(ranges.len()), f);
}

fn check_flags(shape: &SkewShape, flags: &FlagPair) -> Result<()> {
    if flags.len() != shape.rows() {
        return Err(Error::Invalid(format!(
            "flags have {} rows, shape has {}",
            flags.len(),
            shape.rows()
        )));
    }
    Ok(())
}

/// All flagged tableaux with entries in `1..=n`, optionally of a fixed
/// weight (length `n`).
pub fn enumerate_flagged_ssyt(
    shape: &SkewShape,
    flags: &FlagPair,
    n: usize,
    weight: Option<&[u32]>,
) -> Result<Vec<FlaggedTableau>> {
    check_flags(shape, flags)?;
    if let Some(w) = weight {
        if w.len() != n {
            return Err(Error::Invalid(format!("weight must have {n} entries")));
        }
        if w.iter().sum::<u32>() as usize != shape.size() {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.rows()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        shape: &SkewShape,
        flags: &FlagPair,
        n: usize,
        weight: Option<&[u32]>,
        value: usize,
        cur: Vec<u32>,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<FlaggedTableau>,
    ) {
        if cur == shape.lambda {
            out.push(FlaggedTableau { rows: rows.clone() });
            return;
        }
        if value > n {
            return;
        }
        let ranges = strip_ranges(shape, flags, &cur, value as u32);
        let mut nexts = Vec::new();
        for_each_strip(&ranges, weight.map(|w| w[value - 1]), &mut |next, _| nexts.push(next.to_vec()));
        for next in nexts {
            for j in 0..next.len() {
                for _ in cur[j]..next[j] {
                    rows[j].push(value as u32);
                }
            }
            rec(shape, flags, n, weight, value + 1, next.clone(), rows, out);
            for j in 0..next.len() {
                let keep = rows[j].len() - (next[j] - cur[j]) as usize;
                rows[j].truncate(keep);
            }
        }
    }
    rec(shape, flags, n, weight, 1, shape.mu.clone(), &mut rows, &mut out);
    Ok(out)
}

/// The flagged skew Kostka number: flagged tableaux of shape `shape` and
/// weight `weight` (a weak composition; its length is the number of
/// values).
pub fn flagged_kostka(shape: &SkewShape, weight: &[u32], flags: &FlagPair) -> Result<u128> {
    check_flags(shape, flags)?;
    if weight.iter().sum::<u32>() as usize != shape.size() {
        return Ok(0);
    }
    let mut memo: HashMap<(usize, Vec<u32>), u128> = HashMap::new();
    fn rec(
        shape: &SkewShape,
        flags: &FlagPair,
        weight: &[u32],
        v: usize,
        cur: Vec<u32>,
        memo: &mut HashMap<(usize, Vec<u32>), u128>,
    ) -> u128 {
        if v == weight.len() {
            return (cur == shape.lambda) as u128;
        }
        let key = (v, cur);
        if let Some(&c) = memo.get(&key) {
            return c;
        }
        let ranges = strip_ranges(shape, flags, &key.1, v as u32 + 1);
        let mut nexts = Vec::new();
        for_each_strip(&ranges, Some(weight[v]), &mut |n, _| nexts.push(n.to_vec()));
        let total = nexts.into_iter().map(|n| rec(shape, flags, weight, v + 1, n, memo)).sum();
        memo.insert(key, total);
        total
    }
    Ok(rec(shape, flags, weight, 0, shape.mu.clone(), &mut memo))
}

/// Integer polynomial used inside determinant and strip sums; converted to
/// [`SparsePolynomial`] at the boundary.
type ZPoly = HashMap<Vec<u32>, i128>;

fn zpoly_mul(p: &ZPoly, q: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            *out.entry(e).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn zpoly_add_scaled(acc: &mut ZPoly, p: &ZPoly, s: i128) {
    for (e, c) in p {
        *acc.entry(e.clone()).or_insert(0) += s * c;
    }
    acc.retain(|_, c| *c != 0);
}

fn zpoly_to_sparse(p: &ZPoly, nvars: usize) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(nvars);
    for (e, c) in p {
        out.add_term(e.clone(), Rational::from_integer((*c).into()));
    }
    out
}

/// `h_m(a, b)` as integer polynomial in `nvars` variables.
fn h_zpoly(m: i64, a: u32, b: u32, nvars: usize) -> ZPoly {
    let mut out = ZPoly::new();
    if m < 0 {
        return out;
    }
    if m == 0 {
        out.insert(vec![0; nvars], 1);
        return out;
    }
    let lo = a.max(1) as usize;
    let hi = (b as usize).min(nvars);
    if lo > hi {
        return out;
    }
    fn rec(v: usize, hi: usize, left: u32, e: &mut Vec<u32>, out: &mut ZPoly) {
        if v == hi {
            e[v - 1] = left;
            out.insert(e.clone(), 1);
            e[v - 1] = 0;
            return;
        }
        for k in 0..=left {
            e[v - 1] = k;
            rec(v + 1, hi, left - k, e, out);
        }
        e[v - 1] = 0;
    }
    rec(lo, hi, m as u32, &mut vec![0; nvars], &mut out);
    out
}

/// The flagged complete homogeneous polynomial `h_m(a, b)` in the
/// variables `x_a, ..., x_b`; `h_0 = 1`, `h_m = 0` for `m < 0`.
pub fn h_flagged(m: i64, a: u32, b: u32, nvars: usize) -> SparsePolynomial {
    zpoly_to_sparse(&h_zpoly(m, a, b, nvars), nvars)
}

/// `h_alpha(a, b) = prod_j h_{alpha_j}(a_j, b_j)`.
pub fn h_product(alpha: &[i64], flags: &FlagPair, nvars: usize) -> Result<SparsePolynomial> {
    if alpha.len() != flags.len() {
        return Err(Error::Invalid("alpha and flags differ in length".into()));
    }
    let mut acc: ZPoly = ZPoly::from([(vec![0; nvars], 1)]);
    for (j, &m) in alpha.iter().enumerate() {
        acc = zpoly_mul(&acc, &h_zpoly(m, flags.a[j], flags.b[j], nvars));
    }
    Ok(zpoly_to_sparse(&acc, nvars))
}

/// The flagged Schur polynomial as the generating function of flagged
/// tableaux, summed strip by strip.
pub fn flagged_schur(shape: &SkewShape, flags: &FlagPair, nvars: usize) -> Result<SparsePolynomial> {
    check_flags(shape, flags)?;
    let mut memo: HashMap<(usize, Vec<u32>), ZPoly> = HashMap::new();
    fn rec(
        shape: &SkewShape,
        flags: &FlagPair,
        nvars: usize,
        v: usize,
        cur: Vec<u32>,
        memo: &mut HashMap<(usize, Vec<u32>), ZPoly>,
    ) -> ZPoly {
        if cur == shape.lambda {
            return ZPoly::from([(vec![0; nvars], 1)]);
        }
        if v == nvars {
            return ZPoly::new();
        }
        let key = (v, cur);
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let ranges = strip_ranges(shape, flags, &key.1, v as u32 + 1);
        let mut nexts = Vec::new();
        for_each_strip(&ranges, None, &mut |n, s| nexts.push((n.to_vec(), s)));
        let mut total = ZPoly::new();
        for (next, s) in nexts {
            for (mut e, c) in rec(shape, flags, nvars, v + 1, next, memo) {
                e[v] += s;
                *total.entry(e).or_insert(0) += c;
            }
        }
        memo.insert(key, total.clone());
        total
    }
    let p = rec(shape, flags, nvars, 0, shape.mu.clone(), &mut memo);
    Ok(zpoly_to_sparse(&p, nvars))
}

/// Sum of `x^T` over explicitly listed tableaux.
pub fn flagged_schur_by_enumeration(shape: &SkewShape, flags: &FlagPair, nvars: usize) -> Result<SparsePolynomial> {
    let mut p = SparsePolynomial::zero(nvars);
    for t in enumerate_flagged_ssyt(shape, flags, nvars, None)? {
        p.add_term(t.weight(nvars), Rational::from_integer(1.into()));
    }
    Ok(p)
}

/// The Jacobi-Trudi determinant `det h_{lambda_i - mu_j - i + j}(a_j, b_i)`,
/// expanded over permutations row by row with the used columns as a
/// bitmask. Equals the flagged Schur polynomial for monotone flags.
pub fn flagged_schur_jt(shape: &SkewShape, flags: &FlagPair, nvars: usize) -> Result<SparsePolynomial> {
    check_flags(shape, flags)?;
    if let Some(&b) = flags.b.iter().max() {
        if (b as usize) > nvars {
            return Err(Error::Invalid(format!("nvars {nvars} is below the largest flag {b}")));
        }
    }
    let l = shape.rows();
    if l > 20 {
        return Err(Error::CostGuard {
            what: "determinant size",
            actual: l,
            limit: 20,
        });
    }
    let mut entries: HashMap<(usize, usize), ZPoly> = HashMap::new();
    for i in 0..l {
        for j in 0..l {
            let m = shape.lambda[i] as i64 - shape.mu[j] as i64 - i as i64 + j as i64;
            let h = h_zpoly(m, flags.a[j], flags.b[i], nvars);
            if !h.is_empty() {
                entries.insert((i, j), h);
            }
        }
    }
    let mut dp: HashMap<u32, ZPoly> = HashMap::from([(0, ZPoly::from([(vec![0; nvars], 1)]))]);
    for i in 0..l {
        let mut next: HashMap<u32, ZPoly> = HashMap::new();
        for (mask, p) in &dp {
            for j in 0..l {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let Some(h) = entries.get(&(i, j)) else { continue };
                let inversions = (mask >> (j + 1)).count_ones();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                let prod = zpoly_mul(p, h);
                zpoly_add_scaled(next.entry(mask | (1 << j)).or_default(), &prod, sign);
            }
        }
        next.retain(|_, p| !p.is_empty());
        dp = next;
    }
    let full = if l == 0 { 0 } else { (1u32 << l) - 1 };
    Ok(zpoly_to_sparse(&dp.remove(&full).unwrap_or_default(), nvars))
}

/// Margins and zero pattern of a flagged contingency table: column `j`
/// sums to `alpha[j]` and may only use rows `a[j]..=b[j]` of the
/// `beta.len()` rows, row `i` sums to `beta[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencySpec {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub flags: FlagPair,
}

impl ContingencySpec {
    pub fn new(alpha: Vec<i64>, beta: Vec<i64>, flags: FlagPair) -> Result<ContingencySpec> {
        if flags.len() != alpha.len() {
            return Err(Error::Invalid(format!(
                "{} column flags for {} columns",
                flags.len(),
                alpha.len()
            )));
        }
        Ok(ContingencySpec { alpha, beta, flags })
    }

    /// No zero pattern.
    pub fn unrestricted(alpha: Vec<i64>, beta: Vec<i64>) -> ContingencySpec {
        let flags = FlagPair::unrestricted(alpha.len(), beta.len() as u32);
        ContingencySpec { alpha, beta, flags }
    }

    fn trivially_zero(&self) -> bool {
        self.alpha.iter().chain(&self.beta).any(|&v| v < 0)
            || self.alpha.iter().sum::<i64>() != self.beta.iter().sum::<i64>()
    }

    fn rows_of(&self, j: usize) -> std::ops::Range<usize> {
        let lo = self.flags.a[j].max(1) as usize - 1;
        let hi = (self.flags.b[j] as usize).min(self.beta.len());
        lo..hi.max(lo)
    }
}

/// Ways to split `total` over `rows` with each part at most the residual.
fn for_each_column(
    rows: &std::ops::Range<usize>,
    residual: &[i64],
    total: i64,
    f: &mut dyn FnMut(&[i64]),
) {
    fn rec(
        rows: &[usize],
        k: usize,
        residual: &[i64],
        left: i64,
        col: &mut Vec<i64>,
        f: &mut dyn FnMut(&[i64]),
    ) {
        if k == rows.len() {
            if left == 0 {
                f(col);
            }
            return;
        }
        let cap = residual[rows[k]].min(left);
        // Remaining rows must absorb what is left.
        let rest: i64 = rows[k + 1..].iter().map(|&r| residual[r]).sum();
        let lo = (left - rest).max(0);
        for v in lo..=cap {
            col[rows[k]] = v;
            rec(rows, k + 1, residual, left - v, col, f);
        }
        col[rows[k]] = 0;
    }
    let rows: Vec<usize> = rows.clone().collect();
    rec(&rows, 0, residual, total, &mut vec![0; residual.len()], f);
}

/// Number of flagged contingency tables, by a column DP over residual row
/// sums.
pub fn contingency_count(spec: &ContingencySpec) -> u128 {
    if spec.trivially_zero() {
        return 0;
    }
    let mut memo: HashMap<(usize, Vec<i64>), u128> = HashMap::new();
    fn rec(spec: &ContingencySpec, j: usize, residual: Vec<i64>, memo: &mut HashMap<(usize, Vec<i64>), u128>) -> u128 {
        if j == spec.alpha.len() {
            return residual.iter().all(|&v| v == 0) as u128;
        }
        let key = (j, residual);
        if let Some(&c) = memo.get(&key) {
            return c;
        }
        let mut cols = Vec::new();
        for_each_column(&spec.rows_of(j), &key.1, spec.alpha[j], &mut |c| cols.push(c.to_vec()));
        let total = cols
            .into_iter()
            .map(|c| {
                let r: Vec<i64> = key.1.iter().zip(&c).map(|(a, b)| a - b).collect();
                rec(spec, j + 1, r, memo)
            })
            .sum();
        memo.insert(key, total);
        total
    }
    rec(spec, 0, spec.beta.clone(), &mut memo)
}

/// Every table, as `table[i][j]` (row `i`, column `j`).
pub fn contingency_tables(spec: &ContingencySpec) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    if spec.trivially_zero() {
        return out;
    }
    fn rec(spec: &ContingencySpec, j: usize, residual: Vec<i64>, cols: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
        if j == spec.alpha.len() {
            if residual.iter().all(|&v| v == 0) {
                let table = (0..spec.beta.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
                out.push(table);
            }
            return;
        }
        let mut options = Vec::new();
        for_each_column(&spec.rows_of(j), &residual, spec.alpha[j], &mut |c| options.push(c.to_vec()));
        for c in options {
            let r: Vec<i64> = residual.iter().zip(&c).map(|(a, b)| a - b).collect();
            cols.push(c);
            rec(spec, j + 1, r, cols, out);
            cols.pop();
        }
    }
    rec(spec, 0, spec.beta.clone(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// How the permuted flag is paired with the permuted margin in the signed
/// contingency sum. `Consistent` pairs each column's lower flag with its
/// own `mu` entry as in the determinant; `Literal` permutes the lower flag
/// together with `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pairing {
    #[default]
    Consistent,
    Literal,
}

/// `sum_sigma sign(sigma) M^{flags_sigma}_beta[sigma(lambda + delta) - (mu + delta)]`.
pub fn kostka_via_contingency(shape: &SkewShape, beta: &[u32], flags: &FlagPair, limits: &Limits) -> Result<i128> {
    kostka_via_contingency_with(shape, beta, flags, Pairing::Consistent, limits)
}

pub fn kostka_via_contingency_with(
    shape: &SkewShape,
    beta: &[u32],
    flags: &FlagPair,
    pairing: Pairing,
    limits: &Limits,
) -> Result<i128> {
    check_flags(shape, flags)?;
    let l = shape.rows();
    if l == 0 {
        return Ok(beta.iter().all(|&v| v == 0) as i128);
    }
    Limits::check("permutation size", l, limits.max_perm_n)?;
    let (delta, _) = special_vectors(l)?;
    let delta = delta.raw();
    let beta: Vec<i64> = beta.iter().map(|&v| v as i64).collect();
    let mut total = 0i128;
    for (sigma, sign) in permutations(l) {
        let alpha: Vec<i64> = (0..l)
            .map(|j| {
                shape.lambda[sigma[j]] as i64 + delta[sigma[j]] - shape.mu[j] as i64 - delta[j]
            })
            .collect();
        let f = match pairing {
            Pairing::Consistent => FlagPair::unchecked(flags.a.clone(), sigma.iter().map(|&s| flags.b[s]).collect())?,
            Pairing::Literal => FlagPair::unchecked(sigma.iter().map(|&s| flags.a[s]).collect(), flags.b.clone())?,
        };
        let spec = ContingencySpec::new(alpha, beta.clone(), f)?;
        total += sign as i128 * contingency_count(&spec) as i128;
    }
    Ok(total)
}

/// Ordinary Kostka number for a composition weight; zero if an entry is
/// negative.
pub fn kostka_composition(lambda: &Partition, weight: &[i64]) -> u128 {
    if weight.iter().any(|&v| v < 0) {
        return 0;
    }
    let w: Vec<u32> = weight.iter().map(|&v| v as u32).collect();
    let shape = SkewShape::straight(lambda);
    let flags = FlagPair::unrestricted(shape.rows(), w.len() as u32);
    flagged_kostka(&shape, &w, &flags).expect("flag length matches shape")
}

/// The three computations of a Littlewood-Richardson coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrReport {
    pub kostant: i128,
    pub contingency: i128,
    pub tableaux: u128,
}

impl LrReport {
    pub fn agree(&self) -> bool {
        self.kostant == self.contingency && self.kostant == self.tableaux as i128
    }
}

fn lr_length(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    lambda.len().max(mu.len()).max(nu.len()).max(1)
}

/// `sum_sigma sign(sigma) K_{mu, sigma(nu + rho) - (lambda + rho)}`.
pub fn lr_kostant(lambda: &Partition, mu: &Partition, nu: &Partition, limits: &Limits) -> Result<i128> {
    let l = lr_length(lambda, mu, nu);
    Limits::check("permutation size", l, limits.max_perm_n)?;
    let (_, rho) = special_vectors(l)?;
    let nu_rho = IntVector::new(nu.padded(l).iter().map(|&v| v as i64).collect()).add(&rho)?;
    let lambda_rho = IntVector::new(lambda.padded(l).iter().map(|&v| v as i64).collect()).add(&rho)?;
    let mut total = 0i128;
    for (sigma, sign) in permutations(l) {
        let w = nu_rho
            .permuted(&sigma)
            .sub(&lambda_rho)?
            .to_plain()
            .expect("halves cancel in differences of rho permutations");
        total += sign as i128 * kostka_composition(mu, &w) as i128;
    }
    Ok(total)
}

/// The double signed sum of unrestricted contingency counts
/// `M_{sigma(nu + rho) - (lambda + rho)}[tau(mu + delta) - delta]`.
pub fn lr_contingency(lambda: &Partition, mu: &Partition, nu: &Partition, limits: &Limits) -> Result<i128> {
    let l = lr_length(lambda, mu, nu);
    Limits::check("permutation size", l, limits.max_perm_n)?;
    let (delta, rho) = special_vectors(l)?;
    let nu_rho = IntVector::new(nu.padded(l).iter().map(|&v| v as i64).collect()).add(&rho)?;
    let lambda_rho = IntVector::new(lambda.padded(l).iter().map(|&v| v as i64).collect()).add(&rho)?;
    let mu_delta = IntVector::new(mu.padded(l).iter().map(|&v| v as i64).collect()).add(&delta)?;
    let perms = permutations(l);
    let mut total = 0i128;
    for (sigma, s1) in &perms {
        let beta = nu_rho.permuted(sigma).sub(&lambda_rho)?.to_plain().expect("integral");
        if beta.iter().any(|&v| v < 0) {
            continue;
        }
        for (tau, s2) in &perms {
            let alpha = mu_delta.permuted(tau).sub(&delta)?.to_plain().expect("integral");
            let spec = ContingencySpec::unrestricted(alpha, beta.clone());
            total += (s1 * s2) as i128 * contingency_count(&spec) as i128;
        }
    }
    Ok(total)
}

/// Littlewood-Richardson tableaux: SSYT of shape `nu / lambda` and content
/// `mu` whose reverse reading word is a lattice word.
pub fn lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u128 {
    if !nu.contains(lambda) || nu.weight() != lambda.weight() + mu.weight() {
        return 0;
    }
    let l = nu.len();
    let shape = SkewShape::with_rows(nu.parts(), lambda.parts(), l).expect("lambda is inside nu");
    let cells: Vec<(usize, u32)> = (0..l)
        .flat_map(|j| (shape.mu[j]..shape.lambda[j]).rev().map(move |c| (j, c)))
        .collect();
    let mut grid: HashMap<(usize, u32), u32> = HashMap::new();
    let mut counts = vec![0u32; mu.len() + 1];
    fn rec(
        cells: &[(usize, u32)],
        k: usize,
        mu: &Partition,
        grid: &mut HashMap<(usize, u32), u32>,
        counts: &mut Vec<u32>,
    ) -> u128 {
        if k == cells.len() {
            return 1;
        }
        let (j, c) = cells[k];
        let mut total = 0;
        for v in 1..=mu.len() as u32 {
            if counts[v as usize] == mu.part(v as usize - 1) {
                continue;
            }
            if v > 1 && counts[v as usize] + 1 > counts[v as usize - 1] {
                continue;
            }
            if grid.get(&(j, c + 1)).is_some_and(|&r| v > r) {
                continue;
            }
            if j > 0 && grid.get(&(j - 1, c)).is_some_and(|&a| a >= v) {
                continue;
            }
            grid.insert((j, c), v);
            counts[v as usize] += 1;
            total += rec(cells, k + 1, mu, grid, counts);
            counts[v as usize] -= 1;
            grid.remove(&(j, c));
        }
        total
    }
    rec(&cells, 0, mu, &mut grid, &mut counts)
}

/// `c^nu_{lambda mu}` three ways.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition, limits: &Limits) -> Result<LrReport> {
    if nu.weight() != lambda.weight() + mu.weight() {
        return Err(Error::Invalid(format!(
            "|nu| = {} but |lambda| + |mu| = {}",
            nu.weight(),
            lambda.weight() + mu.weight()
        )));
    }
    Ok(LrReport {
        kostant: lr_kostant(lambda, mu, nu, limits)?,
        contingency: lr_contingency(lambda, mu, nu, limits)?,
        tableaux: lr_tableaux(lambda, mu, nu),
    })
}
