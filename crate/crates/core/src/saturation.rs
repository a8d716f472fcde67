//! Stretched Kostka numbers: saturation scans, exact polynomial fitting of
//! stretched sequences, and the expansion of a cylindric Schur polynomial
//! as a sum of flagged ones over the fillings of a cut column.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cylindric::{count_cssyt, CylindricDiagram};
use crate::error::{Error, Result};
use crate::flagged::{flagged_kostka, flagged_schur, FlagPair, SkewShape};
use crate::polyring::{int, Rational, SparsePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub k: u32,
    pub count: u128,
    pub positive: bool,
}

/// Counts for `k = 1..=k_max`. `violations` lists every `k` whose
/// positivity differs from the `k = 1` row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationScan {
    pub rows: Vec<ScanRow>,
    pub violations: Vec<u32>,
}

fn scan(k_max: u32, count: &mut dyn FnMut(u32) -> Result<u128>) -> Result<SaturationScan> {
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let c = count(k)?;
        rows.push(ScanRow {
            k,
            count: c,
            positive: c > 0,
        });
    }
    let base = rows[0].positive;
    let violations = rows.iter().filter(|r| r.positive != base).map(|r| r.k).collect();
    Ok(SaturationScan { rows, violations })
}

fn scaled(nu: &[u32], k: u32) -> Vec<u32> {
    nu.iter().map(|v| v * k).collect()
}

/// `K_{k lambda / k mu, k nu}(a, b)`; the flags are never scaled.
pub fn saturation_scan_flagged(shape: &SkewShape, nu: &[u32], flags: &FlagPair, k_max: u32) -> Result<SaturationScan> {
    scan(k_max, &mut |k| flagged_kostka(&shape.stretched(k), &scaled(nu, k), flags))
}

/// `|CSSYT(kD, k nu)|`, with `kD` the horizontal k-fold subdivision.
pub fn saturation_scan_cylindric(d: &CylindricDiagram, nu: &[u32], k_max: u32) -> Result<SaturationScan> {
    scan(k_max, &mut |k| Ok(count_cssyt(&d.stretched(k as usize)?, &scaled(nu, k))))
}

/// `K_{k lambda / k mu, k nu}(a, b)` for `k = 0..=k_max`.
pub fn stretch_values_flagged(shape: &SkewShape, nu: &[u32], flags: &FlagPair, k_max: u32) -> Result<Vec<i128>> {
    (0..=k_max)
        .map(|k| Ok(flagged_kostka(&shape.stretched(k), &scaled(nu, k), flags)? as i128))
        .collect()
}

/// `|CSSYT(kD, k nu)|` for `k = 0..=k_max`; the empty diagram at `k = 0`
/// has one tableau.
pub fn stretch_values_cylindric(d: &CylindricDiagram, nu: &[u32], k_max: u32) -> Result<Vec<i128>> {
    (0..=k_max)
        .map(|k| Ok(count_cssyt(&d.stretched(k as usize)?, &scaled(nu, k)) as i128))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitKind {
    Polynomial,
    Quasipolynomial,
    Undetermined,
}

/// Result of [`fit_sequence`]. Coefficients are in ascending powers of
/// `k`; a quasipolynomial has one component per residue `k mod period`,
/// indexed by the residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StretchFit {
    pub start_k: i64,
    pub values: Vec<i128>,
    pub kind: FitKind,
    pub period: usize,
    /// First `k` from which the fit holds.
    pub onset: i64,
    pub components: Vec<Vec<Rational>>,
    /// Sum of `|value - fit|` over all points, including those before the
    /// onset.
    pub residual: Rational,
    pub nonnegative_coefficients: bool,
}

impl StretchFit {
    pub fn degree(&self) -> Option<usize> {
        self.components.iter().map(|c| c.len().saturating_sub(1)).max()
    }

    pub fn is_polynomial(&self) -> bool {
        self.kind == FitKind::Polynomial
    }

    /// Evaluates the fitted component for `k`.
    pub fn eval(&self, k: i64) -> Option<Rational> {
        if self.components.is_empty() {
            return None;
        }
        let c = &self.components[k.rem_euclid(self.period as i64) as usize];
        Some(eval_poly(c, &int(k)))
    }

    /// Coefficients written as a polynomial in `k`.
    pub fn describe(&self) -> String {
        match self.kind {
            FitKind::Polynomial => poly_string(&self.components[0]),
            FitKind::Quasipolynomial => self
                .components
                .iter()
                .enumerate()
                .map(|(r, c)| format!("k = {r} mod {}: {}", self.period, poly_string(c)))
                .collect::<Vec<_>>()
                .join("; "),
            FitKind::Undetermined => "undetermined".into(),
        }
    }
}

fn poly_string(c: &[Rational]) -> String {
    let mut parts = Vec::new();
    for (p, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mono = match p {
            0 => String::new(),
            1 => "k".into(),
            _ => format!("k^{p}"),
        };
        let coef = if p > 0 && a.abs().is_one() {
            if a.is_negative() { "-".into() } else { String::new() }
        } else if p > 0 {
            format!("{a}*")
        } else {
            a.to_string()
        };
        parts.push(format!("{coef}{mono}"));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn eval_poly(c: &[Rational], k: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * k + a)
}

/// Interpolates through `points` by divided differences. Returns the
/// monomial coefficients when the differences beyond some degree vanish
/// at least `confirm` times.
fn fit_points(points: &[(Rational, Rational)], confirm: usize) -> Option<Vec<Rational>> {
    let n = points.len();
    if n == 0 {
        return None;
    }
    // Newton coefficients: table[t] holds the t-th divided differences.
    let mut table: Vec<Vec<Rational>> = vec![points.iter().map(|p| p.1.clone()).collect()];
    for t in 1..n {
        let prev = &table[t - 1];
        let row: Vec<Rational> = (0..n - t)
            .map(|i| (&prev[i + 1] - &prev[i]) / (&points[i + t].0 - &points[i].0))
            .collect();
        table.push(row);
    }
    let degree = (0..n).find(|&d| d + 1 < n && table[d + 1..].iter().all(|r| r.iter().all(Zero::is_zero)))?;
    if table[degree + 1].len() < confirm {
        return None;
    }
    // Expand the Newton form into monomial coefficients.
    let mut coeffs = vec![Rational::zero(); degree + 1];
    let mut basis = vec![Rational::one()];
    for t in 0..=degree {
        let c = &table[t][0];
        for (p, b) in basis.iter().enumerate() {
            coeffs[p] += c * b;
        }
        let root = &points[t].0;
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (p, b) in basis.iter().enumerate() {
            next[p + 1] += b;
            next[p] -= b * root;
        }
        basis = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Some(coeffs)
}

fn residue(k: &Rational, period: usize) -> usize {
    use num_integer::Integer;
    k.to_integer().mod_floor(&(period as i64).into()).try_into().unwrap_or(0)
}

/// Classifies `values` (taken at `k = start_k, start_k + 1, ...`). A
/// polynomial needs its vanishing differences confirmed at two or more
/// points; the onset is the first `k` from which such a fit exists.
/// Otherwise periods `2..=max_period` are tried, each residue class
/// needing one confirming point.
pub fn fit_sequence(start_k: i64, values: &[i128], max_period: usize) -> Result<StretchFit> {
    if values.len() < 3 {
        return Err(Error::Insufficient(format!("{} points, need at least 3", values.len())));
    }
    let pts: Vec<(Rational, Rational)> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| (int(start_k + i as i64), Rational::from_integer(v.into())))
        .collect();
    let finish = |kind, period: usize, onset: i64, components: Vec<Vec<Rational>>| {
        let mut residual = Rational::zero();
        for (k, v) in &pts {
            let c = &components[residue(k, period)];
            residual += (eval_poly(c, k) - v).abs();
        }
        let nonnegative_coefficients = components.iter().flatten().all(|c| !c.is_negative());
        StretchFit {
            start_k,
            values: values.to_vec(),
            kind,
            period,
            onset,
            components,
            residual,
            nonnegative_coefficients,
        }
    };
    for s in 0..values.len() {
        if let Some(c) = fit_points(&pts[s..], 2) {
            return Ok(finish(FitKind::Polynomial, 1, start_k + s as i64, vec![c]));
        }
    }
    for period in 2..=max_period {
        let mut comps = vec![Vec::new(); period];
        let mut ok = true;
        for (r, comp) in comps.iter_mut().enumerate() {
            let class: Vec<(Rational, Rational)> = pts
                .iter()
                .filter(|(k, _)| residue(k, period) == r)
                .cloned()
                .collect();
            match fit_points(&class, 1) {
                Some(c) => *comp = c,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(finish(FitKind::Quasipolynomial, period, start_k, comps));
        }
    }
    Ok(StretchFit {
        start_k,
        values: values.to_vec(),
        kind: FitKind::Undetermined,
        period: 0,
        onset: start_k,
        components: Vec::new(),
        residual: Rational::zero(),
        nonnegative_coefficients: false,
    })
}

/// One term of the cut-column expansion: the column filling (bottom to
/// top), its content vector and the flags for the remaining shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnTerm {
    pub column: Vec<u32>,
    pub content: Vec<u32>,
    pub flags: FlagPair,
}

/// A cylindric diagram cut left of column `cut` and unrolled to a skew
/// shape of width `x`. Shape rows are listed from the lowest diagram row
/// `base_row` upwards, which is the English order of the unrolled shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutExpansion {
    pub cut: i64,
    pub base_row: i64,
    pub nvars: usize,
    pub unrolled: SkewShape,
    pub residual: SkewShape,
    /// Shape rows (0-based) holding a cell of the cut column.
    pub column_rows: Vec<usize>,
    pub terms: Vec<ColumnTerm>,
}

impl CutExpansion {
    /// `sum_i x^{content_i} s_residual(a_i, b_i)`.
    pub fn recombine(&self) -> Result<SparsePolynomial> {
        let mut total = SparsePolynomial::zero(self.nvars);
        for t in &self.terms {
            let s = flagged_schur(&self.residual, &t.flags, self.nvars)?;
            let x = SparsePolynomial::monomial(t.content.clone(), Rational::one());
            total = total.checked_add(&x.checked_mul(&s)?)?;
        }
        Ok(total)
    }

    /// `sum_i K_{residual, beta - content_i}(a_i, b_i)`.
    pub fn kostka(&self, beta: &[u32]) -> Result<u128> {
        if beta.len() != self.nvars {
            return Err(Error::Invalid(format!("weight must have {} entries", self.nvars)));
        }
        let mut total = 0;
        for t in &self.terms {
            if beta.iter().zip(&t.content).any(|(b, c)| b < c) {
                continue;
            }
            let rest: Vec<u32> = beta.iter().zip(&t.content).map(|(b, c)| b - c).collect();
            total += flagged_kostka(&self.residual, &rest, &t.flags)?;
        }
        Ok(total)
    }
}

/// Leftmost column holding a cell of rows `1..=y`, or 1 for the empty
/// diagram.
pub fn default_cut(d: &CylindricDiagram) -> i64 {
    d.cells().iter().map(|c| c.1).min().unwrap_or(1)
}

/// Expands `s_D(x_1..x_n)` over the fillings of column `cut` (default
/// [`default_cut`]). Rows touching the cut column get the column entry as
/// lower flag; a row ending in the last column before the next copy of the
/// cut gets the entry it wraps onto as upper flag. Other rows get `1` and
/// `nvars`.
pub fn cylindric_as_flagged(d: &CylindricDiagram, nvars: usize, cut: Option<i64>) -> Result<CutExpansion> {
    let c0 = cut.unwrap_or_else(|| default_cut(d));
    let (x, y) = (d.x() as i64, d.y() as i64);
    let (left, right) = (c0 - 1, c0 + x - 1);
    let clamp = |r: i64| {
        let lo = d.inner_edge(r).max(left);
        let hi = d.outer_edge(r).min(right);
        (lo, hi)
    };
    // Rows meeting the window lie within a bounded band around it.
    let span = d
        .inner_edges()
        .iter()
        .chain(d.outer_edges())
        .map(|e| (e - c0).abs())
        .max()
        .unwrap_or(0);
    let band = y * (span / x + 3);
    let live: Vec<i64> = (-band..=band).filter(|&r| clamp(r).0 < clamp(r).1).collect();
    let (base, topr) = match (live.first(), live.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (1, 0),
    };
    // English order: the lowest row has the longest edges.
    let rows: Vec<i64> = (base..=topr).collect();
    let mut lambda = Vec::new();
    let mut mu = Vec::new();
    for &r in &rows {
        let (lo, hi) = clamp(r);
        mu.push((lo - left) as u32);
        lambda.push((hi.max(lo) - left) as u32);
    }
    let unrolled = SkewShape::new(&lambda, &mu)?;
    let column_rows: Vec<usize> = (0..rows.len()).filter(|&j| mu[j] == 0 && lambda[j] >= 1).collect();
    let residual_mu: Vec<u32> = (0..rows.len())
        .map(|j| if column_rows.contains(&j) { 1 } else { mu[j] })
        .collect();
    let residual = SkewShape::new(&lambda, &residual_mu)?;
    let t = column_rows.len();
    let mut terms = Vec::new();
    let mut choice: Vec<u32> = Vec::new();
    fn choose(t: usize, lo: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            choose(t, v + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut fillings = Vec::new();
    choose(t, 1, nvars as u32, &mut choice, &mut fillings);
    for column in fillings {
        let value_at: BTreeMap<usize, u32> = column_rows.iter().copied().zip(column.iter().copied()).collect();
        let mut a = vec![1u32; rows.len()];
        let mut b = vec![nvars as u32; rows.len()];
        for j in 0..rows.len() {
            if let Some(&v) = value_at.get(&j) {
                a[j] = v;
            }
            if lambda[j] as i64 == x && lambda[j] > mu[j] {
                if let Some(&v) = value_at.get(&(j + y as usize)) {
                    b[j] = v;
                }
            }
        }
        let mut content = vec![0u32; nvars];
        for &v in &column {
            content[v as usize - 1] += 1;
        }
        terms.push(ColumnTerm {
            column,
            content,
            flags: FlagPair::unchecked(a, b)?,
        });
    }
    Ok(CutExpansion {
        cut: c0,
        base_row: base,
        nvars,
        unrolled,
        residual,
        column_rows,
        terms,
    })
}
