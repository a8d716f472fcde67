//! Exact sparse polynomials over Q in a fixed number of variables, and the
//! symmetric / quasisymmetric bases used throughout: m, p, M and Psi.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{coarsenings_with_pi, z_of_parts, Composition, Partition};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_u128(n: u128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Serialized form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponent: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> SparsePolynomial {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> SparsePolynomial {
        SparsePolynomial::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(exponent: Vec<u32>, coeff: Rational) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero(exponent.len());
        p.add_term(exponent, coeff);
        p
    }

    /// The variable x_{i+1}.
    pub fn variable(nvars: usize, i: usize) -> SparsePolynomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        SparsePolynomial::monomial(e, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff * x^exponent`, dropping the term if it cancels.
    pub fn add_term(&mut self, exponent: Vec<u32>, coeff: Rational) {
        assert_eq!(exponent.len(), self.nvars, "exponent length must equal nvars");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn same_arity(&self, other: &SparsePolynomial) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Arity(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        self.same_arity(other)?;
        let mut out = SparsePolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SparsePolynomial {
        if c.is_zero() {
            return SparsePolynomial::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SparsePolynomial {
        let mut out = SparsePolynomial::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Terms as sorted (exponent, numerator, denominator) records.
    pub fn records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord {
                exponent: e.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(nvars: usize, records: &[TermRecord]) -> Result<SparsePolynomial> {
        let mut p = SparsePolynomial::zero(nvars);
        for r in records {
            if r.exponent.len() != nvars {
                return Err(Error::Arity(r.exponent.len(), nvars));
            }
            let num: BigInt = r
                .num
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator `{}`", r.num)))?;
            let den: BigInt = r
                .den
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator `{}`", r.den)))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            p.add_term(r.exponent.clone(), Rational::new(num, den));
        }
        Ok(p)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponents first reads more naturally.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    if p == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, p)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&SparsePolynomial> for &SparsePolynomial {
            type Output = SparsePolynomial;
            /// Panics on arity mismatch; use the `checked_` form to get an error.
            fn $method(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                self.$checked(rhs).expect("polynomial arity mismatch")
            }
        }
        impl $tr<SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $method(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        self.scale(&-Rational::one())
    }
}

/// Which basis a coefficient map refers to. The `OverZ` variants hold
/// coefficients of `p_mu / z_mu` (resp. `Psi_alpha / z_alpha`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    MonomialSym,
    PowerSum,
    PowerSumOverZ,
    QsymMonomial,
    QsymPsi,
    QsymPsiOverZ,
}

impl BasisKind {
    fn indexed_by_partitions(self) -> bool {
        matches!(
            self,
            BasisKind::MonomialSym | BasisKind::PowerSum | BasisKind::PowerSumOverZ
        )
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BasisKind::MonomialSym => "m",
            BasisKind::PowerSum => "p",
            BasisKind::PowerSumOverZ => "p/z",
            BasisKind::QsymMonomial => "M",
            BasisKind::QsymPsi => "Psi",
            BasisKind::QsymPsiOverZ => "Psi/z",
        }
    }
}

/// Coefficients of a polynomial in one of the bases. Indices are stored as
/// part lists (partitions or compositions according to the kind); zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    pub kind: BasisKind,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

impl BasisExpansion {
    pub fn new(kind: BasisKind) -> BasisExpansion {
        BasisExpansion {
            kind,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, index: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn get(&self, index: &[u32]) -> Rational {
        self.coeffs.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Converts an `OverZ` expansion to the plain basis and vice versa.
    pub fn with_kind(&self, kind: BasisKind) -> Result<BasisExpansion> {
        use BasisKind::*;
        let factor = |idx: &[u32], up: bool| {
            let z = rat_u128(z_of_parts(idx));
            if up {
                z
            } else {
                z.recip()
            }
        };
        let up = match (self.kind, kind) {
            (a, b) if a == b => return Ok(self.clone()),
            (PowerSumOverZ, PowerSum) | (QsymPsiOverZ, QsymPsi) => false,
            (PowerSum, PowerSumOverZ) | (QsymPsi, QsymPsiOverZ) => true,
            (a, b) => {
                return Err(Error::Invalid(format!(
                    "cannot rescale a {a:?} expansion into {b:?}"
                )))
            }
        };
        let mut out = BasisExpansion::new(kind);
        for (i, c) in &self.coeffs {
            out.add(i.clone(), c * factor(i, up));
        }
        Ok(out)
    }

    /// Reassembles the polynomial in `nvars` variables.
    pub fn to_polynomial(&self, nvars: usize) -> Result<SparsePolynomial> {
        let (kind, scaled) = match self.kind {
            BasisKind::PowerSumOverZ => (BasisKind::PowerSum, self.with_kind(BasisKind::PowerSum)?),
            BasisKind::QsymPsiOverZ => (BasisKind::QsymPsi, self.with_kind(BasisKind::QsymPsi)?),
            k => (k, self.clone()),
        };
        let mut out = SparsePolynomial::zero(nvars);
        for (i, c) in &scaled.coeffs {
            let b = basis_element(kind, i, nvars)?;
            out = out.checked_add(&b.scale(c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let sym = self.kind.symbol();
        let (head, tail) = match sym.split_once('/') {
            Some((h, t)) => (h, Some(t)),
            None => (sym, None),
        };
        // Longest/largest indices first, as in the usual printed expansions.
        let mut items: Vec<_> = self.coeffs.iter().collect();
        items.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (idx, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let name: String = if idx.iter().all(|&p| p < 10) {
                idx.iter().map(|p| p.to_string()).collect()
            } else {
                idx.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            };
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{head}[{name}]")?;
            if let Some(t) = tail {
                write!(f, "/{t}[{name}]")?;
            }
        }
        Ok(())
    }
}

fn check_index(kind: BasisKind, index: &[u32]) -> Result<()> {
    if index.contains(&0) {
        return Err(Error::Invalid(format!("basis index has a zero part: {index:?}")));
    }
    if kind.indexed_by_partitions() && index.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(format!(
            "symmetric basis index must be a partition: {index:?}"
        )));
    }
    Ok(())
}

/// Expands m_lambda, p_lambda, M_alpha or Psi_alpha in `nvars` variables.
/// M_alpha (and m_lambda) with more parts than variables is zero.
pub fn basis_element(kind: BasisKind, index: &[u32], nvars: usize) -> Result<SparsePolynomial> {
    if nvars == 0 {
        return Err(Error::Invalid("need at least one variable".into()));
    }
    check_index(kind, index)?;
    Ok(match kind {
        BasisKind::MonomialSym => monomial_symmetric(index, nvars),
        BasisKind::PowerSum => {
            let mut out = SparsePolynomial::one(nvars);
            for &k in index {
                let mut pk = SparsePolynomial::zero(nvars);
                for v in 0..nvars {
                    let mut e = vec![0; nvars];
                    e[v] = k;
                    pk.add_term(e, Rational::one());
                }
                out = &out * &pk;
            }
            out
        }
        BasisKind::QsymMonomial => qsym_monomial(index, nvars),
        BasisKind::QsymPsi => {
            let alpha = Composition::new(index.to_vec())?;
            let z = rat_u128(z_of_parts(index));
            let mut out = SparsePolynomial::zero(nvars);
            for (beta, pi) in coarsenings_with_pi(&alpha) {
                let m = qsym_monomial(beta.parts(), nvars);
                out = &out + &m.scale(&(&z / rat_u128(pi)));
            }
            out
        }
        BasisKind::PowerSumOverZ | BasisKind::QsymPsiOverZ => {
            let plain = if kind == BasisKind::PowerSumOverZ {
                BasisKind::PowerSum
            } else {
                BasisKind::QsymPsi
            };
            basis_element(plain, index, nvars)?.scale(&rat_u128(z_of_parts(index)).recip())
        }
    })
}

fn monomial_symmetric(lambda: &[u32], nvars: usize) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(nvars);
    if lambda.len() > nvars {
        return out;
    }
    let mut e: Vec<u32> = lambda.to_vec();
    e.resize(nvars, 0);
    e.sort_unstable();
    // Iterate distinct permutations in lexicographic order.
    loop {
        out.add_term(e.clone(), Rational::one());
        if !next_permutation(&mut e) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn qsym_monomial(alpha: &[u32], nvars: usize) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(nvars);
    let l = alpha.len();
    if l > nvars {
        return out;
    }
    fn rec(alpha: &[u32], start: usize, e: &mut Vec<u32>, out: &mut SparsePolynomial) {
        if alpha.is_empty() {
            out.add_term(e.clone(), Rational::one());
            return;
        }
        let n = e.len();
        for v in start..=n - alpha.len() {
            e[v] = alpha[0];
            rec(&alpha[1..], v + 1, e, out);
            e[v] = 0;
        }
    }
    rec(alpha, 0, &mut vec![0; nvars], &mut out);
    out
}

/// Number of distinct rearrangements of `e` (zeros included).
fn arrangements(e: &[u32]) -> u128 {
    let mut counts: BTreeMap<u32, u128> = BTreeMap::new();
    for &v in e {
        *counts.entry(v).or_default() += 1;
    }
    let mut r: u128 = 1;
    let mut placed: u128 = 0;
    for (_, c) in counts {
        for i in 1..=c {
            placed += 1;
            r = r * placed / i;
        }
    }
    r
}

/// Coefficients in the monomial symmetric basis. Rejects non-symmetric input
/// with a pair of exponents whose coefficients differ.
pub fn expand_in_monomial_sym(f: &SparsePolynomial) -> Result<BasisExpansion> {
    let mut groups: BTreeMap<Vec<u32>, (Rational, u128)> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut s = e.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        match groups.get_mut(&s) {
            Some((c0, n)) => {
                if c0 != c {
                    let rep = f
                        .terms()
                        .find(|(e2, _)| {
                            let mut s2 = (*e2).clone();
                            s2.sort_unstable_by(|a, b| b.cmp(a));
                            s2 == s
                        })
                        .map(|(e2, _)| e2.clone())
                        .unwrap();
                    return Err(Error::NotSymmetric {
                        left: rep,
                        right: e.clone(),
                    });
                }
                *n += 1;
            }
            None => {
                groups.insert(s, (c.clone(), 1));
            }
        }
    }
    let mut out = BasisExpansion::new(BasisKind::MonomialSym);
    for (s, (c, n)) in groups {
        if n != arrangements(&s) {
            let present = f
                .terms()
                .find(|(e, _)| {
                    let mut t = (*e).clone();
                    t.sort_unstable_by(|a, b| b.cmp(a));
                    t == s
                })
                .map(|(e, _)| e.clone())
                .unwrap();
            let mut probe = s.clone();
            probe.sort_unstable();
            loop {
                if f.coefficient(&probe).is_zero() {
                    break;
                }
                if !next_permutation(&mut probe) {
                    break;
                }
            }
            return Err(Error::NotSymmetric {
                left: present,
                right: probe,
            });
        }
        let idx: Vec<u32> = s.into_iter().filter(|&v| v > 0).collect();
        out.add(idx, c);
    }
    Ok(out)
}

/// Coefficients in the monomial quasisymmetric basis. Rejects input whose
/// coefficients are not determined by the composition of non-zero exponents.
pub fn expand_in_qsym_monomial(f: &SparsePolynomial) -> Result<BasisExpansion> {
    let n = f.nvars();
    let mut groups: BTreeMap<Vec<u32>, (Rational, u128, Vec<u32>)> = BTreeMap::new();
    for (e, c) in f.terms() {
        let alpha: Vec<u32> = e.iter().copied().filter(|&v| v > 0).collect();
        match groups.get_mut(&alpha) {
            Some((c0, cnt, rep)) => {
                if c0 != c {
                    return Err(Error::NotQuasisymmetric {
                        left: rep.clone(),
                        right: e.clone(),
                    });
                }
                *cnt += 1;
            }
            None => {
                groups.insert(alpha, (c.clone(), 1, e.clone()));
            }
        }
    }
    let mut out = BasisExpansion::new(BasisKind::QsymMonomial);
    for (alpha, (c, cnt, rep)) in groups {
        if cnt != crate::combinat::binomial(n as u64, alpha.len() as u64) {
            let missing = qsym_monomial(&alpha, n)
                .terms()
                .map(|(e, _)| e.clone())
                .find(|e| f.coefficient(e).is_zero())
                .unwrap_or_default();
            return Err(Error::NotQuasisymmetric {
                left: rep,
                right: missing,
            });
        }
        out.add(alpha, c);
    }
    Ok(out)
}

/// Coefficient of m_lambda in p_mu: the number of ways to distribute the
/// parts of mu into labelled bins with sums lambda.
fn powersum_in_monomial(mu: &[u32], lambda: &[u32]) -> u128 {
    fn rec(mu: &[u32], caps: &mut Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), u128>) -> u128 {
        if mu.is_empty() {
            return caps.iter().all(|&c| c == 0) as u128;
        }
        let key = (mu.len(), caps.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for b in 0..caps.len() {
            if caps[b] >= mu[0] {
                caps[b] -= mu[0];
                total += rec(&mu[1..], caps, memo);
                caps[b] += mu[0];
            }
        }
        memo.insert(key, total);
        total
    }
    rec(mu, &mut lambda.to_vec(), &mut HashMap::new())
}

type PowerTable = Arc<BTreeMap<Vec<u32>, Vec<(Vec<u32>, u128)>>>;

/// For degree d: each mu maps to the list of (lambda, [m_lambda] p_mu) with
/// lambda strictly coarser than mu.
fn powersum_table(d: u32) -> PowerTable {
    static CACHE: OnceLock<Mutex<HashMap<u32, PowerTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&d) {
        return t.clone();
    }
    let parts = Partition::all(d);
    let mut table = BTreeMap::new();
    for mu in &parts {
        let row: Vec<(Vec<u32>, u128)> = parts
            .iter()
            .filter(|l| l.len() <= mu.len())
            .map(|l| (l.parts().to_vec(), powersum_in_monomial(mu.parts(), l.parts())))
            .filter(|(_, c)| *c > 0)
            .collect();
        table.insert(mu.parts().to_vec(), row);
    }
    let t = Arc::new(table);
    cache.lock().unwrap().insert(d, t.clone());
    t
}

/// Converts a homogeneous monomial-symmetric expansion of degree `d` to the
/// power-sum basis by a triangular solve.
pub fn powersum_from_monomial_sym(m: &BasisExpansion, d: u32) -> Result<BasisExpansion> {
    if m.kind != BasisKind::MonomialSym {
        return Err(Error::Invalid("expected a monomial-symmetric expansion".into()));
    }
    if let Some((idx, _)) = m.iter().find(|(i, _)| i.iter().sum::<u32>() != d) {
        return Err(Error::Invalid(format!("term m[{idx:?}] is not of degree {d}")));
    }
    let table = powersum_table(d);
    let mut residual: BTreeMap<Vec<u32>, Rational> =
        m.iter().map(|(i, c)| (i.clone(), c.clone())).collect();
    let mut order: Vec<&Vec<u32>> = table.keys().collect();
    order.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut out = BasisExpansion::new(BasisKind::PowerSum);
    for mu in order {
        let r = match residual.get(mu) {
            Some(r) if !r.is_zero() => r.clone(),
            _ => continue,
        };
        let row = &table[mu];
        let diag = row.iter().find(|(l, _)| l == mu).map(|(_, c)| *c).unwrap();
        let coeff = r / rat_u128(diag);
        for (l, c) in row {
            let e = residual.entry(l.clone()).or_insert_with(Rational::zero);
            *e -= &coeff * rat_u128(*c);
        }
        out.add(mu.clone(), coeff);
    }
    Ok(out)
}

/// Coefficients in the power-sum basis. Requires a symmetric homogeneous
/// polynomial of degree d in at least d variables.
pub fn expand_in_powersum(f: &SparsePolynomial) -> Result<BasisExpansion> {
    let d = match f.homogeneous_degree() {
        Some(d) => d,
        None if f.is_zero() => return Ok(BasisExpansion::new(BasisKind::PowerSum)),
        None => return Err(Error::Invalid("polynomial is not homogeneous".into())),
    };
    if (f.nvars() as u32) < d {
        return Err(Error::Invalid(format!(
            "need at least {d} variables to resolve degree {d}, got {}",
            f.nvars()
        )));
    }
    let m = expand_in_monomial_sym(f)?;
    powersum_from_monomial_sym(&m, d)
}

/// Converts an M-expansion (homogeneous of degree d) into the Psi basis by a
/// triangular solve along refinement, finest compositions first.
pub fn psi_from_qsym_monomial(m: &BasisExpansion) -> Result<BasisExpansion> {
    if m.kind != BasisKind::QsymMonomial {
        return Err(Error::Invalid("expected a quasisymmetric monomial expansion".into()));
    }
    let mut residual: BTreeMap<Vec<u32>, Rational> =
        m.iter().map(|(i, c)| (i.clone(), c.clone())).collect();
    let mut out = BasisExpansion::new(BasisKind::QsymPsi);
    let degrees: std::collections::BTreeSet<u32> = m.iter().map(|(i, _)| i.iter().sum()).collect();
    for d in degrees {
        let mut comps = Composition::all(d);
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        for alpha in comps {
            let r = match residual.get(alpha.parts()) {
                Some(r) if !r.is_zero() => r.clone(),
                _ => continue,
            };
            let z = rat_u128(z_of_parts(alpha.parts()));
            let pi_aa: u128 = alpha.parts().iter().map(|&p| p as u128).product();
            let coeff = r * rat_u128(pi_aa) / &z;
            for (beta, pi) in coarsenings_with_pi(&alpha) {
                let e = residual
                    .entry(beta.parts().to_vec())
                    .or_insert_with(Rational::zero);
                *e -= &coeff * &z / rat_u128(pi);
            }
            out.add(alpha.parts().to_vec(), coeff);
        }
    }
    Ok(out)
}

/// Coefficients in the quasisymmetric power-sum basis.
pub fn expand_in_psi(f: &SparsePolynomial) -> Result<BasisExpansion> {
    if let Some(d) = f.degree() {
        if (f.nvars() as u32) < d {
            return Err(Error::Invalid(format!(
                "need at least {d} variables to resolve degree {d}, got {}",
                f.nvars()
            )));
        }
    }
    psi_from_qsym_monomial(&expand_in_qsym_monomial(f)?)
}

/// The monomial symmetric expansion of a symmetric function given in the M
/// basis, checking that rearranged compositions carry equal coefficients.
pub fn monomial_sym_from_qsym_monomial(m: &BasisExpansion) -> Result<BasisExpansion> {
    if m.kind != BasisKind::QsymMonomial {
        return Err(Error::Invalid("expected a quasisymmetric monomial expansion".into()));
    }
    let mut out = BasisExpansion::new(BasisKind::MonomialSym);
    let mut seen: BTreeMap<Vec<u32>, (Rational, Vec<u32>)> = BTreeMap::new();
    for (alpha, c) in m.iter() {
        let mut s = alpha.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        match seen.get(&s) {
            Some((c0, rep)) if c0 != c => {
                return Err(Error::NotSymmetric {
                    left: rep.clone(),
                    right: alpha.clone(),
                })
            }
            Some(_) => {}
            None => {
                seen.insert(s.clone(), (c.clone(), alpha.clone()));
            }
        }
    }
    for (s, (c, rep)) in seen {
        // Every rearrangement must be present.
        let mut probe: Vec<u32> = s.clone();
        probe.sort_unstable();
        loop {
            if m.get(&probe).is_zero() {
                return Err(Error::NotSymmetric {
                    left: rep,
                    right: probe,
                });
            }
            if !next_permutation(&mut probe) {
                break;
            }
        }
        out.add(s, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero(nvars);
        for (e, c) in terms {
            p.add_term(e.to_vec(), int(*c));
        }
        p
    }

    #[test]
    fn power_sum_two_vars() {
        let p = basis_element(BasisKind::PowerSum, &[2], 2).unwrap();
        assert_eq!(p, poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]));
    }

    #[test]
    fn psi_of_single_part_is_power_sum() {
        let psi = basis_element(BasisKind::QsymPsi, &[2], 3).unwrap();
        assert_eq!(psi, basis_element(BasisKind::PowerSum, &[2], 3).unwrap());
    }

    #[test]
    fn psi_one_one() {
        let psi = basis_element(BasisKind::QsymPsi, &[1, 1], 3).unwrap();
        let m11 = basis_element(BasisKind::QsymMonomial, &[1, 1], 3).unwrap();
        let m2 = basis_element(BasisKind::QsymMonomial, &[2], 3).unwrap();
        assert_eq!(psi, &m11.scale(&int(2)) + &m2);
    }

    #[test]
    fn too_many_parts_give_zero() {
        assert!(basis_element(BasisKind::QsymMonomial, &[1, 1, 1], 2).unwrap().is_zero());
        assert!(basis_element(BasisKind::MonomialSym, &[1, 1, 1], 2).unwrap().is_zero());
        assert!(basis_element(BasisKind::MonomialSym, &[1, 2], 3).is_err());
        assert!(basis_element(BasisKind::PowerSum, &[1], 0).is_err());
    }

    #[test]
    fn elementary_in_monomial_basis() {
        let e2 = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]);
        let m = expand_in_monomial_sym(&e2).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(&[1, 1]), int(1));
    }

    #[test]
    fn p11_in_monomial_basis() {
        let p = basis_element(BasisKind::PowerSum, &[1, 1], 3).unwrap();
        let m = expand_in_monomial_sym(&p).unwrap();
        assert_eq!(m.get(&[2]), int(1));
        assert_eq!(m.get(&[1, 1]), int(2));
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn non_symmetric_is_rejected_with_witness() {
        let f = poly(2, &[(&[1, 0], 1)]);
        match expand_in_monomial_sym(&f) {
            Err(Error::NotSymmetric { left, right }) => {
                assert_eq!(left, vec![1, 0]);
                assert_eq!(right, vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let g = poly(2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        assert!(matches!(expand_in_monomial_sym(&g), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn m11_in_power_sums() {
        let m11 = basis_element(BasisKind::MonomialSym, &[1, 1], 2).unwrap();
        let p = expand_in_powersum(&m11).unwrap();
        assert_eq!(p.get(&[1, 1]), rat(1, 2));
        assert_eq!(p.get(&[2]), rat(-1, 2));
        let p3 = basis_element(BasisKind::PowerSum, &[3], 4).unwrap();
        let e = expand_in_powersum(&p3).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&[3]), int(1));
    }

    #[test]
    fn powersum_needs_enough_variables() {
        let m11 = basis_element(BasisKind::MonomialSym, &[1, 1], 1).unwrap();
        assert!(m11.is_zero());
        let p2 = basis_element(BasisKind::PowerSum, &[1, 1], 1).unwrap();
        assert!(expand_in_powersum(&p2).is_err());
    }

    #[test]
    fn psi_expansions() {
        let psi21 = basis_element(BasisKind::QsymPsi, &[2, 1], 3).unwrap();
        let e = expand_in_psi(&psi21).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&[2, 1]), int(1));

        let p21 = basis_element(BasisKind::PowerSum, &[2, 1], 3).unwrap();
        let e = expand_in_psi(&p21).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.get(&[2, 1]), int(1));
        assert_eq!(e.get(&[1, 2]), int(1));

        // M_2 = p_2 = Psi_2.
        let m2 = basis_element(BasisKind::QsymMonomial, &[2], 2).unwrap();
        let e = expand_in_psi(&m2).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&[2]), int(1));
        // M_11 = (Psi_11 - Psi_2) / 2.
        let m11 = basis_element(BasisKind::QsymMonomial, &[1, 1], 2).unwrap();
        let e = expand_in_psi(&m11).unwrap();
        assert_eq!(e.get(&[1, 1]), rat(1, 2));
        assert_eq!(e.get(&[2]), rat(-1, 2));
    }

    #[test]
    fn non_quasisymmetric_is_rejected() {
        let f = poly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
        assert!(matches!(
            expand_in_qsym_monomial(&f),
            Err(Error::NotQuasisymmetric { .. })
        ));
    }

    #[test]
    fn arity_mismatch_rejected() {
        let a = SparsePolynomial::one(2);
        let b = SparsePolynomial::one(3);
        assert_eq!(a.checked_add(&b), Err(Error::Arity(2, 3)));
        assert_eq!(a.checked_mul(&b), Err(Error::Arity(2, 3)));
    }

    #[test]
    fn records_round_trip() {
        let p = &basis_element(BasisKind::QsymPsi, &[1, 2], 3).unwrap().scale(&rat(-3, 7))
            + &SparsePolynomial::one(3);
        let r = p.records();
        assert!(r.windows(2).all(|w| w[0].exponent < w[1].exponent));
        assert_eq!(SparsePolynomial::from_records(3, &r).unwrap(), p);
    }

    #[test]
    fn display_is_readable() {
        let p = poly(2, &[(&[2, 0], 1), (&[0, 1], -3)]);
        assert_eq!(p.to_string(), "x1^2 - 3*x2");
        let mut e = BasisExpansion::new(BasisKind::PowerSumOverZ);
        e.add(vec![5], int(-1));
        e.add(vec![4, 1], int(2));
        assert_eq!(e.to_string(), "-p[5]/z[5] + 2*p[41]/z[41]");
    }

    #[test]
    fn monomial_round_trip_through_power_sums() {
        for d in 1..=6u32 {
            for lam in Partition::all(d) {
                let m = basis_element(BasisKind::MonomialSym, lam.parts(), d as usize).unwrap();
                let p = expand_in_powersum(&m).unwrap();
                assert_eq!(p.to_polynomial(d as usize).unwrap(), m, "m[{lam}]");
            }
        }
    }

    #[test]
    fn psi_sum_over_rearrangements_is_power_sum() {
        for d in 1..=6u32 {
            for lam in Partition::all(d) {
                let n = d as usize;
                let mut sum = SparsePolynomial::zero(n);
                for alpha in Composition::all(d) {
                    if alpha.sorted() == lam {
                        sum = &sum + &basis_element(BasisKind::QsymPsi, alpha.parts(), n).unwrap();
                    }
                }
                assert_eq!(sum, basis_element(BasisKind::PowerSum, lam.parts(), n).unwrap());
            }
        }
    }

    #[test]
    fn over_z_rescaling() {
        let mut e = BasisExpansion::new(BasisKind::PowerSumOverZ);
        e.add(vec![3, 1, 1], int(-2));
        let plain = e.with_kind(BasisKind::PowerSum).unwrap();
        assert_eq!(plain.get(&[3, 1, 1]), rat(-1, 3));
        assert_eq!(plain.with_kind(BasisKind::PowerSumOverZ).unwrap(), e);
        assert!(e.with_kind(BasisKind::QsymPsi).is_err());
    }

    #[test]
    fn m_to_sym_conversion_checks_rearrangements() {
        let mut m = BasisExpansion::new(BasisKind::QsymMonomial);
        m.add(vec![2, 1], int(1));
        assert!(monomial_sym_from_qsym_monomial(&m).is_err());
        m.add(vec![1, 2], int(1));
        let s = monomial_sym_from_qsym_monomial(&m).unwrap();
        assert_eq!(s.get(&[2, 1]), int(1));
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = SparsePolynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, nvars), -3i64..=3),
            0..6,
        )
        .prop_map(move |ts| {
            let mut p = SparsePolynomial::zero(nvars);
            for (e, c) in ts {
                p.add_term(e, int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let z = &a - &a;
            prop_assert!(z.is_zero());
            for (_, v) in (&a * &b).terms() {
                prop_assert!(!v.is_zero());
            }
        }

        #[test]
        fn monomial_sym_is_identity_on_coefficients(
            coeffs in proptest::collection::vec(-4i64..=4, 5)
        ) {
            let parts = Partition::all(4);
            let mut e = BasisExpansion::new(BasisKind::MonomialSym);
            for (lam, c) in parts.iter().zip(&coeffs) {
                e.add(lam.parts().to_vec(), int(*c));
            }
            let f = e.to_polynomial(4).unwrap();
            prop_assert_eq!(expand_in_monomial_sym(&f).unwrap(), e);
        }
    }
}
