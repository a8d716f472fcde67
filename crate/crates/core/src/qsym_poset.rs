//! Oriented posets (P, E): chain congruences, quotient posets,
//! order-preserving surjections, P-partition generating functions and their
//! quasisymmetric power-sum expansions.
//!
//! Element sets are stored as `u128` bit masks, so posets are limited to 128
//! elements.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, Partition};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::polyring::{int, BasisExpansion, BasisKind, SparsePolynomial};

pub type Mask = u128;
pub type EdgeSet = Vec<(usize, usize)>;

const MAX_ELEMENTS: usize = 128;

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A finite poset with a distinguished set of strict relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedPoset {
    labels: Vec<String>,
    covers: EdgeSet,
    strict: EdgeSet,
    /// `below[b]` holds every `a` with `a < b`.
    below: Vec<Mask>,
    /// `above[a]` holds every `b` with `a < b`.
    above: Vec<Mask>,
}

/// Serialized form: elements, generating relations and strict pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetRecord {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
    pub strict: Vec<(usize, usize)>,
}

impl OrientedPoset {
    /// Builds the poset generated by `covers` (pairs `(a, b)` meaning
    /// `a < b`). Every strict pair must be a relation of the poset.
    pub fn new(labels: Vec<String>, covers: EdgeSet, strict: EdgeSet) -> Result<OrientedPoset> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::Invalid(format!(
                "posets are limited to {MAX_ELEMENTS} elements, got {n}"
            )));
        }
        let mut above = vec![0 as Mask; n];
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("relation ({a},{b}) out of range")));
            }
            above[a] |= 1 << b;
        }
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| above[a] >> a & 1 == 1) {
            return Err(Error::Invalid(format!(
                "relations contain a cycle through `{}`",
                labels[a]
            )));
        }
        let mut below = vec![0 as Mask; n];
        for a in 0..n {
            for b in bits(above[a]) {
                below[b] |= 1 << a;
            }
        }
        for &(a, b) in &strict {
            if a >= n || b >= n || above[a] >> b & 1 == 0 {
                return Err(Error::Invalid(format!(
                    "strict pair ({a},{b}) is not a relation of the poset"
                )));
            }
        }
        let mut strict = strict;
        strict.sort_unstable();
        strict.dedup();
        Ok(OrientedPoset {
            labels,
            covers,
            strict,
            below,
            above,
        })
    }

    /// Convenience constructor with labels `1..=n`.
    pub fn numbered(n: usize, covers: EdgeSet, strict: EdgeSet) -> Result<OrientedPoset> {
        OrientedPoset::new((1..=n).map(|i| i.to_string()).collect(), covers, strict)
    }

    /// One naturally labelled representative of every poset with at most
    /// `max_n` elements up to isomorphism (406 posets for `max_n = 6`),
    /// ordered by size, then by relation list. No strict pairs are set.
    pub fn all_up_to(max_n: usize) -> Vec<OrientedPoset> {
        let mut out = Vec::new();
        // Each level extends a poset on 0..n by an element above a down-set.
        let mut level: Vec<Vec<Mask>> = vec![Vec::new()];
        for n in 1..=max_n {
            let mut next = Vec::new();
            for below in &level {
                let m = n - 1;
                for down in 0..(1 as Mask) << m {
                    if bits(down).all(|b| below[b] & !down == 0) {
                        let mut b = below.clone();
                        b.push(down);
                        next.push(b);
                    }
                }
            }
            let perms = crate::combinat::permutations(n);
            let mut seen: BTreeMap<Vec<(usize, usize)>, Vec<Mask>> = BTreeMap::new();
            for b in next {
                let rel: Vec<(usize, usize)> = (0..n).flat_map(|y| bits(b[y]).map(move |x| (x, y))).collect();
                let key = perms
                    .iter()
                    .map(|(p, _)| {
                        let mut r: Vec<(usize, usize)> = rel.iter().map(|&(x, y)| (p[x], p[y])).collect();
                        r.sort_unstable();
                        r
                    })
                    .min()
                    .unwrap_or_default();
                seen.entry(key).or_insert(b);
            }
            level = seen.values().cloned().collect();
            for b in &level {
                let covers: EdgeSet = (0..n)
                    .flat_map(|y| {
                        bits(b[y])
                            .filter(move |&x| !bits(b[y]).any(|z| b[z] >> x & 1 == 1))
                            .map(move |x| (x, y))
                    })
                    .collect();
                out.push(OrientedPoset::numbered(n, covers, Vec::new()).expect("down-set extensions are acyclic"));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn strict_edges(&self) -> &[(usize, usize)] {
        &self.strict
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.above[a] >> b & 1 == 1
    }

    pub fn below_mask(&self, b: usize) -> Mask {
        self.below[b]
    }

    pub fn above_mask(&self, a: usize) -> Mask {
        self.above[a]
    }

    pub fn full_mask(&self) -> Mask {
        if self.len() == MAX_ELEMENTS {
            Mask::MAX
        } else {
            (1 << self.len()) - 1
        }
    }

    /// Every related pair `(a, b)` with `a < b`, sorted.
    pub fn rel(&self) -> EdgeSet {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in bits(self.above[a]) {
                out.push((a, b));
            }
        }
        out
    }

    /// Smallest-index-first topological order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed: Mask = 0;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&v| placed >> v & 1 == 0 && self.below[v] & !placed == 0)
                .expect("acyclic");
            placed |= 1 << next;
            out.push(next);
        }
        out
    }

    /// The induced sub-poset on `subset`, keeping the strict pairs inside it.
    /// Elements keep their relative order.
    pub fn induced(&self, subset: Mask) -> OrientedPoset {
        let elems: Vec<usize> = bits(subset).collect();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut covers = Vec::new();
        for (i, &a) in elems.iter().enumerate() {
            for b in bits(self.above[a] & subset) {
                covers.push((i, pos[&b]));
            }
        }
        let strict = self
            .strict
            .iter()
            .filter(|(a, b)| subset >> a & 1 == 1 && subset >> b & 1 == 1)
            .map(|(a, b)| (pos[a], pos[b]))
            .collect();
        OrientedPoset::new(
            elems.iter().map(|&e| self.labels[e].clone()).collect(),
            covers,
            strict,
        )
        .expect("induced sub-poset is valid")
    }

    /// The same poset with a different strict-edge set.
    pub fn with_strict(&self, strict: EdgeSet) -> Result<OrientedPoset> {
        OrientedPoset::new(self.labels.clone(), self.covers.clone(), strict)
    }

    pub fn record(&self) -> PosetRecord {
        PosetRecord {
            elements: self.labels.clone(),
            covers: self.covers.clone(),
            strict: self.strict.clone(),
        }
    }

    pub fn from_record(r: &PosetRecord) -> Result<OrientedPoset> {
        OrientedPoset::new(r.elements.clone(), r.covers.clone(), r.strict.clone())
    }

    fn check_edges(&self, s: &[(usize, usize)]) -> Result<()> {
        for &(a, b) in s {
            if a >= self.len() || b >= self.len() || !self.lt(a, b) {
                return Err(Error::Invalid(format!("({a},{b}) is not a relation of the poset")));
            }
        }
        Ok(())
    }
}

/// Equivalence classes of a chain congruence and its quotient order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCongruence {
    /// Class masks, ordered by smallest member.
    classes: Vec<Mask>,
    class_of: Vec<usize>,
    /// `quotient_above[c]` is the set of classes strictly above class `c`.
    quotient_above: Vec<Mask>,
}

impl ChainCongruence {
    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|&m| bits(m).collect()).collect()
    }

    pub fn class_masks(&self) -> &[Mask] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn quotient_lt(&self, c: usize, d: usize) -> bool {
        self.quotient_above[c] >> d & 1 == 1
    }

    /// The closed edge set: all related pairs lying in a common class.
    pub fn edges(&self, p: &OrientedPoset) -> EdgeSet {
        p.rel()
            .into_iter()
            .filter(|&(a, b)| self.class_of[a] == self.class_of[b])
            .collect()
    }

    /// Index of the unique minimal class, if there is exactly one.
    pub fn unique_minimum(&self) -> Option<usize> {
        let n = self.classes.len();
        let mut mins = (0..n).filter(|&c| (0..n).all(|d| !self.quotient_lt(d, c)));
        let first = mins.next()?;
        mins.next().is_none().then_some(first)
    }
}

fn find(parent: &mut [usize], a: usize) -> usize {
    let mut r = a;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = a;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Class masks of the closure of `s`, restricted to the elements of `domain`
/// (which must be convex so that the induced order is the restriction).
fn closure_masks(p: &OrientedPoset, domain: Mask, s: &[(usize, usize)]) -> Vec<Mask> {
    let n = p.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in s {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    loop {
        let mut root_to_class: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Mask> = Vec::new();
        let mut class_of = vec![usize::MAX; n];
        for a in bits(domain) {
            let r = find(&mut parent, a);
            let c = *root_to_class.entry(r).or_insert_with(|| {
                classes.push(0);
                classes.len() - 1
            });
            classes[c] |= 1 << a;
            class_of[a] = c;
        }
        let k = classes.len();
        let mut reach = vec![0 as Mask; k];
        for (c, &m) in classes.iter().enumerate() {
            let mut up: Mask = 0;
            for a in bits(m) {
                up |= p.above[a];
            }
            for b in bits(up & domain) {
                if class_of[b] != c {
                    reach[c] |= 1 << class_of[b];
                }
            }
        }
        for m in 0..k {
            for i in 0..k {
                if reach[i] >> m & 1 == 1 {
                    reach[i] |= reach[m];
                }
            }
        }
        let mut merged = false;
        for i in 0..k {
            for j in bits(reach[i]) {
                if j > i && reach[j] >> i & 1 == 1 {
                    let a = classes[i].trailing_zeros() as usize;
                    let b = classes[j].trailing_zeros() as usize;
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                        merged = true;
                    }
                }
            }
        }
        if !merged {
            return classes;
        }
    }
}

fn congruence_from_masks(p: &OrientedPoset, mut classes: Vec<Mask>) -> ChainCongruence {
    classes.sort_by_key(|m| m.trailing_zeros());
    let mut class_of = vec![0; p.len()];
    for (c, &m) in classes.iter().enumerate() {
        for a in bits(m) {
            class_of[a] = c;
        }
    }
    let mut quotient_above = vec![0 as Mask; classes.len()];
    for (c, &m) in classes.iter().enumerate() {
        for a in bits(m) {
            for b in bits(p.above[a]) {
                if class_of[b] != c {
                    quotient_above[c] |= 1 << class_of[b];
                }
            }
        }
    }
    ChainCongruence {
        classes,
        class_of,
        quotient_above,
    }
}

/// The closure of `s`: the coarsest equivalence forced on every weakly
/// order-preserving map that is constant along `s`. Strongly connected
/// groups of classes in the quotient are merged until it is acyclic.
pub fn chain_congruence_closure(p: &OrientedPoset, s: &[(usize, usize)]) -> Result<ChainCongruence> {
    p.check_edges(s)?;
    Ok(congruence_from_masks(p, closure_masks(p, p.full_mask(), s)))
}

/// m for an already validated edge set on a convex domain.
fn m_e_masked(p: &OrientedPoset, domain: Mask, s: &[(usize, usize)]) -> u64 {
    let classes = closure_masks(p, domain, s);
    let mut minimal = classes.iter().filter(|&&c| {
        let mut below: Mask = 0;
        for b in bits(c) {
            below |= p.below[b];
        }
        below & domain & !c == 0
    });
    match (minimal.next(), minimal.next()) {
        (Some(&c), None) => c.count_ones() as u64,
        _ => 0,
    }
}

/// Size of the unique minimal class of the quotient by the closure of `s`,
/// or 0 when the minimum is not unique.
pub fn m_e(p: &OrientedPoset, s: &[(usize, usize)]) -> Result<u64> {
    p.check_edges(s)?;
    if p.is_empty() {
        return Ok(0);
    }
    Ok(m_e_masked(p, p.full_mask(), s))
}

/// Weakly order-preserving surjection onto `1..=l(alpha)` with fibre sizes
/// alpha.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderSurjection {
    /// Block (1-based) of each element.
    pub assignment: Vec<usize>,
    pub block_sizes: Composition,
}

impl OrderSurjection {
    pub fn block(&self, j: usize) -> Mask {
        let mut m: Mask = 0;
        for (a, &v) in self.assignment.iter().enumerate() {
            if v == j {
                m |= 1 << a;
            }
        }
        m
    }
}

/// All order-preserving surjections with fibre sizes `alpha` that are
/// constant along `s`, in lexicographic order of assignments.
pub fn enumerate_surjections(
    p: &OrientedPoset,
    s: &[(usize, usize)],
    alpha: &Composition,
) -> Result<Vec<OrderSurjection>> {
    p.check_edges(s)?;
    if alpha.weight() as usize != p.len() {
        return Err(Error::Invalid(format!(
            "composition {alpha} does not have weight {}",
            p.len()
        )));
    }
    let ext = p.linear_extension();
    let mut equal_to: Vec<Option<usize>> = vec![None; p.len()];
    for &(a, b) in s {
        equal_to[b] = Some(a);
    }
    let mut caps: Vec<u32> = alpha.parts().to_vec();
    let mut f = vec![0usize; p.len()];
    let mut out = Vec::new();
    surj_rec(p, &ext, 0, &equal_to, s, &mut caps, &mut f, &mut out);
    let mut out: Vec<OrderSurjection> = out
        .into_iter()
        .map(|assignment| OrderSurjection {
            assignment,
            block_sizes: alpha.clone(),
        })
        .collect();
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn surj_rec(
    p: &OrientedPoset,
    ext: &[usize],
    t: usize,
    equal_to: &[Option<usize>],
    s: &[(usize, usize)],
    caps: &mut [u32],
    f: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) {
    if t == ext.len() {
        out.push(f.to_vec());
        return;
    }
    let v = ext[t];
    let lo = bits(p.below[v]).map(|a| f[a]).max().unwrap_or(1);
    let choices: Vec<usize> = match equal_to[v] {
        Some(a) => vec![f[a]],
        None => (lo..=caps.len()).collect(),
    };
    for c in choices {
        if c < lo || caps[c - 1] == 0 {
            continue;
        }
        // Several strict pairs may end at v.
        if s.iter().any(|&(a, b)| b == v && f[a] != c) {
            continue;
        }
        caps[c - 1] -= 1;
        f[v] = c;
        surj_rec(p, ext, t + 1, equal_to, s, caps, f, out);
        f[v] = 0;
        caps[c - 1] += 1;
    }
}

/// How the edges of `S` constrain a P-partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KMode {
    /// f(a) = f(b) along S.
    Equal,
    /// f(a) < f(b) along S.
    Strict,
}

/// Generating function of weakly order-preserving maps P -> [nvars] with the
/// mode constraint on `s`, by depth-first search along a linear extension.
pub fn k_generating(
    p: &OrientedPoset,
    s: &[(usize, usize)],
    mode: KMode,
    nvars: usize,
) -> Result<SparsePolynomial> {
    p.check_edges(s)?;
    if nvars == 0 {
        return Err(Error::Invalid("need at least one variable".into()));
    }
    let ext = p.linear_extension();
    let mut counts: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut f = vec![0usize; p.len()];
    let mut exp = vec![0u32; nvars];
    k_rec(p, &ext, 0, s, mode, nvars, &mut f, &mut exp, &mut counts);
    let mut out = SparsePolynomial::zero(nvars);
    for (e, c) in counts {
        out.add_term(e, int(c));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn k_rec(
    p: &OrientedPoset,
    ext: &[usize],
    t: usize,
    s: &[(usize, usize)],
    mode: KMode,
    nvars: usize,
    f: &mut [usize],
    exp: &mut [u32],
    counts: &mut HashMap<Vec<u32>, i64>,
) {
    if t == ext.len() {
        *counts.entry(exp.to_vec()).or_default() += 1;
        return;
    }
    let v = ext[t];
    let mut lo = bits(p.below[v]).map(|a| f[a]).max().unwrap_or(1);
    let mut hi = nvars;
    for &(a, b) in s {
        if b == v {
            match mode {
                KMode::Equal => {
                    lo = lo.max(f[a]);
                    hi = hi.min(f[a]);
                }
                KMode::Strict => lo = lo.max(f[a] + 1),
            }
        }
    }
    for c in lo..=hi {
        f[v] = c;
        exp[c - 1] += 1;
        k_rec(p, ext, t + 1, s, mode, nvars, f, exp, counts);
        exp[c - 1] -= 1;
    }
    f[v] = 0;
}

/// The same generating function as [`k_generating`], expanded in the
/// monomial quasisymmetric basis by summing over chains of down-sets.
pub fn k_generating_qsym(
    p: &OrientedPoset,
    s: &[(usize, usize)],
    mode: KMode,
) -> Result<BasisExpansion> {
    p.check_edges(s)?;
    let mut memo: HashMap<Mask, BTreeMap<Vec<u32>, u64>> = HashMap::new();
    let full = p.full_mask();
    let counts = packed_rec(p, s, mode, 0, full, &mut memo);
    let mut out = BasisExpansion::new(BasisKind::QsymMonomial);
    for (alpha, c) in counts {
        out.add(alpha, int(c as i64));
    }
    Ok(out)
}

fn block_ok(s: &[(usize, usize)], mode: KMode, done: Mask, block: Mask) -> bool {
    s.iter().all(|&(a, b)| {
        let ia = block >> a & 1 == 1;
        let ib = block >> b & 1 == 1;
        match mode {
            // a and b must land in the same block.
            KMode::Equal => ia == ib || (done >> a & 1 == 1 && done >> b & 1 == 1),
            KMode::Strict => !(ia && ib),
        }
    })
}

fn packed_rec(
    p: &OrientedPoset,
    s: &[(usize, usize)],
    mode: KMode,
    done: Mask,
    full: Mask,
    memo: &mut HashMap<Mask, BTreeMap<Vec<u32>, u64>>,
) -> BTreeMap<Vec<u32>, u64> {
    if done == full {
        let mut m = BTreeMap::new();
        m.insert(Vec::new(), 1);
        return m;
    }
    if let Some(m) = memo.get(&done) {
        return m.clone();
    }
    let rest = full & !done;
    let mut out: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    // Enumerate non-empty subsets of the remaining elements that extend the
    // down-set.
    let elems: Vec<usize> = bits(rest).collect();
    let k = elems.len();
    for sub in 1u64..(1u64 << k) {
        let mut block: Mask = 0;
        for (i, &e) in elems.iter().enumerate() {
            if sub >> i & 1 == 1 {
                block |= 1 << e;
            }
        }
        let next = done | block;
        if bits(block).any(|b| p.below[b] & !next != 0) {
            continue;
        }
        if !block_ok(s, mode, done, block) {
            continue;
        }
        let size = block.count_ones();
        for (tail, c) in packed_rec(p, s, mode, next, full, memo) {
            let mut alpha = Vec::with_capacity(tail.len() + 1);
            alpha.push(size);
            alpha.extend(tail);
            *out.entry(alpha).or_default() += c;
        }
    }
    memo.insert(done, out.clone());
    out
}

/// Psi-expansion of K^= for a chain congruence E: the coefficient of
/// `Psi_alpha / z_alpha` is the sum over surjections constant on E-classes
/// of the product of m over the fibres.
pub fn psi_as(p: &OrientedPoset, e: &[(usize, usize)]) -> Result<BasisExpansion> {
    let closed = chain_congruence_closure(p, e)?.edges(p);
    let mut given: Vec<(usize, usize)> = e.to_vec();
    given.sort_unstable();
    given.dedup();
    if let Some(&missing) = closed.iter().find(|pair| given.binary_search(pair).is_err()) {
        return Err(Error::NotChainCongruence(missing));
    }
    let mut out = BasisExpansion::new(BasisKind::QsymPsiOverZ);
    for alpha in Composition::all(p.len() as u32) {
        let mut total: i64 = 0;
        for f in enumerate_surjections(p, &given, &alpha)? {
            let mut prod: i64 = 1;
            for j in 1..=alpha.len() {
                let block = f.block(j);
                let inside: Vec<(usize, usize)> = given
                    .iter()
                    .copied()
                    .filter(|&(a, b)| block >> a & 1 == 1 && block >> b & 1 == 1)
                    .collect();
                prod *= m_e_masked(p, block, &inside) as i64;
                if prod == 0 {
                    break;
                }
            }
            total += prod;
        }
        out.add(alpha.parts().to_vec(), int(total));
    }
    Ok(out)
}

/// Signed sum over subsets S of the strict pairs inside `domain`.
fn signed_sum_masked(p: &OrientedPoset, domain: Mask, e: &[(usize, usize)]) -> i64 {
    let inside: Vec<(usize, usize)> = e
        .iter()
        .copied()
        .filter(|&(a, b)| domain >> a & 1 == 1 && domain >> b & 1 == 1)
        .collect();
    let k = inside.len();
    let mut total: i64 = 0;
    let mut chosen = Vec::with_capacity(k);
    for sub in 0u64..(1u64 << k) {
        chosen.clear();
        for (i, &pair) in inside.iter().enumerate() {
            if sub >> i & 1 == 1 {
                chosen.push(pair);
            }
        }
        let m = m_e_masked(p, domain, &chosen) as i64;
        if sub.count_ones() % 2 == 0 {
            total += m;
        } else {
            total -= m;
        }
    }
    total
}

/// Psi-expansion of K^< (coefficients of `Psi_alpha / z_alpha`): sum over
/// all order-preserving surjections of the product of fibrewise signed
/// sums.
pub fn psi_strict(p: &OrientedPoset, e: &[(usize, usize)], limits: &Limits) -> Result<BasisExpansion> {
    p.check_edges(e)?;
    Limits::check("strict edges", e.len(), limits.max_strict_edges)?;
    let mut cache: HashMap<Mask, i64> = HashMap::new();
    let mut out = BasisExpansion::new(BasisKind::QsymPsiOverZ);
    for alpha in Composition::all(p.len() as u32) {
        let mut total: i64 = 0;
        for f in enumerate_surjections(p, &[], &alpha)? {
            let mut prod: i64 = 1;
            for j in 1..=alpha.len() {
                let block = f.block(j);
                let v = *cache
                    .entry(block)
                    .or_insert_with(|| signed_sum_masked(p, block, e));
                prod *= v;
                if prod == 0 {
                    break;
                }
            }
            total += prod;
        }
        out.add(alpha.parts().to_vec(), int(total));
    }
    Ok(out)
}

/// The 2^|E| signed sum of m over subsets of E.
pub fn signed_me_sum(p: &OrientedPoset, e: &[(usize, usize)], limits: &Limits) -> Result<i64> {
    p.check_edges(e)?;
    Limits::check("strict edges", e.len(), limits.max_strict_edges)?;
    if p.is_empty() {
        return Ok(0);
    }
    Ok(signed_sum_masked(p, p.full_mask(), e))
}

/// Symmetrizes a Psi/z expansion: the coefficient of `p_lambda / z_lambda`
/// is the sum over compositions rearranging to lambda.
pub fn symmetrize_psi(e: &BasisExpansion) -> Result<BasisExpansion> {
    if e.kind != BasisKind::QsymPsiOverZ {
        return Err(Error::Invalid("expected a Psi/z expansion".into()));
    }
    let mut out = BasisExpansion::new(BasisKind::PowerSumOverZ);
    for (alpha, c) in e.iter() {
        out.add(Partition::from_unsorted(alpha).parts().to_vec(), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(p: &OrientedPoset, pairs: &[(&str, &str)]) -> EdgeSet {
        pairs
            .iter()
            .map(|(a, b)| (p.index_of(a).unwrap(), p.index_of(b).unwrap()))
            .collect()
    }

    fn labelled(labels: &[&str], rels: &[(&str, &str)]) -> OrientedPoset {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| labels.iter().position(|l| l == s).unwrap();
        let covers = rels.iter().map(|(a, b)| (idx(a), idx(b))).collect();
        OrientedPoset::new(labels.clone(), covers, vec![]).unwrap()
    }

    /// Nine-element poset with E = {17, 23, 46, 69}.
    pub(crate) fn nine() -> (OrientedPoset, EdgeSet) {
        let p = labelled(
            &["1", "2", "3", "4", "5", "6", "7", "8", "9"],
            &[
                ("1", "7"),
                ("1", "3"),
                ("3", "4"),
                ("4", "8"),
                ("8", "9"),
                ("3", "5"),
                ("2", "3"),
                ("4", "6"),
                ("6", "9"),
            ],
        );
        let e = edges(&p, &[("1", "7"), ("2", "3"), ("4", "6"), ("6", "9")]);
        (p, e)
    }

    /// Ten-element poset with E = {13, 23, 47, 89}.
    pub(crate) fn ten() -> (OrientedPoset, EdgeSet) {
        let p = labelled(
            &["0", "1", "2", "3", "4", "5", "6", "7", "8", "9"],
            &[
                ("1", "4"),
                ("3", "5"),
                ("5", "8"),
                ("7", "8"),
                ("7", "0"),
                ("3", "6"),
                ("6", "9"),
                ("1", "3"),
                ("2", "3"),
                ("4", "7"),
                ("8", "9"),
            ],
        );
        let e = edges(&p, &[("1", "3"), ("2", "3"), ("4", "7"), ("8", "9")]);
        (p, e)
    }

    fn class_labels(p: &OrientedPoset, c: &ChainCongruence) -> Vec<String> {
        let mut v: Vec<String> = c
            .classes()
            .iter()
            .map(|cl| cl.iter().map(|&i| p.labels()[i].as_str()).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn closure_of_nine_element_example() {
        let (p, e) = nine();
        let c = chain_congruence_closure(&p, &e).unwrap();
        assert_eq!(class_labels(&p, &c), vec!["17", "23", "4689", "5"]);
        let closed = c.edges(&p);
        let expect = edges(
            &p,
            &[
                ("1", "7"),
                ("2", "3"),
                ("4", "6"),
                ("4", "8"),
                ("4", "9"),
                ("6", "9"),
                ("8", "9"),
            ],
        );
        let mut expect = expect;
        expect.sort();
        assert_eq!(closed, expect);
        assert_eq!(m_e(&p, &e).unwrap(), 2);
    }

    #[test]
    fn closure_trivial_cases() {
        let chain = OrientedPoset::numbered(3, vec![(0, 1), (1, 2)], vec![]).unwrap();
        let c = chain_congruence_closure(&chain, &[]).unwrap();
        assert_eq!(c.classes().len(), 3);
        let c = chain_congruence_closure(&chain, &[(0, 2)]).unwrap();
        assert_eq!(c.classes(), vec![vec![0, 1, 2]]);
        let anti = OrientedPoset::numbered(2, vec![], vec![]).unwrap();
        assert_eq!(m_e(&anti, &[]).unwrap(), 0);
        assert!(chain_congruence_closure(&anti, &[(0, 1)]).is_err());
    }

    #[test]
    fn fibre_values_of_ten_element_example() {
        let (p, e) = ten();
        let alpha = Composition::new(vec![5, 3, 2]).unwrap();
        let fs = enumerate_surjections(&p, &e, &alpha).unwrap();
        assert_eq!(fs.len(), 2);
        let mut table: Vec<Vec<u64>> = fs
            .iter()
            .map(|f| {
                (1..=3)
                    .map(|j| {
                        let block = f.block(j);
                        let inside: Vec<_> = e
                            .iter()
                            .copied()
                            .filter(|&(a, b)| block >> a & 1 == 1 && block >> b & 1 == 1)
                            .collect();
                        m_e(&p.induced(block), &reindex(&inside, block)).unwrap()
                    })
                    .collect()
            })
            .collect();
        table.sort();
        assert_eq!(table, vec![vec![3, 0, 2], vec![3, 2, 2]]);
        let psi = psi_as(&p, &e).unwrap();
        assert_eq!(psi.get(&[5, 3, 2]), int(12));
        assert_eq!(signed_me_sum(&p, &e, &Limits::default()).unwrap(), 0);
    }

    fn reindex(pairs: &[(usize, usize)], block: Mask) -> EdgeSet {
        let elems: Vec<usize> = bits(block).collect();
        let pos = |x: usize| elems.iter().position(|&e| e == x).unwrap();
        pairs.iter().map(|&(a, b)| (pos(a), pos(b))).collect()
    }

    #[test]
    fn surjection_counts() {
        let chain = OrientedPoset::numbered(4, vec![(0, 1), (1, 2), (2, 3)], vec![]).unwrap();
        let ones = Composition::new(vec![1; 4]).unwrap();
        assert_eq!(enumerate_surjections(&chain, &[], &ones).unwrap().len(), 1);
        let anti = OrientedPoset::numbered(2, vec![], vec![]).unwrap();
        let fs = enumerate_surjections(&anti, &[], &Composition::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs[0].assignment < fs[1].assignment);
    }

    #[test]
    fn k_generating_small() {
        let one = OrientedPoset::numbered(1, vec![], vec![]).unwrap();
        for mode in [KMode::Equal, KMode::Strict] {
            let k = k_generating(&one, &[], mode, 2).unwrap();
            assert_eq!(k, basis(BasisKind::PowerSum, &[1], 2));
        }
        let chain = OrientedPoset::numbered(2, vec![(0, 1)], vec![(0, 1)]).unwrap();
        let k = k_generating(&chain, &[(0, 1)], KMode::Strict, 2).unwrap();
        assert_eq!(k, SparsePolynomial::monomial(vec![1, 1], int(1)));
    }

    fn basis(kind: BasisKind, idx: &[u32], n: usize) -> SparsePolynomial {
        crate::polyring::basis_element(kind, idx, n).unwrap()
    }

    #[test]
    fn psi_on_trivial_posets() {
        let one = OrientedPoset::numbered(1, vec![], vec![]).unwrap();
        let e = psi_as(&one, &[]).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&[1]), int(1));
        let chain = OrientedPoset::numbered(3, vec![(0, 1), (1, 2)], vec![]).unwrap();
        assert!(matches!(psi_as(&chain, &[(0, 2)]), Err(Error::NotChainCongruence(_))));
        assert_eq!(signed_me_sum(&one, &[], &Limits::default()).unwrap(), 1);
    }

    #[test]
    fn psi_strict_on_a_chain_matches_oracle() {
        let chain = OrientedPoset::numbered(2, vec![(0, 1)], vec![(0, 1)]).unwrap();
        let e = psi_strict(&chain, &[(0, 1)], &Limits::default()).unwrap();
        let k = k_generating(&chain, &[(0, 1)], KMode::Strict, 2).unwrap();
        let oracle = crate::polyring::expand_in_psi(&k).unwrap();
        assert_eq!(e.with_kind(BasisKind::QsymPsi).unwrap(), oracle);
    }

    #[test]
    fn packed_matches_brute_force() {
        let (p, e) = nine();
        for mode in [KMode::Equal, KMode::Strict] {
            let small = p.induced(0b1_1111);
            let se: Vec<_> = e
                .iter()
                .copied()
                .filter(|&(a, b)| a < 5 && b < 5)
                .collect();
            let brute = k_generating(&small, &se, mode, 5).unwrap();
            let packed = k_generating_qsym(&small, &se, mode).unwrap();
            assert_eq!(packed.to_polynomial(5).unwrap(), brute);
        }
    }

    #[test]
    fn cost_guard_applies() {
        let chain = OrientedPoset::numbered(2, vec![(0, 1)], vec![]).unwrap();
        let tight = Limits {
            max_strict_edges: 0,
            ..Limits::default()
        };
        assert!(matches!(
            signed_me_sum(&chain, &[(0, 1)], &tight),
            Err(Error::CostGuard { .. })
        ));
    }

    #[test]
    fn poset_counts_up_to_isomorphism() {
        let all = OrientedPoset::all_up_to(6);
        let mut by_size = [0usize; 7];
        for p in &all {
            by_size[p.len()] += 1;
        }
        assert_eq!(by_size, [0, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn cyclic_relations_rejected() {
        assert!(OrientedPoset::numbered(2, vec![(0, 1), (1, 0)], vec![]).is_err());
        assert!(OrientedPoset::numbered(2, vec![], vec![(0, 1)]).is_err());
    }

    #[test]
    fn record_round_trip() {
        let (p, e) = nine();
        let p = p.with_strict(e).unwrap();
        assert_eq!(OrientedPoset::from_record(&p.record()).unwrap(), p);
    }
}
