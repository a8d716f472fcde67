//! Stacked ribbons, ribbon tableaux and the cylindric Murnaghan-Nakayama
//! rule.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, Partition};
use crate::config::Limits;
use crate::cylindric::{Cell, CylindricDiagram};
use crate::error::{Error, Result};
use crate::polyring::{BasisExpansion, BasisKind, Rational};
use crate::qsym_poset::{enumerate_surjections, signed_me_sum, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StackedTag {
    NonPureStacked,
    PureStacked,
    NotStacked,
}

/// Decomposition `D = L_1 u ... u L_l u F` found by peeling loop ribbons
/// off the outer rim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StackedRibbonClass {
    pub tag: StackedTag,
    /// `loops * y + height(F)`; zero when not stacked.
    pub height: u32,
    /// Cylindric columns occupied; 1 for non-pure ribbons and 0 when not
    /// stacked.
    pub width: u32,
    /// Number of peeled loops, not counting a final loop F.
    pub loops: u32,
    /// Height of the residual piece F.
    pub residual_height: u32,
}

impl StackedRibbonClass {
    pub fn is_stacked(&self) -> bool {
        self.tag != StackedTag::NotStacked
    }

    /// Vertical edges of the extended ribbon threading all layers: each
    /// peeled loop contributes one edge more than its height, the one
    /// joining it to the next layer.
    pub fn sign_exponent(&self) -> u32 {
        self.height + self.loops
    }

    /// The factor this block contributes to a Murnaghan-Nakayama term.
    pub fn weight(&self) -> i64 {
        signed(self.width, self.sign_exponent(), self.tag)
    }

    /// `width * (-1)^height` with the layer height, which differs from
    /// [`Self::weight`] exactly when an odd number of loops was peeled.
    pub fn layer_weight(&self) -> i64 {
        signed(self.width, self.height, self.tag)
    }
}

fn signed(width: u32, exponent: u32, tag: StackedTag) -> i64 {
    match tag {
        StackedTag::NotStacked => 0,
        _ if exponent.is_multiple_of(2) => width as i64,
        _ => -(width as i64),
    }
}

fn neighbours((r, c): Cell) -> [Cell; 4] {
    [(r, c + 1), (r, c - 1), (r + 1, c), (r - 1, c)]
}

pub fn is_connected(d: &CylindricDiagram) -> bool {
    let cells = d.cells();
    let Some(&first) = cells.first() else {
        return false;
    };
    let mut seen = std::collections::HashSet::from([first]);
    let mut queue = VecDeque::from([first]);
    while let Some(cell) = queue.pop_front() {
        for n in neighbours(cell) {
            if d.contains(n) {
                let n = d.canon(n);
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    seen.len() == cells.len()
}

pub fn has_square(d: &CylindricDiagram) -> bool {
    d.cells().into_iter().any(|(r, c)| {
        d.contains((r, c + 1)) && d.contains((r + 1, c)) && d.contains((r + 1, c + 1))
    })
}

/// Vertical adjacencies inside `d`.
pub fn vertical_edges(d: &CylindricDiagram) -> u32 {
    d.cells().into_iter().filter(|&(r, c)| d.contains((r + 1, c))).count() as u32
}

/// Outer edges of `d` once its rim (cells whose north-east diagonal
/// neighbour lies outside `d`) is removed.
pub fn rim_removed(d: &CylindricDiagram) -> Vec<i64> {
    (1..=d.y() as i64)
        .map(|r| {
            d.inner_edge(r)
                .max(d.outer_edge(r).min(d.outer_edge(r + 1) - 1))
        })
        .collect()
}

pub fn rim(d: &CylindricDiagram) -> CylindricDiagram {
    d.between(rim_removed(d), d.outer_edges().to_vec())
        .expect("the rim lies between nested boundaries")
}

fn is_loop(d: &CylindricDiagram) -> bool {
    d.size() == d.x() + d.y() && is_connected(d) && !has_square(d)
}

pub fn classify_stacked(d: &CylindricDiagram) -> Result<StackedRibbonClass> {
    if d.is_empty() {
        return Err(Error::Invalid("cannot classify an empty diagram".into()));
    }
    let y = d.y() as u32;
    let mut cur = d.clone();
    let mut loops = 0u32;
    loop {
        let inside = rim_removed(&cur);
        if inside == cur.inner_edges() {
            break;
        }
        let r = cur.between(inside.clone(), cur.outer_edges().to_vec())?;
        if !is_loop(&r) {
            break;
        }
        loops += 1;
        cur = cur.between(cur.inner_edges().to_vec(), inside)?;
    }
    let not_stacked = StackedRibbonClass {
        tag: StackedTag::NotStacked,
        height: 0,
        width: 0,
        loops,
        residual_height: 0,
    };
    if is_loop(&cur) {
        let x = d.x() as i64;
        let columns: std::collections::BTreeSet<i64> =
            d.cells().iter().map(|&(_, c)| c.rem_euclid(x)).collect();
        return Ok(StackedRibbonClass {
            tag: StackedTag::PureStacked,
            height: loops * y + y,
            width: columns.len() as u32,
            loops,
            residual_height: y,
        });
    }
    if cur.size() < d.x() + d.y() && is_connected(&cur) && !has_square(&cur) {
        let h = vertical_edges(&cur);
        return Ok(StackedRibbonClass {
            tag: StackedTag::NonPureStacked,
            height: loops * y + h,
            width: 1,
            loops,
            residual_height: h,
        });
    }
    Ok(not_stacked)
}

/// Every outer boundary `nu` with `inner <= nu <= outer` such that the
/// region between `nu` and `outer` has exactly `m` cells.
pub fn subdiagrams_removing(d: &CylindricDiagram, m: usize) -> Vec<Vec<i64>> {
    let y = d.y();
    let x = d.x() as i64;
    let inner = d.inner_edges();
    let outer = d.outer_edges();
    let mut out = Vec::new();
    // Rows are chosen from the top (row y) down so that nu[r] >= nu[r+1]
    // can be enforced as we go; the wrap condition is checked at the end.
    fn rec(
        r: usize,
        inner: &[i64],
        outer: &[i64],
        x: i64,
        left: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let y = inner.len();
        if r == 0 {
            if left == 0 && cur[0] - x <= cur[y - 1] {
                out.push(cur.clone());
            }
            return;
        }
        let i = r - 1;
        let lo_nest = if r == y { inner[i] } else { inner[i].max(cur[i + 1]) };
        let lo = lo_nest.max(outer[i] - left);
        for v in lo..=outer[i] {
            cur[i] = v;
            rec(r - 1, inner, outer, x, left - (outer[i] - v), cur, out);
        }
        cur[i] = outer[i];
    }
    let mut cur = outer.to_vec();
    rec(y, inner, outer, x, m as i64, &mut cur, &mut out);
    out
}

/// One ribbon tableau: blocks of cells (fundamental representatives) with
/// their classes. Block `j` (0-based here) has `mu[j]` cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonTableau {
    pub blocks: Vec<Vec<Cell>>,
    pub classes: Vec<StackedRibbonClass>,
}

impl RibbonTableau {
    pub fn weight(&self) -> i64 {
        self.classes.iter().map(|c| c.weight()).product()
    }

    pub fn render(&self, d: &CylindricDiagram) -> String {
        let mut labels = HashMap::new();
        for (j, block) in self.blocks.iter().enumerate() {
            for &c in block {
                labels.insert(c, (j + 1).to_string());
            }
        }
        d.render(Some(&labels))
    }
}

fn check_content(d: &CylindricDiagram, mu: &Partition) -> Result<()> {
    if mu.weight() as usize != d.size() {
        return Err(Error::Invalid(format!(
            "content {mu} does not have weight {}",
            d.size()
        )));
    }
    Ok(())
}

/// All ribbon tableaux of shape `d` and content `mu`, built by removing
/// blocks from the outer boundary, last block first.
pub fn enumerate_ribbon_tableaux(d: &CylindricDiagram, mu: &Partition) -> Result<Vec<RibbonTableau>> {
    check_content(d, mu)?;
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    let mut classes = Vec::new();
    rt_rec(d, mu.parts(), d.outer_edges().to_vec(), &mut blocks, &mut classes, &mut out)?;
    Ok(out)
}

fn rt_rec(
    d: &CylindricDiagram,
    mu: &[u32],
    outer: Vec<i64>,
    blocks: &mut Vec<Vec<Cell>>,
    classes: &mut Vec<StackedRibbonClass>,
    out: &mut Vec<RibbonTableau>,
) -> Result<()> {
    let Some((&last, rest)) = mu.split_last() else {
        out.push(RibbonTableau {
            blocks: blocks.iter().rev().cloned().collect(),
            classes: classes.iter().rev().copied().collect(),
        });
        return Ok(());
    };
    let cur = d.between(d.inner_edges().to_vec(), outer.clone())?;
    for nu in subdiagrams_removing(&cur, last as usize) {
        let block = d.between(nu.clone(), outer.clone())?;
        let class = classify_stacked(&block)?;
        if !class.is_stacked() {
            continue;
        }
        blocks.push(block.cells());
        classes.push(class);
        rt_rec(d, rest, nu, blocks, classes, out)?;
        blocks.pop();
        classes.pop();
    }
    Ok(())
}

/// Ribbon tableaux by filtering every order-preserving surjection of the
/// cell poset; the slow oracle for [`enumerate_ribbon_tableaux`].
pub fn ribbon_tableaux_by_filter(d: &CylindricDiagram, mu: &Partition) -> Result<usize> {
    check_content(d, mu)?;
    let p = d.poset()?;
    let cells = d.cells();
    let alpha = Composition::new(mu.parts().to_vec())?;
    let mut count = 0;
    for f in enumerate_surjections(&p, &[], &alpha)? {
        let mut prefix: Mask = 0;
        let mut ok = true;
        for j in 1..=alpha.len() {
            let before = outer_of_downset(d, &cells, prefix);
            prefix |= f.block(j);
            let after = outer_of_downset(d, &cells, prefix);
            let block = d.between(before, after)?;
            if !classify_stacked(&block)?.is_stacked() {
                ok = false;
                break;
            }
        }
        count += ok as usize;
    }
    Ok(count)
}

/// Outer boundary of a down-set of cells (given as a mask over `cells`).
fn outer_of_downset(d: &CylindricDiagram, cells: &[Cell], mask: Mask) -> Vec<i64> {
    let mut out = d.inner_edges().to_vec();
    for (i, &(r, c)) in cells.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let e = &mut out[(r - 1) as usize];
            *e = (*e).max(c);
        }
    }
    out
}

/// Coefficients of `p_mu / z_mu` in s_D by the cylindric
/// Murnaghan-Nakayama rule.
pub fn mn_expansion(d: &CylindricDiagram) -> Result<BasisExpansion> {
    let mut out = BasisExpansion::new(BasisKind::PowerSumOverZ);
    let mut classes: HashMap<(Vec<i64>, Vec<i64>), i64> = HashMap::new();
    for mu in Partition::all(d.size() as u32) {
        let mut memo: HashMap<(Vec<i64>, usize), i128> = HashMap::new();
        let c = mn_rec(d, mu.parts(), d.outer_edges().to_vec(), &mut memo, &mut classes)?;
        out.add(mu.parts().to_vec(), Rational::from_integer(c.into()));
    }
    Ok(out)
}

fn mn_rec(
    d: &CylindricDiagram,
    mu: &[u32],
    outer: Vec<i64>,
    memo: &mut HashMap<(Vec<i64>, usize), i128>,
    classes: &mut HashMap<(Vec<i64>, Vec<i64>), i64>,
) -> Result<i128> {
    let Some((&last, rest)) = mu.split_last() else {
        return Ok(1);
    };
    let key = (outer, mu.len());
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let outer = key.0.clone();
    let cur = d.between(d.inner_edges().to_vec(), outer.clone())?;
    let mut total: i128 = 0;
    for nu in subdiagrams_removing(&cur, last as usize) {
        let ck = (nu.clone(), outer.clone());
        let w = match classes.get(&ck) {
            Some(&w) => w,
            None => {
                let w = classify_stacked(&d.between(nu.clone(), outer.clone())?)?.weight();
                classes.insert(ck, w);
                w
            }
        };
        if w != 0 {
            total += w as i128 * mn_rec(d, rest, nu, memo, classes)?;
        }
    }
    memo.insert(key, total);
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackedReport {
    pub oracle: i64,
    /// `width * (-1)^(height + loops)`, or 0 when not stacked.
    pub closed_form: i64,
    /// `width * (-1)^height` with the layer height alone.
    pub layer_form: i64,
    pub agree: bool,
}

/// Compares the signed sum over subsets of strict edges with the closed
/// form read off the stacked decomposition.
pub fn verify_stacked_formula(d: &CylindricDiagram, limits: &Limits) -> Result<StackedReport> {
    let p = d.poset()?;
    let oracle = signed_me_sum(&p, p.strict_edges(), limits)?;
    let (closed_form, layer_form) = if d.is_empty() {
        (0, 0)
    } else {
        let c = classify_stacked(d)?;
        (c.weight(), c.layer_weight())
    };
    Ok(StackedReport {
        oracle,
        closed_form,
        layer_form,
        agree: oracle == closed_form,
    })
}
