//! Gelfand-Tsetlin patterns for flagged and cylindric tableaux.
//!
//! A pattern has levels `i = 0..=n`; level `i` records, for every row `j`,
//! the column where the entries `<= i` of that row end. Level `n` is
//! `lambda`, level 0 is `mu`, and `x[i][j] - x[i-1][j]` is the number of
//! entries `i` in row `j`. A cylindric pattern repeats sideways:
//! `x[i][j + m] = x[i][j] - shift`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cylindric::{Cssyt, CylindricDiagram};
use crate::error::{Error, Result};
use crate::flagged::{FlagPair, FlaggedTableau, SkewShape};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GtPattern {
    levels: Vec<Vec<i64>>,
    wrap_shift: Option<i64>,
}

/// Which wrap-around inequality a cylindric pattern must satisfy.
/// `Interlacing` continues the interlacing across the seam,
/// `x[i][m] + shift >= x[i+1][1]`; `SameLevel` only asks
/// `x[i][m] + shift >= x[i][1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WrapCondition {
    #[default]
    Interlacing,
    SameLevel,
}

fn violation(msg: String) -> Error {
    Error::Violation(msg)
}

impl GtPattern {
    /// Levels from the bottom (`mu`) to the top (`lambda`).
    pub fn new(levels: Vec<Vec<i64>>, wrap_shift: Option<i64>) -> Result<GtPattern> {
        let Some(first) = levels.first() else {
            return Err(Error::Invalid("a pattern needs at least one level".into()));
        };
        if levels.iter().any(|l| l.len() != first.len()) {
            return Err(Error::Invalid("pattern levels differ in length".into()));
        }
        Ok(GtPattern { levels, wrap_shift })
    }

    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    pub fn wrap_shift(&self) -> Option<i64> {
        self.wrap_shift
    }

    /// Largest entry value `n`.
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    /// Number of rows `m`.
    pub fn m(&self) -> usize {
        self.levels[0].len()
    }

    /// Number of entries equal to each `i = 1..=n`.
    pub fn weight(&self) -> Vec<u32> {
        (1..self.levels.len())
            .map(|i| {
                self.levels[i]
                    .iter()
                    .zip(&self.levels[i - 1])
                    .map(|(a, b)| (a - b) as u32)
                    .sum()
            })
            .collect()
    }

    /// The interlacing inequalities, plus the seam condition for cylindric
    /// patterns. Reports the first failing inequality.
    pub fn check_inequalities(&self, wrap: WrapCondition) -> Result<()> {
        let m = self.m();
        for i in 0..self.n() {
            let (lo, hi) = (&self.levels[i], &self.levels[i + 1]);
            for j in 0..m {
                if hi[j] < lo[j] {
                    return Err(violation(format!(
                        "x[{}][{}] >= x[{}][{}] fails: {} < {}",
                        i + 1,
                        j + 1,
                        i,
                        j + 1,
                        hi[j],
                        lo[j]
                    )));
                }
                if j + 1 < m && lo[j] < hi[j + 1] {
                    return Err(violation(format!(
                        "x[{}][{}] >= x[{}][{}] fails: {} < {}",
                        i,
                        j + 1,
                        i + 1,
                        j + 2,
                        lo[j],
                        hi[j + 1]
                    )));
                }
            }
            if let Some(s) = self.wrap_shift {
                let (left, right) = match wrap {
                    WrapCondition::Interlacing => (lo[m - 1] + s, hi[0]),
                    WrapCondition::SameLevel => (lo[m - 1] + s, lo[0]),
                };
                if left < right {
                    return Err(violation(format!(
                        "cylindric condition fails at level {i}: {left} < {right}"
                    )));
                }
            }
        }
        if let (Some(s), WrapCondition::SameLevel) = (self.wrap_shift, wrap) {
            let top = &self.levels[self.n()];
            if top[m - 1] + s < top[0] {
                return Err(violation(format!("cylindric condition fails at level {}", self.n())));
            }
        }
        Ok(())
    }

    /// Pattern of a flagged tableau with entries at most `n`.
    pub fn from_flagged_tableau(shape: &SkewShape, t: &FlaggedTableau, n: usize) -> Result<GtPattern> {
        if t.rows.len() != shape.rows() {
            return Err(Error::Invalid("tableau and shape differ in rows".into()));
        }
        if t.rows.iter().flatten().any(|&v| v == 0 || v as usize > n) {
            return Err(Error::Invalid(format!("entries must lie in 1..={n}")));
        }
        let levels = (0..=n)
            .map(|i| {
                (0..shape.rows())
                    .map(|j| shape.mu()[j] as i64 + t.rows[j].iter().filter(|&&v| v as usize <= i).count() as i64)
                    .collect()
            })
            .collect();
        GtPattern::new(levels, None)
    }

    /// The flagged tableau of a pattern; checks interlacing and, if given,
    /// that level `i` only moves rows whose flag interval contains `i`.
    pub fn to_flagged_tableau(&self, flags: Option<&FlagPair>) -> Result<FlaggedTableau> {
        self.check_inequalities(WrapCondition::Interlacing)?;
        let m = self.m();
        if let Some(f) = flags {
            if f.len() != m {
                return Err(Error::Invalid("flags and pattern differ in rows".into()));
            }
            for i in 1..=self.n() {
                for j in 0..m {
                    if !f.allows(j, i as u32) && self.levels[i][j] != self.levels[i - 1][j] {
                        return Err(violation(format!(
                            "x[{i}][{}] = x[{}][{}] fails: {i} is outside the flag of row {}",
                            j + 1,
                            i - 1,
                            j + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let rows = (0..m)
            .map(|j| {
                (1..=self.n())
                    .flat_map(|i| std::iter::repeat_n(i as u32, (self.levels[i][j] - self.levels[i - 1][j]) as usize))
                    .collect()
            })
            .collect();
        Ok(FlaggedTableau { rows })
    }

    /// The shape `lambda / mu` read off the top and bottom levels.
    pub fn shape(&self) -> Result<SkewShape> {
        let conv = |v: &[i64]| -> Result<Vec<u32>> {
            v.iter()
                .map(|&a| u32::try_from(a).map_err(|_| Error::Invalid("negative shape entry".into())))
                .collect()
        };
        SkewShape::with_rows(&conv(&self.levels[self.n()])?, &conv(&self.levels[0])?, self.m())
    }

    /// Pattern of a cylindric tableau; rows `1..=y` of the diagram are the
    /// pattern rows and the shift is `x`.
    pub fn from_cssyt(d: &CylindricDiagram, t: &Cssyt, n: usize) -> Result<GtPattern> {
        let cells = d.cells();
        if t.values.len() != cells.len() || t.values.iter().any(|&v| v == 0 || v as usize > n) {
            return Err(Error::Invalid(format!("tableau does not fit the diagram with entries in 1..={n}")));
        }
        let levels = (0..=n)
            .map(|i| {
                (1..=d.y() as i64)
                    .map(|r| {
                        let below = cells
                            .iter()
                            .zip(&t.values)
                            .filter(|((row, _), &v)| *row == r && v as usize <= i)
                            .count();
                        d.inner_edge(r) + below as i64
                    })
                    .collect()
            })
            .collect();
        GtPattern::new(levels, Some(d.x() as i64))
    }

    /// The cylindric tableau of a pattern on `d`.
    pub fn to_cssyt(&self, d: &CylindricDiagram) -> Result<Cssyt> {
        if self.wrap_shift != Some(d.x() as i64) || self.m() != d.y() {
            return Err(Error::Invalid("pattern does not match the cylinder".into()));
        }
        if self.levels[0] != d.inner_edges() || self.levels[self.n()] != d.outer_edges() {
            return Err(violation("top and bottom levels must be the diagram's boundaries".into()));
        }
        self.check_inequalities(WrapCondition::Interlacing)?;
        let values = d
            .cells()
            .into_iter()
            .map(|(r, c)| {
                let j = r as usize - 1;
                (1..=self.n()).find(|&i| self.levels[i][j] >= c).expect("top level is outer") as u32
            })
            .collect();
        Ok(Cssyt { values })
    }

    /// Staggered layout, top level first, each lower level shifted right
    /// by half a slot.
    pub fn render(&self) -> String {
        let w = self
            .levels
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let n = self.n();
        let mut out = String::new();
        for i in (0..=n).rev() {
            let mut line = " ".repeat((n - i) * (w + 1));
            let cells: Vec<String> = self.levels[i].iter().map(|v| format!("{v:>w$}")).collect();
            line.push_str(&cells.join(&" ".repeat(w + 2)));
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Lattice points of the flagged face of weight `weight`, built from the
/// top level down.
pub fn enumerate_flagged_gt(shape: &SkewShape, flags: &FlagPair, weight: &[u32]) -> Result<Vec<GtPattern>> {
    if flags.len() != shape.rows() {
        return Err(Error::Invalid("flags and shape differ in rows".into()));
    }
    let top: Vec<i64> = shape.lambda().iter().map(|&v| v as i64).collect();
    let bottom: Vec<i64> = shape.mu().iter().map(|&v| v as i64).collect();
    Ok(enumerate_levels(&top, &bottom, weight, None, WrapCondition::Interlacing, &|i, j| {
        flags.allows(j, i as u32)
    }))
}

/// Lattice points of the cylindric polytope of `d` with weight `weight`.
pub fn enumerate_cylindric_gt(d: &CylindricDiagram, weight: &[u32], wrap: WrapCondition) -> Vec<GtPattern> {
    enumerate_levels(d.outer_edges(), d.inner_edges(), weight, Some(d.x() as i64), wrap, &|_, _| true)
}

fn enumerate_levels(
    top: &[i64],
    bottom: &[i64],
    weight: &[u32],
    shift: Option<i64>,
    wrap: WrapCondition,
    moves: &dyn Fn(usize, usize) -> bool,
) -> Vec<GtPattern> {
    let n = weight.len();
    let m = top.len();
    let mut out = Vec::new();
    if weight.iter().map(|&v| v as i64).sum::<i64>() != top.iter().zip(bottom).map(|(a, b)| a - b).sum::<i64>() {
        return out;
    }
    if let (Some(s), WrapCondition::SameLevel) = (shift, wrap) {
        if m > 0 && top[m - 1] + s < top[0] {
            return out;
        }
    }
    let mut levels: Vec<Vec<i64>> = vec![top.to_vec()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        top: &[i64],
        bottom: &[i64],
        weight: &[u32],
        shift: Option<i64>,
        wrap: WrapCondition,
        moves: &dyn Fn(usize, usize) -> bool,
        levels: &mut Vec<Vec<i64>>,
        out: &mut Vec<GtPattern>,
    ) {
        let above = levels.last().unwrap().clone();
        let m = top.len();
        // Choose level i - 1 given level i.
        let target = weight[i - 1] as i64;
        let mut cur = Vec::with_capacity(m);
        #[allow(clippy::too_many_arguments)]
        fn fill(
            j: usize,
            i: usize,
            above: &[i64],
            bottom: &[i64],
            shift: Option<i64>,
            wrap: WrapCondition,
            moves: &dyn Fn(usize, usize) -> bool,
            left: i64,
            cur: &mut Vec<i64>,
            f: &mut dyn FnMut(&[i64]),
        ) {
            let m = above.len();
            if j == m {
                if left == 0 {
                    f(cur);
                }
                return;
            }
            let hi = above[j];
            let mut lo = bottom[j];
            if j + 1 < m {
                lo = lo.max(above[j + 1]);
            } else if let (Some(s), WrapCondition::Interlacing) = (shift, wrap) {
                lo = lo.max(above[0] - s);
            }
            if i == 1 {
                lo = lo.max(bottom[j]);
            }
            let range: Vec<i64> = if moves(i, j) { (lo..=hi).collect() } else if lo <= hi { vec![hi] } else { vec![] };
            for v in range {
                let used = hi - v;
                if used > left {
                    continue;
                }
                if i == 1 && v != bottom[j] {
                    continue;
                }
                if let (Some(s), WrapCondition::SameLevel, true) = (shift, wrap, j + 1 == m) {
                    if v + s < cur.first().copied().unwrap_or(v) {
                        continue;
                    }
                }
                cur.push(v);
                fill(j + 1, i, above, bottom, shift, wrap, moves, left - used, cur, f);
                cur.pop();
            }
        }
        let mut nexts = Vec::new();
        fill(0, i, &above, bottom, shift, wrap, moves, target, &mut cur, &mut |l| nexts.push(l.to_vec()));
        for next in nexts {
            levels.push(next);
            if i == 1 {
                let mut ls = levels.clone();
                ls.reverse();
                out.push(GtPattern {
                    levels: ls,
                    wrap_shift: shift,
                });
            } else {
                rec(i - 1, top, bottom, weight, shift, wrap, moves, levels, out);
            }
            levels.pop();
        }
    }
    if n == 0 {
        if top == bottom {
            out.push(GtPattern {
                levels: vec![top.to_vec()],
                wrap_shift: shift,
            });
        }
        return out;
    }
    rec(n, top, bottom, weight, shift, wrap, moves, &mut levels, &mut out);
    out.sort();
    out
}
