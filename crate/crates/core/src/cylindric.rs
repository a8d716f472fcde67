//! Cylindric diagrams on the lattice C_{x,y}, their tableaux and Schur
//! functions, plus the classical core/quotient of a partition.
//!
//! Coordinates follow the French convention. Cell `(r, c)` is the unit
//! square `[c-1, c] x [r-1, r]`, so rows grow upwards and columns to the
//! right. The cylinder identifies `(r, c)` with `(r - y, c + x)`. A diagram
//! is stored through its two boundary loops, recorded as the x-coordinate of
//! the down step crossing each row of the fundamental domain `1..=y`: row `r`
//! holds the cells `inner[r] < c <= outer[r]`. Both loops satisfy
//! `edge(r + y) = edge(r) - x`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinat::{parse_list, Partition};
use crate::error::{Error, Result};
use crate::polyring::{
    basis_element, int, monomial_sym_from_qsym_monomial, BasisExpansion, BasisKind,
    SparsePolynomial,
};
use crate::qsym_poset::OrientedPoset;

pub type Cell = (i64, i64);

/// A closed lattice path on the cylinder: `0` is a right step, `1` a down
/// step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryLoop {
    word: Vec<u8>,
    start: (i64, i64),
}

impl BoundaryLoop {
    pub fn new(word: Vec<u8>, start: (i64, i64)) -> Result<BoundaryLoop> {
        if let Some(&b) = word.iter().find(|&&b| b > 1) {
            return Err(Error::Invalid(format!("boundary word letter {b} is not 0 or 1")));
        }
        Ok(BoundaryLoop { word, start })
    }

    pub fn parse_word(s: &str) -> Result<Vec<u8>> {
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("boundary word letter `{other}`"))),
            })
            .collect()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn start(&self) -> (i64, i64) {
        self.start
    }

    pub fn zeros(&self) -> usize {
        self.word.iter().filter(|&&b| b == 0).count()
    }

    pub fn ones(&self) -> usize {
        self.word.len() - self.zeros()
    }

    pub fn word_string(&self) -> String {
        word_to_string(&self.word)
    }

    /// The down-step x-coordinate of each fundamental row `1..=y`.
    fn edges(&self, x: usize, y: usize) -> Result<Vec<i64>> {
        if self.zeros() != x || self.ones() != y {
            return Err(Error::Invalid(format!(
                "boundary word {} needs {x} zeros and {y} ones",
                self.word_string()
            )));
        }
        let mut out = vec![0i64; y];
        let (mut px, mut py) = self.start;
        for &b in &self.word {
            if b == 0 {
                px += 1;
            } else {
                let (r0, q) = reduce_row(py, y);
                out[(r0 - 1) as usize] = px + q * x as i64;
                py -= 1;
            }
        }
        Ok(out)
    }

    /// The loop through the edge function, read from its vertex on the line
    /// x = y.
    fn from_edges(edges: &[i64], x: usize) -> BoundaryLoop {
        let y = edges.len();
        let e = |r: i64| edge_at(edges, x, r);
        // Start well above the diagonal and walk down-right until X = Y.
        let mut r = 1i64;
        while e(r) - r > 0 {
            r += y as i64;
        }
        while e(r) - r <= 0 {
            r -= 1;
        }
        // Now e(r) > r and e(r+1) <= r+1: the diagonal vertex lies on the
        // horizontal run at height r from e(r+1) to e(r), or is (e(r+1), r+1)
        // at the top of band r+1.
        let mut pts: Vec<(i64, i64, u8)> = Vec::new();
        let mut px = e(r + 2);
        let mut py = r + 2;
        for band in (r - (x + y) as i64 - 2..=r + 2).rev() {
            let target = e(band);
            while px < target {
                pts.push((px, py, 0));
                px += 1;
            }
            pts.push((px, py, 1));
            py -= 1;
            let _ = band;
        }
        let i = pts
            .iter()
            .position(|&(a, b, _)| a == b)
            .expect("a down-right path meets the diagonal");
        let word: Vec<u8> = pts[i..i + x + y].iter().map(|p| p.2).collect();
        BoundaryLoop {
            word,
            start: (pts[i].0, pts[i].1),
        }
    }
}

fn word_to_string(w: &[u8]) -> String {
    w.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// Writes `r = r0 + q*y` with `r0` in `1..=y`.
fn reduce_row(r: i64, y: usize) -> (i64, i64) {
    let y = y as i64;
    let r0 = (r - 1).rem_euclid(y) + 1;
    (r0, (r - r0) / y)
}

fn edge_at(edges: &[i64], x: usize, r: i64) -> i64 {
    let (r0, q) = reduce_row(r, edges.len());
    edges[(r0 - 1) as usize] - q * x as i64
}

/// A cylindric diagram on C_{x,y}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CylindricDiagram {
    x: usize,
    y: usize,
    inner: Vec<i64>,
    outer: Vec<i64>,
}

/// The skew-shape description: `lambda[j]`, `mu[j]` for rows `j = 1..=rows`
/// counted upwards, the wrap shift (equal to x), and the column offset of
/// the coordinate frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewView {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub shift: usize,
    pub rows: usize,
    pub offset: i64,
}

impl CylindricDiagram {
    /// Builds the diagram bounded by two loops. The outer loop must lie
    /// weakly right of the inner one.
    pub fn from_loops(
        x: usize,
        y: usize,
        inner: &BoundaryLoop,
        outer: &BoundaryLoop,
    ) -> Result<CylindricDiagram> {
        if x == 0 || y == 0 {
            return Err(Error::Invalid("cylinder periods x and y must be positive".into()));
        }
        let inner = inner.edges(x, y)?;
        let outer = outer.edges(x, y)?;
        CylindricDiagram::from_edges(x, y, inner, outer)
    }

    /// Builds from per-row edges (rows `1..=y`).
    pub fn from_edges(x: usize, y: usize, inner: Vec<i64>, outer: Vec<i64>) -> Result<CylindricDiagram> {
        if x == 0 || y == 0 {
            return Err(Error::Invalid("cylinder periods x and y must be positive".into()));
        }
        if inner.len() != y || outer.len() != y {
            return Err(Error::Invalid(format!("expected {y} row edges")));
        }
        for (name, v) in [("inner", &inner), ("outer", &outer)] {
            for r in 1..=y as i64 {
                if edge_at(v, x, r) < edge_at(v, x, r + 1) {
                    return Err(Error::Invalid(format!(
                        "{name} boundary is not a down-right path at row {r}"
                    )));
                }
            }
        }
        if let Some(r) = (0..y).find(|&r| inner[r] > outer[r]) {
            return Err(Error::Invalid(format!(
                "outer boundary crosses inside the inner boundary in row {}",
                r + 1
            )));
        }
        Ok(CylindricDiagram { x, y, inner, outer })
    }

    /// Builds from a skew view (`lambda`, `mu` padded to `rows` entries).
    pub fn from_skew(lambda: &[i64], mu: &[i64], shift: usize, rows: usize, offset: i64) -> Result<CylindricDiagram> {
        if lambda.len() > rows || mu.len() > rows {
            return Err(Error::Invalid(format!("shape has more than {rows} rows")));
        }
        let pad = |v: &[i64]| {
            let mut v = v.to_vec();
            v.resize(rows, 0);
            v.into_iter().map(|a| a + offset).collect::<Vec<_>>()
        };
        CylindricDiagram::from_edges(shift, rows, pad(mu), pad(lambda))
    }

    pub fn empty(x: usize, y: usize) -> Result<CylindricDiagram> {
        CylindricDiagram::from_edges(x, y, vec![0; y], vec![0; y])
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn inner_edges(&self) -> &[i64] {
        &self.inner
    }

    pub fn outer_edges(&self) -> &[i64] {
        &self.outer
    }

    pub fn inner_edge(&self, r: i64) -> i64 {
        edge_at(&self.inner, self.x, r)
    }

    pub fn outer_edge(&self, r: i64) -> i64 {
        edge_at(&self.outer, self.x, r)
    }

    pub fn inner_loop(&self) -> BoundaryLoop {
        BoundaryLoop::from_edges(&self.inner, self.x)
    }

    pub fn outer_loop(&self) -> BoundaryLoop {
        BoundaryLoop::from_edges(&self.outer, self.x)
    }

    /// Number of cells in the fundamental domain.
    pub fn size(&self) -> usize {
        self.inner
            .iter()
            .zip(&self.outer)
            .map(|(a, b)| (b - a) as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Representative of a cell with row in `1..=y`.
    pub fn canon(&self, (r, c): Cell) -> Cell {
        let (r0, q) = reduce_row(r, self.y);
        (r0, c + q * self.x as i64)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        let (r, c) = self.canon(cell);
        let i = (r - 1) as usize;
        self.inner[i] < c && c <= self.outer[i]
    }

    /// Cells of the fundamental domain, by row then column.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for r in 1..=self.y {
            for c in self.inner[r - 1] + 1..=self.outer[r - 1] {
                out.push((r as i64, c));
            }
        }
        out
    }

    pub fn cell_index(&self) -> HashMap<Cell, usize> {
        self.cells().into_iter().enumerate().map(|(i, c)| (c, i)).collect()
    }

    pub fn skew_view(&self) -> SkewView {
        let offset = self.inner[self.y - 1];
        SkewView {
            lambda: self.outer.iter().map(|v| v - offset).collect(),
            mu: self.inner.iter().map(|v| v - offset).collect(),
            shift: self.x,
            rows: self.y,
            offset,
        }
    }

    /// The diagram with the same inner boundary and a new outer boundary.
    pub fn with_outer(&self, outer: Vec<i64>) -> Result<CylindricDiagram> {
        CylindricDiagram::from_edges(self.x, self.y, self.inner.clone(), outer)
    }

    /// The region between two nested boundaries.
    pub fn between(&self, inner: Vec<i64>, outer: Vec<i64>) -> Result<CylindricDiagram> {
        CylindricDiagram::from_edges(self.x, self.y, inner, outer)
    }

    /// Horizontal k-fold subdivision of every cell.
    pub fn stretched(&self, k: usize) -> Result<CylindricDiagram> {
        if k == 0 {
            return CylindricDiagram::empty(self.x, self.y);
        }
        let s = |v: &[i64]| v.iter().map(|a| a * k as i64).collect::<Vec<_>>();
        CylindricDiagram::from_edges(self.x * k, self.y, s(&self.inner), s(&self.outer))
    }

    /// Translation-invariant key: the least sorted cell list over all
    /// translations that move some cell to `(1, 0)`. Loop pairs bounding the
    /// same cells share a key.
    pub fn canonical_key(&self) -> (usize, usize, Vec<Cell>) {
        let cells = self.cells();
        let mut best: Vec<Cell> = Vec::new();
        for &(r0, c0) in &cells {
            let mut moved: Vec<Cell> = cells
                .iter()
                .map(|&(r, c)| self.canon((r - r0 + 1, c - c0)))
                .collect();
            moved.sort_unstable();
            if best.is_empty() || moved < best {
                best = moved;
            }
        }
        (self.x, self.y, best)
    }

    /// The poset of cells: `a < b` when b is the right neighbour of a or
    /// directly above it, across the wrap. Vertical adjacencies are the
    /// strict edges.
    pub fn poset(&self) -> Result<OrientedPoset> {
        let cells = self.cells();
        let index = self.cell_index();
        let mut covers = Vec::new();
        let mut strict = Vec::new();
        for (i, &(r, c)) in cells.iter().enumerate() {
            let right = (r, c + 1);
            let up = (r + 1, c);
            let up_idx = self.contains(up).then(|| index[&self.canon(up)]);
            if let Some(j) = up_idx {
                covers.push((i, j));
                strict.push((i, j));
            }
            if self.contains(right) {
                let j = index[&self.canon(right)];
                if Some(j) != up_idx {
                    covers.push((i, j));
                }
            }
        }
        let labels = cells.iter().map(|(r, c)| format!("{r},{c}")).collect();
        OrientedPoset::new(labels, covers, strict)
    }

    /// Canonical representatives of the cells of `self` as a set.
    pub fn cell_set(&self) -> BTreeSet<Cell> {
        self.cells().into_iter().collect()
    }

    /// Plain-text rendering: the fundamental rows from top to bottom, framed
    /// by a dotted copy of the glued neighbouring row above and below.
    pub fn render(&self, labels: Option<&HashMap<Cell, String>>) -> String {
        if self.is_empty() {
            return String::from("(empty)");
        }
        let width = labels
            .map(|l| l.values().map(|s| s.chars().count()).max().unwrap_or(1))
            .unwrap_or(1)
            .max(1);
        let y = self.y as i64;
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for r in 0..=y + 1 {
            let (a, b) = (self.inner_edge(r), self.outer_edge(r));
            if a < b {
                lo = lo.min(a + 1);
                hi = hi.max(b);
            }
        }
        let mut lines = Vec::new();
        for r in (0..=y + 1).rev() {
            let glued = r == 0 || r == y + 1;
            let mut line = String::new();
            for c in lo..=hi {
                let cell = (r, c);
                let text = if !self.contains(cell) {
                    " ".repeat(width)
                } else if glued {
                    format!("{:>width$}", ".")
                } else {
                    match labels.and_then(|l| l.get(&self.canon(cell))) {
                        Some(s) => format!("{s:>width$}"),
                        None => format!("{:>width$}", "#"),
                    }
                };
                if c > lo {
                    line.push(' ');
                }
                line.push_str(&text);
            }
            let line = line.trim_end().to_string();
            if !(glued && line.is_empty()) {
                lines.push(line);
            }
        }
        lines.join("\n")
    }

    /// `cyl x=.. y=.. inner=WORD@a,b outer=WORD@c,d`.
    pub fn to_spec_string(&self) -> String {
        let i = self.inner_loop();
        let o = self.outer_loop();
        format!(
            "cyl x={} y={} inner={}@{},{} outer={}@{},{}",
            self.x,
            self.y,
            i.word_string(),
            i.start.0,
            i.start.1,
            o.word_string(),
            o.start.0,
            o.start.1
        )
    }

    /// Every diagram (up to translation) with `1 <= size <= max_boxes` on a
    /// cylinder with `x + y <= max_period`. Includes diagrams of size 0 only
    /// if `with_empty`.
    pub fn all_up_to(max_boxes: usize, max_period: usize, with_empty: bool) -> Vec<CylindricDiagram> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for x in 1..max_period {
            for y in 1..=max_period - x {
                for inner in periodic_edges(x, y, 0, x as i64) {
                    extend_outer(x, y, &inner, max_boxes, &mut |outer| {
                        let d = CylindricDiagram::from_edges(x, y, inner.clone(), outer.to_vec())
                            .expect("generated diagram is valid");
                        if d.is_empty() && !with_empty {
                            return;
                        }
                        if seen.insert(d.canonical_key()) {
                            out.push(d);
                        }
                    });
                }
            }
        }
        out
    }
}

/// Non-increasing edge lists `e[0] >= ... >= e[y-1] = last` with
/// `e[0] - x <= e[y-1]` and `e[0] <= last + span`.
fn periodic_edges(x: usize, y: usize, last: i64, span: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn rec(x: usize, y: usize, last: i64, span: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == y - 1 {
            cur.push(last);
            if cur[0] - x as i64 <= last {
                out.push(cur.clone());
            }
            cur.pop();
            return;
        }
        let hi = cur.last().copied().unwrap_or(last + span.min(x as i64));
        for v in (last..=hi).rev() {
            cur.push(v);
            rec(x, y, last, span, cur, out);
            cur.pop();
        }
    }
    rec(x, y, last, span, &mut Vec::new(), &mut out);
    out
}

fn extend_outer(x: usize, y: usize, inner: &[i64], budget: usize, emit: &mut dyn FnMut(&[i64])) {
    fn rec(
        x: usize,
        inner: &[i64],
        budget: i64,
        cur: &mut Vec<i64>,
        emit: &mut dyn FnMut(&[i64]),
    ) {
        let y = inner.len();
        let r = cur.len();
        if r == y {
            if cur[0] - x as i64 <= cur[y - 1] {
                emit(cur);
            }
            return;
        }
        let lo = inner[r];
        let hi = match cur.last() {
            Some(&prev) => prev.min(lo + budget),
            None => lo + budget,
        };
        for v in lo..=hi {
            cur.push(v);
            rec(x, inner, budget - (v - lo), cur, emit);
            cur.pop();
        }
    }
    let _ = y;
    rec(x, inner, budget as i64, &mut Vec::new(), emit);
}

impl fmt::Display for CylindricDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_spec_string())
    }
}

impl FromStr for CylindricDiagram {
    type Err = Error;

    /// Accepts `cyl x=6 y=5 inner=00101101100@0,0 outer=10001001110@4,4`
    /// or `skew lambda=4,4,3 mu=1 shift=2 rows=3 [offset=0]`.
    fn from_str(s: &str) -> Result<CylindricDiagram> {
        let mut tokens = s.split_whitespace();
        let kind = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty diagram string".into()))?;
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for t in tokens {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("`{t}` is not key=value")))?;
            if kv.insert(k, v).is_some() {
                return Err(Error::Parse(format!("key `{k}` given twice")));
            }
        }
        fn take<'a>(kv: &mut BTreeMap<&str, &'a str>, k: &str) -> Result<&'a str> {
            kv.remove(k)
                .ok_or_else(|| Error::Parse(format!("missing `{k}=`")))
        }
        let num = |v: &str, k: &str| -> Result<i64> {
            v.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{k}={v}` is not an integer")))
        };
        let d = match kind {
            "cyl" => {
                let x = num(take(&mut kv, "x")?, "x")?;
                let y = num(take(&mut kv, "y")?, "y")?;
                if x <= 0 || y <= 0 {
                    return Err(Error::Invalid("x and y must be positive".into()));
                }
                let mut lp = |k: &str| -> Result<BoundaryLoop> {
                    let v = take(&mut kv, k)?;
                    let (w, at) = v
                        .split_once('@')
                        .ok_or_else(|| Error::Parse(format!("`{k}` needs WORD@a,b")))?;
                    let (a, b) = at
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("`{k}` start must be a,b")))?;
                    BoundaryLoop::new(BoundaryLoop::parse_word(w)?, (num(a, k)?, num(b, k)?))
                };
                let inner = lp("inner")?;
                let outer = lp("outer")?;
                CylindricDiagram::from_loops(x as usize, y as usize, &inner, &outer)?
            }
            "skew" => {
                let lambda: Vec<i64> = parse_list(take(&mut kv, "lambda")?)?
                    .into_iter()
                    .map(i64::from)
                    .collect();
                let mu: Vec<i64> = match kv.remove("mu") {
                    Some(v) => parse_list(v)?.into_iter().map(i64::from).collect(),
                    None => Vec::new(),
                };
                let shift = num(take(&mut kv, "shift")?, "shift")?;
                if shift <= 0 {
                    return Err(Error::Invalid("shift must be positive".into()));
                }
                let rows = match kv.remove("rows") {
                    Some(v) => num(v, "rows")?,
                    None => lambda.len().max(1) as i64,
                };
                if rows <= 0 {
                    return Err(Error::Invalid("rows must be positive".into()));
                }
                let offset = match kv.remove("offset") {
                    Some(v) => num(v, "offset")?,
                    None => 0,
                };
                CylindricDiagram::from_skew(&lambda, &mu, shift as usize, rows as usize, offset)?
            }
            other => return Err(Error::Parse(format!("unknown diagram kind `{other}`"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(Error::Parse(format!("unexpected key `{k}`")));
        }
        Ok(d)
    }
}

/// A cylindric semistandard tableau: values aligned with
/// [`CylindricDiagram::cells`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cssyt {
    pub values: Vec<u32>,
}

impl Cssyt {
    pub fn weight(&self, n: usize) -> Vec<u32> {
        let mut w = vec![0; n];
        for &v in &self.values {
            w[v as usize - 1] += 1;
        }
        w
    }

    /// Labels for [`CylindricDiagram::render`].
    pub fn labels(&self, d: &CylindricDiagram) -> HashMap<Cell, String> {
        d.cells()
            .into_iter()
            .zip(&self.values)
            .map(|(c, v)| (c, v.to_string()))
            .collect()
    }
}

/// Checks rows weakly increase and columns strictly increase, across the
/// wrap.
pub fn is_cssyt(d: &CylindricDiagram, t: &Cssyt) -> bool {
    let index = d.cell_index();
    if t.values.len() != index.len() || t.values.contains(&0) {
        return false;
    }
    let val = |c: Cell| t.values[index[&d.canon(c)]];
    d.cells().into_iter().all(|(r, c)| {
        let v = val((r, c));
        (!d.contains((r, c + 1)) || v <= val((r, c + 1)))
            && (!d.contains((r + 1, c)) || v < val((r + 1, c)))
    })
}

/// Row-end vectors reachable by adding one horizontal strip to `cur`
/// inside `outer`.
fn strip_ranges(d: &CylindricDiagram, cur: &[i64]) -> Vec<(i64, i64)> {
    let y = d.y;
    (0..y)
        .map(|i| {
            let below = if i == 0 { cur[y - 1] + d.x as i64 } else { cur[i - 1] };
            (cur[i], d.outer[i].min(below))
        })
        .collect()
}

fn for_each_strip(ranges: &[(i64, i64)], size: Option<i64>, emit: &mut dyn FnMut(&[i64], i64)) {
    fn rec(
        ranges: &[(i64, i64)],
        size: Option<i64>,
        acc: i64,
        cur: &mut Vec<i64>,
        emit: &mut dyn FnMut(&[i64], i64),
    ) {
        let i = cur.len();
        if i == ranges.len() {
            if size.is_none_or(|s| s == acc) {
                emit(cur, acc);
            }
            return;
        }
        let (lo, hi) = ranges[i];
        for v in lo..=hi {
            let add = v - lo;
            if size.is_some_and(|s| acc + add > s) {
                break;
            }
            cur.push(v);
            rec(ranges, size, acc + add, cur, emit);
            cur.pop();
        }
    }
    rec(ranges, size, 0, &mut Vec::new(), emit);
}

/// All CSSYT with entries at most `max_entry`, optionally of a fixed
/// weight. Built value by value, each value filling a horizontal strip.
pub fn enumerate_cssyt(d: &CylindricDiagram, max_entry: usize, weight: Option<&[u32]>) -> Result<Vec<Cssyt>> {
    if max_entry == 0 {
        return Err(Error::Invalid("max entry must be at least 1".into()));
    }
    if let Some(w) = weight {
        if w.len() > max_entry {
            return Err(Error::Invalid("weight has more entries than max entry".into()));
        }
        if w.iter().map(|&v| v as usize).sum::<usize>() != d.size() {
            return Ok(Vec::new());
        }
    }
    let index = d.cell_index();
    let mut out = Vec::new();
    let mut values = vec![0u32; d.size()];
    fn rec(
        d: &CylindricDiagram,
        index: &HashMap<Cell, usize>,
        v: usize,
        max_entry: usize,
        weight: Option<&[u32]>,
        cur: Vec<i64>,
        values: &mut Vec<u32>,
        out: &mut Vec<Cssyt>,
    ) {
        if cur == d.outer {
            out.push(Cssyt {
                values: values.clone(),
            });
            return;
        }
        if v > max_entry {
            return;
        }
        let size = weight.map(|w| w.get(v - 1).copied().unwrap_or(0) as i64);
        let ranges = strip_ranges(d, &cur);
        let mut nexts = Vec::new();
        for_each_strip(&ranges, size, &mut |next, _| nexts.push(next.to_vec()));
        for next in nexts {
            for (i, (&a, &b)) in cur.iter().zip(&next).enumerate() {
                for c in a + 1..=b {
                    values[index[&(i as i64 + 1, c)]] = v as u32;
                }
            }
            rec(d, index, v + 1, max_entry, weight, next.clone(), values, out);
        }
    }
    rec(d, &index, 1, max_entry, weight, d.inner.clone(), &mut values, &mut out);
    Ok(out)
}

/// Number of CSSYT of the given weight.
pub fn count_cssyt(d: &CylindricDiagram, weight: &[u32]) -> u128 {
    if weight.iter().map(|&v| v as usize).sum::<usize>() != d.size() {
        return 0;
    }
    let mut memo: HashMap<(usize, Vec<i64>), u128> = HashMap::new();
    fn rec(
        d: &CylindricDiagram,
        weight: &[u32],
        v: usize,
        cur: Vec<i64>,
        memo: &mut HashMap<(usize, Vec<i64>), u128>,
    ) -> u128 {
        if v == weight.len() {
            return (cur == d.outer) as u128;
        }
        let key = (v, cur);
        if let Some(&c) = memo.get(&key) {
            return c;
        }
        let ranges = strip_ranges(d, &key.1);
        let mut nexts = Vec::new();
        for_each_strip(&ranges, Some(weight[v] as i64), &mut |n, _| nexts.push(n.to_vec()));
        let total = nexts.into_iter().map(|n| rec(d, weight, v + 1, n, memo)).sum();
        memo.insert(key, total);
        total
    }
    rec(d, weight, 0, d.inner.clone(), &mut memo)
}

/// The Schur function in the monomial quasisymmetric basis: one term per
/// chain of non-empty horizontal strips.
pub fn schur_qsym(d: &CylindricDiagram) -> BasisExpansion {
    let mut memo: HashMap<Vec<i64>, BTreeMap<Vec<u32>, u128>> = HashMap::new();
    fn rec(
        d: &CylindricDiagram,
        cur: Vec<i64>,
        memo: &mut HashMap<Vec<i64>, BTreeMap<Vec<u32>, u128>>,
    ) -> BTreeMap<Vec<u32>, u128> {
        if cur == d.outer {
            return BTreeMap::from([(Vec::new(), 1)]);
        }
        if let Some(m) = memo.get(&cur) {
            return m.clone();
        }
        let ranges = strip_ranges(d, &cur);
        let mut nexts = Vec::new();
        for_each_strip(&ranges, None, &mut |n, size| {
            if size > 0 {
                nexts.push((n.to_vec(), size as u32));
            }
        });
        let mut out: BTreeMap<Vec<u32>, u128> = BTreeMap::new();
        for (n, size) in nexts {
            for (tail, c) in rec(d, n, memo) {
                let mut alpha = vec![size];
                alpha.extend(tail);
                *out.entry(alpha).or_default() += c;
            }
        }
        memo.insert(cur, out.clone());
        out
    }
    let mut out = BasisExpansion::new(BasisKind::QsymMonomial);
    for (alpha, c) in rec(d, d.inner.clone(), &mut memo) {
        out.add(alpha, crate::polyring::rat_u128(c));
    }
    out
}

/// The Schur function in the monomial symmetric basis.
pub fn schur_symmetric(d: &CylindricDiagram) -> Result<BasisExpansion> {
    monomial_sym_from_qsym_monomial(&schur_qsym(d))
}

/// s_D in `nvars` variables.
pub fn schur_monomial(d: &CylindricDiagram, nvars: usize) -> Result<SparsePolynomial> {
    if nvars == 0 {
        return Err(Error::Invalid("need at least one variable".into()));
    }
    let mut out = SparsePolynomial::zero(nvars);
    for (alpha, c) in schur_qsym(d).iter() {
        if alpha.len() <= nvars {
            let m = basis_element(BasisKind::QsymMonomial, alpha, nvars)?;
            for (e, _) in m.terms() {
                out.add_term(e.clone(), c.clone());
            }
        }
    }
    Ok(out)
}

/// s_D in `nvars` variables by direct tableau enumeration; the slow oracle
/// for [`schur_monomial`].
pub fn schur_by_enumeration(d: &CylindricDiagram, nvars: usize) -> Result<SparsePolynomial> {
    let mut out = SparsePolynomial::zero(nvars);
    for t in enumerate_cssyt(d, nvars, None)? {
        out.add_term(t.weight(nvars), int(1));
    }
    Ok(out)
}

/// Letters of the boundary word of a partition, indexed so that index 0 is
/// the first step after the vertex on the diagonal. Covers indices in
/// `-pad..pad`.
fn partition_word(lambda: &Partition, pad: i64) -> BTreeMap<i64, u8> {
    // Walk from (0, l) downwards: rows are listed top (shortest) first.
    let l = lambda.len() as i64;
    let mut steps: Vec<(i64, i64, u8)> = Vec::new();
    let (mut px, mut py) = (0i64, l + pad);
    while py > l {
        steps.push((px, py, 1));
        py -= 1;
    }
    for &part in lambda.parts().iter().rev() {
        while px < part as i64 {
            steps.push((px, py, 0));
            px += 1;
        }
        steps.push((px, py, 1));
        py -= 1;
    }
    let end = px + pad + l;
    while px < end {
        steps.push((px, py, 0));
        px += 1;
    }
    let origin = steps.iter().position(|&(a, b, _)| a == b).unwrap() as i64;
    steps
        .iter()
        .enumerate()
        .map(|(i, s)| (i as i64 - origin, s.2))
        .filter(|(i, _)| (-pad..pad).contains(i))
        .collect()
}

fn partition_from_letters(letters: impl Iterator<Item = u8>) -> Partition {
    let mut zeros = 0;
    let mut parts = Vec::new();
    for b in letters {
        if b == 0 {
            zeros += 1;
        } else if zeros > 0 {
            parts.push(zeros);
        }
    }
    Partition::from_unsorted(&parts)
}

/// The k-core (by repeated ribbon removal on the boundary word) and the
/// k-quotient (residue classes of the word mod k, index 0 being the step
/// after the diagonal).
pub fn classical_core_quotient(lambda: &Partition, k: usize) -> Result<(Partition, Vec<Partition>)> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let k = k as i64;
    // Enough padding, rounded to a multiple of k, so that every class starts
    // with ones and ends with zeros.
    let raw = lambda.weight() as i64 + lambda.len() as i64 + k + 2;
    let pad = (raw + k - 1) / k * k;
    let word = partition_word(lambda, pad);
    let quotient = (0..k)
        .map(|i| {
            partition_from_letters(
                word.iter()
                    .filter(|(idx, _)| idx.rem_euclid(k) == i)
                    .map(|(_, &b)| b),
            )
        })
        .collect();
    let mut w: Vec<u8> = word.values().copied().collect();
    loop {
        let mut moved = false;
        for t in 0..w.len().saturating_sub(k as usize) {
            if w[t] == 0 && w[t + k as usize] == 1 {
                w.swap(t, t + k as usize);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Ok((partition_from_letters(w.into_iter()), quotient))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn seven_box() -> CylindricDiagram {
        "skew lambda=4,3,2 mu=1,1,0 shift=3 rows=3".parse().unwrap()
    }

    fn fig1() -> CylindricDiagram {
        "cyl x=6 y=5 inner=00101101100@0,0 outer=10001001110@4,4".parse().unwrap()
    }

    #[test]
    fn fig1_has_46_boxes() {
        let d = fig1();
        assert_eq!(d.size(), 46);
        assert_eq!(d.inner_edges(), &[-2, -2, -3, -3, -4]);
        assert_eq!(d.outer_edges(), &[9, 9, 7, 4, 3]);
    }

    #[test]
    fn loops_round_trip() {
        let d = fig1();
        let again = CylindricDiagram::from_loops(6, 5, &d.inner_loop(), &d.outer_loop()).unwrap();
        assert_eq!(again, d);
        assert_eq!(d.inner_loop().start(), (0, 0));
        assert_eq!(d.inner_loop().word_string(), "00101101100");
        assert_eq!(d.outer_loop().start(), (4, 4));
        assert_eq!(d.outer_loop().word_string(), "10001001110");
        let text = d.to_spec_string();
        assert_eq!(text.parse::<CylindricDiagram>().unwrap(), d);
    }

    #[test]
    fn equal_loops_give_empty_diagram() {
        let d: CylindricDiagram = "cyl x=2 y=2 inner=0101@0,0 outer=0101@0,0".parse().unwrap();
        assert!(d.is_empty());
        assert_eq!(schur_monomial(&d, 3).unwrap(), SparsePolynomial::one(3));
        assert_eq!(enumerate_cssyt(&d, 3, None).unwrap().len(), 1);
    }

    #[test]
    fn start_points_distinguish_diagrams() {
        // Words 101010 / 010101 on C_{3,3}; widths 2, 3, 4 per row.
        let mut sizes = Vec::new();
        for w in 2..=4i64 {
            let d = CylindricDiagram::from_edges(3, 3, vec![2, 1, 0], vec![2 + w, 1 + w, w]).unwrap();
            let i = d.inner_loop();
            let o = d.outer_loop();
            for lp in [&i, &o] {
                let s = lp.word_string();
                assert!(s == "101010" || s == "010101", "{s}");
            }
            sizes.push(d.size());
        }
        assert_eq!(sizes, vec![6, 9, 12]);
    }

    #[test]
    fn crossing_boundaries_rejected() {
        let bad = "cyl x=2 y=2 inner=0011@0,0 outer=1100@0,0".parse::<CylindricDiagram>();
        assert!(bad.is_err());
        assert!("cyl x=2 y=2 inner=001@0,0 outer=0011@0,0".parse::<CylindricDiagram>().is_err());
        assert!("cyl x=2 y=2 inner=0021@0,0 outer=0011@0,0".parse::<CylindricDiagram>().is_err());
        assert!("skew lambda=3,1 mu=0 shift=1 rows=2".parse::<CylindricDiagram>().is_err());
        assert!("blob x=1".parse::<CylindricDiagram>().is_err());
    }

    #[test]
    fn periodicity_of_membership() {
        let d = fig1();
        for r in -6..12 {
            for c in -12..16 {
                assert_eq!(d.contains((r, c)), d.contains((r + 5, c - 6)));
            }
        }
    }

    #[test]
    fn skew_view_round_trip() {
        for d in [fig1(), seven_box()] {
            let v = d.skew_view();
            let back = CylindricDiagram::from_skew(&v.lambda, &v.mu, v.shift, v.rows, v.offset).unwrap();
            assert_eq!(back.cell_set(), d.cell_set());
        }
        let v = seven_box().skew_view();
        assert_eq!(v.lambda, vec![4, 3, 2]);
        assert_eq!(v.mu, vec![1, 1, 0]);
    }

    #[test]
    fn thirteen_cell_poset_wraps() {
        let d: CylindricDiagram = "skew lambda=6,6,4,4 mu=3,2,2,0 shift=5 rows=4".parse().unwrap();
        assert_eq!(d.size(), 13);
        let p = d.poset().unwrap();
        assert_eq!(p.len(), 13);
        assert_eq!(p.strict_edges().len(), 8);
        let idx = |r: i64, c: i64| p.index_of(&format!("{r},{c}")).unwrap();
        // Cell 2 is (1,5), cell 12 is (1,6); cell 5 is (2,5), cell 13 is (2,6).
        assert!(p.lt(idx(1, 5), idx(1, 6)));
        assert!(p.lt(idx(2, 5), idx(2, 6)));
        // Cell 8 = (4,1) sits below the glued copy of cell 12.
        assert!(p.strict_edges().contains(&(idx(4, 1), idx(1, 6))));
    }

    #[test]
    fn single_row_is_a_chain() {
        let d: CylindricDiagram = "skew lambda=4 shift=9 rows=1".parse().unwrap();
        let p = d.poset().unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.strict_edges().is_empty());
        assert_eq!(p.linear_extension(), vec![0, 1, 2, 3]);
        for i in 0..3 {
            assert!(p.lt(i, i + 1));
        }
    }

    #[test]
    fn seven_box_tableaux() {
        let d = seven_box();
        let ts = enumerate_cssyt(&d, 3, Some(&[3, 2, 2])).unwrap();
        assert_eq!(ts.len(), 2);
        for t in &ts {
            assert!(is_cssyt(&d, t));
        }
        assert_eq!(count_cssyt(&d, &[3, 2, 2]), 2);
        let m = schur_symmetric(&d).unwrap();
        let expect: &[(&[u32], i64)] = &[
            (&[3, 2, 2], 2),
            (&[3, 3, 1], 1),
            (&[2, 2, 2, 1], 8),
            (&[3, 2, 1, 1], 4),
            (&[2, 2, 1, 1, 1], 16),
            (&[3, 1, 1, 1, 1], 8),
            (&[2, 1, 1, 1, 1, 1], 32),
            (&[1, 1, 1, 1, 1, 1, 1], 64),
        ];
        assert_eq!(m.len(), expect.len());
        for (idx, c) in expect {
            assert_eq!(m.get(idx), int(*c), "m[{idx:?}]");
        }
    }

    #[test]
    fn the_two_printed_tableaux_are_valid() {
        let d = seven_box();
        let idx = d.cell_index();
        let build = |pairs: &[((i64, i64), u32)]| {
            let mut values = vec![0; 7];
            for &(c, v) in pairs {
                values[idx[&c]] = v;
            }
            Cssyt { values }
        };
        let t1 = build(&[
            ((1, 2), 1),
            ((1, 3), 2),
            ((1, 4), 3),
            ((2, 2), 3),
            ((2, 3), 3),
            ((3, 1), 1),
            ((3, 2), 4),
        ]);
        let t2 = build(&[
            ((1, 2), 1),
            ((1, 3), 1),
            ((1, 4), 3),
            ((2, 2), 2),
            ((2, 3), 2),
            ((3, 1), 1),
            ((3, 2), 3),
        ]);
        assert!(is_cssyt(&d, &t1));
        assert!(is_cssyt(&d, &t2));
        assert_eq!(t1.weight(4), vec![2, 1, 3, 1]);
        assert_eq!(t2.weight(4), vec![3, 2, 2, 0]);
        let mut broken = t2.clone();
        broken.values[idx[&(1, 4)]] = 1;
        assert!(!is_cssyt(&d, &broken));
    }

    #[test]
    fn gt_example_has_three_tableaux() {
        let d: CylindricDiagram = "skew lambda=4,3,3 mu=2,1,0 shift=2 rows=3".parse().unwrap();
        assert_eq!(d.size(), 7);
        assert_eq!(enumerate_cssyt(&d, 5, Some(&[2, 2, 1, 1, 1])).unwrap().len(), 3);
    }

    #[test]
    fn dp_matches_enumeration() {
        for d in CylindricDiagram::all_up_to(5, 5, true) {
            let n = d.size().max(1);
            assert_eq!(schur_monomial(&d, n).unwrap(), schur_by_enumeration(&d, n).unwrap(), "{d}");
        }
    }

    #[test]
    fn corpus_is_translation_free() {
        let all = CylindricDiagram::all_up_to(3, 4, false);
        let keys: BTreeSet<_> = all.iter().map(|d| d.canonical_key()).collect();
        assert_eq!(keys.len(), all.len());
        assert!(all.iter().all(|d| (1..=3).contains(&d.size())));
        // A single cell exists on every cylinder with x + y <= 4.
        assert_eq!(all.iter().filter(|d| d.size() == 1).count(), 6);
    }

    #[test]
    fn stretching_scales_rows() {
        let d = seven_box();
        let k = d.stretched(2).unwrap();
        assert_eq!(k.size(), 14);
        assert_eq!(k.x(), 6);
    }

    #[test]
    fn render_marks_glued_rows() {
        let text = seven_box().render(None);
        assert_eq!(text.lines().count(), 5);
        assert!(text.contains('.'));
    }

    #[test]
    fn core_and_quotient_of_4431() {
        let (core, quot) = classical_core_quotient(&"4,4,3,1".parse().unwrap(), 4).unwrap();
        assert!(core.is_empty());
        let one: Partition = "1".parse().unwrap();
        assert_eq!(quot, vec![one.clone(), Partition::empty(), one.clone(), one]);
    }

    #[test]
    fn empty_partition_core_quotient() {
        for k in 1..5 {
            let (core, quot) = classical_core_quotient(&Partition::empty(), k).unwrap();
            assert!(core.is_empty());
            assert_eq!(quot.len(), k);
            assert!(quot.iter().all(|q| q.is_empty()));
        }
    }

    #[test]
    fn core_quotient_sizes_add_up() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(0..=12u32);
            let parts = Partition::all(n);
            let lam = &parts[rng.gen_range(0..parts.len())];
            let k = rng.gen_range(1..=5usize);
            let (core, quot) = classical_core_quotient(lam, k).unwrap();
            let q: u32 = quot.iter().map(|p| p.weight()).sum();
            assert_eq!(core.weight() + k as u32 * q, lam.weight(), "{lam} k={k}");
            // The core has no removable k-ribbon: its own k-core is itself.
            assert_eq!(classical_core_quotient(&core, k).unwrap().0, core);
        }
    }
}
