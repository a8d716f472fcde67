//! Named worked examples with their expected values, runnable as a golden
//! suite. The diagrams and posets of the examples are public so the CLI
//! and the tests build exactly the same objects.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::{special_vectors, Composition, Partition};
use crate::config::Limits;
use crate::cylindric::{
    classical_core_quotient, count_cssyt, enumerate_cssyt, schur_monomial, CylindricDiagram,
};
use crate::error::{Error, Result};
use crate::flagged::{contingency_count, contingency_tables, ContingencySpec, FlagPair};
use crate::gt::{enumerate_cylindric_gt, GtPattern, WrapCondition};
use crate::polyring::{
    basis_element, expand_in_monomial_sym, expand_in_powersum, expand_in_psi, int, rat, BasisKind,
    Rational,
};
use crate::qsym_poset::{
    chain_congruence_closure, enumerate_surjections, k_generating, m_e, psi_as, signed_me_sum, EdgeSet,
    KMode, OrientedPoset,
};
use crate::ribbon::{classify_stacked, enumerate_ribbon_tableaux, mn_expansion, verify_stacked_formula, StackedTag};
use crate::saturation::{cylindric_as_flagged, fit_sequence, stretch_values_cylindric, FitKind};
use crate::tiling::{
    enumerate_tilings, epsilon_k, is_good_pair, k_partition, parity_report, removable_ribbons, PairingFloor,
};

/// Diagrams and posets of the worked examples.
pub mod examples {
    use super::*;

    fn parse(s: &str) -> CylindricDiagram {
        s.parse().expect("example diagram specs are valid")
    }

    /// Rows {2,3,4}, {2,3}, {1,2} on C_{3,3}.
    pub fn seven_box() -> CylindricDiagram {
        parse("skew lambda=4,3,2 mu=1,1,0 shift=3 rows=3")
    }

    /// The large diagram drawn with its two boundary loops on C_{6,5}.
    pub fn boundary_loops() -> CylindricDiagram {
        parse("cyl x=6 y=5 inner=00101101100@0,0 outer=10001001110@4,4")
    }

    /// The 13-cell diagram whose poset has wrap relations.
    pub fn thirteen_cell() -> CylindricDiagram {
        parse("skew lambda=6,6,4,4 mu=3,2,2,0 shift=5 rows=4")
    }

    /// Rows {3,4,5}, {2,3} on C_{2,2}.
    pub fn mnrule() -> CylindricDiagram {
        parse("skew lambda=5,3 mu=2,1 shift=2 rows=2")
    }

    /// Rows {3,4}, {2,3}, {1,2,3} on C_{2,3}.
    pub fn cylindric_gt() -> CylindricDiagram {
        parse("skew lambda=4,3,3 mu=2,1,0 shift=2 rows=3")
    }

    pub fn cylindric_gt_weight() -> Vec<u32> {
        vec![2, 2, 1, 1, 1]
    }

    /// The five stacked ribbon shapes. The fourth is the five-row reading
    /// whose loop has height 5.
    pub fn stacked() -> Vec<CylindricDiagram> {
        [
            "skew lambda=4,3,2 mu=3,1,0 shift=3 rows=3",
            "skew lambda=5,3 mu=2,0 shift=4 rows=2",
            "skew lambda=12 mu=2 shift=4 rows=1",
            "skew lambda=8,6,6,5,5 mu=4,3,3,2,0 shift=7 rows=5",
            "skew lambda=7,7 mu=0,0 shift=4 rows=2",
        ]
        .iter()
        .map(|s| parse(s))
        .collect()
    }

    /// The fourth stacked shape with every row of the drawing.
    pub fn stacked_fourth_as_drawn() -> CylindricDiagram {
        parse("skew lambda=8,6,6,5,5,1 mu=4,3,3,2,0,0 shift=7 rows=6")
    }

    /// Two cells with no common edge.
    pub fn disconnected_pair() -> CylindricDiagram {
        CylindricDiagram::from_edges(6, 2, vec![2, 0], vec![3, 1]).expect("valid edges")
    }

    /// Two 2-ribbon tilings with total heights 1 and 2.
    pub fn two_ribbon() -> CylindricDiagram {
        parse("skew lambda=4,1,1 mu=0,0,0 shift=3 rows=3")
    }

    /// Rows {k-1..3k-2}, {k-1}, {1..k-1} on C_{3k-3,3}.
    pub fn mixed_parity(k: i64) -> CylindricDiagram {
        let lambda = [3 * k - 2, k - 1, k - 1];
        let mu = [k - 2, k - 2, 0];
        CylindricDiagram::from_skew(&lambda, &mu, (3 * k - 3) as usize, 3, 0).expect("valid shape")
    }

    pub fn three_fills() -> CylindricDiagram {
        parse("skew lambda=5,4,3 mu=3,2,1 shift=3 rows=3")
    }

    pub fn core_sizes() -> CylindricDiagram {
        parse("skew lambda=6,5,4 mu=3,2,1 shift=3 rows=3")
    }

    /// Rows {3,4,5}, {3,4,5}, {1,2,3} on C_{4,3}, cut at column 1.
    pub fn first_column_cut() -> CylindricDiagram {
        CylindricDiagram::from_edges(4, 3, vec![2, 2, 0], vec![5, 5, 3]).expect("valid edges")
    }

    fn labelled(labels: &[&str], rels: &[(&str, &str)], strict: &[(&str, &str)]) -> (OrientedPoset, EdgeSet) {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| labels.iter().position(|l| l == s).expect("known label");
        let covers = rels.iter().map(|(a, b)| (idx(a), idx(b))).collect();
        let e = strict.iter().map(|(a, b)| (idx(a), idx(b))).collect();
        let p = OrientedPoset::new(labels.clone(), covers, Vec::new()).expect("acyclic");
        (p, e)
    }

    /// Nine-element poset with E = {17, 23, 46, 69}.
    pub fn quotient_poset() -> (OrientedPoset, EdgeSet) {
        labelled(
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
            &[("1", "7"), ("2", "3"), ("4", "6"), ("6", "9")],
        )
    }

    /// Ten-element poset with E = {13, 23, 47, 89}.
    pub fn quotient_poset3() -> (OrientedPoset, EdgeSet) {
        labelled(
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
            &[("1", "3"), ("2", "3"), ("4", "7"), ("8", "9")],
        )
    }
}

/// Outcome of one scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

type Check = Result<(bool, String)>;

pub struct Scenario {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn() -> Check,
}

impl Scenario {
    pub fn run(&self) -> ScenarioReport {
        let (passed, detail) = match (self.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        ScenarioReport {
            name: self.name.to_string(),
            passed,
            detail,
        }
    }
}

fn show<T: fmt::Debug>(v: T) -> String {
    format!("{v:?}")
}

fn delta_n3() -> Check {
    let (delta, rho) = special_vectors(3)?;
    let ok = delta.raw() == [2, 1, 0] && rho.to_plain() == Some(vec![1, 0, -1]);
    Ok((ok, format!("delta = {:?}, rho = {:?}", delta.raw(), rho.to_plain())))
}

fn seven_box_monomial() -> Check {
    let d = examples::seven_box();
    let m = expand_in_monomial_sym(&schur_monomial(&d, 7)?)?;
    let want: &[(&[u32], i64)] = &[
        (&[3, 2, 2], 2),
        (&[3, 3, 1], 1),
        (&[2, 2, 2, 1], 8),
        (&[3, 2, 1, 1], 4),
        (&[2, 2, 1, 1, 1], 16),
        (&[3, 1, 1, 1, 1], 8),
        (&[2, 1, 1, 1, 1, 1], 32),
        (&[1, 1, 1, 1, 1, 1, 1], 64),
    ];
    let ok = m.len() == want.len() && want.iter().all(|(i, c)| m.get(i) == int(*c));
    Ok((ok, m.to_string()))
}

fn seven_box_322() -> Check {
    let n = enumerate_cssyt(&examples::seven_box(), 3, Some(&[3, 2, 2]))?.len();
    Ok((n == 2, format!("{n} tableaux of weight 322")))
}

fn seven_box_poset() -> Check {
    let d = examples::seven_box();
    let p = d.poset()?;
    let k = k_generating(&p, p.strict_edges(), KMode::Strict, 7)?;
    let ok = k == schur_monomial(&d, 7)?;
    Ok((ok, format!("{} terms, strict P-partitions equal the tableau sum: {ok}", k.len())))
}

fn mnrule_powersum() -> Check {
    let p = expand_in_powersum(&schur_monomial(&examples::mnrule(), 5)?)?;
    let want = [
        (vec![5], rat(-1, 5)),
        (vec![4, 1], rat(1, 2)),
        (vec![3, 1, 1], rat(-1, 3)),
        (vec![1, 1, 1, 1, 1], rat(1, 30)),
    ];
    let ok = p.len() == want.len() && want.iter().all(|(i, c)| &p.get(i) == c);
    Ok((ok, p.to_string()))
}

fn mnrule_example() -> Check {
    let d = examples::mnrule();
    let mus = ["5", "4,1", "3,1,1", "2,2,1", "2,1,1,1", "1,1,1,1,1"];
    let mn = mn_expansion(&d)?.with_kind(BasisKind::PowerSumOverZ)?;
    let mut counts = Vec::new();
    let mut coeffs = Vec::new();
    for m in mus {
        let mu: Partition = m.parse()?;
        counts.push(enumerate_ribbon_tableaux(&d, &mu)?.len());
        coeffs.push(mn.get(mu.parts()));
    }
    let want: Vec<Rational> = [-1, 2, -2, 0, 0, 4].iter().map(|&c| int(c)).collect();
    let ok = counts == [1, 1, 2, 0, 0, 4] && coeffs == want;
    let shown: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    Ok((ok, format!("tableaux {counts:?}, coefficients of p/z ({})", shown.join(", "))))
}

fn p21_in_psi() -> Check {
    let e = expand_in_psi(&basis_element(BasisKind::PowerSum, &[2, 1], 3)?)?;
    let ok = e.len() == 2 && e.get(&[2, 1]) == int(1) && e.get(&[1, 2]) == int(1);
    Ok((ok, e.to_string()))
}

fn labels_of(p: &OrientedPoset, classes: Vec<Vec<usize>>) -> Vec<String> {
    let mut v: Vec<String> = classes
        .iter()
        .map(|cl| cl.iter().map(|&i| p.labels()[i].as_str()).collect())
        .collect();
    v.sort();
    v
}

fn quotient_poset() -> Check {
    let (p, e) = examples::quotient_poset();
    let c = chain_congruence_closure(&p, &e)?;
    let classes = labels_of(&p, c.classes());
    let m = m_e(&p, &e)?;
    let ok = classes == ["17", "23", "4689", "5"] && m == 2;
    Ok((ok, format!("classes {classes:?}, m_E = {m}")))
}

fn quotient_poset3() -> Check {
    let (p, e) = examples::quotient_poset3();
    let alpha = Composition::new(vec![5, 3, 2])?;
    let fs = enumerate_surjections(&p, &e, &alpha)?;
    let mut table: Vec<Vec<u64>> = Vec::new();
    for f in &fs {
        let mut row = Vec::new();
        for j in 1..=3 {
            let block = f.block(j);
            let members: Vec<usize> = (0..p.len()).filter(|&i| block >> i & 1 == 1).collect();
            let pos = |x: usize| members.iter().position(|&m| m == x);
            let inside: EdgeSet = e
                .iter()
                .filter_map(|&(a, b)| Some((pos(a)?, pos(b)?)))
                .collect();
            row.push(m_e(&p.induced(block), &inside)?);
        }
        table.push(row);
    }
    table.sort();
    let psi = psi_as(&p, &e)?.get(&[5, 3, 2]);
    let signed = signed_me_sum(&p, &e, &Limits::default())?;
    let ok = fs.len() == 2 && table == [[3, 0, 2], [3, 2, 2]] && psi == int(12) && signed == 0;
    Ok((
        ok,
        format!("{} surjections, fibre values {table:?}, Psi[532] coefficient {psi}, signed sum {signed}", fs.len()),
    ))
}

fn boundary_loops() -> Check {
    let d = examples::boundary_loops();
    let ok = d.size() == 46 && d.inner_edges() == [-2, -2, -3, -3, -4] && d.outer_edges() == [9, 9, 7, 4, 3];
    Ok((ok, format!("{} boxes", d.size())))
}

fn thirteen_cell_poset() -> Check {
    let d = examples::thirteen_cell();
    let p = d.poset()?;
    let idx = |r: i64, c: i64| p.index_of(&format!("{r},{c}"));
    let wraps = match (idx(1, 5), idx(1, 6), idx(2, 5), idx(2, 6)) {
        (Some(a), Some(b), Some(c), Some(e)) => p.lt(a, b) && p.lt(c, e),
        _ => false,
    };
    Ok((p.len() == 13 && wraps, format!("{} elements, wrap relations present: {wraps}", p.len())))
}

fn cylgt_count() -> Check {
    let n = enumerate_cssyt(&examples::cylindric_gt(), 5, Some(&examples::cylindric_gt_weight()))?.len();
    Ok((n == 3, format!("{n} tableaux")))
}

fn cylgt_via_cut() -> Check {
    let e = cylindric_as_flagged(&examples::cylindric_gt(), 5, None)?;
    let n = e.kostka(&examples::cylindric_gt_weight())?;
    Ok((n == 3, format!("{} first-column terms summing to {n}", e.terms.len())))
}

fn cylgt_patterns() -> Check {
    let d = examples::cylindric_gt();
    let ps = enumerate_cylindric_gt(&d, &examples::cylindric_gt_weight(), WrapCondition::Interlacing);
    // Levels listed top (5) to bottom (0) as printed.
    let printed = [
        [[4, 3, 3], [3, 3, 3], [3, 3, 2], [3, 2, 2], [2, 2, 1], [2, 1, 0]],
        [[4, 3, 3], [4, 3, 2], [3, 3, 2], [3, 2, 2], [2, 2, 1], [2, 1, 0]],
        [[4, 3, 3], [4, 3, 2], [4, 2, 2], [3, 2, 2], [2, 2, 1], [2, 1, 0]],
    ];
    let got: BTreeSet<Vec<Vec<i64>>> = ps.iter().map(|p| p.levels().to_vec()).collect();
    let want: BTreeSet<Vec<Vec<i64>>> = printed
        .iter()
        .map(|p| p.iter().rev().map(|l| l.to_vec()).collect())
        .collect();
    let round_trip = ps.iter().all(|p| {
        p.to_cssyt(&d)
            .and_then(|t| GtPattern::from_cssyt(&d, &t, 5))
            .is_ok_and(|q| &q == p)
    });
    let ok = got == want && round_trip;
    Ok((ok, format!("{} patterns, printed set matches: {}, round trip: {round_trip}", ps.len(), got == want)))
}

fn core_quotient() -> Check {
    let (core, quot) = classical_core_quotient(&"4,4,3,1".parse()?, 4)?;
    let shown: Vec<String> = quot.iter().map(|q| format!("({q})")).collect();
    let one: Partition = "1".parse()?;
    let ok = core.is_empty() && quot == [one.clone(), Partition::empty(), one.clone(), one];
    Ok((ok, format!("core ({core}), quotient {}", shown.join(" "))))
}

fn stacked_heights() -> Check {
    let cls = examples::stacked()
        .iter()
        .map(classify_stacked)
        .collect::<Result<Vec<_>>>()?;
    let heights: Vec<u32> = cls.iter().map(|c| c.height).collect();
    // Printed as 2; 2; 1+1; 3+5; 1+2+2.
    let ok_heights = heights == [2, 2, 2, 8, 5]
        && cls[2].loops == 1
        && cls[3].residual_height == 3
        && cls[4].loops == 2
        && cls[4].residual_height == 1;
    let pure_ok = [1, 2].iter().all(|&i| cls[i].tag == StackedTag::PureStacked && cls[i].width == 4);
    let mut agree = true;
    for d in examples::stacked().iter().chain([&examples::stacked_fourth_as_drawn()]) {
        agree &= verify_stacked_formula(d, &Limits::default())?.agree;
    }
    Ok((ok_heights && pure_ok && agree, format!("heights {heights:?}, pure widths 4: {pure_ok}, closed form agrees: {agree}")))
}

fn disconnected() -> Check {
    let r = verify_stacked_formula(&examples::disconnected_pair(), &Limits::default())?;
    Ok((r.oracle == 0 && r.closed_form == 0, show(r)))
}

fn three_partition() -> Check {
    let w = crate::cylindric::BoundaryLoop::parse_word("110001011010")?;
    let p = k_partition(&w, 3)?;
    let subs: Vec<String> = p
        .subwords
        .iter()
        .map(|s| s.iter().map(|b| b.to_string()).collect())
        .collect();
    let ok = subs == ["1000", "1011", "0110"] && p.one_counts == [1, 3, 2];
    Ok((ok, format!("{subs:?}, ones {:?}", p.one_counts)))
}

fn inner_strict_good_pair() -> Check {
    let d = examples::three_fills();
    let rep = parity_report(&d, 3, &Limits::default())?;
    let ok = rep.inner_strict && rep.good_pair == Some(true) && rep.cancellation_free;
    Ok((ok, show(rep)))
}

fn removal_flips_parity() -> Check {
    let mut checked = 0;
    for d in CylindricDiagram::all_up_to(6, 6, false) {
        let n = d.x() + d.y();
        let w = d.outer_loop().word().to_vec();
        for k in (1..n).filter(|k| n % k == 0) {
            if !is_good_pair(&d, k)?.good {
                continue;
            }
            let e0 = epsilon_k(&w, k, PairingFloor::Total)?;
            for rm in removable_ribbons(&d, k)? {
                let smaller = d.with_outer(rm.remaining.clone())?;
                let e1 = epsilon_k(smaller.outer_loop().word(), k, PairingFloor::Total)?;
                if (e0 != e1) != (rm.height % 2 == 1) {
                    return Ok((false, format!("{} k={k}", d.to_spec_string())));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} removals")))
}

fn two_ribbon() -> Check {
    let r = enumerate_tilings(&examples::two_ribbon(), 2, &Limits::default())?;
    let hs: BTreeSet<u32> = r.total_heights.iter().copied().collect();
    let ok = r.tilings.len() == 2 && hs == BTreeSet::from([1, 2]);
    Ok((ok, format!("{} tilings, heights {hs:?}", r.tilings.len())))
}

fn mixed_parity() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for k in [3, 4] {
        let rep = parity_report(&examples::mixed_parity(k), k as usize, &Limits::default())?;
        ok &= rep.parities_observed == BTreeSet::from([0, 1]);
        parts.push(format!("k={k}: parities {:?}", rep.parities_observed));
    }
    Ok((ok, parts.join("; ")))
}

fn three_fills() -> Check {
    let r = enumerate_tilings(&examples::three_fills(), 3, &Limits::default())?;
    Ok((r.tilings.len() == 3, format!("{} tilings", r.tilings.len())))
}

fn core_sizes() -> Check {
    let r = enumerate_tilings(&examples::core_sizes(), 3, &Limits::default())?;
    let sizes: BTreeSet<usize> = r.tilings.iter().map(|t| t.core_size).collect();
    let empty = r.tilings.iter().filter(|t| t.core_size == 0).count();
    Ok((sizes.len() > 1 && empty > 0, format!("core sizes {sizes:?}, {empty} tilings with empty core")))
}

fn contingency_printed() -> Check {
    let spec = ContingencySpec::new(vec![3, 5, 6], vec![2, 5, 7], FlagPair::new(vec![1, 2, 2], vec![2, 3, 3])?)?;
    let n = contingency_count(&spec);
    let listed = contingency_tables(&spec).len();
    Ok((n == 5 && listed == 5, format!("{n} tables")))
}

fn contingency_stretched() -> Check {
    let flags = FlagPair::new(vec![1, 1], vec![2, 2])?;
    let mut counts = Vec::new();
    for k in 1..=5i64 {
        let spec = ContingencySpec::new(vec![2 * k - 4, 4], vec![k, k], flags.clone())?;
        counts.push(contingency_count(&spec));
    }
    Ok((counts == [0, 1, 3, 5, 5], format!("{counts:?}")))
}

fn cylgt_stretch() -> Check {
    let v = stretch_values_cylindric(&examples::cylindric_gt(), &examples::cylindric_gt_weight(), 5)?;
    let fit = fit_sequence(0, &v, 4)?;
    let want = vec![int(1), rat(3, 2), rat(1, 2)];
    let ok = v == [1, 3, 6, 10, 15, 21] && fit.is_polynomial() && fit.components == [want];
    Ok((ok, format!("{v:?} -> {}", fit.describe())))
}

fn period_two_sequence() -> Check {
    let fit = fit_sequence(1, &[3, 7, 12, 19, 27, 37, 48, 61], 4)?;
    let ok = fit.kind == FitKind::Quasipolynomial && fit.period == 2;
    Ok((ok, format!("{:?} of period {}: {}", fit.kind, fit.period, fit.describe())))
}

fn first_column_terms() -> Check {
    let d = examples::first_column_cut();
    let e = cylindric_as_flagged(&d, 5, None)?;
    let same = e.recombine()? == schur_monomial(&d, 5)?;
    Ok((e.terms.len() == 10 && same, format!("{} terms, recombination exact: {same}", e.terms.len())))
}

fn cylgt_small_count() -> Check {
    let n = count_cssyt(&examples::cylindric_gt(), &examples::cylindric_gt_weight());
    Ok((n == 3, format!("{n}")))
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario { name: "special-vectors", summary: "delta and rho for n = 3", run: delta_n3 },
    Scenario { name: "seven-box-monomial", summary: "monomial expansion of the 7-box diagram", run: seven_box_monomial },
    Scenario { name: "seven-box-322", summary: "two tableaux of weight 322", run: seven_box_322 },
    Scenario { name: "seven-box-poset", summary: "strict P-partitions of P(D) give s_D", run: seven_box_poset },
    Scenario { name: "mnrule-powersum", summary: "power-sum expansion of the ribbon example", run: mnrule_powersum },
    Scenario { name: "mnrule-example", summary: "ribbon tableau counts and MN coefficients", run: mnrule_example },
    Scenario { name: "p21-psi", summary: "p_21 in the Psi basis", run: p21_in_psi },
    Scenario { name: "quotient-poset", summary: "closure classes and m_E of the nine-element poset", run: quotient_poset },
    Scenario { name: "quotient-poset3", summary: "surjections, fibre values, Psi coefficient, signed sum", run: quotient_poset3 },
    Scenario { name: "boundary-loops", summary: "the 46-box diagram from its two loops", run: boundary_loops },
    Scenario { name: "cylindric-poset", summary: "13-element poset with wrap relations", run: thirteen_cell_poset },
    Scenario { name: "cylgt-count", summary: "three tableaux of weight 22111", run: cylgt_count },
    Scenario { name: "cylgt-dp-count", summary: "strip DP count of the same tableaux", run: cylgt_small_count },
    Scenario { name: "cylgt-first-column", summary: "the same count as a sum of flagged Kostka numbers", run: cylgt_via_cut },
    Scenario { name: "cylgt-patterns", summary: "the three printed cylindric GT patterns", run: cylgt_patterns },
    Scenario { name: "core-quotient", summary: "4-core and 4-quotient of 4431", run: core_quotient },
    Scenario { name: "stacked-heights", summary: "heights and widths of the five stacked shapes", run: stacked_heights },
    Scenario { name: "disconnected-ribbon", summary: "both sides vanish for a disconnected diagram", run: disconnected },
    Scenario { name: "three-partition", summary: "3-partitioning of 110001011010", run: three_partition },
    Scenario { name: "inner-strict-good", summary: "an inner-strict tileable diagram is a good pair", run: inner_strict_good_pair },
    Scenario { name: "removal-parity", summary: "ribbon removal flips epsilon iff the height is odd", run: removal_flips_parity },
    Scenario { name: "two-ribbon-heights", summary: "two tilings with total heights 1 and 2", run: two_ribbon },
    Scenario { name: "mixed-parity", summary: "tilings of both parities for k = 3, 4", run: mixed_parity },
    Scenario { name: "three-fills", summary: "exactly three 3-ribbon tilings", run: three_fills },
    Scenario { name: "core-sizes", summary: "3-cores of different sizes", run: core_sizes },
    Scenario { name: "contingency-five", summary: "the five flagged contingency tables", run: contingency_printed },
    Scenario { name: "contingency-stretch", summary: "stretched counts 0,1,3,5,5", run: contingency_stretched },
    Scenario { name: "cylgt-stretch", summary: "stretched counts fitted by (k+1)(k+2)/2", run: cylgt_stretch },
    Scenario { name: "period-two-quasipolynomial", summary: "3,7,12,... has period 2", run: period_two_sequence },
    Scenario { name: "first-column-terms", summary: "ten first-column terms recombine to s_D", run: first_column_terms },
];

pub fn names() -> Vec<&'static str> {
    SCENARIOS.iter().map(|s| s.name).collect()
}

pub fn find(name: &str) -> Result<&'static Scenario> {
    SCENARIOS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown scenario `{name}`")))
}

pub fn run_scenario(name: &str) -> Result<ScenarioReport> {
    Ok(find(name)?.run())
}

/// Runs the named scenarios in order; an empty list is a vacuous pass.
pub fn run_suite(names: &[&str]) -> Result<Vec<ScenarioReport>> {
    names.iter().map(|n| run_scenario(n)).collect()
}

pub fn all_passed(reports: &[ScenarioReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
