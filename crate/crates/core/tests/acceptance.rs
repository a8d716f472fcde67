//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Runs without the libtest harness so the lines appear in
//! order; the process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use cylschur::combinat::Partition;
use cylschur::config::Limits;
use cylschur::cylindric::{count_cssyt, schur_monomial, CylindricDiagram};
use cylschur::flagged::{
    contingency_count, flagged_kostka, flagged_schur, flagged_schur_jt, kostka_via_contingency, lr_coefficient,
    ContingencySpec, FlagPair, SkewShape,
};
use cylschur::polyring::{
    expand_in_powersum, expand_in_qsym_monomial, psi_from_qsym_monomial, BasisExpansion, BasisKind, Rational,
    SparsePolynomial,
};
use num_traits::Zero;
use cylschur::qsym_poset::{
    chain_congruence_closure, k_generating, k_generating_qsym, psi_as, psi_strict, KMode, OrientedPoset,
};
use cylschur::ribbon::{classify_stacked, mn_expansion, verify_stacked_formula};
use cylschur::saturation::{cylindric_as_flagged, default_cut, fit_sequence, FitKind};
use cylschur::scenarios::run_scenario;
use cylschur::tiling::{
    empty_core_parities, epsilon_k, is_good_pair, is_inner_strict, removable_ribbons, rotated, PairingFloor,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scenario(name: &str) -> Result<String, String> {
    let r = run_scenario(name).map_err(|e| e.to_string())?;
    if r.passed {
        Ok(r.detail)
    } else {
        Err(r.detail)
    }
}

fn mn_keystone() -> Outcome {
    let corpus = CylindricDiagram::all_up_to(8, 8, true);
    for d in &corpus {
        let n = d.size().max(1);
        let s = schur_monomial(d, n).map_err(|e| e.to_string())?;
        let oracle = expand_in_powersum(&s).map_err(|e| e.to_string())?;
        let mn = mn_expansion(d)
            .and_then(|m| m.with_kind(BasisKind::PowerSum))
            .map_err(|e| e.to_string())?;
        ensure(mn == oracle, || format!("{}: MN {mn} vs {oracle}", d.to_spec_string()))?;
    }
    Ok(format!("{} diagrams", corpus.len()))
}

fn stacked_corpus() -> Outcome {
    let limits = Limits::default();
    let corpus = CylindricDiagram::all_up_to(8, 8, false);
    let mut stacked = 0;
    for d in &corpus {
        let r = verify_stacked_formula(d, &limits).map_err(|e| e.to_string())?;
        ensure(r.agree, || format!("{}: oracle {} closed form {}", d.to_spec_string(), r.oracle, r.closed_form))?;
        if classify_stacked(d).map_err(|e| e.to_string())?.is_stacked() {
            stacked += 1;
        }
    }
    let examples = scenario("stacked-heights")?;
    Ok(format!("{} diagrams ({stacked} stacked) agree; {examples}", corpus.len()))
}

/// Edge sets of every chain congruence of `p`, from closures of subsets of
/// the cover relations.
fn chain_congruences(p: &OrientedPoset) -> Vec<Vec<(usize, usize)>> {
    let covers = p.covers().to_vec();
    let mut out = BTreeSet::new();
    for sub in 0u32..1 << covers.len() {
        let s: Vec<(usize, usize)> = (0..covers.len()).filter(|i| sub >> i & 1 == 1).map(|i| covers[i]).collect();
        if let Ok(c) = chain_congruence_closure(p, &s) {
            out.insert(c.edges(p));
        }
    }
    out.into_iter().collect()
}

fn psi_recombination() -> Outcome {
    let mut pairs = 0;
    for p in OrientedPoset::all_up_to(6) {
        let n = p.len();
        for e in chain_congruences(&p) {
            let psi = psi_as(&p, &e).map_err(|err| err.to_string())?;
            let rebuilt = psi.to_polynomial(n).map_err(|err| err.to_string())?;
            let brute = k_generating(&p, &e, KMode::Equal, n).map_err(|err| err.to_string())?;
            ensure(rebuilt == brute, || format!("poset {:?} E {e:?}", p.covers()))?;
            pairs += 1;
        }
    }
    let example = scenario("quotient-poset3")?;
    Ok(format!("{pairs} (P, E) pairs on 406 posets; {example}"))
}

/// Strict sets: every subset of the cover relations, and the full relation
/// set for posets whose relation set is small.
fn strict_sets(p: &OrientedPoset) -> Vec<Vec<(usize, usize)>> {
    let covers = p.covers().to_vec();
    let mut out: BTreeSet<Vec<(usize, usize)>> = (0u32..1 << covers.len())
        .map(|sub| (0..covers.len()).filter(|i| sub >> i & 1 == 1).map(|i| covers[i]).collect())
        .collect();
    let rel = p.rel();
    if rel.len() <= 10 {
        out.insert(rel);
    }
    out.into_iter().collect()
}

fn add_scaled(acc: &mut BTreeMap<Vec<u32>, Rational>, e: &BasisExpansion, sign: i64) {
    for (i, c) in e.iter() {
        let entry = acc.entry(i.clone()).or_insert_with(Rational::zero);
        *entry += c * Rational::from_integer(sign.into());
    }
}

fn nonzero(m: BTreeMap<Vec<u32>, Rational>) -> BTreeMap<Vec<u32>, Rational> {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Both sides are compared as quasisymmetric expansions: in n = |P|
/// variables the M and Psi bases of degree n are linearly independent, so
/// this is the polynomial identity.
fn inclusion_exclusion() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    for p in OrientedPoset::all_up_to(6) {
        let n = p.len();
        let mut equal_cache: BTreeMap<Vec<(usize, usize)>, BasisExpansion> = BTreeMap::new();
        for e in strict_sets(&p) {
            let strict = k_generating(&p, &e, KMode::Strict, n).map_err(|err| err.to_string())?;
            let strict_m = expand_in_qsym_monomial(&strict).map_err(|err| err.to_string())?;
            let mut alt = BTreeMap::new();
            for sub in 0u32..1 << e.len() {
                let s: Vec<(usize, usize)> = (0..e.len()).filter(|i| sub >> i & 1 == 1).map(|i| e[i]).collect();
                if !equal_cache.contains_key(&s) {
                    let t = k_generating_qsym(&p, &s, KMode::Equal).map_err(|err| err.to_string())?;
                    equal_cache.insert(s.clone(), t);
                }
                add_scaled(&mut alt, &equal_cache[&s], if s.len().is_multiple_of(2) { 1 } else { -1 });
            }
            let want: BTreeMap<Vec<u32>, Rational> = strict_m.iter().map(|(i, c)| (i.clone(), c.clone())).collect();
            ensure(nonzero(alt) == want, || format!("inclusion-exclusion fails on {:?} E {e:?}", p.covers()))?;
            let reduced = psi_strict(&p, &e, &limits)
                .and_then(|q| q.with_kind(BasisKind::QsymPsi))
                .map_err(|err| err.to_string())?;
            let oracle = psi_from_qsym_monomial(&strict_m).map_err(|err| err.to_string())?;
            ensure(reduced == oracle, || format!("signed Psi sum fails on {:?} E {e:?}", p.covers()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (P, E) pairs, both identities exact"))
}

fn tiling_examples() -> Outcome {
    let parts = ["two-ribbon-heights", "mixed-parity", "three-fills", "core-sizes"]
        .iter()
        .map(|n| scenario(n).map(|d| format!("{n}: {d}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(parts.join("; "))
}

fn parity_corpus() -> Outcome {
    let corpus = CylindricDiagram::all_up_to(12, 8, false);
    let (mut good_pairs, mut inner_strict_cases, mut removals, mut rotations_bad) = (0, 0, 0, 0);
    for d in &corpus {
        let n = d.x() + d.y();
        let w = d.outer_loop().word().to_vec();
        for k in (1..=n).filter(|k| n % k == 0) {
            let spec = || format!("{} k={k}", d.to_spec_string());
            let good = is_good_pair(d, k).map_err(|e| e.to_string())?.good;
            let e0 = epsilon_k(&w, k, PairingFloor::Total).map_err(|e| e.to_string())?;
            let invariant = (0..n).all(|s| epsilon_k(&rotated(&w, s), k, PairingFloor::Total) == Ok(e0));
            // Good implies invariant; a non-good pair must show a rotation
            // that changes epsilon.
            ensure(good == invariant, || format!("rotation invariance differs from goodness at {}", spec()))?;
            if !invariant {
                rotations_bad += 1;
            }
            let needs_parities = good || (is_inner_strict(d) && d.y() % k == 0);
            if !needs_parities {
                continue;
            }
            let parities = empty_core_parities(d, k).map_err(|e| e.to_string())?;
            if good {
                good_pairs += 1;
                ensure(parities.len() <= 1, || format!("two parities at good pair {}", spec()))?;
                if k < n {
                    for rm in removable_ribbons(d, k).map_err(|e| e.to_string())? {
                        let smaller = d.with_outer(rm.remaining.clone()).map_err(|e| e.to_string())?;
                        let e1 = epsilon_k(smaller.outer_loop().word(), k, PairingFloor::Total)
                            .map_err(|e| e.to_string())?;
                        ensure((e0 != e1) == (rm.height % 2 == 1), || format!("removal flip fails at {}", spec()))?;
                        removals += 1;
                    }
                }
            }
            if is_inner_strict(d) && d.y() % k == 0 && !parities.is_empty() {
                inner_strict_cases += 1;
                ensure(good, || format!("inner-strict tileable but not good at {}", spec()))?;
                ensure(parities.len() == 1, || format!("inner-strict case not cancellation-free at {}", spec()))?;
            }
        }
    }
    Ok(format!(
        "{} diagrams, {good_pairs} good pairs, {inner_strict_cases} inner-strict tileable, {removals} removals, {rotations_bad} non-good pairs broken by a rotation",
        corpus.len()
    ))
}

/// Monotone flag pairs of length `rows` with entries in `1..=n`.
fn flags(rows: usize, n: u32) -> Vec<FlagPair> {
    FlagPair::all(rows, n)
}

/// Every `stride`-th entry, always keeping the last one (the loosest flags).
fn strided(all: &[FlagPair], stride: usize) -> Vec<&FlagPair> {
    let mut out: Vec<&FlagPair> = all.iter().step_by(stride.max(1)).collect();
    if let Some(last) = all.last() {
        if stride > 1 && !(all.len() - 1).is_multiple_of(stride) {
            out.push(last);
        }
    }
    out
}

/// Every shape with at most 8 boxes. Shapes of at most 5 boxes meet every
/// monotone flag pair with b <= 5; larger shapes meet about ten flag pairs
/// each, evenly spaced through the lexicographic list.
fn jacobi_trudi() -> Outcome {
    let n = 5;
    let shapes = SkewShape::all_up_to(8, 8);
    let mut flag_table: BTreeMap<usize, Vec<FlagPair>> = BTreeMap::new();
    let mut checked = 0u64;
    let mut exhaustive = 0u64;
    for s in &shapes {
        let fs = flag_table.entry(s.rows()).or_insert_with(|| flags(s.rows(), n));
        let stride = if s.size() <= 5 { 1 } else { fs.len() / 10 };
        for f in strided(fs, stride) {
            let jt = flagged_schur_jt(s, f, n as usize).map_err(|e| e.to_string())?;
            let tab = flagged_schur(s, f, n as usize).map_err(|e| e.to_string())?;
            ensure(jt == tab, || format!("shape {s} flags {f}"))?;
            checked += 1;
            if stride <= 1 {
                exhaustive += 1;
            }
        }
    }
    Ok(format!(
        "{} shapes, {checked} (shape, flags) pairs ({exhaustive} from the exhaustive part, |shape| <= 5)",
        shapes.len()
    ))
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(left - v, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Shapes with at most 4 rows, flags b <= 4, every weight in 4 parts.
/// All flags up to 5 boxes, every 10th at 6 boxes, every 40th at 7 and 8.
fn contingency() -> Outcome {
    let five = scenario("contingency-five")?;
    let stretched = scenario("contingency-stretch")?;
    let limits = Limits::default();
    let n = 4u32;
    let mut flag_table: BTreeMap<usize, Vec<FlagPair>> = BTreeMap::new();
    let mut checked = 0u64;
    for s in SkewShape::all_up_to(8, 4) {
        let fs = flag_table.entry(s.rows()).or_insert_with(|| flags(s.rows(), n));
        let stride = match s.size() {
            0..=5 => 1,
            6 => 10,
            _ => 40,
        };
        for f in strided(fs, stride) {
            for beta in compositions(s.size() as u32, n as usize) {
                let direct = flagged_kostka(&s, &beta, f).map_err(|e| e.to_string())?;
                let signed = kostka_via_contingency(&s, &beta, f, &limits).map_err(|e| e.to_string())?;
                ensure(signed == direct as i128, || format!("shape {s} flags {f} beta {beta:?}: {signed} vs {direct}"))?;
                checked += 1;
            }
        }
    }
    ensure(contingency_count(&ContingencySpec::unrestricted(vec![0, 0], vec![0, 0])) == 1, || "zero margins".into())?;
    Ok(format!("{five}; {stretched}; {checked} Kostka instances agree"))
}

/// Shapes with at most 6 boxes and 4 rows under every flag pair with b <= 4,
/// and cylindric diagrams with at most 6 boxes; every weight in 4 parts
/// (5 for diagrams), k = 2, 3, 4.
fn saturation() -> Outcome {
    let n = 4usize;
    let mut flagged_cases = 0u64;
    let mut instances = 0u64;
    for s in SkewShape::all_up_to(6, 4) {
        let stretched: Vec<SkewShape> = (2..=4).map(|k| s.stretched(k)).collect();
        let weights = compositions(s.size() as u32, n);
        for f in flags(s.rows(), n as u32) {
            for nu in &weights {
                let base = flagged_kostka(&s, nu, &f).map_err(|e| e.to_string())? > 0;
                for (sk, k) in stretched.iter().zip(2u32..) {
                    let knu: Vec<u32> = nu.iter().map(|v| v * k).collect();
                    let pos = flagged_kostka(sk, &knu, &f).map_err(|e| e.to_string())? > 0;
                    ensure(pos == base, || format!("flagged saturation fails: {s} {f} nu={nu:?} k={k}"))?;
                    instances += 1;
                }
            }
            flagged_cases += 1;
        }
    }
    let corpus = CylindricDiagram::all_up_to(6, 6, false);
    for d in &corpus {
        let stretched: Vec<CylindricDiagram> =
            (2..=4).map(|k| d.stretched(k)).collect::<cylschur::Result<_>>().map_err(|e| e.to_string())?;
        for nu in compositions(d.size() as u32, 5) {
            let base = count_cssyt(d, &nu) > 0;
            for (dk, k) in stretched.iter().zip(2u32..) {
                let knu: Vec<u32> = nu.iter().map(|v| v * k).collect();
                ensure((count_cssyt(dk, &knu) > 0) == base, || {
                    format!("cylindric saturation fails: {} nu={nu:?} k={k}", d.to_spec_string())
                })?;
                instances += 1;
            }
        }
    }
    Ok(format!(
        "0 violations in {instances} instances: {flagged_cases} flagged (shape, flags) pairs and {} diagrams",
        corpus.len()
    ))
}

fn stretch_fitting() -> Outcome {
    let cyl = scenario("cylgt-stretch")?;
    let period_two = scenario("period-two-quasipolynomial")?;
    let n = 3usize;
    let k_max = 8u32;
    let mut sequences = 0;
    for s in SkewShape::all_up_to(4, 3) {
        for f in flags(s.rows(), n as u32) {
            let polys: Vec<SparsePolynomial> = (1..=k_max)
                .map(|k| flagged_schur(&s.stretched(k), &f, n))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for (nu, _) in polys[0].terms() {
                let mut values = vec![1i128];
                for (i, p) in polys.iter().enumerate() {
                    let e: Vec<u32> = nu.iter().map(|v| v * (i as u32 + 1)).collect();
                    let c = p.coefficient(&e);
                    values.push(c.to_integer().try_into().map_err(|_| "overflow".to_string())?);
                }
                let fit = fit_sequence(0, &values, 4).map_err(|e| e.to_string())?;
                ensure(fit.kind == FitKind::Polynomial && fit.onset == 0, || {
                    format!("{s} {f} nu {nu:?}: {values:?} gives {:?} from {}", fit.kind, fit.onset)
                })?;
                sequences += 1;
            }
        }
    }
    Ok(format!("{cyl}; {period_two}; {sequences} flagged sequences are polynomials from k = 0"))
}

fn first_column() -> Outcome {
    let example = scenario("first-column-terms")?;
    let corpus = CylindricDiagram::all_up_to(7, 8, true);
    for d in &corpus {
        let n = d.size().max(1);
        let want = schur_monomial(d, n).map_err(|e| e.to_string())?;
        let c = default_cut(d);
        for cut in [c, c + 1] {
            let e = cylindric_as_flagged(d, n, Some(cut)).map_err(|e| e.to_string())?;
            let got = e.recombine().map_err(|e| e.to_string())?;
            ensure(got == want, || format!("{} cut {cut}", d.to_spec_string()))?;
        }
    }
    Ok(format!("{example}; {} diagrams, two cuts each", corpus.len()))
}

fn lr_agreement() -> Outcome {
    let limits = Limits::default();
    let mut triples = 0;
    let mut nonzero = 0;
    for total in 0..=8u32 {
        for nu in Partition::all_bounded(total, 4) {
            for a in 0..=total {
                for lambda in Partition::all_bounded(a, 4) {
                    for mu in Partition::all_bounded(total - a, 4) {
                        let r = lr_coefficient(&lambda, &mu, &nu, &limits).map_err(|e| e.to_string())?;
                        ensure(r.agree(), || format!("lambda {lambda} mu {mu} nu {nu}: {r:?}"))?;
                        triples += 1;
                        if r.tableaux > 0 {
                            nonzero += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{triples} triples ({nonzero} non-zero), all three methods agree"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 MN rule vs power-sum expansion", mn_keystone),
        ("2 ribbon example coefficients", || scenario("mnrule-example")),
        ("3 seven-box monomial expansion", || scenario("seven-box-monomial")),
        ("4 stacked ribbon closed form", stacked_corpus),
        ("5 Psi formula vs brute-force K=", psi_recombination),
        ("6 inclusion-exclusion and signed Psi sum", inclusion_exclusion),
        ("7 tiling counterexamples", tiling_examples),
        ("8 parity, cancellation and rotation", parity_corpus),
        ("9 flagged Jacobi-Trudi", jacobi_trudi),
        ("10 contingency tables", contingency),
        ("11 saturation", saturation),
        ("12 stretch fitting", stretch_fitting),
        ("13 first-column expansion", first_column),
        ("14 classical core and quotient", || scenario("core-quotient")),
        ("15 Littlewood-Richardson agreement", lr_agreement),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let start = Instant::now();
    for (name, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.split(' ').next() == Some(o.as_str())) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{name}] ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] ({secs:.1}s) {detail}");
            }
        }
    }
    println!("acceptance: {failed} failed, {:.1}s total", start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
