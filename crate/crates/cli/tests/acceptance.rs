//! One line per acceptance criterion. Run with `--nocapture` to see them.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use loopkit::autotopism::{build_autotopism, is_autotopism, AutotopismKind};
use loopkit::construction::{self, elem, f_assoc, AVec, BElem};
use loopkit::group::mult_groups;
use loopkit::identity::{check_identity, Law, Mode};
use loopkit::isotopy::{gloop_report, is_isomorphic, Buchsteiner, GLoopPlan};
use loopkit::report::Report;
use loopkit::suite::{minverse_report, SuiteOptions};
use loopkit::{calculus, samples, subloop, theorems, verify, CayleyTable};

struct Line {
    n: u8,
    passed: bool,
    text: String,
}

fn line(n: u8, passed: bool, text: impl Into<String>) -> Line {
    let l = Line { n, passed, text: text.into() };
    println!("criterion {:>2}: {}  {}", l.n, if l.passed { "PASS" } else { "FAIL" }, l.text);
    l
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopkit")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("loopkit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn failures(r: &Report) -> String {
    let ids: Vec<&str> = r.failures().map(|f| f.id.as_str()).collect();
    if ids.is_empty() {
        String::new()
    } else {
        format!("; failed: {}", ids.join(", "))
    }
}

fn all_exhaustive(r: &Report) -> bool {
    r.records.iter().all(|x| x.mode == "exhaustive")
}

fn construction_validity(q1024_path: &str) -> Line {
    let (out, took) = timed(|| bin(&["paper-example", "--order", "1024", "-o", q1024_path]));
    let text = std::fs::read_to_string(q1024_path).unwrap_or_default();
    let parsed = CayleyTable::parse(&text);
    let valid = out.status.success() && matches!(&parsed, Ok(t) if t.order() == 1024);
    let validated = bin(&["validate", q1024_path]).status.success();
    line(1, valid && validated && took < Duration::from_secs(10), format!("order-1024 table emitted and validated in {took:.2?}"))
}

fn buchsteiner_law(q1024: &CayleyTable, q64: &CayleyTable) -> Line {
    let (big, t_big) = timed(|| check_identity(q1024, Law::Buchsteiner, Mode::Exhaustive));
    let (sampled, t_sampled) = timed(|| check_identity(q1024, Law::Buchsteiner, Mode::Sampled { samples: 10_000_000, seed: 1 }));
    let (small, t_small) = timed(|| check_identity(q64, Law::Buchsteiner, Mode::Exhaustive));
    let ok = big.passed
        && big.evaluations == 1 << 30
        && t_big < Duration::from_secs(1800)
        && sampled.passed
        && t_sampled < Duration::from_secs(30)
        && small.passed
        && t_small < Duration::from_secs(1);
    line(2, ok, format!("Q1024 exhaustive {t_big:.1?}, Q1024 10^7 samples {t_sampled:.2?}, Q64 exhaustive {t_small:.2?}"))
}

fn nucleus_structure(q1024: &CayleyTable) -> Line {
    let n = subloop::nucleus(q1024);
    let exact = n.members() == construction::q1024_nucleus_members().as_slice();
    let is_1xa = n.members().iter().all(|&m| construction::split(m).0 == BElem::ONE);
    let q = subloop::quotient(q1024, &n);
    let c4c4 = samples::direct_product(&samples::cyclic(4), &samples::cyclic(4));
    let iso = q.as_ref().is_ok_and(|q| q.table.is_associative() && q.table.is_commutative() && is_isomorphic(&q.table, &c4c4).is_some());
    line(3, n.len() == 64 && exact && is_1xa && iso, format!("|N(Q1024)| = {}, N = 1 x A, Q1024/N = C4 x C4", n.len()))
}

fn exponent_and_q64(q1024: &CayleyTable, q64: &CayleyTable) -> Line {
    let n = subloop::nucleus(q1024);
    let f = subloop::quotient(q1024, &n).unwrap().table;
    let exponent = f.elements().map(|x| f.element_order(x)).max().unwrap();
    let n64 = subloop::nucleus(q64);
    let non_nuclear_square = q64.elements().find(|&x| !n64.contains(q64.mul(x, x)));
    let f64 = subloop::quotient(q64, &n64).unwrap().table;
    let c4c2 = samples::direct_product(&samples::cyclic(4), &samples::cyclic(2));
    let ok = exponent == 4 && non_nuclear_square.is_some() && n64.len() == 8 && is_isomorphic(&f64, &c4c2).is_some();
    line(
        4,
        ok,
        format!(
            "Q1024/N exponent {exponent}; x = {:?} in Q64 has x^2 outside N; |N(Q64)| = {}; Q64/N = C4 x C2",
            non_nuclear_square,
            n64.len()
        ),
    )
}

fn associator_identification(q1024: &CayleyTable, q64: &CayleyTable) -> Line {
    let mut triples = 0;
    let mut mismatches = 0;
    for x in BElem::all() {
        for y in BElem::all() {
            for z in BElem::all() {
                let rep = |b| elem(b, AVec::ZERO);
                triples += 1;
                if subloop::assoc(q1024, rep(x), rep(y), rep(z)) != elem(BElem::ONE, f_assoc(x, y, z)) {
                    mismatches += 1;
                }
            }
        }
    }
    let r = verify::verify_loops(q1024, q64, 1);
    let independent = r.get("q1024.associator_independent").is_some_and(|x| x.passed);
    line(
        5,
        triples == 4096 && mismatches == 0 && independent,
        format!("{triples} representative triples agree with f; independence on 1000 seeded perturbations"),
    )
}

fn calculus_suites(q1024: &CayleyTable, q64: &CayleyTable) -> Line {
    let opts = SuiteOptions::default();
    let ((small, big), took) = timed(|| (calculus::calculus_suite(q64, &opts).unwrap(), calculus::calculus_suite(q1024, &opts).unwrap()));
    let ok = small.passed() && big.passed() && all_exhaustive(&small) && all_exhaustive(&big) && took < Duration::from_secs(60);
    line(
        6,
        ok,
        format!(
            "{} + {} records on Q64 and Q1024, all exhaustive, {took:.1?}{}{}",
            small.records.len(),
            big.records.len(),
            failures(&small),
            failures(&big)
        ),
    )
}

fn table_reproduction() -> (Line, Vec<String>) {
    let r = verify::verify_forms();
    let failed: Vec<String> = r.failures().map(|f| f.id.clone()).collect();
    let detail = r.failures().map(|f| format!("{}: {}", f.id, f.witness.as_deref().unwrap_or(""))).collect::<Vec<_>>().join("; ");
    let text = if failed.is_empty() {
        format!("{} checks on the tables of C, the associator formula and f", r.records.len())
    } else {
        format!("{} of {} checks pass; {detail}", r.records.len() - failed.len(), r.records.len())
    };
    (line(7, failed.is_empty(), text), failed)
}

fn theorem_suite(q64: &CayleyTable) -> Line {
    let (r, took) = timed(|| theorems::theorem_suite(q64, &SuiteOptions::default()).unwrap());
    let ok = r.passed() && all_exhaustive(&r) && took < Duration::from_secs(120);
    line(8, ok, format!("{} records on Q64, all exhaustive, {took:.2?}{}", r.records.len(), failures(&r)))
}

fn gloop(q64: &CayleyTable) -> Line {
    let b = Buchsteiner::verify(q64, Mode::Exhaustive).unwrap();
    let plan = GLoopPlan::full(q64, 8, 1);
    let r = gloop_report(b, &plan).unwrap();
    let ok = r.passed() && plan.wwip.len() == 64 && plan.oracle.len() == 8 && plan.sides.len() == 64;
    line(
        9,
        ok,
        format!(
            "constructed isomorphism for all {} x, search oracle for {} x, sides coincide for {} e{}",
            plan.wwip.len(),
            plan.oracle.len(),
            plan.sides.len(),
            failures(&r)
        ),
    )
}

fn witness_of(out: &Output) -> Option<String> {
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).ok()?;
    v["records"][0]["witness"].as_str().map(str::to_string)
}

fn non_cc(q1024_path: &str, q64_path: &str) -> Line {
    let small = || bin(&["--json", "check", q64_path, "--law", "cc"]);
    let big = || bin(&["--json", "check", q1024_path, "--law", "cc", "--mode", "sampled", "--seed", "7"]);
    let (s1, s2, b1, b2) = (small(), small(), big(), big());
    let fails = [&s1, &b1].iter().all(|o| o.status.code() == Some(1));
    let reproducible = s1.stdout == s2.stdout && b1.stdout == b2.stdout;
    let (ws, wb) = (witness_of(&s1), witness_of(&b1));
    let laws = [Law::Buchsteiner, Law::Cc, Law::Extra, Law::Wip, Law::Wwip];
    let groups: Vec<CayleyTable> = samples::group_corpus().into_iter().filter(|g| g.order() <= 16).collect();
    let group_failure = groups
        .iter()
        .find_map(|g| laws.iter().find(|&&l| !check_identity(g, l, Mode::Exhaustive).passed).map(|l| format!("{} fails {l:?}", g.label())));
    line(
        10,
        fails && reproducible && ws.is_some() && wb.is_some() && group_failure.is_none(),
        format!(
            "Q64 cc witness {}, Q1024 cc witness {} (seed 7); {} groups pass all five laws{}",
            ws.unwrap_or_default(),
            wb.unwrap_or_default(),
            groups.len(),
            group_failure.map(|s| format!("; {s}")).unwrap_or_default()
        ),
    )
}

fn oracle_equivalence(q64: &CayleyTable) -> Line {
    let mut groups = 0;
    let mut bad = Vec::new();
    for t in samples::loop_corpus().iter().filter(|t| t.order() <= 8) {
        let g = mult_groups(t);
        for grp in [&g.mlt, &g.lmlt, &g.rmlt, &g.inn, &g.lmlt1, &g.rmlt1] {
            groups += 1;
            let Some(all) = grp.enumerate(100_000) else {
                bad.push(format!("{} too large to enumerate", t.label()));
                continue;
            };
            if grp.order() != all.len().into() || !all.iter().all(|p| grp.contains(p).unwrap()) {
                bad.push(t.label().to_string());
            }
        }
    }
    let mut tables = samples::loop_corpus();
    tables.push(samples::octonion16());
    tables.push(q64.clone());
    for t in &tables {
        let law = check_identity(t, Law::Buchsteiner, Mode::Exhaustive).passed;
        let auto = t.elements().all(|x| is_autotopism(t, &build_autotopism(t, &AutotopismKind::Buch(x)).unwrap()).unwrap().holds);
        if law != auto {
            bad.push(format!("{} autotopism disagreement", t.label()));
        }
    }
    line(
        11,
        bad.is_empty(),
        format!(
            "{groups} multiplication groups against closure, {} tables two ways{}",
            tables.len(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    )
}

fn minverse(q64: &CayleyTable) -> Line {
    let (r, took) = timed(|| minverse_report(q64, 1).unwrap());
    let ok = r.passed()
        && all_exhaustive(&r)
        && took < Duration::from_secs(5)
        && r.get("minverse.dual").is_some()
        && r.get("minverse.inverse_power_automorphism").is_some();
    line(12, ok, format!("Q64 is 1-inverse and (-3)-inverse, I^4 is an automorphism, {took:.2?}{}", failures(&r)))
}

#[test]
fn acceptance() {
    let q1024_path = scratch("q1024.tbl");
    let q64_path = scratch("q64.tbl");
    let q1024_path = q1024_path.to_str().unwrap();
    let q64_path = q64_path.to_str().unwrap();
    assert!(bin(&["paper-example", "--order", "64", "-o", q64_path]).status.success());

    let mut lines = vec![construction_validity(q1024_path)];
    let q1024 = CayleyTable::parse(&std::fs::read_to_string(q1024_path).unwrap()).unwrap();
    let q64 = CayleyTable::parse(&std::fs::read_to_string(q64_path).unwrap()).unwrap();
    lines.push(buchsteiner_law(&q1024, &q64));
    lines.push(nucleus_structure(&q1024));
    lines.push(exponent_and_q64(&q1024, &q64));
    lines.push(associator_identification(&q1024, &q64));
    lines.push(calculus_suites(&q1024, &q64));
    let (tables, table_failures) = table_reproduction();
    lines.push(tables);
    lines.push(theorem_suite(&q64));
    lines.push(gloop(&q64));
    lines.push(non_cc(q1024_path, q64_path));
    lines.push(oracle_equivalence(&q64));
    lines.push(minverse(&q64));

    let failed: Vec<u8> = lines.iter().filter(|l| !l.passed).map(|l| l.n).collect();
    println!("acceptance: {} of {} criteria pass", lines.len() - failed.len(), lines.len());
    // One printed cell of the table of C for a = e1 + e2 disagrees with
    // its definition; everything else must hold.
    assert_eq!(failed, [7]);
    assert_eq!(table_failures, ["cform.table_a_e3"]);
}
