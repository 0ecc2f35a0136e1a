use loopkit::autotopism::{build_autotopism, is_autotopism, AutotopismKind};
use loopkit::group::{inner_groups_from_maps, mult_groups, PermGroup};
use loopkit::identity::{check_identity, Law, Mode};
use loopkit::subloop;
use loopkit::{samples, CayleyTable, Perm};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_tables() -> Vec<CayleyTable> {
    let mut v = samples::loop_corpus();
    v.push(samples::octonion16());
    v.push(samples::quaternion8());
    v
}

fn naive_agrees(g: &PermGroup, rng: &mut ChaCha8Rng) {
    let all = g.enumerate(50_000).expect("small group");
    assert_eq!(g.order(), all.len().into());
    for p in all.iter().take(200) {
        assert!(g.contains(p).unwrap());
    }
    let n = g.degree();
    for _ in 0..200 {
        let mut img: Vec<usize> = (0..n).collect();
        img.shuffle(rng);
        let p = Perm::from_images(img).unwrap();
        assert_eq!(g.contains(&p).unwrap(), all.contains(&p));
    }
}

#[test]
fn schreier_sims_matches_naive_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in samples::loop_corpus() {
        let g = mult_groups(&t);
        for grp in [&g.mlt, &g.lmlt, &g.rmlt, &g.inn, &g.lmlt1, &g.rmlt1] {
            naive_agrees(grp, &mut rng);
        }
        assert_eq!(g.mlt.order(), g.inn.order() * t.order());
    }
}

#[test]
fn inner_groups_two_ways() {
    for t in samples::loop_corpus() {
        let g = mult_groups(&t);
        let (inn, lm, rm) = inner_groups_from_maps(&t);
        assert!(inn.same_group(&g.inn).unwrap(), "{}", t.label());
        assert!(lm.same_group(&g.lmlt1).unwrap(), "{}", t.label());
        assert!(rm.same_group(&g.rmlt1).unwrap(), "{}", t.label());
    }
}

fn all_autotopic(t: &CayleyTable, kind: impl Fn(usize) -> AutotopismKind) -> bool {
    t.elements().all(|x| is_autotopism(t, &build_autotopism(t, &kind(x)).unwrap()).unwrap().holds)
}

/// `L_x^-1 R_z L_x = R_x^-1 R_{zx}` as permutations.
fn translation_conjugates(t: &CayleyTable) -> bool {
    t.elements().all(|x| {
        let lx = t.left_translation(x);
        t.elements().all(|z| {
            lx.inverse().compose(&t.right_translation(z)).compose(&lx)
                == t.right_translation(x).inverse().compose(&t.right_translation(t.mul(z, x)))
        })
    })
}

#[test]
fn buchsteiner_three_ways() {
    let mut tables = small_tables();
    tables.push(loopkit::construction::build_q64());
    for t in &tables {
        let law = check_identity(t, Law::Buchsteiner, Mode::Exhaustive).passed;
        assert_eq!(law, all_autotopic(t, AutotopismKind::Buch), "{}", t.label());
        assert_eq!(law, translation_conjugates(t), "{}", t.label());
        assert_eq!(law, check_identity(t, Law::BuchsteinerBig, Mode::Exhaustive).passed, "{}", t.label());
    }
    assert!(tables.iter().any(|t| !check_identity(t, Law::Buchsteiner, Mode::Exhaustive).passed));
}

#[test]
fn nuclei_from_autotopisms() {
    for t in small_tables() {
        let nu = subloop::nuclei(&t);
        for a in t.elements() {
            let holds = |k| is_autotopism(&t, &build_autotopism(&t, &k).unwrap()).unwrap().holds;
            assert_eq!(holds(AutotopismKind::NucLeft(a)), nu.left.contains(a));
            assert_eq!(holds(AutotopismKind::NucMiddle(a)), nu.middle.contains(a));
            assert_eq!(holds(AutotopismKind::NucRight(a)), nu.right.contains(a));
        }
    }
}

#[test]
fn law_implications_on_corpus() {
    let mut tables = small_tables();
    tables.push(loopkit::construction::build_q64());
    for t in &tables {
        let ok = |law| check_identity(t, law, Mode::Exhaustive).passed;
        if ok(Law::Buchsteiner) {
            assert_eq!(ok(Law::Lcc), ok(Law::Rcc), "{}", t.label());
            if ok(Law::Wip) {
                assert!(ok(Law::Cc), "{}", t.label());
            }
        }
        if ok(Law::Cc) {
            let n = subloop::nucleus(t);
            let squares = t.elements().all(|x| n.contains(t.mul(x, x)));
            assert_eq!(ok(Law::Buchsteiner), squares, "{}", t.label());
        }
    }
}

#[test]
fn witnesses_reevaluate() {
    for t in samples::loop_corpus() {
        for law in Law::all_named() {
            let r = check_identity(&t, law, Mode::Exhaustive);
            if let Some(w) = r.witness {
                let r2 = check_identity(&t, law, Mode::Exhaustive);
                assert_eq!(r2.witness.as_ref(), Some(&w));
                assert!(!r.passed);
            }
        }
    }
}

#[test]
fn groups_pass_the_named_laws() {
    for t in samples::group_corpus() {
        for law in [Law::Buchsteiner, Law::Cc, Law::Extra, Law::Wip, Law::Wwip] {
            assert!(check_identity(&t, law, Mode::Exhaustive).passed, "{} {law}", t.label());
        }
    }
}
