use proptest::prelude::*;

use loopkit::construction::{act, s_h, AVec, B2Elem, BElem};
use loopkit::isotopy::{isotope_at, principal_isotope, right_translation_transports, Side};
use loopkit::subloop;
use loopkit::{samples, CayleyTable, Perm};

fn any_loop() -> impl Strategy<Value = CayleyTable> {
    (2usize..12, any::<u64>()).prop_map(|(n, seed)| samples::random_loop(n, seed))
}

fn any_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn is_latin_with_identity(t: &CayleyTable) -> bool {
    let n = t.order();
    t.elements().all(|x| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for y in t.elements() {
            row[t.mul(x, y)] = true;
            col[t.mul(y, x)] = true;
        }
        row.iter().all(|&b| b) && col.iter().all(|&b| b) && t.mul(0, x) == x && t.mul(x, 0) == x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translations_are_permutations(t in any_loop()) {
        for x in t.elements() {
            let l = t.left_translation(x);
            let r = t.right_translation(x);
            prop_assert!(Perm::from_images(l.images().collect()).is_ok());
            prop_assert!(Perm::from_images(r.images().collect()).is_ok());
        }
        prop_assert!(t.left_translation(0).is_identity());
        prop_assert!(t.right_translation(0).is_identity());
    }

    #[test]
    fn divisions_cancel(t in any_loop()) {
        for a in t.elements() {
            for b in t.elements() {
                prop_assert_eq!(t.mul(a, t.ldiv(a, b)), b);
                prop_assert_eq!(t.ldiv(a, t.mul(a, b)), b);
                prop_assert_eq!(t.mul(t.rdiv(b, a), a), b);
                prop_assert_eq!(t.rdiv(t.mul(b, a), a), b);
            }
        }
    }

    #[test]
    fn inverse_maps_are_mutually_inverse(t in any_loop()) {
        prop_assert!(t.j_map().compose(&t.i_map()).is_identity());
        prop_assert!(t.i_map().compose(&t.j_map()).is_identity());
    }

    #[test]
    fn text_round_trip(t in any_loop()) {
        let text = t.to_text();
        let back = CayleyTable::parse(&text).unwrap();
        let body = |s: &str| s.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
        prop_assert_eq!(body(&back.to_text()), body(&text));
    }

    #[test]
    fn isotopes_are_loops_with_identity_zero(t in any_loop(), e in 0usize..12, right in any::<bool>()) {
        let e = e % t.order();
        let side = if right { Side::Right } else { Side::Left };
        let iso = isotope_at(&t, side, e).unwrap();
        prop_assert!(is_latin_with_identity(&iso.table));
        prop_assert!(right_translation_transports(&t, e));
    }

    #[test]
    fn principal_isotope_moves_ab_to_zero(t in any_loop(), a in 0usize..12, b in 0usize..12) {
        let (a, b) = (a % t.order(), b % t.order());
        let iso = principal_isotope(&t, a, b).unwrap();
        prop_assert!(is_latin_with_identity(&iso.table));
        let sigma = iso.relabel.unwrap();
        prop_assert_eq!(sigma.apply(t.mul(a, b)), 0);
        for x in t.elements() {
            for y in t.elements() {
                let old = t.mul(t.rdiv(x, b), t.ldiv(a, y));
                prop_assert_eq!(iso.table.mul(sigma.apply(x), sigma.apply(y)), sigma.apply(old));
            }
        }
    }

    #[test]
    fn perm_group_laws(p in any_perm(9), q in any_perm(9), r in any_perm(9)) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
        prop_assert_eq!(p.compose(&q).inverse(), q.inverse().compose(&p.inverse()));
        for x in 0..9 {
            prop_assert_eq!(p.compose(&q).apply(x), p.apply(q.apply(x)));
        }
    }

    #[test]
    fn subloops_are_closed(g in 0usize..16, seed in any::<u64>()) {
        let t = samples::random_loop(8, seed);
        let s = subloop::generate(&t, &[g % 8]).unwrap();
        prop_assert!(s.contains(0));
        for &x in s.members() {
            for &y in s.members() {
                prop_assert!(s.contains(t.mul(x, y)));
                prop_assert!(s.contains(t.ldiv(x, y)));
                prop_assert!(s.contains(t.rdiv(x, y)));
            }
        }
    }

    #[test]
    fn group_quotients_are_homomorphic(k in 0usize..6, g in 0usize..64) {
        let t = [
            samples::direct_product(&samples::cyclic(4), &samples::cyclic(4)),
            samples::dihedral(8),
            samples::dicyclic(4),
            samples::alternating4(),
            samples::direct_product(&samples::cyclic(2), &samples::quaternion8()),
            samples::octonion16(),
        ][k].clone();
        let s = subloop::normal_closure(&t, &[g % t.order()]).unwrap();
        let q = subloop::quotient(&t, &s).unwrap();
        for x in t.elements() {
            for y in t.elements() {
                prop_assert_eq!(q.projection[t.mul(x, y)], q.table.mul(q.projection[x], q.projection[y]));
            }
        }
    }

    #[test]
    fn b_action_is_linear(x in 0usize..16, y in 0usize..16, a in 0u8..64, b in 0u8..64) {
        let (bx, by) = (BElem::from_index(x).pi(), BElem::from_index(y).pi());
        let (a, b) = (AVec(a), AVec(b));
        prop_assert_eq!(act(bx.add(by), a), act(bx, act(by, a)));
        prop_assert_eq!(act(bx, a.add(b)), act(bx, a).add(act(bx, b)));
        prop_assert_eq!(act(bx, act(bx, a)), a);
        prop_assert_eq!(act(B2Elem::ZERO, a), a);
    }

    #[test]
    fn s_form_is_symmetric(h in 1u8..3, x in 0usize..16, y in 0usize..16, z in 0usize..16) {
        let (x, y, z) = (BElem::from_index(x), BElem::from_index(y), BElem::from_index(z));
        let v = s_h(h, x, y, z);
        for (p, q, r) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            prop_assert_eq!(s_h(h, p, q, r), v);
        }
    }
}
