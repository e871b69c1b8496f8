use std::sync::OnceLock;

use proptest::prelude::*;

use semigroup_heights::constructions::{nm_family, rees_projection, rees_quotient, u_of};
use semigroup_heights::enumerate::{
    enumerate_semigroups, random_transformation_subsemigroup, transformation_semigroup,
    EnumerationConfig,
};
use semigroup_heights::green::{
    height_within_ideal, idempotent_height, k_classes, k_height, longest_chain_oracle, preorder,
};
use semigroup_heights::mtab::{parse_mtab, to_mtab};
use semigroup_heights::structure::{
    is_regular, is_semisimple, left_socle, minimal_ideal, right_socle,
};
use semigroup_heights::{
    adjoin_identity, adjoin_zero, direct_product, ideal_closure, opposite, FiniteSemigroup,
    Relation,
};

fn small_tables() -> &'static [FiniteSemigroup] {
    static TABLES: OnceLock<Vec<FiniteSemigroup>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (1..=3)
            .flat_map(|n| enumerate_semigroups(&EnumerationConfig::labelled(n)).unwrap())
            .collect()
    })
}

/// Either a labelled table of order ≤ 3 or a random transformation
/// semigroup of degree ≤ 4.
fn semigroup() -> impl Strategy<Value = FiniteSemigroup> {
    prop_oneof![
        (0..small_tables().len()).prop_map(|i| small_tables()[i].clone()),
        (2usize..=4, 1usize..=3, any::<u64>())
            .prop_map(|(d, g, seed)| random_transformation_subsemigroup(d, g, seed).unwrap()),
    ]
}

fn heights(s: &FiniteSemigroup) -> [usize; 4] {
    Relation::ORDERED.map(|k| k_height(s, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn valid_and_round_trips(s in semigroup()) {
        prop_assert!(s.is_associative());
        prop_assert_eq!(parse_mtab(&to_mtab(&s)).unwrap(), s);
    }

    #[test]
    fn h_is_l_meet_r(s in semigroup()) {
        let (l, r, h) = (preorder(&s, Relation::L), preorder(&s, Relation::R), preorder(&s, Relation::H));
        for a in s.elements() {
            for b in s.elements() {
                prop_assert_eq!(h.leq(a, b), l.leq(a, b) && r.leq(a, b));
                prop_assert!(!l.leq(a, b) || preorder(&s, Relation::J).leq(a, b));
            }
        }
    }

    #[test]
    fn heights_match_oracle(s in semigroup()) {
        for k in Relation::ORDERED {
            prop_assert_eq!(k_height(&s, k), longest_chain_oracle(&s, k));
        }
    }

    #[test]
    fn height_inequalities(s in semigroup()) {
        let [l, r, j, h] = heights(&s);
        prop_assert!(h <= l.min(r));
        prop_assert!(l.max(r) <= j);
        prop_assert!(idempotent_height(&s) <= l.min(r).min(h));
        if l == 2 || r == 2 {
            prop_assert!(j == 2 || j == 3);
        }
        if l == 2 {
            prop_assert!(h == 2 && r == j);
        }
        if is_semisimple(&s).unwrap() {
            prop_assert!(j <= l.min(r));
        }
        if is_regular(&s) {
            let e = idempotent_height(&s);
            prop_assert!(l == r && r == h && h == e && e == j);
        }
    }

    #[test]
    fn d_equals_j(s in semigroup()) {
        prop_assert_eq!(
            k_classes(&s, Relation::D).class_map().to_vec(),
            k_classes(&s, Relation::J).class_map().to_vec()
        );
    }

    #[test]
    fn one_sided_congruences(s in semigroup()) {
        let l = preorder(&s, Relation::L);
        let r = preorder(&s, Relation::R);
        for a in s.elements() {
            for b in s.elements() {
                for c in s.elements() {
                    if l.equivalent(a, b) {
                        prop_assert!(l.equivalent(s.mul(a, c), s.mul(b, c)));
                    }
                    if r.equivalent(a, b) {
                        prop_assert!(r.equivalent(s.mul(c, a), s.mul(c, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_swaps_sides(s in semigroup()) {
        let t = opposite(&s);
        let [l, r, j, h] = heights(&s);
        prop_assert_eq!(heights(&t), [r, l, j, h]);
        prop_assert_eq!(k_classes(&t, Relation::J).class_map().to_vec(), k_classes(&s, Relation::J).class_map().to_vec());
        prop_assert_eq!(opposite(&t), s);
    }

    #[test]
    fn adjoined_identity_sits_on_top(s in semigroup()) {
        let m = adjoin_identity(&s);
        prop_assert_eq!(m.order(), s.order() + 1);
        let top = s.order();
        for k in Relation::ORDERED {
            let p = preorder(&m, k);
            prop_assert!(m.elements().all(|a| p.leq(a, top)));
        }
    }

    #[test]
    fn product_projections_are_homomorphisms(a in semigroup(), i in 0..small_tables().len()) {
        let b = &small_tables()[i];
        let p = direct_product(&a, b);
        let w = b.order();
        for x in p.elements() {
            for y in p.elements() {
                let xy = p.mul(x, y);
                prop_assert_eq!(xy / w, a.mul(x / w, y / w));
                prop_assert_eq!(xy % w, b.mul(x % w, y % w));
            }
        }
    }

    #[test]
    fn minimal_ideal_is_union_of_minimal_classes(s in semigroup()) {
        let m: Vec<usize> = minimal_ideal(&s).members();
        for k in [Relation::L, Relation::R, Relation::J, Relation::H] {
            let st = k_classes(&s, k);
            let mut union: Vec<usize> = st
                .minimal_classes()
                .into_iter()
                .flat_map(|c| st.class(c).to_vec())
                .collect();
            union.sort_unstable();
            prop_assert_eq!(&union, &m);
        }
    }

    #[test]
    fn principal_quotients(s in semigroup(), pick in any::<prop::sample::Index>()) {
        let a = pick.index(s.order());
        let ideal = ideal_closure(&s, [a]).unwrap();
        let q = rees_quotient(&ideal);
        prop_assert_eq!(q.order(), s.order() - ideal.len() + 1);
        let proj = rees_projection(&ideal);
        for x in s.elements() {
            for y in s.elements() {
                prop_assert_eq!(proj[s.mul(x, y)], q.mul(proj[x], proj[y]));
            }
        }
        let hs = heights(&s);
        let hq = heights(&q);
        for (i, k) in Relation::ORDERED.into_iter().enumerate() {
            if k != Relation::H {
                prop_assert!(hq[i] <= hs[i]);
            }
            let inner = height_within_ideal(&k_classes(&s, k), &ideal);
            prop_assert!(hs[i] < inner + hq[i]);
        }
    }

    #[test]
    fn socle_laws(s in semigroup()) {
        // Adjoining a zero keeps the test universe while guaranteeing one.
        let s0 = adjoin_zero(&s);
        let socle = left_socle(&s0).unwrap();
        right_socle(&s0).unwrap();
        let q = rees_quotient(&socle);
        let [l, r, j, _] = heights(&s0);
        let [ql, qr, qj, _] = heights(&q);
        prop_assert_eq!(l, ql + 1);
        prop_assert!(r <= 2 * qr + 1);
        prop_assert!(j <= qr + qj + 1);
        let u = u_of(&s0).unwrap();
        let hu = heights(&u);
        prop_assert_eq!(hu[0], l + 1);
        prop_assert_eq!(hu[1], 2 * r + 1);
    }

    #[test]
    fn closing_a_closed_set_changes_nothing(d in 2usize..=4, g in 1usize..=3, seed in any::<u64>()) {
        let s = random_transformation_subsemigroup(d, g, seed).unwrap();
        let maps: Vec<Vec<usize>> = s
            .names()
            .unwrap()
            .iter()
            .map(|n| {
                n.trim_matches(|c| c == '[' || c == ']')
                    .split(',')
                    .map(|x| x.parse::<usize>().unwrap() - 1)
                    .collect()
            })
            .collect();
        prop_assert_eq!(transformation_semigroup(d, &maps).unwrap(), s);
    }
}

#[test]
fn nm_family_meets_its_contract() {
    for n in 1..=4 {
        for m in n..(1 << n) {
            let s = nm_family(n, m).unwrap();
            assert!(s.is_associative());
            assert_eq!(s.order(), m);
            assert_eq!(heights(&s)[..3], [n, m, m], "n={n} m={m}");
            assert_eq!(k_classes(&s, Relation::J).class_count(), m);
        }
    }
}

#[test]
fn u_of_iterates() {
    let s = semigroup_heights::constructions::fixture("fig1_s").unwrap();
    let uu = u_of(&u_of(&s).unwrap()).unwrap();
    assert!(uu.is_associative());
    assert_eq!(k_height(&uu, Relation::R), 2 * (2 * 3 + 1) + 1);
    assert_eq!(k_height(&uu, Relation::L), 2 + 2);
}
