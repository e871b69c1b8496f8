//! The registry of height inequalities and identities checked on every input.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::report::{analyze, HeightReport};
use crate::constructions::{rees_quotient, u_of};
use crate::error::Result;
use crate::green::{height_within_ideal, k_classes, k_height, GreenStructure, Relation};
use crate::ideal::Ideal;
use crate::semigroup::FiniteSemigroup;
use crate::structure::{is_completely_simple, left_socle, minimal_ideal};

/// Every claim id, in evaluation order.
pub const CLAIM_IDS: [&str; 25] = [
    "lemma2.1",
    "lemma2.2",
    "lemma3.4",
    "prop3.5.3",
    "prop4.1",
    "prop4.2",
    "prop4.3",
    "prop4.4",
    "prop5.2.1",
    "prop5.2.3",
    "ineq_star",
    "thm5.3.1",
    "thm5.3.2",
    "thm5.3.2-internal",
    "thm5.3.3",
    "lemma5.5.2",
    "prop5.6",
    "thm6.1",
    "thm6.2",
    "thm6.5",
    "lemma7.2",
    "prop7.1",
    "prop7.3",
    "prop7.5",
    "cor7.7",
];

/// A labelled list of element names backing a failed claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChain {
    pub label: String,
    pub elements: Vec<String>,
}

/// `holds` is only meaningful when `applicable`; a claim outside its domain
/// reports `holds = true`. `witness` is present exactly when `holds` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub applicable: bool,
    pub holds: bool,
    pub witness: Option<Vec<WitnessChain>>,
}

impl ClaimResult {
    pub fn violated(&self) -> bool {
        self.applicable && !self.holds
    }
}

/// Down-sets of the J-order are enumerated exhaustively up to this many;
/// beyond it only principal ideals, the minimal ideal and `S` are used.
const IDEAL_FAMILY_LIMIT: usize = 64;

fn log2_ceil_plus_one(n: usize) -> usize {
    // ⌈log₂(n+1)⌉ is the bit length of n.
    (usize::BITS - n.leading_zeros()) as usize
}

fn pow2_minus_1(n: usize) -> usize {
    1usize.checked_shl(n as u32).map_or(usize::MAX, |p| p - 1)
}

fn heights(s: &FiniteSemigroup) -> [usize; 4] {
    Relation::ORDERED.map(|k| k_height(s, k))
}

fn index(k: Relation) -> usize {
    Relation::ORDERED
        .iter()
        .position(|&r| r == k)
        .expect("ordered relation")
}

struct Context<'a> {
    s: &'a FiniteSemigroup,
    r: HeightReport,
    structures: [GreenStructure; 4],
}

impl<'a> Context<'a> {
    fn structure(&self, k: Relation) -> &GreenStructure {
        &self.structures[index(k)]
    }

    fn h(&self, k: Relation) -> usize {
        self.r.height(k)
    }

    fn names(&self, elements: impl IntoIterator<Item = usize>) -> Vec<String> {
        elements.into_iter().map(|a| self.s.name(a)).collect()
    }

    fn chain(&self, k: Relation) -> WitnessChain {
        WitnessChain {
            label: format!("longest {k}-chain"),
            elements: self.names(self.structure(k).longest_chain()),
        }
    }

    fn chains(&self, ks: &[Relation]) -> Vec<WitnessChain> {
        ks.iter().map(|&k| self.chain(k)).collect()
    }

    fn set(&self, label: &str, elements: impl IntoIterator<Item = usize>) -> WitnessChain {
        WitnessChain {
            label: label.to_string(),
            elements: self.names(elements),
        }
    }

    fn union_of_minimal(&self, k: Relation) -> BTreeSet<usize> {
        let st = self.structure(k);
        st.minimal_classes()
            .into_iter()
            .flat_map(|c| st.class(c).iter().copied())
            .collect()
    }
}

fn quotient_chain(q: &FiniteSemigroup, k: Relation, label: &str) -> WitnessChain {
    WitnessChain {
        label: format!("longest {k}-chain of {label}"),
        elements: k_classes(q, k)
            .longest_chain()
            .into_iter()
            .map(|a| q.name(a))
            .collect(),
    }
}

fn result(
    id: &str,
    applicable: bool,
    holds: bool,
    witness: impl FnOnce() -> Vec<WitnessChain>,
) -> ClaimResult {
    let holds = !applicable || holds;
    ClaimResult {
        claim_id: id.to_string(),
        applicable,
        holds,
        witness: (!holds).then(witness),
    }
}

/// Nonempty ideals used by the quotient claims: every union of J-classes
/// closed downwards when there are few enough, otherwise the principal
/// ideals together with the minimal ideal and `S`.
fn ideal_family<'s>(s: &'s FiniteSemigroup, j: &GreenStructure) -> Vec<Ideal<'s>> {
    let order = j.order().expect("J is ordered");
    let c = j.class_count();
    let closed = |set: &[bool], x: usize| order.strictly_below(x).ones().all(|y| set[y]);
    let minimal = j.minimal_classes();
    let start: Vec<bool> = (0..c).map(|x| minimal.contains(&x)).collect();
    let mut seen: HashSet<Vec<bool>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut exhausted = true;
    'search: while let Some(set) = queue.pop_front() {
        for x in 0..c {
            if !set[x] && closed(&set, x) {
                let mut next = set.clone();
                next[x] = true;
                if seen.insert(next.clone()) {
                    if seen.len() > IDEAL_FAMILY_LIMIT {
                        exhausted = false;
                        break 'search;
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    let sets: BTreeSet<Vec<bool>> = if exhausted {
        seen.into_iter().collect()
    } else {
        let mut sets: BTreeSet<Vec<bool>> = (0..c)
            .map(|x| (0..c).map(|y| y == x || order.is_below(y, x)).collect())
            .collect();
        sets.insert((0..c).map(|x| minimal.contains(&x)).collect());
        sets.insert(vec![true; c]);
        sets
    };
    sets.into_iter()
        .map(|set| {
            let members = (0..c)
                .filter(|&x| set[x])
                .flat_map(|x| j.class(x).iter().copied());
            Ideal::new(s, members).expect("down-closed union of J-classes is an ideal")
        })
        .collect()
}

/// Evaluates every registered claim on `s`, in [`CLAIM_IDS`] order.
pub fn check_claims(s: &FiniteSemigroup) -> Result<Vec<ClaimResult>> {
    let r = analyze(s)?;
    check_claims_with_report(s, &r)
}

/// [`check_claims`] reusing an already computed report.
pub fn check_claims_with_report(
    s: &FiniteSemigroup,
    report: &HeightReport,
) -> Result<Vec<ClaimResult>> {
    use Relation::{H, J, L, R};
    let cx = Context {
        s,
        r: report.clone(),
        structures: Relation::ORDERED.map(|k| k_classes(s, k)),
    };
    let (hl, hr, hj, hh, he) = (cx.r.h_l, cx.r.h_r, cx.r.h_j, cx.r.h_h, cx.r.h_e);
    let stable = cx.r.stable();
    let mut out = Vec::with_capacity(CLAIM_IDS.len());

    let min_ideal: BTreeSet<usize> = minimal_ideal(s).members().into_iter().collect();

    let bad: Vec<Relation> = [L, R, J]
        .into_iter()
        .filter(|&k| cx.union_of_minimal(k) != min_ideal)
        .collect();
    out.push(result("lemma2.1", true, bad.is_empty(), || {
        let mut w = vec![cx.set("minimal ideal", min_ideal.iter().copied())];
        for &k in &bad {
            w.push(cx.set(
                &format!("union of minimal {k}-classes"),
                cx.union_of_minimal(k),
            ));
        }
        w
    }));

    let min_members: Vec<usize> = min_ideal.iter().copied().collect();
    let min_sub = s.subsemigroup(&min_members)?;
    let min_cs = is_completely_simple(&min_sub);
    let min_h = cx.union_of_minimal(H);
    out.push(result(
        "lemma2.2",
        true,
        min_cs && min_h == min_ideal,
        || {
            vec![
                cx.set("minimal ideal", min_ideal.iter().copied()),
                cx.set("union of minimal H-classes", min_h.iter().copied()),
            ]
        },
    ));

    let h_order = cx.structure(H);
    let power_fail = s.elements().find(|&a| {
        let an = s.power(a, hh);
        h_order.class_of(an) != h_order.class_of(s.power(an, 2))
    });
    out.push(result("lemma3.4", true, power_fail.is_none(), || {
        let a = power_fail.expect("failing element");
        vec![cx.set(
            &format!("a, a^{hh}, a^{}", 2 * hh),
            [a, s.power(a, hh), s.power(a, 2 * hh)],
        )]
    }));

    out.push(result(
        "prop3.5.3",
        stable,
        hh <= hl.min(hr) && hl.max(hr) <= hj,
        || cx.chains(&[L, R, J, H]),
    ));

    let p41 =
        (hl == 1) == (hj == 1 && cx.r.left_stable) && (hr == 1) == (hj == 1 && cx.r.right_stable);
    out.push(result("prop4.1", true, p41, || cx.chains(&[L, R, J])));

    // All of these describe the same semigroups; heights here are finite.
    let conditions = [
        hl == 1 && hr == 1,
        hl == 1,
        hl == 1 && stable,
        hr == 1,
        hr == 1 && stable,
        hj == 1 && stable,
        hh == 1,
        cx.r.completely_simple,
    ];
    out.push(result(
        "prop4.2",
        true,
        conditions.iter().all(|&c| c == conditions[0]),
        || cx.chains(&[L, R, J, H]),
    ));

    out.push(result(
        "prop4.3",
        hl == 2 || hr == 2,
        hj == 2 || hj == 3,
        || cx.chains(&[L, R, J]),
    ));

    let small = |x: usize| x == 2 || x == 3;
    let p44 = (hl != 2 || (hh == 2 && hr == hj && small(hj)))
        && (hr != 2 || (hh == 2 && hl == hj && small(hj)))
        && {
            let eq = [hl == 2 && hr == 2, hj == 2 && hh == 2, hj == 2 && stable];
            eq.iter().all(|&c| c == eq[0])
        };
    out.push(result("prop4.4", stable, p44, || cx.chains(&[L, R, J, H])));

    let family = ideal_family(s, cx.structure(J));
    let quotients: Vec<(FiniteSemigroup, [usize; 4])> = family
        .iter()
        .map(|i| {
            let q = rees_quotient(i);
            let h = heights(&q);
            (q, h)
        })
        .collect();

    let mono_fail = family.iter().zip(&quotients).find_map(|(i, (q, hq))| {
        [L, R, J]
            .into_iter()
            .find(|&k| hq[index(k)] > cx.h(k))
            .map(|k| (i, q, k))
    });
    out.push(result("prop5.2.1", true, mono_fail.is_none(), || {
        let (i, q, k) = mono_fail.expect("failing ideal");
        vec![
            cx.set("ideal I", i.members()),
            quotient_chain(q, k, "S/I"),
            cx.chain(k),
        ]
    }));

    let min_quotient = rees_quotient(&minimal_ideal(s));
    let hm = heights(&min_quotient);
    let eq_fail: Vec<Relation> = [L, R, J]
        .into_iter()
        .filter(|&k| hm[index(k)] != cx.h(k))
        .collect();
    out.push(result("prop5.2.3", min_cs, eq_fail.is_empty(), || {
        let mut w = vec![cx.set("minimal ideal", min_members.iter().copied())];
        for &k in &eq_fail {
            w.push(cx.chain(k));
            w.push(quotient_chain(&min_quotient, k, "S/M"));
        }
        w
    }));

    let star_fail = family.iter().zip(&quotients).find_map(|(i, (q, hq))| {
        Relation::ORDERED
            .into_iter()
            .find(|&k| cx.h(k) + 1 > height_within_ideal(cx.structure(k), i) + hq[index(k)])
            .map(|k| (i, q, k))
    });
    out.push(result("ineq_star", true, star_fail.is_none(), || {
        let (i, q, k) = star_fail.expect("failing ideal");
        vec![
            cx.set("ideal I", i.members()),
            cx.chain(k),
            quotient_chain(q, k, "S/I"),
        ]
    }));

    match s.zero() {
        Some(_) => {
            let socle = left_socle(s)?;
            let q = rees_quotient(&socle);
            let [ql, qr, qj, _] = heights(&q);
            let socle_w = || cx.set("left socle", socle.members());
            out.push(result("thm5.3.1", s.order() >= 2, hl == ql + 1, || {
                vec![socle_w(), cx.chain(L), quotient_chain(&q, L, "S/I")]
            }));
            let rs = cx.r.right_stable;
            out.push(result("thm5.3.2", rs, hr <= 2 * qr + 1, || {
                vec![socle_w(), cx.chain(R), quotient_chain(&q, R, "S/I")]
            }));
            let inner = height_within_ideal(cx.structure(R), &socle);
            out.push(result("thm5.3.2-internal", rs, inner <= qr + 2, || {
                vec![socle_w(), quotient_chain(&q, R, "S/I")]
            }));
            out.push(result(
                "thm5.3.3",
                rs,
                hj <= qr + qj + 1 && qr <= qj,
                || {
                    vec![
                        socle_w(),
                        cx.chain(J),
                        quotient_chain(&q, R, "S/I"),
                        quotient_chain(&q, J, "S/I"),
                    ]
                },
            ));
        }
        None => {
            for id in ["thm5.3.1", "thm5.3.2", "thm5.3.2-internal", "thm5.3.3"] {
                out.push(result(id, false, true, Vec::new));
            }
        }
    }

    match s.zero() {
        Some(z) => {
            let n = s.order();
            let u = u_of(s)?;
            let socle = left_socle(&u)?;
            let expected: BTreeSet<usize> = (n..2 * n + 1).chain([z]).collect();
            let found: BTreeSet<usize> = socle.members().into_iter().collect();
            // U/I with I the socle lists S ∖ {z} in order, then the zero.
            let q = rees_quotient(&socle);
            let image = |a: usize| {
                if a == z {
                    q.order() - 1
                } else if a < z {
                    a
                } else {
                    a - 1
                }
            };
            let iso = q.order() == n
                && s.elements().all(|a| {
                    s.elements()
                        .all(|b| image(s.mul(a, b)) == q.mul(image(a), image(b)))
                });
            out.push(result("lemma5.5.2", true, expected == found && iso, || {
                let name = |a: usize| u.name(a);
                vec![
                    WitnessChain {
                        label: "left socle of U(S)".into(),
                        elements: found.iter().map(|&a| name(a)).collect(),
                    },
                    WitnessChain {
                        label: "expected".into(),
                        elements: expected.iter().map(|&a| name(a)).collect(),
                    },
                ]
            }));
            let hu = heights(&u);
            out.push(result(
                "prop5.6",
                true,
                hu[0] == hl + 1 && hu[1] == 2 * hr + 1,
                || {
                    vec![
                        quotient_chain(&u, L, "U(S)"),
                        quotient_chain(&u, R, "U(S)"),
                        cx.chain(L),
                        cx.chain(R),
                    ]
                },
            ));
        }
        None => {
            out.push(result("lemma5.5.2", false, true, Vec::new));
            out.push(result("prop5.6", false, true, Vec::new));
        }
    }

    let bounds = |a: usize, b: usize| log2_ceil_plus_one(a) <= b && b <= pow2_minus_1(a);
    out.push(result(
        "thm6.1",
        stable,
        bounds(hl, hr) && bounds(hr, hl),
        || cx.chains(&[L, R]),
    ));

    let j_bounds = |a: usize| a <= hj && hj <= pow2_minus_1(a);
    out.push(result(
        "thm6.2",
        stable,
        j_bounds(hl) && j_bounds(hr),
        || cx.chains(&[L, R, J]),
    ));

    let n = hl.min(hr);
    out.push(result(
        "thm6.5",
        hl >= 2 && hr >= 2,
        hl.max(hr) <= hj && hj <= pow2_minus_1(n).min(hl + hr - 2),
        || cx.chains(&[L, R, J]),
    ));

    out.push(result("lemma7.2", true, he <= hl.min(hr).min(hh), || {
        cx.chains(&[L, R, H])
    }));

    out.push(result("prop7.1", cx.r.semisimple, hj <= hl.min(hr), || {
        cx.chains(&[L, R, J])
    }));

    out.push(result(
        "prop7.3",
        cx.r.regular,
        hl == hr && hr == hh && hh == he && he >= hj,
        || cx.chains(&[L, R, J, H]),
    ));

    let all_equal = hl == hr && hr == hh && hh == he && he == hj;
    let regular_stable = cx.r.regular && stable;
    let semisimple_stable = cx.r.semisimple && stable;
    let cs = cx.r.completely_semisimple;
    out.push(result(
        "prop7.5",
        regular_stable || cs || semisimple_stable,
        regular_stable && cs && semisimple_stable && all_equal,
        || cx.chains(&[L, R, J, H]),
    ));

    out.push(result("cor7.7", cx.r.regular, all_equal == stable, || {
        cx.chains(&[L, R, J, H])
    }));

    debug_assert_eq!(out.len(), CLAIM_IDS.len());
    debug_assert!(out.iter().zip(CLAIM_IDS).all(|(r, id)| r.claim_id == id));
    Ok(out)
}
