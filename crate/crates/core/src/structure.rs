//! Structural predicates: stability, group-boundedness, simplicity, socles,
//! principal factors, regularity and semisimplicity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::green::{k_classes, preorder, Relation};
use crate::ideal::Ideal;
use crate::semigroup::FiniteSemigroup;

/// `≤_K ∩ J = K`, checked pair by pair.
fn one_sided_stable(s: &FiniteSemigroup, relation: Relation) -> bool {
    let k = preorder(s, relation);
    let j = preorder(s, Relation::J);
    s.elements().all(|a| {
        s.elements()
            .all(|b| !(k.leq(a, b) && j.equivalent(a, b)) || k.equivalent(a, b))
    })
}

pub fn is_left_stable(s: &FiniteSemigroup) -> bool {
    one_sided_stable(s, Relation::L)
}

pub fn is_right_stable(s: &FiniteSemigroup) -> bool {
    one_sided_stable(s, Relation::R)
}

pub fn is_stable(s: &FiniteSemigroup) -> bool {
    is_left_stable(s) && is_right_stable(s)
}

/// For each element, the least `k` with `a^k H a^{2k}`, i.e. the least power
/// lying in a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupBound {
    pub exponents: Vec<Option<usize>>,
}

impl GroupBound {
    pub fn holds(&self) -> bool {
        self.exponents.iter().all(Option::is_some)
    }

    pub fn max_exponent(&self) -> Option<usize> {
        self.exponents
            .iter()
            .copied()
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .max()
    }
}

/// Searches powers up to `|S|`; the sequence `a, a², …` enters its cycle
/// within that many steps.
pub fn group_bound(s: &FiniteSemigroup) -> GroupBound {
    let h = preorder(s, Relation::H);
    let exponents = s
        .elements()
        .map(|a| {
            let mut power = a;
            for k in 1..=s.order() {
                let double = s.power(power, 2);
                if h.equivalent(power, double) {
                    return Some(k);
                }
                power = s.mul(power, a);
            }
            None
        })
        .collect();
    GroupBound { exponents }
}

pub fn is_group_bound(s: &FiniteSemigroup) -> bool {
    group_bound(s).holds()
}

/// The unique minimal J-class.
pub fn minimal_ideal(s: &FiniteSemigroup) -> Ideal<'_> {
    let j = k_classes(s, Relation::J);
    let minimal = j.minimal_classes();
    assert_eq!(
        minimal.len(),
        1,
        "a finite semigroup has one minimal J-class"
    );
    Ideal::new(s, j.class(minimal[0]).iter().copied()).expect("minimal J-class is an ideal")
}

pub fn is_simple(s: &FiniteSemigroup) -> bool {
    k_classes(s, Relation::J).class_count() == 1
}

/// Simple, and a union of groups (`a H a²` for every `a`).
pub fn is_completely_simple(s: &FiniteSemigroup) -> bool {
    if !is_simple(s) {
        return false;
    }
    let h = preorder(s, Relation::H);
    s.elements().all(|a| h.equivalent(a, s.mul(a, a)))
}

/// `S² ≠ {0}` and the J-classes are `{0}` and `S ∖ {0}`.
pub fn is_0_simple(s: &FiniteSemigroup) -> Result<bool> {
    let zero = s.zero().ok_or(Error::NoZero)?;
    let nonzero_square = s
        .elements()
        .any(|a| s.elements().any(|b| s.mul(a, b) != zero));
    let j = k_classes(s, Relation::J);
    Ok(nonzero_square && j.class_count() == 2)
}

/// 0-simple with both 0-minimal L-classes and 0-minimal R-classes.
pub fn is_completely_0_simple(s: &FiniteSemigroup) -> Result<bool> {
    if !is_0_simple(s)? {
        return Ok(false);
    }
    let zero = s.zero().expect("checked by is_0_simple");
    Ok([Relation::L, Relation::R].into_iter().all(|k| {
        let structure = k_classes(s, k);
        !structure
            .zero_minimal_classes(structure.class_of(zero))
            .is_empty()
    }))
}

fn socle(s: &FiniteSemigroup, relation: Relation) -> Result<Ideal<'_>> {
    let zero = s.zero().ok_or(Error::NoZero)?;
    let structure = k_classes(s, relation);
    let mut members = vec![zero];
    for c in structure.zero_minimal_classes(structure.class_of(zero)) {
        members.extend_from_slice(structure.class(c));
    }
    Ideal::new(s, members).map_err(|e| {
        Error::Inconsistency(format!("{relation}-socle is not a two-sided ideal: {e}"))
    })
}

/// `{0}` together with every 0-minimal L-class.
pub fn left_socle(s: &FiniteSemigroup) -> Result<Ideal<'_>> {
    socle(s, Relation::L)
}

/// `{0}` together with every 0-minimal R-class.
pub fn right_socle(s: &FiniteSemigroup) -> Result<Ideal<'_>> {
    socle(s, Relation::R)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Simple,
    ZeroSimple,
    Null,
}

#[derive(Clone, Debug)]
pub struct PrincipalFactor {
    pub j_class: Vec<usize>,
    /// The minimal ideal itself, or `J ∪ {0}` with the zero last.
    pub factor: FiniteSemigroup,
    pub kind: FactorKind,
}

/// One factor per J-class, in J-class index order.
///
/// The minimal ideal is its own factor, with no zero adjoined. Any other
/// J-class `J` gives the Rees quotient `S¹JS¹ / (S¹JS¹ ∖ J)`, whose
/// universe is `J ∪ {0}`.
pub fn principal_factors(s: &FiniteSemigroup) -> Result<Vec<PrincipalFactor>> {
    let j = k_classes(s, Relation::J);
    let minimal = j.minimal_classes();
    let mut out = Vec::with_capacity(j.class_count());
    for c in 0..j.class_count() {
        let class = j.class(c).to_vec();
        if minimal.contains(&c) {
            let factor = s.subsemigroup(&class)?;
            if !is_simple(&factor) {
                return Err(Error::Inconsistency("minimal ideal is not simple".into()));
            }
            out.push(PrincipalFactor {
                j_class: class,
                factor,
                kind: FactorKind::Simple,
            });
            continue;
        }
        // Within S¹JS¹ every product that leaves J lands in S¹JS¹ ∖ J and
        // collapses to the new zero, so only J itself is needed.
        let k = class.len();
        let mut index = vec![k; s.order()];
        for (i, &a) in class.iter().enumerate() {
            index[a] = i;
        }
        let mut table = Vec::with_capacity((k + 1) * (k + 1));
        for &a in &class {
            for &b in &class {
                table.push(index[s.mul(a, b)]);
            }
            table.push(k);
        }
        table.extend(std::iter::repeat_n(k, k + 1));
        let mut names: Vec<String> = class.iter().map(|&a| s.name(a)).collect();
        names.push(crate::semigroup::fresh_name(&names, "0"));
        let factor = FiniteSemigroup::from_construction(k + 1, table, Some(names))?;
        let null = factor.table().iter().all(|&p| p == k);
        let kind = if null {
            FactorKind::Null
        } else {
            if !is_0_simple(&factor)? {
                return Err(Error::Inconsistency(format!(
                    "principal factor of J-class {c} is neither null nor 0-simple"
                )));
            }
            FactorKind::ZeroSimple
        };
        out.push(PrincipalFactor {
            j_class: class,
            factor,
            kind,
        });
    }
    Ok(out)
}

/// Every `a` has some `b` with `a = aba` and `b = bab`.
pub fn is_regular(s: &FiniteSemigroup) -> bool {
    s.elements().all(|a| inverses(s, a).next().is_some())
}

/// Every element has exactly one inverse.
pub fn is_inverse(s: &FiniteSemigroup) -> bool {
    s.elements().all(|a| inverses(s, a).count() == 1)
}

fn inverses(s: &FiniteSemigroup, a: usize) -> impl Iterator<Item = usize> + '_ {
    s.elements()
        .filter(move |&b| s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b)
}

fn idempotents_per_class(s: &FiniteSemigroup) -> Vec<usize> {
    let mut counts = Vec::new();
    for k in [Relation::L, Relation::R] {
        let structure = k_classes(s, k);
        counts.extend(
            structure
                .classes()
                .iter()
                .map(|class| class.iter().filter(|&&a| s.is_idempotent(a)).count()),
        );
    }
    counts
}

/// Every L-class and every R-class contains an idempotent.
pub fn is_regular_by_idempotents(s: &FiniteSemigroup) -> bool {
    idempotents_per_class(s).iter().all(|&c| c >= 1)
}

/// Every L-class and every R-class contains exactly one idempotent.
pub fn is_inverse_by_idempotents(s: &FiniteSemigroup) -> bool {
    idempotents_per_class(s).iter().all(|&c| c == 1)
}

/// No principal factor is null.
pub fn is_semisimple(s: &FiniteSemigroup) -> Result<bool> {
    Ok(principal_factors(s)?
        .iter()
        .all(|f| f.kind != FactorKind::Null))
}

/// Every principal factor is completely simple or completely 0-simple.
pub fn is_completely_semisimple(s: &FiniteSemigroup) -> Result<bool> {
    for f in principal_factors(s)? {
        let ok = match f.kind {
            FactorKind::Simple => is_completely_simple(&f.factor),
            FactorKind::ZeroSimple => is_completely_0_simple(&f.factor)?,
            FactorKind::Null => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::k_height;

    fn fig1() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1, 2], vec![2, 2, 2], vec![2, 2, 2]]).unwrap()
    }

    /// Full transformation monoid on two points, maps acting on the right:
    /// identity, swap, const-0, const-1.
    fn t2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 2, 3],
            vec![2, 3, 2, 3],
            vec![3, 2, 2, 3],
        ])
        .unwrap()
    }

    /// {x, y, xy, yx, 0}: words with distinct letters, everything else 0.
    fn sqfree2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![
            vec![4, 2, 4, 4, 4],
            vec![3, 4, 4, 4, 4],
            vec![4, 4, 4, 4, 4],
            vec![4, 4, 4, 4, 4],
            vec![4, 4, 4, 4, 4],
        ])
        .unwrap()
    }

    #[test]
    fn stability_examples() {
        assert!(is_stable(&FiniteSemigroup::left_zero(3).unwrap()));
        assert!(is_stable(&fig1()));
        assert!(is_stable(&t2()));
    }

    #[test]
    fn group_bound_exponents() {
        let g = group_bound(&FiniteSemigroup::cyclic_group(4).unwrap());
        assert!(g.exponents.iter().all(|&e| e == Some(1)));
        let sq = group_bound(&sqfree2());
        assert!(sq.holds());
        assert_eq!(
            sq.exponents,
            vec![Some(2), Some(2), Some(2), Some(2), Some(1)]
        );
        assert!(sq.max_exponent().unwrap() <= k_height(&sqfree2(), Relation::H));
    }

    #[test]
    fn minimal_ideals() {
        assert_eq!(minimal_ideal(&fig1()).members(), vec![2]);
        assert!(minimal_ideal(&FiniteSemigroup::left_zero(3).unwrap()).is_whole());
        assert_eq!(minimal_ideal(&t2()).members(), vec![2, 3]);
    }

    #[test]
    fn simplicity() {
        let g = FiniteSemigroup::cyclic_group(3).unwrap();
        assert!(is_simple(&g) && is_completely_simple(&g));
        assert!(is_completely_simple(
            &FiniteSemigroup::left_zero(2).unwrap()
        ));
        assert!(!is_simple(&fig1()));
        assert_eq!(is_0_simple(&g), Err(Error::NoZero));
        // The 2-element null semigroup is not 0-simple.
        assert!(!is_0_simple(&FiniteSemigroup::null(2).unwrap()).unwrap());
        // {1, 0} is completely 0-simple.
        let chain = FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(is_completely_0_simple(&chain).unwrap());
    }

    #[test]
    fn socles() {
        let null = FiniteSemigroup::null(4).unwrap();
        assert!(left_socle(&null).unwrap().is_whole());
        assert!(left_socle(&fig1()).unwrap().is_whole());
        assert_eq!(right_socle(&fig1()).unwrap().members(), vec![1, 2]);
        // L-classes below {x}: only {yx}. Below {y}: {xy}.
        assert_eq!(left_socle(&sqfree2()).unwrap().members(), vec![2, 3, 4]);
        assert_eq!(
            left_socle(&FiniteSemigroup::trivial()).unwrap().members(),
            vec![0]
        );
        assert_eq!(
            left_socle(&FiniteSemigroup::cyclic_group(2).unwrap()).unwrap_err(),
            Error::NoZero
        );
    }

    #[test]
    fn principal_factor_kinds() {
        let g = FiniteSemigroup::cyclic_group(3).unwrap();
        let pf = principal_factors(&g).unwrap();
        assert_eq!(pf.len(), 1);
        assert_eq!(pf[0].kind, FactorKind::Simple);
        assert_eq!(pf[0].factor, g);

        let sq = principal_factors(&sqfree2()).unwrap();
        assert_eq!(sq.len(), 5);
        assert!(sq
            .iter()
            .filter(|f| f.j_class != vec![4])
            .all(|f| f.kind == FactorKind::Null));

        let t = principal_factors(&t2()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].j_class, vec![0, 1]);
        assert_eq!(t[0].kind, FactorKind::ZeroSimple);
        assert_eq!(t[0].factor.order(), 3);
        assert_eq!(t[1].j_class, vec![2, 3]);
        assert_eq!(t[1].kind, FactorKind::Simple);
        assert!(is_completely_simple(&t[1].factor));
    }

    #[test]
    fn regularity() {
        let g = FiniteSemigroup::cyclic_group(4).unwrap();
        assert!(is_regular(&g) && is_inverse(&g));
        assert!(is_regular_by_idempotents(&g) && is_inverse_by_idempotents(&g));
        assert!(!is_regular(&sqfree2()));
        assert!(!is_regular_by_idempotents(&sqfree2()));
        let chain = FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(is_inverse(&chain));
        assert!(is_regular(&t2()) && !is_inverse(&t2()));
    }

    #[test]
    fn semisimplicity() {
        assert!(is_semisimple(&FiniteSemigroup::cyclic_group(2).unwrap()).unwrap());
        assert!(!is_semisimple(&sqfree2()).unwrap());
        assert!(is_completely_semisimple(&t2()).unwrap());
    }
}
