//! Constructions of semigroups with prescribed heights.

mod fixtures;
mod recipe;

use std::collections::HashMap;

use itertools::Itertools;

pub use fixtures::{fixture, FIXTURE_NAMES};
pub use recipe::{ConstructionRecipe, Operand};

use crate::error::{Error, Result};
use crate::green::{k_height, preorder, Relation};
use crate::ideal::Ideal;
use crate::semigroup::{adjoin_identity, direct_product, fresh_name, opposite, FiniteSemigroup};

/// Index of every element of the parent in `S/I`: elements outside `I` keep
/// their relative order, and all of `I` maps to the zero, which comes last.
pub fn rees_projection(ideal: &Ideal<'_>) -> Vec<usize> {
    let s = ideal.parent();
    let kept = s.order() - ideal.len();
    let mut next = 0;
    s.elements()
        .map(|a| {
            if ideal.contains(a) {
                kept
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

/// The Rees quotient `S/I = (S ∖ I) ∪ {0}`.
pub fn rees_quotient(ideal: &Ideal<'_>) -> FiniteSemigroup {
    let s = ideal.parent();
    let proj = rees_projection(ideal);
    let kept: Vec<usize> = s.elements().filter(|&a| !ideal.contains(a)).collect();
    let zero = kept.len();
    let m = zero + 1;
    let mut table = Vec::with_capacity(m * m);
    for &a in &kept {
        for &b in &kept {
            table.push(proj[s.mul(a, b)]);
        }
        table.push(zero);
    }
    table.extend(std::iter::repeat_n(zero, m));
    let names = s.names().map(|names| {
        let mut out: Vec<String> = kept.iter().map(|&a| names[a].clone()).collect();
        out.push(fresh_name(&out, "0"));
        out
    });
    FiniteSemigroup::from_construction(m, table, names).expect("Rees quotient")
}

/// The ideal extension `U(S) = S ∪ {x_s : s ∈ S¹}` of a null semigroup,
/// with `a·x_s = x_s`, `x_s·a = x_{sa}` and `x_s·x_t = x_z`.
///
/// Indexing: `S` keeps `0..n`, `x_1` is `n` and `x_s` is `n + 1 + s`. The
/// zero of the result is `x_z`.
pub fn u_of(s: &FiniteSemigroup) -> Result<FiniteSemigroup> {
    let z = s.zero().ok_or(Error::NoZero)?;
    let n = s.order();
    let m = 2 * n + 1;
    let x = |t: Option<usize>| match t {
        None => n,
        Some(t) => n + 1 + t,
    };
    let mut table = Vec::with_capacity(m * m);
    for a in 0..n {
        table.extend_from_slice(s.row(a));
        table.extend(n..m);
    }
    for xs in std::iter::once(None).chain((0..n).map(Some)) {
        for b in 0..n {
            table.push(x(Some(match xs {
                None => b,
                Some(t) => s.mul(t, b),
            })));
        }
        table.extend(std::iter::repeat_n(x(Some(z)), n + 1));
    }
    let mut names: Vec<String> = s.elements().map(|a| s.name(a)).collect();
    let fresh = fresh_name(&names, "x1");
    names.push(fresh);
    for t in 0..n {
        let fresh = fresh_name(&names, &format!("x{}", s.name(t)));
        names.push(fresh);
    }
    FiniteSemigroup::from_construction(m, table, Some(names))
}

fn pow2_minus_1(n: usize) -> usize {
    (1usize << n) - 1
}

/// Largest `n` accepted by [`nm_family`].
pub const NM_MAX_N: usize = 9;
/// Largest `n` accepted by [`asym_family`].
pub const ASYM_MAX_N: usize = 5;

/// A J-trivial semigroup `S` with `H_L(S) = n` and `H_R(S) = H_J(S) = |S| = m`,
/// for `1 ≤ n ≤ m ≤ 2ⁿ − 1`.
pub fn nm_family(n: usize, m: usize) -> Result<FiniteSemigroup> {
    nm_family_with_left_identity(n, m).map(|(s, _)| s)
}

/// [`nm_family`] together with a left identity of the result, tracked
/// through every step of the recursion.
pub fn nm_family_with_left_identity(n: usize, m: usize) -> Result<(FiniteSemigroup, usize)> {
    if n == 0 || n > NM_MAX_N || m < n || m > pow2_minus_1(n) {
        return Err(Error::Range(format!(
            "nm family needs 1 <= n <= {NM_MAX_N} and n <= m <= 2^n - 1, got n={n}, m={m}"
        )));
    }
    if n == 1 {
        return Ok((FiniteSemigroup::trivial(), 0));
    }
    if m <= 1 << (n - 1) {
        let (prev, _) = nm_family_with_left_identity(n - 1, m - 1)?;
        let identity = prev.order();
        return Ok((adjoin_identity(&prev), identity));
    }
    let (prev, e) = nm_family_with_left_identity(n - 1, pow2_minus_1(n - 1))?;
    let u = u_of(&prev)?;
    // e·x_s = x_s, so a left identity of S stays one in U(S).
    if m == u.order() {
        return Ok((strip_names(u), e));
    }
    let chain = total_r_chain(&u)?;
    let ideal = Ideal::new(&u, chain[m - 1..].iter().copied())?;
    let proj = rees_projection(&ideal);
    let t = strip_names(rees_quotient(&ideal));
    Ok((t, proj[e]))
}

/// Elements of `s` listed from the top of its R-order down, failing unless
/// that order is a chain.
fn total_r_chain(s: &FiniteSemigroup) -> Result<Vec<usize>> {
    let r = preorder(s, Relation::R);
    let mut chain: Vec<usize> = s.elements().collect();
    chain.sort_by_key(|&a| std::cmp::Reverse(r.down_set(a).count_ones(..)));
    for w in chain.windows(2) {
        if !r.strictly_below(w[1], w[0]) {
            return Err(Error::Inconsistency(
                "R-order of U(S) is not a chain".into(),
            ));
        }
    }
    Ok(chain)
}

fn strip_names(s: FiniteSemigroup) -> FiniteSemigroup {
    if s.names().is_none() {
        return s;
    }
    FiniteSemigroup::from_construction(s.order(), s.table().to_vec(), None).expect("same table")
}

/// Heights `(H_L = H_R, H_J)` that [`asym_family`] attains, or `None` for
/// the degenerate `n = 1`.
pub fn asym_family_formula(n: usize) -> Option<(usize, usize)> {
    (n >= 2).then(|| ((1 << n) + n - 3, (1 << (n + 1)) - 4))
}

/// `U_n = (S × T) / I` where `S = nm_family(n, 2ⁿ − 1)` has a left identity,
/// `T` is its opposite and `I = (S × {0_T}) ∪ ({0_S} × T)`.
///
/// For `n ≥ 2`, `H_L = H_R = 2ⁿ + n − 3` and `H_J = 2ⁿ⁺¹ − 4`. At `n = 1`
/// the product collapses entirely and the trivial semigroup comes back;
/// [`asym_family_formula`] flags that case.
pub fn asym_family(n: usize) -> Result<FiniteSemigroup> {
    if n == 0 || n > ASYM_MAX_N {
        return Err(Error::Range(format!(
            "asym family needs 1 <= n <= {ASYM_MAX_N}, got {n}"
        )));
    }
    let (s, e) = nm_family_with_left_identity(n, pow2_minus_1(n))?;
    if s.elements().any(|a| s.mul(e, a) != a) {
        return Err(Error::Inconsistency(
            "lost track of the left identity".into(),
        ));
    }
    let t = opposite(&s);
    let zs = s.zero().ok_or(Error::NoZero)?;
    let zt = t.zero().ok_or(Error::NoZero)?;
    let product = direct_product(&s, &t);
    let width = t.order();
    let ideal = Ideal::new(
        &product,
        product
            .elements()
            .filter(|&p| p / width == zs || p % width == zt),
    )?;
    let u = rees_quotient(&ideal);
    if let Some((side, j)) = asym_family_formula(n) {
        let found = [Relation::L, Relation::R, Relation::J].map(|k| k_height(&u, k));
        if found != [side, side, j] {
            return Err(Error::Inconsistency(format!(
                "asym family at n={n} has heights {found:?}, expected [{side}, {side}, {j}]"
            )));
        }
    }
    Ok(u)
}

/// Largest alphabet accepted by [`squarefree_words`].
pub const SQUAREFREE_MAX_K: usize = 6;
const LETTERS: [char; SQUAREFREE_MAX_K] = ['x', 'y', 'z', 'u', 'v', 'w'];

/// Words over `k` letters in which no letter repeats, plus a zero that
/// absorbs every product repeating a letter.
///
/// Words are indexed by length, then lexicographically; the zero is last.
pub fn squarefree_words(k: usize) -> Result<FiniteSemigroup> {
    if k == 0 || k > SQUAREFREE_MAX_K {
        return Err(Error::Range(format!(
            "square-free words need 1 <= k <= {SQUAREFREE_MAX_K}, got {k}"
        )));
    }
    let words: Vec<Vec<usize>> = (1..=k).flat_map(|len| (0..k).permutations(len)).collect();
    let index: HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let zero = words.len();
    let m = zero + 1;
    let masks: Vec<u32> = words
        .iter()
        .map(|w| w.iter().fold(0, |acc, &l| acc | (1 << l)))
        .collect();
    let mut table = Vec::with_capacity(m * m);
    let mut buf = Vec::with_capacity(k);
    for (a, wa) in words.iter().enumerate() {
        for (b, wb) in words.iter().enumerate() {
            if masks[a] & masks[b] != 0 {
                table.push(zero);
            } else {
                buf.clear();
                buf.extend_from_slice(wa);
                buf.extend_from_slice(wb);
                table.push(index[buf.as_slice()]);
            }
        }
        table.push(zero);
    }
    table.extend(std::iter::repeat_n(zero, m));
    let mut names: Vec<String> = words
        .iter()
        .map(|w| w.iter().map(|&l| LETTERS[l]).collect())
        .collect();
    names.push("0".into());
    FiniteSemigroup::from_construction(m, table, Some(names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_closure;

    fn heights(s: &FiniteSemigroup) -> [usize; 4] {
        Relation::ORDERED.map(|k| k_height(s, k))
    }

    #[test]
    fn quotient_by_everything_is_trivial() {
        let s = fixture("fig1_s").unwrap();
        let q = rees_quotient(&Ideal::full(&s));
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_projection_is_a_homomorphism() {
        let s = fixture("fig1_u").unwrap();
        let ideal = ideal_closure(&s, [s.element_by_name("x1").unwrap()]).unwrap();
        let q = rees_quotient(&ideal);
        assert!(q.is_associative());
        let p = rees_projection(&ideal);
        for a in s.elements() {
            for b in s.elements() {
                assert_eq!(p[s.mul(a, b)], q.mul(p[a], p[b]));
            }
        }
    }

    #[test]
    fn u_of_trivial_is_fig1() {
        let u = u_of(&FiniteSemigroup::trivial()).unwrap();
        assert_eq!(u.table(), fixture("fig1_s").unwrap().table());
    }

    #[test]
    fn u_of_fig1() {
        let u = u_of(&fixture("fig1_s").unwrap()).unwrap();
        assert_eq!(u.order(), 7);
        assert!(u.is_associative());
        assert_eq!(u.zero(), Some(6));
        assert_eq!(heights(&u)[..3], [3, 7, 7]);
        assert_eq!(u.names().unwrap(), ["e", "a", "z", "x1", "xe", "xa", "xz"]);
    }

    #[test]
    fn u_of_needs_zero() {
        assert_eq!(
            u_of(&FiniteSemigroup::cyclic_group(2).unwrap()).unwrap_err(),
            Error::NoZero
        );
    }

    #[test]
    fn nm_family_small_cases() {
        assert_eq!(nm_family(1, 1).unwrap(), FiniteSemigroup::trivial());
        let s = nm_family(2, 3).unwrap();
        assert_eq!(s.table(), fixture("fig1_s").unwrap().table());
        assert!(nm_family(2, 4).is_err());
        assert!(nm_family(3, 2).is_err());
        assert!(nm_family(0, 0).is_err());
    }

    #[test]
    fn nm_family_tracks_left_identity() {
        for n in 1..=4 {
            for m in n..(1 << n) {
                let (s, e) = nm_family_with_left_identity(n, m).unwrap();
                assert!(s.elements().all(|a| s.mul(e, a) == a), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn asym_two_matches_fixture_shape() {
        let u = asym_family(2).unwrap();
        assert_eq!(u.order(), 5);
        assert_eq!(heights(&u), [3, 3, 4, 2]);
        assert_eq!(asym_family_formula(2), Some((3, 4)));
        assert_eq!(asym_family_formula(1), None);
        assert_eq!(asym_family(1).unwrap().order(), 1);
    }

    #[test]
    fn squarefree_orders() {
        let orders: Vec<usize> = (1..=4)
            .map(|k| squarefree_words(k).unwrap().order())
            .collect();
        assert_eq!(orders, vec![2, 5, 16, 65]);
        let s = squarefree_words(2).unwrap();
        assert_eq!(s.names().unwrap(), ["x", "y", "xy", "yx", "0"]);
        assert!(s.is_associative());
        assert!(squarefree_words(0).is_err());
        assert!(squarefree_words(7).is_err());
    }
}
