//! Small named semigroups used as reference points.

use super::u_of;
use crate::error::{Error, Result};
use crate::semigroup::{build_semigroup, FiniteSemigroup};

/// Every name [`fixture`] understands.
pub const FIXTURE_NAMES: [&str; 4] = ["fig1_s", "fig1_u", "fig2_u2", "bicyclic_truncation_none"];

fn named(rows: Vec<Vec<usize>>, names: &[&str]) -> FiniteSemigroup {
    build_semigroup(
        rows,
        Some(names.iter().map(|n| n.to_string()).collect()),
        None,
        None,
    )
    .expect("fixture table")
}

fn fig1_s() -> FiniteSemigroup {
    // U({e}): e is a left identity, a² = z.
    named(
        vec![vec![0, 1, 2], vec![2, 2, 2], vec![2, 2, 2]],
        &["e", "a", "z"],
    )
}

fn fig2_u2() -> FiniteSemigroup {
    // aa = a, ac = c, ba = b, bc = d; every other product is 0.
    named(
        vec![
            vec![0, 4, 2, 4, 4],
            vec![1, 4, 3, 4, 4],
            vec![4; 5],
            vec![4; 5],
            vec![4; 5],
        ],
        &["a", "b", "c", "d", "0"],
    )
}

/// Looks up a fixture by name.
///
/// `bicyclic_truncation_none` names the bicyclic monoid, which has no
/// finite model, so it is always an error.
pub fn fixture(name: &str) -> Result<FiniteSemigroup> {
    match name {
        "fig1_s" => Ok(fig1_s()),
        "fig1_u" => u_of(&fig1_s()),
        "fig2_u2" => Ok(fig2_u2()),
        "bicyclic_truncation_none" => Err(Error::NoFiniteModel(
            "the bicyclic monoid is infinite and no finite truncation is a semigroup".into(),
        )),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_fixture_resolves_or_has_no_model() {
        for name in FIXTURE_NAMES {
            match fixture(name) {
                Ok(s) => assert!(s.is_associative(), "{name}"),
                Err(e) => assert!(matches!(e, Error::NoFiniteModel(_)), "{name}"),
            }
        }
        assert_eq!(
            fixture("nope").unwrap_err(),
            Error::UnknownFixture("nope".into())
        );
    }

    #[test]
    fn fig1_facts() {
        let s = fixture("fig1_s").unwrap();
        assert_eq!(s.zero(), Some(2));
        assert_eq!(s.identity(), None);
        assert_eq!(s.mul(1, 1), 2);
    }
}
