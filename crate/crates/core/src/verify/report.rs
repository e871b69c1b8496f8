use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::green::{idempotent_height, k_classes, k_height, longest_chain_oracle, Relation};
use crate::semigroup::FiniteSemigroup;
use crate::structure::{
    is_completely_semisimple, is_completely_simple, is_group_bound, is_inverse,
    is_inverse_by_idempotents, is_left_stable, is_regular, is_regular_by_idempotents,
    is_right_stable, is_semisimple,
};

/// Version tag written next to every serialized report.
pub const SCHEMA: &str = "green-heights/1";

/// Above this order the element-level chain oracle is skipped.
pub const ORACLE_CHECK_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    #[serde(rename = "H_L")]
    pub h_l: usize,
    #[serde(rename = "H_R")]
    pub h_r: usize,
    #[serde(rename = "H_J")]
    pub h_j: usize,
    #[serde(rename = "H_H")]
    pub h_h: usize,
    #[serde(rename = "H_E")]
    pub h_e: usize,
    pub left_stable: bool,
    pub right_stable: bool,
    pub group_bound: bool,
    pub regular: bool,
    pub inverse: bool,
    pub semisimple: bool,
    pub completely_semisimple: bool,
    pub completely_simple: bool,
    pub has_zero: bool,
}

impl HeightReport {
    pub fn height(&self, relation: Relation) -> usize {
        match relation {
            Relation::L => self.h_l,
            Relation::R => self.h_r,
            Relation::J => self.h_j,
            Relation::H => self.h_h,
            Relation::D => panic!("Green's D relation has no height"),
        }
    }

    pub fn stable(&self) -> bool {
        self.left_stable && self.right_stable
    }

    /// `(H_L, H_R, H_J)`.
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.h_l, self.h_r, self.h_j)
    }
}

fn inconsistency(message: String) -> Error {
    Error::Inconsistency(message)
}

/// All heights and structural flags of `s`.
///
/// Fails with [`Error::Inconsistency`] when an internal cross-check breaks:
/// condensation heights against the element-level oracle (small orders),
/// stability and group-boundedness (which every finite semigroup has),
/// `D = J`, and the two characterisations of regularity and inversity.
pub fn analyze(s: &FiniteSemigroup) -> Result<HeightReport> {
    let [h_l, h_r, h_j, h_h] = Relation::ORDERED.map(|k| k_height(s, k));
    if s.order() <= ORACLE_CHECK_LIMIT {
        for (k, h) in Relation::ORDERED.into_iter().zip([h_l, h_r, h_j, h_h]) {
            let oracle = longest_chain_oracle(s, k);
            if oracle != h {
                return Err(inconsistency(format!(
                    "{k}-height {h} disagrees with chain oracle {oracle}"
                )));
            }
        }
    }
    let left_stable = is_left_stable(s);
    let right_stable = is_right_stable(s);
    let group_bound = is_group_bound(s);
    if !(left_stable && right_stable && group_bound) {
        return Err(inconsistency(format!(
            "finite semigroup reported left_stable={left_stable}, right_stable={right_stable}, group_bound={group_bound}"
        )));
    }
    if k_classes(s, Relation::D).class_map() != k_classes(s, Relation::J).class_map() {
        return Err(inconsistency("D and J partitions differ".into()));
    }
    let regular = is_regular(s);
    if regular != is_regular_by_idempotents(s) {
        return Err(inconsistency("regularity criteria disagree".into()));
    }
    let inverse = is_inverse(s);
    if inverse != is_inverse_by_idempotents(s) {
        return Err(inconsistency("inverse-semigroup criteria disagree".into()));
    }
    Ok(HeightReport {
        h_l,
        h_r,
        h_j,
        h_h,
        h_e: idempotent_height(s),
        left_stable,
        right_stable,
        group_bound,
        regular,
        inverse,
        semisimple: is_semisimple(s)?,
        completely_semisimple: is_completely_semisimple(s)?,
        completely_simple: is_completely_simple(s),
        has_zero: s.zero().is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixture;

    #[test]
    fn trivial_report() {
        let r = analyze(&FiniteSemigroup::trivial()).unwrap();
        assert_eq!([r.h_l, r.h_r, r.h_j, r.h_h, r.h_e], [1; 5]);
        assert!(r.regular && r.inverse && r.completely_simple && r.has_zero);
    }

    #[test]
    fn fixtures() {
        let r = analyze(&fixture("fig2_u2").unwrap()).unwrap();
        assert_eq!((r.triple(), r.h_h), ((3, 3, 4), 2));
        let r = analyze(&fixture("fig1_u").unwrap()).unwrap();
        assert_eq!(r.triple(), (3, 7, 7));
    }

    #[test]
    fn json_field_names() {
        let r = analyze(&FiniteSemigroup::trivial()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "H_L",
            "H_R",
            "H_J",
            "H_H",
            "H_E",
            "has_zero",
            "completely_semisimple",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
