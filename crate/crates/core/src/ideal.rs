use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// A two-sided ideal of a borrowed parent semigroup.
#[derive(Clone, Debug)]
pub struct Ideal<'s> {
    parent: &'s FiniteSemigroup,
    members: FixedBitSet,
}

impl<'s> Ideal<'s> {
    /// Checks that `members` is a nonempty two-sided ideal of `parent`.
    pub fn new(
        parent: &'s FiniteSemigroup,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = parent.order();
        let mut set = FixedBitSet::with_capacity(n);
        for m in members {
            if m >= n {
                return Err(Error::InvalidIdeal(format!("element {m} out of range")));
            }
            set.insert(m);
        }
        if set.count_ones(..) == 0 {
            return Err(Error::EmptyIdeal);
        }
        for i in set.ones() {
            for s in 0..n {
                for p in [parent.mul(s, i), parent.mul(i, s)] {
                    if !set.contains(p) {
                        return Err(Error::InvalidIdeal(format!(
                            "{} is a member but {} is not",
                            parent.name(i),
                            parent.name(p)
                        )));
                    }
                }
            }
        }
        Ok(Ideal {
            parent,
            members: set,
        })
    }

    /// The whole semigroup.
    pub fn full(parent: &'s FiniteSemigroup) -> Self {
        let mut members = FixedBitSet::with_capacity(parent.order());
        members.insert_range(..);
        Ideal { parent, members }
    }

    pub fn parent(&self) -> &'s FiniteSemigroup {
        self.parent
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn member_set(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.parent.order()
    }
}

impl PartialEq for Ideal<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Ideal<'_> {}

/// Smallest two-sided ideal containing `seed`, i.e. `S¹ X S¹`.
pub fn ideal_closure<'s>(
    s: &'s FiniteSemigroup,
    seed: impl IntoIterator<Item = usize>,
) -> Result<Ideal<'s>> {
    let n = s.order();
    let mut members = FixedBitSet::with_capacity(n);
    let mut stack = Vec::new();
    for x in seed {
        if x >= n {
            return Err(Error::InvalidIdeal(format!("element {x} out of range")));
        }
        if !members.put(x) {
            stack.push(x);
        }
    }
    if stack.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    while let Some(x) = stack.pop() {
        for t in 0..n {
            for p in [s.mul(t, x), s.mul(x, t)] {
                if !members.put(p) {
                    stack.push(p);
                }
            }
        }
    }
    Ok(Ideal { parent: s, members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1, 2], vec![2, 2, 2], vec![2, 2, 2]]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s = fig1();
        assert_eq!(ideal_closure(&s, [2]).unwrap().members(), vec![2]);
        assert_eq!(ideal_closure(&s, [1]).unwrap().members(), vec![1, 2]);
        assert_eq!(ideal_closure(&s, [0]).unwrap().members(), vec![0, 1, 2]);
        assert_eq!(ideal_closure(&s, []).unwrap_err(), Error::EmptyIdeal);
    }

    #[test]
    fn validation() {
        let s = fig1();
        assert!(Ideal::new(&s, [1, 2]).is_ok());
        assert!(matches!(Ideal::new(&s, [1]), Err(Error::InvalidIdeal(_))));
        assert_eq!(Ideal::new(&s, []).unwrap_err(), Error::EmptyIdeal);
        assert!(Ideal::full(&s).is_whole());
    }
}
