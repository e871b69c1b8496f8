//! Finite semigroups given by their multiplication table.
//!
//! Elements are the dense indices `0..n`; names are kept only for display.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Largest order for which debug builds re-run the cubic associativity check
/// on construction outputs.
const CONSTRUCTION_SELF_CHECK_LIMIT: usize = 64;

/// A validated finite semigroup.
///
/// Immutable after construction. The table is stored row-major, so the
/// product `a*b` lives at `a * order + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    names: Option<Vec<String>>,
    identity: Option<usize>,
    zero: Option<usize>,
}

/// Validates a multiplication table and returns the semigroup it defines.
///
/// Identity and zero are detected by a full scan unless hints are given, in
/// which case the hinted elements are checked instead.
pub fn build_semigroup(
    rows: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
    identity_hint: Option<usize>,
    zero_hint: Option<usize>,
) -> Result<FiniteSemigroup> {
    let order = rows.len();
    if order == 0 {
        return Err(Error::Empty);
    }
    let mut table = Vec::with_capacity(order * order);
    for (row, entries) in rows.into_iter().enumerate() {
        if entries.len() != order {
            return Err(Error::Shape {
                row,
                expected: order,
                found: entries.len(),
            });
        }
        table.extend(entries);
    }
    let mut s = FiniteSemigroup::assemble(order, table, names)?;
    if let Some((a, b, c)) = s.associativity_witness() {
        return Err(Error::Associativity { a, b, c });
    }
    if let Some(e) = identity_hint {
        if e >= order || !s.acts_as_identity(e) {
            return Err(Error::InvalidIdentity(e));
        }
        s.identity = Some(e);
    }
    if let Some(z) = zero_hint {
        if z >= order || !s.acts_as_zero(z) {
            return Err(Error::InvalidZero(z));
        }
        s.zero = Some(z);
    }
    Ok(s)
}

impl FiniteSemigroup {
    /// Shorthand for [`build_semigroup`] without names or hints.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        build_semigroup(rows, None, None, None)
    }

    /// The one-element semigroup.
    pub fn trivial() -> Self {
        Self::assemble(1, vec![0], None).expect("trivial table")
    }

    /// Left-zero semigroup of order `k`: `xy = x`.
    pub fn left_zero(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Empty);
        }
        let table = (0..k).flat_map(|a| std::iter::repeat_n(a, k)).collect();
        Self::from_construction(k, table, None)
    }

    /// Right-zero semigroup of order `k`: `xy = y`.
    pub fn right_zero(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Empty);
        }
        let table = (0..k).flat_map(|_| 0..k).collect();
        Self::from_construction(k, table, None)
    }

    /// Cyclic group of order `k` under addition mod `k`.
    pub fn cyclic_group(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Empty);
        }
        let table = (0..k)
            .flat_map(|a| (0..k).map(move |b| (a + b) % k))
            .collect();
        Self::from_construction(k, table, None)
    }

    /// Null semigroup of order `k`: every product is the zero `k - 1`.
    pub fn null(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Empty);
        }
        Self::from_construction(k, vec![k - 1; k * k], None)
    }

    /// Builds from a table produced by a construction that is associative
    /// whenever its inputs are. Indices and names are still validated.
    pub(crate) fn from_construction(
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::Empty);
        }
        let s = Self::assemble(order, table, names)?;
        debug_assert!(
            order > CONSTRUCTION_SELF_CHECK_LIMIT || s.associativity_witness().is_none(),
            "construction produced a non-associative table"
        );
        Ok(s)
    }

    fn assemble(order: usize, table: Vec<usize>, names: Option<Vec<String>>) -> Result<Self> {
        debug_assert_eq!(table.len(), order * order);
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::Index {
                row: pos / order,
                col: pos % order,
                value: table[pos],
                order,
            });
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(Error::Names(format!(
                    "{} names for {} elements",
                    names.len(),
                    order
                )));
            }
            let mut seen = HashSet::new();
            for name in names {
                if name.is_empty() || name.chars().any(char::is_whitespace) {
                    return Err(Error::Names(format!("`{name}` is empty or has whitespace")));
                }
                if !seen.insert(name.as_str()) {
                    return Err(Error::Names(format!("`{name}` appears twice")));
                }
            }
        }
        let mut s = FiniteSemigroup {
            order,
            table,
            names,
            identity: None,
            zero: None,
        };
        s.identity = (0..order).find(|&e| s.acts_as_identity(e));
        s.zero = (0..order).find(|&z| s.acts_as_zero(z));
        Ok(s)
    }

    fn acts_as_identity(&self, e: usize) -> bool {
        (0..self.order).all(|a| self.mul(e, a) == a && self.mul(a, e) == a)
    }

    fn acts_as_zero(&self, z: usize) -> bool {
        (0..self.order).all(|a| self.mul(z, a) == z && self.mul(a, z) == z)
    }

    /// First triple `(a, b, c)` with `(ab)c != a(bc)`, scanning in
    /// lexicographic order.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let ab_row = &self.table[ab * n..(ab + 1) * n];
                let b_row = &self.table[b * n..(b + 1) * n];
                let a_row = &self.table[a * n..(a + 1) * n];
                for c in 0..n {
                    if ab_row[c] != a_row[b_row[c]] {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of `a`: its given name, or its index.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Looks an element up by name, falling back to a numeric index.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i| i < self.order)
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    /// `a^k` for `k >= 1`.
    pub fn power(&self, a: usize, k: usize) -> usize {
        assert!(k >= 1, "powers start at 1");
        (1..k).fold(a, |acc, _| self.mul(acc, a))
    }

    /// Display names followed by fresh names derived from `extra`.
    fn extended_names(&self, extra: &[&str]) -> Vec<String> {
        let mut names: Vec<String> = self.elements().map(|a| self.name(a)).collect();
        for base in extra {
            let fresh = fresh_name(&names, base);
            names.push(fresh);
        }
        names
    }

    /// Restriction to a subset closed under multiplication. Elements keep
    /// their relative order.
    pub fn subsemigroup(&self, members: &[usize]) -> Result<FiniteSemigroup> {
        if members.is_empty() {
            return Err(Error::Empty);
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.order];
        for (i, &m) in sorted.iter().enumerate() {
            index[m] = i;
        }
        let k = sorted.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &sorted {
            for &b in &sorted {
                let p = index[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::NotClosed);
                }
                table.push(p);
            }
        }
        let names = self
            .names
            .as_ref()
            .map(|names| sorted.iter().map(|&m| names[m].clone()).collect());
        Self::from_construction(k, table, names)
    }
}

/// `base`, or `base` with primes appended until it is not in `taken`.
pub(crate) fn fresh_name(taken: &[String], base: &str) -> String {
    let mut candidate = base.to_string();
    while taken.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// `S¹`: a fresh identity with index `n`, always added even if `S` is a monoid.
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.order();
    let m = n + 1;
    let mut table = Vec::with_capacity(m * m);
    for a in 0..n {
        table.extend_from_slice(s.row(a));
        table.push(a);
    }
    table.extend(0..m);
    let names = s.names.as_ref().map(|_| s.extended_names(&["1"]));
    FiniteSemigroup::from_construction(m, table, names).expect("adjoining an identity")
}

/// `S⁰`: a fresh zero with index `n`.
pub fn adjoin_zero(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.order();
    let m = n + 1;
    let mut table = Vec::with_capacity(m * m);
    for a in 0..n {
        table.extend_from_slice(s.row(a));
        table.push(n);
    }
    table.extend(std::iter::repeat_n(n, m));
    let names = s.names.as_ref().map(|_| s.extended_names(&["0"]));
    FiniteSemigroup::from_construction(m, table, names).expect("adjoining a zero")
}

/// The anti-isomorphic dual: `a ∘ b = b * a`. Swaps the roles of L and R.
pub fn opposite(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.order();
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| s.mul(b, a))
        .collect();
    FiniteSemigroup::from_construction(n, table, s.names.clone()).expect("opposite table")
}

/// Componentwise product; the pair `(i, j)` has index `i * |T| + j`.
pub fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> FiniteSemigroup {
    let (n, m) = (s.order(), t.order());
    let k = n * m;
    let mut table = Vec::with_capacity(k * k);
    for a in 0..k {
        let (a1, a2) = (a / m, a % m);
        for b in 0..k {
            let (b1, b2) = (b / m, b % m);
            table.push(s.mul(a1, b1) * m + t.mul(a2, b2));
        }
    }
    let names = (s.names.is_some() || t.names.is_some()).then(|| {
        (0..k)
            .map(|a| format!("({},{})", s.name(a / m), t.name(a % m)))
            .collect()
    });
    FiniteSemigroup::from_construction(k, table, names).expect("direct product")
}
