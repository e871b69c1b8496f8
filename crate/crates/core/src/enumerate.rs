//! Exhaustive enumeration of small multiplication tables and random
//! transformation semigroups.
//!
//! Transformations act on the right: `x(fg) = (xf)g`. With this convention
//! the constant maps generate a right-zero semigroup.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Largest order the exhaustive search accepts.
pub const MAX_ENUMERATION_ORDER: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub order: usize,
    /// Emit one representative per isomorphism class: the lexicographically
    /// least table over all relabelings.
    pub up_to_isomorphism: bool,
    /// When false (and `up_to_isomorphism` is set), a class and its opposite
    /// are folded into one representative.
    pub include_anti_isomorphs: bool,
    pub limit: Option<usize>,
}

impl EnumerationConfig {
    /// Every associative table of the given order.
    pub fn labelled(order: usize) -> Self {
        Self {
            order,
            up_to_isomorphism: false,
            include_anti_isomorphs: true,
            limit: None,
        }
    }

    /// One table per isomorphism class.
    pub fn up_to_isomorphism(order: usize) -> Self {
        Self {
            up_to_isomorphism: true,
            ..Self::labelled(order)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.order == 0 || self.order > MAX_ENUMERATION_ORDER {
            return Err(Error::Range(format!(
                "enumeration order must be in 1..={MAX_ENUMERATION_ORDER}, got {}",
                self.order
            )));
        }
        Ok(())
    }
}

const UNSET: u8 = u8::MAX;

/// Depth-first search over row-major tables. Cells before `start` are a
/// fixed prefix; a table is yielded whenever cells `start..end` are filled.
struct Search {
    n: usize,
    table: Vec<u8>,
    next_value: Vec<u8>,
    start: usize,
    end: usize,
    cell: usize,
    done: bool,
}

impl Search {
    fn new(n: usize, prefix: &[u8], end: usize) -> Self {
        let mut table = vec![UNSET; n * n];
        table[..prefix.len()].copy_from_slice(prefix);
        Search {
            n,
            table,
            next_value: vec![0; n * n],
            start: prefix.len(),
            end,
            cell: prefix.len(),
            done: false,
        }
    }

    #[inline]
    fn t(&self, x: u8, y: u8) -> u8 {
        self.table[x as usize * self.n + y as usize]
    }

    /// Checks every fully defined triple that uses the cell just assigned.
    fn consistent(&self, c: usize) -> bool {
        let n = self.n as u8;
        let (a, b) = ((c / self.n) as u8, (c % self.n) as u8);
        let v = self.table[c];
        // (ab)z = a(bz)
        for z in 0..n {
            let (l, bz) = (self.t(v, z), self.t(b, z));
            if l != UNSET && bz != UNSET {
                let r = self.t(a, bz);
                if r != UNSET && r != l {
                    return false;
                }
            }
        }
        // (xa)b = x(ab)
        for x in 0..n {
            let xa = self.t(x, a);
            if xa != UNSET {
                let l = self.t(xa, b);
                let r = self.t(x, v);
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.t(x, y);
                // (xy)b with xy = a, against x(yb)
                if xy == a {
                    let yb = self.t(y, b);
                    if yb != UNSET {
                        let r = self.t(x, yb);
                        if r != UNSET && r != v {
                            return false;
                        }
                    }
                }
                // a(xy) with xy = b, against (ax)y
                if xy == b {
                    let ax = self.t(a, x);
                    if ax != UNSET {
                        let l = self.t(ax, y);
                        if l != UNSET && l != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl Iterator for Search {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        loop {
            if self.done {
                return None;
            }
            let c = self.cell;
            if c == self.end {
                let out = self.table.clone();
                if c == self.start {
                    self.done = true;
                } else {
                    self.cell -= 1;
                }
                return Some(out);
            }
            let v = self.next_value[c];
            if v as usize == self.n {
                self.table[c] = UNSET;
                self.next_value[c] = 0;
                if c == self.start {
                    self.done = true;
                } else {
                    self.cell -= 1;
                }
                continue;
            }
            self.next_value[c] = v + 1;
            self.table[c] = v;
            if self.consistent(c) {
                self.cell += 1;
            } else {
                self.table[c] = UNSET;
            }
        }
    }
}

/// `p` relabels element `i` as `p[i]`; `q` is its inverse. Compares the
/// relabeled table against `table` row-major.
fn compare_relabeled(table: &[u8], n: usize, p: &[u8], q: &[u8]) -> std::cmp::Ordering {
    for i in 0..n {
        for j in 0..n {
            let relabeled = p[table[q[i] as usize * n + q[j] as usize] as usize];
            let original = table[i * n + j];
            match relabeled.cmp(&original) {
                std::cmp::Ordering::Equal => {}
                other => return other,
            }
        }
    }
    std::cmp::Ordering::Equal
}

fn invert(q: &[u8]) -> Vec<u8> {
    let mut p = vec![0; q.len()];
    for (i, &x) in q.iter().enumerate() {
        p[x as usize] = i as u8;
    }
    p
}

fn is_canonical(table: &[u8], n: usize) -> bool {
    (0..n as u8).permutations(n).all(|q| {
        let p = invert(&q);
        compare_relabeled(table, n, &p, &q) != std::cmp::Ordering::Less
    })
}

fn canonical_u8(table: &[u8], n: usize) -> Vec<u8> {
    let mut best = table.to_vec();
    for q in (0..n as u8).permutations(n) {
        let candidate = relabel(table, n, &invert(&q), &q);
        if candidate < best {
            best = candidate;
        }
    }
    best
}

fn relabel(table: &[u8], n: usize, p: &[u8], q: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(p[table[q[i] as usize * n + q[j] as usize] as usize]);
        }
    }
    out
}

fn transpose(table: &[u8], n: usize) -> Vec<u8> {
    (0..n * n).map(|c| table[(c % n) * n + c / n]).collect()
}

/// The lexicographically least row-major table over all relabelings of `s`.
/// Costs `|S|!` relabelings, so it is only meant for small orders.
pub fn canonical_form(s: &FiniteSemigroup) -> Vec<usize> {
    let n = s.order();
    assert!(
        n <= 10,
        "canonical form over {n}! relabelings is out of reach"
    );
    let table: Vec<u8> = s.table().iter().map(|&x| x as u8).collect();
    canonical_u8(&table, n)
        .into_iter()
        .map(usize::from)
        .collect()
}

pub fn are_isomorphic(s: &FiniteSemigroup, t: &FiniteSemigroup) -> bool {
    s.order() == t.order() && canonical_form(s) == canonical_form(t)
}

fn keep(table: &[u8], config: &EnumerationConfig) -> bool {
    let n = config.order;
    if !config.up_to_isomorphism {
        return true;
    }
    if !is_canonical(table, n) {
        return false;
    }
    config.include_anti_isomorphs || table <= canonical_u8(&transpose(table, n), n).as_slice()
}

fn enumerate_tables(config: &EnumerationConfig) -> Result<Vec<Vec<u8>>> {
    config.validate()?;
    let n = config.order;
    let prefixes: Vec<Vec<u8>> = Search::new(n, &[], n).map(|t| t[..n].to_vec()).collect();
    let mut tables: Vec<Vec<u8>> = prefixes
        .par_iter()
        .flat_map_iter(|prefix| Search::new(n, prefix, n * n).filter(|t| keep(t, config)))
        .collect();
    tables.sort_unstable();
    if let Some(limit) = config.limit {
        tables.truncate(limit);
    }
    Ok(tables)
}

fn to_semigroup(table: Vec<u8>, n: usize) -> FiniteSemigroup {
    let table = table.into_iter().map(usize::from).collect();
    FiniteSemigroup::from_construction(n, table, None).expect("enumerated table")
}

/// Every table the configuration selects, sorted row-major.
pub fn enumerate_semigroups(
    config: &EnumerationConfig,
) -> Result<impl ExactSizeIterator<Item = FiniteSemigroup>> {
    let n = config.order;
    Ok(enumerate_tables(config)?
        .into_iter()
        .map(move |t| to_semigroup(t, n)))
}

/// Same selection as [`enumerate_semigroups`], counted without building
/// semigroup values.
pub fn count_semigroups(config: &EnumerationConfig) -> Result<usize> {
    enumerate_tables(config).map(|t| t.len())
}

/// A map `{0..d} → {0..d}` stored as its image list.
pub type Transformation = Vec<usize>;

fn transformation_name(f: &[usize]) -> String {
    format!("[{}]", f.iter().map(|x| (x + 1).to_string()).join(","))
}

/// The subsemigroup of the full transformation monoid generated by
/// `generators`, with elements sorted by image list and named by their
/// 1-based images, e.g. `[1,2,2]`.
pub fn transformation_semigroup(
    degree: usize,
    generators: &[Transformation],
) -> Result<FiniteSemigroup> {
    if degree == 0 {
        return Err(Error::Range("degree must be positive".into()));
    }
    if generators.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(bad) = generators
        .iter()
        .find(|g| g.len() != degree || g.iter().any(|&x| x >= degree))
    {
        return Err(Error::Range(format!(
            "{bad:?} is not a map on {degree} points"
        )));
    }
    let compose =
        |f: &[usize], g: &[usize]| -> Transformation { f.iter().map(|&x| g[x]).collect() };
    let mut seen: BTreeSet<Transformation> = generators.iter().cloned().collect();
    let mut frontier: Vec<Transformation> = seen.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for g in generators {
            let fg = compose(&f, g);
            if seen.insert(fg.clone()) {
                frontier.push(fg);
            }
        }
    }
    let elements: Vec<Transformation> = seen.into_iter().collect();
    let index: HashMap<&[usize], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let m = elements.len();
    let mut table = Vec::with_capacity(m * m);
    for f in &elements {
        for g in &elements {
            table.push(index[compose(f, g).as_slice()]);
        }
    }
    let names = elements.iter().map(|f| transformation_name(f)).collect();
    FiniteSemigroup::from_construction(m, table, Some(names))
}

/// All `d^d` maps on `d` points.
pub fn full_transformation_monoid(degree: usize) -> Result<FiniteSemigroup> {
    let all: Vec<Transformation> = (0..degree)
        .map(|_| 0..degree)
        .multi_cartesian_product()
        .collect();
    transformation_semigroup(degree, &all)
}

/// Closure of `generator_count` uniformly random maps on `degree` points,
/// deterministic in `seed`.
pub fn random_transformation_subsemigroup(
    degree: usize,
    generator_count: usize,
    seed: u64,
) -> Result<FiniteSemigroup> {
    if !(2..=5).contains(&degree) {
        return Err(Error::Range(format!(
            "degree must be in 2..=5, got {degree}"
        )));
    }
    if generator_count == 0 {
        return Err(Error::Range("at least one generator is needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generators: Vec<Transformation> = (0..generator_count)
        .map(|_| (0..degree).map(|_| rng.gen_range(0..degree)).collect())
        .collect();
    transformation_semigroup(degree, &generators)
}
