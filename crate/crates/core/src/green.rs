//! Green's preorders, the posets of K-classes and their heights.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ideal::Ideal;
use crate::semigroup::FiniteSemigroup;

/// One of Green's relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    L,
    R,
    J,
    H,
    D,
}

impl Relation {
    /// The relations that come with a preorder, and hence a height.
    pub const ORDERED: [Relation; 4] = [Relation::L, Relation::R, Relation::J, Relation::H];

    pub fn has_order(self) -> bool {
        self != Relation::D
    }

    /// The relation playing the same role in the opposite semigroup.
    pub fn dual(self) -> Relation {
        match self {
            Relation::L => Relation::R,
            Relation::R => Relation::L,
            other => other,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Relation::L => "L",
            Relation::R => "R",
            Relation::J => "J",
            Relation::H => "H",
            Relation::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L" => Ok(Relation::L),
            "R" => Ok(Relation::R),
            "J" => Ok(Relation::J),
            "H" => Ok(Relation::H),
            "D" => Ok(Relation::D),
            other => Err(Error::Range(format!("unknown relation `{other}`"))),
        }
    }
}

/// A Green preorder as a boolean matrix: row `b` holds every `a` with
/// `a ≤_K b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    relation: Relation,
    below: Vec<FixedBitSet>,
}

impl Preorder {
    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn order(&self) -> usize {
        self.below.len()
    }

    /// `a ≤_K b`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// `a K b`.
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// `a <_K b`.
    pub fn strictly_below(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && !self.leq(b, a)
    }

    /// Everything `≤_K b`.
    pub fn down_set(&self, b: usize) -> &FixedBitSet {
        &self.below[b]
    }
}

fn left_row(s: &FiniteSemigroup, b: usize) -> FixedBitSet {
    let mut row = FixedBitSet::with_capacity(s.order());
    row.insert(b);
    for t in s.elements() {
        row.insert(s.mul(t, b));
    }
    row
}

fn right_row(s: &FiniteSemigroup, b: usize) -> FixedBitSet {
    let mut row = FixedBitSet::with_capacity(s.order());
    row.insert(b);
    row.extend(s.row(b).iter().copied());
    row
}

/// Computes `≤_K` for `K ∈ {L, R, J, H}`.
///
/// Row `b` of `≤_L` is `S¹b`, the set reached from `b` along one-step left
/// Cayley edges; it is already closed because `t(sb) = (ts)b`. `≤_J` composes
/// the two one-sided closures, `S¹bS¹ = ⋃_{x ∈ S¹b} xS¹`, and `≤_H` is
/// `≤_L ∩ ≤_R`.
///
/// # Panics
///
/// On `Relation::D`, which has no associated preorder.
pub fn preorder(s: &FiniteSemigroup, relation: Relation) -> Preorder {
    let n = s.order();
    let below = match relation {
        Relation::L => (0..n).map(|b| left_row(s, b)).collect(),
        Relation::R => (0..n).map(|b| right_row(s, b)).collect(),
        Relation::J => {
            let right: Vec<FixedBitSet> = (0..n).map(|b| right_row(s, b)).collect();
            (0..n)
                .map(|b| {
                    let mut row = FixedBitSet::with_capacity(n);
                    for x in left_row(s, b).ones() {
                        row.union_with(&right[x]);
                    }
                    row
                })
                .collect()
        }
        Relation::H => (0..n)
            .map(|b| {
                let mut row = left_row(s, b);
                row.intersect_with(&right_row(s, b));
                row
            })
            .collect(),
        Relation::D => panic!("Green's D relation has no associated preorder"),
    };
    Preorder { relation, below }
}

/// Partial order on the classes of an ordered relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassOrder {
    /// `strictly_below[x]` holds every class `y < x`.
    strictly_below: Vec<FixedBitSet>,
    /// Hasse diagram: `covers[x]` lists the classes covered by `x`, ascending.
    covers: Vec<Vec<usize>>,
    /// Number of classes in the longest chain from a maximal class down to
    /// this one, itself included.
    depth: Vec<usize>,
    /// Predecessor of each class on one longest chain realising `depth`.
    parent: Vec<Option<usize>>,
}

impl ClassOrder {
    pub fn is_below(&self, x: usize, y: usize) -> bool {
        self.strictly_below[y].contains(x)
    }

    pub fn strictly_below(&self, x: usize) -> &FixedBitSet {
        &self.strictly_below[x]
    }

    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    pub fn depth(&self, class: usize) -> usize {
        self.depth[class]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

/// The classes of one Green relation, with their order when it has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenStructure {
    relation: Relation,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    order: Option<ClassOrder>,
}

impl GreenStructure {
    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    /// Members of a class, ascending.
    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `None` for D.
    pub fn order(&self) -> Option<&ClassOrder> {
        self.order.as_ref()
    }

    /// Hasse diagram, edges pointing from a class to the classes it covers.
    pub fn dag(&self) -> Option<&[Vec<usize>]> {
        self.order.as_ref().map(|o| o.covers.as_slice())
    }

    pub fn height(&self) -> Option<usize> {
        self.order.as_ref().map(ClassOrder::height)
    }

    /// Classes with nothing strictly below them.
    pub fn minimal_classes(&self) -> Vec<usize> {
        let order = self.order.as_ref().expect("D classes are unordered");
        (0..self.class_count())
            .filter(|&c| order.strictly_below[c].count_ones(..) == 0)
            .collect()
    }

    /// Classes whose only strictly smaller class is `zero_class`.
    pub fn zero_minimal_classes(&self, zero_class: usize) -> Vec<usize> {
        let order = self.order.as_ref().expect("D classes are unordered");
        (0..self.class_count())
            .filter(|&c| {
                c != zero_class
                    && order.strictly_below[c].count_ones(..) == 1
                    && order.strictly_below[c].contains(zero_class)
            })
            .collect()
    }

    /// Representatives of one longest chain of classes, top first.
    pub fn longest_chain(&self) -> Vec<usize> {
        let order = self.order.as_ref().expect("D classes are unordered");
        let Some(bottom) =
            (0..self.class_count()).max_by_key(|&c| (order.depth[c], usize::MAX - c))
        else {
            return Vec::new();
        };
        let mut chain = vec![bottom];
        let mut cur = bottom;
        while let Some(p) = order.parent[cur] {
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        chain.into_iter().map(|c| self.classes[c][0]).collect()
    }
}

/// Groups elements into classes; class indices follow the smallest member.
fn partition(n: usize, same: impl Fn(usize, usize) -> bool) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (a..n)
            .filter(|&b| class_of[b] == usize::MAX && same(a, b))
            .collect();
        for &b in &members {
            class_of[b] = id;
        }
        classes.push(members);
    }
    (class_of, classes)
}

/// Classes of `≤_K` as its mutual-reachability components, with the induced
/// order and its Hasse diagram.
pub fn classes_of_preorder(pre: &Preorder) -> GreenStructure {
    let n = pre.order();
    let (class_of, classes) = partition(n, |a, b| pre.equivalent(a, b));
    let c = classes.len();
    let strictly_below: Vec<FixedBitSet> = classes
        .iter()
        .enumerate()
        .map(|(x, members)| {
            let mut row = FixedBitSet::with_capacity(c);
            for a in pre.down_set(members[0]).ones() {
                row.insert(class_of[a]);
            }
            row.set(x, false);
            row
        })
        .collect();
    let covers: Vec<Vec<usize>> = (0..c)
        .map(|x| {
            let mut transitive = FixedBitSet::with_capacity(c);
            for y in strictly_below[x].ones() {
                transitive.union_with(&strictly_below[y]);
            }
            strictly_below[x]
                .ones()
                .filter(|&y| !transitive.contains(y))
                .collect()
        })
        .collect();
    let (depth, parent) = longest_paths(&covers);
    GreenStructure {
        relation: pre.relation(),
        class_of,
        classes,
        order: Some(ClassOrder {
            strictly_below,
            covers,
            depth,
            parent,
        }),
    }
}

/// Longest path into each vertex of a DAG by dynamic programming over a
/// topological order (Kahn's algorithm). Depth counts vertices.
fn longest_paths(edges: &[Vec<usize>]) -> (Vec<usize>, Vec<Option<usize>>) {
    let c = edges.len();
    let mut indegree = vec![0usize; c];
    for targets in edges {
        for &y in targets {
            indegree[y] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..c).filter(|&x| indegree[x] == 0).collect();
    let mut depth = vec![1usize; c];
    let mut parent = vec![None; c];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &y in &edges[x] {
            if depth[x] + 1 > depth[y] {
                depth[y] = depth[x] + 1;
                parent[y] = Some(x);
            }
            indegree[y] -= 1;
            if indegree[y] == 0 {
                queue.push(y);
            }
        }
    }
    assert_eq!(queue.len(), c, "class order has a cycle");
    (depth, parent)
}

/// The K-classes of `s`. For D only the partition is produced: `D = L ∘ R`,
/// so the D-class of `a` is the union of the R-classes of the elements
/// L-related to `a`.
pub fn k_classes(s: &FiniteSemigroup, relation: Relation) -> GreenStructure {
    if relation.has_order() {
        return classes_of_preorder(&preorder(s, relation));
    }
    let l = preorder(s, Relation::L);
    let r = preorder(s, Relation::R);
    let n = s.order();
    let d_rows: Vec<FixedBitSet> = (0..n)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            for c in 0..n {
                if l.equivalent(a, c) {
                    for b in 0..n {
                        if r.equivalent(c, b) {
                            row.insert(b);
                        }
                    }
                }
            }
            row
        })
        .collect();
    let (class_of, classes) = partition(n, |a, b| d_rows[a].contains(b));
    GreenStructure {
        relation,
        class_of,
        classes,
        order: None,
    }
}

/// `H_K(S)`: the number of classes in a longest chain of K-classes.
///
/// # Panics
///
/// On `Relation::D`.
pub fn k_height(s: &FiniteSemigroup, relation: Relation) -> usize {
    k_classes(s, relation)
        .height()
        .expect("Green's D relation has no height")
}

/// Longest strictly decreasing element sequence under `≤_K`, found by a
/// memoised depth-first search over elements using only the preorder
/// matrix. Independent of the class condensation and Hasse diagram used by
/// [`k_height`].
pub fn longest_chain_oracle(s: &FiniteSemigroup, relation: Relation) -> usize {
    let pre = preorder(s, relation);
    let n = s.order();
    let mut memo = vec![0usize; n];

    fn visit(a: usize, pre: &Preorder, memo: &mut [usize]) -> usize {
        if memo[a] != 0 {
            return memo[a];
        }
        let mut best = 1;
        for b in pre.down_set(a).ones() {
            if !pre.leq(a, b) {
                best = best.max(1 + visit(b, pre, memo));
            }
        }
        memo[a] = best;
        best
    }

    (0..n).map(|a| visit(a, &pre, &mut memo)).max().unwrap_or(0)
}

/// `H_K^S(I)`: height of the subposet of K-classes of `S` contained in `I`.
///
/// Ideals are unions of J-classes, hence of K-classes for every ordered K,
/// so each class lies entirely inside or outside `I`.
pub fn height_within_ideal(structure: &GreenStructure, ideal: &Ideal<'_>) -> usize {
    let order = structure.order().expect("D classes are unordered");
    let inside: Vec<usize> = (0..structure.class_count())
        .filter(|&c| ideal.contains(structure.class(c)[0]))
        .collect();
    let mut sorted = inside.clone();
    sorted.sort_by_key(|&c| order.depth(c));
    let mut best = vec![0usize; structure.class_count()];
    let mut height = 0;
    for &y in &sorted {
        let d = 1 + inside
            .iter()
            .filter(|&&x| order.is_below(y, x))
            .map(|&x| best[x])
            .max()
            .unwrap_or(0);
        best[y] = d;
        height = height.max(d);
    }
    height
}

/// Height of the idempotents under `e ≥ f ⇔ ef = fe = f`.
pub fn idempotent_height(s: &FiniteSemigroup) -> usize {
    let idempotents = s.idempotents();
    let below = |f: usize, e: usize| f != e && s.mul(e, f) == f && s.mul(f, e) == f;
    let mut memo = vec![0usize; s.order()];

    fn visit(
        e: usize,
        es: &[usize],
        below: &dyn Fn(usize, usize) -> bool,
        memo: &mut [usize],
    ) -> usize {
        if memo[e] != 0 {
            return memo[e];
        }
        let mut best = 1;
        for &f in es {
            if below(f, e) {
                best = best.max(1 + visit(f, es, below, memo));
            }
        }
        memo[e] = best;
        best
    }

    idempotents
        .iter()
        .map(|&e| visit(e, &idempotents, &below, &mut memo))
        .max()
        .unwrap_or(0)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of a class poset, one node per class labelled with
/// its members, edges pointing down the Hasse diagram. Output depends only
/// on class indices, so it is stable across runs.
pub fn to_dot(s: &FiniteSemigroup, structure: &GreenStructure, graph_name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n", dot_escape(graph_name));
    out.push_str("  rankdir=TB;\n  node [shape=box];\n");
    for (c, members) in structure.classes().iter().enumerate() {
        let label: Vec<String> = members.iter().map(|&a| s.name(a)).collect();
        out.push_str(&format!(
            "  c{c} [label=\"{{{}}}\"];\n",
            dot_escape(&label.join(","))
        ));
    }
    if let Some(dag) = structure.dag() {
        for (x, targets) in dag.iter().enumerate() {
            for y in targets {
                out.push_str(&format!("  c{x} -> c{y};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
