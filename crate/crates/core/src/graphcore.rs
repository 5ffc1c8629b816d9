//! Graph representation, generators for cycles, paths and star chains, and
//! the neighborhood/domination primitives everything else is built on.
//!
//! Vertex sets and adjacency rows are single `u128` words, so graphs are
//! limited to [`MAX_ORDER`] vertices.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

/// Largest supported graph order.
pub const MAX_ORDER: usize = 128;

#[inline]
fn mask(universe: usize) -> u128 {
    if universe >= 128 {
        u128::MAX
    } else {
        (1u128 << universe) - 1
    }
}

/// A subset of `0..universe`, stored as a bit vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    bits: u128,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        assert!(
            universe <= MAX_ORDER,
            "universe {universe} exceeds {MAX_ORDER}"
        );
        Self { universe, bits: 0 }
    }

    pub fn full(universe: usize) -> Self {
        assert!(
            universe <= MAX_ORDER,
            "universe {universe} exceeds {MAX_ORDER}"
        );
        Self {
            universe,
            bits: mask(universe),
        }
    }

    pub fn from_bits(universe: usize, bits: u128) -> Result<Self> {
        if universe > MAX_ORDER {
            return Err(Error::UnsupportedSize {
                what: "universe",
                actual: universe,
                limit: MAX_ORDER,
            });
        }
        if bits & !mask(universe) != 0 {
            return Err(invalid(format!("bits set outside universe {universe}")));
        }
        Ok(Self { universe, bits })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        universe: usize,
        indices: I,
    ) -> Result<Self> {
        let mut s = Self::empty(universe);
        for v in indices {
            if v >= universe {
                return Err(invalid(format!("vertex {v} outside universe {universe}")));
            }
            s.bits |= 1u128 << v;
        }
        Ok(s)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && (self.bits >> v) & 1 == 1
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        self.bits |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.bits &= !(1u128 << v);
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Self {
            universe: self.universe,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Self {
            universe: self.universe,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Self {
            universe: self.universe,
            bits: self.bits & !other.bits,
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            universe: self.universe,
            bits: !self.bits & mask(self.universe),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> VertexIter {
        VertexIter { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet({}){:?}", self.universe, self.to_vec())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('{')?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_char('}')
    }
}

pub struct VertexIter {
    bits: u128,
}

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let v = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Undirected simple graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adj: Vec<u128>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if order > MAX_ORDER {
            return Err(Error::UnsupportedSize {
                what: "graph order",
                actual: order,
                limit: MAX_ORDER,
            });
        }
        let mut adj = vec![0u128; order];
        for (i, j) in edges {
            if i >= order || j >= order {
                return Err(invalid(format!("edge ({i}, {j}) outside order {order}")));
            }
            if i == j {
                return Err(invalid(format!("self-loop at vertex {i}")));
            }
            if (adj[i] >> j) & 1 == 1 {
                return Err(invalid(format!("duplicate edge ({i}, {j})")));
            }
            adj[i] |= 1u128 << j;
            adj[j] |= 1u128 << i;
        }
        Ok(Self { order, adj })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// Open neighborhood. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet {
            universe: self.order,
            bits: self.adj[v],
        }
    }

    #[inline]
    pub(crate) fn closed_row(&self, v: usize) -> u128 {
        self.adj[v] | (1u128 << v)
    }

    /// `N[v]`: the neighbors of `v` together with `v`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet {
            universe: self.order,
            bits: self.closed_row(v),
        })
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.order && j < self.order && (self.adj[i] >> j) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].count_ones() as usize)
    }

    pub fn max_degree(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |i| {
            VertexSet {
                universe: self.order,
                bits: self.adj[i] & !mask(i + 1),
            }
            .iter()
            .map(move |j| (i, j))
        })
    }

    /// Union of closed neighborhoods of `s`.
    pub fn dominated_by(&self, s: &VertexSet) -> VertexSet {
        let bits = s.iter().fold(0u128, |acc, v| acc | self.closed_row(v));
        VertexSet {
            universe: self.order,
            bits,
        }
    }

    pub fn is_dominating(&self, s: &VertexSet) -> Result<bool> {
        if s.universe() != self.order {
            return Err(invalid(format!(
                "set universe {} does not match graph order {}",
                s.universe(),
                self.order
            )));
        }
        Ok(self.dominated_by(s).bits == mask(self.order))
    }

    /// The subgraph induced by `s`, re-indexed `0..|s|` in ascending order of
    /// the original indices. The returned map sends new indices to old ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.universe() != self.order {
            return Err(invalid("set universe does not match graph order"));
        }
        if s.is_empty() {
            return Err(invalid("induced subgraph of the empty set"));
        }
        let index_map = s.to_vec();
        let mut position = vec![usize::MAX; self.order];
        for (new, &old) in index_map.iter().enumerate() {
            position[old] = new;
        }
        let mut adj = vec![0u128; index_map.len()];
        for (new, &old) in index_map.iter().enumerate() {
            for w in self.neighbors(old).intersection(s).iter() {
                adj[new] |= 1u128 << position[w];
            }
        }
        Ok((
            Graph {
                order: index_map.len(),
                adj,
            },
            index_map,
        ))
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.order {
            return Err(invalid("relabeling has the wrong length"));
        }
        let mut seen = 0u128;
        for &p in perm {
            if p >= self.order || (seen >> p) & 1 == 1 {
                return Err(invalid("relabeling is not a bijection"));
            }
            seen |= 1u128 << p;
        }
        Graph::from_edges(self.order, self.edges().map(|(i, j)| (perm[i], perm[j])))
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        let mut seen = 1u128;
        let mut frontier = 1u128;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == mask(self.order)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order {
            Err(invalid(format!("vertex {v} outside order {}", self.order)))
        } else {
            Ok(())
        }
    }

    /// Text form: `n <order>` then one `e <i> <j>` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.order);
        for (i, j) in self.edges() {
            let _ = writeln!(out, "e {i} {j}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut order = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let mut parts = raw.split_whitespace();
            let Some(tag) = parts.next() else { continue };
            let fields: Vec<&str> = parts.collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse {
                    line,
                    message: format!("{s:?}: {e}"),
                })
            };
            match (tag, fields.as_slice()) {
                ("n", [n]) if order.is_none() => order = Some(parse(n)?),
                ("n", _) => {
                    return Err(Error::Parse {
                        line,
                        message: "expected a single `n <order>` header".into(),
                    })
                }
                ("e", [i, j]) if order.is_some() => edges.push((parse(i)?, parse(j)?, line)),
                ("e", _) => {
                    return Err(Error::Parse {
                        line,
                        message: "expected `e <i> <j>` after the header".into(),
                    })
                }
                (other, _) => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown record {other:?}"),
                    })
                }
            }
        }
        let order = order.ok_or(Error::Parse {
            line: 1,
            message: "missing `n <order>` header".into(),
        })?;
        let mut g = Graph::from_edges(order, std::iter::empty()).map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        for (i, j, line) in edges {
            if i >= order || j >= order || i == j || g.has_edge(i, j) {
                return Err(Error::Parse {
                    line,
                    message: format!("rejected edge ({i}, {j}): out of range, loop or duplicate"),
                });
            }
            g.adj[i] |= 1u128 << j;
            g.adj[j] |= 1u128 << i;
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The cycle `C_n`; vertex `i` is adjacent to `i ± 1 (mod n)`.
pub fn build_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path `P_n` on `n` vertices.
pub fn build_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("path needs at least one vertex"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// `a` copies of `K_{1,4}` whose centers form a path. Star `j` (0-based)
/// occupies indices `5j..5j+4` with its center at `5j`.
pub fn build_star_chain(a: usize) -> Result<Graph> {
    if a == 0 {
        return Err(invalid("star chain needs at least one star"));
    }
    let spokes = (0..a).flat_map(|j| (1..5).map(move |p| (5 * j, 5 * j + p)));
    let spine = (1..a).map(|j| (5 * (j - 1), 5 * j));
    Graph::from_edges(5 * a, spokes.chain(spine))
}

/// Index of the center of star `j` (0-based) in [`build_star_chain`].
pub fn star_center(j: usize) -> usize {
    5 * j
}

/// Distance between `i` and `j` along `C_n`.
pub fn cycle_distance(n: usize, i: usize, j: usize) -> Result<usize> {
    if i >= n || j >= n {
        return Err(invalid(format!(
            "vertices ({i}, {j}) outside cycle of order {n}"
        )));
    }
    let d = i.abs_diff(j);
    Ok(d.min(n - d))
}
