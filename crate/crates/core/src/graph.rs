//! Simple undirected graphs on dense vertex indices `0..order`.
//!
//! Every other module speaks in terms of these indices: branch maps, routes,
//! tiling blocks and anchor assignments all reference them directly.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// Finite simple undirected graph.
///
/// Edges are stored as `(min, max)` pairs in sorted order, so iteration is
/// deterministic and serialization is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; {:?})", self.order, self.edges)
    }
}

impl Graph {
    /// Graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Self {
        Graph {
            order,
            edges: Vec::new(),
            adj: vec![Vec::new(); order],
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::InvalidGraph(format!(
                    "edge {u} {v} has an endpoint outside 0..{order}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(Self::from_sorted_set(order, set))
    }

    fn from_sorted_set(order: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            order,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Number of edges with both endpoints in `set` (given as a membership mask).
    pub fn induced_edge_count(&self, member: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| member[u] && member[v])
            .count()
    }

    /// Adjacency bitmasks; `None` when the graph has more than 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.order > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w)))
                .collect(),
        )
    }

    /// Returns a copy with extra edges added (existing ones are ignored).
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set: BTreeSet<_> = self.edges.iter().copied().collect();
        for (u, v) in extra {
            if u >= self.order || v >= self.order || u == v {
                return Err(Error::InvalidGraph(format!("cannot add edge {u} {v}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted_set(self.order, set))
    }

    /// Appends `extra` isolated vertices.
    pub fn with_extra_vertices(&self, extra: usize) -> Self {
        let set = self.edges.iter().copied().collect();
        Self::from_sorted_set(self.order + extra, set)
    }

    /// Induced subgraph on `keep` (sorted, deduplicated); vertex `keep[i]`
    /// becomes vertex `i`.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.order];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let set = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| {
                let (a, b) = (index[u], index[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        Self::from_sorted_set(keep.len(), set)
    }

    /// Deletes the given vertices and compacts the remaining indices.
    /// Returns the new graph and the old-to-new index map.
    pub fn remove_vertices(&self, remove: &[usize]) -> (Self, Vec<Option<usize>>) {
        let keep: Vec<usize> = (0..self.order).filter(|v| !remove.contains(v)).collect();
        let mut map = vec![None; self.order];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        (self.induced(&keep), map)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let off = self.order;
        let set = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)))
            .collect();
        Self::from_sorted_set(self.order + other.order, set)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.components().len() == 1
    }

    /// Canonical edge-list text (see [`parse_graph`]).
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.order, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Two-colouring of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl Bipartition {
    /// Builds a bipartition from explicit sides, sorting each.
    pub fn new(mut side_a: Vec<usize>, mut side_b: Vec<usize>) -> Self {
        side_a.sort_unstable();
        side_b.sort_unstable();
        Bipartition { side_a, side_b }
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.side_a.len(), self.side_b.len())
    }

    /// True when the sides partition `0..g.order()` and every edge crosses.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut side = vec![None; g.order()];
        for (s, list) in [(0u8, &self.side_a), (1u8, &self.side_b)] {
            for &v in list {
                if v >= g.order() || side[v].is_some() {
                    return false;
                }
                side[v] = Some(s);
            }
        }
        side.iter().all(Option::is_some) && g.edges().iter().all(|&(u, v)| side[u] != side[v])
    }
}

/// Outcome of [`bipartition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteCheck {
    Bipartite(Bipartition),
    /// Vertex sequence of an odd cycle (closing edge from last to first).
    NotBipartite {
        odd_cycle: Vec<usize>,
    },
}

/// Canonical bipartition.
///
/// Per component, the side holding the component's smallest vertex goes to
/// `side_a` if it is strictly smaller than the other side, to `side_b` if
/// strictly larger, and to `side_a` on ties.
pub fn bipartition(g: &Graph) -> BipartiteCheck {
    let n = g.order();
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut side_a = Vec::new();
    let mut side_b = Vec::new();
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(0);
        let mut members = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(1 - cu);
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        members.push(w);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return BipartiteCheck::NotBipartite {
                            odd_cycle: odd_cycle(u, w, &parent, &depth),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
        let (same, other): (Vec<usize>, Vec<usize>) = members.into_iter().partition(|&v| color[v] == Some(0));
        if same.len() <= other.len() {
            side_a.extend(same);
            side_b.extend(other);
        } else {
            side_a.extend(other);
            side_b.extend(same);
        }
    }
    BipartiteCheck::Bipartite(Bipartition::new(side_a, side_b))
}

fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Convenience wrapper returning the bipartition or [`Error::NotBipartite`].
pub fn require_bipartite(g: &Graph) -> Result<Bipartition> {
    match bipartition(g) {
        BipartiteCheck::Bipartite(b) => Ok(b),
        BipartiteCheck::NotBipartite { .. } => Err(Error::NotBipartite),
    }
}

/// Input encodings accepted by [`parse_graph_as`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Graph6,
}

/// Parses the edge-list format: a header `"<order> <edge-count>"` followed by
/// one `"<u> <v>"` line per edge. Blank lines and lines starting with `#` are
/// skipped. Endpoints may appear in either order.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let err = |line: usize, kind| Error::Parse(ParseError { line, kind });
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, ParseErrorKind::MalformedHeader))?;
    let (order, expected) = two_numbers(header).ok_or_else(|| err(hline, ParseErrorKind::MalformedHeader))?;

    let mut set = BTreeSet::new();
    for (line, text) in lines {
        let (u, v) = two_numbers(text).ok_or_else(|| err(line, ParseErrorKind::MalformedEdge))?;
        for x in [u, v] {
            if x >= order {
                return Err(err(line, ParseErrorKind::OutOfRange(x)));
            }
        }
        if u == v {
            return Err(err(line, ParseErrorKind::Loop(u)));
        }
        if !set.insert((u.min(v), u.max(v))) {
            return Err(err(line, ParseErrorKind::Duplicate(u, v)));
        }
    }
    if set.len() != expected {
        return Err(err(
            hline,
            ParseErrorKind::EdgeCount {
                expected,
                found: set.len(),
            },
        ));
    }
    Ok(Graph::from_sorted_set(order, set))
}

fn two_numbers(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Parses text in the requested format. Graph6 input must contain exactly
/// one graph.
pub fn parse_graph_as(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_graph(text),
        GraphFormat::Graph6 => {
            let mut graphs = parse_graph6_lines(text)?;
            if graphs.len() != 1 {
                return Err(Error::Parse(ParseError {
                    line: 1,
                    kind: ParseErrorKind::Graph6,
                }));
            }
            Ok(graphs.pop().unwrap())
        }
    }
}

/// One graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            from_graph6(l.trim()).ok_or(Error::Parse(ParseError {
                line: i + 1,
                kind: ParseErrorKind::Graph6,
            }))
        })
        .collect()
}

/// Decodes one graph6 string (optionally with the `>>graph6<<` header).
pub fn from_graph6(s: &str) -> Option<Graph> {
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) || bytes.is_empty() {
        return None;
    }
    let (n, rest) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[4..])
    } else if bytes.len() >= 8 {
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[8..])
    } else {
        return None;
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    if rest.len() != bits_needed.div_ceil(6) {
        return None;
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut set = BTreeSet::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                set.insert((u, v));
            }
            k += 1;
        }
    }
    Some(Graph::from_sorted_set(n, set))
}

/// Encodes in graph6 (no header).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut count = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            count += 1;
            if count == 6 {
                out.push(acc + 63);
                acc = 0;
                count = 0;
            }
        }
    }
    if count > 0 {
        out.push((acc << (6 - count)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Builds a graph from a construction expression:
/// `K<r>`, `K(<a>,<b>)`, `C<k>`, `P<k>` (path on `k` vertices) or `U(e1,e2)`.
pub fn build(expr: &str) -> Result<Graph> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = ExprParser {
        s: compact.as_bytes(),
        pos: 0,
    };
    let g = p.expr()?;
    if p.pos != p.s.len() {
        return Err(Error::Build(format!("trailing input in {expr:?}")));
    }
    Ok(g)
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Build(format!(
                "expected '{}' at offset {}",
                c as char, self.pos
            )))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Build(format!("expected a number at offset {start}")))
    }

    fn expr(&mut self) -> Result<Graph> {
        let head = self
            .peek()
            .ok_or_else(|| Error::Build("empty expression".into()))?;
        self.pos += 1;
        match head {
            b'K' if self.peek() == Some(b'(') => {
                self.eat(b'(')?;
                let a = self.number()?;
                self.eat(b',')?;
                let b = self.number()?;
                self.eat(b')')?;
                Ok(complete_bipartite(a, b))
            }
            b'K' => {
                let r = self.number()?;
                if r < 1 {
                    return Err(Error::Build("K<r> needs r >= 1".into()));
                }
                Ok(complete(r))
            }
            b'C' => {
                let k = self.number()?;
                if k < 3 {
                    return Err(Error::Build("C<k> needs k >= 3".into()));
                }
                Ok(cycle(k))
            }
            b'P' => {
                let k = self.number()?;
                if k < 1 {
                    return Err(Error::Build("P<k> needs k >= 1".into()));
                }
                Ok(path(k))
            }
            b'U' => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b')')?;
                Ok(a.disjoint_union(&b))
            }
            other => Err(Error::Build(format!("unknown constructor '{}'", other as char))),
        }
    }
}

pub fn complete(r: usize) -> Graph {
    let set = (0..r).flat_map(|u| (u + 1..r).map(move |v| (u, v))).collect();
    Graph::from_sorted_set(r, set)
}

/// `K_{a,b}` with side `0..a` and side `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let set = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_sorted_set(a + b, set)
}

pub fn cycle(k: usize) -> Graph {
    let set = (0..k).map(|i| {
        let j = (i + 1) % k;
        (i.min(j), i.max(j))
    });
    Graph::from_sorted_set(k, set.collect())
}

/// Path on `k` vertices.
pub fn path(k: usize) -> Graph {
    let set = (1..k).map(|i| (i - 1, i)).collect();
    Graph::from_sorted_set(k, set)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, edges).expect("petersen edges are valid")
}
