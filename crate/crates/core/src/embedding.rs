//! Exact search for subdivisions of a pattern inside a host.
//!
//! The kernel maps branch vertices one at a time (highest pattern degree
//! first, then the vertex with the most already-mapped neighbours) and, as
//! soon as both ends of a pattern edge are placed, routes that edge along a
//! simple path through unused host vertices. Paths are explored depth-first
//! with the direct edge tried before any extension, so short routes come
//! first. Hosts are limited to 64 vertices (bitmask adjacency).

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::gadgets::{build_gadget, GadgetKind, Role};
use crate::graph::{bipartition, BipartiteCheck, Bipartition, Graph};
use crate::subdivision::{subdivide, SubdivisionCertificate};

/// Default number of search nodes a single call may expand.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Widest host the bitmask kernels accept.
pub const MAX_MASK_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchLimits {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchLimits { node_budget }
    }

    /// Default limits, overridden by `SUBTILE_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var("SUBTILE_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Self::with_budget)
            .unwrap_or_default()
    }
}

/// Node counter shared by every kernel invoked on behalf of one call.
#[derive(Debug)]
pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub(crate) fn new(limits: SearchLimits) -> Self {
        Budget {
            limit: limits.node_budget,
            used: 0,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchBudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn host_masks(g: &Graph) -> Result<Vec<u64>> {
    g.adjacency_masks().ok_or(Error::HostTooLarge {
        order: g.order(),
        max: MAX_MASK_ORDER,
    })
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Cheap necessary conditions for a spanning subdivision of `pattern` on the
/// host vertices in `block`: enough vertices and edges, and block degrees
/// that dominate the pattern degrees padded with 2s for the subdividers.
pub(crate) fn block_admits(
    adj: &[u64],
    block: u64,
    pattern_degrees_desc: &[usize],
    pattern_edges: usize,
) -> bool {
    let s = block.count_ones() as usize;
    let p = pattern_degrees_desc.len();
    if s < p {
        return false;
    }
    let mut degs: Vec<usize> = bits(block)
        .map(|v| (adj[v] & block).count_ones() as usize)
        .collect();
    let edges2: usize = degs.iter().sum();
    if edges2 / 2 < pattern_edges + s - p {
        return false;
    }
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let mut need: Vec<usize> = pattern_degrees_desc.to_vec();
    need.extend(std::iter::repeat_n(2, s - p));
    need.sort_unstable_by(|a, b| b.cmp(a));
    degs.iter().zip(&need).all(|(d, n)| d >= n)
}

pub(crate) fn degrees_desc(h: &Graph) -> Vec<usize> {
    let mut d = h.degrees();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Pattern-side plan shared by repeated searches against many blocks.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    order: Vec<usize>,
    /// Edges to route right after placing `order[i]`: (edge index, from, to)
    /// with `from` placed earlier.
    pending: Vec<Vec<(usize, usize, usize)>>,
    degree: Vec<usize>,
    edges: Vec<(usize, usize)>,
    edge_count: usize,
}

impl Plan {
    pub(crate) fn new(h: &Graph) -> Self {
        let n = h.order();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let linked = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (linked, h.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut pending = vec![Vec::new(); n];
        for (i, &(a, b)) in h.edges().iter().enumerate() {
            let (first, second) = if pos[a] < pos[b] { (a, b) } else { (b, a) };
            pending[pos[second]].push((i, first, second));
        }
        Plan {
            order,
            pending,
            degree: h.degrees(),
            edges: h.edges().to_vec(),
            edge_count: h.size(),
        }
    }
}

struct Kernel<'a> {
    adj: &'a [u64],
    block: u64,
    block_deg: Vec<u32>,
    plan: &'a Plan,
    exact: bool,
    map: Vec<usize>,
    routes: Vec<Vec<usize>>,
    used: u64,
    budget: &'a mut Budget,
}

impl Kernel<'_> {
    fn place(&mut self, pos: usize) -> Result<bool> {
        if pos == self.plan.order.len() {
            return Ok(self.used == self.block);
        }
        let h = self.plan.order[pos];
        let need = self.plan.degree[h] as u32;
        let free = self.block & !self.used;
        let unplaced = (self.plan.order.len() - pos) as u32;
        if free.count_ones() < unplaced {
            return Ok(false);
        }
        for c in bits(free) {
            let d = self.block_deg[c];
            if (self.exact && d != need) || d < need {
                continue;
            }
            self.budget.tick()?;
            self.map[h] = c;
            self.used |= 1 << c;
            if self.route(pos, 0)? {
                return Ok(true);
            }
            self.used &= !(1 << c);
            self.map[h] = usize::MAX;
        }
        Ok(false)
    }

    /// Routes the `k`-th pending edge of position `pos`, then continues.
    fn route(&mut self, pos: usize, k: usize) -> Result<bool> {
        if k == self.plan.pending[pos].len() {
            return self.place(pos + 1);
        }
        if !self.feasible(pos, k) {
            return Ok(false);
        }
        let (edge, from, to) = self.plan.pending[pos][k];
        let (s, t) = (self.map[from], self.map[to]);
        let mut path = vec![s];
        self.extend(pos, k, edge, t, &mut path)
    }

    fn extend(
        &mut self,
        pos: usize,
        k: usize,
        edge: usize,
        target: usize,
        path: &mut Vec<usize>,
    ) -> Result<bool> {
        self.budget.tick()?;
        let cur = *path.last().unwrap();
        if self.adj[cur] >> target & 1 == 1 {
            path.push(target);
            self.routes[edge] = path.clone();
            if self.route(pos, k + 1)? {
                return Ok(true);
            }
            self.routes[edge].clear();
            path.pop();
        }
        let next = self.adj[cur] & self.block & !self.used;
        for w in bits(next) {
            if self.exact && self.block_deg[w] != 2 {
                continue;
            }
            self.used |= 1 << w;
            path.push(w);
            if self.extend(pos, k, edge, target, path)? {
                return Ok(true);
            }
            path.pop();
            self.used &= !(1 << w);
        }
        Ok(false)
    }

    /// Once every branch vertex is placed, each uncovered vertex must become
    /// a route interior, so it needs two neighbours among the uncovered
    /// vertices and the endpoints of the edges still to route.
    fn feasible(&self, pos: usize, k: usize) -> bool {
        if pos + 1 < self.plan.order.len() {
            return true;
        }
        let free = self.block & !self.used;
        let mut open = free;
        for &(_, a, b) in &self.plan.pending[pos][k..] {
            open |= 1 << self.map[a] | 1 << self.map[b];
        }
        bits(free).all(|v| (self.adj[v] & open).count_ones() >= 2)
    }
}

/// Searches for a subdivision of the planned pattern spanning `block`.
pub(crate) fn spanning_in_block(
    adj: &[u64],
    block: u64,
    plan: &Plan,
    exact: bool,
    budget: &mut Budget,
) -> Result<Option<SubdivisionCertificate>> {
    let block_deg = (0..adj.len()).map(|v| (adj[v] & block).count_ones()).collect();
    let n = plan.order.len();
    let mut k = Kernel {
        adj,
        block,
        block_deg,
        plan,
        exact,
        map: vec![usize::MAX; n],
        routes: vec![Vec::new(); plan.edge_count],
        used: 0,
        budget,
    };
    if k.place(0)? {
        // Routes are grown from whichever end was placed first; orient each
        // from the smaller pattern endpoint.
        let mut routes = k.routes;
        for (route, &(a, _)) in routes.iter_mut().zip(&plan.edges) {
            if route[0] != k.map[a] {
                route.reverse();
            }
        }
        Ok(Some(SubdivisionCertificate {
            branch_map: k.map,
            routes,
        }))
    } else {
        Ok(None)
    }
}

/// Certificate iff `f` is itself a subdivision of `h` (all vertices and
/// edges of `f` used). Isolated pattern vertices map to isolated vertices.
pub fn is_subdivision(f: &Graph, h: &Graph, limits: SearchLimits) -> Result<Option<SubdivisionCertificate>> {
    let adj = host_masks(f)?;
    if f.order() < h.order() || f.size() + h.order() != h.size() + f.order() {
        return Ok(None);
    }
    let mut fd = degrees_desc(f);
    let mut hd = degrees_desc(h);
    hd.extend(std::iter::repeat_n(2, f.order() - h.order()));
    hd.sort_unstable_by(|a, b| b.cmp(a));
    fd.sort_unstable_by(|a, b| b.cmp(a));
    if fd != hd {
        return Ok(None);
    }
    let plan = Plan::new(h);
    let mut budget = Budget::new(limits);
    spanning_in_block(&adj, full_mask(f.order()), &plan, true, &mut budget)
}

/// Certificate iff some subgraph of `g` on all of `V(g)` is a subdivision
/// of `h`.
pub fn find_spanning_subdivision(
    g: &Graph,
    h: &Graph,
    limits: SearchLimits,
) -> Result<Option<SubdivisionCertificate>> {
    let adj = host_masks(g)?;
    let block = full_mask(g.order());
    if !block_admits(&adj, block, &degrees_desc(h), h.size()) {
        return Ok(None);
    }
    let plan = Plan::new(h);
    let mut budget = Budget::new(limits);
    spanning_in_block(&adj, block, &plan, false, &mut budget)
}

/// Automorphisms of `h` as vertex permutations, identity first.
pub fn automorphisms(h: &Graph) -> Vec<Vec<usize>> {
    fn go(h: &Graph, v: usize, perm: &mut Vec<usize>, taken: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = h.order();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for c in 0..n {
            if taken[c] || h.degree(c) != h.degree(v) {
                continue;
            }
            let ok = (0..v).all(|u| h.has_edge(u, v) == h.has_edge(perm[u], c));
            if ok {
                taken[c] = true;
                perm.push(c);
                go(h, v + 1, perm, taken, out);
                perm.pop();
                taken[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(h, 0, &mut Vec::new(), &mut vec![false; h.order()], &mut out);
    out
}

/// A bipartite subdivision produced by [`enumerate_bipartite_subdivisions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSubdivision {
    /// Path length (in edges) of each pattern edge, canonical under the
    /// pattern's automorphisms.
    pub lengths: Vec<usize>,
    pub graph: Graph,
    pub parts: Bipartition,
    pub certificate: SubdivisionCertificate,
}

/// Cap on the number of subdivisions [`enumerate_bipartite_subdivisions`]
/// will return.
pub const MAX_ENUMERATED: usize = 1_000_000;

/// All bipartite subdivisions of `h` with at most `max_order` vertices.
///
/// Subdivisions are identified by their length vector, reduced to the
/// lexicographically smallest image under the automorphisms of `h`.
/// Different canonical vectors can still give isomorphic graphs.
pub fn enumerate_bipartite_subdivisions(h: &Graph, max_order: usize) -> Result<Vec<BipartiteSubdivision>> {
    if h.size() == 0 {
        return Err(Error::EmptyPattern);
    }
    if max_order < h.order() {
        return Err(Error::InvalidParameter(format!(
            "max_order {max_order} is below the pattern order {}",
            h.order()
        )));
    }
    let edge_perms: Vec<Vec<usize>> = automorphisms(h)
        .iter()
        .map(|p| {
            h.edges()
                .iter()
                .map(|&(a, b)| h.edge_index(p[a], p[b]).unwrap())
                .collect()
        })
        .collect();
    let canonical = |lengths: &[usize]| -> Vec<usize> {
        let mut best = lengths.to_vec();
        let mut image = vec![0; lengths.len()];
        for perm in &edge_perms {
            for (e, &l) in lengths.iter().enumerate() {
                image[perm[e]] = l;
            }
            if image < best {
                best.clone_from(&image);
            }
        }
        best
    };

    fn walk(
        i: usize,
        spare: usize,
        lengths: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if i == lengths.len() {
            return visit(lengths);
        }
        for extra in 0..=spare {
            lengths[i] = 1 + extra;
            walk(i + 1, spare - extra, lengths, visit)?;
        }
        Ok(())
    }

    let mut seen = BTreeSet::new();
    let mut lengths = vec![1usize; h.size()];
    walk(0, max_order - h.order(), &mut lengths, &mut |lengths| {
        if canonical(lengths) != lengths {
            return Ok(());
        }
        let (graph, _) = subdivide(h, lengths);
        if matches!(bipartition(&graph), BipartiteCheck::Bipartite(_)) {
            seen.insert(lengths.to_vec());
            if seen.len() > MAX_ENUMERATED {
                return Err(Error::InvalidParameter(format!(
                    "more than {MAX_ENUMERATED} subdivisions; lower max_order"
                )));
            }
        }
        Ok(())
    })?;
    let mut out: Vec<BipartiteSubdivision> = seen
        .into_iter()
        .map(|lengths| {
            let (graph, certificate) = subdivide(h, &lengths);
            let BipartiteCheck::Bipartite(parts) = bipartition(&graph) else {
                unreachable!("filtered above")
            };
            BipartiteSubdivision {
                lengths,
                graph,
                parts,
                certificate,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.graph
            .order()
            .cmp(&b.graph.order())
            .then_with(|| a.lengths.cmp(&b.lengths))
    });
    Ok(out)
}

/// Result of [`count_anchored_gadgets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredCount {
    pub kind: GadgetKind,
    pub anchors: Vec<(Role, usize)>,
    /// Number of distinct vertex sets `A` (anchors excluded) admitting an
    /// embedding of the gadget with the anchors fixed.
    pub count: usize,
    /// Number of injective embeddings, for diagnostics.
    pub embeddings: u64,
    /// The counted sets, each sorted, in ascending order.
    pub sets: Vec<Vec<usize>>,
}

/// Roles a gadget kind pins to host vertices when counting.
pub fn anchored_roles(kind: GadgetKind) -> Option<&'static [Role]> {
    match kind {
        GadgetKind::T1Hat | GadgetKind::SHat => Some(&[Role::U, Role::V]),
        GadgetKind::T2Hat | GadgetKind::T3Hat => Some(&[Role::U]),
        _ => None,
    }
}

/// Counts vertex sets of the host that complete the anchored gadget.
pub fn count_anchored_gadgets(
    g: &Graph,
    h: &Graph,
    kind: GadgetKind,
    anchors: &[(Role, usize)],
    limits: SearchLimits,
) -> Result<AnchoredCount> {
    let roles = anchored_roles(kind)
        .ok_or_else(|| Error::InvalidParameter(format!("{kind} has no anchored counting semantics")))?;
    let gadget = build_gadget(h, kind)?;
    let adj = host_masks(g)?;
    let mut fixed = vec![usize::MAX; gadget.graph.order()];
    let mut used = 0u64;
    for role in roles {
        let &(_, host_v) = anchors
            .iter()
            .find(|(r, _)| r == role)
            .ok_or_else(|| Error::InvalidParameter(format!("anchor {role} missing for {kind}")))?;
        if host_v >= g.order() || used >> host_v & 1 == 1 {
            return Err(Error::InvalidParameter(format!(
                "anchor {role} -> {host_v} is out of range or repeated"
            )));
        }
        fixed[gadget.anchor(*role).unwrap()] = host_v;
        used |= 1 << host_v;
    }
    let anchor_mask = used;
    let p = &gadget.graph;

    // Order free pattern vertices so each has as many mapped neighbours as
    // possible when it is placed.
    let mut placed: Vec<bool> = fixed.iter().map(|&f| f != usize::MAX).collect();
    let mut order = Vec::new();
    while order.len() + roles.len() < p.order() {
        let next = (0..p.order())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = p.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (linked, p.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    struct Walk<'a> {
        adj: &'a [u64],
        p: &'a Graph,
        order: &'a [usize],
        map: Vec<usize>,
        used: u64,
        anchor_mask: u64,
        full: u64,
        sets: HashSet<u64>,
        embeddings: u64,
        budget: Budget,
    }
    impl Walk<'_> {
        fn go(&mut self, i: usize) -> Result<()> {
            self.budget.tick()?;
            if i == self.order.len() {
                self.embeddings += 1;
                self.sets.insert(self.used & !self.anchor_mask);
                return Ok(());
            }
            let v = self.order[i];
            let mut cand = self.full & !self.used;
            for &w in self.p.neighbors(v) {
                if self.map[w] != usize::MAX {
                    cand &= self.adj[self.map[w]];
                }
            }
            for c in bits(cand) {
                self.map[v] = c;
                self.used |= 1 << c;
                self.go(i + 1)?;
                self.used &= !(1 << c);
                self.map[v] = usize::MAX;
            }
            Ok(())
        }
    }

    // Anchors adjacent in the gadget must be adjacent in the host.
    for &(a, b) in p.edges() {
        if fixed[a] != usize::MAX && fixed[b] != usize::MAX && !g.has_edge(fixed[a], fixed[b]) {
            return Ok(AnchoredCount {
                kind,
                anchors: anchors.to_vec(),
                count: 0,
                embeddings: 0,
                sets: Vec::new(),
            });
        }
    }
    let mut walk = Walk {
        adj: &adj,
        p,
        order: &order,
        map: fixed,
        used,
        anchor_mask,
        full: full_mask(g.order()),
        sets: HashSet::new(),
        embeddings: 0,
        budget: Budget::new(limits),
    };
    walk.go(0)?;
    let mut sets: Vec<Vec<usize>> = walk.sets.iter().map(|&m| bits(m).collect()).collect();
    sets.sort();
    Ok(AnchoredCount {
        kind,
        anchors: anchors.to_vec(),
        count: sets.len(),
        embeddings: walk.embeddings,
        sets,
    })
}
