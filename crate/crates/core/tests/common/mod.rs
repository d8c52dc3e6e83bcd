//! Slow, independent oracles and corpora shared by the integration tests.
//!
//! Nothing here calls the search kernels of the library: the oracles work
//! from Held-Karp tables, explicit length vectors, permutation search and
//! raw set-partition enumeration.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtile::graph::{build, complete, complete_bipartite, cycle, path, petersen};
use subtile::{Graph, Hcf, Rational};

pub fn adjacency(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.order()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Held-Karp: is there a path visiting every vertex of `mask` once?
pub fn hamiltonian_path(adj: &[u32], mask: u32) -> bool {
    let vs = members(mask);
    let k = vs.len();
    if k == 0 {
        return false;
    }
    let mut reach = vec![0u32; 1 << k];
    for i in 0..k {
        reach[1 << i] |= 1 << i;
    }
    for s in 1usize..1 << k {
        for i in 0..k {
            if reach[s] >> i & 1 == 0 {
                continue;
            }
            for j in 0..k {
                if s >> j & 1 == 0 && adj[vs[i]] >> vs[j] & 1 == 1 {
                    reach[s | 1 << j] |= 1 << j;
                }
            }
        }
    }
    reach[(1 << k) - 1] != 0
}

/// Held-Karp from the first vertex, closing back to it.
pub fn hamiltonian_cycle(adj: &[u32], mask: u32) -> bool {
    let vs = members(mask);
    let k = vs.len();
    if k < 3 {
        return false;
    }
    let mut reach = vec![0u32; 1 << k];
    reach[1] = 1;
    for s in 1usize..1 << k {
        if s & 1 == 0 {
            continue;
        }
        for i in 0..k {
            if reach[s] >> i & 1 == 0 {
                continue;
            }
            for j in 1..k {
                if s >> j & 1 == 0 && adj[vs[i]] >> vs[j] & 1 == 1 {
                    reach[s | 1 << j] |= 1 << j;
                }
            }
        }
    }
    let full = (1 << k) - 1;
    (1..k).any(|i| reach[full] >> i & 1 == 1 && adj[vs[i]] >> vs[0] & 1 == 1)
}

/// Subdivision of `h` with edge `i` replaced by a path of `lengths[i]`
/// edges; interior vertices are appended edge by edge.
pub fn subdivide_by(h: &Graph, lengths: &[usize]) -> Graph {
    let mut next = h.order();
    let mut edges = Vec::new();
    for (&(a, b), &l) in h.edges().iter().zip(lengths) {
        let mut prev = a;
        for _ in 1..l {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, b));
    }
    Graph::from_edges(next, edges).unwrap()
}

/// Every vector of positive lengths, one per edge of `h`, adding exactly
/// `extra` interior vertices in total.
pub fn length_vectors(edges: usize, extra: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for take in 0..=left {
            cur.push(take + 1);
            go(left - take, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(extra, edges, &mut Vec::new(), &mut out);
    out
}

/// Injective map of `f` into the host vertices `targets` sending every
/// edge of `f` to an edge of the host, by plain permutation search.
pub fn embeds_onto(f: &Graph, host_adj: &[u32], targets: &[usize]) -> bool {
    if f.order() != targets.len() {
        return false;
    }
    let fadj = adjacency(f);
    let mut map = vec![usize::MAX; f.order()];
    let mut used = vec![false; targets.len()];
    fn go(
        v: usize,
        fadj: &[u32],
        host: &[u32],
        targets: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == map.len() {
            return true;
        }
        for (i, &t) in targets.iter().enumerate() {
            if used[i] {
                continue;
            }
            let ok = (0..v).all(|w| fadj[v] >> w & 1 == 0 || host[t] >> map[w] & 1 == 1);
            if ok {
                used[i] = true;
                map[v] = t;
                if go(v + 1, fadj, host, targets, map, used) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }
    go(0, &fadj, host_adj, targets, &mut map, &mut used)
}

/// Does `G[block]` contain a spanning subdivision of `h`?
pub fn block_spans_subdivision(host_adj: &[u32], block: u32, h: &Graph) -> bool {
    let vs = members(block);
    if vs.len() < h.order() {
        return false;
    }
    length_vectors(h.size(), vs.len() - h.order())
        .iter()
        .any(|l| embeds_onto(&subdivide_by(h, l), host_adj, &vs))
}

/// Is `f` isomorphic to some subdivision of `h`?
pub fn is_subdivision_oracle(f: &Graph, h: &Graph) -> bool {
    if f.order() < h.order() || f.size() + h.order() != h.size() + f.order() {
        return false;
    }
    let fadj = adjacency(f);
    let all: Vec<usize> = (0..f.order()).collect();
    length_vectors(h.size(), f.order() - h.order()).iter().any(|l| {
        let s = subdivide_by(h, l);
        s.size() == f.size() && embeds_onto(&s, &fadj, &all)
    })
}

/// Enumerates every set partition of `0..n` (restricted growth strings)
/// and reports whether one has all blocks accepted by `ok`.
pub fn some_partition(n: usize, ok: &mut dyn FnMut(u32) -> bool) -> bool {
    fn go(v: usize, n: usize, blocks: &mut Vec<u32>, ok: &mut dyn FnMut(u32) -> bool) -> bool {
        if v == n {
            return blocks.iter().all(|&b| ok(b));
        }
        for i in 0..blocks.len() {
            blocks[i] |= 1 << v;
            if go(v + 1, n, blocks, ok) {
                return true;
            }
            blocks[i] &= !(1 << v);
        }
        blocks.push(1 << v);
        let found = go(v + 1, n, blocks, ok);
        blocks.pop();
        found
    }
    go(0, n, &mut Vec::new(), ok)
}

/// Perfect tiling oracle: set partitions with every block spanned by a
/// subdivision of `h`. Paths and cycles use Held-Karp; other patterns use
/// the length-vector oracle.
pub fn tiling_oracle(g: &Graph, h: &Graph) -> bool {
    let adj = adjacency(g);
    let mut memo: HashMap<u32, bool> = HashMap::new();
    let k2 = h == &complete(2);
    let k3 = h == &complete(3);
    let min = h.order() as u32;
    some_partition(g.order(), &mut |b| {
        if b.count_ones() < min {
            return false;
        }
        *memo.entry(b).or_insert_with(|| {
            if k2 {
                hamiltonian_path(&adj, b)
            } else if k3 {
                hamiltonian_cycle(&adj, b)
            } else {
                block_spans_subdivision(&adj, b, h)
            }
        })
    })
}

/// Smallest dominating set size by trying subsets in order of size.
pub fn domination_oracle(g: &Graph) -> usize {
    let n = g.order();
    let adj = adjacency(g);
    let full: u32 = (1 << n) - 1;
    for k in 0..=n {
        let found = (0u32..1 << n).filter(|s| s.count_ones() as usize == k).any(|s| {
            let mut dom = s;
            for v in members(s) {
                dom |= adj[v];
            }
            dom == full
        });
        if found {
            return k;
        }
    }
    n
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Seeded host corpus: `count` graphs with orders in `lo..=hi` and edge
/// densities spread over `0.2..0.9`.
pub fn host_corpus(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=hi);
            let p = rng.gen_range(0.2..0.9);
            random_graph(&mut rng, n, p)
        })
        .collect()
}

/// Named small patterns used across the suites.
pub fn pattern_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", complete(2)),
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("K6", complete(6)),
        ("P3", path(3)),
        ("P4", path(4)),
        ("C4", cycle(4)),
        ("C5", cycle(5)),
        ("C6", cycle(6)),
        ("K(1,3)", complete_bipartite(1, 3)),
        ("K(2,3)", complete_bipartite(2, 3)),
        ("K(3,3)", complete_bipartite(3, 3)),
        ("U(K2,K3)", build("U(K2,K3)").unwrap()),
        ("Petersen", petersen()),
    ]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// (v + e[X] + e[Y]) / (|X| + e[Y]) and (|X| + e[Y]) - (|Y| + e[X]) from
/// raw edge counting.
pub fn f_and_d(h: &Graph, x: u32) -> (Rational, i64) {
    let inside = |m: u32| {
        h.edges()
            .iter()
            .filter(|&&(a, b)| m >> a & 1 == 1 && m >> b & 1 == 1)
            .count() as i64
    };
    let y = !x & ((1u32 << h.order()) - 1);
    let (nx, ny) = (x.count_ones() as i64, y.count_ones() as i64);
    let (ex, ey) = (inside(x), inside(y));
    let f = Rational::new((h.order() as i64 + ex + ey) as i128, (nx + ey) as i128);
    (f, (nx + ey) - (ny + ex))
}

/// `(xi, hcf)` by plain subset enumeration.
pub fn params_oracle(h: &Graph) -> (Rational, Hcf) {
    let mut xi = Rational::integer(i128::MAX / 4);
    let mut g = 0u64;
    for x in 0u32..1 << h.order() {
        let (f, d) = f_and_d(h, x);
        if f < xi {
            xi = f;
        }
        g = gcd(g, d.unsigned_abs());
    }
    (xi, if g == 0 { Hcf::Infinite } else { Hcf::Finite(g) })
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
