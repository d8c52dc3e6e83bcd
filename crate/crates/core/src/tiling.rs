//! Perfect subdivision tilings: exact decision, certificate checking,
//! obstruction certificates and the explicit reservoir tiling of complete
//! bipartite graphs.

use std::collections::HashMap;
use std::fmt;

use crate::embedding::{
    bits, block_admits, degrees_desc, full_mask, spanning_in_block, Budget, Plan, SearchLimits,
};
use crate::error::{Error, Result};
use crate::graph::{bipartition, complete_bipartite, BipartiteCheck, Bipartition, Graph};
use crate::params::{imbalance_hcf, xi_with_witness, HatGraph};
use crate::rational::{Hcf, Rational};
use crate::subdivision::{CertificateError, CoverMode, SubdivisionCertificate};

/// Largest host the tiling solver accepts.
pub const MAX_TILING_HOST: usize = 24;

/// Partition of the host into blocks, each with a spanning subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingCertificate {
    pub blocks: Vec<Vec<usize>>,
    pub witnesses: Vec<SubdivisionCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TilingError {
    #[error("{blocks} blocks but {witnesses} witnesses")]
    WitnessCount { blocks: usize, witnesses: usize },
    #[error("vertex {0} is not a host vertex")]
    OutOfRange(usize),
    #[error("vertex {0} lies in two blocks")]
    OverlappingBlocks(usize),
    #[error("vertex {0} is in no block")]
    Uncovered(usize),
    #[error("block {block}: {reason}")]
    Witness { block: usize, reason: CertificateError },
}

/// Re-checks a tiling certificate without searching.
pub fn verify_tiling(g: &Graph, h: &Graph, cert: &TilingCertificate) -> std::result::Result<(), TilingError> {
    if cert.blocks.len() != cert.witnesses.len() {
        return Err(TilingError::WitnessCount {
            blocks: cert.blocks.len(),
            witnesses: cert.witnesses.len(),
        });
    }
    let mut seen = vec![false; g.order()];
    for block in &cert.blocks {
        for &v in block {
            if v >= g.order() {
                return Err(TilingError::OutOfRange(v));
            }
            if seen[v] {
                return Err(TilingError::OverlappingBlocks(v));
            }
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(TilingError::Uncovered(v));
    }
    for (i, (block, w)) in cert.blocks.iter().zip(&cert.witnesses).enumerate() {
        w.validate(g, h, block, CoverMode::Spanning)
            .map_err(|reason| TilingError::Witness { block: i, reason })?;
    }
    Ok(())
}

impl TilingCertificate {
    /// `block <i> : <vertices>` followed by that block's certificate lines.
    pub fn to_text(&self, h: &Graph) -> String {
        let mut s = String::new();
        for (i, (b, w)) in self.blocks.iter().zip(&self.witnesses).enumerate() {
            let vs: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("block {i} : {}\n", vs.join(" ")));
            s.push_str(&w.to_text(h));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Format {
            what: "tiling certificate",
            msg,
        };
        let mut blocks = Vec::new();
        let mut sections: Vec<Vec<&str>> = Vec::new();
        for line in text.lines() {
            let t = line.trim();
            // The status line of the `tile` command may precede the blocks.
            if t.is_empty() || t.starts_with('#') || t.starts_with("TILING FOUND") {
                continue;
            }
            if let Some(rest) = t.strip_prefix("block ") {
                let (_, vs) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(format!("bad block line {t:?}")))?;
                let vs: std::result::Result<Vec<usize>, _> = vs.split_whitespace().map(str::parse).collect();
                blocks.push(vs.map_err(|_| bad(format!("bad block line {t:?}")))?);
                sections.push(Vec::new());
            } else {
                sections
                    .last_mut()
                    .ok_or_else(|| bad("certificate line before the first block".into()))?
                    .push(t);
            }
        }
        let witnesses = sections
            .into_iter()
            .map(SubdivisionCertificate::from_lines)
            .collect::<Result<Vec<_>>>()?;
        Ok(TilingCertificate { blocks, witnesses })
    }
}

struct Solver {
    adj: Vec<u64>,
    plan: Plan,
    pattern_degrees: Vec<usize>,
    pattern_edges: usize,
    min_block: usize,
    connected_pattern: bool,
    budget: Budget,
    feasible: HashMap<u64, Option<SubdivisionCertificate>>,
    /// First block of a tiling of the key, or `None` when none exists.
    memo: HashMap<u64, Option<u64>>,
}

impl Solver {
    fn components(&self, rem: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut left = rem;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= rem & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    fn connected(&self, set: u64) -> bool {
        self.components(set).len() <= 1
    }

    fn block_feasible(&mut self, block: u64) -> Result<bool> {
        if let Some(r) = self.feasible.get(&block) {
            return Ok(r.is_some());
        }
        let found = if block_admits(&self.adj, block, &self.pattern_degrees, self.pattern_edges) {
            spanning_in_block(&self.adj, block, &self.plan, false, &mut self.budget)?
        } else {
            None
        };
        let ok = found.is_some();
        self.feasible.insert(block, found);
        Ok(ok)
    }

    fn solve(&mut self, rem: u64) -> Result<bool> {
        if rem == 0 {
            return Ok(true);
        }
        if self.connected_pattern {
            let comps = self.components(rem);
            if comps.iter().any(|c| (c.count_ones() as usize) < self.min_block) {
                return Ok(false);
            }
            if comps.len() > 1 {
                for c in comps {
                    if !self.solve(c)? {
                        return Ok(false);
                    }
                }
                return Ok(true);
            }
        } else if (rem.count_ones() as usize) < self.min_block {
            return Ok(false);
        }
        if let Some(r) = self.memo.get(&rem) {
            return Ok(r.is_some());
        }
        let low = rem & rem.wrapping_neg();
        let rest = rem & !low;
        // Submasks of `rest` in decreasing order: the whole remainder first.
        let mut sub = rest;
        loop {
            self.budget.tick()?;
            let block = sub | low;
            if (block.count_ones() as usize) >= self.min_block
                && (!self.connected_pattern || self.connected(block))
                && self.block_feasible(block)?
                && self.solve(rem & !block)?
            {
                self.memo.insert(rem, Some(block));
                return Ok(true);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        self.memo.insert(rem, None);
        Ok(false)
    }

    fn collect(&self, rem: u64, out: &mut Vec<u64>) {
        if rem == 0 {
            return;
        }
        if self.connected_pattern {
            let comps = self.components(rem);
            if comps.len() > 1 {
                for c in comps {
                    self.collect(c, out);
                }
                return;
            }
        }
        let block = self.memo[&rem].expect("solved remainder");
        out.push(block);
        self.collect(rem & !block, out);
    }
}

/// Decides whether `g` has a perfect `h`-subdivision tiling; each block's
/// subdivision lives in the block's induced subgraph.
///
/// The block containing the lowest uncovered vertex is branched on, largest
/// candidate first, and remainders are memoized. For connected `h` blocks
/// are connected and components of the remainder are solved separately.
pub fn find_perfect_subdivision_tiling(
    g: &Graph,
    h: &Graph,
    limits: SearchLimits,
) -> Result<Option<TilingCertificate>> {
    if h.size() == 0 {
        return Err(Error::EmptyPattern);
    }
    if g.order() > MAX_TILING_HOST {
        return Err(Error::HostTooLarge {
            order: g.order(),
            max: MAX_TILING_HOST,
        });
    }
    let mut solver = Solver {
        adj: g.adjacency_masks().expect("order checked"),
        plan: Plan::new(h),
        pattern_degrees: degrees_desc(h),
        pattern_edges: h.size(),
        min_block: h.order(),
        connected_pattern: h.is_connected(),
        budget: Budget::new(limits),
        feasible: HashMap::new(),
        memo: HashMap::new(),
    };
    let all = full_mask(g.order());
    if !solver.solve(all)? {
        return Ok(None);
    }
    let mut masks = Vec::new();
    solver.collect(all, &mut masks);
    masks.sort_by_key(|m| m.trailing_zeros());
    let blocks = masks.iter().map(|&m| bits(m).collect()).collect();
    let witnesses = masks
        .iter()
        .map(|m| solver.feasible[m].clone().expect("feasible block"))
        .collect();
    Ok(Some(TilingCertificate { blocks, witnesses }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionKind {
    Ratio,
    Divisibility,
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionKind::Ratio => "ratio",
            ObstructionKind::Divisibility => "divisibility",
        })
    }
}

/// A bipartite piece of the host that no perfect tiling can cover: either
/// its parts are too unbalanced for any bipartite subdivision of the
/// pattern, or their difference is not a multiple of the pattern's hcf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub kind: ObstructionKind,
    /// Smaller part `P` and larger part `Q` of the piece.
    pub parts: Bipartition,
    pub xi: Rational,
    pub hcf: Hcf,
}

impl ObstructionCertificate {
    /// `|Q| / |P|`, or `None` when `P` is empty.
    pub fn ratio(&self) -> Option<Rational> {
        let (p, q) = self.parts.sizes();
        (p > 0).then(|| Rational::new(q as i128, p as i128))
    }

    /// `1 / (ξ - 1)`.
    pub fn ratio_bound(&self) -> Rational {
        (self.xi - Rational::one()).recip()
    }

    pub fn difference(&self) -> i64 {
        let (p, q) = self.parts.sizes();
        q as i64 - p as i64
    }

    /// Whether the stated inequality holds and the parts really form a
    /// bipartite piece of `g` that no edge leaves.
    pub fn validate(&self, g: &Graph) -> bool {
        let (p, q) = self.parts.sizes();
        if p > q || !self.parts_valid_in(g) {
            return false;
        }
        match self.kind {
            ObstructionKind::Ratio => ratio_violated(p, q, self.xi),
            ObstructionKind::Divisibility => !self.hcf.divides(self.difference()),
        }
    }

    /// Both parts independent, and no edge from the piece to the rest.
    fn parts_valid_in(&self, g: &Graph) -> bool {
        let n = g.order();
        let mut side = vec![0u8; n];
        for &v in &self.parts.side_a {
            if v >= n || side[v] != 0 {
                return false;
            }
            side[v] = 1;
        }
        for &v in &self.parts.side_b {
            if v >= n || side[v] != 0 {
                return false;
            }
            side[v] = 2;
        }
        g.edges()
            .iter()
            .all(|&(u, v)| (side[u] == 0) == (side[v] == 0) && (side[u] == 0 || side[u] != side[v]))
    }

    pub fn to_text(&self) -> String {
        let (p, q) = self.parts.sizes();
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let detail = match self.kind {
            ObstructionKind::Ratio => format!(
                "ratio {} > bound {}",
                self.ratio().map_or("infinite".to_string(), |r| r.to_string()),
                self.ratio_bound()
            ),
            ObstructionKind::Divisibility => {
                format!(
                    "difference {} not divisible by hcf {}",
                    self.difference(),
                    self.hcf
                )
            }
        };
        format!(
            "obstruction {}\nsizes {p} {q}\n{detail}\nxi {}\nhcf {}\nsmall : {}\nlarge : {}\n",
            self.kind,
            self.xi,
            self.hcf,
            join(&self.parts.side_a),
            join(&self.parts.side_b)
        )
    }

    pub fn summary(&self) -> String {
        let (p, q) = self.parts.sizes();
        match self.kind {
            ObstructionKind::Ratio => format!("ratio obstruction on parts {p}+{q}"),
            ObstructionKind::Divisibility => format!(
                "divisibility obstruction on parts {p}+{q}: difference {} vs hcf {}",
                self.difference(),
                self.hcf
            ),
        }
    }
}

/// `q/p > 1/(ξ-1)` by cross-multiplication, so `p = 0` is allowed.
fn ratio_violated(p: usize, q: usize, xi: Rational) -> bool {
    Rational::integer(q as i128) * (xi - Rational::one()) > Rational::integer(p as i128)
}

/// Looks for a ratio or divisibility obstruction. `None` is inconclusive.
///
/// For a connected pattern every block sits inside one component, so each
/// component is checked on its own. Blocks of a disconnected pattern may
/// span components, so only a connected host is checked then.
pub fn obstruction_certificate(g: &Graph, h: &Graph) -> Result<Option<ObstructionCertificate>> {
    if h.size() == 0 {
        return Err(Error::EmptyPattern);
    }
    let (xi, _) = xi_with_witness(h)?;
    let (_, hcf) = imbalance_hcf(h)?;
    let pieces = if h.is_connected() {
        g.components()
    } else if g.is_connected() {
        vec![(0..g.order()).collect()]
    } else {
        Vec::new()
    };
    for piece in pieces {
        let sub = g.induced(&piece);
        let BipartiteCheck::Bipartite(b) = bipartition(&sub) else {
            continue;
        };
        let lift = |s: &[usize]| s.iter().map(|&v| piece[v]).collect::<Vec<_>>();
        let (mut small, mut large) = (lift(&b.side_a), lift(&b.side_b));
        if small.len() > large.len() {
            std::mem::swap(&mut small, &mut large);
        }
        let parts = Bipartition::new(small, large);
        let (p, q) = parts.sizes();
        let kind = if ratio_violated(p, q, xi) {
            ObstructionKind::Ratio
        } else if !hcf.divides(q as i64 - p as i64) {
            ObstructionKind::Divisibility
        } else {
            continue;
        };
        return Ok(Some(ObstructionCertificate { kind, parts, xi, hcf }));
    }
    Ok(None)
}

/// The complete bipartite host of the reservoir construction with its
/// explicit tiling. Host sides are `X = 0..x` and `Y = x..x+y`.
#[derive(Debug, Clone)]
pub struct HatTiling {
    pub host: Graph,
    pub x: usize,
    pub y: usize,
    pub certificate: TilingCertificate,
}

/// Tiles `K_{x,y}` with `x = (2h'+t)b - h'a`, `y = (2h'+t)b - (h'+t)a` by
/// `b - a` copies of `hat` with the small side in `X` and `b` copies with
/// the small side in `Y`. Each component of each copy becomes one block.
pub fn hat_tiling_complete_bipartite(
    h_prime: usize,
    t: usize,
    b: usize,
    a: usize,
    hat: &HatGraph,
) -> Result<HatTiling> {
    if a > b {
        return Err(Error::InvalidParameter(format!(
            "need a <= b, got a = {a}, b = {b}"
        )));
    }
    if hat.small_side != h_prime || hat.imbalance != t {
        return Err(Error::InvalidParameter(format!(
            "hat graph has parts ({}, {}), expected ({h_prime}, {})",
            hat.small_side,
            hat.small_side + hat.imbalance,
            h_prime + t
        )));
    }
    let x = (2 * h_prime + t) * b - h_prime * a;
    let y = (2 * h_prime + t) * b - (h_prime + t) * a;
    let host = complete_bipartite(x, y);
    let mut next_x = 0;
    let mut next_y = x;
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    let small_in_x = std::iter::repeat_n(true, b - a).chain(std::iter::repeat_n(false, b));
    for small_x in small_in_x {
        let mut place = vec![usize::MAX; hat.graph.order()];
        let (small_start, large_start) = if small_x {
            (&mut next_x, &mut next_y)
        } else {
            (&mut next_y, &mut next_x)
        };
        for &v in &hat.parts.side_a {
            place[v] = *small_start;
            *small_start += 1;
        }
        for &v in &hat.parts.side_b {
            place[v] = *large_start;
            *large_start += 1;
        }
        for (vs, cert) in &hat.components {
            let mut block: Vec<usize> = vs.iter().map(|&v| place[v]).collect();
            block.sort_unstable();
            blocks.push(block);
            witnesses.push(cert.relabel(|v| place[v]));
        }
    }
    debug_assert_eq!((next_x, next_y), (x, x + y));
    Ok(HatTiling {
        host,
        x,
        y,
        certificate: TilingCertificate { blocks, witnesses },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, complete, cycle, path};
    use crate::params::construct_hat_h;

    fn tile(g: &Graph, h: &Graph) -> Option<TilingCertificate> {
        let t = find_perfect_subdivision_tiling(g, h, SearchLimits::default()).unwrap();
        if let Some(c) = &t {
            verify_tiling(g, h, c).unwrap();
        }
        t
    }

    #[test]
    fn solver_examples() {
        let c = tile(&cycle(6), &complete(3)).unwrap();
        assert_eq!(c.blocks, vec![(0..6).collect::<Vec<_>>()]);
        let c = tile(&build("U(K3,K3)").unwrap(), &complete(3)).unwrap();
        assert_eq!(c.blocks.len(), 2);
        assert!(tile(&complete_bipartite(1, 3), &complete(2)).is_none());
        assert!(tile(&path(4), &complete(2)).is_some());
    }

    #[test]
    fn rejects_large_hosts_and_empty_patterns() {
        let big = complete(25);
        assert!(matches!(
            find_perfect_subdivision_tiling(&big, &complete(2), SearchLimits::default()),
            Err(Error::HostTooLarge { .. })
        ));
        assert_eq!(
            find_perfect_subdivision_tiling(&cycle(4), &Graph::empty(2), SearchLimits::default()),
            Err(Error::EmptyPattern)
        );
    }

    #[test]
    fn verifier_reports_breaches() {
        let g = cycle(6);
        let h = complete(3);
        let good = tile(&g, &h).unwrap();
        let mut bad = good.clone();
        bad.blocks.push(vec![0]);
        bad.witnesses.push(good.witnesses[0].clone());
        assert_eq!(
            verify_tiling(&g, &h, &bad),
            Err(TilingError::OverlappingBlocks(0))
        );

        let mut bad = good.clone();
        bad.witnesses[0].routes[0] = vec![bad.witnesses[0].routes[0][0], 99];
        assert!(matches!(
            verify_tiling(&g, &h, &bad),
            Err(TilingError::Witness {
                reason: CertificateError::BadRoute(0),
                ..
            })
        ));
        let h2 = complete(2);
        let c = tile(&path(4), &h2).unwrap();
        let mut bad = c.clone();
        bad.blocks.pop();
        bad.witnesses.pop();
        assert!(matches!(
            verify_tiling(&path(4), &h2, &bad),
            Err(TilingError::Uncovered(_))
        ));
    }

    #[test]
    fn certificate_text_round_trip() {
        let h = complete(3);
        let c = tile(&build("U(C4,K3)").unwrap(), &h).unwrap();
        assert_eq!(TilingCertificate::from_text(&c.to_text(&h)).unwrap(), c);
    }

    #[test]
    fn obstruction_examples() {
        let o = obstruction_certificate(&complete_bipartite(3, 9), &complete(5))
            .unwrap()
            .unwrap();
        assert_eq!(o.kind, ObstructionKind::Ratio);
        assert_eq!(o.ratio(), Some(Rational::integer(3)));
        assert_eq!(o.ratio_bound(), Rational::integer(2));
        assert!(o.validate(&complete_bipartite(3, 9)));

        let o = obstruction_certificate(&complete_bipartite(5, 6), &complete(7))
            .unwrap()
            .unwrap();
        assert_eq!(o.kind, ObstructionKind::Divisibility);
        assert_eq!((o.difference(), o.hcf), (1, Hcf::Finite(2)));

        let g = build("U(K5,K(3,4))").unwrap();
        let o = obstruction_certificate(&g, &complete(7)).unwrap().unwrap();
        assert_eq!(o.kind, ObstructionKind::Divisibility);
        assert_eq!(o.parts.sizes(), (3, 4));
        assert!(o.validate(&g));

        assert!(obstruction_certificate(&complete(6), &complete(3))
            .unwrap()
            .is_none());
    }

    #[test]
    fn obstruction_validation_rejects_bogus_parts() {
        let g = complete_bipartite(3, 9);
        let mut o = obstruction_certificate(&g, &complete(5)).unwrap().unwrap();
        o.parts = Bipartition::new(vec![0, 1, 2], (3..11).collect());
        assert!(!o.validate(&g));
    }

    #[test]
    fn hat_tilings_validate() {
        let hat = construct_hat_h(&complete(2)).unwrap();
        let ht = hat_tiling_complete_bipartite(hat.small_side, hat.imbalance, 3, 1, &hat).unwrap();
        verify_tiling(&ht.host, &complete(2), &ht.certificate).unwrap();
        assert!(hat_tiling_complete_bipartite(1, 5, 1, 0, &hat).is_err());
        assert!(hat_tiling_complete_bipartite(hat.small_side, hat.imbalance, 1, 2, &hat).is_err());
    }
}
