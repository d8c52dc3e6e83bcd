//! Threshold parameters of a pattern graph `H`.
//!
//! For a split `X ⊆ V(H)` with complement `Y`, subdividing every edge inside
//! `X` and inside `Y` exactly once gives a bipartite subdivision with sides
//! `X ∪ {subdividers of Y-edges}` and `Y ∪ {subdividers of X-edges}`. The
//! functional
//!
//! ```text
//! f(X) = (v + e(X) + e(Y)) / (|X| + e(Y))
//! ```
//!
//! is the ratio of its order to its first side, and
//! `d(X) = (|X| + e(Y)) - (|Y| + e(X))` is its signed imbalance. `xi` is the
//! minimum of `f`, the imbalance set collects every `d(X)`, and `hcf` is the
//! gcd of the nonzero imbalances.
//!
//! Everything here is exact subset enumeration over `2^v(H)` splits.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bipartition, BipartiteCheck, Bipartition, Graph};
use crate::rational::{Hcf, Rational};
use crate::subdivision::SubdivisionCertificate;

/// Largest pattern order accepted by the subset enumeration.
pub const MAX_PATTERN_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

fn check_pattern(h: &Graph) -> Result<()> {
    if h.size() == 0 {
        return Err(Error::EmptyPattern);
    }
    if h.order() > MAX_PATTERN_ORDER {
        return Err(Error::PatternTooLarge {
            order: h.order(),
            max: MAX_PATTERN_ORDER,
        });
    }
    Ok(())
}

fn neighbor_masks(h: &Graph) -> Vec<u32> {
    (0..h.order())
        .map(|v| h.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

/// Counts for one split, as seen by the subset walk.
#[derive(Debug, Clone, Copy)]
struct Split {
    mask: u32,
    size: u64,
    inside_x: u64,
    inside_y: u64,
}

impl Split {
    fn order(&self, v: u64) -> u64 {
        v + self.inside_x + self.inside_y
    }

    /// `|X| + e(Y)`
    fn x_side(&self) -> u64 {
        self.size + self.inside_y
    }

    /// `|Y| + e(X)`
    fn y_side(&self, v: u64) -> u64 {
        v - self.size + self.inside_x
    }

    fn imbalance(&self, v: u64) -> i64 {
        self.x_side() as i64 - self.y_side(v) as i64
    }
}

/// Visits every subset of `V(H)` in Gray-code order, updating the induced
/// edge counts incrementally.
fn for_each_split(h: &Graph, mut visit: impl FnMut(Split)) {
    let n = h.order();
    let nb = neighbor_masks(h);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut s = Split {
        mask: 0,
        size: 0,
        inside_x: 0,
        inside_y: h.size() as u64,
    };
    visit(s);
    for i in 1u64..(1u64 << n) {
        let w = i.trailing_zeros() as usize;
        let bit = 1u32 << w;
        let y = full & !s.mask;
        if s.mask & bit == 0 {
            s.inside_x += u64::from((nb[w] & s.mask).count_ones());
            s.inside_y -= u64::from((nb[w] & y).count_ones());
            s.mask |= bit;
            s.size += 1;
        } else {
            s.mask &= !bit;
            s.size -= 1;
            s.inside_x -= u64::from((nb[w] & s.mask).count_ones());
            s.inside_y += u64::from((nb[w] & (y & !bit)).count_ones());
        }
        visit(s);
    }
}

/// Canonical subset order: smaller cardinality first, then lexicographically
/// smaller sorted vertex list.
fn subset_precedes(a: u32, b: u32) -> bool {
    match a.count_ones().cmp(&b.count_ones()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            let diff = a ^ b;
            diff != 0 && a & (diff & diff.wrapping_neg()) != 0
        }
    }
}

fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn vec_to_mask(h: &Graph, x: &[usize]) -> Result<u32> {
    let mut mask = 0u32;
    for &v in x {
        if v >= h.order() {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} is not in the pattern"
            )));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// `f_H(X)` as an exact rational.
pub fn f_value(h: &Graph, x: &[usize]) -> Result<Rational> {
    if h.size() == 0 {
        return Err(Error::EmptyPattern);
    }
    let mut member = vec![false; h.order()];
    for &v in x {
        if v >= h.order() {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} is not in the pattern"
            )));
        }
        member[v] = true;
    }
    let size = member.iter().filter(|&&m| m).count();
    let inside_x = h.induced_edge_count(&member);
    let complement: Vec<bool> = member.iter().map(|m| !m).collect();
    let inside_y = h.induced_edge_count(&complement);
    Ok(Rational::new(
        (h.order() + inside_x + inside_y) as i128,
        (size + inside_y) as i128,
    ))
}

/// `xi(H)` with its canonical minimiser `X_H`: among all minimisers the one
/// of smallest cardinality, then lexicographically smallest.
pub fn xi_with_witness(h: &Graph) -> Result<(Rational, Vec<usize>)> {
    check_pattern(h)?;
    let v = h.order() as u64;
    // (numerator, denominator, mask); compare fractions by cross-multiplying.
    let mut best: Option<(u64, u64, u32)> = None;
    for_each_split(h, |s| {
        let (num, den) = (s.order(v), s.x_side());
        if den == 0 {
            return;
        }
        let better = match best {
            None => true,
            Some((bn, bd, bm)) => {
                let (lhs, rhs) = (num * bd, bn * den);
                lhs < rhs || (lhs == rhs && subset_precedes(s.mask, bm))
            }
        };
        if better {
            best = Some((num, den, s.mask));
        }
    });
    let (num, den, mask) = best.expect("a pattern with an edge has a positive denominator");
    Ok((Rational::new(num as i128, den as i128), mask_to_vec(mask)))
}

/// The set of signed imbalances `d(X)` over all splits and their hcf.
pub fn imbalance_hcf(h: &Graph) -> Result<(BTreeSet<i64>, Hcf)> {
    check_pattern(h)?;
    let v = h.order() as u64;
    let mut set = BTreeSet::new();
    for_each_split(h, |s| {
        set.insert(s.imbalance(v));
    });
    let g = set
        .iter()
        .filter(|&&d| d != 0)
        .fold(0u64, |acc, &d| acc.gcd(&d.unsigned_abs()));
    let hcf = if g == 0 { Hcf::Infinite } else { Hcf::Finite(g) };
    Ok((set, hcf))
}

fn combine_xi_star(xi: Rational, hcf: Hcf) -> Rational {
    match hcf {
        Hcf::Finite(1) => xi,
        Hcf::Finite(2) => xi.max(Rational::new(3, 2)),
        _ => Rational::integer(2),
    }
}

pub fn xi_star(h: &Graph) -> Result<Rational> {
    let (xi, _) = xi_with_witness(h)?;
    let (_, hcf) = imbalance_hcf(h)?;
    Ok(combine_xi_star(xi, hcf))
}

fn combine_threshold(xi_star: Rational, hcf: Hcf, parity: Parity) -> Rational {
    if hcf == Hcf::Finite(2) && parity == Parity::Odd {
        Rational::new(1, 2)
    } else {
        Rational::one() - xi_star.recip()
    }
}

/// Leading coefficient of the minimum-degree threshold for hosts of the
/// given order parity: `1 - 1/xi*`, except `1/2` for odd orders when the hcf
/// is exactly 2.
pub fn threshold_coefficient(h: &Graph, parity: Parity) -> Result<Rational> {
    let (xi, _) = xi_with_witness(h)?;
    let (_, hcf) = imbalance_hcf(h)?;
    Ok(combine_threshold(combine_xi_star(xi, hcf), hcf, parity))
}

/// All threshold-determining parameters of one pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub xi: Rational,
    pub witness: Vec<usize>,
    pub imbalances: BTreeSet<i64>,
    pub hcf: Hcf,
    pub xi_star: Rational,
    pub threshold_even: Rational,
    pub threshold_odd: Rational,
}

impl ParamReport {
    pub fn compute(h: &Graph) -> Result<Self> {
        let (xi, witness) = xi_with_witness(h)?;
        let (imbalances, hcf) = imbalance_hcf(h)?;
        let xi_star = combine_xi_star(xi, hcf);
        Ok(ParamReport {
            xi,
            witness,
            imbalances,
            hcf,
            xi_star,
            threshold_even: combine_threshold(xi_star, hcf, Parity::Even),
            threshold_odd: combine_threshold(xi_star, hcf, Parity::Odd),
        })
    }

    /// Stable `key = value` lines.
    pub fn to_text(&self) -> String {
        let list = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(" ");
        format!(
            "xi = {}\nwitness = {}\nimbalances = {}\nhcf = {}\nxi_star = {}\nthreshold_even = {}\nthreshold_odd = {}\n",
            self.xi,
            list(&mut self.witness.iter().map(|v| v.to_string())),
            list(&mut self.imbalances.iter().map(|v| v.to_string())),
            self.hcf,
            self.xi_star,
            self.threshold_even,
            self.threshold_odd,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The bipartite subdivision obtained by subdividing inside edges of a split
/// exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSubdivision {
    pub graph: Graph,
    /// `side_a` is `X ∪ {subdividers of Y-edges}`, `side_b` the rest.
    pub parts: Bipartition,
    pub certificate: SubdivisionCertificate,
}

/// Subdivides every edge inside `x` and inside its complement once. Pattern
/// vertices keep their indices; subdividers follow in edge order.
pub fn split_subdivision(h: &Graph, x: &[usize]) -> Result<SplitSubdivision> {
    let mut in_x = vec![false; h.order()];
    for &v in x {
        if v >= h.order() {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} is not in the pattern"
            )));
        }
        in_x[v] = true;
    }
    let lengths: Vec<usize> = h
        .edges()
        .iter()
        .map(|&(a, b)| if in_x[a] == in_x[b] { 2 } else { 1 })
        .collect();
    let (graph, certificate) = crate::subdivision::subdivide(h, &lengths);
    let mut side_a: Vec<usize> = (0..h.order()).filter(|&v| in_x[v]).collect();
    let mut side_b: Vec<usize> = (0..h.order()).filter(|&v| !in_x[v]).collect();
    for (route, &(a, _)) in certificate.routes.iter().zip(h.edges()) {
        if route.len() == 3 {
            // The subdivider sits opposite its endpoints.
            if in_x[a] {
                side_b.push(route[1]);
            } else {
                side_a.push(route[1]);
            }
        }
    }
    Ok(SplitSubdivision {
        graph,
        parts: Bipartition::new(side_a, side_b),
        certificate,
    })
}

/// `H*`: the split subdivision for the canonical minimiser `X_H`.
pub fn construct_h_star(h: &Graph) -> Result<SplitSubdivision> {
    let (_, witness) = xi_with_witness(h)?;
    split_subdivision(h, &witness)
}

/// Critical chromatic number of a bipartite graph with at least one edge:
/// `v / (v - sigma)`, where `sigma` sums the smaller side of each component.
pub fn chi_cr_bipartite(f: &Graph) -> Result<Rational> {
    if f.size() == 0 {
        return Err(Error::EmptyPattern);
    }
    let BipartiteCheck::Bipartite(parts) = bipartition(f) else {
        return Err(Error::NotBipartite);
    };
    let mut side = vec![0u8; f.order()];
    for &v in &parts.side_b {
        side[v] = 1;
    }
    let sigma: usize = f
        .components()
        .iter()
        .map(|comp| {
            let b = comp.iter().filter(|&&v| side[v] == 1).count();
            b.min(comp.len() - b)
        })
        .sum();
    let v = f.order();
    Ok(Rational::new(v as i128, (v - sigma) as i128))
}

/// One family of components in a [`HatGraph`]: `multiplicity` copies of the
/// split subdivision for `subset`. With `sign = +1` the `X`-side of each copy
/// joins the larger part; with `-1` it joins the smaller part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeEntry {
    pub subset: Vec<usize>,
    pub multiplicity: usize,
    pub sign: i8,
}

/// Disjoint union of bipartite subdivisions of a pattern whose two parts
/// differ by `imbalance`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatGraph {
    pub pattern: Graph,
    pub graph: Graph,
    /// `side_a` is the smaller part (`small_side` vertices), `side_b` the
    /// larger (`small_side + imbalance`).
    pub parts: Bipartition,
    pub small_side: usize,
    pub imbalance: usize,
    pub recipe: Vec<RecipeEntry>,
    /// Vertex set and spanning certificate of each component, in layout order.
    pub components: Vec<(Vec<usize>, SubdivisionCertificate)>,
}

impl HatGraph {
    /// Lays out the components described by `recipe`, in order. The total
    /// signed imbalance must be positive.
    pub fn from_recipe(h: &Graph, recipe: Vec<RecipeEntry>) -> Result<Self> {
        if h.size() == 0 {
            return Err(Error::EmptyPattern);
        }
        let mut graph = Graph::empty(0);
        let mut side_a = Vec::new();
        let mut side_b = Vec::new();
        let mut components = Vec::new();
        for entry in &recipe {
            if entry.sign != 1 && entry.sign != -1 {
                return Err(Error::InvalidParameter(format!(
                    "recipe sign must be +1 or -1, got {}",
                    entry.sign
                )));
            }
            let piece = split_subdivision(h, &entry.subset)?;
            for _ in 0..entry.multiplicity {
                let off = graph.order();
                graph = graph.disjoint_union(&piece.graph);
                let shift = |v: &usize| v + off;
                let (to_big, to_small) = if entry.sign > 0 {
                    (&piece.parts.side_a, &piece.parts.side_b)
                } else {
                    (&piece.parts.side_b, &piece.parts.side_a)
                };
                side_b.extend(to_big.iter().map(shift));
                side_a.extend(to_small.iter().map(shift));
                components.push((
                    (off..off + piece.graph.order()).collect(),
                    piece.certificate.relabel(|v| v + off),
                ));
            }
        }
        if side_b.len() <= side_a.len() {
            return Err(Error::InvalidParameter(format!(
                "recipe yields parts {} and {}; the second must be strictly larger",
                side_a.len(),
                side_b.len()
            )));
        }
        let small_side = side_a.len();
        let imbalance = side_b.len() - side_a.len();
        Ok(HatGraph {
            pattern: h.clone(),
            graph,
            parts: Bipartition::new(side_a, side_b),
            small_side,
            imbalance,
            recipe,
            components,
        })
    }
}

/// Smallest disjoint union of bipartite subdivisions of `H` whose parts
/// differ by exactly `hcf(H)`.
///
/// Only split subdivisions (inside edges subdivided once, cross edges kept)
/// are considered as components. Any bipartite subdivision with branch split
/// `X` has imbalance `±d(X)`: cross edges are subdivided an even number of
/// times and inside edges an odd number, and each extra pair of subdividers
/// lands on both sides. Extra subdividers only add order, so the split
/// subdivisions are the cheapest components for every achievable imbalance.
///
/// The minimum is a shortest path over net-imbalance states, each step
/// adding one component with weight equal to its order.
pub fn construct_hat_h(h: &Graph) -> Result<HatGraph> {
    check_pattern(h)?;
    let (_, hcf) = imbalance_hcf(h)?;
    let target = match hcf {
        Hcf::Finite(t) => t as i64,
        Hcf::Infinite => return Err(Error::InfiniteHcf),
    };
    let v = h.order() as u64;

    // Cheapest component per absolute imbalance. Ties prefer a positive
    // imbalance, then the canonical subset order.
    let mut best: BTreeMap<u64, (u64, bool, u32)> = BTreeMap::new();
    for_each_split(h, |s| {
        let d = s.imbalance(v);
        if d == 0 {
            return;
        }
        let cand = (s.order(v), d > 0, s.mask);
        let replace = match best.get(&d.unsigned_abs()) {
            None => true,
            Some(&(order, positive, mask)) => {
                cand.0 < order
                    || (cand.0 == order
                        && (cand.1 && !positive || cand.1 == positive && subset_precedes(cand.2, mask)))
            }
        };
        if replace {
            best.insert(d.unsigned_abs(), cand);
        }
    });

    let max_abs = *best.keys().last().expect("finite hcf has a nonzero imbalance") as i64;
    let radius = target + 2 * max_abs;
    let width = (2 * radius + 1) as usize;
    let idx = |s: i64| (s + radius) as usize;
    let mut dist = vec![u64::MAX; width];
    let mut pred: Vec<Option<(i64, u64, i8)>> = vec![None; width];
    let mut heap = BinaryHeap::new();
    dist[idx(0)] = 0;
    heap.push(Reverse((0u64, 0i64)));
    while let Some(Reverse((d, s))) = heap.pop() {
        if d > dist[idx(s)] {
            continue;
        }
        if s == target {
            break;
        }
        for (&abs, &(order, _, _)) in &best {
            for dir in [1i64, -1] {
                let next = s + dir * abs as i64;
                if next.abs() > radius {
                    continue;
                }
                let nd = d + order;
                if nd < dist[idx(next)] {
                    dist[idx(next)] = nd;
                    pred[idx(next)] = Some((s, abs, dir as i8));
                    heap.push(Reverse((nd, next)));
                }
            }
        }
    }

    let mut steps: Vec<(u64, i8)> = Vec::new();
    let mut s = target;
    while s != 0 {
        let (prev, abs, dir) = pred[idx(s)].expect("target reachable: it is the gcd");
        steps.push((abs, dir));
        s = prev;
    }
    let mut grouped: BTreeMap<(u32, i8), usize> = BTreeMap::new();
    for (abs, dir) in steps {
        let (_, positive, mask) = best[&abs];
        let sign = if positive { dir } else { -dir };
        *grouped.entry((mask, sign)).or_default() += 1;
    }
    let mut recipe: Vec<RecipeEntry> = grouped
        .into_iter()
        .map(|((mask, sign), multiplicity)| RecipeEntry {
            subset: mask_to_vec(mask),
            multiplicity,
            sign,
        })
        .collect();
    recipe.sort_by(|a, b| {
        let (ma, mb) = (
            vec_to_mask(h, &a.subset).unwrap(),
            vec_to_mask(h, &b.subset).unwrap(),
        );
        if ma == mb {
            b.sign.cmp(&a.sign)
        } else if subset_precedes(ma, mb) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    HatGraph::from_recipe(h, recipe)
}
