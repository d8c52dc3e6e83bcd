//! Subdivision certificates: explicit construction and independent
//! structural validation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Witness that a subgraph of a host is a subdivision of a pattern `H`.
///
/// `routes[i]` is the host path for the `i`-th edge `(a, b)` of `H` (edges
/// in sorted order, `a < b`); it runs from `branch_map[a]` to `branch_map[b]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubdivisionCertificate {
    pub branch_map: Vec<usize>,
    pub routes: Vec<Vec<usize>>,
}

/// Whether a certificate must account for the whole domain and all of its
/// edges, or only cover its vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    /// Every vertex of the domain is covered; extra host edges are allowed.
    Spanning,
    /// Every vertex and every edge of the domain lies on the subdivision.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("branch map has {found} entries, pattern has {expected} vertices")]
    BranchMapSize { expected: usize, found: usize },
    #[error("{found} routes given for {expected} pattern edges")]
    RouteCount { expected: usize, found: usize },
    #[error("branch vertex {0} used twice")]
    NotInjective(usize),
    #[error("vertex {0} lies outside the block")]
    OutsideBlock(usize),
    #[error("route for pattern edge {0} is not a valid path")]
    BadRoute(usize),
    #[error("vertex {0} is used by more than one route or branch")]
    SharedVertex(usize),
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error("host edge {0}-{1} is not on any route")]
    ExtraEdge(usize, usize),
}

impl SubdivisionCertificate {
    /// All vertices touched by the certificate (branch images and route
    /// interiors), sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.branch_map.clone();
        for r in &self.routes {
            if r.len() > 2 {
                v.extend_from_slice(&r[1..r.len() - 1]);
            }
        }
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Re-targets every vertex through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        SubdivisionCertificate {
            branch_map: self.branch_map.iter().map(|&v| map(v)).collect(),
            routes: self
                .routes
                .iter()
                .map(|r| r.iter().map(|&v| map(v)).collect())
                .collect(),
        }
    }

    /// Checks the certificate against `host` restricted to `domain`.
    ///
    /// This never searches; it only re-checks the claimed structure.
    pub fn validate(
        &self,
        host: &Graph,
        pattern: &Graph,
        domain: &[usize],
        mode: CoverMode,
    ) -> std::result::Result<(), CertificateError> {
        if self.branch_map.len() != pattern.order() {
            return Err(CertificateError::BranchMapSize {
                expected: pattern.order(),
                found: self.branch_map.len(),
            });
        }
        if self.routes.len() != pattern.size() {
            return Err(CertificateError::RouteCount {
                expected: pattern.size(),
                found: self.routes.len(),
            });
        }
        let n = host.order();
        let mut in_domain = vec![false; n];
        for &v in domain {
            if v < n {
                in_domain[v] = true;
            }
        }
        let inside = |v: usize| v < n && in_domain[v];
        let mut used = vec![false; n];
        for &b in &self.branch_map {
            if !inside(b) {
                return Err(CertificateError::OutsideBlock(b));
            }
            if used[b] {
                return Err(CertificateError::NotInjective(b));
            }
            used[b] = true;
        }
        let mut route_edges = Vec::new();
        for (i, (&(a, b), route)) in pattern.edges().iter().zip(&self.routes).enumerate() {
            if route.len() < 2
                || route[0] != self.branch_map[a]
                || route[route.len() - 1] != self.branch_map[b]
            {
                return Err(CertificateError::BadRoute(i));
            }
            for w in route.windows(2) {
                if !host.has_edge(w[0], w[1]) {
                    return Err(CertificateError::BadRoute(i));
                }
                route_edges.push((w[0].min(w[1]), w[0].max(w[1])));
            }
            for &v in &route[1..route.len() - 1] {
                if !inside(v) {
                    return Err(CertificateError::OutsideBlock(v));
                }
                if used[v] {
                    return Err(CertificateError::SharedVertex(v));
                }
                used[v] = true;
            }
        }
        if let Some(&v) = domain.iter().find(|&&v| v >= n || !used[v]) {
            return Err(CertificateError::Uncovered(v));
        }
        if mode == CoverMode::Exact {
            route_edges.sort_unstable();
            route_edges.dedup();
            for &(u, v) in host.edges() {
                if in_domain[u] && in_domain[v] && route_edges.binary_search(&(u, v)).is_err() {
                    return Err(CertificateError::ExtraEdge(u, v));
                }
            }
        }
        Ok(())
    }

    /// Text form: one `branch <h> <vertex>` line per pattern vertex, then one
    /// `route <edge> <a> <b> : <path...>` line per pattern edge.
    pub fn to_text(&self, pattern: &Graph) -> String {
        let mut s = String::new();
        for (h, v) in self.branch_map.iter().enumerate() {
            s.push_str(&format!("branch {h} {v}\n"));
        }
        for (i, (&(a, b), r)) in pattern.edges().iter().zip(&self.routes).enumerate() {
            let path: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("route {i} {a} {b} : {}\n", path.join(" ")));
        }
        s
    }

    /// Parses the lines produced by [`to_text`](Self::to_text).
    pub fn from_lines<'a>(lines: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let bad = |msg: String| Error::Format {
            what: "subdivision certificate",
            msg,
        };
        let mut branch: Vec<(usize, usize)> = Vec::new();
        let mut routes: Vec<(usize, Vec<usize>)> = Vec::new();
        for line in lines {
            let line = line.trim();
            let nums = |s: &str| -> Result<Vec<usize>> {
                s.split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad(format!("bad number in {line:?}"))))
                    .collect()
            };
            if let Some(rest) = line.strip_prefix("branch ") {
                match nums(rest)?[..] {
                    [h, v] => branch.push((h, v)),
                    _ => return Err(bad(format!("bad branch line {line:?}"))),
                }
            } else if let Some(rest) = line.strip_prefix("route ") {
                let (head, path) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(format!("bad route line {line:?}")))?;
                let head = nums(head)?;
                if head.len() != 3 {
                    return Err(bad(format!("bad route line {line:?}")));
                }
                routes.push((head[0], nums(path)?));
            } else if !line.is_empty() {
                return Err(bad(format!("unexpected line {line:?}")));
            }
        }
        branch.sort_unstable();
        routes.sort_by_key(|r| r.0);
        if branch.iter().enumerate().any(|(i, &(h, _))| i != h)
            || routes.iter().enumerate().any(|(i, r)| i != r.0)
        {
            return Err(bad("indices are not contiguous".into()));
        }
        Ok(SubdivisionCertificate {
            branch_map: branch.into_iter().map(|b| b.1).collect(),
            routes: routes.into_iter().map(|r| r.1).collect(),
        })
    }
}

impl fmt::Display for SubdivisionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "branch {:?} routes {:?}", self.branch_map, self.routes)
    }
}

/// Builds the subdivision of `pattern` in which edge `i` becomes a path with
/// `lengths[i]` edges. Branch vertices keep their indices; interior vertices
/// follow edge by edge.
pub fn subdivide(pattern: &Graph, lengths: &[usize]) -> (Graph, SubdivisionCertificate) {
    assert_eq!(lengths.len(), pattern.size());
    assert!(lengths.iter().all(|&l| l >= 1), "path lengths must be positive");
    let mut next = pattern.order();
    let mut edges = Vec::new();
    let mut routes = Vec::new();
    for (&(a, b), &len) in pattern.edges().iter().zip(lengths) {
        let mut route = vec![a];
        for _ in 1..len {
            route.push(next);
            next += 1;
        }
        route.push(b);
        edges.extend(route.windows(2).map(|w| (w[0], w[1])));
        routes.push(route);
    }
    let g = Graph::from_edges(next, edges).expect("subdivision is simple");
    let cert = SubdivisionCertificate {
        branch_map: (0..pattern.order()).collect(),
        routes,
    };
    (g, cert)
}
