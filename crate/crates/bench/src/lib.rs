//! Benchmark inputs shared by the criterion targets in `benches/`.

use subtile::graph::{complete, complete_bipartite, cycle, petersen};
use subtile::Graph;

/// Patterns whose parameters are computed by subset enumeration.
pub fn patterns() -> Vec<(&'static str, Graph)> {
    vec![
        ("K6", complete(6)),
        ("K8", complete(8)),
        ("K(3,4)", complete_bipartite(3, 4)),
        ("Petersen", petersen()),
    ]
}

/// `(name, host, pattern)` tiling instances, feasible and infeasible.
pub fn tiling_instances() -> Vec<(&'static str, Graph, Graph)> {
    vec![
        ("C12/K3", cycle(12), complete(3)),
        ("K(4,5)/K7", complete_bipartite(4, 5), complete(7)),
        ("Petersen/K2", petersen(), complete(2)),
        ("K(6,6)/C4", complete_bipartite(6, 6), cycle(4)),
    ]
}
