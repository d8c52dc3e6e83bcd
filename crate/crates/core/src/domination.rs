//! Domination numbers and the `(1 + ln(δ+1)) n / (δ+1)` upper bound.
//!
//! The logarithm is bounded from above in fixed point with scale `2^60`:
//! `ln m = 2 atanh(z)` with `z = (m-1)/(m+1)`, summing 64 terms of
//! `z^(2k+1)/(2k+1)` with every operation rounded up, plus the geometric
//! tail bound `z^129 / (129 (1 - z^2))`.

use crate::embedding::{bits, full_mask, host_masks, Budget, SearchLimits};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

const SCALE_BITS: u32 = 60;
const SERIES_TERMS: u32 = 64;

fn div_ceil(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

/// Rational upper bound on `ln m` for `1 <= m < 2^31`.
pub fn ln_upper_bound(m: u64) -> Rational {
    assert!((1..1 << 31).contains(&m), "argument out of range");
    if m == 1 {
        return Rational::zero();
    }
    let one = 1u128 << SCALE_BITS;
    let (lo, hi) = (m as u128 - 1, m as u128 + 1);
    let z = div_ceil(lo << SCALE_BITS, hi);
    let z2 = div_ceil((lo * lo) << SCALE_BITS, hi * hi).min(one);
    let mut power = z;
    let mut sum = 0u128;
    for k in 0..SERIES_TERMS as u128 {
        sum += div_ceil(power, 2 * k + 1);
        power = div_ceil(power * z2, one);
    }
    // power >= z^(2*64+1) now; 1/(1 - z^2) = (m+1)^2 / (4m).
    let n = 2 * SERIES_TERMS as u128 + 1;
    sum += div_ceil(power * hi * hi, n * 4 * m as u128);
    Rational::new(2 * sum as i128, one as i128)
}

/// Result of [`domination`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationReport {
    /// Minimum dominating set, or `None` when the budget ran out.
    pub exact_set: Option<Vec<usize>>,
    pub greedy_set: Vec<usize>,
    pub min_degree: usize,
    /// Upper bound used for `ln(δ+1)`.
    pub ln_upper: Rational,
    /// `(1 + ln_upper) n / (δ+1)`.
    pub bound: Rational,
}

impl DominationReport {
    pub fn exact(&self) -> Option<usize> {
        self.exact_set.as_ref().map(Vec::len)
    }

    /// `exact <= bound`; `None` when the exact value is unknown.
    pub fn bound_holds(&self) -> Option<bool> {
        self.exact().map(|e| Rational::integer(e as i128) <= self.bound)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        match &self.exact_set {
            Some(set) => s.push_str(&format!("exact {} : {}\n", set.len(), join(set))),
            None => s.push_str("exact unknown (budget exceeded)\n"),
        }
        s.push_str(&format!(
            "greedy {} : {}\n",
            self.greedy_set.len(),
            join(&self.greedy_set)
        ));
        s.push_str(&format!(
            "min_degree {}\nln_upper {}\nbound {}\n",
            self.min_degree, self.ln_upper, self.bound
        ));
        match self.bound_holds() {
            Some(b) => s.push_str(&format!("bound_holds {b}\n")),
            None => s.push_str("bound_holds unknown\n"),
        }
        s
    }
}

fn closed(adj: &[u64]) -> Vec<u64> {
    adj.iter().enumerate().map(|(v, &m)| m | 1 << v).collect()
}

/// Repeatedly takes the vertex dominating the most undominated vertices,
/// smallest index on ties.
pub fn greedy_dominating_set(g: &Graph) -> Result<Vec<usize>> {
    let nb = closed(&host_masks(g)?);
    let mut left = full_mask(g.order());
    let mut set = Vec::new();
    while left != 0 {
        let best = (0..g.order())
            .max_by_key(|&v| ((nb[v] & left).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        set.push(best);
        left &= !nb[best];
    }
    set.sort_unstable();
    Ok(set)
}

struct Search<'a> {
    nb: &'a [u64],
    max_cover: u32,
    best: Vec<usize>,
    current: Vec<usize>,
    budget: Budget,
}

impl Search<'_> {
    fn go(&mut self, left: u64) -> Result<()> {
        self.budget.tick()?;
        if left == 0 {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        let lower = left.count_ones().div_ceil(self.max_cover) as usize;
        if self.current.len() + lower >= self.best.len() {
            return Ok(());
        }
        // Some vertex of N[v] must be chosen for the lowest undominated v.
        let v = left.trailing_zeros() as usize;
        let mut options: Vec<usize> = bits(self.nb[v]).collect();
        options.sort_by_key(|&w| (std::cmp::Reverse((self.nb[w] & left).count_ones()), w));
        for w in options {
            self.current.push(w);
            self.go(left & !self.nb[w])?;
            self.current.pop();
        }
        Ok(())
    }
}

/// Minimum dominating set by branch and bound, seeded with the greedy set.
pub fn exact_dominating_set(g: &Graph, limits: SearchLimits) -> Result<Vec<usize>> {
    if g.order() == 0 {
        return Err(Error::InvalidGraph("domination needs at least one vertex".into()));
    }
    let nb = closed(&host_masks(g)?);
    let greedy = greedy_dominating_set(g)?;
    let mut s = Search {
        max_cover: nb.iter().map(|m| m.count_ones()).max().unwrap(),
        nb: &nb,
        best: greedy,
        current: Vec::new(),
        budget: Budget::new(limits),
    };
    s.go(full_mask(g.order()))?;
    let mut best = s.best;
    best.sort_unstable();
    Ok(best)
}

/// Exact and greedy dominating sets together with the bound. A budget
/// overrun leaves the exact set empty but still reports the rest.
pub fn domination(g: &Graph, limits: SearchLimits) -> Result<DominationReport> {
    let exact_set = match exact_dominating_set(g, limits) {
        Ok(s) => Some(s),
        Err(Error::SearchBudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let greedy_set = greedy_dominating_set(g)?;
    let delta = g.min_degree();
    let ln_upper = ln_upper_bound(delta as u64 + 1);
    let bound = (Rational::one() + ln_upper) * Rational::new(g.order() as i128, delta as i128 + 1);
    Ok(DominationReport {
        exact_set,
        greedy_set,
        min_degree: delta,
        ln_upper,
        bound,
    })
}
