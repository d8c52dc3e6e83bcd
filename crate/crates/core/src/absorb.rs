//! Seeded selection of a disjoint, even family of `t`-sets from an
//! `(n, t, d)`-system.
//!
//! Every distinct set of the system is a candidate; candidates are visited
//! in lexicographic order (each set sorted ascending) and each is sampled
//! with probability `p`. Every sampled set meeting another sampled set is
//! discarded (both members of each intersecting pair). If an odd number
//! remains the last one is dropped, and the family is cut to the largest
//! even size not above the cap.
//!
//! Randomness comes from SplitMix64. With 64-bit wrapping arithmetic:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output z ^ (z >> 31)
//! ```
//!
//! The state starts at the seed. A candidate is sampled when the output `u`
//! satisfies `u * q < r * 2^64` for `p = r/q`.

use std::collections::{BTreeSet, HashMap};

use crate::embedding::{anchored_roles, count_anchored_gadgets, SearchLimits};
use crate::error::{Error, Result};
use crate::gadgets::{GadgetKind, Role};
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// True with probability exactly `p` (for `0 <= p <= 1`) over a uniform
    /// output.
    pub fn bernoulli(&mut self, p: Rational) -> bool {
        let u = self.next_u64() as u128;
        let (r, q) = (p.numer() as u128, p.denom() as u128);
        u * q < r << 64
    }
}

/// Elements `x` each paired with a list of `t`-subsets of `0..ground`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub ground: usize,
    pub t: usize,
    pub xs: Vec<String>,
    /// `pairs[i]`: sorted, deduplicated sets paired with `xs[i]`.
    pub pairs: Vec<Vec<Vec<usize>>>,
}

impl System {
    pub fn new(ground: usize, t: usize, entries: Vec<(String, Vec<Vec<usize>>)>) -> Result<Self> {
        let mut xs = Vec::new();
        let mut pairs = Vec::new();
        for (x, sets) in entries {
            let mut clean = BTreeSet::new();
            for mut z in sets {
                z.sort_unstable();
                z.dedup();
                if z.len() != t || z.iter().any(|&v| v >= ground) {
                    return Err(Error::InvalidParameter(format!(
                        "set {z:?} for {x:?} is not a {t}-subset of 0..{ground}"
                    )));
                }
                clean.insert(z);
            }
            xs.push(x);
            pairs.push(clean.into_iter().collect());
        }
        Ok(System { ground, t, xs, pairs })
    }

    /// Distinct sets of the system in lexicographic order.
    pub fn candidates(&self) -> Vec<Vec<usize>> {
        let all: BTreeSet<&Vec<usize>> = self.pairs.iter().flatten().collect();
        all.into_iter().cloned().collect()
    }

    /// `system <ground> <t>`, then per element an `x <label>` line followed
    /// by one `z <vertices>` line per set.
    pub fn to_text(&self) -> String {
        let mut s = format!("system {} {}\n", self.ground, self.t);
        for (x, sets) in self.xs.iter().zip(&self.pairs) {
            s.push_str(&format!("x {x}\n"));
            for z in sets {
                s.push_str(&format!("z {}\n", join(z)));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Format { what: "system", msg };
        let mut header = None;
        let mut entries: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let at = |m: &str| bad(format!("line {}: {m}", i + 1));
            if let Some(rest) = t.strip_prefix("system ") {
                let nums = numbers(rest).ok_or_else(|| at("bad header"))?;
                match nums[..] {
                    [g, t] => header = Some((g, t)),
                    _ => return Err(at("bad header")),
                }
            } else if let Some(label) = t.strip_prefix("x ") {
                entries.push((label.trim().to_string(), Vec::new()));
            } else if let Some(rest) = t.strip_prefix("z ") {
                let z = numbers(rest).ok_or_else(|| at("bad set"))?;
                entries
                    .last_mut()
                    .ok_or_else(|| at("set before any element"))?
                    .1
                    .push(z);
            } else {
                return Err(at("unexpected line"));
            }
        }
        let (ground, t) = header.ok_or_else(|| bad("missing system header".into()))?;
        System::new(ground, t, entries)
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn numbers(s: &str) -> Option<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse().ok()).collect()
}

/// Label of an anchor assignment, e.g. `u=3 v=5`.
pub fn anchor_label(anchors: &[(Role, usize)]) -> String {
    anchors
        .iter()
        .map(|(r, v)| format!("{r}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One element per anchor assignment, paired with every vertex set that
/// completes the anchored gadget.
pub fn build_system(
    g: &Graph,
    h: &Graph,
    kind: GadgetKind,
    xs: &[Vec<(Role, usize)>],
    limits: SearchLimits,
) -> Result<System> {
    let roles = anchored_roles(kind)
        .ok_or_else(|| Error::InvalidParameter(format!("{kind} has no anchored counting semantics")))?;
    let order = kind.expected_order(h.order(), h.size());
    let t = order - roles.len();
    let mut entries = Vec::new();
    for anchors in xs {
        let count = count_anchored_gadgets(g, h, kind, anchors, limits)?;
        entries.push((anchor_label(anchors), count.sets));
    }
    System::new(g.order(), t, entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySelection {
    pub family: Vec<Vec<usize>>,
    pub seed: u64,
    pub p: Rational,
    pub cap: usize,
    /// Per element: family members paired with it.
    pub coverage: Vec<(String, usize)>,
}

fn coverage(sys: &System, family: &[Vec<usize>]) -> Vec<(String, usize)> {
    let members: BTreeSet<&Vec<usize>> = family.iter().collect();
    sys.xs
        .iter()
        .zip(&sys.pairs)
        .map(|(x, sets)| (x.clone(), sets.iter().filter(|z| members.contains(z)).count()))
        .collect()
}

pub fn select_family(sys: &System, p: Rational, cap: usize, seed: u64) -> Result<FamilySelection> {
    if !(p.is_positive() && p <= Rational::one()) {
        return Err(Error::InvalidParameter(format!("p must lie in (0, 1], got {p}")));
    }
    if p.denom() >= 1 << 63 {
        return Err(Error::InvalidParameter(format!(
            "denominator of p is too large: {p}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let sampled: Vec<Vec<usize>> = sys
        .candidates()
        .into_iter()
        .filter(|_| rng.bernoulli(p))
        .collect();
    let mut hits: HashMap<usize, usize> = HashMap::new();
    for z in &sampled {
        for &v in z {
            *hits.entry(v).or_default() += 1;
        }
    }
    let mut family: Vec<Vec<usize>> = sampled
        .into_iter()
        .filter(|z| z.iter().all(|v| hits[v] == 1))
        .collect();
    if family.len() % 2 == 1 {
        family.pop();
    }
    family.truncate(cap - cap % 2);
    Ok(FamilySelection {
        coverage: coverage(sys, &family),
        family,
        seed,
        p,
        cap,
    })
}

impl FamilySelection {
    pub fn to_text(&self) -> String {
        let mut s = format!("selection seed {} p {} cap {}\n", self.seed, self.p, self.cap);
        s.push_str(&format!("family {}\n", self.family.len()));
        for z in &self.family {
            s.push_str(&format!("set {}\n", join(z)));
        }
        for (x, c) in &self.coverage {
            s.push_str(&format!("coverage {c} {x}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Format {
            what: "selection",
            msg,
        };
        let mut head = None;
        let mut family = Vec::new();
        let mut coverage = Vec::new();
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') || t.starts_with("family ") {
                continue;
            }
            if let Some(rest) = t.strip_prefix("selection ") {
                let f: Vec<&str> = rest.split_whitespace().collect();
                match f[..] {
                    ["seed", seed, "p", p, "cap", cap] => {
                        head = Some((
                            seed.parse().map_err(|_| bad(format!("bad seed {seed:?}")))?,
                            p.parse::<Rational>().map_err(bad)?,
                            cap.parse().map_err(|_| bad(format!("bad cap {cap:?}")))?,
                        ))
                    }
                    _ => return Err(bad(format!("bad header {t:?}"))),
                }
            } else if let Some(rest) = t.strip_prefix("set ") {
                family.push(numbers(rest).ok_or_else(|| bad(format!("bad set {t:?}")))?);
            } else if let Some(rest) = t.strip_prefix("coverage ") {
                let (c, x) = rest
                    .split_once(' ')
                    .ok_or_else(|| bad(format!("bad coverage line {t:?}")))?;
                coverage.push((
                    x.to_string(),
                    c.parse().map_err(|_| bad(format!("bad coverage line {t:?}")))?,
                ));
            } else {
                return Err(bad(format!("unexpected line {t:?}")));
            }
        }
        let (seed, p, cap) = head.ok_or_else(|| bad("missing selection header".into()))?;
        Ok(FamilySelection {
            family,
            seed,
            p,
            cap,
            coverage,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyFailure {
    /// Two members share a vertex.
    Disjointness(usize, usize),
    Parity,
    Cap,
    /// A member is not a set of the system.
    NotInSystem(usize),
    /// Stated coverage differs from the recount.
    Coverage,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub failures: Vec<FamilyFailure>,
    pub min_coverage: usize,
    pub mean_coverage: Rational,
    /// Elements covered at least once.
    pub covered: usize,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "verdict {}\nmin_coverage {}\nmean_coverage {}\ncovered {}\n",
            if self.passed() { "pass" } else { "fail" },
            self.min_coverage,
            self.mean_coverage,
            self.covered
        );
        for f in &self.failures {
            s.push_str(&format!("failure {f:?}\n"));
        }
        s
    }
}

/// Checks the structural guarantees and reports coverage; no coverage
/// threshold is asserted.
pub fn verify_family(sys: &System, sel: &FamilySelection) -> FamilyReport {
    let mut failures = Vec::new();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    'sets: for (i, z) in sel.family.iter().enumerate() {
        for &v in z {
            if let Some(&j) = owner.get(&v) {
                failures.push(FamilyFailure::Disjointness(j, i));
                break 'sets;
            }
            owner.insert(v, i);
        }
    }
    if sel.family.len() % 2 == 1 {
        failures.push(FamilyFailure::Parity);
    }
    if sel.family.len() > sel.cap {
        failures.push(FamilyFailure::Cap);
    }
    let candidates: BTreeSet<Vec<usize>> = sys.candidates().into_iter().collect();
    if let Some(i) = sel.family.iter().position(|z| !candidates.contains(z)) {
        failures.push(FamilyFailure::NotInSystem(i));
    }
    let recount = coverage(sys, &sel.family);
    if recount != sel.coverage {
        failures.push(FamilyFailure::Coverage);
    }
    let counts: Vec<usize> = recount.iter().map(|c| c.1).collect();
    let mean_coverage = if counts.is_empty() {
        Rational::zero()
    } else {
        Rational::new(counts.iter().sum::<usize>() as i128, counts.len() as i128)
    };
    FamilyReport {
        failures,
        min_coverage: counts.iter().copied().min().unwrap_or(0),
        mean_coverage,
        covered: counts.iter().filter(|&&c| c > 0).count(),
    }
}
