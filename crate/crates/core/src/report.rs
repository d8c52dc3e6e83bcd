//! Threshold table for complete graphs, checked against the published
//! asymptotic values of the minimum-degree threshold.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::complete;
use crate::params::{ParamReport, MAX_PATTERN_ORDER};
use crate::rational::{Hcf, Rational};

/// Published threshold coefficients `(even n, odd n)` for `K_r`:
/// `1/3` for `r = 2`, `2/(r+1)` for `r` in 3..=5, `(1/3, 1/2)` for `r = 7`
/// and `1/2` otherwise.
pub fn published_threshold(r: usize) -> (Rational, Rational) {
    let half = Rational::new(1, 2);
    match r {
        2 => (Rational::new(1, 3), Rational::new(1, 3)),
        3..=5 => {
            let t = Rational::new(2, r as i128 + 1);
            (t, t)
        }
        7 => (Rational::new(1, 3), half),
        _ => (half, half),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KrRow {
    pub r: usize,
    pub xi: Rational,
    pub hcf: Hcf,
    pub xi_star: Rational,
    pub threshold_even: Rational,
    pub threshold_odd: Rational,
    pub published_even: Rational,
    pub published_odd: Rational,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KrTable {
    pub schema: u32,
    pub family: &'static str,
    pub rows: Vec<KrRow>,
}

impl KrTable {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from(
            "r\txi\thcf\txi_star\tthreshold_even\tthreshold_odd\tpublished_even\tpublished_odd\tmatch\n",
        );
        for r in &self.rows {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.r,
                r.xi,
                r.hcf,
                r.xi_star,
                r.threshold_even,
                r.threshold_odd,
                r.published_even,
                r.published_odd,
                if r.matches { "yes" } else { "NO" }
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// Rows for `K_2` through `K_max`.
pub fn kr_table(max: usize) -> Result<KrTable> {
    if !(2..=MAX_PATTERN_ORDER).contains(&max) {
        return Err(Error::InvalidParameter(format!(
            "max must lie in 2..={MAX_PATTERN_ORDER}, got {max}"
        )));
    }
    let rows = (2..=max)
        .map(|r| {
            let p = ParamReport::compute(&complete(r))?;
            let (published_even, published_odd) = published_threshold(r);
            Ok(KrRow {
                r,
                xi: p.xi,
                hcf: p.hcf,
                xi_star: p.xi_star,
                matches: p.threshold_even == published_even && p.threshold_odd == published_odd,
                threshold_even: p.threshold_even,
                threshold_odd: p.threshold_odd,
                published_even,
                published_odd,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KrTable {
        schema: 1,
        family: "kr",
        rows,
    })
}
