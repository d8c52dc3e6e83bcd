//! Acceptance run: one line per criterion, non-zero exit on any failure.
//!
//! Runs without the libtest harness so each criterion reports exactly once,
//! in order, with its timing.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtile::embedding::enumerate_bipartite_subdivisions;
use subtile::extremal::BruteForce;
use subtile::graph::{complete, complete_bipartite, cycle, parse_graph, path};
use subtile::params::{
    chi_cr_bipartite, construct_h_star, threshold_coefficient, xi_with_witness, RecipeEntry,
};
use subtile::report::kr_table;
use subtile::{
    construct_extremal, construct_hat_h, domination, find_perfect_subdivision_tiling,
    hat_tiling_complete_bipartite, select_family, verify_extremal, verify_family, verify_gadget,
    verify_tiling, Construction, GadgetKind, Graph, HatGraph, Hcf, Parity, Rational, SearchLimits, System,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lim() -> SearchLimits {
    SearchLimits::default()
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kr_table_matches() -> Outcome {
    let inf = Hcf::Infinite;
    let fin = Hcf::Finite;
    #[rustfmt::skip]
    let want = [
        (2, r(3, 2), fin(1), r(3, 2), r(1, 3), r(1, 3)),
        (3, r(2, 1), inf,    r(2, 1), r(1, 2), r(1, 2)),
        (4, r(5, 3), fin(1), r(5, 3), r(2, 5), r(2, 5)),
        (5, r(3, 2), fin(1), r(3, 2), r(1, 3), r(1, 3)),
        (6, r(7, 5), fin(3), r(2, 1), r(1, 2), r(1, 2)),
        (7, r(4, 3), fin(2), r(3, 2), r(1, 3), r(1, 2)),
        (8, r(9, 7), fin(5), r(2, 1), r(1, 2), r(1, 2)),
    ];
    let table = kr_table(8).map_err(|e| e.to_string())?;
    ensure(table.rows.len() == want.len(), || "wrong row count".into())?;
    for (row, &(k, xi, hcf, xs, te, to)) in table.rows.iter().zip(&want) {
        let got = (
            row.r,
            row.xi,
            row.hcf,
            row.xi_star,
            row.threshold_even,
            row.threshold_odd,
        );
        ensure(got == (k, xi, hcf, xs, te, to), || format!("K_{k}: got {got:?}"))?;
        ensure(params_oracle(&complete(k)) == (xi, hcf), || {
            format!("K_{k}: oracle disagrees")
        })?;
        ensure(row.matches, || format!("K_{k}: published value differs"))?;
    }
    Ok("K_2..K_8 exact, xi/hcf confirmed by subset enumeration".into())
}

fn non_monotone() -> Outcome {
    let k4 = threshold_coefficient(&complete(4), Parity::Even).map_err(|e| e.to_string())?;
    let c4 = threshold_coefficient(&cycle(4), Parity::Even).map_err(|e| e.to_string())?;
    ensure(k4 == r(2, 5) && c4 == r(1, 2) && k4 < c4, || {
        format!("K4 {k4}, C4 {c4}")
    })?;
    Ok(format!("K4 {k4} < C4 {c4}"))
}

fn ratio_bound_suite() -> Outcome {
    let patterns = [
        ("K2", complete(2)),
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("K(1,3)", complete_bipartite(1, 3)),
        ("C4", cycle(4)),
        ("P4", path(4)),
    ];
    let mut checked = 0;
    for (name, h) in &patterns {
        let (xi, _) = xi_with_witness(h).map_err(|e| e.to_string())?;
        let bound = (xi - Rational::one()).recip();
        let max = h.order() + h.size() + 6;
        for s in enumerate_bipartite_subdivisions(h, max).map_err(|e| e.to_string())? {
            let (a, b) = s.parts.sizes();
            let (small, large) = (a.min(b) as i128, a.max(b) as i128);
            ensure(
                Rational::integer(large) <= bound * Rational::integer(small),
                || format!("{name}: parts {small}/{large} exceed 1/(xi-1) = {bound}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} bipartite subdivisions within 1/(xi-1)"))
}

fn chi_cr_suite() -> Outcome {
    let corpus = pattern_corpus();
    let mut equal = Vec::new();
    for (name, h) in &corpus {
        let (xi, _) = xi_with_witness(h).map_err(|e| e.to_string())?;
        let star = construct_h_star(h).map_err(|e| e.to_string())?;
        let chi = chi_cr_bipartite(&star.graph).map_err(|e| e.to_string())?;
        ensure(chi <= xi, || format!("{name}: chi_cr {chi} > xi {xi}"))?;
        if chi == xi {
            equal.push(*name);
        }
    }
    ensure(equal.contains(&"K4"), || "no equality for K4".into())?;
    Ok(format!(
        "{} patterns, equality for {}",
        corpus.len(),
        equal.join(" ")
    ))
}

fn gadget_suite() -> Outcome {
    let patterns = [
        ("K2", complete(2)),
        ("K3", complete(3)),
        ("P3", path(3)),
        ("K(1,3)", complete_bipartite(1, 3)),
    ];
    let mut checks = 0;
    for (name, h) in &patterns {
        for kind in GadgetKind::ALL {
            let rep = verify_gadget(h, kind, lim()).map_err(|e| format!("{name} {kind}: {e}"))?;
            ensure(rep.all_pass(), || format!("{name} {kind}:\n{}", rep.to_text()))?;
            ensure(rep.revalidate(h), || {
                format!("{name} {kind}: certificate does not revalidate")
            })?;
            checks += rep.properties.len();
        }
    }
    Ok(format!("{checks} properties pass and revalidate"))
}

fn extremal_suite() -> Outcome {
    let cases: Vec<(Graph, Construction, Vec<usize>)> = vec![
        (complete(5), Construction::P33, (8..=14).collect()),
        (complete(7), Construction::P34, (3..=13).step_by(2).collect()),
        (complete(7), Construction::P35, (6..=14).step_by(2).collect()),
    ];
    let (mut instances, mut brute) = (0, 0);
    for (h, which, ns) in &cases {
        for &n in ns {
            let inst = construct_extremal(h, n, *which).map_err(|e| format!("{which} n={n}: {e}"))?;
            let small = n <= 10;
            let rep = verify_extremal(&inst, h, small, lim()).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("{which} n={n}:\n{}", rep.to_text()))?;
            if small {
                ensure(rep.brute_force == BruteForce::NoTiling, || {
                    format!("{which} n={n}: {:?}", rep.brute_force)
                })?;
                ensure(!tiling_oracle(&inst.graph, h), || {
                    format!("{which} n={n}: oracle finds a tiling")
                })?;
                brute += 1;
            }
            instances += 1;
        }
    }
    Ok(format!(
        "{instances} instances certified, {brute} confirmed by both solvers"
    ))
}

fn solver_vs_oracle() -> Outcome {
    let corpus = host_corpus(2024, 200, 4, 8);
    let mut yes = 0;
    for (i, g) in corpus.iter().enumerate() {
        for (name, h) in [("K2", complete(2)), ("K3", complete(3))] {
            let got = find_perfect_subdivision_tiling(g, &h, lim()).map_err(|e| e.to_string())?;
            let want = tiling_oracle(g, &h);
            ensure(got.is_some() == want, || {
                format!("host {i} vs {name}: solver {}, oracle {want}", got.is_some())
            })?;
            if let Some(c) = got {
                verify_tiling(g, &h, &c).map_err(|e| format!("host {i} vs {name}: {e}"))?;
                yes += 1;
            }
        }
    }
    Ok(format!("200 hosts x 2 patterns agree ({yes} tilings)"))
}

fn hat_tilings() -> Outcome {
    let k13 = complete_bipartite(1, 3);
    // Parts (1, 3): the star itself, leaves on the larger side.
    let star = HatGraph::from_recipe(
        &k13,
        vec![RecipeEntry {
            subset: vec![1, 2, 3],
            multiplicity: 1,
            sign: 1,
        }],
    )
    .map_err(|e| e.to_string())?;
    let k7 = complete(7);
    let p4 = path(4);
    let cases = [
        (k13.clone(), star, 2, 1, 3),
        (
            k7.clone(),
            construct_hat_h(&k7).map_err(|e| e.to_string())?,
            3,
            2,
            4,
        ),
        (
            p4.clone(),
            construct_hat_h(&p4).map_err(|e| e.to_string())?,
            2,
            0,
            4,
        ),
    ];
    let mut done = Vec::new();
    for (h, hat, b, a, blocks) in cases {
        let (hp, t) = (hat.small_side, hat.imbalance);
        let ht = hat_tiling_complete_bipartite(hp, t, b, a, &hat).map_err(|e| e.to_string())?;
        verify_tiling(&ht.host, &h, &ht.certificate).map_err(|e| format!("({hp},{t},{b},{a}): {e}"))?;
        ensure(ht.certificate.blocks.len() == blocks, || {
            format!("({hp},{t},{b},{a}): block count")
        })?;
        done.push(format!("({hp},{t},{b},{a}) K({},{})", ht.x, ht.y));
    }
    Ok(done.join(", "))
}

fn domination_suite() -> Outcome {
    let petersen = parse_graph(&fixture("petersen.el")).map_err(|e| e.to_string())?;
    for (name, g, want) in [
        ("C4", cycle(4), 2),
        ("K5", complete(5), 1),
        ("Petersen", petersen, 3),
    ] {
        let got = domination(&g, lim()).map_err(|e| e.to_string())?.exact();
        ensure(got == Some(want) && domination_oracle(&g) == want, || {
            format!("{name}: {got:?}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..100 {
        let n = rng.gen_range(5..=14);
        let p = rng.gen_range(0.15..0.85);
        let g = random_graph(&mut rng, n, p);
        let rep = domination(&g, lim()).map_err(|e| e.to_string())?;
        ensure(rep.bound_holds() == Some(true), || {
            format!("random graph {i}:\n{}", rep.to_text())
        })?;
        ensure(rep.exact() == Some(domination_oracle(&g)), || {
            format!("random graph {i}: exact value")
        })?;
    }
    Ok("fixtures exact, bound holds on 100 random graphs".into())
}

fn absorption_determinism() -> Outcome {
    let sys = System::from_text(&fixture("system20.txt")).map_err(|e| e.to_string())?;
    ensure(sys.candidates().len() == 20, || {
        "fixture must hold 20 candidates".into()
    })?;
    let sel = select_family(&sys, r(1, 2), 100, 42).map_err(|e| e.to_string())?;
    let golden = fixture("selection_seed42.txt");
    ensure(sel.to_text() == golden, || {
        format!("output differs from golden:\n{}", sel.to_text())
    })?;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = r(rng.gen_range(1..=4), 4);
        let cap = rng.gen_range(0..12);
        let sel = select_family(&sys, p, cap, seed).map_err(|e| e.to_string())?;
        let rep = verify_family(&sys, &sel);
        ensure(
            rep.passed() && sel.family.len() % 2 == 0 && sel.family.len() <= cap,
            || format!("seed {seed}:\n{}", rep.to_text()),
        )?;
    }
    Ok(format!(
        "golden reproduced ({} sets), invariants hold for 100 seeds",
        sel.family.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("K_r threshold table", kr_table_matches),
        ("non-monotone thresholds", non_monotone),
        ("bipartite subdivision ratio bound", ratio_bound_suite),
        ("critical chromatic number of H*", chi_cr_suite),
        ("gadget verification", gadget_suite),
        ("extremal constructions", extremal_suite),
        ("tiling solver vs partition oracle", solver_vs_oracle),
        ("reservoir tilings", hat_tilings),
        ("domination", domination_suite),
        ("absorption determinism", absorption_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
