//! Acceptance run: one PASS/FAIL line per criterion. Set `SICKIT_LONG=1`
//! to include the long hypercube Q5 check.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use sickit::canon::canonical_form;
use sickit::codes::{admits_ic, admits_sic, dom, is_valid_code, verify_code, verify_sic_definition};
use sickit::graph::{cycle, hypercube, path, petersen, triangle_ring, Graph};
use sickit::grids::{density_lower_bound, scan_min_density};
use sickit::reduction::{reduction_selfcheck, selfcheck_budget, Cnf3};
use sickit::share::{share, shares};
use sickit::solver::{count_min_solutions, forced_vertices, solve_min};
use sickit::sweep::{enumerate_all_graphs, enumerate_cubic, sweep};
use sickit::{CodeSpec, GridFamily, Rational, SolveBudget};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
    }
    o.detail = format!("{} [{:.2?} / limit {:?}]", o.detail, took, limit);
    o
}

fn sic(g: &Graph) -> Option<usize> {
    solve_min(g, &CodeSpec::SIC, SolveBudget::default()).optimum()
}

fn petersen_value() -> Outcome {
    timed(Duration::from_secs(1), || {
        let v = sic(&petersen());
        outcome(v == Some(8), format!("SIC(Petersen) = {v:?}, want 8"))
    })
}

fn hypercubes() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let mut dims = vec![(2, 4, 1), (3, 6, 1), (4, 11, 1)];
    if std::env::var_os("SICKIT_LONG").is_some() {
        dims.push((5, 16, 2));
    }
    for (d, want, classes) in dims {
        let limit = if d == 5 { Duration::from_secs(1800) } else { Duration::from_secs(30) };
        let start = Instant::now();
        let c = count_min_solutions(&hypercube(d).unwrap(), &CodeSpec::SIC, SolveBudget::unlimited()).unwrap();
        let took = start.elapsed();
        pass &= c.optimum == want && c.iso_classes == classes && took <= limit;
        parts.push(format!("Q{d}={} ({} class, {:.2?})", c.optimum, c.iso_classes, took));
    }
    outcome(pass, parts.join(", "))
}

fn smallest_graphs() -> Outcome {
    let mut pass = admits_sic(&Graph::empty(1));
    let mut counts = Vec::new();
    for n in 2..=4 {
        let admitting: Vec<Graph> =
            enumerate_all_graphs(n).unwrap().into_iter().filter(|g| g.is_connected() && admits_sic(g)).collect();
        counts.push(admitting.len());
        if n == 4 {
            pass &= admitting.len() == 1
                && canonical_form(&admitting[0]).unwrap() == canonical_form(&cycle(4).unwrap()).unwrap()
                && sic(&admitting[0]) == Some(4);
        }
    }
    pass &= counts == [0, 0, 1];
    outcome(pass, format!("connected admitting graphs for n=2,3,4: {counts:?}; unique n=4 graph is C4 with SIC 4"))
}

fn table_rows() -> Outcome {
    timed(Duration::from_secs(600), || {
        let want: [(usize, usize, usize, Option<usize>, Option<usize>); 5] = [
            (4, 1, 0, None, None),
            (6, 2, 2, Some(6), Some(6)),
            (8, 5, 4, Some(6), Some(7)),
            (10, 19, 14, Some(7), Some(9)),
            (12, 85, 63, Some(8), Some(12)),
        ];
        let mut pass = true;
        let mut lines = Vec::new();
        for (n, total, with, lo, hi) in want {
            let row = sweep(&enumerate_cubic(n).unwrap(), &CodeSpec::SIC, SolveBudget::default()).unwrap();
            pass &= row.complete && (row.total_graphs, row.graphs_with_code, row.min_value, row.max_value) == (total, with, lo, hi);
            lines.push(row.csv_line());
        }
        outcome(pass, lines.join(" | "))
    })
}

fn extremal() -> Outcome {
    timed(Duration::from_secs(120), || {
        let ring = sic(&triangle_ring(2).unwrap());
        let mut pass = ring == Some(12);
        let mut parts = vec![format!("ring n=12: {ring:?}")];
        for k in 2..=3 {
            let prism = cycle(3 * k).unwrap().cartesian_product(&path(2).unwrap());
            let c = count_min_solutions(&prism, &CodeSpec::SIC, SolveBudget::default()).unwrap();
            pass &= c.optimum == 4 * k && c.iso_classes == 1;
            parts.push(format!("C{}xP2: {} ({} class)", 3 * k, c.optimum, c.iso_classes));
        }
        outcome(pass, parts.join(", "))
    })
}

fn grid_densities() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for f in [GridFamily::Kng, GridFamily::Sqr, GridFamily::Tri, GridFamily::Hex] {
        let limit = Duration::from_secs(600);
        let start = Instant::now();
        let bound = density_lower_bound::<Rational>(f.bound_mode()).unwrap();
        let scan = scan_min_density(f, 8, SolveBudget::default(), Some(limit));
        let took = start.elapsed();
        let done: Vec<_> = scan.iter().filter_map(|e| e.report.as_ref()).collect();
        let reached = done.iter().find(|r| r.density == f.optimal_density());
        pass &= reached.is_some() && done.iter().all(|r| r.density >= bound) && took <= limit;
        parts.push(format!(
            "{f} {} at {} (bound {bound}, {:.2?})",
            f.optimal_density(),
            reached.map_or("none".into(), |r| format!("{}x{}", r.spec.m, r.spec.n)),
            took
        ));
    }
    outcome(pass, parts.join(", "))
}

fn reduction() -> Outcome {
    timed(Duration::from_secs(900), || {
        let b = selfcheck_budget();
        let mut checked = 0;
        let mut agree = 0;
        let mut run = |phi: Cnf3| {
            checked += 1;
            if reduction_selfcheck(&phi, b).map(|r| r.agree).unwrap_or(false) {
                agree += 1;
            }
        };
        run(Cnf3::new(3, vec![[1, 2, 3]]).unwrap());
        let all: Vec<[i32; 3]> = (0..8)
            .map(|s| [if s & 1 == 1 { 1 } else { -1 }, if s & 2 == 2 { 2 } else { -2 }, if s & 4 == 4 { 3 } else { -3 }])
            .collect();
        run(Cnf3::new(3, all).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = rng.gen_range(1..=5);
            let clauses = (0..m)
                .map(|_| {
                    let mut v = [1, 2, 3];
                    for i in 0..3 {
                        v.swap(i, rng.gen_range(i..3));
                    }
                    v.map(|x| if rng.gen_bool(0.5) { x } else { -x })
                })
                .collect();
            run(Cnf3::new(3, clauses).unwrap());
        }
        outcome(agree == checked, format!("{agree}/{checked} instances agree"))
    })
}

fn oracle_suite() -> Outcome {
    let fx = fixtures();
    let mut mismatches = 0;
    for (_, g) in &fx {
        for (_, spec) in CodeSpec::PRESETS {
            if solve_min(g, &spec, SolveBudget::default()).optimum() != brute_min(g, &spec) {
                mismatches += 1;
            }
        }
    }
    let mut subsets = 0;
    for (_, g) in fx.iter().filter(|(_, g)| g.n() <= 7) {
        for s in 0u64..1 << g.n() {
            let set = mask_to_set(g.n(), s);
            subsets += 1;
            if verify_sic_definition(g, &set).valid != verify_code(g, &set, &CodeSpec::SIC).is_empty() {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0 && fx.len() == 30,
        format!("{} graphs x 5 specs vs brute force, {subsets} subsets for the definition check, {mismatches} mismatches", fx.len()),
    )
}

fn property_suites() -> Outcome {
    let mut corpus: Vec<Graph> = fixtures().into_iter().map(|(_, g)| g).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let n = rng.gen_range(4..=8);
        corpus.push(random_graph(&mut rng, n, 0.5));
    }
    let mut cubic = Vec::new();
    for n in [4, 6, 8, 10] {
        cubic.extend(enumerate_cubic(n).unwrap());
    }
    let mut failures = Vec::new();
    let three_halves = Rational::new(3, 2);
    for g in corpus.iter().chain(&cubic) {
        let connected = g.n() >= 2 && g.is_connected();
        let forced = forced_vertices(g);
        for s in brute_all(g, &CodeSpec::SIC).into_iter().take(64) {
            let set = mask_to_set(g.n(), s);
            if connected && set.iter().any(|v| dom(g, &set, v).unwrap() < 3) {
                failures.push("detector 3-domination");
            }
            if connected && !is_valid_code(g, &set, &CodeSpec::RED_IC) {
                failures.push("SIC implies RED:IC");
            }
            let total: Rational = shares::<Rational>(g, &set).unwrap().into_iter().map(|(_, x)| x).sum();
            if total != Rational::from_integer(g.n() as i64) {
                failures.push("share-sum identity");
            }
            if !forced.is_subset(&set) {
                failures.push("forced vertices");
            }
        }
        if g.regular_degree().is_some() && admits_sic(g) != admits_ic(g) {
            failures.push("regular admits_sic = admits_ic");
        }
    }
    for g in &cubic {
        if let Some(w) = solve_min(g, &CodeSpec::SIC, SolveBudget::default()).witness() {
            if w.iter().any(|v| share::<Rational>(g, w, v).unwrap() > three_halves) {
                failures.push("cubic share <= 3/2");
            }
        }
    }
    failures.dedup();
    outcome(
        failures.is_empty(),
        format!("{} graphs + {} cubic; failures: {:?}", corpus.len(), cubic.len(), failures),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("petersen optimum", petersen_value),
        ("hypercube optima and uniqueness", hypercubes),
        ("smallest admitting graphs", smallest_graphs),
        ("cubic sweep rows n=4..12", table_rows),
        ("extremal families", extremal),
        ("grid densities", grid_densities),
        ("reduction equivalence", reduction),
        ("oracle suite", oracle_suite),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
