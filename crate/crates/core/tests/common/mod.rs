//! Fixture corpus and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sickit::graph::{complete, cycle, hypercube, path, Graph};
use sickit::sweep::enumerate_cubic;
use sickit::{CodeSpec, Combiner};

/// Thirty small graphs (n ≤ 9) mixing admitting and non-admitting cases.
pub fn fixtures() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in [2, 3, 5, 7] {
        out.push((format!("P{n}"), path(n).unwrap()));
    }
    for n in [3, 4, 5, 6, 7, 9] {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for n in [1, 4] {
        out.push((format!("K{n}"), complete(n).unwrap()));
    }
    out.push(("Q3".into(), hypercube(3).unwrap()));
    out.push(("K1,3".into(), Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()));
    out.push(("K3,3".into(), Graph::new(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()));
    let mut wheel: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    wheel.extend((0..5).map(|i| (i, 5)));
    out.push(("W5".into(), Graph::new(6, &wheel).unwrap()));
    out.push(("C3+C3".into(), Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()));
    for (i, g) in enumerate_cubic(6).unwrap().into_iter().enumerate() {
        out.push((format!("cubic6-{i}"), g));
    }
    for (i, g) in enumerate_cubic(8).unwrap().into_iter().enumerate() {
        out.push((format!("cubic8-{i}"), g));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while out.len() < 30 {
        let n = rng.gen_range(5..=9);
        let g = random_graph(&mut rng, n, 0.45);
        out.push((format!("gnp{}-{n}", out.len()), g));
    }
    out
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Closed neighborhoods as bitmasks (n ≤ 64).
pub fn closed_masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &u| m | 1 << u)).collect()
}

/// Variant thresholds evaluated directly on every vertex and every pair.
pub fn oracle_valid(cl: &[u64], s: u64, spec: &CodeSpec) -> bool {
    let n = cl.len();
    let codes: Vec<u64> = cl.iter().map(|c| c & s).collect();
    if codes.iter().any(|c| (c.count_ones() as usize) < spec.dom_threshold) {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            let a = (codes[u] & !codes[v]).count_ones() as usize;
            let b = (codes[v] & !codes[u]).count_ones() as usize;
            let combined = match spec.combiner {
                Combiner::Sum => a + b,
                Combiner::Max => a.max(b),
                Combiner::Min => a.min(b),
            };
            if combined < spec.dist_threshold {
                return false;
            }
        }
    }
    true
}

/// Smallest valid subset by exhaustive search over all 2^n subsets.
pub fn brute_min(g: &Graph, spec: &CodeSpec) -> Option<usize> {
    assert!(g.n() <= 20);
    let cl = closed_masks(g);
    (0u64..1 << g.n()).filter(|&s| oracle_valid(&cl, s, spec)).map(|s| s.count_ones() as usize).min()
}

/// Every valid subset, as bitmasks.
pub fn brute_all(g: &Graph, spec: &CodeSpec) -> Vec<u64> {
    let cl = closed_masks(g);
    (0u64..1 << g.n()).filter(|&s| oracle_valid(&cl, s, spec)).collect()
}

/// Self-identification read literally: each vertex's alarm pattern is
/// nonempty and the closed neighborhoods of the alarmed detectors meet in
/// exactly that vertex.
pub fn oracle_definition(cl: &[u64], s: u64) -> bool {
    (0..cl.len()).all(|v| {
        let alarms = cl[v] & s;
        let common = (0..cl.len()).filter(|&d| alarms >> d & 1 == 1).fold(u64::MAX, |m, d| m & cl[d]);
        alarms != 0 && common == 1 << v
    })
}

pub fn mask_to_set(n: usize, s: u64) -> sickit::VertexSet {
    sickit::VertexSet::from_indices(n, (0..n).filter(|&i| s >> i & 1 == 1))
}

/// Domination number by brute force.
pub fn brute_domination(g: &Graph) -> usize {
    let cl = closed_masks(g);
    (0u64..1 << g.n()).filter(|&s| cl.iter().all(|c| c & s != 0)).map(|s| s.count_ones() as usize).min().unwrap()
}
