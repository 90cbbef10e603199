//! Corpus sweeps over small graphs: connected cubic graph enumeration and
//! per-order aggregation of minimum code sizes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_form;
use crate::codes::{admits, CodeSpec};
use crate::error::{Error, Result};
use crate::graph::{cycle, path, triangle_ring, Graph};
use crate::graph6::emit_graph6;
use crate::solver::{count_min_solutions, solve_min, triangle_partition, SolveBudget, SolveStatus};

/// Largest order handled by [`enumerate_cubic`].
pub const CUBIC_MAX: usize = 12;

/// All connected cubic graphs on `n` vertices, one per isomorphism class,
/// sorted by canonical label.
///
/// Graphs are grown in breadth-first labeled form: vertex `i` takes its
/// remaining neighbors from already-discovered later vertices or from
/// fresh labels, so every connected graph appears at least once.
pub fn enumerate_cubic(n: usize) -> Result<Vec<Graph>> {
    if n % 2 != 0 || !(4..=CUBIC_MAX).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "cubic enumeration needs even n in 4..={CUBIC_MAX}, got {n}"
        )));
    }
    let mut found: BTreeMap<String, Graph> = BTreeMap::new();
    let mut b = Builder { n, adj: vec![Vec::with_capacity(3); n], next: 1 };
    b.grow(0, &mut found);
    Ok(found.into_values().collect())
}

struct Builder {
    n: usize,
    adj: Vec<Vec<usize>>,
    next: usize,
}

impl Builder {
    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a].pop();
        let pos = self.adj[b].iter().rposition(|&x| x == a).unwrap();
        self.adj[b].remove(pos);
    }

    fn grow(&mut self, i: usize, found: &mut BTreeMap<String, Graph>) {
        if i == self.n {
            if self.next == self.n {
                let edges: Vec<_> = (0..self.n)
                    .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
                    .collect();
                let g = Graph::new(self.n, &edges).unwrap();
                let key = canonical_form(&g).unwrap();
                found.entry(key).or_insert(g);
            }
            return;
        }
        if i >= self.next {
            return;
        }
        let need = 3 - self.adj[i].len();
        let candidates: Vec<usize> = (i + 1..self.next)
            .filter(|&j| self.adj[j].len() < 3 && !self.adj[i].contains(&j))
            .collect();
        for fresh in 0..=need.min(self.n - self.next) {
            let old = need - fresh;
            if old > candidates.len() {
                continue;
            }
            for pick in combinations(&candidates, old) {
                for &j in &pick {
                    self.link(i, j);
                }
                let base = self.next;
                for k in 0..fresh {
                    self.link(i, base + k);
                }
                self.next += fresh;
                self.grow(i + 1, found);
                self.next -= fresh;
                for k in (0..fresh).rev() {
                    self.unlink(i, base + k);
                }
                for &j in pick.iter().rev() {
                    self.unlink(i, j);
                }
            }
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All graphs on `n ≤ 6` vertices up to isomorphism (connected or not).
pub fn enumerate_all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::InvalidParams(format!("exhaustive enumeration capped at 6, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut found: BTreeMap<String, Graph> = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::new(n, &edges)?;
        found.entry(canonical_form(&g)?).or_insert(g);
    }
    Ok(found.into_values().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepDetail {
    pub graph6: String,
    pub n: usize,
    pub admits: bool,
    pub value: Option<usize>,
    pub status: String,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub total_graphs: usize,
    pub graphs_with_code: usize,
    pub min_value: Option<usize>,
    pub max_value: Option<usize>,
    /// False when some solve ran out of budget.
    pub complete: bool,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "n,total,with_sic,min,max";

    pub fn csv_line(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let mut s = format!(
            "{},{},{},{},{}",
            self.n,
            self.total_graphs,
            self.graphs_with_code,
            opt(self.min_value),
            opt(self.max_value)
        );
        if !self.complete {
            s.push_str(",incomplete");
        }
        s
    }
}

fn solve_one(g: &Graph, spec: &CodeSpec, budget: SolveBudget) -> SweepDetail {
    let graph6 = emit_graph6(g);
    if !admits(g, spec) {
        return SweepDetail { graph6, n: g.n(), admits: false, value: None, status: "infeasible".into(), nodes: 0 };
    }
    let r = solve_min(g, spec, budget);
    let (value, status) = match r.status {
        SolveStatus::Optimal { size, .. } => (Some(size), "optimal"),
        SolveStatus::Infeasible => (None, "infeasible"),
        SolveStatus::BudgetExceeded { .. } => (None, "budget_exceeded"),
    };
    SweepDetail { graph6, n: g.n(), admits: true, value, status: status.into(), nodes: r.nodes_explored }
}

/// Per-graph results for `graphs`, in input order.
pub fn sweep_details(graphs: &[Graph], spec: &CodeSpec, budget: SolveBudget, workers: usize) -> Vec<SweepDetail> {
    if workers <= 1 {
        return graphs.iter().map(|g| solve_one(g, spec, budget)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| graphs.par_iter().map(|g| solve_one(g, spec, budget)).collect())
}

/// Aggregates details into one row per order.
pub fn aggregate(details: &[SweepDetail]) -> Vec<SweepRow> {
    let mut rows: BTreeMap<usize, SweepRow> = BTreeMap::new();
    for d in details {
        let row = rows.entry(d.n).or_insert(SweepRow {
            n: d.n,
            total_graphs: 0,
            graphs_with_code: 0,
            min_value: None,
            max_value: None,
            complete: true,
        });
        row.total_graphs += 1;
        if d.admits {
            row.graphs_with_code += 1;
        }
        match d.value {
            Some(v) => {
                row.min_value = Some(row.min_value.map_or(v, |m| m.min(v)));
                row.max_value = Some(row.max_value.map_or(v, |m| m.max(v)));
            }
            None if d.admits => row.complete = false,
            None => {}
        }
    }
    rows.into_values().collect()
}

/// One row for a corpus of graphs of a single order.
pub fn sweep(graphs: &[Graph], spec: &CodeSpec, budget: SolveBudget) -> Result<SweepRow> {
    let details = sweep_details(graphs, spec, budget, 1);
    let rows = aggregate(&details);
    match rows.len() {
        0 => Err(Error::InvalidParams("empty corpus".into())),
        1 => Ok(rows.into_iter().next().unwrap()),
        _ => Err(Error::InvalidParams("corpus mixes orders; use aggregate".into())),
    }
}

pub fn details_jsonl(details: &[SweepDetail]) -> String {
    let mut out = String::new();
    for d in details {
        writeln!(out, "{}", serde_json::to_string(d).unwrap()).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub k: usize,
    pub ring_n: usize,
    pub ring_sic: usize,
    pub ring_partitionable: bool,
    pub ring_n_mod_6: usize,
    pub prism_n: usize,
    pub prism_sic: usize,
    pub prism_iso_classes: usize,
}

/// Builds the triangle ring on `6k` vertices and `C_{3k} □ P2` and solves
/// both exactly.
pub fn extremal_family_check(k: usize, budget: SolveBudget) -> Result<ExtremalReport> {
    if !(2..=4).contains(&k) {
        return Err(Error::InvalidParams(format!("k must be in 2..=4, got {k}")));
    }
    let ring = triangle_ring(k)?;
    let ring_sic = solve_min(&ring, &CodeSpec::SIC, budget).optimum().ok_or(Error::BudgetExceeded)?;
    let prism = cycle(3 * k)?.cartesian_product(&path(2)?);
    let count = count_min_solutions(&prism, &CodeSpec::SIC, budget)?;
    Ok(ExtremalReport {
        k,
        ring_n: ring.n(),
        ring_sic,
        ring_partitionable: triangle_partition(&ring).is_some(),
        ring_n_mod_6: ring.n() % 6,
        prism_n: prism.n(),
        prism_sic: count.optimum,
        prism_iso_classes: count.iso_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cubic_counts() {
        assert_eq!(enumerate_cubic(4).unwrap().len(), 1);
        assert_eq!(enumerate_cubic(6).unwrap().len(), 2);
        assert_eq!(enumerate_cubic(8).unwrap().len(), 5);
        for g in enumerate_cubic(8).unwrap() {
            assert_eq!(g.regular_degree(), Some(3));
            assert!(g.is_connected());
        }
        assert!(enumerate_cubic(7).is_err());
        assert!(enumerate_cubic(14).is_err());
    }

    #[test]
    fn all_graphs_small() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn csv() {
        let row = SweepRow { n: 4, total_graphs: 1, graphs_with_code: 0, min_value: None, max_value: None, complete: true };
        assert_eq!(row.csv_line(), "4,1,0,-,-");
    }
}
