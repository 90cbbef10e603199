//! Polynomial reduction from 3-SAT to the SIC decision problem.
//!
//! Each variable becomes a 14-vertex gadget and each clause an 8-vertex
//! gadget whose port is joined to its three literal vertices, giving
//! `14N + 8M` vertices, `21N + 14M` edges and budget `K = 12N + 7M`.
//! Eleven vertices per variable gadget and seven per clause gadget are
//! forced by singleton neighborhood differences; the remaining budget of
//! one detector per variable must pick a literal, and every clause port
//! is separated from its gadget only by a detecting literal.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::codes::{is_valid_code, CodeSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::solver::{solve_at_most, Decision, SolveBudget};
use crate::vertex_set::VertexSet;

/// A literal in DIMACS form: `+v` or `-v` for variable `v ≥ 1`.
pub type Literal = i32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf3 {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Cnf3 {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            check_clause(num_vars, c).map_err(|msg| Error::InvalidParams(format!("clause {i}: {msg}")))?;
        }
        Ok(Cnf3 { num_vars, clauses })
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| lit_value(l, assignment)))
    }

    /// Exhaustive satisfiability; returns a model if one exists.
    pub fn brute_force_model(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars < 26, "brute force is for small formulas");
        (0u32..1 << self.num_vars)
            .map(|mask| (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.satisfied_by(a))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

fn lit_value(l: Literal, assignment: &[bool]) -> bool {
    assignment[l.unsigned_abs() as usize - 1] == (l > 0)
}

fn check_clause(num_vars: usize, c: &[Literal]) -> std::result::Result<(), String> {
    if c.len() != 3 {
        return Err(format!("width {} (expected 3)", c.len()));
    }
    for (i, &l) in c.iter().enumerate() {
        let v = l.unsigned_abs() as usize;
        if l == 0 || v > num_vars {
            return Err(format!("literal {l} out of range 1..={num_vars}"));
        }
        if c[..i].iter().any(|&m| m.unsigned_abs() as usize == v) {
            return Err(format!("repeated variable {v}"));
        }
    }
    Ok(())
}

/// Parses DIMACS CNF where every clause has exactly three literals over
/// distinct variables. Clauses may span lines; `c` lines are comments.
pub fn parse_dimacs_cnf(text: &str) -> Result<Cnf3> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<Literal> = Vec::new();
    let mut cur_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let bad = |msg: String| Error::Dimacs { line: line_no, msg };
        if line.starts_with('p') {
            if header.is_some() {
                return Err(bad("duplicate header".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(bad(format!("malformed header {line:?}")));
            }
            let nv = parts[2].parse().map_err(|_| bad(format!("bad variable count {:?}", parts[2])))?;
            let nc = parts[3].parse().map_err(|_| bad(format!("bad clause count {:?}", parts[3])))?;
            header = Some((nv, nc));
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(bad("clause before header".into()));
        };
        for tok in line.split_whitespace() {
            let l: Literal = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
            if cur.is_empty() {
                cur_line = line_no;
            }
            if l != 0 {
                cur.push(l);
                continue;
            }
            check_clause(nv, &cur).map_err(|msg| Error::Dimacs { line: cur_line, msg })?;
            clauses.push([cur[0], cur[1], cur[2]]);
            cur.clear();
        }
    }
    let Some((nv, nc)) = header else {
        return Err(Error::Dimacs { line: 0, msg: "missing header".into() });
    };
    if !cur.is_empty() {
        return Err(Error::Dimacs { line: cur_line, msg: "clause not terminated by 0".into() });
    }
    if clauses.len() != nc {
        return Err(Error::Dimacs { line: 0, msg: format!("header declares {nc} clauses, found {}", clauses.len()) });
    }
    Ok(Cnf3 { num_vars: nv, clauses })
}

// Variable gadget, local labels: 0 = x, 1 = x̄, 2 = y (the only other
// non-forced vertex), 3 = z. N[y] = {y, z, 4, x, x̄} and N[z] ⊇ N[y] − {x, x̄},
// so y and z are told apart only by a literal detector. 3..=13 are forced.
const VAR_SIZE: usize = 14;
const VAR_EDGES: [(usize, usize); 21] = [
    (2, 0), (2, 1), (2, 3), (2, 4), (3, 4), (3, 5), (5, 6), (6, 7), (7, 8), (8, 4),
    (0, 9), (0, 11), (0, 12), (1, 10), (1, 11), (1, 12),
    (9, 10), (9, 11), (10, 12), (11, 13), (12, 13),
];
const VAR_FORCED: usize = 11;

// Clause gadget: 0 = port c, joined to the three literal vertices; 1..=7
// are forced. N[c] ∩ gadget = {c, 1, 2} ⊆ N[1], so c and 1 differ only
// through a detecting literal.
const CLAUSE_SIZE: usize = 8;
const CLAUSE_EDGES: [(usize, usize); 11] = [
    (0, 1), (0, 2), (1, 2), (1, 5), (2, 3), (2, 7), (3, 4), (4, 5), (4, 6), (5, 6), (6, 7),
];
const CLAUSE_FORCED: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub k: usize,
    pub literal_vertex: BTreeMap<Literal, usize>,
    pub clause_vertex: Vec<usize>,
    pub forced_core: VertexSet,
    pub cnf: Cnf3,
}

/// JSON sidecar written next to the graph6 line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceMeta {
    #[serde(rename = "K")]
    pub k: usize,
    pub literal_vertices: BTreeMap<String, usize>,
    pub clause_vertices: BTreeMap<String, usize>,
}

impl ReductionInstance {
    pub fn meta(&self) -> InstanceMeta {
        InstanceMeta {
            k: self.k,
            literal_vertices: self.literal_vertex.iter().map(|(l, v)| (l.to_string(), *v)).collect(),
            clause_vertices: self.clause_vertex.iter().enumerate().map(|(j, v)| (j.to_string(), *v)).collect(),
        }
    }

    pub fn graph6(&self) -> String {
        emit_graph6(&self.graph)
    }

    /// The detector set for a truth assignment: the forced core plus the
    /// vertex of each true literal.
    pub fn code_from_assignment(&self, assignment: &[bool]) -> Result<VertexSet> {
        if assignment.len() != self.cnf.num_vars {
            return Err(Error::InvalidParams(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.cnf.num_vars
            )));
        }
        let mut s = self.forced_core.clone();
        for (i, &val) in assignment.iter().enumerate() {
            let v = i as Literal + 1;
            s.insert(self.literal_vertex[&if val { v } else { -v }]);
        }
        Ok(s)
    }
}

pub fn reduce_3sat(phi: &Cnf3) -> ReductionInstance {
    let (nv, m) = (phi.num_vars, phi.clauses.len());
    let n = VAR_SIZE * nv + CLAUSE_SIZE * m;
    let mut edges = Vec::with_capacity(21 * nv + 14 * m);
    let mut literal_vertex = BTreeMap::new();
    let mut forced_core = VertexSet::empty(n);
    for i in 0..nv {
        let base = i * VAR_SIZE;
        edges.extend(VAR_EDGES.iter().map(|&(a, b)| (base + a, base + b)));
        literal_vertex.insert(i as Literal + 1, base);
        literal_vertex.insert(-(i as Literal + 1), base + 1);
        for v in 3..VAR_SIZE {
            forced_core.insert(base + v);
        }
    }
    let mut clause_vertex = Vec::with_capacity(m);
    for (j, c) in phi.clauses.iter().enumerate() {
        let base = VAR_SIZE * nv + j * CLAUSE_SIZE;
        edges.extend(CLAUSE_EDGES.iter().map(|&(a, b)| (base + a, base + b)));
        edges.extend(c.iter().map(|l| (base, literal_vertex[l])));
        for v in 1..CLAUSE_SIZE {
            forced_core.insert(base + v);
        }
        clause_vertex.push(base);
    }
    let graph = Graph::new(n, &edges).expect("gadget edges are in range and loop-free");
    debug_assert_eq!(forced_core.len(), VAR_FORCED * nv + CLAUSE_FORCED * m);
    ReductionInstance {
        graph,
        k: 12 * nv + 7 * m,
        literal_vertex,
        clause_vertex,
        forced_core,
        cnf: phi.clone(),
    }
}

/// Reads the truth assignment encoded by a code of size at most `K`.
pub fn extract_assignment(inst: &ReductionInstance, s: &VertexSet) -> Result<Vec<bool>> {
    if s.len() > inst.k {
        return Err(Error::InvalidCode(format!("{} detectors exceed budget {}", s.len(), inst.k)));
    }
    if !is_valid_code(&inst.graph, s, &CodeSpec::SIC) {
        return Err(Error::InvalidCode("not a self-identifying code".into()));
    }
    let mut out = Vec::with_capacity(inst.cnf.num_vars);
    for v in 1..=inst.cnf.num_vars as Literal {
        let pos = s.contains(inst.literal_vertex[&v]);
        let neg = s.contains(inst.literal_vertex[&-v]);
        if pos == neg {
            return Err(Error::InvalidCode(format!(
                "variable {v}: {} literal vertices in the code",
                if pos { "both" } else { "neither" }
            )));
        }
        out.push(pos);
    }
    if !inst.cnf.satisfied_by(&out) {
        return Err(Error::InvalidCode("extracted assignment does not satisfy the formula".into()));
    }
    Ok(out)
}

/// Largest formula accepted by [`reduction_selfcheck`].
pub const SELFCHECK_MAX_VARS: usize = 4;
pub const SELFCHECK_MAX_CLAUSES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfCheckReport {
    pub sat_oracle: bool,
    pub sic_leq_k: bool,
    pub agree: bool,
    pub k: usize,
    pub nodes: u64,
}

/// Compares exhaustive satisfiability with the bounded SIC search on the
/// reduced instance.
pub fn reduction_selfcheck(phi: &Cnf3, budget: SolveBudget) -> Result<SelfCheckReport> {
    if phi.num_vars > SELFCHECK_MAX_VARS || phi.clauses.len() > SELFCHECK_MAX_CLAUSES {
        return Err(Error::Precondition(format!(
            "self-check needs N ≤ {SELFCHECK_MAX_VARS} and M ≤ {SELFCHECK_MAX_CLAUSES}"
        )));
    }
    let sat_oracle = phi.brute_force_model().is_some();
    let inst = reduce_3sat(phi);
    let (decision, nodes) = solve_at_most(&inst.graph, &CodeSpec::SIC, inst.k, budget);
    let sic_leq_k = match decision {
        Decision::Found(s) => {
            extract_assignment(&inst, &s)?;
            true
        }
        Decision::NoneWithin => false,
        Decision::BudgetExceeded => return Err(Error::BudgetExceeded),
    };
    Ok(SelfCheckReport { sat_oracle, sic_leq_k, agree: sat_oracle == sic_leq_k, k: inst.k, nodes })
}

/// Budget used by the self-check when none is given.
pub fn selfcheck_budget() -> SolveBudget {
    SolveBudget { max_nodes: 50_000_000, time_limit: Duration::from_secs(300) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::forced_vertices;

    #[test]
    fn parse_basic() {
        let f = parse_dimacs_cnf("c hi\np cnf 3 1\n1 -2 3 0\n").unwrap();
        assert_eq!(f.num_vars, 3);
        assert_eq!(f.clauses, vec![[1, -2, 3]]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_dimacs_cnf("p cnf 3 1\n1 1 2 0\n"), Err(Error::Dimacs { line: 2, .. })));
        assert!(matches!(parse_dimacs_cnf("p cnf 3 1\n1 2 0\n"), Err(Error::Dimacs { line: 2, .. })));
        assert!(matches!(parse_dimacs_cnf("p cnf 3 1\n1 2 3 -1 0\n"), Err(Error::Dimacs { .. })));
        assert!(matches!(parse_dimacs_cnf("p dnf 3 1\n1 2 3 0\n"), Err(Error::Dimacs { line: 1, .. })));
        assert!(matches!(parse_dimacs_cnf("p cnf 3 1\n1 2 4 0\n"), Err(Error::Dimacs { .. })));
        assert!(parse_dimacs_cnf("1 2 3 0\n").is_err());
        assert!(parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n").is_err());
    }

    #[test]
    fn counts_and_forcing() {
        let f = Cnf3::new(4, vec![[1, -2, 3], [-1, 2, 4], [2, 3, -4]]).unwrap();
        let inst = reduce_3sat(&f);
        assert_eq!(inst.graph.n(), 14 * 4 + 8 * 3);
        assert_eq!(inst.graph.num_edges(), 21 * 4 + 14 * 3);
        assert_eq!(inst.k, 12 * 4 + 7 * 3);
        assert_eq!(inst.forced_core.len(), 11 * 4 + 7 * 3);
        assert!(inst.forced_core.is_subset(&forced_vertices(&inst.graph)));
    }

    #[test]
    fn assignment_round_trip() {
        let f = Cnf3::new(3, vec![[1, 2, 3], [-1, -2, 3]]).unwrap();
        let inst = reduce_3sat(&f);
        let a = vec![true, false, false];
        let s = inst.code_from_assignment(&a).unwrap();
        assert_eq!(s.len(), inst.k);
        assert_eq!(extract_assignment(&inst, &s).unwrap(), a);
        assert!(extract_assignment(&inst, &inst.forced_core).is_err());
    }
}
