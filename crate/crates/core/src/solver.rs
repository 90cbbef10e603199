//! Exact minimum-cardinality code search.
//!
//! Every requirement of a [`CodeSpec`] is monotone in the detector set, so
//! the search keeps each vertex as in, out, or free and compiles the spec
//! into covering constraints of the form "at least `need` detectors among
//! these vertices" (plus two-sided disjunctions for the max combiner).
//! A constraint that can only just be met forces its free vertices in; one
//! that can no longer be met prunes the branch.
//!
//! The lower bound counts how much domination is still missing. For the
//! min combiner every vertex needs two detectors and every detector three
//! once the graph has no isolated vertices, and a new detector `u` can only
//! cover deficits of its open neighbors (its own requirement grows along
//! with its own count).

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_form_colored;
use crate::codes::{admits_ic, admits_sic, is_valid_code, CodeSpec, Combiner};
use crate::error::{Error, Result};
use crate::graph::{path, Graph};
use crate::vertex_set::VertexSet;

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);
/// Largest order accepted by [`count_min_solutions`].
pub const COUNT_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { max_nodes: DEFAULT_MAX_NODES, time_limit: DEFAULT_TIME_LIMIT }
    }
}

impl SolveBudget {
    pub fn new(max_nodes: u64, time_limit: Duration) -> Result<Self> {
        if max_nodes == 0 || time_limit.is_zero() {
            return Err(Error::InvalidParams("budget limits must be positive".into()));
        }
        Ok(SolveBudget { max_nodes, time_limit })
    }

    pub fn unlimited() -> Self {
        SolveBudget { max_nodes: u64::MAX, time_limit: Duration::from_secs(u64::MAX / 4) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal { size: usize, witness: VertexSet },
    Infeasible,
    BudgetExceeded { best: Option<VertexSet> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub nodes_explored: u64,
}

impl SolveResult {
    pub fn optimum(&self) -> Option<usize> {
        match &self.status {
            SolveStatus::Optimal { size, .. } => Some(*size),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&VertexSet> {
        match &self.status {
            SolveStatus::Optimal { witness, .. } => Some(witness),
            SolveStatus::BudgetExceeded { best } => best.as_ref(),
            SolveStatus::Infeasible => None,
        }
    }

    pub fn report(&self) -> SolveReport {
        let (status, size, witness) = match &self.status {
            SolveStatus::Optimal { size, witness } => ("optimal", Some(*size), witness.to_vec()),
            SolveStatus::Infeasible => ("infeasible", None, Vec::new()),
            SolveStatus::BudgetExceeded { best } => (
                "budget_exceeded",
                best.as_ref().map(VertexSet::len),
                best.as_ref().map(VertexSet::to_vec).unwrap_or_default(),
            ),
        };
        SolveReport { status: status.into(), size, witness, nodes: self.nodes_explored }
    }
}

/// JSON form of a [`SolveResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SolveReport {
    pub status: String,
    pub size: Option<usize>,
    pub witness: Vec<usize>,
    pub nodes: u64,
}

/// Outcome of a bounded search for a code of size at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Found(VertexSet),
    NoneWithin,
    BudgetExceeded,
}

/// Vertices that lie in every SIC: whenever `N[u] − N[v] = {w}` for
/// distinct `u, v`, the detector `w` is the only way to keep
/// `N_S[u] − N_S[v]` nonempty.
pub fn forced_vertices(g: &Graph) -> VertexSet {
    let mut forced = VertexSet::empty(g.n());
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u == v {
                continue;
            }
            let diff = g.closed_nbhd(u).difference(g.closed_nbhd(v));
            if diff.len() == 1 {
                forced.insert(diff.first().unwrap());
            }
        }
    }
    forced
}

const FREE: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

#[derive(Debug, Clone)]
struct Constraint {
    sides: Vec<Vec<usize>>,
    need: usize,
    /// Vertex whose own membership raises `need` by one.
    owner: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Satisfied,
    Conflict,
    /// Side whose free vertices must all go in.
    Tight(usize),
    Open,
}

/// Compiled constraint system shared by every search branch.
#[derive(Debug)]
struct Model {
    n: usize,
    cons: Vec<Constraint>,
    touches: Vec<Vec<(usize, usize)>>,
    /// Per-vertex domination need (before the detector bonus).
    dom_need: Vec<usize>,
    detector_bonus: bool,
    neighbors: Vec<Vec<usize>>,
}

impl Model {
    fn new(g: &Graph, spec: &CodeSpec) -> Model {
        let n = g.n();
        let strong = spec.implies_sic_domination() && n >= 2 && g.min_degree() >= 1;
        let base_dom = if strong { spec.dom_threshold.max(2) } else { spec.dom_threshold };
        let mut cons = Vec::new();
        for v in 0..n {
            cons.push(Constraint {
                sides: vec![g.closed_nbhd(v).to_vec()],
                need: base_dom,
                owner: strong.then_some(v),
            });
        }
        let t = spec.dist_threshold;
        let mut seen: HashSet<(Vec<usize>, usize)> = HashSet::new();
        let mut push_cover = |cons: &mut Vec<Constraint>, set: Vec<usize>, need: usize| {
            if need == 0 || !seen.insert((set.clone(), need)) {
                return;
            }
            cons.push(Constraint { sides: vec![set], need, owner: None });
        };
        let far = spec.far_pairs_implied();
        for u in 0..n {
            for v in u + 1..n {
                let (nu, nv) = (g.closed_nbhd(u), g.closed_nbhd(v));
                if far && nu.is_disjoint(nv) {
                    continue;
                }
                let left = nu.difference(nv).to_vec();
                let right = nv.difference(nu).to_vec();
                match spec.combiner {
                    Combiner::Sum => {
                        let mut both = left;
                        both.extend(right);
                        both.sort_unstable();
                        push_cover(&mut cons, both, t);
                    }
                    Combiner::Min => {
                        push_cover(&mut cons, left, t);
                        push_cover(&mut cons, right, t);
                    }
                    Combiner::Max => {
                        if t > 0 {
                            cons.push(Constraint { sides: vec![left, right], need: t, owner: None });
                        }
                    }
                }
            }
        }
        let mut touches = vec![Vec::new(); n];
        for (c, con) in cons.iter().enumerate() {
            for (side, members) in con.sides.iter().enumerate() {
                for &v in members {
                    touches[v].push((c, side));
                }
            }
        }
        Model {
            n,
            cons,
            touches,
            dom_need: vec![base_dom; n],
            detector_bonus: strong,
            neighbors: (0..n).map(|v| g.neighbors(v).to_vec()).collect(),
        }
    }
}

#[derive(Clone)]
struct Engine<'m> {
    model: &'m Model,
    state: Vec<u8>,
    have: Vec<[u16; 2]>,
    free: Vec<[u16; 2]>,
    trail: Vec<usize>,
    in_count: usize,
    queue: Vec<usize>,
    scratch: Vec<usize>,
}

enum Mode<'a> {
    /// Find a strictly smaller code than the shared incumbent.
    Minimize,
    /// Enumerate every code of exactly this size.
    Enumerate(usize, &'a mut Vec<VertexSet>),
    /// Stop at the first code of size at most this.
    Decide(usize),
}

struct Shared {
    best: AtomicUsize,
    witness: Mutex<Option<VertexSet>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
    budget: SolveBudget,
    start: Instant,
}

impl Shared {
    fn new(budget: SolveBudget, best: usize) -> Self {
        Shared {
            best: AtomicUsize::new(best),
            witness: Mutex::new(None),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
            budget,
            start: Instant::now(),
        }
    }

    fn offer(&self, set: VertexSet) {
        let size = set.len();
        let mut w = self.witness.lock().unwrap();
        if w.as_ref().is_none_or(|old| size < old.len()) {
            *w = Some(set);
            self.best.fetch_min(size, Ordering::SeqCst);
        }
    }
}

impl<'m> Engine<'m> {
    fn new(model: &'m Model) -> Self {
        let have = vec![[0u16; 2]; model.cons.len()];
        let free = model
            .cons
            .iter()
            .map(|c| {
                let mut f = [0u16; 2];
                for (i, s) in c.sides.iter().enumerate() {
                    f[i] = s.len() as u16;
                }
                f
            })
            .collect();
        Engine {
            model,
            state: vec![FREE; model.n],
            have,
            free,
            trail: Vec::new(),
            in_count: 0,
            queue: Vec::new(),
            scratch: Vec::new(),
        }
    }

    #[inline]
    fn need(&self, c: usize) -> usize {
        let con = &self.model.cons[c];
        con.need + con.owner.map_or(0, |o| (self.state[o] == IN) as usize)
    }

    #[inline]
    fn status(&self, c: usize) -> Status {
        let need = self.need(c);
        let con = &self.model.cons[c];
        if con.sides.len() == 1 {
            let (h, f) = (self.have[c][0] as usize, self.free[c][0] as usize);
            if h >= need {
                Status::Satisfied
            } else if h + f < need {
                Status::Conflict
            } else if h + f == need {
                Status::Tight(0)
            } else {
                Status::Open
            }
        } else {
            let mut feasible = [false; 2];
            for s in 0..2 {
                let (h, f) = (self.have[c][s] as usize, self.free[c][s] as usize);
                if h >= need {
                    return Status::Satisfied;
                }
                feasible[s] = h + f >= need;
            }
            match feasible {
                [false, false] => Status::Conflict,
                [true, false] | [false, true] => {
                    let s = if feasible[0] { 0 } else { 1 };
                    let (h, f) = (self.have[c][s] as usize, self.free[c][s] as usize);
                    if h + f == need {
                        Status::Tight(s)
                    } else {
                        Status::Open
                    }
                }
                [true, true] => Status::Open,
            }
        }
    }

    fn set(&mut self, v: usize, val: u8) {
        debug_assert_eq!(self.state[v], FREE);
        self.state[v] = val;
        for &(c, s) in &self.model.touches[v] {
            self.free[c][s] -= 1;
            if val == IN {
                self.have[c][s] += 1;
            }
        }
        if val == IN {
            self.in_count += 1;
        }
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let val = self.state[v];
            for &(c, s) in &self.model.touches[v] {
                self.free[c][s] += 1;
                if val == IN {
                    self.have[c][s] -= 1;
                }
            }
            if val == IN {
                self.in_count -= 1;
            }
            self.state[v] = FREE;
        }
    }

    /// Assigns `v` and propagates forced detectors. Returns false on conflict.
    fn assign(&mut self, v: usize, val: u8) -> bool {
        self.queue.clear();
        self.set(v, val);
        if !self.check_touched(v) {
            return false;
        }
        while let Some(w) = self.queue.pop() {
            if self.state[w] != FREE {
                continue;
            }
            self.set(w, IN);
            if !self.check_touched(w) {
                return false;
            }
        }
        true
    }

    fn check_touched(&mut self, v: usize) -> bool {
        for i in 0..self.model.touches[v].len() {
            let c = self.model.touches[v][i].0;
            match self.status(c) {
                Status::Conflict => return false,
                Status::Tight(s) => {
                    for &w in &self.model.cons[c].sides[s] {
                        if self.state[w] == FREE {
                            self.queue.push(w);
                        }
                    }
                }
                _ => {}
            }
        }
        true
    }

    /// Propagates every constraint once from scratch (root node).
    fn propagate_all(&mut self) -> bool {
        self.queue.clear();
        for c in 0..self.model.cons.len() {
            match self.status(c) {
                Status::Conflict => return false,
                Status::Tight(s) => {
                    for &w in &self.model.cons[c].sides[s] {
                        if self.state[w] == FREE {
                            self.queue.push(w);
                        }
                    }
                }
                _ => {}
            }
        }
        while let Some(w) = self.queue.pop() {
            if self.state[w] != FREE {
                continue;
            }
            self.set(w, IN);
            if !self.check_touched(w) {
                return false;
            }
        }
        true
    }

    /// Lower bound on the final code size, or `None` if the remaining
    /// domination deficit cannot be covered at all.
    fn lower_bound(&mut self) -> Option<usize> {
        let m = self.model;
        let mut deficit_total = 0usize;
        let mut deficient = std::mem::take(&mut self.scratch);
        deficient.clear();
        deficient.resize(m.n, 0);
        for v in 0..m.n {
            let need = m.dom_need[v] + (m.detector_bonus && self.state[v] == IN) as usize;
            let have = self.have[v][0] as usize;
            if have < need {
                deficient[v] = 1;
                deficit_total += need - have;
            }
        }
        if deficit_total == 0 {
            self.scratch = deficient;
            return Some(self.in_count);
        }
        let max_gain = m.neighbors.iter().map(Vec::len).max().unwrap_or(0) + 1;
        let mut buckets = vec![0usize; max_gain + 1];
        for u in 0..m.n {
            if self.state[u] != FREE {
                continue;
            }
            let mut gain: usize = m.neighbors[u].iter().map(|&w| deficient[w]).sum();
            if !m.detector_bonus {
                gain += deficient[u];
            }
            buckets[gain] += 1;
        }
        self.scratch = deficient;
        let mut covered = 0;
        let mut extra = 0;
        for gain in (1..=max_gain).rev() {
            for _ in 0..buckets[gain] {
                covered += gain;
                extra += 1;
                if covered >= deficit_total {
                    return Some(self.in_count + extra);
                }
            }
        }
        None
    }

    /// Open constraint with the fewest free vertices; its lowest free vertex.
    fn branch_vertex(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for c in 0..self.model.cons.len() {
            if self.status(c) != Status::Open {
                continue;
            }
            let options: usize = self.free[c].iter().map(|&f| f as usize).sum();
            if best.is_none_or(|(o, _)| options < o) {
                best = Some((options, c));
                if options <= 2 {
                    break;
                }
            }
        }
        let (_, c) = best?;
        let need = self.need(c);
        let con = &self.model.cons[c];
        let mut side = 0;
        if con.sides.len() == 2 {
            let slack = |s: usize| need.saturating_sub(self.have[c][s] as usize);
            let feasible = |s: usize| (self.have[c][s] + self.free[c][s]) as usize >= need;
            side = if !feasible(0) || (feasible(1) && slack(1) < slack(0)) { 1 } else { 0 };
        }
        con.sides[side].iter().copied().find(|&w| self.state[w] == FREE)
    }

    fn current_set(&self) -> VertexSet {
        VertexSet::from_indices(self.model.n, (0..self.model.n).filter(|&v| self.state[v] == IN))
    }

    /// Depth-first search. Returns false once the search must stop.
    fn dfs(&mut self, shared: &Shared, mode: &mut Mode<'_>) -> bool {
        if shared.stop.load(Ordering::Relaxed) {
            return false;
        }
        let nodes = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > shared.budget.max_nodes
            || (nodes % 1024 == 0 && shared.start.elapsed() > shared.budget.time_limit)
        {
            shared.exhausted.store(true, Ordering::Relaxed);
            shared.stop.store(true, Ordering::Relaxed);
            return false;
        }
        let Some(lb) = self.lower_bound() else { return true };
        match mode {
            Mode::Minimize => {
                if lb >= shared.best.load(Ordering::Relaxed) {
                    return true;
                }
            }
            Mode::Enumerate(k, _) | Mode::Decide(k) => {
                if lb > *k {
                    return true;
                }
            }
        }
        let Some(w) = self.branch_vertex() else {
            let set = self.current_set();
            match mode {
                Mode::Minimize => shared.offer(set),
                Mode::Enumerate(k, out) => {
                    if set.len() == *k {
                        out.push(set);
                    }
                }
                Mode::Decide(_) => {
                    shared.offer(set);
                    shared.stop.store(true, Ordering::Relaxed);
                    return false;
                }
            }
            return true;
        };
        for val in [IN, OUT] {
            let mark = self.trail.len();
            if self.assign(w, val) && !self.dfs(shared, mode) {
                self.undo_to(mark);
                return false;
            }
            self.undo_to(mark);
        }
        true
    }

    /// Splits the search at the top into independent subproblems, each a
    /// list of branching decisions.
    fn frontier(&mut self, target: usize) -> Vec<Vec<(usize, u8)>> {
        let mut open: Vec<Vec<(usize, u8)>> = vec![Vec::new()];
        let mut done: Vec<Vec<(usize, u8)>> = Vec::new();
        while !open.is_empty() && open.len() + done.len() < target {
            let mut next = Vec::new();
            for path in open {
                let mark = self.trail.len();
                let ok = path.iter().all(|&(v, val)| self.state[v] == FREE && self.assign(v, val));
                if ok {
                    match self.branch_vertex() {
                        Some(w) => {
                            for val in [IN, OUT] {
                                let mut p = path.clone();
                                p.push((w, val));
                                next.push(p);
                            }
                        }
                        None => done.push(path),
                    }
                }
                self.undo_to(mark);
            }
            open = next;
        }
        open.extend(done);
        open
    }
}

fn prepare(g: &Graph, spec: &CodeSpec) -> Option<Model> {
    let feasible = match *spec {
        s if s == CodeSpec::SIC => admits_sic(g),
        s if s == CodeSpec::IC => admits_ic(g),
        _ => is_valid_code(g, &VertexSet::full(g.n()), spec),
    };
    feasible.then(|| Model::new(g, spec))
}

/// Minimum code for `spec` on `g`, single-threaded.
pub fn solve_min(g: &Graph, spec: &CodeSpec, budget: SolveBudget) -> SolveResult {
    solve_min_with(g, spec, budget, 1)
}

/// Minimum code using up to `workers` parallel subtree searches. The
/// optimum does not depend on `workers`; node counts and witnesses may.
pub fn solve_min_with(g: &Graph, spec: &CodeSpec, budget: SolveBudget, workers: usize) -> SolveResult {
    let Some(model) = prepare(g, spec) else {
        return SolveResult { status: SolveStatus::Infeasible, nodes_explored: 0 };
    };
    let n = g.n();
    let shared = Shared::new(budget, n + 1);
    let mut root = Engine::new(&model);
    if !root.propagate_all() {
        // V is valid, so the root cannot conflict.
        unreachable!("full vertex set violates a compiled constraint");
    }
    shared.offer(VertexSet::full(n));
    run(&root, &shared, workers, |e, sh| {
        e.dfs(sh, &mut Mode::Minimize);
    });
    let nodes = shared.nodes.load(Ordering::Relaxed);
    let witness = shared.witness.into_inner().unwrap();
    let status = if shared.exhausted.load(Ordering::Relaxed) {
        SolveStatus::BudgetExceeded { best: witness }
    } else {
        let witness = witness.expect("V is always a valid incumbent");
        SolveStatus::Optimal { size: witness.len(), witness }
    };
    SolveResult { status, nodes_explored: nodes }
}

fn run<F>(root: &Engine<'_>, shared: &Shared, workers: usize, body: F)
where
    F: Fn(&mut Engine<'_>, &Shared) + Sync,
{
    if workers <= 1 {
        let mut e = root.clone();
        body(&mut e, shared);
        return;
    }
    let mut splitter = root.clone();
    let jobs = splitter.frontier(workers * 8);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| {
        jobs.par_iter().for_each(|path| {
            let mut e = root.clone();
            if path.iter().all(|&(v, val)| e.state[v] == FREE && e.assign(v, val)) {
                body(&mut e, shared);
            }
        });
    });
}

/// Searches for a code of size at most `k`.
pub fn solve_at_most(g: &Graph, spec: &CodeSpec, k: usize, budget: SolveBudget) -> (Decision, u64) {
    let Some(model) = prepare(g, spec) else {
        return (Decision::NoneWithin, 0);
    };
    let shared = Shared::new(budget, usize::MAX);
    let mut root = Engine::new(&model);
    if !root.propagate_all() {
        return (Decision::NoneWithin, 0);
    }
    let mut e = root.clone();
    e.dfs(&shared, &mut Mode::Decide(k));
    let nodes = shared.nodes.load(Ordering::Relaxed);
    if let Some(set) = shared.witness.into_inner().unwrap() {
        return (Decision::Found(set), nodes);
    }
    if shared.exhausted.load(Ordering::Relaxed) {
        (Decision::BudgetExceeded, nodes)
    } else {
        (Decision::NoneWithin, nodes)
    }
}

/// Every code of exactly `size` detectors (none of size below it are
/// assumed to exist; pass the optimum).
pub fn enumerate_codes(
    g: &Graph,
    spec: &CodeSpec,
    size: usize,
    budget: SolveBudget,
) -> Result<Vec<VertexSet>> {
    let Some(model) = prepare(g, spec) else { return Ok(Vec::new()) };
    let shared = Shared::new(budget, usize::MAX);
    let mut root = Engine::new(&model);
    if !root.propagate_all() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    root.dfs(&shared, &mut Mode::Enumerate(size, &mut out));
    if shared.exhausted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionCount {
    pub optimum: usize,
    pub labeled: usize,
    pub iso_classes: usize,
}

/// Optimum, number of optimal codes, and number of optimal codes up to
/// automorphisms of `g`.
pub fn count_min_solutions(g: &Graph, spec: &CodeSpec, budget: SolveBudget) -> Result<SolutionCount> {
    if g.n() > COUNT_CAP {
        return Err(Error::CapExceeded { n: g.n(), cap: COUNT_CAP });
    }
    let res = solve_min(g, spec, budget);
    let optimum = match res.status {
        SolveStatus::Optimal { size, .. } => size,
        SolveStatus::Infeasible => {
            return Err(Error::Precondition(format!("graph admits no {spec}")));
        }
        SolveStatus::BudgetExceeded { .. } => return Err(Error::BudgetExceeded),
    };
    let codes = enumerate_codes(g, spec, optimum, budget)?;
    let mut classes = BTreeSet::new();
    for s in &codes {
        let colors: Vec<u32> = (0..g.n()).map(|v| s.contains(v) as u32).collect();
        classes.insert(canonical_form_colored(g, &colors)?);
    }
    Ok(SolutionCount { optimum, labeled: codes.len(), iso_classes: classes.len() })
}

/// `(g □ P2, S × {0, 1})`, with the output re-verified as an SIC.
pub fn doubling_construction(g: &Graph, s: &VertexSet) -> Result<(Graph, VertexSet)> {
    if !is_valid_code(g, s, &CodeSpec::SIC) {
        return Err(Error::InvalidCode("input set is not an SIC".into()));
    }
    let doubled = g.cartesian_product(&path(2)?);
    let set = VertexSet::from_indices(doubled.n(), s.iter().flat_map(|v| [2 * v, 2 * v + 1]));
    if !is_valid_code(&doubled, &set, &CodeSpec::SIC) {
        return Err(Error::InvalidCode("duplicated set is not an SIC on the product".into()));
    }
    Ok((doubled, set))
}

/// Exact search for a partition of `V(g)` into vertex-disjoint triangles.
pub fn triangle_partition(g: &Graph) -> Option<Vec<[usize; 3]>> {
    if g.n() % 3 != 0 {
        return None;
    }
    let tris = g.triangles();
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, t) in tris.iter().enumerate() {
        for &v in t {
            by_vertex[v].push(i);
        }
    }
    fn go(
        covered: &mut Vec<bool>,
        tris: &[[usize; 3]],
        by_vertex: &[Vec<usize>],
        chosen: &mut Vec<[usize; 3]>,
    ) -> bool {
        let Some(v) = covered.iter().position(|&c| !c) else { return true };
        for &i in &by_vertex[v] {
            let t = tris[i];
            if t.iter().any(|&w| covered[w]) {
                continue;
            }
            for &w in &t {
                covered[w] = true;
            }
            chosen.push(t);
            if go(covered, tris, by_vertex, chosen) {
                return true;
            }
            chosen.pop();
            for &w in &t {
                covered[w] = false;
            }
        }
        false
    }
    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::new();
    go(&mut covered, &tris, &by_vertex, &mut chosen).then_some(chosen)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicReport {
    pub is_cubic: bool,
    pub admits: bool,
    pub sic_value: usize,
    pub is_n: bool,
    pub partitionable_into_triangles: bool,
    pub n_mod_6: usize,
}

/// Checks the extremal characterization `SIC(G) = n` ⟺ triangle partition
/// on a connected cubic graph with at least eight vertices.
pub fn cubic_extremal_check(g: &Graph, budget: SolveBudget) -> Result<CubicReport> {
    if g.regular_degree() != Some(3) {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if !g.is_connected() || g.n() < 8 {
        return Err(Error::Precondition("need a connected cubic graph on at least 8 vertices".into()));
    }
    if !admits_sic(g) {
        return Err(Error::Precondition("graph admits no SIC".into()));
    }
    let sic_value = solve_min(g, &CodeSpec::SIC, budget).optimum().ok_or(Error::BudgetExceeded)?;
    Ok(CubicReport {
        is_cubic: true,
        admits: true,
        sic_value,
        is_n: sic_value == g.n(),
        partitionable_into_triangles: triangle_partition(g).is_some(),
        n_mod_6: g.n() % 6,
    })
}
