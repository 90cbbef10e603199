//! Toroidal quotients of the square, king, triangular, and hexagonal grids,
//! and density computations on them.
//!
//! Vertex `(i, j)` of an `m × n` torus has index `i·n + j`. With the
//! dimension floors enforced by [`TorusSpec::new`], every radius-2 ball
//! embeds injectively, so a code on the quotient lifts to a periodic code
//! on the infinite grid; torus optima are therefore never below the
//! infinite-grid density.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::codes::{is_valid_code, CodeSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::solver::{solve_min, SolveBudget, SolveStatus};
use crate::vertex_set::VertexSet;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GridFamily {
    Sqr,
    Kng,
    Tri,
    Hex,
}

impl GridFamily {
    pub const ALL: [GridFamily; 4] = [GridFamily::Kng, GridFamily::Sqr, GridFamily::Tri, GridFamily::Hex];

    pub fn degree(self) -> usize {
        match self {
            GridFamily::Sqr => 4,
            GridFamily::Kng => 8,
            GridFamily::Tri => 6,
            GridFamily::Hex => 3,
        }
    }

    /// Size of every closed neighborhood.
    pub fn closed_size(self) -> usize {
        self.degree() + 1
    }

    fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            GridFamily::Sqr => &[(1, 0), (0, 1)],
            GridFamily::Kng => &[(1, 0), (0, 1), (1, 1), (1, -1)],
            GridFamily::Tri => &[(1, 0), (0, 1), (1, 1)],
            GridFamily::Hex => &[(0, 1)],
        }
    }

    /// Lower-bound argument for SIC density on the infinite grid.
    pub fn bound_mode(self) -> BoundMode {
        match self {
            GridFamily::Kng => BoundMode::DomCounting { k: 9, a: 3, b: 3 },
            GridFamily::Tri => BoundMode::DomCounting { k: 7, a: 3, b: 4 },
            GridFamily::Sqr => BoundMode::RegularShare { k: 4 },
            GridFamily::Hex => BoundMode::RegularShare { k: 3 },
        }
    }

    /// Optimal SIC density of the infinite grid.
    pub fn optimal_density(self) -> Rational {
        match self {
            GridFamily::Kng => Rational::new(1, 3),
            GridFamily::Sqr | GridFamily::Tri => Rational::new(1, 2),
            GridFamily::Hex => Rational::new(2, 3),
        }
    }

    pub fn min_dim(self) -> usize {
        match self {
            GridFamily::Hex => 6,
            _ => 5,
        }
    }

    /// Whether `m × n` and `n × m` tori are isomorphic under the transpose.
    fn transpose_symmetric(self) -> bool {
        !matches!(self, GridFamily::Hex)
    }
}

impl fmt::Display for GridFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridFamily::Sqr => "SQR",
            GridFamily::Kng => "KNG",
            GridFamily::Tri => "TRI",
            GridFamily::Hex => "HEX",
        })
    }
}

impl FromStr for GridFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SQR" => Ok(GridFamily::Sqr),
            "KNG" => Ok(GridFamily::Kng),
            "TRI" => Ok(GridFamily::Tri),
            "HEX" => Ok(GridFamily::Hex),
            _ => Err(Error::InvalidParams(format!("unknown grid family '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusSpec {
    pub family: GridFamily,
    pub m: usize,
    pub n: usize,
}

impl TorusSpec {
    pub fn new(family: GridFamily, m: usize, n: usize) -> Result<Self> {
        let spec = TorusSpec { family, m, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let floor = self.family.min_dim();
        if self.m < floor || self.n < floor {
            return Err(Error::InvalidParams(format!(
                "{} torus needs both dimensions >= {floor}, got {}x{}",
                self.family, self.m, self.n
            )));
        }
        if self.family == GridFamily::Hex && (self.m % 2 != 0 || self.n % 2 != 0) {
            return Err(Error::InvalidParams(format!(
                "HEX torus needs even dimensions, got {}x{}",
                self.m, self.n
            )));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    #[inline]
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.n, v % self.n)
    }

    fn wrap(&self, i: usize, j: usize, di: isize, dj: isize) -> usize {
        let m = self.m as isize;
        let n = self.n as isize;
        let a = (i as isize + di).rem_euclid(m) as usize;
        let b = (j as isize + dj).rem_euclid(n) as usize;
        self.index(a, b)
    }
}

impl fmt::Display for TorusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}x{}", self.family, self.m, self.n)
    }
}

pub fn torus(spec: &TorusSpec) -> Result<Graph> {
    spec.validate()?;
    let mut edges = Vec::new();
    for i in 0..spec.m {
        for j in 0..spec.n {
            let v = spec.index(i, j);
            for &(di, dj) in spec.family.offsets() {
                edges.push((v, spec.wrap(i, j, di, dj)));
            }
            if spec.family == GridFamily::Hex && (i + j) % 2 == 0 {
                edges.push((v, spec.wrap(i, j, 1, 0)));
            }
        }
    }
    Graph::new(spec.order(), &edges)
}

/// The two density lower-bound arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundMode {
    /// `k`-regular graph with SIC: every detector has share at most `k/2`.
    RegularShare { k: usize },
    /// Closed neighborhoods of size `k`, detectors at least `a`-dominated
    /// and non-detectors at least `b`-dominated on average.
    DomCounting { k: usize, a: usize, b: usize },
}

pub fn density_lower_bound<T: Scalar>(mode: BoundMode) -> Result<T> {
    match mode {
        BoundMode::RegularShare { k } => {
            if k == 0 {
                return Err(Error::InvalidParams("degree must be positive".into()));
            }
            Ok(T::ratio(2, k))
        }
        BoundMode::DomCounting { k, a, b } => {
            if k == 0 || a == 0 || b == 0 {
                return Err(Error::InvalidParams("k, a, b must be positive".into()));
            }
            if k + b <= a {
                return Err(Error::InvalidParams("k + b - a must be positive".into()));
            }
            Ok(T::ratio(b, k + b - a))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub spec: TorusSpec,
    pub optimum_size: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub density: Rational,
    #[serde(skip)]
    pub witness: VertexSet,
    /// Domination value → number of vertices with that value.
    pub domination_histogram: BTreeMap<usize, usize>,
    pub nodes: u64,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

pub fn domination_histogram(g: &Graph, s: &VertexSet) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in 0..g.n() {
        *h.entry(g.closed_nbhd(v).intersection_len(s)).or_insert(0) += 1;
    }
    h
}

/// Exact minimum SIC density on one torus.
pub fn min_torus_density(spec: &TorusSpec, budget: SolveBudget) -> Result<DensityReport> {
    let g = torus(spec)?;
    let res = solve_min(&g, &CodeSpec::SIC, budget);
    match res.status {
        SolveStatus::Optimal { size, witness } => Ok(DensityReport {
            spec: *spec,
            optimum_size: size,
            density: Rational::ratio(size, spec.order()),
            domination_histogram: domination_histogram(&g, &witness),
            witness,
            nodes: res.nodes_explored,
        }),
        SolveStatus::Infeasible => Err(Error::Precondition(format!("{spec} admits no SIC"))),
        SolveStatus::BudgetExceeded { .. } => Err(Error::BudgetExceeded),
    }
}

/// Dimension pairs from the family floor up to `max_dim`, by area.
pub fn scan_dims(family: GridFamily, max_dim: usize) -> Vec<(usize, usize)> {
    let floor = family.min_dim();
    let step = if family == GridFamily::Hex { 2 } else { 1 };
    let mut dims = Vec::new();
    for m in (floor..=max_dim).step_by(step) {
        for n in (floor..=max_dim).step_by(step) {
            if family.transpose_symmetric() && n < m {
                continue;
            }
            dims.push((m, n));
        }
    }
    dims.sort_by_key(|&(m, n)| (m * n, m));
    dims
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub m: usize,
    pub n: usize,
    /// `None` when the solve ran out of budget.
    pub report: Option<DensityReport>,
}

/// Solves tori in [`scan_dims`] order until one reaches the infinite-grid
/// optimum (or the list runs out). Solves past the time allowance are
/// skipped, not failed.
pub fn scan_min_density(
    family: GridFamily,
    max_dim: usize,
    budget: SolveBudget,
    allowance: Option<Duration>,
) -> Vec<ScanEntry> {
    let start = std::time::Instant::now();
    let target = family.optimal_density();
    let mut out = Vec::new();
    for (m, n) in scan_dims(family, max_dim) {
        if allowance.is_some_and(|a| start.elapsed() > a) {
            break;
        }
        let spec = TorusSpec { family, m, n };
        let report = min_torus_density(&spec, budget).ok();
        let hit = report.as_ref().is_some_and(|r| r.density == target);
        out.push(ScanEntry { m, n, report });
        if hit {
            break;
        }
    }
    out
}

fn require_sic(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.capacity() != g.n() || !is_valid_code(g, s, &CodeSpec::SIC) {
        return Err(Error::InvalidCode("set is not an SIC on this torus".into()));
    }
    Ok(())
}

/// Whether every vertex of the king torus is at least 3-dominated.
pub fn kng_domination_check(spec: &TorusSpec, s: &VertexSet) -> Result<bool> {
    if spec.family != GridFamily::Kng {
        return Err(Error::InvalidParams("king grid required".into()));
    }
    let g = torus(spec)?;
    require_sic(&g, s)?;
    Ok((0..g.n()).all(|v| g.closed_nbhd(v).intersection_len(s) >= 3))
}

/// Non-detector triples `u - x - v` in the triangular torus where `u` and
/// `v` are non-adjacent neighbors of `x` that share a further neighbor of
/// `x` (two steps apart around the hexagon of `x`).
pub fn tri_forbidden_paths(g: &Graph, s: &VertexSet) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for x in (0..g.n()).filter(|&x| !s.contains(x)) {
        let outside: Vec<usize> = g.neighbors(x).iter().copied().filter(|&w| !s.contains(w)).collect();
        for (a, &u) in outside.iter().enumerate() {
            for &v in &outside[a + 1..] {
                if g.has_edge(u, v) {
                    continue;
                }
                let between = g
                    .open_nbhd(u)
                    .intersection(g.open_nbhd(v))
                    .intersection(g.open_nbhd(x))
                    .len();
                if between > 0 {
                    out.push((u, x, v));
                }
            }
        }
    }
    out
}

/// True iff the SIC `s` on the triangular torus has no forbidden
/// non-detector triple (see [`tri_forbidden_paths`]).
pub fn tri_forbidden_path_check(spec: &TorusSpec, s: &VertexSet) -> Result<bool> {
    if spec.family != GridFamily::Tri {
        return Err(Error::InvalidParams("triangular grid required".into()));
    }
    let g = torus(spec)?;
    require_sic(&g, s)?;
    Ok(tri_forbidden_paths(&g, s).is_empty())
}

/// Repeats a detector pattern `a × b` times, onto the `am × bn` torus.
pub fn lift(spec: &TorusSpec, s: &VertexSet, a: usize, b: usize) -> Result<(TorusSpec, VertexSet)> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParams("lift factors must be positive".into()));
    }
    let big = TorusSpec::new(spec.family, spec.m * a, spec.n * b)?;
    let mut out = VertexSet::empty(big.order());
    for i in 0..big.m {
        for j in 0..big.n {
            if s.contains(spec.index(i % spec.m, j % spec.n)) {
                out.insert(big.index(i, j));
            }
        }
    }
    Ok((big, out))
}

/// Rows of `#` (detector) and `.`.
pub fn ascii_tiling(spec: &TorusSpec, s: &VertexSet) -> String {
    let mut out = String::with_capacity(spec.order() + spec.m);
    for i in 0..spec.m {
        for j in 0..spec.n {
            out.push(if s.contains(spec.index(i, j)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingJson {
    pub family: GridFamily,
    pub dims: [usize; 2],
    pub detectors: Vec<[usize; 2]>,
}

pub fn tiling_json(spec: &TorusSpec, s: &VertexSet) -> TilingJson {
    TilingJson {
        family: spec.family,
        dims: [spec.m, spec.n],
        detectors: s
            .iter()
            .map(|v| {
                let (i, j) = spec.coords(v);
                [i, j]
            })
            .collect(),
    }
}
