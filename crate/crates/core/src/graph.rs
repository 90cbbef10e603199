//! Simple undirected graphs, generators, and neighborhood queries.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A simple undirected graph on vertices `0..n`.
///
/// Open and closed neighborhoods are both materialized as bitsets; the
/// graph is immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    open: Vec<VertexSet>,
    closed: Vec<VertexSet>,
    neighbors: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicate edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut open = vec![VertexSet::empty(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            open[u].insert(v);
            open[v].insert(u);
        }
        Ok(Self::from_open(open))
    }

    fn from_open(open: Vec<VertexSet>) -> Self {
        let n = open.len();
        let closed = open
            .iter()
            .enumerate()
            .map(|(v, s)| {
                let mut c = s.clone();
                c.insert(v);
                c
            })
            .collect();
        let neighbors = open.iter().map(|s| s.to_vec()).collect();
        Graph { n, open, closed, neighbors }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_open(vec![VertexSet::empty(n); n])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.open[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// `N(v)`.
    #[inline]
    pub fn open_nbhd(&self, v: usize) -> &VertexSet {
        &self.open[v]
    }

    /// `N[v]` without bounds checking beyond the slice index.
    #[inline]
    pub fn closed_nbhd(&self, v: usize) -> &VertexSet {
        &self.closed[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.closed[v].clone())
    }

    /// Vertices within distance `r` of `c`.
    pub fn ball(&self, c: usize, r: usize) -> Result<VertexSet> {
        self.check_vertex(c)?;
        let mut seen = VertexSet::empty(self.n);
        seen.insert(c);
        let mut frontier = vec![c];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.neighbors[u] {
                    if seen.insert(w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(seen)
    }

    /// BFS distances from `c`; `None` for unreachable vertices.
    pub fn distances(&self, c: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[c] = Some(0);
        queue.push_back(c);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.neighbors[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances(0).iter().all(Option::is_some)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let k = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    /// Two-coloring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.neighbors[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParams(format!(
                "permutation of length {} for graph on {} vertices",
                perm.len(),
                self.n
            )));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges)
    }

    /// Triangles `a < b < c`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in &self.neighbors[a] {
                if b <= a {
                    continue;
                }
                for &c in &self.neighbors[b] {
                    if c > b && self.open[a].contains(c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Cartesian product `self □ other`; vertex `(g, h)` gets index `g·|V(other)| + h`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let m = other.n;
        let mut edges = Vec::new();
        for g in 0..self.n {
            for (h1, h2) in other.edges() {
                edges.push((g * m + h1, g * m + h2));
            }
        }
        for (g1, g2) in self.edges() {
            for h in 0..m {
                edges.push((g1 * m + h, g2 * m + h));
            }
        }
        Graph::new(self.n * m, &edges).expect("product of valid graphs is valid")
    }
}

/// Path on `n ≥ 1` vertices.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("path needs at least one vertex".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("cycle length must be at least 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("complete graph needs at least one vertex".into()));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::new(10, &edges).unwrap()
}

/// `Q_d = P_2^d`; vertices adjacent iff their indices differ in one bit.
pub fn hypercube(d: usize) -> Result<Graph> {
    if d == 0 || d > 16 {
        return Err(Error::InvalidParams(format!("hypercube dimension must be in 1..=16, got {d}")));
    }
    let p2 = path(2)?;
    let mut g = p2.clone();
    for _ in 1..d {
        g = g.cartesian_product(&p2);
    }
    Ok(g)
}

/// A cubic graph on `6k` vertices partitioned into `2k` disjoint triangles.
///
/// Triangle `t` holds vertices `3t, 3t+1, 3t+2`. Consecutive triangles are
/// joined in a ring through their first and last vertices, and the middle
/// vertex of triangle `t` is matched with that of triangle `t + k`.
pub fn triangle_ring(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParams("triangle ring needs k >= 1".into()));
    }
    let t = 2 * k;
    let mut edges = Vec::new();
    for i in 0..t {
        let (a, b, c) = (3 * i, 3 * i + 1, 3 * i + 2);
        edges.extend([(a, b), (b, c), (a, c)]);
        edges.push((c, 3 * ((i + 1) % t)));
    }
    for i in 0..k {
        edges.push((3 * i + 1, 3 * (i + k) + 1));
    }
    Graph::new(6 * k, &edges)
}

/// Named graph families accepted by [`generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Petersen,
    Hypercube(usize),
    CartesianProduct(Box<Family>, Box<Family>),
    Torus(crate::grids::TorusSpec),
    TriangleRing(usize),
}

pub fn generate(family: &Family) -> Result<Graph> {
    match family {
        Family::Path(n) => path(*n),
        Family::Cycle(n) => cycle(*n),
        Family::Complete(n) => complete(*n),
        Family::Petersen => Ok(petersen()),
        Family::Hypercube(d) => hypercube(*d),
        Family::CartesianProduct(a, b) => Ok(generate(a)?.cartesian_product(&generate(b)?)),
        Family::Torus(spec) => crate::grids::torus(spec),
        Family::TriangleRing(k) => triangle_ring(*k),
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    /// `petersen`, `path:n`, `cycle:n`, `complete:n`, `hypercube:d`,
    /// `ring:k`, `torus:kng:6x6`, `cp:cycle:6,path:2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown graph family '{s}'"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        Ok(match head.to_ascii_lowercase().as_str() {
            "petersen" if rest.is_empty() => Family::Petersen,
            "path" => Family::Path(num(rest)?),
            "cycle" => Family::Cycle(num(rest)?),
            "complete" => Family::Complete(num(rest)?),
            "hypercube" => Family::Hypercube(num(rest)?),
            "ring" => Family::TriangleRing(num(rest)?),
            "torus" => {
                let (fam, dims) = rest.split_once(':').ok_or_else(bad)?;
                let (m, n) = dims.split_once('x').ok_or_else(bad)?;
                Family::Torus(crate::grids::TorusSpec::new(fam.parse()?, num(m)?, num(n)?)?)
            }
            "cp" => {
                let (a, b) = rest.split_once(',').ok_or_else(bad)?;
                Family::CartesianProduct(Box::new(a.parse()?), Box::new(b.parse()?))
            }
            _ => return Err(bad()),
        })
    }
}

/// Adjacency-list JSON fixture: `{"n": 4, "edges": [[0,1],[1,2]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.n, &edges)
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

pub fn from_json(text: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_graph()
}
