//! Canonical labeling of small graphs by partition refinement and
//! individualization, with automorphism pruning.
//!
//! The canonical label of a graph is the graph6 string of its relabeling
//! under the best leaf of the search tree. Vertex colors, when supplied,
//! seed the initial partition and are folded into the label.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::emit_graph6;

/// Largest order accepted by the canonical labeler.
pub const CANON_CAP: usize = 64;

type Partition = Vec<Vec<usize>>;

/// Label that is equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<String> {
    canonical_form_colored(g, &vec![0; g.n()])
}

/// Label that is equal iff there is an isomorphism preserving `colors`.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> Result<String> {
    let perm = canonical_labeling(g, colors)?;
    let relabeled = g.relabel(&perm)?;
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    let colors: Vec<String> = sorted.iter().map(u32::to_string).collect();
    if colors.iter().all(|c| c == "0") {
        Ok(emit_graph6(&relabeled))
    } else {
        Ok(format!("{}|{}", colors.join(","), emit_graph6(&relabeled)))
    }
}

/// Canonical relabeling: vertex `v` moves to position `perm[v]`.
pub fn canonical_labeling(g: &Graph, colors: &[u32]) -> Result<Vec<usize>> {
    let n = g.n();
    if n > CANON_CAP {
        return Err(Error::CapExceeded { n, cap: CANON_CAP });
    }
    if colors.len() != n {
        return Err(Error::InvalidParams("one color per vertex required".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let initial: Partition = distinct
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).collect())
        .collect();

    let mut search = Search { g, best: None, first: None, autos: Vec::new() };
    let root = refine(g, initial);
    search.descend(root, &mut Vec::new());
    Ok(search.best.unwrap().1)
}

/// Splits cells by neighbor counts into every other cell until stable.
fn refine(g: &Graph, mut part: Partition) -> Partition {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in part.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let k = part.len();
        let mut next: Partition = Vec::with_capacity(n);
        let mut changed = false;
        for cell in &part {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u16>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u16; k];
                    for &w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut group: Vec<usize> = keyed[start..i].iter().map(|x| x.1).collect();
                    group.sort_unstable();
                    next.push(group);
                    start = i;
                }
            }
        }
        if next.len() != part.len() {
            changed = true;
        }
        part = next;
        if !changed {
            return part;
        }
    }
}

struct Search<'g> {
    g: &'g Graph,
    /// Best certificate and the labeling that produced it.
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<(Vec<u64>, Vec<usize>)>,
    /// Automorphisms as vertex maps.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn certificate(&self, perm: &[usize]) -> Vec<u64> {
        let n = self.g.n();
        let mut inv = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut bits = vec![0u64; (n * n).div_ceil(64)];
        for i in 0..n {
            for j in 0..n {
                if self.g.has_edge(inv[i], inv[j]) {
                    let k = i * n + j;
                    bits[k / 64] |= 1 << (63 - k % 64);
                }
            }
        }
        bits
    }

    fn record_auto(&mut self, a: &[usize], b: &[usize]) {
        // a(v) and b(γ(v)) agree: γ = a⁻¹ ∘ b
        let n = a.len();
        let mut inv_a = vec![0; n];
        for (v, &p) in a.iter().enumerate() {
            inv_a[p] = v;
        }
        let gamma: Vec<usize> = (0..n).map(|v| inv_a[b[v]]).collect();
        if gamma.iter().enumerate().any(|(v, &w)| v != w) && !self.autos.contains(&gamma) {
            self.autos.push(gamma);
        }
    }

    fn leaf(&mut self, part: &Partition) {
        let n = self.g.n();
        let mut perm = vec![0; n];
        for (pos, cell) in part.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let cert = self.certificate(&perm);
        match &self.first {
            None => self.first = Some((cert.clone(), perm.clone())),
            Some((c, p)) if *c == cert => {
                let p = p.clone();
                self.record_auto(&p, &perm);
            }
            _ => {}
        }
        match &self.best {
            None => self.best = Some((cert, perm)),
            Some((c, p)) => {
                if *c == cert {
                    let p = p.clone();
                    self.record_auto(&p, &perm);
                } else if cert > *c {
                    self.best = Some((cert, perm));
                }
            }
        }
    }

    /// Orbit representatives under automorphisms fixing `prefix` pointwise.
    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for a in &self.autos {
            if prefix.iter().all(|&v| a[v] == v) {
                for v in 0..n {
                    let (x, y) = (find(&mut parent, v), find(&mut parent, a[v]));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn descend(&mut self, part: Partition, prefix: &mut Vec<usize>) {
        let Some(target) = part.iter().position(|c| c.len() > 1) else {
            self.leaf(&part);
            return;
        };
        let cell = part[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let orbit = self.orbits(prefix);
                if explored.iter().any(|&w| orbit[w] == orbit[v]) {
                    continue;
                }
            }
            let mut child: Partition = Vec::with_capacity(part.len() + 1);
            for (i, c) in part.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&w| w != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            let child = refine(self.g, child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }
}
