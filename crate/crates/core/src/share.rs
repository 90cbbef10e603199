//! Share values `sh(v) = Σ_{u ∈ N[v]} 1 / dom(u)` of detectors.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::vertex_set::VertexSet;

/// Share of detector `v` in `s`.
pub fn share<T: Scalar>(g: &Graph, s: &VertexSet, v: usize) -> Result<T> {
    g.check_vertex(v)?;
    if !s.contains(v) {
        return Err(Error::NotInCode(v));
    }
    let mut total = T::zero();
    for u in g.closed_nbhd(v) {
        let d = g.closed_nbhd(u).intersection_len(s);
        if d == 0 {
            return Err(Error::Undominated(u));
        }
        total = total + T::ratio(1, d);
    }
    Ok(total)
}

/// Shares of every detector, in vertex order.
pub fn shares<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<Vec<(usize, T)>> {
    s.iter().map(|v| share(g, s, v).map(|x| (v, x))).collect()
}

/// Largest detector share; `None` for an empty set.
pub fn max_share<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<Option<T>> {
    let mut best: Option<T> = None;
    for (_, x) in shares::<T>(g, s)? {
        if best.as_ref().is_none_or(|b| x > *b) {
            best = Some(x);
        }
    }
    Ok(best)
}
