//! Verification of identifying-code variants.
//!
//! Each variant is a [`CodeSpec`]: every vertex needs at least
//! `dom_threshold` detectors in its closed neighborhood, and every pair of
//! distinct vertices `u, v` must satisfy
//! `combiner(|N_S[u] − N_S[v]|, |N_S[v] − N_S[u]|) ≥ dist_threshold`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combiner {
    Sum,
    Max,
    Min,
}

impl Combiner {
    #[inline]
    pub fn apply(self, left: usize, right: usize) -> usize {
        match self {
            Combiner::Sum => left + right,
            Combiner::Max => left.max(right),
            Combiner::Min => left.min(right),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeSpec {
    pub dom_threshold: usize,
    pub combiner: Combiner,
    pub dist_threshold: usize,
}

impl CodeSpec {
    pub const IC: CodeSpec = CodeSpec::new(1, Combiner::Sum, 1);
    pub const SIC: CodeSpec = CodeSpec::new(1, Combiner::Min, 1);
    pub const RED_IC: CodeSpec = CodeSpec::new(2, Combiner::Sum, 2);
    pub const DET_IC: CodeSpec = CodeSpec::new(2, Combiner::Max, 2);
    pub const ERR_IC: CodeSpec = CodeSpec::new(3, Combiner::Sum, 3);

    pub const PRESETS: [(&'static str, CodeSpec); 5] = [
        ("ic", Self::IC),
        ("sic", Self::SIC),
        ("red:ic", Self::RED_IC),
        ("det:ic", Self::DET_IC),
        ("err:ic", Self::ERR_IC),
    ];

    pub const fn new(dom_threshold: usize, combiner: Combiner, dist_threshold: usize) -> Self {
        CodeSpec { dom_threshold, combiner, dist_threshold }
    }

    pub fn name(&self) -> Option<&'static str> {
        Self::PRESETS.iter().find(|(_, s)| s == self).map(|(n, _)| *n)
    }

    /// Whether pairs with disjoint closed neighborhoods are already
    /// distinguished by the domination requirement alone.
    pub fn far_pairs_implied(&self) -> bool {
        let d = self.dom_threshold;
        self.combiner.apply(d, d) >= self.dist_threshold
    }

    /// Whether this code forces 2-domination everywhere and 3-domination on
    /// detectors, given minimum degree at least one.
    pub(crate) fn implies_sic_domination(&self) -> bool {
        self.combiner == Combiner::Min && self.dom_threshold >= 1 && self.dist_threshold >= 1
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => write!(f, "({},{:?},{})", self.dom_threshold, self.combiner, self.dist_threshold),
        }
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace(['-', '_'], ":");
        let key = match lower.as_str() {
            "red" | "redic" => "red:ic",
            "det" | "detic" => "det:ic",
            "err" | "erric" => "err:ic",
            other => other,
        };
        Self::PRESETS
            .iter()
            .find(|(n, _)| *n == key)
            .map(|(_, s)| *s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown code '{s}'")))
    }
}

/// A certificate that a detector set fails a [`CodeSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    UnderDominated { vertex: usize, dom: usize },
    Undistinguished { u: usize, v: usize, left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub kind: String,
    pub vertices: Vec<usize>,
    pub counts: Vec<usize>,
}

impl Violation {
    pub fn record(&self) -> ViolationRecord {
        match *self {
            Violation::UnderDominated { vertex, dom } => ViolationRecord {
                kind: "under_dominated".into(),
                vertices: vec![vertex],
                counts: vec![dom],
            },
            Violation::Undistinguished { u, v, left, right } => ViolationRecord {
                kind: "undistinguished".into(),
                vertices: vec![u, v],
                counts: vec![left, right],
            },
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnderDominated { vertex, dom } => {
                write!(f, "vertex {vertex} is only {dom}-dominated")
            }
            Violation::Undistinguished { u, v, left, right } => {
                write!(f, "pair ({u},{v}) undistinguished: |N_S[u]-N_S[v]|={left}, |N_S[v]-N_S[u]|={right}")
            }
        }
    }
}

/// Violations as JSON lines.
pub fn violations_to_jsonl(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| serde_json::to_string(&v.record()).unwrap() + "\n")
        .collect()
}

fn check_set(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.capacity() != g.n() {
        return Err(Error::InvalidParams(format!(
            "detector set sized for {} vertices, graph has {}",
            s.capacity(),
            g.n()
        )));
    }
    Ok(())
}

/// `|N[v] ∩ S|`.
pub fn dom(g: &Graph, s: &VertexSet, v: usize) -> Result<usize> {
    g.check_vertex(v)?;
    check_set(g, s)?;
    Ok(g.closed_nbhd(v).intersection_len(s))
}

/// `N_S[v] = N[v] ∩ S`.
pub fn locating_code(g: &Graph, s: &VertexSet, v: usize) -> VertexSet {
    g.closed_nbhd(v).intersection(s)
}

/// `(|N_S[u] − N_S[v]|, |N_S[v] − N_S[u]|)`.
pub fn diff_counts(g: &Graph, s: &VertexSet, u: usize, v: usize) -> Result<(usize, usize)> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    check_set(g, s)?;
    if u == v {
        return Err(Error::SameVertex(u));
    }
    Ok(raw_diff(g, s, u, v))
}

#[inline]
fn raw_diff(g: &Graph, s: &VertexSet, u: usize, v: usize) -> (usize, usize) {
    let (nu, nv) = (g.closed_nbhd(u), g.closed_nbhd(v));
    (nu.difference(nv).intersection_len(s), nv.difference(nu).intersection_len(s))
}

/// All violations of `spec`, in normalized order: domination failures by
/// vertex, then pairs `(u, v)` with `u < v` lexicographically.
pub fn verify_code(g: &Graph, s: &VertexSet, spec: &CodeSpec) -> Vec<Violation> {
    collect_violations(g, s, spec, false)
}

/// The first violation in normalized order, if any.
pub fn first_violation(g: &Graph, s: &VertexSet, spec: &CodeSpec) -> Option<Violation> {
    collect_violations(g, s, spec, true).into_iter().next()
}

pub fn is_valid_code(g: &Graph, s: &VertexSet, spec: &CodeSpec) -> bool {
    first_violation(g, s, spec).is_none()
}

fn collect_violations(g: &Graph, s: &VertexSet, spec: &CodeSpec, fail_fast: bool) -> Vec<Violation> {
    assert_eq!(s.capacity(), g.n(), "detector set sized for a different graph");
    let mut out = Vec::new();
    for v in 0..g.n() {
        let d = g.closed_nbhd(v).intersection_len(s);
        if d < spec.dom_threshold {
            out.push(Violation::UnderDominated { vertex: v, dom: d });
            if fail_fast {
                return out;
            }
        }
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let (left, right) = raw_diff(g, s, u, v);
            if spec.combiner.apply(left, right) < spec.dist_threshold {
                out.push(Violation::Undistinguished { u, v, left, right });
                if fail_fast {
                    return out;
                }
            }
        }
    }
    out
}

/// Outcome of the direct intersection-based SIC check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SicDefinitionCheck {
    pub valid: bool,
    /// First vertex whose alarm pattern is empty or does not pin it down.
    pub witness: Option<usize>,
}

/// Checks that every `x` has a nonempty locating code whose detectors'
/// closed neighborhoods intersect in exactly `{x}`.
pub fn verify_sic_definition(g: &Graph, s: &VertexSet) -> SicDefinitionCheck {
    assert_eq!(s.capacity(), g.n(), "detector set sized for a different graph");
    for x in 0..g.n() {
        let alarms = locating_code(g, s, x);
        if alarms.is_empty() {
            return SicDefinitionCheck { valid: false, witness: Some(x) };
        }
        let mut common = VertexSet::full(g.n());
        for a in &alarms {
            common.intersect_with(g.closed_nbhd(a));
        }
        if common.len() != 1 || !common.contains(x) {
            return SicDefinitionCheck { valid: false, witness: Some(x) };
        }
    }
    SicDefinitionCheck { valid: true, witness: None }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocateResult {
    Located(usize),
    /// Several vertices share the alarm pattern.
    Candidates(VertexSet),
    /// No vertex produces this alarm pattern.
    Inconsistent,
}

/// Finds the intruder location(s) consistent with alarm set `alarms`.
pub fn locate(g: &Graph, s: &VertexSet, alarms: &VertexSet) -> Result<LocateResult> {
    check_set(g, s)?;
    check_set(g, alarms)?;
    if alarms.is_empty() {
        return Err(Error::EmptyAlarm);
    }
    if let Some(v) = alarms.difference(s).first() {
        return Err(Error::NotInCode(v));
    }
    let mut common = VertexSet::full(g.n());
    for a in alarms {
        common.intersect_with(g.closed_nbhd(a));
    }
    let survivors: Vec<usize> =
        common.iter().filter(|&x| locating_code(g, s, x) == *alarms).collect();
    Ok(match survivors.as_slice() {
        [] => LocateResult::Inconsistent,
        [x] => LocateResult::Located(*x),
        many => LocateResult::Candidates(VertexSet::from_indices(g.n(), many.iter().copied())),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TwinReport {
    pub closed_twins: Vec<(usize, usize)>,
    pub semi_closed_twins: Vec<(usize, usize)>,
    pub open_twins: Vec<(usize, usize)>,
    pub semi_open_twins: Vec<(usize, usize)>,
}

impl TwinReport {
    pub fn admits_ic(&self) -> bool {
        self.closed_twins.is_empty()
    }

    pub fn admits_sic(&self) -> bool {
        self.semi_closed_twins.is_empty()
    }
}

fn nested(a: &VertexSet, b: &VertexSet) -> bool {
    a.is_subset(b) || b.is_subset(a)
}

pub fn twin_scan(g: &Graph) -> TwinReport {
    let mut r = TwinReport::default();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let (cu, cv) = (g.closed_nbhd(u), g.closed_nbhd(v));
            let (ou, ov) = (g.open_nbhd(u), g.open_nbhd(v));
            if cu == cv {
                r.closed_twins.push((u, v));
            }
            if nested(cu, cv) {
                r.semi_closed_twins.push((u, v));
            }
            if ou == ov {
                r.open_twins.push((u, v));
            }
            if nested(ou, ov) {
                r.semi_open_twins.push((u, v));
            }
        }
    }
    r
}

pub fn admits_ic(g: &Graph) -> bool {
    (0..g.n()).all(|u| (u + 1..g.n()).all(|v| g.closed_nbhd(u) != g.closed_nbhd(v)))
}

pub fn admits_sic(g: &Graph) -> bool {
    (0..g.n()).all(|u| (u + 1..g.n()).all(|v| !nested(g.closed_nbhd(u), g.closed_nbhd(v))))
}

/// Whether some code for `spec` exists on `g`. Every requirement is
/// monotone in the detector set, so this is the check on `S = V`.
pub fn admits(g: &Graph, spec: &CodeSpec) -> bool {
    is_valid_code(g, &VertexSet::full(g.n()), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, petersen};

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn presets_match_table() {
        assert_eq!(CodeSpec::IC, CodeSpec::new(1, Combiner::Sum, 1));
        assert_eq!(CodeSpec::SIC, CodeSpec::new(1, Combiner::Min, 1));
        assert_eq!(CodeSpec::RED_IC, CodeSpec::new(2, Combiner::Sum, 2));
        assert_eq!(CodeSpec::DET_IC, CodeSpec::new(2, Combiner::Max, 2));
        assert_eq!(CodeSpec::ERR_IC, CodeSpec::new(3, Combiner::Sum, 3));
        for (name, spec) in CodeSpec::PRESETS {
            assert_eq!(name.parse::<CodeSpec>().unwrap(), spec);
            assert!(spec.far_pairs_implied());
        }
        assert!("bogus".parse::<CodeSpec>().is_err());
    }

    #[test]
    fn dom_examples() {
        let c4 = cycle(4).unwrap();
        assert_eq!(dom(&c4, &VertexSet::full(4), 0).unwrap(), 3);
        assert_eq!(dom(&c4, &set(4, &[0, 2]), 1).unwrap(), 2);
        assert_eq!(dom(&c4, &VertexSet::empty(4), 3).unwrap(), 0);
        assert!(dom(&c4, &VertexSet::empty(4), 4).is_err());
    }

    #[test]
    fn diff_examples() {
        let c4 = cycle(4).unwrap();
        let all = VertexSet::full(4);
        assert_eq!(diff_counts(&c4, &all, 0, 1).unwrap(), (1, 1));
        assert_eq!(diff_counts(&c4, &all, 0, 2).unwrap(), (1, 1));
        assert_eq!(diff_counts(&c4, &VertexSet::empty(4), 0, 1).unwrap(), (0, 0));
        assert_eq!(diff_counts(&c4, &all, 1, 1), Err(Error::SameVertex(1)));
        let p = petersen();
        let s = set(10, &[0, 1, 2, 7]);
        let (a, b) = diff_counts(&p, &s, 0, 5).unwrap();
        assert_eq!(diff_counts(&p, &s, 5, 0).unwrap(), (b, a));
    }

    #[test]
    fn verify_examples() {
        let c4 = cycle(4).unwrap();
        assert!(verify_code(&c4, &VertexSet::full(4), &CodeSpec::SIC).is_empty());
        let p3 = path(3).unwrap();
        let v = verify_code(&p3, &VertexSet::full(3), &CodeSpec::SIC);
        assert!(v.contains(&Violation::Undistinguished { u: 0, v: 1, left: 0, right: 1 }));
        let fast = first_violation(&p3, &VertexSet::full(3), &CodeSpec::SIC);
        assert_eq!(fast.as_ref(), v.first());
    }

    #[test]
    fn definition_examples() {
        let c4 = cycle(4).unwrap();
        assert!(verify_sic_definition(&c4, &VertexSet::full(4)).valid);
        let r = verify_sic_definition(&c4, &set(4, &[0, 1, 2]));
        assert!(!r.valid);
        assert!(r.witness.is_some());
        // N_S[3] = {0,2} and N[0] ∩ N[2] = {1,3}
        let alarms = locating_code(&c4, &set(4, &[0, 1, 2]), 3);
        assert_eq!(alarms.to_vec(), vec![0, 2]);
        let r = verify_sic_definition(&petersen(), &VertexSet::empty(10));
        assert_eq!(r, SicDefinitionCheck { valid: false, witness: Some(0) });
    }

    #[test]
    fn locate_examples() {
        let c4 = cycle(4).unwrap();
        let all = VertexSet::full(4);
        assert_eq!(locate(&c4, &all, &set(4, &[3, 0, 1])).unwrap(), LocateResult::Located(0));
        assert_eq!(locate(&c4, &all, &set(4, &[0])).unwrap(), LocateResult::Inconsistent);
        assert_eq!(locate(&c4, &all, &VertexSet::empty(4)), Err(Error::EmptyAlarm));
        assert_eq!(locate(&c4, &set(4, &[0, 1]), &set(4, &[2])), Err(Error::NotInCode(2)));
        // P3 with all detectors: leaf 0 alarms {0,1}; nothing else has that pattern.
        let p3 = path(3).unwrap();
        assert_eq!(
            locate(&p3, &VertexSet::full(3), &set(3, &[0, 1])).unwrap(),
            LocateResult::Located(0)
        );
        // K2 with one detector: both vertices raise the same alarm.
        let k2 = path(2).unwrap();
        assert_eq!(
            locate(&k2, &set(2, &[0]), &set(2, &[0])).unwrap(),
            LocateResult::Candidates(VertexSet::full(2))
        );
    }

    #[test]
    fn twins() {
        let p3 = path(3).unwrap();
        let r = twin_scan(&p3);
        assert!(r.semi_closed_twins.contains(&(0, 1)));
        assert!(!r.admits_sic());
        assert!(r.admits_ic());
        assert!(r.open_twins.contains(&(0, 2)));
        let c4 = cycle(4).unwrap();
        let r = twin_scan(&c4);
        assert!(r.admits_sic());
        assert_eq!(r.open_twins, vec![(0, 2), (1, 3)]);
        assert!(admits_sic(&c4) && admits_ic(&c4));
        for r in [twin_scan(&p3), twin_scan(&c4), twin_scan(&petersen())] {
            for p in &r.closed_twins {
                assert!(r.semi_closed_twins.contains(p));
            }
            for p in &r.open_twins {
                assert!(r.semi_open_twins.contains(p));
            }
        }
    }

    #[test]
    fn jsonl() {
        let v = [Violation::UnderDominated { vertex: 2, dom: 0 }];
        assert_eq!(
            violations_to_jsonl(&v),
            "{\"kind\":\"under_dominated\",\"vertices\":[2],\"counts\":[0]}\n"
        );
    }
}
