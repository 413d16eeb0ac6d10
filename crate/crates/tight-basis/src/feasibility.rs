//! b-matchings, tight dijoins, tight edge covers, crossing numbers and tight sources.
//!
//! A perfect b-matching `J` is handled through the orientation
//! `(A ∖ J) ∪ J⁻¹` of the underlying graph: `J` is a dijoin exactly when this
//! orientation is strongly connected, and moving one unit of degree from
//! source `x` to source `y` amounts to reversing a `y -> x` path, which keeps
//! strong connectivity iff there are two arc-disjoint such paths.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::flow::{BoundedFlow, FlowNetwork, INF};
use crate::graph::{bridges, mask, ArcSet, Dicut, Digraft, UnionFind, VertexSet};
use crate::sfm::{self, BarrierSide};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequality {
    /// `b(X) <= |N(X)| - 1` or `b(S) = |T|`.
    BMatching,
    /// `σ(V - X) <= |X|`.
    TightDijoin,
    /// `|N(X)| >= |X|` for source sets.
    EdgeCoverSources,
    /// `|N(Y)| >= |Y|` for sink sets with `N(Y) ⊆ Sᵗ`.
    EdgeCoverSinks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolatorSide {
    S,
    T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallViolator {
    pub side: ViolatorSide,
    pub set: VertexSet,
    pub inequality: Inequality,
}

impl HallViolator {
    fn new(side: ViolatorSide, set: VertexSet, inequality: Inequality) -> Self {
        Self { side, set, inequality }
    }
}

/// Degrees on sources, indexed by vertex id (sink entries are ignored).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn of(d: &Digraft, j: &[usize]) -> Self {
        let mut b = vec![0; d.n()];
        for &a in j {
            b[d.arc(a).0] += 1;
        }
        Self(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

/// Perfect b-matching that is also a dijoin, or a violated inequality.
pub fn perfect_b_matching(d: &Digraft, b: &DegreeSequence) -> std::result::Result<ArcSet, HallViolator> {
    let sources = d.sources();
    let total: usize = sources.iter().map(|&s| b.0[s]).sum();
    if total != d.sink_count() {
        return Err(HallViolator::new(ViolatorSide::S, sources, Inequality::BMatching));
    }
    let j = b_matching_flow(d, &b.0, None)
        .map_err(|x| HallViolator::new(ViolatorSide::S, x, Inequality::BMatching))?;
    if let Some(x) = uncovered_source_set(d, &j) {
        return Err(HallViolator::new(ViolatorSide::S, x, Inequality::BMatching));
    }
    Ok(j)
}

/// Perfect b-matching ignoring the dijoin property, optionally with one sink
/// deleted. On failure returns a source set with `b(X) > |N(X)|`.
fn b_matching_flow(d: &Digraft, b: &[usize], deleted_sink: Option<usize>) -> std::result::Result<ArcSet, VertexSet> {
    let n = d.n();
    let (src, snk) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    let mut need = 0i64;
    for v in 0..n {
        if d.is_source(v) {
            if b[v] > 0 {
                net.add_edge(src, v, b[v] as i64);
            }
        } else if Some(v) != deleted_sink {
            net.add_edge(v, snk, 1);
            need += 1;
        }
    }
    let mut handles = Vec::with_capacity(d.m());
    for &(s, t) in d.arcs() {
        if Some(t) == deleted_sink {
            handles.push(usize::MAX);
        } else {
            handles.push(net.add_edge(s, t, INF));
        }
    }
    let total_b: i64 = (0..n).filter(|&v| d.is_source(v)).map(|v| b[v] as i64).sum();
    let f = net.max_flow(src, snk);
    if f < need || f < total_b {
        let reach = net.residual_reachable(src);
        let x: VertexSet = (0..n).filter(|&v| d.is_source(v) && reach[v]).collect();
        return Err(x);
    }
    Ok((0..d.m()).filter(|&a| handles[a] != usize::MAX && net.flow(handles[a]) > 0).collect())
}

/// If `J` misses some dicut, the source set of a closed side.
fn uncovered_source_set(d: &Digraft, j: &[usize]) -> Option<VertexSet> {
    let n = d.n();
    let jm = mask(d.m(), j);
    let reach = |forward: bool| -> Vec<bool> {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for &a in d.out_arcs(v).iter().chain(d.in_arcs(v)) {
                let (s, t) = d.arc(a);
                let w = if forward {
                    if v == s {
                        Some(t)
                    } else if jm[a] {
                        Some(s)
                    } else {
                        None
                    }
                } else if v == t {
                    Some(s)
                } else if jm[a] {
                    Some(t)
                } else {
                    None
                };
                if let Some(w) = w {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen
    };
    let fwd = reach(true);
    let closed: Vec<bool> = if fwd.iter().all(|&b| b) {
        let bwd = reach(false);
        if bwd.iter().all(|&b| b) {
            return None;
        }
        bwd.iter().map(|&b| !b).collect()
    } else {
        fwd
    };
    Some((0..n).filter(|&v| closed[v] && d.is_source(v)).collect())
}

/// Tight dijoin held as an orientation of the underlying graph.
#[derive(Clone, Debug)]
pub struct TightDijoinState<'a> {
    d: &'a Digraft,
    /// Arc in `J`, i.e. oriented sink -> source.
    rev: Vec<bool>,
    /// Arcs taking part in the orientation (leaf-sink arcs are forced into `J`).
    usable: Vec<bool>,
    tight: Vec<bool>,
    b: Vec<usize>,
}

impl<'a> TightDijoinState<'a> {
    /// Build a tight dijoin of a TightSources-form digraft.
    pub fn new(d: &'a Digraft) -> std::result::Result<Self, HallViolator> {
        let n = d.n();
        let tight = d.tight_mask();
        let sinks = d.sinks();
        if let Some(&t) = sinks.iter().find(|&&t| d.degree(t) == 0) {
            return Err(HallViolator::new(ViolatorSide::T, vec![t], Inequality::TightDijoin));
        }
        if !d.is_connected() {
            return Err(HallViolator::new(ViolatorSide::T, vec![sinks[0]], Inequality::TightDijoin));
        }
        let leaf: Vec<bool> = (0..n).map(|v| !d.is_source(v) && d.degree(v) == 1).collect();
        let mut rev = vec![false; d.m()];
        let mut usable = vec![true; d.m()];
        for (a, &(_, t)) in d.arcs().iter().enumerate() {
            if leaf[t] {
                rev[a] = true;
                usable[a] = false;
            }
        }
        let active: Vec<bool> = (0..n).map(|v| !leaf[v]).collect();
        let active_count = active.iter().filter(|&&b| b).count();
        for s in d.sources() {
            let c = d.out_arcs(s).iter().filter(|&&a| leaf[d.arc(a).1]).count();
            let rest = d.degree(s) - c;
            if tight[s] && (c >= 2 || (c == 1 && rest > 0)) {
                return Err(HallViolator::new(ViolatorSide::S, vec![s], Inequality::TightDijoin));
            }
        }
        let mut st = Self { d, rev, usable, tight, b: vec![0; n] };
        if active_count <= 1 {
            st.recount();
            return Ok(st);
        }
        if let Some(&e) = bridges(n, d.arcs(), &active).first() {
            let (_, t) = d.arc(e);
            return Err(HallViolator::new(ViolatorSide::T, vec![t], Inequality::TightDijoin));
        }
        st.robbins(&active);
        st.recount();
        if !st.repair(&active) {
            return Err(sigma_violator(d));
        }
        Ok(st)
    }

    fn recount(&mut self) {
        self.b.iter_mut().for_each(|x| *x = 0);
        for a in 0..self.d.m() {
            if self.rev[a] {
                self.b[self.d.arc(a).0] += 1;
            }
        }
    }

    /// Tail and head in the orientation.
    fn ends(&self, a: usize) -> (usize, usize) {
        let (s, t) = self.d.arc(a);
        if self.rev[a] {
            (t, s)
        } else {
            (s, t)
        }
    }

    fn robbins(&mut self, active: &[bool]) {
        let d = self.d;
        let n = d.n();
        let root = (0..n).find(|&v| active[v]).unwrap();
        let mut disc = vec![usize::MAX; n];
        let mut oriented = vec![false; d.m()];
        let mut time = 0;
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        disc[root] = time;
        time += 1;
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            let inc = d.incident(v);
            if *idx < inc.len() {
                let a = inc[*idx];
                *idx += 1;
                if !self.usable[a] || oriented[a] {
                    continue;
                }
                let (s, t) = d.arc(a);
                let w = if s == v { t } else { s };
                oriented[a] = true;
                // orient v -> w (tree arc or back arc towards an ancestor)
                if disc[w] == usize::MAX {
                    self.rev[a] = v != s;
                    disc[w] = time;
                    time += 1;
                    stack.push((w, 0));
                } else {
                    self.rev[a] = v != s;
                }
            } else {
                stack.pop();
            }
        }
    }

    fn in_degree(&self) -> Vec<usize> {
        let mut z = vec![0; self.d.n()];
        for a in 0..self.d.m() {
            if self.usable[a] {
                z[self.ends(a).1] += 1;
            }
        }
        z
    }

    /// Fix degrees by feasible path reversals; false if stuck.
    fn repair(&mut self, active: &[bool]) -> bool {
        let d = self.d;
        let n = d.n();
        let udeg: Vec<usize> = (0..n).map(|v| d.incident(v).iter().filter(|&&a| self.usable[a]).count()).collect();
        let lo: Vec<usize> = (0..n).map(|v| if d.is_source(v) { 1 } else { udeg[v].saturating_sub(1) }).collect();
        let hi: Vec<usize> = (0..n)
            .map(|v| if d.is_source(v) { if self.tight[v] { 1 } else { udeg[v] } } else { udeg[v].saturating_sub(1) })
            .collect();
        loop {
            let z = self.in_degree();
            if let Some(y) = (0..n).find(|&v| active[v] && z[v] < lo[v]) {
                let mut done = false;
                for x in (0..n).filter(|&x| active[x] && x != y && z[x] > lo[x]) {
                    if let Some(p) = self.reversible_path(y, x) {
                        self.reverse(&p);
                        done = true;
                        break;
                    }
                }
                if !done {
                    return false;
                }
                continue;
            }
            if let Some(x) = (0..n).find(|&v| active[v] && z[v] > hi[v]) {
                let mut done = false;
                for y in (0..n).filter(|&y| active[y] && y != x && z[y] < hi[y]) {
                    if let Some(p) = self.reversible_path(y, x) {
                        self.reverse(&p);
                        done = true;
                        break;
                    }
                }
                if !done {
                    return false;
                }
                continue;
            }
            return true;
        }
    }

    fn reverse(&mut self, path: &[usize]) {
        for &a in path {
            let (s, _) = self.d.arc(a);
            if self.rev[a] {
                self.b[s] -= 1;
            } else {
                self.b[s] += 1;
            }
            self.rev[a] = !self.rev[a];
        }
    }

    /// A `y -> x` path in the orientation, provided two arc-disjoint ones exist.
    fn reversible_path(&self, y: usize, x: usize) -> Option<Vec<usize>> {
        let p1 = self.bfs_path(y, x, None)?;
        let used = {
            let mut u = vec![false; self.d.m()];
            for &a in &p1 {
                u[a] = true;
            }
            u
        };
        self.bfs_path(y, x, Some(&used))?;
        Some(p1)
    }

    /// BFS path; with `used`, arcs of the first path may only be traversed backwards.
    fn bfs_path(&self, y: usize, x: usize, used: Option<&[bool]>) -> Option<Vec<usize>> {
        let d = self.d;
        let n = d.n();
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[y] = true;
        let mut q = VecDeque::from([y]);
        while let Some(v) = q.pop_front() {
            if v == x {
                break;
            }
            for &a in d.incident(v) {
                if !self.usable[a] {
                    continue;
                }
                let (tail, head) = self.ends(a);
                let back = used.is_some_and(|u| u[a]);
                let w = if !back && tail == v {
                    head
                } else if back && head == v {
                    tail
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    pred[w] = Some(a);
                    q.push_back(w);
                }
            }
        }
        if !seen[x] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = x;
        while v != y {
            let a = pred[v].unwrap();
            path.push(a);
            let (tail, head) = self.ends(a);
            v = if head == v { tail } else { head };
        }
        path.reverse();
        Some(path)
    }

    pub fn dijoin(&self) -> ArcSet {
        (0..self.d.m()).filter(|&a| self.rev[a]).collect()
    }

    pub fn degrees(&self) -> DegreeSequence {
        DegreeSequence(self.b.clone())
    }

    pub fn degree(&self, s: usize) -> usize {
        self.b[s]
    }

    /// Could one unit of degree move from `x` to `y`?
    pub fn can_shift(&self, y: usize, x: usize) -> bool {
        let d = self.d;
        if y == x || !d.is_source(y) || !d.is_source(x) || self.tight[y] || self.tight[x] || self.b[x] < 2 {
            return false;
        }
        self.reversible_path(y, x).is_some()
    }

    /// Weak components of the exchange graph on the sources. A source set has
    /// constant degree sum over all tight dijoins iff it is a union of these.
    pub fn exchange_components(&self) -> Vec<VertexSet> {
        let d = self.d;
        let sources = d.sources();
        let mut uf = UnionFind::new(d.n());
        for &y in &sources {
            for &x in &sources {
                if uf.find(x) != uf.find(y) && self.can_shift(y, x) {
                    uf.union(x, y);
                }
            }
        }
        let mut groups: Vec<VertexSet> = Vec::new();
        let mut slot = vec![usize::MAX; d.n()];
        for &s in &sources {
            let r = uf.find(s);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(s);
        }
        groups
    }

    /// Move one unit of degree from `x` to `y` if the result is still a tight dijoin.
    pub fn try_shift(&mut self, y: usize, x: usize) -> bool {
        if !self.can_shift(y, x) {
            return false;
        }
        match self.reversible_path(y, x) {
            Some(p) => {
                self.reverse(&p);
                true
            }
            None => false,
        }
    }

    /// Push `b(S ∩ U)` up (or down) by one through the smallest-id feasible pair.
    fn step(&mut self, inside: &[bool], up: bool) -> bool {
        let sources = self.d.sources();
        for &y in &sources {
            if inside[y] != up {
                continue;
            }
            for &x in &sources {
                if inside[x] == up {
                    continue;
                }
                if self.try_shift(y, x) {
                    return true;
                }
            }
        }
        false
    }

    /// `|J ∩ δ⁺(U)|` for a dicut out-shore mask.
    pub fn crossing(&self, inside: &[bool]) -> usize {
        let bs: usize = (0..self.d.n()).filter(|&v| inside[v] && self.d.is_source(v)).map(|v| self.b[v]).sum();
        let ts = (0..self.d.n()).filter(|&v| inside[v] && !self.d.is_source(v)).count();
        bs - ts
    }
}

/// Nonempty `X ⊆ T` or `X ⊆ Sᵗ` with `σ(V - X) > |X|`, found by minimisation.
fn sigma_violator(d: &Digraft) -> HallViolator {
    if let Ok((x, v)) = sfm::min_barrier_deficiency(d, BarrierSide::Sinks, &[], &[]) {
        if v < 0 {
            return HallViolator::new(ViolatorSide::T, x, Inequality::TightDijoin);
        }
    }
    if let Ok((x, v)) = sfm::min_barrier_deficiency(d, BarrierSide::TightSources, &[], &[]) {
        if v < 0 {
            return HallViolator::new(ViolatorSide::S, x, Inequality::TightDijoin);
        }
    }
    HallViolator::new(ViolatorSide::T, Vec::new(), Inequality::TightDijoin)
}

/// A tight dijoin, or a violated `σ(V - X) <= |X|`.
pub fn find_tight_dijoin(d: &Digraft) -> std::result::Result<ArcSet, HallViolator> {
    TightDijoinState::new(d).map(|s| s.dijoin())
}

pub fn is_covered(d: &Digraft) -> bool {
    TightDijoinState::new(d).is_ok()
}

/// A tight dijoin containing `arc`.
pub fn tight_dijoin_through(d: &Digraft, arc: usize) -> Result<ArcSet> {
    let st = TightDijoinState::new(d).map_err(|_| Error::Infeasible)?;
    let (u, w) = d.arc(arc);
    let mut b = st.degrees().0;
    b[u] -= 1;
    let mut j = b_matching_flow(d, &b, Some(w)).map_err(|_| Error::Infeasible)?;
    j.push(arc);
    j.sort_unstable();
    Ok(j)
}

/// Arcs with every degree at least one and degree exactly one on `Vᵗ`.
pub fn tight_edge_cover(d: &Digraft) -> std::result::Result<ArcSet, HallViolator> {
    let n = d.n();
    let tight = d.tight_mask();
    let (src, snk) = (n, n + 1);
    let mut bf = BoundedFlow::new(n + 2);
    for v in 0..n {
        if d.is_source(v) {
            bf.add_arc(src, v, 1, if tight[v] { 1 } else { INF });
        } else {
            bf.add_arc(v, snk, 1, 1);
        }
    }
    let handles: Vec<usize> = d.arcs().iter().map(|&(s, t)| bf.add_arc(s, t, 0, 1)).collect();
    if let Some(f) = bf.feasible(src, snk) {
        return Ok((0..d.m()).filter(|&a| f[handles[a]] > 0).collect());
    }
    if let Ok((x, v)) = sfm::min_neighborhood_surplus(d, &[], &[]) {
        if v < 0 {
            return Err(HallViolator::new(ViolatorSide::S, x, Inequality::EdgeCoverSources));
        }
    }
    // sinks whose neighbours are all tight, matched into Sᵗ
    let cand: Vec<usize> = d.sinks().into_iter().filter(|&t| d.in_arcs(t).iter().all(|&a| tight[d.arc(a).0])).collect();
    let mut net = FlowNetwork::new(n + 2);
    for &t in &cand {
        net.add_edge(src, t, 1);
        for &a in d.in_arcs(t) {
            net.add_edge(t, d.arc(a).0, INF);
        }
    }
    for &s in d.tight_sources() {
        net.add_edge(s, snk, 1);
    }
    net.max_flow(src, snk);
    let reach = net.residual_reachable(src);
    let y: VertexSet = cand.into_iter().filter(|&t| reach[t]).collect();
    Err(HallViolator::new(ViolatorSide::T, y, Inequality::EdgeCoverSinks))
}

/// Tight dijoin minimising or maximising `|J ∩ δ⁺(U)|`, with the value.
pub fn extreme_crossing_shore(d: &Digraft, shore: &[usize], dir: Direction) -> Result<(ArcSet, usize)> {
    let mut st = TightDijoinState::new(d).map_err(|_| Error::Infeasible)?;
    let inside = mask(d.n(), shore);
    // crossing grows with b(S ∩ U)
    let up = dir == Direction::Max;
    while st.step(&inside, up) {}
    let v = st.crossing(&inside);
    Ok((st.dijoin(), v))
}

/// Extremal `|J ∩ δ⁻(Z ∪ N(Z))| = |N(Z)| - b(Z)` over tight dijoins.
pub fn extremal_crossing(d: &Digraft, z: &[usize], dir: Direction) -> Result<(ArcSet, usize)> {
    let c = d.dicut_entering(z)?;
    extreme_crossing_shore(d, &c.shore, dir)
}

/// `(min, max)` of `|J ∩ C|` over tight dijoins.
pub fn crossing_range(d: &Digraft, c: &Dicut) -> Result<(usize, usize)> {
    let (_, lo) = extreme_crossing_shore(d, &c.shore, Direction::Min)?;
    let (_, hi) = extreme_crossing_shore(d, &c.shore, Direction::Max)?;
    Ok((lo, hi))
}

/// Tight dijoin with exactly `lambda` arcs in `C`, walking one exchange at a time.
pub fn jump_free(d: &Digraft, c: &Dicut, lambda: usize) -> Result<ArcSet> {
    let mut st = TightDijoinState::new(d).map_err(|_| Error::Infeasible)?;
    let inside = mask(d.n(), &c.shore);
    loop {
        let k = st.crossing(&inside);
        if k == lambda {
            return Ok(st.dijoin());
        }
        if !st.step(&inside, k < lambda) {
            let (lo, hi) = crossing_range(d, c)?;
            return Err(Error::OutOfRange { lambda, min: lo, max: hi });
        }
    }
}

/// Sources of degree one in every tight dijoin (`S̄ᵗ`).
pub fn tight_sources(d: &Digraft) -> Result<VertexSet> {
    let st = TightDijoinState::new(d).map_err(|_| Error::Infeasible)?;
    let tight = d.tight_mask();
    let sources = d.sources();
    let mut out = Vec::new();
    for &s in &sources {
        if tight[s] {
            out.push(s);
            continue;
        }
        if st.degree(s) >= 2 {
            continue;
        }
        let movable = sources.iter().any(|&x| {
            x != s && !tight[x] && st.degree(x) >= 2 && st.reversible_path(s, x).is_some()
        });
        if !movable {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn theta3() -> Digraft {
        let arcs = vec![(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)];
        Digraft::from_parts(&[0, 1], &[2, 3, 4], arcs, Family::TightSources(vec![])).unwrap()
    }

    fn hexagon() -> Digraft {
        // triangle graph reduced: sources 0,1,2, sinks 3,4,5
        let arcs = vec![(1, 3), (0, 3), (2, 4), (1, 4), (0, 5), (2, 5)];
        Digraft::from_parts(&[0, 1, 2], &[3, 4, 5], arcs, Family::TightSources(vec![])).unwrap()
    }

    #[test]
    fn theta3_b_matchings() {
        let d = theta3();
        let j = perfect_b_matching(&d, &DegreeSequence(vec![1, 2, 0, 0, 0])).unwrap();
        assert!(d.is_tight_dijoin(&j));
        assert_eq!(DegreeSequence::of(&d, &j).0[..2], [1, 2]);
        let v = perfect_b_matching(&d, &DegreeSequence(vec![3, 0, 0, 0, 0])).unwrap_err();
        assert_eq!(v.set, vec![0]);
        let v = perfect_b_matching(&d, &DegreeSequence(vec![1, 1, 0, 0, 0])).unwrap_err();
        assert_eq!(v.inequality, Inequality::BMatching);
    }

    #[test]
    fn tight_dijoin_theta_and_hexagon() {
        for d in [theta3(), hexagon()] {
            let j = find_tight_dijoin(&d).unwrap();
            assert!(d.is_tight_dijoin(&j));
            for a in 0..d.m() {
                let j = tight_dijoin_through(&d, a).unwrap();
                assert!(j.contains(&a) && d.is_tight_dijoin(&j));
            }
        }
    }

    #[test]
    fn theta3_crossing_numbers() {
        let d = theta3();
        assert_eq!(extremal_crossing(&d, &[0], Direction::Min).unwrap().1, 1);
        assert_eq!(extremal_crossing(&d, &[0], Direction::Max).unwrap().1, 2);
        let c = d.dicut(&[1]).unwrap();
        let j = jump_free(&d, &c, 2).unwrap();
        assert_eq!(j.iter().filter(|a| c.arcs.contains(a)).count(), 2);
        assert!(matches!(jump_free(&d, &c, 3), Err(Error::OutOfRange { lambda: 3, min: 1, max: 2 })));
        assert_eq!(tight_sources(&d).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn balanced_digraft_sources_all_tight() {
        let d = hexagon();
        assert_eq!(tight_sources(&d).unwrap(), vec![0, 1, 2]);
        for z in [vec![0], vec![1, 2]] {
            assert_eq!(extremal_crossing(&d, &z, Direction::Min).unwrap().1, 1);
            assert_eq!(extremal_crossing(&d, &z, Direction::Max).unwrap().1, 1);
        }
    }

    #[test]
    fn edge_cover_sink_violator() {
        // two sinks whose only neighbour is one tight source
        let arcs = vec![(0, 2), (0, 3), (1, 3), (1, 4)];
        let d = Digraft::from_parts(&[0, 1], &[2, 3, 4], arcs, Family::TightSources(vec![0])).unwrap();
        assert!(tight_edge_cover(&d).is_ok());
        let arcs = vec![(0, 2), (0, 3), (1, 4), (1, 5), (0, 5)];
        let d = Digraft::from_parts(&[0, 1], &[2, 3, 4, 5], arcs, Family::TightSources(vec![0])).unwrap();
        let v = tight_edge_cover(&d).unwrap_err();
        assert_eq!(v.inequality, Inequality::EdgeCoverSinks);
        assert_eq!(v.set, vec![2, 3]);
    }

    #[test]
    fn sigma_violator_found() {
        // sink 3 is a cut vertex: removing it leaves {0,2} and {1,4}
        let arcs = vec![(0, 2), (0, 3), (1, 3), (1, 4), (0, 2)];
        let d = Digraft::from_parts(&[0, 1], &[2, 3, 4], arcs, Family::TightSources(vec![])).unwrap();
        let v = find_tight_dijoin(&d).unwrap_err();
        assert_eq!(v.side, ViolatorSide::T);
    }
}
