//! Graphs, digrafts, dicuts, contractions and family uncrossing.

use crate::error::{Error, Result};

/// Sorted list of vertex ids.
pub type VertexSet = Vec<usize>;
/// Sorted list of arc ids of a fixed host graph.
pub type ArcSet = Vec<usize>;

pub fn mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

pub fn unmask(m: &[bool]) -> Vec<usize> {
    m.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// 0/1 indicator vector of an arc set.
pub fn indicator(set: &[usize], m: usize) -> Vec<i64> {
    let mut x = vec![0; m];
    for &a in set {
        x[a] += 1;
    }
    x
}

/// Undirected multigraph; edge ids are list indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedMultigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UndirectedMultigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge {i} has an endpoint out of range")));
            }
            if u == v {
                return Err(Error::Input(format!("edge {i} is a self-loop")));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_two_edge_connected(&self) -> bool {
        bridgeless(self.n, &self.edges)
    }

    /// Bidirected arc `a`: `2e` is `u -> v` and `2e + 1` is `v -> u` for edge `e = (u, v)`.
    pub fn arc(&self, a: usize) -> (usize, usize) {
        let (u, v) = self.edges[a / 2];
        if a.is_multiple_of(2) {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn arc_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Edges with exactly one endpoint in `set`.
    pub fn cut_size(&self, inside: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| inside[u] != inside[v]).count()
    }

    pub fn is_connected_subset(&self, inside: &[bool]) -> bool {
        let verts: Vec<usize> = (0..self.n).filter(|&v| inside[v]).collect();
        if verts.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            if inside[u] && inside[v] {
                uf.union(u, v);
            }
        }
        let r = uf.find(verts[0]);
        verts.iter().all(|&v| uf.find(v) == r)
    }
}

pub fn is_two_edge_connected(g: &UndirectedMultigraph) -> bool {
    g.is_two_edge_connected()
}

/// Connected and bridge-free; parallel edges count separately.
pub fn bridgeless(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    // iterative dfs: (vertex, parent edge, next adjacency index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let (w, e) = adj[v][*idx];
            *idx += 1;
            if e == pe {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                stack.push((w, e, 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if low[v] > disc[p] {
                    return false;
                }
            }
        }
    }
    disc.iter().all(|&d| d != usize::MAX)
}

/// Bridge edge ids among edges whose endpoints are both `active`.
pub fn bridges(n: usize, edges: &[(usize, usize)], active: &[bool]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if active[u] && active[v] {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut out = Vec::new();
    for root in 0..n {
        if !active[root] || disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let (w, e) = adj[v][*idx];
                *idx += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.push(pe);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }
    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Cut family of a digraft.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Tight sources `Sᵗ`; every sink is implicitly tight.
    TightSources(VertexSet),
    /// Arbitrary out-shores whose dicuts must be crossed exactly once.
    General(Vec<VertexSet>),
}

/// Bipartite digraph with every arc from a source to a sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraft {
    n: usize,
    is_source: Vec<bool>,
    arcs: Vec<(usize, usize)>,
    family: Family,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

/// Which shore of `δ⁺(U)` gets shrunk to a single vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Contract the in-shore `V∖U` into a new sink; `U` survives.
    In,
    /// Contract the out-shore `U` into a new source; `V∖U` survives.
    Out,
}

#[derive(Clone, Debug)]
pub struct Contraction {
    pub digraft: Digraft,
    /// New arc id -> arc id in the contracted digraft's parent.
    pub arc_map: Vec<usize>,
    /// Parent vertex id -> new vertex id (`None` for shrunk vertices).
    pub vertex_map: Vec<Option<usize>>,
    /// Id of the new singleton.
    pub new_vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Dicut {
    pub shore: VertexSet,
    pub arcs: ArcSet,
}

impl Dicut {
    pub fn is_trivial(&self, n: usize) -> bool {
        self.shore.len() == 1 || self.shore.len() + 1 == n
    }
}

impl Digraft {
    pub fn new(n: usize, is_source: Vec<bool>, arcs: Vec<(usize, usize)>, family: Family) -> Result<Self> {
        if is_source.len() != n {
            return Err(Error::Input("source flags do not match vertex count".into()));
        }
        for (i, &(s, t)) in arcs.iter().enumerate() {
            if s >= n || t >= n || !is_source[s] || is_source[t] {
                return Err(Error::Input(format!("arc {i} does not go from a source to a sink")));
            }
        }
        match &family {
            Family::TightSources(st) => {
                for &s in st {
                    if s >= n || !is_source[s] {
                        return Err(Error::Input(format!("tight vertex {s} is not a source")));
                    }
                }
            }
            Family::General(f) => {
                for u in f {
                    if u.iter().any(|&v| v >= n) {
                        return Err(Error::Input("family member out of range".into()));
                    }
                }
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, &(s, t)) in arcs.iter().enumerate() {
            out_adj[s].push(i);
            in_adj[t].push(i);
        }
        let family = match family {
            Family::TightSources(mut st) => {
                st.sort_unstable();
                st.dedup();
                Family::TightSources(st)
            }
            Family::General(f) => Family::General(
                f.into_iter()
                    .map(|mut u| {
                        u.sort_unstable();
                        u.dedup();
                        u
                    })
                    .collect(),
            ),
        };
        Ok(Self { n, is_source, arcs, family, out_adj, in_adj })
    }

    /// Build from explicit source and sink lists that partition `0..n`.
    pub fn from_parts(
        sources: &[usize],
        sinks: &[usize],
        arcs: Vec<(usize, usize)>,
        family: Family,
    ) -> Result<Self> {
        let n = sources.len() + sinks.len();
        let mut seen = vec![false; n];
        let mut is_source = vec![false; n];
        for (&v, src) in sources.iter().map(|v| (v, true)).chain(sinks.iter().map(|v| (v, false))) {
            if v >= n || seen[v] {
                return Err(Error::Input("sources and sinks must partition 0..n".into()));
            }
            seen[v] = true;
            is_source[v] = src;
        }
        Self::new(n, is_source, arcs, family)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.arcs.len()
    }
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
    pub fn arc(&self, a: usize) -> (usize, usize) {
        self.arcs[a]
    }
    pub fn is_source(&self, v: usize) -> bool {
        self.is_source[v]
    }
    pub fn source_flags(&self) -> &[bool] {
        &self.is_source
    }
    pub fn sources(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.is_source[v]).collect()
    }
    pub fn sinks(&self) -> VertexSet {
        (0..self.n).filter(|&v| !self.is_source[v]).collect()
    }
    pub fn source_count(&self) -> usize {
        self.is_source.iter().filter(|&&b| b).count()
    }
    pub fn sink_count(&self) -> usize {
        self.n - self.source_count()
    }
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }
    /// Arcs incident to `v` (a vertex is either a source or a sink).
    pub fn incident(&self, v: usize) -> &[usize] {
        if self.is_source[v] {
            &self.out_adj[v]
        } else {
            &self.in_adj[v]
        }
    }
    pub fn degree(&self, v: usize) -> usize {
        self.incident(v).len()
    }
    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `Sᵗ` in TightSources form, empty otherwise.
    pub fn tight_sources(&self) -> &[usize] {
        match &self.family {
            Family::TightSources(st) => st,
            Family::General(_) => &[],
        }
    }

    pub fn tight_mask(&self) -> Vec<bool> {
        mask(self.n, self.tight_sources())
    }

    pub fn with_family(&self, family: Family) -> Result<Self> {
        Self::new(self.n, self.is_source.clone(), self.arcs.clone(), family)
    }

    pub fn with_tight_sources(&self, st: VertexSet) -> Self {
        self.with_family(Family::TightSources(st)).expect("tight sources must be sources")
    }

    /// Undirected copy, sources and sinks keep their ids.
    pub fn underlying(&self) -> UndirectedMultigraph {
        UndirectedMultigraph { n: self.n, edges: self.arcs.clone() }
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components_after_removal(&[]).map(|c| c.len() == 1).unwrap_or(false)
    }

    pub fn is_two_edge_connected(&self) -> bool {
        bridgeless(self.n, &self.arcs)
    }

    /// Out-neighbours of a source set.
    pub fn neighbourhood(&self, x: &[usize]) -> VertexSet {
        let mut m = vec![false; self.n];
        for &s in x {
            for &a in &self.out_adj[s] {
                m[self.arcs[a].1] = true;
            }
        }
        unmask(&m)
    }

    /// In-neighbours of a sink set.
    pub fn in_neighbourhood(&self, y: &[usize]) -> VertexSet {
        let mut m = vec![false; self.n];
        for &t in y {
            for &a in &self.in_adj[t] {
                m[self.arcs[a].0] = true;
            }
        }
        unmask(&m)
    }

    pub fn is_dicut(&self, u: &[usize]) -> bool {
        let inside = mask(self.n, u);
        self.is_dicut_mask(&inside)
    }

    pub fn is_dicut_mask(&self, inside: &[bool]) -> bool {
        let k = inside.iter().filter(|&&b| b).count();
        if k == 0 || k == self.n {
            return false;
        }
        self.arcs.iter().all(|&(s, t)| !(inside[t] && !inside[s]))
    }

    pub fn delta_out(&self, u: &[usize]) -> ArcSet {
        let inside = mask(self.n, u);
        self.delta_out_mask(&inside)
    }

    pub fn delta_out_mask(&self, inside: &[bool]) -> ArcSet {
        (0..self.arcs.len()).filter(|&a| inside[self.arcs[a].0] && !inside[self.arcs[a].1]).collect()
    }

    pub fn dicut(&self, u: &[usize]) -> Result<Dicut> {
        let mut shore = u.to_vec();
        shore.sort_unstable();
        shore.dedup();
        if !self.is_dicut(&shore) {
            return Err(Error::NotADicut);
        }
        let arcs = self.delta_out(&shore);
        if arcs.is_empty() {
            return Err(Error::NotADicut);
        }
        Ok(Dicut { shore, arcs })
    }

    /// Out-shore `Z ∪ N(Z)` of the dicut `δ⁻(Z ∪ N(Z))`, complemented: the dicut
    /// entering `Z ∪ N(Z)` has out-shore `V ∖ (Z ∪ N(Z))`.
    pub fn dicut_entering(&self, z: &[usize]) -> Result<Dicut> {
        let mut inside = vec![true; self.n];
        for &s in z {
            inside[s] = false;
        }
        for t in self.neighbourhood(z) {
            inside[t] = false;
        }
        self.dicut(&unmask(&inside))
    }

    /// Weak components of `D - x`, ordered by smallest vertex.
    pub fn components_after_removal(&self, x: &[usize]) -> Result<Vec<VertexSet>> {
        let removed = mask(self.n, x);
        if removed.iter().all(|&b| b) {
            return Err(Error::EmptyRemainder);
        }
        Ok(self.components_masked(&removed))
    }

    pub fn components_masked(&self, removed: &[bool]) -> Vec<VertexSet> {
        let mut uf = UnionFind::new(self.n);
        for &(s, t) in &self.arcs {
            if !removed[s] && !removed[t] {
                uf.union(s, t);
            }
        }
        let mut by_root: Vec<Option<usize>> = vec![None; self.n];
        let mut comps: Vec<VertexSet> = Vec::new();
        for v in 0..self.n {
            if removed[v] {
                continue;
            }
            let r = uf.find(v);
            match by_root[r] {
                Some(i) => comps[i].push(v),
                None => {
                    by_root[r] = Some(comps.len());
                    comps.push(vec![v]);
                }
            }
        }
        comps
    }

    pub fn component_count_masked(&self, removed: &[bool]) -> usize {
        let mut uf = UnionFind::new(self.n);
        let mut count = removed.iter().filter(|&&b| !b).count();
        for &(s, t) in &self.arcs {
            if !removed[s] && !removed[t] && uf.union(s, t) {
                count -= 1;
            }
        }
        count
    }

    /// Is `J` a dijoin, i.e. does it meet every dicut? Equivalent to strong
    /// connectivity of `D` plus the reversed copies of `J`.
    pub fn is_dijoin(&self, j: &[usize]) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut rev = vec![false; self.m()];
        for &a in j {
            rev[a] = true;
        }
        let reach = |forward: bool| -> bool {
            let mut seen = vec![false; self.n];
            seen[0] = true;
            let mut stack = vec![0usize];
            while let Some(v) = stack.pop() {
                for &a in self.out_adj[v].iter().chain(self.in_adj[v].iter()) {
                    let (s, t) = self.arcs[a];
                    // arc s->t always usable; t->s usable when a ∈ J
                    let (from, to) = if forward { (s, t) } else { (t, s) };
                    let w = if v == from {
                        Some(to)
                    } else if rev[a] {
                        Some(from)
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
            seen.iter().all(|&b| b)
        };
        reach(true) && reach(false)
    }

    /// Does `J` cross every family member exactly once and every tight vertex once?
    pub fn is_tight_dijoin(&self, j: &[usize]) -> bool {
        let mut deg = vec![0usize; self.n];
        for &a in j {
            let (s, t) = self.arcs[a];
            deg[s] += 1;
            deg[t] += 1;
        }
        match &self.family {
            Family::TightSources(st) => {
                if st.iter().any(|&s| deg[s] != 1) {
                    return false;
                }
                if (0..self.n).any(|v| !self.is_source[v] && deg[v] != 1) {
                    return false;
                }
            }
            Family::General(f) => {
                let jm = mask(self.m(), j);
                for u in f {
                    let inside = mask(self.n, u);
                    let c = self.delta_out_mask(&inside).into_iter().filter(|&a| jm[a]).count();
                    if c != 1 {
                        return false;
                    }
                }
            }
        }
        self.is_dijoin(j)
    }

    /// Induced sub-digraft on `keep` (TightSources form, `Sᵗ` restricted).
    /// Returns the digraft, the old->new vertex map and the new->old arc map.
    pub fn induced(&self, keep: &[bool]) -> (Digraft, Vec<Option<usize>>, Vec<usize>) {
        let mut vmap = vec![None; self.n];
        let mut flags = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                vmap[v] = Some(flags.len());
                flags.push(self.is_source[v]);
            }
        }
        let mut arcs = Vec::new();
        let mut amap = Vec::new();
        for (a, &(s, t)) in self.arcs.iter().enumerate() {
            if keep[s] && keep[t] {
                arcs.push((vmap[s].unwrap(), vmap[t].unwrap()));
                amap.push(a);
            }
        }
        let st = self.tight_sources().iter().filter_map(|&s| vmap[s]).collect();
        let d = Digraft::new(flags.len(), flags, arcs, Family::TightSources(st)).expect("induced digraft");
        (d, vmap, amap)
    }

    /// Shrink one shore of the dicut `δ⁺(U)`.
    pub fn contract(&self, u: &[usize], side: Side) -> Result<Contraction> {
        let inside = mask(self.n, u);
        if !self.is_dicut_mask(&inside) {
            return Err(Error::NotADicut);
        }
        let k = inside.iter().filter(|&&b| b).count();
        if k == 1 || k + 1 == self.n {
            return Err(Error::TrivialDicut);
        }
        if let Family::General(f) = &self.family {
            for w in f {
                if crosses(self.n, &inside, &mask(self.n, w)) {
                    return Err(Error::FamilyCrossing);
                }
            }
        }
        // vertices that vanish into the new singleton
        let shrunk: Vec<bool> = match side {
            Side::In => inside.iter().map(|&b| !b).collect(),
            Side::Out => inside.clone(),
        };
        let new_is_source = side == Side::Out;
        let mut vmap = vec![None; self.n];
        let mut flags = Vec::new();
        for v in 0..self.n {
            if !shrunk[v] {
                vmap[v] = Some(flags.len());
                flags.push(self.is_source[v]);
            }
        }
        let x = flags.len();
        flags.push(new_is_source);
        let mut arcs = Vec::new();
        let mut amap = Vec::new();
        for (a, &(s, t)) in self.arcs.iter().enumerate() {
            let ns = if shrunk[s] { None } else { vmap[s] };
            let nt = if shrunk[t] { None } else { vmap[t] };
            match (ns, nt) {
                (None, None) => {}
                (Some(ns), Some(nt)) => {
                    arcs.push((ns, nt));
                    amap.push(a);
                }
                (None, Some(nt)) => {
                    arcs.push((x, nt));
                    amap.push(a);
                }
                (Some(ns), None) => {
                    arcs.push((ns, x));
                    amap.push(a);
                }
            }
        }
        let family = match &self.family {
            Family::TightSources(st) => {
                let mut nst: Vec<usize> = st.iter().filter_map(|&s| vmap[s]).collect();
                if new_is_source {
                    nst.push(x);
                }
                Family::TightSources(nst)
            }
            Family::General(f) => {
                let mut out = Vec::new();
                for w in f.iter().chain(std::iter::once(&u.to_vec())) {
                    let wm = mask(self.n, w);
                    let meets = (0..self.n).any(|v| wm[v] && shrunk[v]);
                    let covers = (0..self.n).all(|v| !shrunk[v] || wm[v]);
                    let mut nw: Vec<usize> = w.iter().filter_map(|&v| vmap[v]).collect();
                    if !meets {
                        out.push(nw);
                    } else if covers {
                        nw.push(x);
                        out.push(nw);
                    }
                }
                Family::General(out)
            }
        };
        let digraft = Digraft::new(flags.len(), flags, arcs, family)?;
        Ok(Contraction { digraft, arc_map: amap, vertex_map: vmap, new_vertex: x })
    }
}

/// Do `U` and `W` cross in a ground set of size `n`?
pub fn crosses(n: usize, u: &[bool], w: &[bool]) -> bool {
    let (mut uw, mut wu, mut both, mut union) = (false, false, false, 0usize);
    for v in 0..n {
        match (u[v], w[v]) {
            (true, true) => both = true,
            (true, false) => uw = true,
            (false, true) => wu = true,
            _ => {}
        }
        if u[v] || w[v] {
            union += 1;
        }
    }
    uw && wu && both && union != n
}

/// Replace crossing members by their intersection and union until the family
/// is cross-free. Members are deduplicated and sorted.
pub fn uncross_family(d: &Digraft, family: &[VertexSet]) -> Result<Vec<VertexSet>> {
    let n = d.n();
    let mut fam: Vec<VertexSet> = Vec::new();
    for u in family {
        let mut u = u.clone();
        u.sort_unstable();
        u.dedup();
        if u.iter().any(|&v| v >= n) || !d.is_dicut(&u) {
            return Err(Error::NonDicutMember(u));
        }
        fam.push(u);
    }
    fam.sort();
    fam.dedup();
    loop {
        let masks: Vec<Vec<bool>> = fam.iter().map(|u| mask(n, u)).collect();
        let mut pair = None;
        'outer: for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                if crosses(n, &masks[i], &masks[j]) {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else { break };
        let cap: Vec<bool> = (0..n).map(|v| masks[i][v] && masks[j][v]).collect();
        let cup: Vec<bool> = (0..n).map(|v| masks[i][v] || masks[j][v]).collect();
        fam.remove(j);
        fam.remove(i);
        fam.push(unmask(&cap));
        fam.push(unmask(&cup));
        fam.sort();
        fam.dedup();
    }
    Ok(fam)
}

/// Is the family cross-free?
pub fn is_cross_free(n: usize, family: &[VertexSet]) -> bool {
    let masks: Vec<Vec<bool>> = family.iter().map(|u| mask(n, u)).collect();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if crosses(n, &masks[i], &masks[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn theta3() -> Digraft {
        // sources a=0, b=1; sinks 2,3,4
        let arcs = vec![(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)];
        Digraft::from_parts(&[0, 1], &[2, 3, 4], arcs, Family::TightSources(vec![])).unwrap()
    }

    #[test]
    fn two_edge_connectivity() {
        assert!(!UndirectedMultigraph::new(2, vec![(0, 1)]).unwrap().is_two_edge_connected());
        assert!(UndirectedMultigraph::new(2, vec![(0, 1); 3]).unwrap().is_two_edge_connected());
        assert!(UndirectedMultigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap().is_two_edge_connected());
        let bowtie_bridge = vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)];
        assert!(!UndirectedMultigraph::new(6, bowtie_bridge).unwrap().is_two_edge_connected());
        assert!(!UndirectedMultigraph::new(4, vec![(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap().is_two_edge_connected());
    }

    #[test]
    fn components() {
        let d = theta3();
        assert_eq!(d.components_after_removal(&[]).unwrap().len(), 1);
        assert_eq!(d.components_after_removal(&[0, 1]).unwrap(), vec![vec![2], vec![3], vec![4]]);
        assert_eq!(d.components_after_removal(&[0, 1, 2, 3, 4]), Err(Error::EmptyRemainder));
    }

    #[test]
    fn dicut_predicate() {
        let d = theta3();
        assert!(d.is_dicut(&[0, 1, 2, 3]));
        assert!(d.is_dicut(&[0]));
        assert!(!d.is_dicut(&[0, 2]));
    }

    #[test]
    fn contraction_shares_dicut_arcs() {
        // bowtie: triangles {0,1,2} and {2,3,4} sharing vertex 2, subdivided
        let g = UndirectedMultigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let d = crate::reduce::sco_digraft(&g);
        // out-shore: second triangle's vertices and its edge sinks
        let shore = vec![3, 4, 5 + 4];
        assert!(d.is_dicut(&shore));
        let c = d.delta_out(&shore);
        let d1 = d.contract(&shore, Side::In).unwrap();
        let d2 = d.contract(&shore, Side::Out).unwrap();
        assert_eq!(d1.arc_map.len() + d2.arc_map.len(), d.m() + c.len());
        let mut all: Vec<usize> = d1.arc_map.iter().chain(d2.arc_map.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all, (0..d.m()).collect::<Vec<_>>());
        let common: Vec<usize> = d1.arc_map.iter().copied().filter(|a| d2.arc_map.contains(a)).collect();
        assert_eq!(common, c);
        assert_eq!(d.contract(&[0], Side::In).unwrap_err(), Error::TrivialDicut);
        assert_eq!(d.contract(&[0, 5], Side::In).unwrap_err(), Error::NotADicut);
    }

    #[test]
    fn uncrossing_fixed_point_and_dedupe() {
        let d = theta3();
        let fam = vec![vec![0], vec![0], vec![0, 1, 2, 3]];
        assert_eq!(uncross_family(&d, &fam).unwrap(), vec![vec![0], vec![0, 1, 2, 3]]);
        assert!(matches!(uncross_family(&d, &[vec![0, 2]]), Err(Error::NonDicutMember(_))));
    }

    #[test]
    fn uncrossing_replaces_crossing_pair() {
        let d = theta3();
        // {0,2,3,... } shapes: U={0,1,2}? not dicut (1->... fine) check two crossing shores
        let u = vec![0, 1, 2];
        let w = vec![0, 1, 3];
        assert!(d.is_dicut(&u) && d.is_dicut(&w));
        let out = uncross_family(&d, &[u, w]).unwrap();
        assert_eq!(out, vec![vec![0, 1], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn dijoin_check() {
        let d = theta3();
        assert!(d.is_tight_dijoin(&[0, 3, 5]));
        assert!(!d.is_dijoin(&[0, 2, 4]));
    }
}
