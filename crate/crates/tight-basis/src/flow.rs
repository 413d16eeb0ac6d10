//! Integral max-flow (Dinic) with a lower-bound wrapper.

pub const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    original: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        Self { n, edges: Vec::new(), adj: vec![Vec::new(); n], original: Vec::new() }
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Returns an edge handle usable with [`FlowNetwork::flow`].
    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap });
        self.edges.push(Edge { to: u, cap: 0 });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        self.original.push(cap);
        self.original.push(0);
        id
    }

    pub fn flow(&self, handle: usize) -> i64 {
        self.original[handle] - self.edges[handle].cap
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        self.max_flow_limited(s, t, INF)
    }

    /// Push at most `limit` units from `s` to `t`.
    pub fn max_flow_limited(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0i64;
        let mut level = vec![0i32; self.n];
        let mut it = vec![0usize; self.n];
        while total < limit && self.bfs(s, t, &mut level) {
            it.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, limit - total, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    fn bfs(&self, s: usize, t: usize, level: &mut [i32]) -> bool {
        level.iter_mut().for_each(|x| *x = -1);
        level[s] = 0;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &e in &self.adj[v] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && level[to] < 0 {
                    level[to] = level[v] + 1;
                    q.push_back(to);
                }
            }
        }
        level[t] >= 0
    }

    fn dfs(&mut self, s: usize, t: usize, limit: i64, level: &[i32], it: &mut [usize]) -> i64 {
        // iterative blocking-path search
        let mut path: Vec<usize> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let mut f = limit;
                for &e in &path {
                    f = f.min(self.edges[e].cap);
                }
                for &e in &path {
                    self.edges[e].cap -= f;
                    self.edges[e ^ 1].cap += f;
                }
                return f;
            }
            let mut advanced = false;
            while it[v] < self.adj[v].len() {
                let e = self.adj[v][it[v]];
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && level[to] == level[v] + 1 {
                    path.push(e);
                    v = to;
                    advanced = true;
                    break;
                }
                it[v] += 1;
            }
            if !advanced {
                if v == s {
                    return 0;
                }
                let e = path.pop().unwrap();
                v = self.edges[e ^ 1].to;
                it[v] += 1;
            }
        }
    }

    /// Vertices reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}

/// Feasibility of flows with lower bounds via the circulation transform.
#[derive(Clone, Debug)]
pub struct BoundedFlow {
    n: usize,
    arcs: Vec<(usize, usize, i64, i64)>,
}

impl BoundedFlow {
    pub fn new(n: usize) -> Self {
        Self { n, arcs: Vec::new() }
    }

    pub fn add_arc(&mut self, u: usize, v: usize, lo: i64, hi: i64) -> usize {
        self.arcs.push((u, v, lo, hi));
        self.arcs.len() - 1
    }

    /// A feasible `s`-`t` flow honouring all bounds (any value), as per-arc flows.
    pub fn feasible(&self, s: usize, t: usize) -> Option<Vec<i64>> {
        let mut net = FlowNetwork::new(self.n + 2);
        let (ss, tt) = (self.n, self.n + 1);
        let mut excess = vec![0i64; self.n];
        let mut handles = Vec::with_capacity(self.arcs.len());
        for &(u, v, lo, hi) in &self.arcs {
            if lo > hi {
                return None;
            }
            handles.push(net.add_edge(u, v, hi - lo));
            excess[v] += lo;
            excess[u] -= lo;
        }
        net.add_edge(t, s, INF);
        let mut need = 0;
        for v in 0..self.n {
            if excess[v] > 0 {
                net.add_edge(ss, v, excess[v]);
                need += excess[v];
            } else if excess[v] < 0 {
                net.add_edge(v, tt, -excess[v]);
            }
        }
        if net.max_flow(ss, tt) != need {
            return None;
        }
        Some(self.arcs.iter().zip(handles).map(|(&(_, _, lo, _), h)| lo + net.flow(h)).collect())
    }
}
