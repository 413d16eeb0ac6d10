//! Constrained submodular minimisation.
//!
//! Small ground sets are scanned exhaustively; larger ones go through the
//! Fujishige-Wolfe minimum-norm point algorithm.

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::graph::{mask, Digraft, VertexSet};

/// Exhaustive search is used up to this many free elements.
pub const BRUTE_FORCE_LIMIT: usize = 18;

/// Set function over `ground` with optional pins. The closure receives a
/// membership mask indexed like `ground`.
pub struct SubmodularOracle<'a> {
    pub ground: Vec<usize>,
    pub f: Box<dyn Fn(&[bool]) -> i64 + 'a>,
    pub required_in: Vec<usize>,
    pub required_out: Vec<usize>,
    pub nonempty: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Auto,
    BruteForce,
    MinNorm,
}

impl<'a> SubmodularOracle<'a> {
    pub fn new(ground: Vec<usize>, f: impl Fn(&[bool]) -> i64 + 'a) -> Self {
        Self { ground, f: Box::new(f), required_in: Vec::new(), required_out: Vec::new(), nonempty: false }
    }

    pub fn pins(mut self, required_in: &[usize], required_out: &[usize]) -> Self {
        self.required_in = required_in.to_vec();
        self.required_out = required_out.to_vec();
        self
    }

    pub fn nonempty(mut self) -> Self {
        self.nonempty = true;
        self
    }
}

/// Minimise the oracle, returning the minimiser (as ground labels, sorted) and its value.
pub fn minimize(o: &SubmodularOracle) -> Result<(Vec<usize>, i64)> {
    minimize_with(o, Backend::Auto)
}

pub fn minimize_with(o: &SubmodularOracle, backend: Backend) -> Result<(Vec<usize>, i64)> {
    let k = o.ground.len();
    let pos = |label: usize| o.ground.iter().position(|&g| g == label);
    let mut fixed_in = vec![false; k];
    let mut fixed_out = vec![false; k];
    for &v in &o.required_in {
        match pos(v) {
            Some(i) => fixed_in[i] = true,
            None => return Err(Error::EmptyConstrainedLattice),
        }
    }
    for &v in &o.required_out {
        if let Some(i) = pos(v) {
            if fixed_in[i] {
                return Err(Error::EmptyConstrainedLattice);
            }
            fixed_out[i] = true;
        }
    }
    let free: Vec<usize> = (0..k).filter(|&i| !fixed_in[i] && !fixed_out[i]).collect();
    let base_nonempty = fixed_in.iter().any(|&b| b);
    if o.nonempty && !base_nonempty && free.is_empty() {
        return Err(Error::EmptyConstrainedLattice);
    }
    let eval = |sel: &[bool]| -> i64 {
        let mut m = fixed_in.clone();
        for (j, &i) in free.iter().enumerate() {
            if sel[j] {
                m[i] = true;
            }
        }
        (o.f)(&m)
    };
    let to_labels = |sel: &[bool]| -> Vec<usize> {
        let mut out: Vec<usize> = (0..k).filter(|&i| fixed_in[i]).map(|i| o.ground[i]).collect();
        for (j, &i) in free.iter().enumerate() {
            if sel[j] {
                out.push(o.ground[i]);
            }
        }
        out.sort_unstable();
        out
    };
    let use_brute = match backend {
        Backend::BruteForce => true,
        Backend::MinNorm => false,
        Backend::Auto => free.len() <= BRUTE_FORCE_LIMIT,
    };
    if use_brute {
        let mut best: Option<(i64, Vec<usize>)> = None;
        let mut sel = vec![false; free.len()];
        for bits in 0u64..(1u64 << free.len()) {
            for (j, s) in sel.iter_mut().enumerate() {
                *s = bits >> j & 1 == 1;
            }
            if o.nonempty && !base_nonempty && bits == 0 {
                continue;
            }
            let val = eval(&sel);
            let better = match &best {
                None => true,
                Some((bv, bs)) => val < *bv || (val == *bv && to_labels(&sel) < *bs),
            };
            if better {
                best = Some((val, to_labels(&sel)));
            }
        }
        let (v, s) = best.ok_or(Error::EmptyConstrainedLattice)?;
        return Ok((s, v));
    }
    if o.nonempty && !base_nonempty {
        // pin each free element in turn
        let mut best: Option<(i64, Vec<usize>)> = None;
        for j in 0..free.len() {
            // elements before j are pinned out, j is pinned in
            let g = |sel: &[bool]| -> i64 {
                let mut s2 = vec![false; free.len()];
                s2[j] = true;
                s2[j + 1..].copy_from_slice(sel);
                eval(&s2)
            };
            let rest = free.len() - j - 1;
            let sel = min_norm_minimizer(rest, &|s: &[bool]| g(s));
            let mut full = vec![false; free.len()];
            full[j] = true;
            for (t, &b) in sel.iter().enumerate() {
                full[j + 1 + t] = b;
            }
            let val = eval(&full);
            let labels = to_labels(&full);
            if best.as_ref().is_none_or(|(bv, bs)| val < *bv || (val == *bv && labels < *bs)) {
                best = Some((val, labels));
            }
        }
        let (v, s) = best.ok_or(Error::EmptyConstrainedLattice)?;
        return Ok((s, v));
    }
    let sel = min_norm_minimizer(free.len(), &eval);
    Ok((to_labels(&sel), eval(&sel)))
}

/// Fujishige-Wolfe: minimum-norm point of the base polytope of the
/// normalised function, then the best level set of the point.
fn min_norm_minimizer(k: usize, f: &dyn Fn(&[bool]) -> i64) -> Vec<bool> {
    if k == 0 {
        return Vec::new();
    }
    let f0 = f(&vec![false; k]) as f64;
    let greedy = |w: &[f64]| -> Vec<f64> {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| w[a].partial_cmp(&w[b]).unwrap().then(a.cmp(&b)));
        let mut sel = vec![false; k];
        let mut prev = f0;
        let mut q = vec![0.0; k];
        for &i in &order {
            sel[i] = true;
            let cur = f(&sel) as f64;
            q[i] = cur - prev;
            prev = cur;
        }
        q
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let eps = 1e-9;
    let mut pts: Vec<Vec<f64>> = vec![greedy(&vec![0.0; k])];
    let mut lam: Vec<f64> = vec![1.0];
    let mut x = pts[0].clone();
    for _major in 0..10_000 {
        let q = greedy(&x);
        let xx = dot(&x, &x);
        if xx <= dot(&x, &q) + eps * (1.0 + xx) {
            break;
        }
        if pts.iter().any(|p| p.iter().zip(&q).all(|(a, b)| (a - b).abs() < 1e-12)) {
            break;
        }
        pts.push(q);
        lam.push(0.0);
        loop {
            let alpha = match affine_min_norm(&pts) {
                Some(a) => a,
                None => break,
            };
            if alpha.iter().all(|&a| a > eps) {
                lam = alpha;
                x = combine(&pts, &lam, k);
                break;
            }
            let mut theta = 1.0f64;
            for i in 0..pts.len() {
                if alpha[i] <= eps && lam[i] - alpha[i] > 0.0 {
                    theta = theta.min(lam[i] / (lam[i] - alpha[i]));
                }
            }
            for i in 0..pts.len() {
                lam[i] = theta * alpha[i] + (1.0 - theta) * lam[i];
            }
            let mut keep_pts = Vec::new();
            let mut keep_lam = Vec::new();
            for (p, &l) in pts.iter().zip(&lam) {
                if l > eps {
                    keep_pts.push(p.clone());
                    keep_lam.push(l);
                }
            }
            if keep_pts.is_empty() {
                break;
            }
            let s: f64 = keep_lam.iter().sum();
            pts = keep_pts;
            lam = keep_lam.into_iter().map(|l| l / s).collect();
            x = combine(&pts, &lam, k);
        }
    }
    // best level set of x
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap().then(a.cmp(&b)));
    let mut sel = vec![false; k];
    let mut best = (f(&sel), sel.clone());
    for &i in &order {
        sel[i] = true;
        let v = f(&sel);
        if v < best.0 {
            best = (v, sel.clone());
        }
    }
    best.1
}

fn combine(pts: &[Vec<f64>], lam: &[f64], k: usize) -> Vec<f64> {
    let mut x = vec![0.0; k];
    for (p, &l) in pts.iter().zip(lam) {
        for i in 0..k {
            x[i] += l * p[i];
        }
    }
    x
}

/// Affine combination coefficients of the min-norm point in the affine hull.
fn affine_min_norm(pts: &[Vec<f64>]) -> Option<Vec<f64>> {
    let r = pts.len();
    let n = r + 1;
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for i in 0..r {
        for j in 0..r {
            a[i][j] = pts[i].iter().zip(&pts[j]).map(|(x, y)| x * y).sum();
        }
        a[i][r] = 1.0;
        a[r][i] = 1.0;
    }
    a[r][n] = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        for i in 0..n {
            if i != col {
                let fct = a[i][col] / a[col][col];
                if fct != 0.0 {
                    for j in col..=n {
                        a[i][j] -= fct * a[col][j];
                    }
                }
            }
        }
    }
    Some((0..r).map(|i| a[i][n] / a[i][i]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarrierSide {
    Sinks,
    TightSources,
}

/// Minimise `|X| - σ(V∖X)` over nonempty pinned subsets `X` of the chosen side.
pub fn min_barrier_deficiency(
    d: &Digraft,
    side: BarrierSide,
    pins_in: &[usize],
    pins_out: &[usize],
) -> Result<(VertexSet, i64)> {
    min_barrier_deficiency_with(d, side, pins_in, pins_out, Backend::Auto)
}

pub fn min_barrier_deficiency_with(
    d: &Digraft,
    side: BarrierSide,
    pins_in: &[usize],
    pins_out: &[usize],
    backend: Backend,
) -> Result<(VertexSet, i64)> {
    let ground: Vec<usize> = match side {
        BarrierSide::Sinks => d.sinks(),
        BarrierSide::TightSources => d.tight_sources().to_vec(),
    };
    if ground.is_empty() {
        return Err(Error::EmptyConstrainedLattice);
    }
    let n = d.n();
    let g2 = ground.clone();
    let f = move |sel: &[bool]| -> i64 {
        let mut removed = vec![false; n];
        let mut cnt = 0i64;
        for (i, &v) in g2.iter().enumerate() {
            if sel[i] {
                removed[v] = true;
                cnt += 1;
            }
        }
        cnt - d.component_count_masked(&removed) as i64
    };
    let o = SubmodularOracle::new(ground, f).pins(pins_in, pins_out).nonempty();
    minimize_with(&o, backend)
}

/// Minimise `|N(X)| - |X|` over source sets with `pins_in ⊆ X` and
/// `X ∩ pins_out = ∅`, by a min cut.
pub fn min_neighborhood_surplus(d: &Digraft, pins_in: &[usize], pins_out: &[usize]) -> Result<(VertexSet, i64)> {
    let inm = mask(d.n(), pins_in);
    if pins_out.iter().any(|&v| inm[v]) {
        return Err(Error::EmptyConstrainedLattice);
    }
    if pins_in.iter().chain(pins_out).any(|&v| !d.is_source(v)) {
        return Err(Error::EmptyConstrainedLattice);
    }
    let n = d.n();
    let (src, snk) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    let outm = mask(n, pins_out);
    let mut s_count = 0i64;
    for v in 0..n {
        if d.is_source(v) {
            s_count += 1;
            net.add_edge(src, v, if inm[v] { INF } else { 1 });
            if outm[v] {
                net.add_edge(v, snk, INF);
            }
        } else {
            net.add_edge(v, snk, 1);
        }
    }
    for &(s, t) in d.arcs() {
        net.add_edge(s, t, INF);
    }
    let cut = net.max_flow(src, snk);
    if cut >= INF {
        return Err(Error::EmptyConstrainedLattice);
    }
    let reach = net.residual_reachable(src);
    let x: VertexSet = (0..n).filter(|&v| d.is_source(v) && reach[v]).collect();
    Ok((x, cut - s_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cut_fn(n: usize, edges: Vec<(usize, usize, i64)>, modular: Vec<i64>) -> impl Fn(&[bool]) -> i64 {
        move |s: &[bool]| {
            let mut v = 0;
            for &(a, b, w) in &edges {
                if s[a] != s[b] {
                    v += w;
                }
            }
            for i in 0..n {
                if s[i] {
                    v += modular[i];
                }
            }
            v
        }
    }

    #[test]
    fn cardinality() {
        let o = SubmodularOracle::new(vec![3, 5, 7], |s: &[bool]| s.iter().filter(|&&b| b).count() as i64)
            .pins(&[5], &[]);
        assert_eq!(minimize(&o).unwrap(), (vec![5], 1));
    }

    #[test]
    fn conflicting_pins() {
        let o = SubmodularOracle::new(vec![0, 1], |_s: &[bool]| 0).pins(&[0], &[0]);
        assert_eq!(minimize(&o), Err(Error::EmptyConstrainedLattice));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn min_norm_matches_brute(
            n in 2usize..9,
            raw in proptest::collection::vec((0usize..9, 0usize..9, 0i64..4), 0..20),
            modular in proptest::collection::vec(-5i64..5, 9),
            nonempty in any::<bool>(),
        ) {
            let edges: Vec<_> = raw.into_iter().filter(|&(a, b, _)| a < n && b < n && a != b).collect();
            let f = cut_fn(n, edges, modular[..n].to_vec());
            let mut o = SubmodularOracle::new((0..n).collect(), f);
            if nonempty { o = o.nonempty(); }
            let (_, vb) = minimize_with(&o, Backend::BruteForce).unwrap();
            let (sm, vm) = minimize_with(&o, Backend::MinNorm).unwrap();
            let m: Vec<bool> = (0..n).map(|i| sm.contains(&i)).collect();
            prop_assert_eq!(vb, vm);
            prop_assert_eq!((o.f)(&m), vm);
        }
    }
}
