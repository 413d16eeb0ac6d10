//! Desk-scale test corpus: small 2-edge-connected multigraphs, named
//! instances, family variants and random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{mask, Digraft, Family, UndirectedMultigraph, VertexSet};

#[derive(Clone, Debug)]
pub struct Named {
    pub name: &'static str,
    pub graph: UndirectedMultigraph,
}

fn g(n: usize, e: &[(usize, usize)]) -> UndirectedMultigraph {
    UndirectedMultigraph::new(n, e.to_vec()).expect("named instance")
}

pub fn theta3() -> UndirectedMultigraph {
    g(2, &[(0, 1), (0, 1), (0, 1)])
}

pub fn triangle() -> UndirectedMultigraph {
    g(3, &[(0, 1), (1, 2), (2, 0)])
}

pub fn four_cycle() -> UndirectedMultigraph {
    g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

pub fn k4() -> UndirectedMultigraph {
    g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Two triangles sharing vertex 2.
pub fn bowtie() -> UndirectedMultigraph {
    g(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
}

pub fn prism() -> UndirectedMultigraph {
    g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
}

pub fn k33() -> UndirectedMultigraph {
    let mut e = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            e.push((a, b));
        }
    }
    g(6, &e)
}

pub fn wheel4() -> UndirectedMultigraph {
    g(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])
}

pub fn named() -> Vec<Named> {
    vec![
        Named { name: "theta3", graph: theta3() },
        Named { name: "triangle", graph: triangle() },
        Named { name: "four_cycle", graph: four_cycle() },
        Named { name: "k4", graph: k4() },
        Named { name: "bowtie", graph: bowtie() },
        Named { name: "prism", graph: prism() },
        Named { name: "k33", graph: k33() },
        Named { name: "wheel4", graph: wheel4() },
    ]
}

fn digraft(ns: usize, nt: usize, arcs: &[(usize, usize)], tight: &[usize]) -> Digraft {
    let mut flags = vec![true; ns];
    flags.extend(std::iter::repeat_n(false, nt));
    Digraft::new(ns + nt, flags, arcs.to_vec(), Family::TightSources(tight.to_vec())).expect("named digraft")
}

/// Sources 0..5 (2 tight), sinks 5..11. `{6, 7, 8}` is a barrier whose
/// components give the dicuts with shores `{0, 1, 5}`, `{2}` and `{3, 4, 9, 10}`.
pub fn barrier_example() -> Digraft {
    let arcs = [
        (0, 5), (0, 6), (0, 7), (1, 5), (1, 7), (1, 8), (2, 6), (2, 8),
        (3, 6), (3, 8), (3, 9), (3, 10), (4, 7), (4, 9), (4, 10),
    ];
    digraft(5, 6, &arcs, &[2])
}

/// Sources 0..3 (1 tight), sinks 3..7. Removing `{1, 5}` separates
/// `{0, 3, 4}` from `{2, 6}`; the dicut shores are `{0, 1, 3, 4}` and `{1, 2, 6}`.
pub fn two_separation_example() -> Digraft {
    let arcs = [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (1, 6), (2, 5), (2, 6)];
    digraft(3, 4, &arcs, &[1])
}

/// Elementary digraft with `s₀ = 0`, tight sources 1 and 2, sinks 3..7, and
/// a 3-ear decomposition: `F = {0, 2}`, ears `[4, 5, 1]`, `[8, 7, 3]`, `[6]`
/// along the tight dijoin `{0, 2, 5, 7}`.
pub fn ear_example() -> Digraft {
    let arcs = [(0, 3), (0, 4), (0, 5), (0, 6), (1, 3), (1, 4), (1, 5), (2, 6), (2, 4)];
    digraft(3, 4, &arcs, &[1, 2])
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut p = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            p.push((u, v));
        }
    }
    p
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// All 2-edge-connected loopless multigraphs with `2 <= n <= max_n` vertices
/// and at most `max_m` edges, one per isomorphism class.
pub fn small_multigraphs(max_n: usize, max_m: usize) -> Vec<UndirectedMultigraph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let ps = pairs(n);
        let perms = permutations(n);
        let index = |u: usize, v: usize| -> usize {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            ps.iter().position(|&p| p == (a, b)).unwrap()
        };
        let perm_maps: Vec<Vec<usize>> =
            perms.iter().map(|p| ps.iter().map(|&(u, v)| index(p[u], p[v])).collect()).collect();
        let mut seen = std::collections::HashSet::new();
        let mut mult = vec![0usize; ps.len()];
        // enumerate multiplicity vectors with total <= max_m
        fn rec(
            i: usize,
            left: usize,
            mult: &mut Vec<usize>,
            n: usize,
            ps: &[(usize, usize)],
            perm_maps: &[Vec<usize>],
            seen: &mut std::collections::HashSet<Vec<usize>>,
            out: &mut Vec<UndirectedMultigraph>,
        ) {
            if i == mult.len() {
                let edges: Vec<(usize, usize)> =
                    ps.iter().zip(mult.iter()).flat_map(|(&p, &k)| std::iter::repeat_n(p, k)).collect();
                if edges.len() < n || !crate::graph::bridgeless(n, &edges) {
                    return;
                }
                let canon = perm_maps
                    .iter()
                    .map(|pm| {
                        let mut c = vec![0; mult.len()];
                        for (k, &m) in mult.iter().enumerate() {
                            c[pm[k]] = m;
                        }
                        c
                    })
                    .max()
                    .unwrap();
                if seen.insert(canon) {
                    out.push(UndirectedMultigraph { n, edges });
                }
                return;
            }
            for k in 0..=left {
                mult[i] = k;
                rec(i + 1, left - k, mult, n, ps, perm_maps, seen, out);
            }
            mult[i] = 0;
        }
        rec(0, max_m, &mut mult, n, &ps, &perm_maps, &mut seen, &mut out);
    }
    out
}

/// Family variants of a graph: empty, every bond shore avoiding vertex 0,
/// and a seeded random laminar family avoiding vertex 0.
pub fn family_variants(g: &UndirectedMultigraph, seed: u64) -> Vec<(&'static str, Vec<VertexSet>)> {
    let n = g.n;
    let mut bonds = Vec::new();
    for bits in 1u32..(1u32 << n) {
        if bits & 1 == 1 {
            continue;
        }
        let inside: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
        let outside: Vec<bool> = inside.iter().map(|&b| !b).collect();
        if g.is_connected_subset(&inside) && g.is_connected_subset(&outside) {
            bonds.push((0..n).filter(|&v| inside[v]).collect::<Vec<_>>());
        }
    }
    vec![("empty", Vec::new()), ("bonds", bonds), ("laminar", random_laminar(n, seed))]
}

/// Random laminar family of proper subsets of `1..n`.
pub fn random_laminar(n: usize, seed: u64) -> Vec<VertexSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fam: Vec<VertexSet> = Vec::new();
    let tries = rng.gen_range(1..=3);
    for _ in 0..tries {
        let mut verts: Vec<usize> = (1..n).collect();
        verts.shuffle(&mut rng);
        let k = rng.gen_range(1..=verts.len().max(1));
        let mut cand: Vec<usize> = verts[..k.min(verts.len())].to_vec();
        cand.sort_unstable();
        if cand.is_empty() {
            continue;
        }
        let cm = mask(n, &cand);
        let ok = fam.iter().all(|w| {
            let wm = mask(n, w);
            let inter = (0..n).any(|v| cm[v] && wm[v]);
            let c_in_w = (0..n).all(|v| !cm[v] || wm[v]);
            let w_in_c = (0..n).all(|v| !wm[v] || cm[v]);
            !inter || c_in_w || w_in_c
        });
        if ok && !fam.contains(&cand) {
            fam.push(cand);
        }
    }
    fam.sort();
    fam
}

/// Random 2-edge-connected multigraph: a Hamiltonian cycle plus random chords.
pub fn random_two_edge_connected(n: usize, m: usize, seed: u64) -> UndirectedMultigraph {
    assert!(n >= 2 && m >= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u, v));
        }
    }
    UndirectedMultigraph::new(n, edges).expect("random graph")
}

/// Random 2-edge-connected bipartite digraft with `ns` sources, `nt >= ns`
/// sinks and `max(m, 2 nt)` arcs, Sᵗ empty: an alternating cycle through all
/// sources, one 2-arc ear per remaining sink, then random arcs.
pub fn random_digraft(ns: usize, nt: usize, m: usize, seed: u64) -> Digraft {
    assert!(ns >= 1 && nt >= ns);
    let m = m.max(2 * nt);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut src: Vec<usize> = (0..ns).collect();
    let mut snk: Vec<usize> = (ns..ns + nt).collect();
    src.shuffle(&mut rng);
    snk.shuffle(&mut rng);
    let mut arcs = Vec::with_capacity(m);
    for i in 0..ns {
        arcs.push((src[i], snk[i]));
        arcs.push((src[(i + 1) % ns], snk[i]));
    }
    for &t in &snk[ns..] {
        let a = src[rng.gen_range(0..ns)];
        let b = src[rng.gen_range(0..ns)];
        arcs.push((a, t));
        arcs.push((b, t));
    }
    while arcs.len() < m {
        arcs.push((rng.gen_range(0..ns), ns + rng.gen_range(0..nt)));
    }
    arcs.shuffle(&mut rng);
    let mut flags = vec![true; ns];
    flags.extend(std::iter::repeat_n(false, nt));
    let d = Digraft::new(ns + nt, flags, arcs, Family::TightSources(Vec::new())).expect("random digraft");
    debug_assert!(d.is_two_edge_connected());
    d
}

/// Random red arc set over the bidirected arcs of `g`.
pub fn random_red(g: &UndirectedMultigraph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..g.arc_count()).filter(|_| rng.gen_bool(0.5)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_counts() {
        // n=2: k parallel edges for k=2..4
        let c = small_multigraphs(2, 4);
        assert_eq!(c.len(), 3);
        // n=3 with <=3 edges: only the triangle
        let c = small_multigraphs(3, 3);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn laminar_is_cross_free() {
        for seed in 0..50 {
            let f = random_laminar(5, seed);
            assert!(crate::graph::is_cross_free(5, &f));
        }
    }
}
