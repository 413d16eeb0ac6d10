//! Brute-force ground truth and exact lattice certification.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{mask, ArcSet, Digraft, Family, Side, UndirectedMultigraph, VertexSet};
use crate::lattice;

pub const DEFAULT_CAP_EDGES: usize = 16;
pub const DEFAULT_CAP_ARCS: usize = 24;

/// Is the orientation (one arc id per edge) strongly connected?
pub fn is_strongly_connected(n: usize, arcs: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for &(u, v) in arcs {
        fwd[u].push(v);
        bwd[v].push(u);
    }
    let all = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut st = vec![0];
        while let Some(v) = st.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    st.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    };
    all(&fwd) && all(&bwd)
}

/// Is the bidirected arc set `o` a tight SCO of `(g, family)`?
pub fn is_tight_sco(g: &UndirectedMultigraph, family: &[VertexSet], o: &[usize]) -> bool {
    if o.len() != g.m() {
        return false;
    }
    let mut seen = vec![false; g.m()];
    for &a in o {
        if seen[a / 2] {
            return false;
        }
        seen[a / 2] = true;
    }
    let arcs: Vec<(usize, usize)> = o.iter().map(|&a| g.arc(a)).collect();
    if !is_strongly_connected(g.n, &arcs) {
        return false;
    }
    family.iter().all(|u| {
        let inside = mask(g.n, u);
        arcs.iter().filter(|&&(x, y)| !inside[x] && inside[y]).count() == 1
    })
}

/// All tight SCOs, as sorted bidirected arc-id sets ordered by bitmask.
pub fn enumerate_tight_scos(g: &UndirectedMultigraph, family: &[VertexSet], cap: usize) -> Result<Vec<ArcSet>> {
    let m = g.m();
    if m > cap || m > 30 {
        return Err(Error::TooLarge { size: m, cap });
    }
    let masks: Vec<Vec<bool>> = family.iter().map(|u| mask(g.n, u)).collect();
    let mut out = Vec::new();
    let mut arcs = vec![(0, 0); m];
    'outer: for bits in 0u64..(1u64 << m) {
        for e in 0..m {
            arcs[e] = g.arc(2 * e + (bits >> e & 1) as usize);
        }
        for inside in &masks {
            if arcs.iter().filter(|&&(x, y)| !inside[x] && inside[y]).count() != 1 {
                continue 'outer;
            }
        }
        if is_strongly_connected(g.n, &arcs) {
            out.push((0..m).map(|e| 2 * e + (bits >> e & 1) as usize).collect::<Vec<_>>());
        }
    }
    out.sort_by_key(|o| bitmask(o));
    Ok(out)
}

/// Is flipping `j` a tight strengthening of the digraph `(n, arcs)`?
pub fn is_tight_strengthening(n: usize, arcs: &[(usize, usize)], family: &[VertexSet], j: &[usize]) -> bool {
    if j.iter().any(|&a| a >= arcs.len()) {
        return false;
    }
    let jm = mask(arcs.len(), j);
    let flipped: Vec<(usize, usize)> =
        arcs.iter().enumerate().map(|(i, &(x, y))| if jm[i] { (y, x) } else { (x, y) }).collect();
    is_strongly_connected(n, &flipped)
        && family.iter().all(|u| {
            let inside = mask(n, u);
            flipped.iter().filter(|&&(x, y)| !inside[x] && inside[y]).count() == 1
        })
}

/// All tight strengthenings over all `2^|A|` arc subsets, ordered by bitmask.
pub fn enumerate_tight_strengthenings(
    n: usize,
    arcs: &[(usize, usize)],
    family: &[VertexSet],
    cap: usize,
) -> Result<Vec<ArcSet>> {
    let m = arcs.len();
    if m > cap || m > 30 {
        return Err(Error::TooLarge { size: m, cap });
    }
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << m) {
        let j: Vec<usize> = (0..m).filter(|&i| bits >> i & 1 == 1).collect();
        if is_tight_strengthening(n, arcs, family, &j) {
            out.push(j);
        }
    }
    Ok(out)
}

pub fn bitmask(set: &[usize]) -> u128 {
    set.iter().fold(0u128, |acc, &a| acc | (1u128 << a))
}

/// All tight dijoins, ordered by bitmask.
pub fn enumerate_tight_dijoins(d: &Digraft, cap: usize) -> Result<Vec<ArcSet>> {
    if d.m() > cap || d.m() > 100 {
        return Err(Error::TooLarge { size: d.m(), cap });
    }
    // sinks whose degree is forced to one
    let n = d.n();
    let forced: Vec<bool> = match d.family() {
        Family::TightSources(_) => (0..n).map(|v| !d.is_source(v)).collect(),
        Family::General(f) => {
            let mut fm = vec![false; n];
            for u in f {
                if u.len() + 1 == n {
                    let t = (0..n).find(|v| !u.contains(v)).unwrap();
                    if !d.is_source(t) {
                        fm[t] = true;
                    }
                }
            }
            fm
        }
    };
    // per-sink options: one arc if forced, any nonempty subset otherwise
    let sinks = d.sinks();
    let mut options: Vec<Vec<Vec<usize>>> = Vec::new();
    for &t in &sinks {
        let inc = d.in_arcs(t);
        if forced[t] {
            options.push(inc.iter().map(|&a| vec![a]).collect());
        } else {
            let k = inc.len();
            let mut opts = Vec::new();
            for bits in 1u64..(1u64 << k) {
                opts.push((0..k).filter(|&i| bits >> i & 1 == 1).map(|i| inc[i]).collect());
            }
            options.push(opts);
        }
        if options.last().unwrap().is_empty() {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; sinks.len()];
    loop {
        let mut j: Vec<usize> = Vec::new();
        for (i, opts) in options.iter().enumerate() {
            j.extend_from_slice(&opts[idx[i]]);
        }
        j.sort_unstable();
        if d.is_tight_dijoin(&j) {
            out.push(j);
        }
        let mut p = 0;
        loop {
            if p == idx.len() {
                out.sort_by_key(|o| bitmask(o));
                return Ok(out);
            }
            idx[p] += 1;
            if idx[p] < options[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Exact lattice certificate for a candidate basis.
#[derive(Clone, Debug)]
pub struct LatticeCertificate {
    pub basis_rank: usize,
    pub enumerated_rank: usize,
    pub independent: bool,
    pub invariant_factors: Vec<BigInt>,
    pub span_equal: bool,
    /// Integer coefficients per enumerated vector (`None` if not integral).
    pub coefficients: Vec<Option<Vec<BigInt>>>,
    pub all_integral: bool,
    pub basis_members_enumerated: bool,
    pub certified: bool,
}

/// Certify `basis` against `enumerated` (vectors over `m` coordinates).
pub fn verify_integral_basis(basis: &[Vec<i64>], enumerated: &[Vec<i64>], m: usize) -> LatticeCertificate {
    let b = lattice::columns(basis, m);
    let e = lattice::columns(enumerated, m);
    let basis_rank = if basis.is_empty() { 0 } else { lattice::rank(&b) };
    let enumerated_rank = if enumerated.is_empty() { 0 } else { lattice::rank(&e) };
    let smith = if basis.is_empty() { None } else { Some(lattice::smith(&b)) };
    let invariant_factors = smith.as_ref().map(|s| s.diag.clone()).unwrap_or_default();
    let coefficients: Vec<Option<Vec<BigInt>>> = enumerated
        .iter()
        .map(|x| {
            let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            match &smith {
                Some(s) => s.solve(&xb),
                None => {
                    if x.iter().all(|&v| v == 0) {
                        Some(Vec::new())
                    } else {
                        None
                    }
                }
            }
        })
        .collect();
    let all_integral = coefficients.iter().all(|c| c.is_some());
    let basis_members_enumerated = basis.iter().all(|v| enumerated.contains(v));
    let independent = basis_rank == basis.len();
    let span_equal = basis_rank == enumerated_rank && all_integral;
    let unit = invariant_factors.iter().all(|f| f.is_one());
    let certified = unit && basis_rank == enumerated_rank && all_integral;
    LatticeCertificate {
        basis_rank,
        enumerated_rank,
        independent,
        invariant_factors,
        span_equal,
        coefficients,
        all_integral,
        basis_members_enumerated,
        certified,
    }
}

/// Certify arc-set bases.
pub fn verify_arc_sets(basis: &[ArcSet], enumerated: &[ArcSet], m: usize) -> LatticeCertificate {
    let bv: Vec<Vec<i64>> = basis.iter().map(|j| crate::graph::indicator(j, m)).collect();
    let ev: Vec<Vec<i64>> = enumerated.iter().map(|j| crate::graph::indicator(j, m)).collect();
    verify_integral_basis(&bv, &ev, m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Brick,
    Brace,
    NonBasic,
}

/// Ground-truth structure of a TightSources-form digraft.
#[derive(Clone, Debug)]
pub struct BruteStructure {
    pub covered: bool,
    pub tight_dijoins: Vec<ArcSet>,
    /// Out-shores of nontrivial tight dicuts.
    pub tight_dicuts: Vec<VertexSet>,
    /// `V̄ᵗ`: sinks plus sources of degree one in every tight dijoin.
    pub tight_nodes: VertexSet,
    pub robust: bool,
    pub kind: Kind,
    pub bricks: usize,
    pub braces: usize,
}

/// All dicut out-shores (requires `n <= 24`).
pub fn all_dicut_shores(d: &Digraft) -> Vec<VertexSet> {
    let n = d.n();
    assert!(n <= 24, "too many vertices for dicut enumeration");
    let mut out = Vec::new();
    let mut inside = vec![false; n];
    for bits in 1u32..((1u32 << n) - 1) {
        for (v, slot) in inside.iter_mut().enumerate() {
            *slot = bits >> v & 1 == 1;
        }
        if d.is_dicut_mask(&inside) {
            out.push((0..n).filter(|&v| inside[v]).collect());
        }
    }
    out
}

/// Tight edge covers by brute force.
pub fn enumerate_tight_edge_covers(d: &Digraft) -> Vec<ArcSet> {
    let n = d.n();
    let tight = d.tight_mask();
    let sinks = d.sinks();
    let mut out = Vec::new();
    if sinks.iter().any(|&t| d.in_arcs(t).is_empty()) {
        return out;
    }
    let mut idx = vec![0usize; sinks.len()];
    loop {
        let j: Vec<usize> = sinks.iter().zip(&idx).map(|(&t, &i)| d.in_arcs(t)[i]).collect();
        let mut deg = vec![0usize; n];
        for &a in &j {
            deg[d.arc(a).0] += 1;
        }
        if (0..n).filter(|&v| d.is_source(v)).all(|s| deg[s] >= 1 && (!tight[s] || deg[s] == 1)) {
            let mut j = j;
            j.sort_unstable();
            out.push(j);
        }
        let mut p = 0;
        loop {
            if p == idx.len() {
                return out;
            }
            idx[p] += 1;
            if idx[p] < d.in_arcs(sinks[p]).len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

pub fn brute_structure(d: &Digraft, cap: usize) -> Result<BruteStructure> {
    let js = enumerate_tight_dijoins(d, cap)?;
    let n = d.n();
    if js.is_empty() {
        return Ok(BruteStructure {
            covered: false,
            tight_dijoins: js,
            tight_dicuts: Vec::new(),
            tight_nodes: Vec::new(),
            robust: false,
            kind: Kind::NonBasic,
            bricks: 0,
            braces: 0,
        });
    }
    let tight_dicuts = brute_tight_dicuts(d, &js);
    let mut tight_nodes = Vec::new();
    for v in 0..n {
        if !d.is_source(v) || js.iter().all(|j| j.iter().filter(|&&a| d.arc(a).0 == v).count() == 1) {
            tight_nodes.push(v);
        }
    }
    let covers = enumerate_tight_edge_covers(d);
    let robust = covers.iter().all(|c| d.is_dijoin(c));
    let kind = if !tight_dicuts.is_empty() {
        Kind::NonBasic
    } else if d.source_count() == d.sink_count() {
        Kind::Brace
    } else {
        Kind::Brick
    };
    let leaves = brute_decompose(d, cap)?;
    let bricks = leaves.iter().filter(|(_, k)| *k == Kind::Brick).count();
    let braces = leaves.iter().filter(|(_, k)| *k == Kind::Brace).count();
    Ok(BruteStructure { covered: true, tight_dijoins: js, tight_dicuts, tight_nodes, robust, kind, bricks, braces })
}

/// Out-shores of nontrivial dicuts crossed exactly once by every listed dijoin.
pub fn brute_tight_dicuts(d: &Digraft, js: &[ArcSet]) -> Vec<VertexSet> {
    let n = d.n();
    let jm: Vec<Vec<bool>> = js.iter().map(|j| mask(d.m(), j)).collect();
    all_dicut_shores(d)
        .into_iter()
        .filter(|u| u.len() > 1 && u.len() + 1 < n)
        .filter(|u| {
            let c = d.delta_out(u);
            jm.iter().all(|m| c.iter().filter(|&&a| m[a]).count() == 1)
        })
        .collect()
}

/// Leaves of an exhaustive tight-dicut decomposition, contracting the
/// first nontrivial tight dicut found at every step. Nontrivial members of a
/// (cross-free) general family go first so that no contraction crosses one.
pub fn brute_decompose(d: &Digraft, cap: usize) -> Result<Vec<(Digraft, Kind)>> {
    let js = enumerate_tight_dijoins(d, cap)?;
    let n = d.n();
    let mut cuts = brute_tight_dicuts(d, &js);
    if let Family::General(f) = d.family() {
        let mut members: Vec<VertexSet> = f.iter().filter(|u| u.len() > 1 && u.len() + 1 < n).cloned().collect();
        members.sort();
        if !members.is_empty() {
            cuts = members;
        }
    }
    match cuts.first() {
        None => {
            let k = if d.source_count() == d.sink_count() { Kind::Brace } else { Kind::Brick };
            Ok(vec![(d.clone(), k)])
        }
        Some(u) => {
            let mut out = brute_decompose(&d.contract(u, Side::In)?.digraft, cap)?;
            out.extend(brute_decompose(&d.contract(u, Side::Out)?.digraft, cap)?);
            Ok(out)
        }
    }
}
