//! Orientations and strengthenings reduced to dijoins of digrafts.

use num_integer::Integer;
use serde::Serialize;

use crate::basis::{self, BasisReport};
use crate::error::{Error, Result};
use crate::graph::{mask, ArcSet, Digraft, Family, UndirectedMultigraph, VertexSet};

/// Digraft whose dijoins with one arc per edge-sink are the strongly connected
/// orientations of `g`. Source `v` keeps id `v`, edge `e` becomes sink `n + e`;
/// arc `2e` is `(v, t_e)` and arc `2e + 1` is `(u, t_e)` for `e = (u, v)`, so
/// arc ids coincide with bidirected arc ids (`2e` is `u -> v`).
pub fn sco_digraft(g: &UndirectedMultigraph) -> Digraft {
    let n = g.n;
    let mut flags = vec![true; n];
    flags.extend(std::iter::repeat_n(false, g.m()));
    let mut arcs = Vec::with_capacity(2 * g.m());
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        arcs.push((v, n + e));
        arcs.push((u, n + e));
    }
    Digraft::new(n + g.m(), flags, arcs, Family::TightSources(Vec::new())).expect("reduction digraft")
}

/// Arc-id correspondence between `E⁺ ∪ E⁻` and the reduction digraft.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationMap {
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl OrientationMap {
    fn identity(m: usize) -> Self {
        Self { forward: (0..m).collect(), backward: (0..m).collect() }
    }

    pub fn to_digraft(&self, o: &[usize]) -> ArcSet {
        sorted(o.iter().map(|&a| self.forward[a]))
    }

    pub fn to_orientation(&self, j: &[usize]) -> ArcSet {
        sorted(j.iter().map(|&a| self.backward[a]))
    }
}

fn sorted(it: impl Iterator<Item = usize>) -> ArcSet {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v
}

/// `U ∪ {t_e : both ends of e in U}` in the reduction digraft.
pub fn shore_image(g: &UndirectedMultigraph, u: &[usize]) -> VertexSet {
    let inside = mask(g.n, u);
    let mut out: VertexSet = u.to_vec();
    out.extend(g.edges.iter().enumerate().filter(|(_, &(a, b))| inside[a] && inside[b]).map(|(e, _)| g.n + e));
    out.sort_unstable();
    out
}

/// Sort, dedupe and range-check family members.
pub fn normalize_family(n: usize, family: &[VertexSet]) -> Result<Vec<VertexSet>> {
    let mut out: Vec<VertexSet> = Vec::with_capacity(family.len());
    for (i, u) in family.iter().enumerate() {
        let mut u = u.clone();
        u.sort_unstable();
        u.dedup();
        if u.iter().any(|&v| v >= n) {
            return Err(Error::Input(format!("family member {i} has a vertex out of range")));
        }
        if u.is_empty() || u.len() == n {
            return Err(Error::Input(format!("family member {i} is not a proper nonempty subset")));
        }
        if !out.contains(&u) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Reduction digraft of `(g, family)` with family `{ϕ(U)} ∪ {V'∖t_e}`.
pub fn sco_to_digraft(g: &UndirectedMultigraph, family: &[VertexSet]) -> Result<(Digraft, OrientationMap)> {
    if !g.is_two_edge_connected() {
        return Err(Error::NotTwoEdgeConnected);
    }
    let family = normalize_family(g.n, family)?;
    let d = sco_digraft(g);
    let map = OrientationMap::identity(g.arc_count());
    if family.is_empty() {
        return Ok((d, map));
    }
    let nv = d.n();
    let mut f: Vec<VertexSet> = family.iter().map(|u| shore_image(g, u)).collect();
    for t in g.n..nv {
        f.push((0..nv).filter(|&v| v != t).collect());
    }
    let d = d.with_family(Family::General(f))?;
    Ok((d, map))
}

/// Integral basis of tight SCOs of `(g, family)`, over bidirected arc ids.
pub fn sco_basis(g: &UndirectedMultigraph, family: &[VertexSet]) -> Result<BasisReport> {
    let (d, map) = sco_to_digraft(g, family)?;
    let mut r = basis::digraft_basis(&d)?;
    r.basis = r.basis.iter().map(|j| map.to_orientation(j)).collect();
    Ok(r)
}

/// Certify an SCO report against the enumerated tight SCOs.
pub fn certify_sco(r: &mut BasisReport, g: &UndirectedMultigraph, family: &[VertexSet], cap_edges: usize) -> Result<()> {
    let family = normalize_family(g.n, family)?;
    let scos = crate::oracle::enumerate_tight_scos(g, &family, cap_edges)?;
    let all_tight = r.basis.iter().all(|o| crate::oracle::is_tight_sco(g, &family, o));
    r.certify_with(&scos, g.arc_count(), all_tight);
    Ok(())
}

/// Directed multigraph; arc ids are list indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        // same range and loop checks as an undirected graph
        UndirectedMultigraph::new(n, arcs.clone())?;
        Ok(Self { n, arcs })
    }

    /// Underlying graph; bidirected arc `2i` is arc `i` itself.
    pub fn underlying(&self) -> UndirectedMultigraph {
        UndirectedMultigraph { n: self.n, edges: self.arcs.clone() }
    }

    pub fn in_degree_of_set(&self, u: &[usize]) -> usize {
        let inside = mask(self.n, u);
        self.arcs.iter().filter(|&&(x, y)| !inside[x] && inside[y]).count()
    }
}

/// Integer multipliers `y` with `Σ y_U (1 − |δ⁻(U)|) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCertificate {
    pub values: Vec<i64>,
    pub multipliers: Vec<i64>,
}

pub fn gcd_certificate(d: &Digraph, family: &[VertexSet]) -> Result<GcdCertificate> {
    let values: Vec<i64> = family.iter().map(|u| 1 - d.in_degree_of_set(u) as i64).collect();
    let mut g = 0i64;
    let mut multipliers = vec![0i64; values.len()];
    for (i, &v) in values.iter().enumerate() {
        let e = g.extended_gcd(&v);
        for y in &mut multipliers[..i] {
            *y *= e.x;
        }
        multipliers[i] = e.y;
        g = e.gcd;
    }
    if g.abs() != 1 {
        return Err(Error::GcdConditionFailed);
    }
    if g < 0 {
        multipliers.iter_mut().for_each(|y| *y = -*y);
    }
    Ok(GcdCertificate { values, multipliers })
}

/// Tight-strengthening basis with its gcd certificate.
#[derive(Clone, Debug, Serialize)]
pub struct ScrReport {
    #[serde(flatten)]
    pub report: BasisReport,
    pub gcd: GcdCertificate,
    /// The underlying SCO basis over `A ∪ A⁻¹`.
    pub sco_basis: Vec<ArcSet>,
}

/// Integral basis of tight strengthenings: complements of an SCO basis of the
/// bidirected doubling.
pub fn scr_basis(d: &Digraph, family: &[VertexSet]) -> Result<ScrReport> {
    let family = normalize_family(d.n, family)?;
    let gcd = gcd_certificate(d, &family)?;
    let g = d.underlying();
    let sco = sco_basis(&g, &family)?;
    let basis = sco.basis.iter().map(|o| complement(d.arcs.len(), o)).collect();
    let report = BasisReport { basis, ..sco.clone() };
    Ok(ScrReport { report, gcd, sco_basis: sco.basis })
}

/// `J = A ∖ O`: arcs `i` whose forward copy `2i` is not in `O`.
pub fn complement(m: usize, o: &[usize]) -> ArcSet {
    let om = mask(2 * m, o);
    (0..m).filter(|&i| !om[2 * i]).collect()
}

/// The scalar `k = Σ y_U (x(δ⁺(U)) − x(δ⁻(U)))` of a vector `x` in the lattice.
pub fn scr_scalar(d: &Digraph, family: &[VertexSet], cert: &GcdCertificate, x: &[i64]) -> i64 {
    family
        .iter()
        .zip(&cert.multipliers)
        .map(|(u, &y)| {
            let inside = mask(d.n, u);
            let net: i64 = d
                .arcs
                .iter()
                .zip(x)
                .map(|(&(a, b), &xv)| match (inside[a], inside[b]) {
                    (true, false) => xv,
                    (false, true) => -xv,
                    _ => 0,
                })
                .sum();
            y * net
        })
        .sum()
}

/// The bidirected vector `x'` with `x'(a⁻¹) = x(a)` and `x'(a) = k − x(a)`;
/// it has the same coordinates in the SCO basis as `x` in the SCR basis.
pub fn scr_lift(x: &[i64], k: i64) -> Vec<i64> {
    x.iter().flat_map(|&v| [k - v, v]).collect()
}

/// Certify an SCR report against the enumerated tight strengthenings.
pub fn certify_scr(r: &mut ScrReport, d: &Digraph, family: &[VertexSet], cap: usize) -> Result<()> {
    let family = normalize_family(d.n, family)?;
    let js = crate::oracle::enumerate_tight_strengthenings(d.n, &d.arcs, &family, cap)?;
    let all_tight = r.report.basis.iter().all(|j| crate::oracle::is_tight_strengthening(d.n, &d.arcs, &family, j));
    r.report.certify_with(&js, d.arcs.len(), all_tight);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn named_counts() {
        for (g, n) in [(corpus::theta3(), 4), (corpus::triangle(), 2), (corpus::four_cycle(), 2)] {
            let mut r = sco_basis(&g, &[]).unwrap();
            assert_eq!(r.basis.len(), n);
            certify_sco(&mut r, &g, &[], 16).unwrap();
            assert!(r.certified);
        }
    }

    #[test]
    fn triangle_basis_is_both_cycles() {
        let r = sco_basis(&corpus::triangle(), &[]).unwrap();
        let mut b = r.basis.clone();
        b.sort();
        assert_eq!(b, vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn gcd_multipliers() {
        // directed 4-cycle with arc 3 reversed: {0} has in-degree 0, {2} has 2
        let d = Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let c = gcd_certificate(&d, &[vec![0], vec![3]]).unwrap();
        assert_eq!(c.values, vec![1, -1]);
        let s: i64 = c.values.iter().zip(&c.multipliers).map(|(v, y)| v * y).sum();
        assert_eq!(s, 1);
        assert_eq!(gcd_certificate(&d, &[vec![1]]), Err(Error::GcdConditionFailed));
        assert_eq!(gcd_certificate(&d, &[]), Err(Error::GcdConditionFailed));
    }

    #[test]
    fn bad_family() {
        let g = corpus::triangle();
        assert!(matches!(sco_basis(&g, &[vec![0, 1, 2]]), Err(Error::Input(_))));
        assert!(matches!(sco_basis(&g, &[vec![5]]), Err(Error::Input(_))));
        let path = UndirectedMultigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(sco_basis(&path, &[]).err(), Some(Error::NotTwoEdgeConnected));
    }
}
