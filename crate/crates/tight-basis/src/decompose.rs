//! Tight-dicut decomposition, dijoin split/compose across a tight dicut,
//! basis gluing, and canonical forms of the resulting bricks and braces.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility;
use crate::graph::{mask, uncross_family, ArcSet, Contraction, Digraft, Family, Side, VertexSet};
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Brick,
    Brace,
    /// TightSources-form leaf that was not decomposed further.
    Reduced,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionNode {
    #[serde(skip)]
    pub digraft: Digraft,
    /// Arc id in the root digraft for every arc of this node.
    pub root_arcs: Vec<usize>,
    #[serde(flatten)]
    pub content: NodeContent,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum NodeContent {
    Leaf {
        kind: LeafKind,
    },
    /// `δ⁺(shore)` contracted both ways.
    Split {
        shore: VertexSet,
        dicut: ArcSet,
        /// `V∖U` shrunk to a sink; `U` survives.
        inner: Box<DecompositionNode>,
        /// `U` shrunk to a source; `V∖U` survives.
        outer: Box<DecompositionNode>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionTree {
    pub root: DecompositionNode,
}

/// Order in which nontrivial tight dicuts are picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Canonical,
    Random(u64),
}

impl DecompositionNode {
    fn leaf(digraft: Digraft, root_arcs: Vec<usize>, kind: LeafKind) -> Self {
        Self { digraft, root_arcs, content: NodeContent::Leaf { kind } }
    }

    pub fn leaves(&self) -> Vec<&DecompositionNode> {
        match &self.content {
            NodeContent::Leaf { .. } => vec![self],
            NodeContent::Split { inner, outer, .. } => {
                let mut v = inner.leaves();
                v.extend(outer.leaves());
                v
            }
        }
    }

    pub fn kind(&self) -> Option<LeafKind> {
        match &self.content {
            NodeContent::Leaf { kind } => Some(*kind),
            NodeContent::Split { .. } => None,
        }
    }
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<&DecompositionNode> {
        self.root.leaves()
    }

    pub fn brick_count(&self) -> usize {
        self.leaves().iter().filter(|l| l.kind() == Some(LeafKind::Brick)).count()
    }

    pub fn brace_count(&self) -> usize {
        self.leaves().iter().filter(|l| l.kind() == Some(LeafKind::Brace)).count()
    }

    /// Sorted canonical forms of the brick and brace leaves.
    pub fn canonical_multiset(&self) -> Vec<(LeafKind, CanonicalForm)> {
        let mut v: Vec<(LeafKind, CanonicalForm)> = self
            .leaves()
            .iter()
            .filter_map(|l| match l.kind() {
                Some(k @ (LeafKind::Brick | LeafKind::Brace)) => Some((k, canonical_form(&l.digraft))),
                _ => None,
            })
            .collect();
        v.sort_by(|a, b| (a.0 as u8, &a.1).cmp(&(b.0 as u8, &b.1)));
        v
    }
}

/// Both contractions of `δ⁺(U)`: `(inner, outer)` with `V∖U`, respectively
/// `U`, shrunk.
pub fn contractions(d: &Digraft, u: &[usize]) -> Result<(Contraction, Contraction)> {
    Ok((d.contract(u, Side::In)?, d.contract(u, Side::Out)?))
}

fn crossing_arcs(d: &Digraft, u: &[usize], j: &[usize]) -> Vec<usize> {
    let jm = mask(d.m(), j);
    d.delta_out(u).into_iter().filter(|&a| jm[a]).collect()
}

fn restrict(c: &Contraction, j: &[usize], m: usize) -> ArcSet {
    let jm = mask(m, j);
    (0..c.arc_map.len()).filter(|&a| jm[c.arc_map[a]]).collect()
}

/// `J ∩ A₁`, `J ∩ A₂` in the arc ids of the inner and outer contraction.
pub fn split_dijoin(d: &Digraft, u: &[usize], j: &[usize]) -> Result<(ArcSet, ArcSet)> {
    if crossing_arcs(d, u, j).len() != 1 {
        return Err(Error::CrossingNotOne);
    }
    let (inner, outer) = contractions(d, u)?;
    Ok((restrict(&inner, j, d.m()), restrict(&outer, j, d.m())))
}

/// Union of an inner and an outer tight dijoin meeting `δ⁺(U)` in the same arc.
pub fn compose_dijoin(d: &Digraft, u: &[usize], j1: &[usize], j2: &[usize]) -> Result<ArcSet> {
    let (inner, outer) = contractions(d, u)?;
    let p1: Vec<usize> = j1.iter().map(|&a| inner.arc_map[a]).collect();
    let p2: Vec<usize> = j2.iter().map(|&a| outer.arc_map[a]).collect();
    let (c1, c2) = (crossing_arcs(d, u, &p1), crossing_arcs(d, u, &p2));
    if c1 != c2 || c1.len() != 1 {
        return Err(Error::MismatchedCrossing);
    }
    let mut j = p1;
    j.extend(p2);
    j.sort_unstable();
    j.dedup();
    Ok(j)
}

/// Glue integral bases of the two contractions of the tight dicut `δ⁺(U)`.
///
/// With `R₁(c)`, `R₂(c)` the first basis element through `c ∈ C` on either
/// side, the maps `Jᵢ ↦ Jᵢ ∪ R₃₋ᵢ(c(Jᵢ))` are restrictions of linear maps
/// whose images sum to the full lattice, and `Φ₂(R₂(c)) = Φ₁(R₁(c))`; so
/// dropping every `R₂(c)` from the second family leaves a basis.
pub fn glue_bases(d: &Digraft, u: &[usize], b1: &[ArcSet], b2: &[ArcSet]) -> Result<Vec<ArcSet>> {
    let (inner, outer) = contractions(d, u)?;
    let cut = d.delta_out(u);
    let lift = |c: &Contraction, j: &ArcSet| -> ArcSet { j.iter().map(|&a| c.arc_map[a]).collect() };
    let l1: Vec<ArcSet> = b1.iter().map(|j| lift(&inner, j)).collect();
    let l2: Vec<ArcSet> = b2.iter().map(|j| lift(&outer, j)).collect();
    let cross = |j: &ArcSet| -> Result<usize> {
        let c = crossing_arcs(d, u, j);
        if c.len() == 1 {
            Ok(c[0])
        } else {
            Err(Error::CrossingNotOne)
        }
    };
    let rep = |l: &[ArcSet], c: usize| -> Result<usize> {
        l.iter().position(|j| j.contains(&c)).ok_or(Error::GlueVerificationFailed)
    };
    let mut r1 = Vec::with_capacity(cut.len());
    let mut r2 = Vec::with_capacity(cut.len());
    for &c in &cut {
        r1.push(rep(&l1, c)?);
        r2.push(rep(&l2, c)?);
    }
    let idx = |c: usize| cut.iter().position(|&x| x == c).unwrap();
    let join = |a: &ArcSet, b: &ArcSet| -> ArcSet {
        let mut j: ArcSet = a.iter().chain(b).copied().collect();
        j.sort_unstable();
        j.dedup();
        j
    };
    let mut out = Vec::with_capacity(l1.len() + l2.len() - cut.len());
    for j in &l1 {
        let c = cross(j)?;
        out.push(join(j, &l2[r2[idx(c)]]));
    }
    for (k, j) in l2.iter().enumerate() {
        let c = cross(j)?;
        if r2[idx(c)] == k {
            continue;
        }
        out.push(join(&l1[r1[idx(c)]], j));
    }
    Ok(out)
}

fn is_trivial_shore(n: usize, u: &[usize]) -> bool {
    u.len() <= 1 || u.len() + 1 >= n
}

/// General family with the sink shores `V∖t` implied by the digraft definition.
fn with_sink_shores(d: &Digraft, f: &[VertexSet]) -> Vec<VertexSet> {
    let n = d.n();
    let mut f = f.to_vec();
    for t in d.sinks() {
        f.push((0..n).filter(|&v| v != t).collect());
    }
    f
}

/// TightSources form of a General-form digraft whose members are all trivial.
fn to_tight_sources(d: &Digraft, f: &[VertexSet]) -> Result<Digraft> {
    let mut st = Vec::new();
    for u in f {
        if u.len() == 1 && d.is_source(u[0]) {
            st.push(u[0]);
        } else if !(u.len() + 1 == d.n() && (0..d.n()).any(|t| !d.is_source(t) && !u.contains(&t))) {
            return Err(Error::NonDicutMember(u.clone()));
        }
    }
    d.with_family(Family::TightSources(st))
}

fn child(c: &Contraction, parent_root: &[usize]) -> (Digraft, Vec<usize>) {
    (c.digraft.clone(), c.arc_map.iter().map(|&a| parent_root[a]).collect())
}

struct Decomposer {
    rng: Option<ChaCha8Rng>,
    /// Decompose TightSources leaves down to bricks and braces.
    full: bool,
}

impl Decomposer {
    fn node(&mut self, d: Digraft, root_arcs: Vec<usize>) -> Result<DecompositionNode> {
        let d = match d.family().clone() {
            Family::General(f) => {
                let f = uncross_family(&d, &with_sink_shores(&d, &f))?;
                let d = d.with_family(Family::General(f.clone()))?;
                if let Some(u) = f.iter().find(|u| !is_trivial_shore(d.n(), u)) {
                    return self.split(d, u.clone(), root_arcs);
                }
                to_tight_sources(&d, &f)?
            }
            Family::TightSources(_) => d,
        };
        if !self.full {
            return Ok(DecompositionNode::leaf(d, root_arcs, LeafKind::Reduced));
        }
        let rng = self.rng.as_mut().map(|r| r as &mut dyn RngCore);
        match structure::find_tight_dicut_with(&d, rng)? {
            Some(c) => self.split(d, c.shore, root_arcs),
            None => {
                let kind = if d.source_count() < d.sink_count() { LeafKind::Brick } else { LeafKind::Brace };
                Ok(DecompositionNode::leaf(d, root_arcs, kind))
            }
        }
    }

    fn split(&mut self, d: Digraft, shore: VertexSet, root_arcs: Vec<usize>) -> Result<DecompositionNode> {
        let (ci, co) = contractions(&d, &shore)?;
        let (di, ri) = child(&ci, &root_arcs);
        let (dout, ro) = child(&co, &root_arcs);
        let inner = Box::new(self.node(di, ri)?);
        let outer = Box::new(self.node(dout, ro)?);
        let dicut = d.delta_out(&shore);
        Ok(DecompositionNode { digraft: d, root_arcs, content: NodeContent::Split { shore, dicut, inner, outer } })
    }
}

/// Decompose along nontrivial tight dicuts until every leaf is a brick or a
/// brace. Nontrivial family members are contracted first.
pub fn tight_dicut_decomposition(d: &Digraft, order: Order) -> Result<DecompositionTree> {
    let rng = match order {
        Order::Canonical => None,
        Order::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut dec = Decomposer { rng, full: true };
    Ok(DecompositionTree { root: dec.node(d.clone(), (0..d.m()).collect())? })
}

/// Contract the nontrivial members of a General family; leaves are in
/// TightSources form.
pub fn reduce_to_tight_sources(d: &Digraft) -> Result<DecompositionTree> {
    let mut dec = Decomposer { rng: None, full: false };
    Ok(DecompositionTree { root: dec.node(d.clone(), (0..d.m()).collect())? })
}

/// Isomorphism invariant of a digraft up to arc multiplicities: sources,
/// sinks and tight sources keep their roles. Tight sources are the ones of
/// degree 1 in every tight dijoin when one exists, so a marker that changes
/// no tight dijoin changes no form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub colors: Vec<u8>,
    pub arcs: Vec<(u32, u32)>,
}

/// Canonical labelling by colour refinement plus individualisation.
pub fn canonical_form(d: &Digraft) -> CanonicalForm {
    let n = d.n();
    let tight = match feasibility::tight_sources(d) {
        Ok(st) => mask(n, &st),
        Err(_) => d.tight_mask(),
    };
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in d.arcs() {
        adj[s].push(t);
        adj[t].push(s);
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    let base: Vec<u8> = (0..n).map(|v| if !d.is_source(v) { 0 } else if tight[v] { 1 } else { 2 }).collect();
    let start: Vec<usize> = base.iter().map(|&c| c as usize).collect();
    let mut best: Option<CanonicalForm> = None;
    search(&adj, &base, normalise(&start), d, &mut best);
    best.unwrap_or(CanonicalForm { colors: Vec::new(), arcs: Vec::new() })
}

/// Rank colours densely, preserving their order.
fn normalise(c: &[usize]) -> Vec<usize> {
    let mut vals = c.to_vec();
    vals.sort_unstable();
    vals.dedup();
    c.iter().map(|x| vals.binary_search(x).unwrap()).collect()
}

fn refine(adj: &[Vec<usize>], colors: Vec<usize>) -> Vec<usize> {
    let mut c = colors;
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..c.len())
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&w| c[w]).collect();
                nb.sort_unstable();
                (c[v], nb)
            })
            .collect();
        let mut keys = sig.clone();
        keys.sort();
        keys.dedup();
        let next: Vec<usize> = sig.iter().map(|s| keys.binary_search(s).unwrap()).collect();
        let classes = keys.len();
        let before = {
            let mut v = c.clone();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        c = next;
        if classes == before {
            return c;
        }
    }
}

fn search(adj: &[Vec<usize>], base: &[u8], colors: Vec<usize>, d: &Digraft, best: &mut Option<CanonicalForm>) {
    let c = refine(adj, colors);
    let n = c.len();
    let mut count = vec![0usize; n];
    for &x in &c {
        count[x] += 1;
    }
    match (0..n).find(|&k| count[k] > 1) {
        None => {
            let mut colors = vec![0u8; n];
            for v in 0..n {
                colors[c[v]] = base[v];
            }
            let mut arcs: Vec<(u32, u32)> = d.arcs().iter().map(|&(s, t)| (c[s] as u32, c[t] as u32)).collect();
            arcs.sort_unstable();
            arcs.dedup();
            let f = CanonicalForm { colors, arcs };
            if best.as_ref().is_none_or(|b| f < *b) {
                *best = Some(f);
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| c[v] == cell) {
                // individualise v ahead of the rest of its cell
                let next: Vec<usize> = (0..n).map(|w| 2 * c[w] + usize::from(w != v || c[w] != cell)).collect();
                search(adj, base, normalise(&next), d, best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::reduce::sco_digraft;

    #[test]
    fn theta3_is_one_brick() {
        let d = sco_digraft(&corpus::theta3());
        let t = tight_dicut_decomposition(&d, Order::Canonical).unwrap();
        assert_eq!((t.brick_count(), t.brace_count()), (1, 0));
    }

    #[test]
    fn hexagon_is_all_braces() {
        let d = sco_digraft(&corpus::triangle());
        let t = tight_dicut_decomposition(&d, Order::Canonical).unwrap();
        assert_eq!(t.brick_count(), 0);
        assert!(t.brace_count() >= 1);
    }

    #[test]
    fn split_compose_round_trip() {
        let d = sco_digraft(&corpus::bowtie());
        let c = structure::find_tight_dicut(&d).unwrap().unwrap();
        let j = feasibility::find_tight_dijoin(&d).unwrap();
        let (j1, j2) = split_dijoin(&d, &c.shore, &j).unwrap();
        assert_eq!(compose_dijoin(&d, &c.shore, &j1, &j2).unwrap(), j);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = sco_digraft(&corpus::four_cycle());
        let g = crate::graph::UndirectedMultigraph::new(4, vec![(2, 1), (0, 3), (1, 0), (3, 2)]).unwrap();
        let b = sco_digraft(&g);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&sco_digraft(&corpus::k4())));
    }
}
