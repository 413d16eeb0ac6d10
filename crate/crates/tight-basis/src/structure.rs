//! Barriers, 2-separations, tight dicuts, robustness and brick/brace
//! classification of TightSources-form digrafts.

use rand::seq::SliceRandom;
use rand::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{self, Direction, TightDijoinState};
use crate::flow::{FlowNetwork, INF};
use crate::graph::{mask, unmask, ArcSet, Dicut, Digraft, VertexSet};
use crate::sfm::{self, BarrierSide};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StructureWitness {
    /// `σ(V∖X) = |X|`; one dicut per component of `V∖X`.
    Barrier { side: WitnessSide, set: VertexSet, dicuts: Vec<Dicut> },
    /// `u ∈ Sᵗ`, `v ∈ T` whose removal disconnects the digraft.
    TwoSeparation { u: usize, v: usize, dicuts: Vec<Dicut> },
    /// `C = δ⁻(X ∪ N(X))` and a tight edge cover avoiding it.
    SeparatingDicut { set: VertexSet, dicut: Dicut, cover: ArcSet },
    /// A nontrivial tight dicut found by the flow search.
    TightDicut { dicut: Dicut },
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSide {
    Sinks,
    TightSources,
}

impl StructureWitness {
    pub fn is_none(&self) -> bool {
        matches!(self, StructureWitness::None)
    }

    /// First nontrivial dicut carried by the witness.
    pub fn nontrivial_dicut(&self, n: usize) -> Option<&Dicut> {
        match self {
            StructureWitness::Barrier { dicuts, .. } | StructureWitness::TwoSeparation { dicuts, .. } => {
                dicuts.iter().find(|c| !c.is_trivial(n))
            }
            StructureWitness::SeparatingDicut { dicut, .. } | StructureWitness::TightDicut { dicut } => {
                (!dicut.is_trivial(n)).then_some(dicut)
            }
            StructureWitness::None => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    Brick,
    Brace,
    NonBasic { witness: StructureWitness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Robustness {
    Robust,
    NotRobust { witness: StructureWitness },
}

fn barrier_witness(d: &Digraft, side: BarrierSide, x: VertexSet) -> Option<StructureWitness> {
    let n = d.n();
    let comps = d.components_after_removal(&x).ok()?;
    if comps.len() != x.len() {
        return None;
    }
    let mut dicuts = Vec::new();
    for u in comps {
        let shore = match side {
            BarrierSide::Sinks => u,
            BarrierSide::TightSources => {
                let m = mask(n, &u);
                (0..n).filter(|&v| !m[v]).collect()
            }
        };
        dicuts.push(d.dicut(&shore).ok()?);
    }
    if dicuts.iter().all(|c| c.is_trivial(n)) {
        return None;
    }
    let side = match side {
        BarrierSide::Sinks => WitnessSide::Sinks,
        BarrierSide::TightSources => WitnessSide::TightSources,
    };
    Some(StructureWitness::Barrier { side, set: x, dicuts })
}

fn barrier_on(d: &Digraft, side: BarrierSide) -> Option<StructureWitness> {
    let ground = match side {
        BarrierSide::Sinks => d.sinks(),
        BarrierSide::TightSources => d.tight_sources().to_vec(),
    };
    if ground.len() < 2 {
        return None;
    }
    // X = T can only be a barrier when |S| = |T|; then a third sink is pinned out
    let pin_out = side == BarrierSide::Sinks && d.source_count() >= d.sink_count();
    for i in 0..ground.len() {
        for j in i + 1..ground.len() {
            let pins_in = [ground[i], ground[j]];
            let outs: Vec<Vec<usize>> = if pin_out {
                ground.iter().filter(|&&w| w != ground[i] && w != ground[j]).map(|&w| vec![w]).collect()
            } else {
                vec![Vec::new()]
            };
            for out in outs {
                let Ok((x, val)) = sfm::min_barrier_deficiency(d, side, &pins_in, &out) else { continue };
                if val == 0 {
                    if let Some(w) = barrier_witness(d, side, x) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// A barrier inducing a nontrivial barrier dicut; sinks are searched first.
pub fn find_barrier_dicut(d: &Digraft) -> StructureWitness {
    barrier_on(d, BarrierSide::Sinks)
        .or_else(|| barrier_on(d, BarrierSide::TightSources))
        .unwrap_or(StructureWitness::None)
}

/// First pair `u ∈ Sᵗ`, `v ∈ T` (in id order) whose removal disconnects `D`.
pub fn find_two_separation(d: &Digraft) -> StructureWitness {
    for &u in d.tight_sources() {
        for v in d.sinks() {
            let Ok(comps) = d.components_after_removal(&[u, v]) else { continue };
            if comps.len() < 2 {
                continue;
            }
            let mut first = comps[0].clone();
            first.push(u);
            let mut rest: VertexSet = comps[1..].concat();
            rest.push(u);
            let (Ok(c1), Ok(c2)) = (d.dicut(&first), d.dicut(&rest)) else { continue };
            return StructureWitness::TwoSeparation { u, v, dicuts: vec![c1, c2] };
        }
    }
    StructureWitness::None
}

fn require_covered(d: &Digraft) -> Result<TightDijoinState<'_>> {
    TightDijoinState::new(d).map_err(|_| Error::NotCovered)
}

/// A nontrivial tight dicut, or `None` if the digraft is basic.
///
/// A dicut is tight iff its source side is a union of exchange components
/// and one tight dijoin crosses it once; the search is a pinned min cut.
pub fn find_tight_dicut(d: &Digraft) -> Result<Option<Dicut>> {
    find_tight_dicut_with(d, None)
}

/// As [`find_tight_dicut`], trying the pins in a shuffled order.
pub fn find_tight_dicut_with(d: &Digraft, rng: Option<&mut dyn RngCore>) -> Result<Option<Dicut>> {
    let st = require_covered(d)?;
    let n = d.n();
    if n < 4 {
        return Ok(None);
    }
    let j = mask(d.m(), &st.dijoin());
    let comps = st.exchange_components();
    let (src, snk) = (n, n + 1);
    let mut base = FlowNetwork::new(n + 2);
    for (a, &(s, t)) in d.arcs().iter().enumerate() {
        base.add_edge(t, s, INF);
        if j[a] {
            base.add_edge(s, t, 1);
        }
    }
    for k in &comps {
        for w in k.windows(2) {
            base.add_edge(w[0], w[1], INF);
            base.add_edge(w[1], w[0], INF);
        }
    }
    let mut sources = d.sources();
    let mut sinks = d.sinks();
    if let Some(rng) = rng {
        sources.shuffle(rng);
        sinks.shuffle(rng);
    }
    for &a in &sources {
        for &c in &sinks {
            let mut net = base.clone();
            net.add_edge(src, a, INF);
            net.add_edge(c, snk, INF);
            if net.max_flow_limited(src, snk, 2) != 1 {
                continue;
            }
            let reach = net.residual_reachable(src);
            let low: Vec<bool> = (0..n).map(|v| reach[v]).collect();
            let size = low.iter().filter(|&&b| b).count();
            if size >= 2 && size + 2 <= n {
                return Ok(Some(d.dicut(&unmask(&low))?));
            }
            if size != 1 {
                continue;
            }
            for v in 0..n {
                if low[v] || v == c {
                    continue;
                }
                let r = net.residual_reachable(v);
                if r[snk] {
                    continue;
                }
                let up: Vec<bool> = (0..n).map(|w| low[w] || r[w]).collect();
                let k = up.iter().filter(|&&b| b).count();
                if k >= 2 && k + 2 <= n {
                    return Ok(Some(d.dicut(&unmask(&up))?));
                }
            }
        }
    }
    Ok(None)
}

/// `StructureWitness::None` iff the digraft is basic; otherwise a 2-separation
/// or barrier witness.
pub fn is_basic(d: &Digraft) -> Result<StructureWitness> {
    let Some(dicut) = find_tight_dicut(d)? else {
        return Ok(StructureWitness::None);
    };
    let w = find_two_separation(d);
    if !w.is_none() {
        return Ok(w);
    }
    let w = find_barrier_dicut(d);
    if !w.is_none() {
        return Ok(w);
    }
    Ok(StructureWitness::TightDicut { dicut })
}

/// Does every tight dijoin cross `c` exactly once?
pub fn is_tight_dicut(d: &Digraft, c: &Dicut) -> Result<bool> {
    if !d.is_dicut(&c.shore) {
        return Err(Error::NotADicut);
    }
    let (_, hi) = feasibility::extreme_crossing_shore(d, &c.shore, Direction::Max).map_err(|_| Error::NotCovered)?;
    Ok(hi == 1)
}

/// Minimum of `|N(X)| - |X|` over `∅ ≠ X ⊊ S` with `X ⊄ Sᵗ`.
fn min_surplus_not_tight(d: &Digraft) -> Result<Option<(VertexSet, i64)>> {
    let tight = d.tight_mask();
    let sources = d.sources();
    let mut best: Option<(VertexSet, i64)> = None;
    for &x in sources.iter().filter(|&&s| !tight[s]) {
        for &y in sources.iter().filter(|&&s| s != x) {
            let (set, v) = sfm::min_neighborhood_surplus(d, &[x], &[y])?;
            if best.as_ref().is_none_or(|b| v < b.1) {
                best = Some((set, v));
            }
        }
    }
    Ok(best)
}

/// Robust, or a separating dicut with a tight edge cover that misses it.
pub fn robustness(d: &Digraft) -> Result<Robustness> {
    require_covered(d)?;
    let bound = d.sink_count() as i64 - d.source_count() as i64 + 1;
    let Some((x, v)) = min_surplus_not_tight(d)? else {
        return Ok(Robustness::Robust);
    };
    if v >= bound {
        return Ok(Robustness::Robust);
    }
    let n = d.n();
    let nx = d.neighbourhood(&x);
    let dicut = d.dicut_entering(&x)?;
    let xm = mask(n, &x);
    let nm = mask(n, &nx);
    let keep1: Vec<bool> = (0..n).map(|v| xm[v] || nm[v]).collect();
    let keep2: Vec<bool> = (0..n).map(|v| if d.is_source(v) { !xm[v] } else { !nm[v] }).collect();
    let mut cover = Vec::new();
    for keep in [keep1, keep2] {
        let (sub, _, amap) = d.induced(&keep);
        let j = feasibility::tight_edge_cover(&sub).map_err(|_| Error::NotCovered)?;
        cover.extend(j.into_iter().map(|a| amap[a]));
    }
    cover.sort_unstable();
    Ok(Robustness::NotRobust { witness: StructureWitness::SeparatingDicut { set: x, dicut, cover } })
}

pub fn classify(d: &Digraft) -> Result<Classification> {
    let w = is_basic(d)?;
    if !w.is_none() {
        return Ok(Classification::NonBasic { witness: w });
    }
    Ok(if d.source_count() < d.sink_count() { Classification::Brick } else { Classification::Brace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::reduce::sco_digraft;

    #[test]
    fn theta3_is_a_robust_brick() {
        let d = sco_digraft(&corpus::theta3());
        assert!(find_barrier_dicut(&d).is_none());
        assert!(find_two_separation(&d).is_none());
        assert_eq!(classify(&d).unwrap(), Classification::Brick);
        assert_eq!(robustness(&d).unwrap(), Robustness::Robust);
        // Sᵗ = {a}: removing a and one sink leaves b joined to two sinks
        assert!(find_two_separation(&d.with_tight_sources(vec![0])).is_none());
    }

    #[test]
    fn hexagon_is_not_basic() {
        let d = sco_digraft(&corpus::triangle());
        assert!(matches!(classify(&d).unwrap(), Classification::NonBasic { .. }));
    }

    #[test]
    fn bowtie_barrier_and_separating_dicut() {
        let d = sco_digraft(&corpus::bowtie());
        // sinks 5..10 are the edges; 6 = (1,2) and 7 = (2,0)
        match find_barrier_dicut(&d) {
            StructureWitness::Barrier { side: WitnessSide::Sinks, set, dicuts } => {
                assert_eq!(set.len(), dicuts.len());
                assert!(dicuts.iter().any(|c| !c.is_trivial(d.n())));
            }
            w => panic!("unexpected {w:?}"),
        }
        match robustness(&d).unwrap() {
            Robustness::NotRobust { witness: StructureWitness::SeparatingDicut { dicut, cover, .. } } => {
                let cm = mask(d.m(), &cover);
                assert!(dicut.arcs.iter().all(|&a| !cm[a]));
                let deg = crate::feasibility::DegreeSequence::of(&d, &cover);
                assert!(d.sources().iter().all(|&s| deg.0[s] >= 1));
                assert!(!d.is_dijoin(&cover));
            }
            r => panic!("unexpected {r:?}"),
        }
    }

    #[test]
    fn sink_dicut_is_tight() {
        let d = sco_digraft(&corpus::theta3());
        let t = d.sinks()[0];
        let shore: VertexSet = (0..d.n()).filter(|&v| v != t).collect();
        assert!(is_tight_dicut(&d, &d.dicut(&shore).unwrap()).unwrap());
        // δ(b) side: crossings 1 and 2
        assert!(!is_tight_dicut(&d, &d.dicut(&[1]).unwrap()).unwrap());
    }
}
