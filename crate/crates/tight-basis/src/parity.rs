//! Tight SCOs with a prescribed parity of red arcs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask, ArcSet, UndirectedMultigraph, VertexSet};
use crate::oracle;
use crate::reduce;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityQuery {
    pub graph: UndirectedMultigraph,
    pub family: Vec<VertexSet>,
    pub red: ArcSet,
    pub target: Parity,
}

impl ParityQuery {
    pub fn new(graph: UndirectedMultigraph, family: Vec<VertexSet>, red: ArcSet, target: Parity) -> Result<Self> {
        if let Some(&a) = red.iter().find(|&&a| a >= graph.arc_count()) {
            return Err(Error::Input(format!("red arc {a} out of range")));
        }
        let family = reduce::normalize_family(graph.n, &family)?;
        Ok(Self { graph, family, red, target })
    }

    pub fn red_count(&self, o: &[usize]) -> usize {
        let rm = mask(self.graph.arc_count(), &self.red);
        o.iter().filter(|&&a| rm[a]).count()
    }

    /// Direct check of a candidate answer.
    pub fn accepts(&self, o: &[usize]) -> bool {
        let odd = self.red_count(o) % 2 == 1;
        oracle::is_tight_sco(&self.graph, &self.family, o) && odd == (self.target == Parity::Odd)
    }
}

/// Smallest vertex `u` with neither `{u}` nor `V∖{u}` in the family.
pub fn free_vertex(n: usize, family: &[VertexSet]) -> Option<usize> {
    (0..n).find(|&u| !family.iter().any(|f| f.len() == 1 && f[0] == u || f.len() + 1 == n && !f.contains(&u)))
}

/// Gadget graph and family for the even case: a new vertex `w = n` joined
/// to `u` by edges `m` and `m + 1`, with `e⁺ = 2m` and `f⁺ = 2m + 2` red.
fn gadget(g: &UndirectedMultigraph, family: &[VertexSet], u: usize) -> (UndirectedMultigraph, Vec<VertexSet>) {
    let w = g.n;
    let mut edges = g.edges.clone();
    edges.push((u, w));
    edges.push((u, w));
    let fam = family
        .iter()
        .map(|f| {
            let mut f = f.clone();
            if f.contains(&u) {
                f.push(w);
            }
            f
        })
        .collect();
    (UndirectedMultigraph { n: g.n + 1, edges }, fam)
}

/// Gadget vertex: the smallest free vertex, else 0. The correspondence holds
/// for any choice since edges `uw` never cross a shifted family member.
pub fn gadget_vertex(n: usize, family: &[VertexSet]) -> usize {
    free_vertex(n, family).unwrap_or(0)
}

/// Odd query whose solutions project onto the even solutions of `q`.
pub fn even_to_odd_gadget(q: &ParityQuery) -> Result<ParityQuery> {
    if q.target != Parity::Even {
        return Err(Error::Input("gadget expects an even query".into()));
    }
    let (graph, family) = gadget(&q.graph, &q.family, gadget_vertex(q.graph.n, &q.family));
    let m = q.graph.m();
    let mut red = q.red.clone();
    red.extend([2 * m, 2 * m + 2]);
    Ok(ParityQuery { graph, family, red, target: Parity::Odd })
}

/// Drop the two gadget arcs from a gadget solution.
pub fn project(q: &ParityQuery, o: &[usize]) -> ArcSet {
    o.iter().copied().filter(|&a| a < q.graph.arc_count()).collect()
}

/// Caches the SCO bases of one `(graph, family)` pair so that many red sets
/// can be queried against it.
pub struct ParitySolver {
    graph: UndirectedMultigraph,
    family: Vec<VertexSet>,
    odd: Option<Result<Vec<ArcSet>>>,
    even: Option<Result<Vec<ArcSet>>>,
}

impl ParitySolver {
    pub fn new(graph: UndirectedMultigraph, family: Vec<VertexSet>) -> Result<Self> {
        if !graph.is_two_edge_connected() {
            return Err(Error::NotTwoEdgeConnected);
        }
        let family = reduce::normalize_family(graph.n, &family)?;
        Ok(Self { graph, family, odd: None, even: None })
    }

    fn basis(&mut self, target: Parity) -> Result<Vec<ArcSet>> {
        let slot = match target {
            Parity::Odd => &mut self.odd,
            Parity::Even => &mut self.even,
        };
        if slot.is_none() {
            *slot = Some(match target {
                Parity::Odd => reduce::sco_basis(&self.graph, &self.family).map(|r| r.basis),
                Parity::Even => {
                    let (g2, f2) = gadget(&self.graph, &self.family, gadget_vertex(self.graph.n, &self.family));
                    reduce::sco_basis(&g2, &f2).map(|r| r.basis)
                }
            });
        }
        slot.clone().expect("filled above")
    }

    /// A tight SCO with the requested red parity, `NoSolution` if none exists
    /// and `Infeasible` if there is no tight SCO at all. Some basis element
    /// has odd red count whenever any tight SCO does.
    pub fn solve(&mut self, red: &[usize], target: Parity) -> Result<ArcSet> {
        let m2 = self.graph.arc_count();
        if let Some(&a) = red.iter().find(|&&a| a >= m2) {
            return Err(Error::Input(format!("red arc {a} out of range")));
        }
        let basis = self.basis(target)?;
        let mut rm = mask(m2 + 4, red);
        if target == Parity::Even {
            rm[m2] = true;
            rm[m2 + 2] = true;
        }
        match basis.iter().find(|o| o.iter().filter(|&&a| rm[a]).count() % 2 == 1) {
            Some(o) => Ok(o.iter().copied().filter(|&a| a < m2).collect()),
            None => Err(Error::NoSolution),
        }
    }
}

/// One-shot parity query.
pub fn parity_sco(q: &ParityQuery) -> Result<ArcSet> {
    ParitySolver::new(q.graph.clone(), q.family.clone())?.solve(&q.red, q.target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q(g: UndirectedMultigraph, red: Vec<usize>, target: Parity) -> ParityQuery {
        ParityQuery::new(g, Vec::new(), red, target).unwrap()
    }

    #[test]
    fn theta_single_red_arc() {
        let query = q(corpus::theta3(), vec![0], Parity::Odd);
        let o = parity_sco(&query).unwrap();
        assert!(query.accepts(&o));
        // 3 of the 6 SCOs use arc 0
        let all = oracle::enumerate_tight_scos(&corpus::theta3(), &[], 16).unwrap();
        assert_eq!(all.iter().filter(|o| o.contains(&0)).count(), 3);
    }

    #[test]
    fn empty_red_set() {
        assert_eq!(parity_sco(&q(corpus::triangle(), vec![], Parity::Odd)), Err(Error::NoSolution));
        let even = q(corpus::triangle(), vec![], Parity::Even);
        assert!(even.accepts(&parity_sco(&even).unwrap()));
    }

    #[test]
    fn gadget_shape() {
        let g = even_to_odd_gadget(&q(corpus::triangle(), vec![], Parity::Even)).unwrap();
        assert_eq!((g.graph.n, g.graph.m()), (4, 5));
        assert_eq!(g.red, vec![6, 8]);
        assert_eq!(free_vertex(3, &[vec![0], vec![0, 2]]), Some(2));
    }

    #[test]
    fn bad_red_arc() {
        assert!(matches!(ParityQuery::new(corpus::triangle(), vec![], vec![6], Parity::Odd), Err(Error::Input(_))));
    }
}
