use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tight_basis::graph::{mask, uncross_family, Family, UndirectedMultigraph};
use tight_basis::reduce::{self, Digraph};
use tight_basis::{corpus, oracle, Error};

#[test]
fn orientation_map_is_a_bijection_on_scos() {
    for g in corpus::small_multigraphs(4, 7) {
        let (d, map) = reduce::sco_to_digraft(&g, &[]).unwrap();
        for bits in 0u32..(1 << g.m()) {
            let o: Vec<usize> = (0..g.m()).map(|e| 2 * e + (bits >> e & 1) as usize).collect();
            let j = map.to_digraft(&o);
            assert_eq!(map.to_orientation(&j), o);
            let strong = oracle::is_tight_sco(&g, &[], &o);
            assert_eq!(strong, d.is_tight_dijoin(&j), "{g:?} {o:?}");
        }
    }
}

#[test]
fn shore_images_are_dicuts() {
    let g = corpus::bowtie();
    let (d, _) = reduce::sco_to_digraft(&g, &[]).unwrap();
    for bits in 1u32..(1 << g.n) - 1 {
        let u: Vec<usize> = (0..g.n).filter(|&v| bits >> v & 1 == 1).collect();
        let img = reduce::shore_image(&g, &u);
        assert!(d.is_dicut(&img));
        assert_eq!(d.delta_out(&img).len(), g.cut_size(&mask(g.n, &u)));
    }
}

#[test]
fn sco_bases_are_certified() {
    let mut graphs: Vec<UndirectedMultigraph> = corpus::small_multigraphs(5, 8);
    graphs.extend(corpus::named().into_iter().map(|n| n.graph).filter(|g| g.m() <= 9));
    let (mut feasible, mut infeasible) = (0, 0);
    for (i, g) in graphs.iter().enumerate() {
        for (name, f) in corpus::family_variants(g, i as u64) {
            let scos = oracle::enumerate_tight_scos(g, &f, 16).unwrap();
            let mut r = match reduce::sco_basis(g, &f) {
                Err(Error::Infeasible) => {
                    assert!(scos.is_empty(), "{g:?} {name}");
                    infeasible += 1;
                    continue;
                }
                r => r.unwrap(),
            };
            feasible += 1;
            reduce::certify_sco(&mut r, g, &f, 16).unwrap();
            assert!(r.certified, "{g:?} {name} {:?} {:?}", r.size_formula, r.oracle);
            // size formula against brute-force tight nodes and bricks
            let (d, _) = reduce::sco_to_digraft(g, &f).unwrap();
            let d = match d.family() {
                Family::General(ff) => d.with_family(Family::General(uncross_family(&d, ff).unwrap())).unwrap(),
                _ => d,
            };
            let bs = oracle::brute_structure(&d, 24).unwrap();
            assert_eq!(r.basis.len() + bs.tight_nodes.len() + bs.bricks, d.m() + 2, "{g:?} {name}");
        }
    }
    assert!(feasible > 300 && infeasible > 100, "{feasible} {infeasible}");
}

/// Random orientations of small graphs with families meeting the gcd condition.
fn scr_instances() -> Vec<(Digraph, Vec<Vec<usize>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    for (i, g) in corpus::small_multigraphs(4, 7).into_iter().enumerate() {
        let arcs = g.edges.iter().map(|&(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) }).collect();
        let d = Digraph::new(g.n, arcs).unwrap();
        for (_, f) in corpus::family_variants(&g, i as u64) {
            if reduce::gcd_certificate(&d, &f).is_ok() {
                out.push((d.clone(), f));
            }
        }
    }
    out
}

#[test]
fn scr_bases_are_certified() {
    let mut certified = 0;
    for (d, f) in scr_instances() {
        let brute = oracle::enumerate_tight_strengthenings(d.n, &d.arcs, &f, 16).unwrap();
        let mut r = match reduce::scr_basis(&d, &f) {
            Err(Error::Infeasible) => {
                assert!(brute.is_empty());
                continue;
            }
            r => r.unwrap(),
        };
        reduce::certify_scr(&mut r, &d, &f, 16).unwrap();
        assert!(r.report.certified, "{d:?} {f:?} {:?}", r.report.oracle);
        // every strengthening lifts to its complementary orientation
        for j in &brute {
            let x = tight_basis::graph::indicator(j, d.arcs.len());
            let k = reduce::scr_scalar(&d, &f, &r.gcd, &x);
            assert_eq!(k, 1);
            let lifted = reduce::scr_lift(&x, k);
            let o: Vec<usize> = (0..lifted.len()).filter(|&a| lifted[a] == 1).collect();
            assert!(oracle::is_tight_sco(&d.underlying(), &f, &o));
        }
        certified += 1;
    }
    assert!(certified > 20, "{certified}");
}

#[test]
fn scr_gcd_failure() {
    let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
    // every singleton of a directed triangle has in-degree 1
    assert_eq!(reduce::scr_basis(&d, &[vec![0]]).err(), Some(Error::GcdConditionFailed));
    assert_eq!(reduce::scr_basis(&d, &[]).err(), Some(Error::GcdConditionFailed));
}
